use std::collections::BTreeMap;
use std::sync::Arc;

use crate::abelian::{AbElement, AbHom, FgAbGroup};
use crate::group::{PermGroup, SubgroupLattice};

use super::MackeyError;

/// A Mackey functor over a finite group, stored with every structure map
/// explicitly: `res` and `tr` for every pair `K ⊆ H` (including `K = H`) and
/// `conj` for every element `g` and subgroup `H`.
///
/// Levels are indexed by subgroup ids of the shared [`SubgroupLattice`].
#[derive(Clone, Debug)]
pub struct MackeyFunctor {
    lattice: Arc<SubgroupLattice>,
    levels: Vec<FgAbGroup>,
    // (H, K) ↦ res^H_K : M(H) → M(K)
    res: BTreeMap<(usize, usize), AbHom>,
    // (H, K) ↦ tr^H_K : M(K) → M(H)
    tr: BTreeMap<(usize, usize), AbHom>,
    // g * n + H ↦ c_g : M(H) → M(gHg⁻¹)
    conj: Vec<AbHom>,
}

impl MackeyFunctor {
    /// Assembles a functor from complete map tables. Shapes and coverage are
    /// checked here; the Mackey axioms are checked by
    /// [`check_mackey_axioms`](super::check_mackey_axioms).
    pub fn from_parts(
        lattice: Arc<SubgroupLattice>,
        levels: Vec<FgAbGroup>,
        res: BTreeMap<(usize, usize), AbHom>,
        tr: BTreeMap<(usize, usize), AbHom>,
        conj: Vec<AbHom>,
    ) -> Result<Self, MackeyError> {
        let n = lattice.len();
        if levels.len() != n {
            return Err(MackeyError::Shape(format!(
                "{} levels for {n} subgroups",
                levels.len()
            )));
        }
        let shape_ok = |f: &AbHom, s: usize, t: usize| {
            f.source().same_presentation(&levels[s]) && f.target().same_presentation(&levels[t])
        };
        for h in 0..n {
            for k in lattice.subgroups_of(h) {
                let r = res
                    .get(&(h, k))
                    .ok_or_else(|| MackeyError::MissingMap(format!("res {h},{k}")))?;
                if !shape_ok(r, h, k) {
                    return Err(MackeyError::Shape(format!("res {h},{k}")));
                }
                let t = tr
                    .get(&(h, k))
                    .ok_or_else(|| MackeyError::MissingMap(format!("tr {h},{k}")))?;
                if !shape_ok(t, k, h) {
                    return Err(MackeyError::Shape(format!("tr {h},{k}")));
                }
            }
        }
        let order = lattice.group().order();
        if conj.len() != order * n {
            return Err(MackeyError::MissingMap(format!(
                "{} conjugation maps, expected {}",
                conj.len(),
                order * n
            )));
        }
        for g in 0..order {
            for h in 0..n {
                if !shape_ok(&conj[g * n + h], h, lattice.conjugate(g, h)) {
                    return Err(MackeyError::Shape(format!("conj {g},{h}")));
                }
            }
        }
        Ok(MackeyFunctor {
            lattice,
            levels,
            res,
            tr,
            conj,
        })
    }

    pub fn lattice(&self) -> &Arc<SubgroupLattice> {
        &self.lattice
    }

    pub fn group(&self) -> &PermGroup {
        self.lattice.group()
    }

    pub fn num_levels(&self) -> usize {
        self.levels.len()
    }

    pub fn level(&self, h: usize) -> &FgAbGroup {
        &self.levels[h]
    }

    pub fn levels(&self) -> &[FgAbGroup] {
        &self.levels
    }

    /// `res^H_K : M(H) → M(K)`, `K ⊆ H`.
    pub fn res(&self, h: usize, k: usize) -> &AbHom {
        self.res
            .get(&(h, k))
            .unwrap_or_else(|| panic!("no restriction from {h} to {k}"))
    }

    /// `tr^H_K : M(K) → M(H)`, `K ⊆ H`.
    pub fn tr(&self, h: usize, k: usize) -> &AbHom {
        self.tr
            .get(&(h, k))
            .unwrap_or_else(|| panic!("no transfer from {k} to {h}"))
    }

    /// `c_g : M(H) → M(gHg⁻¹)`.
    pub fn conj(&self, g: usize, h: usize) -> &AbHom {
        &self.conj[g * self.levels.len() + h]
    }

    pub fn res_maps(&self) -> &BTreeMap<(usize, usize), AbHom> {
        &self.res
    }

    pub fn tr_maps(&self) -> &BTreeMap<(usize, usize), AbHom> {
        &self.tr
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(FgAbGroup::is_trivial)
    }

    /// Structure maps leaving level `h`, as `(target level, map)`: every
    /// restriction and transfer, and conjugation by the group generators.
    /// Closure under these implies closure under all conjugations.
    pub(crate) fn maps_from(&self, h: usize) -> Vec<(usize, &AbHom)> {
        let mut out = Vec::new();
        for k in self.lattice.subgroups_of(h) {
            if k != h {
                out.push((k, self.res(h, k)));
            }
        }
        for l in self.lattice.supergroups_of(h) {
            if l != h {
                out.push((l, self.tr(l, h)));
            }
        }
        for g in self.group().generator_indices() {
            out.push((self.lattice.conjugate(g, h), self.conj(g, h)));
        }
        out
    }

    /// The zero functor on the same lattice.
    pub fn zero(lattice: Arc<SubgroupLattice>) -> Self {
        let n = lattice.len();
        let z = FgAbGroup::zero();
        let zero_map = AbHom::identity(&z);
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for h in 0..n {
            for k in lattice.subgroups_of(h) {
                res.insert((h, k), zero_map.clone());
                tr.insert((h, k), zero_map.clone());
            }
        }
        let conj = vec![zero_map; lattice.group().order() * n];
        MackeyFunctor {
            lattice,
            levels: vec![z; n],
            res,
            tr,
            conj,
        }
    }

    pub fn element(&self, h: usize, element: AbElement) -> Result<MackeyElement, MackeyError> {
        if !element.group.same_presentation(self.level(h)) {
            return Err(MackeyError::Ab(crate::abelian::AbError::AmbientMismatch));
        }
        Ok(MackeyElement {
            subgroup: h,
            element,
        })
    }
}

/// An element of one level of a Mackey functor.
#[derive(Clone, Debug)]
pub struct MackeyElement {
    pub subgroup: usize,
    pub element: AbElement,
}
