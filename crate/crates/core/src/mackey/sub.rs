use std::collections::{BTreeMap, VecDeque};

use num_bigint::BigInt;

use crate::abelian::{
    induced_map, quotient, subgroup_from_rows, AbHom, AbQuotient, AbSubgroup, Matrix,
};

use super::{MackeyElement, MackeyError, MackeyFunctor};

/// A sub-Mackey functor, given by one subgroup of each level of an ambient
/// functor. The ambient functor is not stored; operations take it as an
/// argument.
#[derive(Clone, Debug)]
pub struct SubMackey {
    levels: Vec<AbSubgroup>,
}

impl SubMackey {
    /// Wraps level subgroups after checking that every structure map of `m`
    /// carries them into each other.
    pub fn new(m: &MackeyFunctor, levels: Vec<AbSubgroup>) -> Result<Self, MackeyError> {
        if levels.len() != m.num_levels() {
            return Err(MackeyError::Shape(format!(
                "{} sub-levels for {} levels",
                levels.len(),
                m.num_levels()
            )));
        }
        for (h, s) in levels.iter().enumerate() {
            if !s.ambient().same_presentation(m.level(h)) {
                return Err(MackeyError::Shape(format!(
                    "sub-level {h} has the wrong ambient"
                )));
            }
        }
        let sub = SubMackey { levels };
        sub.check_closed(m)?;
        Ok(sub)
    }

    pub(crate) fn new_unchecked(levels: Vec<AbSubgroup>) -> Self {
        SubMackey { levels }
    }

    pub fn zero(m: &MackeyFunctor) -> Self {
        SubMackey {
            levels: m.levels().iter().map(AbSubgroup::zero).collect(),
        }
    }

    pub fn full(m: &MackeyFunctor) -> Self {
        SubMackey {
            levels: m.levels().iter().map(AbSubgroup::whole).collect(),
        }
    }

    pub fn level(&self, h: usize) -> &AbSubgroup {
        &self.levels[h]
    }

    pub fn levels(&self) -> &[AbSubgroup] {
        &self.levels
    }

    pub fn is_zero(&self) -> bool {
        self.levels.iter().all(|s| s.group().is_trivial())
    }

    /// Names the first structure map that leaves the subfunctor, if any.
    pub fn check_closed(&self, m: &MackeyFunctor) -> Result<(), MackeyError> {
        let lattice = m.lattice();
        for h in 0..m.num_levels() {
            let gens = self.levels[h].generator_rows();
            let check = |t: usize, f: &AbHom, what: String| {
                let images = gens.mul(f.matrix());
                if (0..images.rows()).all(|i| self.levels[t].contains(images.row(i))) {
                    Ok(())
                } else {
                    Err(MackeyError::NotClosed(what))
                }
            };
            for k in lattice.subgroups_of(h) {
                check(k, m.res(h, k), format!("res {h},{k}"))?;
            }
            for l in lattice.supergroups_of(h) {
                check(l, m.tr(l, h), format!("tr {l},{h}"))?;
            }
            for g in m.group().generator_indices() {
                check(
                    lattice.conjugate(g, h),
                    m.conj(g, h),
                    format!("conj {g},{h}"),
                )?;
            }
        }
        Ok(())
    }

    pub fn is_closed(&self, m: &MackeyFunctor) -> bool {
        self.check_closed(m).is_ok()
    }

    pub fn is_subset_of(&self, other: &SubMackey) -> bool {
        self.levels
            .iter()
            .zip(&other.levels)
            .all(|(a, b)| a.is_subset_of(b))
    }

    pub fn same_as(&self, other: &SubMackey) -> bool {
        self.levels.len() == other.levels.len()
            && self
                .levels
                .iter()
                .zip(&other.levels)
                .all(|(a, b)| a.same_as(b))
    }

    /// The subfunctor as a Mackey functor in its own right, with maps
    /// restricted from `m`.
    pub fn as_functor(&self, m: &MackeyFunctor) -> Result<MackeyFunctor, MackeyError> {
        let lattice = m.lattice();
        let n = m.num_levels();
        let mut res = BTreeMap::new();
        let mut tr = BTreeMap::new();
        for h in 0..n {
            for k in lattice.subgroups_of(h) {
                res.insert(
                    (h, k),
                    self.levels[h].restrict_map(m.res(h, k), &self.levels[k])?,
                );
                tr.insert(
                    (h, k),
                    self.levels[k].restrict_map(m.tr(h, k), &self.levels[h])?,
                );
            }
        }
        let mut conj = Vec::with_capacity(m.group().order() * n);
        for g in 0..m.group().order() {
            for h in 0..n {
                let gh = lattice.conjugate(g, h);
                conj.push(self.levels[h].restrict_map(m.conj(g, h), &self.levels[gh])?);
            }
        }
        let levels = self.levels.iter().map(|s| s.group().clone()).collect();
        MackeyFunctor::from_parts(lattice.clone(), levels, res, tr, conj)
    }

    /// `self` as a subfunctor of `outer.as_functor(..)`, where `self ⊆ outer`.
    pub fn relative_to(&self, outer: &SubMackey) -> Result<SubMackey, MackeyError> {
        let levels = self
            .levels
            .iter()
            .zip(&outer.levels)
            .map(|(a, b)| a.relative_to(b))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SubMackey { levels })
    }
}

/// The smallest subfunctor containing the given elements, found by closing
/// under restriction, transfer and conjugation until nothing changes.
pub fn sub_mackey_generated(
    m: &MackeyFunctor,
    elems: &[MackeyElement],
) -> Result<SubMackey, MackeyError> {
    let n = m.num_levels();
    let mut seeds: Vec<Vec<Vec<BigInt>>> = vec![Vec::new(); n];
    for e in elems {
        if e.subgroup >= n || !e.element.group.same_presentation(m.level(e.subgroup)) {
            return Err(MackeyError::Shape(format!(
                "element does not lie in level {}",
                e.subgroup
            )));
        }
        seeds[e.subgroup].push(e.element.coords.clone());
    }
    generate_from_rows(m, seeds)
}

/// Closure of per-level seed rows (level coordinates) under all structure maps.
pub(crate) fn generate_from_rows(
    m: &MackeyFunctor,
    seeds: Vec<Vec<Vec<BigInt>>>,
) -> Result<SubMackey, MackeyError> {
    let n = m.num_levels();
    let build = |h: usize, rows: &[Vec<BigInt>]| {
        let width = m.level(h).ngens();
        subgroup_from_rows(
            m.level(h),
            &Matrix::from_rows(rows.to_vec(), width).unwrap(),
        )
    };
    let mut levels: Vec<AbSubgroup> = (0..n).map(|h| build(h, &seeds[h])).collect();
    let mut queue: VecDeque<usize> = (0..n).filter(|&h| !seeds[h].is_empty()).collect();
    let mut queued: Vec<bool> = (0..n).map(|h| !seeds[h].is_empty()).collect();

    while let Some(h) = queue.pop_front() {
        queued[h] = false;
        let gens = levels[h].generator_rows().clone();
        for (t, f) in m.maps_from(h) {
            let images = gens.mul(f.matrix());
            let missing: Vec<Vec<BigInt>> = (0..images.rows())
                .map(|i| images.row(i))
                .filter(|row| !levels[t].contains(row))
                .map(<[BigInt]>::to_vec)
                .collect();
            if missing.is_empty() {
                continue;
            }
            let mut rows = levels[t].generator_rows().row_vecs();
            rows.extend(missing);
            levels[t] = build(t, &rows);
            if !queued[t] {
                queued[t] = true;
                queue.push_back(t);
            }
        }
    }
    Ok(SubMackey::new_unchecked(levels))
}

/// `M / S` with the levelwise projections `M(H) → (M/S)(H)`.
#[derive(Clone, Debug)]
pub struct MackeyQuotient {
    pub functor: MackeyFunctor,
    pub projections: Vec<AbHom>,
}

pub fn quotient_mackey(m: &MackeyFunctor, s: &SubMackey) -> Result<MackeyQuotient, MackeyError> {
    s.check_closed(m)?;
    let lattice = m.lattice();
    let n = m.num_levels();
    let quotients: Vec<AbQuotient> = s
        .levels()
        .iter()
        .map(|sub| quotient(sub.inclusion()))
        .collect::<Result<_, _>>()?;

    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for h in 0..n {
        for k in lattice.subgroups_of(h) {
            res.insert(
                (h, k),
                induced_map(m.res(h, k), &quotients[h], &quotients[k]),
            );
            tr.insert(
                (h, k),
                induced_map(m.tr(h, k), &quotients[k], &quotients[h]),
            );
        }
    }
    let mut conj = Vec::with_capacity(m.group().order() * n);
    for g in 0..m.group().order() {
        for h in 0..n {
            let gh = lattice.conjugate(g, h);
            conj.push(induced_map(m.conj(g, h), &quotients[h], &quotients[gh]));
        }
    }
    let levels = quotients.iter().map(|q| q.group.clone()).collect();
    let functor = MackeyFunctor::from_parts(lattice.clone(), levels, res, tr, conj)?;
    debug_assert!(super::check_mackey_axioms(&functor).passed());
    Ok(MackeyQuotient {
        functor,
        projections: quotients.into_iter().map(|q| q.projection).collect(),
    })
}
