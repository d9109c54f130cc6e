use std::fmt;
use std::sync::{Arc, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::json::JsonInt;
use super::smith::{smith_normal_form, Smith};
use super::{AbError, Matrix};

/// Canonical invariants `Z^free_rank ⊕ Z/d_1 ⊕ … ⊕ Z/d_r` with
/// `d_1 | … | d_r` and every `d_i > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct InvariantFactors {
    pub free_rank: usize,
    pub torsion: Vec<JsonInt>,
}

impl InvariantFactors {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn torsion_order(&self) -> BigInt {
        self.torsion.iter().map(|d| &d.0).product()
    }

    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.torsion_order())
    }
}

impl fmt::Display for InvariantFactors {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        let mut i = 0;
        while i < self.torsion.len() {
            let d = &self.torsion[i].0;
            let run = self.torsion[i..].iter().take_while(|x| &x.0 == d).count();
            if run == 1 {
                parts.push(format!("Z/{d}"));
            } else {
                parts.push(format!("(Z/{d})^{run}"));
            }
            i += run;
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" ⊕ "))
        }
    }
}

struct Presentation {
    ngens: usize,
    relations: Matrix,
    smith: Smith,
    invariants: InvariantFactors,
}

/// A finitely generated abelian group `Z^ngens / rowspace(relations)`.
///
/// The Smith form of the relation matrix is computed once; it decides
/// membership in the relation lattice and yields the invariant factors.
/// Clones share the presentation.
#[derive(Clone)]
pub struct FgAbGroup {
    inner: Arc<Presentation>,
}

impl FgAbGroup {
    pub fn new(ngens: usize, relations: Matrix) -> Result<Self, AbError> {
        if relations.cols() != ngens {
            return Err(AbError::Shape(format!(
                "relation rows have length {}, expected {ngens}",
                relations.cols()
            )));
        }
        let smith = smith_normal_form(&relations);
        let torsion = smith
            .diagonal
            .iter()
            .filter(|d| !d.is_one())
            .map(|d| JsonInt(d.clone()))
            .collect();
        let invariants = InvariantFactors {
            free_rank: ngens - smith.rank(),
            torsion,
        };
        Ok(FgAbGroup {
            inner: Arc::new(Presentation {
                ngens,
                relations,
                smith,
                invariants,
            }),
        })
    }

    pub fn free(rank: usize) -> Self {
        Self::new(rank, Matrix::zeros(0, rank)).expect("free group")
    }

    pub fn zero() -> Self {
        Self::free(0)
    }

    pub fn cyclic(order: impl Into<BigInt>) -> Self {
        let d = order.into();
        Self::new(1, Matrix::from_rows(vec![vec![d]], 1).unwrap()).expect("cyclic group")
    }

    pub fn from_invariants(inv: &InvariantFactors) -> Self {
        let n = inv.free_rank + inv.torsion.len();
        let mut rel = Matrix::zeros(inv.torsion.len(), n);
        for (i, d) in inv.torsion.iter().enumerate() {
            rel[(i, inv.free_rank + i)] = d.0.clone();
        }
        Self::new(n, rel).expect("diagonal presentation")
    }

    pub fn direct_sum(parts: &[FgAbGroup]) -> Self {
        let mut rel = Matrix::zeros(0, 0);
        for p in parts {
            rel = rel.block_diag(p.relations());
        }
        let n = parts.iter().map(|p| p.ngens()).sum();
        Self::new(n, rel).expect("block relations")
    }

    pub fn ngens(&self) -> usize {
        self.inner.ngens
    }

    pub fn relations(&self) -> &Matrix {
        &self.inner.relations
    }

    pub fn invariant_factors(&self) -> &InvariantFactors {
        &self.inner.invariants
    }

    pub fn free_rank(&self) -> usize {
        self.inner.invariants.free_rank
    }

    pub fn torsion(&self) -> Vec<BigInt> {
        self.inner
            .invariants
            .torsion
            .iter()
            .map(|d| d.0.clone())
            .collect()
    }

    /// `None` when the group is infinite.
    pub fn order(&self) -> Option<BigInt> {
        self.inner.invariants.order()
    }

    pub fn is_trivial(&self) -> bool {
        self.inner.invariants.is_trivial()
    }

    pub fn check_coords(&self, x: &[BigInt]) -> Result<(), AbError> {
        if x.len() != self.ngens() {
            return Err(AbError::Shape(format!(
                "vector of length {} in a group on {} generators",
                x.len(),
                self.ngens()
            )));
        }
        Ok(())
    }

    /// Whether `x` lies in the relation lattice, i.e. represents zero.
    pub fn is_relation(&self, x: &[BigInt]) -> bool {
        let s = &self.inner.smith;
        let y = s.v.apply_row(x);
        let r = s.rank();
        y[..r]
            .iter()
            .zip(&s.diagonal)
            .all(|(a, d)| a.is_multiple_of(d))
            && y[r..].iter().all(Zero::is_zero)
    }

    /// Coordinates in the invariant-factor basis: torsion coordinates reduced
    /// into `[0, d)`, followed by the free coordinates.
    pub fn canonical_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        let s = &self.inner.smith;
        let y = s.v.apply_row(x);
        let r = s.rank();
        let mut out: Vec<BigInt> = y[..r]
            .iter()
            .zip(&s.diagonal)
            .filter(|(_, d)| !d.is_one())
            .map(|(a, d)| a.mod_floor(d))
            .collect();
        out.extend_from_slice(&y[r..]);
        out
    }

    /// Same generator count and the same relation lattice.
    pub fn same_presentation(&self, other: &FgAbGroup) -> bool {
        if Arc::ptr_eq(&self.inner, &other.inner) {
            return true;
        }
        self.ngens() == other.ngens()
            && (0..other.relations().rows()).all(|i| self.is_relation(other.relations().row(i)))
            && (0..self.relations().rows()).all(|i| other.is_relation(self.relations().row(i)))
    }

    pub fn element(&self, coords: Vec<BigInt>) -> Result<AbElement, AbError> {
        self.check_coords(&coords)?;
        Ok(AbElement {
            group: self.clone(),
            coords,
        })
    }

    pub fn generator(&self, i: usize) -> AbElement {
        let mut coords = vec![BigInt::zero(); self.ngens()];
        coords[i] = BigInt::one();
        AbElement {
            group: self.clone(),
            coords,
        }
    }

    pub fn generators(&self) -> Vec<AbElement> {
        (0..self.ngens()).map(|i| self.generator(i)).collect()
    }

    /// Rewrites the presentation as a diagonal one on the invariant-factor
    /// basis, dropping generators of order one.
    pub fn simplify(&self) -> Simplified {
        let s = &self.inner.smith;
        let p = self.ngens();
        let r = s.rank();
        let keep: Vec<usize> = (0..p)
            .filter(|&i| i >= r || !s.diagonal[i].is_one())
            .collect();
        let mut rel_rows = Vec::new();
        for (k, &i) in keep.iter().enumerate() {
            if i < r {
                let mut row = vec![BigInt::zero(); keep.len()];
                row[k] = s.diagonal[i].clone();
                rel_rows.push(row);
            }
        }
        let group =
            FgAbGroup::new(keep.len(), Matrix::from_rows(rel_rows, keep.len()).unwrap()).unwrap();
        Simplified {
            group,
            to_new: s.v.select_cols(&keep),
            from_new: s.v_inv.select_rows(&keep),
        }
    }
}

impl fmt::Debug for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FgAbGroup({} on {} gens)",
            self.invariant_factors(),
            self.ngens()
        )
    }
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.invariant_factors())
    }
}

/// A diagonal re-presentation of a group together with the coordinate
/// changes in both directions.
#[derive(Clone, Debug)]
pub struct Simplified {
    pub group: FgAbGroup,
    /// Old coordinates → new coordinates (`ngens_old × ngens_new`).
    pub to_new: Matrix,
    /// New generators written in old coordinates (`ngens_new × ngens_old`).
    pub from_new: Matrix,
}

/// An element of a presented group, carried as an unreduced coordinate
/// vector on the chosen generators.
#[derive(Clone, Debug)]
pub struct AbElement {
    pub group: FgAbGroup,
    pub coords: Vec<BigInt>,
}

impl AbElement {
    pub fn is_zero(&self) -> bool {
        self.group.is_relation(&self.coords)
    }
}

/// Lattice-membership equality of two elements of the same group.
pub fn equal_elements(x: &AbElement, y: &AbElement) -> Result<bool, AbError> {
    if !x.group.same_presentation(&y.group) {
        return Err(AbError::AmbientMismatch);
    }
    let diff: Vec<BigInt> = x.coords.iter().zip(&y.coords).map(|(a, b)| a - b).collect();
    Ok(x.group.is_relation(&diff))
}

/// Solves `c · gens ≡ y` modulo a relation lattice; built once, queried
/// many times.
#[derive(Clone, Debug)]
pub(crate) struct LatticeSolver {
    ngens: usize,
    smith: Smith,
}

impl LatticeSolver {
    pub(crate) fn new(gens: &Matrix, relations: &Matrix) -> Self {
        LatticeSolver {
            ngens: gens.rows(),
            smith: smith_normal_form(&gens.vstack(relations)),
        }
    }

    pub(crate) fn solve(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        self.smith.solve_left(y).map(|mut w| {
            w.truncate(self.ngens);
            w
        })
    }
}

#[derive(Clone, Debug, Default)]
pub(crate) struct SolverCell(Arc<OnceLock<LatticeSolver>>);

impl SolverCell {
    pub(crate) fn get_or_init(&self, f: impl FnOnce() -> LatticeSolver) -> &LatticeSolver {
        self.0.get_or_init(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abelian::matrix::big;

    #[test]
    fn invariant_factors_are_canonical() {
        let g = FgAbGroup::new(2, Matrix::from_i64(2, 2, &[2, 0, 0, 3])).unwrap();
        assert_eq!(g.free_rank(), 0);
        assert_eq!(g.torsion(), vec![big(6)]);
        assert_eq!(g.to_string(), "Z/6");
        let h = FgAbGroup::new(3, Matrix::from_i64(1, 3, &[2, 4, 0])).unwrap();
        assert_eq!(h.to_string(), "Z^2 ⊕ Z/2");
        assert_eq!(FgAbGroup::zero().to_string(), "0");
        assert!(FgAbGroup::cyclic(1).is_trivial());
    }

    #[test]
    fn element_equality() {
        let z2 = FgAbGroup::cyclic(2);
        let one = z2.element(vec![big(1)]).unwrap();
        let three = z2.element(vec![big(3)]).unwrap();
        assert!(equal_elements(&one, &three).unwrap());
        assert!(equal_elements(&one, &one).unwrap());

        let q = FgAbGroup::new(2, Matrix::from_i64(1, 2, &[-2, 1])).unwrap();
        let a = q.element(vec![big(0), big(0)]).unwrap();
        let b = q.element(vec![big(-2), big(1)]).unwrap();
        assert!(equal_elements(&a, &b).unwrap());
        assert!(equal_elements(&a, &one).is_err());
    }

    #[test]
    fn simplify_keeps_the_group() {
        let g = FgAbGroup::new(3, Matrix::from_i64(2, 3, &[1, 1, 0, 0, 2, 2])).unwrap();
        let s = g.simplify();
        assert_eq!(s.group.invariant_factors(), g.invariant_factors());
        // old → new → old is the identity modulo relations
        let back = s.to_new.mul(&s.from_new);
        for i in 0..3 {
            let mut e = vec![big(0); 3];
            e[i] = big(1);
            let diff: Vec<BigInt> = back.row(i).iter().zip(&e).map(|(a, b)| a - b).collect();
            assert!(g.is_relation(&diff));
        }
    }
}
