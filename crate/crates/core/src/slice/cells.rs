use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::group::SubgroupLattice;

use super::{QuotientMap, SliceError};

/// The formal cell `G₊ ∧_H S^{nρ_H}` (regular) or `G₊ ∧_H S^{nρ_H − 1}`.
/// `subgroup` is the id of a conjugacy-class representative in the lattice
/// the cell was made over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SliceCell {
    pub subgroup: usize,
    pub subgroup_order: usize,
    pub group_order: usize,
    pub n: i64,
    pub regular: bool,
}

impl SliceCell {
    pub fn new(lattice: &SubgroupLattice, subgroup: usize, n: i64, regular: bool) -> Self {
        SliceCell {
            subgroup: lattice.class_rep(subgroup),
            subgroup_order: lattice.order(subgroup),
            group_order: lattice.group().order(),
            n,
            regular,
        }
    }

    pub fn dimension(&self) -> i64 {
        let d = self.n * self.subgroup_order as i64;
        if self.regular {
            d
        } else {
            d - 1
        }
    }
}

impl fmt::Display for SliceCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tail = if self.regular { "" } else { "-1" };
        write!(
            f,
            "G+ ^_H{} S^({}rho{}) [|H|={}, dim {}]",
            self.subgroup,
            self.n,
            tail,
            self.subgroup_order,
            self.dimension()
        )
    }
}

/// Slice cells of dimension `k`, one per conjugacy class of subgroups and
/// valid multiple `n`: regular cells with `n|H| = k`, and unless
/// `regular_only`, irregular cells with `n|H| − 1 = k`.
pub fn slice_cells(lattice: &SubgroupLattice, k: i64, regular_only: bool) -> Vec<SliceCell> {
    let mut out = Vec::new();
    for h in lattice.class_reps() {
        let order = lattice.order(h) as i64;
        if k.mod_floor(&order) == 0 {
            out.push(SliceCell::new(lattice, h, k / order, true));
        }
        if !regular_only && (k + 1).mod_floor(&order) == 0 {
            out.push(SliceCell::new(lattice, h, (k + 1) / order, false));
        }
    }
    out
}

/// The Spanier–Whitehead dual of a regular cell, `(H, n) ↦ (H, −n)`.
pub fn cell_dual(c: &SliceCell) -> Result<SliceCell, SliceError> {
    if !c.regular {
        return Err(SliceError::IrregularCell("the dual of an irregular cell"));
    }
    Ok(SliceCell { n: -c.n, ..*c })
}

/// Where a cell sits in the two filtrations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationBounds {
    /// The cell lies in `τ_{slice_degree}`.
    pub slice_degree: i64,
    /// The cell lies in `τ̃_{regular_degree}`.
    pub regular_degree: i64,
    /// Its suspension lies in `τ̃_{suspension_regular_degree}`.
    pub suspension_regular_degree: i64,
}

/// Regular cells of dimension `d` sit at `(d, d)`. An irregular cell of
/// dimension `k` sits at slice degree `k` and regular degree `k − (|G| − 1)`.
/// In both cases the suspension is at regular degree `k + 1`.
pub fn filtration_bounds(c: &SliceCell) -> FiltrationBounds {
    let k = c.dimension();
    let regular_degree = if c.regular {
        k
    } else {
        k - (c.group_order as i64 - 1)
    };
    FiltrationBounds {
        slice_degree: k,
        regular_degree,
        suspension_regular_degree: k + 1,
    }
}

/// `Φ^N` of a regular cell over `G`: the cell `(H/N, n)` over `G/N` when
/// `H ⊇ N`, and `None` (the zero spectrum) otherwise.
pub fn geometric_fixed_points_cell(
    c: &SliceCell,
    q: &QuotientMap,
) -> Result<Option<SliceCell>, SliceError> {
    if !c.regular {
        return Err(SliceError::IrregularCell(
            "geometric fixed points of an irregular cell",
        ));
    }
    if c.subgroup >= q.source().len() || c.group_order != q.source().group().order() {
        return Err(SliceError::WrongLattice);
    }
    Ok(q.image(c.subgroup)
        .map(|image| SliceCell::new(q.target(), image, c.n, true)))
}

/// `⌈m/|N|⌉`, the degree over `G/N` matching degree `m` over `G`.
pub fn pullback_degree(m: i64, normal_order: usize) -> Result<i64, SliceError> {
    if normal_order <= 1 {
        return Err(SliceError::TrivialNormal);
    }
    Ok(Integer::div_ceil(&m, &(normal_order as i64)))
}

/// A generator `G/H₊ ∧ S^degree` of a localizing subcategory.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SphereGenerator {
    pub subgroup: usize,
    pub subgroup_order: usize,
    pub degree: i64,
}

/// Generators of `τ_{−n}` (or of `τ_1` for the connective set): every
/// `G/H₊ ∧ S^k` with `k ≥ min_degree`, plus the finitely many listed
/// negative spheres.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphereGenerators {
    pub min_degree: i64,
    pub negative: Vec<SphereGenerator>,
    #[serde(skip)]
    classes: Vec<(usize, usize)>,
}

impl SphereGenerators {
    /// The infinite part, listed up to degree `max_degree`.
    pub fn nonnegative_up_to(&self, max_degree: i64) -> Vec<SphereGenerator> {
        let mut out = Vec::new();
        for &(subgroup, subgroup_order) in &self.classes {
            for degree in self.min_degree..=max_degree {
                out.push(SphereGenerator {
                    subgroup,
                    subgroup_order,
                    degree,
                });
            }
        }
        out
    }

    pub fn rule(&self) -> String {
        format!(
            "G/H+ ^ S^k for every subgroup class H and k >= {}",
            self.min_degree
        )
    }
}

/// Generators of `τ_{−n}`, `n ≥ 0`: `G/H₊ ∧ S^k` for `k ≥ 0`, and
/// `G/H₊ ∧ S^{−k}` for `k > 0` with `k|H| ≤ n`.
pub fn negative_generators(
    lattice: &SubgroupLattice,
    n: i64,
) -> Result<SphereGenerators, SliceError> {
    if n < 0 {
        return Err(SliceError::OutOfRange(format!(
            "n = {n} must be nonnegative"
        )));
    }
    let classes: Vec<(usize, usize)> = lattice
        .class_reps()
        .into_iter()
        .map(|h| (h, lattice.order(h)))
        .collect();
    let mut negative = Vec::new();
    for &(subgroup, subgroup_order) in &classes {
        let mut k = 1;
        while k * subgroup_order as i64 <= n {
            negative.push(SphereGenerator {
                subgroup,
                subgroup_order,
                degree: -k,
            });
            k += 1;
        }
    }
    Ok(SphereGenerators {
        min_degree: 0,
        negative,
        classes,
    })
}

/// Generators of `τ_1`: `G/H₊ ∧ S^k` for `k ≥ 1`.
pub fn connective_generators(lattice: &SubgroupLattice) -> SphereGenerators {
    SphereGenerators {
        min_degree: 1,
        negative: Vec::new(),
        classes: lattice
            .class_reps()
            .into_iter()
            .map(|h| (h, lattice.order(h)))
            .collect(),
    }
}
