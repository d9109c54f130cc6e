use num_bigint::BigInt;

use super::group::{LatticeSolver, SolverCell};
use super::{AbElement, AbError, FgAbGroup, Matrix};

/// A homomorphism between presented groups, `x ↦ x · matrix` on generator
/// coordinates.
#[derive(Clone, Debug)]
pub struct AbHom {
    source: FgAbGroup,
    target: FgAbGroup,
    matrix: Matrix,
}

impl AbHom {
    /// Checks the shape and that every source relation maps into the target
    /// relation lattice.
    pub fn new(source: FgAbGroup, target: FgAbGroup, matrix: Matrix) -> Result<Self, AbError> {
        let h = Self::new_unchecked(source, target, matrix)?;
        if !h.is_well_defined() {
            return Err(AbError::NotWellDefined);
        }
        Ok(h)
    }

    /// Checks the shape only.
    pub fn new_unchecked(
        source: FgAbGroup,
        target: FgAbGroup,
        matrix: Matrix,
    ) -> Result<Self, AbError> {
        if matrix.shape() != (source.ngens(), target.ngens()) {
            return Err(AbError::Shape(format!(
                "map matrix is {}x{}, expected {}x{}",
                matrix.rows(),
                matrix.cols(),
                source.ngens(),
                target.ngens()
            )));
        }
        Ok(AbHom {
            source,
            target,
            matrix,
        })
    }

    pub fn identity(g: &FgAbGroup) -> Self {
        AbHom {
            source: g.clone(),
            target: g.clone(),
            matrix: Matrix::identity(g.ngens()),
        }
    }

    pub fn zero(source: &FgAbGroup, target: &FgAbGroup) -> Self {
        AbHom {
            source: source.clone(),
            target: target.clone(),
            matrix: Matrix::zeros(source.ngens(), target.ngens()),
        }
    }

    /// Multiplication by an integer on a group.
    pub fn scalar(g: &FgAbGroup, c: &BigInt) -> Self {
        AbHom {
            source: g.clone(),
            target: g.clone(),
            matrix: Matrix::scalar(g.ngens(), c),
        }
    }

    pub fn source(&self) -> &FgAbGroup {
        &self.source
    }

    pub fn target(&self) -> &FgAbGroup {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn is_well_defined(&self) -> bool {
        let rel = self.source.relations();
        (0..rel.rows()).all(|i| self.target.is_relation(&self.matrix.apply_row(rel.row(i))))
    }

    pub fn apply_coords(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.matrix.apply_row(x)
    }

    pub fn apply(&self, x: &AbElement) -> Result<AbElement, AbError> {
        if !x.group.same_presentation(&self.source) {
            return Err(AbError::AmbientMismatch);
        }
        Ok(AbElement {
            group: self.target.clone(),
            coords: self.matrix.apply_row(&x.coords),
        })
    }

    /// `self ∘ inner`: apply `inner` first.
    pub fn compose(&self, inner: &AbHom) -> Result<AbHom, AbError> {
        if !inner.target.same_presentation(&self.source) {
            return Err(AbError::Shape(
                "composition: target of the inner map differs from the source of the outer map"
                    .into(),
            ));
        }
        Ok(AbHom {
            source: inner.source.clone(),
            target: self.target.clone(),
            matrix: inner.matrix.mul(&self.matrix),
        })
    }

    pub fn add(&self, other: &AbHom) -> Result<AbHom, AbError> {
        self.check_parallel(other)?;
        Ok(AbHom {
            source: self.source.clone(),
            target: self.target.clone(),
            matrix: self.matrix.add(&other.matrix),
        })
    }

    fn check_parallel(&self, other: &AbHom) -> Result<(), AbError> {
        if !self.source.same_presentation(&other.source)
            || !self.target.same_presentation(&other.target)
        {
            return Err(AbError::Shape(
                "maps have different source or target".into(),
            ));
        }
        Ok(())
    }

    /// Every generator lands in the target relation lattice.
    pub fn is_zero(&self) -> bool {
        (0..self.matrix.rows()).all(|i| self.target.is_relation(self.matrix.row(i)))
    }

    /// Equality as maps (the difference is the zero map).
    pub fn equals(&self, other: &AbHom) -> Result<bool, AbError> {
        self.check_parallel(other)?;
        let diff = self.matrix.sub(&other.matrix);
        Ok((0..diff.rows()).all(|i| self.target.is_relation(diff.row(i))))
    }

    pub fn kernel(&self) -> AbSubgroup {
        kernel(self)
    }

    pub fn image(&self) -> AbSubgroup {
        image(self)
    }
}

pub fn compose(f: &AbHom, g: &AbHom) -> Result<AbHom, AbError> {
    f.compose(g)
}

pub fn is_zero_hom(f: &AbHom) -> bool {
    f.is_zero()
}

/// A subgroup `S ⊆ A` carried as a presented group with its inclusion.
/// The presentation is always the diagonal invariant-factor one.
#[derive(Clone, Debug)]
pub struct AbSubgroup {
    inclusion: AbHom,
    solver: SolverCell,
}

impl AbSubgroup {
    fn from_inclusion(inclusion: AbHom) -> Self {
        AbSubgroup {
            inclusion,
            solver: SolverCell::default(),
        }
    }

    pub fn whole(a: &FgAbGroup) -> Self {
        subgroup_from_rows(a, &Matrix::identity(a.ngens()))
    }

    pub fn zero(a: &FgAbGroup) -> Self {
        Self::from_inclusion(AbHom::zero(&FgAbGroup::zero(), a))
    }

    pub fn group(&self) -> &FgAbGroup {
        self.inclusion.source()
    }

    pub fn ambient(&self) -> &FgAbGroup {
        self.inclusion.target()
    }

    pub fn inclusion(&self) -> &AbHom {
        &self.inclusion
    }

    /// Generators of the subgroup written in ambient coordinates, one per row.
    pub fn generator_rows(&self) -> &Matrix {
        self.inclusion.matrix()
    }

    fn solver(&self) -> &LatticeSolver {
        self.solver
            .get_or_init(|| LatticeSolver::new(self.inclusion.matrix(), self.ambient().relations()))
    }

    /// Writes an ambient vector in subgroup coordinates, if it lies in the
    /// subgroup.
    pub fn solve(&self, x: &[BigInt]) -> Option<Vec<BigInt>> {
        self.solver().solve(x)
    }

    pub fn contains(&self, x: &[BigInt]) -> bool {
        self.solve(x).is_some()
    }

    pub fn contains_element(&self, x: &AbElement) -> Result<bool, AbError> {
        if !x.group.same_presentation(self.ambient()) {
            return Err(AbError::AmbientMismatch);
        }
        Ok(self.contains(&x.coords))
    }

    pub fn is_subset_of(&self, other: &AbSubgroup) -> bool {
        let g = self.generator_rows();
        (0..g.rows()).all(|i| other.contains(g.row(i)))
    }

    pub fn same_as(&self, other: &AbSubgroup) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn is_everything(&self) -> bool {
        let n = self.ambient().ngens();
        let id = Matrix::identity(n);
        (0..n).all(|i| self.contains(id.row(i)))
    }

    /// This subgroup as a subgroup of `outer`, where `self ⊆ outer`.
    pub fn relative_to(&self, outer: &AbSubgroup) -> Result<AbSubgroup, AbError> {
        let g = self.generator_rows();
        let rows = (0..g.rows())
            .map(|i| outer.solve(g.row(i)).ok_or(AbError::NotContained))
            .collect::<Result<Vec<_>, _>>()?;
        let m = Matrix::from_rows(rows, outer.group().ngens()).unwrap();
        Ok(subgroup_from_rows(outer.group(), &m))
    }

    /// Restriction of an ambient map `f : A → B` to `self → T` for a
    /// subgroup `T ⊆ B` containing the image.
    pub fn restrict_map(&self, f: &AbHom, target: &AbSubgroup) -> Result<AbHom, AbError> {
        let images = self.generator_rows().mul(f.matrix());
        let rows = (0..images.rows())
            .map(|i| target.solve(images.row(i)).ok_or(AbError::NotContained))
            .collect::<Result<Vec<_>, _>>()?;
        let m = Matrix::from_rows(rows, target.group().ngens()).unwrap();
        AbHom::new_unchecked(self.group().clone(), target.group().clone(), m)
    }
}

/// Subgroup of `a` generated by the given rows (ambient coordinates).
pub fn subgroup_from_rows(a: &FgAbGroup, rows: &Matrix) -> AbSubgroup {
    assert_eq!(rows.cols(), a.ngens(), "generator width");
    let p = rows.rows();
    // c ∈ Z^p is a relation iff c · rows lies in the relation lattice of a.
    let stacked = super::smith::smith_normal_form(&rows.vstack(a.relations()));
    let null = stacked.left_nullspace();
    let rel = null.select_cols(&(0..p).collect::<Vec<_>>());
    let presented = FgAbGroup::new(p, rel).unwrap();
    let simple = presented.simplify();
    let inclusion = simple.from_new.mul(rows);
    AbSubgroup::from_inclusion(AbHom::new_unchecked(simple.group, a.clone(), inclusion).unwrap())
}

pub fn subgroup_generated(a: &FgAbGroup, elems: &[AbElement]) -> Result<AbSubgroup, AbError> {
    let mut rows = Vec::with_capacity(elems.len());
    for e in elems {
        if !e.group.same_presentation(a) {
            return Err(AbError::AmbientMismatch);
        }
        rows.push(e.coords.clone());
    }
    Ok(subgroup_from_rows(
        a,
        &Matrix::from_rows(rows, a.ngens()).unwrap(),
    ))
}

pub fn kernel(f: &AbHom) -> AbSubgroup {
    let m = f.source().ngens();
    // (x, y) with x·F + y·R_B = 0, projected to x.
    let stacked = super::smith::smith_normal_form(&f.matrix().vstack(f.target().relations()));
    let null = stacked.left_nullspace();
    let xs = null.select_cols(&(0..m).collect::<Vec<_>>());
    subgroup_from_rows(f.source(), &xs)
}

pub fn image(f: &AbHom) -> AbSubgroup {
    subgroup_from_rows(f.target(), f.matrix())
}

/// `A / S` with its projection and a lift of the new generators.
#[derive(Clone, Debug)]
pub struct AbQuotient {
    pub group: FgAbGroup,
    pub projection: AbHom,
    /// New generators written in coordinates of `A`, one per row.
    pub lift: Matrix,
}

/// Quotient of the target of `inclusion` by its image.
pub fn quotient(inclusion: &AbHom) -> Result<AbQuotient, AbError> {
    if !inclusion.is_well_defined() {
        return Err(AbError::NotWellDefined);
    }
    let a = inclusion.target();
    let rel = a.relations().vstack(inclusion.matrix());
    let presented = FgAbGroup::new(a.ngens(), rel)?;
    let simple = presented.simplify();
    let projection = AbHom::new_unchecked(a.clone(), simple.group.clone(), simple.to_new)?;
    Ok(AbQuotient {
        group: simple.group,
        projection,
        lift: simple.from_new,
    })
}

/// The map `A/S → B/T` induced by `f : A → B`, given the two quotients.
pub fn induced_map(f: &AbHom, from: &AbQuotient, to: &AbQuotient) -> AbHom {
    let m = from.lift.mul(f.matrix()).mul(to.projection.matrix());
    AbHom::new_unchecked(from.group.clone(), to.group.clone(), m).unwrap()
}
