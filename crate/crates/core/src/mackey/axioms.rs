use std::fmt;

use crate::abelian::AbHom;

use super::MackeyFunctor;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Axiom {
    /// A structure map does not respect the relations of its source.
    WellDefined,
    /// `res^H_H` or `tr^H_H` is not the identity.
    Identity,
    /// `res^H_K ∘ res^L_H ≠ res^L_K`
    RestrictionTransitivity,
    /// `tr^L_H ∘ tr^H_K ≠ tr^L_K`
    TransferTransitivity,
    /// Conjugation by an element of `H` is not the identity on `M(H)`.
    InnerConjugation,
    /// `c_{sg} ≠ c_s ∘ c_g`
    ConjugationAction,
    /// Conjugation does not commute with restriction.
    ConjugationRestriction,
    /// Conjugation does not commute with transfer.
    ConjugationTransfer,
    /// `res^H_J ∘ tr^H_K ≠ Σ_{g ∈ J\H/K} tr^J_{J∩gKg⁻¹} ∘ c_g ∘ res^K_{g⁻¹Jg∩K}`
    DoubleCoset,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Axiom::WellDefined => "map is not well defined",
            Axiom::Identity => "identity axiom",
            Axiom::RestrictionTransitivity => "restriction transitivity",
            Axiom::TransferTransitivity => "transfer transitivity",
            Axiom::InnerConjugation => "inner conjugation acts trivially",
            Axiom::ConjugationAction => "conjugation is a group action",
            Axiom::ConjugationRestriction => "conjugation commutes with restriction",
            Axiom::ConjugationTransfer => "conjugation commutes with transfer",
            Axiom::DoubleCoset => "double coset formula",
        };
        write!(f, "{s}")
    }
}

/// One failed identity with the subgroups (and element, if any) witnessing it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AxiomFailure {
    pub axiom: Axiom,
    /// Named subgroup ids, e.g. `[("H", 2), ("J", 0), ("K", 0)]`.
    pub subgroups: Vec<(&'static str, usize)>,
    pub element: Option<usize>,
}

impl fmt::Display for AxiomFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at ", self.axiom)?;
        let parts: Vec<String> = self
            .subgroups
            .iter()
            .map(|(name, id)| format!("{name}={id}"))
            .collect();
        write!(f, "{}", parts.join(", "))?;
        if let Some(g) = self.element {
            write!(f, ", g={g}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AxiomReport {
    pub failures: Vec<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "PASS");
        }
        writeln!(f, "FAIL ({} identities)", self.failures.len())?;
        for failure in &self.failures {
            writeln!(f, "  {failure}")?;
        }
        Ok(())
    }
}

fn same(a: &AbHom, b: &AbHom) -> bool {
    a.equals(b).unwrap_or(false)
}

fn comp(outer: &AbHom, inner: &AbHom) -> AbHom {
    outer
        .compose(inner)
        .expect("functor tables are shape checked")
}

/// Verifies transitivity, the conjugation identities and the double coset
/// formula over all subgroup pairs and triples. Failures are collected, not
/// raised.
///
/// Compatibility of conjugation with itself, restriction and transfer is
/// checked for the group generators against every element; the rest
/// follows by composition.
pub fn check_mackey_axioms(m: &MackeyFunctor) -> AxiomReport {
    let lattice = m.lattice();
    let group = m.group();
    let n = lattice.len();
    let mut failures = Vec::new();
    let mut fail = |axiom, subgroups: Vec<(&'static str, usize)>, element| {
        failures.push(AxiomFailure {
            axiom,
            subgroups,
            element,
        })
    };

    for ((h, k), f) in m.res_maps() {
        if !f.is_well_defined() {
            fail(Axiom::WellDefined, vec![("res H", *h), ("K", *k)], None);
        }
    }
    for ((h, k), f) in m.tr_maps() {
        if !f.is_well_defined() {
            fail(Axiom::WellDefined, vec![("tr H", *h), ("K", *k)], None);
        }
    }
    for g in 0..group.order() {
        for h in 0..n {
            if !m.conj(g, h).is_well_defined() {
                fail(Axiom::WellDefined, vec![("conj H", h)], Some(g));
            }
        }
    }

    for h in 0..n {
        let id = AbHom::identity(m.level(h));
        if !same(m.res(h, h), &id) || !same(m.tr(h, h), &id) {
            fail(Axiom::Identity, vec![("H", h)], None);
        }
    }

    for l in 0..n {
        for h in lattice.subgroups_of(l) {
            for k in lattice.subgroups_of(h) {
                if !same(&comp(m.res(h, k), m.res(l, h)), m.res(l, k)) {
                    fail(
                        Axiom::RestrictionTransitivity,
                        vec![("L", l), ("H", h), ("K", k)],
                        None,
                    );
                }
                if !same(&comp(m.tr(l, h), m.tr(h, k)), m.tr(l, k)) {
                    fail(
                        Axiom::TransferTransitivity,
                        vec![("L", l), ("H", h), ("K", k)],
                        None,
                    );
                }
            }
        }
    }

    for h in 0..n {
        let id = AbHom::identity(m.level(h));
        for &x in lattice.subgroup(h).elements() {
            if !same(m.conj(x, h), &id) {
                fail(Axiom::InnerConjugation, vec![("H", h)], Some(x));
            }
        }
    }

    for s in group.generator_indices() {
        for h in 0..n {
            let sh = lattice.conjugate(s, h);
            for g in 0..group.order() {
                let gh = lattice.conjugate(g, h);
                let lhs = m.conj(group.mul(s, g), h);
                let rhs = comp(m.conj(s, gh), m.conj(g, h));
                if !same(lhs, &rhs) {
                    fail(Axiom::ConjugationAction, vec![("H", h)], Some(g));
                }
            }
            for k in lattice.subgroups_of(h) {
                let sk = lattice.conjugate(s, k);
                let a = comp(m.conj(s, k), m.res(h, k));
                let b = comp(m.res(sh, sk), m.conj(s, h));
                if !same(&a, &b) {
                    fail(
                        Axiom::ConjugationRestriction,
                        vec![("H", h), ("K", k)],
                        Some(s),
                    );
                }
                let a = comp(m.conj(s, h), m.tr(h, k));
                let b = comp(m.tr(sh, sk), m.conj(s, k));
                if !same(&a, &b) {
                    fail(
                        Axiom::ConjugationTransfer,
                        vec![("H", h), ("K", k)],
                        Some(s),
                    );
                }
            }
        }
    }

    for h in 0..n {
        let subs = lattice.subgroups_of(h);
        for &j in &subs {
            for &k in &subs {
                let lhs = comp(m.res(h, j), m.tr(h, k));
                let mut rhs = AbHom::zero(m.level(k), m.level(j));
                for dc in lattice.double_cosets(h, j, k).expect("J, K ⊆ H") {
                    let g = dc.representative;
                    let g_inv = group.inv(g);
                    // K ∩ g⁻¹Jg, and its conjugate J ∩ gKg⁻¹
                    let inner = lattice.intersection(k, lattice.conjugate(g_inv, j));
                    let outer = lattice.conjugate(g, inner);
                    let term = comp(m.tr(j, outer), &comp(m.conj(g, inner), m.res(k, inner)));
                    rhs = rhs.add(&term).expect("parallel maps");
                }
                if !same(&lhs, &rhs) {
                    fail(Axiom::DoubleCoset, vec![("H", h), ("J", j), ("K", k)], None);
                }
            }
        }
    }

    AxiomReport { failures }
}
