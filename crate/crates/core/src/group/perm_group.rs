use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use super::{GroupError, Perm};

/// Closure size at which [`PermGroup::from_generators`] gives up.
pub const DEFAULT_ELEMENT_CAP: usize = 10_000;

// Multiplication tables are only cached below this order.
const TABLE_LIMIT: usize = 1024;

/// A finite group of permutations together with its complete element list.
///
/// Elements are kept sorted lexicographically by their image vectors, so the
/// identity is always element `0`. Everything else in the crate refers to
/// group elements by their index in this list.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    inverses: Vec<usize>,
    table: Option<Vec<u32>>,
}

impl PermGroup {
    pub fn from_generators(degree: usize, generators: Vec<Perm>) -> Result<Self, GroupError> {
        Self::from_generators_with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn from_images(degree: usize, generators: Vec<Vec<usize>>) -> Result<Self, GroupError> {
        Self::from_images_with_cap(degree, generators, DEFAULT_ELEMENT_CAP)
    }

    pub fn from_images_with_cap(
        degree: usize,
        generators: Vec<Vec<usize>>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        let gens = generators
            .into_iter()
            .map(Perm::new)
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_generators_with_cap(degree, gens, cap)
    }

    pub fn from_generators_with_cap(
        degree: usize,
        generators: Vec<Perm>,
        cap: usize,
    ) -> Result<Self, GroupError> {
        if degree == 0 {
            return Err(GroupError::ZeroDegree);
        }
        for g in &generators {
            if g.degree() != degree {
                return Err(GroupError::DegreeMismatch {
                    expected: degree,
                    found: g.degree(),
                });
            }
        }

        let identity = Perm::identity(degree);
        let mut seen: HashMap<Perm, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone(), ());
        queue.push_back(identity);
        while let Some(p) = queue.pop_front() {
            for g in &generators {
                let q = g.compose(&p);
                if !seen.contains_key(&q) {
                    if seen.len() >= cap {
                        return Err(GroupError::ElementCapExceeded { cap });
                    }
                    seen.insert(q.clone(), ());
                    queue.push_back(q);
                }
            }
        }

        let mut elements: Vec<Perm> = seen.into_keys().collect();
        elements.sort();
        let index: HashMap<Perm, usize> = elements
            .iter()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let inverses = elements.iter().map(|p| index[&p.inverse()]).collect();

        let mut group = PermGroup {
            degree,
            generators,
            elements,
            index,
            inverses,
            table: None,
        };
        let n = group.order();
        if n <= TABLE_LIMIT {
            let mut table = Vec::with_capacity(n * n);
            for a in 0..n {
                for b in 0..n {
                    table.push(group.mul_uncached(a, b) as u32);
                }
            }
            group.table = Some(table);
        }
        Ok(group)
    }

    pub fn trivial() -> Self {
        Self::from_generators(1, vec![]).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn identity(&self) -> usize {
        0
    }

    pub fn generator_indices(&self) -> Vec<usize> {
        self.generators.iter().map(|g| self.index[g]).collect()
    }

    fn mul_uncached(&self, a: usize, b: usize) -> usize {
        self.index[&self.elements[a].compose(&self.elements[b])]
    }

    /// Index of `a ∘ b`.
    pub fn mul(&self, a: usize, b: usize) -> usize {
        match &self.table {
            Some(t) => t[a * self.order() + b] as usize,
            None => self.mul_uncached(a, b),
        }
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    /// `g h g⁻¹`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// Sorted element indices of the subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        let mut out = vec![0];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(g, x);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                    queue.push_back(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Subgroup {
        Subgroup {
            elements: self.closure(gens),
        }
    }

    /// Parses a subgroup given by generating permutations of this group.
    pub fn subgroup_from_perms(&self, gens: &[Perm]) -> Result<Subgroup, GroupError> {
        let idx = gens
            .iter()
            .map(|p| {
                self.index_of(p)
                    .ok_or_else(|| GroupError::NotAnElement(p.images().to_vec()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(self.subgroup_generated(&idx))
    }

    /// Checks closure and builds a subgroup from an explicit element set.
    pub fn subgroup_from_elements(&self, elements: &[usize]) -> Result<Subgroup, GroupError> {
        let mut elements = elements.to_vec();
        elements.sort_unstable();
        elements.dedup();
        if elements.first() != Some(&0) {
            return Err(GroupError::NotASubgroup);
        }
        for &a in &elements {
            for &b in &elements {
                if elements.binary_search(&self.mul(a, b)).is_err() {
                    return Err(GroupError::NotASubgroup);
                }
            }
        }
        Ok(Subgroup { elements })
    }

    pub fn whole(&self) -> Subgroup {
        Subgroup {
            elements: (0..self.order()).collect(),
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        Subgroup { elements: vec![0] }
    }

    /// `g H g⁻¹`
    pub fn conjugate_subgroup(&self, g: usize, h: &Subgroup) -> Subgroup {
        let mut elements: Vec<usize> = h.elements.iter().map(|&x| self.conjugate(g, x)).collect();
        elements.sort_unstable();
        Subgroup { elements }
    }

    pub fn is_normal(&self, n: &Subgroup) -> bool {
        self.generator_indices()
            .into_iter()
            .all(|g| &self.conjugate_subgroup(g, n) == n)
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let elements = (0..self.order())
            .filter(|&g| &self.conjugate_subgroup(g, h) == h)
            .collect();
        Subgroup { elements }
    }

    /// Greedy generating set: walk the elements in order and keep those not
    /// already generated.
    pub fn small_generating_set(&self, h: &Subgroup) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0usize];
        for &x in &h.elements {
            if span.binary_search(&x).is_err() {
                gens.push(x);
                span = self.closure(&gens);
            }
            if span.len() == h.order() {
                break;
            }
        }
        gens
    }

    /// Left cosets `a·sub` of `sub` inside `ambient`, ordered by their
    /// smallest element.
    pub fn left_cosets(&self, ambient: &Subgroup, sub: &Subgroup) -> Vec<Vec<usize>> {
        let mut assigned = vec![false; self.order()];
        let mut cosets = Vec::new();
        for &a in &ambient.elements {
            if assigned[a] {
                continue;
            }
            let mut coset: Vec<usize> = sub.elements.iter().map(|&s| self.mul(a, s)).collect();
            coset.sort_unstable();
            for &c in &coset {
                assigned[c] = true;
            }
            cosets.push(coset);
        }
        cosets
    }

    /// The action of `ambient` on the left cosets of `sub` by left
    /// translation, as a permutation group, plus the induced map from
    /// elements of `ambient` to elements of that group.
    fn coset_action(
        &self,
        ambient: &Subgroup,
        ambient_gens: &[usize],
        sub: &Subgroup,
    ) -> (PermGroup, BTreeMap<usize, usize>) {
        let cosets = self.left_cosets(ambient, sub);
        let mut coset_of = HashMap::new();
        for (i, c) in cosets.iter().enumerate() {
            for &x in c {
                coset_of.insert(x, i);
            }
        }
        let action = |x: usize| -> Perm {
            let images = cosets
                .iter()
                .map(|c| coset_of[&self.mul(x, c[0])])
                .collect();
            Perm::new(images).expect("left translation permutes cosets")
        };
        let mut gens: Vec<Perm> = ambient_gens
            .iter()
            .map(|&g| action(g))
            .filter(|p| !p.is_identity())
            .collect();
        gens.sort();
        gens.dedup();
        let group = PermGroup::from_generators(cosets.len(), gens)
            .expect("coset action is bounded by the ambient order");
        let projection = ambient
            .elements
            .iter()
            .map(|&x| (x, group.index_of(&action(x)).expect("image lies in group")))
            .collect();
        (group, projection)
    }

    /// `G/N` acting on the cosets of `N` by left translation.
    pub fn quotient_group(&self, n: &Subgroup) -> Result<QuotientGroup, GroupError> {
        if !self.is_normal(n) {
            return Err(GroupError::NotNormal);
        }
        let (group, proj) = self.coset_action(&self.whole(), &self.generator_indices(), n);
        Ok(QuotientGroup {
            group,
            projection: proj.into_values().collect(),
        })
    }

    /// `W_G(H) = N_G(H)/H`, with the conjugates of `H` and a transversal.
    pub fn weyl_group(&self, h: &Subgroup) -> WeylGroup {
        let normalizer = self.normalizer(h);
        let gens = self.small_generating_set(&normalizer);
        let (group, projection) = self.coset_action(&normalizer, &gens, h);
        let mut conjugates: Vec<(usize, Subgroup)> = Vec::new();
        for g in 0..self.order() {
            let c = self.conjugate_subgroup(g, h);
            if !conjugates.iter().any(|(_, k)| *k == c) {
                conjugates.push((g, c));
            }
        }
        WeylGroup {
            normalizer,
            group,
            projection,
            conjugates,
        }
    }

    /// Double cosets `J g K` partitioning `H`, one per entry, each represented
    /// by its smallest element.
    pub fn double_cosets(
        &self,
        h: &Subgroup,
        j: &Subgroup,
        k: &Subgroup,
    ) -> Result<Vec<DoubleCoset>, GroupError> {
        if !j.is_subgroup_of(h) || !k.is_subgroup_of(h) {
            return Err(GroupError::NotContained);
        }
        let mut assigned = vec![false; self.order()];
        let mut out = Vec::new();
        for &x in &h.elements {
            if assigned[x] {
                continue;
            }
            let mut size = 0;
            for &a in &j.elements {
                let ax = self.mul(a, x);
                for &b in &k.elements {
                    let y = self.mul(ax, b);
                    if !assigned[y] {
                        assigned[y] = true;
                        size += 1;
                    }
                }
            }
            out.push(DoubleCoset {
                representative: x,
                size,
            });
        }
        Ok(out)
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("order", &self.order())
            .field("generators", &self.generators)
            .finish()
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.elements == other.elements
    }
}

impl Eq for PermGroup {}

/// A subgroup stored as the sorted list of its element indices in the parent
/// group. The element list doubles as the canonical id.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup {
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn id(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.order() <= other.order() && self.elements.iter().all(|&x| other.contains(x))
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        Subgroup {
            elements: self
                .elements
                .iter()
                .copied()
                .filter(|&x| other.contains(x))
                .collect(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }
}

/// `G/N` as a permutation group with the projection `G → G/N` on element
/// indices.
#[derive(Clone, Debug)]
pub struct QuotientGroup {
    pub group: PermGroup,
    pub projection: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct WeylGroup {
    pub normalizer: Subgroup,
    pub group: PermGroup,
    /// Normalizer element index → Weyl group element index.
    pub projection: BTreeMap<usize, usize>,
    /// The distinct conjugates `gHg⁻¹`, each with one `g` realizing it.
    pub conjugates: Vec<(usize, Subgroup)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DoubleCoset {
    pub representative: usize,
    pub size: usize,
}
