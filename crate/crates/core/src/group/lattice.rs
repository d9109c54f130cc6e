use std::collections::{HashMap, VecDeque};

use super::{DoubleCoset, GroupError, PermGroup, Subgroup, WeylGroup};

/// Every subgroup of a permutation group, with inclusion, conjugation and
/// normality precomputed.
///
/// Subgroups are indexed in canonical order: by order first, then by their
/// sorted element lists. Index `0` is always `{e}` and the last index is the
/// whole group. These indices are the subgroup ids used in JSON documents.
#[derive(Clone, Debug)]
pub struct SubgroupLattice {
    group: PermGroup,
    subgroups: Vec<Subgroup>,
    index: HashMap<Subgroup, usize>,
    // contains[h][k] == (K ⊆ H)
    contains: Vec<Vec<bool>>,
    class_of: Vec<usize>,
    classes: Vec<Vec<usize>>,
    normal: Vec<bool>,
    // conj[g * n + h] = index of g H g⁻¹
    conj: Vec<usize>,
}

impl SubgroupLattice {
    pub fn new(group: PermGroup) -> Self {
        let subgroups = enumerate_subgroups(&group);
        let n = subgroups.len();
        let index: HashMap<Subgroup, usize> = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();

        let contains = subgroups
            .iter()
            .map(|h| subgroups.iter().map(|k| k.is_subgroup_of(h)).collect())
            .collect();

        let mut conj = Vec::with_capacity(group.order() * n);
        for g in 0..group.order() {
            for h in &subgroups {
                conj.push(index[&group.conjugate_subgroup(g, h)]);
            }
        }

        let mut class_of = vec![usize::MAX; n];
        let mut classes = Vec::new();
        for h in 0..n {
            if class_of[h] != usize::MAX {
                continue;
            }
            let mut members: Vec<usize> = (0..group.order()).map(|g| conj[g * n + h]).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                class_of[m] = classes.len();
            }
            classes.push(members);
        }
        let normal = (0..n).map(|h| classes[class_of[h]].len() == 1).collect();

        SubgroupLattice {
            group,
            subgroups,
            index,
            contains,
            class_of,
            classes,
            normal,
            conj,
        }
    }

    pub fn group(&self) -> &PermGroup {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn order(&self, i: usize) -> usize {
        self.subgroups[i].order()
    }

    pub fn index_of(&self, s: &Subgroup) -> Option<usize> {
        self.index.get(s).copied()
    }

    pub fn trivial(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    /// `K ⊆ H`
    pub fn is_subgroup(&self, k: usize, h: usize) -> bool {
        self.contains[h][k]
    }

    /// Indices of all `K ⊆ H`, ascending.
    pub fn subgroups_of(&self, h: usize) -> Vec<usize> {
        (0..self.len()).filter(|&k| self.contains[h][k]).collect()
    }

    /// Indices of all `L ⊇ H`, ascending.
    pub fn supergroups_of(&self, h: usize) -> Vec<usize> {
        (0..self.len()).filter(|&l| self.contains[l][h]).collect()
    }

    /// Index of `g H g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.conj[g * self.len() + h]
    }

    pub fn intersection(&self, a: usize, b: usize) -> usize {
        self.index[&self.subgroups[a].intersection(&self.subgroups[b])]
    }

    pub fn class_of(&self, h: usize) -> usize {
        self.class_of[h]
    }

    pub fn classes(&self) -> &[Vec<usize>] {
        &self.classes
    }

    /// Smallest index in the conjugacy class of `h`.
    pub fn class_rep(&self, h: usize) -> usize {
        self.classes[self.class_of[h]][0]
    }

    pub fn class_reps(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c[0]).collect()
    }

    pub fn is_normal(&self, h: usize) -> bool {
        self.normal[h]
    }

    /// Representatives of the `H`-conjugacy classes of subgroups of `H`.
    pub fn classes_within(&self, h: usize) -> Vec<Vec<usize>> {
        let hs = self.subgroups[h].elements().to_vec();
        let mut seen = vec![false; self.len()];
        let mut out = Vec::new();
        for k in self.subgroups_of(h) {
            if seen[k] {
                continue;
            }
            let mut members: Vec<usize> = hs.iter().map(|&x| self.conjugate(x, k)).collect();
            members.sort_unstable();
            members.dedup();
            for &m in &members {
                seen[m] = true;
            }
            out.push(members);
        }
        out
    }

    /// The family `ℱ[N]` of subgroups not containing `N`, and its complement.
    pub fn family_not_containing(&self, n: usize) -> FamilySplit {
        let (complement, family): (Vec<usize>, Vec<usize>) =
            (0..self.len()).partition(|&h| self.is_subgroup(n, h));
        FamilySplit { family, complement }
    }

    pub fn double_cosets(
        &self,
        h: usize,
        j: usize,
        k: usize,
    ) -> Result<Vec<DoubleCoset>, GroupError> {
        self.group
            .double_cosets(&self.subgroups[h], &self.subgroups[j], &self.subgroups[k])
    }

    pub fn weyl_group(&self, h: usize) -> WeylGroup {
        self.group.weyl_group(&self.subgroups[h])
    }

    pub fn index_in(&self, k: usize, h: usize) -> usize {
        self.order(h) / self.order(k)
    }
}

/// Subgroups split by whether they contain a fixed normal subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilySplit {
    /// Subgroups not containing `N`.
    pub family: Vec<usize>,
    /// Subgroups containing `N`.
    pub complement: Vec<usize>,
}

/// Breadth-first closure: start from the cyclic subgroups and keep joining
/// with cyclic subgroups until nothing new appears.
fn enumerate_subgroups(group: &PermGroup) -> Vec<Subgroup> {
    let mut found: HashMap<Subgroup, Vec<usize>> = HashMap::new();
    let mut cyclic: Vec<(usize, Subgroup)> = Vec::new();
    for g in 0..group.order() {
        let s = group.subgroup_generated(&[g]);
        if !found.contains_key(&s) {
            found.insert(s.clone(), if g == 0 { vec![] } else { vec![g] });
            cyclic.push((g, s));
        }
    }

    let mut queue: VecDeque<Subgroup> = found.keys().cloned().collect();
    while let Some(s) = queue.pop_front() {
        let gens = found[&s].clone();
        for (g, c) in &cyclic {
            if c.is_subgroup_of(&s) {
                continue;
            }
            let mut joined = gens.clone();
            joined.push(*g);
            let t = group.subgroup_generated(&joined);
            if !found.contains_key(&t) {
                found.insert(t.clone(), joined);
                queue.push_back(t);
            }
        }
    }

    let mut subgroups: Vec<Subgroup> = found.into_keys().collect();
    subgroups.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.cmp(b)));
    subgroups
}
