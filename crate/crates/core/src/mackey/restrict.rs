use std::collections::BTreeMap;
use std::sync::Arc;

use crate::group::{PermGroup, SubgroupLattice};

use super::{MackeyError, MackeyFunctor};

/// A functor restricted to a subgroup `H`, with the dictionary back to the
/// ambient lattice.
#[derive(Clone, Debug)]
pub struct Restricted {
    pub functor: MackeyFunctor,
    /// `subgroups[i]` is the ambient id of subgroup `i` of `H`.
    pub subgroups: Vec<usize>,
    /// `elements[i]` is the ambient index of element `i` of `H`.
    pub elements: Vec<usize>,
}

/// `i*_H M`: the levels and maps of `M` at subgroups of `H`, reindexed over
/// `H` as a group in its own right.
pub fn restrict_mackey(m: &MackeyFunctor, h: usize) -> Result<Restricted, MackeyError> {
    let lattice = m.lattice();
    if h >= lattice.len() {
        return Err(MackeyError::Shape(format!("no subgroup with id {h}")));
    }
    let group = m.group();
    let sub = lattice.subgroup(h);
    let gens = group
        .small_generating_set(sub)
        .into_iter()
        .map(|g| group.element(g).clone())
        .collect();
    let small = PermGroup::from_generators(group.degree(), gens)?;
    let elements: Vec<usize> = small
        .elements()
        .iter()
        .map(|p| group.index_of(p).expect("subgroup element"))
        .collect();
    let small_lattice = Arc::new(SubgroupLattice::new(small));
    let subgroups: Vec<usize> = small_lattice
        .subgroups()
        .iter()
        .map(|s| {
            let ambient: Vec<usize> = s.elements().iter().map(|&x| elements[x]).collect();
            let ambient = group
                .subgroup_from_elements(&ambient)
                .expect("image of a subgroup");
            lattice
                .index_of(&ambient)
                .expect("every subgroup is listed")
        })
        .collect();

    let n = small_lattice.len();
    let levels = subgroups.iter().map(|&a| m.level(a).clone()).collect();
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for a in 0..n {
        for b in small_lattice.subgroups_of(a) {
            res.insert((a, b), m.res(subgroups[a], subgroups[b]).clone());
            tr.insert((a, b), m.tr(subgroups[a], subgroups[b]).clone());
        }
    }
    let mut conj = Vec::with_capacity(elements.len() * n);
    for &g in &elements {
        for &a in &subgroups {
            conj.push(m.conj(g, a).clone());
        }
    }
    let functor = MackeyFunctor::from_parts(small_lattice, levels, res, tr, conj)?;
    Ok(Restricted {
        functor,
        subgroups,
        elements,
    })
}
