use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;

use crate::abelian::{AbHom, AbSubgroup, FgAbGroup};
use crate::group::SubgroupLattice;
use crate::mackey::{MackeyFunctor, SubMackey};

use super::{EmTower, SliceError, Variant};

/// `G → G/N` on elements and on subgroups containing `N`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    source: Arc<SubgroupLattice>,
    normal: usize,
    target: Arc<SubgroupLattice>,
    elements: Vec<usize>,
    subgroups: Vec<Option<usize>>,
}

impl QuotientMap {
    pub fn new(source: &Arc<SubgroupLattice>, normal: usize) -> Result<Self, SliceError> {
        if normal >= source.len() {
            return Err(SliceError::OutOfRange(format!(
                "no subgroup with id {normal}"
            )));
        }
        if !source.is_normal(normal) {
            return Err(SliceError::NotNormal(normal));
        }
        let group = source.group();
        let q = group.quotient_group(source.subgroup(normal))?;
        let target = Arc::new(SubgroupLattice::new(q.group));
        let subgroups = (0..source.len())
            .map(|h| {
                if !source.is_subgroup(normal, h) {
                    return None;
                }
                let mut image: Vec<usize> = source
                    .subgroup(h)
                    .elements()
                    .iter()
                    .map(|&x| q.projection[x])
                    .collect();
                image.sort_unstable();
                image.dedup();
                let sub = target
                    .group()
                    .subgroup_from_elements(&image)
                    .expect("image of a subgroup");
                Some(target.index_of(&sub).expect("every subgroup is listed"))
            })
            .collect();
        Ok(QuotientMap {
            source: source.clone(),
            normal,
            target,
            elements: q.projection,
            subgroups,
        })
    }

    pub fn source(&self) -> &Arc<SubgroupLattice> {
        &self.source
    }

    pub fn target(&self) -> &Arc<SubgroupLattice> {
        &self.target
    }

    pub fn normal(&self) -> usize {
        self.normal
    }

    pub fn normal_order(&self) -> usize {
        self.source.order(self.normal)
    }

    /// `H/N` for `H ⊇ N`.
    pub fn image(&self, h: usize) -> Option<usize> {
        self.subgroups[h]
    }

    pub fn project_element(&self, g: usize) -> usize {
        self.elements[g]
    }
}

/// The functor over `G` of a spectrum pulled back from `G/N`: level `H` is
/// `Y(H/N)` when `H ⊇ N` and zero otherwise.
pub fn pullback_mackey(q: &QuotientMap, y: &MackeyFunctor) -> Result<MackeyFunctor, SliceError> {
    if y.lattice().group() != q.target.group() {
        return Err(SliceError::WrongLattice);
    }
    let lattice = &q.source;
    let n = lattice.len();
    let levels: Vec<FgAbGroup> = (0..n)
        .map(|h| match q.subgroups[h] {
            Some(i) => y.level(i).clone(),
            None => FgAbGroup::zero(),
        })
        .collect();
    let lift = |f: Option<&AbHom>, s: usize, t: usize| match f {
        Some(f) => f.clone(),
        None => AbHom::zero(&levels[s], &levels[t]),
    };
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for h in 0..n {
        for k in lattice.subgroups_of(h) {
            let pair = q.subgroups[h].zip(q.subgroups[k]);
            res.insert((h, k), lift(pair.map(|(a, b)| y.res(a, b)), h, k));
            tr.insert((h, k), lift(pair.map(|(a, b)| y.tr(a, b)), k, h));
        }
    }
    let mut conj = Vec::with_capacity(lattice.group().order() * n);
    for g in 0..lattice.group().order() {
        for h in 0..n {
            let gh = lattice.conjugate(g, h);
            let f = q.subgroups[h].map(|a| y.conj(q.elements[g], a));
            conj.push(lift(f, h, gh));
        }
    }
    Ok(MackeyFunctor::from_parts(
        lattice.clone(),
        levels,
        res,
        tr,
        conj,
    )?)
}

fn pullback_sub(q: &QuotientMap, x: &MackeyFunctor, s: &SubMackey) -> SubMackey {
    let levels = (0..q.source.len())
        .map(|h| match q.subgroups[h] {
            Some(i) => s.level(i).clone(),
            None => AbSubgroup::zero(x.level(h)),
        })
        .collect();
    SubMackey::new_unchecked(levels)
}

/// The regular tower of the pullback of a regular tower over `G/N`: stage
/// `m` is the pullback of stage `⌈m/|N|⌉`, so the slice in degree `k|N|` is
/// the pullback of the slice in degree `k` and every other slice is zero.
pub fn pullback_tower(y: &EmTower, q: &QuotientMap) -> Result<EmTower, SliceError> {
    if y.variant() != Variant::Regular {
        return Err(SliceError::WrongVariant(
            "pullback needs a regular tower".into(),
        ));
    }
    let x = pullback_mackey(q, y.base())?;
    let order = q.normal_order() as i64;
    let lowest = (y.lowest() - 1) * order + 1;
    let zero_from = (y.zero_from() - 1) * order + 1;
    let stages = (lowest..zero_from)
        .map(|m| pullback_sub(q, &x, &y.stage(Integer::div_ceil(&m, &order))))
        .collect();
    EmTower::from_stages(x, y.shift(), Variant::Regular, lowest, stages)
}
