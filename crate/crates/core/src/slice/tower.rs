use std::collections::BTreeMap;
use std::fmt;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::abelian::{AbHom, InvariantFactors};
use crate::mackey::{
    hill_filtration, order_generated_filtration, quotient_mackey, MackeyFunctor, SubMackey,
};

use super::SliceError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Variant {
    Regular,
    Irregular,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Variant::Regular => write!(f, "regular"),
            Variant::Irregular => write!(f, "irregular"),
        }
    }
}

/// One slice `stage(d) / stage(d + 1)` together with the short exact
/// sequence it comes from, levelwise.
#[derive(Clone, Debug)]
pub struct Slice {
    pub degree: i64,
    pub functor: MackeyFunctor,
    /// `stage(d)` as a functor in its own right.
    pub stage: MackeyFunctor,
    /// `stage(d + 1)` as a functor in its own right.
    pub next: MackeyFunctor,
    /// Levelwise `stage(d + 1) ↪ stage(d)`.
    pub inclusions: Vec<AbHom>,
    /// Levelwise `stage(d) ↠ slice(d)`.
    pub projections: Vec<AbHom>,
}

/// The slice tower of `Σ^{shift} H M` as a decreasing family of
/// subfunctors of `M`: `stage(d)` is all of `M` for `d < lowest`, zero for
/// `d ≥ lowest + stages.len()`, and `stages[d − lowest]` in between.
#[derive(Clone, Debug)]
pub struct EmTower {
    base: MackeyFunctor,
    shift: i32,
    variant: Variant,
    lowest: i64,
    stages: Vec<SubMackey>,
    slices: BTreeMap<i64, Slice>,
}

impl EmTower {
    pub(crate) fn from_stages(
        base: MackeyFunctor,
        shift: i32,
        variant: Variant,
        lowest: i64,
        stages: Vec<SubMackey>,
    ) -> Result<Self, SliceError> {
        let mut tower = EmTower {
            base,
            shift,
            variant,
            lowest,
            stages,
            slices: BTreeMap::new(),
        };
        let full = SubMackey::full(&tower.base);
        for i in 0..=tower.stages.len() {
            let degree = lowest + i as i64 - 1;
            let current = if i == 0 { &full } else { &tower.stages[i - 1] };
            let next = tower.stage(degree + 1);
            let stage = current.as_functor(&tower.base)?;
            let relative = next.relative_to(current)?;
            let q = quotient_mackey(&stage, &relative)?;
            if q.functor.is_zero() {
                continue;
            }
            let inclusions = relative
                .levels()
                .iter()
                .map(|s| s.inclusion().clone())
                .collect();
            let next = relative.as_functor(&stage)?;
            tower.slices.insert(
                degree,
                Slice {
                    degree,
                    functor: q.functor,
                    stage,
                    next,
                    inclusions,
                    projections: q.projections,
                },
            );
        }
        Ok(tower)
    }

    pub fn base(&self) -> &MackeyFunctor {
        &self.base
    }

    pub fn shift(&self) -> i32 {
        self.shift
    }

    pub fn variant(&self) -> Variant {
        self.variant
    }

    /// Degrees below this carry the whole base functor.
    pub fn lowest(&self) -> i64 {
        self.lowest
    }

    /// Degrees from here on carry zero.
    pub fn zero_from(&self) -> i64 {
        self.lowest + self.stages.len() as i64
    }

    pub fn stage(&self, degree: i64) -> SubMackey {
        if degree < self.lowest {
            SubMackey::full(&self.base)
        } else if degree >= self.zero_from() {
            SubMackey::zero(&self.base)
        } else {
            self.stages[(degree - self.lowest) as usize].clone()
        }
    }

    /// Nonzero slices by degree.
    pub fn slices(&self) -> &BTreeMap<i64, Slice> {
        &self.slices
    }

    pub fn slice(&self, degree: i64) -> Option<&Slice> {
        self.slices.get(&degree)
    }

    /// Invariant factors of each nonzero slice at each conjugacy-class
    /// representative.
    pub fn summary(&self) -> BTreeMap<i64, BTreeMap<usize, InvariantFactors>> {
        let reps = self.base.lattice().class_reps();
        self.slices
            .iter()
            .map(|(&d, s)| {
                let levels = reps
                    .iter()
                    .map(|&h| (h, s.functor.level(h).invariant_factors().clone()))
                    .collect();
                (d, levels)
            })
            .collect()
    }
}

/// The regular slice tower of `Σ H M`: `P_k = Σ H(F^k M)`, with slices in
/// degrees `1..=|G|`.
pub fn em_tower_plus(m: &MackeyFunctor) -> Result<EmTower, SliceError> {
    let order = m.group().order() as i64;
    let stages = (1..=order).map(|k| hill_filtration(m, k)).collect();
    EmTower::from_stages(m.clone(), 1, Variant::Regular, 1, stages)
}

/// The regular slice tower of `Σ⁻¹ H M`: `P_n = Σ⁻¹ H(F_{−n} M)`, with
/// slices in degrees `−|G|..=−1`.
pub fn em_tower_minus(m: &MackeyFunctor) -> Result<EmTower, SliceError> {
    let order = m.group().order() as i64;
    let stages = (-order..0)
        .map(|n| order_generated_filtration(m, Ratio::from_integer(-n)))
        .collect();
    EmTower::from_stages(m.clone(), -1, Variant::Regular, -order, stages)
}

/// The irregular slice tower of `H M` read off the regular tower of `Σ H M`:
/// the irregular stage `n` is `H(F^{n+1} M)`, so slices sit in degrees
/// `0..=|G| − 1`.
pub fn irregular_tower_from_regular(t: &EmTower) -> Result<EmTower, SliceError> {
    if t.shift != 1 || t.variant != Variant::Regular {
        return Err(SliceError::WrongVariant(format!(
            "expected the regular tower of a suspension, got shift {} {}",
            t.shift, t.variant
        )));
    }
    EmTower::from_stages(
        t.base.clone(),
        0,
        Variant::Irregular,
        t.lowest - 1,
        t.stages.clone(),
    )
}

/// `F_{m/n} M`, the filtration `F^{−m}` of `π_{−n}` of a `(−n−1)`-connected
/// spectrum whose bottom homotopy is `M`.
pub fn homotopy_filtration(m: &MackeyFunctor, n: i64, k: i64) -> Result<SubMackey, SliceError> {
    if n <= 0 {
        return Err(SliceError::OutOfRange(format!("n = {n} must be positive")));
    }
    if k < 0 {
        return Err(SliceError::OutOfRange(format!(
            "m = {k} must be nonnegative"
        )));
    }
    Ok(order_generated_filtration(m, Ratio::new(k, n)))
}
