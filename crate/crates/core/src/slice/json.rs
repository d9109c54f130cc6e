use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::abelian::InvariantFactors;
use crate::mackey::mackey_to_json;

use super::{EmTower, Variant};

/// `{ "base": .., "shift": 1, "variant": "regular", "slices": {degree:
/// {class representative id: invariant factors}} }`. Degrees whose slice is
/// zero are omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TowerJson {
    pub base: Value,
    pub shift: i32,
    pub variant: Variant,
    pub slices: BTreeMap<i64, BTreeMap<usize, InvariantFactors>>,
}

impl TowerJson {
    /// Describes `t`, naming its base by `base` (a preset name or a functor
    /// document).
    pub fn new(t: &EmTower, base: Value) -> Self {
        TowerJson {
            base,
            shift: t.shift(),
            variant: t.variant(),
            slices: t.summary(),
        }
    }
}

/// Describes `t` with its base functor written out in full.
pub fn tower_to_json(t: &EmTower) -> TowerJson {
    let base = serde_json::to_value(mackey_to_json(t.base())).expect("functor documents serialize");
    TowerJson::new(t, base)
}
