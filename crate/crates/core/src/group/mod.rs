//! Finite permutation groups, their subgroup lattices, quotients, double
//! cosets and Weyl groups.

mod json;
mod lattice;
mod perm;
mod perm_group;
mod presets;

pub use json::{GroupJson, GroupSpec};
pub use lattice::{FamilySplit, SubgroupLattice};
pub use perm::Perm;
pub use perm_group::{
    DoubleCoset, PermGroup, QuotientGroup, Subgroup, WeylGroup, DEFAULT_ELEMENT_CAP,
};
pub use presets::{named_group, named_group_with_cap, PRESET_NAMES};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("not a bijection: {0:?}")]
    NotABijection(Vec<usize>),
    #[error("permutation has degree {found}, expected {expected}")]
    DegreeMismatch { expected: usize, found: usize },
    #[error("degree must be positive")]
    ZeroDegree,
    #[error("group closure exceeds the element cap of {cap}")]
    ElementCapExceeded { cap: usize },
    #[error("unknown group preset `{0}`")]
    UnknownPreset(String),
    #[error("subgroup is not normal")]
    NotNormal,
    #[error("subgroup containment violated")]
    NotContained,
    #[error("element set is not a subgroup")]
    NotASubgroup,
    #[error("permutation {0:?} is not an element of the group")]
    NotAnElement(Vec<usize>),
}
