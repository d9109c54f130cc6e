//! Slice cells, the regular slice towers of `Σ^{±1} H M`, the irregular
//! tower of `H M`, and transport of degrees along `G → G/N`.

mod cells;
mod json;
mod pullback;
mod tower;

pub use cells::{
    cell_dual, connective_generators, filtration_bounds, geometric_fixed_points_cell,
    negative_generators, pullback_degree, slice_cells, FiltrationBounds, SliceCell,
    SphereGenerator, SphereGenerators,
};
pub use json::{tower_to_json, TowerJson};
pub use pullback::{pullback_mackey, pullback_tower, QuotientMap};
pub use tower::{
    em_tower_minus, em_tower_plus, homotopy_filtration, irregular_tower_from_regular, EmTower,
    Slice, Variant,
};

use thiserror::Error;

use crate::group::GroupError;
use crate::mackey::MackeyError;

#[derive(Debug, Error)]
pub enum SliceError {
    #[error("{0} is not defined")]
    IrregularCell(&'static str),
    #[error("subgroup {0} is not normal")]
    NotNormal(usize),
    #[error("the normal subgroup must be nontrivial")]
    TrivialNormal,
    #[error("the input lives over a different group")]
    WrongLattice,
    #[error("wrong tower: {0}")]
    WrongVariant(String),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error(transparent)]
    Mackey(#[from] MackeyError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
