//! Mackey functors over a finite group: the standard constructors, an axiom
//! checker, sub- and quotient functors, and the two filtrations used by the
//! slice towers.

mod axioms;
mod constructors;
mod filtration;
mod functor;
mod json;
mod restrict;
mod sub;

pub use axioms::{check_mackey_axioms, Axiom, AxiomFailure, AxiomReport};
pub use constructors::{
    burnside_mackey, constant_mackey, extend_action, fixed_point_mackey, permutation_action,
    preset_mackey, regular_action, sign_action, MACKEY_PRESETS,
};
pub use filtration::{hill_filtration, order_generated_filtration, reg_coh};
pub use functor::{MackeyElement, MackeyFunctor};
pub use json::{mackey_from_json, mackey_to_json, MackeyJson, MackeyPresetJson, MackeySpec};
pub use restrict::{restrict_mackey, Restricted};
pub use sub::{quotient_mackey, sub_mackey_generated, MackeyQuotient, SubMackey};

use thiserror::Error;

use crate::abelian::AbError;
use crate::group::GroupError;

#[derive(Debug, Error)]
pub enum MackeyError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("missing structure map: {0}")]
    MissingMap(String),
    #[error("unknown Mackey preset: {0}")]
    UnknownPreset(String),
    #[error("matrices do not define a group action: {0}")]
    InvalidAction(String),
    #[error("subfunctor is not closed: {0}")]
    NotClosed(String),
    #[error("Mackey axioms fail: {0}")]
    Axioms(AxiomReport),
    #[error("malformed Mackey functor: {0}")]
    Parse(String),
    #[error(transparent)]
    Ab(#[from] AbError),
    #[error(transparent)]
    Group(#[from] GroupError),
}
