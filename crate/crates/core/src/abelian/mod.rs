//! Finitely generated abelian groups presented by integer relation matrices,
//! their homomorphisms, kernels, images and quotients.
//!
//! All arithmetic is exact over arbitrary-precision integers; subgroups are
//! carried as inclusion maps so towers of subgroups compose without
//! re-presenting anything.

mod group;
mod hom;
mod json;
mod matrix;
mod smith;

pub use group::{equal_elements, AbElement, FgAbGroup, InvariantFactors, Simplified};
pub use hom::{
    compose, image, induced_map, is_zero_hom, kernel, quotient, subgroup_from_rows,
    subgroup_generated, AbHom, AbQuotient, AbSubgroup,
};
pub use json::{matrix_from_json, matrix_to_json, JsonInt, MatrixJson, PresentationJson};
pub use matrix::Matrix;
pub use smith::{hermite_rows, smith_normal_form, Smith};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbError {
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("homomorphism is not well defined on the relations")]
    NotWellDefined,
    #[error("elements live in different groups")]
    AmbientMismatch,
    #[error("element is not contained in the subgroup")]
    NotContained,
}
