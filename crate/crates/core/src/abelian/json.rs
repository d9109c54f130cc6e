use std::fmt;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::de::{self, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{AbError, FgAbGroup, Matrix};

/// An integer that serializes as a JSON number when it fits in 64 bits and as
/// a decimal string otherwise.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct JsonInt(pub BigInt);

impl Serialize for JsonInt {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self.0.to_i64() {
            Some(v) => s.serialize_i64(v),
            None => s.serialize_str(&self.0.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for JsonInt {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl Visitor<'_> for V {
            type Value = JsonInt;

            fn expecting(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                write!(f, "an integer or a decimal string")
            }

            fn visit_i64<E: de::Error>(self, v: i64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_u64<E: de::Error>(self, v: u64) -> Result<JsonInt, E> {
                Ok(JsonInt(v.into()))
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<JsonInt, E> {
                v.parse::<BigInt>()
                    .map(JsonInt)
                    .map_err(|_| E::custom(format!("`{v}` is not an integer")))
            }
        }
        d.deserialize_any(V)
    }
}

impl From<i64> for JsonInt {
    fn from(v: i64) -> Self {
        JsonInt(v.into())
    }
}

/// Row-major integer matrix.
pub type MatrixJson = Vec<Vec<JsonInt>>;

pub fn matrix_to_json(m: &Matrix) -> MatrixJson {
    (0..m.rows())
        .map(|i| m.row(i).iter().cloned().map(JsonInt).collect())
        .collect()
}

/// Rebuilds a matrix with a known shape; an empty row list is allowed for
/// zero-row matrices.
pub fn matrix_from_json(rows: &MatrixJson, nrows: usize, ncols: usize) -> Result<Matrix, AbError> {
    if rows.len() != nrows {
        return Err(AbError::Shape(format!(
            "expected {nrows} rows, found {}",
            rows.len()
        )));
    }
    let data = rows
        .iter()
        .map(|r| r.iter().map(|x| x.0.clone()).collect())
        .collect();
    Matrix::from_rows(data, ncols)
        .ok_or_else(|| AbError::Shape(format!("expected rows of length {ncols}")))
}

/// `{ "ngens": 2, "relations": [[2, 0]] }`
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PresentationJson {
    pub ngens: usize,
    #[serde(default)]
    pub relations: MatrixJson,
}

impl PresentationJson {
    pub fn build(&self) -> Result<FgAbGroup, AbError> {
        let m = matrix_from_json(&self.relations, self.relations.len(), self.ngens)?;
        FgAbGroup::new(self.ngens, m)
    }
}

impl From<&FgAbGroup> for PresentationJson {
    fn from(g: &FgAbGroup) -> Self {
        PresentationJson {
            ngens: g.ngens(),
            relations: matrix_to_json(g.relations()),
        }
    }
}
