use serde::{Deserialize, Serialize};

use super::{named_group_with_cap, GroupError, PermGroup, DEFAULT_ELEMENT_CAP};

/// `{ "degree": 3, "generators": [[1, 2, 0], [1, 0, 2]] }`, permutations in
/// one-line image notation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupJson {
    pub degree: usize,
    pub generators: Vec<Vec<usize>>,
}

/// A group reference: either a preset name or an explicit permutation model.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupSpec {
    Preset(String),
    Explicit(GroupJson),
}

impl GroupSpec {
    pub fn build(&self) -> Result<PermGroup, GroupError> {
        self.build_with_cap(DEFAULT_ELEMENT_CAP)
    }

    pub fn build_with_cap(&self, cap: usize) -> Result<PermGroup, GroupError> {
        match self {
            GroupSpec::Preset(name) => named_group_with_cap(name, cap),
            GroupSpec::Explicit(g) => {
                PermGroup::from_images_with_cap(g.degree, g.generators.clone(), cap)
            }
        }
    }
}

impl From<&PermGroup> for GroupJson {
    fn from(g: &PermGroup) -> Self {
        GroupJson {
            degree: g.degree(),
            generators: g.generators().iter().map(|p| p.images().to_vec()).collect(),
        }
    }
}
