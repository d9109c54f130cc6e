use super::{GroupError, PermGroup, DEFAULT_ELEMENT_CAP};

/// Names accepted by [`named_group`].
pub const PRESET_NAMES: &[&str] = &["trivial", "C2", "C3", "C4", "V4", "S3", "D8", "Q8"];

/// Fixed permutation models:
///
/// | name    | degree | generators                                   |
/// |---------|--------|----------------------------------------------|
/// | trivial | 1      | none                                         |
/// | C2      | 2      | (0 1)                                        |
/// | C3      | 3      | (0 1 2)                                      |
/// | C4      | 4      | (0 1 2 3)                                    |
/// | V4      | 4      | (0 1)(2 3), (0 2)(1 3)                       |
/// | S3      | 3      | (0 1 2), (0 1)                               |
/// | D8      | 4      | (0 1 2 3), (1 3)                             |
/// | Q8      | 8      | left multiplication by i and j on           |
/// |         |        | 1, i, j, k, -1, -i, -j, -k (points 0..7)     |
pub fn named_group(name: &str) -> Result<PermGroup, GroupError> {
    named_group_with_cap(name, DEFAULT_ELEMENT_CAP)
}

/// [`named_group`] under an element cap.
pub fn named_group_with_cap(name: &str, cap: usize) -> Result<PermGroup, GroupError> {
    let (degree, gens): (usize, Vec<Vec<usize>>) = match name {
        "trivial" | "e" | "C1" => (1, vec![]),
        "C2" => (2, vec![vec![1, 0]]),
        "C3" => (3, vec![vec![1, 2, 0]]),
        "C4" => (4, vec![vec![1, 2, 3, 0]]),
        "V4" => (4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]),
        "S3" => (3, vec![vec![1, 2, 0], vec![1, 0, 2]]),
        "D8" => (4, vec![vec![1, 2, 3, 0], vec![0, 3, 2, 1]]),
        "Q8" => (
            8,
            vec![vec![1, 4, 3, 6, 5, 0, 7, 2], vec![2, 7, 4, 1, 6, 3, 0, 5]],
        ),
        _ => return Err(GroupError::UnknownPreset(name.to_string())),
    };
    PermGroup::from_images_with_cap(degree, gens, cap)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn preset_orders() {
        let expected = [1, 2, 3, 4, 4, 6, 8, 8];
        for (name, order) in PRESET_NAMES.iter().zip(expected) {
            assert_eq!(named_group(name).unwrap().order(), order, "{name}");
        }
        assert!(matches!(
            named_group("C5"),
            Err(GroupError::UnknownPreset(_))
        ));
    }
}
