use num_rational::Ratio;

use crate::abelian::{kernel, AbHom, AbSubgroup, FgAbGroup, Matrix};

use super::sub::generate_from_rows;
use super::{MackeyError, MackeyFunctor, SubMackey};

/// Common kernel of the restrictions from level `h` to the listed subgroups.
fn joint_kernel(m: &MackeyFunctor, h: usize, targets: &[usize]) -> AbSubgroup {
    let source = m.level(h);
    if targets.is_empty() {
        return AbSubgroup::whole(source);
    }
    let mut matrix = Matrix::zeros(source.ngens(), 0);
    let mut parts = Vec::with_capacity(targets.len());
    for &j in targets {
        matrix = matrix.hstack(m.res(h, j).matrix());
        parts.push(m.level(j).clone());
    }
    let target = FgAbGroup::direct_sum(&parts);
    let joint = AbHom::new_unchecked(source.clone(), target, matrix).expect("stacked shapes agree");
    kernel(&joint)
}

/// `F^k M`: at level `H`, the elements whose restriction to every `J ⊆ H`
/// with `|J| < k` vanishes. Any `k` is accepted; `k ≤ 1` gives `M` and
/// `k > |G|` gives zero.
pub fn hill_filtration(m: &MackeyFunctor, k: i64) -> SubMackey {
    let lattice = m.lattice();
    let levels = (0..m.num_levels())
        .map(|h| {
            let small: Vec<usize> = lattice
                .subgroups_of(h)
                .into_iter()
                .filter(|&j| (lattice.order(j) as i64) < k)
                .collect();
            joint_kernel(m, h, &small)
        })
        .collect();
    let sub = SubMackey::new_unchecked(levels);
    debug_assert!(sub.is_closed(m));
    sub
}

/// `F_c M`: the subfunctor generated by every level `M(H)` with `|H| ≤ c`.
pub fn order_generated_filtration(m: &MackeyFunctor, c: Ratio<i64>) -> SubMackey {
    let lattice = m.lattice();
    let seeds = (0..m.num_levels())
        .map(|h| {
            if Ratio::from_integer(lattice.order(h) as i64) <= c {
                Matrix::identity(m.level(h).ngens()).row_vecs()
            } else {
                Vec::new()
            }
        })
        .collect();
    generate_from_rows(m, seeds).expect("seeds are level generators")
}

/// Elements of `M(H)` whose restriction to every proper subgroup vanishes.
pub fn reg_coh(m: &MackeyFunctor, h: usize) -> Result<AbSubgroup, MackeyError> {
    let lattice = m.lattice();
    if h >= lattice.len() {
        return Err(MackeyError::Shape(format!("no subgroup with id {h}")));
    }
    let proper: Vec<usize> = lattice
        .subgroups_of(h)
        .into_iter()
        .filter(|&j| j != h)
        .collect();
    Ok(joint_kernel(m, h, &proper))
}
