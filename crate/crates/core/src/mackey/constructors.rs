use std::collections::{BTreeMap, HashMap, VecDeque};
use std::sync::Arc;

use num_bigint::BigInt;

use crate::abelian::{hermite_rows, smith_normal_form, AbHom, FgAbGroup, Matrix, Smith};
use crate::group::SubgroupLattice;

use super::{MackeyError, MackeyFunctor};

/// The Burnside Mackey functor: level `H` is free on the `H`-conjugacy
/// classes of subgroups `K ⊆ H` (the basis element `[H/K]`), restriction
/// restricts finite `H`-sets, transfer induces, conjugation relabels.
///
/// Basis elements of a level are ordered by decreasing subgroup id of the
/// class representative, so `[H/H]` comes first and `[H/e]` last.
pub fn burnside_mackey(lattice: &Arc<SubgroupLattice>) -> MackeyFunctor {
    let n = lattice.len();
    let group = lattice.group();

    let mut basis: Vec<Vec<usize>> = Vec::with_capacity(n);
    let mut position: Vec<HashMap<usize, usize>> = Vec::with_capacity(n);
    for h in 0..n {
        let mut classes = lattice.classes_within(h);
        classes.sort_by(|a, b| b[0].cmp(&a[0]));
        let mut pos = HashMap::new();
        for (i, class) in classes.iter().enumerate() {
            for &k in class {
                pos.insert(k, i);
            }
        }
        basis.push(classes.iter().map(|c| c[0]).collect());
        position.push(pos);
    }
    let levels: Vec<FgAbGroup> = basis.iter().map(|b| FgAbGroup::free(b.len())).collect();

    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for h in 0..n {
        for l in lattice.subgroups_of(h) {
            // res^H_L [H/K] = Σ_{LxK ⊆ H} [L / (L ∩ xKx⁻¹)]
            let mut r = Matrix::zeros(basis[h].len(), basis[l].len());
            for (i, &k) in basis[h].iter().enumerate() {
                for dc in lattice.double_cosets(h, l, k).expect("L, K ⊆ H") {
                    let stab = lattice.intersection(l, lattice.conjugate(dc.representative, k));
                    r[(i, position[l][&stab])] += 1;
                }
            }
            res.insert(
                (h, l),
                AbHom::new_unchecked(levels[h].clone(), levels[l].clone(), r).unwrap(),
            );

            // tr^H_L [L/K] = [H/K]
            let mut t = Matrix::zeros(basis[l].len(), basis[h].len());
            for (i, &k) in basis[l].iter().enumerate() {
                t[(i, position[h][&k])] = BigInt::from(1);
            }
            tr.insert(
                (h, l),
                AbHom::new_unchecked(levels[l].clone(), levels[h].clone(), t).unwrap(),
            );
        }
    }

    let mut conj = Vec::with_capacity(group.order() * n);
    for g in 0..group.order() {
        for h in 0..n {
            let gh = lattice.conjugate(g, h);
            let mut c = Matrix::zeros(basis[h].len(), basis[gh].len());
            for (i, &k) in basis[h].iter().enumerate() {
                c[(i, position[gh][&lattice.conjugate(g, k)])] = BigInt::from(1);
            }
            conj.push(AbHom::new_unchecked(levels[h].clone(), levels[gh].clone(), c).unwrap());
        }
    }

    MackeyFunctor::from_parts(lattice.clone(), levels, res, tr, conj)
        .expect("Burnside tables are complete")
}

/// Every level `A`, restriction and conjugation the identity, transfer
/// `tr^H_K` multiplication by the index `[H:K]`.
pub fn constant_mackey(lattice: &Arc<SubgroupLattice>, a: &FgAbGroup) -> MackeyFunctor {
    let n = lattice.len();
    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for h in 0..n {
        for k in lattice.subgroups_of(h) {
            res.insert((h, k), AbHom::identity(a));
            tr.insert(
                (h, k),
                AbHom::scalar(a, &BigInt::from(lattice.index_in(k, h))),
            );
        }
    }
    let conj = vec![AbHom::identity(a); lattice.group().order() * n];
    MackeyFunctor::from_parts(lattice.clone(), vec![a.clone(); n], res, tr, conj)
        .expect("constant tables are complete")
}

/// Extends matrices for the group generators to a representation of every
/// element, rejecting input that is not an action.
///
/// Matrices act on column vectors: generator `s` sends `v` to `A_s v`.
pub fn extend_action(
    lattice: &SubgroupLattice,
    action: &[Matrix],
) -> Result<Vec<Matrix>, MackeyError> {
    let group = lattice.group();
    let gens = group.generator_indices();
    if action.len() != gens.len() {
        return Err(MackeyError::InvalidAction(format!(
            "{} matrices for {} generators",
            action.len(),
            gens.len()
        )));
    }
    let m = action.first().map_or(0, Matrix::rows);
    for a in action {
        if a.shape() != (m, m) {
            return Err(MackeyError::InvalidAction(
                "action matrices must be square and of equal size".into(),
            ));
        }
    }

    let mut rho: Vec<Option<Matrix>> = vec![None; group.order()];
    rho[0] = Some(Matrix::identity(m));
    let mut queue = VecDeque::from([0usize]);
    while let Some(x) = queue.pop_front() {
        let rx = rho[x].clone().unwrap();
        for (&s, a) in gens.iter().zip(action) {
            let y = group.mul(s, x);
            let ry = a.mul(&rx);
            match &rho[y] {
                None => {
                    rho[y] = Some(ry);
                    queue.push_back(y);
                }
                Some(existing) if *existing != ry => {
                    return Err(MackeyError::InvalidAction(format!(
                        "matrices violate a group relation at element {}",
                        group.element(y)
                    )));
                }
                Some(_) => {}
            }
        }
    }
    Ok(rho
        .into_iter()
        .map(|r| r.expect("generators reach every element"))
        .collect())
}

/// The fixed-point Mackey functor of a `G`-lattice `Z^m`: level `H` is the
/// fixed sublattice `(Z^m)^H`, restriction is inclusion, transfer sums over
/// coset representatives, conjugation applies the group element.
///
/// Fixed sublattices are stored on their Hermite-normal-form bases, so level
/// `{e}` uses the standard basis.
pub fn fixed_point_mackey(
    lattice: &Arc<SubgroupLattice>,
    action: &[Matrix],
) -> Result<MackeyFunctor, MackeyError> {
    let rho = extend_action(lattice, action)?;
    let group = lattice.group();
    let n = lattice.len();
    let m = rho[0].rows();
    // right action on row vectors: x ↦ x · ρ(g)ᵀ
    let right: Vec<Matrix> = rho.iter().map(Matrix::transpose).collect();

    let mut bases: Vec<Matrix> = Vec::with_capacity(n);
    for h in 0..n {
        let mut stacked = Matrix::zeros(m, 0);
        for g in group.small_generating_set(lattice.subgroup(h)) {
            stacked = stacked.hstack(&right[g].sub(&Matrix::identity(m)));
        }
        let null = smith_normal_form(&stacked).left_nullspace();
        bases.push(hermite_rows(&null));
    }
    let solvers: Vec<Smith> = bases.iter().map(smith_normal_form).collect();
    let levels: Vec<FgAbGroup> = bases.iter().map(|b| FgAbGroup::free(b.rows())).collect();

    let express = |rows: &Matrix, h: usize| -> Matrix {
        let out = (0..rows.rows())
            .map(|i| {
                solvers[h]
                    .solve_left(rows.row(i))
                    .expect("vector is fixed by the target subgroup")
            })
            .collect();
        Matrix::from_rows(out, bases[h].rows()).unwrap()
    };

    let mut res = BTreeMap::new();
    let mut tr = BTreeMap::new();
    for h in 0..n {
        for k in lattice.subgroups_of(h) {
            let r = express(&bases[h], k);
            res.insert(
                (h, k),
                AbHom::new_unchecked(levels[h].clone(), levels[k].clone(), r)?,
            );

            let cosets = group.left_cosets(lattice.subgroup(h), lattice.subgroup(k));
            let mut norm = Matrix::zeros(m, m);
            for c in &cosets {
                norm = norm.add(&right[c[0]]);
            }
            let t = express(&bases[k].mul(&norm), h);
            tr.insert(
                (h, k),
                AbHom::new_unchecked(levels[k].clone(), levels[h].clone(), t)?,
            );
        }
    }

    let mut conj = Vec::with_capacity(group.order() * n);
    for (g, act) in right.iter().enumerate() {
        for h in 0..n {
            let gh = lattice.conjugate(g, h);
            let c = express(&bases[h].mul(act), gh);
            conj.push(AbHom::new_unchecked(
                levels[h].clone(),
                levels[gh].clone(),
                c,
            )?);
        }
    }

    MackeyFunctor::from_parts(lattice.clone(), levels, res, tr, conj)
}

/// `Z` with each generator acting by the sign of its permutation.
pub fn sign_action(lattice: &SubgroupLattice) -> Vec<Matrix> {
    lattice
        .group()
        .generators()
        .iter()
        .map(|p| Matrix::from_i64(1, 1, &[p.sign()]))
        .collect()
}

/// `Z[G]` with `G` permuting the basis by left multiplication.
pub fn regular_action(lattice: &SubgroupLattice) -> Vec<Matrix> {
    let group = lattice.group();
    let n = group.order();
    group
        .generator_indices()
        .into_iter()
        .map(|s| {
            let mut a = Matrix::zeros(n, n);
            for x in 0..n {
                a[(group.mul(s, x), x)] = BigInt::from(1);
            }
            a
        })
        .collect()
}

/// `Z^degree` with `G` permuting the coordinates.
pub fn permutation_action(lattice: &SubgroupLattice) -> Vec<Matrix> {
    let group = lattice.group();
    let d = group.degree();
    group
        .generators()
        .iter()
        .map(|p| {
            let mut a = Matrix::zeros(d, d);
            for i in 0..d {
                a[(p.apply(i), i)] = BigInt::from(1);
            }
            a
        })
        .collect()
}

/// Named functors: `burnside`, `constant-Z`, `constant-Z/<n>`, `sign`,
/// `regular`, `permutation`.
pub fn preset_mackey(
    lattice: &Arc<SubgroupLattice>,
    name: &str,
) -> Result<MackeyFunctor, MackeyError> {
    match name {
        "burnside" => Ok(burnside_mackey(lattice)),
        "constant-Z" => Ok(constant_mackey(lattice, &FgAbGroup::free(1))),
        "sign" => fixed_point_mackey(lattice, &sign_action(lattice)),
        "regular" => fixed_point_mackey(lattice, &regular_action(lattice)),
        "permutation" => fixed_point_mackey(lattice, &permutation_action(lattice)),
        _ => {
            let modulus = name
                .strip_prefix("constant-Z/")
                .and_then(|d| d.parse::<u64>().ok())
                .filter(|&d| d > 0)
                .ok_or_else(|| MackeyError::UnknownPreset(name.to_string()))?;
            Ok(constant_mackey(lattice, &FgAbGroup::cyclic(modulus)))
        }
    }
}

/// Presets every front end accepts, in display order.
pub const MACKEY_PRESETS: &[&str] = &[
    "burnside",
    "constant-Z",
    "constant-Z/2",
    "sign",
    "regular",
    "permutation",
];
