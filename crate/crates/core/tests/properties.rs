use num_bigint::BigInt;
use num_integer::Integer;
use proptest::prelude::*;

use slicekit::abelian::{
    quotient, subgroup_from_rows, AbHom, FgAbGroup, InvariantFactors, JsonInt, Matrix,
};

fn det(m: &[Vec<i64>]) -> i64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        n => (0..n)
            .map(|j| {
                let minor: Vec<Vec<i64>> = m[1..]
                    .iter()
                    .map(|r| {
                        r.iter()
                            .enumerate()
                            .filter(|&(c, _)| c != j)
                            .map(|(_, &x)| x)
                            .collect()
                    })
                    .collect();
                let sign = if j % 2 == 0 { 1 } else { -1 };
                sign * m[0][j] * det(&minor)
            })
            .sum(),
    }
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    if n < k {
        return vec![];
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

/// Invariant factors from determinantal divisors: `d_k` is the gcd of the
/// `k × k` minors, and the factors are the ratios `d_k / d_{k−1}`.
fn determinantal_invariants(rows: &[Vec<i64>], cols: usize) -> InvariantFactors {
    let mut previous = 1i64;
    let mut torsion = Vec::new();
    let mut rank = 0;
    for k in 1..=rows.len().min(cols) {
        let mut g = 0i64;
        for rs in subsets(rows.len(), k) {
            for cs in subsets(cols, k) {
                let minor: Vec<Vec<i64>> = rs
                    .iter()
                    .map(|&r| cs.iter().map(|&c| rows[r][c]).collect())
                    .collect();
                g = g.gcd(&det(&minor));
            }
        }
        if g == 0 {
            break;
        }
        rank = k;
        let factor = g / previous;
        if factor > 1 {
            torsion.push(JsonInt(BigInt::from(factor)));
        }
        previous = g;
    }
    InvariantFactors {
        free_rank: cols - rank,
        torsion,
    }
}

fn matrix(rows: &[Vec<i64>], cols: usize) -> Matrix {
    let flat: Vec<i64> = rows.iter().flatten().copied().collect();
    Matrix::from_i64(rows.len(), cols, &flat)
}

fn small_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = (Vec<Vec<i64>>, usize)> {
    (0..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
        (
            prop::collection::vec(prop::collection::vec(-6i64..=6, c), r),
            Just(c),
        )
    })
}

/// A product of elementary operations: a random unimodular matrix.
fn unimodular(n: usize, ops: &[(usize, usize, i64, bool)]) -> Vec<Vec<i64>> {
    let mut u: Vec<Vec<i64>> = (0..n)
        .map(|i| (0..n).map(|j| i64::from(i == j)).collect())
        .collect();
    for &(a, b, c, swap) in ops.iter().filter(|_| n > 0) {
        let (a, b) = (a % n, b % n);
        if swap {
            u.swap(a, b);
        } else if a != b {
            let source = u[b].clone();
            for (x, y) in u[a].iter_mut().zip(source) {
                *x += c * y;
            }
        }
    }
    u
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>], inner: usize, cols: usize) -> Vec<Vec<i64>> {
    a.iter()
        .map(|r| {
            (0..cols)
                .map(|j| (0..inner).map(|k| r[k] * b[k][j]).sum())
                .collect()
        })
        .collect()
}

fn ops() -> impl Strategy<Value = Vec<(usize, usize, i64, bool)>> {
    prop::collection::vec((0usize..4, 0usize..4, -2i64..=2, any::<bool>()), 0..8)
}

proptest! {
    #[test]
    fn invariant_factors_match_determinantal_divisors((rows, cols) in small_matrix(4, 4)) {
        let a = FgAbGroup::new(cols, matrix(&rows, cols)).unwrap();
        prop_assert_eq!(a.invariant_factors(), &determinantal_invariants(&rows, cols));
    }

    #[test]
    fn invariants_survive_a_unimodular_change(
        (rows, cols) in small_matrix(4, 4),
        row_ops in ops(),
        col_ops in ops(),
    ) {
        let u = unimodular(rows.len(), &row_ops);
        let v = unimodular(cols, &col_ops);
        let changed = mul(&mul(&u, &rows, rows.len(), cols), &v, cols, cols);
        let a = FgAbGroup::new(cols, matrix(&rows, cols)).unwrap();
        let b = FgAbGroup::new(cols, matrix(&changed, cols)).unwrap();
        prop_assert_eq!(a.invariant_factors(), b.invariant_factors());
    }

    #[test]
    fn rank_nullity((rows, cols) in small_matrix(4, 4)) {
        let source = FgAbGroup::free(rows.len());
        let target = FgAbGroup::free(cols);
        let f = AbHom::new(source, target, matrix(&rows, cols)).unwrap();
        let k = f.kernel().group().invariant_factors().clone();
        let i = f.image().group().invariant_factors().clone();
        prop_assert!(k.torsion.is_empty() && i.torsion.is_empty());
        prop_assert_eq!(k.free_rank + i.free_rank, rows.len());
        let coker = quotient(f.image().inclusion()).unwrap().group;
        prop_assert_eq!(coker.invariant_factors(), &determinantal_invariants(&rows, cols));
    }

    #[test]
    fn quotient_orders_multiply(
        moduli in prop::collection::vec(2u64..=6, 1..=3),
        gens in prop::collection::vec(prop::collection::vec(0i64..6, 3), 0..3),
    ) {
        let n = moduli.len();
        let relations: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { moduli[i] as i64 } else { 0 }).collect())
            .collect();
        let a = FgAbGroup::new(n, matrix(&relations, n)).unwrap();
        let rows: Vec<Vec<i64>> = gens.iter().map(|g| g[..n].to_vec()).collect();
        let s = subgroup_from_rows(&a, &matrix(&rows, n));
        let q = quotient(s.inclusion()).unwrap();
        let total = a.order().unwrap();
        prop_assert_eq!(total, s.group().order().unwrap() * q.group.order().unwrap());
        // the projection kills exactly S
        prop_assert!(q.projection.kernel().same_as(&s));
        prop_assert!(q.projection.image().is_everything());
    }
}
