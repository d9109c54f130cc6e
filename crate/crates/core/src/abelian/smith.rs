use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Matrix;

/// `U · A · V = D` with `U`, `V` unimodular and `D` diagonal,
/// `d_1 | d_2 | … | d_r`, all `d_i > 0`.
#[derive(Clone, Debug)]
pub struct Smith {
    pub u: Matrix,
    pub u_inv: Matrix,
    pub v: Matrix,
    pub v_inv: Matrix,
    pub d: Matrix,
    /// The nonzero diagonal entries, in order.
    pub diagonal: Vec<BigInt>,
}

impl Smith {
    pub fn rank(&self) -> usize {
        self.diagonal.len()
    }

    /// Solves `w · A = y` over the integers, if possible.
    pub fn solve_left(&self, y: &[BigInt]) -> Option<Vec<BigInt>> {
        let (m, n) = self.d.shape();
        assert_eq!(y.len(), n, "right-hand side length");
        let yv = self.v.apply_row(y);
        let r = self.rank();
        if yv[r..].iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut z = vec![BigInt::zero(); m];
        for i in 0..r {
            let (q, rem) = yv[i].div_rem(&self.diagonal[i]);
            if !rem.is_zero() {
                return None;
            }
            z[i] = q;
        }
        Some(self.u.apply_row(&z))
    }

    /// Basis of `{ w : w · A = 0 }`, one vector per row.
    pub fn left_nullspace(&self) -> Matrix {
        let idx: Vec<usize> = (self.rank()..self.u.rows()).collect();
        self.u.select_rows(&idx)
    }
}

struct Work {
    d: Matrix,
    u: Matrix,
    u_inv: Matrix,
    v: Matrix,
    v_inv: Matrix,
}

impl Work {
    fn add_row(&mut self, target: usize, source: usize, c: &BigInt) {
        self.d.add_row_multiple(target, source, c);
        self.u.add_row_multiple(target, source, c);
        self.u_inv.add_col_multiple(source, target, &-c);
    }

    fn add_col(&mut self, target: usize, source: usize, c: &BigInt) {
        self.d.add_col_multiple(target, source, c);
        self.v.add_col_multiple(target, source, c);
        self.v_inv.add_row_multiple(source, target, &-c);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

fn min_abs_nonzero(d: &Matrix, t: usize) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for i in t..d.rows() {
        for j in t..d.cols() {
            let x = &d[(i, j)];
            if x.is_zero() {
                continue;
            }
            let a = x.abs();
            if best.as_ref().is_none_or(|(_, b)| a < *b) {
                best = Some(((i, j), a));
            }
        }
    }
    best.map(|(pos, _)| pos)
}

pub fn smith_normal_form(a: &Matrix) -> Smith {
    let (m, n) = a.shape();
    let mut w = Work {
        d: a.clone(),
        u: Matrix::identity(m),
        u_inv: Matrix::identity(m),
        v: Matrix::identity(n),
        v_inv: Matrix::identity(n),
    };

    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_nonzero(&w.d, t) else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);

        loop {
            let pivot = w.d[(t, t)].clone();
            let mut dirty = false;
            for i in t + 1..m {
                if !w.d[(i, t)].is_zero() {
                    let q = &w.d[(i, t)] / &pivot;
                    w.add_row(i, t, &-q);
                    dirty |= !w.d[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.d[(t, j)].is_zero() {
                    let q = &w.d[(t, j)] / &pivot;
                    w.add_col(j, t, &-q);
                    dirty |= !w.d[(t, j)].is_zero();
                }
            }

            if dirty {
                // A remainder is strictly smaller than the pivot; move it in.
                let mut best: Option<(bool, usize, BigInt)> = None;
                for i in t + 1..m {
                    let x = w.d[(i, t)].abs();
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                        best = Some((true, i, x));
                    }
                }
                for j in t + 1..n {
                    let x = w.d[(t, j)].abs();
                    if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.2) {
                        best = Some((false, j, x));
                    }
                }
                match best {
                    Some((true, i, _)) => w.swap_rows(t, i),
                    Some((false, j, _)) => w.swap_cols(t, j),
                    None => unreachable!("dirty implies a nonzero remainder"),
                }
                continue;
            }

            let bad_row =
                (t + 1..m).find(|&i| (t + 1..n).any(|j| !w.d[(i, j)].is_multiple_of(&pivot)));
            match bad_row {
                Some(i) => w.add_row(t, i, &BigInt::from(1)),
                None => break,
            }
        }

        if w.d[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }

    let diagonal = (0..t).map(|i| w.d[(i, i)].clone()).collect();
    Smith {
        u: w.u,
        u_inv: w.u_inv,
        v: w.v,
        v_inv: w.v_inv,
        d: w.d,
        diagonal,
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `a`;
/// zero rows are dropped, pivots are positive and entries above a pivot are
/// reduced into `[0, pivot)`.
pub fn hermite_rows(a: &Matrix) -> Matrix {
    let mut h = a.clone();
    let (m, n) = h.shape();
    let mut r = 0;
    for c in 0..n {
        if r == m {
            break;
        }
        loop {
            let mut best: Option<(usize, BigInt)> = None;
            for i in r..m {
                let x = h[(i, c)].abs();
                if !x.is_zero() && best.as_ref().is_none_or(|b| x < b.1) {
                    best = Some((i, x));
                }
            }
            let Some((i, _)) = best else { break };
            h.swap_rows(r, i);
            let pivot = h[(r, c)].clone();
            let mut clean = true;
            for i in r + 1..m {
                if !h[(i, c)].is_zero() {
                    let q = &h[(i, c)] / &pivot;
                    h.add_row_multiple(i, r, &-q);
                    clean &= h[(i, c)].is_zero();
                }
            }
            if clean {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        let pivot = h[(r, c)].clone();
        for i in 0..r {
            let q = h[(i, c)].div_floor(&pivot);
            h.add_row_multiple(i, r, &-q);
        }
        r += 1;
    }
    h.select_rows(&(0..r).collect::<Vec<_>>())
}
