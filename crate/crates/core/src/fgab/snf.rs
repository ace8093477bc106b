//! Smith normal form over the integers and the linear solver built on it.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::IntMatrix;

/// Result of [`smith_normal_form`]: `u · a · v = s`, with the inverses of the
/// two unimodular transforms kept alongside.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub u: IntMatrix,
    pub u_inv: IntMatrix,
    pub s: IntMatrix,
    pub v: IntMatrix,
    pub v_inv: IntMatrix,
    /// Number of nonzero diagonal entries.
    pub rank: usize,
}

impl SmithForm {
    /// Diagonal entries `s[i][i]` for `i < min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows().min(self.s.cols())).map(|i| self.s[(i, i)].clone()).collect()
    }
}

struct Work {
    s: IntMatrix,
    u: IntMatrix,
    u_inv: IntMatrix,
    v: IntMatrix,
    v_inv: IntMatrix,
}

impl Work {
    // row[dst] += q row[src]
    fn row_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.add_row_multiple(dst, src, q);
        self.u.add_row_multiple(dst, src, q);
        self.u_inv.add_col_multiple(src, dst, &-q);
    }

    // col[dst] += q col[src]
    fn col_add(&mut self, dst: usize, src: usize, q: &BigInt) {
        self.s.add_col_multiple(dst, src, q);
        self.v.add_col_multiple(dst, src, q);
        self.v_inv.add_row_multiple(src, dst, &-q);
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.s.swap_rows(a, b);
        self.u.swap_rows(a, b);
        self.u_inv.swap_cols(a, b);
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.s.swap_cols(a, b);
        self.v.swap_cols(a, b);
        self.v_inv.swap_rows(a, b);
    }

    fn negate_row(&mut self, i: usize) {
        self.s.negate_row(i);
        self.u.negate_row(i);
        self.u_inv.negate_col(i);
    }
}

/// Quotient rounded to the nearest integer, so the remainder is at most half
/// of `|b|` in absolute value.
fn nearest_quotient(a: &BigInt, b: &BigInt) -> BigInt {
    let (mut q, r) = a.div_mod_floor(b);
    if (&r * 2u32).abs() > b.abs() {
        q += 1;
    }
    q
}

/// Computes unimodular `u`, `v` with `u · a · v = s`, where `s` is diagonal,
/// nonnegative, and each diagonal entry divides the next.
///
/// Pivots are chosen as the nonzero entry of least absolute value.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        s: a.clone(),
        u: IntMatrix::identity(m),
        u_inv: IntMatrix::identity(m),
        v: IntMatrix::identity(n),
        v_inv: IntMatrix::identity(n),
    };
    let mut t = 0;
    while t < m.min(n) {
        let Some((pi, pj)) = min_abs_entry(&w.s, (t..m).flat_map(|i| (t..n).map(move |j| (i, j))))
        else {
            break;
        };
        w.swap_rows(t, pi);
        w.swap_cols(t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..m {
                if !w.s[(i, t)].is_zero() {
                    let q = nearest_quotient(&w.s[(i, t)], &w.s[(t, t)]);
                    w.row_add(i, t, &-q);
                    clean &= w.s[(i, t)].is_zero();
                }
            }
            for j in t + 1..n {
                if !w.s[(t, j)].is_zero() {
                    let q = nearest_quotient(&w.s[(t, j)], &w.s[(t, t)]);
                    w.col_add(j, t, &-q);
                    clean &= w.s[(t, j)].is_zero();
                }
            }
            if !clean {
                let cross = std::iter::once((t, t))
                    .chain((t + 1..m).map(|i| (i, t)))
                    .chain((t + 1..n).map(|j| (t, j)));
                let (pi, pj) = min_abs_entry(&w.s, cross).expect("pivot row is nonzero");
                w.swap_rows(t, pi);
                w.swap_cols(t, pj);
                continue;
            }
            let pivot = w.s[(t, t)].clone();
            let offender = (t + 1..m)
                .find(|&i| (t + 1..n).any(|j| !w.s[(i, j)].is_multiple_of(&pivot)));
            match offender {
                Some(i) => w.row_add(t, i, &BigInt::one()),
                None => break,
            }
        }
        if w.s[(t, t)].is_negative() {
            w.negate_row(t);
        }
        t += 1;
    }
    let rank = (0..m.min(n)).take_while(|&i| !w.s[(i, i)].is_zero()).count();
    SmithForm { u: w.u, u_inv: w.u_inv, s: w.s, v: w.v, v_inv: w.v_inv, rank }
}

fn min_abs_entry(
    s: &IntMatrix,
    cells: impl Iterator<Item = (usize, usize)>,
) -> Option<(usize, usize)> {
    let mut best: Option<((usize, usize), BigInt)> = None;
    for (i, j) in cells {
        let x = &s[(i, j)];
        if x.is_zero() {
            continue;
        }
        let ax = x.abs();
        if best.as_ref().is_none_or(|(_, b)| ax < *b) {
            let one = ax.is_one();
            best = Some(((i, j), ax));
            if one {
                break;
            }
        }
    }
    best.map(|(p, _)| p)
}

/// Solver for integer linear systems `a · z = b`, reusing one Smith form
/// for many right-hand sides.
#[derive(Clone, Debug)]
pub struct LinearSolver {
    snf: SmithForm,
}

impl LinearSolver {
    pub fn new(a: &IntMatrix) -> Self {
        Self { snf: smith_normal_form(a) }
    }

    pub fn rows(&self) -> usize {
        self.snf.s.rows()
    }

    pub fn cols(&self) -> usize {
        self.snf.s.cols()
    }

    /// One integer solution of `a · z = b`, if any exists.
    pub fn solve(&self, b: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(b.len(), self.rows(), "right-hand side has wrong length");
        let y = self.snf.u.mul_vec(b);
        let mut w = vec![BigInt::zero(); self.cols()];
        for (i, yi) in y.iter().enumerate() {
            if i < self.snf.rank {
                let (q, r) = yi.div_rem(&self.snf.s[(i, i)]);
                if !r.is_zero() {
                    return None;
                }
                w[i] = q;
            } else if !yi.is_zero() {
                return None;
            }
        }
        Some(self.snf.v.mul_vec(&w))
    }

    /// Basis of the integer kernel of `a`, as columns.
    pub fn kernel_basis(&self) -> IntMatrix {
        let idx: Vec<usize> = (self.snf.rank..self.cols()).collect();
        self.snf.v.select_cols(&idx)
    }

    pub fn smith(&self) -> &SmithForm {
        &self.snf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithForm {
        let f = smith_normal_form(a);
        assert_eq!(f.u.mul(a).mul(&f.v), f.s);
        assert_eq!(f.u.mul(&f.u_inv), IntMatrix::identity(a.rows()));
        assert_eq!(f.v.mul(&f.v_inv), IntMatrix::identity(a.cols()));
        f
    }

    #[test]
    fn identity_is_fixed() {
        let i3 = IntMatrix::identity(3);
        let f = check(&i3);
        assert_eq!(f.s, i3);
        assert_eq!(f.u, i3);
        assert_eq!(f.v, i3);
    }

    #[test]
    fn two_by_two() {
        let f = check(&IntMatrix::from_i64(2, 2, &[2, 4, 6, 8]));
        assert_eq!(f.diagonal(), vec![BigInt::from(2), BigInt::from(4)]);
    }

    #[test]
    fn zero_and_empty() {
        let z = IntMatrix::zeros(2, 3);
        let f = check(&z);
        assert_eq!(f.s, z);
        assert_eq!(f.u, IntMatrix::identity(2));
        assert_eq!(f.v, IntMatrix::identity(3));
        assert_eq!(f.rank, 0);
        let e = IntMatrix::zeros(0, 4);
        assert_eq!(check(&e).rank, 0);
        assert_eq!(check(&IntMatrix::zeros(3, 0)).rank, 0);
    }

    #[test]
    fn solve_and_kernel() {
        let a = IntMatrix::from_i64(1, 2, &[4, 6]);
        let s = LinearSolver::new(&a);
        let z = s.solve(&[BigInt::from(2)]).unwrap();
        assert_eq!(a.mul_vec(&z), vec![BigInt::from(2)]);
        assert!(s.solve(&[BigInt::from(3)]).is_none());
        let k = s.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).is_zero());
    }
}
