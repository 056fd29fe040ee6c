//! Smith and Hermite normal forms over a Euclidean ring of integers.

use crate::matrix::Matrix;
use crate::scalar::EuclideanInt;

/// Result of [`smith_normal_form`]: `left · M · right = diagonal`.
#[derive(Clone, Debug, PartialEq)]
pub struct SmithForm<I: EuclideanInt> {
    pub left: Matrix<I>,
    pub diagonal: Matrix<I>,
    pub right: Matrix<I>,
}

impl<I: EuclideanInt> SmithForm<I> {
    /// Diagonal entries `d_1 | d_2 | ...`, including trailing zeros.
    pub fn invariant_factors(&self) -> Vec<I> {
        let n = self.diagonal.rows().min(self.diagonal.cols());
        (0..n).map(|i| self.diagonal[(i, i)].clone()).collect()
    }
}

/// Smith normal form with unimodular transforms. The diagonal is
/// nonnegative and each entry divides the next.
pub fn smith_normal_form<I: EuclideanInt>(m: &Matrix<I>) -> SmithForm<I> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut d = m.clone();
    let mut u = Matrix::<I>::identity(rows);
    let mut v = Matrix::<I>::identity(cols);

    for t in 0..rows.min(cols) {
        // Smallest nonzero entry of the trailing block becomes the pivot.
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if d[(i, j)].is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| d[(i, j)].abs() < d[(bi, bj)].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        d.swap_rows(t, pi);
        u.swap_rows(t, pi);
        d.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..rows {
                if d[(i, t)].is_zero() {
                    continue;
                }
                let (p, q, r, s) = elimination(&d[(t, t)], &d[(i, t)]);
                combine_rows(&mut d, t, i, &p, &q, &r, &s);
                combine_rows(&mut u, t, i, &p, &q, &r, &s);
            }
            for j in t + 1..cols {
                if d[(t, j)].is_zero() {
                    continue;
                }
                let (p, q, r, s) = elimination(&d[(t, t)], &d[(t, j)]);
                combine_cols(&mut d, t, j, &p, &q, &r, &s);
                combine_cols(&mut v, t, j, &p, &q, &r, &s);
            }
            let row_clear = (t + 1..rows).all(|i| d[(i, t)].is_zero());
            let col_clear = (t + 1..cols).all(|j| d[(t, j)].is_zero());
            if !(row_clear && col_clear) {
                continue;
            }
            // Divisibility: fold an offending row into the pivot row.
            let offender = (t + 1..rows)
                .find(|&i| (t + 1..cols).any(|j| !d[(i, j)].is_multiple_of(&d[(t, t)])));
            match offender {
                Some(i) => {
                    let one = I::one();
                    d.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if d[(t, t)].is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { left: u, diagonal: d, right: v }
}

/// Unimodular `[[p, q], [r, s]]` sending `(a, b)` to `(gcd, 0)`. When `a`
/// already divides `b` it is a plain elimination step, which keeps the
/// transforms small.
fn elimination<I: EuclideanInt>(a: &I, b: &I) -> (I, I, I, I) {
    if !a.is_zero() && b.is_multiple_of(a) {
        return (I::one(), I::zero(), -(b.clone() / a.clone()), I::one());
    }
    let e = a.extended_gcd(b);
    (e.x, e.y, -(b.clone() / e.gcd.clone()), a.clone() / e.gcd)
}

/// Rows `(i, j) ← (p·row_i + q·row_j, r·row_i + s·row_j)`.
fn combine_rows<I: EuclideanInt>(m: &mut Matrix<I>, i: usize, j: usize, p: &I, q: &I, r: &I, s: &I) {
    for c in 0..m.cols() {
        let (x, y) = (m[(i, c)].clone(), m[(j, c)].clone());
        m[(i, c)] = p.clone() * x.clone() + q.clone() * y.clone();
        m[(j, c)] = r.clone() * x + s.clone() * y;
    }
}

/// Columns `(i, j) ← (p·col_i + q·col_j, r·col_i + s·col_j)`.
fn combine_cols<I: EuclideanInt>(m: &mut Matrix<I>, i: usize, j: usize, p: &I, q: &I, r: &I, s: &I) {
    for k in 0..m.rows() {
        let (x, y) = (m[(k, i)].clone(), m[(k, j)].clone());
        m[(k, i)] = p.clone() * x.clone() + q.clone() * y.clone();
        m[(k, j)] = r.clone() * x + s.clone() * y;
    }
}

/// Row-style Hermite normal form of the lattice spanned by the rows of `m`.
///
/// Returns only the nonzero rows. Pivots are positive and every entry above a
/// pivot lies in `[0, pivot)`, so the result depends only on the row lattice.
pub fn hermite_normal_form<I: EuclideanInt>(m: &Matrix<I>) -> Matrix<I> {
    let (rows, cols) = (m.rows(), m.cols());
    let mut h = m.clone();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let pivot = (r..rows)
                .filter(|&i| !h[(i, c)].is_zero())
                .min_by(|&a, &b| h[(a, c)].abs().cmp(&h[(b, c)].abs()));
            let Some(p) = pivot else { break };
            h.swap_rows(r, p);
            let mut clear = true;
            for i in r + 1..rows {
                if h[(i, c)].is_zero() {
                    continue;
                }
                let q = -h[(i, c)].div_floor(&h[(r, c)]);
                h.add_row_multiple(i, r, &q);
                if !h[(i, c)].is_zero() {
                    clear = false;
                }
            }
            if clear {
                break;
            }
        }
        if h[(r, c)].is_zero() {
            continue;
        }
        if h[(r, c)].is_negative() {
            h.negate_row(r);
        }
        for i in 0..r {
            let q = -h[(i, c)].div_floor(&h[(r, c)]);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &q);
            }
        }
        r += 1;
    }
    Matrix::from_rows(cols, h.row_vecs().into_iter().take(r).collect())
}

/// Greatest common divisor of a list, nonnegative; zero for an empty or all-zero list.
pub fn gcd_all<I: EuclideanInt>(xs: &[I]) -> I {
    xs.iter().fold(I::zero(), |g, x| g.gcd(x))
}

#[cfg(test)]
pub(crate) fn is_unimodular<I: EuclideanInt>(m: &Matrix<I>) -> bool {
    m.is_square() && m.det().abs().is_one()
}
