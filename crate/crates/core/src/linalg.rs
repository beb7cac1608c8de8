//! Exact linear algebra over ℚ.
//!
//! Ranks and determinants use fraction-free (Bareiss) elimination on
//! integer-scaled rows; kernels, solves and inverses use reduced row echelon
//! form. [`Echelon`] is an incremental sparse basis used for span closures.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rational::{lcm_denominators, Q};

pub type Mat = Vec<Vec<Q>>;
pub type SVec = BTreeMap<usize, Q>;

pub fn zeros(rows: usize, cols: usize) -> Mat {
    vec![vec![Q::zero(); cols]; rows]
}

pub fn identity(n: usize) -> Mat {
    let mut m = zeros(n, n);
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = Q::one();
    }
    m
}

pub fn mat_mul(a: &Mat, b: &Mat) -> Mat {
    let inner = b.len();
    let cols = if inner == 0 { 0 } else { b[0].len() };
    let mut out = zeros(a.len(), cols);
    for (i, row) in a.iter().enumerate() {
        for (k, x) in row.iter().enumerate().take(inner) {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b[k].iter().enumerate() {
                if !y.is_zero() {
                    out[i][j] += x * y;
                }
            }
        }
    }
    out
}

pub fn transpose(a: &Mat) -> Mat {
    if a.is_empty() {
        return Vec::new();
    }
    let mut out = zeros(a[0].len(), a.len());
    for (i, row) in a.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            out[j][i] = x.clone();
        }
    }
    out
}

pub fn trace(a: &Mat) -> Q {
    a.iter().enumerate().map(|(i, r)| r[i].clone()).sum()
}

pub fn is_zero_mat(a: &Mat) -> bool {
    a.iter().all(|r| r.iter().all(Zero::is_zero))
}

fn integer_rows(a: &Mat) -> (Vec<Vec<BigInt>>, Q) {
    // Each row is scaled by the lcm of its denominators; returns the product
    // of the scale factors so determinants can be unscaled.
    let mut scale = Q::one();
    let rows = a
        .iter()
        .map(|row| {
            let l = lcm_denominators(row.iter());
            scale *= Q::from_integer(l.clone());
            row.iter()
                .map(|x| x.numer() * (&l / x.denom()))
                .collect()
        })
        .collect();
    (rows, scale)
}

/// Bareiss elimination in place; returns (rank, sign of row swaps).
fn bareiss(m: &mut [Vec<BigInt>]) -> (usize, i32) {
    let rows = m.len();
    if rows == 0 {
        return (0, 1);
    }
    let cols = m[0].len();
    let mut prev = BigInt::one();
    let mut rank = 0;
    let mut sign = 1;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if p != rank {
            m.swap(p, rank);
            sign = -sign;
        }
        let (top, rest) = m.split_at_mut(rank + 1);
        let piv_row = &top[rank];
        for row in rest.iter_mut() {
            let factor = row[col].clone();
            for j in col..cols {
                let v = &row[j] * &piv_row[col] - &factor * &piv_row[j];
                row[j] = v / &prev;
            }
        }
        prev = m[rank][col].clone();
        rank += 1;
    }
    (rank, sign)
}

/// Exact rank (fraction-free).
pub fn rank(a: &Mat) -> usize {
    let (mut rows, _) = integer_rows(a);
    bareiss(&mut rows).0
}

/// Exact determinant of a square matrix (fraction-free).
pub fn determinant(a: &Mat) -> Q {
    let n = a.len();
    if n == 0 {
        return Q::one();
    }
    assert!(a.iter().all(|r| r.len() == n), "determinant of non-square matrix");
    let (mut rows, scale) = integer_rows(a);
    let (r, sign) = bareiss(&mut rows);
    if r < n {
        return Q::zero();
    }
    let d = Q::from_integer(rows[n - 1][n - 1].clone()) / scale;
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Reduced row echelon form; returns the pivot columns.
pub fn rref(a: &mut Mat) -> Vec<usize> {
    let rows = a.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = a[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(p, r);
        let inv = a[r][c].recip();
        for x in a[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let f = row[c].clone();
                for (x, y) in row.iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x -= &f * y;
                    }
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of {x : a·x = 0}.
pub fn nullspace(a: &Mat, cols: usize) -> Vec<Vec<Q>> {
    let mut m = a.clone();
    let pivots = rref(&mut m);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![Q::zero(); cols];
            v[fc] = Q::one();
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[i][fc].clone();
            }
            v
        })
        .collect()
}

/// Basis of {y : y·a = 0} (left kernel).
pub fn left_nullspace(a: &Mat) -> Vec<Vec<Q>> {
    let t = transpose(a);
    nullspace(&t, a.len())
}

/// Some solution of a·x = b, if one exists.
pub fn solve(a: &Mat, b: &[Q]) -> Option<Vec<Q>> {
    let cols = if a.is_empty() { 0 } else { a[0].len() };
    let mut aug: Mat = a
        .iter()
        .zip(b)
        .map(|(row, y)| {
            let mut r = row.clone();
            r.push(y.clone());
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![Q::zero(); cols];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][cols].clone();
    }
    Some(x)
}

pub fn inverse(a: &Mat) -> Option<Mat> {
    let n = a.len();
    let mut aug: Mat = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    let pivots = rref(&mut aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn to_sparse(v: &[Q]) -> SVec {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

pub fn to_dense(v: &SVec, n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (&i, x) in v {
        out[i] = x.clone();
    }
    out
}

/// `y += c·x` on sparse vectors.
pub fn axpy(y: &mut SVec, c: &Q, x: &SVec) {
    if c.is_zero() {
        return;
    }
    for (&i, v) in x {
        let e = y.entry(i).or_insert_with(Q::zero);
        *e += c * v;
        if e.is_zero() {
            y.remove(&i);
        }
    }
}

/// Incrementally built semi-echelon basis of a subspace of ℚⁿ.
///
/// Every stored row has a distinct pivot (its smallest column) normalized to 1,
/// so reduction can sweep columns in increasing order.
#[derive(Debug, Clone, Default)]
pub struct Echelon {
    rows: Vec<SVec>,
    pivots: BTreeMap<usize, usize>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SVec] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Remainder of `v` modulo the span.
    pub fn reduce(&self, v: &SVec) -> SVec {
        let mut v = v.clone();
        let mut cursor = 0usize;
        loop {
            let next = v
                .range(cursor..)
                .find(|(c, _)| self.pivots.contains_key(c))
                .map(|(c, x)| (*c, x.clone()));
            let Some((c, x)) = next else { break };
            let row = &self.rows[self.pivots[&c]];
            axpy(&mut v, &-x, row);
            cursor = c + 1;
        }
        v
    }

    /// Adds `v` to the span; returns true when the dimension grew.
    pub fn insert(&mut self, v: &SVec) -> bool {
        let r = self.reduce(v);
        self.insert_reduced(r).is_some()
    }

    /// Inserts an already reduced vector; returns its row index if nonzero.
    pub fn insert_reduced(&mut self, mut r: SVec) -> Option<usize> {
        let (&c, x) = r.iter().next()?;
        let inv = x.recip();
        for y in r.values_mut() {
            *y *= &inv;
        }
        self.rows.push(r);
        self.pivots.insert(c, self.rows.len() - 1);
        Some(self.rows.len() - 1)
    }

    pub fn contains(&self, v: &SVec) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn is_nonneg_integer(x: &Q) -> bool {
    x.is_integer() && !x.is_negative()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{q, qr};

    fn m(rows: &[&[i64]]) -> Mat {
        rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
    }

    #[test]
    fn rank_and_det_small() {
        let a = m(&[&[1, 2, 3], &[4, 5, 6], &[7, 8, 9]]);
        assert_eq!(rank(&a), 2);
        assert_eq!(determinant(&a), q(0));
        let b = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        assert_eq!(determinant(&b), q(6));
        let c = vec![vec![qr(1, 2), qr(1, 3)], vec![qr(1, 4), qr(1, 5)]];
        assert_eq!(determinant(&c), qr(1, 10) - qr(1, 12));
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let a = m(&[&[0, 1, 2], &[3, 0, 5], &[1, 4, 0]]);
        // cofactor expansion along the first row
        let d = -(q(3) * q(0) - q(5) * q(1)) * q(1) + (q(3) * q(4) - q(0) * q(1)) * q(2);
        assert_eq!(determinant(&a), d);
    }

    #[test]
    fn kernel_and_solve() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6]]);
        let ker = nullspace(&a, 3);
        assert_eq!(ker.len(), 2);
        for v in &ker {
            for row in &a {
                let s: Q = row.iter().zip(v).map(|(x, y)| x * y).sum();
                assert_eq!(s, q(0));
            }
        }
        let x = solve(&a, &[q(6), q(12)]).unwrap();
        assert_eq!(&a[0][0] * &x[0] + &a[0][1] * &x[1] + &a[0][2] * &x[2], q(6));
        assert!(solve(&a, &[q(1), q(1)]).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let b = m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]);
        let inv = inverse(&b).unwrap();
        assert_eq!(mat_mul(&b, &inv), identity(3));
        assert!(inverse(&m(&[&[1, 1], &[1, 1]])).is_none());
    }

    #[test]
    fn echelon_tracks_span() {
        let mut e = Echelon::new();
        assert!(e.insert(&to_sparse(&[q(1), q(1), q(0)])));
        assert!(e.insert(&to_sparse(&[q(0), q(1), q(1)])));
        assert!(!e.insert(&to_sparse(&[q(1), q(2), q(1)])));
        assert!(e.contains(&to_sparse(&[q(2), q(1), q(-1)])));
        assert_eq!(e.dim(), 2);
    }
}
