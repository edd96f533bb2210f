//! Dense integer matrices and the Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from rows of small integers. All rows must share a length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        Self::from_rows_with_cols(rows, cols)
    }

    /// Like [`IntMatrix::from_rows`] but with an explicit column count, so that
    /// `0 x n` matrices can be expressed.
    pub fn from_rows_with_cols<T: Into<BigInt> + Clone>(rows: &[Vec<T>], cols: usize) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for (i, row) in rows.iter().enumerate() {
            if row.len() != cols {
                return Err(Error::Dimension(format!(
                    "row {i} has {} entries, expected {cols}",
                    row.len()
                )));
            }
            data.extend(row.iter().cloned().map(Into::into));
        }
        Ok(IntMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// Entries as `i64`, if they all fit.
    pub fn to_i64_rows(&self) -> Option<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(ToPrimitive::to_i64).collect())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> Result<IntMatrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * &other[(k, j)];
                }
            }
        }
        Ok(out)
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.rows).all(|i| (0..self.cols).all(|j| i == j || self[(i, j)].is_zero()))
    }

    /// Determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a[(i, k)].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (&a[(i, j)] * &a[(k, k)] - &a[(i, k)] * &a[(k, j)]) / &prev;
                    a[(i, j)] = v;
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        Ok(sign * &a[(n - 1, n - 1)])
    }

    /// Rank over the rationals by exact Gaussian elimination.
    pub fn rank_over_rationals(&self) -> usize {
        let mut a: Vec<Vec<BigRational>> = (0..self.rows)
            .map(|i| self.row(i).iter().cloned().map(BigRational::from_integer).collect())
            .collect();
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(rank, p);
            let pivot = a[rank][col].clone();
            for i in rank + 1..self.rows {
                if a[i][col].is_zero() {
                    continue;
                }
                let f = &a[i][col] / &pivot;
                for j in col..self.cols {
                    let v = &a[rank][j] * &f;
                    a[i][j] -= v;
                }
            }
            rank += 1;
        }
        rank
    }

    /// Rank over the prime field `Z/p`. The caller guarantees `p` is prime.
    pub fn rank_mod_prime(&self, p: u64) -> usize {
        let pb = BigInt::from(p);
        let mut a: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.mod_floor(&pb).to_u64().expect("reduced below p"))
                    .collect()
            })
            .collect();
        let p128 = p as u128;
        let mut rank = 0;
        for col in 0..self.cols {
            let Some(piv) = (rank..self.rows).find(|&i| a[i][col] != 0) else {
                continue;
            };
            a.swap(rank, piv);
            let inv = mod_inverse(a[rank][col], p).expect("nonzero mod prime");
            for i in rank + 1..self.rows {
                if a[i][col] == 0 {
                    continue;
                }
                let f = (a[i][col] as u128 * inv as u128 % p128) as u64;
                for j in col..self.cols {
                    let sub = (f as u128 * a[rank][j] as u128 % p128) as u64;
                    a[i][j] = (a[i][j] + p - sub) % p;
                }
            }
            rank += 1;
        }
        rank
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= factor * row[source]
    pub(crate) fn sub_row_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(source, j)] * factor;
            self[(target, j)] -= v;
        }
    }

    /// col[target] -= factor * col[source]
    pub(crate) fn sub_col_multiple(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, source)] * factor;
            self[(i, target)] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -&self[(i, j)];
            self[(i, j)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{:?}", self.to_rows())
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Result of a Smith normal form computation, `U * A * V = D`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverse of `v`, maintained alongside it.
    pub v_inverse: IntMatrix,
    /// The `min(rows, cols)` diagonal entries of `d`: nonnegative, each dividing the next,
    /// zeros last.
    pub divisors: Vec<BigInt>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.iter().filter(|d| !d.is_zero()).count()
    }
}

/// Smith normal form with unimodular transforms.
///
/// Pivoting always takes the nonzero entry of least absolute value in the
/// remaining block, ties broken by lowest `(row, col)`, so the output is
/// deterministic.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let mut work = SnfWork::new(a, true);
    work.run();
    work.finish()
}

/// Diagonal of the Smith normal form only; skips the transform bookkeeping.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<BigInt> {
    let mut work = SnfWork::new(a, false);
    work.run();
    work.divisors()
}

struct SnfWork {
    d: IntMatrix,
    transforms: Option<(IntMatrix, IntMatrix, IntMatrix)>,
}

impl SnfWork {
    fn new(a: &IntMatrix, track: bool) -> Self {
        let transforms = track.then(|| {
            (
                IntMatrix::identity(a.rows),
                IntMatrix::identity(a.cols),
                IntMatrix::identity(a.cols),
            )
        });
        SnfWork {
            d: a.clone(),
            transforms,
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        self.d.swap_rows(a, b);
        if let Some((u, _, _)) = &mut self.transforms {
            u.swap_rows(a, b);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        self.d.swap_cols(a, b);
        if let Some((_, v, vinv)) = &mut self.transforms {
            v.swap_cols(a, b);
            vinv.swap_rows(a, b);
        }
    }

    fn row_op(&mut self, target: usize, source: usize, q: &BigInt) {
        self.d.sub_row_multiple(target, source, q);
        if let Some((u, _, _)) = &mut self.transforms {
            u.sub_row_multiple(target, source, q);
        }
    }

    fn col_op(&mut self, target: usize, source: usize, q: &BigInt) {
        self.d.sub_col_multiple(target, source, q);
        if let Some((_, v, vinv)) = &mut self.transforms {
            v.sub_col_multiple(target, source, q);
            // V' = V (I - q e_s e_t^T), so V'^{-1} = (I + q e_s e_t^T) V^{-1}.
            vinv.sub_row_multiple(source, target, &-q);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.d.negate_row(i);
        if let Some((u, _, _)) = &mut self.transforms {
            u.negate_row(i);
        }
    }

    fn pivot(&self, s: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in s..self.d.rows {
            for j in s..self.d.cols {
                let x = &self.d[(i, j)];
                if x.is_zero() {
                    continue;
                }
                match best {
                    Some((bi, bj)) if self.d[(bi, bj)].abs() <= x.abs() => {}
                    _ => best = Some((i, j)),
                }
            }
        }
        best
    }

    fn run(&mut self) {
        let n = self.d.rows.min(self.d.cols);
        let mut s = 0;
        while s < n {
            let Some((pi, pj)) = self.pivot(s) else {
                break;
            };
            self.swap_rows(s, pi);
            self.swap_cols(s, pj);
            let p = self.d[(s, s)].clone();
            let mut dirty = false;
            for i in s + 1..self.d.rows {
                let x = &self.d[(i, s)];
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                self.row_op(i, s, &q);
                dirty |= !self.d[(i, s)].is_zero();
            }
            for j in s + 1..self.d.cols {
                let x = &self.d[(s, j)];
                if x.is_zero() {
                    continue;
                }
                let q = x.div_floor(&p);
                self.col_op(j, s, &q);
                dirty |= !self.d[(s, j)].is_zero();
            }
            if dirty {
                continue;
            }
            let offender = (s + 1..self.d.rows).find(|&i| {
                (s + 1..self.d.cols).any(|j| !self.d[(i, j)].is_multiple_of(&p))
            });
            if let Some(i) = offender {
                // Pull the offending row into the pivot row; the next pass
                // produces a remainder smaller than the pivot.
                self.row_op(s, i, &BigInt::from(-1));
                continue;
            }
            if p.is_negative() {
                self.negate_row(s);
            }
            s += 1;
        }
    }

    fn divisors(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)].clone()).collect()
    }

    fn finish(self) -> SnfResult {
        let divisors = self.divisors();
        let (u, v, v_inverse) = self.transforms.expect("transforms tracked");
        SnfResult {
            d: self.d,
            u,
            v,
            v_inverse,
            divisors,
        }
    }
}

/// Row-style Hermite normal form of a matrix with independent rows, together
/// with the unimodular `W` such that `W * A = H`.
pub fn hermite_normal_form(a: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = a.clone();
    let mut w = IntMatrix::identity(a.rows);
    let mut r = 0;
    for col in 0..h.cols {
        if r == h.rows {
            break;
        }
        loop {
            // Euclid down the column.
            let pivot = (r..h.rows)
                .filter(|&i| !h[(i, col)].is_zero())
                .min_by(|&x, &y| h[(x, col)].abs().cmp(&h[(y, col)].abs()).then(x.cmp(&y)));
            let Some(p) = pivot else {
                break;
            };
            h.swap_rows(r, p);
            w.swap_rows(r, p);
            let mut done = true;
            for i in r + 1..h.rows {
                if h[(i, col)].is_zero() {
                    continue;
                }
                let q = h[(i, col)].div_floor(&h[(r, col)]);
                h.sub_row_multiple(i, r, &q);
                w.sub_row_multiple(i, r, &q);
                done &= h[(i, col)].is_zero();
            }
            if done {
                break;
            }
        }
        if h[(r, col)].is_zero() {
            continue;
        }
        if h[(r, col)].is_negative() {
            h.negate_row(r);
            w.negate_row(r);
        }
        for i in 0..r {
            let q = h[(i, col)].div_floor(&h[(r, col)]);
            h.sub_row_multiple(i, r, &q);
            w.sub_row_multiple(i, r, &q);
        }
        r += 1;
    }
    (h, w)
}

pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    if e.gcd != 1 {
        return None;
    }
    Some(e.x.rem_euclid(m as i128) as u64)
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn check_snf(a: &IntMatrix) -> SnfResult {
        let r = smith_normal_form(a);
        assert_eq!(r.u.mul(a).unwrap().mul(&r.v).unwrap(), r.d);
        assert!(r.d.is_diagonal());
        assert_eq!(r.u.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(r.v.determinant().unwrap().abs(), BigInt::one());
        assert_eq!(r.v.mul(&r.v_inverse).unwrap(), IntMatrix::identity(a.cols()));
        for w in r.divisors.windows(2) {
            assert!(!w[0].is_negative());
            if w[0].is_zero() {
                assert!(w[1].is_zero());
            } else {
                assert!(w[1].is_multiple_of(&w[0]));
            }
        }
        r
    }

    #[test]
    fn snf_identity() {
        let r = check_snf(&IntMatrix::identity(2));
        assert_eq!(r.d, IntMatrix::identity(2));
    }

    #[test]
    fn snf_diag_2_3() {
        let r = check_snf(&m(&[vec![2, 0], vec![0, 3]]));
        assert_eq!(r.d, m(&[vec![1, 0], vec![0, 6]]));
    }

    #[test]
    fn snf_empty() {
        let a = IntMatrix::zeros(0, 2);
        let r = check_snf(&a);
        assert_eq!(r.d.rows(), 0);
        assert_eq!(r.rank(), 0);
        assert!(r.divisors.is_empty());
    }

    #[test]
    fn elementary_divisors_match_full() {
        let a = m(&[vec![4, 6, 2], vec![8, 2, 0], vec![0, 0, 6]]);
        assert_eq!(elementary_divisors(&a), smith_normal_form(&a).divisors);
    }

    #[test]
    fn determinant_small() {
        assert_eq!(m(&[vec![2, 1], vec![1, 1]]).determinant().unwrap(), BigInt::one());
        assert_eq!(
            m(&[vec![0, 1, 2], vec![1, 0, 3], vec![4, -3, 8]]).determinant().unwrap(),
            BigInt::from(-2)
        );
        assert!(IntMatrix::zeros(2, 3).determinant().is_err());
    }

    #[test]
    fn hnf_small() {
        let a = m(&[vec![2, 4, 6], vec![1, 1, 1]]);
        let (h, w) = hermite_normal_form(&a);
        assert_eq!(w.mul(&a).unwrap(), h);
        assert_eq!(h, m(&[vec![1, 1, 1], vec![0, 2, 4]]));
        assert_eq!(w.determinant().unwrap().abs(), BigInt::one());
    }

    #[test]
    fn mod_p_rank() {
        assert_eq!(m(&[vec![3]]).rank_mod_prime(3), 0);
        assert_eq!(m(&[vec![3]]).rank_mod_prime(2), 1);
    }

    fn small_matrix() -> impl Strategy<Value = IntMatrix> {
        (0usize..=6, 0usize..=6).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(-6i64..=6, c), r)
                .prop_map(move |rows| IntMatrix::from_rows_with_cols(&rows, c).unwrap())
        })
    }

    proptest! {
        #[test]
        fn snf_reconstructs(a in small_matrix()) {
            check_snf(&a);
        }

        #[test]
        fn snf_rank_matches_rational_rank(a in small_matrix()) {
            prop_assert_eq!(smith_normal_form(&a).rank(), a.rank_over_rationals());
        }
    }
}
