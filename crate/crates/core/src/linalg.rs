//! Exact dense linear algebra over the rationals.
//!
//! Ranks are computed by fraction-free (Bareiss) elimination on an integer
//! copy of the matrix, so every intermediate value is an exact minor and no
//! division ever leaves the integers.

use std::fmt;
use std::ops::{Add, Mul, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `"num/den"` or `"num"`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(Rational::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(Rational::from_integer),
    }
}

/// Canonical rendering: `num/den`, with the denominator omitted when it is 1.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Dense row-major matrix of rationals. Zero-row and zero-column shapes are valid.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, entries: vec![Rational::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Shape("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Matrix { rows: n, cols, entries: rows.into_iter().flatten().collect() })
    }

    /// Convenience constructor from small integers; panics on ragged input.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect())
            .expect("ragged integer matrix")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    /// Vertical concatenation; all inputs must share a column count.
    pub fn vstack(ms: &[Matrix]) -> Result<Matrix> {
        let Some(first) = ms.first() else {
            return Ok(Matrix::zeros(0, 0));
        };
        let cols = first.cols;
        if let Some(bad) = ms.iter().find(|m| m.cols != cols) {
            return Err(Error::Shape(format!(
                "cannot stack a matrix with {} columns under one with {cols}",
                bad.cols
            )));
        }
        let rows = ms.iter().map(|m| m.rows).sum();
        let entries = ms.iter().flat_map(|m| m.entries.iter().cloned()).collect();
        Ok(Matrix { rows, cols, entries })
    }

    /// `self · rhs`; errors on incompatible shapes.
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "cannot add {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let entries = self.entries.iter().zip(&rhs.entries).map(|(a, b)| a + b).collect();
        Ok(Matrix { rows: self.rows, cols: self.cols, entries })
    }

    pub fn scale_row(&mut self, i: usize, c: &Rational) {
        for x in &mut self.entries[i * self.cols..(i + 1) * self.cols] {
            *x = &*x * c;
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.entries.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// Integer copy with each row scaled by the lcm of its denominators.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect()
            })
            .collect()
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

impl Add for &Matrix {
    type Output = Matrix;
    fn add(self, rhs: &Matrix) -> Matrix {
        Matrix::add(self, rhs).expect("shape mismatch in matrix addition")
    }
}

impl Mul for &Matrix {
    type Output = Matrix;
    fn mul(self, rhs: &Matrix) -> Matrix {
        Matrix::mul(self, rhs).expect("shape mismatch in matrix product")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(format_rational).collect();
            write!(f, "[{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Rank over the rationals by fraction-free elimination.
pub fn rank(m: &Matrix) -> usize {
    if m.rows == 0 || m.cols == 0 {
        return 0;
    }
    let mut a = m.integer_rows();
    let (rows, cols) = (m.rows, m.cols);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // smallest nonzero pivot keeps the minors short
        let pivot = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()));
        let Some(p) = pivot else { continue };
        a.swap(r, p);
        let (head, tail) = a.split_at_mut(r + 1);
        let prow = &head[r];
        for row in tail.iter_mut() {
            for j in c + 1..cols {
                let v = &row[j] * &prow[c] - &row[c] * &prow[j];
                // exact by Sylvester's identity
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = prow[c].clone();
        r += 1;
    }
    r
}

pub fn nullity(m: &Matrix) -> usize {
    m.cols - rank(m)
}

/// Dimension of the common kernel of matrices sharing a column count.
pub fn stacked_nullity(ms: &[Matrix]) -> Result<usize> {
    match ms {
        [] => Err(Error::Shape("stacked_nullity needs at least one matrix".into())),
        _ => Matrix::vstack(ms).map(|s| nullity(&s)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// Textbook Gauss-Jordan over `Rational`, used only as an oracle.
    fn naive_rank(m: &Matrix) -> usize {
        let mut a = m.clone();
        let mut r = 0;
        for c in 0..a.cols() {
            let Some(p) = (r..a.rows()).find(|&i| !a[(i, c)].is_zero()) else { continue };
            a.swap_rows(r, p);
            let inv = a[(r, c)].recip();
            a.scale_row(r, &inv);
            for i in 0..a.rows() {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    for j in 0..a.cols() {
                        let v = &a[(r, j)] * &f;
                        a[(i, j)] -= v;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&Matrix::identity(3)), 3);
        assert_eq!(rank(&Matrix::zeros(2, 2)), 0);
        assert_eq!(rank(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
        assert_eq!(rank(&Matrix::zeros(0, 4)), 0);
        assert_eq!(rank(&Matrix::zeros(4, 0)), 0);
    }

    #[test]
    fn nullity_examples() {
        assert_eq!(nullity(&Matrix::identity(3)), 0);
        assert_eq!(nullity(&Matrix::zeros(2, 3)), 3);
        assert_eq!(nullity(&Matrix::from_i64(&[&[1, 2], &[2, 4]])), 1);
    }

    #[test]
    fn stacked_nullity_examples() {
        let id = Matrix::identity(2);
        assert_eq!(stacked_nullity(&[id, Matrix::zeros(2, 2)]).unwrap(), 0);
        assert_eq!(stacked_nullity(&[Matrix::zeros(1, 3), Matrix::zeros(2, 3)]).unwrap(), 3);
        let a = Matrix::from_i64(&[&[1, 0]]);
        let b = Matrix::from_i64(&[&[0, 1]]);
        assert_eq!(stacked_nullity(&[a, b]).unwrap(), 0);
    }

    #[test]
    fn stacked_nullity_rejects_mismatched_columns() {
        let err = stacked_nullity(&[Matrix::zeros(1, 2), Matrix::zeros(1, 3)]);
        assert!(matches!(err, Err(Error::Shape(_))));
    }

    #[test]
    fn rational_entries() {
        let half = Rational::new(1.into(), 2.into());
        let third = Rational::new(1.into(), 3.into());
        let m = Matrix::from_rows(vec![
            vec![half.clone(), third.clone()],
            vec![&half * rat(3), &third * rat(3)],
        ])
        .unwrap();
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn rational_round_trip_text() {
        for s in ["0", "-3", "7/2", "-1/4"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/2").unwrap()), "2");
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("x").is_none());
    }

    fn small_matrix() -> impl Strategy<Value = Matrix> {
        (0usize..6, 0usize..6).prop_flat_map(|(r, c)| {
            prop::collection::vec(-4i64..=4, r * c).prop_map(move |v| {
                let rows = (0..r).map(|i| v[i * c..(i + 1) * c].iter().map(|&x| rat(x)).collect()).collect();
                let mut m = Matrix::from_rows(rows).unwrap();
                if r == 0 {
                    m = Matrix::zeros(0, c);
                }
                m
            })
        })
    }

    proptest! {
        #[test]
        fn rank_matches_naive_oracle(m in small_matrix()) {
            prop_assert_eq!(rank(&m), naive_rank(&m));
        }

        #[test]
        fn rank_of_transpose(m in small_matrix()) {
            prop_assert_eq!(rank(&m), rank(&m.transpose()));
            prop_assert!(rank(&m) <= m.rows().min(m.cols()));
        }

        #[test]
        fn rank_nullity(m in small_matrix()) {
            prop_assert_eq!(rank(&m) + nullity(&m), m.cols());
            prop_assert_eq!(stacked_nullity(std::slice::from_ref(&m)).unwrap(), nullity(&m));
        }

        #[test]
        fn rank_invariant_under_row_ops(m in small_matrix(), num in 1i64..7, den in 1i64..7, neg in any::<bool>()) {
            prop_assume!(m.rows() >= 2 && m.cols() >= 2);
            let mut p = m.clone();
            p.swap_rows(0, m.rows() - 1);
            p.swap_cols(0, m.cols() - 1);
            let c = Rational::new(BigInt::from(if neg { -num } else { num }), BigInt::from(den));
            p.scale_row(0, &c);
            prop_assert_eq!(rank(&p), rank(&m));
        }
    }
}
