//! Dense matrices of exact rationals.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};
use serde::{de, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};

/// Dense row-major matrix over the rationals.
///
/// `0 x 0` matrices (and `r x 0`, `0 x c`) are legal and behave as the
/// empty linear maps.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl QMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(QMatrix {
            rows,
            cols,
            entries,
        })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        QMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::scalar(n, Rational::one())
    }

    pub fn scalar(n: usize, c: Rational) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = c.clone();
        }
        m
    }

    pub fn diag(values: &[Rational]) -> Self {
        let mut m = Self::zeros(values.len(), values.len());
        for (i, v) in values.iter().enumerate() {
            m[(i, i)] = v.clone();
        }
        m
    }

    /// Upper triangular Jordan block `J_size(eigenvalue)`.
    pub fn jordan_block(eigenvalue: &Rational, size: usize) -> Self {
        let mut m = Self::scalar(size, eigenvalue.clone());
        for i in 1..size {
            m[(i - 1, i)] = Rational::one();
        }
        m
    }

    pub fn block_diag(blocks: &[QMatrix]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut m = Self::zeros(rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m[(r0 + i, c0 + j)] = b[(i, j)].clone();
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if let Some(bad) = rows.iter().position(|row| row.len() != c) {
            return Err(Error::DimensionMismatch(format!(
                "row {bad} has {} entries, expected {c}",
                rows[bad].len()
            )));
        }
        Self::new(r, c, rows.into_iter().flatten().collect())
    }

    /// Convenience constructor from integer rows. Panics on ragged input.
    pub fn from_ints<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.as_ref().iter().map(|&x| rational::int(x)).collect())
                .collect(),
        )
        .expect("ragged integer rows")
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            assert_eq!(col.len(), rows, "column {j} has the wrong length");
            for (i, x) in col.iter().enumerate() {
                m[(i, j)] = x.clone();
            }
        }
        m
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

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    /// Keeps the columns listed in `indices`, in that order.
    pub fn select_columns(&self, indices: &[usize]) -> Self {
        let mut m = Self::zeros(self.rows, indices.len());
        for i in 0..self.rows {
            for (k, &j) in indices.iter().enumerate() {
                m[(i, k)] = self[(i, j)].clone();
            }
        }
        m
    }

    /// Keeps the first `count` rows.
    pub fn top_rows(&self, count: usize) -> Self {
        QMatrix {
            rows: count,
            cols: self.cols,
            entries: self.entries[..count * self.cols].to_vec(),
        }
    }

    /// `[self | other]`.
    pub fn hstack(&self, other: &QMatrix) -> Result<Self> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "hstack of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)].clone();
            }
            for j in 0..other.cols {
                m[(i, self.cols + j)] = other[(i, j)].clone();
            }
        }
        Ok(m)
    }

    pub fn transpose(&self) -> Self {
        let mut m = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(j, i)] = self[(i, j)].clone();
            }
        }
        m
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let x = &self[(i, j)];
                    if i == j {
                        x.is_one()
                    } else {
                        x.is_zero()
                    }
                })
            })
    }

    /// True for `c * I`, including the empty matrix.
    pub fn is_scalar(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        if self.rows == 0 {
            return true;
        }
        *self == Self::scalar(self.rows, self[(0, 0)].clone())
    }

    pub fn checked_mul(&self, rhs: &QMatrix) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut m = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        m.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(m)
    }

    fn zip_with(&self, rhs: &QMatrix, op: &str, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch(format!(
                "{op} of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, rhs: &QMatrix) -> Result<Self> {
        self.zip_with(rhs, "sum", |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &QMatrix) -> Result<Self> {
        self.zip_with(rhs, "difference", |a, b| a - b)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        QMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| x * c).collect(),
        }
    }

    /// `self - c I` for a square matrix.
    pub fn minus_scalar(&self, c: &Rational) -> Self {
        assert!(self.is_square(), "minus_scalar on a non-square matrix");
        let mut m = self.clone();
        for i in 0..self.rows {
            m[(i, i)] -= c;
        }
        m
    }

    /// `self - I`.
    pub fn minus_identity(&self) -> Self {
        self.minus_scalar(&Rational::one())
    }

    /// `self + I`.
    pub fn plus_identity(&self) -> Self {
        self.minus_scalar(&-Rational::one())
    }

    pub fn pow(&self, exp: usize) -> Self {
        assert!(self.is_square(), "pow on a non-square matrix");
        let mut result = Self::identity(self.rows);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Gauss-Jordan inverse; `None` for singular or non-square input.
    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = Self::identity(n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[(r, col)].is_zero())?;
            a.swap_rows(col, pivot);
            inv.swap_rows(col, pivot);
            let p = a[(col, col)].recip();
            a.scale_row(col, &p);
            inv.scale_row(col, &p);
            for r in 0..n {
                if r != col && !a[(r, col)].is_zero() {
                    let f = a[(r, col)].clone();
                    a.add_row_multiple(r, col, &-f.clone());
                    inv.add_row_multiple(r, col, &-f);
                }
            }
        }
        Some(inv)
    }

    /// `P A P^{-1}`. Panics when `p` is singular.
    pub fn conjugate_by(&self, p: &QMatrix) -> Self {
        let p_inv = p.inverse().expect("conjugating matrix must be invertible");
        &(p * self) * &p_inv
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn scale_row(&mut self, r: usize, c: &Rational) {
        for j in 0..self.cols {
            let x = &mut self.entries[r * self.cols + j];
            if !x.is_zero() {
                *x *= c;
            }
        }
    }

    /// `row[target] += c * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: &Rational) {
        for j in 0..self.cols {
            let s = &self.entries[source * self.cols + j];
            if !s.is_zero() {
                let delta = s * c;
                self.entries[target * self.cols + j] += delta;
            }
        }
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(rational::format).collect())
            .collect()
    }

    /// Reinterprets a deserialized matrix with known shape; needed because
    /// `[]` cannot carry a column count.
    pub fn reshape_empty(self, rows: usize, cols: usize) -> Result<Self> {
        if self.rows == rows && self.cols == cols {
            return Ok(self);
        }
        if rows * cols == 0 && self.entries.is_empty() {
            return Ok(Self::zeros(rows, cols));
        }
        Err(Error::DimensionMismatch(format!(
            "expected {rows}x{cols} matrix, found {}x{}",
            self.rows, self.cols
        )))
    }
}

impl std::ops::Index<(usize, usize)> for QMatrix {
    type Output = Rational;

    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &self.entries[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for QMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.entries[i * self.cols + j]
    }
}

impl Mul for &QMatrix {
    type Output = QMatrix;

    fn mul(self, rhs: &QMatrix) -> QMatrix {
        self.checked_mul(rhs).unwrap()
    }
}

impl Add for &QMatrix {
    type Output = QMatrix;

    fn add(self, rhs: &QMatrix) -> QMatrix {
        self.checked_add(rhs).unwrap()
    }
}

impl Sub for &QMatrix {
    type Output = QMatrix;

    fn sub(self, rhs: &QMatrix) -> QMatrix {
        self.checked_sub(rhs).unwrap()
    }
}

impl Neg for &QMatrix {
    type Output = QMatrix;

    fn neg(self) -> QMatrix {
        self.scale(&-Rational::one())
    }
}

impl fmt::Debug for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QMatrix{}x{}{:?}", self.rows, self.cols, self.to_string_rows())
    }
}

impl fmt::Display for QMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells = self.to_string_rows();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(0);
        if self.rows == 0 {
            return write!(f, "[] ({}x{})", self.rows, self.cols);
        }
        for (i, row) in cells.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{c:>width$}")?;
            }
            write!(f, "]")?;
        }
        Ok(())
    }
}

// Matrices travel as nested row-major arrays of rational strings.
impl Serialize for QMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_string_rows().serialize(s)
    }
}

impl<'de> Deserialize<'de> for QMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw: Vec<Vec<rational::serde_str::Repr>> = Vec::deserialize(d)?;
        let rows = raw
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .map(|x| x.into_rational())
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()
            .map_err(de::Error::custom)?;
        QMatrix::from_rows(rows).map_err(de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::frac;

    #[test]
    fn inverse_and_products() {
        let a = QMatrix::from_ints(&[[2, 1], [1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(inv, QMatrix::from_ints(&[[1, -1], [-1, 2]]));
        assert!((&a * &inv).is_identity());
        assert!(QMatrix::from_ints(&[[1, 2], [2, 4]]).inverse().is_none());
        assert!(QMatrix::identity(0).inverse().unwrap().is_identity());
    }

    #[test]
    fn shape_errors() {
        let a = QMatrix::zeros(2, 3);
        assert!(a.checked_mul(&a).is_err());
        assert!(a.checked_add(&QMatrix::zeros(3, 2)).is_err());
        assert!(QMatrix::new(2, 2, vec![]).is_err());
        assert!(QMatrix::from_rows(vec![vec![frac(1, 1)], vec![]]).is_err());
    }

    #[test]
    fn jordan_and_block_diag() {
        let j = QMatrix::jordan_block(&frac(1, 1), 2);
        assert_eq!(j, QMatrix::from_ints(&[[1, 1], [0, 1]]));
        let b = QMatrix::block_diag(&[j.clone(), QMatrix::identity(0), QMatrix::from_ints(&[[5]])]);
        assert_eq!(b, QMatrix::from_ints(&[[1, 1, 0], [0, 1, 0], [0, 0, 5]]));
        assert_eq!(j.pow(3), QMatrix::from_ints(&[[1, 3], [0, 1]]));
        assert!(j.pow(0).is_identity());
    }

    #[test]
    fn json_format() {
        let m = QMatrix::from_rows(vec![vec![frac(-5, 18), frac(2, 1)]]).unwrap();
        let s = serde_json::to_string(&m).unwrap();
        assert_eq!(s, r#"[["-5/18","2"]]"#);
        let back: QMatrix = serde_json::from_str(&s).unwrap();
        assert_eq!(back, m);
        let ints: QMatrix = serde_json::from_str("[[1, \"1/2\"], [0, 3]]").unwrap();
        assert_eq!(ints[(0, 1)], frac(1, 2));
        let empty: QMatrix = serde_json::from_str("[]").unwrap();
        assert_eq!((empty.rows(), empty.cols()), (0, 0));
        assert!(serde_json::from_str::<QMatrix>("[[1],[1,2]]").is_err());
    }
}
