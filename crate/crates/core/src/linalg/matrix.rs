//! Dense rational matrices: fraction-free rank, reduced row echelon form,
//! kernels, determinants and inverses.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::rational::{format_rational, int, Rational};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RatMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::ShapeMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Rational::one();
        }
        m
    }

    /// Builds from row vectors; all rows must share a length. An empty list gives 0x0.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::ShapeMismatch("ragged rows".into()));
        }
        Ok(RatMatrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|row| row.iter().map(|&v| int(v)).collect())
                .collect(),
        )
        .expect("rectangular integer literal")
    }

    pub fn column(values: Vec<Rational>) -> Self {
        RatMatrix {
            rows: values.len(),
            cols: 1,
            entries: values,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn col(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
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

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
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
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Result<Self> {
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// `self + t * other` for a scalar `t`.
    pub fn add_scaled(&self, other: &Self, t: &Rational) -> Result<Self> {
        self.zip_with(other, |a, b| a + b * t)
    }

    /// Horizontal concatenation `[M_1, M_2, ...]`.
    pub fn hcat(blocks: &[RatMatrix]) -> Result<Self> {
        let rows = blocks.first().map_or(0, |b| b.rows);
        if blocks.iter().any(|b| b.rows != rows) {
            return Err(Error::ShapeMismatch("hcat row counts differ".into()));
        }
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(rows, cols);
        let mut off = 0;
        for b in blocks {
            for i in 0..rows {
                for j in 0..b.cols {
                    out[(i, off + j)] = b[(i, j)].clone();
                }
            }
            off += b.cols;
        }
        Ok(out)
    }

    /// Vertical concatenation.
    pub fn vcat(blocks: &[RatMatrix]) -> Result<Self> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        if blocks.iter().any(|b| b.cols != cols) {
            return Err(Error::ShapeMismatch("vcat column counts differ".into()));
        }
        let rows = blocks.iter().map(|b| b.rows).sum();
        let entries = blocks.iter().flat_map(|b| b.entries.iter().cloned()).collect();
        Ok(RatMatrix { rows, cols, entries })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let mut out = Self::zeros(rows.len(), cols.len());
        for (a, &i) in rows.iter().enumerate() {
            for (b, &j) in cols.iter().enumerate() {
                out[(a, b)] = self[(i, j)].clone();
            }
        }
        out
    }

    /// Each row scaled by the lcm of its denominators: an integer matrix with
    /// the same row space.
    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
                row.iter()
                    .map(|c| (c * Rational::from_integer(lcm.clone())).to_integer())
                    .collect()
            })
            .collect()
    }

    /// Exact rank over Q by fraction-free (Bareiss) elimination.
    pub fn rank(&self) -> usize {
        let mut a = self.integer_rows();
        bareiss_echelon(&mut a, self.cols).0
    }

    /// Determinant by Bareiss elimination on the integer-scaled rows.
    pub fn det(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(Rational::one());
        }
        let mut scale = BigInt::one();
        for i in 0..n {
            scale *= self.row(i).iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        }
        let mut a = self.integer_rows();
        let (rank, sign, last) = bareiss_echelon(&mut a, n);
        if rank < n {
            return Ok(Rational::zero());
        }
        Ok(Rational::new(last * BigInt::from(sign), scale))
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let (r, pivots, _) = self.rref_with_transform();
        (r, pivots)
    }

    /// RREF together with an invertible `E` (rows x rows) with `E * self = rref`.
    pub fn rref_with_transform(&self) -> (RatMatrix, Vec<usize>, RatMatrix) {
        let mut a = self.clone();
        let mut e = Self::identity(self.rows);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[(i, c)].is_zero()) else {
                continue;
            };
            a.swap_rows(r, p);
            e.swap_rows(r, p);
            let inv = a[(r, c)].recip();
            a.scale_row(r, &inv);
            e.scale_row(r, &inv);
            for i in 0..self.rows {
                if i != r && !a[(i, c)].is_zero() {
                    let f = a[(i, c)].clone();
                    a.sub_row_multiple(i, r, &f);
                    e.sub_row_multiple(i, r, &f);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots, e)
    }

    /// Basis of the right kernel as column vectors; `cols - rank` of them.
    pub fn nullspace(&self) -> Vec<RatMatrix> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rational::zero(); self.cols];
                v[f] = Rational::one();
                for (row, &pc) in pivots.iter().enumerate() {
                    v[pc] = -r[(row, f)].clone();
                }
                RatMatrix::column(v)
            })
            .collect()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::ShapeMismatch(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let (_, pivots, e) = self.rref_with_transform();
        if pivots.len() < self.rows {
            return Err(Error::Singular(format!("rank {} < {}", pivots.len(), self.rows)));
        }
        Ok(e)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    pub fn is_skew(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (i..self.cols).all(|j| self[(i, j)] == -self[(j, i)].clone())
            })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn scale_row(&mut self, i: usize, c: &Rational) {
        for j in 0..self.cols {
            self[(i, j)] *= c;
        }
    }

    /// row_i -= f * row_src
    fn sub_row_multiple(&mut self, i: usize, src: usize, f: &Rational) {
        for j in 0..self.cols {
            let v = &self[(src, j)] * f;
            self[(i, j)] -= v;
        }
    }
}

/// In-place fraction-free elimination to row echelon form.
/// Returns (rank, sign of the row permutation, last pivot). For a
/// nonsingular square input the last pivot is the determinant.
fn bareiss_echelon(a: &mut [Vec<BigInt>], cols: usize) -> (usize, i64, BigInt) {
    let rows = a.len();
    let mut prev = BigInt::one();
    let mut sign = 1i64;
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        if p != r {
            a.swap(r, p);
            sign = -sign;
        }
        let (head, tail) = a.split_at_mut(r + 1);
        let pivot_row = &head[r];
        for row in tail.iter_mut() {
            let lead = row[c].clone();
            for j in (c + 1)..cols {
                let v = &pivot_row[c] * &row[j] - &lead * &pivot_row[j];
                debug_assert!((&v % &prev).is_zero(), "Bareiss division must be exact");
                row[j] = v / &prev;
            }
            row[c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
    }
    (r, sign, prev)
}

impl Index<(usize, usize)> for RatMatrix {
    type Output = Rational;
    fn index(&self, (i, j): (usize, usize)) -> &Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for RatMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Rational {
        assert!(i < self.rows && j < self.cols, "matrix index out of bounds");
        &mut self.entries[i * self.cols + j]
    }
}

impl fmt::Display for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<Vec<String>> = (0..self.rows)
            .map(|i| self.row(i).iter().map(format_rational).collect())
            .collect();
        let width = cells.iter().flatten().map(String::len).max().unwrap_or(1);
        for row in &cells {
            let line: Vec<String> = row.iter().map(|c| format!("{c:>width$}")).collect();
            writeln!(f, "[{}]", line.join(" "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational::rat;

    #[test]
    fn rank_basics() {
        assert_eq!(RatMatrix::zeros(3, 5).rank(), 0);
        assert_eq!(RatMatrix::identity(5).rank(), 5);
        let m = RatMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        assert_eq!(RatMatrix::zeros(0, 0).rank(), 0);
    }

    #[test]
    fn rank_with_fractions_and_skipped_columns() {
        let m = RatMatrix::from_rows(vec![
            vec![int(0), rat(1, 2), int(1), int(0)],
            vec![int(0), int(1), int(2), int(0)],
            vec![int(0), int(0), int(0), rat(3, 7)],
        ])
        .unwrap();
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn nullspace_examples() {
        assert!(RatMatrix::identity(4).nullspace().is_empty());
        let m = RatMatrix::from_i64(&[&[1, -1]]);
        let ns = m.nullspace();
        assert_eq!(ns, vec![RatMatrix::column(vec![int(1), int(1)])]);
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let m = RatMatrix::from_i64(&[&[1, 2, 0, -1, 3], &[0, 1, 1, 1, 0], &[1, 3, 1, 0, 3]]);
        let ns = m.nullspace();
        assert_eq!(ns.len(), 5 - m.rank());
        for v in ns {
            assert!(m.mul(&v).unwrap().is_zero());
        }
    }

    #[test]
    fn det_and_inverse() {
        let m = RatMatrix::from_rows(vec![
            vec![int(2), rat(1, 3), int(0)],
            vec![int(1), int(1), int(4)],
            vec![int(0), int(-1), rat(1, 2)],
        ])
        .unwrap();
        // 2*(1/2 + 4) - 1/3*(1/2 - 0) = 9 - 1/6
        assert_eq!(m.det().unwrap(), rat(53, 6));
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), RatMatrix::identity(3));
        let singular = RatMatrix::from_i64(&[&[1, 2], &[2, 4]]);
        assert_eq!(singular.det().unwrap(), int(0));
        assert!(matches!(singular.inverse(), Err(Error::Singular(_))));
    }

    #[test]
    fn det_sign_tracks_row_swaps() {
        let m = RatMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(m.det().unwrap(), int(-1));
    }

    #[test]
    fn rref_transform_reproduces_rref() {
        let m = RatMatrix::from_i64(&[&[0, 2, 4], &[1, 1, 1], &[1, 3, 5]]);
        let (r, pivots, e) = m.rref_with_transform();
        assert_eq!(e.mul(&m).unwrap(), r);
        assert_eq!(pivots, vec![0, 1]);
        assert!(e.is_invertible());
    }
}
