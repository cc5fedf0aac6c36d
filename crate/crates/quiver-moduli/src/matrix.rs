//! Dense exact matrices with fraction-free elimination.
//!
//! Determinants over Q clear row denominators and run integer Bareiss
//! elimination, so intermediate values stay integral when the input is
//! integral. Rank, nullspace, solve and inverse go through a reduced row
//! echelon form; the nullspace basis is the canonical one read off the RREF
//! (one vector per free column, ordered by column).

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    field: Field,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn zero(rows: usize, cols: usize, field: Field) -> Self {
        Matrix {
            rows,
            cols,
            field,
            data: vec![Scalar::zero(field); rows * cols],
        }
    }

    pub fn identity(n: usize, field: Field) -> Self {
        let mut m = Self::zero(n, n, field);
        for i in 0..n {
            m.set(i, i, Scalar::one(field));
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, field: Field, mut f: impl FnMut(usize, usize) -> Scalar) -> Self {
        let mut m = Self::zero(rows, cols, field);
        for i in 0..rows {
            for j in 0..cols {
                let v = f(i, j);
                assert_eq!(v.field(), field, "entry field mismatch");
                m.set(i, j, v);
            }
        }
        m
    }

    /// Build from integer rows (convenience for tests and fixtures).
    pub fn from_int_rows(field: Field, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Self::from_fn(r, c, field, |i, j| Scalar::from_int(rows[i][j], field))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Scalar) {
        assert_eq!(v.field(), self.field, "entry field mismatch");
        self.data[i * self.cols + j] = v;
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    if i == j {
                        self.get(i, j).is_one()
                    } else {
                        self.get(i, j).is_zero()
                    }
                })
            })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|s| s.is_zero())
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.cols, self.rows, self.field, |i, j| self.get(j, i).clone())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} + {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        Ok(Self::from_fn(self.rows, self.cols, self.field, |i, j| {
            self.get(i, j) + other.get(i, j)
        }))
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        if self.field != other.field {
            return Err(Error::FieldMismatch);
        }
        let mut out = Matrix::zero(self.rows, other.cols, self.field);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = out.get(i, j) + &(a * b);
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Matrix {
        Self::from_fn(self.rows, self.cols, self.field, |i, j| self.get(i, j) * s)
    }

    pub fn apply(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} applied to vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        let mut out = vec![Scalar::zero(self.field); self.rows];
        for i in 0..self.rows {
            for j in 0..self.cols {
                if !self.get(i, j).is_zero() && !v[j].is_zero() {
                    out[i] = &out[i] + &(self.get(i, j) * &v[j]);
                }
            }
        }
        Ok(out)
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.field, other.field);
        let mut m = Matrix::zero(self.rows + other.rows, self.cols + other.cols, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn reduce_mod(&self, p: u64) -> Result<Matrix> {
        let mut out = Matrix::zero(self.rows, self.cols, Field::Fp(p));
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j).reduce_mod(p)?);
            }
        }
        Ok(out)
    }

    /// Exact determinant. The 0x0 determinant is 1 (empty product).
    pub fn det(&self) -> Result<Scalar> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        match self.field {
            Field::Q => self.det_bareiss(),
            Field::Fp(_) => self.det_gauss(),
        }
    }

    fn det_bareiss(&self) -> Result<Scalar> {
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one(self.field));
        }
        // Clear denominators row by row, tracking the correction factor.
        let mut m: Vec<Vec<BigInt>> = Vec::with_capacity(n);
        let mut correction = BigRational::one();
        for i in 0..n {
            let mut lcm = BigInt::one();
            for j in 0..n {
                let r = self.get(i, j).as_rational().expect("Q matrix");
                lcm = lcm.lcm(r.denom());
            }
            correction *= BigRational::from_integer(lcm.clone());
            m.push(
                (0..n)
                    .map(|j| {
                        let r = self.get(i, j).as_rational().unwrap();
                        r.numer() * (&lcm / r.denom())
                    })
                    .collect(),
            );
        }
        let mut sign = 1i64;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k][k].is_zero() {
                match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                    Some(i) => {
                        m.swap(k, i);
                        sign = -sign;
                    }
                    None => return Ok(Scalar::zero(self.field)),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                    m[i][j] = num / &prev; // exact by Bareiss
                }
                m[i][k] = BigInt::zero();
            }
            prev = m[k][k].clone();
        }
        let det_int = BigRational::from_integer(m[n - 1][n - 1].clone() * BigInt::from(sign));
        Ok(Scalar::Rat(det_int / correction))
    }

    fn det_gauss(&self) -> Result<Scalar> {
        let n = self.rows;
        if n == 0 {
            return Ok(Scalar::one(self.field));
        }
        let mut m = self.clone();
        let mut det = Scalar::one(self.field);
        for k in 0..n {
            let piv = match (k..n).find(|&i| !m.get(i, k).is_zero()) {
                Some(p) => p,
                None => return Ok(Scalar::zero(self.field)),
            };
            if piv != k {
                m.swap_rows(k, piv);
                det = -det;
            }
            det = &det * m.get(k, k);
            let inv = m.get(k, k).inv().expect("nonzero pivot");
            for i in k + 1..n {
                let f = m.get(i, k) * &inv;
                if f.is_zero() {
                    continue;
                }
                for j in k..n {
                    let v = m.get(i, j) - &(&f * m.get(k, j));
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Reduced row echelon form; returns (rref, pivot columns).
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m.cols {
            if row == m.rows {
                break;
            }
            let piv = match (row..m.rows).find(|&i| !m.get(i, col).is_zero()) {
                Some(p) => p,
                None => continue,
            };
            m.swap_rows(row, piv);
            let inv = m.get(row, col).inv().expect("nonzero pivot");
            for j in col..m.cols {
                let v = m.get(row, j) * &inv;
                m.set(row, j, v);
            }
            for i in 0..m.rows {
                if i != row && !m.get(i, col).is_zero() {
                    let f = m.get(i, col).clone();
                    for j in col..m.cols {
                        let v = m.get(i, j) - &(&f * m.get(row, j));
                        m.set(i, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Canonical basis of the right kernel; empty iff full column rank.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
        for free in 0..self.cols {
            if pivot_set.contains(&free) {
                continue;
            }
            let mut v = vec![Scalar::zero(self.field); self.cols];
            v[free] = Scalar::one(self.field);
            for (prow, &pcol) in pivots.iter().enumerate() {
                v[pcol] = -r.get(prow, free);
            }
            basis.push(v);
        }
        basis
    }

    /// One solution of `self * x = rhs`, if any.
    pub fn solve(&self, rhs: &[Scalar]) -> Result<Option<Vec<Scalar>>> {
        if rhs.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "solve: {} rows vs rhs length {}",
                self.rows,
                rhs.len()
            )));
        }
        let mut aug = Matrix::zero(self.rows, self.cols + 1, self.field);
        for i in 0..self.rows {
            for j in 0..self.cols {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, self.cols, rhs[i].clone());
        }
        let (r, pivots) = aug.rref();
        if pivots.contains(&self.cols) {
            return Ok(None); // inconsistent
        }
        let mut x = vec![Scalar::zero(self.field); self.cols];
        for (prow, &pcol) in pivots.iter().enumerate() {
            x[pcol] = r.get(prow, self.cols).clone();
        }
        Ok(Some(x))
    }

    /// Exact inverse; `None` when singular.
    pub fn inverse(&self) -> Result<Option<Matrix>> {
        if !self.is_square() {
            return Err(Error::NonSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let mut aug = Matrix::zero(n, 2 * n, self.field);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j).clone());
            }
            aug.set(i, n + i, Scalar::one(self.field));
        }
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots.iter().take(n).enumerate().any(|(i, &p)| p != i) {
            return Ok(None);
        }
        Ok(Some(Matrix::from_fn(n, n, self.field, |i, j| {
            r.get(i, n + j).clone()
        })))
    }
}
