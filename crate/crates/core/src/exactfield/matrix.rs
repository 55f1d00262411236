//! Dense matrices over the exact field tower.
//!
//! Determinant and rank use fraction-free (Bareiss) elimination over the
//! polynomial ring `Z[i][t]` after clearing denominators row by row; kernels,
//! images and linear solves use reduced row echelon form over the field with
//! the first nonzero entry of each column (top to bottom) as pivot.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

use super::{FieldElement, Poly, Scalar};
use crate::error::{Error, Result};

pub type Vector = Vec<FieldElement>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries given for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(ExactMatrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            data: vec![FieldElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = ExactMatrix::zeros(n, n);
        for k in 0..n {
            m.set(k, k, FieldElement::one());
        }
        m
    }

    pub fn from_ints(rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        ExactMatrix {
            rows,
            cols,
            data: entries.iter().map(|&e| FieldElement::from_int(e)).collect(),
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> FieldElement,
    ) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, data }
    }

    /// Matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != rows) {
            return Err(Error::Shape(format!(
                "column of length {} in a matrix with {rows} rows",
                bad.len()
            )));
        }
        Ok(ExactMatrix::from_fn(rows, columns.len(), |i, j| {
            columns[j][i].clone()
        }))
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

    pub fn entries(&self) -> &[FieldElement] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: FieldElement) {
        self.data[i * self.cols + j] = value;
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn transpose(&self) -> ExactMatrix {
        ExactMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn checked_mul(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        if self.cols != rhs.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(ExactMatrix::from_fn(self.rows, rhs.cols, |i, j| {
            let mut acc = FieldElement::zero();
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                let b = rhs.get(k, j);
                if b.is_zero() {
                    continue;
                }
                acc = &acc + &(a * b);
            }
            acc
        }))
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::Shape(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok((0..self.rows)
            .map(|i| {
                let mut acc = FieldElement::zero();
                for (k, x) in v.iter().enumerate() {
                    let a = self.get(i, k);
                    if !a.is_zero() && !x.is_zero() {
                        acc = &acc + &(a * x);
                    }
                }
                acc
            })
            .collect())
    }

    fn zip_with(
        &self,
        rhs: &ExactMatrix,
        f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
    ) -> Result<ExactMatrix> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Shape(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| f(a, b))
                .collect(),
        })
    }

    pub fn checked_add(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &ExactMatrix) -> Result<ExactMatrix> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn scale(&self, c: &FieldElement) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn neg(&self) -> ExactMatrix {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| -a).collect(),
        }
    }

    /// Kronecker product, `self` indexing the outer blocks.
    pub fn kron(&self, rhs: &ExactMatrix) -> ExactMatrix {
        ExactMatrix::from_fn(self.rows * rhs.rows, self.cols * rhs.cols, |i, j| {
            self.get(i / rhs.rows, j / rhs.cols) * rhs.get(i % rhs.rows, j % rhs.cols)
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> ExactMatrix {
        ExactMatrix::from_fn(rows.len(), cols.len(), |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ExactMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.set(r0 + i, c0 + j, block.get(i, j).clone());
            }
        }
    }

    pub fn evaluate_at(&self, point: &Scalar) -> Result<ExactMatrix> {
        let data = self
            .data
            .iter()
            .map(|x| x.evaluate_at(point))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// Rows scaled to polynomial entries with Gaussian-integer coefficients.
    /// Returns the rows and the product of the row multipliers.
    fn cleared_rows(&self) -> (Vec<Vec<Poly>>, FieldElement) {
        let mut multiplier = FieldElement::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = &self.data[i * self.cols..(i + 1) * self.cols];
                let mut den = Poly::one();
                for x in row {
                    if !x.denom().is_one() {
                        let g = Poly::gcd(&den, x.denom());
                        den = &den * &x.denom().exact_div(&g);
                    }
                }
                let polys: Vec<Poly> = row
                    .iter()
                    .map(|x| &x.numer().clone() * &den.exact_div(x.denom()))
                    .collect();
                let mut lcm = BigInt::one();
                for p in &polys {
                    for c in p.coeffs() {
                        lcm = lcm.lcm(&c.denominator_lcm());
                    }
                }
                let c = Scalar::from_rational(BigRational::from_integer(lcm));
                let polys = if c.is_one() {
                    polys
                } else {
                    polys.iter().map(|p| p.scale(&c)).collect()
                };
                let row_mult = FieldElement::from_poly(den.scale(&c));
                multiplier = &multiplier * &row_mult;
                polys
            })
            .collect();
        (rows, multiplier)
    }

    /// Exact determinant by Bareiss elimination.
    pub fn det(&self) -> Result<FieldElement> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(FieldElement::one());
        }
        if n == 1 {
            return Ok(self.data[0].clone());
        }
        let (mut a, multiplier) = self.cleared_rows();
        let mut negate = false;
        let mut prev = Poly::one();
        for k in 0..n {
            let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(FieldElement::zero());
            };
            if p != k {
                a.swap(p, k);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                    a[i][j] = v.exact_div(&prev);
                }
                a[i][k] = Poly::zero();
            }
            prev = a[k][k].clone();
        }
        let det = FieldElement::from_poly(a[n - 1][n - 1].clone());
        let det = det.checked_div(&multiplier)?;
        Ok(if negate { -det } else { det })
    }

    /// Exact rank over the field, by fraction-free echelon elimination.
    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        let (mut a, _) = self.cleared_rows();
        let (m, n) = (self.rows, self.cols);
        let mut r = 0;
        let mut prev = Poly::one();
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            for i in r + 1..m {
                for j in c + 1..n {
                    let v = &(&a[i][j] * &a[r][c]) - &(&a[i][c] * &a[r][j]);
                    a[i][j] = v.exact_div(&prev);
                }
                a[i][c] = Poly::zero();
            }
            prev = a[r][c].clone();
            r += 1;
        }
        r
    }

    /// Reduced row echelon form over the field together with the pivot columns.
    pub fn rref(&self) -> (ExactMatrix, Vec<usize>) {
        let mut a = self.clone();
        let (m, n) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..n {
            if r == m {
                break;
            }
            let Some(p) = (r..m).find(|&i| !a.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..n {
                    a.data.swap(p * n + j, r * n + j);
                }
            }
            let inv = a.get(r, c).inv().expect("nonzero pivot");
            for j in c..n {
                let v = a.get(r, j) * &inv;
                a.set(r, j, v);
            }
            for i in 0..m {
                if i == r {
                    continue;
                }
                let f = a.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..n {
                    let rj = a.get(r, j);
                    if rj.is_zero() {
                        continue;
                    }
                    let v = a.get(i, j) - &(&f * rj);
                    a.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (a, pivots)
    }

    /// Basis of the null space, in reduced column echelon form.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let n = self.cols;
        let mut basis = Vec::new();
        for f in (0..n).filter(|c| !pivots.contains(c)) {
            let mut v = vec![FieldElement::zero(); n];
            v[f] = FieldElement::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r.get(row, f);
            }
            basis.push(v);
        }
        column_echelon(&basis, n)
    }

    /// Basis of the column space, in reduced column echelon form.
    pub fn image_basis(&self) -> Vec<Vector> {
        column_echelon(&self.columns(), self.rows)
    }

    /// Echelon particular solution of `self * x = b` (free variables zero).
    pub fn solve(&self, b: &[FieldElement]) -> Result<Vector> {
        if b.len() != self.rows {
            return Err(Error::Shape(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let n = self.cols;
        let aug = ExactMatrix::from_fn(self.rows, n + 1, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&n) {
            return Err(Error::NoSolution);
        }
        let mut x = vec![FieldElement::zero(); n];
        for (row, &pc) in pivots.iter().enumerate() {
            x[pc] = r.get(row, n).clone();
        }
        Ok(x)
    }

    pub fn inverse(&self) -> Result<ExactMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(ExactMatrix::identity(0));
        }
        let aug = ExactMatrix::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                FieldElement::one()
            } else {
                FieldElement::zero()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::DivisionByZero);
        }
        Ok(ExactMatrix::from_fn(n, n, |i, j| r.get(i, n + j).clone()))
    }
}

/// Reduced column echelon basis of the span of `vectors` (each of length `dim`):
/// every basis vector has leading (topmost) entry 1 and the others vanish there.
pub fn column_echelon(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let stacked = ExactMatrix::from_fn(vectors.len(), dim, |i, j| vectors[i][j].clone());
    let (r, pivots) = stacked.rref();
    (0..pivots.len())
        .map(|i| (0..dim).map(|j| r.get(i, j).clone()).collect())
        .collect()
}

/// Row-major literal `[[a, b], [c, d]]`.
impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
