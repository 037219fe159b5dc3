//! Dense exact matrices and Gaussian elimination.

use std::fmt;
use std::ops::Index;

use crate::arith::scalar::{FieldSpec, Scalar};
use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    field: FieldSpec,
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

/// Outcome of `A x = b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearSolution {
    Solution(Vec<Scalar>),
    Inconsistent,
}

impl LinearSolution {
    pub fn solution(self) -> Option<Vec<Scalar>> {
        match self {
            LinearSolution::Solution(x) => Some(x),
            LinearSolution::Inconsistent => None,
        }
    }
}

fn check_vec_field(field: FieldSpec, v: &[Scalar]) -> Result<()> {
    match v.iter().find(|s| s.field() != field) {
        Some(s) => Err(Error::FieldMismatch(
            field.to_string(),
            s.field().to_string(),
        )),
        None => Ok(()),
    }
}

impl Matrix {
    pub fn zeros(field: FieldSpec, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: FieldSpec, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: FieldSpec, rows: Vec<Vec<Scalar>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut data = Vec::with_capacity(r * c);
        for row in rows {
            if row.len() != c {
                return Err(Error::DimensionMismatch("ragged matrix rows".into()));
            }
            check_vec_field(field, &row)?;
            data.extend(row);
        }
        Ok(Matrix {
            field,
            rows: r,
            cols: c,
            data,
        })
    }

    /// Build from columns, each of length `rows`.
    pub fn from_cols(field: FieldSpec, rows: usize, cols: &[Vec<Scalar>]) -> Result<Self> {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, col) in cols.iter().enumerate() {
            if col.len() != rows {
                return Err(Error::DimensionMismatch("column length".into()));
            }
            check_vec_field(field, col)?;
            for (i, s) in col.iter().enumerate() {
                m.set(i, j, s.clone());
            }
        }
        Ok(m)
    }

    pub fn from_i64(field: FieldSpec, rows: &[&[i64]]) -> Self {
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| field.from_i64(x)).collect())
            .collect();
        Self::from_rows(field, rows).expect("rectangular integer matrix")
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Scalar {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, s: Scalar) {
        debug_assert_eq!(s.field(), self.field);
        self.data[r * self.cols + c] = s;
    }

    pub fn row(&self, r: usize) -> &[Scalar] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn col(&self, c: usize) -> Vec<Scalar> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Scalar>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.field, self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.set(c, r, self.get(r, c).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(
                self.field.to_string(),
                other.field.to_string(),
            ));
        }
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Matrix::zeros(self.field, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Scalar]) -> Result<Vec<Scalar>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        check_vec_field(self.field, v)?;
        Ok((0..self.rows)
            .map(|r| {
                let mut acc = self.field.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !a.is_zero() && !b.is_zero() {
                        acc += &(a * b);
                    }
                }
                acc
            })
            .collect())
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch("matrix difference".into()));
        }
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| a - b)
            .collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let s = self.get(r, c);
                    if r == c {
                        s.is_one()
                    } else {
                        s.is_zero()
                    }
                })
            })
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (Matrix, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            self.swap_rows(r, p);
            let inv = self.get(r, c).inv().expect("pivot is nonzero");
            for j in c..self.cols {
                let v = self.get(r, j) * &inv;
                self.set(r, j, v);
            }
            for i in 0..self.rows {
                if i == r {
                    continue;
                }
                let f = self.get(i, c).clone();
                if f.is_zero() {
                    continue;
                }
                for j in c..self.cols {
                    let pr = self.get(r, j);
                    if !pr.is_zero() {
                        let v = self.get(i, j) - &(&f * pr);
                        self.set(i, j, v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{v : A v = 0}`; one vector per free column, with a 1 in that column.
    pub fn nullspace(&self) -> Vec<Vec<Scalar>> {
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&f| !is_pivot[f])
            .map(|f| {
                let mut v = self.field.zeros(self.cols);
                v[f] = self.field.one();
                for (row, &p) in pivots.iter().enumerate() {
                    v[p] = -r.get(row, f);
                }
                v
            })
            .collect()
    }

    /// Solve `A x = b`, returning one particular solution.
    pub fn solve(&self, b: &[Scalar]) -> Result<LinearSolution> {
        if b.len() != self.rows {
            return Err(Error::DimensionMismatch(format!(
                "right-hand side of length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        check_vec_field(self.field, b)?;
        let mut aug = Matrix::zeros(self.field, self.rows, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, self.cols, b[r].clone());
        }
        let pivots = aug.rref_in_place();
        if pivots.last() == Some(&self.cols) {
            return Ok(LinearSolution::Inconsistent);
        }
        let mut x = self.field.zeros(self.cols);
        for (row, &p) in pivots.iter().enumerate() {
            x[p] = aug.get(row, self.cols).clone();
        }
        Ok(LinearSolution::Solution(x))
    }

    /// Inverse of a square matrix, `None` when singular.
    pub fn inverse(&self) -> Option<Matrix> {
        if self.rows != self.cols {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::zeros(self.field, n, 2 * n);
        for r in 0..n {
            for c in 0..n {
                aug.set(r, c, self.get(r, c).clone());
            }
            aug.set(r, n + r, self.field.one());
        }
        let pivots = aug.rref_in_place();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Matrix::zeros(self.field, n, n);
        for r in 0..n {
            for c in 0..n {
                inv.set(r, c, aug.get(r, n + c).clone());
            }
        }
        Some(inv)
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;

    fn index(&self, (r, c): (usize, usize)) -> &Scalar {
        self.get(r, c)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|s| s.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

pub fn solve_linear(a: &Matrix, b: &[Scalar]) -> Result<LinearSolution> {
    a.solve(b)
}

pub fn nullspace(a: &Matrix) -> Vec<Vec<Scalar>> {
    a.nullspace()
}

pub fn invert(s: &Scalar) -> Result<Scalar> {
    s.inv()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn identity_solve() {
        let q = FieldSpec::Rationals;
        let b: Vec<Scalar> = [1, 2, 3].iter().map(|&x| q.from_i64(x)).collect();
        let sol = Matrix::identity(q, 3).solve(&b).unwrap();
        assert_eq!(sol, LinearSolution::Solution(b));
    }

    #[test]
    fn zero_matrix_is_inconsistent() {
        let q = FieldSpec::Rationals;
        let b = vec![q.one(), q.zero()];
        assert_eq!(
            Matrix::zeros(q, 2, 2).solve(&b).unwrap(),
            LinearSolution::Inconsistent
        );
    }

    #[test]
    fn random_invertible_over_gf101() {
        let f = FieldSpec::prime(101).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut hits = 0;
        while hits < 5 {
            let rows = (0..10)
                .map(|_| (0..10).map(|_| f.random(&mut rng)).collect())
                .collect();
            let a = Matrix::from_rows(f, rows).unwrap();
            if a.rank() < 10 {
                continue;
            }
            let x0: Vec<Scalar> = (0..10).map(|_| f.random(&mut rng)).collect();
            let b = a.mul_vec(&x0).unwrap();
            assert_eq!(a.solve(&b).unwrap(), LinearSolution::Solution(x0));
            hits += 1;
        }
    }

    #[test]
    fn nullspace_examples() {
        let q = FieldSpec::Rationals;
        assert!(Matrix::identity(q, 4).nullspace().is_empty());
        assert_eq!(Matrix::zeros(q, 2, 3).nullspace().len(), 3);
        let f5 = FieldSpec::prime(5).unwrap();
        let k = Matrix::from_i64(f5, &[&[1, -1]]).nullspace();
        assert_eq!(k, vec![vec![f5.one(), f5.one()]]);
    }

    #[test]
    fn field_mismatch_is_reported() {
        let a = Matrix::identity(FieldSpec::Rationals, 2);
        let f5 = FieldSpec::prime(5).unwrap();
        assert!(matches!(
            a.solve(&[f5.one(), f5.one()]),
            Err(Error::FieldMismatch(_, _))
        ));
    }

    #[test]
    fn inverse_round_trip() {
        let q = FieldSpec::Rationals;
        let a = Matrix::from_i64(q, &[&[2, 1], &[7, 4]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert!(Matrix::from_i64(q, &[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn rank_nullity_small_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for field in [FieldSpec::Rationals, FieldSpec::prime(5).unwrap()] {
            for _ in 0..20 {
                let (r, c) = (rng.gen_range(1..6), rng.gen_range(1..6));
                let rows = (0..r)
                    .map(|_| (0..c).map(|_| field.random(&mut rng)).collect())
                    .collect();
                let a = Matrix::from_rows(field, rows).unwrap();
                let ns = a.nullspace();
                assert_eq!(a.rank() + ns.len(), c);
                for v in ns {
                    assert!(a.mul_vec(&v).unwrap().iter().all(Scalar::is_zero));
                }
            }
        }
    }
}
