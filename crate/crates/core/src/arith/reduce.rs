//! Sparse vectors, incremental row reduction and subspaces with coordinates.

use std::collections::BTreeMap;

use crate::arith::matrix::Matrix;
use crate::arith::scalar::{FieldSpec, Scalar};

/// Sparse vector: `(index, coefficient)` pairs, strictly increasing indices, no zeros.
pub type SparseVec = Vec<(usize, Scalar)>;

pub fn to_dense(field: FieldSpec, n: usize, v: &SparseVec) -> Vec<Scalar> {
    let mut out = field.zeros(n);
    for (i, s) in v {
        out[*i] = s.clone();
    }
    out
}

pub fn from_dense(v: &[Scalar]) -> SparseVec {
    v.iter()
        .enumerate()
        .filter(|(_, s)| !s.is_zero())
        .map(|(i, s)| (i, s.clone()))
        .collect()
}

/// `acc += c * v` for a dense accumulator.
pub fn axpy_dense(acc: &mut [Scalar], c: &Scalar, v: &SparseVec) {
    if c.is_zero() {
        return;
    }
    for (i, s) in v {
        acc[*i] += &(c * s);
    }
}

/// Sum of `c_k * v_k` as a sparse vector.
pub fn combine<'a, I>(terms: I) -> SparseVec
where
    I: IntoIterator<Item = (Scalar, &'a SparseVec)>,
{
    let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
    for (c, v) in terms {
        if c.is_zero() {
            continue;
        }
        for (i, s) in v {
            let t = &c * s;
            match acc.get_mut(i) {
                Some(x) => *x += &t,
                None => {
                    acc.insert(*i, t);
                }
            }
        }
    }
    acc.into_iter().filter(|(_, s)| !s.is_zero()).collect()
}

/// Incremental Gaussian elimination over sparse rows.
///
/// Rows are kept in echelon form with leading coefficient 1; `finish` produces the
/// reduced form and the kernel.
#[derive(Clone, Debug)]
pub struct RowReducer {
    field: FieldSpec,
    cols: usize,
    rows: Vec<SparseVec>,
    pivot_row: Vec<Option<usize>>,
}

impl RowReducer {
    pub fn new(field: FieldSpec, cols: usize) -> Self {
        RowReducer {
            field,
            cols,
            rows: Vec::new(),
            pivot_row: vec![None; cols],
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the current pivots; the result has no entry in a pivot column.
    pub fn reduce(&self, v: &SparseVec) -> SparseVec {
        let mut work: BTreeMap<usize, Scalar> = v.iter().cloned().collect();
        let mut out = SparseVec::new();
        while let Some((c, s)) = work.pop_first() {
            if s.is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(r) => {
                    for (j, t) in self.rows[r].iter().skip(1) {
                        let d = &s * t;
                        match work.get_mut(j) {
                            Some(x) => *x -= &d,
                            None => {
                                work.insert(*j, -d);
                            }
                        }
                    }
                }
                None => out.push((c, s)),
            }
        }
        out
    }

    /// Add a row; returns true when it increased the rank.
    pub fn insert(&mut self, v: &SparseVec) -> bool {
        let mut red = self.reduce(v);
        if red.is_empty() {
            return false;
        }
        let lead = red[0].0;
        let inv = red[0].1.inv().expect("nonzero leading entry");
        for (_, s) in red.iter_mut() {
            *s *= &inv;
        }
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push(red);
        true
    }

    pub fn insert_dense(&mut self, v: &[Scalar]) -> bool {
        self.insert(&from_dense(v))
    }

    /// Reduced echelon rows (sorted by pivot) and a kernel basis, one vector per free column.
    pub fn finish(&self) -> (Vec<SparseVec>, Vec<Vec<Scalar>>) {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&r| self.rows[r][0].0);
        // Back substitution from the last pivot upward.
        let mut reduced: Vec<SparseVec> = vec![Vec::new(); self.rows.len()];
        let mut done = RowReducer::new(self.field, self.cols);
        for &r in order.iter().rev() {
            let row = &self.rows[r];
            let (lead, one) = row[0].clone();
            let tail: SparseVec = row[1..].to_vec();
            let mut red = done.reduce(&tail);
            red.insert(0, (lead, one));
            done.pivot_row[lead] = Some(done.rows.len());
            done.rows.push(red.clone());
            reduced[r] = red;
        }
        let rref: Vec<SparseVec> = order.iter().map(|&r| reduced[r].clone()).collect();
        let mut kernel = Vec::new();
        let mut free_entries: BTreeMap<usize, Vec<(usize, Scalar)>> = BTreeMap::new();
        for row in &rref {
            let p = row[0].0;
            for (c, s) in &row[1..] {
                free_entries.entry(*c).or_default().push((p, s.clone()));
            }
        }
        for f in 0..self.cols {
            if self.pivot_row[f].is_some() {
                continue;
            }
            let mut v = self.field.zeros(self.cols);
            v[f] = self.field.one();
            if let Some(es) = free_entries.get(&f) {
                for (p, s) in es {
                    v[*p] = -s;
                }
            }
            kernel.push(v);
        }
        (rref, kernel)
    }
}

/// A subspace of `field^ambient` with a normalized basis.
///
/// `basis[k][pivots[l]]` is 1 when `k == l` and 0 otherwise, so the coordinates of a member
/// are read off at the pivot positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: FieldSpec,
    ambient: usize,
    basis: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: FieldSpec, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            basis: (0..ambient)
                .map(|i| field.unit_vector(ambient, i))
                .collect(),
            pivots: (0..ambient).collect(),
        }
    }

    pub fn span(field: FieldSpec, ambient: usize, vectors: &[Vec<Scalar>]) -> Self {
        if vectors.is_empty() {
            return Self::zero(field, ambient);
        }
        let m = Matrix::from_rows(field, vectors.to_vec()).expect("vectors of equal length");
        let (r, pivots) = m.rref();
        let basis = (0..pivots.len()).map(|i| r.row(i).to_vec()).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    /// Span of sparse vectors, via the incremental reducer.
    pub fn span_sparse(field: FieldSpec, ambient: usize, vectors: &[SparseVec]) -> Self {
        let mut red = RowReducer::new(field, ambient);
        for v in vectors {
            red.insert(v);
        }
        let (rows, _) = red.finish();
        let pivots = rows.iter().map(|r| r[0].0).collect();
        let basis = rows.iter().map(|r| to_dense(field, ambient, r)).collect();
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    /// Trusts the caller that the basis is normalized at `pivots`.
    pub fn from_normalized(
        field: FieldSpec,
        ambient: usize,
        basis: Vec<Vec<Scalar>>,
        pivots: Vec<usize>,
    ) -> Self {
        debug_assert!(basis
            .iter()
            .enumerate()
            .all(|(k, b)| pivots.iter().enumerate().all(|(l, &p)| if k == l {
                b[p].is_one()
            } else {
                b[p].is_zero()
            })));
        Subspace {
            field,
            ambient,
            basis,
            pivots,
        }
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn basis(&self) -> &[Vec<Scalar>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Coordinates in the basis, `None` if `v` is not a member.
    pub fn coords(&self, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let c: Vec<Scalar> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        let mut rest = v.to_vec();
        for (ck, b) in c.iter().zip(&self.basis) {
            if ck.is_zero() {
                continue;
            }
            for (x, y) in rest.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x -= &(ck * y);
                }
            }
        }
        rest.iter().all(Scalar::is_zero).then_some(c)
    }

    pub fn contains(&self, v: &[Scalar]) -> bool {
        self.coords(v).is_some()
    }

    pub fn element(&self, coords: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.field.zeros(self.ambient);
        for (c, b) in coords.iter().zip(&self.basis) {
            if c.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(b) {
                if !y.is_zero() {
                    *x += &(c * y);
                }
            }
        }
        out
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.basis.iter().all(|b| self.contains(b))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        let mut all = self.basis.clone();
        all.extend(other.basis.iter().cloned());
        Subspace::span(self.field, self.ambient, &all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    fn sv(pairs: &[(usize, i64)]) -> SparseVec {
        pairs.iter().map(|&(i, x)| (i, q().from_i64(x))).collect()
    }

    #[test]
    fn reducer_rank_and_kernel() {
        let mut r = RowReducer::new(q(), 4);
        assert!(r.insert(&sv(&[(0, 1), (1, 1)])));
        assert!(r.insert(&sv(&[(1, 1), (2, 1)])));
        assert!(!r.insert(&sv(&[(0, 1), (2, -1)])));
        assert_eq!(r.rank(), 2);
        let (rows, kernel) = r.finish();
        assert_eq!(rows.len(), 2);
        assert_eq!(kernel.len(), 2);
        let m = Matrix::from_rows(q(), rows.iter().map(|v| to_dense(q(), 4, v)).collect()).unwrap();
        for v in &kernel {
            assert!(m.mul_vec(v).unwrap().iter().all(Scalar::is_zero));
        }
    }

    #[test]
    fn reducer_matches_dense_nullspace() {
        let f = FieldSpec::prime(7).unwrap();
        let rows: Vec<Vec<i64>> = vec![
            vec![1, 2, 3, 4, 5],
            vec![2, 4, 6, 1, 0],
            vec![0, 0, 0, 3, 3],
        ];
        let dense = Matrix::from_rows(
            f,
            rows.iter()
                .map(|r| r.iter().map(|&x| f.from_i64(x)).collect())
                .collect(),
        )
        .unwrap();
        let mut red = RowReducer::new(f, 5);
        for r in 0..3 {
            red.insert_dense(dense.row(r));
        }
        let (_, k) = red.finish();
        assert_eq!(
            Subspace::span(f, 5, &k),
            Subspace::span(f, 5, &dense.nullspace())
        );
    }

    #[test]
    fn subspace_coordinates() {
        let v1 = vec![q().one(), q().one(), q().zero()];
        let v2 = vec![q().zero(), q().one(), q().one()];
        let s = Subspace::span(q(), 3, &[v1.clone(), v2.clone()]);
        assert_eq!(s.dim(), 2);
        let w: Vec<Scalar> = [2, 5, 3].iter().map(|&x| q().from_i64(x)).collect();
        let c = s.coords(&w).unwrap();
        assert_eq!(s.element(&c), w);
        assert!(!s.contains(&[q().one(), q().zero(), q().zero()]));
    }

    #[test]
    fn combine_cancels() {
        let a = sv(&[(0, 1), (2, 3)]);
        let b = sv(&[(0, 1), (1, 1)]);
        let c = combine([(q().one(), &a), (q().from_i64(-1), &b)]);
        assert_eq!(c, sv(&[(1, -1), (2, 3)]));
    }
}
