//! Finite-dimensional Lie algebras given by a bracket table on a basis.

pub mod chevalley;
pub mod exp;
pub mod grading;
pub mod ideal;
pub mod iso;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::fp::{self, FpMat};
use crate::arith::reduce::{self, RowReducer, SparseVec, Subspace};
use crate::arith::{FieldSpec, Matrix, Scalar};
use crate::error::{Error, Result};

pub use chevalley::{chevalley_algebra, ChevalleyAlgebra};
pub use grading::{Grading, GradingDerivation};

#[derive(Clone, Debug)]
pub struct LieAlgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    /// `table[i * dim + j] = [e_i, e_j]`.
    table: Vec<SparseVec>,
    /// Basis indices known to generate the algebra, when available.
    generators: Option<Vec<usize>>,
}

/// How much of the Jacobi identity was checked.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum JacobiReport {
    Exhaustive {
        triples: u64,
        passed: bool,
        failure: Option<[usize; 3]>,
    },
    Sampled {
        triples: u64,
        seed: u64,
        passed: bool,
        failure: Option<[usize; 3]>,
    },
}

impl JacobiReport {
    pub fn passed(&self) -> bool {
        match self {
            JacobiReport::Exhaustive { passed, .. } | JacobiReport::Sampled { passed, .. } => {
                *passed
            }
        }
    }

    pub fn into_result(self) -> Result<()> {
        match self {
            JacobiReport::Exhaustive {
                failure: Some([i, j, k]),
                ..
            }
            | JacobiReport::Sampled {
                failure: Some([i, j, k]),
                ..
            } => Err(Error::JacobiFails(i, j, k)),
            _ => Ok(()),
        }
    }
}

/// Dimension up to which Jacobi is checked on every basis triple by default.
pub const EXHAUSTIVE_JACOBI_DIM: usize = 60;

impl LieAlgebra {
    /// Build from the brackets `[e_i, e_j]` for `i < j`; the rest follows by antisymmetry.
    pub fn from_upper(
        field: FieldSpec,
        labels: Vec<String>,
        upper: Vec<(usize, usize, SparseVec)>,
    ) -> Result<Self> {
        let dim = labels.len();
        let mut table = vec![SparseVec::new(); dim * dim];
        for (i, j, v) in upper {
            if i >= dim || j >= dim || v.iter().any(|(k, _)| *k >= dim) {
                return Err(Error::DimensionMismatch(format!(
                    "bracket ({i},{j}) out of range"
                )));
            }
            if i == j {
                if v.is_empty() {
                    continue;
                }
                return Err(Error::NotAntisymmetric(i, j));
            }
            if v.iter().any(|(_, s)| s.field() != field) {
                return Err(Error::FieldMismatch(
                    field.to_string(),
                    "bracket entry".into(),
                ));
            }
            let neg: SparseVec = v.iter().map(|(k, s)| (*k, -s)).collect();
            let v: SparseVec = v.into_iter().filter(|(_, s)| !s.is_zero()).collect();
            let neg: SparseVec = neg.into_iter().filter(|(_, s)| !s.is_zero()).collect();
            let (a, b) = if i < j { (v, neg) } else { (neg, v) };
            let (lo, hi) = (i.min(j), i.max(j));
            table[lo * dim + hi] = a;
            table[hi * dim + lo] = b;
        }
        Ok(LieAlgebra {
            field,
            dim,
            labels,
            table,
            generators: None,
        })
    }

    /// Build from a full table; antisymmetry is checked.
    pub fn from_table(
        field: FieldSpec,
        labels: Vec<String>,
        table: Vec<SparseVec>,
    ) -> Result<Self> {
        let dim = labels.len();
        if table.len() != dim * dim {
            return Err(Error::DimensionMismatch("bracket table size".into()));
        }
        let alg = LieAlgebra {
            field,
            dim,
            labels,
            table,
            generators: None,
        };
        alg.check_antisymmetry()?;
        Ok(alg)
    }

    pub fn with_generators(mut self, generators: Vec<usize>) -> Self {
        self.generators = Some(generators);
        self
    }

    pub fn field(&self) -> FieldSpec {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn generators(&self) -> Option<&[usize]> {
        self.generators.as_deref()
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.table[i * self.dim + j]
    }

    pub fn zero(&self) -> Vec<Scalar> {
        self.field.zeros(self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.field.unit_vector(self.dim, i)
    }

    pub fn bracket(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = self.zero();
        let ys: Vec<(usize, &Scalar)> =
            y.iter().enumerate().filter(|(_, s)| !s.is_zero()).collect();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for &(j, b) in &ys {
                let t = self.bracket_basis(i, j);
                if !t.is_empty() {
                    reduce::axpy_dense(&mut out, &(a * b), t);
                }
            }
        }
        out
    }

    pub fn bracket_sparse(&self, x: &SparseVec, y: &SparseVec) -> SparseVec {
        let mut terms = Vec::new();
        for (i, a) in x {
            for (j, b) in y {
                let t = self.bracket_basis(*i, *j);
                if !t.is_empty() {
                    terms.push((a * b, t));
                }
            }
        }
        reduce::combine(terms)
    }

    /// Matrix of `ad x`; column `j` is `[x, e_j]`.
    pub fn ad_matrix(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.bracket_basis(i, j) {
                    let v = m.get(*k, j) + &(a * c);
                    m.set(*k, j, v);
                }
            }
        }
        m
    }

    /// `ad x` over GF(p) with machine-word entries.
    pub fn ad_fp(&self, x: &[u64]) -> FpMat {
        let p = fp::modulus(self.field).expect("prime field");
        let mut m = FpMat::zeros(p, self.dim, self.dim);
        for (i, &a) in x.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for j in 0..self.dim {
                for (k, c) in self.bracket_basis(i, j) {
                    m.add_to(*k, j, a * fp::residue(c));
                }
            }
        }
        m
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        for i in 0..self.dim {
            if !self.bracket_basis(i, i).is_empty() {
                return Err(Error::NotAntisymmetric(i, i));
            }
            for j in i + 1..self.dim {
                let a = self.bracket_basis(i, j);
                let b = self.bracket_basis(j, i);
                let ok = a.len() == b.len()
                    && a.iter().zip(b).all(|((k, s), (l, t))| k == l && *s == -t);
                if !ok {
                    return Err(Error::NotAntisymmetric(i, j));
                }
            }
        }
        Ok(())
    }

    /// `[[e_i,e_j],e_k] + [[e_j,e_k],e_i] + [[e_k,e_i],e_j] = 0`.
    pub fn jacobi_holds(&self, i: usize, j: usize, k: usize) -> bool {
        let mut acc: HashMap<usize, Scalar> = HashMap::new();
        for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
            for (m, s) in self.bracket_basis(a, b) {
                for (n, t) in self.bracket_basis(*m, c) {
                    let v = s * t;
                    match acc.get_mut(n) {
                        Some(x) => *x += &v,
                        None => {
                            acc.insert(*n, v);
                        }
                    }
                }
            }
        }
        acc.values().all(Scalar::is_zero)
    }

    /// All triples `i < j < k`; with antisymmetry this covers every triple.
    pub fn check_jacobi_exhaustive(&self) -> JacobiReport {
        let mut triples = 0u64;
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                for k in j + 1..self.dim {
                    triples += 1;
                    if !self.jacobi_holds(i, j, k) {
                        return JacobiReport::Exhaustive {
                            triples,
                            passed: false,
                            failure: Some([i, j, k]),
                        };
                    }
                }
            }
        }
        JacobiReport::Exhaustive {
            triples,
            passed: true,
            failure: None,
        }
    }

    pub fn check_jacobi_sampled(&self, samples: u64, seed: u64) -> JacobiReport {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for t in 0..samples {
            let (i, j, k) = (
                rng.gen_range(0..self.dim),
                rng.gen_range(0..self.dim),
                rng.gen_range(0..self.dim),
            );
            if !self.jacobi_holds(i, j, k) {
                return JacobiReport::Sampled {
                    triples: t + 1,
                    seed,
                    passed: false,
                    failure: Some([i, j, k]),
                };
            }
        }
        JacobiReport::Sampled {
            triples: samples,
            seed,
            passed: true,
            failure: None,
        }
    }

    /// Exhaustive up to `EXHAUSTIVE_JACOBI_DIM`, otherwise `samples` random triples.
    pub fn check_jacobi(&self, samples: u64, seed: u64) -> JacobiReport {
        if self.dim <= EXHAUSTIVE_JACOBI_DIM {
            self.check_jacobi_exhaustive()
        } else {
            self.check_jacobi_sampled(samples, seed)
        }
    }

    /// `{x : [x, L] = 0}`.
    pub fn center(&self) -> Subspace {
        self.centralizer_in(
            &(0..self.dim).collect::<Vec<_>>(),
            &(0..self.dim).collect::<Vec<_>>(),
        )
    }

    /// Elements of `span(candidates)` commuting with every basis vector in `against`,
    /// returned as a subspace of the whole algebra.
    pub fn centralizer_in(&self, candidates: &[usize], against: &[usize]) -> Subspace {
        let mut rows: HashMap<(usize, usize), SparseVec> = HashMap::new();
        for (col, &i) in candidates.iter().enumerate() {
            for &j in against {
                for (k, c) in self.bracket_basis(i, j) {
                    rows.entry((j, *k)).or_default().push((col, c.clone()));
                }
            }
        }
        let mut red = RowReducer::new(self.field, candidates.len());
        let mut keys: Vec<_> = rows.keys().copied().collect();
        keys.sort_unstable();
        for key in keys {
            red.insert(&rows[&key]);
        }
        let (_, kernel) = red.finish();
        let vectors: Vec<Vec<Scalar>> = kernel
            .iter()
            .map(|v| {
                let mut full = self.zero();
                for (col, &i) in candidates.iter().enumerate() {
                    full[i] = v[col].clone();
                }
                full
            })
            .collect();
        Subspace::span(self.field, self.dim, &vectors)
    }

    /// Span of all brackets `[e_i, e_j]`.
    pub fn derived_span(&self) -> Subspace {
        let mut red = RowReducer::new(self.field, self.dim);
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if !v.is_empty() {
                    red.insert(v);
                }
                if red.rank() == self.dim {
                    return Subspace::full(self.field, self.dim);
                }
            }
        }
        let (rows, _) = red.finish();
        let vecs: Vec<SparseVec> = rows;
        Subspace::span_sparse(self.field, self.dim, &vecs)
    }

    /// The subalgebra on a bracket-closed subspace, in the coordinates of its basis.
    pub fn subalgebra(&self, sub: &Subspace) -> Result<LieAlgebra> {
        let n = sub.dim();
        let mut upper = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                let br = self.bracket(&sub.basis()[a], &sub.basis()[b]);
                let c = sub
                    .coords(&br)
                    .ok_or_else(|| Error::NotInSubspace(format!("bracket of basis {a},{b}")))?;
                upper.push((a, b, reduce::from_dense(&c)));
            }
        }
        let labels = (0..n).map(|k| format!("b{k}")).collect();
        LieAlgebra::from_upper(self.field, labels, upper)
    }

    pub fn derived_subalgebra(&self) -> Result<(Subspace, LieAlgebra)> {
        let d = self.derived_span();
        let alg = self.subalgebra(&d)?;
        Ok((d, alg))
    }

    /// Checks `[I, L] ⊆ I`.
    pub fn is_ideal(&self, ideal: &Subspace) -> bool {
        ideal.basis().iter().all(|b| {
            (0..self.dim).all(|j| {
                let v = self.bracket(b, &self.basis_vector(j));
                ideal.contains(&v)
            })
        })
    }

    /// `L / I` on the basis vectors outside the pivot columns of `I`.
    pub fn quotient(&self, ideal: &Subspace) -> Result<Quotient> {
        if !self.is_ideal(ideal) {
            return Err(Error::NotAnIdeal("subspace is not bracket-stable".into()));
        }
        let pivots: Vec<usize> = ideal.pivots().to_vec();
        let reps: Vec<usize> = (0..self.dim).filter(|i| !pivots.contains(i)).collect();
        let pos: HashMap<usize, usize> = reps.iter().enumerate().map(|(k, &i)| (i, k)).collect();
        let project = |v: &[Scalar]| -> SparseVec {
            let c = v.to_vec();
            let coeffs: Vec<Scalar> = pivots.iter().map(|&p| c[p].clone()).collect();
            let inside = ideal.element(&coeffs);
            let rest: Vec<Scalar> = c.iter().zip(&inside).map(|(a, b)| a - b).collect();
            reduce::from_dense(&rest)
                .into_iter()
                .map(|(i, s)| (pos[&i], s))
                .collect()
        };
        let mut upper = Vec::new();
        for (a, &i) in reps.iter().enumerate() {
            for (b, &j) in reps.iter().enumerate().skip(a + 1) {
                let br = reduce::to_dense(self.field, self.dim, self.bracket_basis(i, j));
                upper.push((a, b, project(&br)));
            }
        }
        let labels = reps.iter().map(|&i| self.labels[i].clone()).collect();
        let algebra = LieAlgebra::from_upper(self.field, labels, upper)?;
        // Well-definedness: shifting a representative by an ideal element changes nothing.
        for b in ideal.basis() {
            for &j in &reps {
                let v = self.bracket(b, &self.basis_vector(j));
                if !project(&v).is_empty() {
                    return Err(Error::NotAnIdeal(
                        "quotient bracket depends on representatives".into(),
                    ));
                }
            }
        }
        Ok(Quotient {
            algebra,
            representatives: reps,
        })
    }

    pub fn central_quotient(&self) -> Result<Quotient> {
        self.quotient(&self.center())
    }

    pub fn to_json(&self) -> LieAlgebraJson {
        let mut brackets = Vec::new();
        for i in 0..self.dim {
            for j in i + 1..self.dim {
                let v = self.bracket_basis(i, j);
                if !v.is_empty() {
                    brackets.push(BracketJson {
                        i,
                        j,
                        out: v
                            .iter()
                            .map(|(k, s)| (k.to_string(), s.to_string()))
                            .collect(),
                    });
                }
            }
        }
        LieAlgebraJson {
            field: self.field,
            dim: self.dim,
            labels: self.labels.clone(),
            brackets,
        }
    }

    pub fn from_json(j: &LieAlgebraJson) -> Result<Self> {
        if j.labels.len() != j.dim {
            return Err(Error::DimensionMismatch("labels vs dim".into()));
        }
        let mut upper = Vec::new();
        for b in &j.brackets {
            let mut v = Vec::new();
            for (k, s) in &b.out {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad index '{k}'")))?;
                v.push((k, j.field.parse_scalar(s)?));
            }
            v.sort_by_key(|(k, _)| *k);
            upper.push((b.i, b.j, v));
        }
        let alg = LieAlgebra::from_upper(j.field, j.labels.clone(), upper)?;
        Ok(alg)
    }
}

/// A quotient algebra and, for each of its basis vectors, the representing basis index.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub algebra: LieAlgebra,
    pub representatives: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BracketJson {
    pub i: usize,
    pub j: usize,
    pub out: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LieAlgebraJson {
    pub field: FieldSpec,
    pub dim: usize,
    pub labels: Vec<String>,
    pub brackets: Vec<BracketJson>,
}
