//! The extension `L̂` of a graded Lie algebra whose degree-zero part consists of tuples
//! `(φ_i)_{i≠0}` with `φ_i ∈ End(L_i)` behaving as a grading-preserving derivation.
//!
//! Basis of `L̂`: the basis vectors of `L` of nonzero degree (in their original order),
//! followed by a basis of `L̂_0`. Elements of `L̂_0` are stored as flattened blocks: the
//! entry `(r, c)` of `φ_k` sits at `offset(k) + r·d_k + c`.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::arith::reduce::{self, RowReducer, SparseVec, Subspace};
use crate::arith::{FieldSpec, Scalar};
use crate::error::{Error, Result};
use crate::lie::{Grading, JacobiReport, LieAlgebra, LieAlgebraJson};

/// Above this dimension the Jacobi check on `L̂` is sampled.
pub const EXHAUSTIVE_HAT_JACOBI_DIM: usize = 40;

#[derive(Clone, Debug)]
struct Blocks {
    degrees: Vec<i64>,
    indices: HashMap<i64, Vec<usize>>,
    offsets: HashMap<i64, usize>,
    /// Basis index of `L` → position inside its component.
    pos: Vec<usize>,
    total: usize,
}

impl Blocks {
    fn new(g: &Grading) -> Self {
        let n = g.bound();
        let mut degrees = Vec::new();
        let mut indices = HashMap::new();
        let mut offsets = HashMap::new();
        let mut pos = vec![0; g.degrees().len()];
        let mut total = 0;
        for d in (-n..=n).filter(|&d| d != 0) {
            let comp = g.component(d);
            for (k, &i) in comp.iter().enumerate() {
                pos[i] = k;
            }
            offsets.insert(d, total);
            total += comp.len() * comp.len();
            degrees.push(d);
            indices.insert(d, comp);
        }
        Blocks {
            degrees,
            indices,
            offsets,
            pos,
            total,
        }
    }

    fn comp(&self, d: i64) -> &[usize] {
        self.indices.get(&d).map(Vec::as_slice).unwrap_or(&[])
    }

    fn var(&self, d: i64, r: usize, c: usize) -> usize {
        self.offsets[&d] + r * self.comp(d).len() + c
    }
}

/// Rows of one constraint, keyed by the output basis index.
#[derive(Default)]
struct RowAcc(BTreeMap<usize, BTreeMap<usize, Scalar>>);

impl RowAcc {
    fn add(&mut self, out: usize, var: usize, c: Scalar) {
        if c.is_zero() {
            return;
        }
        let row = self.0.entry(out).or_default();
        match row.get_mut(&var) {
            Some(x) => *x += &c,
            None => {
                row.insert(var, c);
            }
        }
    }

    fn rows(self) -> impl Iterator<Item = SparseVec> {
        self.0.into_values().map(|r| {
            r.into_iter()
                .filter(|(_, s)| !s.is_zero())
                .collect::<SparseVec>()
        })
    }
}

/// Every linear condition cut out by the two constraint families.
fn constraint_rows(
    alg: &LieAlgebra,
    g: &Grading,
    b: &Blocks,
    mut sink: impl FnMut(SparseVec) -> Result<()>,
) -> Result<()> {
    let n = g.bound();
    let field = alg.field();
    let unit = |i: usize| -> SparseVec { vec![(i, field.one())] };
    // [φ_i a, b] + [a, φ_j b] = φ_{i+j}[a, b] for i ≠ -j; unordered basis pairs suffice.
    for &i in &b.degrees {
        for &j in &b.degrees {
            if i > j || i == -j || (i + j).abs() > n {
                continue;
            }
            let s = i + j;
            for &a in b.comp(i) {
                for &bb in b.comp(j) {
                    if i == j && bb <= a {
                        continue;
                    }
                    let mut acc = RowAcc::default();
                    for (m, c) in alg.bracket_basis(a, bb) {
                        for &k in b.comp(s) {
                            acc.add(k, b.var(s, b.pos[k], b.pos[*m]), c.clone());
                        }
                    }
                    for &m in b.comp(i) {
                        for (k, c) in alg.bracket_basis(m, bb) {
                            acc.add(*k, b.var(i, b.pos[m], b.pos[a]), -c);
                        }
                    }
                    for &m in b.comp(j) {
                        for (k, c) in alg.bracket_basis(a, m) {
                            acc.add(*k, b.var(j, b.pos[m], b.pos[bb]), -c);
                        }
                    }
                    for row in acc.rows() {
                        sink(row)?;
                    }
                }
            }
        }
    }
    // φ_j[[a,b],c] = [[φ_i a,b],c] + [[a,φ_{-i} b],c] + [[a,b],φ_j c]; i > 0 suffices since
    // swapping (i, a) with (-i, b) negates the condition.
    for &i in b.degrees.iter().filter(|&&i| i > 0) {
        for &a in b.comp(i) {
            for &bb in b.comp(-i) {
                let w = alg.bracket_basis(a, bb).clone();
                // [[e_m, b], ·] and [[a, e_m], ·] as sparse vectors, reused across c.
                let left: Vec<(usize, SparseVec)> = b
                    .comp(i)
                    .iter()
                    .map(|&m| (m, alg.bracket_basis(m, bb).clone()))
                    .filter(|(_, v)| !v.is_empty())
                    .collect();
                let right: Vec<(usize, SparseVec)> = b
                    .comp(-i)
                    .iter()
                    .map(|&m| (m, alg.bracket_basis(a, m).clone()))
                    .filter(|(_, v)| !v.is_empty())
                    .collect();
                for &j in &b.degrees {
                    for &c in b.comp(j) {
                        let mut acc = RowAcc::default();
                        let cv = unit(c);
                        for (m, coeff) in alg.bracket_sparse(&w, &cv) {
                            for &k in b.comp(j) {
                                acc.add(k, b.var(j, b.pos[k], b.pos[m]), coeff.clone());
                            }
                        }
                        for (m, v) in &left {
                            for (k, coeff) in alg.bracket_sparse(v, &cv) {
                                acc.add(k, b.var(i, b.pos[*m], b.pos[a]), -coeff);
                            }
                        }
                        for (m, v) in &right {
                            for (k, coeff) in alg.bracket_sparse(v, &cv) {
                                acc.add(k, b.var(-i, b.pos[*m], b.pos[bb]), -coeff);
                            }
                        }
                        if !w.is_empty() {
                            for &m in b.comp(j) {
                                for (k, coeff) in alg.bracket_sparse(&w, &unit(m)) {
                                    acc.add(k, b.var(j, b.pos[m], b.pos[c]), -coeff);
                                }
                            }
                        }
                        for row in acc.rows() {
                            sink(row)?;
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn dot(row: &SparseVec, v: &[Scalar]) -> Scalar {
    let field = v.first().map(Scalar::field).unwrap_or(FieldSpec::Rationals);
    let mut acc = field.zero();
    for (i, s) in row {
        if !v[*i].is_zero() {
            acc += &(s * &v[*i]);
        }
    }
    acc
}

#[derive(Clone, Debug)]
pub struct HatAlgebra {
    parent: LieAlgebra,
    parent_grading: Grading,
    blocks: Blocks,
    /// `L̂_0` inside the flattened block space.
    hat_zero: Subspace,
    /// Basis index of `L̂` → basis index of `L`, for the nonzero degrees.
    outer: Vec<usize>,
    algebra: LieAlgebra,
    grading: Grading,
}

/// Construct `L̂` for a graded `L`.
pub fn build_hat(alg: &LieAlgebra, g: &Grading) -> Result<HatAlgebra> {
    let field = alg.field();
    let blocks = Blocks::new(g);
    let total = blocks.total;
    // The natural image of L_0 together with ζ always lies in L̂_0.
    let mut known: Vec<Vec<Scalar>> = g
        .component(0)
        .iter()
        .map(|&x| restrict_ad(alg, &blocks, &alg.basis_vector(x)))
        .collect();
    known.push(zeta_blocks(field, &blocks));
    let known = Subspace::span(field, total, &known);
    let target = total - known.dim();
    let mut red = RowReducer::new(field, total);
    constraint_rows(alg, g, &blocks, |row| {
        if known.basis().iter().any(|v| !dot(&row, v).is_zero()) {
            return Err(Error::NotInSubspace(
                "a derivation fails the defining conditions".into(),
            ));
        }
        if red.rank() < target {
            red.insert(&row);
        }
        Ok(())
    })?;
    let hat_zero = if red.rank() == target {
        known
    } else {
        let (_, kernel) = red.finish();
        Subspace::span(field, total, &kernel)
    };
    assemble(alg.clone(), g.clone(), blocks, hat_zero)
}

/// `(ad x|_{L_k})_{k≠0}` in flattened block coordinates.
fn restrict_ad(alg: &LieAlgebra, b: &Blocks, x: &[Scalar]) -> Vec<Scalar> {
    let field = alg.field();
    let mut out = field.zeros(b.total);
    let xs = reduce::from_dense(x);
    for &d in &b.degrees {
        for &col in b.comp(d) {
            for (k, c) in alg.bracket_sparse(&xs, &vec![(col, field.one())]) {
                // [x, e_col] stays in L_d for x of degree 0; other parts of x are dropped.
                if b.comp(d).contains(&k) {
                    out[b.var(d, b.pos[k], b.pos[col])] = c;
                }
            }
        }
    }
    out
}

fn zeta_blocks(field: FieldSpec, b: &Blocks) -> Vec<Scalar> {
    let mut z = field.zeros(b.total);
    for &d in &b.degrees {
        for r in 0..b.comp(d).len() {
            z[b.var(d, r, r)] = field.from_i64(d);
        }
    }
    z
}

/// Apply a flattened block tuple to a vector of `L` supported in nonzero degrees.
fn apply_blocks(b: &Blocks, phi: &[Scalar], x: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    let mut out = field.zeros(x.len());
    for &d in &b.degrees {
        let comp = b.comp(d);
        for (c, &ic) in comp.iter().enumerate() {
            if x[ic].is_zero() {
                continue;
            }
            for (r, &ir) in comp.iter().enumerate() {
                let e = &phi[b.var(d, r, c)];
                if !e.is_zero() {
                    out[ir] += &(e * &x[ic]);
                }
            }
        }
    }
    out
}

fn compose_blocks(b: &Blocks, p: &[Scalar], q: &[Scalar], field: FieldSpec) -> Vec<Scalar> {
    let mut out = field.zeros(b.total);
    for &d in &b.degrees {
        let n = b.comp(d).len();
        for r in 0..n {
            for k in 0..n {
                let a = &p[b.var(d, r, k)];
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let e = &q[b.var(d, k, c)];
                    if !e.is_zero() {
                        out[b.var(d, r, c)] += &(a * e);
                    }
                }
            }
        }
    }
    out
}

fn assemble(
    parent: LieAlgebra,
    pg: Grading,
    blocks: Blocks,
    hat_zero: Subspace,
) -> Result<HatAlgebra> {
    let field = parent.field();
    let outer: Vec<usize> = (0..parent.dim()).filter(|&i| pg.degree(i) != 0).collect();
    let m = outer.len();
    let h = hat_zero.dim();
    let dim = m + h;
    let hat_index: HashMap<usize, usize> = outer.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let to_hat = |v: &[Scalar]| -> SparseVec {
        reduce::from_dense(v)
            .into_iter()
            .map(|(i, s)| (hat_index[&i], s))
            .collect()
    };
    let in_hat_zero = |phi: &[Scalar]| -> Result<SparseVec> {
        let c = hat_zero
            .coords(phi)
            .ok_or_else(|| Error::NotInSubspace("bracket leaves the degree-zero part".into()))?;
        Ok(reduce::from_dense(&c)
            .into_iter()
            .map(|(k, s)| (m + k, s))
            .collect())
    };
    let mut upper: Vec<(usize, usize, SparseVec)> = Vec::new();
    for a in 0..m {
        for b in a + 1..m {
            let (ia, ib) = (outer[a], outer[b]);
            let (da, db) = (pg.degree(ia), pg.degree(ib));
            let v = if da == -db {
                let w = reduce::to_dense(field, parent.dim(), parent.bracket_basis(ia, ib));
                in_hat_zero(&restrict_ad(&parent, &blocks, &w))?
            } else {
                let w = parent.bracket_basis(ia, ib);
                w.iter().map(|(k, s)| (hat_index[k], s.clone())).collect()
            };
            upper.push((a, b, v));
        }
    }
    for (a, &ia) in outer.iter().enumerate() {
        let x = parent.basis_vector(ia);
        for k in 0..h {
            // [e_a, φ] = -φ(e_a)
            let y = apply_blocks(&blocks, &hat_zero.basis()[k], &x, field);
            let v: SparseVec = to_hat(&y).into_iter().map(|(i, s)| (i, -s)).collect();
            upper.push((a, m + k, v));
        }
    }
    for k in 0..h {
        for l in k + 1..h {
            let (p, q) = (&hat_zero.basis()[k], &hat_zero.basis()[l]);
            let pq = compose_blocks(&blocks, p, q, field);
            let qp = compose_blocks(&blocks, q, p, field);
            let comm: Vec<Scalar> = pq.iter().zip(&qp).map(|(x, y)| x - y).collect();
            upper.push((m + k, m + l, in_hat_zero(&comm)?));
        }
    }
    let mut labels: Vec<String> = outer.iter().map(|&i| parent.labels()[i].clone()).collect();
    labels.extend((0..h).map(|k| format!("phi{k}")));
    let algebra = LieAlgebra::from_upper(field, labels, upper)?;
    let mut degrees: Vec<i64> = outer.iter().map(|&i| pg.degree(i)).collect();
    degrees.extend(std::iter::repeat_n(0, h));
    debug_assert_eq!(degrees.len(), dim);
    let grading = Grading::new(&algebra, degrees)?;
    Ok(HatAlgebra {
        parent,
        parent_grading: pg,
        blocks,
        hat_zero,
        outer,
        algebra,
        grading,
    })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HatProvenance {
    pub parent_dim: usize,
    pub parent_labels: Vec<String>,
    pub parent_degrees: Vec<i64>,
    pub hat_zero_dim: usize,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct HatJson {
    #[serde(flatten)]
    pub algebra: LieAlgebraJson,
    pub degrees: Vec<i64>,
    pub provenance: HatProvenance,
}

impl HatAlgebra {
    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    pub fn parent(&self) -> &LieAlgebra {
        &self.parent
    }

    pub fn hat_zero_dim(&self) -> usize {
        self.hat_zero.dim()
    }

    /// Basis of `L̂_0` as tuples of per-degree matrices `(degree, rows)`.
    pub fn hat_zero_blocks(&self) -> Vec<Vec<(i64, Vec<Vec<Scalar>>)>> {
        self.hat_zero
            .basis()
            .iter()
            .map(|phi| {
                self.blocks
                    .degrees
                    .iter()
                    .map(|&d| {
                        let n = self.blocks.comp(d).len();
                        let rows = (0..n)
                            .map(|r| {
                                (0..n)
                                    .map(|c| phi[self.blocks.var(d, r, c)].clone())
                                    .collect()
                            })
                            .collect();
                        (d, rows)
                    })
                    .collect()
            })
            .collect()
    }

    fn block_vector_to_hat(&self, phi: &[Scalar]) -> Option<Vec<Scalar>> {
        let c = self.hat_zero.coords(phi)?;
        let mut v = self.algebra.zero();
        for (k, s) in c.into_iter().enumerate() {
            v[self.outer.len() + k] = s;
        }
        Some(v)
    }

    /// The natural homomorphism `L → L̂`, in the basis of `L̂`.
    pub fn natural_map(&self, x: &[Scalar]) -> Vec<Scalar> {
        let field = self.parent.field();
        let mut zero_part = field.zeros(x.len());
        let mut v = self.algebra.zero();
        for (i, s) in x.iter().enumerate() {
            if self.parent_grading.degree(i) == 0 {
                zero_part[i] = s.clone();
            }
        }
        let phi = restrict_ad(&self.parent, &self.blocks, &zero_part);
        if let Some(w) = self.block_vector_to_hat(&phi) {
            v = w;
        }
        for (k, &i) in self.outer.iter().enumerate() {
            v[k] = x[i].clone();
        }
        v
    }

    /// `{x ∈ L_0 : [x, L_i] = 0 for all i ≠ 0}`.
    pub fn natural_map_kernel(&self) -> Subspace {
        let g = &self.parent_grading;
        self.parent.centralizer_in(&g.component(0), &self.outer)
    }

    /// Checks that the natural map preserves every basis bracket.
    pub fn natural_map_is_homomorphism(&self) -> bool {
        let n = self.parent.dim();
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                let (x, y) = (self.parent.basis_vector(a), self.parent.basis_vector(b));
                let lhs = self.natural_map(&self.parent.bracket(&x, &y));
                let rhs = self
                    .algebra
                    .bracket(&self.natural_map(&x), &self.natural_map(&y));
                lhs == rhs
            })
        })
    }

    /// The element `ζ = (k·id_{L_k})_k` in the basis of `L̂`.
    pub fn zeta(&self) -> Option<Vec<Scalar>> {
        self.block_vector_to_hat(&zeta_blocks(self.parent.field(), &self.blocks))
    }

    /// `ζ ∈ L̂_0` and `[ζ, x] = i·x` for every basis vector of degree `i`.
    pub fn contains_grading_derivation(&self) -> bool {
        let Some(z) = self.zeta() else {
            return false;
        };
        let field = self.parent.field();
        (0..self.algebra.dim()).all(|b| {
            let mut want = self.algebra.zero();
            want[b] = field.from_i64(self.grading.degree(b));
            self.algebra.bracket(&z, &self.algebra.basis_vector(b)) == want
        })
    }

    pub fn check_jacobi(&self, samples: u64, seed: u64) -> JacobiReport {
        if self.algebra.dim() <= EXHAUSTIVE_HAT_JACOBI_DIM {
            self.algebra.check_jacobi_exhaustive()
        } else {
            self.algebra.check_jacobi_sampled(samples, seed)
        }
    }

    pub fn to_json(&self) -> HatJson {
        HatJson {
            algebra: self.algebra.to_json(),
            degrees: self.grading.degrees().to_vec(),
            provenance: HatProvenance {
                parent_dim: self.parent.dim(),
                parent_labels: self.parent.labels().to_vec(),
                parent_degrees: self.parent_grading.degrees().to_vec(),
                hat_zero_dim: self.hat_zero_dim(),
            },
        }
    }
}
