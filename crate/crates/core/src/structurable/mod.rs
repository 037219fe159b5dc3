//! Structurable algebras: unital algebras with involution satisfying the operator identity
//! `[V_{x,y}, V_{z,w}] = V_{{x,y,z},w} - V_{z,{y,x,w}}`, where
//! `V_{x,y} z = {x y z} = (x ȳ) z + (z ȳ) x - (z x̄) y`.

pub mod kantor;
pub mod kappa;
pub mod unit_pair;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::reduce::Subspace;
use crate::arith::{FieldSpec, Matrix, Scalar};
use crate::error::{Error, Result};

pub use kantor::{pair_from_grading, KantorPair, KantorReport};
pub use kappa::{kappa, KappaAlgebra};
pub use unit_pair::{
    find_unit_pair, is_kappa_grading, verify_unit_pair, KappaVerdict, SearchMode, SearchPolicy,
    UnitPairOptions, UnitPairOutcome, UnitPairReport,
};

/// Exhaustive search for absolute zero divisors is used up to this many elements.
pub const ZERO_DIVISOR_SCAN_LIMIT: u64 = 100_000;

#[derive(Clone, Debug)]
pub struct StructurableAlgebra {
    field: FieldSpec,
    dim: usize,
    labels: Vec<String>,
    unit: Vec<Scalar>,
    /// `mult[i * dim + j] = e_i e_j`.
    mult: Vec<Vec<Scalar>>,
    /// Column `j` is the image of `e_j`.
    involution: Matrix,
    /// `V_{e_i, e_j}` for all `i, j`, filled in by validation.
    v_basis: Vec<Matrix>,
}

/// On-disk form. `mult[i][j]` is the coordinate vector of `e_i e_j`; `involution[r][c]` is
/// the `r`-th coordinate of the image of `e_c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructurableJson {
    pub field: FieldSpec,
    pub dim: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    pub unit: Vec<Scalar>,
    pub mult: Vec<Vec<Vec<Scalar>>>,
    pub involution: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub dim: usize,
    pub skew_dim: usize,
    pub struct_id_tuples: u64,
    pub eqdef_tuples: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanMode {
    Exhaustive,
    /// Basis vectors and seeded random elements only; an empty result is not a proof.
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZeroDivisorReport {
    pub mode: ScanMode,
    pub checked: u64,
    pub found: Vec<Vec<Scalar>>,
}

fn convert(field: FieldSpec, v: &[Scalar]) -> Result<Vec<Scalar>> {
    v.iter().map(|s| s.to_field(field)).collect()
}

impl StructurableAlgebra {
    /// Build and validate.
    pub fn new(
        field: FieldSpec,
        unit: Vec<Scalar>,
        mult: Vec<Vec<Scalar>>,
        involution: Matrix,
    ) -> Result<Self> {
        let dim = unit.len();
        let labels = (0..dim).map(|i| format!("e{i}")).collect();
        Self::with_labels(field, labels, unit, mult, involution)
    }

    pub fn with_labels(
        field: FieldSpec,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        mult: Vec<Vec<Scalar>>,
        involution: Matrix,
    ) -> Result<Self> {
        let mut a = Self::unchecked(field, labels, unit, mult, involution)?;
        a.fill_v_basis();
        a.validate()?;
        Ok(a)
    }

    fn unchecked(
        field: FieldSpec,
        labels: Vec<String>,
        unit: Vec<Scalar>,
        mult: Vec<Vec<Scalar>>,
        involution: Matrix,
    ) -> Result<Self> {
        if let FieldSpec::Prime(p) = field {
            if p == 2 || p == 3 {
                return Err(Error::BadCharacteristic(format!("GF({p})")));
            }
        }
        let dim = unit.len();
        if labels.len() != dim
            || mult.len() != dim * dim
            || mult.iter().any(|v| v.len() != dim)
            || involution.rows() != dim
            || involution.cols() != dim
        {
            return Err(Error::DimensionMismatch(
                "structurable algebra tables".into(),
            ));
        }
        let unit = convert(field, &unit)?;
        let mult = mult
            .iter()
            .map(|v| convert(field, v))
            .collect::<Result<Vec<_>>>()?;
        if involution.field() != field {
            return Err(Error::FieldMismatch(
                involution.field().to_string(),
                field.to_string(),
            ));
        }
        Ok(StructurableAlgebra {
            field,
            dim,
            labels,
            unit,
            mult,
            involution,
            v_basis: Vec::new(),
        })
    }

    /// Load from JSON, optionally reinterpreting the integer entries over another field.
    pub fn from_json(j: &StructurableJson, field: Option<FieldSpec>) -> Result<Self> {
        let field = field.unwrap_or(j.field);
        let n = j.dim;
        if j.mult.len() != n || j.mult.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch("mult must be dim × dim".into()));
        }
        if j.involution.len() != n || j.involution.iter().any(|r| r.len() != n) {
            return Err(Error::DimensionMismatch(
                "involution must be dim × dim".into(),
            ));
        }
        let mult: Vec<Vec<Scalar>> = j.mult.iter().flatten().cloned().collect();
        let rows = j
            .involution
            .iter()
            .map(|r| convert(field, r))
            .collect::<Result<Vec<_>>>()?;
        let involution = Matrix::from_rows(field, rows)?;
        let labels = j
            .labels
            .clone()
            .unwrap_or_else(|| (0..n).map(|i| format!("e{i}")).collect());
        Self::with_labels(field, labels, j.unit.clone(), mult, involution)
    }

    pub fn to_json(&self, name: Option<String>) -> StructurableJson {
        let n = self.dim;
        StructurableJson {
            field: self.field,
            dim: n,
            name,
            labels: Some(self.labels.clone()),
            unit: self.unit.clone(),
            mult: (0..n)
                .map(|i| (0..n).map(|j| self.mult[i * n + j].clone()).collect())
                .collect(),
            involution: self.involution.to_rows(),
        }
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

    pub fn unit(&self) -> &[Scalar] {
        &self.unit
    }

    pub fn zero(&self) -> Vec<Scalar> {
        self.field.zeros(self.dim)
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        self.field.unit_vector(self.dim, i)
    }

    pub fn mul(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let n = self.dim;
        let mut out = self.zero();
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let c = a * b;
                for (k, m) in self.mult[i * n + j].iter().enumerate() {
                    if !m.is_zero() {
                        out[k] += &(&c * m);
                    }
                }
            }
        }
        out
    }

    pub fn conj(&self, x: &[Scalar]) -> Vec<Scalar> {
        self.involution.mul_vec(x).expect("square")
    }

    /// `{x y z} = (x ȳ) z + (z ȳ) x - (z x̄) y`.
    pub fn triple(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let yb = self.conj(y);
        let xb = self.conj(x);
        let a = self.mul(&self.mul(x, &yb), z);
        let b = self.mul(&self.mul(z, &yb), x);
        let c = self.mul(&self.mul(z, &xb), y);
        a.iter()
            .zip(&b)
            .zip(&c)
            .map(|((a, b), c)| &(a + b) - c)
            .collect()
    }

    /// Matrix of `z ↦ f(z)` on the basis.
    fn operator(&self, f: impl Fn(&[Scalar]) -> Vec<Scalar>) -> Matrix {
        let cols: Vec<Vec<Scalar>> = (0..self.dim).map(|k| f(&self.basis_vector(k))).collect();
        Matrix::from_cols(self.field, self.dim, &cols).expect("square")
    }

    pub fn v_op(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        if self.v_basis.is_empty() {
            return self.operator(|z| self.triple(x, y, z));
        }
        let mut m = Matrix::zeros(self.field, self.dim, self.dim);
        for (i, a) in x.iter().enumerate() {
            for (j, b) in y.iter().enumerate() {
                if !a.is_zero() && !b.is_zero() {
                    add_scaled(&mut m, &(a * b), &self.v_basis[i * self.dim + j]);
                }
            }
        }
        m
    }

    /// `U_{x,y} z = V_{x,z} y`.
    pub fn u_op(&self, x: &[Scalar], y: &[Scalar]) -> Matrix {
        self.operator(|z| self.triple(x, z, y))
    }

    /// `T_z = V_{z,1}`.
    pub fn t_op(&self, z: &[Scalar]) -> Matrix {
        self.v_op(z, &self.unit)
    }

    pub fn left_mul(&self, x: &[Scalar]) -> Matrix {
        self.operator(|z| self.mul(x, z))
    }

    pub fn right_mul(&self, x: &[Scalar]) -> Matrix {
        self.operator(|z| self.mul(z, x))
    }

    /// `ψ(x, y) = x ȳ - y x̄`.
    pub fn psi(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let a = self.mul(x, &self.conj(y));
        let b = self.mul(y, &self.conj(x));
        a.iter().zip(&b).map(|(a, b)| a - b).collect()
    }

    /// Hermitian and skew parts, spanned by `e_i ± ē_i`.
    pub fn skew_split(&self) -> (Subspace, Subspace) {
        let (mut h, mut s) = (Vec::new(), Vec::new());
        for i in 0..self.dim {
            let e = self.basis_vector(i);
            let c = self.conj(&e);
            h.push(e.iter().zip(&c).map(|(a, b)| a + b).collect::<Vec<_>>());
            s.push(e.iter().zip(&c).map(|(a, b)| a - b).collect::<Vec<_>>());
        }
        (
            Subspace::span(self.field, self.dim, &h),
            Subspace::span(self.field, self.dim, &s),
        )
    }

    pub fn skew_dim(&self) -> usize {
        self.skew_split().1.dim()
    }

    /// `A^ε = A - L_{A(1) + \overline{A(1)}}`.
    pub fn eps(&self, op: &Matrix) -> Matrix {
        let a1 = op.mul_vec(&self.unit).expect("square");
        let s: Vec<Scalar> = a1.iter().zip(&self.conj(&a1)).map(|(a, b)| a + b).collect();
        op.sub(&self.left_mul(&s)).expect("square")
    }

    /// `A^δ = A + R_{\overline{A(1)}}`.
    pub fn delta(&self, op: &Matrix) -> Matrix {
        let a1 = op.mul_vec(&self.unit).expect("square");
        let r = self.right_mul(&self.conj(&a1));
        let mut out = op.clone();
        add_scaled(&mut out, &self.field.one(), &r);
        out
    }

    pub fn eps_delta(&self, op: &Matrix) -> (Matrix, Matrix) {
        (self.eps(op), self.delta(op))
    }

    /// `span{V_{x,y}}` inside the flattened (row-major) operator space.
    pub fn instrl_basis(&self) -> Subspace {
        let vs: Vec<Vec<Scalar>> = self.v_basis_or_compute().iter().map(flatten).collect();
        Subspace::span(self.field, self.dim * self.dim, &vs)
    }

    /// Checks that commutators of spanning operators stay in the span.
    pub fn instrl_is_closed(&self, instrl: &Subspace) -> bool {
        let ops: Vec<Matrix> = instrl
            .basis()
            .iter()
            .map(|v| unflatten(self.field, self.dim, v))
            .collect();
        ops.iter().enumerate().all(|(i, a)| {
            ops[i + 1..]
                .iter()
                .all(|b| instrl.contains(&flatten(&commutator(a, b))))
        })
    }

    fn v_basis_or_compute(&self) -> Vec<Matrix> {
        if !self.v_basis.is_empty() {
            return self.v_basis.clone();
        }
        let n = self.dim;
        (0..n * n)
            .map(|k| {
                self.operator(|z| {
                    self.triple(&self.basis_vector(k / n), &self.basis_vector(k % n), z)
                })
            })
            .collect()
    }

    fn fill_v_basis(&mut self) {
        self.v_basis = self.v_basis_or_compute();
    }

    /// Involution, unit, the structurable identity on basis 4-tuples and the
    /// `[T_z, V_{x,y}]` identity on basis triples.
    pub fn validate(&self) -> Result<ValidationReport> {
        let n = self.dim;
        let f = self.field;
        let m = &self.involution;
        if !m.mul(m)?.is_identity() {
            return Err(Error::NotInvolution(
                "the map does not square to the identity".into(),
            ));
        }
        for i in 0..n {
            for j in 0..n {
                let (ei, ej) = (self.basis_vector(i), self.basis_vector(j));
                let lhs = self.conj(&self.mul(&ei, &ej));
                let rhs = self.mul(&self.conj(&ej), &self.conj(&ei));
                if lhs != rhs {
                    return Err(Error::NotInvolution(format!(
                        "conj(e{i} e{j}) != conj(e{j}) conj(e{i})"
                    )));
                }
            }
        }
        for i in 0..n {
            let e = self.basis_vector(i);
            if self.mul(&self.unit, &e) != e || self.mul(&e, &self.unit) != e {
                return Err(Error::NotUnital(format!("unit fails on e{i}")));
            }
        }
        if self.conj(&self.unit) != self.unit {
            return Err(Error::NotInvolution("the unit is not fixed".into()));
        }
        let vb = self.v_basis_or_compute();
        let v = |x: &[Scalar], y: &[Scalar]| -> Matrix {
            let mut out = Matrix::zeros(f, n, n);
            for (i, a) in x.iter().enumerate() {
                for (j, b) in y.iter().enumerate() {
                    if !a.is_zero() && !b.is_zero() {
                        add_scaled(&mut out, &(a * b), &vb[i * n + j]);
                    }
                }
            }
            out
        };
        let mut struct_id = 0u64;
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for w in 0..n {
                        let (ex, ey, ez, ew) = (
                            self.basis_vector(x),
                            self.basis_vector(y),
                            self.basis_vector(z),
                            self.basis_vector(w),
                        );
                        let lhs = commutator(&vb[x * n + y], &vb[z * n + w]);
                        let xyz = self.triple(&ex, &ey, &ez);
                        let yxw = self.triple(&ey, &ex, &ew);
                        let rhs = v(&xyz, &ew).sub(&v(&ez, &yxw))?;
                        if lhs != rhs {
                            return Err(Error::StructIdFails(vec![x, y, z, w]));
                        }
                        struct_id += 1;
                    }
                }
            }
        }
        let mut eqdef = 0u64;
        for z in 0..n {
            let ez = self.basis_vector(z);
            let tz = v(&ez, &self.unit);
            let tzb = v(&self.conj(&ez), &self.unit);
            for x in 0..n {
                for y in 0..n {
                    let (ex, ey) = (self.basis_vector(x), self.basis_vector(y));
                    let lhs = commutator(&tz, &vb[x * n + y]);
                    let rhs = v(&tz.mul_vec(&ex)?, &ey).sub(&v(&ex, &tzb.mul_vec(&ey)?))?;
                    if lhs != rhs {
                        return Err(Error::EqDefFails(vec![z, x, y]));
                    }
                    eqdef += 1;
                }
            }
        }
        Ok(ValidationReport {
            dim: n,
            skew_dim: self.skew_dim(),
            struct_id_tuples: struct_id,
            eqdef_tuples: eqdef,
        })
    }

    /// Nonzero `x` with `U_x = 0`. Exhaustive over small finite fields, heuristic otherwise.
    pub fn absolute_zero_divisors(&self, samples: u64, seed: u64) -> ZeroDivisorReport {
        let is_azd = |x: &[Scalar]| -> bool {
            !x.iter().all(Scalar::is_zero)
                && (0..self.dim).all(|k| {
                    self.triple(x, &self.basis_vector(k), x)
                        .iter()
                        .all(Scalar::is_zero)
                })
        };
        if let Some(p) = self.field.order() {
            let total = (p as u128).pow(self.dim as u32);
            if self.dim <= 4 && total <= ZERO_DIVISOR_SCAN_LIMIT as u128 {
                let mut found = Vec::new();
                for k in 1..total as u64 {
                    let mut x = self.zero();
                    let mut r = k;
                    for c in x.iter_mut() {
                        *c = self.field.element(r % p);
                        r /= p;
                    }
                    if is_azd(&x) {
                        found.push(x);
                    }
                }
                return ZeroDivisorReport {
                    mode: ScanMode::Exhaustive,
                    checked: total as u64 - 1,
                    found,
                };
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut candidates: Vec<Vec<Scalar>> =
            (0..self.dim).map(|i| self.basis_vector(i)).collect();
        for _ in 0..samples {
            candidates.push((0..self.dim).map(|_| self.field.random(&mut rng)).collect());
        }
        let checked = candidates
            .iter()
            .filter(|x| !x.iter().all(Scalar::is_zero))
            .count() as u64;
        let found = candidates.into_iter().filter(|x| is_azd(x)).collect();
        ZeroDivisorReport {
            mode: ScanMode::Heuristic,
            checked,
            found,
        }
    }
}

pub(crate) fn add_scaled(acc: &mut Matrix, c: &Scalar, m: &Matrix) {
    for r in 0..m.rows() {
        for k in 0..m.cols() {
            let v = m.get(r, k);
            if !v.is_zero() {
                let nv = acc.get(r, k) + &(c * v);
                acc.set(r, k, nv);
            }
        }
    }
}

pub(crate) fn commutator(a: &Matrix, b: &Matrix) -> Matrix {
    a.mul(b)
        .expect("square")
        .sub(&b.mul(a).expect("square"))
        .expect("square")
}

pub(crate) fn flatten(m: &Matrix) -> Vec<Scalar> {
    m.to_rows().into_iter().flatten().collect()
}

pub(crate) fn unflatten(field: FieldSpec, n: usize, v: &[Scalar]) -> Matrix {
    Matrix::from_rows(field, v.chunks(n).map(<[Scalar]>::to_vec).collect()).expect("square")
}

/// Small examples used in tests and bundled as data.
pub mod examples {
    use super::*;

    /// The base field with the identity involution.
    pub fn trivial(field: FieldSpec) -> StructurableAlgebra {
        StructurableAlgebra::new(
            field,
            vec![field.one()],
            vec![vec![field.one()]],
            Matrix::identity(field, 1),
        )
        .expect("valid")
    }

    /// `k × k` with the exchange involution.
    pub fn swap(field: FieldSpec) -> StructurableAlgebra {
        let (o, z) = (field.one(), field.zero());
        let mult = vec![
            vec![o.clone(), z.clone()],
            vec![z.clone(), z.clone()],
            vec![z.clone(), z.clone()],
            vec![z.clone(), o.clone()],
        ];
        let inv = Matrix::from_i64(field, &[&[0, 1], &[1, 0]]);
        StructurableAlgebra::new(field, vec![o.clone(), o], mult, inv).expect("valid")
    }

    /// `M_2(k)` on matrix units `E11, E12, E21, E22` with the transpose.
    pub fn m2_transpose(field: FieldSpec) -> StructurableAlgebra {
        let idx = |r: usize, c: usize| 2 * r + c;
        let mut mult = vec![field.zeros(4); 16];
        for (a, b) in (0..4).flat_map(|a| (0..4).map(move |b| (a, b))) {
            let (i, j, k, l) = (a / 2, a % 2, b / 2, b % 2);
            if j == k {
                mult[a * 4 + b][idx(i, l)] = field.one();
            }
        }
        let inv = Matrix::from_i64(
            field,
            &[&[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 1, 0, 0], &[0, 0, 0, 1]],
        );
        let unit = vec![field.one(), field.zero(), field.zero(), field.one()];
        let labels = ["E11", "E12", "E21", "E22"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        StructurableAlgebra::with_labels(field, labels, unit, mult, inv).expect("valid")
    }
}

#[cfg(test)]
mod tests {
    use super::examples::*;
    use super::*;

    fn q() -> FieldSpec {
        FieldSpec::Rationals
    }

    #[test]
    fn trivial_algebra() {
        let a = trivial(q());
        let r = a.validate().unwrap();
        assert_eq!(r.skew_dim, 0);
        assert!(a.v_op(a.unit(), a.unit()).is_identity());
        // over k, V_{x,y} is multiplication by xy
        let (x, y) = (vec![q().from_i64(3)], vec![q().from_i64(-2)]);
        assert_eq!(a.v_op(&x, &y).get(0, 0), &q().from_i64(-6));
        assert!(a.psi(&x, &y).iter().all(Scalar::is_zero));
        assert_eq!(a.instrl_basis().dim(), 1);
        assert!(a.absolute_zero_divisors(10, 1).found.is_empty());
    }

    #[test]
    fn m2_transpose_validates() {
        let a = m2_transpose(q());
        let r = a.validate().unwrap();
        assert_eq!(r.skew_dim, 1);
        assert_eq!(r.struct_id_tuples, 256);
        let inst = a.instrl_basis();
        assert!(inst.dim() <= 16);
        assert!(a.instrl_is_closed(&inst));
        let f5 = FieldSpec::prime(5).unwrap();
        let r = m2_transpose(f5).absolute_zero_divisors(0, 0);
        assert_eq!(r.mode, ScanMode::Exhaustive);
        assert_eq!(r.checked, 624);
        assert!(r.found.is_empty());
    }

    #[test]
    fn non_involution_is_rejected() {
        let f = q();
        let a = m2_transpose(f);
        let mut j = a.to_json(None);
        // swap E11 and E12 instead of transposing
        j.involution = Matrix::from_i64(
            f,
            &[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]],
        )
        .to_rows();
        assert!(matches!(
            StructurableAlgebra::from_json(&j, None),
            Err(Error::NotInvolution(_))
        ));
    }

    #[test]
    fn perturbed_product_is_rejected() {
        // k[x]/(x^2) with x̄ = -x is associative, hence structurable; x·x = 1 + x is not
        // compatible with the involution.
        let f = q();
        let mult = vec![
            vec![f.one(), f.zero()],
            vec![f.zero(), f.one()],
            vec![f.zero(), f.one()],
            vec![f.zero(), f.zero()],
        ];
        let inv = Matrix::from_i64(f, &[&[1, 0], &[0, -1]]);
        assert!(
            StructurableAlgebra::new(f, vec![f.one(), f.zero()], mult.clone(), inv.clone()).is_ok()
        );
        let mut bad = mult;
        bad[3] = vec![f.one(), f.one()];
        assert!(StructurableAlgebra::new(f, vec![f.one(), f.zero()], bad, inv).is_err());
    }

    #[test]
    fn operator_identities() {
        let a = m2_transpose(q());
        let (_, s) = a.skew_split();
        let one = a.unit().to_vec();
        for i in 0..4 {
            let x = a.basis_vector(i);
            // U_x 1 = T_x x
            assert_eq!(
                a.u_op(&x, &x).mul_vec(&one).unwrap(),
                a.t_op(&x).mul_vec(&x).unwrap()
            );
            assert!(a.psi(&x, &x).iter().all(Scalar::is_zero));
            for j in 0..4 {
                let y = a.basis_vector(j);
                let (e, _) = a.eps_delta(&a.v_op(&x, &y));
                let minus_vyx = a.v_op(&y, &x);
                let mut want = Matrix::zeros(q(), 4, 4);
                add_scaled(&mut want, &q().from_i64(-1), &minus_vyx);
                assert_eq!(e, want);
                let p = a.psi(&x, &y);
                assert!(s.contains(&p));
                let back: Vec<Scalar> = a.psi(&y, &x).iter().map(|c| -c).collect();
                assert_eq!(p, back);
            }
        }
        // ψ(1, s) = -2s and V_{x,y}^δ s = -ψ(x, s y)
        let sk = s.basis()[0].clone();
        let two_s: Vec<Scalar> = sk.iter().map(|c| c * &q().from_i64(-2)).collect();
        assert_eq!(a.psi(&one, &sk), two_s);
        for i in 0..4 {
            for j in 0..4 {
                let (x, y) = (a.basis_vector(i), a.basis_vector(j));
                let d = a.delta(&a.v_op(&x, &y)).mul_vec(&sk).unwrap();
                let want: Vec<Scalar> = a.psi(&x, &a.mul(&sk, &y)).iter().map(|c| -c).collect();
                assert_eq!(d, want);
            }
        }
        // ε of the identity on k is minus the identity; ε and δ of 0 vanish
        let t = trivial(q());
        let id = Matrix::identity(q(), 1);
        assert_eq!(t.eps(&id).get(0, 0), &q().from_i64(-1));
        let z = Matrix::zeros(q(), 4, 4);
        let (e, d) = a.eps_delta(&z);
        assert!(e.is_zero() && d.is_zero());
    }
}
