//! Truncated exponentials `e_σ(x,s) = Σ_{i≤4} ad(x+s)^i / i!` and the algebraicity check.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::fp::{self, FpMat};
use crate::arith::{FieldSpec, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::lie::{Grading, LieAlgebra};

/// Exhaustive enumeration is refused above this many `(x, s)` pairs.
pub const EXHAUSTIVE_LIMIT: u64 = 1_000_000;

fn check_homogeneous(g: &Grading, x: &[Scalar], s: &[Scalar]) -> Result<i64> {
    if g.bound() > 2 {
        return Err(Error::TooWideGrading(g.bound()));
    }
    let dx = g
        .homogeneous_degree(x)
        .ok_or_else(|| Error::NotHomogeneous("x".into()))?;
    let ds = g
        .homogeneous_degree(s)
        .ok_or_else(|| Error::NotHomogeneous("s".into()))?;
    let x_zero = x.iter().all(Scalar::is_zero);
    let s_zero = s.iter().all(Scalar::is_zero);
    let sigma = match (x_zero, s_zero) {
        (true, true) => return Ok(0),
        (false, _) => dx,
        (true, false) => ds / 2,
    };
    if sigma.abs() != 1 || (!x_zero && dx != sigma) || (!s_zero && ds != 2 * sigma) {
        return Err(Error::NotHomogeneous(format!(
            "x must have degree ±1 and s twice that degree (got {dx}, {ds})"
        )));
    }
    Ok(sigma)
}

/// `e_σ(x, s)` as a `dim × dim` matrix.
pub fn truncated_exp(alg: &LieAlgebra, g: &Grading, x: &[Scalar], s: &[Scalar]) -> Result<Matrix> {
    check_homogeneous(g, x, s)?;
    let field = alg.field();
    let y: Vec<Scalar> = x.iter().zip(s).map(|(a, b)| a + b).collect();
    let ad = alg.ad_matrix(&y);
    let mut out = Matrix::identity(field, alg.dim());
    let mut power = Matrix::identity(field, alg.dim());
    let mut fact = field.one();
    for i in 1..=4 {
        power = power.mul(&ad)?;
        fact = &fact * &field.from_i64(i);
        let c = fact.inv()?;
        for r in 0..alg.dim() {
            for k in 0..alg.dim() {
                let v = power.get(r, k);
                if !v.is_zero() {
                    let nv = out.get(r, k) + &(v * &c);
                    out.set(r, k, nv);
                }
            }
        }
    }
    Ok(out)
}

fn truncated_exp_fp(alg: &LieAlgebra, y: &[u64]) -> FpMat {
    let p = fp::modulus(alg.field()).expect("prime field");
    let ad = alg.ad_fp(y);
    let n = alg.dim();
    let mut out = FpMat::identity(p, n);
    let mut power = FpMat::identity(p, n);
    let mut fact = 1u64;
    for i in 1..=4u64 {
        power = power.mul(&ad);
        fact = fact * i % p;
        out.add_scaled(fp::inv_mod(fact, p), &power);
    }
    out
}

/// Basis indices used for the bracket-preservation check: known generators, else the basis.
fn check_set(alg: &LieAlgebra) -> Vec<usize> {
    alg.generators()
        .map(<[usize]>::to_vec)
        .unwrap_or_else(|| (0..alg.dim()).collect())
}

/// `E - I` must map `L_d` into degrees strictly beyond `d` in the direction σ; then `E` is
/// unipotent and hence invertible.
fn unipotent_shape(
    g: &Grading,
    sigma: i64,
    entry_is_identity: impl Fn(usize, usize) -> bool,
) -> bool {
    let n = g.degrees().len();
    (0..n).all(|r| {
        (0..n).all(|c| {
            let shifts = sigma != 0 && (g.degree(r) - g.degree(c)) * sigma > 0;
            shifts || entry_is_identity(r, c)
        })
    })
}

/// Whether `E` is a Lie automorphism: invertible and `E[g, b] = [Eg, Eb]` for `g` in a
/// generating set and every basis vector `b`. The set of `g` satisfying the identity for
/// all `b` is a subalgebra, so generators suffice.
pub fn is_automorphism(alg: &LieAlgebra, g: &Grading, sigma: i64, e: &Matrix) -> bool {
    let shape_ok = unipotent_shape(g, sigma, |r, c| {
        let v = e.get(r, c);
        if r == c {
            v.is_one()
        } else {
            v.is_zero()
        }
    });
    if !shape_ok {
        return false;
    }
    let n = alg.dim();
    for gi in check_set(alg) {
        let eg = e.col(gi);
        let m = alg.ad_matrix(&eg);
        let lhs = m.mul(e).expect("square");
        for b in 0..n {
            let mut rhs = alg.zero();
            for (l, c) in alg.bracket_basis(gi, b) {
                for r in 0..n {
                    let v = e.get(r, *l);
                    if !v.is_zero() {
                        rhs[r] += &(c * v);
                    }
                }
            }
            if (0..n).any(|r| lhs.get(r, b) != &rhs[r]) {
                return false;
            }
        }
    }
    true
}

fn is_automorphism_fp(alg: &LieAlgebra, g: &Grading, sigma: i64, e: &FpMat) -> bool {
    let shape_ok = unipotent_shape(g, sigma, |r, c| e.get(r, c) == u64::from(r == c));
    if !shape_ok {
        return false;
    }
    let n = alg.dim();
    let p = e.p;
    for gi in check_set(alg) {
        let eg = e.col(gi);
        let lhs = alg.ad_fp(&eg).mul(e);
        for b in 0..n {
            let mut rhs = vec![0u64; n];
            for (l, c) in alg.bracket_basis(gi, b) {
                let c = fp::residue(c);
                for (r, x) in rhs.iter_mut().enumerate() {
                    *x = (*x + c * e.get(r, *l)) % p;
                }
            }
            if (0..n).any(|r| lhs.get(r, b) != rhs[r]) {
                return false;
            }
        }
    }
    true
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    Sampled { samples: u64, seed: u64 },
    Exhaustive,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub sigma: i64,
    pub x: Vec<Scalar>,
    pub s: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlgebraicReport {
    pub field: FieldSpec,
    pub mode: SampleMode,
    pub checked: u64,
    pub passed: bool,
    pub counterexample: Option<Counterexample>,
    pub warning: Option<String>,
}

fn random_in(field: FieldSpec, n: usize, support: &[usize], rng: &mut ChaCha8Rng) -> Vec<Scalar> {
    let mut v = field.zeros(n);
    for &i in support {
        v[i] = field.random(rng);
    }
    v
}

/// The `k`-th element of `span(support)` over a finite field, by base-`p` digits.
fn enumerate_in(field: FieldSpec, n: usize, support: &[usize], mut k: u64) -> Vec<Scalar> {
    let p = field.order().expect("finite field");
    let mut v = field.zeros(n);
    for &i in support {
        v[i] = field.element(k % p);
        k /= p;
    }
    v
}

fn check_pair(
    alg: &LieAlgebra,
    g: &Grading,
    sigma: i64,
    x: &[Scalar],
    s: &[Scalar],
) -> Result<bool> {
    let sigma_eff = check_homogeneous(g, x, s)?;
    let sigma = if sigma_eff == 0 { sigma } else { sigma_eff };
    match alg.field() {
        FieldSpec::Prime(_) => {
            let y: Vec<u64> = x
                .iter()
                .zip(s)
                .map(|(a, b)| fp::residue(&(a + b)))
                .collect();
            let e = truncated_exp_fp(alg, &y);
            Ok(is_automorphism_fp(alg, g, sigma, &e))
        }
        FieldSpec::Rationals => {
            let e = truncated_exp(alg, g, x, s)?;
            Ok(is_automorphism(alg, g, sigma, &e))
        }
    }
}

/// Test whether every sampled (or every) `e_σ(x,s)` is an automorphism.
///
/// Sample `i` uses σ = +1 for even `i` and -1 for odd `i`, with its own RNG stream so the
/// outcome does not depend on scheduling.
pub fn is_algebraic(alg: &LieAlgebra, g: &Grading, mode: SampleMode) -> Result<AlgebraicReport> {
    if g.bound() > 2 {
        return Err(Error::TooWideGrading(g.bound()));
    }
    let field = alg.field();
    let n = alg.dim();
    let comp = |d: i64| g.component(d);
    let (checked, failure) = match mode {
        SampleMode::Sampled { samples, seed } => {
            let failure = (0..samples).into_par_iter().find_map_first(|i| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(i);
                let sigma = if i % 2 == 0 { 1 } else { -1 };
                let x = random_in(field, n, &comp(sigma), &mut rng);
                let s = random_in(field, n, &comp(2 * sigma), &mut rng);
                match check_pair(alg, g, sigma, &x, &s) {
                    Ok(true) => None,
                    _ => Some(Counterexample { sigma, x, s }),
                }
            });
            (samples, failure)
        }
        SampleMode::Exhaustive => {
            let p = field
                .order()
                .ok_or_else(|| Error::Unsupported("exhaustive mode needs a finite field".into()))?;
            let mut total = 0u64;
            let mut failure = None;
            for sigma in [1i64, -1] {
                let (cx, cs) = (comp(sigma), comp(2 * sigma));
                let count = (p as u128).pow((cx.len() + cs.len()) as u32);
                if count > EXHAUSTIVE_LIMIT as u128 {
                    return Err(Error::Unsupported(format!(
                        "{count} pairs exceed the exhaustive limit {EXHAUSTIVE_LIMIT}"
                    )));
                }
                let px = p.pow(cx.len() as u32);
                let count = count as u64;
                total += count;
                failure = (0..count).into_par_iter().find_map_first(|k| {
                    let x = enumerate_in(field, n, &cx, k % px);
                    let s = enumerate_in(field, n, &cs, k / px);
                    match check_pair(alg, g, sigma, &x, &s) {
                        Ok(true) => None,
                        _ => Some(Counterexample { sigma, x, s }),
                    }
                });
                if failure.is_some() {
                    break;
                }
            }
            (total, failure)
        }
    };
    let warning =
        (checked == 0).then(|| "no samples were checked; the pass is vacuous".to_string());
    Ok(AlgebraicReport {
        field,
        mode,
        checked,
        passed: failure.is_none(),
        counterexample: failure,
        warning,
    })
}
