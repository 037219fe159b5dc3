//! Kantor pairs `(L_1, L_{-1})` of a 5-graded Lie algebra with `{x y z} = -[[x,y],z]`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::reduce::SparseVec;
use crate::arith::{self, Scalar};
use crate::error::{Error, Result};
use crate::lie::{Grading, LieAlgebra};

/// Axioms are checked on every basis tuple when both sides have at most this dimension.
pub const EXHAUSTIVE_PAIR_DIM: usize = 6;

#[derive(Clone, Debug)]
pub struct KantorPair {
    algebra: LieAlgebra,
    plus: Vec<usize>,
    minus: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KantorReport {
    pub dims: (usize, usize),
    pub exhaustive: bool,
    pub seed: Option<u64>,
    pub kp1_checked: u64,
    pub kp2_checked: u64,
    /// First failing identity, with the tuple of basis indices or sample number.
    pub failure: Option<String>,
}

impl KantorReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none()
    }
}

/// The pair `(L_1, L_{-1})`. Fails with `EmptyPair` when both are zero.
pub fn pair_from_grading(alg: &LieAlgebra, g: &Grading) -> Result<KantorPair> {
    if g.bound() > 2 {
        return Err(Error::TooWideGrading(g.bound()));
    }
    let (plus, minus) = (g.component(1), g.component(-1));
    if plus.is_empty() && minus.is_empty() {
        return Err(Error::EmptyPair);
    }
    Ok(KantorPair {
        algebra: alg.clone(),
        plus,
        minus,
    })
}

fn side_sign(sigma: i8) -> usize {
    usize::from(sigma < 0)
}

impl KantorPair {
    pub fn dims(&self) -> (usize, usize) {
        (self.plus.len(), self.minus.len())
    }

    /// Basis indices in the ambient algebra of `K_σ`.
    pub fn side(&self, sigma: i8) -> &[usize] {
        if side_sign(sigma) == 0 {
            &self.plus
        } else {
            &self.minus
        }
    }

    pub fn algebra(&self) -> &LieAlgebra {
        &self.algebra
    }

    /// Embed coordinates on `K_σ` into the ambient algebra.
    pub fn embed(&self, sigma: i8, x: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.algebra.zero();
        for (k, &i) in self.side(sigma).iter().enumerate() {
            v[i] = x[k].clone();
        }
        v
    }

    /// Coordinates on `K_σ` of an ambient vector.
    pub fn project(&self, sigma: i8, v: &[Scalar]) -> Vec<Scalar> {
        self.side(sigma).iter().map(|&i| v[i].clone()).collect()
    }

    /// `{x y z} = -[[x,y],z]` on ambient vectors.
    fn triple_ambient(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let alg = &self.algebra;
        alg.bracket(z, &alg.bracket(x, y))
    }

    /// `{x y z}` for `x, z ∈ K_σ` and `y ∈ K_{-σ}`, in coordinates on `K_σ`.
    pub fn triple(&self, sigma: i8, x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> Vec<Scalar> {
        let t = self.triple_ambient(
            &self.embed(sigma, x),
            &self.embed(-sigma, y),
            &self.embed(sigma, z),
        );
        self.project(sigma, &t)
    }

    /// `{e_a f_b e_c}` for all basis triples of side `σ`, as sparse coordinate vectors.
    pub fn table(&self, sigma: i8) -> Vec<((usize, usize, usize), SparseVec)> {
        let (p, m) = (self.side(sigma), self.side(-sigma));
        let mut out = Vec::new();
        for a in 0..p.len() {
            for b in 0..m.len() {
                let ab = self
                    .algebra
                    .bracket_sparse(&vec![(p[a], self.one())], &vec![(m[b], self.one())]);
                for c in 0..p.len() {
                    let v = self.algebra.bracket_sparse(&vec![(p[c], self.one())], &ab);
                    let coords = arith::reduce::from_dense(&self.project(
                        sigma,
                        &arith::reduce::to_dense(self.algebra.field(), self.algebra.dim(), &v),
                    ));
                    out.push(((a, b, c), coords));
                }
            }
        }
        out
    }

    fn one(&self) -> Scalar {
        self.algebra.field().one()
    }

    /// KP1: `[V_{x,y}, V_{z,w}] u = V_{{x y z},w} u - V_{z,{y x w}} u`, all in ambient form.
    fn kp1(&self, x: &[Scalar], y: &[Scalar], z: &[Scalar], w: &[Scalar], u: &[Scalar]) -> bool {
        let t = |a: &[Scalar], b: &[Scalar], c: &[Scalar]| self.triple_ambient(a, b, c);
        let lhs = sub(&t(x, y, &t(z, w, u)), &t(z, w, &t(x, y, u)));
        let rhs = sub(&t(&t(x, y, z), w, u), &t(z, &t(y, x, w), u));
        lhs == rhs
    }

    /// KP2: `K_{a,b} V_{x,y} z + V_{y,x} K_{a,b} z = K_{K_{a,b} x, y} z` with
    /// `K_{a,b} z = {a z b} - {b z a}`.
    fn kp2(&self, a: &[Scalar], b: &[Scalar], x: &[Scalar], y: &[Scalar], z: &[Scalar]) -> bool {
        let t = |p: &[Scalar], q: &[Scalar], r: &[Scalar]| self.triple_ambient(p, q, r);
        let k = |p: &[Scalar], q: &[Scalar], r: &[Scalar]| sub(&t(p, r, q), &t(q, r, p));
        let lhs = add(&k(a, b, &t(x, y, z)), &t(y, x, &k(a, b, z)));
        let rhs = k(&k(a, b, x), y, z);
        lhs == rhs
    }

    /// Check KP1 and KP2 for both `σ`: on every basis tuple when both sides have dimension
    /// at most [`EXHAUSTIVE_PAIR_DIM`], otherwise on `samples` seeded random tuples per `σ`.
    pub fn check_axioms(&self, samples: u64, seed: u64) -> KantorReport {
        let (dp, dm) = self.dims();
        let exhaustive = dp.max(dm) <= EXHAUSTIVE_PAIR_DIM;
        let mut report = KantorReport {
            dims: (dp, dm),
            exhaustive,
            seed: (!exhaustive).then_some(seed),
            kp1_checked: 0,
            kp2_checked: 0,
            failure: None,
        };
        for sigma in [1i8, -1] {
            let s = self.side(sigma).to_vec();
            let m = self.side(-sigma).to_vec();
            if exhaustive {
                let e = |i: usize| self.algebra.basis_vector(i);
                for (&x, &z, &u) in triples(&s) {
                    for (&y, &w) in pairs(&m) {
                        report.kp1_checked += 1;
                        if !self.kp1(&e(x), &e(y), &e(z), &e(w), &e(u)) {
                            report.failure = Some(format!(
                                "KP1 fails at sigma={sigma} (x,y,z,w,u)=({x},{y},{z},{w},{u})"
                            ));
                            return report;
                        }
                    }
                }
                for (&a, &b, &y) in triples(&s) {
                    for (&x, &z) in pairs(&m) {
                        report.kp2_checked += 1;
                        if !self.kp2(&e(a), &e(b), &e(x), &e(y), &e(z)) {
                            report.failure = Some(format!(
                                "KP2 fails at sigma={sigma} (a,b,x,y,z)=({a},{b},{x},{y},{z})"
                            ));
                            return report;
                        }
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed ^ u64::from(sigma < 0));
                let field = self.algebra.field();
                let mut rand_in = |idx: &[usize]| {
                    let mut v = self.algebra.zero();
                    for &i in idx {
                        v[i] = field.random(&mut rng);
                    }
                    v
                };
                for k in 0..samples {
                    let (x, z, u) = (rand_in(&s), rand_in(&s), rand_in(&s));
                    let (y, w) = (rand_in(&m), rand_in(&m));
                    report.kp1_checked += 1;
                    if !self.kp1(&x, &y, &z, &w, &u) {
                        report.failure = Some(format!("KP1 fails at sigma={sigma}, sample {k}"));
                        return report;
                    }
                    report.kp2_checked += 1;
                    if !self.kp2(&x, &z, &y, &u, &w) {
                        report.failure = Some(format!("KP2 fails at sigma={sigma}, sample {k}"));
                        return report;
                    }
                }
            }
        }
        report
    }
}

fn sub(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

fn add(a: &[Scalar], b: &[Scalar]) -> Vec<Scalar> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn pairs(v: &[usize]) -> impl Iterator<Item = (&usize, &usize)> {
    v.iter().flat_map(move |a| v.iter().map(move |b| (a, b)))
}

fn triples(v: &[usize]) -> impl Iterator<Item = (&usize, &usize, &usize)> {
    v.iter()
        .flat_map(move |a| v.iter().flat_map(move |b| v.iter().map(move |c| (a, b, c))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::lie::chevalley_algebra;
    use crate::roots::{JSubset, RootSystem, RootType};
    use crate::structurable::{examples, kappa};

    fn pair(ty: RootType, n: usize, j: &[usize], field: FieldSpec) -> KantorPair {
        let l = chevalley_algebra(&RootSystem::new(ty, n).unwrap(), field).unwrap();
        let g = l.grading(&JSubset::from_labels(n, j).unwrap()).unwrap();
        pair_from_grading(&l.algebra, &g).unwrap()
    }

    #[test]
    fn sl2_pair() {
        let q = FieldSpec::Rationals;
        let p = pair(RootType::A, 1, &[1], q);
        assert_eq!(p.dims(), (1, 1));
        // {e f e} = -[[e,f],e] = -[h,e] = -2e
        assert_eq!(
            p.triple(1, &[q.one()], &[q.one()], &[q.one()]),
            vec![q.from_i64(-2)]
        );
        assert_eq!(
            p.triple(-1, &[q.one()], &[q.one()], &[q.one()]),
            vec![q.from_i64(-2)]
        );
        assert!(p.check_axioms(0, 0).passed());
    }

    #[test]
    fn g2_pair_exhaustive() {
        let p = pair(RootType::G, 2, &[2], FieldSpec::Rationals);
        assert_eq!(p.dims(), (4, 4));
        let r = p.check_axioms(0, 0);
        assert!(r.exhaustive && r.passed(), "{r:?}");
        assert_eq!(r.kp1_checked, 2 * 64 * 16);
        assert_eq!(p.table(1).len(), 64);
    }

    #[test]
    fn a3_outer_pair_over_gf5() {
        let p = pair(RootType::A, 3, &[1, 3], FieldSpec::prime(5).unwrap());
        let r = p.check_axioms(100, 11);
        assert!(r.passed(), "{r:?}");
    }

    #[test]
    fn sampled_mode_on_a_wide_side() {
        let p = pair(RootType::D, 5, &[1], FieldSpec::prime(101).unwrap());
        assert!(p.dims().0 > EXHAUSTIVE_PAIR_DIM);
        let r = p.check_axioms(100, 3);
        assert!(!r.exhaustive && r.passed(), "{r:?}");
        assert_eq!(r.kp1_checked, 200);
    }

    #[test]
    fn trivial_grading_has_empty_pair() {
        let l = chevalley_algebra(
            &RootSystem::new(RootType::A, 1).unwrap(),
            FieldSpec::Rationals,
        )
        .unwrap();
        let g = Grading::new(&l.algebra, vec![0, 0, 0]).unwrap();
        assert!(matches!(
            pair_from_grading(&l.algebra, &g),
            Err(Error::EmptyPair)
        ));
    }

    #[test]
    fn pair_of_kappa_matches_v_operators() {
        let q = FieldSpec::Rationals;
        let a = examples::m2_transpose(q);
        let k = kappa(&a).unwrap();
        let p = pair_from_grading(&k.algebra, &k.grading).unwrap();
        assert!(p.check_axioms(0, 0).passed());
        for x in 0..4 {
            for y in 0..4 {
                let v = a.v_op(&a.basis_vector(x), &a.basis_vector(y));
                for z in 0..4 {
                    let t = p.triple(
                        1,
                        &a.basis_vector(x),
                        &a.basis_vector(y),
                        &a.basis_vector(z),
                    );
                    let want: Vec<Scalar> = v.col(z).iter().map(|s| -s).collect();
                    assert_eq!(t, want);
                }
            }
        }
    }
}
