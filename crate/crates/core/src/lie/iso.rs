//! Partial graded-isomorphism checks between two graded Lie algebras.
//!
//! Isomorphism invariants (block dimensions, dimensions of `[L_i, L_j]`, center, derived
//! algebra, generic ad-ranks) are always compared. An explicit degree-preserving isomorphism
//! is constructed only for small algebras generated by one-dimensional `L_{±1}`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::reduce::{RowReducer, Subspace};
use crate::arith::{Matrix, Scalar};
use crate::lie::{Grading, LieAlgebra};

/// Explicit maps are only sought up to this dimension.
pub const EXPLICIT_MAP_DIM: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedInvariants {
    pub bound: i64,
    pub block_dims: Vec<usize>,
    /// `((i, j), dim [L_i, L_j])` for `i ≤ j`.
    pub bracket_dims: Vec<((i64, i64), usize)>,
    pub center_dim: usize,
    pub derived_dim: usize,
    /// Largest rank of `ad x` over a few seeded random `x ∈ L_d`, per degree.
    pub ad_ranks: Vec<(i64, usize)>,
}

pub fn graded_invariants(alg: &LieAlgebra, g: &Grading, seed: u64) -> GradedInvariants {
    let field = alg.field();
    let n = g.bound();
    let mut bracket_dims = Vec::new();
    for i in -n..=n {
        for j in i..=n {
            let mut red = RowReducer::new(field, alg.dim());
            for a in g.component(i) {
                for b in g.component(j) {
                    let v = alg.bracket_basis(a, b);
                    if !v.is_empty() {
                        red.insert(v);
                    }
                }
            }
            bracket_dims.push(((i, j), red.rank()));
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ad_ranks = (-n..=n)
        .map(|d| {
            let comp = g.component(d);
            let best = (0..3)
                .map(|_| {
                    let mut x = alg.zero();
                    for &i in &comp {
                        x[i] = field.random(&mut rng);
                    }
                    alg.ad_matrix(&x).rank()
                })
                .max()
                .unwrap_or(0);
            (d, best)
        })
        .collect();
    GradedInvariants {
        bound: n,
        block_dims: g.dims(),
        bracket_dims,
        center_dim: alg.center().dim(),
        derived_dim: alg.derived_span().dim(),
        ad_ranks,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum IsoStatus {
    /// A degree-preserving bijection preserving every basis bracket was found and checked.
    ExplicitMap,
    /// All invariants agree; no map was constructed.
    DimsMatchOnly,
    Mismatch,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoReport {
    pub status: IsoStatus,
    pub detail: String,
    pub left: GradedInvariants,
    pub right: GradedInvariants,
    /// Columns are the images of the left basis vectors.
    pub map: Option<Vec<Vec<Scalar>>>,
}

/// Extend an assignment on generators to a linear map `a → b` through left-normed brackets,
/// then check that it is a bijective homomorphism.
pub fn extend_homomorphism(
    a: &LieAlgebra,
    b: &LieAlgebra,
    gens: &[(Vec<Scalar>, Vec<Scalar>)],
) -> Option<Matrix> {
    if a.dim() != b.dim() || a.field() != b.field() {
        return None;
    }
    let field = a.field();
    let n = a.dim();
    let mut red = RowReducer::new(field, n);
    let mut pairs: Vec<(Vec<Scalar>, Vec<Scalar>)> = Vec::new();
    for (x, y) in gens {
        if red.insert_dense(x) {
            pairs.push((x.clone(), y.clone()));
        }
    }
    let mut k = 0;
    while k < pairs.len() && pairs.len() < n {
        let (w, wb) = pairs[k].clone();
        for (x, y) in gens {
            let v = a.bracket(x, &w);
            if red.insert_dense(&v) {
                pairs.push((v, b.bracket(y, &wb)));
            }
        }
        k += 1;
    }
    if pairs.len() < n {
        return None;
    }
    let src = Matrix::from_cols(
        field,
        n,
        &pairs.iter().map(|p| p.0.clone()).collect::<Vec<_>>(),
    )
    .ok()?;
    let dst = Matrix::from_cols(
        field,
        n,
        &pairs.iter().map(|p| p.1.clone()).collect::<Vec<_>>(),
    )
    .ok()?;
    let phi = dst.mul(&src.inverse()?).ok()?;
    if phi.rank() != n {
        return None;
    }
    for i in 0..n {
        for j in i + 1..n {
            let lhs = phi
                .mul_vec(&a.bracket(&a.basis_vector(i), &a.basis_vector(j)))
                .ok()?;
            let rhs = b.bracket(&phi.col(i), &phi.col(j));
            if lhs != rhs {
                return None;
            }
        }
    }
    Some(phi)
}

fn degree_preserving(phi: &Matrix, ga: &Grading, gb: &Grading) -> bool {
    (0..phi.rows())
        .all(|r| (0..phi.cols()).all(|c| phi.get(r, c).is_zero() || ga.degree(c) == gb.degree(r)))
}

/// With `L_1 = k x` and `L_{-1} = k y` on both sides, send `x ↦ x'` and solve for the scalar
/// `c` in `y ↦ c y'` from `[[x,y],x] = λx`, `[[x',y'],x'] = μx'`.
fn rank_one_map(a: &LieAlgebra, ga: &Grading, b: &LieAlgebra, gb: &Grading) -> Option<Matrix> {
    let (xa, ya) = (ga.component(1), ga.component(-1));
    let (xb, yb) = (gb.component(1), gb.component(-1));
    if xa.len() != 1 || ya.len() != 1 || xb.len() != 1 || yb.len() != 1 {
        return None;
    }
    let (x, y) = (a.basis_vector(xa[0]), a.basis_vector(ya[0]));
    let (x2, y2) = (b.basis_vector(xb[0]), b.basis_vector(yb[0]));
    let lambda = a.bracket(&a.bracket(&x, &y), &x)[xa[0]].clone();
    let mu = b.bracket(&b.bracket(&x2, &y2), &x2)[xb[0]].clone();
    let c = lambda.checked_div(&mu).ok()?;
    let y2c: Vec<Scalar> = y2.iter().map(|s| s * &c).collect();
    let phi = extend_homomorphism(a, b, &[(x, x2), (y, y2c)])?;
    degree_preserving(&phi, ga, gb).then_some(phi)
}

/// Compare two graded algebras as far as is feasible.
pub fn compare_graded(
    a: &LieAlgebra,
    ga: &Grading,
    b: &LieAlgebra,
    gb: &Grading,
    seed: u64,
) -> IsoReport {
    let left = graded_invariants(a, ga, seed);
    let right = graded_invariants(b, gb, seed);
    let mismatch = |detail: &str, left: GradedInvariants, right: GradedInvariants| IsoReport {
        status: IsoStatus::Mismatch,
        detail: detail.to_string(),
        left,
        right,
        map: None,
    };
    if a.field() != b.field() {
        return mismatch("different fields", left, right);
    }
    if left.block_dims != right.block_dims {
        return mismatch("block dimensions differ", left, right);
    }
    if left != right {
        return mismatch("bracket invariants differ", left, right);
    }
    if a.dim() <= EXPLICIT_MAP_DIM {
        if let Some(phi) = rank_one_map(a, ga, b, gb) {
            let map = (0..phi.cols()).map(|c| phi.col(c)).collect();
            return IsoReport {
                status: IsoStatus::ExplicitMap,
                detail: "degree-preserving isomorphism found and verified on all basis pairs"
                    .into(),
                left,
                right,
                map: Some(map),
            };
        }
    }
    IsoReport {
        status: IsoStatus::DimsMatchOnly,
        detail: "invariants agree; no explicit map constructed".into(),
        left,
        right,
        map: None,
    }
}

/// Whether `sub` is closed under brackets with itself.
pub fn is_subalgebra(alg: &LieAlgebra, sub: &Subspace) -> bool {
    let basis = sub.basis();
    basis.iter().enumerate().all(|(i, x)| {
        basis[i + 1..]
            .iter()
            .all(|y| sub.contains(&alg.bracket(x, y)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::reduce::SparseVec;
    use crate::arith::FieldSpec;
    use crate::lie::chevalley_algebra;
    use crate::roots::{JSubset, RootSystem, RootType};

    #[test]
    fn rescaled_sl2_is_recognized() {
        let q = FieldSpec::Rationals;
        let l = chevalley_algebra(&RootSystem::new(RootType::A, 1).unwrap(), q).unwrap();
        let g = l.grading(&JSubset::from_labels(1, &[1]).unwrap()).unwrap();
        // basis (x, y, t) with [x,y] = t, [t,x] = 4x, [t,y] = -4y: sl2 with h = t/2
        let upper: Vec<(usize, usize, SparseVec)> = vec![
            (0, 1, vec![(2, q.one())]),
            (0, 2, vec![(0, q.from_i64(-4))]),
            (1, 2, vec![(1, q.from_i64(4))]),
        ];
        let b = LieAlgebra::from_upper(q, vec!["x".into(), "y".into(), "t".into()], upper).unwrap();
        let gb = Grading::new(&b, vec![1, -1, 0]).unwrap();
        let r = compare_graded(&l.algebra, &g, &b, &gb, 7);
        assert_eq!(r.status, IsoStatus::ExplicitMap, "{}", r.detail);
    }

    #[test]
    fn abelian_is_not_sl2() {
        let q = FieldSpec::Rationals;
        let l = chevalley_algebra(&RootSystem::new(RootType::A, 1).unwrap(), q).unwrap();
        let g = l.grading(&JSubset::from_labels(1, &[1]).unwrap()).unwrap();
        let b =
            LieAlgebra::from_upper(q, vec!["x".into(), "y".into(), "t".into()], vec![]).unwrap();
        let gb = Grading::new(&b, vec![1, -1, 0]).unwrap();
        assert_eq!(
            compare_graded(&l.algebra, &g, &b, &gb, 7).status,
            IsoStatus::Mismatch
        );
    }

    #[test]
    fn cartan_is_a_subalgebra() {
        let l = chevalley_algebra(
            &RootSystem::new(RootType::A, 2).unwrap(),
            FieldSpec::Rationals,
        )
        .unwrap();
        let h: Vec<Vec<Scalar>> = l
            .cartan_indices()
            .iter()
            .map(|&i| l.algebra.basis_vector(i))
            .collect();
        let s = Subspace::span(l.field(), l.dim(), &h);
        assert!(is_subalgebra(&l.algebra, &s));
    }
}
