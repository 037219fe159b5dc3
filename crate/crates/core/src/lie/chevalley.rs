//! Chevalley Lie algebras `L_Z ⊗ k`.
//!
//! Basis: `e_α` for the roots in `RootSystem` order, then `h_1, …, h_r` (simple coroots).

use std::sync::Arc;

use crate::arith::reduce::SparseVec;
use crate::arith::{FieldSpec, Matrix, Scalar};
use crate::error::{Error, Result};
use crate::lie::grading::{Grading, GradingDerivation};
use crate::lie::LieAlgebra;
use crate::roots::{ChevalleyConstants, GradingWidth, JSubset, RootSystem};

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub algebra: LieAlgebra,
    pub roots: Arc<RootSystem>,
    pub constants: Arc<ChevalleyConstants>,
}

pub fn root_label(r: &[i64]) -> String {
    let mut out = String::new();
    for (i, &c) in r.iter().enumerate().filter(|(_, &c)| c != 0) {
        if c < 0 {
            out.push('-');
        } else if !out.is_empty() {
            out.push('+');
        }
        if c.abs() != 1 {
            out.push_str(&c.abs().to_string());
        }
        out.push_str(&format!("a{}", i + 1));
    }
    format!("e[{out}]")
}

pub fn chevalley_algebra(rs: &RootSystem, field: FieldSpec) -> Result<ChevalleyAlgebra> {
    let constants = ChevalleyConstants::load_or_compute(rs);
    ChevalleyAlgebra::with_constants(Arc::new(rs.clone()), Arc::new(constants), field)
}

impl ChevalleyAlgebra {
    pub fn with_constants(
        rs: Arc<RootSystem>,
        constants: Arc<ChevalleyConstants>,
        field: FieldSpec,
    ) -> Result<Self> {
        if let FieldSpec::Prime(p) = field {
            if p == 2 || p == 3 {
                return Err(Error::BadCharacteristic(format!("GF({p})")));
            }
        }
        let nr = rs.num_roots();
        let r = rs.rank();
        let dim = nr + r;
        let s = |x: i64| field.from_i64(x);
        let mut upper: Vec<(usize, usize, SparseVec)> = Vec::new();
        for a in 0..nr {
            for b in a + 1..nr {
                if b == rs.negative(a) {
                    let co = rs.coroot(a);
                    let v: SparseVec = co
                        .iter()
                        .enumerate()
                        .filter(|(_, &c)| c != 0)
                        .map(|(i, &c)| (nr + i, s(c)))
                        .collect();
                    upper.push((a, b, v));
                } else if let Some(sum) = rs.sum(a, b) {
                    upper.push((a, b, vec![(sum, s(constants.get(a, b)))]));
                }
            }
        }
        for a in 0..nr {
            for i in 0..r {
                // [e_α, h_i] = -<α, α_i^∨> e_α
                let c = rs.pairing(rs.root(a), i);
                if c != 0 {
                    upper.push((a, nr + i, vec![(a, s(-c))]));
                }
            }
        }
        let mut labels: Vec<String> = rs.roots().iter().map(|x| root_label(x)).collect();
        labels.extend((1..=r).map(|i| format!("h{i}")));
        debug_assert_eq!(labels.len(), dim);
        let mut generators: Vec<usize> = (0..r).map(|i| rs.simple(i)).collect();
        generators.extend((0..r).map(|i| rs.negative(rs.simple(i))));
        let algebra = LieAlgebra::from_upper(field, labels, upper)?.with_generators(generators);
        Ok(ChevalleyAlgebra {
            algebra,
            roots: rs,
            constants,
        })
    }

    pub fn field(&self) -> FieldSpec {
        self.algebra.field()
    }

    pub fn dim(&self) -> usize {
        self.algebra.dim()
    }

    pub fn root_vector(&self, root: usize) -> usize {
        root
    }

    pub fn cartan_index(&self, i: usize) -> usize {
        self.roots.num_roots() + i
    }

    pub fn cartan_indices(&self) -> Vec<usize> {
        (0..self.roots.rank())
            .map(|i| self.cartan_index(i))
            .collect()
    }

    /// Degree of `e_α` is the level of α; the Cartan sits in degree 0.
    pub fn grading(&self, j: &JSubset) -> Result<Grading> {
        let rs = &self.roots;
        if rs.grading_width(j) == GradingWidth::TooWide {
            return Err(Error::TooWideGrading(rs.max_level(j)));
        }
        let mut degrees = rs.levels(j);
        degrees.extend(std::iter::repeat_n(0, rs.rank()));
        Grading::new(&self.algebra, degrees)
    }

    /// Solve `α_j(h) = [j ∈ J]` for `h` in the Cartan subalgebra.
    ///
    /// Any element acting as the grading derivation differs from such an `h` by a central
    /// element, so an unsolvable system means no element of the algebra does.
    pub fn grading_derivation(&self, j: &JSubset) -> GradingDerivation {
        let rs = &self.roots;
        let r = rs.rank();
        let field = self.field();
        // rows: simple root j; columns: h_i; entry α_j(h_i) = a_ij
        let rows: Vec<Vec<Scalar>> = (0..r)
            .map(|jj| (0..r).map(|i| field.from_i64(rs.cartan()[i][jj])).collect())
            .collect();
        let m = Matrix::from_rows(field, rows).expect("square");
        let rhs: Vec<Scalar> = (0..r)
            .map(|jj| {
                if j.contains(jj) {
                    field.one()
                } else {
                    field.zero()
                }
            })
            .collect();
        match m.solve(&rhs).expect("shapes agree").solution() {
            Some(c) => {
                let mut z = self.algebra.zero();
                for (i, ci) in c.into_iter().enumerate() {
                    z[self.cartan_index(i)] = ci;
                }
                GradingDerivation::InAlgebra(z)
            }
            None => {
                let mut degrees = rs.levels(j);
                degrees.extend(std::iter::repeat_n(0, r));
                GradingDerivation::OuterDiagonal(degrees)
            }
        }
    }

    /// Sum of the root vectors of level 1.
    pub fn level_one_sum(&self, j: &JSubset) -> Vec<Scalar> {
        let mut v = self.algebra.zero();
        for a in 0..self.roots.num_roots() {
            if self.roots.level(j, a) == 1 {
                v[a] = self.field().one();
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::RootType;

    fn build(ty: RootType, n: usize, field: FieldSpec) -> ChevalleyAlgebra {
        chevalley_algebra(&RootSystem::new(ty, n).unwrap(), field).unwrap()
    }

    #[test]
    fn sl2_relations() {
        let q = FieldSpec::Rationals;
        let l = build(RootType::A, 1, q);
        // basis e, f, h
        assert_eq!(l.dim(), 3);
        assert_eq!(l.algebra.bracket_basis(2, 0), &vec![(0, q.from_i64(2))]);
        assert_eq!(l.algebra.bracket_basis(2, 1), &vec![(1, q.from_i64(-2))]);
        assert_eq!(l.algebra.bracket_basis(0, 1), &vec![(2, q.one())]);
    }

    #[test]
    fn g2_over_gf5_jacobi() {
        let l = build(RootType::G, 2, FieldSpec::prime(5).unwrap());
        assert_eq!(l.dim(), 14);
        assert!(l.algebra.check_jacobi_exhaustive().passed());
    }

    #[test]
    fn jacobi_for_small_types_over_q() {
        for (ty, n) in [
            (RootType::A, 3),
            (RootType::B, 3),
            (RootType::C, 3),
            (RootType::D, 4),
            (RootType::G, 2),
        ] {
            let l = build(ty, n, FieldSpec::Rationals);
            assert!(l.algebra.check_jacobi_exhaustive().passed(), "{ty}{n}");
        }
    }

    #[test]
    fn center_of_sl5_mod_5() {
        let l = build(RootType::A, 4, FieldSpec::prime(5).unwrap());
        assert_eq!(l.dim(), 24);
        assert_eq!(l.algebra.center().dim(), 1);
        let lq = build(RootType::A, 4, FieldSpec::Rationals);
        assert_eq!(lq.algebra.center().dim(), 0);
    }

    #[test]
    fn sl3_zeta_over_gf5() {
        let f5 = FieldSpec::prime(5).unwrap();
        let l = build(RootType::A, 2, f5);
        let j = JSubset::from_labels(2, &[1]).unwrap();
        match l.grading_derivation(&j) {
            GradingDerivation::InAlgebra(z) => {
                // α1(h) = 1, α2(h) = 0 gives h = (2h1 + h2)/3 = 4h1 + 2h2 mod 5.
                assert_eq!(z[l.cartan_index(0)], f5.from_i64(4));
                assert_eq!(z[l.cartan_index(1)], f5.from_i64(2));
            }
            other => panic!("expected InAlgebra, got {other:?}"),
        }
    }

    #[test]
    fn a4_gf5_zeta_representability() {
        let f5 = FieldSpec::prime(5).unwrap();
        let l = build(RootType::A, 4, f5);
        let outer = JSubset::from_labels(4, &[1]).unwrap();
        assert!(matches!(
            l.grading_derivation(&outer),
            GradingDerivation::OuterDiagonal(_)
        ));
        for labels in [[1, 4], [2, 3]] {
            let j = JSubset::from_labels(4, &labels).unwrap();
            assert!(matches!(
                l.grading_derivation(&j),
                GradingDerivation::InAlgebra(_)
            ));
        }
    }
}
