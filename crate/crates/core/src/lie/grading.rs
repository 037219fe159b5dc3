//! Z-gradings by an integer degree per basis vector, and grading derivations.

use serde::{Deserialize, Serialize};

use crate::arith::reduce::RowReducer;
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::lie::LieAlgebra;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grading {
    degrees: Vec<i64>,
    bound: i64,
}

impl Grading {
    /// Checks `[L_i, L_j] ⊆ L_{i+j}` on every basis pair.
    pub fn new(alg: &LieAlgebra, degrees: Vec<i64>) -> Result<Self> {
        if degrees.len() != alg.dim() {
            return Err(Error::DimensionMismatch(
                "one degree per basis vector".into(),
            ));
        }
        for i in 0..alg.dim() {
            for j in i + 1..alg.dim() {
                let d = degrees[i] + degrees[j];
                if alg
                    .bracket_basis(i, j)
                    .iter()
                    .any(|(k, _)| degrees[*k] != d)
                {
                    return Err(Error::GradingMismatch(i, j));
                }
            }
        }
        let bound = degrees.iter().map(|d| d.abs()).max().unwrap_or(0);
        Ok(Grading { degrees, bound })
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn degree(&self, i: usize) -> i64 {
        self.degrees[i]
    }

    /// Smallest `n` with `L_i = 0` for `|i| > n`.
    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn is_trivial(&self) -> bool {
        self.bound == 0
    }

    /// Basis indices of degree `d`.
    pub fn component(&self, d: i64) -> Vec<usize> {
        (0..self.degrees.len())
            .filter(|&i| self.degrees[i] == d)
            .collect()
    }

    /// Dimensions of `L_{-n}, …, L_n`.
    pub fn dims(&self) -> Vec<usize> {
        (-self.bound..=self.bound)
            .map(|d| self.component(d).len())
            .collect()
    }

    /// Dimensions of `L_{-n}, …, L_n` for a fixed `n` (zero-padded).
    pub fn dims_with_bound(&self, n: i64) -> Vec<usize> {
        (-n..=n).map(|d| self.component(d).len()).collect()
    }

    /// Degree of a vector if it is homogeneous (zero counts as degree 0).
    pub fn homogeneous_degree(&self, v: &[Scalar]) -> Option<i64> {
        let mut deg = None;
        for (i, s) in v.iter().enumerate() {
            if s.is_zero() {
                continue;
            }
            match deg {
                None => deg = Some(self.degrees[i]),
                Some(d) if d != self.degrees[i] => return None,
                _ => {}
            }
        }
        Some(deg.unwrap_or(0))
    }
}

/// The map `x ↦ i·x` on `L_i`, realized by an element of the algebra when possible.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum GradingDerivation {
    InAlgebra(Vec<Scalar>),
    OuterDiagonal(Vec<i64>),
}

impl GradingDerivation {
    pub fn is_in_algebra(&self) -> bool {
        matches!(self, GradingDerivation::InAlgebra(_))
    }

    pub fn element(&self) -> Option<&[Scalar]> {
        match self {
            GradingDerivation::InAlgebra(z) => Some(z),
            GradingDerivation::OuterDiagonal(_) => None,
        }
    }

    pub fn apply(&self, alg: &LieAlgebra, g: &Grading, x: &[Scalar]) -> Vec<Scalar> {
        match self {
            GradingDerivation::InAlgebra(z) => alg.bracket(z, x),
            GradingDerivation::OuterDiagonal(_) => x
                .iter()
                .enumerate()
                .map(|(i, s)| s * &alg.field().from_i64(g.degree(i)))
                .collect(),
        }
    }

    /// `ζ·e_b = deg(b)·e_b` for every basis vector.
    pub fn verify(&self, alg: &LieAlgebra, g: &Grading) -> bool {
        (0..alg.dim()).all(|b| {
            let e = alg.basis_vector(b);
            let got = self.apply(alg, g, &e);
            let mut want = alg.zero();
            want[b] = alg.field().from_i64(g.degree(b));
            got == want
        })
    }
}

/// Search `L_0` for an element acting as the grading derivation.
pub fn grading_derivation(alg: &LieAlgebra, g: &Grading) -> GradingDerivation {
    let zero_part = g.component(0);
    let m = zero_part.len();
    let field = alg.field();
    // Unknown coefficients on L_0, plus a right-hand-side column at index m.
    let mut red = RowReducer::new(field, m + 1);
    for b in 0..alg.dim() {
        let mut rows: std::collections::BTreeMap<usize, Vec<(usize, Scalar)>> = Default::default();
        for (col, &i) in zero_part.iter().enumerate() {
            for (k, c) in alg.bracket_basis(i, b) {
                rows.entry(*k).or_default().push((col, c.clone()));
            }
        }
        let d = g.degree(b);
        if d != 0 {
            rows.entry(b).or_default();
        }
        for (k, mut row) in rows {
            if k == b && d != 0 {
                row.push((m, field.from_i64(d)));
            }
            red.insert(&row);
        }
    }
    let (rref, _) = red.finish();
    if rref.iter().any(|r| r[0].0 == m) {
        return GradingDerivation::OuterDiagonal(g.degrees().to_vec());
    }
    let mut z = alg.zero();
    for r in &rref {
        let p = r[0].0;
        if let Some((_, v)) = r.iter().find(|(c, _)| *c == m) {
            z[zero_part[p]] = v.clone();
        }
    }
    GradingDerivation::InAlgebra(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::FieldSpec;
    use crate::lie::chevalley_algebra;
    use crate::roots::{JSubset, RootSystem, RootType};

    fn chev(ty: RootType, n: usize, field: FieldSpec) -> crate::lie::ChevalleyAlgebra {
        chevalley_algebra(&RootSystem::new(ty, n).unwrap(), field).unwrap()
    }

    #[test]
    fn sl2_grading_and_zeta() {
        let q = FieldSpec::Rationals;
        let l = chev(RootType::A, 1, q);
        let j = JSubset::from_labels(1, &[1]).unwrap();
        let g = l.grading(&j).unwrap();
        assert_eq!(g.degrees(), &[1, -1, 0]);
        assert_eq!(g.dims(), vec![1, 1, 1]);
        let z = l.grading_derivation(&j);
        assert_eq!(
            z,
            GradingDerivation::InAlgebra(vec![q.zero(), q.zero(), q.ratio(1, 2).unwrap()])
        );
        assert!(z.verify(&l.algebra, &g));
        assert_eq!(grading_derivation(&l.algebra, &g), z);
    }

    #[test]
    fn g2_and_e8_dimensions() {
        let l = chev(RootType::G, 2, FieldSpec::Rationals);
        let g = l.grading(&JSubset::from_labels(2, &[2]).unwrap()).unwrap();
        assert_eq!(g.dims(), vec![1, 4, 4, 4, 1]);
        let e8 = RootSystem::new(RootType::E, 8).unwrap();
        let j = JSubset::from_labels(8, &[1]).unwrap();
        let counts = e8.level_counts(&j);
        assert_eq!(counts, vec![14, 64, 84, 64, 14]);
        let two = (0..e8.num_roots())
            .filter(|&a| e8.coefficient(a, 0) == 2)
            .count();
        assert_eq!(two, 14);
    }

    #[test]
    fn too_wide_is_rejected() {
        let l = chev(RootType::G, 2, FieldSpec::Rationals);
        let err = l
            .grading(&JSubset::from_labels(2, &[1]).unwrap())
            .unwrap_err();
        assert_eq!(err.to_string(), "grading too wide (level 3)");
    }

    #[test]
    fn general_search_agrees_with_cartan_solve() {
        let f5 = FieldSpec::prime(5).unwrap();
        let l = chev(RootType::A, 4, f5);
        for labels in [vec![1], vec![1, 4], vec![2, 3], vec![2]] {
            let j = JSubset::from_labels(4, &labels).unwrap();
            let g = l.grading(&j).unwrap();
            let a = l.grading_derivation(&j);
            let b = grading_derivation(&l.algebra, &g);
            assert_eq!(a.is_in_algebra(), b.is_in_algebra(), "{labels:?}");
            if a.is_in_algebra() {
                assert!(a.verify(&l.algebra, &g) && b.verify(&l.algebra, &g));
            }
        }
    }
}
