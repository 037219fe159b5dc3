//! Ideals generated by homogeneous elements.

use crate::arith::reduce::{self, RowReducer, SparseVec, Subspace};
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::lie::{Grading, LieAlgebra};

/// The smallest ad-stable subspace containing the seeds. Homogeneous seeds give a graded
/// ideal, since bracketing with basis vectors preserves homogeneity.
pub fn graded_ideal_closure(
    alg: &LieAlgebra,
    g: &Grading,
    seeds: &[Vec<Scalar>],
) -> Result<Subspace> {
    let field = alg.field();
    let n = alg.dim();
    let mut red = RowReducer::new(field, n);
    let mut queue: Vec<SparseVec> = Vec::new();
    for (k, s) in seeds.iter().enumerate() {
        if s.len() != n {
            return Err(Error::DimensionMismatch(format!(
                "seed {k} has length {}",
                s.len()
            )));
        }
        if g.homogeneous_degree(s).is_none() {
            return Err(Error::NotHomogeneous(format!("seed {k}")));
        }
        let v = reduce::from_dense(s);
        if red.insert(&v) {
            queue.push(v);
        }
    }
    while let Some(v) = queue.pop() {
        if red.rank() == n {
            break;
        }
        for j in 0..n {
            let w = alg.bracket_sparse(&vec![(j, field.one())], &v);
            if !w.is_empty() && red.insert(&w) {
                queue.push(w);
            }
        }
    }
    let (rows, _) = red.finish();
    Ok(Subspace::span_sparse(field, n, &rows))
}
