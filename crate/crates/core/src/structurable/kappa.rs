//! The 5-graded Lie algebra `K(A) = S₋ ⊕ A₋ ⊕ Instrl(A) ⊕ A₊ ⊕ S₊`.

use serde::{Deserialize, Serialize};

use crate::arith::reduce::{self, SparseVec, Subspace};
use crate::arith::{Matrix, Scalar};
use crate::error::{Error, Result};
use crate::lie::{Grading, JacobiReport, LieAlgebra, LieAlgebraJson};
use crate::structurable::{commutator, flatten, unflatten, StructurableAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Block {
    #[serde(rename = "S-")]
    SkewMinus,
    #[serde(rename = "A-")]
    Minus,
    #[serde(rename = "Instrl")]
    Instrl,
    #[serde(rename = "A+")]
    Plus,
    #[serde(rename = "S+")]
    SkewPlus,
}

impl Block {
    pub const ALL: [Block; 5] = [
        Block::SkewMinus,
        Block::Minus,
        Block::Instrl,
        Block::Plus,
        Block::SkewPlus,
    ];

    pub fn degree(self) -> i64 {
        match self {
            Block::SkewMinus => -2,
            Block::Minus => -1,
            Block::Instrl => 0,
            Block::Plus => 1,
            Block::SkewPlus => 2,
        }
    }

    fn tag(self) -> &'static str {
        match self {
            Block::SkewMinus => "s-",
            Block::Minus => "a-",
            Block::Instrl => "v",
            Block::Plus => "a+",
            Block::SkewPlus => "s+",
        }
    }
}

#[derive(Clone, Debug)]
pub struct KappaAlgebra {
    pub algebra: LieAlgebra,
    pub grading: Grading,
    source: StructurableAlgebra,
    skew: Subspace,
    instrl: Subspace,
    offsets: [usize; 6],
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct KappaJson {
    #[serde(flatten)]
    pub algebra: LieAlgebraJson,
    pub blocks: Vec<(Block, usize)>,
    pub degrees: Vec<i64>,
}

/// Assemble `K(A)` from its bracket table. The Jacobi identity is not checked here; see
/// [`KappaAlgebra::check_jacobi`].
pub fn kappa(a: &StructurableAlgebra) -> Result<KappaAlgebra> {
    let field = a.field();
    let n = a.dim();
    let (_, skew) = a.skew_split();
    let instrl = a.instrl_basis();
    let (s, d0) = (skew.dim(), instrl.dim());
    let sizes = [s, n, d0, n, s];
    let mut offsets = [0usize; 6];
    for k in 0..5 {
        offsets[k + 1] = offsets[k] + sizes[k];
    }
    let dim = offsets[5];
    let block_of = |i: usize| -> (Block, usize) {
        let k = (0..5)
            .find(|&k| i < offsets[k + 1])
            .expect("index in range");
        (Block::ALL[k], i - offsets[k])
    };
    let ops: Vec<Matrix> = instrl
        .basis()
        .iter()
        .map(|v| unflatten(field, n, v))
        .collect();
    let skew_vec = |k: usize| skew.basis()[k].clone();
    let a_vec = |k: usize| a.basis_vector(k);
    let in_block = |b: Block, v: &[Scalar]| -> Result<SparseVec> {
        let off = offsets[Block::ALL.iter().position(|&x| x == b).expect("block")];
        let coords = match b {
            Block::SkewMinus | Block::SkewPlus => skew
                .coords(v)
                .ok_or_else(|| Error::NotInSubspace("value is not skew".into()))?,
            Block::Instrl => instrl
                .coords(v)
                .ok_or_else(|| Error::NotInSubspace("operator is not in Instrl".into()))?,
            Block::Minus | Block::Plus => v.to_vec(),
        };
        Ok(reduce::from_dense(&coords)
            .into_iter()
            .map(|(i, c)| (off + i, c))
            .collect())
    };
    let neg = |v: SparseVec| -> SparseVec { v.into_iter().map(|(i, c)| (i, -c)).collect() };
    let apply = |m: &Matrix, v: &[Scalar]| m.mul_vec(v).expect("square");
    let ls_lt = |s: &[Scalar], t: &[Scalar]| a.left_mul(s).mul(&a.left_mul(t)).expect("square");

    let mut upper: Vec<(usize, usize, SparseVec)> = Vec::new();
    for p in 0..dim {
        for q in p + 1..dim {
            let ((bp, i), (bq, j)) = (block_of(p), block_of(q));
            use Block::*;
            let v = match (bp, bq) {
                (SkewMinus, SkewMinus)
                | (SkewMinus, Minus)
                | (Plus, SkewPlus)
                | (SkewPlus, SkewPlus) => Vec::new(),
                (SkewMinus, Instrl) => {
                    // [t₋, D] = -((D^ε)^δ t)₋
                    let d = &ops[j];
                    neg(in_block(
                        SkewMinus,
                        &apply(&a.delta(&a.eps(d)), &skew_vec(i)),
                    )?)
                }
                (SkewMinus, Plus) => in_block(Minus, &a.mul(&skew_vec(i), &a_vec(j)))?,
                (SkewMinus, SkewPlus) => neg(in_block(
                    Instrl,
                    &flatten(&ls_lt(&skew_vec(j), &skew_vec(i))),
                )?),
                (Minus, Minus) => in_block(SkewMinus, &a.psi(&a_vec(i), &a_vec(j)))?,
                (Minus, Instrl) => neg(in_block(Minus, &apply(&a.eps(&ops[j]), &a_vec(i)))?),
                (Minus, Plus) => neg(in_block(Instrl, &flatten(&a.v_op(&a_vec(j), &a_vec(i))))?),
                (Minus, SkewPlus) => neg(in_block(Plus, &a.mul(&skew_vec(j), &a_vec(i)))?),
                (Instrl, Instrl) => in_block(Instrl, &flatten(&commutator(&ops[i], &ops[j])))?,
                (Instrl, Plus) => in_block(Plus, &apply(&ops[i], &a_vec(j)))?,
                (Instrl, SkewPlus) => in_block(SkewPlus, &apply(&a.delta(&ops[i]), &skew_vec(j)))?,
                (Plus, Plus) => in_block(SkewPlus, &a.psi(&a_vec(i), &a_vec(j)))?,
                _ => unreachable!("blocks are visited in order"),
            };
            upper.push((p, q, v));
        }
    }
    let mut labels = Vec::with_capacity(dim);
    let mut degrees = Vec::with_capacity(dim);
    for (k, b) in Block::ALL.iter().enumerate() {
        for i in 0..sizes[k] {
            let name = match b {
                Block::Minus | Block::Plus => a.labels()[i].clone(),
                _ => i.to_string(),
            };
            labels.push(format!("{}[{}]", b.tag(), name));
            degrees.push(b.degree());
        }
    }
    let algebra = LieAlgebra::from_upper(field, labels, upper)?;
    let grading = Grading::new(&algebra, degrees)?;
    Ok(KappaAlgebra {
        algebra,
        grading,
        source: a.clone(),
        skew,
        instrl,
        offsets,
    })
}

impl KappaAlgebra {
    pub fn source(&self) -> &StructurableAlgebra {
        &self.source
    }

    pub fn block_dims(&self) -> [usize; 5] {
        let o = &self.offsets;
        [
            o[1] - o[0],
            o[2] - o[1],
            o[3] - o[2],
            o[4] - o[3],
            o[5] - o[4],
        ]
    }

    pub fn instrl(&self) -> &Subspace {
        &self.instrl
    }

    pub fn skew(&self) -> &Subspace {
        &self.skew
    }

    /// `x₊` for `x ∈ A`.
    pub fn plus(&self, x: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.algebra.zero();
        v[self.offsets[3]..self.offsets[4]].clone_from_slice(x);
        v
    }

    /// `y₋` for `y ∈ A`.
    pub fn minus(&self, y: &[Scalar]) -> Vec<Scalar> {
        let mut v = self.algebra.zero();
        v[self.offsets[1]..self.offsets[2]].clone_from_slice(y);
        v
    }

    /// `(1₊, 1₋)`, whose bracket is `V_{1,1} = id`.
    pub fn unit_pair(&self) -> (Vec<Scalar>, Vec<Scalar>) {
        let one = self.source.unit();
        (self.plus(one), self.minus(one))
    }

    /// Whether `[1₊, 1₋]` multiplies each degree-`i` basis vector by `i`.
    pub fn unit_bracket_is_grading_derivation(&self) -> bool {
        let (u, v) = self.unit_pair();
        let z = self.algebra.bracket(&u, &v);
        let f = self.algebra.field();
        (0..self.algebra.dim()).all(|b| {
            let mut want = self.algebra.zero();
            want[b] = f.from_i64(self.grading.degree(b));
            self.algebra.bracket(&z, &self.algebra.basis_vector(b)) == want
        })
    }

    pub fn check_jacobi(&self) -> JacobiReport {
        self.algebra.check_jacobi_exhaustive()
    }

    pub fn to_json(&self) -> KappaJson {
        KappaJson {
            algebra: self.algebra.to_json(),
            blocks: Block::ALL.iter().copied().zip(self.block_dims()).collect(),
            degrees: self.grading.degrees().to_vec(),
        }
    }
}
