//! Search for `u ∈ L_1`, `v ∈ L_{-1}` with `[u, v]` acting as the grading derivation.
//!
//! Fixing one side turns `[u, v] = ζ + z` (with `z` central of degree 0) into a linear
//! system for the other side. Over a finite field small searches are exhaustive; otherwise
//! seeded trials are used and a negative outcome proves nothing.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::fp::{self, solve_mod};
use crate::arith::{FieldSpec, Matrix, Scalar};
use crate::classify::{diagram_from_j, is_nilpotent_diagram};
use crate::error::{Error, Result};
use crate::lie::{ChevalleyAlgebra, Grading, GradingDerivation, LieAlgebra};
use crate::roots::JSubset;

/// Literal enumeration of all `(u, v)` is used up to this many pairs.
pub const EXHAUSTIVE_PAIRS_LIMIT: u64 = 1_000_000;
/// Enumeration of one side up to scalars, with a linear solve for the other, up to this many.
pub const EXHAUSTIVE_LINEAR_LIMIT: u64 = 100_000;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchPolicy {
    /// Exhaustive when feasible over a finite field, sampled otherwise.
    #[default]
    Auto,
    /// Exhaustive or an error.
    Exhaustive,
    Sampled,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    ExhaustivePairs,
    ExhaustiveLinear,
    Sampled,
}

impl SearchMode {
    pub fn is_exhaustive(self) -> bool {
        self != SearchMode::Sampled
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPairOptions {
    /// Random trials after the two deterministic ones.
    pub attempts: u64,
    pub seed: u64,
    pub policy: SearchPolicy,
}

impl Default for UnitPairOptions {
    fn default() -> Self {
        UnitPairOptions {
            attempts: 20,
            seed: 0,
            policy: SearchPolicy::Auto,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "kebab-case")]
pub enum UnitPairOutcome {
    Found {
        u: Vec<Scalar>,
        v: Vec<Scalar>,
        /// `[u, v] - ζ`, a central element (zero unless the algebra has a center).
        center_shift: Vec<Scalar>,
    },
    NotFound,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct UnitPairReport {
    pub field: FieldSpec,
    pub mode: SearchMode,
    pub seed: u64,
    /// Pairs examined (literal mode) or linear systems solved.
    pub trials: u64,
    pub outcome: UnitPairOutcome,
    pub note: Option<String>,
}

impl UnitPairReport {
    pub fn found(&self) -> Option<(&[Scalar], &[Scalar])> {
        match &self.outcome {
            UnitPairOutcome::Found { u, v, .. } => Some((u, v)),
            UnitPairOutcome::NotFound => None,
        }
    }

    pub fn is_exhaustive_negative(&self) -> bool {
        self.found().is_none() && self.mode.is_exhaustive()
    }
}

const SAMPLED_NOTE: &str = "sampled search: not finding a pair does not show that none exists";

/// Data shared by all search modes.
struct Setup<'a> {
    alg: &'a LieAlgebra,
    zeta: Vec<Scalar>,
    plus: Vec<usize>,
    minus: Vec<usize>,
    zero: Vec<usize>,
    /// Degree-0 central elements.
    center0: Vec<Vec<Scalar>>,
}

impl<'a> Setup<'a> {
    fn new(alg: &'a LieAlgebra, g: &Grading, zeta: &GradingDerivation) -> Result<Self> {
        let zeta = zeta.element().ok_or(Error::OuterZeta)?.to_vec();
        let center0 = alg
            .center()
            .basis()
            .iter()
            .filter(|z| g.homogeneous_degree(z) == Some(0))
            .cloned()
            .collect();
        Ok(Setup {
            alg,
            zeta,
            plus: g.component(1),
            minus: g.component(-1),
            zero: g.component(0),
            center0,
        })
    }

    fn field(&self) -> FieldSpec {
        self.alg.field()
    }

    fn on_zero(&self, v: &[Scalar]) -> Vec<Scalar> {
        self.zero.iter().map(|&i| v[i].clone()).collect()
    }

    /// Solve `[x, y] = ζ + z` for the side not fixed. `fixed_plus` says whether `x ∈ L_1`
    /// is the given element.
    fn solve_other(
        &self,
        fixed: &[Scalar],
        fixed_plus: bool,
    ) -> Option<(Vec<Scalar>, Vec<Scalar>)> {
        let unknown = if fixed_plus { &self.minus } else { &self.plus };
        let mut cols: Vec<Vec<Scalar>> = unknown
            .iter()
            .map(|&b| {
                let e = self.alg.basis_vector(b);
                let br = if fixed_plus {
                    self.alg.bracket(fixed, &e)
                } else {
                    self.alg.bracket(&e, fixed)
                };
                self.on_zero(&br)
            })
            .collect();
        for z in &self.center0 {
            cols.push(self.on_zero(z).iter().map(|s| -s).collect());
        }
        let m = Matrix::from_cols(self.field(), self.zero.len(), &cols).ok()?;
        let sol = m.solve(&self.on_zero(&self.zeta)).ok()?.solution()?;
        let mut other = self.alg.zero();
        for (k, &b) in unknown.iter().enumerate() {
            other[b] = sol[k].clone();
        }
        Some(if fixed_plus {
            (fixed.to_vec(), other)
        } else {
            (other, fixed.to_vec())
        })
    }

    fn sum_of(&self, idx: &[usize]) -> Vec<Scalar> {
        let mut v = self.alg.zero();
        for &i in idx {
            v[i] = self.field().one();
        }
        v
    }

    fn sampled(&self, attempts: u64, seed: u64) -> (u64, Option<(Vec<Scalar>, Vec<Scalar>)>) {
        let mut trials = 0;
        for t in 0..attempts + 2 {
            let plus_side = t % 2 == 0;
            let idx = if plus_side { &self.plus } else { &self.minus };
            let x = if t < 2 {
                self.sum_of(idx)
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(t);
                let mut x = self.alg.zero();
                for &i in idx {
                    x[i] = self.field().random(&mut rng);
                }
                x
            };
            trials += 1;
            if x.iter().all(Scalar::is_zero) {
                continue;
            }
            if let Some(pair) = self.solve_other(&x, plus_side) {
                return (trials, Some(pair));
            }
        }
        (trials, None)
    }

    /// `W` with `W x = 0` exactly for `x` in the span of the degree-0 center, on `L_0`
    /// coordinates, and the table `W [e_a, f_b]`.
    fn fp_tables(&self, p: u64) -> (Vec<Vec<u64>>, Vec<Vec<Vec<u64>>>, Vec<u64>) {
        let n0 = self.zero.len();
        let w: Vec<Vec<u64>> = if self.center0.is_empty() {
            (0..n0)
                .map(|i| (0..n0).map(|j| u64::from(i == j)).collect())
                .collect()
        } else {
            let rows: Vec<Vec<Scalar>> = self.center0.iter().map(|z| self.on_zero(z)).collect();
            let m = Matrix::from_rows(self.field(), rows).expect("rectangular");
            m.nullspace()
                .iter()
                .map(|v| v.iter().map(fp::residue).collect())
                .collect()
        };
        let apply = |v: &[Scalar]| -> Vec<u64> {
            let x: Vec<u64> = self.on_zero(v).iter().map(fp::residue).collect();
            w.iter()
                .map(|row| row.iter().zip(&x).fold(0, |acc, (a, b)| (acc + a * b) % p))
                .collect()
        };
        let table = self
            .plus
            .iter()
            .map(|&a| {
                self.minus
                    .iter()
                    .map(|&b| {
                        apply(
                            &self
                                .alg
                                .bracket(&self.alg.basis_vector(a), &self.alg.basis_vector(b)),
                        )
                    })
                    .collect()
            })
            .collect();
        let wz = apply(&self.zeta);
        (w, table, wz)
    }

    fn lift(&self, p: u64, idx: &[usize], coords: &[u64]) -> Vec<Scalar> {
        let mut v = self.alg.zero();
        for (k, &i) in idx.iter().enumerate() {
            v[i] = fp::scalar(p, coords[k]);
        }
        v
    }

    fn exhaustive_pairs(&self, p: u64) -> (u64, Option<(Vec<Scalar>, Vec<Scalar>)>) {
        let (w, table, wz) = self.fp_tables(p);
        let r = w.len();
        let (dp, dm) = (self.plus.len(), self.minus.len());
        let mut trials = 0;
        for u in Counter::new(p, dp) {
            let cols: Vec<Vec<u64>> = (0..dm)
                .map(|b| {
                    (0..r)
                        .map(|k| (0..dp).fold(0, |acc, a| (acc + u[a] * table[a][b][k]) % p))
                        .collect()
                })
                .collect();
            for v in Counter::new(p, dm) {
                trials += 1;
                let hit = (0..r)
                    .all(|k| (0..dm).fold(0, |acc, b| (acc + v[b] * cols[b][k]) % p) == wz[k]);
                if hit {
                    return (
                        trials,
                        Some((self.lift(p, &self.plus, &u), self.lift(p, &self.minus, &v))),
                    );
                }
            }
        }
        (trials, None)
    }

    fn exhaustive_linear(&self, p: u64) -> (u64, Option<(Vec<Scalar>, Vec<Scalar>)>) {
        let (w, table, wz) = self.fp_tables(p);
        let r = w.len();
        let (dp, dm) = (self.plus.len(), self.minus.len());
        let enumerate_plus = dp <= dm;
        let (d_fixed, d_free) = if enumerate_plus { (dp, dm) } else { (dm, dp) };
        let entry = |f: usize, o: usize, k: usize| {
            if enumerate_plus {
                table[f][o][k]
            } else {
                table[o][f][k]
            }
        };
        let mut trials = 0;
        for x in projective_points(p, d_fixed) {
            trials += 1;
            let rows: Vec<Vec<u64>> = (0..r)
                .map(|k| {
                    (0..d_free)
                        .map(|o| (0..d_fixed).fold(0, |acc, f| (acc + x[f] * entry(f, o, k)) % p))
                        .collect()
                })
                .collect();
            if let Some(y) = solve_mod(p, rows, &wz) {
                let pair = if enumerate_plus {
                    (self.lift(p, &self.plus, &x), self.lift(p, &self.minus, &y))
                } else {
                    (self.lift(p, &self.plus, &y), self.lift(p, &self.minus, &x))
                };
                return (trials, Some(pair));
            }
        }
        (trials, None)
    }
}

/// All vectors of `GF(p)^d` in lexicographic order.
struct Counter {
    p: u64,
    cur: Option<Vec<u64>>,
}

impl Counter {
    fn new(p: u64, d: usize) -> Self {
        Counter {
            p,
            cur: Some(vec![0; d]),
        }
    }
}

impl Iterator for Counter {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.cur.clone()?;
        let mut next = out.clone();
        let mut k = next.len();
        loop {
            if k == 0 {
                self.cur = None;
                break;
            }
            k -= 1;
            next[k] += 1;
            if next[k] < self.p {
                self.cur = Some(next);
                break;
            }
            next[k] = 0;
        }
        Some(out)
    }
}

/// Nonzero vectors whose first nonzero coordinate is 1.
fn projective_points(p: u64, d: usize) -> impl Iterator<Item = Vec<u64>> {
    (0..d).flat_map(move |lead| {
        Counter::new(p, d - lead - 1).map(move |tail| {
            let mut v = vec![0; lead];
            v.push(1);
            v.extend(tail);
            v
        })
    })
}

fn count_pairs(p: u64, d: usize) -> Option<u64> {
    p.checked_pow(u32::try_from(d).ok()?)
}

fn count_projective(p: u64, d: usize) -> Option<u64> {
    Some((count_pairs(p, d)? - 1) / (p - 1))
}

fn choose_mode(field: FieldSpec, dp: usize, dm: usize, policy: SearchPolicy) -> Result<SearchMode> {
    let exhaustive = match field {
        FieldSpec::Rationals => None,
        FieldSpec::Prime(p) => {
            if count_pairs(p, dp + dm).is_some_and(|n| n <= EXHAUSTIVE_PAIRS_LIMIT) {
                Some(SearchMode::ExhaustivePairs)
            } else if count_projective(p, dp.min(dm)).is_some_and(|n| n <= EXHAUSTIVE_LINEAR_LIMIT)
            {
                Some(SearchMode::ExhaustiveLinear)
            } else {
                None
            }
        }
    };
    match policy {
        SearchPolicy::Sampled => Ok(SearchMode::Sampled),
        SearchPolicy::Auto => Ok(exhaustive.unwrap_or(SearchMode::Sampled)),
        SearchPolicy::Exhaustive => exhaustive.ok_or_else(|| {
            Error::Unsupported(format!(
                "exhaustive search over {field} with sides of dimension {dp} and {dm} is not feasible"
            ))
        }),
    }
}

/// Check a candidate pair: degrees, `[u,v] - ζ` central, `[u,v]` acting as the grading
/// derivation on every basis vector, and `V_{u,v} = -id` on `L_1`. Returns `[u,v] - ζ`.
pub fn verify_unit_pair(
    alg: &LieAlgebra,
    g: &Grading,
    zeta: &GradingDerivation,
    u: &[Scalar],
    v: &[Scalar],
) -> std::result::Result<Vec<Scalar>, String> {
    let zeta = zeta
        .element()
        .ok_or("grading derivation is not in the algebra")?;
    let nonzero = |x: &[Scalar]| x.iter().any(|s| !s.is_zero());
    if !nonzero(u) || g.homogeneous_degree(u) != Some(1) {
        return Err("u is not a nonzero element of degree 1".into());
    }
    if !nonzero(v) || g.homogeneous_degree(v) != Some(-1) {
        return Err("v is not a nonzero element of degree -1".into());
    }
    let uv = alg.bracket(u, v);
    let shift: Vec<Scalar> = uv.iter().zip(zeta).map(|(a, b)| a - b).collect();
    if !alg.center().contains(&shift) {
        return Err("[u,v] - zeta is not central".into());
    }
    let field = alg.field();
    for b in 0..alg.dim() {
        let mut want = alg.zero();
        want[b] = field.from_i64(g.degree(b));
        if alg.bracket(&uv, &alg.basis_vector(b)) != want {
            return Err(format!(
                "[u,v] does not act as the grading derivation on {}",
                alg.labels()[b]
            ));
        }
    }
    for x in g.component(1) {
        // V_{u,v} x = -[[u,v],x]
        let vx: Vec<Scalar> = alg
            .bracket(&uv, &alg.basis_vector(x))
            .iter()
            .map(|s| -s)
            .collect();
        let mut want = alg.zero();
        want[x] = -field.one();
        if vx != want {
            return Err(format!("V_{{u,v}} is not -id on {}", alg.labels()[x]));
        }
    }
    Ok(shift)
}

/// Search for a pair `(u, v)` with `[u, v] - ζ` central. Every pair returned has passed
/// [`verify_unit_pair`].
pub fn find_unit_pair(
    alg: &LieAlgebra,
    g: &Grading,
    zeta: &GradingDerivation,
    opts: &UnitPairOptions,
) -> Result<UnitPairReport> {
    if g.bound() > 2 {
        return Err(Error::TooWideGrading(g.bound()));
    }
    let setup = Setup::new(alg, g, zeta)?;
    let field = alg.field();
    let mode = choose_mode(field, setup.plus.len(), setup.minus.len(), opts.policy)?;
    let (trials, pair) = if setup.plus.is_empty() || setup.minus.is_empty() {
        (0, None)
    } else {
        match (mode, field) {
            (SearchMode::ExhaustivePairs, FieldSpec::Prime(p)) => setup.exhaustive_pairs(p),
            (SearchMode::ExhaustiveLinear, FieldSpec::Prime(p)) => setup.exhaustive_linear(p),
            _ => setup.sampled(opts.attempts, opts.seed),
        }
    };
    let outcome = match pair {
        Some((u, v)) => {
            let shift = verify_unit_pair(alg, g, zeta, &u, &v).map_err(Error::NotInSubspace)?;
            UnitPairOutcome::Found {
                u,
                v,
                center_shift: shift,
            }
        }
        None => UnitPairOutcome::NotFound,
    };
    let note = (mode == SearchMode::Sampled && outcome == UnitPairOutcome::NotFound)
        .then(|| SAMPLED_NOTE.to_string());
    Ok(UnitPairReport {
        field,
        mode,
        seed: opts.seed,
        trials,
        outcome,
        note,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "kebab-case")]
pub enum KappaVerdict {
    Yes {
        u: Vec<Scalar>,
        v: Vec<Scalar>,
        mode: SearchMode,
    },
    No {
        reason: String,
        exhaustive: bool,
    },
    Undecided {
        reason: String,
    },
}

/// Whether the grading defined by `J` is the grading of some `K(A)`: a verified unit pair
/// gives yes; the diagram test or an exhaustive search gives no.
pub fn is_kappa_grading(
    ch: &ChevalleyAlgebra,
    j: &JSubset,
    opts: &UnitPairOptions,
) -> Result<KappaVerdict> {
    let g = ch.grading(j)?;
    let zeta = ch.grading_derivation(j);
    let diagram = is_nilpotent_diagram(&diagram_from_j(&ch.roots, j)).ok();
    if !zeta.is_in_algebra() {
        return Ok(KappaVerdict::No {
            reason: "no element of the algebra acts as the grading derivation".into(),
            exhaustive: true,
        });
    }
    let report = find_unit_pair(&ch.algebra, &g, &zeta, opts)?;
    if let Some((u, v)) = report.found() {
        return Ok(KappaVerdict::Yes {
            u: u.to_vec(),
            v: v.to_vec(),
            mode: report.mode,
        });
    }
    Ok(match (report.mode.is_exhaustive(), diagram) {
        (true, Some(true)) => KappaVerdict::No {
            reason: "exhaustive search found no unit pair, although the diagram is nilpotent"
                .into(),
            exhaustive: true,
        },
        (true, _) => KappaVerdict::No {
            reason: "exhaustive search found no unit pair; the diagram is not nilpotent".into(),
            exhaustive: true,
        },
        (false, Some(false)) => KappaVerdict::No {
            reason: "the diagram is not nilpotent; sampled search found no unit pair".into(),
            exhaustive: false,
        },
        (false, _) => KappaVerdict::Undecided {
            reason: SAMPLED_NOTE.into(),
        },
    })
}
