//! Reduced irreducible root systems in Bourbaki numbering.
//!
//! Roots are integer coordinate vectors over the simple roots. Internally simple roots are
//! indexed from 0; user-facing labels and the CLI use Bourbaki's 1-based numbering.

pub mod constants;
pub mod levels;

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use constants::ChevalleyConstants;
pub use levels::{GradingWidth, JSubset};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum RootType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl RootType {
    pub const ALL: [RootType; 7] = [
        RootType::A,
        RootType::B,
        RootType::C,
        RootType::D,
        RootType::E,
        RootType::F,
        RootType::G,
    ];

    pub fn is_classical(self) -> bool {
        matches!(self, RootType::A | RootType::B | RootType::C | RootType::D)
    }

    pub fn valid_rank(self, rank: usize) -> bool {
        match self {
            RootType::A => rank >= 1,
            RootType::B => rank >= 2,
            RootType::C => rank >= 3,
            RootType::D => rank >= 4,
            RootType::E => (6..=8).contains(&rank),
            RootType::F => rank == 4,
            RootType::G => rank == 2,
        }
    }
}

impl fmt::Display for RootType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for RootType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(RootType::A),
            "B" => Ok(RootType::B),
            "C" => Ok(RootType::C),
            "D" => Ok(RootType::D),
            "E" => Ok(RootType::E),
            "F" => Ok(RootType::F),
            "G" => Ok(RootType::G),
            other => Err(Error::InvalidType(other.to_string(), 0)),
        }
    }
}

/// Simple-root lengths `(α_i, α_i)` and the off-diagonal symmetric form `(α_i, α_j)`.
fn symmetric_form(ty: RootType, n: usize) -> (Vec<i64>, Vec<(usize, usize, i64)>) {
    let chain = |len: usize| {
        (0..len.saturating_sub(1))
            .map(|i| (i, i + 1, -1))
            .collect::<Vec<_>>()
    };
    match ty {
        RootType::A => (vec![2; n], chain(n)),
        RootType::B => {
            let mut d = vec![4; n];
            d[n - 1] = 2;
            let edges = (0..n - 1).map(|i| (i, i + 1, -2)).collect();
            (d, edges)
        }
        RootType::C => {
            let mut d = vec![2; n];
            d[n - 1] = 4;
            let mut edges = chain(n - 1);
            edges.push((n - 2, n - 1, -2));
            (d, edges)
        }
        RootType::D => {
            let mut edges = chain(n - 1);
            edges.push((n - 3, n - 1, -1));
            (vec![2; n], edges)
        }
        RootType::E => {
            let mut edges = vec![(0, 2, -1), (1, 3, -1)];
            edges.extend((2..n - 1).map(|i| (i, i + 1, -1)));
            (vec![2; n], edges)
        }
        RootType::F => (vec![4, 4, 2, 2], vec![(0, 1, -2), (1, 2, -2), (2, 3, -1)]),
        RootType::G => (vec![2, 6], vec![(0, 1, -3)]),
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    ty: RootType,
    rank: usize,
    cartan: Vec<Vec<i64>>,
    form: Vec<Vec<i64>>,
    roots: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
    n_pos: usize,
}

impl RootSystem {
    /// All roots by reflection closure of the simple roots.
    pub fn new(ty: RootType, rank: usize) -> Result<Self> {
        if !ty.valid_rank(rank) {
            return Err(Error::InvalidType(ty.to_string(), rank));
        }
        let (d, edges) = symmetric_form(ty, rank);
        let mut form = vec![vec![0i64; rank]; rank];
        for i in 0..rank {
            form[i][i] = d[i];
        }
        for &(i, j, v) in &edges {
            form[i][j] = v;
            form[j][i] = v;
        }
        let cartan: Vec<Vec<i64>> = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * form[i][j] / d[i]).collect())
            .collect();

        let mut seen: HashSet<Vec<i64>> = HashSet::new();
        let mut queue: VecDeque<Vec<i64>> = VecDeque::new();
        for i in 0..rank {
            let mut e = vec![0; rank];
            e[i] = 1;
            seen.insert(e.clone());
            queue.push_back(e);
        }
        while let Some(b) = queue.pop_front() {
            for i in 0..rank {
                let pairing: i64 = (0..rank).map(|j| b[j] * cartan[i][j]).sum();
                let mut r = b.clone();
                r[i] -= pairing;
                if seen.insert(r.clone()) {
                    queue.push_back(r);
                }
            }
        }
        let mut pos: Vec<Vec<i64>> = seen
            .into_iter()
            .filter(|r| r.iter().all(|&c| c >= 0))
            .collect();
        pos.sort_by(|a, b| {
            let (ha, hb): (i64, i64) = (a.iter().sum(), b.iter().sum());
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let n_pos = pos.len();
        let mut roots = pos.clone();
        roots.extend(pos.iter().map(|r| r.iter().map(|c| -c).collect::<Vec<_>>()));
        let index = roots
            .iter()
            .enumerate()
            .map(|(i, r)| (r.clone(), i))
            .collect();
        Ok(RootSystem {
            ty,
            rank,
            cartan,
            form,
            roots,
            index,
            n_pos,
        })
    }

    pub fn root_type(&self) -> RootType {
        self.ty
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn label(&self) -> String {
        format!("{}{}", self.ty, self.rank)
    }

    /// `cartan[i][j] = <α_i^∨, α_j>`.
    pub fn cartan(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn roots(&self) -> &[Vec<i64>] {
        &self.roots
    }

    pub fn root(&self, i: usize) -> &[i64] {
        &self.roots[i]
    }

    pub fn num_roots(&self) -> usize {
        self.roots.len()
    }

    pub fn num_positive(&self) -> usize {
        self.n_pos
    }

    pub fn is_positive(&self, i: usize) -> bool {
        i < self.n_pos
    }

    pub fn index_of(&self, coords: &[i64]) -> Option<usize> {
        self.index.get(coords).copied()
    }

    /// Index of the simple root `α_i` (0-based).
    pub fn simple(&self, i: usize) -> usize {
        let mut e = vec![0; self.rank];
        e[i] = 1;
        self.index[&e]
    }

    pub fn negative(&self, i: usize) -> usize {
        if i < self.n_pos {
            i + self.n_pos
        } else {
            i - self.n_pos
        }
    }

    /// Index of `α + β` if it is a root.
    pub fn sum(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(x, y)| x + y)
            .collect();
        self.index_of(&s)
    }

    pub fn difference(&self, a: usize, b: usize) -> Option<usize> {
        let s: Vec<i64> = self.roots[a]
            .iter()
            .zip(&self.roots[b])
            .map(|(x, y)| x - y)
            .collect();
        self.index_of(&s)
    }

    pub fn height(&self, i: usize) -> i64 {
        self.roots[i].iter().sum()
    }

    /// `m_β(α)` with `beta` a 0-based simple index.
    pub fn coefficient(&self, alpha: usize, beta: usize) -> i64 {
        self.roots[alpha][beta]
    }

    /// Symmetric bilinear form on root coordinates.
    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.form[i][j] * b[j];
            }
        }
        s
    }

    pub fn norm(&self, i: usize) -> i64 {
        self.inner(&self.roots[i], &self.roots[i])
    }

    pub fn simple_norm(&self, i: usize) -> i64 {
        self.form[i][i]
    }

    /// `<β, α_i^∨>`.
    pub fn pairing(&self, beta: &[i64], i: usize) -> i64 {
        (0..self.rank).map(|j| beta[j] * self.cartan[i][j]).sum()
    }

    /// Coordinates of the coroot `α^∨` over the simple coroots.
    pub fn coroot(&self, i: usize) -> Vec<i64> {
        let n = self.norm(i);
        (0..self.rank)
            .map(|j| {
                let num = self.roots[i][j] * self.form[j][j];
                debug_assert_eq!(num % n, 0);
                num / n
            })
            .collect()
    }

    pub fn highest_root(&self) -> usize {
        (0..self.n_pos)
            .max_by_key(|&i| self.height(i))
            .expect("nonempty")
    }

    /// Largest `p` with `β - pα` a root.
    pub fn string_down(&self, alpha: usize, beta: usize) -> i64 {
        let mut p = 0;
        let mut cur: Vec<i64> = self.roots[beta].clone();
        loop {
            for (c, a) in cur.iter_mut().zip(&self.roots[alpha]) {
                *c -= a;
            }
            if self.index.contains_key(&cur) {
                p += 1;
            } else {
                return p;
            }
        }
    }

    /// Determinant of the Cartan matrix.
    pub fn cartan_determinant(&self) -> i64 {
        let n = self.rank;
        let mut m: Vec<Vec<num_rational::Rational64>> = self
            .cartan
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| num_rational::Rational64::from_integer(x))
                    .collect()
            })
            .collect();
        let mut det = num_rational::Rational64::from_integer(1);
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| m[r][c] != 0.into()) else {
                return 0;
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c];
            for r in c + 1..n {
                let f = m[r][c] / m[c][c];
                for k in c..n {
                    let v = m[c][k];
                    m[r][k] -= f * v;
                }
            }
        }
        det.to_integer()
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "type": self.ty.to_string(),
            "rank": self.rank,
            "roots": self.roots,
        })
    }
}

pub fn build_root_system(ty: RootType, rank: usize) -> Result<RootSystem> {
    RootSystem::new(ty, rank)
}

/// Every constructible `(type, rank)` with rank at most `max_rank`.
pub fn all_types_up_to(max_rank: usize) -> Vec<(RootType, usize)> {
    let mut out = Vec::new();
    for ty in RootType::ALL {
        for r in 1..=max_rank {
            if ty.valid_rank(r) {
                out.push((ty, r));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn classical_count(ty: RootType, n: usize) -> usize {
        match ty {
            RootType::A => n * (n + 1),
            RootType::B | RootType::C => 2 * n * n,
            RootType::D => 2 * n * (n - 1),
            RootType::E => [72, 126, 240][n - 6],
            RootType::F => 48,
            RootType::G => 12,
        }
    }

    #[test]
    fn root_counts() {
        for (ty, n) in all_types_up_to(8) {
            let rs = RootSystem::new(ty, n).unwrap();
            assert_eq!(rs.num_roots(), classical_count(ty, n), "{ty}{n}");
            for r in rs.roots() {
                assert!(r.iter().all(|&c| c >= 0) || r.iter().all(|&c| c <= 0));
                let neg: Vec<i64> = r.iter().map(|c| -c).collect();
                assert!(rs.index_of(&neg).is_some());
            }
        }
    }

    #[test]
    fn g2_positive_roots() {
        let rs = RootSystem::new(RootType::G, 2).unwrap();
        let pos: Vec<Vec<i64>> = rs.roots()[..6].to_vec();
        assert_eq!(
            pos,
            vec![
                vec![1, 0],
                vec![0, 1],
                vec![1, 1],
                vec![2, 1],
                vec![3, 1],
                vec![3, 2]
            ]
        );
        assert_eq!(rs.cartan(), &[vec![2, -3], vec![-1, 2]]);
        assert_eq!(rs.coefficient(5, 1), 2);
        assert_eq!(rs.roots()[rs.highest_root()], vec![3, 2]);
    }

    #[test]
    fn small_examples() {
        let a1 = RootSystem::new(RootType::A, 1).unwrap();
        assert_eq!(a1.roots(), &[vec![1], vec![-1]]);
        let a3 = RootSystem::new(RootType::A, 3).unwrap();
        let hr = a3.highest_root();
        assert_eq!(a3.root(hr), &[1, 1, 1]);
        assert_eq!(a3.coefficient(hr, 1), 1);
        let c3 = RootSystem::new(RootType::C, 3).unwrap();
        assert_eq!(c3.root(c3.highest_root()), &[2, 2, 1]);
        let b3 = RootSystem::new(RootType::B, 3).unwrap();
        assert_eq!(b3.root(b3.highest_root()), &[1, 2, 2]);
        assert!(matches!(
            RootSystem::new(RootType::C, 2),
            Err(Error::InvalidType(_, 2))
        ));
        assert!(RootSystem::new(RootType::E, 9).is_err());
    }

    #[test]
    fn highest_roots_exceptional() {
        let cases: [(RootType, usize, Vec<i64>); 5] = [
            (RootType::E, 6, vec![1, 2, 2, 3, 2, 1]),
            (RootType::E, 7, vec![2, 2, 3, 4, 3, 2, 1]),
            (RootType::E, 8, vec![2, 3, 4, 6, 5, 4, 3, 2]),
            (RootType::F, 4, vec![2, 3, 4, 2]),
            (RootType::D, 5, vec![1, 2, 2, 1, 1]),
        ];
        for (ty, n, hr) in cases {
            let rs = RootSystem::new(ty, n).unwrap();
            assert_eq!(rs.root(rs.highest_root()), hr.as_slice());
        }
    }

    #[test]
    fn cartan_determinants() {
        let cases = [
            (RootType::A, 4, 5),
            (RootType::B, 5, 2),
            (RootType::C, 4, 2),
            (RootType::D, 6, 4),
            (RootType::E, 6, 3),
            (RootType::E, 7, 2),
            (RootType::E, 8, 1),
            (RootType::F, 4, 1),
            (RootType::G, 2, 1),
        ];
        for (ty, n, det) in cases {
            assert_eq!(
                RootSystem::new(ty, n).unwrap().cartan_determinant(),
                det,
                "{ty}{n}"
            );
        }
    }

    /// Root strings computed by repeated addition agree with the reflection closure.
    #[test]
    fn string_property_matches_pairing() {
        for (ty, n) in all_types_up_to(6) {
            let rs = RootSystem::new(ty, n).unwrap();
            for a in 0..rs.num_roots() {
                for b in 0..rs.num_roots() {
                    if a == b || a == rs.negative(b) {
                        continue;
                    }
                    let p = rs.string_down(a, b);
                    let mut q = 0;
                    let mut cur = rs.root(b).to_vec();
                    loop {
                        for (c, x) in cur.iter_mut().zip(rs.root(a)) {
                            *c += x;
                        }
                        if rs.index_of(&cur).is_none() {
                            break;
                        }
                        q += 1;
                    }
                    // p - q = <β, α^∨>
                    let pairing = 2 * rs.inner(rs.root(b), rs.root(a)) / rs.norm(a);
                    assert_eq!(p - q, pairing);
                }
            }
        }
    }
}
