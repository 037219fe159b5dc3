//! Levels of roots with respect to a set `J` of simple roots.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::RootSystem;

/// A nonempty set of simple roots, stored 0-based and sorted.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct JSubset {
    members: Vec<usize>,
}

impl JSubset {
    pub fn new(rank: usize, members: &[usize]) -> Result<Self> {
        let mut m = members.to_vec();
        m.sort_unstable();
        m.dedup();
        if m.is_empty() {
            return Err(Error::InvalidSubset("J must be nonempty".into()));
        }
        if let Some(&bad) = m.iter().find(|&&i| i >= rank) {
            return Err(Error::InvalidSubset(format!(
                "simple root {} out of range 1..={rank}",
                bad + 1
            )));
        }
        Ok(JSubset { members: m })
    }

    /// From Bourbaki's 1-based labels.
    pub fn from_labels(rank: usize, labels: &[usize]) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::InvalidSubset(
                "simple roots are numbered from 1".into(),
            ));
        }
        let zero_based: Vec<usize> = labels.iter().map(|l| l - 1).collect();
        Self::new(rank, &zero_based)
    }

    /// Parse a comma list of 1-based labels, e.g. `"1,3"`.
    pub fn parse(rank: usize, s: &str) -> Result<Self> {
        let labels = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim()
                    .trim_start_matches(['a', 'α'])
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidSubset(format!("bad simple root label '{t}'")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_labels(rank, &labels)
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn labels(&self) -> Vec<usize> {
        self.members.iter().map(|i| i + 1).collect()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.members.contains(&i)
    }

    /// `{α1,α3}` style rendering.
    pub fn display(&self) -> String {
        let inner: Vec<String> = self.labels().iter().map(|l| format!("α{l}")).collect();
        format!("{{{}}}", inner.join(","))
    }

    /// Every nonempty subset of at most `max_size` simple roots, in lexicographic order.
    pub fn all_up_to(rank: usize, max_size: usize) -> Vec<JSubset> {
        let mut out = Vec::new();
        fn rec(
            start: usize,
            rank: usize,
            left: usize,
            cur: &mut Vec<usize>,
            out: &mut Vec<JSubset>,
        ) {
            if !cur.is_empty() {
                out.push(JSubset {
                    members: cur.clone(),
                });
            }
            if left == 0 {
                return;
            }
            for i in start..rank {
                cur.push(i);
                rec(i + 1, rank, left - 1, cur, out);
                cur.pop();
            }
        }
        rec(0, rank, max_size, &mut Vec::new(), &mut out);
        out.sort();
        out
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GradingWidth {
    ThreeGraded,
    FiveGraded,
    TooWide,
}

impl RootSystem {
    /// `Σ_{β∈J} m_β(α)` for one root.
    pub fn level(&self, j: &JSubset, alpha: usize) -> i64 {
        j.members()
            .iter()
            .map(|&b| self.coefficient(alpha, b))
            .sum()
    }

    /// Levels of all roots, in root order.
    pub fn levels(&self, j: &JSubset) -> Vec<i64> {
        (0..self.num_roots()).map(|a| self.level(j, a)).collect()
    }

    pub fn max_level(&self, j: &JSubset) -> i64 {
        self.level(j, self.highest_root())
    }

    pub fn grading_width(&self, j: &JSubset) -> GradingWidth {
        match self.max_level(j) {
            1 => GradingWidth::ThreeGraded,
            2 => GradingWidth::FiveGraded,
            _ => GradingWidth::TooWide,
        }
    }

    /// Number of roots at each level `-n..=n` where `n` is the maximal level.
    pub fn level_counts(&self, j: &JSubset) -> Vec<usize> {
        let n = self.max_level(j);
        let mut counts = vec![0usize; (2 * n + 1) as usize];
        for a in 0..self.num_roots() {
            counts[(self.level(j, a) + n) as usize] += 1;
        }
        counts
    }

    /// Level-0 dimension (roots plus Cartan) equals the number of level-1 roots.
    pub fn is_distinguished(&self, j: &JSubset) -> bool {
        let levels = self.levels(j);
        let zero = levels.iter().filter(|&&l| l == 0).count() + self.rank();
        let one = levels.iter().filter(|&&l| l == 1).count();
        zero == one
    }

    /// Sets `J` that give a 3- or 5-grading.
    pub fn admissible_subsets(&self) -> Vec<JSubset> {
        JSubset::all_up_to(self.rank(), 2)
            .into_iter()
            .filter(|j| self.grading_width(j) != GradingWidth::TooWide)
            .collect()
    }
}

pub fn is_five_grading_j(rs: &RootSystem, j: &JSubset) -> GradingWidth {
    rs.grading_width(j)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::roots::{all_types_up_to, RootType};

    fn rs(ty: RootType, n: usize) -> RootSystem {
        RootSystem::new(ty, n).unwrap()
    }

    #[test]
    fn g2_levels() {
        let g2 = rs(RootType::G, 2);
        let j = JSubset::from_labels(2, &[2]).unwrap();
        assert_eq!(&g2.levels(&j)[..6], &[0, 1, 1, 1, 1, 2]);
        assert_eq!(g2.grading_width(&j), GradingWidth::FiveGraded);
        let j1 = JSubset::from_labels(2, &[1]).unwrap();
        assert_eq!(g2.grading_width(&j1), GradingWidth::TooWide);
        assert_eq!(g2.max_level(&j1), 3);
        assert!(g2.is_distinguished(&JSubset::from_labels(2, &[1, 2]).unwrap()));
    }

    #[test]
    fn small_distinguished_checks() {
        let a1 = rs(RootType::A, 1);
        let j = JSubset::from_labels(1, &[1]).unwrap();
        assert_eq!(a1.grading_width(&j), GradingWidth::ThreeGraded);
        assert!(a1.is_distinguished(&j));
        let a2 = rs(RootType::A, 2);
        assert!(!a2.is_distinguished(&JSubset::from_labels(2, &[1]).unwrap()));
        let a3 = rs(RootType::A, 3);
        let j13 = JSubset::from_labels(3, &[1, 3]).unwrap();
        assert_eq!(a3.level(&j13, a3.highest_root()), 2);
    }

    #[test]
    fn full_j_gives_height() {
        for (ty, n) in all_types_up_to(5) {
            let r = rs(ty, n);
            let all: Vec<usize> = (0..n).collect();
            let j = JSubset::new(n, &all).unwrap();
            let hr = r.highest_root();
            assert_eq!(r.level(&j, hr), r.height(hr));
        }
    }

    #[test]
    fn levels_are_additive() {
        for (ty, n) in all_types_up_to(5) {
            let r = rs(ty, n);
            for j in JSubset::all_up_to(n, 2) {
                for a in 0..r.num_roots() {
                    for b in 0..r.num_roots() {
                        if let Some(s) = r.sum(a, b) {
                            assert_eq!(r.level(&j, s), r.level(&j, a) + r.level(&j, b));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn subset_validation() {
        assert!(JSubset::from_labels(3, &[]).is_err());
        assert!(JSubset::from_labels(3, &[4]).is_err());
        assert!(JSubset::from_labels(3, &[0]).is_err());
        assert_eq!(JSubset::parse(4, "3, 1").unwrap().labels(), vec![1, 3]);
    }
}
