//! Even weighted Dynkin diagrams and the partition test for nilpotent orbits.

pub mod cross;
pub mod table;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::roots::{JSubset, RootSystem, RootType};

pub use cross::{cross_validate, CellStatus, CrossCell, CrossOptions, CrossReport};
pub use table::{
    diff_against_golden, generate_table, golden_rows, golden_table, golden_types, Provenance,
    TableDiff, TableEntry, Verdict,
};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WeightedDiagram {
    pub root_type: RootType,
    pub rank: usize,
    /// Weight of each simple root, 0-based.
    pub weights: Vec<u8>,
}

impl WeightedDiagram {
    pub fn new(root_type: RootType, rank: usize, weights: Vec<u8>) -> Result<Self> {
        if weights.len() != rank {
            return Err(Error::DimensionMismatch(format!(
                "{} weights for rank {rank}",
                weights.len()
            )));
        }
        if let Some(w) = weights.iter().find(|&&w| w > 2) {
            return Err(Error::UnsupportedWeights(format!(
                "weight {w} is not in {{0,1,2}}"
            )));
        }
        Ok(WeightedDiagram {
            root_type,
            rank,
            weights,
        })
    }

    /// Simple roots of weight 2, as a `J` set.
    pub fn support(&self) -> Option<JSubset> {
        let m: Vec<usize> = (0..self.rank).filter(|&i| self.weights[i] == 2).collect();
        JSubset::new(self.rank, &m).ok()
    }
}

/// Weight 2 on `J`, 0 elsewhere.
pub fn diagram_from_j(rs: &RootSystem, j: &JSubset) -> WeightedDiagram {
    let weights = (0..rs.rank())
        .map(|i| if j.contains(i) { 2 } else { 0 })
        .collect();
    WeightedDiagram {
        root_type: rs.root_type(),
        rank: rs.rank(),
        weights,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    /// Parts are sorted into weakly decreasing order; zero parts are dropped.
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.retain(|&d| d > 0);
        parts.sort_unstable_by(|a, b| b.cmp(a));
        Partition { parts }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn total(&self) -> usize {
        self.parts.iter().sum()
    }

    pub fn multiplicity(&self, d: usize) -> usize {
        self.parts.iter().filter(|&&x| x == d).count()
    }

    /// Every part even (and hence of even multiplicity when the orthogonal rule holds).
    pub fn is_very_even(&self) -> bool {
        !self.parts.is_empty() && self.parts.iter().all(|d| d % 2 == 0)
    }

    /// All partitions of `n` in reverse lexicographic order.
    pub fn all(n: usize) -> Vec<Partition> {
        fn rec(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if left == 0 {
                out.push(Partition { parts: cur.clone() });
                return;
            }
            for d in (1..=left.min(max)).rev() {
                cur.push(d);
                rec(left - d, d, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        rec(n, n, &mut Vec::new(), &mut out);
        out
    }
}

/// Size of the natural representation whose nilpotent orbits are labelled by partitions.
pub fn natural_dim(ty: RootType, rank: usize) -> Option<usize> {
    match ty {
        RootType::A => Some(rank + 1),
        RootType::B => Some(2 * rank + 1),
        RootType::C | RootType::D => Some(2 * rank),
        _ => None,
    }
}

/// Whether `π` labels a nilpotent orbit: even parts with even multiplicity in types B and D,
/// odd parts with even multiplicity in type C.
pub fn admissible_partition(ty: RootType, p: &Partition) -> bool {
    let bad_parity = match ty {
        RootType::B | RootType::D => 0,
        RootType::C => 1,
        _ => return true,
    };
    p.parts
        .iter()
        .all(|&d| d % 2 != bad_parity || p.multiplicity(d).is_multiple_of(2))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HSequence {
    /// Full eigenvalue multiset of the neutral element, weakly decreasing.
    pub h: Vec<i64>,
    /// Simple-root labels; a very even partition in type D has two.
    pub labels: Vec<Vec<i64>>,
}

/// Each part `d` contributes `d-1, d-3, …, 1-d`. For types B, C, D the labels are read off
/// the top `rank` values.
pub fn h_sequence_from_partition(ty: RootType, rank: usize, p: &Partition) -> Result<HSequence> {
    let n = natural_dim(ty, rank)
        .ok_or_else(|| Error::Unsupported(format!("type {ty} has no partition model")))?;
    if !ty.valid_rank(rank) {
        return Err(Error::InvalidType(ty.to_string(), rank));
    }
    if p.total() != n {
        return Err(Error::BadMultiplicity(format!(
            "parts sum to {}, expected {n}",
            p.total()
        )));
    }
    if !admissible_partition(ty, p) {
        return Err(Error::BadMultiplicity(format!(
            "{:?} is not admissible in type {ty}",
            p.parts
        )));
    }
    let mut h: Vec<i64> = p
        .parts
        .iter()
        .flat_map(|&d| {
            let d = d as i64;
            (0..d).map(move |k| d - 1 - 2 * k)
        })
        .collect();
    h.sort_unstable_by(|a, b| b.cmp(a));
    let top = &h[..rank];
    let diff = |i: usize| top[i] - top[i + 1];
    let mut labels = Vec::new();
    match ty {
        RootType::A => labels.push((0..rank).map(|i| h[i] - h[i + 1]).collect()),
        RootType::B => {
            let mut l: Vec<i64> = (0..rank - 1).map(diff).collect();
            l.push(top[rank - 1]);
            labels.push(l);
        }
        RootType::C => {
            let mut l: Vec<i64> = (0..rank - 1).map(diff).collect();
            l.push(2 * top[rank - 1]);
            labels.push(l);
        }
        RootType::D => {
            let mut l: Vec<i64> = (0..rank - 1).map(diff).collect();
            l.push(top[rank - 2] + top[rank - 1]);
            if p.is_very_even() {
                let mut swapped = l.clone();
                swapped.swap(rank - 2, rank - 1);
                if swapped != l {
                    labels.push(l);
                    labels.push(swapped);
                } else {
                    labels.push(l);
                }
            } else {
                labels.push(l);
            }
        }
        _ => unreachable!("classical types only"),
    }
    Ok(HSequence { h, labels })
}

/// Bundled even diagrams of nilpotent orbits for the exceptional types, restricted to
/// weight-2 sets that give a 3- or 5-grading. Entries are 1-based labels.
pub const EXCEPTIONAL_DIAGRAMS: &[(RootType, usize, &[&[usize]])] = &[
    (RootType::E, 6, &[&[1, 6], &[2]]),
    (RootType::E, 7, &[&[1], &[2], &[6], &[7]]),
    (RootType::E, 8, &[&[1], &[8]]),
    (RootType::F, 4, &[&[1], &[4]]),
    (RootType::G, 2, &[&[2]]),
];

/// Whether an even weighted diagram is the diagram of a nilpotent element.
///
/// Classical types: some admissible partition reproduces the labels. Exceptional types: the
/// weight-2 set is looked up in [`EXCEPTIONAL_DIAGRAMS`]; diagrams whose weight-2 set gives a
/// grading wider than 5 are outside that list and rejected as unsupported.
pub fn is_nilpotent_diagram(d: &WeightedDiagram) -> Result<bool> {
    if d.weights.contains(&1) {
        return Err(Error::UnsupportedWeights(
            "weight-1 diagrams are not handled".into(),
        ));
    }
    if let Some(n) = natural_dim(d.root_type, d.rank) {
        let want: Vec<i64> = d.weights.iter().map(|&w| i64::from(w)).collect();
        for p in Partition::all(n) {
            if !admissible_partition(d.root_type, &p) {
                continue;
            }
            if h_sequence_from_partition(d.root_type, d.rank, &p)?
                .labels
                .contains(&want)
            {
                return Ok(true);
            }
        }
        return Ok(false);
    }
    let Some(j) = d.support() else {
        // the zero diagram belongs to the zero orbit
        return Ok(true);
    };
    let rs = RootSystem::new(d.root_type, d.rank)?;
    if rs.grading_width(&j) == crate::roots::GradingWidth::TooWide {
        return Err(Error::Unsupported(format!(
            "{} {} gives a grading wider than 5; no bundled data",
            rs.label(),
            j.display()
        )));
    }
    let labels = j.labels();
    Ok(EXCEPTIONAL_DIAGRAMS.iter().any(|(t, r, list)| {
        *t == d.root_type && *r == d.rank && list.contains(&labels.as_slice())
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn diag(ty: RootType, w: &[u8]) -> WeightedDiagram {
        WeightedDiagram::new(ty, w.len(), w.to_vec()).unwrap()
    }

    #[test]
    fn diagrams_from_j() {
        let g2 = RootSystem::new(RootType::G, 2).unwrap();
        assert_eq!(
            diagram_from_j(&g2, &JSubset::from_labels(2, &[2]).unwrap()).weights,
            vec![0, 2]
        );
        let a3 = RootSystem::new(RootType::A, 3).unwrap();
        assert_eq!(
            diagram_from_j(&a3, &JSubset::from_labels(3, &[1, 3]).unwrap()).weights,
            vec![2, 0, 2]
        );
        let e8 = RootSystem::new(RootType::E, 8).unwrap();
        let d = diagram_from_j(&e8, &JSubset::from_labels(8, &[1]).unwrap());
        assert_eq!(d.weights.iter().filter(|&&w| w == 2).count(), 1);
        assert_eq!(d.weights[0], 2);
    }

    #[test]
    fn h_sequences() {
        let a = h_sequence_from_partition(RootType::A, 3, &Partition::new(vec![2, 2])).unwrap();
        assert_eq!(a.h, vec![1, 1, -1, -1]);
        assert_eq!(a.labels, vec![vec![0, 2, 0]]);
        let b = h_sequence_from_partition(RootType::B, 2, &Partition::new(vec![3, 1, 1])).unwrap();
        assert_eq!(b.labels, vec![vec![2, 0]]);
        let c = h_sequence_from_partition(RootType::C, 3, &Partition::new(vec![2, 2, 2])).unwrap();
        assert_eq!(c.labels, vec![vec![0, 0, 2]]);
        let d =
            h_sequence_from_partition(RootType::D, 4, &Partition::new(vec![2, 2, 2, 2])).unwrap();
        assert_eq!(d.labels, vec![vec![0, 0, 0, 2], vec![0, 0, 2, 0]]);
    }

    #[test]
    fn multiplicity_rules() {
        assert!(matches!(
            h_sequence_from_partition(RootType::B, 2, &Partition::new(vec![2, 1, 1, 1])),
            Err(Error::BadMultiplicity(_))
        ));
        assert!(matches!(
            h_sequence_from_partition(RootType::C, 3, &Partition::new(vec![3, 2, 1])),
            Err(Error::BadMultiplicity(_))
        ));
        assert!(h_sequence_from_partition(RootType::C, 3, &Partition::new(vec![3, 3])).is_ok());
        assert!(matches!(
            h_sequence_from_partition(RootType::A, 3, &Partition::new(vec![2, 1])),
            Err(Error::BadMultiplicity(_))
        ));
    }

    #[test]
    fn partition_counts() {
        assert_eq!(Partition::all(5).len(), 7);
        assert_eq!(Partition::all(17).len(), 297);
        assert!(Partition::all(6).iter().all(|p| p.total() == 6));
    }

    #[test]
    fn nilpotent_decisions() {
        assert!(!is_nilpotent_diagram(&diag(RootType::A, &[2, 0])).unwrap());
        assert!(is_nilpotent_diagram(&diag(RootType::A, &[2, 2])).unwrap());
        assert!(is_nilpotent_diagram(&diag(RootType::G, &[0, 2])).unwrap());
        assert!(!is_nilpotent_diagram(&diag(RootType::C, &[2, 0, 0])).unwrap());
        assert!(is_nilpotent_diagram(&diag(RootType::C, &[0, 2, 0])).unwrap());
        assert!(matches!(
            is_nilpotent_diagram(&diag(RootType::A, &[1, 0])),
            Err(Error::UnsupportedWeights(_))
        ));
        assert!(is_nilpotent_diagram(&diag(RootType::E, &[2, 0, 0, 0, 0, 0, 0, 0])).unwrap());
        assert!(!is_nilpotent_diagram(&diag(RootType::E, &[0, 0, 2, 0, 0, 0])).unwrap());
    }

    #[test]
    fn a_diagrams_are_flip_symmetric() {
        for l in 1..=8usize {
            for p in Partition::all(l + 1) {
                for lab in h_sequence_from_partition(RootType::A, l, &p)
                    .unwrap()
                    .labels
                {
                    let mut rev = lab.clone();
                    rev.reverse();
                    assert_eq!(lab, rev);
                }
            }
        }
    }
}
