//! The table of sets `J` whose grading comes from a structurable algebra.

use serde::{Deserialize, Serialize};

use crate::classify::{diagram_from_j, is_nilpotent_diagram};
use crate::error::{Error, Result};
use crate::roots::{JSubset, RootSystem, RootType};

const GOLDEN: &str = include_str!("../../data/golden_table.json");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Structurable,
    NotStructurable,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Transcribed data: the golden file and the bundled exceptional diagrams.
    TranscribedTable,
    PartitionOracle,
    /// Confirmed by a unit-pair witness or an exhaustive search.
    StructuralCheck,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TableEntry {
    #[serde(rename = "type")]
    pub root_type: RootType,
    pub rank: usize,
    /// 1-based labels.
    #[serde(rename = "J")]
    pub j: Vec<usize>,
    pub verdict: Verdict,
    pub provenance: Provenance,
}

impl TableEntry {
    pub fn subset(&self) -> Result<JSubset> {
        JSubset::from_labels(self.rank, &self.j)
    }

    pub fn key(&self) -> String {
        format!("{}{} {:?}", self.root_type, self.rank, self.j)
    }
}

/// Every admissible `J` (at most two simple roots, grading of width at most 5) with its verdict.
pub fn generate_table(ty: RootType, rank: usize) -> Result<Vec<TableEntry>> {
    let rs = RootSystem::new(ty, rank)?;
    let provenance = if ty.is_classical() {
        Provenance::PartitionOracle
    } else {
        Provenance::TranscribedTable
    };
    rs.admissible_subsets()
        .into_iter()
        .map(|j| {
            let nilpotent = is_nilpotent_diagram(&diagram_from_j(&rs, &j))?;
            Ok(TableEntry {
                root_type: ty,
                rank,
                j: j.labels(),
                verdict: if nilpotent {
                    Verdict::Structurable
                } else {
                    Verdict::NotStructurable
                },
                provenance,
            })
        })
        .collect()
}

/// The bundled golden rows (structurable entries only) for every type in the sweep.
pub fn golden_table() -> Vec<TableEntry> {
    serde_json::from_str(GOLDEN).expect("bundled golden table parses")
}

pub fn golden_rows(ty: RootType, rank: usize) -> Vec<TableEntry> {
    golden_table()
        .into_iter()
        .filter(|e| e.root_type == ty && e.rank == rank)
        .collect()
}

/// Types and ranks covered by the golden file.
pub fn golden_types() -> Vec<(RootType, usize)> {
    let mut out: Vec<(RootType, usize)> = Vec::new();
    for e in golden_table() {
        if !out.contains(&(e.root_type, e.rank)) {
            out.push((e.root_type, e.rank));
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableDiff {
    #[serde(rename = "type")]
    pub root_type: RootType,
    pub rank: usize,
    pub expected: Vec<Vec<usize>>,
    pub generated: Vec<Vec<usize>>,
    pub missing: Vec<Vec<usize>>,
    pub unexpected: Vec<Vec<usize>>,
}

impl TableDiff {
    pub fn matches(&self) -> bool {
        self.expected == self.generated
    }

    /// One line per structurable `J`, prefixed `-` when missing and `+` when unexpected.
    pub fn render(&self) -> String {
        let fmt = |j: &[usize]| {
            let parts: Vec<String> = j.iter().map(|l| format!("a{l}")).collect();
            format!("{{{}}}", parts.join(","))
        };
        let mut out = format!("{}{}:", self.root_type, self.rank);
        if self.matches() {
            let rows: Vec<String> = self.generated.iter().map(|j| fmt(j)).collect();
            out.push_str(&format!(" ok {}", rows.join("; ")));
        } else {
            for j in &self.missing {
                out.push_str(&format!("\n  - {}", fmt(j)));
            }
            for j in &self.unexpected {
                out.push_str(&format!("\n  + {}", fmt(j)));
            }
            if self.missing.is_empty() && self.unexpected.is_empty() {
                out.push_str(" rows agree as sets but not in order");
            }
        }
        out
    }
}

/// Compare the structurable rows of a generated table with the golden file.
pub fn diff_against_golden(
    ty: RootType,
    rank: usize,
    generated: &[TableEntry],
) -> Result<TableDiff> {
    if generated
        .iter()
        .any(|e| e.root_type != ty || e.rank != rank)
    {
        return Err(Error::DimensionMismatch(
            "table rows for a different type".into(),
        ));
    }
    let expected: Vec<Vec<usize>> = golden_rows(ty, rank).into_iter().map(|e| e.j).collect();
    let generated: Vec<Vec<usize>> = generated
        .iter()
        .filter(|e| e.verdict == Verdict::Structurable)
        .map(|e| e.j.clone())
        .collect();
    let missing = expected
        .iter()
        .filter(|j| !generated.contains(j))
        .cloned()
        .collect();
    let unexpected = generated
        .iter()
        .filter(|j| !expected.contains(j))
        .cloned()
        .collect();
    Ok(TableDiff {
        root_type: ty,
        rank,
        expected,
        generated,
        missing,
        unexpected,
    })
}
