//! Serializable reports and their text renderings.

use std::fmt::Write;

use algmat::matroid::{ElementSet, GroundSet, Matroid, PartitionOutcome};
use algmat::polytope::PatternMatch;
use algmat::terracini::{DefectReport, UnionCheckReport};
use algmat::Result;
use serde::Serialize;

#[derive(Serialize)]
pub struct MatroidReport {
    pub ground: Vec<String>,
    pub rank: usize,
    /// Absent when the ground set exceeds the enumeration cap.
    pub base_count: Option<usize>,
    pub loops: Vec<String>,
    pub coloops: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bases: Option<Vec<Vec<String>>>,
}

impl MatroidReport {
    pub fn new(m: &Matroid, cap: usize, with_bases: bool) -> Result<Self> {
        let g = m.ground();
        let (loops, coloops) = m.loops_and_coloops();
        let (base_count, bases) = if with_bases {
            let bases = m.enumerate_bases_capped(cap)?;
            (
                Some(bases.len()),
                Some(bases.into_iter().map(|b| g.names(b)).collect()),
            )
        } else if g.len() <= cap {
            (Some(m.base_count_capped(cap)?), None)
        } else {
            (None, None)
        };
        Ok(MatroidReport {
            ground: g.labels().to_vec(),
            rank: m.full_rank(),
            base_count,
            loops: g.names(loops),
            coloops: g.names(coloops),
            bases,
        })
    }

    pub fn text(&self) -> String {
        let mut s = match self.base_count {
            Some(b) => format!("rank {}, {b} bases\n", self.rank),
            None => format!(
                "rank {}, bases not counted (ground set above the cap)\n",
                self.rank
            ),
        };
        let _ = writeln!(
            s,
            "ground ({}): {}",
            self.ground.len(),
            self.ground.join(" ")
        );
        let _ = writeln!(s, "loops: {}", list(&self.loops));
        let _ = writeln!(s, "coloops: {}", list(&self.coloops));
        if let Some(bases) = &self.bases {
            for b in bases {
                let _ = writeln!(s, "  {}", b.join(" "));
            }
        }
        s
    }
}

fn list(v: &[String]) -> String {
    if v.is_empty() {
        "none".into()
    } else {
        v.join(" ")
    }
}

pub fn defect_text(d: &DefectReport) -> String {
    let dims: Vec<String> = d.summand_dims.iter().map(|x| x.to_string()).collect();
    format!(
        "dimension {} (expected {}, summands {}), defect {}{}\n",
        d.actual_dim,
        d.expected_dim,
        dims.join("+"),
        d.defect,
        if d.defective { ", defective" } else { "" }
    )
}

#[derive(Serialize)]
pub struct JoinReport {
    pub summands: usize,
    pub matroid: MatroidReport,
    pub defect: DefectReport,
}

impl JoinReport {
    pub fn text(&self) -> String {
        format!(
            "{} summands\n{}{}",
            self.summands,
            self.matroid.text(),
            defect_text(&self.defect)
        )
    }
}

#[derive(Serialize)]
pub struct UnionCheckOutput {
    #[serde(flatten)]
    pub report: UnionCheckReport,
    pub missing_labels: Vec<Vec<String>>,
}

impl UnionCheckOutput {
    pub fn new(report: UnionCheckReport) -> Self {
        let missing_labels = report.missing_labels();
        UnionCheckOutput {
            report,
            missing_labels,
        }
    }

    pub fn text(&self) -> String {
        let r = &self.report;
        let mut s = String::new();
        let _ = writeln!(
            s,
            "{}",
            if r.is_terracini_union {
                "Terracini union"
            } else {
                "not a Terracini union"
            }
        );
        let _ = writeln!(
            s,
            "union: rank {}, {} bases",
            r.union_rank, r.union_base_count
        );
        let _ = writeln!(
            s,
            "join:  rank {}, {} bases",
            r.join_rank, r.join_base_count
        );
        let _ = writeln!(s, "missing bases: {}", r.missing_bases.len());
        for (labels, w) in self.missing_labels.iter().zip(&r.witnesses) {
            let _ = writeln!(
                s,
                "  {}  projected dim {} < {}",
                labels.join(" "),
                w.actual_dim,
                w.expected_dim
            );
        }
        s
    }
}

#[derive(Serialize)]
pub struct RankReport {
    pub subset: Vec<String>,
    pub rank: usize,
    pub projected: DefectReport,
}

impl RankReport {
    pub fn text(&self) -> String {
        format!(
            "rank of {{{}}}: {}\nprojected join: {}",
            self.subset.join(", "),
            self.rank,
            defect_text(&self.projected)
        )
    }
}

#[derive(Serialize)]
pub struct PartitionReport {
    pub subset: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub parts: Option<Vec<Vec<String>>>,
    pub union_rank: usize,
    pub independent: bool,
}

impl PartitionReport {
    pub fn new(ground: &GroundSet, subset: ElementSet, outcome: PartitionOutcome) -> Self {
        let subset_names = ground.names(subset);
        match outcome {
            PartitionOutcome::Certificate(c) => PartitionReport {
                subset: subset_names,
                parts: Some(c.parts.iter().map(|p| ground.names(*p)).collect()),
                union_rank: subset.len(),
                independent: true,
            },
            PartitionOutcome::Dependent { union_rank, .. } => PartitionReport {
                subset: subset_names,
                parts: None,
                union_rank,
                independent: false,
            },
        }
    }

    pub fn text(&self) -> String {
        let mut s = String::new();
        match &self.parts {
            Some(parts) => {
                let _ = writeln!(s, "independent in the union; parts:");
                for (i, p) in parts.iter().enumerate() {
                    let _ = writeln!(s, "  {}: {}", i + 1, list(p));
                }
            }
            None => {
                let _ = writeln!(
                    s,
                    "dependent in the union: rank {} < {}",
                    self.union_rank,
                    self.subset.len()
                );
            }
        }
        s
    }
}

#[derive(Serialize)]
pub struct ScanMatch {
    pub offset: Vec<i64>,
    pub indices: Vec<usize>,
    pub labels: Vec<String>,
    pub union_basis: bool,
    pub join_independent: bool,
    pub missing_basis: bool,
}

impl ScanMatch {
    pub fn new(
        m: &PatternMatch,
        ground: &GroundSet,
        union_basis: bool,
        join_independent: bool,
    ) -> Self {
        ScanMatch {
            offset: m.offset.clone(),
            indices: m.indices.clone(),
            labels: m
                .indices
                .iter()
                .map(|&i| ground.label(i).to_string())
                .collect(),
            union_basis,
            join_independent,
            missing_basis: union_basis && !join_independent,
        }
    }
}

#[derive(Serialize)]
pub struct ScanReport {
    pub points: Vec<Vec<i64>>,
    pub pattern: Vec<Vec<i64>>,
    pub matches: Vec<ScanMatch>,
}

impl ScanReport {
    pub fn text(&self) -> String {
        let mut s = format!(
            "{} lattice points, pattern of {} points, {} matches\n",
            self.points.len(),
            self.pattern.len(),
            self.matches.len()
        );
        for m in &self.matches {
            let _ = writeln!(
                s,
                "  offset {:?}: {}  {}",
                m.offset,
                m.labels.join(" "),
                if m.missing_basis {
                    "missing basis"
                } else if !m.union_basis {
                    "not a basis of the union"
                } else {
                    "independent in the secant"
                }
            );
        }
        s
    }
}
