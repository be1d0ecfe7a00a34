//! Algebraic matroids of varieties and joins, defects, and the
//! Terracini-union decision procedure.
//!
//! A join's matroid is the column matroid of the stacked summand Jacobians
//! at sampled points. Sampling can only lower ranks, so independence verdicts
//! are certain and dependence verdicts are probabilistic; the rank of a set
//! is the maximum over all trials.

use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{arg_err, Error, Result};
use crate::exactlin::PrimeField;
use crate::geometry::{JoinSpec, Sampler, VarietySpec};
use crate::matroid::{
    matroid_union, partition_certificate, weak_order_leq, ElementSet, Matroid,
    PartitionCertificate, PartitionOutcome, Provenance, ProvenanceKind, SampledLinearOracle,
    DEFAULT_ENUMERATION_CAP,
};

pub const DEFAULT_TRIALS: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidComputationConfig {
    pub sampler: Sampler,
    pub trials: usize,
    /// Re-certify every sampled dependency by symbolic rank.
    pub verify_symbolic: bool,
    /// Largest ground set for which bases are enumerated.
    pub cap: usize,
    #[serde(serialize_with = "serialize_field")]
    pub field: PrimeField,
}

fn serialize_field<S: serde::Serializer>(
    f: &PrimeField,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_u64(f.modulus())
}

impl Default for MatroidComputationConfig {
    fn default() -> Self {
        MatroidComputationConfig {
            sampler: Sampler::default(),
            trials: DEFAULT_TRIALS,
            verify_symbolic: false,
            cap: DEFAULT_ENUMERATION_CAP,
            field: PrimeField::default(),
        }
    }
}

impl MatroidComputationConfig {
    pub fn with_seed(seed: u64) -> Self {
        MatroidComputationConfig {
            sampler: Sampler::generic(seed),
            ..Default::default()
        }
    }

    pub fn with_sampler(mut self, sampler: Sampler) -> Self {
        self.sampler = sampler;
        self
    }

    pub fn with_trials(mut self, trials: usize) -> Self {
        self.trials = trials;
        self
    }

    pub fn with_symbolic(mut self, on: bool) -> Self {
        self.verify_symbolic = on;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return arg_err("trials must be at least 1");
        }
        Ok(())
    }

    /// Distinct trial indices actually evaluated.
    fn effective_trials(&self) -> u64 {
        if self.sampler.is_random() {
            self.trials as u64
        } else {
            1
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DefectReport {
    pub summand_dims: Vec<usize>,
    pub actual_dim: usize,
    pub expected_dim: usize,
    pub defect: usize,
    pub defective: bool,
}

impl DefectReport {
    fn new(summand_dims: Vec<usize>, ambient: usize, actual: usize) -> Result<Self> {
        let expected = summand_dims.iter().sum::<usize>().min(ambient);
        if actual > expected {
            return Err(Error::Anomaly(format!(
                "join dimension {actual} exceeds its expected dimension {expected}"
            )));
        }
        Ok(DefectReport {
            summand_dims,
            actual_dim: actual,
            expected_dim: expected,
            defect: expected - actual,
            defective: actual < expected,
        })
    }
}

/// Jacobian-backed matroid of a join, ignoring any exact toric shortcut.
pub fn jacobian_matroid(join: &JoinSpec, cfg: &MatroidComputationConfig) -> Result<Matroid> {
    cfg.validate()?;
    let samples = (0..cfg.effective_trials())
        .map(|t| {
            let pts = cfg.sampler.sample_points(cfg.field, join, t)?;
            join.join_jacobian_at(cfg.field, &pts)
        })
        .collect::<Result<Vec<_>>>()?;
    let symbolic = if cfg.verify_symbolic {
        Some(join.symbolic_jacobian()?)
    } else {
        None
    };
    let provenance = Provenance {
        kind: ProvenanceKind::Jacobian,
        params: serde_json::json!({
            "summands": join.len(),
            "sampler": cfg.sampler,
            "trials": cfg.trials,
            "prime": cfg.field.modulus(),
            "verify_symbolic": cfg.verify_symbolic,
        }),
    };
    Ok(Matroid::from_oracle(
        join.labels().clone(),
        SampledLinearOracle::new(samples, symbolic),
        provenance,
    ))
}

/// `M(X)`. Toric specs use the exact column matroid of the exponent matrix.
pub fn algebraic_matroid(spec: &VarietySpec, cfg: &MatroidComputationConfig) -> Result<Matroid> {
    cfg.validate()?;
    match spec.as_toric() {
        Some(t) => t.column_matroid(),
        None => jacobian_matroid(&JoinSpec::from(spec.clone()), cfg),
    }
}

/// `M(X_1 + .. + X_s)`. A one-summand join is the summand's own matroid.
pub fn join_matroid(join: &JoinSpec, cfg: &MatroidComputationConfig) -> Result<Matroid> {
    if join.len() == 1 && cfg.sampler.is_random() {
        return algebraic_matroid(&join.summands()[0], cfg);
    }
    jacobian_matroid(join, cfg)
}

pub fn secant_matroid(
    spec: &VarietySpec,
    s: usize,
    cfg: &MatroidComputationConfig,
) -> Result<Matroid> {
    join_matroid(&JoinSpec::secant(spec.clone(), s)?, cfg)
}

/// Cached matroids of a join and of its distinct summands.
pub struct JoinAnalysis {
    join: JoinSpec,
    cfg: MatroidComputationConfig,
    distinct: Vec<usize>,
    summands: Vec<Matroid>,
    join_matroid: OnceLock<Matroid>,
}

impl JoinAnalysis {
    pub fn new(join: JoinSpec, cfg: MatroidComputationConfig) -> Result<Self> {
        cfg.validate()?;
        let mut reps: Vec<usize> = Vec::new();
        let mut distinct = Vec::with_capacity(join.len());
        for (i, s) in join.summands().iter().enumerate() {
            match reps.iter().position(|&r| join.summands()[r] == *s) {
                Some(k) => distinct.push(k),
                None => {
                    distinct.push(reps.len());
                    reps.push(i);
                }
            }
        }
        // summand matroids are always generic, whatever sampler the join uses
        let generic = MatroidComputationConfig {
            sampler: Sampler::generic(cfg.sampler.seed),
            ..cfg.clone()
        };
        let unique = reps
            .iter()
            .map(|&r| algebraic_matroid(&join.summands()[r], &generic))
            .collect::<Result<Vec<_>>>()?;
        let summands = distinct.iter().map(|&k| unique[k].clone()).collect();
        Ok(JoinAnalysis {
            join,
            cfg,
            distinct,
            summands,
            join_matroid: OnceLock::new(),
        })
    }

    pub fn join(&self) -> &JoinSpec {
        &self.join
    }

    pub fn config(&self) -> &MatroidComputationConfig {
        &self.cfg
    }

    pub fn summand_matroids(&self) -> &[Matroid] {
        &self.summands
    }

    pub fn join_matroid(&self) -> Result<&Matroid> {
        if let Some(m) = self.join_matroid.get() {
            return Ok(m);
        }
        let m = join_matroid(&self.join, &self.cfg)?;
        Ok(self.join_matroid.get_or_init(|| m))
    }

    pub fn union_matroid(&self) -> Result<Matroid> {
        matroid_union(&self.summands)
    }

    pub fn dimension(&self) -> Result<usize> {
        Ok(self.join_matroid()?.full_rank())
    }

    fn check_subset(&self, set: ElementSet) -> Result<()> {
        if !set.is_subset(self.join.labels().all()) {
            return arg_err("subset leaves the ground set");
        }
        Ok(())
    }

    pub fn subset_rank(&self, set: ElementSet) -> Result<usize> {
        self.join_matroid()?.rank(set)
    }

    pub fn defect(&self) -> Result<DefectReport> {
        let dims = self.summands.iter().map(Matroid::full_rank).collect();
        DefectReport::new(dims, self.join.coordinate_count(), self.dimension()?)
    }

    /// Defect of the join of the projections to the coordinates `set`.
    pub fn projected_join_defect(&self, set: ElementSet) -> Result<DefectReport> {
        self.check_subset(set)?;
        if set.is_empty() {
            return arg_err("projection to the empty set");
        }
        let dims = self
            .summands
            .iter()
            .map(|m| m.rank(set))
            .collect::<Result<Vec<_>>>()?;
        DefectReport::new(dims, set.len(), self.subset_rank(set)?)
    }

    pub fn union_check(&self) -> Result<UnionCheckReport> {
        let n = self.join.coordinate_count();
        if n > self.cfg.cap {
            return Err(Error::CapExceeded {
                size: n,
                cap: self.cfg.cap,
            });
        }
        let union = self.union_matroid()?;
        let join_m = self.join_matroid()?;
        let union_bases = union.enumerate_bases_capped(self.cfg.cap)?;
        let join_count = join_m.base_count_capped(self.cfg.cap)?;
        let missing: Vec<ElementSet> = union_bases
            .par_iter()
            .filter(|b| !join_m.independent_unchecked(**b))
            .copied()
            .collect();
        let witnesses = missing
            .par_iter()
            .map(|b| self.projected_join_defect(*b))
            .collect::<Result<Vec<_>>>()?;
        if let Some((b, _)) = missing.iter().zip(&witnesses).find(|(_, w)| !w.defective) {
            return Err(Error::Anomaly(format!(
                "basis {:?} of the union is dependent in the join but its projection is not defective; \
                 rerun with more trials or symbolic verification",
                self.join.labels().names(*b)
            )));
        }
        if missing.is_empty() && join_count != union_bases.len() {
            return Err(Error::Anomaly(format!(
                "join matroid has {join_count} bases but the union has {}; a join basis is not union-independent",
                union_bases.len()
            )));
        }
        let union_rank = union.full_rank();
        let join_rank = join_m.full_rank();
        Ok(UnionCheckReport {
            ground: self.join.labels().labels().to_vec(),
            summands: self.join.len(),
            union_rank,
            join_rank,
            rank_gap: union_rank.saturating_sub(join_rank),
            union_base_count: union_bases.len(),
            join_base_count: join_count,
            is_terracini_union: missing.is_empty(),
            missing_bases: missing,
            witnesses,
        })
    }

    /// A partition certificate for every basis of the join matroid.
    pub fn subunion_verify(&self) -> Result<Vec<PartitionCertificate>> {
        let bases = self.join_matroid()?.enumerate_bases_capped(self.cfg.cap)?;
        bases
            .par_iter()
            .map(|b| match partition_certificate(&self.summands, *b)? {
                PartitionOutcome::Certificate(c) => Ok(c),
                PartitionOutcome::Dependent { union_rank, size } => Err(Error::Anomaly(format!(
                    "join basis {:?} has union rank {union_rank} < {size}",
                    self.join.labels().names(*b)
                ))),
            })
            .collect()
    }

    /// Whether the join matroid lies below the union in the weak order.
    pub fn weak_order_sandwich(&self) -> Result<bool> {
        weak_order_leq(self.join_matroid()?, &self.union_matroid()?)
    }

    /// Number of distinct summand specifications.
    pub fn distinct_summands(&self) -> usize {
        self.distinct.iter().max().map_or(0, |m| m + 1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct UnionCheckReport {
    pub ground: Vec<String>,
    pub summands: usize,
    pub union_rank: usize,
    pub join_rank: usize,
    /// `rank(M_∨) - rank(M(join))`; positive only when the join is defective.
    pub rank_gap: usize,
    pub union_base_count: usize,
    pub join_base_count: usize,
    pub is_terracini_union: bool,
    /// Bases of the union that are dependent in the join, in lex order.
    pub missing_bases: Vec<ElementSet>,
    /// Defect of the projected join for each missing basis.
    pub witnesses: Vec<DefectReport>,
}

impl UnionCheckReport {
    pub fn missing_labels(&self) -> Vec<Vec<String>> {
        self.missing_bases
            .iter()
            .map(|b| b.iter().map(|i| self.ground[i].clone()).collect())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConeReport {
    pub dimension: usize,
    pub ambient: usize,
    pub loops: Vec<String>,
    pub coloops: Vec<String>,
    /// With a coloop present: the 2-secant dimension.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secant_dimension: Option<usize>,
    /// With a coloop present: whether the 2-secant fills the space or the
    /// variety is defective, as it must be.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub coloop_dichotomy_holds: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub secant_fills_space: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defective: Option<bool>,
}

pub fn dimension(join: &JoinSpec, cfg: &MatroidComputationConfig) -> Result<usize> {
    Ok(join_matroid(join, cfg)?.full_rank())
}

pub fn defect(join: &JoinSpec, cfg: &MatroidComputationConfig) -> Result<DefectReport> {
    JoinAnalysis::new(join.clone(), cfg.clone())?.defect()
}

pub fn subset_rank(
    join: &JoinSpec,
    set: ElementSet,
    cfg: &MatroidComputationConfig,
) -> Result<usize> {
    join_matroid(join, cfg)?.rank(set)
}

pub fn projected_join_defect(
    join: &JoinSpec,
    set: ElementSet,
    cfg: &MatroidComputationConfig,
) -> Result<DefectReport> {
    JoinAnalysis::new(join.clone(), cfg.clone())?.projected_join_defect(set)
}

pub fn union_check(join: &JoinSpec, cfg: &MatroidComputationConfig) -> Result<UnionCheckReport> {
    JoinAnalysis::new(join.clone(), cfg.clone())?.union_check()
}

pub fn subunion_verify(
    join: &JoinSpec,
    cfg: &MatroidComputationConfig,
) -> Result<Vec<PartitionCertificate>> {
    JoinAnalysis::new(join.clone(), cfg.clone())?.subunion_verify()
}

/// Loops and coloops of `M(X)`; with a coloop, checks that either the
/// 2-secant fills the ambient space or `X` is defective.
pub fn cone_analysis(spec: &VarietySpec, cfg: &MatroidComputationConfig) -> Result<ConeReport> {
    let m = algebraic_matroid(spec, cfg)?;
    let (loops, coloops) = m.loops_and_coloops();
    let ground = m.ground();
    let n = ground.len();
    let dim = m.full_rank();
    let mut report = ConeReport {
        dimension: dim,
        ambient: n,
        loops: ground.names(loops),
        coloops: ground.names(coloops),
        secant_dimension: None,
        coloop_dichotomy_holds: None,
        secant_fills_space: None,
        defective: None,
    };
    if !coloops.is_empty() {
        let d2 = secant_matroid(spec, 2, cfg)?.full_rank();
        let fills = d2 == n;
        let defective = d2 < (2 * dim).min(n);
        report.secant_dimension = Some(d2);
        report.secant_fills_space = Some(fills);
        report.defective = Some(defective);
        report.coloop_dichotomy_holds = Some(fills || defective);
    }
    Ok(report)
}
