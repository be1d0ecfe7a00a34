//! Fixtures shared by the engine benchmarks.

use algmat::exactlin::FpMatrix;
use algmat::geometry::{p1xp1_23, sym_rank_one, veronese, JoinSpec, VarietySpec};
use algmat::terracini::MatroidComputationConfig;
use algmat::Result;

/// Stacked Jacobian of the `s`-secant of `spec` at the first generic sample.
pub fn stacked_jacobian(spec: VarietySpec, s: usize) -> Result<FpMatrix> {
    let cfg = MatroidComputationConfig::with_seed(0);
    let join = JoinSpec::secant(spec, s)?;
    let points = cfg.sampler.sample_points(cfg.field, &join, 0)?;
    join.join_jacobian_at(cfg.field, &points)
}

pub fn sym_secant_jacobian() -> Result<FpMatrix> {
    stacked_jacobian(sym_rank_one(8)?.into(), 3)
}

pub fn veronese_secant(d: u32) -> Result<JoinSpec> {
    JoinSpec::secant(veronese(2, d)?.into(), 2)
}

pub fn laface_secant() -> Result<JoinSpec> {
    JoinSpec::secant(p1xp1_23()?.into(), 2)
}
