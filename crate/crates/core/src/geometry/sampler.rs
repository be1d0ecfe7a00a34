//! Parameter-point samplers for Jacobian evaluation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::JoinSpec;
use crate::error::{arg_err, Result};
use crate::exactlin::PrimeField;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
pub enum SamplerMode {
    /// Uniform nonzero field elements.
    Generic,
    /// One torus point `Γ_v(a)` per summand; does not vary with the trial.
    Subgroup {
        directions: Vec<Vec<i64>>,
        base: i64,
    },
    /// Fixed points, one per summand (reduced into the field).
    Explicit { points: Vec<Vec<i64>> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Sampler {
    #[serde(flatten)]
    pub mode: SamplerMode,
    pub seed: u64,
}

impl Default for Sampler {
    fn default() -> Self {
        Sampler::generic(0)
    }
}

impl Sampler {
    pub fn generic(seed: u64) -> Self {
        Sampler {
            mode: SamplerMode::Generic,
            seed,
        }
    }

    pub fn subgroup(directions: Vec<Vec<i64>>, base: i64) -> Self {
        Sampler {
            mode: SamplerMode::Subgroup { directions, base },
            seed: 0,
        }
    }

    pub fn explicit(points: Vec<Vec<i64>>) -> Self {
        Sampler {
            mode: SamplerMode::Explicit { points },
            seed: 0,
        }
    }

    /// Whether distinct trials can produce distinct points.
    pub fn is_random(&self) -> bool {
        matches!(self.mode, SamplerMode::Generic)
    }

    /// One parameter vector per summand of `join`. The result depends only
    /// on the seed and the trial index.
    pub fn sample_points(
        &self,
        field: PrimeField,
        join: &JoinSpec,
        trial: u64,
    ) -> Result<Vec<Vec<u64>>> {
        match &self.mode {
            SamplerMode::Generic => {
                let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
                rng.set_stream(trial);
                let p = field.modulus();
                Ok(join
                    .summands()
                    .iter()
                    .map(|s| {
                        (0..s.parameter_count())
                            .map(|_| rng.gen_range(1..p))
                            .collect()
                    })
                    .collect())
            }
            SamplerMode::Subgroup { directions, base } => {
                if directions.len() != join.len() {
                    return arg_err(format!(
                        "subgroup sampler needs {} direction vectors, got {}",
                        join.len(),
                        directions.len()
                    ));
                }
                join.summands()
                    .iter()
                    .zip(directions)
                    .map(|(s, v)| s.subgroup_point(field, v, *base))
                    .collect()
            }
            SamplerMode::Explicit { points } => {
                if points.len() != join.len() {
                    return arg_err(format!(
                        "explicit sampler needs {} points, got {}",
                        join.len(),
                        points.len()
                    ));
                }
                for (s, p) in join.summands().iter().zip(points) {
                    if p.len() != s.parameter_count() {
                        return arg_err(format!(
                            "point has {} parameters, summand needs {}",
                            p.len(),
                            s.parameter_count()
                        ));
                    }
                }
                Ok(points
                    .iter()
                    .map(|p| p.iter().map(|&v| field.reduce_i64(v)).collect())
                    .collect())
            }
        }
    }
}
