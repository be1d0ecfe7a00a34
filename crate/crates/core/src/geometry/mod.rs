//! Parametrized varieties, their Jacobians and the point samplers used to
//! evaluate them.

mod builtin;
mod input;
mod sampler;
mod spec;

pub use builtin::*;
pub use input::{Entry, SpecDocument, SpecTarget};
pub use sampler::{Sampler, SamplerMode};
pub use spec::{
    compose_linear, generic_integer_matrix, JoinSpec, LinearChangeSpec, PolyMapSpec, ToricSpec,
    VarietySpec, DEFAULT_CHANGE_HEIGHT,
};
