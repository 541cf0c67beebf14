//! Lower-bound instances built from levels of clique clusters, and the
//! reference sampling frameworks whose iteration counts they inflate.

mod control;
mod generate;
mod reference;

pub use control::{reduce_mis_control, ImplicitGnm, CONTROL_RESIDUAL_LIMIT};
pub use generate::{gen_hard, integer_root, HardGraphSpec, Variant};
pub use reference::{
    reduce_mis_reference, reduce_mm_reference, ClusterCoverage, ProbRule, ReferenceRun,
    SurvivalTrace, TraceRow,
};
