//! Coloring procedures built on forest decompositions.

mod arb;
mod defective;
mod partial;
mod recursive;
pub mod linial;
mod types;

pub use types::{Coloring, ColoringKind, PartialOrientation};
pub use arb::{arb_linial, color_a2, fast_coloring_a2eps, forests_then_linial, ArbLinialOutcome, PipelineOutcome};
pub use defective::{defective_coloring, defective_local, DefectiveOutcome, DefectivePlan};
pub use partial::{
    arbdefective_bound, arbdefective_coloring_cc, least_used, partial_orientation_cc, simple_arbdefective,
    ArbdefectiveOutcome, PartialOutcome,
};
pub use recursive::{
    learn_groups, o_a_coloring, o_a_parameters, proper_coloring_cc, recursive_split, ProperOutcome, Split,
};
