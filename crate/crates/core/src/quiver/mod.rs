//! Quivers with relations, their representations, stability data on the
//! simples, HN filtrations, tilting and wall-crossing.

mod graph;
mod hn;
mod rep;
mod stability;
mod tilt;

pub use graph::{build_a3_5, build_kronecker_doubled, build_linear_a, ext1_nonzero, Arrow, Quiver, Relation};
pub use hn::{
    hn_bruteforce_oracle, hn_filtration, is_semistable, is_stable, HNLayer, HNResult, MAX_HN_NODES, MAX_NON_THIN_DIM,
    MAX_ORACLE_DIM,
};
pub use rep::{QuiverRep, RatMatrix};
pub use stability::{
    a3_5_quiver, a3_5_stability, check_condition2, level_gaps, make_stability, with_phases, LevelGaps, LiftPolicy, RegimeTag,
    StabilityData, PHASE_TOLERANCE,
};
pub use tilt::{tilt, wallcross_second_kind, HypothesisSource, SecondKindWitness, TiltedHeart, WITNESS_TOLERANCE};
