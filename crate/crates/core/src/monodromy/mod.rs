//! Monodromy and connection matrices, the Picard-Fuchs operator on series,
//! and numerical analytic continuation.

mod matrix;
mod pf;
mod transport;

pub use matrix::{
    builtin_matrices, verify_identities_of, verify_matrix_identities, BuiltinMatrices, IdentityCheck, MatrixReport,
    RationalMatrix4,
};
pub use pf::{pf_apply, pf_apply_gepner, pf_relative_residual, pf_relative_residual_gepner};
pub use transport::{
    connection_matrix, default_tolerance, loop_monodromy, loop_path, monodromy_relation, start_wronskian, transport,
    transport_checked, ConnectionResult, ContinuationPath, DetourSide, LoopBasis, LoopPoint, LoopResult,
    MonodromyRelation, Transported, DEFAULT_DETOUR,
};
