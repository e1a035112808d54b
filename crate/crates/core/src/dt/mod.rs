//! Quantum dilogarithm, the quasimodular form `G_2(τ/2) − G_2(τ)`, the
//! numerical `G_2`/`K` checks and the pentagon identity.

mod dilog;
mod eisenstein;
mod torus;

pub use dilog::{
    log_dilog_check, log_dilog_closed_form, quantum_dilog, quasimodular_identity, recover_dilog, second_tau_derivative, sigma1,
    CoefficientCheck, QuasimodularReport, QuasimodularRow,
};
pub use eisenstein::{
    g2, g2_numeric, g2_tail_bound, g2_terms, j_function, k_failure, k_inversion_defect, k_shift_defect, MAX_G2_TERMS,
};
pub use torus::{
    dilog_coefficient_exact, dilog_of, pentagon_check, pentagon_check_with, pentagon_control, DilogNormalization, LaurentPoly,
    PentagonReport, QuantumTorusElement, RatFunc, MAX_PENTAGON_DEGREE,
};
