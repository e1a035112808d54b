//! Period bases of the quintic Picard-Fuchs equation
//! `θ^4 − 5^5 x (θ+4/5)(θ+3/5)(θ+2/5)(θ+1/5)`, `θ = x d/dx`.

mod gepner;
mod hypergeometric;
mod lcc;

use rug::Complex;

pub use gepner::{gepner_period_vector, gepner_required_terms, GepnerBasis, GepnerCoordinate, GEPNER_INDICES};
pub use hypergeometric::{derivative_table, first_derivative_coeff, harmonic, hypergeometric_coeff};
pub use lcc::{
    asymptotic_residual, lcc_period_vector, leading_log_polynomial, omega_derivatives, required_terms, LccBasis,
    CONIFOLD,
};

/// Which local basis a period vector is expressed in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisTag {
    /// `Π_B = (w^{(0)}, w^{(1)}, w^{(2)}, w^{(3)})` at `x = 0`.
    Lcc,
    /// `Π_B^∞ = (ω_0^∞, ω_1^∞, ω_2^∞, ω_4^∞)` at `x = ∞`.
    Gepner,
}

/// Four periods at one point. `x` is the Picard-Fuchs coordinate for
/// [`BasisTag::Lcc`] and the Gepner coordinate `ψ` for [`BasisTag::Gepner`].
#[derive(Clone, Debug, PartialEq)]
pub struct PeriodVector {
    pub entries: [Complex; 4],
    pub basis: BasisTag,
    pub x: Complex,
    /// Estimated absolute truncation error per entry.
    pub error_bound: f64,
}

impl PeriodVector {
    /// 1-based access, so `entry(4)` is the last entry.
    pub fn entry(&self, i: usize) -> &Complex {
        assert!((1..=4).contains(&i), "period vector index {i} outside 1..=4");
        &self.entries[i - 1]
    }

    pub fn is_finite(&self) -> bool {
        self.entries.iter().all(crate::numeric::is_finite)
    }
}
