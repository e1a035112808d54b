//! Periods of the quintic and A1 mirror families, their monodromy, and the
//! stability conditions they induce on quiver hearts.
//!
//! The crate is organised bottom-up:
//!
//! - [`series`]: exact and high-precision truncated series.
//! - [`periods`]: the large-complex-structure and Gepner period bases.
//! - [`monodromy`]: monodromy/connection matrices, Picard-Fuchs residuals and
//!   numerical analytic continuation.
//! - [`charges`]: central charges, mirror map, Yukawa coupling.
//! - [`quiver`]: quivers with relations, stability data, HN filtrations,
//!   tilting and wall-crossing.
//! - [`a1`]: the A1 GKZ periods and the doubled Kronecker quiver.
//! - [`dt`]: quantum dilogarithm, Eisenstein series and the pentagon identity.
//!
//! All computations are pure; values are immutable once built.

pub mod a1;
pub mod charges;
pub mod dt;
pub mod error;
pub mod monodromy;
pub mod numeric;
pub mod periods;
pub mod quiver;
pub mod series;

pub use error::{Error, Result};
pub use numeric::{BigComplex, DEFAULT_PRECISION};
