//! Central charges from period vectors, the mirror map, and the `q`-series
//! built on it.

mod central;
mod qseries;

pub use central::{
    basis_certificate, mirror_map, stable_charge_sum, z_gepner, z_gepner_from, z_lcc, z_lcc_from, z_modified,
    z_modified_from, ChargeAssignment, ModifiedVariant, Regime, SimpleIndex, StableChargeSum,
};
pub use qseries::{
    f1_series, instanton_numbers, mirror_map_qseries, q_of_x, yukawa_qseries, F1Series, InstantonNumber,
    MAX_QSERIES_ORDER,
};
