use anyhow::Result;
use clap::{Args, ValueEnum};
use qstab_core::monodromy::{connection_matrix, DetourSide, DEFAULT_DETOUR};
use serde::Serialize;

use crate::format::{self, decimal, DecimalComplex, Format};
use crate::{Outcome, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Side {
    Above,
    Below,
}

#[derive(Args, Debug)]
pub struct TransportArgs {
    /// Start in the LCC disc, `re` or `re,im`.
    #[arg(long, default_value = "1e-4", allow_hyphen_values = true)]
    from: String,
    /// End outside the conifold radius, `re` or `re,im`.
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    to: String,
    /// Distance by which the path avoids `x = 5^-5`.
    #[arg(long, default_value_t = DEFAULT_DETOUR)]
    delta: f64,
    #[arg(long, value_enum, default_value_t = Side::Below)]
    side: Side,
}

#[derive(Serialize)]
struct TransportJson {
    matrix: Vec<Vec<DecimalComplex>>,
    winding_power: i64,
    deviation: f64,
    error_estimate: f64,
    steps: usize,
}

#[derive(Serialize)]
struct EntryRow {
    row: usize,
    col: usize,
    re: String,
    im: String,
}

pub fn run(args: &TransportArgs, cfg: &RunConfig) -> Result<Outcome> {
    let prec = cfg.precision;
    let from = format::parse_point(&args.from, prec)?;
    let to = format::parse_point(&args.to, prec)?;
    let side = match args.side {
        Side::Above => DetourSide::Above,
        Side::Below => DetourSide::Below,
    };
    let c = connection_matrix(&from, &to, args.delta, side, prec)?;
    let n = c.matrix.dim();
    let body = match cfg.format {
        Format::Json => format::json(&TransportJson {
            matrix: (0..n).map(|i| c.matrix.row(i).iter().map(decimal).collect()).collect(),
            winding_power: c.winding_power,
            deviation: c.deviation,
            error_estimate: c.error_estimate,
            steps: c.steps,
        })?,
        Format::Csv => {
            let mut rows = Vec::with_capacity(n * n);
            for i in 0..n {
                for (j, z) in c.matrix.row(i).iter().enumerate() {
                    let d = decimal(z);
                    rows.push(EntryRow { row: i + 1, col: j + 1, re: d.re, im: d.im });
                }
            }
            format::csv_string(&["row", "col", "re", "im"], &rows)?
        }
    };
    format::emit(cfg.out.as_deref(), &body)?;
    Ok(Outcome::Done)
}
