use anyhow::{bail, Result};
use clap::Args;
use qstab_core::numeric;
use qstab_core::periods::{BasisTag, GepnerBasis, GepnerCoordinate, LccBasis, PeriodVector};
use serde::Serialize;

use crate::format::{self, decimal, DecimalComplex, Format};
use crate::{Outcome, RunConfig};

#[derive(Args, Debug)]
pub struct PeriodsArgs {
    /// `Π_B` at the large complex structure point (needs `--x`).
    #[arg(long, conflicts_with = "gepner")]
    lcc: bool,
    /// `Π_B^∞` at the Gepner point (needs `--psi` or `--x`).
    #[arg(long)]
    gepner: bool,
    /// Picard-Fuchs coordinate, `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    /// Gepner coordinate, `re` or `re,im`.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "lcc")]
    psi: Option<String>,
}

#[derive(Serialize)]
struct PeriodsJson {
    basis: &'static str,
    /// The coordinate the basis is evaluated in: `x` for lcc, `psi` for gepner.
    point: DecimalComplex,
    entries: Vec<DecimalComplex>,
    error_bound: f64,
}

#[derive(Serialize)]
struct PeriodRow {
    index: usize,
    re: String,
    im: String,
}

pub fn compute(args: &PeriodsArgs, prec: u32) -> Result<PeriodVector> {
    if args.lcc == args.gepner {
        bail!("choose exactly one of --lcc and --gepner");
    }
    if args.lcc {
        let Some(x) = &args.x else { bail!("--lcc needs --x") };
        let x = format::parse_point(x, prec)?;
        let basis = LccBasis::for_radius(numeric::abs_f64(&x), prec)?;
        return Ok(basis.period_vector(&x)?);
    }
    let psi = match (&args.psi, &args.x) {
        (Some(p), None) => GepnerCoordinate::new(format::parse_point(p, prec)?)?,
        (None, Some(x)) => GepnerCoordinate::from_pf_x(&format::parse_point(x, prec)?, 0)?,
        _ => bail!("--gepner needs exactly one of --psi and --x"),
    };
    let basis = GepnerBasis::for_radius(numeric::abs_f64(psi.value()), prec)?;
    Ok(basis.period_vector(&psi)?)
}

pub fn run(args: &PeriodsArgs, cfg: &RunConfig) -> Result<Outcome> {
    let pv = compute(args, cfg.precision)?;
    let body = match cfg.format {
        Format::Json => format::json(&PeriodsJson {
            basis: match pv.basis {
                BasisTag::Lcc => "lcc",
                BasisTag::Gepner => "gepner",
            },
            point: decimal(&pv.x),
            entries: pv.entries.iter().map(decimal).collect(),
            error_bound: pv.error_bound,
        })?,
        Format::Csv => {
            let rows: Vec<PeriodRow> = pv
                .entries
                .iter()
                .enumerate()
                .map(|(i, z)| {
                    let d = decimal(z);
                    PeriodRow { index: i + 1, re: d.re, im: d.im }
                })
                .collect();
            format::csv_string(&["index", "re", "im"], &rows)?
        }
    };
    format::emit(cfg.out.as_deref(), &body)?;
    Ok(Outcome::Done)
}
