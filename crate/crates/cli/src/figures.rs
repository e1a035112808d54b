//! Level charges and lifted phases on `A_3^{⊗5}`, one CSV per regime.

use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Args;
use qstab_core::charges::Regime;
use qstab_core::periods::GepnerCoordinate;
use qstab_core::quiver::{a3_5_stability, StabilityData};
use serde::Serialize;

use crate::format::{self, decimal};
use crate::{Outcome, RunConfig};

#[derive(Args, Debug)]
pub struct FiguresArgs {
    /// Picard-Fuchs coordinate of the LCC table.
    #[arg(long, default_value = "1e-10", allow_hyphen_values = true)]
    x: String,
    /// Picard-Fuchs coordinate of the Gepner table; `ψ = x^{-1/5}`.
    #[arg(long, default_value = "1e10", allow_hyphen_values = true, conflicts_with = "psi")]
    gepner_x: String,
    /// Gepner coordinate of the Gepner table, overriding `--gepner-x`.
    #[arg(long, allow_hyphen_values = true)]
    psi: Option<String>,
}

#[derive(Serialize)]
pub struct FigureRow {
    pub level: u32,
    pub re: String,
    pub im: String,
    pub phase_lifted: f64,
    pub gap_to_prev: Option<f64>,
}

pub const HEADER: [&str; 5] = ["level", "re", "im", "phase_lifted", "gap_to_prev"];

/// One row per level, read off the first vertex of that level.
pub fn rows(sd: &StabilityData) -> Vec<FigureRow> {
    let levels = sd.quiver().levels().expect("A_3^5 is acyclic");
    let top = levels.iter().copied().max().unwrap_or(0);
    let mut out: Vec<FigureRow> = Vec::with_capacity(top as usize + 1);
    for l in 0..=top {
        let v = levels.iter().position(|&k| k == l).expect("every level occupied");
        let d = decimal(sd.charge(v));
        let phase = sd.phase(v);
        let gap = out.last().map(|p| phase - p.phase_lifted);
        out.push(FigureRow { level: l, re: d.re, im: d.im, phase_lifted: phase, gap_to_prev: gap });
    }
    out
}

pub fn run(args: &FiguresArgs, cfg: &RunConfig) -> Result<Outcome> {
    let prec = cfg.precision;
    let dir = cfg.out.clone().unwrap_or_else(|| PathBuf::from("."));
    std::fs::create_dir_all(&dir).with_context(|| format!("creating {}", dir.display()))?;
    let x = format::parse_point(&args.x, prec)?;
    let psi = match &args.psi {
        Some(p) => format::parse_point(p, prec)?,
        None => GepnerCoordinate::from_pf_x(&format::parse_point(&args.gepner_x, prec)?, 0)?.value().clone(),
    };
    let tables = [("figure_lcc.csv", Regime::Lcc, x), ("figure_gepner.csv", Regime::Gepner, psi)];
    for (name, regime, point) in tables {
        let sd = a3_5_stability(regime, &point, prec)?;
        let body = format::csv_string(&HEADER, &rows(&sd))?;
        format::emit(Some(&dir.join(name)), &body)?;
    }
    Ok(Outcome::Done)
}
