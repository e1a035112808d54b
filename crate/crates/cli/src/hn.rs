//! `hn --input rep.json`: HN filtration of a representation.
//!
//! ```json
//! {
//!   "quiver": "kronecker",
//!   "dims": [1, 1],
//!   "maps": { "a": [["1"]], "b": [["2/3"]] },
//!   "charges": [["-1", "1"], ["1", "1"]],
//!   "lift": "principal"
//! }
//! ```
//!
//! `quiver` is `kronecker`, `A<n>` or `A3^5`. Matrices are `target × source`
//! with rational entries `"p/q"`; arrows left out act by zero.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context, Result};
use clap::Args;
use qstab_core::a1::kronecker_quiver;
use qstab_core::numeric;
use qstab_core::quiver::{
    a3_5_quiver, build_linear_a, hn_bruteforce_oracle, hn_filtration, make_stability, LiftPolicy, Quiver, QuiverRep,
    RatMatrix, RegimeTag, MAX_ORACLE_DIM,
};
use rug::Rational;
use serde::{Deserialize, Serialize};

use crate::format::{self, decimal, DecimalComplex, Format};
use crate::{Outcome, RunConfig};

#[derive(Args, Debug)]
pub struct HnArgs {
    /// JSON representation file; `-` reads stdin.
    #[arg(long)]
    input: PathBuf,
}

#[derive(Deserialize, Debug)]
#[serde(deny_unknown_fields)]
pub struct RepInput {
    pub quiver: String,
    pub dims: Vec<usize>,
    #[serde(default)]
    pub maps: BTreeMap<String, Vec<Vec<String>>>,
    pub charges: Vec<[String; 2]>,
    #[serde(default)]
    pub lift: Lift,
}

#[derive(Deserialize, Debug, Default, Clone, Copy)]
#[serde(rename_all = "lowercase")]
pub enum Lift {
    #[default]
    Principal,
    Monotone,
}

#[derive(Serialize)]
struct LayerJson {
    class: Vec<usize>,
    phase: f64,
    charge: DecimalComplex,
}

#[derive(Serialize)]
struct HnJson {
    layers: Vec<LayerJson>,
    semistable: bool,
    /// Whether the brute-force oracle agrees; absent above its size limit.
    oracle_agrees: Option<bool>,
}

#[derive(Serialize)]
struct LayerRow {
    index: usize,
    class: String,
    phase: f64,
    re: String,
    im: String,
}

fn quiver_named(name: &str) -> Result<Arc<Quiver>> {
    match name {
        "kronecker" => Ok(kronecker_quiver()),
        "A3^5" => Ok(a3_5_quiver()),
        _ => {
            let n: usize = name
                .strip_prefix('A')
                .and_then(|n| n.parse().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| anyhow!("unknown quiver {name:?}; expected kronecker, A<n> or A3^5"))?;
            Ok(Arc::new(build_linear_a(n)))
        }
    }
}

pub fn build(input: &RepInput, prec: u32) -> Result<(QuiverRep, qstab_core::quiver::StabilityData)> {
    let q = quiver_named(&input.quiver)?;
    if input.dims.len() != q.vertex_count() {
        bail!("{} dims for {} vertices", input.dims.len(), q.vertex_count());
    }
    for label in input.maps.keys() {
        if q.arrow_by_label(label).is_none() {
            bail!("no arrow labelled {label:?}");
        }
    }
    let mut maps = Vec::with_capacity(q.arrows().len());
    for a in q.arrows() {
        let (r, c) = (input.dims[a.target], input.dims[a.source]);
        let m = match input.maps.get(&a.label) {
            None => RatMatrix::zeros(r, c),
            Some(rows) => {
                if rows.len() != r || rows.iter().any(|row| row.len() != c) {
                    bail!("arrow {:?} needs a {r} x {c} matrix", a.label);
                }
                let data = rows
                    .iter()
                    .flatten()
                    .map(|s| s.trim().parse::<Rational>().map_err(|e| anyhow!("entry {s:?}: {e}")))
                    .collect::<Result<Vec<_>>>()?;
                RatMatrix::from_rows(r, c, data)?
            }
        };
        maps.push(m);
    }
    let rep = QuiverRep::new(q.clone(), input.dims.clone(), maps)?;
    let charges = input
        .charges
        .iter()
        .map(|[re, im]| numeric::parse_complex(prec, re, im))
        .collect::<qstab_core::error::Result<Vec<_>>>()?;
    let policy = match input.lift {
        Lift::Principal => LiftPolicy::PrincipalArg,
        Lift::Monotone => LiftPolicy::MonotoneInLevel,
    };
    let sd = make_stability(q, charges, policy, RegimeTag::Custom)?;
    Ok((rep, sd))
}

pub fn run(args: &HnArgs, cfg: &RunConfig) -> Result<Outcome> {
    let text = if args.input.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())?
    } else {
        std::fs::read_to_string(&args.input).with_context(|| format!("reading {}", args.input.display()))?
    };
    let input: RepInput = serde_json::from_str(&text).context("parsing representation JSON")?;
    let (rep, sd) = build(&input, cfg.precision)?;
    let hn = hn_filtration(&rep, &sd)?;
    let oracle_agrees = if rep.total_dim() <= MAX_ORACLE_DIM { Some(hn_bruteforce_oracle(&rep, &sd)? == hn) } else { None };
    let body = match cfg.format {
        Format::Json => format::json(&HnJson {
            semistable: hn.layers.len() == 1,
            layers: hn
                .layers
                .iter()
                .map(|l| LayerJson { class: l.class.clone(), phase: l.phase, charge: decimal(&l.charge) })
                .collect(),
            oracle_agrees,
        })?,
        Format::Csv => {
            let rows: Vec<LayerRow> = hn
                .layers
                .iter()
                .enumerate()
                .map(|(i, l)| {
                    let d = decimal(&l.charge);
                    let class = l.class.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(" ");
                    LayerRow { index: i, class, phase: l.phase, re: d.re, im: d.im }
                })
                .collect();
            format::csv_string(&["index", "class", "phase", "re", "im"], &rows)?
        }
    };
    format::emit(cfg.out.as_deref(), &body)?;
    Ok(Outcome::Done)
}
