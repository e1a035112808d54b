//! Check suites with a JSON (or CSV) pass/fail report.

use std::f64::consts::{PI, TAU};

use anyhow::Result;
use clap::{Args, ValueEnum};
use qstab_core::a1::{a1_central, a1_leading_term, a1_periods, a1_wallcross_first_kind, A1Object, A1Parameters};
use qstab_core::charges::{instanton_numbers, mirror_map, mirror_map_qseries, q_of_x, Regime};
use qstab_core::dt::{
    g2, k_inversion_defect, k_shift_defect, log_dilog_check, pentagon_check, pentagon_control, quasimodular_identity,
};
use qstab_core::monodromy::{
    builtin_matrices, connection_matrix, pf_relative_residual, pf_relative_residual_gepner, verify_matrix_identities,
    DetourSide, DEFAULT_DETOUR,
};
use qstab_core::numeric::{self, Constants};
use qstab_core::periods::{GepnerBasis, LccBasis, GEPNER_INDICES};
use qstab_core::quiver::{a3_5_stability, check_condition2, level_gaps, wallcross_second_kind};
use rug::{Complex, Rational};
use serde::Serialize;

use crate::format::{self, Format};
use crate::{Outcome, RunConfig};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Matrices,
    Pf,
    Connection,
    Stability,
    Mirror,
    Yukawa,
    Quasimodular,
    Pentagon,
    A1,
    /// `G_2` and the failure `K` of `G_2(τ/2) − G_2(τ)` to be modular.
    Modular,
}

#[derive(Args, Debug)]
pub struct CheckArgs {
    #[arg(value_enum)]
    suite: Suite,
}

#[derive(Serialize, Debug)]
pub struct CheckLine {
    pub name: String,
    /// The statement being checked.
    pub anchor: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckLine>,
}

struct Builder(Vec<CheckLine>);

impl Builder {
    fn add(&mut self, name: impl Into<String>, anchor: &'static str, passed: bool, detail: impl Into<String>) {
        self.0.push(CheckLine { name: name.into(), anchor, passed, detail: detail.into() });
    }
}

fn matrices(b: &mut Builder) {
    let r = verify_matrix_identities();
    for c in r.checks {
        b.add(c.name, "monodromy matrices", c.passed, "exact rational arithmetic");
    }
    b.add("epsilon", "N M^eps N^-1 = M_inf", r.epsilon.is_some(), format!("{:?}", r.epsilon));
}

fn pf(b: &mut Builder, prec: u32, order: usize) -> Result<()> {
    let consts = Constants::get(prec + numeric::GUARD_BITS);
    let lcc = LccBasis::new(order + 1, prec)?;
    let tol = 2f64.powf(-(prec as f64) / 4.0);
    for i in 0..4 {
        let r = pf_relative_residual(lcc.series(i), &consts);
        b.add(format!("w{i}"), "Picard-Fuchs equation at x = 0", r < tol, format!("relative residual {r:e}"));
    }
    let gep = GepnerBasis::new(order + 1, prec)?;
    for j in GEPNER_INDICES {
        let r = pf_relative_residual_gepner(&gep.series(j));
        b.add(format!("omega{j}"), "Picard-Fuchs equation at psi = 0", r < tol, format!("relative residual {r:e}"));
    }
    Ok(())
}

fn connection(b: &mut Builder, prec: u32) -> Result<()> {
    let start = numeric::from_f64(prec, 1e-4, 0.0);
    let end = numeric::from_f64(prec, 1.0, 0.0);
    let c = connection_matrix(&start, &end, DEFAULT_DETOUR, DetourSide::Below, prec)?;
    let bm = builtin_matrices();
    let target = (&bm.m_inf.pow(c.winding_power)? * &bm.n).to_cmatrix(prec);
    let dev = c.matrix.max_abs_diff(&target);
    b.add(
        "N from continuation",
        "connection matrix Pi_B = N Pi_B^inf",
        dev < 5e-7,
        format!("winding M_inf^{}, max deviation {dev:e}, {} steps", c.winding_power, c.steps),
    );
    Ok(())
}

fn stability(b: &mut Builder, prec: u32) -> Result<()> {
    let lcc = a3_5_stability(Regime::Lcc, &numeric::from_f64(prec, 1e-10, 0.0), prec)?;
    let g = level_gaps(&lcc)?;
    let a = g.a;
    let ordered = PI > a[0] && a[0] > a[1] && a[1] > a[2] && a[2] > a[3] && a[3] > 0.0;
    b.add("LCC ordering", "pi > a0 > a1 > a2 > a3 > 0", ordered, format!("{a:?}"));
    b.add("LCC range", "a_i in (pi - 0.5, pi)", a.iter().all(|v| *v > PI - 0.5 && *v < PI), format!("{a:?}"));
    let bad = check_condition2(&lcc);
    b.add("LCC condition (2)", "phase differences along arrows below pi", bad.is_empty(), format!("{} violations", bad.len()));
    let gep = a3_5_stability(Regime::Gepner, &numeric::from_f64(prec, 1e-3, 0.0), prec)?;
    let h = level_gaps(&gep)?;
    let cyclic = [h.a[0], h.a[1], h.a[2], h.a[3], h.a4];
    let dev = cyclic.iter().map(|v| (v - TAU / 5.0).abs()).fold(0.0, f64::max);
    b.add("Gepner gaps", "gaps close to 2 pi / 5", dev < 0.15, format!("{cyclic:?}"));
    let bad = check_condition2(&gep);
    b.add("Gepner condition (2)", "phase differences along arrows below pi", bad.is_empty(), format!("{} violations", bad.len()));
    let c = a3_5_stability(Regime::Lcc, &numeric::from_f64(prec, 1e-12, 0.0), prec)?;
    let w1 = wallcross_second_kind(&lcc, &gep)?;
    b.add("LCC to Gepner", "second-kind wall-crossing", w1.is_some(), format!("{w1:?}"));
    let w2 = wallcross_second_kind(&lcc, &c)?;
    b.add("x to x/100", "second-kind wall-crossing under deformation", w2.is_some(), format!("{w2:?}"));
    let rot = lcc.rotated(&numeric::from_f64(prec, -0.4, 1.7))?;
    let w3 = wallcross_second_kind(&lcc, &rot)?;
    b.add("rotation", "C action gives no wall-crossing", w3.is_none(), format!("{w3:?}"));
    Ok(())
}

fn mirror(b: &mut Builder, prec: u32, order: usize) -> Result<()> {
    let x = mirror_map_qseries(order.max(3))?;
    b.add("x(q) q^2 coefficient", "inverse mirror map", *x.coeff(2) == -770, format!("{}", x.coeff(2)));
    let q = q_of_x(order.max(3))?;
    let round_trip = q.compose(&x)? == qstab_core::series::RatSeries::variable(order.max(3));
    b.add("q(x(q)) = q", "mirror map reversion", round_trip, format!("order {}", order.max(3)));
    // exp(2 pi i t(x)) against the rational series q(x), summed at a small x
    let pt = numeric::from_f64(prec, 1e-6, 0.0);
    let t = mirror_map(&pt, prec)?;
    let consts = Constants::get(prec);
    let q_num = Complex::with_val(prec, &t * &consts.two_pi_i).exp();
    let mut q_ser = numeric::zero(prec);
    for c in q.coeffs().iter().rev() {
        q_ser = q_ser * &pt + numeric::from_rational(prec, c);
    }
    let rel = numeric::abs_f64(&Complex::with_val(prec, &q_num - &q_ser)) / numeric::abs_f64(&q_ser);
    b.add("exp(2 pi i t) = q(x)", "mirror map from periods", rel < 1e-12, format!("relative difference {rel:e} at x = 1e-6, series truncated"));
    Ok(())
}

fn yukawa(b: &mut Builder, order: usize) -> Result<()> {
    let n = instanton_numbers(order)?;
    let doubled = instanton_numbers((2 * order).min(qstab_core::charges::MAX_QSERIES_ORDER))?;
    for v in &n {
        b.add(format!("n{}", v.degree), "instanton numbers are integers", v.residual < 1e-10, format!("{} (residual {:e})", v.value, v.residual));
    }
    let expected = [(1, 2875u64), (2, 609250)];
    for (d, e) in expected.iter().filter(|(d, _)| *d <= order) {
        b.add(format!("n{d} value"), "genus-zero counts", n[d - 1].value == *e, format!("{}", n[d - 1].value));
    }
    let stable = n.iter().zip(&doubled).all(|(a, c)| a.value == c.value);
    b.add("order doubling", "stable under doubling", stable, format!("orders {order} and {}", doubled.len()));
    Ok(())
}

fn quasimodular(b: &mut Builder, order: usize) -> Result<()> {
    let r = quasimodular_identity(order as u32)?;
    let bad = r.rows.iter().find(|row| row.from_dilog != row.divisor_sum);
    b.add(
        "divisor sums",
        "second derivative of log E equals G2(tau/2) - G2(tau)",
        bad.is_none(),
        match bad {
            Some(row) => format!("k = {}: {} vs {}", row.k, row.from_dilog, row.divisor_sum),
            None => format!("k = 1..{order}"),
        },
    );
    b.add("constant term", "constant terms cancel", r.constant_term == 0, format!("{}", r.constant_term));
    let c = log_dilog_check(8.min(order + 1), order as u32 + 1)?;
    b.add("log E", "closed form of log E", c.holds, format!("{:?}", c.first_discrepancy));
    Ok(())
}

fn pentagon(b: &mut Builder, order: usize) -> Result<()> {
    let p = pentagon_check(order as u32)?;
    b.add("pentagon", "E(y1)E(y2) = E(y2)E(y12)E(y1)", p.holds, format!("degree {order}, {:?}", p.first_discrepancy));
    let c = pentagon_control(order as u32)?;
    let fails_at_two = c.first_discrepancy.is_some_and(|(m, n)| m + n == 2);
    b.add("control", "without q^(-1/2) the identity fails", fails_at_two || order < 2, format!("{:?}", c.first_discrepancy));
    Ok(())
}

fn a1(b: &mut Builder, prec: u32) -> Result<()> {
    let q = |n: i64, d: i64| numeric::from_rational(prec, &Rational::from((n, d)));
    let p = A1Parameters::new(q(3, 16), q(1, 1), q(1, 1))?;
    let (_, w1) = a1_periods(&p, prec)?;
    let expect = Complex::with_val(prec, (0, 3f64.ln() / TAU));
    let d = numeric::abs_f64(&Complex::with_val(prec, &w1 - &expect));
    b.add("varpi1(3/16, 1, 1)", "i log 3 / 2 pi", d < 1e-12, format!("error {d:e}"));
    let x = numeric::from_f64(prec, 1e-8, 0.0);
    let px = A1Parameters::from_x(x.clone());
    let (_, w) = a1_periods(&px, prec)?;
    let d = numeric::abs_f64(&Complex::with_val(prec, &w - a1_leading_term(&x, prec)));
    b.add("asymptotics", "varpi1 ~ log x / 2 pi i", d < 1e-6, format!("error {d:e}"));
    let z0 = a1_central(A1Object::Simple(0), &px, prec)?;
    let z1 = a1_central(A1Object::Simple(1), &px, prec)?;
    b.add("charge sum", "simples sum to varpi0 = 1", Complex::with_val(prec, &z0 + &z1) == 1, "");
    let r = a1_wallcross_first_kind([z0.clone(), z1.clone()], [z1, z0])?;
    b.add("charge swap", "first-kind wall-crossing", !r.is_empty(), format!("{r:?}"));
    Ok(())
}

fn modular(b: &mut Builder, prec: u32) -> Result<()> {
    let g = g2(&numeric::from_f64(prec, 0.0, 1.0), prec)?;
    let (re, im) = numeric::to_c64(&g);
    let dev = (re - PI / 2.0).hypot(im);
    b.add("G2(i)", "G2(i) = pi/2", dev < 1e-10, format!("deviation {dev:e}"));
    let inv = numeric::abs_f64(&k_inversion_defect(&numeric::from_f64(prec, 0.0, 2.0), prec)?);
    b.add("K inversion", "(i tau)^-2 K(-1/tau) = K(tau) at 2i", inv < 1e-10, format!("{inv:e}"));
    let shift = numeric::abs_f64(&k_shift_defect(&numeric::from_f64(prec, 0.0, 10.0), prec)?);
    b.add("K shift", "K(tau + 2) ~ K(tau) at 10i", shift < 1e-6, format!("{shift:e}; equals |2 pi i / (tau (tau + 2))|"));
    Ok(())
}

pub fn report(suite: Suite, cfg: &RunConfig) -> Result<Report> {
    let prec = cfg.precision;
    let mut b = Builder(Vec::new());
    match suite {
        Suite::Matrices => matrices(&mut b),
        Suite::Pf => pf(&mut b, prec, cfg.order_or(30))?,
        Suite::Connection => connection(&mut b, prec)?,
        Suite::Stability => stability(&mut b, prec)?,
        Suite::Mirror => mirror(&mut b, prec, cfg.order_or(8))?,
        Suite::Yukawa => yukawa(&mut b, cfg.order_or(3))?,
        Suite::Quasimodular => quasimodular(&mut b, cfg.order_or(40))?,
        Suite::Pentagon => pentagon(&mut b, cfg.order_or(5))?,
        Suite::A1 => a1(&mut b, prec)?,
        Suite::Modular => modular(&mut b, prec)?,
    }
    let name = suite.to_possible_value().expect("no skipped variants").get_name().to_string();
    let passed = b.0.iter().all(|c| c.passed);
    Ok(Report { suite: name, passed, checks: b.0 })
}

#[derive(Serialize)]
struct Row<'a> {
    name: &'a str,
    anchor: &'a str,
    passed: bool,
    detail: &'a str,
}

pub fn run(args: &CheckArgs, cfg: &RunConfig) -> Result<Outcome> {
    let r = report(args.suite, cfg)?;
    let body = match cfg.format {
        Format::Json => format::json(&r)?,
        Format::Csv => {
            let rows: Vec<Row> = r
                .checks
                .iter()
                .map(|c| Row { name: &c.name, anchor: c.anchor, passed: c.passed, detail: &c.detail })
                .collect();
            format::csv_string(&["name", "anchor", "passed", "detail"], &rows)?
        }
    };
    format::emit(cfg.out.as_deref(), &body)?;
    Ok(if r.passed { Outcome::Done } else { Outcome::ChecksFailed })
}
