//! Analytic continuation of the Picard-Fuchs system by Taylor stepping.
//!
//! With `Y = (w, θw, θ²w, θ³w)` the equation becomes
//! `x(1−3125x) Y' = [(1−3125x) J + x E] Y`, where `J` is the shift matrix
//! and `E` has last row `(120, 1250, 4375, 6250)`. About `x_0`, with
//! `p(t) = p_0 + p_1 t + p_2 t²` and `C(t) = C_0 + C_1 t`,
//!
//! `(k+1) p_0 Y_{k+1} = C_0 Y_k + C_1 Y_{k−1} − k p_1 Y_k − (k−1) p_2 Y_{k−1}`.
//!
//! Matrices here hold one solution per row and `θ`-derivatives in columns.

use rug::{Complex, Float};

use super::matrix::{builtin_matrices, RationalMatrix4};
use crate::error::{Error, Result};
use crate::numeric::{self, check_precision, CMatrix, GUARD_BITS};
use crate::periods::{GepnerBasis, GepnerCoordinate, LccBasis, CONIFOLD};

const E_ROW: [u32; 4] = [120, 1250, 4375, 6250];

/// Default distance of the conifold detour.
pub const DEFAULT_DETOUR: f64 = 1e-5;

/// Side on which a path passes the conifold point `x = 5^{-5}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DetourSide {
    /// Through `5^{-5} + iδ`.
    Above,
    /// Through `5^{-5} − iδ`; this side reproduces the printed `N`.
    Below,
}

/// Polygonal path in the `x`-plane.
#[derive(Clone, Debug, PartialEq)]
pub struct ContinuationPath {
    waypoints: Vec<Complex>,
    /// Each step is this fraction of the distance to the nearest singularity.
    pub step_fraction: f64,
    /// Minimal allowed distance between the path and `0` or `5^{-5}`.
    pub margin: f64,
}

fn dist_to_segment(p: (f64, f64), a: (f64, f64), b: (f64, f64)) -> f64 {
    let (dx, dy) = (b.0 - a.0, b.1 - a.1);
    let len2 = dx * dx + dy * dy;
    let t = if len2 == 0.0 { 0.0 } else { (((p.0 - a.0) * dx + (p.1 - a.1) * dy) / len2).clamp(0.0, 1.0) };
    let (qx, qy) = (a.0 + t * dx - p.0, a.1 + t * dy - p.1);
    (qx * qx + qy * qy).sqrt()
}

impl ContinuationPath {
    pub fn new(waypoints: Vec<Complex>) -> Result<Self> {
        Self::with_margin(waypoints, 1e-9)
    }

    pub fn with_margin(waypoints: Vec<Complex>, margin: f64) -> Result<Self> {
        if waypoints.is_empty() {
            return Err(Error::Path("no waypoints".into()));
        }
        let path = ContinuationPath { waypoints, step_fraction: 0.5, margin };
        path.validate()?;
        Ok(path)
    }

    fn validate(&self) -> Result<()> {
        if !(self.step_fraction > 0.0 && self.step_fraction < 1.0) {
            return Err(Error::Path(format!("step fraction {} outside (0,1)", self.step_fraction)));
        }
        let pts: Vec<(f64, f64)> = self.waypoints.iter().map(numeric::to_c64).collect();
        for (i, w) in pts.windows(2).enumerate() {
            for (name, s) in [("0", (0.0, 0.0)), ("5^-5", (CONIFOLD, 0.0))] {
                let d = dist_to_segment(s, w[0], w[1]);
                if d < self.margin {
                    return Err(Error::Path(format!("segment {i} passes within {d:e} of {name}")));
                }
            }
        }
        if pts.len() == 1 {
            let d = (pts[0].0.hypot(pts[0].1)).min((pts[0].0 - CONIFOLD).hypot(pts[0].1));
            if d < self.margin {
                return Err(Error::Path("waypoint on a singular point".into()));
            }
        }
        Ok(())
    }

    pub fn with_step_fraction(mut self, f: f64) -> Result<Self> {
        self.step_fraction = f;
        self.validate()?;
        Ok(self)
    }

    pub fn waypoints(&self) -> &[Complex] {
        &self.waypoints
    }

    pub fn start(&self) -> &Complex {
        &self.waypoints[0]
    }

    pub fn end(&self) -> &Complex {
        self.waypoints.last().expect("non-empty")
    }

    pub fn reversed(&self) -> Self {
        let mut p = self.clone();
        p.waypoints.reverse();
        p
    }

    /// Concatenation; `next` must start where `self` ends.
    pub fn then(&self, next: &ContinuationPath) -> Result<Self> {
        if self.end() != next.start() {
            return Err(Error::Path("concatenated paths do not meet".into()));
        }
        let mut p = self.clone();
        p.waypoints.extend(next.waypoints.iter().skip(1).cloned());
        p.margin = self.margin.min(next.margin);
        Ok(p)
    }

    /// `start → 5^{-5} − δ → 5^{-5} ∓ iδ → 5^{-5} + δ → end`.
    pub fn conifold_detour(start: &Complex, end: &Complex, delta: f64, side: DetourSide) -> Result<Self> {
        let prec = start.prec().0;
        let sign = if side == DetourSide::Above { 1.0 } else { -1.0 };
        let pts = vec![
            start.clone(),
            numeric::from_f64(prec, CONIFOLD - delta, 0.0),
            numeric::from_f64(prec, CONIFOLD, sign * delta),
            numeric::from_f64(prec, CONIFOLD + delta, 0.0),
            Complex::with_val(prec, end),
        ];
        Self::with_margin(pts, delta / 4.0)
    }

    /// Closed polygonal circle about `center` through `start`;
    /// `ccw = false` runs clockwise.
    pub fn circle(center: &Complex, start: &Complex, ccw: bool, segments: usize) -> Result<Self> {
        let prec = start.prec().0;
        let rel = Complex::with_val(prec, start - center);
        let r = numeric::abs(&rel);
        let a0 = numeric::arg(&rel);
        let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
        let sign = if ccw { 1i32 } else { -1 };
        let mut pts = vec![start.clone()];
        for k in 1..segments {
            let ang = Float::with_val(prec, &two_pi * (sign * k as i32)) / segments as u32 + &a0;
            let (s, c) = ang.sin_cos(Float::new(prec));
            let p = Complex::with_val(prec, (Float::with_val(prec, &c * &r), Float::with_val(prec, &s * &r)));
            pts.push(p + center);
        }
        pts.push(start.clone());
        Self::with_margin(pts, r.to_f64() * 0.5)
    }
}

/// Transported fundamental matrix.
#[derive(Clone, Debug)]
pub struct Transported {
    pub matrix: CMatrix,
    /// `max |Y_h − Y_{h/2}|` between the run and a run with halved steps.
    pub error_estimate: f64,
    pub steps: usize,
}

fn taylor_order(prec: u32, step_fraction: f64) -> usize {
    ((prec as f64 + 16.0) / (1.0 / step_fraction).log2()).ceil() as usize + 4
}

fn nearest_singularity(x: &Complex) -> f64 {
    let (re, im) = numeric::to_c64(x);
    re.hypot(im).min((re - CONIFOLD).hypot(im))
}

/// One Taylor step of length `h` from `x0` for every row of `rows`.
fn taylor_step(x0: &Complex, rows: &mut [Vec<Complex>], h: &Complex, order: usize, prec: u32) {
    let one_minus = Complex::with_val(prec, 1 - Complex::with_val(prec, x0 * 3125u32));
    let p0 = Complex::with_val(prec, x0 * &one_minus);
    let p0_inv = Complex::with_val(prec, p0.recip_ref());
    let p1 = Complex::with_val(prec, 1 - Complex::with_val(prec, x0 * 6250u32));
    let apply = |y: &[Complex], a: &Complex, b: &Complex| -> Vec<Complex> {
        // (a J + b E) y
        let mut e = Complex::new(prec);
        for (c, yi) in E_ROW.iter().zip(y) {
            e += Complex::with_val(prec, yi * *c);
        }
        vec![
            Complex::with_val(prec, a * &y[1]),
            Complex::with_val(prec, a * &y[2]),
            Complex::with_val(prec, a * &y[3]),
            Complex::with_val(prec, b * &e),
        ]
    };
    let c1a = Complex::with_val(prec, -3125);
    let c1b = numeric::one(prec);
    for row in rows.iter_mut() {
        let mut prev: Vec<Complex> = vec![Complex::new(prec); 4];
        let mut cur: Vec<Complex> = row.clone();
        let mut acc = cur.clone();
        let mut hp = numeric::one(prec);
        for k in 0..order {
            let mut rhs = apply(&cur, &one_minus, x0);
            let kf = k as u32;
            for i in 0..4 {
                rhs[i] -= Complex::with_val(prec, &p1 * &cur[i]) * kf;
            }
            if k >= 1 {
                let r1 = apply(&prev, &c1a, &c1b);
                for i in 0..4 {
                    rhs[i] += &r1[i];
                    // −(k−1) p_2 Y_{k−1} with p_2 = −3125
                    rhs[i] += Complex::with_val(prec, &prev[i] * (3125 * (kf - 1)));
                }
            }
            let next: Vec<Complex> =
                rhs.into_iter().map(|v| Complex::with_val(prec, v * &p0_inv) / (kf + 1)).collect();
            hp *= h;
            for i in 0..4 {
                acc[i] += Complex::with_val(prec, &next[i] * &hp);
            }
            prev = cur;
            cur = next;
        }
        *row = acc;
    }
}

fn run(path: &ContinuationPath, initial: &CMatrix, prec: u32, step_fraction: f64) -> Result<(CMatrix, usize)> {
    let wp = prec + GUARD_BITS;
    let order = taylor_order(wp, step_fraction);
    let n = initial.dim();
    let mut rows: Vec<Vec<Complex>> =
        (0..n).map(|i| initial.row(i).iter().map(|c| Complex::with_val(wp, c)).collect()).collect();
    let mut steps = 0usize;
    for seg in path.waypoints.windows(2) {
        let mut x = Complex::with_val(wp, &seg[0]);
        let end = Complex::with_val(wp, &seg[1]);
        loop {
            let remaining = Complex::with_val(wp, &end - &x);
            let rem = numeric::abs_f64(&remaining);
            if rem == 0.0 {
                break;
            }
            let d = nearest_singularity(&x);
            let hmax = step_fraction * d;
            if hmax < 1e-300 || hmax < 1e-12 * rem && steps > 1_000_000 {
                return Err(Error::StepUnderflow(format!("{:?}", numeric::to_c64(&x))));
            }
            let h = if rem <= hmax { remaining } else { remaining * Float::with_val(wp, hmax / rem) };
            taylor_step(&x, &mut rows, &h, order, wp);
            x += &h;
            steps += 1;
            if steps > 1_000_000 {
                return Err(Error::StepUnderflow(format!("step budget exhausted near {:?}", numeric::to_c64(&x))));
            }
            if rem <= hmax {
                break;
            }
        }
    }
    let out = rows.into_iter().map(|r| r.into_iter().map(|c| Complex::with_val(prec, c)).collect()).collect();
    Ok((CMatrix::from_rows(out), steps))
}

/// Continues the solutions in the rows of `initial` along `path`. The
/// returned matrix is from the halved-step run; the estimate compares it with
/// the full-step run.
pub fn transport(path: &ContinuationPath, initial: &CMatrix, prec: u32) -> Result<Transported> {
    check_precision(prec)?;
    if initial.dim() != 4 {
        return Err(Error::Path("fundamental matrix must be 4x4".into()));
    }
    let (coarse, _) = run(path, initial, prec, path.step_fraction)?;
    let (fine, steps) = run(path, initial, prec, path.step_fraction / 2.0)?;
    let error_estimate = coarse.max_abs_diff(&fine);
    Ok(Transported { matrix: fine, error_estimate, steps })
}

/// As [`transport`], failing when the step-halving estimate exceeds `tol`.
pub fn transport_checked(path: &ContinuationPath, initial: &CMatrix, prec: u32, tol: f64) -> Result<Transported> {
    let t = transport(path, initial, prec)?;
    if t.error_estimate.is_nan() || t.error_estimate > tol {
        return Err(Error::PrecisionExhausted { estimate: t.error_estimate, tolerance: tol });
    }
    Ok(t)
}

/// Default comparison tolerance `2^{-prec/3}`.
pub fn default_tolerance(prec: u32) -> f64 {
    2f64.powf(-(prec as f64) / 3.0)
}

/// Numerical connection matrix `C` with `Π_B = C Π_B^∞` after continuing
/// `Π_B` from `x_start` past the conifold to `x_end` (`ψ = x_end^{-1/5}`,
/// principal root).
#[derive(Clone, Debug)]
pub struct ConnectionResult {
    pub matrix: CMatrix,
    /// `k` with `C ≈ M_∞^k N` for the smallest deviation.
    pub winding_power: i64,
    /// `max |C − M_∞^k N|` entrywise.
    pub deviation: f64,
    pub error_estimate: f64,
    pub steps: usize,
}

pub fn connection_matrix(
    x_start: &Complex,
    x_end: &Complex,
    delta: f64,
    side: DetourSide,
    prec: u32,
) -> Result<ConnectionResult> {
    let lcc = LccBasis::for_radius(numeric::abs_f64(x_start), prec)?;
    let w0 = lcc.wronskian(x_start)?;
    let path = ContinuationPath::conifold_detour(x_start, x_end, delta, side)?;
    let t = transport(&path, &w0, prec)?;
    let psi = GepnerCoordinate::from_pf_x(x_end, 0)?;
    let gep = GepnerBasis::for_radius(numeric::abs_f64(psi.value()), prec)?;
    let wg = gep.wronskian(&psi)?;
    let c = t.matrix.mul(&wg.inverse()?);
    let b = builtin_matrices();
    let (winding_power, deviation) = (0..5i64)
        .map(|k| {
            let target = &b.m_inf.pow(k).expect("integer power") * &b.n;
            (k, c.max_abs_diff(&target.to_cmatrix(prec)))
        })
        .min_by(|a, b| a.1.total_cmp(&b.1))
        .expect("five candidates");
    Ok(ConnectionResult { matrix: c, winding_power, deviation, error_estimate: t.error_estimate, steps: t.steps })
}

/// Singular point encircled by a loop.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopPoint {
    /// `x = 0`, counterclockwise in `x`.
    Lcc,
    /// `x = 5^{-5}`, counterclockwise in `x`.
    Conifold,
    /// `x = ∞`, counterclockwise in `1/x` (clockwise in `x`), so that
    /// `ψ ↦ ξψ`.
    Gepner,
}

/// Basis in which a loop matrix is expressed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum LoopBasis {
    /// `Π_B`, basepoint `0 < |x| < 5^{-5}`.
    Lcc,
    /// `Π_B^∞`, basepoint given in `x` with `|x| > 5^{-5}`, `ψ` the principal root.
    Gepner,
}

#[derive(Clone, Debug)]
pub struct LoopResult {
    /// `M` with `W_end = M W_start`.
    pub matrix: CMatrix,
    pub reference: Option<RationalMatrix4>,
    /// `max |M − reference|` when a printed reference exists.
    pub deviation: Option<f64>,
    pub error_estimate: f64,
}

/// The closed path used by [`loop_monodromy`].
pub fn loop_path(basepoint: &Complex, which: LoopPoint, basis: LoopBasis) -> Result<ContinuationPath> {
    let prec = basepoint.prec().0;
    let r_b = numeric::abs_f64(basepoint);
    match (which, basis) {
        (LoopPoint::Lcc, LoopBasis::Lcc) => ContinuationPath::circle(&numeric::zero(prec), basepoint, true, 32),
        (LoopPoint::Conifold, LoopBasis::Lcc) => {
            let c = numeric::from_f64(prec, CONIFOLD, 0.0);
            let to_c = Complex::with_val(prec, &c - basepoint);
            let d = numeric::abs_f64(&to_c);
            let r = (d / 2.0).min(CONIFOLD / 2.0);
            let near = Complex::with_val(prec, &c - to_c * Float::with_val(prec, r / d));
            let tail = ContinuationPath::new(vec![basepoint.clone(), near.clone()])?;
            let around = ContinuationPath::circle(&c, &near, true, 32)?;
            tail.then(&around)?.then(&tail.reversed())
        }
        (LoopPoint::Gepner, LoopBasis::Lcc) => {
            let far = numeric::from_f64(prec, 1.0, 0.0);
            let tail = ContinuationPath::conifold_detour(basepoint, &far, DEFAULT_DETOUR, DetourSide::Below)?;
            let around = ContinuationPath::circle(&numeric::zero(prec), &far, false, 32)?;
            tail.then(&around)?.then(&tail.reversed())
        }
        (LoopPoint::Gepner, LoopBasis::Gepner) => {
            if r_b <= CONIFOLD {
                return Err(Error::Domain(format!("|x| = {r_b:e}"), "|x| > 5^-5 for the Gepner basis"));
            }
            ContinuationPath::circle(&numeric::zero(prec), basepoint, false, 32)
        }
        (p, b) => Err(Error::Path(format!("loop around {p:?} in the {b:?} basis is not supported"))),
    }
}

/// Monodromy of the chosen basis around one singular point.
pub fn loop_monodromy(basepoint: &Complex, which: LoopPoint, basis: LoopBasis, prec: u32) -> Result<LoopResult> {
    let path = loop_path(basepoint, which, basis)?;
    let start = start_wronskian(basepoint, basis, prec)?;
    let t = transport(&path, &start, prec)?;
    let matrix = t.matrix.mul(&start.inverse()?);
    let b = builtin_matrices();
    let reference = match (which, basis) {
        (LoopPoint::Gepner, LoopBasis::Lcc) => Some(b.m_inf),
        (LoopPoint::Gepner, LoopBasis::Gepner) => Some(b.m),
        _ => None,
    };
    let deviation = reference.as_ref().map(|r| matrix.max_abs_diff(&r.to_cmatrix(prec)));
    Ok(LoopResult { matrix, reference, deviation, error_estimate: t.error_estimate })
}

/// Wronskian of the basis at `x`.
pub fn start_wronskian(x: &Complex, basis: LoopBasis, prec: u32) -> Result<CMatrix> {
    match basis {
        LoopBasis::Lcc => LccBasis::for_radius(numeric::abs_f64(x), prec)?.wronskian(x),
        LoopBasis::Gepner => {
            let psi = GepnerCoordinate::from_pf_x(x, 0)?;
            GepnerBasis::for_radius(numeric::abs_f64(psi.value()), prec)?.wronskian(&psi)
        }
    }
}

/// Loop matrices around `0`, `5^{-5}` and `∞` at a common basepoint in the
/// `Π_B` basis, and the deviation of `M_∞-loop · M_conifold · M_0` from the
/// identity.
#[derive(Clone, Debug)]
pub struct MonodromyRelation {
    pub lcc: CMatrix,
    pub conifold: CMatrix,
    pub gepner: CMatrix,
    pub deviation: f64,
}

pub fn monodromy_relation(basepoint: &Complex, prec: u32) -> Result<MonodromyRelation> {
    let lcc = loop_monodromy(basepoint, LoopPoint::Lcc, LoopBasis::Lcc, prec)?.matrix;
    let conifold = loop_monodromy(basepoint, LoopPoint::Conifold, LoopBasis::Lcc, prec)?.matrix;
    let gepner = loop_monodromy(basepoint, LoopPoint::Gepner, LoopBasis::Lcc, prec)?.matrix;
    let product = gepner.mul(&conifold).mul(&lcc);
    let deviation = product.max_abs_diff(&CMatrix::identity(4, prec));
    Ok(MonodromyRelation { lcc, conifold, gepner, deviation })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::from_f64;

    #[test]
    fn empty_path_is_identity_transport() {
        let x = from_f64(128, 1e-4, 0.0);
        let w = start_wronskian(&x, LoopBasis::Lcc, 128).unwrap();
        let p = ContinuationPath::new(vec![x.clone()]).unwrap();
        let t = transport(&p, &w, 128).unwrap();
        assert_eq!(t.matrix, w);
        assert_eq!(t.steps, 0);
    }

    #[test]
    fn path_through_conifold_is_rejected() {
        let a = from_f64(64, 1e-4, 0.0);
        let b = from_f64(64, 1.0, 0.0);
        assert!(matches!(ContinuationPath::new(vec![a, b]), Err(Error::Path(_))));
    }

    #[test]
    fn transport_matches_series_inside_radius() {
        // oracle: the series basis evaluated at the endpoint
        let prec = 128;
        let a = from_f64(prec, 1e-4, 0.0);
        let b = from_f64(prec, -5e-5, 1.2e-4);
        let basis = LccBasis::for_radius(1.5e-4, prec).unwrap();
        let p = ContinuationPath::new(vec![a.clone(), b.clone()]).unwrap();
        let t = transport(&p, &basis.wronskian(&a).unwrap(), prec).unwrap();
        let expect = basis.wronskian(&b).unwrap();
        let d = t.matrix.max_abs_diff(&expect);
        assert!(d < 1e-25, "{d}");
        assert!(t.error_estimate < 1e-20);
    }

    #[test]
    fn loop_around_regular_point_is_trivial() {
        let prec = 128;
        let c = from_f64(prec, 1.5e-4, 1.5e-4);
        let start = from_f64(prec, 1.5e-4, 0.5e-4);
        let w = start_wronskian(&start, LoopBasis::Lcc, prec).unwrap();
        let p = ContinuationPath::circle(&c, &start, true, 16).unwrap();
        let t = transport(&p, &w, prec).unwrap();
        assert!(t.matrix.max_abs_diff(&w) < 1e-10);
    }
}
