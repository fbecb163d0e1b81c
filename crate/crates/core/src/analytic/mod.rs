//! The limiting gap law in closed form, the partial volumes, and numeric
//! oracles for both.
//!
//! The law splits over the three zones of the section: `F_s(α)` is the
//! (unnormalized) area of `Ω_s ∩ {R_s < α}` and the probability cdf is
//! `(2/φ)·(F_1 + F_φ + F_∞)`.

mod quad;

use std::f64::consts::PI;
use std::io::Write;
use std::sync::OnceLock;

use rayon::prelude::*;
use serde::Serialize;

use crate::bcz::Zone;
use crate::golden::{GoldenNumber, PHI, PHI_BAR};
use crate::{fmt_f64, Error, Result};

pub use quad::{integrate, integrate_pieces};

/// `2/φ`, the density of the invariant probability on the section.
pub const DENSITY: f64 = 2.0 * PHI_BAR;

/// Dilogarithm `Li₂(x)` on `[0, 1]`.
pub fn dilog(x: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&x) {
        return Err(Error::Domain {
            function: "dilog",
            value: x,
        });
    }
    if x == 1.0 {
        return Ok(PI * PI / 6.0);
    }
    if x > 0.5 {
        let y = 1.0 - x;
        return Ok(PI * PI / 6.0 - x.ln() * y.ln() - dilog_series(y));
    }
    Ok(dilog_series(x))
}

fn dilog_series(x: f64) -> f64 {
    let mut sum = 0.0;
    let mut pow = x;
    let mut k = 1.0;
    while pow > 1e-18 * k * k {
        sum += pow / (k * k);
        pow *= x;
        k += 1.0;
    }
    sum
}

/// `ath(x) = ½ ln((1+x)/(1−x))` for `|x| < 1`.
pub fn ath(x: f64) -> Result<f64> {
    if x.abs() >= 1.0 || x.is_nan() {
        return Err(Error::Domain {
            function: "ath",
            value: x,
        });
    }
    Ok(x.atanh())
}

/// `r(x) = √(1 − 4x)` for `x ≤ 1/4`.
pub fn rfun(x: f64) -> Result<f64> {
    if x > 0.25 || x.is_nan() {
        return Err(Error::Domain {
            function: "r",
            value: x,
        });
    }
    Ok((1.0 - 4.0 * x).sqrt())
}

// Near x = 1/4 one ulp of α moves r by ~1e-8; snap to the exact breakpoint value.
fn r(x: f64) -> f64 {
    let d = 1.0 - 4.0 * x;
    if d < 8.0 * f64::EPSILON {
        0.0
    } else {
        d.sqrt()
    }
}

fn at(x: f64) -> f64 {
    x.atanh()
}

/// A function given by closed forms between exact golden-field breakpoints.
///
/// Piece `i` covers `[breakpoints[i-1], breakpoints[i])`, with piece 0
/// starting at 0 and the last piece unbounded.
pub struct PiecewiseFunction {
    breakpoints: Vec<GoldenNumber>,
    cuts: Vec<f64>,
    pieces: Vec<fn(f64) -> f64>,
}

impl PiecewiseFunction {
    pub fn new(breakpoints: Vec<GoldenNumber>, pieces: Vec<fn(f64) -> f64>) -> Self {
        assert_eq!(pieces.len(), breakpoints.len() + 1, "one more piece than breakpoints");
        assert!(breakpoints.windows(2).all(|w| w[0] < w[1]), "breakpoints must increase");
        let cuts = breakpoints.iter().map(GoldenNumber::to_f64).collect();
        PiecewiseFunction {
            breakpoints,
            cuts,
            pieces,
        }
    }

    pub fn breakpoints(&self) -> &[GoldenNumber] {
        &self.breakpoints
    }

    pub fn breakpoints_f64(&self) -> &[f64] {
        &self.cuts
    }

    pub fn pieces(&self) -> usize {
        self.pieces.len()
    }

    /// Index of the piece in force at `x`.
    pub fn piece_index(&self, x: f64) -> usize {
        self.cuts.partition_point(|&c| c <= x)
    }

    /// Piece `i` evaluated at `x`, whether or not `x` lies in its interval.
    pub fn piece(&self, i: usize, x: f64) -> f64 {
        (self.pieces[i])(x)
    }

    pub fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return self.piece(0, 0.0_f64.max(x));
        }
        self.piece(self.piece_index(x), x)
    }

    /// Left and right values at interior breakpoint `i`.
    pub fn one_sided(&self, i: usize) -> (f64, f64) {
        let x = self.cuts[i];
        (self.piece(i, x), self.piece(i + 1, x))
    }
}

// F_∞, breakpoints 1, 4φ, φ⁴.
fn finf_1(a: f64) -> f64 {
    1.0 - (1.0 + a.ln()) / a
}
fn finf_2(a: f64) -> f64 {
    let rr = r(PHI / a);
    1.0 - (1.0 + a.ln() - 4.0 * at(rr)) / a - PHI_BAR * rr
}
// ln(φ̄α/2) + ln(1 − r(φ/α)) = ln(2/(1 + r(φ/α))), which stays accurate for large α.
fn finf_3(a: f64) -> f64 {
    let rr = r(PHI / a);
    1.5 * PHI_BAR - (1.0 + 2.0 * (2.0 / (1.0 + rr)).ln()) / a - 0.5 * PHI_BAR * rr
}
fn pinf_1(a: f64) -> f64 {
    a.ln() / (a * a)
}
fn pinf_2(a: f64) -> f64 {
    (a.ln() - 4.0 * at(r(PHI / a))) / (a * a)
}
fn pinf_3(a: f64) -> f64 {
    2.0 * (2.0 / (1.0 + r(PHI / a))).ln() / (a * a)
}

// F_φ, breakpoints φ, 4, φ³.
fn fphi_1(a: f64) -> f64 {
    PHI_BAR - (1.0 + (PHI_BAR * a).ln()) / a
}
fn fphi_2(a: f64) -> f64 {
    let rr = r(1.0 / a);
    PHI_BAR - (1.0 + (PHI_BAR * a).ln() - 4.0 * at(rr)) / a - rr
}
fn fphi_3(_: f64) -> f64 {
    PHI_BAR.powi(4)
}
fn pphi_1(a: f64) -> f64 {
    (PHI_BAR * a).ln() / (a * a)
}
fn pphi_2(a: f64) -> f64 {
    ((PHI_BAR * a).ln() - 4.0 * at(r(1.0 / a))) / (a * a)
}

// F_1, breakpoints φ, 4φ̄, φ².
fn fone_2(a: f64) -> f64 {
    let rr = r(PHI_BAR / a);
    PHI_BAR - (1.0 + (PHI_BAR * a).ln() - 2.0 * at(rr)) / a - 0.5 * PHI * rr
}
fn fone_3(_: f64) -> f64 {
    0.5 * PHI_BAR.powi(5)
}
fn pone_2(a: f64) -> f64 {
    ((PHI_BAR * a).ln() - 2.0 * at(r(PHI_BAR / a))) / (a * a)
}

fn zero(_: f64) -> f64 {
    0.0
}

fn phi_pow(k: u32) -> GoldenNumber {
    GoldenNumber::phi().pow(k)
}

fn zone_breakpoints(zone: Zone) -> Vec<GoldenNumber> {
    match zone {
        Zone::Infinity => vec![GoldenNumber::one(), GoldenNumber::phi().mul_int(4), phi_pow(4)],
        Zone::Phi => vec![GoldenNumber::phi(), GoldenNumber::integer(4), phi_pow(3)],
        Zone::One => vec![GoldenNumber::phi(), GoldenNumber::phi_bar().mul_int(4), phi_pow(2)],
    }
}

type Piece = fn(f64) -> f64;

struct ZoneLaw {
    cdf: PiecewiseFunction,
    pdf: PiecewiseFunction,
}

fn build_law(zone: Zone) -> ZoneLaw {
    let (cdf, pdf): (Vec<Piece>, Vec<Piece>) = match zone {
        Zone::Infinity => (vec![zero, finf_1, finf_2, finf_3], vec![zero, pinf_1, pinf_2, pinf_3]),
        Zone::Phi => (vec![zero, fphi_1, fphi_2, fphi_3], vec![zero, pphi_1, pphi_2, zero]),
        Zone::One => (vec![zero, fphi_1, fone_2, fone_3], vec![zero, pphi_1, pone_2, zero]),
    };
    ZoneLaw {
        cdf: PiecewiseFunction::new(zone_breakpoints(zone), cdf),
        pdf: PiecewiseFunction::new(zone_breakpoints(zone), pdf),
    }
}

fn law(zone: Zone) -> &'static ZoneLaw {
    static LAWS: OnceLock<[ZoneLaw; 3]> = OnceLock::new();
    let laws = LAWS.get_or_init(|| [build_law(Zone::One), build_law(Zone::Phi), build_law(Zone::Infinity)]);
    match zone {
        Zone::One => &laws[0],
        Zone::Phi => &laws[1],
        Zone::Infinity => &laws[2],
    }
}

/// The partial cdf `F_s` as a piecewise function.
pub fn partial_cdf_function(zone: Zone) -> &'static PiecewiseFunction {
    &law(zone).cdf
}

/// The partial pdf `f_s` as a piecewise function.
pub fn partial_pdf_function(zone: Zone) -> &'static PiecewiseFunction {
    &law(zone).pdf
}

/// `F_s(α)`: area of `Ω_s ∩ {R_s < α}`. Accepts `α = ∞`.
pub fn cdf_partial(zone: Zone, alpha: f64) -> f64 {
    law(zone).cdf.eval(alpha)
}

/// `f_s(α) = F_s'(α)`.
pub fn pdf_partial(zone: Zone, alpha: f64) -> f64 {
    law(zone).pdf.eval(alpha)
}

/// Limiting probability that a scaled gap is below `alpha`.
pub fn gap_cdf(alpha: f64) -> f64 {
    DENSITY * Zone::ALL.iter().map(|&z| cdf_partial(z, alpha)).sum::<f64>()
}

/// Limiting density of scaled gaps.
pub fn gap_pdf(alpha: f64) -> f64 {
    DENSITY * Zone::ALL.iter().map(|&z| pdf_partial(z, alpha)).sum::<f64>()
}

/// `1 − gap_cdf(alpha)`, computed without cancellation in the tail.
pub fn gap_survival(alpha: f64) -> f64 {
    if alpha < PHI.powi(4) {
        return 1.0 - gap_cdf(alpha);
    }
    if alpha.is_infinite() {
        return 0.0;
    }
    // Only Ω_∞ is still contributing; expand its last piece around r = 1.
    let x = PHI / alpha;
    let s = 1.0 + r(x);
    DENSITY * (-2.0 * (-2.0 * x / s).ln_1p() - 4.0 * x / (s * s)) / alpha
}

/// The eight candidate non-smoothness points `1, φ, 4φ̄, φ², 4, φ³, 4φ, φ⁴`.
pub fn breakpoints() -> Vec<GoldenNumber> {
    let mut all: Vec<GoldenNumber> = Zone::ALL.iter().flat_map(|&z| zone_breakpoints(z)).collect();
    all.sort();
    all.dedup();
    all
}

pub fn breakpoints_f64() -> Vec<f64> {
    breakpoints().iter().map(GoldenNumber::to_f64).collect()
}

/// Left/right limits of `gap_cdf` and `gap_pdf` at a breakpoint, found by
/// evaluating the adjacent pieces of every zone at the point itself.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct OneSided {
    pub cdf: (f64, f64),
    pub pdf: (f64, f64),
}

pub fn one_sided_limits(alpha: f64) -> OneSided {
    let side = |f: &PiecewiseFunction| {
        let i = f.piece_index(alpha);
        let left = if i > 0 && f.breakpoints_f64()[i - 1] == alpha {
            i - 1
        } else {
            i
        };
        (f.piece(left, alpha), f.piece(i, alpha))
    };
    let mut cdf = (0.0, 0.0);
    let mut pdf = (0.0, 0.0);
    for z in Zone::ALL {
        let (l, r) = side(&law(z).cdf);
        cdf.0 += DENSITY * l;
        cdf.1 += DENSITY * r;
        let (l, r) = side(&law(z).pdf);
        pdf.0 += DENSITY * l;
        pdf.1 += DENSITY * r;
    }
    OneSided { cdf, pdf }
}

/// Behaviour of the density around one candidate breakpoint.
#[derive(Debug, Clone, Serialize)]
pub struct BreakpointReport {
    pub exact: String,
    pub alpha: f64,
    pub cdf_jump: f64,
    pub pdf_jump: f64,
    /// One-sided difference quotients of the density at step `h`.
    pub slope_left: f64,
    pub slope_right: f64,
    pub differentiable: bool,
}

/// Which candidate breakpoints are genuine corners of the density.
///
/// One-sided difference quotients are taken at two step sizes; the density
/// counts as differentiable at a point only if the quotients agree at both
/// and do not blow up as the step shrinks.
pub fn smoothness_report() -> Vec<BreakpointReport> {
    breakpoints()
        .into_iter()
        .map(|bp| {
            let alpha = bp.to_f64();
            let lim = one_sided_limits(alpha);
            let centre = 0.5 * (lim.pdf.0 + lim.pdf.1);
            let quotients = |h: f64| ((centre - gap_pdf(alpha - h)) / h, (gap_pdf(alpha + h) - centre) / h);
            let (l1, r1) = quotients(1e-4);
            let (l2, r2) = quotients(1e-6);
            let scale = 1.0 + l2.abs().max(r2.abs());
            let differentiable =
                (l2 - r2).abs() < 1e-3 * scale && (l1 - l2).abs() < 1e-2 * scale && (r1 - r2).abs() < 1e-2 * scale;
            BreakpointReport {
                exact: bp.to_string(),
                alpha,
                cdf_jump: lim.cdf.1 - lim.cdf.0,
                pdf_jump: lim.pdf.1 - lim.pdf.0,
                slope_left: l2,
                slope_right: r2,
                differentiable,
            }
        })
        .collect()
}

// b = u − v·a
#[derive(Clone, Copy)]
struct Line {
    u: f64,
    v: f64,
}

impl Line {
    fn at(self, a: f64) -> f64 {
        self.u - self.v * a
    }
}

// Zone s as {a_lo < a ≤ a_hi, max(lowers) < b ≤ upper}, with R_s = 1/(a(c·a + b)).
struct Region {
    a_lo: f64,
    a_hi: f64,
    lowers: Vec<Line>,
    upper: Line,
    c: f64,
}

fn region(zone: Zone) -> Region {
    let omega_floor = Line { u: 1.0, v: PHI };
    match zone {
        Zone::Infinity => Region {
            a_lo: 0.0,
            a_hi: 1.0,
            lowers: vec![omega_floor, Line { u: PHI_BAR, v: PHI_BAR }],
            upper: Line { u: 1.0, v: 0.0 },
            c: 0.0,
        },
        Zone::Phi => Region {
            a_lo: PHI_BAR * PHI_BAR,
            a_hi: 1.0,
            lowers: vec![omega_floor, Line { u: PHI_BAR, v: 1.0 }],
            upper: Line { u: PHI_BAR, v: PHI_BAR },
            c: PHI_BAR,
        },
        Zone::One => Region {
            a_lo: PHI_BAR,
            a_hi: 1.0,
            lowers: vec![omega_floor],
            upper: Line { u: PHI_BAR, v: 1.0 },
            c: 1.0,
        },
    }
}

impl Region {
    fn lower(&self, a: f64) -> Line {
        *self
            .lowers
            .iter()
            .max_by(|x, y| x.at(a).total_cmp(&y.at(a)))
            .expect("at least one lower bound")
    }

    fn inside(&self, a: f64) -> bool {
        a > self.a_lo && a < self.a_hi
    }

    fn lower_kinks(&self) -> Vec<f64> {
        let mut out = vec![self.a_lo, self.a_hi];
        for (i, p) in self.lowers.iter().enumerate() {
            for q in &self.lowers[i + 1..] {
                if p.v != q.v {
                    let a = (p.u - q.u) / (p.v - q.v);
                    if self.inside(a) {
                        out.push(a);
                    }
                }
            }
        }
        out
    }

    fn finish(mut pts: Vec<f64>) -> Vec<f64> {
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }
}

/// Numeric `F_s(α)`: the b-integral is done in closed form, the a-integral
/// by adaptive quadrature split at every kink of the integrand.
pub fn area_oracle(zone: Zone, alpha: f64, tolerance: f64) -> f64 {
    if alpha <= 0.0 {
        return 0.0;
    }
    let reg = region(zone);
    let inv = 1.0 / alpha;
    let threshold = |a: f64| if inv == 0.0 { -reg.c * a } else { inv / a - reg.c * a };
    let mut pts = reg.lower_kinks();
    // Where the hyperbola R_s = α crosses a bounding line: (v − c)a² − u·a + 1/α = 0.
    for line in reg.lowers.iter().chain(std::iter::once(&reg.upper)) {
        let (qa, qb, qc) = (line.v - reg.c, -line.u, inv);
        if qa == 0.0 {
            pts.push(-qc / qb);
            continue;
        }
        let disc = qb * qb - 4.0 * qa * qc;
        if disc >= 0.0 {
            let s = disc.sqrt();
            pts.push((-qb - s) / (2.0 * qa));
            pts.push((-qb + s) / (2.0 * qa));
        }
    }
    pts.retain(|&a| a >= reg.a_lo && a <= reg.a_hi);
    let pts = Region::finish(pts);
    let integrand = |a: f64| {
        let low = reg.lower(a).at(a).max(threshold(a));
        (reg.upper.at(a) - low).max(0.0)
    };
    integrate_pieces(integrand, &pts, tolerance.max(1e-14))
}

/// Numeric `∫_{Ω_s} R da db`.
///
/// On Ω_∞ the inner integral grows like `ln(1/(1 − a))` near `a = 1`, so
/// each piece is integrated after the substitution `a = p + (q − p)(3t² − 2t³)`,
/// which flattens endpoint singularities.
pub fn volume_oracle(zone: Zone, tolerance: f64) -> f64 {
    let reg = region(zone);
    let pts = Region::finish(reg.lower_kinks());
    let n = (pts.len() - 1) as f64;
    pts.windows(2)
        .map(|w| {
            let (p, q) = (w[0], w[1]);
            let h = q - p;
            let mid = reg.lower(0.5 * (p + q));
            // Lines are evaluated from the nearer endpoint, using the
            // distance to it, so the log singularity is resolved to full
            // precision instead of a rounding staircase.
            let inner = |t: f64| {
                let (end, off) = if t < 0.5 {
                    (p, h * t * t * (3.0 - 2.0 * t))
                } else {
                    let s = 1.0 - t;
                    (q, -h * s * s * (1.0 + 2.0 * t))
                };
                let a = end + off;
                let line = |l: Line| (l.u - l.v * end) - l.v * off;
                let gap = Line {
                    u: reg.upper.u - mid.u,
                    v: reg.upper.v - mid.v,
                };
                let width = line(gap);
                let den = reg.c * a + line(mid);
                if den <= 0.0 || a <= 0.0 {
                    return 0.0;
                }
                (width / den).ln_1p() / a * h * 6.0 * t * (1.0 - t)
            };
            integrate(inner, 0.0, 1.0, tolerance / n)
        })
        .sum()
}

#[derive(Debug, Clone, Copy, Serialize, PartialEq)]
pub struct Volumes {
    #[serde(rename = "V1")]
    pub v1: f64,
    #[serde(rename = "Vphi")]
    pub vphi: f64,
    #[serde(rename = "Vinf")]
    pub vinf: f64,
    #[serde(rename = "Vtotal")]
    pub vtotal: f64,
}

impl Volumes {
    fn from_parts(v1: f64, vphi: f64, vinf: f64) -> Self {
        Volumes {
            v1,
            vphi,
            vinf,
            vtotal: v1 + vphi + vinf,
        }
    }

    pub fn get(&self, zone: Zone) -> f64 {
        match zone {
            Zone::One => self.v1,
            Zone::Phi => self.vphi,
            Zone::Infinity => self.vinf,
        }
    }
}

/// Closed-form and quadrature volumes of the three flow boxes.
#[derive(Debug, Clone, Serialize)]
pub struct VolumeReport {
    pub closed_form: Volumes,
    pub numeric: Volumes,
    pub discrepancy: Volumes,
    /// `|Vtotal − 3π²/10|` for the closed form.
    pub identity_error: f64,
}

impl VolumeReport {
    pub fn max_discrepancy(&self) -> f64 {
        let d = &self.discrepancy;
        [d.v1, d.vphi, d.vinf, d.vtotal].into_iter().fold(0.0, |m, x| {
            if x.is_nan() || m.is_nan() {
                f64::NAN
            } else {
                m.max(x)
            }
        })
    }

    pub fn write_json<W: Write>(&self, out: W) -> Result<()> {
        serde_json::to_writer_pretty(out, self)?;
        Ok(())
    }
}

/// `3π²/10`, the total volume.
pub const TOTAL_VOLUME: f64 = 3.0 * PI * PI / 10.0;

/// Closed-form partial volumes from the dilogarithm.
pub fn closed_form_volumes() -> Volumes {
    let l2 = PHI.ln().powi(2);
    let d1 = dilog(PHI_BAR).expect("φ̄ in [0,1]");
    let d2 = dilog(PHI_BAR * PHI_BAR).expect("φ̄² in [0,1]");
    let d0 = dilog(1.0).expect("1 in [0,1]");
    Volumes::from_parts(-l2 + d1 - d2, -l2 - 2.0 * d2 + 2.0 * d1, 2.0 * l2 + d1 - d2 + d0)
}

pub fn volumes() -> VolumeReport {
    let closed = closed_form_volumes();
    let numeric = Volumes::from_parts(
        volume_oracle(Zone::One, 1e-12),
        volume_oracle(Zone::Phi, 1e-12),
        volume_oracle(Zone::Infinity, 1e-12),
    );
    let discrepancy = Volumes {
        v1: (closed.v1 - numeric.v1).abs(),
        vphi: (closed.vphi - numeric.vphi).abs(),
        vinf: (closed.vinf - numeric.vinf).abs(),
        vtotal: (closed.vtotal - numeric.vtotal).abs(),
    };
    VolumeReport {
        closed_form: closed,
        numeric,
        discrepancy,
        identity_error: (closed.vtotal - TOTAL_VOLUME).abs(),
    }
}

/// Mean scaled gap, `(2/φ)·3π²/10 = 3π²/(5φ)`.
pub fn kac_mean() -> f64 {
    DENSITY * TOTAL_VOLUME
}

/// `∫ α·gap_pdf(α) dα` by quadrature, with the `4/α³` tail beyond `10⁸`
/// added analytically.
pub fn gap_mean_numeric(tolerance: f64) -> f64 {
    let cut = 1e8;
    let mut pts = vec![1.0];
    pts.extend(breakpoints_f64().into_iter().skip(1));
    let mut x = pts[pts.len() - 1];
    while x * 10.0 < cut {
        x *= 10.0;
        pts.push(x);
    }
    pts.push(cut);
    integrate_pieces(|a| a * gap_pdf(a), &pts, tolerance) + 4.0 / cut
}

/// An evenly spaced grid of `steps` points from `min` to `max` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlphaGrid {
    pub min: f64,
    pub max: f64,
    pub steps: usize,
}

impl AlphaGrid {
    pub fn new(min: f64, max: f64, steps: usize) -> Result<Self> {
        if !(min.is_finite() && max.is_finite()) || min < 0.0 || max < min || steps == 0 {
            return Err(Error::Config(format!(
                "bad alpha grid: min={min} max={max} steps={steps}"
            )));
        }
        Ok(AlphaGrid { min, max, steps })
    }

    pub fn points(&self) -> Vec<f64> {
        if self.steps == 1 {
            return vec![self.min];
        }
        let h = (self.max - self.min) / (self.steps - 1) as f64;
        (0..self.steps)
            .map(|i| {
                if i + 1 == self.steps {
                    self.max
                } else {
                    self.min + h * i as f64
                }
            })
            .collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub alpha: f64,
    pub pdf: f64,
    pub cdf: f64,
}

pub fn curve(alphas: &[f64]) -> Vec<CurvePoint> {
    alphas
        .par_iter()
        .map(|&alpha| CurvePoint {
            alpha,
            pdf: gap_pdf(alpha),
            cdf: gap_cdf(alpha),
        })
        .collect()
}

pub fn write_curve_csv<W: Write>(mut out: W, points: &[CurvePoint]) -> Result<()> {
    writeln!(out, "alpha,pdf,cdf")?;
    for p in points {
        writeln!(out, "{},{},{}", fmt_f64(p.alpha), fmt_f64(p.pdf), fmt_f64(p.cdf))?;
    }
    Ok(())
}
