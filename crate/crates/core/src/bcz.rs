//! The golden-L BCZ map: first return of the horocycle flow to the section
//!
//! ```text
//! Ω = {(a, b) : 0 < a ≤ 1, 1 − aφ < b ≤ 1}
//! ```
//!
//! split into three zones by the vector of smallest slope in the unit strip:
//!
//! | zone | b-range (intersected with Ω) | witness | return time |
//! |------|------------------------------|---------|-------------|
//! | `One`      | `b ≤ φ̄ − a`                 | (φ, φ) | `1/(a(a+b))`  |
//! | `Phi`      | `φ̄ − a < b ≤ φ̄ − aφ̄`       | (1, φ) | `1/(a(aφ̄+b))` |
//! | `Infinity` | `φ̄ − aφ̄ < b`               | (0, 1) | `1/(ab)`      |
//!
//! The map sends `(a, b)` to `(a', b_raw + kφa')` where `(a', b_raw)` is
//! `((a+b)φ, a+bφ)`, `(a+bφ, b)` or `(b, −a)` by zone, and the integer `k`
//! is fixed by the membership condition `b' ∈ (1 − φa', 1]`.
//!
//! Three coordinate representations share the dynamics:
//! [`GoldenNumber`] (exact, general), [`ScaledGolden`] (exact, `Z[φ]/R`,
//! which covers every point on the orbit of the renormalized golden L) and
//! `f64` with a boundary guard that re-runs near-boundary steps exactly.

use std::cmp::Ordering;
use std::fmt;
use std::io::Write;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::golden::{GoldenInt, GoldenNumber, GoldenVector, PHI, PHI_BAR};
use crate::lattice::{GapMethod, GapSample};

/// Float comparisons closer than this to a zone or section boundary are
/// redone in exact arithmetic.
pub const FLOAT_GUARD: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Zone {
    #[serde(rename = "Z1")]
    One,
    #[serde(rename = "Zphi")]
    Phi,
    #[serde(rename = "Zinf")]
    Infinity,
}

impl Zone {
    pub const ALL: [Zone; 3] = [Zone::One, Zone::Phi, Zone::Infinity];

    /// The lattice vector whose image has the smallest slope in the strip.
    pub fn witness(self) -> GoldenVector {
        match self {
            Zone::One => GoldenVector::from_ints((0, 1), (0, 1)),
            Zone::Phi => GoldenVector::from_ints((1, 0), (0, 1)),
            Zone::Infinity => GoldenVector::from_ints((0, 0), (1, 0)),
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Zone::One => "Z1",
            Zone::Phi => "Zphi",
            Zone::Infinity => "Zinf",
        }
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Exact,
    Float,
}

/// Exact scalar arithmetic needed by the map. Every operation is exact;
/// `unit` produces `1` in the receiver's representation.
pub trait ExactCoord: Clone + PartialEq + fmt::Debug {
    fn unit(&self) -> Self;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times_phi(&self) -> Self;
    fn times_int(&self, k: i64) -> Self;
    fn sign(&self) -> Ordering;
    fn to_f64(&self) -> f64;
    fn to_golden(&self) -> GoldenNumber;
    /// `1/(x·y)` rounded to a double.
    fn recip_product_f64(x: &Self, y: &Self) -> f64;
    /// `1/(x·y)` exactly.
    fn recip_product(x: &Self, y: &Self) -> GoldenNumber {
        (&x.to_golden() * &y.to_golden())
            .inv()
            .expect("nonzero return time denominator")
    }

    fn phi_bar_times(&self) -> Self {
        self.times_phi().minus(self)
    }

    fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    /// `self ≤ o`
    fn le(&self, o: &Self) -> bool {
        self.minus(o).sign() != Ordering::Greater
    }
}

impl ExactCoord for GoldenNumber {
    fn unit(&self) -> Self {
        GoldenNumber::one()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times_phi(&self) -> Self {
        self.mul_phi()
    }
    fn times_int(&self, k: i64) -> Self {
        self.mul_int(k)
    }
    fn sign(&self) -> Ordering {
        GoldenNumber::sign(self)
    }
    fn to_f64(&self) -> f64 {
        GoldenNumber::to_f64(self)
    }
    fn to_golden(&self) -> GoldenNumber {
        self.clone()
    }
    fn recip_product_f64(x: &Self, y: &Self) -> f64 {
        Self::recip_product(x, y).to_f64()
    }
}

/// `num / den` with `num ∈ Z[φ]` and a fixed positive integer `den`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct ScaledGolden {
    pub num: GoldenInt,
    pub den: i128,
}

impl ScaledGolden {
    pub fn new(num: GoldenInt, den: i128) -> Self {
        assert!(den > 0, "scale must be positive");
        ScaledGolden { num, den }
    }
}

impl ExactCoord for ScaledGolden {
    fn unit(&self) -> Self {
        ScaledGolden {
            num: GoldenInt::integer(self.den),
            den: self.den,
        }
    }
    fn plus(&self, o: &Self) -> Self {
        debug_assert_eq!(self.den, o.den);
        ScaledGolden {
            num: self.num + o.num,
            den: self.den,
        }
    }
    fn minus(&self, o: &Self) -> Self {
        debug_assert_eq!(self.den, o.den);
        ScaledGolden {
            num: self.num - o.num,
            den: self.den,
        }
    }
    fn times_phi(&self) -> Self {
        ScaledGolden {
            num: self.num.mul_phi(),
            den: self.den,
        }
    }
    fn times_int(&self, k: i64) -> Self {
        ScaledGolden {
            num: self.num.mul_int(k as i128),
            den: self.den,
        }
    }
    fn sign(&self) -> Ordering {
        self.num.sign()
    }
    fn to_f64(&self) -> f64 {
        self.num.to_f64() / self.den as f64
    }
    fn to_golden(&self) -> GoldenNumber {
        let d = GoldenNumber::rational(num_rational::BigRational::from_integer(self.den.into()));
        &self.num.to_golden() / &d
    }
    fn recip_product_f64(x: &Self, y: &Self) -> f64 {
        let d = x.den as f64;
        d * d / (x.num * y.num).to_f64()
    }
    fn recip_product(x: &Self, y: &Self) -> GoldenNumber {
        let d2 = GoldenNumber::rational(num_rational::BigRational::from_integer((x.den * x.den).into()));
        &d2 / &(x.num * y.num).to_golden()
    }
}

/// A point `(a, b)` in exact coordinates.
#[derive(Clone, PartialEq, Debug)]
pub struct Point<C> {
    pub a: C,
    pub b: C,
}

impl<C: ExactCoord> Point<C> {
    pub fn in_omega(&self) -> bool {
        let one = self.a.unit();
        let lower = one.minus(&self.a.times_phi());
        self.a.is_positive() && self.a.le(&one) && lower.minus(&self.b).sign() == Ordering::Less && self.b.le(&one)
    }

    pub fn classify(&self) -> Result<Zone> {
        if !self.in_omega() {
            return Err(self.outside());
        }
        let one = self.a.unit();
        let phi_bar = one.phi_bar_times();
        let zone = if self.b.le(&phi_bar.minus(&self.a)) {
            Zone::One
        } else if self.b.le(&phi_bar.minus(&self.a.phi_bar_times())) {
            Zone::Phi
        } else {
            Zone::Infinity
        };
        // the printed a-ranges are implied by the b-ranges inside Ω
        let a_ok = match zone {
            Zone::One => phi_bar.le(&self.a),
            Zone::Phi => phi_bar.phi_bar_times().le(&self.a),
            Zone::Infinity => true,
        };
        if !a_ok {
            return Err(Error::Invariant(format!("zone {zone} outside its a-range at {self:?}")));
        }
        Ok(zone)
    }

    /// The second factor `c` of the return time `1/(a·c)`.
    fn return_factor(&self, zone: Zone) -> C {
        match zone {
            Zone::One => self.a.plus(&self.b),
            Zone::Phi => self.a.phi_bar_times().plus(&self.b),
            Zone::Infinity => self.b.clone(),
        }
    }

    pub fn return_time_f64(&self, zone: Zone) -> f64 {
        C::recip_product_f64(&self.a, &self.return_factor(zone))
    }

    pub fn return_time_exact(&self, zone: Zone) -> GoldenNumber {
        C::recip_product(&self.a, &self.return_factor(zone))
    }

    /// `(a', b_raw)` before normalization.
    fn raw_image(&self, zone: Zone) -> (C, C) {
        let (a, b) = (&self.a, &self.b);
        match zone {
            Zone::One => (a.plus(b).times_phi(), a.plus(&b.times_phi())),
            Zone::Phi => (a.plus(&b.times_phi()), b.clone()),
            Zone::Infinity => (b.clone(), a.times_int(-1)),
        }
    }

    pub fn apply(&self) -> Result<(Point<C>, Zone)> {
        let zone = self.classify()?;
        let (a_new, b_raw) = self.raw_image(zone);
        let hint = printed_normalization_hint(zone, self.a.to_f64(), self.b.to_f64());
        let k = normalize_from(&a_new, &b_raw, hint);
        let b_new = b_raw.plus(&a_new.times_phi().times_int(k));
        let image = Point { a: a_new, b: b_new };
        if !image.in_omega() {
            return Err(Error::Invariant(format!("image of {self:?} left the section")));
        }
        Ok((image, zone))
    }

    /// The unique preimage under the map, found by searching the three
    /// inverse branches.
    pub fn preimage(&self) -> Result<Point<C>> {
        if !self.in_omega() {
            return Err(self.outside());
        }
        let mut found: Vec<Point<C>> = Vec::new();
        for zone in Zone::ALL {
            for cand in self.branch_candidates(zone) {
                if cand.in_omega()
                    && cand.classify().ok() == Some(zone)
                    && cand.apply().map(|(img, _)| img == *self).unwrap_or(false)
                    && !found.contains(&cand)
                {
                    found.push(cand);
                }
            }
        }
        match found.len() {
            1 => Ok(found.pop().expect("one preimage")),
            n => Err(Error::Invariant(format!("{n} preimages for {self:?}"))),
        }
    }

    /// Preimage candidates on one branch: the integer shift `j` in
    /// `b_raw = b' + jφa'` ranges over a float-estimated window.
    fn branch_candidates(&self, zone: Zone) -> Vec<Point<C>> {
        let a1 = &self.a;
        let step = a1.times_phi();
        let make = |j: i64| -> Point<C> {
            let b_raw = self.b.plus(&step.times_int(j));
            match zone {
                Zone::Infinity => Point {
                    a: b_raw.times_int(-1),
                    b: a1.clone(),
                },
                Zone::Phi => Point {
                    a: a1.minus(&b_raw.times_phi()),
                    b: b_raw,
                },
                Zone::One => {
                    // a + b = a'φ̄ and a + bφ = b_raw  ⇒  b = φ(b_raw − a'φ̄)
                    let b = b_raw.minus(&a1.phi_bar_times()).times_phi();
                    Point {
                        a: a1.phi_bar_times().minus(&b),
                        b,
                    }
                }
            }
        };
        // each candidate coordinate is affine in j; bound j by 0 < a ≤ 1
        // and 1 − aφ < b ≤ 1 in floating point with slack
        let p0 = make(0);
        let p1 = make(1);
        let (a0, b0) = (p0.a.to_f64(), p0.b.to_f64());
        let (da, db) = (p1.a.to_f64() - a0, p1.b.to_f64() - b0);
        let mut lo = f64::NEG_INFINITY;
        let mut hi = f64::INFINITY;
        // constraints g0 + j·g1 ≥ 0
        let constraints = [
            (a0, da),
            (1.0 - a0, -da),
            (b0 - 1.0 + a0 * PHI, db + da * PHI),
            (1.0 - b0, -db),
        ];
        for (g0, g1) in constraints {
            if g1.abs() < 1e-300 {
                if g0 < -1e-9 {
                    return Vec::new();
                }
                continue;
            }
            let root = -g0 / g1;
            if g1 > 0.0 {
                lo = lo.max(root);
            } else {
                hi = hi.min(root);
            }
        }
        if !(lo.is_finite() && hi.is_finite()) || hi < lo - 2.0 {
            return Vec::new();
        }
        let (start, end) = (lo.floor() as i64 - 1, hi.ceil() as i64 + 1);
        (start..=end).map(make).collect()
    }

    fn outside(&self) -> Error {
        Error::OutsideSection {
            a: self.a.to_f64(),
            b: self.b.to_f64(),
        }
    }
}

/// The integer `k` with `b_raw + kφ·a_new ∈ (1 − φ·a_new, 1]`.
pub fn normalization_k<C: ExactCoord>(a_new: &C, b_raw: &C) -> i64 {
    normalize_from(a_new, b_raw, None)
}

fn normalize_from<C: ExactCoord>(a_new: &C, b_raw: &C, hint: Option<i64>) -> i64 {
    assert!(a_new.is_positive(), "normalization needs a positive horizontal length");
    let one = a_new.unit();
    let w = a_new.times_phi();
    let estimate = ((1.0 - b_raw.to_f64()) / w.to_f64()).floor();
    let mut k = hint.unwrap_or(if estimate.is_finite() { estimate as i64 } else { 0 });
    if let Some(h) = hint {
        if estimate.is_finite() && (h - estimate as i64).abs() > 2 {
            k = estimate as i64;
        }
    }
    loop {
        let b = b_raw.plus(&w.times_int(k));
        if !b.le(&one) {
            k -= 1;
        } else if b.le(&one.minus(&w)) {
            k += 1;
        } else {
            return k;
        }
    }
}

/// The closed-form `k₁`, `k_φ`, `k_∞` as printed alongside the map, for
/// points in the given zone. These are ceilings where the membership
/// condition needs floors, so they are used only as starting guesses.
pub fn printed_normalization_hint(zone: Zone, a: f64, b: f64) -> Option<i64> {
    let v = match zone {
        Zone::One => -((a + b * PHI - 1.0) / (PHI * PHI * (a + b))).floor(),
        Zone::Phi => -((b - 1.0) / (PHI * (a + b * PHI))).floor(),
        Zone::Infinity => -((-a - 1.0) / (PHI * b)).floor(),
    };
    (v.is_finite() && v.abs() < 1e15).then_some(v as i64)
}

/// A point of the section in one of the three representations.
#[derive(Clone, PartialEq, Debug)]
pub enum SectionPoint {
    Exact(Point<GoldenNumber>),
    Scaled(Point<ScaledGolden>),
    Float { a: f64, b: f64 },
}

impl SectionPoint {
    pub fn exact(a: GoldenNumber, b: GoldenNumber) -> Self {
        SectionPoint::Exact(Point { a, b })
    }

    pub fn float(a: f64, b: f64) -> Self {
        SectionPoint::Float { a, b }
    }

    pub fn mode(&self) -> Mode {
        match self {
            SectionPoint::Float { .. } => Mode::Float,
            _ => Mode::Exact,
        }
    }

    pub fn coords_f64(&self) -> (f64, f64) {
        match self {
            SectionPoint::Exact(p) => (p.a.to_f64(), p.b.to_f64()),
            SectionPoint::Scaled(p) => (p.a.to_f64(), p.b.to_f64()),
            SectionPoint::Float { a, b } => (*a, *b),
        }
    }

    /// Exact coordinates, when the representation has them.
    pub fn coords_exact(&self) -> Option<(GoldenNumber, GoldenNumber)> {
        match self {
            SectionPoint::Exact(p) => Some((p.a.clone(), p.b.clone())),
            SectionPoint::Scaled(p) => Some((p.a.to_golden(), p.b.to_golden())),
            SectionPoint::Float { .. } => None,
        }
    }

    pub fn to_exact(&self) -> Option<Point<GoldenNumber>> {
        self.coords_exact().map(|(a, b)| Point { a, b })
    }
}

/// Membership in Ω; guarded for floats (a float within the guard band of
/// a boundary is decided on its exact dyadic value).
pub fn in_omega(p: &SectionPoint) -> bool {
    match p {
        SectionPoint::Exact(q) => q.in_omega(),
        SectionPoint::Scaled(q) => q.in_omega(),
        &SectionPoint::Float { a, b } => {
            let margins = [a, 1.0 - a, b - (1.0 - a * PHI), 1.0 - b];
            if margins.iter().all(|m| m.abs() >= FLOAT_GUARD) {
                margins[0] > 0.0 && margins[1] >= 0.0 && margins[2] > 0.0 && margins[3] >= 0.0
            } else {
                dyadic(a, b).map(|q| q.in_omega()).unwrap_or(false)
            }
        }
    }
}

fn dyadic(a: f64, b: f64) -> Option<Point<GoldenNumber>> {
    Some(Point {
        a: GoldenNumber::from_f64(a)?,
        b: GoldenNumber::from_f64(b)?,
    })
}

pub fn classify(p: &SectionPoint) -> Result<Zone> {
    match p {
        SectionPoint::Exact(q) => q.classify(),
        SectionPoint::Scaled(q) => q.classify(),
        &SectionPoint::Float { a, b } => match float_classify(a, b) {
            Some(z) => Ok(z),
            None => dyadic(a, b).ok_or(Error::OutsideSection { a, b })?.classify(),
        },
    }
}

/// Zone of a float point, or `None` when a comparison falls in the guard
/// band or the point is outside Ω.
fn float_classify(a: f64, b: f64) -> Option<Zone> {
    let margins = [a, 1.0 - a, b - (1.0 - a * PHI), 1.0 - b];
    if margins.iter().any(|m| m.abs() < FLOAT_GUARD)
        || margins[0] <= 0.0
        || margins[1] < 0.0
        || margins[2] <= 0.0
        || margins[3] < 0.0
    {
        return None;
    }
    let m1 = PHI_BAR - a - b;
    let m2 = PHI_BAR - a * PHI_BAR - b;
    if m1.abs() < FLOAT_GUARD || m2.abs() < FLOAT_GUARD {
        return None;
    }
    Some(if m1 >= 0.0 {
        Zone::One
    } else if m2 >= 0.0 {
        Zone::Phi
    } else {
        Zone::Infinity
    })
}

/// Return time `R(a, b)`, always `≥ 1`.
pub fn return_time(p: &SectionPoint) -> Result<f64> {
    let zone = classify(p)?;
    Ok(match p {
        SectionPoint::Exact(q) => q.return_time_f64(zone),
        SectionPoint::Scaled(q) => q.return_time_f64(zone),
        &SectionPoint::Float { a, b } => float_return_time(zone, a, b),
    })
}

/// Exact return time for exact representations.
pub fn return_time_exact(p: &SectionPoint) -> Result<Option<GoldenNumber>> {
    let zone = classify(p)?;
    Ok(match p {
        SectionPoint::Exact(q) => Some(q.return_time_exact(zone)),
        SectionPoint::Scaled(q) => Some(q.return_time_exact(zone)),
        SectionPoint::Float { .. } => None,
    })
}

fn float_return_time(zone: Zone, a: f64, b: f64) -> f64 {
    match zone {
        Zone::One => 1.0 / (a * (a + b)),
        Zone::Phi => 1.0 / (a * (a * PHI_BAR + b)),
        Zone::Infinity => 1.0 / (a * b),
    }
}

/// One step of the map, also reporting the zone and return time of the
/// starting point.
pub fn step(p: &SectionPoint) -> Result<(SectionPoint, Zone, f64)> {
    match p {
        SectionPoint::Exact(q) => {
            let (img, zone) = q.apply()?;
            let rt = q.return_time_f64(zone);
            Ok((SectionPoint::Exact(img), zone, rt))
        }
        SectionPoint::Scaled(q) => {
            let (img, zone) = q.apply()?;
            let rt = q.return_time_f64(zone);
            Ok((SectionPoint::Scaled(img), zone, rt))
        }
        &SectionPoint::Float { a, b } => float_step(a, b),
    }
}

pub fn apply_map(p: &SectionPoint) -> Result<SectionPoint> {
    step(p).map(|(q, _, _)| q)
}

/// Inverse of the map on exact points.
pub fn preimage(p: &SectionPoint) -> Result<SectionPoint> {
    match p {
        SectionPoint::Exact(q) => q.preimage().map(SectionPoint::Exact),
        SectionPoint::Scaled(q) => q.preimage().map(SectionPoint::Scaled),
        SectionPoint::Float { .. } => Err(Error::Invariant("preimage search needs exact coordinates".into())),
    }
}

fn float_step(a: f64, b: f64) -> Result<(SectionPoint, Zone, f64)> {
    let Some(zone) = float_classify(a, b) else {
        return escalated_step(a, b);
    };
    let rt = float_return_time(zone, a, b);
    let (a_new, b_raw) = match zone {
        Zone::One => ((a + b) * PHI, a + b * PHI),
        Zone::Phi => (a + b * PHI, b),
        Zone::Infinity => (b, -a),
    };
    // a' = 1 only on measure-zero sets; snap the rounding excess
    let a_new = if a_new > 1.0 && a_new <= 1.0 + FLOAT_GUARD {
        1.0
    } else {
        a_new
    };
    let w = PHI * a_new;
    let k = ((1.0 - b_raw) / w).floor();
    let b_new = b_raw + k * w;
    let near = (1.0 - b_new).abs() < FLOAT_GUARD || (b_new - (1.0 - w)).abs() < FLOAT_GUARD;
    if near || b_new > 1.0 || b_new <= 1.0 - w || !(a_new > 0.0 && a_new <= 1.0) {
        return escalated_step(a, b);
    }
    Ok((SectionPoint::Float { a: a_new, b: b_new }, zone, rt))
}

/// Exact step on the dyadic value of a float point. A point that rounding
/// pushed just across the periodic b-boundary is first folded back by the
/// `b ↦ b + kφa` identification.
fn escalated_step(a: f64, b: f64) -> Result<(SectionPoint, Zone, f64)> {
    let mut q = dyadic(a, b).ok_or(Error::OutsideSection { a, b })?;
    if q.a.is_positive() && !q.in_omega() {
        let k = normalization_k(&q.a, &q.b);
        q.b = q.b.plus(&q.a.times_phi().times_int(k));
    }
    let (img, zone) = q.apply()?;
    let rt = q.return_time_f64(zone);
    Ok((
        SectionPoint::Float {
            a: img.a.to_f64(),
            b: img.b.to_f64(),
        },
        zone,
        rt,
    ))
}

/// Section coordinates of the golden L renormalized by `diag(1/R, R)`:
/// `a = 1/R`, `b = kφ/R` with `k` the membership integer (`⌊R/φ⌋`).
pub fn section_point_for_radius(radius: u64) -> SectionPoint {
    let Point { a, b } = lattice_point_for_radius(radius);
    SectionPoint::exact(a.to_golden(), b.to_golden())
}

/// The same point as [`section_point_for_radius`] in `Z[φ]/R` coordinates.
pub fn lattice_point_for_radius(radius: u64) -> Point<ScaledGolden> {
    assert!(radius >= 1, "radius must be positive");
    let den = radius as i128;
    let a = ScaledGolden::new(GoldenInt::ONE, den);
    let zero = ScaledGolden::new(GoldenInt::ZERO, den);
    let k = normalization_k(&a, &zero);
    Point {
        a,
        b: a.times_phi().times_int(k),
    }
}

/// Iterator over `(point, zone, return_time)` along an orbit.
pub struct Orbit {
    current: Option<SectionPoint>,
}

impl Orbit {
    pub fn new(start: SectionPoint) -> Self {
        Orbit { current: Some(start) }
    }
}

impl Iterator for Orbit {
    type Item = Result<(SectionPoint, Zone, f64)>;

    fn next(&mut self) -> Option<Self::Item> {
        let p = self.current.take()?;
        match step(&p) {
            Ok((next, zone, rt)) => {
                self.current = Some(next);
                Some(Ok((p, zone, rt)))
            }
            Err(e) => Some(Err(e)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OrbitTrace {
    pub points: Vec<SectionPoint>,
    pub zones: Vec<Zone>,
    pub return_times: Vec<f64>,
    /// Exact recurrence to the starting point was seen within the trace.
    pub closed: bool,
    /// Smallest `j ≥ 1` with `T^j(p) = p`, if seen.
    pub period: Option<usize>,
}

/// The first `n` points of the orbit of `p` with their return times.
pub fn orbit(p: &SectionPoint, n: usize) -> Result<OrbitTrace> {
    let mut trace = OrbitTrace {
        points: Vec::with_capacity(n),
        zones: Vec::with_capacity(n),
        return_times: Vec::with_capacity(n),
        closed: false,
        period: None,
    };
    if n == 0 {
        return Ok(trace);
    }
    let mut it = Orbit::new(p.clone());
    for i in 0..n {
        let (q, zone, rt) = it.next().expect("orbit iterator is infinite")?;
        if i > 0 && trace.period.is_none() && q.mode() == Mode::Exact && q == *p {
            trace.period = Some(i);
            trace.closed = true;
        }
        trace.points.push(q);
        trace.zones.push(zone);
        trace.return_times.push(rt);
    }
    if trace.period.is_none() && p.mode() == Mode::Exact {
        if let Some(Ok((q, _, _))) = it.next() {
            if q == *p {
                trace.period = Some(n);
                trace.closed = true;
            }
        }
    }
    Ok(trace)
}

/// Exact period of an exact point, giving up after `limit` steps.
pub fn period(p: &SectionPoint, limit: usize) -> Result<Option<usize>> {
    if p.mode() != Mode::Exact {
        return Ok(None);
    }
    let mut q = p.clone();
    for j in 1..=limit {
        q = apply_map(&q)?;
        if q == *p {
            return Ok(Some(j));
        }
    }
    Ok(None)
}

/// Scaled slope gaps of the golden L read off the orbit of `x_R`.
///
/// The orbit starts at the horizontal saddle connection (slope 0) and each
/// return time is the next scaled gap; the walk stops once the cumulative
/// time reaches `R²`, the scaled slope of `(φ, φ)`. In exact mode the sum
/// is compared exactly. In float mode coordinates stay exact in `Z[φ]/R`
/// and the return times are doubles; the walk stops when the running sum
/// passes `R² − 1/2` (every gap is at least 1).
pub fn gaps_via_bcz(radius: u64, mode: Mode) -> Result<GapSample> {
    if radius < 2 {
        return Err(Error::Config(format!("radius must be at least 2, got {radius}")));
    }
    let r2 = (radius as i128) * (radius as i128);
    match mode {
        Mode::Exact => {
            let start = section_point_for_radius(radius);
            let SectionPoint::Exact(mut q) = start.clone() else {
                unreachable!()
            };
            let target = GoldenNumber::rational(num_rational::BigRational::from_integer(r2.into()));
            let mut total = GoldenNumber::zero();
            let mut exact = Vec::new();
            let mut gaps = Vec::new();
            loop {
                let (next, zone) = q.apply()?;
                let rt = q.return_time_exact(zone);
                total += &rt;
                gaps.push(rt.to_f64());
                exact.push(rt);
                match total.cmp(&target) {
                    Ordering::Less => {}
                    Ordering::Equal => break,
                    Ordering::Greater => {
                        return Err(Error::Invariant(format!("orbit of x_R overshot R² at R = {radius}")));
                    }
                }
                q = next;
                if SectionPoint::Exact(q.clone()) == start {
                    return Err(Error::Invariant("orbit of x_R closed before reaching slope 1".into()));
                }
            }
            Ok(GapSample {
                radius,
                method: GapMethod::Bcz,
                count: gaps.len() + 1,
                gaps,
                exact: Some(exact),
            })
        }
        Mode::Float => {
            let start = lattice_point_for_radius(radius);
            let stop = r2 as f64 - 0.5;
            let mut q = start.clone();
            let mut total = 0.0f64;
            let mut comp = 0.0f64;
            let mut gaps = Vec::with_capacity((r2 as f64 * 0.28) as usize);
            loop {
                let (next, zone) = q.apply()?;
                let rt = q.return_time_f64(zone);
                gaps.push(rt);
                // compensated running sum
                let y = rt - comp;
                let t = total + y;
                comp = (t - total) - y;
                total = t;
                if total >= stop {
                    break;
                }
                q = next;
                if q == start {
                    return Err(Error::Invariant("orbit of x_R closed before reaching slope 1".into()));
                }
            }
            Ok(GapSample {
                radius,
                method: GapMethod::Bcz,
                count: gaps.len() + 1,
                gaps,
                exact: None,
            })
        }
    }
}

/// CSV trace `step,a,b,zone,return_time`.
pub fn write_trace_csv<W: Write>(out: &mut W, trace: &OrbitTrace, exact_columns: bool) -> Result<()> {
    if exact_columns {
        writeln!(out, "step,a,b,zone,return_time,a_exact,b_exact")?;
    } else {
        writeln!(out, "step,a,b,zone,return_time")?;
    }
    for (i, ((p, zone), rt)) in trace
        .points
        .iter()
        .zip(&trace.zones)
        .zip(&trace.return_times)
        .enumerate()
    {
        let (a, b) = p.coords_f64();
        write!(
            out,
            "{i},{},{},{zone},{}",
            crate::fmt_f64(a),
            crate::fmt_f64(b),
            crate::fmt_f64(*rt)
        )?;
        if exact_columns {
            match p.coords_exact() {
                Some((ea, eb)) => write!(out, ",{ea},{eb}")?,
                None => write!(out, ",,")?,
            }
        }
        writeln!(out)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(p: i64, q: i64) -> GoldenNumber {
        GoldenNumber::from_ints(p, q)
    }

    fn half() -> GoldenNumber {
        GoldenNumber::from_ratios((1, 2), (0, 1))
    }

    fn ex(a: GoldenNumber, b: GoldenNumber) -> SectionPoint {
        SectionPoint::exact(a, b)
    }

    #[test]
    fn membership_examples() {
        assert!(in_omega(&ex(g(1, 0), g(1, 0))));
        assert!(!in_omega(&ex(g(1, 0), g(1, -1))));
        assert!(in_omega(&ex(GoldenNumber::phi_bar(), half())));
        assert!(in_omega(&SectionPoint::float(PHI_BAR, 0.5)));
        assert!(!in_omega(&SectionPoint::float(1.0, 1.0 - PHI)));
    }

    #[test]
    fn zone_examples() {
        assert_eq!(classify(&ex(g(1, 0), g(1, 0))).unwrap(), Zone::Infinity);
        assert_eq!(classify(&ex(g(1, 0), -half())).unwrap(), Zone::One);
        let tenth = GoldenNumber::from_ratios((1, 10), (0, 1));
        assert_eq!(classify(&ex(GoldenNumber::phi_bar(), tenth)).unwrap(), Zone::Phi);
        assert!(classify(&ex(g(2, 0), g(0, 0))).is_err());
    }

    #[test]
    fn return_time_examples() {
        assert_eq!(return_time_exact(&ex(g(1, 0), g(1, 0))).unwrap().unwrap(), g(1, 0));
        assert_eq!(return_time_exact(&ex(g(1, 0), -half())).unwrap().unwrap(), g(2, 0));
        let tenth = GoldenNumber::from_ratios((1, 10), (0, 1));
        let rt = return_time(&ex(GoldenNumber::phi_bar(), tenth)).unwrap();
        let expected = 1.0 / (PHI_BAR * (PHI_BAR * PHI_BAR + 0.1));
        assert!((rt - expected).abs() < 1e-14);
        assert!((rt - 3.357154).abs() < 1e-6);
    }

    #[test]
    fn normalization_examples() {
        assert_eq!(normalization_k(&g(1, 0), &g(-1, 0)), 1);
        assert_eq!(normalization_k(&g(1, 0), &GoldenNumber::phi_bar()), 0);
        assert_eq!(normalization_k(&half(), &g(2, 0)), -2);
    }

    #[test]
    fn printed_infinity_hint_is_off_by_one_at_the_corner() {
        // printed k∞ at (1, 1) gives 2, membership needs 1
        assert_eq!(printed_normalization_hint(Zone::Infinity, 1.0, 1.0), Some(2));
        let (img, zone) = Point { a: g(1, 0), b: g(1, 0) }.apply().unwrap();
        assert_eq!(zone, Zone::Infinity);
        assert_eq!(
            img,
            Point {
                a: g(1, 0),
                b: g(-1, 1)
            }
        );
        let printed = &g(-1, 0) + &g(0, 2);
        assert_eq!(printed, g(-1, 2));
        assert!(!ex(g(1, 0), printed)
            .coords_exact()
            .map(|(a, b)| Point { a, b }.in_omega())
            .unwrap());
    }

    #[test]
    fn map_examples() {
        let img = apply_map(&ex(g(1, 0), g(1, 0))).unwrap();
        assert_eq!(img, ex(g(1, 0), g(-1, 1)));

        let img = apply_map(&ex(g(1, 0), -half())).unwrap();
        let (a, b) = img.coords_exact().unwrap();
        assert_eq!(a, &half() * &GoldenNumber::phi());
        // b' = 1 − φ/2 + k·φ²/2, here already inside (1 − φ²/2, 1]
        assert_eq!(b, &g(1, 0) - &(&half() * &GoldenNumber::phi()));
        assert!(in_omega(&img));
    }

    #[test]
    fn radius_points() {
        let p = section_point_for_radius(2);
        assert_eq!(p, ex(half(), &half() * &GoldenNumber::phi()));
        let p = section_point_for_radius(10);
        let tenth = GoldenNumber::from_ratios((1, 10), (0, 1));
        assert_eq!(p, ex(tenth.clone(), &tenth * &g(0, 6)));
        for r in [2, 3, 10, 57, 1000] {
            assert!(in_omega(&section_point_for_radius(r)));
        }
    }

    #[test]
    fn exact_and_scaled_orbits_agree() {
        let exact = orbit(&section_point_for_radius(13), 60).unwrap();
        let scaled = orbit(&SectionPoint::Scaled(lattice_point_for_radius(13)), 60).unwrap();
        for (p, q) in exact.points.iter().zip(&scaled.points) {
            assert_eq!(p.coords_exact(), q.coords_exact());
        }
        for (x, y) in exact.return_times.iter().zip(&scaled.return_times) {
            assert!((x - y).abs() <= 4.0 * f64::EPSILON * x, "{x} vs {y}");
        }
    }

    #[test]
    fn empty_orbit() {
        let t = orbit(&section_point_for_radius(5), 0).unwrap();
        assert!(t.points.is_empty() && !t.closed);
    }

    #[test]
    fn corner_point_has_unit_return_time() {
        let t = orbit(&ex(g(1, 0), g(1, 0)), 1).unwrap();
        assert_eq!(t.zones, vec![Zone::Infinity]);
        assert_eq!(t.return_times, vec![1.0]);
    }

    #[test]
    fn float_step_near_boundary_escalates() {
        // b = 1 − aφ + 1e-15 is within the guard band
        let a = 0.3;
        let b = 1.0 - a * PHI + 1e-15;
        let (img, _, rt) = step(&SectionPoint::float(a, b)).unwrap();
        assert!(in_omega(&img));
        assert!(rt >= 1.0);
    }

    #[test]
    fn preimage_inverts_map() {
        for r in [7, 12] {
            let t = orbit(&section_point_for_radius(r), 30).unwrap();
            for w in t.points.windows(2) {
                assert_eq!(preimage(&w[1]).unwrap(), w[0]);
            }
        }
    }

    #[test]
    fn bcz_gaps_match_direct_small() {
        for r in [2, 3, 5, 10] {
            let d = crate::lattice::gaps_direct(r);
            let b = gaps_via_bcz(r, Mode::Exact).unwrap();
            assert_eq!(d.sorted_exact(), b.sorted_exact(), "R = {r}");
            assert_eq!(d.exact, b.exact, "same order too, R = {r}");
        }
    }

    #[test]
    fn trace_csv() {
        let t = orbit(&ex(g(1, 0), g(1, 0)), 1).unwrap();
        let mut buf = Vec::new();
        write_trace_csv(&mut buf, &t, false).unwrap();
        assert_eq!(
            String::from_utf8(buf).unwrap(),
            "step,a,b,zone,return_time\n0,1,1,Zinf,1\n"
        );
    }
}
