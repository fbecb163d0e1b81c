//! Empirical statistics of gap samples and their distance to the limit law.

use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::analytic::gap_pdf;
use crate::bcz::{self, SectionPoint};
use crate::golden::PHI;
use crate::lattice::{GapSample, SlopeSet};
use crate::{fmt_f64, Error, Result};

/// Counts over half-open bins `[e_i, e_{i+1})`; the last bin also takes its
/// right edge.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Histogram {
    edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub total: u64,
    pub below: u64,
    pub above: u64,
}

impl Histogram {
    pub fn new(edges: &[f64]) -> Result<Self> {
        if edges.len() < 2 || !edges.windows(2).all(|w| w[0] < w[1]) || !edges.iter().all(|e| e.is_finite()) {
            return Err(Error::Config(
                "histogram edges must be finite and strictly increasing".into(),
            ));
        }
        Ok(Histogram {
            edges: edges.to_vec(),
            counts: vec![0; edges.len() - 1],
            total: 0,
            below: 0,
            above: 0,
        })
    }

    pub fn uniform(lo: f64, hi: f64, bins: usize) -> Result<Self> {
        if bins == 0 || lo.is_nan() || hi.is_nan() || lo >= hi {
            return Err(Error::Config(format!(
                "bad histogram range [{lo}, {hi}] with {bins} bins"
            )));
        }
        let w = (hi - lo) / bins as f64;
        let edges: Vec<f64> = (0..=bins)
            .map(|i| if i == bins { hi } else { lo + w * i as f64 })
            .collect();
        Histogram::new(&edges)
    }

    pub fn edges(&self) -> &[f64] {
        &self.edges
    }

    pub fn bins(&self) -> usize {
        self.counts.len()
    }

    pub fn add(&mut self, x: f64) {
        self.total += 1;
        let (lo, hi) = (self.edges[0], self.edges[self.edges.len() - 1]);
        if x < lo || x.is_nan() {
            self.below += 1;
        } else if x > hi {
            self.above += 1;
        } else {
            let i = self
                .edges
                .partition_point(|&e| e <= x)
                .saturating_sub(1)
                .min(self.counts.len() - 1);
            self.counts[i] += 1;
        }
    }

    pub fn extend(&mut self, xs: &[f64]) {
        for &x in xs {
            self.add(x);
        }
    }

    /// Counts-additive merge; edges must agree exactly.
    pub fn merge(&self, other: &Histogram) -> Result<Histogram> {
        if self.edges != other.edges {
            return Err(Error::Config("cannot merge histograms with different edges".into()));
        }
        Ok(Histogram {
            edges: self.edges.clone(),
            counts: self.counts.iter().zip(&other.counts).map(|(a, b)| a + b).collect(),
            total: self.total + other.total,
            below: self.below + other.below,
            above: self.above + other.above,
        })
    }

    /// `count / (total · width)`, so out-of-range mass still counts towards
    /// the normalization.
    pub fn density(&self, i: usize) -> f64 {
        let e = &self.edges;
        if self.total == 0 {
            return 0.0;
        }
        self.counts[i] as f64 / (self.total as f64 * (e[i + 1] - e[i]))
    }
}

/// Right-continuous empirical distribution function.
#[derive(Clone, Debug)]
pub struct EmpiricalCdf {
    sorted: Vec<f64>,
}

impl EmpiricalCdf {
    pub fn new(values: &[f64]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptySample);
        }
        if values.iter().any(|v| v.is_nan()) {
            return Err(Error::Invariant("NaN in sample".into()));
        }
        let mut sorted = values.to_vec();
        sorted.par_sort_unstable_by(f64::total_cmp);
        Ok(EmpiricalCdf { sorted })
    }

    pub fn from_sample(sample: &GapSample) -> Result<Self> {
        EmpiricalCdf::new(&sample.gaps)
    }

    pub fn len(&self) -> usize {
        self.sorted.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sorted.is_empty()
    }

    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn eval(&self, x: f64) -> f64 {
        self.sorted.partition_point(|&v| v <= x) as f64 / self.len() as f64
    }

    /// Distinct jump locations with the value just before and at each.
    fn jumps(&self) -> Vec<(f64, f64, f64)> {
        let n = self.len() as f64;
        let mut out = Vec::new();
        let mut i = 0;
        while i < self.sorted.len() {
            let x = self.sorted[i];
            let mut j = i;
            while j < self.sorted.len() && self.sorted[j] == x {
                j += 1;
            }
            out.push((x, i as f64 / n, j as f64 / n));
            i = j;
        }
        out
    }
}

/// Sup-distance between an empirical cdf and `cdf`, checked on both sides of
/// every jump and at the midpoints between jumps.
pub fn ks_distance<F: Fn(f64) -> f64 + Sync>(empirical: &EmpiricalCdf, cdf: F) -> f64 {
    let jumps = empirical.jumps();
    let at_jumps = jumps
        .par_iter()
        .map(|&(x, before, after)| (cdf(x) - after).abs().max((cdf(x.next_down()) - before).abs()))
        .reduce(|| 0.0, f64::max);
    let between = jumps
        .par_windows(2)
        .map(|w| (cdf(0.5 * (w[0].0 + w[1].0)) - w[0].2).abs())
        .reduce(|| 0.0, f64::max);
    at_jumps.max(between)
}

/// KS distance of values in `[0, 1]` from the uniform law.
pub fn uniformity_ks(values: &[f64]) -> Result<f64> {
    let e = EmpiricalCdf::new(values)?;
    Ok(ks_distance(&e, |x| x.clamp(0.0, 1.0)))
}

/// KS distance of a slope set from the uniform law on `[0, 1]`.
pub fn uniformity_test(slopes: &SlopeSet) -> Result<f64> {
    uniformity_ks(&slopes.to_f64())
}

/// Joint super-level query for `h` consecutive return times.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HSpacingQuery {
    pub h: usize,
    pub thresholds: Vec<f64>,
    pub samples: u64,
    pub seed: u64,
}

impl HSpacingQuery {
    pub fn new(thresholds: Vec<f64>, samples: u64, seed: u64) -> Self {
        HSpacingQuery {
            h: thresholds.len(),
            thresholds,
            samples,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.h == 0 || self.thresholds.len() != self.h {
            return Err(Error::Config(format!(
                "h = {} needs exactly h thresholds, got {}",
                self.h,
                self.thresholds.len()
            )));
        }
        if !self.thresholds.iter().all(|t| *t > 0.0 && t.is_finite()) {
            return Err(Error::Config("thresholds must be positive".into()));
        }
        if self.samples < 1000 {
            return Err(Error::Config(format!(
                "at least 1000 samples required, got {}",
                self.samples
            )));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HSpacingResult {
    pub query: HSpacingQuery,
    pub hits: u64,
    pub estimate: f64,
    /// Binomial standard error `√(p(1−p)/n)`.
    pub std_error: f64,
    pub streams: u64,
}

const STREAMS: u64 = 64;

/// A point uniformly distributed on Ω: `a = √u`, `b` uniform on `(1 − aφ, 1]`.
pub fn sample_omega<R: Rng>(rng: &mut R) -> (f64, f64) {
    let a = (1.0 - rng.gen::<f64>()).sqrt();
    let b = 1.0 - a * PHI * rng.gen::<f64>();
    (a, b)
}

/// Stream `i` of the generator seeded with `seed`.
pub fn stream_rng(seed: u64, i: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(i);
    rng
}

/// Monte Carlo estimate of `m{x : R(Tʲx) ≥ t_j, 0 ≤ j < h}`.
///
/// The budget is split over a fixed number of independent streams, so the
/// result does not depend on the thread count.
pub fn h_spacing_mc(q: &HSpacingQuery) -> Result<HSpacingResult> {
    q.validate()?;
    let hits = (0..STREAMS)
        .into_par_iter()
        .map(|s| {
            let n = q.samples / STREAMS + u64::from(s < q.samples % STREAMS);
            let mut rng = stream_rng(q.seed, s);
            let mut hits = 0u64;
            for _ in 0..n {
                let (a, b) = sample_omega(&mut rng);
                let mut p = SectionPoint::float(a, b);
                let mut ok = true;
                for &t in &q.thresholds {
                    let (next, _, rt) = bcz::step(&p)?;
                    if rt < t {
                        ok = false;
                        break;
                    }
                    p = next;
                }
                hits += u64::from(ok);
            }
            Ok(hits)
        })
        .collect::<Result<Vec<u64>>>()?
        .into_iter()
        .sum::<u64>();
    let n = q.samples as f64;
    let p = hits as f64 / n;
    Ok(HSpacingResult {
        query: q.clone(),
        hits,
        estimate: p,
        std_error: (p * (1.0 - p) / n).sqrt(),
        streams: STREAMS,
    })
}

/// Fraction of consecutive windows of `thresholds.len()` gaps with every
/// gap at or above its threshold.
pub fn consecutive_fraction(gaps: &[f64], thresholds: &[f64]) -> Option<f64> {
    let h = thresholds.len();
    if h == 0 || gaps.len() < h {
        return None;
    }
    let hits = gaps
        .par_windows(h)
        .filter(|w| w.iter().zip(thresholds).all(|(g, t)| g >= t))
        .count();
    Some(hits as f64 / (gaps.len() + 1 - h) as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CompareRow {
    pub bin_left: f64,
    pub bin_right: f64,
    pub count: u64,
    pub density: f64,
    pub analytic_pdf_at_midpoint: f64,
}

/// Empirical histogram of a gap sample next to the limiting density.
#[derive(Clone, Debug, Serialize)]
pub struct CompareReport {
    pub radius: u64,
    pub method: crate::lattice::GapMethod,
    pub n_slopes: usize,
    pub n_gaps: usize,
    pub min_gap: f64,
    pub mean_gap: f64,
    pub ks: f64,
    pub alpha_max: f64,
    pub out_of_range: u64,
    #[serde(skip)]
    pub rows: Vec<CompareRow>,
}

pub fn compare(sample: &GapSample, bins: usize, alpha_max: f64) -> Result<CompareReport> {
    let ecdf = EmpiricalCdf::from_sample(sample)?;
    let mut hist = Histogram::uniform(0.0, alpha_max, bins)?;
    hist.extend(&sample.gaps);
    let edges = hist.edges();
    let rows = (0..bins)
        .map(|i| CompareRow {
            bin_left: edges[i],
            bin_right: edges[i + 1],
            count: hist.counts[i],
            density: hist.density(i),
            analytic_pdf_at_midpoint: gap_pdf(0.5 * (edges[i] + edges[i + 1])),
        })
        .collect();
    Ok(CompareReport {
        radius: sample.radius,
        method: sample.method,
        n_slopes: sample.count,
        n_gaps: sample.len(),
        min_gap: ecdf.sorted()[0],
        mean_gap: sample.mean().unwrap_or(f64::NAN),
        ks: ks_distance(&ecdf, crate::analytic::gap_cdf),
        alpha_max,
        out_of_range: hist.below + hist.above,
        rows,
    })
}

pub fn write_compare_csv<W: Write>(mut out: W, rows: &[CompareRow]) -> Result<()> {
    writeln!(out, "bin_left,bin_right,count,density,analytic_pdf_at_midpoint")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{}",
            fmt_f64(r.bin_left),
            fmt_f64(r.bin_right),
            r.count,
            fmt_f64(r.density),
            fmt_f64(r.analytic_pdf_at_midpoint)
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::gap_cdf;
    use proptest::prelude::*;

    #[test]
    fn single_point_cdf() {
        let e = EmpiricalCdf::new(&[2.0]).unwrap();
        assert_eq!(e.eval(1.9), 0.0);
        assert_eq!(e.eval(2.0), 1.0);
        assert!(matches!(EmpiricalCdf::new(&[]), Err(Error::EmptySample)));
    }

    #[test]
    fn ks_of_identical_is_zero() {
        let e = EmpiricalCdf::new(&[1.0, 2.0, 2.0, 5.0]).unwrap();
        assert_eq!(ks_distance(&e, |x| e.eval(x)), 0.0);
    }

    #[test]
    fn two_point_uniformity() {
        assert_eq!(uniformity_ks(&[0.0, 1.0]).unwrap(), 0.5);
    }

    #[test]
    fn ks_against_uniform_grid() {
        let n = 1000;
        let v: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        assert!((uniformity_ks(&v).unwrap() - 0.5 / n as f64).abs() < 1e-12);
    }

    #[test]
    fn histogram_bins_and_density() {
        let mut h = Histogram::uniform(0.0, 2.0, 2).unwrap();
        h.extend(&[0.0, 0.5, 1.0, 2.0, 2.5, -1.0]);
        assert_eq!(h.counts, vec![2, 2]);
        assert_eq!((h.below, h.above, h.total), (1, 1, 6));
        assert!((h.density(0) - 2.0 / 6.0).abs() < 1e-15);
        assert!(h.merge(&Histogram::uniform(0.0, 3.0, 2).unwrap()).is_err());
    }

    proptest! {
        #[test]
        fn merge_is_associative_and_commutative(
            xs in prop::collection::vec(-1.0f64..11.0, 0..50),
            ys in prop::collection::vec(-1.0f64..11.0, 0..50),
            zs in prop::collection::vec(-1.0f64..11.0, 0..50),
        ) {
            let make = |v: &[f64]| { let mut h = Histogram::uniform(0.0, 10.0, 7).unwrap(); h.extend(v); h };
            let (a, b, c) = (make(&xs), make(&ys), make(&zs));
            prop_assert_eq!(a.merge(&b).unwrap().merge(&c).unwrap(), a.merge(&b.merge(&c).unwrap()).unwrap());
            prop_assert_eq!(a.merge(&b).unwrap(), b.merge(&a).unwrap());
            let all: Vec<f64> = xs.iter().chain(&ys).copied().collect();
            prop_assert_eq!(a.merge(&b).unwrap(), make(&all));
            prop_assert_eq!(a.counts.iter().sum::<u64>() + a.below + a.above, a.total);
        }

        #[test]
        fn ecdf_is_monotone_with_range_k_over_n(v in prop::collection::vec(0.0f64..10.0, 1..40), x in -1.0f64..11.0) {
            let e = EmpiricalCdf::new(&v).unwrap();
            let n = v.len() as f64;
            let y = e.eval(x);
            prop_assert!((y * n - (y * n).round()).abs() < 1e-9);
            prop_assert!(e.eval(x + 0.1) >= y);
        }
    }

    #[test]
    fn sampler_stays_in_omega() {
        let mut rng = stream_rng(1, 0);
        for _ in 0..10_000 {
            let (a, b) = sample_omega(&mut rng);
            assert!(bcz::in_omega(&SectionPoint::float(a, b)), "({a}, {b})");
        }
    }

    #[test]
    fn h1_threshold_one_is_certain() {
        let r = h_spacing_mc(&HSpacingQuery::new(vec![1.0], 10_000, 3)).unwrap();
        assert_eq!(r.estimate, 1.0);
    }

    #[test]
    fn h1_matches_survival() {
        let r = h_spacing_mc(&HSpacingQuery::new(vec![3.0], 200_000, 11)).unwrap();
        let expected = 1.0 - gap_cdf(3.0);
        assert!((r.estimate - expected).abs() < 4.0 * r.std_error, "{r:?} vs {expected}");
    }

    #[test]
    fn mc_is_deterministic_and_validated() {
        let q = HSpacingQuery::new(vec![1.5, 1.5], 5_000, 9);
        assert_eq!(h_spacing_mc(&q).unwrap(), h_spacing_mc(&q).unwrap());
        assert!(h_spacing_mc(&HSpacingQuery::new(vec![1.5], 10, 9)).is_err());
        assert!(h_spacing_mc(&HSpacingQuery::new(vec![-1.0], 5_000, 9)).is_err());
    }

    #[test]
    fn consecutive_windows() {
        let g = [2.0, 1.0, 2.0, 2.0];
        assert_eq!(consecutive_fraction(&g, &[1.5, 1.5]), Some(1.0 / 3.0));
        assert_eq!(consecutive_fraction(&g, &[1.5]), Some(0.75));
    }

    #[test]
    fn compare_small_radius() {
        let s = crate::lattice::gaps_direct_f64(30);
        let rep = compare(&s, 20, 10.0).unwrap();
        assert_eq!(rep.rows.len(), 20);
        assert!(rep.min_gap >= 1.0 - 1e-12);
        let mut buf = Vec::new();
        write_compare_csv(&mut buf, &rep.rows).unwrap();
        assert!(String::from_utf8(buf)
            .unwrap()
            .starts_with("bin_left,bin_right,count,density,analytic_pdf_at_midpoint\n0,0.5,0,0,0\n"));
    }
}
