//! Saddle connection holonomies of the golden L and their slope sets.
//!
//! The vector set is the Veech group orbit `Γ·(1, 0)`; only the sector
//! `0 ≤ Im ≤ Re ≤ R` matters for slope statistics. Two enumerations are
//! provided:
//!
//! * [`enumerate_vectors`] runs a breadth-first search over the orbit under
//!   the generators `S = [[0,−1],[1,0]]`, `P = [[1,φ],[0,1]]` and their
//!   inverses, pruned at Euclidean norm `2φ·R`, then filters the sector.
//! * [`enumerate_vectors_by_descent`] walks a rooted tree inside the sector.
//!   Every sector vector `(x, y)` with `y > 0` has the parent obtained by
//!   shearing to `(|x − φy|, y)` and sorting the coordinates; the parent is
//!   strictly shorter and the root is `(1, 0)`. Children strictly grow in
//!   `Re`, so pruning at `Re ≤ R` visits exactly the sector vectors.
//!
//! Slope sets are built from the descent tree (cost proportional to the
//! output); the breadth-first search serves as its cross-check.

use std::cmp::Ordering;
use std::collections::HashSet;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::golden::{GoldenInt, GoldenMatrix, GoldenNumber, GoldenVector};

/// Safety factor on the breadth-first pruning radius.
pub const BFS_PRUNING_FACTOR: f64 = 2.0 * crate::golden::PHI;

/// The generators `S`, `S⁻¹`, `P`, `P⁻¹` of the (2,5,∞) Hecke group.
pub fn veech_generators() -> Vec<GoldenMatrix> {
    let s = GoldenMatrix::from_ints([[(0, 0), (-1, 0)], [(1, 0), (0, 0)]]);
    let p = GoldenMatrix::from_ints([[(1, 0), (0, 1)], [(0, 0), (1, 0)]]);
    let s_inv = s.inverse_unimodular().expect("S has determinant 1");
    let p_inv = p.inverse_unimodular().expect("P has determinant 1");
    vec![s, s_inv, p, p_inv]
}

/// A lattice vector with Z[φ] coordinates.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct LatticeVector {
    pub re: GoldenInt,
    pub im: GoldenInt,
}

impl LatticeVector {
    pub const fn new(re: GoldenInt, im: GoldenInt) -> Self {
        LatticeVector { re, im }
    }

    pub fn to_golden(&self) -> GoldenVector {
        GoldenVector::new(self.re.to_golden(), self.im.to_golden())
    }

    fn norm_sqr_f64(&self) -> f64 {
        let (x, y) = (self.re.to_f64(), self.im.to_f64());
        x * x + y * y
    }

    fn in_sector(&self, rmax: GoldenInt) -> bool {
        !self.im.is_negative() && self.im <= self.re && self.re <= rmax && self.re.is_positive()
    }

    pub fn slope(&self) -> Slope {
        Slope {
            rise: self.im,
            run: self.re,
        }
    }
}

/// The integer generators acting on Z[φ]²: S, S⁻¹, P, P⁻¹.
fn step_all(v: LatticeVector) -> [LatticeVector; 4] {
    let LatticeVector { re: x, im: y } = v;
    [
        LatticeVector::new(-y, x),
        LatticeVector::new(y, -x),
        LatticeVector::new(x + y.mul_phi(), y),
        LatticeVector::new(x - y.mul_phi(), y),
    ]
}

/// Breadth-first enumeration of `Γ·(1,0)` inside `0 ≤ Im ≤ Re ≤ rmax`.
///
/// The frontier is expanded in parallel; the visited set is merged
/// sequentially between layers, so the result does not depend on the
/// schedule. Output is sorted by slope, then by length.
pub fn enumerate_vectors(rmax: u64) -> Vec<GoldenVector> {
    enumerate_lattice_bfs(rmax, BFS_PRUNING_FACTOR)
        .into_iter()
        .map(|v| v.to_golden())
        .collect()
}

pub fn enumerate_lattice_bfs(rmax: u64, pruning_factor: f64) -> Vec<LatticeVector> {
    let bound = pruning_factor * rmax as f64;
    let bound_sqr = bound * bound;
    let root = LatticeVector::new(GoldenInt::ONE, GoldenInt::ZERO);
    let mut visited: HashSet<LatticeVector> = HashSet::from([root]);
    let mut frontier = vec![root];
    while !frontier.is_empty() {
        let candidates: Vec<LatticeVector> = frontier
            .par_iter()
            .flat_map_iter(|&v| step_all(v))
            .filter(|w| w.norm_sqr_f64() <= bound_sqr)
            .collect();
        frontier = candidates.into_iter().filter(|w| visited.insert(*w)).collect();
    }
    let rmax = GoldenInt::integer(rmax as i128);
    let mut out: Vec<LatticeVector> = visited.into_iter().filter(|v| v.in_sector(rmax)).collect();
    sort_by_slope(&mut out);
    out
}

/// Enumeration of the same set by the sector descent tree.
pub fn enumerate_vectors_by_descent(rmax: u64) -> Vec<LatticeVector> {
    let mut out = Vec::new();
    descend(rmax, |v| out.push(v));
    sort_by_slope(&mut out);
    out
}

/// Calls `visit` once for every sector vector with `Re ≤ rmax`, depth first.
pub fn descend<F: FnMut(LatticeVector)>(rmax: u64, mut visit: F) {
    let rmax = GoldenInt::integer(rmax as i128);
    if GoldenInt::ONE > rmax {
        return;
    }
    let mut stack = vec![LatticeVector::new(GoldenInt::ONE, GoldenInt::ZERO)];
    while let Some(v) = stack.pop() {
        visit(v);
        let (x, y) = (v.re, v.im);
        let mut push = |w: LatticeVector| {
            if w.re <= rmax {
                stack.push(w);
            }
        };
        // (φx + y, x): shear residue y, swapped
        push(LatticeVector::new(x.mul_phi() + y, x));
        // (φx − y, x): negative residue; needs y ≤ φ̄x, and y = 0 duplicates the above
        if y.is_positive() && y <= GoldenInt::PHI_BAR * x {
            push(LatticeVector::new(x.mul_phi() - y, x));
        }
        // (x + φy, y): unswapped; coincides with the first child when x = y
        if y.is_positive() && x != y {
            push(LatticeVector::new(x + y.mul_phi(), y));
        }
    }
}

/// Sorted slopes as doubles, without materializing the vectors. Distinct
/// orbit vectors in the sector are never parallel, so this has `N(R)`
/// entries.
pub fn slope_values_f64(rmax: u64) -> Vec<f64> {
    let mut out = Vec::new();
    descend(rmax, |v| out.push(v.im.to_f64() / v.re.to_f64()));
    out.par_sort_unstable_by(f64::total_cmp);
    out
}

fn sort_by_slope(v: &mut [LatticeVector]) {
    v.sort_unstable_by(|a, b| a.slope().cmp(&b.slope()).then_with(|| a.re.cmp(&b.re)));
}

/// An exact slope `rise / run` with `run > 0`, ordered by value.
#[derive(Clone, Copy, Debug)]
pub struct Slope {
    pub rise: GoldenInt,
    pub run: GoldenInt,
}

impl Slope {
    pub fn value(&self) -> GoldenNumber {
        &self.rise.to_golden() / &self.run.to_golden()
    }

    pub fn to_f64(&self) -> f64 {
        self.rise.to_f64() / self.run.to_f64()
    }
}

impl PartialEq for Slope {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Slope {}

impl PartialOrd for Slope {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Slope {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.rise * other.run).cmp(&(other.rise * self.run))
    }
}

/// The sorted slope set of sector vectors with `Re ≤ radius`.
#[derive(Clone, Debug)]
pub struct SlopeSet {
    pub radius: u64,
    pub slopes: Vec<Slope>,
}

impl SlopeSet {
    /// `N(R)`, the number of distinct slopes.
    pub fn count(&self) -> usize {
        self.slopes.len()
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.slopes.iter().map(Slope::to_f64).collect()
    }

    pub fn exact(&self) -> Vec<GoldenNumber> {
        self.slopes.iter().map(Slope::value).collect()
    }
}

pub fn slopes(rmax: u64) -> SlopeSet {
    let vectors = enumerate_vectors_by_descent(rmax);
    let mut slopes: Vec<Slope> = vectors.iter().map(LatticeVector::slope).collect();
    slopes.dedup();
    SlopeSet { radius: rmax, slopes }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum GapMethod {
    Direct,
    Bcz,
}

/// Scaled consecutive slope differences `R²(s_{i+1} − s_i)`.
#[derive(Clone, Debug)]
pub struct GapSample {
    pub radius: u64,
    pub method: GapMethod,
    /// `N(R)`; there are `count − 1` gaps.
    pub count: usize,
    pub gaps: Vec<f64>,
    /// Exact gaps, when the producing method kept them.
    pub exact: Option<Vec<GoldenNumber>>,
}

impl GapSample {
    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn min(&self) -> Option<f64> {
        self.gaps.iter().copied().reduce(f64::min)
    }

    pub fn mean(&self) -> Option<f64> {
        if self.gaps.is_empty() {
            return None;
        }
        Some(self.gaps.iter().sum::<f64>() / self.gaps.len() as f64)
    }

    /// The exact gaps in ascending order.
    pub fn sorted_exact(&self) -> Option<Vec<GoldenNumber>> {
        self.exact.as_ref().map(|g| {
            let mut g = g.clone();
            g.sort();
            g
        })
    }
}

/// Gap set from the direct enumeration, with exact values.
pub fn gaps_direct(rmax: u64) -> GapSample {
    let set = slopes(rmax);
    let r2 = GoldenInt::integer((rmax as i128) * (rmax as i128));
    let r2f = (rmax as f64) * (rmax as f64);
    let (gaps, exact): (Vec<f64>, Vec<GoldenNumber>) = set
        .slopes
        .par_windows(2)
        .map(|w| {
            let (s, t) = (w[0], w[1]);
            let num = t.rise * s.run - s.rise * t.run;
            let den = s.run * t.run;
            let exact = &(num * r2).to_golden() / &den.to_golden();
            (r2f * num.to_f64() / den.to_f64(), exact)
        })
        .unzip();
    GapSample {
        radius: rmax,
        method: GapMethod::Direct,
        count: set.count(),
        gaps,
        exact: Some(exact),
    }
}

/// Gap set from the direct enumeration, floating point only.
pub fn gaps_direct_f64(rmax: u64) -> GapSample {
    let set = slopes(rmax);
    let r2f = (rmax as f64) * (rmax as f64);
    let gaps = set
        .slopes
        .windows(2)
        .map(|w| {
            let (s, t) = (w[0], w[1]);
            r2f * (t.rise * s.run - s.rise * t.run).to_f64() / (s.run * t.run).to_f64()
        })
        .collect();
    GapSample {
        radius: rmax,
        method: GapMethod::Direct,
        count: set.count(),
        gaps,
        exact: None,
    }
}

/// CSV rows `re_exact,im_exact,re_float,im_float,slope_float`.
pub fn write_vectors_csv<W: Write>(out: &mut W, vectors: &[GoldenVector]) -> std::io::Result<()> {
    writeln!(out, "re_exact,im_exact,re_float,im_float,slope_float")?;
    for v in vectors {
        let (x, y) = v.to_f64();
        let slope = v.slope().map(|s| s.to_f64()).unwrap_or(f64::INFINITY);
        writeln!(
            out,
            "{},{},{},{},{}",
            v.re,
            v.im,
            crate::fmt_f64(x),
            crate::fmt_f64(y),
            crate::fmt_f64(slope)
        )?;
    }
    Ok(())
}
