use std::fmt;
use std::ops::Mul;

use super::number::GoldenNumber;

/// A holonomy vector with coordinates in Q(φ).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenVector {
    pub re: GoldenNumber,
    pub im: GoldenNumber,
}

impl GoldenVector {
    pub fn new(re: GoldenNumber, im: GoldenNumber) -> Self {
        GoldenVector { re, im }
    }

    pub fn from_ints(re: (i64, i64), im: (i64, i64)) -> Self {
        GoldenVector::new(GoldenNumber::from_ints(re.0, re.1), GoldenNumber::from_ints(im.0, im.1))
    }

    /// `im / re`, undefined for vertical vectors.
    pub fn slope(&self) -> Option<GoldenNumber> {
        self.re.inv().ok().map(|r| &self.im * &r)
    }

    pub fn norm_sqr(&self) -> GoldenNumber {
        &self.re * &self.re + &self.im * &self.im
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (self.re.to_f64(), self.im.to_f64())
    }
}

impl fmt::Display for GoldenVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.re, self.im)
    }
}

/// A 2×2 matrix over Q(φ), row-major.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct GoldenMatrix {
    pub m: [[GoldenNumber; 2]; 2],
}

impl GoldenMatrix {
    pub fn new(a: GoldenNumber, b: GoldenNumber, c: GoldenNumber, d: GoldenNumber) -> Self {
        GoldenMatrix { m: [[a, b], [c, d]] }
    }

    pub fn from_ints(rows: [[(i64, i64); 2]; 2]) -> Self {
        let e = |(p, q): (i64, i64)| GoldenNumber::from_ints(p, q);
        GoldenMatrix::new(e(rows[0][0]), e(rows[0][1]), e(rows[1][0]), e(rows[1][1]))
    }

    pub fn identity() -> Self {
        GoldenMatrix::from_ints([[(1, 0), (0, 0)], [(0, 0), (1, 0)]])
    }

    pub fn det(&self) -> GoldenNumber {
        &self.m[0][0] * &self.m[1][1] - &self.m[0][1] * &self.m[1][0]
    }

    pub fn neg(&self) -> Self {
        let [[a, b], [c, d]] = &self.m;
        GoldenMatrix::new(-a, -b, -c, -d)
    }

    /// Inverse of a determinant-one matrix.
    pub fn inverse_unimodular(&self) -> Option<Self> {
        if self.det() != GoldenNumber::one() {
            return None;
        }
        let [[a, b], [c, d]] = &self.m;
        Some(GoldenMatrix::new(d.clone(), -b, -c, a.clone()))
    }

    pub fn apply(&self, v: &GoldenVector) -> GoldenVector {
        let [[a, b], [c, d]] = &self.m;
        GoldenVector::new(a * &v.re + b * &v.im, c * &v.re + d * &v.im)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GoldenMatrix::identity();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl<'a> Mul<&'a GoldenMatrix> for &'a GoldenMatrix {
    type Output = GoldenMatrix;
    fn mul(self, rhs: &GoldenMatrix) -> GoldenMatrix {
        let (a, b) = (&self.m, &rhs.m);
        let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
        GoldenMatrix::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

impl<'a> Mul<&'a GoldenVector> for &'a GoldenMatrix {
    type Output = GoldenVector;
    fn mul(self, v: &GoldenVector) -> GoldenVector {
        self.apply(v)
    }
}
