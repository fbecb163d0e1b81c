use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;

use super::number::{bigint_sign, GoldenNumber};

const PHI_HI: f64 = 1.618_033_988_749_895;
const PHI_LO: f64 = -5.432_115_203_682_506e-17;

/// An element `p + q·φ` of the ring Z[φ] with machine-word coefficients.
///
/// Every holonomy vector of the golden L and every entry of its Veech group
/// lives in Z[φ], so this is the fast exact type for enumeration and orbit
/// iteration. Arithmetic is checked: an overflow panics instead of wrapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct GoldenInt {
    pub p: i128,
    pub q: i128,
}

#[track_caller]
fn ck(x: Option<i128>) -> i128 {
    x.expect("Z[phi] coefficient overflow")
}

impl GoldenInt {
    pub const ZERO: GoldenInt = GoldenInt { p: 0, q: 0 };
    pub const ONE: GoldenInt = GoldenInt { p: 1, q: 0 };
    pub const PHI: GoldenInt = GoldenInt { p: 0, q: 1 };
    pub const PHI_BAR: GoldenInt = GoldenInt { p: -1, q: 1 };

    pub const fn new(p: i128, q: i128) -> Self {
        GoldenInt { p, q }
    }

    pub const fn integer(n: i128) -> Self {
        GoldenInt { p: n, q: 0 }
    }

    pub fn is_zero(&self) -> bool {
        self.p == 0 && self.q == 0
    }

    pub fn mul_phi(self) -> Self {
        GoldenInt::new(self.q, ck(self.p.checked_add(self.q)))
    }

    pub fn mul_int(self, k: i128) -> Self {
        GoldenInt::new(ck(self.p.checked_mul(k)), ck(self.q.checked_mul(k)))
    }

    pub fn sign(&self) -> Ordering {
        let u = self.p.checked_mul(2).and_then(|x| x.checked_add(self.q));
        let v = self.q;
        match u {
            Some(u) => {
                let (su, sv) = (u.cmp(&0), v.cmp(&0));
                match (su, sv) {
                    (Ordering::Equal, s) | (s, Ordering::Equal) => s,
                    (a, b) if a == b => a,
                    _ => match (u.checked_mul(u), v.checked_mul(v).and_then(|w| w.checked_mul(5))) {
                        (Some(u2), Some(v2)) => match u2.cmp(&v2) {
                            Ordering::Greater => su,
                            Ordering::Less => sv,
                            Ordering::Equal => Ordering::Equal,
                        },
                        _ => self.sign_big(),
                    },
                }
            }
            None => self.sign_big(),
        }
    }

    fn sign_big(&self) -> Ordering {
        let u = BigInt::from(self.p) * 2 + BigInt::from(self.q);
        let v = BigInt::from(self.q);
        let (su, sv) = (bigint_sign(&u), bigint_sign(&v));
        match (su, sv) {
            (Ordering::Equal, s) | (s, Ordering::Equal) => s,
            (a, b) if a == b => a,
            _ => match (&u * &u).cmp(&(&v * &v * 5)) {
                Ordering::Greater => su,
                Ordering::Less => sv,
                Ordering::Equal => Ordering::Equal,
            },
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    /// Real value, accurate to a few ulps even under heavy cancellation
    /// between the two coefficients.
    pub fn to_f64(&self) -> f64 {
        const EXACT: i128 = 1 << 53;
        if self.p.abs() >= EXACT || self.q.abs() >= EXACT {
            return self.to_golden().to_f64();
        }
        let (p, q) = (self.p as f64, self.q as f64);
        let hi = q * PHI_HI;
        let lo = q.mul_add(PHI_HI, -hi) + q * PHI_LO;
        // two-sum of p and hi
        let s = p + hi;
        let bb = s - p;
        let err = (p - (s - bb)) + (hi - bb);
        s + (err + lo)
    }

    pub fn to_golden(&self) -> GoldenNumber {
        GoldenNumber::new(
            BigRational::from_integer(self.p.into()),
            BigRational::from_integer(self.q.into()),
        )
    }
}

impl Add for GoldenInt {
    type Output = GoldenInt;
    #[track_caller]
    fn add(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt::new(ck(self.p.checked_add(rhs.p)), ck(self.q.checked_add(rhs.q)))
    }
}

impl Sub for GoldenInt {
    type Output = GoldenInt;
    #[track_caller]
    fn sub(self, rhs: GoldenInt) -> GoldenInt {
        GoldenInt::new(ck(self.p.checked_sub(rhs.p)), ck(self.q.checked_sub(rhs.q)))
    }
}

impl Mul for GoldenInt {
    type Output = GoldenInt;
    #[track_caller]
    fn mul(self, rhs: GoldenInt) -> GoldenInt {
        let bd = ck(self.q.checked_mul(rhs.q));
        let p = ck(ck(self.p.checked_mul(rhs.p)).checked_add(bd));
        let q = ck(ck(ck(self.p.checked_mul(rhs.q)).checked_add(ck(self.q.checked_mul(rhs.p)))).checked_add(bd));
        GoldenInt::new(p, q)
    }
}

impl Neg for GoldenInt {
    type Output = GoldenInt;
    fn neg(self) -> GoldenInt {
        GoldenInt::new(-self.p, -self.q)
    }
}

impl PartialOrd for GoldenInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenInt {
    fn cmp(&self, other: &Self) -> Ordering {
        (*self - *other).sign()
    }
}

impl fmt::Debug for GoldenInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}φ", self.p, self.q)
    }
}

impl From<GoldenInt> for GoldenNumber {
    fn from(x: GoldenInt) -> GoldenNumber {
        x.to_golden()
    }
}
