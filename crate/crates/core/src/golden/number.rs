use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign as BigSign};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// An element `p + q·φ` of the golden field Q(φ), with `φ² = φ + 1`.
///
/// Both coefficients are reduced arbitrary-precision rationals, so the
/// representation is canonical and structural equality is field equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GoldenNumber {
    p: BigRational,
    q: BigRational,
}

impl GoldenNumber {
    pub fn new(p: BigRational, q: BigRational) -> Self {
        GoldenNumber { p, q }
    }

    pub fn from_ints(p: i64, q: i64) -> Self {
        GoldenNumber::new(BigRational::from_integer(p.into()), BigRational::from_integer(q.into()))
    }

    pub fn from_ratios(p: (i64, i64), q: (i64, i64)) -> Self {
        GoldenNumber::new(
            BigRational::new(p.0.into(), p.1.into()),
            BigRational::new(q.0.into(), q.1.into()),
        )
    }

    pub fn rational(r: BigRational) -> Self {
        GoldenNumber::new(r, BigRational::zero())
    }

    pub fn integer(n: i64) -> Self {
        GoldenNumber::from_ints(n, 0)
    }

    pub fn zero() -> Self {
        GoldenNumber::from_ints(0, 0)
    }

    pub fn one() -> Self {
        GoldenNumber::from_ints(1, 0)
    }

    /// φ = (1 + √5)/2.
    pub fn phi() -> Self {
        GoldenNumber::from_ints(0, 1)
    }

    /// φ̄ = 1/φ = φ − 1.
    pub fn phi_bar() -> Self {
        GoldenNumber::from_ints(-1, 1)
    }

    /// The exact dyadic value of a finite double.
    pub fn from_f64(x: f64) -> Option<Self> {
        BigRational::from_float(x).map(GoldenNumber::rational)
    }

    pub fn p(&self) -> &BigRational {
        &self.p
    }

    pub fn q(&self) -> &BigRational {
        &self.q
    }

    pub fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    /// Galois conjugate `p + q·(1 − φ)`.
    pub fn conjugate(&self) -> Self {
        GoldenNumber::new(&self.p + &self.q, -self.q.clone())
    }

    /// Field norm `x·x̄ = p² + pq − q²`, a rational.
    pub fn norm(&self) -> BigRational {
        &self.p * &self.p + &self.p * &self.q - &self.q * &self.q
    }

    pub fn inv(&self) -> Result<Self> {
        let n = self.norm();
        if n.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let c = self.conjugate();
        Ok(GoldenNumber::new(c.p / &n, c.q / n))
    }

    /// Sign of the real embedding, decided without floating point.
    pub fn sign(&self) -> Ordering {
        // p + qφ = (u + v√5)/2 with u = 2p + q, v = q.
        let u = &self.p + &self.p + &self.q;
        let v = &self.q;
        sign_of_sum_with_sqrt5(&u, v)
    }

    pub fn signum(&self) -> i32 {
        match self.sign() {
            Ordering::Less => -1,
            Ordering::Equal => 0,
            Ordering::Greater => 1,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.sign() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.sign() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    pub fn mul_int(&self, k: i64) -> Self {
        let k = BigRational::from_integer(k.into());
        GoldenNumber::new(&self.p * &k, &self.q * &k)
    }

    pub fn mul_phi(&self) -> Self {
        // (p + qφ)φ = q + (p + q)φ
        GoldenNumber::new(self.q.clone(), &self.p + &self.q)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = GoldenNumber::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Greatest integer `≤ self`.
    pub fn floor(&self) -> BigInt {
        let approx = self.to_real(64);
        let mut k = approx.floor().to_integer();
        // the approximation is within 2^-64 relative; settle the boundary exactly
        loop {
            let kk = GoldenNumber::rational(BigRational::from_integer(k.clone()));
            if (self - &kk).is_negative() {
                k -= 1;
                continue;
            }
            let next = GoldenNumber::rational(BigRational::from_integer(&k + 1));
            if !(self - &next).is_negative() {
                k += 1;
                continue;
            }
            return k;
        }
    }

    /// A rational approximation with relative error below `2^-precision`.
    ///
    /// Exact when `q = 0`.
    pub fn to_real(&self, precision: u32) -> BigRational {
        let precision = precision.max(53);
        if self.q.is_zero() {
            return self.p.clone();
        }
        if self.is_zero() {
            return BigRational::zero();
        }
        // value = p + q/2 + (q/2)·√5; approximate √5 by isqrt(5·4^k)/2^k,
        // which is within 2^-k below √5.
        let half_q = &self.q / BigRational::from_integer(2.into());
        let base = &self.p + &half_q;
        let mut k = precision as u64 + 16;
        loop {
            let scale = BigInt::one() << k;
            let sqrt5 = BigRational::new(sqrt5_scaled(k), scale.clone());
            let value = &base + &half_q * sqrt5;
            let err = half_q.abs() / BigRational::from_integer(scale);
            let bound = value.abs() / BigRational::from_integer(BigInt::one() << precision);
            if err < bound {
                return value;
            }
            k *= 2;
        }
    }

    pub fn to_f64(&self) -> f64 {
        if self.q.is_zero() {
            return self.p.to_f64().unwrap_or(f64::NAN);
        }
        self.to_real(80).to_f64().unwrap_or(f64::NAN)
    }
}

/// `⌊√5·2^k⌋`, memoized per thread.
fn sqrt5_scaled(k: u64) -> BigInt {
    use std::cell::RefCell;
    use std::collections::HashMap;
    thread_local! {
        static CACHE: RefCell<HashMap<u64, BigInt>> = RefCell::new(HashMap::new());
    }
    CACHE.with(|c| {
        c.borrow_mut()
            .entry(k)
            .or_insert_with(|| (BigInt::from(5) << (2 * k)).sqrt())
            .clone()
    })
}

/// Sign of `u + v·√5` for rationals `u`, `v`.
fn sign_of_sum_with_sqrt5(u: &BigRational, v: &BigRational) -> Ordering {
    let su = u.cmp(&BigRational::zero());
    let sv = v.cmp(&BigRational::zero());
    match (su, sv) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (a, b) if a == b => a,
        _ => {
            // opposite signs: the larger of u² and 5v² wins
            let u2 = u * u;
            let v2 = v * v * BigRational::from_integer(5.into());
            match u2.cmp(&v2) {
                Ordering::Greater => su,
                Ordering::Less => sv,
                Ordering::Equal => Ordering::Equal,
            }
        }
    }
}

impl PartialOrd for GoldenNumber {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GoldenNumber {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).sign()
    }
}

impl fmt::Debug for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (≈{})", self, self.to_f64())
    }
}

/// Exact text form `p/pd+q/qd*phi`.
impl fmt::Display for GoldenNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let op = if self.q.is_negative() { '-' } else { '+' };
        let q = self.q.abs();
        write!(
            f,
            "{}/{}{}{}/{}*phi",
            self.p.numer(),
            self.p.denom(),
            op,
            q.numer(),
            q.denom()
        )
    }
}

fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(BigRational::new(n, d))
        }
        None => Some(BigRational::from_integer(s.parse().ok()?)),
    }
}

impl FromStr for GoldenNumber {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let err = || Error::Parse(s.to_string());
        let t = s.trim();
        let Some(body) = t.strip_suffix("*phi") else {
            return parse_rational(t).map(GoldenNumber::rational).ok_or_else(err);
        };
        // split at the sign that separates the two coefficients; skip a
        // leading sign and any sign directly after a '/'
        let bytes = body.as_bytes();
        let split = (1..bytes.len())
            .rev()
            .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/')
            .ok_or_else(err)?;
        let p = parse_rational(&body[..split]).ok_or_else(err)?;
        let mut q = parse_rational(&body[split + 1..]).ok_or_else(err)?;
        if bytes[split] == b'-' {
            q = -q;
        }
        Ok(GoldenNumber::new(p, q))
    }
}

impl serde::Serialize for GoldenNumber {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl From<i64> for GoldenNumber {
    fn from(n: i64) -> Self {
        GoldenNumber::integer(n)
    }
}

impl From<BigRational> for GoldenNumber {
    fn from(r: BigRational) -> Self {
        GoldenNumber::rational(r)
    }
}

impl<'a> Add<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn add(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.p + &rhs.p, &self.q + &rhs.q)
    }
}

impl<'a> Sub<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn sub(self, rhs: &GoldenNumber) -> GoldenNumber {
        GoldenNumber::new(&self.p - &rhs.p, &self.q - &rhs.q)
    }
}

impl<'a> Mul<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn mul(self, rhs: &GoldenNumber) -> GoldenNumber {
        // (a + bφ)(c + dφ) = ac + bd + (ad + bc + bd)φ
        let bd = &self.q * &rhs.q;
        GoldenNumber::new(&self.p * &rhs.p + &bd, &self.p * &rhs.q + &self.q * &rhs.p + bd)
    }
}

/// Panics on division by zero; use [`GoldenNumber::inv`] to handle it.
impl<'a> Div<&'a GoldenNumber> for &'a GoldenNumber {
    type Output = GoldenNumber;
    fn div(self, rhs: &GoldenNumber) -> GoldenNumber {
        #[allow(clippy::suspicious_arithmetic_impl)]
        let q = self * &rhs.inv().expect("division by zero in the golden field");
        q
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $m(self, rhs: GoldenNumber) -> GoldenNumber { (&self).$m(&rhs) }
        }
        impl<'a> $tr<&'a GoldenNumber> for GoldenNumber {
            type Output = GoldenNumber;
            fn $m(self, rhs: &GoldenNumber) -> GoldenNumber { (&self).$m(rhs) }
        }
        impl<'a> $tr<GoldenNumber> for &'a GoldenNumber {
            type Output = GoldenNumber;
            fn $m(self, rhs: GoldenNumber) -> GoldenNumber { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Neg for GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        GoldenNumber::new(-self.p, -self.q)
    }
}

impl Neg for &GoldenNumber {
    type Output = GoldenNumber;
    fn neg(self) -> GoldenNumber {
        -self.clone()
    }
}

impl AddAssign<&GoldenNumber> for GoldenNumber {
    fn add_assign(&mut self, rhs: &GoldenNumber) {
        self.p += &rhs.p;
        self.q += &rhs.q;
    }
}

impl SubAssign<&GoldenNumber> for GoldenNumber {
    fn sub_assign(&mut self, rhs: &GoldenNumber) {
        self.p -= &rhs.p;
        self.q -= &rhs.q;
    }
}

pub(crate) fn bigint_sign(x: &BigInt) -> Ordering {
    match x.sign() {
        BigSign::Minus => Ordering::Less,
        BigSign::NoSign => Ordering::Equal,
        BigSign::Plus => Ordering::Greater,
    }
}
