//! Exact integer and real-quadratic-field arithmetic.
//!
//! Rationals are `num_rational::BigRational` (always kept in lowest terms with a
//! positive denominator). [`QuadraticNumber`] represents `p + q·√D` for a fixed
//! non-square radicand `D`, which is all the K3 computation ever needs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

pub use num_rational::BigRational;

/// Floor of the square root of a non-negative big integer.
pub fn isqrt(n: &BigInt) -> Result<BigInt> {
    match n.sign() {
        Sign::Minus => Err(Error::NegativeSqrt(n.clone())),
        _ => Ok(BigInt::from(isqrt_unsigned(n.magnitude()))),
    }
}

/// Newton iteration from above; the result is checked against `r² ≤ n < (r+1)²`.
pub fn isqrt_unsigned(n: &BigUint) -> BigUint {
    if n.is_zero() {
        return BigUint::zero();
    }
    // Start at a power of two that is >= sqrt(n).
    let bits = n.bits();
    let mut x = BigUint::one() << bits.div_ceil(2);
    loop {
        let y = (&x + n / &x) >> 1u32;
        if y >= x {
            break;
        }
        x = y;
    }
    debug_assert!(&x * &x <= *n && (&x + 1u32) * (&x + 1u32) > *n);
    x
}

pub fn is_perfect_square(n: &BigUint) -> bool {
    let r = isqrt_unsigned(n);
    &r * &r == *n
}

/// Binomial coefficient with the convention `binomial(n, k) = 0` whenever `n < k`
/// (in particular for every negative `n`).
pub fn binomial(n: i64, k: u32) -> BigUint {
    if n < 0 || (n as u64) < k as u64 {
        return BigUint::zero();
    }
    let n = n as u64;
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `"num/den"`, always with an explicit denominator.
pub fn fraction_string(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

/// Accepts `"num/den"` or a bare integer.
pub fn parse_fraction(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidFraction(s.to_string());
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Decimal rendering of a rational, truncated toward zero after `digits` places.
pub fn rational_decimal(r: &BigRational, digits: usize) -> String {
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (r.numer().abs() * &scale) / r.denom();
    render_scaled(r.is_negative(), &BigUint::try_from(scaled).unwrap_or_default(), digits)
}

fn render_scaled(negative: bool, scaled: &BigUint, digits: usize) -> String {
    let mut s = scaled.to_str_radix(10);
    if s.len() <= digits {
        s = format!("{}{}", "0".repeat(digits + 1 - s.len()), s);
    }
    let (int, frac) = s.split_at(s.len() - digits);
    let sign = if negative && scaled.bits() > 0 { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// An element `p + q·√D` of the real quadratic field ℚ(√D).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QuadraticNumber {
    rational: BigRational,
    radical: BigRational,
    radicand: u64,
}

impl QuadraticNumber {
    pub fn new(rational: BigRational, radical: BigRational, radicand: u64) -> Result<Self> {
        if radicand == 0 || is_perfect_square(&BigUint::from(radicand)) {
            return Err(Error::InvalidRadicand(radicand));
        }
        Ok(QuadraticNumber { rational, radical, radicand })
    }

    pub fn from_rational(rational: BigRational, radicand: u64) -> Result<Self> {
        Self::new(rational, BigRational::zero(), radicand)
    }

    /// `√D` itself.
    pub fn sqrt(radicand: u64) -> Result<Self> {
        Self::new(BigRational::zero(), BigRational::one(), radicand)
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn radical_part(&self) -> &BigRational {
        &self.radical
    }

    pub fn radicand(&self) -> u64 {
        self.radicand
    }

    pub fn is_rational(&self) -> bool {
        self.radical.is_zero()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.radicand == other.radicand {
            Ok(())
        } else {
            Err(Error::RadicandMismatch(self.radicand, other.radicand))
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(QuadraticNumber {
            rational: &self.rational + &other.rational,
            radical: &self.radical + &other.radical,
            radicand: self.radicand,
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.try_add(&-other)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        Ok(QuadraticNumber {
            rational: &self.rational * &other.rational + &self.radical * &other.radical * d,
            radical: &self.rational * &other.radical + &self.radical * &other.rational,
            radicand: self.radicand,
        })
    }

    pub fn scale(&self, factor: &BigRational) -> Self {
        QuadraticNumber {
            rational: &self.rational * factor,
            radical: &self.radical * factor,
            radicand: self.radicand,
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = QuadraticNumber {
            rational: BigRational::one(),
            radical: BigRational::zero(),
            radicand: self.radicand,
        };
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Sign of the real number, decided without leaving exact arithmetic.
    pub fn signum(&self) -> Ordering {
        let p = self.rational.cmp(&BigRational::zero());
        let q = self.radical.cmp(&BigRational::zero());
        if q == Ordering::Equal || p == q {
            return if p == Ordering::Equal { q } else { p };
        }
        if p == Ordering::Equal {
            return q;
        }
        // Opposite signs: whichever of p² and q²D is larger wins. They cannot be
        // equal because D is not a square.
        let d = BigRational::from_integer(BigInt::from(self.radicand));
        let p2 = &self.rational * &self.rational;
        let q2d = &self.radical * &self.radical * d;
        if p2 > q2d {
            p
        } else {
            q
        }
    }

    /// Decimal expansion truncated toward zero after `digits` places. Display only.
    pub fn to_decimal(&self, digits: usize) -> String {
        let negative = self.signum() == Ordering::Less;
        let v = if negative { -self } else { self.clone() };
        // floor(v · 10^digits) with v ≥ 0, computed as floor((A ± √X) / M).
        let scale = BigInt::from(10u32).pow(digits as u32);
        let (pn, pd) = (v.rational.numer(), v.rational.denom());
        let (qn, qd) = (v.radical.numer(), v.radical.denom());
        let m = pd * qd;
        let a = pn * qd * &scale;
        let x = qn * qn * pd * pd * BigInt::from(v.radicand) * &scale * &scale;
        let t = isqrt(&x).expect("square is non-negative");
        let numerator = if qn.is_negative() {
            if &t * &t == x {
                a - t
            } else {
                a - t - 1
            }
        } else {
            a + t
        };
        let floor = numerator.div_floor(&m);
        render_scaled(negative, &BigUint::try_from(floor).unwrap_or_default(), digits)
    }

    pub fn to_f64(&self) -> f64 {
        self.rational.to_f64().unwrap_or(f64::NAN)
            + self.radical.to_f64().unwrap_or(f64::NAN) * (self.radicand as f64).sqrt()
    }
}

/// Exact ordering of two elements of the same quadratic field.
pub fn quad_compare(x: &QuadraticNumber, y: &QuadraticNumber) -> Result<Ordering> {
    Ok(x.try_sub(y)?.signum())
}

impl Neg for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        QuadraticNumber {
            rational: -&self.rational,
            radical: -&self.radical,
            radicand: self.radicand,
        }
    }
}

impl Neg for QuadraticNumber {
    type Output = QuadraticNumber;
    fn neg(self) -> QuadraticNumber {
        -&self
    }
}

// Operator forms panic on radicand mismatch; use the `try_*` methods when the
// radicands are not known to agree.
impl Add for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn add(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self.try_add(rhs).expect("radicands must match")
    }
}

impl Sub for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn sub(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self.try_sub(rhs).expect("radicands must match")
    }
}

impl Mul for &QuadraticNumber {
    type Output = QuadraticNumber;
    fn mul(self, rhs: &QuadraticNumber) -> QuadraticNumber {
        self.try_mul(rhs).expect("radicands must match")
    }
}

impl fmt::Display for QuadraticNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} + ({})·√{}", self.rational, self.radical, self.radicand)
    }
}

#[derive(Serialize, Deserialize)]
struct QuadraticRepr {
    p: String,
    q: String,
    #[serde(rename = "D")]
    d: u64,
}

impl Serialize for QuadraticNumber {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        QuadraticRepr {
            p: fraction_string(&self.rational),
            q: fraction_string(&self.radical),
            d: self.radicand,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for QuadraticNumber {
    fn deserialize<De: Deserializer<'de>>(deserializer: De) -> std::result::Result<Self, De::Error> {
        use serde::de::Error as _;
        let repr = QuadraticRepr::deserialize(deserializer)?;
        let p = parse_fraction(&repr.p).map_err(De::Error::custom)?;
        let q = parse_fraction(&repr.q).map_err(De::Error::custom)?;
        QuadraticNumber::new(p, q, repr.d).map_err(De::Error::custom)
    }
}
