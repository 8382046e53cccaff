//! Exact scalars: arbitrary-precision integers with an `i64` fast path, and
//! rationals in lowest terms when a division actually occurs.

use alloc::string::{String, ToString};
use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// An exact rational number.
///
/// Normal form: `Small` whenever the value is an integer fitting in `i64`,
/// `Big` for other integers, `Ratio` only for non-integers (lowest terms,
/// positive denominator). Derived equality relies on this form being unique.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Scalar(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    Small(i64),
    Big(BigInt),
    Ratio(BigRational),
}

impl Scalar {
    pub const ZERO: Scalar = Scalar(Repr::Small(0));
    pub const ONE: Scalar = Scalar(Repr::Small(1));

    pub fn from_bigint(n: BigInt) -> Self {
        match n.to_i64() {
            Some(v) => Scalar(Repr::Small(v)),
            None => Scalar(Repr::Big(n)),
        }
    }

    fn from_ratio(r: BigRational) -> Self {
        // BigRational keeps itself reduced with a positive denominator.
        if r.denom().is_one() {
            Self::from_bigint(r.numer().clone())
        } else {
            Scalar(Repr::Ratio(r))
        }
    }

    /// `numer / denom`, or `None` when `denom` is zero.
    pub fn ratio(numer: impl Into<BigInt>, denom: impl Into<BigInt>) -> Option<Self> {
        let d = denom.into();
        if d.is_zero() {
            return None;
        }
        Some(Self::from_ratio(BigRational::new(numer.into(), d)))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1))
    }

    pub fn is_integer(&self) -> bool {
        !matches!(self.0, Repr::Ratio(_))
    }

    pub fn is_negative(&self) -> bool {
        match &self.0 {
            Repr::Small(v) => *v < 0,
            Repr::Big(b) => b.is_negative(),
            Repr::Ratio(r) => r.is_negative(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self.0 {
            Repr::Small(v) => Some(v),
            _ => None,
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(v) => BigInt::from(*v),
            Repr::Big(b) => b.clone(),
            Repr::Ratio(r) => r.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Ratio(r) => r.denom().clone(),
            _ => BigInt::one(),
        }
    }

    fn to_ratio(&self) -> BigRational {
        match &self.0 {
            Repr::Small(v) => BigRational::from_integer(BigInt::from(*v)),
            Repr::Big(b) => BigRational::from_integer(b.clone()),
            Repr::Ratio(r) => r.clone(),
        }
    }

    fn to_bigint_lossless(&self) -> Option<BigInt> {
        match &self.0 {
            Repr::Small(v) => Some(BigInt::from(*v)),
            Repr::Big(b) => Some(b.clone()),
            Repr::Ratio(_) => None,
        }
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Some(Self::from_ratio(self.to_ratio().recip()))
    }

    /// Exact quotient; `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Self) -> Option<Self> {
        rhs.recip().map(|inv| self * &inv)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Scalar::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Residue modulo the prime `p`; `None` when `p` divides the denominator.
    pub fn rem_euclid_prime(&self, p: u32) -> Option<u32> {
        let p_big = BigInt::from(p);
        let reduce = |n: &BigInt| -> u32 {
            n.mod_floor(&p_big).to_u32().expect("residue below a u32 modulus")
        };
        match &self.0 {
            Repr::Small(v) => Some(v.rem_euclid(i64::from(p)) as u32),
            Repr::Big(b) => Some(reduce(b)),
            Repr::Ratio(r) => {
                let d = reduce(r.denom());
                if d == 0 {
                    return None;
                }
                let n = reduce(r.numer());
                Some(mul_mod(n, inv_mod(d, p), p))
            }
        }
    }
}

fn mul_mod(a: u32, b: u32, p: u32) -> u32 {
    ((u64::from(a) * u64::from(b)) % u64::from(p)) as u32
}

fn inv_mod(a: u32, p: u32) -> u32 {
    // Fermat; p is prime and a is nonzero mod p.
    let mut result = 1u32;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mul_mod(result, base, p);
        }
        base = mul_mod(base, base, p);
        e >>= 1;
    }
    result
}

impl From<i64> for Scalar {
    fn from(v: i64) -> Self {
        Scalar(Repr::Small(v))
    }
}

impl From<i32> for Scalar {
    fn from(v: i32) -> Self {
        Scalar(Repr::Small(i64::from(v)))
    }
}

impl From<u32> for Scalar {
    fn from(v: u32) -> Self {
        Scalar(Repr::Small(i64::from(v)))
    }
}

impl From<BigInt> for Scalar {
    fn from(v: BigInt) -> Self {
        Scalar::from_bigint(v)
    }
}

impl Default for Scalar {
    fn default() -> Self {
        Scalar::ZERO
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_add(*b) {
                return Scalar(Repr::Small(v));
            }
        }
        match (self.to_bigint_lossless(), rhs.to_bigint_lossless()) {
            (Some(a), Some(b)) => Scalar::from_bigint(a + b),
            _ => Scalar::from_ratio(self.to_ratio() + rhs.to_ratio()),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_sub(*b) {
                return Scalar(Repr::Small(v));
            }
        }
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        if let (Repr::Small(a), Repr::Small(b)) = (&self.0, &rhs.0) {
            if let Some(v) = a.checked_mul(*b) {
                return Scalar(Repr::Small(v));
            }
        }
        match (self.to_bigint_lossless(), rhs.to_bigint_lossless()) {
            (Some(a), Some(b)) => Scalar::from_bigint(a * b),
            _ => Scalar::from_ratio(self.to_ratio() * rhs.to_ratio()),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match &self.0 {
            Repr::Small(v) => match v.checked_neg() {
                Some(n) => Scalar(Repr::Small(n)),
                None => Scalar::from_bigint(-BigInt::from(*v)),
            },
            Repr::Big(b) => Scalar::from_bigint(-b),
            Repr::Ratio(r) => Scalar(Repr::Ratio(-r)),
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
    )*};
}
forward_owned!(Add add, Sub sub, Mul mul);

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a), Repr::Small(b)) => a.cmp(b),
            _ => self.to_ratio().cmp(&other.to_ratio()),
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(v) => write!(f, "{v}"),
            Repr::Big(b) => write!(f, "{b}"),
            Repr::Ratio(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseScalarError(String);

impl fmt::Display for ParseScalarError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid scalar literal `{}`", self.0)
    }
}

impl core::error::Error for ParseScalarError {}

impl FromStr for Scalar {
    type Err = ParseScalarError;

    /// Accepts `n` or `n/d` with optional leading sign on `n`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let err = || ParseScalarError(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            None => t.parse::<BigInt>().map(Scalar::from_bigint).map_err(|_| err()),
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| err())?;
                let d: BigInt = d.trim().parse().map_err(|_| err())?;
                Scalar::ratio(n, d).ok_or_else(err)
            }
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Scalar {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

#[cfg(feature = "serde")]
impl<'de> serde::Deserialize<'de> for Scalar {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = <String as serde::Deserialize>::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
