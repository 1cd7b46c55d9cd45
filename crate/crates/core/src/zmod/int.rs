use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Arbitrary-precision integer with an inline fast path.
///
/// Values that fit in an `i64` are stored inline; anything larger spills to a
/// heap `BigInt`. The representation is canonical, so derived equality and
/// hashing agree with numeric equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Z {
    Small(i64),
    Big(BigInt),
}

impl Z {
    pub const ZERO: Z = Z::Small(0);
    pub const ONE: Z = Z::Small(1);

    fn from_big(b: BigInt) -> Z {
        match b.to_i64() {
            Some(v) => Z::Small(v),
            None => Z::Big(b),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Z::Small(v) => BigInt::from(*v),
            Z::Big(b) => b.clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Z::Small(v) => Some(*v),
            Z::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Z::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Z::Small(1))
    }

    /// True for `1` and `-1`.
    pub fn is_unit(&self) -> bool {
        matches!(self, Z::Small(1) | Z::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Z::Small(v) => *v < 0,
            Z::Big(b) => b.is_negative(),
        }
    }

    pub fn signum(&self) -> i32 {
        match self {
            Z::Small(v) => v.signum() as i32,
            Z::Big(b) => {
                if b.is_negative() {
                    -1
                } else {
                    1
                }
            }
        }
    }

    pub fn abs(&self) -> Z {
        match self {
            Z::Small(v) => match v.checked_abs() {
                Some(a) => Z::Small(a),
                None => Z::from_big(BigInt::from(*v).abs()),
            },
            Z::Big(b) => Z::from_big(b.abs()),
        }
    }

    /// Compares absolute values.
    pub fn cmp_abs(&self, other: &Z) -> Ordering {
        match (self, other) {
            (Z::Small(a), Z::Small(b)) => a.unsigned_abs().cmp(&b.unsigned_abs()),
            _ => self.to_bigint().abs().cmp(&other.to_bigint().abs()),
        }
    }

    /// Floor division.
    pub fn div_floor(&self, d: &Z) -> Z {
        assert!(!d.is_zero(), "division by zero");
        match (self, d) {
            (Z::Small(a), Z::Small(b)) if !(*a == i64::MIN && *b == -1) => Z::Small(a.div_floor(b)),
            _ => Z::from_big(self.to_bigint().div_floor(&d.to_bigint())),
        }
    }

    /// Remainder in `[0, |m|)` for `m != 0`; the value itself for `m == 0`.
    pub fn rem_euclid(&self, m: &Z) -> Z {
        if m.is_zero() {
            return self.clone();
        }
        match (self, m) {
            (Z::Small(a), Z::Small(b)) if *b != i64::MIN => Z::Small(a.rem_euclid(b.abs())),
            _ => {
                let mb = m.to_bigint().abs();
                Z::from_big(self.to_bigint().mod_floor(&mb))
            }
        }
    }

    /// Exact division; panics when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Z) -> Z {
        let q = self.div_floor(d);
        debug_assert!(&q * d == *self, "inexact division");
        q
    }

    pub fn divides(&self, n: &Z) -> bool {
        if self.is_zero() {
            return n.is_zero();
        }
        n.rem_euclid(self).is_zero()
    }

    /// Non-negative gcd.
    pub fn gcd(&self, other: &Z) -> Z {
        match (self, other) {
            (Z::Small(a), Z::Small(b)) if *a != i64::MIN && *b != i64::MIN => Z::Small(a.gcd(b)),
            _ => Z::from_big(self.to_bigint().gcd(&other.to_bigint())),
        }
    }

    pub fn lcm(&self, other: &Z) -> Z {
        if self.is_zero() || other.is_zero() {
            return Z::ZERO;
        }
        (self * other).abs().div_exact(&self.gcd(other))
    }

    /// Returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
    pub fn ext_gcd(&self, other: &Z) -> (Z, Z, Z) {
        let (mut old_r, mut r) = (self.clone(), other.clone());
        let (mut old_s, mut s) = (Z::ONE, Z::ZERO);
        let (mut old_t, mut t) = (Z::ZERO, Z::ONE);
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let nr = &old_r - &(&q * &r);
            old_r = std::mem::replace(&mut r, nr);
            let ns = &old_s - &(&q * &s);
            old_s = std::mem::replace(&mut s, ns);
            let nt = &old_t - &(&q * &t);
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }

    /// `self += a * b`.
    pub fn add_mul(&mut self, a: &Z, b: &Z) {
        if let (Z::Small(s), Z::Small(x), Z::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(v) = s.checked_add(p) {
                    *self = Z::Small(v);
                    return;
                }
            }
        }
        *self = &*self + &(a * b);
    }

    /// `self -= a * b`.
    pub fn sub_mul(&mut self, a: &Z, b: &Z) {
        if let (Z::Small(s), Z::Small(x), Z::Small(y)) = (&*self, a, b) {
            if let Some(p) = x.checked_mul(*y) {
                if let Some(v) = s.checked_sub(p) {
                    *self = Z::Small(v);
                    return;
                }
            }
        }
        *self = &*self - &(a * b);
    }
}

impl Default for Z {
    fn default() -> Self {
        Z::ZERO
    }
}

impl From<i64> for Z {
    fn from(v: i64) -> Self {
        Z::Small(v)
    }
}

impl From<i32> for Z {
    fn from(v: i32) -> Self {
        Z::Small(v as i64)
    }
}

impl From<u32> for Z {
    fn from(v: u32) -> Self {
        Z::Small(v as i64)
    }
}

impl From<u64> for Z {
    fn from(v: u64) -> Self {
        Z::from_big(BigInt::from(v))
    }
}

impl From<usize> for Z {
    fn from(v: usize) -> Self {
        Z::from_big(BigInt::from(v))
    }
}

impl From<BigInt> for Z {
    fn from(b: BigInt) -> Self {
        Z::from_big(b)
    }
}

impl Ord for Z {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Z::Small(a), Z::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Z {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl<'a> Add<&'a Z> for &'a Z {
    type Output = Z;
    fn add(self, rhs: &'a Z) -> Z {
        if let (Z::Small(a), Z::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                return Z::Small(v);
            }
        }
        Z::from_big(self.to_bigint() + rhs.to_bigint())
    }
}

impl<'a> Sub<&'a Z> for &'a Z {
    type Output = Z;
    fn sub(self, rhs: &'a Z) -> Z {
        if let (Z::Small(a), Z::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                return Z::Small(v);
            }
        }
        Z::from_big(self.to_bigint() - rhs.to_bigint())
    }
}

impl<'a> Mul<&'a Z> for &'a Z {
    type Output = Z;
    fn mul(self, rhs: &'a Z) -> Z {
        if let (Z::Small(a), Z::Small(b)) = (self, rhs) {
            if let Some(v) = a.checked_mul(*b) {
                return Z::Small(v);
            }
        }
        Z::from_big(self.to_bigint() * rhs.to_bigint())
    }
}

impl Add for Z {
    type Output = Z;
    fn add(self, rhs: Z) -> Z {
        &self + &rhs
    }
}

impl Sub for Z {
    type Output = Z;
    fn sub(self, rhs: Z) -> Z {
        &self - &rhs
    }
}

impl Mul for Z {
    type Output = Z;
    fn mul(self, rhs: Z) -> Z {
        &self * &rhs
    }
}

impl Neg for Z {
    type Output = Z;
    fn neg(self) -> Z {
        -&self
    }
}

impl Neg for &Z {
    type Output = Z;
    fn neg(self) -> Z {
        match self {
            Z::Small(a) => match a.checked_neg() {
                Some(v) => Z::Small(v),
                None => Z::from_big(-BigInt::from(*a)),
            },
            Z::Big(b) => Z::from_big(-b),
        }
    }
}

impl AddAssign<&Z> for Z {
    fn add_assign(&mut self, rhs: &Z) {
        if let (Z::Small(a), Z::Small(b)) = (&*self, rhs) {
            if let Some(v) = a.checked_add(*b) {
                *self = Z::Small(v);
                return;
            }
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Z> for Z {
    fn sub_assign(&mut self, rhs: &Z) {
        if let (Z::Small(a), Z::Small(b)) = (&*self, rhs) {
            if let Some(v) = a.checked_sub(*b) {
                *self = Z::Small(v);
                return;
            }
        }
        *self = &*self - rhs;
    }
}

impl Zero for Z {
    fn zero() -> Self {
        Z::ZERO
    }
    fn is_zero(&self) -> bool {
        Z::is_zero(self)
    }
}

impl One for Z {
    fn one() -> Self {
        Z::ONE
    }
}

impl fmt::Display for Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Z::Small(v) => write!(f, "{v}"),
            Z::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Z {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Z {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(Z::from_big(BigInt::from_str(s.trim())?))
    }
}

// Small values serialize as JSON numbers, large ones as decimal strings.
impl Serialize for Z {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Z::Small(v) => s.serialize_i64(*v),
            Z::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Z {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Int(v) => Ok(Z::Small(v)),
            Repr::Str(s) => Z::from_str(&s).map_err(serde::de::Error::custom),
        }
    }
}
