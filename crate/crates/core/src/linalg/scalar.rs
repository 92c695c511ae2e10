//! Exact field scalars.
//!
//! Two fields are supported: the rationals (arbitrary precision, with an
//! `i64` fast path) and prime fields `Z/p` with a run-time modulus below
//! 2^32. Generic algebra is written against [`Scalar`]; every value knows
//! which [`Field`] it lives in so that mixed inputs can be rejected.

use std::fmt;
use std::hash::Hash;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{AlgebraError, Result};

/// The coefficient field of a computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Validates a prime modulus. Moduli must be prime and below 2^32 so that
    /// products of residues fit in a `u64`.
    pub fn prime(p: u64) -> Result<Self> {
        if is_prime_u32(p) {
            Ok(Field::Prime(p))
        } else {
            Err(AlgebraError::InvalidModulus(p))
        }
    }

    /// Mersenne prime 2^31 - 1, the suggested fast-mode modulus.
    pub const DEFAULT_PRIME: u64 = 2_147_483_647;

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(p) => write!(f, "prime:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.eq_ignore_ascii_case("rational") || s.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        let digits = s
            .strip_prefix("prime:")
            .or_else(|| s.strip_prefix("p:"))
            .ok_or_else(|| AlgebraError::Parse(format!("unknown field `{s}`")))?;
        let p: u64 = digits
            .trim()
            .parse()
            .map_err(|_| AlgebraError::Parse(format!("bad modulus `{digits}`")))?;
        Field::prime(p)
    }
}

fn is_prime_u32(p: u64) -> bool {
    if p < 2 || p > u32::MAX as u64 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// An element of an exact field.
pub trait Scalar:
    Clone + PartialEq + Eq + Hash + fmt::Debug + fmt::Display + Send + Sync + 'static
{
    fn field(&self) -> Field;
    fn zero(field: Field) -> Self;
    fn one(field: Field) -> Self;
    fn from_i64(field: Field, v: i64) -> Self;
    /// Maps `num/den` into the field. Fails when `den` vanishes in the field.
    fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Self>;

    fn is_zero(&self) -> bool;
    fn is_one(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse, `None` for zero.
    fn inv(&self) -> Option<Self>;

    /// `self -= f * y`, the elimination kernel.
    fn sub_mul_assign(&mut self, f: &Self, y: &Self) {
        *self = self.sub(&f.mul(y));
    }
}

// ---------------------------------------------------------------------------
// Rationals
// ---------------------------------------------------------------------------

/// Exact rational number in lowest terms with positive denominator.
///
/// Values whose numerator and denominator fit in an `i64` are kept inline;
/// larger values spill to a heap-allocated [`BigRational`]. The
/// representation is canonical (small whenever possible), so derived
/// equality and hashing are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational(Repr);

#[derive(Clone, PartialEq, Eq, Hash)]
enum Repr {
    // den > 0, gcd(num, den) = 1, num != i64::MIN
    Small(i64, i64),
    Big(Box<BigRational>),
}

#[inline]
fn gcd_u64(a: u64, b: u64) -> u64 {
    a.gcd(&b)
}

#[inline]
fn gcd_u128(a: u128, b: u128) -> u128 {
    a.gcd(&b)
}

impl Rational {
    pub fn from_integer(v: i64) -> Self {
        Self::from_i128_parts(v as i128, 1)
    }

    /// `num/den` reduced; panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_i128_parts(num as i128, den as i128)
    }

    pub fn from_big(q: BigRational) -> Self {
        // BigRational::new keeps lowest terms with positive denominator.
        match (q.numer().to_i64(), q.denom().to_i64()) {
            (Some(n), Some(d)) if n != i64::MIN => Rational(Repr::Small(n, d)),
            _ => Rational(Repr::Big(Box::new(q))),
        }
    }

    fn from_i128_parts(mut n: i128, mut d: i128) -> Self {
        debug_assert!(d != 0);
        if d < 0 {
            n = -n;
            d = -d;
        }
        let g = gcd_u128(n.unsigned_abs(), d as u128) as i128;
        if g > 1 {
            n /= g;
            d /= g;
        }
        if let (Ok(ns), Ok(ds)) = (i64::try_from(n), i64::try_from(d)) {
            if ns != i64::MIN {
                return Rational(Repr::Small(ns, ds));
            }
        }
        Rational(Repr::Big(Box::new(BigRational::new(n.into(), d.into()))))
    }

    pub fn to_big(&self) -> BigRational {
        match &self.0 {
            Repr::Small(n, d) => BigRational::new_raw(BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (**b).clone(),
        }
    }

    pub fn numer(&self) -> BigInt {
        match &self.0 {
            Repr::Small(n, _) => BigInt::from(*n),
            Repr::Big(b) => b.numer().clone(),
        }
    }

    pub fn denom(&self) -> BigInt {
        match &self.0 {
            Repr::Small(_, d) => BigInt::from(*d),
            Repr::Big(b) => b.denom().clone(),
        }
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.is_integer(),
        }
    }

    fn big_op(&self, other: &Self, op: impl Fn(&BigRational, &BigRational) -> BigRational) -> Self {
        Self::from_big(op(&self.to_big(), &other.to_big()))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                (*a as i128 * *d as i128).cmp(&(*c as i128 * *b as i128))
            }
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.is_integer() => write!(f, "{}", b.numer()),
            Repr::Big(b) => write!(f, "{}/{}", b.numer(), b.denom()),
        }
    }
}

impl FromStr for Rational {
    type Err = AlgebraError;

    /// Parses `"n"` or `"n/d"` with arbitrary-precision integers.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let parse = |t: &str| -> Result<BigInt> {
            if t.is_empty() || t.len() > 4096 {
                return Err(AlgebraError::Parse(format!("bad rational `{s}`")));
            }
            let digits = t.strip_prefix(['+', '-']).unwrap_or(t);
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(AlgebraError::Parse(format!("bad rational `{s}`")));
            }
            t.parse::<BigInt>()
                .map_err(|_| AlgebraError::Parse(format!("bad rational `{s}`")))
        };
        let n = parse(num)?;
        let d = parse(den)?;
        if d.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(n, d)))
    }
}

impl Scalar for Rational {
    fn field(&self) -> Field {
        Field::Rational
    }

    fn zero(_: Field) -> Self {
        Rational(Repr::Small(0, 1))
    }

    fn one(_: Field) -> Self {
        Rational(Repr::Small(1, 1))
    }

    fn from_i64(_: Field, v: i64) -> Self {
        Rational::from_integer(v)
    }

    fn from_ratio(_: Field, num: &BigInt, den: &BigInt) -> Result<Self> {
        if den.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(Self::from_big(BigRational::new(num.clone(), den.clone())))
    }

    #[inline]
    fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    #[inline]
    fn is_one(&self) -> bool {
        matches!(self.0, Repr::Small(1, 1))
    }

    fn add(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    if *b == 1 {
                        return Self::from_i128_parts(*a as i128 + *c as i128, 1);
                    }
                    return Self::from_i128_parts(*a as i128 + *c as i128, *b as i128);
                }
                let n = *a as i128 * *d as i128 + *c as i128 * *b as i128;
                Self::from_i128_parts(n, *b as i128 * *d as i128)
            }
            _ => self.big_op(other, |x, y| x + y),
        }
    }

    fn sub(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if b == d {
                    return Self::from_i128_parts(*a as i128 - *c as i128, *b as i128);
                }
                let n = *a as i128 * *d as i128 - *c as i128 * *b as i128;
                Self::from_i128_parts(n, *b as i128 * *d as i128)
            }
            _ => self.big_op(other, |x, y| x - y),
        }
    }

    fn mul(&self, other: &Self) -> Self {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => {
                if *a == 0 || *c == 0 {
                    return Rational(Repr::Small(0, 1));
                }
                // cross-cancel so the product is already reduced
                let g1 = gcd_u64(a.unsigned_abs(), d.unsigned_abs()) as i64;
                let g2 = gcd_u64(c.unsigned_abs(), b.unsigned_abs()) as i64;
                let n = (a / g1) as i128 * (c / g2) as i128;
                let den = (b / g2) as i128 * (d / g1) as i128;
                match (i64::try_from(n), i64::try_from(den)) {
                    (Ok(ns), Ok(ds)) if ns != i64::MIN => Rational(Repr::Small(ns, ds)),
                    _ => Self::from_i128_parts(n, den),
                }
            }
            _ => self.big_op(other, |x, y| x * y),
        }
    }

    fn neg(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Self::from_big(-(**b).clone()),
        }
    }

    fn inv(&self) -> Option<Self> {
        match &self.0 {
            Repr::Small(0, _) => None,
            Repr::Small(n, d) => Some(Self::from_i128_parts(*d as i128, *n as i128)),
            Repr::Big(b) => Some(Self::from_big(b.recip())),
        }
    }

    #[inline]
    fn sub_mul_assign(&mut self, f: &Self, y: &Self) {
        if let (Repr::Small(fa, fb), Repr::Small(ya, yb)) = (&f.0, &y.0) {
            if *fb == 1 && *yb == 1 {
                if let Repr::Small(sa, 1) = self.0 {
                    let v = sa as i128 - *fa as i128 * *ya as i128;
                    *self = Self::from_i128_parts(v, 1);
                    return;
                }
            }
        }
        let prod = f.mul(y);
        *self = self.sub(&prod);
    }
}

impl Default for Rational {
    fn default() -> Self {
        Rational(Repr::Small(0, 1))
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

// ---------------------------------------------------------------------------
// Prime fields
// ---------------------------------------------------------------------------

/// Residue modulo a prime `p < 2^32`. The modulus travels with the value.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        let v = value.rem_euclid(modulus as i64) as u64;
        Fp { value: v, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    fn pow(self, mut e: u64) -> Self {
        let mut base = self.value;
        let mut acc = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % self.modulus;
            }
            base = base * base % self.modulus;
            e >>= 1;
        }
        Fp { value: acc, modulus: self.modulus }
    }

    fn modulus_of(field: Field) -> u64 {
        match field {
            Field::Prime(p) => p,
            Field::Rational => panic!("prime-field scalar requested over the rationals"),
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Scalar for Fp {
    fn field(&self) -> Field {
        Field::Prime(self.modulus)
    }

    fn zero(field: Field) -> Self {
        Fp { value: 0, modulus: Self::modulus_of(field) }
    }

    fn one(field: Field) -> Self {
        Fp { value: 1, modulus: Self::modulus_of(field) }
    }

    fn from_i64(field: Field, v: i64) -> Self {
        Fp::new(v, Self::modulus_of(field))
    }

    fn from_ratio(field: Field, num: &BigInt, den: &BigInt) -> Result<Self> {
        let p = Self::modulus_of(field);
        let pb = BigInt::from(p);
        let reduce = |x: &BigInt| -> u64 { x.mod_floor(&pb).to_u64().unwrap_or(0) };
        let d = Fp { value: reduce(den), modulus: p };
        let inv = d.inv().ok_or(AlgebraError::DivisionByZero)?;
        Ok(Fp { value: reduce(num), modulus: p }.mul(&inv))
    }

    #[inline]
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    #[inline]
    fn is_one(&self) -> bool {
        self.value == 1
    }

    #[inline]
    fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let s = self.value + other.value;
        Fp {
            value: if s >= self.modulus { s - self.modulus } else { s },
            modulus: self.modulus,
        }
    }

    #[inline]
    fn sub(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        let v = if self.value >= other.value {
            self.value - other.value
        } else {
            self.value + self.modulus - other.value
        };
        Fp { value: v, modulus: self.modulus }
    }

    #[inline]
    fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.modulus, other.modulus);
        Fp { value: self.value * other.value % self.modulus, modulus: self.modulus }
    }

    fn neg(&self) -> Self {
        Fp {
            value: if self.value == 0 { 0 } else { self.modulus - self.value },
            modulus: self.modulus,
        }
    }

    fn inv(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow(self.modulus - 2))
        }
    }
}

/// Converts an exact rational into any field (used for parsing inputs once).
pub fn rational_into<F: Scalar>(field: Field, q: &Rational) -> Result<F> {
    F::from_ratio(field, &q.numer(), &q.denom())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_canonical_form() {
        let q = Rational::new(6, -4);
        assert_eq!(q.to_string(), "-3/2");
        assert_eq!(q, Rational::new(-3, 2));
        assert!(Rational::new(0, 5).is_zero());
    }

    #[test]
    fn rational_spills_to_big_and_back() {
        let big = Rational::from_integer(i64::MAX).mul(&Rational::from_integer(4));
        assert!(matches!(big.0, Repr::Big(_)));
        let back = big.mul(&Rational::new(1, 4));
        assert_eq!(back, Rational::from_integer(i64::MAX));
        assert!(matches!(back.0, Repr::Small(..)));
    }

    #[test]
    fn rational_parse() {
        assert_eq!("  -10/4 ".parse::<Rational>().unwrap(), Rational::new(-5, 2));
        assert_eq!("7".parse::<Rational>().unwrap(), Rational::from_integer(7));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("a/2".parse::<Rational>().is_err());
        assert!("".parse::<Rational>().is_err());
        assert!("--1".parse::<Rational>().is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = Field::prime(7).unwrap();
        let a = Fp::from_i64(f, 3);
        assert_eq!(a.inv().unwrap().mul(&a), Fp::one(f));
        assert_eq!(Fp::from_i64(f, -1).value(), 6);
        let half = Fp::from_ratio(f, &BigInt::from(1), &BigInt::from(2)).unwrap();
        assert_eq!(half.value(), 4);
        assert!(Fp::from_ratio(f, &BigInt::from(1), &BigInt::from(14)).is_err());
    }

    #[test]
    fn field_parsing_and_validation() {
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("prime:101".parse::<Field>().unwrap(), Field::Prime(101));
        assert!("prime:100".parse::<Field>().is_err());
        assert!(Field::prime(Field::DEFAULT_PRIME).is_ok());
        assert!(Field::prime(1 << 33).is_err());
    }

    #[test]
    fn sub_mul_matches_generic_path() {
        let mut x = Rational::new(3, 7);
        let f = Rational::new(-2, 5);
        let y = Rational::new(11, 3);
        let expect = x.sub(&f.mul(&y));
        x.sub_mul_assign(&f, &y);
        assert_eq!(x, expect);
        let mut z = Rational::from_integer(5);
        z.sub_mul_assign(&Rational::from_integer(2), &Rational::from_integer(-3));
        assert_eq!(z, Rational::from_integer(11));
    }
}
