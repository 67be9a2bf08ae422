//! Scalar fields.
//!
//! Three backends share one runtime-tagged element type so that a document
//! or a foreign caller can pick the field at run time:
//!
//! * [`Field::Rational`]: exact rationals over arbitrary-precision integers,
//!   always kept in lowest terms with a positive denominator;
//! * [`Field::prime`]: the prime field `F_p`, residues in `[0, p)`;
//! * [`Field::float`]: an `f64` adapter whose equality is tolerance based.
//!
//! Every element carries its field, so combining elements of different
//! fields is reported as [`Error::FieldMismatch`] instead of silently
//! producing garbage.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

/// Default relative tolerance of the float backend.
pub const DEFAULT_FLOAT_EPS: f64 = 1e-9;

/// Largest accepted prime modulus (exclusive). Primality is checked by trial
/// division, and residues are multiplied in `u64`.
pub const MAX_MODULUS: u64 = 1 << 32;

/// A field instance.
#[derive(Debug, Clone, Copy)]
pub enum Field {
    Rational,
    Prime(Modulus),
    Float(Tolerance),
}

/// A validated prime modulus.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn get(self) -> u64 {
        self.0
    }
}

/// A validated float tolerance: finite and strictly positive.
#[derive(Debug, Clone, Copy)]
pub struct Tolerance(f64);

impl Tolerance {
    pub fn get(self) -> f64 {
        self.0
    }
}

impl PartialEq for Tolerance {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits()
    }
}

impl Eq for Tolerance {}

fn is_prime(p: u64) -> bool {
    if p < 2 {
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

impl Field {
    pub fn rational() -> Self {
        Field::Rational
    }

    /// `F_p`; fails unless `p` is a prime below [`MAX_MODULUS`].
    pub fn prime(p: u64) -> Result<Self> {
        if p >= MAX_MODULUS || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(Field::Prime(Modulus(p)))
    }

    pub fn float(eps: f64) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::InvalidTolerance(eps));
        }
        Ok(Field::Float(Tolerance(eps)))
    }

    pub fn float_default() -> Self {
        Field::Float(Tolerance(DEFAULT_FLOAT_EPS))
    }

    /// 0 for rationals and floats, `p` for `F_p`.
    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(m) => m.0,
            Field::Rational | Field::Float(_) => 0,
        }
    }

    pub fn is_exact(&self) -> bool {
        !matches!(self, Field::Float(_))
    }

    pub fn zero(&self) -> FieldElement {
        self.from_i64(0)
    }

    pub fn one(&self) -> FieldElement {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> FieldElement {
        self.from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        FieldElement(match *self {
            Field::Rational => Repr::Rational(BigRational::from_integer(n.clone())),
            Field::Prime(m) => Repr::Prime {
                value: reduce_mod(n, m.0),
                modulus: m.0,
            },
            Field::Float(t) => Repr::Float {
                value: n.to_f64().unwrap_or(f64::NAN),
                eps: t.0,
            },
        })
    }

    /// The image of `num/den` under the canonical map from the rationals.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<FieldElement> {
        self.from_rational(&BigRational::new_raw(BigInt::from(num), BigInt::from(den)))
    }

    /// Maps a rational into this field. In `F_p` this fails when the
    /// denominator is divisible by `p`.
    pub fn from_rational(&self, q: &BigRational) -> Result<FieldElement> {
        if q.denom().is_zero() {
            return Err(Error::DivisionByZero);
        }
        let num = self.from_bigint(q.numer());
        let den = self.from_bigint(q.denom());
        num.div(&den)
    }

    /// Wraps an `f64`. Only valid for the float backend.
    pub fn from_f64(&self, value: f64) -> Result<FieldElement> {
        match *self {
            Field::Float(t) => Ok(FieldElement(Repr::Float { value, eps: t.0 })),
            other => Err(Error::FieldMismatch {
                left: other,
                right: Field::float_default(),
            }),
        }
    }

    /// Parses the textual form used in documents: `"-3/4"`, `"5"`, and for
    /// floats any decimal literal. Fractions are accepted by every backend.
    pub fn parse(&self, input: &str) -> Result<FieldElement> {
        let fail = |reason: &str| Error::ParseElement {
            input: input.to_string(),
            field: *self,
            reason: reason.to_string(),
        };
        let s = input.trim();
        if s.is_empty() {
            return Err(fail("empty string"));
        }
        if let Some((n, d)) = s.split_once('/') {
            let n = BigInt::from_str(n.trim()).map_err(|_| fail("bad numerator"))?;
            let d = BigInt::from_str(d.trim()).map_err(|_| fail("bad denominator"))?;
            if d.is_zero() {
                return Err(fail("zero denominator"));
            }
            return self
                .from_rational(&BigRational::new(n, d))
                .map_err(|_| fail("denominator vanishes in this field"));
        }
        if let Ok(n) = BigInt::from_str(s) {
            return Ok(self.from_bigint(&n));
        }
        match *self {
            Field::Float(_) => {
                let v: f64 = s.parse().map_err(|_| fail("not a number"))?;
                if !v.is_finite() {
                    return Err(fail("not finite"));
                }
                self.from_f64(v)
            }
            _ => Err(fail("expected an integer or a fraction num/den")),
        }
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Field::Rational, Field::Rational) => true,
            (Field::Prime(a), Field::Prime(b)) => a == b,
            (Field::Float(a), Field::Float(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Field {}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "rational"),
            Field::Prime(m) => write!(f, "fp:{}", m.0),
            Field::Float(t) if t.0 == DEFAULT_FLOAT_EPS => write!(f, "float"),
            Field::Float(t) => write!(f, "float:{}", t.0),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// `rational`, `fp:<p>`, `float` or `float:<eps>`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::ParseElement {
            input: s.to_string(),
            field: Field::Rational,
            reason: "expected rational, fp:<p>, float or float:<eps>".to_string(),
        };
        match s.trim() {
            "rational" | "q" | "Q" => Ok(Field::Rational),
            "float" => Ok(Field::float_default()),
            other => {
                if let Some(p) = other.strip_prefix("fp:") {
                    Field::prime(p.parse().map_err(|_| bad())?)
                } else if let Some(eps) = other.strip_prefix("float:") {
                    Field::float(eps.parse().map_err(|_| bad())?)
                } else {
                    Err(bad())
                }
            }
        }
    }
}

fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1u64 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    acc
}

/// An element of some [`Field`].
///
/// Equality is exact for the rational and prime backends. For floats two
/// values are equal when `|a - b| <= eps * max(1, |a|, |b|)`; that relation is
/// not transitive, so float elements must not be used as map keys (see
/// [`FieldElement::key`]).
#[derive(Debug, Clone)]
pub struct FieldElement(Repr);

#[derive(Debug, Clone)]
enum Repr {
    Rational(BigRational),
    Prime { value: u64, modulus: u64 },
    Float { value: f64, eps: f64 },
}

/// Exact, totally ordered identity of an element; used for map keys and
/// canonical ordering.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ElementKey {
    Rational(BigRational),
    Prime(u64),
    Float(FloatBits),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FloatBits(u64);

impl PartialOrd for FloatBits {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for FloatBits {
    fn cmp(&self, other: &Self) -> Ordering {
        f64::from_bits(self.0).total_cmp(&f64::from_bits(other.0))
    }
}

impl FieldElement {
    pub fn field(&self) -> Field {
        match self.0 {
            Repr::Rational(_) => Field::Rational,
            Repr::Prime { modulus, .. } => Field::Prime(Modulus(modulus)),
            Repr::Float { eps, .. } => Field::Float(Tolerance(eps)),
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        let (l, r) = (self.field(), other.field());
        if l == r {
            Ok(())
        } else {
            Err(Error::FieldMismatch { left: l, right: r })
        }
    }

    pub fn is_zero(&self) -> bool {
        match &self.0 {
            Repr::Rational(q) => q.is_zero(),
            Repr::Prime { value, .. } => *value == 0,
            Repr::Float { value, eps } => value.abs() <= *eps,
        }
    }

    pub fn is_one(&self) -> bool {
        *self == self.field().one()
    }

    #[allow(clippy::should_implement_trait)]
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldElement(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a + b),
            (Repr::Prime { value: a, modulus }, Repr::Prime { value: b, .. }) => Repr::Prime {
                value: (a + b) % modulus,
                modulus: *modulus,
            },
            (Repr::Float { value: a, eps }, Repr::Float { value: b, .. }) => Repr::Float {
                value: a + b,
                eps: *eps,
            },
            _ => unreachable!("field tags checked"),
        }))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(FieldElement(match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => Repr::Rational(a * b),
            (Repr::Prime { value: a, modulus }, Repr::Prime { value: b, .. }) => Repr::Prime {
                value: a * b % modulus,
                modulus: *modulus,
            },
            (Repr::Float { value: a, eps }, Repr::Float { value: b, .. }) => Repr::Float {
                value: a * b,
                eps: *eps,
            },
            _ => unreachable!("field tags checked"),
        }))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn neg(&self) -> Self {
        FieldElement(match &self.0 {
            Repr::Rational(a) => Repr::Rational(-a),
            Repr::Prime { value, modulus } => Repr::Prime {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
            Repr::Float { value, eps } => Repr::Float {
                value: -value,
                eps: *eps,
            },
        })
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(FieldElement(match &self.0 {
            Repr::Rational(a) => Repr::Rational(a.recip()),
            // p is prime, so a^(p-2) is the inverse
            Repr::Prime { value, modulus } => Repr::Prime {
                value: pow_mod(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
            Repr::Float { value, eps } => Repr::Float {
                value: 1.0 / value,
                eps: *eps,
            },
        }))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn div(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        self.mul(&other.inv()?)
    }

    /// The rational value, if this is a rational element.
    pub fn as_rational(&self) -> Option<&BigRational> {
        match &self.0 {
            Repr::Rational(q) => Some(q),
            _ => None,
        }
    }

    /// Residue in `[0, p)`, if this is an `F_p` element.
    pub fn as_residue(&self) -> Option<u64> {
        match self.0 {
            Repr::Prime { value, .. } => Some(value),
            _ => None,
        }
    }

    /// Lossy conversion for rendering. `F_p` residues map to their
    /// representative in `[0, p)`.
    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Rational(q) => q.to_f64().unwrap_or_else(|| {
                // to_f64 can fail on huge numerators; fall back to a scaled quotient
                let n = q.numer().to_f64().unwrap_or(f64::NAN);
                let d = q.denom().to_f64().unwrap_or(f64::NAN);
                n / d
            }),
            Repr::Prime { value, .. } => *value as f64,
            Repr::Float { value, .. } => *value,
        }
    }

    pub fn key(&self) -> ElementKey {
        match &self.0 {
            Repr::Rational(q) => ElementKey::Rational(q.clone()),
            Repr::Prime { value, .. } => ElementKey::Prime(*value),
            // -0.0 and 0.0 share a key
            Repr::Float { value, .. } => ElementKey::Float(FloatBits((value + 0.0).to_bits())),
        }
    }
}

impl PartialEq for FieldElement {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Rational(a), Repr::Rational(b)) => a == b,
            (
                Repr::Prime {
                    value: a,
                    modulus: p,
                },
                Repr::Prime {
                    value: b,
                    modulus: q,
                },
            ) => p == q && a == b,
            (Repr::Float { value: a, eps: e1 }, Repr::Float { value: b, eps: e2 }) => {
                if e1.to_bits() != e2.to_bits() {
                    return false;
                }
                let scale = a.abs().max(b.abs()).max(1.0);
                (a - b).abs() <= e1 * scale
            }
            _ => false,
        }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Rational(q) => {
                if q.is_integer() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Repr::Prime { value, .. } => write!(f, "{value}"),
            Repr::Float { value, .. } => write!(f, "{value:?}"),
        }
    }
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Sign of a rational element (`None` for other backends).
pub fn rational_sign(x: &FieldElement) -> Option<Ordering> {
    x.as_rational().map(|q| {
        if q.is_positive() {
            Ordering::Greater
        } else if q.is_negative() {
            Ordering::Less
        } else {
            Ordering::Equal
        }
    })
}

/// Folds a sequence of elements into their sum, starting from `field.zero()`.
pub fn sum<'a, I>(field: Field, items: I) -> Result<FieldElement>
where
    I: IntoIterator<Item = &'a FieldElement>,
{
    items
        .into_iter()
        .try_fold(field.zero(), |acc, x| acc.add(x))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_integer::Integer;

    fn q(s: &str) -> FieldElement {
        Field::Rational.parse(s).unwrap()
    }

    #[test]
    fn rational_add() {
        assert_eq!(q("1/2").add(&q("1/3")).unwrap(), q("5/6"));
        assert_eq!(q("1/2").add(&q("1/3")).unwrap().to_string(), "5/6");
    }

    #[test]
    fn prime_add() {
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.from_i64(3).add(&f5.from_i64(4)).unwrap(), f5.from_i64(2));
        let f2 = Field::prime(2).unwrap();
        assert!(f2.one().add(&f2.one()).unwrap().is_zero());
    }

    #[test]
    fn inverses() {
        assert_eq!(q("2/3").inv().unwrap(), q("3/2"));
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.from_i64(3).inv().unwrap().as_residue(), Some(5));
        assert_eq!(f7.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(q("0").inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn characteristics() {
        assert_eq!(Field::Rational.characteristic(), 0);
        assert_eq!(Field::float_default().characteristic(), 0);
        assert_eq!(Field::prime(2).unwrap().characteristic(), 2);
        assert_eq!(Field::prime(97).unwrap().characteristic(), 97);
    }

    #[test]
    fn non_prime_modulus_rejected() {
        for p in [0, 1, 4, 9, 91, 1 << 32] {
            assert!(Field::prime(p).is_err(), "{p}");
        }
        assert!(Field::prime(65521).is_ok());
    }

    #[test]
    fn mixed_fields_are_errors() {
        let a = Field::prime(5).unwrap().one();
        let b = Field::prime(7).unwrap().one();
        assert!(matches!(a.add(&b), Err(Error::FieldMismatch { .. })));
        assert!(matches!(a.mul(&q("1")), Err(Error::FieldMismatch { .. })));
    }

    #[test]
    fn serialization_forms() {
        assert_eq!(q("-6/8").to_string(), "-3/4");
        assert_eq!(q("10/2").to_string(), "5");
        assert_eq!(q("3/-4").to_string(), "-3/4");
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.parse("-1").unwrap().to_string(), "6");
        assert_eq!(f7.parse("1/2").unwrap().to_string(), "4");
        assert!(f7.parse("1/7").is_err());
        let fl = Field::float_default();
        assert_eq!(fl.parse("0.25").unwrap().to_string(), "0.25");
        assert_eq!(fl.parse("1/4").unwrap(), fl.parse("0.25").unwrap());
        assert!(Field::Rational.parse("0.5").is_err());
        assert!(Field::Rational.parse("1/0").is_err());
        assert!(Field::Rational.parse("").is_err());
    }

    #[test]
    fn field_specs() {
        assert_eq!("rational".parse::<Field>().unwrap(), Field::Rational);
        assert_eq!("fp:97".parse::<Field>().unwrap(), Field::prime(97).unwrap());
        assert_eq!("float".parse::<Field>().unwrap(), Field::float_default());
        assert!("fp:98".parse::<Field>().is_err());
        for f in [
            Field::Rational,
            Field::prime(13).unwrap(),
            Field::float(1e-6).unwrap(),
        ] {
            assert_eq!(f.to_string().parse::<Field>().unwrap(), f);
        }
    }

    #[test]
    fn float_tolerance() {
        let fl = Field::float_default();
        let a = fl.from_f64(1.0).unwrap();
        let b = fl.from_f64(1.0 + 1e-12).unwrap();
        let c = fl.from_f64(1.0 + 1e-6).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, c);
        let big = fl.from_f64(1e12).unwrap();
        assert_eq!(big, fl.from_f64(1e12 + 1.0).unwrap());
    }

    #[test]
    fn rational_stays_reduced() {
        let x = q("6/4").mul(&q("10/9")).unwrap();
        let r = x.as_rational().unwrap();
        assert!(num_traits::One::is_one(&r.numer().gcd(r.denom())));
        assert!(r.denom().is_positive());
    }
}
