//! Exact scalars: arbitrary-precision rationals and residues modulo a prime.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest modulus accepted; residues are multiplied in `u64` without overflow.
const MAX_MODULUS: u64 = 1 << 31;

/// The base field: the rationals or a prime field of characteristic other than 2 and 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "FieldSpecRepr", into = "FieldSpecRepr")]
pub enum FieldSpec {
    Rationals,
    Prime(u64),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind")]
enum FieldSpecRepr {
    #[serde(rename = "Q")]
    Q,
    #[serde(rename = "GF")]
    Gf { p: u64 },
}

impl TryFrom<FieldSpecRepr> for FieldSpec {
    type Error = Error;

    fn try_from(r: FieldSpecRepr) -> Result<Self> {
        match r {
            FieldSpecRepr::Q => Ok(FieldSpec::Rationals),
            FieldSpecRepr::Gf { p } => FieldSpec::prime(p),
        }
    }
}

impl From<FieldSpec> for FieldSpecRepr {
    fn from(f: FieldSpec) -> Self {
        match f {
            FieldSpec::Rationals => FieldSpecRepr::Q,
            FieldSpec::Prime(p) => FieldSpecRepr::Gf { p },
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl FieldSpec {
    /// The prime field GF(p). Rejects composites and the characteristics 2 and 3.
    pub fn prime(p: u64) -> Result<Self> {
        if p == 2 || p == 3 {
            return Err(Error::BadCharacteristic(format!(
                "GF({p}) excluded: characteristic must differ from 2 and 3"
            )));
        }
        if !is_prime(p) {
            return Err(Error::BadCharacteristic(format!("{p} is not prime")));
        }
        if p >= MAX_MODULUS {
            return Err(Error::BadCharacteristic(format!("modulus {p} too large")));
        }
        Ok(FieldSpec::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime(p) => *p,
        }
    }

    /// Number of elements, `None` for the rationals.
    pub fn order(&self) -> Option<u64> {
        match self {
            FieldSpec::Rationals => None,
            FieldSpec::Prime(p) => Some(*p),
        }
    }

    pub fn zero(&self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: n.rem_euclid(*p as i64) as u64,
                modulus: *p,
            },
        }
    }

    /// `num / den` in this field.
    pub fn ratio(&self, num: i64, den: i64) -> Result<Scalar> {
        self.from_i64(num).checked_div(&self.from_i64(den))
    }

    pub fn from_bigint(&self, n: &BigInt) -> Scalar {
        match self {
            FieldSpec::Rationals => Scalar::Rational(BigRational::from_integer(n.clone())),
            FieldSpec::Prime(p) => {
                let r = n.mod_floor(&BigInt::from(*p));
                Scalar::Residue {
                    value: r.to_u64().expect("residue fits"),
                    modulus: *p,
                }
            }
        }
    }

    /// Element number `k` in a fixed enumeration of a finite field.
    pub fn element(&self, k: u64) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(k as i64),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: k % p,
                modulus: *p,
            },
        }
    }

    /// A random element: uniform for GF(p), a small integer in [-3, 3] for the rationals.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        match self {
            FieldSpec::Rationals => self.from_i64(rng.gen_range(-3..=3)),
            FieldSpec::Prime(p) => Scalar::Residue {
                value: rng.gen_range(0..*p),
                modulus: *p,
            },
        }
    }

    /// A random nonzero element.
    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> Scalar {
        loop {
            let s = self.random(rng);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn zeros(&self, n: usize) -> Vec<Scalar> {
        vec![self.zero(); n]
    }

    /// The `i`-th standard basis vector of length `n`.
    pub fn unit_vector(&self, n: usize, i: usize) -> Vec<Scalar> {
        let mut v = self.zeros(n);
        v[i] = self.one();
        v
    }

    /// Parse a scalar written in this field's string format. Plain integers and
    /// fractions are accepted for prime fields too.
    pub fn parse_scalar(&self, s: &str) -> Result<Scalar> {
        let parsed: Scalar = s.parse()?;
        parsed.to_field(*self)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF{p}"),
        }
    }
}

impl FromStr for FieldSpec {
    type Err = Error;

    /// Accepts `Q`, `GF5`, `GF(5)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(FieldSpec::Rationals);
        }
        let upper = t.to_ascii_uppercase();
        let digits = upper
            .strip_prefix("GF")
            .map(|r| r.trim_start_matches('(').trim_end_matches(')'))
            .ok_or_else(|| Error::Parse(format!("unknown field '{s}' (expected Q or GF<p>)")))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| Error::Parse(format!("bad modulus in field '{s}'")))?;
        FieldSpec::prime(p)
    }
}

/// An exact field element. Rationals are kept in lowest terms; residues in `[0, p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

#[track_caller]
fn mismatch(a: &Scalar, b: &Scalar) -> ! {
    panic!(
        "field mismatch: {} in {} vs {} in {}",
        a,
        a.field(),
        b,
        b.field()
    )
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rational(_) => FieldSpec::Rationals,
            Scalar::Residue { modulus, .. } => FieldSpec::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Residue { value, .. } => *value == 1,
        }
    }

    /// Multiplicative inverse.
    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: mod_pow(*value, modulus - 2, *modulus),
                modulus: *modulus,
            },
        })
    }

    pub fn checked_div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    /// Reinterpret in another field. Rationals map to GF(p) when the denominator is a unit.
    pub fn to_field(&self, target: FieldSpec) -> Result<Scalar> {
        match (self, target) {
            (Scalar::Rational(_), FieldSpec::Rationals) => Ok(self.clone()),
            (Scalar::Rational(r), FieldSpec::Prime(_)) => {
                let num = target.from_bigint(r.numer());
                let den = target.from_bigint(r.denom());
                num.checked_div(&den).map_err(|_| {
                    Error::FieldMismatch(
                        format!("{r} has no image in {target}"),
                        target.to_string(),
                    )
                })
            }
            (Scalar::Residue { modulus, .. }, FieldSpec::Prime(p)) if *modulus == p => {
                Ok(self.clone())
            }
            _ => Err(Error::FieldMismatch(
                self.field().to_string(),
                target.to_string(),
            )),
        }
    }

    /// Integer value for rationals with denominator one.
    pub fn as_integer(&self) -> Option<BigInt> {
        match self {
            Scalar::Rational(r) if r.is_integer() => Some(r.numer().clone()),
            Scalar::Residue { value, .. } => Some(BigInt::from(*value)),
            _ => None,
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// `-3/4`, `7`, or `4 mod 5`. The typographic minus U+2212 is accepted.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace('\u{2212}', "-");
        if let Some((v, m)) = t.split_once("mod") {
            let modulus: u64 = m
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad modulus in '{s}'")))?;
            let field = FieldSpec::prime(modulus)?;
            let value: i64 = v
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad residue in '{s}'")))?;
            return Ok(field.from_i64(value));
        }
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (t.as_str(), "1"),
        };
        let num: BigInt = num
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in '{s}'")))?;
        let den: BigInt = den
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in '{s}'")))?;
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::Rational(BigRational::new(num, den)))
    }
}

impl Serialize for Scalar {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Scalar {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Str(String),
            Int(i64),
        }
        match Raw::deserialize(d)? {
            Raw::Str(s) => s.parse().map_err(serde::de::Error::custom),
            Raw::Int(n) => Ok(FieldSpec::Rationals.from_i64(n)),
        }
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: m,
                },
                Scalar::Residue {
                    value: b,
                    modulus: n,
                },
            ) if m == n => Scalar::Residue {
                value: (a + b) % m,
                modulus: *m,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: m,
                },
                Scalar::Residue {
                    value: b,
                    modulus: n,
                },
            ) if m == n => Scalar::Residue {
                value: (a + m - b) % m,
                modulus: *m,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Residue {
                    value: a,
                    modulus: m,
                },
                Scalar::Residue {
                    value: b,
                    modulus: n,
                },
            ) if m == n => Scalar::Residue {
                value: a * b % m,
                modulus: *m,
            },
            _ => mismatch(self, rhs),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Residue { value, modulus } => Scalar::Residue {
                value: (modulus - value) % modulus,
                modulus: *modulus,
            },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}

owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (
                Scalar::Residue {
                    value: a,
                    modulus: m,
                },
                Scalar::Residue {
                    value: b,
                    modulus: n,
                },
            ) if m == n => *a = (*a + b) % *m,
            _ => mismatch(self, rhs),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            (
                Scalar::Residue {
                    value: a,
                    modulus: m,
                },
                Scalar::Residue {
                    value: b,
                    modulus: n,
                },
            ) if m == n => *a = (*a + *m - b) % *m,
            _ => mismatch(self, rhs),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a *= b,
            (
                Scalar::Residue {
                    value: a,
                    modulus: m,
                },
                Scalar::Residue {
                    value: b,
                    modulus: n,
                },
            ) if m == n => *a = *a * b % *m,
            _ => mismatch(self, rhs),
        }
    }
}

/// `|r|` for rational scalars; residues are returned unchanged.
pub fn abs(s: &Scalar) -> Scalar {
    match s {
        Scalar::Rational(r) => Scalar::Rational(r.abs()),
        other => other.clone(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u64) -> FieldSpec {
        FieldSpec::prime(p).unwrap()
    }

    #[test]
    fn invert_examples() {
        let f5 = gf(5);
        assert_eq!(f5.from_i64(2).inv().unwrap(), f5.from_i64(3));
        // 4! = 24 = 4 mod 5
        assert_eq!(f5.from_i64(24).inv().unwrap(), f5.from_i64(4));
        let q = FieldSpec::Rationals;
        assert_eq!(
            q.ratio(-3, 4).unwrap().inv().unwrap(),
            q.ratio(-4, 3).unwrap()
        );
        assert_eq!(q.zero().inv(), Err(Error::DivisionByZero));
        assert_eq!(f5.zero().inv(), Err(Error::DivisionByZero));
    }

    #[test]
    fn rejects_small_characteristics() {
        assert!(matches!(
            FieldSpec::prime(2),
            Err(Error::BadCharacteristic(_))
        ));
        assert!(matches!(
            FieldSpec::prime(3),
            Err(Error::BadCharacteristic(_))
        ));
        assert!(matches!(
            FieldSpec::prime(9),
            Err(Error::BadCharacteristic(_))
        ));
        assert!(FieldSpec::prime(101).is_ok());
        assert!("GF3".parse::<FieldSpec>().is_err());
    }

    #[test]
    fn string_formats() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.ratio(-3, 4).unwrap().to_string(), "-3/4");
        assert_eq!(q.ratio(6, 3).unwrap().to_string(), "2");
        assert_eq!(gf(5).from_i64(24).to_string(), "4 mod 5");
        assert_eq!(
            "\u{2212}3/4".parse::<Scalar>().unwrap(),
            q.ratio(-3, 4).unwrap()
        );
        assert_eq!("4 mod 5".parse::<Scalar>().unwrap(), gf(5).from_i64(4));
        assert_eq!("GF(7)".parse::<FieldSpec>().unwrap(), gf(7));
        assert_eq!("gf101".parse::<FieldSpec>().unwrap(), gf(101));
    }

    #[test]
    fn field_spec_json() {
        let s = serde_json::to_string(&gf(5)).unwrap();
        assert_eq!(s, r#"{"kind":"GF","p":5}"#);
        assert_eq!(
            serde_json::to_string(&FieldSpec::Rationals).unwrap(),
            r#"{"kind":"Q"}"#
        );
        let back: FieldSpec = serde_json::from_str(r#"{"kind":"GF","p":7}"#).unwrap();
        assert_eq!(back, gf(7));
        assert!(serde_json::from_str::<FieldSpec>(r#"{"kind":"GF","p":3}"#).is_err());
    }

    #[test]
    fn rational_to_prime_field() {
        let q = FieldSpec::Rationals;
        let half = q.ratio(1, 2).unwrap();
        assert_eq!(half.to_field(gf(5)).unwrap(), gf(5).from_i64(3));
        assert!(q.ratio(1, 5).unwrap().to_field(gf(5)).is_err());
    }

    #[test]
    #[should_panic(expected = "field mismatch")]
    fn mixing_fields_panics() {
        let _ = &gf(5).one() + &gf(7).one();
    }
}
