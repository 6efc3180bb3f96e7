//! Exact scalars: rationals and prime-field residues.
//!
//! A [`Scalar`] carries its field with it. Arithmetic between scalars of
//! different fields is a logic error and panics; every constructor in this
//! crate builds values from a single [`Field`] handle, and the parsers reject
//! mixed input before it reaches arithmetic.

use alloc::string::ToString;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use core::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Largest modulus accepted for prime fields; keeps products inside `u128`
/// comfortably and residues printable as plain integers.
pub const MAX_PRIME: u64 = 1 << 31;

/// The field a scalar lives in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// The prime field `F_p`. Fails unless `p` is a prime below [`MAX_PRIME`].
    pub fn prime(p: u64) -> Result<Self, Error> {
        if p < 2 || p > MAX_PRIME || !is_prime(p) {
            return Err(Error::InvalidPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Field::Prime(_))
    }

    pub fn zero(self) -> Scalar {
        self.from_i64(0)
    }

    pub fn one(self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, n: i64) -> Scalar {
        match self {
            Field::Rational => Scalar::Rational(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Scalar::Prime {
                residue: n.rem_euclid(p as i64) as u64,
                modulus: p,
            },
        }
    }

    /// `num / den` in this field.
    pub fn ratio(self, num: i64, den: i64) -> Result<Scalar, Error> {
        if den == 0 {
            return Err(Error::DivisionByZero);
        }
        let q = BigRational::new(BigInt::from(num), BigInt::from(den));
        self.from_rational(&q)
    }

    /// Maps a rational into this field; fails when the denominator vanishes
    /// modulo the characteristic.
    pub fn from_rational(self, q: &BigRational) -> Result<Scalar, Error> {
        match self {
            Field::Rational => Ok(Scalar::Rational(q.clone())),
            Field::Prime(p) => {
                let pb = BigInt::from(p);
                let num = q.numer().mod_floor(&pb).to_u64().unwrap_or(0);
                let den = q.denom().mod_floor(&pb).to_u64().unwrap_or(0);
                if den == 0 {
                    return Err(Error::NotReducible {
                        value: q.to_string(),
                        modulus: p,
                    });
                }
                let inv = mod_inverse(den, p).ok_or(Error::DivisionByZero)?;
                Ok(Scalar::Prime {
                    residue: mul_mod(num, inv, p),
                    modulus: p,
                })
            }
        }
    }

    /// Re-expresses `s` in this field. Rationals reduce modulo `p`; a prime
    /// field value converts only into its own field.
    pub fn convert(self, s: &Scalar) -> Result<Scalar, Error> {
        match (s, self) {
            (Scalar::Rational(q), _) => self.from_rational(q),
            (Scalar::Prime { modulus, .. }, Field::Prime(p)) if *modulus == p => Ok(s.clone()),
            (Scalar::Prime { .. }, _) => Err(Error::FieldMismatch(
                s.field().to_string(),
                self.to_string(),
            )),
        }
    }

    /// All elements in increasing residue order, or `None` for `Q`.
    pub fn elements(self) -> Option<Vec<Scalar>> {
        match self {
            Field::Rational => None,
            Field::Prime(p) => Some(
                (0..p)
                    .map(|r| Scalar::Prime {
                        residue: r,
                        modulus: p,
                    })
                    .collect(),
            ),
        }
    }

    /// Parses a scalar literal and converts it into this field.
    pub fn parse(self, text: &str) -> Result<Scalar, Error> {
        let s: Scalar = text.parse()?;
        self.convert(&s)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("q"),
            Field::Prime(p) => write!(f, "f{}", p),
        }
    }
}

impl FromStr for Field {
    type Err = Error;

    /// Accepts `q` or `f<p>` (e.g. `f3`).
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        if t.eq_ignore_ascii_case("q") {
            return Ok(Field::Rational);
        }
        match t.strip_prefix('f').or_else(|| t.strip_prefix('F')) {
            Some(rest) => {
                let p: u64 = rest
                    .parse()
                    .map_err(|_| Error::Parse(alloc::format!("unknown field '{}'", s)))?;
                Field::prime(p)
            }
            None => Err(Error::Parse(alloc::format!("unknown field '{}'", s))),
        }
    }
}

/// An exact field element.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Scalar {
    /// Always in lowest terms with positive denominator.
    Rational(BigRational),
    /// `residue` lies in `[0, modulus)`.
    Prime { residue: u64, modulus: u64 },
}

impl Scalar {
    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Prime { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_zero(),
            Scalar::Prime { residue, .. } => *residue == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(q) => q.is_one(),
            Scalar::Prime { residue, .. } => *residue == 1,
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<Scalar> {
        if self.is_zero() {
            return None;
        }
        Some(match self {
            Scalar::Rational(q) => Scalar::Rational(q.recip()),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: mod_inverse(*residue, *modulus)?,
                modulus: *modulus,
            },
        })
    }

    /// Integer representative in `Q`: prime residues map to `0..p`, rationals
    /// are returned unchanged.
    pub fn lift(&self) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Prime { residue, .. } => {
                Scalar::Rational(BigRational::from_integer(BigInt::from(*residue)))
            }
        }
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Prime { .. } => None,
        }
    }

    /// Integer value when the scalar is an integral rational in `i64` range
    /// or a prime residue.
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Scalar::Rational(q) if q.is_integer() => q.numer().to_i64(),
            Scalar::Rational(_) => None,
            Scalar::Prime { residue, .. } => i64::try_from(*residue).ok(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Scalar {
        let mut base = self.clone();
        let mut acc = self.field().one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    fn same_field(&self, other: &Scalar) {
        if self.field() != other.field() {
            panic!(
                "scalar field mismatch: {} vs {}",
                self.field(),
                other.field()
            );
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => {
                if q.denom().is_one() {
                    write!(f, "{}", q.numer())
                } else {
                    write!(f, "{}/{}", q.numer(), q.denom())
                }
            }
            Scalar::Prime { residue, modulus } => write!(f, "{} mod {}", residue, modulus),
        }
    }
}

impl FromStr for Scalar {
    type Err = Error;

    /// Parses `"p/q"`, `"-3"`, or `"r mod p"`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let t = s.trim();
        let bad = || Error::Parse(alloc::format!("invalid scalar '{}'", s));
        if let Some((lhs, rhs)) = t.split_once("mod") {
            let p: u64 = rhs.trim().parse().map_err(|_| bad())?;
            let field = Field::prime(p)?;
            let r: BigInt = lhs.trim().parse().map_err(|_| bad())?;
            return field.from_rational(&BigRational::from_integer(r));
        }
        let q = match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(Error::DivisionByZero);
                }
                BigRational::new(n, d)
            }
            None => BigRational::from_integer(t.parse::<BigInt>().map_err(|_| bad())?),
        };
        Ok(Scalar::Rational(q))
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (
                Scalar::Prime { residue: a, modulus },
                Scalar::Prime { residue: b, .. },
            ) => Scalar::Prime {
                residue: (a + b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (
                Scalar::Prime { residue: a, modulus },
                Scalar::Prime { residue: b, .. },
            ) => Scalar::Prime {
                residue: (a + modulus - b) % modulus,
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.same_field(rhs);
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (
                Scalar::Prime { residue: a, modulus },
                Scalar::Prime { residue: b, .. },
            ) => Scalar::Prime {
                residue: mul_mod(*a, *b, *modulus),
                modulus: *modulus,
            },
            _ => unreachable!(),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Prime { residue, modulus } => Scalar::Prime {
                residue: (modulus - residue) % modulus,
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

macro_rules! forward_owned {
    ($tr:ident, $m:ident, $atr:ident, $am:ident) => {
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
        impl $atr<&Scalar> for Scalar {
            fn $am(&mut self, rhs: &Scalar) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $atr<Scalar> for Scalar {
            fn $am(&mut self, rhs: Scalar) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

forward_owned!(Add, add, AddAssign, add_assign);
forward_owned!(Sub, sub, SubAssign, sub_assign);
forward_owned!(Mul, mul, MulAssign, mul_assign);

/// Sign helper: `(-1)^k` in `field`.
pub fn sign(field: Field, k: usize) -> Scalar {
    if k % 2 == 0 {
        field.one()
    } else {
        -field.one()
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    let (mut t, mut new_t) = (0i128, 1i128);
    let (mut r, mut new_r) = (p as i128, (a % p) as i128);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    if r != 1 {
        return None;
    }
    Some(t.rem_euclid(p as i128) as u64)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Absolute value for rationals; prime residues are returned as is.
pub fn abs(s: &Scalar) -> Scalar {
    match s {
        Scalar::Rational(q) => Scalar::Rational(q.abs()),
        other => other.clone(),
    }
}
