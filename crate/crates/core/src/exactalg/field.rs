use std::fmt;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The coefficient field of a computation: the rationals or `F_p` for an odd
/// prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    /// Builds the field of characteristic `characteristic` (0 or an odd prime).
    pub fn new(characteristic: u64) -> Result<Field> {
        match characteristic {
            0 => Ok(Field::Rational),
            p if p > 2 && is_prime(p) && p < (1 << 31) => Ok(Field::Prime(p)),
            other => Err(Error::InvalidCharacteristic(other)),
        }
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => *p,
        }
    }

    pub fn zero(&self) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::zero()),
            Field::Prime(_) => Coeff::P(0),
        }
    }

    pub fn one(&self) -> Coeff {
        self.from_i64(1)
    }

    pub fn from_i64(&self, n: i64) -> Coeff {
        match self {
            Field::Rational => Coeff::Q(BigRational::from_integer(BigInt::from(n))),
            Field::Prime(p) => Coeff::P(n.rem_euclid(*p as i64) as u64),
        }
    }

    /// `num / den` as a field element.
    pub fn from_ratio(&self, num: i64, den: i64) -> Result<Coeff> {
        let d = self.from_i64(den);
        let inv = self.inv(&d)?;
        Ok(self.mul(&self.from_i64(num), &inv))
    }

    pub fn add(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x + y),
            (Field::Prime(p), Coeff::P(x), Coeff::P(y)) => Coeff::P((x + y) % p),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn neg(&self, a: &Coeff) -> Coeff {
        match (self, a) {
            (Field::Rational, Coeff::Q(x)) => Coeff::Q(-x),
            (Field::Prime(p), Coeff::P(x)) => Coeff::P((p - x) % p),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn sub(&self, a: &Coeff, b: &Coeff) -> Coeff {
        self.add(a, &self.neg(b))
    }

    pub fn mul(&self, a: &Coeff, b: &Coeff) -> Coeff {
        match (self, a, b) {
            (Field::Rational, Coeff::Q(x), Coeff::Q(y)) => Coeff::Q(x * y),
            (Field::Prime(p), Coeff::P(x), Coeff::P(y)) => Coeff::P(x * y % p),
            _ => panic!("coefficient does not belong to {self}"),
        }
    }

    pub fn inv(&self, a: &Coeff) -> Result<Coeff> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match (self, a) {
            (Field::Rational, Coeff::Q(x)) => Coeff::Q(x.recip()),
            (Field::Prime(p), Coeff::P(x)) => Coeff::P(pow_mod(*x, p - 2, *p)),
            _ => panic!("coefficient does not belong to {self}"),
        })
    }

    pub fn div(&self, a: &Coeff, b: &Coeff) -> Result<Coeff> {
        Ok(self.mul(a, &self.inv(b)?))
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => write!(f, "Q"),
            Field::Prime(p) => write!(f, "F_{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
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

/// Raw coefficient storage. Which variant is valid is decided by the owning
/// [`Field`]; rationals are kept in lowest terms by `BigRational`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Coeff {
    Q(BigRational),
    P(u64),
}

impl Coeff {
    pub fn is_zero(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_zero(),
            Coeff::P(x) => *x == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Coeff::Q(x) => x.is_one(),
            Coeff::P(x) => *x == 1,
        }
    }

    /// Whether the textual form needs a leading minus sign.
    pub(crate) fn is_negative(&self) -> bool {
        matches!(self, Coeff::Q(x) if x.is_negative())
    }

    /// The value as an `i64` when it is an integer (residues are returned as
    /// their canonical representative in `0..p`).
    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Coeff::Q(x) if x.is_integer() => x.to_integer().to_i64(),
            Coeff::Q(_) => None,
            Coeff::P(x) => Some(*x as i64),
        }
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coeff::Q(x) => write!(f, "{x}"),
            Coeff::P(x) => write!(f, "{x}"),
        }
    }
}

/// A field element tagged with its field; arithmetic between elements of
/// different fields is rejected.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldScalar {
    field: Field,
    value: Coeff,
}

impl FieldScalar {
    pub fn from_i64(field: Field, n: i64) -> Self {
        FieldScalar { field, value: field.from_i64(n) }
    }

    pub fn from_ratio(field: Field, num: i64, den: i64) -> Result<Self> {
        Ok(FieldScalar { field, value: field.from_ratio(num, den)? })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn value(&self) -> &Coeff {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    fn same_field(&self, other: &FieldScalar) -> Result<Field> {
        if self.field == other.field {
            Ok(self.field)
        } else {
            Err(Error::FieldMismatch(self.field, other.field))
        }
    }

    pub fn add(&self, other: &FieldScalar) -> Result<FieldScalar> {
        let field = self.same_field(other)?;
        Ok(FieldScalar { field, value: field.add(&self.value, &other.value) })
    }

    pub fn mul(&self, other: &FieldScalar) -> Result<FieldScalar> {
        let field = self.same_field(other)?;
        Ok(FieldScalar { field, value: field.mul(&self.value, &other.value) })
    }

    pub fn neg(&self) -> FieldScalar {
        FieldScalar { field: self.field, value: self.field.neg(&self.value) }
    }

    pub fn inv(&self) -> Result<FieldScalar> {
        Ok(FieldScalar { field: self.field, value: self.field.inv(&self.value)? })
    }
}

impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}
