use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Integer Laurent polynomial in `v`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i32, i64>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, 1)
    }

    /// `c·v^e`.
    pub fn monomial(e: i32, c: i64) -> Self {
        let mut p = LaurentPoly::zero();
        p.add_term(e, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (i32, i64)>) -> Self {
        let mut p = LaurentPoly::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    pub fn add_term(&mut self, e: i32, c: i64) {
        if c == 0 {
            return;
        }
        let entry = self.coeffs.entry(e).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.remove(&e);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, e: i32) -> i64 {
        self.coeffs.get(&e).copied().unwrap_or(0)
    }

    /// Terms in increasing exponent order.
    pub fn terms(&self) -> impl Iterator<Item = (i32, i64)> + '_ {
        self.coeffs.iter().map(|(&e, &c)| (e, c))
    }

    pub fn min_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// Multiplication by `v^k`.
    pub fn shift(&self, k: i32) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e + k, c)).collect() }
    }

    pub fn scale(&self, c: i64) -> Self {
        Self::from_terms(self.terms().map(|(e, a)| (e, a * c)))
    }

    /// The involution `v ↦ v⁻¹`.
    pub fn bar(&self) -> Self {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (-e, c)).collect() }
    }

    pub fn eval_at_one(&self) -> i64 {
        self.coeffs.values().sum()
    }

    /// Whether every exponent is at least 1, i.e. the polynomial lies in `vZ[v]`.
    pub fn in_v_z_v(&self) -> bool {
        self.min_exponent().is_none_or(|e| e >= 1)
    }
}

impl fmt::Display for LaurentPoly {
    /// Decreasing exponents, e.g. `1+3v^-2+v^-4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (k, (&e, &c)) in self.coeffs.iter().rev().enumerate() {
            if c < 0 {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            let a = c.unsigned_abs();
            match e {
                0 => write!(f, "{a}")?,
                _ => {
                    if a != 1 {
                        write!(f, "{a}")?;
                    }
                    if e == 1 {
                        write!(f, "v")?;
                    } else {
                        write!(f, "v^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in rhs.terms() {
            self.add_term(e, c);
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        self + &(-rhs)
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&e, &c)| (e, -c)).collect() }
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for (ea, ca) in self.terms() {
            for (eb, cb) in rhs.terms() {
                out.add_term(ea + eb, ca * cb);
            }
        }
        out
    }
}
