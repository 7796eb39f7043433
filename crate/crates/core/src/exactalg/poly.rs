use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::field::{Coeff, Field};
use crate::error::{Error, Result};

/// Exponent vector; one entry per variable.
pub type Monomial = Vec<u32>;

/// Sparse polynomial in `w1..wr, d` over a [`Field`].
///
/// Every variable has degree 2, so a linear form is homogeneous of degree 2.
/// The last variable stands for `d` (the imaginary root direction).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MultiPoly {
    field: Field,
    nvars: usize,
    terms: BTreeMap<Monomial, Coeff>,
}

impl MultiPoly {
    pub fn zero(field: Field, nvars: usize) -> Self {
        MultiPoly { field, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(field: Field, nvars: usize, c: Coeff) -> Self {
        let mut p = Self::zero(field, nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(field: Field, nvars: usize) -> Self {
        Self::constant(field, nvars, field.one())
    }

    pub fn from_i64(field: Field, nvars: usize, n: i64) -> Self {
        Self::constant(field, nvars, field.from_i64(n))
    }

    pub fn var(field: Field, nvars: usize, i: usize) -> Self {
        assert!(i < nvars, "variable index out of range");
        let mut m = vec![0; nvars];
        m[i] = 1;
        let mut p = Self::zero(field, nvars);
        p.terms.insert(m, field.one());
        p
    }

    /// The linear form `Σ coords[i]·x_i`, reduced into `field`.
    pub fn linear(field: Field, coords: &[i64]) -> Self {
        let nvars = coords.len();
        let mut p = Self::zero(field, nvars);
        for (i, &c) in coords.iter().enumerate() {
            let c = field.from_i64(c);
            if !c.is_zero() {
                let mut m = vec![0; nvars];
                m[i] = 1;
                p.terms.insert(m, c);
            }
        }
        p
    }

    /// Builds a polynomial from explicit terms, dropping zero coefficients and
    /// merging repeated monomials.
    pub fn from_terms(field: Field, nvars: usize, terms: impl IntoIterator<Item = (Monomial, Coeff)>) -> Self {
        let mut p = Self::zero(field, nvars);
        for (m, c) in terms {
            assert_eq!(m.len(), nvars, "monomial has wrong arity");
            p.add_term(m, c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1
            && self.terms.iter().all(|(m, c)| m.iter().all(|&e| e == 0) && c.is_one())
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Coeff)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    fn add_term(&mut self, m: Monomial, c: Coeff) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(old) => {
                let s = self.field.add(old, &c);
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    fn compatible(&self, other: &MultiPoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::FieldMismatch(self.field, other.field));
        }
        if self.nvars != other.nvars {
            return Err(Error::VariableMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.try_add(&other.neg_ref())
    }

    pub fn try_mul(&self, other: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(other)?;
        let mut out = MultiPoly::zero(self.field, self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m: Monomial = ma.iter().zip(mb).map(|(a, b)| a + b).collect();
                out.add_term(m, self.field.mul(ca, cb));
            }
        }
        Ok(out)
    }

    fn neg_ref(&self) -> MultiPoly {
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), self.field.neg(c))).collect(),
        }
    }

    pub fn scale(&self, c: &Coeff) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.field, self.nvars);
        }
        MultiPoly {
            field: self.field,
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), self.field.mul(a, c))).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.field, self.nvars);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// The common degree of all monomials (each variable counts 2).
    pub fn homogeneous_degree(&self) -> Result<u32> {
        let mut degrees = self.terms.keys().map(|m| 2 * m.iter().sum::<u32>());
        let first = degrees.next().ok_or(Error::ZeroPolynomial)?;
        if degrees.all(|d| d == first) {
            Ok(first)
        } else {
            Err(Error::NotHomogeneous)
        }
    }

    pub fn constant_term(&self) -> Coeff {
        self.terms.get(&vec![0; self.nvars]).cloned().unwrap_or_else(|| self.field.zero())
    }

    /// Exact quotient `f / l` for a nonzero linear form `l`.
    ///
    /// Long division in the smallest variable that occurs in `l`.
    pub fn divide_exact_by_linear(&self, l: &MultiPoly) -> Result<MultiPoly> {
        self.compatible(l)?;
        match l.homogeneous_degree() {
            Ok(2) => {}
            Ok(_) => return Err(Error::NotHomogeneous),
            Err(Error::ZeroPolynomial) => return Err(Error::DivisionByZero),
            Err(e) => return Err(e),
        }
        let (pivot, lead) = l
            .terms
            .iter()
            .map(|(m, c)| (m.iter().position(|&e| e == 1).expect("linear monomial"), c.clone()))
            .min_by_key(|(i, _)| *i)
            .expect("nonzero linear form");
        let lead_inv = self.field.inv(&lead)?;

        let mut rem = self.clone();
        let mut quot = MultiPoly::zero(self.field, self.nvars);
        loop {
            let top = rem
                .terms
                .iter()
                .filter(|(m, _)| m[pivot] > 0)
                .max_by_key(|(m, _)| m[pivot])
                .map(|(m, c)| (m.clone(), c.clone()));
            let Some((mut m, c)) = top else { break };
            m[pivot] -= 1;
            let qc = self.field.mul(&c, &lead_inv);
            for (lm, lc) in &l.terms {
                let prod: Monomial = m.iter().zip(lm).map(|(a, b)| a + b).collect();
                rem.add_term(prod, self.field.neg(&self.field.mul(&qc, lc)));
            }
            quot.add_term(m, qc);
        }
        if rem.is_zero() {
            Ok(quot)
        } else {
            Err(Error::NotDivisible { divisor: l.to_string() })
        }
    }

    /// Name of variable `i` for display: `w1..wr` then `d`.
    pub fn var_name(&self, i: usize) -> String {
        if i + 1 == self.nvars {
            "d".to_string()
        } else {
            format!("w{}", i + 1)
        }
    }
}

impl fmt::Display for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // Highest total degree first, lexicographic within a degree.
        let mut terms: Vec<_> = self.terms.iter().collect();
        terms.sort_by(|(a, _), (b, _)| {
            let (da, db) = (a.iter().sum::<u32>(), b.iter().sum::<u32>());
            db.cmp(&da).then_with(|| b.cmp(a))
        });
        for (k, (m, c)) in terms.into_iter().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { self.field.neg(c) } else { c.clone() };
            if k == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else {
                write!(f, "{}", if negative { " - " } else { " + " })?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (i, &e) in m.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(self.var_name(i)),
                    _ => factors.push(format!("{}^{}", self.var_name(i), e)),
                }
            }
            if factors.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{abs}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_add(rhs).expect("incompatible polynomials")
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_sub(rhs).expect("incompatible polynomials")
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.try_mul(rhs).expect("incompatible polynomials")
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        self.neg_ref()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const Q: Field = Field::Rational;

    fn x(i: usize) -> MultiPoly {
        MultiPoly::var(Q, 3, i)
    }

    #[test]
    fn square_of_variable() {
        let sq = &x(0) * &x(0);
        assert_eq!(sq, MultiPoly::from_terms(Q, 3, [(vec![2, 0, 0], Q.one())]));
    }

    #[test]
    fn cancellation_leaves_empty_map() {
        let f = &(&x(0) * &x(1)) + &x(2);
        assert!((&f + &(-&f)).is_zero());
        assert_eq!((&f + &(-&f)).num_terms(), 0);
    }

    #[test]
    fn difference_of_squares() {
        let p = &(&x(0) + &x(1)) * &(&x(0) - &x(1));
        assert_eq!(p, &(&x(0) * &x(0)) - &(&x(1) * &x(1)));
    }

    #[test]
    fn divide_difference_of_squares() {
        let f = &(&x(0) * &x(0)) - &(&x(1) * &x(1));
        let q = f.divide_exact_by_linear(&(&x(0) - &x(1))).unwrap();
        assert_eq!(q, &x(0) + &x(1));
    }

    #[test]
    fn divide_zero() {
        let z = MultiPoly::zero(Q, 3);
        assert!(z.divide_exact_by_linear(&x(0)).unwrap().is_zero());
    }

    #[test]
    fn remainder_detected() {
        let f = &(&x(0) * &x(1)) + &(&x(1) * &x(1));
        assert!(matches!(f.divide_exact_by_linear(&x(0)), Err(Error::NotDivisible { .. })));
    }

    #[test]
    fn pivot_is_smallest_index() {
        // l = d + w2: the pivot must be w2 even though d sorts first in the map.
        let l = &x(2) + &x(1);
        let f = &(&x(0) * &l) * &l;
        assert_eq!(f.divide_exact_by_linear(&l).unwrap(), &x(0) * &l);
    }

    #[test]
    fn degrees() {
        assert_eq!((&x(0) * &x(1)).homogeneous_degree(), Ok(4));
        assert_eq!(MultiPoly::from_i64(Q, 3, 3).homogeneous_degree(), Ok(0));
        assert_eq!((&x(0) + &(&x(0) * &x(0))).homogeneous_degree(), Err(Error::NotHomogeneous));
        assert_eq!(MultiPoly::zero(Q, 3).homogeneous_degree(), Err(Error::ZeroPolynomial));
    }

    #[test]
    fn mixed_fields() {
        let a = MultiPoly::var(Q, 2, 0);
        let b = MultiPoly::var(Field::Prime(3), 2, 0);
        assert!(matches!(a.try_add(&b), Err(Error::FieldMismatch(..))));
        assert!(matches!(a.try_mul(&MultiPoly::var(Q, 3, 0)), Err(Error::VariableMismatch(2, 3))));
    }

    #[test]
    fn reduction_mod_p() {
        let f3 = Field::Prime(3);
        let l = MultiPoly::linear(f3, &[3, -1, 4]);
        assert_eq!(l.to_string(), "2*w2 + d");
        assert_eq!(MultiPoly::linear(Q, &[1, -1, 0]).to_string(), "w1 - w2");
    }

    fn arb_poly(field: Field) -> impl Strategy<Value = MultiPoly> {
        prop::collection::vec((prop::collection::vec(0u32..3, 3), -4i64..5), 0..6)
            .prop_map(move |ts| MultiPoly::from_terms(field, 3, ts.into_iter().map(|(m, c)| (m, field.from_i64(c)))))
    }

    fn arb_homogeneous(field: Field) -> impl Strategy<Value = MultiPoly> {
        // Cubic monomials (a, b, 3 - a - b).
        prop::collection::vec((0u32..4, 0u32..4, -4i64..5), 0..6).prop_map(move |ts| {
            let terms = ts.into_iter().map(|(a, b, c)| {
                let b = b.min(3 - a);
                (vec![a, b, 3 - a - b], field.from_i64(c))
            });
            MultiPoly::from_terms(field, 3, terms)
        })
    }

    fn arb_linear() -> impl Strategy<Value = Vec<i64>> {
        prop::collection::vec(-3i64..4, 3).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
    }

    proptest! {
        #[test]
        fn ring_axioms(a in arb_poly(Q), b in arb_poly(Q), c in arb_poly(Q)) {
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn ring_axioms_mod_p(a in arb_poly(Field::Prime(5)), b in arb_poly(Field::Prime(5)), c in arb_poly(Field::Prime(5))) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        }

        #[test]
        fn divide_round_trip(f in arb_homogeneous(Q), l in arb_linear()) {
            let l = MultiPoly::linear(Q, &l);
            prop_assert_eq!((&f * &l).divide_exact_by_linear(&l).unwrap(), f);
        }

        #[test]
        fn divide_round_trip_mod_p(f in arb_homogeneous(Field::Prime(7)), l in arb_linear()) {
            let l = MultiPoly::linear(Field::Prime(7), &l);
            prop_assume!(!l.is_zero());
            prop_assert_eq!((&f * &l).divide_exact_by_linear(&l).unwrap(), f);
        }
    }
}
