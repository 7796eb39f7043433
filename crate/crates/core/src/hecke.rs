//! The Hecke algebra in the standard basis `H_x`, its Kazhdan-Lusztig basis,
//! and Bott-Samelson characters.

use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::exactalg::LaurentPoly;
use crate::weyl::{GroupElement, WeylGroup, Word};

/// Finite `Z[v, v⁻¹]`-combination of the basis elements `H_x`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct HeckeElement {
    terms: BTreeMap<GroupElement, LaurentPoly>,
}

fn v_pow(e: i32) -> LaurentPoly {
    LaurentPoly::monomial(e, 1)
}

impl HeckeElement {
    pub fn zero() -> Self {
        HeckeElement::default()
    }

    /// The basis element `H_x`.
    pub fn basis(x: &GroupElement) -> Self {
        Self::term(x, LaurentPoly::one())
    }

    pub fn term(x: &GroupElement, c: LaurentPoly) -> Self {
        let mut h = HeckeElement::zero();
        h.add_term(x, &c);
        h
    }

    pub fn add_term(&mut self, x: &GroupElement, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(x) {
            Some(old) => {
                *old += c;
                if old.is_zero() {
                    self.terms.remove(x);
                }
            }
            None => {
                self.terms.insert(x.clone(), c.clone());
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, x: &GroupElement) -> LaurentPoly {
        self.terms.get(x).cloned().unwrap_or_default()
    }

    /// Terms ordered by length, then canonical word.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&GroupElement, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &GroupElement> {
        self.terms.keys()
    }

    pub fn add(&self, other: &HeckeElement) -> HeckeElement {
        let mut out = self.clone();
        for (x, c) in &other.terms {
            out.add_term(x, c);
        }
        out
    }

    pub fn sub(&self, other: &HeckeElement) -> HeckeElement {
        self.add(&other.scale(&LaurentPoly::monomial(0, -1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, a) in &self.terms {
            out.add_term(x, &(a * c));
        }
        out
    }

    /// Right multiplication by `H̲_s = H_s + v`.
    pub fn mul_hs_bar(&self, group: &WeylGroup, s: usize) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for (x, c) in &self.terms {
            let xs = group.mul_simple(x, s);
            let shift = if xs.length() > x.length() { 1 } else { -1 };
            out.add_term(&xs, c);
            out.add_term(x, &c.shift(shift));
        }
        out
    }

    /// Right multiplication by `H_s`.
    pub fn mul_hs(&self, group: &WeylGroup, s: usize) -> HeckeElement {
        let mut out = HeckeElement::zero();
        let v_minus = &v_pow(-1) - &v_pow(1);
        for (x, c) in &self.terms {
            let xs = group.mul_simple(x, s);
            out.add_term(&xs, c);
            if xs.length() < x.length() {
                out.add_term(x, &(c * &v_minus));
            }
        }
        out
    }

    /// The bar involution: `v ↦ v⁻¹` and `H_x ↦ (H_{x⁻¹})⁻¹`.
    pub fn bar(&self, group: &WeylGroup) -> HeckeElement {
        let correction = &v_pow(1) - &v_pow(-1);
        let mut out = HeckeElement::zero();
        for (x, c) in &self.terms {
            // bar(H_s) = H_s + v - v⁻¹, multiplied along a reduced word.
            let mut hx = HeckeElement::basis(&group.identity());
            for &s in x.canonical_word().iter() {
                hx = hx.mul_hs(group, s).add(&hx.scale(&correction));
            }
            out = out.add(&hx.scale(&c.bar()));
        }
        out
    }
}

/// `H̲_{s_1} ⋯ H̲_{s_l}`.
pub fn bs_character(group: &WeylGroup, word: &Word) -> HeckeElement {
    let mut h = HeckeElement::basis(&group.identity());
    for &s in word.iter() {
        h = h.mul_hs_bar(group, s);
    }
    h
}

/// Coefficients `f_{x,w}` for `x < w = ev(word)` of the Bott-Samelson
/// character of a reduced word.
pub fn f_coeffs(group: &WeylGroup, word: &Word) -> Result<BTreeMap<GroupElement, LaurentPoly>> {
    let w = group.ev_word(word);
    if w.length() != word.len() {
        return Err(Error::NotReduced(word.to_string()));
    }
    Ok(bs_character(group, word).terms().filter(|(x, _)| **x != w).map(|(x, c)| (x.clone(), c.clone())).collect())
}

/// Memoized Kazhdan-Lusztig basis elements `H̲_w`.
#[derive(Clone, Debug, Default)]
pub struct KlTable {
    map: HashMap<GroupElement, HeckeElement>,
}

impl KlTable {
    pub fn new() -> Self {
        KlTable::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `H̲_w`, computed from `H̲_{ws}H̲_s` with `s` the last letter of the
    /// canonical word of `w`.
    pub fn element(&mut self, group: &WeylGroup, w: &GroupElement) -> HeckeElement {
        if let Some(h) = self.map.get(w) {
            return h.clone();
        }
        let h = if w.is_identity() {
            HeckeElement::basis(w)
        } else {
            let s = *w.canonical_word().last().unwrap();
            let ws = group.mul_simple(w, s);
            let mut h = self.element(group, &ws).mul_hs_bar(group, s);
            // Remove constant terms from the top down.
            let below: Vec<GroupElement> = h.support().filter(|x| *x != w).cloned().collect();
            for x in below.iter().rev() {
                let mu = h.coeff(x).coeff(0);
                if mu != 0 {
                    let kx = self.element(group, x);
                    h = h.sub(&kx.scale(&LaurentPoly::monomial(0, mu)));
                }
            }
            debug_assert!(check_kl(group, w, &h).is_ok());
            h
        };
        self.map.insert(w.clone(), h.clone());
        h
    }
}

/// Checks the three characterizing properties of `H̲_w`.
pub fn check_kl(group: &WeylGroup, w: &GroupElement, h: &HeckeElement) -> Result<()> {
    if h.coeff(w) != LaurentPoly::one() {
        return Err(Error::InternalInvariant(format!("leading coefficient of H̲_{w} is not 1")));
    }
    for (x, c) in h.terms() {
        if x != w && (!c.in_v_z_v() || !group.bruhat_leq(x, w)) {
            return Err(Error::InternalInvariant(format!("coefficient of H_{x} in H̲_{w} is {c}")));
        }
    }
    if h.bar(group) != *h {
        return Err(Error::InternalInvariant(format!("H̲_{w} is not self-dual")));
    }
    Ok(())
}
