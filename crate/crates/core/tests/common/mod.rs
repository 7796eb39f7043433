#![allow(dead_code)]

use bsdefect::rootsys::{CartanDatum, CartanType};
use bsdefect::weyl::{GroupElement, WeylGroup, Word};

pub fn type_a(rank: usize) -> WeylGroup {
    WeylGroup::new(CartanDatum::new(CartanType::A, rank, false).unwrap())
}

pub fn affine_a1() -> WeylGroup {
    WeylGroup::new(CartanDatum::new(CartanType::A, 1, true).unwrap())
}

pub fn word(s: &str) -> Word {
    s.parse().unwrap()
}

/// Every reduced word of every element of a finite Weyl group.
pub fn reduced_corpus(g: &WeylGroup) -> Vec<(GroupElement, Word)> {
    let mut out = Vec::new();
    for w in g.finite_elements().unwrap() {
        for s in g.reduced_words(&w) {
            out.push((w.clone(), s));
        }
    }
    out
}

/// Affine A1 elements of length at most `max_len`, with all reduced words.
pub fn affine_corpus(g: &WeylGroup, max_len: usize) -> Vec<(GroupElement, Word)> {
    let mut out = Vec::new();
    for len in 0..=max_len {
        for start in [0usize, 1] {
            if len == 0 && start == 1 {
                continue;
            }
            let letters: Vec<usize> = (0..len).map(|i| (start + i) % 2).collect();
            let s = Word::new(letters);
            out.push((g.ev_word(&s), s));
        }
    }
    out
}

/// Bruhat order from the lifting property, independent of subword search.
pub fn bruhat_by_lifting(g: &WeylGroup, x: &GroupElement, w: &GroupElement) -> bool {
    if w.is_identity() {
        return x.is_identity();
    }
    let s = *w.canonical_word().last().unwrap();
    let ws = g.mul_simple(w, s);
    let xs = g.mul_simple(x, s);
    if xs.length() < x.length() {
        bruhat_by_lifting(g, &xs, &ws)
    } else {
        bruhat_by_lifting(g, x, &ws)
    }
}
