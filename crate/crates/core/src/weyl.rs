//! Finite and affine Weyl groups acting on the root lattice plus `δ`.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::Deref;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::rootsys::{AffineRoot, CartanDatum};

/// A sequence of simple reflection indices; `0` is the affine reflection.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn new(letters: Vec<usize>) -> Word {
        Word(letters)
    }

    pub fn empty() -> Word {
        Word(Vec::new())
    }

    /// The word with its last letter removed.
    pub fn prefix(&self) -> Word {
        Word(self.0[..self.0.len().saturating_sub(1)].to_vec())
    }
}

impl Deref for Word {
    type Target = [usize];
    fn deref(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromStr for Word {
    type Err = Error;

    /// Accepts `"1,2,1"`; the empty string and `"e"` denote the empty word.
    fn from_str(s: &str) -> Result<Word> {
        let s = s.trim();
        if s.is_empty() || s == "e" {
            return Ok(Word::empty());
        }
        s.split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| Error::InvalidWord(s.to_string())))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }
}

/// A group element stored as the integer matrix of its action on the basis
/// `(α_1, …, α_r, δ)`, with its canonical reduced word cached.
///
/// Equality and hashing use the matrix; ordering is by length, then word.
#[derive(Clone, Debug)]
pub struct GroupElement {
    mat: Vec<i64>,
    word: Word,
}

impl GroupElement {
    pub fn length(&self) -> usize {
        self.word.len()
    }

    /// Reduced word found by greedy descent with the smallest index first.
    pub fn canonical_word(&self) -> &Word {
        &self.word
    }

    pub fn matrix(&self) -> &[i64] {
        &self.mat
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

impl PartialEq for GroupElement {
    fn eq(&self, other: &Self) -> bool {
        self.mat == other.mat
    }
}

impl Eq for GroupElement {}

impl Hash for GroupElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.mat.hash(state);
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.word.len(), &self.word.0).cmp(&(other.word.len(), &other.word.0))
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            write!(f, "e")
        } else {
            write!(f, "{}", self.word)
        }
    }
}

/// The Weyl group of a datum (affine if the datum is), with generator
/// matrices precomputed.
#[derive(Clone, Debug)]
pub struct WeylGroup {
    datum: CartanDatum,
    n: usize,
    /// Indexed by simple index; `None` for 0 in the finite case.
    gens: Vec<Option<Vec<i64>>>,
    /// Simple roots as coordinate vectors, same indexing.
    simple: Vec<Option<Vec<i64>>>,
}

impl WeylGroup {
    pub fn new(datum: CartanDatum) -> WeylGroup {
        let r = datum.rank();
        let n = r + 1;
        let mut gens = vec![None; n];
        let mut simple = vec![None; n];
        for i in datum.simple_indices() {
            let alpha = datum.simple_root(i);
            let mut v = alpha.root.clone();
            v.push(alpha.level);
            simple[i] = Some(v);
            gens[i] = Some(reflection_matrix(&datum, &alpha));
        }
        WeylGroup { datum, n, gens, simple }
    }

    pub fn datum(&self) -> &CartanDatum {
        &self.datum
    }

    pub fn rank(&self) -> usize {
        self.datum.rank()
    }

    pub fn simple_indices(&self) -> Vec<usize> {
        self.datum.simple_indices()
    }

    pub fn validate_word(&self, word: &Word) -> Result<()> {
        match word.iter().find(|&&i| i >= self.n || self.gens[i].is_none()) {
            Some(_) => Err(Error::InvalidWord(word.to_string())),
            None => Ok(()),
        }
    }

    pub fn parse_word(&self, s: &str) -> Result<Word> {
        let w: Word = s.parse()?;
        self.validate_word(&w)?;
        Ok(w)
    }

    fn identity_matrix(&self) -> Vec<i64> {
        let mut m = vec![0; self.n * self.n];
        for i in 0..self.n {
            m[i * self.n + i] = 1;
        }
        m
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement { mat: self.identity_matrix(), word: Word::empty() }
    }

    fn mat_mul(&self, a: &[i64], b: &[i64]) -> Vec<i64> {
        let n = self.n;
        let mut c = vec![0; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = a[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    c[i * n + j] += aik * b[k * n + j];
                }
            }
        }
        c
    }

    fn mat_vec(&self, a: &[i64], v: &[i64]) -> Vec<i64> {
        let n = self.n;
        (0..n).map(|i| (0..n).map(|k| a[i * n + k] * v[k]).sum()).collect()
    }

    fn vec_is_positive(v: &[i64]) -> bool {
        let (finite, level) = v.split_at(v.len() - 1);
        level[0] > 0 || (level[0] == 0 && finite.iter().all(|&c| c >= 0))
    }

    /// Whether `w(α_s) < 0`, i.e. `s` is a right descent of `w`.
    pub fn is_right_descent_matrix(&self, mat: &[i64], s: usize) -> bool {
        let alpha = self.simple[s].as_ref().expect("valid simple index");
        !Self::vec_is_positive(&self.mat_vec(mat, alpha))
    }

    pub fn is_right_descent(&self, w: &GroupElement, s: usize) -> bool {
        self.is_right_descent_matrix(&w.mat, s)
    }

    /// Wraps a matrix, computing its canonical word by greedy descent.
    pub fn from_matrix(&self, mat: Vec<i64>) -> GroupElement {
        let indices = self.simple_indices();
        let mut letters = Vec::new();
        let mut cur = mat.clone();
        while let Some(&g) = indices.iter().find(|&&g| self.is_right_descent_matrix(&cur, g)) {
            letters.push(g);
            cur = self.mat_mul(&cur, self.gens[g].as_ref().unwrap());
        }
        debug_assert_eq!(cur, self.identity_matrix());
        letters.reverse();
        GroupElement { mat, word: Word(letters) }
    }

    pub fn generator(&self, s: usize) -> GroupElement {
        self.from_matrix(self.gens[s].clone().expect("valid simple index"))
    }

    pub fn mul(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.from_matrix(self.mat_mul(&a.mat, &b.mat))
    }

    /// `w·s` for a simple index `s`.
    pub fn mul_simple(&self, w: &GroupElement, s: usize) -> GroupElement {
        let m = self.mat_mul(&w.mat, self.gens[s].as_ref().expect("valid simple index"));
        self.from_matrix(m)
    }

    /// `s·w` for a simple index `s`.
    pub fn simple_mul(&self, s: usize, w: &GroupElement) -> GroupElement {
        self.from_matrix(self.mat_mul(self.gens[s].as_ref().expect("valid simple index"), &w.mat))
    }

    pub fn inverse(&self, w: &GroupElement) -> GroupElement {
        let rev: Vec<usize> = w.word.iter().rev().copied().collect();
        self.ev_word(&Word(rev))
    }

    /// Product of the generators of `word`, left to right.
    pub fn ev_word(&self, word: &Word) -> GroupElement {
        self.ev_letters(word)
    }

    /// Product of the letters that are `Some`, skipping blanks.
    pub fn ev_subword(&self, letters: &[Option<usize>]) -> GroupElement {
        let word: Vec<usize> = letters.iter().flatten().copied().collect();
        self.ev_letters(&word)
    }

    fn ev_letters(&self, letters: &[usize]) -> GroupElement {
        let mut m = self.identity_matrix();
        for &s in letters {
            m = self.mat_mul(&m, self.gens[s].as_ref().expect("valid simple index"));
        }
        self.from_matrix(m)
    }

    pub fn act(&self, w: &GroupElement, beta: &AffineRoot) -> AffineRoot {
        let mut v = beta.root.clone();
        v.push(beta.level);
        let out = self.mat_vec(&w.mat, &v);
        let level = out[self.n - 1];
        self.datum.affine_root(out[..self.n - 1].to_vec(), level)
    }

    /// The reflection `s_β` as a group element.
    pub fn reflection(&self, beta: &AffineRoot) -> GroupElement {
        self.from_matrix(reflection_matrix(&self.datum, beta))
    }

    /// Subword-property test of `x ≤ w` over the canonical word of `w`.
    pub fn bruhat_leq(&self, x: &GroupElement, w: &GroupElement) -> bool {
        let mut memo: HashMap<(Vec<i64>, usize), bool> = HashMap::new();
        self.subword_contains(x, w.canonical_word(), w.length(), &mut memo)
    }

    fn subword_contains(
        &self,
        x: &GroupElement,
        word: &Word,
        k: usize,
        memo: &mut HashMap<(Vec<i64>, usize), bool>,
    ) -> bool {
        if x.is_identity() {
            return true;
        }
        if x.length() > k {
            return false;
        }
        let key = (x.mat.clone(), k);
        if let Some(&hit) = memo.get(&key) {
            return hit;
        }
        let s = word[k - 1];
        let found = self.subword_contains(x, word, k - 1, memo)
            || self.subword_contains(&self.mul_simple(x, s), word, k - 1, memo);
        memo.insert(key, found);
        found
    }

    /// All products of subwords of `word`, sorted.
    pub fn subword_products(&self, word: &Word) -> Vec<GroupElement> {
        let mut set: HashSet<GroupElement> = HashSet::from([self.identity()]);
        for &s in word.iter() {
            let next: Vec<GroupElement> = set.iter().map(|x| self.mul_simple(x, s)).collect();
            set.extend(next);
        }
        let mut out: Vec<GroupElement> = set.into_iter().collect();
        out.sort();
        out
    }

    /// The lower interval `{x ≤ w}`, sorted by length then word.
    pub fn bruhat_interval(&self, w: &GroupElement) -> Vec<GroupElement> {
        self.subword_products(w.canonical_word())
    }

    /// Positive roots `β` with `s_β x < x`, in the order given by the
    /// canonical word.
    pub fn left_inversions(&self, x: &GroupElement) -> Vec<AffineRoot> {
        let mut prefix = self.identity();
        let mut out = Vec::with_capacity(x.length());
        for &s in x.canonical_word().iter() {
            let beta = self.act(&prefix, &self.datum.simple_root(s));
            out.push(self.datum.positive_part(&beta));
            prefix = self.mul_simple(&prefix, s);
        }
        out
    }

    /// All reduced words of `w`.
    pub fn reduced_words(&self, w: &GroupElement) -> Vec<Word> {
        let mut memo: HashMap<GroupElement, Vec<Word>> = HashMap::new();
        let mut out = self.reduced_words_rec(w, &mut memo);
        out.sort();
        out
    }

    fn reduced_words_rec(&self, w: &GroupElement, memo: &mut HashMap<GroupElement, Vec<Word>>) -> Vec<Word> {
        if w.is_identity() {
            return vec![Word::empty()];
        }
        if let Some(hit) = memo.get(w) {
            return hit.clone();
        }
        let mut out = Vec::new();
        for s in self.simple_indices() {
            if self.is_right_descent(w, s) {
                for mut word in self.reduced_words_rec(&self.mul_simple(w, s), memo) {
                    word.0.push(s);
                    out.push(word);
                }
            }
        }
        memo.insert(w.clone(), out.clone());
        out
    }

    /// Every element of a finite Weyl group, sorted.
    pub fn finite_elements(&self) -> Result<Vec<GroupElement>> {
        if self.datum.is_affine() {
            return Err(Error::NotApplicable("the affine Weyl group is infinite".into()));
        }
        let mut seen: BTreeSet<GroupElement> = BTreeSet::from([self.identity()]);
        let mut frontier = vec![self.identity()];
        while let Some(w) = frontier.pop() {
            for s in self.simple_indices() {
                let ws = self.mul_simple(&w, s);
                if seen.insert(ws.clone()) {
                    frontier.push(ws);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// The longest element of a finite Weyl group.
    pub fn longest_element(&self) -> Result<GroupElement> {
        if self.datum.is_affine() {
            return Err(Error::NotApplicable("the affine Weyl group has no longest element".into()));
        }
        let mut w = self.identity();
        loop {
            match self.simple_indices().into_iter().find(|&s| !self.is_right_descent(&w, s)) {
                Some(s) => w = self.mul_simple(&w, s),
                None => return Ok(w),
            }
        }
    }

    /// The Demazure product of `word`: `w := ws` whenever `ws > w`.
    pub fn demazure_product(&self, word: &Word) -> GroupElement {
        let mut w = self.identity();
        for &s in word.iter() {
            if !self.is_right_descent(&w, s) {
                w = self.mul_simple(&w, s);
            }
        }
        w
    }
}

/// Matrix of `v ↦ v − ⟨v, β⟩′β` on the basis `(α_1, …, α_r, δ)`.
fn reflection_matrix(datum: &CartanDatum, beta: &AffineRoot) -> Vec<i64> {
    let r = datum.rank();
    let n = r + 1;
    let mut m = vec![0; n * n];
    let mut target = beta.root.clone();
    target.push(beta.level);
    for k in 0..n {
        m[k * n + k] = 1;
    }
    for k in 0..r {
        let mut e = vec![0; r];
        e[k] = 1;
        let c = datum.coroot_pairing(&e, &beta.root);
        for i in 0..n {
            m[i * n + k] -= c * target[i];
        }
    }
    m
}
