//! The stalk-to-costalk matrix `Φ(s, x)`, defects, decompositions of
//! Bott-Samelson sheaves, Braden-MacPherson characters and n-reachability.

use std::collections::{BTreeMap, HashMap, HashSet};

use rayon::prelude::*;

use crate::bstree::{SubwordTree, TreeBuilder};
use crate::error::{Error, Result};
use crate::exactalg::{scalar_rank, Field, GradedMatrix, LaurentPoly, MultiPoly};
use crate::hecke::{HeckeElement, KlTable};
use crate::momentgraph::MomentGraph;
use crate::weyl::{GroupElement, WeylGroup, Word};

/// `Φ(s, x)` together with the stalk degrees `d_i` and kernel degrees `k_j`.
/// A nonzero entry `(i, j)` has degree `k_j - d_i`.
#[derive(Clone, Debug)]
pub struct PhiMatrix {
    pub matrix: GradedMatrix,
    pub stalk_degrees: Vec<i64>,
    pub kernel_degrees: Vec<i64>,
}

impl PhiMatrix {
    pub fn size(&self) -> usize {
        self.stalk_degrees.len()
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        self.matrix.get(i, j)
    }
}

/// Fails with `NonGkmInput` unless the moment graph on `J(s)` is GKM.
/// `J(s)` is the lower interval of the Demazure product of `s`.
pub fn require_gkm_on_support(group: &WeylGroup, word: &Word, field: Field) -> Result<()> {
    group.validate_word(word)?;
    let top = group.demazure_product(word);
    let graph = MomentGraph::interval(group, &top, field).map_err(|e| match e {
        Error::ZeroLabel(label) => Error::NonGkmInput { field, witness: format!("label {label} vanishes") },
        other => other,
    })?;
    graph.require_gkm()
}

fn divide_by_factors(f: MultiPoly, factors: &[MultiPoly]) -> Result<MultiPoly> {
    let mut f = f;
    for l in factors {
        if f.is_zero() {
            break;
        }
        f = f
            .divide_exact_by_linear(l)
            .map_err(|e| Error::InternalInvariant(format!("inexact division by {l} while forming Φ: {e}")))?;
    }
    Ok(f)
}

/// `Φ = (E⁻¹)ᵀ Q E⁻¹` for a tree, without the GKM check.
///
/// Solves `Eᵀ Ψ = Q` and then `Φ E = Ψ` by triangular substitution. Both
/// `Ψ = Φ E` and `Φ` are polynomial, so every division by a diagonal entry
/// `E_ii` is exact and is carried out one linear factor at a time.
pub fn phi_from_tree(group: &WeylGroup, tree: &SubwordTree, field: Field) -> Result<PhiMatrix> {
    let n = tree.maximal_paths().len();
    let nvars = group.rank() + 1;
    let zero = MultiPoly::zero(field, nvars);
    let e = tree.e_matrix(group, field)?;
    let q = tree.q_values(group, field);
    let factors: Vec<Vec<MultiPoly>> =
        tree.maximal_paths().iter().map(|p| tree.diagonal_factors(group, field, p)).collect();
    for (i, f) in factors.iter().enumerate() {
        if f.iter().any(MultiPoly::is_zero) {
            return Err(Error::InternalInvariant(format!("diagonal entry {i} of E({}, {}) vanishes", tree.word, tree.x)));
        }
    }

    let mut psi = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = if i == j { q[i].clone() } else { zero.clone() };
            for k in 0..i {
                if !e.get(k, i).is_zero() && !psi[k][j].is_zero() {
                    acc = &acc - &(e.get(k, i) * &psi[k][j]);
                }
            }
            psi[i][j] = divide_by_factors(acc, &factors[i])?;
        }
    }
    let mut phi = vec![vec![zero.clone(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = psi[i][j].clone();
            for k in 0..j {
                if !e.get(k, j).is_zero() && !phi[i][k].is_zero() {
                    acc = &acc - &(&phi[i][k] * e.get(k, j));
                }
            }
            phi[i][j] = divide_by_factors(acc, &factors[j])?;
        }
    }

    let stalk: Vec<i64> = tree.degrees().into_iter().map(|d| d as i64).collect();
    let total = 2 * (tree.word.len() as i64 - tree.x.length() as i64);
    let kernel: Vec<i64> = stalk.iter().map(|d| total - d).collect();
    let matrix = GradedMatrix {
        entries: phi,
        row_degrees: stalk.iter().map(|d| -d).collect(),
        col_degrees: kernel.iter().map(|k| -k).collect(),
    };
    if !matrix.is_symmetric() {
        return Err(Error::InternalInvariant(format!("Φ({}, {}) is not symmetric", tree.word, tree.x)));
    }
    matrix.check_degrees()?;
    Ok(PhiMatrix { matrix, stalk_degrees: stalk, kernel_degrees: kernel })
}

pub fn phi_matrix(group: &WeylGroup, word: &Word, x: &GroupElement, field: Field) -> Result<PhiMatrix> {
    require_gkm_on_support(group, word, field)?;
    let tree = TreeBuilder::new(group, word).build(x)?;
    phi_from_tree(group, &tree, field)
}

/// `Σ_n rk A^{(n)} v^{-n}`, where `A^{(n)}` collects the scalar entries of
/// `Φ` with `d_i = n = k_j`.
pub fn defect_from_phi(phi: &PhiMatrix, field: Field) -> Result<LaurentPoly> {
    let degrees: HashSet<i64> = phi.stalk_degrees.iter().copied().collect();
    let mut out = LaurentPoly::zero();
    for n in degrees {
        let rows: Vec<usize> = (0..phi.size()).filter(|&i| phi.stalk_degrees[i] == n).collect();
        let cols: Vec<usize> = (0..phi.size()).filter(|&j| phi.kernel_degrees[j] == n).collect();
        if cols.is_empty() {
            continue;
        }
        let mut block = Vec::with_capacity(rows.len());
        for &i in &rows {
            let mut row = Vec::with_capacity(cols.len());
            for &j in &cols {
                let f = phi.get(i, j);
                if !f.is_zero() && f.homogeneous_degree()? != 0 {
                    return Err(Error::InternalInvariant(format!("entry ({i},{j}) of a degree-{n} block is not a scalar")));
                }
                row.push(f.constant_term());
            }
            block.push(row);
        }
        let rank = scalar_rank(field, block)?;
        out.add_term(-(n as i32), rank as i64);
    }
    Ok(out)
}

/// The defect of `ρ_{x,δx}` on `B(s)`; zero when `x ∉ J(s)`.
pub fn defect_at(group: &WeylGroup, word: &Word, x: &GroupElement, field: Field) -> Result<LaurentPoly> {
    require_gkm_on_support(group, word, field)?;
    let tree = TreeBuilder::new(group, word).build(x)?;
    defect_from_phi(&phi_from_tree(group, &tree, field)?, field)
}

/// One summand `B(z)⟨r⟩` with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Summand {
    pub z: GroupElement,
    pub r: i32,
    pub mult: i64,
}

/// Summands ordered by decreasing `z`, then decreasing shift.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
}

impl Decomposition {
    pub fn multiplicity(&self, z: &GroupElement, r: i32) -> i64 {
        self.summands.iter().filter(|t| &t.z == z && t.r == r).map(|t| t.mult).sum()
    }

    /// `Σ mult · v^{r + len - ℓ(z)} H̲_z`, to be compared with the
    /// Bott-Samelson character of a word of length `len`.
    pub fn character(&self, group: &WeylGroup, kl: &mut KlTable, len: usize) -> HeckeElement {
        let mut out = HeckeElement::zero();
        for t in &self.summands {
            let shift = t.r + len as i32 - t.z.length() as i32;
            out = out.add(&kl.element(group, &t.z).scale(&LaurentPoly::monomial(shift, t.mult)));
        }
        out
    }
}

/// Decomposes `B(s)` into shifted `B(z)` using the defect at every vertex
/// of `J(s)`. Non-reduced words are rejected unless `allow_nonreduced`.
pub fn decompose(group: &WeylGroup, word: &Word, field: Field, allow_nonreduced: bool) -> Result<Decomposition> {
    group.validate_word(word)?;
    if !allow_nonreduced && group.ev_word(word).length() != word.len() {
        return Err(Error::NotReduced(word.to_string()));
    }
    require_gkm_on_support(group, word, field)?;
    let builder = TreeBuilder::new(group, word);
    let mut support = builder.support();
    support.reverse();
    let defects: Vec<(GroupElement, LaurentPoly)> = support
        .into_par_iter()
        .map(|x| {
            let tree = builder.build(&x)?;
            let d = defect_from_phi(&phi_from_tree(group, &tree, field)?, field)?;
            Ok((x, d))
        })
        .collect::<Result<_>>()?;
    let mut summands = Vec::new();
    for (z, d) in defects {
        for (r, mult) in d.terms().collect::<Vec<_>>().into_iter().rev() {
            summands.push(Summand { z: z.clone(), r, mult });
        }
    }
    Ok(Decomposition { summands })
}

/// Graded ranks `grk B(s)^x` for every `x ∈ J(s)`.
pub fn bs_graded_ranks(group: &WeylGroup, word: &Word) -> Result<BTreeMap<GroupElement, LaurentPoly>> {
    let builder = TreeBuilder::new(group, word);
    builder.support().into_iter().map(|x| Ok((x.clone(), builder.build(&x)?.graded_rank()))).collect()
}

/// `v^{top} Σ_x v^{-ℓ(x)} grk_x H_x`.
pub fn normalized_character(ranks: &BTreeMap<GroupElement, LaurentPoly>, top: usize) -> HeckeElement {
    let mut out = HeckeElement::zero();
    for (x, g) in ranks {
        out.add_term(x, &g.shift(top as i32 - x.length() as i32));
    }
    out
}

/// Memoized graded ranks of Braden-MacPherson sheaves over one field.
#[derive(Clone, Debug)]
pub struct CharacterCache {
    field: Field,
    map: HashMap<GroupElement, BTreeMap<GroupElement, LaurentPoly>>,
}

impl CharacterCache {
    pub fn new(field: Field) -> Self {
        CharacterCache { field, map: HashMap::new() }
    }

    pub fn field(&self) -> Field {
        self.field
    }
}

/// `grk B(w)^x` for all `x ≤ w`, peeling the other summands off `B(s)` for
/// `s` the canonical word of `w`.
pub fn bm_character(
    group: &WeylGroup,
    w: &GroupElement,
    cache: &mut CharacterCache,
) -> Result<BTreeMap<GroupElement, LaurentPoly>> {
    if let Some(hit) = cache.map.get(w) {
        return Ok(hit.clone());
    }
    let word = w.canonical_word().clone();
    let decomposition = decompose(group, &word, cache.field, false)?;
    if decomposition.multiplicity(w, 0) != 1 || decomposition.summands.iter().any(|t| &t.z == w && t.r != 0) {
        return Err(Error::InternalInvariant(format!("B({word}) does not contain B({w}) exactly once")));
    }
    let mut ranks = bs_graded_ranks(group, &word)?;
    for t in decomposition.summands.iter().filter(|t| &t.z != w) {
        let lower = bm_character(group, &t.z, cache)?;
        let factor = LaurentPoly::monomial(t.r, t.mult);
        for (x, g) in lower {
            let entry = ranks.entry(x).or_default();
            *entry = &*entry - &(&g * &factor);
        }
    }
    ranks.retain(|_, g| !g.is_zero());
    cache.map.insert(w.clone(), ranks.clone());
    Ok(ranks)
}

/// Closed forms for fibers of size 2 and 3 with `s` reduced.
pub fn low_rank_defect(group: &WeylGroup, word: &Word, x: &GroupElement) -> Result<LaurentPoly> {
    group.validate_word(word)?;
    if group.ev_word(word).length() != word.len() {
        return Err(Error::NotReduced(word.to_string()));
    }
    let fiber = TreeBuilder::new(group, word).build(x)?.maximal_paths().len();
    let critical = x.length() + 2 == word.len();
    match fiber {
        2 => Ok(if critical { LaurentPoly::monomial(-2, 1) } else { LaurentPoly::zero() }),
        3 => Ok(if critical { LaurentPoly::monomial(-2, 2) } else { LaurentPoly::zero() }),
        other => Err(Error::NotApplicable(format!("|I(s)_x| = {other}"))),
    }
}

/// n-reachability, decided by searching the reduced words of `w` with the
/// partial products `H̲_{s_1} ⋯ H̲_{s_k}` shared along common prefixes.
#[derive(Clone, Debug)]
pub struct Reachability {
    n: u64,
    memo: HashMap<GroupElement, bool>,
}

impl Reachability {
    pub fn new(n: u64) -> Self {
        Reachability { n, memo: HashMap::new() }
    }

    pub fn is_reachable(&mut self, group: &WeylGroup, w: &GroupElement) -> bool {
        if w.is_identity() {
            return true;
        }
        if let Some(&hit) = self.memo.get(w) {
            return hit;
        }
        let start = HeckeElement::basis(&group.identity());
        let found = self.search(group, w, &group.identity(), &start);
        self.memo.insert(w.clone(), found);
        found
    }

    fn search(&mut self, group: &WeylGroup, w: &GroupElement, u: &GroupElement, h: &HeckeElement) -> bool {
        if u == w {
            let terms: Vec<(GroupElement, LaurentPoly)> =
                h.terms().filter(|(x, _)| *x != w).map(|(x, f)| (x.clone(), f.clone())).collect();
            return terms.iter().all(|(x, f)| {
                f.in_v_z_v() || (f.eval_at_one() <= self.n as i64 && self.is_reachable(group, x))
            });
        }
        let remaining = w.length() - u.length();
        for s in group.simple_indices() {
            let us = group.mul_simple(u, s);
            if us.length() < u.length() {
                continue;
            }
            let rest = group.mul(&group.inverse(&us), w);
            if rest.length() + 1 != remaining {
                continue;
            }
            if self.search(group, w, &us, &h.mul_hs_bar(group, s)) {
                return true;
            }
        }
        false
    }
}

pub fn reachable(group: &WeylGroup, w: &GroupElement, n: u64) -> bool {
    Reachability::new(n).is_reachable(group, w)
}

/// A finite Weyl group with elements numbered in increasing length.
struct IndexedGroup {
    elements: Vec<GroupElement>,
    length: Vec<usize>,
    /// `right[x][k]` is the index of `x s` for the `k`-th simple reflection.
    right: Vec<Vec<usize>>,
}

impl IndexedGroup {
    fn new(group: &WeylGroup) -> Result<Self> {
        let elements = group.finite_elements()?;
        let index: HashMap<&GroupElement, usize> = elements.iter().enumerate().map(|(i, x)| (x, i)).collect();
        let simple = group.simple_indices();
        let right = elements
            .iter()
            .map(|x| simple.iter().map(|&s| index[&group.mul_simple(x, s)]).collect())
            .collect();
        let length = elements.iter().map(GroupElement::length).collect();
        Ok(IndexedGroup { elements, length, right })
    }
}

type Bitset = Box<[u64]>;

/// Per element, the distinct sets of lower elements that must be reachable
/// for one of its reduced words to certify it.
struct Requirements {
    sets: HashMap<usize, HashSet<Bitset>>,
}

/// Walks every reduced word starting with `first`. Products of the `H̲_s`
/// have coefficients in `ℤ_{≥0}[v, v⁻¹]`, so each coefficient is tracked by
/// its value at `v = 1` and its lowest exponent only.
fn walk_words(table: &IndexedGroup, n: u64, first: usize) -> Requirements {
    let size = table.elements.len();
    let depth = table.length.iter().copied().max().unwrap_or(0) + 1;
    let words = size.div_ceil(64);
    let mut values = vec![vec![0u64; size]; depth];
    let mut lows = vec![vec![i32::MAX; size]; depth];
    values[0][0] = 1;
    lows[0][0] = 0;
    let mut out = Requirements { sets: HashMap::new() };

    struct Frame {
        u: usize,
        level: usize,
        next: usize,
    }
    let rank = table.right[0].len();
    step(table, &mut values, &mut lows, 0, 0, first);
    let mut stack = vec![Frame { u: table.right[0][first], level: 1, next: 0 }];
    record(table, n, words, &values[1], &lows[1], table.right[0][first], &mut out);
    while let Some(frame) = stack.last_mut() {
        if frame.next == rank {
            stack.pop();
            continue;
        }
        let k = frame.next;
        frame.next += 1;
        let (u, level) = (frame.u, frame.level);
        let us = table.right[u][k];
        if table.length[us] < table.length[u] {
            continue;
        }
        step(table, &mut values, &mut lows, level, u, k);
        record(table, n, words, &values[level + 1], &lows[level + 1], us, &mut out);
        stack.push(Frame { u: us, level: level + 1, next: 0 });
    }
    out
}

/// Multiplies the product at `level` by `H̲_s` into `level + 1`.
fn step(table: &IndexedGroup, values: &mut [Vec<u64>], lows: &mut [Vec<i32>], level: usize, u: usize, k: usize) {
    let (head, tail) = values.split_at_mut(level + 1);
    let (lhead, ltail) = lows.split_at_mut(level + 1);
    let (src, dst) = (&head[level], &mut tail[0]);
    let (lsrc, ldst) = (&lhead[level], &mut ltail[0]);
    dst.iter_mut().for_each(|c| *c = 0);
    ldst.iter_mut().for_each(|c| *c = i32::MAX);
    let bound = table.length[u];
    for x in 0..table.elements.len() {
        if table.length[x] > bound {
            break;
        }
        let c = src[x];
        if c == 0 {
            continue;
        }
        let xs = table.right[x][k];
        let low = lsrc[x];
        let shift = if table.length[xs] > table.length[x] { 1 } else { -1 };
        dst[xs] += c;
        ldst[xs] = ldst[xs].min(low);
        dst[x] += c;
        ldst[x] = ldst[x].min(low + shift);
    }
}

fn record(table: &IndexedGroup, n: u64, words: usize, values: &[u64], lows: &[i32], w: usize, out: &mut Requirements) {
    let mut need = vec![0u64; words].into_boxed_slice();
    for x in 0..table.elements.len() {
        if table.length[x] >= table.length[w] {
            break;
        }
        if values[x] == 0 || lows[x] >= 1 {
            continue;
        }
        if values[x] > n {
            return;
        }
        need[x / 64] |= 1 << (x % 64);
    }
    out.sets.entry(w).or_default().insert(need);
}

/// The n-reachable elements of a finite Weyl group, in increasing length.
pub fn reachable_elements(group: &WeylGroup, n: u64) -> Result<Vec<GroupElement>> {
    let table = IndexedGroup::new(group)?;
    let rank = table.right[0].len();
    let parts: Vec<Requirements> = (0..rank).into_par_iter().map(|k| walk_words(&table, n, k)).collect();
    let size = table.elements.len();
    let mut merged: Vec<HashSet<Bitset>> = vec![HashSet::new(); size];
    for part in parts {
        for (w, sets) in part.sets {
            merged[w].extend(sets);
        }
    }
    let mut known = vec![0u64; size.div_ceil(64)];
    known[0] |= 1;
    for w in 1..size {
        let ok = merged[w].iter().any(|need| need.iter().zip(&known).all(|(a, b)| a & !b == 0));
        if ok {
            known[w / 64] |= 1 << (w % 64);
        }
    }
    Ok((0..size).filter(|&w| known[w / 64] >> (w % 64) & 1 == 1).map(|w| table.elements[w].clone()).collect())
}

/// Number of n-reachable elements of a finite Weyl group.
pub fn census(group: &WeylGroup, n: u64) -> Result<usize> {
    Ok(reachable_elements(group, n)?.len())
}
