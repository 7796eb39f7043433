//! Subsequence combinatorics of a word, the trees `T(s, x)` and the path
//! matrices built from them.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::exactalg::{Field, GradedMatrix, LaurentPoly, MultiPoly};
use crate::momentgraph::root_image;
use crate::weyl::{GroupElement, WeylGroup, Word};

/// A subsequence of a word: `Some(s)` keeps the letter, `None` is a blank.
pub type Subsequence = Vec<Option<usize>>;

/// `I(s)_x` for every `x` in `J(s)`, built letter by letter:
/// `I(s)_z = I(s')_z ␣ ⊔ I(s')_{zs} s`.
pub fn subword_fibers(group: &WeylGroup, word: &Word) -> BTreeMap<GroupElement, Vec<Subsequence>> {
    let mut fibers: HashMap<GroupElement, Vec<Subsequence>> = HashMap::from([(group.identity(), vec![Vec::new()])]);
    for &s in word.iter() {
        let mut keys: HashSet<GroupElement> = HashSet::new();
        for z in fibers.keys() {
            keys.insert(z.clone());
            keys.insert(group.mul_simple(z, s));
        }
        let mut next = HashMap::with_capacity(keys.len());
        for z in keys {
            let mut list = Vec::new();
            if let Some(old) = fibers.get(&z) {
                list.extend(old.iter().map(|sigma| {
                    let mut t = sigma.clone();
                    t.push(None);
                    t
                }));
            }
            if let Some(old) = fibers.get(&group.mul_simple(&z, s)) {
                list.extend(old.iter().map(|sigma| {
                    let mut t = sigma.clone();
                    t.push(Some(s));
                    t
                }));
            }
            next.insert(z, list);
        }
        fibers = next;
    }
    fibers.into_iter().collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Tilt {
    Vertical,
    Left,
    Right,
}

impl Tilt {
    pub fn name(self) -> &'static str {
        match self {
            Tilt::Vertical => "vertical",
            Tilt::Left => "left",
            Tilt::Right => "right",
        }
    }
}

#[derive(Clone, Debug)]
pub struct TreeVertex {
    pub level: usize,
    pub ev: GroupElement,
    /// Edges ending at this vertex, left child first.
    pub children: Vec<usize>,
}

/// Edge from `lower` (level `level - 1`) up to `upper` (level `level`).
#[derive(Clone, Debug)]
pub struct TreeEdge {
    pub level: usize,
    /// Simple index of the letter at this level.
    pub letter: usize,
    pub color: i8,
    pub tilt: Tilt,
    pub lower: usize,
    pub upper: usize,
}

/// A leaf-to-root path: `edges[t - 1]` has level `t`, `vertices[t]` has level `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MaximalPath {
    pub edges: Vec<usize>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct SubwordTree {
    pub word: Word,
    pub x: GroupElement,
    pub vertices: Vec<TreeVertex>,
    pub edges: Vec<TreeEdge>,
    pub root: Option<usize>,
    paths: Vec<MaximalPath>,
}

/// Builds trees for one word, sharing the prefix supports `J(s_1..s_k)`.
pub struct TreeBuilder<'a> {
    group: &'a WeylGroup,
    word: Word,
    supports: Vec<HashSet<GroupElement>>,
}

impl<'a> TreeBuilder<'a> {
    pub fn new(group: &'a WeylGroup, word: &Word) -> Self {
        let mut supports = vec![HashSet::from([group.identity()])];
        for &s in word.iter() {
            let prev = supports.last().unwrap();
            let mut next = prev.clone();
            next.extend(prev.iter().map(|z| group.mul_simple(z, s)));
            supports.push(next);
        }
        TreeBuilder { group, word: word.clone(), supports }
    }

    pub fn word(&self) -> &Word {
        &self.word
    }

    /// `J(s)`, sorted.
    pub fn support(&self) -> Vec<GroupElement> {
        let mut out: Vec<GroupElement> = self.supports.last().unwrap().iter().cloned().collect();
        out.sort();
        out
    }

    pub fn in_support(&self, k: usize, x: &GroupElement) -> bool {
        self.supports[k].contains(x)
    }

    pub fn build(&self, x: &GroupElement) -> Result<SubwordTree> {
        let mut tree = SubwordTree {
            word: self.word.clone(),
            x: x.clone(),
            vertices: Vec::new(),
            edges: Vec::new(),
            root: None,
            paths: Vec::new(),
        };
        tree.root = self.grow(&mut tree, self.word.len(), x)?;
        tree.paths = tree.collect_paths();
        Ok(tree)
    }

    fn grow(&self, tree: &mut SubwordTree, k: usize, x: &GroupElement) -> Result<Option<usize>> {
        if k == 0 {
            if !x.is_identity() {
                return Ok(None);
            }
            tree.vertices.push(TreeVertex { level: 0, ev: x.clone(), children: Vec::new() });
            return Ok(Some(tree.vertices.len() - 1));
        }
        let s = self.word[k - 1];
        let xs = self.group.mul_simple(x, s);
        let x_is_lower = x.length() < xs.length();
        let (y, z) = if x_is_lower { (x.clone(), xs) } else { (xs, x.clone()) };
        let has_y = self.in_support(k - 1, &y);
        let has_z = self.in_support(k - 1, &z);
        // (child, color, tilt), left child first.
        let mut branches: Vec<(usize, i8, Tilt)> = Vec::new();
        match (has_y, has_z) {
            (false, false) => return Ok(None),
            (true, true) => {
                let left = self.grow(tree, k - 1, &y)?.expect("nonempty fiber");
                let right = self.grow(tree, k - 1, &z)?.expect("nonempty fiber");
                let (cl, cr) = if x_is_lower { (0, -1) } else { (1, 0) };
                branches.push((left, cl, Tilt::Right));
                branches.push((right, cr, Tilt::Left));
            }
            (true, false) => {
                let child = self.grow(tree, k - 1, &y)?.expect("nonempty fiber");
                branches.push((child, if x_is_lower { 0 } else { 1 }, Tilt::Vertical));
            }
            (false, true) => {
                return Err(Error::InternalInvariant(format!(
                    "fiber of the smaller element {y} is empty while {z} is not (word {}, level {k})",
                    self.word
                )));
            }
        }
        tree.vertices.push(TreeVertex { level: k, ev: x.clone(), children: Vec::new() });
        let upper = tree.vertices.len() - 1;
        for (lower, color, tilt) in branches {
            tree.edges.push(TreeEdge { level: k, letter: s, color, tilt, lower, upper });
            let e = tree.edges.len() - 1;
            tree.vertices[upper].children.push(e);
        }
        Ok(Some(upper))
    }
}

/// `T(s, x)`; empty when `x ∉ J(s)`.
pub fn build_tree(group: &WeylGroup, word: &Word, x: &GroupElement) -> Result<SubwordTree> {
    TreeBuilder::new(group, word).build(x)
}

/// `Σ_π v^{-deg π}` over maximal paths of `T(s, x)`.
pub fn graded_rank(group: &WeylGroup, word: &Word, x: &GroupElement) -> Result<LaurentPoly> {
    Ok(build_tree(group, word, x)?.graded_rank())
}

impl SubwordTree {
    pub fn is_empty(&self) -> bool {
        self.root.is_none()
    }

    fn collect_paths(&self) -> Vec<MaximalPath> {
        let mut out = Vec::new();
        if let Some(root) = self.root {
            let mut stack = Vec::new();
            self.descend(root, &mut stack, &mut out);
        }
        out
    }

    fn descend(&self, v: usize, stack: &mut Vec<usize>, out: &mut Vec<MaximalPath>) {
        let children = &self.vertices[v].children;
        if children.is_empty() {
            let edges: Vec<usize> = stack.iter().rev().copied().collect();
            let mut vertices: Vec<usize> = edges.iter().map(|&e| self.edges[e].lower).collect();
            vertices.push(self.root.unwrap());
            out.push(MaximalPath { edges, vertices });
            return;
        }
        for &e in children {
            stack.push(e);
            self.descend(self.edges[e].lower, stack, out);
            stack.pop();
        }
    }

    /// Maximal paths, left to right.
    pub fn maximal_paths(&self) -> &[MaximalPath] {
        &self.paths
    }

    /// `[π]`: the letter at level `t` is kept iff the level-`t` edge has nonzero color.
    pub fn subsequence(&self, path: &MaximalPath) -> Subsequence {
        path.edges
            .iter()
            .map(|&e| {
                let edge = &self.edges[e];
                (edge.color != 0).then_some(edge.letter)
            })
            .collect()
    }

    pub fn colors(&self, path: &MaximalPath) -> Vec<i8> {
        path.edges.iter().map(|&e| self.edges[e].color).collect()
    }

    /// Twice the number of left tilted edges.
    pub fn path_degree(&self, path: &MaximalPath) -> usize {
        2 * path.edges.iter().filter(|&&e| self.edges[e].tilt == Tilt::Left).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.paths.iter().map(|p| self.path_degree(p)).collect()
    }

    pub fn graded_rank(&self) -> LaurentPoly {
        let mut out = LaurentPoly::zero();
        for p in &self.paths {
            out.add_term(-(self.path_degree(p) as i32), 1);
        }
        out
    }

    /// Image of `ev(a)(α_t)` for the vertex `a` and the simple root of level `t`.
    fn image(&self, group: &WeylGroup, field: Field, vertex: usize, t: usize) -> MultiPoly {
        let alpha = group.datum().simple_root(self.word[t - 1]);
        root_image(field, &group.act(&self.vertices[vertex].ev, &alpha))
    }

    /// `E(s, x)`: entry `(i, j)` is the product `(π_i, π_j)`: over levels `t`
    /// where `π_i` is left tilted, the factor `(ev(π_i,t-1)(α_t) + ev(π_j,t-1)(α_t))/2`.
    pub fn e_matrix(&self, group: &WeylGroup, field: Field) -> Result<GradedMatrix> {
        let n = self.paths.len();
        let nvars = group.rank() + 1;
        let half = MultiPoly::constant(field, nvars, field.from_ratio(1, 2)?);
        let mut entries = vec![vec![MultiPoly::zero(field, nvars); n]; n];
        for (i, pi) in self.paths.iter().enumerate() {
            for (j, pj) in self.paths.iter().enumerate() {
                let mut acc = MultiPoly::one(field, nvars);
                for t in 1..=self.word.len() {
                    if self.edges[pi.edges[t - 1]].tilt != Tilt::Left {
                        continue;
                    }
                    let a = self.image(group, field, pi.vertices[t - 1], t);
                    let b = self.image(group, field, pj.vertices[t - 1], t);
                    let factor = &(&a + &b) * &half;
                    if factor.is_zero() {
                        acc = MultiPoly::zero(field, nvars);
                        break;
                    }
                    acc = &acc * &factor;
                }
                entries[i][j] = acc;
            }
        }
        let degrees: Vec<i64> = self.degrees().into_iter().map(|d| d as i64).collect();
        Ok(GradedMatrix { entries, row_degrees: degrees, col_degrees: vec![0; n] })
    }

    /// The linear factors whose product is the diagonal entry `E_ii`.
    pub fn diagonal_factors(&self, group: &WeylGroup, field: Field, path: &MaximalPath) -> Vec<MultiPoly> {
        (1..=self.word.len())
            .filter(|&t| self.edges[path.edges[t - 1]].tilt == Tilt::Left)
            .map(|t| self.image(group, field, path.vertices[t - 1], t))
            .collect()
    }

    /// `Q_π`: color 1 contributes 1, color 0 contributes `ev(π)(α)`, color −1
    /// contributes `−ev(π)(α)²`, with `ev(π)` read at the upper vertex.
    pub fn q_value(&self, group: &WeylGroup, field: Field, path: &MaximalPath) -> MultiPoly {
        let nvars = group.rank() + 1;
        let mut acc = MultiPoly::one(field, nvars);
        for t in 1..=self.word.len() {
            let a = self.image(group, field, path.vertices[t], t);
            match self.edges[path.edges[t - 1]].color {
                1 => {}
                0 => acc = &acc * &a,
                _ => acc = &acc * &(-&(&a * &a)),
            }
        }
        acc
    }

    pub fn q_values(&self, group: &WeylGroup, field: Field) -> Vec<MultiPoly> {
        self.paths.iter().map(|p| self.q_value(group, field, p)).collect()
    }

    /// `P_π = Π_t ev(π_{≤t})(α_t)`.
    pub fn p_value(&self, group: &WeylGroup, field: Field, path: &MaximalPath) -> MultiPoly {
        let nvars = group.rank() + 1;
        let mut acc = MultiPoly::one(field, nvars);
        for t in 1..=self.word.len() {
            acc = &acc * &self.image(group, field, path.vertices[t], t);
        }
        acc
    }

    /// `D_π`; the color −1 step divides exactly by a root image.
    pub fn d_value(&self, group: &WeylGroup, field: Field, path: &MaximalPath) -> Result<MultiPoly> {
        let nvars = group.rank() + 1;
        let mut acc = MultiPoly::one(field, nvars);
        for t in 1..=self.word.len() {
            let a = self.image(group, field, path.vertices[t], t);
            match self.edges[path.edges[t - 1]].color {
                1 => acc = &acc * &a,
                0 => {}
                _ => {
                    if a.is_zero() {
                        return Err(Error::NonGkmInput {
                            field,
                            witness: format!("root image vanishes at level {t} of T({}, {})", self.word, self.x),
                        });
                    }
                    acc = -&acc.divide_exact_by_linear(&a).map_err(|e| match e {
                        Error::NotDivisible { .. } => Error::NonGkmInput {
                            field,
                            witness: format!("D_π not polynomial at level {t} of T({}, {})", self.word, self.x),
                        },
                        other => other,
                    })?;
                }
            }
        }
        Ok(acc)
    }

    /// Graphviz rendering; leaves at the bottom, colors and letters on edges.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph T {\n  rankdir=BT;\n");
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  v{i} [label=\"{}\"];", v.ev);
        }
        for e in &self.edges {
            let _ = writeln!(
                out,
                "  v{} -> v{} [label=\"{} s{}\", tilt=\"{}\"];",
                e.lower,
                e.upper,
                e.color,
                e.letter,
                e.tilt.name()
            );
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanDatum, CartanType};

    fn group(r: usize) -> WeylGroup {
        WeylGroup::new(CartanDatum::new(CartanType::A, r, false).unwrap())
    }

    fn word(s: &str) -> Word {
        s.parse().unwrap()
    }

    #[test]
    fn fibers_of_121() {
        let g = group(2);
        let fibers = subword_fibers(&g, &word("1,2,1"));
        assert_eq!(fibers[&g.identity()], vec![vec![None, None, None], vec![Some(1), None, Some(1)]]);
        assert_eq!(fibers.values().map(Vec::len).sum::<usize>(), 8);
        let empty = subword_fibers(&g, &Word::empty());
        assert_eq!(empty.len(), 1);
        assert_eq!(empty[&g.identity()], vec![Vec::<Option<usize>>::new()]);
    }

    #[test]
    fn example_tree() {
        let g = group(2);
        let s = word("1,2,1,2,1");
        let x = g.ev_word(&word("2,1"));
        let tree = build_tree(&g, &s, &x).unwrap();
        let subs: Vec<Subsequence> = tree.maximal_paths().iter().map(|p| tree.subsequence(p)).collect();
        let (a, b) = (Some(1), Some(2));
        assert_eq!(
            subs,
            vec![
                vec![None, None, None, b, a],
                vec![a, None, a, b, a],
                vec![None, b, None, None, a],
                vec![None, b, a, None, None],
                vec![a, b, a, b, None],
            ]
        );
        assert_eq!(tree.degrees(), vec![0, 2, 2, 2, 4]);
        assert_eq!(tree.graded_rank().to_string(), "1+3v^-2+v^-4");
    }

    #[test]
    fn trivial_trees() {
        let g = group(2);
        let t = build_tree(&g, &Word::empty(), &g.identity()).unwrap();
        assert_eq!(t.vertices.len(), 1);
        assert_eq!(t.maximal_paths().len(), 1);
        assert!(build_tree(&g, &word("1"), &g.generator(2)).unwrap().is_empty());
        let s = word("1,2,1");
        let t = build_tree(&g, &s, &g.ev_word(&s)).unwrap();
        assert_eq!(t.degrees(), vec![0]);
        assert_eq!(t.graded_rank(), LaurentPoly::one());
    }

    #[test]
    fn two_by_two_matrices() {
        let g = group(2);
        let q = Field::Rational;
        let tree = build_tree(&g, &word("1,2,1"), &g.generator(1)).unwrap();
        let e = tree.e_matrix(&g, q).unwrap();
        let a1 = MultiPoly::linear(q, &[2, -1, 0]);
        let a2 = MultiPoly::linear(q, &[-1, 2, 0]);
        assert_eq!(e.get(0, 0), &MultiPoly::one(q, 3));
        assert_eq!(e.get(0, 1), &MultiPoly::one(q, 3));
        assert!(e.get(1, 0).is_zero());
        assert_eq!(e.get(1, 1), &(-&a1));
        e.check_degrees().unwrap();
        let qs = tree.q_values(&g, q);
        assert_eq!(qs[0], &a1 * &a2);
        assert_eq!(qs[1], -&(&a1 * &(&a1 + &a2)));
    }
}
