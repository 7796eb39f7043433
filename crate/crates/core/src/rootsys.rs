//! Finite irreducible root systems, their untwisted affinizations, and the
//! reflection action on affine roots.

use std::collections::HashSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Cartan type letter.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CartanType {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
}

impl CartanType {
    pub fn parse(s: &str) -> Result<CartanType> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "A" => CartanType::A,
            "B" => CartanType::B,
            "C" => CartanType::C,
            "D" => CartanType::D,
            "E" => CartanType::E,
            "F" => CartanType::F,
            "G" => CartanType::G,
            _ => return Err(Error::UnsupportedType { label: s.to_string(), rank: 0 }),
        })
    }
}

impl fmt::Display for CartanType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An affine root `α + nδ`. For finite computations the level is 0.
///
/// `weights` caches the coordinates `⟨α, α_i^∨⟩` followed by the level.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AffineRoot {
    pub root: Vec<i64>,
    pub level: i64,
    weights: Vec<i64>,
}

impl AffineRoot {
    /// Weight-basis coordinates plus the δ-coordinate.
    pub fn weights(&self) -> &[i64] {
        &self.weights
    }

    pub fn neg(&self) -> AffineRoot {
        AffineRoot {
            root: self.root.iter().map(|c| -c).collect(),
            level: -self.level,
            weights: self.weights.iter().map(|c| -c).collect(),
        }
    }
}

impl fmt::Display for AffineRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coords: Vec<String> = self.root.iter().map(|c| c.to_string()).collect();
        write!(f, "[{}]{:+}d", coords.join(","), self.level)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CartanDatum {
    kind: CartanType,
    rank: usize,
    affine: bool,
    /// `gram[i][j] = (α_i, α_j)`, integral and symmetric.
    gram: Vec<Vec<i64>>,
    /// `cartan[i][j] = ⟨α_i, α_j^∨⟩`.
    cartan: Vec<Vec<i64>>,
    positive: Vec<Vec<i64>>,
    highest: Vec<i64>,
}

fn link(g: &mut [Vec<i64>], i: usize, j: usize, v: i64) {
    g[i][j] = v;
    g[j][i] = v;
}

/// Simply laced chain on the first `n` nodes.
fn chain(g: &mut [Vec<i64>], n: usize) {
    for i in 0..n {
        g[i][i] = 2;
    }
    for i in 1..n {
        link(g, i - 1, i, -1);
    }
}

fn gram_matrix(kind: CartanType, r: usize) -> Option<Vec<Vec<i64>>> {
    let mut g = vec![vec![0i64; r]; r];
    match (kind, r) {
        (CartanType::A, r) if r >= 1 => chain(&mut g, r),
        (CartanType::B, r) if r >= 2 => {
            chain(&mut g, r);
            g[r - 1][r - 1] = 1;
        }
        (CartanType::C, r) if r >= 2 => {
            chain(&mut g, r);
            g[r - 1][r - 1] = 4;
            link(&mut g, r - 2, r - 1, -2);
        }
        (CartanType::D, r) if r >= 4 => {
            chain(&mut g, r - 1);
            g[r - 1][r - 1] = 2;
            link(&mut g, r - 3, r - 1, -1);
        }
        (CartanType::E, r) if (6..=8).contains(&r) => {
            // Bourbaki labelling: 1-3-4-5-6-7-8 with 2 attached to 4.
            for i in 0..r {
                g[i][i] = 2;
            }
            link(&mut g, 0, 2, -1);
            link(&mut g, 1, 3, -1);
            for i in 2..r - 1 {
                link(&mut g, i, i + 1, -1);
            }
        }
        (CartanType::F, 4) => {
            g[0][0] = 4;
            g[1][1] = 4;
            g[2][2] = 2;
            g[3][3] = 2;
            link(&mut g, 0, 1, -2);
            link(&mut g, 1, 2, -2);
            link(&mut g, 2, 3, -1);
        }
        (CartanType::G, 2) => {
            g[0][0] = 2;
            g[1][1] = 6;
            link(&mut g, 0, 1, -3);
        }
        _ => return None,
    }
    Some(g)
}

impl CartanDatum {
    pub fn new(kind: CartanType, rank: usize, affine: bool) -> Result<CartanDatum> {
        let gram = gram_matrix(kind, rank)
            .ok_or_else(|| Error::UnsupportedType { label: kind.to_string(), rank })?;
        let cartan = (0..rank)
            .map(|i| (0..rank).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let mut datum = CartanDatum { kind, rank, affine, gram, cartan, positive: Vec::new(), highest: Vec::new() };
        datum.positive = datum.close_positive_roots();
        datum.highest = datum
            .positive
            .iter()
            .max_by_key(|b| b.iter().sum::<i64>())
            .cloned()
            .expect("at least one root");
        Ok(datum)
    }

    /// Builds a datum from a type letter such as `"A"`.
    pub fn from_label(label: &str, rank: usize, affine: bool) -> Result<CartanDatum> {
        let kind = CartanType::parse(label).map_err(|_| Error::UnsupportedType { label: label.to_string(), rank })?;
        CartanDatum::new(kind, rank, affine)
    }

    pub fn kind(&self) -> CartanType {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_affine(&self) -> bool {
        self.affine
    }

    pub fn cartan_matrix(&self) -> &[Vec<i64>] {
        &self.cartan
    }

    pub fn positive_roots(&self) -> &[Vec<i64>] {
        &self.positive
    }

    pub fn highest_root(&self) -> &[i64] {
        &self.highest
    }

    /// Valid simple reflection indices: `1..=r`, plus `0` in the affine case.
    pub fn simple_indices(&self) -> Vec<usize> {
        let start = if self.affine { 0 } else { 1 };
        (start..=self.rank).collect()
    }

    fn form(&self, a: &[i64], b: &[i64]) -> i64 {
        let mut s = 0;
        for i in 0..self.rank {
            if a[i] == 0 {
                continue;
            }
            for j in 0..self.rank {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    /// `⟨a, b^∨⟩` for finite parts in the simple-root basis.
    pub fn coroot_pairing(&self, a: &[i64], b: &[i64]) -> i64 {
        let num = 2 * self.form(a, b);
        let den = self.form(b, b);
        debug_assert_eq!(num % den, 0, "pairing with a non-root");
        num / den
    }

    pub fn is_root(&self, finite: &[i64]) -> bool {
        let negated: Vec<i64> = finite.iter().map(|c| -c).collect();
        self.positive.iter().any(|b| b == finite || *b == negated)
    }

    fn close_positive_roots(&self) -> Vec<Vec<i64>> {
        let r = self.rank;
        let unit = |i: usize| {
            let mut v = vec![0; r];
            v[i] = 1;
            v
        };
        let mut roots: Vec<Vec<i64>> = (0..r).map(unit).collect();
        let mut seen: HashSet<Vec<i64>> = roots.iter().cloned().collect();
        let mut k = 0;
        while k < roots.len() {
            let beta = roots[k].clone();
            for i in 0..r {
                // α_i-string through β: p - q = ⟨β, α_i^∨⟩.
                let mut p = 0;
                let mut down = beta.clone();
                loop {
                    down[i] -= 1;
                    if seen.contains(&down) {
                        p += 1;
                    } else {
                        break;
                    }
                }
                let q = p - self.coroot_pairing(&beta, &unit(i));
                if q > 0 {
                    let mut up = beta.clone();
                    up[i] += 1;
                    if seen.insert(up.clone()) {
                        roots.push(up);
                    }
                }
            }
            k += 1;
        }
        roots.sort_by_key(|b| (b.iter().sum::<i64>(), std::cmp::Reverse(b.clone())));
        roots
    }

    /// Builds `α + nδ`, caching weight coordinates.
    pub fn affine_root(&self, root: Vec<i64>, level: i64) -> AffineRoot {
        assert_eq!(root.len(), self.rank, "root has wrong arity");
        let mut weights: Vec<i64> = (0..self.rank)
            .map(|j| (0..self.rank).map(|i| root[i] * self.cartan[i][j]).sum())
            .collect();
        weights.push(level);
        AffineRoot { root, level, weights }
    }

    /// The simple root with index `i`; index 0 is `(−θ, 1)`.
    pub fn simple_root(&self, i: usize) -> AffineRoot {
        if i == 0 {
            self.affine_root(self.highest.iter().map(|c| -c).collect(), 1)
        } else {
            let mut v = vec![0; self.rank];
            v[i - 1] = 1;
            self.affine_root(v, 0)
        }
    }

    pub fn affine_simple_system(&self) -> Vec<AffineRoot> {
        self.simple_indices().into_iter().map(|i| self.simple_root(i)).collect()
    }

    /// `⟨β, α⟩′`: the Cartan pairing of finite parts, levels discarded.
    pub fn pairing_prime(&self, beta: &AffineRoot, alpha: &AffineRoot) -> i64 {
        self.coroot_pairing(&beta.root, &alpha.root)
    }

    /// `s_α(β) = β − ⟨β,α⟩′α`.
    pub fn reflect(&self, beta: &AffineRoot, alpha: &AffineRoot) -> AffineRoot {
        let k = self.pairing_prime(beta, alpha);
        let root = beta.root.iter().zip(&alpha.root).map(|(b, a)| b - k * a).collect();
        self.affine_root(root, beta.level - k * alpha.level)
    }

    pub fn is_positive(&self, beta: &AffineRoot) -> bool {
        beta.level > 0 || (beta.level == 0 && beta.root.iter().all(|&c| c >= 0) && beta.root.iter().any(|&c| c > 0))
    }

    /// The positive representative of `±β`.
    pub fn positive_part(&self, beta: &AffineRoot) -> AffineRoot {
        if self.is_positive(beta) {
            beta.clone()
        } else {
            beta.neg()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(r: usize, affine: bool) -> CartanDatum {
        CartanDatum::new(CartanType::A, r, affine).unwrap()
    }

    #[test]
    fn cartan_matrices() {
        assert_eq!(a(2, false).cartan_matrix(), &[vec![2, -1], vec![-1, 2]]);
        assert_eq!(a(1, false).cartan_matrix(), &[vec![2]]);
        assert!(CartanType::parse("Z").is_err());
        assert!(matches!(CartanDatum::from_label("Z", 3, false), Err(Error::UnsupportedType { .. })));
        assert!(CartanDatum::new(CartanType::D, 3, false).is_err());
    }

    #[test]
    fn positive_root_counts() {
        let d = a(2, false);
        assert_eq!(d.positive_roots(), &[vec![1, 0], vec![0, 1], vec![1, 1]]);
        assert_eq!(d.highest_root(), &[1, 1]);
        assert_eq!(a(1, false).positive_roots(), &[vec![1]]);
        for r in 1..=6 {
            assert_eq!(a(r, false).positive_roots().len(), r * (r + 1) / 2);
        }
        let counts = [
            (CartanType::B, 3, 9),
            (CartanType::C, 3, 9),
            (CartanType::D, 4, 12),
            (CartanType::E, 6, 36),
            (CartanType::E, 7, 63),
            (CartanType::E, 8, 120),
            (CartanType::F, 4, 24),
            (CartanType::G, 2, 6),
        ];
        for (kind, r, n) in counts {
            assert_eq!(CartanDatum::new(kind, r, false).unwrap().positive_roots().len(), n, "{kind}{r}");
        }
        assert_eq!(CartanDatum::new(CartanType::G, 2, false).unwrap().highest_root(), &[3, 2]);
    }

    #[test]
    fn pairings() {
        let d = a(2, false);
        let (a1, a2) = (d.simple_root(1), d.simple_root(2));
        assert_eq!(d.pairing_prime(&a1, &a1), 2);
        assert_eq!(d.pairing_prime(&a2, &a1), -1);
        let lifted = d.affine_root(vec![1, 0], 5);
        assert_eq!(d.pairing_prime(&lifted, &a2), -1);
    }

    #[test]
    fn reflections() {
        let d = a(2, false);
        let (a1, a2) = (d.simple_root(1), d.simple_root(2));
        assert_eq!(d.reflect(&a2, &a1), d.affine_root(vec![1, 1], 0));
        assert_eq!(d.reflect(&a1, &a1), a1.neg());
        let aff = a(1, true);
        let (alpha, alpha0) = (aff.simple_root(1), aff.simple_root(0));
        assert_eq!(alpha0, aff.affine_root(vec![-1], 1));
        assert_eq!(aff.reflect(&alpha0, &alpha), aff.affine_root(vec![1], 1));
    }

    #[test]
    fn positivity() {
        let aff = a(1, true);
        assert_eq!(aff.affine_simple_system(), vec![aff.affine_root(vec![-1], 1), aff.affine_root(vec![1], 0)]);
        assert!(aff.is_positive(&aff.affine_root(vec![-1], 1)));
        assert!(aff.is_positive(&aff.affine_root(vec![1], 0)));
        assert!(!aff.is_positive(&aff.affine_root(vec![-1], 0)));
    }

    #[test]
    fn weight_coordinates() {
        let d = a(2, true);
        assert_eq!(d.simple_root(1).weights(), &[2, -1, 0]);
        assert_eq!(d.simple_root(0).weights(), &[-1, -1, 1]);
        assert_eq!(d.simple_root(1).to_string(), "[1,0]+0d");
    }
}
