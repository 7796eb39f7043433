//! Bruhat moment graphs on lower intervals, with labels reduced into a field.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::exactalg::{Field, MultiPoly};
use crate::rootsys::AffineRoot;
use crate::weyl::{GroupElement, WeylGroup};

/// Directed edge `from → to` with `to = s_label · from` and `from < to`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub from: usize,
    pub to: usize,
    pub label: AffineRoot,
    /// Weight-basis coordinates plus level, reduced into the field
    /// (residues in `0..p` for positive characteristic).
    pub image: Vec<i64>,
}

#[derive(Clone, Debug)]
pub struct MomentGraph {
    field: Field,
    nvars: usize,
    vertices: Vec<GroupElement>,
    index: HashMap<GroupElement, usize>,
    edges: Vec<Edge>,
    incoming: Vec<Vec<usize>>,
    outgoing: Vec<Vec<usize>>,
}

/// Two edges at a common vertex whose labels are proportional.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GkmViolation {
    pub vertex: usize,
    pub edges: (usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct GkmReport {
    pub violations: Vec<GkmViolation>,
}

impl GkmReport {
    pub fn passes(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Reduces integer coordinates into the field's canonical representatives.
pub fn reduce_coords(field: Field, coords: &[i64]) -> Vec<i64> {
    match field {
        Field::Rational => coords.to_vec(),
        Field::Prime(p) => coords.iter().map(|c| c.rem_euclid(p as i64)).collect(),
    }
}

/// Whether two coordinate vectors are proportional over the field: every
/// 2×2 minor vanishes.
pub fn proportional(field: Field, a: &[i64], b: &[i64]) -> bool {
    let n = a.len();
    for i in 0..n {
        for j in i + 1..n {
            let minor = a[i] as i128 * b[j] as i128 - a[j] as i128 * b[i] as i128;
            let vanishes = match field {
                Field::Rational => minor == 0,
                Field::Prime(p) => minor.rem_euclid(p as i128) == 0,
            };
            if !vanishes {
                return false;
            }
        }
    }
    true
}

/// The image of a root in `S`, as a linear form in `w1..wr, d`.
pub fn root_image(field: Field, beta: &AffineRoot) -> MultiPoly {
    MultiPoly::linear(field, beta.weights())
}

/// `D(x)` computed directly from the left inversion set of `x`.
pub fn d_of_element(group: &WeylGroup, field: Field, x: &GroupElement) -> MultiPoly {
    let nvars = group.rank() + 1;
    let mut acc = MultiPoly::one(field, nvars);
    for beta in group.left_inversions(x) {
        acc = &acc * &(-&root_image(field, &beta));
    }
    acc
}

impl MomentGraph {
    /// The full subgraph of the Bruhat graph on `{x ≤ w}`.
    pub fn interval(group: &WeylGroup, w: &GroupElement, field: Field) -> Result<MomentGraph> {
        let vertices = group.bruhat_interval(w);
        let index: HashMap<GroupElement, usize> =
            vertices.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        let mut edges = Vec::new();
        let mut incoming = vec![Vec::new(); vertices.len()];
        let mut outgoing = vec![Vec::new(); vertices.len()];
        for (to, y) in vertices.iter().enumerate() {
            for beta in group.left_inversions(y) {
                let x = group.mul(&group.reflection(&beta), y);
                let from = *index.get(&x).ok_or_else(|| Error::IncompleteInterval(y.to_string()))?;
                let image = reduce_coords(field, beta.weights());
                if image.iter().all(|&c| c == 0) {
                    return Err(Error::ZeroLabel(beta.to_string()));
                }
                incoming[to].push(edges.len());
                outgoing[from].push(edges.len());
                edges.push(Edge { from, to, label: beta, image });
            }
        }
        Ok(MomentGraph { field, nvars: group.rank() + 1, vertices, index, edges, incoming, outgoing })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn vertices(&self) -> &[GroupElement] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_index(&self, x: &GroupElement) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// Indices of edges ending at vertex `v`.
    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    /// Indices of edges starting at vertex `v`.
    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn gkm_check(&self) -> GkmReport {
        let mut violations = Vec::new();
        for v in 0..self.vertices.len() {
            let incident: Vec<usize> = self.incoming[v].iter().chain(&self.outgoing[v]).copied().collect();
            for (a, &e) in incident.iter().enumerate() {
                for &f in &incident[a + 1..] {
                    if proportional(self.field, &self.edges[e].image, &self.edges[f].image) {
                        violations.push(GkmViolation { vertex: v, edges: (e.min(f), e.max(f)) });
                    }
                }
            }
        }
        GkmReport { violations }
    }

    /// Fails with `NonGkmInput` carrying the first violation as witness.
    pub fn require_gkm(&self) -> Result<()> {
        match self.gkm_check().violations.first() {
            None => Ok(()),
            Some(v) => {
                let (e, f) = (&self.edges[v.edges.0], &self.edges[v.edges.1]);
                Err(Error::NonGkmInput {
                    field: self.field,
                    witness: format!("labels {} and {} at vertex {}", e.label, f.label, self.vertices[v.vertex]),
                })
            }
        }
    }

    /// `D(x)`: product of the negated labels of all edges ending at `x`.
    pub fn d_of_x(&self, group: &WeylGroup, x: &GroupElement) -> Result<MultiPoly> {
        let v = self.vertex_index(x).ok_or_else(|| Error::IncompleteInterval(x.to_string()))?;
        // Every edge of the full Bruhat graph that ends at x must be present.
        for beta in group.left_inversions(x) {
            let lower = group.mul(&group.reflection(&beta), x);
            if self.vertex_index(&lower).is_none() {
                return Err(Error::IncompleteInterval(x.to_string()));
            }
        }
        let mut acc = MultiPoly::one(self.field, self.nvars);
        for &e in &self.incoming[v] {
            acc = &acc * &(-&root_image(self.field, &self.edges[e].label));
        }
        Ok(acc)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{CartanDatum, CartanType};

    fn group(r: usize, affine: bool) -> WeylGroup {
        WeylGroup::new(CartanDatum::new(CartanType::A, r, affine).unwrap())
    }

    #[test]
    fn small_graphs() {
        let g = group(2, false);
        let trivial = MomentGraph::interval(&g, &g.identity(), Field::Rational).unwrap();
        assert_eq!((trivial.vertices().len(), trivial.edges().len()), (1, 0));
        assert!(trivial.gkm_check().passes());

        let w0 = g.longest_element().unwrap();
        let full = MomentGraph::interval(&g, &w0, Field::Rational).unwrap();
        assert_eq!((full.vertices().len(), full.edges().len()), (6, 9));
        assert!(full.gkm_check().passes());

        let s1 = g.generator(1);
        let one = MomentGraph::interval(&g, &s1, Field::Rational).unwrap();
        assert_eq!(one.edges().len(), 1);
        assert_eq!(one.edges()[0].label, g.datum().simple_root(1));
        assert!(one.edges().iter().all(|e| one.vertices()[e.from] < one.vertices()[e.to]));
    }

    #[test]
    fn d_values() {
        let g = group(2, false);
        let w0 = g.longest_element().unwrap();
        let graph = MomentGraph::interval(&g, &w0, Field::Rational).unwrap();
        assert!(graph.d_of_x(&g, &g.identity()).unwrap().is_one());
        let a1 = root_image(Field::Rational, &g.datum().simple_root(1));
        assert_eq!(graph.d_of_x(&g, &g.generator(1)).unwrap(), -&a1);
        for x in graph.vertices() {
            let d = graph.d_of_x(&g, x).unwrap();
            assert_eq!(d.homogeneous_degree().unwrap() as usize, 2 * x.length());
            assert_eq!(d, d_of_element(&g, Field::Rational, x));
        }
        let small = MomentGraph::interval(&g, &g.generator(1), Field::Rational).unwrap();
        assert!(matches!(small.d_of_x(&g, &w0), Err(Error::IncompleteInterval(_))));
    }

    #[test]
    fn proportionality() {
        assert!(proportional(Field::Rational, &[2, -1, 0], &[-4, 2, 0]));
        assert!(!proportional(Field::Rational, &[2, -1, 0], &[-1, 2, 0]));
        assert!(proportional(Field::Prime(3), &[2, -1, 0], &[-1, 2, 0]));
    }
}
