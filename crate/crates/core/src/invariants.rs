//! Generating hypergraph, generator graph and the sequence invariants read off them.
//!
//! The hypergraph has one hyperedge per generator pair with a nonzero bracket,
//! joining both generators with every center vector in the bracket's support.
//! The generator graph keeps only the generator endpoints.
//!
//! All sequences are computed for the basis as given. They are isomorphism
//! invariants under monomial basis changes; when every root space of a maximal
//! torus is one-dimensional and the basis is a root-vector generating system
//! that reaches every basis of that kind. The two center sequences additionally
//! need a 3-uniform hypergraph and are withheld otherwise.

use std::collections::VecDeque;

use num_traits::Zero;
use serde::Serialize;

use crate::algebra::TwoStepAlgebra;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HyperEdge {
    pub i: usize,
    pub j: usize,
    /// Center indices with a nonzero coefficient, ascending.
    pub centers: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratingHypergraph {
    q: usize,
    p: usize,
    edges: Vec<HyperEdge>,
}

/// A connected component: generator and center vertices, each ascending.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Component {
    pub generators: Vec<usize>,
    pub centers: Vec<usize>,
}

impl Component {
    /// `{x1,x4,x5|y2,y3}`
    pub fn label(&self) -> String {
        let g: Vec<String> = self.generators.iter().map(|i| format!("x{}", i + 1)).collect();
        let c: Vec<String> = self.centers.iter().map(|k| format!("y{}", k + 1)).collect();
        if c.is_empty() {
            format!("{{{}}}", g.join(","))
        } else {
            format!("{{{}|{}}}", g.join(","), c.join(","))
        }
    }
}

pub fn build_hypergraph(alg: &TwoStepAlgebra) -> GeneratingHypergraph {
    let t = alg.tensor();
    let edges = crate::algebra::pairs(t.q())
        .filter_map(|(i, j)| {
            let centers: Vec<usize> = (0..t.p()).filter(|&k| !t.get(i, j, k).is_zero()).collect();
            (!centers.is_empty()).then_some(HyperEdge { i, j, centers })
        })
        .collect();
    let g = GeneratingHypergraph { q: t.q(), p: t.p(), edges };
    debug_assert!(g.uncovered_centers().is_empty(), "validated algebras cover every center");
    g
}

impl GeneratingHypergraph {
    pub fn q(&self) -> usize {
        self.q
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn edges(&self) -> &[HyperEdge] {
        &self.edges
    }

    pub fn is_3_uniform(&self) -> bool {
        self.edges.iter().all(|e| e.centers.len() == 1)
    }

    /// Center vertices lying on no hyperedge.
    pub fn uncovered_centers(&self) -> Vec<usize> {
        (0..self.p)
            .filter(|k| !self.edges.iter().any(|e| e.centers.contains(k)))
            .collect()
    }

    /// Connected components over all `q + p` vertices, ordered by their
    /// smallest generator (center-only components, impossible for validated
    /// algebras, would come last).
    pub fn components(&self) -> Vec<Component> {
        let n = self.q + self.p;
        let mut uf = UnionFind::new(n);
        for e in &self.edges {
            uf.union(e.i, e.j);
            for &k in &e.centers {
                uf.union(e.i, self.q + k);
            }
        }
        let mut groups: Vec<Component> = Vec::new();
        let mut root_of_group: Vec<usize> = Vec::new();
        for v in 0..n {
            let r = uf.find(v);
            let idx = match root_of_group.iter().position(|&x| x == r) {
                Some(idx) => idx,
                None => {
                    root_of_group.push(r);
                    groups.push(Component { generators: Vec::new(), centers: Vec::new() });
                    groups.len() - 1
                }
            };
            if v < self.q {
                groups[idx].generators.push(v);
            } else {
                groups[idx].centers.push(v - self.q);
            }
        }
        groups
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut c = v;
        while self.parent[c] != r {
            let next = self.parent[c];
            self.parent[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Simple graph on the generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorGraph {
    q: usize,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
}

pub fn build_generator_graph(alg: &TwoStepAlgebra) -> GeneratorGraph {
    let h = build_hypergraph(alg);
    GeneratorGraph::new(h.q, h.edges.iter().map(|e| (e.i, e.j)).collect())
}

impl GeneratorGraph {
    pub fn new(q: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adjacency = vec![Vec::new(); q];
        for &(i, j) in &edges {
            assert!(i != j && i < q && j < q, "simple graph edge");
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        GeneratorGraph { q, edges, adjacency }
    }

    pub fn q(&self) -> usize {
        self.q
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn degrees(&self) -> Vec<usize> {
        self.adjacency.iter().map(Vec::len).collect()
    }

    /// Vertex sets of the components, isolated vertices included.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.q];
        let mut out = Vec::new();
        for s in 0..self.q {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut stack = vec![s];
            while let Some(v) = stack.pop() {
                for &w in &self.adjacency[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        stack.push(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

/// Length of a shortest cycle; `None` for a forest.
pub fn girth(g: &GeneratorGraph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in 0..g.q {
        let mut dist = vec![usize::MAX; g.q];
        let mut parent = vec![usize::MAX; g.q];
        dist[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            if best.is_some_and(|b| 2 * dist[v] + 1 >= b) {
                break;
            }
            for &w in &g.adjacency[v] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = dist[v] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Sorted degree sequence of the generator graph.
pub fn related_sequence(alg: &TwoStepAlgebra) -> Vec<usize> {
    let mut d = build_generator_graph(alg).degrees();
    d.sort_unstable();
    d
}

/// Sorted component sizes of the generator graph.
pub fn generator_relation_sequence(alg: &TwoStepAlgebra) -> Vec<usize> {
    let mut sizes: Vec<usize> = build_generator_graph(alg)
        .components()
        .iter()
        .map(Vec::len)
        .collect();
    sizes.sort_unstable();
    sizes
}

/// Per center vector, the number of hyperedges through it; sorted.
pub fn center_related_sequence(alg: &TwoStepAlgebra) -> Result<Vec<usize>> {
    let h = build_hypergraph(alg);
    if !h.is_3_uniform() {
        return Err(Error::NotThreeUniform);
    }
    let mut counts = vec![0usize; h.p];
    for e in &h.edges {
        counts[e.centers[0]] += 1;
    }
    counts.sort_unstable();
    Ok(counts)
}

/// Per center vector `y_k`, the sum over hyperedges `(x_i, x_j, y_k)` of
/// `d(x_i) + d(x_j)` in the generator graph; sorted.
pub fn weighted_center_related_sequence(alg: &TwoStepAlgebra) -> Result<Vec<usize>> {
    let h = build_hypergraph(alg);
    if !h.is_3_uniform() {
        return Err(Error::NotThreeUniform);
    }
    let g = GeneratorGraph::new(h.q, h.edges.iter().map(|e| (e.i, e.j)).collect());
    let mut weights = vec![0usize; h.p];
    for e in &h.edges {
        weights[e.centers[0]] += g.degree(e.i) + g.degree(e.j);
    }
    weights.sort_unstable();
    Ok(weights)
}

/// Every invariant this module computes, for side-by-side comparison.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub q: usize,
    pub p: usize,
    pub related_sequence: Vec<usize>,
    pub generator_relation_sequence: Vec<usize>,
    pub center_related_sequence: Option<Vec<usize>>,
    pub weighted_center_related_sequence: Option<Vec<usize>>,
    pub girth: Option<usize>,
    pub uniform3: bool,
}

pub fn fingerprint(alg: &TwoStepAlgebra) -> Fingerprint {
    let g = build_generator_graph(alg);
    let uniform3 = build_hypergraph(alg).is_3_uniform();
    Fingerprint {
        q: alg.q(),
        p: alg.p(),
        related_sequence: related_sequence(alg),
        generator_relation_sequence: generator_relation_sequence(alg),
        center_related_sequence: center_related_sequence(alg).ok(),
        weighted_center_related_sequence: weighted_center_related_sequence(alg).ok(),
        girth: girth(&g),
        uniform3,
    }
}

impl Fingerprint {
    /// First invariant on which two fingerprints differ, comparing only what
    /// both sides computed. `None` means the fingerprints do not separate them.
    pub fn first_difference(&self, other: &Fingerprint) -> Option<String> {
        fn seq(v: &[usize]) -> String {
            let s: Vec<String> = v.iter().map(usize::to_string).collect();
            format!("({})", s.join(","))
        }
        fn opt(v: Option<usize>) -> String {
            v.map_or("none (acyclic)".into(), |g| g.to_string())
        }
        if (self.q, self.p) != (other.q, other.p) {
            return Some(format!(
                "signature (q,p) = ({},{}) vs ({},{})",
                self.q, self.p, other.q, other.p
            ));
        }
        if self.related_sequence != other.related_sequence {
            return Some(format!(
                "related sequence {} vs {}",
                seq(&self.related_sequence),
                seq(&other.related_sequence)
            ));
        }
        if self.generator_relation_sequence != other.generator_relation_sequence {
            return Some(format!(
                "generator relation sequence {} vs {}",
                seq(&self.generator_relation_sequence),
                seq(&other.generator_relation_sequence)
            ));
        }
        if let (Some(a), Some(b)) = (&self.center_related_sequence, &other.center_related_sequence) {
            if a != b {
                return Some(format!("center related sequence {} vs {}", seq(a), seq(b)));
            }
        }
        if let (Some(a), Some(b)) = (
            &self.weighted_center_related_sequence,
            &other.weighted_center_related_sequence,
        ) {
            if a != b {
                return Some(format!("weighted center related sequence {} vs {}", seq(a), seq(b)));
            }
        }
        if self.girth != other.girth {
            return Some(format!("girth {} vs {}", opt(self.girth), opt(other.girth)));
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{parse_bracket_table, validate};

    fn alg(q: usize, p: usize, table: &str) -> TwoStepAlgebra {
        validate(parse_bracket_table(q, p, table).unwrap()).unwrap()
    }

    fn n82_1() -> TwoStepAlgebra {
        alg(6, 2, "[x1,x2]=y1; [x3,x4]=y2; [x5,x6]=y1+y2")
    }

    #[test]
    fn hypergraph_edges() {
        let h = build_hypergraph(&n82_1());
        let edges: Vec<(usize, usize, Vec<usize>)> =
            h.edges().iter().map(|e| (e.i, e.j, e.centers.clone())).collect();
        assert_eq!(edges, vec![(0, 1, vec![0]), (2, 3, vec![1]), (4, 5, vec![0, 1])]);
        assert!(!h.is_3_uniform());
        assert!(h.is_connected());

        let heis = build_hypergraph(&alg(2, 1, "[x1,x2]=y1"));
        assert_eq!(heis.edges().len(), 1);
    }

    #[test]
    fn split_components() {
        let g = alg(5, 3, "[x1,x4]=y2; [x1,x5]=y3; [x2,x3]=y1");
        let comps = build_hypergraph(&g).components();
        assert_eq!(
            comps,
            vec![
                Component { generators: vec![0, 3, 4], centers: vec![1, 2] },
                Component { generators: vec![1, 2], centers: vec![0] },
            ]
        );
        assert_eq!(comps[0].label(), "{x1,x4,x5|y2,y3}");
    }

    #[test]
    fn isolated_generator_is_its_own_component() {
        let g = alg(3, 1, "[x1,x2]=y1");
        let comps = build_hypergraph(&g).components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[1], Component { generators: vec![2], centers: vec![] });
        assert_eq!(generator_relation_sequence(&g), vec![1, 2]);
    }

    #[test]
    fn sequences_of_n82_1() {
        let a = n82_1();
        assert_eq!(related_sequence(&a), vec![1; 6]);
        assert_eq!(generator_relation_sequence(&a), vec![2, 2, 2]);
        assert_eq!(center_related_sequence(&a), Err(Error::NotThreeUniform));
        assert_eq!(weighted_center_related_sequence(&a), Err(Error::NotThreeUniform));
        let f = fingerprint(&a);
        assert!(!f.uniform3);
        assert!(f.center_related_sequence.is_none());
    }

    #[test]
    fn heisenberg_sequences() {
        let h = alg(2, 1, "[x1,x2]=y1");
        assert_eq!(related_sequence(&h), vec![1, 1]);
        assert_eq!(generator_relation_sequence(&h), vec![2]);
        assert_eq!(weighted_center_related_sequence(&h).unwrap(), vec![2]);
    }

    #[test]
    fn girth_cases() {
        let tree = GeneratorGraph::new(4, vec![(0, 1), (1, 2), (1, 3)]);
        assert_eq!(girth(&tree), None);
        let square = GeneratorGraph::new(4, vec![(0, 1), (1, 2), (2, 3), (3, 0)]);
        assert_eq!(girth(&square), Some(4));
        let tri_and_square =
            GeneratorGraph::new(7, vec![(0, 1), (1, 2), (2, 3), (3, 0), (4, 5), (5, 6), (6, 4)]);
        assert_eq!(girth(&tri_and_square), Some(3));
        let pentagon = GeneratorGraph::new(5, (0..5).map(|i| (i, (i + 1) % 5)).collect());
        assert_eq!(girth(&pentagon), Some(5));
    }

    #[test]
    fn related_sequence_sums_to_twice_edges() {
        let a = alg(5, 3, "[x1,x5]=y1; [x4,x2]=y1; [x5,x3]=y2; [x3,x4]=y3");
        let g = build_generator_graph(&a);
        assert_eq!(related_sequence(&a).iter().sum::<usize>(), 2 * g.edges().len());
    }
}
