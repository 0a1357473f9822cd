//! Maximal clique enumeration (Bron–Kerbosch with Tomita pivoting) on
//! fixed-width bitsets.

use super::{Graph, SimplicialComplex};
use crate::error::{Error, Result};
use crate::DEFAULT_FACE_BUDGET;

#[derive(Clone, PartialEq, Eq)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn empty(n: usize) -> Self {
        BitSet {
            words: vec![0; n.div_ceil(64)],
        }
    }

    fn full(n: usize) -> Self {
        let mut s = Self::empty(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    fn insert(&mut self, v: usize) {
        self.words[v / 64] |= 1 << (v % 64);
    }

    fn remove(&mut self, v: usize) {
        self.words[v / 64] &= !(1 << (v % 64));
    }

    fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        }
    }

    fn and_count(&self, other: &BitSet) -> u32 {
        self.words.iter().zip(&other.words).map(|(a, b)| (a & b).count_ones()).sum()
    }

    fn and_not(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
        }
    }

    fn or(&self, other: &BitSet) -> BitSet {
        BitSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
        }
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let t = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(i * 64 + t)
            })
        })
    }
}

fn adjacency(graph: &Graph) -> Vec<BitSet> {
    let n = graph.vertex_count();
    (0..n)
        .map(|v| {
            let mut s = BitSet::empty(n);
            for &u in graph.neighbors(v) {
                s.insert(u);
            }
            s
        })
        .collect()
}

/// All maximal cliques, each sorted, in lexicographic order.
pub fn maximal_cliques(graph: &Graph) -> Vec<Vec<usize>> {
    let n = graph.vertex_count();
    let adj = adjacency(graph);
    let mut out = Vec::new();
    let mut r = Vec::new();
    expand(&adj, &mut r, BitSet::full(n), BitSet::empty(n), &mut out);
    for c in &mut out {
        c.sort_unstable();
    }
    out.sort();
    out
}

fn expand(adj: &[BitSet], r: &mut Vec<usize>, mut p: BitSet, mut x: BitSet, out: &mut Vec<Vec<usize>>) {
    if p.is_empty() {
        if x.is_empty() && !r.is_empty() {
            out.push(r.clone());
        }
        return;
    }
    let union = p.or(&x);
    let pivot = union
        .iter()
        .max_by_key(|&u| p.and_count(&adj[u]))
        .expect("P is nonempty");
    let candidates: Vec<usize> = p.and_not(&adj[pivot]).iter().collect();
    for v in candidates {
        r.push(v);
        expand(adj, r, p.and(&adj[v]), x.and(&adj[v]), out);
        r.pop();
        p.remove(v);
        x.insert(v);
    }
}

/// Number of nonempty cliques, or `None` once it exceeds `limit`.
pub fn count_cliques(graph: &Graph, limit: usize) -> Option<usize> {
    fn walk(adj: &[BitSet], candidates: &BitSet, count: &mut usize, limit: usize) -> bool {
        for v in candidates.iter() {
            *count += 1;
            if *count > limit {
                return false;
            }
            // extend only with higher-numbered neighbours so each clique is seen once
            let mut next = candidates.and(&adj[v]);
            for u in next.clone().iter().filter(|&u| u <= v) {
                next.remove(u);
            }
            if !walk(adj, &next, count, limit) {
                return false;
            }
        }
        true
    }
    let adj = adjacency(graph);
    let mut count = 0;
    walk(&adj, &BitSet::full(graph.vertex_count()), &mut count, limit).then_some(count)
}

/// Clique complex with the default face budget.
pub fn clique_complex(graph: &Graph) -> Result<SimplicialComplex> {
    clique_complex_with_budget(graph, DEFAULT_FACE_BUDGET)
}

/// Clique complex of `graph`, its facets being the maximal cliques. A graph
/// without vertices gives the void complex.
pub fn clique_complex_with_budget(graph: &Graph, budget: usize) -> Result<SimplicialComplex> {
    if count_cliques(graph, budget).is_none() {
        return Err(Error::BudgetExceeded { budget });
    }
    Ok(SimplicialComplex::from_parts(graph.labels().to_vec(), maximal_cliques(graph)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn named(n: usize) -> Vec<String> {
        (0..n).map(|i| i.to_string()).collect()
    }

    #[test]
    fn triangle_is_one_facet() {
        let g = Graph::from_edges(named(3), &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let k = clique_complex(&g).unwrap();
        assert_eq!(k.facets(), &[vec![0, 1, 2]]);
        assert_eq!(k.dimension(), Some(2));
    }

    #[test]
    fn bipartite_has_edge_facets() {
        let k = clique_complex(&Graph::complete_multipartite(&[2, 4])).unwrap();
        assert_eq!(k.facets().len(), 8);
        assert_eq!(k.dimension(), Some(1));
    }

    #[test]
    fn empty_and_edgeless_graphs() {
        assert!(clique_complex(&Graph::new(vec![])).unwrap().is_void());
        let k = clique_complex(&Graph::new(named(3))).unwrap();
        assert_eq!(k.facets(), &[vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn clique_counts() {
        let g = Graph::complete_multipartite(&[1, 1, 1, 1]);
        assert_eq!(count_cliques(&g, 100), Some(15));
        assert_eq!(count_cliques(&g, 10), None);
        assert!(matches!(clique_complex_with_budget(&g, 10), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn wide_graph_bitsets() {
        // 130 vertices, cycle: every edge is a maximal clique
        let n = 130;
        let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        let g = Graph::from_edges(named(n), &edges).unwrap();
        assert_eq!(maximal_cliques(&g).len(), n);
        assert_eq!(count_cliques(&g, 1000), Some(2 * n));
    }
}
