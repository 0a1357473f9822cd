use crate::error::{Error, Result};

/// Simple undirected graph on labelled vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    labels: Vec<String>,
    neighbors: Vec<Vec<usize>>,
}

impl Graph {
    /// Graph with the given vertices and no edges.
    pub fn new(labels: Vec<String>) -> Self {
        let n = labels.len();
        Graph {
            labels,
            neighbors: vec![Vec::new(); n],
        }
    }

    pub fn from_edges(labels: Vec<String>, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(labels);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    /// Adds `{a, b}`; loops are rejected, repeated edges ignored.
    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<()> {
        let n = self.labels.len();
        if a >= n || b >= n {
            return Err(Error::invalid(format!("edge ({a}, {b}) out of range")));
        }
        if a == b {
            return Err(Error::invalid("loops are not allowed"));
        }
        for (x, y) in [(a, b), (b, a)] {
            if let Err(pos) = self.neighbors[x].binary_search(&y) {
                self.neighbors[x].insert(pos, y);
            }
        }
        Ok(())
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.neighbors[a].binary_search(&b).is_ok()
    }

    /// Edges `(a, b)` with `a < b`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(a, ns)| ns.iter().filter(move |&&b| b > a).map(move |&b| (a, b)))
            .collect()
    }

    /// Graph join: disjoint union plus every edge between the two sides.
    /// Labels get the prefixes `L:` and `R:`.
    pub fn join(&self, other: &Graph) -> Graph {
        let offset = self.labels.len();
        let mut labels: Vec<String> = self.labels.iter().map(|l| format!("L:{l}")).collect();
        labels.extend(other.labels.iter().map(|l| format!("R:{l}")));
        let mut neighbors = Vec::with_capacity(labels.len());
        for ns in &self.neighbors {
            let mut v = ns.clone();
            v.extend(offset..offset + other.labels.len());
            neighbors.push(v);
        }
        for ns in &other.neighbors {
            let mut v: Vec<usize> = (0..offset).collect();
            v.extend(ns.iter().map(|x| x + offset));
            neighbors.push(v);
        }
        Graph { labels, neighbors }
    }

    /// `K_{m1,...,mr}`; vertex `j` of part `i` is labelled `"i.j"`.
    pub fn complete_multipartite(parts: &[usize]) -> Graph {
        let mut labels = Vec::new();
        let mut part_of = Vec::new();
        for (i, &m) in parts.iter().enumerate() {
            for j in 0..m {
                labels.push(format!("{i}.{j}"));
                part_of.push(i);
            }
        }
        let n = labels.len();
        let neighbors = (0..n)
            .map(|a| (0..n).filter(|&b| part_of[a] != part_of[b]).collect())
            .collect();
        Graph { labels, neighbors }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edges_and_join() {
        let g = Graph::from_edges(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert!(g.clone().add_edge(0, 0).is_err());
        let j = g.join(&Graph::new(vec!["z".into()]));
        assert_eq!(j.edge_count(), 1 + 3);
        assert!(j.adjacent(2, 3));
        assert_eq!(Graph::complete_multipartite(&[2, 4]).edge_count(), 8);
    }
}
