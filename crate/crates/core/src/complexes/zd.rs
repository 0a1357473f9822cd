//! Zero-divisor graphs and the complexes `K(R)` and `K0(R)`.

use super::clique::clique_complex_with_budget;
use super::{Graph, SimplicialComplex};
use crate::error::Result;
use crate::rings::{Elem, FiniteRing};
use crate::DEFAULT_FACE_BUDGET;

/// Graph on `elements` with `{a, b}` an edge when `a != b` and `ab = 0`.
/// Vertex labels are the ring's element labels.
pub fn zero_product_graph(ring: &FiniteRing, elements: &[Elem]) -> Graph {
    let labels = elements.iter().map(|&a| ring.label(a).to_string()).collect();
    let mut g = Graph::new(labels);
    for (i, &a) in elements.iter().enumerate() {
        for (j, &b) in elements.iter().enumerate().skip(i + 1) {
            if ring.mul(a, b) == ring.zero() {
                g.add_edge(i, j).expect("indices in range");
            }
        }
    }
    g
}

/// `Γ(R)`: the zero-product graph on the nonzero zero divisors.
pub fn zero_divisor_graph(ring: &FiniteRing) -> Graph {
    zero_product_graph(ring, &ring.zero_divisors())
}

/// `K(R)`, the clique complex of `Γ(R)`. A field gives the void complex.
pub fn k_complex(ring: &FiniteRing) -> Result<SimplicialComplex> {
    k_complex_with_budget(ring, DEFAULT_FACE_BUDGET)
}

pub fn k_complex_with_budget(ring: &FiniteRing, budget: usize) -> Result<SimplicialComplex> {
    clique_complex_with_budget(&zero_divisor_graph(ring), budget)
}

/// `K0(R)`: vertices are all nonzero elements, faces are the sets with
/// pairwise zero products. Units are isolated vertices.
pub fn k0_complex(ring: &FiniteRing) -> Result<SimplicialComplex> {
    k0_complex_with_budget(ring, DEFAULT_FACE_BUDGET)
}

pub fn k0_complex_with_budget(ring: &FiniteRing, budget: usize) -> Result<SimplicialComplex> {
    let nonzero: Vec<Elem> = (0..ring.order()).filter(|&a| a != ring.zero()).collect();
    clique_complex_with_budget(&zero_product_graph(ring, &nonzero), budget)
}
