//! Graphs, clique complexes and the simplicial operations used to assemble
//! `K(R)`: joins, joins over a subcomplex, links and discrete complexes.

mod clique;
mod facet_io;
mod graph;
mod simplicial;
mod surface;
mod zd;

pub use clique::{clique_complex, clique_complex_with_budget, count_cliques, maximal_cliques};
pub use facet_io::{from_facet_list, read_facet_list, to_facet_list, write_facet_list};
pub use graph::Graph;
pub use simplicial::{FaceTable, SimplicialComplex};
pub use surface::{surface_check, SurfaceFailure, SurfaceReport};
pub use zd::{
    k0_complex, k0_complex_with_budget, k_complex, k_complex_with_budget, zero_divisor_graph,
    zero_product_graph,
};

/// `r` isolated vertices.
pub fn discrete_complex(r: usize) -> SimplicialComplex {
    SimplicialComplex::discrete(r)
}
