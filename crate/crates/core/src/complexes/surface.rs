use std::fmt;
use std::collections::HashMap;

use serde::Serialize;

use super::SimplicialComplex;

/// Why a complex fails to be a closed triangulated surface.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SurfaceFailure {
    WrongDimension { dimension: Option<isize> },
    NotPure { lower_facets: Vec<Vec<String>> },
    EdgeDegree { edge: Vec<String>, triangles: usize },
    VertexLinkNotCycle { vertex: String, detail: String },
    Disconnected { components: usize },
}

impl fmt::Display for SurfaceFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SurfaceFailure::WrongDimension { dimension: Some(d) } => write!(f, "dimension {d} instead of 2"),
            SurfaceFailure::WrongDimension { dimension: None } => write!(f, "the complex is void"),
            SurfaceFailure::NotPure { lower_facets } => {
                write!(f, "not pure: {} facets of dimension below 2, e.g. {{{}}}", lower_facets.len(), lower_facets[0].join(", "))
            }
            SurfaceFailure::EdgeDegree { edge, triangles } => {
                write!(f, "edge {{{}}} lies in {triangles} triangles", edge.join(", "))
            }
            SurfaceFailure::VertexLinkNotCycle { vertex, detail } => write!(f, "link of {vertex} is not a cycle: {detail}"),
            SurfaceFailure::Disconnected { components } => write!(f, "{components} connected components"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SurfaceReport {
    pub is_closed_surface: bool,
    pub failures: Vec<SurfaceFailure>,
}

/// Checks purity in dimension 2, that every edge lies in exactly two
/// triangles, that every vertex link is a single cycle, and connectivity.
/// Wrong dimension or impurity end the check immediately.
pub fn surface_check(k: &SimplicialComplex) -> SurfaceReport {
    let fail = |failures: Vec<SurfaceFailure>| SurfaceReport {
        is_closed_surface: failures.is_empty(),
        failures,
    };
    if k.dimension() != Some(2) {
        return fail(vec![SurfaceFailure::WrongDimension {
            dimension: k.dimension(),
        }]);
    }
    if !k.is_pure() {
        let lower_facets = k
            .facets()
            .iter()
            .filter(|f| f.len() != 3)
            .map(|f| k.face_labels(f))
            .collect();
        return fail(vec![SurfaceFailure::NotPure { lower_facets }]);
    }

    let mut failures = Vec::new();
    let mut edge_count: HashMap<(usize, usize), usize> = HashMap::new();
    for t in k.facets() {
        for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
            *edge_count.entry((a, b)).or_default() += 1;
        }
    }
    let mut edges: Vec<_> = edge_count.into_iter().collect();
    edges.sort_unstable();
    for ((a, b), n) in edges {
        if n != 2 {
            failures.push(SurfaceFailure::EdgeDegree {
                edge: k.face_labels(&[a, b]),
                triangles: n,
            });
        }
    }

    for v in 0..k.vertex_count() {
        let link = k.link(&[v]).expect("every vertex is a face");
        if let Err(detail) = single_cycle(&link) {
            failures.push(SurfaceFailure::VertexLinkNotCycle {
                vertex: k.labels()[v].clone(),
                detail,
            });
        }
    }

    let components = k.components().len();
    if components != 1 {
        failures.push(SurfaceFailure::Disconnected { components });
    }
    fail(failures)
}

fn single_cycle(link: &SimplicialComplex) -> Result<(), String> {
    if link.dimension() != Some(1) || !link.is_pure() {
        return Err(format!("link is not a pure graph (dimension {:?})", link.dimension()));
    }
    let mut degree = vec![0usize; link.vertex_count()];
    for e in link.facets() {
        degree[e[0]] += 1;
        degree[e[1]] += 1;
    }
    if let Some(v) = degree.iter().position(|&d| d != 2) {
        return Err(format!("link vertex {} has degree {}", link.labels()[v], degree[v]));
    }
    let parts = link.components().len();
    if parts != 1 {
        return Err(format!("link has {parts} components"));
    }
    Ok(())
}
