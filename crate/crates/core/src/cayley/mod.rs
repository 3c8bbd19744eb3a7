//! Cayley graphs and graph-side verification.
//!
//! `Cay(G, S)` has vertex set `G` with `a ~ b` iff `a·b⁻¹ ∈ S`. Distance
//! regularity is certified by all-pairs BFS, the diameter-3 bipartite spectrum
//! by an integer matrix identity, and equitable partitions cell by cell.

mod drg;
mod graph;
mod partition;
mod spectrum;

use fixedbitset::FixedBitSet;
use serde::Serialize;
use thiserror::Error;

pub use drg::{check_distance_regular, expected_c2, ArrayError, DrgError, IntersectionArray};
pub use graph::{Girth, Graph, UNREACHABLE};
pub use partition::{
    partition_from_normal_subgroup, quotient_eigenvalues_contained, quotient_eigenvalues_contained_in,
    EquitablePartition,
};
pub use spectrum::{
    adjacency_eigenvalues, integer_determinant, quotient_eigenvalues, verify_bipartite_d3_spectrum, SpectrumError,
    SpectrumIdentity,
};

use crate::group::{Elem, FiniteGroup};

/// Default tolerance for quotient-eigenvalue containment.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CayleyError {
    #[error("connection set contains the identity {0}")]
    IdentityInConnectionSet(String),
    #[error("connection set not inverse-closed: {element} is present but its inverse {inverse} is not")]
    NotInverseClosed { element: String, inverse: String },
    #[error("element index {0} out of range")]
    ElementOutOfRange(usize),
    #[error("vertex {0} out of range")]
    VertexOutOfRange(usize),
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("distance {i} out of range 1..={diameter}")]
    DistanceOutOfRange { i: u32, diameter: u32 },
    #[error("subgroup is not normal")]
    NotNormal,
}

/// `Cay(G, S)` together with its group and connection set.
#[derive(Clone, Debug)]
pub struct CayleyGraph {
    group: FiniteGroup,
    connection_set: Vec<Elem>,
    graph: Graph,
}

/// Builds `Cay(G, S)`. `S` must avoid the identity and be inverse-closed;
/// duplicates are ignored.
pub fn build_cayley(group: &FiniteGroup, s: &[Elem]) -> Result<CayleyGraph, CayleyError> {
    let n = group.order();
    let mut mask = FixedBitSet::with_capacity(n);
    for &x in s {
        if x >= n {
            return Err(CayleyError::ElementOutOfRange(x));
        }
        mask.insert(x);
    }
    if mask.contains(group.identity()) {
        return Err(CayleyError::IdentityInConnectionSet(group.name(group.identity()).into()));
    }
    let connection_set: Vec<Elem> = mask.ones().collect();
    if let Some(&x) = connection_set.iter().find(|&&x| !mask.contains(group.inverse(x))) {
        return Err(CayleyError::NotInverseClosed {
            element: group.name(x).into(),
            inverse: group.name(group.inverse(x)).into(),
        });
    }
    // neighbours of b are s·b
    let rows = (0..n)
        .map(|b| {
            let mut row = FixedBitSet::with_capacity(n);
            for &x in &connection_set {
                row.insert(group.multiply(x, b));
            }
            row
        })
        .collect();
    Ok(CayleyGraph { group: group.clone(), connection_set, graph: Graph::from_rows(rows) })
}

impl CayleyGraph {
    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn connection_set(&self) -> &[Elem] {
        &self.connection_set
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn valency(&self) -> usize {
        self.connection_set.len()
    }

    /// Whether `x ↦ x·g` maps edges to edges.
    pub fn right_translation_preserves_edges(&self, g: Elem) -> bool {
        let n = self.group.order();
        (0..n).all(|u| {
            self.graph
                .neighbours(u)
                .all(|v| self.graph.has_edge(self.group.multiply(u, g), self.group.multiply(v, g)))
        })
    }
}

/// Graph report; `null` marks facts that are undefined for this graph.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct GraphReport {
    pub vertices: usize,
    pub valency: Option<usize>,
    pub connected: bool,
    pub bipartite: bool,
    pub girth: Option<u32>,
    pub diameter: Option<u32>,
    pub distance_regular: bool,
    pub intersection_array: Option<IntersectionArray>,
    pub k_sequence: Option<Vec<u64>>,
    pub spectrum_identity_verified: Option<bool>,
}

/// Collects the standard invariants. The spectrum identity is only evaluated
/// for bipartite distance-regular graphs of diameter 3.
pub fn graph_report(graph: &Graph) -> GraphReport {
    let connected = graph.is_connected();
    let bipartite = graph.is_bipartite();
    let array = if connected { check_distance_regular(graph).ok().flatten() } else { None };
    let spectrum_identity_verified = match &array {
        Some(a) if bipartite && a.diameter() == 3 => Some(
            verify_bipartite_d3_spectrum(graph, a.valency(), a.c(2), graph.vertex_count() / 2).is_ok(),
        ),
        _ => None,
    };
    GraphReport {
        vertices: graph.vertex_count(),
        valency: graph.valency(),
        connected,
        bipartite,
        girth: graph.girth().value(),
        diameter: graph.diameter(),
        distance_regular: array.is_some(),
        k_sequence: array.as_ref().map(IntersectionArray::k_sequence),
        intersection_array: array,
        spectrum_identity_verified,
    }
}
