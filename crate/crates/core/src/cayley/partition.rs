use serde::Serialize;

use super::graph::Graph;
use super::spectrum::{adjacency_eigenvalues, quotient_eigenvalues};
use super::{CayleyError, CayleyGraph};
use crate::group::Subgroup;

/// A vertex partition with constant neighbour counts between cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquitablePartition {
    cells: Vec<Vec<usize>>,
    quotient: Vec<Vec<u64>>,
}

impl EquitablePartition {
    /// Checks equitability vertex by vertex; `None` if some vertex disagrees
    /// with its cell, or if `cells` is not a partition of the vertex set.
    pub fn new(graph: &Graph, cells: Vec<Vec<usize>>) -> Option<Self> {
        let n = graph.vertex_count();
        let mut cell_of = vec![usize::MAX; n];
        for (ci, cell) in cells.iter().enumerate() {
            for &v in cell {
                if v >= n || cell_of[v] != usize::MAX {
                    return None;
                }
                cell_of[v] = ci;
            }
        }
        if cell_of.contains(&usize::MAX) || cells.iter().any(Vec::is_empty) {
            return None;
        }
        let r = cells.len();
        let counts = |v: usize| {
            let mut row = vec![0u64; r];
            for w in graph.neighbours(v) {
                row[cell_of[w]] += 1;
            }
            row
        };
        let mut quotient = Vec::with_capacity(r);
        for cell in &cells {
            let row = counts(cell[0]);
            if cell[1..].iter().any(|&v| counts(v) != row) {
                return None;
            }
            quotient.push(row);
        }
        Some(Self { cells, quotient })
    }

    pub fn cells(&self) -> &[Vec<usize>] {
        &self.cells
    }

    pub fn quotient(&self) -> &[Vec<u64>] {
        &self.quotient
    }

    pub fn cell_sizes(&self) -> Vec<usize> {
        self.cells.iter().map(Vec::len).collect()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        quotient_eigenvalues(&self.quotient, &self.cell_sizes())
    }
}

/// The right-coset partition `{N·g}` of a Cayley graph for a normal subgroup `N`.
///
/// `None` would mean the coset partition is not equitable, which cannot
/// happen for normal `N`; callers treat it as an internal error.
pub fn partition_from_normal_subgroup(
    cayley: &CayleyGraph,
    n: &Subgroup,
) -> Result<Option<EquitablePartition>, CayleyError> {
    let g = cayley.group();
    if !g.is_normal(n) {
        return Err(CayleyError::NotNormal);
    }
    Ok(EquitablePartition::new(cayley.graph(), g.right_cosets(n)))
}

/// Whether every quotient eigenvalue is within `tolerance` of an adjacency eigenvalue.
pub fn quotient_eigenvalues_contained(partition: &EquitablePartition, graph: &Graph, tolerance: f64) -> bool {
    quotient_eigenvalues_contained_in(partition, &adjacency_eigenvalues(graph), tolerance)
}

/// As [`quotient_eigenvalues_contained`], against a precomputed spectrum.
pub fn quotient_eigenvalues_contained_in(partition: &EquitablePartition, spectrum: &[f64], tolerance: f64) -> bool {
    partition
        .eigenvalues()
        .iter()
        .all(|q| spectrum.iter().any(|s| (q - s).abs() <= tolerance))
}
