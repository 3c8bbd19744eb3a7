use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use super::graph::Graph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectrumError {
    #[error("invalid parameters: need 0 < mu <= k (k={k}, mu={mu})")]
    Parameters { k: u64, mu: u64 },
    #[error("expected 2n = {expected} vertices, graph has {got}")]
    VertexCount { expected: usize, got: usize },
    #[error("trace(A) = {0}, expected 0")]
    Trace(i64),
    #[error("trace(A^2) = {got}, expected 2nk = {expected}")]
    TraceSquared { got: i64, expected: i64 },
    #[error("(A^2 - k^2 I)(A^2 - (k-mu) I) has entry {value} at ({row},{col})")]
    PolynomialNonzero { row: usize, col: usize, value: i64 },
}

/// Exact certificate for the spectrum `{k, ±√(k-mu)^(n-1), -k}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpectrumIdentity {
    pub trace_a: i64,
    pub trace_a_squared: i64,
    pub product_vanishes: bool,
}

/// `A²` as a dense integer matrix; `(A²)_{ij} = |N(i) ∩ N(j)|`.
fn adjacency_squared(graph: &Graph) -> Vec<i64> {
    let n = graph.vertex_count();
    (0..n)
        .into_par_iter()
        .flat_map_iter(|i| (0..n).map(move |j| graph.row(i).intersection_count(graph.row(j)) as i64))
        .collect()
}

/// Verifies in integer arithmetic that `(A² − k²I)(A² − (k−mu)I) = 0`,
/// `trace(A) = 0` and `trace(A²) = 2nk`.
///
/// For a connected bipartite graph these pin the spectrum down to
/// `{k¹, √(k−mu)^(n−1), −√(k−mu)^(n−1), −k¹}`.
pub fn verify_bipartite_d3_spectrum(graph: &Graph, k: u64, mu: u64, n: usize) -> Result<SpectrumIdentity, SpectrumError> {
    if mu == 0 || mu > k {
        return Err(SpectrumError::Parameters { k, mu });
    }
    let v = graph.vertex_count();
    if v != 2 * n {
        return Err(SpectrumError::VertexCount { expected: 2 * n, got: v });
    }
    let trace_a = (0..v).filter(|&i| graph.has_edge(i, i)).count() as i64;
    if trace_a != 0 {
        return Err(SpectrumError::Trace(trace_a));
    }
    let a2 = adjacency_squared(graph);
    let trace_a_squared: i64 = (0..v).map(|i| a2[i * v + i]).sum();
    let expected = 2 * n as i64 * k as i64;
    if trace_a_squared != expected {
        return Err(SpectrumError::TraceSquared { got: trace_a_squared, expected });
    }
    let (k2, shift) = ((k * k) as i64, (k - mu) as i64);
    let p = |i: usize, j: usize| a2[i * v + j] - if i == j { k2 } else { 0 };
    let q = |i: usize, j: usize| a2[i * v + j] - if i == j { shift } else { 0 };
    let bad = (0..v).into_par_iter().find_map_first(|i| {
        (0..v).find_map(|j| {
            let value: i64 = (0..v).map(|t| p(i, t) * q(t, j)).sum();
            (value != 0).then_some(SpectrumError::PolynomialNonzero { row: i, col: j, value })
        })
    });
    match bad {
        Some(err) => Err(err),
        None => Ok(SpectrumIdentity { trace_a, trace_a_squared, product_vanishes: true }),
    }
}

/// Adjacency eigenvalues in ascending order (floating point).
pub fn adjacency_eigenvalues(graph: &Graph) -> Vec<f64> {
    let n = graph.vertex_count();
    let m = DMatrix::from_fn(n, n, |i, j| if graph.has_edge(i, j) { 1.0 } else { 0.0 });
    sorted(m.symmetric_eigenvalues().iter().copied().collect())
}

/// Eigenvalues of the quotient matrix of an equitable partition with the
/// given cell sizes. The quotient `Q` satisfies `|C_i| q_ij = |C_j| q_ji`,
/// so `D^{1/2} Q D^{-1/2}` is symmetric with the same eigenvalues.
pub fn quotient_eigenvalues(quotient: &[Vec<u64>], cell_sizes: &[usize]) -> Vec<f64> {
    let r = quotient.len();
    let m = DMatrix::from_fn(r, r, |i, j| {
        (cell_sizes[i] as f64).sqrt() * quotient[i][j] as f64 / (cell_sizes[j] as f64).sqrt()
    });
    let sym = (&m + m.transpose()) * 0.5;
    sorted(sym.symmetric_eigenvalues().iter().copied().collect())
}

fn sorted(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v
}

/// Exact determinant of a small integer matrix (Bareiss elimination).
pub fn integer_determinant(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    let mut a: Vec<Vec<i128>> = m.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&r| a[r][k] != 0) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    if n == 0 {
        1
    } else {
        sign * a[n - 1][n - 1]
    }
}
