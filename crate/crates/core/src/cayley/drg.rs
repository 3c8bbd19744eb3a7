use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::graph::{Graph, UNREACHABLE};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ArrayError {
    #[error("b and c must have the same nonzero length (got {b} and {c})")]
    Length { b: usize, c: usize },
    #[error("c_1 must be 1, got {0}")]
    FirstC(u64),
    #[error("b_{0} must be positive")]
    ZeroB(usize),
    #[error("c_{0} must be positive")]
    ZeroC(usize),
    #[error("a_{i} = b_0 - b_{i} - c_{i} is negative")]
    NegativeA { i: usize },
    #[error("K_{i} = K_{prev}·b_{prev}/c_{i} is not an integer")]
    NonIntegralK { i: usize, prev: usize },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DrgError {
    #[error("graph has {0} vertices; distance-regularity needs at least 3")]
    TooSmall(usize),
    #[error("graph is disconnected")]
    Disconnected,
}

/// Intersection array `{b_0,…,b_{d-1}; c_1,…,c_d}` of a distance-regular graph.
///
/// Serialized as `{"b": [...], "c": [...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IntersectionArray {
    b: Vec<u64>,
    c: Vec<u64>,
}

impl IntersectionArray {
    pub fn new(b: Vec<u64>, c: Vec<u64>) -> Result<Self, ArrayError> {
        if b.is_empty() || b.len() != c.len() {
            return Err(ArrayError::Length { b: b.len(), c: c.len() });
        }
        if c[0] != 1 {
            return Err(ArrayError::FirstC(c[0]));
        }
        if let Some(i) = b.iter().position(|&x| x == 0) {
            return Err(ArrayError::ZeroB(i));
        }
        if let Some(i) = c.iter().position(|&x| x == 0) {
            return Err(ArrayError::ZeroC(i + 1));
        }
        let array = Self { b, c };
        let k = array.b[0];
        for i in 1..=array.diameter() {
            if array.b(i) + array.c(i) > k {
                return Err(ArrayError::NegativeA { i });
            }
        }
        let mut kk = 1u64;
        for i in 0..array.diameter() {
            let num = kk * array.b[i];
            if !num.is_multiple_of(array.c[i]) {
                return Err(ArrayError::NonIntegralK { i: i + 1, prev: i });
            }
            kk = num / array.c[i];
        }
        Ok(array)
    }

    /// `{k, k-1, k-mu; 1, mu, k}`.
    pub fn bipartite_diameter_three(k: u64, mu: u64) -> Result<Self, ArrayError> {
        Self::new(vec![k, k.saturating_sub(1), k.saturating_sub(mu)], vec![1, mu, k])
    }

    pub fn diameter(&self) -> usize {
        self.b.len()
    }

    pub fn valency(&self) -> u64 {
        self.b[0]
    }

    /// `b_i`, with `b_d = 0`.
    pub fn b(&self, i: usize) -> u64 {
        self.b.get(i).copied().unwrap_or(0)
    }

    /// `c_i`, with `c_0 = 0`.
    pub fn c(&self, i: usize) -> u64 {
        if i == 0 {
            0
        } else {
            self.c[i - 1]
        }
    }

    /// `a_i = b_0 - b_i - c_i`.
    pub fn a(&self, i: usize) -> u64 {
        self.valency() - self.b(i) - self.c(i)
    }

    pub fn b_list(&self) -> &[u64] {
        &self.b
    }

    pub fn c_list(&self) -> &[u64] {
        &self.c
    }

    /// `K_0 = 1`, `K_{i+1} = K_i·b_i / c_{i+1}`.
    pub fn k_sequence(&self) -> Vec<u64> {
        let mut ks = vec![1u64];
        for i in 0..self.diameter() {
            ks.push(ks[i] * self.b[i] / self.c[i]);
        }
        ks
    }

    pub fn vertex_count(&self) -> u64 {
        self.k_sequence().iter().sum()
    }

    /// Text rendering of the distance-distribution diagram: one cell per
    /// distance layer with its size `K_i` and inner valency `a_i`, joined by
    /// the forward/backward counts `b_i` and `c_{i+1}`.
    pub fn distance_diagram(&self) -> String {
        let ks = self.k_sequence();
        let mut out = String::new();
        for (i, size) in ks.iter().enumerate() {
            out.push_str(&format!("[K{i}={size} a{i}={}]", self.a(i)));
            if i < self.diameter() {
                out.push_str(&format!(" -{}-> <-{}- ", self.b[i], self.c[i]));
            }
        }
        out
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

/// Per-source tallies `(b_i, c_i)` for `i = 0..=ecc`, or `None` if some layer
/// is not uniform.
fn source_tally(graph: &Graph, x: usize) -> Option<(Vec<u64>, Vec<u64>)> {
    let dist = graph.distances_from(x);
    let ecc = *dist.iter().max().expect("nonempty graph") as usize;
    let mut b: Vec<Option<u64>> = vec![None; ecc + 1];
    let mut c: Vec<Option<u64>> = vec![None; ecc + 1];
    for y in 0..graph.vertex_count() {
        let i = dist[y] as usize;
        let (mut down, mut up) = (0u64, 0u64);
        for z in graph.neighbours(y) {
            let dz = dist[z] as usize;
            if dz + 1 == i {
                down += 1;
            } else if dz == i + 1 {
                up += 1;
            }
        }
        for (slot, value) in [(&mut b[i], up), (&mut c[i], down)] {
            match *slot {
                None => *slot = Some(value),
                Some(v) if v != value => return None,
                Some(_) => {}
            }
        }
    }
    Some((b.into_iter().flatten().collect(), c.into_iter().flatten().collect()))
}

/// All-pairs distance-regularity check. Returns the intersection array iff
/// for every ordered pair at distance `i` the neighbour counts at distances
/// `i-1` and `i+1` depend only on `i`.
pub fn check_distance_regular(graph: &Graph) -> Result<Option<IntersectionArray>, DrgError> {
    let n = graph.vertex_count();
    if n <= 2 {
        return Err(DrgError::TooSmall(n));
    }
    if graph.distances_from(0).contains(&UNREACHABLE) {
        return Err(DrgError::Disconnected);
    }
    let tallies: Vec<Option<(Vec<u64>, Vec<u64>)>> =
        (0..n).into_par_iter().map(|x| source_tally(graph, x)).collect();
    let first = match &tallies[0] {
        Some(t) => t.clone(),
        None => return Ok(None),
    };
    if tallies.iter().any(|t| t.as_ref() != Some(&first)) {
        return Ok(None);
    }
    let (b, c) = first;
    let d = b.len() - 1;
    Ok(IntersectionArray::new(b[..d].to_vec(), c[1..].to_vec()).ok())
}

/// `c_2 = 2k(k-1)/(|G|-2)` for a bipartite diameter-3 distance-regular Cayley
/// graph on a group of the given order, if integral.
pub fn expected_c2(k: u64, group_order: u64) -> Option<u64> {
    if group_order <= 2 || k == 0 {
        return None;
    }
    let num = 2 * k * (k - 1);
    num.is_multiple_of(group_order - 2).then(|| num / (group_order - 2))
}
