//! Symmetric 2-(n,k,mu) designs, their incidence graphs and complements.
//!
//! Blocks are kept as an indexed list because developments index blocks by
//! group elements. Designs with `mu = 0` are rejected.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cayley::Graph;
use crate::params::Params;

/// Why a block family is not a symmetric design.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignDefect {
    #[error("design needs at least one point")]
    NoPoints,
    #[error("{blocks} blocks for {n} points")]
    BlockCount { n: usize, blocks: usize },
    #[error("block {block} contains out-of-range point {point}")]
    PointOutOfRange { block: usize, point: usize },
    #[error("block {block} repeats point {point}")]
    RepeatedPoint { block: usize, point: usize },
    #[error("block {block} has size {size}, expected {expected}")]
    BlockSize { block: usize, size: usize, expected: usize },
    #[error("points {p} and {q} lie in {count} common blocks, expected {expected}")]
    PairCoverage { p: usize, q: usize, count: usize, expected: usize },
    #[error("point {point} lies in {count} blocks, expected {expected}")]
    Replication { point: usize, count: usize, expected: usize },
    #[error("pairs are covered 0 times; designs with mu = 0 are not accepted")]
    ZeroMu,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DesignError {
    #[error("complement of a ({n},{k},mu) design needs k <= n-2")]
    DegenerateComplement { n: usize, k: usize },
    #[error("graph is not a bipartite incidence graph: {0}")]
    NotIncidenceGraph(String),
    #[error(transparent)]
    Defect(#[from] DesignDefect),
}

/// Checks the symmetric-design axioms and returns the parameters.
pub fn verify_symmetric_design(n: usize, blocks: &[Vec<usize>]) -> Result<Params, DesignDefect> {
    if n == 0 {
        return Err(DesignDefect::NoPoints);
    }
    if blocks.len() != n {
        return Err(DesignDefect::BlockCount { n, blocks: blocks.len() });
    }
    // point -> set of blocks containing it
    let mut incidence = vec![FixedBitSet::with_capacity(n); n];
    for (bi, block) in blocks.iter().enumerate() {
        for &p in block {
            if p >= n {
                return Err(DesignDefect::PointOutOfRange { block: bi, point: p });
            }
            if incidence[p].put(bi) {
                return Err(DesignDefect::RepeatedPoint { block: bi, point: p });
            }
        }
    }
    let k = blocks[0].len();
    if let Some((bi, b)) = blocks.iter().enumerate().find(|(_, b)| b.len() != k) {
        return Err(DesignDefect::BlockSize { block: bi, size: b.len(), expected: k });
    }
    let mu = if n >= 2 { incidence[0].intersection_count(&incidence[1]) } else { 0 };
    for p in 0..n {
        for q in p + 1..n {
            let count = incidence[p].intersection_count(&incidence[q]);
            if count != mu {
                return Err(DesignDefect::PairCoverage { p, q, count, expected: mu });
            }
        }
    }
    if mu == 0 {
        return Err(DesignDefect::ZeroMu);
    }
    if let Some(point) = (0..n).find(|&p| incidence[p].count_ones(..) != k) {
        return Err(DesignDefect::Replication { point, count: incidence[point].count_ones(..), expected: k });
    }
    Ok(Params::new(n, k, mu))
}

/// A verified symmetric design. Block `i` is `blocks[i]`, each sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymmetricDesign {
    blocks: Vec<Vec<usize>>,
    params: Params,
}

/// Design document as emitted by the CLI.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DesignDocument {
    pub n: usize,
    pub params: Params,
    pub blocks: Vec<Vec<usize>>,
    pub projective_plane_order: Option<u64>,
}

impl SymmetricDesign {
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self, DesignDefect> {
        let blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        let params = verify_symmetric_design(n, &blocks)?;
        Ok(Self { blocks, params })
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn point_count(&self) -> usize {
        self.params.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    /// Bipartite graph on `2n` vertices: points `0..n`, blocks `n..2n`.
    pub fn incidence_graph(&self) -> Graph {
        let n = self.params.n;
        let mut g = Graph::empty(2 * n);
        for (bi, block) in self.blocks.iter().enumerate() {
            for &p in block {
                g.add_edge(p, n + bi);
            }
        }
        g
    }

    /// Block-wise complement, parameters `(n, n-k, n-2k+mu)`.
    pub fn complement_design(&self) -> Result<SymmetricDesign, DesignError> {
        let Params { n, k, .. } = self.params;
        if k + 2 > n {
            return Err(DesignError::DegenerateComplement { n, k });
        }
        let blocks = self
            .blocks
            .iter()
            .map(|b| {
                let mut inside = FixedBitSet::with_capacity(n);
                b.iter().for_each(|&p| inside.insert(p));
                inside.toggle_range(..);
                inside.ones().collect()
            })
            .collect();
        Ok(SymmetricDesign::new(n, blocks)?)
    }

    /// `Some(q)` iff the design is a projective plane of order `q`, i.e.
    /// `mu = 1` and `n = q² + q + 1` with `q = k - 1`.
    pub fn recognize_projective_plane(&self) -> Option<u64> {
        let Params { n, k, mu } = self.params;
        let q = (k as u64).checked_sub(1)?;
        (mu == 1 && q >= 2 && n as u64 == q * q + q + 1).then_some(q)
    }

    /// Blocks sorted, for comparing block families as sets.
    pub fn canonical_blocks(&self) -> Vec<Vec<usize>> {
        let mut b = self.blocks.clone();
        b.sort();
        b
    }

    pub fn same_block_family(&self, other: &SymmetricDesign) -> bool {
        self.params == other.params && self.canonical_blocks() == other.canonical_blocks()
    }

    pub fn document(&self) -> DesignDocument {
        DesignDocument {
            n: self.params.n,
            params: self.params,
            blocks: self.blocks.clone(),
            projective_plane_order: self.recognize_projective_plane(),
        }
    }

    pub fn from_document(doc: &DesignDocument) -> Result<Self, DesignError> {
        let design = Self::new(doc.n, doc.blocks.clone())?;
        if design.params != doc.params {
            return Err(DesignError::NotIncidenceGraph(format!(
                "document claims {} but blocks give {}",
                doc.params, design.params
            )));
        }
        Ok(design)
    }
}

/// Reads a bipartite regular graph as a design: points are the colour class
/// of vertex 0, blocks are the neighbourhoods of the other class.
///
/// Returns the design with the vertex lists `points[i]` and `blocks[j]`, so
/// that point `i ↦ points[i]` and block `j ↦ blocks[j]` is an isomorphism
/// from the incidence graph onto `graph`.
pub fn design_from_bipartite_graph(graph: &Graph) -> Result<(SymmetricDesign, Vec<usize>, Vec<usize>), DesignError> {
    let (points, block_vertices) = graph
        .bipartition()
        .ok_or_else(|| DesignError::NotIncidenceGraph("not bipartite".into()))?;
    if points.len() != block_vertices.len() {
        return Err(DesignError::NotIncidenceGraph("colour classes differ in size".into()));
    }
    let mut local = vec![usize::MAX; graph.vertex_count()];
    for (i, &p) in points.iter().enumerate() {
        local[p] = i;
    }
    let blocks = block_vertices
        .iter()
        .map(|&b| graph.neighbours(b).map(|p| local[p]).collect())
        .collect();
    let design = SymmetricDesign::new(points.len(), blocks)?;
    Ok((design, points, block_vertices))
}
