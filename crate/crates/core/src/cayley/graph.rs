use fixedbitset::FixedBitSet;
use rayon::prelude::*;

use super::CayleyError;

/// Distance marker for vertices in another component.
pub const UNREACHABLE: u32 = u32::MAX;

/// Length of a shortest cycle, or the marker for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Girth {
    Finite(u32),
    Acyclic,
}

impl Girth {
    pub fn value(self) -> Option<u32> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Acyclic => None,
        }
    }
}

/// Simple undirected graph with packed bit rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<FixedBitSet>,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self { adj: vec![FixedBitSet::with_capacity(n); n] }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, CayleyError> {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(CayleyError::VertexOutOfRange(u.max(v)));
            }
            if u == v {
                return Err(CayleyError::Loop(u));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    pub(crate) fn from_rows(adj: Vec<FixedBitSet>) -> Self {
        debug_assert!(adj.iter().enumerate().all(|(i, r)| !r.contains(i)));
        Self { adj }
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) {
        self.adj[u].insert(v);
        self.adj[v].insert(u);
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones(..)).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u].contains(v)
    }

    pub fn row(&self, v: usize) -> &FixedBitSet {
        &self.adj[v]
    }

    pub fn neighbours(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adj[v].ones()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones(..)
    }

    /// Common valency if the graph is regular.
    pub fn valency(&self) -> Option<usize> {
        let k = self.adj.first().map_or(0, |r| r.count_ones(..));
        self.adj.iter().all(|r| r.count_ones(..) == k).then_some(k)
    }

    /// BFS distances from `source`; [`UNREACHABLE`] outside its component.
    pub fn distances_from(&self, source: usize) -> Vec<u32> {
        let mut dist = vec![UNREACHABLE; self.vertex_count()];
        dist[source] = 0;
        let mut frontier = vec![source];
        let mut d = 0;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for &u in &frontier {
                for w in self.adj[u].ones() {
                    if dist[w] == UNREACHABLE {
                        dist[w] = d;
                        next.push(w);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    /// Distance matrix, one BFS per source (in parallel).
    pub fn all_distances(&self) -> Vec<Vec<u32>> {
        (0..self.vertex_count()).into_par_iter().map(|v| self.distances_from(v)).collect()
    }

    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || !self.distances_from(0).contains(&UNREACHABLE)
    }

    /// `None` for disconnected graphs.
    pub fn diameter(&self) -> Option<u32> {
        if self.vertex_count() == 0 {
            return Some(0);
        }
        let ecc: Vec<u32> = (0..self.vertex_count())
            .into_par_iter()
            .map(|v| self.distances_from(v).into_iter().max().unwrap_or(0))
            .collect();
        ecc.into_iter().try_fold(0, |acc, e| (e != UNREACHABLE).then_some(acc.max(e)))
    }

    /// Exact girth: BFS from every vertex, closing the first non-tree edge.
    pub fn girth(&self) -> Girth {
        let best = (0..self.vertex_count())
            .into_par_iter()
            .filter_map(|s| self.shortest_cycle_through_bfs(s))
            .min();
        best.map_or(Girth::Acyclic, Girth::Finite)
    }

    fn shortest_cycle_through_bfs(&self, source: usize) -> Option<u32> {
        let n = self.vertex_count();
        let mut dist = vec![UNREACHABLE; n];
        let mut parent = vec![usize::MAX; n];
        dist[source] = 0;
        let mut queue = std::collections::VecDeque::from([source]);
        let mut best: Option<u32> = None;
        while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] >= b {
                    break;
                }
            }
            for w in self.adj[u].ones() {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
        best
    }

    /// Colour classes of a 2-colouring, the class of vertex 0 first; `None`
    /// if some component has an odd cycle.
    pub fn bipartition(&self) -> Option<(Vec<usize>, Vec<usize>)> {
        let n = self.vertex_count();
        let mut colour = vec![u8::MAX; n];
        for start in 0..n {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for w in self.adj[u].ones() {
                    if colour[w] == u8::MAX {
                        colour[w] = 1 - colour[u];
                        stack.push(w);
                    } else if colour[w] == colour[u] {
                        return None;
                    }
                }
            }
        }
        let (a, b): (Vec<usize>, Vec<usize>) = (0..n).partition(|&v| colour[v] == 0);
        Some((a, b))
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Graph on the same vertices joining pairs at distance exactly `i`.
    pub fn distance_graph(&self, i: u32) -> Result<Graph, CayleyError> {
        let diameter = self.diameter().ok_or(CayleyError::Disconnected)?;
        if i == 0 || i > diameter {
            return Err(CayleyError::DistanceOutOfRange { i, diameter });
        }
        let n = self.vertex_count();
        let rows = (0..n)
            .into_par_iter()
            .map(|v| {
                let mut row = FixedBitSet::with_capacity(n);
                for (w, &d) in self.distances_from(v).iter().enumerate() {
                    if d == i {
                        row.insert(w);
                    }
                }
                row
            })
            .collect();
        Ok(Graph::from_rows(rows))
    }

    /// Whether `map` (vertex of `self` -> vertex of `other`) is an isomorphism,
    /// checked edge by edge.
    pub fn is_isomorphism(&self, other: &Graph, map: &[usize]) -> bool {
        let n = self.vertex_count();
        if other.vertex_count() != n || map.len() != n {
            return false;
        }
        let mut hit = FixedBitSet::with_capacity(n);
        for &m in map {
            if m >= n || hit.put(m) {
                return false;
            }
        }
        if self.edge_count() != other.edge_count() {
            return false;
        }
        (0..n).all(|u| self.adj[u].ones().all(|v| other.has_edge(map[u], map[v])))
    }
}
