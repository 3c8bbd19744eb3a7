//! Isomorphisms between incidence graphs and Cayley graphs.
//!
//! Explicit correspondences are tried first. The general search refines a
//! joint colouring of both graphs (degree, distance profile, neighbour
//! colours), then individualizes and backtracks.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::HarnessError;
use crate::cayley::{CayleyGraph, Graph};
use crate::design::SymmetricDesign;
use crate::group::{Elem, Subgroup};

/// Largest graph the general search accepts.
pub const MAX_ISOMORPHISM_VERTICES: usize = 512;

/// How a verified bijection was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum Correspondence {
    /// Point `h ↦ a·h`, block `D·h ↦ h`, valid when `S = a·D`.
    Translate { a: Elem },
    /// Point `h ↦ h·c`, block `D·h ↦ h⁻¹`, valid when `S = D·c` and `c` inverts `H`.
    Dihedral { c: Elem },
    /// Found by refinement and backtracking.
    Search,
}

/// A bijection `incidence vertex -> Cayley vertex`, verified edge by edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsomorphismWitness {
    pub map: Vec<usize>,
    pub correspondence: Correspondence,
}

/// Tries both explicit correspondences for every `a ∉ H`, with `labels[i]`
/// the element of `H` that design point `i` (and block `i`) stands for.
///
/// The design's block `j` must be `D·labels[j]`; anything else simply fails
/// verification.
pub fn explicit_correspondence(
    design: &SymmetricDesign,
    cayley: &CayleyGraph,
    labels: &[Elem],
) -> Option<IsomorphismWitness> {
    let g = cayley.group();
    let n = design.point_count();
    if labels.len() != n || 2 * n != g.order() {
        return None;
    }
    let h = Subgroup::new(g, labels).ok()?;
    if h.order() != n {
        return None;
    }
    let incidence = design.incidence_graph();
    g.elements().filter(|&a| !h.contains(a)).find_map(|a| {
        let translate: Vec<usize> = labels
            .iter()
            .map(|&x| g.multiply(a, x))
            .chain(labels.iter().copied())
            .collect();
        if incidence.is_isomorphism(cayley.graph(), &translate) {
            return Some(IsomorphismWitness { map: translate, correspondence: Correspondence::Translate { a } });
        }
        let dihedral: Vec<usize> = labels
            .iter()
            .map(|&x| g.multiply(x, a))
            .chain(labels.iter().map(|&x| g.inverse(x)))
            .collect();
        incidence
            .is_isomorphism(cayley.graph(), &dihedral)
            .then_some(IsomorphismWitness { map: dihedral, correspondence: Correspondence::Dihedral { c: a } })
    })
}

/// A verified isomorphism from the incidence graph of `design` onto
/// `cayley`, or `None` if the graphs are not isomorphic (including when their
/// sizes or valencies differ).
///
/// With `labels`, the explicit correspondences are tried before the search.
pub fn incidence_graph_isomorphic_to_cayley(
    design: &SymmetricDesign,
    cayley: &CayleyGraph,
    labels: Option<&[Elem]>,
) -> Result<Option<IsomorphismWitness>, HarnessError> {
    if 2 * design.point_count() != cayley.group().order() || design.params().k != cayley.valency() {
        return Ok(None);
    }
    if let Some(w) = labels.and_then(|l| explicit_correspondence(design, cayley, l)) {
        return Ok(Some(w));
    }
    Ok(find_isomorphism(&design.incidence_graph(), cayley.graph())?
        .map(|map| IsomorphismWitness { map, correspondence: Correspondence::Search }))
}

/// A verified isomorphism `g1 -> g2`, or `None`.
pub fn find_isomorphism(g1: &Graph, g2: &Graph) -> Result<Option<Vec<usize>>, HarnessError> {
    let n = g1.vertex_count();
    if n > MAX_ISOMORPHISM_VERTICES || g2.vertex_count() > MAX_ISOMORPHISM_VERTICES {
        return Err(HarnessError::TooLargeForIsomorphism(n.max(g2.vertex_count())));
    }
    if g2.vertex_count() != n || g1.edge_count() != g2.edge_count() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (c1, c2) = initial_colours(g1, g2);
    let map = Search { g1, g2 }.descend(c1, c2);
    Ok(map.filter(|m| g1.is_isomorphism(g2, m)))
}

/// Degree and number of vertices at each distance, as joint colour ids.
fn initial_colours(g1: &Graph, g2: &Graph) -> (Vec<u32>, Vec<u32>) {
    let profile = |g: &Graph, v: usize| {
        let mut hist: BTreeMap<u32, u32> = BTreeMap::new();
        for d in g.distances_from(v) {
            *hist.entry(d).or_default() += 1;
        }
        (g.degree(v), hist.into_iter().collect::<Vec<_>>())
    };
    let p1: Vec<_> = (0..g1.vertex_count()).map(|v| profile(g1, v)).collect();
    let p2: Vec<_> = (0..g2.vertex_count()).map(|v| profile(g2, v)).collect();
    let ids: BTreeMap<_, u32> = p1.iter().chain(&p2).cloned().collect::<std::collections::BTreeSet<_>>()
        .into_iter()
        .enumerate()
        .map(|(i, p)| (p, i as u32))
        .collect();
    (p1.iter().map(|p| ids[p]).collect(), p2.iter().map(|p| ids[p]).collect())
}

struct Search<'a> {
    g1: &'a Graph,
    g2: &'a Graph,
}

fn histogram(c: &[u32]) -> BTreeMap<u32, usize> {
    let mut h = BTreeMap::new();
    for &x in c {
        *h.entry(x).or_default() += 1;
    }
    h
}

impl Search<'_> {
    /// Joint refinement to the coarsest equitable colouring. `false` if the
    /// two colourings stop matching.
    fn refine(&self, c1: &mut Vec<u32>, c2: &mut Vec<u32>) -> bool {
        let mut classes = histogram(c1).len();
        loop {
            if histogram(c1) != histogram(c2) {
                return false;
            }
            let signature = |g: &Graph, c: &[u32], v: usize| {
                let mut around: Vec<u32> = g.neighbours(v).map(|w| c[w]).collect();
                around.sort_unstable();
                (c[v], around)
            };
            let s1: Vec<_> = (0..c1.len()).map(|v| signature(self.g1, c1, v)).collect();
            let s2: Vec<_> = (0..c2.len()).map(|v| signature(self.g2, c2, v)).collect();
            let mut ids: HashMap<&(u32, Vec<u32>), u32> = HashMap::new();
            let mut keys: Vec<&(u32, Vec<u32>)> = s1.iter().chain(&s2).collect();
            keys.sort();
            keys.dedup();
            for (i, k) in keys.into_iter().enumerate() {
                ids.insert(k, i as u32);
            }
            *c1 = s1.iter().map(|s| ids[s]).collect();
            *c2 = s2.iter().map(|s| ids[s]).collect();
            let now = histogram(c1).len();
            if now == classes {
                return histogram(c1) == histogram(c2);
            }
            classes = now;
        }
    }

    fn descend(&self, mut c1: Vec<u32>, mut c2: Vec<u32>) -> Option<Vec<usize>> {
        if !self.refine(&mut c1, &mut c2) {
            return None;
        }
        let hist = histogram(&c1);
        // smallest non-singleton class, lowest colour on ties
        let target = hist.iter().filter(|(_, &s)| s > 1).min_by_key(|(&c, &s)| (s, c)).map(|(&c, _)| c);
        let Some(colour) = target else {
            let mut map = vec![0; c1.len()];
            let mut where2: HashMap<u32, usize> = HashMap::new();
            for (w, &c) in c2.iter().enumerate() {
                where2.insert(c, w);
            }
            for (v, c) in c1.iter().enumerate() {
                map[v] = where2[c];
            }
            return self.g1.is_isomorphism(self.g2, &map).then_some(map);
        };
        let v = c1.iter().position(|&c| c == colour).expect("colour present");
        // refinement renumbers colours from 0, so this label is unused
        let label = *c1.iter().max().expect("nonempty") + 1;
        let candidates: Vec<usize> = (0..c2.len()).filter(|&w| c2[w] == colour).collect();
        for w in candidates {
            let (mut d1, mut d2) = (c1.clone(), c2.clone());
            d1[v] = label;
            d2[w] = label;
            if let Some(map) = self.descend(d1, d2) {
                return Some(map);
            }
        }
        None
    }
}
