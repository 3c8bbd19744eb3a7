//! Mechanical checks of the correspondence between bipartite diameter-3
//! distance-regular Cayley graphs and difference sets.
//!
//! For `Cay(G,S)` connected and bipartite, the colour class `H` of the
//! identity is a normal subgroup of index 2 avoiding `S`. If the graph is
//! distance-regular with array `{k,k-1,k-mu;1,mu,k}`, then for every
//! `a ∈ G∖H` the set `D = a⁻¹S` is an `(|H|,k,mu)` difference set in `H`
//! with `D⁻¹ = aDa`, and conversely.

mod cases;
mod document;
mod iso;
mod plane;

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

pub use cases::{classify_case, sylow_case_analysis, CaseTag, Classification, SylowHorn, SylowReport, Witness};
pub use document::{classification_document, equivalence_document, plane_document, StructureDocument};
pub use iso::{
    explicit_correspondence, find_isomorphism, incidence_graph_isomorphic_to_cayley, Correspondence,
    IsomorphismWitness, MAX_ISOMORPHISM_VERTICES,
};
pub use plane::{verify_projective_plane_theorem, PlaneReport};

use crate::cayley::{build_cayley, check_distance_regular, CayleyError, CayleyGraph, IntersectionArray};
use crate::design::DesignError;
use crate::diffset::{is_trivial, reversal_condition_holds, DiffsetError, DifferenceSet};
use crate::group::{Elem, FiniteGroup, GroupError, Subgroup};
use crate::params::Params;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HarnessError {
    #[error("Cayley graph is disconnected")]
    NotConnected,
    #[error("Cayley graph is not bipartite")]
    NotBipartite,
    #[error("Cayley graph is not distance-regular")]
    NotDistanceRegular,
    #[error("Cayley graph has diameter {0}, expected 3")]
    WrongDiameter(usize),
    #[error("intersection array {0} is not of the form {{k,k-1,k-mu;1,mu,k}}")]
    UnexpectedArray(String),
    #[error("trivial instance: k = n-1 = {k} (complete bipartite graph minus a perfect matching)")]
    TrivialGraph { k: usize },
    #[error("lemma violated: {0}")]
    LemmaViolation(String),
    #[error("H is not abelian; the generalized dihedral reconstruction does not apply")]
    NonAbelian,
    #[error("difference set is trivial")]
    TrivialDifferenceSet,
    #[error("girth is {0:?}, the projective-plane check needs girth 6")]
    NotGirthSix(Option<u32>),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("graph with {0} vertices is above the isomorphism search cap")]
    TooLargeForIsomorphism(usize),
    #[error(transparent)]
    Cayley(#[from] CayleyError),
    #[error(transparent)]
    Diffset(#[from] DiffsetError),
    #[error(transparent)]
    Design(#[from] DesignError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The colour class of the identity in a connected bipartite `Cay(G,S)`,
/// certified as a normal subgroup of index 2 disjoint from `S`.
pub fn identity_part(cayley: &CayleyGraph) -> Result<Subgroup, HarnessError> {
    let g = cayley.group();
    let graph = cayley.graph();
    if !graph.is_connected() {
        return Err(HarnessError::NotConnected);
    }
    if !graph.is_bipartite() {
        return Err(HarnessError::NotBipartite);
    }
    let even: Vec<Elem> = graph
        .distances_from(g.identity())
        .iter()
        .enumerate()
        .filter(|(_, &d)| d % 2 == 0)
        .map(|(v, _)| v)
        .collect();
    let h = Subgroup::new(g, &even).map_err(|e| HarnessError::LemmaViolation(format!("identity part: {e}")))?;
    if h.order() * 2 != g.order() {
        return Err(HarnessError::LemmaViolation("identity part does not have index 2".into()));
    }
    if !g.is_normal(&h) {
        return Err(HarnessError::LemmaViolation("identity part is not normal".into()));
    }
    if let Some(&s) = cayley.connection_set().iter().find(|&&s| h.contains(s)) {
        return Err(HarnessError::LemmaViolation(format!("{} lies in the identity part", g.name(s))));
    }
    Ok(h)
}

/// Certifies `Cay(G,S)` as connected, bipartite and distance-regular with
/// array `{k,k-1,k-mu;1,mu,k}`; returns the array and `(|G|/2, k, mu)`.
pub fn certify_bipartite_d3(cayley: &CayleyGraph) -> Result<(IntersectionArray, Params), HarnessError> {
    let graph = cayley.graph();
    if !graph.is_connected() {
        return Err(HarnessError::NotConnected);
    }
    if !graph.is_bipartite() {
        return Err(HarnessError::NotBipartite);
    }
    let array = check_distance_regular(graph)
        .map_err(|_| HarnessError::NotDistanceRegular)?
        .ok_or(HarnessError::NotDistanceRegular)?;
    if array.diameter() != 3 {
        return Err(HarnessError::WrongDiameter(array.diameter()));
    }
    let (k, mu) = (array.valency(), array.c(2));
    if IntersectionArray::bipartite_diameter_three(k, mu).as_ref() != Ok(&array) {
        return Err(HarnessError::UnexpectedArray(array.to_string()));
    }
    Ok((array, Params::new(cayley.group().order() / 2, k as usize, mu as usize)))
}

/// `H` as a group of its own plus the maps between its indices and `G`'s.
#[derive(Clone, Debug)]
pub struct LocalSubgroup {
    pub group: FiniteGroup,
    /// local index -> element of `G`
    pub embedding: Vec<Elem>,
    local: Vec<Option<usize>>,
}

impl LocalSubgroup {
    pub fn new(g: &FiniteGroup, h: &Subgroup) -> Self {
        let (group, embedding) = g.subgroup_as_group(h);
        let mut local = vec![None; g.order()];
        for (i, &x) in embedding.iter().enumerate() {
            local[x] = Some(i);
        }
        Self { group, embedding, local }
    }

    /// Local indices of `elems`, or `None` if one lies outside `H`.
    pub fn localize(&self, elems: &[Elem]) -> Option<Vec<usize>> {
        elems.iter().map(|&x| self.local[x]).collect()
    }

    pub fn globalize(&self, elems: &[usize]) -> Vec<Elem> {
        let mut v: Vec<Elem> = elems.iter().map(|&i| self.embedding[i]).collect();
        v.sort_unstable();
        v
    }
}

/// `a⁻¹·S`, sorted.
pub fn translated_set(g: &FiniteGroup, a: Elem, s: &[Elem]) -> Vec<Elem> {
    let ai = g.inverse(a);
    let mut d: Vec<Elem> = s.iter().map(|&x| g.multiply(ai, x)).collect();
    d.sort_unstable();
    d
}

/// Outcome of the lemma for one `a ∈ G∖H`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TranslatorCheck {
    pub a: Elem,
    pub d: Vec<Elem>,
    /// Parameters of `D` in `H`, if it is a difference set.
    pub ds_params: Option<Params>,
    pub reversal: bool,
}

/// Named checks of the forward direction, the converse and the round trip.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EquivalenceChecks {
    pub normal_index_two: bool,
    pub s_outside_h: bool,
    pub ds_certified: bool,
    pub reversal_holds: bool,
    pub nontrivial: bool,
    pub converse_verified: bool,
    pub round_trip_isomorphic: bool,
}

impl EquivalenceChecks {
    pub fn all(&self) -> bool {
        self.as_map().values().all(|&b| b)
    }

    /// Checks keyed by their report names.
    pub fn as_map(&self) -> BTreeMap<String, bool> {
        [
            ("normal_index_two", self.normal_index_two),
            ("S_outside_H", self.s_outside_h),
            ("ds_certified", self.ds_certified),
            ("reversal_holds", self.reversal_holds),
            ("nontrivial", self.nontrivial),
            ("converse_verified", self.converse_verified),
            ("round_trip_isomorphic", self.round_trip_isomorphic),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect()
    }
}

#[derive(Clone, Debug)]
pub struct EquivalenceReport {
    pub h: Subgroup,
    /// The chosen translator: the smallest involution outside `H`, else the
    /// smallest element outside `H`.
    pub a: Elem,
    pub d: Vec<Elem>,
    pub params: Params,
    pub array: IntersectionArray,
    pub per_translator: Vec<TranslatorCheck>,
    pub checks: EquivalenceChecks,
}

/// The smallest involution outside `H`, else the smallest element outside it.
pub fn choose_translator(g: &FiniteGroup, h: &Subgroup) -> Elem {
    g.involutions_outside(h)
        .first()
        .copied()
        .unwrap_or_else(|| g.elements().find(|&x| !h.contains(x)).expect("H is proper"))
}

/// Runs every check of the correspondence and reports each outcome. Errors
/// only when the graph fails the bipartite diameter-3 precondition.
pub fn examine_equivalence(cayley: &CayleyGraph) -> Result<EquivalenceReport, HarnessError> {
    let (array, params) = certify_bipartite_d3(cayley)?;
    let g = cayley.group();
    let s = cayley.connection_set();
    let h = identity_part(cayley)?;
    let local = LocalSubgroup::new(g, &h);
    let outside: Vec<Elem> = g.elements().filter(|&x| !h.contains(x)).collect();
    let per_translator: Vec<TranslatorCheck> = outside
        .par_iter()
        .map(|&a| {
            let d = translated_set(g, a, s);
            let ds_params = local
                .localize(&d)
                .and_then(|dl| DifferenceSet::certify(&local.group, &dl).ok())
                .map(|ds| ds.params());
            let reversal = reversal_condition_holds(g, &h, &d, a).unwrap_or(false);
            TranslatorCheck { a, d, ds_params, reversal }
        })
        .collect();
    let a = choose_translator(g, &h);
    let d = translated_set(g, a, s);
    let nontrivial = !is_trivial(g, &d) && params.k + 1 != params.n;
    let converse_verified = cayley_from_lemma_data(g, &h, a, &d)
        .map(|c| c.connection_set() == s)
        .unwrap_or(false);
    let round_trip_isomorphic = round_trip(cayley, &h, &local, &d).unwrap_or(false);
    let checks = EquivalenceChecks {
        normal_index_two: true,
        s_outside_h: true,
        ds_certified: per_translator.iter().all(|t| t.ds_params == Some(params)),
        reversal_holds: per_translator.iter().all(|t| t.reversal),
        nontrivial,
        converse_verified,
        round_trip_isomorphic,
    };
    Ok(EquivalenceReport { h, a, d, params, array, per_translator, checks })
}

/// Rebuilds a graph from `(H, D)` and verifies an isomorphism onto `cayley`.
///
/// Abelian `H` goes through `Cay(Dih(H), D·c)`; otherwise the lemma's
/// converse, which rebuilds `Cay(G, a·D)` on the original group.
fn round_trip(cayley: &CayleyGraph, h: &Subgroup, local: &LocalSubgroup, d: &[Elem]) -> Result<bool, HarnessError> {
    let g = cayley.group();
    if !local.group.is_abelian() {
        let a = choose_translator(g, h);
        let rebuilt = cayley_from_lemma_data(g, h, a, d)?;
        return Ok(rebuilt.graph().is_isomorphism(cayley.graph(), &(0..g.order()).collect::<Vec<_>>()));
    }
    let dl = local.localize(d).ok_or_else(|| HarnessError::LemmaViolation("D is not inside H".into()))?;
    let ds = DifferenceSet::certify(&local.group, &dl)?;
    let rebuilt = difference_set_to_cayley(&ds)?;
    Ok(reconstruction_isomorphism(&rebuilt, cayley, local, &ds)?.is_some())
}

/// Strict form: the difference set `D = a⁻¹S` for the chosen `a`, with
/// every check required to pass.
pub fn cayley_to_difference_set(cayley: &CayleyGraph) -> Result<EquivalenceReport, HarnessError> {
    let (_, params) = certify_bipartite_d3(cayley)?;
    if params.k + 1 == params.n {
        return Err(HarnessError::TrivialGraph { k: params.k });
    }
    let report = examine_equivalence(cayley)?;
    if let Some(t) = report.per_translator.iter().find(|t| t.ds_params != Some(params) || !t.reversal) {
        return Err(HarnessError::LemmaViolation(format!(
            "a = {}: D = a⁻¹S gives {:?}, reversal {}",
            cayley.group().name(t.a),
            t.ds_params,
            t.reversal
        )));
    }
    if !report.checks.all() {
        let failed: Vec<String> = report.checks.as_map().into_iter().filter(|(_, v)| !v).map(|(k, _)| k).collect();
        return Err(HarnessError::LemmaViolation(format!("failed checks: {}", failed.join(", "))));
    }
    Ok(report)
}

/// Converse of the lemma: for a normal index-2 `H`, `a ∉ H` and a difference
/// set `D ⊆ H` with `D⁻¹ = aDa`, `Cay(G, aD)` is a bipartite distance-regular
/// graph of diameter 3 (or the trivial `K_{n,n}` minus a matching).
pub fn cayley_from_lemma_data(g: &FiniteGroup, h: &Subgroup, a: Elem, d: &[Elem]) -> Result<CayleyGraph, HarnessError> {
    if h.order() * 2 != g.order() || !g.is_normal(h) {
        return Err(HarnessError::Precondition("H must be a normal subgroup of index 2".into()));
    }
    if !reversal_condition_holds(g, h, d, a)? {
        return Err(HarnessError::Precondition("D⁻¹ = aDa fails".into()));
    }
    let local = LocalSubgroup::new(g, h);
    let dl = local.localize(d).ok_or_else(|| HarnessError::Precondition("D must lie in H".into()))?;
    let ds = DifferenceSet::certify(&local.group, &dl)?;
    let s: Vec<Elem> = d.iter().map(|&x| g.multiply(a, x)).collect();
    let cayley = build_cayley(g, &s)?;
    let (_, params) = certify_bipartite_d3(&cayley).map_err(|e| HarnessError::LemmaViolation(e.to_string()))?;
    if params != ds.params() {
        return Err(HarnessError::LemmaViolation(format!("graph gives {params}, D gives {}", ds.params())));
    }
    Ok(cayley)
}

/// `Cay(Dih(H), D·c)` for an abelian `H`, certified.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub cayley: CayleyGraph,
    pub array: IntersectionArray,
    /// `c`, the complement generator of `Dih(H)`.
    pub c: Elem,
}

/// Builds `G = Dih(H)` and `S = D·c`; in `Dih(H)` the element `h ∈ H` keeps
/// its index and `h·c` has index `|H| + h`.
pub fn difference_set_to_cayley(d: &DifferenceSet) -> Result<Reconstruction, HarnessError> {
    let h = d.group();
    if !h.is_abelian() {
        return Err(HarnessError::NonAbelian);
    }
    if d.is_trivial() {
        return Err(HarnessError::TrivialDifferenceSet);
    }
    let g = FiniteGroup::generalized_dihedral(h)?;
    let c = g.complement_generator();
    let s: Vec<Elem> = d.members().iter().map(|&x| g.multiply(x, c)).collect();
    let cayley = build_cayley(&g, &s)?;
    let (array, params) = certify_bipartite_d3(&cayley).map_err(|e| HarnessError::LemmaViolation(e.to_string()))?;
    if params != d.params() {
        return Err(HarnessError::LemmaViolation(format!("graph gives {params}, D gives {}", d.params())));
    }
    Ok(Reconstruction { cayley, array, c })
}

/// A verified isomorphism `Cay(Dih(H), Dc) -> Cay(G, S)`, composed from the
/// two explicit correspondences with the development of `D`; falls back to
/// the general search.
pub fn reconstruction_isomorphism(
    rebuilt: &Reconstruction,
    original: &CayleyGraph,
    local: &LocalSubgroup,
    d: &DifferenceSet,
) -> Result<Option<Vec<usize>>, HarnessError> {
    let design = d.development()?;
    let n = local.group.order();
    // H sits at indices 0..n in Dih(H)
    let dih_labels: Vec<Elem> = (0..n).collect();
    let to_dih = explicit_correspondence(&design, &rebuilt.cayley, &dih_labels);
    let to_original = explicit_correspondence(&design, original, &local.embedding);
    if let (Some(x), Some(y)) = (to_dih, to_original) {
        let mut map = vec![0; 2 * n];
        for (v, &dv) in x.map.iter().enumerate() {
            map[dv] = y.map[v];
        }
        if rebuilt.cayley.graph().is_isomorphism(original.graph(), &map) {
            return Ok(Some(map));
        }
    }
    find_isomorphism(rebuilt.cayley.graph(), original.graph())
}
