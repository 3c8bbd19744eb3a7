use std::collections::BTreeMap;

use super::{
    certify_bipartite_d3, choose_translator, identity_part, incidence_graph_isomorphic_to_cayley, translated_set,
    HarnessError, IsomorphismWitness, LocalSubgroup,
};
use crate::cayley::CayleyGraph;
use crate::diffset::{reversal_condition_holds, DifferenceSet};
use crate::group::{Elem, Subgroup};
use crate::params::Params;

/// Check of the girth-6 statement: `|G| = 2(q²+q+1)`, some involution
/// `a ∉ H` exists and `D = aS` is a `(q²+q+1, q+1, 1)` difference set with
/// `D⁻¹ = aDa`, developing to a projective plane of order `q`.
#[derive(Clone, Debug)]
pub struct PlaneReport {
    pub q: u64,
    pub h: Subgroup,
    pub a: Elem,
    pub d: Vec<Elem>,
    pub params: Params,
    pub isomorphism: Option<IsomorphismWitness>,
    pub checks: BTreeMap<String, bool>,
}

impl PlaneReport {
    pub fn all(&self) -> bool {
        self.checks.values().all(|&b| b)
    }
}

pub fn verify_projective_plane_theorem(cayley: &CayleyGraph) -> Result<PlaneReport, HarnessError> {
    let girth = cayley.graph().girth().value();
    if girth != Some(6) {
        return Err(HarnessError::NotGirthSix(girth));
    }
    let (_, params) = certify_bipartite_d3(cayley)?;
    let g = cayley.group();
    let h = identity_part(cayley)?;
    let q = params.k as u64 - 1;
    let plane_points = q * q + q + 1;
    let a = choose_translator(g, &h);
    let d = translated_set(g, a, cayley.connection_set());
    let local = LocalSubgroup::new(g, &h);
    let ds = local.localize(&d).and_then(|dl| DifferenceSet::certify(&local.group, &dl).ok());
    let expected = Params::new(plane_points as usize, params.k, 1);
    let design = ds.as_ref().and_then(|ds| ds.development().ok());
    let isomorphism = match &design {
        Some(design) => incidence_graph_isomorphic_to_cayley(design, cayley, Some(&local.embedding))?,
        None => None,
    };
    let checks: BTreeMap<String, bool> = [
        ("order_is_twice_plane_size", g.order() as u64 == 2 * plane_points),
        ("mu_is_one", params.mu == 1),
        ("a_is_involution", g.is_involution(a)),
        ("ds_certified", ds.as_ref().map(|x| x.params()) == Some(expected)),
        ("reversal_holds", reversal_condition_holds(g, &h, &d, a).unwrap_or(false)),
        (
            "development_is_plane_of_order_q",
            design.as_ref().and_then(|x| x.recognize_projective_plane()) == Some(q),
        ),
        ("incidence_graph_isomorphic", isomorphism.is_some()),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    Ok(PlaneReport { q, h, a, d, params, isomorphism, checks })
}
