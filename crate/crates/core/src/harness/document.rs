use std::collections::BTreeMap;

use serde::Serialize;
use serde_json::{json, Value};

use super::{
    choose_translator, classify_case, examine_equivalence, translated_set, verify_projective_plane_theorem, CaseTag,
    Classification, HarnessError, SylowHorn, Witness,
};
use crate::cayley::CayleyGraph;
use crate::group::FiniteGroup;
use crate::params::Params;

/// JSON report shared by the equivalence, classification and plane checks.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct StructureDocument {
    pub case: CaseTag,
    pub witness: Option<Value>,
    #[serde(rename = "H_members")]
    pub h_members: Vec<String>,
    pub a: String,
    #[serde(rename = "D_members")]
    pub d_members: Vec<String>,
    pub params: Params,
    pub checks: BTreeMap<String, bool>,
}

impl StructureDocument {
    pub fn all_checks_pass(&self) -> bool {
        self.checks.values().all(|&b| b)
    }
}

fn witness_value(g: &FiniteGroup, c: &Classification) -> Option<Value> {
    if let Some(s) = &c.sylow {
        return Some(json!({
            "kind": "sylow_two_subgroup",
            "horn": s.horn,
            "sylow": g.names_of(&s.sylow),
            "element": s.witness.map(|a| g.name(a).to_string()),
            "normal_complement": s.normal_complement.as_ref().map(|n| g.names_of(n)),
            "zero_eigenvalue": s.zero_eigenvalue,
        }));
    }
    c.witness.as_ref().map(|w| match w {
        Witness::InvolutionOutsideH(a) => json!({"kind": "involution_outside_H", "element": g.name(*a)}),
        Witness::InvolutionInS(a) => json!({"kind": "involution_in_S", "element": g.name(*a)}),
        Witness::Reconstruction { dih, connection_set, isomorphism } => json!({
            "kind": "dih_reconstruction",
            "group": "Dih(H)",
            "connection_set": dih.names_of(connection_set),
            "isomorphism_verified": isomorphism.is_some(),
            "isomorphism": isomorphism.as_ref().map(|m| {
                m.iter().enumerate().map(|(x, &y)| [dih.name(x).to_string(), g.name(y).to_string()]).collect::<Vec<_>>()
            }),
        }),
        Witness::Open { involution_outside_h } => json!({
            "kind": "open_case",
            "involution_outside_H": involution_outside_h.map(|a| g.name(a).to_string()),
        }),
    })
}

/// Whether the classification's own evidence checks out.
fn witness_verified(cayley: &CayleyGraph, c: &Classification) -> bool {
    let g = cayley.group();
    match (&c.tag, &c.witness) {
        (CaseTag::Case1NOdd, Some(Witness::InvolutionOutsideH(a))) => g.is_involution(*a) && !c.h.contains(*a),
        (CaseTag::Case2KOdd, Some(Witness::InvolutionInS(a))) => {
            g.is_involution(*a) && cayley.connection_set().contains(a)
        }
        (CaseTag::Case31NMod4Eq2, _) => c
            .sylow
            .as_ref()
            .is_some_and(|s| s.horn == SylowHorn::Klein && s.witness.is_some_and(|a| g.is_involution(a) && !c.h.contains(a))),
        (CaseTag::Case32HAbelian, Some(Witness::Reconstruction { isomorphism, .. })) => isomorphism.is_some(),
        (CaseTag::TrivialKEqNMinus1, None) => true,
        (CaseTag::OpenCase, Some(Witness::Open { involution_outside_h })) => {
            involution_outside_h.is_none_or(|a| g.is_involution(a) && !c.h.contains(a))
        }
        _ => false,
    }
}

fn skeleton(cayley: &CayleyGraph, c: &Classification) -> StructureDocument {
    let g = cayley.group();
    let a = choose_translator(g, &c.h);
    StructureDocument {
        case: c.tag,
        witness: witness_value(g, c),
        h_members: g.names_of(c.h.members()),
        a: g.name(a).to_string(),
        d_members: g.names_of(&translated_set(g, a, cayley.connection_set())),
        params: c.params,
        checks: BTreeMap::new(),
    }
}

/// Both directions of the correspondence, with the case tag attached.
pub fn equivalence_document(cayley: &CayleyGraph, tolerance: f64) -> Result<StructureDocument, HarnessError> {
    let report = examine_equivalence(cayley)?;
    let classification = classify_case(cayley, tolerance)?;
    let mut doc = skeleton(cayley, &classification);
    doc.checks = report.checks.as_map();
    Ok(doc)
}

pub fn classification_document(cayley: &CayleyGraph, tolerance: f64) -> Result<StructureDocument, HarnessError> {
    let c = classify_case(cayley, tolerance)?;
    let mut doc = skeleton(cayley, &c);
    let Params { n, k, .. } = c.params;
    let open_conditions = n % 4 == 0 && k % 2 == 0 && !cayley.group().subgroup_as_group(&c.h).0.is_abelian();
    doc.checks.insert("precondition_certified".into(), true);
    doc.checks.insert("witness_verified".into(), witness_verified(cayley, &c));
    doc.checks.insert("open_case_consistent".into(), (c.tag == CaseTag::OpenCase) == open_conditions);
    Ok(doc)
}

pub fn plane_document(cayley: &CayleyGraph, tolerance: f64) -> Result<StructureDocument, HarnessError> {
    let report = verify_projective_plane_theorem(cayley)?;
    let c = classify_case(cayley, tolerance)?;
    let g = cayley.group();
    let mut doc = skeleton(cayley, &c);
    doc.a = g.name(report.a).to_string();
    doc.d_members = g.names_of(&report.d);
    doc.checks = report.checks;
    Ok(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cayley::build_cayley;

    #[test]
    fn heawood_document_fields() {
        let g = FiniteGroup::generalized_dihedral(&FiniteGroup::cyclic(7).unwrap()).unwrap();
        let c = build_cayley(&g, &g.parse_elements("1c,2c,4c").unwrap()).unwrap();
        let doc = equivalence_document(&c, 1e-9).unwrap();
        assert!(doc.all_checks_pass());
        let v = serde_json::to_value(&doc).unwrap();
        let keys: Vec<&String> = v.as_object().unwrap().keys().collect();
        assert_eq!(keys, ["D_members", "H_members", "a", "case", "checks", "params", "witness"]);
        assert_eq!(v["case"], "CASE1_N_ODD");
        assert_eq!(v["a"], "0c");
        assert_eq!(v["D_members"], json!(["3", "5", "6"]));
        assert!(classification_document(&c, 1e-9).unwrap().all_checks_pass());
        assert!(plane_document(&c, 1e-9).unwrap().all_checks_pass());
    }
}
