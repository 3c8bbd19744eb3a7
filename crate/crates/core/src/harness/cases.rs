//! Case analysis for when a bipartite diameter-3 distance-regular Cayley
//! graph is a Cayley graph on a semidirect product `H ⋊ Z₂`.

use std::fmt;

use serde::Serialize;

use super::{
    certify_bipartite_d3, choose_translator, difference_set_to_cayley, identity_part, reconstruction_isomorphism,
    translated_set, HarnessError, LocalSubgroup,
};
use crate::cayley::{integer_determinant, partition_from_normal_subgroup, quotient_eigenvalues_contained, CayleyGraph};
use crate::diffset::DifferenceSet;
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::params::Params;

/// The first case of the proof order that applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CaseTag {
    #[serde(rename = "TRIVIAL_K_EQ_N_MINUS_1")]
    TrivialKEqNMinus1,
    #[serde(rename = "CASE1_N_ODD")]
    Case1NOdd,
    #[serde(rename = "CASE2_K_ODD")]
    Case2KOdd,
    #[serde(rename = "CASE3_1_N_MOD4_EQ_2")]
    Case31NMod4Eq2,
    #[serde(rename = "CASE3_2_H_ABELIAN")]
    Case32HAbelian,
    #[serde(rename = "OPEN_CASE")]
    OpenCase,
}

impl CaseTag {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::TrivialKEqNMinus1 => "TRIVIAL_K_EQ_N_MINUS_1",
            CaseTag::Case1NOdd => "CASE1_N_ODD",
            CaseTag::Case2KOdd => "CASE2_K_ODD",
            CaseTag::Case31NMod4Eq2 => "CASE3_1_N_MOD4_EQ_2",
            CaseTag::Case32HAbelian => "CASE3_2_H_ABELIAN",
            CaseTag::OpenCase => "OPEN_CASE",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Evidence attached to a case.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// An involution `a ∉ H`, so `G = H ⋊ ⟨a⟩`.
    InvolutionOutsideH(Elem),
    /// An involution in `S`.
    InvolutionInS(Elem),
    /// `Cay(Dih(H), D·c)` with a verified isomorphism onto the input graph.
    Reconstruction {
        dih: FiniteGroup,
        connection_set: Vec<Elem>,
        isomorphism: Option<Vec<usize>>,
    },
    /// Open case: whether this particular `G` still has an involution outside `H`.
    Open { involution_outside_h: Option<Elem> },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SylowHorn {
    Klein,
    Cyclic,
}

/// Sylow 2-subgroup analysis for `|H| ≡ 2 (mod 4)`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SylowReport {
    pub sylow: Vec<Elem>,
    pub horn: SylowHorn,
    /// Klein horn: an involution of `L` outside `H`.
    pub witness: Option<Elem>,
    pub involutions_outside_h: Vec<Elem>,
    /// Cyclic horn: the normal subgroup of odd-order elements, if it is one of index 4.
    pub normal_complement: Option<Vec<Elem>>,
    pub quotient: Option<Vec<Vec<u64>>>,
    /// Whether the 4×4 quotient matrix is singular (exact determinant).
    pub zero_eigenvalue: Option<bool>,
    pub quotient_eigenvalues_contained: Option<bool>,
}

pub fn sylow_case_analysis(
    g: &FiniteGroup,
    h: &Subgroup,
    cayley: Option<&CayleyGraph>,
    tolerance: f64,
) -> Result<SylowReport, HarnessError> {
    if h.order() * 2 != g.order() || h.order() % 4 != 2 {
        return Err(HarnessError::Precondition(format!(
            "need [G:H] = 2 and |H| = 2 mod 4 (|G| = {}, |H| = {})",
            g.order(),
            h.order()
        )));
    }
    let l = g.sylow_two_subgroup();
    debug_assert_eq!(l.order(), 4);
    let involutions_outside_h = g.involutions_outside(h);
    if !g.is_cyclic_subgroup(&l) {
        let witness = l.members().iter().copied().find(|&x| !h.contains(x) && g.is_involution(x));
        return Ok(SylowReport {
            sylow: l.members().to_vec(),
            horn: SylowHorn::Klein,
            witness,
            involutions_outside_h,
            normal_complement: None,
            quotient: None,
            zero_eigenvalue: None,
            quotient_eigenvalues_contained: None,
        });
    }
    let odd: Vec<Elem> = g.elements().filter(|&x| g.order_of_element(x) % 2 == 1).collect();
    let n = Subgroup::new(g, &odd).ok().filter(|n| n.order() * 4 == g.order() && g.is_normal(n));
    let mut report = SylowReport {
        sylow: l.members().to_vec(),
        horn: SylowHorn::Cyclic,
        witness: None,
        involutions_outside_h,
        normal_complement: n.as_ref().map(|n| n.members().to_vec()),
        quotient: None,
        zero_eigenvalue: None,
        quotient_eigenvalues_contained: None,
    };
    if let (Some(n), Some(cayley)) = (n, cayley) {
        let partition = partition_from_normal_subgroup(cayley, &n)?
            .ok_or_else(|| HarnessError::LemmaViolation("coset partition is not equitable".into()))?;
        let q: Vec<Vec<i64>> = partition.quotient().iter().map(|r| r.iter().map(|&x| x as i64).collect()).collect();
        report.zero_eigenvalue = Some(integer_determinant(&q) == 0);
        report.quotient_eigenvalues_contained =
            Some(quotient_eigenvalues_contained(&partition, cayley.graph(), tolerance));
        report.quotient = Some(partition.quotient().to_vec());
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct Classification {
    pub tag: CaseTag,
    pub witness: Option<Witness>,
    pub params: Params,
    pub h: Subgroup,
    pub sylow: Option<SylowReport>,
}

/// Applies the case tests in order: trivial, `n` odd, `k` odd,
/// `n ≡ 2 (mod 4)`, `H` abelian, else open.
pub fn classify_case(cayley: &CayleyGraph, tolerance: f64) -> Result<Classification, HarnessError> {
    let (_, params) = certify_bipartite_d3(cayley)?;
    let g = cayley.group();
    let h = identity_part(cayley)?;
    let Params { n, k, .. } = params;
    let done = |tag, witness, sylow| Ok(Classification { tag, witness, params, h: h.clone(), sylow });
    if k + 1 == n {
        return done(CaseTag::TrivialKEqNMinus1, None, None);
    }
    if n % 2 == 1 {
        let a = g
            .involutions_outside(&h)
            .first()
            .copied()
            .ok_or_else(|| HarnessError::LemmaViolation("n is odd but no involution lies outside H".into()))?;
        return done(CaseTag::Case1NOdd, Some(Witness::InvolutionOutsideH(a)), None);
    }
    if k % 2 == 1 {
        let a = cayley
            .connection_set()
            .iter()
            .copied()
            .find(|&s| g.is_involution(s))
            .ok_or_else(|| HarnessError::LemmaViolation("|S| is odd but S has no involution".into()))?;
        return done(CaseTag::Case2KOdd, Some(Witness::InvolutionInS(a)), None);
    }
    if n % 4 == 2 {
        let report = sylow_case_analysis(g, &h, Some(cayley), tolerance)?;
        let witness = report.witness.map(Witness::InvolutionOutsideH);
        return done(CaseTag::Case31NMod4Eq2, witness, Some(report));
    }
    let local = LocalSubgroup::new(g, &h);
    if local.group.is_abelian() {
        let a = choose_translator(g, &h);
        let d = translated_set(g, a, cayley.connection_set());
        let dl = local.localize(&d).ok_or_else(|| HarnessError::LemmaViolation("a⁻¹S is not inside H".into()))?;
        let ds = DifferenceSet::certify(&local.group, &dl)?;
        let rebuilt = difference_set_to_cayley(&ds)?;
        let isomorphism = reconstruction_isomorphism(&rebuilt, cayley, &local, &ds)?;
        let witness = Witness::Reconstruction {
            dih: rebuilt.cayley.group().clone(),
            connection_set: rebuilt.cayley.connection_set().to_vec(),
            isomorphism,
        };
        return done(CaseTag::Case32HAbelian, Some(witness), None);
    }
    let involution = g.involutions_outside(&h).first().copied();
    done(CaseTag::OpenCase, Some(Witness::Open { involution_outside_h: involution }), None)
}
