//! Difference sets: verification, complements, developments and the
//! reversal condition `D⁻¹ = aDa`.
//!
//! A subset `D` of a group `H` of order `n` is an `(n,k,mu)` difference set if
//! `|D| = k` and every non-identity `h` equals `d₁·d₂⁻¹` for exactly `mu`
//! ordered pairs from `D`.

mod search;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::design::{DesignDefect, SymmetricDesign};
use crate::group::{Elem, FiniteGroup, GroupError, Subgroup};
use crate::params::Params;

pub use search::{search_difference_sets, SearchError, SearchOptions, SearchOutcome, DEFAULT_BUDGET, MAX_SEARCH_ORDER};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiffsetError {
    #[error("element {0} is not in the group")]
    ElementOutOfRange(Elem),
    #[error("element {0} is not in the subgroup")]
    NotInSubgroup(String),
    #[error("{0} is not a difference set")]
    NotADifferenceSet(String),
    #[error("a = {0} lies in H")]
    TranslatorInSubgroup(String),
    #[error("development is not a symmetric design: {0}")]
    Development(#[from] DesignDefect),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// Sorted, deduplicated copy of `d`, or an error if some entry is out of range.
fn normalized(h: &FiniteGroup, d: &[Elem]) -> Result<Vec<Elem>, DiffsetError> {
    if let Some(&x) = d.iter().find(|&&x| x >= h.order()) {
        return Err(DiffsetError::ElementOutOfRange(x));
    }
    let mut v = d.to_vec();
    v.sort_unstable();
    v.dedup();
    Ok(v)
}

/// `count[h]` = number of ordered pairs `(d₁,d₂)`, `d₁ ≠ d₂`, with `d₁·d₂⁻¹ = h`.
///
/// The identity entry is always 0. Entries of `d` must be elements of `h`;
/// repeated entries are counted once.
pub fn difference_multiset(h: &FiniteGroup, d: &[Elem]) -> Vec<usize> {
    let d = normalized(h, d).expect("difference_multiset: element out of range");
    let mut count = vec![0usize; h.order()];
    for &x in &d {
        for &y in &d {
            if x != y {
                count[h.multiply(x, h.inverse(y))] += 1;
            }
        }
    }
    count
}

/// The parameters of `d` if it is a difference set in `h`.
///
/// Sets of size at most 1 have no differences and get `mu = 0`.
pub fn is_difference_set(h: &FiniteGroup, d: &[Elem]) -> Option<Params> {
    let d = normalized(h, d).ok()?;
    let count = difference_multiset(h, &d);
    let e = h.identity();
    let mut rest = h.elements().filter(|&x| x != e).map(|x| count[x]);
    let mu = rest.next().unwrap_or(0);
    rest.all(|c| c == mu).then(|| Params::new(h.order(), d.len(), mu))
}

/// `|D| ∈ {0, 1, n-1, n}`.
pub fn is_trivial(h: &FiniteGroup, d: &[Elem]) -> bool {
    let k = normalized(h, d).map(|v| v.len()).unwrap_or(usize::MAX);
    let n = h.order();
    k <= 1 || k + 1 == n || k == n
}

/// `{d·a : d ∈ D}`, sorted.
pub fn right_translate(h: &FiniteGroup, d: &[Elem], a: Elem) -> Vec<Elem> {
    let mut v: Vec<Elem> = d.iter().map(|&x| h.multiply(x, a)).collect();
    v.sort_unstable();
    v
}

/// Whether `{d⁻¹ : d ∈ D} = {a·d·a : d ∈ D}`, for `D ⊆ H` and `a ∈ G∖H`.
pub fn reversal_condition_holds(g: &FiniteGroup, h: &Subgroup, d: &[Elem], a: Elem) -> Result<bool, DiffsetError> {
    let d = normalized(g, d)?;
    if a >= g.order() {
        return Err(DiffsetError::ElementOutOfRange(a));
    }
    if h.contains(a) {
        return Err(DiffsetError::TranslatorInSubgroup(g.name(a).into()));
    }
    if let Some(&x) = d.iter().find(|&&x| !h.contains(x)) {
        return Err(DiffsetError::NotInSubgroup(g.name(x).into()));
    }
    let mut inverted: Vec<Elem> = d.iter().map(|&x| g.inverse(x)).collect();
    let mut twisted: Vec<Elem> = d.iter().map(|&x| g.multiply(g.multiply(a, x), a)).collect();
    inverted.sort_unstable();
    twisted.sort_unstable();
    Ok(inverted == twisted)
}

/// A subset of `group` with certified difference-set parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DifferenceSet {
    group: FiniteGroup,
    members: Vec<Elem>,
    params: Params,
}

impl DifferenceSet {
    pub fn certify(group: &FiniteGroup, members: &[Elem]) -> Result<Self, DiffsetError> {
        let members = normalized(group, members)?;
        match is_difference_set(group, &members) {
            Some(params) => Ok(Self { group: group.clone(), members, params }),
            None => Err(DiffsetError::NotADifferenceSet(format!("{{{}}}", group.names_of(&members).join(",")))),
        }
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn params(&self) -> Params {
        self.params
    }

    pub fn names(&self) -> Vec<String> {
        self.group.names_of(&self.members)
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.members.binary_search(&x).is_ok()
    }

    pub fn is_trivial(&self) -> bool {
        is_trivial(&self.group, &self.members)
    }

    /// `H∖D`, parameters `(n, n-k, n-2k+mu)`.
    pub fn complement(&self) -> Result<DifferenceSet, DiffsetError> {
        let rest: Vec<Elem> = self.group.elements().filter(|&x| !self.contains(x)).collect();
        let c = Self::certify(&self.group, &rest)?;
        debug_assert_eq!(Some(c.params), self.params.complement());
        Ok(c)
    }

    /// `D·a`, again a difference set with the same parameters.
    pub fn translate(&self, a: Elem) -> DifferenceSet {
        Self {
            group: self.group.clone(),
            members: right_translate(&self.group, &self.members, a),
            params: self.params,
        }
    }

    /// The design with points `H` and blocks `D·a`, block `a` at index `a`.
    pub fn development(&self) -> Result<SymmetricDesign, DiffsetError> {
        let blocks = self.group.elements().map(|a| right_translate(&self.group, &self.members, a)).collect();
        Ok(SymmetricDesign::new(self.group.order(), blocks)?)
    }
}

/// Search result document.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSetDocument {
    pub group_spec: String,
    pub params: Params,
    pub feasible: bool,
    pub sets: Vec<Vec<String>>,
    pub dedup: bool,
    pub nodes_visited: u64,
}

impl DifferenceSetDocument {
    pub fn new(group_spec: &str, params: Params, dedup: bool, outcome: &SearchOutcome) -> Self {
        Self {
            group_spec: group_spec.to_string(),
            params,
            feasible: outcome.feasible,
            sets: outcome.sets.iter().map(DifferenceSet::names).collect(),
            dedup,
            nodes_visited: outcome.nodes_visited,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: usize) -> FiniteGroup {
        FiniteGroup::cyclic(n).unwrap()
    }

    #[test]
    fn multiset_examples() {
        let c = difference_multiset(&z(7), &[1, 2, 4]);
        assert_eq!(c, vec![0, 1, 1, 1, 1, 1, 1]);
        let c = difference_multiset(&z(7), &[1, 2, 3]);
        assert_eq!(c[6], 2);
        assert_eq!(c[3], 0);
        assert_eq!(difference_multiset(&z(7), &[]), vec![0; 7]);
    }

    #[test]
    fn recognition() {
        assert_eq!(is_difference_set(&z(7), &[1, 2, 4]), Some(Params::new(7, 3, 1)));
        assert_eq!(is_difference_set(&z(7), &[1, 2, 3]), None);
        assert_eq!(is_difference_set(&z(4), &[1, 2, 3]), Some(Params::new(4, 3, 2)));
        assert_eq!(is_difference_set(&z(4), &[9]), None);
        assert_eq!(is_difference_set(&z(1), &[0]), Some(Params::new(1, 1, 0)));
    }

    #[test]
    fn triviality() {
        assert!(is_trivial(&z(4), &[1, 2, 3]));
        assert!(!is_trivial(&z(7), &[1, 2, 4]));
        assert!(is_trivial(&z(2), &[]));
    }

    #[test]
    fn complements() {
        let d = DifferenceSet::certify(&z(7), &[4, 1, 2]).unwrap();
        let c = d.complement().unwrap();
        assert_eq!(c.members(), &[0, 3, 5, 6]);
        assert_eq!(c.params(), Params::new(7, 4, 2));
        assert_eq!(c.complement().unwrap(), d);
        let one = DifferenceSet::certify(&z(4), &[1, 2, 3]).unwrap().complement().unwrap();
        assert_eq!((one.members(), one.params()), (&[0][..], Params::new(4, 1, 0)));
    }

    #[test]
    fn developments() {
        let fano = DifferenceSet::certify(&z(7), &[1, 2, 4]).unwrap().development().unwrap();
        assert_eq!(fano.params(), Params::new(7, 3, 1));
        assert_eq!(fano.blocks()[3], vec![0, 4, 5]);
        let d = DifferenceSet::certify(&z(4), &[1, 2, 3]).unwrap().development().unwrap();
        assert_eq!(d.params(), Params::new(4, 3, 2));
        assert_eq!(d.blocks()[1], vec![0, 2, 3]);
        // (4,1,0) has mu = 0, which designs reject
        let single = DifferenceSet::certify(&z(4), &[0]).unwrap();
        assert_eq!(single.development(), Err(DiffsetError::Development(DesignDefect::ZeroMu)));
    }

    #[test]
    fn reversal_in_dihedral_and_abelian_groups() {
        let z7 = z(7);
        let dih = FiniteGroup::generalized_dihedral(&z7).unwrap();
        let h = Subgroup::new(&dih, &[0, 1, 2, 3, 4, 5, 6]).unwrap();
        let c = dih.complement_generator();
        assert!(reversal_condition_holds(&dih, &h, &[1, 2, 4], c).unwrap());
        assert!(reversal_condition_holds(&dih, &h, &[1, 2, 4], c + 3).unwrap());

        let g = FiniteGroup::direct_product(&[&z(2), &z7]).unwrap();
        let h = Subgroup::new(&g, &g.parse_elements("(0,0),(0,1),(0,2),(0,3),(0,4),(0,5),(0,6)").unwrap()).unwrap();
        let d = g.parse_elements("(0,1),(0,2),(0,4)").unwrap();
        let a = g.element_by_name("(1,0)").unwrap();
        assert!(!reversal_condition_holds(&g, &h, &d, a).unwrap());
        // symmetric D and central a
        let sym = g.parse_elements("(0,1),(0,6)").unwrap();
        assert!(reversal_condition_holds(&g, &h, &sym, a).unwrap());
        assert!(matches!(
            reversal_condition_holds(&g, &h, &d, d[0]),
            Err(DiffsetError::TranslatorInSubgroup(_))
        ));
        assert!(matches!(reversal_condition_holds(&g, &h, &[a], a), Err(DiffsetError::NotInSubgroup(_))));
    }

    #[test]
    fn translates_stay_difference_sets() {
        let d = DifferenceSet::certify(&z(7), &[1, 2, 4]).unwrap();
        for a in 0..7 {
            let t = d.translate(a);
            assert_eq!(DifferenceSet::certify(&z(7), t.members()).unwrap(), t);
        }
    }
}
