//! Explicit finite groups on the indices `0..order`, stored as a full
//! multiplication table.
//!
//! Constructors assign readable element names: `Z<n>` uses `"i"`, dihedral
//! groups use `"r<i>"` for rotations and `"r<i>·s"` for reflections, direct
//! products use tuples `"(a,b)"` and index-2 semidirect extensions append a
//! `c` to the name of the `H`-part (so `Dih(Z7)` has elements `0..6` and
//! `0c..6c`). Name lookup ignores whitespace, `·` and `*`.

mod iso;
pub mod spec;
mod subgroup;

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

pub use iso::{find_group_isomorphism, MAX_ISOMORPHISM_ORDER};
pub use subgroup::Subgroup;

/// An element of a [`FiniteGroup`], identified by its table index.
pub type Elem = usize;

/// Largest group order supported anywhere in the crate.
pub const MAX_ORDER: usize = 512;

/// Orders up to this bound get an exhaustive associativity check.
pub const FULL_ASSOCIATIVITY_LIMIT: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order {0} out of range 1..={MAX_ORDER}")]
    OrderOutOfRange(usize),
    #[error("dihedral group order must be even, got {0}")]
    OddDihedralOrder(usize),
    #[error("table is not square: row {row} has {len} entries, expected {expected}")]
    NotSquare { row: usize, len: usize, expected: usize },
    #[error("table entry {value} at ({row},{col}) is out of range")]
    EntryOutOfRange { row: usize, col: usize, value: usize },
    #[error("row {0} is not a permutation")]
    RowNotPermutation(usize),
    #[error("column {0} is not a permutation")]
    ColumnNotPermutation(usize),
    #[error("no identity element")]
    NoIdentity,
    #[error("element {0} has no two-sided inverse")]
    MissingInverse(usize),
    #[error("not associative: ({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("expected {expected} element names, got {got}")]
    NameCount { expected: usize, got: usize },
    #[error("duplicate element name {0:?}")]
    DuplicateName(String),
    #[error("map is not a permutation of the group elements")]
    NotAPermutation,
    #[error("map is not an automorphism: phi({a}*{b}) != phi({a})*phi({b})")]
    NotAutomorphism { a: usize, b: usize },
    #[error("automorphism does not square to the identity map (at element {0})")]
    NotInvolutive(usize),
    #[error("group is not abelian: {a}*{b} != {b}*{a}")]
    NotAbelian { a: String, b: String },
    #[error("invalid subgroup: {0}")]
    InvalidSubgroup(String),
    #[error("subgroup of order {sub} does not have index 2 in a group of order {order}")]
    NotIndexTwo { sub: usize, order: usize },
    #[error("unknown element name {0:?}")]
    UnknownElement(String),
    #[error("isomorphism search is limited to order <= {MAX_ISOMORPHISM_ORDER}, got {0}")]
    TooLargeForIsomorphism(usize),
}

/// A finite group as an explicit multiplication table on `0..order`.
///
/// Immutable after construction; every constructor validates the group axioms
/// (associativity exhaustively up to [`FULL_ASSOCIATIVITY_LIMIT`], sampled above).
#[derive(Clone, Debug)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<Elem>,
    identity: Elem,
    inverses: Vec<Elem>,
    names: Vec<String>,
    lookup: HashMap<String, Elem>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && self.names == other.names
    }
}

impl Eq for FiniteGroup {}

/// Canonical form of an element name used for lookup.
pub fn normalize_name(name: &str) -> String {
    name.chars()
        .filter(|c| !c.is_whitespace() && *c != '·' && *c != '*')
        .collect()
}

impl FiniteGroup {
    /// Builds a group from a flat table whose group axioms hold by construction.
    fn assemble(order: usize, table: Vec<Elem>, names: Vec<String>) -> Result<Self, GroupError> {
        debug_assert_eq!(table.len(), order * order);
        let identity = find_identity(order, &table).ok_or(GroupError::NoIdentity)?;
        let inverses = find_inverses(order, &table, identity)?;
        let lookup = build_lookup(&names)?;
        Ok(Self { order, table, identity, inverses, names, lookup })
    }

    /// Validates an arbitrary table.
    ///
    /// Checks, in order: squareness, entry range, Latin-square columns and rows,
    /// identity, two-sided inverses and associativity.
    pub fn from_table(rows: &[Vec<Elem>], names: Option<Vec<String>>) -> Result<Self, GroupError> {
        let order = rows.len();
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange(order));
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != order {
                return Err(GroupError::NotSquare { row, len: r.len(), expected: order });
            }
            if let Some((col, &value)) = r.iter().enumerate().find(|(_, &v)| v >= order) {
                return Err(GroupError::EntryOutOfRange { row, col, value });
            }
        }
        let table: Vec<Elem> = rows.iter().flatten().copied().collect();
        let mut seen = vec![false; order];
        for col in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for row in 0..order {
                let v = table[row * order + col];
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::ColumnNotPermutation(col));
                }
            }
        }
        for row in 0..order {
            seen.iter_mut().for_each(|s| *s = false);
            for &v in &table[row * order..(row + 1) * order] {
                if std::mem::replace(&mut seen[v], true) {
                    return Err(GroupError::RowNotPermutation(row));
                }
            }
        }
        let names = match names {
            Some(names) if names.len() != order => {
                return Err(GroupError::NameCount { expected: order, got: names.len() })
            }
            Some(names) => names,
            None => (0..order).map(|i| i.to_string()).collect(),
        };
        let group = Self::assemble(order, table, names)?;
        group.check_associative()?;
        Ok(group)
    }

    /// Associativity check: all triples up to [`FULL_ASSOCIATIVITY_LIMIT`],
    /// otherwise `10·n²` triples drawn from a fixed-seed generator.
    pub fn check_associative(&self) -> Result<(), GroupError> {
        let n = self.order;
        let check = |a: Elem, b: Elem, c: Elem| {
            if self.multiply(self.multiply(a, b), c) == self.multiply(a, self.multiply(b, c)) {
                Ok(())
            } else {
                Err(GroupError::NotAssociative { a, b, c })
            }
        };
        if n <= FULL_ASSOCIATIVITY_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
            for _ in 0..10 * n * n {
                check(rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n))?;
            }
        }
        Ok(())
    }

    /// The cyclic group `Z_n`.
    pub fn cyclic(n: usize) -> Result<Self, GroupError> {
        if n == 0 || n > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange(n));
        }
        let table = (0..n).flat_map(|a| (0..n).map(move |b| (a + b) % n)).collect();
        Self::assemble(n, table, (0..n).map(|i| i.to_string()).collect())
    }

    /// The dihedral group of the given (even) order, `Z_{order/2} ⋊ Z_2`.
    ///
    /// Element `(i, s)` has index `s·(order/2) + i`; `(i,s)·(j,t) = (i + (-1)^s j, s + t)`.
    pub fn dihedral(order: usize) -> Result<Self, GroupError> {
        if order % 2 == 1 {
            return Err(GroupError::OddDihedralOrder(order));
        }
        if order == 0 || order > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange(order));
        }
        let m = order / 2;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (i, s) = (x % m, x / m);
            for y in 0..order {
                let (j, t) = (y % m, y / m);
                let rot = if s == 0 { (i + j) % m } else { (i + m - j) % m };
                table.push(((s + t) % 2) * m + rot);
            }
        }
        let names = (0..order)
            .map(|x| if x < m { format!("r{x}") } else { format!("r{}·s", x - m) })
            .collect();
        Self::assemble(order, table, names)
    }

    /// Direct product `G_1 × … × G_r` with tuple names; the first factor is the
    /// most significant digit of the mixed-radix index.
    pub fn direct_product(factors: &[&FiniteGroup]) -> Result<Self, GroupError> {
        let order = factors
            .iter()
            .try_fold(1usize, |acc, g| acc.checked_mul(g.order).filter(|&o| o <= MAX_ORDER))
            .ok_or(GroupError::OrderOutOfRange(usize::MAX))?;
        if factors.len() == 1 {
            return Ok(factors[0].clone());
        }
        let digits = |mut x: usize| {
            let mut d = vec![0; factors.len()];
            for (slot, g) in d.iter_mut().zip(factors).rev() {
                *slot = x % g.order;
                x /= g.order;
            }
            d
        };
        let encode = |d: &[usize]| d.iter().zip(factors).fold(0, |acc, (&v, g)| acc * g.order + v);
        let all: Vec<Vec<usize>> = (0..order).map(digits).collect();
        let mut table = Vec::with_capacity(order * order);
        let mut prod = vec![0; factors.len()];
        for x in &all {
            for y in &all {
                for (i, g) in factors.iter().enumerate() {
                    prod[i] = g.multiply(x[i], y[i]);
                }
                table.push(encode(&prod));
            }
        }
        let names = all
            .iter()
            .map(|d| {
                let parts: Vec<&str> = d.iter().zip(factors).map(|(&v, g)| g.name(v)).collect();
                format!("({})", parts.join(","))
            })
            .collect();
        Self::assemble(order, table, names)
    }

    /// Direct sum of cyclic groups `Z_{f_1} × … × Z_{f_r}`.
    pub fn abelian(invariant_factors: &[usize]) -> Result<Self, GroupError> {
        if let Some(&bad) = invariant_factors.iter().find(|&&f| f == 0 || f > MAX_ORDER) {
            return Err(GroupError::OrderOutOfRange(bad));
        }
        let order = invariant_factors
            .iter()
            .try_fold(1usize, |acc, &f| acc.checked_mul(f).filter(|&o| o <= MAX_ORDER))
            .ok_or(GroupError::OrderOutOfRange(usize::MAX))?;
        if invariant_factors.len() <= 1 {
            return Self::cyclic(order);
        }
        let cyclics = invariant_factors
            .iter()
            .map(|&f| Self::cyclic(f))
            .collect::<Result<Vec<_>, _>>()?;
        Self::direct_product(&cyclics.iter().collect::<Vec<_>>())
    }

    /// `H ⋊_phi Z_2` for an automorphism `phi` of `H` with `phi² = id`.
    ///
    /// Pairs `(h, s)` have index `s·|H| + h`; `(h_1, s_1)·(h_2, s_2) =
    /// (h_1·phi^{s_1}(h_2), s_1 + s_2)`. The copy of `H` is `0..|H|` and the
    /// complement generator is `(e, 1)`.
    pub fn semidirect(h: &FiniteGroup, phi: &[Elem]) -> Result<Self, GroupError> {
        let n = h.order;
        if 2 * n > MAX_ORDER {
            return Err(GroupError::OrderOutOfRange(2 * n));
        }
        if phi.len() != n {
            return Err(GroupError::NotAPermutation);
        }
        let mut seen = vec![false; n];
        for &p in phi {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(GroupError::NotAPermutation);
            }
        }
        for a in 0..n {
            for b in 0..n {
                if phi[h.multiply(a, b)] != h.multiply(phi[a], phi[b]) {
                    return Err(GroupError::NotAutomorphism { a, b });
                }
            }
        }
        if let Some(x) = (0..n).find(|&x| phi[phi[x]] != x) {
            return Err(GroupError::NotInvolutive(x));
        }
        let order = 2 * n;
        let mut table = Vec::with_capacity(order * order);
        for x in 0..order {
            let (h1, s1) = (x % n, x / n);
            for y in 0..order {
                let (h2, s2) = (y % n, y / n);
                let twisted = if s1 == 0 { h2 } else { phi[h2] };
                table.push(((s1 + s2) % 2) * n + h.multiply(h1, twisted));
            }
        }
        let names = (0..order)
            .map(|x| if x < n { h.name(x).to_string() } else { format!("{}c", h.name(x - n)) })
            .collect();
        Self::assemble(order, table, names)
    }

    /// The generalized dihedral group `Dih(H) = H ⋊ Z_2` with the complement
    /// acting by inversion. `H` must be abelian.
    pub fn generalized_dihedral(h: &FiniteGroup) -> Result<Self, GroupError> {
        if let Some((a, b)) = h.non_commuting_pair() {
            return Err(GroupError::NotAbelian { a: h.name(a).into(), b: h.name(b).into() });
        }
        let g = Self::semidirect(h, &h.inverses)?;
        let c = g.complement_generator();
        debug_assert_eq!(g.multiply(c, c), g.identity);
        debug_assert!((0..h.order).all(|x| g.multiply(g.multiply(c, x), c) == g.inverse(x)));
        Ok(g)
    }

    /// For groups built by [`FiniteGroup::semidirect`]: the element `(e, 1)`.
    pub fn complement_generator(&self) -> Elem {
        self.order / 2 + self.identity
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.order
    }

    #[inline]
    pub fn multiply(&self, a: Elem, b: Elem) -> Elem {
        self.table[a * self.order + b]
    }

    #[inline]
    pub fn inverse(&self, a: Elem) -> Elem {
        self.inverses[a]
    }

    pub fn inverses(&self) -> &[Elem] {
        &self.inverses
    }

    /// `g·h·g⁻¹`.
    pub fn conjugate(&self, g: Elem, h: Elem) -> Elem {
        self.multiply(self.multiply(g, h), self.inverse(g))
    }

    pub fn power(&self, a: Elem, mut exp: usize) -> Elem {
        let (mut base, mut acc) = (a, self.identity);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.multiply(acc, base);
            }
            base = self.multiply(base, base);
            exp >>= 1;
        }
        acc
    }

    pub fn order_of_element(&self, a: Elem) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.multiply(x, a);
            k += 1;
        }
        k
    }

    pub fn is_involution(&self, a: Elem) -> bool {
        a != self.identity && self.multiply(a, a) == self.identity
    }

    pub fn involutions(&self) -> Vec<Elem> {
        self.elements().filter(|&a| self.is_involution(a)).collect()
    }

    fn non_commuting_pair(&self) -> Option<(Elem, Elem)> {
        for a in 0..self.order {
            for b in a + 1..self.order {
                if self.multiply(a, b) != self.multiply(b, a) {
                    return Some((a, b));
                }
            }
        }
        None
    }

    pub fn is_abelian(&self) -> bool {
        self.non_commuting_pair().is_none()
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn names_of(&self, elems: &[Elem]) -> Vec<String> {
        elems.iter().map(|&e| self.names[e].clone()).collect()
    }

    /// Looks an element up by display name (whitespace, `·` and `*` ignored).
    pub fn element_by_name(&self, name: &str) -> Option<Elem> {
        self.lookup.get(&normalize_name(name)).copied()
    }

    /// Parses a comma-separated list of element names. Commas inside
    /// parentheses belong to tuple names such as `(1,0)c`.
    pub fn parse_elements(&self, list: &str) -> Result<Vec<Elem>, GroupError> {
        split_top_level(list)
            .into_iter()
            .filter(|s| !s.trim().is_empty())
            .map(|s| self.element_by_name(s).ok_or_else(|| GroupError::UnknownElement(s.trim().to_string())))
            .collect()
    }

    /// The rows of the multiplication table.
    pub fn table_rows(&self) -> Vec<Vec<Elem>> {
        self.table.chunks(self.order).map(|r| r.to_vec()).collect()
    }

    /// Checks the four group invariants exhaustively (identity, inverses,
    /// Latin rows and columns, associativity).
    pub fn verify_axioms(&self) -> Result<(), GroupError> {
        let rows = self.table_rows();
        Self::from_table(&rows, Some(self.names.clone())).map(|_| ())
    }
}

fn find_identity(order: usize, table: &[Elem]) -> Option<Elem> {
    (0..order).find(|&e| (0..order).all(|x| table[e * order + x] == x && table[x * order + e] == x))
}

fn find_inverses(order: usize, table: &[Elem], identity: Elem) -> Result<Vec<Elem>, GroupError> {
    (0..order)
        .map(|x| {
            let y = (0..order)
                .find(|&y| table[x * order + y] == identity)
                .ok_or(GroupError::MissingInverse(x))?;
            if table[y * order + x] == identity {
                Ok(y)
            } else {
                Err(GroupError::MissingInverse(x))
            }
        })
        .collect()
}

fn build_lookup(names: &[String]) -> Result<HashMap<String, Elem>, GroupError> {
    let mut lookup = HashMap::with_capacity(names.len());
    for (i, name) in names.iter().enumerate() {
        if lookup.insert(normalize_name(name), i).is_some() {
            return Err(GroupError::DuplicateName(name.clone()));
        }
    }
    Ok(lookup)
}

/// Splits on commas that are not nested inside parentheses.
pub(crate) fn split_top_level(list: &str) -> Vec<&str> {
    let mut parts = Vec::new();
    let (mut depth, mut start) = (0i32, 0);
    for (i, ch) in list.char_indices() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                parts.push(&list[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    parts.push(&list[start..]);
    parts
}
