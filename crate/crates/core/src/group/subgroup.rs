use std::collections::BTreeSet;

use fixedbitset::FixedBitSet;

use super::{Elem, FiniteGroup, GroupError};

/// A subgroup of a [`FiniteGroup`], stored as a sorted member list plus a
/// membership mask. Only the parent that validated it should be used with it.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    members: Vec<Elem>,
    mask: FixedBitSet,
}

impl Subgroup {
    /// Validates `members` as a subgroup of `g`: identity, closure, inverses, Lagrange.
    pub fn new(g: &FiniteGroup, members: &[Elem]) -> Result<Self, GroupError> {
        let mut mask = FixedBitSet::with_capacity(g.order());
        for &m in members {
            if m >= g.order() {
                return Err(GroupError::InvalidSubgroup(format!("element index {m} out of range")));
            }
            mask.insert(m);
        }
        if !mask.contains(g.identity()) {
            return Err(GroupError::InvalidSubgroup("identity missing".into()));
        }
        let sorted: Vec<Elem> = mask.ones().collect();
        for &a in &sorted {
            if !mask.contains(g.inverse(a)) {
                return Err(GroupError::InvalidSubgroup(format!("inverse of {} missing", g.name(a))));
            }
            for &b in &sorted {
                if !mask.contains(g.multiply(a, b)) {
                    return Err(GroupError::InvalidSubgroup(format!(
                        "not closed: {}*{} escapes",
                        g.name(a),
                        g.name(b)
                    )));
                }
            }
        }
        if !g.order().is_multiple_of(sorted.len()) {
            return Err(GroupError::InvalidSubgroup("order does not divide the group order".into()));
        }
        Ok(Self { members: sorted, mask })
    }

    fn from_mask(mask: FixedBitSet) -> Self {
        Self { members: mask.ones().collect(), mask }
    }

    pub fn trivial(g: &FiniteGroup) -> Self {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert(g.identity());
        Self::from_mask(mask)
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert_range(..);
        Self::from_mask(mask)
    }

    /// The subgroup generated by `gens`.
    pub fn generated_by(g: &FiniteGroup, gens: &[Elem]) -> Self {
        Self::from_mask(closure(g, gens))
    }

    pub fn members(&self) -> &[Elem] {
        &self.members
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.mask.contains(x)
    }

    pub fn mask(&self) -> &FixedBitSet {
        &self.mask
    }

    pub fn index_in(&self, g: &FiniteGroup) -> usize {
        g.order() / self.order()
    }
}

/// Closure of `gens` under right multiplication, i.e. the generated subgroup.
fn closure(g: &FiniteGroup, gens: &[Elem]) -> FixedBitSet {
    let mut mask = FixedBitSet::with_capacity(g.order());
    let mut stack = vec![g.identity()];
    mask.insert(g.identity());
    while let Some(x) = stack.pop() {
        for &s in gens {
            let y = g.multiply(x, s);
            if !mask.put(y) {
                stack.push(y);
            }
        }
    }
    mask
}

/// Incrementally grown subgroup keeping a short generator list.
struct Grower<'a> {
    g: &'a FiniteGroup,
    gens: Vec<Elem>,
    mask: FixedBitSet,
}

impl<'a> Grower<'a> {
    fn new(g: &'a FiniteGroup) -> Self {
        let mut mask = FixedBitSet::with_capacity(g.order());
        mask.insert(g.identity());
        Self { g, gens: Vec::new(), mask }
    }

    fn add(&mut self, x: Elem) {
        if !self.mask.contains(x) {
            self.gens.push(x);
            self.mask = closure(self.g, &self.gens);
        }
    }

    fn add_all(&mut self, xs: &[Elem]) {
        let fresh: Vec<Elem> = xs.iter().copied().filter(|&x| !self.mask.contains(x)).collect();
        if !fresh.is_empty() {
            self.gens.extend(fresh);
            self.mask = closure(self.g, &self.gens);
        }
    }
}

impl FiniteGroup {
    /// `g·H·g⁻¹ = H` for every `g`.
    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.elements().all(|g| self.normalizes(g, h))
    }

    fn normalizes(&self, g: Elem, h: &Subgroup) -> bool {
        h.members().iter().all(|&x| h.contains(self.conjugate(g, x)))
    }

    /// Whether the subgroup is cyclic (has an element of order `|H|`).
    pub fn is_cyclic_subgroup(&self, h: &Subgroup) -> bool {
        h.members().iter().any(|&x| self.order_of_element(x) == h.order())
    }

    pub fn center(&self) -> Subgroup {
        let mut mask = FixedBitSet::with_capacity(self.order());
        for z in self.elements() {
            if self.elements().all(|g| self.multiply(z, g) == self.multiply(g, z)) {
                mask.insert(z);
            }
        }
        Subgroup::from_mask(mask)
    }

    /// Right cosets `H·g`, ordered by their smallest element.
    pub fn right_cosets(&self, h: &Subgroup) -> Vec<Vec<Elem>> {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut cosets = Vec::new();
        for g in self.elements() {
            if seen.contains(g) {
                continue;
            }
            let mut coset: Vec<Elem> = h.members().iter().map(|&x| self.multiply(x, g)).collect();
            coset.sort_unstable();
            coset.iter().for_each(|&x| seen.insert(x));
            cosets.push(coset);
        }
        cosets
    }

    pub fn conjugacy_classes(&self) -> Vec<Vec<Elem>> {
        let mut seen = FixedBitSet::with_capacity(self.order());
        let mut classes = Vec::new();
        for x in self.elements() {
            if seen.contains(x) {
                continue;
            }
            let class: BTreeSet<Elem> = self.elements().map(|g| self.conjugate(g, x)).collect();
            class.iter().for_each(|&y| seen.insert(y));
            classes.push(class.into_iter().collect());
        }
        classes
    }

    /// All subgroups of index 2, sorted by member list.
    ///
    /// Every index-2 subgroup contains the subgroup `K` generated by all squares
    /// and commutators, and `G/K` is elementary abelian; the index-2 subgroups are
    /// the kernels of the nonzero functionals on `G/K ≅ F_2^r`.
    pub fn index_two_subgroups(&self) -> Vec<Subgroup> {
        let mut k = Grower::new(self);
        for x in self.elements() {
            k.add(self.multiply(x, x));
        }
        for x in self.elements() {
            for y in self.elements() {
                let comm = self.multiply(
                    self.multiply(self.inverse(x), self.inverse(y)),
                    self.multiply(x, y),
                );
                k.add(comm);
            }
        }
        // coordinates of every element in G/K over a greedily chosen basis
        let mut coords: Vec<Option<u32>> = vec![None; self.order()];
        let mut assigned: Vec<Elem> = k.mask.ones().collect();
        for &x in &assigned {
            coords[x] = Some(0);
        }
        let mut rank = 0u32;
        for rep in self.elements() {
            if coords[rep].is_some() {
                continue;
            }
            let bit = 1u32 << rank;
            let next: Vec<(Elem, u32)> = assigned
                .iter()
                .map(|&y| (self.multiply(y, rep), coords[y].unwrap_or(0) ^ bit))
                .collect();
            for (z, v) in next {
                debug_assert!(coords[z].is_none());
                coords[z] = Some(v);
                assigned.push(z);
            }
            rank += 1;
        }
        let mut out: Vec<Subgroup> = (1u32..(1 << rank))
            .map(|f| {
                let mut mask = FixedBitSet::with_capacity(self.order());
                for x in self.elements() {
                    if (coords[x].unwrap_or(0) & f).count_ones().is_multiple_of(2) {
                        mask.insert(x);
                    }
                }
                Subgroup::from_mask(mask)
            })
            .collect();
        out.sort_by(|a, b| a.members.cmp(&b.members));
        out
    }

    /// One Sylow 2-subgroup, grown bottom-up: a proper 2-subgroup `P` always has
    /// an element `g ∉ P` normalizing it with `g² ∈ P`, which doubles it.
    pub fn sylow_two_subgroup(&self) -> Subgroup {
        let target = 1usize << self.order().trailing_zeros();
        let mut p = Grower::new(self);
        let mut size = 1;
        while size < target {
            let current = Subgroup::from_mask(p.mask.clone());
            let g = self
                .elements()
                .find(|&g| {
                    !current.contains(g)
                        && current.contains(self.multiply(g, g))
                        && self.normalizes(g, &current)
                })
                .expect("a proper 2-subgroup has a normalizing element of 2-power order outside it");
            p.add(g);
            size = p.mask.count_ones(..);
        }
        Subgroup::from_mask(p.mask)
    }

    /// Involutions of `G` not in `H`, ascending.
    pub fn involutions_outside(&self, h: &Subgroup) -> Vec<Elem> {
        self.elements().filter(|&a| !h.contains(a) && self.is_involution(a)).collect()
    }

    /// For an index-2 subgroup `H`: an involution `a ∉ H`, witnessing `G = H ⋊ ⟨a⟩`.
    pub fn splits_as_semidirect(&self, h: &Subgroup) -> Result<Option<Elem>, GroupError> {
        if h.order() * 2 != self.order() {
            return Err(GroupError::NotIndexTwo { sub: h.order(), order: self.order() });
        }
        Ok(self.involutions_outside(h).first().copied())
    }

    /// All normal subgroups, sorted by order and then member list.
    pub fn normal_subgroups(&self) -> Vec<Subgroup> {
        let classes = self.conjugacy_classes();
        let mut found: BTreeSet<Vec<Elem>> = BTreeSet::new();
        let trivial = Grower::new(self);
        found.insert(trivial.mask.ones().collect());
        let mut queue = vec![trivial];
        while let Some(n) = queue.pop() {
            for class in &classes {
                if n.mask.contains(class[0]) {
                    continue;
                }
                let mut bigger = Grower { g: self, gens: n.gens.clone(), mask: n.mask.clone() };
                bigger.add_all(class);
                if found.insert(bigger.mask.ones().collect()) {
                    queue.push(bigger);
                }
            }
        }
        let mut out: Vec<Subgroup> = found
            .into_iter()
            .map(|members| {
                let mut mask = FixedBitSet::with_capacity(self.order());
                members.iter().for_each(|&m| mask.insert(m));
                Subgroup { members, mask }
            })
            .collect();
        out.sort_by(|a, b| (a.order(), &a.members).cmp(&(b.order(), &b.members)));
        out
    }

    /// The subgroup as a group in its own right, with the parent's names.
    /// Returns the group and the embedding `local index -> parent element`.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> (FiniteGroup, Vec<Elem>) {
        let embedding = h.members().to_vec();
        let mut local = vec![usize::MAX; self.order()];
        for (i, &x) in embedding.iter().enumerate() {
            local[x] = i;
        }
        let m = embedding.len();
        let table = embedding
            .iter()
            .flat_map(|&a| embedding.iter().map(move |&b| (a, b)))
            .map(|(a, b)| local[self.multiply(a, b)])
            .collect();
        let names = embedding.iter().map(|&x| self.name(x).to_string()).collect();
        let group = FiniteGroup::assemble(m, table, names).expect("a validated subgroup is a group");
        (group, embedding)
    }
}
