use super::{Elem, FiniteGroup, GroupError, Subgroup};

pub const MAX_ISOMORPHISM_ORDER: usize = 16;

/// Finds an isomorphism `G -> H` by searching images of a generating set.
///
/// Intended for small comparisons only (order at most [`MAX_ISOMORPHISM_ORDER`]).
/// The returned map sends element `x` of `g` to `map[x]` in `h`.
pub fn find_group_isomorphism(g: &FiniteGroup, h: &FiniteGroup) -> Result<Option<Vec<Elem>>, GroupError> {
    if g.order() > MAX_ISOMORPHISM_ORDER {
        return Err(GroupError::TooLargeForIsomorphism(g.order()));
    }
    if g.order() != h.order() {
        return Ok(None);
    }
    let mut by_order: Vec<Elem> = g.elements().collect();
    by_order.sort_by_key(|&x| std::cmp::Reverse(g.order_of_element(x)));
    let mut gens = Vec::new();
    let mut span = Subgroup::trivial(g);
    for x in by_order {
        if !span.contains(x) {
            gens.push(x);
            span = Subgroup::generated_by(g, &gens);
        }
    }
    let mut images = Vec::with_capacity(gens.len());
    Ok(assign(g, h, &gens, &mut images))
}

fn assign(g: &FiniteGroup, h: &FiniteGroup, gens: &[Elem], images: &mut Vec<Elem>) -> Option<Vec<Elem>> {
    if images.len() == gens.len() {
        return extend(g, h, gens, images);
    }
    let target = g.order_of_element(gens[images.len()]);
    for y in h.elements().filter(|&y| h.order_of_element(y) == target) {
        images.push(y);
        if let Some(map) = assign(g, h, gens, images) {
            return Some(map);
        }
        images.pop();
    }
    None
}

fn extend(g: &FiniteGroup, h: &FiniteGroup, gens: &[Elem], images: &[Elem]) -> Option<Vec<Elem>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut stack = vec![g.identity()];
    while let Some(x) = stack.pop() {
        for (&s, &t) in gens.iter().zip(images) {
            let (y, image) = (g.multiply(x, s), h.multiply(map[x], t));
            if map[y] == usize::MAX {
                map[y] = image;
                stack.push(y);
            } else if map[y] != image {
                return None;
            }
        }
    }
    let mut hit = vec![false; h.order()];
    for &v in &map {
        if std::mem::replace(&mut hit[v], true) {
            return None;
        }
    }
    let hom = g
        .elements()
        .all(|a| g.elements().all(|b| map[g.multiply(a, b)] == h.multiply(map[a], map[b])));
    hom.then_some(map)
}
