//! Table equality under a renumbering, and the small backtracking search
//! that finds such a renumbering.

use super::Group;

/// True iff `map` is a bijection with `map[a*b] = map[a]*map[b]`.
pub fn is_isomorphism(a: &Group, b: &Group, map: &[usize]) -> bool {
    let n = a.order();
    if b.order() != n || map.len() != n {
        return false;
    }
    let mut hit = vec![false; n];
    for &m in map {
        if m >= n || hit[m] {
            return false;
        }
        hit[m] = true;
    }
    (0..n).all(|x| (0..n).all(|y| map[a.mul(x, y)] == b.mul(map[x], map[y])))
}

/// Searches for an isomorphism `a -> b`, returned as `map[x_in_a] = y_in_b`.
///
/// Generators of `a` are picked greedily (largest order first), then their
/// images are assigned by backtracking over elements of `b` with matching
/// order. Each partial assignment is extended to the subgroup it generates
/// and rejected on the first inconsistency. The search is deterministic.
pub fn find_isomorphism(a: &Group, b: &Group) -> Option<Vec<usize>> {
    let n = a.order();
    if b.order() != n {
        return None;
    }
    let mut a_profile: Vec<usize> = (0..n).map(|x| a.element_order(x)).collect();
    let mut b_profile: Vec<usize> = (0..n).map(|x| b.element_order(x)).collect();
    let b_orders = b_profile.clone();
    a_profile.sort_unstable();
    b_profile.sort_unstable();
    if a_profile != b_profile {
        return None;
    }
    let gens = generating_set(a);
    let mut images = Vec::with_capacity(gens.len());
    search(a, b, &gens, &b_orders, &mut images)
}

fn generating_set(g: &Group) -> Vec<usize> {
    let n = g.order();
    let mut by_order: Vec<usize> = (1..n).collect();
    by_order.sort_by_key(|&x| (std::cmp::Reverse(g.element_order(x)), x));
    let mut gens = Vec::new();
    let mut span = g.generated_subgroup(&gens);
    for x in by_order {
        if span.len() == n {
            break;
        }
        if span.binary_search(&x).is_err() {
            gens.push(x);
            span = g.generated_subgroup(&gens);
        }
    }
    gens
}

fn search(
    a: &Group,
    b: &Group,
    gens: &[usize],
    b_orders: &[usize],
    images: &mut Vec<usize>,
) -> Option<Vec<usize>> {
    let partial = extend(a, b, &gens[..images.len()], images)?;
    if images.len() == gens.len() {
        return is_isomorphism(a, b, &partial).then_some(partial);
    }
    let want = a.element_order(gens[images.len()]);
    for y in 0..b.order() {
        if b_orders[y] != want || partial.contains(&y) {
            continue;
        }
        images.push(y);
        if let Some(found) = search(a, b, gens, b_orders, images) {
            return Some(found);
        }
        images.pop();
    }
    None
}

/// Extends `gens[i] -> images[i]` to the subgroup the generators span.
/// Unreached elements map to `usize::MAX`. Returns `None` when two words for
/// the same element disagree, or two elements collide.
fn extend(a: &Group, b: &Group, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = a.order();
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];
    map[0] = 0;
    used[0] = true;
    let mut queue = vec![0];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for (&s, &t) in gens.iter().zip(images) {
            let xs = a.mul(x, s);
            let image = b.mul(map[x], t);
            if map[xs] == usize::MAX {
                if used[image] {
                    return None;
                }
                map[xs] = image;
                used[image] = true;
                queue.push(xs);
            } else if map[xs] != image {
                return None;
            }
        }
    }
    Some(map)
}
