use super::{Group, GroupError};

pub fn trivial_group() -> Group {
    Group::from_table("C1", vec![vec![0]], Some(vec!["1".into()])).expect("trivial group")
}

/// `a x b` with componentwise multiplication. The pair `(x, y)` gets index
/// `x * |b| + y` (0-based), i.e. `(x-1)|b| + y` in 1-based terms.
pub fn direct_product(a: &Group, b: &Group) -> Group {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let split = |i: usize| (i / nb, i % nb);
    let table: Vec<Vec<usize>> = (0..n)
        .map(|i| {
            let (x1, y1) = split(i);
            (0..n)
                .map(|j| {
                    let (x2, y2) = split(j);
                    a.mul(x1, x2) * nb + b.mul(y1, y2)
                })
                .collect()
        })
        .collect();
    let labels = (0..n)
        .map(|i| {
            let (x, y) = split(i);
            format!("({},{})", a.label(x), b.label(y))
        })
        .collect();
    Group::from_table(format!("{}x{}", a.name(), b.name()), table, Some(labels))
        .expect("direct product of groups is a group")
}

/// Factor group `g / kernel`.
///
/// The kernel must be a normal subgroup; closure, normality and
/// well-definedness of coset multiplication are all checked with explicit
/// witnesses on failure. Cosets are numbered by their smallest member, so
/// the identity coset is element 1, and each coset is labelled by the label
/// of that smallest member.
pub fn quotient(g: &Group, kernel: &[usize]) -> Result<Group, GroupError> {
    let n = g.order();
    for &k in kernel {
        g.check_element(k)?;
    }
    let mut in_kernel = vec![false; n];
    for &k in kernel {
        in_kernel[k] = true;
    }
    if !in_kernel[0] {
        return Err(GroupError::MissingIdentity);
    }
    let members: Vec<usize> = (0..n).filter(|&i| in_kernel[i]).collect();
    for &a in &members {
        for &b in &members {
            let p = g.mul(a, b);
            if !in_kernel[p] {
                return Err(GroupError::NotASubgroup {
                    a: a + 1,
                    b: b + 1,
                    product: p + 1,
                });
            }
        }
    }
    for h in 0..n {
        for &k in &members {
            let c = g.conjugate(h, k);
            if !in_kernel[c] {
                return Err(GroupError::NotNormal {
                    h: h + 1,
                    k: k + 1,
                    conjugate: c + 1,
                });
            }
        }
    }

    let mut coset_of = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for x in 0..n {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let id = reps.len();
        for &k in &members {
            coset_of[g.mul(x, k)] = id;
        }
        reps.push(x);
    }
    let m = reps.len();
    let table: Vec<Vec<usize>> = (0..m)
        .map(|i| (0..m).map(|j| coset_of[g.mul(reps[i], reps[j])]).collect())
        .collect();
    for x in 0..n {
        for y in 0..n {
            if coset_of[g.mul(x, y)] != table[coset_of[x]][coset_of[y]] {
                return Err(GroupError::IllDefined { a: x + 1, b: y + 1 });
            }
        }
    }
    let labels = reps.iter().map(|&r| g.label(r).to_owned()).collect();
    Group::from_table(
        format!("{}/K{}", g.name(), members.len()),
        table,
        Some(labels),
    )
}
