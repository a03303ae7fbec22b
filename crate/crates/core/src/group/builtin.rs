//! The four built-in groups: Q8, Q16, Q32 and SmallGroup(32,42).
//!
//! The generalized quaternion groups are generated from the presentation
//! `<a, b | a^N = 1, b^2 = a^(N/2), b a b^-1 = a^-1>` and their element
//! numbering is fixed by a normal-form table `index -> (k, e)` meaning
//! `a^k b^e`. The result is then compared entrywise with the embedded
//! reference tables under `references/groups/`.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use super::cayley::parse_named;
use super::{direct_product, quotient, Group, GroupError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BuiltinGroup {
    Q8,
    Q16,
    Q32,
    G32_42,
}

impl BuiltinGroup {
    pub const ALL: [BuiltinGroup; 4] = [
        BuiltinGroup::Q8,
        BuiltinGroup::Q16,
        BuiltinGroup::Q32,
        BuiltinGroup::G32_42,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinGroup::Q8 => "Q8",
            BuiltinGroup::Q16 => "Q16",
            BuiltinGroup::Q32 => "Q32",
            BuiltinGroup::G32_42 => "G32_42",
        }
    }

    pub fn order(self) -> usize {
        match self {
            BuiltinGroup::Q8 => 8,
            BuiltinGroup::Q16 => 16,
            BuiltinGroup::Q32 | BuiltinGroup::G32_42 => 32,
        }
    }

    /// The embedded reference multiplication table in `.cayley` format.
    pub fn reference_table(self) -> &'static str {
        match self {
            BuiltinGroup::Q8 => include_str!("../../references/groups/q8.cayley"),
            BuiltinGroup::Q16 => include_str!("../../references/groups/q16.cayley"),
            BuiltinGroup::Q32 => include_str!("../../references/groups/q32.cayley"),
            BuiltinGroup::G32_42 => include_str!("../../references/groups/g32_42.cayley"),
        }
    }
}

impl fmt::Display for BuiltinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BuiltinGroup {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_uppercase().as_str() {
            "Q8" => Ok(BuiltinGroup::Q8),
            "Q16" => Ok(BuiltinGroup::Q16),
            "Q32" => Ok(BuiltinGroup::Q32),
            "G32_42" | "32.42" | "G32.42" => Ok(BuiltinGroup::G32_42),
            _ => Err(GroupError::UnknownGroup(s.to_owned())),
        }
    }
}

const Q8_NORMAL_FORM: [(usize, usize); 8] = [
    (0, 0),
    (2, 0),
    (1, 0),
    (3, 0),
    (0, 1),
    (2, 1),
    (3, 1),
    (1, 1),
];

const Q16_NORMAL_FORM: [(usize, usize); 16] = [
    (0, 0),
    (4, 0),
    (6, 0),
    (2, 0),
    (0, 1),
    (4, 1),
    (2, 1),
    (6, 1),
    (5, 1),
    (1, 1),
    (7, 1),
    (3, 1),
    (1, 0),
    (5, 0),
    (7, 0),
    (3, 0),
];

const Q32_NORMAL_FORM: [(usize, usize); 32] = [
    (0, 0),
    (8, 0),
    (4, 0),
    (12, 0),
    (14, 0),
    (6, 0),
    (2, 0),
    (10, 0),
    (0, 1),
    (8, 1),
    (12, 1),
    (4, 1),
    (2, 1),
    (10, 1),
    (14, 1),
    (6, 1),
    (9, 1),
    (1, 1),
    (5, 1),
    (13, 1),
    (11, 1),
    (3, 1),
    (7, 1),
    (15, 1),
    (1, 0),
    (9, 0),
    (5, 0),
    (13, 0),
    (15, 0),
    (7, 0),
    (3, 0),
    (11, 0),
];

const Q8_LABELS: [&str; 8] = ["1", "-1", "i", "-i", "j", "-j", "k", "-k"];

/// Kernel `{(1,1), (-1,-1)}` of `Q8 x Q8 -> G32_42`, 0-based product indices.
pub const G32_42_KERNEL: [usize; 2] = [0, 9];

/// `G32_42_RENUMBERING[c]` is the 0-based index in the reference table of
/// coset `c` of `(Q8 x Q8) / G32_42_KERNEL` (cosets numbered by smallest
/// member). Regenerated by the isomorphism search in the tests.
pub const G32_42_RENUMBERING: [usize; 32] = [
    0, 1, 12, 13, 18, 19, 30, 31, 14, 15, 3, 2, 28, 29, 17, 16, 22, 23, 27, 26, 5, 4, 8, 9, 25, 24,
    21, 20, 10, 11, 6, 7,
];

fn quaternion(name: &str, normal_form: &[(usize, usize)]) -> Group {
    let n = normal_form.len();
    let half = n / 2;
    let index_of = |k: usize, e: usize| {
        normal_form
            .iter()
            .position(|&p| p == (k % half, e))
            .expect("normal form covers the group")
    };
    let table = (0..n)
        .map(|x| {
            let (k, e) = normal_form[x];
            (0..n)
                .map(|y| {
                    let (m, f) = normal_form[y];
                    // b^e a^m = a^((-1)^e m) b^e, and b^2 = a^(half/2)
                    let mut power = if e == 0 { k + m } else { k + half - m };
                    if e + f == 2 {
                        power += half / 2;
                    }
                    index_of(power, (e + f) % 2)
                })
                .collect()
        })
        .collect();
    let labels = normal_form
        .iter()
        .map(|&(k, e)| {
            let a = match k {
                0 => String::new(),
                1 => "a".to_owned(),
                _ => format!("a^{k}"),
            };
            match (a.is_empty(), e) {
                (true, 0) => "1".to_owned(),
                (_, 0) => a,
                _ => format!("{a}b"),
            }
        })
        .collect();
    Group::from_table(name, table, Some(labels)).expect("quaternion presentation")
}

/// `(Q8 x Q8) / {(1,1), (-1,-1)}` with elements in quotient order.
pub fn g32_42_quotient() -> Group {
    let q8 = builtin(BuiltinGroup::Q8);
    quotient(&direct_product(&q8, &q8), &G32_42_KERNEL).expect("central kernel")
}

fn renumber(g: &Group, map: &[usize]) -> Group {
    let n = g.order();
    let mut table = vec![vec![0; n]; n];
    let mut labels = vec![String::new(); n];
    for x in 0..n {
        labels[map[x]] = g.label(x).to_owned();
        for y in 0..n {
            table[map[x]][map[y]] = map[g.mul(x, y)];
        }
    }
    Group::from_table(g.name(), table, Some(labels)).expect("renumbered group")
}

/// A built-in group built from its presentation (normal forms, or the
/// quotient construction for G32_42), not checked against the reference.
pub fn presented_group(which: BuiltinGroup) -> Group {
    match which {
        BuiltinGroup::Q8 => quaternion("Q8", &Q8_NORMAL_FORM)
            .with_labels(Q8_LABELS.iter().map(|s| s.to_string()).collect())
            .expect("Q8 labels"),
        BuiltinGroup::Q16 => quaternion("Q16", &Q16_NORMAL_FORM),
        BuiltinGroup::Q32 => quaternion("Q32", &Q32_NORMAL_FORM),
        BuiltinGroup::G32_42 => renumber(&g32_42_quotient(), &G32_42_RENUMBERING),
    }
}

fn generate(which: BuiltinGroup) -> Group {
    let generated = presented_group(which);
    let reference = reference_group(which);
    assert_eq!(
        generated.table(),
        reference.table(),
        "generated {which} differs from its reference table"
    );
    generated.renamed(which.name())
}

/// The embedded reference table, parsed as-is (default labels).
pub fn reference_group(which: BuiltinGroup) -> Group {
    parse_named(which.name(), which.reference_table()).expect("embedded table is valid")
}

/// A built-in group, generated and cross-checked against its reference
/// table on first use.
pub fn builtin(which: BuiltinGroup) -> Group {
    static CACHE: [OnceLock<Group>; 4] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    let slot = BuiltinGroup::ALL
        .iter()
        .position(|&b| b == which)
        .expect("listed");
    CACHE[slot].get_or_init(|| generate(which)).clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{conjugacy_classes, find_isomorphism, is_isomorphism};

    #[test]
    fn parses_names() {
        assert_eq!("q16".parse::<BuiltinGroup>().unwrap(), BuiltinGroup::Q16);
        assert_eq!(
            "32.42".parse::<BuiltinGroup>().unwrap(),
            BuiltinGroup::G32_42
        );
        assert!(matches!(
            "D4".parse::<BuiltinGroup>(),
            Err(GroupError::UnknownGroup(_))
        ));
    }

    #[test]
    fn spot_entries() {
        let q8 = builtin(BuiltinGroup::Q8);
        assert_eq!(q8.table_one_based()[2][4], 8);
        let q32 = builtin(BuiltinGroup::Q32);
        assert_eq!(q32.table_one_based()[16][16], 2);
        let g = builtin(BuiltinGroup::G32_42);
        assert_eq!(g.table_one_based()[16][16], 1);
    }

    #[test]
    fn element_orders() {
        let q8 = builtin(BuiltinGroup::Q8);
        let orders: Vec<usize> = (0..8).map(|x| q8.element_order(x)).collect();
        assert_eq!(orders, [1, 2, 4, 4, 4, 4, 4, 4]);
        assert_eq!(builtin(BuiltinGroup::Q16).element_order(12), 8);
    }

    #[test]
    fn q8_hypercomplex_relations() {
        let g = builtin(BuiltinGroup::Q8);
        let idx = |s: &str| g.labels().iter().position(|l| l == s).unwrap();
        let (m1, i, j, k) = (idx("-1"), idx("i"), idx("j"), idx("k"));
        assert_eq!(g.mul(m1, m1), 0);
        for x in [i, j, k] {
            assert_eq!(g.mul(x, x), m1);
        }
        // read with the column element acting first: g5 g3 = g7
        assert_eq!(g.mul(j, i), k);
        assert_eq!(g.mul(i, j), idx("-k"));
        assert_eq!(g.mul(k, j), i);
        assert_eq!(g.mul(i, k), j);
    }

    #[test]
    fn g32_42_classes_are_pairs() {
        let cl = conjugacy_classes(&builtin(BuiltinGroup::G32_42));
        let mut expected = vec![vec![1], vec![2]];
        for j in 3..=17 {
            expected.push(vec![2 * j - 3, 2 * j - 2]);
        }
        assert_eq!(cl.one_based(), expected);
    }

    #[test]
    fn renumbering_regenerates() {
        let q = g32_42_quotient();
        let reference = reference_group(BuiltinGroup::G32_42);
        let found = find_isomorphism(&q, &reference).expect("isomorphic");
        assert_eq!(found, G32_42_RENUMBERING);
        assert!(is_isomorphism(&q, &reference, &G32_42_RENUMBERING));
    }
}
