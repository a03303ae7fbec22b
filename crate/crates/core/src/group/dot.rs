use std::fmt::Write as _;

use super::{Group, GroupError};

/// Graphviz text for the Cayley graph of `g` with respect to `generators`.
///
/// Each vertex `j` gets one edge to `g_j g_s` per generator `s`, colored by
/// the matching entry of `colors`. A self-inverse generator yields each
/// edge twice (once from either end), so it is emitted once as an
/// undirected edge instead. When every generator is self-inverse the output
/// is an undirected `graph`; otherwise a `digraph` with `dir=none` on the
/// undirected edges.
pub fn cayley_graph_dot(
    g: &Group,
    generators: &[usize],
    colors: &[String],
) -> Result<String, GroupError> {
    if generators.len() != colors.len() {
        return Err(GroupError::ColorCountMismatch {
            generators: generators.len(),
            colors: colors.len(),
        });
    }
    for &s in generators {
        g.check_element(s)?;
    }
    let involutive: Vec<bool> = generators.iter().map(|&s| g.mul(s, s) == 0).collect();
    let undirected = involutive.iter().all(|&b| b);
    let (kind, arrow) = if undirected {
        ("graph", "--")
    } else {
        ("digraph", "->")
    };

    let mut out = String::new();
    let _ = writeln!(out, "{kind} \"{}\" {{", g.name());
    for j in 0..g.order() {
        let _ = writeln!(out, "  {} [label=\"{}\"];", j + 1, g.label(j));
    }
    for (gi, &s) in generators.iter().enumerate() {
        for j in 0..g.order() {
            let l = g.mul(j, s);
            if involutive[gi] {
                if l < j {
                    continue;
                }
                let extra = if undirected { "" } else { ", dir=none" };
                let _ = writeln!(
                    out,
                    "  {} {arrow} {} [color=\"{}\"{extra}];",
                    j + 1,
                    l + 1,
                    colors[gi]
                );
            } else {
                let _ = writeln!(
                    out,
                    "  {} {arrow} {} [color=\"{}\"];",
                    j + 1,
                    l + 1,
                    colors[gi]
                );
            }
        }
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{builtin, trivial_group, BuiltinGroup};

    fn edges(dot: &str) -> usize {
        dot.lines()
            .filter(|l| l.contains("--") || l.contains("->"))
            .count()
    }

    #[test]
    fn q8_two_generators() {
        let g = builtin(BuiltinGroup::Q8);
        let dot = cayley_graph_dot(&g, &[4, 2], &["blue".into(), "red".into()]).unwrap();
        assert!(dot.starts_with("digraph"));
        assert_eq!(edges(&dot), 16);
        assert_eq!(dot.matches("color=\"blue\"").count(), 8);
        assert!(dot.contains("  1 -> 5 [color=\"blue\"];"));
    }

    #[test]
    fn trivial_group_no_generators() {
        let dot = cayley_graph_dot(&trivial_group(), &[], &[]).unwrap();
        assert_eq!(edges(&dot), 0);
        assert_eq!(dot.matches("[label=").count(), 1);
    }

    #[test]
    fn g32_42_involutions_are_undirected() {
        let g = builtin(BuiltinGroup::G32_42);
        let colors: Vec<String> = ["red", "green", "blue", "black"].map(String::from).to_vec();
        let dot = cayley_graph_dot(&g, &[2, 4, 10, 16], &colors).unwrap();
        assert!(dot.starts_with("graph"));
        assert_eq!(edges(&dot), 64);
    }

    #[test]
    fn color_mismatch() {
        let g = builtin(BuiltinGroup::Q8);
        assert_eq!(
            cayley_graph_dot(&g, &[4], &[]).unwrap_err(),
            GroupError::ColorCountMismatch {
                generators: 1,
                colors: 0
            }
        );
    }
}
