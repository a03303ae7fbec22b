//! The `quatcg` command line.

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::clebsch::{
    cg_from_json, cg_matrix, cg_to_json, cg_to_text, compare_up_to_phase, verify_block_diag,
};
use crate::group::{
    cayley_graph_dot, conjugacy_classes, format_cayley, parse_cayley, presented_group, validate,
    BuiltinGroup, Group,
};
use crate::numerics::{snap_str, Tolerances};
use crate::par::Execution;
use crate::reference::parse_cg_reference;
use crate::rep::{
    builtin_irreps, character_table_dixon, decompose, irrep_to_json, CharacterTable, DIXON_SEED,
};
use crate::reproduce::Reproduction;
use crate::Error;

const DEFAULT_COLORS: [&str; 6] = ["blue", "red", "darkgreen", "orange", "purple", "brown"];

#[derive(Parser)]
#[command(
    name = "quatcg",
    version,
    about = "Finite groups, character tables and Clebsch-Gordan matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Source {
    /// Built-in group: Q8, Q16, Q32 or G32_42
    #[arg(long, value_parser = parse_builtin)]
    group: Option<BuiltinGroup>,
    /// Cayley table in the .cayley format
    #[arg(long)]
    file: Option<PathBuf>,
}

#[derive(Args)]
struct BuiltinArg {
    /// Built-in group: Q8, Q16, Q32 or G32_42
    #[arg(long, value_parser = parse_builtin)]
    group: BuiltinGroup,
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Print a built-in group's Cayley table, generated from its presentation
    Gen {
        #[command(flatten)]
        group: BuiltinArg,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Check the group axioms
    Validate {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        format: FormatArg,
    },
    /// List the conjugacy classes
    Classes {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        format: FormatArg,
    },
    /// List element orders
    Orders {
        #[command(flatten)]
        source: Source,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Character table from the class algebra
    Chartab {
        #[command(flatten)]
        source: Source,
        #[arg(long, default_value_t = DIXON_SEED)]
        seed: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Matrices of the built-in irreps
    Irreps {
        #[command(flatten)]
        group: BuiltinArg,
        /// Only this irrep
        #[arg(long)]
        alpha: Option<usize>,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Multiplicities in a Kronecker product of two irreps
    Decompose {
        #[command(flatten)]
        source: Source,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        #[arg(long, default_value_t = DIXON_SEED)]
        seed: u64,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Clebsch-Gordan matrix of a product of two irreps
    Cg {
        #[command(flatten)]
        group: BuiltinArg,
        #[arg(long)]
        alpha: usize,
        #[arg(long)]
        beta: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compare a Clebsch-Gordan matrix in JSON form with a fresh computation
    Verify {
        #[arg(long)]
        input: PathBuf,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Cayley graph in Graphviz DOT form
    Graph {
        #[command(flatten)]
        source: Source,
        /// Comma-separated 1-based element indices
        #[arg(long, value_delimiter = ',', required = true)]
        generators: Vec<usize>,
        /// Comma-separated edge colors, one per generator
        #[arg(long, value_delimiter = ',')]
        colors: Vec<String>,
        #[arg(long, value_enum, default_value_t = Format::Dot)]
        format: Format,
    },
    /// Check every embedded published table and print PASS/FAIL per item
    Reproduce {
        /// Only the table checks of this group
        #[arg(long, value_parser = parse_builtin)]
        only: Option<BuiltinGroup>,
        #[arg(long, default_value_t = DIXON_SEED)]
        seed: u64,
        /// Replace the embedded Clebsch-Gordan table with the same id
        #[arg(long = "override")]
        overrides: Vec<PathBuf>,
        /// Run all checks on the calling thread
        #[arg(long)]
        sequential: bool,
        #[command(flatten)]
        format: FormatArg,
    },
}

fn parse_builtin(s: &str) -> Result<BuiltinGroup, String> {
    s.parse()
        .map_err(|e: crate::group::GroupError| e.to_string())
}

enum Failure {
    Usage(String),
    Domain(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

macro_rules! domain {
    ($e:expr) => {
        $e.map_err(|e| Failure::Domain(Error::from(e)))
    };
}

fn require_format(verb: &str, format: Format, allowed: &[Format]) -> Result<(), Failure> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        let name = format
            .to_possible_value()
            .map(|v| v.get_name().to_owned())
            .unwrap_or_default();
        Err(Failure::Usage(format!(
            "--format {name} is not supported by {verb}"
        )))
    }
}

fn read_file(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| {
        Failure::Domain(Error::Io {
            path: path.display().to_string(),
            message: e.to_string(),
        })
    })
}

fn load(source: &Source) -> Result<Group, Failure> {
    match (&source.group, &source.file) {
        (Some(g), _) => Ok(presented_group(*g).renamed(g.name())),
        (None, Some(path)) => {
            let text = read_file(path)?;
            let g = domain!(parse_cayley(&text))?;
            let name = path
                .file_stem()
                .map_or("custom".into(), |s| s.to_string_lossy().into_owned());
            Ok(g.renamed(name))
        }
        (None, None) => Err(Failure::Usage(
            "one of --group or --file is required".into(),
        )),
    }
}

fn to_json(v: &impl serde::Serialize) -> String {
    serde_json::to_string_pretty(v).expect("serializable") + "\n"
}

/// Irrep index for a 1-based label, checked against `count`.
fn irrep_index(label: usize, count: usize) -> Result<usize, Failure> {
    if label == 0 || label > count {
        return Err(Failure::Domain(
            crate::rep::RepError::UnknownIrrep {
                label: label.to_string(),
                count,
            }
            .into(),
        ));
    }
    Ok(label - 1)
}

fn builtin_table(
    which: BuiltinGroup,
) -> Result<(Vec<crate::rep::Representation>, CharacterTable), Failure> {
    let irreps = builtin_irreps(which);
    let table = domain!(CharacterTable::from_irreps(&irreps))?;
    Ok((irreps, table))
}

/// Character table for a source: built-in groups keep their irrep
/// numbering, other groups use the class-algebra order.
fn table_for(source: &Source, seed: u64) -> Result<CharacterTable, Failure> {
    let group = Arc::new(load(source)?);
    let dixon = domain!(character_table_dixon(&group, seed))?;
    match source.group {
        Some(which) => {
            let (_, reference) = builtin_table(which)?;
            dixon.reordered_like(&reference, 1e-8).ok_or_else(|| {
                Failure::Domain(Error::CgMismatch(
                    "class-algebra characters differ from the built-in irreps".into(),
                ))
            })
        }
        None => Ok(dixon),
    }
}

fn execute(command: Command, out: &mut String) -> Result<(), Failure> {
    let tol = Tolerances::default();
    match command {
        Command::Gen { group, format } => {
            require_format("gen", format.format, &[Format::Text, Format::Json])?;
            let g = presented_group(group.group).renamed(group.group.name());
            if format.format == Format::Json {
                *out += &to_json(&json!({
                    "group": g.name(),
                    "order": g.order(),
                    "labels": g.labels(),
                    "table": g.table_one_based(),
                }));
            } else {
                *out += &format_cayley(&g);
            }
        }
        Command::Validate { source, format } => {
            require_format("validate", format.format, &[Format::Text, Format::Json])?;
            let g = load(&source)?;
            let report = domain!(validate(g.table()).map_err(crate::group::GroupError::Axiom))?;
            if format.format == Format::Json {
                *out += &to_json(&json!({
                    "group": g.name(),
                    "valid": true,
                    "order": report.order,
                    "associativity_triples": report.associativity_triples,
                }));
            } else {
                *out += &format!(
                    "{}: valid group of order {}, associativity checked on {} triples\n",
                    g.name(),
                    report.order,
                    report.associativity_triples
                );
            }
        }
        Command::Classes { source, format } => {
            require_format("classes", format.format, &[Format::Text, Format::Json])?;
            let g = load(&source)?;
            let classes = conjugacy_classes(&g).one_based();
            if format.format == Format::Json {
                *out += &to_json(&json!({"group": g.name(), "classes": classes}));
            } else {
                *out += &format!("{}: {} conjugacy classes\n", g.name(), classes.len());
                for (i, c) in classes.iter().enumerate() {
                    let members: Vec<String> = c.iter().map(|x| format!("g{x}")).collect();
                    *out += &format!("C{} = {{{}}}\n", i + 1, members.join(", "));
                }
            }
        }
        Command::Orders { source, format } => {
            require_format("orders", format.format, &[Format::Text, Format::Json])?;
            let g = load(&source)?;
            let orders: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
            if format.format == Format::Json {
                *out +=
                    &to_json(&json!({"group": g.name(), "labels": g.labels(), "orders": orders}));
            } else {
                let width = g
                    .labels()
                    .iter()
                    .map(|l| l.chars().count())
                    .max()
                    .unwrap_or(1);
                for (x, o) in orders.iter().enumerate() {
                    let index = format!("g{}", x + 1);
                    *out += &format!("{index:<4} {:<width$}  {o}\n", g.label(x));
                }
            }
        }
        Command::Chartab {
            source,
            seed,
            format,
        } => {
            require_format(
                "chartab",
                format.format,
                &[Format::Text, Format::Json, Format::Csv],
            )?;
            let table = table_for(&source, seed)?;
            match format.format {
                Format::Csv => *out += &table.to_csv(),
                Format::Json => {
                    let rows: Vec<Vec<[f64; 2]>> = table
                        .rows()
                        .iter()
                        .map(|r| {
                            r.iter()
                                .map(|&z| {
                                    let z = crate::rep::round12(z);
                                    [z.re, z.im]
                                })
                                .collect()
                        })
                        .collect();
                    *out += &to_json(&json!({
                        "group": table.group().name(),
                        "classes": table.classes().one_based(),
                        "labels": table.labels(),
                        "dims": table.dims(),
                        "characters": rows,
                    }));
                }
                _ => *out += &chartab_text(&table, &tol),
            }
        }
        Command::Irreps {
            group,
            alpha,
            format,
        } => {
            require_format("irreps", format.format, &[Format::Text, Format::Json])?;
            let irreps = builtin_irreps(group.group);
            let selected: Vec<&crate::rep::Representation> = match alpha {
                Some(a) => vec![&irreps[irrep_index(a, irreps.len())?]],
                None => irreps.iter().collect(),
            };
            if format.format == Format::Json {
                let values: Vec<serde_json::Value> = selected
                    .iter()
                    .map(|r| serde_json::from_str(&irrep_to_json(r)).expect("valid JSON"))
                    .collect();
                *out += &match alpha {
                    Some(_) => to_json(&values[0]),
                    None => to_json(&values),
                };
            } else {
                for r in selected {
                    *out += &irrep_text(r, &tol);
                }
            }
        }
        Command::Decompose {
            source,
            alpha,
            beta,
            seed,
            format,
        } => {
            require_format("decompose", format.format, &[Format::Text, Format::Json])?;
            let table = table_for(&source, seed)?;
            let (a, b) = (
                irrep_index(alpha, table.len())?,
                irrep_index(beta, table.len())?,
            );
            let d = domain!(decompose(&table, a, b))?;
            if format.format == Format::Json {
                *out += &to_json(&json!({
                    "group": table.group().name(),
                    "alpha": d.alpha,
                    "beta": d.beta,
                    "multiplicities": d.components().iter().map(|(l, m)| json!({"gamma": l, "m": m})).collect::<Vec<_>>(),
                    "dimension": d.dimension(table.dims()),
                }));
            } else {
                *out += &format!("{d}\n");
            }
        }
        Command::Cg {
            group,
            alpha,
            beta,
            format,
        } => {
            require_format("cg", format.format, &[Format::Text, Format::Json])?;
            let (irreps, table) = builtin_table(group.group)?;
            let (a, b) = (
                irrep_index(alpha, irreps.len())?,
                irrep_index(beta, irreps.len())?,
            );
            let cg = domain!(cg_matrix(&irreps, &table, a, b, &tol))?;
            let residual = verify_block_diag(&cg, &irreps[a], &irreps[b], &irreps);
            if format.format == Format::Json {
                *out += &to_json(&cg_to_json(&cg, residual));
            } else {
                *out += &cg_to_text(&cg, irreps[a].dim(), irreps[b].dim(), &tol);
                *out += &format!(
                    "unitary defect {:.1e}, residual {residual:.1e}\n",
                    cg.unitary_defect()
                );
            }
        }
        Command::Verify { input, format } => {
            require_format("verify", format.format, &[Format::Text, Format::Json])?;
            let parsed = domain!(cg_from_json(&read_file(&input)?))?;
            let which: BuiltinGroup = domain!(parsed.group.parse::<BuiltinGroup>())?;
            let (irreps, table) = builtin_table(which)?;
            let label = |s: &str| {
                s.parse::<usize>()
                    .ok()
                    .filter(|&x| x >= 1 && x <= irreps.len())
                    .ok_or_else(|| {
                        Failure::Domain(
                            crate::rep::RepError::UnknownIrrep {
                                label: s.to_owned(),
                                count: irreps.len(),
                            }
                            .into(),
                        )
                    })
            };
            let (a, b) = (label(&parsed.alpha)? - 1, label(&parsed.beta)? - 1);
            let cg = domain!(cg_matrix(&irreps, &table, a, b, &tol))?;
            let (m, heads) = domain!(parsed.matrix())?;
            let report = domain!(compare_up_to_phase(&cg, &m, &heads))?;
            if format.format == Format::Json {
                *out += &to_json(&report);
            } else {
                for c in &report.columns {
                    let phase = num_complex::Complex64::new(c.phase[0], c.phase[1]);
                    *out += &format!(
                        "R{} l={}: phase {}, deviation {:.1e}\n",
                        c.gamma,
                        c.l,
                        snap_str(
                            phase,
                            &Tolerances {
                                eq_tol: 1e-8,
                                eig_zero_tol: 1e-8
                            }
                        ),
                        c.deviation
                    );
                }
            }
            if !report.matches(crate::reproduce::MATCH_TOL) {
                return Err(Failure::Domain(Error::CgMismatch(format!(
                    "max deviation {:e} exceeds {:e}",
                    report.max_deviation,
                    crate::reproduce::MATCH_TOL
                ))));
            }
            if format.format == Format::Text {
                *out += if report.all_phases_one(1e-8) {
                    "match, all phases 1\n"
                } else {
                    "match up to column phases\n"
                };
            }
        }
        Command::Graph {
            source,
            generators,
            colors,
            format,
        } => {
            require_format("graph", format, &[Format::Dot])?;
            let g = load(&source)?;
            let gens: Vec<usize> = generators.iter().map(|&x| x.wrapping_sub(1)).collect();
            for (&x, &one_based) in gens.iter().zip(&generators) {
                if one_based == 0 {
                    return Err(Failure::Domain(
                        crate::group::GroupError::InvalidElement {
                            index: 0,
                            order: g.order(),
                        }
                        .into(),
                    ));
                }
                domain!(g.check_element(x))?;
            }
            let colors: Vec<String> = if colors.is_empty() {
                (0..gens.len())
                    .map(|i| DEFAULT_COLORS[i % DEFAULT_COLORS.len()].to_owned())
                    .collect()
            } else {
                colors
            };
            *out += &domain!(cayley_graph_dot(&g, &gens, &colors))?;
        }
        Command::Reproduce {
            only,
            seed,
            overrides,
            sequential,
            format,
        } => {
            require_format("reproduce", format.format, &[Format::Text, Format::Json])?;
            let mut run = Reproduction {
                only,
                seed,
                exec: if sequential {
                    Execution::Sequential
                } else {
                    Execution::default()
                },
                ..Default::default()
            };
            for path in &overrides {
                let r = domain!(parse_cg_reference(&read_file(path)?))?;
                run.override_reference(r).map_err(|m| {
                    Failure::Domain(Error::Io {
                        path: path.display().to_string(),
                        message: m,
                    })
                })?;
            }
            let report = run.run();
            if format.format == Format::Json {
                *out += &to_json(&report);
            } else {
                *out += &report.to_text();
            }
            let failed = report.failures().len();
            if failed > 0 {
                return Err(Failure::Domain(Error::ReproductionFailed(failed)));
            }
        }
    }
    Ok(())
}

fn chartab_text(table: &CharacterTable, tol: &Tolerances) -> String {
    let k = table.classes().len();
    let mut rows: Vec<Vec<String>> = Vec::new();
    rows.push(
        std::iter::once("class".to_owned())
            .chain((1..=k).map(|c| format!("C{c}")))
            .collect(),
    );
    rows.push(
        std::iter::once("size".to_owned())
            .chain(table.classes().sizes().iter().map(usize::to_string))
            .collect(),
    );
    for (label, row) in table.labels().iter().zip(table.rows()) {
        rows.push(
            std::iter::once(format!("R{label}"))
                .chain(row.iter().map(|&z| snap_str(z, tol)))
                .collect(),
        );
    }
    let mut out = format!("{}: {} irreps\n", table.group().name(), table.len());
    out += &align(&rows);
    out
}

fn irrep_text(r: &crate::rep::Representation, tol: &Tolerances) -> String {
    let mut out = format!(
        "R{} of {} (dimension {})\n",
        r.label(),
        r.group().name(),
        r.dim()
    );
    for (g, m) in r.matrices().iter().enumerate() {
        out += &format!("g{} ({}):\n", g + 1, r.group().label(g));
        let rows: Vec<Vec<String>> = (0..m.rows())
            .map(|i| {
                std::iter::once(String::new())
                    .chain(m.row(i).iter().map(|&z| snap_str(z, tol)))
                    .collect()
            })
            .collect();
        out += &align(&rows);
    }
    out
}

/// Left-aligned columns separated by two spaces.
fn align(rows: &[Vec<String>]) -> String {
    let ncols = rows.iter().map(Vec::len).max().unwrap_or(0);
    let width: Vec<usize> = (0..ncols)
        .map(|c| {
            rows.iter()
                .filter_map(|r| r.get(c))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for r in rows {
        let cells: Vec<String> = r
            .iter()
            .zip(&width)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        out += cells.join("  ").trim_end();
        out.push('\n');
    }
    out
}

/// Runs one command. Returns the exit status: 0 on success, 1 on a domain
/// error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    let mut buffer = String::new();
    let result = execute(cli.command, &mut buffer);
    let _ = out.write_all(buffer.as_bytes());
    match result {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Domain(e)) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}
