//! Checks every embedded published table against fresh computations and
//! reports one PASS/FAIL item per table or series equation.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::sync::Arc;

use num_complex::Complex64;
use serde::Serialize;

use crate::clebsch::{
    all_pairs, assemble_mercer_with, cg_matrix_with, compare_conjugate, compare_up_to_phase,
    mercer_rank, verify_block_diag,
};
use crate::group::{
    builtin, conjugacy_classes, find_isomorphism, g32_42_quotient, is_isomorphism, presented_group,
    reference_group, BuiltinGroup, Group, G32_42_RENUMBERING,
};
use crate::numerics::Tolerances;
use crate::par::{self, Execution};
use crate::reference::{
    cg_references, character_reference, class_reference, series_reference, CgReference, SeriesCase,
};
use crate::rep::{
    builtin_irreps, character_table_dixon, decompose, great_orthogonality_defect,
    is_simply_reducible, CharacterTable, Representation, DIXON_SEED,
};

pub const UNITARY_TOL: f64 = 1e-10;
pub const RESIDUAL_TOL: f64 = 1e-8;
pub const MATCH_TOL: f64 = 1e-8;
pub const CHARACTER_TOL: f64 = 1e-8;
pub const ORTHOGONALITY_TOL: f64 = 1e-10;
/// Required ratio of the smallest nonzero Mercer eigenvalue to the rank
/// threshold.
pub const MIN_GAP_RATIO: f64 = 1e4;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Item {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// Discrepancies in the published data that did not cause a failure.
    pub flags: Vec<String>,
}

impl Item {
    fn new(name: impl Into<String>, result: Result<String, String>) -> Self {
        let (passed, detail) = match result {
            Ok(d) => (true, d),
            Err(d) => (false, d),
        };
        Self {
            name: name.into(),
            passed,
            detail,
            flags: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub items: Vec<Item>,
}

impl Report {
    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> Vec<&Item> {
        self.items.iter().filter(|i| !i.passed).collect()
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for item in &self.items {
            let status = if item.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{status}  {}: {}", item.name, item.detail);
            for f in &item.flags {
                let _ = writeln!(out, "      flag: {f}");
            }
        }
        let failed = self.failures().len();
        let _ = writeln!(
            out,
            "{} items, {} passed, {} failed",
            self.items.len(),
            self.items.len() - failed,
            failed
        );
        out
    }
}

/// Configuration of a reproduction run.
#[derive(Clone, Debug)]
pub struct Reproduction {
    /// Restrict to one group's table checks; the cross-group checks are
    /// skipped.
    pub only: Option<BuiltinGroup>,
    pub seed: u64,
    pub exec: Execution,
    pub cg_references: Vec<CgReference>,
}

impl Default for Reproduction {
    fn default() -> Self {
        Self {
            only: None,
            seed: DIXON_SEED,
            exec: Execution::default(),
            cg_references: cg_references().to_vec(),
        }
    }
}

/// Built-in data of one group shared by its checks.
struct Context {
    which: BuiltinGroup,
    irreps: Vec<Representation>,
    table: CharacterTable,
}

impl Context {
    fn new(which: BuiltinGroup) -> Self {
        let irreps = builtin_irreps(which);
        let table = CharacterTable::from_irreps(&irreps).expect("built-in irreps are valid");
        Self {
            which,
            irreps,
            table,
        }
    }

    fn group(&self) -> &Arc<Group> {
        self.irreps[0].group()
    }

    fn check_case(&self, case: &SeriesCase) -> Result<(), String> {
        let k = self.table.len();
        if case.alpha == 0 || case.beta == 0 || case.alpha > k || case.beta > k {
            return Err(format!("R{} x R{}: no such irrep", case.alpha, case.beta));
        }
        let d = decompose(&self.table, case.alpha - 1, case.beta - 1).map_err(|e| e.to_string())?;
        let mut want = vec![0; k];
        for &s in &case.summands {
            if s == 0 || s > k {
                return Err(format!("R{s}: no such irrep"));
            }
            want[s - 1] += 1;
        }
        if d.m == want {
            Ok(())
        } else {
            Err(format!("computed {d}"))
        }
    }
}

type Check<'a> = Box<dyn Fn() -> Item + Send + Sync + 'a>;

impl Reproduction {
    /// Replaces the embedded Clebsch-Gordan table with the same id.
    pub fn override_reference(&mut self, r: CgReference) -> Result<(), String> {
        let slot = self
            .cg_references
            .iter_mut()
            .find(|x| x.id == r.id)
            .ok_or_else(|| format!("no embedded reference with id {:?}", r.id))?;
        *slot = r;
        Ok(())
    }

    pub fn run(&self) -> Report {
        let groups: Vec<BuiltinGroup> = match self.only {
            Some(g) => vec![g],
            None => BuiltinGroup::ALL.to_vec(),
        };
        let contexts: Vec<Context> = par::map(self.exec, &groups, |&g| Context::new(g));
        let mut checks: Vec<Check> = Vec::new();
        for ctx in &contexts {
            self.group_checks(ctx, &mut checks);
        }
        if self.only.is_none() {
            self.global_checks(&contexts, &mut checks);
        }
        Report {
            items: par::map(self.exec, &checks, |c| c()),
        }
    }

    fn group_checks<'a>(&'a self, ctx: &'a Context, checks: &mut Vec<Check<'a>>) {
        let name = ctx.which.name();
        checks.push(Box::new(move || {
            Item::new(format!("{name} conjugacy classes"), classes_check(ctx))
        }));
        checks.push(Box::new(move || {
            Item::new(
                format!("{name} character table"),
                character_check(ctx, self.seed),
            )
        }));

        let series = series_reference(ctx.which);
        let refs: Vec<&CgReference> = self
            .cg_references
            .iter()
            .filter(|r| r.group == ctx.which)
            .collect();
        let mut covered: BTreeSet<(usize, usize)> = BTreeSet::new();
        for r in &refs {
            covered.extend(r.pairs.iter().copied());
            covered.extend(r.conjugates.iter().copied());
            for v in &r.variants {
                covered.extend(v.pairs.iter().copied());
            }
        }
        for eq in &series.equations {
            let fully_covered = eq
                .cases
                .iter()
                .all(|c| covered.contains(&(c.alpha, c.beta)));
            if eq.is_trivial() || !fully_covered {
                checks.push(Box::new(move || {
                    let result = eq
                        .cases
                        .iter()
                        .try_for_each(|c| ctx.check_case(c))
                        .map(|()| format!("{} case(s) reproduced", eq.cases.len()));
                    Item::new(format!("{name} series {}", eq.text), result)
                }));
            }
        }
        for r in refs {
            let exec = self.exec;
            checks.push(Box::new(move || cg_reference_check(ctx, r, exec)));
            for &(a, b) in &r.conjugates {
                checks.push(Box::new(move || {
                    let (a0, b0) = r.pairs[0];
                    Item::new(
                        format!("{name} CG R{a} x R{b} is the conjugate of R{a0} x R{b0}"),
                        conjugate_check(ctx, (a0, b0), (a, b), exec),
                    )
                }));
            }
        }
    }

    fn global_checks<'a>(&'a self, contexts: &'a [Context], checks: &mut Vec<Check<'a>>) {
        checks.push(Box::new(|| {
            Item::new("built-in Cayley tables", tables_check())
        }));
        checks.push(Box::new(|| {
            Item::new("built-in irreps", irreps_check(contexts))
        }));
        for ctx in contexts {
            let exec = self.exec;
            let name = ctx.which.name();
            checks.push(Box::new(move || {
                Item::new(
                    format!("{name} CG for every irrep pair"),
                    all_pairs_check(ctx, exec),
                )
            }));
            checks.push(Box::new(move || {
                Item::new(
                    format!("{name} Mercer ranks for every triple"),
                    mercer_check(ctx, exec),
                )
            }));
        }
        checks.push(Box::new(|| {
            Item::new(
                "G32_42 as (Q8 x Q8) / {(1,1), (-1,-1)}",
                construction_check(),
            )
        }));
        checks.push(Box::new(|| {
            Item::new("simple reducibility", simple_reducibility_check(contexts))
        }));
    }
}

fn classes_check(ctx: &Context) -> Result<String, String> {
    let computed = conjugacy_classes(ctx.group()).one_based();
    let sorted = |v: &[Vec<usize>]| -> BTreeSet<Vec<usize>> {
        v.iter()
            .map(|c| {
                let mut c = c.clone();
                c.sort_unstable();
                c
            })
            .collect()
    };
    let expected = class_reference(ctx.which);
    if sorted(&computed) == sorted(expected) {
        Ok(format!("{} classes", computed.len()))
    } else {
        Err(format!("computed {computed:?}, published {expected:?}"))
    }
}

/// Row of `candidates` matching `row` within `tol`, not yet used.
fn match_row(
    row: &[Complex64],
    candidates: &[Vec<Complex64>],
    used: &mut [bool],
    tol: f64,
) -> Option<usize> {
    let hit = (0..candidates.len()).find(|&j| {
        !used[j]
            && candidates[j].len() == row.len()
            && row
                .iter()
                .zip(&candidates[j])
                .all(|(a, b)| (a - b).norm() <= tol)
    })?;
    used[hit] = true;
    Some(hit)
}

fn character_check(ctx: &Context, seed: u64) -> Result<String, String> {
    let dixon = character_table_dixon(ctx.group(), seed).map_err(|e| e.to_string())?;
    if !dixon.is_consistent(CHARACTER_TOL) {
        return Err("class-algebra table fails the orthogonality relations".into());
    }
    let mut dims = dixon.dims().to_vec();
    let mut want: Vec<usize> = ctx.irreps.iter().map(Representation::dim).collect();
    dims.sort_unstable();
    want.sort_unstable();
    if dims != want {
        return Err(format!("degrees {dims:?}, expected {want:?}"));
    }
    let mut deviation_source = "built-in irreps";
    if dixon
        .row_permutation_to(&ctx.table, CHARACTER_TOL)
        .is_none()
    {
        return Err(
            "class-algebra table differs from the characters of the built-in irreps".into(),
        );
    }
    if let Some(published) = character_reference(ctx.which) {
        deviation_source = "published table and built-in irreps";
        let mut used = vec![false; dixon.len()];
        for (i, row) in published.rows.iter().enumerate() {
            if match_row(row, dixon.rows(), &mut used, CHARACTER_TOL).is_none() {
                return Err(format!(
                    "published row {} has no computed counterpart",
                    i + 1
                ));
            }
        }
        if published.rows.len() != dixon.len() {
            return Err(format!("published table has {} rows", published.rows.len()));
        }
    }
    Ok(format!(
        "{} irreps, degrees {dims:?}, matches the {deviation_source} up to row order",
        dixon.len()
    ))
}

fn cg_reference_check(ctx: &Context, r: &CgReference, exec: Execution) -> Item {
    let name = format!(
        "{} CG {} ({})",
        ctx.which.name(),
        pairs_text(&r.pairs),
        r.id
    );
    let mut flags: Vec<String> = r
        .typos
        .iter()
        .map(|t| {
            format!(
                "entry ({}, {}) printed as {} fails unitarity, compared as {}",
                t.row + 1,
                t.col + 1,
                t.printed,
                crate::numerics::snap_str(t.read_as, &Tolerances::default())
            )
        })
        .collect();
    let mut runs = vec![(r.pairs.clone(), r.columns.clone())];
    for v in &r.variants {
        runs.push((v.pairs.clone(), r.columns_with(Some(v.replace))));
        let mut flag = format!(
            "also covers {} with R{} read as R{}",
            pairs_text(&v.pairs),
            v.replace.0,
            v.replace.1
        );
        if !v.note.is_empty() {
            flag += &format!(": {}", v.note);
        }
        flags.push(flag);
    }
    let result = (|| {
        let mut worst: f64 = 0.0;
        let mut checked = 0;
        for (pairs, heads) in &runs {
            for &(a, b) in pairs {
                let targets = targets_from_heads(ctx, heads)?;
                ctx.check_case(&SeriesCase {
                    alpha: a,
                    beta: b,
                    summands: targets,
                })
                .map_err(|e| format!("R{a} x R{b} decomposition: {e}"))?;
                if let Some(case) = series_case(ctx.which, a, b) {
                    ctx.check_case(case)
                        .map_err(|e| format!("R{a} x R{b} series: {e}"))?;
                }
                let cg = cg_matrix_with(
                    exec,
                    &ctx.irreps,
                    &ctx.table,
                    a - 1,
                    b - 1,
                    &Tolerances::default(),
                )
                .map_err(|e| e.to_string())?;
                let defect = cg.unitary_defect();
                let residual =
                    verify_block_diag(&cg, &ctx.irreps[a - 1], &ctx.irreps[b - 1], &ctx.irreps);
                if defect > UNITARY_TOL || residual > RESIDUAL_TOL {
                    return Err(format!(
                        "R{a} x R{b}: unitary defect {defect:e}, residual {residual:e}"
                    ));
                }
                let report =
                    compare_up_to_phase(&cg, &r.matrix, heads).map_err(|e| e.to_string())?;
                if !report.matches(MATCH_TOL) {
                    let bad = report
                        .columns
                        .iter()
                        .find(|c| c.deviation > MATCH_TOL)
                        .map(|c| format!("R{} l={}", c.gamma, c.l))
                        .unwrap_or_default();
                    return Err(format!(
                        "R{a} x R{b}: column {bad} differs from the published table by {:e}",
                        report.max_deviation
                    ));
                }
                worst = worst.max(report.max_deviation);
                checked += 1;
            }
        }
        if ctx.which == BuiltinGroup::G32_42 {
            let ok = r
                .matrix
                .as_slice()
                .iter()
                .all(|z| z.im == 0.0 && (z.re == 0.0 || z.re.abs() == 0.5));
            if !ok {
                return Err("published entries are not all in {0, 1/2, -1/2}".into());
            }
        }
        Ok(format!(
            "{checked} product(s) match up to column phases, max deviation {worst:.1e}"
        ))
    })();
    let mut item = Item::new(name, result);
    item.flags = flags;
    item
}

fn pairs_text(pairs: &[(usize, usize)]) -> String {
    pairs
        .iter()
        .map(|(a, b)| format!("R{a} x R{b}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Target irreps implied by column heads, one entry per replica.
fn targets_from_heads(ctx: &Context, heads: &[(usize, usize)]) -> Result<Vec<usize>, String> {
    let mut out = Vec::new();
    for &(g, l) in heads {
        if g == 0 || g > ctx.irreps.len() {
            return Err(format!("column head R{g} is not an irrep"));
        }
        if l == 1 {
            out.push(g);
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn series_case(which: BuiltinGroup, a: usize, b: usize) -> Option<&'static SeriesCase> {
    series_reference(which)
        .equations
        .iter()
        .flat_map(|e| &e.cases)
        .find(|c| (c.alpha, c.beta) == (a, b))
}

fn conjugate_check(
    ctx: &Context,
    first: (usize, usize),
    second: (usize, usize),
    exec: Execution,
) -> Result<String, String> {
    let tol = Tolerances::default();
    if let Some(case) = series_case(ctx.which, second.0, second.1) {
        ctx.check_case(case)
            .map_err(|e| format!("R{} x R{} series: {e}", second.0, second.1))?;
    }
    let cg = |(a, b): (usize, usize)| {
        cg_matrix_with(exec, &ctx.irreps, &ctx.table, a - 1, b - 1, &tol).map_err(|e| e.to_string())
    };
    let report = compare_conjugate(&cg(second)?, &cg(first)?).map_err(|e| e.to_string())?;
    if report.matches(MATCH_TOL) {
        Ok(format!(
            "column by column up to phase, max deviation {:.1e}",
            report.max_deviation
        ))
    } else {
        Err(format!("max deviation {:e}", report.max_deviation))
    }
}

fn tables_check() -> Result<String, String> {
    for which in BuiltinGroup::ALL {
        let generated = presented_group(which);
        let published = reference_group(which);
        if generated.table() != published.table() {
            let n = which.order();
            let (j, k) = (0..n * n)
                .map(|p| (p / n, p % n))
                .find(|&(j, k)| generated.mul(j, k) != published.mul(j, k))
                .unwrap_or((0, 0));
            return Err(format!(
                "{which}: entry ({}, {}) is {} in the presentation, {} in the published table",
                j + 1,
                k + 1,
                generated.mul(j, k) + 1,
                published.mul(j, k) + 1
            ));
        }
    }
    Ok(
        "Q8, Q16, Q32 and G32_42 presentations reproduce the published tables entry for entry"
            .into(),
    )
}

fn irreps_check(contexts: &[Context]) -> Result<String, String> {
    let tol = Tolerances::default();
    let mut worst: f64 = 0.0;
    for ctx in contexts {
        for r in &ctx.irreps {
            r.validate(&tol)
                .map_err(|e| format!("{} R{}: {e}", ctx.which, r.label()))?;
        }
        let defect = great_orthogonality_defect(&ctx.irreps);
        if defect > ORTHOGONALITY_TOL {
            return Err(format!(
                "{}: great orthogonality defect {defect:e}",
                ctx.which
            ));
        }
        worst = worst.max(defect);
    }
    Ok(format!(
        "homomorphic, unitary, great orthogonality defect {worst:.1e}"
    ))
}

fn all_pairs_check(ctx: &Context, exec: Execution) -> Result<String, String> {
    let checks = all_pairs(exec, &ctx.irreps, &ctx.table, &Tolerances::default());
    let (mut defect, mut residual, mut spread) = (0.0f64, 0.0f64, 0.0f64);
    for p in &checks {
        if let Some(e) = &p.error {
            return Err(format!("R{} x R{}: {e}", p.alpha + 1, p.beta + 1));
        }
        defect = defect.max(p.unitary_defect);
        residual = residual.max(p.residual);
        spread = spread.max(p.norm_spread);
    }
    if defect > UNITARY_TOL || residual > RESIDUAL_TOL || spread > RESIDUAL_TOL {
        return Err(format!(
            "unitary defect {defect:e}, residual {residual:e}, column norm spread {spread:e}"
        ));
    }
    Ok(format!(
        "{} pairs, unitary defect {defect:.1e}, residual {residual:.1e}",
        checks.len()
    ))
}

fn mercer_check(ctx: &Context, exec: Execution) -> Result<String, String> {
    let tol = Tolerances::default();
    let k = ctx.irreps.len();
    let results = par::map_range(exec, k * k * k, |t| {
        let (a, b, c) = (t / (k * k), (t / k) % k, t % k);
        let m = decompose(&ctx.table, a, b).map_err(|e| e.to_string())?.m[c];
        let mm = assemble_mercer_with(
            Execution::Sequential,
            &ctx.irreps[a],
            &ctx.irreps[b],
            &ctx.irreps[c],
        )
        .map_err(|e| e.to_string())?;
        let rank = mercer_rank(&mm, &tol).map_err(|e| e.to_string())?;
        if rank.rank != m {
            return Err(format!(
                "R{} x R{} -> R{}: rank {}, multiplicity {m}",
                a + 1,
                b + 1,
                c + 1,
                rank.rank
            ));
        }
        Ok(rank.smallest_nonzero)
    });
    let mut smallest = f64::INFINITY;
    for r in results {
        if let Some(v) = r? {
            smallest = smallest.min(v);
        }
    }
    let ratio = smallest / tol.eig_zero_tol;
    if ratio < MIN_GAP_RATIO {
        return Err(format!(
            "smallest nonzero eigenvalue {smallest:e} is too close to the threshold"
        ));
    }
    Ok(format!(
        "{} triples, ranks equal multiplicities, smallest nonzero eigenvalue {smallest:.3}",
        k * k * k
    ))
}

fn construction_check() -> Result<String, String> {
    let q = g32_42_quotient();
    let target = builtin(BuiltinGroup::G32_42);
    if !is_isomorphism(&q, &target, &G32_42_RENUMBERING) {
        return Err("embedded renumbering is not an isomorphism".into());
    }
    let found = find_isomorphism(&q, &target).ok_or("no isomorphism found")?;
    if found != G32_42_RENUMBERING {
        return Err(format!("search found {found:?}, embedded map differs"));
    }
    Ok("renumbered quotient equals the built-in table; search regenerates the map".into())
}

fn simple_reducibility_check(contexts: &[Context]) -> Result<String, String> {
    for ctx in contexts {
        if !is_simply_reducible(&ctx.table).map_err(|e| e.to_string())? {
            return Err(format!("{} is not simply reducible", ctx.which));
        }
    }
    Ok("every product of two irreps is multiplicity free in all four groups".into())
}
