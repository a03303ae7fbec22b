//! Irreducible representations of the built-in groups.
//!
//! Each irrep is stored as the matrices of a few elements; the rest are
//! filled in by [`Representation::complete`]. Labels are `"1"`, `"2"`, ...
//! in the customary numbering for each group.

use std::sync::{Arc, OnceLock};

use num_complex::Complex64;

use super::Representation;
use crate::group::{builtin, conjugacy_classes, BuiltinGroup, Group};
use crate::numerics::snap::root_of_unity;
use crate::numerics::{CMatrix, Tolerances};

fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

fn r(x: f64) -> Complex64 {
    c(x, 0.0)
}

const I: Complex64 = Complex64::new(0.0, 1.0);

fn e8(k: u32) -> Complex64 {
    root_of_unity(8, k)
}

fn e16(k: u32) -> Complex64 {
    root_of_unity(16, k)
}

fn id2() -> CMatrix {
    CMatrix::identity(2)
}

fn neg_id2() -> CMatrix {
    CMatrix::identity(2).scale(r(-1.0))
}

/// `[[a, 0], [0, b]]`
fn dg(a: Complex64, b: Complex64) -> CMatrix {
    CMatrix::diag(&[a, b])
}

/// `[[0, a], [b, 0]]`
fn off(a: Complex64, b: Complex64) -> CMatrix {
    CMatrix::from_rows(&[[r(0.0), a], [b, r(0.0)]]).expect("2x2")
}

fn real2(a: f64, b: f64, cc: f64, d: f64) -> CMatrix {
    CMatrix::from_real_rows(&[[a, b], [cc, d]]).expect("2x2")
}

/// 4x4 matrix from 2x2 blocks `[[a, b], [c, d]]`; `None` is a zero block.
fn blocks(
    a: Option<&CMatrix>,
    b: Option<&CMatrix>,
    cc: Option<&CMatrix>,
    d: Option<&CMatrix>,
) -> CMatrix {
    let mut m = CMatrix::zeros(4, 4);
    for (blk, (r0, c0)) in [(a, (0, 0)), (b, (0, 2)), (cc, (2, 0)), (d, (2, 2))] {
        if let Some(blk) = blk {
            for i in 0..2 {
                for j in 0..2 {
                    m[(r0 + i, c0 + j)] = blk[(i, j)];
                }
            }
        }
    }
    m
}

fn listed(elements: &[usize], matrices: Vec<CMatrix>) -> Vec<(usize, CMatrix)> {
    elements.iter().map(|&g| g - 1).zip(matrices).collect()
}

fn scalars(elements: &[usize], values: &[f64]) -> Vec<(usize, CMatrix)> {
    elements
        .iter()
        .zip(values)
        .map(|(&g, &v)| (g - 1, CMatrix::scalar(r(v))))
        .collect()
}

/// One-dimensional irreps given by their value on each conjugacy class.
fn from_class_values(group: &Arc<Group>, rows: &[&[f64]], tol: &Tolerances) -> Vec<Representation> {
    let classes = conjugacy_classes(group);
    rows.iter()
        .enumerate()
        .map(|(i, row)| {
            let values: Vec<Complex64> = (0..group.order())
                .map(|g| r(row[classes.class_of(g)]))
                .collect();
            Representation::one_dimensional(Arc::clone(group), (i + 1).to_string(), &values, tol)
                .expect("one-dimensional irrep")
        })
        .collect()
}

fn complete_all(
    group: &Arc<Group>,
    data: Vec<(usize, Vec<(usize, CMatrix)>)>,
    tol: &Tolerances,
) -> Vec<Representation> {
    data.into_iter()
        .enumerate()
        .map(|(i, (dim, listed))| {
            Representation::complete(Arc::clone(group), (i + 1).to_string(), dim, &listed, tol)
                .unwrap_or_else(|e| panic!("built-in irrep {} of {}: {e}", i + 1, group.name()))
        })
        .collect()
}

fn q8(group: &Arc<Group>, tol: &Tolerances) -> Vec<Representation> {
    let mut irreps = from_class_values(
        group,
        &[
            &[1.0, 1.0, 1.0, 1.0, 1.0],
            &[1.0, 1.0, 1.0, -1.0, -1.0],
            &[1.0, 1.0, -1.0, 1.0, -1.0],
            &[1.0, 1.0, -1.0, -1.0, 1.0],
        ],
        tol,
    );
    let r5 = listed(
        &[2, 3, 5, 7],
        vec![neg_id2(), dg(I, -I), real2(0.0, -1.0, 1.0, 0.0), off(I, I)],
    );
    irreps.extend(
        complete_all(group, vec![(2, r5)], tol)
            .into_iter()
            .map(|rep| relabel(rep, "5")),
    );
    irreps
}

fn relabel(rep: Representation, label: &str) -> Representation {
    Representation {
        label: label.to_owned(),
        ..rep
    }
}

fn q16(group: &Arc<Group>, tol: &Tolerances) -> Vec<Representation> {
    const COLS: [usize; 9] = [1, 2, 3, 5, 7, 9, 11, 13, 15];
    let ones: [[f64; 9]; 4] = [
        [1.0; 9],
        [1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0],
        [1.0, 1.0, 1.0, -1.0, -1.0, 1.0, 1.0, -1.0, -1.0],
        [1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0, 1.0, 1.0],
    ];
    let mut data: Vec<(usize, Vec<(usize, CMatrix)>)> =
        ones.iter().map(|row| (1, scalars(&COLS, row))).collect();
    let o = |a: f64, b: f64| off(r(a), r(b));
    let d = |a: f64, b: f64| dg(r(a), r(b));
    data.push((
        2,
        listed(
            &COLS,
            vec![
                id2(),
                id2(),
                neg_id2(),
                d(1.0, -1.0),
                d(-1.0, 1.0),
                o(1.0, 1.0),
                o(-1.0, -1.0),
                o(-1.0, 1.0),
                o(1.0, -1.0),
            ],
        ),
    ));
    data.push((
        2,
        listed(
            &COLS,
            vec![
                id2(),
                neg_id2(),
                dg(I, -I),
                o(-1.0, 1.0),
                off(I, I),
                off(e8(3), e8(1)),
                off(e8(1), e8(3)),
                dg(e8(3), -e8(1)),
                dg(-e8(1), e8(3)),
            ],
        ),
    ));
    data.push((
        2,
        listed(
            &COLS,
            vec![
                id2(),
                neg_id2(),
                dg(I, -I),
                o(-1.0, 1.0),
                off(I, I),
                off(-e8(3), -e8(1)),
                off(-e8(1), -e8(3)),
                dg(-e8(3), e8(1)),
                dg(e8(1), -e8(3)),
            ],
        ),
    ));
    complete_all(group, data, tol)
}

fn q32(group: &Arc<Group>, tol: &Tolerances) -> Vec<Representation> {
    const COLS: [usize; 10] = [2, 3, 5, 6, 9, 17, 25, 26, 27, 28];
    let ones: [[f64; 10]; 4] = [
        [1.0; 10],
        [1.0, 1.0, 1.0, 1.0, 1.0, -1.0, -1.0, -1.0, -1.0, -1.0],
        [1.0, 1.0, 1.0, 1.0, -1.0, 1.0, -1.0, -1.0, -1.0, -1.0],
        [1.0, 1.0, 1.0, 1.0, -1.0, -1.0, 1.0, 1.0, 1.0, 1.0],
    ];
    let mut data: Vec<(usize, Vec<(usize, CMatrix)>)> =
        ones.iter().map(|row| (1, scalars(&COLS, row))).collect();
    let o11 = off(r(1.0), r(1.0));
    let om = off(r(-1.0), r(1.0));
    let two: Vec<Vec<CMatrix>> = vec![
        vec![
            id2(),
            id2(),
            neg_id2(),
            neg_id2(),
            dg(r(1.0), r(-1.0)),
            o11.clone(),
            om.clone(),
            om.clone(),
            om.clone(),
            om.clone(),
        ],
        vec![
            id2(),
            neg_id2(),
            dg(I, -I),
            dg(I, -I),
            o11.clone(),
            off(e8(3), -e8(1)),
            dg(e8(3), -e8(1)),
            dg(e8(3), -e8(1)),
            dg(-e8(3), e8(1)),
            dg(-e8(3), e8(1)),
        ],
        vec![
            id2(),
            neg_id2(),
            dg(I, -I),
            dg(I, -I),
            o11.clone(),
            off(-e8(3), e8(1)),
            dg(-e8(3), e8(1)),
            dg(-e8(3), e8(1)),
            dg(e8(3), -e8(1)),
            dg(e8(3), -e8(1)),
        ],
        vec![
            neg_id2(),
            dg(I, -I),
            dg(e8(3), -e8(1)),
            dg(-e8(3), e8(1)),
            om.clone(),
            off(e16(5), e16(3)),
            dg(e16(5), -e16(3)),
            dg(-e16(5), e16(3)),
            dg(-e16(1), e16(7)),
            dg(e16(1), -e16(7)),
        ],
        vec![
            neg_id2(),
            dg(I, -I),
            dg(e8(3), -e8(1)),
            dg(-e8(3), e8(1)),
            om.clone(),
            off(-e16(5), -e16(3)),
            dg(-e16(5), e16(3)),
            dg(e16(5), -e16(3)),
            dg(e16(1), -e16(7)),
            dg(-e16(1), e16(7)),
        ],
        vec![
            neg_id2(),
            dg(I, -I),
            dg(-e8(3), e8(1)),
            dg(e8(3), -e8(1)),
            om.clone(),
            off(-e16(1), -e16(7)),
            dg(-e16(1), e16(7)),
            dg(e16(1), -e16(7)),
            dg(-e16(5), e16(3)),
            dg(e16(5), -e16(3)),
        ],
        vec![
            neg_id2(),
            dg(I, -I),
            dg(-e8(3), e8(1)),
            dg(e8(3), -e8(1)),
            om,
            off(e16(1), e16(7)),
            dg(e16(1), -e16(7)),
            dg(-e16(1), e16(7)),
            dg(e16(5), -e16(3)),
            dg(-e16(5), e16(3)),
        ],
    ];
    data.extend(two.into_iter().map(|ms| (2, listed(&COLS, ms))));
    complete_all(group, data, tol)
}

fn g32_42(group: &Arc<Group>, tol: &Tolerances) -> Vec<Representation> {
    const P: f64 = 1.0;
    const M: f64 = -1.0;
    let rows: [[f64; 17]; 16] = [
        [P, P, P, P, P, P, P, P, P, P, P, P, P, P, P, P, P],
        [P, P, P, P, P, P, P, P, P, M, M, M, M, M, M, M, M],
        [P, P, P, P, P, M, M, M, M, P, P, P, P, M, M, M, M],
        [P, P, P, P, P, M, M, M, M, M, M, M, M, P, P, P, P],
        [P, P, P, M, M, P, P, M, M, P, P, M, M, P, P, M, M],
        [P, P, P, M, M, P, P, M, M, M, M, P, P, M, M, P, P],
        [P, P, P, M, M, M, M, P, P, P, P, M, M, M, M, P, P],
        [P, P, P, M, M, M, M, P, P, M, M, P, P, P, P, M, M],
        [P, P, M, P, M, P, M, P, M, P, M, P, M, P, M, P, M],
        [P, P, M, P, M, P, M, P, M, M, P, M, P, M, P, M, P],
        [P, P, M, P, M, M, P, M, P, P, M, P, M, M, P, M, P],
        [P, P, M, P, M, M, P, M, P, M, P, M, P, P, M, P, M],
        [P, P, M, M, P, P, M, M, P, P, M, M, P, P, M, M, P],
        [P, P, M, M, P, P, M, M, P, M, P, P, M, M, P, P, M],
        [P, P, M, M, P, M, P, P, M, P, M, M, P, M, P, P, M],
        [P, P, M, M, P, M, P, P, M, M, P, P, M, P, M, M, P],
    ];
    let row_refs: Vec<&[f64]> = rows.iter().map(|r| r.as_slice()).collect();
    let mut irreps = from_class_values(group, &row_refs, tol);

    let t0 = id2();
    let t1 = real2(0.0, 1.0, 1.0, 0.0);
    let t2 = real2(0.0, -1.0, 1.0, 0.0);
    let t3 = real2(1.0, 0.0, 0.0, -1.0);
    let n = |m: &CMatrix| m.scale(r(-1.0));
    let diag = |a: &CMatrix, d: &CMatrix| blocks(Some(a), None, None, Some(d));
    let anti = |b: &CMatrix, cc: &CMatrix| blocks(None, Some(b), Some(cc), None);
    let r17 = listed(
        &[2, 3, 5, 7, 9, 11, 13, 15, 17, 19, 21, 23, 25, 27, 29, 31],
        vec![
            CMatrix::identity(4).scale(r(-1.0)),
            diag(&t0, &n(&t0)),
            diag(&t3, &t3),
            diag(&t3, &n(&t3)),
            diag(&t1, &t1),
            diag(&t1, &n(&t1)),
            diag(&t2, &t2),
            diag(&t2, &n(&t2)),
            anti(&t3, &t3),
            anti(&n(&t3), &t3),
            anti(&t0, &t0),
            anti(&n(&t0), &t0),
            anti(&n(&t2), &n(&t2)),
            anti(&t2, &n(&t2)),
            anti(&n(&t1), &n(&t1)),
            anti(&t1, &n(&t1)),
        ],
    );
    irreps.extend(
        complete_all(group, vec![(4, r17)], tol)
            .into_iter()
            .map(|rep| relabel(rep, "17")),
    );
    irreps
}

fn build(which: BuiltinGroup) -> Vec<Representation> {
    let group = Arc::new(builtin(which));
    let tol = Tolerances::default();
    match which {
        BuiltinGroup::Q8 => q8(&group, &tol),
        BuiltinGroup::Q16 => q16(&group, &tol),
        BuiltinGroup::Q32 => q32(&group, &tol),
        BuiltinGroup::G32_42 => g32_42(&group, &tol),
    }
}

/// The complete list of irreps of a built-in group, validated.
pub fn builtin_irreps(which: BuiltinGroup) -> Vec<Representation> {
    static CACHE: [OnceLock<Vec<Representation>>; 4] = [
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
        OnceLock::new(),
    ];
    let slot = BuiltinGroup::ALL
        .iter()
        .position(|&b| b == which)
        .expect("listed");
    CACHE[slot].get_or_init(|| build(which)).clone()
}
