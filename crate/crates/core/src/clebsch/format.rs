use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{CgError, CgMatrix};
use crate::numerics::{snap_str, CMatrix, Tolerances};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CgJsonBlock {
    pub gamma: String,
    pub replica: usize,
    /// One list of `[re, im]` per column.
    pub columns: Vec<Vec<[f64; 2]>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CgJson {
    pub group: String,
    pub alpha: String,
    pub beta: String,
    pub blocks: Vec<CgJsonBlock>,
    pub residual: f64,
    pub unitary_defect: f64,
}

impl CgJson {
    /// The assembled matrix and its `(gamma, l)` column heads; gamma labels
    /// must be integers.
    pub fn matrix(&self) -> Result<(CMatrix, Vec<(usize, usize)>), CgError> {
        let mut cols = Vec::new();
        let mut heads = Vec::new();
        for b in &self.blocks {
            let gamma: usize = b.gamma.parse().map_err(|_| {
                CgError::ShapeMismatch(format!("target label {:?} is not an integer", b.gamma))
            })?;
            for (l, c) in b.columns.iter().enumerate() {
                cols.push(
                    c.iter()
                        .map(|&[re, im]| Complex64::new(re, im))
                        .collect::<Vec<_>>(),
                );
                heads.push((gamma, l + 1));
            }
        }
        if cols.is_empty() {
            return Err(CgError::ShapeMismatch("no columns".into()));
        }
        let m = CMatrix::from_columns(&cols).map_err(|e| CgError::ShapeMismatch(e.to_string()))?;
        Ok((m, heads))
    }
}

fn clean(x: f64) -> f64 {
    if x == 0.0 {
        0.0
    } else {
        x
    }
}

pub fn cg_to_json(cg: &CgMatrix, residual: f64) -> CgJson {
    CgJson {
        group: cg.group.name().to_owned(),
        alpha: cg.alpha.clone(),
        beta: cg.beta.clone(),
        blocks: cg
            .blocks
            .iter()
            .map(|b| CgJsonBlock {
                gamma: b.gamma.clone(),
                replica: b.replica,
                columns: (0..b.columns.cols())
                    .map(|l| {
                        b.columns
                            .column(l)
                            .iter()
                            .map(|z| [clean(z.re), clean(z.im)])
                            .collect()
                    })
                    .collect(),
            })
            .collect(),
        residual,
        unitary_defect: cg.unitary_defect(),
    }
}

pub fn cg_from_json(text: &str) -> Result<CgJson, CgError> {
    serde_json::from_str(text)
        .map_err(|e| CgError::ShapeMismatch(format!("cannot read CG JSON: {e}")))
}

/// Table with rows labelled `j,k` and columns grouped by target irrep, each
/// group subdivided by `l`. Entries are snapped to symbols where possible.
pub fn cg_to_text(cg: &CgMatrix, na: usize, nb: usize, tol: &Tolerances) -> String {
    let mut top = vec![String::new()];
    let mut sub = vec!["j,k".to_owned()];
    for b in &cg.blocks {
        let name = if b.replica == 0 {
            format!("R{}", b.gamma)
        } else {
            format!("R{}.{}", b.gamma, b.replica + 1)
        };
        for l in 0..b.columns.cols() {
            top.push(if l == 0 { name.clone() } else { String::new() });
            sub.push(format!("l={}", l + 1));
        }
    }
    let mut body: Vec<Vec<String>> = Vec::with_capacity(na * nb);
    for j in 0..na {
        for k in 0..nb {
            let r = j * nb + k;
            let mut row = vec![format!("{},{}", j + 1, k + 1)];
            row.extend((0..cg.assembled.cols()).map(|c| snap_str(cg.assembled[(r, c)], tol)));
            body.push(row);
        }
    }
    let ncols = top.len();
    let width: Vec<usize> = (0..ncols)
        .map(|c| {
            std::iter::once(&top[c])
                .chain(std::iter::once(&sub[c]))
                .chain(body.iter().map(|r| &r[c]))
                .map(|s| s.chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |cells: &[String]| {
        let parts: Vec<String> = cells
            .iter()
            .zip(&width)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        parts.join("  ").trim_end().to_owned() + "\n"
    };
    let mut out = format!("R{} x R{} of {}\n", cg.alpha, cg.beta, cg.group.name());
    out += &line(&top);
    out += &line(&sub);
    for r in &body {
        out += &line(r);
    }
    out
}
