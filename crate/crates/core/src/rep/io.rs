//! The `.irrep` JSON format.
//!
//! ```json
//! {"group": "Q8", "label": "5", "dim": 2,
//!  "matrices": {"3": [[[0, 1], [0, 0]], [[0, 0], [0, -1]]], "5": ...}}
//! ```
//!
//! Keys of `matrices` are 1-based element indices and entries are `[re, im]`
//! pairs. Elements that are left out are filled in by
//! [`Representation::complete`].

use std::collections::BTreeMap;
use std::sync::Arc;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{RepError, Representation};
use crate::group::Group;
use crate::numerics::{CMatrix, Tolerances};

#[derive(Serialize, Deserialize)]
struct IrrepFile {
    group: String,
    label: String,
    dim: usize,
    matrices: BTreeMap<String, Vec<Vec<[f64; 2]>>>,
}

/// Reads a representation of `group`. The file's `group` field is not
/// interpreted; resolving it is up to the caller.
pub fn irrep_from_json(
    text: &str,
    group: Arc<Group>,
    tol: &Tolerances,
) -> Result<Representation, RepError> {
    let file: IrrepFile =
        serde_json::from_str(text).map_err(|e| RepError::Format(e.to_string()))?;
    let mut listed = Vec::with_capacity(file.matrices.len());
    for (key, rows) in &file.matrices {
        let index: usize = key
            .parse()
            .map_err(|_| RepError::Format(format!("matrix key {key:?} is not an element index")))?;
        if index == 0 {
            return Err(RepError::Format("element indices are 1-based".into()));
        }
        let rows: Vec<Vec<Complex64>> = rows
            .iter()
            .map(|r| r.iter().map(|&[re, im]| Complex64::new(re, im)).collect())
            .collect();
        if rows.len() != file.dim || rows.iter().any(|r| r.len() != file.dim) {
            return Err(RepError::DimensionMismatch {
                element: index,
                rows: rows.len(),
                cols: rows.first().map_or(0, Vec::len),
                dim: file.dim,
            });
        }
        listed.push((index - 1, CMatrix::from_rows(&rows)?));
    }
    Representation::complete(group, file.label, file.dim, &listed, tol)
}

/// Writes every matrix of `r`.
pub fn irrep_to_json(r: &Representation) -> String {
    let matrices = r
        .matrices()
        .iter()
        .enumerate()
        .map(|(g, m)| {
            let rows = (0..m.rows())
                .map(|i| m.row(i).iter().map(|z| [z.re, z.im]).collect())
                .collect();
            ((g + 1).to_string(), rows)
        })
        .collect();
    let file = IrrepFile {
        group: r.group().name().to_owned(),
        label: r.label().to_owned(),
        dim: r.dim(),
        matrices,
    };
    serde_json::to_string_pretty(&file).expect("serializable")
}
