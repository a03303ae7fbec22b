use num_complex::Complex64;
use serde::Serialize;

use super::{CharacterTable, RepError};

/// Multiplicities `m_gamma` of each irrep in `alpha x beta`, indexed by the
/// rows of the character table used.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Decomposition {
    pub alpha: String,
    pub beta: String,
    pub labels: Vec<String>,
    pub m: Vec<usize>,
}

impl Decomposition {
    /// `(label, multiplicity)` for every irrep that occurs.
    pub fn components(&self) -> Vec<(&str, usize)> {
        self.labels
            .iter()
            .zip(&self.m)
            .filter(|(_, &m)| m > 0)
            .map(|(l, &m)| (l.as_str(), m))
            .collect()
    }

    /// Labels of the irreps that occur, each listed once per multiplicity.
    pub fn summands(&self) -> Vec<&str> {
        self.components()
            .into_iter()
            .flat_map(|(l, m)| std::iter::repeat_n(l, m))
            .collect()
    }

    pub fn multiplicity(&self, label: &str) -> usize {
        self.labels
            .iter()
            .position(|l| l == label)
            .map_or(0, |i| self.m[i])
    }

    /// `sum_gamma m_gamma n_gamma`.
    pub fn dimension(&self, dims: &[usize]) -> usize {
        self.m.iter().zip(dims).map(|(m, d)| m * d).sum()
    }
}

impl std::fmt::Display for Decomposition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .components()
            .into_iter()
            .map(|(l, m)| {
                if m == 1 {
                    format!("R{l}")
                } else {
                    format!("{m} R{l}")
                }
            })
            .collect();
        write!(
            f,
            "R{} x R{} = {}",
            self.alpha,
            self.beta,
            parts.join(" + ")
        )
    }
}

/// `m_gamma = (1/|G|) sum_c |C_c| chi_a(c) chi_b(c) conj(chi_gamma(c))`,
/// rounded to integers after checking they are within 1e-6 of one.
pub fn decompose(
    table: &CharacterTable,
    alpha: usize,
    beta: usize,
) -> Result<Decomposition, RepError> {
    let n = table.group().order() as f64;
    let classes = table.classes();
    let (ra, rb) = (table.row(alpha), table.row(beta));
    let mut m = Vec::with_capacity(table.len());
    for gamma in 0..table.len() {
        let rg = table.row(gamma);
        let s: Complex64 = (0..classes.len())
            .map(|c| classes.size(c) as f64 * ra[c] * rb[c] * rg[c].conj())
            .sum::<Complex64>()
            / n;
        let rounded = s.re.round();
        if (s - Complex64::new(rounded, 0.0)).norm() > 1e-6 || rounded < 0.0 {
            return Err(RepError::NonIntegralMultiplicity {
                gamma: table.label(gamma).to_owned(),
                value: s.re,
            });
        }
        m.push(rounded as usize);
    }
    Ok(Decomposition {
        alpha: table.label(alpha).to_owned(),
        beta: table.label(beta).to_owned(),
        labels: table.labels().to_vec(),
        m,
    })
}

/// True iff no irrep occurs more than once in any product of two irreps.
pub fn is_simply_reducible(table: &CharacterTable) -> Result<bool, RepError> {
    for a in 0..table.len() {
        for b in a..table.len() {
            if decompose(table, a, b)?.m.iter().any(|&m| m > 1) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
