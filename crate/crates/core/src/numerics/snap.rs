//! Symbolic display of the small cyclotomic numbers that appear in the
//! irreps and Clebsch-Gordan tables (`1/√2`, `e8^3`, `(1-i)/2`, ...).

use std::f64::consts::{FRAC_1_SQRT_2, PI, SQRT_2};
use std::fmt;
use std::sync::OnceLock;

use num_complex::Complex64;

use super::Tolerances;

#[derive(Clone, Debug, PartialEq)]
pub enum Snapped {
    Symbolic(&'static str),
    Numeric(Complex64),
}

impl Snapped {
    pub fn is_symbolic(&self) -> bool {
        matches!(self, Snapped::Symbolic(_))
    }
}

impl fmt::Display for Snapped {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Snapped::Symbolic(label) => f.write_str(label),
            Snapped::Numeric(z) => write!(f, "numeric({})", format_complex(*z)),
        }
    }
}

/// `exp(2 pi i k / n)`
pub fn root_of_unity(n: u32, k: u32) -> Complex64 {
    Complex64::from_polar(1.0, 2.0 * PI * f64::from(k) / f64::from(n))
}

fn candidates() -> &'static [(&'static str, Complex64)] {
    static TABLE: OnceLock<Vec<(&'static str, Complex64)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let c = Complex64::new;
        let h = FRAC_1_SQRT_2;
        let mut v = vec![
            ("0", c(0.0, 0.0)),
            ("1", c(1.0, 0.0)),
            ("-1", c(-1.0, 0.0)),
            ("i", c(0.0, 1.0)),
            ("-i", c(0.0, -1.0)),
            ("1/2", c(0.5, 0.0)),
            ("-1/2", c(-0.5, 0.0)),
            ("i/2", c(0.0, 0.5)),
            ("-i/2", c(0.0, -0.5)),
            ("1/√2", c(h, 0.0)),
            ("-1/√2", c(-h, 0.0)),
            ("i/√2", c(0.0, h)),
            ("-i/√2", c(0.0, -h)),
            ("(1+i)/2", c(0.5, 0.5)),
            ("(1-i)/2", c(0.5, -0.5)),
            ("(-1+i)/2", c(-0.5, 0.5)),
            ("(-1-i)/2", c(-0.5, -0.5)),
        ];
        // character values of the built-in groups
        let (c1, c3) = ((PI / 8.0).cos() * 2.0, (3.0 * PI / 8.0).cos() * 2.0);
        v.extend([
            ("2", c(2.0, 0.0)),
            ("-2", c(-2.0, 0.0)),
            ("4", c(4.0, 0.0)),
            ("-4", c(-4.0, 0.0)),
            ("√2", c(SQRT_2, 0.0)),
            ("-√2", c(-SQRT_2, 0.0)),
            ("2cos(π/8)", c(c1, 0.0)),
            ("-2cos(π/8)", c(-c1, 0.0)),
            ("2cos(3π/8)", c(c3, 0.0)),
            ("-2cos(3π/8)", c(-c3, 0.0)),
        ]);
        // even powers of e8 and e16 coincide with entries above
        const E8: [&str; 4] = ["e8", "e8^3", "e8^5", "e8^7"];
        for (i, label) in E8.iter().enumerate() {
            v.push((label, root_of_unity(8, 2 * i as u32 + 1)));
        }
        const E16: [&str; 8] = [
            "e16", "e16^3", "e16^5", "e16^7", "e16^9", "e16^11", "e16^13", "e16^15",
        ];
        for (i, label) in E16.iter().enumerate() {
            v.push((label, root_of_unity(16, 2 * i as u32 + 1)));
        }
        v
    })
}

/// Returns the symbolic label of `z` when it lies within `eq_tol` of a
/// known constant, otherwise the raw value.
pub fn snap(z: Complex64, tol: &Tolerances) -> Snapped {
    candidates()
        .iter()
        .find(|(_, w)| (z - w).norm() <= tol.eq_tol)
        .map_or(Snapped::Numeric(z), |(label, _)| Snapped::Symbolic(label))
}

/// Like [`snap`] but renders the value directly.
pub fn snap_str(z: Complex64, tol: &Tolerances) -> String {
    snap(z, tol).to_string()
}

/// Parses a symbolic label back to its value. Accepts everything [`snap`]
/// emits plus a few spellings found in printed tables: a Unicode minus,
/// `sqrt2` for `√2`, a `/√2` suffix on roots of unity, and a bare `√2`
/// factor (`i√2`), which is read literally.
pub fn parse_label(text: &str) -> Option<Complex64> {
    let s: String = text
        .trim()
        .replace('\u{2212}', "-")
        .replace("sqrt2", "√2")
        .replace(' ', "");
    if s.is_empty() {
        return None;
    }
    if let Some(inner) = s.strip_prefix("numeric(").and_then(|r| r.strip_suffix(')')) {
        return parse_complex(inner);
    }
    if let Some(&(_, z)) = candidates().iter().find(|(label, _)| *label == s) {
        return Some(z);
    }
    let (neg, body) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(&s)),
    };
    let value = parse_body(body)?;
    Some(if neg { -value } else { value })
}

fn parse_body(body: &str) -> Option<Complex64> {
    let sqrt2 = std::f64::consts::SQRT_2;
    if let Some(base) = body.strip_suffix("/√2") {
        return parse_body(base).map(|z| z / sqrt2);
    }
    if let Some(base) = body.strip_suffix("/2") {
        return parse_body(base.trim_start_matches('(').trim_end_matches(')')).map(|z| z / 2.0);
    }
    if let Some(base) = body.strip_suffix("√2") {
        let base = if base.is_empty() { "1" } else { base };
        return parse_body(base).map(|z| z * sqrt2);
    }
    if let Some(rest) = body.strip_prefix('e') {
        let (n, k) = match rest.split_once('^') {
            Some((n, k)) => (n.parse().ok()?, k.parse().ok()?),
            None => (rest.parse().ok()?, 1),
        };
        if n == 0 {
            return None;
        }
        return Some(root_of_unity(n, k));
    }
    match body {
        "i" => return Some(Complex64::new(0.0, 1.0)),
        "" => return None,
        _ => {}
    }
    parse_complex(body)
}

/// Parses `a`, `bi`, `a+bi` or `a-bi` with decimal parts.
pub fn parse_complex(s: &str) -> Option<Complex64> {
    let s = s.trim();
    if let Ok(x) = s.parse::<f64>() {
        return Some(Complex64::new(x, 0.0));
    }
    let body = s.strip_suffix('i')?;
    // split at the last sign that is not the leading one or part of an exponent
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&i| (bytes[i] == b'+' || bytes[i] == b'-') && !matches!(bytes[i - 1], b'e' | b'E'));
    match split {
        Some(i) => {
            let re = body[..i].parse::<f64>().ok()?;
            let im_str = &body[i..];
            let im = match im_str {
                "+" => 1.0,
                "-" => -1.0,
                _ => im_str.parse::<f64>().ok()?,
            };
            Some(Complex64::new(re, im))
        }
        None => {
            let im = match body {
                "" | "+" => 1.0,
                "-" => -1.0,
                _ => body.parse::<f64>().ok()?,
            };
            Some(Complex64::new(0.0, im))
        }
    }
}

/// Plain numeric rendering: real values print as reals, others as `a+bi`.
pub fn format_complex(z: Complex64) -> String {
    let clean = |x: f64| if x == 0.0 { 0.0 } else { x };
    if z.im == 0.0 {
        format!("{}", clean(z.re))
    } else if z.re == 0.0 {
        format!("{}i", clean(z.im))
    } else {
        format!("{}{:+}i", clean(z.re), clean(z.im))
    }
}

/// All symbolic labels known to [`snap`].
pub fn symbolic_labels() -> impl Iterator<Item = &'static str> {
    candidates().iter().map(|(label, _)| *label)
}
