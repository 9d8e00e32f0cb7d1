//! Serializable results of Lefschetz computations.

use std::fmt;

use serde::Serialize;

use crate::exactalg::{ExtField, Gf};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Yes,
    No,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Yes => "Yes",
            Verdict::No => "No",
        })
    }
}

/// How a determinant was decided.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// Exact polynomial determinant.
    Symbolic,
    /// Randomized evaluation over an extension field.
    Pit,
    /// Exact determinant at a fixed point.
    Numeric,
    /// Exact integer determinant.
    Integer,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DetStatus {
    Nonzero,
    Zero,
}

#[derive(Clone, Debug, Serialize)]
pub struct DetRecord {
    pub k: usize,
    /// Side length of the square matrix of `lambda^k`.
    pub size: usize,
    pub method: Method,
    pub status: DetStatus,
    /// Rendered polynomial or integer, when available.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub determinant: Option<String>,
    /// Number of terms of a symbolic determinant.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub terms: Option<usize>,
    /// For a randomized `Zero`, the probability that the determinant is in fact nonzero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error_bound: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub extension_degree: Option<usize>,
}

/// A weight `sum c_s varpi_s` with coordinates in `F_{p^m}`.
#[derive(Clone, Debug, Serialize)]
pub struct Witness {
    pub field: String,
    pub extension_degree: usize,
    /// Coordinates by node (1-based order); `t` is the field generator.
    pub coordinates: Vec<String>,
}

impl Witness {
    pub fn new(point: &[Gf]) -> Witness {
        let field = point.iter().find_map(|x| x.field().cloned());
        let (name, degree) = match &field {
            Some(f) => (field_name(f), f.degree()),
            None => ("Z".to_string(), 1),
        };
        Witness {
            field: name,
            extension_degree: degree,
            coordinates: point.iter().map(|x| x.to_string()).collect(),
        }
    }
}

/// `F_9 = F_3[t]/(t^2+2t+2)`, or `F_5` for a prime field.
pub fn field_name(f: &ExtField) -> String {
    let p = f.characteristic();
    if f.degree() == 1 {
        return format!("F_{p}");
    }
    let m = f.modulus();
    let mut terms = Vec::new();
    for (i, &c) in m.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let coef = if c == 1 && i > 0 { String::new() } else { c.to_string() };
        terms.push(match i {
            0 => coef,
            1 => format!("{coef}t"),
            _ => format!("{coef}t^{i}"),
        });
    }
    format!("F_{} = F_{p}[t]/({})", f.order(), terms.join("+"))
}

#[derive(Clone, Debug, Serialize)]
pub struct HlReport {
    pub subject: String,
    pub characteristic: u32,
    /// Which graph or algebra the action lives on.
    pub graph: String,
    pub top_degree: usize,
    /// Variable `x_j` multiplies `varpi_{ordering[j-1]}` (1-based nodes).
    pub ordering: Vec<usize>,
    pub records: Vec<DetRecord>,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub failing_k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    pub seed: u64,
    /// FNV-1a hash of the basis ordering; fixes the sign of each determinant.
    pub basis_fingerprint: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl HlReport {
    pub fn is_yes(&self) -> bool {
        self.verdict == Verdict::Yes
    }

    pub fn record(&self, k: usize) -> Option<&DetRecord> {
        self.records.iter().find(|r| r.k == k)
    }
}

impl fmt::Display for HlReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{} over characteristic {} ({})", self.subject, self.characteristic, self.graph)?;
        writeln!(f, "top degree d = {}, seed = {:#x}, basis = {}", self.top_degree, self.seed, self.basis_fingerprint)?;
        writeln!(f, "{:>4} {:>6} {:>9} {:>8}  determinant", "k", "size", "method", "status")?;
        for r in &self.records {
            let method = format!("{:?}", r.method).to_lowercase();
            let status = format!("{:?}", r.status).to_lowercase();
            let det = match (&r.determinant, r.terms) {
                (Some(d), _) if d.len() <= 120 => d.clone(),
                (_, Some(t)) => format!("({t} terms)"),
                _ => String::new(),
            };
            writeln!(f, "{:>4} {:>6} {:>9} {:>8}  {det}", r.k, r.size, method, status)?;
        }
        write!(f, "verdict: {}", self.verdict)?;
        if let Some(k) = self.failing_k {
            write!(f, " (fails at k = {k})")?;
        }
        writeln!(f)?;
        if let Some(w) = &self.witness {
            writeln!(f, "witness over {}: ({})", w.field, w.coordinates.join(", "))?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// FNV-1a over the vertex names, separated by commas.
pub fn fingerprint<S: AsRef<str>>(names: &[S]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for (i, n) in names.iter().enumerate() {
        if i > 0 {
            h ^= b',' as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
        for b in n.as_ref().bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    }
    format!("fnv1a:{h:016x}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fnv_reference_values() {
        assert_eq!(fingerprint::<&str>(&[]), "fnv1a:cbf29ce484222325");
        assert_eq!(fingerprint(&["a"]), "fnv1a:af63dc4c8601ec8c");
        assert_ne!(fingerprint(&["e", "1"]), fingerprint(&["1", "e"]));
    }

    #[test]
    fn field_names() {
        let f = ExtField::new(5, 1, 0);
        assert_eq!(field_name(&f), "F_5");
        let g = ExtField::new(3, 2, 0);
        assert!(field_name(&g).starts_with("F_9 = F_3[t]/(t^2"));
    }
}
