//! Output records: JSON with complex numbers as `[re, im]` and CSV with
//! paired `<name>_re`, `<name>_im` columns. Floats are written in shortest
//! round-trip form, so re-reading reproduces every bit.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::{GramMatrix, QuadratureGrid};
use crate::verify::GramComparison;

pub type Pair = [f64; 2];

pub fn pair(z: Complex64) -> Pair {
    [z.re, z.im]
}

/// The conventions every emitted number depends on.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Conventions {
    pub chart: String,
    pub orientation: String,
    pub one_form_basis: Vec<String>,
    pub two_form_basis: Vec<String>,
    pub inner_product: String,
    pub codifferential: String,
    pub laplacian: String,
    pub killing_eigenvalues: String,
}

impl Default for Conventions {
    fn default() -> Self {
        let s = |v: &str| v.to_string();
        Conventions {
            chart: s("(alpha, theta, phi), metric d alpha^2 + cos^2 alpha d theta^2 + sin^2 alpha d phi^2"),
            orientation: s("(e_alpha, e_theta, e_phi) positively oriented"),
            one_form_basis: vec![s("e_alpha"), s("e_theta"), s("e_phi")],
            two_form_basis: vec![s("e_theta^e_phi"), s("e_phi^e_alpha"), s("e_alpha^e_theta")],
            inner_product: s("Hermitian, conjugate-linear in the second argument"),
            codifferential: s("(-1)^p * d * on p-forms; minus the divergence on one-forms"),
            laplacian: s("-(delta d + d delta)"),
            killing_eigenvalues: s("xi = d_phi + d_theta: mu = 2i m+; xi' = d_phi - d_theta: nu = 2i m-"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridInfo {
    pub l_max: u32,
    pub n_x: usize,
    pub n_theta: usize,
    pub n_phi: usize,
    pub nodes: usize,
}

impl From<&QuadratureGrid> for GridInfo {
    fn from(g: &QuadratureGrid) -> Self {
        GridInfo {
            l_max: g.l_max,
            n_x: g.x_nodes.len(),
            n_theta: g.n_theta,
            n_phi: g.n_phi,
            nodes: g.len(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub version: String,
    pub conventions: Conventions,
    /// How rows and columns are ordered.
    pub basis_order: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridInfo>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tolerance: Option<f64>,
}

impl Metadata {
    pub fn new(basis_order: impl Into<String>) -> Self {
        Metadata {
            version: env!("CARGO_PKG_VERSION").to_string(),
            conventions: Conventions::default(),
            basis_order: basis_order.into(),
            grid: None,
            tolerance: None,
        }
    }

    pub fn with_grid(mut self, g: &QuadratureGrid) -> Self {
        self.grid = Some(g.into());
        self
    }

    pub fn with_tolerance(mut self, t: f64) -> Self {
        self.tolerance = Some(t);
        self
    }
}

/// Lexicographic `(L, m+, m-)` order, exact modes before `E` before `E'`.
pub const BASIS_ORDER: &str = "family (A, E, E'), then lexicographic (L, m+, m-)";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OutputRecord<T> {
    pub command: String,
    pub parameters: serde_json::Value,
    pub payload: T,
    pub metadata: Metadata,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramPayload {
    pub basis: Vec<String>,
    pub normalized: bool,
    pub numeric: Vec<Vec<Pair>>,
    pub closed_form: Vec<Vec<Pair>>,
    pub max_abs_deviation: f64,
}

impl GramPayload {
    pub fn new(cmp: &GramComparison, normalized: bool) -> Self {
        GramPayload {
            basis: cmp.labels(),
            normalized,
            numeric: cmp.numeric.to_pairs(),
            closed_form: cmp.closed_form.to_pairs(),
            max_abs_deviation: cmp.max_abs_deviation(),
        }
    }

    /// Deviation recomputed from the stored matrices.
    pub fn recompute_deviation(&self) -> Result<f64> {
        let a = GramMatrix::from_pairs(&self.numeric)?;
        let b = GramMatrix::from_pairs(&self.closed_form)?;
        if a.n != b.n {
            return Err(Error::Parse("numeric and closed-form sizes differ".into()));
        }
        Ok(a.max_abs_deviation(&b))
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(|e| Error::Serialization(e.to_string()))
}

pub fn from_json<T: serde::de::DeserializeOwned>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

/// Shortest representation that parses back to the same `f64`.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:?}")
}

/// Writes a header and rows as CSV.
pub fn csv_table(header: &[String], rows: &[Vec<String>]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let ser = |e: csv::Error| Error::Serialization(e.to_string());
    w.write_record(header).map_err(ser)?;
    for r in rows {
        w.write_record(r).map_err(ser)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Serialization(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Serialization(e.to_string()))
}

/// Column names `<name>_re`, `<name>_im`.
pub fn complex_columns(name: &str) -> [String; 2] {
    [format!("{name}_re"), format!("{name}_im")]
}

pub fn complex_cells(z: Complex64) -> [String; 2] {
    [fmt_f64(z.re), fmt_f64(z.im)]
}

/// One row per matrix entry.
pub fn gram_csv(g: &GramPayload) -> Result<String> {
    let mut header: Vec<String> = ["row", "col", "row_mode", "col_mode"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    header.extend(complex_columns("numeric"));
    header.extend(complex_columns("closed_form"));
    let mut rows = Vec::new();
    for (r, (num_row, cf_row)) in g.numeric.iter().zip(&g.closed_form).enumerate() {
        for (c, (num, cf)) in num_row.iter().zip(cf_row).enumerate() {
            let mut row = vec![
                r.to_string(),
                c.to_string(),
                g.basis[r].clone(),
                g.basis[c].clone(),
            ];
            row.extend(complex_cells(Complex64::new(num[0], num[1])));
            row.extend(complex_cells(Complex64::new(cf[0], cf[1])));
            rows.push(row);
        }
    }
    csv_table(&header, &rows)
}

/// Reads back a Gram matrix from the CSV layout of [`gram_csv`].
pub fn gram_from_csv(text: &str) -> Result<(GramMatrix, GramMatrix)> {
    let mut rd = csv::Reader::from_reader(text.as_bytes());
    let bad = |e: String| Error::Parse(e);
    let mut entries = Vec::new();
    for rec in rd.records() {
        let rec = rec.map_err(|e| bad(e.to_string()))?;
        let f = |k: usize| -> Result<f64> {
            rec.get(k)
                .ok_or_else(|| bad(format!("missing column {k}")))?
                .parse::<f64>()
                .map_err(|e| bad(e.to_string()))
        };
        let idx = |k: usize| -> Result<usize> {
            rec.get(k)
                .ok_or_else(|| bad(format!("missing column {k}")))?
                .parse::<usize>()
                .map_err(|e| bad(e.to_string()))
        };
        entries.push((idx(0)?, idx(1)?, [f(4)?, f(5)?], [f(6)?, f(7)?]));
    }
    let n = (entries.len() as f64).sqrt().round() as usize;
    if n * n != entries.len() {
        return Err(bad(format!(
            "{} entries do not form a square matrix",
            entries.len()
        )));
    }
    let mut num = vec![vec![[0.0; 2]; n]; n];
    let mut cf = vec![vec![[0.0; 2]; n]; n];
    for (r, c, a, b) in entries {
        if r >= n || c >= n {
            return Err(bad(format!("entry ({r}, {c}) outside a {n} x {n} matrix")));
        }
        num[r][c] = a;
        cf[r][c] = b;
    }
    Ok((GramMatrix::from_pairs(&num)?, GramMatrix::from_pairs(&cf)?))
}
