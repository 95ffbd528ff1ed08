use std::fs;

use hopf_modes::exterior::{codifferential, star_d, PointForm};
use hopf_modes::io::{
    complex_cells, complex_columns, csv_table, fmt_f64, gram_csv, pair, to_json, GramPayload,
    Metadata, OutputRecord, BASIS_ORDER,
};
use hopf_modes::mode_families::{
    dimension_coexact, dimension_exact, enumerate_coexact, mode, FamilyTag,
};
use hopf_modes::quadrature::build_grid;
use hopf_modes::scalar_modes::{enumerate_scalar, scalar_mode_value, spectral_data};
use hopf_modes::verify::{self, basis_modes, family_modes, mode_gram, Report, VerifyConfig};
use hopf_modes::{Error, Execution, HalfInt, HopfPoint, Killing, ModeIndex};
use num_complex::Complex64;
use serde::Serialize;
use serde_json::{json, Value};

use crate::args::{DimsArgs, EvalArgs, Format, GramArgs, Output, VerifyArgs};

#[derive(Debug)]
pub enum CliError {
    /// Bad flags or values the library rejects as out of its domain.
    Usage(String),
    /// A verification suite ran and at least one check failed.
    Failed(String),
    Runtime(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failed(_) => 3,
            CliError::Runtime(_) => 1,
        }
    }

    pub fn message(&self) -> &str {
        match self {
            CliError::Usage(m) | CliError::Failed(m) | CliError::Runtime(m) => m,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Domain(_)
            | Error::InvalidIndex(_)
            | Error::Parse(_)
            | Error::GridUnderResolved { .. }
            | Error::UnsupportedPair(..)
            | Error::OutOfRange(_)
            | Error::Degree(_) => CliError::Usage(e.to_string()),
            _ => CliError::Runtime(e.to_string()),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn emit<T: Serialize>(
    output: &Output,
    record: &OutputRecord<T>,
    csv: impl FnOnce() -> hopf_modes::Result<String>,
) -> CliResult<()> {
    let text = match output.format {
        Format::Json => to_json(record)? + "\n",
        Format::Csv => csv()?,
    };
    match &output.out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::Runtime(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn index_json(i: &ModeIndex) -> Value {
    json!({ "L": i.l(), "mp": i.mp().to_string(), "mm": i.mm().to_string() })
}

fn strings<const N: usize>(v: [&str; N]) -> Vec<String> {
    v.iter().map(|s| s.to_string()).collect()
}

pub fn modes_list(l: u32, output: &Output) -> CliResult<()> {
    let scalar = enumerate_scalar(l);
    let coexact = if l >= 2 {
        enumerate_coexact(l)?
    } else {
        Vec::new()
    };
    let payload = json!({
        "scalar": scalar.iter().map(index_json).collect::<Vec<_>>(),
        "coexact": coexact.iter().map(|b| {
            let mut v = index_json(&b.index);
            v["family"] = json!(b.tag.to_string());
            v["norm_squared"] = json!(b.norm_squared());
            v
        }).collect::<Vec<_>>(),
    });
    let record = OutputRecord {
        command: "modes list".into(),
        parameters: json!({ "L": l }),
        payload,
        metadata: Metadata::new(BASIS_ORDER),
    };
    emit(output, &record, || {
        let mut rows: Vec<Vec<String>> = scalar
            .iter()
            .map(|i| {
                vec![
                    "scalar".into(),
                    "Phi".into(),
                    i.l().to_string(),
                    i.mp().to_string(),
                    i.mm().to_string(),
                    "1".into(),
                ]
            })
            .collect();
        rows.extend(coexact.iter().map(|b| {
            vec![
                "coexact".into(),
                b.tag.to_string(),
                b.index.l().to_string(),
                b.index.mp().to_string(),
                b.index.mm().to_string(),
                b.norm_squared().to_string(),
            ]
        }));
        csv_table(
            &strings(["kind", "family", "L", "mp", "mm", "norm_squared"]),
            &rows,
        )
    })
}

enum EvalTarget {
    Scalar(ModeIndex),
    Killing(Killing),
    Family(FamilyTag, ModeIndex),
}

fn eval_target(a: &EvalArgs) -> CliResult<EvalTarget> {
    let index = || -> CliResult<ModeIndex> {
        let missing =
            |f: &str| CliError::Usage(format!("--{f} is required for family {}", a.family));
        let l = a.l.ok_or_else(|| missing("L"))?;
        let mp = a.mp.ok_or_else(|| missing("mp"))?;
        let mm = a.mm.ok_or_else(|| missing("mm"))?;
        Ok(ModeIndex::from_halves(l, mp, mm)?)
    };
    Ok(match a.family.as_str() {
        "scalar" | "Phi" => EvalTarget::Scalar(index()?),
        "xi" => EvalTarget::Killing(Killing::Xi),
        "xip" | "xi'" => EvalTarget::Killing(Killing::XiPrime),
        other => EvalTarget::Family(other.parse()?, index()?),
    })
}

const ONE_FORM_BASIS: [&str; 3] = ["e_alpha", "e_theta", "e_phi"];

fn pairs(f: &PointForm) -> Vec<[f64; 2]> {
    f.components().iter().map(|z| pair(*z)).collect()
}

pub fn eval(a: &EvalArgs) -> CliResult<()> {
    let p = HopfPoint::new(a.alpha, a.theta, a.phi)?;
    let target = eval_target(a)?;
    let mut quantities: Vec<(&str, PointForm)> = Vec::new();
    let mut payload = json!({
        "family": a.family,
        "point": { "alpha": p.alpha, "theta": p.theta, "phi": p.phi },
    });
    match target {
        EvalTarget::Scalar(i) => {
            payload["index"] = index_json(&i);
            payload["degree"] = json!(0);
            quantities.push(("value", PointForm::scalar(scalar_mode_value(&i, &p)?)));
        }
        EvalTarget::Killing(kind) => {
            let w = kind.one_form(&p);
            payload["degree"] = json!(1);
            quantities.push(("form", w));
            if a.star_d {
                let jet = hopf_modes::exterior::FormJet::killing(kind, p, 1);
                quantities.push(("star_d", star_d(&jet)?.at_point()));
            }
        }
        EvalTarget::Family(tag, i) => {
            let w = mode(tag, &i, &p, 1)?;
            payload["index"] = index_json(&i);
            payload["degree"] = json!(1);
            quantities.push(("form", w.at_point()));
            if a.star_d {
                quantities.push(("star_d", star_d(&w)?.at_point()));
            }
            quantities.push(("delta", codifferential(&w)?.at_point()));
            if tag == FamilyTag::A {
                // delta d Phi = -Delta Phi = -lambda Phi
                let lambda = spectral_data(&i).lambda as f64;
                let expect = scalar_mode_value(&i, &p)? * Complex64::new(-lambda, 0.0);
                quantities.push(("minus_lambda_phi", PointForm::scalar(expect)));
            }
        }
    }
    for (name, f) in &quantities {
        payload[*name] = json!(pairs(f));
    }
    payload["basis"] = json!(if payload["degree"] == json!(0) {
        vec!["scalar"]
    } else {
        ONE_FORM_BASIS.to_vec()
    });
    let record = OutputRecord {
        command: "eval".into(),
        parameters: json!({
            "family": a.family,
            "L": a.l,
            "mp": a.mp.map(|h: HalfInt| h.to_string()),
            "mm": a.mm.map(|h: HalfInt| h.to_string()),
            "alpha": a.alpha, "theta": a.theta, "phi": a.phi,
            "star_d": a.star_d,
        }),
        payload,
        metadata: Metadata::new(BASIS_ORDER),
    };
    emit(&a.output, &record, || {
        let mut header = strings(["quantity", "component"]);
        header.extend(complex_columns("value"));
        let mut rows = Vec::new();
        for (name, f) in &quantities {
            let labels: &[&str] = if f.degree() == 0 {
                &["scalar"]
            } else {
                &ONE_FORM_BASIS
            };
            for (label, z) in labels.iter().zip(f.components()) {
                let mut row = vec![name.to_string(), label.to_string()];
                row.extend(complex_cells(*z));
                rows.push(row);
            }
        }
        csv_table(&header, &rows)
    })
}

pub fn gram(a: &GramArgs, exec: Execution) -> CliResult<()> {
    let grid_l = a.grid_lmax.unwrap_or(a.l);
    let grid = build_grid(grid_l);
    let modes = if a.family == "all" {
        basis_modes(a.l)
    } else {
        family_modes(a.family.parse()?, a.l)?
    };
    grid.require(a.l)?;
    let cmp = mode_gram(&modes, &grid, a.normalized, exec)?;
    let payload = GramPayload::new(&cmp, a.normalized);
    let record = OutputRecord {
        command: "gram".into(),
        parameters: json!({
            "family": a.family,
            "L": a.l,
            "grid_lmax": grid_l,
            "normalized": a.normalized,
        }),
        payload,
        metadata: Metadata::new(BASIS_ORDER)
            .with_grid(&grid)
            .with_tolerance(verify::tol::CLOSED_FORM_GRAM),
    };
    emit(&a.output, &record, || gram_csv(&record.payload))
}

fn report_csv(r: &Report) -> hopf_modes::Result<String> {
    let rows: Vec<Vec<String>> = r
        .checks
        .iter()
        .map(|c| {
            vec![
                c.name.clone(),
                c.relation.clone(),
                c.cases.to_string(),
                fmt_f64(c.measured),
                fmt_f64(c.threshold),
                match c.bound {
                    verify::Bound::Max => "max".into(),
                    verify::Bound::Min => "min".into(),
                },
                c.passed.to_string(),
            ]
        })
        .collect();
    csv_table(
        &strings([
            "name",
            "relation",
            "cases",
            "measured",
            "threshold",
            "bound",
            "passed",
        ]),
        &rows,
    )
}

pub fn verify(a: &VerifyArgs, exec: Execution) -> CliResult<()> {
    let cfg = VerifyConfig {
        l_max: a.l_max,
        seed: a.seed,
        points: a.points,
        fd_points: a.fd_points,
        lattice: a.lattice,
        exec,
    };
    let report = verify::run(a.suite, &cfg)?;
    for c in &report.checks {
        let op = match c.bound {
            verify::Bound::Max => "<=",
            verify::Bound::Min => ">=",
        };
        eprintln!(
            "{} {:<28} {:<52} {:.3e} {op} {:.1e}",
            if c.passed { "PASS" } else { "FAIL" },
            c.name,
            c.relation,
            c.measured,
            c.threshold
        );
    }
    let record = OutputRecord {
        command: "verify".into(),
        parameters: json!({
            "suite": a.suite,
            "L_max": a.l_max,
            "seed": a.seed,
            "points": a.points,
            "fd_points": a.fd_points,
            "lattice": a.lattice,
        }),
        payload: json!({ "passed": report.passed(), "checks": report.checks }),
        metadata: Metadata::new(BASIS_ORDER),
    };
    emit(&a.output, &record, || report_csv(&report))?;
    if report.passed() {
        Ok(())
    } else {
        let names: Vec<&str> = report.failures().map(|c| c.name.as_str()).collect();
        Err(CliError::Failed(format!(
            "failed checks: {}",
            names.join(", ")
        )))
    }
}

pub fn dims(a: &DimsArgs) -> CliResult<()> {
    let mut rows = Vec::new();
    for l in 0..=a.l_max {
        let exact = if l >= 1 { dimension_exact(l)? } else { 0 };
        let coexact = if l >= 2 { dimension_coexact(l)? } else { 0 };
        let enumerated = if l >= 2 {
            enumerate_coexact(l)?.len()
        } else {
            0
        };
        rows.push(json!({
            "L": l,
            "scalar": enumerate_scalar(l).len(),
            "exact": exact,
            "coexact": coexact,
            "enumerated_coexact": enumerated,
            "exact_eigenvalue": -(l as i64) * (l as i64 + 2),
            "coexact_eigenvalue": -(l as i64).pow(2),
        }));
    }
    let record = OutputRecord {
        command: "dims".into(),
        parameters: json!({ "L_max": a.l_max }),
        payload: json!({ "rows": rows }),
        metadata: Metadata::new(BASIS_ORDER),
    };
    let cols = [
        "L",
        "scalar",
        "exact",
        "coexact",
        "enumerated_coexact",
        "exact_eigenvalue",
        "coexact_eigenvalue",
    ];
    emit(&a.output, &record, || {
        let table: Vec<Vec<String>> = rows
            .iter()
            .map(|r| cols.iter().map(|c| r[*c].to_string()).collect())
            .collect();
        csv_table(&strings(cols), &table)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes() {
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::Failed("x".into()).exit_code(), 3);
        assert_eq!(CliError::Runtime("x".into()).exit_code(), 1);
    }

    #[test]
    fn library_errors_map_to_usage() {
        let e: CliError = Error::GridUnderResolved {
            grid: 1,
            requested: 2,
        }
        .into();
        assert_eq!(e.exit_code(), 2);
        let e: CliError = Error::InvalidIndex("m+".into()).into();
        assert_eq!(e.exit_code(), 2);
    }
}
