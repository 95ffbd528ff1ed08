//! Verification suites. Each check evaluates one relation over a set of
//! modes and points and compares the worst residual with a fixed
//! tolerance.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::{
    codifferential, d, hodge, hodge_jet, interior, laplace_de_rham_oneform, parity, parity_jet,
    star_d, wedge, FormJet, PointForm,
};
use crate::fd_oracle::{fd_delta, fd_laplace, fd_star_d, FdConfig, Scheme};
use crate::geometry::{HopfPoint, Killing};
use crate::jet::{Jet, MAX_ORDER};
use crate::mode_families::{
    closed_form_gram, curl_eigenvalue, dimension_coexact, dimension_exact, enumerate_basis,
    enumerate_coexact, is_null, mode, mode_via_double_curl, CoexactBasisIndex, FamilyTag,
};
use crate::quadrature::{build_grid, gram, sample, GramMatrix, QuadratureGrid};
use crate::sampling::{lattice, random_points, ANALYTIC_MARGIN, FD_MARGIN};
use crate::scalar_modes::{
    enumerate_scalar, enumerate_scalar_up_to, scalar_mode_value, spectral_data, ModeIndex,
};

/// Pinned tolerances.
pub mod tol {
    pub const SCALAR_GRAM: f64 = 1e-12;
    pub const KILLING: f64 = 1e-13;
    pub const CURL_SPECTRUM: f64 = 1e-9;
    pub const LAPLACE: f64 = 1e-8;
    pub const FD_LAPLACE: f64 = 1e-4;
    pub const CLOSED_FORM_GRAM: f64 = 1e-9;
    pub const VANISHING: f64 = 1e-12;
    pub const BASIS_GRAM: f64 = 1e-9;
    pub const REFINEMENT: f64 = 1e-12;
    pub const IDENTITY: f64 = 1e-12;
    pub const COEXACT: f64 = 1e-10;
    pub const C_TWO_WAYS: f64 = 1e-10;
    pub const ORACLE: f64 = 1e-5;
    pub const MIN_FD_ORDER: f64 = 1.9;
    /// Accepted error ratio under step halving for the second-order scheme.
    pub const FD_RATIO: (f64, f64) = (3.5, 4.5);
}

/// Step used by the oracle comparisons.
pub const FD_STEP: f64 = 1e-4;

/// Coarse step of the convergence-order measurement; the fine step is half.
pub const FD_ORDER_STEP: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Bound {
    /// Passes when the measured value is at most the threshold.
    Max,
    /// Passes when the measured value is at least the threshold.
    Min,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub relation: String,
    /// Number of (mode, point) or (mode, mode) cases evaluated.
    pub cases: usize,
    pub measured: f64,
    pub threshold: f64,
    pub bound: Bound,
    pub passed: bool,
}

impl Check {
    pub fn at_most(
        name: impl Into<String>,
        relation: impl Into<String>,
        cases: usize,
        measured: f64,
        threshold: f64,
    ) -> Self {
        Check {
            name: name.into(),
            relation: relation.into(),
            cases,
            measured,
            threshold,
            bound: Bound::Max,
            // NaN fails
            passed: measured <= threshold,
        }
    }

    pub fn at_least(
        name: impl Into<String>,
        relation: impl Into<String>,
        cases: usize,
        measured: f64,
        threshold: f64,
    ) -> Self {
        Check {
            name: name.into(),
            relation: relation.into(),
            cases,
            measured,
            threshold,
            bound: Bound::Min,
            passed: measured >= threshold,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub checks: Vec<Check>,
}

impl Report {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    fn extend(&mut self, other: Report) {
        self.checks.extend(other.checks);
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Eigen,
    Identities,
    Oracle,
    Counts,
    Gram,
    All,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Eigen,
        Suite::Identities,
        Suite::Oracle,
        Suite::Counts,
        Suite::Gram,
        Suite::All,
    ];
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Eigen => "eigen",
            Suite::Identities => "identities",
            Suite::Oracle => "oracle",
            Suite::Counts => "counts",
            Suite::Gram => "gram",
            Suite::All => "all",
        })
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|v| v.to_string() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite '{s}'")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub l_max: u32,
    pub seed: u64,
    /// Random points per mode for analytic checks.
    pub points: usize,
    /// Random points per mode for finite-difference checks.
    pub fd_points: usize,
    /// Side of the lattice used for the vanishing-mode check.
    pub lattice: usize,
    #[serde(skip)]
    pub exec: Execution,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        VerifyConfig {
            l_max: 4,
            seed: 1,
            points: 100,
            fd_points: 20,
            lattice: 20,
            exec: Execution::default(),
        }
    }
}

/// Worst absolute residual together with the largest reference magnitude
/// seen over the same points.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Residual {
    pub abs: f64,
    pub scale: f64,
}

impl Residual {
    /// `abs / scale`, or `abs` when the reference vanishes identically.
    pub fn relative(&self) -> f64 {
        if self.scale > 0.0 {
            self.abs / self.scale
        } else {
            self.abs
        }
    }

    fn absorb(&mut self, abs: f64, scale: f64) {
        self.abs = nan_max(self.abs, abs);
        self.scale = self.scale.max(scale);
    }

    fn merge(self, other: Residual) -> Residual {
        Residual {
            abs: nan_max(self.abs, other.abs),
            scale: self.scale.max(other.scale),
        }
    }
}

/// `max` that propagates NaN so a broken evaluation can never pass.
fn nan_max(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.max(b)
    }
}

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn accumulate<F>(points: &[HopfPoint], f: F) -> Result<Residual>
where
    F: Fn(&HopfPoint) -> Result<(f64, f64)>,
{
    let mut r = Residual::default();
    for p in points {
        let (abs, scale) = f(p)?;
        r.absorb(abs, scale);
    }
    Ok(r)
}

fn unsupported(tag: FamilyTag, what: &str) -> Error {
    Error::UnsupportedPair(tag.to_string(), what.into())
}

/// Largest component of `*d w - sigma w` over both Killing forms, absolute.
pub fn killing_residual(points: &[HopfPoint]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for kind in [Killing::Xi, Killing::XiPrime] {
        for p in points {
            let w = FormJet::killing(kind, *p, 1);
            let r = star_d(&w)?.sub(&w.truncate(0).scale(c(kind.curl_eigenvalue())))?;
            worst = nan_max(worst, r.at_point().max_abs());
        }
    }
    Ok(worst)
}

/// `*d w - s w` for `E`, `E'`, `F` with their curl eigenvalue `s`.
pub fn curl_eigen_residual(
    tag: FamilyTag,
    i: &ModeIndex,
    points: &[HopfPoint],
) -> Result<Residual> {
    let s = curl_eigenvalue(tag, i.l()).ok_or_else(|| unsupported(tag, "*d eigenvalue"))?;
    accumulate(points, |p| {
        let w = mode(tag, i, p, 1)?;
        let lhs = star_d(&w)?.at_point();
        let rhs = w.at_point().scale(c(s));
        Ok((lhs.sub(&rhs)?.max_abs(), lhs.max_abs().max(rhs.max_abs())))
    })
}

/// `*d C - (-lambda B + sigma C)` with `sigma = -2` for `C` and `+2` for
/// `C'`.
pub fn curl_of_c_residual(tag: FamilyTag, i: &ModeIndex, points: &[HopfPoint]) -> Result<Residual> {
    let (b_tag, kind) = match tag {
        FamilyTag::C => (FamilyTag::B, Killing::Xi),
        FamilyTag::CPrime => (FamilyTag::BPrime, Killing::XiPrime),
        _ => return Err(unsupported(tag, "*dC relation")),
    };
    let lambda = spectral_data(i).lambda as f64;
    accumulate(points, |p| {
        let cc = mode(tag, i, p, 1)?;
        let b = mode(b_tag, i, p, 0)?.at_point();
        let lhs = star_d(&cc)?.at_point();
        let rhs = b
            .scale(c(-lambda))
            .add(&cc.at_point().scale(c(kind.curl_eigenvalue())))?;
        Ok((lhs.sub(&rhs)?.max_abs(), lhs.max_abs().max(rhs.max_abs())))
    })
}

/// Eigenvalue of the Laplace-de Rham operator on a family: `lambda` on
/// exact modes, `-s^2` on curl eigenfamilies.
pub fn laplace_eigenvalue(tag: FamilyTag, i: &ModeIndex) -> Option<f64> {
    if tag.is_exact() {
        return Some(spectral_data(i).lambda as f64);
    }
    curl_eigenvalue(tag, i.l()).map(|s| -s * s)
}

/// Analytic `Delta w - ev w`.
pub fn laplace_residual(tag: FamilyTag, i: &ModeIndex, points: &[HopfPoint]) -> Result<Residual> {
    let ev = laplace_eigenvalue(tag, i).ok_or_else(|| unsupported(tag, "Laplace eigenvalue"))?;
    accumulate(points, |p| {
        let w = mode(tag, i, p, MAX_ORDER - 1)?;
        let lhs = laplace_de_rham_oneform(&w)?.at_point();
        let rhs = w.at_point().scale(c(ev));
        Ok((lhs.sub(&rhs)?.max_abs(), lhs.max_abs().max(rhs.max_abs())))
    })
}

fn mode_closure(tag: FamilyTag, i: ModeIndex) -> impl Fn(&HopfPoint) -> Result<PointForm> {
    move |q: &HopfPoint| Ok(mode(tag, &i, q, 0)?.at_point())
}

/// Finite-difference `Delta w` against the analytic eigenvalue relation.
pub fn fd_laplace_residual(
    tag: FamilyTag,
    i: &ModeIndex,
    points: &[HopfPoint],
    cfg: &FdConfig,
) -> Result<Residual> {
    let ev = laplace_eigenvalue(tag, i).ok_or_else(|| unsupported(tag, "Laplace eigenvalue"))?;
    let w = mode_closure(tag, *i);
    accumulate(points, |p| {
        let lhs = fd_laplace(&w, p, cfg)?;
        let rhs = w(p)?.scale(c(ev));
        Ok((lhs.sub(&rhs)?.max_abs(), rhs.max_abs()))
    })
}

/// `delta w` relative to the size of `w`.
pub fn coexact_residual(tag: FamilyTag, i: &ModeIndex, points: &[HopfPoint]) -> Result<Residual> {
    accumulate(points, |p| {
        let w = mode(tag, i, p, 1)?;
        Ok((
            codifferential(&w)?.at_point().max_abs(),
            w.at_point().max_abs(),
        ))
    })
}

/// Closed expansion of `C` against `*d B` by direct differentiation,
/// compared on values and first derivatives.
pub fn c_two_ways_residual(
    tag: FamilyTag,
    i: &ModeIndex,
    points: &[HopfPoint],
) -> Result<Residual> {
    accumulate(points, |p| {
        let closed = mode(tag, i, p, 1)?;
        let direct = mode_via_double_curl(tag, i, p, 1)?;
        Ok((closed.sub(&direct)?.max_abs_frame(), closed.max_abs_frame()))
    })
}

/// Largest component of a mode over the points.
pub fn max_component(tag: FamilyTag, i: &ModeIndex, points: &[HopfPoint]) -> Result<f64> {
    let mut worst: f64 = 0.0;
    for p in points {
        worst = nan_max(worst, mode(tag, i, p, 0)?.at_point().max_abs());
    }
    Ok(worst)
}

/// Analytic against finite-difference `*d` and `delta`.
pub fn oracle_residuals(
    tag: FamilyTag,
    i: &ModeIndex,
    points: &[HopfPoint],
    cfg: &FdConfig,
) -> Result<(Residual, Residual)> {
    let w = mode_closure(tag, *i);
    let curl = accumulate(points, |p| {
        let jet = mode(tag, i, p, 1)?;
        let exact = star_d(&jet)?.at_point();
        let fd = fd_star_d(&w, p, cfg)?;
        Ok((
            fd.sub(&exact)?.max_abs(),
            exact.max_abs().max(jet.at_point().max_abs()),
        ))
    })?;
    let delta = accumulate(points, |p| {
        let jet = mode(tag, i, p, 1)?;
        let exact = codifferential(&jet)?.at_point();
        let fd = PointForm::scalar(fd_delta(&w, p, cfg)?);
        Ok((
            fd.sub(&exact)?.max_abs(),
            exact.max_abs().max(jet.at_point().max_abs()),
        ))
    })?;
    Ok((curl, delta))
}

/// Measured convergence order of the second-order scheme under step
/// halving, `(order, ratio)`. Exact modes are probed through `delta`,
/// co-exact ones through `*d`, each summed over the points.
pub fn fd_convergence(
    tag: FamilyTag,
    i: &ModeIndex,
    points: &[HopfPoint],
    h: f64,
) -> Result<(f64, f64)> {
    let w = mode_closure(tag, *i);
    let error = |h: f64| -> Result<f64> {
        let cfg = FdConfig::uniform(h, Scheme::Central2);
        let mut total = 0.0;
        for p in points {
            let jet = mode(tag, i, p, 1)?;
            total += if tag.is_exact() {
                (fd_delta(&w, p, &cfg)? - codifferential(&jet)?.at_point().components()[0]).norm()
            } else {
                fd_star_d(&w, p, &cfg)?
                    .sub(&star_d(&jet)?.at_point())?
                    .max_abs()
            };
        }
        Ok(total)
    };
    let ratio = error(h)? / error(h / 2.0)?;
    Ok((ratio.log2(), ratio))
}

/// Outcome of comparing a quadrature Gram matrix with its closed form.
#[derive(Clone, Debug, PartialEq)]
pub struct GramComparison {
    pub modes: Vec<(FamilyTag, ModeIndex)>,
    pub numeric: GramMatrix,
    pub closed_form: GramMatrix,
}

impl GramComparison {
    pub fn max_abs_deviation(&self) -> f64 {
        self.numeric.max_abs_deviation(&self.closed_form)
    }

    /// Entrywise `|numeric - closed| / max(|closed|, 1)`.
    pub fn max_rel_deviation(&self) -> f64 {
        self.numeric
            .data
            .iter()
            .zip(&self.closed_form.data)
            .map(|(a, b)| (a - b).norm() / b.norm().max(1.0))
            .fold(0.0, nan_max)
    }

    pub fn labels(&self) -> Vec<String> {
        self.modes.iter().map(|(t, i)| format!("{t}{i}")).collect()
    }
}

/// Samples every mode on the grid; `normalized` divides by the exact
/// closed-form norm.
pub fn sample_modes(
    modes: &[(FamilyTag, ModeIndex)],
    grid: &QuadratureGrid,
    normalized: bool,
    exec: Execution,
) -> Result<Vec<crate::quadrature::SampledField>> {
    let l_top = modes.iter().map(|(_, i)| i.l()).max().unwrap_or(0);
    grid.require(l_top)?;
    modes
        .iter()
        .map(|(tag, i)| {
            let scale = if normalized {
                1.0 / closed_norm(*tag, i)?
            } else {
                1.0
            };
            sample(grid, exec, |p| {
                Ok(mode(*tag, i, p, 0)?.at_point().scale(c(scale)))
            })
        })
        .collect()
}

fn closed_norm(tag: FamilyTag, i: &ModeIndex) -> Result<f64> {
    let n2 = closed_form_gram(tag, tag, i, i)?;
    if n2 <= 0.0 {
        return Err(Error::OutOfRange(format!(
            "{tag}{i} is the null form and cannot be normalized"
        )));
    }
    Ok(n2.sqrt())
}

/// Quadrature Gram of a mode list next to its closed form.
pub fn mode_gram(
    modes: &[(FamilyTag, ModeIndex)],
    grid: &QuadratureGrid,
    normalized: bool,
    exec: Execution,
) -> Result<GramComparison> {
    let fields = sample_modes(modes, grid, normalized, exec)?;
    let numeric = gram(&fields, grid, exec);
    let n = modes.len();
    let mut closed = Vec::with_capacity(n * n);
    for (a, i) in modes {
        for (b, j) in modes {
            let mut v = closed_form_gram(*a, *b, i, j)?;
            if normalized && v != 0.0 {
                v /= closed_norm(*a, i)? * closed_norm(*b, j)?;
            }
            closed.push(c(v));
        }
    }
    Ok(GramComparison {
        modes: modes.to_vec(),
        numeric,
        closed_form: GramMatrix { n, data: closed },
    })
}

/// Modes of one family at level `L`: the co-exact basis for `E`, `E'`,
/// every scalar index otherwise.
pub fn family_modes(tag: FamilyTag, l: u32) -> Result<Vec<(FamilyTag, ModeIndex)>> {
    Ok(match tag {
        FamilyTag::E | FamilyTag::EPrime => enumerate_coexact(l)?
            .into_iter()
            .filter(|b| b.tag == tag)
            .map(|b| (b.tag, b.index))
            .collect(),
        _ => enumerate_scalar(l).into_iter().map(|i| (tag, i)).collect(),
    })
}

/// The complete basis `{A} U {E} U {E'}` at level `L`.
pub fn basis_modes(l: u32) -> Vec<(FamilyTag, ModeIndex)> {
    enumerate_basis(l)
        .iter()
        .map(|b| (b.tag(), *b.index()))
        .collect()
}

/// Gram matrix of all scalar modes with `L <= l_max` against the identity.
pub fn scalar_gram_deviation(l_max: u32, exec: Execution) -> Result<f64> {
    let grid = build_grid(l_max);
    let modes = enumerate_scalar_up_to(l_max);
    let fields = modes
        .iter()
        .map(|i| {
            sample(&grid, exec, |p| {
                Ok(PointForm::scalar(scalar_mode_value(i, p)?))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let g = gram(&fields, &grid, exec);
    Ok(g.max_abs_deviation(&GramMatrix::identity(g.n)))
}

/// Pairs reproduced in closed form for each scalar index.
pub const CLOSED_FORM_PAIRS: [(FamilyTag, FamilyTag); 13] = {
    use FamilyTag::*;
    [
        (A, A),
        (B, B),
        (B, C),
        (C, B),
        (C, C),
        (BPrime, BPrime),
        (BPrime, CPrime),
        (CPrime, CPrime),
        (E, E),
        (EPrime, EPrime),
        (F, F),
        (A, E),
        (E, EPrime),
    ]
};

/// Worst relative deviation between quadrature and the closed forms over
/// [`CLOSED_FORM_PAIRS`] for one index.
pub fn closed_form_deviation(i: &ModeIndex, grid: &QuadratureGrid, exec: Execution) -> Result<f64> {
    let tags: Vec<FamilyTag> = CLOSED_FORM_PAIRS
        .iter()
        .flat_map(|(a, b)| [*a, *b])
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let modes: Vec<_> = tags.iter().map(|t| (*t, *i)).collect();
    let fields = sample_modes(&modes, grid, false, exec)?;
    let nodes = grid.nodes();
    let pos = |t: FamilyTag| tags.iter().position(|x| *x == t).expect("tag sampled");
    let mut worst: f64 = 0.0;
    for (a, b) in CLOSED_FORM_PAIRS {
        let q = crate::quadrature::inner_sampled(&fields[pos(a)], &fields[pos(b)], &nodes);
        let closed = closed_form_gram(a, b, i, i)?;
        worst = nan_max(worst, (q - c(closed)).norm() / closed.abs().max(1.0));
    }
    Ok(worst)
}

fn non_null(tag: FamilyTag, levels: impl Iterator<Item = u32>) -> Vec<ModeIndex> {
    levels
        .flat_map(enumerate_scalar)
        .filter(|i| !is_null(tag, i))
        .collect()
}

/// Candidates whose closed-form norm vanishes: the Bochner case, the
/// boundary values `2|m| = L` and every `L = 1` candidate.
pub fn null_candidates(l_max: u32) -> Vec<(FamilyTag, ModeIndex)> {
    let mut out = Vec::new();
    for tag in [FamilyTag::E, FamilyTag::EPrime] {
        for i in enumerate_scalar_up_to(l_max) {
            if is_null(tag, &i) {
                out.push((tag, i));
            }
        }
    }
    out
}

fn worst_over<T, F>(exec: Execution, items: &[T], f: F) -> Result<Residual>
where
    T: Sync,
    F: Fn(&T) -> Result<Residual> + Sync + Send,
{
    exec.map(items, f)
        .into_iter()
        .try_fold(Residual::default(), |acc, r| Ok(acc.merge(r?)))
}

fn relation_name(tag: FamilyTag) -> &'static str {
    match tag {
        FamilyTag::E => "*dE = L E",
        FamilyTag::EPrime => "*dE' = -L E'",
        FamilyTag::F => "*dF = -(L+2) F",
        _ => "",
    }
}

pub fn eigen_suite(cfg: &VerifyConfig) -> Result<Report> {
    let pts = random_points(cfg.points, cfg.seed, ANALYTIC_MARGIN);
    let mut r = Report::default();

    let k = killing_residual(&pts)?;
    r.checks.push(Check::at_most(
        "killing",
        "*d xi~ = -2 xi~, *d xi'~ = +2 xi'~",
        2 * pts.len(),
        k,
        tol::KILLING,
    ));

    let curl_levels = || 2..=cfg.l_max;
    for tag in [FamilyTag::E, FamilyTag::EPrime, FamilyTag::F] {
        let modes = non_null(tag, curl_levels());
        let res = worst_over(cfg.exec, &modes, |i| curl_eigen_residual(tag, i, &pts))?;
        r.checks.push(Check::at_most(
            format!("curl {tag}"),
            relation_name(tag),
            modes.len() * pts.len(),
            res.relative(),
            tol::CURL_SPECTRUM,
        ));
    }

    for (tag, rel) in [
        (FamilyTag::C, "*dC = -lambda B - 2 C"),
        (FamilyTag::CPrime, "*dC' = -lambda B' + 2 C'"),
    ] {
        let modes = non_null(tag, 1..=cfg.l_max);
        let res = worst_over(cfg.exec, &modes, |i| curl_of_c_residual(tag, i, &pts))?;
        r.checks.push(Check::at_most(
            format!("curl {tag}"),
            rel,
            modes.len() * pts.len(),
            res.relative(),
            tol::CURL_SPECTRUM,
        ));
    }

    for (tag, rel) in [
        (FamilyTag::A, "Delta A = lambda A"),
        (FamilyTag::E, "Delta E = -L^2 E"),
        (FamilyTag::EPrime, "Delta E' = -L^2 E'"),
        (FamilyTag::F, "Delta F = -(L+2)^2 F"),
    ] {
        let modes = non_null(tag, 1..=cfg.l_max);
        let res = worst_over(cfg.exec, &modes, |i| laplace_residual(tag, i, &pts))?;
        r.checks.push(Check::at_most(
            format!("laplace {tag}"),
            rel,
            modes.len() * pts.len(),
            res.relative(),
            tol::LAPLACE,
        ));
    }

    for tag in FamilyTag::ALL.into_iter().filter(|t| !t.is_exact()) {
        let modes = non_null(tag, 0..=cfg.l_max);
        let res = worst_over(cfg.exec, &modes, |i| coexact_residual(tag, i, &pts))?;
        r.checks.push(Check::at_most(
            format!("coexact {tag}"),
            format!("delta {tag} = 0"),
            modes.len() * pts.len(),
            res.relative(),
            tol::COEXACT,
        ));
    }

    for tag in [FamilyTag::C, FamilyTag::CPrime] {
        let modes = non_null(tag, 0..=cfg.l_max);
        let res = worst_over(cfg.exec, &modes, |i| c_two_ways_residual(tag, i, &pts))?;
        r.checks.push(Check::at_most(
            format!("closed {tag}"),
            format!(
                "closed expansion of {tag} = *d {}",
                if tag == FamilyTag::C { "B" } else { "B'" }
            ),
            modes.len() * pts.len(),
            res.relative(),
            tol::C_TWO_WAYS,
        ));
    }

    let grid_pts = lattice(cfg.lattice);
    let nulls = null_candidates(cfg.l_max);
    let worst = worst_over(cfg.exec, &nulls, |(tag, i)| {
        Ok(Residual {
            abs: max_component(*tag, i, &grid_pts)?,
            scale: 0.0,
        })
    })?;
    r.checks.push(Check::at_most(
        "vanishing",
        "E at 2|m+| = L, E' at 2|m-| = L, L in {0, 1} are the null form",
        nulls.len() * grid_pts.len(),
        worst.abs,
        tol::VANISHING,
    ));
    Ok(r)
}

pub fn oracle_suite(cfg: &VerifyConfig) -> Result<Report> {
    let pts = random_points(cfg.fd_points, cfg.seed, FD_MARGIN);
    let fd = FdConfig::uniform(FD_STEP, Scheme::Central2);
    let mut r = Report::default();
    for tag in FamilyTag::ALL {
        let modes = non_null(tag, 0..=cfg.l_max);
        let both = cfg
            .exec
            .map(&modes, |i| oracle_residuals(tag, i, &pts, &fd))
            .into_iter()
            .collect::<Result<Vec<_>>>()?;
        let (curl, delta) = both.into_iter().fold(
            (Residual::default(), Residual::default()),
            |(a, b), (x, y)| (a.merge(x), b.merge(y)),
        );
        let cases = modes.len() * pts.len();
        r.checks.push(Check::at_most(
            format!("oracle *d {tag}"),
            "analytic *d = finite-difference *d",
            cases,
            curl.relative(),
            tol::ORACLE,
        ));
        r.checks.push(Check::at_most(
            format!("oracle delta {tag}"),
            "analytic delta = finite-difference delta",
            cases,
            delta.relative(),
            tol::ORACLE,
        ));
    }

    for tag in [FamilyTag::E, FamilyTag::EPrime] {
        let modes = non_null(tag, 2..=cfg.l_max);
        let res = worst_over(cfg.exec, &modes, |i| fd_laplace_residual(tag, i, &pts, &fd))?;
        r.checks.push(Check::at_most(
            format!("oracle laplace {tag}"),
            format!("finite-difference Delta {tag} = -L^2 {tag}"),
            modes.len() * pts.len(),
            res.relative(),
            tol::FD_LAPLACE,
        ));
    }

    r.extend(convergence_checks(cfg.seed, cfg.exec)?);
    Ok(r)
}

/// Index used for the convergence-order measurement; non-null in every
/// family.
pub fn convergence_probe() -> ModeIndex {
    ModeIndex::new(3, 1, -1).expect("valid index")
}

pub fn convergence_checks(seed: u64, exec: Execution) -> Result<Report> {
    let pts = random_points(5, seed, FD_MARGIN);
    let probe = convergence_probe();
    let measured = exec
        .map(&FamilyTag::ALL, |tag| {
            fd_convergence(*tag, &probe, &pts, FD_ORDER_STEP)
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let mut r = Report::default();
    for (tag, (order, ratio)) in FamilyTag::ALL.iter().zip(measured) {
        r.checks.push(Check::at_least(
            format!("fd order {tag}"),
            format!("second-order scheme on {tag}{probe}"),
            pts.len(),
            order,
            tol::MIN_FD_ORDER,
        ));
        let (lo, hi) = tol::FD_RATIO;
        let mid = (lo + hi) / 2.0;
        r.checks.push(Check::at_most(
            format!("fd ratio {tag}"),
            format!("|error(h)/error(h/2) - {mid}| on {tag}{probe}"),
            pts.len(),
            (ratio - mid).abs(),
            (hi - lo) / 2.0,
        ));
    }
    Ok(r)
}

pub fn counts_suite(cfg: &VerifyConfig) -> Result<Report> {
    let mut r = Report::default();
    let mut scalar_bad = 0usize;
    let mut coexact_bad = 0usize;
    let mut completeness_bad = 0usize;
    for l in 0..=cfg.l_max {
        let n = enumerate_scalar(l).len() as u64;
        if n != (l as u64 + 1).pow(2) || (l >= 1 && dimension_exact(l)? != n) {
            scalar_bad += 1;
        }
        if l < 2 {
            continue;
        }
        let basis = enumerate_coexact(l)?;
        let expect = 2 * (l as u64 - 1) * (l as u64 + 1);
        if basis.len() as u64 != expect || dimension_coexact(l)? != expect {
            coexact_bad += 1;
        }
        let listed: BTreeSet<CoexactBasisIndex> = basis.into_iter().collect();
        for tag in [FamilyTag::E, FamilyTag::EPrime] {
            for i in enumerate_scalar(l) {
                let in_basis = listed.contains(&CoexactBasisIndex { tag, index: i });
                if in_basis == is_null(tag, &i) {
                    completeness_bad += 1;
                }
            }
        }
    }
    let levels = cfg.l_max as usize + 1;
    r.checks.push(Check::at_most(
        "count exact",
        "#scalar indices = dim exact = (L+1)^2",
        levels,
        scalar_bad as f64,
        0.0,
    ));
    r.checks.push(Check::at_most(
        "count coexact",
        "#co-exact basis = 2(L-1)(L+1), L >= 2",
        levels.saturating_sub(2),
        coexact_bad as f64,
        0.0,
    ));
    r.checks.push(Check::at_most(
        "completeness",
        "co-exact basis = all E, E' candidates with nonzero norm",
        levels,
        completeness_bad as f64,
        0.0,
    ));
    Ok(r)
}

pub fn gram_suite(cfg: &VerifyConfig) -> Result<Report> {
    let mut r = Report::default();
    let n_scalar = enumerate_scalar_up_to(cfg.l_max).len();
    r.checks.push(Check::at_most(
        "scalar gram",
        "<Phi_i, Phi_j> = delta_ij",
        n_scalar * n_scalar,
        scalar_gram_deviation(cfg.l_max, cfg.exec)?,
        tol::SCALAR_GRAM,
    ));

    let mut closed = 0.0f64;
    let mut closed_cases = 0;
    let mut basis = 0.0f64;
    let mut basis_cases = 0;
    for l in 1..=cfg.l_max {
        let grid = build_grid(l);
        for i in enumerate_scalar(l) {
            closed = nan_max(closed, closed_form_deviation(&i, &grid, cfg.exec)?);
            closed_cases += CLOSED_FORM_PAIRS.len();
        }
        let modes = basis_modes(l);
        basis = nan_max(
            basis,
            mode_gram(&modes, &grid, true, cfg.exec)?.max_abs_deviation(),
        );
        basis_cases += modes.len() * modes.len();
    }
    r.checks.push(Check::at_most(
        "closed-form gram",
        "quadrature = closed-form scalar products of A, B, C, E, F and primes",
        closed_cases,
        closed,
        tol::CLOSED_FORM_GRAM,
    ));
    r.checks.push(Check::at_most(
        "basis gram",
        "normalized {A, E, E'} at fixed L is orthonormal",
        basis_cases,
        basis,
        tol::BASIS_GRAM,
    ));

    let l = cfg.l_max.clamp(1, 3);
    let grid = build_grid(l);
    let modes = basis_modes(l);
    let coarse = mode_gram(&modes, &grid, true, cfg.exec)?;
    let fine = mode_gram(&modes, &grid.refined(), true, cfg.exec)?;
    r.checks.push(Check::at_most(
        "refinement",
        format!("Gram at L = {l} unchanged by doubling every node count"),
        modes.len() * modes.len(),
        coarse.numeric.max_abs_deviation(&fine.numeric),
        tol::REFINEMENT,
    ));
    Ok(r)
}

/// A random form of the given degree with components drawn from the
/// unit square.
fn random_point_form<R: rand::Rng>(rng: &mut R, degree: usize) -> PointForm {
    let n = [1, 3, 3, 1][degree];
    let v: Vec<Complex64> = (0..n)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    PointForm::new(degree, &v).expect("component count matches degree")
}

fn random_vector<R: rand::Rng>(rng: &mut R) -> [Complex64; 3] {
    *random_point_form(rng, 1).components3()
}

/// A form whose coordinate components are jets with random Taylor data.
fn random_form_jet<R: rand::Rng>(
    rng: &mut R,
    p: &HopfPoint,
    degree: usize,
    order: usize,
) -> FormJet {
    let n = [1, 3, 3, 1][degree];
    let comps: Vec<Jet> = (0..n)
        .map(|_| {
            let mut table = [[[Complex64::new(0.0, 0.0); 4]; 4]; 4];
            for a in table.iter_mut().flatten().flatten() {
                *a = Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            }
            Jet::from_fn(order, |[i, j, k]| table[i][j][k])
        })
        .collect();
    FormJet::new(*p, degree, &comps).expect("component count matches degree")
}

fn diff_ratio(lhs: &PointForm, rhs: &PointForm) -> Result<f64> {
    let scale = lhs.max_abs().max(rhs.max_abs()).max(1.0);
    Ok(lhs.sub(rhs)?.max_abs() / scale)
}

/// Each identity with its worst relative residual over randomized forms
/// and jets at the given points.
pub fn identity_residuals(points: &[HopfPoint], seed: u64) -> Result<Vec<(&'static str, f64)>> {
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 10];
    for p in points {
        for deg in 0..=3 {
            let f = random_point_form(&mut rng, deg);
            let v = random_vector(&mut rng);
            let vf = PointForm::one(v);

            // ** = 1
            worst[0] = nan_max(worst[0], diff_ratio(&hodge(&hodge(&f)), &f)?);
            // * eta = - eta *
            let lhs = hodge(&parity(&f));
            let rhs = parity(&hodge(&f)).scale(c(-1.0));
            worst[1] = nan_max(worst[1], diff_ratio(&lhs, &rhs)?);

            if deg <= 2 {
                // i_v * f = * (v ^ eta f)
                let lhs = interior(v, &hodge(&f))?;
                let rhs = hodge(&wedge(&vf, &parity(&f))?);
                worst[2] = nan_max(worst[2], diff_ratio(&lhs, &rhs)?);

                // <g ^ a, b> = <a, i_{conj g} b>
                let b = random_point_form(&mut rng, deg + 1);
                let lhs = wedge(&vf, &f)?.dot(&b);
                let conj_v = v.map(|z| z.conj());
                let rhs = f.dot(&interior(conj_v, &b)?);
                let scale = lhs.norm().max(rhs.norm()).max(1.0);
                worst[3] = nan_max(worst[3], (lhs - rhs).norm() / scale);
            }
            if deg >= 2 {
                // i_v i_v f = 0
                let ii = interior(v, &interior(v, &f)?)?;
                worst[4] = nan_max(worst[4], ii.max_abs() / f.max_abs().max(1.0));
            }
            if deg == 1 {
                // i_xi * (xi~ ^ w) = 0 for a unit Killing field
                for kind in [Killing::Xi, Killing::XiPrime] {
                    let xi = kind.one_form(p);
                    let r = interior(*xi.components3(), &hodge(&wedge(&xi, &f)?))?;
                    worst[5] = nan_max(worst[5], r.max_abs() / f.max_abs().max(1.0));
                }
            }

            let fj = random_form_jet(&mut rng, p, deg, 2);
            if deg <= 2 {
                // delta * = - * d eta
                let lhs = codifferential(&hodge_jet(&fj))?.at_point();
                let rhs = hodge_jet(&d(&parity_jet(&fj))?).at_point().scale(c(-1.0));
                worst[6] = nan_max(worst[6], diff_ratio(&lhs, &rhs)?);
            }
            if deg >= 1 {
                // d * = * delta eta
                let lhs = d(&hodge_jet(&fj))?.at_point();
                let rhs = hodge_jet(&codifferential(&parity_jet(&fj))?).at_point();
                worst[7] = nan_max(worst[7], diff_ratio(&lhs, &rhs)?);
            }
            if deg <= 1 {
                let dd = d(&d(&fj)?)?.at_point();
                worst[8] = nan_max(worst[8], dd.max_abs() / fj.max_abs_frame().max(1.0));
            }
            if deg >= 2 {
                let dd = codifferential(&codifferential(&fj)?)?.at_point();
                worst[9] = nan_max(worst[9], dd.max_abs() / fj.max_abs_frame().max(1.0));
            }
        }
    }
    Ok(IDENTITY_NAMES.iter().copied().zip(worst).collect())
}

pub const IDENTITY_NAMES: [&str; 10] = [
    "** = 1",
    "* eta = - eta *",
    "i * = * j eta",
    "<j_g a, b> = <a, i_conj(g) b>",
    "i_v i_v = 0",
    "i_xi * j_xi~ = 0",
    "delta * = - * d eta",
    "d * = * delta eta",
    "d d = 0",
    "delta delta = 0",
];

pub fn identities_suite(cfg: &VerifyConfig) -> Result<Report> {
    let pts = random_points(cfg.points, cfg.seed, ANALYTIC_MARGIN);
    let checks = identity_residuals(&pts, cfg.seed)?
        .into_iter()
        .map(|(name, res)| {
            Check::at_most(
                format!("identity {name}"),
                name,
                pts.len(),
                res,
                tol::IDENTITY,
            )
        })
        .collect();
    Ok(Report { checks })
}

pub fn run(suite: Suite, cfg: &VerifyConfig) -> Result<Report> {
    match suite {
        Suite::Eigen => eigen_suite(cfg),
        Suite::Identities => identities_suite(cfg),
        Suite::Oracle => oracle_suite(cfg),
        Suite::Counts => counts_suite(cfg),
        Suite::Gram => gram_suite(cfg),
        Suite::All => {
            let mut r = Report::default();
            for s in [
                Suite::Counts,
                Suite::Identities,
                Suite::Eigen,
                Suite::Oracle,
                Suite::Gram,
            ] {
                r.extend(run(s, cfg)?);
            }
            Ok(r)
        }
    }
}
