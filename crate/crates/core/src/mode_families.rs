//! One-form families built from the scalar modes:
//!
//! ```text
//! A  = d Phi
//! B  = *d (Phi xi~)              B' = *d (Phi xi'~)
//! C  = *d B                      C' = *d B'
//! E  = (L + 2) B + C             E' = (L + 2) B' - C'
//! F  = L B - C
//! ```
//!
//! `C` is evaluated through its closed expansion
//! `C = mu A - lambda Phi xi~ + sigma B` with `sigma = -2` (`+2` and `nu` for
//! the primed family), which needs one derivative of `Phi` less than
//! applying `*d` twice. The double-curl route is kept in
//! [`mode_via_double_curl`] as an independent cross-check.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exterior::{d_scalar, star_d, FormJet, OneFormJet};
use crate::geometry::{HopfPoint, Killing};
use crate::jet::MAX_ORDER;
use crate::scalar_modes::{enumerate_scalar, scalar_mode_jet, spectral_data, ModeIndex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum FamilyTag {
    A,
    B,
    BPrime,
    C,
    CPrime,
    E,
    EPrime,
    F,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 8] = [
        FamilyTag::A,
        FamilyTag::B,
        FamilyTag::BPrime,
        FamilyTag::C,
        FamilyTag::CPrime,
        FamilyTag::E,
        FamilyTag::EPrime,
        FamilyTag::F,
    ];

    pub fn is_exact(self) -> bool {
        self == FamilyTag::A
    }

    pub fn killing(self) -> Option<Killing> {
        match self {
            FamilyTag::A => None,
            FamilyTag::BPrime | FamilyTag::CPrime | FamilyTag::EPrime => Some(Killing::XiPrime),
            _ => Some(Killing::Xi),
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            FamilyTag::A => "A",
            FamilyTag::B => "B",
            FamilyTag::BPrime => "Bp",
            FamilyTag::C => "C",
            FamilyTag::CPrime => "Cp",
            FamilyTag::E => "E",
            FamilyTag::EPrime => "Ep",
            FamilyTag::F => "F",
        };
        f.write_str(s)
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "A" => FamilyTag::A,
            "B" => FamilyTag::B,
            "Bp" | "B'" | "Bprime" => FamilyTag::BPrime,
            "C" => FamilyTag::C,
            "Cp" | "C'" | "Cprime" => FamilyTag::CPrime,
            "E" => FamilyTag::E,
            "Ep" | "E'" | "Eprime" => FamilyTag::EPrime,
            "F" => FamilyTag::F,
            _ => return Err(Error::Parse(format!("unknown family '{s}'"))),
        })
    }
}

/// Building blocks shared by the families of one Killing field.
struct Pieces {
    a: FormJet,
    b: FormJet,
    phi_xi: FormJet,
}

fn pieces(i: &ModeIndex, p: &HopfPoint, order: usize, kind: Killing) -> Result<Pieces> {
    let phi = scalar_mode_jet(i, p, order + 1)?;
    let a = d_scalar(&phi, p)?;
    let xi = FormJet::killing(kind, *p, order + 1);
    let phi_xi_full = xi.scale_by(&phi);
    let b = star_d(&phi_xi_full)?;
    Ok(Pieces {
        a,
        b,
        phi_xi: phi_xi_full.truncate(order),
    })
}

/// `C = kappa A - lambda Phi xi~ + sigma B`, where `kappa` is the Killing
/// eigenvalue of `Phi` and `sigma` the curl eigenvalue of `xi~`.
fn closed_c(i: &ModeIndex, kind: Killing, pc: &Pieces) -> Result<FormJet> {
    let sd = spectral_data(i);
    let kappa = match kind {
        Killing::Xi => sd.mu(),
        Killing::XiPrime => sd.nu(),
    };
    pc.a.scale(kappa)
        .sub(&pc.phi_xi.scale(Complex64::new(sd.lambda as f64, 0.0)))?
        .add(&pc.b.scale(Complex64::new(kind.curl_eigenvalue(), 0.0)))
}

fn check_order(order: usize, max: usize) -> Result<()> {
    if order > max {
        return Err(Error::OutOfRange(format!(
            "derivative order {order} exceeds {max}"
        )));
    }
    Ok(())
}

/// The one-form `tag_i` at `p` with analytic partials up to `order <= 2`.
pub fn mode(tag: FamilyTag, i: &ModeIndex, p: &HopfPoint, order: usize) -> Result<OneFormJet> {
    check_order(order, MAX_ORDER - 1)?;
    let c = |v: f64| Complex64::new(v, 0.0);
    let l = i.l() as f64;
    let Some(kind) = tag.killing() else {
        let phi = scalar_mode_jet(i, p, order + 1)?;
        return d_scalar(&phi, p);
    };
    let pc = pieces(i, p, order, kind)?;
    match tag {
        FamilyTag::B | FamilyTag::BPrime => Ok(pc.b),
        FamilyTag::C | FamilyTag::CPrime => closed_c(i, kind, &pc),
        FamilyTag::E => pc.b.scale(c(l + 2.0)).add(&closed_c(i, kind, &pc)?),
        FamilyTag::EPrime => pc.b.scale(c(l + 2.0)).sub(&closed_c(i, kind, &pc)?),
        FamilyTag::F => pc.b.scale(c(l)).sub(&closed_c(i, kind, &pc)?),
        FamilyTag::A => unreachable!("handled above"),
    }
}

/// Same families, but with `C = *d B` obtained by differentiating `B`
/// directly. Needs one more derivative of `Phi`, so `order <= 1`.
pub fn mode_via_double_curl(
    tag: FamilyTag,
    i: &ModeIndex,
    p: &HopfPoint,
    order: usize,
) -> Result<OneFormJet> {
    check_order(order, MAX_ORDER - 2)?;
    let c = |v: f64| Complex64::new(v, 0.0);
    let l = i.l() as f64;
    let Some(kind) = tag.killing() else {
        return mode(tag, i, p, order);
    };
    let phi = scalar_mode_jet(i, p, order + 2)?;
    let b_full = star_d(&FormJet::killing(kind, *p, order + 2).scale_by(&phi))?;
    let cc = star_d(&b_full)?;
    let b = b_full.truncate(order);
    match tag {
        FamilyTag::B | FamilyTag::BPrime => Ok(b),
        FamilyTag::C | FamilyTag::CPrime => Ok(cc),
        FamilyTag::E => b.scale(c(l + 2.0)).add(&cc),
        FamilyTag::EPrime => b.scale(c(l + 2.0)).sub(&cc),
        FamilyTag::F => b.scale(c(l)).sub(&cc),
        FamilyTag::A => unreachable!("handled above"),
    }
}

/// Eigenvalue of `*d` on `E`, `E'` and `F` at level `L`.
pub fn curl_eigenvalue(tag: FamilyTag, l: u32) -> Option<f64> {
    let l = l as f64;
    match tag {
        FamilyTag::E => Some(l),
        FamilyTag::EPrime => Some(-l),
        FamilyTag::F => Some(-(l + 2.0)),
        _ => None,
    }
}

/// `||E_i||^2 = 2 L (L + 1) (L^2 - 4 m+^2)`.
pub fn norm_squared_e(i: &ModeIndex) -> i64 {
    let l = i.l() as i64;
    2 * l * (l + 1) * (l * l - (i.two_mp() as i64).pow(2))
}

/// `||E'_i||^2 = 2 L (L + 1) (L^2 - 4 m-^2)`.
pub fn norm_squared_eprime(i: &ModeIndex) -> i64 {
    let l = i.l() as i64;
    2 * l * (l + 1) * (l * l - (i.two_mm() as i64).pow(2))
}

/// Exact scalar products of the building blocks. `kappa2` is `mu^2` or
/// `nu^2`, `sigma` the curl eigenvalue of the Killing form.
fn bb(lambda: i64, kappa2: i64) -> i64 {
    kappa2 - lambda + 4
}

fn bc(lambda: i64, kappa2: i64, sigma: i64) -> i64 {
    sigma * (kappa2 - 2 * lambda + 4)
}

fn cc(lambda: i64, kappa2: i64) -> i64 {
    (4 - lambda) * kappa2 + (lambda - 12) * lambda + 16
}

fn diagonal_gram(tag: FamilyTag, i: &ModeIndex) -> Option<i64> {
    let sd = spectral_data(i);
    let lam = sd.lambda;
    let l = i.l() as i64;
    let (k2, sigma) = match tag.killing() {
        Some(Killing::Xi) => (sd.mu_squared(), -2),
        Some(Killing::XiPrime) => (sd.nu_squared(), 2),
        None => return Some(-lam),
    };
    Some(match tag {
        FamilyTag::B | FamilyTag::BPrime => bb(lam, k2),
        FamilyTag::C | FamilyTag::CPrime => cc(lam, k2),
        FamilyTag::E | FamilyTag::EPrime => {
            // E = (L+2) B + s C with s = -sigma/2
            let s = -sigma / 2;
            (l + 2).pow(2) * bb(lam, k2) + 2 * s * (l + 2) * bc(lam, k2, sigma) + cc(lam, k2)
        }
        FamilyTag::F => l * l * bb(lam, k2) - 2 * l * bc(lam, k2, sigma) + cc(lam, k2),
        FamilyTag::A => unreachable!(),
    })
}

/// Closed-form Hermitian scalar product `<tag_a(i), tag_b(j)>`.
///
/// Supported: the diagonal pairs of every family, `(B, C)`, `(C, B)` and
/// their primed versions, and pairs that vanish by orthogonality of exact
/// and co-exact forms or of distinct curl eigenvalues (`E`, `E'`, `F`).
pub fn closed_form_gram(a: FamilyTag, b: FamilyTag, i: &ModeIndex, j: &ModeIndex) -> Result<f64> {
    use FamilyTag::*;
    let curl_family = |t: FamilyTag| matches!(t, E | EPrime | F);
    let orthogonal = (a.is_exact() != b.is_exact()) || (a != b && curl_family(a) && curl_family(b));
    if orthogonal {
        return Ok(0.0);
    }
    let same_block = matches!(
        (a, b),
        (B, C) | (C, B) | (BPrime, CPrime) | (CPrime, BPrime)
    );
    if a != b && !same_block {
        return Err(Error::UnsupportedPair(a.to_string(), b.to_string()));
    }
    if i != j {
        return Ok(0.0);
    }
    if same_block {
        let sd = spectral_data(i);
        let (k2, sigma) = if a.killing() == Some(Killing::Xi) {
            (sd.mu_squared(), -2)
        } else {
            (sd.nu_squared(), 2)
        };
        return Ok(bc(sd.lambda, k2, sigma) as f64);
    }
    Ok(diagonal_gram(a, i).expect("diagonal supported") as f64)
}

/// Whether the closed-form norm of `tag_i` vanishes, i.e. the mode is the
/// zero one-form.
pub fn is_null(tag: FamilyTag, i: &ModeIndex) -> bool {
    diagonal_gram(tag, i) == Some(0)
}

/// Label of a co-exact basis element: `E` with `|m+| <= L/2 - 1` or `E'`
/// with `|m-| <= L/2 - 1`, `L >= 2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CoexactBasisIndex {
    pub tag: FamilyTag,
    pub index: ModeIndex,
}

impl CoexactBasisIndex {
    pub fn new(tag: FamilyTag, index: ModeIndex) -> Result<Self> {
        let l = index.l() as i32;
        let restricted = match tag {
            FamilyTag::E => index.two_mp(),
            FamilyTag::EPrime => index.two_mm(),
            other => {
                return Err(Error::InvalidIndex(format!(
                    "co-exact basis uses E or Ep, not {other}"
                )))
            }
        };
        if l < 2 {
            return Err(Error::InvalidIndex(format!(
                "{tag}{index}: co-exact basis needs L >= 2"
            )));
        }
        if restricted.abs() > l - 2 {
            return Err(Error::InvalidIndex(format!(
                "{tag}{index}: boundary value |m| = L/2 gives the zero form"
            )));
        }
        Ok(CoexactBasisIndex { tag, index })
    }

    pub fn norm_squared(&self) -> i64 {
        match self.tag {
            FamilyTag::E => norm_squared_e(&self.index),
            _ => norm_squared_eprime(&self.index),
        }
    }
}

impl fmt::Display for CoexactBasisIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag, self.index)
    }
}

/// The co-exact basis at level `L`: all `E` modes, then all `E'` modes,
/// each in lexicographic index order.
pub fn enumerate_coexact(l: u32) -> Result<Vec<CoexactBasisIndex>> {
    if l < 2 {
        return Err(Error::OutOfRange(format!(
            "co-exact eigenvalue -L^2 needs L >= 2, got {l}"
        )));
    }
    let scalars = enumerate_scalar(l);
    let lim = l as i32 - 2;
    let e = scalars
        .iter()
        .filter(|i| i.two_mp().abs() <= lim)
        .map(|&index| CoexactBasisIndex {
            tag: FamilyTag::E,
            index,
        });
    let ep = scalars
        .iter()
        .filter(|i| i.two_mm().abs() <= lim)
        .map(|&index| CoexactBasisIndex {
            tag: FamilyTag::EPrime,
            index,
        });
    Ok(e.chain(ep).collect())
}

/// Dimension `(L + 1)^2` of the exact eigenspace at `-L(L + 2)`.
pub fn dimension_exact(l: u32) -> Result<u64> {
    if l < 1 {
        return Err(Error::OutOfRange("exact one-forms need L >= 1".into()));
    }
    Ok((l as u64 + 1).pow(2))
}

/// Dimension `2 (L - 1)(L + 1)` of the co-exact eigenspace at `-L^2`.
pub fn dimension_coexact(l: u32) -> Result<u64> {
    if l < 2 {
        return Err(Error::OutOfRange("co-exact one-forms need L >= 2".into()));
    }
    Ok(2 * (l as u64 - 1) * (l as u64 + 1))
}

/// An element of the complete orthonormal one-form basis.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum BasisMode {
    Exact(ModeIndex),
    Coexact(CoexactBasisIndex),
}

impl BasisMode {
    pub fn tag(&self) -> FamilyTag {
        match self {
            BasisMode::Exact(_) => FamilyTag::A,
            BasisMode::Coexact(c) => c.tag,
        }
    }

    pub fn index(&self) -> &ModeIndex {
        match self {
            BasisMode::Exact(i) => i,
            BasisMode::Coexact(c) => &c.index,
        }
    }

    pub fn norm_squared(&self) -> i64 {
        match self {
            BasisMode::Exact(i) => -spectral_data(i).lambda,
            BasisMode::Coexact(c) => c.norm_squared(),
        }
    }

    /// Unnormalized one-form.
    pub fn raw(&self, p: &HopfPoint, order: usize) -> Result<OneFormJet> {
        mode(self.tag(), self.index(), p, order)
    }

    /// Unit-norm one-form.
    pub fn normalized(&self, p: &HopfPoint, order: usize) -> Result<OneFormJet> {
        let n = (self.norm_squared() as f64).sqrt();
        Ok(self.raw(p, order)?.scale(Complex64::new(1.0 / n, 0.0)))
    }
}

impl fmt::Display for BasisMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.tag(), self.index())
    }
}

/// Exact modes (for `L >= 1`) followed by the co-exact basis (for `L >= 2`).
pub fn enumerate_basis(l: u32) -> Vec<BasisMode> {
    let mut out = Vec::new();
    if l >= 1 {
        out.extend(enumerate_scalar(l).into_iter().map(BasisMode::Exact));
    }
    if l >= 2 {
        out.extend(
            enumerate_coexact(l)
                .expect("L >= 2")
                .into_iter()
                .map(BasisMode::Coexact),
        );
    }
    out
}
