//! Scalar eigenmodes of the Laplace-de Rham operator on S^3 in Hopf
//! coordinates,
//!
//! ```text
//! T_{L,m+,m-} = C e^{i(S phi + D theta)} (1 - x)^{S/2} (1 + x)^{D/2} P_{L/2 - m+}^{(S, D)}(x)
//! ```
//!
//! with `x = cos(2 alpha)`, `S = m+ + m-`, `D = m+ - m-`.
//!
//! With `1 - x = 2 sin^2(alpha)` and `1 + x = 2 cos^2(alpha)` the whole
//! radial factor expands into monomials `sin^p(alpha) cos^q(alpha)` whose
//! exponents are non-negative integers for every valid index, even when `S`
//! or `D` is negative. The jets below differentiate that expansion exactly.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::HopfPoint;
use crate::jet::{Jet, MAX_ORDER};
use crate::specialfn::{binomial, jacobi, normalization_constant};

/// An integer or half-integer, stored as twice its value.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct HalfInt(pub i32);

impl HalfInt {
    pub fn twice(self) -> i32 {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0 as f64 / 2.0
    }
}

impl fmt::Display for HalfInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0 % 2 == 0 {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

impl FromStr for HalfInt {
    type Err = Error;

    /// Accepts `"3"`, `"-1"`, `"1/2"`, `"-3/2"`, and any `n/d` whose double
    /// is an integer (`"4/2"`).
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("'{s}' is not an integer or half-integer"));
        match s.split_once('/') {
            None => s.parse::<i32>().map(|n| HalfInt(2 * n)).map_err(|_| bad()),
            Some((num, den)) => {
                let num: i32 = num.trim().parse().map_err(|_| bad())?;
                let den: i32 = den.trim().parse().map_err(|_| bad())?;
                if den == 0 || (2 * num) % den != 0 {
                    return Err(bad());
                }
                Ok(HalfInt(2 * num / den))
            }
        }
    }
}

/// The label `(L, m+, m-)` of a scalar mode. `m+` and `m-` are stored
/// doubled so that validity checks stay in integer arithmetic.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ModeIndex {
    l: u32,
    two_mp: i32,
    two_mm: i32,
}

impl ModeIndex {
    /// `two_mp = 2 m+`, `two_mm = 2 m-`.
    pub fn new(l: u32, two_mp: i32, two_mm: i32) -> Result<Self> {
        let li = l as i64;
        for (name, v) in [("m+", two_mp), ("m-", two_mm)] {
            let h = HalfInt(v);
            if (v as i64).abs() > li {
                return Err(Error::InvalidIndex(format!(
                    "|{name}| = |{h}| exceeds L/2 = {}",
                    HalfInt(l as i32)
                )));
            }
            if (li - v as i64) % 2 != 0 {
                return Err(Error::InvalidIndex(format!(
                    "L/2 - {name} = {}/2 - {h} is not a non-negative integer",
                    l
                )));
            }
        }
        Ok(ModeIndex { l, two_mp, two_mm })
    }

    pub fn from_halves(l: u32, mp: HalfInt, mm: HalfInt) -> Result<Self> {
        ModeIndex::new(l, mp.twice(), mm.twice())
    }

    pub fn l(&self) -> u32 {
        self.l
    }

    pub fn two_mp(&self) -> i32 {
        self.two_mp
    }

    pub fn two_mm(&self) -> i32 {
        self.two_mm
    }

    pub fn mp(&self) -> HalfInt {
        HalfInt(self.two_mp)
    }

    pub fn mm(&self) -> HalfInt {
        HalfInt(self.two_mm)
    }

    /// `S = m+ + m-`, the phi frequency.
    pub fn s(&self) -> i32 {
        (self.two_mp + self.two_mm) / 2
    }

    /// `D = m+ - m-`, the theta frequency.
    pub fn d(&self) -> i32 {
        (self.two_mp - self.two_mm) / 2
    }

    /// Degree `L/2 - m+` of the Jacobi factor.
    pub fn jacobi_degree(&self) -> usize {
        ((self.l as i32 - self.two_mp) / 2) as usize
    }

    /// The index with both `m` values negated.
    pub fn conjugate(&self) -> Self {
        ModeIndex {
            l: self.l,
            two_mp: -self.two_mp,
            two_mm: -self.two_mm,
        }
    }
}

impl fmt::Display for ModeIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.l, self.mp(), self.mm())
    }
}

/// All indices at level `L`, in lexicographic `(L, m+, m-)` order.
pub fn enumerate_scalar(l: u32) -> Vec<ModeIndex> {
    let li = l as i32;
    let mut out = Vec::with_capacity(((l + 1) * (l + 1)) as usize);
    for two_mp in (-li..=li).step_by(2) {
        for two_mm in (-li..=li).step_by(2) {
            out.push(ModeIndex { l, two_mp, two_mm });
        }
    }
    out
}

/// All indices with `L <= l_max`.
pub fn enumerate_scalar_up_to(l_max: u32) -> Vec<ModeIndex> {
    (0..=l_max).flat_map(enumerate_scalar).collect()
}

/// Eigenvalues attached to a scalar mode: `Delta Phi = lambda Phi`,
/// `xi(Phi) = mu Phi`, `xi'(Phi) = nu Phi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralData {
    /// `-L(L + 2)`
    pub lambda: i64,
    /// Imaginary part of `mu = 2 i m+`.
    pub mu_im: i64,
    /// Imaginary part of `nu = 2 i m-`. Since `xi' = d/dphi - d/dtheta` and
    /// the mode carries `e^{i(S phi + D theta)}`, `xi'(Phi) = i (S - D) Phi`.
    pub nu_im: i64,
}

impl SpectralData {
    pub fn mu(&self) -> Complex64 {
        Complex64::new(0.0, self.mu_im as f64)
    }

    pub fn nu(&self) -> Complex64 {
        Complex64::new(0.0, self.nu_im as f64)
    }

    /// `mu^2 = -4 m+^2`, exact.
    pub fn mu_squared(&self) -> i64 {
        -self.mu_im * self.mu_im
    }

    /// `nu^2 = -4 m-^2`, exact.
    pub fn nu_squared(&self) -> i64 {
        -self.nu_im * self.nu_im
    }
}

pub fn spectral_data(i: &ModeIndex) -> SpectralData {
    let l = i.l as i64;
    SpectralData {
        lambda: -l * (l + 2),
        mu_im: i.two_mp as i64,
        nu_im: i.two_mm as i64,
    }
}

/// `coef * sin^p(alpha) * cos^q(alpha)`
#[derive(Clone, Copy, Debug, PartialEq)]
struct Monomial {
    coef: f64,
    p: u32,
    q: u32,
}

/// The radial factor of a scalar mode as a sum of trigonometric monomials,
/// including the normalization constant.
#[derive(Clone, Debug, PartialEq)]
pub struct RadialExpansion {
    terms: Vec<Monomial>,
}

impl RadialExpansion {
    pub fn new(i: &ModeIndex) -> Result<Self> {
        let n = i.jacobi_degree();
        let s_freq = i.s() as i64;
        let d_freq = i.d() as i64;
        let top_a = (i.l as i64 + i.two_mm as i64) / 2; // L/2 + m-
        let top_b = (i.l as i64 - i.two_mm as i64) / 2; // L/2 - m-
                                                        // C * 2^{m+}: the 2^{(S+D)/2} from the two square roots cancels the
                                                        // 1/2^{m+} in the normalization constant.
        let scale = normalization_constant(i)? * 2f64.powf(i.two_mp as f64 / 2.0);
        let mut terms = Vec::new();
        for s in 0..=n {
            let coef = binomial(top_a, n - s) * binomial(top_b, s);
            if coef == 0.0 {
                continue;
            }
            let p = s_freq + 2 * s as i64;
            let q = d_freq + 2 * (n - s) as i64;
            // Non-zero binomials force both exponents to be non-negative.
            debug_assert!(p >= 0 && q >= 0, "{i}: exponent ({p}, {q})");
            let sign = if s % 2 == 0 { 1.0 } else { -1.0 };
            terms.push(Monomial {
                coef: sign * coef * scale,
                p: p as u32,
                q: q as u32,
            });
        }
        Ok(RadialExpansion { terms })
    }

    pub fn derivative(&self) -> Self {
        let mut terms = Vec::with_capacity(2 * self.terms.len());
        for m in &self.terms {
            if m.p > 0 {
                terms.push(Monomial {
                    coef: m.coef * m.p as f64,
                    p: m.p - 1,
                    q: m.q + 1,
                });
            }
            if m.q > 0 {
                terms.push(Monomial {
                    coef: -m.coef * m.q as f64,
                    p: m.p + 1,
                    q: m.q - 1,
                });
            }
        }
        let mut out = RadialExpansion { terms };
        out.merge();
        out
    }

    fn merge(&mut self) {
        self.terms.sort_by_key(|m| (m.p, m.q));
        let mut merged: Vec<Monomial> = Vec::with_capacity(self.terms.len());
        for m in self.terms.drain(..) {
            match merged.last_mut() {
                Some(last) if last.p == m.p && last.q == m.q => last.coef += m.coef,
                _ => merged.push(m),
            }
        }
        self.terms = merged;
    }

    pub fn eval(&self, alpha: f64) -> f64 {
        let (s, c) = alpha.sin_cos();
        self.terms
            .iter()
            .map(|m| m.coef * s.powi(m.p as i32) * c.powi(m.q as i32))
            .sum()
    }

    /// Values of the first `order + 1` alpha-derivatives.
    pub fn eval_derivatives(&self, alpha: f64, order: usize) -> Vec<f64> {
        let mut out = Vec::with_capacity(order + 1);
        let mut cur = self.clone();
        for k in 0..=order {
            out.push(cur.eval(alpha));
            if k < order {
                cur = cur.derivative();
            }
        }
        out
    }
}

/// Value and partial derivatives of `T_{L,m+,m-}` up to `order` (at most 3).
pub fn scalar_mode_jet(i: &ModeIndex, p: &HopfPoint, order: usize) -> Result<Jet> {
    if order > MAX_ORDER {
        return Err(Error::OutOfRange(format!(
            "jet order {order} exceeds {MAX_ORDER}"
        )));
    }
    let radial = RadialExpansion::new(i)?.eval_derivatives(p.alpha, order);
    let phase = Complex64::from_polar(1.0, i.s() as f64 * p.phi + i.d() as f64 * p.theta);
    let i_d = Complex64::new(0.0, i.d() as f64);
    let i_s = Complex64::new(0.0, i.s() as f64);
    Ok(Jet::from_fn(order, |[a, t, f]| {
        phase * radial[a] * i_d.powu(t as u32) * i_s.powu(f as u32)
    }))
}

pub fn scalar_mode_value(i: &ModeIndex, p: &HopfPoint) -> Result<Complex64> {
    let radial = RadialExpansion::new(i)?.eval(p.alpha);
    let phase = Complex64::from_polar(1.0, i.s() as f64 * p.phi + i.d() as f64 * p.theta);
    Ok(phase * radial)
}

/// The literal product `C e^{i(...)} (1-x)^{S/2} (1+x)^{D/2} P^{(S,D)}(x)`.
/// Only meaningful when `S, D >= 0`; used to cross-check the expansion.
pub fn scalar_mode_value_direct(i: &ModeIndex, p: &HopfPoint) -> Result<Complex64> {
    let (s, d) = (i.s(), i.d());
    if s < 0 || d < 0 {
        return Err(Error::OutOfRange(format!(
            "{i}: direct product needs S, D >= 0 (S = {s}, D = {d})"
        )));
    }
    let x = p.x();
    let radial = normalization_constant(i)?
        * (1.0 - x).powf(s as f64 / 2.0)
        * (1.0 + x).powf(d as f64 / 2.0)
        * jacobi(i.jacobi_degree(), s as i64, d as i64, x)?;
    let phase = Complex64::from_polar(1.0, s as f64 * p.phi + d as f64 * p.theta);
    Ok(phase * radial)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_4, PI};

    #[test]
    fn half_int_parsing() {
        assert_eq!("1/2".parse::<HalfInt>().unwrap(), HalfInt(1));
        assert_eq!("-3/2".parse::<HalfInt>().unwrap(), HalfInt(-3));
        assert_eq!("2".parse::<HalfInt>().unwrap(), HalfInt(4));
        assert_eq!("4/2".parse::<HalfInt>().unwrap(), HalfInt(4));
        assert!("1/3".parse::<HalfInt>().is_err());
        assert!("0.5".parse::<HalfInt>().is_err());
        assert!("x".parse::<HalfInt>().is_err());
        assert_eq!(HalfInt(-3).to_string(), "-3/2");
        assert_eq!(HalfInt(4).to_string(), "2");
    }

    #[test]
    fn index_validation() {
        assert!(ModeIndex::new(2, 2, 0).is_ok());
        assert!(ModeIndex::new(2, 1, 0).is_err());
        assert!(ModeIndex::new(1, 1, -1).is_ok());
        assert!(ModeIndex::new(1, 3, 1).is_err());
        let e = ModeIndex::new(1, 0, 1).unwrap_err().to_string();
        assert!(e.contains("m+"), "{e}");
    }

    #[test]
    fn enumeration_sizes_and_order() {
        assert_eq!(enumerate_scalar(0), vec![ModeIndex::new(0, 0, 0).unwrap()]);
        let l1 = enumerate_scalar(1);
        assert_eq!(l1.len(), 4);
        assert!(l1
            .iter()
            .all(|i| i.two_mp.abs() == 1 && i.two_mm.abs() == 1));
        for l in 0..=10 {
            let v = enumerate_scalar(l);
            assert_eq!(v.len() as u32, (l + 1) * (l + 1));
            assert!(v.windows(2).all(|w| w[0] < w[1]));
        }
        assert_eq!(enumerate_scalar_up_to(5).len(), 91);
    }

    #[test]
    fn spectral_values() {
        let s = spectral_data(&ModeIndex::new(2, 2, 0).unwrap());
        assert_eq!(s.lambda, -8);
        assert_eq!(s.mu(), Complex64::new(0.0, 2.0));
        let s = spectral_data(&ModeIndex::new(1, -1, 1).unwrap());
        assert_eq!(s.nu(), Complex64::new(0.0, 1.0));
        assert_eq!(s.nu_squared(), -1);
    }

    #[test]
    fn constant_mode() {
        let i = ModeIndex::new(0, 0, 0).unwrap();
        let p = HopfPoint::new(0.4, 1.0, 2.0).unwrap();
        let j = scalar_mode_jet(&i, &p, 3).unwrap();
        assert!((j.value() - Complex64::new(1.0 / (2f64.sqrt() * PI), 0.0)).norm() < 1e-16);
        assert!(j.max_abs() - j.value().norm() < 1e-16);
        assert!(j.partial([1, 0, 0]).unwrap().norm() < 1e-16);
    }

    #[test]
    fn angular_derivatives_are_phase_factors() {
        let i = ModeIndex::new(2, 2, 0).unwrap();
        let p = HopfPoint::new(PI / 5.0, 0.3, 1.1).unwrap();
        let j = scalar_mode_jet(&i, &p, 2).unwrap();
        let v = j.value();
        let id = Complex64::new(0.0, i.d() as f64);
        let is = Complex64::new(0.0, i.s() as f64);
        assert!((j.partial([0, 1, 0]).unwrap() - id * v).norm() < 1e-15);
        assert!((j.partial([0, 0, 1]).unwrap() - is * v).norm() < 1e-15);
    }

    #[test]
    fn legendre_zero_at_equator() {
        // (2, 0, 0): S = D = 0, P_1^{(0,0)}(x) = x vanishes at alpha = pi/4
        let i = ModeIndex::new(2, 0, 0).unwrap();
        let p = HopfPoint::new(FRAC_PI_4, 0.0, 0.0).unwrap();
        assert!(scalar_mode_value(&i, &p).unwrap().norm() < 1e-15);
    }

    #[test]
    fn expansion_matches_direct_product() {
        for l in 0..=8 {
            for i in enumerate_scalar(l) {
                if i.s() < 0 || i.d() < 0 {
                    continue;
                }
                for a in [0.1, 0.5, 0.9, 1.4] {
                    let p = HopfPoint::new(a, 0.7, -0.4).unwrap();
                    let e = scalar_mode_value(&i, &p).unwrap();
                    let d = scalar_mode_value_direct(&i, &p).unwrap();
                    assert!((e - d).norm() < 1e-13, "{i} at {a}: {e} vs {d}");
                }
            }
        }
    }

    #[test]
    fn radial_derivatives_match_differences() {
        let h = 1e-5;
        for i in enumerate_scalar(5) {
            let r = RadialExpansion::new(&i).unwrap();
            for a in [0.3, 0.8, 1.2] {
                let d = r.eval_derivatives(a, 3);
                let d_prev = r.eval_derivatives(a - h, 3);
                let d_next = r.eval_derivatives(a + h, 3);
                for k in 0..3 {
                    let fd = (d_next[k] - d_prev[k]) / (2.0 * h);
                    assert!(
                        (fd - d[k + 1]).abs() < 1e-6 * d[k + 1].abs().max(1.0),
                        "{i} k={k}"
                    );
                }
            }
        }
    }
}
