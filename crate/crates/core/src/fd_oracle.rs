//! Finite-difference versions of `d`, `*d`, `delta` and the Laplace-de Rham
//! operator, acting on closures that return orthonormal-frame values.
//!
//! This module only exists to check the analytic jet machinery. It shares
//! nothing with it beyond the chart conventions: curl and divergence are
//! written out explicitly and derivatives come from central stencils.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exterior::PointForm;
use crate::geometry::HopfPoint;
use crate::jet::Coord;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scheme {
    Central2,
    Central4,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FdConfig {
    pub step_alpha: f64,
    pub step_theta: f64,
    pub step_phi: f64,
    pub scheme: Scheme,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig::uniform(1e-4, Scheme::Central2)
    }
}

impl FdConfig {
    pub fn uniform(h: f64, scheme: Scheme) -> Self {
        FdConfig {
            step_alpha: h,
            step_theta: h,
            step_phi: h,
            scheme,
        }
    }

    fn step(&self, dir: Coord) -> f64 {
        match dir {
            Coord::Alpha => self.step_alpha,
            Coord::Theta => self.step_theta,
            Coord::Phi => self.step_phi,
        }
    }
}

fn shifted(p: &HopfPoint, dir: Coord, delta: f64) -> Result<HopfPoint> {
    match dir {
        Coord::Alpha => {
            let a = p.alpha + delta;
            HopfPoint::new(a, p.theta, p.phi).map_err(|_| Error::StencilOutOfDomain(a))
        }
        Coord::Theta => HopfPoint::new(p.alpha, p.theta + delta, p.phi),
        Coord::Phi => HopfPoint::new(p.alpha, p.theta, p.phi + delta),
    }
}

/// Central-difference derivative of order 1 or 2 along one coordinate.
pub fn fd_partial<F>(
    f: &F,
    p: &HopfPoint,
    dir: Coord,
    order: usize,
    cfg: &FdConfig,
) -> Result<Complex64>
where
    F: Fn(&HopfPoint) -> Result<Complex64> + ?Sized,
{
    let h = cfg.step(dir);
    let at = |k: f64| -> Result<Complex64> { f(&shifted(p, dir, k * h)?) };
    match (order, cfg.scheme) {
        (1, Scheme::Central2) => Ok((at(1.0)? - at(-1.0)?) / (2.0 * h)),
        (2, Scheme::Central2) => Ok((at(1.0)? - at(0.0)? * 2.0 + at(-1.0)?) / (h * h)),
        (1, Scheme::Central4) => {
            Ok((-at(2.0)? + at(1.0)? * 8.0 - at(-1.0)? * 8.0 + at(-2.0)?) / (12.0 * h))
        }
        (2, Scheme::Central4) => Ok((-at(2.0)? + at(1.0)? * 16.0 - at(0.0)? * 30.0
            + at(-1.0)? * 16.0
            - at(-2.0)?)
            / (12.0 * h * h)),
        (o, _) => Err(Error::OutOfRange(format!(
            "finite-difference order {o} not supported"
        ))),
    }
}

/// Coordinate-basis component `k` of a one-form given in the frame.
fn coordinate_component<W>(w: &W, q: &HopfPoint, k: usize) -> Result<Complex64>
where
    W: Fn(&HopfPoint) -> Result<PointForm> + ?Sized,
{
    let f = w(q)?;
    if f.degree() != 1 {
        return Err(Error::Degree(f.degree()));
    }
    let (s, c) = q.alpha.sin_cos();
    let weight = [1.0, c, s][k];
    Ok(f.components3()[k] * weight)
}

/// Gradient of a scalar closure, in the orthonormal frame.
pub fn fd_gradient<F>(f: &F, p: &HopfPoint, cfg: &FdConfig) -> Result<PointForm>
where
    F: Fn(&HopfPoint) -> Result<Complex64> + ?Sized,
{
    let (s, c) = p.alpha.sin_cos();
    Ok(PointForm::one([
        fd_partial(f, p, Coord::Alpha, 1, cfg)?,
        fd_partial(f, p, Coord::Theta, 1, cfg)? / c,
        fd_partial(f, p, Coord::Phi, 1, cfg)? / s,
    ]))
}

/// `*d` of a one-form closure:
///
/// ```text
/// (*dw)_a = (d_t w_p - d_p w_t) / (cos sin)
/// (*dw)_t = (d_p w_a - d_a w_p) / sin
/// (*dw)_p = (d_a w_t - d_t w_a) / cos
/// ```
///
/// with `w_*` the coordinate-basis components.
pub fn fd_star_d<W>(w: &W, p: &HopfPoint, cfg: &FdConfig) -> Result<PointForm>
where
    W: Fn(&HopfPoint) -> Result<PointForm> + ?Sized,
{
    let comp = |k: usize| move |q: &HopfPoint| coordinate_component(w, q, k);
    let (wa, wt, wp) = (comp(0), comp(1), comp(2));
    let (s, c) = p.alpha.sin_cos();
    let dpart = |f: &dyn Fn(&HopfPoint) -> Result<Complex64>, dir| fd_partial(f, p, dir, 1, cfg);
    Ok(PointForm::one([
        (dpart(&wp, Coord::Theta)? - dpart(&wt, Coord::Phi)?) / (c * s),
        (dpart(&wa, Coord::Phi)? - dpart(&wp, Coord::Alpha)?) / s,
        (dpart(&wt, Coord::Alpha)? - dpart(&wa, Coord::Theta)?) / c,
    ]))
}

/// Codifferential of a one-form closure, minus the divergence:
/// `-(1/(sc)) d_a(sc w_a) - d_t w_t / c^2 - d_p w_p / s^2`.
pub fn fd_delta<W>(w: &W, p: &HopfPoint, cfg: &FdConfig) -> Result<Complex64>
where
    W: Fn(&HopfPoint) -> Result<PointForm> + ?Sized,
{
    let (s, c) = p.alpha.sin_cos();
    let radial = |q: &HopfPoint| -> Result<Complex64> {
        let (sq, cq) = q.alpha.sin_cos();
        Ok(coordinate_component(w, q, 0)? * (sq * cq))
    };
    let wt = |q: &HopfPoint| coordinate_component(w, q, 1);
    let wp = |q: &HopfPoint| coordinate_component(w, q, 2);
    let div = fd_partial(&radial, p, Coord::Alpha, 1, cfg)? / (s * c)
        + fd_partial(&wt, p, Coord::Theta, 1, cfg)? / (c * c)
        + fd_partial(&wp, p, Coord::Phi, 1, cfg)? / (s * s);
    Ok(-div)
}

/// Laplace-Beltrami operator on a scalar closure,
/// `f_aa + (cot - tan) f_a + f_tt / c^2 + f_pp / s^2`.
pub fn fd_laplace_scalar<F>(f: &F, p: &HopfPoint, cfg: &FdConfig) -> Result<Complex64>
where
    F: Fn(&HopfPoint) -> Result<Complex64> + ?Sized,
{
    let (s, c) = p.alpha.sin_cos();
    Ok(fd_partial(f, p, Coord::Alpha, 2, cfg)?
        + fd_partial(f, p, Coord::Alpha, 1, cfg)? * (c / s - s / c)
        + fd_partial(f, p, Coord::Theta, 2, cfg)? / (c * c)
        + fd_partial(f, p, Coord::Phi, 2, cfg)? / (s * s))
}

/// Laplace-de Rham on a one-form closure, `-(*d *d w) - d delta w`, by
/// nesting the first-order stencils.
pub fn fd_laplace<W>(w: &W, p: &HopfPoint, cfg: &FdConfig) -> Result<PointForm>
where
    W: Fn(&HopfPoint) -> Result<PointForm> + ?Sized,
{
    let curl = |q: &HopfPoint| fd_star_d(w, q, cfg);
    let curl_curl = fd_star_d(&curl, p, cfg)?;
    let div = |q: &HopfPoint| fd_delta(w, q, cfg);
    let grad_div = fd_gradient(&div, p, cfg)?;
    Ok(curl_curl.add(&grad_div)?.scale(Complex64::new(-1.0, 0.0)))
}
