//! The Hopf chart on the unit 3-sphere.
//!
//! Embedding: `x1 = sin(alpha) cos(phi)`, `x2 = sin(alpha) sin(phi)`,
//! `x3 = cos(alpha) cos(theta)`, `x4 = cos(alpha) sin(theta)` with
//! `alpha` in `(0, pi/2)` and `theta`, `phi` in `[0, 2 pi)`.
//!
//! The metric is `d alpha^2 + cos^2(alpha) d theta^2 + sin^2(alpha) d phi^2`.
//! All pointwise form components in this crate are expressed in the
//! orthonormal co-frame
//!
//! ```text
//! e^alpha = d alpha,   e^theta = cos(alpha) d theta,   e^phi = sin(alpha) d phi
//! ```
//!
//! which is taken to be positively oriented. Every Hodge sign in the crate
//! follows from this single choice.

use std::f64::consts::{FRAC_PI_2, PI, TAU};

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::exterior::PointForm;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HopfPoint {
    pub alpha: f64,
    pub theta: f64,
    pub phi: f64,
}

impl HopfPoint {
    /// Validates `alpha` against the open chart interval and reduces the
    /// two angles modulo 2 pi.
    pub fn new(alpha: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(alpha > 0.0 && alpha < FRAC_PI_2) {
            return Err(Error::Domain(format!(
                "alpha = {alpha} is not in the open interval (0, pi/2)"
            )));
        }
        if !theta.is_finite() || !phi.is_finite() {
            return Err(Error::Domain("non-finite angle".into()));
        }
        Ok(HopfPoint {
            alpha,
            theta: theta.rem_euclid(TAU),
            phi: phi.rem_euclid(TAU),
        })
    }

    /// The point with `cos(2 alpha) = x`.
    pub fn from_x(x: f64, theta: f64, phi: f64) -> Result<Self> {
        if !(x > -1.0 && x < 1.0) {
            return Err(Error::Domain(format!("x = {x} is not in (-1, 1)")));
        }
        HopfPoint::new(x.acos() / 2.0, theta, phi)
    }

    /// The internal radial variable `x = cos(2 alpha)`.
    pub fn x(&self) -> f64 {
        (2.0 * self.alpha).cos()
    }

    /// Embedding into R^4.
    pub fn embed(&self) -> [f64; 4] {
        let (sa, ca) = self.alpha.sin_cos();
        [
            sa * self.phi.cos(),
            sa * self.phi.sin(),
            ca * self.theta.cos(),
            ca * self.theta.sin(),
        ]
    }
}

/// Conversion factors between the coordinate co-basis and the orthonormal
/// co-frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrameWeights {
    pub w_alpha: f64,
    pub w_theta: f64,
    pub w_phi: f64,
}

impl FrameWeights {
    pub fn as_array(&self) -> [f64; 3] {
        [self.w_alpha, self.w_theta, self.w_phi]
    }
}

pub fn frame_weights(p: &HopfPoint) -> FrameWeights {
    let (s, c) = p.alpha.sin_cos();
    FrameWeights {
        w_alpha: 1.0,
        w_theta: c,
        w_phi: s,
    }
}

/// Density of the Riemannian volume in `d alpha d theta d phi`.
pub fn volume_density(p: &HopfPoint) -> f64 {
    let (s, c) = p.alpha.sin_cos();
    s * c
}

/// Volume of the unit 3-sphere, `2 pi^2`.
pub const SPHERE_VOLUME: f64 = 2.0 * PI * PI;

/// Orthonormal-frame components of a vector given in the coordinate basis
/// `(d/dalpha, d/dtheta, d/dphi)`.
pub fn to_frame_vector(v: [Complex64; 3], p: &HopfPoint) -> [Complex64; 3] {
    let w = frame_weights(p).as_array();
    [v[0] * w[0], v[1] * w[1], v[2] * w[2]]
}

/// Coordinate-basis components of a vector given in the orthonormal frame.
pub fn from_frame_vector(v: [Complex64; 3], p: &HopfPoint) -> [Complex64; 3] {
    let w = frame_weights(p).as_array();
    [v[0] / w[0], v[1] / w[1], v[2] / w[2]]
}

/// Lowers the index of a coordinate-basis vector. The result carries
/// orthonormal co-frame components.
pub fn flat(v: [Complex64; 3], p: &HopfPoint) -> PointForm {
    PointForm::one(to_frame_vector(v, p))
}

/// Raises the index of a one-form, returning coordinate-basis vector
/// components.
pub fn sharp(f: &PointForm, p: &HopfPoint) -> Result<[Complex64; 3]> {
    if f.degree() != 1 {
        return Err(Error::Degree(f.degree()));
    }
    Ok(from_frame_vector(*f.components3(), p))
}

/// The two unit Killing fields `xi = X12 + X34` and `xi' = X12 - X34`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Killing {
    /// `d/dphi + d/dtheta`
    Xi,
    /// `d/dphi - d/dtheta`
    XiPrime,
}

impl Killing {
    /// Coordinate-basis components `(alpha, theta, phi)`.
    pub fn coordinate_vector(self) -> [Complex64; 3] {
        let sign = match self {
            Killing::Xi => 1.0,
            Killing::XiPrime => -1.0,
        };
        [
            Complex64::new(0.0, 0.0),
            Complex64::new(sign, 0.0),
            Complex64::new(1.0, 0.0),
        ]
    }

    /// Eigenvalue of the associated one-form under `*d`.
    pub fn curl_eigenvalue(self) -> f64 {
        match self {
            Killing::Xi => -2.0,
            Killing::XiPrime => 2.0,
        }
    }

    pub fn one_form(self, p: &HopfPoint) -> PointForm {
        flat(self.coordinate_vector(), p)
    }
}
