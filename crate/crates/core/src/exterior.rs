//! Exterior algebra on the Hopf chart.
//!
//! Conventions, fixed once for the whole crate:
//!
//! * Pointwise forms ([`PointForm`]) use the orthonormal co-frame. Degree-1
//!   components are ordered `(e^a, e^t, e^p)` for alpha, theta, phi; degree-2
//!   components cyclically `(e^t^e^p, e^p^e^a, e^a^e^t)`; degree 3 is the
//!   coefficient of `e^a^e^t^e^p`. The co-frame is positively oriented, so
//!   the Hodge star copies components between degrees `p` and `3 - p` and
//!   `** = 1` in every degree.
//! * Jet-backed forms ([`FormJet`]) store components in the coordinate
//!   co-basis `(d alpha, d theta, d phi)` with the same cyclic ordering for
//!   degree 2, so `d` is a pure combination of partial derivatives.
//! * `delta = (-1)^p * d *` on p-forms, which gives `delta * = -* d eta` and
//!   `d * = * delta eta` with `eta` the degree parity.
//! * The Laplace-de Rham operator is `-(delta d + d delta)`; its scalar
//!   eigenvalues are non-positive.
//! * Pointwise inner products are Hermitian, conjugate-linear in the second
//!   argument.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::geometry::HopfPoint;
use crate::jet::{Coord, Jet};

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

fn comp_count(degree: usize) -> usize {
    if degree == 0 || degree == 3 {
        1
    } else {
        3
    }
}

/// A differential form of degree 0 to 3 at one point, in the orthonormal
/// co-frame.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PointForm {
    degree: usize,
    c: [Complex64; 3],
}

impl PointForm {
    pub fn new(degree: usize, components: &[Complex64]) -> Result<Self> {
        if degree > 3 {
            return Err(Error::Degree(degree));
        }
        if components.len() != comp_count(degree) {
            return Err(Error::OutOfRange(format!(
                "degree {degree} needs {} components, got {}",
                comp_count(degree),
                components.len()
            )));
        }
        let mut c = [ZERO; 3];
        c[..components.len()].copy_from_slice(components);
        Ok(PointForm { degree, c })
    }

    pub fn zero(degree: usize) -> Self {
        PointForm {
            degree: degree.min(3),
            c: [ZERO; 3],
        }
    }

    pub fn scalar(v: Complex64) -> Self {
        PointForm {
            degree: 0,
            c: [v, ZERO, ZERO],
        }
    }

    pub fn one(c: [Complex64; 3]) -> Self {
        PointForm { degree: 1, c }
    }

    pub fn two(c: [Complex64; 3]) -> Self {
        PointForm { degree: 2, c }
    }

    pub fn volume(v: Complex64) -> Self {
        PointForm {
            degree: 3,
            c: [v, ZERO, ZERO],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn components(&self) -> &[Complex64] {
        &self.c[..comp_count(self.degree)]
    }

    /// All three slots; only meaningful for degrees 1 and 2.
    pub fn components3(&self) -> &[Complex64; 3] {
        &self.c
    }

    pub fn scale(&self, s: Complex64) -> Self {
        let mut f = *self;
        for v in f.c.iter_mut() {
            *v *= s;
        }
        f
    }

    pub fn add(&self, other: &PointForm) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Degree(other.degree));
        }
        let mut f = *self;
        for k in 0..3 {
            f.c[k] += other.c[k];
        }
        Ok(f)
    }

    pub fn sub(&self, other: &PointForm) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn conj(&self) -> Self {
        let mut f = *self;
        for v in f.c.iter_mut() {
            *v = v.conj();
        }
        f
    }

    /// Pointwise Hermitian inner product in the orthonormal frame.
    pub fn dot(&self, other: &PointForm) -> Complex64 {
        if self.degree != other.degree {
            return ZERO;
        }
        self.components()
            .iter()
            .zip(other.components())
            .map(|(a, b)| a * b.conj())
            .sum()
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).re.sqrt()
    }

    pub fn max_abs(&self) -> f64 {
        self.components()
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

/// Exterior product.
pub fn wedge(f: &PointForm, g: &PointForm) -> Result<PointForm> {
    let degree = f.degree + g.degree;
    if degree > 3 {
        return Err(Error::Degree(degree));
    }
    let (a, b) = (&f.c, &g.c);
    Ok(match (f.degree, g.degree) {
        (0, _) => g.scale(a[0]),
        (_, 0) => f.scale(b[0]),
        (1, 1) => PointForm::two([
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]),
        (1, 2) | (2, 1) => PointForm::volume(a[0] * b[0] + a[1] * b[1] + a[2] * b[2]),
        _ => unreachable!("degree sum checked above"),
    })
}

pub fn hodge(f: &PointForm) -> PointForm {
    PointForm {
        degree: 3 - f.degree,
        c: f.c,
    }
}

/// `eta f = (-1)^p f` for a p-form.
pub fn parity(f: &PointForm) -> PointForm {
    if f.degree % 2 == 1 {
        f.scale(Complex64::new(-1.0, 0.0))
    } else {
        *f
    }
}

/// Interior product with a vector given by orthonormal-frame components.
pub fn interior(v: [Complex64; 3], f: &PointForm) -> Result<PointForm> {
    let c = &f.c;
    Ok(match f.degree {
        0 => return Err(Error::Degree(0)),
        1 => PointForm::scalar(v[0] * c[0] + v[1] * c[1] + v[2] * c[2]),
        // (i_v F)_j = v^i F_ij with F_tp = c0, F_pa = c1, F_at = c2
        2 => PointForm::one([
            v[1] * (-c[2]) + v[2] * c[1],
            v[0] * c[2] + v[2] * (-c[0]),
            v[0] * (-c[1]) + v[1] * c[0],
        ]),
        3 => PointForm::two([v[0] * c[0], v[1] * c[0], v[2] * c[0]]),
        d => return Err(Error::Degree(d)),
    })
}

/// A form whose coordinate-basis components are jets at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FormJet {
    point: HopfPoint,
    degree: usize,
    c: [Jet; 3],
}

/// Jet-backed one-forms are the main currency of the mode constructions.
pub type OneFormJet = FormJet;

impl FormJet {
    pub fn new(point: HopfPoint, degree: usize, components: &[Jet]) -> Result<Self> {
        if degree > 3 {
            return Err(Error::Degree(degree));
        }
        if components.len() != comp_count(degree) {
            return Err(Error::OutOfRange(format!(
                "degree {degree} needs {} components, got {}",
                comp_count(degree),
                components.len()
            )));
        }
        let order = components.iter().map(Jet::order).min().unwrap_or(0);
        let mut c = [Jet::zero(order); 3];
        c[..components.len()].copy_from_slice(components);
        Ok(FormJet { point, degree, c })
    }

    pub fn scalar(point: HopfPoint, f: Jet) -> Self {
        FormJet {
            point,
            degree: 0,
            c: [f, Jet::zero(f.order()), Jet::zero(f.order())],
        }
    }

    pub fn one(point: HopfPoint, c: [Jet; 3]) -> Self {
        let order = c.iter().map(Jet::order).min().unwrap_or(0);
        FormJet {
            point,
            degree: 1,
            c: c.map(|j| j.truncate(order)),
        }
    }

    /// The flat of a Killing field, `cos^2 d theta + sin^2 d phi` for `xi`
    /// and `-cos^2 d theta + sin^2 d phi` for `xi'`.
    pub fn killing(kind: crate::geometry::Killing, point: HopfPoint, order: usize) -> Self {
        let cos = Jet::cos_alpha(point.alpha, order);
        let sin = Jet::sin_alpha(point.alpha, order);
        let v = kind.coordinate_vector();
        FormJet::one(
            point,
            [Jet::zero(order), cos * cos * v[1], sin * sin * v[2]],
        )
    }

    pub fn point(&self) -> &HopfPoint {
        &self.point
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.c[0].order()
    }

    /// Coordinate-basis component jets.
    pub fn coordinate_components(&self) -> &[Jet] {
        &self.c[..comp_count(self.degree)]
    }

    fn with(&self, degree: usize, c: [Jet; 3]) -> Self {
        FormJet {
            point: self.point,
            degree,
            c,
        }
    }

    pub fn scale_by(&self, f: &Jet) -> Self {
        self.with(self.degree, self.c.map(|j| j * *f))
    }

    pub fn scale(&self, s: Complex64) -> Self {
        self.with(self.degree, self.c.map(|j| j * s))
    }

    pub fn add(&self, other: &FormJet) -> Result<Self> {
        if self.degree != other.degree {
            return Err(Error::Degree(other.degree));
        }
        Ok(self.with(self.degree, [0, 1, 2].map(|k| self.c[k] + other.c[k])))
    }

    pub fn sub(&self, other: &FormJet) -> Result<Self> {
        self.add(&other.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn truncate(&self, order: usize) -> Self {
        self.with(self.degree, self.c.map(|j| j.truncate(order)))
    }

    /// Coordinate-to-frame factors for each stored component: the
    /// orthonormal component equals the coordinate component times the
    /// returned jet.
    fn frame_factors(&self, order: usize) -> [Jet; 3] {
        let a = self.point.alpha;
        let one = Jet::constant(Complex64::new(1.0, 0.0), order);
        let cos = Jet::cos_alpha(a, order);
        let sin = Jet::sin_alpha(a, order);
        let sec = cos.recip();
        let csc = sin.recip();
        match self.degree {
            0 => [one, one, one],
            // d alpha = e^a, d theta = e^t / cos, d phi = e^p / sin
            1 => [one, sec, csc],
            // dt^dp = e^t^e^p/(cs), dp^da = e^p^e^a / s, da^dt = e^a^e^t / c
            2 => [sec * csc, csc, sec],
            _ => [sec * csc, one, one],
        }
    }

    /// Orthonormal-frame components as jets.
    pub fn frame_jets(&self) -> [Jet; 3] {
        let f = self.frame_factors(self.order());
        [0, 1, 2].map(|k| self.c[k] * f[k])
    }

    /// Builds a form of the given degree from orthonormal-frame jets.
    pub fn from_frame_jets(point: HopfPoint, degree: usize, frame: [Jet; 3]) -> Result<Self> {
        if degree > 3 {
            return Err(Error::Degree(degree));
        }
        let order = frame.iter().map(Jet::order).min().unwrap_or(0);
        let probe = FormJet {
            point,
            degree,
            c: [Jet::zero(order); 3],
        };
        let f = probe.frame_factors(order);
        let c = [0, 1, 2].map(|k| frame[k] * f[k].recip());
        Ok(FormJet { point, degree, c })
    }

    /// Values in the orthonormal frame.
    pub fn at_point(&self) -> PointForm {
        let a = self.point.alpha;
        let (s, c) = a.sin_cos();
        let f = match self.degree {
            0 => [1.0, 1.0, 1.0],
            1 => [1.0, 1.0 / c, 1.0 / s],
            2 => [1.0 / (c * s), 1.0 / s, 1.0 / c],
            _ => [1.0 / (c * s), 1.0, 1.0],
        };
        let mut out = PointForm::zero(self.degree);
        let n = comp_count(self.degree);
        for ((o, j), w) in out.c.iter_mut().zip(&self.c).zip(f).take(n) {
            *o = j.value() * w;
        }
        out
    }

    /// Largest modulus over stored jet slots of the frame components.
    pub fn max_abs_frame(&self) -> f64 {
        self.frame_jets()
            .iter()
            .take(comp_count(self.degree))
            .map(Jet::max_abs)
            .fold(0.0, f64::max)
    }
}

/// Exterior derivative.
pub fn d(f: &FormJet) -> Result<FormJet> {
    let c = &f.c;
    let da = |j: &Jet| j.diff(Coord::Alpha);
    let dt = |j: &Jet| j.diff(Coord::Theta);
    let dp = |j: &Jet| j.diff(Coord::Phi);
    match f.degree {
        0 => Ok(f.with(1, [da(&c[0])?, dt(&c[0])?, dp(&c[0])?])),
        1 => Ok(f.with(
            2,
            [
                dt(&c[2])? - dp(&c[1])?,
                dp(&c[0])? - da(&c[2])?,
                da(&c[1])? - dt(&c[0])?,
            ],
        )),
        2 => {
            let v = da(&c[0])? + dt(&c[1])? + dp(&c[2])?;
            let z = Jet::zero(v.order());
            Ok(f.with(3, [v, z, z]))
        }
        deg => Err(Error::Degree(deg + 1)),
    }
}

/// Hodge star on jet-backed forms.
pub fn hodge_jet(f: &FormJet) -> FormJet {
    let frame = f.frame_jets();
    FormJet::from_frame_jets(f.point, 3 - f.degree, frame).expect("degree in range")
}

pub fn parity_jet(f: &FormJet) -> FormJet {
    if f.degree % 2 == 1 {
        f.scale(Complex64::new(-1.0, 0.0))
    } else {
        *f
    }
}

/// `*d`, the curl on one-forms.
pub fn star_d(f: &FormJet) -> Result<FormJet> {
    Ok(hodge_jet(&d(f)?))
}

/// Codifferential. On one-forms this is minus the divergence, computed
/// directly from the volume density `sin(alpha) cos(alpha)`; in degrees 2
/// and 3 it is `(-1)^p * d *`.
pub fn codifferential(f: &FormJet) -> Result<FormJet> {
    match f.degree {
        0 => Err(Error::Degree(0)),
        1 => {
            let order = f.order();
            if order == 0 {
                return Err(Error::MissingDerivatives {
                    needed: 1,
                    available: 0,
                });
            }
            let a = f.point.alpha;
            let cos = Jet::cos_alpha(a, order);
            let sin = Jet::sin_alpha(a, order);
            let density = sin * cos;
            let radial =
                (density * f.c[0]).diff(Coord::Alpha)? * density.truncate(order - 1).recip();
            let sec2 = (cos * cos).recip().truncate(order - 1);
            let csc2 = (sin * sin).recip().truncate(order - 1);
            let div = radial + f.c[1].diff(Coord::Theta)? * sec2 + f.c[2].diff(Coord::Phi)? * csc2;
            Ok(FormJet::scalar(f.point, -div))
        }
        p => {
            let g = hodge_jet(&d(&hodge_jet(f))?);
            Ok(if p % 2 == 1 {
                g.scale(Complex64::new(-1.0, 0.0))
            } else {
                g
            })
        }
    }
}

/// Laplace-de Rham operator `-(delta d + d delta)`. Requires jets of order
/// at least two.
pub fn laplace_de_rham(f: &FormJet) -> Result<FormJet> {
    if f.order() < 2 {
        return Err(Error::MissingDerivatives {
            needed: 2,
            available: f.order(),
        });
    }
    let mut out: Option<FormJet> = None;
    if f.degree < 3 {
        out = Some(codifferential(&d(f)?)?);
    }
    if f.degree > 0 {
        let t = d(&codifferential(f)?)?;
        out = Some(match out {
            Some(o) => o.add(&t)?,
            None => t,
        });
    }
    Ok(out
        .expect("at least one term")
        .scale(Complex64::new(-1.0, 0.0)))
}

/// Laplace-de Rham on a one-form.
pub fn laplace_de_rham_oneform(f: &OneFormJet) -> Result<FormJet> {
    if f.degree != 1 {
        return Err(Error::Degree(f.degree));
    }
    laplace_de_rham(f)
}

/// The differential of a scalar jet.
pub fn d_scalar(f: &Jet, p: &HopfPoint) -> Result<FormJet> {
    d(&FormJet::scalar(*p, *f))
}
