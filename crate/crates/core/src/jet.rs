//! Truncated jets of complex fields in the chart variables (alpha, theta, phi).
//!
//! A [`Jet`] stores the value of a field together with all of its partial
//! derivatives up to a total order of at most [`MAX_ORDER`] at one point.
//! Arithmetic follows the Leibniz rule, so products, reciprocals and
//! differentiation of jets are exact (up to rounding) and compose freely.
//! Differentiating a jet of order `k` yields a jet of order `k - 1`.

use std::ops::{Add, Mul, Neg, Sub};
use std::sync::LazyLock;

use num_complex::Complex64;

use crate::error::{Error, Result};

pub const MAX_ORDER: usize = 3;
/// Number of multi-indices of total order at most three in three variables.
pub const JET_LEN: usize = 20;

const NONE: usize = usize::MAX;

/// A chart coordinate direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Coord {
    Alpha,
    Theta,
    Phi,
}

impl Coord {
    pub const ALL: [Coord; 3] = [Coord::Alpha, Coord::Theta, Coord::Phi];

    pub fn axis(self) -> usize {
        match self {
            Coord::Alpha => 0,
            Coord::Theta => 1,
            Coord::Phi => 2,
        }
    }
}

struct Tables {
    /// Multi-indices sorted by total order.
    multi: Vec<[usize; 3]>,
    /// index[i][j][k] -> slot, or NONE past MAX_ORDER.
    index: [[[usize; MAX_ORDER + 1]; MAX_ORDER + 1]; MAX_ORDER + 1],
    /// shift[axis][slot] -> slot of (multi + e_axis), or NONE.
    shift: [[usize; JET_LEN]; 3],
    /// Leibniz terms (gamma, beta, gamma - beta, binomial(gamma, beta)).
    leibniz: Vec<(usize, usize, usize, f64)>,
    /// Range of `leibniz` holding the terms of each gamma.
    groups: [(usize, usize); JET_LEN],
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, t| acc * (n - t) as f64 / (t + 1) as f64)
}

static TABLES: LazyLock<Tables> = LazyLock::new(|| {
    let mut multi = Vec::with_capacity(JET_LEN);
    for total in 0..=MAX_ORDER {
        for i in (0..=total).rev() {
            for j in (0..=total - i).rev() {
                multi.push([i, j, total - i - j]);
            }
        }
    }
    debug_assert_eq!(multi.len(), JET_LEN);

    let mut index = [[[NONE; MAX_ORDER + 1]; MAX_ORDER + 1]; MAX_ORDER + 1];
    for (slot, m) in multi.iter().enumerate() {
        index[m[0]][m[1]][m[2]] = slot;
    }

    let mut shift = [[NONE; JET_LEN]; 3];
    for (slot, m) in multi.iter().enumerate() {
        for axis in 0..3 {
            let mut up = *m;
            up[axis] += 1;
            if up.iter().sum::<usize>() <= MAX_ORDER {
                shift[axis][slot] = index[up[0]][up[1]][up[2]];
            }
        }
    }

    let mut leibniz = Vec::new();
    let mut groups = [(0, 0); JET_LEN];
    for (g, gm) in multi.iter().enumerate() {
        let start = leibniz.len();
        for (b, bm) in multi.iter().enumerate() {
            if (0..3).all(|a| bm[a] <= gm[a]) {
                let rest = [gm[0] - bm[0], gm[1] - bm[1], gm[2] - bm[2]];
                let coef = (0..3).map(|a| binomial(gm[a], bm[a])).product();
                leibniz.push((g, b, index[rest[0]][rest[1]][rest[2]], coef));
            }
        }
        groups[g] = (start, leibniz.len());
    }

    Tables {
        multi,
        index,
        shift,
        leibniz,
        groups,
    }
});

/// Number of jet slots carrying data for a given order.
fn slots(order: usize) -> usize {
    match order {
        0 => 1,
        1 => 4,
        2 => 10,
        _ => JET_LEN,
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet {
    order: usize,
    d: [Complex64; JET_LEN],
}

impl Jet {
    pub fn zero(order: usize) -> Self {
        Jet {
            order: order.min(MAX_ORDER),
            d: [Complex64::new(0.0, 0.0); JET_LEN],
        }
    }

    pub fn constant(value: Complex64, order: usize) -> Self {
        let mut j = Jet::zero(order);
        j.d[0] = value;
        j
    }

    /// Builds a jet from a function of the multi-index `[i, j, k]`, giving
    /// the partial derivative d^i/dalpha^i d^j/dtheta^j d^k/dphi^k.
    pub fn from_fn(order: usize, f: impl Fn([usize; 3]) -> Complex64) -> Self {
        let mut j = Jet::zero(order);
        let t = &*TABLES;
        for slot in 0..slots(j.order) {
            j.d[slot] = f(t.multi[slot]);
        }
        j
    }

    /// A real jet depending on alpha only, given its alpha-derivatives
    /// `derivs[0..=order]`.
    pub fn from_alpha_derivatives(derivs: &[f64], order: usize) -> Self {
        Jet::from_fn(order, |[i, j, k]| {
            if j == 0 && k == 0 {
                Complex64::new(derivs[i], 0.0)
            } else {
                Complex64::new(0.0, 0.0)
            }
        })
    }

    pub fn cos_alpha(alpha: f64, order: usize) -> Self {
        let (s, c) = alpha.sin_cos();
        Jet::from_alpha_derivatives(&[c, -s, -c, s], order)
    }

    pub fn sin_alpha(alpha: f64, order: usize) -> Self {
        let (s, c) = alpha.sin_cos();
        Jet::from_alpha_derivatives(&[s, c, -s, -c], order)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn value(&self) -> Complex64 {
        self.d[0]
    }

    /// Partial derivative for the multi-index `[i, j, k]`, if stored.
    pub fn partial(&self, m: [usize; 3]) -> Option<Complex64> {
        if m.iter().sum::<usize>() > self.order {
            return None;
        }
        Some(self.d[TABLES.index[m[0]][m[1]][m[2]]])
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        let mut j = Jet::zero(order);
        let n = slots(order);
        j.d[..n].copy_from_slice(&self.d[..n]);
        j
    }

    /// Partial derivative along one chart direction.
    pub fn diff(&self, c: Coord) -> Result<Self> {
        if self.order == 0 {
            return Err(Error::MissingDerivatives {
                needed: 1,
                available: 0,
            });
        }
        let t = &*TABLES;
        let mut j = Jet::zero(self.order - 1);
        for slot in 0..slots(j.order) {
            j.d[slot] = self.d[t.shift[c.axis()][slot]];
        }
        Ok(j)
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut j = *self;
        for v in j.d[..slots(self.order)].iter_mut() {
            *v *= c;
        }
        j
    }

    pub fn scale_real(&self, c: f64) -> Self {
        self.scale(Complex64::new(c, 0.0))
    }

    pub fn conj(&self) -> Self {
        let mut j = *self;
        for v in j.d.iter_mut() {
            *v = v.conj();
        }
        j
    }

    /// Multiplicative inverse. The value must be nonzero.
    pub fn recip(&self) -> Self {
        let t = &*TABLES;
        let mut h = Jet::zero(self.order);
        let inv0 = self.d[0].inv();
        h.d[0] = inv0;
        // Every strict sub-index of gamma has lower total order, hence a
        // smaller slot, so slots can be solved in increasing order.
        for g in 1..slots(self.order) {
            let (lo, hi) = t.groups[g];
            let sum: Complex64 = t.leibniz[lo..hi]
                .iter()
                .filter(|&&(_, b, _, _)| b != g)
                .map(|&(_, b, rest, coef)| self.d[rest] * h.d[b] * coef)
                .sum();
            h.d[g] = -sum * inv0;
        }
        h
    }

    /// Maximum modulus over all stored slots.
    pub fn max_abs(&self) -> f64 {
        self.d[..slots(self.order)]
            .iter()
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

impl Add for Jet {
    type Output = Jet;
    fn add(self, rhs: Jet) -> Jet {
        let mut j = Jet::zero(self.order.min(rhs.order));
        for s in 0..slots(j.order) {
            j.d[s] = self.d[s] + rhs.d[s];
        }
        j
    }
}

impl Sub for Jet {
    type Output = Jet;
    fn sub(self, rhs: Jet) -> Jet {
        self + (-rhs)
    }
}

impl Neg for Jet {
    type Output = Jet;
    fn neg(self) -> Jet {
        self.scale_real(-1.0)
    }
}

impl Mul for Jet {
    type Output = Jet;
    fn mul(self, rhs: Jet) -> Jet {
        let t = &*TABLES;
        let mut j = Jet::zero(self.order.min(rhs.order));
        let n = slots(j.order);
        for &(g, b, rest, coef) in &t.leibniz {
            if g < n {
                j.d[g] += self.d[b] * rhs.d[rest] * coef;
            }
        }
        j
    }
}

impl Mul<Complex64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: Complex64) -> Jet {
        self.scale(rhs)
    }
}

impl Mul<f64> for Jet {
    type Output = Jet;
    fn mul(self, rhs: f64) -> Jet {
        self.scale_real(rhs)
    }
}
