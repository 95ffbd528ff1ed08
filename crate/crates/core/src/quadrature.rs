//! Product quadrature on S^3 and Hermitian inner products of fields.
//!
//! With `x = cos(2 alpha)` the volume element becomes
//! `dV = (1/4) dx dtheta dphi`. Products of two modes of level at most
//! `L_max` are polynomials in `x` (after the angular integrals select equal
//! frequencies) times trigonometric polynomials in `theta`, `phi` of degree
//! at most `2 L_max`, so a Gauss-Legendre rule in `x` and uniform rules in
//! the angles integrate them exactly.
//!
//! Sums run over nodes in a fixed order with pairwise summation, so every
//! reported number is bit-identical across runs and thread counts.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::exterior::PointForm;
use crate::geometry::HopfPoint;

/// Gauss-Legendre nodes and weights on `[-1, 1]`, nodes ascending.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for k in 0..n.div_ceil(2) {
        // Tricomi initial guess, then Newton on P_n.
        let mut x = (PI * (k as f64 + 0.75) / (n as f64 + 0.5)).cos();
        for _ in 0..100 {
            let (p, d) = legendre_with_derivative(n, x);
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, dp) = legendre_with_derivative(n, x);
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[k] = -x;
        nodes[n - 1 - k] = x;
        weights[k] = w;
        weights[n - 1 - k] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

fn legendre_with_derivative(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    if n == 0 {
        return (1.0, 0.0);
    }
    for k in 2..=n {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// Deterministic pairwise summation.
pub fn pairwise_sum(values: &[Complex64]) -> Complex64 {
    const BLOCK: usize = 16;
    if values.len() <= BLOCK {
        return values
            .iter()
            .fold(Complex64::new(0.0, 0.0), |acc, v| acc + v);
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct QuadratureGrid {
    pub x_nodes: Vec<f64>,
    pub x_weights: Vec<f64>,
    pub n_theta: usize,
    pub n_phi: usize,
    /// Largest mode level whose pairwise products the grid integrates
    /// exactly.
    pub l_max: u32,
}

/// A quadrature node: the point and its weight in `dV`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Node {
    pub point: HopfPoint,
    pub weight: f64,
}

/// Grid exact for inner products of modes with `L <= l_max`:
/// `l_max + 2` Gauss-Legendre nodes in `x` and `2 l_max + 2` uniform nodes
/// in each angle.
pub fn build_grid(l_max: u32) -> QuadratureGrid {
    build_grid_with(l_max, l_max as usize + 2, 2 * l_max as usize + 2)
}

/// Grid with explicit node counts, declared exact up to `l_max`.
pub fn build_grid_with(l_max: u32, n_x: usize, n_angle: usize) -> QuadratureGrid {
    let (x_nodes, x_weights) = gauss_legendre(n_x);
    QuadratureGrid {
        x_nodes,
        x_weights,
        n_theta: n_angle,
        n_phi: n_angle,
        l_max,
    }
}

impl QuadratureGrid {
    pub fn len(&self) -> usize {
        self.x_nodes.len() * self.n_theta * self.n_phi
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Doubles every node count; used for refinement checks.
    pub fn refined(&self) -> Self {
        build_grid_with(self.l_max, 2 * self.x_nodes.len(), 2 * self.n_theta)
    }

    pub fn require(&self, l: u32) -> Result<()> {
        if l > self.l_max {
            return Err(Error::GridUnderResolved {
                grid: self.l_max,
                requested: l,
            });
        }
        Ok(())
    }

    /// Nodes ordered by (x, theta, phi).
    pub fn nodes(&self) -> Vec<Node> {
        let angular = (TAU / self.n_theta as f64) * (TAU / self.n_phi as f64) / 4.0;
        let mut out = Vec::with_capacity(self.len());
        for (&x, &wx) in self.x_nodes.iter().zip(&self.x_weights) {
            for t in 0..self.n_theta {
                for f in 0..self.n_phi {
                    let theta = TAU * t as f64 / self.n_theta as f64;
                    let phi = TAU * f as f64 / self.n_phi as f64;
                    let point = HopfPoint::from_x(x, theta, phi)
                        .expect("Gauss-Legendre nodes are interior");
                    out.push(Node {
                        point,
                        weight: wx * angular,
                    });
                }
            }
        }
        out
    }

    /// Integral of a scalar function over S^3.
    pub fn integrate<F>(&self, f: F) -> Complex64
    where
        F: Fn(&HopfPoint) -> Complex64,
    {
        let terms: Vec<Complex64> = self
            .nodes()
            .iter()
            .map(|n| f(&n.point) * n.weight)
            .collect();
        pairwise_sum(&terms)
    }
}

/// A field sampled at every node of a grid, in node order.
#[derive(Clone, Debug, PartialEq)]
pub struct SampledField {
    pub values: Vec<PointForm>,
}

fn evaluation_error(p: &HopfPoint, e: Error) -> Error {
    Error::Evaluation {
        alpha: p.alpha,
        theta: p.theta,
        phi: p.phi,
        source: Box::new(e),
    }
}

/// Samples a field at every grid node.
pub fn sample<F>(grid: &QuadratureGrid, exec: Execution, f: F) -> Result<SampledField>
where
    F: Fn(&HopfPoint) -> Result<PointForm> + Sync + Send,
{
    let nodes = grid.nodes();
    let values = exec
        .map(&nodes, |n| {
            f(&n.point).map_err(|e| evaluation_error(&n.point, e))
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    Ok(SampledField { values })
}

/// `<a, b>` for sampled fields, conjugate-linear in `b`.
pub fn inner_sampled(a: &SampledField, b: &SampledField, nodes: &[Node]) -> Complex64 {
    let terms: Vec<Complex64> = a
        .values
        .iter()
        .zip(&b.values)
        .zip(nodes)
        .map(|((u, v), n)| u.dot(v) * n.weight)
        .collect();
    pairwise_sum(&terms)
}

pub fn inner_product_scalar<F, G>(f: F, g: G, grid: &QuadratureGrid) -> Result<Complex64>
where
    F: Fn(&HopfPoint) -> Result<Complex64> + Sync + Send,
    G: Fn(&HopfPoint) -> Result<Complex64> + Sync + Send,
{
    let a = sample(grid, Execution::Sequential, |p| f(p).map(PointForm::scalar))?;
    let b = sample(grid, Execution::Sequential, |p| g(p).map(PointForm::scalar))?;
    Ok(inner_sampled(&a, &b, &grid.nodes()))
}

pub fn inner_product_oneform<F, G>(f: F, g: G, grid: &QuadratureGrid) -> Result<Complex64>
where
    F: Fn(&HopfPoint) -> Result<PointForm> + Sync + Send,
    G: Fn(&HopfPoint) -> Result<PointForm> + Sync + Send,
{
    let a = sample(grid, Execution::Sequential, f)?;
    let b = sample(grid, Execution::Sequential, g)?;
    Ok(inner_sampled(&a, &b, &grid.nodes()))
}

/// A dense complex matrix, row-major.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GramMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl GramMatrix {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> Complex64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for r in 0..n {
            for c in 0..n {
                data.push(f(r, c));
            }
        }
        GramMatrix { n, data }
    }

    pub fn identity(n: usize) -> Self {
        GramMatrix::from_fn(n, |r, c| {
            Complex64::new(if r == c { 1.0 } else { 0.0 }, 0.0)
        })
    }

    pub fn get(&self, r: usize, c: usize) -> Complex64 {
        self.data[r * self.n + c]
    }

    pub fn max_abs_deviation(&self, other: &GramMatrix) -> f64 {
        assert_eq!(self.n, other.n, "matrix sizes differ");
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    /// Largest `|G - G^H|` entry.
    pub fn hermitian_defect(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for r in 0..self.n {
            for c in 0..self.n {
                worst = worst.max((self.get(r, c) - self.get(c, r).conj()).norm());
            }
        }
        worst
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.n).map(|k| self.get(k, k)).sum()
    }

    /// Rows of `[re, im]` pairs.
    pub fn to_pairs(&self) -> Vec<Vec<[f64; 2]>> {
        (0..self.n)
            .map(|r| {
                (0..self.n)
                    .map(|c| {
                        let v = self.get(r, c);
                        [v.re, v.im]
                    })
                    .collect()
            })
            .collect()
    }

    pub fn from_pairs(rows: &[Vec<[f64; 2]>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::Parse("Gram matrix is not square".into()));
        }
        Ok(GramMatrix::from_fn(n, |r, c| {
            Complex64::new(rows[r][c][0], rows[r][c][1])
        }))
    }
}

/// Gram matrix of sampled fields. Entries are computed independently (each
/// with a sequential node loop) and stored by position.
pub fn gram(fields: &[SampledField], grid: &QuadratureGrid, exec: Execution) -> GramMatrix {
    let n = fields.len();
    let nodes = grid.nodes();
    let data = exec.map_range(n * n, |k| {
        inner_sampled(&fields[k / n], &fields[k % n], &nodes)
    });
    GramMatrix { n, data }
}
