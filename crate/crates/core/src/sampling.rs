//! Seeded random interior points and fixed sampling lattices.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::geometry::HopfPoint;

/// Distance kept from the chart boundary for analytic checks.
pub const ANALYTIC_MARGIN: f64 = 0.05;

/// Distance kept from the chart boundary when finite-difference stencils
/// are involved.
pub const FD_MARGIN: f64 = 0.1;

/// `n` points with `alpha` uniform in `(margin, pi/2 - margin)` and both
/// angles uniform in `[0, 2 pi)`. Same seed, same points.
pub fn random_points(n: usize, seed: u64, margin: f64) -> Vec<HopfPoint> {
    assert!(
        margin > 0.0 && margin < FRAC_PI_4,
        "margin {margin} leaves no interior"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let alpha = rng.gen_range(margin..FRAC_PI_2 - margin);
            let theta = rng.gen_range(0.0..TAU);
            let phi = rng.gen_range(0.0..TAU);
            HopfPoint::new(alpha, theta, phi).expect("sampled inside the chart")
        })
        .collect()
}

/// Cell-centred `n x n x n` lattice: `alpha_k = (k + 1/2) pi / (2n)`,
/// `theta_k = phi_k = 2 pi k / n`.
pub fn lattice(n: usize) -> Vec<HopfPoint> {
    let mut out = Vec::with_capacity(n * n * n);
    for a in 0..n {
        let alpha = (a as f64 + 0.5) * FRAC_PI_2 / n as f64;
        for t in 0..n {
            for f in 0..n {
                let theta = TAU * t as f64 / n as f64;
                let phi = TAU * f as f64 / n as f64;
                out.push(HopfPoint::new(alpha, theta, phi).expect("lattice is interior"));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seeded_points_are_reproducible_and_interior() {
        let a = random_points(200, 7, FD_MARGIN);
        let b = random_points(200, 7, FD_MARGIN);
        assert_eq!(a, b);
        assert_ne!(a, random_points(200, 8, FD_MARGIN));
        assert!(a
            .iter()
            .all(|p| p.alpha > FD_MARGIN && p.alpha < FRAC_PI_2 - FD_MARGIN));
    }

    #[test]
    fn lattice_size() {
        let l = lattice(20);
        assert_eq!(l.len(), 8000);
        assert!(l.iter().all(|p| p.alpha > 0.0 && p.alpha < FRAC_PI_2));
    }
}
