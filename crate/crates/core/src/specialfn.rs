//! Jacobi polynomials with integer (possibly negative) parameters and the
//! normalization constant of the Hopf-coordinate scalar harmonics.

use std::f64::consts::PI;
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::scalar_modes::ModeIndex;

/// Largest `n` with `n!` representable in an f64.
pub const MAX_FACTORIAL: usize = 170;

/// Slack allowed beyond `[-1, 1]` for the polynomial argument.
const X_SLACK: f64 = 1e-12;

static FACTORIALS: LazyLock<Vec<f64>> = LazyLock::new(|| {
    let mut f = Vec::with_capacity(MAX_FACTORIAL + 1);
    f.push(1.0);
    for n in 1..=MAX_FACTORIAL {
        f.push(f[n - 1] * n as f64);
    }
    f
});

pub fn factorial(n: usize) -> Result<f64> {
    FACTORIALS
        .get(n)
        .copied()
        .ok_or_else(|| Error::OutOfRange(format!("{n}! overflows f64")))
}

/// Binomial coefficient `C(z, k)` for an arbitrary integer top argument,
/// `z (z - 1) ... (z - k + 1) / k!`.
pub fn binomial(z: i64, k: usize) -> f64 {
    let mut acc = 1.0;
    for t in 0..k {
        acc *= (z - t as i64) as f64 / (t + 1) as f64;
    }
    acc
}

fn check_x(x: f64) -> Result<()> {
    if x.is_nan() || x.abs() > 1.0 + X_SLACK {
        return Err(Error::Domain(format!(
            "Jacobi argument x = {x} is outside [-1, 1]"
        )));
    }
    Ok(())
}

/// `P_n^{(a, b)}(x)` through the finite sum
///
/// ```text
/// sum_s C(n + a, n - s) C(n + b, s) ((x - 1)/2)^s ((x + 1)/2)^(n - s)
/// ```
///
/// which is a polynomial identity in `a`, `b` and therefore valid for
/// negative integer parameters as well.
pub fn jacobi(n: usize, a: i64, b: i64, x: f64) -> Result<f64> {
    check_x(x)?;
    let n_i = n as i64;
    let lo = (x - 1.0) / 2.0;
    let hi = (x + 1.0) / 2.0;
    let mut sum = 0.0;
    for s in 0..=n {
        let coef = binomial(n_i + a, n - s) * binomial(n_i + b, s);
        if coef != 0.0 {
            sum += coef * lo.powi(s as i32) * hi.powi((n - s) as i32);
        }
    }
    Ok(sum)
}

/// Classical three-term recurrence, valid for `a, b > -1`.
pub fn jacobi_recurrence(n: usize, a: f64, b: f64, x: f64) -> Result<f64> {
    check_x(x)?;
    if a <= -1.0 || b <= -1.0 {
        return Err(Error::OutOfRange(format!(
            "recurrence requires a, b > -1 (got a = {a}, b = {b})"
        )));
    }
    let mut prev = 1.0;
    if n == 0 {
        return Ok(prev);
    }
    let mut cur = (a + 1.0) + (a + b + 2.0) * (x - 1.0) / 2.0;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * x + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let next = (c2 * cur - c3 * prev) / c1;
        prev = cur;
        cur = next;
    }
    Ok(cur)
}

/// `k`-th derivative of `P_n^{(a, b)}` at `x`, `k <= 3`, via
/// `d/dx P_n^{(a,b)} = (n + a + b + 1)/2 * P_{n-1}^{(a+1, b+1)}` applied
/// `k` times.
pub fn jacobi_derivative(n: usize, a: i64, b: i64, x: f64, k: usize) -> Result<f64> {
    if k > 3 {
        return Err(Error::OutOfRange(format!("derivative order {k} exceeds 3")));
    }
    check_x(x)?;
    if k > n {
        return Ok(0.0);
    }
    let base = (n as i64 + a + b) as f64;
    let factor: f64 = (1..=k).map(|j| (base + j as f64) / 2.0).product();
    Ok(factor * jacobi(n - k, a + k as i64, b + k as i64, x)?)
}

/// The normalization constant
///
/// ```text
/// C = 1/(2^{m+} pi) sqrt((L+1)/2) sqrt((L/2+m+)! (L/2-m+)! / ((L/2+m-)! (L/2-m-)!))
/// ```
pub fn normalization_constant(i: &ModeIndex) -> Result<f64> {
    let l = i.l() as i64;
    let args = [
        (l + i.two_mp() as i64) / 2,
        (l - i.two_mp() as i64) / 2,
        (l + i.two_mm() as i64) / 2,
        (l - i.two_mm() as i64) / 2,
    ];
    // ModeIndex already guarantees parity and range; re-check the factorial
    // arguments since this is the only place they are consumed.
    if args.iter().any(|&a| a < 0) {
        return Err(Error::InvalidIndex(format!(
            "{i}: negative factorial argument"
        )));
    }
    let f = |n: i64| factorial(n as usize);
    let ratio = f(args[0])? * f(args[1])? / (f(args[2])? * f(args[3])?);
    let pow2 = 2f64.powf(i.two_mp() as f64 / 2.0);
    Ok(((l as f64 + 1.0) / 2.0).sqrt() * ratio.sqrt() / (pow2 * PI))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_zero_is_one() {
        for (a, b) in [(0, 0), (-3, 2), (5, -1)] {
            for x in [-1.0, -0.3, 0.0, 0.9, 1.0] {
                assert_eq!(jacobi(0, a, b, x).unwrap(), 1.0);
            }
        }
    }

    #[test]
    fn legendre_values() {
        assert!((jacobi(1, 0, 0, 0.5).unwrap() - 0.5).abs() < 1e-16);
        assert!((jacobi_recurrence(1, 0.0, 0.0, 0.5).unwrap() - 0.5).abs() < 1e-16);
        // P2 = (3x^2 - 1)/2
        let x = 0.3;
        assert!((jacobi(2, 0, 0, x).unwrap() - (3.0 * x * x - 1.0) / 2.0).abs() < 1e-15);
    }

    /// Independent oracle: the Rodrigues-free hypergeometric expansion
    /// P_n^{(a,b)}(x) = (a+1)_n / n! * 2F1(-n, n+a+b+1; a+1; (1-x)/2),
    /// usable for a > -1.
    fn hypergeometric_oracle(n: usize, a: f64, b: f64, x: f64) -> f64 {
        hypergeometric_oracle_with_magnitude(n, a, b, x).0
    }

    /// Value and the largest absolute term, which bounds cancellation error.
    fn hypergeometric_oracle_with_magnitude(n: usize, a: f64, b: f64, x: f64) -> (f64, f64) {
        let z = (1.0 - x) / 2.0;
        let mut poch = 1.0;
        for t in 0..n {
            poch *= (a + 1.0 + t as f64) / (t + 1) as f64;
        }
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut big = 1.0f64;
        for k in 0..n {
            let k = k as f64;
            term *=
                (-(n as f64) + k) * (n as f64 + a + b + 1.0 + k) / ((a + 1.0 + k) * (k + 1.0)) * z;
            sum += term;
            big = big.max(term.abs());
        }
        (poch * sum, poch * big)
    }

    #[test]
    fn p2_of_one_one_at_zero() {
        // P_2^{(1,1)}(x) = (3/4)(5x^2 - 1), so the value at 0 is -3/4.
        let o = hypergeometric_oracle(2, 1.0, 1.0, 0.0);
        assert!((o + 0.75).abs() < 1e-15, "oracle {o}");
        assert!((jacobi(2, 1, 1, 0.0).unwrap() - o).abs() < 1e-15);
    }

    fn sum_magnitude(n: usize, a: i64, b: i64, x: f64) -> f64 {
        let (lo, hi) = ((x - 1.0) / 2.0, (x + 1.0) / 2.0);
        (0..=n)
            .map(|s| {
                (binomial(n as i64 + a, n - s)
                    * binomial(n as i64 + b, s)
                    * lo.powi(s as i32)
                    * hi.powi((n - s) as i32))
                .abs()
            })
            .sum()
    }

    #[test]
    fn sum_agrees_with_recurrence_and_oracle() {
        for n in 0..=12 {
            for a in 0..=4 {
                for b in 0..=4 {
                    for k in 0..=20 {
                        let x = -1.0 + k as f64 / 10.0;
                        let s = jacobi(n, a, b, x).unwrap();
                        let r = jacobi_recurrence(n, a as f64, b as f64, x).unwrap();
                        let (o, mag) =
                            hypergeometric_oracle_with_magnitude(n, a as f64, b as f64, x);
                        let scale = sum_magnitude(n, a, b, x).max(mag).max(1.0);
                        assert!((s - r).abs() <= 1e-13 * scale, "n={n} a={a} b={b} x={x}");
                        assert!((s - o).abs() <= 1e-13 * scale, "n={n} a={a} b={b} x={x}");
                    }
                }
            }
        }
    }

    #[test]
    fn negative_parameter_reduction() {
        // P_n^{(-k, b)}(x) is proportional to ((x-1)/2)^k P_{n-k}^{(k, b)}(x):
        // (n choose k) P_n^{(-k,b)} = ((n+b) choose k) ((x-1)/2)^k P_{n-k}^{(k,b)}
        let (n, k, b) = (4usize, 2i64, 1i64);
        for x in [-0.9, -0.2, 0.4, 0.95] {
            let lhs = binomial(n as i64, k as usize) * jacobi(n, -k, b, x).unwrap();
            let rhs = binomial(n as i64 + b, k as usize)
                * ((x - 1.0) / 2.0).powi(k as i32)
                * jacobi(n - k as usize, k, b, x).unwrap();
            assert!((lhs - rhs).abs() < 1e-14, "x={x}: {lhs} vs {rhs}");
        }
    }

    #[test]
    fn domain_errors() {
        assert!(jacobi(2, 0, 0, 1.1).is_err());
        assert!(jacobi(2, 0, 0, 1.0 + 1e-14).is_ok());
        assert!(jacobi_recurrence(2, -1.0, 0.0, 0.0).is_err());
        assert!(jacobi_derivative(3, 0, 0, 0.0, 4).is_err());
    }

    #[test]
    fn derivatives() {
        for x in [-0.7, 0.0, 0.6] {
            assert!((jacobi_derivative(1, 0, 0, x, 1).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!(jacobi_derivative(2, 0, 0, 0.0, 1).unwrap().abs() < 1e-15);
        assert_eq!(jacobi_derivative(2, 3, 1, 0.2, 3).unwrap(), 0.0);
        // second derivative of P2 = (3x^2-1)/2 is 3
        assert!((jacobi_derivative(2, 0, 0, 0.4, 2).unwrap() - 3.0).abs() < 1e-14);
    }

    #[test]
    fn first_derivative_matches_central_differences() {
        let h = 1e-5;
        for n in 0..=8 {
            for (a, b) in [(0, 0), (1, 2), (-2, 3), (3, -1), (2, 2)] {
                for k in 1..10 {
                    let x = -0.9 + 0.2 * k as f64;
                    let fd = (jacobi(n, a, b, x + h).unwrap() - jacobi(n, a, b, x - h).unwrap())
                        / (2.0 * h);
                    let an = jacobi_derivative(n, a, b, x, 1).unwrap();
                    assert!((fd - an).abs() < 1e-6, "n={n} a={a} b={b} x={x}");
                }
            }
        }
    }

    #[test]
    fn higher_derivatives_match_nested_differences() {
        let h = 1e-3;
        let (n, a, b) = (6, 1, -2);
        for x in [-0.5, 0.1, 0.7] {
            let d1 = |x: f64| jacobi_derivative(n, a, b, x, 1).unwrap();
            let d2 = |x: f64| jacobi_derivative(n, a, b, x, 2).unwrap();
            let fd2 = (d1(x + h) - d1(x - h)) / (2.0 * h);
            let fd3 = (d2(x + h) - d2(x - h)) / (2.0 * h);
            assert!((fd2 - d2(x)).abs() < 1e-4 * d2(x).abs().max(1.0));
            assert!(
                (fd3 - jacobi_derivative(n, a, b, x, 3).unwrap()).abs() < 1e-3 * fd3.abs().max(1.0)
            );
        }
    }

    #[test]
    fn orthogonality_under_gauss_legendre() {
        let (x, w) = crate::quadrature::gauss_legendre(24);
        for a in 0..=2i64 {
            for b in 0..=2i64 {
                for m in 0..=6 {
                    for n in 0..m {
                        let s: f64 = x
                            .iter()
                            .zip(&w)
                            .map(|(&x, &w)| {
                                w * (1.0 - x).powi(a as i32)
                                    * (1.0 + x).powi(b as i32)
                                    * jacobi(m, a, b, x).unwrap()
                                    * jacobi(n, a, b, x).unwrap()
                            })
                            .sum();
                        assert!(s.abs() < 1e-12, "a={a} b={b} m={m} n={n}: {s}");
                    }
                }
            }
        }
    }

    #[test]
    fn normalization_constants() {
        let c = normalization_constant(&ModeIndex::new(0, 0, 0).unwrap()).unwrap();
        assert!((c - (0.5f64).sqrt() / PI).abs() < 1e-16);
        // (2, 1, 0): 1/(2 pi) * sqrt(3/2) * sqrt(2! 0! / (1! 1!)) = sqrt(3)/(2 pi)
        let c = normalization_constant(&ModeIndex::new(2, 2, 0).unwrap()).unwrap();
        assert!((c - 3f64.sqrt() / (2.0 * PI)).abs() < 1e-15);
        for l in 0..=10 {
            for i in crate::scalar_modes::enumerate_scalar(l) {
                let c = normalization_constant(&i).unwrap();
                assert!(c.is_finite() && c > 0.0);
            }
        }
    }
}
