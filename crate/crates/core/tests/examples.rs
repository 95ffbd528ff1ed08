//! Worked examples for each public operation.

use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI, SQRT_2};

use hopf_modes::exterior::{
    codifferential, d, d_scalar, hodge, interior, laplace_de_rham_oneform, parity, star_d, wedge,
    FormJet, PointForm,
};
use hopf_modes::fd_oracle::{fd_delta, fd_laplace, fd_partial, fd_star_d, FdConfig, Scheme};
use hopf_modes::geometry::{flat, frame_weights, sharp, to_frame_vector, volume_density};
use hopf_modes::jet::{Coord, Jet};
use hopf_modes::mode_families::{
    closed_form_gram, dimension_coexact, dimension_exact, enumerate_coexact, mode, norm_squared_e,
};
use hopf_modes::quadrature::{build_grid, inner_product_oneform, inner_product_scalar, GramMatrix};
use hopf_modes::sampling::random_points;
use hopf_modes::scalar_modes::{
    enumerate_scalar, scalar_mode_jet, scalar_mode_value, spectral_data,
};
use hopf_modes::specialfn::{jacobi, jacobi_derivative, normalization_constant};
use hopf_modes::verify::{basis_modes, family_modes, mode_gram};
use hopf_modes::{Execution, FamilyTag, HopfPoint, Killing, ModeIndex};
use num_complex::Complex64;

fn c(v: f64) -> Complex64 {
    Complex64::new(v, 0.0)
}

fn at(alpha: f64) -> HopfPoint {
    HopfPoint::new(alpha, 0.3, 1.1).unwrap()
}

fn idx(l: u32, two_mp: i32, two_mm: i32) -> ModeIndex {
    ModeIndex::new(l, two_mp, two_mm).unwrap()
}

fn assert_close(a: f64, b: f64, tol: f64) {
    assert!((a - b).abs() <= tol, "{a} vs {b}");
}

fn assert_form(f: &PointForm, expect: [Complex64; 3], tol: f64) {
    for (k, (x, y)) in f.components().iter().zip(expect).enumerate() {
        assert!((x - y).norm() <= tol, "component {k}: {x} vs {y}");
    }
}

fn cos_two_alpha(alpha: f64) -> Jet {
    let (s, co) = (2.0 * alpha).sin_cos();
    Jet::from_alpha_derivatives(&[co, -2.0 * s, -4.0 * co, 8.0 * s], 3)
}

// geometry

#[test]
fn frame_weights_examples() {
    let w = frame_weights(&at(FRAC_PI_4));
    assert_close(w.w_alpha, 1.0, 0.0);
    assert_close(w.w_theta, SQRT_2 / 2.0, 1e-15);
    assert_close(w.w_phi, SQRT_2 / 2.0, 1e-15);
    let w = frame_weights(&at(FRAC_PI_6));
    assert_close(w.w_theta, 3f64.sqrt() / 2.0, 1e-15);
    assert_close(w.w_phi, 0.5, 1e-15);
    assert!(frame_weights(&at(1e-9)).w_phi < 1e-8);
    assert!(HopfPoint::new(0.0, 0.0, 0.0).is_err());
}

#[test]
fn volume_density_examples() {
    assert_close(volume_density(&at(FRAC_PI_4)), 0.5, 1e-15);
    assert_close(volume_density(&at(FRAC_PI_6)), 3f64.sqrt() / 4.0, 1e-15);
    let vol = build_grid(0).integrate(|_| c(1.0));
    assert_close(vol.re, 2.0 * PI * PI, 1e-14 * 2.0 * PI * PI);
}

#[test]
fn flat_and_sharp_examples() {
    let z = c(0.0);
    let xi = flat([z, c(1.0), c(1.0)], &at(FRAC_PI_4));
    assert_form(&xi, [z, c(SQRT_2 / 2.0), c(SQRT_2 / 2.0)], 1e-15);
    let t = flat([z, c(1.0), z], &at(FRAC_PI_3));
    assert_form(&t, [z, c(0.5), z], 1e-15);
    let v = [Complex64::new(0.2, -1.0), c(3.0), Complex64::new(0.0, 0.5)];
    let back = sharp(&flat(v, &at(0.7)), &at(0.7)).unwrap();
    for k in 0..3 {
        assert!((back[k] - v[k]).norm() < 1e-15);
    }
}

// special functions

#[test]
fn jacobi_examples() {
    for (a, b, x) in [(0, 0, 0.3), (2, 5, -0.9), (-1, 3, 0.0)] {
        assert_eq!(jacobi(0, a, b, x).unwrap(), 1.0);
    }
    assert_close(jacobi(1, 0, 0, 0.5).unwrap(), 0.5, 1e-15);
    // the factorial sum gives -3/4; see the decisions ledger
    assert_close(jacobi(2, 1, 1, 0.0).unwrap(), -0.75, 1e-15);
}

#[test]
fn jacobi_derivative_examples() {
    for x in [-0.7, 0.0, 0.4] {
        assert_close(jacobi_derivative(1, 0, 0, x, 1).unwrap(), 1.0, 1e-15);
    }
    assert_close(jacobi_derivative(2, 0, 0, 0.0, 1).unwrap(), 0.0, 1e-15);
    assert_eq!(jacobi_derivative(2, 1, 2, 0.3, 3).unwrap(), 0.0);
}

#[test]
fn normalization_constant_examples() {
    assert_close(
        normalization_constant(&idx(0, 0, 0)).unwrap(),
        1.0 / (PI * SQRT_2),
        1e-15,
    );
    // the unit-norm value; see the decisions ledger
    assert_close(
        normalization_constant(&idx(2, 2, 0)).unwrap(),
        3f64.sqrt() / (2.0 * PI),
        1e-15,
    );
    for i in (0..=10).flat_map(enumerate_scalar) {
        assert!(normalization_constant(&i).unwrap().is_finite());
    }
}

// scalar modes

#[test]
fn enumerate_scalar_examples() {
    assert_eq!(enumerate_scalar(0), vec![idx(0, 0, 0)]);
    let one = enumerate_scalar(1);
    assert_eq!(one.len(), 4);
    assert!(one
        .iter()
        .all(|i| i.two_mp().abs() == 1 && i.two_mm().abs() == 1));
    assert_eq!(enumerate_scalar(4).len(), 25);
}

#[test]
fn scalar_mode_jet_examples() {
    let j = scalar_mode_jet(&idx(0, 0, 0), &at(0.4), 3).unwrap();
    assert_close(j.value().re, 1.0 / (SQRT_2 * PI), 1e-15);
    for m in [[1, 0, 0], [0, 1, 0], [0, 0, 1], [2, 0, 0], [1, 1, 1]] {
        assert!(j.partial(m).unwrap().norm() < 1e-15);
    }

    let i = idx(2, 2, 0);
    let p = HopfPoint::new(PI / 5.0, 0.3, 1.1).unwrap();
    let j = scalar_mode_jet(&i, &p, 1).unwrap();
    let v = j.value();
    assert!((j.partial([0, 1, 0]).unwrap() - Complex64::new(0.0, i.d() as f64) * v).norm() < 1e-14);
    assert!((j.partial([0, 0, 1]).unwrap() - Complex64::new(0.0, i.s() as f64) * v).norm() < 1e-14);

    let zero = scalar_mode_value(&idx(2, 0, 0), &at(FRAC_PI_4)).unwrap();
    assert!(zero.norm() < 1e-15);
}

#[test]
fn spectral_data_examples() {
    assert_eq!(spectral_data(&idx(2, 0, 0)).lambda, -8);
    assert_eq!(spectral_data(&idx(2, 2, 0)).mu_im, 2);
    // nu = 2 i m-; see the decisions ledger
    assert_eq!(spectral_data(&idx(1, -1, 1)).nu_im, 1);
}

// exterior calculus

#[test]
fn wedge_examples() {
    let (o, z) = (c(1.0), c(0.0));
    let ea = PointForm::one([o, z, z]);
    let et = PointForm::one([z, o, z]);
    let etp = PointForm::two([o, z, z]);
    let w = wedge(&ea, &et).unwrap();
    assert_eq!(w.degree(), 2);
    assert_form(&w, [z, z, o], 0.0);
    let f = PointForm::one([Complex64::new(0.3, 1.0), c(-2.0), c(0.5)]);
    assert_eq!(wedge(&f, &f).unwrap().max_abs(), 0.0);
    let vol = wedge(&ea, &etp).unwrap();
    assert_eq!((vol.degree(), vol.components()[0]), (3, o));
}

#[test]
fn hodge_and_parity_examples() {
    let (o, z) = (c(1.0), c(0.0));
    let star_one = hodge(&PointForm::scalar(o));
    assert_eq!((star_one.degree(), star_one.components()[0]), (3, o));
    let star_et = hodge(&PointForm::one([z, o, z]));
    assert_eq!(star_et.degree(), 2);
    // (theta phi, phi alpha, alpha theta): e^phi ^ e^alpha is the second slot
    assert_form(&star_et, [z, o, z], 0.0);
    let two = PointForm::two([c(1.0), c(2.0), c(3.0)]);
    assert_eq!(parity(&two), two);
}

#[test]
fn interior_examples() {
    let p = at(0.6);
    let z = c(0.0);
    let dphi = to_frame_vector([z, z, c(1.0)], &p);
    let r = interior(dphi, &PointForm::one([z, z, c(1.0)])).unwrap();
    assert_close(r.components()[0].re, 0.6f64.sin(), 1e-15);

    let v = [Complex64::new(0.2, 1.0), c(-0.7), Complex64::new(0.0, 2.0)];
    let f = PointForm::two([c(1.0), Complex64::new(0.5, 0.5), c(-3.0)]);
    assert!(interior(v, &interior(v, &f).unwrap()).unwrap().max_abs() < 1e-15);

    for q in random_points(20, 3, 0.05) {
        for kind in [Killing::Xi, Killing::XiPrime] {
            let xi = kind.one_form(&q);
            let w = PointForm::one([c(0.3), Complex64::new(-1.0, 0.2), c(2.0)]);
            let r = interior(*xi.components3(), &hodge(&wedge(&xi, &w).unwrap())).unwrap();
            assert!(r.max_abs() < 1e-15);
        }
    }
}

#[test]
fn d_examples() {
    let p = at(FRAC_PI_4);
    let constant = d_scalar(&Jet::constant(c(2.5), 2), &p).unwrap();
    assert_eq!(constant.at_point().max_abs(), 0.0);
    let g = d_scalar(&cos_two_alpha(FRAC_PI_4), &p).unwrap().at_point();
    assert_form(&g, [c(-2.0), c(0.0), c(0.0)], 1e-15);

    let fd = FdConfig::uniform(1e-4, Scheme::Central2);
    let i = idx(2, 2, 0);
    for q in random_points(20, 5, 0.1) {
        let exact = d_scalar(&scalar_mode_jet(&i, &q, 1).unwrap(), &q)
            .unwrap()
            .at_point();
        let approx =
            hopf_modes::fd_oracle::fd_gradient(&|r: &HopfPoint| scalar_mode_value(&i, r), &q, &fd)
                .unwrap();
        assert!(exact.sub(&approx).unwrap().max_abs() < 1e-7);
    }
}

#[test]
fn star_d_examples() {
    for q in random_points(10, 7, 0.05) {
        for (kind, sigma) in [(Killing::Xi, -2.0), (Killing::XiPrime, 2.0)] {
            let xi = FormJet::killing(kind, q, 1);
            let r = star_d(&xi)
                .unwrap()
                .at_point()
                .sub(&xi.at_point().scale(c(sigma)))
                .unwrap();
            assert!(r.max_abs() < 1e-14);
        }
        let phi = scalar_mode_jet(&idx(3, 1, -1), &q, 2).unwrap();
        let exact = d_scalar(&phi, &q).unwrap();
        assert!(star_d(&exact).unwrap().at_point().max_abs() < 1e-12);
    }
}

#[test]
fn codifferential_examples() {
    let i = idx(2, 0, 0);
    for q in random_points(10, 9, 0.05) {
        let a = d_scalar(&scalar_mode_jet(&i, &q, 2).unwrap(), &q).unwrap();
        let lhs = codifferential(&a).unwrap().at_point().components()[0];
        let rhs = scalar_mode_value(&i, &q).unwrap() * c(8.0);
        assert!((lhs - rhs).norm() < 1e-9 * rhs.norm().max(1.0));
        for kind in [Killing::Xi, Killing::XiPrime] {
            let xi = FormJet::killing(kind, q, 1).scale(Complex64::new(0.0, 3.0));
            assert!(codifferential(&xi).unwrap().at_point().max_abs() < 1e-14);
        }
    }
}

#[test]
fn laplace_de_rham_examples() {
    for q in random_points(10, 11, 0.05) {
        let a = mode(FamilyTag::A, &idx(2, 0, 0), &q, 2).unwrap();
        let r = laplace_de_rham_oneform(&a)
            .unwrap()
            .at_point()
            .sub(&a.at_point().scale(c(-8.0)))
            .unwrap();
        assert!(r.max_abs() < 1e-9 * a.at_point().max_abs().max(1.0));

        let xi = FormJet::killing(Killing::Xi, q, 2);
        let r = laplace_de_rham_oneform(&xi)
            .unwrap()
            .at_point()
            .sub(&xi.at_point().scale(c(-4.0)))
            .unwrap();
        assert!(r.max_abs() < 1e-13);

        let e = mode(FamilyTag::E, &idx(2, 0, 0), &q, 2).unwrap();
        let r = laplace_de_rham_oneform(&e)
            .unwrap()
            .at_point()
            .sub(&e.at_point().scale(c(-4.0)))
            .unwrap();
        assert!(r.max_abs() < 1e-9 * e.at_point().max_abs().max(1.0));
    }
    let dd = d(&d(&FormJet::scalar(at(0.5), cos_two_alpha(0.5))).unwrap()).unwrap();
    assert!(dd.at_point().max_abs() < 1e-15);
}

// mode families

#[test]
fn mode_examples() {
    for q in random_points(100, 13, 0.05) {
        assert!(
            mode(FamilyTag::E, &idx(0, 0, 0), &q, 0)
                .unwrap()
                .at_point()
                .max_abs()
                < 1e-12
        );
    }
    let i = idx(2, 0, 0);
    for q in random_points(10, 15, 0.05) {
        let e = mode(FamilyTag::E, &i, &q, 1).unwrap();
        let r = star_d(&e)
            .unwrap()
            .at_point()
            .sub(&e.at_point().scale(c(2.0)))
            .unwrap();
        assert!(r.max_abs() < 1e-12 * e.at_point().max_abs().max(1.0));
        let direct = star_d(&mode(FamilyTag::B, &i, &q, 1).unwrap())
            .unwrap()
            .at_point();
        let expanded = mode(FamilyTag::C, &i, &q, 0).unwrap().at_point();
        assert!(direct.sub(&expanded).unwrap().max_abs() < 1e-10 * direct.max_abs().max(1.0));
    }
}

#[test]
fn closed_form_gram_examples() {
    let i = idx(2, 0, 0);
    let g = |a, b| closed_form_gram(a, b, &i, &i).unwrap();
    assert_eq!(g(FamilyTag::B, FamilyTag::B), 12.0);
    assert_eq!(g(FamilyTag::A, FamilyTag::A), 8.0);
    assert_eq!(g(FamilyTag::E, FamilyTag::E), 48.0);
    assert_eq!(g(FamilyTag::B, FamilyTag::C), -40.0);
    assert_eq!(g(FamilyTag::C, FamilyTag::C), 176.0);
}

#[test]
fn norm_squared_examples() {
    assert_eq!(norm_squared_e(&idx(2, 0, 0)), 48);
    for two_mm in [-2, 0, 2] {
        assert_eq!(norm_squared_e(&idx(2, 2, two_mm)), 0);
        assert_eq!(norm_squared_e(&idx(2, -2, two_mm)), 0);
    }
    for i in enumerate_scalar(1) {
        assert_eq!(norm_squared_e(&i), 0);
    }
}

#[test]
fn enumerate_coexact_examples() {
    let two = enumerate_coexact(2).unwrap();
    assert_eq!(two.len(), 6);
    let e: Vec<_> = two.iter().filter(|b| b.tag == FamilyTag::E).collect();
    assert_eq!(e.len(), 3);
    assert!(e.iter().all(|b| b.index.two_mp() == 0));
    assert_eq!(enumerate_coexact(3).unwrap().len(), 16);
    assert_eq!(enumerate_coexact(5).unwrap().len(), 48);
}

#[test]
fn dimension_examples() {
    assert_eq!(dimension_exact(1).unwrap(), 4);
    assert_eq!(dimension_coexact(2).unwrap(), 6);
    assert_eq!(dimension_coexact(4).unwrap(), 30);
}

// quadrature

#[test]
fn inner_product_examples() {
    let grid = build_grid(2);
    let phi = |i: ModeIndex| move |p: &HopfPoint| scalar_mode_value(&i, p);
    let n = inner_product_scalar(phi(idx(0, 0, 0)), phi(idx(0, 0, 0)), &grid).unwrap();
    assert!((n - c(1.0)).norm() < 1e-14);
    let o = inner_product_scalar(phi(idx(2, 2, 0)), phi(idx(2, 0, 0)), &grid).unwrap();
    assert!(o.norm() < 1e-14);
    let xi = |p: &HopfPoint| Ok(Killing::Xi.one_form(p));
    let k = inner_product_oneform(xi, xi, &grid).unwrap();
    assert!((k - c(2.0 * PI * PI)).norm() < 1e-13);

    let i = idx(2, 0, 0);
    let w = |t: FamilyTag| move |p: &HopfPoint| Ok(mode(t, &i, p, 0)?.at_point());
    let bc = inner_product_oneform(w(FamilyTag::B), w(FamilyTag::C), &grid).unwrap();
    assert!((bc - c(-40.0)).norm() < 1e-9 * 40.0);
    let cc = inner_product_oneform(w(FamilyTag::C), w(FamilyTag::C), &grid).unwrap();
    assert!((cc - c(176.0)).norm() < 1e-9 * 176.0);
}

#[test]
fn gram_examples() {
    let exec = Execution::default();
    let e2: Vec<_> = family_modes(FamilyTag::E, 2)
        .unwrap()
        .into_iter()
        .chain(family_modes(FamilyTag::EPrime, 2).unwrap())
        .collect();
    let g = mode_gram(&e2, &build_grid(2), true, exec).unwrap();
    assert!(g.numeric.max_abs_deviation(&GramMatrix::identity(6)) < 1e-9);

    let a1 = family_modes(FamilyTag::A, 1).unwrap();
    let g = mode_gram(&a1, &build_grid(1), false, exec).unwrap();
    let three = GramMatrix::from_fn(4, |r, col| c(if r == col { 3.0 } else { 0.0 }));
    assert!(g.numeric.max_abs_deviation(&three) < 1e-12);

    let g = mode_gram(&basis_modes(2), &build_grid(2), true, exec).unwrap();
    for (r, (a, _)) in g.modes.iter().enumerate() {
        for (col, (b, _)) in g.modes.iter().enumerate() {
            if (*a == FamilyTag::A) != (*b == FamilyTag::A) {
                assert!(g.numeric.get(r, col).norm() < 1e-12);
            }
        }
    }
}

// finite-difference oracle

#[test]
fn fd_partial_examples() {
    let fd = FdConfig::uniform(1e-4, Scheme::Central2);
    let p = at(0.7);
    let i = idx(2, 2, 2);
    let f = |q: &HopfPoint| scalar_mode_value(&i, q);
    let v = f(&p).unwrap();
    let dphi = fd_partial(&f, &p, Coord::Phi, 1, &fd).unwrap();
    assert!((dphi - Complex64::new(0.0, 2.0) * v).norm() < 1e-8);

    let g = |q: &HopfPoint| Ok(c((2.0 * q.alpha).cos()));
    let da = fd_partial(&g, &at(FRAC_PI_4), Coord::Alpha, 1, &fd).unwrap();
    assert!((da - c(-2.0)).norm() < 1e-7);

    let i = idx(2, 2, -2);
    let f = |q: &HopfPoint| scalar_mode_value(&i, q);
    let d2 = fd_partial(&f, &p, Coord::Theta, 2, &fd).unwrap();
    let v = f(&p).unwrap();
    assert!((d2 + c(4.0) * v).norm() < 1e-6 * v.norm().max(1.0));
}

#[test]
fn fd_operator_examples() {
    let fd = FdConfig::uniform(1e-4, Scheme::Central2);
    let xi = |q: &HopfPoint| Ok(Killing::Xi.one_form(q));
    let e = |q: &HopfPoint| Ok(mode(FamilyTag::E, &idx(3, 1, 1), q, 0)?.at_point());
    let b = |q: &HopfPoint| Ok(mode(FamilyTag::B, &idx(2, 0, 2), q, 0)?.at_point());
    for q in random_points(10, 17, 0.1) {
        let curl = fd_star_d(&xi, &q, &fd).unwrap();
        assert!(curl.sub(&xi(&q).unwrap().scale(c(-2.0))).unwrap().max_abs() < 1e-6);

        let lap = fd_laplace(&e, &q, &fd).unwrap();
        let rhs = e(&q).unwrap().scale(c(-9.0));
        assert!(lap.sub(&rhs).unwrap().max_abs() < 1e-4 * rhs.max_abs().max(1.0));

        assert!(fd_delta(&b, &q, &fd).unwrap().norm() < 1e-6);
    }
}
