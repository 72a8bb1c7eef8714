use std::f64::consts::PI;

use cyclekit::hypercomplex::{moebius, HyperNumber, Sigma};
use cyclekit::jet::*;
use cyclekit::sampling;
use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rand::Rng;

fn example_points() -> Vec<JetPoint> {
    vec![
        JetPoint::new(C64::from_polar(0.75, PI / 4.0), 3),
        JetPoint::new(C64::from_polar(2.0 / 3.0, 5.0 * PI / 6.0), 4),
        JetPoint::new(C64::from_polar(0.4, -3.0 * PI / 4.0), 1),
        JetPoint::new(C64::from_polar(0.6, -PI / 3.0), 2),
    ]
}

fn random_su11<R: Rng>(r: &mut R) -> Su11 {
    Su11::from_params(r.gen_range(-PI..PI), r.gen_range(0.0..1.2), r.gen_range(-PI..PI))
}

fn random_contraction<R: Rng>(r: &mut R, n: usize) -> DMatrix<C64> {
    let m = DMatrix::from_fn(n, n, |_, _| C64::new(r.gen_range(-1.0..1.0), r.gen_range(-1.0..1.0)));
    let s = operator_norm(&m);
    m * C64::new(r.gen_range(0.1..0.9) / s, 0.0)
}

#[test]
fn example_matrix_spectrum() {
    let pts = example_points();
    let a = jordan_matrix(&pts);
    let s = jet_spectrum(&a, 1e-7).unwrap();
    assert!(s.matches(&JetSpectrum::new(pts), 1e-6), "{s:?}");
}

#[test]
fn diagonal_version_is_distinguishable() {
    let pts: Vec<JetPoint> = example_points().into_iter().map(|p| JetPoint::new(p.lambda, 1)).collect();
    let a = jordan_matrix(&pts);
    let s = jet_spectrum(&a, 1e-7).unwrap();
    assert!(s.matches(&JetSpectrum::new(pts), 1e-9));
    let block = jet_spectrum(&jordan_matrix(&example_points()), 1e-7).unwrap();
    assert!(!s.matches(&block, 1e-6));
}

#[test]
fn similarity_invariance() {
    let mut r = sampling::rng(41);
    let base = jordan_matrix(&example_points());
    let want = JetSpectrum::new(example_points());
    let mut done = 0;
    while done < 10 {
        let p = DMatrix::from_fn(10, 10, |i, j| {
            let d = if i == j { C64::new(1.0, 0.0) } else { C64::new(0.0, 0.0) };
            d + C64::new(r.gen_range(-0.3..0.3), r.gen_range(-0.3..0.3))
        });
        if condition_number(&p) > 100.0 {
            continue;
        }
        let a = &p * &base * p.clone().try_inverse().unwrap();
        let s = jet_spectrum(&a, 1e-7).unwrap();
        assert!(s.matches(&want, 1e-6), "{s:?}");
        done += 1;
    }
}

#[test]
fn action_is_a_right_action() {
    let mut r = sampling::rng(42);
    for _ in 0..200 {
        let (g1, g2) = (random_su11(&mut r), random_su11(&mut r));
        let a = random_contraction(&mut r, 3);
        let lhs = matrix_moebius(&g1, &matrix_moebius(&g2, &a).unwrap()).unwrap();
        let rhs = matrix_moebius(&g2.compose(&g1), &a).unwrap();
        assert!((lhs - &rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }
}

#[test]
fn cocycle() {
    let mut r = sampling::rng(43);
    for _ in 0..200 {
        let (g1, g2) = (random_su11(&mut r), random_su11(&mut r));
        let a = random_contraction(&mut r, 3);
        let moved = matrix_moebius(&g1, &a).unwrap();
        let lhs = resolvent(&g1, &a).unwrap() * resolvent(&g2, &moved).unwrap();
        let rhs = resolvent(&g1.compose(&g2), &a).unwrap();
        assert!((lhs - &rhs).norm() < 1e-9 * (1.0 + rhs.norm()));
    }
}

#[test]
fn scalar_case_is_the_half_plane_action() {
    let mut r = sampling::rng(44);
    for _ in 0..100 {
        let g = sampling::group_element(&mut r);
        let z = HyperNumber::new(r.gen_range(-2.0..2.0), r.gen_range(0.1..3.0), Sigma::Elliptic);
        let zc = cayley(C64::new(z.re, z.im));
        let a = DMatrix::from_element(1, 1, zc);
        let out = matrix_moebius(&Su11::from_sl2(&g), &a).unwrap()[(0, 0)];
        let w = moebius(&g.inverse(), z).unwrap();
        assert!((out - cayley(C64::new(w.re, w.im))).norm() < 1e-10);
    }
}

#[test]
fn jordan_zero_krylov_dimension() {
    for k in 1..=6 {
        let a = jordan_block(k, C64::new(0.0, 0.0));
        let mut m = DVector::from_element(k, C64::new(0.0, 0.0));
        m[k - 1] = C64::new(1.0, 0.0);
        assert_eq!(krylov_rank(&a, &m, k), k);
        // A vector of lower order spans less.
        if k > 1 {
            let mut m2 = DVector::from_element(k, C64::new(0.0, 0.0));
            m2[k - 2] = C64::new(1.0, 0.0);
            assert_eq!(krylov_rank(&a, &m2, k), k - 1);
        }
    }
}

#[test]
fn exact_image_structure_on_example() {
    let pts = example_points();
    let a = jordan_matrix(&pts);
    let data: Vec<(C64, Vec<C64>)> = [1usize, 3, 2, 1]
        .iter()
        .zip(&pts)
        .map(|(&d, p)| {
            let mut v = vec![p.lambda * 0.9];
            v.extend(std::iter::repeat(C64::new(0.0, 0.0)).take(d - 1));
            v.push(C64::new(0.5, 0.0));
            (p.lambda, v)
        })
        .collect();
    let phi = HoloMap::hermite(&data).unwrap();
    let jets = jet_spectrum(&a, 1e-7).unwrap();
    let got = jet_spectrum(&apply_poly(&phi, &a), 1e-7).unwrap();
    let want = jordan_image(&jets, &phi).unwrap();
    assert!(got.matches(&want, 1e-6), "{got:?}\n{want:?}");
    let mapped = spectral_map(&jets, &phi).unwrap();
    assert_eq!(mapped.clamped.len(), 1);
    assert!((mapped.clamped[0].lambda - pts[2].lambda).norm() < 1e-6);
}

#[test]
fn identity_map_keeps_spectrum() {
    let jets = JetSpectrum::new(example_points());
    let m = spectral_map(&jets, &HoloMap::identity()).unwrap();
    assert!(m.clamped.is_empty());
    assert!(m.spectrum.matches(&jets, 0.0));
}
