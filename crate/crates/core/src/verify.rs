//! Randomized self-checks grouped into named suites, used by the `verify`
//! command. Each check reduces to one residual compared against a tolerance.

use std::fmt;

use num_complex::Complex64 as C64;
use rand::Rng;

use crate::cycle::{zero_radius_at, FsccParams, Point};
use crate::error::{Error, Result};
use crate::hardy::{
    cauchy_transform, coherent_state, contour_pairing, max_dirac_residual, taylor_coeffs,
    taylor_coeffs_quadrature, CircleFunction, DiskPoint, HalfPlanePatch, DEFAULT_N,
};
use crate::hypercomplex::{iwasawa, moebius, Sigma};
use crate::invariants::{
    bilinear, ghost, is_orthogonal, s_ghost, s_orthogonality_residual, standard_params,
};
use crate::jet::{
    apply_poly, jet_spectrum, jordan_image, jordan_matrix, matrix_moebius, resolvent, spectral_map,
    HoloMap, JetPoint, JetSpectrum, SquareMatrix, Su11,
};
use crate::metric::{distance_sq, extremal_distance_sq};
use crate::sampling::{self, TestRng};

pub const SUITES: [&str; 7] = ["moebius", "fscc", "orthogonality", "ghosts", "metric", "spectrum", "analytic"];

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub name: String,
    pub residual: f64,
    pub tol: f64,
    pub pass: bool,
}

impl Verdict {
    pub fn new(name: impl Into<String>, residual: f64, tol: f64) -> Self {
        let pass = residual.is_finite() && residual <= tol;
        Verdict { name: name.into(), residual, tol, pass }
    }

    /// Count of failed predicate comparisons; passes only at zero.
    pub fn count(name: impl Into<String>, failures: usize) -> Self {
        Verdict::new(name, failures as f64, 0.0)
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:<40} residual={:.3e} tol={:.3e} {}",
            self.name,
            self.residual,
            self.tol,
            if self.pass { "PASS" } else { "FAIL" }
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub samples: usize,
    pub seed: u64,
    /// Replaces every nonzero tolerance when set.
    pub tol: Option<f64>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { samples: 200, seed: 1, tol: None }
    }
}

impl SuiteConfig {
    fn tol(&self, default: f64) -> f64 {
        match self.tol {
            Some(t) if default > 0.0 => t,
            _ => default,
        }
    }
}

pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<Vec<Verdict>> {
    let mut rng = sampling::rng(cfg.seed);
    let n = cfg.samples.max(1);
    let out = match name {
        "moebius" => moebius_suite(&mut rng, n, cfg),
        "fscc" => fscc_suite(&mut rng, n, cfg),
        "orthogonality" => orthogonality_suite(&mut rng, n, cfg),
        "ghosts" => ghosts_suite(&mut rng, n, cfg),
        "metric" => metric_suite(&mut rng, n, cfg),
        "spectrum" => spectrum_suite(&mut rng, n, cfg),
        "analytic" => analytic_suite(&mut rng, n, cfg),
        other => return Err(Error::UnknownSuite(other.to_string())),
    };
    Ok(out)
}

fn hyper_point(rng: &mut TestRng, sigma: Sigma) -> Point {
    // Keep clear of the light cone where the action is undefined.
    Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(0.2..2.0) * if sigma == Sigma::Hyperbolic { 0.3 } else { 1.0 })
}

fn moebius_suite(rng: &mut TestRng, n: usize, cfg: &SuiteConfig) -> Vec<Verdict> {
    let (mut hom, mut iwa) = (0.0f64, 0.0f64);
    for _ in 0..n {
        let sigma = sampling::sigma(rng);
        let (g1, g2) = (sampling::group_element(rng), sampling::group_element(rng));
        let z = hyper_point(rng, sigma).to_hyper(sigma);
        let lhs = moebius(&g2, z).and_then(|w| moebius(&g1, w));
        let rhs = moebius(&g1.compose(&g2), z);
        if let (Ok(a), Ok(b)) = (lhs, rhs) {
            hom = hom.max(a.dist(b) / (1.0 + a.abs_sq().sqrt()));
        }
        iwa = iwa.max(iwasawa(&g1).recompose().max_diff(&g1));
    }
    vec![
        Verdict::new("moebius.composition", hom, cfg.tol(1e-8)),
        Verdict::new("moebius.iwasawa_recompose", iwa, cfg.tol(1e-10)),
    ]
}

fn fscc_suite(rng: &mut TestRng, n: usize, cfg: &SuiteConfig) -> Vec<Verdict> {
    let (mut cov, mut det) = (0.0f64, 0.0f64);
    for _ in 0..n {
        let sigma = sampling::sigma(rng);
        let params = FsccParams::new(sampling::sigma(rng));
        let g = sampling::group_element(rng);
        let c = sampling::cycle(rng);
        let d0 = c.determinant(params);
        let gc = c.transform(&g, params);
        det = det.max((gc.determinant(params) - d0).abs() / (1.0 + c.norm() * c.norm()));
        for p in sampling::incident_points(rng, &c, sigma, 2) {
            let Ok(gp) = moebius(&g, p.to_hyper(sigma)) else { continue };
            let gp = Point::from_hyper(gp);
            if gp.u.abs() > 1e3 || gp.v.abs() > 1e3 {
                continue;
            }
            cov = cov.max(gc.incidence_residual(gp, sigma));
        }
    }
    vec![
        Verdict::new("fscc.incidence_covariance", cov, cfg.tol(1e-8)),
        Verdict::new("fscc.determinant_invariance", det, cfg.tol(1e-9)),
    ]
}

fn orthogonality_suite(rng: &mut TestRng, n: usize, cfg: &SuiteConfig) -> Vec<Verdict> {
    let (mut inv, mut zr) = (0.0f64, 0usize);
    for _ in 0..n {
        let params = FsccParams::new(sampling::sigma(rng));
        let g = sampling::group_element(rng);
        let (a, b) = (sampling::cycle(rng), sampling::cycle(rng));
        let before = bilinear(&a, &b, params);
        let after = bilinear(&a.transform(&g, params), &b.transform(&g, params), params);
        inv = inv.max((after - before).abs() / (1.0 + a.norm() * b.norm()));

        // Orthogonal to a zero-radius cycle iff passing through its σ-centre.
        let sigma = params.sigma_breve;
        let p = sampling::point(rng, 2.0);
        let z = zero_radius_at(p, params);
        let c = if rng.gen_bool(0.5) {
            let mut c = sampling::cycle(rng);
            let q = Point::new(p.u, -sigma.as_f64() * p.v);
            c.m -= c.incidence(q, sigma);
            c
        } else {
            sampling::cycle(rng)
        };
        let ortho = is_orthogonal(&c, &z, params).unwrap_or(false);
        let on = c.incidence_residual(Point::new(p.u, -sigma.as_f64() * p.v), sigma) < 1e-9;
        zr += usize::from(ortho != on);
    }
    vec![
        Verdict::new("orthogonality.pairing_invariance", inv, cfg.tol(1e-9)),
        Verdict::count("orthogonality.zero_radius_sigma_centre", zr),
    ]
}

fn ghosts_suite(rng: &mut TestRng, n: usize, cfg: &SuiteConfig) -> Vec<Verdict> {
    let (mut gh, mut sg, mut foc) = (0.0f64, 0.0f64, 0.0f64);
    for _ in 0..n {
        let sigma = sampling::sigma(rng);
        let params = FsccParams::new(sampling::sigma(rng));
        let std = standard_params(sigma);
        let c = sampling::proper_cycle(rng);
        let x = sampling::cycle(rng);
        if let Ok(h) = ghost(&c, sigma, params) {
            let r = bilinear(&x, &c, params) - bilinear(&x, &h, std);
            gh = gh.max(r.abs() / (1.0 + x.norm() * c.norm()));
        }
        if let Ok(s) = s_ghost(&c, sigma, params) {
            let r = s_orthogonality_residual(&x, &c, params) - bilinear(&x, &s, std);
            sg = sg.max(r.abs() / (1.0 + x.norm() * c.norm() * c.norm()));
            if let (Ok(f), Ok(ctr)) = (c.focus(params), s.centre(std.sigma_breve)) {
                foc = foc.max(f.dist(ctr) / (1.0 + f.dist(Point::new(0.0, 0.0))));
            }
        }
    }
    vec![
        Verdict::new("ghosts.orthogonality_reduction", gh, cfg.tol(1e-9)),
        Verdict::new("ghosts.s_orthogonality_reduction", sg, cfg.tol(1e-9)),
        Verdict::new("ghosts.s_ghost_centre_is_focus", foc, cfg.tol(1e-9)),
    ]
}

fn metric_suite(rng: &mut TestRng, n: usize, cfg: &SuiteConfig) -> Vec<Verdict> {
    let mut worst = 0.0f64;
    for sigma in [Sigma::Elliptic, Sigma::Hyperbolic] {
        for _ in 0..n {
            let (p, q) = (sampling::point(rng, 2.0), sampling::point(rng, 2.0));
            let d2 = distance_sq(p, q, sigma);
            if d2.abs() < 1e-3 {
                continue;
            }
            if let Ok(e) = extremal_distance_sq(p, q, sigma, sigma) {
                worst = worst.max((e - d2).abs() / d2.abs().max(1.0));
            }
        }
    }
    let mut par = 0.0f64;
    for _ in 0..n {
        let (p, q) = (sampling::point(rng, 2.0), sampling::point(rng, 2.0));
        let d2 = distance_sq(p, q, Sigma::Parabolic);
        if let Ok(e) = extremal_distance_sq(p, q, Sigma::Parabolic, Sigma::Parabolic) {
            par = par.max((e - d2).abs() / d2.abs().max(1.0));
        }
    }
    vec![
        Verdict::new("metric.extremal_distance_e_h", worst, cfg.tol(1e-6)),
        Verdict::new("metric.extremal_distance_p", par, cfg.tol(1e-6)),
    ]
}

fn random_su11(rng: &mut TestRng) -> Su11 {
    Su11::from_params(rng.gen_range(0.0..std::f64::consts::TAU), rng.gen_range(0.0..0.9), rng.gen_range(0.0..std::f64::consts::TAU))
}

fn spectrum_suite(rng: &mut TestRng, n: usize, cfg: &SuiteConfig) -> Vec<Verdict> {
    let (mut coc, mut sim) = (0.0f64, 0usize);
    let (mut image_miss, mut literal_miss) = (0usize, 0usize);
    let trials = n.min(50);
    for _ in 0..trials {
        let dim = rng.gen_range(2..6);
        let a = SquareMatrix::from_fn(dim, dim, |_, _| C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3)));
        let (g1, g2) = (random_su11(rng), random_su11(rng));
        let lhs = resolvent(&g1, &a).and_then(|r1| {
            let b = matrix_moebius(&g1, &a)?;
            Ok(r1 * resolvent(&g2, &b)?)
        });
        if let (Ok(l), Ok(r)) = (lhs, resolvent(&g1.compose(&g2), &a)) {
            coc = coc.max((l - r).norm());
        }

        let lam = [C64::new(0.3, 0.1), C64::new(-0.4, 0.2)];
        let pts = vec![JetPoint::new(lam[0], rng.gen_range(1..4)), JetPoint::new(lam[1], rng.gen_range(1..3))];
        let j = jordan_matrix(&pts);
        let size = j.nrows();
        let s = SquareMatrix::identity(size, size)
            + SquareMatrix::from_fn(size, size, |_, _| C64::new(rng.gen_range(-0.2..0.2), rng.gen_range(-0.2..0.2)));
        let Some(si) = s.clone().try_inverse() else { continue };
        let ok = jet_spectrum(&(&s * &j * si), 1e-7)
            .map(|sp| sp.matches(&JetSpectrum::new(pts.clone()), 1e-5))
            .unwrap_or(false);
        sim += usize::from(!ok);

        // φ(z) = c + (z − λ₀)^d has a zero of order d at λ₀.
        let d = rng.gen_range(1..4);
        let c = C64::new(rng.gen_range(-0.3..0.3), rng.gen_range(-0.3..0.3));
        let phi = HoloMap::from_roots(&vec![lam[0]; d], C64::new(1.0, 0.0));
        let phi = HoloMap::new(phi.coeffs.iter().enumerate().map(|(i, &a)| if i == 0 { a + c } else { a }).collect());
        let jets = JetSpectrum::new(pts.clone());
        let Ok(got) = jet_spectrum(&apply_poly(&phi, &j), 1e-7) else { continue };
        image_miss += usize::from(!jordan_image(&jets, &phi).is_ok_and(|s| got.matches(&s, 1e-5)));
        literal_miss += usize::from(!spectral_map(&jets, &phi).is_ok_and(|m| got.matches(&m.spectrum, 1e-5)));
    }
    vec![
        Verdict::new("spectrum.resolvent_cocycle", coc, cfg.tol(1e-9)),
        Verdict::count("spectrum.similarity_invariance", sim),
        Verdict::count("spectrum.jordan_image", image_miss),
        Verdict::count("spectrum.spectral_mapping", literal_miss),
    ]
}

fn analytic_suite(rng: &mut TestRng, n: usize, cfg: &SuiteConfig) -> Vec<Verdict> {
    let mut mono = 0.0f64;
    let mut coh = 0.0f64;
    for _ in 0..n.min(100) {
        let r = rng.gen_range(0.0..0.8f64);
        let t = rng.gen_range(0.0..std::f64::consts::TAU);
        let u = C64::from_polar(r, t);
        let du = DiskPoint::new(u).expect("inside the disk");
        let deg = rng.gen_range(0..9);
        let f = CircleFunction::from_fn(DEFAULT_N, |z| z.powi(deg)).expect("valid grid");
        mono = mono.max((cauchy_transform(&f, du) - u.powi(deg)).norm());
        let g = CircleFunction::from_fn(DEFAULT_N, |z| 1.0 / (1.0 - 0.5 * z)).expect("valid grid");
        if let Ok(k) = coherent_state(du, DEFAULT_N) {
            // Pairing with the coherent state is the raw Cauchy sum.
            coh = coh.max((contour_pairing(&g, &k) + cauchy_transform(&g, du)).norm());
        }
    }
    let a = DiskPoint::new(C64::new(0.6, -0.5)).expect("inside the disk");
    let exact = taylor_coeffs(a, 32);
    let quad = taylor_coeffs_quadrature(a, 32, DEFAULT_N).expect("valid grid");
    let tay = exact.iter().zip(&quad).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max);
    let patch = HalfPlanePatch::sample(
        HalfPlanePatch::DEFAULT_BOUNDS,
        HalfPlanePatch::DEFAULT_SIZE,
        HalfPlanePatch::DEFAULT_SIZE,
        |w| w * w + 3.0 * w,
    );
    vec![
        Verdict::new("analytic.monomial_recovery", mono, cfg.tol(1e-8)),
        Verdict::new("analytic.coherent_pairing", coh, cfg.tol(1e-8)),
        Verdict::new("analytic.taylor_coefficients", tay, cfg.tol(1e-10)),
        Verdict::new("analytic.dirac_kernel", max_dirac_residual(&patch), cfg.tol(1e-9)),
    ]
}
