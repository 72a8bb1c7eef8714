//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test
//! fails at the end if any criterion failed. Oracles are computed here from
//! first principles rather than through the library routine under test.

use std::f64::consts::PI;
use std::time::{Duration, Instant};

use cyclekit::conic::{fit, ConicType};
use cyclekit::cycle::{zero_radius_at, Cycle, FsccParams, Point};
use cyclekit::hardy::{
    cauchy_transform, taylor_coeffs, taylor_coeffs_quadrature, dirac_residual, CircleFunction,
    DiskPoint, HalfPlanePatch,
};
use cyclekit::hypercomplex::{iwasawa, moebius, GroupElement, Sigma};
use cyclekit::invariants::{
    ghost, is_orthogonal, is_s_orthogonal, reflect_literal, s_ghost, standard_params,
};
use cyclekit::jet::{
    apply_poly, cayley, jet_spectrum, jordan_image, jordan_matrix, matrix_moebius, operator_norm,
    resolvent, spectral_map, HoloMap, JetPoint, JetSpectrum, SquareMatrix, Su11,
};
use cyclekit::metric::{
    conformal_limit, cycle_from_focus, extremal_distance_sq, is_perpendicular, DiffConfig,
    LengthKind,
};
use cyclekit::render::render;
use cyclekit::sampling::{self, TestRng};
use cyclekit::scene::Scene;
use num_complex::Complex64 as C64;
use rand::Rng;

const SIGMAS: [Sigma; 3] = [Sigma::Elliptic, Sigma::Parabolic, Sigma::Hyperbolic];

struct Outcome {
    pass: bool,
    summary: String,
    details: Vec<String>,
}

impl Outcome {
    fn new(pass: bool, summary: impl Into<String>) -> Self {
        Outcome { pass, summary: summary.into(), details: vec![] }
    }

    fn with(mut self, d: impl Into<String>) -> Self {
        self.details.push(d.into());
        self
    }
}

fn report(id: &str, o: &Outcome) {
    println!("criterion {id:>2}: {} | {}", if o.pass { "PASS" } else { "FAIL" }, o.summary);
    for d in &o.details {
        println!("               {d}");
    }
}

/// Cycle equation in the σ-drawing, relative to the size of its terms.
fn on_cycle(c: &Cycle, p: Point, sigma: f64) -> f64 {
    let s = c.k.abs().max(c.l.abs()).max(c.n.abs()).max(c.m.abs());
    let (k, l, n, m) = (c.k / s, c.l / s, c.n / s, c.m / s);
    let val = k * (p.u * p.u - sigma * p.v * p.v) - 2.0 * l * p.u - 2.0 * n * p.v + m;
    let scale = k.abs() * (p.u * p.u + p.v * p.v) + 2.0 * (l * p.u).abs() + 2.0 * (n * p.v).abs() + m.abs();
    val.abs() / scale.max(1e-300)
}

/// Möbius map of the σ-plane written out in components.
fn mobius_oracle(g: &GroupElement, p: Point, sigma: f64) -> Option<Point> {
    // (a z + b)(c z̄ + d) / |c z + d|² with z̄ = u − ιv and ι² = σ.
    let (nu, nv) = (g.a * p.u + g.b, g.a * p.v);
    let (du, dv) = (g.c * p.u + g.d, g.c * p.v);
    let den = du * du - sigma * dv * dv;
    if den.abs() < 1e-9 {
        return None;
    }
    Some(Point::new((nu * du - sigma * nv * dv) / den, (nv * du - nu * dv) / den))
}

fn criterion_1(rng: &mut TestRng) -> Outcome {
    let start = Instant::now();
    let (mut worst, mut checked, mut oracle_gap) = (0.0f64, 0usize, 0.0f64);
    for sigma in SIGMAS {
        for sb in SIGMAS {
            let params = FsccParams::new(sb);
            for _ in 0..500 {
                let g = sampling::group_element(rng);
                let c = sampling::cycle(rng);
                let gc = c.transform(&g, params);
                for p in sampling::incident_points(rng, &c, sigma, 20) {
                    let Some(q) = mobius_oracle(&g, p, sigma.as_f64()) else { continue };
                    if q.u.abs() > 1e3 || q.v.abs() > 1e3 {
                        continue;
                    }
                    if let Ok(z) = moebius(&g, p.to_hyper(sigma)) {
                        oracle_gap = oracle_gap.max(Point::from_hyper(z).dist(q) / (1.0 + q.dist(Point::new(0.0, 0.0))));
                    }
                    worst = worst.max(on_cycle(&gc, q, sigma.as_f64()));
                    checked += 1;
                }
            }
        }
    }
    let t = start.elapsed();
    Outcome::new(
        worst < 1e-8 && oracle_gap < 1e-10 && t < Duration::from_secs(10) && checked > 50_000,
        format!("intertwining, 9 combos x 500 pairs, {checked} points: max residual {worst:.2e} (< 1e-8), {:.2}s (< 10s)", t.as_secs_f64()),
    )
    .with(format!("library action vs component oracle: {oracle_gap:.2e}"))
}

fn criterion_2(rng: &mut TestRng) -> Outcome {
    let mut worst = 0.0f64;
    let mut shape = 0.0f64;
    for _ in 0..1000 {
        let g = sampling::group_element(rng);
        let f = iwasawa(&g);
        // Multiply the factors out by hand: A(α) N(ν) K(φ).
        let (a, n, k) = (f.alpha, f.nu, f.phi);
        let an = [[a, a * n], [0.0, 1.0 / a]];
        let kk = [[k.cos(), k.sin()], [-k.sin(), k.cos()]];
        let m = [
            [an[0][0] * kk[0][0] + an[0][1] * kk[1][0], an[0][0] * kk[0][1] + an[0][1] * kk[1][1]],
            [an[1][0] * kk[0][0] + an[1][1] * kk[1][0], an[1][0] * kk[0][1] + an[1][1] * kk[1][1]],
        ];
        let d = (m[0][0] - g.a).abs().max((m[0][1] - g.b).abs()).max((m[1][0] - g.c).abs()).max((m[1][1] - g.d).abs());
        worst = worst.max(d);
        shape = shape.max(f.recompose().max_diff(&g));
    }
    Outcome::new(worst < 1e-12 && shape < 1e-12, format!("Iwasawa round trip on 1000 matrices: max error {worst:.2e} (< 1e-12)"))
        .with(format!("library recompose: {shape:.2e}"))
}

fn criterion_3(rng: &mut TestRng) -> Outcome {
    let (mut centres, mut foci, mut n) = (0.0f64, 0.0f64, 0);
    while n < 500 {
        let c = sampling::cycle(rng);
        if c.k.abs() < 1e-3 || c.n.abs() < 1e-3 {
            continue;
        }
        n += 1;
        let e = c.centre(Sigma::Elliptic).unwrap();
        let p = c.centre(Sigma::Parabolic).unwrap();
        let h = c.centre(Sigma::Hyperbolic).unwrap();
        // c_e is the mirror image of c_h and c_p their midpoint.
        centres = centres
            .max((e.u - h.u).abs())
            .max((e.v + h.v).abs())
            .max((p.u - 0.5 * (e.u + h.u)).abs())
            .max((p.v - 0.5 * (e.v + h.v)).abs());
        let s = rng.gen_range(0.3..2.0);
        for sb in SIGMAS {
            let f1 = c.focus(FsccParams::with_s(sb, s)).unwrap();
            let f2 = c.focus(FsccParams::with_s(sb, -s)).unwrap();
            foci = foci.max(f1.dist(f2) / (1.0 + f1.dist(Point::new(0.0, 0.0))));
        }
    }
    Outcome::new(
        centres == 0.0 && foci < 1e-12,
        format!("centre identities on 500 cycles: defect {centres:.1e} (exact); focus sign(s) independence {foci:.1e} (< 1e-12)"),
    )
}

fn criterion_4(rng: &mut TestRng) -> Outcome {
    let params = FsccParams::new(Sigma::Elliptic);
    let (mut agree, mut total, mut excluded, mut positives) = (0, 0, 0, 0);
    while total < 1000 {
        let (c1, r1) = sampling::circle(rng);
        let (c2, mut r2) = sampling::circle(rng);
        let d2 = (c1.u - c2.u).powi(2) + (c1.v - c2.v).powi(2);
        if rng.gen_bool(0.5) && d2 > r1 * r1 + 0.01 {
            r2 = (d2 - r1 * r1).sqrt();
        }
        let diff = d2 - r1 * r1 - r2 * r2;
        let scale = d2 + r1 * r1 + r2 * r2;
        let oracle = if diff.abs() <= 1e-12 * scale {
            true
        } else if diff.abs() >= 1e-9 {
            false
        } else {
            excluded += 1;
            continue;
        };
        let got = is_orthogonal(&Cycle::circle(c1, r1), &Cycle::circle(c2, r2), params).unwrap();
        total += 1;
        positives += usize::from(oracle);
        agree += usize::from(got == oracle);
    }
    Outcome::new(
        agree == total,
        format!("e-pairing vs |c1-c2|^2 = r1^2 + r2^2: {agree}/{total} agree ({positives} orthogonal, {excluded} borderline excluded)"),
    )
}

fn criterion_5(rng: &mut TestRng) -> Outcome {
    let (mut incidence_bad, mut self_bad, mut inc_pos, mut self_pos) = (0, 0, 0, 0);
    for sigma in SIGMAS {
        let params = FsccParams::new(sigma);
        let s = sigma.as_f64();
        for _ in 0..500 {
            // Item 2: orthogonal to Z_p iff through the σ-centre (u, −σv) of Z_p.
            let p = sampling::point(rng, 2.0);
            let q = Point::new(p.u, -s * p.v);
            let mut c = sampling::cycle(rng);
            if rng.gen_bool(0.5) {
                c.m = -(c.k * (q.u * q.u - s * q.v * q.v) - 2.0 * c.l * q.u - 2.0 * c.n * q.v);
            }
            let oracle = on_cycle(&c, q, s) < 1e-9;
            inc_pos += usize::from(oracle);
            let got = is_orthogonal(&c, &zero_radius_at(p, params), params).unwrap();
            incidence_bad += usize::from(got != oracle);

            // Item 1: self-orthogonal iff det = σ̆n² − l² + mk = 0.
            let mut c = sampling::proper_cycle(rng);
            if rng.gen_bool(0.5) {
                c.m = (c.l * c.l - s * c.n * c.n) / c.k;
            }
            let det = s * c.n * c.n - c.l * c.l + c.m * c.k;
            let size = c.k * c.k + c.l * c.l + c.n * c.n + c.m * c.m;
            let oracle = det.abs() < 1e-9 * size;
            self_pos += usize::from(oracle);
            self_bad += usize::from(is_orthogonal(&c, &c, params).unwrap() != oracle);
        }
    }
    Outcome::new(
        incidence_bad == 0 && self_bad == 0,
        format!(
            "zero-radius sigma-centre incidence: {incidence_bad} mismatches in 1500 ({inc_pos} incident); self-orthogonality vs det=0: {self_bad} mismatches in 1500 ({self_pos} isotropic)"
        ),
    )
}

/// n-component of the literal product C·X·C, via the matrix routine.
fn literal_n(x: &Cycle, c: &Cycle, params: FsccParams) -> f64 {
    reflect_literal(c, x, params).n
}

fn criterion_6(rng: &mut TestRng) -> Outcome {
    let (mut g_bad, mut g_pos, mut s_bad, mut s_pos) = (0, 0, 0, 0);
    let mut focus_gap = 0.0f64;
    let mut n = 0;
    while n < 200 {
        let sigma = sampling::sigma(rng);
        let params = FsccParams::new(sampling::sigma(rng));
        let std = standard_params(sigma);
        let c = sampling::proper_cycle(rng);
        let mut x = sampling::cycle(rng);
        if x.k.abs() < 0.1 {
            continue;
        }
        n += 1;
        // σ̆-orthogonality to c equals usual orthogonality to its ghost.
        if rng.gen_bool(0.5) {
            let w = params.weight();
            x.m = (2.0 * x.l * c.l - 2.0 * w * x.n * c.n - x.k * c.m) / c.k;
        }
        let h = ghost(&c, sigma, params).unwrap();
        let lhs = is_orthogonal(&x, &c, params).unwrap();
        g_pos += usize::from(lhs);
        g_bad += usize::from(lhs != is_orthogonal(&x, &h, std).unwrap());

        // s-orthogonality to c equals usual orthogonality to its
        // s-ghost. Half the samples are made s-orthogonal by solving the
        // literal matrix condition for m.
        let mut y = sampling::cycle(rng);
        if rng.gen_bool(0.5) {
            let unit_m = Cycle::new(0.0, 0.0, 0.0, 1.0);
            let base = Cycle { m: 0.0, ..y };
            let slope = literal_n(&unit_m, &c, params);
            if slope.abs() > 1e-3 {
                y.m = -literal_n(&base, &c, params) / slope;
            }
        }
        let sg = s_ghost(&c, sigma, params).unwrap();
        let lhs = is_s_orthogonal(&y, &c, params).unwrap();
        s_pos += usize::from(lhs);
        s_bad += usize::from(lhs != is_orthogonal(&y, &sg, std).unwrap());

        // χ(σ)-centre of the s-ghost is the σ̆-focus of c,
        // both evaluated by hand.
        let chi = sigma.chi();
        let centre = Point::new(sg.l / sg.k, -chi * sg.n / sg.k);
        let w = params.weight();
        let focus = Point::new(c.l / c.k, (c.l * c.l - c.m * c.k + w * c.n * c.n) / (2.0 * c.n * c.k));
        focus_gap = focus_gap.max(centre.dist(focus) / (1.0 + focus.dist(Point::new(0.0, 0.0))));
    }
    Outcome::new(
        g_bad == 0 && s_bad == 0 && focus_gap < 1e-9,
        format!(
            "ghost reduction: {g_bad} mismatches/200 ({g_pos} orthogonal); s-ghost reduction: {s_bad} mismatches/200 ({s_pos} s-orthogonal); centre-focus gap {focus_gap:.1e} (< 1e-9)"
        ),
    )
}

fn extremal_part(rng: &mut TestRng) -> (bool, String) {
    let mut parts = vec![];
    let mut ok = true;
    for sigma in SIGMAS {
        let s = sigma.as_f64();
        let (mut worst, mut n, mut failed) = (0.0f64, 0, 0);
        while n < 100 {
            let (p, q) = (sampling::point(rng, 2.0), sampling::point(rng, 2.0));
            let (du, dv) = (q.u - p.u, q.v - p.v);
            let d2 = du * du - s * dv * dv;
            if d2.abs() < 1e-2 || dv.abs() < 1e-2 {
                continue;
            }
            n += 1;
            match extremal_distance_sq(p, q, sigma, sigma) {
                Ok(e) => worst = worst.max((e - d2).abs() / d2.abs().max(1.0)),
                Err(_) => failed += 1,
            }
        }
        let good = worst < 1e-6 && failed == 0;
        ok &= good;
        parts.push(format!("sigma={sigma}: {worst:.1e}{}", if failed > 0 { format!(" ({failed} errors)") } else { String::new() }));
    }
    (ok, format!("extremal distance vs du^2 - sigma dv^2 (< 1e-6 rel): {}", parts.join(", ")))
}

fn conformal_part(rng: &mut TestRng) -> (bool, String) {
    let (mut worst, mut n, mut tries) = (0.0f64, 0, 0);
    while n < 50 && tries < 5000 {
        tries += 1;
        let sigma = sampling::sigma(rng);
        let params = FsccParams::new(sampling::sigma(rng));
        let kind = match rng.gen_range(0..3) {
            0 => LengthKind::Distance,
            1 => LengthKind::FromCentre(if rng.gen_bool(0.5) { Sigma::Elliptic } else { Sigma::Hyperbolic }),
            _ => LengthKind::FromFocus,
        };
        let g = sampling::group_element(rng);
        let y = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..1.5));
        let dir = |r: &mut TestRng| {
            let t: f64 = r.gen_range(0.0..PI);
            Point::new(t.cos(), t.sin())
        };
        let (a, b) = (dir(rng), dir(rng));
        let lightlike = |d: Point| (d.u * d.u - sigma.as_f64() * d.v * d.v).abs() < 0.2;
        if lightlike(a) || lightlike(b) || (a.u * b.v - a.v * b.u).abs() < 0.2 {
            continue;
        }
        let (Ok(la), Ok(lb)) = (
            conformal_limit(&g, y, a, 1e-2, kind, sigma, params),
            conformal_limit(&g, y, b, 1e-2, kind, sigma, params),
        ) else {
            continue;
        };
        if !(la.is_finite() && lb.is_finite()) || la.abs() < 1e-6 {
            continue;
        }
        n += 1;
        worst = worst.max((la - lb).abs() / la.abs().max(lb.abs()));
    }
    (n == 50 && worst < 1e-4, format!("conformal limit y'-independence on {n} configs: max rel diff {worst:.1e} (< 1e-4)"))
}

fn focal_part(rng: &mut TestRng) -> (bool, String) {
    let cfg = DiffConfig::default();
    let (mut n, mut bad_perp, mut bad_sorth, mut skipped) = (0, 0, 0, 0);
    while n < 200 {
        let sigma = sampling::sigma(rng);
        let params = FsccParams::new(sampling::sigma(rng));
        let s = sigma.as_f64();
        let f = Point::new(rng.gen_range(-1.0..1.0), rng.gen_range(0.3..1.5));
        let b = Point::new(rng.gen_range(-2.0..2.0), rng.gen_range(-1.0..2.0));
        let Ok(c) = cycle_from_focus(f, b, sigma, params) else { continue };
        let c = c.normalize().unwrap();
        let r2 = 2.0 * c.n * f.v - 2.0 * params.weight() * c.n * c.n;
        // Avoid r² ≈ 0 (square root not smooth) and the stationary case
        // where the radius does not vary with the pencil parameter.
        if r2.abs() < 0.05 || (f.v - 2.0 * params.weight() * c.n).abs() < 0.1 || f.dist(b) < 0.2 {
            skipped += 1;
            continue;
        }
        // Tangent to the σ-drawing of c at B.
        let grad = Point::new(2.0 * c.k * b.u - 2.0 * c.l, -2.0 * c.k * s * b.v - 2.0 * c.n);
        let gl = (grad.u * grad.u + grad.v * grad.v).sqrt();
        if gl < 1e-3 {
            skipped += 1;
            continue;
        }
        let tangent = Point::new(-grad.v / gl, grad.u / gl);
        let t: f64 = rng.gen_range(0.3..PI - 0.3);
        let other = Point::new(
            tangent.u * t.cos() - tangent.v * t.sin(),
            tangent.u * t.sin() + tangent.v * t.cos(),
        );
        let perp_t = is_perpendicular(f, b, tangent, LengthKind::FromFocus, sigma, params, cfg);
        let perp_o = is_perpendicular(f, b, other, LengthKind::FromFocus, sigma, params, cfg);
        let (Ok(perp_t), Ok(perp_o)) = (perp_t, perp_o) else {
            skipped += 1;
            continue;
        };
        n += 1;
        bad_perp += usize::from(!perp_t) + usize::from(perp_o);
        // The segment FB lies on a line s-orthogonal to c; a line through B
        // missing the focus is not.
        let line = Cycle::line_through(f, b);
        let miss = Cycle::line_through(b, Point::new(b.u + other.u, b.v + other.v));
        let fb_on_line = (b.u - f.u) * other.v - (b.v - f.v) * other.u;
        bad_sorth += usize::from(!is_s_orthogonal(&line, &c, params).unwrap());
        if fb_on_line.abs() > 1e-3 {
            bad_sorth += usize::from(is_s_orthogonal(&miss, &c, params).unwrap());
        }
    }
    (
        bad_perp == 0 && bad_sorth == 0,
        format!("l_f-perpendicular exactly along the s-orthogonal cycle: {bad_perp} perpendicularity and {bad_sorth} s-orthogonality mismatches in {n} configs ({skipped} skipped)"),
    )
}

fn criterion_7(rng: &mut TestRng) -> Outcome {
    let (a, da) = extremal_part(rng);
    let (b, db) = conformal_part(rng);
    let (c, dc) = focal_part(rng);
    Outcome::new(a && b && c, format!("metric suite: extremal {}, conformal {}, focal {}", ok(a), ok(b), ok(c)))
        .with(da)
        .with(db)
        .with(dc)
}

fn ok(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "failed"
    }
}

fn example_points() -> Vec<JetPoint> {
    vec![
        JetPoint::new(C64::from_polar(0.75, PI / 4.0), 3),
        JetPoint::new(C64::from_polar(2.0 / 3.0, 5.0 * PI / 6.0), 4),
        JetPoint::new(C64::from_polar(0.4, -3.0 * PI / 4.0), 1),
        JetPoint::new(C64::from_polar(0.6, -PI / 3.0), 2),
    ]
}

/// Polynomial with value `targets[i]` at `pts[i].lambda` and a zero of
/// `φ − φ(λ)` of exact order `orders[i]` there.
fn controlled_map(pts: &[JetPoint], targets: &[C64], orders: &[usize], lead: C64) -> HoloMap {
    let data: Vec<(C64, Vec<C64>)> = pts
        .iter()
        .zip(targets)
        .zip(orders)
        .map(|((p, &t), &d)| {
            let mut v = vec![t];
            v.extend(std::iter::repeat(C64::new(0.0, 0.0)).take(d - 1));
            v.push(lead);
            (p.lambda, v)
        })
        .collect();
    HoloMap::hermite(&data).unwrap()
}

fn spectrum_string(s: &JetSpectrum) -> String {
    let mut v: Vec<String> = s.points.iter().map(|p| format!("({:.3}{:+.3}i, {})", p.lambda.re, p.lambda.im, p.k)).collect();
    v.sort();
    v.join(" ")
}

/// Multiset equality with eigenvalues to `tol` and orders exact.
fn same_spectrum(a: &JetSpectrum, b: &JetSpectrum, tol: f64) -> bool {
    if a.points.len() != b.points.len() {
        return false;
    }
    let mut used = vec![false; b.points.len()];
    for p in &a.points {
        let hit = b.points.iter().enumerate().find(|(j, q)| !used[*j] && q.k == p.k && (q.lambda - p.lambda).norm() <= tol);
        match hit {
            Some((j, _)) => used[j] = true,
            None => return false,
        }
    }
    true
}

fn criterion_8(rng: &mut TestRng) -> Outcome {
    let start = Instant::now();
    let pts = example_points();
    let a = jordan_matrix(&pts);
    let targets: Vec<C64> = pts.iter().map(|p| p.lambda * 0.9).collect();
    let phi = controlled_map(&pts, &targets, &[1, 3, 2, 1], C64::new(0.5, 0.0));
    let jets = jet_spectrum(&a, 1e-7).unwrap();
    let got = jet_spectrum(&apply_poly(&phi, &a), 1e-7).unwrap();
    let mapped = spectral_map(&jets, &phi).unwrap();
    let orders: Vec<usize> = pts.iter().map(|p| {
        mapped.spectrum.points.iter().find(|q| (q.lambda - phi.eval(p.lambda)).norm() < 1e-9).map_or(0, |q| q.k)
    }).collect();
    let example_ok = same_spectrum(&got, &mapped.spectrum, 1e-6);
    let pattern_ok = orders == [3, 1, 1, 2];
    let jordan_ok = same_spectrum(&got, &jordan_image(&jets, &phi).unwrap(), 1e-6);

    let (mut n, mut agree, mut clamped, mut jordan_agree) = (0, 0, 0, 0);
    let mut first_miss = None;
    while n < 50 {
        let m = rng.gen_range(2..=3);
        let mut lam: Vec<C64> = vec![];
        while lam.len() < m {
            let z = C64::from_polar(rng.gen_range(0.1..0.8), rng.gen_range(-PI..PI));
            if lam.iter().all(|w| (w - z).norm() > 0.25) {
                lam.push(z);
            }
        }
        let pts: Vec<JetPoint> = lam.iter().map(|&l| JetPoint::new(l, rng.gen_range(1..=4))).collect();
        let orders: Vec<usize> = (0..m).map(|_| rng.gen_range(1..=3)).collect();
        let mut targets: Vec<C64> = vec![];
        while targets.len() < m {
            let z = C64::from_polar(rng.gen_range(0.0..0.8), rng.gen_range(-PI..PI));
            if targets.iter().all(|w| (w - z).norm() > 0.25) {
                targets.push(z);
            }
        }
        let phi = controlled_map(&pts, &targets, &orders, C64::from_polar(rng.gen_range(0.3..1.0), rng.gen_range(-PI..PI)));
        let a = jordan_matrix(&pts);
        let jets = JetSpectrum::new(pts.clone());
        let Ok(mapped) = spectral_map(&jets, &phi) else { continue };
        let Ok(got) = jet_spectrum(&apply_poly(&phi, &a), 1e-7) else { continue };
        n += 1;
        let image = jordan_image(&jets, &phi).unwrap();
        if same_spectrum(&got, &image, 1e-6) {
            jordan_agree += 1;
        } else if first_miss.is_none() {
            first_miss = Some(format!(
                "first Jordan-image miss: blocks {:?}, orders {orders:?}; numeric {} vs image {}",
                pts.iter().map(|p| p.k).collect::<Vec<_>>(),
                spectrum_string(&got),
                spectrum_string(&image)
            ));
        }
        if !mapped.clamped.is_empty() {
            clamped += 1;
            continue;
        }
        agree += usize::from(same_spectrum(&got, &mapped.spectrum, 1e-6));
    }
    let t = start.elapsed();
    let random_ok = agree == n - clamped;
    Outcome::new(
        example_ok && pattern_ok && random_ok && t < Duration::from_secs(30),
        format!(
            "spectral mapping: example {}, mapped orders {:?}, random {agree}/{} unclamped agree, {:.2}s (< 30s)",
            ok(example_ok),
            orders,
            n - clamped,
            t.as_secs_f64()
        ),
    )
    .with(format!("jet_spectrum(phi(a)): {}", spectrum_string(&got)))
    .with(format!("spectral_map:         {}", spectrum_string(&mapped.spectrum)))
    .with(format!("Jordan-structure image matches numerics: example {}, random {jordan_agree}/{n}", ok(jordan_ok)))
    .with(first_miss.unwrap_or_default())
}

fn random_contraction(rng: &mut TestRng, n: usize) -> SquareMatrix {
    let m = SquareMatrix::from_fn(n, n, |_, _| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)));
    let s = operator_norm(&m);
    m * C64::new(rng.gen_range(0.1..0.9) / s, 0.0)
}

fn random_su11(rng: &mut TestRng) -> Su11 {
    Su11::from_params(rng.gen_range(-PI..PI), rng.gen_range(0.0..1.2), rng.gen_range(-PI..PI))
}

/// `(ᾱa − β̄e)(αe − βa)⁻¹` and `(αe − βa)⁻¹`, written out.
fn action_oracle(g: &Su11, a: &SquareMatrix) -> (SquareMatrix, SquareMatrix) {
    let e = SquareMatrix::identity(a.nrows(), a.ncols());
    let den = (&e * g.alpha - a * g.beta).try_inverse().unwrap();
    ((a * g.alpha.conj() - &e * g.beta.conj()) * &den, den)
}

/// Product in SU(1,1) realised as matrices `(α, β̄; β, ᾱ)`. The action
/// above is the fractional action of the inverse of that matrix.
fn product(g1: &Su11, g2: &Su11) -> Su11 {
    Su11 {
        alpha: g1.alpha * g2.alpha + g1.beta.conj() * g2.beta,
        beta: g1.beta * g2.alpha + g1.alpha.conj() * g2.beta,
    }
}

fn criterion_9(rng: &mut TestRng) -> Outcome {
    let (mut cocycle, mut law, mut law_rev, mut lib) = (0.0f64, 0.0f64, 0.0f64, 0.0f64);
    for _ in 0..200 {
        let (g1, g2) = (random_su11(rng), random_su11(rng));
        let dim = rng.gen_range(1..=4);
        let a = random_contraction(rng, dim);
        let g12 = product(&g1, &g2);
        let (g1a, r1) = action_oracle(&g1, &a);
        let (_, r2) = action_oracle(&g2, &g1a);
        let (_, r12) = action_oracle(&g12, &a);
        // R(g₁,a)·R(g₂, g₁⁻¹a) = R(g₁g₂, a) with g₁⁻¹a the fractional
        // action of the inverse matrix, i.e. (ᾱa − β̄)(α − βa)⁻¹.
        cocycle = cocycle.max((&r1 * &r2 - &r12).norm() / r12.norm());
        lib = lib
            .max((resolvent(&g1, &a).unwrap() - &r1).norm() / r1.norm())
            .max((matrix_moebius(&g1, &a).unwrap() - &g1a).norm() / (1.0 + g1a.norm()))
            .max((g1.compose(&g2).alpha - g12.alpha).norm() + (g1.compose(&g2).beta - g12.beta).norm());
        let two = matrix_moebius(&g1, &matrix_moebius(&g2, &a).unwrap()).unwrap();
        law = law.max((&two - matrix_moebius(&g12, &a).unwrap()).norm() / (1.0 + two.norm()));
        law_rev = law_rev.max((&two - matrix_moebius(&product(&g2, &g1), &a).unwrap()).norm() / (1.0 + two.norm()));
    }
    Outcome::new(
        cocycle < 1e-9 && law < 1e-9 && lib < 1e-9,
        format!("cocycle error {cocycle:.1e}; action law mm(g1, mm(g2, a)) = mm(g1 g2, a) error {law:.1e} (both < 1e-9)"),
    )
    .with(format!("library vs written-out formulas: {lib:.1e}"))
    .with(format!("reversed law mm(g1, mm(g2, a)) = mm(g2 g1, a): error {law_rev:.1e}"))
}

fn criterion_10(rng: &mut TestRng) -> Outcome {
    let mut mono = 0.0f64;
    for deg in 0..=8 {
        let f = CircleFunction::from_fn(1024, |z| z.powi(deg)).unwrap();
        for _ in 0..40 {
            let u = C64::from_polar(rng.gen_range(0.0..=0.8), rng.gen_range(-PI..PI));
            mono = mono.max((cauchy_transform(&f, DiskPoint::new(u).unwrap()) - u.powi(deg)).norm());
        }
    }
    let mut taylor = 0.0f64;
    for _ in 0..20 {
        let a = C64::from_polar(rng.gen_range(0.0..0.9), rng.gen_range(-PI..PI));
        let da = DiskPoint::new(a).unwrap();
        let quad = taylor_coeffs_quadrature(da, 40, 1024).unwrap();
        let closed = taylor_coeffs(da, 40);
        for (j, q) in quad.iter().enumerate() {
            let v = (1.0 - a.norm_sqr()).sqrt() * a.conj().powi(j as i32);
            taylor = taylor.max((q - v).norm()).max((closed[j] - v).norm());
        }
    }
    let fns: [(&str, fn(C64) -> C64); 2] = [
        ("1/(1 - cayley(w)/2)", |w| 1.0 / (1.0 - 0.5 * cayley(w))),
        ("exp(iw)", |w| (C64::i() * w).exp()),
    ];
    let probes: Vec<C64> = [-1.0, -0.5, 0.0, 0.5, 1.0]
        .iter()
        .flat_map(|&x| [0.5, 1.0, 2.0, 3.0].map(|y| C64::new(x, y)))
        .collect();
    let mut min_order = f64::INFINITY;
    let mut lines = vec![];
    for (name, f) in fns {
        let errs: Vec<f64> = [0.1f64, 0.05, 0.025]
            .iter()
            .map(|&h| {
                let n = (4.0 / h).round() as usize + 1;
                let patch = HalfPlanePatch::sample(HalfPlanePatch::DEFAULT_BOUNDS, n, n, f);
                probes
                    .iter()
                    .map(|&z| {
                        let (i, j) = patch.index_of(z).unwrap();
                        dirac_residual(&patch, i, j).unwrap().norm()
                    })
                    .fold(0.0, f64::max)
            })
            .collect();
        let o1 = (errs[0] / errs[1]).log2();
        let o2 = (errs[1] / errs[2]).log2();
        min_order = min_order.min(o1).min(o2);
        lines.push(format!("{name}: residuals {:.2e} {:.2e} {:.2e}, orders {o1:.2} {o2:.2}", errs[0], errs[1], errs[2]));
    }
    let mut o = Outcome::new(
        mono < 1e-8 && taylor < 1e-10 && min_order >= 1.8,
        format!("analytic: monomials deg<=8 error {mono:.1e} (< 1e-8); V_n(a) error {taylor:.1e} (< 1e-10); Dirac order {min_order:.2} (>= 1.8)"),
    );
    for l in lines {
        o = o.with(l);
    }
    o
}

fn attr<'a>(line: &'a str, name: &str) -> Option<&'a str> {
    let key = format!("{name}=\"");
    let i = line.find(&key)? + key.len();
    let j = line[i..].find('"')? + i;
    Some(&line[i..j])
}

fn path_points(d: &str) -> Vec<(f64, f64)> {
    let nums: Vec<f64> = d
        .split(|c: char| c == 'M' || c == 'L' || c == 'Z' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse().unwrap())
        .collect();
    nums.chunks(2).map(|c| (c[0], c[1])).collect()
}

fn criterion_11() -> Outcome {
    let text = include_str!("../../../scenes/k_orbits.toml");
    let one = render(&Scene::parse(text).unwrap()).unwrap();
    let two = render(&Scene::parse(text).unwrap()).unwrap();
    let identical = one.as_bytes() == two.as_bytes();
    let [x0, x1, y0, y1] = [-2.5, 2.5, -0.5, 4.5];

    let (mut sigma, mut frame) = (0i32, (0.0, 0.0, 1.0));
    let (mut worst, mut paths, mut wrong) = (0.0f64, 0, vec![]);
    let mut seen = [0usize; 3];
    for line in one.lines() {
        if line.starts_with("<g id=\"panel-") {
            sigma = attr(line, "data-sigma").unwrap().parse().unwrap();
        } else if line.starts_with("<clipPath") {
            let f = |k| attr(line, k).unwrap().parse::<f64>().unwrap();
            frame = (f("x"), f("y"), f("width"));
        } else if line.starts_with("<path class=\"orbit\"") {
            let (ox, oy, size) = frame;
            let pts: Vec<Point> = path_points(attr(line, "d").unwrap())
                .into_iter()
                .map(|(x, y)| Point::new(x0 + (x - ox) * (x1 - x0) / size, y1 - (y - oy) * (y1 - y0) / size))
                .collect();
            if pts.len() < 12 {
                continue;
            }
            let (conic, res) = fit(&pts).unwrap();
            worst = worst.max(res);
            paths += 1;
            seen[(sigma + 1) as usize] += 1;
            let want = match sigma {
                -1 => ConicType::Circle,
                0 => ConicType::Parabola,
                _ => ConicType::Hyperbola,
            };
            // Six printed decimals leave ~1e-8 of noise in world units.
            let got = conic.classify_tol(1e-5);
            if got != want {
                wrong.push(format!("sigma={sigma}: {} instead of {}", got.name(), want.name()));
            }
        }
    }
    Outcome::new(
        identical && worst < 1e-6 && wrong.is_empty() && seen.iter().all(|&n| n >= 4),
        format!(
            "rendering: byte-identical {identical}; {paths} orbit paths (per sigma {seen:?}), conic fit residual {worst:.1e} (< 1e-6), {} misclassified",
            wrong.len()
        ),
    )
    .with(wrong.join("; "))
}

#[test]
fn acceptance() {
    let mut rng = sampling::rng(20240601);
    let results = vec![
        ("1", criterion_1(&mut rng)),
        ("2", criterion_2(&mut rng)),
        ("3", criterion_3(&mut rng)),
        ("4", criterion_4(&mut rng)),
        ("5", criterion_5(&mut rng)),
        ("6", criterion_6(&mut rng)),
        ("7", criterion_7(&mut rng)),
        ("8", criterion_8(&mut rng)),
        ("9", criterion_9(&mut rng)),
        ("10", criterion_10(&mut rng)),
        ("11", criterion_11()),
    ];
    for (id, o) in &results {
        report(id, o);
    }
    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.pass).map(|(id, _)| *id).collect();
    println!("acceptance: {}/{} criteria pass", results.len() - failed.len(), results.len());
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
