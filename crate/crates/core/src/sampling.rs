//! Seeded generators shared by the verification suites and tests.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cycle::{Cycle, Point};
use crate::hypercomplex::{GroupElement, Sigma};

pub type TestRng = ChaCha8Rng;

pub fn rng(seed: u64) -> TestRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `(a, b, c)` uniform in `[−2, 2]`, `d = (1 + bc)/a`, rejecting `|a| < 0.1`.
pub fn group_element<R: Rng>(rng: &mut R) -> GroupElement {
    loop {
        let a: f64 = rng.gen_range(-2.0..2.0);
        if a.abs() < 0.1 {
            continue;
        }
        let b: f64 = rng.gen_range(-2.0..2.0);
        let c: f64 = rng.gen_range(-2.0..2.0);
        return GroupElement { a, b, c, d: (1.0 + b * c) / a };
    }
}

pub fn point<R: Rng>(rng: &mut R, r: f64) -> Point {
    Point::new(rng.gen_range(-r..r), rng.gen_range(-r..r))
}

pub fn sigma<R: Rng>(rng: &mut R) -> Sigma {
    Sigma::ALL[rng.gen_range(0..3)]
}

/// Entries uniform in `[−2, 2]`.
pub fn cycle<R: Rng>(rng: &mut R) -> Cycle {
    Cycle::new(
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
        rng.gen_range(-2.0..2.0),
    )
}

/// Random cycle with `|k| ≥ 0.2` and `|n| ≥ 0.2`.
pub fn proper_cycle<R: Rng>(rng: &mut R) -> Cycle {
    loop {
        let c = cycle(rng);
        if c.k.abs() >= 0.2 && c.n.abs() >= 0.2 {
            return c;
        }
    }
}

/// Random circle of the elliptic drawing.
pub fn circle<R: Rng>(rng: &mut R) -> (Point, f64) {
    (point(rng, 3.0), rng.gen_range(0.2..3.0))
}

/// Up to `count` points on the σ-drawing of `c`, found by fixing one
/// coordinate at random and solving the cycle equation for the other.
pub fn incident_points<R: Rng>(rng: &mut R, c: &Cycle, sigma: Sigma, count: usize) -> Vec<Point> {
    let s = sigma.as_f64();
    let mut out = Vec::with_capacity(count);
    for _ in 0..count * 20 {
        if out.len() == count {
            break;
        }
        let t: f64 = rng.gen_range(-3.0..3.0);
        let solve_for_v = rng.gen_bool(0.5);
        // a x² + b x + c0 = 0 in the free coordinate x.
        let (a, b, c0) = if solve_for_v {
            (-c.k * s, -2.0 * c.n, c.k * t * t - 2.0 * c.l * t + c.m)
        } else {
            (c.k, -2.0 * c.l, -c.k * s * t * t - 2.0 * c.n * t + c.m)
        };
        let roots = quadratic_roots(a, b, c0);
        if roots.is_empty() {
            continue;
        }
        let x = roots[rng.gen_range(0..roots.len())];
        if !x.is_finite() || x.abs() > 50.0 {
            continue;
        }
        out.push(if solve_for_v { Point::new(t, x) } else { Point::new(x, t) });
    }
    out
}

pub fn quadratic_roots(a: f64, b: f64, c: f64) -> Vec<f64> {
    let scale = a.abs().max(b.abs()).max(c.abs());
    if scale == 0.0 {
        return vec![];
    }
    if a.abs() < 1e-12 * scale {
        if b.abs() < 1e-12 * scale {
            return vec![];
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + if b >= 0.0 { disc.sqrt() } else { -disc.sqrt() });
    if q == 0.0 {
        return vec![0.0];
    }
    vec![q / a, c / q]
}
