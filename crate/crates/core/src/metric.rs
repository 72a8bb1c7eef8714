//! Distances and lengths built from cycles: the signed EPH distance, the
//! extremal diameter of the pencil through two points, radii of cycles with
//! a prescribed centre or focus, perpendicularity by a vanishing derivative,
//! and the conformal limit of length ratios under SL(2,R).

use crate::cycle::{Cycle, FsccParams, Point};
use crate::error::{Error, Result};
use crate::hypercomplex::{moebius, GroupElement, Sigma};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LengthKind {
    Distance,
    FromCentre(Sigma),
    FromFocus,
}

/// Finite-difference settings for [`is_perpendicular`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiffConfig {
    pub step: f64,
    pub confirm_step: f64,
    pub threshold: f64,
}

impl Default for DiffConfig {
    fn default() -> Self {
        DiffConfig { step: 1e-4, confirm_step: 1e-5, threshold: 1e-6 }
    }
}

/// `Δu² − σΔv²`, signed.
pub fn distance_sq(p: Point, q: Point, sigma: Sigma) -> f64 {
    let (du, dv) = (q.u - p.u, q.v - p.v);
    du * du - sigma.as_f64() * dv * dv
}

pub fn signed_sqrt(x: f64) -> f64 {
    x.signum() * x.abs().sqrt()
}

/// Cycles with `k = 1` through `p` and `q` in the σ-drawing, as
/// `(l, n, m) = x0 + t·d`.
fn pencil(p: Point, q: Point, sigma: Sigma) -> ([f64; 3], [f64; 3]) {
    let s = sigma.as_f64();
    let r1 = [-2.0 * p.u, -2.0 * p.v, 1.0];
    let r2 = [-2.0 * q.u, -2.0 * q.v, 1.0];
    let b = [-(p.u * p.u - s * p.v * p.v), -(q.u * q.u - s * q.v * q.v)];
    let dot = |a: &[f64; 3], c: &[f64; 3]| a[0] * c[0] + a[1] * c[1] + a[2] * c[2];
    // Minimum-norm solution x0 = Rᵀ (R Rᵀ)⁻¹ b.
    let (g11, g12, g22) = (dot(&r1, &r1), dot(&r1, &r2), dot(&r2, &r2));
    let det = g11 * g22 - g12 * g12;
    let y1 = (g22 * b[0] - g12 * b[1]) / det;
    let y2 = (g11 * b[1] - g12 * b[0]) / det;
    let x0 = [0, 1, 2].map(|i| y1 * r1[i] + y2 * r2[i]);
    let d = [
        r1[1] * r2[2] - r1[2] * r2[1],
        r1[2] * r2[0] - r1[0] * r2[2],
        r1[0] * r2[1] - r1[1] * r2[0],
    ];
    (x0, d)
}

/// The cycle of the pencil through `p`, `q` whose squared diameter
/// `4(l² − σ̆n² − m)` is extremal, with that squared diameter.
pub fn extremal_cycle(p: Point, q: Point, sigma: Sigma, sigma_breve: Sigma) -> Result<(Cycle, f64)> {
    let (x0, d) = pencil(p, q, sigma);
    let sb = sigma_breve.as_f64();
    let at = |t: f64| [x0[0] + t * d[0], x0[1] + t * d[1], x0[2] + t * d[2]];
    let diam = |t: f64| {
        let [l, n, m] = at(t);
        4.0 * (l * l - sb * n * n - m)
    };

    let (f0, fp, fm) = (diam(0.0), diam(1.0), diam(-1.0));
    let second = fp - 2.0 * f0 + fm;
    let first = 0.5 * (fp - fm);
    let scale = f0.abs().max(fp.abs()).max(fm.abs()).max(1e-300);
    if second.abs() <= 1e-12 * scale {
        if first.abs() <= 1e-12 * scale {
            let [l, n, m] = at(0.0);
            return Ok((Cycle::new(1.0, l, n, m), f0));
        }
        return Err(Error::NoExtremum);
    }
    // Minimise sign·f; for a maximum this flips the parabola upward.
    let sign = second.signum();
    let obj = |t: f64| sign * diam(t);
    let (a, b) = bracket(&obj, -1.0, 1.0)?;
    let t = golden_section(&obj, a, b, 1e-13);
    let [l, n, m] = at(t);
    Ok((Cycle::new(1.0, l, n, m), diam(t)))
}

/// Grows `[a, b]` until the midpoint beats both ends.
fn bracket(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64) -> Result<(f64, f64)> {
    for _ in 0..200 {
        let c = 0.5 * (a + b);
        let (fa, fb, fc) = (f(a), f(b), f(c));
        if fc <= fa && fc <= fb {
            return Ok((a, b));
        }
        let w = b - a;
        if fa < fb {
            a -= w;
        } else {
            b += w;
        }
    }
    Err(Error::NoExtremum)
}

fn golden_section(f: &dyn Fn(f64) -> f64, mut a: f64, mut b: f64, rel: f64) -> f64 {
    let r = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = b - r * (b - a);
    let mut x2 = a + r * (b - a);
    let (mut f1, mut f2) = (f(x1), f(x2));
    while (b - a).abs() > rel * (1.0 + a.abs() + b.abs()) {
        if f1 < f2 {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - r * (b - a);
            f1 = f(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + r * (b - a);
            f2 = f(x2);
        }
    }
    0.5 * (a + b)
}

/// Squared distance as the extremal squared diameter of cycles through both
/// points.
pub fn extremal_distance_sq(p: Point, q: Point, sigma: Sigma, sigma_breve: Sigma) -> Result<f64> {
    if p == q {
        return Ok(0.0);
    }
    Ok(extremal_cycle(p, q, sigma, sigma_breve)?.1)
}

/// Cycle centred (in the given sense) at `a` and passing through `b` in the
/// σ-drawing. For the p-centre the n-coordinate is free and set to zero.
pub fn cycle_from_centre(a: Point, b: Point, kind: Sigma, sigma: Sigma) -> Result<Cycle> {
    let l = a.u;
    let n = match kind {
        Sigma::Parabolic => {
            if a.v.abs() > 1e-12 * (1.0 + a.u.abs()) {
                return Err(Error::NoSuchCycle);
            }
            0.0
        }
        _ => -a.v / kind.as_f64(),
    };
    let m = 2.0 * l * b.u + 2.0 * n * b.v - (b.u * b.u - sigma.as_f64() * b.v * b.v);
    Ok(Cycle::new(1.0, l, n, m))
}

/// Cycle with σ̆-focus at `a` through `b`. Of the two admissible cycles the
/// one with smaller `|radius²|` is returned.
pub fn cycle_from_focus(a: Point, b: Point, sigma: Sigma, params: FsccParams) -> Result<Cycle> {
    let w = params.weight();
    let qa = w;
    let qb = -2.0 * (a.v + b.v);
    let qc = (b.u - a.u).powi(2) - sigma.as_f64() * b.v * b.v;
    let roots = crate::sampling::quadratic_roots(qa, qb, qc);
    let make = |n: f64| Cycle::new(1.0, a.u, n, a.u * a.u + w * n * n - 2.0 * n * a.v);
    roots
        .into_iter()
        .filter(|n| n.is_finite() && *n != 0.0)
        .map(|n| (n, (2.0 * n * a.v - 2.0 * w * n * n).abs()))
        .min_by(|x, y| x.1.total_cmp(&y.1))
        .map(|(n, _)| make(n))
        .ok_or(Error::NoSuchCycle)
}

/// Signed length of `AB`: the square root of the radius² of the defining
/// cycle, carrying the sign of radius².
pub fn length(a: Point, b: Point, kind: LengthKind, sigma: Sigma, params: FsccParams) -> Result<f64> {
    if a == b {
        return Ok(0.0);
    }
    let r2 = match kind {
        LengthKind::Distance => distance_sq(a, b, sigma),
        LengthKind::FromCentre(c) => cycle_from_centre(a, b, c, sigma)?.radius_sq(params)?,
        LengthKind::FromFocus => cycle_from_focus(a, b, sigma, params)?.radius_sq(params)?,
    };
    Ok(signed_sqrt(r2))
}

/// `AB` is perpendicular to the direction `cd` when `ε ↦ l(A, B + ε·cd)` is
/// stationary at 0, by central differences at two step sizes.
pub fn is_perpendicular(
    a: Point,
    b: Point,
    cd: Point,
    kind: LengthKind,
    sigma: Sigma,
    params: FsccParams,
    cfg: DiffConfig,
) -> Result<bool> {
    let (d1, d2) = length_derivative(a, b, cd, kind, sigma, params, cfg)?;
    Ok(d1.abs() < cfg.threshold && d2.abs() < cfg.threshold)
}

/// Central differences at `cfg.step` and `cfg.confirm_step`.
pub fn length_derivative(
    a: Point,
    b: Point,
    cd: Point,
    kind: LengthKind,
    sigma: Sigma,
    params: FsccParams,
    cfg: DiffConfig,
) -> Result<(f64, f64)> {
    if cd.u == 0.0 && cd.v == 0.0 {
        return Err(Error::NoSuchCycle);
    }
    let f = |e: f64| length(a, Point::new(b.u + e * cd.u, b.v + e * cd.v), kind, sigma, params);
    let d = |h: f64| -> Result<f64> { Ok((f(h)? - f(-h)?) / (2.0 * h)) };
    let (d1, d2) = (d(cfg.step)?, d(cfg.confirm_step)?);
    let (big, small) = (d1.abs().max(d2.abs()), d1.abs().min(d2.abs()));
    if big > cfg.threshold && big > 10.0 * small {
        return Err(Error::NonSmooth { d1, d2 });
    }
    Ok((d1, d2))
}

/// `l(g·y, g·(y + t·y′)) / l(y, y + t·y′)`.
pub fn conformal_ratio(
    g: &GroupElement,
    y: Point,
    yp: Point,
    t: f64,
    kind: LengthKind,
    sigma: Sigma,
    params: FsccParams,
) -> Result<f64> {
    let y2 = Point::new(y.u + t * yp.u, y.v + t * yp.v);
    let gy = Point::from_hyper(moebius(g, y.to_hyper(sigma))?);
    let gy2 = Point::from_hyper(moebius(g, y2.to_hyper(sigma))?);
    let num = length(gy, gy2, kind, sigma, params)?;
    let den = length(y, y2, kind, sigma, params)?;
    Ok(num / den)
}

/// The t → 0 limit of [`conformal_ratio`], Richardson-extrapolated from
/// `t`, `t/2`, `t/4`.
pub fn conformal_limit(
    g: &GroupElement,
    y: Point,
    yp: Point,
    t: f64,
    kind: LengthKind,
    sigma: Sigma,
    params: FsccParams,
) -> Result<f64> {
    let r = |h: f64| conformal_ratio(g, y, yp, h, kind, sigma, params);
    let (r0, r1, r2) = (r(t)?, r(t / 2.0)?, r(t / 4.0)?);
    let a = 2.0 * r1 - r0;
    let b = 2.0 * r2 - r1;
    Ok((4.0 * b - a) / 3.0)
}
