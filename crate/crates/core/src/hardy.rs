//! Numerics of the Hardy space on the unit circle: the Cauchy integral as a
//! pairing with coherent states `(u − z)⁻¹`, the discrete-series action ρ₁,
//! Taylor coefficients of the reproducing kernel, and the half-plane Dirac
//! operator `−2iy ∂/∂z̄` by finite differences.

use std::f64::consts::PI;

use num_complex::Complex64 as C64;
use rustfft::FftPlanner;

use crate::error::{Error, Result};
use crate::jet::Su11;

pub const DEFAULT_N: usize = 1024;

/// Samples at `z_j = e^{2πij/N}`.
#[derive(Debug, Clone, PartialEq)]
pub struct CircleFunction {
    pub samples: Vec<C64>,
}

pub fn node(j: usize, n: usize) -> C64 {
    C64::from_polar(1.0, 2.0 * PI * j as f64 / n as f64)
}

fn check_grid(n: usize) -> Result<()> {
    if n < 16 || !n.is_power_of_two() {
        return Err(Error::BadGrid(n));
    }
    Ok(())
}

impl CircleFunction {
    pub fn new(samples: Vec<C64>) -> Result<Self> {
        check_grid(samples.len())?;
        Ok(CircleFunction { samples })
    }

    pub fn from_fn(n: usize, f: impl Fn(C64) -> C64) -> Result<Self> {
        check_grid(n)?;
        Ok(CircleFunction { samples: (0..n).map(|j| f(node(j, n))).collect() })
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Root mean square over the circle.
    pub fn norm(&self) -> f64 {
        (self.samples.iter().map(|x| x.norm_sqr()).sum::<f64>() / self.len() as f64).sqrt()
    }

    pub fn max_diff(&self, o: &CircleFunction) -> f64 {
        self.samples.iter().zip(&o.samples).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max)
    }

    /// Fourier coefficients `c_k`, `k = 0..N` in FFT order.
    pub fn fourier(&self) -> Vec<C64> {
        let n = self.len();
        let mut buf = self.samples.clone();
        FftPlanner::new().plan_fft_forward(n).process(&mut buf);
        buf.iter().map(|c| c / n as f64).collect()
    }

    /// Trigonometric interpolant at a point `w` of the circle. The Nyquist
    /// term is split evenly between `±N/2`.
    pub fn interpolate(&self, w: C64, coeffs: &[C64]) -> C64 {
        let n = self.len();
        let w = w / w.norm();
        let half = n / 2;
        let mut acc = C64::new(0.0, 0.0);
        let mut pw = C64::new(1.0, 0.0);
        for c in coeffs.iter().take(half) {
            acc += c * pw;
            pw *= w;
        }
        let nyq = coeffs[half] * 0.5;
        acc += nyq * pw;
        let wi = w.conj();
        let mut pw = wi;
        for k in 1..=half {
            let c = if k == half { nyq } else { coeffs[n - k] };
            acc += c * pw;
            pw *= wi;
        }
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint(C64);

impl DiskPoint {
    pub fn new(u: C64) -> Result<Self> {
        if u.norm() > 1.0 - 1e-9 {
            return Err(Error::OutsideDisk(u.norm()));
        }
        Ok(DiskPoint(u))
    }

    pub fn value(&self) -> C64 {
        self.0
    }
}

/// Trapezoidal rule for `(1/2πi)∮ f(z)/(u − z) dz` exactly as written. For
/// boundary values of a polynomial `p` this is `−p(u)`.
pub fn cauchy_transform_raw(f: &CircleFunction, u: DiskPoint) -> C64 {
    let n = f.len();
    let u = u.value();
    let sum: C64 = (0..n)
        .map(|j| {
            let z = node(j, n);
            f.samples[j] * z / (u - z)
        })
        .sum();
    sum / n as f64
}

/// Cauchy integral with the classical orientation: `+p(u)` for a polynomial.
pub fn cauchy_transform(f: &CircleFunction, u: DiskPoint) -> C64 {
    -cauchy_transform_raw(f, u)
}

/// Samples of `z ↦ (u − z)⁻¹`.
pub fn coherent_state(u: DiskPoint, n: usize) -> Result<CircleFunction> {
    let u = u.value();
    CircleFunction::from_fn(n, |z| 1.0 / (u - z))
}

/// `(1/2πi)∮ f v dz` by the trapezoidal rule.
pub fn contour_pairing(f: &CircleFunction, v: &CircleFunction) -> C64 {
    let n = f.len();
    let sum: C64 = (0..n).map(|j| f.samples[j] * v.samples[j] * node(j, n)).sum();
    sum / n as f64
}

/// `[ρ₁(g)f](z) = (α − βz)⁻¹ f((ᾱz − β̄)/(α − βz))`, with `f` evaluated off
/// the grid by trigonometric interpolation.
pub fn rho1_apply(g: &Su11, f: &CircleFunction) -> Result<CircleFunction> {
    let d = g.alpha.norm_sqr() - g.beta.norm_sqr();
    if (d - 1.0).abs() > 1e-10 {
        return Err(Error::NotSu11(d));
    }
    let n = f.len();
    let coeffs = f.fourier();
    let samples = (0..n)
        .map(|j| {
            let z = node(j, n);
            let den = g.alpha - g.beta * z;
            f.interpolate(g.act(z), &coeffs) / den
        })
        .collect();
    Ok(CircleFunction { samples })
}

/// `Vₙ(a) = √(1 − |a|²) āⁿ⁻¹` for `n = 1..=count`.
pub fn taylor_coeffs(a: DiskPoint, count: usize) -> Vec<C64> {
    let a = a.value();
    let s = (1.0 - a.norm_sqr()).sqrt();
    let ab = a.conj();
    let mut out = Vec::with_capacity(count);
    let mut p = C64::new(s, 0.0);
    for _ in 0..count {
        out.push(p);
        p *= ab;
    }
    out
}

/// The same coefficients as inner products of
/// `√(1 − |a|²)/(1 − ā e^{iφ})` with `e^{i(n−1)φ}` on `n` nodes.
pub fn taylor_coeffs_quadrature(a: DiskPoint, count: usize, nodes: usize) -> Result<Vec<C64>> {
    let a = a.value();
    let s = (1.0 - a.norm_sqr()).sqrt();
    let f = CircleFunction::from_fn(nodes, |z| s / (1.0 - a.conj() * z))?;
    let c = f.fourier();
    Ok(c.into_iter().take(count).collect())
}

/// Uniform grid on `[x0, x1] × [y0, y1]` of the upper half-plane.
#[derive(Debug, Clone, PartialEq)]
pub struct HalfPlanePatch {
    pub x0: f64,
    pub x1: f64,
    pub y0: f64,
    pub y1: f64,
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<C64>,
}

impl HalfPlanePatch {
    pub const DEFAULT_BOUNDS: [f64; 4] = [-2.0, 2.0, 0.1, 4.1];
    pub const DEFAULT_SIZE: usize = 129;

    pub fn sample(bounds: [f64; 4], nx: usize, ny: usize, f: impl Fn(C64) -> C64) -> Self {
        let [x0, x1, y0, y1] = bounds;
        let mut values = Vec::with_capacity(nx * ny);
        for j in 0..ny {
            for i in 0..nx {
                values.push(f(C64::new(
                    x0 + (x1 - x0) * i as f64 / (nx - 1) as f64,
                    y0 + (y1 - y0) * j as f64 / (ny - 1) as f64,
                )));
            }
        }
        HalfPlanePatch { x0, x1, y0, y1, nx, ny, values }
    }

    pub fn hx(&self) -> f64 {
        (self.x1 - self.x0) / (self.nx - 1) as f64
    }

    pub fn hy(&self) -> f64 {
        (self.y1 - self.y0) / (self.ny - 1) as f64
    }

    pub fn point(&self, i: usize, j: usize) -> C64 {
        C64::new(self.x0 + self.hx() * i as f64, self.y0 + self.hy() * j as f64)
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.values[j * self.nx + i]
    }

    /// Grid indices of `z`, if it is a node.
    pub fn index_of(&self, z: C64) -> Option<(usize, usize)> {
        let fi = (z.re - self.x0) / self.hx();
        let fj = (z.im - self.y0) / self.hy();
        let (i, j) = (fi.round(), fj.round());
        if (fi - i).abs() > 1e-9 || (fj - j).abs() > 1e-9 || i < 0.0 || j < 0.0 {
            return None;
        }
        let (i, j) = (i as usize, j as usize);
        (i < self.nx && j < self.ny).then_some((i, j))
    }
}

/// `−2iy · ½(∂ₓ + i∂ᵧ)f` at node `(i, j)` by central differences. The
/// node must be at least two cells from the boundary.
pub fn dirac_residual(patch: &HalfPlanePatch, i: usize, j: usize) -> Result<C64> {
    if i < 2 || j < 2 || i + 2 >= patch.nx || j + 2 >= patch.ny {
        return Err(Error::OutOfPatch);
    }
    let fx = (patch.at(i + 1, j) - patch.at(i - 1, j)) / (2.0 * patch.hx());
    let fy = (patch.at(i, j + 1) - patch.at(i, j - 1)) / (2.0 * patch.hy());
    let dzbar = 0.5 * (fx + C64::i() * fy);
    let y = patch.point(i, j).im;
    Ok(C64::new(0.0, -2.0 * y) * dzbar)
}

/// Largest residual over nodes at least two cells inside.
pub fn max_dirac_residual(patch: &HalfPlanePatch) -> f64 {
    let mut m = 0.0f64;
    for j in 2..patch.ny - 2 {
        for i in 2..patch.nx - 2 {
            m = m.max(dirac_residual(patch, i, j).unwrap().norm());
        }
    }
    m
}
