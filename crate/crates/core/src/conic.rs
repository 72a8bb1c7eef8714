//! Plane conics `ax² + bxy + cy² + dx + ey + f = 0`: least-squares fitting
//! and type classification, used to check drawn orbits.

use nalgebra::DMatrix;

use crate::cycle::{Cycle, Point};
use crate::hypercomplex::Sigma;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conic {
    pub coeffs: [f64; 6],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConicType {
    Circle,
    Ellipse,
    Parabola,
    Hyperbola,
    Line,
}

impl ConicType {
    pub fn name(self) -> &'static str {
        match self {
            ConicType::Circle => "circle",
            ConicType::Ellipse => "ellipse",
            ConicType::Parabola => "parabola",
            ConicType::Hyperbola => "hyperbola",
            ConicType::Line => "line",
        }
    }
}

impl Conic {
    pub fn from_cycle(c: &Cycle, sigma: Sigma) -> Self {
        Conic { coeffs: [c.k, 0.0, -sigma.as_f64() * c.k, -2.0 * c.l, -2.0 * c.n, c.m] }
    }

    pub fn eval(&self, p: Point) -> f64 {
        let [a, b, c, d, e, f] = self.coeffs;
        a * p.u * p.u + b * p.u * p.v + c * p.v * p.v + d * p.u + e * p.v + f
    }

    pub fn classify(&self) -> ConicType {
        self.classify_tol(1e-8)
    }

    /// As [`Conic::classify`], with `tol` bounding the normalised
    /// discriminant and circle defects; fitted data needs a looser value.
    pub fn classify_tol(&self, tol: f64) -> ConicType {
        let [a, b, c, d, e, _] = self.coeffs;
        let quad = (a * a + b * b + c * c).sqrt();
        let lin = (d * d + e * e).sqrt();
        if quad <= tol * (quad + lin) {
            return ConicType::Line;
        }
        let disc = (b * b - 4.0 * a * c) / (quad * quad);
        if disc.abs() <= tol {
            ConicType::Parabola
        } else if disc > 0.0 {
            ConicType::Hyperbola
        } else if b.abs() <= tol * quad && (a - c).abs() <= tol * quad {
            ConicType::Circle
        } else {
            ConicType::Ellipse
        }
    }
}

/// Least-squares conic through `points` (unit coefficient vector, smallest
/// right singular vector) and the largest scaled residual
/// `|Q(p)| / (1 + |p|²)`.
pub fn fit(points: &[Point]) -> Option<(Conic, f64)> {
    if points.len() < 5 {
        return None;
    }
    // Columns are scaled by a common length so the design matrix is balanced.
    let s = points.iter().fold(0.0f64, |m, p| m.max(p.u.abs()).max(p.v.abs())).max(1e-300);
    let rows = points.len().max(6);
    let mut m = DMatrix::zeros(rows, 6);
    for (i, p) in points.iter().enumerate() {
        let (x, y) = (p.u / s, p.v / s);
        let row = [x * x, x * y, y * y, x, y, 1.0];
        for (j, v) in row.iter().enumerate() {
            m[(i, j)] = *v;
        }
    }
    let svd = m.svd(false, true);
    let vt = svd.v_t?;
    let (idx, _) = svd.singular_values.iter().enumerate().min_by(|a, b| a.1.total_cmp(b.1))?;
    let v = vt.row(idx);
    let q = [v[0] / (s * s), v[1] / (s * s), v[2] / (s * s), v[3] / s, v[4] / s, v[5]];
    let norm = q.iter().map(|x| x * x).sum::<f64>().sqrt();
    let conic = Conic { coeffs: q.map(|x| x / norm) };
    let res = points
        .iter()
        .map(|p| conic.eval(*p).abs() / (1.0 + p.u * p.u + p.v * p.v))
        .fold(0.0, f64::max);
    Some((conic, res))
}
