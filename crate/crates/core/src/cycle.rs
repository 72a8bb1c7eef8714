//! The projective cycle space: quadruples `(k, l, n, m)` describing
//! `k(u² − σv²) − 2lu − 2nv + m = 0`, and their 2×2 matrix realisation
//! `(l + ῐsn, −m; k, −l + ῐsn)` over the σ̆-numbers.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hypercomplex::{GroupElement, HyperNumber, Sigma};

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Point {
    pub u: f64,
    pub v: f64,
}

impl Point {
    pub fn new(u: f64, v: f64) -> Self {
        Point { u, v }
    }

    pub fn dist(self, o: Point) -> f64 {
        (self.u - o.u).hypot(self.v - o.v)
    }

    pub fn to_hyper(self, sigma: Sigma) -> HyperNumber {
        HyperNumber::new(self.u, self.v, sigma)
    }

    pub fn from_hyper(z: HyperNumber) -> Self {
        Point::new(z.re, z.im)
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.u, self.v)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Cycle {
    pub k: f64,
    pub l: f64,
    pub n: f64,
    pub m: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FsccParams {
    pub sigma_breve: Sigma,
    #[serde(default = "one")]
    pub s: f64,
}

fn one() -> f64 {
    1.0
}

impl FsccParams {
    pub fn new(sigma_breve: Sigma) -> Self {
        FsccParams { sigma_breve, s: 1.0 }
    }

    pub fn with_s(sigma_breve: Sigma, s: f64) -> Self {
        FsccParams { sigma_breve, s }
    }

    /// `σ̆·s²`, the coefficient every n·n term picks up.
    pub fn weight(&self) -> f64 {
        self.sigma_breve.as_f64() * self.s * self.s
    }
}

impl Default for FsccParams {
    fn default() -> Self {
        FsccParams::new(Sigma::Elliptic)
    }
}

impl Cycle {
    pub const REAL_LINE: Cycle = Cycle { k: 0.0, l: 0.0, n: 1.0, m: 0.0 };
    pub const UNIT_CIRCLE: Cycle = Cycle { k: 1.0, l: 0.0, n: 0.0, m: -1.0 };

    pub fn new(k: f64, l: f64, n: f64, m: f64) -> Self {
        Cycle { k, l, n, m }
    }

    /// Circle with centre `c` and radius `r` in the elliptic drawing.
    pub fn circle(c: Point, r: f64) -> Self {
        Cycle::new(1.0, c.u, c.v, c.u * c.u + c.v * c.v - r * r)
    }

    /// Straight line through two points (a k = 0 cycle).
    pub fn line_through(p: Point, q: Point) -> Self {
        // -2lu - 2nv + m = 0 with normal (l, n) ⟂ q - p.
        let (du, dv) = (q.u - p.u, q.v - p.v);
        let l = dv / 2.0;
        let n = -du / 2.0;
        Cycle::new(0.0, l, n, 2.0 * (l * p.u + n * p.v))
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.k, self.l, self.n, self.m]
    }

    pub fn from_array(a: [f64; 4]) -> Self {
        Cycle::new(a[0], a[1], a[2], a[3])
    }

    pub fn scale(&self, t: f64) -> Self {
        Cycle::new(self.k * t, self.l * t, self.n * t, self.m * t)
    }

    pub fn norm(&self) -> f64 {
        self.as_array().iter().map(|x| x * x).sum::<f64>().sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.as_array().iter().all(|x| x.is_finite())
    }

    /// Left-hand side of the cycle equation at `p`.
    pub fn incidence(&self, p: Point, sigma: Sigma) -> f64 {
        self.k * (p.u * p.u - sigma.as_f64() * p.v * p.v) - 2.0 * self.l * p.u - 2.0 * self.n * p.v
            + self.m
    }

    /// `|incidence|` relative to the size of the terms entering it.
    pub fn incidence_residual(&self, p: Point, sigma: Sigma) -> f64 {
        let c = self.normalize().unwrap_or(*self);
        let scale = 1.0
            + c.k.abs() * (p.u * p.u + p.v * p.v)
            + 2.0 * (c.l * p.u).abs()
            + 2.0 * (c.n * p.v).abs()
            + c.m.abs();
        c.incidence(p, sigma).abs() / scale
    }

    pub fn to_matrix(&self, params: FsccParams) -> FsccMatrix {
        let sb = params.sigma_breve;
        let sn = params.s * self.n;
        FsccMatrix {
            e: [
                [HyperNumber::new(self.l, sn, sb), HyperNumber::new(-self.m, 0.0, sb)],
                [HyperNumber::new(self.k, 0.0, sb), HyperNumber::new(-self.l, sn, sb)],
            ],
            s: params.s,
        }
    }

    pub fn from_matrix(mat: &FsccMatrix) -> Result<Cycle> {
        mat.to_cycle()
    }

    pub fn determinant(&self, params: FsccParams) -> f64 {
        params.weight() * self.n * self.n - self.l * self.l + self.m * self.k
    }

    pub fn radius_sq(&self, params: FsccParams) -> Result<f64> {
        if self.k == 0.0 {
            return Err(Error::DegenerateCycle);
        }
        Ok(-self.determinant(params) / (self.k * self.k))
    }

    pub fn centre(&self, kind: Sigma) -> Result<Point> {
        if self.k == 0.0 {
            return Err(Error::DegenerateCycle);
        }
        Ok(Point::new(self.l / self.k, -kind.as_f64() * self.n / self.k))
    }

    /// σ̆-focus. The second coordinate is `(l² − mk + σ̆s²n²) / 2nk`, which
    /// puts the h-focus at the geometric focus of a parabola, the p-focus at
    /// its vertex and the e-focus at the foot of the directrix.
    pub fn focus(&self, params: FsccParams) -> Result<Point> {
        if self.k == 0.0 {
            return Err(Error::DegenerateCycle);
        }
        if self.n == 0.0 {
            return Err(Error::UndefinedFocus);
        }
        let num = self.l * self.l - self.m * self.k + params.weight() * self.n * self.n;
        Ok(Point::new(self.l / self.k, num / (2.0 * self.n * self.k)))
    }

    /// Real roots of `k u² − 2lu + m`, i.e. intersections with `v = 0`.
    pub fn roots(&self) -> Vec<f64> {
        let (a, b, c) = (self.k, -2.0 * self.l, self.m);
        if a.abs() < 1e-14 * self.norm() {
            if b == 0.0 {
                return vec![];
            }
            return vec![-c / b];
        }
        let disc = b * b - 4.0 * a * c;
        if disc < 0.0 {
            return vec![];
        }
        let q = -0.5 * (b + b.signum() * disc.sqrt());
        let (mut r1, mut r2) = if q == 0.0 { (0.0, 0.0) } else { (q / a, c / q) };
        if r1 > r2 {
            std::mem::swap(&mut r1, &mut r2);
        }
        vec![r1, r2]
    }

    pub fn normalize(&self) -> Result<Cycle> {
        let scale = self.as_array().iter().fold(0.0f64, |m, x| m.max(x.abs()));
        if scale == 0.0 {
            return Err(Error::ZeroCycle);
        }
        let tol = 1e-12 * scale;
        if self.k.abs() > tol {
            return Ok(self.scale(1.0 / self.k));
        }
        let lead = [self.l, self.n, self.m].into_iter().find(|x| x.abs() > tol).unwrap();
        let mut c = self.scale(1.0 / lead);
        c.k = 0.0;
        Ok(c)
    }

    /// Equality up to projective scale.
    pub fn approx_eq(&self, o: &Cycle, tol: f64) -> bool {
        self.projective_distance(o) <= tol
    }

    /// Smallest `‖a/‖a‖ ∓ b/‖b‖‖∞` over both signs.
    pub fn projective_distance(&self, o: &Cycle) -> f64 {
        let (na, nb) = (self.norm(), o.norm());
        if na == 0.0 || nb == 0.0 {
            return f64::INFINITY;
        }
        let a = self.scale(1.0 / na).as_array();
        let b = o.scale(1.0 / nb).as_array();
        let plus = (0..4).fold(0.0f64, |m, i| m.max((a[i] - b[i]).abs()));
        let minus = (0..4).fold(0.0f64, |m, i| m.max((a[i] + b[i]).abs()));
        plus.min(minus)
    }

    /// Image under `g` via `C ↦ gCg⁻¹`.
    pub fn transform(&self, g: &GroupElement, params: FsccParams) -> Cycle {
        let sb = params.sigma_breve;
        let gm = FsccMatrix::real(g.a, g.b, g.c, g.d, sb, params.s);
        let gi = g.inverse();
        let gim = FsccMatrix::real(gi.a, gi.b, gi.c, gi.d, sb, params.s);
        let prod = gm.mul(&self.to_matrix(params)).mul(&gim);
        prod.to_cycle().expect("similarity preserves the FSCc shape")
    }
}

impl fmt::Display for Cycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {})", self.k, self.l, self.n, self.m)
    }
}

pub fn incidence(c: &Cycle, p: Point, sigma: Sigma) -> f64 {
    c.incidence(p, sigma)
}

pub fn to_matrix(c: &Cycle, params: FsccParams) -> FsccMatrix {
    c.to_matrix(params)
}

pub fn from_matrix(mat: &FsccMatrix) -> Result<Cycle> {
    mat.to_cycle()
}

pub fn transform(c: &Cycle, g: &GroupElement, params: FsccParams) -> Cycle {
    c.transform(g, params)
}

pub fn centre(c: &Cycle, kind: Sigma) -> Result<Point> {
    c.centre(kind)
}

pub fn focus(c: &Cycle, params: FsccParams) -> Result<Point> {
    c.focus(params)
}

pub fn determinant(c: &Cycle, params: FsccParams) -> f64 {
    c.determinant(params)
}

pub fn radius_sq(c: &Cycle, params: FsccParams) -> Result<f64> {
    c.radius_sq(params)
}

pub fn normalize(c: &Cycle) -> Result<Cycle> {
    c.normalize()
}

/// `(1, u, v, u² − σ̆v²)`: determinant zero for every point.
pub fn zero_radius_at(p: Point, params: FsccParams) -> Cycle {
    let sb = params.sigma_breve.as_f64();
    Cycle::new(1.0, p.u, p.v, p.u * p.u - sb * p.v * p.v)
}

/// Cycle of the rotation-subgroup orbit through `(0, t)` in the σ-plane.
pub fn k_orbit_cycle(t: f64, sigma: Sigma) -> Cycle {
    Cycle::new(1.0, 0.0, (1.0 - sigma.as_f64() * t * t) / (2.0 * t), 1.0)
}

/// 2×2 matrix over the σ̆-numbers. `s` is kept so the quadruple can be read
/// back from the imaginary diagonal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FsccMatrix {
    pub e: [[HyperNumber; 2]; 2],
    pub s: f64,
}

impl FsccMatrix {
    pub fn real(a: f64, b: f64, c: f64, d: f64, sb: Sigma, s: f64) -> Self {
        let r = |x| HyperNumber::real(x, sb);
        FsccMatrix { e: [[r(a), r(b)], [r(c), r(d)]], s }
    }

    pub fn sigma_breve(&self) -> Sigma {
        self.e[0][0].sigma
    }

    pub fn mul(&self, o: &FsccMatrix) -> FsccMatrix {
        let mut e = [[HyperNumber::real(0.0, self.sigma_breve()); 2]; 2];
        for (i, row) in e.iter_mut().enumerate() {
            for (j, x) in row.iter_mut().enumerate() {
                *x = self.e[i][0] * o.e[0][j] + self.e[i][1] * o.e[1][j];
            }
        }
        FsccMatrix { e, s: self.s }
    }

    pub fn trace(&self) -> HyperNumber {
        self.e[0][0] + self.e[1][1]
    }

    pub fn det(&self) -> HyperNumber {
        self.e[0][0] * self.e[1][1] - self.e[0][1] * self.e[1][0]
    }

    pub fn scale(&self, t: f64) -> FsccMatrix {
        let mut out = *self;
        for row in out.e.iter_mut() {
            for x in row.iter_mut() {
                *x = x.scale(t);
            }
        }
        out
    }

    /// Reads `(k, l, n, m)` back, rejecting matrices of the wrong shape.
    pub fn to_cycle(&self) -> Result<Cycle> {
        let [[a, b], [c, d]] = self.e;
        let size = [a, b, c, d].iter().fold(0.0f64, |m, x| m.max(x.re.abs()).max(x.im.abs()));
        let tol = 1e-9 * size.max(1e-300);
        if (a.re + d.re).abs() > tol {
            return Err(Error::NotFscc("diagonal real parts are not opposite".into()));
        }
        if (a.im - d.im).abs() > tol {
            return Err(Error::NotFscc("diagonal imaginary parts differ".into()));
        }
        if b.im.abs() > tol || c.im.abs() > tol {
            return Err(Error::NotFscc("off-diagonal entries are not real".into()));
        }
        if self.s == 0.0 {
            return Err(Error::NotFscc("s = 0".into()));
        }
        let l = 0.5 * (a.re - d.re);
        let n = 0.5 * (a.im + d.im) / self.s;
        Ok(Cycle::new(c.re, l, n, -b.re))
    }
}
