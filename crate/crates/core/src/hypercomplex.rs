//! Elliptic, parabolic and hyperbolic numbers `x + ιy` with `ι² = σ`, and the
//! action of SL(2,R) on them by linear-fractional maps.

use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Square of the imaginary unit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub enum Sigma {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl Sigma {
    pub const ALL: [Sigma; 3] = [Sigma::Elliptic, Sigma::Parabolic, Sigma::Hyperbolic];

    pub fn value(self) -> i8 {
        match self {
            Sigma::Elliptic => -1,
            Sigma::Parabolic => 0,
            Sigma::Hyperbolic => 1,
        }
    }

    pub fn as_f64(self) -> f64 {
        self.value() as f64
    }

    /// Heaviside sign: +1 for σ ≥ 0, −1 otherwise.
    pub fn chi(self) -> f64 {
        heaviside(self.as_f64())
    }

    pub fn letter(self) -> char {
        match self {
            Sigma::Elliptic => 'e',
            Sigma::Parabolic => 'p',
            Sigma::Hyperbolic => 'h',
        }
    }
}

pub fn heaviside(t: f64) -> f64 {
    if t >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

impl TryFrom<i64> for Sigma {
    type Error = Error;
    fn try_from(v: i64) -> Result<Self> {
        match v {
            -1 => Ok(Sigma::Elliptic),
            0 => Ok(Sigma::Parabolic),
            1 => Ok(Sigma::Hyperbolic),
            other => Err(Error::InvalidSigma(other)),
        }
    }
}

impl From<Sigma> for i64 {
    fn from(s: Sigma) -> i64 {
        s.value() as i64
    }
}

impl fmt::Display for Sigma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HyperNumber {
    pub re: f64,
    pub im: f64,
    pub sigma: Sigma,
}

impl HyperNumber {
    pub fn new(re: f64, im: f64, sigma: Sigma) -> Self {
        HyperNumber { re, im, sigma }
    }

    pub fn real(re: f64, sigma: Sigma) -> Self {
        HyperNumber::new(re, 0.0, sigma)
    }

    pub fn unit(sigma: Sigma) -> Self {
        HyperNumber::new(0.0, 1.0, sigma)
    }

    pub fn conj(self) -> Self {
        HyperNumber::new(self.re, -self.im, self.sigma)
    }

    /// `x² − σy²`, which is `z·z̄`. Signed for σ = +1.
    pub fn norm_sq(self) -> f64 {
        self.re * self.re - self.sigma.as_f64() * self.im * self.im
    }

    pub fn abs_sq(self) -> f64 {
        self.re * self.re + self.im * self.im
    }

    pub fn scale(self, t: f64) -> Self {
        HyperNumber::new(self.re * t, self.im * t, self.sigma)
    }

    pub fn is_finite(self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }

    pub fn try_add(self, o: Self) -> Result<Self> {
        same_sigma(self, o)?;
        Ok(self + o)
    }

    pub fn try_mul(self, o: Self) -> Result<Self> {
        same_sigma(self, o)?;
        Ok(self * o)
    }

    pub fn inv(self) -> Result<Self> {
        self.inv_tol(1e-12 * (1.0 + self.abs_sq()))
    }

    pub fn inv_tol(self, tol: f64) -> Result<Self> {
        let n = self.norm_sq();
        if n.abs() < tol {
            return Err(Error::ZeroDivisor { norm: n });
        }
        Ok(self.conj().scale(1.0 / n))
    }

    pub fn div(self, o: Self) -> Result<Self> {
        same_sigma(self, o)?;
        Ok(self * o.inv()?)
    }

    pub fn dist(self, o: Self) -> f64 {
        ((self.re - o.re).powi(2) + (self.im - o.im).powi(2)).sqrt()
    }
}

fn same_sigma(a: HyperNumber, b: HyperNumber) -> Result<()> {
    if a.sigma != b.sigma {
        return Err(Error::SigmaMismatch(a.sigma.value(), b.sigma.value()));
    }
    Ok(())
}

pub fn mul(a: HyperNumber, b: HyperNumber) -> Result<HyperNumber> {
    a.try_mul(b)
}

pub fn inv(a: HyperNumber) -> Result<HyperNumber> {
    a.inv()
}

// The operator impls assume equal σ and panic otherwise; fallible callers
// go through `try_mul`/`try_add`.
impl Add for HyperNumber {
    type Output = HyperNumber;
    fn add(self, o: Self) -> Self {
        assert_eq!(self.sigma, o.sigma, "sigma mismatch");
        HyperNumber::new(self.re + o.re, self.im + o.im, self.sigma)
    }
}

impl Sub for HyperNumber {
    type Output = HyperNumber;
    fn sub(self, o: Self) -> Self {
        assert_eq!(self.sigma, o.sigma, "sigma mismatch");
        HyperNumber::new(self.re - o.re, self.im - o.im, self.sigma)
    }
}

impl Mul for HyperNumber {
    type Output = HyperNumber;
    fn mul(self, o: Self) -> Self {
        assert_eq!(self.sigma, o.sigma, "sigma mismatch");
        let s = self.sigma.as_f64();
        HyperNumber::new(
            self.re * o.re + s * self.im * o.im,
            self.re * o.im + o.re * self.im,
            self.sigma,
        )
    }
}

impl Neg for HyperNumber {
    type Output = HyperNumber;
    fn neg(self) -> Self {
        HyperNumber::new(-self.re, -self.im, self.sigma)
    }
}

impl fmt::Display for HyperNumber {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{:+}ι (σ={})", self.re, self.im, self.sigma)
    }
}

/// Real 2×2 matrix of unit determinant, `(a b; c d)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GroupElement {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl GroupElement {
    pub const IDENTITY: GroupElement = GroupElement { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if (det - 1.0).abs() > 1e-12 {
            return Err(Error::NotUnimodular(det));
        }
        Ok(GroupElement { a, b, c, d })
    }

    /// Rescales a matrix of positive determinant into SL(2,R).
    pub fn normalized(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        let det = a * d - b * c;
        if !(det > 0.0) {
            return Err(Error::NotUnimodular(det));
        }
        let r = det.sqrt();
        Ok(GroupElement { a: a / r, b: b / r, c: c / r, d: d / r })
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn shift(nu: f64) -> Self {
        GroupElement { a: 1.0, b: nu, c: 0.0, d: 1.0 }
    }

    pub fn dilation(alpha: f64) -> Self {
        GroupElement { a: alpha, b: 0.0, c: 0.0, d: 1.0 / alpha }
    }

    pub fn rotation(phi: f64) -> Self {
        let (s, c) = phi.sin_cos();
        GroupElement { a: c, b: s, c: -s, d: c }
    }

    pub fn compose(&self, o: &GroupElement) -> GroupElement {
        GroupElement {
            a: self.a * o.a + self.b * o.c,
            b: self.a * o.b + self.b * o.d,
            c: self.c * o.a + self.d * o.c,
            d: self.c * o.b + self.d * o.d,
        }
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement { a: self.d, b: -self.b, c: -self.c, d: self.a }
    }

    pub fn max_diff(&self, o: &GroupElement) -> f64 {
        [self.a - o.a, self.b - o.b, self.c - o.c, self.d - o.d]
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()))
    }
}

impl Mul for GroupElement {
    type Output = GroupElement;
    fn mul(self, o: Self) -> Self {
        self.compose(&o)
    }
}

pub fn moebius(g: &GroupElement, z: HyperNumber) -> Result<HyperNumber> {
    let s = z.sigma;
    let num = HyperNumber::real(g.a, s) * z + HyperNumber::real(g.b, s);
    let den = HyperNumber::real(g.c, s) * z + HyperNumber::real(g.d, s);
    let n = den.norm_sq();
    if n.abs() < 1e-12 * (1.0 + z.abs_sq()) {
        return Err(Error::ZeroDivisor { norm: n });
    }
    Ok(num * den.conj().scale(1.0 / n))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IwasawaFactors {
    pub alpha: f64,
    pub nu: f64,
    pub phi: f64,
}

impl IwasawaFactors {
    pub fn a(&self) -> GroupElement {
        GroupElement::dilation(self.alpha)
    }

    pub fn n(&self) -> GroupElement {
        GroupElement::shift(self.nu)
    }

    pub fn k(&self) -> GroupElement {
        GroupElement::rotation(self.phi)
    }

    pub fn recompose(&self) -> GroupElement {
        self.a() * self.n() * self.k()
    }
}

/// `g = A(α)·N(ν)·K(φ)` with `K(φ) = (cos φ, sin φ; −sin φ, cos φ)`.
pub fn iwasawa(g: &GroupElement) -> IwasawaFactors {
    let r = g.c.hypot(g.d);
    let alpha = 1.0 / r;
    let mut phi = (-g.c).atan2(g.d);
    if phi <= -PI {
        phi = PI;
    }
    let (s, c) = phi.sin_cos();
    let nu = (-g.a * s + g.b * c) / alpha;
    IwasawaFactors { alpha, nu, phi }
}

/// Orbit of `z0` under the rotation subgroup; `None` marks angles where the
/// image is at infinity.
pub fn k_orbit(z0: HyperNumber, phis: &[f64]) -> Vec<Option<HyperNumber>> {
    phis.iter()
        .map(|&phi| moebius(&GroupElement::rotation(phi), z0).ok())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn h(re: f64, im: f64, s: Sigma) -> HyperNumber {
        HyperNumber::new(re, im, s)
    }

    #[test]
    fn unit_squares_to_sigma() {
        for s in Sigma::ALL {
            let i2 = mul(HyperNumber::unit(s), HyperNumber::unit(s)).unwrap();
            assert_eq!(i2, h(s.as_f64(), 0.0, s));
        }
    }

    #[test]
    fn double_number_product() {
        let p = mul(h(1.0, 2.0, Sigma::Hyperbolic), h(3.0, 1.0, Sigma::Hyperbolic)).unwrap();
        assert_eq!((p.re, p.im), (5.0, 7.0));
    }

    #[test]
    fn mismatched_sigma_rejected() {
        let r = mul(h(1.0, 0.0, Sigma::Elliptic), h(1.0, 0.0, Sigma::Parabolic));
        assert!(matches!(r, Err(Error::SigmaMismatch(-1, 0))));
    }

    #[test]
    fn inverses() {
        for s in Sigma::ALL {
            assert_eq!(inv(h(2.0, 0.0, s)).unwrap(), h(0.5, 0.0, s));
        }
        assert_eq!(inv(h(1.0, 1.0, Sigma::Parabolic)).unwrap(), h(1.0, -1.0, Sigma::Parabolic));
        assert!(matches!(inv(h(1.0, 1.0, Sigma::Hyperbolic)), Err(Error::ZeroDivisor { .. })));
        assert!(inv(h(0.0, 3.0, Sigma::Parabolic)).is_err());
    }

    #[test]
    fn shift_and_dilation() {
        let z = h(0.3, 0.7, Sigma::Parabolic);
        let w = moebius(&GroupElement::shift(2.0), z).unwrap();
        assert!((w.re - 2.3).abs() < 1e-15 && (w.im - 0.7).abs() < 1e-15);
        let w = moebius(&GroupElement::dilation(3.0), z).unwrap();
        assert!((w.re - 2.7).abs() < 1e-14 && (w.im - 6.3).abs() < 1e-14);
    }

    #[test]
    fn elliptic_unit_is_k_fixed() {
        let z0 = HyperNumber::unit(Sigma::Elliptic);
        let phis: Vec<f64> = (0..12).map(|j| j as f64 * 0.5).collect();
        for w in k_orbit(z0, &phis) {
            assert!(w.unwrap().dist(z0) < 1e-14);
        }
    }

    #[test]
    fn iwasawa_fixed_points() {
        let f = iwasawa(&GroupElement::IDENTITY);
        assert_eq!((f.alpha, f.nu, f.phi), (1.0, 0.0, 0.0));
        let f = iwasawa(&GroupElement::rotation(2.5));
        assert!((f.alpha - 1.0).abs() < 1e-15 && f.nu.abs() < 1e-15 && (f.phi - 2.5).abs() < 1e-15);
        let f = iwasawa(&GroupElement::rotation(PI));
        assert_eq!(f.phi, PI);
    }

    #[test]
    fn sigma_parses_from_integers() {
        assert_eq!(Sigma::try_from(-1).unwrap(), Sigma::Elliptic);
        assert!(Sigma::try_from(2).is_err());
    }
}
