//! Joint invariants of pairs of cycles: the trace pairing and the
//! orthogonality it defines, reflection in a cycle, the asymmetric
//! s-orthogonality, and the two ghost cycles that turn both relations into
//! ordinary tangent orthogonality.

use crate::cycle::{Cycle, FsccParams};
use crate::error::{Error, Result};
use crate::hypercomplex::Sigma;

pub use crate::hypercomplex::heaviside;

pub const ORTHO_TOL: f64 = 1e-9;

/// `2l₁l₂ − 2σ̆s²n₁n₂ − m₁k₂ − m₂k₁` on the raw quadruples.
///
/// This is `Re tr(C₁ C̄₂)` where the bar flips the sign of the ῐ part. The
/// plain product `tr(C₁C₂)` carries `+2σ̆s²n₁n₂`, which does not give the
/// Euclidean relation `|c₁ − c₂|² = r₁² + r₂²` for circles.
pub fn bilinear(c1: &Cycle, c2: &Cycle, params: FsccParams) -> f64 {
    2.0 * c1.l * c2.l - 2.0 * params.weight() * c1.n * c2.n - c1.m * c2.k - c2.m * c1.k
}

/// Real part of the uncorrected matrix trace `tr(C₁C₂)`.
pub fn trace_product(c1: &Cycle, c2: &Cycle, params: FsccParams) -> f64 {
    c1.to_matrix(params).mul(&c2.to_matrix(params)).trace().re
}

/// The bilinear form evaluated on normalized representatives.
pub fn pairing(c1: &Cycle, c2: &Cycle, params: FsccParams) -> Result<f64> {
    Ok(bilinear(&c1.normalize()?, &c2.normalize()?, params))
}

pub fn is_orthogonal(c1: &Cycle, c2: &Cycle, params: FsccParams) -> Result<bool> {
    let (a, b) = (c1.normalize()?, c2.normalize()?);
    Ok(bilinear(&a, &b, params).abs() < ORTHO_TOL * a.norm() * b.norm())
}

/// Parameters of the "usual" orthogonality of a σ-drawing: σ̆ = χ(σ), s = 1.
pub fn standard_params(sigma: Sigma) -> FsccParams {
    let sb = if sigma.chi() > 0.0 { Sigma::Hyperbolic } else { Sigma::Elliptic };
    FsccParams::new(sb)
}

/// Reflection of `c` in `mirror`: the cycle of `C·X̄·C`, where `X̄` is the
/// matrix of `c` with its ῐ part negated. Since `C̄C = −det(C)·I` this is an
/// involution up to scale whenever `det(C) ≠ 0`.
pub fn reflect(mirror: &Cycle, c: &Cycle, params: FsccParams) -> Cycle {
    reflect_literal(mirror, &conjugate(c), params)
}

/// The cycle `(k, l, −n, m)`, whose matrix is the ῐ-conjugate.
pub fn conjugate(c: &Cycle) -> Cycle {
    Cycle::new(c.k, c.l, -c.n, c.m)
}

/// Cycle of the plain product `C·X·C`.
pub fn reflect_literal(mirror: &Cycle, c: &Cycle, params: FsccParams) -> Cycle {
    let cm = mirror.to_matrix(params);
    let prod = cm.mul(&c.to_matrix(params)).mul(&cm);
    prod.to_cycle().expect("C X C keeps the FSCc shape")
}

/// Closed form of [`reflect_literal`]: with `μ = l² − mk` and
/// `τ = 2l·l' − m·k' − m'·k`, the traceless part is
/// `(τ + 2σ̆s²nn')M + det(C)·M'` and the new n is `n'(μ + σ̆s²n²) + nτ`.
pub fn reflect_closed(mirror: &Cycle, c: &Cycle, params: FsccParams) -> Cycle {
    let (w, y) = (params.weight(), mirror);
    let mu = y.l * y.l - y.m * y.k;
    let tau = 2.0 * y.l * c.l - y.m * c.k - c.m * y.k;
    let a = tau + 2.0 * w * y.n * c.n;
    let det = y.determinant(params);
    Cycle::new(
        a * y.k + det * c.k,
        a * y.l + det * c.l,
        c.n * (mu + w * y.n * y.n) + y.n * tau,
        a * y.m + det * c.m,
    )
}

/// Literal `Re tr(C X C R)` with `R` the real line.
pub fn s_orthogonality_trace(x: &Cycle, c: &Cycle, params: FsccParams) -> f64 {
    let r = Cycle::REAL_LINE.to_matrix(params);
    let cm = c.to_matrix(params);
    cm.mul(&x.to_matrix(params)).mul(&cm).mul(&r).trace().re
}

/// n-component of `C·X·C`. The trace against the real line is `2σ̆s²`
/// times this, so its zero set is the same whenever σ̆ ≠ 0,
/// and it stays informative for σ̆ = 0.
pub fn s_orthogonality_residual(x: &Cycle, c: &Cycle, params: FsccParams) -> f64 {
    let w = params.weight();
    let mu = c.l * c.l - c.m * c.k;
    let tau = 2.0 * c.l * x.l - c.m * x.k - x.m * c.k;
    x.n * (mu + w * c.n * c.n) + c.n * tau
}

/// `x` is s-orthogonal to `c` when `tr(C·X·C·R) = 0` for the real line `R`.
/// Not symmetric.
pub fn is_s_orthogonal(x: &Cycle, c: &Cycle, params: FsccParams) -> Result<bool> {
    let (xa, ca) = (x.normalize()?, c.normalize()?);
    let r = s_orthogonality_residual(&xa, &ca, params);
    Ok(r.abs() < ORTHO_TOL * xa.norm() * ca.norm() * ca.norm())
}

/// Ghost of `c` for the σ-drawing: the cycle whose usual orthogonality
/// matches σ̆-orthogonality to `c`. It keeps `k`, `l`, `m` (hence the roots)
/// and has its χ(σ)-centre at the σ̆-centre of `c`, which forces
/// `n̂ = σ̆s²χ(σ)·n`.
pub fn ghost(c: &Cycle, sigma: Sigma, params: FsccParams) -> Result<Cycle> {
    if c.k == 0.0 {
        return Err(Error::DegenerateCycle);
    }
    Ok(Cycle::new(c.k, c.l, params.weight() * sigma.chi() * c.n, c.m))
}

/// s-ghost of `c`: `(nk, nl, −(l² − mk + σ̆s²n²)/2χ(σ), nm)`. Its usual
/// pairing with any `x` equals the n-component of `C·X·C`. Its χ(σ)-centre
/// is the σ̆-focus of `c` and it has the roots of `c`.
pub fn s_ghost(c: &Cycle, sigma: Sigma, params: FsccParams) -> Result<Cycle> {
    let mu = c.l * c.l - c.m * c.k;
    let g = Cycle::new(
        c.n * c.k,
        c.n * c.l,
        -(mu + params.weight() * c.n * c.n) / (2.0 * sigma.chi()),
        c.n * c.m,
    );
    g.normalize()?;
    Ok(g)
}

/// Literal reflection of the real line in `c` computed with `s = χ(σ)`.
pub fn s_ghost_by_reflection(c: &Cycle, sigma: Sigma, params: FsccParams) -> Cycle {
    let p = FsccParams::with_s(params.sigma_breve, sigma.chi());
    reflect_literal(c, &Cycle::REAL_LINE, p)
}
