//! Covariant functional calculus for matrices. The disk group acts on
//! contractions by `a ↦ (ᾱa − β̄e)(αe − βa)⁻¹`, the resolvent
//! `(αe − βa)⁻¹` is its cocycle, and the spectrum of the calculus is the
//! Jordan data of `a`: pairs (eigenvalue, block length).

use nalgebra::{DMatrix, DVector, Schur};
use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::hypercomplex::GroupElement;

pub type SquareMatrix = DMatrix<C64>;

pub const MAX_ORDER: usize = 64;

/// SU(1,1) element `(α, β̄; β, ᾱ)` with `|α|² − |β|² = 1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Su11 {
    pub alpha: C64,
    pub beta: C64,
}

impl Su11 {
    pub const IDENTITY: Su11 = Su11 { alpha: C64::new(1.0, 0.0), beta: C64::new(0.0, 0.0) };

    pub fn new(alpha: C64, beta: C64) -> Result<Self> {
        let d = alpha.norm_sqr() - beta.norm_sqr();
        if (d - 1.0).abs() > 1e-10 {
            return Err(Error::NotSu11(d));
        }
        Ok(Su11 { alpha, beta })
    }

    /// Rotation by `e^{2iθ}` composed with a hyperbolic boost of rapidity `t`
    /// towards angle `ψ`.
    pub fn from_params(theta: f64, t: f64, psi: f64) -> Self {
        let alpha = C64::from_polar(t.cosh(), theta);
        let beta = C64::from_polar(t.sinh(), psi);
        Su11 { alpha, beta }
    }

    /// Conjugate of an SL(2,R) element by the Cayley transform
    /// `W = (1, −i; 1, i)`, which carries the upper half-plane onto the disk.
    pub fn from_sl2(g: &GroupElement) -> Self {
        let (a, b, c, d) = (g.a, g.b, g.c, g.d);
        let alpha = C64::new(a + d, b - c) * 0.5;
        let beta = C64::new(a - d, b + c) * 0.5;
        Su11 { alpha, beta }
    }

    pub fn compose(&self, o: &Su11) -> Su11 {
        Su11 {
            alpha: self.alpha * o.alpha + self.beta.conj() * o.beta,
            beta: self.beta * o.alpha + self.alpha.conj() * o.beta,
        }
    }

    pub fn inverse(&self) -> Su11 {
        Su11 { alpha: self.alpha.conj(), beta: -self.beta }
    }

    /// Disk point `β̄/ᾱ` labelling the coset of the rotation subgroup.
    pub fn disk_point(&self) -> C64 {
        self.beta.conj() / self.alpha.conj()
    }

    /// Scalar version of [`matrix_moebius`].
    pub fn act(&self, z: C64) -> C64 {
        (self.alpha.conj() * z - self.beta.conj()) / (self.alpha - self.beta * z)
    }
}

/// `z ↦ (z − i)/(z + i)`.
pub fn cayley(z: C64) -> C64 {
    (z - C64::i()) / (z + C64::i())
}

pub fn identity(n: usize) -> SquareMatrix {
    DMatrix::identity(n, n)
}

pub fn operator_norm(a: &SquareMatrix) -> f64 {
    a.clone().svd(false, false).singular_values.max()
}

pub fn condition_number(a: &SquareMatrix) -> f64 {
    let sv = a.clone().svd(false, false).singular_values;
    let (max, min) = (sv.max(), sv.min());
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

fn check_contraction(a: &SquareMatrix) -> Result<()> {
    let n = operator_norm(a);
    if n >= 1.0 {
        return Err(Error::NotContraction(n));
    }
    Ok(())
}

/// `(αe − βa)⁻¹`.
pub fn resolvent(g: &Su11, a: &SquareMatrix) -> Result<SquareMatrix> {
    check_contraction(a)?;
    resolvent_unchecked(g, a)
}

fn resolvent_unchecked(g: &Su11, a: &SquareMatrix) -> Result<SquareMatrix> {
    let n = a.nrows();
    let m = identity(n) * g.alpha - a * g.beta;
    let cond = condition_number(&m);
    if !(cond <= 1e12) {
        return Err(Error::SingularResolvent(cond));
    }
    m.try_inverse().ok_or(Error::SingularResolvent(cond))
}

/// `(ᾱa − β̄e)(αe − βa)⁻¹`. This is the ordinary linear-fractional action of
/// `g⁻¹`, so `matrix_moebius(g₁, matrix_moebius(g₂, a)) =
/// matrix_moebius(g₂g₁, a)`.
pub fn matrix_moebius(g: &Su11, a: &SquareMatrix) -> Result<SquareMatrix> {
    check_contraction(a)?;
    let n = a.nrows();
    let r = resolvent_unchecked(g, a)?;
    Ok((a * g.alpha.conj() - identity(n) * g.beta.conj()) * r)
}

pub fn jordan_block(k: usize, lambda: C64) -> SquareMatrix {
    let mut m = DMatrix::from_element(k, k, C64::new(0.0, 0.0));
    for i in 0..k {
        m[(i, i)] = lambda;
        if i + 1 < k {
            m[(i, i + 1)] = C64::new(1.0, 0.0);
        }
    }
    m
}

pub fn direct_sum(blocks: &[SquareMatrix]) -> SquareMatrix {
    let n = blocks.iter().map(|b| b.nrows()).sum();
    let mut m = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
    let mut off = 0;
    for b in blocks {
        m.view_mut((off, off), (b.nrows(), b.ncols())).copy_from(b);
        off += b.nrows();
    }
    m
}

/// Direct sum of Jordan blocks `J_k(λ)`.
pub fn jordan_matrix(points: &[JetPoint]) -> SquareMatrix {
    let blocks: Vec<_> = points.iter().map(|p| jordan_block(p.k, p.lambda)).collect();
    direct_sum(&blocks)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JetPoint {
    pub lambda: C64,
    pub k: usize,
}

impl JetPoint {
    pub fn new(lambda: C64, k: usize) -> Self {
        JetPoint { lambda, k }
    }
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct JetSpectrum {
    pub points: Vec<JetPoint>,
}

impl JetSpectrum {
    pub fn new(mut points: Vec<JetPoint>) -> Self {
        sort_points(&mut points);
        JetSpectrum { points }
    }

    pub fn order(&self) -> usize {
        self.points.iter().map(|p| p.k).sum()
    }

    /// Multiset equality: orders exactly, eigenvalues within `tol`.
    pub fn matches(&self, other: &JetSpectrum, tol: f64) -> bool {
        if self.points.len() != other.points.len() {
            return false;
        }
        let mut used = vec![false; other.points.len()];
        for p in &self.points {
            let best = other
                .points
                .iter()
                .enumerate()
                .filter(|(i, q)| !used[*i] && q.k == p.k)
                .map(|(i, q)| (i, (q.lambda - p.lambda).norm()))
                .min_by(|a, b| a.1.total_cmp(&b.1));
            match best {
                Some((i, d)) if d <= tol => used[i] = true,
                _ => return false,
            }
        }
        true
    }
}

fn sort_points(points: &mut [JetPoint]) {
    points.sort_by(|a, b| {
        a.lambda
            .re
            .total_cmp(&b.lambda.re)
            .then(a.lambda.im.total_cmp(&b.lambda.im))
            .then(b.k.cmp(&a.k))
    });
}

fn eigenvalues(a: &SquareMatrix) -> Result<Vec<C64>> {
    let schur = Schur::try_new(a.clone(), f64::EPSILON, 100_000).ok_or(Error::IllConditioned(0.0))?;
    let t = schur.unpack().1;
    Ok((0..a.nrows()).map(|i| t[(i, i)]).collect())
}

fn numerical_rank(m: &SquareMatrix, tol: f64) -> usize {
    m.clone().svd(false, false).singular_values.iter().filter(|&&s| s > tol).count()
}

/// Union-find root.
fn find(parent: &mut [usize], mut i: usize) -> usize {
    while parent[i] != i {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    i
}

struct Cluster {
    lambda: C64,
    size: usize,
}

fn clusters_from(eigs: &[C64], parent: &mut [usize]) -> Vec<Cluster> {
    let n = eigs.len();
    let mut groups: Vec<(usize, Vec<C64>)> = Vec::new();
    for i in 0..n {
        let r = find(parent, i);
        match groups.iter_mut().find(|g| g.0 == r) {
            Some(g) => g.1.push(eigs[i]),
            None => groups.push((r, vec![eigs[i]])),
        }
    }
    groups
        .into_iter()
        .map(|(_, v)| Cluster { lambda: v.iter().sum::<C64>() / v.len() as f64, size: v.len() })
        .collect()
}

/// Powers `(a − λe)^j` for `j = 0..=upto` and their numerical ranks.
fn rank_sequence(a: &SquareMatrix, lambda: C64, upto: usize) -> Vec<usize> {
    let n = a.nrows();
    let b = a - identity(n) * lambda;
    let mut p = identity(n);
    let mut ranks = vec![n];
    for j in 1..=upto {
        p = &p * &b;
        let top = operator_norm(&p).max(1.0);
        let r = numerical_rank(&p, 1e-9 * top);
        ranks.push(r.min(ranks[j - 1]));
    }
    ranks
}

/// Jordan data of `a`. Eigenvalues are grouped by single linkage, merging
/// the closest pairs until every group of size `s` spans a generalized
/// eigenspace of dimension exactly `s`; block lengths come from the rank
/// sequence of `(a − λe)^j`. `tol` is relative to `max(1, ‖a‖)`.
pub fn jet_spectrum(a: &SquareMatrix, tol: f64) -> Result<JetSpectrum> {
    let n = a.nrows();
    if n > MAX_ORDER {
        return Err(Error::TooLarge(n, MAX_ORDER));
    }
    if n == 0 {
        return Ok(JetSpectrum::default());
    }
    let scale = operator_norm(a).max(1.0);
    let base = tol * scale;
    let eigs = eigenvalues(a)?;

    let mut edges: Vec<(f64, usize, usize)> = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push(((eigs[i] - eigs[j]).norm(), i, j));
        }
    }
    edges.sort_by(|x, y| x.0.total_cmp(&y.0));

    let mut parent: Vec<usize> = (0..n).collect();
    let mut last_merged = 0.0f64;
    let mut idx = 0;
    // Everything within the base radius is merged unconditionally.
    while idx < edges.len() && edges[idx].0 <= base {
        let (d, i, j) = edges[idx];
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        if ri != rj {
            parent[ri] = rj;
            last_merged = d;
        }
        idx += 1;
    }

    loop {
        let clusters = clusters_from(&eigs, &mut parent);
        let mut ok = true;
        let mut structure = Vec::new();
        for c in &clusters {
            let r = rank_sequence(a, c.lambda, c.size + 1);
            if n - r[c.size] != c.size || n - r[c.size + 1] != c.size {
                ok = false;
                break;
            }
            let w: Vec<usize> = (1..=c.size + 1).map(|j| r[j - 1] - r[j]).collect();
            if w.windows(2).any(|p| p[1] > p[0]) {
                ok = false;
                break;
            }
            for j in 1..=c.size {
                let count = w[j - 1] - w[j];
                for _ in 0..count {
                    structure.push(JetPoint::new(c.lambda, j));
                }
            }
        }
        if ok {
            // The next unmerged edge must be well separated from the merges.
            while idx < edges.len() {
                let (_, i, j) = edges[idx];
                if find(&mut parent, i) != find(&mut parent, j) {
                    break;
                }
                idx += 1;
            }
            if idx < edges.len() && edges[idx].0 < 10.0 * last_merged.max(base) {
                return Err(Error::IllConditioned(tol));
            }
            return Ok(JetSpectrum::new(structure));
        }
        // Merge the next closest pair of distinct clusters.
        loop {
            if idx >= edges.len() {
                return Err(Error::IllConditioned(tol));
            }
            let (d, i, j) = edges[idx];
            idx += 1;
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri] = rj;
                last_merged = d;
                break;
            }
        }
    }
}

/// Polynomial `Σ cⱼ zʲ` with ascending coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct HoloMap {
    pub coeffs: Vec<C64>,
}

impl HoloMap {
    pub fn new(coeffs: Vec<C64>) -> Self {
        HoloMap { coeffs }
    }

    pub fn identity() -> Self {
        HoloMap::new(vec![C64::new(0.0, 0.0), C64::new(1.0, 0.0)])
    }

    pub fn constant(c: C64) -> Self {
        HoloMap::new(vec![c])
    }

    /// Product of `(z − rᵢ)` times `lead`.
    pub fn from_roots(roots: &[C64], lead: C64) -> Self {
        let mut c = vec![lead];
        for &r in roots {
            let mut next = vec![C64::new(0.0, 0.0); c.len() + 1];
            for (i, &x) in c.iter().enumerate() {
                next[i + 1] += x;
                next[i] -= x * r;
            }
            c = next;
        }
        HoloMap::new(c)
    }

    /// Interpolant with `φ⁽ʲ⁾(λᵢ) = dᵢ[j]` for every listed derivative.
    pub fn hermite(data: &[(C64, Vec<C64>)]) -> Result<Self> {
        let size: usize = data.iter().map(|d| d.1.len()).sum();
        let mut m = DMatrix::from_element(size, size, C64::new(0.0, 0.0));
        let mut rhs = DVector::from_element(size, C64::new(0.0, 0.0));
        let mut row = 0;
        for (lambda, ders) in data {
            for (j, &v) in ders.iter().enumerate() {
                for p in j..size {
                    m[(row, p)] = falling(p, j) * lambda.powu((p - j) as u32);
                }
                rhs[row] = v;
                row += 1;
            }
        }
        let sol = m.lu().solve(&rhs).ok_or(Error::IllConditioned(0.0))?;
        Ok(HoloMap::new(sol.iter().copied().collect()))
    }

    pub fn degree(&self) -> usize {
        self.coeffs.iter().rposition(|c| c.norm() != 0.0).unwrap_or(0)
    }

    pub fn eval(&self, z: C64) -> C64 {
        self.coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, &c| acc * z + c)
    }

    /// `φ⁽ʲ⁾(z)` by exact differentiation of the coefficients.
    pub fn derivative_at(&self, j: usize, z: C64) -> C64 {
        let mut acc = C64::new(0.0, 0.0);
        for p in (j..self.coeffs.len()).rev() {
            acc = acc * z + self.coeffs[p] * falling(p, j);
        }
        acc
    }

    /// Horner evaluation at a matrix.
    pub fn apply(&self, a: &SquareMatrix) -> SquareMatrix {
        let n = a.nrows();
        let mut acc = DMatrix::from_element(n, n, C64::new(0.0, 0.0));
        for &c in self.coeffs.iter().rev() {
            acc = &acc * a + identity(n) * c;
        }
        acc
    }
}

/// `p (p−1) … (p−j+1)`.
fn falling(p: usize, j: usize) -> f64 {
    ((p - j + 1)..=p).map(|x| x as f64).product()
}

pub fn apply_poly(phi: &HoloMap, a: &SquareMatrix) -> SquareMatrix {
    phi.apply(a)
}

/// Order of the zero of `φ(z) − φ(λ)` at `λ`. A derivative counts as zero
/// when it is below 1e−9 of the sum of the magnitudes of its terms, so
/// round-off in large coefficients does not lower the order.
pub fn zero_order(phi: &HoloMap, lambda: C64) -> Result<usize> {
    let r = lambda.norm();
    (1..phi.coeffs.len())
        .find(|&j| {
            let scale: f64 = (j..phi.coeffs.len())
                .map(|p| phi.coeffs[p].norm() * falling(p, j) * r.powi((p - j) as i32))
                .sum();
            phi.derivative_at(j, lambda).norm() > 1e-9 * scale.max(f64::MIN_POSITIVE)
        })
        .ok_or(Error::ConstantMap)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MappedSpectrum {
    pub spectrum: JetSpectrum,
    /// Source points whose image order `⌊k/deg⌋` was 0 and was raised to 1.
    pub clamped: Vec<JetPoint>,
}

/// `(λ, k) ↦ (φ(λ), ⌊k / deg_λ φ⌋)`, with order 0 raised to 1 and flagged.
pub fn spectral_map(jets: &JetSpectrum, phi: &HoloMap) -> Result<MappedSpectrum> {
    let mut points = Vec::new();
    let mut clamped = Vec::new();
    for p in &jets.points {
        let d = zero_order(phi, p.lambda)?;
        let mut k = p.k / d;
        if k == 0 {
            k = 1;
            clamped.push(*p);
        }
        points.push(JetPoint::new(phi.eval(p.lambda), k));
    }
    Ok(MappedSpectrum { spectrum: JetSpectrum::new(points), clamped })
}

/// Exact Jordan structure of `φ(J_k(λ))`: with `d = deg_λ φ` it splits into
/// `k mod d` blocks of length `⌈k/d⌉` and `d − k mod d` of length `⌊k/d⌋`.
pub fn jordan_image(jets: &JetSpectrum, phi: &HoloMap) -> Result<JetSpectrum> {
    let mut points = Vec::new();
    for p in &jets.points {
        let d = zero_order(phi, p.lambda)?;
        let mu = phi.eval(p.lambda);
        let (q, r) = (p.k / d, p.k % d);
        for _ in 0..r {
            points.push(JetPoint::new(mu, q + 1));
        }
        if q > 0 {
            for _ in 0..d - r {
                points.push(JetPoint::new(mu, q));
            }
        }
    }
    Ok(JetSpectrum::new(points))
}

/// Dimension of `span{m, am, …, a^{k−1}m}`.
pub fn krylov_rank(a: &SquareMatrix, m: &DVector<C64>, k: usize) -> usize {
    let n = a.nrows();
    let mut cols = DMatrix::from_element(n, k, C64::new(0.0, 0.0));
    let mut v = m.clone();
    for j in 0..k {
        cols.set_column(j, &v);
        v = a * v;
    }
    let norm = cols.norm().max(1e-300);
    cols.svd(false, false).singular_values.iter().filter(|&&s| s > 1e-10 * norm).count()
}
