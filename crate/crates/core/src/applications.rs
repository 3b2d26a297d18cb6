//! Drivers built on the curve bases: interpolation of functions with
//! square-root and essential singularities, a Fourier extension on a
//! circular arc and a collocation eigensolver for a Schrödinger operator.
//!
//! A function with a square-root singularity is written as
//! `f(t) = g(t, √(t² + ε²))` with `g` smooth. For `ε > 0` the pair
//! `(x, y) = (√(t² + ε²), t) / ε` lies on the right branch of
//! `x² - y² = 1`, and for `ε = 0` the pair `x = (t + |t|)/2`, `y = (|t| - t)/2`
//! lies on the quarter lines `xy = 0`, `x, y ≥ 0`. A function with an
//! essential singularity `f(t) = g(t, 1/t)` is lifted to the two-branch
//! hyperbola through `t = x - y`, `1/t = x + y`.

use std::fmt;
use std::sync::Arc;

use nalgebra::{DMatrix, DVector};

use crate::curve_bases::{build_basis, interpolation_nodes, CurveBasis, CurveKind, CurvePoint};
use crate::error::{Error, Result};
use crate::expansion::CurveFunction;
use crate::interpolation::{interpolate, Interpolant, LagrangeForm};
use crate::univariate_op::{Interval, WeightSpec};

/// Smallest positive `ε` accepted by the hyperbola map.
pub const MIN_EPS: f64 = 1e-12;

type Bivariate = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;
type Univariate = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SingularKind {
    /// `f(t) = g(t, √(t² + ε²))`.
    SqrtSingularity { eps: f64 },
    /// `f(t) = g(t, 1/t)`.
    EssentialSingularity,
    /// `f(t) = g(t, |t|)`, the `ε = 0` limit of the square-root case.
    AbsValue,
}

/// A univariate function `f(t) = g(t, s(t))` with a smooth `g`.
#[derive(Clone)]
pub struct SingularProblem {
    pub kind: SingularKind,
    g: Bivariate,
    /// The lifted function on the curve.
    pub f2d: CurveFunction,
    pub t_domain: Interval,
}

impl fmt::Debug for SingularProblem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("SingularProblem")
            .field("kind", &self.kind)
            .field("t_domain", &self.t_domain)
            .finish_non_exhaustive()
    }
}

impl SingularProblem {
    pub fn new<G>(kind: SingularKind, g: G, t_domain: Interval) -> Result<Self>
    where
        G: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        if let SingularKind::SqrtSingularity { eps } = kind {
            if !(eps >= 0.0) || !eps.is_finite() {
                return Err(Error::InvalidArgument(format!("eps = {eps} must be finite and nonnegative")));
            }
        }
        if !(t_domain.a < t_domain.b) {
            return Err(Error::InvalidArgument("empty t domain".into()));
        }
        let g: Bivariate = Arc::new(g);
        let f2d = lift(kind, &g, t_domain);
        Ok(Self { kind, g, f2d, t_domain })
    }

    /// The second argument `s(t)` of `g`.
    pub fn s(&self, t: f64) -> f64 {
        match self.kind {
            SingularKind::SqrtSingularity { eps } => t.hypot(eps),
            SingularKind::AbsValue => t.abs(),
            SingularKind::EssentialSingularity => 1.0 / t,
        }
    }

    /// `f(t)`.
    pub fn eval(&self, t: f64) -> f64 {
        (self.g)(t, self.s(t))
    }

    fn map(&self) -> TMap {
        match self.kind {
            SingularKind::SqrtSingularity { eps } if eps > 0.0 => TMap::Hyperbola { eps },
            SingularKind::SqrtSingularity { .. } | SingularKind::AbsValue => TMap::Lines,
            SingularKind::EssentialSingularity => TMap::Reciprocal,
        }
    }

}

fn lift(kind: SingularKind, g: &Bivariate, t_domain: Interval) -> CurveFunction {
    let g = g.clone();
    match kind {
        SingularKind::SqrtSingularity { eps } if eps > 0.0 => {
            let r = t_domain.a.abs().max(t_domain.b.abs());
            let l = (1.0 + (r / eps).powi(2)).sqrt();
            CurveFunction::new(CurveKind::HyperbolaOneBranch { l }, move |x, y| g(eps * y, eps * x))
        }
        SingularKind::SqrtSingularity { .. } | SingularKind::AbsValue => {
            CurveFunction::new(CurveKind::IntersectingLines, move |x, y| g(x - y, x + y))
        }
        SingularKind::EssentialSingularity => {
            CurveFunction::new(CurveKind::HyperbolaTwoBranch, move |x, y| g(x - y, x + y))
        }
    }
}

/// Map from the line parameter `t` to the curve.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TMap {
    /// `(√(1 + t²/ε²), t/ε)` on the right branch of `x² - y² = 1`.
    Hyperbola { eps: f64 },
    /// `((t + |t|)/2, (|t| - t)/2)` on `xy = 0`.
    Lines,
    /// `((t + 1/t)/2, (1/t - t)/2)` on `x² - y² = 1`.
    Reciprocal,
}

impl TMap {
    pub fn point(&self, t: f64) -> Result<CurvePoint> {
        match *self {
            TMap::Hyperbola { eps } => Ok(CurvePoint::new((1.0 + (t / eps).powi(2)).sqrt(), t / eps)),
            TMap::Lines => Ok(CurvePoint::new(0.5 * (t + t.abs()), 0.5 * (t.abs() - t))),
            TMap::Reciprocal => {
                if t == 0.0 {
                    return Err(Error::SingularEvaluation);
                }
                Ok(CurvePoint::new(0.5 * (t + 1.0 / t), 0.5 * (1.0 / t - t)))
            }
        }
    }

    /// Inverse of [`TMap::point`] on the curve.
    pub fn t_of(&self, p: CurvePoint) -> f64 {
        match *self {
            TMap::Hyperbola { eps } => eps * p.y,
            TMap::Lines => p.x - p.y,
            TMap::Reciprocal => {
                let (d, s) = (p.x - p.y, p.x + p.y);
                if d.abs() < s.abs() {
                    1.0 / s
                } else {
                    d
                }
            }
        }
    }
}

/// An interpolant on a curve read back as a function of `t`.
///
/// Evaluation goes through the Lagrange form of the interpolant.
#[derive(Debug, Clone)]
pub struct PulledBack {
    pub interp: Interpolant,
    pub lagrange: LagrangeForm,
    pub map: TMap,
}

impl PulledBack {
    fn new(basis: &CurveBasis, f: &CurveFunction, n: usize, map: TMap) -> Result<Self> {
        let interp = interpolate(basis, f, n)?;
        let samples: Vec<f64> = interp.nodes.iter().map(|p| f.at(*p)).collect();
        let lagrange = LagrangeForm::from_samples(&interp.basis, &samples, n)?;
        Ok(Self { interp, lagrange, map })
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(self.lagrange.eval(self.map.point(t)?))
    }

    /// Evaluation through the expansion coefficients.
    pub fn eval_coeffs(&self, t: f64) -> Result<f64> {
        Ok(self.interp.eval(self.map.point(t)?))
    }

    /// The `t` values of the interpolation nodes.
    pub fn t_nodes(&self) -> Vec<f64> {
        self.interp.nodes.iter().map(|p| self.map.t_of(*p)).collect()
    }
}

/// Basis used for `ε`-regularized square-root singularities on `[-r, r]`:
/// Legendre on `[1, L]` with `L = √(1 + r²/ε²)` on the one-branch
/// hyperbola, or Legendre on `[0, r]` on the intersecting lines for `ε = 0`.
pub fn sqrt_basis(eps: f64, r: f64, n_max: usize) -> Result<CurveBasis> {
    if eps == 0.0 {
        return build_basis(CurveKind::IntersectingLines, WeightSpec::legendre(0.0, r), n_max);
    }
    if eps < MIN_EPS {
        return Err(Error::LOverflow(eps));
    }
    let l = (1.0 + (r / eps).powi(2)).sqrt();
    build_basis(CurveKind::HyperbolaOneBranch { l }, WeightSpec::legendre(1.0, l), n_max)
}

/// Interpolate a square-root-singular function at `2n` points.
pub fn solve_sqrt_singular(p: &SingularProblem, n: usize) -> Result<PulledBack> {
    let eps = match p.kind {
        SingularKind::SqrtSingularity { eps } => eps,
        SingularKind::AbsValue => 0.0,
        SingularKind::EssentialSingularity => {
            return Err(Error::InvalidArgument("expected a square-root singularity".into()))
        }
    };
    if eps > 0.0 && eps < MIN_EPS {
        return Err(Error::LOverflow(eps));
    }
    let r = p.t_domain.a.abs().max(p.t_domain.b.abs());
    let basis = sqrt_basis(eps, r, n + 1)?;
    PulledBack::new(&basis, &p.f2d, n, p.map())
}

/// Interpolate `f2d` on the two-branch hyperbola with the Hermite weight at
/// the `2n` points `(±√(y_j² + 1), y_j)`, read back through `t = x - y`.
pub fn solve_essential_singular(f2d: &CurveFunction, n: usize) -> Result<PulledBack> {
    if f2d.curve != CurveKind::HyperbolaTwoBranch {
        return Err(Error::InvalidArgument("essential singularities live on the two-branch hyperbola".into()));
    }
    let basis = build_basis(CurveKind::HyperbolaTwoBranch, WeightSpec::hermite(), n + 1)?;
    PulledBack::new(&basis, f2d, n, TMap::Reciprocal)
}

/// Polynomial interpolation at the `m` Chebyshev points of the first kind
/// on `[a, b]`, evaluated in barycentric form.
#[derive(Debug, Clone)]
pub struct ChebyshevInterpolant {
    pub interval: Interval,
    pub points: Vec<f64>,
    pub values: Vec<f64>,
    weights: Vec<f64>,
}

impl ChebyshevInterpolant {
    pub fn new<F: Fn(f64) -> f64>(f: F, m: usize, interval: Interval) -> Self {
        let (c, s) = (interval.midpoint(), interval.half_width());
        let theta = |j: usize| std::f64::consts::PI * (2 * j + 1) as f64 / (2 * m) as f64;
        let points: Vec<f64> = (0..m).map(|j| c + s * theta(j).cos()).collect();
        let weights = (0..m).map(|j| if j % 2 == 0 { 1.0 } else { -1.0 } * theta(j).sin()).collect();
        let values = points.iter().map(|&t| f(t)).collect();
        Self { interval, points, values, weights }
    }

    pub fn eval(&self, t: f64) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for ((&tj, &wj), &fj) in self.points.iter().zip(&self.weights).zip(&self.values) {
            let d = t - tj;
            if d == 0.0 {
                return fj;
            }
            num += wj / d * fj;
            den += wj / d;
        }
        num / den
    }
}

/// `-h² u'' + V u = λ u` on `[-r, r]` with `u(±r) = 0`.
#[derive(Clone)]
pub struct SchrodingerProblem {
    pub h: f64,
    pub potential: Univariate,
    pub domain: Interval,
    pub eps: f64,
    /// Pair count; the discretization has `2n` unknowns.
    pub n: usize,
    /// Number of eigenpairs to report.
    pub n_eigs: usize,
}

impl fmt::Debug for SchrodingerProblem {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("SchrodingerProblem")
            .field("h", &self.h)
            .field("domain", &self.domain)
            .field("eps", &self.eps)
            .field("n", &self.n)
            .field("n_eigs", &self.n_eigs)
            .finish_non_exhaustive()
    }
}

impl SchrodingerProblem {
    pub fn new<V>(h: f64, potential: V, domain: Interval, eps: f64, n: usize) -> Self
    where
        V: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self { h, potential: Arc::new(potential), domain, eps, n, n_eigs: 20 }
    }

    /// `V(t) = √(t² + ε²) + (t - 0.1)²` on `[-3, 3]`.
    pub fn nearly_singular_well(h: f64, eps: f64, n: usize) -> Self {
        Self::new(h, move |t: f64| t.hypot(eps) + (t - 0.1).powi(2), Interval::new(-3.0, 3.0), eps, n)
    }
}

/// Eigenpairs of the collocation discretization.
#[derive(Debug, Clone)]
pub struct EigenResult {
    /// Real parts, ascending.
    pub eigenvalues: Vec<f64>,
    /// Imaginary parts of the same eigenvalues.
    pub imag: Vec<f64>,
    /// Coefficients in the ordered basis, scaled to unit max-norm.
    pub eigenvectors: Vec<Vec<f64>>,
    /// `‖(A - λB) c‖∞ / ‖c‖∞` over the interior collocation rows.
    pub residuals: Vec<f64>,
    /// `(|u(a)|, |u(b)|)` for each eigenvector.
    pub boundary: Vec<(f64, f64)>,
    pub basis: CurveBasis,
    pub eps: f64,
}

impl EigenResult {
    /// Eigenstate `k` at `t`.
    pub fn state(&self, k: usize, t: f64) -> f64 {
        let p = TMap::Hyperbola { eps: self.eps }.point(t).expect("eps > 0");
        let v = self.basis.ordered_values(self.eigenvectors[k].len(), p).expect("capacity fixed");
        self.eigenvectors[k].iter().zip(v).map(|(c, v)| c * v).sum()
    }
}

/// Values and first two `t`-derivatives of the ordered basis at `t`.
fn basis_jets(basis: &CurveBasis, count: usize, eps: f64, t: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
    let e2 = eps * eps;
    let x = (1.0 + t * t / e2).sqrt();
    let y = t / eps;
    let (dx, ddx, dy) = (t / (e2 * x), 1.0 / (e2 * x * x * x), 1.0 / eps);
    let k1 = (count - 1) / 2;
    let k2 = count / 2;
    let (p, p1, p2) = basis.rc1.orthonormal_derivs_all(k1, x);
    let (q, q1, q2) = basis.rc2.orthonormal_derivs_all(k2.max(1) - 1, x);
    let mut v = Vec::with_capacity(count);
    let mut d1 = Vec::with_capacity(count);
    let mut d2 = Vec::with_capacity(count);
    for i in 0..count {
        let k = i / 2;
        if i % 2 == 0 {
            v.push(p[k]);
            d1.push(p1[k] * dx);
            d2.push(p2[k] * dx * dx + p1[k] * ddx);
        } else {
            v.push(y * q[k]);
            d1.push(dy * q[k] + y * q1[k] * dx);
            d2.push(2.0 * dy * q1[k] * dx + y * (q2[k] * dx * dx + q1[k] * ddx));
        }
    }
    (v, d1, d2)
}

/// Smallest eigenvalues of `-h² u'' + V u = λ u` with Dirichlet conditions.
///
/// The unknowns are the `2n` coefficients of `u(t) = Σ c_k φ_k(√(1 + t²/ε²), t/ε)`
/// in the one-branch hyperbola basis. Rows collocate the equation at the
/// `2n - 2` interpolation nodes of pair count `n - 1`, and two rows impose
/// `u(±r) = 0`. The pencil `(A, B)` is reduced by the shift `σ = min V - 1`
/// to the standard problem `(A - σB)⁻¹ B`, whose eigenvalues `μ` give
/// `λ = σ + 1/μ`. Each eigenvector comes from one inverse-iteration solve.
pub fn schrodinger_eigs(p: &SchrodingerProblem) -> Result<EigenResult> {
    if p.n < 3 {
        return Err(Error::InvalidArgument(format!("n = {} must be at least 3", p.n)));
    }
    if !(p.h > 0.0) {
        return Err(Error::InvalidArgument(format!("h = {} must be positive", p.h)));
    }
    let (a, b) = (p.domain.a, p.domain.b);
    if !(a < b) || (a + b).abs() > 1e-14 * b.abs() {
        return Err(Error::InvalidArgument("the domain must be a symmetric interval [-r, r]".into()));
    }
    if !(p.eps > 0.0) {
        return Err(Error::InvalidArgument("eps must be positive".into()));
    }
    let basis = sqrt_basis(p.eps, b, p.n + 1)?;
    let m = 2 * p.n;
    let nodes = interpolation_nodes(&basis, p.n - 1)?;
    let ts: Vec<f64> = nodes.points.iter().map(|q| p.eps * q.y).collect();

    let mut am = DMatrix::zeros(m, m);
    let mut bm = DMatrix::zeros(m, m);
    let h2 = p.h * p.h;
    let mut vmin = f64::INFINITY;
    for (r, &t) in ts.iter().enumerate() {
        let (v, _, d2) = basis_jets(&basis, m, p.eps, t);
        let pot = (p.potential)(t);
        vmin = vmin.min(pot);
        for k in 0..m {
            am[(r, k)] = -h2 * d2[k] + pot * v[k];
            bm[(r, k)] = v[k];
        }
    }
    for (r, t) in [(m - 2, a), (m - 1, b)] {
        let (v, _, _) = basis_jets(&basis, m, p.eps, t);
        for k in 0..m {
            am[(r, k)] = v[k];
        }
        let pot = (p.potential)(t);
        vmin = vmin.min(pot);
    }

    let sigma = vmin - 1.0;
    let shifted = (&am - sigma * &bm).lu();
    let mm = shifted.solve(&bm).ok_or(Error::SingularMatrix)?;
    let mus = mm.complex_eigenvalues();
    let mu_max = mus.iter().fold(0.0f64, |acc, z| acc.max(z.norm()));
    let mut lams: Vec<(f64, f64)> = mus
        .iter()
        .filter(|z| z.norm() > 1e-10 * mu_max)
        .map(|z| {
            let l = z.inv();
            (sigma + l.re, l.im)
        })
        .collect();
    lams.sort_by(|x, y| x.0.total_cmp(&y.0));
    lams.truncate(p.n_eigs);

    let interior = m - 2;
    let mut out = EigenResult {
        eigenvalues: Vec::new(),
        imag: Vec::new(),
        eigenvectors: Vec::new(),
        residuals: Vec::new(),
        boundary: Vec::new(),
        basis: basis.clone(),
        eps: p.eps,
    };
    let start = DVector::from_fn(m, |i, _| 1.0 + 0.01 * i as f64);
    for (lam, im) in lams {
        let op = &am - lam * &bm;
        let lu = op.clone().lu();
        let rhs = &bm * &start;
        let mut c = match lu.solve(&rhs) {
            Some(c) if c.iter().all(|v| v.is_finite()) => c,
            _ => return Err(Error::SingularMatrix),
        };
        let cmax = c.amax();
        c /= cmax;
        let res = &op * &c;
        let r_int = res.rows(0, interior).amax();
        out.eigenvalues.push(lam);
        out.imag.push(im);
        out.residuals.push(r_int);
        out.boundary.push((res[m - 2].abs(), res[m - 1].abs()));
        out.eigenvectors.push(c.iter().copied().collect());
    }
    Ok(out)
}

/// Circle-arc interpolant of a function of the angle.
#[derive(Debug, Clone)]
pub struct ArcInterpolant {
    pub interp: Interpolant,
    pub h: f64,
}

impl ArcInterpolant {
    pub fn eval(&self, theta: f64) -> f64 {
        self.interp.eval(CurvePoint::new(theta.cos(), theta.sin()))
    }

    /// Angles of the `2n` interpolation nodes.
    pub fn thetas(&self) -> Vec<f64> {
        self.interp.nodes.iter().map(|p| p.y.atan2(p.x)).collect()
    }
}

/// Interpolate `f(θ)` on the arc `|θ| ≤ h` with the circle basis for the
/// weight `dθ` restricted to `x = cos θ ∈ [cos h, 1]`.
pub fn fourier_extension_demo<F>(f: F, h: f64, n: usize) -> Result<ArcInterpolant>
where
    F: Fn(f64) -> f64 + Send + Sync + 'static,
{
    if !(h > 0.0 && h < std::f64::consts::PI) {
        return Err(Error::EmptyArc(h));
    }
    let basis = build_basis(CurveKind::Circle, WeightSpec::legendre(h.cos(), 1.0), n + 1)?;
    let g = CurveFunction::new(CurveKind::Circle, move |x, y| f(y.atan2(x)));
    Ok(ArcInterpolant { interp: interpolate(&basis, &g, n)?, h })
}
