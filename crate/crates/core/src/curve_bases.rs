//! Orthogonal bases `{Y_{n,1}, Y_{n,2}}` on the standard quadratic curves.
//!
//! Every curve is handled through a common parameterization. A parameter
//! `t` picks a reflected pair of points `P+(t)`, `P-(t)` and an odd
//! coordinate `o` with `o(P±) = ±sqrt(odd_sq(t))`. The inner product is
//!
//! ```text
//! <f, g> = c * ∫ [ f g (P+(t)) + f g (P-(t)) ] dμ1(t)
//! ```
//!
//! and the basis restricted to the curve is `Y_{n,1}(P±) = p_n(μ1; t)`,
//! `Y_{n,2}(P±) = ±o q_{n-1}(μ2; t)` with `dμ2 = odd_sq dμ1`.
//!
//! | curve              | P±(t)              | c   | odd_sq   |
//! |--------------------|--------------------|-----|----------|
//! | circle             | (t, ±√(1-t²))      | 1   | 1 - t²   |
//! | parabola           | (±√t, t)           | 1/2 | t        |
//! | two-branch         | (±√(t²+1), t)      | 1   | 1 + t²   |
//! | one-branch         | (t, ±√(t²-1))      | 1   | t² - 1   |
//! | intersecting lines | (t, 0) and (0, t)  | 1   | t²       |
//! | parallel lines     | (t, ±1)            | 1   | 1        |
//!
//! Univariate polynomials are orthonormal unless [`Normalization::Monic`]
//! is requested, so `<Y_{n,i}, Y_{n,i}> = 2c`.
//!
//! One-branch interpolation nodes are `(t_j, ±√(t_j² - 1))`, the points that
//! actually lie on `x² - y² = 1`.

use crate::error::{Error, Result};
use crate::univariate_op::{
    binom_shift, gauss_rule, jacobi_p, pochhammer, recurrence, Interval, Multiplier, QuadratureRule,
    RecurrenceTable, WeightKind, WeightSpec,
};

/// The standard quadratic curves.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CurveKind {
    /// `x² + y² = 1`.
    Circle,
    /// `y = x²`.
    Parabola,
    /// `x² - y² = 1`, both branches, parameterized by `y`.
    HyperbolaTwoBranch,
    /// `x² - y² = 1`, right branch with `1 ≤ x ≤ l`, parameterized by `x`.
    HyperbolaOneBranch { l: f64 },
    /// `xy = 0`.
    IntersectingLines,
    /// `y² = 1`.
    ParallelLines,
}

/// A point in the plane.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvePoint {
    pub x: f64,
    pub y: f64,
}

impl CurvePoint {
    pub fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }
}

/// Normalization of the univariate polynomials inside `Y_{n,i}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Normalization {
    Orthonormal,
    Monic,
}

impl CurveKind {
    pub fn name(&self) -> &'static str {
        match self {
            CurveKind::Circle => "circle",
            CurveKind::Parabola => "parabola",
            CurveKind::HyperbolaTwoBranch => "hyperbola2",
            CurveKind::HyperbolaOneBranch { .. } => "hyperbola1",
            CurveKind::IntersectingLines => "lines",
            CurveKind::ParallelLines => "parallel",
        }
    }

    /// The constant `c` in front of the parameter integral.
    pub fn measure_factor(&self) -> f64 {
        match self {
            CurveKind::Parabola => 0.5,
            _ => 1.0,
        }
    }

    /// `odd_sq(t)`, the square of the odd coordinate along the curve.
    pub fn odd_sq(&self, t: f64) -> f64 {
        match self {
            CurveKind::Circle => 1.0 - t * t,
            CurveKind::Parabola => t,
            CurveKind::HyperbolaTwoBranch => 1.0 + t * t,
            CurveKind::HyperbolaOneBranch { .. } => t * t - 1.0,
            CurveKind::IntersectingLines => t * t,
            CurveKind::ParallelLines => 1.0,
        }
    }

    /// `odd_sq` as polynomial coefficients in ascending powers.
    pub fn odd_sq_poly(&self) -> Vec<f64> {
        match self {
            CurveKind::Circle => vec![1.0, 0.0, -1.0],
            CurveKind::Parabola => vec![0.0, 1.0],
            CurveKind::HyperbolaTwoBranch => vec![1.0, 0.0, 1.0],
            CurveKind::HyperbolaOneBranch { .. } => vec![-1.0, 0.0, 1.0],
            CurveKind::IntersectingLines => vec![0.0, 0.0, 1.0],
            CurveKind::ParallelLines => vec![1.0],
        }
    }

    /// `P+(t)` for `plus`, `P-(t)` otherwise.
    pub fn point(&self, t: f64, plus: bool) -> CurvePoint {
        let sg = if plus { 1.0 } else { -1.0 };
        let r = self.odd_sq(t).max(0.0).sqrt();
        match self {
            CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } => CurvePoint::new(t, sg * r),
            CurveKind::Parabola | CurveKind::HyperbolaTwoBranch => CurvePoint::new(sg * r, t),
            CurveKind::IntersectingLines => {
                if plus {
                    CurvePoint::new(t, 0.0)
                } else {
                    CurvePoint::new(0.0, t)
                }
            }
            CurveKind::ParallelLines => CurvePoint::new(t, sg),
        }
    }

    /// Parameter `t` of a point on the curve.
    pub fn param(&self, p: CurvePoint) -> f64 {
        match self {
            CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } | CurveKind::ParallelLines => p.x,
            CurveKind::Parabola | CurveKind::HyperbolaTwoBranch => p.y,
            CurveKind::IntersectingLines => p.x + p.y,
        }
    }

    /// Odd coordinate `o(P)`.
    pub fn odd(&self, p: CurvePoint) -> f64 {
        match self {
            CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } | CurveKind::ParallelLines => p.y,
            CurveKind::Parabola | CurveKind::HyperbolaTwoBranch => p.x,
            CurveKind::IntersectingLines => p.x - p.y,
        }
    }

    /// Defining polynomial `γ(x, y)`.
    pub fn implicit(&self, p: CurvePoint) -> f64 {
        let CurvePoint { x, y } = p;
        match self {
            CurveKind::Circle => x * x + y * y - 1.0,
            CurveKind::Parabola => y - x * x,
            CurveKind::HyperbolaTwoBranch | CurveKind::HyperbolaOneBranch { .. } => x * x - y * y - 1.0,
            CurveKind::IntersectingLines => x * y,
            CurveKind::ParallelLines => y * y - 1.0,
        }
    }

    /// True when `γ(p) = 0` to `tol`, scaled by `1 + x² + y²`.
    pub fn contains(&self, p: CurvePoint, tol: f64) -> bool {
        self.implicit(p).abs() <= tol * (1.0 + p.x * p.x + p.y * p.y)
    }
}

/// Parameters of the two-weight Jacobi basis on intersecting lines with
/// `w1(t) = |t|^{2γ} (1-t²)^α` and `w2(t) = |t|^{2γ} (1-t²)^β` on `[-1, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiLines {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
    /// Normalization `c_{α,γ}` of the first line.
    pub c_alpha: f64,
    /// Normalization `c_{β,γ}` of the second line.
    pub c_beta: f64,
}

/// A curve together with the two univariate families generating its basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveBasis {
    pub kind: CurveKind,
    /// Base weight of the curve inner product as supplied by the caller.
    pub weight: WeightSpec,
    /// Measure `μ1` in the curve parameter.
    pub spec1: WeightSpec,
    /// Measure `μ2 = odd_sq μ1`.
    pub spec2: WeightSpec,
    /// Recurrence generating `Y_{n,1}`.
    pub rc1: RecurrenceTable,
    /// Recurrence generating `Y_{n,2}`.
    pub rc2: RecurrenceTable,
    /// Set for the two-weight Jacobi basis on intersecting lines.
    pub jacobi_params: Option<JacobiLines>,
    /// Degrees `0..n_max` are available.
    pub n_max: usize,
}

fn incompatible(kind: CurveKind, w: &WeightSpec) -> Error {
    Error::IncompatibleWeight(format!("{:?} on {:?} for the {}", w.kind, w.support, kind.name()))
}

fn jacobi_params_of(w: &WeightSpec) -> Option<(f64, f64)> {
    match w.kind {
        WeightKind::Jacobi { alpha, beta } => Some((alpha, beta)),
        WeightKind::Legendre => Some((0.0, 0.0)),
        WeightKind::ChebyshevT => Some((-0.5, -0.5)),
        _ => None,
    }
}

/// Measures `(μ1, μ2)` in the curve parameter for a base weight.
fn parameter_measures(kind: CurveKind, w: &WeightSpec) -> Result<(WeightSpec, WeightSpec)> {
    let modified = |poly: Vec<f64>| WeightSpec::modified(w.clone(), Multiplier::Polynomial(poly));
    match kind {
        CurveKind::Circle => {
            let (a, b) = jacobi_params_of(w).ok_or_else(|| incompatible(kind, w))?;
            let iv = w.support;
            if a - 0.5 <= -1.0 || b - 0.5 <= -1.0 {
                return Err(incompatible(kind, w));
            }
            if iv.a == -1.0 && iv.b == 1.0 {
                Ok((WeightSpec::jacobi(a - 0.5, b - 0.5), WeightSpec::jacobi(a + 0.5, b + 0.5)))
            } else if iv.b == 1.0 && iv.a > -1.0 && iv.a < 1.0 {
                // (1-x^2)^e = (1-u)^e s^e (1+x)^e with u the image of [c, 1] on [-1, 1]
                let s = iv.half_width();
                let arc = |e: f64| {
                    WeightSpec::modified(
                        WeightSpec::jacobi_on(a + e, b, iv.a, 1.0),
                        Multiplier::LinearPower { c0: s, c1: s, exponent: e },
                    )
                };
                Ok((arc(-0.5), arc(0.5)))
            } else {
                Err(incompatible(kind, w))
            }
        }
        CurveKind::Parabola => match w.kind {
            WeightKind::Laguerre { alpha } if alpha > -0.5 => {
                Ok((WeightSpec::laguerre(alpha - 0.5), WeightSpec::laguerre(alpha + 0.5)))
            }
            WeightKind::ShiftedJacobi { gamma, alpha } if gamma > -0.5 => Ok((
                WeightSpec::shifted_jacobi(gamma - 0.5, alpha),
                WeightSpec::shifted_jacobi(gamma + 0.5, alpha),
            )),
            WeightKind::Legendre if w.support == Interval::new(0.0, 1.0) => {
                Ok((WeightSpec::shifted_jacobi(-0.5, 0.0), WeightSpec::shifted_jacobi(0.5, 0.0)))
            }
            _ => Err(incompatible(kind, w)),
        },
        CurveKind::HyperbolaTwoBranch => Ok((w.clone(), modified(kind.odd_sq_poly()))),
        CurveKind::HyperbolaOneBranch { l } => {
            let iv = w.support;
            if !(l > 1.0) || !(iv.a >= 1.0) || !(iv.b <= l) || !iv.is_finite() {
                return Err(incompatible(kind, w));
            }
            Ok((w.clone(), modified(kind.odd_sq_poly())))
        }
        CurveKind::IntersectingLines => Ok((w.clone(), modified(kind.odd_sq_poly()))),
        CurveKind::ParallelLines => Ok((w.clone(), w.clone())),
    }
}

/// Weight `w0(x) = x w(√(x²-1)) / √(x²-1)` on `[1, √(1+a²)]` for an even
/// Jacobi-type weight `w` on `[-a, a]`, turning the `y`-parameterized
/// one-branch inner product into one in `x`.
pub fn one_branch_weight(w: &WeightSpec) -> Result<WeightSpec> {
    let (p, q) = jacobi_params_of(w).ok_or_else(|| Error::IncompatibleWeight("even Jacobi-type weight expected".into()))?;
    let iv = w.support;
    if p != q || !iv.is_finite() || iv.a != -iv.b {
        return Err(Error::IncompatibleWeight("weight must be even on a finite symmetric interval".into()));
    }
    let a = iv.b;
    let l = (1.0 + a * a).sqrt();
    let s = 0.5 * (l - 1.0);
    // (1 - y²/a²)^p = (l-x)^p (l+x)^p a^{-2p},  (x²-1)^{-1/2} = (x-1)^{-1/2} (x+1)^{-1/2}
    let base = WeightSpec::jacobi_on(p, -0.5, 1.0, l);
    let m = Multiplier::Product(vec![
        Multiplier::Polynomial(vec![0.0, s.powf(p - 0.5) * a.powf(-2.0 * p)]),
        Multiplier::LinearPower { c0: 1.0, c1: 1.0, exponent: -0.5 },
        Multiplier::LinearPower { c0: l, c1: 1.0, exponent: p },
    ]);
    Ok(WeightSpec::modified(base, m))
}

/// Build the basis of `kind` for the base weight `w`, with degrees `0..n_max`.
pub fn build_basis(kind: CurveKind, weight: WeightSpec, n_max: usize) -> Result<CurveBasis> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let (spec1, spec2) = parameter_measures(kind, &weight)?;
    let rc1 = recurrence(&spec1, n_max)?;
    let rc2 = recurrence(&spec2, n_max)?;
    // the second measure must be odd_sq times the first
    let check = gauss_rule(&rc1, n_max.min(2).max(1).min(rc1.len()))?;
    let expect = check.integrate(|t| kind.odd_sq(t));
    if (rc2.beta[0] - expect).abs() > 1e-10 * expect.abs().max(1e-300) {
        return Err(Error::IncompatibleWeight(format!(
            "second measure has mass {} but odd_sq μ1 has {}",
            rc2.beta[0], expect
        )));
    }
    Ok(CurveBasis { kind, weight, spec1, spec2, rc1, rc2, jacobi_params: None, n_max })
}

/// Two-weight Jacobi basis on intersecting lines (degrees `0..n_max`).
pub fn build_jacobi_lines(alpha: f64, beta: f64, gamma: f64, n_max: usize) -> Result<CurveBasis> {
    for (name, v) in [("alpha", alpha), ("beta", beta), ("gamma", gamma)] {
        if !(v > -1.0) {
            return Err(Error::UnsupportedParameter(format!("{name} = {v} must exceed -1")));
        }
    }
    if !(gamma > -0.5) {
        return Err(Error::UnsupportedParameter(format!("gamma = {gamma} must exceed -1/2")));
    }
    let norm = |a: f64| {
        (libm::lgamma(gamma + a + 1.5) - libm::lgamma(gamma + 0.5) - libm::lgamma(a + 1.0)).exp()
    };
    let spec1 = WeightSpec::shifted_jacobi(gamma - 0.5, alpha);
    let spec2 = WeightSpec::shifted_jacobi(gamma - 0.5, beta);
    let cap = n_max.div_ceil(2) + 1;
    Ok(CurveBasis {
        kind: CurveKind::IntersectingLines,
        weight: spec1.clone(),
        rc1: recurrence(&spec1, cap)?,
        rc2: recurrence(&spec2, cap)?,
        spec1,
        spec2,
        jacobi_params: Some(JacobiLines { alpha, beta, gamma, c_alpha: norm(alpha), c_beta: norm(beta) }),
        n_max,
    })
}

/// `Y_{n,which}(p)` with orthonormal univariate factors.
pub fn eval_y(basis: &CurveBasis, n: usize, which: u8, p: CurvePoint) -> Result<f64> {
    basis.eval_y_with(n, which, p, Normalization::Orthonormal)
}

/// Interpolation nodes for `n` reflected pairs.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    /// `P+(t_j)` for `j < n`, then `P-(t_j)`.
    pub points: Vec<CurvePoint>,
    /// Gauss nodes `t_j` of `μ1`.
    pub params: Vec<f64>,
    /// Gauss weights of `μ1`.
    pub weights: Vec<f64>,
}

/// The `2n` interpolation points and the Gauss weights of `μ1`.
pub fn interpolation_nodes(basis: &CurveBasis, n: usize) -> Result<NodeSet> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if basis.jacobi_params.is_some() {
        return Err(Error::NotImplemented("interpolation for the two-weight Jacobi lines basis".into()));
    }
    let rule = basis.param_rule(1, n)?;
    let mut points: Vec<CurvePoint> = rule.nodes.iter().map(|&t| basis.kind.point(t, true)).collect();
    points.extend(rule.nodes.iter().map(|&t| basis.kind.point(t, false)));
    Ok(NodeSet { points, params: rule.nodes, weights: rule.weights })
}

/// Differential operators whose eigenfunctions are basis members.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PdeOperator {
    /// `x u_xy + y u_yy + (1/2 - y) u_y - x u_x`, eigenvalue `-n`, parabola with `w(x²) = e^{-x²}`.
    HermiteParabola,
    /// `u_xx - 2x u_x - 2y u_y`, eigenvalue `-2n`, parallel lines with the Hermite weight.
    HermiteParallel,
    /// `x u_xx + (α+1-x) u_x - y u_y`, eigenvalue `-n`, parallel lines with a Laguerre weight.
    LaguerreParallel,
}

/// `|L Y + λ_n Y|` at `p`.
pub fn pde_residual(basis: &CurveBasis, op: PdeOperator, n: usize, which: u8, p: CurvePoint) -> Result<f64> {
    basis.check_degree(n, which)?;
    let mismatch = || Error::MismatchedOperator(format!("{op:?} with {:?} on the {}", basis.weight.kind, basis.kind.name()));
    if basis.jacobi_params.is_some() {
        return Err(mismatch());
    }
    let CurvePoint { x, y } = p;
    let derivs = |rc: &RecurrenceTable, m: usize, t: f64| {
        let (v, d1, d2) = rc.orthonormal_derivs_all(m, t);
        (v[m], d1[m], d2[m])
    };
    match op {
        PdeOperator::HermiteParabola => {
            if basis.kind != CurveKind::Parabola || basis.weight.kind != (WeightKind::Laguerre { alpha: 0.0 }) {
                return Err(mismatch());
            }
            // u = P(y) or u = x Q(y)
            let (u, ux, uy, uxy, uyy) = if which == 1 {
                let (v, d1, d2) = derivs(&basis.rc1, n, y);
                (v, 0.0, d1, 0.0, d2)
            } else {
                let (v, d1, d2) = derivs(&basis.rc2, n - 1, y);
                (x * v, v, x * d1, d1, x * d2)
            };
            let lu = x * uxy + y * uyy + (0.5 - y) * uy - x * ux;
            Ok((lu + n as f64 * u).abs())
        }
        PdeOperator::HermiteParallel | PdeOperator::LaguerreParallel => {
            if basis.kind != CurveKind::ParallelLines {
                return Err(mismatch());
            }
            // u = P(x) or u = y P_{n-1}(x)
            let (u, ux, uxx, uy) = if which == 1 {
                let (v, d1, d2) = derivs(&basis.rc1, n, x);
                (v, d1, d2, 0.0)
            } else {
                let (v, d1, d2) = derivs(&basis.rc2, n - 1, x);
                (y * v, y * d1, y * d2, v)
            };
            match (op, &basis.weight.kind) {
                (PdeOperator::HermiteParallel, WeightKind::Hermite) => {
                    let lu = uxx - 2.0 * x * ux - 2.0 * y * uy;
                    Ok((lu + 2.0 * n as f64 * u).abs())
                }
                (PdeOperator::LaguerreParallel, WeightKind::Laguerre { alpha }) => {
                    let lu = x * uxx + (alpha + 1.0 - x) * ux - y * uy;
                    Ok((lu + n as f64 * u).abs())
                }
                _ => Err(mismatch()),
            }
        }
    }
}

impl CurveBasis {
    /// Same curve and weight with room for degrees `0..n_max`.
    pub fn with_capacity(&self, n_max: usize) -> Result<CurveBasis> {
        if n_max <= self.n_max {
            return Ok(self.clone());
        }
        match self.jacobi_params {
            Some(j) => build_jacobi_lines(j.alpha, j.beta, j.gamma, n_max),
            None => build_basis(self.kind, self.weight.clone(), n_max),
        }
    }

    pub fn measure_factor(&self) -> f64 {
        self.kind.measure_factor()
    }

    fn check_degree(&self, n: usize, which: u8) -> Result<()> {
        if which != 1 && which != 2 {
            return Err(Error::InvalidArgument(format!("which = {which} must be 1 or 2")));
        }
        if which == 2 && n == 0 {
            return Err(Error::DegreeOutOfRange { n, max: self.n_max });
        }
        if n >= self.n_max {
            return Err(Error::DegreeOutOfRange { n, max: self.n_max });
        }
        Ok(())
    }

    /// `order`-point Gauss rule for `μ1` (`which = 1`) or `μ2` (`which = 2`).
    pub fn param_rule(&self, which: u8, order: usize) -> Result<QuadratureRule> {
        let (rc, spec) = if which == 1 { (&self.rc1, &self.spec1) } else { (&self.rc2, &self.spec2) };
        if order <= rc.len() {
            gauss_rule(rc, order)
        } else {
            gauss_rule(&recurrence(spec, order)?, order)
        }
    }

    /// Recurrence for `μ1` or `μ2` with at least `len` entries.
    pub fn param_recurrence(&self, which: u8, len: usize) -> Result<RecurrenceTable> {
        let (rc, spec) = if which == 1 { (&self.rc1, &self.spec1) } else { (&self.rc2, &self.spec2) };
        if len <= rc.len() {
            Ok(rc.clone())
        } else {
            recurrence(spec, len)
        }
    }

    fn uni(&self, rc: &RecurrenceTable, m: usize, t: f64, norm: Normalization) -> f64 {
        match norm {
            Normalization::Orthonormal => rc.orthonormal(m, t),
            Normalization::Monic => rc.monic(m, t),
        }
    }

    /// `Y_{n,which}(p)` in the requested normalization.
    pub fn eval_y_with(&self, n: usize, which: u8, p: CurvePoint, norm: Normalization) -> Result<f64> {
        self.check_degree(n, which)?;
        if let Some(j) = self.jacobi_params {
            return Ok(jacobi_lines_y(&j, n, which, p));
        }
        let CurvePoint { x, y } = p;
        let p1 = |t: f64| self.uni(&self.rc1, n, t, norm);
        let q = |t: f64| self.uni(&self.rc2, n - 1, t, norm);
        Ok(match (self.kind, which) {
            (CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } | CurveKind::ParallelLines, 1) => p1(x),
            (CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } | CurveKind::ParallelLines, _) => y * q(x),
            (CurveKind::Parabola | CurveKind::HyperbolaTwoBranch, 1) => p1(y),
            (CurveKind::Parabola | CurveKind::HyperbolaTwoBranch, _) => x * q(y),
            (CurveKind::IntersectingLines, 1) => p1(x) + p1(y) - p1(0.0),
            (CurveKind::IntersectingLines, _) => x * q(x) - y * q(y),
        })
    }

    /// `<Y_{n,which}, Y_{n,which}>` in the requested normalization.
    pub fn norm_sq(&self, n: usize, which: u8, norm: Normalization) -> Result<f64> {
        self.check_degree(n, which)?;
        if self.jacobi_params.is_some() {
            return Err(Error::NotImplemented("closed-form norms for the two-weight Jacobi lines basis".into()));
        }
        let two_c = 2.0 * self.measure_factor();
        Ok(match norm {
            Normalization::Orthonormal => two_c,
            Normalization::Monic if which == 1 => two_c * self.rc1.h[n],
            Normalization::Monic => two_c * self.rc2.h[n - 1],
        })
    }

    /// Values of the first `count` members of the ordered basis
    /// `Y_{0,1}, Y_{1,2}, Y_{1,1}, Y_{2,2}, ...` at `p`.
    pub fn ordered_values(&self, count: usize, p: CurvePoint) -> Result<Vec<f64>> {
        if self.jacobi_params.is_some() {
            return Err(Error::NotImplemented("ordered basis for the two-weight Jacobi lines basis".into()));
        }
        let need = count / 2 + 1;
        if need > self.n_max {
            return Err(Error::DegreeOutOfRange { n: need - 1, max: self.n_max });
        }
        let CurvePoint { x, y } = p;
        let k1 = (count.max(1) - 1) / 2;
        let k2 = count / 2;
        let (a, b): (Vec<f64>, Vec<f64>) = match self.kind {
            CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } | CurveKind::ParallelLines => (
                self.rc1.orthonormal_all(k1, x),
                self.rc2.orthonormal_all(k2.max(1) - 1, x).into_iter().map(|v| y * v).collect(),
            ),
            CurveKind::Parabola | CurveKind::HyperbolaTwoBranch => (
                self.rc1.orthonormal_all(k1, y),
                self.rc2.orthonormal_all(k2.max(1) - 1, y).into_iter().map(|v| x * v).collect(),
            ),
            CurveKind::IntersectingLines => {
                let (px, py, p0) = (
                    self.rc1.orthonormal_all(k1, x),
                    self.rc1.orthonormal_all(k1, y),
                    self.rc1.orthonormal_all(k1, 0.0),
                );
                let (qx, qy) = (self.rc2.orthonormal_all(k2.max(1) - 1, x), self.rc2.orthonormal_all(k2.max(1) - 1, y));
                (
                    (0..=k1).map(|k| px[k] + py[k] - p0[k]).collect(),
                    (0..qx.len()).map(|k| x * qx[k] - y * qy[k]).collect(),
                )
            }
        };
        Ok((0..count).map(|i| if i % 2 == 0 { a[i / 2] } else { b[i / 2] }).collect())
    }

    /// Curve inner product `<f, g>` using an `order`-point rule for `μ1`.
    pub fn inner_product<F, G>(&self, f: F, g: G, order: usize) -> Result<f64>
    where
        F: Fn(CurvePoint) -> f64,
        G: Fn(CurvePoint) -> f64,
    {
        if let Some(j) = self.jacobi_params {
            return Ok(jacobi_lines_inner_product(&j, &f, &g, order));
        }
        let rule = self.param_rule(1, order)?;
        let c = self.measure_factor();
        Ok(c * rule
            .nodes
            .iter()
            .zip(&rule.weights)
            .map(|(&t, &w)| {
                let (pp, pm) = (self.kind.point(t, true), self.kind.point(t, false));
                w * (f(pp) * g(pp) + f(pm) * g(pm))
            })
            .sum::<f64>())
    }
}

fn shifted_jacobi_p(n: usize, a: f64, b: f64, s: f64) -> f64 {
    jacobi_p(n, a, b, 1.0 - 2.0 * s)
}

/// Two-weight Jacobi lines basis. Odd degrees `2k+1 ≥ 3` use
/// `Y_{2k+1,2} = x P_k^{(γ+1/2,α)}(x²) - y P_k^{(γ+1/2,β)}(y²)`.
fn jacobi_lines_y(j: &JacobiLines, n: usize, which: u8, p: CurvePoint) -> f64 {
    let JacobiLines { alpha, beta, gamma, .. } = *j;
    let CurvePoint { x, y } = p;
    let (x2, y2) = (x * x, y * y);
    match (n, which) {
        (0, _) => 1.0,
        (1, 1) => x,
        (1, _) => y,
        _ if n % 2 == 0 => {
            let k = n / 2;
            if which == 1 {
                shifted_jacobi_p(k, gamma - 0.5, alpha, x2) + shifted_jacobi_p(k, gamma - 0.5, beta, y2)
                    - binom_shift(k, gamma - 0.5)
            } else {
                let ka = pochhammer(gamma + alpha + 1.5, k) / pochhammer(alpha + 1.0, k - 1);
                let kb = pochhammer(gamma + beta + 1.5, k) / pochhammer(beta + 1.0, k - 1);
                ka * x2 * shifted_jacobi_p(k - 1, gamma + 1.5, alpha, x2)
                    - kb * y2 * shifted_jacobi_p(k - 1, gamma + 1.5, beta, y2)
            }
        }
        _ => {
            let k = n / 2;
            let pa = shifted_jacobi_p(k, gamma + 0.5, alpha, x2);
            let pb = shifted_jacobi_p(k, gamma + 0.5, beta, y2);
            if which == 1 {
                (x + y) * (pa + pb - binom_shift(k, gamma + 0.5))
            } else {
                x * pa - y * pb
            }
        }
    }
}

/// `c_{α,γ} ∫ f g (x,0) |x|^{2γ}(1-x²)^α dx + c_{β,γ} ∫ f g (0,y) |y|^{2γ}(1-y²)^β dy` over `[-1, 1]`.
fn jacobi_lines_inner_product<F, G>(j: &JacobiLines, f: &F, g: &G, order: usize) -> f64
where
    F: Fn(CurvePoint) -> f64,
    G: Fn(CurvePoint) -> f64,
{
    let line = |a: f64, c: f64, on_x: bool| {
        // s = t², ∫_{-1}^{1} F(t) |t|^{2γ}(1-t²)^a dt = ½ ∫_0^1 [F(√s) + F(-√s)] s^{γ-1/2}(1-s)^a ds
        let spec = WeightSpec::shifted_jacobi(j.gamma - 0.5, a);
        let rule = recurrence(&spec, order).and_then(|rc| gauss_rule(&rc, order)).expect("Jacobi rule");
        let pt = |t: f64| if on_x { CurvePoint::new(t, 0.0) } else { CurvePoint::new(0.0, t) };
        c * 0.5
            * rule
                .nodes
                .iter()
                .zip(&rule.weights)
                .map(|(&s, &w)| {
                    let r = s.sqrt();
                    w * (f(pt(r)) * g(pt(r)) + f(pt(-r)) * g(pt(-r)))
                })
                .sum::<f64>()
    };
    line(j.alpha, j.c_alpha, true) + line(j.beta, j.c_beta, false)
}
