//! Even/odd splitting of curve functions and Fourier partial sums.
//!
//! For a function `f` on a curve, `f_e(t) = (f(P+) + f(P-)) / 2` and
//! `f_o(t) = (f(P+) - f(P-)) / (2 o(P+))`, so that `f(P±) = f_e(t) ± o f_o(t)`.
//! The partial sum of degree `n` is
//!
//! ```text
//! S_n f = Σ_{k ≤ n} a_k Y_{k,1} + Σ_{1 ≤ k ≤ n} b_k Y_{k,2},
//! a_k = ∫ f_e p_k dμ1,   b_k = ∫ f_o q_{k-1} dμ2,
//! ```
//!
//! with orthonormal `p_k`, `q_k`. Integrals use Gauss rules of order
//! `margin * n` (`margin` defaults to [`DEFAULT_MARGIN`]).

use std::fmt;
use std::sync::Arc;

use crate::curve_bases::{CurveBasis, CurveKind, CurvePoint};
use crate::error::{Error, Result};

/// Default quadrature oversampling factor.
pub const DEFAULT_MARGIN: usize = 4;

/// Offset used for the removable singularity of `f_o` where `o = 0`.
pub const ODD_LIMIT_STEP: f64 = 1e-7;

/// A real function on a curve.
#[derive(Clone)]
pub struct CurveFunction {
    pub curve: CurveKind,
    f: Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>,
}

impl fmt::Debug for CurveFunction {
    fn fmt(&self, fm: &mut fmt::Formatter<'_>) -> fmt::Result {
        fm.debug_struct("CurveFunction").field("curve", &self.curve).finish_non_exhaustive()
    }
}

impl CurveFunction {
    pub fn new<F>(curve: CurveKind, f: F) -> Self
    where
        F: Fn(f64, f64) -> f64 + Send + Sync + 'static,
    {
        Self { curve, f: Arc::new(f) }
    }

    pub fn eval(&self, x: f64, y: f64) -> f64 {
        (self.f)(x, y)
    }

    pub fn at(&self, p: CurvePoint) -> f64 {
        (self.f)(p.x, p.y)
    }
}

/// Which coordinate parameterizes the reflected pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parameter {
    X,
    Y,
    /// `t = x + y` on intersecting lines.
    Diagonal,
}

/// Even and odd parts of a curve function.
#[derive(Debug, Clone)]
pub struct EvenOddPair {
    pub f: CurveFunction,
    pub parameter: Parameter,
}

impl EvenOddPair {
    fn pair(&self, t: f64) -> (f64, f64) {
        let k = self.f.curve;
        (self.f.at(k.point(t, true)), self.f.at(k.point(t, false)))
    }

    pub fn f_e(&self, t: f64) -> f64 {
        let (a, b) = self.pair(t);
        0.5 * (a + b)
    }

    pub fn f_o(&self, t: f64) -> f64 {
        let k = self.f.curve;
        let o = k.odd(k.point(t, true));
        if o.abs() >= ODD_LIMIT_STEP {
            let (a, b) = self.pair(t);
            return 0.5 * (a - b) / o;
        }
        let d = ODD_LIMIT_STEP;
        let f = |x, y| self.f.eval(x, y);
        match k {
            CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } | CurveKind::ParallelLines => {
                (f(t, d) - f(t, -d)) / (2.0 * d)
            }
            CurveKind::Parabola | CurveKind::HyperbolaTwoBranch => (f(d, t) - f(-d, t)) / (2.0 * d),
            CurveKind::IntersectingLines => (f(d, 0.0) - f(-d, 0.0) - f(0.0, d) + f(0.0, -d)) / (4.0 * d),
        }
    }

    /// `f_e(t) ± o f_o(t)`, the value at `P±(t)`.
    pub fn recombine(&self, t: f64, plus: bool) -> f64 {
        let k = self.f.curve;
        let o = k.odd(k.point(t, true));
        let s = if plus { 1.0 } else { -1.0 };
        self.f_e(t) + s * o * self.f_o(t)
    }
}

/// Split `f` into its even and odd parts along the curve.
pub fn decompose(f: &CurveFunction) -> EvenOddPair {
    let parameter = match f.curve {
        CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } | CurveKind::ParallelLines => Parameter::X,
        CurveKind::Parabola | CurveKind::HyperbolaTwoBranch => Parameter::Y,
        CurveKind::IntersectingLines => Parameter::Diagonal,
    };
    EvenOddPair { f: f.clone(), parameter }
}

/// Coefficients of `S_n f` in the basis `{Y_{k,1}}`, `{Y_{k,2}}`.
#[derive(Debug, Clone)]
pub struct Expansion {
    pub basis: CurveBasis,
    pub n: usize,
    /// `a_0, ..., a_n` for `Y_{k,1}`.
    pub even: Vec<f64>,
    /// `b_1, ..., b_n` for `Y_{k,2}`.
    pub odd: Vec<f64>,
}

impl Expansion {
    pub fn eval(&self, p: CurvePoint) -> f64 {
        let v = self.basis.ordered_values(2 * self.n + 1, p).expect("capacity checked in expand");
        let e: f64 = self.even.iter().enumerate().map(|(k, a)| a * v[2 * k]).sum();
        let o: f64 = self.odd.iter().enumerate().map(|(k, b)| b * v[2 * k + 1]).sum();
        e + o
    }

    /// Univariate partial sum `s_n(μ1; f_e)` at `t`.
    pub fn even_part(&self, t: f64) -> f64 {
        let p = self.basis.rc1.orthonormal_all(self.n, t);
        self.even.iter().zip(p).map(|(a, v)| a * v).sum()
    }

    /// Univariate partial sum `s_{n-1}(μ2; f_o)` at `t`.
    pub fn odd_part(&self, t: f64) -> f64 {
        if self.n == 0 {
            return 0.0;
        }
        let q = self.basis.rc2.orthonormal_all(self.n - 1, t);
        self.odd.iter().zip(q).map(|(b, v)| b * v).sum()
    }
}

fn rule_order(n: usize, margin: usize) -> usize {
    (margin * n).max(margin).max(2)
}

/// Fourier coefficients of `f` up to degree `n`, quadrature order `margin * n`.
pub fn expand(basis: &CurveBasis, f: &CurveFunction, n: usize, margin: usize) -> Result<Expansion> {
    if basis.jacobi_params.is_some() {
        return Err(Error::NotImplemented("expansion in the two-weight Jacobi lines basis".into()));
    }
    if f.curve != basis.kind {
        return Err(Error::InvalidArgument(format!("function lives on the {} but the basis on the {}", f.curve.name(), basis.kind.name())));
    }
    let basis = basis.with_capacity(n + 1)?;
    let pair = decompose(f);
    let q = rule_order(n, margin);
    let r1 = basis.param_rule(1, q)?;
    let mut even = vec![0.0; n + 1];
    for (&t, &w) in r1.nodes.iter().zip(&r1.weights) {
        let fe = pair.f_e(t);
        for (a, p) in even.iter_mut().zip(basis.rc1.orthonormal_all(n, t)) {
            *a += w * fe * p;
        }
    }
    let mut odd = vec![0.0; n];
    if n > 0 {
        let r2 = basis.param_rule(2, q)?;
        for (&t, &w) in r2.nodes.iter().zip(&r2.weights) {
            let fo = pair.f_o(t);
            for (b, p) in odd.iter_mut().zip(basis.rc2.orthonormal_all(n - 1, t)) {
                *b += w * fo * p;
            }
        }
    }
    Ok(Expansion { basis, n, even, odd })
}

/// `S_n f (p)` with the default quadrature margin.
pub fn partial_sum(basis: &CurveBasis, f: &CurveFunction, n: usize, p: CurvePoint) -> Result<f64> {
    Ok(expand(basis, f, n, DEFAULT_MARGIN)?.eval(p))
}

/// `(‖f - S_n f‖², ‖f_e - s_n f_e‖²_{μ1} + ‖f_o - s_{n-1} f_o‖²_{μ2})`, the
/// latter scaled by `2c`. The first is a curve integral of the bivariate
/// error, the second a pair of parameter integrals.
pub fn l2_error_identity(basis: &CurveBasis, f: &CurveFunction, n: usize) -> Result<(f64, f64)> {
    l2_error_identity_with(basis, f, n, DEFAULT_MARGIN)
}

pub fn l2_error_identity_with(basis: &CurveBasis, f: &CurveFunction, n: usize, margin: usize) -> Result<(f64, f64)> {
    let ex = expand(basis, f, n, margin)?;
    let q = 4 * rule_order(n, margin) + 40;
    let lhs = ex.basis.inner_product(|p| f.at(p) - ex.eval(p), |p| f.at(p) - ex.eval(p), q)?;
    let pair = decompose(f);
    let r1 = ex.basis.param_rule(1, q)?;
    let r2 = ex.basis.param_rule(2, q)?;
    let e: f64 = r1.integrate(|t| (pair.f_e(t) - ex.even_part(t)).powi(2));
    let o: f64 = r2.integrate(|t| (pair.f_o(t) - ex.odd_part(t)).powi(2));
    Ok((lhs, 2.0 * ex.basis.measure_factor() * (e + o)))
}
