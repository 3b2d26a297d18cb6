//! Univariate orthogonal polynomials: recurrence coefficients, evaluation,
//! derivatives, Gaussian quadrature and weight modifications.

use libm::{lgamma as ln_gamma, tgamma as gamma};

use crate::error::{Error, Result};
use crate::linalg::tridiagonal_eigen_first;

/// Closed or half-infinite interval `[a, b]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    pub a: f64,
    pub b: f64,
}

impl Interval {
    pub fn new(a: f64, b: f64) -> Self {
        Self { a, b }
    }

    pub fn real_line() -> Self {
        Self::new(f64::NEG_INFINITY, f64::INFINITY)
    }

    pub fn is_finite(&self) -> bool {
        self.a.is_finite() && self.b.is_finite()
    }

    pub fn contains(&self, t: f64) -> bool {
        t >= self.a && t <= self.b
    }

    pub fn midpoint(&self) -> f64 {
        if self.is_finite() {
            0.5 * (self.a + self.b)
        } else if self.a == f64::NEG_INFINITY && self.b == f64::INFINITY {
            0.0
        } else {
            f64::NAN
        }
    }

    pub fn half_width(&self) -> f64 {
        0.5 * (self.b - self.a)
    }
}

/// Nonnegative factor multiplying a base weight.
#[derive(Debug, Clone, PartialEq)]
pub enum Multiplier {
    /// Polynomial with coefficients in ascending powers.
    Polynomial(Vec<f64>),
    /// `(c0 + c1 t)^exponent`, positive on the support of the base weight.
    LinearPower { c0: f64, c1: f64, exponent: f64 },
    /// Product of factors.
    Product(Vec<Multiplier>),
}

impl Multiplier {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            Multiplier::Polynomial(c) => c.iter().rev().fold(0.0, |acc, &ck| acc * t + ck),
            Multiplier::LinearPower { c0, c1, exponent } => (c0 + c1 * t).powf(*exponent),
            Multiplier::Product(fs) => fs.iter().map(|f| f.eval(t)).product(),
        }
    }

    /// Degree for polynomial multipliers, `None` otherwise.
    pub fn degree(&self) -> Option<usize> {
        match self {
            Multiplier::Polynomial(c) => Some(c.iter().rposition(|&v| v != 0.0).unwrap_or(0)),
            Multiplier::LinearPower { .. } | Multiplier::Product(_) => None,
        }
    }
}

/// Family of a univariate weight.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightKind {
    /// `(1-u)^alpha (1+u)^beta` with `u` the affine image of the support onto `[-1, 1]`.
    Jacobi { alpha: f64, beta: f64 },
    /// Constant weight 1.
    Legendre,
    /// `(1-u^2)^(-1/2)` with `u` as for `Jacobi`.
    ChebyshevT,
    /// `t^alpha e^(-t)` on `[0, inf)`.
    Laguerre { alpha: f64 },
    /// `e^(-t^2)` on the real line.
    Hermite,
    /// `t^gamma (1-t)^alpha` on `[0, 1]`.
    ShiftedJacobi { gamma: f64, alpha: f64 },
    /// `multiplier(t) * base(t)`.
    Modified { base: Box<WeightSpec>, multiplier: Multiplier },
}

/// A weight function together with its support.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightSpec {
    pub kind: WeightKind,
    pub support: Interval,
}

impl WeightSpec {
    pub fn jacobi(alpha: f64, beta: f64) -> Self {
        Self::jacobi_on(alpha, beta, -1.0, 1.0)
    }

    pub fn jacobi_on(alpha: f64, beta: f64, a: f64, b: f64) -> Self {
        Self { kind: WeightKind::Jacobi { alpha, beta }, support: Interval::new(a, b) }
    }

    pub fn legendre(a: f64, b: f64) -> Self {
        Self { kind: WeightKind::Legendre, support: Interval::new(a, b) }
    }

    pub fn chebyshev_t(a: f64, b: f64) -> Self {
        Self { kind: WeightKind::ChebyshevT, support: Interval::new(a, b) }
    }

    pub fn laguerre(alpha: f64) -> Self {
        Self { kind: WeightKind::Laguerre { alpha }, support: Interval::new(0.0, f64::INFINITY) }
    }

    pub fn hermite() -> Self {
        Self { kind: WeightKind::Hermite, support: Interval::real_line() }
    }

    pub fn shifted_jacobi(gamma: f64, alpha: f64) -> Self {
        Self { kind: WeightKind::ShiftedJacobi { gamma, alpha }, support: Interval::new(0.0, 1.0) }
    }

    pub fn modified(base: WeightSpec, multiplier: Multiplier) -> Self {
        let support = base.support;
        Self { kind: WeightKind::Modified { base: Box::new(base), multiplier }, support }
    }

    pub fn is_classical(&self) -> bool {
        !matches!(self.kind, WeightKind::Modified { .. })
    }

    /// Weight density at `t` (zero outside the support).
    pub fn density(&self, t: f64) -> f64 {
        if !self.support.contains(t) {
            return 0.0;
        }
        let u = || (t - self.support.midpoint()) / self.support.half_width();
        match &self.kind {
            WeightKind::Jacobi { alpha, beta } => {
                let u = u();
                (1.0 - u).powf(*alpha) * (1.0 + u).powf(*beta)
            }
            WeightKind::Legendre => 1.0,
            WeightKind::ChebyshevT => {
                let u = u();
                1.0 / (1.0 - u * u).sqrt()
            }
            WeightKind::Laguerre { alpha } => t.powf(*alpha) * (-t).exp(),
            WeightKind::Hermite => (-t * t).exp(),
            WeightKind::ShiftedJacobi { gamma, alpha } => t.powf(*gamma) * (1.0 - t).powf(*alpha),
            WeightKind::Modified { base, multiplier } => multiplier.eval(t) * base.density(t),
        }
    }

    /// True when the weight is symmetric about the midpoint of its support.
    pub fn is_even(&self) -> bool {
        match &self.kind {
            WeightKind::Jacobi { alpha, beta } => alpha == beta,
            WeightKind::Legendre | WeightKind::ChebyshevT | WeightKind::Hermite => true,
            WeightKind::Laguerre { .. } => false,
            WeightKind::ShiftedJacobi { gamma, alpha } => gamma == alpha,
            WeightKind::Modified { base, multiplier } => {
                base.is_even()
                    && self.support.midpoint() == 0.0
                    && match multiplier {
                        Multiplier::Polynomial(c) => c.iter().skip(1).step_by(2).all(|&v| v == 0.0),
                        Multiplier::LinearPower { c1, .. } => *c1 == 0.0,
                        Multiplier::Product(_) => false,
                    }
            }
        }
    }
}

/// Monic three-term recurrence `p_{k+1} = (x - alpha_k) p_k - beta_k p_{k-1}`.
///
/// `beta[0]` is the total mass and `h[k] = beta[0] * ... * beta[k]` is the
/// squared norm of the monic `p_k`. For long tables `h` may overflow; the
/// orthonormal evaluators never use it.
#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceTable {
    pub alpha: Vec<f64>,
    pub beta: Vec<f64>,
    pub h: Vec<f64>,
}

impl RecurrenceTable {
    pub fn new(alpha: Vec<f64>, beta: Vec<f64>) -> Self {
        assert_eq!(alpha.len(), beta.len());
        let mut h = Vec::with_capacity(beta.len());
        let mut acc = 1.0;
        for &b in &beta {
            acc *= b;
            h.push(acc);
        }
        Self { alpha, beta, h }
    }

    pub fn len(&self) -> usize {
        self.alpha.len()
    }

    pub fn is_empty(&self) -> bool {
        self.alpha.is_empty()
    }

    pub fn mass(&self) -> f64 {
        self.beta[0]
    }

    /// Monic `p_n(x)`.
    pub fn monic(&self, n: usize, x: f64) -> f64 {
        eval_poly(self, n, x)
    }

    /// Orthonormal `p_n(x) / sqrt(h_n)`.
    pub fn orthonormal(&self, n: usize, x: f64) -> f64 {
        eval_orthonormal(self, n, x)
    }

    /// Orthonormal values for degrees `0..=n`.
    pub fn orthonormal_all(&self, n: usize, x: f64) -> Vec<f64> {
        let mut out = Vec::with_capacity(n + 1);
        let mut prev = 0.0;
        let mut cur = 1.0 / self.beta[0].sqrt();
        out.push(cur);
        for k in 0..n {
            let sb = if k == 0 { 0.0 } else { self.beta[k].sqrt() };
            let next = ((x - self.alpha[k]) * cur - sb * prev) / self.beta[k + 1].sqrt();
            prev = cur;
            cur = next;
            out.push(cur);
        }
        out
    }

    /// Orthonormal values with first and second derivatives for degrees `0..=n`.
    pub fn orthonormal_derivs_all(&self, n: usize, x: f64) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let mut p = vec![0.0; n + 1];
        let mut d1 = vec![0.0; n + 1];
        let mut d2 = vec![0.0; n + 1];
        p[0] = 1.0 / self.beta[0].sqrt();
        for k in 0..n {
            let sb = self.beta[k + 1].sqrt();
            let (pm, dm, d2m, sbk) = if k == 0 {
                (0.0, 0.0, 0.0, 0.0)
            } else {
                (p[k - 1], d1[k - 1], d2[k - 1], self.beta[k].sqrt())
            };
            let xa = x - self.alpha[k];
            p[k + 1] = (xa * p[k] - sbk * pm) / sb;
            d1[k + 1] = (xa * d1[k] + p[k] - sbk * dm) / sb;
            d2[k + 1] = (xa * d2[k] + 2.0 * d1[k] - sbk * d2m) / sb;
        }
        (p, d1, d2)
    }

    /// The `n x n` Jacobi matrix as (diagonal, off-diagonal).
    pub fn jacobi_matrix(&self, n: usize) -> (Vec<f64>, Vec<f64>) {
        (self.alpha[..n].to_vec(), self.beta[1..n].iter().map(|b| b.sqrt()).collect())
    }
}

/// Gaussian quadrature rule.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
    pub order: usize,
}

impl QuadratureRule {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F) -> f64 {
        self.nodes.iter().zip(&self.weights).map(|(&t, &w)| w * f(t)).sum()
    }

    pub fn mass(&self) -> f64 {
        self.weights.iter().sum()
    }
}

fn check_param(name: &str, v: f64) -> Result<()> {
    if v > -1.0 && v.is_finite() {
        Ok(())
    } else {
        Err(Error::UnsupportedParameter(format!("{name} = {v} must exceed -1")))
    }
}

fn jacobi_mass(alpha: f64, beta: f64) -> f64 {
    let ab = alpha + beta;
    if ab + 2.0 < 100.0 {
        2f64.powf(ab + 1.0) * gamma(alpha + 1.0) * gamma(beta + 1.0) / gamma(ab + 2.0)
    } else {
        ((ab + 1.0) * std::f64::consts::LN_2 + ln_gamma(alpha + 1.0) + ln_gamma(beta + 1.0)
            - ln_gamma(ab + 2.0))
            .exp()
    }
}

fn jacobi_on_reference(alpha: f64, beta: f64, n_max: usize) -> Result<(Vec<f64>, Vec<f64>)> {
    check_param("alpha", alpha)?;
    check_param("beta", beta)?;
    let ab = alpha + beta;
    let mut a = Vec::with_capacity(n_max);
    let mut b = Vec::with_capacity(n_max);
    for k in 0..n_max {
        let kf = k as f64;
        if k == 0 {
            a.push((beta - alpha) / (ab + 2.0));
            b.push(jacobi_mass(alpha, beta));
        } else {
            let s = 2.0 * kf + ab;
            a.push((beta * beta - alpha * alpha) / (s * (s + 2.0)));
            if k == 1 {
                b.push(4.0 * (1.0 + alpha) * (1.0 + beta) / ((2.0 + ab).powi(2) * (3.0 + ab)));
            } else {
                b.push(
                    4.0 * kf * (kf + alpha) * (kf + beta) * (kf + ab)
                        / (s * s * (s + 1.0) * (s - 1.0)),
                );
            }
        }
    }
    Ok((a, b))
}

fn affine(a: Vec<f64>, mut b: Vec<f64>, iv: Interval) -> RecurrenceTable {
    let s = iv.half_width();
    let m = iv.midpoint();
    let a = a.into_iter().map(|v| s * v + m).collect();
    for (k, bk) in b.iter_mut().enumerate() {
        *bk *= if k == 0 { s } else { s * s };
    }
    RecurrenceTable::new(a, b)
}

/// Closed-form monic recurrence for a classical weight, mapped to its support.
pub fn classical_recurrence(spec: &WeightSpec, n_max: usize) -> Result<RecurrenceTable> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be at least 1".into()));
    }
    let iv = spec.support;
    let finite_support = || {
        if iv.is_finite() && iv.a < iv.b {
            Ok(())
        } else {
            Err(Error::UnsupportedParameter(format!("support [{}, {}] must be finite and ordered", iv.a, iv.b)))
        }
    };
    match &spec.kind {
        WeightKind::Jacobi { alpha, beta } => {
            finite_support()?;
            let (a, b) = jacobi_on_reference(*alpha, *beta, n_max)?;
            Ok(affine(a, b, iv))
        }
        WeightKind::Legendre => {
            finite_support()?;
            let (a, b) = jacobi_on_reference(0.0, 0.0, n_max)?;
            Ok(affine(a, b, iv))
        }
        WeightKind::ChebyshevT => {
            finite_support()?;
            let (a, b) = jacobi_on_reference(-0.5, -0.5, n_max)?;
            Ok(affine(a, b, iv))
        }
        WeightKind::Laguerre { alpha } => {
            check_param("alpha", *alpha)?;
            let a = (0..n_max).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
            let b = (0..n_max)
                .map(|k| if k == 0 { gamma(alpha + 1.0) } else { k as f64 * (k as f64 + alpha) })
                .collect();
            Ok(RecurrenceTable::new(a, b))
        }
        WeightKind::Hermite => {
            let a = vec![0.0; n_max];
            let b = (0..n_max)
                .map(|k| if k == 0 { std::f64::consts::PI.sqrt() } else { k as f64 / 2.0 })
                .collect();
            Ok(RecurrenceTable::new(a, b))
        }
        WeightKind::ShiftedJacobi { gamma, alpha } => {
            let (a, mut b) = jacobi_on_reference(*alpha, *gamma, n_max)?;
            let a = a.into_iter().map(|v| 0.5 * (v + 1.0)).collect();
            for (k, bk) in b.iter_mut().enumerate() {
                *bk /= if k == 0 { 2f64.powf(alpha + gamma + 1.0) } else { 4.0 };
            }
            Ok(RecurrenceTable::new(a, b))
        }
        WeightKind::Modified { .. } => {
            Err(Error::UnsupportedParameter("modified weights have no closed-form recurrence".into()))
        }
    }
}

/// Recurrence for any weight: closed form for classical families, discretized
/// Stieltjes for modified ones.
pub fn recurrence(spec: &WeightSpec, n_max: usize) -> Result<RecurrenceTable> {
    match &spec.kind {
        WeightKind::Modified { base, multiplier } => match multiplier {
            Multiplier::Polynomial(c) => {
                let deg = multiplier.degree().unwrap_or(0);
                let order = n_max + deg.div_ceil(2) + 1;
                let base_rc = recurrence(base, order)?;
                let rule = gauss_rule(&base_rc, order)?;
                stieltjes_modified(&rule, c, n_max)
            }
            _ => adaptive_modified(base, multiplier, n_max),
        },
        _ => classical_recurrence(spec, n_max),
    }
}

fn adaptive_modified(base: &WeightSpec, m: &Multiplier, n_max: usize) -> Result<RecurrenceTable> {
    let mut order = 2 * n_max + 16;
    let mut prev: Option<RecurrenceTable> = None;
    loop {
        let base_rc = recurrence(base, order)?;
        let rule = gauss_rule(&base_rc, order)?;
        let w: Vec<f64> = rule.nodes.iter().zip(&rule.weights).map(|(&t, &wt)| wt * m.eval(t)).collect();
        if let Some(i) = w.iter().position(|v| !(*v >= 0.0)) {
            return Err(Error::NegativeMultiplier { node: rule.nodes[i], value: m.eval(rule.nodes[i]) });
        }
        let rc = stieltjes_discrete(&rule.nodes, &w, n_max)?;
        if let Some(p) = &prev {
            let scale = rc.alpha.iter().chain(&rc.beta[1..]).fold(1.0f64, |s, v| s.max(v.abs()));
            let diff = rc
                .alpha
                .iter()
                .zip(&p.alpha)
                .chain(rc.beta.iter().zip(&p.beta))
                .fold(0.0f64, |d, (x, y)| d.max((x - y).abs()));
            let mass_diff = (rc.beta[0] - p.beta[0]).abs() / rc.beta[0];
            if diff <= 1e-14 * scale && mass_diff <= 1e-14 {
                return Ok(rc);
            }
        }
        if order > 8192 {
            return Err(Error::InsufficientQuadratureOrder { have: order, need: 2 * order });
        }
        prev = Some(rc);
        order *= 2;
    }
}

/// Monic `p_n(x)`. Extrapolation outside the support is allowed.
pub fn eval_poly(rc: &RecurrenceTable, n: usize, x: f64) -> f64 {
    assert!(n <= rc.len(), "degree {n} exceeds recurrence length {}", rc.len());
    let mut prev = 0.0;
    let mut cur = 1.0;
    for k in 0..n {
        let next = (x - rc.alpha[k]) * cur - if k == 0 { 0.0 } else { rc.beta[k] * prev };
        prev = cur;
        cur = next;
    }
    cur
}

/// Orthonormal `p_n(x) / sqrt(h_n)`, evaluated without forming `h_n`.
pub fn eval_orthonormal(rc: &RecurrenceTable, n: usize, x: f64) -> f64 {
    assert!(n < rc.len(), "degree {n} exceeds recurrence length {}", rc.len());
    let mut prev = 0.0;
    let mut cur = 1.0 / rc.beta[0].sqrt();
    for k in 0..n {
        let sb = if k == 0 { 0.0 } else { rc.beta[k].sqrt() };
        let next = ((x - rc.alpha[k]) * cur - sb * prev) / rc.beta[k + 1].sqrt();
        prev = cur;
        cur = next;
    }
    cur
}

/// Derivative of order 1 or 2 of the monic `p_n` at `x`.
pub fn eval_poly_deriv(rc: &RecurrenceTable, n: usize, x: f64, order: u8) -> f64 {
    assert!(n <= rc.len(), "degree {n} exceeds recurrence length {}", rc.len());
    assert!(order == 1 || order == 2, "derivative order must be 1 or 2");
    let (mut p0, mut p1) = (0.0, 1.0);
    let (mut d0, mut d1) = (0.0, 0.0);
    let (mut s0, mut s1) = (0.0, 0.0);
    for k in 0..n {
        let b = if k == 0 { 0.0 } else { rc.beta[k] };
        let xa = x - rc.alpha[k];
        let p2 = xa * p1 - b * p0;
        let d2 = xa * d1 + p1 - b * d0;
        let s2 = xa * s1 + 2.0 * d1 - b * s0;
        (p0, p1) = (p1, p2);
        (d0, d1) = (d1, d2);
        (s0, s1) = (s1, s2);
    }
    if order == 1 {
        d1
    } else {
        s1
    }
}

/// Derivative of order 1 or 2 of the orthonormal `p_n` at `x`.
pub fn eval_orthonormal_deriv(rc: &RecurrenceTable, n: usize, x: f64, order: u8) -> f64 {
    assert!(n < rc.len(), "degree {n} exceeds recurrence length {}", rc.len());
    assert!(order == 1 || order == 2, "derivative order must be 1 or 2");
    let (_, d1, d2) = rc.orthonormal_derivs_all(n, x);
    if order == 1 {
        d1[n]
    } else {
        d2[n]
    }
}

/// `n`-point Gaussian rule from the eigen-decomposition of the Jacobi matrix.
pub fn gauss_rule(rc: &RecurrenceTable, n: usize) -> Result<QuadratureRule> {
    if n == 0 || n > rc.len() {
        return Err(Error::InsufficientQuadratureOrder { have: rc.len(), need: n.max(1) });
    }
    let (d, e) = rc.jacobi_matrix(n);
    let (nodes, z) = tridiagonal_eigen_first(&d, &e)?;
    let weights = z.iter().map(|v| rc.beta[0] * v * v).collect();
    Ok(QuadratureRule { nodes, weights, order: n })
}

/// Orthonormal Stieltjes procedure for the discrete measure `sum_j w_j delta(t - t_j)`.
pub fn stieltjes_discrete(nodes: &[f64], weights: &[f64], n_max: usize) -> Result<RecurrenceTable> {
    if n_max == 0 || n_max > nodes.len() {
        return Err(Error::InsufficientQuadratureOrder { have: nodes.len(), need: n_max.max(1) });
    }
    let mass: f64 = weights.iter().sum();
    if !(mass > 0.0) {
        return Err(Error::InvalidArgument("discrete measure has no mass".into()));
    }
    let n = nodes.len();
    let mut alpha = Vec::with_capacity(n_max);
    let mut beta = Vec::with_capacity(n_max);
    beta.push(mass);
    let mut q_prev = vec![0.0; n];
    let mut q = vec![1.0 / mass.sqrt(); n];
    let mut r = vec![0.0; n];
    for k in 0..n_max {
        let a: f64 = (0..n).map(|j| weights[j] * nodes[j] * q[j] * q[j]).sum();
        alpha.push(a);
        if k + 1 == n_max {
            break;
        }
        let sb = if k == 0 { 0.0 } else { beta[k].sqrt() };
        for j in 0..n {
            r[j] = (nodes[j] - a) * q[j] - sb * q_prev[j];
        }
        let b: f64 = (0..n).map(|j| weights[j] * r[j] * r[j]).sum();
        if !(b > 0.0) {
            return Err(Error::InsufficientQuadratureOrder { have: n, need: k + 2 });
        }
        beta.push(b);
        let sbn = b.sqrt();
        for j in 0..n {
            q_prev[j] = q[j];
            q[j] = r[j] / sbn;
        }
    }
    Ok(RecurrenceTable::new(alpha, beta))
}

/// Recurrence for `multiplier(t) * (base measure)` by the discretized
/// Stieltjes procedure on the nodes of `base_rule`.
///
/// `multiplier` holds polynomial coefficients in ascending powers. The
/// result is exact up to rounding when the rule has at least
/// `n_max + ceil(deg / 2) + 1` nodes.
pub fn stieltjes_modified(
    base_rule: &QuadratureRule,
    multiplier: &[f64],
    n_max: usize,
) -> Result<RecurrenceTable> {
    let m = Multiplier::Polynomial(multiplier.to_vec());
    let deg = m.degree().unwrap_or(0);
    let need = n_max + deg.div_ceil(2) + 1;
    if base_rule.nodes.len() < need {
        return Err(Error::InsufficientQuadratureOrder { have: base_rule.nodes.len(), need });
    }
    let mut w = Vec::with_capacity(base_rule.nodes.len());
    for (&t, &wt) in base_rule.nodes.iter().zip(&base_rule.weights) {
        let v = m.eval(t);
        if v < 0.0 {
            return Err(Error::NegativeMultiplier { node: t, value: v });
        }
        w.push(wt * v);
    }
    stieltjes_discrete(&base_rule.nodes, &w, n_max)
}

/// Monic degree-`n` orthogonal polynomial for `(x - c) * (base measure)`
/// (or `(c - x)`, which has the same monic family), evaluated at `x`.
///
/// Uses the kernel form `(p_{n+1}(x) p_n(c) - p_{n+1}(c) p_n(x)) / ((x - c) p_n(c))`
/// and the derivative limit when `|x - c| < 1e-14`.
pub fn christoffel_linear(rc_base: &RecurrenceTable, c: f64, n: usize, x: f64) -> Result<f64> {
    if n + 1 > rc_base.len() {
        return Err(Error::DegreeOutOfRange { n: n + 1, max: rc_base.len() + 1 });
    }
    let pn_c = eval_poly(rc_base, n, c);
    if pn_c == 0.0 || !pn_c.is_finite() {
        return Err(Error::InvalidArgument(format!("p_{n}(c) vanishes at c = {c}")));
    }
    let pn1_c = eval_poly(rc_base, n + 1, c);
    if (x - c).abs() < 1e-14 {
        let dn1 = eval_poly_deriv(rc_base, n + 1, c, 1);
        let dn = eval_poly_deriv(rc_base, n, c, 1);
        return Ok((dn1 * pn_c - pn1_c * dn) / pn_c);
    }
    let pn1_x = eval_poly(rc_base, n + 1, x);
    let pn_x = eval_poly(rc_base, n, x);
    Ok((pn1_x * pn_c - pn1_c * pn_x) / ((x - c) * pn_c))
}

/// Jacobi polynomial `P_n^{(a,b)}(u)` in the standard normalization
/// `P_n(1) = binom(n + a, n)`.
pub fn jacobi_p(n: usize, a: f64, b: f64, u: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut p0 = 1.0;
    let mut p1 = 0.5 * (a - b) + 0.5 * (a + b + 2.0) * u;
    for k in 2..=n {
        let k = k as f64;
        let s = 2.0 * k + a + b;
        let c1 = 2.0 * k * (k + a + b) * (s - 2.0);
        let c2 = (s - 1.0) * (s * (s - 2.0) * u + a * a - b * b);
        let c3 = 2.0 * (k + a - 1.0) * (k + b - 1.0) * s;
        let p2 = (c2 * p1 - c3 * p0) / c1;
        p0 = p1;
        p1 = p2;
    }
    p1
}

/// Generalized binomial coefficient `binom(n + a, n)`.
pub fn binom_shift(n: usize, a: f64) -> f64 {
    (1..=n).fold(1.0, |acc, k| acc * (a + k as f64) / k as f64)
}

/// Pochhammer symbol `(a)_n`.
pub fn pochhammer(a: f64, n: usize) -> f64 {
    (0..n).fold(1.0, |acc, k| acc * (a + k as f64))
}
