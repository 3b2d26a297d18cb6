//! Interpolation on curves at reflected Gauss nodes.
//!
//! With `n` pairs of nodes `P±(t_j)` the interpolation space is spanned by
//! the `2n` ordered members
//!
//! ```text
//! φ_0 = Y_{0,1}, φ_1 = Y_{1,2}, φ_2 = Y_{1,1}, ..., φ_{2n-2} = Y_{n-1,1}, φ_{2n-1} = Y_{n,2}
//! ```
//!
//! which are orthogonal under `<f, g>_M = c Σ_j λ_j (f g (P+_j) + f g (P-_j))`,
//! so coefficients are plain discrete projections.
//!
//! Two nodes coincide on intersecting lines when `t_j = 0`, which happens
//! for odd `n` with a symmetric weight; such a node set is rejected with
//! [`Error::ZeroDiscreteNorm`].

use nalgebra::DMatrix;

use crate::curve_bases::{interpolation_nodes, CurveBasis, CurveKind, CurvePoint, NodeSet};
use crate::error::{Error, Result};
use crate::expansion::{decompose, CurveFunction};
use crate::linalg::condition_number;

/// The discrete inner product attached to a node set.
#[derive(Debug, Clone, PartialEq)]
pub struct DiscreteInnerProduct {
    /// `P+(t_j)` then `P-(t_j)`.
    pub nodes: Vec<CurvePoint>,
    /// Gauss weights `λ_j`, shared by each reflected pair.
    pub weights: Vec<f64>,
    /// Curve measure factor `c`.
    pub factor: f64,
}

impl DiscreteInnerProduct {
    pub fn new(basis: &CurveBasis, set: &NodeSet) -> Self {
        Self { nodes: set.points.clone(), weights: set.weights.clone(), factor: basis.measure_factor() }
    }

    /// `<f, g>_M` from values at `nodes`.
    pub fn apply(&self, f: &[f64], g: &[f64]) -> f64 {
        let n = self.weights.len();
        self.factor
            * self
                .weights
                .iter()
                .enumerate()
                .map(|(j, w)| w * (f[j] * g[j] + f[j + n] * g[j + n]))
                .sum::<f64>()
    }
}

/// Coefficients in the ordered basis together with the nodes they interpolate.
#[derive(Debug, Clone)]
pub struct Interpolant {
    pub basis: CurveBasis,
    /// Pair count; the interpolant has `2n` coefficients.
    pub n: usize,
    pub coeffs: Vec<f64>,
    pub nodes: Vec<CurvePoint>,
    /// Gauss nodes `t_j` of the parameter measure.
    pub params: Vec<f64>,
}

/// Evaluation matrix with rows at the nodes and columns `φ_0..φ_{2n-1}`.
fn values_at(basis: &CurveBasis, nodes: &[CurvePoint], count: usize) -> Result<Vec<Vec<f64>>> {
    nodes.iter().map(|p| basis.ordered_values(count, *p)).collect()
}

/// The Gram matrix of the ordered basis under the discrete inner product.
pub fn discrete_gram(basis: &CurveBasis, n: usize) -> Result<DMatrix<f64>> {
    let basis = basis.with_capacity(n + 1)?;
    let set = interpolation_nodes(&basis, n)?;
    let ip = DiscreteInnerProduct::new(&basis, &set);
    let vals = values_at(&basis, &set.points, 2 * n)?;
    let col = |k: usize| vals.iter().map(|r| r[k]).collect::<Vec<f64>>();
    let cols: Vec<Vec<f64>> = (0..2 * n).map(col).collect();
    Ok(DMatrix::from_fn(2 * n, 2 * n, |a, b| ip.apply(&cols[a], &cols[b])))
}

/// Interpolant of `samples` given at `interpolation_nodes(basis, n)`.
pub fn interp_coeffs(basis: &CurveBasis, samples: &[f64], n: usize) -> Result<Interpolant> {
    if samples.len() != 2 * n {
        return Err(Error::InvalidArgument(format!("expected {} samples, got {}", 2 * n, samples.len())));
    }
    let basis = basis.with_capacity(n + 1)?;
    let set = interpolation_nodes(&basis, n)?;
    let ip = DiscreteInnerProduct::new(&basis, &set);
    let vals = values_at(&basis, &set.points, 2 * n)?;
    let mut coeffs = Vec::with_capacity(2 * n);
    for k in 0..2 * n {
        let phi: Vec<f64> = vals.iter().map(|r| r[k]).collect();
        let nrm = ip.apply(&phi, &phi);
        // members are orthonormal in the continuous product, whose norms are 2c
        if !(nrm > 1e-12 * 2.0 * ip.factor) {
            return Err(Error::ZeroDiscreteNorm { index: k });
        }
        coeffs.push(ip.apply(&phi, samples) / nrm);
    }
    Ok(Interpolant { basis, n, coeffs, nodes: set.points, params: set.params })
}

/// Interpolant of `f` at the `2n` nodes.
pub fn interpolate(basis: &CurveBasis, f: &CurveFunction, n: usize) -> Result<Interpolant> {
    let basis = basis.with_capacity(n + 1)?;
    let set = interpolation_nodes(&basis, n)?;
    let samples: Vec<f64> = set.points.iter().map(|p| f.at(*p)).collect();
    interp_coeffs(&basis, &samples, n)
}

/// `Σ_k c_k φ_k(p)`.
pub fn eval_interpolant(interp: &Interpolant, p: CurvePoint) -> f64 {
    interp.eval(p)
}

impl Interpolant {
    pub fn eval(&self, p: CurvePoint) -> f64 {
        let v = self.basis.ordered_values(self.coeffs.len(), p).expect("capacity fixed at construction");
        self.coeffs.iter().zip(v).map(|(c, v)| c * v).sum()
    }

    /// Coefficient of `Y_{k,which}`, if it is part of the interpolation space.
    pub fn coeff(&self, k: usize, which: u8) -> Option<f64> {
        let i = match which {
            1 if k < self.n => 2 * k,
            2 if k >= 1 && k <= self.n => 2 * k - 1,
            _ => return None,
        };
        Some(self.coeffs[i])
    }
}

/// Barycentric Lagrange interpolation on distinct nodes.
#[derive(Debug, Clone)]
pub struct Barycentric {
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl Barycentric {
    pub fn new(nodes: &[f64]) -> Self {
        let lo = nodes.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = nodes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let scale = if hi > lo { 4.0 / (hi - lo) } else { 1.0 };
        let mut w: Vec<f64> = nodes
            .iter()
            .enumerate()
            .map(|(j, &tj)| {
                let prod = nodes.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, &tk)| scale * (tj - tk));
                1.0 / prod.product::<f64>()
            })
            .collect();
        let m = w.iter().fold(0.0f64, |m, v| m.max(v.abs()));
        if m > 0.0 && m.is_finite() {
            w.iter_mut().for_each(|v| *v /= m);
        }
        Self { nodes: nodes.to_vec(), weights: w }
    }

    pub fn eval(&self, values: &[f64], t: f64) -> f64 {
        let (mut num, mut den) = (0.0, 0.0);
        for ((&tj, &wj), &fj) in self.nodes.iter().zip(&self.weights).zip(values) {
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

/// `ℒ_n f (p) = L_n(f_e)(t) + o L_n(f_o)(t)` with univariate Lagrange
/// interpolation at the `n` Gauss nodes of the parameter measure.
///
/// This is the same function as the quadrature-coefficient interpolant but
/// stays accurate where the orthonormal values are very large.
#[derive(Debug, Clone)]
pub struct LagrangeForm {
    pub kind: CurveKind,
    bary: Barycentric,
    even: Vec<f64>,
    odd: Vec<f64>,
}

impl LagrangeForm {
    /// From samples at `interpolation_nodes(basis, n)`, `P+` first.
    pub fn from_samples(basis: &CurveBasis, samples: &[f64], n: usize) -> Result<Self> {
        if samples.len() != 2 * n {
            return Err(Error::InvalidArgument(format!("expected {} samples, got {}", 2 * n, samples.len())));
        }
        let set = interpolation_nodes(basis, n)?;
        let kind = basis.kind;
        let mut even = Vec::with_capacity(n);
        let mut odd = Vec::with_capacity(n);
        for j in 0..n {
            let o = kind.odd(set.points[j]);
            if o == 0.0 {
                return Err(Error::ZeroDiscreteNorm { index: 2 * j + 1 });
            }
            even.push(0.5 * (samples[j] + samples[j + n]));
            odd.push(0.5 * (samples[j] - samples[j + n]) / o);
        }
        Ok(Self { kind, bary: Barycentric::new(&set.params), even, odd })
    }

    pub fn eval(&self, p: CurvePoint) -> f64 {
        let le = |t| self.bary.eval(&self.even, t);
        let lo = |t| self.bary.eval(&self.odd, t);
        match self.kind {
            CurveKind::IntersectingLines => le(p.x) + le(p.y) - le(0.0) + p.x * lo(p.x) - p.y * lo(p.y),
            kind => {
                let t = kind.param(p);
                le(t) + kind.odd(p) * lo(t)
            }
        }
    }
}

/// [`LagrangeForm`] of `f` evaluated at `p`, built from the even and odd
/// parts of `f` at the Gauss nodes.
pub fn lagrange_form(basis: &CurveBasis, f: &CurveFunction, n: usize, p: CurvePoint) -> Result<f64> {
    let set = interpolation_nodes(basis, n)?;
    let pair = decompose(f);
    let lf = LagrangeForm {
        kind: basis.kind,
        bary: Barycentric::new(&set.params),
        even: set.params.iter().map(|&t| pair.f_e(t)).collect(),
        odd: set.params.iter().map(|&t| pair.f_o(t)).collect(),
    };
    Ok(lf.eval(p))
}

/// The `2n × 2n` evaluation matrix of the ordered basis at the nodes.
pub fn vandermonde_matrix(basis: &CurveBasis, n: usize) -> Result<DMatrix<f64>> {
    let basis = basis.with_capacity(n + 1)?;
    let set = interpolation_nodes(&basis, n)?;
    let vals = values_at(&basis, &set.points, 2 * n)?;
    Ok(DMatrix::from_fn(2 * n, 2 * n, |r, c| vals[r][c]))
}

/// 2-norm condition number of [`vandermonde_matrix`].
pub fn vandermonde_condition(basis: &CurveBasis, n: usize) -> Result<f64> {
    condition_number(&vandermonde_matrix(basis, n)?)
}

/// Condition number of the mixed Chebyshev basis
/// `T_j(t), √(t² + ε²) T_j(t)`, `j < n`, at the `2n` Chebyshev points of
/// the first kind on `[-1, 1]`.
///
/// For odd `n` the even columns outnumber the even dimension at the
/// symmetric points, so the matrix is singular.
pub fn naive_condition(eps: f64, n: usize) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let m = 2 * n;
    let pts: Vec<f64> = (0..m).map(|k| (std::f64::consts::PI * (2 * k + 1) as f64 / (2 * m) as f64).cos()).collect();
    let v = DMatrix::from_fn(m, m, |r, c| {
        let t = pts[r];
        let j = (c % n) as f64;
        let tj = (j * t.clamp(-1.0, 1.0).acos()).cos();
        if c < n {
            tj
        } else {
            (t * t + eps * eps).sqrt() * tj
        }
    });
    condition_number(&v)
}
