//! Subcommand implementations. Each returns a table.

use std::f64::consts::FRAC_PI_2;

use quadcurve::expansion::l2_error_identity_with;
use quadcurve::{
    build_basis, fourier_extension_demo, interpolate, interpolation_nodes, naive_condition,
    schrodinger_eigs, solve_essential_singular, solve_sqrt_singular, sqrt_basis, vandermonde_condition,
    ChebyshevInterpolant, CurveFunction, CurveKind, CurvePoint, Interval, Normalization, PulledBack,
    SchrodingerProblem, SingularKind, SingularProblem, TMap,
};

use crate::config::{display_window, RunConfig};
use crate::expr::{parse_expr, Bindings, Expr, UnboundVariable};
use crate::output::{Cell, Table};
use crate::CliError;

pub const EXAMPLE1: &str = "sin(10*t + 20*sqrt(t^2 + eps^2))";
pub const EXAMPLE2: &str = "sin(t + 2/t)";
pub const WELL: &str = "sqrt(t^2 + eps^2) + (t - 0.1)^2";

/// Parse `src` and check that it only uses `allowed` variables.
pub fn checked_expr(src: &str, allowed: &[&str]) -> Result<Expr, CliError> {
    let e = parse_expr(src)?;
    if let Some(v) = e.variables().into_iter().find(|v| !allowed.contains(&v.as_str())) {
        return Err(UnboundVariable(v).into());
    }
    Ok(e)
}

fn eval(e: &Expr, env: &Bindings) -> f64 {
    e.eval(env).expect("variables checked at parse time")
}

fn grid(a: f64, b: f64, m: usize) -> Vec<f64> {
    if m <= 1 {
        return vec![0.5 * (a + b)];
    }
    (0..m).map(|i| a + (b - a) * i as f64 / (m - 1) as f64).collect()
}

fn n_or(cfg: &RunConfig, default: usize) -> Result<usize, CliError> {
    let n = cfg.n.unwrap_or(default);
    if n == 0 {
        return Err(CliError::Config("n must be positive".into()));
    }
    Ok(n)
}

/// `t` on a curve: `εy` on the one-branch hyperbola when `ε > 0`, `x - y` on
/// the intersecting lines and the two-branch hyperbola, else the parameter.
fn t_of(kind: CurveKind, eps: f64, p: CurvePoint) -> f64 {
    match kind {
        CurveKind::HyperbolaOneBranch { .. } if eps > 0.0 => eps * p.y,
        CurveKind::IntersectingLines => p.x - p.y,
        CurveKind::HyperbolaTwoBranch => TMap::Reciprocal.t_of(p),
        k => k.param(p),
    }
}

/// Nodes and Gauss weights of the interpolation scheme.
pub fn quad(cfg: &RunConfig) -> Result<Table, CliError> {
    let kind = cfg.curve_kind()?;
    let n = n_or(cfg, 10)?;
    let basis = build_basis(kind, cfg.weight_spec(kind)?, n + 1)?;
    let set = interpolation_nodes(&basis, n)?;
    let mut t = Table::new(&["index", "branch", "t", "x", "y", "weight"]);
    for (i, p) in set.points.iter().enumerate() {
        let j = i % n;
        let branch = if i < n { "+" } else { "-" };
        t.push(vec![i.into(), branch.into(), set.params[j].into(), p.x.into(), p.y.into(), set.weights[j].into()]);
    }
    Ok(t)
}

/// `Y_{k,i}` for `k ≤ n` on a grid of parameter values, both branches.
pub fn basis(cfg: &RunConfig) -> Result<Table, CliError> {
    let kind = cfg.curve_kind()?;
    let n = cfg.n.unwrap_or(4);
    let w = cfg.weight_spec(kind)?;
    let (a, b) = display_window(w.support);
    let basis = build_basis(kind, w, n + 1)?;
    let norm = match cfg.get("normalization").unwrap_or("orthonormal") {
        "orthonormal" => Normalization::Orthonormal,
        "monic" => Normalization::Monic,
        other => return Err(CliError::Config(format!("unknown normalization `{other}`"))),
    };
    let mut t = Table::new(&["degree", "which", "branch", "t", "x", "y", "value"]);
    for s in grid(a, b, cfg.usize_or("points", 11)?) {
        for (plus, branch) in [(true, "+"), (false, "-")] {
            let p = kind.point(s, plus);
            for k in 0..=n {
                for which in [1u8, 2] {
                    if k == 0 && which == 2 {
                        continue;
                    }
                    let v = basis.eval_y_with(k, which, p, norm)?;
                    t.push(vec![k.into(), (which as usize).into(), branch.into(), s.into(), p.x.into(), p.y.into(), v.into()]);
                }
            }
        }
    }
    Ok(t)
}

/// Interpolate an expression on a curve: coefficients, node residuals,
/// errors on a grid and the `L²` error of the partial sum.
pub fn interp(cfg: &RunConfig) -> Result<Table, CliError> {
    let kind = cfg.curve_kind()?;
    let n = n_or(cfg, 10)?;
    let eps = cfg.eps.unwrap_or(0.0);
    let e = checked_expr(cfg.get("f").unwrap_or("cos(x) + y"), &["t", "x", "y", "eps"])?;
    let w = cfg.weight_spec(kind)?;
    let (a, b) = display_window(w.support);
    let basis = build_basis(kind, w, n + 1)?;
    let env = move |p: CurvePoint| {
        Bindings::new().with("x", p.x).with("y", p.y).with("eps", eps).with("t", t_of(kind, eps, p))
    };
    let f = {
        let e = e.clone();
        CurveFunction::new(kind, move |x, y| eval(&e, &env(CurvePoint::new(x, y))))
    };
    let it = interpolate(&basis, &f, n)?;
    let mut t = Table::new(&["section", "index", "x", "y", "t", "value", "reference", "error"]);
    for (k, c) in it.coeffs.iter().enumerate() {
        t.push(vec!["coeff".into(), k.into(), Cell::Empty, Cell::Empty, Cell::Empty, (*c).into(), Cell::Empty, Cell::Empty]);
    }
    let row = |section: &str, i: usize, p: CurvePoint| {
        let (v, r) = (it.eval(p), f.at(p));
        vec![section.into(), i.into(), p.x.into(), p.y.into(), t_of(kind, eps, p).into(), v.into(), r.into(), (v - r).abs().into()]
    };
    let mut rows: Vec<Vec<Cell>> = it.nodes.iter().enumerate().map(|(i, p)| row("node", i, *p)).collect();
    let points = grid(a, b, cfg.usize_or("grid", 50)?);
    let m = points.len();
    for (i, s) in points.iter().enumerate() {
        rows.push(row("grid", i, kind.point(*s, true)));
        rows.push(row("grid", i + m, kind.point(*s, false)));
    }
    for r in rows {
        t.push(r);
    }
    let (lhs, rhs) = l2_error_identity_with(&basis, &f, n, cfg.margin)?;
    t.push(vec!["l2".into(), n.into(), Cell::Empty, Cell::Empty, Cell::Empty, lhs.into(), rhs.into(), (lhs - rhs).abs().into()]);
    Ok(t)
}

fn max_err(pb: &PulledBack, f: impl Fn(f64) -> f64, ts: &[f64]) -> Result<f64, CliError> {
    let mut worst = 0.0f64;
    for &t in ts {
        worst = worst.max((pb.eval(t)? - f(t)).abs());
    }
    Ok(worst)
}

/// Max error and coefficient decay over a sweep of `M = 2n`.
pub fn convergence(cfg: &RunConfig) -> Result<Table, CliError> {
    let problem = cfg.get("problem").unwrap_or("sqrt");
    let ms = cfg.list_or("ms", &[20, 40, 60, 80, 100])?;
    if let Some(m) = ms.iter().find(|m| **m < 2 || **m % 2 == 1) {
        return Err(CliError::Config(format!("M = {m} must be even and at least 2")));
    }
    let mut t = Table::new(&["section", "m", "index", "value", "chebyshev"]);
    let eps = cfg.eps.unwrap_or(0.01);
    let solved: Vec<Result<(PulledBack, f64, Option<f64>), CliError>> = match problem {
        "sqrt" => {
            let e = checked_expr(cfg.get("f").unwrap_or(EXAMPLE1), &["t", "eps"])?;
            let f = move |t: f64| eval(&e, &Bindings::new().with("t", t).with("eps", eps));
            let dom = Interval::new(-1.0, 1.0);
            let reference = ChebyshevInterpolant::new(&f, 4000, dom);
            let p = SingularProblem::new(SingularKind::SqrtSingularity { eps }, move |t, _| f(t), dom)?;
            let ts = grid(-1.0, 1.0, 2001);
            let (p, reference, ts) = (&p, &reference, &ts);
            std::thread::scope(|s| {
                let hs: Vec<_> = ms
                    .iter()
                    .map(|&m| {
                        s.spawn(move || {
                            let pb = solve_sqrt_singular(p, m / 2)?;
                            let err = max_err(&pb, |t| reference.eval(t), ts)?;
                            let ch = ChebyshevInterpolant::new(|t| p.eval(t), m, dom);
                            let cerr = ts.iter().map(|&t| (ch.eval(t) - reference.eval(t)).abs()).fold(0.0, f64::max);
                            Ok((pb, err, Some(cerr)))
                        })
                    })
                    .collect();
                hs.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            })
        }
        "essential" => {
            let e = checked_expr(cfg.get("f").unwrap_or(EXAMPLE2), &["t"])?;
            let f = move |t: f64| eval(&e, &Bindings::new().with("t", t));
            let f2d = {
                let f = f.clone();
                CurveFunction::new(CurveKind::HyperbolaTwoBranch, move |x, y| f(TMap::Reciprocal.t_of(CurvePoint::new(x, y))))
            };
            let ts: Vec<f64> = grid(0.5, 3.0, 1001).into_iter().flat_map(|t| [-t, t]).collect();
            let (f, f2d, ts) = (&f, &f2d, &ts);
            std::thread::scope(|s| {
                let hs: Vec<_> = ms
                    .iter()
                    .map(|&m| {
                        s.spawn(move || {
                            let pb = solve_essential_singular(f2d, m / 2)?;
                            let err = max_err(&pb, f, ts)?;
                            Ok((pb, err, None))
                        })
                    })
                    .collect();
                hs.into_iter().map(|h| h.join().expect("worker panicked")).collect()
            })
        }
        other => return Err(CliError::Config(format!("unknown problem `{other}`"))),
    };
    let mut last = None;
    for (m, r) in ms.iter().zip(solved) {
        let (pb, err, cheb) = r?;
        t.push(vec!["error".into(), (*m).into(), Cell::Empty, err.into(), cheb.into()]);
        last = Some((*m, pb));
    }
    if let Some((m, pb)) = last {
        for (k, c) in pb.interp.coeffs.iter().enumerate() {
            t.push(vec!["coeff".into(), m.into(), k.into(), c.abs().into(), Cell::Empty]);
        }
    }
    Ok(t)
}

/// Condition numbers of the orthogonal and the naive mixed bases.
pub fn cond(cfg: &RunConfig) -> Result<Table, CliError> {
    let eps = cfg.eps.unwrap_or(0.005);
    let ns = cfg.list_or("ns", &[10, 20, 40, 80])?;
    let mut t = Table::new(&["n", "orthogonal", "naive"]);
    for n in ns {
        let basis = sqrt_basis(eps, 1.0, n + 1)?;
        let op = vandermonde_condition(&basis, n)?;
        let naive = naive_condition(eps, n).unwrap_or(f64::INFINITY);
        t.push(vec![n.into(), op.into(), naive.into()]);
    }
    Ok(t)
}

/// Eigenvalues and sampled eigenstates of `-h² u'' + V u = λ u`.
pub fn schrodinger(cfg: &RunConfig) -> Result<Table, CliError> {
    let eps = cfg.eps.unwrap_or(0.1);
    let h = cfg.f64_or("h", 0.1)?;
    let r = cfg.f64_or("domain-r", 3.0)?;
    let n = cfg.n.unwrap_or(100);
    let e = checked_expr(cfg.get("potential").unwrap_or(WELL), &["t", "eps"])?;
    let v = move |t: f64| eval(&e, &Bindings::new().with("t", t).with("eps", eps));
    let mut p = SchrodingerProblem::new(h, v, Interval::new(-r, r), eps, n);
    p.n_eigs = cfg.usize_or("neigs", 20)?;
    let res = schrodinger_eigs(&p)?;
    let mut t = Table::new(&["section", "k", "t", "value", "imag", "residual"]);
    for k in 0..res.eigenvalues.len() {
        let resid = res.residuals[k].max(res.boundary[k].0).max(res.boundary[k].1);
        t.push(vec!["eigenvalue".into(), k.into(), Cell::Empty, res.eigenvalues[k].into(), res.imag[k].into(), resid.into()]);
    }
    let states = cfg.usize_or("states", 0)?.min(res.eigenvalues.len());
    let points = grid(-r, r, cfg.usize_or("points", 101)?);
    for k in 0..states {
        for &s in &points {
            t.push(vec!["state".into(), k.into(), s.into(), res.state(k, s).into(), Cell::Empty, Cell::Empty]);
        }
    }
    Ok(t)
}

/// Interpolation of `f(θ)` on the arc `|θ| ≤ h`.
pub fn fourier_ext(cfg: &RunConfig) -> Result<Table, CliError> {
    let h = cfg.f64_or("h", FRAC_PI_2)?;
    let n = n_or(cfg, 20)?;
    let e = checked_expr(cfg.get("f").unwrap_or("exp(t)"), &["t"])?;
    let f = move |t: f64| eval(&e, &Bindings::new().with("t", t));
    let arc = fourier_extension_demo(f.clone(), h, n)?;
    let mut t = Table::new(&["section", "index", "t", "value", "reference", "error"]);
    let mut row = |section: &str, i: usize, th: f64| {
        let (v, r) = (arc.eval(th), f(th));
        t.push(vec![section.into(), i.into(), th.into(), v.into(), r.into(), (v - r).abs().into()]);
    };
    for (i, th) in arc.thetas().into_iter().enumerate() {
        row("node", i, th);
    }
    for (i, th) in grid(-h, h, cfg.usize_or("grid", 201)?).into_iter().enumerate() {
        row("grid", i, th);
    }
    Ok(t)
}
