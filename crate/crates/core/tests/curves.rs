use quadcurve::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

type Rule = Vec<(f64, f64)>;

fn classical_rule(spec: &WeightSpec, n: usize) -> Rule {
    let rc = classical_recurrence(spec, n).unwrap();
    let r = gauss_rule(&rc, n).unwrap();
    r.nodes.into_iter().zip(r.weights).collect()
}

/// Curve integral `∫ f` written directly in the curve's own coordinates,
/// as a list of `(point, weight)` pairs.
fn curve_rule(kind: CurveKind, w: &WeightSpec, n: usize) -> Vec<(CurvePoint, f64)> {
    let p = CurvePoint::new;
    match kind {
        CurveKind::Circle => {
            // ∫ f(cos θ, sin θ) w(cos θ) dθ, periodic trapezoid
            let m = 4 * n + 64;
            (0..m)
                .map(|j| {
                    let th = 2.0 * PI * j as f64 / m as f64;
                    (p(th.cos(), th.sin()), 2.0 * PI / m as f64 * w.density(th.cos()))
                })
                .collect()
        }
        CurveKind::Parabola => {
            // ∫ f(x, x²) w(x²) dx over the preimage of the support
            let xs: Rule = match w.kind {
                WeightKind::Laguerre { alpha } if alpha == 0.0 => classical_rule(&WeightSpec::hermite(), n),
                WeightKind::Legendre => classical_rule(&WeightSpec::legendre(-1.0, 1.0), n),
                _ => panic!("no parabola oracle for {w:?}"),
            };
            xs.into_iter().map(|(x, wt)| (p(x, x * x), wt)).collect()
        }
        CurveKind::HyperbolaTwoBranch => classical_rule(w, n)
            .into_iter()
            .flat_map(|(y, wt)| {
                let x = (1.0 + y * y).sqrt();
                [(p(x, y), wt), (p(-x, y), wt)]
            })
            .collect(),
        CurveKind::HyperbolaOneBranch { .. } => classical_rule(w, n)
            .into_iter()
            .flat_map(|(x, wt)| {
                let y = (x * x - 1.0).sqrt();
                [(p(x, y), wt), (p(x, -y), wt)]
            })
            .collect(),
        CurveKind::IntersectingLines => classical_rule(w, n)
            .into_iter()
            .flat_map(|(t, wt)| [(p(t, 0.0), wt), (p(0.0, t), wt)])
            .collect(),
        CurveKind::ParallelLines => classical_rule(w, n)
            .into_iter()
            .flat_map(|(t, wt)| [(p(t, 1.0), wt), (p(t, -1.0), wt)])
            .collect(),
    }
}

fn cases() -> Vec<(CurveKind, WeightSpec)> {
    vec![
        (CurveKind::Circle, WeightSpec::legendre(-1.0, 1.0)),
        (CurveKind::Circle, WeightSpec::jacobi(1.0, 1.0)),
        (CurveKind::Circle, WeightSpec::jacobi(2.0, 1.0)),
        (CurveKind::Parabola, WeightSpec::laguerre(0.0)),
        (CurveKind::Parabola, WeightSpec::legendre(0.0, 1.0)),
        (CurveKind::HyperbolaTwoBranch, WeightSpec::hermite()),
        (CurveKind::HyperbolaTwoBranch, WeightSpec::legendre(-2.0, 2.0)),
        (CurveKind::HyperbolaOneBranch { l: 2.0 }, WeightSpec::legendre(1.0, 2.0)),
        (CurveKind::HyperbolaOneBranch { l: 5.0 }, WeightSpec::jacobi_on(0.5, -0.5, 1.0, 5.0)),
        (CurveKind::IntersectingLines, WeightSpec::hermite()),
        (CurveKind::IntersectingLines, WeightSpec::legendre(0.0, 1.0)),
        (CurveKind::IntersectingLines, WeightSpec::jacobi_on(1.0, 0.0, -1.0, 1.0)),
        (CurveKind::ParallelLines, WeightSpec::hermite()),
        (CurveKind::ParallelLines, WeightSpec::laguerre(0.5)),
        (CurveKind::ParallelLines, WeightSpec::legendre(-1.0, 1.0)),
    ]
}

/// `(n, which)` pairs for degrees `0..=deg`.
fn members(deg: usize) -> Vec<(usize, u8)> {
    let mut v = vec![(0, 1)];
    for n in 1..=deg {
        v.push((n, 1));
        v.push((n, 2));
    }
    v
}

fn gram(basis: &CurveBasis, deg: usize, norm: Normalization) -> (Vec<(usize, u8)>, Vec<Vec<f64>>) {
    let rule = curve_rule(basis.kind, &basis.weight, 60);
    let idx = members(deg);
    let vals: Vec<Vec<f64>> = rule
        .iter()
        .map(|(p, _)| idx.iter().map(|&(n, i)| basis.eval_y_with(n, i, *p, norm).unwrap()).collect())
        .collect();
    let m = idx.len();
    let mut g = vec![vec![0.0; m]; m];
    for (r, (_, w)) in rule.iter().enumerate() {
        for a in 0..m {
            for b in 0..m {
                g[a][b] += w * vals[r][a] * vals[r][b];
            }
        }
    }
    (idx, g)
}

#[test]
fn continuous_gram_is_diagonal_with_expected_norms() {
    for (kind, w) in cases() {
        let basis = build_basis(kind, w.clone(), 11).unwrap();
        for norm in [Normalization::Orthonormal, Normalization::Monic] {
            let (idx, g) = gram(&basis, 10, norm);
            for a in 0..idx.len() {
                let (n, i) = idx[a];
                let expect = basis.norm_sq(n, i, norm).unwrap();
                assert!(
                    (g[a][a] - expect).abs() < 1e-10 * expect,
                    "{kind:?} {w:?} {norm:?} Y_{n},{i}: {} vs {expect}",
                    g[a][a]
                );
                for b in 0..idx.len() {
                    if a != b {
                        let scale = (g[a][a] * g[b][b]).sqrt();
                        assert!(g[a][b].abs() < 1e-10 * scale, "{kind:?} {w:?} {:?} {:?}: {}", idx[a], idx[b], g[a][b]);
                    }
                }
            }
        }
    }
}

#[test]
fn monic_circle_norm_is_twice_the_parameter_norm() {
    let basis = build_basis(CurveKind::Circle, WeightSpec::legendre(-1.0, 1.0), 8).unwrap();
    // h_n of the Chebyshev-T weight: π, π/2, π/8, π/32, ...
    for n in 1..8 {
        let h = PI / 2f64.powi(2 * n as i32 - 1);
        let got = basis.norm_sq(n, 1, Normalization::Monic).unwrap();
        assert!((got - 2.0 * h).abs() < 1e-13 * h);
    }
}

#[test]
fn inner_product_matches_curve_oracle() {
    for (kind, w) in cases() {
        let basis = build_basis(kind, w.clone(), 6).unwrap();
        let f = |p: CurvePoint| 1.0 + p.x - 0.5 * p.y * p.x + p.y * p.y * 0.25;
        let g = |p: CurvePoint| p.x * p.x - p.y + 0.3;
        let got = basis.inner_product(f, g, 30).unwrap();
        let want: f64 = curve_rule(kind, &w, 60).iter().map(|(p, wt)| wt * f(*p) * g(*p)).sum();
        assert!((got - want).abs() < 1e-11 * want.abs().max(1.0), "{kind:?} {w:?}: {got} vs {want}");
    }
}

#[test]
fn reflection_parity() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for (kind, w) in cases() {
        let basis = build_basis(kind, w, 8).unwrap();
        for _ in 0..10 {
            let x: f64 = rng.gen_range(-2.0..2.0);
            let y: f64 = rng.gen_range(-2.0..2.0);
            let (p, q) = match kind {
                CurveKind::Circle | CurveKind::HyperbolaOneBranch { .. } | CurveKind::ParallelLines => {
                    (CurvePoint::new(x, y), CurvePoint::new(x, -y))
                }
                CurveKind::Parabola | CurveKind::HyperbolaTwoBranch => (CurvePoint::new(x, y), CurvePoint::new(-x, y)),
                CurveKind::IntersectingLines => (CurvePoint::new(x, y), CurvePoint::new(y, x)),
            };
            for n in 1..8 {
                let e1 = eval_y(&basis, n, 1, p).unwrap() - eval_y(&basis, n, 1, q).unwrap();
                let o2 = eval_y(&basis, n, 2, p).unwrap() + eval_y(&basis, n, 2, q).unwrap();
                let s = 1.0 + eval_y(&basis, n, 1, p).unwrap().abs() + eval_y(&basis, n, 2, p).unwrap().abs();
                assert!(e1.abs() < 1e-12 * s && o2.abs() < 1e-12 * s, "{kind:?} n={n}");
            }
        }
    }
}

#[test]
fn circle_legendre_gives_cosines() {
    let basis = build_basis(CurveKind::Circle, WeightSpec::legendre(-1.0, 1.0), 8).unwrap();
    for n in 0..8 {
        let scale = if n == 0 { (1.0 / PI).sqrt() } else { (2.0 / PI).sqrt() };
        for k in 0..13 {
            let th = 0.37 + k as f64 * 0.5;
            let p = CurvePoint::new(th.cos(), th.sin());
            let v = eval_y(&basis, n, 1, p).unwrap();
            assert!((v - scale * (n as f64 * th).cos()).abs() < 1e-13);
            if n > 0 {
                let v2 = eval_y(&basis, n, 2, p).unwrap();
                assert!((v2 - scale * (n as f64 * th).sin()).abs() < 1e-13);
            }
        }
    }
}

fn laguerre(n: usize, a: f64, x: f64) -> f64 {
    let (mut l0, mut l1) = (1.0, 1.0 + a - x);
    if n == 0 {
        return l0;
    }
    for k in 1..n {
        let kf = k as f64;
        let l2 = ((2.0 * kf + 1.0 + a - x) * l1 - (kf + a) * l0) / (kf + 1.0);
        l0 = l1;
        l1 = l2;
    }
    l1
}

fn assert_proportional(a: &[f64], b: &[f64]) {
    let r = a[0] / b[0];
    for (x, y) in a.iter().zip(b) {
        assert!((x - r * y).abs() < 1e-11 * x.abs().max(1.0), "{x} vs {}", r * y);
    }
}

#[test]
fn parabola_hermite_gives_laguerre() {
    let basis = build_basis(CurveKind::Parabola, WeightSpec::laguerre(0.0), 8).unwrap();
    let ys: [f64; 6] = [0.1, 0.5, 1.3, 2.0, 3.7, 5.0];
    for n in 1..8 {
        let got: Vec<f64> = ys.iter().map(|&y| eval_y(&basis, n, 1, CurvePoint::new(y.sqrt(), y)).unwrap()).collect();
        let want: Vec<f64> = ys.iter().map(|&y| laguerre(n, -0.5, y)).collect();
        assert_proportional(&got, &want);
        let got2: Vec<f64> = ys.iter().map(|&y| eval_y(&basis, n, 2, CurvePoint::new(y.sqrt(), y)).unwrap()).collect();
        let want2: Vec<f64> = ys.iter().map(|&y| y.sqrt() * laguerre(n - 1, 0.5, y)).collect();
        assert_proportional(&got2, &want2);
    }
}

#[test]
fn parabola_gegenbauer_half_gives_jacobi() {
    let basis = build_basis(CurveKind::Parabola, WeightSpec::legendre(0.0, 1.0), 8).unwrap();
    let ys: [f64; 5] = [0.05, 0.2, 0.45, 0.7, 0.99];
    for n in 1..8 {
        let got: Vec<f64> = ys.iter().map(|&y| eval_y(&basis, n, 1, CurvePoint::new(y.sqrt(), y)).unwrap()).collect();
        let want: Vec<f64> = ys.iter().map(|&y| univariate_op::jacobi_p(n, 0.0, -0.5, 2.0 * y - 1.0)).collect();
        assert_proportional(&got, &want);
    }
}

#[test]
fn constant_member_normalizes_to_one() {
    for (kind, w) in cases() {
        let basis = build_basis(kind, w, 3).unwrap();
        let p0 = kind.point(0.9 * basis.rc1.alpha[0] + 0.1, true);
        let y0 = eval_y(&basis, 0, 1, p0).unwrap();
        let one = basis.inner_product(|_| 1.0, |_| 1.0, 4).unwrap();
        assert!((y0 * one.sqrt() / basis.norm_sq(0, 1, Normalization::Orthonormal).unwrap().sqrt() - 1.0).abs() < 1e-13);
    }
}

#[test]
fn two_branch_second_family_is_odd_in_x() {
    let basis = build_basis(CurveKind::HyperbolaTwoBranch, WeightSpec::hermite(), 6).unwrap();
    for n in 1..6 {
        for y in [-1.5, 0.0, 0.7] {
            let x = (1.0f64 + y * y).sqrt();
            let a = eval_y(&basis, n, 2, CurvePoint::new(x, y)).unwrap();
            let b = eval_y(&basis, n, 2, CurvePoint::new(-x, y)).unwrap();
            assert_eq!(a, -b);
        }
    }
}

#[test]
fn nodes_lie_on_curves() {
    for (kind, w) in cases() {
        let basis = build_basis(kind, w, 25).unwrap();
        for n in [1, 2, 7, 25] {
            let nodes = interpolation_nodes(&basis, n).unwrap();
            assert_eq!(nodes.points.len(), 2 * n);
            for p in &nodes.points {
                assert!(kind.contains(*p, 1e-12), "{kind:?} {p:?}");
            }
        }
    }
}

#[test]
fn circle_two_pair_nodes_are_chebyshev_roots() {
    let basis = build_basis(CurveKind::Circle, WeightSpec::legendre(-1.0, 1.0), 4).unwrap();
    let nodes = interpolation_nodes(&basis, 2).unwrap();
    assert!((nodes.params[0] + FRAC_1_SQRT_2).abs() < 1e-15);
    assert!((nodes.params[1] - FRAC_1_SQRT_2).abs() < 1e-15);
}

#[test]
fn hermite_lines_two_pair_nodes() {
    let basis = build_basis(CurveKind::IntersectingLines, WeightSpec::hermite(), 4).unwrap();
    let nodes = interpolation_nodes(&basis, 2).unwrap();
    let r = FRAC_1_SQRT_2;
    let want = [(-r, 0.0), (r, 0.0), (0.0, -r), (0.0, r)];
    for (p, (x, y)) in nodes.points.iter().zip(want) {
        assert!((p.x - x).abs() < 1e-15 && (p.y - y).abs() < 1e-15);
    }
}

#[test]
fn one_branch_nodes_use_the_right_branch() {
    let basis = build_basis(CurveKind::HyperbolaOneBranch { l: 3.0 }, WeightSpec::legendre(1.0, 3.0), 10).unwrap();
    let nodes = interpolation_nodes(&basis, 5).unwrap();
    for (j, t) in nodes.params.iter().enumerate() {
        assert_eq!(nodes.points[j].x, *t);
        assert!((nodes.points[j].y - (t * t - 1.0).sqrt()).abs() < 1e-15);
        assert_eq!(nodes.points[j + 5].y, -nodes.points[j].y);
    }
}

#[test]
fn one_branch_corollary_weight() {
    for (alpha, a) in [(0.0, 1.0), (0.5, 0.5), (-0.5, 2.0), (1.5, 1.2)] {
        let w = WeightSpec::jacobi_on(alpha, alpha, -a, a);
        let w0 = one_branch_weight(&w).unwrap();
        let l = (1.0f64 + a * a).sqrt();
        let basis = build_basis(CurveKind::HyperbolaOneBranch { l }, w0, 11).unwrap();
        // ∫ f g (√(1+y²), y) w(y) dy
        let rule = classical_rule(&w, 400);
        let idx = members(10);
        let vals: Vec<Vec<f64>> = rule
            .iter()
            .map(|&(y, _)| {
                let p = CurvePoint::new((1.0 + y * y).sqrt(), y);
                idx.iter().map(|&(n, i)| eval_y(&basis, n, i, p).unwrap()).collect()
            })
            .collect();
        for a_ in 0..idx.len() {
            for b_ in 0..idx.len() {
                let g: f64 = rule.iter().zip(&vals).map(|(&(_, wt), v)| wt * v[a_] * v[b_]).sum();
                let want = if a_ == b_ { 2.0 } else { 0.0 };
                assert!((g - want).abs() < 1e-10, "alpha={alpha} a={a} {:?} {:?}: {g}", idx[a_], idx[b_]);
            }
        }
    }
}

#[test]
fn incompatible_weights_are_rejected() {
    let bad = [
        (CurveKind::Circle, WeightSpec::chebyshev_t(-1.0, 1.0)),
        (CurveKind::Circle, WeightSpec::hermite()),
        (CurveKind::Parabola, WeightSpec::hermite()),
        (CurveKind::HyperbolaOneBranch { l: 2.0 }, WeightSpec::legendre(0.0, 2.0)),
        (CurveKind::HyperbolaOneBranch { l: 2.0 }, WeightSpec::legendre(1.0, 3.0)),
    ];
    for (k, w) in bad {
        assert!(matches!(build_basis(k, w, 4), Err(Error::IncompatibleWeight(_))), "{k:?}");
    }
}

#[test]
fn pde_eigenfunctions() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let par_h = build_basis(CurveKind::ParallelLines, WeightSpec::hermite(), 7).unwrap();
    let par_l = build_basis(CurveKind::ParallelLines, WeightSpec::laguerre(0.0), 7).unwrap();
    let par_l2 = build_basis(CurveKind::ParallelLines, WeightSpec::laguerre(1.5), 7).unwrap();
    let parab = build_basis(CurveKind::Parabola, WeightSpec::laguerre(0.0), 7).unwrap();
    for _ in 0..10 {
        let x: f64 = rng.gen_range(-1.5..1.5);
        let sg = if rng.gen_bool(0.5) { 1.0 } else { -1.0 };
        let xl: f64 = rng.gen_range(0.0..4.0);
        for n in 0..=6 {
            for which in [1u8, 2] {
                if which == 2 && n == 0 {
                    continue;
                }
                let checks = [
                    (&par_h, PdeOperator::HermiteParallel, CurvePoint::new(x, sg)),
                    (&par_l, PdeOperator::LaguerreParallel, CurvePoint::new(xl, sg)),
                    (&par_l2, PdeOperator::LaguerreParallel, CurvePoint::new(xl, sg)),
                    (&parab, PdeOperator::HermiteParabola, CurvePoint::new(x, x * x)),
                ];
                for (b, op, p) in checks {
                    let r = pde_residual(b, op, n, which, p).unwrap();
                    let u = eval_y(b, n, which, p).unwrap().abs();
                    assert!(r < 1e-8 * (1.0 + n as f64 * u), "{op:?} n={n} which={which}: {r}");
                }
            }
        }
    }
}

#[test]
fn pde_examples() {
    let parab = build_basis(CurveKind::Parabola, WeightSpec::laguerre(0.0), 7).unwrap();
    assert!(pde_residual(&parab, PdeOperator::HermiteParabola, 3, 2, CurvePoint::new(0.5, 0.25)).unwrap() < 1e-8);
    assert_eq!(pde_residual(&parab, PdeOperator::HermiteParabola, 0, 1, CurvePoint::new(0.5, 0.25)).unwrap(), 0.0);
    let par_l = build_basis(CurveKind::ParallelLines, WeightSpec::laguerre(0.0), 7).unwrap();
    assert!(pde_residual(&par_l, PdeOperator::LaguerreParallel, 4, 1, CurvePoint::new(1.3, 1.0)).unwrap() < 1e-8);
    let par_h = build_basis(CurveKind::ParallelLines, WeightSpec::hermite(), 7).unwrap();
    assert_eq!(pde_residual(&par_h, PdeOperator::HermiteParallel, 0, 1, CurvePoint::new(0.3, -1.0)).unwrap(), 0.0);
}

#[test]
fn pde_mismatch_is_an_error() {
    let circle = build_basis(CurveKind::Circle, WeightSpec::legendre(-1.0, 1.0), 5).unwrap();
    let par_h = build_basis(CurveKind::ParallelLines, WeightSpec::hermite(), 5).unwrap();
    let p = CurvePoint::new(0.0, 1.0);
    assert!(matches!(pde_residual(&circle, PdeOperator::HermiteParallel, 2, 1, p), Err(Error::MismatchedOperator(_))));
    assert!(matches!(pde_residual(&par_h, PdeOperator::LaguerreParallel, 2, 1, p), Err(Error::MismatchedOperator(_))));
    assert!(matches!(pde_residual(&par_h, PdeOperator::HermiteParabola, 2, 1, p), Err(Error::MismatchedOperator(_))));
}

fn jacobi_lines_cases() -> Vec<(f64, f64, f64)> {
    vec![(0.0, 0.0, 0.0), (0.5, 1.5, 0.25), (-0.5, 2.0, 1.0), (1.0, 0.0, -0.25)]
}

#[test]
fn jacobi_lines_orthogonal_across_degrees() {
    for (a, b, g) in jacobi_lines_cases() {
        let basis = build_jacobi_lines(a, b, g, 11).unwrap();
        let idx = members(10);
        for &(m, i) in &idx {
            for &(n, j) in &idx {
                let ip = basis
                    .inner_product(|p| eval_y(&basis, m, i, p).unwrap(), |p| eval_y(&basis, n, j, p).unwrap(), 30)
                    .unwrap();
                if m != n {
                    let nm = basis.inner_product(|p| eval_y(&basis, m, i, p).unwrap().powi(2), |_| 1.0, 30).unwrap();
                    let nn = basis.inner_product(|p| eval_y(&basis, n, j, p).unwrap().powi(2), |_| 1.0, 30).unwrap();
                    assert!(ip.abs() < 1e-10 * (nm * nn).sqrt(), "({a},{b},{g}) Y{m},{i} Y{n},{j}: {ip}");
                }
            }
        }
    }
}

#[test]
fn jacobi_lines_even_cross_product() {
    for (a, b, g) in jacobi_lines_cases() {
        let basis = build_jacobi_lines(a, b, g, 11).unwrap();
        for n in 1..=5usize {
            let ip = basis
                .inner_product(|p| eval_y(&basis, 2 * n, 1, p).unwrap(), |p| eval_y(&basis, 2 * n, 2, p).unwrap(), 30)
                .unwrap();
            let nf = n as f64;
            let fact: f64 = (1..n).map(|k| k as f64).product();
            let want = (b - a) * univariate_op::pochhammer(g + 0.5, n + 1)
                / ((2.0 * nf + g + a + 0.5) * (2.0 * nf + g + b + 0.5) * fact);
            assert!((ip - want).abs() < 1e-10 * want.abs().max(1.0), "({a},{b},{g}) n={n}: {ip} vs {want}");
        }
    }
}

#[test]
fn jacobi_lines_constant_has_unit_norm_per_line() {
    let basis = build_jacobi_lines(0.5, 1.5, 0.25, 4).unwrap();
    let one = basis.inner_product(|_| 1.0, |_| 1.0, 10).unwrap();
    assert!((one - 2.0).abs() < 1e-13);
}
