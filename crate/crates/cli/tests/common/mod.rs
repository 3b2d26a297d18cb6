#![allow(dead_code)]

use quadcurve_cli::Bindings;
use rand::Rng;

pub fn fixture_ground_state() -> f64 {
    let text = include_str!("../fixtures/schrodinger_ground_state.txt");
    text.lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .and_then(|l| l.parse().ok())
        .expect("fixture holds one number")
}

/// A random expression over `t`, `x`, `y`, `eps` that stays finite for
/// moderate arguments.
pub fn random_expr<R: Rng>(rng: &mut R, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.25) {
        return match rng.gen_range(0..5) {
            0 => "t".into(),
            1 => "x".into(),
            2 => "y".into(),
            3 => "eps".into(),
            _ => format!("{}", rng.gen_range(0.0..10.0f64)),
        };
    }
    let a = random_expr(rng, depth - 1);
    let b = random_expr(rng, depth - 1);
    match rng.gen_range(0..10) {
        0 => format!("{a} + {b}"),
        1 => format!("{a} - {b}"),
        2 => format!("{a} * {b}"),
        3 => format!("({a}) / (2 + sin({b}))"),
        4 => format!("({a})^2"),
        5 => format!("-{a}"),
        6 => format!("sin({a})"),
        7 => format!("cos({a}) * exp(-abs({b}))"),
        8 => format!("sqrt(1 + ({a})^2)"),
        _ => format!("log(2 + cos({a})) - {b}^3"),
    }
}

pub fn random_bindings<R: Rng>(rng: &mut R) -> Bindings {
    Bindings::new()
        .with("t", rng.gen_range(-2.0..2.0))
        .with("x", rng.gen_range(-2.0..2.0))
        .with("y", rng.gen_range(-2.0..2.0))
        .with("eps", rng.gen_range(0.0..1.0))
}

/// Equal, or both NaN, or within a relative tolerance.
pub fn same_value(a: f64, b: f64) -> bool {
    (a.is_nan() && b.is_nan()) || a == b || (a - b).abs() <= 1e-12 * a.abs().max(b.abs())
}
