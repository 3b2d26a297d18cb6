//! Small dense and tridiagonal linear algebra kernels.

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Maximum implicit QL sweeps spent on a single eigenvalue.
pub const MAX_QL_SWEEPS: usize = 50;

/// Eigenvalues of the symmetric tridiagonal matrix with diagonal `diag` and
/// off-diagonal `off` (length `diag.len() - 1`), together with the first
/// component of each normalized eigenvector.
///
/// Implicit QL with Wilkinson-type shifts. Results are sorted by eigenvalue.
pub fn tridiagonal_eigen_first(diag: &[f64], off: &[f64]) -> Result<(Vec<f64>, Vec<f64>)> {
    let n = diag.len();
    if n == 0 {
        return Ok((Vec::new(), Vec::new()));
    }
    assert_eq!(off.len() + 1, n, "off-diagonal length must be n - 1");
    let mut d = diag.to_vec();
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut sweeps = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            sweeps += 1;
            if sweeps > MAX_QL_SWEEPS {
                return Err(Error::EigensolverFailure { index: l, sweeps: MAX_QL_SWEEPS });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut i = m;
            let mut deflated = false;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let fz = z[i + 1];
                z[i + 1] = s * z[i] + c * fz;
                z[i] = c * z[i] - s * fz;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut idx: Vec<usize> = (0..n).collect();
    idx.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    Ok((idx.iter().map(|&i| d[i]).collect(), idx.iter().map(|&i| z[i]).collect()))
}

/// 2-norm condition number of a square matrix.
///
/// The largest singular value comes from power iteration on `VᵀV`, the
/// smallest from inverse iteration using LU solves with `V` and `Vᵀ`.
pub fn condition_number(v: &DMatrix<f64>) -> Result<f64> {
    let n = v.nrows();
    if n == 0 || n != v.ncols() {
        return Err(Error::InvalidArgument("condition number needs a square matrix".into()));
    }
    let lu = v.clone().lu();
    if !lu.is_invertible() {
        return Err(Error::SingularMatrix);
    }
    let vt_lu = v.transpose().lu();
    let vtv = v.transpose() * v;

    let start = || {
        let mut x = nalgebra::DVector::from_fn(n, |i, _| 1.0 + 0.1 * ((i * 7 + 3) % 11) as f64);
        x.normalize_mut();
        x
    };

    let mut x = start();
    let mut big = 0.0;
    for _ in 0..2000 {
        let y = &vtv * &x;
        let lam = y.norm();
        if lam == 0.0 {
            return Err(Error::SingularMatrix);
        }
        x = y / lam;
        let done = (lam - big).abs() <= 1e-13 * lam;
        big = lam;
        if done {
            break;
        }
    }

    let mut x = start();
    let mut small_inv = 0.0;
    for _ in 0..2000 {
        let w = vt_lu.solve(&x).ok_or(Error::SingularMatrix)?;
        let y = lu.solve(&w).ok_or(Error::SingularMatrix)?;
        let lam = y.norm();
        if !lam.is_finite() {
            return Err(Error::SingularMatrix);
        }
        x = y / lam;
        let done = (lam - small_inv).abs() <= 1e-13 * lam;
        small_inv = lam;
        if done {
            break;
        }
    }
    Ok((big * small_inv).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tridiagonal_two_by_two() {
        let (ev, z) = tridiagonal_eigen_first(&[0.0, 0.0], &[1.0]).unwrap();
        assert!((ev[0] + 1.0).abs() < 1e-15 && (ev[1] - 1.0).abs() < 1e-15);
        assert!((z[0] * z[0] - 0.5).abs() < 1e-15);
    }

    #[test]
    fn tridiagonal_matches_dense() {
        let d = [1.0, -2.0, 0.5, 3.0, 0.0];
        let e = [0.3, 1.2, -0.7, 0.01];
        let (ev, z) = tridiagonal_eigen_first(&d, &e).unwrap();
        let m = DMatrix::from_fn(5, 5, |i, j| {
            if i == j {
                d[i]
            } else if i + 1 == j {
                e[i]
            } else if j + 1 == i {
                e[j]
            } else {
                0.0
            }
        });
        let sym = m.symmetric_eigen();
        let mut dense: Vec<(f64, f64)> =
            (0..5).map(|k| (sym.eigenvalues[k], sym.eigenvectors[(0, k)].powi(2))).collect();
        dense.sort_by(|a, b| a.0.total_cmp(&b.0));
        for k in 0..5 {
            assert!((ev[k] - dense[k].0).abs() < 1e-13);
            assert!((z[k] * z[k] - dense[k].1).abs() < 1e-13);
        }
    }

    #[test]
    fn condition_of_diagonal() {
        let m = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 4.0, 0.5]));
        assert!((condition_number(&m).unwrap() - 8.0).abs() < 1e-9);
    }
}
