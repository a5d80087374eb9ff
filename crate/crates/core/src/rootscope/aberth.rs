//! Simultaneous root finding (Aberth–Ehrlich) in double precision.

use std::f64::consts::TAU;

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::polyring::IntPoly;

/// Default certificate tolerance for [`find_roots`].
pub const DEFAULT_TOL: f64 = 1e-12;
/// Aberth sweeps before falling back to companion eigenvalues.
pub const MAX_ITER: usize = 500;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// All complex roots of `f` with multiplicity, sorted by real then
/// imaginary part.
///
/// Every returned `z` satisfies `|f(z)| <= tol * sum |a_i| |z|^i`.
pub fn find_roots(f: &IntPoly, tol: f64) -> Result<Vec<Complex64>> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidArgument(format!("tolerance must be positive, got {tol}")));
    }
    let (core, zeros) = f.bar_reduce()?;
    let mut roots = vec![ZERO; zeros];
    let a = core.to_f64s();
    let found = match a.len() {
        1 => Vec::new(),
        2 => vec![Complex64::new(-a[0] / a[1], 0.0)],
        _ => match aberth(&a, tol) {
            Some(z) => z,
            None => companion(&a, tol).ok_or_else(|| Error::Convergence { poly: core.to_text() })?,
        },
    };
    roots.extend(found);
    roots.sort_by(|x, y| x.re.total_cmp(&y.re).then(x.im.total_cmp(&y.im)));
    Ok(roots)
}

/// Value, derivative-ratio and residual data of `a` at `z`.
struct Eval {
    /// `f(z) / f'(z)`; infinite at a critical point.
    ratio: Complex64,
    /// `|f(z)| / sum |a_i| |z|^i`.
    backward: f64,
}

/// Horner for `p`, `p'` and the modulus scale at `x`; `a` ascending.
fn horner(a: &[f64], x: Complex64) -> (Complex64, Complex64, f64) {
    let ax = x.norm();
    let mut p = ZERO;
    let mut dp = ZERO;
    let mut scale = 0.0;
    for &c in a.iter().rev() {
        dp = dp * x + p;
        p = p * x + c;
        scale = scale * ax + c.abs();
    }
    (p, dp, scale)
}

/// Evaluates through the reversed polynomial outside the unit disk so that
/// nothing overflows at high degree.
fn evaluate(a: &[f64], rev: &[f64], z: Complex64) -> Eval {
    let n = (a.len() - 1) as f64;
    if z.norm() <= 1.0 {
        let (p, dp, scale) = horner(a, z);
        Eval { ratio: p / dp, backward: p.norm() / scale }
    } else {
        let w = z.inv();
        let (g, dg, scale) = horner(rev, w);
        Eval { ratio: z * g / (g * n - w * dg), backward: g.norm() / scale }
    }
}

/// Initial points on circles whose radii come from the upper convex hull of
/// `(i, log|a_i|)`.
fn initial_guesses(a: &[f64]) -> Vec<Complex64> {
    let n = a.len() - 1;
    let pts: Vec<(f64, f64)> = a
        .iter()
        .enumerate()
        .filter(|(_, c)| **c != 0.0)
        .map(|(i, c)| (i as f64, c.abs().ln()))
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for p in pts {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            if (x2 - x1) * (p.1 - y1) - (y2 - y1) * (p.0 - x1) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    let sigma = 0.7;
    let mut z = Vec::with_capacity(n);
    for seg in hull.windows(2) {
        let (i, yi) = seg[0];
        let (j, yj) = seg[1];
        let count = (j - i) as usize;
        let radius = ((yi - yj) / (j - i)).exp();
        for l in 0..count {
            let angle = TAU * l as f64 / count as f64 + TAU * i / n as f64 + sigma;
            z.push(Complex64::from_polar(radius, angle));
        }
    }
    z
}

fn aberth(a: &[f64], tol: f64) -> Option<Vec<Complex64>> {
    let n = a.len() - 1;
    let rev: Vec<f64> = a.iter().rev().copied().collect();
    let floor = 4.0 * f64::EPSILON * (n as f64 + 1.0);
    let mut z = initial_guesses(a);
    let mut done = vec![false; n];
    for _ in 0..MAX_ITER {
        let mut all = true;
        for i in 0..n {
            if done[i] {
                continue;
            }
            let e = evaluate(a, &rev, z[i]);
            if e.backward <= floor {
                done[i] = true;
                continue;
            }
            all = false;
            let repulsion: Complex64 = (0..n)
                .filter(|&j| j != i)
                .map(|j| (z[i] - z[j]).inv())
                .sum();
            let step = e.ratio / (Complex64::new(1.0, 0.0) - e.ratio * repulsion);
            if !step.is_finite() {
                continue;
            }
            z[i] -= step;
            if step.norm() <= f64::EPSILON * z[i].norm() {
                done[i] = true;
            }
        }
        if all {
            break;
        }
    }
    certified(a, &rev, &z, tol).then_some(z)
}

fn certified(a: &[f64], rev: &[f64], z: &[Complex64], tol: f64) -> bool {
    z.iter().all(|&x| x.is_finite() && evaluate(a, rev, x).backward <= tol)
}

/// Eigenvalues of the companion matrix, polished by a few Newton steps.
fn companion(a: &[f64], tol: f64) -> Option<Vec<Complex64>> {
    let n = a.len() - 1;
    let lead = a[n];
    let m = DMatrix::from_fn(n, n, |i, j| {
        if j == n - 1 {
            -a[i] / lead
        } else if i == j + 1 {
            1.0
        } else {
            0.0
        }
    });
    let rev: Vec<f64> = a.iter().rev().copied().collect();
    let mut z: Vec<Complex64> = m.complex_eigenvalues().iter().copied().collect();
    for x in z.iter_mut() {
        for _ in 0..8 {
            let e = evaluate(a, &rev, *x);
            if e.backward <= tol || !e.ratio.is_finite() {
                break;
            }
            *x -= e.ratio;
        }
    }
    certified(a, &rev, &z, tol).then_some(z)
}

#[cfg(test)]
pub(crate) fn companion_roots(f: &IntPoly, tol: f64) -> Option<Vec<Complex64>> {
    companion(&f.to_f64s(), tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn quadratic() {
        let r = find_roots(&p(&[1, -3, 1]), DEFAULT_TOL).unwrap();
        let s5 = 5f64.sqrt();
        assert!((r[0].re - (3.0 - s5) / 2.0).abs() < 1e-14);
        assert!((r[1].re - (3.0 + s5) / 2.0).abs() < 1e-14);
        assert!(r.iter().all(|z| z.im.abs() < 1e-14));
    }

    #[test]
    fn linear_and_zero_roots() {
        assert_eq!(find_roots(&p(&[1, 1]), DEFAULT_TOL).unwrap(), vec![Complex64::new(-1.0, 0.0)]);
        let r = find_roots(&p(&[0, 0, -2, 1]), DEFAULT_TOL).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r.iter().filter(|z| z.norm() == 0.0).count(), 2);
        assert!(find_roots(&IntPoly::zero(), DEFAULT_TOL).is_err());
        assert!(find_roots(&p(&[1, 1]), 0.0).is_err());
    }

    #[test]
    fn fifth_root_of_two() {
        let r = find_roots(&p(&[-2, 0, 0, 0, 0, 1]), DEFAULT_TOL).unwrap();
        assert_eq!(r.len(), 5);
        for z in r {
            assert!((z.norm() - 2f64.powf(0.2)).abs() < 1e-13);
        }
    }

    #[test]
    fn high_degree_near_circle() {
        // t^300 - t - 1: roots hug the unit circle.
        let mut c = vec![0i64; 301];
        c[0] = -1;
        c[1] = -1;
        c[300] = 1;
        let f = p(&c);
        let r = find_roots(&f, DEFAULT_TOL).unwrap();
        assert_eq!(r.len(), 300);
        let log_prod: f64 = r.iter().map(|z| z.norm().ln()).sum();
        assert!(log_prod.abs() < 1e-9);
    }

    #[test]
    fn companion_fallback_agrees() {
        let f = p(&[-1, -1, 0, 1]);
        let a = find_roots(&f, DEFAULT_TOL).unwrap();
        let b = companion_roots(&f, DEFAULT_TOL).unwrap();
        let max = |v: &[Complex64]| v.iter().map(|z| z.norm()).fold(0.0, f64::max);
        assert!((max(&a) - max(&b)).abs() < 1e-12);
    }
}
