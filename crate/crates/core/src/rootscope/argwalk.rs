//! Tracking the outside roots of `Q_n = t^n P ± P_*` as `n` grows.
//!
//! The offsets `δ_n = α^(n) - α` decay like `|α|^{-n}` and drop below double
//! precision long before the interesting range, so each matched root is
//! refined by Newton's method on
//! `H(δ) = P(α+δ) - P(α) ± P_*(α+δ) (α+δ)^{-n}`,
//! with `P(α+δ) - P(α)` expanded at `α`. Solving for `δ` directly keeps its
//! full relative precision.

use std::f64::consts::TAU;

use num_complex::Complex64;
use serde::Serialize;

use super::aberth::DEFAULT_TOL;
use super::profile::{core_roots, root_profile, RootEntry};
use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::polyring::IntPoly;
use crate::salemboyd::{q_n, SalemBoydFamily};
use crate::sign::Sign;

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

/// Outside roots of `p` (beyond the circle band), by decreasing modulus and
/// then decreasing imaginary part.
pub fn outside_roots(p: &IntPoly) -> Result<Vec<Complex64>> {
    let cr = core_roots(p, DEFAULT_TOL)?;
    let mut out: Vec<Complex64> = cr
        .outside()
        .flat_map(|r| std::iter::repeat_n(r.z(), r.mult))
        .collect();
    out.sort_by(|a, b| b.norm().total_cmp(&a.norm()).then(b.im.total_cmp(&a.im)));
    Ok(out)
}

/// Coefficients of `p(α + x)` in powers of `x`.
fn taylor_at(p: &IntPoly, alpha: Complex64) -> Vec<Complex64> {
    let mut b: Vec<Complex64> = p.to_f64s().into_iter().map(|c| Complex64::new(c, 0.0)).collect();
    let mut out = Vec::with_capacity(b.len());
    while !b.is_empty() {
        // Synthetic division by (t - α): remainder is the next coefficient.
        let mut acc = ZERO;
        let mut quot = vec![ZERO; b.len() - 1];
        for k in (0..b.len()).rev() {
            acc = acc * alpha + b[k];
            if k > 0 {
                quot[k - 1] = acc;
            }
        }
        out.push(acc);
        b = quot;
    }
    out
}

fn eval_with_derivative(c: &[Complex64], x: Complex64) -> (Complex64, Complex64) {
    c.iter().rev().fold((ZERO, ZERO), |(v, d), &a| (v * x + a, d * x + v))
}

/// Offset `δ` from the outside root `α` of `p` to the nearby root of
/// `t^n p + star p_*`, refined from `seed`.
pub fn refine_offset(
    p: &IntPoly,
    star: Sign,
    alpha: Complex64,
    n: usize,
    seed: Complex64,
) -> Result<Complex64> {
    let mut taylor = taylor_at(p, alpha);
    if let Some(c0) = taylor.first_mut() {
        *c0 = ZERO;
    }
    let p_star: Vec<Complex64> = p
        .reciprocal()?
        .to_f64s()
        .into_iter()
        .map(|c| Complex64::new(c, 0.0))
        .collect();
    let s = star.to_i64() as f64;
    let exp = i32::try_from(n).map_err(|_| Error::InvalidArgument(format!("n = {n} too large")))?;
    let mut delta = seed;
    let mut last_step = f64::INFINITY;
    for _ in 0..200 {
        let z = alpha + delta;
        let (head, dhead) = eval_with_derivative(&taylor, delta);
        let (ps, dps) = eval_with_derivative(&p_star, z);
        let zn = z.powi(-exp);
        let h = head + zn * ps * s;
        let dh = dhead + (dps - ps * n as f64 / z) * zn * s;
        let step = h / dh;
        if !step.is_finite() {
            break;
        }
        delta -= step;
        let size = step.norm();
        // Quadratic convergence has stalled at rounding level.
        let stalled = size <= 1e-10 * delta.norm() && size > 0.5 * last_step;
        if size <= 4.0 * f64::EPSILON * delta.norm() || stalled || delta.norm() == 0.0 {
            return Ok(delta);
        }
        last_step = size;
    }
    Err(Error::Convergence { poly: q_n(p, n, star).to_text() })
}

/// One matched root of `Q_n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tracked {
    pub n: usize,
    /// Matched root as returned by the root finder.
    pub root: Complex64,
    /// Refined offset from `α`.
    pub delta: Complex64,
}

fn nearest(roots: &[RootEntry], target: Complex64, n: usize) -> Result<Complex64> {
    let mut best: Option<(f64, Complex64)> = None;
    let mut second = f64::INFINITY;
    for r in roots {
        let d = (r.z() - target).norm();
        match best {
            Some((bd, _)) if d >= bd => second = second.min(d),
            _ => {
                if let Some((bd, _)) = best {
                    second = bd;
                }
                best = Some((d, r.z()));
            }
        }
    }
    let (d1, z) = best.ok_or_else(|| Error::Match(format!("Q_{n} has no roots")))?;
    if second.is_finite() && second - d1 <= 1e-9 * second {
        return Err(Error::Match(format!(
            "two roots of Q_{n} are equidistant from {target} (distance {d1:e})"
        )));
    }
    Ok(z)
}

/// Follows the root of `Q_n` near the outside root `α` of `p` over `ns`
/// (ascending), by nearest-neighbour continuation from `α`.
pub fn track_root<F>(
    p: &IntPoly,
    alpha: Complex64,
    ns: &[usize],
    star: F,
    exec: Execution,
) -> Result<Vec<Tracked>>
where
    F: Fn(usize) -> Sign + Sync + Send,
{
    let profiles = par::map(exec, ns, |&n| root_profile(&q_n(p, n, star(n)), DEFAULT_TOL))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    follow(p, alpha, ns.iter().zip(&profiles).map(|(&n, pr)| (n, star(n), &pr.roots[..])))
}

fn follow<'a>(
    p: &IntPoly,
    alpha: Complex64,
    steps: impl Iterator<Item = (usize, Sign, &'a [RootEntry])>,
) -> Result<Vec<Tracked>> {
    let mut prev = alpha;
    let mut out = Vec::new();
    for (n, star, roots) in steps {
        let root = nearest(roots, prev, n)?;
        let delta = refine_offset(p, star, alpha, n, root - alpha)?;
        out.push(Tracked { n, root, delta });
        prev = root;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ArgPoint {
    pub n: usize,
    /// `(Arg δ_n + n Arg α) / 2π mod 1`.
    pub residual: f64,
    pub delta_re: f64,
    pub delta_im: f64,
    /// Sign of `Re(δ_n conj(α))`.
    pub drift_sign: i8,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ArgWalk {
    pub alpha_re: f64,
    pub alpha_im: f64,
    /// First `n` from which `Q_n` keeps exactly as many outside roots as `P`
    /// over the scanned range.
    pub n0: usize,
    pub points: Vec<ArgPoint>,
}

/// Angle in turns, in `[0, 1)`.
fn turns(x: f64) -> f64 {
    let r = (x / TAU).rem_euclid(1.0);
    if r >= 1.0 {
        0.0
    } else {
        r
    }
}

/// Scans `Q_n` for `n` in `1..=n_end`, detects `N0`, and reports residuals
/// for `max(n_start, N0) <= n <= n_end`.
pub fn arg_walk(
    fam: &SalemBoydFamily,
    star: Sign,
    root_index: usize,
    n_start: usize,
    n_end: usize,
    exec: Execution,
) -> Result<ArgWalk> {
    let p = fam.p();
    let outside = outside_roots(p)?;
    let alpha = *outside.get(root_index).ok_or_else(|| {
        Error::InvalidArgument(format!(
            "root index {root_index} out of range: P has {} outside roots",
            outside.len()
        ))
    })?;
    let ns: Vec<usize> = (1..=n_end).collect();
    let profiles = par::map(exec, &ns, |&n| root_profile(&q_n(p, n, star), DEFAULT_TOL))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let s = outside.len();
    let settled = profiles.iter().rev().take_while(|pr| pr.n_outside == s).count();
    if settled == 0 {
        return Err(Error::InvalidArgument(format!(
            "Q_n does not carry {s} outside roots at n = {n_end}"
        )));
    }
    let n0 = n_end + 1 - settled;
    let from = n_start.max(n0);
    let tracked = follow(
        p,
        alpha,
        (from..=n_end).map(|n| (n, star, &profiles[n - 1].roots[..])),
    )?;
    let arg_alpha = alpha.arg();
    let points = tracked
        .iter()
        .map(|t| {
            let drift = (t.delta * alpha.conj()).re;
            ArgPoint {
                n: t.n,
                residual: turns(t.delta.arg() + t.n as f64 * arg_alpha),
                delta_re: t.delta.re,
                delta_im: t.delta.im,
                drift_sign: if drift > 0.0 {
                    1
                } else if drift < 0.0 {
                    -1
                } else {
                    0
                },
            }
        })
        .collect();
    Ok(ArgWalk { alpha_re: alpha.re, alpha_im: alpha.im, n0, points })
}

/// Circular standard deviation of values in turns, in turns.
pub fn circular_sd(xs: &[f64]) -> f64 {
    if xs.is_empty() {
        return 0.0;
    }
    let mean: Complex64 =
        xs.iter().map(|&x| Complex64::from_polar(1.0, TAU * x)).sum::<Complex64>() / xs.len() as f64;
    let r = mean.norm().min(1.0);
    (-2.0 * r.ln()).max(0.0).sqrt() / TAU
}

/// One row of a convergence probe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ProbeRow {
    pub n: usize,
    pub lambda: f64,
    #[serde(rename = "M")]
    pub mahler: f64,
    #[serde(rename = "N")]
    pub n_outside: usize,
    /// Largest distance from an outside root of `P` to its nearest root of
    /// `Q_n`.
    pub match_distance: f64,
}

/// Invariants of `Q_n` for `1 <= n <= n_max`.
pub fn convergence_probe(
    fam: &SalemBoydFamily,
    star: Sign,
    n_max: usize,
    exec: Execution,
) -> Result<Vec<ProbeRow>> {
    if n_max == 0 {
        return Err(Error::InvalidArgument("n_max must be >= 1".into()));
    }
    let outside = outside_roots(fam.p())?;
    let ns: Vec<usize> = (1..=n_max).collect();
    par::map(exec, &ns, |&n| {
        let prof = root_profile(&fam.q_n(n, star), DEFAULT_TOL)?;
        let match_distance = outside
            .iter()
            .map(|a| {
                prof.roots
                    .iter()
                    .map(|r| (r.z() - a).norm())
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(0.0, f64::max);
        Ok(ProbeRow {
            n,
            lambda: prof.lambda,
            mahler: prof.mahler,
            n_outside: prof.n_outside,
            match_distance,
        })
    })
    .into_iter()
    .collect()
}
