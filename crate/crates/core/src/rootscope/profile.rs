use std::f64::consts::TAU;

use num_complex::Complex64;
use num_integer::Integer;
use num_traits::{One, Signed};
use serde::Serialize;

use super::aberth::find_roots;
use crate::error::Result;
use crate::polyring::{big_to_f64, strip_trivial_factors, IntPoly, Stripped};

/// Roots with `|1 - |z|| < CIRCLE_BAND` count as lying on the unit circle.
pub const CIRCLE_BAND: f64 = 1e-8;
/// Roots closer than this are candidates for a multiple root.
pub const CLUSTER_RADIUS: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RootEntry {
    pub re: f64,
    pub im: f64,
    pub mult: usize,
}

impl RootEntry {
    pub fn z(&self) -> Complex64 {
        Complex64::new(self.re, self.im)
    }

    pub fn modulus(&self) -> f64 {
        self.z().norm()
    }
}

/// Root multiset of a polynomial and the invariants read off it.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RootProfile {
    pub lambda: f64,
    #[serde(rename = "N")]
    pub n_outside: usize,
    #[serde(rename = "M")]
    pub mahler: f64,
    pub on_circle: usize,
    pub roots: Vec<RootEntry>,
}

impl RootProfile {
    pub fn degree(&self) -> usize {
        self.roots.iter().map(|r| r.mult).sum()
    }

    /// Real roots strictly above `1 + CIRCLE_BAND`.
    pub fn real_roots_above_one(&self) -> usize {
        self.roots
            .iter()
            .filter(|r| r.im.abs() <= 1e-9 * r.re.abs().max(1.0) && r.re > 1.0 + CIRCLE_BAND)
            .map(|r| r.mult)
            .sum()
    }
}

/// Stripped factorization plus the numerically found roots of the core.
#[derive(Debug, Clone)]
pub struct CoreRoots {
    pub stripped: Stripped,
    pub roots: Vec<RootEntry>,
}

impl CoreRoots {
    pub fn outside(&self) -> impl Iterator<Item = &RootEntry> {
        self.roots.iter().filter(|r| r.modulus() > 1.0 + CIRCLE_BAND)
    }

    pub fn in_band(&self) -> impl Iterator<Item = &RootEntry> {
        self.roots.iter().filter(|r| (r.modulus() - 1.0).abs() <= CIRCLE_BAND)
    }
}

pub fn core_roots(f: &IntPoly, tol: f64) -> Result<CoreRoots> {
    let stripped = strip_trivial_factors(f)?;
    let raw = find_roots(&stripped.core, tol)?;
    let roots = cluster(&stripped.core, &raw);
    Ok(CoreRoots { stripped, roots })
}

/// Groups numerically coincident roots. A group of size `k` is kept only
/// if `f^{(k-1)}` is also negligible at its center; otherwise its members
/// stay simple.
fn cluster(f: &IntPoly, roots: &[Complex64]) -> Vec<RootEntry> {
    let n = roots.len();
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], i: usize) -> usize {
        let mut r = i;
        while parent[r] != r {
            r = parent[r];
        }
        parent[i] = r;
        r
    }
    for i in 0..n {
        for j in i + 1..n {
            if (roots[i] - roots[j]).norm() < CLUSTER_RADIUS {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let mut groups: Vec<Vec<usize>> = Vec::new();
    let mut slot = vec![usize::MAX; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        if slot[r] == usize::MAX {
            slot[r] = groups.len();
            groups.push(Vec::new());
        }
        groups[slot[r]].push(i);
    }
    let mut out = Vec::with_capacity(n);
    for g in groups {
        let k = g.len();
        let mean = g.iter().map(|&i| roots[i]).sum::<Complex64>() / k as f64;
        let center = if k > 1 { polish_multiple(f, k, mean) } else { mean };
        if k > 1 && derivative_vanishes(f, k - 1, center) {
            out.push(RootEntry { re: center.re, im: center.im, mult: k });
        } else {
            out.extend(g.iter().map(|&i| RootEntry { re: roots[i].re, im: roots[i].im, mult: 1 }));
        }
    }
    out
}

/// A `k`-fold root of `f` is a simple root of `f^{(k-1)}`; a few Newton
/// steps there recover the accuracy lost by splitting it.
fn polish_multiple(f: &IntPoly, k: usize, z0: Complex64) -> Complex64 {
    let mut d = f.clone();
    for _ in 0..k - 1 {
        d = d.derivative();
    }
    let dd = d.derivative();
    let mut z = z0;
    for _ in 0..8 {
        let den = dd.eval_complex(z);
        if den.norm() == 0.0 {
            break;
        }
        let step = d.eval_complex(z) / den;
        if !step.is_finite() || step.norm() > CLUSTER_RADIUS {
            return z0;
        }
        z -= step;
        if step.norm() <= f64::EPSILON * z.norm() {
            break;
        }
    }
    z
}

fn derivative_vanishes(f: &IntPoly, order: usize, z: Complex64) -> bool {
    let mut d = f.clone();
    for _ in 0..order {
        d = d.derivative();
    }
    let az = z.norm();
    let scale = d
        .coeffs()
        .iter()
        .rev()
        .fold(0.0, |acc, c| acc * az + big_to_f64(c).abs());
    d.eval_complex(z).norm() <= 1e-5 * scale.max(f64::MIN_POSITIVE)
}

/// Exact roots of unity for `Phi_k`.
fn cyclotomic_roots(k: u64) -> impl Iterator<Item = Complex64> {
    (1..=k)
        .filter(move |j| j.gcd(&k).is_one())
        .map(move |j| Complex64::from_polar(1.0, TAU * j as f64 / k as f64))
}

/// λ, N, M and the on-circle count of `f`. Cyclotomic factors and powers of
/// `t` are split off exactly and contribute exact roots; only the core is
/// solved numerically.
pub fn root_profile(f: &IntPoly, tol: f64) -> Result<RootProfile> {
    let core = core_roots(f, tol)?;
    let Stripped { t_power, factors, core: core_poly } = &core.stripped;
    let mut roots = Vec::new();
    if *t_power > 0 {
        roots.push(RootEntry { re: 0.0, im: 0.0, mult: *t_power });
    }
    for (k, _, mult) in factors {
        roots.extend(cyclotomic_roots(*k).map(|z| RootEntry { re: z.re, im: z.im, mult: *mult }));
    }
    roots.extend(core.roots.iter().copied());
    let lambda = roots.iter().map(RootEntry::modulus).fold(0.0, f64::max);
    let n_outside = core.outside().map(|r| r.mult).sum();
    let on_circle = roots
        .iter()
        .filter(|r| (r.modulus() - 1.0).abs() <= CIRCLE_BAND)
        .map(|r| r.mult)
        .sum();
    let lead = core_poly.leading().map(|c| big_to_f64(&c.abs())).unwrap_or(1.0);
    let log_outside: f64 = roots
        .iter()
        .filter(|r| r.modulus() > 1.0)
        .map(|r| r.mult as f64 * r.modulus().ln())
        .sum();
    let mahler = lead * log_outside.exp();
    Ok(RootProfile { lambda, n_outside, mahler, on_circle, roots })
}
