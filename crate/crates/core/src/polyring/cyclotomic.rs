use std::collections::HashMap;
use std::f64::consts::TAU;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Zero};

use super::IntPoly;
use crate::error::{Error, Result};

/// Euler's totient by trial factorization.
pub fn totient(mut k: u64) -> u64 {
    let mut phi = k;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            while k.is_multiple_of(p) {
                k /= p;
            }
            phi -= phi / p;
        }
        p += 1;
    }
    if k > 1 {
        phi -= phi / k;
    }
    phi
}

fn mobius(mut k: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= k {
        if k.is_multiple_of(p) {
            k /= p;
            if k.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if k > 1 {
        sign = -sign;
    }
    sign
}

fn times_t_pow_minus_one(f: &[BigInt], d: usize) -> Vec<BigInt> {
    let mut out = vec![BigInt::zero(); f.len() + d];
    for (i, c) in f.iter().enumerate() {
        out[i + d] += c;
        out[i] -= c;
    }
    out
}

/// Exact division by `t^d - 1`, which must divide `f`.
fn over_t_pow_minus_one(f: &[BigInt], d: usize) -> Vec<BigInt> {
    let n = f.len() - 1;
    let mut q = vec![BigInt::zero(); n + 1 - d];
    for i in (d..=n).rev() {
        let upper = if i <= n - d { q[i].clone() } else { BigInt::zero() };
        q[i - d] = &f[i] + upper;
    }
    debug_assert!((0..d).all(|i| f[i] == -q.get(i).cloned().unwrap_or_default()));
    q
}

fn cache() -> &'static Mutex<HashMap<u64, IntPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, IntPoly>>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// The `k`-th cyclotomic polynomial, from the Möbius product
/// `prod_{d | k} (t^d - 1)^{mu(k/d)}`. Results are memoized process-wide.
pub fn cyclotomic(k: u64) -> Result<IntPoly> {
    if k == 0 {
        return Err(Error::InvalidArgument("cyclotomic index must be >= 1".into()));
    }
    if let Some(hit) = cache().lock().expect("cyclotomic cache poisoned").get(&k) {
        return Ok(hit.clone());
    }
    let divisors: Vec<u64> = (1..=k).filter(|d| k.is_multiple_of(*d)).collect();
    let mut acc = vec![BigInt::one()];
    for &d in &divisors {
        if mobius(k / d) == 1 {
            acc = times_t_pow_minus_one(&acc, d as usize);
        }
    }
    for &d in &divisors {
        if mobius(k / d) == -1 {
            acc = over_t_pow_minus_one(&acc, d as usize);
        }
    }
    let phi = IntPoly::new(acc);
    cache()
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(k, phi.clone());
    Ok(phi)
}

/// Runs `f` on a totient table covering `0..=limit`, grown on demand.
fn with_totients<R>(limit: usize, f: impl FnOnce(&[u32]) -> R) -> R {
    static SIEVE: OnceLock<Mutex<Vec<u32>>> = OnceLock::new();
    let mut guard = SIEVE
        .get_or_init(Default::default)
        .lock()
        .expect("totient sieve poisoned");
    if guard.len() <= limit {
        let size = (limit + 1).max(guard.len() * 2);
        let mut phi: Vec<u32> = (0..size as u32).collect();
        for p in 2..size {
            if phi[p] == p as u32 {
                for m in (p..size).step_by(p) {
                    phi[m] -= phi[m] / p as u32;
                }
            }
        }
        *guard = phi;
    }
    f(&guard[..=limit])
}

/// Every `k` with `phi(k) <= degree`, ascending. Uses `phi(k) >= sqrt(k / 2)`.
fn indices_with_totient_at_most(degree: usize) -> Vec<u64> {
    if degree == 0 {
        return Vec::new();
    }
    let limit = 2 * degree * degree + 2;
    with_totients(limit, |phi| {
        phi.iter()
            .enumerate()
            .skip(1)
            .filter(|(_, &p)| p as usize <= degree)
            .map(|(k, _)| k as u64)
            .collect()
    })
}

/// Outcome of [`strip_trivial_factors`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stripped {
    /// Remaining factor: no cyclotomic divisor and nonzero constant term.
    pub core: IntPoly,
    /// Power of `t` removed first.
    pub t_power: usize,
    /// `(k, Phi_k, multiplicity)` in ascending `k`.
    pub factors: Vec<(u64, IntPoly, usize)>,
}

impl Stripped {
    /// `t^m * prod Phi_k^mult * core`, which equals the input.
    pub fn reconstruct(&self) -> IntPoly {
        let mut acc = self.core.shift(self.t_power);
        for (_, phi, mult) in &self.factors {
            for _ in 0..*mult {
                acc = &acc * phi;
            }
        }
        acc
    }

    /// Total degree carried by the cyclotomic factors.
    pub fn cyclotomic_degree(&self) -> usize {
        self.factors
            .iter()
            .map(|(_, phi, mult)| phi.degree().unwrap_or(0) * mult)
            .sum()
    }
}

/// Removes `t`-powers and all cyclotomic factors by exact trial division.
///
/// Candidates `Phi_k` are screened by evaluating the current quotient at
/// `exp(2 pi i / k)` in double precision; only divisors whose value is
/// numerically negligible are tried exactly, and acceptance is always by
/// exact division.
pub fn strip_trivial_factors(f: &IntPoly) -> Result<Stripped> {
    let (mut core, t_power) = f.bar_reduce()?;
    let mut factors = Vec::new();
    let start_degree = core.degree().unwrap_or(0);
    for k in indices_with_totient_at_most(start_degree) {
        let deg = core.degree().unwrap_or(0);
        if totient(k) as usize > deg {
            continue;
        }
        if !vanishes_numerically(&core, k) {
            continue;
        }
        let phi = cyclotomic(k)?;
        let mut mult = 0;
        while core.degree().unwrap_or(0) >= phi.degree().unwrap_or(0) {
            match core.exact_div(&phi) {
                Ok(q) => {
                    core = q;
                    mult += 1;
                }
                Err(_) => break,
            }
        }
        if mult > 0 {
            factors.push((k, phi, mult));
        }
    }
    Ok(Stripped { core, t_power, factors })
}

fn vanishes_numerically(f: &IntPoly, k: u64) -> bool {
    let zeta = Complex64::from_polar(1.0, TAU / k as f64);
    let coeffs = f.to_f64s();
    let scale: f64 = coeffs.iter().map(|c| c.abs()).sum();
    let value = coeffs
        .iter()
        .rev()
        .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * zeta + c);
    value.norm() <= 1e-7 * scale.max(1.0)
}
