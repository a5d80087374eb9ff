use serde::Serialize;

use super::aberth::DEFAULT_TOL;
use super::profile::core_roots;
use crate::error::Result;
use crate::polyring::IntPoly;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Kind {
    #[serde(rename = "PV")]
    Pv,
    #[serde(rename = "Salem-like")]
    SalemLike,
    #[serde(rename = "Perron")]
    Perron,
    #[serde(rename = "cyclotomic-trivial")]
    CyclotomicTrivial,
    #[serde(rename = "other")]
    Other,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification {
    pub kind: Kind,
    /// Largest root modulus of the stripped core (1 for a trivial core).
    pub witness: f64,
    pub reciprocal_core: bool,
    pub n_outside: usize,
}

impl Classification {
    /// Salem number, or a P-V number with reciprocal minimal polynomial
    /// (necessarily quadratic).
    pub fn is_salem_type(&self) -> bool {
        self.kind == Kind::SalemLike || (self.kind == Kind::Pv && self.reciprocal_core)
    }
}

/// Classifies the cyclotomic-stripped core of `f`. Checks run in the order
/// trivial, PV, Salem-like, Perron.
pub fn classify(f: &IntPoly) -> Result<Classification> {
    let cr = core_roots(f, DEFAULT_TOL)?;
    let core = &cr.stripped.core;
    let reciprocal_core = core.is_reciprocal();
    if core.degree().unwrap_or(0) == 0 {
        return Ok(Classification {
            kind: Kind::CyclotomicTrivial,
            witness: 1.0,
            reciprocal_core,
            n_outside: 0,
        });
    }
    let monic = core.leading().is_some_and(|c| c.magnitude() == &1u32.into());
    let outside: Vec<_> = cr.outside().copied().collect();
    let n_outside: usize = outside.iter().map(|r| r.mult).sum();
    let lambda = cr.roots.iter().map(|r| r.modulus()).fold(0.0, f64::max);
    let top = cr
        .roots
        .iter()
        .copied()
        .max_by(|a, b| a.modulus().total_cmp(&b.modulus()))
        .expect("non-constant core has roots");
    let top_is_real = top.im.abs() <= 1e-9 * top.modulus() && top.re > 1.0 && top.mult == 1;
    let kind = if !monic {
        Kind::Other
    } else if n_outside == 1 && top_is_real && cr.in_band().next().is_none() {
        Kind::Pv
    } else if n_outside == 1 && reciprocal_core {
        Kind::SalemLike
    } else if top_is_real
        && cr
            .roots
            .iter()
            .filter(|r| **r != top)
            .all(|r| r.modulus() < top.re * (1.0 - 1e-9))
    {
        Kind::Perron
    } else {
        Kind::Other
    };
    Ok(Classification { kind, witness: lambda, reciprocal_core, n_outside })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn examples() {
        assert_eq!(classify(&p(&[1, -3, 1])).unwrap().kind, Kind::Pv);
        let lehmer = p(&[1, 0, 0, -1, 0, -1, 0, -1, 0, 0, 1]);
        let c = classify(&lehmer).unwrap();
        assert_eq!(c.kind, Kind::SalemLike);
        assert!((c.witness - 1.230_391_434_407_226).abs() < 1e-9);
        let c = classify(&p(&[0, -2, 1])).unwrap();
        assert_eq!(c.kind, Kind::Pv);
        assert!((c.witness - 2.0).abs() < 1e-14);
    }

    #[test]
    fn trivial_and_perron() {
        assert_eq!(classify(&p(&[-1, 0, 0, 0, 1])).unwrap().kind, Kind::CyclotomicTrivial);
        // t^2 - 3: the real roots tie in modulus.
        assert_eq!(classify(&p(&[-3, 0, 1])).unwrap().kind, Kind::Other);
        // t^3 - 3t - 3: real root 2.10, complex pair of modulus ~1.19.
        assert_eq!(classify(&p(&[-3, -3, 0, 1])).unwrap().kind, Kind::Perron);
    }

    #[test]
    fn invariant_under_t_power_and_reciprocal() {
        for f in [p(&[1, -3, 1]), p(&[1, 0, 0, -1, 0, -1, 0, -1, 0, 0, 1])] {
            let base = classify(&f).unwrap().kind;
            assert_eq!(classify(&f.shift(3)).unwrap().kind, base);
            assert_eq!(classify(&f.reciprocal().unwrap()).unwrap().kind, base);
        }
    }
}
