//! Plumbing polynomials `P`, Salem-Boyd sequences `Q_n = t^n P ± P_*` and
//! the Alexander polynomials `Δ_n` of iterated Hopf plumbings.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::plumbing::{alexander, poly_matrix_det, SeifertMatrix};
use crate::polyring::IntPoly;
use crate::rootscope::{classify, root_profile, Kind, DEFAULT_TOL};
use crate::sign::Sign;

/// Seed polynomial `P` with the data needed to generate `Q_n` and `Δ_n`.
///
/// Only `r mod 2` enters any formula.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SalemBoydFamily {
    #[serde(rename = "P")]
    p: IntPoly,
    plumb_sign: Sign,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    r: Option<usize>,
}

impl SalemBoydFamily {
    pub fn new(p: IntPoly, plumb_sign: Sign, r: Option<usize>) -> Result<Self> {
        if p.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if r == Some(0) {
            return Err(Error::InvalidArgument("component count r must be >= 1".into()));
        }
        Ok(SalemBoydFamily { p, plumb_sign, r })
    }

    /// Family of the iterated plumbing on a fiber surface with Seifert matrix
    /// `s`, plumbing along the arc dual to the last basis loop. The component
    /// parity comes from the rank: `dim = 2g + r - 1`.
    pub fn from_seifert(s: &SeifertMatrix, plumb_sign: Sign) -> Result<Self> {
        let p = p_from_seifert(s, &last_unit(s.dim()), plumb_sign)?;
        Self::new(p, plumb_sign, Some(1 + s.dim() % 2))
    }

    pub fn p(&self) -> &IntPoly {
        &self.p
    }

    pub fn plumb_sign(&self) -> Sign {
        self.plumb_sign
    }

    pub fn r(&self) -> Option<usize> {
        self.r
    }

    pub fn p_star(&self) -> IntPoly {
        self.p.reciprocal().expect("seed is nonzero")
    }

    /// `Q_n = t^n P + star * P_*`.
    pub fn q_n(&self, n: usize, star: Sign) -> IntPoly {
        q_n(&self.p, n, star)
    }

    fn r_or_err(&self) -> Result<usize> {
        self.r
            .ok_or_else(|| Error::InvalidArgument("family has no component count r".into()))
    }

    /// Star sign `(-1)^{r+n}` of the `Δ_n` numerator.
    pub fn delta_star(&self, n: usize) -> Result<Sign> {
        Ok(Sign::parity(self.r_or_err()? + n))
    }

    /// `t^n P + (-1)^{r+n} P_*`, which `t + 1` divides for consistent data.
    pub fn delta_numerator(&self, n: usize) -> Result<IntPoly> {
        Ok(self.q_n(n, self.delta_star(n)?))
    }

    /// Normalized Alexander polynomial of the `n`-th link (`Δ_1` is the
    /// seed link itself).
    pub fn delta_n(&self, n: usize) -> Result<IntPoly> {
        if n == 0 {
            return Err(Error::InvalidArgument("delta_n needs n >= 1".into()));
        }
        self.delta_numerator(n)?
            .exact_div(&IntPoly::t_plus_one())?
            .alexander_normalized()
    }

    /// `t P + (-1)^{r+1} P_* = (t + 1) Δ_K` for the seed link `K`.
    pub fn telescoping_holds(&self, delta_k: &IntPoly) -> Result<bool> {
        let lhs = self.delta_numerator(1)?;
        let rhs = &IntPoly::t_plus_one() * delta_k;
        Ok(lhs == rhs || lhs == -rhs)
    }
}

pub fn q_n(p: &IntPoly, n: usize, star: Sign) -> IntPoly {
    let p_star = p.reciprocal().expect("seed is nonzero");
    &p.shift(n) + &p_star.scale(&star.to_big())
}

fn last_unit(dim: usize) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); dim];
    if let Some(last) = v.last_mut() {
        *last = BigInt::one();
    }
    v
}

/// `s(S) * det(t S - (S^T - sign * v v^T))`.
pub fn p_from_seifert(s: &SeifertMatrix, v: &[BigInt], plumb_sign: Sign) -> Result<IntPoly> {
    if v.len() != s.dim() {
        return Err(Error::DimensionMismatch { expected: s.dim(), found: v.len() });
    }
    if !s.is_unimodular() {
        return Err(Error::NotFibered { det: s.det().to_string() });
    }
    let shift: Vec<Vec<BigInt>> = v
        .iter()
        .map(|a| {
            v.iter()
                .map(|b| match plumb_sign {
                    Sign::Plus => -(a * b),
                    Sign::Minus => a * b,
                })
                .collect()
        })
        .collect();
    Ok(poly_matrix_det(&s.pencil(Some(&shift)))?.scale(s.det()))
}

/// `Δ_K + sign * s_K * s_S0 * Δ_K0`.
pub fn p_from_subsurface(
    delta_k: &IntPoly,
    delta_k0: &IntPoly,
    s_k: Sign,
    s_s0: Sign,
    plumb_sign: Sign,
) -> IntPoly {
    let c = plumb_sign.times(s_k).times(s_s0);
    delta_k + &delta_k0.scale(&c.to_big())
}

/// Checks `P_* = (-1)^{r+1} (Δ_K - sign * s_K * s_S0 * t * Δ_K0)` exactly.
pub fn p_star_identity_check(
    delta_k: &IntPoly,
    delta_k0: &IntPoly,
    s_k: Sign,
    s_s0: Sign,
    r: usize,
    plumb_sign: Sign,
) -> bool {
    let p = p_from_subsurface(delta_k, delta_k0, s_k, s_s0, plumb_sign);
    let Ok(p_star) = p.reciprocal() else {
        return false;
    };
    let c = plumb_sign.times(s_k).times(s_s0);
    let inner = delta_k - &delta_k0.shift(1).scale(&c.to_big());
    p_star == inner.scale(&Sign::parity(r + 1).to_big())
}

/// The subsurface data of a Seifert matrix relative to its last basis loop.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeedData {
    pub delta_k: IntPoly,
    pub s_k: Sign,
    pub delta_k0: IntPoly,
    pub s_s0: Sign,
    pub r: usize,
}

impl SeedData {
    /// Requires `S` and its leading block `S0` to be unimodular, as for tree
    /// and block matrices.
    pub fn from_seifert(s: &SeifertMatrix) -> Result<Self> {
        if s.dim() == 0 {
            return Err(Error::InvalidArgument("empty Seifert matrix".into()));
        }
        let s0 = s.leading_block(s.dim() - 1);
        for m in [s, &s0] {
            if !m.is_unimodular() {
                return Err(Error::NotFibered { det: m.det().to_string() });
            }
        }
        let unit_sign = |m: &SeifertMatrix| if m.sign() > 0 { Sign::Plus } else { Sign::Minus };
        Ok(SeedData {
            delta_k: alexander(s)?.delta,
            s_k: unit_sign(s),
            delta_k0: alexander(&s0)?.delta,
            s_s0: unit_sign(&s0),
            r: 1 + s.dim() % 2,
        })
    }

    pub fn p(&self, plumb_sign: Sign) -> IntPoly {
        p_from_subsurface(&self.delta_k, &self.delta_k0, self.s_k, self.s_s0, plumb_sign)
    }

    pub fn p_star_identity(&self, plumb_sign: Sign) -> bool {
        p_star_identity_check(&self.delta_k, &self.delta_k0, self.s_k, self.s_s0, self.r, plumb_sign)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Increasing,
    Decreasing,
}

/// Where `Q^±_n` starts to carry a real root above one, and which way its
/// spectral radius then moves.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ThresholdReport {
    pub n0_plus: usize,
    pub n0_minus: usize,
    /// `d - 2 P'(1) / P(1) + 1` before rounding up.
    pub n0_minus_exact: f64,
    pub ell: Sign,
    pub direction_plus: Direction,
    pub direction_minus: Direction,
}

impl ThresholdReport {
    pub fn n0(&self, star: Sign) -> usize {
        match star {
            Sign::Plus => self.n0_plus,
            Sign::Minus => self.n0_minus,
        }
    }

    pub fn predicted_direction(&self, star: Sign) -> Direction {
        match star {
            Sign::Plus => self.direction_plus,
            Sign::Minus => self.direction_minus,
        }
    }
}

/// Powers of `t` are stripped first; they shift `n` but not the roots.
pub fn thresholds(p: &IntPoly) -> Result<ThresholdReport> {
    let (core, _) = p.bar_reduce()?;
    let one = BigInt::one();
    let at_one = core.eval_int(&one);
    if at_one.is_zero() {
        return Err(Error::InvalidArgument("thresholds need P(1) != 0".into()));
    }
    let d = BigInt::from(core.degree().unwrap_or(0));
    let dp = core.derivative().eval_int(&one);
    let value = BigRational::from_integer(d + 1) - BigRational::new(dp * 2, at_one);
    let ceil = value.ceil().to_integer();
    let n0_minus = if ceil.is_positive() {
        usize::try_from(ceil).map_err(|_| Error::InvalidArgument("threshold overflow".into()))?
    } else {
        0
    };
    let ell = if core.lowest().is_some_and(Signed::is_positive) {
        Sign::Plus
    } else {
        Sign::Minus
    };
    let direction = |star: Sign| {
        if star.times(ell) == Sign::Plus {
            Direction::Increasing
        } else {
            Direction::Decreasing
        }
    };
    Ok(ThresholdReport {
        n0_plus: 1,
        n0_minus,
        n0_minus_exact: ratio_to_f64(&value),
        ell,
        direction_plus: direction(Sign::Plus),
        direction_minus: direction(Sign::Minus),
    })
}

fn ratio_to_f64(q: &BigRational) -> f64 {
    let (i, rem) = q.numer().div_rem(q.denom());
    crate::polyring::big_to_f64(&i)
        + crate::polyring::big_to_f64(&rem) / crate::polyring::big_to_f64(q.denom())
}

/// `min(λ(Q_{n0}), λ(P))`, the lower bound for `λ(Q_n)` with `n >= n0`.
pub fn perron_floor(fam: &SalemBoydFamily, star: Sign, n0: usize) -> Result<f64> {
    let p = fam.p();
    if p.bar_reduce()?.0.is_reciprocal() {
        return Err(Error::InvalidArgument("perron_floor needs a non-reciprocal seed".into()));
    }
    let class = classify(p)?;
    if !matches!(class.kind, Kind::Pv | Kind::Perron) {
        return Err(Error::InvalidArgument(format!("seed {p} is not Perron")));
    }
    let lambda_q = root_profile(&fam.q_n(n0, star), DEFAULT_TOL)?.lambda;
    Ok(lambda_q.min(class.witness))
}

/// Kanenobu-Burde conditions: reciprocal and monic, and `f(1) = ±1`.
pub fn burde_check(f: &IntPoly) -> (bool, bool) {
    let reciprocal_monic = !f.is_zero() && f.is_monic() && f.is_reciprocal();
    let at_one = f.eval_int(&BigInt::one());
    (reciprocal_monic, at_one.abs().is_one())
}
