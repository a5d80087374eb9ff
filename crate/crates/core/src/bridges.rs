//! The two-bridge family `Γ_{m,n}`: a path of `m` positive bands followed by
//! `n` negative ones.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::par::{self, Execution};
use crate::plumbing::{alexander, seifert_from_tree, PlumbingTree};
use crate::polyring::{strip_trivial_factors, IntPoly};
use crate::rootscope::{classify, root_profile, DEFAULT_TOL};
use crate::salemboyd::SalemBoydFamily;
use crate::sign::Sign;

/// Largest `m + n` for which [`delta_mn`] also runs the determinant route.
pub const CROSS_CHECK_LIMIT: usize = 24;

pub fn gamma_tree(m: usize, n: usize) -> Result<PlumbingTree> {
    if m == 0 {
        return Err(Error::InvalidArgument("Gamma(m, n) needs m >= 1".into()));
    }
    let mut signs = vec![Sign::Plus; m];
    signs.extend(std::iter::repeat_n(Sign::Minus, n));
    PlumbingTree::path(signs)
}

/// Normalized `(t^{m+1} + (-1)^m) / (t + 1)`, the `(2, m+1)` torus link.
pub fn torus_delta(m: usize) -> Result<IntPoly> {
    let num = &IntPoly::monomial(BigInt::from(1), m + 1) + &IntPoly::constant(Sign::parity(m).to_big());
    num.exact_div(&IntPoly::t_plus_one())?.alexander_normalized()
}

/// `t (t^m (t - 1) + (-1)^m 2)`.
pub fn p_m(m: usize) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::InvalidArgument("p_m needs m >= 1".into()));
    }
    let inner = &IntPoly::from_i64s(&[-1, 1]).shift(m) + &IntPoly::constant(Sign::parity(m).to_big() * 2);
    Ok(inner.shift(1))
}

/// Family whose `Δ_n` is `Δ_{m,n}`: seed `p_m / (t + 1)`, negative
/// plumbing, `r ≡ m (mod 2)`.
pub fn gamma_family(m: usize) -> Result<SalemBoydFamily> {
    let p = p_m(m)?.exact_div(&IntPoly::t_plus_one())?;
    SalemBoydFamily::new(p, Sign::Minus, Some(2 - m % 2))
}

fn delta_closed(m: usize, n: usize) -> Result<IntPoly> {
    if n == 0 {
        torus_delta(m)
    } else {
        gamma_family(m)?.delta_n(n)
    }
}

fn delta_tree(m: usize, n: usize) -> Result<IntPoly> {
    Ok(alexander(&seifert_from_tree(&gamma_tree(m, n)?))?.delta)
}

/// `Δ_{m,n}` by the determinant route and the closed form, in that order.
pub fn delta_mn_both(m: usize, n: usize) -> Result<(IntPoly, IntPoly)> {
    Ok((delta_tree(m, n)?, delta_closed(m, n)?))
}

/// Normalized `Δ_{m,n}` from the closed form. For `m + n <= 24` the
/// determinant of the tree matrix is computed as well and must agree.
pub fn delta_mn(m: usize, n: usize) -> Result<IntPoly> {
    if m == 0 {
        return Err(Error::InvalidArgument("Gamma(m, n) needs m >= 1".into()));
    }
    let closed = delta_closed(m, n)?;
    if m + n <= CROSS_CHECK_LIMIT && delta_tree(m, n)? != closed {
        return Err(Error::Calibration { m, n });
    }
    Ok(closed)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridHit {
    pub m: usize,
    pub n: usize,
    pub core: IntPoly,
    pub salem_value: f64,
    /// `c_0 .. c_{d/2}` of the reciprocal core.
    #[serde(serialize_with = "crate::io::serialize_ints")]
    pub half_coeffs: Vec<BigInt>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellFailure {
    pub m: usize,
    pub n: usize,
    pub error: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GridReport {
    pub cells: usize,
    /// One representative `m <= n` per mirror pair, sorted by `(m, n)`.
    pub hits: Vec<GridHit>,
    pub failures: Vec<CellFailure>,
}

fn grid_cell(m: usize, n: usize) -> Result<Option<GridHit>> {
    let delta = delta_mn(m, n)?;
    let class = classify(&delta)?;
    if !class.is_salem_type() {
        return Ok(None);
    }
    let core = strip_trivial_factors(&delta)?.core.alexander_normalized()?;
    let d = core.degree().unwrap_or(0);
    Ok(Some(GridHit {
        m,
        n,
        half_coeffs: core.coeffs()[..=d / 2].to_vec(),
        core,
        salem_value: class.witness,
    }))
}

/// All `1 < m < m_max`, `1 < n < n_max` whose `Δ_{m,n}` has a Salem (or
/// reciprocal P-V) core.
///
/// Every cell is evaluated. Since `Δ_{m,n} = Δ_{n,m}`, a hit at `(m, n)`
/// with `m > n` must be mirrored by a hit at `(n, m)` when that cell is in
/// range; only the `m <= n` representative is reported. Root-finder
/// failures are recorded per cell and the search continues.
pub fn grid_search(m_max: usize, n_max: usize, exec: Execution) -> Result<GridReport> {
    if m_max < 2 || n_max < 2 {
        return Err(Error::InvalidArgument("grid bounds must be >= 2".into()));
    }
    let cells: Vec<(usize, usize)> = (2..m_max)
        .flat_map(|m| (2..n_max).map(move |n| (m, n)))
        .collect();
    let results = par::map(exec, &cells, |&(m, n)| grid_cell(m, n));
    let mut hits = Vec::new();
    let mut failures = Vec::new();
    for (&(m, n), res) in cells.iter().zip(results) {
        match res {
            Ok(Some(hit)) => hits.push(hit),
            Ok(None) => {}
            Err(Error::Convergence { poly }) => failures.push(CellFailure {
                m,
                n,
                error: format!("ConvergenceError: {poly}"),
            }),
            Err(e) => return Err(e),
        }
    }
    let in_range = |m: usize, n: usize| m < m_max && n < n_max;
    let is_hit = |m: usize, n: usize| hits.iter().any(|h: &GridHit| h.m == m && h.n == n);
    let failed = |m: usize, n: usize| failures.iter().any(|f: &CellFailure| f.m == m && f.n == n);
    for h in &hits {
        if in_range(h.n, h.m) && !is_hit(h.n, h.m) && !failed(h.n, h.m) {
            return Err(Error::Calibration { m: h.n, n: h.m });
        }
    }
    let mut reported: Vec<GridHit> = hits
        .iter()
        .filter(|h| h.m <= h.n || !in_range(h.n, h.m) || failed(h.n, h.m))
        .cloned()
        .collect();
    reported.sort_by_key(|h| (h.m, h.n));
    Ok(GridReport { cells: cells.len(), hits: reported, failures })
}

/// `λ(p_m)` for `1 <= m <= m_max`. The values decrease toward 1 along odd
/// and along even `m` separately; odd `m` sits above its even neighbours.
pub fn lambda_pm_decay(m_max: usize, exec: Execution) -> Result<Vec<(usize, f64)>> {
    let ms: Vec<usize> = (1..=m_max).collect();
    par::map(exec, &ms, |&m| Ok((m, root_profile(&p_m(m)?, DEFAULT_TOL)?.lambda)))
        .into_iter()
        .collect()
}
