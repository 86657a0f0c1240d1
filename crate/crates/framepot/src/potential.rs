//! The p-frame potential, the classical lower bounds, and the regime table.
//!
//! `frame_potential` sums |<x_i, x_j>|^p over ordered pairs i != j, so each
//! unordered pair is counted twice. The regime boundaries
//! p_k = ln((k+2)/k) / ln((k+1)/k) split (0, 2) into d intervals on which the
//! minimizer over d+1 unit vectors is the lifted ETF L_k^d with value
//! (k+1) k^(1-p); the dual thresholds a_k = 1/2 + 1/(2(p_k - 1)) govern the
//! simplex maximization that proves it.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::{gram, Configuration};

/// Inner products at or below this magnitude contribute 0 to the potential,
/// even for p < 1 where fractional powers would magnify rounding noise.
pub const ZERO_PRODUCT_TOL: f64 = 1e-15;
/// Half-width for detecting p at a regime boundary p_k.
pub const BOUNDARY_TOL: f64 = 1e-12;

/// Exponent of the p-frame potential; must be positive.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialParams {
    p: f64,
}

impl PotentialParams {
    pub fn new(p: f64) -> Result<Self> {
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::param(format!("exponent p must be positive, got {p}")));
        }
        Ok(PotentialParams { p })
    }

    pub fn p(&self) -> f64 {
        self.p
    }
}

/// Regime boundaries p_0..p_d and dual alpha thresholds a_0..a_d for a given
/// dimension. `alpha_thresholds[0]` is the +infinity sentinel.
#[derive(Debug, Clone, Serialize)]
pub struct RegimeTable {
    pub d: usize,
    pub boundaries: Vec<f64>,
    pub alpha_thresholds: Vec<f64>,
}

/// Where an exponent p sits relative to the regime boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RegimeIndex {
    /// p lies strictly inside (p_{k-1}, p_k).
    Interior(usize),
    /// p equals p_k within [`BOUNDARY_TOL`]; both L_k and L_{k+1} minimize.
    Boundary(usize, usize),
}

impl RegimeIndex {
    /// The k whose closed form (k+1) k^(1-p) gives the minimum value.
    pub fn champion(&self) -> usize {
        match self {
            RegimeIndex::Interior(k) => *k,
            RegimeIndex::Boundary(k, _) => *k,
        }
    }
}

/// Sum of |<x_i, x_j>|^p over ordered pairs i != j.
pub fn frame_potential(x: &Configuration, params: PotentialParams) -> f64 {
    let g = gram(x);
    let p = params.p();
    let n = x.n();
    let mut total = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let a = g.entry(i, j).abs();
            if a > ZERO_PRODUCT_TOL {
                total += 2.0 * a.powf(p);
            }
        }
    }
    total
}

/// Largest off-diagonal |<x_i, x_j>|.
pub fn coherence(x: &Configuration) -> Result<f64> {
    if x.n() < 2 {
        return Err(Error::param("coherence requires at least 2 vectors"));
    }
    let g = gram(x);
    let mut best = 0.0f64;
    for i in 0..x.n() {
        for j in (i + 1)..x.n() {
            best = best.max(g.entry(i, j).abs());
        }
    }
    Ok(best)
}

/// Sidelnikov's lower bound for the 2k-frame potential:
/// N^2 * (1*3*...*(2k-1)) / (d(d+2)...(d+2k-2)) - N.
pub fn sidelnikov_bound(n: usize, d: usize, k: usize) -> f64 {
    let mut ratio = 1.0;
    for i in 1..=k {
        ratio *= (2 * i - 1) as f64 / (d + 2 * i - 2) as f64;
    }
    (n * n) as f64 * ratio - n as f64
}

/// Ehler-Okoudjou bound N(N-1) ((N-d)/(d(N-1)))^(p/2); tight at ETFs for
/// p > 2. Requires N >= d so the base is nonnegative.
pub fn ehler_okoudjou_bound(n: usize, d: usize, p: f64) -> Result<f64> {
    if n < d {
        return Err(Error::param(format!(
            "ehler_okoudjou_bound requires N >= d, got N = {n}, d = {d}"
        )));
    }
    if n < 2 {
        return Ok(0.0);
    }
    let base = (n - d) as f64 / (d * (n - 1)) as f64;
    Ok((n * (n - 1)) as f64 * base.powf(p / 2.0))
}

/// Glazyrin's bound 2(N-d) / (p^(p/2) (2-p)^((2-p)/2)) for 1 <= p <= 2.
/// At p = 2 the factor (2-p)^((2-p)/2) is taken as its limit 1.
pub fn glazyrin_bound(n: usize, d: usize, p: f64) -> f64 {
    let tail = if p >= 2.0 {
        1.0
    } else {
        (2.0 - p).powf((2.0 - p) / 2.0)
    };
    let numer = 2.0 * (n as f64 - d as f64);
    numer / (p.powf(p / 2.0) * tail)
}

/// Regime boundaries p_k = ln((k+2)/k)/ln((k+1)/k) and the dual thresholds
/// a_k = (1/2) ln((k+2)/k)/ln((k+2)/(k+1)), with sentinels p_0 = 0, p_d = 2,
/// a_0 = +inf, a_d = 1. d = 1 yields the degenerate table {0, 2}.
pub fn regime_boundaries(d: usize) -> RegimeTable {
    let mut boundaries = vec![0.0; d + 1];
    let mut alpha_thresholds = vec![0.0; d + 1];
    boundaries[d] = 2.0;
    alpha_thresholds[0] = f64::INFINITY;
    alpha_thresholds[d] = 1.0;
    for k in 1..d {
        let kf = k as f64;
        boundaries[k] = ((kf + 2.0) / kf).ln() / ((kf + 1.0) / kf).ln();
        alpha_thresholds[k] = 0.5 * ((kf + 2.0) / kf).ln() / ((kf + 2.0) / (kf + 1.0)).ln();
    }
    RegimeTable {
        d,
        boundaries,
        alpha_thresholds,
    }
}

/// Locates p within the regime table: interior k for p in (p_{k-1}, p_k), or
/// the boundary pair (k, k+1) when p is within [`BOUNDARY_TOL`] of p_k.
pub fn regime_index(d: usize, p: f64) -> Result<RegimeIndex> {
    if d < 1 {
        return Err(Error::param("regime_index requires d >= 1"));
    }
    if !(p > 0.0 && p < 2.0) {
        return Err(Error::param(format!(
            "regime_index requires 0 < p < 2, got p = {p}"
        )));
    }
    let table = regime_boundaries(d);
    for k in 1..d {
        if (p - table.boundaries[k]).abs() <= BOUNDARY_TOL {
            return Ok(RegimeIndex::Boundary(k, k + 1));
        }
    }
    for k in 1..=d {
        if p > table.boundaries[k - 1] && p < table.boundaries[k] {
            return Ok(RegimeIndex::Interior(k));
        }
    }
    unreachable!("p in (0,2) must fall in some regime interval");
}

/// The theorem's minimum value (k+1) k^(1-p) together with the regime index.
/// At a boundary either member of the pair yields the same value.
pub fn theorem_min_value(d: usize, p: f64) -> Result<(RegimeIndex, f64)> {
    if d < 2 {
        return Err(Error::param("theorem_min_value requires d >= 2"));
    }
    let idx = regime_index(d, p)?;
    let k = idx.champion() as f64;
    Ok((idx, (k + 1.0) * k.powf(1.0 - p)))
}

/// The Holder-dual exponent alpha = q/2 = 1/2 + 1/(2(p-1)) for 1 < p < 2.
pub fn alpha_of_p(p: f64) -> Result<f64> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::param(format!(
            "alpha_of_p requires 1 < p < 2, got p = {p}"
        )));
    }
    Ok(0.5 + 0.5 / (p - 1.0))
}
