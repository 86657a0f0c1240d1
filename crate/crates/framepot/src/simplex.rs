//! Constrained maximization of M_alpha(z) = (sum z_i^alpha)^2 - sum z_i^(2alpha)
//! over the probability simplex, the engine behind the potential lower bound.
//!
//! For alpha > 1 the maximizers are uniform distributions on k+1 coordinates,
//! with k selected by the dual thresholds a_k; at a threshold two consecutive
//! uniform points tie. The analytic route goes through the comparison function
//! H(x) = x^(1-2alpha) (x-1), whose value at integer x equals the objective at
//! the uniform point on x coordinates. The polynomials h and h1 classify the
//! critical points of the two-level restriction f and are exercised directly
//! by the tests; `maximize_m_brute` is an independent grid + ascent oracle.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::potential::regime_boundaries;

/// Fixed seed for the brute-force oracle's random restarts, so results are
/// reproducible run to run.
const BRUTE_SEED: u64 = 0x5eed_f4a3;

/// Nonnegative coordinates summing to 1. Serializes as the bare coordinate
/// array.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(transparent)]
pub struct SimplexPoint {
    z: Vec<f64>,
}

impl SimplexPoint {
    pub fn new(z: Vec<f64>) -> Result<Self> {
        if z.is_empty() {
            return Err(Error::InvalidSimplexPoint("empty coordinate vector".into()));
        }
        if let Some(v) = z.iter().find(|v| **v < 0.0 || !v.is_finite()) {
            return Err(Error::InvalidSimplexPoint(format!(
                "coordinate {v} is negative or non-finite"
            )));
        }
        let sum: f64 = z.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidSimplexPoint(format!(
                "coordinates sum to {sum}, expected 1"
            )));
        }
        Ok(SimplexPoint { z })
    }

    /// Mass 1/k on the first k of `len` coordinates.
    pub fn uniform_on(k: usize, len: usize) -> Result<Self> {
        if k == 0 || k > len {
            return Err(Error::InvalidSimplexPoint(format!(
                "uniform_on requires 1 <= k <= len, got k = {k}, len = {len}"
            )));
        }
        let mut z = vec![0.0; len];
        for v in z.iter_mut().take(k) {
            *v = 1.0 / k as f64;
        }
        Ok(SimplexPoint { z })
    }

    pub fn coords(&self) -> &[f64] {
        &self.z
    }

    pub fn len(&self) -> usize {
        self.z.len()
    }

    pub fn is_empty(&self) -> bool {
        self.z.is_empty()
    }
}

/// Two-level point: m1 coordinates at t and the remaining d+1-m1 at
/// s = (1 - m1 t)/(d+1-m1).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TwoLevelPoint {
    m1: usize,
    t: f64,
    d: usize,
}

impl TwoLevelPoint {
    pub fn new(m1: usize, t: f64, d: usize) -> Result<Self> {
        if d < 1 {
            return Err(Error::param("two-level point requires d >= 1"));
        }
        if m1 < 1 || 2 * m1 > d + 1 {
            return Err(Error::param(format!(
                "two-level multiplicity must satisfy 1 <= m1 <= (d+1)/2, got m1 = {m1}, d = {d}"
            )));
        }
        let t_max = 1.0 / m1 as f64;
        if !(0.0..=t_max + 1e-15).contains(&t) {
            return Err(Error::param(format!(
                "two-level t must lie in [0, 1/m1], got t = {t}"
            )));
        }
        Ok(TwoLevelPoint { m1, t, d })
    }

    pub fn m1(&self) -> usize {
        self.m1
    }

    pub fn m2(&self) -> usize {
        self.d + 1 - self.m1
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn s(&self) -> f64 {
        (1.0 - self.m1 as f64 * self.t) / self.m2() as f64
    }

    /// The full d+1 coordinate vector (t repeated m1 times, then s).
    pub fn expand(&self) -> SimplexPoint {
        let mut z = vec![self.s().max(0.0); self.d + 1];
        for v in z.iter_mut().take(self.m1) {
            *v = self.t;
        }
        SimplexPoint { z }
    }
}

/// Maximizers returned by the analytic route: one uniform point away from a
/// threshold, two consecutive uniform points at one.
#[derive(Debug, Clone, Serialize)]
pub struct MaximizerSet {
    pub points: Vec<SimplexPoint>,
    pub value: f64,
}

/// Best point found by the brute-force oracle.
#[derive(Debug, Clone, Serialize)]
pub struct BruteResult {
    pub point: SimplexPoint,
    pub value: f64,
}

fn check_alpha(alpha: f64) -> Result<()> {
    if !(alpha > 1.0) || !alpha.is_finite() {
        return Err(Error::param(format!(
            "alpha must be a finite real > 1, got {alpha}"
        )));
    }
    Ok(())
}

fn m_objective_raw(z: &[f64], alpha: f64) -> f64 {
    let s: f64 = z.iter().map(|v| v.powf(alpha)).sum();
    let s2: f64 = z.iter().map(|v| v.powf(2.0 * alpha)).sum();
    (s * s - s2).max(0.0)
}

/// M_alpha(z) = (sum z_i^alpha)^2 - sum z_i^(2alpha), the double sum of
/// z_i^alpha z_j^alpha over ordered pairs i != j.
pub fn m_objective(z: &SimplexPoint, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(m_objective_raw(z.coords(), alpha))
}

fn f_restriction_raw(m1: usize, t: f64, alpha: f64, d: usize) -> f64 {
    let m2 = (d + 1 - m1) as f64;
    let s = ((1.0 - m1 as f64 * t) / m2).max(0.0);
    let m1f = m1 as f64;
    let a = m1f * t.powf(alpha) + m2 * s.powf(alpha);
    let b = m1f * t.powf(2.0 * alpha) + m2 * s.powf(2.0 * alpha);
    (a * a - b).max(0.0)
}

/// The two-level restriction
/// f(t) = (m1 t^alpha + m2 s^alpha)^2 - (m1 t^(2alpha) + m2 s^(2alpha)).
pub fn f_restriction(tl: &TwoLevelPoint, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    Ok(f_restriction_raw(tl.m1(), tl.t(), alpha, tl.d))
}

fn check_h_params(m1: usize, m2: usize, alpha: f64) -> Result<()> {
    check_alpha(alpha)?;
    if m1 < 1 {
        return Err(Error::param("h polynomials require m1 >= 1"));
    }
    if m2 < 2 {
        return Err(Error::param("h polynomials require m2 >= 2"));
    }
    Ok(())
}

/// h(x) = (m2-1) x^(4a-2) - m2 x^(2a) + m1 x^(2a-2) - (m1-1).
/// Its sign controls the monotonicity of the two-level restriction; h(1) = 0
/// always since the coefficients cancel.
pub fn h_poly(x: f64, m1: usize, m2: usize, alpha: f64) -> Result<f64> {
    check_h_params(m1, m2, alpha)?;
    if x < 0.0 {
        return Err(Error::param("h_poly requires x >= 0"));
    }
    let (m1f, m2f) = (m1 as f64, m2 as f64);
    Ok((m2f - 1.0) * x.powf(4.0 * alpha - 2.0) - m2f * x.powf(2.0 * alpha)
        + m1f * x.powf(2.0 * alpha - 2.0)
        - (m1f - 1.0))
}

fn h1_raw(x: f64, m1: usize, m2: usize, alpha: f64) -> f64 {
    let (m1f, m2f) = (m1 as f64, m2 as f64);
    (4.0 * alpha - 2.0) * (m2f - 1.0) * x.powf(2.0 * alpha) - 2.0 * alpha * m2f * x * x
        + (2.0 * alpha - 2.0) * m1f
}

/// h1(x) = (4a-2)(m2-1) x^(2a) - 2a m2 x^2 + (2a-2) m1, the polynomial factor
/// of h'(x) = h1(x) x^(2a-3).
pub fn h1_poly(x: f64, m1: usize, m2: usize, alpha: f64) -> Result<f64> {
    check_h_params(m1, m2, alpha)?;
    if x < 0.0 {
        return Err(Error::param("h1_poly requires x >= 0"));
    }
    Ok(h1_raw(x, m1, m2, alpha))
}

/// The unique minimum of h1 on (0, inf):
/// x0 = (m2 / ((2a-1)(m2-1)))^(1/(2a-2)).
pub fn h1_min_location(m1: usize, m2: usize, alpha: f64) -> Result<f64> {
    check_h_params(m1, m2, alpha)?;
    let m2f = m2 as f64;
    Ok((m2f / ((2.0 * alpha - 1.0) * (m2f - 1.0))).powf(1.0 / (2.0 * alpha - 2.0)))
}

/// Sign pattern of h'(x) = h1(x) x^(2a-3) on (0, inf), derived from the
/// roots of h1.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum HPrimeSignPattern {
    /// h' > 0 throughout; h is strictly increasing.
    Positive,
    /// h' >= 0 with a single tangent zero; h is still nondecreasing.
    NonNegativeTangent { at: f64 },
    /// h' > 0 before `down`, negative on (down, up), positive after.
    PositiveNegativePositive { down: f64, up: f64 },
}

/// Roots of h1 on (0, inf) with the implied sign pattern of h'.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HRootAnalysis {
    /// Sorted ascending: empty when h1 stays positive, one tangent root at
    /// the minimum, or two roots straddling it.
    pub roots: Vec<f64>,
    pub sign_pattern: HPrimeSignPattern,
}

/// Locates the zeros of h1 (the sign changes of h'). h1 decreases on
/// (0, x0) and increases after, so each root is bracketed and bisected to
/// 1e-12.
pub fn find_h_roots(m1: usize, m2: usize, alpha: f64) -> Result<HRootAnalysis> {
    check_h_params(m1, m2, alpha)?;
    let x0 = h1_min_location(m1, m2, alpha)?;
    let v0 = h1_raw(x0, m1, m2, alpha);
    // Tolerance scaled to the polynomial's size at x0 to recognize tangency.
    let scale = 1.0 + 2.0 * alpha * m2 as f64 * x0 * x0;
    let tangent_tol = 1e-9 * scale;
    if v0 > tangent_tol {
        return Ok(HRootAnalysis {
            roots: Vec::new(),
            sign_pattern: HPrimeSignPattern::Positive,
        });
    }
    if v0 >= -tangent_tol {
        return Ok(HRootAnalysis {
            roots: vec![x0],
            sign_pattern: HPrimeSignPattern::NonNegativeTangent { at: x0 },
        });
    }
    let eval = |x: f64| h1_raw(x, m1, m2, alpha);
    // h1(0) = (2a-2) m1 > 0 and h1 -> +inf, so one root on each side of x0.
    let left = bisect_decreasing(eval, 0.0, x0);
    let mut hi = x0.max(1e-6) * 2.0;
    while eval(hi) <= 0.0 {
        hi *= 2.0;
        if hi > 1e12 {
            break;
        }
    }
    let right = bisect_increasing(eval, x0, hi);
    Ok(HRootAnalysis {
        roots: vec![left, right],
        sign_pattern: HPrimeSignPattern::PositiveNegativePositive {
            down: left,
            up: right,
        },
    })
}

/// Root of a function positive at `lo` and negative at `hi`.
fn bisect_decreasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= 1e-12 * (1.0 + lo.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Root of a function negative at `lo` and positive at `hi`.
fn bisect_increasing(f: impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    for _ in 0..200 {
        if hi - lo <= 1e-12 * (1.0 + lo.abs()) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        if f(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// H(x) = x^(1-2alpha) (x-1). At integer x it equals the objective at the
/// uniform point on x coordinates; it rises to a peak at 1 + 1/(2alpha-2)
/// and decays afterwards.
pub fn comparison_h(x: f64, alpha: f64) -> Result<f64> {
    check_alpha(alpha)?;
    if !(x > 0.0) {
        return Err(Error::param("comparison_h requires x > 0"));
    }
    Ok(x.powf(1.0 - 2.0 * alpha) * (x - 1.0))
}

/// Analytic maximizers of M_alpha over the simplex in d+1 coordinates.
///
/// For alpha strictly between thresholds the unique maximizer (up to
/// permutation) is uniform on k+1 coordinates; within 1e-12 of a_k both the
/// (k+1)- and (k+2)-coordinate uniform points are returned.
pub fn maximize_m_analytic(d: usize, alpha: f64) -> Result<MaximizerSet> {
    check_alpha(alpha)?;
    if d < 1 {
        return Err(Error::param("maximize_m_analytic requires d >= 1"));
    }
    let thresholds = regime_boundaries(d).alpha_thresholds;
    for k in 1..d {
        if (alpha - thresholds[k]).abs() <= 1e-12 {
            let p1 = SimplexPoint::uniform_on(k + 1, d + 1)?;
            let p2 = SimplexPoint::uniform_on(k + 2, d + 1)?;
            let value = comparison_h((k + 1) as f64, alpha)?;
            return Ok(MaximizerSet {
                points: vec![p1, p2],
                value,
            });
        }
    }
    // thresholds decrease with k and end at a_d = 1 < alpha, so the first k
    // with alpha > a_k is the regime index.
    for k in 1..=d {
        if alpha > thresholds[k] {
            let point = SimplexPoint::uniform_on(k + 1, d + 1)?;
            let value = comparison_h((k + 1) as f64, alpha)?;
            return Ok(MaximizerSet {
                points: vec![point],
                value,
            });
        }
    }
    unreachable!("alpha > 1 = a_d always selects a regime");
}

/// Euclidean projection onto the probability simplex (Duchi et al.).
pub fn project_to_simplex(v: &[f64]) -> Vec<f64> {
    let mut u = v.to_vec();
    u.sort_by(|a, b| b.partial_cmp(a).unwrap());
    let mut cumsum = 0.0;
    let mut rho = 0usize;
    let mut theta = 0.0;
    for (i, &ui) in u.iter().enumerate() {
        cumsum += ui;
        let t = (cumsum - 1.0) / (i as f64 + 1.0);
        if ui - t > 0.0 {
            rho = i + 1;
            theta = t;
        }
    }
    if rho == 0 {
        let mut out = vec![0.0; v.len()];
        out[0] = 1.0;
        return out;
    }
    v.iter().map(|&vi| (vi - theta).max(0.0)).collect()
}

/// Brute-force oracle: exhaustive two-level candidates (every multiplicity,
/// t on a grid refined by golden-section search) merged with projected
/// gradient ascents from random interior points.
pub fn maximize_m_brute(
    d: usize,
    alpha: f64,
    grid_n: usize,
    restarts: usize,
) -> Result<BruteResult> {
    check_alpha(alpha)?;
    if d < 1 {
        return Err(Error::param("maximize_m_brute requires d >= 1"));
    }
    let n = d + 1;
    let grid_n = grid_n.max(2);
    let mut best_val = f64::NEG_INFINITY;
    let mut best_z: Vec<f64> = vec![1.0 / n as f64; n];

    // (a) two-level scan: covers every uniform-on-j candidate exactly at the
    // grid endpoints (t = 1/m1 gives s = 0; t = 0 gives uniform mass on m2).
    for m1 in 1..=(n / 2) {
        let t_max = 1.0 / m1 as f64;
        let f = |t: f64| f_restriction_raw(m1, t, alpha, d);
        let mut grid_best = (0usize, f64::NEG_INFINITY);
        for i in 0..grid_n {
            let t = t_max * i as f64 / (grid_n - 1) as f64;
            let v = f(t);
            if v > grid_best.1 {
                grid_best = (i, v);
            }
        }
        let lo = t_max * grid_best.0.saturating_sub(1) as f64 / (grid_n - 1) as f64;
        let hi = t_max * ((grid_best.0 + 1).min(grid_n - 1)) as f64 / (grid_n - 1) as f64;
        let (t_star, v_star) = golden_max(&f, lo, hi);
        for (t, v) in [
            (t_max * grid_best.0 as f64 / (grid_n - 1) as f64, grid_best.1),
            (t_star, v_star),
        ] {
            if v > best_val {
                best_val = v;
                best_z = TwoLevelPoint::new(m1, t.min(t_max), d)?.expand().z;
            }
        }
    }

    // (b) projected gradient ascent from random simplex points.
    let mut rng = ChaCha8Rng::seed_from_u64(BRUTE_SEED);
    for _ in 0..restarts {
        let mut z: Vec<f64> = (0..n)
            .map(|_| -(1.0 - rng.random::<f64>()).ln())
            .collect();
        let sum: f64 = z.iter().sum();
        for v in z.iter_mut() {
            *v /= sum;
        }
        let (z, v) = ascend(z, alpha);
        if v > best_val {
            best_val = v;
            best_z = z;
        }
    }

    Ok(BruteResult {
        point: SimplexPoint::new(normalize_clean(best_z))?,
        value: best_val,
    })
}

/// Clamp away negative rounding dust and renormalize so the simplex-point
/// validator accepts the coordinates.
fn normalize_clean(mut z: Vec<f64>) -> Vec<f64> {
    for v in z.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let sum: f64 = z.iter().sum();
    for v in z.iter_mut() {
        *v /= sum;
    }
    z
}

/// Golden-section search for a maximum of f on [lo, hi], to width 1e-10.
fn golden_max(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> (f64, f64) {
    const INV_PHI: f64 = 0.618_033_988_749_894_8;
    let mut c = hi - INV_PHI * (hi - lo);
    let mut d = lo + INV_PHI * (hi - lo);
    let mut fc = f(c);
    let mut fd = f(d);
    while hi - lo > 1e-10 {
        if fc >= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - INV_PHI * (hi - lo);
            fc = f(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + INV_PHI * (hi - lo);
            fd = f(d);
        }
    }
    let mid = 0.5 * (lo + hi);
    (mid, f(mid))
}

/// Projected gradient ascent with backtracking from step 0.1; stops when the
/// projected move is relatively smaller than 1e-12 or after 10k iterations.
fn ascend(mut z: Vec<f64>, alpha: f64) -> (Vec<f64>, f64) {
    let n = z.len();
    let mut value = m_objective_raw(&z, alpha);
    let mut grad = vec![0.0; n];
    for _ in 0..10_000 {
        let s: f64 = z.iter().map(|v| v.powf(alpha)).sum();
        for (g, &zi) in grad.iter_mut().zip(z.iter()) {
            *g = 2.0 * alpha * zi.powf(alpha - 1.0) * (s - zi.powf(alpha));
        }
        let mut step = 0.1;
        let mut accepted = false;
        for _ in 0..40 {
            let cand: Vec<f64> = z
                .iter()
                .zip(grad.iter())
                .map(|(&zi, &gi)| zi + step * gi)
                .collect();
            let cand = project_to_simplex(&cand);
            let cand_val = m_objective_raw(&cand, alpha);
            if cand_val > value {
                let delta: f64 = cand
                    .iter()
                    .zip(z.iter())
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                z = cand;
                value = cand_val;
                accepted = true;
                if delta < 1e-12 {
                    return (z, value);
                }
                break;
            }
            step *= 0.5;
        }
        if !accepted {
            break;
        }
    }
    (z, value)
}
