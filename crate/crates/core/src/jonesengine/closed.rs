use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::{build_expression, eval_at_root, EngineConfig, EngineError, Factor, InstFactor, TwistMode};
use crate::ktgmodel::{stats, MoveSequence};
use crate::octgeom::vol_oct;
use crate::qsymbols::{log_sixj_n, phi_n, sixj_n, TetLabels};

/// `φ_N^θ N^r sixj_N^{t+1}` for odd `N`, zero for even `N`.
pub fn augmented_closed_form(seq: &MoveSequence, n: u32) -> Result<Complex64, EngineError> {
    if !seq.is_augmented() {
        return Err(EngineError::NotAugmented);
    }
    if n.is_multiple_of(2) {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let s = stats(seq);
    let phi = phi_n(n).map_err(|e| EngineError::DomainError(e.to_string()))?;
    let sixj = sixj_n(n).map_err(|e| EngineError::DomainError(e.to_string()))?;
    Ok(phi.powi(s.theta as i32) * (n as f64).powi(s.r as i32) * sixj.powi(s.t as i32 + 1))
}

/// `log |J_N| = r log N + (t+1) log sixj_N` for odd `N`, without overflow.
pub fn log_abs_closed_form(seq: &MoveSequence, n: u32) -> Result<f64, EngineError> {
    if !seq.is_augmented() {
        return Err(EngineError::NotAugmented);
    }
    let s = stats(seq);
    let l = log_sixj_n(n).map_err(|e| EngineError::DomainError(e.to_string()))?;
    Ok(s.r as f64 * (n as f64).ln() + (s.t + 1) as f64 * l)
}

/// Ring count per unzip that makes every channel other than the all-`N` one
/// vanish at `ζ_N`: `n = a·f + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct AugmentationBound {
    /// Largest `⌈m/N⌉` over factorial arguments `m` of any summand.
    pub a: u32,
    /// Largest number of quantum factorials in the denominator of a summand.
    pub f: u32,
    pub n: u32,
}

/// Colors at which `a` is sampled; `⌈m/N⌉` is constant in `N` from `N = 3` on
/// for the affine arguments that occur.
const BOUND_SAMPLES: [u32; 5] = [3, 5, 7, 9, 11];

fn theta_args(j: [u32; 3]) -> Vec<i64> {
    let p = j.map(|x| x as i64 - 1);
    let s = (p[0] + p[1] + p[2]) / 2;
    vec![s + 1, s - p[0], s - p[1], s - p[2], p[0], p[1], p[2]]
}

fn factorial_args(f: &InstFactor) -> Vec<i64> {
    match *f {
        InstFactor::Tet(j) => {
            let Ok(t) = TetLabels::new(j) else { return Vec::new() };
            let (v, b) = (t.v(), t.b());
            let lo = *v.iter().max().unwrap();
            let hi = *b.iter().min().unwrap();
            let mut out: Vec<i64> = j.iter().map(|&x| x as i64 - 1).collect();
            out.extend(b.iter().flat_map(|&bm| v.iter().map(move |&vn| bm - vn)));
            for z in lo..=hi {
                out.push(z + 1);
                out.extend(b.iter().map(|&bm| bm - z));
                out.extend(v.iter().map(|&vn| z - vn));
            }
            out
        }
        InstFactor::Theta(j) | InstFactor::InvTheta(j) | InstFactor::Fusion(j) => theta_args(j),
        _ => Vec::new(),
    }
}

/// Computes [`AugmentationBound`] from the expression of `seq`, read in
/// lenient mode so twisted unzips do not abort the scan.
pub fn sufficient_ring_count(seq: &MoveSequence) -> Result<AugmentationBound, EngineError> {
    let expr = build_expression(seq, TwistMode::Lenient)?;
    // Denominator factorials: a tetrahedron has 6 edge factorials and 7 in
    // each term of its sum; an inverse theta or a fusion coefficient has the
    // 4 numerator factorials of the theta.
    let f: u32 = expr
        .factors()
        .iter()
        .map(|f| match f {
            Factor::Tet(_) => 13,
            Factor::InvTheta(_) | Factor::Fusion(_) => 4,
            Factor::Theta(_) => 3,
            _ => 0,
        })
        .sum();
    let mut a = 1;
    for n in BOUND_SAMPLES {
        for (_, factors) in expr.instantiate(n) {
            for arg in factors.iter().flat_map(factorial_args) {
                a = a.max((arg.max(0) as u32).div_ceil(n));
            }
        }
    }
    Ok(AugmentationBound { a, f, n: a * f + 1 })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureRow {
    #[serde(rename = "N")]
    pub n: u32,
    /// `(2π/N) log |J_N|`; `None` where `J_N = 0`.
    pub lhs: Option<f64>,
    pub error: Option<f64>,
    /// `|J_N|` from the closed form; zero for even `N`.
    pub closed_form_abs: f64,
    /// Relative difference to the multisum at `ζ_N`, where it was evaluated.
    pub multisum_rel_diff: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConjectureReport {
    pub t: u32,
    pub r: u32,
    /// Rings per unzip needed for the multisum to equal the closed form.
    pub ring_bound: u32,
    pub cross_checked: bool,
    /// `2(t+1)·vol_oct`.
    pub target: f64,
    pub rows: Vec<ConjectureRow>,
    /// Errors strictly decrease over the odd `N ≥ 51` in the table.
    pub error_decreasing: bool,
    /// Relative error at the largest odd `N`.
    pub final_rel_error: Option<f64>,
    /// Some even `N` has `J_N = 0`, so the limit over all `N` does not exist.
    pub original_fails: bool,
    /// Errors decrease and the final relative error is below 5%.
    pub so3_supported: bool,
}

/// Tabulates `(2π/N) log |J_N|` against `2(t+1)·vol_oct` over `ns`, checking
/// the closed form against the multisum for `N ≤ cross_check_max`.
pub fn verify_conjecture(
    seq: &MoveSequence,
    ns: &[u32],
    cross_check_max: u32,
    config: &EngineConfig,
) -> Result<ConjectureReport, EngineError> {
    if !seq.is_augmented() {
        return Err(EngineError::NotAugmented);
    }
    let s = stats(seq);
    let target = 2.0 * (s.t + 1) as f64 * vol_oct();
    // The multisum equals the closed form only with enough rings.
    let bound = sufficient_ring_count(seq)?;
    let enough = s.per_unzip_rings.iter().all(|&k| k >= bound.n);
    let expr = if cross_check_max > 0 && enough {
        Some(build_expression(seq, config.mode)?)
    } else {
        None
    };
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::with_capacity(ns.len());
    for n in ns {
        let closed = augmented_closed_form(seq, n)?;
        let (lhs, closed_abs) = if n % 2 == 1 {
            let l = log_abs_closed_form(seq, n)?;
            (Some(2.0 * PI / n as f64 * l), l.exp())
        } else {
            (None, 0.0)
        };
        let multisum_rel_diff = match &expr {
            Some(e) if n <= cross_check_max => {
                let v = eval_at_root(e, n, config)?.value;
                Some(if closed.norm() == 0.0 {
                    v.norm()
                } else {
                    (v - closed).norm() / closed.norm()
                })
            }
            _ => None,
        };
        rows.push(ConjectureRow {
            n,
            lhs,
            error: lhs.map(|l| (l - target).abs()),
            closed_form_abs: closed_abs,
            multisum_rel_diff,
        });
    }
    let tail: Vec<f64> = rows.iter().filter(|r| r.n >= 51).filter_map(|r| r.error).collect();
    let error_decreasing = tail.len() >= 2 && tail.windows(2).all(|w| w[1] < w[0]);
    let final_rel_error = rows.iter().rev().find_map(|r| r.error).map(|e| e / target);
    let original_fails = rows.iter().any(|r| r.n % 2 == 0 && r.closed_form_abs == 0.0);
    Ok(ConjectureReport {
        t: s.t,
        r: s.r,
        ring_bound: bound.n,
        cross_checked: expr.is_some(),
        target,
        so3_supported: error_decreasing && final_rel_error.is_some_and(|e| e < 0.05),
        rows,
        error_decreasing,
        final_rel_error,
        original_fails,
    })
}
