use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::OctGeomError;
use crate::ktgmodel::{stats, MoveSequence};
use crate::qsymbols::log_sixj_n;

const QUAD_TOL: f64 = 1e-14;

/// `Λ(θ) = -∫_0^θ log|2 sin t| dt`.
///
/// Uses `Λ(θ) = θ(1 - log 2θ) - ∫_0^θ log(sin t / t) dt` on `(0, π/2]`, whose
/// integrand is smooth, and the oddness and `π`-periodicity of `Λ` elsewhere.
pub fn lobachevsky(theta: f64) -> f64 {
    let r = theta.rem_euclid(PI);
    if r == 0.0 {
        0.0
    } else if r > FRAC_PI_2 {
        -lobachevsky_reduced(PI - r)
    } else {
        lobachevsky_reduced(r)
    }
}

fn lobachevsky_reduced(theta: f64) -> f64 {
    let smooth = |t: f64| if t < 1e-8 { -t * t / 6.0 } else { (t.sin() / t).ln() };
    let integral = quadrature::double_exponential::integrate(smooth, 0.0, theta, QUAD_TOL).integral;
    theta * (1.0 - (2.0 * theta).ln()) - integral
}

/// Volume of the regular ideal octahedron, `8Λ(π/4)`.
pub fn vol_oct() -> f64 {
    8.0 * lobachevsky(FRAC_PI_4)
}

/// `B_0, ..., B_m` from the Akiyama–Tanigawa recurrence.
fn bernoulli(m: usize) -> Vec<BigRational> {
    let mut a: Vec<BigRational> = Vec::with_capacity(m + 1);
    let mut out = Vec::with_capacity(m + 1);
    for k in 0..=m {
        a.push(BigRational::new(BigInt::one(), BigInt::from(k + 1)));
        for j in (1..=k).rev() {
            let d = &a[j - 1] - &a[j];
            a[j - 1] = d * BigRational::from_integer(BigInt::from(j));
        }
        out.push(a[0].clone());
    }
    // The recurrence yields B_1 = +1/2; only even indices are used.
    out
}

/// `Λ(θ)` for `0 < θ < π` from the Taylor series of `log(sin t / t)`,
/// independent of the quadrature.
pub fn lobachevsky_series(theta: f64, terms: usize) -> f64 {
    let b = bernoulli(2 * terms);
    let mut fact = BigRational::one();
    let mut sum = 0.0;
    for n in 1..=terms {
        let k = 2 * n;
        fact *= BigRational::from_integer(BigInt::from((k - 1) * k));
        if b[k].is_zero() {
            continue;
        }
        let c = (&b[k] / &fact).to_f64().unwrap_or(0.0);
        let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * 2f64.powi(k as i32 - 1) * c * theta.powi(k as i32 + 1) / (n as f64 * (k + 1) as f64);
    }
    theta * (1.0 - (2.0 * theta).ln()) - sum
}

/// JSJ volume bookkeeping for the exterior of an augmented graph.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct JsjReport {
    /// Ring count of every unzip whose chamber is Seifert fibered.
    pub seifert_pieces: Vec<u32>,
    pub octahedra: u32,
    pub hyperbolic_piece_volume: f64,
    pub total_volume: f64,
}

/// `(2t+2)·vol_oct`; Seifert chambers (`k ≥ 2` rings) carry no volume.
pub fn volume(seq: &MoveSequence) -> Result<JsjReport, OctGeomError> {
    if !seq.is_augmented() {
        return Err(OctGeomError::NotAugmented);
    }
    let s = stats(seq);
    let octahedra = 2 * s.t + 2;
    let hyp = octahedra as f64 * vol_oct();
    Ok(JsjReport {
        seifert_pieces: s.per_unzip_rings.iter().copied().filter(|&k| k >= 2).collect(),
        octahedra,
        hyperbolic_piece_volume: hyp,
        total_volume: hyp,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticRow {
    #[serde(rename = "N")]
    pub n: u32,
    pub lhs: f64,
    pub target: f64,
    pub error: f64,
}

/// `(N, (2π/N) log sixj_N, 2 vol_oct, |lhs - target|)` for each odd `N`.
pub fn asymptotic_series(ns: &[u32]) -> Result<Vec<AsymptoticRow>, OctGeomError> {
    let target = 2.0 * vol_oct();
    ns.par_iter()
        .map(|&n| {
            let l = log_sixj_n(n).map_err(|_| OctGeomError::EvenColor(n))?;
            let lhs = 2.0 * PI / n as f64 * l;
            Ok(AsymptoticRow {
                n,
                lhs,
                target,
                error: (lhs - target).abs(),
            })
        })
        .collect()
}

/// Rows as CSV with header `N,lhs,target,error`.
pub fn asymptotics_csv(rows: &[AsymptoticRow]) -> String {
    let mut out = String::from("N,lhs,target,error\n");
    for r in rows {
        out.push_str(&format!("{},{:.12},{:.12},{:.12}\n", r.n, r.lhs, r.target, r.error));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zeros_and_period() {
        assert_eq!(lobachevsky(0.0), 0.0);
        assert!(lobachevsky(PI).abs() < 1e-15);
        assert!((lobachevsky(1.0) - lobachevsky(1.0 + PI)).abs() < 1e-12);
        assert!((lobachevsky(-1.0) + lobachevsky(1.0)).abs() < 1e-12);
    }

    #[test]
    fn doubling_identity() {
        let t = FRAC_PI_4;
        let lhs = lobachevsky(2.0 * t);
        let rhs = 2.0 * lobachevsky(t) + 2.0 * lobachevsky(t + FRAC_PI_2);
        assert!((lhs - rhs).abs() < 1e-10);
    }

    #[test]
    fn octahedron_volume() {
        assert!((lobachevsky(FRAC_PI_4) - 0.457_982_797_088_609_5).abs() < 1e-12);
        assert!((vol_oct() - 3.663_862_376_708_876).abs() < 1e-12);
        assert!((vol_oct() - 8.0 * lobachevsky_series(FRAC_PI_4, 30)).abs() < 1e-12);
    }

    #[test]
    fn bernoulli_numbers() {
        let b = bernoulli(6);
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(b[2], r(1, 6));
        assert_eq!(b[4], r(-1, 30));
        assert_eq!(b[6], r(1, 42));
    }

    #[test]
    fn asymptotics_at_three() {
        let rows = asymptotic_series(&[3]).unwrap();
        assert!((rows[0].lhs - 2.0 * PI / 3.0 * 2f64.ln()).abs() < 1e-12);
        assert!(asymptotic_series(&[4]).is_err());
    }
}
