//! Truncated expansions in `x = A - ζ_N` around `ζ_N = e^{iπ/2N}`.

use std::f64::consts::PI;

use num_complex::Complex64;
use num_traits::ToPrimitive;

use super::{QArithError, RatFun, TwistLaurent};

/// Coefficients below this fraction of the largest one count as zero.
pub const ZERO_REL_TO_MAX: f64 = 1e-9;
/// Coefficients below this fraction of the summed term magnitudes at the
/// same order count as zero (cancellation noise).
pub const ZERO_REL_TO_TERMS: f64 = 1e-11;

const EXACT_ZERO: i64 = i64::MAX;

/// The evaluation point `e^{iπ/2N}`.
pub fn zeta(n: u32) -> Complex64 {
    Complex64::from_polar(1.0, PI / (2.0 * n as f64))
}

/// `f = x^valuation * (c_0 + c_1 x + ... + c_{m-1} x^{m-1}) + O(x^{valuation+m})`.
///
/// An empty coefficient list with finite valuation means only
/// `f = O(x^valuation)` is known; the exact zero has valuation `i64::MAX`.
#[derive(Clone, Debug, PartialEq)]
pub struct RootJet {
    n: u32,
    valuation: i64,
    coeffs: Vec<Complex64>,
}

impl RootJet {
    pub fn zero(n: u32) -> Self {
        Self {
            n,
            valuation: EXACT_ZERO,
            coeffs: Vec::new(),
        }
    }

    pub fn constant(n: u32, c: Complex64, precision: usize) -> Self {
        if c == Complex64::new(0.0, 0.0) {
            return Self::zero(n);
        }
        let mut coeffs = vec![Complex64::new(0.0, 0.0); precision.max(1)];
        coeffs[0] = c;
        Self {
            n,
            valuation: 0,
            coeffs,
        }
    }

    /// Builds a jet from raw coefficients at orders `offset, offset+1, ...`,
    /// stripping leading coefficients that are numerically zero. `scales[j]`
    /// is the summed magnitude of the contributions to order `j`.
    pub fn from_series(n: u32, offset: i64, raw: &[Complex64], scales: &[f64]) -> Self {
        let max = raw.iter().map(|c| c.norm()).fold(0.0, f64::max);
        let lead = raw
            .iter()
            .zip(scales)
            .take_while(|(c, s)| {
                let m = c.norm();
                m == 0.0 || m <= ZERO_REL_TO_MAX * max || m <= ZERO_REL_TO_TERMS * **s
            })
            .count();
        Self {
            n,
            valuation: offset + lead as i64,
            coeffs: raw[lead..].to_vec(),
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn is_exact_zero(&self) -> bool {
        self.valuation == EXACT_ZERO
    }

    /// Order of vanishing; `None` for the exact zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_exact_zero()).then_some(self.valuation)
    }

    pub fn coeffs(&self) -> &[Coeff] {
        &self.coeffs
    }

    /// Number of known coefficients past the valuation.
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    /// Drops coefficients beyond `precision`.
    pub fn truncate(&mut self, precision: usize) {
        self.coeffs.truncate(precision);
    }

    /// True when no coefficient is known (only a lower bound on the valuation).
    pub fn is_undetermined(&self) -> bool {
        !self.is_exact_zero() && self.coeffs.is_empty()
    }

    fn known_to(&self) -> i64 {
        if self.is_exact_zero() {
            EXACT_ZERO
        } else {
            self.valuation + self.coeffs.len() as i64
        }
    }

    /// The value at `ζ_N`.
    pub fn value(&self) -> Result<Complex64, QArithError> {
        if self.is_exact_zero() {
            return Ok(Complex64::new(0.0, 0.0));
        }
        if self.coeffs.is_empty() {
            return if self.valuation >= 1 {
                Ok(Complex64::new(0.0, 0.0))
            } else {
                Err(QArithError::PrecisionExhausted)
            };
        }
        match self.valuation {
            v if v < 0 => Err(QArithError::PoleAtPoint),
            0 => Ok(self.coeffs[0]),
            _ => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        if c == Complex64::new(0.0, 0.0) {
            return Self::zero(self.n);
        }
        Self {
            n: self.n,
            valuation: self.valuation,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(Complex64::new(-1.0, 0.0))
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(self.n);
        }
        let m = self.coeffs.len().min(other.coeffs.len());
        let mut coeffs = vec![Complex64::new(0.0, 0.0); m];
        for (i, a) in self.coeffs.iter().take(m).enumerate() {
            for (j, b) in other.coeffs.iter().take(m - i).enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        Self {
            n: self.n,
            valuation: self.valuation + other.valuation,
            coeffs,
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        if self.is_exact_zero() {
            return other.clone();
        }
        if other.is_exact_zero() {
            return self.clone();
        }
        let start = self.valuation.min(other.valuation);
        let end = self.known_to().min(other.known_to());
        if end <= start {
            return Self {
                n: self.n,
                valuation: end,
                coeffs: Vec::new(),
            };
        }
        let len = (end - start) as usize;
        let mut raw = vec![Complex64::new(0.0, 0.0); len];
        let mut scales = vec![0.0; len];
        for jet in [self, other] {
            for (i, c) in jet.coeffs.iter().enumerate() {
                let k = jet.valuation + i as i64 - start;
                if k >= 0 && (k as usize) < len {
                    raw[k as usize] += c;
                    scales[k as usize] += c.norm();
                }
            }
        }
        Self::from_series(self.n, start, &raw, &scales)
    }

    /// Sum of many jets with exact cancellation bookkeeping in one pass.
    pub fn sum<'a, I: IntoIterator<Item = &'a RootJet>>(n: u32, jets: I) -> Self {
        let jets: Vec<&RootJet> = jets.into_iter().filter(|j| !j.is_exact_zero()).collect();
        if jets.is_empty() {
            return Self::zero(n);
        }
        let start = jets.iter().map(|j| j.valuation).min().unwrap();
        let end = jets.iter().map(|j| j.known_to()).min().unwrap();
        if end <= start {
            return Self {
                n,
                valuation: end,
                coeffs: Vec::new(),
            };
        }
        let len = (end - start) as usize;
        let mut raw = vec![Complex64::new(0.0, 0.0); len];
        let mut scales = vec![0.0; len];
        for jet in jets {
            for (i, c) in jet.coeffs.iter().enumerate() {
                let k = jet.valuation + i as i64 - start;
                if (k as usize) < len {
                    raw[k as usize] += c;
                    scales[k as usize] += c.norm();
                }
            }
        }
        Self::from_series(n, start, &raw, &scales)
    }

    pub fn inv(&self) -> Result<Self, QArithError> {
        if self.is_exact_zero() {
            return Err(QArithError::DivisionByZero);
        }
        if self.coeffs.is_empty() {
            return Err(QArithError::PrecisionExhausted);
        }
        let m = self.coeffs.len();
        let c0 = self.coeffs[0];
        let mut out = vec![Complex64::new(0.0, 0.0); m];
        out[0] = c0.inv();
        for k in 1..m {
            let mut s = Complex64::new(0.0, 0.0);
            for j in 1..=k {
                s += self.coeffs[j] * out[k - j];
            }
            out[k] = -s / c0;
        }
        Ok(Self {
            n: self.n,
            valuation: -self.valuation,
            coeffs: out,
        })
    }

    pub fn div(&self, other: &Self) -> Result<Self, QArithError> {
        Ok(self.mul(&other.inv()?))
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut result = Self::constant(self.n, Complex64::new(1.0, 0.0), self.coeffs.len().max(1));
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        result
    }

    pub fn powi(&self, k: i32) -> Result<Self, QArithError> {
        if k >= 0 {
            Ok(self.pow(k as u32))
        } else {
            Ok(self.inv()?.pow((-k) as u32))
        }
    }
}

type Coeff = Complex64;

/// Generalised binomial coefficient `C(alpha, j)`.
fn binom_real(alpha: f64, j: usize) -> f64 {
    let mut b = 1.0;
    for i in 0..j {
        b *= (alpha - i as f64) / (i as f64 + 1.0);
    }
    b
}

/// Raw Taylor coefficients (orders `0..precision`) of a polynomial at `ζ_N`,
/// with the summed term magnitudes per order.
fn taylor(p: &TwistLaurent, n: u32, precision: usize) -> (Vec<Complex64>, Vec<f64>) {
    let z = zeta(n);
    let theta = PI / (2.0 * n as f64);
    let mut raw = vec![Complex64::new(0.0, 0.0); precision];
    let mut scales = vec![0.0; precision];
    for (grade, e, c) in p.terms() {
        let c = c.to_f64().unwrap_or(f64::NAN);
        // h = i A^{3/2}
        let (alpha2, unit) = if grade == 1 {
            (e + 3, Complex64::i())
        } else {
            (e, Complex64::new(1.0, 0.0))
        };
        let alpha = alpha2 as f64 / 2.0;
        let base = unit * Complex64::from_polar(1.0, theta * alpha) * c;
        let mut zpow = Complex64::new(1.0, 0.0);
        for j in 0..precision {
            let term = base * zpow * binom_real(alpha, j);
            raw[j] += term;
            scales[j] += term.norm();
            zpow /= z;
        }
    }
    (raw, scales)
}

/// Jet of a polynomial with `precision` raw orders.
pub fn jet_of_poly(p: &TwistLaurent, n: u32, precision: usize) -> Result<RootJet, QArithError> {
    if p.is_zero() {
        return Ok(RootJet::zero(n));
    }
    let (raw, scales) = taylor(p, n, precision);
    let jet = RootJet::from_series(n, 0, &raw, &scales);
    if jet.coeffs.is_empty() {
        return Err(QArithError::PrecisionExhausted);
    }
    Ok(jet)
}

/// Jet of `f` at `ζ_N`, expanding numerator and denominator to `precision` orders.
pub fn jet_eval(f: &RatFun, n: u32, precision: usize) -> Result<RootJet, QArithError> {
    let num = jet_of_poly(f.numerator(), n, precision)?;
    if num.is_exact_zero() {
        return Ok(num);
    }
    let den = jet_of_poly(f.denominator(), n, precision)?;
    num.div(&den)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64) -> Complex64 {
        Complex64::new(re, 0.0)
    }

    #[test]
    fn valuations_add_under_products() {
        let x = RootJet::from_series(5, 1, &[c(2.0), c(1.0), c(3.0)], &[2.0, 1.0, 3.0]);
        let y = RootJet::from_series(5, 2, &[c(-1.0), c(0.5), c(0.0)], &[1.0, 0.5, 0.0]);
        let p = x.mul(&y);
        assert_eq!(p.valuation(), Some(3));
        assert_eq!(p.coeffs()[0], c(-2.0));
        let s = x.add(&y);
        assert_eq!(s.valuation(), Some(1));
    }

    #[test]
    fn cancellation_raises_valuation() {
        let x = RootJet::from_series(3, 0, &[c(1.0), c(2.0), c(5.0)], &[1.0, 2.0, 5.0]);
        let y = RootJet::from_series(3, 0, &[c(-1.0), c(1.0), c(0.0)], &[1.0, 1.0, 0.0]);
        let s = x.add(&y);
        assert_eq!(s.valuation(), Some(1));
        assert_eq!(s.coeffs(), &[c(3.0), c(5.0)]);
        let t = x.add(&x.neg());
        assert!(t.is_undetermined());
        assert_eq!(t.value().unwrap(), c(0.0));
        let w = RootJet::from_series(3, -3, &[c(1.0), c(2.0), c(5.0)], &[1.0, 2.0, 5.0]);
        let u = w.add(&w.neg());
        assert_eq!(u.value().unwrap_err(), QArithError::PrecisionExhausted);
    }

    #[test]
    fn inverse_round_trip() {
        let x = RootJet::from_series(7, -1, &[c(2.0), c(1.0), c(-4.0), c(0.5)], &[1.0; 4]);
        let one = x.mul(&x.inv().unwrap());
        assert_eq!(one.valuation(), Some(0));
        assert!((one.coeffs()[0] - c(1.0)).norm() < 1e-15);
        for k in 1..4 {
            assert!(one.coeffs()[k].norm() < 1e-14);
        }
    }

    #[test]
    fn jet_of_a_squared_matches_derivatives() {
        let n = 4;
        let p = TwistLaurent::a_pow(2);
        let j = jet_of_poly(&p, n, 4).unwrap();
        let z = zeta(n);
        assert!((j.coeffs()[0] - z * z).norm() < 1e-14);
        assert!((j.coeffs()[1] - z * 2.0).norm() < 1e-14);
        assert!((j.coeffs()[2] - c(1.0)).norm() < 1e-14);
        assert!(j.coeffs()[3].norm() < 1e-14);
    }
}
