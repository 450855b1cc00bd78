//! Quantum integers and the named skein evaluations: unknot, theta,
//! tetrahedron, half twist, ring, and the root-of-unity constants `φ_N`,
//! `sixj_N`.

mod form;

pub use form::{FactoredFrac, JetTable, QMonomial, QSum};

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::qarith::{QArithError, RatFun, TwistLaurent};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum QSymbolError {
    #[error("domain error: {0}")]
    DomainError(String),
    #[error("inadmissible triple ({0}, {1}, {2})")]
    InadmissibleTriple(u32, u32, u32),
    #[error(transparent)]
    Arith(#[from] QArithError),
}

/// Orientation of a half twist.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// `[n] = (A^{2n} - A^{-2n}) / (A^2 - A^{-2})`.
pub fn qint(n: i64) -> TwistLaurent {
    if n < 0 {
        return -qint(-n);
    }
    (0..n)
        .map(|j| TwistLaurent::a_pow(2 * (n - 1) - 4 * j))
        .sum()
}

/// `[n]! = [1][2]...[n]`.
pub fn qfact(n: u32) -> TwistLaurent {
    (1..=n as i64).map(qint).product()
}

pub fn qbinom(n: i64, k: i64) -> Result<TwistLaurent, QSymbolError> {
    if k < 0 || n < 0 || k > n {
        return Err(QSymbolError::DomainError(format!(
            "qbinom({n}, {k}) needs 0 <= k <= n"
        )));
    }
    let num = qfact(n as u32);
    let den = &qfact(k as u32) * &qfact((n - k) as u32);
    match num.div_exact(&den) {
        Some(q) => Ok(q),
        None => panic!("[{n}]! not divisible by [{k}]![{}]!", n - k),
    }
}

/// `<N> = (-1)^{N-1} [N]`.
pub fn unknot_value(n: u32) -> TwistLaurent {
    let q = qint(n as i64);
    if n.is_multiple_of(2) {
        -q
    } else {
        q
    }
}

/// `|a-b| < c < a+b` and `a+b+c` odd.
pub fn admissible(a: u32, b: u32, c: u32) -> bool {
    let (a, b, c) = (a as i64, b as i64, c as i64);
    a >= 1 && b >= 1 && c >= 1 && (a - b).abs() < c && c < a + b && (a + b + c) % 2 == 1
}

pub fn theta_value(a: u32, b: u32, c: u32) -> Result<RatFun, QSymbolError> {
    Ok(QMonomial::theta(a, b, c)?.to_ratfun())
}

/// Colors of the six tetrahedron edges `e1 = v1v2, e2 = v1v3, e3 = v1v4,
/// e4 = v2v3, e5 = v3v4, e6 = v2v4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct TetLabels {
    j: [u32; 6],
}

impl TetLabels {
    /// Edge indices (0-based) at each vertex.
    pub const VERTICES: [[usize; 3]; 4] = [[0, 1, 2], [0, 3, 5], [1, 3, 4], [2, 4, 5]];
    /// Pairs of opposite edges.
    pub const OPPOSITE: [[usize; 2]; 3] = [[0, 4], [1, 5], [2, 3]];

    pub fn new(j: [u32; 6]) -> Result<Self, QSymbolError> {
        for v in Self::VERTICES {
            let (a, b, c) = (j[v[0]], j[v[1]], j[v[2]]);
            if !admissible(a, b, c) {
                return Err(QSymbolError::InadmissibleTriple(a, b, c));
            }
        }
        Ok(Self { j })
    }

    pub fn uniform(n: u32) -> Result<Self, QSymbolError> {
        Self::new([n; 6])
    }

    pub fn labels(&self) -> [u32; 6] {
        self.j
    }

    fn primed(&self) -> [i64; 6] {
        self.j.map(|x| x as i64 - 1)
    }

    /// Half-sums of the primed colors at each vertex.
    pub fn v(&self) -> [i64; 4] {
        let p = self.primed();
        Self::VERTICES.map(|v| (p[v[0]] + p[v[1]] + p[v[2]]) / 2)
    }

    /// Half-sums of the primed colors around each 4-cycle (two opposite pairs).
    pub fn b(&self) -> [i64; 3] {
        let p = self.primed();
        let pair = Self::OPPOSITE.map(|o| p[o[0]] + p[o[1]]);
        [
            (pair[0] + pair[1]) / 2,
            (pair[0] + pair[2]) / 2,
            (pair[1] + pair[2]) / 2,
        ]
    }
}

pub fn tet_value(labels: &TetLabels) -> RatFun {
    QSum::tet(labels).to_ratfun()
}

/// `h^{±(k-1)} A^{±(k-1)(k-2)/2}`.
pub fn halftwist_coeff(k: u32, sign: Sign) -> TwistLaurent {
    QMonomial::halftwist(k, sign).to_factored().numerator().clone()
}

/// `(-1)^{N-1} [kN]/[k]`.
pub fn ring_coeff(k: u32, n: u32) -> RatFun {
    QMonomial::ring(k, n).to_ratfun()
}

/// Value of `ring_coeff(k, N)` at `ζ_N`, obtained from jets.
pub fn ring_coeff_at_root(k: u32, n: u32) -> Result<Complex64, QSymbolError> {
    let m = QMonomial::ring(k, n);
    let mut precision = 2;
    loop {
        let table = JetTable::new(n, precision, m.max_index());
        match m.jet(&table).and_then(|j| j.value()) {
            Err(QArithError::PrecisionExhausted) if precision < 16 => precision *= 2,
            r => return Ok(r?),
        }
    }
}

fn require_odd(n: u32) -> Result<(), QSymbolError> {
    if n.is_multiple_of(2) {
        Err(QSymbolError::DomainError(format!("N = {n} must be odd")))
    } else {
        Ok(())
    }
}

/// `φ_N = (-1)^{(N-1)/2} e^{(N^2-1)πi/4N}`.
pub fn phi_n(n: u32) -> Result<Complex64, QSymbolError> {
    require_odd(n)?;
    let nf = n as f64;
    let sign = if ((n - 1) / 2).is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(Complex64::from_polar(sign, (nf * nf - 1.0) * PI / (4.0 * nf)))
}

/// `log sixj_N`, summed in log space; every term is a positive real at `ζ_N`.
pub fn log_sixj_n(n: u32) -> Result<f64, QSymbolError> {
    require_odd(n)?;
    let k = ((n - 1) / 2) as usize;
    let nf = n as f64;
    let base = (PI / nf).sin().ln();
    // lf[i] = log [i]! at ζ_N
    let mut lf = vec![0.0; k + 1];
    for i in 1..=k {
        lf[i] = lf[i - 1] + (PI * i as f64 / nf).sin().ln() - base;
    }
    let logs: Vec<f64> = (0..=k)
        .map(|j| 4.0 * (lf[k] - lf[j] - lf[k - j]))
        .collect();
    let max = logs.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    Ok(max + logs.iter().map(|l| (l - max).exp()).sum::<f64>().ln())
}

/// `sixj_N = Σ_k qbinom((N-1)/2, k)^4` at `ζ_N`.
pub fn sixj_n(n: u32) -> Result<f64, QSymbolError> {
    Ok(log_sixj_n(n)?.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::{jet_eval, zeta};

    #[test]
    fn small_quantum_integers() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(2), TwistLaurent::a_pow(2) + TwistLaurent::a_pow(-2));
        assert_eq!(qint(-2), -qint(2));
        assert!(qfact(0).is_one());
        assert_eq!(qbinom(2, 1).unwrap(), qint(2));
        assert!(qbinom(1, 0).unwrap().is_one());
        assert!(matches!(qbinom(1, 2), Err(QSymbolError::DomainError(_))));
        assert_eq!(qbinom(5, 2).unwrap(), &(&qint(5) * &qint(4)).div_exact(&qint(2)).unwrap() * &TwistLaurent::one());
    }

    #[test]
    fn unknot_and_admissibility() {
        assert!(unknot_value(1).is_one());
        assert_eq!(unknot_value(2), -qint(2));
        assert_eq!(unknot_value(3), TwistLaurent::a_pow(4) + TwistLaurent::one() + TwistLaurent::a_pow(-4));
        assert!(admissible(1, 1, 1));
        assert!(admissible(5, 5, 5));
        assert!(!admissible(2, 2, 2));
        assert!(!admissible(1, 1, 3));
    }

    #[test]
    fn theta_closed_forms() {
        assert_eq!(theta_value(1, 1, 1).unwrap(), RatFun::one());
        let expect = RatFun::new(-(&qint(4) * &qint(3)), qint(2).pow(2)).unwrap();
        assert_eq!(theta_value(3, 3, 3).unwrap(), expect);
        assert_eq!(theta_value(1, 4, 4).unwrap(), RatFun::from_poly(unknot_value(4)));
        assert!(matches!(theta_value(2, 2, 2), Err(QSymbolError::InadmissibleTriple(2, 2, 2))));
    }

    #[test]
    fn tet_trivial_coloring() {
        assert_eq!(tet_value(&TetLabels::uniform(1).unwrap()), RatFun::one());
        assert!(TetLabels::uniform(2).is_err());
    }

    #[test]
    fn half_twists() {
        assert_eq!(halftwist_coeff(2, Sign::Plus), TwistLaurent::h());
        assert_eq!(halftwist_coeff(3, Sign::Plus), -TwistLaurent::a_pow(4));
        assert!((&halftwist_coeff(3, Sign::Plus) * &halftwist_coeff(3, Sign::Minus)).is_one());
        for n in (1..=51).step_by(2) {
            let v = halftwist_coeff(n, Sign::Plus).eval(zeta(n));
            assert!((v - phi_n(n).unwrap()).norm() < 1e-12, "N = {n}");
        }
    }

    #[test]
    fn ring_values_at_root() {
        assert!(ring_coeff_at_root(3, 5).unwrap().norm() < 1e-9);
        assert!((ring_coeff_at_root(5, 5).unwrap() - 5.0).norm() < 1e-9);
        assert!((ring_coeff_at_root(6, 3).unwrap() - 3.0).norm() < 1e-9);
        let f = ring_coeff(3, 5);
        let j = jet_eval(&f, 5, 4).unwrap();
        assert_eq!(j.valuation(), Some(1));
    }

    #[test]
    fn root_constants() {
        assert!((sixj_n(1).unwrap() - 1.0).abs() < 1e-12);
        assert!((sixj_n(3).unwrap() - 2.0).abs() < 1e-12);
        let g = 2.0 * (PI / 5.0).cos();
        assert!((sixj_n(5).unwrap() - (2.0 + g.powi(4))).abs() < 1e-12);
        for n in (1..=99).step_by(2) {
            assert!((phi_n(n).unwrap().norm() - 1.0).abs() < 1e-14);
        }
        assert!(phi_n(4).is_err());
    }

    #[test]
    fn shifted_integers_at_root() {
        for n in [3u32, 5, 7, 11] {
            let z = zeta(n);
            for j in 1..n as i64 {
                let a = qint(n as i64 + j).eval(z);
                let b = qint(j).eval(z);
                let c = qint(n as i64 - j).eval(z);
                assert!((a + b).norm() < 1e-9 && (b - c).norm() < 1e-9);
                let s = ((PI * j as f64 / n as f64).sin()) / (PI / n as f64).sin();
                assert!((b - s).norm() < 1e-9 && s > 0.0);
            }
        }
    }
}
