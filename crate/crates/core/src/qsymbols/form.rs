use std::collections::BTreeMap;

use num_complex::Complex64;

use super::{admissible, qint, QSymbolError, Sign, TetLabels};
use crate::qarith::{jet_of_poly, QArithError, RatFun, RootJet, TwistLaurent};

/// `±A^{a2/2} h^h ∏_k [k]^{e_k}`, the shape of every named skein factor.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct QMonomial {
    neg: bool,
    a2: i64,
    h: i64,
    fac: BTreeMap<u32, i64>,
}

impl Default for QMonomial {
    fn default() -> Self {
        Self::one()
    }
}

impl QMonomial {
    pub fn one() -> Self {
        Self {
            neg: false,
            a2: 0,
            h: 0,
            fac: BTreeMap::new(),
        }
    }

    pub fn minus_one() -> Self {
        Self {
            neg: true,
            ..Self::one()
        }
    }

    pub fn sign_pow(k: i64) -> Self {
        if k.rem_euclid(2) == 1 {
            Self::minus_one()
        } else {
            Self::one()
        }
    }

    /// `A^{a2/2} h^h`.
    pub fn unit(a2: i64, h: i64) -> Self {
        Self {
            a2,
            h,
            ..Self::one()
        }
    }

    /// `[k]^e` for `k >= 1`.
    pub fn qint_pow(k: u32, e: i64) -> Self {
        assert!(k >= 1, "[0] is not a unit");
        let mut m = Self::one();
        m.push(k, e);
        m
    }

    /// `([n]!)^e`.
    pub fn qfact_pow(n: i64, e: i64) -> Self {
        assert!(n >= 0, "negative factorial argument");
        let mut m = Self::one();
        for k in 2..=n as u32 {
            m.push(k, e);
        }
        m
    }

    fn push(&mut self, k: u32, e: i64) {
        if k == 1 || e == 0 {
            return;
        }
        let slot = self.fac.entry(k).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.fac.remove(&k);
        }
    }

    pub fn is_negative(&self) -> bool {
        self.neg
    }

    pub fn factors(&self) -> &BTreeMap<u32, i64> {
        &self.fac
    }

    pub fn max_index(&self) -> u32 {
        self.fac.keys().next_back().copied().unwrap_or(1)
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self {
            neg: self.neg ^ other.neg,
            a2: self.a2 + other.a2,
            h: self.h + other.h,
            fac: self.fac.clone(),
        };
        for (&k, &e) in &other.fac {
            out.push(k, e);
        }
        out
    }

    pub fn inv(&self) -> Self {
        Self {
            neg: self.neg,
            a2: -self.a2,
            h: -self.h,
            fac: self.fac.iter().map(|(&k, &e)| (k, -e)).collect(),
        }
    }

    pub fn pow(&self, k: i64) -> Self {
        Self {
            neg: self.neg && k.rem_euclid(2) == 1,
            a2: self.a2 * k,
            h: self.h * k,
            fac: if k == 0 {
                BTreeMap::new()
            } else {
                self.fac.iter().map(|(&q, &e)| (q, e * k)).collect()
            },
        }
    }

    /// `<N> = (-1)^{N-1}[N]`.
    pub fn unknot(n: u32) -> Self {
        Self::sign_pow(n as i64 - 1).mul(&Self::qint_pow(n, 1))
    }

    /// `<a b c>`.
    pub fn theta(a: u32, b: u32, c: u32) -> Result<Self, QSymbolError> {
        if !admissible(a, b, c) {
            return Err(QSymbolError::InadmissibleTriple(a, b, c));
        }
        let (a, b, c) = (a as i64 - 1, b as i64 - 1, c as i64 - 1);
        let s = (a + b + c) / 2;
        Ok(Self::sign_pow(s)
            .mul(&Self::qfact_pow(s + 1, 1))
            .mul(&Self::qfact_pow(s - a, 1))
            .mul(&Self::qfact_pow(s - b, 1))
            .mul(&Self::qfact_pow(s - c, 1))
            .mul(&Self::qfact_pow(a, -1))
            .mul(&Self::qfact_pow(b, -1))
            .mul(&Self::qfact_pow(c, -1)))
    }

    /// `<c> / <a b c>`: the coefficient of the color-`c` channel when fusing
    /// parallel strands colored `a` and `b`.
    pub fn fusion(a: u32, b: u32, c: u32) -> Result<Self, QSymbolError> {
        Ok(Self::unknot(c).mul(&Self::theta(a, b, c)?.inv()))
    }

    /// `h^{±(k-1)} A^{±(k-1)(k-2)/2}`.
    pub fn halftwist(k: u32, sign: Sign) -> Self {
        let k = k as i64;
        let s = sign.as_i64();
        Self::unit(s * (k - 1) * (k - 2), s * (k - 1))
    }

    /// `(-1)^{N-1}[kN]/[k]`.
    pub fn ring(k: u32, n: u32) -> Self {
        Self::sign_pow(n as i64 - 1)
            .mul(&Self::qint_pow(k * n, 1))
            .mul(&Self::qint_pow(k, -1))
    }

    pub fn to_factored(&self) -> FactoredFrac {
        let mut num = TwistLaurent::a_half_pow(self.a2) * TwistLaurent::h_pow(self.h);
        if self.neg {
            num = -num;
        }
        let mut den = BTreeMap::new();
        for (&k, &e) in &self.fac {
            if e > 0 {
                num = num * qint(k as i64).pow(e as u32);
            } else {
                den.insert(k, (-e) as u32);
            }
        }
        FactoredFrac { num, den }
    }

    pub fn to_ratfun(&self) -> RatFun {
        self.to_factored().to_ratfun()
    }

    /// Numeric value at `A^{1/2} = a_half`, with `h = i A^{3/2}`.
    pub fn eval_half(&self, a_half: Complex64) -> Result<Complex64, QArithError> {
        let a = a_half * a_half;
        let h = Complex64::i() * a_half.powi(3);
        let mut v = a_half.powi(self.a2 as i32) * h.powi(self.h as i32);
        if self.neg {
            v = -v;
        }
        let d = a * a - a.powi(-2);
        for (&k, &e) in &self.fac {
            let q = if d.norm() < 1e-14 {
                // [k] -> ±k as A^2 -> ±1.
                let s = if (a * a).re > 0.0 || k % 2 == 1 { 1.0 } else { -1.0 };
                Complex64::new(s * k as f64, 0.0)
            } else {
                (a.powi(2 * k as i32) - a.powi(-2 * (k as i32))) / d
            };
            if e < 0 && q.norm() < 1e-12 {
                return Err(QArithError::PoleAtPoint);
            }
            v *= q.powi(e as i32);
        }
        Ok(v)
    }

    /// Jet at `ζ_N` from the cached jets of quantum integers.
    pub fn jet(&self, table: &JetTable) -> Result<RootJet, QArithError> {
        let n = table.n;
        let unit = Complex64::i().powi(self.h.rem_euclid(4) as i32);
        let unit = if self.neg { -unit } else { unit };
        let mono = TwistLaurent::a_half_pow(self.a2 + 3 * self.h);
        let mut jet = table.truncate(jet_of_poly(&mono, n, table.precision)?.scale(unit));
        for (&k, &e) in &self.fac {
            let q = table.qint(k);
            jet = jet.mul(&q.powi(e as i32)?);
        }
        Ok(jet)
    }
}

/// A finite sum of [`QMonomial`]s.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct QSum {
    terms: Vec<QMonomial>,
}

impl QSum {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_terms(terms: Vec<QMonomial>) -> Self {
        Self { terms }
    }

    pub fn terms(&self) -> &[QMonomial] {
        &self.terms
    }

    pub fn max_index(&self) -> u32 {
        self.terms.iter().map(|t| t.max_index()).max().unwrap_or(1)
    }

    pub fn scale(&self, m: &QMonomial) -> Self {
        Self {
            terms: self.terms.iter().map(|t| t.mul(m)).collect(),
        }
    }

    /// The tetrahedron evaluation
    /// `∏[B_m - V_n]! / ∏[j'_k]! · Σ_z (-1)^z [z+1]! / (∏[B_r - z]! ∏[z - V_s]!)`.
    pub fn tet(labels: &TetLabels) -> Self {
        let v = labels.v();
        let b = labels.b();
        let mut pre = QMonomial::one();
        for bm in b {
            for vn in v {
                pre = pre.mul(&QMonomial::qfact_pow(bm - vn, 1));
            }
        }
        for j in labels.labels() {
            pre = pre.mul(&QMonomial::qfact_pow(j as i64 - 1, -1));
        }
        let lo = *v.iter().max().unwrap();
        let hi = *b.iter().min().unwrap();
        let terms = (lo..=hi)
            .map(|z| {
                let mut t = QMonomial::sign_pow(z).mul(&QMonomial::qfact_pow(z + 1, 1));
                for bm in b {
                    t = t.mul(&QMonomial::qfact_pow(bm - z, -1));
                }
                for vn in v {
                    t = t.mul(&QMonomial::qfact_pow(z - vn, -1));
                }
                t.mul(&pre)
            })
            .collect();
        Self { terms }
    }

    pub fn to_factored(&self) -> FactoredFrac {
        let mut acc = FactoredFrac::zero();
        for t in &self.terms {
            acc = acc.add(&t.to_factored());
        }
        acc.reduce()
    }

    pub fn to_ratfun(&self) -> RatFun {
        self.to_factored().to_ratfun()
    }

    pub fn jet(&self, table: &JetTable) -> Result<RootJet, QArithError> {
        let jets = self
            .terms
            .iter()
            .map(|t| t.jet(table))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(RootJet::sum(table.n, &jets))
    }
}

/// `num / ∏_k [k]^{den_k}`, kept factored so sums share denominators cheaply.
#[derive(Clone, Debug, PartialEq)]
pub struct FactoredFrac {
    num: TwistLaurent,
    den: BTreeMap<u32, u32>,
}

impl FactoredFrac {
    pub fn zero() -> Self {
        Self {
            num: TwistLaurent::zero(),
            den: BTreeMap::new(),
        }
    }

    pub fn one() -> Self {
        Self {
            num: TwistLaurent::one(),
            den: BTreeMap::new(),
        }
    }

    pub fn from_poly(num: TwistLaurent) -> Self {
        Self {
            num,
            den: BTreeMap::new(),
        }
    }

    /// `num / ∏_k [k]^{den_k}`.
    pub fn new(num: TwistLaurent, den: BTreeMap<u32, u32>) -> Self {
        let den = den.into_iter().filter(|&(k, e)| k > 1 && e > 0).collect();
        Self { num, den }
    }

    pub fn mul_poly(&self, p: &TwistLaurent) -> Self {
        Self {
            num: &self.num * p,
            den: if p.is_zero() { BTreeMap::new() } else { self.den.clone() },
        }
    }

    pub fn neg(&self) -> Self {
        Self {
            num: -&self.num,
            den: self.den.clone(),
        }
    }

    pub fn numerator(&self) -> &TwistLaurent {
        &self.num
    }

    pub fn denominator_factors(&self) -> &BTreeMap<u32, u32> {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    fn lift(&self, target: &BTreeMap<u32, u32>) -> TwistLaurent {
        let mut num = self.num.clone();
        for (&k, &e) in target {
            let have = self.den.get(&k).copied().unwrap_or(0);
            if e > have {
                num = num * qint(k as i64).pow(e - have);
            }
        }
        num
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let mut den = self.den.clone();
        for (&k, &e) in &other.den {
            let slot = den.entry(k).or_insert(0);
            *slot = (*slot).max(e);
        }
        let num = self.lift(&den) + other.lift(&den);
        Self { num, den }
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut den = self.den.clone();
        for (&k, &e) in &other.den {
            *den.entry(k).or_insert(0) += e;
        }
        Self {
            num: &self.num * &other.num,
            den,
        }
    }

    /// Cancels denominator factors that divide the numerator exactly.
    pub fn reduce(mut self) -> Self {
        if self.num.is_zero() {
            return Self::zero();
        }
        let keys: Vec<u32> = self.den.keys().rev().copied().collect();
        for k in keys {
            let q = qint(k as i64);
            while self.den[&k] > 0 {
                match self.num.div_exact(&q) {
                    Some(n) => {
                        self.num = n;
                        *self.den.get_mut(&k).unwrap() -= 1;
                    }
                    None => break,
                }
            }
            if self.den[&k] == 0 {
                self.den.remove(&k);
            }
        }
        self
    }

    pub fn to_ratfun(&self) -> RatFun {
        let den: TwistLaurent = self
            .den
            .iter()
            .map(|(&k, &e)| qint(k as i64).pow(e))
            .product();
        RatFun::new(self.num.clone(), den).expect("quantum integers are nonzero")
    }
}

/// Jets of `[1], ..., [max]` at `ζ_N` with a common precision.
#[derive(Clone, Debug)]
pub struct JetTable {
    n: u32,
    precision: usize,
    qints: Vec<RootJet>,
}

impl JetTable {
    pub fn new(n: u32, precision: usize, max: u32) -> Self {
        let den = TwistLaurent::a_pow(2) - TwistLaurent::a_pow(-2);
        let qints = (0..=max)
            .map(|k| {
                if k == 0 {
                    return RootJet::zero(n);
                }
                let num = TwistLaurent::a_pow(2 * k as i64) - TwistLaurent::a_pow(-2 * k as i64);
                let nj = jet_of_poly(&num, n, precision + 1).expect("nonzero binomial");
                let dj = jet_of_poly(&den, n, precision + 1).expect("nonzero binomial");
                let mut j = nj.div(&dj).expect("nonzero jet");
                j.truncate(precision);
                j
            })
            .collect();
        Self {
            n,
            precision,
            qints,
        }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn precision(&self) -> usize {
        self.precision
    }

    pub fn max(&self) -> u32 {
        self.qints.len() as u32 - 1
    }

    /// Jet of `[k]`; `k` must not exceed [`JetTable::max`].
    pub fn qint(&self, k: u32) -> &RootJet {
        &self.qints[k as usize]
    }

    fn truncate(&self, mut j: RootJet) -> RootJet {
        j.truncate(self.precision);
        j
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qarith::{jet_eval, zeta};

    #[test]
    fn multiple_of_n_has_simple_zero() {
        for n in [3u32, 5, 7, 21] {
            let t = JetTable::new(n, 3, 8 * n);
            for m in 1..=8 {
                assert_eq!(t.qint(m * n).valuation(), Some(1));
            }
            for k in 1..8 * n {
                if k % n != 0 {
                    assert_eq!(t.qint(k).valuation(), Some(0));
                }
            }
        }
    }

    #[test]
    fn monomial_jet_matches_polynomial_jet() {
        let m = QMonomial::theta(3, 5, 5)
            .unwrap()
            .mul(&QMonomial::halftwist(4, Sign::Minus));
        let f = m.to_ratfun();
        for n in [3u32, 5, 7] {
            let table = JetTable::new(n, 4, m.max_index());
            let a = m.jet(&table).unwrap();
            let b = jet_eval(&f, n, 8).unwrap();
            assert_eq!(a.valuation(), b.valuation());
            let va = a.coeffs()[0];
            let vb = b.coeffs()[0];
            assert!((va - vb).norm() < 1e-9 * vb.norm(), "N = {n}: {va} vs {vb}");
        }
    }

    #[test]
    fn factored_sum_matches_ratfun_sum() {
        let x = QMonomial::theta(3, 3, 3).unwrap();
        let y = QMonomial::fusion(2, 2, 3).unwrap();
        let s = QSum::from_terms(vec![x.clone(), y.clone()]);
        assert_eq!(s.to_ratfun(), x.to_ratfun() + y.to_ratfun());
        let v = s.to_ratfun().eval(zeta(7)).unwrap();
        let w = x.to_ratfun().eval(zeta(7)).unwrap() + y.to_ratfun().eval(zeta(7)).unwrap();
        assert!((v - w).norm() < 1e-9);
    }
}

#[cfg(test)]
mod root_identities {
    use super::*;
    use crate::qsymbols::sixj_n;

    #[test]
    fn theta_and_tet_normalize_at_root() {
        for n in (3u32..=31).step_by(2) {
            let unknot = QMonomial::unknot(n);
            let theta = QMonomial::theta(n, n, n).unwrap();
            let tet = QSum::tet(&TetLabels::uniform(n).unwrap());
            let table = JetTable::new(n, 2, tet.max_index().max(n));
            let u = unknot.jet(&table).unwrap();
            let r = theta.jet(&table).unwrap().div(&u).unwrap().value().unwrap();
            assert!((r - 1.0).norm() < 1e-9, "theta N = {n}: {r}");
            let t = tet.jet(&table).unwrap().div(&u).unwrap().value().unwrap();
            let s = sixj_n(n).unwrap();
            assert!((t - s).norm() < 1e-9 * s, "tet N = {n}: {t} vs {s}");
        }
    }
}
