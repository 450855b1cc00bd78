//! Quotients of [`TwistLaurent`] elements.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{QArithError, TwistLaurent};

/// A quotient `num / den` with `den` nonzero and `h`-free.
///
/// Normal form: the denominator has lowest exponent zero and leading
/// coefficient one, and whenever the denominator divides the numerator
/// exactly the quotient is stored with denominator one. No polynomial gcd
/// is taken beyond that, so equality is decided by cross-multiplication.
#[derive(Clone, Debug)]
pub struct RatFun {
    num: TwistLaurent,
    den: TwistLaurent,
}

impl RatFun {
    pub fn new(num: TwistLaurent, den: TwistLaurent) -> Result<Self, QArithError> {
        if den.is_zero() {
            return Err(QArithError::DivisionByZero);
        }
        Ok(Self::normalized(num, den))
    }

    pub fn from_poly(p: TwistLaurent) -> Self {
        Self {
            num: p,
            den: TwistLaurent::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(TwistLaurent::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(TwistLaurent::one())
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(TwistLaurent::from_int(c))
    }

    fn normalized(mut num: TwistLaurent, mut den: TwistLaurent) -> Self {
        if !den.is_h_free() {
            let c = den.conj_h();
            num = &num * &c;
            den = &den * &c;
        }
        if num.is_zero() {
            return Self::zero();
        }
        let (low, high) = den.exponent_range().expect("nonzero denominator");
        let lead = den
            .terms()
            .into_iter()
            .find(|(_, e, _)| *e == high)
            .map(|(_, _, c)| c)
            .unwrap();
        let inv = BigRational::one() / lead;
        num = num.shift_half(-low).scale(&inv);
        den = den.shift_half(-low).scale(&inv);
        if !den.is_one() {
            if let Some(q) = num.div_exact(&den) {
                return Self::from_poly(q);
            }
        }
        Self { num, den }
    }

    pub fn numerator(&self) -> &TwistLaurent {
        &self.num
    }

    pub fn denominator(&self) -> &TwistLaurent {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The polynomial, when the denominator is trivial.
    pub fn as_poly(&self) -> Option<&TwistLaurent> {
        self.den.is_one().then_some(&self.num)
    }

    pub fn inv(&self) -> Result<Self, QArithError> {
        Self::new(self.den.clone(), self.num.clone())
    }

    pub fn checked_div(&self, rhs: &RatFun) -> Result<Self, QArithError> {
        if rhs.is_zero() {
            return Err(QArithError::DivisionByZero);
        }
        Ok(Self::normalized(&self.num * &rhs.den, &self.den * &rhs.num))
    }

    pub fn pow(&self, k: i32) -> Result<Self, QArithError> {
        if k >= 0 {
            Ok(Self::normalized(self.num.pow(k as u32), self.den.pow(k as u32)))
        } else {
            self.inv()?.pow(-k)
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::normalized(self.num.scale(c), self.den.clone())
    }

    /// Numeric value at `A^{1/2} = a_half`.
    pub fn eval_half(&self, a_half: Complex64) -> Result<Complex64, QArithError> {
        let d = self.den.eval_half(a_half);
        let n = self.num.eval_half(a_half);
        let scale = self
            .den
            .terms()
            .iter()
            .map(|(_, e, c)| {
                num_traits::ToPrimitive::to_f64(c).unwrap_or(0.0).abs()
                    * a_half.norm().powi(*e as i32)
            })
            .fold(0.0, f64::max);
        if d.norm() <= 1e-12 * scale.max(1e-300) {
            return Err(QArithError::PoleAtPoint);
        }
        Ok(n / d)
    }

    /// Numeric value at `A`, with `A^{1/2}` on the principal branch.
    pub fn eval(&self, a: Complex64) -> Result<Complex64, QArithError> {
        self.eval_half(a.sqrt())
    }
}

impl PartialEq for RatFun {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl From<TwistLaurent> for RatFun {
    fn from(p: TwistLaurent) -> Self {
        Self::from_poly(p)
    }
}

impl Add<&RatFun> for &RatFun {
    type Output = RatFun;
    fn add(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            return RatFun::normalized(&self.num + &rhs.num, self.den.clone());
        }
        if let Some(k) = rhs.den.div_exact(&self.den) {
            return RatFun::normalized(&(&self.num * &k) + &rhs.num, rhs.den.clone());
        }
        if let Some(k) = self.den.div_exact(&rhs.den) {
            return RatFun::normalized(&self.num + &(&rhs.num * &k), self.den.clone());
        }
        RatFun::normalized(
            &(&self.num * &rhs.den) + &(&rhs.num * &self.den),
            &self.den * &rhs.den,
        )
    }
}

impl Neg for &RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        RatFun {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub<&RatFun> for &RatFun {
    type Output = RatFun;
    fn sub(self, rhs: &RatFun) -> RatFun {
        self + &(-rhs)
    }
}

impl Mul<&RatFun> for &RatFun {
    type Output = RatFun;
    fn mul(self, rhs: &RatFun) -> RatFun {
        if self.is_zero() || rhs.is_zero() {
            return RatFun::zero();
        }
        RatFun::normalized(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr<RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: RatFun) -> RatFun {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFun> for RatFun {
            type Output = RatFun;
            fn $m(self, rhs: &RatFun) -> RatFun {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for RatFun {
    type Output = RatFun;
    fn neg(self) -> RatFun {
        -&self
    }
}

impl Zero for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(k: i64) -> TwistLaurent {
        TwistLaurent::a_pow(k)
    }

    fn rf(n: TwistLaurent, d: TwistLaurent) -> RatFun {
        RatFun::new(n, d).unwrap()
    }

    #[test]
    fn inverse_pair_multiplies_to_one() {
        let x = a(3) + TwistLaurent::one();
        let y = a(1) - a(-5);
        let p = rf(x.clone(), y.clone()) * rf(y, x);
        assert_eq!(p, RatFun::one());
        assert_eq!(p.as_poly(), Some(&TwistLaurent::one()));
    }

    #[test]
    fn additive_identity() {
        let x = rf(a(2), a(1) + TwistLaurent::one());
        assert_eq!(&x + &RatFun::zero(), x);
    }

    #[test]
    fn cancellation_to_trivial_denominator() {
        let q = rf(a(4) - a(-4), a(2) - a(-2));
        assert_eq!(q.as_poly(), Some(&(a(2) + a(-2))));
    }

    #[test]
    fn division_by_zero_is_reported() {
        assert_eq!(
            RatFun::new(a(1), TwistLaurent::zero()).unwrap_err(),
            QArithError::DivisionByZero
        );
        assert_eq!(
            RatFun::one().checked_div(&RatFun::zero()).unwrap_err(),
            QArithError::DivisionByZero
        );
    }

    #[test]
    fn h_in_denominator_is_cleared() {
        let h = RatFun::from_poly(TwistLaurent::h());
        let inv = h.inv().unwrap();
        assert!(inv.denominator().is_h_free());
        assert_eq!(&inv * &h, RatFun::one());
        let mixed = RatFun::from_poly(TwistLaurent::h() + a(1));
        let back = mixed.inv().unwrap() * mixed;
        assert_eq!(back, RatFun::one());
    }

    #[test]
    fn pole_is_detected() {
        let f = rf(a(1), a(2) - a(-2));
        let one = Complex64::new(1.0, 0.0);
        assert_eq!(f.eval(one).unwrap_err(), QArithError::PoleAtPoint);
    }

    #[test]
    fn quantum_integer_classical_limit() {
        for n in 1..8 {
            let f = rf(a(2 * n) - a(-2 * n), a(2) - a(-2));
            let v = f.eval(Complex64::new(1.0, 0.0)).unwrap();
            assert!((v.re - n as f64).abs() < 1e-12);
        }
    }
}
