use std::fmt;

use num_traits::{One, Signed, Zero};

use super::laurent::{BigRational, LaurentPoly};
use crate::error::{Error, Result};

/// Reduced rational function `num/den` in `v`.
///
/// Canonical form: `num` and `den` share no polynomial factor, all v-power
/// content sits in `num` (so `den` has lowest exponent 0), and the leading
/// coefficient of `den` is 1. Equality of canonical forms is equality in
/// `Q(v)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RatFun {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFun {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self {
                num: LaurentPoly::zero(),
                den: LaurentPoly::one(),
            });
        }
        let g = LaurentPoly::gcd(&num, &den);
        let num = num.div_exact(&g).expect("gcd divides numerator");
        let den = den.div_exact(&g).expect("gcd divides denominator");
        // move v-power content into num, make den monic
        let shift = den.min_exp().unwrap();
        let num = num.shift(-shift);
        let den = den.shift(-shift);
        let lead = den.coeff(den.max_exp().unwrap());
        Ok(Self {
            num: num.scale(&lead.recip()),
            den: den.scale(&lead.recip()),
        })
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn zero() -> Self {
        Self::from_poly(LaurentPoly::zero())
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_i64(c: i64) -> Self {
        Self::from_poly(LaurentPoly::from_i64(c))
    }

    pub fn from_rational(c: BigRational) -> Self {
        Self::from_poly(LaurentPoly::constant(c))
    }

    pub fn v_pow(e: i64) -> Self {
        Self::from_poly(LaurentPoly::v_pow(e))
    }

    pub fn q_pow(k: i64) -> Self {
        Self::from_poly(LaurentPoly::q_pow(k))
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num == LaurentPoly::one() && self.den == LaurentPoly::one()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// A monomial is `c*v^k` over denominator 1.
    pub fn as_monomial(&self) -> Option<(i64, BigRational)> {
        if self.den != LaurentPoly::one() {
            return None;
        }
        let lo = self.num.min_exp()?;
        if lo != self.num.max_exp()? {
            return None;
        }
        Some((lo, self.num.coeff(lo)))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::new(
            self.num
                .mul(&other.den)
                .add(&other.num.mul(&self.den)),
            self.den.mul(&other.den),
        )
        .expect("nonzero denominator")
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Self {
        Self {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("nonzero denominator")
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        if other.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Self::new(self.num.mul(&other.den), self.den.mul(&other.num))
    }

    pub fn recip(&self) -> Result<Self> {
        Self::one().div(self)
    }

    pub fn scale_rational(&self, c: &BigRational) -> Self {
        Self::new(self.num.scale(c), self.den.clone()).expect("nonzero denominator")
    }

    pub fn pow(&self, e: i64) -> Result<Self> {
        if e == 0 {
            return Ok(Self::one());
        }
        let base = if e < 0 { self.recip()? } else { self.clone() };
        let mut acc = Self::one();
        for _ in 0..e.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Ok(acc)
    }

    /// Exact evaluation at `v = v0`, excluding `v0 ∈ {0, ±1}` (q must stay
    /// generic) and poles.
    pub fn eval(&self, v0: &BigRational) -> Result<BigRational> {
        if v0.is_zero() || v0.abs().is_one() {
            return Err(Error::ExcludedPoint(v0.to_string()));
        }
        let den = self.den.eval(v0)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint(v0.to_string()));
        }
        Ok(self.num.eval(v0)? / den)
    }

    /// Evaluate a monomial `c*v^k` at `v0` without the generic-q exclusion
    /// (used by plain power evaluation in tests).
    pub fn eval_unchecked(&self, v0: &BigRational) -> Result<BigRational> {
        let den = self.den.eval(v0)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint(v0.to_string()));
        }
        Ok(self.num.eval(v0)? / den)
    }
}

impl fmt::Display for RatFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == LaurentPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::qint;
    use num_bigint::BigInt;

    fn rf(p: LaurentPoly) -> RatFun {
        RatFun::from_poly(p)
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn self_division_is_one() {
        // (q - q^-1)/(q - q^-1) = 1
        let p = rf(LaurentPoly::q_pow(1).sub(&LaurentPoly::q_pow(-1)));
        assert!(p.div(&p).unwrap().is_one());
    }

    #[test]
    fn quotient_of_q_differences_is_q_integer() {
        // (q^2 - q^-2)/(q - q^-1) = [2]
        let a = rf(LaurentPoly::q_pow(2).sub(&LaurentPoly::q_pow(-2)));
        let b = rf(LaurentPoly::q_pow(1).sub(&LaurentPoly::q_pow(-1)));
        assert_eq!(a.div(&b).unwrap(), rf(qint(2)));
    }

    #[test]
    fn half_power_inverse() {
        // 1/q^{1/2} = v^{-1}
        let r = RatFun::one().div(&RatFun::v_pow(1)).unwrap();
        assert_eq!(r, RatFun::v_pow(-1));
    }

    #[test]
    fn canonical_form_is_normal_form() {
        // a - b == 0 iff a == b, over a few nontrivial combinations
        let a = rf(qint(3)).div(&rf(qint(2))).unwrap();
        let b = rf(qint(3).mul(&qint(5))).div(&rf(qint(2).mul(&qint(5)))).unwrap();
        assert_eq!(a, b);
        assert!(a.sub(&b).is_zero());
    }

    #[test]
    fn evaluate_qint_at_point() {
        // [2] at v0=2 (q=4): 4 + 1/4
        assert_eq!(rf(qint(2)).eval(&rat(2, 1)).unwrap(), rat(17, 4));
        assert_eq!(RatFun::v_pow(1).eval(&rat(3, 1)).unwrap(), rat(3, 1));
    }

    #[test]
    fn excluded_points_and_poles() {
        let denom = rf(LaurentPoly::q_pow(1).sub(&LaurentPoly::one()));
        let x = RatFun::one().div(&denom).unwrap();
        assert!(matches!(x.eval(&rat(1, 1)), Err(Error::ExcludedPoint(_))));
        assert!(matches!(x.eval(&rat(0, 1)), Err(Error::ExcludedPoint(_))));
        // pole: 1/(q - 4) at v0 = 2
        let denom = rf(LaurentPoly::q_pow(1).sub(&LaurentPoly::from_i64(4)));
        let x = RatFun::one().div(&denom).unwrap();
        assert!(matches!(x.eval(&rat(2, 1)), Err(Error::PoleAtPoint(_))));
    }
}
