use num_traits::{One, Signed, Zero};

use super::laurent::{qint, BigRational, LaurentPoly};
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// Scalar construction mode.
///
/// `Symbolic` builds genuine elements of `Q(v)`; `Numeric` substitutes a
/// fixed rational `v0` at the leaves, so every downstream coefficient is a
/// constant and identity checks become fast exact-rational pre-checks. Both
/// modes are exact; no floating point anywhere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ScalarCtx {
    Symbolic,
    Numeric(BigRational),
}

impl ScalarCtx {
    pub fn numeric(v0: BigRational) -> Result<Self> {
        if v0.is_zero() || v0.abs().is_one() {
            return Err(Error::ExcludedPoint(v0.to_string()));
        }
        Ok(Self::Numeric(v0))
    }

    /// `v^e` (i.e. `q^{e/2}`).
    pub fn v_pow(&self, e: i64) -> RatFun {
        match self {
            Self::Symbolic => RatFun::v_pow(e),
            Self::Numeric(v0) => {
                let p = super::laurent::LaurentPoly::v_pow(e);
                RatFun::from_rational(p.eval(v0).expect("v0 nonzero"))
            }
        }
    }

    /// `q^k`.
    pub fn q_pow(&self, k: i64) -> RatFun {
        self.v_pow(2 * k)
    }

    /// The q-integer `[n]`.
    pub fn qint(&self, n: i64) -> RatFun {
        self.eval_poly(&qint(n))
    }

    /// `[n]!`.
    pub fn qfactorial(&self, n: i64) -> Result<RatFun> {
        Ok(self.eval_poly(&super::laurent::qfactorial(n)?))
    }

    /// `q - q^{-1}`.
    pub fn q_minus_qinv(&self) -> RatFun {
        self.q_pow(1).sub(&self.q_pow(-1))
    }

    pub fn eval_poly(&self, p: &LaurentPoly) -> RatFun {
        match self {
            Self::Symbolic => RatFun::from_poly(p.clone()),
            Self::Numeric(v0) => RatFun::from_rational(p.eval(v0).expect("v0 nonzero")),
        }
    }

    pub fn rational(&self, num: i64, den: i64) -> RatFun {
        RatFun::from_rational(BigRational::new(num.into(), den.into()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn numeric_mode_excludes_degenerate_points() {
        for bad in [0i64, 1, -1] {
            let v0 = BigRational::from_integer(BigInt::from(bad));
            assert!(ScalarCtx::numeric(v0).is_err());
        }
    }

    #[test]
    fn numeric_qint_matches_symbolic_evaluation() {
        let v0 = BigRational::new(BigInt::from(3), BigInt::from(2));
        let ctx = ScalarCtx::numeric(v0.clone()).unwrap();
        for n in -7..=7 {
            let sym = ScalarCtx::Symbolic.qint(n);
            assert_eq!(ctx.qint(n).eval_unchecked(&v0).unwrap(), sym.eval(&v0).unwrap());
        }
    }
}
