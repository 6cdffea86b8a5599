use num_bigint::BigInt;
use num_traits::One;

use super::laurent::BigRational;
use super::ratfun::RatFun;
use crate::error::{Error, Result};

/// Truncated one-variable Laurent series over [`RatFun`].
///
/// Stores exact coefficients for exponents `base .. base + len - 1`; nothing
/// is known (or reported) beyond that bound. Arithmetic propagates the bound
/// conservatively: a result never claims coefficients that were not fully
/// determined by its inputs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncSeries {
    base: i64,
    coeffs: Vec<RatFun>,
}

impl TruncSeries {
    pub fn new(base: i64, coeffs: Vec<RatFun>) -> Self {
        Self { base, coeffs }
    }

    /// Zero series valid through exponent `base + order`.
    pub fn zero(base: i64, order: usize) -> Self {
        Self::new(base, vec![RatFun::zero(); order + 1])
    }

    /// Constant 1, valid through exponent `order`.
    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(0, order);
        s.coeffs[0] = RatFun::one();
        s
    }

    /// `c * z^exp`, valid through `exp + order`.
    pub fn monomial(exp: i64, c: RatFun, order: usize) -> Self {
        let mut s = Self::zero(exp, order);
        s.coeffs[0] = c;
        s
    }

    /// Build from polynomial coefficients `(exp, coeff)`, valid through
    /// `order` (absolute exponent).
    pub fn from_terms(terms: &[(i64, RatFun)], order: i64) -> Self {
        let base = terms.iter().map(|(e, _)| *e).min().unwrap_or(0).min(0);
        let mut s = Self::zero(base, (order - base).max(0) as usize);
        for (e, c) in terms {
            if *e <= order {
                let i = (e - base) as usize;
                s.coeffs[i] = s.coeffs[i].add(c);
            }
        }
        s
    }

    pub fn base(&self) -> i64 {
        self.base
    }

    /// Largest exponent with a known coefficient.
    pub fn valid_to(&self) -> i64 {
        self.base + self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `z^exp`; `None` outside the validity window.
    pub fn coeff(&self, exp: i64) -> Option<RatFun> {
        if exp < self.base {
            return Some(RatFun::zero());
        }
        if exp > self.valid_to() {
            return None;
        }
        Some(self.coeffs[(exp - self.base) as usize].clone())
    }

    /// Coefficient of `z^exp`, panicking outside the window.
    pub fn coeff_checked(&self, exp: i64) -> RatFun {
        self.coeff(exp)
            .unwrap_or_else(|| panic!("coefficient z^{exp} beyond validity bound {}", self.valid_to()))
    }

    pub fn truncate_to(&self, valid_to: i64) -> Self {
        let keep = ((valid_to - self.base + 1).max(0) as usize).min(self.coeffs.len());
        Self::new(self.base, self.coeffs[..keep].to_vec())
    }

    pub fn add(&self, other: &Self) -> Self {
        let base = self.base.min(other.base);
        let valid_to = self.valid_to().min(other.valid_to());
        let mut out = Self::zero(base, (valid_to - base).max(0) as usize);
        for e in base..=valid_to {
            let a = self.coeff(e).unwrap();
            let b = other.coeff(e).unwrap();
            out.coeffs[(e - base) as usize] = a.add(&b);
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self::new(self.base, self.coeffs.iter().map(RatFun::neg).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        Self::new(self.base, self.coeffs.iter().map(|x| x.mul(c)).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self::new(self.base + k, self.coeffs.clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let base = self.base + other.base;
        let valid_to = (self.valid_to() + other.base).min(other.valid_to() + self.base);
        let n = (valid_to - base + 1).max(0) as usize;
        let mut out = Self::zero(base, n.saturating_sub(1));
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j < n && !b.is_zero() {
                    let k = i + j;
                    out.coeffs[k] = out.coeffs[k].add(&a.mul(b));
                }
            }
        }
        out
    }

    /// Multiplicative inverse; requires a nonzero coefficient at `base`.
    pub fn invert(&self) -> Result<Self> {
        let lead = self
            .coeffs
            .first()
            .cloned()
            .ok_or(Error::NonInvertibleSeries)?;
        if lead.is_zero() {
            return Err(Error::NonInvertibleSeries);
        }
        let lead_inv = lead.recip()?;
        let n = self.coeffs.len();
        let mut inv = vec![RatFun::zero(); n];
        inv[0] = lead_inv.clone();
        for k in 1..n {
            let mut acc = RatFun::zero();
            for j in 1..=k {
                acc = acc.add(&self.coeffs[j].mul(&inv[k - j]));
            }
            inv[k] = acc.neg().mul(&lead_inv);
        }
        Ok(Self::new(-self.base, inv))
    }

    /// Substitute `z -> alpha * z` for a monomial `alpha`.
    pub fn compose_scale(&self, alpha: &RatFun) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let e = self.base + i as i64;
                c.mul(&alpha.pow(e).expect("monomial power"))
            })
            .collect();
        Self::new(self.base, coeffs)
    }

    /// `exp` of a series with no constant (or negative-exponent) term.
    pub fn exp_of(&self) -> Result<Self> {
        if self.base < 1 && self.coeffs.iter().enumerate().any(|(i, c)| {
            self.base + (i as i64) < 1 && !c.is_zero()
        }) {
            return Err(Error::ExpWithConstantTerm);
        }
        if self.base < 0 {
            // all low coefficients are zero; renormalize window
            return self.truncated_nonneg().exp_of();
        }
        let valid_to = self.valid_to();
        let n = (valid_to + 1).max(1) as usize;
        // s as dense over exponents 0..n
        let mut s = vec![RatFun::zero(); n];
        for (i, c) in self.coeffs.iter().enumerate() {
            let e = self.base + i as i64;
            if (0..n as i64).contains(&e) {
                s[e as usize] = c.clone();
            }
        }
        // f' = s' f termwise: k f_k = sum_{j=1..k} j s_j f_{k-j}
        let mut f = vec![RatFun::zero(); n];
        f[0] = RatFun::one();
        for k in 1..n {
            let mut acc = RatFun::zero();
            for j in 1..=k {
                let js = s[j].scale_rational(&BigRational::from_integer(BigInt::from(j)));
                acc = acc.add(&js.mul(&f[k - j]));
            }
            f[k] = acc.scale_rational(&BigRational::new(BigInt::one(), BigInt::from(k)));
        }
        Ok(Self::new(0, f))
    }

    fn truncated_nonneg(&self) -> Self {
        let valid_to = self.valid_to();
        let mut out = Self::zero(1, (valid_to - 1).max(0) as usize);
        for e in 1..=valid_to {
            out.coeffs[(e - 1) as usize] = self.coeff(e).unwrap();
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(RatFun::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn geom(order: usize) -> TruncSeries {
        // 1/(1-z)
        let one_minus_z = TruncSeries::from_terms(
            &[(0, RatFun::one()), (1, RatFun::from_i64(-1))],
            order as i64,
        );
        one_minus_z.invert().unwrap()
    }

    #[test]
    fn exp_of_z() {
        let z = TruncSeries::monomial(1, RatFun::one(), 2);
        let e = z.exp_of().unwrap();
        assert_eq!(e.coeff_checked(0), RatFun::one());
        assert_eq!(e.coeff_checked(1), RatFun::one());
        assert_eq!(
            e.coeff_checked(2),
            RatFun::from_rational(BigRational::new(BigInt::one(), BigInt::from(2)))
        );
        assert_eq!(
            e.coeff_checked(3),
            RatFun::from_rational(BigRational::new(BigInt::one(), BigInt::from(6)))
        );
    }

    #[test]
    fn invert_one_minus_z() {
        let g = geom(3);
        for k in 0..=3 {
            assert_eq!(g.coeff_checked(k), RatFun::one(), "z^{k}");
        }
    }

    #[test]
    fn compose_scale_q() {
        let s = TruncSeries::from_terms(&[(0, RatFun::one()), (1, RatFun::one())], 1);
        let t = s.compose_scale(&RatFun::q_pow(1));
        assert_eq!(t.coeff_checked(0), RatFun::one());
        assert_eq!(t.coeff_checked(1), RatFun::q_pow(1));
    }

    #[test]
    fn exp_rejects_constant_term() {
        let s = TruncSeries::from_terms(&[(0, RatFun::one())], 3);
        assert!(matches!(s.exp_of(), Err(Error::ExpWithConstantTerm)));
    }

    #[test]
    fn invert_rejects_zero_leading() {
        let s = TruncSeries::new(0, vec![RatFun::zero(), RatFun::one()]);
        assert!(matches!(s.invert(), Err(Error::NonInvertibleSeries)));
    }

    #[test]
    fn validity_bound_propagates_through_mul() {
        let a = TruncSeries::zero(0, 5);
        let b = TruncSeries::zero(2, 3);
        let c = a.mul(&b);
        assert_eq!(c.base(), 2);
        // min(5 + 2, 5 + 0) = 5
        assert_eq!(c.valid_to(), 5);
        assert!(c.coeff(6).is_none());
    }
}
