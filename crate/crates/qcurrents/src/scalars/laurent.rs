use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always stored with positive denominator and
/// gcd-reduced (guaranteed by `num_rational`).
pub type BigRational = num_rational::BigRational;

/// Sparse Laurent polynomial in `v`, with `q = v^2`.
///
/// Zero coefficients are never stored; a polynomial in `q` is supported on
/// even exponents only.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::monomial(0, c)
    }

    pub fn from_i64(c: i64) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)))
    }

    /// `c * v^exp`.
    pub fn monomial(exp: i64, c: BigRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// `v^exp`; `q^k` is `v_pow(2k)`.
    pub fn v_pow(exp: i64) -> Self {
        Self::monomial(exp, BigRational::one())
    }

    pub fn q_pow(k: i64) -> Self {
        Self::v_pow(2 * k)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exp: i64) -> BigRational {
        self.coeffs.get(&exp).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigRational)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    fn insert_add(coeffs: &mut BTreeMap<i64, BigRational>, exp: i64, c: &BigRational) {
        if c.is_zero() {
            return;
        }
        let entry = coeffs.entry(exp).or_insert_with(BigRational::zero);
        *entry += c;
        if entry.is_zero() {
            coeffs.remove(&exp);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut coeffs = self.coeffs.clone();
        for (e, c) in &other.coeffs {
            Self::insert_add(&mut coeffs, *e, c);
        }
        Self { coeffs }
    }

    pub fn neg(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut coeffs = BTreeMap::new();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &other.coeffs {
                Self::insert_add(&mut coeffs, e1 + e2, &(c1 * c2));
            }
        }
        Self { coeffs }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, k)| (*e, k * c)).collect(),
        }
    }

    /// Multiply by `v^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = acc.mul(self);
        }
        acc
    }

    /// Exact evaluation at `v = v0`; `v0` must be nonzero if negative
    /// exponents are present.
    pub fn eval(&self, v0: &BigRational) -> Result<BigRational> {
        if v0.is_zero() && self.min_exp().map_or(false, |e| e < 0) {
            return Err(Error::DivisionByZero);
        }
        let mut acc = BigRational::zero();
        for (e, c) in &self.coeffs {
            acc += c * rat_pow(v0, *e)?;
        }
        Ok(acc)
    }

    /// Exact division; `None` if the remainder is nonzero.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        // Divide as ordinary polynomials after stripping v-power content.
        let (mut rem, r_shift) = self.as_dense();
        let (den, d_shift) = d.as_dense();
        if rem.len() < den.len() {
            return None;
        }
        let dlead = den.last().unwrap().clone();
        let mut quot = vec![BigRational::zero(); rem.len() - den.len() + 1];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + den.len() - 1] / &dlead;
            if !c.is_zero() {
                for (j, dc) in den.iter().enumerate() {
                    let r = &rem[k + j] - &c * dc;
                    rem[k + j] = r;
                }
            }
            quot[k] = c;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(&quot, r_shift - d_shift))
    }

    /// Dense coefficient vector (ascending) together with the v-exponent of
    /// the first entry.
    fn as_dense(&self) -> (Vec<BigRational>, i64) {
        let lo = self.min_exp().unwrap_or(0);
        let hi = self.max_exp().unwrap_or(0);
        let mut out = vec![BigRational::zero(); (hi - lo + 1) as usize];
        for (e, c) in &self.coeffs {
            out[(e - lo) as usize] = c.clone();
        }
        (out, lo)
    }

    fn from_dense(v: &[BigRational], shift: i64) -> Self {
        let mut coeffs = BTreeMap::new();
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                coeffs.insert(shift + i as i64, c.clone());
            }
        }
        Self { coeffs }
    }

    /// Primitive integer coefficient vector (ascending, content removed,
    /// positive leading sign not enforced).
    fn primitive_int(&self) -> Vec<BigInt> {
        let (dense, _) = self.as_dense();
        let mut den_lcm = BigInt::one();
        for c in &dense {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let ints: Vec<BigInt> = dense.iter().map(|c| c.numer() * &den_lcm / c.denom()).collect();
        let mut content = BigInt::zero();
        for c in &ints {
            content = num_integer::gcd(content, c.clone());
        }
        if content.is_zero() {
            return ints;
        }
        ints.iter().map(|c| c / &content).collect()
    }

    /// Polynomial gcd via content-stripped integer arithmetic (primitive
    /// pseudo-remainder sequence), returned with min exponent 0 and leading
    /// coefficient 1.
    pub fn gcd(a: &Self, b: &Self) -> Self {
        if a.is_zero() {
            return b.normalized_monic();
        }
        if b.is_zero() {
            return a.normalized_monic();
        }
        let mut r0 = a.primitive_int();
        let mut r1 = b.primitive_int();
        trim(&mut r0);
        trim(&mut r1);
        if r0.len() < r1.len() {
            std::mem::swap(&mut r0, &mut r1);
        }
        while !r1.is_empty() {
            let r2 = pseudo_rem_primitive(&r0, &r1);
            r0 = r1;
            r1 = r2;
        }
        let rat: Vec<BigRational> = r0.into_iter().map(BigRational::from_integer).collect();
        Self::from_dense(&rat, 0).normalized_monic()
    }

    /// Scale so the highest-exponent coefficient is 1 and shift so the lowest
    /// exponent is 0.
    fn normalized_monic(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let lead = self.coeff(self.max_exp().unwrap());
        self.shift(-self.min_exp().unwrap()).scale(&lead.recip())
    }
}

fn trim(v: &mut Vec<BigInt>) {
    while v.last().map_or(false, |c| c.is_zero()) {
        v.pop();
    }
}

/// Primitive part of the pseudo-remainder of `a` by `b` (both nonempty,
/// deg a >= deg b).
fn pseudo_rem_primitive(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut rem: Vec<BigInt> = a.to_vec();
    let db = b.len() - 1;
    let lead_b = b.last().unwrap().clone();
    while rem.len() >= b.len() && !rem.is_empty() {
        let da = rem.len() - 1;
        let lead_a = rem.last().unwrap().clone();
        for c in rem.iter_mut() {
            *c *= &lead_b;
        }
        for j in 0..=db {
            rem[da - db + j] -= &lead_a * &b[j];
        }
        trim(&mut rem);
    }
    // strip content
    let mut content = BigInt::zero();
    for c in &rem {
        content = num_integer::gcd(content, c.clone());
    }
    if content.is_zero() {
        return Vec::new();
    }
    rem.iter().map(|c| c / &content).collect()
}

pub(crate) fn rat_pow(x: &BigRational, e: i64) -> Result<BigRational> {
    if e == 0 {
        return Ok(BigRational::one());
    }
    if x.is_zero() && e < 0 {
        return Err(Error::DivisionByZero);
    }
    let p = x.pow(i32::try_from(e.unsigned_abs()).expect("exponent fits in i32"));
    Ok(if e < 0 { p.recip() } else { p })
}

/// The q-integer `[n] = (q^n - q^{-n})/(q - q^{-1}) = q^{n-1} + q^{n-3} + ... + q^{-n+1}`.
pub fn qint(n: i64) -> LaurentPoly {
    let mut p = LaurentPoly::zero();
    let a = n.abs();
    let mut e = a - 1;
    while e >= -(a - 1) && a > 0 {
        p = p.add(&LaurentPoly::q_pow(e));
        e -= 2;
    }
    if n < 0 {
        p = p.neg();
    }
    p
}

/// `[n]! = [1][2]...[n]`.
pub fn qfactorial(n: i64) -> Result<LaurentPoly> {
    if n < 0 {
        return Err(Error::NegativeArgument(format!("qfactorial({n})")));
    }
    let mut p = LaurentPoly::one();
    for i in 1..=n {
        p = p.mul(&qint(i));
    }
    Ok(p)
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let mag = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
                first = false;
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let unit_coeff = mag.is_one() && *e != 0;
            if !unit_coeff {
                write!(f, "{mag}")?;
            }
            match e {
                0 => {}
                1 => {
                    if !unit_coeff {
                        write!(f, "*")?;
                    }
                    write!(f, "v")?;
                }
                _ => {
                    if !unit_coeff {
                        write!(f, "*")?;
                    }
                    write!(f, "v^{e}")?;
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn qint_small_values() {
        assert!(qint(0).is_zero());
        assert_eq!(qint(1), LaurentPoly::one());
        assert_eq!(qint(2), LaurentPoly::q_pow(1).add(&LaurentPoly::q_pow(-1)));
        // [-3] = -(q^2 + 1 + q^-2)
        let expect = LaurentPoly::q_pow(2)
            .add(&LaurentPoly::one())
            .add(&LaurentPoly::q_pow(-2))
            .neg();
        assert_eq!(qint(-3), expect);
    }

    #[test]
    fn qint_is_odd_in_n() {
        for n in -30..=30 {
            assert_eq!(qint(-n), qint(n).neg());
        }
    }

    #[test]
    fn qint_defining_identity_as_polynomials() {
        // [n]*(q - q^-1) = q^n - q^-n, exactly, for |n| <= 30
        let qmqi = LaurentPoly::q_pow(1).sub(&LaurentPoly::q_pow(-1));
        for n in -30..=30i64 {
            let lhs = qint(n).mul(&qmqi);
            let rhs = LaurentPoly::q_pow(n).sub(&LaurentPoly::q_pow(-n));
            assert_eq!(lhs, rhs, "n = {n}");
        }
    }

    #[test]
    fn qfactorial_values() {
        assert_eq!(qfactorial(0).unwrap(), LaurentPoly::one());
        assert_eq!(qfactorial(2).unwrap(), qint(2));
        assert_eq!(qfactorial(3).unwrap(), qint(2).mul(&qint(3)));
        assert!(qfactorial(-1).is_err());
    }

    #[test]
    fn div_exact_roundtrip() {
        let a = qint(5).mul(&qint(3)).shift(-4);
        let b = qint(3).shift(2);
        let q = a.div_exact(&b).unwrap();
        assert_eq!(q.mul(&b), a);
        // non-exact division
        assert!(qint(2).div_exact(&qint(3).add(&LaurentPoly::one())).is_none());
    }

    #[test]
    fn gcd_of_q_integers() {
        // [2] divides [4]: [4] = [2](q^2 + q^-2)
        let g = LaurentPoly::gcd(&qint(4), &qint(2));
        assert!(qint(4).div_exact(&g).is_some());
        assert!(qint(2).div_exact(&g).is_some());
        // and the gcd is [2] up to normalization
        assert_eq!(g.as_dense().0.len(), qint(2).as_dense().0.len());
    }

    #[test]
    fn eval_monomials() {
        let p = LaurentPoly::v_pow(1);
        assert_eq!(p.eval(&rat(3, 1)).unwrap(), rat(3, 1));
        let q2 = qint(2);
        // q + 1/q at v=2 (q=4): 4 + 1/4
        assert_eq!(q2.eval(&rat(2, 1)).unwrap(), rat(17, 4));
    }
}
