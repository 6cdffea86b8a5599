//! Formal expansions: the exchange kernel `G(z)`, q-analogs of `(1-z)^r`
//! in base `q^2`, region expansions, and formal delta functions.
//!
//! Every kernel that admits two independent computation routes (rational
//! long division vs. exponential formula, Pochhammer quotient vs.
//! exponential formula) exposes both; route agreement is part of the test
//! surface, never assumed.

mod twovar;

pub use twovar::{
    check_delta_identity, delta, delta_zw, qdiff_delta, qdiff_delta_with_norm, region_expand,
    DeltaCheck, Kernel, Region, TwoVarDist, Window,
};

use num_bigint::BigInt;

use crate::scalars::{BigRational, RatFun, ScalarCtx, TruncSeries};

/// Taylor coefficients of the exchange kernel attached to a pairing value
/// `a`: the series at `z = 0` of
/// `((q^a z - 1)/(q^a z + 1)) * ((z + q^a)/(z - q^a))`.
///
/// Satisfies `G(z) G(-z) = 1` and `G_0 = 1`.
#[derive(Clone, Debug)]
pub struct PairingSeries {
    pub pairing: i64,
    pub series: TruncSeries,
}

impl PairingSeries {
    pub fn new(ctx: &ScalarCtx, pairing: i64, order: usize) -> Self {
        Self {
            pairing,
            series: g_series(ctx, pairing, order),
        }
    }
}

/// `G(z)` by exact long division of the defining rational function.
pub fn g_series(ctx: &ScalarCtx, a: i64, order: usize) -> TruncSeries {
    let qa = ctx.q_pow(a);
    let order = order as i64;
    // (q^a z - 1)(z + q^a)
    let num = TruncSeries::from_terms(
        &[
            (0, qa.neg()),
            (1, qa.mul(&qa).sub(&RatFun::one())),
            (2, qa.clone()),
        ],
        order,
    );
    // (q^a z + 1)(z - q^a)
    let den = TruncSeries::from_terms(
        &[
            (0, qa.neg()),
            (1, RatFun::one().sub(&qa.mul(&qa))),
            (2, qa.clone()),
        ],
        order,
    );
    num.mul(&den.invert().expect("den(0) = -q^a nonzero"))
        .truncate_to(order)
}

/// `G(z)` via the exponential form
/// `exp(-sum_{n odd} (2/n)(q^{an} - q^{-an}) z^n)`.
pub fn g_series_exponential(ctx: &ScalarCtx, a: i64, order: usize) -> TruncSeries {
    let mut terms = Vec::new();
    let mut n = 1i64;
    while n <= order as i64 {
        let c = ctx
            .q_pow(a * n)
            .sub(&ctx.q_pow(-a * n))
            .scale_rational(&BigRational::new(BigInt::from(-2), BigInt::from(n)));
        terms.push((n, c));
        n += 2;
    }
    TruncSeries::from_terms(&terms, order as i64)
        .exp_of()
        .expect("no constant term")
}

/// The q-analog `(1-z)^r_{q^2}` via the exponential formula
/// `exp(-sum_{n>=1} [rn]/(n[n]) z^n)`.
pub fn qpow(ctx: &ScalarCtx, r: i64, order: usize) -> TruncSeries {
    let mut terms = Vec::new();
    for n in 1..=order as i64 {
        let c = ctx
            .qint(r * n)
            .div(&ctx.qint(n).scale_rational(&BigRational::from_integer(BigInt::from(n))))
            .expect("[n] nonzero")
            .neg();
        terms.push((n, c));
    }
    TruncSeries::from_terms(&terms, order as i64)
        .exp_of()
        .expect("no constant term")
}

/// `(1-z)^r_{q^2}` via the infinite-Pochhammer quotient
/// `(q^{-r+1} z; q^2)_inf / (q^{r+1} z; q^2)_inf`.
pub fn qpow_pochhammer(ctx: &ScalarCtx, r: i64, order: usize) -> TruncSeries {
    let num = pochhammer_inf(ctx, &ctx.q_pow(-r + 1), order);
    let den = pochhammer_inf(ctx, &ctx.q_pow(r + 1), order);
    num.mul(&den.invert().expect("constant term 1"))
        .truncate_to(order as i64)
}

/// `(a z; q^2)_inf = sum_k (-a)^k q^{k(k-1)} / prod_{j=1..k}(1 - q^{2j}) z^k`
/// (Euler's expansion in base `q^2`).
pub fn pochhammer_inf(ctx: &ScalarCtx, a: &RatFun, order: usize) -> TruncSeries {
    let mut terms = Vec::with_capacity(order + 1);
    let mut num = RatFun::one(); // (-a)^k q^{k(k-1)}
    let mut den = RatFun::one(); // prod (1 - q^{2j})
    terms.push((0, RatFun::one()));
    for k in 1..=order as i64 {
        num = num.mul(&a.neg()).mul(&ctx.q_pow(2 * (k - 1)));
        den = den.mul(&RatFun::one().sub(&ctx.q_pow(2 * k)));
        terms.push((k, num.div(&den).expect("q generic")));
    }
    TruncSeries::from_terms(&terms, order as i64)
}

/// The twisted q-analog `((1-z)/(1+z))^r_{q^2}
/// = exp(-sum_{n odd} 2[rn]/(n[n]) z^n)`.
pub fn twisted_qpow(ctx: &ScalarCtx, r: i64, order: usize) -> TruncSeries {
    let mut terms = Vec::new();
    let mut n = 1i64;
    while n <= order as i64 {
        let c = ctx
            .qint(r * n)
            .scale_rational(&BigRational::from_integer(BigInt::from(2)))
            .div(&ctx.qint(n).scale_rational(&BigRational::from_integer(BigInt::from(n))))
            .expect("[n] nonzero")
            .neg();
        terms.push((n, c));
        n += 2;
    }
    TruncSeries::from_terms(&terms, order as i64)
        .exp_of()
        .expect("no constant term")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym() -> ScalarCtx {
        ScalarCtx::Symbolic
    }

    #[test]
    fn g_series_constant_term_and_first_coefficient() {
        for a in -3..=3 {
            let g = g_series(&sym(), a, 6);
            assert_eq!(g.coeff_checked(0), RatFun::one(), "G_0 for a={a}");
            let expect = ScalarCtx::Symbolic
                .q_pow(a)
                .sub(&ScalarCtx::Symbolic.q_pow(-a))
                .scale_rational(&BigRational::from_integer(BigInt::from(-2)));
            assert_eq!(g.coeff_checked(1), expect, "G_1 for a={a}");
        }
    }

    #[test]
    fn g_series_trivial_pairing() {
        let g = g_series(&sym(), 0, 8);
        for k in 1..=8 {
            assert!(g.coeff_checked(k).is_zero());
        }
        assert!(g.coeff_checked(0).is_one());
    }

    #[test]
    fn g_series_routes_agree() {
        for a in -3..=3 {
            let div = g_series(&sym(), a, 8);
            let exp = g_series_exponential(&sym(), a, 8);
            for k in 0..=8 {
                assert_eq!(div.coeff_checked(k), exp.coeff_checked(k), "a={a}, z^{k}");
            }
        }
    }

    #[test]
    fn g_series_log_oddness() {
        for a in -3..=3 {
            let g = g_series(&sym(), a, 8);
            let prod = g.mul(&g.compose_scale(&RatFun::from_i64(-1)));
            assert!(prod.coeff_checked(0).is_one());
            for k in 1..=8 {
                assert!(prod.coeff_checked(k).is_zero(), "a={a}, z^{k}");
            }
        }
    }

    #[test]
    fn qpow_zero_exponent_is_one() {
        let s = qpow(&sym(), 0, 6);
        assert!(s.coeff_checked(0).is_one());
        for k in 1..=6 {
            assert!(s.coeff_checked(k).is_zero());
        }
    }

    #[test]
    fn qpow_minus_one_is_geometric() {
        let s = qpow(&sym(), -1, 6);
        for k in 0..=6 {
            assert!(s.coeff_checked(k).is_one(), "z^{k}");
        }
    }

    #[test]
    fn qpow_minus_two_matches_partial_product() {
        // 1/((1-qz)(1-q^-1 z))
        let ctx = sym();
        let p = TruncSeries::from_terms(&[(0, RatFun::one()), (1, ctx.q_pow(1).neg())], 8)
            .mul(&TruncSeries::from_terms(
                &[(0, RatFun::one()), (1, ctx.q_pow(-1).neg())],
                8,
            ))
            .invert()
            .unwrap()
            .truncate_to(8);
        let s = qpow(&ctx, -2, 8);
        for k in 0..=8 {
            assert_eq!(s.coeff_checked(k), p.coeff_checked(k), "z^{k}");
        }
    }

    #[test]
    fn qpow_positive_is_finite_product() {
        // (1-z)^2_{q^2} = (1-qz)(1-q^-1 z)
        let ctx = sym();
        let s = qpow(&ctx, 2, 8);
        let p = TruncSeries::from_terms(&[(0, RatFun::one()), (1, ctx.q_pow(1).neg())], 8).mul(
            &TruncSeries::from_terms(&[(0, RatFun::one()), (1, ctx.q_pow(-1).neg())], 8),
        );
        for k in 0..=8 {
            assert_eq!(s.coeff_checked(k), p.coeff_checked(k), "z^{k}");
        }
    }

    #[test]
    fn qpow_routes_agree() {
        for r in -4..=4 {
            let a = qpow(&sym(), r, 10);
            let b = qpow_pochhammer(&sym(), r, 10);
            for k in 0..=10 {
                assert_eq!(a.coeff_checked(k), b.coeff_checked(k), "r={r}, z^{k}");
            }
        }
    }

    #[test]
    fn twisted_qpow_basics() {
        let ctx = sym();
        let t = twisted_qpow(&ctx, 0, 6);
        assert!(t.coeff_checked(0).is_one());
        for k in 1..=6 {
            assert!(t.coeff_checked(k).is_zero());
        }
        for r in -3..=3i64 {
            let t = twisted_qpow(&ctx, r, 6);
            let expect = ctx
                .qint(r)
                .scale_rational(&BigRational::from_integer(BigInt::from(-2)));
            assert_eq!(t.coeff_checked(1), expect, "r={r}");
        }
    }

    #[test]
    fn twisted_qpow_odd_exponential_inverse() {
        for r in -4..=4 {
            let t = twisted_qpow(&sym(), r, 8);
            let prod = t.mul(&t.compose_scale(&RatFun::from_i64(-1)));
            assert!(prod.coeff_checked(0).is_one());
            for k in 1..=8 {
                assert!(prod.coeff_checked(k).is_zero(), "r={r}, z^{k}");
            }
        }
    }

    #[test]
    fn twisted_qpow_is_quotient_of_qpows() {
        for r in -3..=3 {
            let t = twisted_qpow(&sym(), r, 8);
            let num = qpow(&sym(), r, 8);
            let den = qpow(&sym(), r, 8).compose_scale(&RatFun::from_i64(-1));
            let quot = num.mul(&den.invert().unwrap()).truncate_to(8);
            for k in 0..=8 {
                assert_eq!(t.coeff_checked(k), quot.coeff_checked(k), "r={r}, z^{k}");
            }
        }
    }
}
