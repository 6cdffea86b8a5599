//! Current relations beyond the simply-laced regime (`g_ij <= -1`): the
//! higher-order poles are cleared by explicit polynomial regularizers, and
//! the residual contact term is computed as the two-region expansion
//! difference of a rational band kernel.

use std::time::Instant;

use crate::error::Result;
use crate::fock::{FockConfig, FockVector};
use crate::qseries::{self, Kernel, Region, Window};
use crate::report::RelationReport;
use crate::scalars::RatFun;
use crate::vertex::XFactor;

use super::vertexrel::{apply_kernel, quad_p, quad_q, WordMemo};
use super::{par_over_states, poly2_linear_product, CheckWindow, Cmp, RelationCheck};

/// Linear factors `(z ± q^e w)` for `e` in the symmetric band
/// `{g+shift, g+shift+2, ..., -(g+shift)}` (for `g < 0`).
fn band_factors(cfg: &FockConfig, g: i64, shift: i64, plus: bool) -> Vec<(RatFun, RatFun)> {
    let mut out = Vec::new();
    let mut e = g + shift;
    while e <= -(g + shift) {
        let c = if plus {
            cfg.ctx.q_pow(e)
        } else {
            cfg.ctx.q_pow(e).neg()
        };
        out.push((RatFun::one(), c));
        e += 2;
    }
    out
}

/// Mixed-sign regularization: both region orderings of
/// `(z+w)^{-g}_{q^2} X_i^+(z) X_j^-(w)` equal
/// `(z-w)^{-g}_{q^2} :X_i^+(z) X_j^-(w):`.
pub(super) struct KmAdjReg;

impl RelationCheck for KmAdjReg {
    fn name(&self) -> &'static str {
        "KM_ADJ_REG"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let mm = window.m;
        let rank = cfg.lattice.rank();
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let mut c = Cmp::default();
            for i in 0..rank {
                for j in 0..rank {
                    let g = cfg.lattice.gram(i, j);
                    if i == j || g >= 0 {
                        continue;
                    }
                    let sum_poly = poly2_linear_product(&band_factors(cfg, g, 1, true));
                    let diff_poly = poly2_linear_product(&band_factors(cfg, g, 1, false));
                    let fp = XFactor::new(i, 1);
                    let fm = XFactor::new(j, -1);
                    let a = WordMemo::new(cfg, fp.clone(), fm.clone(), false, &x);
                    let b = WordMemo::new(cfg, fm.clone(), fp.clone(), false, &x);
                    let norm = WordMemo::new(cfg, fp, fm, true, &x);
                    for m in -mm..=mm {
                        for n in -mm..=mm {
                            let rhs = apply_kernel(&diff_poly, &norm, m, n, false)?;
                            let lhs_z = apply_kernel(&sum_poly, &a, m, n, false)?;
                            c.record(s, (m, n), &lhs_z, &rhs);
                            let lhs_w = apply_kernel(&sum_poly, &b, m, n, true)?;
                            c.record(s, (m, n), &lhs_w, &rhs);
                        }
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(
            self.name(),
            "pairs with g_ij < 0, both regions".into(),
            window.describe(),
            start,
        ))
    }
}

/// Same-sign quadratic relation with the pole-clearing prefactor
/// `(z-w)^{-g-1}_{q^2}`:
/// `Pre·P_{s,g} X_i^s(z) X_j^s(w) = Pre·Q_{s,g} X_j^s(w) X_i^s(z)`.
pub(super) struct KmOffdiagReg;

impl RelationCheck for KmOffdiagReg {
    fn name(&self) -> &'static str {
        "KM_OFFDIAG_REG"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let mm = window.m;
        let rank = cfg.lattice.rank();
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let mut c = Cmp::default();
            for i in 0..rank {
                for j in 0..rank {
                    let g = cfg.lattice.gram(i, j);
                    if i == j || g >= 0 {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let sg = sign * g;
                        let mut pf = band_factors(cfg, g, 2, false);
                        pf.extend(quad_p(&cfg.ctx, sg));
                        let mut qf = band_factors(cfg, g, 2, false);
                        qf.extend(quad_q(&cfg.ctx, sg));
                        let p = poly2_linear_product(&pf);
                        let q = poly2_linear_product(&qf);
                        let fi = XFactor::new(i, sign);
                        let fj = XFactor::new(j, sign);
                        let a = WordMemo::new(cfg, fi.clone(), fj.clone(), false, &x);
                        let b = WordMemo::new(cfg, fj, fi, false, &x);
                        for m in -mm..=mm {
                            for n in -mm..=mm {
                                let lhs = apply_kernel(&p, &a, m, n, false)?;
                                let rhs = apply_kernel(&q, &b, m, n, true)?;
                                c.record(s, (m, n), &lhs, &rhs);
                            }
                        }
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(
            self.name(),
            "pairs with g_ij < 0, s = ±1".into(),
            window.describe(),
            start,
        ))
    }
}

/// Unregularized same-sign contact term: the distribution
/// `P_{s,g} X_i^s(z) X_j^s(w) - Q_{s,g} X_j^s(w) X_i^s(z)` equals the
/// normal-ordered word convolved with the two-region expansion difference
/// of `R = Π_{e=g..-g} (z+q^e w) / Π_{e=g+2..-g-2} (z-q^e w)`.
pub(super) struct KmRemark;

impl RelationCheck for KmRemark {
    fn name(&self) -> &'static str {
        "KM_REMARK"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let mm = window.m;
        let rank = cfg.lattice.rank();
        let band = Window::square(window.d_src + mm + 2);
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let mut c = Cmp::default();
            for i in 0..rank {
                for j in 0..rank {
                    let g = cfg.lattice.gram(i, j);
                    if i == j || g >= 0 {
                        continue;
                    }
                    // T = i_{z,w} R - i_{w,z} R on the band window
                    let mut factors: Vec<Kernel> = band_factors(cfg, g, 0, true)
                        .into_iter()
                        .map(|(_, cw)| Kernel::Poly(vec![((1, 0), RatFun::one()), ((0, 1), cw)]))
                        .collect();
                    let mut e = g + 2;
                    while e <= -g - 2 {
                        factors.push(Kernel::LinInv { a: cfg.ctx.q_pow(e) });
                        e += 2;
                    }
                    let r = Kernel::Product(factors);
                    let t = qseries::region_expand(&cfg.ctx, &r, Region::ZDominant, band)?
                        .sub(&qseries::region_expand(&cfg.ctx, &r, Region::WDominant, band)?);
                    for sign in [1i64, -1] {
                        let sg = sign * g;
                        let p = poly2_linear_product(&quad_p(&cfg.ctx, sg));
                        let q = poly2_linear_product(&quad_q(&cfg.ctx, sg));
                        let fi = XFactor::new(i, sign);
                        let fj = XFactor::new(j, sign);
                        let a = WordMemo::new(cfg, fi.clone(), fj.clone(), false, &x);
                        let b = WordMemo::new(cfg, fj.clone(), fi.clone(), false, &x);
                        let norm = WordMemo::new(cfg, fi, fj, true, &x);
                        for m in -mm..=mm {
                            for n in -mm..=mm {
                                let lhs = apply_kernel(&p, &a, m, n, false)?
                                    .sub(&apply_kernel(&q, &b, m, n, true)?);
                                let mut rhs = FockVector::zero();
                                for ((pz, pw), coeff) in t.iter() {
                                    if coeff.is_zero() {
                                        continue;
                                    }
                                    rhs = rhs.add(&norm.get(m + pz, n + pw)?.scale(coeff));
                                }
                                c.record(s, (m, n), &lhs, &rhs);
                            }
                        }
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(
            self.name(),
            "pairs with g_ij < 0, s = ±1".into(),
            window.describe(),
            start,
        ))
    }
}
