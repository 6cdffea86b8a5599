//! Vertex-operator relations: operator products, the contracted diagonal
//! currents, exchange lemmas, and the defining current relations in the
//! simply-laced (`g_ij >= -1`) regime.
//!
//! Every identity is checked coefficient-by-coefficient: both sides of a
//! current relation are extracted as mode operators (finite sums), applied
//! to every windowed source state, and compared exactly in `Q(v)`.

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::time::Instant;

use crate::error::Result;
use crate::fock::{FockConfig, FockVector, HeisenbergGenerator};
use crate::qseries;
use crate::report::RelationReport;
use crate::scalars::{RatFun, ScalarCtx, TruncSeries};
use crate::vertex::{apply_group_letter, phi_psi_mode, x_mode, xx_word_mode, PhiPsiKind, XFactor};

use super::{par_over_states, CheckWindow, Cmp, RelationCheck};

/// Memoized mode table of a two-factor word `F1(z) F2(w)`:
/// `get(m, n)` is the coefficient operator of `z^{-m} w^{-n}` applied to a
/// fixed source vector.
pub(super) struct WordMemo<'a> {
    cfg: &'a FockConfig,
    f1: XFactor,
    f2: XFactor,
    normal: bool,
    x: &'a FockVector,
    cache: RefCell<BTreeMap<(i64, i64), FockVector>>,
}

impl<'a> WordMemo<'a> {
    pub fn new(cfg: &'a FockConfig, f1: XFactor, f2: XFactor, normal: bool, x: &'a FockVector) -> Self {
        Self {
            cfg,
            f1,
            f2,
            normal,
            x,
            cache: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn get(&self, m: i64, n: i64) -> Result<FockVector> {
        if let Some(v) = self.cache.borrow().get(&(m, n)) {
            return Ok(v.clone());
        }
        let v = xx_word_mode(self.cfg, &self.f1, &self.f2, m, n, self.normal, self.x)?;
        self.cache.borrow_mut().insert((m, n), v.clone());
        Ok(v)
    }
}

/// `sum_{(a,b)} c_{ab} W(m+a, n+b)`: a homogeneous polynomial in `(z, w)`
/// applied to a word's mode table. `swap` reads the table with the mode
/// pair transposed (for words whose first factor carries `w`).
pub(super) fn apply_kernel(
    poly: &[((i64, i64), RatFun)],
    memo: &WordMemo<'_>,
    m: i64,
    n: i64,
    swap: bool,
) -> Result<FockVector> {
    let mut out = FockVector::zero();
    for ((a, b), c) in poly {
        let v = if swap {
            memo.get(n + b, m + a)?
        } else {
            memo.get(m + a, n + b)?
        };
        out = out.add(&v.scale(c));
    }
    Ok(out)
}

/// Linear factors of `P_{s,g} = (z - q^{sg} w)(z + q^{-sg} w)`.
pub(super) fn quad_p(ctx: &ScalarCtx, sg: i64) -> Vec<(RatFun, RatFun)> {
    vec![
        (RatFun::one(), ctx.q_pow(sg).neg()),
        (RatFun::one(), ctx.q_pow(-sg)),
    ]
}

/// Linear factors of `Q_{s,g} = (q^{sg} z - w)(q^{-sg} z + w)`.
pub(super) fn quad_q(ctx: &ScalarCtx, sg: i64) -> Vec<(RatFun, RatFun)> {
    vec![
        (ctx.q_pow(sg), RatFun::from_i64(-1)),
        (ctx.q_pow(-sg), RatFun::one()),
    ]
}

fn two() -> RatFun {
    RatFun::from_i64(2)
}

fn sign_pow(n: i64) -> RatFun {
    if n.rem_euclid(2) == 0 {
        RatFun::one()
    } else {
        RatFun::from_i64(-1)
    }
}

// ---------------------------------------------------------------------------
// Operator products: composite word == exchange kernel * normal-ordered word
// ---------------------------------------------------------------------------

fn ope_run(
    id: &'static str,
    mixed: bool,
    cfg: &FockConfig,
    window: &CheckWindow,
) -> Result<RelationReport> {
    let start = Instant::now();
    let mm = window.m;
    let rank = cfg.lattice.rank();
    let cmp = par_over_states(cfg, window, |s| {
        let x = FockVector::from_state(s.clone());
        let d = s.degree();
        let mut c = Cmp::default();
        for i in 0..rank {
            for j in 0..rank {
                for sign in [1i64, -1] {
                    let g = cfg.lattice.gram(i, j);
                    let order = (d + mm).max(0) as usize;
                    let series = qseries::twisted_qpow(&cfg.ctx, g, order);
                    // same sign: kernel argument q^{-s} w/z; mixed: -w/z
                    let arg = if mixed {
                        RatFun::from_i64(-1)
                    } else {
                        cfg.ctx.q_pow(-sign)
                    };
                    let f1 = XFactor::new(i, sign);
                    let f2 = XFactor::new(j, if mixed { -sign } else { sign });
                    let comp = WordMemo::new(cfg, f1.clone(), f2.clone(), false, &x);
                    let norm = WordMemo::new(cfg, f1, f2, true, &x);
                    for m in -mm..=mm {
                        for n in -mm..=mm {
                            let lhs = comp.get(m, n)?;
                            let mut rhs = FockVector::zero();
                            // normal word vanishes beyond annihilation depth d
                            for k in 0..=(d - n).max(-1) {
                                let fk = series.coeff_checked(k).mul(&arg.pow(k)?);
                                if fk.is_zero() {
                                    continue;
                                }
                                rhs = rhs.add(&norm.get(m - k, n + k)?.scale(&fk));
                            }
                            c.record(s, (m, n), &lhs, &rhs);
                        }
                    }
                }
            }
        }
        Ok(c)
    })?;
    Ok(cmp.into_report(id, "all (i, j), s = ±1".into(), window.describe(), start))
}

pub(super) struct OpeSameSign;

impl RelationCheck for OpeSameSign {
    fn name(&self) -> &'static str {
        "OPE_PP"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        ope_run(self.name(), false, cfg, window)
    }
}

pub(super) struct OpeMixedSign;

impl RelationCheck for OpeMixedSign {
    fn name(&self) -> &'static str {
        "OPE_PM"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        ope_run(self.name(), true, cfg, window)
    }
}

// ---------------------------------------------------------------------------
// Contracted diagonal currents: Φ and Ψ from :X^+(q^{∓1}u) X^-(u):
// ---------------------------------------------------------------------------

/// `Φ_i(q^{-1/2}u) = :X_i^+(q^{-1}u) X_i^-(u):` mode-by-mode, i.e.
/// `q^{t/2} Φ_i(t) = Σ_{m+n=t} :X_i^+(q^{-1}·) X_i^-(·):(m, n)`, and the
/// mirror statement `Ψ_i(q^{1/2}u) = :X_i^+(qu) X_i^-(u):`.
pub(super) struct Lemma22;

impl RelationCheck for Lemma22 {
    fn name(&self) -> &'static str {
        "LEMMA_2_2"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let mm = window.m;
        let rank = cfg.lattice.rank();
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let d = s.degree();
            let mut c = Cmp::default();
            for i in 0..rank {
                let wphi = WordMemo::new(
                    cfg,
                    XFactor::new(i, 1).with_scale(cfg.ctx.q_pow(-1)),
                    XFactor::new(i, -1),
                    true,
                    &x,
                );
                let wpsi = WordMemo::new(
                    cfg,
                    XFactor::new(i, 1).with_scale(cfg.ctx.q_pow(1)),
                    XFactor::new(i, -1),
                    true,
                    &x,
                );
                for t in -2 * mm..=0 {
                    let lhs = phi_psi_mode(cfg, i, PhiPsiKind::Phi, t, &x)?.scale(&cfg.ctx.v_pow(t));
                    let mut rhs = FockVector::zero();
                    for n in (t - d)..=d {
                        rhs = rhs.add(&wphi.get(t - n, n)?);
                    }
                    c.record(s, (t, 0), &lhs, &rhs);
                }
                for t in 0..=2 * mm {
                    let lhs =
                        phi_psi_mode(cfg, i, PhiPsiKind::Psi, t, &x)?.scale(&cfg.ctx.v_pow(-t));
                    let mut rhs = FockVector::zero();
                    for n in (t - d)..=d {
                        rhs = rhs.add(&wpsi.get(t - n, n)?);
                    }
                    c.record(s, (0, t), &lhs, &rhs);
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(self.name(), "Φ and Ψ, all colors".into(), window.describe(), start))
    }
}

// ---------------------------------------------------------------------------
// Φ/Ψ exchange and the oscillator reconstruction
// ---------------------------------------------------------------------------

/// `Φ_i(-a) Ψ_j(b) = Σ_{k ≤ min(a,b)} H_k Ψ_j(b-k) Φ_i(-(a-k))` with
/// `H = G(q^{-1}x)/G(qx)` for pairing `g_ij`, plus the inverted exchange.
pub(super) struct Lemma23;

impl RelationCheck for Lemma23 {
    fn name(&self) -> &'static str {
        "LEMMA_2_3"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let mm = window.m;
        let rank = cfg.lattice.rank();
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let mut c = Cmp::default();
            let phi = |i: usize, a: i64, v: &FockVector| phi_psi_mode(cfg, i, PhiPsiKind::Phi, -a, v);
            let psi = |j: usize, b: i64, v: &FockVector| phi_psi_mode(cfg, j, PhiPsiKind::Psi, b, v);
            for i in 0..rank {
                for j in 0..rank {
                    let g = cfg.lattice.gram(i, j);
                    let ord = mm as usize;
                    let gq = qseries::g_series(&cfg.ctx, g, ord);
                    let lo = gq.compose_scale(&cfg.ctx.q_pow(-1));
                    let hi = gq.compose_scale(&cfg.ctx.q_pow(1));
                    let h = lo.mul(&hi.invert()?).truncate_to(ord as i64);
                    let hinv = hi.mul(&lo.invert()?).truncate_to(ord as i64);
                    for a in 0..=mm {
                        for b in 0..=mm {
                            let lhs = phi(i, a, &psi(j, b, &x)?)?;
                            let mut rhs = FockVector::zero();
                            for k in 0..=a.min(b) {
                                let hk = h.coeff_checked(k);
                                if hk.is_zero() {
                                    continue;
                                }
                                rhs = rhs.add(&psi(j, b - k, &phi(i, a - k, &x)?)?.scale(&hk));
                            }
                            c.record(s, (-a, b), &lhs, &rhs);

                            let lhs2 = psi(j, b, &phi(i, a, &x)?)?;
                            let mut rhs2 = FockVector::zero();
                            for k in 0..=a.min(b) {
                                let hk = hinv.coeff_checked(k);
                                if hk.is_zero() {
                                    continue;
                                }
                                rhs2 = rhs2.add(&phi(i, a - k, &psi(j, b - k, &x)?)?.scale(&hk));
                            }
                            c.record(s, (b, -a), &lhs2, &rhs2);
                        }
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(self.name(), "both exchange orders".into(), window.describe(), start))
    }
}

fn compositions(n: i64) -> Vec<Vec<i64>> {
    fn rec(remaining: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if remaining == 0 {
            out.push(cur.clone());
            return;
        }
        for k in 1..=remaining {
            cur.push(k);
            rec(remaining - k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, &mut Vec::new(), &mut out);
    out
}

/// Recover the oscillators from the diagonal currents: the degree-`n`
/// coefficient of the operator logarithm of `Φ_i(z)` (resp. `Ψ_i(z)`) is
/// `2(q^{-1}-q) a_i(-n)` (resp. `2(q-q^{-1}) a_i(n)`) for odd `n` and
/// vanishes for even `n`.
pub(super) struct HeisFromPhiPsi;

impl RelationCheck for HeisFromPhiPsi {
    fn name(&self) -> &'static str {
        "HEIS_FROM_PHIPSI"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let n_max = 5i64;
        let mut local = cfg.clone();
        local.cap = local.cap.max(window.d_src + n_max);
        let cfg = &local;
        let rank = cfg.lattice.rank();
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let mut c = Cmp::default();
            for i in 0..rank {
                for kind in [PhiPsiKind::Phi, PhiPsiKind::Psi] {
                    for n in 1..=n_max {
                        // log series: Σ_j (-1)^{j-1}/j Σ_{k_1+..+k_j=n} Π modes
                        let mut log_n = FockVector::zero();
                        for comp in compositions(n) {
                            let mut y = x.clone();
                            for &k in &comp {
                                let mode = match kind {
                                    PhiPsiKind::Phi => -k,
                                    PhiPsiKind::Psi => k,
                                };
                                y = phi_psi_mode(cfg, i, kind, mode, &y)?;
                                if y.is_zero() {
                                    break;
                                }
                            }
                            let j = comp.len() as i64;
                            let w = if j % 2 == 0 {
                                cfg.ctx.rational(-1, j)
                            } else {
                                cfg.ctx.rational(1, j)
                            };
                            log_n = log_n.add(&y.scale(&w));
                        }
                        let rhs = if n % 2 != 0 {
                            let (mode, diff) = match kind {
                                PhiPsiKind::Phi => {
                                    (-n, cfg.ctx.q_pow(-1).sub(&cfg.ctx.q_pow(1)))
                                }
                                PhiPsiKind::Psi => (n, cfg.ctx.q_minus_qinv()),
                            };
                            cfg.heis_apply(HeisenbergGenerator { color: i, mode }, &x)?
                                .scale(&diff.mul(&two()))
                        } else {
                            FockVector::zero()
                        };
                        let tag = if kind == PhiPsiKind::Phi { -n } else { n };
                        c.record(s, (tag, 0), &log_n, &rhs);
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(self.name(), "log of Φ, Ψ; n <= 5".into(), window.describe(), start))
    }
}

/// Mutual commutativity of the diagonal-current modes within each family.
pub(super) struct PhiPhi;

impl RelationCheck for PhiPhi {
    fn name(&self) -> &'static str {
        "PHI_PHI"
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
                    for (kind, lo, hi) in
                        [(PhiPsiKind::Phi, -mm, 0i64), (PhiPsiKind::Psi, 0, mm)]
                    {
                        for m in lo..=hi {
                            for n in lo..=hi {
                                let ab = phi_psi_mode(
                                    cfg,
                                    i,
                                    kind,
                                    m,
                                    &phi_psi_mode(cfg, j, kind, n, &x)?,
                                )?;
                                let ba = phi_psi_mode(
                                    cfg,
                                    j,
                                    kind,
                                    n,
                                    &phi_psi_mode(cfg, i, kind, m, &x)?,
                                )?;
                                c.record(s, (m, n), &ab, &ba);
                            }
                        }
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(self.name(), "[Φ,Φ] = [Ψ,Ψ] = 0".into(), window.describe(), start))
    }
}

// ---------------------------------------------------------------------------
// Diagonal currents past vertex operators
// ---------------------------------------------------------------------------

fn phi_x_run(
    id: &'static str,
    psi_side: bool,
    cfg: &FockConfig,
    window: &CheckWindow,
) -> Result<RelationReport> {
    let start = Instant::now();
    let mm = window.m;
    let rank = cfg.lattice.rank();
    let cmp = par_over_states(cfg, window, |s| {
        let x = FockVector::from_state(s.clone());
        let mut c = Cmp::default();
        for i in 0..rank {
            for j in 0..rank {
                for sign in [1i64, -1] {
                    let g = cfg.lattice.gram(i, j);
                    let ord = mm as usize;
                    // Φ side: G^{s}(q^{-s/2} z/w); Ψ side: G^{-s}(q^{-s/2} w/z)
                    let pairing = if psi_side { -sign * g } else { sign * g };
                    let f: TruncSeries = qseries::g_series(&cfg.ctx, pairing, ord)
                        .compose_scale(&cfg.ctx.v_pow(-sign));
                    let fx = XFactor::new(j, sign);
                    for a in 0..=mm {
                        for b in -mm..=mm {
                            let (lhs, rhs) = if psi_side {
                                let lhs = phi_psi_mode(
                                    cfg,
                                    i,
                                    PhiPsiKind::Psi,
                                    a,
                                    &x_mode(cfg, &fx, b, &x)?,
                                )?;
                                let mut rhs = FockVector::zero();
                                for k in 0..=a {
                                    let fk = f.coeff_checked(k);
                                    if fk.is_zero() {
                                        continue;
                                    }
                                    let inner =
                                        phi_psi_mode(cfg, i, PhiPsiKind::Psi, a - k, &x)?;
                                    rhs = rhs.add(&x_mode(cfg, &fx, b + k, &inner)?.scale(&fk));
                                }
                                (lhs, rhs)
                            } else {
                                let lhs = phi_psi_mode(
                                    cfg,
                                    i,
                                    PhiPsiKind::Phi,
                                    -a,
                                    &x_mode(cfg, &fx, b, &x)?,
                                )?;
                                let mut rhs = FockVector::zero();
                                for k in 0..=a {
                                    let fk = f.coeff_checked(k);
                                    if fk.is_zero() {
                                        continue;
                                    }
                                    let inner =
                                        phi_psi_mode(cfg, i, PhiPsiKind::Phi, -(a - k), &x)?;
                                    rhs = rhs.add(&x_mode(cfg, &fx, b - k, &inner)?.scale(&fk));
                                }
                                (lhs, rhs)
                            };
                            c.record(s, (a, b), &lhs, &rhs);
                        }
                    }
                }
            }
        }
        Ok(c)
    })?;
    Ok(cmp.into_report(id, "all (i, j), s = ±1".into(), window.describe(), start))
}

/// `Φ_i(-a) X_j^s(b) = Σ_{k=0}^a [x^k] G^s(q^{-s/2} x) · X_j^s(b-k) Φ_i(-(a-k))`.
pub(super) struct PhiX;

impl RelationCheck for PhiX {
    fn name(&self) -> &'static str {
        "PHI_X"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        phi_x_run(self.name(), false, cfg, window)
    }
}

/// `Ψ_i(a) X_j^s(b) = Σ_{k=0}^a [x^k] G^{-s}(q^{-s/2} x) · X_j^s(b+k) Ψ_i(a-k)`.
pub(super) struct PsiX;

impl RelationCheck for PsiX {
    fn name(&self) -> &'static str {
        "PSI_X"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        phi_x_run(self.name(), true, cfg, window)
    }
}

// ---------------------------------------------------------------------------
// Current relations
// ---------------------------------------------------------------------------

/// Vertex operators on orthogonal colors commute (all sign combinations).
pub(super) struct Ortho;

impl RelationCheck for Ortho {
    fn name(&self) -> &'static str {
        "ORTHO"
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
                    if i == j || cfg.lattice.gram(i, j) != 0 {
                        continue;
                    }
                    for s1 in [1i64, -1] {
                        for s2 in [1i64, -1] {
                            let fi = XFactor::new(i, s1);
                            let fj = XFactor::new(j, s2);
                            for m in -mm..=mm {
                                for n in -mm..=mm {
                                    let ab = x_mode(cfg, &fi, m, &x_mode(cfg, &fj, n, &x)?)?;
                                    let ba = x_mode(cfg, &fj, n, &x_mode(cfg, &fi, m, &x)?)?;
                                    c.record(s, (m, n), &ab, &ba);
                                }
                            }
                        }
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(
            self.name(),
            "pairs with g_ij = 0".into(),
            window.describe(),
            start,
        ))
    }
}

/// Adjacent mixed-sign commutator:
/// `[X_i^+(z), X_j^-(w)] = 2 :X_i^+(z) X_j^-(-z): δ(-w/z)` for `g_ij = -1`.
pub(super) struct XpXmAdj;

impl RelationCheck for XpXmAdj {
    fn name(&self) -> &'static str {
        "XPXM_ADJ"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let mm = window.m;
        let rank = cfg.lattice.rank();
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let d = s.degree();
            let mut c = Cmp::default();
            for i in 0..rank {
                for j in 0..rank {
                    if i == j || cfg.lattice.gram(i, j) != -1 {
                        continue;
                    }
                    let fp = XFactor::new(i, 1);
                    let fm = XFactor::new(j, -1);
                    let comp = WordMemo::new(cfg, fp.clone(), fm.clone(), false, &x);
                    let swap = WordMemo::new(cfg, fm.clone(), fp.clone(), false, &x);
                    let norm = WordMemo::new(cfg, fp, fm, true, &x);
                    for m in -mm..=mm {
                        for n in -mm..=mm {
                            let lhs = comp.get(m, n)?.sub(&swap.get(n, m)?);
                            let t = m + n;
                            let mut rhs = FockVector::zero();
                            for np in (t - d)..=d {
                                let coeff = two().mul(&sign_pow(n + np));
                                rhs = rhs.add(&norm.get(t - np, np)?.scale(&coeff));
                            }
                            c.record(s, (m, n), &lhs, &rhs);
                        }
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(
            self.name(),
            "pairs with g_ij = -1".into(),
            window.describe(),
            start,
        ))
    }
}

/// Diagonal mixed-sign commutator: `[X_i^+(z), X_i^-(w)]` produces the
/// diagonal currents,
/// `(2(q+q^{-1})/(q-q^{-1})) (q^{(m-n)/2} Ψ_i(m+n) - q^{(n-m)/2} Φ_i(m+n))`
/// restricted to the supported halves.
pub(super) struct XpXmDiag;

impl RelationCheck for XpXmDiag {
    fn name(&self) -> &'static str {
        "XPXM_DIAG"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let mm = window.m;
        let rank = cfg.lattice.rank();
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let mut c = Cmp::default();
            let cp = cfg
                .ctx
                .q_pow(1)
                .add(&cfg.ctx.q_pow(-1))
                .mul(&two())
                .div(&cfg.ctx.q_minus_qinv())?;
            for i in 0..rank {
                let fp = XFactor::new(i, 1);
                let fm = XFactor::new(i, -1);
                let comp = WordMemo::new(cfg, fp.clone(), fm.clone(), false, &x);
                let swap = WordMemo::new(cfg, fm, fp, false, &x);
                for m in -mm..=mm {
                    for n in -mm..=mm {
                        let lhs = comp.get(m, n)?.sub(&swap.get(n, m)?);
                        let t = m + n;
                        let mut rhs = FockVector::zero();
                        if t >= 0 {
                            rhs = rhs.add(
                                &phi_psi_mode(cfg, i, PhiPsiKind::Psi, t, &x)?
                                    .scale(&cp.mul(&cfg.ctx.v_pow(m - n))),
                            );
                        }
                        if t <= 0 {
                            rhs = rhs.sub(
                                &phi_psi_mode(cfg, i, PhiPsiKind::Phi, t, &x)?
                                    .scale(&cp.mul(&cfg.ctx.v_pow(n - m))),
                            );
                        }
                        c.record(s, (m, n), &lhs, &rhs);
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(self.name(), "all colors".into(), window.describe(), start))
    }
}

/// Adjacent same-sign quadratic relation:
/// `P_{s,-s} X_i^s(z) X_j^s(w) = Q_{s,-s} X_j^s(w) X_i^s(z)` for `g_ij = -1`.
pub(super) struct XxOffdiag;

impl RelationCheck for XxOffdiag {
    fn name(&self) -> &'static str {
        "XX_OFFDIAG"
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
                    if i == j || cfg.lattice.gram(i, j) != -1 {
                        continue;
                    }
                    for sign in [1i64, -1] {
                        let sg = sign * cfg.lattice.gram(i, j);
                        let p = super::poly2_linear_product(&quad_p(&cfg.ctx, sg));
                        let q = super::poly2_linear_product(&quad_q(&cfg.ctx, sg));
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
            "pairs with g_ij = -1, s = ±1".into(),
            window.describe(),
            start,
        ))
    }
}

/// Diagonal same-sign quadratic relation with its delta correction:
/// `P_{s,2} X_i^s(z) X_i^s(w) - Q_{s,2} X_i^s(w) X_i^s(z)
///  = 2(q+q^{-1})^2 z^2 δ(-w/z) a_i^{2s}`, plus the contracted-word
/// identity `:X_i^s(z) X_i^s(-z): = a_i^{2s}`.
pub(super) struct XxDiag;

impl RelationCheck for XxDiag {
    fn name(&self) -> &'static str {
        "XX_DIAG"
    }

    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let mm = window.m;
        let rank = cfg.lattice.rank();
        let cmp = par_over_states(cfg, window, |s| {
            let x = FockVector::from_state(s.clone());
            let d = s.degree();
            let mut c = Cmp::default();
            for i in 0..rank {
                for sign in [1i64, -1] {
                    let sg = 2 * sign;
                    let p = super::poly2_linear_product(&quad_p(&cfg.ctx, sg));
                    let q = super::poly2_linear_product(&quad_q(&cfg.ctx, sg));
                    let f = XFactor::new(i, sign);
                    let a = WordMemo::new(cfg, f.clone(), f.clone(), false, &x);
                    let norm = WordMemo::new(cfg, f.clone(), f, true, &x);
                    let letters =
                        apply_group_letter(cfg, i, sign, &apply_group_letter(cfg, i, sign, &x)?)?;
                    let csq = cfg
                        .ctx
                        .q_pow(1)
                        .add(&cfg.ctx.q_pow(-1))
                        .pow(2)?
                        .mul(&two());
                    for m in -mm..=mm {
                        for n in -mm..=mm {
                            let lhs = apply_kernel(&p, &a, m, n, false)?;
                            let mut rhs = apply_kernel(&q, &a, m, n, true)?;
                            if m + n == -2 {
                                rhs = rhs.add(&letters.scale(&csq.mul(&sign_pow(n))));
                            }
                            c.record(s, (m, n), &lhs, &rhs);
                        }
                    }
                    // :X^s(z) X^s(-z): collapses to the doubled letter
                    for t in -mm..=mm {
                        let mut lhs = FockVector::zero();
                        for np in (t - d)..=d {
                            lhs = lhs.add(&norm.get(t - np, np)?.scale(&sign_pow(np)));
                        }
                        let rhs = if t == 0 { letters.clone() } else { FockVector::zero() };
                        c.record(s, (t, t), &lhs, &rhs);
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(self.name(), "all colors, s = ±1".into(), window.describe(), start))
    }
}
