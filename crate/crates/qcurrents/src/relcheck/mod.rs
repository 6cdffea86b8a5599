//! The verification engine: every operator identity is checked as an exact
//! coefficient statement on Fock matrix elements over a declared window.
//!
//! Each relation lives behind the [`RelationCheck`] trait and is registered
//! by name; suites are named lists of registered checks, so the CLI and the
//! acceptance tests select strategies purely by string.

mod km;
mod vertexrel;

use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;

use crate::error::Result;
use crate::fock::{FockConfig, FockState, FockVector, HeisenbergGenerator};
use crate::qseries;
use crate::report::{RelationReport, Witness};
use crate::scalars::ScalarCtx;

/// Comparison window: all basis states of degree `<= d_src` (group parts
/// `e_0` and `e_{α_1}`), all mode pairs with `|m|, |n| <= m`.
#[derive(Clone, Copy, Debug)]
pub struct CheckWindow {
    pub d_src: i64,
    pub m: i64,
}

impl CheckWindow {
    pub fn new(d_src: i64, m: i64) -> Self {
        Self { d_src, m }
    }

    /// Soundness margin: no intermediate state in a windowed two-factor
    /// word exceeds this degree.
    pub fn cap(&self) -> i64 {
        self.d_src + 2 * self.m
    }

    pub fn describe(&self) -> String {
        format!("d_src={}, |modes|<={}", self.d_src, self.m)
    }
}

/// One registered relation checker.
pub trait RelationCheck: Sync {
    fn name(&self) -> &'static str;
    fn run(&self, cfg: &FockConfig, window: &CheckWindow) -> Result<RelationReport>;
}

/// Accumulates compared cells and the first mismatch.
#[derive(Clone, Debug, Default)]
pub struct Cmp {
    pub cells: u64,
    pub witness: Option<Witness>,
}

impl Cmp {
    pub fn record(
        &mut self,
        state: &FockState,
        modes: (i64, i64),
        lhs: &FockVector,
        rhs: &FockVector,
    ) {
        self.cells += 1;
        if self.witness.is_none() && lhs != rhs {
            self.witness = Some(Witness {
                state: state.to_string(),
                modes,
                lhs: render(lhs),
                rhs: render(rhs),
            });
        }
    }

    pub fn merge(mut self, other: Cmp) -> Cmp {
        self.cells += other.cells;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self
    }

    pub fn into_report(self, id: &str, params: String, window: String, start: Instant) -> RelationReport {
        RelationReport {
            id: id.to_string(),
            params,
            window,
            status: if self.witness.is_none() { "PASS" } else { "FAIL" }.to_string(),
            witness: self.witness,
            cells: self.cells,
            millis: start.elapsed().as_millis(),
        }
    }
}

fn render(v: &FockVector) -> String {
    if v.is_zero() {
        return "0".to_string();
    }
    v.terms()
        .map(|(s, c)| format!("({c}) {s}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// Source states for a window: degrees `0..=d_src`, group parts `e_0` and
/// `e_{α_1}` (the shifted letter exercises the cocycle signs).
pub fn source_states(cfg: &FockConfig, window: &CheckWindow) -> Result<Vec<FockState>> {
    let mut out = Vec::new();
    let labels = [cfg.lattice.zero(), cfg.lattice.simple_root(0)];
    for beta in labels {
        for d in 0..=window.d_src {
            out.extend(cfg.basis(d, &beta)?);
        }
    }
    Ok(out)
}

/// Run `f` over all source states in parallel and merge the comparisons.
pub fn par_over_states<F>(cfg: &FockConfig, window: &CheckWindow, f: F) -> Result<Cmp>
where
    F: Fn(&FockState) -> Result<Cmp> + Sync,
{
    let states = source_states(cfg, window)?;
    states
        .par_iter()
        .map(|s| f(s))
        .try_reduce(Cmp::default, |a, b| Ok(a.merge(b)))
}

// ---------------------------------------------------------------------------
// Basic suites: Heisenberg relations, q-series route agreement, the
// divided-power delta identity.
// ---------------------------------------------------------------------------

/// `[a_i(m), a_j(n)] = δ_{m,-n} [(α_i|α_j)m][m]/(2m)` on all basis states
/// of degree `<= 6`, odd `|m|, |n| <= 7`.
struct HeisCheck;

impl RelationCheck for HeisCheck {
    fn name(&self) -> &'static str {
        "HEIS"
    }

    fn run(&self, cfg: &FockConfig, _window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let d_max = 6i64;
        let m_max = 7i64;
        let mut local = cfg.clone();
        local.cap = d_max + 2 * m_max;
        let window = CheckWindow::new(d_max, m_max);
        let rank = local.lattice.rank();
        let modes: Vec<i64> = (-m_max..=m_max).filter(|m| m % 2 != 0).collect();
        let cmp = par_over_states(&local, &window, |s| {
            let v = FockVector::from_state(s.clone());
            let mut c = Cmp::default();
            for i in 0..rank {
                for j in 0..rank {
                    for &m in &modes {
                        for &n in &modes {
                            let gi = HeisenbergGenerator { color: i, mode: m };
                            let gj = HeisenbergGenerator { color: j, mode: n };
                            let ab = local.heis_apply(gi, &local.heis_apply(gj, &v)?)?;
                            let ba = local.heis_apply(gj, &local.heis_apply(gi, &v)?)?;
                            let lhs = ab.sub(&ba);
                            let rhs = if m == -n {
                                // contraction(|m|) with the antisymmetric sign
                                let scalar = if m > 0 {
                                    local.contraction(i, j, m)
                                } else {
                                    local.contraction(j, i, n).neg()
                                };
                                v.scale(&scalar)
                            } else {
                                FockVector::zero()
                            };
                            c.record(s, (m, n), &lhs, &rhs);
                        }
                    }
                }
            }
            Ok(c)
        })?;
        Ok(cmp.into_report(
            self.name(),
            "all color pairs".into(),
            window.describe(),
            start,
        ))
    }
}

/// Route agreement for the one-variable kernels: `G` by long division vs
/// exponential, `qpow` by Pochhammer quotient vs exponential, and the odd
/// inverse law for `twisted_qpow` — order 16, parameters in `[-4, 4]`.
struct QSeriesRoutes;

impl RelationCheck for QSeriesRoutes {
    fn name(&self) -> &'static str {
        "QSERIES_ROUTES"
    }

    fn run(&self, cfg: &FockConfig, _window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let order = 16usize;
        let ctx = &cfg.ctx;
        let mut cells = 0u64;
        let mut witness = None;
        let mut compare = |label: String, a: &crate::scalars::TruncSeries, b: &crate::scalars::TruncSeries| {
            for k in 0..=order as i64 {
                cells += 1;
                let (x, y) = (a.coeff_checked(k), b.coeff_checked(k));
                if witness.is_none() && x != y {
                    witness = Some(Witness {
                        state: label.clone(),
                        modes: (k, 0),
                        lhs: x.to_string(),
                        rhs: y.to_string(),
                    });
                }
            }
        };
        for a in -4..=4i64 {
            compare(
                format!("G(a={a}) division vs exponential"),
                &qseries::g_series(ctx, a, order),
                &qseries::g_series_exponential(ctx, a, order),
            );
        }
        for r in -4..=4i64 {
            compare(
                format!("qpow(r={r}) exponential vs Pochhammer"),
                &qseries::qpow(ctx, r, order),
                &qseries::qpow_pochhammer(ctx, r, order),
            );
            let t = qseries::twisted_qpow(ctx, r, order);
            let prod = t.mul(&t.compose_scale(&crate::scalars::RatFun::from_i64(-1)));
            compare(
                format!("twisted_qpow(r={r}) odd inverse"),
                &prod,
                &crate::scalars::TruncSeries::one(order),
            );
        }
        let cmp = Cmp { cells, witness };
        Ok(cmp.into_report(
            self.name(),
            "a, r in [-4, 4]".into(),
            format!("order={order}"),
            start,
        ))
    }
}

/// `i_{z,w}(z-w)^{-n-1}_{q^2} - i_{w,z}(z-w)^{-n-1}_{q^2}
/// = d_{q,w}^{(n)} δ(z-w)` for `n in 0..=3` on a window of size 12.
struct DeltaIdCheck;

impl RelationCheck for DeltaIdCheck {
    fn name(&self) -> &'static str {
        "DELTA_ID"
    }

    fn run(&self, cfg: &FockConfig, _window: &CheckWindow) -> Result<RelationReport> {
        let start = Instant::now();
        let w = qseries::Window::square(12);
        let mut cells = 0u64;
        let mut witness = None;
        for n in 0..=3i64 {
            let chk = qseries::check_delta_identity(&cfg.ctx, n, w)?;
            cells += (2 * 12 + 1) * (2 * 12 + 1);
            if witness.is_none() {
                if let Some(((p, r), lhs, rhs)) = chk.witness {
                    witness = Some(Witness {
                        state: format!("order n={n}"),
                        modes: (p, r),
                        lhs: lhs.to_string(),
                        rhs: rhs.to_string(),
                    });
                }
            }
        }
        let cmp = Cmp { cells, witness };
        Ok(cmp.into_report(self.name(), "n in 0..=3".into(), "window=12".into(), start))
    }
}

// ---------------------------------------------------------------------------
// Registry and suites
// ---------------------------------------------------------------------------

/// All registered checks, keyed by name.
pub fn registry() -> BTreeMap<&'static str, Box<dyn RelationCheck>> {
    let checks: Vec<Box<dyn RelationCheck>> = vec![
        Box::new(HeisCheck),
        Box::new(QSeriesRoutes),
        Box::new(DeltaIdCheck),
        Box::new(vertexrel::OpeSameSign),
        Box::new(vertexrel::OpeMixedSign),
        Box::new(vertexrel::Lemma22),
        Box::new(vertexrel::Lemma23),
        Box::new(vertexrel::HeisFromPhiPsi),
        Box::new(vertexrel::PhiPhi),
        Box::new(vertexrel::PhiX),
        Box::new(vertexrel::PsiX),
        Box::new(vertexrel::Ortho),
        Box::new(vertexrel::XpXmAdj),
        Box::new(vertexrel::XpXmDiag),
        Box::new(vertexrel::XxOffdiag),
        Box::new(vertexrel::XxDiag),
        Box::new(km::KmAdjReg),
        Box::new(km::KmOffdiagReg),
        Box::new(km::KmRemark),
    ];
    checks.into_iter().map(|c| (c.name(), c)).collect()
}

/// Named suites: ordered lists of registered check names.
pub fn suites() -> BTreeMap<&'static str, Vec<&'static str>> {
    BTreeMap::from([
        ("heis", vec!["HEIS"]),
        ("qseries", vec!["QSERIES_ROUTES"]),
        ("delta", vec!["DELTA_ID"]),
        ("ope", vec!["OPE_PP", "OPE_PM"]),
        ("lemma22", vec!["LEMMA_2_2"]),
        ("lemma23", vec!["LEMMA_2_3", "HEIS_FROM_PHIPSI"]),
        (
            "thm24",
            vec![
                "PHI_PHI",
                "PHI_X",
                "PSI_X",
                "ORTHO",
                "XPXM_ADJ",
                "XPXM_DIAG",
                "XX_OFFDIAG",
                "XX_DIAG",
            ],
        ),
        (
            "thm44",
            vec![
                "OPE_PP",
                "OPE_PM",
                "PHI_PHI",
                "PHI_X",
                "PSI_X",
                "ORTHO",
                "KM_ADJ_REG",
                "XPXM_DIAG",
                "KM_OFFDIAG_REG",
                "XX_DIAG",
                "KM_REMARK",
            ],
        ),
    ])
}

/// Run a named suite; unknown names are an error.
pub fn run_suite(
    cfg: &FockConfig,
    suite: &str,
    window: &CheckWindow,
) -> Result<Vec<RelationReport>> {
    let names = suites()
        .remove(suite)
        .ok_or_else(|| crate::error::Error::InvalidConfig(format!("unknown suite '{suite}'")))?;
    let reg = registry();
    let mut out = Vec::new();
    for name in names {
        let check = reg
            .get(name)
            .ok_or_else(|| crate::error::Error::InvalidConfig(format!("unregistered check '{name}'")))?;
        out.push(check.run(cfg, window)?);
    }
    Ok(out)
}

/// Convenience: a symbolic configuration with the window's soundness cap.
pub fn config_for(lattice: std::sync::Arc<crate::lattice::Lattice>, ctx: ScalarCtx, window: &CheckWindow) -> FockConfig {
    FockConfig::new(lattice, ctx, window.cap())
}

/// Two-variable homogeneous polynomial as sparse `(z-exp, w-exp) -> RatFun`
/// terms; used to clear poles in the quadratic relations.
pub(crate) fn poly2_linear_product(
    factors: &[(crate::scalars::RatFun, crate::scalars::RatFun)],
) -> Vec<((i64, i64), crate::scalars::RatFun)> {
    // each factor is (c_z * z + c_w * w)
    let mut acc: Vec<((i64, i64), crate::scalars::RatFun)> =
        vec![((0, 0), crate::scalars::RatFun::one())];
    for (cz, cw) in factors {
        let mut next: BTreeMap<(i64, i64), crate::scalars::RatFun> = BTreeMap::new();
        for ((a, b), c) in &acc {
            for (da, db, f) in [(1i64, 0i64, cz), (0, 1, cw)] {
                if f.is_zero() {
                    continue;
                }
                let key = (a + da, b + db);
                let entry = next.entry(key).or_insert_with(crate::scalars::RatFun::zero);
                *entry = entry.add(&c.mul(f));
            }
        }
        acc = next
            .into_iter()
            .filter(|(_, c)| !c.is_zero())
            .collect();
    }
    acc
}
