use std::collections::BTreeMap;

use super::qpow;
use crate::error::{Error, Result};
use crate::scalars::{RatFun, ScalarCtx, TruncSeries};

/// Rectangular exponent window `[zmin, zmax] x [wmin, wmax]`.
///
/// Every two-variable operation carries its window explicitly; coefficients
/// inside the window are exact, nothing is claimed outside it.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub zmin: i64,
    pub zmax: i64,
    pub wmin: i64,
    pub wmax: i64,
}

impl Window {
    pub fn square(n: i64) -> Self {
        Self {
            zmin: -n,
            zmax: n,
            wmin: -n,
            wmax: n,
        }
    }

    pub fn contains(&self, p: (i64, i64)) -> bool {
        p.0 >= self.zmin && p.0 <= self.zmax && p.1 >= self.wmin && p.1 <= self.wmax
    }
}

/// Sparse two-variable coefficient table on a window.
#[derive(Clone, Debug)]
pub struct TwoVarDist {
    pub window: Window,
    map: BTreeMap<(i64, i64), RatFun>,
}

impl TwoVarDist {
    pub fn zero(window: Window) -> Self {
        Self {
            window,
            map: BTreeMap::new(),
        }
    }

    pub fn get(&self, p: (i64, i64)) -> RatFun {
        self.map.get(&p).cloned().unwrap_or_else(RatFun::zero)
    }

    pub fn insert_add(&mut self, p: (i64, i64), c: &RatFun) {
        if !self.window.contains(p) || c.is_zero() {
            return;
        }
        let entry = self.map.entry(p).or_insert_with(RatFun::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            self.map.remove(&p);
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (p, c) in &other.map {
            out.insert_add(*p, &c.neg());
        }
        out
    }

    pub fn iter(&self) -> impl Iterator<Item = ((i64, i64), &RatFun)> {
        self.map.iter().map(|(p, c)| (*p, c))
    }

    pub fn is_zero(&self) -> bool {
        self.map.is_empty()
    }

    /// First slot (in lexicographic order) where the two tables differ on
    /// the intersection of their windows.
    pub fn first_mismatch(&self, other: &Self) -> Option<((i64, i64), RatFun, RatFun)> {
        let zmin = self.window.zmin.max(other.window.zmin);
        let zmax = self.window.zmax.min(other.window.zmax);
        let wmin = self.window.wmin.max(other.window.wmin);
        let wmax = self.window.wmax.min(other.window.wmax);
        for z in zmin..=zmax {
            for w in wmin..=wmax {
                let a = self.get((z, w));
                let b = other.get((z, w));
                if a != b {
                    return Some(((z, w), a, b));
                }
            }
        }
        None
    }
}

/// Expansion region for two-variable kernels.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Region {
    /// `|z| >> |w|`: series in `w/z`.
    ZDominant,
    /// `|w| >> |z|`: series in `z/w`.
    WDominant,
}

/// Catalogue of region-expandable kernels.
#[derive(Clone, Debug)]
pub enum Kernel {
    /// Homogeneous polynomial `sum c * z^p w^r` (all terms of equal total
    /// degree).
    Poly(Vec<((i64, i64), RatFun)>),
    /// `(z - a w)^{-1}` for a nonzero monomial `a`.
    LinInv { a: RatFun },
    /// `(z - w)^r_{q^2}`.
    QPowDiff { r: i64 },
    /// `(z + w)^r_{q^2}`.
    QPowSum { r: i64 },
    Product(Vec<Kernel>),
}

/// Homogeneous one-variable normal form of a region expansion: the kernel
/// equals `D^degree * series(x)` where `D` is the dominant variable and `x`
/// the subordinate ratio.
struct Expansion {
    degree: i64,
    series: TruncSeries,
}

fn expand(ctx: &ScalarCtx, kernel: &Kernel, region: Region, order: usize) -> Result<Expansion> {
    match kernel {
        Kernel::Poly(terms) => {
            if terms.is_empty() {
                return Err(Error::UnsupportedKernel("empty polynomial".into()));
            }
            let degree = terms[0].0 .0 + terms[0].0 .1;
            let mut xs = Vec::new();
            for ((p, r), c) in terms {
                if p + r != degree {
                    return Err(Error::UnsupportedKernel(
                        "inhomogeneous polynomial kernel".into(),
                    ));
                }
                // z^p w^r = z^{p+r} (w/z)^r = w^{p+r} (z/w)^p
                let xe = match region {
                    Region::ZDominant => *r,
                    Region::WDominant => *p,
                };
                xs.push((xe, c.clone()));
            }
            Ok(Expansion {
                degree,
                series: TruncSeries::from_terms(&xs, order as i64),
            })
        }
        Kernel::LinInv { a } => {
            if a.is_zero() || a.as_monomial().is_none() {
                return Err(Error::UnsupportedKernel("(z-aw)^-1 needs monomial a".into()));
            }
            let mut terms = Vec::with_capacity(order + 1);
            match region {
                Region::ZDominant => {
                    // z^-1 sum a^k x^k
                    let mut p = RatFun::one();
                    for k in 0..=order as i64 {
                        terms.push((k, p.clone()));
                        p = p.mul(a);
                    }
                }
                Region::WDominant => {
                    // -(aw)^-1 sum a^-k x^k
                    let ainv = a.recip()?;
                    let mut p = ainv.neg();
                    for k in 0..=order as i64 {
                        terms.push((k, p.clone()));
                        p = p.mul(&ainv);
                    }
                }
            }
            Ok(Expansion {
                degree: -1,
                series: TruncSeries::from_terms(&terms, order as i64),
            })
        }
        Kernel::QPowDiff { r } => {
            let base = qpow(ctx, *r, order);
            let series = match region {
                // z^r * qpow(r)(w/z)
                Region::ZDominant => base,
                // (-w)^r * qpow(r)(z/w)
                Region::WDominant => {
                    if r % 2 == 0 {
                        base
                    } else {
                        base.neg()
                    }
                }
            };
            Ok(Expansion { degree: *r, series })
        }
        Kernel::QPowSum { r } => {
            // symmetric in z, w: D^r * qpow(r)(-x) in either region
            let series = qpow(ctx, *r, order).compose_scale(&RatFun::from_i64(-1));
            Ok(Expansion { degree: *r, series })
        }
        Kernel::Product(factors) => {
            if factors.is_empty() {
                return Err(Error::UnsupportedKernel("empty product".into()));
            }
            let mut acc: Option<Expansion> = None;
            for f in factors {
                let e = expand(ctx, f, region, order)?;
                acc = Some(match acc {
                    None => e,
                    Some(a) => Expansion {
                        degree: a.degree + e.degree,
                        series: a.series.mul(&e.series).truncate_to(order as i64),
                    },
                });
            }
            Ok(acc.unwrap())
        }
    }
}

fn kernel_degree(kernel: &Kernel) -> Result<i64> {
    match kernel {
        Kernel::Poly(terms) => terms
            .first()
            .map(|((p, r), _)| p + r)
            .ok_or_else(|| Error::UnsupportedKernel("empty polynomial".into())),
        Kernel::LinInv { .. } => Ok(-1),
        Kernel::QPowDiff { r } | Kernel::QPowSum { r } => Ok(*r),
        Kernel::Product(factors) => factors.iter().map(kernel_degree).sum(),
    }
}

/// Expand a catalogued kernel in the requested region onto a window.
pub fn region_expand(
    ctx: &ScalarCtx,
    kernel: &Kernel,
    region: Region,
    window: Window,
) -> Result<TwoVarDist> {
    // Entries sit at (d-k, k) or (k, d-k); only orders reaching the window
    // are computed.
    let d = kernel_degree(kernel)?;
    let order = match region {
        Region::ZDominant => window.wmax.min(d - window.zmin),
        Region::WDominant => window.zmax.min(d - window.wmin),
    }
    .max(0) as usize;
    let e = expand(ctx, kernel, region, order)?;
    let mut out = TwoVarDist::zero(window);
    for k in 0..=order as i64 {
        let c = e.series.coeff_checked(k);
        if c.is_zero() {
            continue;
        }
        let p = match region {
            Region::ZDominant => (e.degree - k, k),
            Region::WDominant => (k, e.degree - k),
        };
        out.insert_add(p, &c);
    }
    Ok(out)
}

/// `delta(alpha w / z) = sum_n alpha^n w^n z^{-n}` for a nonzero monomial
/// `alpha`.
pub fn delta(alpha: &RatFun, window: Window) -> Result<TwoVarDist> {
    if alpha.is_zero() {
        return Err(Error::UnsupportedKernel("delta with zero shift".into()));
    }
    alpha
        .as_monomial()
        .ok_or_else(|| Error::UnsupportedKernel("delta shift must be a monomial".into()))?;
    let mut out = TwoVarDist::zero(window);
    for n in window.wmin..=window.wmax {
        let p = (-n, n);
        if window.contains(p) {
            out.insert_add(p, &alpha.pow(n)?);
        }
    }
    Ok(out)
}

/// `delta(z - w) = sum_m z^m w^{-m-1}` (the convention forced by the
/// `n = 0` divided-power identity).
pub fn delta_zw(window: Window) -> TwoVarDist {
    let mut out = TwoVarDist::zero(window);
    for m in window.zmin..=window.zmax {
        out.insert_add((m, -m - 1), &RatFun::one());
    }
    out
}

/// Divided power `(1/[n]!) d_q^n` applied to `delta(z - w)` in `w`.
///
/// `d_q w^k = [k] w^{k-1}`, so the slot `(m, -m-1-n)` carries
/// `[-m-1][-m-2]...[-m-n] / [n]!`.
pub fn qdiff_delta(ctx: &ScalarCtx, n: i64, window: Window) -> Result<TwoVarDist> {
    let norm = ctx.qfactorial(n)?.recip()?;
    qdiff_delta_with_norm(ctx, n, &norm, window)
}

/// Same as [`qdiff_delta`] but with an explicit normalization in place of
/// `1/[n]!` (used by the negative-control checks).
pub fn qdiff_delta_with_norm(
    ctx: &ScalarCtx,
    n: i64,
    norm: &RatFun,
    window: Window,
) -> Result<TwoVarDist> {
    if n < 0 {
        return Err(Error::NegativeArgument(format!("qdiff_delta({n})")));
    }
    let mut out = TwoVarDist::zero(window);
    for m in window.zmin..=window.zmax {
        let mut c = norm.clone();
        for t in 1..=n {
            c = c.mul(&ctx.qint(-m - t));
        }
        out.insert_add((m, -m - 1 - n), &c);
    }
    Ok(out)
}

/// Outcome of the divided-power delta identity check.
#[derive(Clone, Debug)]
pub struct DeltaCheck {
    pub order: i64,
    pub pass: bool,
    pub witness: Option<((i64, i64), RatFun, RatFun)>,
}

/// Verify `i_{z,w}(z-w)^{-n-1}_{q^2} - i_{w,z}(z-w)^{-n-1}_{q^2}
/// = d_{q,w}^{(n)} delta(z-w)` on the window.
pub fn check_delta_identity(ctx: &ScalarCtx, n: i64, window: Window) -> Result<DeltaCheck> {
    let kernel = Kernel::QPowDiff { r: -n - 1 };
    let lhs = region_expand(ctx, &kernel, Region::ZDominant, window)?
        .sub(&region_expand(ctx, &kernel, Region::WDominant, window)?);
    let rhs = qdiff_delta(ctx, n, window)?;
    let witness = lhs.first_mismatch(&rhs);
    Ok(DeltaCheck {
        order: n,
        pass: witness.is_none(),
        witness,
    })
}
