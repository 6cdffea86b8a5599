//! The level-one Fock space: symmetric algebra on odd negative modes, one
//! color per lattice generator, tensored with the twisted group algebra.
//!
//! Central charge is fixed at gamma = q, so the oscillator contraction
//! `[a_i(m), a_j(-m)]` is the scalar `[(alpha_i|alpha_j) m][m]/(2m)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::lattice::{Cocycle, GroupAlgebraElement, Lattice, LatticeVector};
use crate::scalars::{BigRational, RatFun, ScalarCtx};

/// One oscillator `a_i(m)`, `m` odd and nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HeisenbergGenerator {
    pub color: usize,
    pub mode: i64,
}

impl HeisenbergGenerator {
    pub fn new(color: usize, mode: i64) -> Result<Self> {
        if mode == 0 || mode % 2 == 0 {
            return Err(Error::InvalidConfig(format!(
                "oscillator mode {mode} must be odd and nonzero"
            )));
        }
        Ok(Self { color, mode })
    }
}

/// Canonical basis monomial: per color, a descending multiset of odd
/// positive parts; tensored with a group-algebra letter.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FockState {
    /// `parts[i]` descending, all odd positive.
    pub parts: Vec<Vec<i64>>,
    pub group_part: GroupAlgebraElement,
}

impl FockState {
    pub fn degree(&self) -> i64 {
        self.parts.iter().flatten().sum()
    }
}

impl fmt::Display for FockState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (i, ps) in self.parts.iter().enumerate() {
            for p in ps {
                if wrote {
                    write!(f, " ")?;
                }
                write!(f, "a{}(-{})", i + 1, p)?;
                wrote = true;
            }
        }
        if !wrote {
            write!(f, "1")?;
        }
        write!(f, " ⊗ e{}", self.group_part.label)
    }
}

/// Sparse linear combination of [`FockState`]s over `RatFun`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FockVector {
    terms: BTreeMap<FockState, RatFun>,
}

impl FockVector {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_state(s: FockState) -> Self {
        let mut v = Self::zero();
        v.add_term(s, &RatFun::one());
        v
    }

    pub fn add_term(&mut self, s: FockState, c: &RatFun) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(s).or_insert_with(RatFun::zero);
        *entry = entry.add(c);
        if entry.is_zero() {
            // re-fetch key to remove; BTreeMap needs the key value
            let dead: Vec<_> = self
                .terms
                .iter()
                .filter(|(_, v)| v.is_zero())
                .map(|(k, _)| k.clone())
                .collect();
            for k in dead {
                self.terms.remove(&k);
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (s, c) in &other.terms {
            out.add_term(s.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&RatFun::from_i64(-1)))
    }

    pub fn scale(&self, c: &RatFun) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|(s, x)| (s.clone(), x.mul(c)))
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FockState, &RatFun)> {
        self.terms.iter()
    }

    pub fn coeff(&self, s: &FockState) -> RatFun {
        self.terms.get(s).cloned().unwrap_or_else(RatFun::zero)
    }

    /// Common degree of all terms; error when mixed.
    pub fn degree(&self) -> Result<Option<i64>> {
        let mut d = None;
        for s in self.terms.keys() {
            let sd = s.degree();
            match d {
                None => d = Some(sd),
                Some(x) if x != sd => return Err(Error::Inhomogeneous),
                _ => {}
            }
        }
        Ok(d)
    }
}

/// Deliberate single-point mutations used by the negative-control suite.
/// Every variant must flip at least one relation check from PASS to FAIL.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Perturbation {
    #[default]
    None,
    /// Replace the vertex exponential coefficient `±2 q^{∓n/2}/[n]` by `1/[n]`.
    VertexCoeff,
    /// Drop the `1/2` from the oscillator contraction scalar.
    HeisHalf,
    /// Force every cocycle sign to `+1`.
    CocycleSign,
}

/// Shared configuration: lattice, cocycle, scalar mode, degree cap.
#[derive(Clone, Debug)]
pub struct FockConfig {
    pub lattice: Arc<Lattice>,
    pub cocycle: Cocycle,
    pub ctx: ScalarCtx,
    /// Hard degree cap; operations that would create a state above it fail.
    pub cap: i64,
    pub perturbation: Perturbation,
}

impl FockConfig {
    pub fn new(lattice: Arc<Lattice>, ctx: ScalarCtx, cap: i64) -> Self {
        let cocycle = Cocycle::new(lattice.clone());
        Self {
            lattice,
            cocycle,
            ctx,
            cap,
            perturbation: Perturbation::None,
        }
    }

    pub fn with_perturbation(mut self, p: Perturbation) -> Self {
        self.perturbation = p;
        self
    }

    /// Group-algebra letter `a_i^{±1}`, routed through the perturbation.
    pub fn group_letter(
        &self,
        i: usize,
        invert: bool,
        e: &GroupAlgebraElement,
    ) -> Result<(i64, GroupAlgebraElement)> {
        let (s, out) = crate::lattice::t_action(&self.cocycle, i, invert, e)?;
        let s = if self.perturbation == Perturbation::CocycleSign {
            1
        } else {
            s
        };
        Ok((s, out))
    }

    pub fn vacuum_state(&self, beta: LatticeVector) -> FockState {
        FockState {
            parts: vec![Vec::new(); self.lattice.rank()],
            group_part: GroupAlgebraElement { label: beta },
        }
    }

    pub fn vacuum(&self, beta: LatticeVector) -> FockVector {
        FockVector::from_state(self.vacuum_state(beta))
    }

    /// Contraction scalar `[(alpha_i|alpha_j) m][m]/(2m)` for `m > 0`.
    pub fn contraction(&self, i: usize, j: usize, m: i64) -> RatFun {
        let g = self.lattice.gram(i, j);
        let den = if self.perturbation == Perturbation::HeisHalf {
            m
        } else {
            2 * m
        };
        self.ctx
            .qint(g * m)
            .mul(&self.ctx.qint(m))
            .scale_rational(&BigRational::new(BigInt::from(1), BigInt::from(den)))
    }

    /// Apply `a_i(m)` exactly.
    pub fn heis_apply(&self, g: HeisenbergGenerator, x: &FockVector) -> Result<FockVector> {
        if g.mode == 0 || g.mode % 2 == 0 {
            return Err(Error::InvalidConfig(format!(
                "oscillator mode {} must be odd and nonzero",
                g.mode
            )));
        }
        let mut out = FockVector::zero();
        for (s, c) in x.terms() {
            if g.mode < 0 {
                let n = -g.mode;
                let needed = s.degree() + n;
                if needed > self.cap {
                    return Err(Error::CapOverflow {
                        cap: self.cap,
                        needed,
                        context: format!("a_{}({})", g.color + 1, g.mode),
                    });
                }
                let mut t = s.clone();
                t.parts[g.color].push(n);
                t.parts[g.color].sort_unstable_by(|a, b| b.cmp(a));
                out.add_term(t, c);
            } else {
                // annihilation: one contraction per removable part
                for j in 0..self.lattice.rank() {
                    let mult = s.parts[j].iter().filter(|&&p| p == g.mode).count() as i64;
                    if mult == 0 {
                        continue;
                    }
                    let mut t = s.clone();
                    let pos = t.parts[j].iter().position(|&p| p == g.mode).unwrap();
                    t.parts[j].remove(pos);
                    let scalar = self
                        .contraction(g.color, j, g.mode)
                        .scale_rational(&BigRational::from_integer(BigInt::from(mult)));
                    out.add_term(t, &c.mul(&scalar));
                }
            }
        }
        Ok(out)
    }

    /// All canonical states of degree `d` with group part `e_beta`, in a
    /// deterministic order.
    pub fn basis(&self, d: i64, beta: &LatticeVector) -> Result<Vec<FockState>> {
        if d < 0 {
            return Err(Error::NegativeArgument(format!("basis degree {d}")));
        }
        let rank = self.lattice.rank();
        let mut out = Vec::new();
        let mut parts = vec![Vec::new(); rank];
        self.basis_rec(d, 0, &mut parts, beta, &mut out);
        Ok(out)
    }

    fn basis_rec(
        &self,
        remaining: i64,
        color: usize,
        parts: &mut Vec<Vec<i64>>,
        beta: &LatticeVector,
        out: &mut Vec<FockState>,
    ) {
        let rank = self.lattice.rank();
        if color == rank {
            if remaining == 0 {
                out.push(FockState {
                    parts: parts.clone(),
                    group_part: GroupAlgebraElement {
                        label: beta.clone(),
                    },
                });
            }
            return;
        }
        // odd partitions of each sub-sum into this color, parts descending
        let max_part = parts[color].last().copied().unwrap_or(i64::MAX);
        self.parts_rec(remaining, color, max_part, parts, beta, out);
    }

    fn parts_rec(
        &self,
        remaining: i64,
        color: usize,
        max_part: i64,
        parts: &mut Vec<Vec<i64>>,
        beta: &LatticeVector,
        out: &mut Vec<FockState>,
    ) {
        // close this color and move on
        let saved = parts[color].clone();
        self.basis_rec(remaining, color + 1, parts, beta, out);
        parts[color] = saved;
        let mut p = max_part.min(remaining);
        if p % 2 == 0 {
            p -= 1;
        }
        while p >= 1 {
            parts[color].push(p);
            self.parts_rec(remaining - p, color, p, parts, beta, out);
            parts[color].pop();
            p -= 2;
        }
    }
}
