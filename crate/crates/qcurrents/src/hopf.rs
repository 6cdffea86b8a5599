//! Symbolic Hopf-structure checks for the Drinfeld-type comultiplication:
//! coassociativity and the counit axioms on every generator, plus the
//! antipode displays as literal data.
//!
//! Arguments of generating functions are monomials
//! `v^{e0} Π_k v^{e_k c_k}` with `c_k` the central element of tensor slot
//! `k`; exponents are stored in `v = q^{1/2}` units so that `q^{c/2}` is
//! `e = 1`. Applying Δ inside a slot replaces that slot's `c` by the sum
//! of the two child slots' centrals — pure exponent bookkeeping.

use std::collections::BTreeMap;
use std::fmt;

/// Generator kinds; `One` marks an identity tensor slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Kind {
    XPlus,
    XMinus,
    Phi,
    Psi,
    C,
    One,
}

/// Formal argument `v^{e0} Π_k v^{cs[k] c_{k+1}} · z`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Arg {
    pub e0: i64,
    pub cs: Vec<i64>,
}

impl Arg {
    fn plain(arity: usize) -> Self {
        Self {
            e0: 0,
            cs: vec![0; arity],
        }
    }

    /// Remap slot exponents when slot `pos` splits into two child slots.
    fn split(&self, pos: usize) -> Self {
        let mut cs = Vec::with_capacity(self.cs.len() + 1);
        for (k, &e) in self.cs.iter().enumerate() {
            if k == pos {
                cs.push(e);
                cs.push(e);
            } else {
                cs.push(e);
            }
        }
        Self { e0: self.e0, cs }
    }

    fn bump(mut self, slot: usize, by: i64) -> Self {
        self.cs[slot] += by;
        self
    }
}

/// One generating-function symbol; `inverse` appears only in antipode data.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct GenSymbol {
    pub kind: Kind,
    pub color: usize,
    pub arg: Option<Arg>,
    pub inverse: bool,
}

impl GenSymbol {
    pub fn new(kind: Kind, color: usize) -> Self {
        let arg = match kind {
            Kind::C | Kind::One => None,
            _ => Some(Arg::plain(1)),
        };
        Self {
            kind,
            color,
            arg,
            inverse: false,
        }
    }

    fn one() -> Self {
        Self {
            kind: Kind::One,
            color: 0,
            arg: None,
            inverse: false,
        }
    }

    fn with_arg(kind: Kind, color: usize, arg: Arg) -> Self {
        Self {
            kind,
            color,
            arg: Some(arg),
            inverse: false,
        }
    }
}

fn render_arg(a: &Arg) -> String {
    let mut s = String::new();
    if a.e0 != 0 {
        s.push_str(&format!("v^{}", a.e0));
    }
    for (k, &e) in a.cs.iter().enumerate() {
        if e == 0 {
            continue;
        }
        let c = if a.cs.len() == 1 {
            "c".to_string()
        } else {
            format!("c_{}", k + 1)
        };
        let exp = match e {
            2 => c,
            -2 => format!("-{c}"),
            1 => format!("{c}/2"),
            -1 => format!("-{c}/2"),
            _ => format!("{e}{c}/2"),
        };
        s.push_str(&format!("q^{{{exp}}}"));
    }
    s.push('z');
    s
}

impl fmt::Display for GenSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let head = match self.kind {
            Kind::XPlus => format!("x+_{}", self.color + 1),
            Kind::XMinus => format!("x-_{}", self.color + 1),
            Kind::Phi => format!("phi_{}", self.color + 1),
            Kind::Psi => format!("psi_{}", self.color + 1),
            Kind::C => "c".to_string(),
            Kind::One => "1".to_string(),
        };
        match &self.arg {
            Some(a) => write!(f, "{head}({})", render_arg(a))?,
            None => write!(f, "{head}")?,
        }
        if self.inverse {
            write!(f, "^-1")?;
        }
        Ok(())
    }
}

/// One summand of a tensor expression: `coeff · s_1 ⊗ ... ⊗ s_r`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct TensorTerm {
    pub coeff: i64,
    pub slots: Vec<Vec<GenSymbol>>,
}

impl TensorTerm {
    /// Canonicalize: drop identity factors, sort each slot, keep empty
    /// slots as a single `1`.
    pub fn normalize(mut self) -> Self {
        for slot in &mut self.slots {
            slot.retain(|s| s.kind != Kind::One);
            slot.sort();
            if slot.is_empty() {
                slot.push(GenSymbol::one());
            }
        }
        self
    }
}

impl fmt::Display for TensorTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff != 1 {
            write!(f, "{}·", self.coeff)?;
        }
        let slots: Vec<String> = self
            .slots
            .iter()
            .map(|s| {
                s.iter()
                    .map(|g| g.to_string())
                    .collect::<Vec<_>>()
                    .join("·")
            })
            .collect();
        write!(f, "{}", slots.join(" ⊗ "))
    }
}

fn combine(terms: Vec<TensorTerm>) -> Vec<TensorTerm> {
    let mut map: BTreeMap<Vec<Vec<GenSymbol>>, i64> = BTreeMap::new();
    for t in terms {
        let t = t.normalize();
        *map.entry(t.slots).or_insert(0) += t.coeff;
    }
    map.into_iter()
        .filter(|(_, c)| *c != 0)
        .map(|(slots, coeff)| TensorTerm { coeff, slots })
        .collect()
}

/// Δ of one symbol sitting in slot `pos` of an arity-`r` expression:
/// returns the `(lo, hi)` child-slot contents in the arity-`r+1` indexing
/// (`lo = pos`, `hi = pos + 1`).
fn delta_symbol(sym: &GenSymbol, pos: usize) -> Vec<(i64, Vec<GenSymbol>, Vec<GenSymbol>)> {
    let lo = pos;
    let hi = pos + 1;
    let a = sym.arg.as_ref().map(|a| a.split(pos));
    match sym.kind {
        Kind::One => vec![(1, vec![], vec![])],
        Kind::C => vec![
            (1, vec![GenSymbol::new(Kind::C, 0)], vec![]),
            (1, vec![], vec![GenSymbol::new(Kind::C, 0)]),
        ],
        Kind::XPlus => {
            let a = a.unwrap();
            let i = sym.color;
            vec![
                (1, vec![GenSymbol::with_arg(Kind::XPlus, i, a.clone())], vec![]),
                (
                    1,
                    vec![GenSymbol::with_arg(Kind::Phi, i, a.clone().bump(lo, 1))],
                    vec![GenSymbol::with_arg(Kind::XPlus, i, a.bump(lo, 2))],
                ),
            ]
        }
        // the second factor must be ψ: coassociativity fails with φ there
        Kind::XMinus => {
            let a = a.unwrap();
            let i = sym.color;
            vec![
                (1, vec![], vec![GenSymbol::with_arg(Kind::XMinus, i, a.clone())]),
                (
                    1,
                    vec![GenSymbol::with_arg(Kind::XMinus, i, a.clone().bump(hi, 2))],
                    vec![GenSymbol::with_arg(Kind::Psi, i, a.bump(hi, 1))],
                ),
            ]
        }
        Kind::Phi => {
            let a = a.unwrap();
            let i = sym.color;
            vec![(
                1,
                vec![GenSymbol::with_arg(Kind::Phi, i, a.clone().bump(hi, -1))],
                vec![GenSymbol::with_arg(Kind::Phi, i, a.bump(lo, 1))],
            )]
        }
        Kind::Psi => {
            let a = a.unwrap();
            let i = sym.color;
            vec![(
                1,
                vec![GenSymbol::with_arg(Kind::Psi, i, a.clone().bump(hi, 1))],
                vec![GenSymbol::with_arg(Kind::Psi, i, a.bump(lo, -1))],
            )]
        }
    }
}

/// Δ of an entire slot (product of symbols) in slot `pos`.
fn delta_slot(slot: &[GenSymbol], pos: usize) -> Vec<(i64, Vec<GenSymbol>, Vec<GenSymbol>)> {
    let mut acc: Vec<(i64, Vec<GenSymbol>, Vec<GenSymbol>)> = vec![(1, vec![], vec![])];
    for sym in slot {
        let parts = delta_symbol(sym, pos);
        let mut next = Vec::new();
        for (c0, lo0, hi0) in &acc {
            for (c1, lo1, hi1) in &parts {
                let mut lo = lo0.clone();
                lo.extend(lo1.clone());
                let mut hi = hi0.clone();
                hi.extend(hi1.clone());
                next.push((c0 * c1, lo, hi));
            }
        }
        acc = next;
    }
    acc
}

fn remap_other_slot(slot: &[GenSymbol], split_pos: usize) -> Vec<GenSymbol> {
    slot.iter()
        .map(|s| {
            let mut s = s.clone();
            s.arg = s.arg.map(|a| a.split(split_pos));
            s
        })
        .collect()
}

/// Apply Δ to slot `pos` of every term, producing arity `r+1` terms.
fn apply_delta(terms: &[TensorTerm], pos: usize) -> Vec<TensorTerm> {
    let mut out = Vec::new();
    for t in terms {
        for (c, lo, hi) in delta_slot(&t.slots[pos], pos) {
            let mut slots = Vec::with_capacity(t.slots.len() + 1);
            for (k, s) in t.slots.iter().enumerate() {
                if k == pos {
                    slots.push(lo.clone());
                    slots.push(hi.clone());
                } else {
                    slots.push(remap_other_slot(s, pos));
                }
            }
            out.push(TensorTerm {
                coeff: t.coeff * c,
                slots,
            });
        }
    }
    combine(out)
}

/// The literal coproduct of a generator (arity-2 tensor terms).
pub fn coproduct(g: &GenSymbol) -> Vec<TensorTerm> {
    let top = TensorTerm {
        coeff: 1,
        slots: vec![vec![g.clone()]],
    };
    apply_delta(&[top], 0)
}

/// Result record for one Hopf axiom on one generator.
#[derive(Clone, Debug, serde::Serialize)]
pub struct HopfReport {
    pub axiom: String,
    pub generator: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mismatch: Option<String>,
}

impl HopfReport {
    pub fn passed(&self) -> bool {
        self.status == "PASS"
    }
}

fn render_terms(ts: &[TensorTerm]) -> String {
    if ts.is_empty() {
        return "0".to_string();
    }
    ts.iter()
        .map(|t| t.to_string())
        .collect::<Vec<_>>()
        .join(" + ")
}

/// `(Δ⊗id)Δ(g) == (id⊗Δ)Δ(g)` as canonical arity-3 sums.
pub fn coassoc_check(g: &GenSymbol) -> HopfReport {
    let base = coproduct(g);
    let left = apply_delta(&base, 0);
    let right = apply_delta(&base, 1);
    let (status, mismatch) = if left == right {
        ("PASS".to_string(), None)
    } else {
        (
            "FAIL".to_string(),
            Some(format!("{} ≠ {}", render_terms(&left), render_terms(&right))),
        )
    };
    HopfReport {
        axiom: "coassoc".to_string(),
        generator: g.to_string(),
        status,
        mismatch,
    }
}

/// ε on one symbol: `Some(1)` for grouplike/identity factors, `Some(0)`
/// for `x^±` and `c`.
fn counit_symbol(sym: &GenSymbol) -> i64 {
    match sym.kind {
        Kind::Phi | Kind::Psi | Kind::One => 1,
        // ε(q^c) = 1 with q generic forces ε(c) = 0; x^± are killed
        Kind::XPlus | Kind::XMinus | Kind::C => 0,
    }
}

/// Erase slot `pos` (after applying ε there) and zero its `c`-exponents in
/// the survivors.
fn apply_counit(terms: &[TensorTerm], pos: usize) -> Vec<TensorTerm> {
    let mut out = Vec::new();
    for t in terms {
        let eps: i64 = t.slots[pos].iter().map(counit_symbol).product();
        if eps == 0 {
            continue;
        }
        let mut slots = Vec::new();
        for (k, s) in t.slots.iter().enumerate() {
            if k == pos {
                continue;
            }
            let s: Vec<GenSymbol> = s
                .iter()
                .map(|g| {
                    let mut g = g.clone();
                    g.arg = g.arg.map(|mut a| {
                        a.cs.remove(pos);
                        // the erased slot's central acts as zero
                        a
                    });
                    g
                })
                .collect();
            slots.push(s);
        }
        out.push(TensorTerm {
            coeff: t.coeff * eps,
            slots,
        });
    }
    combine(out)
}

/// `(ε⊗id)Δ(g) == g == (id⊗ε)Δ(g)`.
pub fn counit_check(g: &GenSymbol) -> HopfReport {
    let base = coproduct(g);
    // the survivor keeps only the other slot's central, which must also be
    // zeroed to compare against the arity-1 generator
    let zero_cs = |ts: Vec<TensorTerm>| -> Vec<TensorTerm> {
        combine(
            ts.into_iter()
                .map(|mut t| {
                    for slot in &mut t.slots {
                        for s in slot.iter_mut() {
                            s.arg = s.arg.take().map(|mut a| {
                                for e in &mut a.cs {
                                    *e = 0;
                                }
                                a
                            });
                        }
                    }
                    t
                })
                .collect(),
        )
    };
    let left = zero_cs(apply_counit(&base, 0));
    let right = zero_cs(apply_counit(&base, 1));
    let expect = combine(vec![TensorTerm {
        coeff: 1,
        slots: vec![vec![g.clone()]],
    }]);
    let (status, mismatch) = if left == expect && right == expect {
        ("PASS".to_string(), None)
    } else {
        (
            "FAIL".to_string(),
            Some(format!(
                "(ε⊗id): {}; (id⊗ε): {}; expected {}",
                render_terms(&left),
                render_terms(&right),
                render_terms(&expect)
            )),
        )
    };
    HopfReport {
        axiom: "counit".to_string(),
        generator: g.to_string(),
        status,
        mismatch,
    }
}

/// One antipode display: `coeff · Π factors` (inverses allowed here only).
#[derive(Clone, Debug)]
pub struct AntipodeTerm {
    pub coeff: i64,
    pub factors: Vec<GenSymbol>,
}

impl fmt::Display for AntipodeTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeff == -1 {
            write!(f, "-")?;
        } else if self.coeff != 1 {
            write!(f, "{}·", self.coeff)?;
        }
        write!(
            f,
            "{}",
            self.factors
                .iter()
                .map(|g| g.to_string())
                .collect::<Vec<_>>()
                .join("·")
        )
    }
}

/// The literal antipode data of the five displays; never multiplied out.
pub fn antipode_table(g: &GenSymbol) -> AntipodeTerm {
    let i = g.color;
    let c_arg = |e: i64| Arg { e0: 0, cs: vec![e] };
    match g.kind {
        Kind::XPlus => AntipodeTerm {
            coeff: -1,
            factors: vec![
                GenSymbol::with_arg(Kind::Phi, i, c_arg(-1)),
                GenSymbol::with_arg(Kind::XPlus, i, c_arg(-2)),
            ],
        },
        Kind::XMinus => {
            let mut psi = GenSymbol::with_arg(Kind::Psi, i, c_arg(-1));
            psi.inverse = true;
            AntipodeTerm {
                coeff: -1,
                factors: vec![GenSymbol::with_arg(Kind::XMinus, i, c_arg(-2)), psi],
            }
        }
        Kind::Phi => {
            let mut phi = GenSymbol::new(Kind::Phi, i);
            phi.inverse = true;
            AntipodeTerm {
                coeff: 1,
                factors: vec![phi],
            }
        }
        Kind::Psi => {
            let mut psi = GenSymbol::new(Kind::Psi, i);
            psi.inverse = true;
            AntipodeTerm {
                coeff: 1,
                factors: vec![psi],
            }
        }
        Kind::C => AntipodeTerm {
            coeff: -1,
            factors: vec![GenSymbol::new(Kind::C, 0)],
        },
        Kind::One => AntipodeTerm {
            coeff: 1,
            factors: vec![GenSymbol::one()],
        },
    }
}

/// Every generator symbol of a rank-`rank` configuration.
pub fn generators(rank: usize) -> Vec<GenSymbol> {
    let mut out = Vec::new();
    for i in 0..rank {
        for kind in [Kind::XPlus, Kind::XMinus, Kind::Phi, Kind::Psi] {
            out.push(GenSymbol::new(kind, i));
        }
    }
    out.push(GenSymbol::new(Kind::C, 0));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coproduct_displays() {
        let phi = GenSymbol::new(Kind::Phi, 0);
        let d = coproduct(&phi);
        assert_eq!(d.len(), 1);
        assert_eq!(
            d[0].to_string(),
            "phi_1(q^{-c_2/2}z) ⊗ phi_1(q^{c_1/2}z)"
        );

        let xp = GenSymbol::new(Kind::XPlus, 0);
        let d = coproduct(&xp);
        assert_eq!(d.len(), 2);
        let rendered: Vec<String> = d.iter().map(|t| t.to_string()).collect();
        assert!(rendered.contains(&"x+_1(z) ⊗ 1".to_string()), "{rendered:?}");
        assert!(
            rendered.contains(&"phi_1(q^{c_1/2}z) ⊗ x+_1(q^{c_1}z)".to_string()),
            "{rendered:?}"
        );

        let c = GenSymbol::new(Kind::C, 0);
        let d = coproduct(&c);
        let rendered: Vec<String> = d.iter().map(|t| t.to_string()).collect();
        assert_eq!(rendered, vec!["c ⊗ 1".to_string(), "1 ⊗ c".to_string()]);
    }

    #[test]
    fn coassociativity_all_generators() {
        for g in generators(2) {
            let r = coassoc_check(&g);
            assert!(r.passed(), "{}: {:?}", r.generator, r.mismatch);
        }
    }

    #[test]
    fn counit_all_generators() {
        for g in generators(2) {
            let r = counit_check(&g);
            assert!(r.passed(), "{}: {:?}", r.generator, r.mismatch);
        }
    }

    #[test]
    fn coassoc_phi_three_slots() {
        let d = apply_delta(&coproduct(&GenSymbol::new(Kind::Phi, 0)), 0);
        assert_eq!(d.len(), 1);
        assert_eq!(
            d[0].to_string(),
            "phi_1(q^{-c_2/2}q^{-c_3/2}z) ⊗ phi_1(q^{c_1/2}q^{-c_3/2}z) ⊗ phi_1(q^{c_1/2}q^{c_2/2}z)"
        );
    }

    #[test]
    fn antipode_displays() {
        let s = |k: Kind| antipode_table(&GenSymbol::new(k, 0)).to_string();
        assert_eq!(s(Kind::XPlus), "-phi_1(q^{-c/2}z)·x+_1(q^{-c}z)");
        assert_eq!(s(Kind::XMinus), "-x-_1(q^{-c}z)·psi_1(q^{-c/2}z)^-1");
        assert_eq!(s(Kind::Phi), "phi_1(z)^-1");
        assert_eq!(s(Kind::Psi), "psi_1(z)^-1");
        assert_eq!(s(Kind::C), "-c");
    }

    #[test]
    fn normalization_idempotent() {
        let t = TensorTerm {
            coeff: 1,
            slots: vec![
                vec![GenSymbol::one(), GenSymbol::new(Kind::Phi, 1), GenSymbol::new(Kind::Phi, 0)],
                vec![],
            ],
        };
        let once = t.clone().normalize();
        let twice = once.clone().normalize();
        assert_eq!(once, twice);
        assert_eq!(once.slots[1], vec![GenSymbol::one()]);
    }
}
