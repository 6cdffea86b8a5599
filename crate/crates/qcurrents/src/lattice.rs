//! Integral lattices with symmetric pairing, the order-2 cocycle realizing
//! the sign commutation `a_i a_j = (-1)^{(alpha_i|alpha_j)} a_j a_i`, and the
//! twisted group algebra the vertex operators act through.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Integral lattice given by a Gram matrix with diagonal 2.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    rank: usize,
    gram: Vec<Vec<i64>>,
}

impl Lattice {
    pub fn new(gram: Vec<Vec<i64>>) -> Result<Self> {
        let rank = gram.len();
        if rank == 0 {
            return Err(Error::InvalidConfig("empty gram matrix".into()));
        }
        for (i, row) in gram.iter().enumerate() {
            if row.len() != rank {
                return Err(Error::InvalidConfig(format!(
                    "gram row {i} has length {}, expected {rank}",
                    row.len()
                )));
            }
            if row[i] != 2 {
                return Err(Error::InvalidConfig(format!(
                    "gram[{i}][{i}] = {} must be 2",
                    row[i]
                )));
            }
            for j in 0..rank {
                if gram[i][j] != gram[j][i] {
                    return Err(Error::InvalidConfig(format!(
                        "gram not symmetric at ({i},{j}): {} vs {}",
                        gram[i][j], gram[j][i]
                    )));
                }
            }
        }
        Ok(Self { rank, gram })
    }

    /// Look up a catalogued lattice by name.
    pub fn builtin(name: &str) -> Result<Self> {
        let gram: Vec<Vec<i64>> = match name {
            "A1" => vec![vec![2]],
            "A2" => vec![vec![2, -1], vec![-1, 2]],
            "A3" => vec![vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]],
            "D4" => vec![
                vec![2, -1, 0, 0],
                vec![-1, 2, -1, -1],
                vec![0, -1, 2, 0],
                vec![0, -1, 0, 2],
            ],
            "KM2_a1" => vec![vec![2, -1], vec![-1, 2]],
            "KM2_a2" => vec![vec![2, -2], vec![-2, 2]],
            "KM2_a3" => vec![vec![2, -3], vec![-3, 2]],
            _ => {
                return Err(Error::InvalidConfig(format!("unknown lattice '{name}'")));
            }
        };
        Self::new(gram)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn gram(&self, i: usize, j: usize) -> i64 {
        self.gram[i][j]
    }

    pub fn zero(&self) -> LatticeVector {
        LatticeVector {
            coords: vec![0; self.rank],
        }
    }

    pub fn simple_root(&self, i: usize) -> LatticeVector {
        let mut coords = vec![0; self.rank];
        coords[i] = 1;
        LatticeVector { coords }
    }

    /// `alpha^T gram beta`.
    pub fn pairing(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
        for v in [a, b] {
            if v.coords.len() != self.rank {
                return Err(Error::DimensionMismatch {
                    expected: self.rank,
                    got: v.coords.len(),
                });
            }
        }
        let mut acc = 0i64;
        for i in 0..self.rank {
            for j in 0..self.rank {
                acc += a.coords[i] * self.gram[i][j] * b.coords[j];
            }
        }
        Ok(acc)
    }
}

/// Element of the lattice in simple-root coordinates.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticeVector {
    pub coords: Vec<i64>,
}

impl LatticeVector {
    pub fn new(coords: Vec<i64>) -> Self {
        Self { coords }
    }

    pub fn add(&self, other: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }
}

impl fmt::Display for LatticeVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.coords.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Bimultiplicative sign function with
/// `eps(alpha_i, alpha_j) = (-1)^{gram[i][j]}` for `i > j` and `+1`
/// otherwise; satisfies `eps(a,b) eps(b,a) = (-1)^{(a|b)}` because the
/// diagonal pairing is even.
#[derive(Clone, Debug)]
pub struct Cocycle {
    lattice: Arc<Lattice>,
}

impl Cocycle {
    pub fn new(lattice: Arc<Lattice>) -> Self {
        Self { lattice }
    }

    pub fn lattice(&self) -> &Arc<Lattice> {
        &self.lattice
    }

    /// `eps(alpha, beta) in {+1, -1}`.
    pub fn sign(&self, a: &LatticeVector, b: &LatticeVector) -> Result<i64> {
        let l = &self.lattice;
        for v in [a, b] {
            if v.coords.len() != l.rank() {
                return Err(Error::DimensionMismatch {
                    expected: l.rank(),
                    got: v.coords.len(),
                });
            }
        }
        let mut exp = 0i64;
        for i in 0..l.rank() {
            for j in 0..i {
                exp += l.gram(i, j) * a.coords[i] * b.coords[j];
            }
        }
        Ok(if exp % 2 == 0 { 1 } else { -1 })
    }
}

/// Basis element `e_beta` of the twisted group algebra.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroupAlgebraElement {
    pub label: LatticeVector,
}

/// `a_i^{pm 1} . e_beta`, returning `(sign, e_{beta pm alpha_i})`.
///
/// The inverse is normalized so `a_i a_i^{-1} = id`:
/// `a_i^{-1} e_beta = eps(alpha_i, beta - alpha_i)^{-1} e_{beta - alpha_i}`.
pub fn t_action(
    c: &Cocycle,
    i: usize,
    invert: bool,
    e: &GroupAlgebraElement,
) -> Result<(i64, GroupAlgebraElement)> {
    let alpha = c.lattice().simple_root(i);
    if invert {
        let label = e.label.sub(&alpha);
        let s = c.sign(&alpha, &label)?;
        // eps is +-1, so its inverse is itself
        Ok((s, GroupAlgebraElement { label }))
    } else {
        let s = c.sign(&alpha, &e.label)?;
        Ok((
            s,
            GroupAlgebraElement {
                label: e.label.add(&alpha),
            },
        ))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a2() -> Arc<Lattice> {
        Arc::new(Lattice::builtin("A2").unwrap())
    }

    #[test]
    fn builtin_pairings() {
        let a1 = Lattice::builtin("A1").unwrap();
        let r = a1.simple_root(0);
        assert_eq!(a1.pairing(&r, &r).unwrap(), 2);

        let a2 = Lattice::builtin("A2").unwrap();
        assert_eq!(
            a2.pairing(&a2.simple_root(0), &a2.simple_root(1)).unwrap(),
            -1
        );
        assert_eq!(a2.pairing(&a2.zero(), &a2.simple_root(1)).unwrap(), 0);

        let km = Lattice::builtin("KM2_a3").unwrap();
        assert_eq!(
            km.pairing(&km.simple_root(0), &km.simple_root(1)).unwrap(),
            -3
        );
    }

    #[test]
    fn invalid_grams_rejected() {
        assert!(Lattice::new(vec![vec![2, -1], vec![0, 2]]).is_err());
        assert!(Lattice::new(vec![vec![1]]).is_err());
        assert!(Lattice::new(vec![]).is_err());
        assert!(Lattice::builtin("E8").is_err());
    }

    #[test]
    fn cocycle_commutator_on_a2_roots() {
        let c = Cocycle::new(a2());
        let r0 = c.lattice().simple_root(0);
        let r1 = c.lattice().simple_root(1);
        let prod = c.sign(&r0, &r1).unwrap() * c.sign(&r1, &r0).unwrap();
        assert_eq!(prod, -1);
        assert_eq!(c.sign(&c.lattice().zero(), &r1).unwrap(), 1);
        // eps(a1+a2, a1) = eps(a1,a1) eps(a2,a1) = (-1)^{(a2|a1)} = -1
        assert_eq!(c.sign(&r0.add(&r1), &r0).unwrap(), -1);
    }

    #[test]
    fn t_action_basics() {
        let c = Cocycle::new(a2());
        let e0 = GroupAlgebraElement {
            label: c.lattice().zero(),
        };
        let (s, e) = t_action(&c, 0, false, &e0).unwrap();
        assert_eq!(s, 1);
        assert_eq!(e.label, c.lattice().simple_root(0));

        // a1 a2 e0 vs a2 a1 e0 differ by the commutator sign
        let (s2, e12) = t_action(&c, 0, false, &t_action(&c, 1, false, &e0).unwrap().1).unwrap();
        let (s1, e21) = t_action(&c, 1, false, &t_action(&c, 0, false, &e0).unwrap().1).unwrap();
        let pre12 = t_action(&c, 1, false, &e0).unwrap().0 * s2;
        let pre21 = t_action(&c, 0, false, &e0).unwrap().0 * s1;
        assert_eq!(e12.label, e21.label);
        assert_eq!(pre12, -pre21);
    }

    #[test]
    fn t_action_inverse_normalization() {
        let c = Cocycle::new(a2());
        for coords in [[0, 0], [1, -2], [-1, 1], [2, 2]] {
            let e = GroupAlgebraElement {
                label: LatticeVector::new(coords.to_vec()),
            };
            for i in 0..2 {
                let (s1, mid) = t_action(&c, i, true, &e).unwrap();
                let (s2, back) = t_action(&c, i, false, &mid).unwrap();
                assert_eq!(s1 * s2, 1, "a_{i} a_{i}^-1 on {:?}", coords);
                assert_eq!(back.label, e.label);
                let (s1, mid) = t_action(&c, i, false, &e).unwrap();
                let (s2, back) = t_action(&c, i, true, &mid).unwrap();
                assert_eq!(s1 * s2, 1);
                assert_eq!(back.label, e.label);
            }
        }
    }

    proptest! {
        #[test]
        fn cocycle_bimultiplicative_and_commutator(
            name in prop::sample::select(vec!["A1", "A2", "A3", "D4", "KM2_a2", "KM2_a3"]),
            seed in proptest::collection::vec(-3i64..=3, 12),
        ) {
            let lat = Arc::new(Lattice::builtin(name).unwrap());
            let r = lat.rank();
            let a = LatticeVector::new(seed[..r].to_vec());
            let b = LatticeVector::new(seed[4..4 + r].to_vec());
            let c = LatticeVector::new(seed[8..8 + r].to_vec());
            let eps = Cocycle::new(lat.clone());
            prop_assert_eq!(
                eps.sign(&a.add(&b), &c).unwrap(),
                eps.sign(&a, &c).unwrap() * eps.sign(&b, &c).unwrap()
            );
            prop_assert_eq!(
                eps.sign(&a, &b.add(&c)).unwrap(),
                eps.sign(&a, &b).unwrap() * eps.sign(&a, &c).unwrap()
            );
            let pairing = lat.pairing(&a, &b).unwrap();
            let expect = if pairing % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(
                eps.sign(&a, &b).unwrap() * eps.sign(&b, &a).unwrap(),
                expect
            );
        }

        #[test]
        fn t_action_group_law(
            seed in proptest::collection::vec(-2i64..=2, 3),
            i in 0usize..3,
            j in 0usize..3,
        ) {
            let lat = Arc::new(Lattice::builtin("A3").unwrap());
            let eps = Cocycle::new(lat.clone());
            let e = GroupAlgebraElement { label: LatticeVector::new(seed) };
            let (si, ei) = t_action(&eps, i, false, &e).unwrap();
            let (sij, eij) = t_action(&eps, j, false, &ei).unwrap();
            let (sj, ej) = t_action(&eps, j, false, &e).unwrap();
            let (sji, eji) = t_action(&eps, i, false, &ej).unwrap();
            prop_assert_eq!(eij.label.clone(), eji.label);
            let pairing = lat.pairing(&lat.simple_root(i), &lat.simple_root(j)).unwrap();
            let comm = if pairing % 2 == 0 { 1 } else { -1 };
            prop_assert_eq!(si * sij, comm * sj * sji);
        }
    }
}
