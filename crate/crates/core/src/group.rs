//! Finite abelian groups presented as a direct product of cyclic factors
//! Z_{n_1} x ... x Z_{n_s}, with coordinate-wise arithmetic, lexicographic
//! element enumeration and mixed-radix ranking.
//!
//! Any list of positive moduli is accepted, including factors equal to 1;
//! the presentation is taken literally, so (2,3) and (6) are distinct specs
//! even though the groups are isomorphic.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// A finite abelian group given by its cyclic moduli (n_1, ..., n_s).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupSpec {
    moduli: Vec<u64>,
    order: u64,
}

/// An element (b_1, ..., b_s) with 0 <= b_i < n_i.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement {
    residues: Vec<u64>,
}

impl GroupSpec {
    /// Builds a spec from its moduli. Requires at least one factor, all
    /// factors >= 1, and a group order that fits in `u64`.
    pub fn new(moduli: Vec<u64>) -> Result<Self> {
        if moduli.is_empty() {
            return Err(Error::EmptyModuli);
        }
        let mut order: u64 = 1;
        for (index, &m) in moduli.iter().enumerate() {
            if m == 0 {
                return Err(Error::ZeroModulus { index });
            }
            order = order.checked_mul(m).ok_or(Error::OrderOverflow)?;
        }
        Ok(GroupSpec { moduli, order })
    }

    /// Cyclic group Z_m.
    pub fn cyclic(m: u64) -> Result<Self> {
        Self::new(vec![m])
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// Number of cyclic factors s.
    pub fn arity(&self) -> usize {
        self.moduli.len()
    }

    /// Group order n = n_1 * ... * n_s.
    pub fn order(&self) -> u64 {
        self.order
    }

    /// The all-zero element.
    pub fn identity(&self) -> GroupElement {
        GroupElement {
            residues: vec![0; self.moduli.len()],
        }
    }

    /// Builds an element from already-reduced residues, validating arity and
    /// ranges.
    pub fn element(&self, residues: Vec<u64>) -> Result<GroupElement> {
        if residues.len() != self.moduli.len() {
            return Err(Error::ArityMismatch {
                expected: self.moduli.len(),
                got: residues.len(),
            });
        }
        for (index, (&r, &m)) in residues.iter().zip(&self.moduli).enumerate() {
            if r >= m {
                return Err(Error::ResidueOutOfRange {
                    index,
                    residue: r,
                    modulus: m,
                });
            }
        }
        Ok(GroupElement { residues })
    }

    /// Reduces arbitrary integer coordinates into [0, n_i) with the true
    /// mathematical modulus, so negative inputs land on nonnegative residues.
    pub fn canonicalize(&self, raw: &[i64]) -> Result<GroupElement> {
        if raw.len() != self.moduli.len() {
            return Err(Error::ArityMismatch {
                expected: self.moduli.len(),
                got: raw.len(),
            });
        }
        let residues = raw
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (x as i128).rem_euclid(m as i128) as u64)
            .collect();
        Ok(GroupElement { residues })
    }

    /// Coordinate-wise sum modulo the factor moduli.
    pub fn add(&self, a: &GroupElement, b: &GroupElement) -> Result<GroupElement> {
        self.check(a)?;
        self.check(b)?;
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.moduli)
            .map(|((&x, &y), &m)| {
                // x, y < m <= u64::MAX; add in u128 to dodge overflow.
                ((x as u128 + y as u128) % m as u128) as u64
            })
            .collect();
        Ok(GroupElement { residues })
    }

    /// Validates that `e` is a well-formed element of this group.
    pub fn check(&self, e: &GroupElement) -> Result<()> {
        if e.residues.len() != self.moduli.len() {
            return Err(Error::ArityMismatch {
                expected: self.moduli.len(),
                got: e.residues.len(),
            });
        }
        for (index, (&r, &m)) in e.residues.iter().zip(&self.moduli).enumerate() {
            if r >= m {
                return Err(Error::ResidueOutOfRange {
                    index,
                    residue: r,
                    modulus: m,
                });
            }
        }
        Ok(())
    }

    /// All n elements in ascending lexicographic order of residue vectors.
    pub fn elements(&self) -> impl Iterator<Item = GroupElement> + '_ {
        (0..self.order).map(move |r| self.element_at(r))
    }

    /// Lexicographic rank of an element (mixed-radix encoding, first
    /// coordinate most significant).
    pub fn element_rank(&self, e: &GroupElement) -> Result<u64> {
        self.check(e)?;
        let mut rank: u64 = 0;
        for (&r, &m) in e.residues.iter().zip(&self.moduli) {
            rank = rank * m + r;
        }
        Ok(rank)
    }

    /// Inverse of [`element_rank`](Self::element_rank). Panics if
    /// `rank >= order`.
    pub fn element_at(&self, rank: u64) -> GroupElement {
        assert!(
            rank < self.order,
            "rank {rank} out of range 0..{}",
            self.order
        );
        let mut residues = vec![0u64; self.moduli.len()];
        let mut rest = rank;
        for (slot, &m) in residues.iter_mut().zip(&self.moduli).rev() {
            *slot = rest % m;
            rest /= m;
        }
        GroupElement { residues }
    }

    /// The group sum of all n elements.
    ///
    /// Each coordinate sums independently: sum over b_i of all elements is
    /// (n / n_i) * n_i * (n_i - 1) / 2 mod n_i.
    pub fn total_sum(&self) -> GroupElement {
        let residues = self
            .moduli
            .iter()
            .map(|&m| {
                let copies = (self.order / m) as u128;
                let coord_total = copies * (m as u128 * (m as u128 - 1) / 2);
                (coord_total % m as u128) as u64
            })
            .collect();
        GroupElement { residues }
    }

    /// Coordinate-wise negation; the additive inverse of `e`.
    pub fn negate(&self, e: &GroupElement) -> Result<GroupElement> {
        self.check(e)?;
        let residues = e
            .residues
            .iter()
            .zip(&self.moduli)
            .map(|(&r, &m)| if r == 0 { 0 } else { m - r })
            .collect();
        Ok(GroupElement { residues })
    }
}

impl GroupElement {
    pub fn residues(&self) -> &[u64] {
        &self.residues
    }
}

/// Text form: comma-separated positive integers, e.g. "4" or "2,2,3".
impl FromStr for GroupSpec {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        let moduli = s
            .split(',')
            .map(|tok| {
                tok.trim()
                    .parse::<u64>()
                    .map_err(|_| format!("invalid modulus {tok:?}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        GroupSpec::new(moduli).map_err(|e| e.to_string())
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.moduli.iter().map(|m| m.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

/// Text form: comma-separated residues, e.g. "0" or "1,2".
impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|r| r.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(moduli: &[u64]) -> GroupSpec {
        GroupSpec::new(moduli.to_vec()).unwrap()
    }

    #[test]
    fn construction_validates() {
        assert_eq!(GroupSpec::new(vec![]), Err(Error::EmptyModuli));
        assert_eq!(
            GroupSpec::new(vec![2, 0]),
            Err(Error::ZeroModulus { index: 1 })
        );
        assert_eq!(GroupSpec::new(vec![u64::MAX, 2]), Err(Error::OrderOverflow));
        assert_eq!(spec(&[2, 3]).order(), 6);
        assert_eq!(spec(&[1]).order(), 1);
    }

    #[test]
    fn canonicalize_cases() {
        assert_eq!(spec(&[4]).canonicalize(&[7]).unwrap().residues(), &[3]);
        assert_eq!(
            spec(&[2, 3]).canonicalize(&[-1, 5]).unwrap().residues(),
            &[1, 2]
        );
        assert_eq!(spec(&[1]).canonicalize(&[42]).unwrap().residues(), &[0]);
        assert_eq!(
            spec(&[2, 3]).canonicalize(&[1]),
            Err(Error::ArityMismatch {
                expected: 2,
                got: 1
            })
        );
    }

    #[test]
    fn add_cases() {
        let z4 = spec(&[4]);
        let sum = z4
            .add(&z4.element(vec![3]).unwrap(), &z4.element(vec![2]).unwrap())
            .unwrap();
        assert_eq!(sum.residues(), &[1]);

        let z22 = spec(&[2, 2]);
        let sum = z22
            .add(
                &z22.element(vec![1, 0]).unwrap(),
                &z22.element(vec![1, 1]).unwrap(),
            )
            .unwrap();
        assert_eq!(sum.residues(), &[0, 1]);

        for x in z4.elements() {
            assert_eq!(z4.add(&x, &z4.identity()).unwrap(), x);
        }

        assert!(z4.add(&z4.identity(), &z22.identity()).is_err());
    }

    #[test]
    fn elements_order_and_rank() {
        let z22 = spec(&[2, 2]);
        let got: Vec<Vec<u64>> = z22.elements().map(|e| e.residues().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);

        let z3 = spec(&[3]);
        let got: Vec<Vec<u64>> = z3.elements().map(|e| e.residues().to_vec()).collect();
        assert_eq!(got, vec![vec![0], vec![1], vec![2]]);

        let z11 = spec(&[1, 1]);
        let got: Vec<Vec<u64>> = z11.elements().map(|e| e.residues().to_vec()).collect();
        assert_eq!(got, vec![vec![0, 0]]);

        let s = spec(&[2, 3, 4]);
        for (i, e) in s.elements().enumerate() {
            assert_eq!(s.element_rank(&e).unwrap(), i as u64);
            assert_eq!(s.element_at(i as u64), e);
        }
    }

    #[test]
    fn total_sum_cases() {
        assert_eq!(spec(&[3]).total_sum().residues(), &[0]);
        assert_eq!(spec(&[4]).total_sum().residues(), &[2]);
        assert_eq!(spec(&[2, 2]).total_sum().residues(), &[0, 0]);
    }

    #[test]
    fn total_sum_matches_folds_in_both_orders() {
        for moduli in [
            vec![1],
            vec![5],
            vec![6],
            vec![2, 2],
            vec![2, 3],
            vec![4, 3],
            vec![2, 2, 3],
        ] {
            let s = GroupSpec::new(moduli).unwrap();
            let forward = s
                .elements()
                .fold(s.identity(), |acc, e| s.add(&acc, &e).unwrap());
            let backward = s
                .elements()
                .collect::<Vec<_>>()
                .into_iter()
                .rev()
                .fold(s.identity(), |acc, e| s.add(&acc, &e).unwrap());
            assert_eq!(forward, s.total_sum());
            assert_eq!(backward, s.total_sum());
        }
    }

    #[test]
    fn negate_is_inverse() {
        let s = spec(&[4, 3]);
        for e in s.elements() {
            let inv = s.negate(&e).unwrap();
            assert_eq!(s.add(&e, &inv).unwrap(), s.identity());
        }
    }

    #[test]
    fn parse_and_display_round_trip() {
        let s: GroupSpec = "2,2,3".parse().unwrap();
        assert_eq!(s.moduli(), &[2, 2, 3]);
        assert_eq!(s.to_string(), "2,2,3");
        assert_eq!("4".parse::<GroupSpec>().unwrap().moduli(), &[4]);
        assert!("".parse::<GroupSpec>().is_err());
        assert!("2,0".parse::<GroupSpec>().is_err());
        assert!("2,x".parse::<GroupSpec>().is_err());

        let e = s.element(vec![1, 0, 2]).unwrap();
        assert_eq!(e.to_string(), "1,0,2");
    }
}
