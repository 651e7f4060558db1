//! Exact subset-sum counting over a finite abelian group.
//!
//! For a group G = Z_{n_1} x ... x Z_{n_s} of order n, the number of
//! k-element subsets of G whose elements sum to b is
//!
//! ```text
//! N(k, b) = (1/n) * sum over r | gcd(n, k) of
//!           (-1)^(k + k/r) * C(n/r, k/r) * Phi(r, b)
//! ```
//!
//! where the divisor weight is
//!
//! ```text
//! Phi(r, b) = sum over d | r with gcd(n_i, d) | b_i for all i of
//!             mu(r/d) * prod over i of gcd(n_i, d)
//! ```
//!
//! and mu is the Moebius function. All arithmetic is exact: terms are
//! accumulated as signed big integers, and the final division by n asserts
//! divisibility (a remainder would mean an implementation bug, so it is a
//! hard panic rather than a user-facing error).

use num_bigint::{BigInt, Sign};
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::{binomial, divisors, gcd, moebius, Count, SignedCount};

/// The divisor weight Phi(r, b).
///
/// Total on r >= 1; the divisibility test gcd(n_i, d) | b_i treats b_i = 0
/// as divisible by everything.
pub fn divisor_weight(spec: &GroupSpec, r: u64, b: &GroupElement) -> Result<SignedCount> {
    if r == 0 {
        return Err(Error::ZeroArgument {
            op: "divisor_weight",
        });
    }
    spec.check(b)?;
    let mut total = SignedCount::zero();
    for d in divisors(r)? {
        let mu = moebius(r / d)?;
        if mu == 0 {
            continue;
        }
        let mut product: u64 = 1;
        let mut admissible = true;
        for (&m, &residue) in spec.moduli().iter().zip(b.residues()) {
            let g = gcd(m, d);
            if residue % g != 0 {
                admissible = false;
                break;
            }
            product *= g; // bounded by the group order, so no overflow
        }
        if admissible {
            if mu > 0 {
                total += product;
            } else {
                total -= product;
            }
        }
    }
    Ok(total)
}

/// One evaluation plan per (spec, k): divisors, binomials and the d-indexed
/// inner sums are computed once and shared across every b.
struct FormulaPlan {
    order: u64,
    terms: Vec<Term>,
}

/// The r-indexed outer term (-1)^(k + k/r) * C(n/r, k/r) together with the
/// admissible inner divisors of Phi(r, .).
struct Term {
    signed_binomial: BigInt,
    weights: Vec<DivisorWeight>,
}

/// One inner divisor d of r with mu(r/d) != 0: the per-coordinate gcds
/// gcd(n_i, d) used as the divisibility filter, and mu(r/d) * prod gcd(n_i, d).
struct DivisorWeight {
    coord_gcds: Vec<u64>,
    weight: BigInt,
}

impl FormulaPlan {
    fn new(spec: &GroupSpec, k: u64) -> Self {
        let n = spec.order();
        let g = gcd(n, k);
        let mut terms = Vec::new();
        // g >= 1 because n >= 1, so divisors() cannot fail here.
        for r in divisors(g).expect("gcd(n, k) >= 1") {
            let binom = binomial(n / r, k / r);
            if binom.is_zero() {
                continue; // only happens when k > n
            }
            let negative = (k + k / r) % 2 == 1;
            let signed_binomial = if negative {
                -BigInt::from(binom)
            } else {
                BigInt::from(binom)
            };
            let mut weights = Vec::new();
            for d in divisors(r).expect("r >= 1") {
                let mu = moebius(r / d).expect("r/d >= 1");
                if mu == 0 {
                    continue;
                }
                let coord_gcds: Vec<u64> = spec.moduli().iter().map(|&m| gcd(m, d)).collect();
                let product: u64 = coord_gcds.iter().product();
                weights.push(DivisorWeight {
                    coord_gcds,
                    weight: BigInt::from(mu as i64) * BigInt::from(product),
                });
            }
            terms.push(Term {
                signed_binomial,
                weights,
            });
        }
        FormulaPlan { order: n, terms }
    }

    /// The signed accumulator n * N(k, b).
    fn accumulate(&self, b: &GroupElement) -> BigInt {
        let mut acc = BigInt::zero();
        for term in &self.terms {
            let mut phi = BigInt::zero();
            for dw in &term.weights {
                let admissible = dw
                    .coord_gcds
                    .iter()
                    .zip(b.residues())
                    .all(|(&g, &residue)| residue % g == 0);
                if admissible {
                    phi += &dw.weight;
                }
            }
            if !phi.is_zero() {
                acc += &term.signed_binomial * phi;
            }
        }
        acc
    }

    /// Divides the accumulator by n, asserting exactness and nonnegativity.
    fn finish(&self, acc: BigInt) -> Count {
        let n = BigInt::from(self.order);
        let remainder = &acc % &n;
        assert!(
            remainder.is_zero(),
            "internal error: divisor sum not divisible by the group order \
             (formula implementation bug)"
        );
        let (sign, magnitude) = (acc / n).into_parts();
        assert_ne!(
            sign,
            Sign::Minus,
            "internal error: negative subset-sum count (formula implementation bug)"
        );
        magnitude
    }
}

/// Exact N(k, b): the number of k-subsets of the group summing to b.
///
/// Total in k: values above the group order yield 0 (every binomial in the
/// formula vanishes).
pub fn count_subset_sums(spec: &GroupSpec, k: u64, b: &GroupElement) -> Result<Count> {
    spec.check(b)?;
    let plan = FormulaPlan::new(spec, k);
    Ok(plan.finish(plan.accumulate(b)))
}

/// N(k, b) for every b in the group, in lexicographic element order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountTable {
    spec: GroupSpec,
    k: u64,
    counts: Vec<Count>,
}

impl CountTable {
    pub(crate) fn from_counts(spec: GroupSpec, k: u64, counts: Vec<Count>) -> Self {
        debug_assert_eq!(counts.len() as u64, spec.order());
        CountTable { spec, k, counts }
    }

    pub fn spec(&self) -> &GroupSpec {
        &self.spec
    }

    pub fn k(&self) -> u64 {
        self.k
    }

    /// The count for one element.
    pub fn get(&self, b: &GroupElement) -> Result<&Count> {
        let rank = self.spec.element_rank(b)?;
        Ok(&self.counts[rank as usize])
    }

    /// Counts in lexicographic element order.
    pub fn counts(&self) -> &[Count] {
        &self.counts
    }

    /// (element, count) pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (GroupElement, &Count)> + '_ {
        self.spec.elements().zip(self.counts.iter())
    }

    /// Sum of all entries; equals C(n, k) when the table is consistent.
    pub fn total(&self) -> Count {
        self.counts.iter().sum()
    }
}

/// Evaluates the formula for every b, sharing the per-(spec, k) plan.
pub fn count_table(spec: &GroupSpec, k: u64) -> Result<CountTable> {
    let plan = FormulaPlan::new(spec, k);
    let counts = spec
        .elements()
        .map(|b| plan.finish(plan.accumulate(&b)))
        .collect();
    Ok(CountTable::from_counts(spec.clone(), k, counts))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use num_traits::One;

    fn spec(moduli: &[u64]) -> GroupSpec {
        GroupSpec::new(moduli.to_vec()).unwrap()
    }

    fn counts_of(s: &GroupSpec, k: u64) -> Vec<u64> {
        count_table(s, k)
            .unwrap()
            .counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn divisor_weight_r1_is_one() {
        for s in [spec(&[4]), spec(&[2, 2]), spec(&[3, 5, 2])] {
            for b in s.elements() {
                assert_eq!(divisor_weight(&s, 1, &b).unwrap(), SignedCount::one());
            }
        }
    }

    #[test]
    fn divisor_weight_cases() {
        let z4 = spec(&[4]);
        assert_eq!(
            divisor_weight(&z4, 2, &z4.element(vec![1]).unwrap()).unwrap(),
            SignedCount::from(-1)
        );
        assert_eq!(
            divisor_weight(&z4, 2, &z4.element(vec![2]).unwrap()).unwrap(),
            SignedCount::from(1)
        );
        let z22 = spec(&[2, 2]);
        assert_eq!(
            divisor_weight(&z22, 2, &z22.identity()).unwrap(),
            SignedCount::from(3)
        );
        assert_eq!(
            divisor_weight(&z4, 0, &z4.identity()),
            Err(Error::ZeroArgument {
                op: "divisor_weight"
            })
        );
    }

    #[test]
    fn divisor_weight_cyclic_zero_collapses_to_totient() {
        // For cyclic (m) and b = 0, Phi(r, 0) = phi(r) for every r | m.
        for m in 1..=60u64 {
            let s = spec(&[m]);
            let zero = s.identity();
            for r in crate::numtheory::divisors(m).unwrap() {
                assert_eq!(
                    divisor_weight(&s, r, &zero).unwrap(),
                    SignedCount::from(crate::numtheory::euler_phi(r).unwrap()),
                    "m = {m}, r = {r}"
                );
            }
        }
    }

    #[test]
    fn pinned_z4_k2() {
        assert_eq!(counts_of(&spec(&[4]), 2), vec![1, 2, 1, 2]);
    }

    #[test]
    fn pinned_z2z2_k2() {
        assert_eq!(counts_of(&spec(&[2, 2]), 2), vec![0, 2, 2, 2]);
    }

    #[test]
    fn pinned_z6_k3() {
        assert_eq!(counts_of(&spec(&[6]), 3), vec![4, 3, 3, 4, 3, 3]);
    }

    #[test]
    fn coprime_case_is_uniform() {
        // gcd(5, 2) = 1: only the r = 1 term survives, N = C(5,2)/5 = 2.
        assert_eq!(counts_of(&spec(&[5]), 2), vec![2; 5]);
    }

    #[test]
    fn degenerate_subset_sizes() {
        // k = 0: only the empty set, sum = identity.
        assert_eq!(counts_of(&spec(&[3]), 0), vec![1, 0, 0]);
        // k = n: only the full set; 0 + 1 + 2 = 0 mod 3.
        assert_eq!(counts_of(&spec(&[3]), 3), vec![1, 0, 0]);
        // k > n: no subsets at all.
        assert_eq!(counts_of(&spec(&[3]), 5), vec![0, 0, 0]);
    }

    #[test]
    fn single_count_matches_table() {
        let s = spec(&[2, 3, 2]);
        for k in 0..=s.order() {
            let table = count_table(&s, k).unwrap();
            for b in s.elements() {
                assert_eq!(
                    count_subset_sums(&s, k, &b).unwrap(),
                    *table.get(&b).unwrap()
                );
            }
        }
    }

    #[test]
    fn column_sum_is_binomial() {
        for s in [spec(&[7]), spec(&[12]), spec(&[2, 2, 4]), spec(&[3, 3])] {
            let n = s.order();
            for k in 0..=n {
                let table = count_table(&s, k).unwrap();
                assert_eq!(table.total(), binomial(n, k), "spec {s}, k = {k}");
            }
        }
    }

    #[test]
    fn complement_symmetry() {
        // N(k, b) = N(n - k, S - b) with S the sum of all elements.
        for s in [spec(&[6]), spec(&[8]), spec(&[2, 2]), spec(&[2, 3, 2])] {
            let n = s.order();
            let total = s.total_sum();
            for k in 0..=n {
                let table_k = count_table(&s, k).unwrap();
                let table_nk = count_table(&s, n - k).unwrap();
                for b in s.elements() {
                    let complement = s.add(&total, &s.negate(&b).unwrap()).unwrap();
                    assert_eq!(
                        table_k.get(&b).unwrap(),
                        table_nk.get(&complement).unwrap(),
                        "spec {s}, k = {k}, b = {b}"
                    );
                }
            }
        }
    }

    #[test]
    fn coprime_degeneracy_divides_exactly() {
        for s in [spec(&[5]), spec(&[9]), spec(&[3, 5]), spec(&[7])] {
            let n = s.order();
            for k in (0..=n).filter(|&k| gcd(n, k) == 1) {
                let expected = binomial(n, k) / n;
                assert_eq!(&expected * n, binomial(n, k), "division must be exact");
                for b in s.elements() {
                    assert_eq!(count_subset_sums(&s, k, &b).unwrap(), expected);
                }
            }
        }
    }

    #[test]
    fn crt_presentation_invariance() {
        // Z_6 and Z_2 x Z_3 are isomorphic via b -> (b mod 2, b mod 3);
        // counts must agree pointwise under that bijection.
        let z6 = spec(&[6]);
        let z23 = spec(&[2, 3]);
        for k in 0..=6 {
            let t6 = count_table(&z6, k).unwrap();
            let t23 = count_table(&z23, k).unwrap();
            for b in 0..6u64 {
                let lhs = t6.get(&z6.element(vec![b]).unwrap()).unwrap();
                let rhs = t23.get(&z23.element(vec![b % 2, b % 3]).unwrap()).unwrap();
                assert_eq!(lhs, rhs, "k = {k}, b = {b}");
            }
        }
    }

    #[test]
    fn rejects_invalid_elements() {
        let s = spec(&[4]);
        let other = spec(&[2, 2]);
        assert!(count_subset_sums(&s, 2, &other.identity()).is_err());
        assert!(divisor_weight(&s, 2, &other.identity()).is_err());
    }

    #[test]
    fn counts_are_nonnegative_by_type() {
        // Count is unsigned; spot-check that values materialize.
        let table = count_table(&spec(&[2, 2, 2]), 3).unwrap();
        assert!(table.counts().iter().all(|c| c >= &BigUint::ZERO));
    }
}
