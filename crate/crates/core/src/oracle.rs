//! Independent ground-truth counters used to validate the explicit formula.
//!
//! Two routes that share nothing with the formula path:
//!
//! * [`oracle_enum`] literally walks all C(n, k) subsets (guarded to n <= 20);
//! * [`oracle_dp`] runs a take/skip dynamic program over the elements in
//!   lexicographic order, exact big-integer counts throughout.
//!
//! Partial sums are tracked by lexicographic rank (mixed-radix encoding) and
//! decoded only at output.

use num_traits::{One, Zero};

use crate::counting::{count_table, CountTable};
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::Count;

/// Hard cap for literal subset enumeration.
pub const ENUM_ORDER_LIMIT: u64 = 20;

/// Counts by enumerating every k-subset of the group and accumulating its
/// sum. Rejects groups of order above [`ENUM_ORDER_LIMIT`].
pub fn oracle_enum(spec: &GroupSpec, k: u64) -> Result<CountTable> {
    let n = spec.order();
    if n > ENUM_ORDER_LIMIT {
        return Err(Error::EnumerationTooLarge {
            n,
            limit: ENUM_ORDER_LIMIT,
        });
    }
    if k > n {
        return Err(Error::SubsetSizeTooLarge { k, n });
    }
    let n = n as usize;
    let k = k as usize;

    // Rank-space addition table; n <= 20 keeps it tiny.
    let add = rank_addition_table(spec);
    let mut counts = vec![Count::ZERO; n];

    // Depth-first walk over index combinations with a running partial sum.
    // chosen[depth] is the rank of the element picked at that depth.
    fn walk(
        start: usize,
        remaining: usize,
        partial: usize,
        n: usize,
        add: &[Vec<usize>],
        counts: &mut [Count],
    ) {
        if remaining == 0 {
            counts[partial] += 1u32;
            return;
        }
        // Leave enough elements for the remaining picks.
        for next in start..=(n - remaining) {
            walk(next + 1, remaining - 1, add[partial][next], n, add, counts);
        }
    }
    walk(0, k, 0, n, &add, &mut counts);

    Ok(CountTable::from_counts(spec.clone(), k as u64, counts))
}

/// Counts by dynamic programming over the elements in lexicographic order:
/// state (chosen so far, partial sum rank), transition take/skip.
pub fn oracle_dp(spec: &GroupSpec, k: u64) -> Result<CountTable> {
    let order: Vec<GroupElement> = spec.elements().collect();
    dp_with_element_order(spec, k, &order)
}

/// DP core with an explicit processing order, so tests can verify the result
/// is order-independent.
pub(crate) fn dp_with_element_order(
    spec: &GroupSpec,
    k: u64,
    order: &[GroupElement],
) -> Result<CountTable> {
    let n = spec.order();
    if k > n {
        return Err(Error::SubsetSizeTooLarge { k, n });
    }
    let n = n as usize;
    let k = k as usize;

    // layers[j][s] = number of j-subsets of the processed prefix with sum
    // rank s. Updating j downward makes the in-place update safe.
    let mut layers = vec![vec![Count::ZERO; n]; k + 1];
    layers[0][0] = Count::one();

    for element in order {
        // s -> s (+) element, as a permutation of ranks.
        let shift: Vec<usize> = (0..n)
            .map(|s| {
                let sum = spec
                    .add(&spec.element_at(s as u64), element)
                    .expect("elements of the same spec");
                spec.element_rank(&sum).expect("sum is canonical") as usize
            })
            .collect();
        for j in (1..=k).rev() {
            for s in 0..n {
                if !layers[j - 1][s].is_zero() {
                    let add = layers[j - 1][s].clone();
                    layers[j][shift[s]] += add;
                }
            }
        }
    }

    Ok(CountTable::from_counts(
        spec.clone(),
        k as u64,
        layers.pop().expect("k + 1 layers"),
    ))
}

fn rank_addition_table(spec: &GroupSpec) -> Vec<Vec<usize>> {
    let n = spec.order() as usize;
    let elements: Vec<GroupElement> = spec.elements().collect();
    (0..n)
        .map(|a| {
            (0..n)
                .map(|b| {
                    let sum = spec.add(&elements[a], &elements[b]).expect("same spec");
                    spec.element_rank(&sum).expect("sum is canonical") as usize
                })
                .collect()
        })
        .collect()
}

/// The pinned verification family: all cyclic groups Z_m with m <= max_order,
/// plus every multi-factor presentation (2 or 3 factors, nondecreasing) over
/// the factor set {2, 3, 4, 5, 6, 8, 9} whose order is at most max_order.
pub fn standard_family(max_order: u64) -> Vec<GroupSpec> {
    const FACTORS: [u64; 7] = [2, 3, 4, 5, 6, 8, 9];
    let mut specs = Vec::new();
    for m in 1..=max_order {
        specs.push(GroupSpec::cyclic(m).expect("m >= 1"));
    }
    for (i, &a) in FACTORS.iter().enumerate() {
        for (j, &b) in FACTORS.iter().enumerate().skip(i) {
            if a * b <= max_order {
                specs.push(GroupSpec::new(vec![a, b]).expect("positive moduli"));
            }
            for &c in &FACTORS[j..] {
                if a * b * c <= max_order {
                    specs.push(GroupSpec::new(vec![a, b, c]).expect("positive moduli"));
                }
            }
        }
    }
    specs
}

/// Which oracle(s) to check the formula against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OracleKind {
    Enumeration,
    DynamicProgramming,
    Both,
}

impl OracleKind {
    fn wants_enum(self) -> bool {
        matches!(self, OracleKind::Enumeration | OracleKind::Both)
    }

    fn wants_dp(self) -> bool {
        matches!(self, OracleKind::DynamicProgramming | OracleKind::Both)
    }
}

/// First formula/oracle disagreement found, if any.
#[derive(Debug, Clone)]
pub struct Mismatch {
    pub spec: GroupSpec,
    pub k: u64,
    pub b: GroupElement,
    pub formula: Count,
    pub oracle: Count,
    pub oracle_name: &'static str,
}

/// Statistics of a clean verification run.
#[derive(Debug, Clone, Copy, Default)]
pub struct VerifyStats {
    pub specs: usize,
    pub comparisons: u64,
}

/// Runs the formula against the selected oracles over the whole standard
/// family up to `max_order`, every 0 <= k <= n, every b.
///
/// The enumeration oracle only applies where the order is within
/// [`ENUM_ORDER_LIMIT`]; larger groups are covered by the DP oracle.
pub fn verify_family(
    max_order: u64,
    kind: OracleKind,
) -> Result<std::result::Result<VerifyStats, Box<Mismatch>>> {
    let mut stats = VerifyStats::default();
    for spec in standard_family(max_order) {
        let n = spec.order();
        stats.specs += 1;
        for k in 0..=n {
            let formula = count_table(&spec, k)?;
            let mut oracles: Vec<(&'static str, CountTable)> = Vec::new();
            if kind.wants_enum() && n <= ENUM_ORDER_LIMIT {
                oracles.push(("enum", oracle_enum(&spec, k)?));
            }
            if kind.wants_dp() {
                oracles.push(("dp", oracle_dp(&spec, k)?));
            }
            for (name, table) in &oracles {
                for b in spec.elements() {
                    stats.comparisons += 1;
                    let lhs = formula.get(&b)?;
                    let rhs = table.get(&b)?;
                    if lhs != rhs {
                        return Ok(Err(Box::new(Mismatch {
                            spec: spec.clone(),
                            k,
                            b,
                            formula: lhs.clone(),
                            oracle: rhs.clone(),
                            oracle_name: name,
                        })));
                    }
                }
            }
        }
    }
    Ok(Ok(stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numtheory::binomial;

    fn spec(moduli: &[u64]) -> GroupSpec {
        GroupSpec::new(moduli.to_vec()).unwrap()
    }

    fn counts_of(table: &CountTable) -> Vec<u64> {
        table
            .counts()
            .iter()
            .map(|c| u64::try_from(c).unwrap())
            .collect()
    }

    #[test]
    fn enum_pinned_cases() {
        assert_eq!(
            counts_of(&oracle_enum(&spec(&[4]), 2).unwrap()),
            vec![1, 2, 1, 2]
        );
        // Full set of Z_2 x Z_2 sums to the identity.
        assert_eq!(
            counts_of(&oracle_enum(&spec(&[2, 2]), 4).unwrap()),
            vec![1, 0, 0, 0]
        );
        // k = 0: the empty subset, sum = identity.
        assert_eq!(
            counts_of(&oracle_enum(&spec(&[3, 2]), 0).unwrap()),
            vec![1, 0, 0, 0, 0, 0]
        );
    }

    #[test]
    fn enum_rejects_large_orders() {
        assert_eq!(
            oracle_enum(&spec(&[21]), 2),
            Err(Error::EnumerationTooLarge { n: 21, limit: 20 })
        );
        assert!(oracle_enum(&spec(&[20]), 2).is_ok());
    }

    #[test]
    fn dp_pinned_cases() {
        assert_eq!(
            counts_of(&oracle_dp(&spec(&[6]), 3).unwrap()),
            vec![4, 3, 3, 4, 3, 3]
        );
        assert_eq!(counts_of(&oracle_dp(&spec(&[5]), 2).unwrap()), vec![2; 5]);
        assert_eq!(counts_of(&oracle_dp(&spec(&[1]), 1).unwrap()), vec![1]);
    }

    #[test]
    fn oracles_agree_and_sum_to_binomial() {
        for s in [spec(&[7]), spec(&[2, 5]), spec(&[2, 2, 3]), spec(&[16])] {
            let n = s.order();
            for k in 0..=n {
                let by_enum = oracle_enum(&s, k).unwrap();
                let by_dp = oracle_dp(&s, k).unwrap();
                assert_eq!(by_enum, by_dp, "spec {s}, k = {k}");
                assert_eq!(by_enum.total(), binomial(n, k), "spec {s}, k = {k}");
            }
        }
    }

    #[test]
    fn dp_is_order_independent() {
        for s in [spec(&[8]), spec(&[2, 3]), spec(&[2, 2, 2])] {
            let n = s.order();
            let reversed: Vec<GroupElement> =
                s.elements().collect::<Vec<_>>().into_iter().rev().collect();
            for k in 0..=n {
                assert_eq!(
                    oracle_dp(&s, k).unwrap(),
                    dp_with_element_order(&s, k, &reversed).unwrap(),
                    "spec {s}, k = {k}"
                );
            }
        }
    }

    #[test]
    fn oversized_k_is_rejected() {
        assert_eq!(
            oracle_enum(&spec(&[4]), 5),
            Err(Error::SubsetSizeTooLarge { k: 5, n: 4 })
        );
        assert_eq!(
            oracle_dp(&spec(&[4]), 5),
            Err(Error::SubsetSizeTooLarge { k: 5, n: 4 })
        );
    }

    #[test]
    fn standard_family_composition() {
        let family = standard_family(16);
        // 16 cyclic presentations.
        assert_eq!(family.iter().filter(|s| s.arity() == 1).count(), 16);
        // Multi-factor presentations are nondecreasing and within the order cap.
        for s in family.iter().filter(|s| s.arity() > 1) {
            assert!(s.order() <= 16);
            assert!(s.moduli().windows(2).all(|w| w[0] <= w[1]));
            assert!(s.moduli().iter().all(|m| [2, 3, 4, 5, 6, 8, 9].contains(m)));
        }
        assert!(family.iter().any(|s| s.moduli() == [2, 2, 4]));
        assert!(family.iter().any(|s| s.moduli() == [4, 4]));
        // No duplicates.
        let mut seen = std::collections::HashSet::new();
        for s in &family {
            assert!(seen.insert(s.moduli().to_vec()), "duplicate {s}");
        }
    }

    #[test]
    fn verify_family_small_clean() {
        let stats = verify_family(8, OracleKind::Both).unwrap().unwrap();
        // 8 cyclic + (2,2), (2,3), (2,4), (2,2,2).
        assert_eq!(stats.specs, 12);
        assert!(stats.comparisons > 0);
    }
}
