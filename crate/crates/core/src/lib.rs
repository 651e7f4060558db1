//! Exact counting of k-subset sums in finite abelian groups.
//!
//! For a group G = Z_{n_1} x ... x Z_{n_s} of order n and a target b, the
//! crate computes the number N(k, b) of k-element subsets of G whose elements
//! sum to b, using the explicit Moebius divisor-sum formula
//!
//! ```text
//! N(k, b) = (1/n) * sum over r | gcd(n, k) of
//!           (-1)^(k + k/r) * C(n/r, k/r) * Phi(r, b)
//! ```
//!
//! entirely in exact big-integer arithmetic. Two independent brute-force
//! oracles ([`oracle::oracle_enum`] and [`oracle::oracle_dp`]) validate the
//! formula, and the [`analysis`] module measures how uniformly the counts
//! spread over b: the min/max ratio, the main-term/deviation split, exact
//! cross-multiplied inequalities, and the logarithmic bound function L_n(k).
//!
//! All counts are exact ([`Count`] is an arbitrary-precision nonnegative
//! integer); ratios are exact rationals rendered to decimals only on output.

pub mod analysis;
pub mod counting;
pub mod error;
pub mod group;
pub mod numtheory;
pub mod oracle;

pub use analysis::{
    BoundReport, EndpointMax, GroupFamily, KRule, RatioReport, SweepData, SweepRow,
};
pub use counting::CountTable;
pub use error::{Error, Result};
pub use group::{GroupElement, GroupSpec};
pub use numtheory::{Count, SignedCount};
pub use oracle::{Mismatch, OracleKind, VerifyStats};
