//! Uniformity analysis: the min/max ratio of subset-sum counts, the
//! main-term/deviation decomposition, exact inequality checks, the
//! logarithmic bound function L_n(k) and convergence sweeps.
//!
//! Count-level quantities stay in exact integers and rationals; only the
//! genuinely real-valued quantities (the vanishing expression and L_n(k))
//! are evaluated in double precision, each from exact integers with a single
//! rounding at the end.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::counting::count_table;
use crate::error::{Error, Result};
use crate::group::{GroupElement, GroupSpec};
use crate::numtheory::{binomial, Count};

/// Minimum and maximum of N(k, b) over all b, with witnesses and the exact
/// min/max ratio.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatioReport {
    pub spec: GroupSpec,
    pub k: u64,
    pub min_count: Count,
    pub max_count: Count,
    pub argmin: GroupElement,
    pub argmax: GroupElement,
    pub ratio: BigRational,
}

impl RatioReport {
    /// The ratio rounded once to `digits` decimal places, round-half-even.
    pub fn ratio_decimal(&self, digits: usize) -> String {
        decimal_string(&self.ratio, digits)
    }
}

/// min_b N(k, b) / max_b N(k, b) with lexicographically-first witnesses.
///
/// Requires 1 <= k <= n - 1; outside that range the ratio degenerates
/// (max may sit at a single element with zeros elsewhere).
pub fn uniformity_ratio(spec: &GroupSpec, k: u64) -> Result<RatioReport> {
    let n = spec.order();
    if k < 1 || k > n.saturating_sub(1) {
        return Err(Error::DegenerateRatio { k, n });
    }
    let table = count_table(spec, k)?;
    let mut entries = table.iter();
    let (first, count) = entries.next().expect("group order >= 1");
    let mut min_count = count.clone();
    let mut max_count = count.clone();
    let mut argmin = first.clone();
    let mut argmax = first;
    for (b, count) in entries {
        if count < &min_count {
            min_count = count.clone();
            argmin = b.clone();
        }
        if count > &max_count {
            max_count = count.clone();
            argmax = b;
        }
    }
    // Sum over b is C(n, k) > 0, so the maximum is positive.
    let ratio = BigRational::new(
        BigInt::from(min_count.clone()),
        BigInt::from(max_count.clone()),
    );
    Ok(RatioReport {
        spec: spec.clone(),
        k,
        min_count,
        max_count,
        argmin,
        argmax,
        ratio,
    })
}

/// The r = 1 term C(n, k) / n, in lowest terms.
pub fn main_term(n: u64, k: u64) -> Result<BigRational> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "main_term" });
    }
    Ok(BigRational::new(
        BigInt::from(binomial(n, k)),
        BigInt::from(n),
    ))
}

fn require_even(n: u64, k: u64) -> Result<()> {
    if !n.is_multiple_of(2) || !k.is_multiple_of(2) {
        return Err(Error::ParityRequired { n, k });
    }
    Ok(())
}

/// The trivial bound k * C(n/2, k/2) on the non-main terms; defined for
/// even n and even k only.
pub fn deviation_bound(n: u64, k: u64) -> Result<Count> {
    if n == 0 {
        return Err(Error::ZeroArgument {
            op: "deviation_bound",
        });
    }
    if k == 0 {
        return Err(Error::ZeroArgument {
            op: "deviation_bound",
        });
    }
    require_even(n, k)?;
    if k > n {
        return Err(Error::KAboveN { k, n });
    }
    Ok(binomial(n / 2, k / 2) * k)
}

/// Checks |n * N(k, b) - C(n, k)| <= n * k * C(n/2, k/2) for every b.
///
/// Returns `None` when the inequality holds everywhere, otherwise the first
/// violating element in lexicographic order.
pub fn deviation_check(spec: &GroupSpec, k: u64) -> Result<Option<GroupElement>> {
    let n = spec.order();
    let bound = BigUint::from(n) * deviation_bound(n, k)?;
    let table = count_table(spec, k)?;
    let expected = BigInt::from(binomial(n, k));
    for (b, count) in table.iter() {
        let deviation = (BigInt::from(count.clone() * n) - &expected)
            .magnitude()
            .clone();
        if deviation > bound {
            return Ok(Some(b));
        }
    }
    Ok(None)
}

/// Exact check of C(n/2, k/2) / C(n, k) <= (k/n)^(k/2), done entirely in
/// integers by cross-multiplying:
/// C(n/2, k/2) * n^(k/2) <= C(n, k) * k^(k/2).
pub fn binomial_ratio_check(n: u64, k: u64) -> Result<bool> {
    if n == 0 {
        return Err(Error::ZeroArgument {
            op: "binomial_ratio_check",
        });
    }
    if k < 2 {
        return Err(Error::KBelowMin {
            op: "binomial_ratio_check",
            min: 2,
            k,
        });
    }
    require_even(n, k)?;
    if k > n {
        return Err(Error::KAboveN { k, n });
    }
    let half = k / 2;
    let lhs = binomial(n / 2, half) * pow_u64(n, half);
    let rhs = binomial(n, k) * pow_u64(k, half);
    Ok(lhs <= rhs)
}

fn pow_u64(base: u64, exp: u64) -> BigUint {
    let mut acc = BigUint::one();
    let mut base = BigUint::from(base);
    let mut exp = exp;
    while exp > 0 {
        if exp & 1 == 1 {
            acc *= &base;
        }
        exp >>= 1;
        if exp > 0 {
            base = &base * &base;
        }
    }
    acc
}

/// n * k^2 * C(n/2, k/2) / C(n, k), evaluated from exact integers and rounded
/// once to double precision (relative error well inside 1e-12).
pub fn vanishing_expr(n: u64, k: u64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroArgument {
            op: "vanishing_expr",
        });
    }
    if k == 0 {
        return Err(Error::ZeroArgument {
            op: "vanishing_expr",
        });
    }
    require_even(n, k)?;
    if k > n {
        return Err(Error::KAboveN { k, n });
    }
    let numerator = BigUint::from(n) * BigUint::from(k) * BigUint::from(k) * binomial(n / 2, k / 2);
    let denominator = binomial(n, k);
    Ok(big_ratio_to_f64(&numerator, &denominator))
}

/// Rounds num/den to the nearest double. The integer quotient is first scaled
/// to carry at least 63 significant bits, so the one real rounding happens in
/// the final conversion.
fn big_ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    debug_assert!(!den.is_zero());
    if num.is_zero() {
        return 0.0;
    }
    let shift = 64i64 + den.bits() as i64 - num.bits() as i64;
    let (quotient, exp) = if shift > 0 {
        ((num << shift as u64) / den, -(shift as i32))
    } else {
        (num / den, 0)
    };
    let q = quotient.to_f64().unwrap_or(f64::INFINITY);
    q * 2f64.powi(exp)
}

/// L_n(k) = ln(n * k^2 * (k/n)^(k/2)), evaluated in log space as
/// ln(n) + 2 ln(k) + (k/2)(ln(k) - ln(n)) so huge powers never materialize.
pub fn l_value(n: u64, k: f64) -> Result<f64> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "l_value" });
    }
    if k < 1.0 || k.is_nan() {
        return Err(Error::KBelowOne { op: "l_value", k });
    }
    let ln_n = (n as f64).ln();
    let ln_k = k.ln();
    Ok(ln_n + 2.0 * ln_k + (k / 2.0) * (ln_k - ln_n))
}

/// d^2 L_n / dk^2 = 1/(2k) - 2/k^2 (independent of n).
pub fn l_second_derivative(k: f64) -> Result<f64> {
    if k < 1.0 || k.is_nan() {
        return Err(Error::KBelowOne {
            op: "l_second_derivative",
            k,
        });
    }
    Ok(0.5 / k - 2.0 / (k * k))
}

/// Result of scanning L_n(k) over the integer range [4, n/2 + 1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EndpointMax {
    /// Maximum attained at k = 4 or k = n/2 + 1.
    pub at_endpoint: bool,
    pub argmax: u64,
    pub max_value: f64,
}

/// Scans every integer k in [4, n/2 + 1] (rather than trusting convexity)
/// and reports whether the maximum of L_n(k) sits at an endpoint.
pub fn endpoint_max_check(n: u64) -> Result<EndpointMax> {
    if n < 8 {
        return Err(Error::EndpointRangeTooSmall { n });
    }
    let hi = n / 2 + 1;
    let mut argmax = 4u64;
    let mut max_value = l_value(n, 4.0)?;
    for k in 5..=hi {
        let v = l_value(n, k as f64)?;
        if v > max_value {
            max_value = v;
            argmax = k;
        }
    }
    Ok(EndpointMax {
        at_endpoint: argmax == 4 || argmax == hi,
        argmax,
        max_value,
    })
}

/// Every proof quantity for one (n, k): the exact main term, and the
/// parity-restricted bound values where defined.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub n: u64,
    pub k: u64,
    pub main_term: BigRational,
    pub deviation_bound: Option<Count>,
    pub vanishing_expr: Option<f64>,
    pub l_value: Option<f64>,
}

/// Aggregates [`main_term`], [`deviation_bound`], [`vanishing_expr`] and
/// [`l_value`], leaving fields unset where their domain does not apply.
pub fn bound_report(n: u64, k: u64) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::ZeroArgument { op: "bound_report" });
    }
    let parity_ok = n.is_multiple_of(2) && k.is_multiple_of(2) && k >= 1 && k <= n;
    Ok(BoundReport {
        n,
        k,
        main_term: main_term(n, k)?,
        deviation_bound: if parity_ok {
            Some(deviation_bound(n, k)?)
        } else {
            None
        },
        vanishing_expr: if parity_ok {
            Some(vanishing_expr(n, k)?)
        } else {
            None
        },
        l_value: if k >= 1 {
            Some(l_value(n, k as f64)?)
        } else {
            None
        },
    })
}

/// Renders a rational to `digits` decimal places with a single
/// round-half-even rounding. `digits` must be at least 1.
pub fn decimal_string(value: &BigRational, digits: usize) -> String {
    assert!(digits >= 1, "precision must be at least 1");
    if value.is_negative() {
        return format!("-{}", decimal_string(&-value.clone(), digits));
    }
    let num = value.numer().magnitude();
    let den = value.denom().magnitude();
    let mut int_part = num / den;
    let remainder = num % den;
    let scale = pow_u64(10, digits as u64);
    let scaled = remainder * &scale;
    let mut frac = &scaled / den;
    let leftover = &scaled % den;
    let round_up = match (&leftover + &leftover).cmp(den) {
        Ordering::Greater => true,
        Ordering::Less => false,
        // Tie: round so the last kept digit is even.
        Ordering::Equal => (&frac % 2u32) == BigUint::one(),
    };
    if round_up {
        frac += 1u32;
        if frac == scale {
            frac = BigUint::ZERO;
            int_part += 1u32;
        }
    }
    let digits_str = frac.to_string();
    format!(
        "{int_part}.{}{digits_str}",
        "0".repeat(digits - digits_str.len())
    )
}

/// Group families available to sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    /// Z_n for any n >= 1.
    Cyclic,
    /// Z_2^s; requires n = 2^s with s >= 1.
    ElementaryTwo,
    /// Z_2 x Z_{n/2}; requires even n.
    TwoFactor,
}

impl GroupFamily {
    pub fn label(self) -> &'static str {
        match self {
            GroupFamily::Cyclic => "cyclic",
            GroupFamily::ElementaryTwo => "elementary-2",
            GroupFamily::TwoFactor => "two-factor",
        }
    }

    /// The group presentation this family assigns to order n, or why none
    /// exists.
    pub fn spec_for(self, n: u64) -> std::result::Result<GroupSpec, String> {
        match self {
            GroupFamily::Cyclic => GroupSpec::cyclic(n).map_err(|e| e.to_string()),
            GroupFamily::ElementaryTwo => {
                if n >= 2 && n.is_power_of_two() {
                    let s = n.trailing_zeros() as usize;
                    GroupSpec::new(vec![2; s]).map_err(|e| e.to_string())
                } else {
                    Err(format!(
                        "elementary-2 requires a power-of-two order >= 2, got {n}"
                    ))
                }
            }
            GroupFamily::TwoFactor => {
                if n >= 2 && n.is_multiple_of(2) {
                    GroupSpec::new(vec![2, n / 2]).map_err(|e| e.to_string())
                } else {
                    Err(format!("two-factor requires an even order >= 2, got {n}"))
                }
            }
        }
    }
}

impl FromStr for GroupFamily {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "cyclic" => Ok(GroupFamily::Cyclic),
            "elementary-2" => Ok(GroupFamily::ElementaryTwo),
            "two-factor" => Ok(GroupFamily::TwoFactor),
            other => Err(format!(
                "unknown family {other:?} (expected cyclic, elementary-2 or two-factor)"
            )),
        }
    }
}

impl fmt::Display for GroupFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// How the subset size is derived from the order in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KRule {
    Fixed(u64),
    HalfPlusOne,
}

impl KRule {
    pub fn k_for(self, n: u64) -> u64 {
        match self {
            KRule::Fixed(k) => k,
            KRule::HalfPlusOne => n / 2 + 1,
        }
    }
}

impl FromStr for KRule {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        if s == "half-plus-one" {
            return Ok(KRule::HalfPlusOne);
        }
        if let Some(raw) = s.strip_prefix("fixed:") {
            return raw
                .parse::<u64>()
                .map(KRule::Fixed)
                .map_err(|_| format!("invalid fixed subset size {raw:?}"));
        }
        Err(format!(
            "unknown k-rule {s:?} (expected fixed:K or half-plus-one)"
        ))
    }
}

impl fmt::Display for KRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KRule::Fixed(k) => write!(f, "fixed:{k}"),
            KRule::HalfPlusOne => f.write_str("half-plus-one"),
        }
    }
}

/// Successful sweep measurements for one order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepData {
    pub k: u64,
    pub min_count: Count,
    pub max_count: Count,
    pub ratio: BigRational,
    pub ratio_decimal: String,
    pub vanishing_expr: Option<f64>,
    pub l_value: Option<f64>,
}

/// One sweep row; infeasible (family, order) combinations carry the reason
/// instead of data.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub family: &'static str,
    pub n: u64,
    pub outcome: std::result::Result<SweepData, String>,
}

/// Traces the uniformity ratio (and, where the parity domain allows, the
/// vanishing expression; L_n(k) whenever k >= 1) over a family of orders.
///
/// Orders are deduplicated and rows come back sorted by n ascending.
/// Infeasible combinations produce error rows, never a failure of the whole
/// sweep.
pub fn convergence_sweep(
    family: GroupFamily,
    orders: &[u64],
    k_rule: KRule,
    precision: usize,
) -> Vec<SweepRow> {
    let mut orders = orders.to_vec();
    orders.sort_unstable();
    orders.dedup();
    orders
        .into_iter()
        .map(|n| SweepRow {
            family: family.label(),
            n,
            outcome: sweep_one(family, n, k_rule, precision),
        })
        .collect()
}

fn sweep_one(
    family: GroupFamily,
    n: u64,
    k_rule: KRule,
    precision: usize,
) -> std::result::Result<SweepData, String> {
    let spec = family.spec_for(n)?;
    let k = k_rule.k_for(n);
    let report = uniformity_ratio(&spec, k).map_err(|e| e.to_string())?;
    let vanishing = if n.is_multiple_of(2) && k.is_multiple_of(2) {
        Some(vanishing_expr(n, k).map_err(|e| e.to_string())?)
    } else {
        None
    };
    let l = l_value(n, k as f64).map_err(|e| e.to_string())?;
    let ratio_decimal = report.ratio_decimal(precision);
    Ok(SweepData {
        k,
        min_count: report.min_count,
        max_count: report.max_count,
        ratio_decimal,
        ratio: report.ratio,
        vanishing_expr: vanishing,
        l_value: Some(l),
    })
}

/// CSV column order fixed by contract:
/// family,n,k,min_count,max_count,ratio_decimal,vanishing_expr,l_value.
/// Missing values render as empty fields; the header row is mandatory.
pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut out =
        String::from("family,n,k,min_count,max_count,ratio_decimal,vanishing_expr,l_value\n");
    for row in rows {
        match &row.outcome {
            Ok(data) => {
                let vanish = data
                    .vanishing_expr
                    .map(|v| v.to_string())
                    .unwrap_or_default();
                let l = data.l_value.map(|v| v.to_string()).unwrap_or_default();
                out.push_str(&format!(
                    "{},{},{},{},{},{},{},{}\n",
                    row.family,
                    row.n,
                    data.k,
                    data.min_count,
                    data.max_count,
                    data.ratio_decimal,
                    vanish,
                    l
                ));
            }
            Err(_) => {
                out.push_str(&format!("{},{},,,,,,\n", row.family, row.n));
            }
        }
    }
    out
}
