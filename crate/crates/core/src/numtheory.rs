//! Integer substrate: gcd, divisor enumeration, the Moebius function,
//! Euler's totient and exact binomial coefficients.
//!
//! Everything here is exact. Counts live in [`Count`] (arbitrary-precision
//! nonnegative) and signed intermediate values in [`SignedCount`]; machine
//! words are only used where the inputs are group orders and subset sizes,
//! which stay well inside `u64` for every workload this crate targets.
//!
//! Factorization is plain trial division: the arguments are divisors of
//! group orders (<= ~10^6 in sweeps), so nothing fancier is warranted.

use num_bigint::{BigInt, BigUint};
use num_traits::One;

use crate::error::{Error, Result};

/// Arbitrary-precision nonnegative count. The unsigned representation is the
/// `value >= 0` invariant.
pub type Count = BigUint;

/// Arbitrary-precision signed value for intermediate formula terms.
pub type SignedCount = BigInt;

/// Greatest common divisor, with the conventions gcd(a, 0) = a and
/// gcd(0, 0) = 0.
pub fn gcd(a: u64, b: u64) -> u64 {
    let (mut a, mut b) = (a, b);
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

/// All positive divisors of `m` in ascending order.
pub fn divisors(m: u64) -> Result<Vec<u64>> {
    if m == 0 {
        return Err(Error::ZeroArgument { op: "divisors" });
    }
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d: u64 = 1;
    while d <= m / d {
        if m.is_multiple_of(d) {
            small.push(d);
            if d != m / d {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    Ok(small)
}

/// The Moebius function: mu(1) = 1, mu(r) = 0 when r has a squared prime
/// factor, otherwise (-1)^(number of prime factors).
pub fn moebius(r: u64) -> Result<i8> {
    if r == 0 {
        return Err(Error::ZeroArgument { op: "moebius" });
    }
    let mut rest = r;
    let mut factors = 0u32;
    let mut p: u64 = 2;
    while rest > 1 && p <= rest / p {
        if rest.is_multiple_of(p) {
            rest /= p;
            if rest.is_multiple_of(p) {
                return Ok(0);
            }
            factors += 1;
        }
        p += 1;
    }
    if rest > 1 {
        factors += 1;
    }
    Ok(if factors.is_multiple_of(2) { 1 } else { -1 })
}

/// Euler's totient phi(r).
pub fn euler_phi(r: u64) -> Result<u64> {
    if r == 0 {
        return Err(Error::ZeroArgument { op: "euler_phi" });
    }
    let mut rest = r;
    let mut phi = r;
    let mut p: u64 = 2;
    while rest > 1 && p <= rest / p {
        if rest.is_multiple_of(p) {
            while rest.is_multiple_of(p) {
                rest /= p;
            }
            phi = phi / p * (p - 1);
        }
        p += 1;
    }
    if rest > 1 {
        phi = phi / rest * (rest - 1);
    }
    Ok(phi)
}

/// Exact binomial coefficient C(n, k); 0 when k > n.
///
/// Computed as a multiplicative running product with exact division at every
/// step (the partial product after i steps is C(n - k + i, i), an integer),
/// which keeps intermediates no larger than the result.
pub fn binomial(n: u64, k: u64) -> Count {
    if k > n {
        return Count::ZERO;
    }
    let k = k.min(n - k);
    let mut acc = Count::one();
    for i in 1..=k {
        acc *= n - k + i;
        acc /= i;
    }
    acc
}
