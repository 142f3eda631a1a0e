//! Multiplicative-order-of-2 statistics.
//!
//! Writing `l_p` for the order of 2 modulo an odd prime `p`, this module
//! counts the primes with `4 | l_p` (`Q_4(x)`), the integers
//! `q = 2 mod 4` all of whose odd prime divisors have that property
//! (`N(Q)`), the Mertens-style product over such primes, and the closed
//! formula `omega_{2,1}(q) = (3q+2)/8` valid exactly for the counted `q`.
//! Counts are emitted as convergence tables: one record per requested
//! threshold, computed in a single pass over a shared smallest-prime-factor
//! table.
//!
//! Counting convention: `q = 2` satisfies the divisor condition vacuously
//! but is *not* counted by `N(Q)` (nor accepted by [`is_eligible_q`]);
//! the reference value `N(40002) = 1745` pins this choice down.

use serde::Serialize;

use crate::arith::{
    self, factorize, is_prime, multiplicative_order, multiplicative_order_factored, SpfTable,
};
use crate::Error;

/// One row of a density table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityRecord {
    /// The sweep threshold (`x` or `Q`).
    pub threshold: u64,
    pub count: u64,
    /// `pi(x)` for order counts, `Q/(ln Q)^(2/3)` for eligible-integer
    /// counts.
    pub normalizer: f64,
    /// `count / normalizer`.
    pub ratio: f64,
}

/// One row of a Mertens-product table.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MertensRecord {
    pub threshold: u64,
    /// Number of primes contributing a factor.
    pub count: u64,
    /// Product of `1 + 1/(p-1)` over odd primes `p <= threshold` with
    /// `4 | l_p`.
    pub product: f64,
    /// `product / (ln x)^(1/3)`.
    pub eta: f64,
}

fn check_thresholds(thresholds: &[u64], min: u64) -> Result<(), Error> {
    if thresholds.is_empty() {
        return Err(Error::Precondition("at least one threshold is required"));
    }
    if !thresholds.windows(2).all(|w| w[0] < w[1]) {
        return Err(Error::Precondition("thresholds must be strictly ascending"));
    }
    if thresholds[0] < min {
        return Err(Error::Precondition("threshold below the operation minimum"));
    }
    arith::check_cap(*thresholds.last().unwrap())
}

fn order_of_two(p: u64, spf: &SpfTable) -> u64 {
    multiplicative_order_factored(2, p, &spf.factorize(p - 1))
}

/// Whether the order of 2 modulo the odd prime `p` is divisible by 4.
pub fn ell_p_divisible_by_4(p: u64) -> Result<bool, Error> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime { p });
    }
    Ok(multiplicative_order(2, p)? % 4 == 0)
}

/// `Q_4` sweep: for each threshold `x`, the number of odd primes `p <= x`
/// with `4 | l_p`, normalized by `pi(x)`.
pub fn count_q4_sweep(thresholds: &[u64]) -> Result<Vec<DensityRecord>, Error> {
    check_thresholds(thresholds, 3)?;
    let x_max = *thresholds.last().unwrap();
    let spf = SpfTable::new(x_max)?;
    let mut records = Vec::with_capacity(thresholds.len());
    let mut count = 0u64;
    let mut pi = 0u64;
    let mut next = 2u64;
    for &x in thresholds {
        while next <= x {
            if spf.is_prime(next) {
                pi += 1;
                if next > 2 && order_of_two(next, &spf).is_multiple_of(4) {
                    count += 1;
                }
            }
            next += 1;
        }
        let normalizer = pi as f64;
        records.push(DensityRecord {
            threshold: x,
            count,
            normalizer,
            ratio: count as f64 / normalizer,
        });
    }
    Ok(records)
}

/// Single-threshold `Q_4(x)`.
pub fn count_q4(x: u64) -> Result<DensityRecord, Error> {
    Ok(count_q4_sweep(&[x])?.pop().expect("one threshold in, one record out"))
}

/// Whether `q` is counted by `N(Q)`: `q > 2`, `q = 2 mod 4`, and every odd
/// prime divisor `p` of `q` has `4 | l_p`. Divisibility by 4 forces
/// `p = 1 mod 4` for each such divisor, hence `q = 2 mod 8` for every
/// accepted `q`.
pub fn is_eligible_q(q: u64) -> bool {
    assert!(q < arith::MODULUS_CAP, "modulus above the 2^31 cap");
    if q <= 2 || q % 4 != 2 {
        return false;
    }
    let odd_part = factorize(q / 2).expect("below cap");
    let eligible = odd_part
        .factors()
        .iter()
        .all(|&(p, _)| multiplicative_order(2, p).expect("p odd prime").is_multiple_of(4));
    debug_assert!(!eligible || q % 8 == 2);
    eligible
}

fn eligible_with(q: u64, spf: &SpfTable, memo: &mut [u8]) -> bool {
    debug_assert!(q > 2 && q % 4 == 2);
    let mut m = q / 2;
    while m > 1 {
        let p = spf.smallest_prime_factor(m);
        let good = match memo[p as usize] {
            1 => true,
            2 => false,
            _ => {
                let good = order_of_two(p, spf).is_multiple_of(4);
                memo[p as usize] = if good { 1 } else { 2 };
                good
            }
        };
        if !good {
            return false;
        }
        while m.is_multiple_of(p) {
            m /= p;
        }
    }
    true
}

fn n_normalizer(q: u64) -> f64 {
    q as f64 / (q as f64).ln().powf(2.0 / 3.0)
}

/// `N(Q)` sweep: for each threshold, the number of eligible `q` up to it,
/// normalized by `Q/(ln Q)^(2/3)`.
pub fn count_n_sweep(thresholds: &[u64]) -> Result<Vec<DensityRecord>, Error> {
    check_thresholds(thresholds, 2)?;
    let q_max = *thresholds.last().unwrap();
    let spf = SpfTable::new(q_max)?;
    let mut memo = vec![0u8; q_max as usize / 2 + 1];
    let mut records = Vec::with_capacity(thresholds.len());
    let mut count = 0u64;
    let mut cand = 6u64; // first candidate past the excluded q = 2
    for &q in thresholds {
        while cand <= q {
            if eligible_with(cand, &spf, &mut memo) {
                debug_assert!(cand % 8 == 2);
                count += 1;
            }
            cand += 4;
        }
        let normalizer = n_normalizer(q);
        records.push(DensityRecord {
            threshold: q,
            count,
            normalizer,
            ratio: count as f64 / normalizer,
        });
    }
    Ok(records)
}

/// Single-threshold `N(Q)`.
pub fn count_n(q_max: u64) -> Result<DensityRecord, Error> {
    Ok(count_n_sweep(&[q_max])?.pop().expect("one threshold in, one record out"))
}

/// `(3q+2)/8` for eligible `q`, where it equals the exact minimum covering
/// size for `lambda = 2, mu = 1`. `None` signals an ineligible `q`.
pub fn omega21_formula(q: u64) -> Option<u64> {
    if !is_eligible_q(q) {
        return None;
    }
    debug_assert_eq!((3 * q + 2) % 8, 0);
    Some((3 * q + 2) / 8)
}

/// Mertens-analogue sweep: partial products of `1 + 1/(p-1)` over the odd
/// primes with `4 | l_p`, and the stabilizing estimate
/// `product/(ln x)^(1/3)`.
pub fn mertens_sweep(thresholds: &[u64]) -> Result<Vec<MertensRecord>, Error> {
    check_thresholds(thresholds, 5)?;
    let x_max = *thresholds.last().unwrap();
    let spf = SpfTable::new(x_max)?;
    let mut records = Vec::with_capacity(thresholds.len());
    let mut product = 1.0f64;
    let mut count = 0u64;
    let mut next = 3u64;
    for &x in thresholds {
        while next <= x {
            if spf.is_prime(next) && order_of_two(next, &spf).is_multiple_of(4) {
                product *= 1.0 + 1.0 / (next - 1) as f64;
                count += 1;
            }
            next += 1;
        }
        records.push(MertensRecord {
            threshold: x,
            count,
            product,
            eta: product / (x as f64).ln().powf(1.0 / 3.0),
        });
    }
    Ok(records)
}

/// Single-threshold Mertens product.
pub fn mertens_product(x: u64) -> Result<MertensRecord, Error> {
    Ok(mertens_sweep(&[x])?.pop().expect("one threshold in, one record out"))
}

/// Convergence table for the constant in front of `Q/(ln Q)^(2/3)`: the
/// ratio column is `N(Q)·(ln Q)^(2/3)/Q`. No limit is asserted; the table
/// is the product.
pub fn estimate_rho(thresholds: &[u64]) -> Result<Vec<DensityRecord>, Error> {
    count_n_sweep(thresholds)
}
