//! Explicit covering-set constructions.
//!
//! For prime powers there are two regimes: small `lambda < p` uses the
//! family of inverses `{±j^{-1} mod p : j <= ceil(p/lambda) - 1}` extended
//! through the power, and `p <= lambda < p^l` uses powers of `p` below the
//! threshold digit. Composite moduli peel off the smallest prime power
//! `p^l` (factors are kept descending by prime-power value) and either
//! lift a recursive solution for the cofactor or, when `lambda` already
//! exceeds the cofactor, cover digit-wise. [`construct_general`] dispatches
//! between all of these plus the trivial pair `{0, 1}`, reducing
//! `mu > lambda` by negation first.
//!
//! [`interval_plus_residual`] is the brute-force alternative: take the
//! interval `{1..L}` and patch in every residue it misses. The output is a
//! covering set by construction; only its size is interesting.

use crate::arith::{check_cap, factorize, gcd, is_prime, mod_pow};
use crate::cover::{product_bits, CoveringSet, ErrorSpec, Method};
use crate::Error;

fn checked_prime_power(p: u64, ell: u32) -> Result<u64, Error> {
    let q = p
        .checked_pow(ell)
        .ok_or(Error::CapExceeded { value: u64::MAX })?;
    check_cap(q)?;
    Ok(q)
}

/// Largest `i >= 0` with `base^i <= x`.
fn floor_log(base: u64, x: u64) -> u32 {
    debug_assert!(base >= 2 && x >= 1);
    let mut i = 0;
    let mut v = 1;
    while v <= x / base {
        v *= base;
        i += 1;
    }
    i
}

/// Covering set for `q = p^ell` with `1 <= lambda < p`: take
/// `H = ceil(p/lambda) - 1`, let the low digit range over
/// `{±j^{-1} mod p : 1 <= j <= H} ∪ {0}`, and let the high digits run
/// free. At most `(2H+1)·p^(ell-1)` elements; inverses can collide, so the
/// set is deduplicated and the count is an upper bound.
pub fn construct_prime_case(p: u64, ell: u32, lambda: u64) -> Result<CoveringSet, Error> {
    if !is_prime(p) {
        return Err(Error::Precondition("p must be prime"));
    }
    if ell == 0 {
        return Err(Error::Precondition("exponent must be at least 1"));
    }
    let q = checked_prime_power(p, ell)?;
    if lambda == 0 || lambda >= p {
        return Err(Error::Precondition("need 1 <= lambda < p"));
    }
    let h = p.div_ceil(lambda) - 1;
    let mut low = vec![0u64];
    for j in 1..=h {
        // j < p, so j is a unit; Fermat gives the inverse
        let inv = mod_pow(j, p - 2, p);
        low.push(inv);
        low.push((p - inv) % p);
    }
    let stride = q / p;
    let mut elements = Vec::with_capacity(low.len() * stride as usize);
    for s1 in 0..stride {
        for &s0 in &low {
            elements.push(s0 + s1 * p);
        }
    }
    CoveringSet::new(q, elements, Method::PrimeInverse)
}

/// Covering set for `q = p^ell` with `p <= lambda < p^ell`: with `j` the
/// largest power with `p^j <= lambda`, the low digit ranges over
/// `{p^i : i < j} ∪ {0}` and the rest of the expansion runs free. Exactly
/// `(j+1)·p^(ell-j)` elements, all distinct.
pub fn construct_prime_power_large(p: u64, ell: u32, lambda: u64) -> Result<CoveringSet, Error> {
    if !is_prime(p) {
        return Err(Error::Precondition("p must be prime"));
    }
    if ell == 0 {
        return Err(Error::Precondition("exponent must be at least 1"));
    }
    let q = checked_prime_power(p, ell)?;
    if lambda < p || lambda >= q {
        return Err(Error::Precondition("need p <= lambda < p^ell"));
    }
    let j = floor_log(p, lambda);
    debug_assert!(1 <= j && j < ell);
    let mut low = vec![0u64];
    low.extend((0..j).map(|i| p.pow(i)));
    let stride = p.pow(j);
    let count = q / stride;
    let mut elements = Vec::with_capacity(low.len() * count as usize);
    for s1 in 0..count {
        for &s0 in &low {
            elements.push(s0 + s1 * stride);
        }
    }
    let set = CoveringSet::new(q, elements, Method::PrimePowerLarge)?;
    debug_assert_eq!(set.len() as u64, (j as u64 + 1) * count);
    Ok(set)
}

/// Dispatches between the two prime-power regimes on `lambda < p`.
pub fn construct_prime_power(p: u64, ell: u32, lambda: u64) -> Result<CoveringSet, Error> {
    if lambda != 0 && lambda < p {
        construct_prime_case(p, ell, lambda)
    } else {
        construct_prime_power_large(p, ell, lambda)
    }
}

/// Lifts a `(lambda, 0)`-covering set `s0` for the cofactor `q_tilde` to
/// one for `q = q_tilde * p^ell`, for `lambda < q_tilde` and
/// `gcd(q_tilde, p) = 1`. The cofactor part is closed under multiplication
/// by `p` (powers up to `floor(log q_tilde / log p)` suffice, since no
/// magnitude is divisible by a larger power), and the `p^ell` digit runs
/// free.
pub fn lift_small_lambda(
    q_tilde: u64,
    p: u64,
    ell: u32,
    s0: &CoveringSet,
    lambda: u64,
) -> Result<CoveringSet, Error> {
    if !is_prime(p) {
        return Err(Error::Precondition("p must be prime"));
    }
    if ell == 0 {
        return Err(Error::Precondition("exponent must be at least 1"));
    }
    if q_tilde < 2 || gcd(q_tilde, p) != 1 {
        return Err(Error::Precondition("q_tilde must be >= 2 and coprime to p"));
    }
    if lambda == 0 || lambda >= q_tilde {
        return Err(Error::Precondition("need 1 <= lambda < q_tilde"));
    }
    if s0.q() != q_tilde {
        return Err(Error::ModulusMismatch {
            set_q: s0.q(),
            spec_q: q_tilde,
        });
    }
    let pl = checked_prime_power(p, ell)?;
    let q = q_tilde
        .checked_mul(pl)
        .ok_or(Error::CapExceeded { value: u64::MAX })?;
    check_cap(q)?;

    let mut closed = crate::bits::BitSet::new(q_tilde);
    let mut power = 1u64;
    for _ in 0..=floor_log(p, q_tilde) {
        for &s in s0.elements() {
            closed.insert(power * s % q_tilde);
        }
        power = power * p % q_tilde;
    }
    let lifted: Vec<u64> = closed.ones().collect();

    let mut elements = Vec::with_capacity(lifted.len() * pl as usize);
    for s2 in 0..pl {
        let base = s2 * q_tilde;
        for &s1 in &lifted {
            elements.push(s1 + base);
        }
    }
    CoveringSet::new(q, elements, Method::CompositeSmallLambda)
}

/// Covering set for `q = q_tilde * p^ell` valid for any
/// `lambda >= q_tilde`: the cofactor digit ranges over
/// `{p^i : p^i <= q_tilde} ∪ {0}` and the `p^ell` digit runs free. At most
/// `(floor(log q_tilde / log p) + 2)·p^ell` elements.
pub fn composite_large_lambda(q_tilde: u64, p: u64, ell: u32) -> Result<CoveringSet, Error> {
    if !is_prime(p) {
        return Err(Error::Precondition("p must be prime"));
    }
    if ell == 0 {
        return Err(Error::Precondition("exponent must be at least 1"));
    }
    if q_tilde < 2 || gcd(q_tilde, p) != 1 {
        return Err(Error::Precondition("q_tilde must be >= 2 and coprime to p"));
    }
    let pl = checked_prime_power(p, ell)?;
    let q = q_tilde
        .checked_mul(pl)
        .ok_or(Error::CapExceeded { value: u64::MAX })?;
    check_cap(q)?;

    let mut low = vec![0u64];
    low.extend((0..=floor_log(p, q_tilde)).map(|i| p.pow(i)));
    let mut elements = Vec::with_capacity(low.len() * pl as usize);
    for s1 in 0..pl {
        let base = s1 * q_tilde;
        for &s0 in &low {
            debug_assert!(s0 < q_tilde);
            elements.push(s0 + base);
        }
    }
    CoveringSet::new(q, elements, Method::CompositeLargeLambda)
}

fn trivial_pair(q: u64) -> CoveringSet {
    let elements = if q == 1 { vec![0] } else { vec![0, 1] };
    CoveringSet::new(q, elements, Method::TrivialPair).expect("elements below q")
}

/// Constructs a `(lambda, mu; q)`-covering set for any valid spec:
///
/// 1. `lambda + mu >= q - 1`: the pair `{0, 1}` covers.
/// 2. `mu > lambda`: construct for the swapped spec and negate.
/// 3. `q = p^ell`: prime-power construction with `lambda`.
/// 4. otherwise peel the smallest prime power `p^ell` off `q` and either
///    lift a recursive cover of the cofactor (`lambda` small) or cover
///    digit-wise (`lambda >= q/p^ell`).
///
/// A `(lambda, 0)`-covering set is a fortiori `(lambda, mu)`-covering, so
/// branches 3 and 4 ignore `mu`.
pub fn construct_general(spec: &ErrorSpec) -> CoveringSet {
    let (q, lambda, mu) = (spec.q(), spec.lambda(), spec.mu());
    if lambda + mu >= q - 1 {
        return trivial_pair(q);
    }
    if mu > lambda {
        return construct_general(&spec.swapped()).negate();
    }
    // here lambda >= max(mu, 1) and q >= 3
    let f = factorize(q).expect("spec keeps q below the cap");
    if f.is_prime_power() {
        let (p, ell) = f.factors()[0];
        return construct_prime_power(p, ell, lambda).expect("1 <= lambda < q = p^ell");
    }
    let &(p, ell) = f.factors().last().expect("q >= 3 has a factor");
    let q_tilde = q / p.pow(ell);
    if lambda < q_tilde {
        let inner = ErrorSpec::new(q_tilde, lambda, 0).expect("1 <= lambda < q_tilde");
        lift_small_lambda(q_tilde, p, ell, &construct_general(&inner), lambda)
            .expect("preconditions hold by construction")
    } else {
        composite_large_lambda(q_tilde, p, ell).expect("preconditions hold by construction")
    }
}

/// An interval-plus-residual cover together with the sizes of its parts.
#[derive(Debug, Clone)]
pub struct IntervalCover {
    pub set: CoveringSet,
    /// Size of the interval part `{1..min(L, q-1)}`.
    pub interval_size: u64,
    /// Number of residues the interval missed.
    pub residual_size: u64,
}

/// Takes `S0 = {1..interval_len}` (clamped to `q - 1`) and adds every
/// residue of `Z_q` that `M·S0` misses. Always a covering set; the
/// interesting output is the size split, which shows how quickly the
/// residual shrinks as the interval grows. `mu > lambda` is reduced by
/// negation like [`construct_general`].
pub fn interval_plus_residual(
    spec: &ErrorSpec,
    interval_len: u64,
) -> Result<IntervalCover, Error> {
    if interval_len == 0 {
        return Err(Error::Precondition("interval length must be at least 1"));
    }
    if spec.mu() > spec.lambda() {
        let swapped = interval_plus_residual(&spec.swapped(), interval_len)?;
        return Ok(IntervalCover {
            set: swapped.set.negate(),
            ..swapped
        });
    }
    let q = spec.q();
    let len = interval_len.min(q - 1);
    let interval: Vec<u64> = (1..=len).collect();
    let s0 = CoveringSet::new(q, interval, Method::IntervalResidual)?;
    let covered = product_bits(spec, &s0)?;
    let mut elements = s0.elements().to_vec();
    let residual: Vec<u64> = covered.zeros().collect();
    let residual_size = residual.len() as u64;
    elements.extend(residual);
    Ok(IntervalCover {
        set: CoveringSet::new(q, elements, Method::IntervalResidual)?,
        interval_size: len,
        residual_size,
    })
}

/// Default interval length `ceil(q / sqrt(max(lambda, mu)))`, clamped to
/// at least 1.
pub fn default_interval_len(spec: &ErrorSpec) -> u64 {
    let m = spec.lambda().max(spec.mu()) as f64;
    ((spec.q() as f64 / m.sqrt()).ceil() as u64).max(1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cover::verify;

    fn spec(q: u64, lambda: u64, mu: u64) -> ErrorSpec {
        ErrorSpec::new(q, lambda, mu).unwrap()
    }

    fn assert_covers(sp: &ErrorSpec, set: &CoveringSet) {
        let report = verify(sp, set).unwrap();
        assert!(
            report.is_covering,
            "q={} lambda={} mu={} method={} missing={:?}",
            sp.q(),
            sp.lambda(),
            sp.mu(),
            set.method(),
            &report.missing[..report.missing.len().min(10)]
        );
    }

    #[test]
    fn prime_case_examples() {
        let s = construct_prime_case(7, 1, 3).unwrap();
        assert_eq!(s.elements(), &[0, 1, 3, 4, 6]);
        assert_covers(&spec(7, 3, 0), &s);

        let s = construct_prime_case(7, 1, 2).unwrap();
        assert_eq!(s.len(), 7); // 2*ceil(7/2) - 1 exhausts Z_7
        assert_covers(&spec(7, 2, 0), &s);

        let s = construct_prime_case(3, 2, 1).unwrap();
        assert_eq!(s.len(), 9); // the ± inverses of {1, 2} fill Z_3
        assert_covers(&spec(9, 1, 0), &s);
    }

    #[test]
    fn prime_case_rejects_bad_lambda() {
        assert!(construct_prime_case(7, 1, 0).is_err());
        assert!(construct_prime_case(7, 1, 7).is_err());
        assert!(construct_prime_case(6, 1, 2).is_err());
    }

    #[test]
    fn prime_power_large_examples() {
        let s = construct_prime_power_large(3, 2, 3).unwrap();
        assert_eq!(s.elements(), &[0, 1, 3, 4, 6, 7]);
        assert_covers(&spec(9, 3, 0), &s);

        let s = construct_prime_power_large(2, 3, 4).unwrap();
        assert_eq!(s.elements(), &[0, 1, 2, 4, 5, 6]);
        assert_covers(&spec(8, 4, 0), &s);

        let s = construct_prime_power_large(2, 2, 2).unwrap();
        assert_eq!(s.elements(), &[0, 1, 2, 3]);
        assert_covers(&spec(4, 2, 0), &s);
    }

    #[test]
    fn prime_power_large_size_is_exact() {
        for (p, ell) in [(2u64, 5u32), (3, 3), (5, 3)] {
            let q = p.pow(ell);
            for lambda in p..q {
                let s = construct_prime_power_large(p, ell, lambda).unwrap();
                let j = floor_log(p, lambda);
                assert_eq!(s.len() as u64, (j as u64 + 1) * p.pow(ell - j));
                assert_covers(&spec(q, lambda, 0), &s);
            }
        }
    }

    #[test]
    fn prime_power_dispatch() {
        assert_eq!(
            construct_prime_power(7, 1, 3).unwrap(),
            construct_prime_case(7, 1, 3).unwrap()
        );
        assert_eq!(
            construct_prime_power(3, 2, 3).unwrap(),
            construct_prime_power_large(3, 2, 3).unwrap()
        );
        let s = construct_prime_power(2, 1, 1).unwrap();
        assert_eq!(s.elements(), &[0, 1]);
        assert_covers(&spec(2, 1, 0), &s);
    }

    #[test]
    fn lift_example() {
        let s0 = construct_prime_case(5, 1, 3).unwrap();
        assert_eq!(s0.elements(), &[0, 1, 4]);
        let s = lift_small_lambda(5, 3, 1, &s0, 3).unwrap();
        // the p-power closure of {0,1,4} is all of Z_5
        assert_eq!(s.len(), 15);
        assert_covers(&spec(15, 3, 0), &s);

        let s0 = construct_prime_case(7, 1, 3).unwrap();
        let s = lift_small_lambda(7, 2, 1, &s0, 3).unwrap();
        assert_covers(&spec(14, 3, 0), &s);
    }

    #[test]
    fn floor_log_values() {
        assert_eq!(floor_log(2, 7), 2);
        assert_eq!(floor_log(3, 5), 1);
        assert_eq!(floor_log(2, 8), 3);
        assert_eq!(floor_log(10, 9), 0);
    }

    #[test]
    fn composite_large_examples() {
        let s = composite_large_lambda(3, 2, 1).unwrap();
        assert_eq!(s.elements(), &[0, 1, 2, 3, 4, 5]);
        assert_covers(&spec(6, 3, 0), &s);

        let s = composite_large_lambda(5, 3, 1).unwrap();
        assert!(s.len() <= 9); // (floor(log 5/log 3) + 2) * 3
        assert_covers(&spec(15, 5, 0), &s);
    }

    #[test]
    fn lift_rejects_bad_inputs() {
        let s0 = construct_prime_case(5, 1, 3).unwrap();
        assert!(lift_small_lambda(5, 5, 1, &s0, 3).is_err()); // not coprime
        assert!(lift_small_lambda(5, 3, 1, &s0, 5).is_err()); // lambda too big
        assert!(lift_small_lambda(7, 3, 1, &s0, 3).is_err()); // wrong modulus
        assert!(composite_large_lambda(6, 3, 1).is_err());
    }

    #[test]
    fn general_dispatch_examples() {
        let s = construct_general(&spec(7, 3, 0));
        assert_eq!(s.elements(), &[0, 1, 3, 4, 6]);
        assert_eq!(s.method(), Method::PrimeInverse);

        // negation branch; this particular set is symmetric
        let s = construct_general(&spec(7, 0, 3));
        assert_eq!(s.elements(), &[0, 1, 3, 4, 6]);
        assert_covers(&spec(7, 0, 3), &s);

        let s = construct_general(&spec(9, 8, 0));
        assert_eq!(s.elements(), &[0, 1]);
        assert_eq!(s.method(), Method::TrivialPair);

        let s = construct_general(&spec(15, 3, 0));
        assert_eq!(s.method(), Method::CompositeSmallLambda);
        assert_covers(&spec(15, 3, 0), &s);

        let s = construct_general(&spec(15, 5, 0));
        assert_eq!(s.method(), Method::CompositeLargeLambda);
        assert_covers(&spec(15, 5, 0), &s);

        let s = construct_general(&spec(1, 1, 0));
        assert_eq!(s.elements(), &[0]);
        assert_covers(&spec(1, 1, 0), &s);
    }

    #[test]
    fn general_is_sound_on_a_small_grid() {
        for q in 1..=120u64 {
            for lambda in 0..q.min(12) {
                for mu in 0..q.min(12) {
                    let Ok(sp) = ErrorSpec::new(q, lambda, mu) else {
                        continue;
                    };
                    let s = construct_general(&sp);
                    assert_covers(&sp, &s);
                    if sp.magnitude_count() < q {
                        let lower = q.div_ceil(sp.magnitude_count());
                        assert!(s.len() as u64 >= lower);
                    }
                }
            }
        }
    }

    #[test]
    fn prime_bound_spot_checks() {
        for p in [2u64, 3, 5, 7, 11, 13, 97, 101] {
            for lambda in 1..p {
                let s = construct_general(&spec(p, lambda, 0));
                let bound = 2 * p.div_ceil(lambda) - 1;
                assert!(s.len() as u64 <= bound, "p={p} lambda={lambda}");
            }
        }
    }

    #[test]
    fn interval_examples() {
        let c = interval_plus_residual(&spec(5, 1, 1), 2).unwrap();
        assert_eq!(c.set.elements(), &[0, 1, 2]);
        assert_eq!((c.interval_size, c.residual_size), (2, 1));

        let c = interval_plus_residual(&spec(101, 10, 0), 32).unwrap();
        assert_eq!(c.set.method(), Method::IntervalResidual);
        assert_covers(&spec(101, 10, 0), &c.set);
        assert_eq!(c.set.len() as u64, c.interval_size + c.residual_size);

        // interval of everything: residual is at most {0}
        let c = interval_plus_residual(&spec(30, 2, 1), 29).unwrap();
        assert!(c.residual_size <= 1);
        assert_covers(&spec(30, 2, 1), &c.set);

        // mu-dominant specs reduce by negation
        let c = interval_plus_residual(&spec(31, 1, 5), 10).unwrap();
        assert_covers(&spec(31, 1, 5), &c.set);

        assert!(interval_plus_residual(&spec(5, 1, 1), 0).is_err());
    }

    #[test]
    fn default_interval_length() {
        assert_eq!(default_interval_len(&spec(101, 10, 0)), 32);
        assert_eq!(default_interval_len(&spec(5, 1, 1)), 5);
        assert_eq!(default_interval_len(&spec(1000, 16, 0)), 250);
    }
}
