//! Integer and modular arithmetic primitives: factorization, modular
//! inverses and orders, prime sieves, and primitive roots.
//!
//! All inputs stay below [`MODULUS_CAP`] = 2^31, so the product of any two
//! reduced values fits in a `u64` and no intermediate can wrap.

use crate::Error;

/// Global input cap. Every modulus, sieve limit, and factored integer must
/// be below 2^31 so that `a * b` with `a, b < 2^31` never overflows `u64`.
pub const MODULUS_CAP: u64 = 1 << 31;

pub(crate) fn check_cap(value: u64) -> Result<(), Error> {
    if value >= MODULUS_CAP {
        Err(Error::CapExceeded { value })
    } else {
        Ok(())
    }
}

/// Prime-power decomposition of a positive integer, sorted descending by
/// the prime-power value `p^e`. Distinct primes guarantee the order is
/// strict, so the smallest prime power is always the last entry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    fn from_pairs(n: u64, mut factors: Vec<(u64, u32)>) -> Self {
        factors.sort_by_key(|&(p, e)| std::cmp::Reverse(p.pow(e)));
        Factorization { n, factors }
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    /// `(prime, exponent)` pairs, descending by `p^e`.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// r(n), the number of distinct prime divisors.
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn is_prime_power(&self) -> bool {
        self.factors.len() == 1
    }

    pub fn euler_phi(&self) -> u64 {
        self.factors
            .iter()
            .map(|&(p, e)| (p - 1) * p.pow(e - 1))
            .product()
    }
}

/// Factors `n` by trial division. `n = 1` yields an empty factor list.
pub fn factorize(n: u64) -> Result<Factorization, Error> {
    if n == 0 {
        return Err(Error::Zero);
    }
    check_cap(n)?;
    let mut m = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, m: &mut u64| {
        let mut e = 0;
        while (*m).is_multiple_of(p) {
            *m /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut m);
    let mut d = 3;
    while d * d <= m {
        push(d, &mut m);
        d += 2;
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization::from_pairs(n, factors))
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `base^exp mod m` by binary exponentiation; requires `m < 2^31`.
pub fn mod_pow(base: u64, mut exp: u64, m: u64) -> u64 {
    debug_assert!((1..MODULUS_CAP).contains(&m));
    if m == 1 {
        return 0;
    }
    let mut result = 1;
    let mut base = base % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    result
}

/// Inverse of `a` modulo `m` in `[1, m)`, by the extended Euclidean
/// algorithm. Fails unless `gcd(a, m) = 1`.
pub fn mod_inv(a: u64, m: u64) -> Result<u64, Error> {
    if m < 2 {
        return Err(Error::InvalidModulus { m });
    }
    check_cap(m)?;
    let a0 = a % m;
    // Invariants: r = s*a0 + t*m for both (old_r, old_s) and (r, s).
    let (mut old_r, mut r) = (a0 as i64, m as i64);
    let (mut old_s, mut s) = (1i64, 0i64);
    while r != 0 {
        let quot = old_r / r;
        (old_r, r) = (r, old_r - quot * r);
        (old_s, s) = (s, old_s - quot * s);
    }
    if old_r != 1 {
        return Err(Error::NotInvertible { a: a0, m });
    }
    Ok(old_s.rem_euclid(m as i64) as u64)
}

/// Least `t >= 1` with `a^t = 1 (mod m)`. The group order `phi(m)` is
/// factored and each prime is divided out of the candidate exponent while
/// `a` still powers to 1.
pub fn multiplicative_order(a: u64, m: u64) -> Result<u64, Error> {
    if m < 2 {
        return Err(Error::InvalidModulus { m });
    }
    check_cap(m)?;
    if gcd(a % m, m) != 1 {
        return Err(Error::NotInvertible { a: a % m, m });
    }
    let phi = factorize(m)?.euler_phi();
    Ok(multiplicative_order_factored(a, m, &factorize(phi)?))
}

/// Order of `a` mod `m` given the factorization of any multiple of it
/// (e.g. `phi(m)`, or `p - 1` for prime `m`). Used by the sweeps, which
/// factor `p - 1` through a shared [`SpfTable`] instead of trial division.
pub fn multiplicative_order_factored(a: u64, m: u64, exponent: &Factorization) -> u64 {
    debug_assert_eq!(gcd(a % m, m), 1);
    debug_assert_eq!(mod_pow(a, exponent.n(), m), 1);
    let mut t = exponent.n();
    for &(r, _) in exponent.factors() {
        while t.is_multiple_of(r) && mod_pow(a, t / r, m) == 1 {
            t /= r;
        }
    }
    t
}

/// Ascending list of all primes `<= x` (sieve of Eratosthenes).
pub fn sieve_primes(x: u64) -> Result<Vec<u64>, Error> {
    check_cap(x)?;
    if x < 2 {
        return Ok(Vec::new());
    }
    let n = x as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    Ok(primes)
}

/// Trial-division primality test, adequate for anything below the cap.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// Smallest-prime-factor table over `2..=limit`, enabling amortized
/// constant-time factorization inside range sweeps.
pub struct SpfTable {
    limit: u64,
    spf: Vec<u32>,
}

impl SpfTable {
    pub fn new(limit: u64) -> Result<SpfTable, Error> {
        check_cap(limit)?;
        let n = limit as usize;
        let mut spf = vec![0u32; n + 1];
        let mut i = 2;
        while i <= n {
            if spf[i] == 0 {
                let mut j = i;
                while j <= n {
                    if spf[j] == 0 {
                        spf[j] = i as u32;
                    }
                    j += i;
                }
            }
            i += 1;
        }
        Ok(SpfTable {
            limit,
            spf,
        })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    /// Least prime dividing `n`. Panics when `n < 2` or `n > limit`.
    pub fn smallest_prime_factor(&self, n: u64) -> u64 {
        assert!(
            (2..=self.limit).contains(&n),
            "smallest_prime_factor: {n} outside 2..={}",
            self.limit
        );
        self.spf[n as usize] as u64
    }

    pub fn is_prime(&self, n: u64) -> bool {
        n >= 2 && n <= self.limit && self.spf[n as usize] as u64 == n
    }

    /// Factorization by repeated table lookups; `n = 1` is the empty product.
    pub fn factorize(&self, n: u64) -> Factorization {
        assert!(n >= 1 && n <= self.limit);
        let mut m = n;
        let mut factors = Vec::new();
        while m > 1 {
            let p = self.spf[m as usize] as u64;
            let mut e = 0;
            while m.is_multiple_of(p) {
                m /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        Factorization::from_pairs(n, factors)
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        (2..=self.limit).filter(move |&n| self.spf[n as usize] as u64 == n)
    }
}

/// Whether `g` generates the full multiplicative group modulo the odd
/// prime `p`: `g^((p-1)/r) != 1` for every prime `r | p - 1`.
pub fn is_primitive_root(g: u64, p: u64) -> Result<bool, Error> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime { p });
    }
    if g.is_multiple_of(p) {
        return Ok(false);
    }
    let group = factorize(p - 1)?;
    Ok(group
        .factors()
        .iter()
        .all(|&(r, _)| mod_pow(g, (p - 1) / r, p) != 1))
}

/// Smallest primitive root modulo an odd prime.
pub fn primitive_root(p: u64) -> Result<u64, Error> {
    if p < 3 || !is_prime(p) {
        return Err(Error::NotOddPrime { p });
    }
    let group = factorize(p - 1)?;
    let mut g = 2;
    loop {
        if group
            .factors()
            .iter()
            .all(|&(r, _)| mod_pow(g, (p - 1) / r, p) != 1)
        {
            return Ok(g);
        }
        g += 1;
        debug_assert!(g < p);
    }
}
