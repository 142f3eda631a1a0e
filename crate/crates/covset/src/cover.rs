//! Core domain types and the covering/packing verifier.
//!
//! [`ErrorSpec`] fixes the channel `(q, lambda, mu)`, [`CoveringSet`] is a
//! candidate subset of `Z_q` with provenance, and [`verify`] computes the
//! product set `M·S` exactly. Every construction and search result in the
//! crate is ultimately checked against this verifier.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{check_cap, MODULUS_CAP};
use crate::bits::BitSet;
use crate::Error;

/// The triple `(q, lambda, mu)`: modulus and magnitude bounds of the
/// channel. The magnitude set is `M = {-mu, ..., lambda} \ {0}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ErrorSpec {
    q: u64,
    lambda: u64,
    mu: u64,
}

impl ErrorSpec {
    /// Requires `1 <= q < 2^31`, `lambda + mu >= 1` and, for `q >= 2`,
    /// `lambda, mu < q`. For `q = 1` the ring collapses to `{0}` and the
    /// magnitude bounds are immaterial, so they are not restricted; range
    /// sweeps over `q` stay total this way.
    pub fn new(q: u64, lambda: u64, mu: u64) -> Result<Self, Error> {
        let bounds_ok = q == 1 || (lambda < q && mu < q);
        if q == 0 || q >= MODULUS_CAP || lambda + mu == 0 || !bounds_ok {
            return Err(Error::InvalidSpec { q, lambda, mu });
        }
        Ok(ErrorSpec { q, lambda, mu })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn mu(&self) -> u64 {
        self.mu
    }

    /// `lambda + mu`, the number of magnitudes in `M`.
    pub fn magnitude_count(&self) -> u64 {
        self.lambda + self.mu
    }

    /// The spec with `lambda` and `mu` exchanged. `S` covers (packs) for
    /// the swapped spec exactly when `-S` covers (packs) for the original.
    pub fn swapped(&self) -> ErrorSpec {
        ErrorSpec {
            q: self.q,
            lambda: self.mu,
            mu: self.lambda,
        }
    }
}

/// The magnitude set `M` as signed integers, ascending:
/// `-mu, ..., -1, 1, ..., lambda`. Reduction mod `q` happens at product
/// time.
pub fn magnitude_set(spec: &ErrorSpec) -> Vec<i64> {
    (-(spec.mu as i64)..=spec.lambda as i64)
        .filter(|&m| m != 0)
        .collect()
}

/// Which construction produced a set; `Explicit` marks externally supplied
/// or search-found sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    PrimeInverse,
    PrimePowerLarge,
    CompositeSmallLambda,
    CompositeLargeLambda,
    TrivialPair,
    IntervalResidual,
    Explicit,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::PrimeInverse => "prime-inverse",
            Method::PrimePowerLarge => "prime-power-large",
            Method::CompositeSmallLambda => "composite-small-lambda",
            Method::CompositeLargeLambda => "composite-large-lambda",
            Method::TrivialPair => "trivial-pair",
            Method::IntervalResidual => "interval-residual",
            Method::Explicit => "explicit",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "prime-inverse" => Ok(Method::PrimeInverse),
            "prime-power-large" => Ok(Method::PrimePowerLarge),
            "composite-small-lambda" => Ok(Method::CompositeSmallLambda),
            "composite-large-lambda" => Ok(Method::CompositeLargeLambda),
            "trivial-pair" => Ok(Method::TrivialPair),
            "interval-residual" => Ok(Method::IntervalResidual),
            "explicit" => Ok(Method::Explicit),
            _ => Err(Error::Precondition("unrecognized construction method")),
        }
    }
}

/// A candidate subset of `Z_q`: distinct residues in `[0, q)`, stored
/// ascending, plus the provenance tag of whichever construction produced
/// it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoveringSet {
    q: u64,
    elements: Vec<u64>,
    method: Method,
}

impl CoveringSet {
    /// Sorts, deduplicates, and range-checks the elements.
    pub fn new(q: u64, mut elements: Vec<u64>, method: Method) -> Result<Self, Error> {
        if q == 0 {
            return Err(Error::Zero);
        }
        check_cap(q)?;
        elements.sort_unstable();
        elements.dedup();
        if let Some(&e) = elements.last() {
            if e >= q {
                return Err(Error::ElementOutOfRange { element: e, q });
            }
        }
        Ok(CoveringSet {
            q,
            elements,
            method,
        })
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn method(&self) -> Method {
        self.method
    }

    /// `-S = {(q - s) mod q}`, sorted, keeping the method tag. If `S`
    /// covers (packs) for `(q, lambda, mu)` then `-S` covers (packs) for
    /// `(q, mu, lambda)`.
    pub fn negate(&self) -> CoveringSet {
        let mut elements: Vec<u64> = self
            .elements
            .iter()
            .map(|&s| if s == 0 { 0 } else { self.q - s })
            .collect();
        elements.sort_unstable();
        CoveringSet {
            q: self.q,
            elements,
            method: self.method,
        }
    }
}

/// Outcome of verifying one `(spec, set)` pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    /// `#(M·S)`, equivalently the number of residues of `Z_q` covered.
    pub covered_count: u64,
    /// Residues not covered, ascending. Empty iff covering.
    pub missing: Vec<u64>,
    pub is_covering: bool,
    /// Size of the product set `M·S`.
    pub product_count: u64,
    /// True iff all `(lambda+mu)·|S|` products are pairwise distinct.
    pub is_packing: bool,
}

/// Magnitudes reduced into `[0, q)`.
fn reduced_magnitudes(spec: &ErrorSpec) -> Vec<u64> {
    magnitude_set(spec)
        .into_iter()
        .map(|m| m.rem_euclid(spec.q as i64) as u64)
        .collect()
}

pub(crate) fn product_bits(spec: &ErrorSpec, set: &CoveringSet) -> Result<BitSet, Error> {
    if set.q != spec.q {
        return Err(Error::ModulusMismatch {
            set_q: set.q,
            spec_q: spec.q,
        });
    }
    let q = spec.q;
    let mags = reduced_magnitudes(spec);
    let mut bits = BitSet::new(q);
    for &s in &set.elements {
        for &m in &mags {
            bits.insert(m * s % q);
        }
    }
    Ok(bits)
}

/// The product set `M·S = {m·s mod q}` as an ascending, deduplicated list.
pub fn product_set(spec: &ErrorSpec, set: &CoveringSet) -> Result<Vec<u64>, Error> {
    Ok(product_bits(spec, set)?.ones().collect())
}

/// Computes `M·S` and reports coverage and packing in one pass.
pub fn verify(spec: &ErrorSpec, set: &CoveringSet) -> Result<CoverageReport, Error> {
    let bits = product_bits(spec, set)?;
    let product_count = bits.count();
    let missing: Vec<u64> = bits.zeros().collect();
    let is_covering = missing.is_empty();
    debug_assert_eq!(product_count + missing.len() as u64, spec.q);
    Ok(CoverageReport {
        covered_count: product_count,
        missing,
        is_covering,
        product_count,
        is_packing: product_count == spec.magnitude_count() * set.len() as u64,
    })
}

/// Interchange form of a covering set: the spec it was built for plus the
/// elements. This is the JSON schema the CLI subcommands exchange.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringSetRecord {
    pub q: u64,
    pub lambda: u64,
    pub mu: u64,
    pub method: String,
    pub size: usize,
    pub elements: Vec<u64>,
    /// Interval part of an interval-residual construction.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub interval_size: Option<u64>,
    /// Residual part of an interval-residual construction.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub residual_size: Option<u64>,
}

impl CoveringSetRecord {
    pub fn new(spec: &ErrorSpec, set: &CoveringSet) -> Self {
        CoveringSetRecord {
            q: spec.q(),
            lambda: spec.lambda(),
            mu: spec.mu(),
            method: set.method().as_str().to_owned(),
            size: set.len(),
            elements: set.elements().to_vec(),
            interval_size: None,
            residual_size: None,
        }
    }

    /// Rebuilds the validated pair. An unrecognized method tag degrades to
    /// `Explicit` so that hand-written files still verify.
    pub fn to_parts(&self) -> Result<(ErrorSpec, CoveringSet), Error> {
        let spec = ErrorSpec::new(self.q, self.lambda, self.mu)?;
        let method = Method::from_str(&self.method).unwrap_or(Method::Explicit);
        let set = CoveringSet::new(self.q, self.elements.clone(), method)?;
        Ok((spec, set))
    }
}
