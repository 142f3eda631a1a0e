//! Covering and packing sets for limited-magnitude errors in residue rings.
//!
//! For a modulus `q` and non-negative magnitudes `lambda`, `mu` (not both
//! zero), the magnitude set is `M = {-mu, ..., lambda} \ {0}`. A set
//! `S ⊆ Z_q` is a *covering set* when `M·S = {m·s mod q} = Z_q`, and a
//! *packing set* when all `(lambda+mu)·|S|` products are distinct. Small
//! covering sets underpin codes that correct limited-magnitude errors.
//!
//! The crate provides:
//!
//! - [`cover`]: the domain types ([`ErrorSpec`], [`CoveringSet`]) and the
//!   product-set / covering / packing verifier everything else is checked
//!   against;
//! - [`construct`]: explicit covering-set constructions for prime, prime
//!   power and composite moduli, plus an interval-with-residual fallback;
//! - [`search`]: exact minimum covering size (branch and bound), exact
//!   `nu` and packing maxima on small instances, and the primitive-root
//!   run-length bound;
//! - [`density`]: multiplicative-order-of-2 statistics behind the closed
//!   formula `omega_{2,1}(q) = (3q+2)/8`, with convergence tables;
//! - [`arith`]: the shared integer and modular arithmetic primitives.

use std::error;
use std::fmt;

pub mod arith;
mod bits;
pub mod construct;
pub mod cover;
pub mod density;
pub mod search;

pub use cover::{CoverageReport, CoveringSet, CoveringSetRecord, ErrorSpec, Method};

/// Errors shared across the crate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// A positive integer was required.
    Zero,
    /// Input at or above the `2^31` cap that keeps all products in `u64`.
    CapExceeded { value: u64 },
    /// Modulus smaller than 2 where a real modulus is needed.
    InvalidModulus { m: u64 },
    /// `a` has no inverse modulo `m`.
    NotInvertible { a: u64, m: u64 },
    /// The argument must be an odd prime.
    NotOddPrime { p: u64 },
    /// `g` does not generate the multiplicative group modulo `p`.
    NotPrimitiveRoot { g: u64, p: u64 },
    /// `(q, lambda, mu)` violates the spec invariants.
    InvalidSpec { q: u64, lambda: u64, mu: u64 },
    /// A set built for one modulus was used with another.
    ModulusMismatch { set_q: u64, spec_q: u64 },
    /// A set element lies outside `[0, q)`.
    ElementOutOfRange { element: u64, q: u64 },
    /// A search instance exceeds the configured limits.
    LimitExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    /// An operation-specific precondition failed.
    Precondition(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Zero => write!(f, "argument must be a positive integer"),
            Error::CapExceeded { value } => {
                write!(f, "{value} is at or above the 2^31 input cap")
            }
            Error::InvalidModulus { m } => write!(f, "modulus {m} must be at least 2"),
            Error::NotInvertible { a, m } => write!(f, "{a} is not invertible modulo {m}"),
            Error::NotOddPrime { p } => write!(f, "{p} is not an odd prime"),
            Error::NotPrimitiveRoot { g, p } => {
                write!(f, "{g} is not a primitive root modulo {p}")
            }
            Error::InvalidSpec { q, lambda, mu } => write!(
                f,
                "invalid error spec: q={q}, lambda={lambda}, mu={mu} \
                 (need 1 <= q < 2^31, lambda+mu >= 1, and lambda, mu < q for q >= 2)"
            ),
            Error::ModulusMismatch { set_q, spec_q } => {
                write!(f, "set modulus {set_q} does not match spec modulus {spec_q}")
            }
            Error::ElementOutOfRange { element, q } => {
                write!(f, "element {element} is outside [0, {q})")
            }
            Error::LimitExceeded { what, value, limit } => {
                write!(f, "{what} = {value} exceeds the limit {limit}")
            }
            Error::Precondition(msg) => write!(f, "{msg}"),
        }
    }
}

impl error::Error for Error {}
