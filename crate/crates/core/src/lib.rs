//! Exact roots-of-unity combinatorics and eigenvalue-set computations for
//! rational odd-order semisimple elements of the classical groups `SL_n`,
//! `Sp_2n` and `Spin_{2n+1}`.
//!
//! Everything lives in exponent space: a root of unity is an exponent modulo
//! `m`, a set of roots is a bitmap over `Z/M`, and every identity is checked
//! by exact set equality. No floating point exists anywhere in the crate.
//!
//! Module map:
//!
//! - [`cyclo`]: roots of unity as exponents, set algebra on subsets of the
//!   `M`-th roots (products, inverses, Galois orbits, rescaling).
//! - [`lambda`]: the derived subsets `Λ_i(Φ(m))`, `Λ*_3(Φ(m))` and `Δ(m)`,
//!   each with a brute-force construction and a closed form.
//! - [`identities`]: the identity suite relating the brute-force sets to
//!   their closed forms, runnable over all odd moduli up to a bound.
//! - [`elements`]: rational odd-order semisimple elements modelled as
//!   multisets of full Galois orbits, plus the characteristic-2 symplectic
//!   block decomposition.
//! - [`spectra`]: eigenvalue sets `E(ρ_ω(g))` for the supported highest
//!   weights, with brute-force sign/subset enumeration as ground truth.
//! - [`classify`]: exhaustive enumeration of elements up to rank/order
//!   bounds and case-by-case verification of the encoded exception tables.

pub mod classify;
pub mod cyclo;
pub mod elements;
pub mod identities;
pub mod lambda;
pub mod spectra;

pub use cyclo::{RootExp, RootSet};
pub use elements::{Family, GroupTag, OrbitBlock, SemisimpleElement};
pub use spectra::{Spectrum, Weight};

/// Serializes any report to canonical JSON: keys sorted, compact separators.
///
/// Parsing the output and re-serializing it yields the identical byte string,
/// which is what the golden tests and the CLI `--format json` mode rely on.
pub fn canonical_json<T: serde::Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("report serialization cannot fail");
    serde_json::to_string(&v).expect("JSON value printing cannot fail")
}
