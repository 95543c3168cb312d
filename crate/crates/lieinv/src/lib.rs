//! Exact-arithmetic invariants of finite-dimensional Lie algebras over Q.
//!
//! Everything here is symbolic: rationals are arbitrary-precision, linear
//! algebra is fraction-free, and no floating point is used anywhere. The
//! crate computes, for a Lie algebra given by structure constants:
//!
//! - the index and the derived "magic number" (half of dimension + index),
//! - the fundamental semi-invariant (a canonical polynomial obtained from
//!   Pfaffians of principal minors of the structure matrix),
//! - the Frobenius semiradical (the subspace spanned by stabilizers of
//!   regular functionals) and the quasi quadratic / square integrable /
//!   unimodular / singular / Frobenius flags,
//! - Poisson-commutative polynomial families, their centrality in the
//!   Poisson center, transcendence degree, and completeness,
//! - maximal abelian subalgebra dimensions, adapted filiform invariants,
//!   and general lower/upper bounds for them,
//! - a built-in catalog of low-dimensional nilpotent algebras, parametric
//!   families, and classical examples with independently recorded expected
//!   values for cross-checking.
//!
//! Start with [`lie::LieAlgebra`] for constructing algebras,
//! [`invariants`] and [`poisson`] for the main computations, and
//! [`catalog`] for the bundled examples. The `lieinv` binary exposes the
//! same functionality on the command line.

pub mod abelian;
pub mod catalog;
pub mod families;
pub mod gcd;
pub mod invariants;
pub mod lie;
pub mod linalg;
pub mod matrix;
pub mod pfaffian;
pub mod poisson;
pub mod poly;
pub mod rat;

/// Serializes a value as pretty JSON with one-space indentation, keys in
/// sorted order, and a trailing newline — the canonical on-disk form used
/// by the algebra files, stable byte-for-byte across round trips.
pub fn canonical_json<T: serde::Serialize>(value: &T) -> String {
    let value = serde_json::to_value(value).expect("value serializes to JSON");
    let mut buf = Vec::new();
    let fmt = serde_json::ser::PrettyFormatter::with_indent(b" ");
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    serde::Serialize::serialize(&value, &mut ser).expect("JSON serialization cannot fail");
    let mut out = String::from_utf8(buf).expect("serde_json emits UTF-8");
    out.push('\n');
    out
}
