//! Arbitrary-precision rational numbers: the coefficient field for everything
//! in this crate.
//!
//! All computations run over the rationals (and rational-function fields built
//! on top of them). The invariants computed here — ranks, kernels, polynomial
//! GCDs, polynomial identities — do not change under field extension for
//! rationally-defined inputs, so exact rational arithmetic suffices even
//! though the underlying theory is usually stated over an algebraically
//! closed field.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, Zero};

/// The scalar type used throughout: an arbitrary-precision rational, always
/// kept in lowest terms with a positive denominator.
pub type Rat = BigRational;

/// Builds the rational `n / d`. Panics if `d == 0`.
pub fn rat(n: i64, d: i64) -> Rat {
    Rat::new(BigInt::from(n), BigInt::from(d))
}

/// Builds the integer rational `n / 1`.
pub fn rat_int(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

/// Parses `"p"` or `"p/q"` (optionally signed, surrounding whitespace
/// ignored) into a rational in lowest terms.
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let t = s.trim();
    if t.is_empty() {
        return Err("empty rational literal".into());
    }
    let (n, d) = match t.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (t, "1"),
    };
    let numer: BigInt = n
        .parse()
        .map_err(|e| format!("bad numerator `{n}`: {e}"))?;
    let denom: BigInt = d
        .parse()
        .map_err(|e| format!("bad denominator `{d}`: {e}"))?;
    if denom.is_zero() {
        return Err(format!("zero denominator in `{t}`"));
    }
    Ok(Rat::new(numer, denom))
}

/// Formats a rational as `"p"` when the denominator is one and `"p/q"`
/// otherwise, matching the input syntax accepted by [`parse_rat`].
pub fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Raises a rational to a nonnegative integer power.
pub fn rat_pow(r: &Rat, e: u32) -> Rat {
    if e == 0 {
        return Rat::one();
    }
    num::pow::pow(r.clone(), e as usize)
}

/// True if `r` is the integer 1 or -1.
pub fn is_unit_magnitude(r: &Rat) -> bool {
    r.abs().is_one()
}

/// Zero as a `Rat`.
pub fn zero() -> Rat {
    Rat::zero()
}

/// One as a `Rat`.
pub fn one() -> Rat {
    Rat::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["0", "5", "-3", "2/3", "-7/4", "10/6"] {
            let r = parse_rat(s).unwrap();
            let back = parse_rat(&fmt_rat(&r)).unwrap();
            assert_eq!(r, back);
        }
        // reduction to lowest terms
        assert_eq!(fmt_rat(&parse_rat("10/6").unwrap()), "5/3");
        assert_eq!(fmt_rat(&parse_rat("-4/2").unwrap()), "-2");
    }

    #[test]
    fn parse_rejects_garbage() {
        assert!(parse_rat("").is_err());
        assert!(parse_rat("x").is_err());
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("1/2/3").is_err());
    }

    #[test]
    fn powers() {
        assert_eq!(rat_pow(&rat(2, 3), 3), rat(8, 27));
        assert_eq!(rat_pow(&rat(5, 1), 0), one());
    }
}
