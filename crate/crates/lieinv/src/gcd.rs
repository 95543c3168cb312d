//! Exact division and greatest common divisors of multivariate polynomials.
//!
//! The GCD drives the fundamental semi-invariant: that invariant is the monic
//! GCD of a family of Pfaffians. The algorithm first strips the common
//! monomial factor, then runs a primitive pseudo-remainder sequence in the
//! highest-numbered variable, recursing on coefficient contents. All results
//! are normalized graded-lex monic so equal inputs give byte-equal output.

use crate::poly::{Monomial, Poly};
use crate::rat::Rat;
use num::One;

/// Failure of [`exact_div`].
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum DivisionError {
    /// The divisor does not divide the dividend; `remainder` is a nonzero
    /// witness congruent to the dividend modulo the divisor.
    #[error("not divisible; remainder {remainder}")]
    NotDivisible {
        /// Nonzero remainder left when division stalls.
        remainder: Poly,
    },
    /// Division by the zero polynomial.
    #[error("division by zero polynomial")]
    DivisionByZero,
}

/// Divides `a` by `b` exactly, returning the quotient `q` with `a = q * b`,
/// or a [`DivisionError::NotDivisible`] carrying the stalled remainder.
///
/// Uses graded-lex long division against the single divisor `b`; because
/// leading monomials are multiplicative, the division stalls if and only if
/// `b` does not divide `a`.
pub fn exact_div(a: &Poly, b: &Poly) -> Result<Poly, DivisionError> {
    if b.is_zero() {
        return Err(DivisionError::DivisionByZero);
    }
    let vars = a.vars().clone();
    let (lm_b, lc_b) = {
        let (m, c) = b.leading().expect("nonzero divisor");
        (m.clone(), c.clone())
    };
    let mut rem = a.clone();
    let mut quot = Poly::zero(&vars);
    while let Some((lm_r, lc_r)) = rem.leading().map(|(m, c)| (m.clone(), c.clone())) {
        let Some(m) = lm_r.try_div(&lm_b) else {
            return Err(DivisionError::NotDivisible { remainder: rem });
        };
        let c = lc_r / lc_b.clone();
        let t = Poly::from_terms(&vars, [(m.clone(), c.clone())]);
        quot = quot.add(&t);
        rem = rem.sub(&b.mul_term(&m, &c));
    }
    Ok(quot)
}

/// The monic greatest common divisor of `a` and `b`. Returns zero only when
/// both inputs are zero; the GCD of anything with a nonzero constant is 1.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    let ca = a.monomial_content();
    let cb = b.monomial_content();
    let common = ca.gcd(&cb);
    let a1 = a.div_monomial(&ca);
    let b1 = b.div_monomial(&cb);
    gcd_monomial_free(&a1, &b1)
        .mul_term(&common, &Rat::one())
        .monic()
}

/// Folds [`gcd`] over a sequence; an empty sequence gives zero.
pub fn gcd_many<'a, I: IntoIterator<Item = &'a Poly>>(polys: I) -> Option<Poly> {
    let mut it = polys.into_iter();
    let first = it.next()?.monic();
    Some(it.fold(first, |acc, p| gcd(&acc, p)))
}

/// GCD of polynomials whose common monomial factor has been removed.
fn gcd_monomial_free(a: &Poly, b: &Poly) -> Poly {
    if a.is_constant() || b.is_constant() {
        // Both nonzero here, so a constant input makes the GCD a unit.
        return Poly::one(a.vars());
    }
    let v = a
        .max_var()
        .unwrap()
        .max(b.max_var().unwrap());
    let (cont_a, pp_a) = content_and_primitive(a, v);
    let (cont_b, pp_b) = content_and_primitive(b, v);
    let cont_gcd = gcd(&cont_a, &cont_b);

    // Primitive pseudo-remainder sequence in the main variable v.
    let (mut f, mut g) = if pp_a.degree_in(v) >= pp_b.degree_in(v) {
        (pp_a, pp_b)
    } else {
        (pp_b, pp_a)
    };
    loop {
        if g.degree_in(v) == 0 {
            // A primitive element of degree 0 in v is a unit.
            return cont_gcd;
        }
        let r = pseudo_rem(&f, &g, v);
        if r.is_zero() {
            break;
        }
        let (_, pr) = content_and_primitive(&r, v);
        f = g;
        g = pr;
    }
    cont_gcd.mul(&g)
}

/// Splits `p` as `content * primitive` with respect to variable `v`: the
/// content is the GCD of the coefficients of powers of `v` (together with any
/// common monomial factor), the primitive part the exact quotient.
fn content_and_primitive(p: &Poly, v: u32) -> (Poly, Poly) {
    let coeffs = p.coeffs_in(v);
    let cont = gcd_many(coeffs.values()).expect("nonzero polynomial has coefficients");
    if cont.is_constant() {
        // Content 1 over the field: p is already primitive.
        return (Poly::one(p.vars()), p.clone());
    }
    let pp = exact_div(p, &cont).expect("content divides");
    (cont, pp)
}

/// Pseudo-remainder of `f` by `g` in variable `v` (both of positive degree
/// in `v`, deg f >= deg g): repeatedly cancels the top coefficient after
/// scaling by the leading coefficient of `g`, so no fractions appear.
fn pseudo_rem(f: &Poly, g: &Poly, v: u32) -> Poly {
    let dg = g.degree_in(v);
    let lg = g.coeffs_in(v).remove(&dg).expect("leading coefficient");
    let mut r = f.clone();
    while !r.is_zero() && r.degree_in(v) >= dg {
        let dr = r.degree_in(v);
        let lr = r.coeffs_in(v).remove(&dr).expect("leading coefficient");
        let shift = Monomial::var(v, dr - dg);
        r = r.mul(&lg).sub(&g.mul(&lr).mul_term(&shift, &Rat::one()));
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTable;

    fn p(vars: &crate::poly::Vars, s: &str) -> Poly {
        Poly::parse(vars, s).unwrap()
    }

    #[test]
    fn exact_quotient_and_witnessed_failure() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let q = exact_div(&p(&v, "x^2 - y^2"), &p(&v, "x - y")).unwrap();
        assert_eq!(q, p(&v, "x + y"));
        match exact_div(&p(&v, "x^2 + y^2"), &p(&v, "x - y")) {
            Err(DivisionError::NotDivisible { remainder }) => {
                assert_eq!(remainder, p(&v, "2*y^2"));
            }
            other => panic!("expected NotDivisible, got {other:?}"),
        }
        assert_eq!(
            exact_div(&p(&v, "x"), &Poly::zero(&v)),
            Err(DivisionError::DivisionByZero)
        );
    }

    #[test]
    fn gcd_basic_identities() {
        let v = VarTable::new(["x", "y", "z"]).unwrap();
        let a = p(&v, "x^2 - y^2");
        let b = p(&v, "x^2 + 2*x*y + y^2");
        assert_eq!(gcd(&a, &b), p(&v, "x + y"));
        // units and zeros
        assert_eq!(gcd(&Poly::zero(&v), &Poly::zero(&v)), Poly::zero(&v));
        assert_eq!(gcd(&p(&v, "3*x"), &Poly::zero(&v)), p(&v, "x"));
        assert_eq!(gcd(&p(&v, "5"), &p(&v, "x*y")), Poly::one(&v));
        // scalar multiples collapse to the monic representative
        assert_eq!(gcd(&p(&v, "2*x + 2*y"), &p(&v, "3*x + 3*y")), p(&v, "x + y"));
        assert_eq!(gcd(&a, &a), p(&v, "x^2 - y^2"));
    }

    #[test]
    fn gcd_pulls_out_monomial_content() {
        let v = VarTable::new(["x", "y"]).unwrap();
        assert_eq!(gcd(&p(&v, "x^2*y + x*y^2"), &p(&v, "7*x*y")), p(&v, "x*y"));
        assert_eq!(gcd(&p(&v, "x^3"), &p(&v, "-2*x^2")), p(&v, "x^2"));
    }

    #[test]
    fn gcd_multivariate_prs() {
        let v = VarTable::new(["x", "y", "z"]).unwrap();
        let a = p(&v, "x^2 + x*y + x*z + y*z"); // (x+y)(x+z)
        let b = p(&v, "x*y + y^2 + x*z + y*z"); // (x+y)(y+z)
        let g = gcd(&a, &b);
        assert_eq!(g, p(&v, "x + y"));
        assert!(exact_div(&a, &g).is_ok());
        assert!(exact_div(&b, &g).is_ok());
    }

    #[test]
    fn gcd_divides_both_on_structured_products() {
        let v = VarTable::new(["b3", "b5", "b7"]).unwrap();
        // Pfaffian-style inputs: powers of a shared irreducible factor.
        let g = gcd(&p(&v, "-b5^2*b3"), &p(&v, "b5^3"));
        assert_eq!(g, p(&v, "b5^2"));
        let h = gcd(&p(&v, "2*b3*b5 - 2*b3*b7"), &p(&v, "b3^2"));
        assert_eq!(h, p(&v, "b3"));
    }

    #[test]
    fn gcd_many_folds() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let polys = [p(&v, "x^2*y"), p(&v, "x*y^2"), p(&v, "3*x*y")];
        assert_eq!(gcd_many(polys.iter()), Some(p(&v, "x*y")));
        assert_eq!(gcd_many(std::iter::empty()), None);
    }
}
