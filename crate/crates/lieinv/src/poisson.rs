//! The Poisson structure on the symmetric algebra of a Lie algebra.
//!
//! The bracket of two polynomials in the basis variables is
//! `{f, g} = Σ_{i,j} [x_i, x_j] · ∂f/∂x_i · ∂g/∂x_j`, extending the Lie
//! bracket by the Leibniz rule. On top of it this module offers:
//!
//! - [`is_poisson_central`]: membership in the Poisson center.
//! - [`trdeg`]: transcendence degree of a generating set, as the rank of
//!   its Jacobian over the fraction field.
//! - [`certify_candidate`]: full certification of a candidate
//!   Poisson-commutative subalgebra — pairwise commutativity with explicit
//!   failure witnesses, completeness (`trdeg = c`), and the degree ≤ 2
//!   condition.
//! - [`verify_identity`]: exact expansion of signed product-sums to zero.
//! - [`coordinate_jacobian_locus`]: a certificate finder for rank-drop loci
//!   of Jacobians that happen to be coordinate subspaces.

use crate::invariants::{index_and_magic, InvariantError};
use crate::lie::{LieAlgebra, LieError};
use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use crate::rat::Rat;
use itertools::Itertools;
use num::Zero;
use rayon::prelude::*;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Errors from Poisson-structure computations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PoissonError {
    /// Underlying algebra operation failed.
    #[error(transparent)]
    Lie(#[from] LieError),
    /// Index/magic-number computation failed.
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    /// A candidate generator is the zero polynomial.
    #[error("generator #{index} is zero")]
    ZeroGenerator {
        /// Position in the generator list (0-based).
        index: usize,
    },
}

/// Computes the Poisson bracket `{f, g}` over the algebra's structure
/// matrix. Both polynomials must be built against the algebra's variable
/// table.
pub fn poisson_bracket(l: &LieAlgebra, f: &Poly, g: &Poly) -> Result<Poly, PoissonError> {
    l.require_specialized()?;
    let b = l.structure_matrix();
    Ok(bracket_with(&b, f, g))
}

fn bracket_with(b: &PolyMatrix, f: &Poly, g: &Poly) -> Poly {
    let n = b.nrows();
    let df: Vec<Poly> = (0..n).map(|i| f.derivative(i as u32)).collect();
    let dg: Vec<Poly> = (0..n).map(|j| g.derivative(j as u32)).collect();
    let mut acc = Poly::zero(f.vars());
    for i in 0..n {
        if df[i].is_zero() {
            continue;
        }
        for j in 0..n {
            let e = b.at(i, j);
            if e.is_zero() || dg[j].is_zero() {
                continue;
            }
            acc = acc.add(&e.mul(&df[i]).mul(&dg[j]));
        }
    }
    acc
}

/// The brackets `{f, x_k}` for every basis variable, in basis order.
pub fn poisson_against_basis(l: &LieAlgebra, f: &Poly) -> Result<Vec<Poly>, PoissonError> {
    l.require_specialized()?;
    let b = l.structure_matrix();
    let n = l.dim();
    let df: Vec<Poly> = (0..n).map(|i| f.derivative(i as u32)).collect();
    let mut out = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = Poly::zero(f.vars());
        for i in 0..n {
            let e = b.at(i, k);
            if !e.is_zero() && !df[i].is_zero() {
                acc = acc.add(&e.mul(&df[i]));
            }
        }
        out.push(acc);
    }
    Ok(out)
}

/// True iff `{f, x_k} = 0` for every basis variable, i.e. `f` lies in the
/// Poisson center of the symmetric algebra.
pub fn is_poisson_central(l: &LieAlgebra, f: &Poly) -> Result<bool, PoissonError> {
    Ok(poisson_against_basis(l, f)?.iter().all(Poly::is_zero))
}

/// Transcendence degree of the subalgebra generated by `gens`: the rank of
/// the Jacobian `(∂g_r/∂x_c)` over the rational function field.
pub fn trdeg(l: &LieAlgebra, gens: &[Poly]) -> Result<usize, PoissonError> {
    l.require_specialized()?;
    if gens.is_empty() {
        return Ok(0);
    }
    let n = l.dim();
    let rows: Vec<Vec<Poly>> = gens
        .iter()
        .map(|g| (0..n).map(|c| g.derivative(c as u32)).collect())
        .collect();
    let jac = PolyMatrix::new(l.vars(), rows);
    Ok(jac.rank_ff())
}

/// A witness for a failed certification condition.
#[derive(Debug, Clone, PartialEq)]
pub enum CertFailure {
    /// Two generators do not Poisson-commute; the nonzero bracket is
    /// attached.
    NonCommutingPair {
        /// Index of the first generator (0-based).
        a: usize,
        /// Index of the second generator (0-based).
        b: usize,
        /// The nonzero bracket `{gens[a], gens[b]}`.
        bracket: Poly,
    },
}

impl fmt::Display for CertFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CertFailure::NonCommutingPair { a, b, bracket } => {
                write!(f, "{{gen[{a}], gen[{b}]}} = {bracket} != 0")
            }
        }
    }
}

/// Outcome of [`certify_candidate`].
#[derive(Debug, Clone, PartialEq)]
pub struct CertificationResult {
    /// All pairs of generators Poisson-commute.
    pub pairwise_commute: bool,
    /// Transcendence degree of the generators.
    pub trdeg: usize,
    /// The magic number `c(L)` the transcendence degree is compared to.
    pub magic: usize,
    /// `trdeg == c(L)`.
    pub complete: bool,
    /// Largest total degree among the generators.
    pub max_degree: u32,
    /// Commutative, complete, and generated in degree ≤ 2.
    pub milovanov_ok: bool,
    /// Explicit witnesses for every failed condition.
    pub failures: Vec<CertFailure>,
}

/// Certifies a candidate Poisson-commutative subalgebra given by
/// generators: exact pairwise commutativity (parallelized over pairs, with
/// witnesses for every failure), transcendence degree against the magic
/// number, and the maximal total degree.
pub fn certify_candidate(
    l: &LieAlgebra,
    gens: &[Poly],
) -> Result<CertificationResult, PoissonError> {
    l.require_specialized()?;
    for (index, g) in gens.iter().enumerate() {
        if g.is_zero() {
            return Err(PoissonError::ZeroGenerator { index });
        }
    }
    let b = l.structure_matrix();
    let pairs: Vec<(usize, usize)> = (0..gens.len())
        .flat_map(|a| ((a + 1)..gens.len()).map(move |c| (a, c)))
        .collect();
    let failures: Vec<CertFailure> = pairs
        .par_iter()
        .filter_map(|&(a, c)| {
            let bracket = bracket_with(&b, &gens[a], &gens[c]);
            (!bracket.is_zero())
                .then_some(CertFailure::NonCommutingPair { a, b: c, bracket })
        })
        .collect();
    let pairwise_commute = failures.is_empty();
    let td = trdeg(l, gens)?;
    let magic = index_and_magic(l)?.magic;
    let complete = td == magic;
    let max_degree = gens.iter().filter_map(Poly::degree).max().unwrap_or(0);
    Ok(CertificationResult {
        pairwise_commute,
        trdeg: td,
        magic,
        complete,
        max_degree,
        milovanov_ok: pairwise_commute && complete && max_degree <= 2,
        failures,
    })
}

/// Expands a signed sum of products: `Σ coeff · Π factors`.
pub fn product_sum(l: &LieAlgebra, terms: &[(Rat, Vec<Poly>)]) -> Poly {
    let mut acc = Poly::zero(l.vars());
    for (coeff, factors) in terms {
        let mut prod = Poly::constant(l.vars(), coeff.clone());
        for f in factors {
            prod = prod.mul(f);
        }
        acc = acc.add(&prod);
    }
    acc
}

/// True iff the signed product-sum expands to the zero polynomial.
pub fn verify_identity(l: &LieAlgebra, terms: &[(Rat, Vec<Poly>)]) -> bool {
    product_sum(l, terms).is_zero()
}

/// All nonzero maximal minors of the Jacobian of `gens` (every choice of
/// `gens.len()` columns); empty when there are more generators than
/// variables.
pub fn maximal_minors(l: &LieAlgebra, gens: &[Poly]) -> Result<Vec<Poly>, PoissonError> {
    l.require_specialized()?;
    let n = l.dim();
    let r = gens.len();
    let mut out = Vec::new();
    if r == 0 || r > n {
        return Ok(out);
    }
    let rows: Vec<Vec<Poly>> = gens
        .iter()
        .map(|g| (0..n).map(|c| g.derivative(c as u32)).collect())
        .collect();
    let jac = PolyMatrix::new(l.vars(), rows);
    for cols in (0..n).combinations(r) {
        let sub = jac.submatrix(&(0..r).collect::<Vec<_>>(), &cols);
        let d = sub.det_ff();
        if !d.is_zero() {
            out.push(d);
        }
    }
    Ok(out)
}

/// Result of the coordinate-subspace locus certificate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoordinateLocus {
    /// The rank-drop locus of the Jacobian is exactly the coordinate
    /// subspace where the listed variables vanish; its codimension is the
    /// number of variables. An empty list (with `codim = dim`) means some
    /// minor is nowhere zero, so the rank never drops.
    Certified {
        /// Codimension of the locus.
        codim: usize,
        /// The vanishing coordinates, sorted by name.
        vars: Vec<String>,
    },
    /// No coordinate-subspace certificate was found; nothing is claimed.
    Unknown,
}

/// Tries to certify that the rank-drop locus of the Jacobian of `gens` is a
/// coordinate subspace: if some maximal minor has a nonzero constant part
/// the locus is empty; otherwise, when at least one minor is a single
/// monomial and zeroing every variable occurring in any minor kills them
/// all, that variable set is the certificate. Returns
/// [`CoordinateLocus::Unknown`] whenever the pattern does not apply.
pub fn coordinate_jacobian_locus(
    l: &LieAlgebra,
    gens: &[Poly],
) -> Result<CoordinateLocus, PoissonError> {
    let minors = maximal_minors(l, gens)?;
    if minors.is_empty() {
        return Ok(CoordinateLocus::Unknown);
    }
    let has_constant_part = minors.iter().any(|m| {
        m.is_constant() || !m.constant_term().is_zero()
    });
    if has_constant_part {
        return Ok(CoordinateLocus::Certified { codim: l.dim(), vars: Vec::new() });
    }
    if !minors.iter().any(|m| m.num_terms() == 1) {
        return Ok(CoordinateLocus::Unknown);
    }
    let n = l.dim() as u32;
    let mut ids: BTreeSet<u32> = BTreeSet::new();
    for m in &minors {
        ids.extend(m.occurring_vars().into_iter().filter(|&v| v < n));
    }
    let zeros: BTreeMap<u32, Rat> = ids.iter().map(|&v| (v, crate::rat::zero())).collect();
    if minors.iter().all(|m| m.substitute(&zeros).is_zero()) {
        let mut vars: Vec<String> = ids
            .iter()
            .map(|&v| l.vars().name(v).to_string())
            .collect();
        vars.sort();
        Ok(CoordinateLocus::Certified { codim: vars.len(), vars })
    } else {
        Ok(CoordinateLocus::Unknown)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use crate::rat::rat_int;

    fn parse(l: &LieAlgebra, s: &str) -> Poly {
        Poly::parse(l.vars(), s).unwrap()
    }

    #[test]
    fn bracket_of_coordinates_is_the_lie_bracket() {
        let h3 = families::heisenberg(1).unwrap();
        let b1 = parse(&h3, "b1");
        let b2 = parse(&h3, "b2");
        assert_eq!(poisson_bracket(&h3, &b1, &b2).unwrap().to_string(), "b3");
        assert_eq!(poisson_bracket(&h3, &b2, &b1).unwrap().to_string(), "-b3");
        let f = parse(&h3, "b1^2 + 3*b2 - b3");
        assert!(poisson_bracket(&h3, &f, &f).unwrap().is_zero());
    }

    #[test]
    fn leibniz_rule_on_a_fixed_triple() {
        let l = families::q_filiform(6).unwrap();
        let f = parse(&l, "x1*x4 - x2^2");
        let g = parse(&l, "x3 + x5^2");
        let h = parse(&l, "x2*x6");
        let left = poisson_bracket(&l, &f, &g.mul(&h)).unwrap();
        let right = poisson_bracket(&l, &f, &g)
            .unwrap()
            .mul(&h)
            .add(&g.mul(&poisson_bracket(&l, &f, &h).unwrap()));
        assert_eq!(left, right);
    }

    #[test]
    fn central_elements_of_the_heisenberg_algebra() {
        let h5 = families::heisenberg(2).unwrap();
        assert!(is_poisson_central(&h5, &parse(&h5, "b5")).unwrap());
        assert!(is_poisson_central(&h5, &parse(&h5, "b5^3 + 2")).unwrap());
        assert!(!is_poisson_central(&h5, &parse(&h5, "b1")).unwrap());
    }

    #[test]
    fn trdeg_counts_independent_generators() {
        let l = families::standard_filiform(5).unwrap();
        let coords: Vec<Poly> = ["x2", "x3", "x4"].iter().map(|s| parse(&l, s)).collect();
        assert_eq!(trdeg(&l, &coords).unwrap(), 3);
        let dependent = vec![
            parse(&l, "x2"),
            parse(&l, "x2^2"),
            parse(&l, "x2 + 7"),
        ];
        assert_eq!(trdeg(&l, &dependent).unwrap(), 1);
        assert_eq!(trdeg(&l, &[]).unwrap(), 0);
    }

    #[test]
    fn certify_complete_commutative_set_on_q6() {
        let l = families::q_filiform(6).unwrap();
        let gens = families::q_complete_gens(&l);
        assert!(is_poisson_central(&l, &families::q_central_generator(&l)).unwrap());
        let cert = certify_candidate(&l, &gens).unwrap();
        assert!(cert.pairwise_commute, "failures: {:?}", cert.failures);
        assert_eq!(cert.trdeg, 4);
        assert_eq!(cert.magic, 4);
        assert!(cert.complete);
        assert_eq!(cert.max_degree, 2);
        assert!(cert.milovanov_ok);
    }

    #[test]
    fn certify_reports_noncommuting_witness() {
        let l = families::heisenberg(1).unwrap();
        let gens = vec![parse(&l, "b1"), parse(&l, "b2")];
        let cert = certify_candidate(&l, &gens).unwrap();
        assert!(!cert.pairwise_commute);
        assert!(!cert.milovanov_ok);
        assert_eq!(cert.failures.len(), 1);
        let CertFailure::NonCommutingPair { a, b, bracket } = &cert.failures[0];
        assert_eq!((*a, *b), (0, 1));
        assert_eq!(bracket.to_string(), "b3");
        assert!(matches!(
            certify_candidate(&l, &[Poly::zero(l.vars())]),
            Err(PoissonError::ZeroGenerator { index: 0 })
        ));
    }

    #[test]
    fn identity_expansion() {
        let l = families::standard_filiform(4).unwrap();
        let f = parse(&l, "x2*x4 - x3^2");
        // f^2 - (x2 x4)^2 + (x3^2 - 2 x2 x4) x3^2 ... engineered to vanish:
        // f^2 = x2^2 x4^2 - 2 x2 x4 x3^2 + x3^4.
        let terms = vec![
            (rat_int(1), vec![f.clone(), f.clone()]),
            (rat_int(-1), vec![parse(&l, "x2^2*x4^2")]),
            (rat_int(2), vec![parse(&l, "x2*x4"), parse(&l, "x3^2")]),
            (rat_int(-1), vec![parse(&l, "x3^4")]),
        ];
        assert!(verify_identity(&l, &terms));
        let broken = vec![(rat_int(1), vec![f])];
        assert!(!verify_identity(&l, &broken));
    }

    #[test]
    fn locus_certificate_on_q6() {
        let l = families::q_filiform(6).unwrap();
        let gens = families::q_complete_gens(&l);
        match coordinate_jacobian_locus(&l, &gens).unwrap() {
            CoordinateLocus::Certified { codim, vars } => {
                assert_eq!(codim, 2);
                assert_eq!(vars, vec!["x5", "x6"]);
            }
            other => panic!("expected a certificate, got {other:?}"),
        }
    }

    #[test]
    fn locus_of_full_coordinate_set_is_empty() {
        let l = families::standard_filiform(4).unwrap();
        let gens: Vec<Poly> = (1..=4).map(|k| parse(&l, &format!("x{k}"))).collect();
        assert_eq!(
            coordinate_jacobian_locus(&l, &gens).unwrap(),
            CoordinateLocus::Certified { codim: 4, vars: vec![] }
        );
        // A pattern the finder cannot handle: minors with several terms.
        let tricky = vec![parse(&l, "x1 + x2*x3")];
        assert_eq!(
            coordinate_jacobian_locus(&l, &tricky).unwrap(),
            CoordinateLocus::Certified { codim: 4, vars: vec![] }
        );
        // Every partial of this generator has two terms, so no minor is a
        // single monomial and the finder declines to certify.
        let unknown = vec![parse(&l, "x1*x2 + x1*x3 + x2*x3")];
        assert_eq!(
            coordinate_jacobian_locus(&l, &unknown).unwrap(),
            CoordinateLocus::Unknown
        );
    }
}
