//! Core invariants of a finite-dimensional Lie algebra over the rationals.
//!
//! - [`index_and_magic`]: the index `i = dim − rank` of the structure matrix
//!   over the fraction field, and the magic number `c = (dim + i)/2`.
//! - [`fundamental_semi_invariant`]: the monic GCD of the Pfaffians of the
//!   principal `t×t` minors of the structure matrix (`t` = rank); the
//!   algebra is *singular* when this polynomial is nonconstant.
//! - [`stabilizer`]: the stabilizer of a functional, with a regularity flag.
//! - [`frobenius_semiradical`]: the span of stabilizers of regular
//!   functionals, computed by seeded Monte Carlo sampling; the algebra is
//!   *quasi quadratic* when this span is everything.
//! - [`structural_flags`]: one-stop aggregation into an
//!   [`InvariantReport`].
//! - [`alpha_bounds`]: lower/upper bounds on the maximal abelian dimension
//!   from the index, the solvable and nilpotent square-root bounds, and the
//!   metabelian bound.

use crate::gcd::gcd;
use crate::lie::{LieAlgebra, LieError, Subspace};
use crate::linalg::kernel_basis;
use crate::pfaffian::pfaffian_principal;
use crate::poly::Poly;
use crate::rat::{rat_int, Rat};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Magnitude bound for random integer functional coordinates.
pub const SAMPLE_BOUND: i64 = 1_000_000;
/// Hard cap on sampling batches before giving up.
pub const MAX_BATCHES: usize = 64;

/// Errors from invariant computations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum InvariantError {
    /// Underlying algebra operation failed (unspecialized parameters, bad
    /// input, ...).
    #[error(transparent)]
    Lie(#[from] LieError),
    /// No regular functional was found within the sampling budget.
    #[error("no regular functional found in {batches} sampling batches")]
    SamplingExhausted {
        /// How many batches were tried.
        batches: usize,
    },
    /// A class hint passed to [`alpha_bounds`] does not hold for the
    /// algebra.
    #[error("class hint violated: {0}")]
    HintViolated(String),
}

/// Index and magic number.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct IndexMagic {
    /// The index `i = dim − rank B` over the rational function field.
    pub index: usize,
    /// The magic number `c = (dim + i)/2`.
    pub magic: usize,
}

/// Computes the index `i(L) = dim L − rank B` (structure matrix rank over
/// the fraction field) and the magic number `c(L) = (dim + i)/2`.
pub fn index_and_magic(l: &LieAlgebra) -> Result<IndexMagic, InvariantError> {
    l.require_specialized()?;
    let b = l.structure_matrix();
    let t = b.rank_ff();
    let n = l.dim();
    let index = n - t;
    debug_assert!((n + index) % 2 == 0, "skew rank must have the parity of dim");
    Ok(IndexMagic { index, magic: (n + index) / 2 })
}

/// The fundamental semi-invariant together with the singularity flag.
#[derive(Debug, Clone, PartialEq)]
pub struct SemiInvariant {
    /// Monic (graded-lex) GCD of the principal `t×t` Pfaffians; `1` when
    /// the rank is zero.
    pub p: Poly,
    /// True iff `p` is nonconstant.
    pub singular: bool,
}

/// Computes the fundamental semi-invariant: with `t = rank B`, the monic
/// GCD of the Pfaffians of all principal `t×t` submatrices of the structure
/// matrix (zero Pfaffians are skipped; `p = 1` when `t = 0`).
pub fn fundamental_semi_invariant(l: &LieAlgebra) -> Result<SemiInvariant, InvariantError> {
    l.require_specialized()?;
    let b = l.structure_matrix();
    let t = b.rank_ff();
    let n = l.dim();
    let mut acc: Option<Poly> = None;
    if t > 0 {
        for subset in (0..n).combinations(t) {
            let pf = pfaffian_principal(&b, &subset);
            if pf.is_zero() {
                continue;
            }
            acc = Some(match acc {
                None => pf,
                Some(g) => gcd(&g, &pf),
            });
            if acc.as_ref().is_some_and(Poly::is_constant) {
                break;
            }
        }
    }
    let p = match acc {
        Some(g) if !g.is_constant() => g.monic(),
        _ => Poly::one(l.vars()),
    };
    let singular = !p.is_constant();
    Ok(SemiInvariant { p, singular })
}

/// A stabilizer subspace with its regularity flag.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilizerReport {
    /// Basis of `{x : ξ([x, ·]) = 0}` in reduced row echelon form.
    pub subspace: Subspace,
    /// True iff the stabilizer dimension equals the given index.
    pub regular: bool,
}

/// Computes the stabilizer of the functional `xi` (coordinates against the
/// dual basis) and flags it regular when its dimension equals `index`.
pub fn stabilizer(
    l: &LieAlgebra,
    xi: &[Rat],
    index: usize,
) -> Result<StabilizerReport, InvariantError> {
    let n = l.dim();
    if xi.len() != n {
        return Err(InvariantError::Lie(LieError::Invalid(format!(
            "functional has {} coordinates, expected {n}",
            xi.len()
        ))));
    }
    let bx = l.structure_matrix_at(xi)?;
    let kernel = kernel_basis(&bx, n);
    let subspace = Subspace::from_rows(n, kernel);
    let regular = subspace.dim() == index;
    Ok(StabilizerReport { subspace, regular })
}

/// Result of the Monte Carlo Frobenius semiradical computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrobeniusReport {
    /// Reduced basis of the accumulated span of regular stabilizers.
    pub f_basis: Subspace,
    /// True iff the span is the whole algebra.
    pub quasi_quadratic: bool,
    /// Total functionals sampled.
    pub samples_used: usize,
    /// How many of them were regular.
    pub regular_found: usize,
    /// Batches consumed before convergence.
    pub batches: usize,
}

/// Computes the Frobenius semiradical: the span of the stabilizers of
/// regular functionals. Functionals are drawn with integer coordinates
/// uniform in `[-10^6, 10^6]` from a ChaCha stream seeded with `seed`; a
/// batch is `2·dim` samples, and sampling stops once two consecutive
/// batches add nothing to the span (`MAX_BATCHES` cap).
///
/// The result is a certified lower bound: the true semiradical contains it,
/// and equality holds with overwhelming probability because regular
/// functionals are dense.
pub fn frobenius_semiradical(
    l: &LieAlgebra,
    seed: u64,
) -> Result<FrobeniusReport, InvariantError> {
    let im = index_and_magic(l)?;
    frobenius_semiradical_with_index(l, seed, im.index)
}

/// Same as [`frobenius_semiradical`] but with a precomputed index, so
/// repeated runs with different seeds share the symbolic rank computation.
pub fn frobenius_semiradical_with_index(
    l: &LieAlgebra,
    seed: u64,
    index: usize,
) -> Result<FrobeniusReport, InvariantError> {
    l.require_specialized()?;
    let n = l.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut span = Subspace::new(n);
    let mut stable = 0usize;
    let mut prev = 0usize;
    let mut samples_used = 0usize;
    let mut regular_found = 0usize;
    let mut batches = 0usize;
    for _ in 0..MAX_BATCHES {
        batches += 1;
        for _ in 0..(2 * n.max(1)) {
            let xi: Vec<Rat> = (0..n)
                .map(|_| rat_int(rng.gen_range(-SAMPLE_BOUND..=SAMPLE_BOUND)))
                .collect();
            samples_used += 1;
            let bx = l.structure_matrix_at(&xi)?;
            let kernel = kernel_basis(&bx, n);
            if kernel.len() == index {
                regular_found += 1;
                for v in kernel {
                    span.insert(v);
                }
            }
        }
        if span.dim() == prev {
            stable += 1;
            if stable >= 2 && regular_found > 0 {
                break;
            }
        } else {
            stable = 0;
        }
        prev = span.dim();
    }
    if regular_found == 0 {
        return Err(InvariantError::SamplingExhausted { batches });
    }
    let quasi_quadratic = span.dim() == n;
    Ok(FrobeniusReport { f_basis: span, quasi_quadratic, samples_used, regular_found, batches })
}

/// Aggregated invariants and structural flags.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantReport {
    /// The index `i(L)`.
    pub index: usize,
    /// The magic number `c(L) = (dim + i)/2`.
    pub magic: usize,
    /// Monic fundamental semi-invariant.
    pub p: Poly,
    /// True iff `p` is nonconstant.
    pub singular: bool,
    /// True iff the index is zero.
    pub frobenius: bool,
    /// True iff the Frobenius semiradical is the whole algebra.
    pub quasi_quadratic: bool,
    /// True iff `dim Z(L) = i(L)`.
    pub square_integrable: bool,
    /// True iff every adjoint map is traceless.
    pub unimodular: bool,
    /// True iff the lower central series reaches zero.
    pub nilpotent: bool,
    /// True iff nilpotent with a degree-one-drop lower central series.
    pub filiform: bool,
    /// Basis of the Frobenius semiradical.
    pub f_basis: Subspace,
    /// Basis of the center.
    pub z_basis: Subspace,
    /// Functionals sampled while computing the semiradical.
    pub samples_used: usize,
}

/// The lower-central-series dimension profile `[n, n-2, n-3, ..., 1, 0]`
/// that characterizes filiform algebras of dimension `n`.
pub fn filiform_profile(n: usize) -> Vec<usize> {
    let mut dims = vec![n];
    for k in 2..=n {
        dims.push(n - k);
    }
    dims
}

/// True iff the algebra is nilpotent with lower central series dimensions
/// `n, n-2, n-3, ..., 1, 0` (maximal nilpotency class).
pub fn is_filiform(l: &LieAlgebra) -> Result<bool, InvariantError> {
    let n = l.dim();
    if n < 3 {
        return Ok(false);
    }
    let series = l.lower_central_series()?;
    let dims: Vec<usize> = series.iter().map(Subspace::dim).collect();
    if *dims.last().unwrap() != 0 {
        return Ok(false); // not nilpotent
    }
    let expect = filiform_profile(n);
    // The computed series stops at the first zero term; the tail of the
    // profile past that point is all zeros anyway.
    let m = dims.len();
    Ok(m <= expect.len()
        && dims[..m - 1] == expect[..m - 1]
        && expect[m - 1..].iter().all(|&d| d == dims[m - 1]))
}

/// Computes the full invariant report: index, magic number, fundamental
/// semi-invariant, center, Frobenius semiradical (with `seed`), and the
/// structural flags derived from them.
pub fn structural_flags(l: &LieAlgebra, seed: u64) -> Result<InvariantReport, InvariantError> {
    let im = index_and_magic(l)?;
    let semi = fundamental_semi_invariant(l)?;
    let z_basis = l.center()?;
    let fr = frobenius_semiradical_with_index(l, seed, im.index)?;
    let nilpotent = l.is_nilpotent()?;
    let filiform = is_filiform(l)?;
    Ok(InvariantReport {
        index: im.index,
        magic: im.magic,
        singular: semi.singular,
        p: semi.p,
        frobenius: im.index == 0,
        quasi_quadratic: fr.quasi_quadratic,
        square_integrable: z_basis.dim() == im.index,
        unimodular: l.is_unimodular()?,
        nilpotent,
        filiform,
        f_basis: fr.f_basis,
        z_basis,
        samples_used: fr.samples_used,
    })
}

/// Class hints for [`alpha_bounds`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClassHint {
    /// No structural assumption: lower bound is the index alone.
    None,
    /// Solvable: adds the square-root lower bound for solvable algebras.
    Solvable,
    /// Nilpotent: adds the (stronger) square-root bound for nilpotent
    /// algebras on top of the solvable one.
    Nilpotent,
    /// Metabelian in the strong sense `[L,L] ⊆ Z(L)` with
    /// `t = dim[L,L] ≥ 2`: adds the bound `⌊(2n + t² + t)/(t+2)⌋`.
    Metabelian,
}

impl ClassHint {
    /// Parses `none | solvable | nilpotent | metabelian`.
    pub fn parse(text: &str) -> Option<ClassHint> {
        match text.to_ascii_lowercase().as_str() {
            "none" => Some(ClassHint::None),
            "solvable" => Some(ClassHint::Solvable),
            "nilpotent" => Some(ClassHint::Nilpotent),
            "metabelian" => Some(ClassHint::Metabelian),
            _ => None,
        }
    }
}

/// Lower and upper bounds on the maximal abelian dimension, with the
/// individual contributions that produced the lower bound.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaBounds {
    /// Best applicable lower bound.
    pub lower: usize,
    /// The magic number (always an upper bound).
    pub upper: usize,
    /// The index contribution (always applicable).
    pub from_index: usize,
    /// Square-root bound for solvable algebras, when hinted.
    pub from_solvable: Option<usize>,
    /// Square-root bound for nilpotent algebras, when hinted.
    pub from_nilpotent: Option<usize>,
    /// Metabelian bound, when hinted and verified.
    pub from_metabelian: Option<usize>,
}

/// Smallest `a` with `(2a+3)² ≥ 8n+9`: every solvable algebra of dimension
/// `n` has an abelian subalgebra of at least this dimension.
pub fn solvable_alpha_lower(n: usize) -> usize {
    let target = 8 * n + 9;
    let mut a = 0usize;
    while (2 * a + 3) * (2 * a + 3) < target {
        a += 1;
    }
    a
}

/// Smallest `a` with `(2a+1)² ≥ 8n+1`: the nilpotent analogue of
/// [`solvable_alpha_lower`].
pub fn nilpotent_alpha_lower(n: usize) -> usize {
    let target = 8 * n + 1;
    let mut a = 0usize;
    while (2 * a + 1) * (2 * a + 1) < target {
        a += 1;
    }
    a
}

/// The metabelian lower bound `⌊(2n + t² + t)/(t+2)⌋` for an algebra of
/// dimension `n` with central derived algebra of dimension `t`.
pub fn metabelian_alpha_lower(n: usize, t: usize) -> usize {
    (2 * n + t * t + t) / (t + 2)
}

/// Computes bounds on the maximal abelian dimension: upper bound `c(L)`,
/// lower bound the maximum of the index and the hinted class bounds. The
/// metabelian hint is verified (`[L,L] ⊆ Z(L)` and `dim[L,L] ≥ 2`) and
/// rejected with `HintViolated` otherwise.
pub fn alpha_bounds(l: &LieAlgebra, hint: ClassHint) -> Result<AlphaBounds, InvariantError> {
    let im = index_and_magic(l)?;
    let n = l.dim();
    let mut bounds = AlphaBounds {
        lower: im.index,
        upper: im.magic,
        from_index: im.index,
        from_solvable: None,
        from_nilpotent: None,
        from_metabelian: None,
    };
    if matches!(hint, ClassHint::Solvable | ClassHint::Nilpotent | ClassHint::Metabelian) {
        bounds.from_solvable = Some(solvable_alpha_lower(n));
    }
    if matches!(hint, ClassHint::Nilpotent | ClassHint::Metabelian) {
        bounds.from_nilpotent = Some(nilpotent_alpha_lower(n));
    }
    if matches!(hint, ClassHint::Metabelian) {
        let derived = l.derived()?;
        let t = derived.dim();
        if t < 2 {
            return Err(InvariantError::HintViolated(format!(
                "metabelian bound needs dim[L,L] >= 2, got {t}"
            )));
        }
        let center = l.center()?;
        if !derived.subset_of(&center) {
            return Err(InvariantError::HintViolated(
                "metabelian bound needs [L,L] contained in the center".into(),
            ));
        }
        bounds.from_metabelian = Some(metabelian_alpha_lower(n, t));
    }
    bounds.lower = [
        Some(bounds.from_index),
        bounds.from_solvable,
        bounds.from_nilpotent,
        bounds.from_metabelian,
    ]
    .into_iter()
    .flatten()
    .max()
    .unwrap();
    Ok(bounds)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;
    use num::Zero;

    #[test]
    fn heisenberg_index_and_p() {
        let l = families::heisenberg(1).unwrap();
        let im = index_and_magic(&l).unwrap();
        assert_eq!((im.index, im.magic), (1, 2));
        let semi = fundamental_semi_invariant(&l).unwrap();
        assert_eq!(semi.p.to_string(), "b3");
        assert!(semi.singular);
        let h7 = families::heisenberg(3).unwrap();
        let im7 = index_and_magic(&h7).unwrap();
        assert_eq!((im7.index, im7.magic), (1, 4));
        // Raw Pfaffian GCD is -b7^3 up to sign; monic normalization fixes it.
        assert_eq!(fundamental_semi_invariant(&h7).unwrap().p.to_string(), "b7^3");
    }

    #[test]
    fn q_family_semi_invariants() {
        let q6 = families::q_filiform(6).unwrap();
        assert_eq!(fundamental_semi_invariant(&q6).unwrap().p.to_string(), "x6");
        let q8 = families::q_filiform(8).unwrap();
        assert_eq!(fundamental_semi_invariant(&q8).unwrap().p.to_string(), "x8^2");
    }

    #[test]
    fn diamond_invariants() {
        let d6 = families::diamond(2).unwrap();
        let im = index_and_magic(&d6).unwrap();
        assert_eq!((im.index, im.magic), (2, 4));
        assert_eq!(fundamental_semi_invariant(&d6).unwrap().p.to_string(), "b6");
        let report = structural_flags(&d6, 0).unwrap();
        assert!(report.unimodular);
        assert!(!report.nilpotent);
        assert!(report.singular);
    }

    #[test]
    fn strict_upper_indices_match_floor_half() {
        for n in 2..=5 {
            let l = families::strict_upper(n).unwrap();
            let im = index_and_magic(&l).unwrap();
            assert_eq!(im.index, n / 2, "N{n}");
        }
    }

    #[test]
    fn frobenius_of_standard_filiform_is_the_tail() {
        let l = families::standard_filiform(6).unwrap();
        let fr = frobenius_semiradical(&l, 0).unwrap();
        assert_eq!(fr.f_basis.dim(), 5);
        let names = l.subspace_strings(&fr.f_basis);
        assert_eq!(names, vec!["x2", "x3", "x4", "x5", "x6"]);
        assert!(!fr.quasi_quadratic);
        // Seed independence.
        for seed in 1..=3 {
            let again = frobenius_semiradical(&l, seed).unwrap();
            assert_eq!(again.f_basis, fr.f_basis);
        }
    }

    #[test]
    fn q6_frobenius_and_stabilizer() {
        let l = families::q_filiform(6).unwrap();
        let im = index_and_magic(&l).unwrap();
        assert_eq!(im.index, 2);
        // Stabilizer at the dual vector of x6.
        let mut xi = vec![Rat::zero(); 6];
        xi[5] = rat_int(1);
        let st = stabilizer(&l, &xi, im.index).unwrap();
        assert!(st.regular);
        assert_eq!(l.subspace_strings(&st.subspace), vec!["x1", "x6"]);
        let fr = frobenius_semiradical_with_index(&l, 0, im.index).unwrap();
        assert_eq!(l.subspace_strings(&fr.f_basis), vec!["x1", "x3", "x4", "x5", "x6"]);
    }

    #[test]
    fn filiform_detection() {
        assert!(is_filiform(&families::standard_filiform(7).unwrap()).unwrap());
        assert!(is_filiform(&families::q_filiform(8).unwrap()).unwrap());
        assert!(is_filiform(&families::r_filiform(6).unwrap()).unwrap());
        assert!(!is_filiform(&families::heisenberg(2).unwrap()).unwrap());
        assert!(!is_filiform(&families::diamond(2).unwrap()).unwrap());
    }

    #[test]
    fn bound_tables() {
        let solvable: Vec<usize> = (2..=10).map(solvable_alpha_lower).collect();
        assert_eq!(solvable, vec![1, 2, 2, 2, 3, 3, 3, 3, 4]);
        let nilpotent: Vec<usize> = (2..=11).map(nilpotent_alpha_lower).collect();
        assert_eq!(nilpotent, vec![2, 2, 3, 3, 3, 4, 4, 4, 4, 5]);
        assert_eq!(metabelian_alpha_lower(8, 2), 5);
        assert_eq!(metabelian_alpha_lower(8, 3), 5);
        assert_eq!(metabelian_alpha_lower(8, 4), 6);
        assert_eq!(metabelian_alpha_lower(9, 2), 6);
        assert_eq!(metabelian_alpha_lower(9, 3), 6);
        assert_eq!(metabelian_alpha_lower(9, 5), 6);
    }

    #[test]
    fn metabelian_hint_is_checked() {
        // H5 has [L,L] = <b5> central but t = 1 < 2.
        let h5 = families::heisenberg(2).unwrap();
        assert!(matches!(
            alpha_bounds(&h5, ClassHint::Metabelian),
            Err(InvariantError::HintViolated(_))
        ));
        // L6 has [L,L] of dimension 4, not central.
        let l6 = families::standard_filiform(6).unwrap();
        assert!(matches!(
            alpha_bounds(&l6, ClassHint::Metabelian),
            Err(InvariantError::HintViolated(_))
        ));
        let ok = alpha_bounds(&l6, ClassHint::Nilpotent).unwrap();
        assert_eq!(ok.from_nilpotent, Some(3));
        assert_eq!(ok.upper, 5);
        assert_eq!(ok.lower, 4); // the index i = 4 beats the class bounds
    }

    #[test]
    fn unspecialized_parameters_are_rejected() {
        let f9 = families::filiform9().unwrap();
        assert!(matches!(
            index_and_magic(&f9),
            Err(InvariantError::Lie(LieError::MissingParams(_)))
        ));
    }
}
