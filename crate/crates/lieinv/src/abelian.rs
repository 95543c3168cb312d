//! Abelian subalgebra certificates and the maximal abelian dimension.
//!
//! Everything here deals in *verified* certificates: a subspace that has
//! been checked, bracket by bracket, to be closed and abelian. On top of
//! that:
//!
//! - [`is_cp`] compares a certificate to the magic number `c(L)` — an
//!   abelian subalgebra of exactly that dimension is a commutative
//!   polarization (CP).
//! - [`filiform_alpha`] computes the maximal abelian dimension of a
//!   nonstandard filiform algebra as `n − m`, `m` the smallest index with
//!   `C^m(L)` abelian.
//! - [`abelian_subset_search`] hunts for large certificates among basis
//!   subsets, lower-central-series members, and one-vector extensions of
//!   the center.
//! - [`r_property_verdict`] combines a certificate and an optional trusted
//!   upper bound into a CP / R-holds / R-fails / undecided verdict, where
//!   the R-property asks for an abelian subalgebra of dimension at least
//!   `c(L) − 1`.

use crate::invariants::{index_and_magic, is_filiform, InvariantError};
use crate::lie::{LieAlgebra, LieError, Subspace};
use crate::rat::{rat_int, Rat};
use itertools::Itertools;
use num::Zero;

/// Errors from abelian-subalgebra operations.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AbelianError {
    /// Underlying algebra operation failed.
    #[error(transparent)]
    Lie(#[from] LieError),
    /// Index computation failed.
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    /// An operation that requires a verified certificate received one whose
    /// checks did not pass.
    #[error("certificate is not a verified abelian subalgebra")]
    UnverifiedCertificate,
    /// The algebra is not filiform.
    #[error("algebra is not filiform")]
    NotFiliform,
    /// The algebra is the standard filiform chain, whose maximal abelian
    /// dimension is `n − 1` rather than the `n − m` rule.
    #[error("standard filiform chain: the maximal abelian dimension is dim − 1")]
    StandardFiliform {
        /// The algebra dimension.
        n: usize,
    },
}

/// A subspace with the outcome of exact closure and commutativity checks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AbelianCertificate {
    /// The subspace, in reduced row echelon form.
    pub subspace: Subspace,
    /// All brackets of basis elements stay inside the span.
    pub verified_subalgebra: bool,
    /// All brackets of basis elements vanish.
    pub verified_abelian: bool,
    /// Dimension of the subspace.
    pub dim: usize,
}

impl AbelianCertificate {
    /// True when both the closure and the commutativity check passed.
    pub fn verified(&self) -> bool {
        self.verified_subalgebra && self.verified_abelian
    }
}

/// Checks a subspace exactly: closure of all pairwise brackets of its
/// reduced basis, and vanishing of those brackets.
pub fn certify_abelian(
    l: &LieAlgebra,
    s: &Subspace,
) -> Result<AbelianCertificate, AbelianError> {
    l.require_specialized()?;
    Ok(AbelianCertificate {
        verified_subalgebra: l.is_subalgebra(s)?,
        verified_abelian: l.is_abelian_subspace(s)?,
        dim: s.dim(),
        subspace: s.clone(),
    })
}

/// True iff the verified certificate has dimension exactly `c(L)`, making
/// it a commutative polarization.
pub fn is_cp(l: &LieAlgebra, cert: &AbelianCertificate) -> Result<bool, AbelianError> {
    if !cert.verified() {
        return Err(AbelianError::UnverifiedCertificate);
    }
    let im = index_and_magic(l)?;
    Ok(cert.dim == im.magic)
}

/// Result of [`filiform_alpha`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiliformAlpha {
    /// The maximal abelian dimension `n − m`.
    pub alpha: usize,
    /// The smallest `m` with `C^m(L)` abelian.
    pub m: usize,
    /// The verified certificate for `C^m(L)`.
    pub witness: AbelianCertificate,
}

/// Maximal abelian dimension of a nonstandard filiform algebra: with `m`
/// the smallest index such that the lower-central-series member `C^m(L)`
/// is abelian, the answer is `α = n − m = dim C^m(L)`, and `C^m(L)` itself
/// is the witness. The standard chain (no nonzero bracket away from `x1`)
/// is rejected with [`AbelianError::StandardFiliform`] because its maximal
/// abelian dimension is `n − 1` instead.
pub fn filiform_alpha(l: &LieAlgebra) -> Result<FiliformAlpha, AbelianError> {
    l.require_specialized()?;
    if !is_filiform(l)? {
        return Err(AbelianError::NotFiliform);
    }
    let standard = l
        .bracket_pairs()
        .into_iter()
        .all(|(i, _)| i == 0);
    if standard {
        return Err(AbelianError::StandardFiliform { n: l.dim() });
    }
    let series = l.lower_central_series()?;
    for (k, member) in series.iter().enumerate() {
        let m = k + 1;
        if m >= 2 && l.is_abelian_subspace(member)? {
            let witness = certify_abelian(l, member)?;
            debug_assert!(witness.verified());
            return Ok(FiliformAlpha { alpha: l.dim() - m, m, witness });
        }
    }
    unreachable!("a filiform series ends in the zero subspace, which is abelian")
}

/// Outcome of [`abelian_subset_search`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    /// Best verified certificate found.
    pub best: AbelianCertificate,
    /// How many basis subsets were examined.
    pub subsets_checked: usize,
    /// The basis-subset enumeration was cut short by the budget (or the
    /// dimension exceeds the exhaustive range), so `best` is only a lower
    /// bound even among coordinate subspaces.
    pub truncated: bool,
}

/// Exhaustive basis-subset range for the search.
const EXHAUSTIVE_DIM_LIMIT: usize = 14;

/// Searches for a large abelian subalgebra and returns the best verified
/// certificate found, combining three strategies:
///
/// 1. all subspaces spanned by basis subsets, by decreasing size starting
///    at `c(L)` (exhaustive for `dim ≤ 14`, subject to `budget` many
///    subsets; first hit at a given size wins, so ties resolve to the
///    lexicographically smallest subset);
/// 2. the members of the lower central series;
/// 3. the center extended by a single basis vector.
///
/// The result is a lower bound for the maximal abelian dimension; it is
/// exact among coordinate subspaces when `truncated` is false.
pub fn abelian_subset_search(
    l: &LieAlgebra,
    budget: usize,
) -> Result<SearchOutcome, AbelianError> {
    l.require_specialized()?;
    let n = l.dim();
    let im = index_and_magic(l)?;
    let c = im.magic;

    let mut subsets_checked = 0usize;
    let mut truncated = false;
    let mut best: Option<AbelianCertificate> = None;

    // Strategy 1: basis subsets, largest size first. Brackets of basis
    // vectors are just the stored structure constants, so a bitmask
    // prefilter finds candidates cheaply before the exact certification.
    if n <= EXHAUSTIVE_DIM_LIMIT {
        let pairs: Vec<(usize, usize, u64)> = l
            .bracket_pairs()
            .into_iter()
            .map(|(i, j)| {
                let mut kmask = 0u64;
                for (coeff, k) in l.bracket_terms(i, j) {
                    if !coeff.is_zero() {
                        kmask |= 1u64 << k;
                    }
                }
                (i, j, kmask)
            })
            .filter(|&(_, _, kmask)| kmask != 0)
            .collect();
        'sizes: for size in (1..=c.min(n)).rev() {
            for subset in (0..n).combinations(size) {
                if subsets_checked >= budget {
                    truncated = true;
                    break 'sizes;
                }
                subsets_checked += 1;
                let mask: u64 = subset.iter().fold(0u64, |m, &i| m | (1u64 << i));
                let abelian_here = pairs.iter().all(|&(i, j, kmask)| {
                    (mask >> i) & 1 == 0 || (mask >> j) & 1 == 0 || kmask == 0
                });
                if !abelian_here {
                    continue;
                }
                let span = Subspace::from_rows(
                    n,
                    subset.iter().map(|&i| {
                        let mut v = vec![Rat::zero(); n];
                        v[i] = rat_int(1);
                        v
                    }),
                );
                let cert = certify_abelian(l, &span)?;
                if cert.verified() {
                    best = Some(cert);
                    break 'sizes;
                }
            }
        }
    } else {
        truncated = true;
    }

    // Strategy 2: lower-central-series members.
    for member in l.lower_central_series()? {
        if member.dim() > best.as_ref().map_or(0, |b| b.dim) {
            let cert = certify_abelian(l, &member)?;
            if cert.verified() {
                best = Some(cert);
            }
        }
    }

    // Strategy 3: the center plus one basis vector.
    let center = l.center()?;
    let center_cert = certify_abelian(l, &center)?;
    if center_cert.verified() && center_cert.dim > best.as_ref().map_or(0, |b| b.dim) {
        best = Some(center_cert);
    }
    for i in 0..n {
        let mut ext = center.clone();
        let mut v = vec![Rat::zero(); n];
        v[i] = rat_int(1);
        if !ext.insert(v) {
            continue;
        }
        if ext.dim() > best.as_ref().map_or(0, |b| b.dim) {
            let cert = certify_abelian(l, &ext)?;
            if cert.verified() {
                best = Some(cert);
            }
        }
    }

    let best = best.unwrap_or(AbelianCertificate {
        subspace: Subspace::new(n),
        verified_subalgebra: true,
        verified_abelian: true,
        dim: 0,
    });
    Ok(SearchOutcome { best, subsets_checked, truncated })
}

/// Verdict status for the R-property.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RStatus {
    /// The witness is a commutative polarization (`dim = c`).
    Cp,
    /// The witness reaches `c − 1`, so the R-property holds.
    RHolds,
    /// A trusted upper bound `≤ c − 2` rules the R-property out.
    RFails,
    /// Neither a strong enough witness nor a disproving bound.
    Undecided,
}

/// R-property verdict with the bounds that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RPropertyVerdict {
    /// The verdict.
    pub status: RStatus,
    /// Verified lower bound for the maximal abelian dimension
    /// (`max(index, witness dim)`).
    pub alpha_lower: usize,
    /// Upper bound: `c(L)`, improved by the trusted bound when supplied.
    pub alpha_upper: usize,
    /// The certificate the verdict is based on.
    pub witness: AbelianCertificate,
}

/// Decides the R-property from a verified certificate and an optional
/// trusted upper bound on the maximal abelian dimension (for instance a
/// published value). The certificate decides positively (`Cp` at `c`,
/// `RHolds` at `c − 1` or above); the trusted bound decides negatively
/// when it is at most `c − 2`; otherwise the question stays `Undecided`
/// with the bounds attached.
pub fn r_property_verdict(
    l: &LieAlgebra,
    cert: &AbelianCertificate,
    trusted_alpha_upper: Option<usize>,
) -> Result<RPropertyVerdict, AbelianError> {
    if !cert.verified() {
        return Err(AbelianError::UnverifiedCertificate);
    }
    let im = index_and_magic(l)?;
    let c = im.magic;
    let alpha_lower = im.index.max(cert.dim);
    let alpha_upper = trusted_alpha_upper.map_or(c, |u| u.min(c));
    let status = if cert.dim == c {
        RStatus::Cp
    } else if cert.dim + 1 >= c {
        RStatus::RHolds
    } else if alpha_upper + 2 <= c {
        RStatus::RFails
    } else {
        RStatus::Undecided
    };
    Ok(RPropertyVerdict { status, alpha_lower, alpha_upper, witness: cert.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families;

    fn coord_span(l: &LieAlgebra, names: &[&str]) -> Subspace {
        let n = l.dim();
        Subspace::from_rows(
            n,
            names.iter().map(|nm| {
                let id = l.vars().id(nm).unwrap() as usize;
                let mut v = vec![Rat::zero(); n];
                v[id] = rat_int(1);
                v
            }),
        )
    }

    #[test]
    fn certify_flags_follow_the_brackets() {
        let h3 = families::heisenberg(1).unwrap();
        let bad = certify_abelian(&h3, &coord_span(&h3, &["b1", "b2"])).unwrap();
        assert!(!bad.verified_subalgebra);
        assert!(!bad.verified_abelian);
        let center = certify_abelian(&h3, &h3.center().unwrap()).unwrap();
        assert!(center.verified());
        assert_eq!(center.dim, 1);
        let good = certify_abelian(&h3, &coord_span(&h3, &["b1", "b3"])).unwrap();
        assert!(good.verified());
    }

    #[test]
    fn heisenberg_cp_detection() {
        let h5 = families::heisenberg(2).unwrap();
        let p = certify_abelian(&h5, &coord_span(&h5, &["b3", "b4", "b5"])).unwrap();
        assert!(p.verified());
        assert!(is_cp(&h5, &p).unwrap());
        let small = certify_abelian(&h5, &coord_span(&h5, &["b5"])).unwrap();
        assert!(!is_cp(&h5, &small).unwrap());
        // [b1, b3] = b5 leaves the span, so this certificate fails checks.
        let unverified = certify_abelian(&h5, &coord_span(&h5, &["b1", "b3"])).unwrap();
        assert!(matches!(
            is_cp(&h5, &unverified),
            Err(AbelianError::UnverifiedCertificate)
        ));
    }

    #[test]
    fn filiform_alpha_on_the_chain_families() {
        let r8 = families::r_filiform(8).unwrap();
        let fa = filiform_alpha(&r8).unwrap();
        assert_eq!((fa.m, fa.alpha), (2, 6));
        assert_eq!(fa.witness.dim, 6);
        let q8 = families::q_filiform(8).unwrap();
        let fa = filiform_alpha(&q8).unwrap();
        assert_eq!((fa.m, fa.alpha), (4, 4));
        assert!(matches!(
            filiform_alpha(&families::standard_filiform(6).unwrap()),
            Err(AbelianError::StandardFiliform { n: 6 })
        ));
        assert!(matches!(
            filiform_alpha(&families::heisenberg(2).unwrap()),
            Err(AbelianError::NotFiliform)
        ));
    }

    #[test]
    fn subset_search_finds_cp_on_heisenberg() {
        let h5 = families::heisenberg(2).unwrap();
        let out = abelian_subset_search(&h5, 10_000).unwrap();
        assert!(!out.truncated);
        assert_eq!(out.best.dim, 3); // = c, a commutative polarization
        assert!(is_cp(&h5, &out.best).unwrap());
        // Lexicographically first witness: {b1, b2, b5}.
        assert_eq!(h5.subspace_strings(&out.best.subspace), vec!["b1", "b2", "b5"]);
    }

    #[test]
    fn subset_search_on_q6_tops_out_below_c() {
        let q6 = families::q_filiform(6).unwrap();
        let out = abelian_subset_search(&q6, 10_000).unwrap();
        assert_eq!(out.best.dim, 3);
        assert!(!is_cp(&q6, &out.best).unwrap());
        let budgeted = abelian_subset_search(&q6, 3).unwrap();
        assert!(budgeted.truncated);
        assert!(budgeted.best.dim >= 3); // series fallback still finds C^3
    }

    #[test]
    fn r_property_verdicts() {
        let l6 = families::standard_filiform(6).unwrap();
        // c(L6) = 5 and the coordinate tail is a CP.
        let cp = certify_abelian(&l6, &coord_span(&l6, &["x2", "x3", "x4", "x5", "x6"]))
            .unwrap();
        let verdict = r_property_verdict(&l6, &cp, None).unwrap();
        assert_eq!(verdict.status, RStatus::Cp);
        assert_eq!(verdict.alpha_lower, 5);
        assert_eq!(verdict.alpha_upper, 5);

        let q8 = families::q_filiform(8).unwrap();
        let fa = filiform_alpha(&q8).unwrap();
        let verdict = r_property_verdict(&q8, &fa.witness, None).unwrap();
        assert_eq!(verdict.status, RStatus::RHolds); // dim 4 = c - 1

        // A trusted upper bound two below c forces a negative verdict.
        let center = certify_abelian(&q8, &q8.center().unwrap()).unwrap();
        let verdict = r_property_verdict(&q8, &center, Some(3)).unwrap();
        assert_eq!(verdict.status, RStatus::RFails);
        assert_eq!(verdict.alpha_upper, 3);
        let undecided = r_property_verdict(&q8, &center, None).unwrap();
        assert_eq!(undecided.status, RStatus::Undecided);
        assert_eq!(undecided.alpha_lower, 2);
    }
}
