//! Built-in catalog of benchmark Lie algebras with recorded invariants,
//! and a verifier that recomputes every recorded field from scratch.
//!
//! The catalog ships as two embedded JSON documents: the algebras
//! themselves (structure constants, possibly parametric) and, per algebra,
//! an expectation record (index, magic number, fundamental semi-invariant,
//! Frobenius semiradical, abelian certificates, Poisson-central generators,
//! relations, …) together with the sample points at which parametric
//! entries are checked. [`Catalog::verify_entry`] replays all of it and
//! reports one pass/fail line per field.

use crate::abelian::{self, AbelianError};
use crate::gcd::exact_div;
use crate::invariants::{self, InvariantError};
use crate::lie::{AlgebraFile, LieAlgebra, LieError, Subspace};
use crate::poisson::{self, CoordinateLocus, PoissonError};
use crate::poly::Poly;
use crate::rat::{parse_rat, Rat};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;
use thiserror::Error;

static ALGEBRAS_JSON: &str = include_str!("../data/algebras.json");
static EXPECTATIONS_JSON: &str = include_str!("../data/expectations.json");

/// Errors from catalog lookup or verification plumbing. Mathematical
/// mismatches are *not* errors: they come back as failed [`FieldCheck`]s.
#[derive(Debug, Error)]
pub enum CatalogError {
    /// The requested key is not in the catalog.
    #[error("unknown catalog key `{0}`")]
    UnknownKey(String),
    /// The embedded data is structurally invalid.
    #[error("catalog data is invalid: {0}")]
    Data(String),
    /// A Lie-algebra operation failed.
    #[error(transparent)]
    Lie(#[from] LieError),
    /// An invariant computation failed.
    #[error(transparent)]
    Invariant(#[from] InvariantError),
    /// A Poisson computation failed.
    #[error(transparent)]
    Poisson(#[from] PoissonError),
}

/// Recorded expected values for one catalog algebra. Every field is
/// optional; only the recorded ones are verified.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExpectedRecord {
    /// Expected index `i(L)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    /// Expected magic number `c(L)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub c: Option<usize>,
    /// Expected fundamental semi-invariant (up to a nonzero scalar).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p: Option<String>,
    /// Expected Frobenius semiradical: `"full"` or a spanning set of
    /// linear expressions.
    #[serde(rename = "F", skip_serializing_if = "Option::is_none")]
    pub f: Option<SpanExpect>,
    /// Expected maximal abelian dimension `α(L)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<usize>,
    /// Basis of a recorded abelian subalgebra witnessing `α(L)`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<Vec<String>>,
    /// Whether the witness subalgebra is a commutative polarization
    /// (dimension equal to the magic number).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub cp: Option<bool>,
    /// Generators of the Poisson center, resolved in order.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_gens: Option<Vec<YGen>>,
    /// Expected transcendence degree of the Poisson-center generators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub y_trdeg: Option<usize>,
    /// Polynomial identities among the resolved generators that must
    /// expand to zero.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relations: Option<Vec<Relation>>,
    /// Generators of a maximal Poisson-commutative subalgebra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_gens: Option<Vec<String>>,
    /// Whether the subalgebra generators all have degree at most two
    /// (defaults to true when absent).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_deg_le2: Option<bool>,
    /// Coordinates cutting out the rank-drop locus of the generators'
    /// Jacobian; its length is the expected codimension.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub locus: Option<Vec<String>>,
    /// For parametric families: Jacobi residual classes (up to nonzero
    /// scalars) instead of an identically satisfied Jacobi identity.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jacobi_residuals: Option<Vec<String>>,
    /// Expected quasi-quadraticity (Frobenius semiradical is everything).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quasi_quadratic: Option<bool>,
    /// Expected square integrability (center dimension equals index).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub square_integrable: Option<bool>,
    /// Expected unimodularity (all adjoint traces vanish).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub unimodular: Option<bool>,
}

/// Expected Frobenius semiradical: the whole algebra, or a spanning set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpanExpect {
    /// The literal string `"full"`: the span is the whole algebra.
    Full(String),
    /// Linear expressions spanning the expected subspace.
    Basis(Vec<String>),
}

/// One recorded Poisson-center generator.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct YGen {
    /// Name under which later definitions may reference this generator.
    pub name: String,
    /// The generator, written out as a polynomial.
    pub expr: String,
    /// When present, the generator is defined as an exact quotient and
    /// the division must leave no remainder.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Quotient>,
}

/// A generator defined as `num / den` with zero remainder.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Quotient {
    /// Denominator polynomial.
    pub den: String,
    /// Numerator, as a sum of coefficient-weighted products.
    pub num: Vec<ProductTerm>,
}

/// One `coeff · f1 · f2 ⋯` summand of a product-sum expression.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProductTerm {
    /// Rational coefficient, as a `p/q` string.
    pub coeff: String,
    /// The factors, multiplied left to right.
    pub factors: Vec<Factor>,
}

/// A factor in a product-sum: a reference to a named generator, or an
/// inline polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Factor {
    /// Reference to a previously resolved generator by name.
    Ref {
        /// The generator name.
        #[serde(rename = "ref")]
        name: String,
    },
    /// An inline polynomial in the basis coordinates.
    Poly {
        /// The polynomial text.
        poly: String,
    },
}

/// A polynomial identity among resolved generators; it must expand to the
/// zero polynomial.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Relation {
    /// Label used in reports.
    pub name: String,
    /// The identity's summands.
    pub terms: Vec<ProductTerm>,
}

/// A sample point at which a (possibly parametric) entry is verified.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SampleSpec {
    /// Parameter values, as `p/q` strings.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, String>,
    /// When present, replace the expected record wholesale with the named
    /// entry's record before applying overrides.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    /// Field-level overrides applied on top of the (possibly routed)
    /// expected record.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub over: Option<ExpectedRecord>,
}

/// A recorded observation where a published table disagrees with the
/// recomputed value; the catalog stores the corrected value.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Discrepancy {
    /// The field concerned.
    pub field: String,
    /// The value as printed in the source table.
    pub printed: String,
    /// The corrected value the catalog records.
    pub corrected: String,
    /// Why the printed value cannot be right.
    pub witness: String,
}

/// One catalog entry: an algebra key plus everything recorded about it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogEntry {
    /// Dimension of the algebra.
    pub dim: usize,
    /// Position in the canonical listing order.
    pub order: u32,
    /// Item number in the survey table, when the entry belongs to it.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub item: Option<u32>,
    /// Alternative names for the same algebra.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub names: Option<Vec<String>>,
    /// Whether the algebra is coregular (polynomial invariant ring).
    pub coregular: bool,
    /// Recorded expected values.
    pub expected: ExpectedRecord,
    /// Sample points; a single empty sample for non-parametric entries.
    pub samples: Vec<SampleSpec>,
    /// Known disagreements with the published tables.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub discrepancies: Vec<Discrepancy>,
}

/// Overwrites the fields of `base` that `over` sets.
pub fn merge_expected(base: &mut ExpectedRecord, over: &ExpectedRecord) {
    macro_rules! take {
        ($($field:ident),* $(,)?) => {
            $(if over.$field.is_some() {
                base.$field = over.$field.clone();
            })*
        };
    }
    take!(
        i, c, p, f, alpha, h, cp, y_gens, y_trdeg, relations, m_gens, m_deg_le2, locus,
        jacobi_residuals, quasi_quadratic, square_integrable, unimodular,
    );
}

/// Result of recomputing one recorded field.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldCheck {
    /// Which field was checked, e.g. `"i"`, `"p"`, `"y[f].central"`.
    pub field: String,
    /// Whether the recomputed value matches the record.
    pub passed: bool,
    /// Human-readable evidence: the computed value, and on failure the
    /// expected one.
    pub detail: String,
}

impl fmt::Display for FieldCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.passed { "pass" } else { "FAIL" };
        write!(f, "{mark} {}: {}", self.field, self.detail)
    }
}

/// All checks run at one sample point.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleReport {
    /// `key` for plain entries, `key@p=v,...` for specialized samples.
    pub tag: String,
    /// Field checks in evaluation order.
    pub checks: Vec<FieldCheck>,
}

impl SampleReport {
    /// True when every check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Verification outcome for one catalog entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryReport {
    /// The catalog key.
    pub key: String,
    /// Entry-level checks (symbolic Jacobi identity or residual classes
    /// for parametric entries).
    pub checks: Vec<FieldCheck>,
    /// One report per sample point.
    pub samples: Vec<SampleReport>,
}

impl EntryReport {
    /// True when every entry-level and sample-level check passed.
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.samples.iter().all(|s| s.passed())
    }

    /// All failed checks, tagged with the sample they belong to.
    pub fn failures(&self) -> Vec<(String, FieldCheck)> {
        let mut out = Vec::new();
        for c in &self.checks {
            if !c.passed {
                out.push((self.key.clone(), c.clone()));
            }
        }
        for s in &self.samples {
            for c in &s.checks {
                if !c.passed {
                    out.push((s.tag.clone(), c.clone()));
                }
            }
        }
        out
    }

    /// Total number of checks run.
    pub fn check_count(&self) -> usize {
        self.checks.len() + self.samples.iter().map(|s| s.checks.len()).sum::<usize>()
    }
}

/// Options controlling verification.
#[derive(Debug, Clone)]
pub struct VerifyOptions {
    /// Seeds for the Frobenius semiradical sampling; all seeds must agree
    /// on the span.
    pub f_seeds: Vec<u64>,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { f_seeds: (0..10).collect() }
    }
}

impl VerifyOptions {
    /// Single-seed verification (faster; skips the cross-seed agreement
    /// guarantee).
    pub fn quick(seed: u64) -> Self {
        VerifyOptions { f_seeds: vec![seed] }
    }
}

/// The embedded catalog.
#[derive(Debug)]
pub struct Catalog {
    algebras: BTreeMap<String, AlgebraFile>,
    entries: BTreeMap<String, CatalogEntry>,
}

/// Returns the process-wide catalog, parsed once from the embedded data.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| Catalog::from_embedded().expect("embedded catalog data is valid"))
}

impl Catalog {
    /// Parses the embedded JSON documents.
    pub fn from_embedded() -> Result<Catalog, CatalogError> {
        Catalog::from_json(ALGEBRAS_JSON, EXPECTATIONS_JSON)
    }

    /// Parses a catalog from JSON text: a list of algebra files and a map
    /// from algebra name to catalog entry.
    pub fn from_json(algebras: &str, expectations: &str) -> Result<Catalog, CatalogError> {
        let files: Vec<AlgebraFile> =
            serde_json::from_str(algebras).map_err(|e| CatalogError::Data(e.to_string()))?;
        let entries: BTreeMap<String, CatalogEntry> =
            serde_json::from_str(expectations).map_err(|e| CatalogError::Data(e.to_string()))?;
        let mut algebras = BTreeMap::new();
        for f in files {
            let name = f.name.clone();
            if algebras.insert(name.clone(), f).is_some() {
                return Err(CatalogError::Data(format!("duplicate algebra `{name}`")));
            }
        }
        for key in entries.keys() {
            if !algebras.contains_key(key) {
                return Err(CatalogError::Data(format!("entry `{key}` has no algebra")));
            }
        }
        Ok(Catalog { algebras, entries })
    }

    /// All keys, sorted by the canonical listing order.
    pub fn keys(&self) -> Vec<&str> {
        let mut keys: Vec<&str> = self.entries.keys().map(String::as_str).collect();
        keys.sort_by_key(|k| self.entries[*k].order);
        keys
    }

    /// Keys of the numbered survey items, sorted by item number.
    pub fn item_keys(&self) -> Vec<&str> {
        let mut keys: Vec<&str> = self
            .entries
            .iter()
            .filter(|(_, e)| e.item.is_some())
            .map(|(k, _)| k.as_str())
            .collect();
        keys.sort_by_key(|k| self.entries[*k].item);
        keys
    }

    /// Keys of the numbered items whose witness subalgebra is *not* a
    /// commutative polarization.
    pub fn no_cp_item_keys(&self) -> Vec<&str> {
        self.item_keys()
            .into_iter()
            .filter(|k| self.entries[*k].expected.cp == Some(false))
            .collect()
    }

    /// Looks up an entry.
    pub fn entry(&self, key: &str) -> Result<&CatalogEntry, CatalogError> {
        self.entries.get(key).ok_or_else(|| CatalogError::UnknownKey(key.to_string()))
    }

    /// Looks up the raw algebra file.
    pub fn algebra_file(&self, key: &str) -> Result<&AlgebraFile, CatalogError> {
        self.algebras.get(key).ok_or_else(|| CatalogError::UnknownKey(key.to_string()))
    }

    /// Builds the (possibly parametric) algebra for a key.
    pub fn algebra(&self, key: &str) -> Result<LieAlgebra, CatalogError> {
        Ok(LieAlgebra::from_file(self.algebra_file(key)?)?)
    }

    /// Verifies one entry against its recorded expectations.
    pub fn verify_entry(
        &self,
        key: &str,
        opts: &VerifyOptions,
    ) -> Result<EntryReport, CatalogError> {
        let entry = self.entry(key)?.clone();
        self.verify_entry_with(key, &entry, opts)
    }

    /// Verifies the algebra under `key` against an explicit entry record.
    /// This is the hook used to prove the verifier reports mismatches
    /// field-precisely: perturb one field and watch exactly it fail.
    pub fn verify_entry_with(
        &self,
        key: &str,
        entry: &CatalogEntry,
        opts: &VerifyOptions,
    ) -> Result<EntryReport, CatalogError> {
        let base = self.algebra(key)?;
        let mut checks = Vec::new();
        if !base.params().is_empty() {
            let rep = base.jacobi_check();
            match &entry.expected.jacobi_residuals {
                Some(targets) => checks.push(residual_class_check(&base, &rep, targets)),
                None => checks.push(FieldCheck {
                    field: "jacobi.symbolic".into(),
                    passed: rep.is_satisfied(),
                    detail: if rep.is_satisfied() {
                        "identity holds for all parameter values".into()
                    } else {
                        format!("{} residual class(es)", rep.residuals.len())
                    },
                }),
            }
        }
        let mut samples = Vec::new();
        for sample in &entry.samples {
            samples.push(self.verify_sample(key, &base, entry, sample, opts)?);
        }
        Ok(EntryReport { key: key.to_string(), checks, samples })
    }

    /// Verifies every entry, in listing order, fanning out across threads.
    pub fn verify_all(
        &self,
        keys: &[&str],
        opts: &VerifyOptions,
    ) -> Vec<(String, Result<EntryReport, CatalogError>)> {
        keys.par_iter()
            .map(|k| (k.to_string(), self.verify_entry(k, opts)))
            .collect()
    }

    fn verify_sample(
        &self,
        key: &str,
        base: &LieAlgebra,
        entry: &CatalogEntry,
        sample: &SampleSpec,
        opts: &VerifyOptions,
    ) -> Result<SampleReport, CatalogError> {
        let tag = sample_tag(key, sample);
        let alg;
        let mut subst: BTreeMap<u32, Rat> = BTreeMap::new();
        if sample.params.is_empty() {
            alg = base.clone();
        } else {
            let pairs: Vec<(String, String)> =
                sample.params.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
            alg = base.specialize_all(&pairs)?;
            for (name, text) in &sample.params {
                let id = base.vars().id(name).ok_or_else(|| {
                    CatalogError::Data(format!("unknown parameter `{name}` in sample"))
                })?;
                let value = parse_rat(text).map_err(|e| CatalogError::Data(e.to_string()))?;
                subst.insert(id, value);
            }
        }
        let mut expect = entry.expected.clone();
        if let Some(route) = &sample.route {
            expect = self.entry(route)?.expected.clone();
        }
        if let Some(over) = &sample.over {
            merge_expected(&mut expect, over);
        }
        let ctx = SampleCtx { base, alg: &alg, subst };
        let mut checks = Vec::new();
        run_sample_checks(&ctx, entry, &expect, opts, &mut checks)?;
        Ok(SampleReport { tag, checks })
    }
}

/// Builds the report tag for a sample: the key alone, or `key@p=v,...`
/// with parameters in name order.
pub fn sample_tag(key: &str, sample: &SampleSpec) -> String {
    if sample.params.is_empty() {
        key.to_string()
    } else {
        let pairs: Vec<String> =
            sample.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
        format!("{key}@{}", pairs.join(","))
    }
}

/// Parsing context for recorded expected strings: they are written against
/// the *unspecialized* variable table (so parametric records can mention
/// parameters), then specialized and moved to the sample algebra's table.
struct SampleCtx<'a> {
    base: &'a LieAlgebra,
    alg: &'a LieAlgebra,
    subst: BTreeMap<u32, Rat>,
}

impl SampleCtx<'_> {
    fn poly(&self, text: &str) -> Result<Poly, String> {
        let p = Poly::parse(self.base.vars(), text).map_err(|e| e.to_string())?;
        let p = if self.subst.is_empty() { p } else { p.substitute(&self.subst) };
        p.change_table(self.alg.vars()).map_err(|e| e.to_string())
    }

    fn polys(&self, texts: &[String]) -> Result<Vec<Poly>, String> {
        texts.iter().map(|t| self.poly(t)).collect()
    }

    fn span(&self, exprs: &[String]) -> Result<Subspace, String> {
        let mut span = Subspace::new(self.alg.dim());
        for e in exprs {
            let v = self.alg.poly_to_vector(&self.poly(e)?).map_err(|e| e.to_string())?;
            span.insert(v);
        }
        Ok(span)
    }

    /// Resolves a product-sum: `Σ coeff · Π factor`, factors being inline
    /// polynomials or references into the environment.
    fn product_sum(
        &self,
        terms: &[ProductTerm],
        env: &[(String, Poly)],
    ) -> Result<Poly, String> {
        let mut acc = Poly::zero(self.alg.vars());
        for term in terms {
            let coeff = parse_rat(&term.coeff).map_err(|e| e.to_string())?;
            let mut prod = Poly::constant(self.alg.vars(), coeff);
            for factor in &term.factors {
                let f = match factor {
                    Factor::Ref { name } => env
                        .iter()
                        .rev()
                        .find(|(n, _)| n == name)
                        .map(|(_, p)| p.clone())
                        .ok_or_else(|| format!("unresolved reference `{name}`"))?,
                    Factor::Poly { poly } => self.poly(poly)?,
                };
                prod = prod.mul(&f);
            }
            acc = acc.add(&prod);
        }
        Ok(acc)
    }
}

fn push(checks: &mut Vec<FieldCheck>, field: &str, passed: bool, detail: String) {
    checks.push(FieldCheck { field: field.to_string(), passed, detail });
}

fn push_err(checks: &mut Vec<FieldCheck>, field: &str, err: String) {
    checks.push(FieldCheck {
        field: field.to_string(),
        passed: false,
        detail: format!("recorded value could not be interpreted: {err}"),
    });
}

/// Shortens long polynomial renderings for report details.
fn clip(s: &str) -> String {
    const LIMIT: usize = 96;
    if s.len() <= LIMIT {
        s.to_string()
    } else {
        let cut = s
            .char_indices()
            .take_while(|(i, _)| *i < LIMIT)
            .last()
            .map(|(i, c)| i + c.len_utf8())
            .unwrap_or(0);
        format!("{}…", &s[..cut])
    }
}

fn residual_class_check(
    base: &LieAlgebra,
    rep: &crate::lie::JacobiReport,
    targets: &[String],
) -> FieldCheck {
    let mut parsed = Vec::new();
    for t in targets {
        match Poly::parse(base.vars(), t) {
            Ok(p) => parsed.push(p),
            Err(e) => {
                return FieldCheck {
                    field: "jacobi.residuals".into(),
                    passed: false,
                    detail: format!("recorded residual `{t}` does not parse: {e}"),
                }
            }
        }
    }
    let computed: Vec<&Poly> = rep.residuals.iter().map(|r| &r.value).collect();
    let passed = residual_classes_match(&computed, &parsed);
    FieldCheck {
        field: "jacobi.residuals".into(),
        passed,
        detail: format!(
            "computed {} class(es), recorded {}{}",
            computed.len(),
            parsed.len(),
            if passed { ", matching up to scalars" } else { "" }
        ),
    }
}

/// True when the two lists of nonzero polynomials coincide as sets of
/// scalar classes (each computed residual pairs with a distinct recorded
/// one that is a nonzero rational multiple of it).
fn residual_classes_match(computed: &[&Poly], targets: &[Poly]) -> bool {
    if computed.len() != targets.len() {
        return false;
    }
    let mut used = vec![false; targets.len()];
    'outer: for c in computed {
        if c.is_zero() {
            return false;
        }
        let cm = c.monic();
        for (i, t) in targets.iter().enumerate() {
            if !used[i] && !t.is_zero() && t.monic() == cm {
                used[i] = true;
                continue 'outer;
            }
        }
        return false;
    }
    true
}

/// Runs every applicable field check for one sample. `entry` carries the
/// sample-independent metadata (the item flag), `expect` the routed and
/// overridden expected record.
fn run_sample_checks(
    ctx: &SampleCtx<'_>,
    entry: &CatalogEntry,
    expect: &ExpectedRecord,
    opts: &VerifyOptions,
    checks: &mut Vec<FieldCheck>,
) -> Result<(), CatalogError> {
    let alg = ctx.alg;
    let n = alg.dim();

    let jac = alg.jacobi_check();
    push(
        checks,
        "jacobi",
        jac.is_satisfied(),
        if jac.is_satisfied() {
            "identity holds".into()
        } else {
            format!("{} nonzero residual class(es)", jac.residuals.len())
        },
    );

    let im = invariants::index_and_magic(alg)?;
    if let Some(want) = expect.i {
        push(
            checks,
            "i",
            im.index == want,
            format!("computed {}, recorded {}", im.index, want),
        );
    }
    if let Some(want) = expect.c {
        push(
            checks,
            "c",
            im.magic == want,
            format!("computed {}, recorded {}", im.magic, want),
        );
    }
    push(
        checks,
        "dim_i_even",
        (n + im.index) % 2 == 0,
        format!("dim {} and index {} have equal parity", n, im.index),
    );

    if let Some(want) = &expect.p {
        let semi = invariants::fundamental_semi_invariant(alg)?;
        match ctx.poly(want) {
            Ok(p) if !p.is_zero() => {
                let target = p.monic();
                push(
                    checks,
                    "p",
                    semi.p == target,
                    format!("computed {}, recorded {}", clip(&semi.p.to_string()), clip(want)),
                );
            }
            Ok(_) => push_err(checks, "p", "recorded semi-invariant is zero".into()),
            Err(e) => push_err(checks, "p", e),
        }
    }

    let z = alg.center()?;
    let sq = z.dim() == im.index;
    if let Some(want) = expect.square_integrable {
        push(
            checks,
            "flags.square_integrable",
            sq == want,
            format!("center dim {} vs index {}: {}, recorded {}", z.dim(), im.index, sq, want),
        );
    }
    let uni = alg.is_unimodular()?;
    if let Some(want) = expect.unimodular {
        push(
            checks,
            "flags.unimodular",
            uni == want,
            format!("computed {uni}, recorded {want}"),
        );
    }
    let nilpotent = alg.is_nilpotent()?;
    if nilpotent {
        push(
            checks,
            "flags.nilpotent_unimodular",
            uni,
            format!("nilpotent, unimodular = {uni}"),
        );
    }
    let filiform = invariants::is_filiform(alg)?;
    if entry.item.is_some() {
        push(
            checks,
            "filiform",
            filiform,
            format!("lower central series dims drop by one: {filiform}"),
        );
    }

    let mut f_computed: Option<Subspace> = None;
    if let Some(want) = &expect.f {
        let first_seed = opts.f_seeds.first().copied().unwrap_or(0);
        let rep = invariants::frobenius_semiradical_with_index(alg, first_seed, im.index)?;
        if opts.f_seeds.len() > 1 {
            let mut agree = true;
            for &seed in &opts.f_seeds[1..] {
                let other =
                    invariants::frobenius_semiradical_with_index(alg, seed, im.index)?;
                if other.f_basis != rep.f_basis {
                    agree = false;
                    break;
                }
            }
            push(
                checks,
                "F.seeds",
                agree,
                format!("{} seeds agree on a dim-{} span", opts.f_seeds.len(), rep.f_basis.dim()),
            );
        }
        match want {
            SpanExpect::Full(word) if word == "full" => push(
                checks,
                "F",
                rep.f_basis.dim() == n,
                format!("computed dim {}, recorded the whole algebra (dim {n})", rep.f_basis.dim()),
            ),
            SpanExpect::Full(word) => {
                push_err(checks, "F", format!("unrecognized span keyword `{word}`"))
            }
            SpanExpect::Basis(exprs) => match ctx.span(exprs) {
                Ok(span) => push(
                    checks,
                    "F",
                    span == rep.f_basis,
                    format!(
                        "computed dim {}, recorded span of {} generator(s) with dim {}",
                        rep.f_basis.dim(),
                        exprs.len(),
                        span.dim()
                    ),
                ),
                Err(e) => push_err(checks, "F", e),
            },
        }
        let qq = rep.f_basis.dim() == n;
        if let Some(want_qq) = expect.quasi_quadratic {
            push(
                checks,
                "flags.quasi_quadratic",
                qq == want_qq,
                format!("computed {qq}, recorded {want_qq}"),
            );
        }
        if qq {
            push(
                checks,
                "flags.qq_unimodular",
                uni,
                format!("quasi quadratic, unimodular = {uni}"),
            );
        }
        push(
            checks,
            "F.z_inside",
            z.subset_of(&rep.f_basis),
            format!("center (dim {}) inside the semiradical (dim {})", z.dim(), rep.f_basis.dim()),
        );
        if rep.f_basis.dim() > 0 {
            let induced = alg.induced_subalgebra(&rep.f_basis, "F")?;
            let inner = invariants::frobenius_semiradical(&induced, first_seed)?;
            push(
                checks,
                "F.restricted",
                inner.f_basis.dim() == rep.f_basis.dim(),
                format!(
                    "semiradical of the restriction has dim {}, expected {} (quasi quadratic)",
                    inner.f_basis.dim(),
                    rep.f_basis.dim()
                ),
            );
        }
        f_computed = Some(rep.f_basis);
    }

    let mut h_span: Option<Subspace> = None;
    if let Some(h) = &expect.h {
        match ctx.span(h) {
            Ok(span) => {
                push(
                    checks,
                    "h.dim",
                    span.dim() == h.len(),
                    format!("{} generators span dim {}", h.len(), span.dim()),
                );
                let sub = alg.is_subalgebra(&span)?;
                push(checks, "h.subalgebra", sub, format!("closed under the bracket: {sub}"));
                let ab = alg.is_abelian_subspace(&span)?;
                push(checks, "h.abelian", ab, format!("abelian: {ab}"));
                if let Some(want_cp) = expect.cp {
                    let is_cp = span.dim() == im.magic;
                    push(
                        checks,
                        "cp",
                        is_cp == want_cp,
                        format!(
                            "witness dim {} vs magic number {}: {}, recorded {}",
                            span.dim(),
                            im.magic,
                            is_cp,
                            want_cp
                        ),
                    );
                    if want_cp {
                        if let (Some(f), Some(SpanExpect::Basis(_))) = (&f_computed, &expect.f) {
                            push(
                                checks,
                                "F.in_cp",
                                f.subset_of(&span),
                                format!(
                                    "proper semiradical (dim {}) inside the polarization (dim {})",
                                    f.dim(),
                                    span.dim()
                                ),
                            );
                        }
                    }
                }
                h_span = Some(span);
            }
            Err(e) => push_err(checks, "h", e),
        }
    }

    if let Some(alpha) = expect.alpha {
        push(
            checks,
            "alpha.sandwich",
            im.index <= alpha && alpha <= im.magic,
            format!("i {} ≤ α {} ≤ c {}", im.index, alpha, im.magic),
        );
        if let Some(span) = &h_span {
            push(
                checks,
                "alpha.witness",
                span.dim() == alpha,
                format!("witness dim {}, recorded α {}", span.dim(), alpha),
            );
        }
        if filiform {
            match abelian::filiform_alpha(alg) {
                Ok(fa) => push(
                    checks,
                    "alpha.filiform",
                    alpha == fa.alpha,
                    format!(
                        "first abelian series member at step {} gives α = {}, recorded {}",
                        fa.m, fa.alpha, alpha
                    ),
                ),
                Err(AbelianError::StandardFiliform { n }) => push(
                    checks,
                    "alpha.filiform",
                    alpha == n - 1,
                    format!("standard filiform: α = dim − 1 = {}, recorded {}", n - 1, alpha),
                ),
                Err(AbelianError::NotFiliform) => {
                    push_err(checks, "alpha.filiform", "filiform flag disagrees".into())
                }
                Err(e) => {
                    return Err(match e {
                        AbelianError::Lie(e) => CatalogError::Lie(e),
                        AbelianError::Invariant(e) => CatalogError::Invariant(e),
                        other => CatalogError::Data(other.to_string()),
                    })
                }
            }
        }
    }

    if filiform {
        let q = n.div_ceil(2);
        if n >= q + 2 {
            let series = alg.lower_central_series()?;
            let member = &series[n - q - 1];
            let ab = alg.is_abelian_subspace(member)?;
            push(
                checks,
                "filiform.abelian_tail",
                member.dim() == q && ab,
                format!(
                    "series member C^{} has dim {} (want {}), abelian: {}",
                    n - q,
                    member.dim(),
                    q,
                    ab
                ),
            );
        }
    }

    let mut env: Vec<(String, Poly)> = Vec::new();
    if let Some(y_gens) = &expect.y_gens {
        for gen in y_gens {
            let value = resolve_y_gen(ctx, gen, &env, checks);
            let central = poisson::is_poisson_central(alg, &value)?;
            push(
                checks,
                &format!("y[{}].central", gen.name),
                central,
                format!("{{·, L}} = 0 for {}: {central}", clip(&value.to_string())),
            );
            env.push((gen.name.clone(), value));
        }
        if let Some(want) = expect.y_trdeg {
            let gens: Vec<Poly> = env.iter().map(|(_, p)| p.clone()).collect();
            let d = poisson::trdeg(alg, &gens)?;
            push(checks, "y.trdeg", d == want, format!("computed {d}, recorded {want}"));
        }
    }

    if let Some(relations) = &expect.relations {
        for rel in relations {
            let field = format!("rel[{}]", rel.name);
            match ctx.product_sum(&rel.terms, &env) {
                Ok(value) => push(
                    checks,
                    &field,
                    value.is_zero(),
                    if value.is_zero() {
                        "expands to 0 exactly".into()
                    } else {
                        format!("nonzero remainder {}", clip(&value.to_string()))
                    },
                ),
                Err(e) => push_err(checks, &field, e),
            }
        }
    }

    if let Some(m_gens) = &expect.m_gens {
        match ctx.polys(m_gens) {
            Ok(gens) => {
                let cert = poisson::certify_candidate(alg, &gens)?;
                let witness = cert
                    .failures
                    .first()
                    .map(|f| format!("; first witness {f}"))
                    .unwrap_or_default();
                push(
                    checks,
                    "m.commutative",
                    cert.pairwise_commute,
                    format!("all pairs Poisson-commute: {}{}", cert.pairwise_commute, witness),
                );
                push(
                    checks,
                    "m.complete",
                    cert.complete,
                    format!("trdeg {} vs magic number {}", cert.trdeg, cert.magic),
                );
                let want_le2 = expect.m_deg_le2.unwrap_or(true);
                if want_le2 {
                    push(
                        checks,
                        "m.deg_le_2",
                        cert.max_degree <= 2,
                        format!("max degree {}", cert.max_degree),
                    );
                } else {
                    push(
                        checks,
                        "m.deg_gt_2",
                        cert.max_degree > 2,
                        format!("max degree {} (recorded as needing degree > 2)", cert.max_degree),
                    );
                }
                if let Some(locus) = &expect.locus {
                    let computed = poisson::coordinate_jacobian_locus(alg, &gens)?;
                    let mut want_vars = locus.clone();
                    want_vars.sort();
                    let (passed, detail) = match &computed {
                        CoordinateLocus::Certified { codim, vars } => (
                            *codim == locus.len() && *vars == want_vars,
                            format!(
                                "computed codim {} at {{{}}}, recorded codim {} at {{{}}}",
                                codim,
                                vars.join(", "),
                                locus.len(),
                                want_vars.join(", ")
                            ),
                        ),
                        CoordinateLocus::Unknown => {
                            (false, "no coordinate-subspace certificate found".into())
                        }
                    };
                    push(checks, "locus", passed, detail);
                }
            }
            Err(e) => push_err(checks, "m", e),
        }
    }

    Ok(())
}

/// Resolves one recorded Poisson-center generator. Quotient generators are
/// recomputed as exact divisions and must match the recorded expansion;
/// the computed quotient (or on failure the recorded expansion) becomes
/// the environment value.
fn resolve_y_gen(
    ctx: &SampleCtx<'_>,
    gen: &YGen,
    env: &[(String, Poly)],
    checks: &mut Vec<FieldCheck>,
) -> Poly {
    let recorded = match ctx.poly(&gen.expr) {
        Ok(p) => p,
        Err(e) => {
            push_err(checks, &format!("y[{}].expr", gen.name), e);
            Poly::zero(ctx.alg.vars())
        }
    };
    let Some(quotient) = &gen.quotient else {
        return recorded;
    };
    let field = format!("y[{}].quotient", gen.name);
    let num = match ctx.product_sum(&quotient.num, env) {
        Ok(p) => p,
        Err(e) => {
            push_err(checks, &field, e);
            return recorded;
        }
    };
    let den = match ctx.poly(&quotient.den) {
        Ok(p) => p,
        Err(e) => {
            push_err(checks, &field, e);
            return recorded;
        }
    };
    match exact_div(&num, &den) {
        Ok(quo) => {
            let matches = quo == recorded;
            push(
                checks,
                &field,
                matches,
                format!(
                    "numerator divides exactly by {}; quotient matches the record: {matches}",
                    clip(&den.to_string())
                ),
            );
            quo
        }
        Err(e) => {
            push(checks, &field, false, format!("division leaves a remainder: {e}"));
            recorded
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn embedded_data_parses_and_keys_align() {
        let cat = catalog();
        let keys = cat.keys();
        assert_eq!(keys.len(), 54);
        assert_eq!(cat.item_keys().len(), 42);
        for key in &keys {
            let entry = cat.entry(key).unwrap();
            let alg = cat.algebra(key).unwrap();
            assert_eq!(alg.dim(), entry.dim, "dim mismatch for {key}");
            assert!(!entry.samples.is_empty(), "{key} has no samples");
        }
        assert_eq!(keys[0], "g3");
    }

    #[test]
    fn embedded_algebras_round_trip_byte_identically() {
        let files: Vec<AlgebraFile> = serde_json::from_str(ALGEBRAS_JSON).unwrap();
        assert_eq!(crate::canonical_json(&files), ALGEBRAS_JSON);
    }

    #[test]
    fn no_cp_items_are_the_recorded_nine() {
        let cat = catalog();
        let mut keys = cat.no_cp_item_keys();
        keys.sort_unstable();
        assert_eq!(
            keys,
            vec![
                "g6.18", "g6.20", "g7.1.1i:l0", "g8.1", "g8.10:l1", "g8.2", "g8.3", "g8.4",
                "g8.9:l1"
            ]
        );
    }

    #[test]
    fn simplest_entry_verifies() {
        let cat = catalog();
        let report = cat.verify_entry("g3", &VerifyOptions::quick(0)).unwrap();
        assert!(report.passed(), "failures: {:?}", report.failures());
        let fields: Vec<&str> =
            report.samples[0].checks.iter().map(|c| c.field.as_str()).collect();
        assert!(fields.contains(&"i"));
        assert!(fields.contains(&"p"));
        assert!(fields.contains(&"m.commutative"));
    }

    #[test]
    fn perturbed_index_fails_precisely() {
        let cat = catalog();
        let mut entry = cat.entry("g3").unwrap().clone();
        entry.expected.i = Some(2);
        let report = cat.verify_entry_with("g3", &entry, &VerifyOptions::quick(0)).unwrap();
        assert!(!report.passed());
        let failures = report.failures();
        assert_eq!(failures.len(), 1);
        assert_eq!(failures[0].1.field, "i");
    }

    #[test]
    fn routed_sample_uses_target_expectations() {
        let cat = catalog();
        let entry = cat.entry("g8.9").unwrap();
        let routed = &entry.samples[2];
        assert_eq!(routed.route.as_deref(), Some("g8.9:l1"));
        assert_eq!(routed.params.get("lambda").map(String::as_str), Some("1"));
    }

    #[test]
    fn residual_class_matching_is_scalar_invariant() {
        let cat = catalog();
        let base = cat.algebra("filiform9:generic").unwrap();
        let rep = base.jacobi_check();
        assert_eq!(rep.residuals.len(), 1);
        let recorded = cat.entry("filiform9:generic").unwrap();
        let targets = recorded.expected.jacobi_residuals.clone().unwrap();
        let check = residual_class_check(&base, &rep, &targets);
        assert!(check.passed, "{}", check.detail);
        let scaled: Vec<String> = targets
            .iter()
            .map(|t| {
                let p = Poly::parse(base.vars(), t).unwrap();
                p.scale(&crate::rat::rat_int(-3)).to_string()
            })
            .collect();
        let check = residual_class_check(&base, &rep, &scaled);
        assert!(check.passed, "scalar multiples must still match: {}", check.detail);
        let broken = vec!["a25".to_string()];
        let check = residual_class_check(&base, &rep, &broken);
        assert!(!check.passed);
    }

    #[test]
    fn merge_overrides_only_set_fields() {
        let mut base = ExpectedRecord { i: Some(3), c: Some(5), ..Default::default() };
        let over = ExpectedRecord { i: Some(1), ..Default::default() };
        merge_expected(&mut base, &over);
        assert_eq!(base.i, Some(1));
        assert_eq!(base.c, Some(5));
    }
}
