//! Finite-dimensional Lie algebras over Q given by structure constants.
//!
//! An algebra is a named basis `x1..xn` (or any identifiers), an optional
//! list of parameter names, and the brackets `[x_i, x_j]` for `i < j` as
//! linear combinations of basis elements whose coefficients may involve the
//! parameters. Everything downstream — structure matrices, series, centers,
//! semiradicals, Poisson structure — is driven by this type.
//!
//! Indices are 1-based at the API and file-format boundary (matching the
//! usual mathematical notation) and 0-based internally.

use crate::linalg::RowBasis;
use crate::poly::{Poly, PolyError, VarTable, Vars};
use crate::rat::{parse_rat, Rat};
use num::Zero;
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// A linear subspace of the algebra, kept as a reduced row basis of
/// coordinate vectors.
pub type Subspace = RowBasis;

/// Errors from algebra construction, parsing, and specialization.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LieError {
    /// A 1-based basis index fell outside `1..=dim`.
    #[error("basis index {index} out of range 1..={dim}")]
    IndexOutOfRange {
        /// The offending 1-based index.
        index: usize,
        /// The algebra dimension.
        dim: usize,
    },
    /// A bracket coefficient failed to parse or used a basis variable.
    #[error("bad coefficient `{text}`: {reason}")]
    BadCoefficient {
        /// The offending coefficient text.
        text: String,
        /// Why it was rejected.
        reason: String,
    },
    /// The same unordered pair appeared twice in the bracket list.
    #[error("duplicate bracket for pair ({i}, {j})")]
    DuplicatePair {
        /// First 1-based index as given.
        i: usize,
        /// Second 1-based index as given.
        j: usize,
    },
    /// A variable-table problem (bad or duplicate names).
    #[error(transparent)]
    Poly(#[from] PolyError),
    /// Parameters without assigned values blocked a numeric computation.
    #[error("parameters without values: {}; pass a value for each", .0.join(", "))]
    MissingParams(Vec<String>),
    /// A parameter assignment named something that is not a parameter.
    #[error("unknown parameter `{0}`")]
    UnknownParam(String),
    /// A structurally invalid description (mismatched dimension, bad vector
    /// expression, non-closed subspace, and similar).
    #[error("{0}")]
    Invalid(String),
    /// Malformed JSON input.
    #[error("JSON error: {0}")]
    Json(String),
}

/// One summand `coeff * x_k` of a bracket value, serialized form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketTerm {
    /// Coefficient text in the polynomial grammar (parameters allowed).
    pub coeff: String,
    /// 1-based index of the target basis element.
    pub k: usize,
}

/// The bracket `[x_i, x_j]` of one basis pair, serialized form.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BracketEntry {
    /// 1-based index of the left element.
    pub i: usize,
    /// 1-based index of the right element.
    pub j: usize,
    /// Summands of the bracket value.
    pub terms: Vec<BracketTerm>,
}

/// On-disk JSON form of a Lie algebra.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AlgebraFile {
    /// Display name.
    pub name: String,
    /// Dimension; must equal `basis.len()`.
    pub dim: usize,
    /// Parameter names, in declaration order.
    pub params: Vec<String>,
    /// Basis element names, in declaration order.
    pub basis: Vec<String>,
    /// Nonzero brackets between basis pairs.
    pub brackets: Vec<BracketEntry>,
}

/// A nonzero Jacobi defect: one coordinate of
/// `[[a,b],c] + [[b,c],a] + [[c,a],b]` that failed to cancel.
#[derive(Debug, Clone)]
pub struct JacobiResidual {
    /// The 1-based triple (a, b, c) where the defect first appeared.
    pub triple: (usize, usize, usize),
    /// 1-based coordinate of the defect.
    pub component: usize,
    /// The defect polynomial (in parameters, for parametric algebras).
    pub value: Poly,
}

/// Result of checking the Jacobi identity on all basis triples.
#[derive(Debug, Clone)]
pub struct JacobiReport {
    /// First representative of each scalar class of nonzero defects, in
    /// order of first appearance over triples `(a,b,c)`, `a < b < c`, and
    /// coordinates in basis order.
    pub residuals: Vec<JacobiResidual>,
}

impl JacobiReport {
    /// True when the Jacobi identity holds identically.
    pub fn is_satisfied(&self) -> bool {
        self.residuals.is_empty()
    }

    /// The residual polynomials rendered in canonical text form.
    pub fn residual_strings(&self) -> Vec<String> {
        self.residuals.iter().map(|r| r.value.to_string()).collect()
    }
}

impl fmt::Display for JacobiReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_satisfied() {
            write!(f, "Jacobi identity holds")
        } else {
            writeln!(f, "Jacobi identity fails:")?;
            for r in &self.residuals {
                writeln!(
                    f,
                    "  triple ({}, {}, {}) coordinate {}: {}",
                    r.triple.0, r.triple.1, r.triple.2, r.component, r.value
                )?;
            }
            Ok(())
        }
    }
}

/// A finite-dimensional Lie algebra over Q (or over Q with free parameters)
/// given by structure constants.
#[derive(Debug, Clone)]
pub struct LieAlgebra {
    name: String,
    basis: Vec<String>,
    params: Vec<String>,
    vars: Vars,
    /// Brackets keyed by 0-based `(i, j)` with `i < j`; values are
    /// `(coefficient, k)` terms sorted by target `k`, coefficients nonzero
    /// polynomials in the parameters.
    brackets: BTreeMap<(usize, usize), Vec<(Poly, usize)>>,
}

impl LieAlgebra {
    /// Builds an algebra from names and 1-based bracket entries, validating
    /// indices, coefficient grammar, and duplicate pairs. Reversed pairs
    /// (`i > j`) are normalized with the sign flipped.
    pub fn new(
        name: &str,
        basis: &[String],
        params: &[String],
        entries: &[BracketEntry],
    ) -> Result<Self, LieError> {
        let dim = basis.len();
        let all_names: Vec<String> = basis.iter().chain(params.iter()).cloned().collect();
        let vars = VarTable::new(all_names)?;
        let mut brackets: BTreeMap<(usize, usize), Vec<(Poly, usize)>> = BTreeMap::new();
        for e in entries {
            for &idx in &[e.i, e.j] {
                if idx == 0 || idx > dim {
                    return Err(LieError::IndexOutOfRange { index: idx, dim });
                }
            }
            if e.i == e.j {
                return Err(LieError::Invalid(format!(
                    "bracket of a basis element with itself: ({}, {})",
                    e.i, e.j
                )));
            }
            let (a, b, flip) = if e.i < e.j {
                (e.i - 1, e.j - 1, false)
            } else {
                (e.j - 1, e.i - 1, true)
            };
            if brackets.contains_key(&(a, b)) {
                return Err(LieError::DuplicatePair { i: e.i, j: e.j });
            }
            let mut by_k: BTreeMap<usize, Poly> = BTreeMap::new();
            for t in &e.terms {
                if t.k == 0 || t.k > dim {
                    return Err(LieError::IndexOutOfRange { index: t.k, dim });
                }
                let mut c = Poly::parse(&vars, &t.coeff).map_err(|err| {
                    LieError::BadCoefficient {
                        text: t.coeff.clone(),
                        reason: err.to_string(),
                    }
                })?;
                if let Some(bad) = c.occurring_vars().into_iter().find(|&v| (v as usize) < dim) {
                    return Err(LieError::BadCoefficient {
                        text: t.coeff.clone(),
                        reason: format!(
                            "coefficient uses basis element `{}`; only parameters may appear",
                            vars.name(bad)
                        ),
                    });
                }
                if flip {
                    c = c.neg();
                }
                let entry = by_k.entry(t.k - 1).or_insert_with(|| Poly::zero(&vars));
                *entry = entry.add(&c);
            }
            let terms: Vec<(Poly, usize)> = by_k
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| (c, k))
                .collect();
            if !terms.is_empty() {
                brackets.insert((a, b), terms);
            }
        }
        Ok(LieAlgebra {
            name: name.to_string(),
            basis: basis.to_vec(),
            params: params.to_vec(),
            vars,
            brackets,
        })
    }

    /// Builds an algebra from the JSON file form.
    pub fn from_file(file: &AlgebraFile) -> Result<Self, LieError> {
        if file.dim != file.basis.len() {
            return Err(LieError::Invalid(format!(
                "declared dim {} but {} basis names",
                file.dim,
                file.basis.len()
            )));
        }
        LieAlgebra::new(&file.name, &file.basis, &file.params, &file.brackets)
    }

    /// Parses an algebra from JSON text.
    pub fn from_json_str(text: &str) -> Result<Self, LieError> {
        let file: AlgebraFile =
            serde_json::from_str(text).map_err(|e| LieError::Json(e.to_string()))?;
        LieAlgebra::from_file(&file)
    }

    /// The serializable file form of this algebra, with brackets in key
    /// order and coefficients in canonical text.
    pub fn to_file(&self) -> AlgebraFile {
        let brackets = self
            .brackets
            .iter()
            .map(|(&(i, j), terms)| BracketEntry {
                i: i + 1,
                j: j + 1,
                terms: terms
                    .iter()
                    .map(|(c, k)| BracketTerm { coeff: c.to_string(), k: k + 1 })
                    .collect(),
            })
            .collect();
        AlgebraFile {
            name: self.name.clone(),
            dim: self.dim(),
            params: self.params.clone(),
            basis: self.basis.clone(),
            brackets,
        }
    }

    /// Display name.
    pub fn name(&self) -> &str {
        &self.name
    }

    /// Replaces the display name.
    pub fn set_name(&mut self, name: &str) {
        self.name = name.to_string();
    }

    /// Dimension.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// Basis element names in order.
    pub fn basis_names(&self) -> &[String] {
        &self.basis
    }

    /// Unassigned parameter names in order.
    pub fn params(&self) -> &[String] {
        &self.params
    }

    /// The variable table: basis names first, then parameters.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// True when no free parameters remain.
    pub fn is_specialized(&self) -> bool {
        self.params.is_empty()
    }

    /// Error unless all parameters have been given values.
    pub fn require_specialized(&self) -> Result<(), LieError> {
        if self.is_specialized() {
            Ok(())
        } else {
            Err(LieError::MissingParams(self.params.clone()))
        }
    }

    /// The `(i, j)` pairs (0-based, `i < j`) carrying a stored bracket, in
    /// ascending order.
    pub fn bracket_pairs(&self) -> Vec<(usize, usize)> {
        self.brackets.keys().copied().collect()
    }

    /// The raw stored terms for `i < j` (0-based), if any.
    pub fn stored_bracket(&self, i: usize, j: usize) -> Option<&[(Poly, usize)]> {
        self.brackets.get(&(i, j)).map(Vec::as_slice)
    }

    /// The bracket `[e_i, e_j]` (0-based) as `(coefficient, k)` terms, with
    /// the sign handled for any index order. Equal indices give the empty
    /// list.
    pub fn bracket_terms(&self, i: usize, j: usize) -> Vec<(Poly, usize)> {
        if i == j {
            return Vec::new();
        }
        let (a, b, flip) = if i < j { (i, j, false) } else { (j, i, true) };
        match self.brackets.get(&(a, b)) {
            None => Vec::new(),
            Some(terms) => terms
                .iter()
                .map(|(c, k)| (if flip { c.neg() } else { c.clone() }, *k))
                .collect(),
        }
    }

    /// The bracket of two coordinate vectors, for fully specialized
    /// algebras.
    pub fn bracket_vectors(&self, u: &[Rat], v: &[Rat]) -> Result<Vec<Rat>, LieError> {
        self.require_specialized()?;
        let n = self.dim();
        assert_eq!(u.len(), n, "left vector has wrong length");
        assert_eq!(v.len(), n, "right vector has wrong length");
        let mut out = vec![Rat::zero(); n];
        for (&(i, j), terms) in &self.brackets {
            // contribution of u_i v_j - u_j v_i times [e_i, e_j]
            let w = u[i].clone() * v[j].clone() - u[j].clone() * v[i].clone();
            if w.is_zero() {
                continue;
            }
            for (c, k) in terms {
                let cc = c.as_constant().expect("specialized coefficients are constant");
                out[*k] += w.clone() * cc;
            }
        }
        Ok(out)
    }

    /// The structure matrix `B` with `B[i][j] = [e_i, e_j]` written as a
    /// linear polynomial in the basis variables. Skew-symmetric by
    /// construction.
    pub fn structure_matrix(&self) -> crate::matrix::PolyMatrix {
        let n = self.dim();
        let mut m = crate::matrix::PolyMatrix::zero(&self.vars, n, n);
        for (&(i, j), terms) in &self.brackets {
            let mut e = Poly::zero(&self.vars);
            for (c, k) in terms {
                e = e.add(&c.mul(&Poly::var(&self.vars, *k as u32)));
            }
            *m.at_mut(i, j) = e.clone();
            *m.at_mut(j, i) = e.neg();
        }
        m
    }

    /// The structure matrix evaluated at a functional `xi` (coordinates in
    /// the dual basis), for fully specialized algebras.
    pub fn structure_matrix_at(&self, xi: &[Rat]) -> Result<Vec<Vec<Rat>>, LieError> {
        self.require_specialized()?;
        let n = self.dim();
        assert_eq!(xi.len(), n, "functional has wrong length");
        let mut m = vec![vec![Rat::zero(); n]; n];
        for (&(i, j), terms) in &self.brackets {
            let mut v = Rat::zero();
            for (c, k) in terms {
                let cc = c.as_constant().expect("specialized coefficients are constant");
                v += cc * xi[*k].clone();
            }
            m[i][j] = v.clone();
            m[j][i] = -v;
        }
        Ok(m)
    }

    /// Checks the Jacobi identity on every basis triple, collecting one
    /// representative per scalar class of nonzero defects.
    pub fn jacobi_check(&self) -> JacobiReport {
        let n = self.dim();
        let mut residuals: Vec<JacobiResidual> = Vec::new();
        let mut seen: BTreeSet<String> = BTreeSet::new();
        for a in 0..n {
            for b in (a + 1)..n {
                for c in (b + 1)..n {
                    let v = self.jacobiator(a, b, c);
                    for (k, poly) in v.into_iter().enumerate() {
                        if poly.is_zero() {
                            continue;
                        }
                        let class = poly.monic().to_string();
                        if seen.insert(class) {
                            residuals.push(JacobiResidual {
                                triple: (a + 1, b + 1, c + 1),
                                component: k + 1,
                                value: poly,
                            });
                        }
                    }
                }
            }
        }
        JacobiReport { residuals }
    }

    /// The coordinates of `[[a,b],c] + [[b,c],a] + [[c,a],b]` (0-based
    /// indices) as polynomials in the parameters.
    fn jacobiator(&self, a: usize, b: usize, c: usize) -> Vec<Poly> {
        let n = self.dim();
        let mut acc = vec![Poly::zero(&self.vars); n];
        for &(x, y, z) in &[(a, b, c), (b, c, a), (c, a, b)] {
            for (cxy, k) in self.bracket_terms(x, y) {
                for (ckz, m) in self.bracket_terms(k, z) {
                    acc[m] = acc[m].add(&cxy.mul(&ckz));
                }
            }
        }
        acc
    }

    /// Substitutes values for (a subset of) the parameters, producing an
    /// algebra over the remaining ones.
    pub fn specialize(&self, assign: &BTreeMap<String, Rat>) -> Result<LieAlgebra, LieError> {
        let dim = self.dim();
        let mut by_id: BTreeMap<u32, Rat> = BTreeMap::new();
        for (name, value) in assign {
            let id = self
                .vars
                .id(name)
                .filter(|&id| (id as usize) >= dim)
                .ok_or_else(|| LieError::UnknownParam(name.clone()))?;
            by_id.insert(id, value.clone());
        }
        let remaining: Vec<String> = self
            .params
            .iter()
            .filter(|p| !assign.contains_key(*p))
            .cloned()
            .collect();
        let new_names: Vec<String> = self.basis.iter().chain(remaining.iter()).cloned().collect();
        let new_vars = VarTable::new(new_names)?;
        let mut brackets: BTreeMap<(usize, usize), Vec<(Poly, usize)>> = BTreeMap::new();
        for (&(i, j), terms) in &self.brackets {
            let mut out = Vec::new();
            for (c, k) in terms {
                let c2 = c.substitute(&by_id).change_table(&new_vars)?;
                if !c2.is_zero() {
                    out.push((c2, *k));
                }
            }
            if !out.is_empty() {
                brackets.insert((i, j), out);
            }
        }
        Ok(LieAlgebra {
            name: self.name.clone(),
            basis: self.basis.clone(),
            params: remaining,
            vars: new_vars,
            brackets,
        })
    }

    /// Parses parameter assignments given as `name=p/q` pairs and
    /// specializes. Every declared parameter must receive a value.
    pub fn specialize_all(&self, pairs: &[(String, String)]) -> Result<LieAlgebra, LieError> {
        let mut assign = BTreeMap::new();
        for (name, text) in pairs {
            let value = parse_rat(text).map_err(|e| {
                LieError::BadCoefficient { text: text.clone(), reason: e.to_string() }
            })?;
            assign.insert(name.clone(), value);
        }
        let out = self.specialize(&assign)?;
        out.require_specialized()?;
        Ok(out)
    }

    /// The center `{v : [v, L] = 0}`.
    pub fn center(&self) -> Result<Subspace, LieError> {
        self.require_specialized()?;
        let n = self.dim();
        // v is central iff for all j, k: sum_i v_i * c^k_{ij} = 0.
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let tab = self.numeric_table()?;
        for j in 0..n {
            for k in 0..n {
                let row: Vec<Rat> = (0..n).map(|i| tab[i][j][k].clone()).collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        Ok(Subspace::from_rows(n, crate::linalg::kernel_basis(&rows, n)))
    }

    /// The full structure-constant table `tab[i][j][k]` = coefficient of
    /// `e_k` in `[e_i, e_j]`, for fully specialized algebras.
    pub fn numeric_table(&self) -> Result<Vec<Vec<Vec<Rat>>>, LieError> {
        self.require_specialized()?;
        let n = self.dim();
        let mut tab = vec![vec![vec![Rat::zero(); n]; n]; n];
        for (&(i, j), terms) in &self.brackets {
            for (c, k) in terms {
                let cc = c.as_constant().expect("specialized coefficients are constant");
                tab[i][j][*k] = cc.clone();
                tab[j][i][*k] = -cc;
            }
        }
        Ok(tab)
    }

    /// The subspace spanned by all brackets `[u, w]` with `u` a basis
    /// element and `w` ranging over the rows of `sub`.
    pub fn bracket_with_space(&self, sub: &Subspace) -> Result<Subspace, LieError> {
        self.require_specialized()?;
        let n = self.dim();
        let mut out = Subspace::new(n);
        for i in 0..n {
            let mut ei = vec![Rat::zero(); n];
            ei[i] = crate::rat::rat_int(1);
            for w in sub.rows() {
                let v = self.bracket_vectors(&ei, w)?;
                if v.iter().any(|x| !x.is_zero()) {
                    out.insert(v);
                }
            }
        }
        Ok(out)
    }

    /// The lower central series `C^1 = L`, `C^{m+1} = [L, C^m]`, listed
    /// until it reaches zero or stabilizes (the stabilized or zero term is
    /// included once).
    pub fn lower_central_series(&self) -> Result<Vec<Subspace>, LieError> {
        self.require_specialized()?;
        let n = self.dim();
        let full = Subspace::from_rows(n, (0..n).map(|i| {
            let mut v = vec![Rat::zero(); n];
            v[i] = crate::rat::rat_int(1);
            v
        }));
        let mut series = vec![full];
        loop {
            let cur = series.last().unwrap();
            let next = self.bracket_with_space(cur)?;
            let stop = next.dim() == 0 || next.dim() == cur.dim();
            series.push(next);
            if stop {
                break;
            }
        }
        Ok(series)
    }

    /// The derived subalgebra `[L, L]`.
    pub fn derived(&self) -> Result<Subspace, LieError> {
        let n = self.dim();
        let full = Subspace::from_rows(n, (0..n).map(|i| {
            let mut v = vec![Rat::zero(); n];
            v[i] = crate::rat::rat_int(1);
            v
        }));
        self.bracket_with_space(&full)
    }

    /// True when the lower central series reaches zero.
    pub fn is_nilpotent(&self) -> Result<bool, LieError> {
        Ok(self.lower_central_series()?.last().unwrap().dim() == 0)
    }

    /// True when every adjoint map is traceless.
    pub fn is_unimodular(&self) -> Result<bool, LieError> {
        self.require_specialized()?;
        let n = self.dim();
        let tab = self.numeric_table()?;
        for i in 0..n {
            let tr: Rat = (0..n).map(|k| tab[i][k][k].clone()).sum();
            if !tr.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The centralizer `{v : [v, s] = 0 for all s in sub}`.
    pub fn centralizer(&self, sub: &Subspace) -> Result<Subspace, LieError> {
        self.require_specialized()?;
        let n = self.dim();
        let tab = self.numeric_table()?;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        for s in sub.rows() {
            for k in 0..n {
                // coefficient of e_k in [v, s] as a linear form in v.
                let row: Vec<Rat> = (0..n)
                    .map(|i| {
                        (0..n)
                            .map(|j| s[j].clone() * tab[i][j][k].clone())
                            .sum()
                    })
                    .collect();
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        Ok(Subspace::from_rows(n, crate::linalg::kernel_basis(&rows, n)))
    }

    /// True when all pairwise brackets of the rows of `sub` vanish.
    pub fn is_abelian_subspace(&self, sub: &Subspace) -> Result<bool, LieError> {
        let rows = sub.rows();
        for (a, u) in rows.iter().enumerate() {
            for w in rows.iter().skip(a + 1) {
                if self
                    .bracket_vectors(u, w)?
                    .iter()
                    .any(|x| !x.is_zero())
                {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True when the span of `sub` is closed under the bracket.
    pub fn is_subalgebra(&self, sub: &Subspace) -> Result<bool, LieError> {
        let rows = sub.rows();
        for (a, u) in rows.iter().enumerate() {
            for w in rows.iter().skip(a + 1) {
                let v = self.bracket_vectors(u, w)?;
                if !sub.contains(&v) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// The Lie algebra induced on a bracket-closed subspace. Basis vectors
    /// are the reduced rows of `sub`; new basis names are `v1, v2, ...`.
    pub fn induced_subalgebra(&self, sub: &Subspace, name: &str) -> Result<LieAlgebra, LieError> {
        self.require_specialized()?;
        let r = sub.dim();
        let names: Vec<String> = (1..=r).map(|k| format!("v{k}")).collect();
        let mut entries = Vec::new();
        for a in 0..r {
            for b in (a + 1)..r {
                let w = self.bracket_vectors(&sub.rows()[a], &sub.rows()[b])?;
                let coords = sub.express(&w).ok_or_else(|| {
                    LieError::Invalid(format!(
                        "subspace is not closed under the bracket (rows {a}, {b})"
                    ))
                })?;
                let terms: Vec<BracketTerm> = coords
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .map(|(k, c)| BracketTerm {
                        coeff: crate::rat::fmt_rat(c),
                        k: k + 1,
                    })
                    .collect();
                if !terms.is_empty() {
                    entries.push(BracketEntry { i: a + 1, j: b + 1, terms });
                }
            }
        }
        LieAlgebra::new(name, &names, &[], &entries)
    }

    /// The direct sum, with `_b` appended to the second summand's basis and
    /// parameter names whenever they collide with the first's.
    pub fn direct_sum(&self, other: &LieAlgebra) -> Result<LieAlgebra, LieError> {
        let n = self.dim();
        let taken: BTreeSet<&String> = self.basis.iter().chain(self.params.iter()).collect();
        let rename = |s: &String| {
            if taken.contains(s) {
                format!("{s}_b")
            } else {
                s.clone()
            }
        };
        let basis: Vec<String> = self
            .basis
            .iter()
            .cloned()
            .chain(other.basis.iter().map(rename))
            .collect();
        let params: Vec<String> = self
            .params
            .iter()
            .cloned()
            .chain(other.params.iter().map(rename))
            .collect();
        let mut entries: Vec<BracketEntry> = self.to_file().brackets;
        for e in other.to_file().brackets {
            // Re-render coefficients over the renamed parameter table.
            let terms = e
                .terms
                .into_iter()
                .map(|t| BracketTerm {
                    coeff: rename_in_coeff(&t.coeff, &|s| rename(&s.to_string())),
                    k: t.k + n,
                })
                .collect();
            entries.push(BracketEntry { i: e.i + n, j: e.j + n, terms });
        }
        LieAlgebra::new(
            &format!("{}+{}", self.name, other.name),
            &basis,
            &params,
            &entries,
        )
    }

    /// Renders a coordinate vector as a linear polynomial in the basis.
    pub fn vector_poly(&self, v: &[Rat]) -> Poly {
        assert_eq!(v.len(), self.dim(), "vector length disagrees with dimension");
        let mut acc = Poly::zero(&self.vars);
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                acc = acc.add(&Poly::var(&self.vars, i as u32).scale(c));
            }
        }
        acc
    }

    /// Parses a linear expression in the basis names into a coordinate
    /// vector. Constant terms and parameters are rejected.
    pub fn parse_vector(&self, text: &str) -> Result<Vec<Rat>, LieError> {
        let p = Poly::parse(&self.vars, text)?;
        self.poly_to_vector(&p)
    }

    /// Converts a degree-one polynomial in the basis variables into its
    /// coordinate vector.
    pub fn poly_to_vector(&self, p: &Poly) -> Result<Vec<Rat>, LieError> {
        let n = self.dim();
        let mut v = vec![Rat::zero(); n];
        for (m, c) in p.terms() {
            let mut it = m.iter();
            match (it.next(), it.next()) {
                (Some((id, 1)), None) if (id as usize) < n => {
                    v[id as usize] = c.clone();
                }
                _ => {
                    return Err(LieError::Invalid(format!(
                        "`{p}` is not a linear combination of basis elements"
                    )));
                }
            }
        }
        Ok(v)
    }

    /// Renders the rows of a subspace as linear expressions in the basis.
    pub fn subspace_strings(&self, sub: &Subspace) -> Vec<String> {
        sub.rows()
            .iter()
            .map(|r| self.vector_poly(r).to_string())
            .collect()
    }

    /// Builds a subspace from linear expressions in the basis names.
    pub fn subspace_from_strings(&self, exprs: &[String]) -> Result<Subspace, LieError> {
        let mut rows = Vec::with_capacity(exprs.len());
        for e in exprs {
            rows.push(self.parse_vector(e)?);
        }
        Ok(Subspace::from_rows(self.dim(), rows))
    }
}

/// Rewrites variable names inside a coefficient string using the polynomial
/// grammar (names are the only identifier-shaped tokens).
fn rename_in_coeff(coeff: &str, rename: &dyn Fn(&str) -> String) -> String {
    let mut out = String::with_capacity(coeff.len());
    let mut name = String::new();
    for ch in coeff.chars().chain(std::iter::once('\0')) {
        let continues = if name.is_empty() {
            ch.is_ascii_alphabetic()
        } else {
            ch.is_ascii_alphanumeric() || ch == '_'
        };
        if continues && ch != '\0' {
            name.push(ch);
        } else {
            if !name.is_empty() {
                out.push_str(&rename(&name));
                name.clear();
            }
            if ch != '\0' {
                out.push(ch);
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn heis3() -> LieAlgebra {
        let basis: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let entries = vec![BracketEntry {
            i: 1,
            j: 2,
            terms: vec![BracketTerm { coeff: "1".into(), k: 3 }],
        }];
        LieAlgebra::new("heis3", &basis, &[], &entries).unwrap()
    }

    #[test]
    fn construction_validates_indices_and_pairs() {
        let basis: Vec<String> = ["x1", "x2"].iter().map(|s| s.to_string()).collect();
        let bad = vec![BracketEntry {
            i: 1,
            j: 3,
            terms: vec![BracketTerm { coeff: "1".into(), k: 2 }],
        }];
        assert!(matches!(
            LieAlgebra::new("t", &basis, &[], &bad),
            Err(LieError::IndexOutOfRange { index: 3, dim: 2 })
        ));
        let dup = vec![
            BracketEntry { i: 1, j: 2, terms: vec![BracketTerm { coeff: "1".into(), k: 1 }] },
            BracketEntry { i: 2, j: 1, terms: vec![BracketTerm { coeff: "1".into(), k: 2 }] },
        ];
        assert!(matches!(
            LieAlgebra::new("t", &basis, &[], &dup),
            Err(LieError::DuplicatePair { .. })
        ));
    }

    #[test]
    fn reversed_pairs_flip_sign() {
        let basis: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let entries = vec![BracketEntry {
            i: 2,
            j: 1,
            terms: vec![BracketTerm { coeff: "1".into(), k: 3 }],
        }];
        let l = LieAlgebra::new("t", &basis, &[], &entries).unwrap();
        let terms = l.bracket_terms(0, 1);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].0.to_string(), "-1");
        assert_eq!(terms[0].1, 2);
    }

    #[test]
    fn coefficients_may_not_use_basis_names() {
        let basis: Vec<String> = ["x1", "x2"].iter().map(|s| s.to_string()).collect();
        let entries = vec![BracketEntry {
            i: 1,
            j: 2,
            terms: vec![BracketTerm { coeff: "x1".into(), k: 2 }],
        }];
        assert!(matches!(
            LieAlgebra::new("t", &basis, &[], &entries),
            Err(LieError::BadCoefficient { .. })
        ));
    }

    #[test]
    fn bracket_vectors_is_bilinear_and_antisymmetric() {
        let l = heis3();
        let u = vec![rat_int(2), rat_int(0), rat_int(0)];
        let v = vec![rat_int(0), rat_int(3), rat_int(0)];
        assert_eq!(
            l.bracket_vectors(&u, &v).unwrap(),
            vec![rat_int(0), rat_int(0), rat_int(6)]
        );
        assert_eq!(
            l.bracket_vectors(&v, &u).unwrap(),
            vec![rat_int(0), rat_int(0), rat_int(-6)]
        );
        assert!(l
            .bracket_vectors(&u, &u)
            .unwrap()
            .iter()
            .all(|x| x.is_zero()));
    }

    #[test]
    fn center_and_series_of_heisenberg() {
        let l = heis3();
        let z = l.center().unwrap();
        assert_eq!(z.dim(), 1);
        assert_eq!(l.subspace_strings(&z), vec!["x3"]);
        let series = l.lower_central_series().unwrap();
        let dims: Vec<usize> = series.iter().map(Subspace::dim).collect();
        assert_eq!(dims, vec![3, 1, 0]);
        assert!(l.is_nilpotent().unwrap());
        assert!(l.is_unimodular().unwrap());
    }

    #[test]
    fn jacobi_holds_for_heisenberg_and_fails_when_broken() {
        assert!(heis3().jacobi_check().is_satisfied());
        // [x1,x2]=x3, [x1,x3]=x1 breaks Jacobi on (1,2,3).
        let basis: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let entries = vec![
            BracketEntry { i: 1, j: 2, terms: vec![BracketTerm { coeff: "1".into(), k: 3 }] },
            BracketEntry { i: 1, j: 3, terms: vec![BracketTerm { coeff: "1".into(), k: 1 }] },
        ];
        let l = LieAlgebra::new("broken", &basis, &[], &entries).unwrap();
        let rep = l.jacobi_check();
        assert!(!rep.is_satisfied());
        assert_eq!(rep.residuals[0].triple, (1, 2, 3));
    }

    #[test]
    fn specialize_substitutes_parameters() {
        let basis: Vec<String> = ["x1", "x2", "x3"].iter().map(|s| s.to_string()).collect();
        let params: Vec<String> = vec!["lambda".to_string()];
        let entries = vec![BracketEntry {
            i: 1,
            j: 2,
            terms: vec![BracketTerm { coeff: "lambda".into(), k: 3 }],
        }];
        let l = LieAlgebra::new("t", &basis, &params, &entries).unwrap();
        assert!(!l.is_specialized());
        assert!(l.center().is_err());
        let mut a = BTreeMap::new();
        a.insert("lambda".to_string(), rat_int(0));
        let l0 = l.specialize(&a).unwrap();
        assert!(l0.is_specialized());
        assert_eq!(l0.center().unwrap().dim(), 3); // bracket vanished entirely
        let mut b = BTreeMap::new();
        b.insert("mu".to_string(), rat_int(1));
        assert!(matches!(l.specialize(&b), Err(LieError::UnknownParam(_))));
    }

    #[test]
    fn direct_sum_renames_collisions() {
        let a = heis3();
        let b = heis3();
        let s = a.direct_sum(&b).unwrap();
        assert_eq!(s.dim(), 6);
        assert_eq!(
            s.basis_names(),
            &["x1", "x2", "x3", "x1_b", "x2_b", "x3_b"]
        );
        assert!(s.jacobi_check().is_satisfied());
        assert_eq!(s.center().unwrap().dim(), 2);
    }

    #[test]
    fn induced_subalgebra_on_closed_span() {
        let l = heis3();
        // span{x1, x3} is closed ([x1,x3]=0) and abelian.
        let sub = l
            .subspace_from_strings(&["x1".to_string(), "x3".to_string()])
            .unwrap();
        assert!(l.is_subalgebra(&sub).unwrap());
        assert!(l.is_abelian_subspace(&sub).unwrap());
        let ind = l.induced_subalgebra(&sub, "ab2").unwrap();
        assert_eq!(ind.dim(), 2);
        assert!(ind.stored_bracket(0, 1).is_none());
    }

    #[test]
    fn json_round_trip_preserves_structure() {
        let l = heis3();
        let file = l.to_file();
        let text = serde_json::to_string(&file).unwrap();
        let back = LieAlgebra::from_json_str(&text).unwrap();
        assert_eq!(back.dim(), 3);
        assert_eq!(back.bracket_terms(0, 1)[0].1, 2);
        assert_eq!(back.to_file().brackets.len(), 1);
    }

    #[test]
    fn parse_vector_round_trip() {
        let l = heis3();
        let v = l.parse_vector("2*x1 - 1/3*x3").unwrap();
        assert_eq!(v, vec![rat_int(2), rat_int(0), crate::rat::rat(-1, 3)]);
        assert_eq!(l.vector_poly(&v).to_string(), "2*x1 - 1/3*x3");
        assert!(l.parse_vector("x1*x2").is_err());
        assert!(l.parse_vector("x1 + 1").is_err());
    }
}
