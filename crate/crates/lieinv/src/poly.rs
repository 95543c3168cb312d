//! Sparse multivariate polynomials over arbitrary-precision rationals.
//!
//! Polynomials are the element type of the symmetric algebra S(L) of a Lie
//! algebra and of every symbolic computation in this crate: structure
//! matrices, Pfaffians, Poisson brackets, Jacobians. Variables live in a
//! shared [`VarTable`] (coordinates first, then any parameters); terms are
//! kept in a canonical graded-lexicographic order in which earlier-declared
//! variables are more significant.
//!
//! The text form produced by [`Poly::to_string`] and accepted by
//! [`Poly::parse`] is a flat sum of terms: terms joined by `+`/`-`, each term
//! an optional rational coefficient `p/q` followed by `*`-separated variable
//! powers such as `x3^2`. Example: `2*x6*x8 - x7^2`.

use crate::rat::{fmt_rat, is_unit_magnitude, parse_rat, rat_pow, Rat};
use num::{One, Signed, Zero};
use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

/// Errors from polynomial construction, parsing, evaluation, and re-homing.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    /// A name used in a polynomial is not declared in the variable table.
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    /// The same name was declared twice when building a variable table.
    #[error("duplicate variable `{0}`")]
    DuplicateVariable(String),
    /// A variable name is empty or not of the form letter (letter|digit|_)*.
    #[error("invalid variable name `{0}`")]
    InvalidVariableName(String),
    /// The polynomial text does not match the term grammar.
    #[error("syntax error in polynomial near `{0}`")]
    Syntax(String),
    /// Evaluation was asked for with a variable left unassigned.
    #[error("variable `{0}` has no assigned value")]
    Unassigned(String),
    /// A binary operation mixed polynomials over different variable tables.
    #[error("operands use different variable tables")]
    TableMismatch,
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// An ordered table of distinct variable names. Polynomials refer to
/// variables by their index in this table; the declaration order fixes the
/// monomial order (earlier variables are lexicographically more significant).
#[derive(Debug, PartialEq, Eq)]
pub struct VarTable {
    names: Vec<String>,
    by_name: HashMap<String, u32>,
}

/// Shared handle to a [`VarTable`].
pub type Vars = Arc<VarTable>;

impl VarTable {
    /// Builds a table from names in declaration order.
    pub fn new<I, S>(names: I) -> Result<Vars, PolyError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let mut by_name = HashMap::with_capacity(names.len());
        for (k, n) in names.iter().enumerate() {
            if !valid_name(n) {
                return Err(PolyError::InvalidVariableName(n.clone()));
            }
            if by_name.insert(n.clone(), k as u32).is_some() {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(Arc::new(VarTable { names, by_name }))
    }

    /// Number of declared variables.
    pub fn len(&self) -> usize {
        self.names.len()
    }

    /// True when no variables are declared.
    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// The name of variable `id`. Panics when out of range.
    pub fn name(&self, id: u32) -> &str {
        &self.names[id as usize]
    }

    /// The index of `name`, if declared.
    pub fn id(&self, name: &str) -> Option<u32> {
        self.by_name.get(name).copied()
    }

    /// All names in declaration order.
    pub fn names(&self) -> &[String] {
        &self.names
    }
}

/// Two tables are interchangeable when they declare the same names in the
/// same order.
pub fn same_table(a: &Vars, b: &Vars) -> bool {
    Arc::ptr_eq(a, b) || a.names == b.names
}

/// A monomial: a sparse exponent vector, sorted by variable index, with no
/// zero exponents stored. The empty monomial is 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    exps: Vec<(u32, u32)>,
}

impl Monomial {
    /// The monomial 1.
    pub fn one() -> Self {
        Monomial { exps: Vec::new() }
    }

    /// The single power `var^exp` (`exp == 0` gives 1).
    pub fn var(id: u32, exp: u32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial { exps: vec![(id, exp)] }
        }
    }

    /// Builds a monomial from (variable, exponent) pairs in any order,
    /// merging repeats and dropping zero exponents.
    pub fn from_exps<I: IntoIterator<Item = (u32, u32)>>(pairs: I) -> Self {
        let mut acc: BTreeMap<u32, u32> = BTreeMap::new();
        for (v, e) in pairs {
            if e > 0 {
                *acc.entry(v).or_insert(0) += e;
            }
        }
        Monomial { exps: acc.into_iter().collect() }
    }

    /// Total degree: the sum of all exponents.
    pub fn degree(&self) -> u32 {
        self.exps.iter().map(|&(_, e)| e).sum()
    }

    /// True for the monomial 1.
    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// The exponent of variable `id` (0 when absent).
    pub fn exp(&self, id: u32) -> u32 {
        self.exps
            .iter()
            .find(|&&(v, _)| v == id)
            .map(|&(_, e)| e)
            .unwrap_or(0)
    }

    /// Iterates (variable, exponent) pairs in increasing variable order.
    pub fn iter(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.exps.iter().copied()
    }

    /// The product of two monomials.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.exps.len() + other.exps.len());
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() || j < other.exps.len() {
            match (self.exps.get(i), other.exps.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va == vb {
                        out.push((va, ea + eb));
                        i += 1;
                        j += 1;
                    } else if va < vb {
                        out.push((va, ea));
                        i += 1;
                    } else {
                        out.push((vb, eb));
                        j += 1;
                    }
                }
                (Some(&p), None) => {
                    out.push(p);
                    i += 1;
                }
                (None, Some(&p)) => {
                    out.push(p);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial { exps: out }
    }

    /// `self / divisor` when the divisor's exponents are all covered.
    pub fn try_div(&self, divisor: &Monomial) -> Option<Monomial> {
        let mut out = Vec::with_capacity(self.exps.len());
        let mut j = 0;
        for &(v, e) in &self.exps {
            let mut rem = e;
            while j < divisor.exps.len() && divisor.exps[j].0 < v {
                return None; // divisor uses a variable self lacks
            }
            if j < divisor.exps.len() && divisor.exps[j].0 == v {
                let d = divisor.exps[j].1;
                if d > e {
                    return None;
                }
                rem = e - d;
                j += 1;
            }
            if rem > 0 {
                out.push((v, rem));
            }
        }
        if j < divisor.exps.len() {
            return None;
        }
        Some(Monomial { exps: out })
    }

    /// The variable-wise minimum of two monomials.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let mut out = Vec::new();
        let (mut i, mut j) = (0, 0);
        while i < self.exps.len() && j < other.exps.len() {
            let (va, ea) = self.exps[i];
            let (vb, eb) = other.exps[j];
            match va.cmp(&vb) {
                Ordering::Equal => {
                    out.push((va, ea.min(eb)));
                    i += 1;
                    j += 1;
                }
                Ordering::Less => i += 1,
                Ordering::Greater => j += 1,
            }
        }
        Monomial { exps: out }
    }

    /// True when `self` divides `other`.
    pub fn divides(&self, other: &Monomial) -> bool {
        other.try_div(self).is_some()
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: higher total degree first, ties broken by the
    /// first variable (in declaration order) whose exponents differ, larger
    /// exponent winning.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            match (self.exps.get(i), other.exps.get(j)) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some(&(va, ea)), Some(&(vb, eb))) => {
                    if va < vb {
                        return Ordering::Greater;
                    }
                    if vb < va {
                        return Ordering::Less;
                    }
                    if ea != eb {
                        return ea.cmp(&eb);
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// A sparse multivariate polynomial with rational coefficients over a shared
/// variable table. Invariants: no zero coefficients are stored; term order is
/// canonical (graded lexicographic).
#[derive(Debug, Clone)]
pub struct Poly {
    vars: Vars,
    terms: BTreeMap<Monomial, Rat>,
}

impl Poly {
    /// The zero polynomial.
    pub fn zero(vars: &Vars) -> Self {
        Poly { vars: vars.clone(), terms: BTreeMap::new() }
    }

    /// A constant polynomial.
    pub fn constant(vars: &Vars, c: Rat) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(), c);
        }
        Poly { vars: vars.clone(), terms }
    }

    /// The constant 1.
    pub fn one(vars: &Vars) -> Self {
        Poly::constant(vars, Rat::one())
    }

    /// The integer constant `n`.
    pub fn int(vars: &Vars, n: i64) -> Self {
        Poly::constant(vars, crate::rat::rat_int(n))
    }

    /// The variable with index `id`.
    pub fn var(vars: &Vars, id: u32) -> Self {
        assert!((id as usize) < vars.len(), "variable id out of range");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::var(id, 1), Rat::one());
        Poly { vars: vars.clone(), terms }
    }

    /// The variable called `name`.
    pub fn var_named(vars: &Vars, name: &str) -> Result<Self, PolyError> {
        let id = vars
            .id(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Poly::var(vars, id))
    }

    /// Builds a polynomial by accumulating (monomial, coefficient) pairs.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, Rat)>>(vars: &Vars, it: I) -> Self {
        let mut terms: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in it {
            if c.is_zero() {
                continue;
            }
            match terms.entry(m) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + c;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Poly { vars: vars.clone(), terms }
    }

    /// The variable table this polynomial lives over.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// True for the zero polynomial.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of stored terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    /// Total degree, or `None` for the zero polynomial (its degree is the
    /// distinguished "minus infinity").
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// True when the polynomial is a constant (including zero).
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.keys().next().unwrap().is_one())
    }

    /// The constant value, when [`Poly::is_constant`] holds.
    pub fn as_constant(&self) -> Option<Rat> {
        if self.terms.is_empty() {
            return Some(Rat::zero());
        }
        if self.terms.len() == 1 {
            let (m, c) = self.terms.iter().next().unwrap();
            if m.is_one() {
                return Some(c.clone());
            }
        }
        None
    }

    /// The coefficient of the constant monomial (zero when absent).
    pub fn constant_term(&self) -> Rat {
        self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rat::zero)
    }

    /// The leading (graded-lex greatest) term.
    pub fn leading(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Scales so the leading coefficient becomes 1. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, c)) => {
                let inv = Rat::one() / c.clone();
                self.scale(&inv)
            }
        }
    }

    fn assert_compatible(&self, other: &Poly) {
        assert!(
            same_table(&self.vars, &other.vars),
            "polynomial operands use different variable tables"
        );
    }

    /// Sum.
    pub fn add(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            match terms.entry(m.clone()) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + c.clone();
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        Poly { vars: self.vars.clone(), terms }
    }

    /// Difference.
    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    /// Negation.
    pub fn neg(&self) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect(),
        }
    }

    /// Multiplication by a scalar.
    pub fn scale(&self, s: &Rat) -> Poly {
        if s.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.clone() * s.clone())).collect(),
        }
    }

    /// Multiplication by a single term `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rat) -> Poly {
        if c.is_zero() {
            return Poly::zero(&self.vars);
        }
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| (mm.mul(m), cc.clone() * c.clone()))
                .collect(),
        }
    }

    /// Product.
    pub fn mul(&self, other: &Poly) -> Poly {
        self.assert_compatible(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.vars);
        }
        // Accumulate into a map keyed by monomials; iterate the smaller
        // factor on the outside to keep the working set tight.
        let (small, big) = if self.terms.len() <= other.terms.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (ma, ca) in &small.terms {
            for (mb, cb) in &big.terms {
                let m = ma.mul(mb);
                let c = ca.clone() * cb.clone();
                match acc.entry(m) {
                    std::collections::btree_map::Entry::Vacant(e) => {
                        e.insert(c);
                    }
                    std::collections::btree_map::Entry::Occupied(mut e) => {
                        let sum = e.get().clone() + c;
                        if sum.is_zero() {
                            e.remove();
                        } else {
                            *e.get_mut() = sum;
                        }
                    }
                }
            }
        }
        Poly { vars: self.vars.clone(), terms: acc }
    }

    /// `self` raised to a nonnegative power, by repeated squaring.
    pub fn pow(&self, e: u32) -> Poly {
        if e == 0 {
            return Poly::one(&self.vars);
        }
        let mut base = self.clone();
        let mut acc: Option<Poly> = None;
        let mut k = e;
        loop {
            if k & 1 == 1 {
                acc = Some(match acc {
                    None => base.clone(),
                    Some(a) => a.mul(&base),
                });
            }
            k >>= 1;
            if k == 0 {
                break;
            }
            base = base.mul(&base);
        }
        acc.unwrap()
    }

    /// Partial derivative with respect to variable `id`.
    pub fn derivative(&self, id: u32) -> Poly {
        let mut out: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(id);
            if e == 0 {
                continue;
            }
            let dm = m.try_div(&Monomial::var(id, 1)).expect("exponent checked");
            let dc = c.clone() * crate::rat::rat_int(e as i64);
            out.insert(dm, dc);
        }
        Poly { vars: self.vars.clone(), terms: out }
    }

    /// Evaluates at a full assignment: `point[id]` is the value of variable
    /// `id`. Panics unless `point.len()` equals the table length.
    pub fn eval(&self, point: &[Rat]) -> Rat {
        assert_eq!(point.len(), self.vars.len(), "evaluation point has wrong length");
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (id, e) in m.iter() {
                v *= rat_pow(&point[id as usize], e);
            }
            total += v;
        }
        total
    }

    /// Evaluates with a by-name assignment; every variable actually occurring
    /// must be assigned.
    pub fn eval_map(&self, assign: &BTreeMap<String, Rat>) -> Result<Rat, PolyError> {
        let mut total = Rat::zero();
        for (m, c) in &self.terms {
            let mut v = c.clone();
            for (id, e) in m.iter() {
                let name = self.vars.name(id);
                let val = assign
                    .get(name)
                    .ok_or_else(|| PolyError::Unassigned(name.to_string()))?;
                v *= rat_pow(val, e);
            }
            total += v;
        }
        Ok(total)
    }

    /// Substitutes values for a subset of variables (by id), leaving the rest
    /// symbolic.
    pub fn substitute(&self, assign: &BTreeMap<u32, Rat>) -> Poly {
        let mut out = Poly::zero(&self.vars);
        let mut acc: BTreeMap<Monomial, Rat> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut kept: Vec<(u32, u32)> = Vec::new();
            for (id, e) in m.iter() {
                match assign.get(&id) {
                    Some(v) => coeff *= rat_pow(v, e),
                    None => kept.push((id, e)),
                }
            }
            if coeff.is_zero() {
                continue;
            }
            let mono = Monomial { exps: kept };
            match acc.entry(mono) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(coeff);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    let sum = e.get().clone() + coeff;
                    if sum.is_zero() {
                        e.remove();
                    } else {
                        *e.get_mut() = sum;
                    }
                }
            }
        }
        out.terms = acc;
        out
    }

    /// Rewrites this polynomial over another table, matching variables by
    /// name. Every variable actually occurring must exist in the new table.
    pub fn change_table(&self, new: &Vars) -> Result<Poly, PolyError> {
        if same_table(&self.vars, new) {
            return Ok(Poly { vars: new.clone(), terms: self.terms.clone() });
        }
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut exps = Vec::with_capacity(m.exps.len());
            for (id, e) in m.iter() {
                let name = self.vars.name(id);
                let nid = new
                    .id(name)
                    .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
                exps.push((nid, e));
            }
            exps.sort_unstable();
            out.insert(Monomial { exps }, c.clone());
        }
        Ok(Poly { vars: new.clone(), terms: out })
    }

    /// True when variable `id` occurs in some term.
    pub fn uses_var(&self, id: u32) -> bool {
        self.terms.keys().any(|m| m.exp(id) > 0)
    }

    /// The set of variables occurring in some term.
    pub fn occurring_vars(&self) -> BTreeSet<u32> {
        let mut s = BTreeSet::new();
        for m in self.terms.keys() {
            for (id, _) in m.iter() {
                s.insert(id);
            }
        }
        s
    }

    /// The largest variable index occurring, if any.
    pub fn max_var(&self) -> Option<u32> {
        self.occurring_vars().into_iter().next_back()
    }

    /// The degree in a single variable.
    pub fn degree_in(&self, id: u32) -> u32 {
        self.terms.keys().map(|m| m.exp(id)).max().unwrap_or(0)
    }

    /// The variable-wise minimum over all monomials: the largest monomial
    /// dividing every term. Returns 1 for the zero polynomial.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let first = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        it.fold(first, |acc, m| acc.gcd(m))
    }

    /// Divides every term by a monomial. Panics unless the monomial divides
    /// the monomial content.
    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            vars: self.vars.clone(),
            terms: self
                .terms
                .iter()
                .map(|(mm, cc)| {
                    (mm.try_div(m).expect("monomial must divide every term"), cc.clone())
                })
                .collect(),
        }
    }

    /// Collects `self` as a univariate polynomial in variable `id`, returning
    /// the coefficient of each power (coefficients do not involve `id`).
    pub fn coeffs_in(&self, id: u32) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exp(id);
            let rest = m.try_div(&Monomial::var(id, e)).expect("exponent checked");
            let slot = out.entry(e).or_insert_with(|| Poly::zero(&self.vars));
            // in-place accumulate one term
            match slot.terms.entry(rest) {
                std::collections::btree_map::Entry::Vacant(en) => {
                    en.insert(c.clone());
                }
                std::collections::btree_map::Entry::Occupied(mut en) => {
                    let sum = en.get().clone() + c.clone();
                    if sum.is_zero() {
                        en.remove();
                    } else {
                        *en.get_mut() = sum;
                    }
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// Reassembles sum of `coeff * id^power` maps produced by
    /// [`Poly::coeffs_in`].
    pub fn from_coeffs_in(vars: &Vars, id: u32, coeffs: &BTreeMap<u32, Poly>) -> Poly {
        let mut acc = Poly::zero(vars);
        for (e, c) in coeffs {
            acc = acc.add(&c.mul_term(&Monomial::var(id, *e), &Rat::one()));
        }
        acc
    }

    /// Parses the flat-sum term grammar over the given table.
    pub fn parse(vars: &Vars, input: &str) -> Result<Poly, PolyError> {
        let s = input.trim();
        if s.is_empty() {
            return Err(PolyError::Syntax(input.to_string()));
        }
        let mut terms: Vec<(Monomial, Rat)> = Vec::new();
        let mut sign = Rat::one();
        let mut start = 0usize;

        // Split on top-level '+'/'-' (the grammar has no parentheses), then
        // parse each signed term body. Consecutive signs compose.
        let mut bodies: Vec<(Rat, &str)> = Vec::new();
        for (idx, ch) in s.char_indices() {
            if ch == '+' || ch == '-' {
                let body = s[start..idx].trim();
                if body.is_empty() {
                    if ch == '-' {
                        sign = -sign;
                    }
                } else {
                    bodies.push((std::mem::replace(&mut sign, Rat::one()), body));
                    if ch == '-' {
                        sign = -Rat::one();
                    }
                }
                start = idx + ch.len_utf8();
            }
        }
        let tail = s[start..].trim();
        if tail.is_empty() {
            return Err(PolyError::Syntax(input.to_string()));
        }
        bodies.push((sign, tail));

        for (sgn, body) in bodies {
            let (m, c) = parse_term(vars, body)?;
            terms.push((m, c * sgn));
        }
        Ok(Poly::from_terms(vars, terms))
    }
}

fn parse_term(vars: &Vars, body: &str) -> Result<(Monomial, Rat), PolyError> {
    let mut coeff = Rat::one();
    let mut exps: Vec<(u32, u32)> = Vec::new();
    for raw in body.split('*') {
        let f = raw.trim();
        if f.is_empty() {
            return Err(PolyError::Syntax(body.to_string()));
        }
        if f.chars().next().unwrap().is_ascii_digit() {
            let c = parse_rat(f).map_err(|_| PolyError::Syntax(f.to_string()))?;
            coeff *= c;
        } else {
            let (name, exp) = match f.split_once('^') {
                Some((n, e)) => {
                    let e: u32 = e
                        .trim()
                        .parse()
                        .map_err(|_| PolyError::Syntax(f.to_string()))?;
                    (n.trim(), e)
                }
                None => (f, 1),
            };
            if !valid_name(name) {
                return Err(PolyError::Syntax(name.to_string()));
            }
            let id = vars
                .id(name)
                .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
            if exp > 0 {
                exps.push((id, exp));
            }
        }
    }
    Ok((Monomial::from_exps(exps), coeff))
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_table(&self.vars, &other.vars) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl fmt::Display for Poly {
    /// Canonical text form: terms in descending graded-lex order, leading
    /// minus attached, later signs as ` + `/` - `, unit coefficients omitted
    /// before variables.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            if k == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if m.is_one() {
                write!(f, "{}", fmt_rat(&mag))?;
            } else {
                if !is_unit_magnitude(c) {
                    write!(f, "{}*", fmt_rat(&mag))?;
                }
                let mut first = true;
                for (id, e) in m.iter() {
                    if !first {
                        write!(f, "*")?;
                    }
                    first = false;
                    if e == 1 {
                        write!(f, "{}", self.vars.name(id))?;
                    } else {
                        write!(f, "{}^{}", self.vars.name(id), e)?;
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::{rat, rat_int};

    fn xyz() -> Vars {
        VarTable::new(["x", "y", "z"]).unwrap()
    }

    #[test]
    fn table_rejects_duplicates_and_bad_names() {
        assert!(VarTable::new(["x", "x"]).is_err());
        assert!(VarTable::new(["1x"]).is_err());
        assert!(VarTable::new(["x-y"]).is_err());
        assert!(VarTable::new(["a2_10", "lambda"]).is_ok());
    }

    #[test]
    fn difference_of_squares() {
        let v = xyz();
        let x = Poly::var(&v, 0);
        let y = Poly::var(&v, 1);
        let got = x.add(&y).mul(&x.sub(&y));
        let want = x.mul(&x).sub(&y.mul(&y));
        assert_eq!(got, want);
        assert_eq!(got.to_string(), "x^2 - y^2");
    }

    #[test]
    fn eval_direct_substitution() {
        let v = VarTable::new(["x6", "x7", "x8"]).unwrap();
        let p = Poly::parse(&v, "2*x6*x8 - x7^2").unwrap();
        let val = p.eval(&[rat_int(1), rat_int(0), rat_int(3)]);
        assert_eq!(val, rat_int(6));
    }

    #[test]
    fn square_of_quadratic_generator() {
        // (2*x6*x8 - x7^2)^2 = 4*x6^2*x8^2 - 4*x6*x7^2*x8 + x7^4
        let v = VarTable::new(["x6", "x7", "x8"]).unwrap();
        let f1 = Poly::parse(&v, "2*x6*x8 - x7^2").unwrap();
        let sq = f1.mul(&f1);
        let want = Poly::parse(&v, "4*x6^2*x8^2 - 4*x6*x7^2*x8 + x7^4").unwrap();
        assert_eq!(sq, want);
    }

    #[test]
    fn display_orders_terms_graded_lex_descending() {
        let v = xyz();
        let p = Poly::parse(&v, "y + x^2 + 1 + x*y").unwrap();
        assert_eq!(p.to_string(), "x^2 + x*y + y + 1");
        let q = Poly::parse(&v, "-x + 2").unwrap();
        assert_eq!(q.to_string(), "-x + 2");
        let r = Poly::parse(&v, "1/2*x - 2/3").unwrap();
        assert_eq!(r.to_string(), "1/2*x - 2/3");
    }

    #[test]
    fn parse_round_trips_canonical_form() {
        let v = VarTable::new(["x1", "x2", "x3", "lambda"]).unwrap();
        for s in [
            "x1",
            "-x1 + x2",
            "2*x1*x3^2 - 1/3*x2 + 5",
            "lambda*x1 - lambda^2",
            "-12*x1*x3^3 + 24*x2",
        ] {
            let p = Poly::parse(&v, s).unwrap();
            let q = Poly::parse(&v, &p.to_string()).unwrap();
            assert_eq!(p, q, "round trip failed for {s}");
        }
    }

    #[test]
    fn parse_rejects_bad_input() {
        let v = xyz();
        assert!(Poly::parse(&v, "").is_err());
        assert!(Poly::parse(&v, "x +").is_err());
        assert!(Poly::parse(&v, "w").is_err());
        assert!(Poly::parse(&v, "x**2").is_err());
        assert!(Poly::parse(&v, "2x").is_err());
    }

    #[test]
    fn derivative_and_substitute() {
        let v = xyz();
        let p = Poly::parse(&v, "x^3*y + 2*y*z").unwrap();
        assert_eq!(p.derivative(0).to_string(), "3*x^2*y");
        assert_eq!(p.derivative(1).to_string(), "x^3 + 2*z");
        let mut a = BTreeMap::new();
        a.insert(1u32, rat_int(2)); // y = 2
        assert_eq!(p.substitute(&a).to_string(), "2*x^3 + 4*z");
    }

    #[test]
    fn zero_degree_marker() {
        let v = xyz();
        assert_eq!(Poly::zero(&v).degree(), None);
        assert_eq!(Poly::one(&v).degree(), Some(0));
        assert_eq!(Poly::parse(&v, "x*y*z").unwrap().degree(), Some(3));
    }

    #[test]
    fn monomial_order_anchors() {
        // x > y > z at equal degree; degree dominates.
        let x = Monomial::var(0, 1);
        let y = Monomial::var(1, 1);
        let xy = x.mul(&y);
        assert!(x > y);
        assert!(xy > x);
        assert!(Monomial::var(2, 3) > xy);
        // x^2*z vs x*y^2: x-exponent decides
        let a = Monomial::from_exps([(0, 2), (2, 1)]);
        let b = Monomial::from_exps([(0, 1), (1, 2)]);
        assert!(a > b);
    }

    #[test]
    fn change_table_by_name() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let w = VarTable::new(["y", "x", "t"]).unwrap();
        let p = Poly::parse(&v, "x^2 - y").unwrap();
        let q = p.change_table(&w).unwrap();
        assert_eq!(q.to_string(), "x^2 - y");
        assert!(q.uses_var(1)); // x sits at index 1 in the new table
        let bad = VarTable::new(["x"]).unwrap();
        assert!(p.change_table(&bad).is_err());
    }

    #[test]
    fn eval_map_reports_unassigned() {
        let v = xyz();
        let p = Poly::parse(&v, "x + z").unwrap();
        let mut a = BTreeMap::new();
        a.insert("x".to_string(), rat(1, 2));
        assert_eq!(
            p.eval_map(&a),
            Err(PolyError::Unassigned("z".to_string()))
        );
        a.insert("z".to_string(), rat(1, 2));
        assert_eq!(p.eval_map(&a).unwrap(), rat_int(1));
    }
}
