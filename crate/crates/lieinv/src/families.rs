//! Constructors for classical Lie algebra families.
//!
//! Each builder produces a [`LieAlgebra`] with conventional basis names and
//! brackets:
//!
//! - `heisenberg(m)`: H_{2m+1}, basis `b1..b_{2m+1}`, `[b_i, b_{m+i}]` the
//!   central element.
//! - `diamond(m)`: D_{2m+2}, solvable, `[t,x_i]=x_i`, `[t,y_i]=-y_i`,
//!   `[x_i,y_i]=z`.
//! - `standard_filiform(n)`: L_n with only `[x1,x_j]=x_{j+1}`.
//! - `q(n)` (n even) and `r(n)`: filiform chains with an extra pairing
//!   respectively a second chain.
//! - `filiform9` / `filiform10`: the generic filiform algebras of dimension
//!   9 and 10 in adapted coordinates, with free structure parameters (their
//!   Jacobi residuals carve out the true family).
//! - `gl(n)`, `sl(n)`, `strict_upper(n)` (= N_n), `upper(n)` (= T_n),
//!   `borel_sl(n)`: matrix algebras built from explicit matrix generators,
//!   with brackets derived by commutators.
//!
//! Specs can be parsed from compact text like `heisenberg:3` or `q:8` for
//! the command line.

use crate::lie::{BracketEntry, BracketTerm, LieAlgebra, LieError};
use crate::linalg::RowBasis;
use crate::poly::Poly;
use crate::rat::{rat_int, Rat};
use num::Zero;
use std::fmt;

/// Errors from family construction.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FamilyError {
    /// The spec text did not name a known family.
    #[error("unknown family `{0}`")]
    UnknownFamily(String),
    /// A family was given out-of-range or malformed parameters.
    #[error("bad parameters for family `{family}`: {reason}")]
    BadFamilyParams {
        /// The family tag.
        family: String,
        /// Why the parameters were rejected.
        reason: String,
    },
    /// Construction failed downstream.
    #[error(transparent)]
    Lie(#[from] LieError),
}

/// A buildable family instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FamilySpec {
    /// Heisenberg algebra H_{2m+1}.
    Heisenberg {
        /// Number of conjugate pairs; dimension is `2m+1`.
        m: usize,
    },
    /// Diamond algebra D_{2m+2}.
    Diamond {
        /// Number of weight pairs; dimension is `2m+2`.
        m: usize,
    },
    /// Standard filiform algebra L_n.
    StandardFiliform {
        /// Dimension, at least 3.
        n: usize,
    },
    /// Filiform algebra Q_n with the extra alternating pairing into the
    /// center; `n` must be even and at least 6.
    QFiliform {
        /// Dimension.
        n: usize,
    },
    /// Filiform-like algebra R_n carrying a second chain from `x2`.
    RFiliform {
        /// Dimension, at least 5.
        n: usize,
    },
    /// Generic filiform of dimension 9 with free structure parameters.
    Filiform9,
    /// Generic filiform of dimension 10 with free structure parameters.
    Filiform10,
    /// Full matrix algebra gl_n.
    Gl {
        /// Matrix size.
        n: usize,
    },
    /// Traceless matrices sl_n.
    Sl {
        /// Matrix size, at least 2.
        n: usize,
    },
    /// Strictly upper triangular matrices N_n.
    StrictUpper {
        /// Matrix size, at least 2.
        n: usize,
    },
    /// Upper triangular matrices T_n.
    Upper {
        /// Matrix size.
        n: usize,
    },
    /// Upper triangular traceless matrices (the Borel subalgebra of sl_n).
    BorelSl {
        /// Matrix size, at least 2.
        n: usize,
    },
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Heisenberg { m } => write!(f, "heisenberg:{m}"),
            FamilySpec::Diamond { m } => write!(f, "diamond:{m}"),
            FamilySpec::StandardFiliform { n } => write!(f, "standard_filiform:{n}"),
            FamilySpec::QFiliform { n } => write!(f, "q:{n}"),
            FamilySpec::RFiliform { n } => write!(f, "r:{n}"),
            FamilySpec::Filiform9 => write!(f, "filiform9"),
            FamilySpec::Filiform10 => write!(f, "filiform10"),
            FamilySpec::Gl { n } => write!(f, "gl:{n}"),
            FamilySpec::Sl { n } => write!(f, "sl:{n}"),
            FamilySpec::StrictUpper { n } => write!(f, "strict_upper:{n}"),
            FamilySpec::Upper { n } => write!(f, "upper:{n}"),
            FamilySpec::BorelSl { n } => write!(f, "borel_sl:{n}"),
        }
    }
}

impl FamilySpec {
    /// Parses compact spec text: a family tag, optionally followed by `:`
    /// and an integer (`heisenberg:3`, `q:8`, `filiform9`). Short aliases
    /// `l`, `n`, `t` stand for `standard_filiform`, `strict_upper`, `upper`.
    pub fn parse(text: &str) -> Result<FamilySpec, FamilyError> {
        let (tag, arg) = match text.split_once(':') {
            Some((t, a)) => (t.trim(), Some(a.trim())),
            None => (text.trim(), None),
        };
        let tag_lower = tag.to_ascii_lowercase();
        let need = |what: &str| -> Result<usize, FamilyError> {
            arg.ok_or_else(|| FamilyError::BadFamilyParams {
                family: tag_lower.clone(),
                reason: format!("expected `{tag_lower}:{what}`"),
            })
            .and_then(|a| {
                a.parse::<usize>().map_err(|_| FamilyError::BadFamilyParams {
                    family: tag_lower.clone(),
                    reason: format!("`{a}` is not a nonnegative integer"),
                })
            })
        };
        let none_expected = || -> Result<(), FamilyError> {
            if arg.is_some() {
                Err(FamilyError::BadFamilyParams {
                    family: tag_lower.clone(),
                    reason: "this family takes no size argument".into(),
                })
            } else {
                Ok(())
            }
        };
        let spec = match tag_lower.as_str() {
            "heisenberg" | "h" => FamilySpec::Heisenberg { m: need("m")? },
            "diamond" | "d" => FamilySpec::Diamond { m: need("m")? },
            "standard_filiform" | "l" => FamilySpec::StandardFiliform { n: need("n")? },
            "q" => FamilySpec::QFiliform { n: need("n")? },
            "r" => FamilySpec::RFiliform { n: need("n")? },
            "filiform9" => {
                none_expected()?;
                FamilySpec::Filiform9
            }
            "filiform10" => {
                none_expected()?;
                FamilySpec::Filiform10
            }
            "gl" => FamilySpec::Gl { n: need("n")? },
            "sl" => FamilySpec::Sl { n: need("n")? },
            "strict_upper" | "n" => FamilySpec::StrictUpper { n: need("n")? },
            "upper" | "t" => FamilySpec::Upper { n: need("n")? },
            "borel_sl" => FamilySpec::BorelSl { n: need("n")? },
            _ => return Err(FamilyError::UnknownFamily(tag.to_string())),
        };
        Ok(spec)
    }

    /// Builds the algebra.
    pub fn build(&self) -> Result<LieAlgebra, FamilyError> {
        match *self {
            FamilySpec::Heisenberg { m } => heisenberg(m),
            FamilySpec::Diamond { m } => diamond(m),
            FamilySpec::StandardFiliform { n } => standard_filiform(n),
            FamilySpec::QFiliform { n } => q_filiform(n),
            FamilySpec::RFiliform { n } => r_filiform(n),
            FamilySpec::Filiform9 => filiform9(),
            FamilySpec::Filiform10 => filiform10(),
            FamilySpec::Gl { n } => gl(n),
            FamilySpec::Sl { n } => sl(n),
            FamilySpec::StrictUpper { n } => strict_upper(n),
            FamilySpec::Upper { n } => upper(n),
            FamilySpec::BorelSl { n } => borel_sl(n),
        }
    }
}

fn bad(family: &str, reason: impl Into<String>) -> FamilyError {
    FamilyError::BadFamilyParams { family: family.to_string(), reason: reason.into() }
}

fn names(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|k| format!("{prefix}{k}")).collect()
}

fn entry(i: usize, j: usize, terms: &[(&str, usize)]) -> BracketEntry {
    BracketEntry {
        i,
        j,
        terms: terms
            .iter()
            .map(|&(c, k)| BracketTerm { coeff: c.to_string(), k })
            .collect(),
    }
}

/// The Heisenberg algebra H_{2m+1}: `[b_i, b_{m+i}] = b_{2m+1}` for
/// `i = 1..m`.
pub fn heisenberg(m: usize) -> Result<LieAlgebra, FamilyError> {
    if m == 0 {
        return Err(bad("heisenberg", "m must be at least 1"));
    }
    let n = 2 * m + 1;
    let basis = names("b", n);
    let entries: Vec<BracketEntry> =
        (1..=m).map(|i| entry(i, m + i, &[("1", n)])).collect();
    Ok(LieAlgebra::new(&format!("H{n}"), &basis, &[], &entries)?)
}

/// The diamond algebra D_{2m+2}: basis `t = b1`, `x_i = b_{1+i}`,
/// `y_i = b_{1+m+i}`, `z = b_{2m+2}`, with `[t,x_i]=x_i`, `[t,y_i]=-y_i`,
/// `[x_i,y_i]=z`.
pub fn diamond(m: usize) -> Result<LieAlgebra, FamilyError> {
    if m == 0 {
        return Err(bad("diamond", "m must be at least 1"));
    }
    let n = 2 * m + 2;
    let basis = names("b", n);
    let mut entries = Vec::new();
    for i in 1..=m {
        entries.push(entry(1, 1 + i, &[("1", 1 + i)]));
        entries.push(entry(1, 1 + m + i, &[("-1", 1 + m + i)]));
        entries.push(entry(1 + i, 1 + m + i, &[("1", n)]));
    }
    Ok(LieAlgebra::new(&format!("D{n}"), &basis, &[], &entries)?)
}

/// The standard filiform algebra L_n: `[x1, x_j] = x_{j+1}` for
/// `j = 2..n-1` and nothing else.
pub fn standard_filiform(n: usize) -> Result<LieAlgebra, FamilyError> {
    if n < 3 {
        return Err(bad("standard_filiform", "n must be at least 3"));
    }
    let basis = names("x", n);
    let entries: Vec<BracketEntry> =
        (2..n).map(|j| entry(1, j, &[("1", j + 1)])).collect();
    Ok(LieAlgebra::new(&format!("L{n}"), &basis, &[], &entries)?)
}

/// The filiform algebra Q_n (n even, n >= 6): the L_n chain truncated at
/// `x_{n-1}` plus the alternating pairing `[x_j, x_{n-j+1}] =
/// (-1)^{j+1} x_n` for `j = 2..n/2`.
pub fn q_filiform(n: usize) -> Result<LieAlgebra, FamilyError> {
    if n < 6 || n % 2 != 0 {
        return Err(bad("q", "n must be even and at least 6"));
    }
    let q = n / 2;
    let basis = names("x", n);
    let mut entries: Vec<BracketEntry> =
        (2..n - 1).map(|j| entry(1, j, &[("1", j + 1)])).collect();
    for j in 2..=q {
        let coeff = if (j + 1) % 2 == 0 { "1" } else { "-1" };
        entries.push(entry(j, n - j + 1, &[(coeff, n)]));
    }
    Ok(LieAlgebra::new(&format!("Q{n}"), &basis, &[], &entries)?)
}

/// The algebra R_n (n >= 5): the L_n chain plus a second chain
/// `[x2, x_j] = x_{j+2}` for `j = 3..n-2`.
pub fn r_filiform(n: usize) -> Result<LieAlgebra, FamilyError> {
    if n < 5 {
        return Err(bad("r", "n must be at least 5"));
    }
    let basis = names("x", n);
    let mut entries: Vec<BracketEntry> =
        (2..n).map(|j| entry(1, j, &[("1", j + 1)])).collect();
    for j in 3..n - 1 {
        entries.push(entry(2, j, &[("1", j + 2)]));
    }
    Ok(LieAlgebra::new(&format!("R{n}"), &basis, &[], &entries)?)
}

/// The generic filiform algebra of dimension 9 in adapted coordinates,
/// with free parameters `a25..a49`. Jacobi holds only on the subvariety cut
/// out by its residual polynomial.
pub fn filiform9() -> Result<LieAlgebra, FamilyError> {
    let basis = names("x", 9);
    let params: Vec<String> = ["a25", "a26", "a27", "a28", "a29", "a37", "a38", "a39", "a49"]
        .map(String::from)
        .to_vec();
    let mut entries: Vec<BracketEntry> =
        (2..9).map(|j| entry(1, j, &[("1", j + 1)])).collect();
    entries.push(entry(2, 3, &[("a25", 5), ("a26", 6), ("a27", 7), ("a28", 8), ("a29", 9)]));
    entries.push(entry(2, 4, &[("a25", 6), ("a26", 7), ("a27", 8), ("a28", 9)]));
    entries.push(entry(2, 5, &[("a25 - a37", 7), ("a26 - a38", 8), ("a27 - a39", 9)]));
    entries.push(entry(2, 6, &[("a25 - 2*a37", 8), ("a26 - 2*a38", 9)]));
    entries.push(entry(2, 7, &[("a25 - 3*a37 + a49", 9)]));
    entries.push(entry(3, 4, &[("a37", 7), ("a38", 8), ("a39", 9)]));
    entries.push(entry(3, 5, &[("a37", 8), ("a38", 9)]));
    entries.push(entry(3, 6, &[("a37 - a49", 9)]));
    entries.push(entry(4, 5, &[("a49", 9)]));
    Ok(LieAlgebra::new("filiform9", &basis, &params, &entries)?)
}

/// The generic filiform algebra of dimension 10 in adapted coordinates,
/// with free parameters `a25..a49`, `lambda`, `mu`.
pub fn filiform10() -> Result<LieAlgebra, FamilyError> {
    let basis = names("x", 10);
    let params: Vec<String> = [
        "a25", "a26", "a27", "a28", "a29", "a2_10", "a37", "a38", "a39", "a3_10", "a49",
        "lambda", "mu",
    ]
    .map(String::from)
    .to_vec();
    let mut entries: Vec<BracketEntry> =
        (2..10).map(|j| entry(1, j, &[("1", j + 1)])).collect();
    entries.push(entry(
        2,
        3,
        &[("a25", 5), ("a26", 6), ("a27", 7), ("a28", 8), ("a29", 9), ("a2_10", 10)],
    ));
    entries.push(entry(
        2,
        4,
        &[("a25", 6), ("a26", 7), ("a27", 8), ("a28", 9), ("a29", 10)],
    ));
    entries.push(entry(
        2,
        5,
        &[("a25 - a37", 7), ("a26 - a38", 8), ("a27 - a39", 9), ("a28 - a3_10", 10)],
    ));
    entries.push(entry(
        2,
        6,
        &[("a25 - 2*a37", 8), ("a26 - 2*a38", 9), ("a27 - 2*a39", 10)],
    ));
    entries.push(entry(2, 7, &[("a25 - 3*a37 + a49", 9), ("a26 - 3*a38 + mu", 10)]));
    entries.push(entry(2, 8, &[("a25 - 4*a37 + 3*a49", 10)]));
    entries.push(entry(2, 9, &[("-lambda", 10)]));
    entries.push(entry(3, 4, &[("a37", 7), ("a38", 8), ("a39", 9), ("a3_10", 10)]));
    entries.push(entry(3, 5, &[("a37", 8), ("a38", 9), ("a39", 10)]));
    entries.push(entry(3, 6, &[("a37 - a49", 9), ("a38 - mu", 10)]));
    entries.push(entry(3, 7, &[("a37 - 2*a49", 10)]));
    entries.push(entry(3, 8, &[("lambda", 10)]));
    entries.push(entry(4, 5, &[("a49", 9), ("mu", 10)]));
    entries.push(entry(4, 6, &[("a49", 10)]));
    entries.push(entry(4, 7, &[("-lambda", 10)]));
    entries.push(entry(5, 6, &[("lambda", 10)]));
    Ok(LieAlgebra::new("filiform10", &basis, &params, &entries)?)
}

/// Builds a Lie algebra from a spanning list of named matrices, deriving
/// brackets from commutators; the span must be closed under commutators and
/// the matrices linearly independent.
pub fn from_matrix_span(
    name: &str,
    gens: &[(String, Vec<Vec<Rat>>)],
) -> Result<LieAlgebra, FamilyError> {
    let d = gens.len();
    let size = gens.first().map_or(0, |(_, m)| m.len());
    for (nm, m) in gens {
        if m.len() != size || m.iter().any(|row| row.len() != size) {
            return Err(bad(name, format!("generator `{nm}` is not {size}x{size}")));
        }
    }
    let flat = |m: &Vec<Vec<Rat>>| -> Vec<Rat> { m.iter().flatten().cloned().collect() };
    let mut span = RowBasis::new(size * size);
    for (nm, m) in gens {
        if !span.insert(flat(m)) {
            return Err(bad(name, format!("generator `{nm}` is linearly dependent")));
        }
    }
    // Coordinates of an arbitrary matrix with respect to the generators:
    // solve with the reduced basis, then convert back through the change of
    // basis implied by insertion order. Simpler: re-express each commutator
    // directly against the generator matrix stack.
    let gen_rows: Vec<Vec<Rat>> = gens.iter().map(|(_, m)| flat(m)).collect();
    let express = |target: &[Rat]| -> Option<Vec<Rat>> {
        // Solve sum_k c_k gen_k = target by Gaussian elimination on the
        // transposed system.
        let mut rows: Vec<Vec<Rat>> = (0..size * size)
            .map(|pos| {
                let mut row: Vec<Rat> = gen_rows.iter().map(|g| g[pos].clone()).collect();
                row.push(target[pos].clone());
                row
            })
            .collect();
        let piv = crate::linalg::rref(&mut rows);
        if piv.contains(&d) {
            return None; // inconsistent: target outside the span
        }
        let mut coords = vec![Rat::zero(); d];
        for (r, &p) in piv.iter().enumerate() {
            coords[p] = rows[r][d].clone();
        }
        Some(coords)
    };
    let mul = |a: &Vec<Vec<Rat>>, b: &Vec<Vec<Rat>>| -> Vec<Vec<Rat>> {
        let mut out = vec![vec![Rat::zero(); size]; size];
        for i in 0..size {
            for k in 0..size {
                if a[i][k].is_zero() {
                    continue;
                }
                for j in 0..size {
                    if !b[k][j].is_zero() {
                        out[i][j] += a[i][k].clone() * b[k][j].clone();
                    }
                }
            }
        }
        out
    };
    let mut entries = Vec::new();
    for a in 0..d {
        for b in (a + 1)..d {
            let ab = mul(&gens[a].1, &gens[b].1);
            let ba = mul(&gens[b].1, &gens[a].1);
            let comm: Vec<Rat> = flat(&ab)
                .into_iter()
                .zip(flat(&ba))
                .map(|(x, y)| x - y)
                .collect();
            if comm.iter().all(Zero::is_zero) {
                continue;
            }
            let coords = express(&comm).ok_or_else(|| {
                bad(
                    name,
                    format!(
                        "span is not closed: [{}, {}] falls outside",
                        gens[a].0, gens[b].0
                    ),
                )
            })?;
            let terms: Vec<BracketTerm> = coords
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(k, c)| BracketTerm { coeff: crate::rat::fmt_rat(c), k: k + 1 })
                .collect();
            entries.push(BracketEntry { i: a + 1, j: b + 1, terms });
        }
    }
    let basis: Vec<String> = gens.iter().map(|(nm, _)| nm.clone()).collect();
    Ok(LieAlgebra::new(name, &basis, &[], &entries)?)
}

fn unit_matrix(size: usize, a: usize, b: usize) -> Vec<Vec<Rat>> {
    let mut m = vec![vec![Rat::zero(); size]; size];
    m[a - 1][b - 1] = rat_int(1);
    m
}

/// Matrix-unit name `u{a}_{b}` for the unit with 1 in row `a`, column `b`.
pub fn unit_name(a: usize, b: usize) -> String {
    format!("u{a}_{b}")
}

/// The full matrix algebra gl_n on matrix units, ordered row-major.
pub fn gl(n: usize) -> Result<LieAlgebra, FamilyError> {
    if n == 0 {
        return Err(bad("gl", "n must be at least 1"));
    }
    let mut gens = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            gens.push((unit_name(a, b), unit_matrix(n, a, b)));
        }
    }
    from_matrix_span(&format!("gl{n}"), &gens)
}

/// Traceless matrices sl_n on off-diagonal units plus the diagonal
/// differences `h{i}` with matrix `E_ii - E_{i+1,i+1}`.
pub fn sl(n: usize) -> Result<LieAlgebra, FamilyError> {
    if n < 2 {
        return Err(bad("sl", "n must be at least 2"));
    }
    let mut gens = Vec::new();
    for a in 1..=n {
        for b in 1..=n {
            if a != b {
                gens.push((unit_name(a, b), unit_matrix(n, a, b)));
            }
        }
    }
    for i in 1..n {
        let mut m = unit_matrix(n, i, i);
        m[i][i] = rat_int(-1);
        gens.push((format!("h{i}"), m));
    }
    from_matrix_span(&format!("sl{n}"), &gens)
}

/// Strictly upper triangular matrices N_n, matrix units ordered row-major.
pub fn strict_upper(n: usize) -> Result<LieAlgebra, FamilyError> {
    if n < 2 {
        return Err(bad("strict_upper", "n must be at least 2"));
    }
    let mut gens = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            gens.push((unit_name(a, b), unit_matrix(n, a, b)));
        }
    }
    from_matrix_span(&format!("N{n}"), &gens)
}

/// Upper triangular matrices T_n, matrix units ordered row-major including
/// the diagonal.
pub fn upper(n: usize) -> Result<LieAlgebra, FamilyError> {
    if n == 0 {
        return Err(bad("upper", "n must be at least 1"));
    }
    let mut gens = Vec::new();
    for a in 1..=n {
        for b in a..=n {
            gens.push((unit_name(a, b), unit_matrix(n, a, b)));
        }
    }
    from_matrix_span(&format!("T{n}"), &gens)
}

/// Upper triangular traceless matrices: strictly upper units plus the
/// diagonal differences `h{i}`.
pub fn borel_sl(n: usize) -> Result<LieAlgebra, FamilyError> {
    if n < 2 {
        return Err(bad("borel_sl", "n must be at least 2"));
    }
    let mut gens = Vec::new();
    for a in 1..=n {
        for b in (a + 1)..=n {
            gens.push((unit_name(a, b), unit_matrix(n, a, b)));
        }
    }
    for i in 1..n {
        let mut m = unit_matrix(n, i, i);
        m[i][i] = rat_int(-1);
        gens.push((format!("h{i}"), m));
    }
    from_matrix_span(&format!("borel_sl{n}"), &gens)
}

/// Basis names of the abelian block `{u{a}_{b} : a <= q < b}` of matrix
/// units, q = n/2 rounded down — the canonical maximal abelian subspace of
/// N_n (and, together with the identity, of T_n).
pub fn block_abelian_names(n: usize) -> Vec<String> {
    let q = n / 2;
    let mut out = Vec::new();
    for a in 1..=q {
        for b in (q + 1)..=n {
            out.push(unit_name(a, b));
        }
    }
    out
}

/// The identity matrix of T_n as a linear expression in its basis names.
pub fn upper_identity_expr(n: usize) -> String {
    (1..=n)
        .map(|a| unit_name(a, a))
        .collect::<Vec<_>>()
        .join(" + ")
}

/// The quadratic Poisson-central generator of Q_n:
/// `2 x1 xn + (-1)^{q+1} x_{q+1}^2 + 2 sum_{t=3..q} (-1)^t x_t x_{n-t+2}`.
pub fn q_central_generator(l: &LieAlgebra) -> Poly {
    let n = l.dim();
    let q = n / 2;
    let vars = l.vars();
    let x = |k: usize| Poly::var(vars, (k - 1) as u32);
    let sgn = |e: usize| if e % 2 == 0 { rat_int(1) } else { rat_int(-1) };
    let mut f = x(1).mul(&x(n)).scale(&rat_int(2));
    f = f.add(&x(q + 1).mul(&x(q + 1)).scale(&sgn(q + 1)));
    for t in 3..=q {
        f = f.add(&x(t).mul(&x(n - t + 2)).scale(&(sgn(t) * rat_int(2))));
    }
    f
}

/// The complete Poisson-commutative generating set of Q_n:
/// `x_{q+1}, ..., x_n` together with [`q_central_generator`].
pub fn q_complete_gens(l: &LieAlgebra) -> Vec<Poly> {
    let n = l.dim();
    let q = n / 2;
    let vars = l.vars();
    let mut gens: Vec<Poly> = ((q + 1)..=n)
        .map(|k| Poly::var(vars, (k - 1) as u32))
        .collect();
    gens.push(q_central_generator(l));
    gens
}

/// The quadratic Poisson-central generator of the diamond algebra:
/// `t z + sum_i x_i y_i` in its basis `t, x_1.., y_1.., z`.
pub fn diamond_central_gen(l: &LieAlgebra) -> Poly {
    let n = l.dim();
    let m = (n - 2) / 2;
    let vars = l.vars();
    let b = |k: usize| Poly::var(vars, (k - 1) as u32);
    let mut f = b(1).mul(&b(n));
    for i in 1..=m {
        f = f.add(&b(1 + i).mul(&b(1 + m + i)));
    }
    f
}

/// The complete Poisson-commutative generating set of the diamond algebra:
/// `y_1..y_m, z` and [`diamond_central_gen`].
pub fn diamond_complete_gens(l: &LieAlgebra) -> Vec<Poly> {
    let n = l.dim();
    let m = (n - 2) / 2;
    let vars = l.vars();
    let mut gens: Vec<Poly> = (1..=m)
        .map(|i| Poly::var(vars, (m + i) as u32))
        .collect();
    gens.push(Poly::var(vars, (n - 1) as u32));
    gens.push(diamond_central_gen(l));
    gens
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_text_round_trip() {
        for s in [
            "heisenberg:2",
            "diamond:3",
            "standard_filiform:6",
            "q:8",
            "r:6",
            "filiform9",
            "filiform10",
            "gl:3",
            "sl:3",
            "strict_upper:4",
            "upper:4",
            "borel_sl:3",
        ] {
            let spec = FamilySpec::parse(s).unwrap();
            assert_eq!(spec.to_string(), s);
            spec.build().unwrap();
        }
        assert_eq!(
            FamilySpec::parse("L:5").unwrap(),
            FamilySpec::StandardFiliform { n: 5 }
        );
        assert!(FamilySpec::parse("w:3").is_err());
        assert!(FamilySpec::parse("q:7").unwrap().build().is_err());
        assert!(FamilySpec::parse("filiform9:2").is_err());
    }

    #[test]
    fn family_dimensions() {
        assert_eq!(heisenberg(2).unwrap().dim(), 5);
        assert_eq!(diamond(2).unwrap().dim(), 6);
        assert_eq!(standard_filiform(7).unwrap().dim(), 7);
        assert_eq!(q_filiform(8).unwrap().dim(), 8);
        assert_eq!(r_filiform(6).unwrap().dim(), 6);
        assert_eq!(filiform9().unwrap().dim(), 9);
        assert_eq!(filiform10().unwrap().dim(), 10);
        assert_eq!(gl(3).unwrap().dim(), 9);
        assert_eq!(sl(3).unwrap().dim(), 8);
        assert_eq!(strict_upper(4).unwrap().dim(), 6);
        assert_eq!(upper(4).unwrap().dim(), 10);
        assert_eq!(borel_sl(3).unwrap().dim(), 5);
    }

    #[test]
    fn specialized_families_satisfy_jacobi() {
        for alg in [
            heisenberg(3).unwrap(),
            diamond(2).unwrap(),
            standard_filiform(6).unwrap(),
            q_filiform(8).unwrap(),
            r_filiform(7).unwrap(),
            gl(3).unwrap(),
            sl(3).unwrap(),
            strict_upper(5).unwrap(),
            upper(4).unwrap(),
            borel_sl(3).unwrap(),
        ] {
            assert!(
                alg.jacobi_check().is_satisfied(),
                "{} violates the Jacobi identity",
                alg.name()
            );
        }
    }

    #[test]
    fn matrix_unit_bracket_matches_delta_rule() {
        // [u12, u23] = u13 in gl(3); [u12, u21] = u11 - u22.
        let l = gl(3).unwrap();
        let i12 = l.vars().id("u1_2").unwrap() as usize;
        let i23 = l.vars().id("u2_3").unwrap() as usize;
        let i13 = l.vars().id("u1_3").unwrap() as usize;
        let terms = l.bracket_terms(i12, i23);
        assert_eq!(terms.len(), 1);
        assert_eq!(terms[0].1, i13);
        assert_eq!(terms[0].0.to_string(), "1");
        let i21 = l.vars().id("u2_1").unwrap() as usize;
        let v = l
            .bracket_vectors(
                &unit_vec(l.dim(), i12),
                &unit_vec(l.dim(), i21),
            )
            .unwrap();
        let s = l.vector_poly(&v).to_string();
        assert_eq!(s, "u1_1 - u2_2");
    }

    fn unit_vec(n: usize, k: usize) -> Vec<Rat> {
        let mut v = vec![Rat::zero(); n];
        v[k] = rat_int(1);
        v
    }

    #[test]
    fn filiform_families_are_filiform_at_zero_parameters() {
        use std::collections::BTreeMap;
        let l9 = filiform9().unwrap();
        let zeros: BTreeMap<String, Rat> = l9
            .params()
            .iter()
            .map(|p| (p.clone(), Rat::zero()))
            .collect();
        let at0 = l9.specialize(&zeros).unwrap();
        assert!(at0.jacobi_check().is_satisfied());
        let dims: Vec<usize> = at0
            .lower_central_series()
            .unwrap()
            .iter()
            .map(|s| s.dim())
            .collect();
        assert_eq!(dims, vec![9, 7, 6, 5, 4, 3, 2, 1, 0]);
    }

    #[test]
    fn block_names_and_identity() {
        assert_eq!(block_abelian_names(4), vec!["u1_3", "u1_4", "u2_3", "u2_4"]);
        assert_eq!(upper_identity_expr(2), "u1_1 + u2_2");
    }
}
