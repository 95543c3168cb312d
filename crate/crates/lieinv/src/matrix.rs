//! Matrices of polynomials and fraction-free elimination.
//!
//! The structure matrix of a Lie algebra and the Jacobians of polynomial
//! families are matrices over a polynomial ring; their ranks are taken over
//! the fraction field. Bareiss elimination keeps every intermediate entry a
//! polynomial (each division is exact), so ranks and determinants come out
//! symbolically with no fractions and no growth beyond minors of the input.

use crate::gcd::exact_div;
use crate::poly::{Poly, Vars};
use crate::rat::Rat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// A rectangular matrix of polynomials over a shared variable table.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMatrix {
    vars: Vars,
    rows: Vec<Vec<Poly>>,
}

impl PolyMatrix {
    /// Builds a matrix from rows; all rows must have equal length.
    pub fn new(vars: &Vars, rows: Vec<Vec<Poly>>) -> Self {
        let width = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == width), "ragged rows");
        PolyMatrix { vars: vars.clone(), rows }
    }

    /// The all-zero matrix of the given shape.
    pub fn zero(vars: &Vars, nrows: usize, ncols: usize) -> Self {
        let rows = (0..nrows)
            .map(|_| (0..ncols).map(|_| Poly::zero(vars)).collect())
            .collect();
        PolyMatrix { vars: vars.clone(), rows }
    }

    /// Number of rows.
    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    /// Number of columns.
    pub fn ncols(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// The shared variable table.
    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    /// Entry at (`i`, `j`).
    pub fn at(&self, i: usize, j: usize) -> &Poly {
        &self.rows[i][j]
    }

    /// Mutable entry at (`i`, `j`).
    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Poly {
        &mut self.rows[i][j]
    }

    /// The rows as slices.
    pub fn rows(&self) -> &[Vec<Poly>] {
        &self.rows
    }

    /// The submatrix picking the given rows and columns, in the given order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> PolyMatrix {
        let picked = rows
            .iter()
            .map(|&i| cols.iter().map(|&j| self.rows[i][j].clone()).collect())
            .collect();
        PolyMatrix { vars: self.vars.clone(), rows: picked }
    }

    /// True when the matrix is skew-symmetric (zero diagonal included).
    pub fn is_skew_symmetric(&self) -> bool {
        let n = self.nrows();
        if n != self.ncols() {
            return false;
        }
        for i in 0..n {
            if !self.rows[i][i].is_zero() {
                return false;
            }
            for j in (i + 1)..n {
                if self.rows[i][j] != self.rows[j][i].neg() {
                    return false;
                }
            }
        }
        true
    }

    /// Evaluates every entry at a full rational point.
    pub fn eval(&self, point: &[Rat]) -> Vec<Vec<Rat>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.eval(point)).collect())
            .collect()
    }

    /// Symbolic rank over the fraction field of the polynomial ring.
    ///
    /// A fixed-seed random integer evaluation runs first; since evaluation
    /// can only lose rank, a full-rank evaluation settles the answer
    /// immediately. Otherwise Bareiss elimination decides the rank exactly.
    pub fn rank_ff(&self) -> usize {
        let bound = self.nrows().min(self.ncols());
        if bound == 0 {
            return 0;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x00ba_5e11);
        let point: Vec<Rat> = (0..self.vars.len())
            .map(|_| crate::rat::rat_int(rng.gen_range(-1_000_000i64..=1_000_000)))
            .collect();
        let eval_rank = crate::linalg::rank_q(&self.eval(&point));
        if eval_rank == bound {
            return eval_rank;
        }
        self.bareiss(None).0
    }

    /// The determinant of a square matrix, computed fraction-free.
    pub fn det_ff(&self) -> Poly {
        let n = self.nrows();
        assert_eq!(n, self.ncols(), "determinant of a non-square matrix");
        if n == 0 {
            return Poly::one(&self.vars);
        }
        let (rank, det) = self.bareiss(Some(n));
        if rank < n {
            Poly::zero(&self.vars)
        } else {
            det
        }
    }

    /// Bareiss elimination with full pivoting (fewest-terms nonzero pivot).
    /// Returns the rank and, when `want_det` is the full dimension, the
    /// signed final pivot (the determinant).
    fn bareiss(&self, want_det: Option<usize>) -> (usize, Poly) {
        let n = self.nrows();
        let m = self.ncols();
        let mut a = self.rows.clone();
        let mut prev = Poly::one(&self.vars);
        let mut sign = 1i32;
        let mut rank = 0usize;
        while rank < n && rank < m {
            // Fewest-terms nonzero pivot keeps intermediate entries small.
            let mut best: Option<(usize, usize, usize)> = None;
            for i in rank..n {
                for j in rank..m {
                    let t = a[i][j].num_terms();
                    if t == 0 {
                        continue;
                    }
                    if best.map_or(true, |(_, _, bt)| t < bt) {
                        best = Some((i, j, t));
                    }
                }
            }
            let Some((pi, pj, _)) = best else { break };
            if pi != rank {
                a.swap(pi, rank);
                sign = -sign;
            }
            if pj != rank {
                for row in a.iter_mut() {
                    row.swap(pj, rank);
                }
                sign = -sign;
            }
            let piv = a[rank][rank].clone();
            for i in (rank + 1)..n {
                for j in (rank + 1)..m {
                    let num = a[i][j].mul(&piv).sub(&a[i][rank].mul(&a[rank][j]));
                    a[i][j] = exact_div(&num, &prev)
                        .expect("Bareiss condensation divides exactly");
                }
                a[i][rank] = Poly::zero(&self.vars);
            }
            prev = piv;
            rank += 1;
        }
        let det = match want_det {
            Some(full) if rank == full => {
                if sign < 0 {
                    prev.neg()
                } else {
                    prev
                }
            }
            _ => Poly::zero(&self.vars),
        };
        (rank, det)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::VarTable;
    use crate::rat::rat_int;

    fn p(vars: &Vars, s: &str) -> Poly {
        Poly::parse(vars, s).unwrap()
    }

    #[test]
    fn det_matches_cofactor_expansion() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let m = PolyMatrix::new(
            &v,
            vec![
                vec![p(&v, "x"), p(&v, "y")],
                vec![p(&v, "1"), p(&v, "x")],
            ],
        );
        assert_eq!(m.det_ff(), p(&v, "x^2 - y"));
    }

    #[test]
    fn det_of_singular_matrix_is_zero() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let m = PolyMatrix::new(
            &v,
            vec![
                vec![p(&v, "x"), p(&v, "y")],
                vec![p(&v, "2*x"), p(&v, "2*y")],
            ],
        );
        assert!(m.det_ff().is_zero());
        assert_eq!(m.rank_ff(), 1);
    }

    #[test]
    fn rank_sees_through_numeric_cancellation() {
        // Rows dependent over the fraction field even though generic-looking.
        let v = VarTable::new(["x", "y", "z"]).unwrap();
        let m = PolyMatrix::new(
            &v,
            vec![
                vec![p(&v, "x*y"), p(&v, "x*z")],
                vec![p(&v, "y^2"), p(&v, "y*z")],
            ],
        );
        assert_eq!(m.rank_ff(), 1);
    }

    #[test]
    fn rank_of_skew_structure_block() {
        let v = VarTable::new(["a", "b", "c"]).unwrap();
        let z = Poly::zero(&v);
        let m = PolyMatrix::new(
            &v,
            vec![
                vec![z.clone(), p(&v, "c"), p(&v, "-b")],
                vec![p(&v, "-c"), z.clone(), p(&v, "a")],
                vec![p(&v, "b"), p(&v, "-a"), z.clone()],
            ],
        );
        assert!(m.is_skew_symmetric());
        assert_eq!(m.rank_ff(), 2); // odd skew matrices are singular
        assert!(m.det_ff().is_zero());
    }

    #[test]
    fn det_three_by_three_integer() {
        let v = VarTable::new(["t"]).unwrap();
        let e = |n: i64| Poly::constant(&v, rat_int(n));
        let m = PolyMatrix::new(
            &v,
            vec![
                vec![e(2), e(0), e(1)],
                vec![e(1), e(3), e(2)],
                vec![e(1), e(1), e(2)],
            ],
        );
        assert_eq!(m.det_ff(), e(2 * (6 - 2) + (1 - 3)));
        assert_eq!(m.rank_ff(), 3);
    }

    #[test]
    fn submatrix_and_eval() {
        let v = VarTable::new(["x", "y"]).unwrap();
        let m = PolyMatrix::new(
            &v,
            vec![
                vec![p(&v, "x"), p(&v, "y"), p(&v, "x + y")],
                vec![p(&v, "1"), p(&v, "0"), p(&v, "2")],
            ],
        );
        let s = m.submatrix(&[1, 0], &[2, 0]);
        assert_eq!(s.at(0, 0), &p(&v, "2"));
        assert_eq!(s.at(1, 1), &p(&v, "x"));
        let vals = m.eval(&[rat_int(3), rat_int(4)]);
        assert_eq!(vals[0][2], rat_int(7));
    }
}
