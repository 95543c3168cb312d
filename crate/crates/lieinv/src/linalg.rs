//! Exact linear algebra over the rationals.
//!
//! Gauss-Jordan elimination with arbitrary-precision rational entries: row
//! reduction, rank, right kernels, and an incremental row-space basis used
//! when spans are grown one vector at a time (stabilizer sweeps, subspace
//! arithmetic). Everything is deterministic and fraction-exact.

use crate::rat::Rat;
use num::{One, Zero};

/// Reduces `rows` in place to reduced row echelon form; returns the pivot
/// column of each nonzero row, in order. Zero rows sink to the bottom.
pub fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let nrows = rows.len();
    let ncols = rows.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0usize;
    for col in 0..ncols {
        let Some(src) = (r..nrows).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, src);
        let inv = Rat::one() / rows[r][col].clone();
        for x in rows[r].iter_mut() {
            *x *= inv.clone();
        }
        for i in 0..nrows {
            if i != r && !rows[i][col].is_zero() {
                let f = rows[i][col].clone();
                for c in col..ncols {
                    let delta = f.clone() * rows[r][c].clone();
                    rows[i][c] -= delta;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == nrows {
            break;
        }
    }
    rows.truncate(nrows);
    pivots
}

/// The rank of a rational matrix given as rows.
pub fn rank_q(rows: &[Vec<Rat>]) -> usize {
    let mut work = rows.to_vec();
    rref(&mut work).len()
}

/// A basis for the right kernel `{ v : A v = 0 }` of the matrix with the
/// given rows and `ncols` columns. The basis vectors are the standard
/// free-column vectors read off the reduced form, in free-column order.
pub fn kernel_basis(rows: &[Vec<Rat>], ncols: usize) -> Vec<Vec<Rat>> {
    let mut work: Vec<Vec<Rat>> = rows
        .iter()
        .map(|r| {
            assert_eq!(r.len(), ncols, "row length disagrees with ncols");
            r.clone()
        })
        .collect();
    let pivots = rref(&mut work);
    let is_pivot: Vec<bool> = {
        let mut v = vec![false; ncols];
        for &p in &pivots {
            v[p] = true;
        }
        v
    };
    let mut basis = Vec::new();
    for free in 0..ncols {
        if is_pivot[free] {
            continue;
        }
        let mut v = vec![Rat::zero(); ncols];
        v[free] = Rat::one();
        for (row_idx, &p) in pivots.iter().enumerate() {
            v[p] = -work[row_idx][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// An incrementally grown row-space basis kept in reduced row echelon form.
/// Equality is equality of spans: the stored reduced bases are canonical.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowBasis {
    ncols: usize,
    rows: Vec<Vec<Rat>>,
    pivots: Vec<usize>,
}

impl RowBasis {
    /// An empty basis for vectors of length `ncols`.
    pub fn new(ncols: usize) -> Self {
        RowBasis { ncols, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Builds a basis from a set of spanning vectors.
    pub fn from_rows<I: IntoIterator<Item = Vec<Rat>>>(ncols: usize, it: I) -> Self {
        let mut b = RowBasis::new(ncols);
        for v in it {
            b.insert(v);
        }
        b
    }

    /// Dimension of the span.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Vector length.
    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// The stored reduced basis rows, in increasing pivot order.
    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Reduces `v` against the basis, returning the residual (zero iff `v`
    /// lies in the span).
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        assert_eq!(v.len(), self.ncols, "vector length disagrees with basis");
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !w[p].is_zero() {
                let f = w[p].clone();
                for c in 0..self.ncols {
                    let delta = f.clone() * row[c].clone();
                    w[c] -= delta;
                }
            }
        }
        w
    }

    /// True when `v` lies in the span.
    pub fn contains(&self, v: &[Rat]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Coordinates of `v` with respect to the stored reduced rows, or `None`
    /// when `v` is outside the span.
    pub fn express(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        assert_eq!(v.len(), self.ncols, "vector length disagrees with basis");
        let mut w = v.to_vec();
        let mut coords = Vec::with_capacity(self.rows.len());
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let f = w[p].clone();
            if !f.is_zero() {
                for c in 0..self.ncols {
                    let delta = f.clone() * row[c].clone();
                    w[c] -= delta;
                }
            }
            coords.push(f);
        }
        if w.iter().all(Zero::is_zero) {
            Some(coords)
        } else {
            None
        }
    }

    /// Adds `v` to the span; returns true when the dimension grew.
    pub fn insert(&mut self, v: Vec<Rat>) -> bool {
        let mut w = self.reduce(&v);
        let Some(p) = w.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = Rat::one() / w[p].clone();
        for x in w.iter_mut() {
            *x *= inv.clone();
        }
        // Clear column p in the existing rows, then keep rows sorted by pivot.
        for row in self.rows.iter_mut() {
            if !row[p].is_zero() {
                let f = row[p].clone();
                for c in 0..self.ncols {
                    let delta = f.clone() * w[c].clone();
                    row[c] -= delta;
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.rows.insert(at, w);
        self.pivots.insert(at, p);
        true
    }

    /// Intersection with another span over the same coordinate length.
    pub fn intersect(&self, other: &RowBasis) -> RowBasis {
        assert_eq!(self.ncols, other.ncols);
        // Zassenhaus: reduce [u | u] for u in self and [w | 0] for w in other;
        // rows with zero left half have right half spanning the intersection.
        let n = self.ncols;
        let mut stacked: Vec<Vec<Rat>> = Vec::new();
        for u in &self.rows {
            let mut row = u.clone();
            row.extend(u.iter().cloned());
            stacked.push(row);
        }
        for w in &other.rows {
            let mut row = w.clone();
            row.extend(std::iter::repeat(Rat::zero()).take(n));
            stacked.push(row);
        }
        rref(&mut stacked);
        let mut out = RowBasis::new(n);
        for row in stacked {
            if row[..n].iter().all(Zero::is_zero) {
                out.insert(row[n..].to_vec());
            }
        }
        out
    }

    /// Sum of the two spans.
    pub fn sum(&self, other: &RowBasis) -> RowBasis {
        assert_eq!(self.ncols, other.ncols);
        let mut out = self.clone();
        for row in &other.rows {
            out.insert(row.clone());
        }
        out
    }

    /// True when every basis vector of `self` lies in `other`.
    pub fn subset_of(&self, other: &RowBasis) -> bool {
        self.rows.iter().all(|r| other.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rat::rat_int;

    fn m(rows: &[&[i64]]) -> Vec<Vec<Rat>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| rat_int(x)).collect())
            .collect()
    }

    #[test]
    fn rank_and_rref() {
        let a = m(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank_q(&a), 2);
        let mut w = a.clone();
        let piv = rref(&mut w);
        assert_eq!(piv, vec![0, 1]);
        assert_eq!(w[0], m(&[&[1, 0, 1]])[0]);
        assert_eq!(w[1], m(&[&[0, 1, 1]])[0]);
    }

    #[test]
    fn kernel_annihilates() {
        let a = m(&[&[1, 2, 3], &[0, 1, 1]]);
        let k = kernel_basis(&a, 3);
        assert_eq!(k.len(), 1);
        for row in &a {
            let dot: Rat = row
                .iter()
                .zip(&k[0])
                .map(|(x, y)| x.clone() * y.clone())
                .sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn kernel_dimension_complements_rank() {
        let a = m(&[&[2, 0, 0, 4], &[0, 0, 1, 1], &[2, 0, 1, 5]]);
        let r = rank_q(&a);
        let k = kernel_basis(&a, 4).len();
        assert_eq!(r + k, 4);
    }

    #[test]
    fn row_basis_grows_and_expresses() {
        let mut b = RowBasis::new(3);
        assert!(b.insert(m(&[&[1, 1, 0]])[0].clone()));
        assert!(b.insert(m(&[&[0, 1, 1]])[0].clone()));
        assert!(!b.insert(m(&[&[1, 2, 1]])[0].clone())); // dependent
        assert_eq!(b.dim(), 2);
        assert!(b.contains(&m(&[&[2, 3, 1]])[0]));
        assert!(!b.contains(&m(&[&[0, 0, 1]])[0]));
        let coords = b.express(&m(&[&[2, 3, 1]])[0]).unwrap();
        let mut rebuilt = vec![Rat::zero(); 3];
        for (c, row) in coords.iter().zip(b.rows()) {
            for j in 0..3 {
                rebuilt[j] += c.clone() * row[j].clone();
            }
        }
        assert_eq!(rebuilt, m(&[&[2, 3, 1]])[0]);
        assert!(b.express(&m(&[&[0, 0, 1]])[0]).is_none());
    }

    #[test]
    fn intersect_and_sum() {
        let e1 = m(&[&[1, 0, 0]])[0].clone();
        let e2 = m(&[&[0, 1, 0]])[0].clone();
        let e3 = m(&[&[0, 0, 1]])[0].clone();
        let a = RowBasis::from_rows(3, [e1.clone(), e2.clone()]);
        let b = RowBasis::from_rows(3, [e2.clone(), e3.clone()]);
        let cap = a.intersect(&b);
        assert_eq!(cap.dim(), 1);
        assert!(cap.contains(&e2));
        let tot = a.sum(&b);
        assert_eq!(tot.dim(), 3);
        assert!(a.subset_of(&tot));
        assert!(!tot.subset_of(&a));
    }
}
