//! Pfaffians of skew-symmetric polynomial matrices.
//!
//! The Pfaffian is the canonical square root of the determinant of a
//! skew-symmetric matrix: `Pf(A)^2 = det(A)`. Pfaffians of principal
//! submatrices of a Lie algebra's structure matrix are the raw material for
//! the fundamental semi-invariant. Computation is by Laplace-style expansion
//! along the lowest index, memoized on the subset bitmask, which is fast for
//! the moderate dimensions that occur here (at most 64).

use crate::matrix::PolyMatrix;
use crate::poly::Poly;
use std::collections::HashMap;

/// The Pfaffian of the principal submatrix of `m` on `subset` (row and
/// column indices, in any order; they are sorted internally).
///
/// An odd subset gives zero; the empty subset gives 1. The matrix must be
/// skew-symmetric and have at most 64 rows.
pub fn pfaffian_principal(m: &PolyMatrix, subset: &[usize]) -> Poly {
    assert!(m.nrows() <= 64, "bitmask memoization caps the size at 64");
    debug_assert!(m.is_skew_symmetric(), "Pfaffian of a non-skew matrix");
    let mut idx: Vec<usize> = subset.to_vec();
    idx.sort_unstable();
    idx.dedup();
    assert_eq!(idx.len(), subset.len(), "repeated index in subset");
    let mask = idx.iter().fold(0u64, |acc, &i| acc | (1u64 << i));
    let mut memo: HashMap<u64, Poly> = HashMap::new();
    pf_rec(m, mask, &mut memo)
}

/// The Pfaffian of the whole matrix.
pub fn pfaffian(m: &PolyMatrix) -> Poly {
    let all: Vec<usize> = (0..m.nrows()).collect();
    pfaffian_principal(m, &all)
}

fn pf_rec(m: &PolyMatrix, mask: u64, memo: &mut HashMap<u64, Poly>) -> Poly {
    if mask.count_ones() % 2 == 1 {
        return Poly::zero(m.vars());
    }
    if mask == 0 {
        return Poly::one(m.vars());
    }
    if let Some(p) = memo.get(&mask) {
        return p.clone();
    }
    let first = mask.trailing_zeros() as usize;
    let rest_after_first = mask & !(1u64 << first);
    let mut acc = Poly::zero(m.vars());
    // Expand along the lowest index: for the k-th element s_k of the sorted
    // subset (1-based, k >= 2), the cofactor sign is (-1)^k.
    let mut k = 1u32;
    let mut scan = rest_after_first;
    while scan != 0 {
        let j = scan.trailing_zeros() as usize;
        scan &= scan - 1;
        k += 1;
        let entry = m.at(first, j);
        if !entry.is_zero() {
            let sub = pf_rec(m, rest_after_first & !(1u64 << j), memo);
            let term = entry.mul(&sub);
            acc = if k % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
    }
    memo.insert(mask, acc.clone());
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{Poly, VarTable, Vars};

    fn p(vars: &Vars, s: &str) -> Poly {
        Poly::parse(vars, s).unwrap()
    }

    fn skew2(vars: &Vars, a: &str) -> PolyMatrix {
        let z = Poly::zero(vars);
        let a = p(vars, a);
        PolyMatrix::new(vars, vec![vec![z.clone(), a.clone()], vec![a.neg(), z]])
    }

    #[test]
    fn two_by_two_is_the_off_diagonal_entry() {
        let v = VarTable::new(["a"]).unwrap();
        let m = skew2(&v, "a");
        assert_eq!(pfaffian(&m), p(&v, "a"));
    }

    #[test]
    fn odd_sets_vanish_and_empty_set_is_one() {
        let v = VarTable::new(["a"]).unwrap();
        let m = skew2(&v, "a");
        assert!(pfaffian_principal(&m, &[0]).is_zero());
        assert_eq!(pfaffian_principal(&m, &[]), Poly::one(&v));
    }

    #[test]
    fn four_by_four_block_form() {
        // Pf of block-diagonal skew [[0,a],[-a,0]] + [[0,b],[-b,0]] is a*b;
        // the general 4x4 formula is a12*a34 - a13*a24 + a14*a23.
        let v = VarTable::new(["a", "b", "c", "d", "e", "f"]).unwrap();
        let z = Poly::zero(&v);
        let e = |s: &str| p(&v, s);
        let m = PolyMatrix::new(
            &v,
            vec![
                vec![z.clone(), e("a"), e("b"), e("c")],
                vec![e("-a"), z.clone(), e("d"), e("e")],
                vec![e("-b"), e("-d"), z.clone(), e("f")],
                vec![e("-c"), e("-e"), e("-f"), z.clone()],
            ],
        );
        assert_eq!(pfaffian(&m), e("a*f - b*e + c*d"));
        // Pfaffian squared equals the determinant.
        let pf = pfaffian(&m);
        assert_eq!(pf.mul(&pf), m.det_ff());
    }

    #[test]
    fn principal_subsets_pick_out_blocks() {
        let v = VarTable::new(["a", "b"]).unwrap();
        let z = Poly::zero(&v);
        let e = |s: &str| p(&v, s);
        let m = PolyMatrix::new(
            &v,
            vec![
                vec![z.clone(), e("a"), z.clone(), z.clone()],
                vec![e("-a"), z.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), e("b")],
                vec![z.clone(), z.clone(), e("-b"), z.clone()],
            ],
        );
        assert_eq!(pfaffian_principal(&m, &[0, 1]), e("a"));
        assert_eq!(pfaffian_principal(&m, &[2, 3]), e("b"));
        assert!(pfaffian_principal(&m, &[0, 2]).is_zero());
        assert_eq!(pfaffian(&m), e("a*b"));
    }
}
