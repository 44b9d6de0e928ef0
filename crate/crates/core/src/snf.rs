//! Smith normal form over the integers.
//!
//! Large sparse boundary matrices are first reduced by eliminating unit
//! pivots (chosen to keep fill low); whatever remains is handed to a dense
//! elimination. The dense routine can also record unimodular transforms
//! `U`, `V` with `U A V = D`, which homology bases are built from.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::matrix::{DenseMatrix, IntMatrix};

/// Rank and nonzero invariant factors (ascending, each dividing the next).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithForm {
    pub rows: usize,
    pub cols: usize,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// Invariant factors different from 1.
    pub fn torsion(&self) -> Vec<BigInt> {
        self.invariant_factors.iter().filter(|d| !d.is_one()).cloned().collect()
    }

    /// The diagonal of `D`, padded with zeros to `min(rows, cols)`.
    pub fn diagonal(&self) -> Vec<BigInt> {
        let mut d = self.invariant_factors.clone();
        d.resize(self.rows.min(self.cols), BigInt::zero());
        d
    }

    pub fn all_units(&self) -> bool {
        self.invariant_factors.iter().all(One::is_one)
    }
}

/// `U A V = D` with `U`, `V` unimodular; inverses are kept alongside.
#[derive(Clone, Debug)]
pub struct SmithDecomposition {
    pub form: SmithForm,
    pub u: DenseMatrix,
    pub u_inv: DenseMatrix,
    pub v: DenseMatrix,
    pub v_inv: DenseMatrix,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.form.rank()
    }

    /// Columns of `V` past the rank: a basis of the integer kernel.
    pub fn kernel_basis(&self) -> DenseMatrix {
        self.v.col_block(self.rank()..self.v.cols())
    }
}

/// Below this many columns the sparse pass is skipped.
const DENSE_CUTOFF: usize = 64;

/// Invariant factors of a sparse matrix.
pub fn smith_normal_form(a: &IntMatrix) -> SmithForm {
    let (ones, residual) = if a.cols() < DENSE_CUTOFF && a.rows() < DENSE_CUTOFF {
        (0, a.to_dense())
    } else {
        sparse_unit_elimination(a)
    };
    let mut factors = vec![BigInt::one(); ones];
    let mut work = residual;
    factors.extend(dense_smith(&mut work, None));
    factors.sort();
    SmithForm { rows: a.rows(), cols: a.cols(), invariant_factors: factors }
}

/// Smith form together with transforms.
pub fn smith_with_transforms(a: &DenseMatrix) -> SmithDecomposition {
    let mut work = a.clone();
    let mut t = Transforms {
        u: DenseMatrix::identity(a.rows()),
        u_inv: DenseMatrix::identity(a.rows()),
        v: DenseMatrix::identity(a.cols()),
        v_inv: DenseMatrix::identity(a.cols()),
    };
    let factors = dense_smith(&mut work, Some(&mut t));
    SmithDecomposition {
        form: SmithForm { rows: a.rows(), cols: a.cols(), invariant_factors: factors },
        u: t.u,
        u_inv: t.u_inv,
        v: t.v,
        v_inv: t.v_inv,
    }
}

pub fn rank(a: &IntMatrix) -> usize {
    smith_normal_form(a).rank()
}

struct Transforms {
    u: DenseMatrix,
    u_inv: DenseMatrix,
    v: DenseMatrix,
    v_inv: DenseMatrix,
}

struct Ops<'a> {
    a: &'a mut DenseMatrix,
    t: Option<&'a mut Transforms>,
}

impl Ops<'_> {
    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_rows(i, j);
        if let Some(t) = self.t.as_deref_mut() {
            t.u.swap_rows(i, j);
            t.u_inv.swap_cols(i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap_cols(i, j);
        if let Some(t) = self.t.as_deref_mut() {
            t.v.swap_cols(i, j);
            t.v_inv.swap_rows(i, j);
        }
    }

    /// row[i] += k row[j]
    fn add_row(&mut self, i: usize, j: usize, k: &BigInt) {
        self.a.add_row_multiple(i, j, k);
        if let Some(t) = self.t.as_deref_mut() {
            t.u.add_row_multiple(i, j, k);
            t.u_inv.add_col_multiple(j, i, &-k);
        }
    }

    /// col[i] += k col[j]
    fn add_col(&mut self, i: usize, j: usize, k: &BigInt) {
        self.a.add_col_multiple(i, j, k);
        if let Some(t) = self.t.as_deref_mut() {
            t.v.add_col_multiple(i, j, k);
            t.v_inv.add_row_multiple(j, i, &-k);
        }
    }

    fn negate_row(&mut self, i: usize) {
        self.a.negate_row(i);
        if let Some(t) = self.t.as_deref_mut() {
            t.u.negate_row(i);
            t.u_inv.negate_col(i);
        }
    }
}

/// In-place diagonalisation; returns the nonzero diagonal in order.
/// Pivot: smallest absolute value in the active block, ties by (row, col).
fn dense_smith(a: &mut DenseMatrix, t: Option<&mut Transforms>) -> Vec<BigInt> {
    let (m, n) = (a.rows(), a.cols());
    let mut ops = Ops { a, t };
    let mut factors = Vec::new();
    let mut s = 0;
    while s < m.min(n) {
        let Some((pr, pc)) = min_entry(ops.a, s..m, s..n) else { break };
        ops.swap_rows(s, pr);
        ops.swap_cols(s, pc);
        loop {
            let p = ops.a.get(s, s).clone();
            let mut dirty = false;
            for i in s + 1..m {
                let x = ops.a.get(i, s);
                if !x.is_zero() {
                    let q = x.div_floor(&p);
                    ops.add_row(i, s, &-q);
                    dirty |= !ops.a.get(i, s).is_zero();
                }
            }
            for j in s + 1..n {
                let x = ops.a.get(s, j);
                if !x.is_zero() {
                    let q = x.div_floor(&p);
                    ops.add_col(j, s, &-q);
                    dirty |= !ops.a.get(s, j).is_zero();
                }
            }
            if dirty {
                // a remainder smaller than the pivot survived; move it in
                let col = min_entry(ops.a, s..m, s..s + 1);
                let row = min_entry(ops.a, s..s + 1, s..n);
                let pick = match (col, row) {
                    (Some(c), Some(r)) => {
                        if ops.a.get(r.0, r.1).abs() < ops.a.get(c.0, c.1).abs() {
                            r
                        } else {
                            c
                        }
                    }
                    (Some(c), None) => c,
                    (None, Some(r)) => r,
                    (None, None) => unreachable!(),
                };
                ops.swap_rows(s, pick.0);
                ops.swap_cols(s, pick.1);
                continue;
            }
            let p = ops.a.get(s, s).clone();
            let bad = (s + 1..m).find(|&i| (s + 1..n).any(|j| !ops.a.get(i, j).is_multiple_of(&p)));
            match bad {
                Some(i) => ops.add_row(s, i, &BigInt::one()),
                None => break,
            }
        }
        if ops.a.get(s, s).is_negative() {
            ops.negate_row(s);
        }
        factors.push(ops.a.get(s, s).clone());
        s += 1;
    }
    factors
}

fn min_entry(
    a: &DenseMatrix,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(BigInt, usize, usize)> = None;
    for r in rows {
        for c in cols.clone() {
            let v = a.get(r, c);
            if v.is_zero() {
                continue;
            }
            let av = v.abs();
            if best.as_ref().is_none_or(|b| av < b.0) {
                let done = av.is_one();
                best = Some((av, r, c));
                if done {
                    return best.map(|b| (b.1, b.2));
                }
            }
        }
    }
    best.map(|b| (b.1, b.2))
}

/// Eliminate ±1 pivots directly on the sparse structure. Returns the number
/// of pivots taken and the dense residual on the untouched rows and columns.
fn sparse_unit_elimination(a: &IntMatrix) -> (usize, DenseMatrix) {
    let mut rows: Vec<BTreeMap<usize, BigInt>> = vec![BTreeMap::new(); a.rows()];
    let mut col_rows: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); a.cols()];
    for (r, c, v) in a.triplets() {
        rows[r].insert(c, v.clone());
        col_rows[c].insert(r);
    }
    let mut col_alive = vec![true; a.cols()];
    let mut row_alive = vec![true; a.rows()];
    let mut pivots = 0;
    loop {
        // column with fewest entries that holds a unit; within it the sparsest row
        let mut best: Option<(usize, usize, usize, usize)> = None;
        for c in 0..a.cols() {
            if !col_alive[c] || col_rows[c].is_empty() {
                continue;
            }
            let cn = col_rows[c].len();
            if best.is_some_and(|b| cn > b.0) {
                continue;
            }
            for &r in &col_rows[c] {
                if rows[r][&c].abs().is_one() {
                    let rn = rows[r].len();
                    let cand = (cn, rn, c, r);
                    if best.is_none_or(|b| (cand.0, cand.1) < (b.0, b.1)) {
                        best = Some(cand);
                    }
                }
            }
        }
        let Some((_, _, pc, pr)) = best else { break };
        let prow = std::mem::take(&mut rows[pr]);
        let pval = prow[&pc].clone();
        let others: Vec<usize> = col_rows[pc].iter().copied().filter(|&r| r != pr).collect();
        for r in others {
            let factor = &rows[r][&pc] * &pval;
            for (c, v) in &prow {
                let entry = rows[r].entry(*c).or_insert_with(BigInt::zero);
                *entry -= &factor * v;
                if entry.is_zero() {
                    rows[r].remove(c);
                    col_rows[*c].remove(&r);
                } else {
                    col_rows[*c].insert(r);
                }
            }
        }
        for c in prow.keys() {
            col_rows[*c].remove(&pr);
        }
        col_alive[pc] = false;
        row_alive[pr] = false;
        pivots += 1;
    }
    let live_rows: Vec<usize> = (0..a.rows()).filter(|&r| row_alive[r] && !rows[r].is_empty()).collect();
    let live_cols: Vec<usize> = (0..a.cols()).filter(|&c| col_alive[c] && !col_rows[c].is_empty()).collect();
    let mut col_pos = vec![usize::MAX; a.cols()];
    for (i, &c) in live_cols.iter().enumerate() {
        col_pos[c] = i;
    }
    let mut d = DenseMatrix::zeros(live_rows.len(), live_cols.len());
    for (i, &r) in live_rows.iter().enumerate() {
        for (c, v) in &rows[r] {
            if col_pos[*c] != usize::MAX {
                d.set(i, col_pos[*c], v.clone());
            }
        }
    }
    (pivots, d)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check_decomposition(a: &DenseMatrix) {
        let s = smith_with_transforms(a);
        let d = s.u.mul(a).unwrap().mul(&s.v).unwrap();
        for r in 0..d.rows() {
            for c in 0..d.cols() {
                let expect = if r == c && r < s.rank() { s.form.invariant_factors[r].clone() } else { BigInt::zero() };
                assert_eq!(d.get(r, c), &expect);
            }
        }
        assert_eq!(s.u.mul(&s.u_inv).unwrap(), DenseMatrix::identity(a.rows()));
        assert_eq!(s.v.mul(&s.v_inv).unwrap(), DenseMatrix::identity(a.cols()));
        for w in s.form.invariant_factors.windows(2) {
            assert!(w[1].is_multiple_of(&w[0]));
        }
    }

    #[test]
    fn classic_example() {
        let a = DenseMatrix::from_i64(&[&[2, 4, 4], &[-6, 6, 12], &[10, -4, -16]]);
        let s = smith_with_transforms(&a);
        assert_eq!(s.form.invariant_factors, vec![2.into(), 6.into(), 12.into()]);
        check_decomposition(&a);
        assert_eq!(smith_normal_form(&a.to_sparse()).invariant_factors, s.form.invariant_factors);
    }

    #[test]
    fn torsion_and_kernel() {
        let a = DenseMatrix::from_i64(&[&[2, 0, 0], &[0, 3, 0]]);
        let s = smith_with_transforms(&a);
        assert_eq!(s.form.invariant_factors, vec![1.into(), 6.into()]);
        let k = s.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(a.mul(&k).unwrap().is_zero());
        check_decomposition(&a);
    }

    #[test]
    fn sparse_path_agrees_with_dense() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..5 {
            let (m, n) = (70, 80);
            let mut trip = Vec::new();
            for r in 0..m {
                for c in 0..n {
                    if rng.gen_bool(0.05) {
                        trip.push((r, c, BigInt::from(rng.gen_range(-3i64..=3))));
                    }
                }
            }
            let a = IntMatrix::from_triplets(m, n, trip).unwrap();
            let sparse = smith_normal_form(&a);
            let dense = smith_with_transforms(&a.to_dense());
            assert_eq!(sparse.invariant_factors, dense.form.invariant_factors);
        }
    }

    #[test]
    fn random_decompositions() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..20 {
            let m = rng.gen_range(1..7);
            let n = rng.gen_range(1..7);
            let rows: Vec<Vec<BigInt>> =
                (0..m).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect()).collect();
            check_decomposition(&DenseMatrix::from_rows(rows).unwrap());
        }
    }
}
