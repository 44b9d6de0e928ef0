use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use proptest::prelude::*;

use treespace::matrix::{DenseMatrix, IntMatrix};
use treespace::snf::{smith_normal_form, smith_with_transforms};

/// Bareiss elimination: returns (rank, |det| when square and full rank).
fn bareiss(mut a: Vec<Vec<BigInt>>) -> (usize, BigInt) {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else { continue };
        a.swap(r, p);
        for i in r + 1..rows {
            for j in c + 1..cols {
                let v = (&a[r][c] * &a[i][j] - &a[i][c] * &a[r][j]) / &prev;
                a[i][j] = v;
            }
            a[i][c] = BigInt::zero();
        }
        prev = a[r][c].clone();
        r += 1;
        if r == rows {
            break;
        }
    }
    let det = if r == rows && rows == cols { prev.abs() } else { BigInt::zero() };
    (r, det)
}

fn matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-4i64..=4, cols), rows)
}

fn to_sparse(m: &[Vec<i64>], cols: usize) -> IntMatrix {
    IntMatrix::from_triplets(
        m.len(),
        cols,
        m.iter().enumerate().flat_map(|(i, r)| r.iter().enumerate().map(move |(j, &v)| (i, j, BigInt::from(v)))),
    )
    .unwrap()
}

fn big(m: &[Vec<i64>]) -> Vec<Vec<BigInt>> {
    m.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn factors_match_determinant(n in 1usize..=6, seed in matrix(6, 6)) {
        let m: Vec<Vec<i64>> = seed.into_iter().take(n).map(|r| r.into_iter().take(n).collect()).collect();
        let s = smith_normal_form(&to_sparse(&m, n));
        let (rank, det) = bareiss(big(&m));
        prop_assert_eq!(s.rank(), rank);
        if rank == n {
            let prod = s.invariant_factors.iter().fold(BigInt::one(), |a, b| a * b);
            prop_assert_eq!(prod, det);
        }
        for w in s.invariant_factors.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]));
        }
        if let Some(first) = s.invariant_factors.first() {
            let g = m.iter().flatten().fold(BigInt::zero(), |g, &v| g.gcd(&BigInt::from(v)));
            prop_assert_eq!(first, &g);
        }
    }

    #[test]
    fn transforms_diagonalize(rows in 1usize..=7, cols in 1usize..=7, seed in matrix(7, 7)) {
        let m: Vec<Vec<i64>> = seed.into_iter().take(rows).map(|r| r.into_iter().take(cols).collect()).collect();
        let a = DenseMatrix::from_rows(big(&m)).unwrap();
        let d = smith_with_transforms(&a);
        let uav = d.u.mul(&a).unwrap().mul(&d.v).unwrap();
        let diag = d.form.diagonal();
        for i in 0..rows {
            for j in 0..cols {
                let want = if i == j && i < diag.len() { diag[i].clone() } else { BigInt::zero() };
                prop_assert_eq!(uav.get(i, j), &want);
            }
        }
        prop_assert_eq!(d.u.mul(&d.u_inv).unwrap(), DenseMatrix::identity(rows));
        prop_assert_eq!(d.v.mul(&d.v_inv).unwrap(), DenseMatrix::identity(cols));
    }

    #[test]
    fn sparse_rank_matches_elimination(seed in any::<u64>()) {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let (rows, cols) = (rng.gen_range(64..90), rng.gen_range(64..90));
        let m: Vec<Vec<i64>> = (0..rows)
            .map(|_| (0..cols).map(|_| if rng.gen_bool(0.06) { rng.gen_range(-2..=2) } else { 0 }).collect())
            .collect();
        let s = smith_normal_form(&to_sparse(&m, cols));
        prop_assert_eq!(s.rank(), bareiss(big(&m)).0);
    }
}

#[test]
fn torsion_example() {
    // cokernel Z ⊕ Z/2
    let m = to_sparse(&[vec![2, 0], vec![0, 0]], 2);
    let s = smith_normal_form(&m);
    assert_eq!(s.torsion(), vec![BigInt::from(2)]);
    assert_eq!(s.rank(), 1);
}
