use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treespace::character::{lie_character, Character};
use treespace::lie::{
    assoc_expand, basis_words, generators, normalize, theta, theta_expr, BracketExpr, Flavor, SuperLieElement,
};
use treespace::matrix::IntMatrix;
use treespace::perm::LabelPermutation;
use treespace::snf::rank;

const FLAVORS: [Flavor; 2] = [Flavor::Ordinary, Flavor::Super];

fn agrees_with_oracle(e: &BracketExpr, flavor: Flavor) -> bool {
    normalize(e, flavor).unwrap().assoc_expand().unwrap() == assoc_expand(e, flavor).unwrap()
}

/// All permutations of `{0..n}` fixing 0.
fn sigma_n(n: usize) -> Vec<LabelPermutation> {
    LabelPermutation::all_fixing_zero(n + 1)
}

#[test]
fn normalize_matches_oracle_exhaustively_up_to_four() {
    for n in 1..=4 {
        for e in BracketExpr::all_monomials(generators(n)) {
            for flavor in FLAVORS {
                assert!(agrees_with_oracle(&e, flavor), "{flavor} {e}");
            }
        }
    }
}

#[test]
fn normalize_matches_oracle_on_random_monomials() {
    for n in [5, 6] {
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        for _ in 0..1000 {
            let e = BracketExpr::random(generators(n), &mut rng).unwrap();
            for flavor in FLAVORS {
                assert!(agrees_with_oracle(&e, flavor), "{flavor} {e}");
            }
        }
    }
}

#[test]
fn normalize_fixes_basis_elements() {
    for n in 1..=5 {
        for w in basis_words(generators(n)) {
            for flavor in FLAVORS {
                let b = SuperLieElement::basis(&w, flavor).unwrap();
                assert_eq!(normalize(&BracketExpr::right_normed(&w).unwrap(), flavor).unwrap(), b);
            }
        }
    }
}

#[test]
fn basis_expansions_are_independent() {
    for n in 2..=5 {
        let words = basis_words(generators(n));
        let perms: Vec<Vec<u8>> = LabelPermutation::all(n).iter().map(|p| p.images().iter().map(|x| x + 1).collect()).collect();
        for flavor in FLAVORS {
            let cols: Vec<Vec<(usize, BigInt)>> = words
                .iter()
                .map(|w| {
                    let ex = SuperLieElement::basis(w, flavor).unwrap().assoc_expand().unwrap();
                    perms.iter().enumerate().map(|(r, p)| (r, ex.coeff(p))).filter(|(_, c)| *c != BigInt::from(0)).collect()
                })
                .collect();
            let m = IntMatrix::from_columns(perms.len(), cols);
            assert_eq!(rank(&m), words.len(), "n = {n}, {flavor}");
        }
    }
}

#[test]
fn theta_is_equivariant_up_to_sign() {
    for n in 1..=4 {
        for w in basis_words(generators(n)) {
            let g = SuperLieElement::basis(&w, Flavor::Ordinary).unwrap();
            let tg = theta(&g).unwrap();
            assert!(tg.as_signed_basis().is_some(), "theta maps basis to ± basis");
            for s in sigma_n(n) {
                let lhs = theta(&g.permute_generators(&s, false).unwrap()).unwrap();
                let rhs = tg.permute_generators(&s, true).unwrap();
                assert_eq!(lhs, rhs, "n = {n}, sigma = {s}, g = {g}");
            }
        }
    }
}

#[test]
fn theta_agrees_on_monomials_and_basis() {
    for n in 1..=4 {
        for e in BracketExpr::all_monomials(generators(n)) {
            assert_eq!(theta_expr(&e).unwrap(), theta(&normalize(&e, Flavor::Ordinary).unwrap()).unwrap(), "{e}");
        }
    }
}

#[test]
fn lie3_action_matrices() {
    let words = basis_words(generators(3));
    let matrix = |s: &LabelPermutation| -> Vec<Vec<i64>> {
        // column j is the image of basis vector j
        let cols: Vec<Vec<i64>> = words
            .iter()
            .map(|w| {
                let img = SuperLieElement::basis(w, Flavor::Ordinary).unwrap().permute_generators(s, false).unwrap();
                words.iter().map(|v| i64::try_from(img.coeff(v)).unwrap()).collect()
            })
            .collect();
        (0..words.len()).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    };
    let cyc = LabelPermutation::from_cycles(4, &[vec![1, 2, 3]]).unwrap();
    let m = matrix(&cyc);
    assert_eq!(m[0][0] + m[1][1], -1);
    let swap = LabelPermutation::transposition(4, 1, 2).unwrap();
    assert_eq!(matrix(&swap), vec![vec![0, 1], vec![1, 0]]);

    // Contragredient: σ ↦ M(σ⁻¹)ᵀ is again a representation, with the same character.
    let mul = |a: &Vec<Vec<i64>>, b: &Vec<Vec<i64>>| -> Vec<Vec<i64>> {
        (0..2).map(|i| (0..2).map(|j| (0..2).map(|k| a[i][k] * b[k][j]).sum()).collect()).collect()
    };
    let dual = |s: &LabelPermutation| -> Vec<Vec<i64>> {
        let m = matrix(&s.inverse());
        (0..2).map(|i| (0..2).map(|j| m[j][i]).collect()).collect()
    };
    let group = sigma_n(3);
    for a in &group {
        for b in &group {
            assert_eq!(dual(&a.compose(b).unwrap()), mul(&dual(a), &dual(b)));
        }
    }
    let chi_dual = Character::from_fn(3, |p| {
        let d = dual(&p.representative(4, 1).unwrap());
        d[0][0] + d[1][1]
    });
    assert_eq!(chi_dual, lie_character(3, Flavor::Ordinary).unwrap());
    assert_eq!(chi_dual.values(), &[2, 0, -1]);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn random_monomials_agree_with_oracle(seed in any::<u64>(), n in 2usize..=6, sup in any::<bool>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = BracketExpr::random(generators(n), &mut rng).unwrap();
        let flavor = if sup { Flavor::Super } else { Flavor::Ordinary };
        prop_assert!(agrees_with_oracle(&e, flavor));
    }

    #[test]
    fn super_jacobi_vanishes(seed in any::<u64>(), n in 3usize..=6) {
        // Split the generators into three nonempty random monomials and form
        // the graded cyclic sum of [[a,b],c].
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut order: Vec<u8> = (1..=n as u8).collect();
        use rand::seq::SliceRandom;
        use rand::Rng;
        order.shuffle(&mut rng);
        let i = rng.gen_range(1..n - 1);
        let j = rng.gen_range(i + 1..n);
        let mono = |ls: &[u8], rng: &mut ChaCha8Rng| {
            let mask = ls.iter().fold(0u32, |m, &x| m | 1 << x);
            BracketExpr::random(mask, rng).unwrap()
        };
        let a = mono(&order[..i], &mut rng);
        let b = mono(&order[i..j], &mut rng);
        let c = mono(&order[j..], &mut rng);
        let (da, db, dc) = (i, j - i, n - j);
        let sign = |p: usize| if p.is_multiple_of(2) { 1 } else { -1 };
        let mut total: Option<SuperLieElement> = None;
        for (x, y, z, s) in [
            (&a, &b, &c, sign(da * dc)),
            (&b, &c, &a, sign(db * da)),
            (&c, &a, &b, sign(dc * db)),
        ] {
            let e = BracketExpr::bracket(BracketExpr::bracket(x.clone(), y.clone()), z.clone());
            let v = normalize(&e, Flavor::Super).unwrap().scale(&BigInt::from(s));
            total = Some(match total { None => v, Some(t) => t.add(&v).unwrap() });
        }
        prop_assert!(total.unwrap().is_zero());
    }

    #[test]
    fn permuting_generators_is_an_action(seed in any::<u64>(), n in 2usize..=5, sup in any::<bool>()) {
        use rand::seq::SliceRandom;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let flavor = if sup { Flavor::Super } else { Flavor::Ordinary };
        let e = normalize(&BracketExpr::random(generators(n), &mut rng).unwrap(), flavor).unwrap();
        let group = sigma_n(n);
        let s = group.choose(&mut rng).unwrap();
        let t = group.choose(&mut rng).unwrap();
        let lhs = e.permute_generators(&t.compose(s).unwrap(), false).unwrap();
        let rhs = e.permute_generators(s, false).unwrap().permute_generators(t, false).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}
