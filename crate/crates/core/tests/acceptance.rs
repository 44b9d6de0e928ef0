//! Acceptance suite: one line per criterion, with its runtime budget.
//!
//! Runs as a plain binary (no libtest harness) so the lines always print:
//! `cargo test -p treespace --test acceptance`.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use treespace::character::{homology_character, Character};
use treespace::complex::{build_partition_nerve, build_tree_complex};
use treespace::cycle::{
    boundary_of_module_chain, build_fundamental_cycle, caterpillar_pairings, cycle_terms_with, shape_census,
    verify_invariance, SplitOrder,
};
use treespace::homology::complex_homology;
use treespace::lie::{assoc_expand, basis_words, generators, normalize, theta, BracketExpr, Flavor, SuperLieElement};
use treespace::perm::{factorial, LabelPermutation};
use treespace::tree::binary_tree_count;
use treespace::whitehouse::{build_complement_subcomplex, exactness_check, whitehouse_character_check};
use treespace::Result;

struct Outcome {
    id: u32,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

fn criterion(
    id: u32,
    title: &'static str,
    limit: Option<Duration>,
    f: impl FnOnce() -> Result<(bool, String)>,
) -> Outcome {
    let t0 = Instant::now();
    let (mut passed, mut detail) = f().unwrap_or_else(|e| (false, format!("error: {e}")));
    let elapsed = t0.elapsed();
    if let Some(l) = limit {
        if elapsed > l {
            passed = false;
            detail = format!("{detail}; over the {}s budget", l.as_secs());
        }
    }
    Outcome { id, title, passed, detail, elapsed, limit }
}

fn print(o: &Outcome) {
    let budget = o.limit.map_or(String::new(), |l| format!(" / {}s", l.as_secs()));
    println!(
        "criterion {:>2} {} {:<22} {:>8.2}s{budget}  {}",
        o.id,
        if o.passed { "PASS" } else { "FAIL" },
        o.title,
        o.elapsed.as_secs_f64(),
        o.detail
    );
}

fn c1_census() -> Result<(bool, String)> {
    let mut ok = true;
    let mut counts = Vec::new();
    for n in 3..=7 {
        let top = build_tree_complex(n)?.num_simplices(n - 3) as u128;
        let df: u128 = (1..=(2 * n as u128 - 3)).step_by(2).product();
        ok &= top == df && binary_tree_count(n) == df;
        counts.push(format!("{top}"));
    }
    ok &= counts[2] == "105";
    Ok((ok, format!("top simplices n=3..7: {}", counts.join(", "))))
}

fn c2_incidence() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    for n in 5..=7 {
        let h = build_tree_complex(n)?.codim1_incidence_report();
        ok &= h.len() == 1 && h.contains_key(&3);
        parts.push(format!("n={n} {h:?}"));
    }
    Ok((ok, parts.join("; ")))
}

fn c3_homology() -> Result<(bool, String)> {
    let mut ok = true;
    let mut parts = Vec::new();
    let check = |h: &treespace::homology::HomologyResult, n: usize| {
        h.support() == vec![n as isize - 3] && h.betti(n as isize - 3) as u128 == factorial(n as u128 - 1) && h.is_torsion_free()
    };
    for n in 4..=6 {
        let h = complex_homology(&build_tree_complex(n)?, true)?;
        ok &= check(&h, n);
        parts.push(format!("T{n}: rank {} in degree {}", h.betti(n as isize - 3), n - 3));
    }
    for n in 4..=5 {
        let h = complex_homology(&build_partition_nerve(n)?, true)?;
        ok &= check(&h, n);
        parts.push(format!("Λ{n}: rank {}", h.betti(n as isize - 3)));
    }
    Ok((ok, format!("{}; torsion-free", parts.join(", "))))
}

fn c4_cycle() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 4..=7 {
        let c = build_tree_complex(n)?;
        let f = build_fundamental_cycle(n)?;
        ok &= boundary_of_module_chain(&f, &c)?.is_zero();
    }
    let census = shape_census(&cycle_terms_with(5, SplitOrder::SmallerFirst)?);
    let want = [(1, "[*,[*,[*,[*,*]]]]", 60), (-1, "[[*,*],[*,[*,*]]]", 30), (-1, "[*,[[*,*],[*,*]]]", 15)];
    ok &= census.len() == 3 && want.iter().all(|(s, sh, k)| census.get(&(*s, sh.to_string())) == Some(k));
    Ok((ok, "boundary zero for n=4..7; F5 census 60(+) / 30(-) / 15(-)".into()))
}

fn c5_invariance() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 4..=6 {
        let c = build_tree_complex(n)?;
        let f = build_fundamental_cycle(n)?;
        for i in 1..n as u8 {
            ok &= verify_invariance(&f, &c, &LabelPermutation::transposition(n + 1, i, i + 1)?)?;
        }
    }
    Ok((ok, "all Coxeter generators, n=4..6".into()))
}

fn c6_duality() -> Result<(bool, String)> {
    let mut counts = Vec::new();
    let mut ok = true;
    for n in 4..=6 {
        let pairs = caterpillar_pairings(&build_fundamental_cycle(n)?, &build_tree_complex(n)?)?;
        ok &= pairs.len() as u128 == factorial(n as u128 - 1);
        counts.push(pairs.len().to_string());
    }
    Ok((ok, format!("signed bijections of sizes {}", counts.join(", "))))
}

fn c7_oracle() -> Result<(bool, String)> {
    let flavors = [Flavor::Ordinary, Flavor::Super];
    let agrees = |e: &BracketExpr, f: Flavor| -> Result<bool> { Ok(normalize(e, f)?.assoc_expand()? == assoc_expand(e, f)?) };
    let mut exhaustive = 0;
    for n in 1..=4 {
        for e in BracketExpr::all_monomials(generators(n)) {
            for f in flavors {
                if !agrees(&e, f)? {
                    return Ok((false, format!("{f} mismatch at {e}")));
                }
                exhaustive += 1;
            }
        }
    }
    let mut random = 0;
    for n in [5, 6] {
        let mut rng = ChaCha8Rng::seed_from_u64(1000 + n as u64);
        for _ in 0..1000 {
            let e = BracketExpr::random(generators(n), &mut rng)?;
            for f in flavors {
                if !agrees(&e, f)? {
                    return Ok((false, format!("{f} mismatch at {e}")));
                }
                random += 1;
            }
        }
    }
    let mut theta_checks = 0;
    for n in 1..=4 {
        for w in basis_words(generators(n)) {
            let g = SuperLieElement::basis(&w, Flavor::Ordinary)?;
            let tg = theta(&g)?;
            for s in LabelPermutation::all_fixing_zero(n + 1) {
                if theta(&g.permute_generators(&s, false)?)? != tg.permute_generators(&s, true)? {
                    return Ok((false, format!("theta equivariance fails at {s}, {g}")));
                }
                theta_checks += 1;
            }
        }
    }
    Ok((true, format!("{exhaustive} exhaustive + {random} random comparisons; {theta_checks} theta checks")))
}

fn c8_regular() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 4..=5 {
        let chi = homology_character(&build_tree_complex(n)?, n - 3)?;
        ok &= chi.restrict()?.restrict()? == Character::regular(n - 1);
    }
    Ok((ok, "restriction to S_{n-1} is regular, n=4,5".into()))
}

fn c9_whitehouse() -> Result<(bool, String)> {
    let mut ok = true;
    for n in 3..=5 {
        ok &= whitehouse_character_check(n)?.holds;
    }
    let mut ranks = Vec::new();
    for n in 3..=4 {
        let r = exactness_check(&build_complement_subcomplex(n)?)?;
        let f = |k: u128| factorial(k) as usize;
        ok &= r.exact && r.ranks == [f(n as u128), (n + 1) * f(n as u128 - 1), f(n as u128 - 1)];
        ranks.push(format!("{}→{}→{}", r.ranks[0], r.ranks[1], r.ranks[2]));
    }
    Ok((ok, format!("characters n=3..5; exact with ranks {}", ranks.join(", "))))
}

fn main() -> ExitCode {
    let s = Duration::from_secs;
    let mut outcomes = vec![
        criterion(1, "census", Some(s(10)), c1_census),
        criterion(2, "incidence", Some(s(30)), c2_incidence),
        criterion(3, "homology", Some(s(300)), c3_homology),
        criterion(4, "fundamental cycle", Some(s(120)), c4_cycle),
        criterion(5, "invariance", None, c5_invariance),
        criterion(6, "duality", None, c6_duality),
        criterion(7, "oracle equivalence", None, c7_oracle),
        criterion(8, "regular restriction", None, c8_regular),
        criterion(9, "whitehouse", Some(s(300)), c9_whitehouse),
    ];
    for o in &outcomes {
        print(o);
    }
    let all = outcomes.iter().all(|o| o.passed);
    let last = Outcome {
        id: 10,
        title: "nothing out of reach",
        passed: all,
        detail: "every criterion above was computed in full at its stated range".into(),
        elapsed: Duration::ZERO,
        limit: None,
    };
    print(&last);
    outcomes.push(last);
    let failed = outcomes.iter().filter(|o| !o.passed).count();
    println!("acceptance: {} passed, {failed} failed", outcomes.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
