//! End-to-end acceptance checks, one line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the report stays readable;
//! exits nonzero if any criterion fails.

use std::collections::HashSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use motzkin_core::algebraics::{
    check_shape_conjecture, guess_algebraic_equation, published_equation, rank2_general_equation_check,
    rank2_general_sextic, verify_algebraic_equation, AlgebraicEquation,
};
use motzkin_core::counting::{catalan, count_paths_dp, motzkin_sequence, rank1_explicit};
use motzkin_core::error::AlgebraicError;
use motzkin_core::genfunc::{catalan_series, rank1_closed_form_series, solve_series, CoeffSeries};
use motzkin_core::paths::{enumerate_paths, recolor_bijection, recolor_inverse};
use motzkin_core::poly::IntPoly;
use motzkin_core::recurrence::{apply_recurrence, guess_recurrence, minimality_scan, published, verify_recurrence};
use motzkin_core::{BigInt, BigUint, Step, WeightSpec};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const TABLE1: [u64; 10] = [1, 3, 9, 32, 120, 473, 1925, 8034, 34188, 147787];
const TABLE2: [u64; 10] = [1, 4, 16, 78, 404, 2208, 12492, 72589, 430569, 2596471];
const TABLE3: [u64; 10] = [1, 5, 25, 155, 1025, 7167, 51945, 387000, 2944860, 22791189];

type Outcome = Result<String, String>;
/// Number, title, time budget in seconds, check.
type Criterion = (u32, &'static str, Option<u64>, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn all_ones_series(rank: usize, order: usize) -> CoeffSeries {
    solve_series(&WeightSpec::all_ones(rank), order).into_a00()
}

fn ints(v: Vec<BigUint>) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

fn tables() -> Outcome {
    for (rank, table) in [(2, &TABLE1), (3, &TABLE2), (4, &TABLE3)] {
        let spec = WeightSpec::all_ones(rank);
        let series = solve_series(&spec, 11).into_a00();
        for (k, &want) in table.iter().enumerate() {
            let n = k + 1;
            let dp = count_paths_dp(&spec, n, 0, 0);
            ensure(dp == BigUint::from(want), || format!("rank {rank}, n = {n}: dp gives {dp}, table {want}"))?;
            let gf = series.coeff(n);
            ensure(gf.is_integer() && gf.to_integer() == BigInt::from(want), || {
                format!("rank {rank}, n = {n}: series gives {gf}, table {want}")
            })?;
        }
    }
    Ok("ranks 2, 3, 4: n = 1..10 equal by DP and by series".into())
}

fn published_equations() -> Outcome {
    for r in 1..=4 {
        let p = published_equation(r).map_err(|e| e.to_string())?;
        let s = all_ones_series(r, 60);
        ensure(verify_algebraic_equation(&p.printed, &s, 60), || format!("rank {r} equation leaves a residual mod x^60"))?;
    }
    let p2 = published_equation(2).map_err(|e| e.to_string())?;
    let square = AlgebraicEquation::new(vec![IntPoly::one(), IntPoly::from_i64(&[0, 2]), IntPoly::from_i64(&[0, 0, 1])])
        .expect("nonzero");
    ensure(square == p2.removed_factor, || "rank 2 factor is not (1+xy)^2".into())?;
    ensure(square.multiply(&p2.reduced) == p2.printed, || "(1+xy)^2 * quartic differs from the sextic".into())?;
    Ok("ranks 1..4 annihilate A_{0,0} mod x^60; (1+xy)^2 * quartic = sextic".into())
}

fn rediscovery() -> Outcome {
    let mut notes = Vec::new();
    for r in 1..=2 {
        let s = all_ones_series(r, 60);
        let eq = guess_algebraic_equation(&s, 1 << r, None, 8)
            .map_err(|e| e.to_string())?
            .equation
            .ok_or_else(|| format!("rank {r}: nothing found"))?;
        let want = published_equation(r).map_err(|e| e.to_string())?.reduced;
        ensure(eq == want, || format!("rank {r}: guessed {eq}, expected {want}"))?;
    }
    notes.push("ranks 1, 2 exact from 60 terms".to_string());

    let rank3 = Instant::now();
    let s3 = all_ones_series(3, 60);
    let eq3 = guess_algebraic_equation(&s3, 8, None, 8)
        .map_err(|e| e.to_string())?
        .equation
        .ok_or("rank 3: nothing found")?;
    ensure(verify_algebraic_equation(&eq3, &all_ones_series(3, 120), 120), || "rank 3: fails mod x^120".into())?;
    ensure(check_shape_conjecture(&eq3, 3), || format!("rank 3: shape check fails for {eq3}"))?;
    let t3 = rank3.elapsed();
    ensure(t3 < Duration::from_secs(60), || format!("rank 3 took {t3:?}"))?;
    notes.push(format!("rank 3 from 60 terms, y-degree {}", eq3.y_degree()));

    // A degree-16 triangular ansatz has 153 unknowns; 60 terms cannot pin it down.
    // The larger fit below is evidence only: the criterion asks for 60 terms.
    let short = guess_algebraic_equation(&all_ones_series(4, 60), 16, None, 8);
    let required = match short {
        Err(AlgebraicError::InsufficientOrder { required, .. }) => required,
        Ok(rep) => match rep.equation {
            Some(eq) if verify_algebraic_equation(&eq, &all_ones_series(4, 120), 120) && check_shape_conjecture(&eq, 4) => {
                notes.push("rank 4 from 60 terms".into());
                return Ok(notes.join("; "));
            }
            _ => return Err(format!("rank 4 with 60 terms: {rep:?}")),
        },
        Err(e) => return Err(format!("rank 4 with 60 terms: {e}")),
    };
    let rank4 = Instant::now();
    let order4 = 170;
    let eq4 = guess_algebraic_equation(&all_ones_series(4, order4), 16, None, 8)
        .map_err(|e| e.to_string())?
        .equation
        .ok_or("rank 4: nothing found")?;
    let long = all_ones_series(4, 2 * order4);
    let holds = verify_algebraic_equation(&eq4, &long, 120)
        && verify_algebraic_equation(&eq4, &long, 2 * order4)
        && check_shape_conjecture(&eq4, 4);
    notes.push(format!(
        "rank 4 from 60 terms is underdetermined ({required} needed); from {order4} terms the guess {} mod x^{} with shape check, in {:?}",
        if holds { "holds" } else { "FAILS" },
        2 * order4,
        rank4.elapsed()
    ));
    Err(notes.join("; "))
}

fn recurrences() -> Outcome {
    let prodinger = published::prodinger_rank2();
    let dp = ints(motzkin_sequence(&WeightSpec::all_ones(2), 120));
    let guessed = guess_recurrence(&dp, 8, 3)
        .map_err(|e| e.to_string())?
        .ok_or("no relation with order <= 8, degree <= 3")?;
    // Both sides are normalized, so proportionality is equality.
    ensure(guessed == prodinger, || format!("guessed {guessed}"))?;
    ensure(verify_recurrence(&guessed, &dp), || "guessed relation fails on the 120 terms".into())?;

    let extended = apply_recurrence(&prodinger, &dp[..6], 101).map_err(|e| e.to_string())?;
    ensure(extended[..] == dp[..101], || "extension to n = 100 differs from DP".into())?;

    let scan = minimality_scan(&dp, 5, 5, 4).map_err(|e| e.to_string())?;
    if let Some(rec) = scan.recurrence {
        return Err(format!(
            "a relation of order {} and degree {} holds on all 120 terms, so order 6 is not minimal: {rec}",
            rec.order(),
            rec.degree()
        ));
    }
    Ok("guess equals the 7-term relation; extension to n = 100 matches; no order <= 5 within degree 5".into())
}

fn theorem_identity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_2101);
    for _ in 0..50 {
        let (u, l, d) = (rng.gen_range(1..=5u64), rng.gen_range(1..=5u64), rng.gen_range(1..=5u64));
        let lhs = motzkin_sequence(&WeightSpec::rank1(u, l, d), 31);
        let rhs = motzkin_sequence(&WeightSpec::rank1(1, l, u * d), 31);
        for n in 0..=30 {
            ensure(lhs[n] == rhs[n], || format!("({u},{l},{d}) n = {n}: {} vs {}", lhs[n], rhs[n]))?;
            let explicit = rank1_explicit(u, l, d, n);
            ensure(explicit == lhs[n], || format!("({u},{l},{d}) n = {n}: explicit {explicit} vs DP {}", lhs[n]))?;
        }
    }
    Ok("50 random specs, n <= 30: DP(u,l,d) = DP(1,l,ud) = explicit formula".into())
}

fn bijections() -> Outcome {
    let mut checked = 0usize;
    for u in 1..=9u64 {
        for d in 1..=9 / u {
            for l in 0..=2u64 {
                let source = WeightSpec::rank1(u, l, d);
                let target = WeightSpec::rank1(1, l, u * d);
                for n in 0..=8 {
                    let from = enumerate_paths(&source, n, 0, 0, true).map_err(|e| e.to_string())?;
                    let to = enumerate_paths(&target, n, 0, 0, true).map_err(|e| e.to_string())?;
                    ensure(from.len() == to.len(), || {
                        format!("({u},{l},{d}) n = {n}: {} source paths, {} target paths", from.len(), to.len())
                    })?;
                    let targets: HashSet<&[Step]> = to.iter().map(|p| p.steps()).collect();
                    let mut images: HashSet<Vec<Step>> = HashSet::with_capacity(from.len());
                    for p in &from {
                        let img = recolor_bijection(p).map_err(|e| e.to_string())?;
                        ensure(*img.spec() == target, || format!("image of {p} has spec {}", img.spec()))?;
                        ensure(targets.contains(img.steps()), || format!("image {img} of {p} is not a target path"))?;
                        let back = recolor_inverse(&img, &source).map_err(|e| e.to_string())?;
                        ensure(&back == p, || format!("round trip of {p} gives {back}"))?;
                        ensure(images.insert(img.steps().to_vec()), || {
                            format!("({u},{l},{d}) n = {n}: two paths share the image {img}")
                        })?;
                    }
                    checked += from.len();
                }
            }
        }
    }
    Ok(format!("u*d <= 9, 0 <= l <= 2, n <= 8: {checked} paths, injective, onto, round trip"))
}

fn general_sextic() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5e71c);
    let mut cases: Vec<[u64; 5]> = (0..18)
        .map(|_| [0; 5].map(|_| rng.gen_range(0..=4u64)))
        .collect();
    // u2 = d2 = 0
    cases.push([2, 0, 3, 1, 0]);
    cases.push([4, 0, 1, 3, 0]);
    for &[u1, u2, l, d1, d2] in &cases {
        ensure(rank2_general_equation_check(u1, u2, l, d1, d2, 40), || {
            format!("u = ({u1},{u2}), l = {l}, d = ({d1},{d2}) fails mod x^40")
        })?;
        if u2 == 0 && d2 == 0 {
            let collapsed = rank2_general_sextic(u1, u2, l, d1, d2);
            let quadratic = AlgebraicEquation::new(vec![
                IntPoly::one(),
                IntPoly::new(vec![BigInt::from(-1), BigInt::from(l)]),
                IntPoly::monomial(BigInt::from(u1 * d1), 2),
            ])
            .expect("nonzero");
            ensure(collapsed == quadratic, || format!("({u1},0,{l},{d1},0) gives {collapsed}"))?;
            let rank1 = solve_series(&WeightSpec::rank1(u1, l, d1), 40).into_a00();
            ensure(verify_algebraic_equation(&quadratic, &rank1, 40), || "quadratic fails on the rank-1 series".into())?;
        }
    }
    let degenerate = cases.iter().filter(|c| c[1] == 0 && c[4] == 0).count();
    Ok(format!("{} weight assignments (weights <= 4, {degenerate} with u2 = d2 = 0) hold mod x^40", cases.len()))
}

fn degeneracies() -> Outcome {
    let dyck = WeightSpec::rank1(1, 0, 1);
    for n in 0..=15usize {
        let even = count_paths_dp(&dyck, 2 * n, 0, 0);
        ensure(even == catalan(n as u64), || format!("length {}: {even}", 2 * n))?;
        ensure(count_paths_dp(&dyck, 2 * n + 1, 0, 0) == BigUint::from(0u8), || format!("odd length {}", 2 * n + 1))?;
    }
    let aerated = rank1_closed_form_series(1, 0, 1, 32);
    for n in 0..32 {
        let want = if n % 2 == 0 { BigInt::from(catalan(n as u64 / 2)) } else { BigInt::from(0) };
        ensure(aerated.coeff(n).to_integer() == want, || format!("closed form at l = 0, n = {n}"))?;
    }
    for r in 1..=4 {
        let fam = solve_series(&WeightSpec::all_ones(r), 30);
        for s in 0..r {
            for t in 0..r {
                ensure(fam.get(s, t) == fam.get(t, s), || format!("rank {r}: A_{{{s},{t}}} != A_{{{t},{s}}}"))?;
            }
        }
    }
    let c = catalan_series(60);
    let identity = &(&CoeffSeries::one(60) - &c) + &(&c * &c).shift(1);
    ensure(identity.is_zero(), || "1 - C + y C^2 leaves a residual".into())?;
    Ok("Dyck collapse n <= 30; symmetry ranks 1..4 to order 30; Catalan identity mod y^60".into())
}

fn main() {
    let criteria: [Criterion; 8] = [
        (1, "table reproduction", Some(5), tables),
        (2, "published equations verify", Some(10), published_equations),
        (3, "equation rediscovery", Some(660), rediscovery),
        (4, "recurrence rediscovery", Some(120), recurrences),
        (5, "rank-1 recoloring identity", None, theorem_identity),
        (6, "bijection suite", None, bijections),
        (7, "general-weight sextic", None, general_sextic),
        (8, "degeneracy and symmetry", None, degeneracies),
    ];
    let mut failed = 0;
    for (id, name, budget, check) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > Duration::from_secs(b) => Err(format!("over the {b} s budget")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("PASS criterion {id} ({name}) [{:.2}s]: {detail}", elapsed.as_secs_f64()),
            Err(reason) => {
                failed += 1;
                println!("FAIL criterion {id} ({name}) [{:.2}s]: {reason}", elapsed.as_secs_f64());
            }
        }
    }
    println!("acceptance: {}/8 criteria pass", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
