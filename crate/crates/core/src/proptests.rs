//! Randomized cross-checks between the independent counting, series and guessing paths.

use crate::algebraics::{guess_algebraic_equation, verify_algebraic_equation};
use crate::counting::{count_paths_dp, motzkin_sequence, rank1_explicit, rank1_recurrence_seq, CountTable};
use crate::genfunc::solve_series;
use crate::paths::{enumerate_paths, path_weight};
use crate::recurrence::{apply_recurrence, guess_recurrence, published, verify_recurrence};
use crate::wire;
use crate::{BigInt, BigUint, IntPoly, Recurrence, WeightSpec};
use proptest::prelude::*;

fn spec_strategy(max_rank: usize, max_weight: u64) -> impl Strategy<Value = WeightSpec> {
    (1..=max_rank).prop_flat_map(move |r| {
        (
            prop::collection::vec(0..=max_weight, r),
            0..=max_weight,
            prop::collection::vec(0..=max_weight, r),
        )
            .prop_map(|(u, l, d)| WeightSpec::new(u, l, d).unwrap())
    })
}

fn ints(v: Vec<BigUint>) -> Vec<BigInt> {
    v.into_iter().map(BigInt::from).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dp_counts_weighted_enumeration(spec in spec_strategy(3, 2), n in 0usize..=6, s in 0u64..=2, t in 0u64..=2) {
        let paths = enumerate_paths(&spec, n, s, t, true).unwrap();
        prop_assert_eq!(BigUint::from(paths.len()), count_paths_dp(&spec, n, s, t));
        let uncolored = enumerate_paths(&spec, n, s, t, false).unwrap();
        let weighted: BigUint = uncolored.iter().map(path_weight).sum();
        prop_assert_eq!(weighted, count_paths_dp(&spec, n, s, t));
    }

    #[test]
    fn reversal_swaps_up_and_down(spec in spec_strategy(3, 3), n in 0usize..=10, s in 0u64..=3, t in 0u64..=3) {
        let rev = WeightSpec::new(spec.down_weights().to_vec(), spec.level(), spec.up_weights().to_vec()).unwrap();
        prop_assert_eq!(count_paths_dp(&spec, n, s, t), count_paths_dp(&rev, n, t, s));
    }

    #[test]
    fn table_ignores_slack(spec in spec_strategy(2, 2), slack in 1usize..=4) {
        let a = CountTable::build(&spec, 6, 3);
        let b = CountTable::build_with_slack(&spec, 6, 3, slack);
        prop_assert!(a.entries().eq(b.entries()));
        for n in 0..=6 {
            for s in 0..=3 {
                for t in 0..=3 {
                    prop_assert_eq!(a.entry(n, s, t), &count_paths_dp(&spec, n, s, t));
                }
            }
        }
    }

    #[test]
    fn series_matches_dp(spec in spec_strategy(3, 2)) {
        let series = solve_series(&spec, 12).into_a00();
        let dp = motzkin_sequence(&spec, 12);
        for (n, v) in dp.into_iter().enumerate() {
            prop_assert_eq!(series.coeff(n).to_integer(), BigInt::from(v));
        }
    }

    #[test]
    fn rank1_three_ways(u in 0u64..=5, l in 0u64..=5, d in 0u64..=5) {
        let dp = motzkin_sequence(&WeightSpec::rank1(u, l, d), 25);
        for (n, v) in dp.iter().enumerate() {
            prop_assert_eq!(&rank1_explicit(u, l, d, n), v);
        }
        if let Ok(rec) = rank1_recurrence_seq(u, l, d, 25) {
            prop_assert_eq!(rec, dp.clone());
        }
        prop_assert!(verify_recurrence(&published::rank1(u, l, d), &ints(dp)));
    }

    #[test]
    fn normalization_is_scale_invariant(k in prop::sample::select(vec![-6i64, -2, -1, 3, 7])) {
        let rec = published::prodinger_rank2();
        let scaled = Recurrence::new(rec.coeff_polys().iter().map(|p| p.scale(&BigInt::from(k))).collect()).unwrap();
        prop_assert_eq!(scaled, rec);
    }

    #[test]
    fn applied_sequences_verify(u in 1u64..=4, l in 0u64..=4, d in 1u64..=4, len in 3usize..=40) {
        let rec = published::rank1(u, l, d);
        let seeds = ints(motzkin_sequence(&WeightSpec::rank1(u, l, d), 2));
        let out = apply_recurrence(&rec, &seeds, len).unwrap();
        prop_assert!(verify_recurrence(&rec, &out));
        prop_assert_eq!(out, ints(motzkin_sequence(&WeightSpec::rank1(u, l, d), len)));
    }

    #[test]
    fn guessed_rank1_recurrence_extends(u in 1u64..=4, l in 0u64..=4, d in 1u64..=4) {
        let terms = ints(motzkin_sequence(&WeightSpec::rank1(u, l, d), 60));
        let rec = guess_recurrence(&terms, 2, 1).unwrap().expect("rank 1 has a 3-term relation");
        let longer = ints(motzkin_sequence(&WeightSpec::rank1(u, l, d), 120));
        prop_assert!(verify_recurrence(&rec, &longer));
    }

    #[test]
    fn guessed_equation_holds_at_twice_the_order(u in 1u64..=3, l in 0u64..=3, d in 1u64..=3) {
        let spec = WeightSpec::rank1(u, l, d);
        let s = solve_series(&spec, 30).into_a00();
        let eq = guess_algebraic_equation(&s, 2, None, 8).unwrap().equation.expect("quadratic");
        prop_assert!(verify_algebraic_equation(&eq, &solve_series(&spec, 60).into_a00(), 60));
    }

    #[test]
    fn recurrence_wire_round_trip(polys in prop::collection::vec(prop::collection::vec(-50i64..=50, 1..4), 1..5)) {
        if let Some(rec) = Recurrence::new(polys.iter().map(|c| IntPoly::from_i64(c)).collect()) {
            prop_assert_eq!(wire::recurrence_from_json(&wire::recurrence_to_json(&rec)).unwrap(), rec);
        }
    }

    #[test]
    fn sequence_wire_round_trip(v in prop::collection::vec(any::<i64>(), 0..20)) {
        let seq: Vec<BigInt> = v.into_iter().map(BigInt::from).collect();
        prop_assert_eq!(wire::sequence_from_text(&wire::sequence_to_json(&seq)).unwrap(), seq.clone());
        prop_assert_eq!(wire::sequence_from_text(&wire::sequence_to_csv(&seq)).unwrap(), seq);
    }
}

#[test]
fn rank3_equation_holds_on_held_out_terms() {
    let spec = WeightSpec::all_ones(3);
    let eq = guess_algebraic_equation(&solve_series(&spec, 60).into_a00(), 8, None, 8)
        .unwrap()
        .equation
        .unwrap();
    assert_eq!(eq.y_degree(), 8);
    assert!(verify_algebraic_equation(&eq, &solve_series(&spec, 150).into_a00(), 150));
}
