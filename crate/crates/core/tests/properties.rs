mod common;

use common::*;
use lapcs::io::{generate_instance, GeneratorConfig};
use proptest::prelude::*;

const DNA: &[u8] = b"ACGU";
const BINARY: &[u8] = b"AC";

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decoded_solution_is_common_subsequence(inst in instance_strategy(12, DNA, 6)) {
        check_decoded_is_common_subsequence(&inst)?;
    }

    #[test]
    fn validity_is_order_independent(inst in instance_strategy(8, BINARY, 4), seed in any::<u64>()) {
        check_validity_order_independent(&inst, seed)?;
    }

    #[test]
    fn universe_size_is_sum_of_letter_products(inst in instance_strategy(15, DNA, 3)) {
        check_universe_size(&inst)?;
    }

    #[test]
    fn subsets_of_valid_solutions_are_valid(inst in instance_strategy(12, DNA, 6), seed in any::<u64>()) {
        check_subsets_of_valid_are_valid(&inst, seed)?;
    }

    #[test]
    fn lcs_matches_brute_force(
        x in prop::collection::vec(prop::sample::select(DNA), 0..=10),
        y in prop::collection::vec(prop::sample::select(DNA), 0..=10),
    ) {
        check_lcs_laws(&x, &y)?;
    }

    #[test]
    fn independence_equals_validity(inst in instance_strategy(7, BINARY, 4), seed in any::<u64>()) {
        check_conflict_bridge(&inst, seed)?;
    }

    #[test]
    fn conflict_is_symmetric_and_irreflexive(inst in instance_strategy(6, BINARY, 3)) {
        check_conflict_relation(&inst)?;
    }

    #[test]
    fn conflict_without_arcs_is_order_violation(inst in instance_strategy(6, BINARY, 0)) {
        check_conflict_relation(&inst)?;
    }

    #[test]
    fn mis_is_optimal_and_budgets_behave((n, edges) in graph_strategy(16)) {
        check_mis(n, &edges)?;
    }

    #[test]
    fn construction_invariants(
        inst in instance_strategy(20, DNA, 6),
        seed in any::<u64>(),
        d_rate in 0.0..=1.0f64,
        l_size in 1usize..=4,
    ) {
        check_construction(&inst, seed, d_rate, l_size)?;
    }

    #[test]
    fn first_occurrence_pair_minimizes_weight(inst in instance_strategy(30, DNA, 0)) {
        check_first_occurrence_minimizes_weight(&inst)?;
    }

    #[test]
    fn solvers_return_valid_reproducible_results(inst in instance_strategy(20, DNA, 8), seed in any::<u64>()) {
        check_solver_outputs(&inst, seed)?;
    }

    #[test]
    fn merging_keeps_best_construction(inst in instance_strategy(20, DNA, 8), seed in any::<u64>()) {
        check_merge_keeps_best_construction(&inst, seed)?;
    }

    #[test]
    fn generator_produces_exact_arc_counts((n, k, seed) in (1usize..40, any::<u64>())
        .prop_flat_map(|(n, s)| (Just(n), 0..=n * (n - 1) / 2, Just(s))))
    {
        check_generator(n, k, seed)?;
    }

    #[test]
    fn instance_round_trip(inst in instance_strategy(25, DNA, 8)) {
        check_round_trip(&inst)?;
    }
}

#[test]
fn letter_frequencies_are_roughly_uniform() {
    let inst = generate_instance(&GeneratorConfig::new(20_000, 0, 11)).unwrap();
    let mut counts = [0usize; 4];
    for seq in [&inst.x, &inst.y] {
        for &c in seq.symbols() {
            counts[DNA.iter().position(|&d| d == c).unwrap()] += 1;
        }
    }
    let expected = 40_000.0 / 4.0;
    let chi2: f64 = counts.iter().map(|&c| (c as f64 - expected).powi(2) / expected).sum();
    // 3 degrees of freedom; 16.27 is the 0.999 quantile
    assert!(chi2 < 16.27, "chi-square {chi2} for counts {counts:?}");
}
