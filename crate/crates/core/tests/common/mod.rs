//! Strategies, brute-force oracles and property checks shared by the
//! property suite and the acceptance suite.

#![allow(dead_code)]

use std::collections::BTreeSet;

use lapcs::conflict::{build_conflict_graph, in_conflict};
use lapcs::construct::{
    construct_common_subsequence, initial_candidates, successor_candidates, weight, ConstructionParams,
    Constructor, OccurrenceIndex,
};
use lapcs::io::{generate_instance, parse_instance, serialize_instance, GeneratorConfig};
use lapcs::mis::{solve_mis, BitGraph, Budget};
use lapcs::model::{
    build_assignment_universe, decode_subsequence, is_valid_solution, ArcAnnotatedSequence, Assignment,
    Instance, Solution,
};
use lapcs::solvers::{run_heuristic, run_hyb_ea, run_ms_heur, Params, RunLimit};
use lapcs::{lcs_length, lcs_traceback};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type CheckResult = Result<(), TestCaseError>;

// ---------------------------------------------------------------- oracles

/// Size of a maximum independent set by enumerating every vertex subset.
/// `adj[v]` is the neighbourhood bitmask of `v`; at most 20 vertices.
pub fn brute_force_mis(adj: &[u32]) -> usize {
    let n = adj.len();
    assert!(n <= 20);
    let mut independent = vec![false; 1 << n];
    independent[0] = true;
    let mut best = 0;
    for mask in 1usize..(1 << n) {
        let v = mask.trailing_zeros() as usize;
        let rest = mask & (mask - 1);
        if independent[rest] && adj[v] as usize & rest == 0 {
            independent[mask] = true;
            best = best.max(mask.count_ones() as usize);
        }
    }
    best
}

pub fn is_subsequence(s: &[u8], of: &[u8]) -> bool {
    let mut it = of.iter();
    s.iter().all(|c| it.any(|d| d == c))
}

/// LCS length by enumerating every subsequence of the shorter string.
pub fn brute_force_lcs(x: &[u8], y: &[u8]) -> usize {
    let (short, long) = if x.len() <= y.len() { (x, y) } else { (y, x) };
    let mut best = 0;
    for mask in 0u32..(1 << short.len()) {
        let k = mask.count_ones() as usize;
        if k <= best {
            continue;
        }
        let sub: Vec<u8> = (0..short.len()).filter(|b| mask >> b & 1 == 1).map(|b| short[b]).collect();
        if is_subsequence(&sub, long) {
            best = k;
        }
    }
    best
}

/// Pairwise compatibility, decided by the validity checker on two-element
/// solutions only. Both validity conditions are pairwise, so a subset is
/// valid iff all of its pairs are.
pub fn compat_masks(items: &[Assignment], inst: &Instance) -> Vec<u32> {
    assert!(items.len() <= 32);
    let mut masks = vec![0u32; items.len()];
    for u in 0..items.len() {
        for v in u + 1..items.len() {
            let pair = Solution::new(vec![items[u], items[v]]);
            if is_valid_solution(&pair, inst).unwrap().valid {
                masks[u] |= 1 << v;
                masks[v] |= 1 << u;
            }
        }
    }
    masks
}

/// Largest valid subset of `items` by enumeration (at most 20 items).
pub fn brute_force_max_valid_subset(items: &[Assignment], inst: &Instance) -> usize {
    let compat = compat_masks(items, inst);
    let conflict: Vec<u32> = compat
        .iter()
        .enumerate()
        .map(|(v, &m)| !m & !(1 << v) & ((1u64 << items.len()) - 1) as u32)
        .collect();
    brute_force_mis(&conflict)
}

// ------------------------------------------------------------- generators

pub fn random_sequence<R: Rng>(rng: &mut R, len: usize, alphabet: &[u8]) -> Vec<u8> {
    (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
}

pub fn random_arcs<R: Rng>(rng: &mut R, len: usize, max_arcs: usize) -> Vec<(u32, u32)> {
    let mut arcs = BTreeSet::new();
    if len >= 2 {
        let k = rng.gen_range(0..=max_arcs);
        for _ in 0..k {
            let a = rng.gen_range(1..=len as u32);
            let b = rng.gen_range(1..=len as u32);
            if a != b {
                arcs.insert((a.min(b), a.max(b)));
            }
        }
    }
    arcs.into_iter().collect()
}

pub fn random_instance<R: Rng>(rng: &mut R, lx: usize, ly: usize, alphabet: &[u8], max_arcs: usize) -> Instance {
    let x = random_sequence(rng, lx, alphabet);
    let y = random_sequence(rng, ly, alphabet);
    let px = random_arcs(rng, lx, max_arcs);
    let py = random_arcs(rng, ly, max_arcs);
    Instance::new(
        ArcAnnotatedSequence::new(x, px).unwrap(),
        ArcAnnotatedSequence::new(y, py).unwrap(),
    )
}

fn sequence_strategy(max_len: usize, alphabet: &'static [u8]) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(prop::sample::select(alphabet), 0..=max_len)
}

fn annotated_strategy(max_len: usize, alphabet: &'static [u8], max_arcs: usize) -> impl Strategy<Value = ArcAnnotatedSequence> {
    sequence_strategy(max_len, alphabet).prop_flat_map(move |seq| {
        let len = seq.len() as u32;
        let arcs = if len >= 2 {
            prop::collection::btree_set((1..=len, 1..=len), 0..=max_arcs).boxed()
        } else {
            Just(BTreeSet::new()).boxed()
        };
        arcs.prop_map(move |pairs| {
            let arcs: BTreeSet<(u32, u32)> =
                pairs.into_iter().filter(|(a, b)| a != b).map(|(a, b)| (a.min(b), a.max(b))).collect();
            ArcAnnotatedSequence::new(seq.clone(), arcs).unwrap()
        })
    })
}

pub fn instance_strategy(max_len: usize, alphabet: &'static [u8], max_arcs: usize) -> impl Strategy<Value = Instance> {
    (
        annotated_strategy(max_len, alphabet, max_arcs),
        annotated_strategy(max_len, alphabet, max_arcs),
    )
        .prop_map(|(x, y)| Instance::new(x, y))
}

/// Random graph on up to `max_n` vertices as neighbourhood bitmasks plus
/// the edge list.
pub fn graph_strategy(max_n: usize) -> impl Strategy<Value = (usize, Vec<(usize, usize)>)> {
    (0..=max_n, 0.0..1.0f64, any::<u64>()).prop_map(|(n, density, seed)| random_graph(n, density, seed))
}

pub fn random_graph(n: usize, density: f64, seed: u64) -> (usize, Vec<(usize, usize)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen::<f64>() < density {
                edges.push((u, v));
            }
        }
    }
    (n, edges)
}

pub fn adjacency_masks(n: usize, edges: &[(usize, usize)]) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for &(u, v) in edges {
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
    }
    adj
}

/// Parameters small enough for fast, reproducible solver runs.
pub fn quick_params() -> Params {
    Params::new(3, 0.3, 2, 1.0).with_node_cap(20_000)
}

const DNA: &[u8] = b"ACGU";
const BINARY: &[u8] = b"AC";

// ---------------------------------------------------------- property checks

pub fn check_decoded_is_common_subsequence(inst: &Instance) -> CheckResult {
    let raw = lcs_traceback(inst.x.symbols(), inst.y.symbols()).unwrap();
    let s = lapcs::repair(&raw, inst, Budget::Unlimited).unwrap();
    prop_assert!(is_valid_solution(&s, inst).unwrap().valid);
    let z = decode_subsequence(&s, inst).unwrap();
    prop_assert_eq!(z.len(), s.len());
    prop_assert!(is_subsequence(z.as_bytes(), inst.x.symbols()));
    prop_assert!(is_subsequence(z.as_bytes(), inst.y.symbols()));
    Ok(())
}

pub fn check_validity_order_independent(inst: &Instance, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe = build_assignment_universe(inst);
    let mut picked: Vec<Assignment> = universe.into_iter().filter(|_| rng.gen_bool(0.3)).collect();
    let forward = is_valid_solution(&Solution::new(picked.clone()), inst).unwrap();
    picked.reverse();
    let backward = is_valid_solution(&Solution::new(picked.clone()), inst).unwrap();
    prop_assert_eq!(forward, backward);
    Ok(())
}

pub fn check_universe_size(inst: &Instance) -> CheckResult {
    let expected: usize = DNA
        .iter()
        .map(|&c| {
            inst.x.symbols().iter().filter(|&&d| d == c).count() * inst.y.symbols().iter().filter(|&&d| d == c).count()
        })
        .sum();
    prop_assert_eq!(build_assignment_universe(inst).len(), expected);
    Ok(())
}

pub fn check_subsets_of_valid_are_valid(inst: &Instance, seed: u64) -> CheckResult {
    let raw = lcs_traceback(inst.x.symbols(), inst.y.symbols()).unwrap();
    let s = lapcs::repair(&raw, inst, Budget::Unlimited).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let sub: Solution = s.iter().filter(|_| rng.gen_bool(0.5)).collect();
        prop_assert!(is_valid_solution(&sub, inst).unwrap().valid);
    }
    Ok(())
}

pub fn check_lcs_laws(x: &[u8], y: &[u8]) -> CheckResult {
    let n = lcs_length(x, y);
    prop_assert_eq!(n, lcs_length(y, x));
    prop_assert_eq!(lcs_length(x, x), x.len());
    prop_assert_eq!(n, brute_force_lcs(x, y));
    let t = lcs_traceback(x, y).unwrap();
    prop_assert_eq!(t.len(), n);
    let inst = Instance::new(ArcAnnotatedSequence::plain(x.to_vec()), ArcAnnotatedSequence::plain(y.to_vec()));
    prop_assert!(is_valid_solution(&t, &inst).unwrap().valid);
    Ok(())
}

pub fn check_conflict_bridge(inst: &Instance, seed: u64) -> CheckResult {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut vars = build_assignment_universe(inst);
    vars.retain(|_| rng.gen_bool(0.7));
    let g = build_conflict_graph(&vars, inst).unwrap();
    for _ in 0..32 {
        let set: Vec<usize> = (0..vars.len()).filter(|_| rng.gen_bool(0.25)).collect();
        let s = g.solution_of(&set);
        prop_assert_eq!(g.is_independent(&set), is_valid_solution(&s, inst).unwrap().valid);
    }
    Ok(())
}

pub fn check_conflict_relation(inst: &Instance) -> CheckResult {
    let universe = build_assignment_universe(inst);
    let (px, py) = (inst.x.arcs(), inst.y.arcs());
    let arc_free = px.is_empty() && py.is_empty();
    for &a in universe.iter().take(12) {
        prop_assert!(in_conflict(a, a, px, py).is_err());
        for &b in universe.iter().take(12) {
            if a == b {
                continue;
            }
            let c = in_conflict(a, b, px, py).unwrap();
            prop_assert_eq!(c, in_conflict(b, a, px, py).unwrap());
            if arc_free {
                let increasing = (a.i < b.i && a.j < b.j) || (b.i < a.i && b.j < a.j);
                prop_assert_eq!(c, !increasing);
            }
        }
    }
    Ok(())
}

pub fn check_mis(n: usize, edges: &[(usize, usize)]) -> CheckResult {
    let g = BitGraph::from_edges(n, edges.iter().copied());
    let r = solve_mis(&g, Budget::Unlimited);
    prop_assert!(g.is_independent(&r.best_set));
    for &(u, v) in edges {
        prop_assert!(!(r.best_set.contains(&u) && r.best_set.contains(&v)));
    }
    prop_assert!(r.proven_optimal);
    prop_assert_eq!(r.best_set.len(), brute_force_mis(&adjacency_masks(n, edges)));
    let small = solve_mis(&g, Budget::Nodes(3));
    let again = solve_mis(&g, Budget::Nodes(3));
    prop_assert_eq!(&small.best_set, &again.best_set);
    prop_assert!(g.is_independent(&small.best_set));
    let larger = solve_mis(&g, Budget::Nodes(30));
    prop_assert!(larger.best_set.len() >= small.best_set.len());
    Ok(())
}

pub fn check_construction(inst: &Instance, seed: u64, d_rate: f64, l_size: usize) -> CheckResult {
    let idx = OccurrenceIndex::new(inst);
    let params = ConstructionParams::new(d_rate, l_size).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw = construct_common_subsequence(&idx, &params, &mut rng);
    for w in raw.as_slice().windows(2) {
        prop_assert!(w[0].i < w[1].i && w[0].j < w[1].j);
    }
    let alphabet_size = idx.shared_letters().count();
    prop_assert!(initial_candidates(&idx).len() <= alphabet_size);
    for &a in raw.as_slice() {
        prop_assert!(successor_candidates(&idx, a).len() <= alphabet_size);
    }
    let repaired = Constructor::new(inst).generate(&params, Budget::Nodes(10_000), &mut rng);
    prop_assert!(is_valid_solution(&repaired, inst).unwrap().valid);
    prop_assert!(repaired.len() <= lcs_length(inst.x.symbols(), inst.y.symbols()));

    let greedy = ConstructionParams::new(1.0, l_size).unwrap();
    let a = construct_common_subsequence(&idx, &greedy, &mut ChaCha8Rng::seed_from_u64(seed));
    let b = construct_common_subsequence(&idx, &greedy, &mut ChaCha8Rng::seed_from_u64(seed ^ 0x5eed));
    prop_assert_eq!(a, b);
    Ok(())
}

/// Among all occurrences of a letter after an anchor, the first-occurrence
/// pair has the smallest anchored weight.
pub fn check_first_occurrence_minimizes_weight(inst: &Instance) -> CheckResult {
    let idx = OccurrenceIndex::new(inst);
    let (lx, ly) = (inst.lx() as u32, inst.ly() as u32);
    let universe = build_assignment_universe(inst);
    let mut anchors: Vec<Option<Assignment>> = vec![None];
    anchors.extend(universe.iter().filter(|a| a.i < lx && a.j < ly).map(|&a| Some(a)));
    for anchor in anchors {
        let cands = match anchor {
            None => initial_candidates(&idx),
            Some(a) => successor_candidates(&idx, a),
        };
        for c in cands {
            let letter = inst.x.at(c.i);
            let wc = weight(c, anchor, lx, ly).unwrap();
            let (ai, aj) = anchor.map_or((0, 0), |a| (a.i, a.j));
            for z in universe.iter().filter(|z| z.i > ai && z.j > aj && inst.x.at(z.i) == letter) {
                prop_assert!(wc <= weight(*z, anchor, lx, ly).unwrap());
                if *z != c {
                    prop_assert!(wc < weight(*z, anchor, lx, ly).unwrap());
                }
            }
        }
    }
    Ok(())
}

pub fn check_solver_outputs(inst: &Instance, seed: u64) -> CheckResult {
    let params = quick_params();
    let upper = lcs_length(inst.x.symbols(), inst.y.symbols());

    let h = run_heuristic(inst, Budget::Nodes(20_000)).unwrap();
    prop_assert!(is_valid_solution(&h.best, inst).unwrap().valid);
    prop_assert!(h.best_value <= upper);

    let m = run_ms_heur(inst, &params, RunLimit::Iterations(5), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
    prop_assert!(is_valid_solution(&m.best, inst).unwrap().valid);

    let limit = RunLimit::Iterations(3);
    let e = run_hyb_ea(inst, &params, limit, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
    prop_assert!(is_valid_solution(&e.best, inst).unwrap().valid);
    prop_assert_eq!(e.best_value, e.best.len());
    prop_assert!(e.trace.windows(2).all(|w| w[0].value < w[1].value));
    prop_assert_eq!(e.trace.last().map_or(0, |t| t.value), e.best_value);

    let again = run_hyb_ea(inst, &params, limit, &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
    prop_assert_eq!(&again.best, &e.best);
    prop_assert_eq!(again.iterations, e.iterations);
    Ok(())
}

/// The first iteration's constructions, replayed with an identical
/// generator, never beat the result of a one-iteration run.
pub fn check_merge_keeps_best_construction(inst: &Instance, seed: u64) -> CheckResult {
    let params = quick_params();
    let e = run_hyb_ea(inst, &params, RunLimit::Iterations(1), &mut ChaCha8Rng::seed_from_u64(seed)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ctor = Constructor::new(inst);
    let cp = params.construction();
    let best_single = (0..params.n_sols)
        .map(|_| ctor.generate(&cp, Budget::Nodes(20_000), &mut rng).len())
        .max()
        .unwrap_or(0);
    prop_assert!(e.best_value >= best_single);
    Ok(())
}

pub fn check_generator(n: usize, n_arcs: usize, seed: u64) -> CheckResult {
    let inst = generate_instance(&GeneratorConfig::new(n, n_arcs, seed)).unwrap();
    for seq in [&inst.x, &inst.y] {
        prop_assert_eq!(seq.len(), n);
        let arcs: Vec<(u32, u32)> = seq.arcs().iter().collect();
        prop_assert_eq!(arcs.len(), n_arcs);
        let distinct: BTreeSet<_> = arcs.iter().collect();
        prop_assert_eq!(distinct.len(), n_arcs);
        prop_assert!(arcs.iter().all(|&(a, b)| 1 <= a && a < b && b as usize <= n));
    }
    prop_assert_eq!(parse_instance(&serialize_instance(&inst)).unwrap(), inst);
    Ok(())
}

pub fn check_round_trip(inst: &Instance) -> CheckResult {
    let text = serialize_instance(inst);
    let back = parse_instance(&text).unwrap();
    prop_assert_eq!(&back, inst);
    prop_assert_eq!(serialize_instance(&back), text);
    Ok(())
}

// ------------------------------------------------------- suite for reuse

fn run<S: Strategy>(cases: u32, strategy: S, check: impl Fn(S::Value) -> CheckResult) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    let mut runner = TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    });
    runner.run(&strategy, check).map_err(|e| e.to_string())
}

/// Runs every property with `cases` random cases each; one entry per
/// property with its outcome.
pub fn run_property_suite(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    vec![
        (
            "decoded solution is a common subsequence",
            run(cases, instance_strategy(12, DNA, 6), |i| check_decoded_is_common_subsequence(&i)),
        ),
        (
            "validity does not depend on order",
            run(cases, (instance_strategy(8, BINARY, 4), any::<u64>()), |(i, s)| {
                check_validity_order_independent(&i, s)
            }),
        ),
        ("universe size", run(cases, instance_strategy(15, DNA, 3), |i| check_universe_size(&i))),
        (
            "subsets of valid solutions are valid",
            run(cases, (instance_strategy(12, DNA, 6), any::<u64>()), |(i, s)| {
                check_subsets_of_valid_are_valid(&i, s)
            }),
        ),
        (
            "lcs laws and brute force",
            run(cases, (sequence_strategy(10, DNA), sequence_strategy(10, DNA)), |(x, y)| {
                check_lcs_laws(&x, &y)
            }),
        ),
        (
            "independence equals validity",
            run(cases, (instance_strategy(7, BINARY, 4), any::<u64>()), |(i, s)| {
                check_conflict_bridge(&i, s)
            }),
        ),
        ("conflict relation", run(cases, instance_strategy(6, BINARY, 3), |i| check_conflict_relation(&i))),
        (
            "conflict relation without arcs",
            run(cases, instance_strategy(6, BINARY, 0), |i| check_conflict_relation(&i)),
        ),
        ("mis optimum and budgets", run(cases, graph_strategy(16), |(n, e)| check_mis(n, &e))),
        (
            "construction invariants",
            run(
                cases,
                (instance_strategy(20, DNA, 6), any::<u64>(), 0.0..=1.0f64, 1usize..=4),
                |(i, s, d, l)| check_construction(&i, s, d, l),
            ),
        ),
        (
            "first occurrence minimizes weight",
            run(cases, instance_strategy(30, DNA, 0), |i| check_first_occurrence_minimizes_weight(&i)),
        ),
        (
            "solver outputs",
            run(cases, (instance_strategy(20, DNA, 8), any::<u64>()), |(i, s)| check_solver_outputs(&i, s)),
        ),
        (
            "merge keeps best construction",
            run(cases, (instance_strategy(20, DNA, 8), any::<u64>()), |(i, s)| {
                check_merge_keeps_best_construction(&i, s)
            }),
        ),
        (
            "generator counts",
            run(cases, (1usize..40, any::<u64>()).prop_flat_map(|(n, s)| (Just(n), 0..=n * (n - 1) / 2, Just(s))), |(n, k, s)| {
                check_generator(n, k, s)
            }),
        ),
        ("round trip", run(cases, instance_strategy(25, DNA, 8), |i| check_round_trip(&i))),
    ]
}
