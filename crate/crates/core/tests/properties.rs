use num_bigint::{BigInt, BigUint};
use proptest::prelude::*;

use homswap::coloring::{chromatic_binomial, chromatic_value};
use homswap::gt::check_strongly_gt;
use homswap::hom::{count_hom, count_hom_backtracking, count_hom_weighted, WeightVector};
use homswap::numeric::rational_from_uint;
use homswap::polytope::lattice_count;
use homswap::swap::verify_swap_bijection;
use homswap::target::{certify_target, TargetVerdict};
use homswap::{bipartite_double, disjoint_double, SimpleGraph, TargetGraph};

fn pairs(n: usize, loops: bool) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for u in 0..n {
        for v in u..n {
            if u != v || loops {
                out.push((u, v));
            }
        }
    }
    out
}

fn pick(all: Vec<(usize, usize)>, mask: u64) -> Vec<(usize, usize)> {
    all.into_iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .map(|(_, e)| e)
        .collect()
}

fn source(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
    (1..=max_n, any::<u64>())
        .prop_map(|(n, mask)| SimpleGraph::from_edges(n, &pick(pairs(n, false), mask)).unwrap())
}

fn target(max_n: usize) -> impl Strategy<Value = TargetGraph> {
    (1..=max_n, any::<u64>())
        .prop_map(|(n, mask)| TargetGraph::from_edges(n, &pick(pairs(n, true), mask)).unwrap())
}

fn permute(g: &SimpleGraph, seed: u64) -> SimpleGraph {
    let n = g.n();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        perm.swap(i, (s >> 33) as usize % (i + 1));
    }
    g.relabel(&perm)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn elimination_matches_backtracking(g in source(6), h in target(4)) {
        prop_assert_eq!(count_hom(&g, &h).unwrap(), count_hom_backtracking(&g, &h, None).unwrap());
    }

    #[test]
    fn unit_weights_give_plain_count(g in source(6), h in target(4)) {
        let w = count_hom_weighted(&g, &h, &WeightVector::unit(h.n())).unwrap();
        prop_assert_eq!(w, rational_from_uint(&count_hom(&g, &h).unwrap()));
    }

    #[test]
    fn adding_target_edges_is_monotone(g in source(6), h in target(4), u in 0usize..4, v in 0usize..4) {
        let (u, v) = (u % h.n(), v % h.n());
        let mut edges = h.non_loop_edges();
        edges.extend(h.loops().into_iter().map(|x| (x, x)));
        edges.push((u, v));
        let bigger = TargetGraph::from_edges(h.n(), &edges).unwrap();
        prop_assert!(count_hom(&g, &bigger).unwrap() >= count_hom(&g, &h).unwrap());
    }

    #[test]
    fn disjoint_double_squares(g in source(5), h in target(4)) {
        let single = count_hom(&g, &h).unwrap();
        prop_assert_eq!(count_hom(&disjoint_double(&g).unwrap(), &h).unwrap(), &single * &single);
    }

    #[test]
    fn relabelling_preserves_counts_and_canon(g in source(7), h in target(3), seed in any::<u64>()) {
        let p = permute(&g, seed);
        prop_assert_eq!(count_hom(&p, &h).unwrap(), count_hom(&g, &h).unwrap());
        prop_assert_eq!(p.canonical_form().unwrap().code, g.canonical_form().unwrap().code);
    }

    #[test]
    fn certificates_check(h in target(5)) {
        prop_assert!(certify_target(&h).check(&h));
    }

    #[test]
    fn targets_swap_and_are_strongly_gt(g in source(4), h in target(4)) {
        prop_assume!(certify_target(&h).verdict == TargetVerdict::Target);
        let r = verify_swap_bijection(&g, &h, Some(1 << 20)).unwrap();
        prop_assert!(r.passed());
        let s = check_strongly_gt(&g, &h).unwrap();
        prop_assert!(s.verdict.holds());
        let crossed = count_hom(&bipartite_double(&g).unwrap(), &h).unwrap();
        prop_assert!(crossed >= count_hom(&disjoint_double(&g).unwrap(), &h).unwrap());
    }

    #[test]
    fn targets_are_hereditary(h in target(5), keep in any::<u8>()) {
        prop_assume!(certify_target(&h).verdict == TargetVerdict::Target);
        let kept: Vec<usize> = (0..h.n()).filter(|v| keep >> v & 1 == 1).collect();
        prop_assume!(!kept.is_empty());
        let sub = h.induced(&kept).unwrap();
        prop_assert_eq!(certify_target(&sub).verdict, TargetVerdict::Target);
    }

    #[test]
    fn binomial_basis_evaluates_to_colourings(g in source(6), q in 0usize..7) {
        let p = chromatic_binomial(&g).unwrap();
        let direct = chromatic_value(&g, q).unwrap();
        prop_assert_eq!(p.evaluate(&BigInt::from(q)), BigInt::from(direct));
    }

    #[test]
    fn unit_lattice_counts_independent_sets(g in source(7)) {
        let n = g.n();
        let independent = (0u32..1 << n)
            .filter(|&s| g.edges().iter().all(|&(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
            .count();
        prop_assert_eq!(lattice_count(&g, 1).unwrap(), BigUint::from(independent));
    }
}
