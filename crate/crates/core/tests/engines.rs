use bracketeer::bracket::{compute_bracket, recursive_bracket, state_sum_bracket, BracketConfig, EngineChoice};
use bracketeer::gf2::adjacency_with_mask;
use bracketeer::poly::{Monomial, MultiPoly};
use bracketeer::{bracket, canonical_form, LoopedGraph};
use proptest::prelude::*;

fn graph(max_n: usize) -> impl Strategy<Value = LoopedGraph> {
    (0..=max_n)
        .prop_flat_map(|n| {
            let pairs = n * n.saturating_sub(1) / 2;
            (Just(n), proptest::collection::vec(any::<bool>(), pairs), proptest::collection::vec(any::<bool>(), n))
        })
        .prop_map(|(n, edge_bits, loop_bits)| {
            let mut edges = Vec::new();
            let mut k = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if edge_bits[k] {
                        edges.push((u, v));
                    }
                    k += 1;
                }
            }
            let loops: Vec<usize> = (0..n).filter(|&v| loop_bits[v]).collect();
            LoopedGraph::from_edges(n, &edges, &loops).unwrap()
        })
}

/// Textbook state sum: Gaussian elimination over bool rows, one mask at a time.
fn naive_bracket(g: &LoopedGraph) -> MultiPoly {
    let n = g.n();
    let mut p = MultiPoly::zero();
    for delta in 0..(1u64 << n) {
        let mut rows: Vec<Vec<bool>> = (0..n)
            .map(|i| {
                (0..n).map(|j| if i == j { g.has_loop(i) ^ (delta >> i & 1 == 1) } else { g.has_edge(i, j) }).collect()
            })
            .collect();
        let mut rank = 0;
        for col in 0..n {
            if let Some(pivot) = (rank..n).find(|&r| rows[r][col]) {
                rows.swap(rank, pivot);
                for r in 0..n {
                    if r != rank && rows[r][col] {
                        let src = rows[rank].clone();
                        for (x, y) in rows[r].iter_mut().zip(src) {
                            *x ^= y;
                        }
                    }
                }
                rank += 1;
            }
        }
        let k = delta.count_ones() as i32;
        p.add_term(Monomial::abd(n as i32 - k, k, (n - rank) as i32), 1.into());
    }
    p
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn engines_match_naive_state_sum(g in graph(7)) {
        let expected = naive_bracket(&g);
        prop_assert_eq!(state_sum_bracket(&g).unwrap(), expected.clone());
        prop_assert_eq!(recursive_bracket(&g), expected);
    }

    #[test]
    fn compare_engine_accepts(g in graph(9)) {
        let config = BracketConfig { engine: EngineChoice::BothAndCompare, ..Default::default() };
        prop_assert!(compute_bracket(&g, &config).is_ok());
    }

    #[test]
    fn isomorphism_invariance(g in graph(7), seed in any::<u64>()) {
        let n = g.n();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.permute(&perm);
        prop_assert_eq!(canonical_form(&g).unwrap(), canonical_form(&h).unwrap());
        prop_assert_eq!(bracket(&g), bracket(&h));
    }

    #[test]
    fn disjoint_union_multiplies(g in graph(4), h in graph(4)) {
        let u = g.disjoint_union(&h).unwrap();
        prop_assert_eq!(bracket(&u), &bracket(&g) * &bracket(&h));
    }

    #[test]
    fn toggling_every_loop_swaps_a_and_b(g in graph(7)) {
        prop_assert_eq!(bracket(&g.toggle_all_loops()), bracket(&g).swap_ab());
    }

    #[test]
    fn bracket_at_one_counts_states(g in graph(8)) {
        let total = bracket(&g).eval_abd(1, 1, 1).unwrap();
        prop_assert_eq!(total, num_bigint::BigInt::from(1u64 << g.n()));
    }

    #[test]
    fn masked_adjacency_is_symmetric(g in graph(8), delta in any::<u64>()) {
        let m = adjacency_with_mask(&g, delta & ((1u64 << g.n()) - 1)).unwrap();
        prop_assert!(m.is_symmetric());
    }
}
