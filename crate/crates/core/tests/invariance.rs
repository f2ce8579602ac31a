use bracketeer::knot::{diagram_jones, interlacement_graph, knot_invariants, parse_gauss};
use bracketeer::reidemeister::{apply_move, legal_moves, random_move, MoveDescriptor};
use bracketeer::{bracket, canonical_form, jones, Family, LoopedGraph, MultiPoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn start(kind: u8, n: usize) -> LoopedGraph {
    let family = match kind % 4 {
        0 => Family::Path,
        1 => Family::Lollipop,
        2 => Family::Complete,
        _ => Family::Edgeless,
    };
    LoopedGraph::family(family, n).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_walks_preserve_jones(kind in 0u8..4, n in 1usize..5, seed in any::<u64>()) {
        let g = start(kind, n);
        let v = jones(&g).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut h = g;
        for _ in 0..12 {
            let (m, next) = random_move(&h, &mut rng, 2, 9).unwrap();
            prop_assert_eq!(jones(&next).unwrap(), v.clone(), "after {}", m);
            h = next;
        }
    }

    #[test]
    fn every_move_has_an_inverse(kind in 0u8..4, n in 1usize..5) {
        let g = start(kind, n);
        for m in legal_moves(&g, 2, 7) {
            let h = apply_move(&g, &m).unwrap();
            let back = apply_move(&h, &m.inverse(&g)).unwrap();
            prop_assert_eq!(canonical_form(&back).unwrap(), canonical_form(&g).unwrap(), "{}", m);
        }
    }

    #[test]
    fn descriptors_round_trip_through_text(kind in 0u8..4, n in 1usize..5) {
        for m in legal_moves(&start(kind, n), 2, 8) {
            let parsed: MoveDescriptor = m.to_string().parse().unwrap();
            prop_assert_eq!(parsed, m);
        }
    }
}

#[test]
fn omega_one_inserts_scale_the_bracket() {
    let g = LoopedGraph::family(Family::Path, 3).unwrap();
    let unlooped = apply_move(&g, &"O1+ unlooped".parse().unwrap()).unwrap();
    let looped = apply_move(&g, &"O1+ looped".parse().unwrap()).unwrap();
    let a: MultiPoly = "A*d + B".parse().unwrap();
    let b: MultiPoly = "A + B*d".parse().unwrap();
    assert_eq!(bracket(&unlooped), &bracket(&g) * &a);
    assert_eq!(bracket(&looped), &bracket(&g) * &b);
}

#[test]
fn knot_routes_agree_on_standard_diagrams() {
    let cases = [
        ("a+ b+ c+ a+ b+ c+", "-t^4 + t^3 + t"),
        ("a- b- c- a- b- c-", "t^-1 + t^-3 - t^-4"),
        ("a+ b+ a+ b+", "-t^(5/2) + t^(3/2) + t"),
    ];
    for (code, expected) in cases {
        let parsed = parse_gauss(code).unwrap();
        let inv = knot_invariants(&parsed).unwrap();
        assert_eq!(inv.jones.to_string(), expected, "{code}");
        let g = interlacement_graph(&parsed);
        let via_diagram = diagram_jones(&bracket(&g), g.n(), parsed.negative_count()).unwrap();
        assert_eq!(via_diagram, inv.jones);
    }
}
