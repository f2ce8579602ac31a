//! Acceptance checks, one PASS/FAIL line per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use bracketeer::bracket::{
    bracket_via_interlace, closed_form, interlace_q, interlace_via_brackets, recursive_bracket, state_sum_bracket,
    structural_counts, ClosedForm,
};
use bracketeer::canon::{canonical_form_capped, MAX_CANON_VERTICES};
use bracketeer::census::{
    census_records, enumerate_classes, mixed_connectivity_collisions, summarize, GraphKind, Variant,
};
use bracketeer::knot::{knot_invariants, parse_gauss};
use bracketeer::reidemeister::{
    apply_move, derive_config_table, equivalence_search, random_move, word_correspondence_check, MoveDescriptor,
    SearchBounds, SearchOutcome, CONFIG_TABLE,
};
use bracketeer::{bracket, jones, reduced_bracket, Family, LoopedGraph, MultiPoly, OnePoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let took = start.elapsed();
    ensure(took <= limit, || format!("took {took:.1?}, limit {limit:?}"))?;
    Ok(took)
}

fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> LoopedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    let loops: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.5)).collect();
    LoopedGraph::from_edges(n, &edges, &loops).unwrap()
}

fn small_looped_classes() -> Vec<LoopedGraph> {
    (0..=5).flat_map(|n| enumerate_classes(n, GraphKind::Looped).unwrap()).collect()
}

fn census_counts(n: usize, kind: GraphKind, classes: usize, distinct: usize) -> Outcome {
    let start = Instant::now();
    let records = census_records(n, kind).map_err(|e| e.to_string())?;
    let report = summarize(&records, Variant::Full);
    ensure(report.classes == classes && report.distinct == distinct, || {
        format!("{} classes, {} distinct brackets", report.classes, report.distinct)
    })?;
    let took = within(start, Duration::from_secs(300))?;
    Ok(format!("{classes} classes, {distinct} distinct brackets in {took:.1?}"))
}

fn c1_looped_six() -> Outcome {
    census_counts(6, GraphKind::Looped, 5096, 5027)
}

fn c2_simple_seven() -> Outcome {
    census_counts(7, GraphKind::Simple, 1044, 1028)
}

fn c3_perfect_small() -> Outcome {
    let mut cases = Vec::new();
    for n in 0..=5 {
        cases.push((n, GraphKind::Looped));
    }
    cases.push((6, GraphKind::Simple));
    let mut summary = Vec::new();
    for (n, kind) in cases {
        let records = census_records(n, kind).map_err(|e| e.to_string())?;
        for variant in [Variant::Full, Variant::OneVariable] {
            let r = summarize(&records, variant);
            ensure(r.distinct == r.classes, || format!("{kind:?} n={n} {variant:?}: {}/{}", r.distinct, r.classes))?;
        }
        if n >= 5 {
            summary.push(format!("{kind:?} n={n} {}/{}", records.len(), records.len()));
        }
    }
    Ok(format!("all classes separated by both variants ({})", summary.join(", ")))
}

fn c4_engines() -> Outcome {
    let start = Instant::now();
    let classes = small_looped_classes();
    for g in &classes {
        ensure(recursive_bracket(g) == state_sum_bracket(g).unwrap(), || format!("mismatch on {g}"))?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for _ in 0..200 {
        let n = rng.gen_range(0..=10);
        let g = random_graph(&mut rng, n);
        ensure(recursive_bracket(&g) == state_sum_bracket(&g).unwrap(), || format!("mismatch on {g}"))?;
    }
    let took = within(start, Duration::from_secs(120))?;
    Ok(format!("{} classes and 200 random graphs agree in {took:.1?}", classes.len()))
}

fn c5_closed_forms() -> Outcome {
    let state_sum = |family, n| state_sum_bracket(&LoopedGraph::family(family, n).unwrap()).unwrap();
    for n in 0..=8 {
        ensure(closed_form(ClosedForm::Complete, n).unwrap() == state_sum(Family::Complete, n), || format!("K_{n}"))?;
    }
    for n in 1..=10 {
        ensure(closed_form(ClosedForm::Lollipop, n).unwrap() == state_sum(Family::Lollipop, n), || format!("L_{n}"))?;
    }
    for n in 0..=10 {
        let p = state_sum(Family::Path, n);
        ensure(closed_form(ClosedForm::PathSum, n).unwrap() == p, || format!("P_{n} sum"))?;
        ensure(closed_form(ClosedForm::PathRecurrence, n).unwrap() == p, || format!("P_{n} recurrence"))?;
    }
    Ok("K_n (n<=8), L_n (n<=10), P_n sum and recurrence (n<=10) match the state sum".into())
}

fn c6_identities() -> Outcome {
    let classes = small_looped_classes();
    let brackets: Vec<MultiPoly> = classes.iter().map(bracket).collect();
    let mut checks = 0usize;
    for (g, p) in classes.iter().zip(&brackets) {
        let n = g.n();
        ensure(bracket(&g.toggle_all_loops()) == p.swap_ab(), || format!("loop toggle symmetry on {g}"))?;
        let v = jones(g).map_err(|e| e.to_string())?;
        ensure(v.value_at_one() == 1.into(), || format!("V(1) on {g}"))?;
        ensure(v.derivative_at_one_times_four() == 0.into(), || format!("V'(1) on {g}"))?;
        ensure(structural_counts(p).ok() == Some((n, g.loop_count())), || format!("structural counts on {g}"))?;
        let at_d1 = p.substitute(bracketeer::Var::D, &MultiPoly::one()).map_err(|e| e.to_string())?;
        let a_plus_b: MultiPoly = "A + B".parse().unwrap();
        ensure(at_d1 == a_plus_b.pow(n as u32), || format!("[G](A,B,1) on {g}"))?;
        let reduced: OnePoly = reduced_bracket(g).map_err(|e| e.to_string())?;
        ensure(reduced.terms().all(|(k, _)| (k - n as i64).rem_euclid(2) == 0), || format!("parity on {g}"))?;
        ensure(
            interlace_via_brackets(g).map_err(|e| e.to_string())? == interlace_q(g).map_err(|e| e.to_string())?,
            || format!("subset identity on {g}"),
        )?;
        if n <= 4 {
            ensure(bracket_via_interlace(g).map_err(|e| e.to_string())? == *p, || format!("z identity on {g}"))?;
        }
        checks += 1;
    }
    let mut pairs = 0usize;
    for (i, g) in classes.iter().enumerate() {
        for (j, h) in classes.iter().enumerate() {
            if g.n() == 0 || h.n() == 0 || g.n() + h.n() > 5 {
                continue;
            }
            let union = g.disjoint_union(h).unwrap();
            ensure(bracket(&union) == &brackets[i] * &brackets[j], || format!("multiplicativity on {g} + {h}"))?;
            pairs += 1;
        }
    }
    let g1 = LoopedGraph::from_edges(3, &[(0, 1)], &[1]).unwrap();
    let g2 = LoopedGraph::from_edges(3, &[(0, 2), (1, 2)], &[1]).unwrap();
    let factor: MultiPoly = "A*d - A".parse().unwrap();
    let quadratic: MultiPoly = "B^2 + A*B*d + A^2".parse().unwrap();
    ensure(&bracket(&g1) - &bracket(&g2) == &factor * &quadratic, || "difference identity".into())?;
    Ok(format!("{checks} classes, {pairs} disjoint unions, difference identity"))
}

fn c7_invariance() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let minus_a3: OnePoly = "-A^3".parse().unwrap();
    let minus_a_3: OnePoly = "-A^-3".parse().unwrap();
    let mut counts = [0usize; 3];
    let mut total = 0;
    while total < 1000 || counts.iter().any(|&c| c < 100) {
        ensure(total < 200_000, || format!("move mix too thin after {total} moves: {counts:?}"))?;
        let n = rng.gen_range(0..=7);
        let g = random_graph(&mut rng, n);
        let Some((m, h)) = random_move(&g, &mut rng, 2, 7) else { continue };
        total += 1;
        counts[m.kind() as usize] += 1;
        ensure(jones(&h).unwrap() == jones(&g).unwrap(), || format!("Jones changed by {m} on {g}"))?;
        let before = reduced_bracket(&g).unwrap();
        let after = reduced_bracket(&h).unwrap();
        let factor = |looped: bool| if looped { &minus_a_3 } else { &minus_a3 };
        let consistent = match m {
            MoveDescriptor::O1Insert { looped } => after == &before * factor(looped),
            MoveDescriptor::O1Remove { v } => &after * factor(g.has_loop(v)) == before,
            _ => after == before,
        };
        ensure(consistent, || format!("<G> changed wrongly by {m} on {g}"))?;
    }
    Ok(format!(
        "{total} moves (Ω1 {}, Ω2 {}, Ω3 {}) preserve V; Ω2/Ω3 preserve <G>; Ω1 scales by -A^±3",
        counts[0], counts[1], counts[2]
    ))
}

fn c8_knots() -> Outcome {
    let cases = [("a+ b+ a+ b+", "-t^(5/2) + t^(3/2) + t"), ("a+ b+ c+ a+ b+ c+", "-t^4 + t^3 + t"), ("a+ a+", "1")];
    for (code, expected) in cases {
        let inv = knot_invariants(&parse_gauss(code).unwrap()).map_err(|e| e.to_string())?;
        ensure(inv.jones.to_string() == expected, || format!("{code}: got {}", inv.jones))?;
    }
    Ok("virtual P_2 code, trefoil and one-kink unknot give the expected Jones polynomials".into())
}

fn c9_p6() -> Outcome {
    let p6 = LoopedGraph::family(Family::Path, 6).unwrap();
    for mask in 0u64..64 {
        let g = p6.toggle_loops_mask(mask);
        ensure(!jones(&g).unwrap().is_one(), || format!("loop mask {mask:06b} gives V = 1"))?;
    }
    Ok("no loop assignment on P_6 has V = 1 (64 checked)".into())
}

fn c10_configurations() -> Outcome {
    let table = derive_config_table().map_err(|e| e.to_string())?;
    ensure(table == CONFIG_TABLE, || "derived table differs".into())?;
    let words = word_correspondence_check().map_err(|e| e.to_string())?;
    Ok(format!("oracle keeps exactly {} toggle pairs; {} words match their configurations", table.len(), words.len()))
}

fn c11_search() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let mut times = Vec::new();
    for _ in 0..100 {
        let n = rng.gen_range(0..=5);
        let g = random_graph(&mut rng, n);
        let bounds = SearchBounds { max_vertices: n + 6, max_expansions: 100_000 };
        let mut h = g.clone();
        for _ in 0..3 {
            h = random_move(&h, &mut rng, 2, bounds.max_vertices).expect("Ω1 insertion is always available").1;
        }
        let start = Instant::now();
        match equivalence_search(&g, &h, bounds).map_err(|e| e.to_string())? {
            SearchOutcome::Found { path, .. } => {
                let end = path.iter().try_fold(g.clone(), |x, m| apply_move(&x, m)).map_err(|e| e.to_string())?;
                let form = |x: &LoopedGraph| canonical_form_capped(x, MAX_CANON_VERTICES).unwrap();
                ensure(form(&end) == form(&h), || format!("path from {g} misses {h}"))?;
            }
            SearchOutcome::NotFound { expansions } => {
                return Err(format!("no path from {g} to {h} after {expansions} expansions"))
            }
        }
        times.push(start.elapsed());
    }
    times.sort();
    let median = times[times.len() / 2];
    ensure(median <= Duration::from_secs(10), || format!("median {median:.1?}"))?;
    Ok(format!("100/100 paths found; median {median:.2?}, max {:.2?}", times[times.len() - 1]))
}

fn c12_connectivity() -> Outcome {
    let records = census_records(6, GraphKind::Looped).map_err(|e| e.to_string())?;
    let mixed = mixed_connectivity_collisions(&records);
    ensure(!mixed.is_empty(), || "no collision mixes connected and disconnected graphs".into())?;
    Ok(format!("{} colliding pairs mix a connected and a disconnected graph", mixed.len()))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 12] = [
        ("census looped n=6", c1_looped_six),
        ("census simple n=7", c2_simple_seven),
        ("perfect discrimination at small n", c3_perfect_small),
        ("engine equivalence", c4_engines),
        ("closed forms", c5_closed_forms),
        ("bracket identities", c6_identities),
        ("Reidemeister invariance", c7_invariance),
        ("knot pipeline", c8_knots),
        ("P_6 loop assignments", c9_p6),
        ("configuration table", c10_configurations),
        ("equivalence search round trip", c11_search),
        ("collision connectivity", c12_connectivity),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let result = std::panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        match result {
            Ok(detail) => println!("PASS {:>2} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {detail}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
