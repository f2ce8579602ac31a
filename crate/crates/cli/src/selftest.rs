//! Quick property suites behind `bracketeer selftest`.

use std::io::Write;
use std::time::Instant;

use bracketeer::bracket::{closed_form, recursive_bracket, state_sum_bracket, ClosedForm};
use bracketeer::census::{bracket_census, GraphKind, Variant};
use bracketeer::graph::{Family, LoopedGraph};
use bracketeer::knot::{knot_invariants, parse_gauss};
use bracketeer::reidemeister::{derive_config_table, random_move, word_correspondence_check, CONFIG_TABLE};
use bracketeer::{bracket, jones};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::CliError;

type Suite = fn() -> Result<String, String>;

const SUITES: [(&str, Suite); 6] = [
    ("engines agree", engines),
    ("closed forms", closed_forms),
    ("move invariance", moves),
    ("knot pipeline", knots),
    ("configuration table", configs),
    ("small census", small_census),
];

fn random_graph(rng: &mut StdRng, n: usize) -> LoopedGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(0.4) {
                edges.push((u, v));
            }
        }
    }
    let loops: Vec<usize> = (0..n).filter(|_| rng.gen_bool(0.3)).collect();
    LoopedGraph::from_edges(n, &edges, &loops).expect("valid by construction")
}

fn engines() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(1);
    for i in 0..60 {
        let g = random_graph(&mut rng, i % 9);
        let s = state_sum_bracket(&g).map_err(|e| e.to_string())?;
        if s != recursive_bracket(&g) {
            return Err(format!("disagreement on\n{g}"));
        }
    }
    Ok("60 random graphs".into())
}

fn closed_forms() -> Result<String, String> {
    let mut checked = 0;
    let kinds = [
        (ClosedForm::Complete, Family::Complete),
        (ClosedForm::Lollipop, Family::Lollipop),
        (ClosedForm::PathSum, Family::Path),
        (ClosedForm::PathRecurrence, Family::Path),
    ];
    for (kind, family) in kinds {
        for n in 1..=7 {
            let expected = closed_form(kind, n).map_err(|e| e.to_string())?;
            let g = LoopedGraph::family(family, n).map_err(|e| e.to_string())?;
            if bracket(&g) != expected {
                return Err(format!("{}_{n}", kind.name()));
            }
            checked += 1;
        }
    }
    Ok(format!("{checked} family members"))
}

fn moves() -> Result<String, String> {
    let mut rng = StdRng::seed_from_u64(2);
    let mut g = LoopedGraph::family(Family::Path, 3).map_err(|e| e.to_string())?;
    let target = jones(&g).map_err(|e| e.to_string())?;
    for step in 0..100 {
        let (m, h) = random_move(&g, &mut rng, 2, 8).ok_or("no legal move")?;
        if jones(&h).map_err(|e| e.to_string())? != target {
            return Err(format!("step {step}: {m} changed the Jones polynomial"));
        }
        g = h;
    }
    Ok("100 random moves".into())
}

fn knots() -> Result<String, String> {
    let code = parse_gauss("a+ b+ c+ a+ b+ c+").map_err(|e| e.to_string())?;
    let inv = knot_invariants(&code).map_err(|e| e.to_string())?;
    let v = inv.jones.to_string();
    if v != "-t^4 + t^3 + t" {
        return Err(format!("trefoil gave {v}"));
    }
    Ok("trefoil".into())
}

fn configs() -> Result<String, String> {
    let derived = derive_config_table().map_err(|e| e.to_string())?;
    if derived.len() != CONFIG_TABLE.len() {
        return Err(format!("oracle kept {} configurations", derived.len()));
    }
    let words = word_correspondence_check().map_err(|e| e.to_string())?;
    Ok(format!("{} configurations, {} words", derived.len(), words.len()))
}

fn small_census() -> Result<String, String> {
    let r = bracket_census(4, GraphKind::Looped, Variant::Full).map_err(|e| e.to_string())?;
    if r.classes != 90 || r.distinct != r.classes {
        return Err(format!("{} classes, {} distinct", r.classes, r.distinct));
    }
    Ok("looped n=4: 90 classes".into())
}

/// Runs every suite and returns the number that failed.
pub(crate) fn run(out: &mut dyn Write) -> Result<usize, CliError> {
    let mut failures = 0;
    for (name, suite) in SUITES {
        let start = Instant::now();
        match suite() {
            Ok(detail) => writeln!(out, "PASS  {name}: {detail} ({:.1?})", start.elapsed())?,
            Err(detail) => {
                failures += 1;
                writeln!(out, "FAIL  {name}: {detail}")?;
            }
        }
    }
    Ok(failures)
}
