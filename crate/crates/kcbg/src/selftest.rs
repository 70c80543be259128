//! Cross-module invariant battery behind the `selftest` subcommand. Each
//! check re-derives a published identity or cross-checks two independent
//! routes at a scale that finishes in seconds.

use std::io::Write;

use crate::construct::{construct_g1, construct_g2, construct_negative};
use crate::error::Error;
use crate::graph::BipartiteGraph;
use crate::numth::{ceil_count, gcd, window_count};
use crate::params::{
    derive_params, enumerate_from_a, enumerate_from_b, enumerate_from_m, enumerate_from_n,
    ParamSet,
};
use crate::search::{conjecture_scan, solve_exhaustive, DEFAULT_SEARCH_BUDGET};
use crate::verify::{
    check_tilde_equivalence, is_k_critical_deficiency, is_k_critical_deletion,
    DEFAULT_DELETION_BUDGET,
};

type Check = (&'static str, fn() -> Result<(), String>);

const CHECKS: &[Check] = &[
    ("enumeration-round-trip", enumeration_round_trip),
    ("counting-lemmas", counting_lemmas),
    ("biregular-constructions", biregular_constructions),
    ("block-construction-iff", block_construction_iff),
    ("negative-witness", negative_witness),
    ("tilde-equivalence", tilde_equivalence),
    ("exact-optima", exact_optima),
    ("conjecture-cases", conjecture_cases),
    ("edge-addition-monotonicity", edge_addition_monotonicity),
];

/// Runs every check, printing one line per check. Returns the number of
/// failures.
pub fn run_battery(out: &mut dyn Write) -> usize {
    let mut failures = 0;
    for (name, check) in CHECKS {
        match check() {
            Ok(()) => writeln!(out, "selftest {name}: ok").expect("write"),
            Err(msg) => {
                failures += 1;
                writeln!(out, "selftest {name}: FAILED ({msg})").expect("write");
            }
        }
    }
    if failures == 0 {
        writeln!(out, "selftest: all {} checks passed", CHECKS.len()).expect("write");
    } else {
        writeln!(out, "selftest: {failures} of {} checks failed", CHECKS.len()).expect("write");
    }
    failures
}

fn fail(msg: String) -> Result<(), String> {
    Err(msg)
}

fn valid_paramsets(n_max: i64) -> Vec<ParamSet> {
    let mut out = Vec::new();
    for n in 3..=n_max {
        for m in 2..n {
            if let Ok(p) = derive_params(n, m) {
                out.push(p);
            }
        }
    }
    out
}

fn enumeration_round_trip() -> Result<(), String> {
    for p in valid_paramsets(120) {
        let hits = [
            enumerate_from_m(p.m).map_or(false, |v| v.contains(&p)),
            enumerate_from_a(p.a).map_or(false, |v| v.contains(&p)),
            enumerate_from_b(p.b).map_or(false, |v| v.contains(&p)),
            enumerate_from_n(p.n).map_or(false, |v| v.contains(&p)),
        ];
        if hits != [true; 4] {
            return fail(format!("({}, {}) missing from a key enumeration", p.n, p.m));
        }
    }
    Ok(())
}

fn counting_lemmas() -> Result<(), String> {
    for x in 2..=30i64 {
        for y in 1..x {
            if gcd(x, y) != 1 {
                continue;
            }
            for c in 1..=6i64 {
                let m = c * y;
                let mut total = 0;
                for j in 0..m {
                    let got = ceil_count(x, y, c, j).map_err(|e| e.to_string())?;
                    let brute = (0..c * x)
                        .filter(|&i| ((i * y + x - 1) / x).rem_euclid(m) == j)
                        .count() as i64;
                    if got != brute {
                        return fail(format!("ceil_count({x}, {y}, {c}, {j}) = {got} != {brute}"));
                    }
                    total += got;
                }
                if total != c * x {
                    return fail(format!("ceil_count totals {total} != {}", c * x));
                }
                for d in 1..c {
                    for l in 0..m {
                        let w = window_count(x, y, d, c, l).map_err(|e| e.to_string())?;
                        if w != d * x {
                            return fail(format!(
                                "window_count({x}, {y}, {d}, {c}, {l}) = {w} != {}",
                                d * x
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

fn biregular_constructions() -> Result<(), String> {
    for p in valid_paramsets(24) {
        let g = construct_g2(&p);
        if !is_k_critical_deficiency(&g).map_err(|e| e.to_string())?.is_k_critical {
            return fail(format!("G2({}, {}) failed the deficiency route", p.n, p.m));
        }
        if p.n <= 14 {
            let v = is_k_critical_deletion(&g, DEFAULT_DELETION_BUDGET)
                .map_err(|e| e.to_string())?;
            if !v.is_k_critical {
                return fail(format!("G2({}, {}) failed the deletion oracle", p.n, p.m));
            }
        }
    }
    Ok(())
}

fn block_construction_iff() -> Result<(), String> {
    for p in valid_paramsets(16) {
        let verdict = is_k_critical_deficiency(&construct_g1(&p)).map_err(|e| e.to_string())?;
        if verdict.is_k_critical != (p.c == p.m) {
            return fail(format!(
                "G1({}, {}): verdict {} but c = {}, m = {}",
                p.n, p.m, verdict.is_k_critical, p.c, p.m
            ));
        }
    }
    Ok(())
}

fn negative_witness() -> Result<(), String> {
    let mut seen = 0;
    for p in valid_paramsets(24) {
        let g = match construct_negative(&p) {
            Ok(g) => g,
            Err(Error::Inapplicable(_)) => continue,
            Err(e) => return fail(e.to_string()),
        };
        seen += 1;
        let verdict = is_k_critical_deficiency(&g).map_err(|e| e.to_string())?;
        if verdict.is_k_critical {
            return fail(format!("negative({}, {}) verified k-critical", p.n, p.m));
        }
        let w = verdict.witness.expect("failing deficiency verdict has a witness");
        let expect = vec![0usize, (p.m - 1) as usize];
        if w.b != expect || w.neighborhood_size != p.b as usize {
            return fail(format!(
                "negative({}, {}) witness {:?} size {}, expected {:?} size {}",
                p.n, p.m, w.b, w.neighborhood_size, expect, p.b
            ));
        }
    }
    if seen == 0 {
        return fail("no applicable negative cases found".into());
    }
    Ok(())
}

fn tilde_equivalence() -> Result<(), String> {
    // Constructions plus deterministic one-edge perturbations, covering both
    // verdict classes.
    let mut corpus: Vec<BipartiteGraph> = Vec::new();
    for p in valid_paramsets(10) {
        let g = construct_g2(&p);
        for j in 0..g.m() {
            let mut edges = g.edges();
            let e0 = edges
                .iter()
                .position(|&(_, jj)| jj == j)
                .expect("every v has an edge");
            edges.remove(e0);
            corpus.push(BipartiteGraph::build(g.n(), g.m(), &edges).expect("shape kept"));
        }
        for i in 0..g.n() {
            for j in 0..g.m() {
                if !g.has_edge(i, j) {
                    let mut edges = g.edges();
                    edges.push((i, j));
                    corpus.push(BipartiteGraph::build(g.n(), g.m(), &edges).expect("shape kept"));
                    break;
                }
            }
        }
        corpus.push(construct_g1(&p));
        corpus.push(g);
    }
    for g in &corpus {
        if !check_tilde_equivalence(g, DEFAULT_DELETION_BUDGET).map_err(|e| e.to_string())? {
            return fail(format!("routes disagree on an order ({}, {}) graph", g.n(), g.m()));
        }
    }
    Ok(())
}

fn exact_optima() -> Result<(), String> {
    for (n, m, want) in [(4, 3, (6, 2, 2)), (3, 2, (4, 2, 2))] {
        let r = solve_exhaustive(n, m, DEFAULT_SEARCH_BUDGET).map_err(|e| e.to_string())?;
        let got = (r.objective.e, r.objective.delta_u, r.objective.delta_v);
        if got != want {
            return fail(format!("optimum for ({n}, {m}) is {got:?}, expected {want:?}"));
        }
    }
    Ok(())
}

fn conjecture_cases() -> Result<(), String> {
    let report = conjecture_scan(10, DEFAULT_DELETION_BUDGET);
    if report.entries.is_empty() {
        return fail("conjecture scan produced no cases".into());
    }
    if !report.all_pass() {
        return fail(format!("{} counterexamples", report.counterexamples().len()));
    }
    Ok(())
}

fn edge_addition_monotonicity() -> Result<(), String> {
    for p in valid_paramsets(10) {
        let g = construct_g2(&p);
        for i in 0..g.n() {
            for j in 0..g.m() {
                if g.has_edge(i, j) {
                    continue;
                }
                let mut edges = g.edges();
                edges.push((i, j));
                let bigger = BipartiteGraph::build(g.n(), g.m(), &edges).expect("shape kept");
                if !is_k_critical_deficiency(&bigger)
                    .map_err(|e| e.to_string())?
                    .is_k_critical
                {
                    return fail(format!(
                        "G2({}, {}) plus (u{i}, v{j}) lost criticality",
                        p.n, p.m
                    ));
                }
            }
        }
    }
    Ok(())
}
