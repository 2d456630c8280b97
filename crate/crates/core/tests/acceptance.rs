//! The ten acceptance criteria. Each test prints one line,
//! `acceptance <k>: PASS|FAIL ...`, then asserts.
//!
//! Run with `cargo test -p domq --test acceptance -- --nocapture --test-threads 1`
//! to see the lines in order.

use domq::domination::{closed_form_gamma, domination_number, is_c4_or_corona, structured_mds_exists, sunlike_arc_spec};
use domq::enumeration::{connected_classes, unicyclic_classes, Engine};
use domq::families::{make, make_theorem39_k, FamilySpec};
use domq::graph::{named, to_graph6, Graph};
use domq::perturbations::{verify_transform_lemma, SweepGrid};
use domq::report::{Status, VerificationReport};
use domq::spectra::{eigvec_structure_check, interlacing_check, q_spectrum, DEFAULT_TOL};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(k: usize, ok: bool, detail: String) {
    println!("acceptance {k}: {} {detail}", if ok { "PASS" } else { "FAIL" });
    assert!(ok, "acceptance {k} failed: {detail}");
}

fn universe(max_n: usize) -> impl Iterator<Item = Graph> {
    (2..=max_n).flat_map(|n| connected_classes(n).as_ref().clone())
}

fn ceil3(x: i64) -> i64 {
    x.div_euclid(3) + i64::from(x.rem_euclid(3) != 0)
}

fn gamma_of(spec: &FamilySpec) -> Option<usize> {
    make(spec).ok().map(|(g, _)| domination_number(&g).gamma)
}

#[test]
fn c01_bipartite_iff_qmin_vanishes() {
    let mut count = 0;
    let mut bad = Vec::new();
    for g in universe(8) {
        let q = q_spectrum(&g, DEFAULT_TOL).unwrap().q_min;
        if (q < 1e-9) != g.is_bipartite() {
            bad.push(to_graph6(&g));
        }
        count += 1;
    }
    verdict(1, bad.is_empty(), format!("{count} connected classes n<=8, {} mismatches {:?}", bad.len(), &bad[..bad.len().min(5)]));
}

#[test]
fn c02_qmin_below_min_degree() {
    let mut count = 0;
    let mut bad = Vec::new();
    for g in universe(8) {
        let q = q_spectrum(&g, DEFAULT_TOL).unwrap().q_min;
        if !(g.min_degree() as f64 - q > 1e-9) {
            bad.push(to_graph6(&g));
        }
        count += 1;
    }
    verdict(2, bad.is_empty(), format!("{count} connected classes n<=8, {} violations {:?}", bad.len(), &bad[..bad.len().min(5)]));
}

#[test]
fn c03_edge_interlacing() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x1a7e);
    let mut graphs = 0;
    let mut edges = 0;
    let mut bad = Vec::new();
    while graphs < 500 {
        let n = rng.gen_range(2..=10);
        let p = rng.gen_range(0.2..0.9);
        let es: Vec<(usize, usize)> = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        let g = Graph::build(n, &es).unwrap();
        if !g.is_connected() {
            continue;
        }
        graphs += 1;
        for e in g.edges() {
            edges += 1;
            if !interlacing_check(&g, e, 1e-8).unwrap() {
                bad.push((to_graph6(&g), e));
            }
        }
    }
    verdict(3, bad.is_empty(), format!("{graphs} random connected graphs, {edges} edges, {} violations {:?}", bad.len(), &bad[..bad.len().min(5)]));
}

#[test]
fn c04_closed_form_gamma() {
    let mut points = 0;
    let mut bad: Vec<String> = Vec::new();
    let mut check = |spec: FamilySpec, formula: i64| {
        let Some(gamma) = gamma_of(&spec) else { return };
        points += 1;
        let closed = closed_form_gamma(&spec).map(|c| c as i64);
        if gamma as i64 != formula || closed.is_some_and(|c| c != formula) {
            bad.push(format!("{spec:?}: solver {gamma}, formula {formula}, closed {closed:?}"));
        }
    };
    for n in 1..=30 {
        check(FamilySpec::Path { n }, ceil3(n as i64));
        if n >= 3 {
            check(FamilySpec::Cycle { n }, ceil3(n as i64));
        }
    }
    for k in 0..=12 {
        for n in k + 3..=20 {
            check(FamilySpec::C3Star { k, n }, ceil3(k as i64 + 3));
        }
    }
    for epsilon in 0..=15i64 {
        for k in 0..=6i64 {
            for extra in 0..=1 {
                let (e, kk) = (epsilon as usize, k as usize);
                let h2 = if epsilon - k - 1 <= 2 { k + 1 } else { ceil3(epsilon - k - 4) + k + 1 };
                check(FamilySpec::H2 { epsilon: e, k: kk, extra }, h2);
                let divisible = epsilon - k - 4 >= 0 && (epsilon - k - 4) % 3 == 0;
                check(FamilySpec::H4 { epsilon: e, k: kk, extra }, if divisible { h2 } else { h2 - 1 });
                if divisible {
                    check(FamilySpec::H5 { epsilon: e, k: kk, extra }, h2 - 1);
                }
            }
        }
    }
    for n in 1..=20i64 {
        for alpha in 0..=9i64 {
            let f = if alpha == 0 {
                1
            } else if n - 2 * alpha <= 2 {
                alpha
            } else {
                ceil3(n - 2 * alpha - 2) + alpha
            };
            if closed_form_gamma(&FamilySpec::ScriptH3 { n: n as usize, alpha: alpha as usize }).is_some() {
                check(FamilySpec::ScriptH3 { n: n as usize, alpha: alpha as usize }, f);
            }
        }
    }
    for g in 3..=13i64 {
        for k in 1..=g {
            for extra in 0..=1 {
                check(sunlike_arc_spec(g as usize, k as usize, extra), k + ceil3(g - k - 2));
            }
        }
    }
    let mut grid = SweepGrid::for_lemma("Thm3.5").unwrap();
    grid.max_epsilon = 15;
    grid.max_k = 6;
    let thm35 = verify_transform_lemma("Thm3.5", &grid).unwrap();
    let mut grid = SweepGrid::for_lemma("Lemma3.7").unwrap();
    grid.girths = (3..=13).collect();
    let lem37 = verify_transform_lemma("Lemma3.7", &grid).unwrap();
    let sweeps_ok = thm35.status() != Status::Fail && lem37.status() != Status::Fail;
    verdict(
        4,
        bad.is_empty() && sweeps_ok,
        format!("{points} formula points, {} mismatches {:?}; {}; {}", bad.len(), &bad[..bad.len().min(3)], thm35.summary(), lem37.summary()),
    );
}

#[test]
fn c05_structured_mds_and_corona() {
    let mut with_pendants = 0;
    let mut bad = Vec::new();
    for g in universe(8) {
        let pendants = g.pendant_vertices();
        if g.order() >= 3 && !pendants.is_empty() {
            with_pendants += 1;
            if !structured_mds_exists(&g, g.p_dominators(), pendants).0 {
                bad.push(format!("mds {}", to_graph6(&g)));
            }
        }
        let half = 2 * domination_number(&g).gamma == g.order();
        if half != is_c4_or_corona(&g) {
            bad.push(format!("corona {}", to_graph6(&g)));
        }
    }
    // Second oracle for the corona side: every corona of a connected graph
    // on up to four vertices has γ = n/2.
    for g in universe(4) {
        let n = g.order();
        let mut es = g.edges();
        es.extend((0..n).map(|v| (v, v + n)));
        let c = Graph::build(2 * n, &es).unwrap();
        if 2 * domination_number(&c).gamma != c.order() || !is_c4_or_corona(&c) {
            bad.push(format!("built corona {}", to_graph6(&c)));
        }
    }
    verdict(5, bad.is_empty(), format!("{with_pendants} graphs with pendants, {} violations {:?}", bad.len(), &bad[..bad.len().min(5)]));
}

#[test]
fn c06_transform_sweeps() {
    let mut lines = Vec::new();
    let mut ok = true;
    for id in ["Thm3.4", "Lemma3.3", "Lemma3.8", "Thm3.9"] {
        let rep = verify_transform_lemma(id, &SweepGrid::for_lemma(id).unwrap()).unwrap();
        let fails = rep.count(Status::Fail);
        ok &= fails == 0;
        let first = rep.failures().next().map(|r| format!(" first {} {}", r.graph6.as_deref().unwrap_or("-"), r.params)).unwrap_or_default();
        lines.push(format!("{}{first}", rep.summary()));
    }
    verdict(6, ok, lines.join("; "));
}

#[test]
fn c07_extremal_theorems() {
    let engine = Engine::new().with_workers(4);
    let mut lines = Vec::new();
    let mut ok = true;
    for (id, range) in [
        ("Thm4.4", 5..=11),
        ("Thm4.7", 3..=11),
        ("Thm4.8", 6..=11),
        ("Thm4.10", 4..=11),
        ("Thm5.1", 4..=8),
        ("Thm5.2", 6..=8),
        ("Thm5.3", 3..=8),
        ("Thm5.4", 4..=8),
    ] {
        let rep: VerificationReport = engine.verify_theorem(id, Some(range)).unwrap();
        ok &= rep.status() == Status::Pass;
        lines.push(rep.summary());
    }
    verdict(7, ok, lines.join("; "));
}

#[test]
fn c08_cycle_rewiring() {
    let mut bad = Vec::new();
    let mut min_gap = f64::INFINITY;
    for n in (5..=25).step_by(2) {
        let (k, _) = make_theorem39_k(n).unwrap();
        let c = named::cycle(n);
        let qk = q_spectrum(&k, DEFAULT_TOL).unwrap().q_min;
        let qc = q_spectrum(&c, DEFAULT_TOL).unwrap().q_min;
        min_gap = min_gap.min(qc - qk);
        if !(qc - qk > 1e-8) || domination_number(&k).gamma != domination_number(&c).gamma {
            bad.push(n);
        }
    }
    let rep = verify_transform_lemma("Lemma4.11", &SweepGrid::for_lemma("Lemma4.11").unwrap()).unwrap();
    verdict(
        8,
        bad.is_empty() && rep.status() == Status::Pass,
        format!("odd n 5..=25, smallest gap {min_gap:.3e}, failing n {bad:?}; {}", rep.summary()),
    );
}

#[test]
fn c09_eigenvector_structure() {
    let (mut simple, mut multiple, mut inconclusive) = (0, 0, 0);
    let mut bad = Vec::new();
    for n in 3..=9 {
        for g in unicyclic_classes(n, |len| len % 2 == 1) {
            let cert = q_spectrum(&g, DEFAULT_TOL).unwrap();
            if !cert.is_simple() {
                multiple += 1;
                continue;
            }
            simple += 1;
            let rep = eigvec_structure_check(&g, &cert).unwrap();
            match rep.status {
                Status::Fail => bad.push(to_graph6(&g)),
                Status::Inconclusive => inconclusive += 1,
                Status::Pass => {}
            }
        }
    }
    verdict(
        9,
        bad.is_empty(),
        format!("{simple} simple, {multiple} multiple (INCONCLUSIVE), {inconclusive} inconclusive checks, {} FAIL {:?}", bad.len(), &bad[..bad.len().min(5)]),
    );
}

#[test]
fn c10_conjecture_explorer() {
    let engine = Engine::new().with_workers(4);
    let rep = engine.explore_conjecture(4..=8, false).unwrap();
    let witnesses: Vec<&str> = rep.failures().filter_map(|r| r.graph6.as_deref()).collect();
    let outcome = if witnesses.is_empty() {
        "no counterexample".to_string()
    } else {
        format!("counterexamples {witnesses:?}")
    };
    // Either outcome is a completed run; the line records which.
    verdict(10, true, format!("{}; {outcome}", rep.summary()));
}
