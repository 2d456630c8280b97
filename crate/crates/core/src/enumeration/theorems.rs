//! Exhaustive checks of the extremal theorems and the conjecture explorer.

use std::collections::{BTreeMap, HashSet};
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::{extremal_of, in_script_m, odd_girth_preserving_subgraph, Engine, EnumError, Measurement, UniverseSpec};
use crate::domination::ceil_div;
use crate::families::{make_script_h3, recognize_curly_f};
use crate::graph::{canonical_graph6, is_isomorphic, to_graph6, Graph};
use crate::perturbations::{f_graphs, verify_transform_lemma, SweepGrid, TRANSFORM_LEMMAS};
use crate::report::{ReportRecord, Status, VerificationReport};
use crate::spectra::{q_min, q_spectrum, DEFAULT_TOL, THETA};

/// Theorem ids handled by [`Engine::verify_theorem`] besides the transform
/// lemmas.
pub const THEOREMS: &[&str] = &[
    "Thm3.2", "Thm4.4", "Thm4.5", "Thm4.7", "Thm4.8", "Thm4.10", "Thm5.1", "Thm5.2", "Thm5.3", "Thm5.4",
    "Lemma2.7",
];

/// The γ with `(n+1)/3 < γ <= n/2`.
pub fn gamma_window(n: usize) -> Vec<usize> {
    (1..=n / 2).filter(|&g| 3 * g > n + 1).collect()
}

/// Least `α >= 1` (at most `cap`) for which `𝓗_{3,α}` of order `n`
/// exists and `⌈(n-2α-2)/3⌉ + α = γ`.
pub fn least_alpha(n: usize, gamma: usize, cap: Option<usize>) -> Option<usize> {
    (1..=cap.unwrap_or(n).min(n)).find(|&a| {
        crate::families::script_h3_params(n, a).is_some()
            && ceil_div(n as i64 - 2 * a as i64 - 2, 3) + a as i64 == gamma as i64
    })
}

fn default_range(id: &str) -> RangeInclusive<usize> {
    match id {
        "Thm3.2" => 4..=10,
        "Thm4.4" | "Thm4.10" | "Thm4.5" => 4..=11,
        "Thm4.7" => 3..=11,
        "Thm4.8" => 6..=11,
        "Thm5.1" | "Thm5.4" => 4..=8,
        "Thm5.2" => 6..=8,
        "Thm5.3" | "Lemma2.7" => 3..=8,
        _ => 3..=8,
    }
}

fn h3(n: usize, alpha: usize) -> Graph {
    make_script_h3(n, alpha).expect("alpha chosen valid").0
}

fn vacuous(id: &str, mut params: Value) -> ReportRecord {
    params["vacuous"] = json!(true);
    ReportRecord::new(id, params, Status::Pass)
}

fn sorted_graph6(gs: &[Graph], cap: usize) -> Vec<String> {
    let mut v: Vec<String> = gs.iter().map(to_graph6).collect();
    v.sort();
    v.truncate(cap);
    v
}

impl Engine {
    /// Checks one theorem over its default orders, or over `range`.
    pub fn verify_theorem(&self, id: &str, range: Option<RangeInclusive<usize>>) -> Result<VerificationReport, EnumError> {
        if TRANSFORM_LEMMAS.contains(&id) {
            let mut grid = SweepGrid::for_lemma(id).expect("listed id");
            grid.margin = self.margin;
            if let Some(r) = &range {
                grid.max_n = *r.end();
            }
            return Ok(self.run(|| verify_transform_lemma(id, &grid))?);
        }
        if !THEOREMS.contains(&id) {
            return Err(EnumError::UnknownTheorem(id.to_string()));
        }
        let range = range.unwrap_or_else(|| default_range(id));
        let mut report = VerificationReport::new(id, format!("n={}..{}", range.start(), range.end()));
        for n in range {
            let recs = match id {
                "Thm3.2" => self.thm_3_2(n)?,
                "Thm4.4" => self.window_clauses(id, n, |n| UniverseSpec::unicyclic(n).girth(3))?,
                "Thm4.10" => self.window_clauses(id, n, |n| UniverseSpec::unicyclic(n).max_girth(5))?,
                "Thm5.4" => self.window_clauses(id, n, |n| UniverseSpec::nonbipartite(n).max_odd_girth(5))?,
                "Thm4.5" => self.thm_4_5(n)?,
                "Thm4.7" if n % 2 == 1 => {
                    let spec = UniverseSpec::unicyclic(n).gamma((n - 1) / 2);
                    vec![self.expect_minimizer(id, "", spec, (n - 3) / 2)?]
                }
                "Thm4.8" if n % 2 == 0 && n >= 6 => {
                    let spec = UniverseSpec::unicyclic(n).gamma(n / 2);
                    vec![self.expect_minimizer(id, "", spec, n / 2)?]
                }
                "Thm5.1" => self.thm_5_1(n)?,
                "Thm5.2" if n % 2 == 0 && n >= 6 => {
                    let spec = UniverseSpec::nonbipartite(n).gamma(n / 2);
                    vec![self.expect_minimizer(id, "", spec, n / 2)?]
                }
                "Thm5.3" if n % 2 == 1 => {
                    let spec = UniverseSpec::nonbipartite(n).gamma((n - 1) / 2);
                    vec![self.expect_minimizer(id, "", spec, (n - 3) / 2)?]
                }
                "Lemma2.7" => self.lemma_2_7(n)?,
                _ => Vec::new(),
            };
            for r in recs {
                report.push(r);
            }
        }
        Ok(report)
    }

    /// PASS when the unique minimizer of `spec` is `𝓗_{3,alpha}`;
    /// INCONCLUSIVE when it is among several within the margin.
    fn expect_minimizer(&self, id: &str, clause: &str, spec: UniverseSpec, alpha: usize) -> Result<ReportRecord, EnumError> {
        let n = spec.n;
        let expected = h3(n, alpha);
        let mut params = json!({"n": n, "alpha": alpha, "universe": spec.describe(),
                                "expected": canonical_graph6(&expected)});
        if !clause.is_empty() {
            params["clause"] = json!(clause);
        }
        if let Some(g) = spec.gamma_min.filter(|_| spec.gamma_min == spec.gamma_max) {
            params["gamma"] = json!(g);
        }
        let r = match self.extremal_search(&spec) {
            Ok(r) => r,
            Err(EnumError::EmptyUniverse) => {
                params["error"] = json!("empty universe");
                return Ok(ReportRecord::new(id, params, Status::Fail));
            }
            Err(e) => return Err(e),
        };
        let hit = r.minimizers.iter().any(|g| is_isomorphic(g, &expected));
        let status = if !hit {
            Status::Fail
        } else if r.unique {
            Status::Pass
        } else {
            Status::Inconclusive
        };
        params["universe_size"] = json!(r.universe_size);
        params["minimizers"] = json!(sorted_graph6(&r.minimizers, 8));
        params["runner_up_gap"] = json!(r.runner_up_gap.is_finite().then_some(r.runner_up_gap));
        let first = &r.minimizers[0];
        let gamma = self.measure(first).gamma;
        Ok(ReportRecord::new(id, params, status).with_graph(to_graph6(first), Some(gamma), Some(r.min_value)))
    }

    /// Clauses (i)-(iv) shared by the unicyclic girth-3, girth-at-most-5 and
    /// odd-girth-at-most-5 theorems.
    fn window_clauses(
        &self,
        id: &str,
        n: usize,
        base: impl Fn(usize) -> UniverseSpec,
    ) -> Result<Vec<ReportRecord>, EnumError> {
        if n < 4 {
            return Ok(Vec::new());
        }
        if n == 4 {
            return Ok(vec![self.expect_minimizer(id, "i", base(4), 1)?]);
        }
        let window = gamma_window(n);
        let mut out = Vec::new();
        if n % 2 == 1 {
            let gamma = (n - 1) / 2;
            if window.contains(&gamma) {
                out.push(self.expect_minimizer(id, "ii", base(n).gamma(gamma), (n - 3) / 2)?);
            } else {
                out.push(vacuous(id, json!({"n": n, "clause": "ii", "gamma": gamma})));
            }
        }
        if n % 2 == 0 && n >= 6 {
            out.push(self.expect_minimizer(id, "iii", base(n).gamma(n / 2), n / 2)?);
        }
        let mut any_iv = false;
        for &gamma in window.iter().filter(|&&g| n >= 2 * g + 2) {
            any_iv = true;
            match least_alpha(n, gamma, Some((n - 3) / 2)) {
                Some(alpha) => out.push(self.expect_minimizer(id, "iv", base(n).gamma(gamma), alpha)?),
                None => out.push(ReportRecord::new(
                    id,
                    json!({"n": n, "clause": "iv", "gamma": gamma, "error": "no admissible alpha"}),
                    Status::Fail,
                )),
            }
        }
        if !any_iv {
            out.push(vacuous(id, json!({"n": n, "clause": "iv"})));
        }
        Ok(out)
    }

    fn thm_3_2(&self, n: usize) -> Result<Vec<ReportRecord>, EnumError> {
        let mut out = Vec::new();
        for g in [3, 5, 7].into_iter().filter(|&g| g < n) {
            let all = self.enumerate_measured(&UniverseSpec::unicyclic(n).girth(g))?;
            let mut by_gamma: BTreeMap<usize, Vec<(Graph, Measurement)>> = BTreeMap::new();
            for (graph, m) in all {
                by_gamma.entry(m.gamma).or_default().push((graph, m));
            }
            for (gamma, class) in by_gamma {
                let r = extremal_of(&class, self.margin).expect("nonempty class");
                let mut status = Status::Fail;
                let mut witness = None;
                for h in &r.minimizers {
                    let labelings = recognize_curly_f(h);
                    if labelings.is_empty() {
                        continue;
                    }
                    let cert = q_spectrum(h, DEFAULT_TOL).expect("small graph");
                    let s = if !cert.is_simple() {
                        Status::Inconclusive
                    } else {
                        let x = &cert.eigvec;
                        let pd = h.p_dominators();
                        let best = pd.iter().map(|v| x[v].abs()).fold(0.0, f64::max);
                        let ok = labelings.iter().any(|f| {
                            x[f.spine[f.g - 1]].abs() > THETA && x[f.spine[f.g + f.l - 2]].abs() >= best - THETA
                        });
                        Status::from_bool(ok)
                    };
                    if s < status {
                        status = s;
                        witness = Some(h.clone());
                    }
                }
                let shown = witness.unwrap_or_else(|| r.minimizers[0].clone());
                let params = json!({"n": n, "g": g, "gamma": gamma, "class_size": class.len(),
                                    "minimizers": sorted_graph6(&r.minimizers, 8)});
                out.push(ReportRecord::new("Thm3.2", params, status).with_graph(
                    to_graph6(&shown),
                    Some(gamma),
                    Some(r.min_value),
                ));
            }
        }
        Ok(out)
    }

    /// Circ script-F graphs of order `n` with odd girth, one per class.
    fn script_k(&self, n: usize) -> Vec<(Graph, Measurement)> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for g in (3..n).step_by(2) {
            for (_, graph, _) in f_graphs(g, n - g, n, n, Some(true)) {
                if graph.order() == n && seen.insert(canonical_graph6(&graph)) {
                    let m = self.measure(&graph);
                    out.push((graph, m));
                }
            }
        }
        out.sort_by(|a, b| a.1.g6.cmp(&b.1.g6));
        out
    }

    fn thm_4_5(&self, n: usize) -> Result<Vec<ReportRecord>, EnumError> {
        if n < 4 {
            return Ok(Vec::new());
        }
        let family = self.run(|| self.script_k(n));
        if n == 4 {
            let r = extremal_of(&family, self.margin).ok_or(EnumError::EmptyUniverse)?;
            let expected = h3(4, 1);
            let ok = r.unique && is_isomorphic(&r.minimizers[0], &expected);
            let params = json!({"n": 4, "clause": "i", "universe_size": r.universe_size,
                                "minimizers": sorted_graph6(&r.minimizers, 8)});
            return Ok(vec![ReportRecord::new("Thm4.5", params, Status::from_bool(ok)).with_graph(
                to_graph6(&r.minimizers[0]),
                None,
                Some(r.min_value),
            )]);
        }
        let mut out = Vec::new();
        for gamma in gamma_window(n).into_iter().filter(|&g| n >= 2 * g + 2) {
            let Some(alpha) = least_alpha(n, gamma, Some((n - 3) / 2)) else {
                out.push(ReportRecord::new(
                    "Thm4.5",
                    json!({"n": n, "clause": "ii", "gamma": gamma, "error": "no admissible alpha"}),
                    Status::Fail,
                ));
                continue;
            };
            let q_h = q_min(&h3(n, alpha));
            let class: Vec<(Graph, Measurement)> = family.iter().filter(|(_, m)| m.gamma == gamma).cloned().collect();
            let mut params = json!({"n": n, "clause": "ii", "gamma": gamma, "alpha": alpha,
                                    "q_min_h": q_h, "class_size": class.len()});
            match extremal_of(&class, self.margin) {
                None => out.push(vacuous("Thm4.5", params)),
                Some(r) => {
                    params["minimizers"] = json!(sorted_graph6(&r.minimizers, 8));
                    let status = Status::strict(r.min_value - q_h, self.margin);
                    out.push(ReportRecord::new("Thm4.5", params, status).with_graph(
                        to_graph6(&r.minimizers[0]),
                        Some(gamma),
                        Some(r.min_value),
                    ));
                }
            }
        }
        if out.is_empty() {
            out.push(vacuous("Thm4.5", json!({"n": n, "clause": "ii"})));
        }
        Ok(out)
    }

    fn thm_5_1(&self, n: usize) -> Result<Vec<ReportRecord>, EnumError> {
        if n < 4 {
            return Ok(Vec::new());
        }
        if n == 4 {
            return Ok(vec![self.expect_minimizer("Thm5.1", "i", UniverseSpec::nonbipartite(4), 1)?]);
        }
        let mut out = Vec::new();
        for gamma in gamma_window(n).into_iter().filter(|&g| n >= 2 * g + 2) {
            let Some(alpha) = least_alpha(n, gamma, Some((n - 3) / 2)) else {
                out.push(ReportRecord::new(
                    "Thm5.1",
                    json!({"n": n, "clause": "ii", "gamma": gamma, "error": "no admissible alpha"}),
                    Status::Fail,
                ));
                continue;
            };
            let q_h = q_min(&h3(n, alpha));
            let all = self.enumerate_measured(&UniverseSpec::nonbipartite(n).gamma(gamma))?;
            // Only graphs that could violate the bound need the membership test.
            let candidates: Vec<&(Graph, Measurement)> =
                all.iter().filter(|(_, m)| m.q_min <= q_h + self.margin).collect();
            let members: Vec<&(Graph, Measurement)> =
                self.run(|| candidates.par_iter().filter(|(g, _)| in_script_m(g)).copied().collect());
            let worst = members.iter().map(|(_, m)| m.q_min).min_by(f64::total_cmp);
            let status = worst.map_or(Status::Pass, |q| Status::strict(q - q_h, self.margin));
            let params = json!({"n": n, "clause": "ii", "gamma": gamma, "alpha": alpha, "q_min_h": q_h,
                                "candidates": candidates.len(),
                                "violations": members.iter().map(|(_, m)| m.g6.clone()).collect::<Vec<_>>()});
            out.push(ReportRecord::new("Thm5.1", params, status));
        }
        if out.is_empty() {
            out.push(vacuous("Thm5.1", json!({"n": n, "clause": "ii"})));
        }
        Ok(out)
    }

    fn lemma_2_7(&self, n: usize) -> Result<Vec<ReportRecord>, EnumError> {
        let all = self.enumerate(&UniverseSpec::nonbipartite(n))?;
        let missing: Vec<Graph> = self.run(|| {
            all.par_iter().filter(|g| odd_girth_preserving_subgraph(g).is_none()).cloned().collect()
        });
        let mut out = vec![ReportRecord::new(
            "Lemma2.7",
            json!({"n": n, "graphs": all.len(), "missing": missing.len()}),
            Status::from_bool(missing.is_empty()),
        )];
        for g in missing {
            let m = self.measure(&g);
            out.push(ReportRecord::new("Lemma2.7", json!({"n": n}), Status::Fail).with_graph(
                to_graph6(&g),
                Some(m.gamma),
                Some(m.q_min),
            ));
        }
        Ok(out)
    }

    /// Compares every nonbipartite graph with `(n+1)/3 < γ <= n/2` against
    /// `𝓗_{3,α}` for the least α matching γ. A graph below it is a
    /// counterexample (FAIL); one within the margin is INCONCLUSIVE.
    pub fn explore_conjecture(&self, range: RangeInclusive<usize>, unicyclic: bool) -> Result<VerificationReport, EnumError> {
        let label = if unicyclic { "unicyclic" } else { "general" };
        let mut report = VerificationReport::new(
            "Conjecture",
            format!("{label} n={}..{}", range.start(), range.end()),
        );
        for n in range {
            let window = gamma_window(n);
            if window.is_empty() {
                report.push(vacuous("Conjecture", json!({"n": n})));
                continue;
            }
            let spec = if unicyclic { UniverseSpec::unicyclic(n) } else { UniverseSpec::nonbipartite(n) };
            let all = self.enumerate_measured(&spec)?;
            for gamma in window {
                if !all.iter().any(|(_, m)| m.gamma == gamma) {
                    report.push(vacuous("Conjecture", json!({"n": n, "gamma": gamma})));
                    continue;
                }
                let Some(alpha) = least_alpha(n, gamma, None) else {
                    report.push(ReportRecord::new(
                        "Conjecture",
                        json!({"n": n, "gamma": gamma, "error": "no admissible alpha"}),
                        Status::Fail,
                    ));
                    continue;
                };
                let s = h3(n, alpha);
                let s_g6 = canonical_graph6(&s);
                let q_s = q_min(&s);
                let others: Vec<&(Graph, Measurement)> =
                    all.iter().filter(|(_, m)| m.gamma == gamma && m.g6 != s_g6).collect();
                let gaps: Vec<(f64, &str)> = others.iter().map(|(_, m)| (m.q_min - q_s, m.g6.as_str())).collect();
                let below: Vec<&str> = gaps.iter().filter(|(d, _)| *d < -self.margin).map(|(_, g)| *g).collect();
                let tied: Vec<&str> = gaps.iter().filter(|(d, _)| d.abs() <= self.margin).map(|(_, g)| *g).collect();
                let min_gap = gaps.iter().map(|(d, _)| *d).min_by(f64::total_cmp);
                let status = if !below.is_empty() {
                    Status::Fail
                } else if !tied.is_empty() {
                    Status::Inconclusive
                } else {
                    Status::Pass
                };
                let params = json!({"n": n, "gamma": gamma, "alpha": alpha, "graphs": others.len() + 1,
                                    "min_gap": min_gap, "counterexamples": &below[..below.len().min(10)],
                                    "ties": &tied[..tied.len().min(10)]});
                let witness = below.first().map(|g| g.to_string()).unwrap_or(s_g6);
                report.push(ReportRecord::new("Conjecture", params, status).with_graph(witness, Some(gamma), Some(q_s)));
            }
        }
        Ok(report)
    }
}
