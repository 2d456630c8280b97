//! Exact domination numbers.
//!
//! "Minimum dominating set" here always means minimum cardinality.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{script_h3_params, FamilySpec};
use crate::graph::{Graph, VertexSet};

pub const DEFAULT_MDS_CAP: usize = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DominationError {
    #[error("more than {cap} minimum dominating sets")]
    ResultTooLarge { cap: usize },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DomFlags {
    pub contains_all_p_dominators: bool,
    pub contains_no_pendant: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationCert {
    pub gamma: usize,
    pub witness: VertexSet,
    pub flags: DomFlags,
}

pub fn dominates(g: &Graph, set: VertexSet) -> bool {
    let mut covered = set;
    for v in set.iter() {
        covered = covered.union(g.neighbors(v));
    }
    covered == g.vertices()
}

struct Solver {
    closed: Vec<u64>,
    allowed: u64,
    best: usize,
    best_set: u64,
}

impl Solver {
    fn new(g: &Graph, allowed: VertexSet) -> Solver {
        Solver {
            closed: (0..g.order()).map(|v| g.closed_neighborhood(v).0).collect(),
            allowed: allowed.0,
            best: usize::MAX,
            best_set: 0,
        }
    }

    /// Candidate dominators of `u` that may still be chosen.
    fn candidates(&self, u: usize, allowed: u64) -> u64 {
        self.closed[u] & allowed
    }

    /// `ceil(|undominated| / best single coverage)`, or `None` if some vertex
    /// can no longer be dominated.
    fn lower_bound(&self, undominated: u64, allowed: u64) -> Option<usize> {
        let mut cover = 0;
        let mut it = VertexSet(allowed).iter();
        for v in &mut it {
            cover = cover.max((self.closed[v] & undominated).count_ones());
        }
        if cover == 0 {
            return None;
        }
        Some((undominated.count_ones()).div_ceil(cover) as usize)
    }

    /// Undominated vertex with the fewest allowed dominators.
    fn branch_vertex(&self, undominated: u64, allowed: u64) -> (usize, u64) {
        VertexSet(undominated)
            .iter()
            .map(|u| (u, self.candidates(u, allowed)))
            .min_by_key(|&(u, c)| (c.count_ones(), u))
            .expect("undominated set is nonempty")
    }

    fn ordered(&self, cands: u64, undominated: u64) -> Vec<usize> {
        let mut vs: Vec<usize> = VertexSet(cands).iter().collect();
        vs.sort_by_key(|&v| (std::cmp::Reverse((self.closed[v] & undominated).count_ones()), v));
        vs
    }

    fn greedy(&mut self, undominated: u64, chosen: u64) {
        let (mut undominated, mut chosen) = (undominated, chosen);
        while undominated != 0 {
            let pick = VertexSet(self.allowed)
                .iter()
                .max_by_key(|&v| ((self.closed[v] & undominated).count_ones(), std::cmp::Reverse(v)));
            match pick {
                Some(v) if self.closed[v] & undominated != 0 => {
                    chosen |= 1 << v;
                    undominated &= !self.closed[v];
                }
                _ => return,
            }
        }
        self.best = chosen.count_ones() as usize;
        self.best_set = chosen;
    }

    fn search(&mut self, undominated: u64, chosen: u64, count: usize) {
        if undominated == 0 {
            if count < self.best {
                self.best = count;
                self.best_set = chosen;
            }
            return;
        }
        let Some(lb) = self.lower_bound(undominated, self.allowed) else {
            return;
        };
        if count + lb >= self.best {
            return;
        }
        let (_, cands) = self.branch_vertex(undominated, self.allowed);
        for v in self.ordered(cands, undominated) {
            self.search(undominated & !self.closed[v], chosen | 1 << v, count + 1);
        }
    }
}

/// Smallest dominating set containing `forced` and drawn from
/// `allowed ∪ forced`, or `None` if none exists.
pub fn min_dominating_set_with(g: &Graph, forced: VertexSet, allowed: VertexSet) -> Option<VertexSet> {
    let mut s = Solver::new(g, allowed.difference(forced));
    let mut undominated = g.vertices().0;
    for v in forced.iter() {
        undominated &= !s.closed[v];
    }
    s.greedy(undominated, forced.0);
    s.search(undominated, forced.0, forced.len());
    (s.best != usize::MAX).then_some(VertexSet(s.best_set))
}

fn flags(g: &Graph, set: VertexSet) -> DomFlags {
    DomFlags {
        contains_all_p_dominators: g.p_dominators().is_subset(set),
        contains_no_pendant: set.intersection(g.pendant_vertices()).is_empty(),
    }
}

/// Exact γ. When some minimum dominating set contains every p-dominator and
/// no pendant vertex, the witness is such a set.
pub fn domination_number(g: &Graph) -> DominationCert {
    let witness = min_dominating_set_with(g, VertexSet::EMPTY, g.vertices())
        .expect("the whole vertex set dominates");
    let gamma = witness.len();
    let pd = g.p_dominators();
    let pendants = g.pendant_vertices();
    let witness = if pendants.is_empty() || (pd.is_subset(witness) && witness.intersection(pendants).is_empty()) {
        witness
    } else if pd.intersection(pendants).is_empty() {
        match min_dominating_set_with(g, pd, g.vertices().difference(pendants)) {
            Some(s) if s.len() == gamma => s,
            _ => witness,
        }
    } else {
        witness
    };
    DominationCert {
        gamma,
        witness,
        flags: flags(g, witness),
    }
}

/// Whether some minimum dominating set contains `must_include` and avoids
/// `must_exclude`; returns such a set when it exists.
pub fn structured_mds_exists(
    g: &Graph,
    must_include: VertexSet,
    must_exclude: VertexSet,
) -> (bool, Option<VertexSet>) {
    assert!(
        must_include.intersection(must_exclude).is_empty(),
        "include and exclude sets overlap"
    );
    let gamma = domination_number(g).gamma;
    match min_dominating_set_with(g, must_include, g.vertices().difference(must_exclude)) {
        Some(s) if s.len() == gamma => (true, Some(s)),
        _ => (false, None),
    }
}

pub fn minimum_dominating_sets(g: &Graph) -> Result<Vec<VertexSet>, DominationError> {
    minimum_dominating_sets_capped(g, DEFAULT_MDS_CAP)
}

/// Every dominating set of size γ, in a deterministic order. Each set is
/// produced once: branching on an undominated vertex `u`, the `i`-th branch
/// takes the `i`-th dominator of `u` and forbids the earlier ones.
pub fn minimum_dominating_sets_capped(g: &Graph, cap: usize) -> Result<Vec<VertexSet>, DominationError> {
    let gamma = domination_number(g).gamma;
    let s = Solver::new(g, g.vertices());
    let mut out = Vec::new();
    fn walk(
        s: &Solver,
        undominated: u64,
        chosen: u64,
        allowed: u64,
        left: usize,
        out: &mut Vec<VertexSet>,
        cap: usize,
    ) -> Result<(), DominationError> {
        if undominated == 0 {
            if out.len() == cap {
                return Err(DominationError::ResultTooLarge { cap });
            }
            out.push(VertexSet(chosen));
            return Ok(());
        }
        match s.lower_bound(undominated, allowed) {
            Some(lb) if lb <= left => {}
            _ => return Ok(()),
        }
        let (_, cands) = s.branch_vertex(undominated, allowed);
        let mut allowed = allowed;
        for v in VertexSet(cands).iter() {
            walk(s, undominated & !s.closed[v], chosen | 1 << v, allowed & !(1 << v), left - 1, out, cap)?;
            allowed &= !(1 << v);
        }
        Ok(())
    }
    walk(&s, g.vertices().0, 0, g.vertices().0, gamma, &mut out, cap)?;
    out.sort_unstable();
    Ok(out)
}

pub(crate) fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + (a.rem_euclid(b) != 0) as i64
}

fn path_gamma(n: usize) -> usize {
    n.div_ceil(3)
}

/// γ of `H2(epsilon, k, ·)`.
pub fn h2_gamma(epsilon: usize, k: usize) -> usize {
    if epsilon < k + 4 {
        k + 1
    } else {
        ceil_div(epsilon as i64 - k as i64 - 4, 3) as usize + k + 1
    }
}

/// γ of `𝓗_{3,α}` of order `n`.
pub fn script_h3_gamma(n: usize, alpha: usize) -> usize {
    if alpha == 0 {
        1
    } else if n <= 2 * alpha + 2 {
        alpha
    } else {
        (n - 2 * alpha - 2).div_ceil(3) + alpha
    }
}

/// γ of the sunlike graph of girth `g` whose `k >= 1` p-dominators are
/// consecutive on the cycle.
pub fn sunlike_arc_gamma(g: usize, k: usize) -> usize {
    (k as i64 + ceil_div(g as i64 - k as i64 - 2, 3)) as usize
}

/// The sunlike spec with p-dominators `v_{g-k+1} .. v_g`, each with one
/// pendant, plus `extra` further pendants at `v_g`.
pub fn sunlike_arc_spec(g: usize, k: usize, extra: usize) -> FamilySpec {
    FamilySpec::CurlyFCirc {
        g,
        l: 1,
        attach: (g + 1 - k..g).collect(),
        extra,
    }
}

/// Closed-form γ where one is known for the family; `None` otherwise.
pub fn closed_form_gamma(spec: &FamilySpec) -> Option<usize> {
    match spec {
        FamilySpec::Path { n } | FamilySpec::Cycle { n } => Some(path_gamma(*n)),
        FamilySpec::C3Star { k, .. } => Some(path_gamma(k + 3)),
        FamilySpec::Corona { base } => {
            let (h, _) = crate::families::make(base).ok()?;
            Some(h.order())
        }
        FamilySpec::H2 { epsilon, k, .. } => Some(h2_gamma(*epsilon, *k)),
        FamilySpec::H4 { epsilon, k, .. } => {
            let g2 = h2_gamma(*epsilon, *k);
            if *epsilon < k + 4 || (epsilon - k - 4) % 3 != 0 {
                Some(g2 - 1)
            } else {
                Some(g2)
            }
        }
        FamilySpec::H5 { epsilon, k, .. } => {
            (*epsilon >= k + 4 && (epsilon - k - 4) % 3 == 0).then(|| h2_gamma(*epsilon, *k) - 1)
        }
        FamilySpec::ScriptH3 { n, alpha } => {
            script_h3_params(*n, *alpha).map(|_| script_h3_gamma(*n, *alpha))
        }
        FamilySpec::Theorem39K { n } => Some(path_gamma(*n)),
        FamilySpec::CurlyFCirc { g, l: 1, attach, .. } => {
            let k = attach.len() + 1;
            (attach.iter().copied().eq(g + 1 - k..*g)).then(|| sunlike_arc_gamma(*g, k))
        }
        _ => None,
    }
}

/// `C_4` or a corona `H∘K_1` (including `K_2`).
pub fn is_c4_or_corona(g: &Graph) -> bool {
    let n = g.order();
    if n == 4 && g.size() == 4 && g.degrees().iter().all(|&d| d == 2) {
        return true;
    }
    if n % 2 == 1 || !g.is_connected() {
        return false;
    }
    if n == 2 {
        return true;
    }
    let pendants = g.pendant_vertices();
    let supports = g.p_dominators();
    pendants.len() == n / 2
        && supports.len() == n / 2
        && pendants.union(supports) == g.vertices()
}

/// `(γ = n/2, G is C_4 or a corona)` for a connected graph on at least two
/// vertices; the two must agree.
pub fn corona_gamma_half_check(g: &Graph) -> (bool, bool) {
    let gamma = domination_number(g).gamma;
    (2 * gamma == g.order(), is_c4_or_corona(g))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::make;
    use crate::graph::named::{complete, cycle, path, star};

    /// Smallest dominating set by exhaustive subset search.
    pub(crate) fn brute_gamma(g: &Graph) -> (usize, Vec<VertexSet>) {
        let n = g.order();
        let mut best = n;
        let mut sets = Vec::new();
        for mask in 0u64..1 << n {
            let s = VertexSet(mask);
            if s.len() > best || !dominates(g, s) {
                continue;
            }
            if s.len() < best {
                best = s.len();
                sets.clear();
            }
            sets.push(s);
        }
        sets.sort_unstable();
        (best, sets)
    }

    #[test]
    fn small_examples() {
        assert_eq!(domination_number(&path(6)).gamma, 2);
        assert_eq!(domination_number(&cycle(7)).gamma, 3);
        assert_eq!(domination_number(&complete(5)).gamma, 1);
        let cert = domination_number(&path(4));
        assert!(dominates(&path(4), cert.witness));
        assert!(cert.flags.contains_all_p_dominators && cert.flags.contains_no_pendant);
    }

    #[test]
    fn mds_lists() {
        let c3: Vec<_> = (0..3).map(VertexSet::singleton).collect();
        assert_eq!(minimum_dominating_sets(&cycle(3)).unwrap(), c3);
        assert_eq!(minimum_dominating_sets(&path(3)).unwrap(), vec![VertexSet::singleton(1)]);
        let s4p = star(4).add_edge(1, 2).unwrap();
        assert_eq!(minimum_dominating_sets(&s4p).unwrap(), vec![VertexSet::singleton(0)]);
        assert_eq!(
            minimum_dominating_sets_capped(&cycle(6), 2),
            Err(DominationError::ResultTooLarge { cap: 2 })
        );
    }

    #[test]
    fn structured_examples() {
        let (ok, w) = structured_mds_exists(&cycle(4), VertexSet::singleton(0), VertexSet::EMPTY);
        assert!(ok);
        assert!(w.unwrap().contains(0));
        let (ok, _) = structured_mds_exists(&path(2), VertexSet::EMPTY, VertexSet::full(2));
        assert!(!ok);
        let p7 = path(7);
        let (ok, _) = structured_mds_exists(&p7, p7.p_dominators(), p7.pendant_vertices());
        assert!(ok);
    }

    #[test]
    fn solver_matches_brute_force_on_random_graphs() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let n = rng.gen_range(1..=11);
            let p = rng.gen_range(0.1..0.7);
            let edges: Vec<_> = (0..n)
                .flat_map(|j| (0..j).map(move |i| (i, j)))
                .filter(|_| rng.gen_bool(p))
                .collect();
            let g = Graph::build(n, &edges).unwrap();
            let (gamma, sets) = brute_gamma(&g);
            let cert = domination_number(&g);
            assert_eq!(cert.gamma, gamma, "{g:?}");
            assert!(dominates(&g, cert.witness));
            assert_eq!(cert.witness.len(), gamma);
            assert_eq!(minimum_dominating_sets(&g).unwrap(), sets, "{g:?}");
        }
    }

    #[test]
    fn closed_forms() {
        assert_eq!(closed_form_gamma(&FamilySpec::Cycle { n: 10 }), Some(4));
        assert_eq!(closed_form_gamma(&FamilySpec::ScriptH3 { n: 11, alpha: 3 }), Some(4));
        assert_eq!(closed_form_gamma(&FamilySpec::C3Star { k: 3, n: 8 }), Some(2));
        assert_eq!(closed_form_gamma(&FamilySpec::H2 { epsilon: 7, k: 2, extra: 0 }), Some(4));
        assert_eq!(closed_form_gamma(&FamilySpec::H2 { epsilon: 4, k: 2, extra: 0 }), Some(3));
        assert_eq!(closed_form_gamma(&FamilySpec::Star { n: 5 }), None);
        for spec in [
            FamilySpec::H2 { epsilon: 7, k: 2, extra: 0 },
            FamilySpec::H2 { epsilon: 4, k: 2, extra: 1 },
            FamilySpec::ScriptH3 { n: 6, alpha: 2 },
            FamilySpec::Theorem39K { n: 9 },
            sunlike_arc_spec(7, 3, 0),
        ] {
            let (g, _) = make(&spec).unwrap();
            assert_eq!(closed_form_gamma(&spec), Some(domination_number(&g).gamma), "{spec:?}");
        }
    }

    #[test]
    fn corona_check_examples() {
        assert_eq!(corona_gamma_half_check(&cycle(4)), (true, true));
        assert_eq!(corona_gamma_half_check(&path(4)), (true, true));
        assert_eq!(corona_gamma_half_check(&cycle(6)), (false, false));
        assert_eq!(corona_gamma_half_check(&path(2)), (true, true));
    }

    #[test]
    fn ceil_div_handles_negatives() {
        assert_eq!(ceil_div(-2, 3), 0);
        assert_eq!(ceil_div(-3, 3), -1);
        assert_eq!(ceil_div(4, 3), 2);
        assert_eq!(sunlike_arc_gamma(5, 5), 5);
    }
}
