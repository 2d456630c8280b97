//! Edge-rotation and relocation transforms on labelled graphs, each paired
//! with the relation it is claimed to have with its input.
//!
//! Cycle positions are 1-based and taken mod `g`, so `v_0 = v_g` and
//! `v_{g+1} = v_1`. `r_1 < .. < r_t` are the cycle positions carrying
//! pendants.

mod sweeps;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domination::domination_number;
use crate::families::{k_family_rewiring, Label, LabelMap};
use crate::graph::{coalesce, Graph, VertexSet};
use crate::report::{ser_f64, Status};
use crate::spectra::{q_min, q_spectrum, DEFAULT_MARGIN, DEFAULT_TOL, THETA};

pub(crate) use sweeps::f_graphs;
pub use sweeps::{verify_transform_lemma, SweepGrid, TRANSFORM_LEMMAS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PerturbationError {
    #[error("precondition violated: {0}")]
    PreconditionViolated(String),
    #[error("transform result is malformed: {0}")]
    PostconditionViolated(String),
    #[error("unknown lemma id {0:?}")]
    UnknownLemma(String),
}

fn violated<T>(msg: impl Into<String>) -> Result<T, PerturbationError> {
    Err(PerturbationError::PreconditionViolated(msg.into()))
}

/// A transform and its anchors. `a`, `i`, `from`, `to` are 1-based `v_i`
/// indices resolved through the graph's [`LabelMap`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum TransformSpec {
    /// `G - v_{a+1}v_{a+2} + v_{a+1}v_{a-1}`.
    G1 { a: usize },
    /// `G1 - v_{a-1}v_{a-2} + v_{a-1}v_{a+2}`.
    G2 { a: usize },
    /// `G - v_{r_i+2}v_{r_i+3} + v_{r_i+2}v_{r_i}`, then every off-cycle
    /// neighbour of `v_{r_i}` moves to `v_{r_i+3}`.
    ScriptX { i: usize },
    /// `G - v_{r_i}v_{r_i+1} + v_{r_i}v_{r_i-2}`, then every off-cycle
    /// neighbour of `v_{r_i}` moves to `v_{r_{i-1}+1}`.
    ScriptG { i: usize },
    /// One pendant of `v_from` moves to `v_to`.
    PendantRelocate { from: usize, to: usize },
    /// Pendants `τ_j` at `v_{a_j}` move to `v_{ε-2-k+j}`.
    H2FromH1,
    /// The rewiring of an odd cycle into the girth-3 graph `𝒦`.
    KFromCycle,
    /// The branch through the edge `from`-`via` is re-hung at `to`.
    TreeMove { from: Label, to: Label, via: Label },
}

impl TransformSpec {
    pub fn kind(&self) -> &'static str {
        match self {
            TransformSpec::G1 { .. } => "G1",
            TransformSpec::G2 { .. } => "G2",
            TransformSpec::ScriptX { .. } => "ScriptX",
            TransformSpec::ScriptG { .. } => "ScriptG",
            TransformSpec::PendantRelocate { .. } => "PendantRelocate",
            TransformSpec::H2FromH1 => "H2FromH1",
            TransformSpec::KFromCycle => "KFromCycle",
            TransformSpec::TreeMove { .. } => "TreeMove",
        }
    }

    fn keeps_unicyclic(&self) -> bool {
        !matches!(self, TransformSpec::PendantRelocate { .. } | TransformSpec::TreeMove { .. })
    }
}

/// γ(output) compared with γ(input).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum GammaRelation {
    Le,
    Eq,
    Ge,
    Unknown,
}

/// q_min(output) compared with q_min(input).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum QminRelation {
    Lt,
    Le,
    Unknown,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Measured {
    pub gamma_in: usize,
    pub gamma_out: usize,
    #[serde(serialize_with = "ser_f64")]
    pub q_min_in: f64,
    #[serde(serialize_with = "ser_f64")]
    pub q_min_out: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct TransformOutcome {
    pub graph_out: Graph,
    pub gamma_relation: GammaRelation,
    pub qmin_relation: QminRelation,
    pub measured: Measured,
    pub notes: Vec<String>,
}

impl TransformOutcome {
    pub fn gamma_status(&self) -> Status {
        let (i, o) = (self.measured.gamma_in, self.measured.gamma_out);
        Status::from_bool(match self.gamma_relation {
            GammaRelation::Le => o <= i,
            GammaRelation::Eq => o == i,
            GammaRelation::Ge => o >= i,
            GammaRelation::Unknown => true,
        })
    }

    /// Strict claims need a gap above `margin`; a gap inside it is INCONCLUSIVE.
    pub fn qmin_status(&self, margin: f64) -> Status {
        let diff = self.measured.q_min_in - self.measured.q_min_out;
        match self.qmin_relation {
            QminRelation::Lt => Status::strict(diff, margin),
            QminRelation::Le => Status::non_strict(diff, margin),
            QminRelation::Unknown => Status::Pass,
        }
    }

    pub fn status(&self, margin: f64) -> Status {
        self.gamma_status().merge(self.qmin_status(margin))
    }
}

/// The cycle `v_1 .. v_g` of a labelled graph.
#[derive(Clone, Debug)]
pub(crate) struct CycleView {
    pub g: usize,
    at: Vec<usize>,
    pub set: VertexSet,
}

impl CycleView {
    pub fn from_labels(graph: &Graph, labels: &LabelMap) -> Result<CycleView, PerturbationError> {
        let Some(g) = labels.cycle_len else {
            return violated("label map names no cycle");
        };
        let at: Option<Vec<usize>> = (1..=g).map(|i| labels.v(i)).collect();
        let Some(at) = at else {
            return violated("cycle labels v_1..v_g incomplete");
        };
        if at.iter().any(|&v| v >= graph.order()) || (0..g).any(|i| !graph.has_edge(at[i], at[(i + 1) % g])) {
            return violated(format!("v_1..v_{g} is not a cycle of the graph"));
        }
        let set = at.iter().copied().collect();
        Ok(CycleView { g, at, set })
    }

    /// Vertex at cycle position `i`, mod `g`.
    pub fn v(&self, i: i64) -> usize {
        self.at[(i - 1).rem_euclid(self.g as i64) as usize]
    }

    /// Positions `r_1 < .. < r_t` of cycle p-dominators.
    pub fn dominators(&self, graph: &Graph) -> Vec<usize> {
        let pd = graph.p_dominators();
        (1..=self.g).filter(|&i| pd.contains(self.v(i as i64))).collect()
    }
}

/// `r_{i-1}` with `r_0 = r_t - g`, for 1-based `i`.
pub(crate) fn prev_dom(r: &[usize], g: usize, i: usize) -> i64 {
    if i == 1 {
        r[r.len() - 1] as i64 - g as i64
    } else {
        r[i - 2] as i64
    }
}

/// `r_{i+1}` with `r_{t+1} = r_1 + g`.
pub(crate) fn next_dom(r: &[usize], g: usize, i: usize) -> i64 {
    if i == r.len() {
        (r[0] + g) as i64
    } else {
        r[i] as i64
    }
}

fn swap_edge(h: Graph, remove: (usize, usize), add: (usize, usize)) -> Result<Graph, PerturbationError> {
    let h = h
        .delete_edge(remove.0, remove.1)
        .map_err(|e| PerturbationError::PreconditionViolated(format!("cannot remove edge: {e}")))?;
    h.add_edge(add.0, add.1)
        .map_err(|e| PerturbationError::PreconditionViolated(format!("cannot add edge: {e}")))
}

/// `H - v_c v_{c+d} + v_c v_{c-2d}`.
pub(crate) fn rot1(h: &Graph, cyc: &CycleView, c: i64, d: i64) -> Result<Graph, PerturbationError> {
    swap_edge(h.clone(), (cyc.v(c), cyc.v(c + d)), (cyc.v(c), cyc.v(c - 2 * d)))
}

/// `rot1(c, d) - v_{c-2d} v_{c-3d} + v_{c-2d} v_{c+d}`.
pub(crate) fn rot2(h: &Graph, cyc: &CycleView, c: i64, d: i64) -> Result<Graph, PerturbationError> {
    if cyc.g < 5 {
        return violated("second rotation needs girth at least 5");
    }
    let h1 = rot1(h, cyc, c, d)?;
    swap_edge(h1, (cyc.v(c - 2 * d), cyc.v(c - 3 * d)), (cyc.v(c - 2 * d), cyc.v(c + d)))
}

/// Moves every neighbour of `from` that is off the original cycle onto `to`.
fn move_branches(h: Graph, orig: &Graph, cyc: &CycleView, from: usize, to: usize) -> Result<Graph, PerturbationError> {
    let mut h = h;
    for w in orig.neighbors(from).difference(cyc.set).iter() {
        h = swap_edge(h, (from, w), (to, w))?;
    }
    Ok(h)
}

fn require_circ(cyc: &CycleView, r: &[usize]) -> Result<(), PerturbationError> {
    if r.last() != Some(&cyc.g) {
        return violated(format!("v_{} must be a p-dominator", cyc.g));
    }
    Ok(())
}

/// `𝒳_i`; needs `r_t = g` and `r_{i+1} - r_i >= 4`.
pub(crate) fn script_x(h: &Graph, cyc: &CycleView, i: usize) -> Result<Graph, PerturbationError> {
    let r = cyc.dominators(h);
    require_circ(cyc, &r)?;
    if i == 0 || i > r.len() {
        return violated(format!("i={i} outside 1..={}", r.len()));
    }
    let ri = r[i - 1] as i64;
    if next_dom(&r, cyc.g, i) - ri < 4 {
        return violated(format!("gap after r_{i} must be at least 4"));
    }
    let out = rot1(h, cyc, ri + 2, 1)?;
    move_branches(out, h, cyc, cyc.v(ri), cyc.v(ri + 3))
}

/// `𝒮𝒢_i`; needs `r_t = g` and `r_i - r_{i-1} >= 4`.
pub(crate) fn script_g(h: &Graph, cyc: &CycleView, i: usize) -> Result<Graph, PerturbationError> {
    let r = cyc.dominators(h);
    require_circ(cyc, &r)?;
    if i == 0 || i > r.len() {
        return violated(format!("i={i} outside 1..={}", r.len()));
    }
    let ri = r[i - 1] as i64;
    let prev = prev_dom(&r, cyc.g, i);
    if ri - prev < 4 {
        return violated(format!("gap before r_{i} must be at least 4"));
    }
    let out = rot1(h, cyc, ri, 1)?;
    move_branches(out, h, cyc, cyc.v(ri), cyc.v(prev + 1))
}

/// Which clause of the rotation lemma covers position `a`: `(i, case)`
/// with `r_{i-1} < a <= r_i`. Needs `r_t = g`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RotationCase {
    I,
    Ii,
    Iii,
    Iv,
}

impl RotationCase {
    pub fn name(self) -> &'static str {
        match self {
            RotationCase::I => "i",
            RotationCase::Ii => "ii",
            RotationCase::Iii => "iii",
            RotationCase::Iv => "iv",
        }
    }
}

pub fn rotation_case(r: &[usize], g: usize, a: usize) -> Option<(usize, RotationCase)> {
    if r.last() != Some(&g) || a == 0 || a > g {
        return None;
    }
    let a = a as i64;
    let i = (1..=r.len()).find(|&i| prev_dom(r, g, i) < a && a <= r[i - 1] as i64)?;
    let (prev, ri) = (prev_dom(r, g, i), r[i - 1] as i64);
    let gap = ri - prev;
    let case = if a == prev + 1 && gap >= 4 {
        RotationCase::I
    } else if prev + 2 <= a && a <= ri - 3 {
        RotationCase::Ii
    } else if a == ri - 1 && gap >= 4 {
        RotationCase::Iii
    } else {
        RotationCase::Iv
    };
    Some((i, case))
}

fn vertex(labels: &LabelMap, l: &Label) -> Result<usize, PerturbationError> {
    labels
        .index(l)
        .ok_or_else(|| PerturbationError::PreconditionViolated(format!("no vertex labelled {l}")))
}

/// Re-hangs the branch behind edge `from`-`via` at `to`. The q_min claim
/// is made when the input eigenvector has `|x_to| > |x_from|` by `margin`.
fn relocate_branch(
    graph: &Graph,
    from: usize,
    to: usize,
    via: usize,
    margin: f64,
) -> Result<(Graph, QminRelation, Vec<String>), PerturbationError> {
    if from == to || to == via || !graph.has_edge(from, via) {
        return violated("branch move needs an edge from-via and a distinct target");
    }
    let branch = graph.reach(via, VertexSet::singleton(from));
    if branch.contains(to) {
        return violated("target lies inside the moved branch");
    }
    let inner = graph.induced(&branch.to_vec());
    if inner.size() + 1 != inner.order() || (0..graph.order()).any(|v| {
        !branch.contains(v) && v != from && !graph.neighbors(v).intersection(branch).is_empty()
    }) {
        return violated("the part behind from-via must be a tree hanging at from");
    }
    let out = swap_edge(graph.clone(), (from, via), (to, via))?;
    let rest: Vec<usize> = graph.vertices().difference(branch).iter().collect();
    let base = graph.induced(&rest);
    let mut notes = Vec::new();
    if !base.is_connected() || base.is_bipartite() {
        notes.push("remaining graph is not connected nonbipartite".to_string());
        return Ok((out, QminRelation::Unknown, notes));
    }
    let cert = q_spectrum(graph, DEFAULT_TOL)
        .map_err(|e| PerturbationError::PreconditionViolated(format!("eigenvector: {e}")))?;
    let (xt, xf) = (cert.eigvec[to].abs(), cert.eigvec[from].abs());
    if xt - xf > margin {
        Ok((out, QminRelation::Lt, notes))
    } else {
        notes.push(format!("eigenvector condition not met: |x_to|={xt:.3e}, |x_from|={xf:.3e}"));
        Ok((out, QminRelation::Unknown, notes))
    }
}

fn h2_from_h1(graph: &Graph, labels: &LabelMap) -> Result<Graph, PerturbationError> {
    let (Some(3), Some(p)) = (labels.cycle_len, labels.path_len) else {
        return violated("input must be labelled as a triangle with a pendant path");
    };
    let eps = p + 3;
    if eps < 4 {
        return violated("epsilon must be at least 4");
    }
    let spine: Option<Vec<usize>> = (1..=eps).map(|i| labels.v(i)).collect();
    let spine = spine.ok_or_else(|| PerturbationError::PreconditionViolated("spine v_1..v_eps incomplete".into()))?;
    let mut moves = Vec::new();
    for (i, &v) in spine.iter().enumerate().take(eps - 2) {
        let pend = graph.pendants_at(v);
        match pend.len() {
            0 => {}
            1 => moves.push((i + 1, v, pend.first().unwrap())),
            _ => return violated(format!("v_{} carries more than one pendant", i + 1)),
        }
    }
    let k = moves.len();
    let mut h = graph.clone();
    for &(_, host, tau) in &moves {
        h = h.delete_edge(host, tau).expect("pendant edge present");
    }
    for (j, &(_, _, tau)) in moves.iter().enumerate() {
        let target = spine[eps - 2 - k + j];
        h = h
            .add_edge(target, tau)
            .map_err(|e| PerturbationError::PreconditionViolated(e.to_string()))?;
    }
    Ok(h)
}

fn k_from_cycle(graph: &Graph, labels: &LabelMap) -> Result<Graph, PerturbationError> {
    let n = graph.order();
    if labels.cycle_len != Some(n) || graph.size() != n || !graph.is_connected() {
        return violated("input must be a labelled cycle v_1..v_n");
    }
    let cyc = CycleView::from_labels(graph, labels)?;
    let moves = k_family_rewiring(n).map_err(|e| PerturbationError::PreconditionViolated(e.to_string()))?;
    let mut h = graph.clone();
    for ((r1, r2), (a1, a2)) in moves {
        let v = |i: usize| cyc.v(i as i64);
        h = swap_edge(h, (v(r1), v(r2)), (v(a1), v(a2)))?;
    }
    Ok(h)
}

/// Applies `t` with the default margin.
pub fn apply(graph: &Graph, labels: &LabelMap, t: &TransformSpec) -> Result<TransformOutcome, PerturbationError> {
    apply_with_margin(graph, labels, t, DEFAULT_MARGIN)
}

pub fn apply_with_margin(
    graph: &Graph,
    labels: &LabelMap,
    t: &TransformSpec,
    margin: f64,
) -> Result<TransformOutcome, PerturbationError> {
    if labels.len() != graph.order() {
        return violated("label map does not match the graph");
    }
    let mut notes = Vec::new();
    let (out, gamma_relation, qmin_relation) = match t {
        TransformSpec::G1 { a } | TransformSpec::G2 { a } => {
            let cyc = CycleView::from_labels(graph, labels)?;
            if cyc.g < 4 || *a == 0 || *a > cyc.g {
                return violated(format!("need g >= 4 and 1 <= a <= g, got g={}, a={a}", cyc.g));
            }
            let centre = *a as i64 + 1;
            if matches!(t, TransformSpec::G1 { .. }) {
                let r = cyc.dominators(graph);
                let rel = match rotation_case(&r, cyc.g, *a) {
                    Some((_, RotationCase::Iv)) => GammaRelation::Ge,
                    _ => GammaRelation::Unknown,
                };
                (rot1(graph, &cyc, centre, 1)?, rel, QminRelation::Unknown)
            } else {
                (rot2(graph, &cyc, centre, 1)?, GammaRelation::Unknown, QminRelation::Unknown)
            }
        }
        TransformSpec::ScriptX { i } => {
            let cyc = CycleView::from_labels(graph, labels)?;
            let out = script_x(graph, &cyc, *i)?;
            if *i != cyc.dominators(graph).len() {
                notes.push("inferred".to_string());
            }
            (out, GammaRelation::Eq, QminRelation::Unknown)
        }
        TransformSpec::ScriptG { i } => {
            let cyc = CycleView::from_labels(graph, labels)?;
            (script_g(graph, &cyc, *i)?, GammaRelation::Eq, QminRelation::Unknown)
        }
        TransformSpec::PendantRelocate { from, to } => {
            let f = vertex(labels, &Label::V(*from))?;
            let to = vertex(labels, &Label::V(*to))?;
            let Some(p) = graph.pendants_at(f).iter().last() else {
                return violated(format!("v_{from} carries no pendant"));
            };
            let (out, q, n) = relocate_branch(graph, f, to, p, margin)?;
            notes.extend(n);
            (out, GammaRelation::Unknown, q)
        }
        TransformSpec::TreeMove { from, to, via } => {
            let (f, to, via) = (vertex(labels, from)?, vertex(labels, to)?, vertex(labels, via)?);
            let (out, q, n) = relocate_branch(graph, f, to, via, margin)?;
            notes.extend(n);
            (out, GammaRelation::Unknown, q)
        }
        TransformSpec::H2FromH1 => (h2_from_h1(graph, labels)?, GammaRelation::Ge, QminRelation::Unknown),
        TransformSpec::KFromCycle => {
            let q = if graph.order() == 3 { QminRelation::Le } else { QminRelation::Lt };
            (k_from_cycle(graph, labels)?, GammaRelation::Eq, q)
        }
    };
    if out.order() != graph.order() {
        return Err(PerturbationError::PostconditionViolated("vertex count changed".into()));
    }
    if t.keeps_unicyclic() && graph.is_unicyclic() && !out.is_unicyclic() {
        return Err(PerturbationError::PostconditionViolated(format!("{} broke unicyclicity", t.kind())));
    }
    let measured = Measured {
        gamma_in: domination_number(graph).gamma,
        gamma_out: domination_number(&out).gamma,
        q_min_in: q_min(graph),
        q_min_out: q_min(&out),
    };
    Ok(TransformOutcome {
        graph_out: out,
        gamma_relation,
        qmin_relation,
        measured,
        notes,
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct TreeMoveOutcome {
    pub before: Graph,
    pub after: Graph,
    /// The eigenvector condition held on `before` by more than the margin.
    pub asserted: bool,
    pub q_before: f64,
    pub q_after: f64,
}

impl TreeMoveOutcome {
    pub fn status(&self, margin: f64) -> Status {
        if self.asserted {
            Status::strict(self.q_before - self.q_after, margin)
        } else {
            Status::Pass
        }
    }
}

/// `G1(v2)⋄T(u)` against `G1(v1)⋄T(u)`. Vertices of `g1` keep their indices
/// in both graphs.
pub fn tree_move(
    g1: &Graph,
    v1: usize,
    v2: usize,
    tree: &Graph,
    u: usize,
    margin: f64,
) -> Result<TreeMoveOutcome, PerturbationError> {
    if !g1.is_connected() || g1.is_bipartite() {
        return violated("G1 must be connected and nonbipartite");
    }
    if v1 == v2 || v1 >= g1.order() || v2 >= g1.order() {
        return violated("v1 and v2 must be distinct vertices of G1");
    }
    if tree.order() < 2 || !tree.is_connected() || tree.size() + 1 != tree.order() || u >= tree.order() {
        return violated("T must be a nontrivial tree with root u");
    }
    let glue = |v| {
        coalesce(g1, v, tree, u)
            .map(|c| c.graph)
            .map_err(|e| PerturbationError::PreconditionViolated(e.to_string()))
    };
    let (before, after) = (glue(v2)?, glue(v1)?);
    let cert = q_spectrum(&before, DEFAULT_TOL)
        .map_err(|e| PerturbationError::PreconditionViolated(format!("eigenvector: {e}")))?;
    let asserted = cert.eigvec[v1].abs() - cert.eigvec[v2].abs() > margin;
    Ok(TreeMoveOutcome {
        q_before: cert.q_min,
        q_after: q_min(&after),
        before,
        after,
        asserted,
    })
}

/// A girth-3 graph `ℍ` with `γ(ℍ) >= γ(G)` and `q_min(ℍ) < q_min(G) - margin`.
#[derive(Clone, Debug, PartialEq)]
pub struct TriangleWitness {
    pub graph: Graph,
    pub transform: String,
    /// `"dictated"` when found among the rotations chosen by eigenvector
    /// comparisons, `"fallback"` when found by trying every rotation.
    pub branch: &'static str,
    pub gamma: usize,
    pub q_min: f64,
}

type Candidate = (String, Result<Graph, PerturbationError>);

fn all_rotations(graph: &Graph, cyc: &CycleView) -> Vec<Candidate> {
    let mut out = Vec::new();
    for c in 1..=cyc.g as i64 {
        for d in [1, -1] {
            out.push((format!("rot1(c={c},d={d})"), rot1(graph, cyc, c, d)));
            out.push((format!("rot2(c={c},d={d})"), rot2(graph, cyc, c, d)));
        }
    }
    out
}

fn script_candidates(graph: &Graph, cyc: &CycleView, centre: Option<i64>) -> Vec<Candidate> {
    let r = cyc.dominators(graph);
    if r.last() != Some(&cyc.g) {
        return Vec::new();
    }
    let g = cyc.g as i64;
    let mut out = Vec::new();
    for i in 1..=r.len() {
        let ri = r[i - 1] as i64;
        if centre.is_none_or(|m| (m - ri).rem_euclid(g) == 0) {
            out.push((format!("ScriptG(i={i})"), script_g(graph, cyc, i)));
        }
        if centre.is_none_or(|m| (m - ri - 2).rem_euclid(g) == 0) {
            out.push((format!("ScriptX(i={i})"), script_x(graph, cyc, i)));
        }
    }
    out
}

/// Rotations picked from the least eigenvector: the cycle vertex `v_{a+1}`
/// of least `|x|`, oriented so that `v_a` shares its sign and
/// `|x_a| <= |x_{a+2}|`; then `G1`/`G2` at `a` when `|x_{a-1}| <= |x_{a+2}|`,
/// and the mirrored pair centred at `v_a` otherwise. Comparisons within
/// `THETA` take both sides.
fn dictated(graph: &Graph, cyc: &CycleView, x: &[f64]) -> Vec<Candidate> {
    let ax = |i: i64| x[cyc.v(i)].abs();
    let min = (1..=cyc.g as i64).map(ax).fold(f64::INFINITY, f64::min);
    let mut out = Vec::new();
    for m in (1..=cyc.g as i64).filter(|&m| ax(m) <= min + THETA) {
        for d in [1, -1] {
            let a = m - d;
            let same_sign = x[cyc.v(a)] * x[cyc.v(m)] >= 0.0 || ax(m) < THETA;
            if !same_sign || ax(a) > ax(m + d) + THETA {
                continue;
            }
            if ax(a - 1) <= ax(m + d) + THETA {
                out.push((format!("G1(centre={m},d={d})"), rot1(graph, cyc, m, d)));
                out.push((format!("G2(centre={m},d={d})"), rot2(graph, cyc, m, d)));
            }
            if ax(a - 1) >= ax(m + d) - THETA {
                out.push((format!("G1'(centre={a},d={})", -d), rot1(graph, cyc, a, -d)));
                out.push((format!("G2'(centre={a},d={})", -d), rot2(graph, cyc, a, -d)));
            }
        }
        out.extend(script_candidates(graph, cyc, Some(m)));
    }
    out
}

/// Searches for a girth-3 graph with no smaller γ and strictly smaller
/// q_min, trying the eigenvector-dictated rotations first.
pub fn triangle_descent(
    graph: &Graph,
    labels: &LabelMap,
    margin: f64,
) -> Result<Option<TriangleWitness>, PerturbationError> {
    let cyc = CycleView::from_labels(graph, labels)?;
    if cyc.g < 5 || graph.is_bipartite() || !graph.is_unicyclic() {
        return violated("need a nonbipartite unicyclic graph of girth at least 5");
    }
    let cert = q_spectrum(graph, DEFAULT_TOL)
        .map_err(|e| PerturbationError::PreconditionViolated(format!("eigenvector: {e}")))?;
    let gamma = domination_number(graph).gamma;
    let pick = |cands: Vec<Candidate>, branch: &'static str| {
        cands.into_iter().find_map(|(name, h)| {
            let h = h.ok()?;
            if h.girth().finite() != Some(3) {
                return None;
            }
            let q = q_min(&h);
            if q >= cert.q_min - margin {
                return None;
            }
            let gh = domination_number(&h).gamma;
            (gh >= gamma).then_some(TriangleWitness {
                graph: h,
                transform: name,
                branch,
                gamma: gh,
                q_min: q,
            })
        })
    };
    if let Some(w) = pick(dictated(graph, &cyc, &cert.eigvec), "dictated") {
        return Ok(Some(w));
    }
    let mut rest = all_rotations(graph, &cyc);
    rest.extend(script_candidates(graph, &cyc, None));
    Ok(pick(rest, "fallback"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{h2, make, FamilySpec};
    use crate::graph::{is_isomorphic, named, to_graph6};

    fn fo(g: usize, l: usize, attach: &[usize], extra: usize) -> (Graph, LabelMap) {
        make(&FamilySpec::CurlyFCirc {
            g,
            l,
            attach: attach.to_vec(),
            extra,
        })
        .unwrap()
    }

    #[test]
    fn g1_edges_wrap_mod_g() {
        let (g, labels) = fo(5, 1, &[2], 0);
        let v = |i| labels.v(i).unwrap();
        let o = apply(&g, &labels, &TransformSpec::G1 { a: 5 }).unwrap();
        // a = g: remove v_1 v_2, add v_1 v_{g-1}.
        assert!(!o.graph_out.has_edge(v(1), v(2)));
        assert!(o.graph_out.has_edge(v(1), v(4)));
        let o = apply(&g, &labels, &TransformSpec::G2 { a: 4 }).unwrap();
        // a = g-1: G1 = G - v_5 v_1 + v_5 v_3; G2 = G1 - v_3 v_2 + v_3 v_1.
        let h = &o.graph_out;
        assert!(!h.has_edge(v(5), v(1)) && h.has_edge(v(5), v(3)));
        assert!(!h.has_edge(v(3), v(2)) && h.has_edge(v(3), v(1)));
        assert!(h.is_unicyclic());
    }

    #[test]
    fn interior_rotation_respects_max() {
        let (g, labels) = fo(5, 1, &[], 0);
        let o1 = apply(&g, &labels, &TransformSpec::G1 { a: 2 }).unwrap();
        let o2 = apply(&g, &labels, &TransformSpec::G2 { a: 2 }).unwrap();
        assert!(o1.measured.gamma_in <= o1.measured.gamma_out.max(o2.measured.gamma_out));
        assert_eq!(o1.graph_out.girth().finite(), Some(3));
    }

    #[test]
    fn script_g1_shape() {
        // r = {4, 7}: gap r_1 - r_0 = 4.
        let (g, labels) = fo(7, 1, &[4], 0);
        let v = |i| labels.v(i).unwrap();
        let tau = labels.index(&Label::Pendant { host: 4, j: 1 }).unwrap();
        let o = apply(&g, &labels, &TransformSpec::ScriptG { i: 1 }).unwrap();
        let h = &o.graph_out;
        assert!(!h.has_edge(v(4), v(5)) && h.has_edge(v(4), v(2)));
        assert!(!h.has_edge(v(4), tau) && h.has_edge(v(1), tau));
        assert_eq!(o.gamma_relation, GammaRelation::Eq);
        let err = apply(&g, &labels, &TransformSpec::ScriptG { i: 2 }).unwrap_err();
        assert!(matches!(err, PerturbationError::PreconditionViolated(_)));
    }

    #[test]
    fn script_x_t_moves_path() {
        let (g, labels) = fo(7, 2, &[7], 0);
        let v = |i| labels.v(i).unwrap();
        let tau = labels.index(&Label::Pendant { host: 7, j: 1 }).unwrap();
        let o = apply(&g, &labels, &TransformSpec::ScriptX { i: 1 }).unwrap();
        let h = &o.graph_out;
        assert!(!h.has_edge(v(2), v(3)) && h.has_edge(v(2), v(7)));
        assert!(!h.has_edge(v(7), v(8)) && h.has_edge(v(3), v(8)));
        assert!(!h.has_edge(v(7), tau) && h.has_edge(v(3), tau));
        assert!(o.notes.is_empty());
        assert_eq!(o.gamma_status(), Status::Pass);
    }

    #[test]
    fn relocation_gives_h2() {
        let (h1, labels) = make(&FamilySpec::H1 {
            epsilon: 8,
            attach: vec![2, 4],
            extra: 0,
        })
        .unwrap();
        let o = apply(&h1, &labels, &TransformSpec::H2FromH1).unwrap();
        let (h2g, _) = h2(8, 2, 0).unwrap();
        assert!(is_isomorphic(&o.graph_out, &h2g));
        assert!(o.measured.gamma_in <= o.measured.gamma_out);
        assert_eq!(o.status(DEFAULT_MARGIN), Status::Pass);
    }

    #[test]
    fn cycle_to_k() {
        let (c9, labels) = make(&FamilySpec::Cycle { n: 9 }).unwrap();
        let o = apply(&c9, &labels, &TransformSpec::KFromCycle).unwrap();
        assert_eq!((o.measured.gamma_in, o.measured.gamma_out), (3, 3));
        assert!(o.measured.q_min_out < o.measured.q_min_in - DEFAULT_MARGIN);
        assert_eq!(o.status(DEFAULT_MARGIN), Status::Pass);
        let (c3, labels) = make(&FamilySpec::Cycle { n: 3 }).unwrap();
        let o = apply(&c3, &labels, &TransformSpec::KFromCycle).unwrap();
        assert_eq!(o.qmin_relation, QminRelation::Le);
        assert_eq!(o.graph_out, c3);
    }

    #[test]
    fn tree_move_symmetric_and_star_plus() {
        // Triangle: v1 and v2 are symmetric, the claim is not made.
        let t = tree_move(&named::cycle(3), 0, 1, &named::path(2), 0, DEFAULT_MARGIN).unwrap();
        assert!(!t.asserted);
        assert_eq!(t.status(DEFAULT_MARGIN), Status::Pass);
        // S4+: whenever |x_v1| exceeds |x_v2| on the before graph, moving the
        // pendant from v2 to v1 lowers q_min.
        let base = Graph::build(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let mut asserted = 0;
        for v1 in 0..4 {
            for v2 in (0..4).filter(|&v| v != v1) {
                let t = tree_move(&base, v1, v2, &named::path(2), 0, DEFAULT_MARGIN).unwrap();
                if t.asserted {
                    asserted += 1;
                    assert!(t.q_after < t.q_before - DEFAULT_MARGIN, "{v1} {v2}");
                }
            }
        }
        assert!(asserted > 0);
        let err = tree_move(&named::path(3), 0, 1, &named::path(2), 0, DEFAULT_MARGIN).unwrap_err();
        assert!(matches!(err, PerturbationError::PreconditionViolated(_)));
    }

    #[test]
    fn pendant_relocate_checks_branch() {
        let (g, labels) = fo(5, 1, &[1, 3], 0);
        let o = apply(&g, &labels, &TransformSpec::PendantRelocate { from: 1, to: 5 }).unwrap();
        assert_eq!(o.graph_out.pendants_at(labels.v(5).unwrap()).len(), 2);
        assert_eq!(o.status(DEFAULT_MARGIN), Status::Pass);
        assert!(apply(&g, &labels, &TransformSpec::PendantRelocate { from: 2, to: 5 }).is_err());
    }

    #[test]
    fn rotation_cases() {
        let r = [3, 7];
        let cases: Vec<&str> = (1..=7).map(|a| rotation_case(&r, 7, a).unwrap().1.name()).collect();
        // r_0 = 0: a=1..3 has gap 3; r_1 = 3: a=4..7 has gap 4.
        assert_eq!(cases, ["iv", "iv", "iv", "i", "iv", "iii", "iv"]);
        assert_eq!(rotation_case(&[3, 6], 7, 2), None);
    }

    #[test]
    fn descent_finds_triangle() {
        let (g, labels) = fo(7, 1, &[3], 1);
        let w = triangle_descent(&g, &labels, DEFAULT_MARGIN).unwrap().unwrap();
        assert_eq!(w.graph.girth().finite(), Some(3));
        assert!(w.gamma >= domination_number(&g).gamma);
        assert!(!to_graph6(&w.graph).is_empty());
    }
}
