//! Constructors for the named graph families.
//!
//! Vertex `v_i` is internal index `i - 1` wherever a family has a
//! spine `v_1 .. v_m`; added pendant vertices follow the spine in the order
//! they are listed. For the lollipop-based families the spine is the cycle
//! `v_1 .. v_g` followed by the path `v_g .. v_{g+l}`.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{coalesce, from_graph6, to_graph6, Graph, GraphError, VertexSet};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FamilyError {
    #[error("invalid {kind} spec: {reason}")]
    InvalidSpec { kind: &'static str, reason: String },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

fn invalid<T>(kind: &'static str, reason: impl Into<String>) -> Result<T, FamilyError> {
    Err(FamilyError::InvalidSpec {
        kind,
        reason: reason.into(),
    })
}

/// A rooted tree passed by value in JSON as graph6 plus root index.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootedTree {
    pub graph6: String,
    pub root: usize,
}

impl RootedTree {
    pub fn new(tree: &Graph, root: usize) -> RootedTree {
        RootedTree {
            graph6: to_graph6(tree),
            root,
        }
    }
}

/// One named family and its parameters. Vertex positions are 1-based spine indices
/// (1-based). `extra` always counts pendants added at `v_{g+l-1}` beyond the
/// path end `v_{g+l}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params")]
pub enum FamilySpec {
    Path {
        n: usize,
    },
    Cycle {
        n: usize,
    },
    /// `K_{1,n-1}`, centre `v_1`.
    Star {
        n: usize,
    },
    /// Star plus an edge joining the pendants `v_2` and `v_3`.
    StarPlus {
        n: usize,
    },
    Complete {
        n: usize,
    },
    CompleteBipartite {
        r: usize,
        s: usize,
    },
    /// `L_{g,l}`: cycle `v_1..v_g`, path `v_g..v_{g+l}`.
    Lollipop {
        g: usize,
        l: usize,
    },
    /// `L_{g,l}` with one pendant per entry of `pendants` (repeats allowed).
    FGraph {
        g: usize,
        l: usize,
        pendants: Vec<usize>,
    },
    /// Script-F graph with `v_g` not a p-dominator.
    CurlyF {
        g: usize,
        l: usize,
        attach: Vec<usize>,
        extra: usize,
    },
    /// Script-F graph with `v_g` a p-dominator.
    CurlyFCirc {
        g: usize,
        l: usize,
        attach: Vec<usize>,
        extra: usize,
    },
    /// Triangle, path `v_3..v_{3+k}`, and `n-3-k` pendants at `v_{3+k}`.
    C3Star {
        k: usize,
        n: usize,
    },
    Corona {
        base: Box<FamilySpec>,
    },
    H1 {
        epsilon: usize,
        attach: Vec<usize>,
        extra: usize,
    },
    H2 {
        epsilon: usize,
        k: usize,
        extra: usize,
    },
    /// Built from `H2(epsilon, k, extra)`; needs `k >= 1`, `extra >= 1`.
    H3 {
        epsilon: usize,
        k: usize,
        extra: usize,
    },
    /// `H^{k-1}_4` built from `H2(epsilon, k, extra)`; needs `k >= 1`.
    H4 {
        epsilon: usize,
        k: usize,
        extra: usize,
    },
    /// `H^{k-2}_5` built from `H2(epsilon, k, extra)`; needs `k >= 2`.
    H5 {
        epsilon: usize,
        k: usize,
        extra: usize,
    },
    ScriptH3 {
        n: usize,
        alpha: usize,
    },
    Theorem39K {
        n: usize,
    },
    CycleWithTrees {
        k: usize,
        trees: Vec<RootedTree>,
        positions: Vec<usize>,
    },
}

impl FamilySpec {
    pub fn kind(&self) -> &'static str {
        match self {
            FamilySpec::Path { .. } => "Path",
            FamilySpec::Cycle { .. } => "Cycle",
            FamilySpec::Star { .. } => "Star",
            FamilySpec::StarPlus { .. } => "StarPlus",
            FamilySpec::Complete { .. } => "Complete",
            FamilySpec::CompleteBipartite { .. } => "CompleteBipartite",
            FamilySpec::Lollipop { .. } => "Lollipop",
            FamilySpec::FGraph { .. } => "FGraph",
            FamilySpec::CurlyF { .. } => "CurlyF",
            FamilySpec::CurlyFCirc { .. } => "CurlyFCirc",
            FamilySpec::C3Star { .. } => "C3Star",
            FamilySpec::Corona { .. } => "Corona",
            FamilySpec::H1 { .. } => "H1",
            FamilySpec::H2 { .. } => "H2",
            FamilySpec::H3 { .. } => "H3",
            FamilySpec::H4 { .. } => "H4",
            FamilySpec::H5 { .. } => "H5",
            FamilySpec::ScriptH3 { .. } => "ScriptH3",
            FamilySpec::Theorem39K { .. } => "Theorem39K",
            FamilySpec::CycleWithTrees { .. } => "CycleWithTrees",
        }
    }
}

/// Display name of a vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Label {
    /// `v_i`, 1-based.
    V(usize),
    /// `j`-th added pendant at `v_host`.
    Pendant { host: usize, j: usize },
    Named(String),
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::V(i) => write!(f, "v_{i}"),
            Label::Pendant { host, j: 1 } => write!(f, "tau_{host}"),
            Label::Pendant { host, j } => write!(f, "tau_{host}.{j}"),
            Label::Named(s) => f.write_str(s),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabelMap {
    labels: Vec<Label>,
    index: HashMap<Label, usize>,
    /// `g` when `v_1 .. v_g` is the cycle.
    pub cycle_len: Option<usize>,
    /// `l` for lollipop-based families.
    pub path_len: Option<usize>,
    pub flags: Vec<String>,
}

impl LabelMap {
    pub fn new(labels: Vec<Label>) -> LabelMap {
        let index: HashMap<Label, usize> =
            labels.iter().cloned().enumerate().map(|(i, l)| (l, i)).collect();
        assert_eq!(index.len(), labels.len(), "labels must be distinct");
        LabelMap {
            labels,
            index,
            cycle_len: None,
            path_len: None,
            flags: Vec::new(),
        }
    }

    /// `v_1 .. v_n` in index order.
    pub fn spine(n: usize) -> LabelMap {
        LabelMap::new((1..=n).map(Label::V).collect())
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, idx: usize) -> &Label {
        &self.labels[idx]
    }

    pub fn index(&self, l: &Label) -> Option<usize> {
        self.index.get(l).copied()
    }

    /// Internal index of `v_i`.
    pub fn v(&self, i: usize) -> Option<usize> {
        self.index(&Label::V(i))
    }

    pub fn names(&self) -> Vec<String> {
        self.labels.iter().map(|l| l.to_string()).collect()
    }

    pub fn with_cycle(mut self, g: usize) -> LabelMap {
        self.cycle_len = Some(g);
        self
    }

    fn with_path(mut self, l: usize) -> LabelMap {
        self.path_len = Some(l);
        self
    }

    fn flag(mut self, f: &str) -> LabelMap {
        self.flags.push(f.to_string());
        self
    }
}

#[derive(Default)]
struct Builder {
    labels: Vec<Label>,
    edges: Vec<(usize, usize)>,
}

impl Builder {
    fn vertex(&mut self, l: Label) -> usize {
        self.labels.push(l);
        self.labels.len() - 1
    }

    fn edge(&mut self, a: usize, b: usize) {
        self.edges.push((a, b));
    }

    fn finish(self) -> Result<(Graph, LabelMap), FamilyError> {
        let g = Graph::build(self.labels.len(), &self.edges)?;
        Ok((g, LabelMap::new(self.labels)))
    }
}

/// `L_{g,l}` plus `counts[i]` pendants at each `v_i` (1-based).
fn lollipop_with_pendants(
    g: usize,
    l: usize,
    counts: &[(usize, usize)],
) -> Result<(Graph, LabelMap), FamilyError> {
    let mut b = Builder::default();
    for i in 1..=g + l {
        b.vertex(Label::V(i));
    }
    for i in 1..g {
        b.edge(i - 1, i);
    }
    b.edge(g - 1, 0);
    for i in g..g + l {
        b.edge(i - 1, i);
    }
    let mut next_j: HashMap<usize, usize> = HashMap::new();
    for &(host, count) in counts {
        for _ in 0..count {
            let j = next_j.entry(host).or_insert(0);
            *j += 1;
            let p = b.vertex(Label::Pendant { host, j: *j });
            b.edge(host - 1, p);
        }
    }
    let (graph, labels) = b.finish()?;
    Ok((graph, labels.with_cycle(g).with_path(l)))
}

fn check_lollipop(kind: &'static str, g: usize, l: usize) -> Result<(), FamilyError> {
    if g < 3 {
        return invalid(kind, format!("girth g={g} must be at least 3"));
    }
    if l < 1 {
        return invalid(kind, "path length l must be at least 1");
    }
    Ok(())
}

fn check_order(kind: &'static str, n: usize) -> Result<(), FamilyError> {
    if n > crate::graph::MAX_ORDER {
        return invalid(kind, format!("order {n} exceeds 64"));
    }
    Ok(())
}

fn curly_f(
    kind: &'static str,
    g: usize,
    l: usize,
    attach: &[usize],
    extra: usize,
    circ: bool,
) -> Result<(Graph, LabelMap), FamilyError> {
    check_lollipop(kind, g, l)?;
    let tail = g + l - 1;
    if attach.windows(2).any(|w| w[0] >= w[1]) {
        return invalid(kind, "attachment positions must be strictly increasing");
    }
    if let Some(&a) = attach.iter().find(|&&a| a == 0 || a >= tail) {
        return invalid(
            kind,
            format!("attachment v_{a} must be a nonpendant vertex other than v_{tail}"),
        );
    }
    let vg_dominates = l == 1 || attach.contains(&g);
    if circ && !vg_dominates {
        return invalid(kind, format!("v_{g} must be a p-dominator"));
    }
    if !circ && vg_dominates {
        return invalid(kind, format!("v_{g} must not be a p-dominator"));
    }
    check_order(kind, g + l + attach.len() + extra)?;
    let mut counts: Vec<(usize, usize)> = attach.iter().map(|&a| (a, 1)).collect();
    counts.push((tail, extra));
    let (graph, labels) = lollipop_with_pendants(g, l, &counts)?;
    Ok((graph, if extra == 0 { labels.flag("tail_without_pendants") } else { labels }))
}

fn h_family(
    kind: &'static str,
    epsilon: usize,
    attach: &[usize],
    extra_at_tail: usize,
) -> Result<(Graph, LabelMap), FamilyError> {
    if epsilon < 4 {
        return invalid(kind, format!("epsilon={epsilon} must be at least 4"));
    }
    if attach.windows(2).any(|w| w[0] >= w[1]) {
        return invalid(kind, "attachment positions must be strictly increasing");
    }
    if let Some(&a) = attach.iter().find(|&&a| a == 0 || a > epsilon - 2) {
        return invalid(kind, format!("attachment v_{a} outside v_1..v_{}", epsilon - 2));
    }
    check_order(kind, epsilon + attach.len() + extra_at_tail)?;
    let mut counts: Vec<(usize, usize)> = attach.iter().map(|&a| (a, 1)).collect();
    counts.push((epsilon - 1, extra_at_tail));
    lollipop_with_pendants(3, epsilon - 3, &counts)
}

fn h2_positions(kind: &'static str, epsilon: usize, k: usize) -> Result<Vec<usize>, FamilyError> {
    if epsilon < 4 {
        return invalid(kind, format!("epsilon={epsilon} must be at least 4"));
    }
    if k > epsilon - 2 {
        return invalid(kind, format!("k={k} exceeds epsilon-2={}", epsilon - 2));
    }
    Ok((epsilon - 1 - k..=epsilon - 2).collect())
}

/// `𝓗^k_2`: pendants at `v_{ε-1-k} .. v_{ε-2}`, `extra` more at `v_{ε-1}`.
pub fn h2(epsilon: usize, k: usize, extra: usize) -> Result<(Graph, LabelMap), FamilyError> {
    let attach = h2_positions("H2", epsilon, k)?;
    h_family("H2", epsilon, &attach, extra)
}

/// Parameters `(ε, k)` of `𝓗_{3,α}` as an `𝓗^k_2` of order `n`.
pub fn script_h3_params(n: usize, alpha: usize) -> Option<(usize, usize)> {
    if alpha == 0 {
        return (n == 3).then_some((3, 0));
    }
    (n >= 2 * alpha && n >= alpha + 3).then(|| (n - alpha + 1, alpha - 1))
}

/// `𝓗_{3,α}` of order `n`: `𝓗^{α-1}_2` with one pendant at `v_{ε-1}`,
/// `ε = n - α + 1`. `𝓗_{3,0}` is `C_3`.
pub fn make_script_h3(n: usize, alpha: usize) -> Result<(Graph, LabelMap), FamilyError> {
    match script_h3_params(n, alpha) {
        None => invalid(
            "ScriptH3",
            format!("no H_(3,{alpha}) of order {n}: need n=3 for alpha=0, else n >= max(2*alpha, alpha+3)"),
        ),
        Some(_) if alpha == 0 => cycle_graph(3),
        Some((epsilon, k)) => h2(epsilon, k, 0),
    }
}

/// Variants 1..=5 of the 𝓗 family. Variant 1 uses `attach`; the others use
/// `k` and ignore `attach`.
pub fn make_h_family(
    variant: u8,
    epsilon: usize,
    k: usize,
    attach: &[usize],
    extra: usize,
) -> Result<(Graph, LabelMap), FamilyError> {
    match variant {
        1 => h_family("H1", epsilon, attach, extra),
        2 => h2(epsilon, k, extra),
        3 => {
            if k < 1 || extra < 1 {
                return invalid("H3", "needs k >= 1 and at least two pendants at v_(eps-1)");
            }
            let attach = h2_positions("H3", epsilon, k)?;
            let (g, labels) = h_family("H3", epsilon, &attach, extra)?;
            let tail = labels.v(epsilon - 1).unwrap();
            let moved = labels.index(&Label::Pendant { host: epsilon - 1 - k, j: 1 }).unwrap();
            let omega1 = labels.v(epsilon).unwrap();
            let mut h = g.delete_edge(epsilon - 2 - k, moved)?.add_edge(tail, moved)?;
            for j in 1..=extra {
                let w = labels.index(&Label::Pendant { host: epsilon - 1, j }).unwrap();
                h = h.delete_edge(tail, w)?.add_edge(omega1, w)?;
            }
            Ok((h, labels))
        }
        4 | 5 => {
            let kind = if variant == 4 { "H4" } else { "H5" };
            let need = (variant - 3) as usize;
            if k < need {
                return invalid(kind, format!("needs k >= {need}"));
            }
            let attach = h2_positions(kind, epsilon, k)?;
            let (mut g, labels) = h_family(kind, epsilon, &attach, extra)?;
            let tail = labels.v(epsilon - 1).unwrap();
            for host in epsilon - 1 - k..epsilon - 1 - k + need {
                let t = labels.index(&Label::Pendant { host, j: 1 }).unwrap();
                g = g.delete_edge(host - 1, t)?.add_edge(tail, t)?;
            }
            Ok((g, labels))
        }
        _ => invalid("H1", format!("unknown variant {variant}")),
    }
}

fn cycle_graph(n: usize) -> Result<(Graph, LabelMap), FamilyError> {
    if n < 3 {
        return invalid("Cycle", format!("n={n} must be at least 3"));
    }
    check_order("Cycle", n)?;
    let g = crate::graph::named::cycle(n);
    Ok((g, LabelMap::spine(n).with_cycle(n)))
}

/// Edge moves turning `C_n` into `𝒦`, as `(remove, add)` pairs of 1-based
/// indices. Indices wrap mod `n` into `1..=n`.
pub fn k_family_rewiring(n: usize) -> Result<Vec<((usize, usize), (usize, usize))>, FamilyError> {
    if n % 2 == 0 || n < 3 {
        return invalid("Theorem39K", format!("n={n} must be odd and at least 3"));
    }
    if n == 3 {
        return Ok(Vec::new());
    }
    let wrap = |i: usize| (i - 1) % n + 1;
    let a = n.div_ceil(2);
    let b = (n + 2).div_ceil(2);
    let c = (n - 2) / 2;
    let mut moves = vec![((a, b), (a, c))];
    if n % 3 == 1 {
        let d = (n + 4).div_ceil(2);
        let e = wrap((n + 8).div_ceil(2));
        moves.push(((b, d), (b, e)));
    }
    Ok(moves)
}

/// `𝒦`: `C_n` rewired into a girth-3 unicyclic graph.
pub fn make_theorem39_k(n: usize) -> Result<(Graph, LabelMap), FamilyError> {
    let moves = k_family_rewiring(n)?;
    check_order("Theorem39K", n)?;
    let mut g = crate::graph::named::cycle(n);
    for ((r1, r2), (a1, a2)) in moves {
        g = g.delete_edge(r1 - 1, r2 - 1)?.add_edge(a1 - 1, a2 - 1)?;
    }
    Ok((g, LabelMap::spine(n)))
}

/// Odd cycle `v_1..v_k` with tree `trees[j]` identified at `v_{positions[j]+1}`
/// (positions are 0-based cycle indices).
pub fn make_cycle_with_trees(
    k: usize,
    trees: &[(Graph, usize)],
    positions: &[usize],
) -> Result<(Graph, LabelMap), FamilyError> {
    const KIND: &str = "CycleWithTrees";
    if k < 3 || k % 2 == 0 {
        return invalid(KIND, format!("cycle length k={k} must be odd and at least 3"));
    }
    if trees.len() != positions.len() {
        return invalid(KIND, "one position per tree");
    }
    let distinct: VertexSet = positions.iter().copied().collect();
    if distinct.len() != positions.len() || positions.iter().any(|&p| p >= k) {
        return invalid(KIND, "positions must be distinct cycle indices below k");
    }
    for (j, (t, root)) in trees.iter().enumerate() {
        if t.order() < 2 || !t.is_connected() || t.size() != t.order() - 1 || *root >= t.order() {
            return invalid(KIND, format!("tree {j} must be a nontrivial tree with a valid root"));
        }
    }
    let total = k + trees.iter().map(|(t, _)| t.order() - 1).sum::<usize>();
    check_order(KIND, total)?;
    let mut g = crate::graph::named::cycle(k);
    let mut labels: Vec<Label> = (1..=k).map(Label::V).collect();
    for (j, ((t, root), &pos)) in trees.iter().zip(positions).enumerate() {
        let c = coalesce(&g, pos, t, *root)?;
        let mut names = vec![Label::Named(String::new()); t.order()];
        for (x, &idx) in c.second.iter().enumerate() {
            if x != *root {
                names[idx - g.order()] = Label::Named(format!("T{}_{}", j + 1, x));
            }
        }
        labels.extend(names.into_iter().filter(|l| l != &Label::Named(String::new())));
        g = c.graph;
    }
    Ok((g, LabelMap::new(labels).with_cycle(k)))
}

pub fn make(spec: &FamilySpec) -> Result<(Graph, LabelMap), FamilyError> {
    use crate::graph::named;
    match spec {
        FamilySpec::Path { n } => {
            if *n < 1 {
                return invalid("Path", "n must be at least 1");
            }
            check_order("Path", *n)?;
            Ok((named::path(*n), LabelMap::spine(*n)))
        }
        FamilySpec::Cycle { n } => cycle_graph(*n),
        FamilySpec::Star { n } => {
            if *n < 2 {
                return invalid("Star", "n must be at least 2");
            }
            check_order("Star", *n)?;
            Ok((named::star(*n), LabelMap::spine(*n)))
        }
        FamilySpec::StarPlus { n } => {
            if *n < 4 {
                return invalid("StarPlus", "n must be at least 4");
            }
            check_order("StarPlus", *n)?;
            Ok((named::star(*n).add_edge(1, 2)?, LabelMap::spine(*n)))
        }
        FamilySpec::Complete { n } => {
            if *n < 1 {
                return invalid("Complete", "n must be at least 1");
            }
            check_order("Complete", *n)?;
            Ok((named::complete(*n), LabelMap::spine(*n)))
        }
        FamilySpec::CompleteBipartite { r, s } => {
            if *r < 1 || *s < 1 {
                return invalid("CompleteBipartite", "both parts must be nonempty");
            }
            check_order("CompleteBipartite", r + s)?;
            Ok((named::complete_bipartite(*r, *s), LabelMap::spine(r + s)))
        }
        FamilySpec::Lollipop { g, l } => {
            check_lollipop("Lollipop", *g, *l)?;
            check_order("Lollipop", g + l)?;
            lollipop_with_pendants(*g, *l, &[])
        }
        FamilySpec::FGraph { g, l, pendants } => {
            check_lollipop("FGraph", *g, *l)?;
            if let Some(&a) = pendants.iter().find(|&&a| a == 0 || a >= g + l) {
                return invalid("FGraph", format!("v_{a} is not a nonpendant vertex of L_(g,l)"));
            }
            check_order("FGraph", g + l + pendants.len())?;
            let mut sorted = pendants.clone();
            sorted.sort_unstable();
            let counts: Vec<(usize, usize)> = sorted.iter().map(|&a| (a, 1)).collect();
            lollipop_with_pendants(*g, *l, &counts)
        }
        FamilySpec::CurlyF { g, l, attach, extra } => curly_f("CurlyF", *g, *l, attach, *extra, false),
        FamilySpec::CurlyFCirc { g, l, attach, extra } => {
            curly_f("CurlyFCirc", *g, *l, attach, *extra, true)
        }
        FamilySpec::C3Star { k, n } => {
            let min = k + 4;
            if *n < min {
                return invalid("C3Star", format!("n={n} must be at least k+4={min}"));
            }
            check_order("C3Star", *n)?;
            let (g, labels) = lollipop_with_pendants(3, *k + 1, &[])?;
            // L_{3,k+1} has one pendant v_{k+4} at v_{k+3}; add the rest there.
            let mut b = Builder::default();
            for i in 0..g.order() {
                b.vertex(labels.label(i).clone());
            }
            b.edges = g.edges();
            for j in 1..=n - min {
                let p = b.vertex(Label::Pendant { host: k + 3, j });
                b.edge(k + 2, p);
            }
            let (graph, labels) = b.finish()?;
            if *k == 0 {
                Ok((graph, labels.with_cycle(3).flag("degenerate_k0")))
            } else {
                Ok((graph, labels.with_cycle(3)))
            }
        }
        FamilySpec::Corona { base } => {
            let (h, hl) = make(base)?;
            let n = h.order();
            check_order("Corona", 2 * n)?;
            let mut b = Builder::default();
            for i in 0..n {
                b.vertex(hl.label(i).clone());
            }
            b.edges = h.edges();
            for i in 0..n {
                let p = b.vertex(Label::Named(format!("{}'", hl.label(i))));
                b.edge(i, p);
            }
            b.finish()
        }
        FamilySpec::H1 { epsilon, attach, extra } => make_h_family(1, *epsilon, attach.len(), attach, *extra),
        FamilySpec::H2 { epsilon, k, extra } => make_h_family(2, *epsilon, *k, &[], *extra),
        FamilySpec::H3 { epsilon, k, extra } => make_h_family(3, *epsilon, *k, &[], *extra),
        FamilySpec::H4 { epsilon, k, extra } => make_h_family(4, *epsilon, *k, &[], *extra),
        FamilySpec::H5 { epsilon, k, extra } => make_h_family(5, *epsilon, *k, &[], *extra),
        FamilySpec::ScriptH3 { n, alpha } => make_script_h3(*n, *alpha),
        FamilySpec::Theorem39K { n } => make_theorem39_k(*n),
        FamilySpec::CycleWithTrees { k, trees, positions } => {
            let parsed: Result<Vec<(Graph, usize)>, FamilyError> = trees
                .iter()
                .map(|t| Ok((from_graph6(&t.graph6)?, t.root)))
                .collect();
            make_cycle_with_trees(*k, &parsed?, positions)
        }
    }
}

/// A labelling of a unicyclic graph as a script-F graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FLabeling {
    pub g: usize,
    pub l: usize,
    /// Internal index of `v_i` at position `i - 1`, for `i` in `1..=g+l`.
    pub spine: Vec<usize>,
}

impl FLabeling {
    /// Spine indices `i <= g` of cycle vertices that carry pendants.
    pub fn cycle_p_dominators(&self, graph: &Graph) -> Vec<usize> {
        let pd = graph.p_dominators();
        (1..=self.g).filter(|&i| pd.contains(self.spine[i - 1])).collect()
    }

    pub fn is_circ(&self, graph: &Graph) -> bool {
        graph.p_dominators().contains(self.spine[self.g - 1])
    }

    /// Label map: spine vertices `v_i`, other vertices as pendants of their host.
    pub fn label_map(&self, graph: &Graph) -> LabelMap {
        let mut labels: Vec<Option<Label>> = vec![None; graph.order()];
        for (i, &v) in self.spine.iter().enumerate() {
            labels[v] = Some(Label::V(i + 1));
        }
        for (i, &v) in self.spine.iter().enumerate() {
            let mut j = 0;
            for p in graph.neighbors(v).iter() {
                if labels[p].is_none() {
                    j += 1;
                    labels[p] = Some(Label::Pendant { host: i + 1, j });
                }
            }
        }
        let labels = labels.into_iter().map(|l| l.expect("every vertex labelled")).collect();
        LabelMap::new(labels).with_cycle(self.g).with_path(self.l)
    }
}

/// All script-F labellings of `graph` (both orientations of the cycle, and
/// every admissible choice of `v_g`). Empty when `graph` is not script-F.
pub fn recognize_curly_f(graph: &Graph) -> Vec<FLabeling> {
    let Some(cycle) = graph.unique_cycle() else {
        return Vec::new();
    };
    let g = cycle.len();
    let pendants = graph.pendant_vertices();
    let core = graph.vertices().difference(pendants);
    let on_cycle: VertexSet = cycle.iter().copied().collect();
    let off = core.difference(on_cycle);
    let core_deg = |v: usize| graph.neighbors(v).intersection(core).len();

    // (v_g position on cycle, path v_{g+1} .. v_{g+l-1} through the core)
    let mut anchors: Vec<(usize, Vec<usize>)> = Vec::new();
    if off.is_empty() {
        for (pos, &c) in cycle.iter().enumerate() {
            if !graph.pendants_at(c).is_empty() {
                anchors.push((pos, Vec::new()));
            }
        }
    } else {
        let hubs: Vec<usize> = (0..g).filter(|&p| core_deg(cycle[p]) == 3).collect();
        if hubs.len() != 1 || cycle.iter().any(|&c| core_deg(c) > 3) {
            return Vec::new();
        }
        let hub = cycle[hubs[0]];
        let mut path = Vec::new();
        let mut prev = hub;
        let mut cur = graph.neighbors(hub).intersection(off).first().unwrap();
        loop {
            path.push(cur);
            let next: Vec<usize> = graph
                .neighbors(cur)
                .intersection(core)
                .iter()
                .filter(|&w| w != prev)
                .collect();
            match next.len() {
                0 => break,
                1 => {
                    prev = cur;
                    cur = next[0];
                }
                _ => return Vec::new(),
            }
        }
        if path.len() != off.len() {
            return Vec::new();
        }
        anchors.push((hubs[0], path));
    }

    let mut out = Vec::new();
    for (pos, path) in anchors {
        let tail = *path.last().unwrap_or(&cycle[pos]);
        let ok = core
            .iter()
            .filter(|&v| v != tail)
            .all(|v| graph.pendants_at(v).len() <= 1);
        if !ok || graph.pendants_at(tail).is_empty() {
            continue;
        }
        let end = graph.pendants_at(tail).first().unwrap();
        for dir in [1, g - 1] {
            let mut spine: Vec<usize> = (1..=g).map(|i| cycle[(pos + i * dir) % g]).collect();
            spine.extend(&path);
            spine.push(end);
            out.push(FLabeling {
                g,
                l: path.len() + 1,
                spine,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{cycle, path, star};
    use crate::graph::{is_isomorphic, Girth};

    fn build(spec: FamilySpec) -> Graph {
        make(&spec).unwrap().0
    }

    #[test]
    fn lollipop_3_1() {
        let (g, labels) = make(&FamilySpec::Lollipop { g: 3, l: 1 }).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g, Graph::build(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap());
        assert_eq!(labels.v(4), Some(3));
        assert_eq!(labels.cycle_len, Some(3));
    }

    #[test]
    fn c3_star_k0_is_triangle_with_two_pendants() {
        let (g, labels) = make(&FamilySpec::C3Star { k: 0, n: 5 }).unwrap();
        assert_eq!(g.order(), 5);
        assert_eq!(g.degree(2), 4);
        assert_eq!(g.pendant_vertices().len(), 2);
        assert!(labels.flags.contains(&"degenerate_k0".to_string()));
        let g = build(FamilySpec::C3Star { k: 3, n: 8 });
        assert_eq!(g.pendants_at(5).len(), 2);
        assert!(make(&FamilySpec::C3Star { k: 1, n: 4 }).is_err());
    }

    #[test]
    fn corona_of_p2() {
        let g = build(FamilySpec::Corona {
            base: Box::new(FamilySpec::Path { n: 2 }),
        });
        assert_eq!(g, Graph::build(4, &[(0, 1), (0, 2), (1, 3)]).unwrap());
    }

    #[test]
    fn script_h3_small_cases() {
        let (s4p, _) = make_script_h3(4, 1).unwrap();
        let star_plus = build(FamilySpec::StarPlus { n: 4 });
        assert!(is_isomorphic(&s4p, &star_plus));
        assert_eq!(make_script_h3(3, 0).unwrap().0, cycle(3));
        let (h, _) = make_script_h3(6, 2).unwrap();
        assert_eq!(h.p_dominators().len(), 2);
        assert!(make_script_h3(5, 3).is_err());
        assert!(make_script_h3(4, 0).is_err());
    }

    #[test]
    fn script_h3_structure() {
        for n in 4..=14 {
            for alpha in 1..=n / 2 {
                let Ok((g, labels)) = make_script_h3(n, alpha) else {
                    continue;
                };
                assert_eq!(g.order(), n);
                assert!(g.is_unicyclic());
                assert_eq!(g.girth(), Girth::Finite(3));
                assert_eq!(g.p_dominators().len(), alpha, "n={n} alpha={alpha}");
                let (eps, _) = script_h3_params(n, alpha).unwrap();
                let tail = labels.v(eps - 1).unwrap();
                assert_eq!(g.pendants_at(tail).len(), 1);
            }
        }
    }

    #[test]
    fn h1_with_no_attachments_is_h2_k0() {
        for eps in 4..9 {
            for extra in 0..3 {
                let a = make_h_family(1, eps, 0, &[], extra).unwrap().0;
                let b = make_h_family(2, eps, 0, &[], extra).unwrap().0;
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn h_family_edge_algebra() {
        // H2(7,2): pendants at v_4, v_5; v_7 hangs at v_6.
        let (g, l) = make_h_family(2, 7, 2, &[], 0).unwrap();
        assert_eq!(g.order(), 9);
        let pd: Vec<_> = g.p_dominators().iter().map(|v| l.label(v).clone()).collect();
        assert_eq!(pd, vec![Label::V(4), Label::V(5), Label::V(6)]);
        // H4 from H2(7,2): the pendant of v_4 moves to v_6.
        let (h4, l4) = make_h_family(4, 7, 2, &[], 0).unwrap();
        assert_eq!(h4.pendants_at(l4.v(6).unwrap()).len(), 2);
        assert!(h4.pendants_at(l4.v(4).unwrap()).is_empty());
        // H5 also moves the pendant of v_5.
        let (h5, l5) = make_h_family(5, 7, 2, &[], 0).unwrap();
        assert_eq!(h5.pendants_at(l5.v(6).unwrap()).len(), 3);
        // H3 from H2(7,2,extra=1): omega_2 hangs from v_7.
        let (h3, l3) = make_h_family(3, 7, 2, &[], 1).unwrap();
        assert_eq!(h3.degree(l3.v(7).unwrap()), 2);
        assert!(h3.is_unicyclic());
        assert!(make_h_family(3, 7, 2, &[], 0).is_err());
        assert!(make_h_family(5, 7, 1, &[], 0).is_err());
        assert!(make_h_family(2, 3, 0, &[], 0).is_err());
    }

    #[test]
    fn k_family_shapes() {
        let (k7, _) = make_theorem39_k(7).unwrap();
        // C7 - v4v5 - v5v6 + v4v2 + v5v1
        let expected = cycle(7)
            .delete_edge(3, 4)
            .unwrap()
            .delete_edge(4, 5)
            .unwrap()
            .add_edge(3, 1)
            .unwrap()
            .add_edge(4, 0)
            .unwrap();
        assert_eq!(k7, expected);
        let (k5, _) = make_theorem39_k(5).unwrap();
        assert_eq!(k5, cycle(5).delete_edge(2, 3).unwrap().add_edge(2, 0).unwrap());
        assert_eq!(make_theorem39_k(3).unwrap().0, cycle(3));
        assert!(make_theorem39_k(8).is_err());
        for n in (5..=25).step_by(2) {
            let (k, _) = make_theorem39_k(n).unwrap();
            assert!(k.is_unicyclic(), "n={n}");
            assert_eq!(k.girth(), Girth::Finite(3), "n={n}");
        }
    }

    #[test]
    fn cycle_with_trees_examples() {
        let (g, _) = make_cycle_with_trees(3, &[(path(2), 0)], &[0]).unwrap();
        assert!(is_isomorphic(&g, &build(FamilySpec::Lollipop { g: 3, l: 1 })));
        let (g, _) = make_cycle_with_trees(5, &[(path(2), 0), (path(2), 0)], &[0, 2]).unwrap();
        assert_eq!(g.order(), 7);
        assert_eq!(g.pendant_vertices().len(), 2);
        let (g, _) = make_cycle_with_trees(3, &[(star(3), 0)], &[1]).unwrap();
        assert_eq!(g.order(), 5);
        assert!(make_cycle_with_trees(4, &[], &[]).is_err());
        assert!(make_cycle_with_trees(3, &[(path(2), 0), (path(2), 0)], &[1, 1]).is_err());
    }

    #[test]
    fn curly_f_circ_flag_matches_structure() {
        for g in [3, 5, 7] {
            for l in 1..=3 {
                let tail = g + l - 1;
                for mask in 0u32..1 << (tail - 1) {
                    let attach: Vec<usize> = (1..tail).filter(|&i| mask >> (i - 1) & 1 == 1).collect();
                    for extra in 0..2 {
                        for circ in [false, true] {
                            let spec = if circ {
                                FamilySpec::CurlyFCirc { g, l, attach: attach.clone(), extra }
                            } else {
                                FamilySpec::CurlyF { g, l, attach: attach.clone(), extra }
                            };
                            let Ok((graph, labels)) = make(&spec) else {
                                continue;
                            };
                            let vg = labels.v(g).unwrap();
                            assert_eq!(graph.p_dominators().contains(vg), circ, "{spec:?}");
                            assert_eq!(graph.order(), g + l + attach.len() + extra);
                            assert!(!recognize_curly_f(&graph).is_empty(), "{spec:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn recognizer_rejects_non_f_graphs() {
        // Two pendants on a non-tail cycle vertex plus a path elsewhere.
        let g = build(FamilySpec::FGraph { g: 5, l: 2, pendants: vec![1, 1] });
        assert!(recognize_curly_f(&g).is_empty());
        // Two pendant paths.
        let g = cycle(5);
        let g = coalesce(&g, 0, &path(3), 0).unwrap().graph;
        let g = coalesce(&g, 2, &path(3), 0).unwrap().graph;
        assert!(recognize_curly_f(&g).is_empty());
        assert!(recognize_curly_f(&path(4)).is_empty());
    }

    #[test]
    fn recognizer_recovers_labels() {
        let spec = FamilySpec::CurlyFCirc { g: 5, l: 3, attach: vec![2, 5, 6], extra: 1 };
        let (graph, labels) = make(&spec).unwrap();
        let found = recognize_curly_f(&graph);
        assert_eq!(found.len(), 2);
        let expected: Vec<usize> = (1..=8).map(|i| labels.v(i).unwrap()).collect();
        assert!(found.iter().any(|f| f.spine == expected));
        assert!(found.iter().all(|f| f.g == 5 && f.l == 3 && f.is_circ(&graph)));
        let lm = found[0].label_map(&graph);
        assert_eq!(lm.len(), graph.order());
    }

    #[test]
    fn json_shape() {
        let spec = FamilySpec::ScriptH3 { n: 4, alpha: 1 };
        let text = serde_json::to_string(&spec).unwrap();
        assert_eq!(text, r#"{"kind":"ScriptH3","params":{"n":4,"alpha":1}}"#);
        let back: FamilySpec = serde_json::from_str(&text).unwrap();
        assert_eq!(back, spec);
        let corona: FamilySpec = serde_json::from_str(
            r#"{"kind":"Corona","params":{"base":{"kind":"Cycle","params":{"n":4}}}}"#,
        )
        .unwrap();
        assert_eq!(make(&corona).unwrap().0.order(), 8);
    }

    #[test]
    fn invalid_specs_name_the_problem() {
        let err = make(&FamilySpec::Lollipop { g: 2, l: 1 }).unwrap_err();
        assert!(err.to_string().contains("girth"));
        let err = make(&FamilySpec::CurlyF { g: 5, l: 1, attach: vec![], extra: 0 }).unwrap_err();
        assert!(err.to_string().contains("p-dominator"));
        assert!(make(&FamilySpec::CurlyFCirc { g: 5, l: 2, attach: vec![6], extra: 0 }).is_err());
    }
}
