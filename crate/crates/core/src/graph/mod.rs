//! Small immutable graphs stored as one adjacency word per vertex.

mod canon;
mod graph6;
mod vertex_set;

pub use canon::{canonical, canonical_graph6, is_isomorphic, CanonicalForm};
pub use graph6::{from_graph6, to_graph6};
pub use vertex_set::VertexSet;

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

pub const MAX_ORDER: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("order {0} is outside 1..=64")]
    BadOrder(usize),
    #[error("vertex {vertex} out of range for order {n}")]
    OutOfRange { vertex: usize, n: usize },
    #[error("self loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge {0}-{1} is absent")]
    EdgeAbsent(usize, usize),
    #[error("edge {0}-{1} is already present")]
    EdgePresent(usize, usize),
    #[error("deleting every vertex leaves no graph")]
    EmptyResult,
    #[error("malformed graph6: {0}")]
    MalformedGraph6(String),
    #[error("malformed DOT: {0}")]
    MalformedDot(String),
}

/// Cycle length, with `Infinite` for graphs that have no (odd) cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Girth {
    Finite(usize),
    Infinite,
}

impl Girth {
    pub fn finite(self) -> Option<usize> {
        match self {
            Girth::Finite(g) => Some(g),
            Girth::Infinite => None,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, Girth::Finite(_))
    }
}

impl fmt::Display for Girth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Girth::Finite(g) => write!(f, "{g}"),
            Girth::Infinite => f.write_str("inf"),
        }
    }
}

// JSON: an integer, or null for infinity.
impl Serialize for Girth {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Girth::Finite(g) => s.serialize_u64(*g as u64),
            Girth::Infinite => s.serialize_none(),
        }
    }
}

impl<'de> Deserialize<'de> for Girth {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        Ok(match Option::<usize>::deserialize(d)? {
            Some(g) => Girth::Finite(g),
            None => Girth::Infinite,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructuralProfile {
    pub connected: bool,
    pub bipartite: bool,
    pub girth: Girth,
    pub odd_girth: Girth,
    pub min_degree: usize,
    pub pendant_vertices: VertexSet,
    pub p_dominators: VertexSet,
}

/// Simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

/// Result of deleting vertices: `kept[i]` is the old index of new vertex `i`.
#[derive(Clone, Debug)]
pub struct Induced {
    pub graph: Graph,
    pub kept: Vec<usize>,
}

/// `G1(v1) ⋄ G2(v2)`. Vertices of `G1` keep their indices; `second[j]` is
/// the index of vertex `j` of `G2` in the result.
#[derive(Clone, Debug)]
pub struct Coalescence {
    pub graph: Graph,
    pub root: usize,
    pub second: Vec<usize>,
}

fn check_order(n: usize) -> Result<(), GraphError> {
    if n == 0 || n > MAX_ORDER {
        Err(GraphError::BadOrder(n))
    } else {
        Ok(())
    }
}

impl Graph {
    pub fn build(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        check_order(n)?;
        let mut adj = vec![0u64; n];
        for &(i, j) in edges {
            for v in [i, j] {
                if v >= n {
                    return Err(GraphError::OutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(GraphError::SelfLoop(i));
            }
            if adj[i] >> j & 1 == 1 {
                return Err(GraphError::DuplicateEdge(i, j));
            }
            adj[i] |= 1 << j;
            adj[j] |= 1 << i;
        }
        Ok(Graph { n, adj })
    }

    pub fn empty(n: usize) -> Result<Graph, GraphError> {
        Graph::build(n, &[])
    }

    /// Trusted constructor for rows already known to be symmetric and loop-free.
    pub(crate) fn from_rows(rows: Vec<u64>) -> Graph {
        debug_assert!(!rows.is_empty() && rows.len() <= MAX_ORDER);
        debug_assert!((0..rows.len()).all(|i| rows[i] >> i & 1 == 0));
        debug_assert!((0..rows.len())
            .all(|i| (0..rows.len()).all(|j| (rows[i] >> j & 1) == (rows[j] >> i & 1))));
        Graph {
            n: rows.len(),
            adj: rows,
        }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.adj.iter().map(|r| r.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn rows(&self) -> &[u64] {
        &self.adj
    }

    pub fn vertices(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn closed_neighborhood(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v] | 1 << v)
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    /// Edges as `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.size());
        for i in 0..self.n {
            for j in VertexSet(self.adj[i] >> i >> 1 << i << 1).iter() {
                out.push((i, j));
            }
        }
        out
    }

    fn check_pair(&self, u: usize, v: usize) -> Result<(), GraphError> {
        for w in [u, v] {
            if w >= self.n {
                return Err(GraphError::OutOfRange { vertex: w, n: self.n });
            }
        }
        if u == v {
            return Err(GraphError::SelfLoop(u));
        }
        Ok(())
    }

    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if !self.has_edge(u, v) {
            return Err(GraphError::EdgeAbsent(u, v));
        }
        let mut adj = self.adj.clone();
        adj[u] &= !(1 << v);
        adj[v] &= !(1 << u);
        Ok(Graph { n: self.n, adj })
    }

    pub fn add_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        self.check_pair(u, v)?;
        if self.has_edge(u, v) {
            return Err(GraphError::EdgePresent(u, v));
        }
        let mut adj = self.adj.clone();
        adj[u] |= 1 << v;
        adj[v] |= 1 << u;
        Ok(Graph { n: self.n, adj })
    }

    pub fn delete_vertices(&self, s: VertexSet) -> Result<Induced, GraphError> {
        if let Some(v) = s.iter().find(|&v| v >= self.n) {
            return Err(GraphError::OutOfRange { vertex: v, n: self.n });
        }
        let kept: Vec<usize> = self.vertices().difference(s).iter().collect();
        if kept.is_empty() {
            return Err(GraphError::EmptyResult);
        }
        Ok(Induced {
            graph: self.induced(&kept),
            kept,
        })
    }

    /// Subgraph induced on `vertices`, relabelled in the given order.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut adj = vec![0u64; vertices.len()];
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate() {
                if self.has_edge(u, v) {
                    adj[a] |= 1 << b;
                }
            }
        }
        Graph::from_rows(adj)
    }

    /// Graph in which old vertex `v` is renamed `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n, "permutation length");
        let mut adj = vec![0u64; self.n];
        for u in 0..self.n {
            for v in self.neighbors(u).iter() {
                adj[perm[u]] |= 1 << perm[v];
            }
        }
        Graph::from_rows(adj)
    }

    /// Disjoint union with `other`, whose vertices are shifted by `self.order()`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        check_order(n)?;
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|r| r << self.n));
        Ok(Graph { n, adj })
    }

    pub fn components(&self) -> Vec<VertexSet> {
        let mut seen = VertexSet::EMPTY;
        let mut out = Vec::new();
        for s in 0..self.n {
            if seen.contains(s) {
                continue;
            }
            let comp = self.reach(s, VertexSet::EMPTY);
            seen = seen.union(comp);
            out.push(comp);
        }
        out
    }

    /// Vertices reachable from `s` without entering `blocked`.
    pub fn reach(&self, s: usize, blocked: VertexSet) -> VertexSet {
        let mut seen = 1u64 << s;
        let mut frontier = seen;
        while frontier != 0 {
            let mut next = 0u64;
            for v in VertexSet(frontier).iter() {
                next |= self.adj[v];
            }
            next &= !seen & !blocked.0;
            seen |= next;
            frontier = next;
        }
        VertexSet(seen)
    }

    pub fn is_connected(&self) -> bool {
        self.reach(0, VertexSet::EMPTY).len() == self.n
    }

    pub fn is_unicyclic(&self) -> bool {
        self.is_connected() && self.size() == self.n
    }

    /// Two-colouring by BFS, if one exists.
    pub fn two_coloring(&self) -> Option<Vec<bool>> {
        let mut color: Vec<Option<bool>> = vec![None; self.n];
        for s in 0..self.n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                let cu = color[u].unwrap();
                for w in self.neighbors(u).iter() {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cu => return None,
                        _ => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.odd_girth() == Girth::Infinite
    }

    fn bfs(&self, s: usize) -> (Vec<usize>, Vec<usize>) {
        let mut dist = vec![usize::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        dist[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for w in self.neighbors(u).iter() {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        (dist, parent)
    }

    pub fn girth(&self) -> Girth {
        let mut best = usize::MAX;
        for s in 0..self.n {
            let (dist, parent) = self.bfs(s);
            for (u, w) in self.edges() {
                if dist[u] == usize::MAX || parent[u] == w || parent[w] == u {
                    continue;
                }
                best = best.min(dist[u] + dist[w] + 1);
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn odd_girth(&self) -> Girth {
        let mut best = usize::MAX;
        for s in 0..self.n {
            let (dist, _) = self.bfs(s);
            for (u, w) in self.edges() {
                if dist[u] != usize::MAX && dist[u] == dist[w] {
                    best = best.min(2 * dist[u] + 1);
                }
            }
        }
        if best == usize::MAX {
            Girth::Infinite
        } else {
            Girth::Finite(best)
        }
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    pub fn pendant_vertices(&self) -> VertexSet {
        (0..self.n).filter(|&v| self.degree(v) == 1).collect()
    }

    /// Vertices adjacent to at least one pendant vertex.
    pub fn p_dominators(&self) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for v in self.pendant_vertices().iter() {
            out = out.union(self.neighbors(v));
        }
        out
    }

    /// Pendant neighbours of `v`.
    pub fn pendants_at(&self, v: usize) -> VertexSet {
        self.neighbors(v).intersection(self.pendant_vertices())
    }

    pub fn profile(&self) -> StructuralProfile {
        let odd_girth = self.odd_girth();
        StructuralProfile {
            connected: self.is_connected(),
            bipartite: odd_girth == Girth::Infinite,
            girth: self.girth(),
            odd_girth,
            min_degree: self.min_degree(),
            pendant_vertices: self.pendant_vertices(),
            p_dominators: self.p_dominators(),
        }
    }

    /// The cycle of a unicyclic graph in cyclic order, starting at its
    /// smallest vertex and continuing to its smaller cycle neighbour.
    pub fn unique_cycle(&self) -> Option<Vec<usize>> {
        if !self.is_unicyclic() {
            return None;
        }
        let mut deg: Vec<usize> = self.degrees();
        let mut alive = self.vertices();
        let mut leaves: Vec<usize> = (0..self.n).filter(|&v| deg[v] == 1).collect();
        while let Some(v) = leaves.pop() {
            alive.remove(v);
            for w in self.neighbors(v).intersection(alive).iter() {
                deg[w] -= 1;
                if deg[w] == 1 {
                    leaves.push(w);
                }
            }
        }
        let start = alive.iter().next()?;
        let mut cycle = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        loop {
            let next = self
                .neighbors(cur)
                .intersection(alive)
                .iter()
                .find(|&w| w != prev)?;
            if next == start {
                break;
            }
            cycle.push(next);
            prev = cur;
            cur = next;
            if cycle.len() > self.n {
                return None;
            }
        }
        Some(cycle)
    }

    /// For a unicyclic graph: the vertices of the tree hanging at each cycle
    /// vertex (the cycle vertex included), keyed by position on the cycle.
    pub fn hanging_trees(&self, cycle: &[usize]) -> Vec<VertexSet> {
        let on_cycle: VertexSet = cycle.iter().copied().collect();
        cycle
            .iter()
            .map(|&c| self.reach(c, on_cycle.difference(VertexSet::singleton(c))))
            .collect()
    }

    /// DOT text; `labels[v]` replaces the vertex name when given.
    pub fn to_dot(&self, labels: Option<&[String]>) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            match labels {
                Some(l) => out.push_str(&format!("  {v} [label=\"{}\"];\n", l[v])),
                None => out.push_str(&format!("  {v};\n")),
            }
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("  {u} -- {v};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// Parses the subset of DOT written by [`Graph::to_dot`]: numeric node
    /// statements and `u -- v` edge statements.
    pub fn from_dot(text: &str) -> Result<Graph, GraphError> {
        let bad = |m: &str| GraphError::MalformedDot(m.to_string());
        let body = text
            .split_once('{')
            .and_then(|(_, rest)| rest.rsplit_once('}'))
            .map(|(b, _)| b)
            .ok_or_else(|| bad("missing braces"))?;
        let mut n = 0usize;
        let mut edges = Vec::new();
        for stmt in body.split([';', '\n']) {
            let stmt = stmt.trim();
            if stmt.is_empty() {
                continue;
            }
            let head = stmt.split('[').next().unwrap_or("").trim();
            if let Some((a, b)) = head.split_once("--") {
                let u: usize = a.trim().parse().map_err(|_| bad(stmt))?;
                let v: usize = b.trim().parse().map_err(|_| bad(stmt))?;
                n = n.max(u + 1).max(v + 1);
                edges.push((u, v));
            } else {
                let v: usize = head.parse().map_err(|_| bad(stmt))?;
                n = n.max(v + 1);
            }
        }
        Graph::build(n, &edges)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

pub fn coalesce(g1: &Graph, v1: usize, g2: &Graph, v2: usize) -> Result<Coalescence, GraphError> {
    if v1 >= g1.n {
        return Err(GraphError::OutOfRange { vertex: v1, n: g1.n });
    }
    if v2 >= g2.n {
        return Err(GraphError::OutOfRange { vertex: v2, n: g2.n });
    }
    let n = g1.n + g2.n - 1;
    check_order(n)?;
    let mut second = Vec::with_capacity(g2.n);
    let mut next = g1.n;
    for j in 0..g2.n {
        if j == v2 {
            second.push(v1);
        } else {
            second.push(next);
            next += 1;
        }
    }
    let mut adj = g1.adj.clone();
    adj.resize(n, 0);
    for (a, b) in g2.edges() {
        let (x, y) = (second[a], second[b]);
        adj[x] |= 1 << y;
        adj[y] |= 1 << x;
    }
    Ok(Coalescence {
        graph: Graph::from_rows(adj),
        root: v1,
        second,
    })
}

/// Common small graphs used across the crate and its tests.
pub mod named {
    use super::Graph;

    pub fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::build(n, &edges).expect("path order")
    }

    pub fn cycle(n: usize) -> Graph {
        assert!(n >= 3, "cycle needs at least 3 vertices");
        let mut edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        edges.push((n - 1, 0));
        Graph::build(n, &edges).expect("cycle order")
    }

    pub fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::build(n, &edges).expect("complete order")
    }

    /// `K_{1,n-1}` with centre 0.
    pub fn star(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (0, i)).collect();
        Graph::build(n, &edges).expect("star order")
    }

    pub fn complete_bipartite(r: usize, s: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..r {
            for j in 0..s {
                edges.push((i, r + j));
            }
        }
        Graph::build(r + s, &edges).expect("complete bipartite order")
    }
}

#[cfg(test)]
mod tests {
    use super::named::*;
    use super::*;

    fn s4_plus() -> Graph {
        Graph::build(4, &[(0, 1), (0, 2), (0, 3), (1, 2)]).unwrap()
    }

    #[test]
    fn build_examples() {
        let c3 = Graph::build(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(c3.size(), 3);
        let k1 = Graph::build(1, &[]).unwrap();
        assert_eq!((k1.order(), k1.size()), (1, 0));
        assert_eq!(s4_plus().size(), 4);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            Graph::build(3, &[(0, 3)]),
            Err(GraphError::OutOfRange { vertex: 3, n: 3 })
        );
        assert_eq!(Graph::build(3, &[(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::build(3, &[(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(1, 0))
        );
        assert_eq!(Graph::build(0, &[]), Err(GraphError::BadOrder(0)));
        assert_eq!(Graph::build(65, &[]), Err(GraphError::BadOrder(65)));
        assert!(Graph::build(64, &[(0, 63)]).is_ok());
    }

    #[test]
    fn profile_of_c5() {
        let p = cycle(5).profile();
        assert!(p.connected && !p.bipartite);
        assert_eq!(p.girth, Girth::Finite(5));
        assert_eq!(p.odd_girth, Girth::Finite(5));
        assert_eq!(p.min_degree, 2);
        assert!(p.pendant_vertices.is_empty());
    }

    #[test]
    fn profile_of_p4() {
        let p = path(4).profile();
        assert!(p.connected && p.bipartite);
        assert_eq!(p.girth, Girth::Infinite);
        assert_eq!(p.odd_girth, Girth::Infinite);
        assert_eq!(p.min_degree, 1);
        assert_eq!(p.pendant_vertices, VertexSet::from_slice(&[0, 3]));
        assert_eq!(p.p_dominators, VertexSet::from_slice(&[1, 2]));
    }

    #[test]
    fn profile_of_lollipop_3_1() {
        // v1 v2 v3 triangle, v4 pendant at v3.
        let g = Graph::build(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap();
        let p = g.profile();
        assert_eq!(p.girth, Girth::Finite(3));
        assert_eq!(p.odd_girth, Girth::Finite(3));
        assert_eq!(p.pendant_vertices, VertexSet::singleton(3));
        assert_eq!(p.p_dominators, VertexSet::singleton(2));
    }

    #[test]
    fn girth_and_odd_girth_differ() {
        // C4 and C5 sharing the edge 0-1: girth 4, odd girth 5.
        let g = Graph::build(
            7,
            &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4), (4, 5), (5, 6), (6, 1)],
        )
        .unwrap();
        assert_eq!(g.girth(), Girth::Finite(4));
        assert_eq!(g.odd_girth(), Girth::Finite(5));
        assert_eq!(named::cycle(6).odd_girth(), Girth::Infinite);
        let h = g.add_edge(0, 5).unwrap();
        assert_eq!(h.girth(), Girth::Finite(3));
        assert_eq!(h.odd_girth(), Girth::Finite(3));
        assert_eq!(complete_bipartite(3, 3).girth(), Girth::Finite(4));
        assert_eq!(named::complete(2).girth(), Girth::Infinite);
    }

    #[test]
    fn edits() {
        let c3 = cycle(3);
        let p3 = c3.delete_edge(0, 1).unwrap();
        assert!(is_isomorphic(&p3, &path(3)));
        assert_eq!(path(3).add_edge(0, 2).unwrap(), c3);
        assert_eq!(c3.delete_edge(0, 1).unwrap().add_edge(1, 0).unwrap(), c3);
        assert_eq!(p3.delete_edge(0, 1), Err(GraphError::EdgeAbsent(0, 1)));
        assert_eq!(c3.add_edge(0, 1), Err(GraphError::EdgePresent(0, 1)));
        let d = s4_plus().delete_vertices(VertexSet::singleton(3)).unwrap();
        assert_eq!(d.graph, c3);
        assert_eq!(d.kept, vec![0, 1, 2]);
        assert_eq!(
            c3.delete_vertices(VertexSet::full(3)).unwrap_err(),
            GraphError::EmptyResult
        );
    }

    #[test]
    fn coalescence_examples() {
        let l31 = coalesce(&cycle(3), 2, &path(2), 0).unwrap();
        assert_eq!(l31.graph, Graph::build(4, &[(0, 1), (1, 2), (2, 0), (2, 3)]).unwrap());
        assert_eq!(l31.root, 2);
        let k1 = Graph::empty(1).unwrap();
        let same = coalesce(&k1, 0, &cycle(5), 3).unwrap();
        assert!(is_isomorphic(&same.graph, &cycle(5)));
        let bowtie = coalesce(&cycle(3), 0, &cycle(3), 1).unwrap();
        assert_eq!(bowtie.graph.order(), 5);
        assert_eq!(bowtie.graph.size(), 6);
        assert_eq!(bowtie.graph.degree(bowtie.root), 4);
    }

    #[test]
    fn unique_cycle_order() {
        let g = Graph::build(6, &[(0, 4), (4, 2), (2, 5), (5, 0), (2, 1), (1, 3)]).unwrap();
        let c = g.unique_cycle().unwrap();
        assert_eq!(c, vec![0, 4, 2, 5]);
        let trees = g.hanging_trees(&c);
        assert_eq!(trees[2], VertexSet::from_slice(&[1, 2, 3]));
        assert_eq!(trees[0], VertexSet::singleton(0));
        assert!(path(4).unique_cycle().is_none());
    }

    #[test]
    fn dot_round_trip() {
        let g = s4_plus();
        let labels: Vec<String> = (1..=4).map(|i| format!("v_{i}")).collect();
        let dot = g.to_dot(Some(&labels));
        assert!(dot.contains("0 [label=\"v_1\"];"));
        assert_eq!(Graph::from_dot(&dot).unwrap(), g);
        assert_eq!(Graph::from_dot(&g.to_dot(None)).unwrap(), g);
        assert!(Graph::from_dot("graph G { a -- b; }").is_err());
    }
}
