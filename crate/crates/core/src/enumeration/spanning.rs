//! Spanning unicyclic subgraphs: one keeping odd girth and γ, and the
//! membership test for graphs with a spanning circ script-F subgraph.

use crate::domination::{domination_number, minimum_dominating_sets_capped};
use crate::families::recognize_curly_f;
use crate::graph::{Graph, VertexSet};

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> UnionFind {
        UnionFind((0..n).collect())
    }

    fn find(&mut self, v: usize) -> usize {
        let mut r = v;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut v = v;
        while self.0[v] != r {
            let next = self.0[v];
            self.0[v] = r;
            v = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Every cycle of length `len`, as a vertex sequence starting at its least
/// vertex, one direction only.
fn cycles_of_length(g: &Graph, len: usize) -> Vec<Vec<usize>> {
    fn extend(g: &Graph, len: usize, path: &mut Vec<usize>, used: VertexSet, out: &mut Vec<Vec<usize>>) {
        let s = path[0];
        let last = *path.last().unwrap();
        if path.len() == len {
            if g.has_edge(last, s) && path[1] < last {
                out.push(path.clone());
            }
            return;
        }
        for w in g.neighbors(last).difference(used).iter().filter(|&w| w > s) {
            path.push(w);
            let mut u = used;
            u.insert(w);
            extend(g, len, path, u, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    for s in 0..g.order() {
        extend(g, len, &mut vec![s], VertexSet::singleton(s), &mut out);
    }
    out
}

/// Adds one edge from each vertex in `needy[at..]` to a member of `d`
/// without closing a cycle.
fn attach(g: &Graph, d: VertexSet, needy: &[usize], uf: &mut UnionFind, edges: &mut Vec<(usize, usize)>) -> bool {
    let Some((&v, rest)) = needy.split_first() else {
        return true;
    };
    for w in g.neighbors(v).intersection(d).iter() {
        let snapshot = uf.0.clone();
        if uf.union(v, w) {
            edges.push((v, w));
            if attach(g, d, rest, uf, edges) {
                return true;
            }
            edges.pop();
        }
        uf.0 = snapshot;
    }
    false
}

/// A connected unicyclic spanning subgraph of `g` with the same odd girth
/// and the same domination number; `None` if `g` is bipartite or
/// disconnected, or if no such subgraph exists.
pub fn odd_girth_preserving_subgraph(g: &Graph) -> Option<Graph> {
    let go = g.odd_girth().finite()?;
    if !g.is_connected() {
        return None;
    }
    let gamma = domination_number(g).gamma;
    let n = g.order();
    let sets = minimum_dominating_sets_capped(g, 4096).ok()?;
    for cyc in cycles_of_length(g, go) {
        let cyc_edges: Vec<(usize, usize)> = (0..go).map(|i| (cyc[i], cyc[(i + 1) % go])).collect();
        for &d in &sets {
            let mut uf = UnionFind::new(n);
            for &(a, b) in &cyc_edges[1..] {
                uf.union(a, b);
            }
            let mut dominated = d;
            for &(a, b) in &cyc_edges {
                if d.contains(a) {
                    dominated.insert(b);
                }
                if d.contains(b) {
                    dominated.insert(a);
                }
            }
            let needy: Vec<usize> = (0..n).filter(|&v| !dominated.contains(v)).collect();
            let mut edges = cyc_edges.clone();
            if !attach(g, d, &needy, &mut uf, &mut edges) {
                continue;
            }
            for (a, b) in g.edges() {
                if uf.union(a, b) {
                    edges.push((a, b));
                }
            }
            let u = Graph::build(n, &edges).expect("subgraph of g");
            if u.is_unicyclic() && u.odd_girth().finite() == Some(go) && domination_number(&u).gamma == gamma {
                return Some(u);
            }
        }
    }
    None
}

/// Whether `g` has a spanning subgraph that is a nonbipartite circ
/// script-F graph.
pub fn in_script_m(g: &Graph) -> bool {
    if !g.is_connected() || g.is_bipartite() {
        return false;
    }
    let n = g.order();
    let edges = g.edges();
    // Spanning unicyclic subgraphs: n edges, exactly one closing a cycle.
    fn search(
        g: &Graph,
        edges: &[(usize, usize)],
        at: usize,
        chosen: &mut Vec<(usize, usize)>,
        uf: &UnionFind,
        closed: bool,
    ) -> bool {
        let n = g.order();
        if chosen.len() == n {
            let sub = Graph::build(n, chosen).expect("subgraph of g");
            return sub.is_connected()
                && !sub.is_bipartite()
                && recognize_curly_f(&sub).iter().any(|f| f.is_circ(&sub));
        }
        if edges.len() - at < n - chosen.len() {
            return false;
        }
        let (a, b) = edges[at];
        let mut next = UnionFind(uf.0.clone());
        let joins = next.union(a, b);
        if joins || !closed {
            chosen.push((a, b));
            if search(g, edges, at + 1, chosen, &next, closed || !joins) {
                return true;
            }
            chosen.pop();
        }
        search(g, edges, at + 1, chosen, uf, closed)
    }
    search(g, &edges, 0, &mut Vec::with_capacity(n), &UnionFind::new(n), false)
}
