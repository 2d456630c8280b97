//! Canonical labelling by colour refinement and individualisation.
//!
//! Each leaf of the search tree is a discrete ordered partition; the leaf
//! whose relabelled adjacency rows are lexicographically largest defines the
//! canonical form. Leaves that produce an already-seen graph yield
//! automorphisms, which prune siblings in the same orbit.

use super::{to_graph6, Graph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalForm {
    /// Order byte followed by the relabelled rows, 8 bytes each.
    pub cert: Vec<u8>,
    /// `relabeling[v]` is the canonical label of vertex `v`.
    pub relabeling: Vec<usize>,
}

type Cells = Vec<Vec<usize>>;

fn mask(cell: &[usize]) -> u64 {
    cell.iter().fold(0, |m, &v| m | 1 << v)
}

/// Splits cells by neighbour counts into each cell until the partition is
/// equitable. Cell order depends only on the graph, never on vertex names.
fn refine(g: &Graph, mut cells: Cells) -> Cells {
    let rows = g.rows();
    'outer: loop {
        for s in 0..cells.len() {
            let w = mask(&cells[s]);
            let mut next: Cells = Vec::with_capacity(cells.len() + 1);
            let mut changed = false;
            for cell in &cells {
                if cell.len() == 1 {
                    next.push(cell.clone());
                    continue;
                }
                let mut keyed: Vec<(u32, usize)> =
                    cell.iter().map(|&v| ((rows[v] & w).count_ones(), v)).collect();
                keyed.sort_unstable();
                if keyed[0].0 == keyed[keyed.len() - 1].0 {
                    next.push(cell.clone());
                    continue;
                }
                changed = true;
                let mut group = vec![keyed[0].1];
                for pair in keyed.windows(2) {
                    if pair[1].0 != pair[0].0 {
                        next.push(std::mem::take(&mut group));
                    }
                    group.push(pair[1].1);
                }
                next.push(group);
            }
            if changed {
                cells = next;
                continue 'outer;
            }
        }
        return cells;
    }
}

struct Leaf {
    rows: Vec<u64>,
    perm: Vec<usize>,
}

struct Search<'a> {
    g: &'a Graph,
    first: Option<Leaf>,
    best: Option<Leaf>,
    autos: Vec<Vec<usize>>,
}

impl Search<'_> {
    fn leaf(&mut self, cells: &Cells) {
        let n = self.g.order();
        let mut perm = vec![0; n];
        for (i, cell) in cells.iter().enumerate() {
            perm[cell[0]] = i;
        }
        let mut rows = vec![0u64; n];
        for u in 0..n {
            for w in self.g.neighbors(u).iter() {
                rows[perm[u]] |= 1 << perm[w];
            }
        }
        let leaf = Leaf { rows, perm };
        for known in [&self.first, &self.best].into_iter().flatten() {
            if known.rows == leaf.rows {
                let mut inv = vec![0; n];
                for (v, &p) in known.perm.iter().enumerate() {
                    inv[p] = v;
                }
                let sigma: Vec<usize> = leaf.perm.iter().map(|&p| inv[p]).collect();
                if sigma.iter().enumerate().any(|(v, &s)| v != s) {
                    self.autos.push(sigma);
                }
                return;
            }
        }
        let better = self.best.as_ref().is_none_or(|b| leaf.rows > b.rows);
        if self.first.is_none() {
            self.first = Some(Leaf {
                rows: leaf.rows.clone(),
                perm: leaf.perm.clone(),
            });
        }
        if better {
            self.best = Some(leaf);
        }
    }

    /// Orbit representative of each vertex under the automorphisms found so
    /// far that fix every vertex of `prefix`.
    fn orbits(&self, prefix: &[usize]) -> Vec<usize> {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        for sigma in &self.autos {
            if prefix.iter().any(|&p| sigma[p] != p) {
                continue;
            }
            for (v, &s) in sigma.iter().enumerate() {
                let (a, b) = (find(&mut parent, v), find(&mut parent, s));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        (0..n).map(|v| find(&mut parent, v)).collect()
    }

    fn descend(&mut self, cells: Cells, prefix: &mut Vec<usize>) {
        if cells.len() == self.g.order() {
            self.leaf(&cells);
            return;
        }
        let target = (0..cells.len())
            .filter(|&i| cells[i].len() > 1)
            .min_by_key(|&i| (cells[i].len(), i))
            .expect("non-discrete partition has a non-singleton cell");
        let mut candidates = cells[target].clone();
        candidates.sort_unstable();
        let mut tried: Vec<usize> = Vec::new();
        for &v in &candidates {
            if !tried.is_empty() {
                let orbit = self.orbits(prefix);
                if tried.iter().any(|&u| orbit[u] == orbit[v]) {
                    continue;
                }
            }
            tried.push(v);
            let mut child = cells.clone();
            let rest: Vec<usize> = child[target].iter().copied().filter(|&w| w != v).collect();
            child[target] = vec![v];
            child.insert(target + 1, rest);
            let child = refine(self.g, child);
            prefix.push(v);
            self.descend(child, prefix);
            prefix.pop();
        }
    }
}

pub fn canonical(g: &Graph) -> CanonicalForm {
    let n = g.order();
    let mut search = Search {
        g,
        first: None,
        best: None,
        autos: Vec::new(),
    };
    let start = refine(g, vec![(0..n).collect()]);
    search.descend(start, &mut Vec::new());
    let best = search.best.expect("search reaches at least one leaf");
    let mut cert = Vec::with_capacity(1 + 8 * n);
    cert.push(n as u8);
    for r in &best.rows {
        cert.extend_from_slice(&r.to_le_bytes());
    }
    CanonicalForm {
        cert,
        relabeling: best.perm,
    }
}

pub fn is_isomorphic(g: &Graph, h: &Graph) -> bool {
    g.order() == h.order()
        && g.size() == h.size()
        && {
            let (mut a, mut b) = (g.degrees(), h.degrees());
            a.sort_unstable();
            b.sort_unstable();
            a == b
        }
        && canonical(g).cert == canonical(h).cert
}

/// graph6 string of the canonically relabelled graph; one string per class.
pub fn canonical_graph6(g: &Graph) -> String {
    to_graph6(&g.relabel(&canonical(g).relabeling))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::named::{cycle, path, star};
    use std::collections::HashSet;

    fn all_labeled(n: usize) -> impl Iterator<Item = Graph> {
        let pairs: Vec<(usize, usize)> = (0..n)
            .flat_map(|j| (0..j).map(move |i| (i, j)))
            .collect();
        (0u64..1 << pairs.len()).map(move |mask| {
            let edges: Vec<_> = (0..pairs.len())
                .filter(|&b| mask >> b & 1 == 1)
                .map(|b| pairs[b])
                .collect();
            Graph::build(n, &edges).unwrap()
        })
    }

    fn permutations(n: usize) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        let mut p: Vec<usize> = (0..n).collect();
        fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if k <= 1 {
                out.push(p.clone());
                return;
            }
            for i in 0..k {
                heap(k - 1, p, out);
                if k % 2 == 0 {
                    p.swap(i, k - 1);
                } else {
                    p.swap(0, k - 1);
                }
            }
        }
        heap(n, &mut p, &mut out);
        out
    }

    /// Lexicographically smallest relabelled row vector over all permutations.
    fn brute_form(g: &Graph, perms: &[Vec<usize>]) -> Vec<u64> {
        let n = g.order();
        let mut best: Option<Vec<u64>> = None;
        let mut rows = vec![0u64; n];
        for p in perms {
            rows.iter_mut().for_each(|r| *r = 0);
            for (u, w) in g.edges() {
                rows[p[u]] |= 1 << p[w];
                rows[p[w]] |= 1 << p[u];
            }
            if best.as_ref().is_none_or(|b| rows < *b) {
                best = Some(rows.clone());
            }
        }
        best.unwrap()
    }

    #[test]
    fn relabelled_graph_matches_cert() {
        let g = Graph::build(6, &[(0, 3), (3, 1), (1, 4), (4, 0), (2, 5), (5, 0)]).unwrap();
        let c = canonical(&g);
        let h = g.relabel(&c.relabeling);
        assert_eq!(canonical(&h).cert, c.cert);
        let rows: Vec<u8> = h.rows().iter().flat_map(|r| r.to_le_bytes()).collect();
        assert_eq!(&c.cert[1..], &rows[..]);
    }

    #[test]
    fn cycle_invariance() {
        let c5 = cycle(5);
        let cert = canonical(&c5).cert;
        for p in permutations(5) {
            assert_eq!(canonical(&c5.relabel(&p)).cert, cert);
        }
    }

    #[test]
    fn p4_not_s4() {
        assert!(!is_isomorphic(&path(4), &star(4)));
        assert!(is_isomorphic(&path(4), &path(4).relabel(&[2, 0, 3, 1])));
    }

    #[test]
    fn four_vertex_classes() {
        let certs: HashSet<_> = all_labeled(4).map(|g| canonical(&g).cert).collect();
        assert_eq!(certs.len(), 11);
    }

    #[test]
    fn six_vertex_classes() {
        let certs: HashSet<_> = all_labeled(6).map(|g| canonical(&g).cert).collect();
        assert_eq!(certs.len(), 156);
    }

    #[test]
    fn certs_agree_with_permutation_search() {
        use std::collections::HashMap;
        for n in 1..=6 {
            let perms = permutations(n);
            let mut by_brute: HashMap<Vec<u64>, Vec<u8>> = HashMap::new();
            let mut by_cert: HashMap<Vec<u8>, Vec<u64>> = HashMap::new();
            for g in all_labeled(n) {
                let brute = brute_form(&g, &perms);
                let cert = canonical(&g).cert;
                assert_eq!(by_brute.entry(brute.clone()).or_insert(cert.clone()), &cert, "{g:?}");
                assert_eq!(by_cert.entry(cert).or_insert(brute.clone()), &brute, "{g:?}");
            }
        }
    }
}
