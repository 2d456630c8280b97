//! Isomorphism classes of small connected and unicyclic graphs.

use std::collections::{HashMap, HashSet};
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;

use crate::graph::{canonical, to_graph6, Graph};

/// Canonically relabelled copy of `g`.
pub fn canonical_graph(g: &Graph) -> Graph {
    g.relabel(&canonical(g).relabeling)
}

/// Canonical representatives of `graphs`, one per class, sorted by graph6.
fn dedup(graphs: Vec<Graph>) -> Vec<Graph> {
    let canon: Vec<Graph> = graphs.par_iter().map(canonical_graph).collect();
    let mut seen = HashSet::new();
    let mut out: Vec<(String, Graph)> = canon
        .into_iter()
        .filter_map(|g| {
            let key = to_graph6(&g);
            seen.insert(key.clone()).then_some((key, g))
        })
        .collect();
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out.into_iter().map(|(_, g)| g).collect()
}

fn memo() -> &'static Mutex<HashMap<usize, Arc<Vec<Graph>>>> {
    static CONNECTED: OnceLock<Mutex<HashMap<usize, Arc<Vec<Graph>>>>> = OnceLock::new();
    CONNECTED.get_or_init(Default::default)
}

/// Connected graphs of order `n` up to isomorphism. Every connected graph
/// has a vertex whose removal leaves it connected, so extending each class of
/// order `n - 1` by a vertex with every nonempty neighbourhood reaches all
/// classes of order `n`.
pub fn connected_classes(n: usize) -> Arc<Vec<Graph>> {
    if let Some(v) = memo().lock().unwrap().get(&n) {
        return v.clone();
    }
    let classes = if n <= 1 {
        vec![Graph::empty(n).unwrap()]
    } else {
        let smaller = connected_classes(n - 1);
        let extended: Vec<Graph> = smaller
            .par_iter()
            .flat_map_iter(|h| {
                (1u64..1 << (n - 1)).map(move |nb| {
                    let mut rows = h.rows().to_vec();
                    for (v, row) in rows.iter_mut().enumerate() {
                        if nb >> v & 1 == 1 {
                            *row |= 1 << (n - 1);
                        }
                    }
                    rows.push(nb);
                    Graph::from_rows(rows)
                })
            })
            .collect();
        dedup(extended)
    };
    let classes = Arc::new(classes);
    memo().lock().unwrap().insert(n, classes.clone());
    classes
}

/// Classes of labelled graphs on `n` vertices accepted by `keep`, by brute
/// force over all `2^(n(n-1)/2)` edge sets. Only sensible for `n <= 7`.
pub fn labeled_classes(n: usize, keep: impl Fn(&Graph) -> bool + Sync) -> Vec<Graph> {
    assert!(n <= 7, "labelled enumeration is limited to n <= 7");
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|j| (0..j).map(move |i| (i, j))).collect();
    let kept: Vec<Graph> = (0u64..1 << pairs.len())
        .into_par_iter()
        .filter_map(|mask| {
            let mut rows = vec![0u64; n];
            for (b, &(i, j)) in pairs.iter().enumerate() {
                if mask >> b & 1 == 1 {
                    rows[i] |= 1 << j;
                    rows[j] |= 1 << i;
                }
            }
            let g = Graph::from_rows(rows);
            keep(&g).then_some(g)
        })
        .collect();
    dedup(kept)
}

/// Rooted trees as parent arrays (root 0, `parent[0] == usize::MAX`).
fn rooted_trees(size: usize) -> Arc<Vec<Vec<usize>>> {
    static TREES: OnceLock<Mutex<HashMap<usize, Arc<Vec<Vec<usize>>>>>> = OnceLock::new();
    let memo = TREES.get_or_init(Default::default);
    if let Some(v) = memo.lock().unwrap().get(&size) {
        return v.clone();
    }
    let trees = if size == 1 {
        vec![vec![usize::MAX]]
    } else {
        let mut by_code: Vec<(String, Vec<usize>)> = Vec::new();
        let mut seen = HashSet::new();
        for t in rooted_trees(size - 1).iter() {
            for v in 0..t.len() {
                let mut grown = t.clone();
                grown.push(v);
                let code = ahu(&grown);
                if seen.insert(code.clone()) {
                    by_code.push((code, grown));
                }
            }
        }
        by_code.sort();
        by_code.into_iter().map(|(_, t)| t).collect()
    };
    let trees = Arc::new(trees);
    memo.lock().unwrap().insert(size, trees.clone());
    trees
}

fn ahu(parent: &[usize]) -> String {
    let mut children = vec![Vec::new(); parent.len()];
    for (v, &p) in parent.iter().enumerate().skip(1) {
        children[p].push(v);
    }
    fn enc(v: usize, children: &[Vec<usize>]) -> String {
        let mut parts: Vec<String> = children[v].iter().map(|&c| enc(c, children)).collect();
        parts.sort();
        format!("({})", parts.concat())
    }
    enc(0, &children)
}

/// Number of rooted trees with `size` vertices.
pub fn rooted_tree_count(size: usize) -> usize {
    rooted_trees(size).len()
}

/// Connected unicyclic graphs of order `n` whose cycle length passes
/// `keep_cycle`, built as a cycle with a rooted tree hung at every cycle
/// vertex, then deduplicated.
pub fn unicyclic_classes(n: usize, keep_cycle: impl Fn(usize) -> bool) -> Vec<Graph> {
    let mut raw = Vec::new();
    for k in (3..=n).filter(|&k| keep_cycle(k)) {
        let mut choice: Vec<Vec<usize>> = Vec::with_capacity(k);
        hang(n, k, n - k, &mut choice, &mut raw);
    }
    dedup(raw)
}

fn hang(n: usize, k: usize, left: usize, choice: &mut Vec<Vec<usize>>, out: &mut Vec<Graph>) {
    if choice.len() == k {
        if left == 0 {
            out.push(assemble(n, k, choice));
        }
        return;
    }
    let slots = k - choice.len();
    // The first cycle vertex carries a largest tree: any other placement is a rotation.
    let cap = if choice.is_empty() { left } else { left.min(choice[0].len() - 1) };
    if slots == 1 && left > cap {
        return;
    }
    for extra in 0..=cap {
        if choice.is_empty() && extra * k < left {
            continue;
        }
        for t in rooted_trees(extra + 1).iter() {
            choice.push(t.clone());
            hang(n, k, left - extra, choice, out);
            choice.pop();
        }
    }
}

fn assemble(n: usize, k: usize, trees: &[Vec<usize>]) -> Graph {
    let mut rows = vec![0u64; n];
    let mut join = |a: usize, b: usize| {
        rows[a] |= 1 << b;
        rows[b] |= 1 << a;
    };
    for i in 0..k {
        join(i, (i + 1) % k);
    }
    let mut next = k;
    for (i, t) in trees.iter().enumerate() {
        let mut name = vec![0; t.len()];
        name[0] = i;
        for v in 1..t.len() {
            name[v] = next;
            next += 1;
            join(name[t[v]], name[v]);
        }
    }
    Graph::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rooted_tree_counts() {
        let counts: Vec<usize> = (1..=8).map(rooted_tree_count).collect();
        assert_eq!(counts, [1, 1, 2, 4, 9, 20, 48, 115]);
    }

    #[test]
    fn connected_counts_small() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_classes(n).len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn constructive_matches_labelled() {
        for n in 3..=6 {
            let built = connected_classes(n);
            let brute = labeled_classes(n, |g| g.is_connected());
            assert_eq!(*built, brute, "n={n}");
            let uni = unicyclic_classes(n, |_| true);
            let uni_brute = labeled_classes(n, |g| g.is_unicyclic());
            assert_eq!(uni, uni_brute, "unicyclic n={n}");
        }
    }

    #[test]
    fn unicyclic_counts() {
        let counts: Vec<usize> = (3..=9).map(|n| unicyclic_classes(n, |_| true).len()).collect();
        assert_eq!(counts, [1, 2, 5, 13, 33, 89, 240]);
    }
}
