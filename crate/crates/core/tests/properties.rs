use domq::domination::{dominates, domination_number, minimum_dominating_sets};
use domq::enumeration::{connected_classes, Engine, UniverseKind, UniverseSpec};
use domq::graph::{canonical_graph6, coalesce, from_graph6, is_isomorphic, named, to_graph6, Graph, VertexSet};
use domq::perturbations::tree_move;
use domq::report::Status;
use domq::spectra::{interlacing_check, q_min, q_spectrum, DEFAULT_MARGIN, DEFAULT_TOL};
use nalgebra::DMatrix;
use proptest::prelude::*;

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            let es: Vec<_> = pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
            Graph::build(n, &es).unwrap()
        })
    })
}

fn arb_connected(max_n: usize) -> impl Strategy<Value = Graph> {
    arb_graph(max_n).prop_filter("connected", |g| g.order() >= 2 && g.is_connected())
}

/// A random labelled tree from a Prüfer-style parent array.
fn arb_tree(max_n: usize) -> impl Strategy<Value = Graph> {
    (2..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<proptest::sample::Index>(), n - 1).prop_map(move |parents| {
            let es: Vec<_> = parents.iter().enumerate().map(|(i, p)| (i + 1, p.index(i + 1))).collect();
            Graph::build(n, &es).unwrap()
        })
    })
}

fn brute_gamma(g: &Graph) -> usize {
    let n = g.order();
    (0u64..1 << n)
        .filter(|&m| dominates(g, VertexSet(m)))
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap_or(0)
}

fn dense_q(g: &Graph) -> DMatrix<f64> {
    let n = g.order();
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            g.degree(i) as f64
        } else if g.has_edge(i, j) {
            1.0
        } else {
            0.0
        }
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn graph6_round_trips(g in arb_graph(12)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g);
    }

    #[test]
    fn canonical_form_ignores_labels(g in arb_graph(9), seed in any::<u64>()) {
        let n = g.order();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut s = seed;
        for i in (1..n).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            perm.swap(i, (s >> 33) as usize % (i + 1));
        }
        let h = g.relabel(&perm);
        prop_assert_eq!(canonical_graph6(&g), canonical_graph6(&h));
        prop_assert!(is_isomorphic(&g, &h));
    }

    #[test]
    fn domination_matches_brute_force(g in arb_graph(10)) {
        let cert = domination_number(&g);
        prop_assert!(dominates(&g, cert.witness));
        prop_assert_eq!(cert.witness.len(), cert.gamma);
        prop_assert_eq!(cert.gamma, brute_gamma(&g));
    }

    #[test]
    fn ore_bound(g in arb_connected(10)) {
        prop_assert!(2 * domination_number(&g).gamma <= g.order());
    }

    #[test]
    fn heavy_supports_are_forced(g in arb_connected(9)) {
        let heavy: Vec<usize> = g.p_dominators().iter().filter(|&v| g.pendants_at(v).len() >= 2).collect();
        if g.order() >= 3 && !heavy.is_empty() {
            for d in minimum_dominating_sets(&g).unwrap() {
                for &v in &heavy {
                    prop_assert!(d.contains(v));
                    prop_assert!(g.pendants_at(v).intersection(d).is_empty());
                }
            }
        }
    }

    #[test]
    fn spectrum_matches_dense_solver(g in arb_graph(10)) {
        let cert = q_spectrum(&g, DEFAULT_TOL).unwrap();
        let mut oracle: Vec<f64> = dense_q(&g).symmetric_eigen().eigenvalues.iter().copied().collect();
        oracle.sort_by(f64::total_cmp);
        prop_assert!(cert.residual <= DEFAULT_TOL);
        prop_assert!(cert.q_min >= -DEFAULT_TOL);
        let norm: f64 = cert.eigvec.iter().map(|x| x * x).sum::<f64>().sqrt();
        prop_assert!((norm - 1.0).abs() <= 1e-9);
        prop_assert!(cert.spectrum.windows(2).all(|w| w[0] <= w[1]));
        for (a, b) in cert.spectrum.iter().zip(&oracle) {
            prop_assert!((a - b).abs() < 1e-8, "{a} vs {b}");
        }
    }

    #[test]
    fn edge_deletion_never_raises_qmin(g in arb_connected(9)) {
        let q = q_min(&g);
        for (u, v) in g.edges() {
            prop_assert!(interlacing_check(&g, (u, v), 1e-8).unwrap());
            prop_assert!(q_min(&g.delete_edge(u, v).unwrap()) <= q + 1e-9);
        }
    }

    #[test]
    fn star_coalescence_bounds_gamma(h in arb_connected(8), k in 3usize..6, seed in any::<proptest::sample::Index>()) {
        let u = seed.index(h.order());
        let g = coalesce(&h, u, &named::star(k + 1), 0).unwrap().graph;
        let (gh, gg) = (domination_number(&h).gamma, domination_number(&g).gamma);
        prop_assert!(gg - 1 <= gh && gh <= gg, "gamma(H)={gh} gamma(G)={gg}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn tree_move_lowers_qmin_when_asserted(
        g1 in arb_connected(7).prop_filter("nonbipartite", |g| !g.is_bipartite()),
        tree in arb_tree(5),
        picks in any::<(proptest::sample::Index, proptest::sample::Index, proptest::sample::Index)>(),
    ) {
        let n = g1.order();
        let v1 = picks.0.index(n);
        let v2 = (v1 + 1 + picks.1.index(n - 1)) % n;
        let u = picks.2.index(tree.order());
        let out = tree_move(&g1, v1, v2, &tree, u, DEFAULT_MARGIN).unwrap();
        prop_assert_ne!(out.status(DEFAULT_MARGIN), Status::Fail);
    }
}

#[test]
fn connected_class_counts() {
    let counts: Vec<usize> = (1..=7).map(|n| connected_classes(n).len()).collect();
    assert_eq!(counts, [1, 1, 2, 6, 21, 112, 853]);
}

#[test]
fn enumeration_is_deterministic() {
    let spec = UniverseSpec::new(UniverseKind::ConnectedNonbipartite, 7);
    let a = Engine::new().with_workers(1).enumerate_measured(&spec).unwrap();
    let b = Engine::new().with_workers(4).enumerate_measured(&spec).unwrap();
    let key = |v: &[(Graph, domq::enumeration::Measurement)]| v.iter().map(|(g, m)| (to_graph6(g), m.q_min.to_bits(), m.gamma)).collect::<Vec<_>>();
    assert_eq!(key(&a), key(&b));
}
