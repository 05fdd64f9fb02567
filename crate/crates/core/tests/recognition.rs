mod oracle;

use proptest::prelude::*;
use zlq_core::recognition::{find_c4, incidence_cells, is_c4_free, recognize_incidence, BipartiteGraph, NotExtremal};

fn relabel(g: &BipartiteGraph, left: &[usize], right: &[usize]) -> BipartiteGraph {
    let edges = g.edges().iter().map(|&(x, y)| (left[x], right[y])).collect();
    BipartiteGraph::new(g.left(), g.right(), edges).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn relabeled_incidence_graphs_are_recognized(
        n in 2usize..=8,
        left in any::<u64>(),
        right in any::<u64>(),
    ) {
        let g = BipartiteGraph::incidence(n);
        let shuffled = |len: usize, seed: u64| {
            let mut v: Vec<usize> = (0..len).collect();
            let mut rng = zlq_core::rng::derive_stream(seed, 0);
            zlq_core::rng::shuffle(&mut rng, &mut v);
            v
        };
        let h = relabel(&g, &shuffled(g.left(), left), &shuffled(n, right));
        let iso = recognize_incidence(&h).unwrap();
        prop_assert_eq!(iso.apply(&h), incidence_cells(n));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(300))]

    #[test]
    fn c4_detection_matches_brute_force(left in 1usize..7, right in 1usize..7, bits in any::<u64>()) {
        let mut edges = Vec::new();
        for x in 0..left {
            for y in 0..right {
                if bits >> ((x * right + y) % 64) & 1 == 1 {
                    edges.push((x, y));
                }
            }
        }
        let g = BipartiteGraph::new(left, right, edges.clone()).unwrap();
        prop_assert_eq!(!is_c4_free(&g), oracle::has_c4(left, right, &edges));
        if let Some(c) = find_c4(&g) {
            for (x, y) in [(c.x1, c.y1), (c.x1, c.y2), (c.x2, c.y1), (c.x2, c.y2)] {
                prop_assert!(edges.contains(&(x, y)));
            }
        }
    }

    /// Moving one edge of an incidence graph always breaks recognition.
    #[test]
    fn perturbed_graphs_are_rejected(n in 3usize..=7, which in any::<prop::sample::Index>(), to in any::<prop::sample::Index>()) {
        let g = BipartiteGraph::incidence(n);
        let mut edges = g.edges().to_vec();
        let removed = edges.remove(which.index(edges.len()));
        let free: Vec<(usize, usize)> = (0..g.left())
            .flat_map(|x| (0..n).map(move |y| (x, y)))
            .filter(|e| *e != removed && !edges.contains(e))
            .collect();
        edges.push(*to.get(&free));
        let h = BipartiteGraph::new(g.left(), n, edges.clone()).unwrap();
        let err = recognize_incidence(&h).unwrap_err();
        prop_assert!(matches!(err, NotExtremal::C4(_) | NotExtremal::Degree { .. }), "{:?}", err);
        if oracle::has_c4(g.left(), n, &edges) {
            prop_assert!(matches!(err, NotExtremal::C4(_)), "{:?}", err);
        }
    }
}
