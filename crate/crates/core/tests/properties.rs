use proptest::prelude::*;

use cograph::io::{parse_graph, write_graph};
use cograph::search::{brute_force_min, solve_min, verify_certificate};
use cograph::{Graph, Mode};

fn graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (0..=max_n).prop_flat_map(|n| {
        let pairs = n * n.saturating_sub(1) / 2;
        proptest::collection::vec(any::<bool>(), pairs).prop_map(move |bits| {
            let mut edges = Vec::new();
            let mut i = 0;
            for u in 0..n {
                for v in u + 1..n {
                    if bits[i] {
                        edges.push((u, v));
                    }
                    i += 1;
                }
            }
            Graph::from_edges(n, &edges)
        })
    })
}

fn disjoint_union(a: &Graph, b: &Graph) -> Graph {
    let shift = a.n();
    let edges = a
        .edges()
        .iter()
        .map(|p| (p.u(), p.v()))
        .chain(b.edges().iter().map(|p| (p.u() + shift, p.v() + shift)))
        .collect::<Vec<_>>();
    Graph::from_edges(a.n() + b.n(), &edges)
}

fn mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Deletion), Just(Mode::Editing)]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn graph_files_round_trip(g in graph(12), seed in any::<u64>()) {
        let text = write_graph(&g);
        prop_assert_eq!(&parse_graph(&text).unwrap(), &g);
        // reordered edges and comments normalise to the same bytes
        let mut lines: Vec<&str> = text.lines().skip(1).collect();
        let len = lines.len();
        if len > 1 {
            lines.rotate_left(seed as usize % len);
        }
        let shuffled = format!("# generated\n{} {}\n{}\n", g.n(), g.edge_count(), lines.join("\n# x\n"));
        prop_assert_eq!(write_graph(&parse_graph(&shuffled).unwrap()), text);
    }

    #[test]
    fn solver_matches_enumeration(g in graph(7), mode in mode()) {
        let r = solve_min(&g, mode);
        let cert = r.certificate.unwrap();
        prop_assert!(verify_certificate(&g, &cert, mode).unwrap());
        prop_assert_eq!(r.k_used, Some(brute_force_min(&g, mode).unwrap().0));
    }

    #[test]
    fn editing_cost_is_complement_invariant(g in graph(8)) {
        let a = solve_min(&g, Mode::Editing).k_used;
        let b = solve_min(&g.complement(), Mode::Editing).k_used;
        prop_assert_eq!(a, b);
    }

    #[test]
    fn cost_is_additive_over_disjoint_union(a in graph(7), b in graph(7), mode in mode()) {
        let u = disjoint_union(&a, &b);
        let sum = solve_min(&a, mode).k_used.unwrap() + solve_min(&b, mode).k_used.unwrap();
        prop_assert_eq!(solve_min(&u, mode).k_used, Some(sum));
    }

    #[test]
    fn deletion_never_beats_editing(g in graph(8)) {
        let d = solve_min(&g, Mode::Deletion).k_used.unwrap();
        let e = solve_min(&g, Mode::Editing).k_used.unwrap();
        prop_assert!(e <= d);
    }
}
