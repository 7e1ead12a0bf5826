//! Solves deletion and editing on a graph file, or on a few built-in graphs
//! when no path is given.
//!
//! cargo run --release --example solve_graph -- [graph.txt]

use cograph::io::{parse_graph, write_certificate};
use cograph::search::solve_min;
use cograph::{Graph, Mode};

fn builtin() -> Vec<(&'static str, Graph)> {
    vec![
        ("P4", Graph::path(4)),
        ("C5", Graph::cycle(5)),
        ("P7", Graph::path(7)),
        ("pan", Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])),
        ("C8", Graph::cycle(8)),
        ("Petersen", Graph::from_edges(10, &[
            (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
            (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
            (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
        ])),
    ]
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let graphs = match std::env::args().nth(1) {
        Some(path) => vec![("input", parse_graph(&std::fs::read_to_string(&path)?)?)],
        None => builtin(),
    };
    for (name, g) in graphs {
        for mode in [Mode::Deletion, Mode::Editing] {
            let r = solve_min(&g, mode);
            let k = r.k_used.expect("minimum mode always succeeds");
            println!("{name} {mode}: k = {k}, {} nodes, depth {}", r.stats.nodes, r.stats.max_depth);
            print!("{}", write_certificate(&g, r.certificate.as_ref().unwrap(), mode));
        }
    }
    Ok(())
}
