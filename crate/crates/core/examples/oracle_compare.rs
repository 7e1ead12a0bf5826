//! Compares the solver with exhaustive enumeration and with plain P4
//! branching on random graphs, reporting search-tree sizes.
//!
//! cargo run --release --example oracle_compare -- [count] [seed]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use cograph::rules::RuleEngine;
use cograph::search::{brute_force_min, simple_branching_min, Solver};
use cograph::{Graph, Mode};

fn main() {
    let mut args = std::env::args().skip(1).map(|a| a.parse::<u64>().expect("numeric argument"));
    let count = args.next().unwrap_or(40);
    let mut rng = ChaCha8Rng::seed_from_u64(args.next().unwrap_or(1));
    let engine = RuleEngine::default();
    let mut disagreements = 0;
    for mode in [Mode::Deletion, Mode::Editing] {
        let solver = Solver::new(&engine, mode);
        let n_max = if mode == Mode::Deletion { 9 } else { 7 };
        let (mut nodes, mut total_k) = (0, 0);
        for _ in 0..count {
            let n = rng.gen_range(4..=n_max);
            let p = rng.gen_range(0.2..0.8);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::from_edges(n, &edges);
            let r = solver.solve_min(&g);
            let k = r.k_used.unwrap();
            let plain = simple_branching_min(&g, mode).0;
            let exact = brute_force_min(&g, mode).map(|(c, _)| c).unwrap_or(plain);
            if k != exact || k != plain {
                disagreements += 1;
                println!("disagreement on {g:?}: solver {k}, enumeration {exact}, plain {plain}");
            }
            nodes += r.stats.nodes;
            total_k += k;
        }
        println!("{mode}: {count} graphs, total optimum {total_k}, {nodes} search nodes");
    }
    std::process::exit(if disagreements == 0 { 0 } else { 1 });
}
