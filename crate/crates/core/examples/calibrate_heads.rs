//! Recomputes the spider-head cost table in `data/spider_heads.txt`.
//!
//! Each head (thin or thick, `R` empty) is solved by plain P4 branching and,
//! where the subset count allows, by exhaustive enumeration as well.
//!
//! cargo run --release --example calibrate_heads

use cograph::decomposition::{head_formula, spider_graph, spider_head_cost, SpiderKind};
use cograph::search::{brute_force_min, simple_branching_min};
use cograph::Mode;

fn main() {
    println!("# mode kind q cost");
    let mut mismatches = 0;
    for mode in [Mode::Deletion, Mode::Editing] {
        for kind in [SpiderKind::Thin, SpiderKind::Thick] {
            for q in 2..=5 {
                let g = spider_graph(q, kind, 0);
                let (branching, _) = simple_branching_min(&g, mode);
                let exhaustive = brute_force_min(&g, mode).ok().map(|(c, _)| c);
                if exhaustive.is_some_and(|c| c != branching) {
                    eprintln!("oracles disagree on {mode} {kind} q={q}");
                    mismatches += 1;
                }
                if branching != spider_head_cost(q, kind, mode) || branching != head_formula(q, kind, mode) {
                    eprintln!("table disagrees on {mode} {kind} q={q}: observed {branching}");
                    mismatches += 1;
                }
                let note = if exhaustive.is_some() { "" } else { "  # enumeration over budget" };
                println!("{mode} {kind} {q} {branching}{note}");
            }
        }
    }
    std::process::exit(if mismatches == 0 { 0 } else { 1 });
}
