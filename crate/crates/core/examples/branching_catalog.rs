//! Minimal modification sets and branching numbers for small subgraphs.
//!
//! cargo run --example branching_catalog

use cograph::catalog::{branching_number, fmin, fmin_whole, minimal_deletion_sets, minimal_editing_sets};
use cograph::{Graph, Mode};

fn main() -> cograph::Result<()> {
    for v in [&[1, 1][..], &[1, 2, 2, 2, 2], &[1, 2, 2, 2], &[2, 2, 2, 2, 3, 3]] {
        println!("branching number {v:?} = {:.4}", branching_number(v)?);
    }

    let pan = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]);
    println!("\npan, minimal deletion sets:");
    for f in minimal_deletion_sets(&pan)? {
        println!("  {f}");
    }
    println!("pan, {} minimal editing sets", minimal_editing_sets(&pan)?.len());

    // restricting to a good induced subgraph beats branching on all of P7
    println!();
    let p7 = Graph::path(7);
    for mode in [Mode::Deletion, Mode::Editing] {
        let best = fmin(&p7, mode)?;
        let whole = fmin_whole(&p7, mode)?;
        println!(
            "P7 {mode}: best subgraph {:?}, {} options, smallest {:?} -> {:.4}; whole graph -> {:.4}",
            best.chosen_subgraph,
            best.options.len(),
            &best.vector[..best.vector.len().min(4)],
            best.number,
            whole.number
        );
    }
    Ok(())
}
