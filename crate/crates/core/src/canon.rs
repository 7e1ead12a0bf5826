//! Canonical labelling of graphs with at most eight vertices.
//!
//! Vertices are first split into cells by iterated degree refinement, which
//! is isomorphism invariant. The code is the minimum edge mask over every
//! labelling that lists the cells in refined order, so two graphs receive the
//! same code exactly when they are isomorphic.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::small::{pair_index, SmallGraph};

pub const MAX_CANON: usize = 8;

/// Isomorphism-class key for graphs on at most eight vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct CanonicalCode {
    pub n: u8,
    pub mask: u64,
}

impl CanonicalCode {
    /// The graph this code describes, in canonical labelling.
    pub fn graph(&self) -> SmallGraph {
        SmallGraph::from_mask(self.n as usize, self.mask)
    }
}

pub fn canonical_code(g: &Graph) -> Result<CanonicalCode> {
    if g.n() > MAX_CANON {
        return Err(Error::GraphTooLarge { n: g.n(), max: MAX_CANON });
    }
    Ok(canonical_form(&SmallGraph::from_graph(g)).0)
}

fn refine(g: &SmallGraph) -> Vec<u32> {
    let n = g.n;
    let mut color = vec![0u32; n];
    let mut classes = 1;
    loop {
        let sigs: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = (0..n).filter(|&w| g.has_edge(v, w)).map(|w| color[w]).collect();
                nb.sort_unstable();
                (color[v], nb)
            })
            .collect();
        let mut uniq = sigs.clone();
        uniq.sort();
        uniq.dedup();
        color = sigs
            .iter()
            .map(|s| uniq.binary_search(s).unwrap() as u32)
            .collect();
        if uniq.len() == classes {
            return color;
        }
        classes = uniq.len();
    }
}

struct Search<'a> {
    g: &'a SmallGraph,
    cells: Vec<Vec<usize>>,
    pos: Vec<usize>,
    best: Option<(u64, Vec<usize>)>,
}

impl Search<'_> {
    fn leaf(&mut self) {
        let mut mask = 0u64;
        for (u, v) in self.g.edge_list() {
            mask |= 1 << pair_index(self.pos[u], self.pos[v]);
        }
        if self.best.as_ref().is_none_or(|(m, _)| mask < *m) {
            self.best = Some((mask, self.pos.clone()));
        }
    }

    fn run(&mut self, cell: usize, offset: usize) {
        if cell == self.cells.len() {
            self.leaf();
            return;
        }
        let len = self.cells[cell].len();
        self.permute(cell, offset, 0, len);
    }

    fn permute(&mut self, cell: usize, offset: usize, k: usize, len: usize) {
        if k == len {
            for (i, &v) in self.cells[cell].iter().enumerate() {
                self.pos[v] = offset + i;
            }
            self.run(cell + 1, offset + len);
            return;
        }
        for i in k..len {
            self.cells[cell].swap(k, i);
            self.permute(cell, offset, k + 1, len);
            self.cells[cell].swap(k, i);
        }
    }
}

/// Canonical code plus the labelling `perm` (vertex `v` goes to `perm[v]`)
/// that produces it.
pub fn canonical_form(g: &SmallGraph) -> (CanonicalCode, Vec<usize>) {
    assert!(g.n <= MAX_CANON, "canonical form needs n <= {MAX_CANON}");
    let color = refine(g);
    let ncolors = color.iter().map(|&c| c as usize + 1).max().unwrap_or(0);
    let mut cells = vec![Vec::new(); ncolors];
    for (v, &c) in color.iter().enumerate() {
        cells[c as usize].push(v);
    }
    let mut search = Search {
        g,
        cells,
        pos: vec![0; g.n],
        best: None,
    };
    search.run(0, 0);
    let (mask, perm) = search.best.expect("at least one labelling");
    (CanonicalCode { n: g.n as u8, mask }, perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::small::pair_count;
    use std::collections::HashSet;

    #[test]
    fn invariance_and_distinctness() {
        let p4 = Graph::path(4);
        let shuffled = Graph::from_edges(4, &[(2, 0), (0, 3), (3, 1)]);
        assert_eq!(canonical_code(&p4).unwrap(), canonical_code(&shuffled).unwrap());
        assert_ne!(
            canonical_code(&Graph::cycle(5)).unwrap(),
            canonical_code(&Graph::path(5)).unwrap()
        );
        assert!(matches!(
            canonical_code(&Graph::empty(9)),
            Err(Error::GraphTooLarge { n: 9, max: 8 })
        ));
    }

    #[test]
    fn class_counts_up_to_six() {
        // Known numbers of unlabelled graphs on n vertices.
        let known = [1usize, 1, 2, 4, 11, 34, 156];
        for (n, &count) in known.iter().enumerate() {
            let codes: HashSet<CanonicalCode> = (0u64..(1 << pair_count(n)))
                .map(|m| canonical_form(&SmallGraph::from_mask(n, m)).0)
                .collect();
            assert_eq!(codes.len(), count, "n = {n}");
        }
    }

    #[test]
    fn form_relabels_consistently() {
        let g = SmallGraph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (1, 5)]);
        let (code, perm) = canonical_form(&g);
        assert_eq!(g.permuted(&perm), code.graph());
    }
}
