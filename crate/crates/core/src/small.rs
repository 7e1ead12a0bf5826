//! Word-packed graphs on at most 16 vertices, used by the catalogs, the
//! canonical labelling and the brute-force oracles.
//!
//! Vertex pairs are numbered `j * (j - 1) / 2 + i` for `i < j`, so a graph on
//! up to 11 vertices has every pair set representable as a `u64` mask.

use std::collections::HashSet;

use crate::graph::{Graph, Mode, Pair, PairSet};

pub const MAX_SMALL: usize = 16;
/// Largest vertex count whose pair sets fit in a `u64`.
pub const MAX_PAIR_MASK: usize = 11;

#[inline]
pub fn pair_index(i: usize, j: usize) -> usize {
    let (i, j) = if i < j { (i, j) } else { (j, i) };
    j * (j - 1) / 2 + i
}

/// Inverse of [`pair_index`].
pub fn pair_of_index(idx: usize) -> (usize, usize) {
    let mut j = 1;
    while (j + 1) * j / 2 <= idx {
        j += 1;
    }
    (idx - j * (j - 1) / 2, j)
}

pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SmallGraph {
    pub n: usize,
    pub adj: [u16; MAX_SMALL],
}

impl SmallGraph {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_SMALL);
        SmallGraph {
            n,
            adj: [0; MAX_SMALL],
        }
    }

    pub fn from_graph(g: &Graph) -> Self {
        let mut s = SmallGraph::empty(g.n());
        for v in 0..g.n() {
            for w in g.neighbors(v) {
                s.adj[v] |= 1 << w;
            }
        }
        s
    }

    pub fn to_graph(&self) -> Graph {
        Graph::new(self.n, self.edge_list()).expect("small graph is valid")
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut s = SmallGraph::empty(n);
        for &(u, v) in edges {
            s.set_edge(u, v, true);
        }
        s
    }

    /// Graph whose edge set is the pair mask `mask` (n ≤ 11).
    pub fn from_mask(n: usize, mask: u64) -> Self {
        let mut s = SmallGraph::empty(n);
        let mut m = mask;
        while m != 0 {
            let idx = m.trailing_zeros() as usize;
            m &= m - 1;
            let (i, j) = pair_of_index(idx);
            s.set_edge(i, j, true);
        }
        s
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[u] >> v & 1 == 1
    }

    #[inline]
    pub fn set_edge(&mut self, u: usize, v: usize, on: bool) {
        if on {
            self.adj[u] |= 1 << v;
            self.adj[v] |= 1 << u;
        } else {
            self.adj[u] &= !(1 << v);
            self.adj[v] &= !(1 << u);
        }
    }

    #[inline]
    pub fn toggle(&mut self, u: usize, v: usize) {
        self.adj[u] ^= 1 << v;
        self.adj[v] ^= 1 << u;
    }

    #[inline]
    pub fn all(&self) -> u16 {
        ((1u32 << self.n) - 1) as u16
    }

    pub fn edge_list(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.n {
            for i in 0..j {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|v| self.adj[v].count_ones() as usize).sum::<usize>() / 2
    }

    /// Pair mask of the edge set (n ≤ 11).
    pub fn edge_mask(&self) -> u64 {
        debug_assert!(self.n <= MAX_PAIR_MASK);
        let mut m = 0u64;
        for j in 1..self.n {
            let mut row = self.adj[j] & ((1u16 << j) - 1);
            while row != 0 {
                let i = row.trailing_zeros() as usize;
                row &= row - 1;
                m |= 1 << pair_index(i, j);
            }
        }
        m
    }

    /// Toggles every pair in `mask` (n ≤ 11).
    pub fn toggled_mask(&self, mask: u64) -> SmallGraph {
        let mut g = *self;
        let mut m = mask;
        while m != 0 {
            let idx = m.trailing_zeros() as usize;
            m &= m - 1;
            let (i, j) = pair_of_index(idx);
            g.toggle(i, j);
        }
        g
    }

    pub fn complement(&self) -> SmallGraph {
        let mut g = *self;
        let all = self.all();
        for v in 0..self.n {
            g.adj[v] = all & !self.adj[v] & !(1 << v);
        }
        g
    }

    /// Subgraph induced by the vertices in `set`, relabelled ascending.
    pub fn induced(&self, set: u16) -> SmallGraph {
        let verts: Vec<usize> = (0..self.n).filter(|&v| set >> v & 1 == 1).collect();
        let mut g = SmallGraph::empty(verts.len());
        for (a, &u) in verts.iter().enumerate() {
            for (b, &v) in verts.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    g.set_edge(a, b, true);
                }
            }
        }
        g
    }

    /// Applies a vertex relabelling: old vertex `v` becomes `perm[v]`.
    pub fn permuted(&self, perm: &[usize]) -> SmallGraph {
        let mut g = SmallGraph::empty(self.n);
        for (u, v) in self.edge_list() {
            g.set_edge(perm[u], perm[v], true);
        }
        g
    }

    fn component_of(&self, start: usize, set: u16, complement: bool) -> u16 {
        let mut comp = 1u16 << start;
        let mut frontier = comp;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let nb = if complement {
                !self.adj[v] & !(1 << v)
            } else {
                self.adj[v]
            };
            let new = nb & set & !comp;
            comp |= new;
            frontier |= new;
        }
        comp
    }

    fn cograph_within(&self, set: u16) -> bool {
        if set.count_ones() <= 3 {
            return true;
        }
        let start = set.trailing_zeros() as usize;
        let comp = self.component_of(start, set, false);
        if comp != set {
            return self.cograph_within(comp) && self.cograph_within(set & !comp);
        }
        let co = self.component_of(start, set, true);
        if co != set {
            return self.cograph_within(co) && self.cograph_within(set & !co);
        }
        false
    }

    /// Cograph test by connected/co-connected decomposition.
    pub fn is_cograph(&self) -> bool {
        self.cograph_within(self.all())
    }

    /// Some induced P4 `(a, b, c, d)` in path order, scanning ascending.
    pub fn find_p4(&self) -> Option<[usize; 4]> {
        for b in 0..self.n {
            let mut cs = self.adj[b];
            while cs != 0 {
                let c = cs.trailing_zeros() as usize;
                cs &= cs - 1;
                let closed_b = self.adj[b] | 1 << b;
                let closed_c = self.adj[c] | 1 << c;
                let aset = self.adj[b] & !closed_c;
                let dset = self.adj[c] & !closed_b;
                let mut aa = aset;
                while aa != 0 {
                    let a = aa.trailing_zeros() as usize;
                    aa &= aa - 1;
                    let ds = dset & !self.adj[a];
                    if ds != 0 {
                        return Some([a, b, c, ds.trailing_zeros() as usize]);
                    }
                }
            }
        }
        None
    }

    /// All induced P4s as vertex masks.
    pub fn p4_sets(&self) -> Vec<u16> {
        let mut out = Vec::new();
        for b in 0..self.n {
            for c in b + 1..self.n {
                if !self.has_edge(b, c) {
                    continue;
                }
                let closed_b = self.adj[b] | 1 << b;
                let closed_c = self.adj[c] | 1 << c;
                // both orientations of the middle edge
                for (x, y, cx, cy) in [(b, c, closed_b, closed_c), (c, b, closed_c, closed_b)] {
                    let mut aa = self.adj[x] & !cy;
                    while aa != 0 {
                        let a = aa.trailing_zeros() as usize;
                        aa &= aa - 1;
                        let mut dd = self.adj[y] & !cx & !self.adj[a];
                        while dd != 0 {
                            let d = dd.trailing_zeros() as usize;
                            dd &= dd - 1;
                            out.push(1 << a | 1 << b | 1 << c | 1 << d);
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    pub fn pairs_to_set(&self, mask: u64) -> PairSet {
        let mut out = Vec::new();
        let mut m = mask;
        while m != 0 {
            let idx = m.trailing_zeros() as usize;
            m &= m - 1;
            let (i, j) = pair_of_index(idx);
            out.push(Pair::new(i, j));
        }
        out.into_iter().collect()
    }
}

/// Candidate pairs of an induced P4 on `[a, b, c, d]` for the given mode.
fn p4_pairs(p: [usize; 4], mode: Mode) -> impl Iterator<Item = usize> {
    let [a, b, c, d] = p;
    let edges = [(a, b), (b, c), (c, d)];
    let non_edges = [(a, c), (b, d), (a, d)];
    let take = match mode {
        Mode::Deletion => 3,
        Mode::Editing => 6,
    };
    edges
        .into_iter()
        .chain(non_edges)
        .take(take)
        .map(|(u, v)| pair_index(u, v))
}

/// Every inclusion-minimal deletion (or editing) set of `g`, as pair masks.
///
/// Levelled search over sets grown by one pair of an induced P4 at a time.
/// Any minimal set `M` is reachable: if `F ⊊ M` still leaves a P4 `Q`,
/// `M ∖ F` must contain a pair of `Q`. Processing levels by size means a
/// recorded set never contains a smaller solution.
pub fn minimal_modification_masks(g: &SmallGraph, mode: Mode) -> Vec<u64> {
    assert!(g.n <= MAX_PAIR_MASK, "pair masks need n <= {MAX_PAIR_MASK}");
    let mut found: Vec<u64> = Vec::new();
    let mut level: Vec<u64> = vec![0];
    while !level.is_empty() {
        let mut next: HashSet<u64> = HashSet::new();
        let mut solved_here = Vec::new();
        for &f in &level {
            if found.iter().any(|&m| m & !f == 0) {
                continue;
            }
            let h = g.toggled_mask(f);
            match h.find_p4() {
                None => solved_here.push(f),
                Some(p) => {
                    for idx in p4_pairs(p, mode) {
                        let bit = 1u64 << idx;
                        if f & bit == 0 {
                            next.insert(f | bit);
                        }
                    }
                }
            }
        }
        found.extend(solved_here);
        let mut next: Vec<u64> = next.into_iter().collect();
        next.sort_unstable();
        level = next;
    }
    found.sort_unstable_by_key(|&m| (m.count_ones(), m));
    found
}


#[cfg(test)]
mod tests {
    use super::oracle::*;
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pair_index_roundtrip() {
        for j in 1..11 {
            for i in 0..j {
                assert_eq!(pair_of_index(pair_index(i, j)), (i, j));
            }
        }
        assert_eq!(pair_index(9, 10), 54);
    }

    #[test]
    fn cograph_matches_subset_scan_exhaustive() {
        for n in 0..=6 {
            for mask in 0u64..(1 << pair_count(n)) {
                let g = SmallGraph::from_mask(n, mask);
                assert_eq!(g.is_cograph(), !has_p4_by_subsets(&g), "n={n} mask={mask:b}");
                assert_eq!(g.find_p4().is_some(), !g.is_cograph());
            }
        }
    }

    #[test]
    fn p4_sets_count() {
        let p5 = SmallGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]);
        assert_eq!(p5.p4_sets().len(), 2);
        let c5 = SmallGraph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]);
        assert_eq!(c5.p4_sets().len(), 5);
    }

    #[test]
    fn minimal_sets_match_enumeration_small() {
        for n in 4..=5 {
            for mask in 0u64..(1 << pair_count(n)) {
                let g = SmallGraph::from_mask(n, mask);
                for mode in [Mode::Deletion, Mode::Editing] {
                    assert_eq!(
                        minimal_modification_masks(&g, mode),
                        minimal_sets_by_enumeration(&g, mode),
                        "n={n} mask={mask:b} {mode}"
                    );
                }
            }
        }
    }

    #[test]
    fn minimal_sets_match_enumeration_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(6..=7);
            let mask = rng.gen::<u64>() & ((1 << pair_count(n)) - 1);
            let g = SmallGraph::from_mask(n, mask);
            assert_eq!(
                minimal_modification_masks(&g, Mode::Deletion),
                minimal_sets_by_enumeration(&g, Mode::Deletion)
            );
        }
        for _ in 0..4 {
            let mask = rng.gen::<u64>() & ((1 << pair_count(6)) - 1);
            let g = SmallGraph::from_mask(6, mask);
            assert_eq!(
                minimal_modification_masks(&g, Mode::Editing),
                minimal_sets_by_enumeration(&g, Mode::Editing)
            );
        }
    }
}
