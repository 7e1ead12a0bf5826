//! Induced P4 detection and the vertex classification around a fixed P4.

use serde::Serialize;

use crate::bitset::VertexSet;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// An induced path `a - b - c - d`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct P4Witness {
    pub a: usize,
    pub b: usize,
    pub c: usize,
    pub d: usize,
}

impl P4Witness {
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Self {
        P4Witness { a, b, c, d }
    }

    pub fn vertices(&self) -> [usize; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let vs = self.vertices();
        if vs.iter().any(|&v| v >= g.n()) {
            return false;
        }
        for i in 0..4 {
            for j in i + 1..4 {
                if vs[i] == vs[j] {
                    return false;
                }
            }
        }
        let [a, b, c, d] = vs;
        g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(a, d)
            && !g.has_edge(b, d)
    }
}

/// Partition of the vertices outside a P4 by how they see it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct P4Context {
    pub witness: P4Witness,
    pub a_set: VertexSet,
    /// No neighbour in the P4.
    pub independent: VertexSet,
    /// Adjacent to all four path vertices.
    pub total: VertexSet,
    /// Adjacent to exactly the two internal vertices.
    pub p_mid: VertexSet,
    /// The remaining partially attached vertices.
    pub p_other: VertexSet,
}

impl P4Context {
    /// `P(A) = P_mid ∪ P_other`.
    pub fn partial(&self) -> VertexSet {
        self.p_mid.union(&self.p_other)
    }
}

/// Lexicographically smallest `(a, b, c, d)` with `a < d`.
pub fn find_induced_p4(g: &Graph) -> Option<P4Witness> {
    let n = g.n();
    for a in 0..n {
        let mut closed_a = g.neighbors(a).clone();
        closed_a.insert(a);
        for b in g.neighbors(a) {
            let mut closed_b = g.neighbors(b).clone();
            closed_b.insert(b);
            let cs = g.neighbors(b).difference(&closed_a);
            for c in &cs {
                let mut ds = g.neighbors(c).difference(&closed_a);
                ds.difference_with(&closed_b);
                if let Some(d) = ds.iter().find(|&d| d > a) {
                    return Some(P4Witness::new(a, b, c, d));
                }
            }
        }
    }
    None
}

/// Every induced P4 with `a < d`, in lexicographic order.
pub fn all_induced_p4s(g: &Graph) -> Vec<P4Witness> {
    let mut out = Vec::new();
    for_each_p4(g, |w| out.push(w));
    out
}

fn for_each_p4(g: &Graph, mut f: impl FnMut(P4Witness)) {
    let n = g.n();
    for a in 0..n {
        let mut closed_a = g.neighbors(a).clone();
        closed_a.insert(a);
        for b in g.neighbors(a) {
            let mut closed_b = g.neighbors(b).clone();
            closed_b.insert(b);
            let cs = g.neighbors(b).difference(&closed_a);
            for c in &cs {
                let mut ds = g.neighbors(c).difference(&closed_a);
                ds.difference_with(&closed_b);
                for d in ds.iter().filter(|&d| d > a) {
                    f(P4Witness::new(a, b, c, d));
                }
            }
        }
    }
}

/// Cograph test by recursive connected / co-connected splitting.
pub fn is_cograph(g: &Graph) -> bool {
    let mut stack = vec![g.vertices()];
    while let Some(set) = stack.pop() {
        if set.len() <= 3 {
            continue;
        }
        let comps = g.components_within(&set);
        if comps.len() > 1 {
            stack.extend(comps);
            continue;
        }
        let co = g.co_components_within(&set);
        if co.len() > 1 {
            stack.extend(co);
            continue;
        }
        return false;
    }
    true
}

fn partial_count(g: &Graph, w: &P4Witness) -> usize {
    let [a, b, c, d] = w.vertices();
    let mut union = g.neighbors(a).union(g.neighbors(b));
    union.union_with(g.neighbors(c));
    union.union_with(g.neighbors(d));
    let mut inter = g.neighbors(a).intersection(g.neighbors(b));
    inter.intersect_with(g.neighbors(c));
    inter.intersect_with(g.neighbors(d));
    union.difference_with(&inter);
    for v in [a, b, c, d] {
        union.remove(v);
    }
    union.len()
}

pub fn p4_context(g: &Graph, w: P4Witness) -> Result<P4Context> {
    if !w.is_valid_in(g) {
        return Err(Error::InvalidWitness(w.a, w.b, w.c, w.d));
    }
    let n = g.n();
    let a_set = VertexSet::from_iter_with_capacity(n, w.vertices());
    let mut ctx = P4Context {
        witness: w,
        a_set: a_set.clone(),
        independent: VertexSet::new(n),
        total: VertexSet::new(n),
        p_mid: VertexSet::new(n),
        p_other: VertexSet::new(n),
    };
    for v in 0..n {
        if a_set.contains(v) {
            continue;
        }
        let nb = g.neighbors(v);
        match nb.intersection_len(&a_set) {
            0 => ctx.independent.insert(v),
            4 => ctx.total.insert(v),
            2 if nb.contains(w.b) && nb.contains(w.c) => ctx.p_mid.insert(v),
            _ => ctx.p_other.insert(v),
        }
    }
    Ok(ctx)
}

/// An induced P4 maximising `|P(A)|`, ties to the lexicographically first.
pub fn choose_p4_max_p(g: &Graph) -> Result<P4Witness> {
    let mut best: Option<(usize, P4Witness)> = None;
    for_each_p4(g, |w| {
        let p = partial_count(g, &w);
        if best.is_none_or(|(bp, _)| p > bp) {
            best = Some((p, w));
        }
    });
    best.map(|(_, w)| w).ok_or(Error::AlreadyCograph)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::small::{oracle::has_p4_by_subsets, SmallGraph};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn pan() -> Graph {
        // 4-cycle 0-1-2-3 with pendant 4 on 0
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    }

    fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> Graph {
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if rng.gen_bool(p) {
                    edges.push((u, v));
                }
            }
        }
        Graph::new(n, edges).unwrap()
    }

    #[test]
    fn find_examples() {
        assert_eq!(find_induced_p4(&Graph::path(4)), Some(P4Witness::new(0, 1, 2, 3)));
        assert_eq!(find_induced_p4(&Graph::complete(5)), None);
        let c5 = Graph::cycle(5);
        let w = find_induced_p4(&c5).unwrap();
        assert!(w.is_valid_in(&c5));
        assert!(w.a < w.d);
    }

    #[test]
    fn cograph_examples() {
        assert!(!is_cograph(&Graph::path(4)));
        for n in 0usize..=3 {
            for mask in 0u64..(1 << (n * n.saturating_sub(1) / 2)) {
                assert!(is_cograph(&SmallGraph::from_mask(n, mask).to_graph()));
            }
        }
        let paw = Graph::from_edges(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert!(is_cograph(&paw));
    }

    #[test]
    fn cograph_agrees_with_subset_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..2000 {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.1..0.9);
            let g = random_graph(&mut rng, n, p);
            let oracle = !has_p4_by_subsets(&SmallGraph::from_graph(&g));
            assert_eq!(is_cograph(&g), oracle);
            assert_eq!(find_induced_p4(&g).is_none(), oracle);
            if let Some(w) = find_induced_p4(&g) {
                assert!(w.is_valid_in(&g));
            }
        }
    }

    #[test]
    fn context_examples() {
        let p5 = Graph::path(5);
        let ctx = p4_context(&p5, P4Witness::new(0, 1, 2, 3)).unwrap();
        assert!(ctx.independent.is_empty() && ctx.total.is_empty() && ctx.p_mid.is_empty());
        assert_eq!(ctx.p_other.iter().collect::<Vec<_>>(), vec![4]);

        let p4_iso = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3)]);
        let ctx = p4_context(&p4_iso, P4Witness::new(0, 1, 2, 3)).unwrap();
        assert!(ctx.independent.contains(4));

        let c5 = Graph::cycle(5);
        let ctx = p4_context(&c5, P4Witness::new(0, 1, 2, 3)).unwrap();
        assert!(ctx.p_other.contains(4));
        assert!(p4_context(&c5, P4Witness::new(0, 1, 2, 4)).is_err());
    }

    #[test]
    fn context_partitions_vertices() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = rng.gen_range(4..=12);
            let g = random_graph(&mut rng, n, 0.5);
            let Some(w) = find_induced_p4(&g) else { continue };
            let ctx = p4_context(&g, w).unwrap();
            let parts = [&ctx.a_set, &ctx.independent, &ctx.total, &ctx.p_mid, &ctx.p_other];
            let total: usize = parts.iter().map(|s| s.len()).sum();
            assert_eq!(total, n);
            let mut all = VertexSet::new(n);
            for s in parts {
                assert!(all.is_disjoint(s));
                all.union_with(s);
            }
        }
    }

    #[test]
    fn max_p_examples() {
        assert_eq!(choose_p4_max_p(&Graph::path(4)).unwrap(), P4Witness::new(0, 1, 2, 3));
        let p5 = Graph::path(5);
        let w = choose_p4_max_p(&p5).unwrap();
        assert_eq!(p4_context(&p5, w).unwrap().partial().len(), 1);
        assert_eq!(choose_p4_max_p(&Graph::complete(3)), Err(Error::AlreadyCograph));

        // pan: every induced P4 uses the pendant, so the brute-force maximum
        // is computed over all witnesses.
        let g = pan();
        let w = choose_p4_max_p(&g).unwrap();
        let best = all_induced_p4s(&g)
            .iter()
            .map(|&x| p4_context(&g, x).unwrap().partial().len())
            .max()
            .unwrap();
        assert_eq!(p4_context(&g, w).unwrap().partial().len(), best);
    }

    #[test]
    fn max_p_attains_enumerated_maximum() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(4..=8);
            let g = random_graph(&mut rng, n, 0.5);
            // brute force over ordered 4-tuples
            let mut best = None;
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        for d in a + 1..n {
                            let w = P4Witness::new(a, b, c, d);
                            if w.is_valid_in(&g) {
                                let p = p4_context(&g, w).unwrap().partial().len();
                                best = best.max(Some(p));
                            }
                        }
                    }
                }
            }
            match choose_p4_max_p(&g) {
                Ok(w) => {
                    assert!(w.is_valid_in(&g));
                    assert_eq!(Some(p4_context(&g, w).unwrap().partial().len()), best);
                }
                Err(_) => assert_eq!(best, None),
            }
        }
    }
}
