//! Exact solving of graphs on which no branching rule applies.
//!
//! Such graphs split into components or co-components, are spiders, have the
//! bipartite shape of [`Case4`] (deletion only), or are small enough for
//! exhaustive search. Costs add up over components, co-components, and the
//! head / body of a spider, and each case comes with an explicit certificate.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Mode, Pair, PairSet};
use crate::p4::is_cograph;
use crate::search::brute_force_min;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SpiderKind {
    Thin,
    Thick,
}

impl fmt::Display for SpiderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SpiderKind::Thin => "thin",
            SpiderKind::Thick => "thick",
        })
    }
}

/// `legs[i] = (s, φ(s))`, ordered by `s`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpiderPartition {
    pub s: Vec<usize>,
    pub k: Vec<usize>,
    pub r: Vec<usize>,
    pub legs: Vec<(usize, usize)>,
    pub kind: SpiderKind,
}

impl SpiderPartition {
    pub fn q(&self) -> usize {
        self.s.len()
    }

    /// Checks every condition of the spider definition.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let q = self.s.len();
        if q < 2 || self.k.len() != q || self.legs.len() != q {
            return false;
        }
        let mut seen = vec![false; g.n()];
        for &v in self.s.iter().chain(&self.k).chain(&self.r) {
            if v >= g.n() || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        if seen.iter().any(|&x| !x) {
            return false;
        }
        let pairs = |xs: &[usize]| -> Vec<(usize, usize)> {
            let mut out = Vec::new();
            for (i, &u) in xs.iter().enumerate() {
                for &v in &xs[i + 1..] {
                    out.push((u, v));
                }
            }
            out
        };
        if pairs(&self.s).iter().any(|&(u, v)| g.has_edge(u, v)) {
            return false;
        }
        if pairs(&self.k).iter().any(|&(u, v)| !g.has_edge(u, v)) {
            return false;
        }
        for &r in &self.r {
            if self.k.iter().any(|&k| !g.has_edge(r, k)) || self.s.iter().any(|&s| g.has_edge(r, s)) {
                return false;
            }
        }
        let mut images: Vec<usize> = self.legs.iter().map(|l| l.1).collect();
        images.sort_unstable();
        let mut ks = self.k.clone();
        ks.sort_unstable();
        let mut sources: Vec<usize> = self.legs.iter().map(|l| l.0).collect();
        sources.sort_unstable();
        let mut ss = self.s.clone();
        ss.sort_unstable();
        if images != ks || sources != ss {
            return false;
        }
        self.legs.iter().all(|&(s, phi)| {
            self.k.iter().all(|&k| {
                let expected = match self.kind {
                    SpiderKind::Thin => k == phi,
                    SpiderKind::Thick => k != phi,
                };
                g.has_edge(s, k) == expected
            })
        })
    }
}

/// Thin spider detection: `S` must be exactly the degree-one vertices, since
/// every vertex of `K` or `R` sees at least two vertices of `K ∪ S`.
fn thin_spider(g: &Graph) -> Option<SpiderPartition> {
    let s: Vec<usize> = (0..g.n()).filter(|&v| g.degree(v) == 1).collect();
    let legs: Vec<(usize, usize)> = s.iter().map(|&v| (v, g.neighbors(v).first().unwrap())).collect();
    let mut k: Vec<usize> = legs.iter().map(|l| l.1).collect();
    k.sort_unstable();
    k.dedup();
    let in_sk = |v: &usize| s.contains(v) || k.contains(v);
    let r: Vec<usize> = (0..g.n()).filter(|v| !in_sk(v)).collect();
    let p = SpiderPartition { s, k, r, legs, kind: SpiderKind::Thin };
    p.is_valid_in(g).then_some(p)
}

/// A spider partition of `g`, if one exists. Thick spiders are found as thin
/// spiders of the complement with the roles of `S` and `K` exchanged.
pub fn recognize_spider(g: &Graph) -> Option<SpiderPartition> {
    if g.n() < 4 {
        return None;
    }
    if let Some(p) = thin_spider(g) {
        return Some(p);
    }
    let co = thin_spider(&g.complement())?;
    let mut legs: Vec<(usize, usize)> = co.legs.iter().map(|&(k, s)| (s, k)).collect();
    legs.sort_unstable();
    let mut s = co.k;
    s.sort_unstable();
    let mut k = co.s;
    k.sort_unstable();
    let p = SpiderPartition { s, k, r: co.r, legs, kind: SpiderKind::Thick };
    debug_assert!(p.is_valid_in(g));
    p.is_valid_in(g).then_some(p)
}

// ---------------------------------------------------------------------------
// Spider heads

const HEAD_TABLE: &str = include_str!("../data/spider_heads.txt");

/// Closed forms observed in the calibration table.
pub fn head_formula(q: usize, kind: SpiderKind, mode: Mode) -> usize {
    match (mode, kind) {
        (Mode::Deletion, SpiderKind::Thick) => q * (q - 1) / 2,
        _ => q - 1,
    }
}

/// Parsed calibration table, `(mode, kind, q) -> cost`.
pub fn head_table() -> &'static BTreeMap<(Mode, SpiderKind, usize), usize> {
    static TABLE: OnceLock<BTreeMap<(Mode, SpiderKind, usize), usize>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = BTreeMap::new();
        for line in HEAD_TABLE.lines() {
            let line = line.split('#').next().unwrap().trim();
            if line.is_empty() {
                continue;
            }
            let f: Vec<&str> = line.split_whitespace().collect();
            assert_eq!(f.len(), 4, "bad calibration line `{line}`");
            let mode: Mode = f[0].parse().expect("mode");
            let kind = match f[1] {
                "thin" => SpiderKind::Thin,
                "thick" => SpiderKind::Thick,
                other => panic!("bad spider kind `{other}`"),
            };
            let q: usize = f[2].parse().expect("q");
            let cost: usize = f[3].parse().expect("cost");
            assert_eq!(head_formula(q, kind, mode), cost, "calibration disagrees with formula: {line}");
            t.insert((mode, kind, q), cost);
        }
        t
    })
}

/// Optimal cost of the head `G[S ∪ K]` of a spider with `|K| = q`.
pub fn spider_head_cost(q: usize, kind: SpiderKind, mode: Mode) -> usize {
    assert!(q >= 2, "spider heads have q >= 2");
    head_table()
        .get(&(mode, kind, q))
        .copied()
        .unwrap_or_else(|| head_formula(q, kind, mode))
}

/// A head modification set that stays valid whatever the body `R` is.
///
/// Thin (both modes): remove all legs but the first. Thick deletion: keep
/// `s_i k_j` only for `j < i`, which nests the neighbourhoods. Thick editing:
/// add the missing leg to every `s_i` but the first.
pub fn head_certificate(p: &SpiderPartition, mode: Mode) -> PairSet {
    let legs = &p.legs;
    match (p.kind, mode) {
        (SpiderKind::Thin, _) | (SpiderKind::Thick, Mode::Editing) => {
            legs.iter().skip(1).map(|&(s, k)| Pair::new(s, k)).collect()
        }
        (SpiderKind::Thick, Mode::Deletion) => {
            let mut out = PairSet::new();
            for (i, &(s, _)) in legs.iter().enumerate() {
                for &(_, k) in &legs[i + 1..] {
                    out.insert(Pair::new(s, k));
                }
            }
            out
        }
    }
}

/// Thin or thick head with `q` legs and a body of `r` vertices joined to `K`.
/// Vertices: `S = 0..q`, `K = q..2q`, `R = 2q..2q+r`, legs `i <-> q+i`.
pub fn spider_graph(q: usize, kind: SpiderKind, r: usize) -> Graph {
    let mut edges = Vec::new();
    for i in 0..q {
        for j in 0..q {
            if i < j {
                edges.push((q + i, q + j));
            }
            let leg = i == j;
            if leg == (kind == SpiderKind::Thin) {
                edges.push((i, q + j));
            }
        }
        for x in 0..r {
            edges.push((q + i, 2 * q + x));
        }
    }
    Graph::from_edges(2 * q + r, &edges)
}

// ---------------------------------------------------------------------------
// Case 4

/// Bipartite `X ∪ Y` with `|X| = 2`, one `y` seeing exactly one vertex of
/// `X`, and every other vertex of `Y` seeing both. Deleting `y`'s edge
/// leaves a complete bipartite graph plus an isolated vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Case4 {
    pub x: [usize; 2],
    pub y: usize,
    /// The `X` vertex adjacent to `y`.
    pub y_neighbor: usize,
    pub rest: Vec<usize>,
}

impl Case4 {
    pub fn certificate(&self) -> PairSet {
        std::iter::once(Pair::new(self.y, self.y_neighbor)).collect()
    }
}

pub fn detect_case4(g: &Graph) -> Option<Case4> {
    let n = g.n();
    if n < 4 {
        return None;
    }
    let mut ones = (0..n).filter(|&v| g.degree(v) == 1);
    let y = ones.next()?;
    if ones.next().is_some() {
        return None;
    }
    let x1 = g.neighbors(y).first().unwrap();
    let rest: Vec<usize> = g.neighbors(x1).iter().filter(|&v| v != y).collect();
    if rest.len() != n - 3 {
        return None;
    }
    let x2 = (0..n).find(|&v| v != y && v != x1 && !rest.contains(&v))?;
    let ok = !g.has_edge(x1, x2) && rest.iter().all(|&v| g.degree(v) == 2 && g.has_edge(v, x2));
    ok.then(|| Case4 {
        x: [x1.min(x2), x1.max(x2)],
        y,
        y_neighbor: x1,
        rest,
    })
}

// ---------------------------------------------------------------------------
// Classification

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "tag", content = "payload", rename_all = "kebab-case")]
pub enum RuleFreeClass {
    Disconnected(Vec<Vec<usize>>),
    CoDisconnected(Vec<Vec<usize>>),
    Spider(SpiderPartition),
    Case4Bipartite(Case4),
    Tiny,
    NotRuleFree,
}

impl RuleFreeClass {
    pub fn tag(&self) -> &'static str {
        match self {
            RuleFreeClass::Disconnected(_) => "disconnected",
            RuleFreeClass::CoDisconnected(_) => "co-disconnected",
            RuleFreeClass::Spider(_) => "spider",
            RuleFreeClass::Case4Bipartite(_) => "case4-bipartite",
            RuleFreeClass::Tiny => "tiny",
            RuleFreeClass::NotRuleFree => "not-rule-free",
        }
    }
}

/// Largest graph solved by exhaustive search in the rule-free base case.
pub fn tiny_limit(mode: Mode) -> usize {
    match mode {
        Mode::Deletion => 6,
        Mode::Editing => 5,
    }
}

fn sets_to_vecs(sets: Vec<crate::bitset::VertexSet>) -> Vec<Vec<usize>> {
    sets.into_iter().map(|s| s.iter().collect()).collect()
}

/// Structural case of a graph, checked in the order disconnected,
/// co-disconnected, spider, bipartite Case 4 (deletion), small.
pub fn classify_rule_free(g: &Graph, mode: Mode) -> RuleFreeClass {
    let comps = g.connected_components();
    if comps.len() > 1 {
        return RuleFreeClass::Disconnected(sets_to_vecs(comps));
    }
    let co = g.co_components();
    if co.len() > 1 {
        return RuleFreeClass::CoDisconnected(sets_to_vecs(co));
    }
    if let Some(p) = recognize_spider(g) {
        return RuleFreeClass::Spider(p);
    }
    if mode == Mode::Deletion {
        if let Some(c) = detect_case4(g) {
            return RuleFreeClass::Case4Bipartite(c);
        }
    }
    if g.n() <= tiny_limit(mode) {
        return RuleFreeClass::Tiny;
    }
    RuleFreeClass::NotRuleFree
}

fn solve_parts(g: &Graph, parts: &[Vec<usize>], mode: Mode) -> Result<(usize, PairSet)> {
    let mut total = 0;
    let mut cert = PairSet::new();
    for part in parts {
        let (h, labels) = g.induced_subgraph(part.iter().copied())?;
        let (c, f) = rule_free_cost(&h, mode)?;
        total += c;
        cert = cert.union(&f.map(|v| labels[v]));
    }
    Ok((total, cert))
}

/// Optimal cost and certificate of a graph that decomposes completely
/// through the rule-free cases.
pub fn rule_free_cost(g: &Graph, mode: Mode) -> Result<(usize, PairSet)> {
    if g.n() < 4 || is_cograph(g) {
        return Ok((0, PairSet::new()));
    }
    match classify_rule_free(g, mode) {
        RuleFreeClass::Disconnected(parts) | RuleFreeClass::CoDisconnected(parts) => solve_parts(g, &parts, mode),
        RuleFreeClass::Spider(p) => {
            let head = spider_head_cost(p.q(), p.kind, mode);
            let head_cert = head_certificate(&p, mode);
            debug_assert_eq!(head_cert.len(), head);
            let (body, body_cert) = solve_parts(g, std::slice::from_ref(&p.r), mode)?;
            Ok((head + body, head_cert.union(&body_cert)))
        }
        RuleFreeClass::Case4Bipartite(c) => Ok((1, c.certificate())),
        RuleFreeClass::Tiny => brute_force_min(g, mode),
        RuleFreeClass::NotRuleFree => Err(Error::NotRuleFree(format!(
            "connected, co-connected, {} vertices, not a spider",
            g.n()
        ))),
    }
}

/// `α(G)` with a deletion certificate.
pub fn alpha_rule_free(g: &Graph) -> Result<(usize, PairSet)> {
    rule_free_cost(g, Mode::Deletion)
}

pub fn editing_cost_rule_free(g: &Graph) -> Result<(usize, PairSet)> {
    rule_free_cost(g, Mode::Editing)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{simple_branching_min, verify_certificate};
    use crate::small::SmallGraph;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

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

    /// Exhaustive spider test: try every ordered choice of S, K, φ.
    fn spider_by_search(g: &Graph) -> bool {
        let n = g.n();
        for s_mask in 0u32..(1 << n) {
            let q = s_mask.count_ones() as usize;
            if q < 2 || 2 * q > n {
                continue;
            }
            let s: Vec<usize> = (0..n).filter(|&v| s_mask >> v & 1 == 1).collect();
            for k_mask in 0u32..(1 << n) {
                if k_mask & s_mask != 0 || k_mask.count_ones() as usize != q {
                    continue;
                }
                let k: Vec<usize> = (0..n).filter(|&v| k_mask >> v & 1 == 1).collect();
                let r: Vec<usize> = (0..n).filter(|&v| (s_mask | k_mask) >> v & 1 == 0).collect();
                let mut perm: Vec<usize> = (0..q).collect();
                loop {
                    for kind in [SpiderKind::Thin, SpiderKind::Thick] {
                        let legs = (0..q).map(|i| (s[i], k[perm[i]])).collect();
                        let p = SpiderPartition { s: s.clone(), k: k.clone(), r: r.clone(), legs, kind };
                        if p.is_valid_in(g) {
                            return true;
                        }
                    }
                    if !next_permutation(&mut perm) {
                        break;
                    }
                }
            }
        }
        false
    }

    fn next_permutation(p: &mut [usize]) -> bool {
        let Some(i) = (1..p.len()).rev().find(|&i| p[i - 1] < p[i]) else { return false };
        let j = (i..p.len()).rev().find(|&j| p[j] > p[i - 1]).unwrap();
        p.swap(i - 1, j);
        p[i..].reverse();
        true
    }

    #[test]
    fn spider_examples() {
        let p4 = Graph::path(4);
        let sp = recognize_spider(&p4).unwrap();
        assert_eq!(sp.s, vec![0, 3]);
        assert_eq!(sp.k, vec![1, 2]);
        assert_eq!(sp.kind, SpiderKind::Thin);
        assert!(recognize_spider(&Graph::cycle(5)).is_none());
        assert!(!spider_by_search(&Graph::cycle(5)));

        let g = spider_graph(3, SpiderKind::Thin, 1);
        let sp = recognize_spider(&g).unwrap();
        assert_eq!((sp.q(), sp.r.len(), sp.kind), (3, 1, SpiderKind::Thin));
        let g = spider_graph(4, SpiderKind::Thick, 2);
        let sp = recognize_spider(&g).unwrap();
        assert_eq!((sp.q(), sp.r.clone(), sp.kind), (4, vec![8, 9], SpiderKind::Thick));
        assert!(sp.is_valid_in(&g));
    }

    #[test]
    fn spider_recognition_matches_exhaustive_search() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let mut negatives = 0;
        while negatives < 500 {
            let n = rng.gen_range(4..=7);
            let p = rng.gen_range(0.2..0.8);
            let g = random_graph(&mut rng, n, p);
            let found = recognize_spider(&g);
            if let Some(sp) = &found {
                assert!(sp.is_valid_in(&g));
            } else {
                negatives += 1;
            }
            assert_eq!(found.is_some(), spider_by_search(&g));
        }
        // positives, relabelled
        for q in 2..=4 {
            for kind in [SpiderKind::Thin, SpiderKind::Thick] {
                for r in 0..=2 {
                    let g = spider_graph(q, kind, r);
                    let mut perm: Vec<usize> = (0..g.n()).collect();
                    perm.reverse();
                    let h = Graph::new(g.n(), g.edges().iter().map(|e| (perm[e.u()], perm[e.v()]))).unwrap();
                    let sp = recognize_spider(&h).unwrap();
                    assert!(sp.is_valid_in(&h));
                    assert_eq!(sp.q(), q);
                    // q = 2 heads are P4s, which are both thin and thick
                    if q > 2 {
                        assert_eq!(sp.kind, kind);
                    }
                }
            }
        }
    }

    #[test]
    fn head_costs_match_search() {
        for q in 2..=4 {
            for kind in [SpiderKind::Thin, SpiderKind::Thick] {
                for mode in [Mode::Deletion, Mode::Editing] {
                    let g = spider_graph(q, kind, 0);
                    let (best, _) = simple_branching_min(&g, mode);
                    assert_eq!(spider_head_cost(q, kind, mode), best, "q={q} {kind} {mode}");
                }
            }
        }
        assert_eq!(spider_head_cost(2, SpiderKind::Thin, Mode::Deletion), 1);
        assert_eq!(spider_head_cost(3, SpiderKind::Thin, Mode::Deletion), 2);
        assert_eq!(spider_head_cost(3, SpiderKind::Thick, Mode::Deletion), 3);
        assert!(!head_table().is_empty());
    }

    #[test]
    fn head_certificates_survive_any_body() {
        for q in 2..=6 {
            for kind in [SpiderKind::Thin, SpiderKind::Thick] {
                for mode in [Mode::Deletion, Mode::Editing] {
                    for r in 0..=2 {
                        let g = spider_graph(q, kind, r);
                        let sp = recognize_spider(&g).unwrap();
                        let cert = head_certificate(&sp, mode);
                        assert_eq!(cert.len(), spider_head_cost(q, sp.kind, mode));
                        assert!(verify_certificate(&g, &cert, mode).unwrap(), "q={q} {kind} {mode} r={r}");
                    }
                }
            }
        }
    }

    #[test]
    fn case4_examples() {
        for ys in 3..=8 {
            // X = {0, 1}; y = 2 sees only 0; the rest see both
            let mut edges = vec![(0, 2)];
            for v in 3..2 + ys {
                edges.push((0, v));
                edges.push((1, v));
            }
            let g = Graph::from_edges(2 + ys, &edges);
            let c = detect_case4(&g).unwrap();
            assert_eq!((c.x, c.y, c.y_neighbor), ([0, 1], 2, 0));
            let (a, cert) = alpha_rule_free(&g).unwrap();
            assert_eq!(a, 1);
            assert!(verify_certificate(&g, &cert, Mode::Deletion).unwrap());
            assert_eq!(classify_rule_free(&g, Mode::Deletion).tag(), "case4-bipartite");
        }
        assert!(detect_case4(&Graph::path(5)).is_none());
        assert!(detect_case4(&Graph::complete(4)).is_none());
    }

    #[test]
    fn classify_examples() {
        assert_eq!(classify_rule_free(&Graph::complete(5), Mode::Deletion).tag(), "co-disconnected");
        let two_triangles = Graph::from_edges(6, &[(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5)]);
        assert_eq!(classify_rule_free(&two_triangles, Mode::Deletion).tag(), "disconnected");
        assert_eq!(classify_rule_free(&Graph::cycle(5), Mode::Deletion).tag(), "tiny");
        assert_eq!(classify_rule_free(&Graph::cycle(7), Mode::Deletion).tag(), "not-rule-free");
        assert_eq!(classify_rule_free(&Graph::cycle(6), Mode::Editing).tag(), "not-rule-free");
    }

    #[test]
    fn alpha_examples() {
        for n in 0usize..4 {
            for mask in 0u64..(1 << (n * n.saturating_sub(1) / 2)) {
                let g = SmallGraph::from_mask(n, mask).to_graph();
                assert_eq!(alpha_rule_free(&g).unwrap().0, 0);
            }
        }
        let pan = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]);
        let two = Graph::new(10, pan.edges().iter().flat_map(|e| [(e.u(), e.v()), (e.u() + 5, e.v() + 5)])).unwrap();
        let (a, cert) = alpha_rule_free(&two).unwrap();
        assert_eq!(a, 2);
        assert!(verify_certificate(&two, &cert, Mode::Deletion).unwrap());

        let two_p4 = Graph::from_edges(8, &[(0, 1), (1, 2), (2, 3), (4, 5), (5, 6), (6, 7)]);
        let (e, cert) = editing_cost_rule_free(&two_p4).unwrap();
        assert_eq!(e, 2);
        assert_eq!(simple_branching_min(&two_p4, Mode::Editing).0, 2);
        assert!(verify_certificate(&two_p4, &cert, Mode::Editing).unwrap());
        assert_eq!(editing_cost_rule_free(&spider_graph(2, SpiderKind::Thin, 0)).unwrap().0, 1);
    }

    #[test]
    fn additivity_over_small_unions() {
        // unions (and joins) of two graphs with at most 4 vertices each
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..150 {
            let (n1, n2) = (rng.gen_range(1..=4), rng.gen_range(1..=3));
            let g1 = random_graph(&mut rng, n1, 0.5);
            let g2 = random_graph(&mut rng, n2, 0.5);
            let mut edges: Vec<(usize, usize)> = g1.edges().iter().map(|e| (e.u(), e.v())).collect();
            edges.extend(g2.edges().iter().map(|e| (e.u() + n1, e.v() + n1)));
            let union = Graph::new(n1 + n2, edges.clone()).unwrap();
            for u in 0..n1 {
                for v in 0..n2 {
                    edges.push((u, n1 + v));
                }
            }
            let join = Graph::new(n1 + n2, edges).unwrap();
            for mode in [Mode::Deletion, Mode::Editing] {
                let parts = simple_branching_min(&g1, mode).0 + simple_branching_min(&g2, mode).0;
                assert_eq!(brute_force_min(&union, mode).unwrap().0, parts);
                assert_eq!(brute_force_min(&join, mode).unwrap().0, parts);
            }
        }
    }

    #[test]
    fn rule_free_cost_matches_oracle_on_decomposable_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let mut checked = 0;
        while checked < 300 {
            let n = rng.gen_range(4..=8);
            let p = rng.gen_range(0.2..0.8);
            let g = random_graph(&mut rng, n, p);
            for mode in [Mode::Deletion, Mode::Editing] {
                if mode == Mode::Editing && n > 7 {
                    continue;
                }
                let Ok((c, cert)) = rule_free_cost(&g, mode) else { continue };
                checked += 1;
                assert_eq!(cert.len(), c);
                assert!(verify_certificate(&g, &cert, mode).unwrap());
                assert_eq!(c, simple_branching_min(&g, mode).0, "{g:?} {mode}");
            }
        }
    }
}
