//! Bounded search trees for cograph deletion and editing, plus the
//! exhaustive oracles used to check them.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::minimal_sets;
use crate::decomposition::{
    classify_rule_free, head_certificate, spider_head_cost, RuleFreeClass,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, Mode, Pair, PairSet};
use crate::p4::{find_induced_p4, is_cograph};
use crate::rules::{RuleEngine, RuleId};
use crate::small::{pair_count, pair_index, pair_of_index, SmallGraph, MAX_PAIR_MASK};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes: u64,
    /// Deepest chain of branchings; never exceeds the budget.
    pub max_depth: usize,
    /// Branchings per rule (`B2`, `B5-case-3`, ...).
    pub rule_fires: BTreeMap<String, u64>,
    /// Rule-free leaves per structural case.
    pub base_cases: BTreeMap<String, u64>,
}

impl SearchStats {
    fn merge(&mut self, other: SearchStats) {
        self.nodes += other.nodes;
        self.max_depth = self.max_depth.max(other.max_depth);
        for (k, v) in other.rule_fires {
            *self.rule_fires.entry(k).or_default() += v;
        }
        for (k, v) in other.base_cases {
            *self.base_cases.entry(k).or_default() += v;
        }
    }

    fn fire(&mut self, rule: RuleId) {
        *self.rule_fires.entry(rule.to_string()).or_default() += 1;
    }

    fn base(&mut self, tag: &str) {
        *self.base_cases.entry(tag.to_string()).or_default() += 1;
    }

    /// Branchings that fell back to B1 or a bare P4.
    pub fn fallback_branchings(&self) -> u64 {
        ["B1", "P4"].iter().filter_map(|k| self.rule_fires.get(*k)).sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SolveResult {
    pub mode: Mode,
    /// Budget of a decision run; `None` for minimisation.
    pub k: Option<usize>,
    pub decision: bool,
    pub k_used: Option<usize>,
    pub certificate: Option<PairSet>,
    pub stats: SearchStats,
}

type Found = Option<(usize, PairSet)>;

/// Search driver around a [`RuleEngine`].
pub struct Solver<'e> {
    engine: &'e RuleEngine<'e>,
    mode: Mode,
}

impl<'e> Solver<'e> {
    pub fn new(engine: &'e RuleEngine<'e>, mode: Mode) -> Self {
        Solver { engine, mode }
    }

    /// Decides whether `g` has a modification set of size at most `k`.
    pub fn solve(&self, g: &Graph, k: usize) -> SolveResult {
        let (found, stats) = self.part(g, k, 0);
        let (decision, k_used, certificate) = match found {
            Some((c, cert)) => {
                self.check(g, c, &cert);
                (true, Some(c), Some(cert))
            }
            None => (false, None, None),
        };
        SolveResult { mode: self.mode, k: Some(k), decision, k_used, certificate, stats }
    }

    /// Smallest `k` accepted by [`Solver::solve`]; statistics cover every round.
    pub fn solve_min(&self, g: &Graph) -> SolveResult {
        let mut stats = SearchStats::default();
        for k in 0.. {
            let r = self.solve(g, k);
            stats.merge(r.stats);
            if r.decision {
                return SolveResult { k: None, stats, ..r };
            }
        }
        unreachable!("removing every edge always yields a cograph")
    }

    fn check(&self, g: &Graph, cost: usize, cert: &PairSet) {
        assert_eq!(cert.len(), cost, "certificate size differs from its cost");
        assert!(
            verify_certificate(g, cert, self.mode).unwrap_or(false),
            "search produced an invalid certificate {cert}"
        );
    }

    /// Minimum cost of `g` if it is at most `cap`. The certificate returned
    /// does not depend on `cap` as long as the minimum fits.
    fn part(&self, g: &Graph, cap: usize, depth: usize) -> (Found, SearchStats) {
        let mut stats = SearchStats { nodes: 1, max_depth: depth, ..Default::default() };
        if is_cograph(g) {
            return (Some((0, PairSet::new())), stats);
        }
        if cap == 0 {
            return (None, stats);
        }
        let comps = g.connected_components();
        let parts = if comps.len() > 1 { comps } else { g.co_components() };
        if parts.len() > 1 {
            let found = self.split(g, &parts, cap, depth, &mut stats);
            return (found, stats);
        }
        if let Some(m) = self.engine.find_branching_rule(g, self.mode) {
            stats.fire(m.rule);
            let found = self.branch(g, m.options_in_graph(), cap, depth, &mut stats);
            return (found, stats);
        }
        let class = classify_rule_free(g, self.mode);
        stats.base(class.tag());
        let found = match class {
            RuleFreeClass::Spider(p) => {
                let head = spider_head_cost(p.q(), p.kind, self.mode);
                if head > cap {
                    None
                } else {
                    let cert = head_certificate(&p, self.mode);
                    let (h, labels) = g.induced_subgraph(p.r.iter().copied()).expect("valid ids");
                    let (body, s) = self.part(&h, cap - head, depth);
                    stats.merge(s);
                    body.map(|(c, f)| (head + c, cert.union(&f.map(|v| labels[v]))))
                }
            }
            RuleFreeClass::Case4Bipartite(c) => Some((1, c.certificate())),
            RuleFreeClass::Tiny => {
                let (c, f) = brute_force_min(g, self.mode).expect("tiny graphs fit the oracle");
                (c <= cap).then_some((c, f))
            }
            _ => {
                // Not covered by the structural cases: branch anyway.
                let (rule, options) = match self.engine.match_b1(g, self.mode).filter(|_| self.mode == Mode::Deletion) {
                    Some(m) => (m.rule, m.options_in_graph()),
                    None => (RuleId::P4, p4_options(g, self.mode)),
                };
                stats.fire(rule);
                self.branch(g, options, cap, depth, &mut stats)
            }
        };
        (found, stats)
    }

    fn split(&self, g: &Graph, parts: &[crate::bitset::VertexSet], cap: usize, depth: usize, stats: &mut SearchStats) -> Found {
        let results: Vec<(Found, SearchStats, Vec<usize>)> = parts
            .par_iter()
            .map(|set| {
                let (h, labels) = g.induced_by_set(set);
                let (f, s) = self.part(&h, cap, depth);
                (f, s, labels)
            })
            .collect();
        let mut total = 0;
        let mut cert = PairSet::new();
        let mut ok = true;
        for (found, s, labels) in results {
            stats.merge(s);
            match found {
                Some((c, f)) if ok => {
                    total += c;
                    cert = cert.union(&f.map(|v| labels[v]));
                }
                _ => ok = false,
            }
        }
        (ok && total <= cap).then_some((total, cert))
    }

    fn branch(&self, g: &Graph, mut options: Vec<PairSet>, cap: usize, depth: usize, stats: &mut SearchStats) -> Found {
        options.sort_by(|a, b| a.size_lex_cmp(b));
        let mut best: Found = None;
        let mut limit = cap;
        for f in options {
            if f.len() > limit {
                break;
            }
            let child = g.apply_modification(&f, self.mode).expect("options come from the graph");
            let (found, s) = self.part(&child, limit - f.len(), depth + 1);
            stats.merge(s);
            if let Some((c, sub)) = found {
                let total = f.len() + c;
                best = Some((total, f.symmetric_difference(&sub)));
                if total == 0 {
                    break;
                }
                limit = total - 1;
                if f.len() > limit {
                    break;
                }
            }
        }
        best
    }
}

/// Minimal modification sets of the first induced P4 of `g`.
fn p4_options(g: &Graph, mode: Mode) -> Vec<PairSet> {
    let w = find_induced_p4(g).expect("caller checked g is not a cograph");
    let verts = w.vertices();
    let (h, _) = g.induced_subgraph(verts).unwrap();
    let mut labels = verts.to_vec();
    labels.sort_unstable();
    minimal_sets(&h, mode)
        .expect("four vertices")
        .into_iter()
        .map(|f| f.map(|v| labels[v]))
        .collect()
}

/// Decision run with the default rule engine.
pub fn solve(g: &Graph, k: usize, mode: Mode) -> SolveResult {
    let engine = RuleEngine::default();
    Solver::new(&engine, mode).solve(g, k)
}

/// Minimisation run with the default rule engine.
pub fn solve_min(g: &Graph, mode: Mode) -> SolveResult {
    let engine = RuleEngine::default();
    Solver::new(&engine, mode).solve_min(g)
}

/// Whether `g` modified by `f` is a cograph. Deletion sets must be edges.
pub fn verify_certificate(g: &Graph, f: &PairSet, mode: Mode) -> Result<bool> {
    Ok(is_cograph(&g.apply_modification(f, mode)?))
}

/// Subsets examined by [`brute_force_min`] before it gives up.
pub const BRUTE_FORCE_BUDGET: u64 = 1 << 28;

/// Exact minimum by enumerating candidate pair sets in order of size.
///
/// Candidates are the edges (deletion) or all pairs (editing). Fails with
/// [`Error::BudgetExceeded`] once more than [`BRUTE_FORCE_BUDGET`] subsets
/// would have to be examined, or when `g` has more than 11 vertices.
pub fn brute_force_min(g: &Graph, mode: Mode) -> Result<(usize, PairSet)> {
    if g.n() > MAX_PAIR_MASK {
        return Err(Error::GraphTooLarge { n: g.n(), max: MAX_PAIR_MASK });
    }
    let small = SmallGraph::from_graph(g);
    let candidates: Vec<u64> = match mode {
        Mode::Deletion => small.edge_list().iter().map(|&(u, v)| 1u64 << pair_index(u, v)).collect(),
        Mode::Editing => (0..pair_count(g.n())).map(|i| 1u64 << i).collect(),
    };
    let m = candidates.len();
    let mut spent: u64 = 0;
    for k in 0..=m {
        spent = spent.saturating_add(binomial(m as u64, k as u64));
        if spent > BRUTE_FORCE_BUDGET {
            return Err(Error::BudgetExceeded(format!(
                "more than {BRUTE_FORCE_BUDGET} subsets for {m} candidate pairs"
            )));
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mask = idx.iter().fold(0u64, |acc, &i| acc | candidates[i]);
            if small.toggled_mask(mask).is_cograph() {
                let set = (0..64)
                    .filter(|b| mask >> b & 1 == 1)
                    .map(|b| {
                        let (u, v) = pair_of_index(b);
                        Pair::new(u, v)
                    })
                    .collect();
                return Ok((k, set));
            }
            if !next_combination(&mut idx, m) {
                break;
            }
        }
    }
    unreachable!("the full candidate set always works")
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

fn next_combination(idx: &mut [usize], m: usize) -> bool {
    let k = idx.len();
    let Some(i) = (0..k).rev().find(|&i| idx[i] < m - k + i) else { return false };
    idx[i] += 1;
    for j in i + 1..k {
        idx[j] = idx[j - 1] + 1;
    }
    true
}

/// Exact minimum by plain branching on the pairs of one induced P4 per node,
/// with no structural shortcuts. Independent of the rule engine.
pub fn simple_branching_min(g: &Graph, mode: Mode) -> (usize, PairSet) {
    fn go(g: &Graph, mode: Mode, budget: usize) -> Option<PairSet> {
        let Some(w) = find_induced_p4(g) else { return Some(PairSet::new()) };
        if budget == 0 {
            return None;
        }
        let [a, b, c, d] = w.vertices();
        let pairs: &[(usize, usize)] = match mode {
            Mode::Deletion => &[(a, b), (b, c), (c, d)],
            Mode::Editing => &[(a, b), (b, c), (c, d), (a, c), (b, d), (a, d)],
        };
        for &(u, v) in pairs {
            let f: PairSet = std::iter::once(Pair::new(u, v)).collect();
            let child = g.apply_modification(&f, mode).expect("pairs of the P4");
            if let Some(rest) = go(&child, mode, budget - 1) {
                return Some(f.symmetric_difference(&rest));
            }
        }
        None
    }
    for k in 0.. {
        if let Some(f) = go(g, mode, k) {
            return (f.len(), f);
        }
    }
    unreachable!()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::canon::canonical_code;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::collections::HashSet;

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

    fn pan() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
    }

    #[test]
    fn solve_examples() {
        let p4 = Graph::path(4);
        let r = solve(&p4, 1, Mode::Deletion);
        assert!(r.decision);
        assert_eq!(r.certificate.unwrap().len(), 1);
        assert!(!solve(&p4, 0, Mode::Deletion).decision);
        let c5 = Graph::cycle(5);
        assert_eq!(solve_min(&c5, Mode::Deletion).k_used, Some(brute_force_min(&c5, Mode::Deletion).unwrap().0));
        assert_eq!(solve_min(&Graph::complete(6), Mode::Deletion).k_used, Some(0));
        assert_eq!(solve_min(&pan(), Mode::Deletion).k_used, Some(1));
        let p7 = Graph::path(7);
        assert_eq!(solve_min(&p7, Mode::Deletion).k_used, Some(brute_force_min(&p7, Mode::Deletion).unwrap().0));
    }

    #[test]
    fn verify_examples() {
        let p4 = Graph::path(4);
        assert!(verify_certificate(&p4, &[(1, 2)].into_iter().collect(), Mode::Deletion).unwrap());
        assert!(!verify_certificate(&p4, &PairSet::new(), Mode::Deletion).unwrap());
        assert!(verify_certificate(&p4, &[(0, 2)].into_iter().collect(), Mode::Deletion).is_err());
        let c5 = Graph::cycle(5);
        for u in 0..5 {
            for v in u + 1..5 {
                let f: PairSet = [(u, v)].into_iter().collect();
                assert!(!verify_certificate(&c5, &f, Mode::Editing).unwrap());
            }
        }
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_min(&Graph::path(4), Mode::Deletion).unwrap().0, 1);
        assert_eq!(brute_force_min(&Graph::path(4), Mode::Editing).unwrap().0, 1);
        assert_eq!(brute_force_min(&pan(), Mode::Deletion).unwrap().0, 1);
        assert!(matches!(brute_force_min(&Graph::path(12), Mode::Deletion), Err(Error::GraphTooLarge { .. })));
    }

    #[test]
    fn oracles_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let n = rng.gen_range(1..=7);
            let p = rng.gen_range(0.2..0.8);
            let g = random_graph(&mut rng, n, p);
            for mode in [Mode::Deletion, Mode::Editing] {
                let (a, fa) = brute_force_min(&g, mode).unwrap();
                let (b, fb) = simple_branching_min(&g, mode);
                assert_eq!(a, b);
                assert!(verify_certificate(&g, &fa, mode).unwrap());
                assert!(verify_certificate(&g, &fb, mode).unwrap());
            }
        }
    }

    #[test]
    fn solver_matches_oracle_on_small_classes() {
        let mut seen = HashSet::new();
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for _ in 0..400 {
            let n = rng.gen_range(4..=7);
            let p = rng.gen_range(0.2..0.8);
            let g = random_graph(&mut rng, n, p);
            if !seen.insert(canonical_code(&g).unwrap()) {
                continue;
            }
            for mode in [Mode::Deletion, Mode::Editing] {
                let r = solve_min(&g, mode);
                assert_eq!(r.k_used, Some(brute_force_min(&g, mode).unwrap().0), "{g:?} {mode}");
                assert_eq!(r.stats.fallback_branchings(), 0, "{g:?} {mode}");
            }
        }
    }

    #[test]
    fn monotone_in_k() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for _ in 0..30 {
            let g = random_graph(&mut rng, 8, 0.5);
            let best = solve_min(&g, Mode::Deletion).k_used.unwrap();
            for k in 0..best + 3 {
                assert_eq!(solve(&g, k, Mode::Deletion).decision, k >= best);
            }
        }
    }

    #[test]
    fn deterministic_across_thread_counts() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let graphs: Vec<Graph> = (0..10).map(|_| random_graph(&mut rng, 10, 0.4)).collect();
        let run = |threads| {
            let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
            pool.install(|| graphs.iter().map(|g| solve_min(g, Mode::Deletion)).collect::<Vec<_>>())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn depth_bounded_by_budget() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        for _ in 0..20 {
            let g = random_graph(&mut rng, 9, 0.5);
            for mode in [Mode::Deletion, Mode::Editing] {
                for k in 0..4 {
                    assert!(solve(&g, k, mode).stats.max_depth <= k);
                }
            }
        }
    }
}
