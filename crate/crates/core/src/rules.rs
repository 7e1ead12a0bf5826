//! Detection of the branching rules around a P4 maximising `|P(A)|`.
//!
//! Rule B1 destroys the forbidden subgraphs of P4-sparse graphs; B2-B4
//! restrict the vertices of `P_other(A)`; B5 covers the fourteen local
//! configurations that P4-sparseness would otherwise rule out.

use std::fmt;
use std::path::Path;

use serde::{Serialize, Serializer};

use crate::canon::{canonical_code, CanonicalCode};
use crate::catalog::{default_policy, BranchCatalog, CatalogCache, SubgraphPolicy};
use crate::error::{Error, Result};
use crate::graph::{Graph, Mode, PairSet};
use crate::p4::{choose_p4_max_p, is_cograph, p4_context, P4Context};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    B1,
    B2,
    B3,
    B4,
    /// Case number 1..=14.
    B5(u8),
    /// Plain branching on a single P4, used only when no structural case applies.
    P4,
}

impl RuleId {
    /// Rule family without the B5 case number.
    pub fn family(&self) -> &'static str {
        match self {
            RuleId::B1 => "B1",
            RuleId::B2 => "B2",
            RuleId::B3 => "B3",
            RuleId::B4 => "B4",
            RuleId::B5(_) => "B5",
            RuleId::P4 => "P4",
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RuleId::B5(c) => write!(f, "B5-case-{c}"),
            other => f.write_str(other.family()),
        }
    }
}

impl Serialize for RuleId {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A rule application: the vertex set `x` (ascending) and the catalog of
/// `G[x]`, whose host uses local ids `0..x.len()`.
#[derive(Clone, Debug, PartialEq)]
pub struct RuleMatch {
    pub rule: RuleId,
    pub x: Vec<usize>,
    pub catalog: BranchCatalog,
}

impl RuleMatch {
    /// Catalog options translated to the ids of the graph the rule fired on.
    pub fn options_in_graph(&self) -> Vec<PairSet> {
        self.catalog
            .options
            .iter()
            .map(|f| f.map(|v| self.x[v]))
            .collect()
    }
}

// ---------------------------------------------------------------------------
// Exception catalog

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NamedGraph {
    pub name: String,
    pub graph: Graph,
    code: CanonicalCode,
}

impl NamedGraph {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        let code = canonical_code(&graph).expect("exception graphs are small");
        NamedGraph {
            name: name.into(),
            graph,
            code,
        }
    }
}

/// Six-vertex graphs on which B2 / B4 do not fire in deletion mode.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExceptionCatalog {
    pub b2: Vec<NamedGraph>,
    pub b4: Vec<NamedGraph>,
}

const DEFAULT_EXCEPTIONS: &str = include_str!("../data/exceptions.txt");
const LABELS: &str = "abcdpq";

impl Default for ExceptionCatalog {
    fn default() -> Self {
        ExceptionCatalog::parse(DEFAULT_EXCEPTIONS).expect("bundled exception catalog is valid")
    }
}

impl ExceptionCatalog {
    pub fn empty() -> Self {
        ExceptionCatalog { b2: Vec::new(), b4: Vec::new() }
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
            line: 0,
            msg: format!("{}: {e}", path.display()),
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cat = ExceptionCatalog::empty();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let err = |msg: String| Error::Parse { line, msg };
            let content = raw.split('#').next().unwrap().trim();
            if content.is_empty() {
                continue;
            }
            let (head, body) = content
                .split_once(':')
                .ok_or_else(|| err("expected `<rule> <name>: <edges>`".into()))?;
            let mut head = head.split_whitespace();
            let rule = head.next().ok_or_else(|| err("missing rule".into()))?;
            let name = head.next().ok_or_else(|| err("missing name".into()))?;
            let mut edges = Vec::new();
            for tok in body.split_whitespace() {
                let ids: Vec<usize> = tok.chars().filter_map(|c| LABELS.find(c)).collect();
                if ids.len() != 2 || tok.chars().count() != 2 || ids[0] == ids[1] {
                    return Err(err(format!("bad edge `{tok}` (use two labels from {LABELS})")));
                }
                edges.push((ids[0], ids[1]));
            }
            let graph = Graph::new(6, edges).map_err(|e| err(e.to_string()))?;
            let path_ok = graph.has_edge(0, 1)
                && graph.has_edge(1, 2)
                && graph.has_edge(2, 3)
                && !graph.has_edge(0, 2)
                && !graph.has_edge(0, 3)
                && !graph.has_edge(1, 3);
            if !path_ok {
                return Err(err("a-b-c-d must be an induced path".into()));
            }
            let entry = NamedGraph::new(name, graph);
            match rule.to_ascii_lowercase().as_str() {
                "b2" => cat.b2.push(entry),
                "b4" => cat.b4.push(entry),
                other => return Err(err(format!("unknown rule `{other}` (expected b2 or b4)"))),
            }
        }
        Ok(cat)
    }

    pub fn is_b2_exception(&self, h: &Graph) -> bool {
        let code = canonical_code(h).expect("six vertices");
        self.b2.iter().any(|e| e.code == code)
    }

    pub fn is_b4_exception(&self, h: &Graph) -> bool {
        let code = canonical_code(h).expect("six vertices");
        self.b4.iter().any(|e| e.code == code)
    }
}

// ---------------------------------------------------------------------------
// Forbidden subgraphs of P4-sparse graphs

/// The seven five-vertex graphs with more than one induced P4.
pub fn forbidden_p4_sparse() -> Vec<NamedGraph> {
    let p5 = Graph::path(5);
    let pan = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)]);
    let fork = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (1, 4)]);
    vec![
        NamedGraph::new("P5", p5.clone()),
        NamedGraph::new("pan", pan.clone()),
        NamedGraph::new("kite", fork.complement()),
        NamedGraph::new("C5", Graph::cycle(5)),
        NamedGraph::new("co-P5", p5.complement()),
        NamedGraph::new("fork", fork),
        NamedGraph::new("co-pan", pan.complement()),
    ]
}

fn forbidden_codes() -> &'static [(CanonicalCode, &'static str)] {
    use std::sync::OnceLock;
    static CODES: OnceLock<Vec<(CanonicalCode, &'static str)>> = OnceLock::new();
    CODES.get_or_init(|| {
        forbidden_p4_sparse()
            .into_iter()
            .map(|g| {
                let name: &'static str = Box::leak(g.name.into_boxed_str());
                (g.code, name)
            })
            .collect()
    })
}

/// First 5-subset (lexicographic) inducing a forbidden graph.
pub fn find_forbidden_5set(g: &Graph) -> Option<(Vec<usize>, &'static str)> {
    let n = g.n();
    let mut idx = [0usize, 1, 2, 3, 4];
    if n < 5 {
        return None;
    }
    loop {
        let (h, _) = g.induced_subgraph(idx).unwrap();
        // at least two P4s needs at least 4 edges and at most 6
        let m = h.edge_count();
        if (4..=6).contains(&m) && !is_cograph(&h) {
            let code = canonical_code(&h).unwrap();
            if let Some(&(_, name)) = forbidden_codes().iter().find(|(c, _)| *c == code) {
                return Some((idx.to_vec(), name));
            }
        }
        // next combination
        let mut i = 5;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] < n - 5 + i {
                break;
            }
        }
        idx[i] += 1;
        for j in i + 1..5 {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn is_p4_sparse(g: &Graph) -> bool {
    find_forbidden_5set(g).is_none()
}

// ---------------------------------------------------------------------------
// B5 case table

/// Where a B5 role vertex must lie relative to `A`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RoleClass {
    I,
    T,
    P,
    IorP,
    TorP,
}

#[derive(Clone, Copy, Debug)]
pub struct B5Case {
    pub number: u8,
    pub roles: &'static [(&'static str, RoleClass)],
    /// `(i, j, adjacent)` over role indices; unlisted pairs are free.
    pub constraints: &'static [(usize, usize, bool)],
}

use RoleClass::{IorP, TorP, I, P, T};

pub const B5_CASES: [B5Case; 14] = [
    B5Case { number: 1, roles: &[("u", IorP), ("v", IorP), ("x", T)], constraints: &[(0, 1, true), (0, 2, true), (1, 2, false)] },
    B5Case { number: 2, roles: &[("u", TorP), ("v", TorP), ("x", I)], constraints: &[(0, 1, false), (0, 2, false), (1, 2, true)] },
    B5Case { number: 3, roles: &[("v", IorP), ("x", T), ("y", T)], constraints: &[(0, 1, true), (0, 2, false), (1, 2, false)] },
    B5Case { number: 4, roles: &[("v", TorP), ("x", I), ("y", I)], constraints: &[(0, 1, false), (0, 2, true), (1, 2, true)] },
    B5Case { number: 5, roles: &[("v", P), ("x", T), ("y", T)], constraints: &[(0, 1, false), (0, 2, false)] },
    B5Case { number: 6, roles: &[("v", P), ("x", I), ("y", I)], constraints: &[(0, 1, true), (0, 2, true)] },
    B5Case { number: 7, roles: &[("u", P), ("v", P), ("x", T)], constraints: &[(2, 0, false), (2, 1, false)] },
    B5Case { number: 8, roles: &[("u", P), ("v", P), ("x", I)], constraints: &[(2, 0, true), (2, 1, true)] },
    B5Case { number: 9, roles: &[("v", P), ("x", T), ("y", I)], constraints: &[(0, 1, false), (0, 2, false), (1, 2, true)] },
    B5Case { number: 10, roles: &[("v", P), ("x", I), ("y", T)], constraints: &[(0, 1, true), (0, 2, true), (1, 2, false)] },
    B5Case { number: 11, roles: &[("v", P), ("x", T), ("y", I)], constraints: &[(0, 1, false), (0, 2, true), (1, 2, false)] },
    B5Case { number: 12, roles: &[("v", P), ("x", I), ("y", T)], constraints: &[(0, 1, true), (0, 2, false), (1, 2, true)] },
    B5Case {
        number: 13,
        roles: &[("v", P), ("x", T), ("y", T), ("z", I)],
        constraints: &[(0, 1, true), (0, 2, false), (0, 3, false), (1, 2, true), (1, 3, false), (2, 3, true)],
    },
    B5Case {
        number: 14,
        roles: &[("v", P), ("x", I), ("y", I), ("z", T)],
        constraints: &[(0, 1, false), (0, 2, true), (0, 3, true), (1, 2, false), (1, 3, true), (2, 3, false)],
    },
];

fn class_members(ctx: &P4Context, class: RoleClass) -> Vec<usize> {
    let set = match class {
        RoleClass::I => ctx.independent.clone(),
        RoleClass::T => ctx.total.clone(),
        RoleClass::P => ctx.partial(),
        RoleClass::IorP => ctx.independent.union(&ctx.partial()),
        RoleClass::TorP => ctx.total.union(&ctx.partial()),
    };
    set.iter().collect()
}

fn search_case(g: &Graph, case: &B5Case, members: &[Vec<usize>], chosen: &mut Vec<usize>) -> bool {
    let r = chosen.len();
    if r == case.roles.len() {
        return true;
    }
    for &v in &members[r] {
        if chosen.contains(&v) {
            continue;
        }
        let ok = case.constraints.iter().all(|&(i, j, adj)| {
            let (lo, hi) = if i < j { (i, j) } else { (j, i) };
            if hi != r {
                return true;
            }
            g.has_edge(chosen[lo], v) == adj
        });
        if !ok {
            continue;
        }
        chosen.push(v);
        if search_case(g, case, members, chosen) {
            return true;
        }
        chosen.pop();
    }
    false
}

/// First role assignment (ascending ids, role order) satisfying `case`.
pub fn find_b5_case(g: &Graph, ctx: &P4Context, case: &B5Case) -> Option<Vec<usize>> {
    let members: Vec<Vec<usize>> = case.roles.iter().map(|&(_, c)| class_members(ctx, c)).collect();
    let mut chosen = Vec::with_capacity(case.roles.len());
    search_case(g, case, &members, &mut chosen).then_some(chosen)
}

// ---------------------------------------------------------------------------
// Rule engine

/// Rule detection with a fixed exception catalog and branching policy.
pub struct RuleEngine<'c> {
    pub exceptions: ExceptionCatalog,
    pub editing_policy: SubgraphPolicy,
    cache: &'c CatalogCache,
}

impl Default for RuleEngine<'static> {
    fn default() -> Self {
        RuleEngine::new(ExceptionCatalog::default())
    }
}

impl RuleEngine<'static> {
    pub fn new(exceptions: ExceptionCatalog) -> Self {
        RuleEngine {
            exceptions,
            editing_policy: default_policy(Mode::Editing),
            cache: CatalogCache::global(),
        }
    }
}

impl<'c> RuleEngine<'c> {
    pub fn with_cache(exceptions: ExceptionCatalog, cache: &'c CatalogCache) -> Self {
        RuleEngine {
            exceptions,
            editing_policy: default_policy(Mode::Editing),
            cache,
        }
    }

    pub fn policy(&self, mode: Mode) -> SubgraphPolicy {
        match mode {
            Mode::Deletion => default_policy(Mode::Deletion),
            Mode::Editing => self.editing_policy,
        }
    }

    pub fn cache(&self) -> &CatalogCache {
        self.cache
    }

    fn make_match(&self, g: &Graph, rule: RuleId, x: Vec<usize>, mode: Mode) -> RuleMatch {
        let (h, x) = g.induced_subgraph(x).expect("rule vertices are valid");
        let catalog = self
            .cache
            .catalog(&h, mode, self.policy(mode))
            .expect("rule subgraphs contain a P4");
        RuleMatch { rule, x, catalog }
    }

    fn with_a(ctx: &P4Context, extra: &[usize]) -> Vec<usize> {
        ctx.witness.vertices().iter().chain(extra).copied().collect()
    }

    pub fn match_b1(&self, g: &Graph, mode: Mode) -> Option<RuleMatch> {
        let (x, _) = find_forbidden_5set(g)?;
        Some(self.make_match(g, RuleId::B1, x, mode))
    }

    pub fn match_b2(&self, g: &Graph, ctx: &P4Context, mode: Mode) -> Option<RuleMatch> {
        let partial: Vec<usize> = ctx.partial().iter().collect();
        for p in &ctx.p_other {
            for &q in &partial {
                if q == p {
                    continue;
                }
                let x = Self::with_a(ctx, &[p, q]);
                if mode == Mode::Deletion {
                    let (h, _) = g.induced_subgraph(x.iter().copied()).unwrap();
                    if self.exceptions.is_b2_exception(&h) {
                        continue;
                    }
                }
                return Some(self.make_match(g, RuleId::B2, x, mode));
            }
        }
        None
    }

    pub fn match_b3(&self, g: &Graph, ctx: &P4Context, mode: Mode) -> Option<RuleMatch> {
        for p in &ctx.p_other {
            if let Some(t) = ctx.total.iter().find(|&t| !g.has_edge(p, t)) {
                return Some(self.make_match(g, RuleId::B3, Self::with_a(ctx, &[p, t]), mode));
            }
        }
        None
    }

    pub fn match_b4(&self, g: &Graph, ctx: &P4Context, mode: Mode) -> Option<RuleMatch> {
        for p in &ctx.p_other {
            for i in ctx.independent.iter().filter(|&i| g.has_edge(p, i)) {
                let x = Self::with_a(ctx, &[p, i]);
                if mode == Mode::Deletion {
                    let (h, _) = g.induced_subgraph(x.iter().copied()).unwrap();
                    if self.exceptions.is_b4_exception(&h) {
                        continue;
                    }
                }
                return Some(self.make_match(g, RuleId::B4, x, mode));
            }
        }
        None
    }

    pub fn match_b5(&self, g: &Graph, ctx: &P4Context, mode: Mode) -> Option<RuleMatch> {
        for case in &B5_CASES {
            if let Some(b) = find_b5_case(g, ctx, case) {
                return Some(self.make_match(g, RuleId::B5(case.number), Self::with_a(ctx, &b), mode));
            }
        }
        None
    }

    /// B2, B3, B4, B5 around the P4 maximising `|P(A)|`.
    pub fn find_branching_rule(&self, g: &Graph, mode: Mode) -> Option<RuleMatch> {
        let w = choose_p4_max_p(g).ok()?;
        let ctx = p4_context(g, w).expect("chosen witness is valid");
        self.match_b2(g, &ctx, mode)
            .or_else(|| self.match_b3(g, &ctx, mode))
            .or_else(|| self.match_b4(g, &ctx, mode))
            .or_else(|| self.match_b5(g, &ctx, mode))
    }

    /// Full rule scan: B2-B5, then B1 in deletion mode.
    pub fn find_rule_application(&self, g: &Graph, mode: Mode) -> Option<RuleMatch> {
        if is_cograph(g) {
            return None;
        }
        self.find_branching_rule(g, mode).or_else(|| match mode {
            Mode::Deletion => self.match_b1(g, mode),
            Mode::Editing => None,
        })
    }
}

/// [`RuleEngine::find_rule_application`] with the bundled exceptions.
pub fn find_rule_application(g: &Graph, mode: Mode) -> Option<RuleMatch> {
    RuleEngine::default().find_rule_application(g, mode)
}
