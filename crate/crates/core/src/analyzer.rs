//! Worst-case branching analysis of rules B2-B5.
//!
//! Every local configuration a rule can fire on is generated as a small graph
//! on `A ∪ B` (vertices 0..4 are the path `a, b, c, d`), its catalog is
//! computed, and the worst branching number is compared with the bound the
//! rule is meant to meet. A configuration is *reachable* when no rule of
//! higher priority already applies to the same `A` inside it; the report
//! keeps both the raw and the reachable worst case.

use std::fmt::Write as _;

use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{branching_number, fmin_whole, CatalogCache, SubgraphPolicy};
use crate::graph::{Graph, Mode};
use crate::p4::{is_cograph, p4_context, P4Witness};
use crate::rules::{ExceptionCatalog, RoleClass, RuleEngine, B5_CASES};

/// Slack allowed above a stated bound (bounds are given to three decimals).
pub const BOUND_TOLERANCE: f64 = 1e-3;

/// Stated worst branching number for a rule family.
pub fn rule_bound(rule: &str, mode: Mode) -> Option<f64> {
    match (mode, rule) {
        (Mode::Deletion, "B2") | (Mode::Deletion, "B4") => Some(2.303),
        (Mode::Deletion, "B3") => Some(2.27),
        (Mode::Deletion, "B5") => Some(2.21),
        (Mode::Editing, "B2") | (Mode::Editing, "B3") | (Mode::Editing, "B4") => Some(4.313),
        (Mode::Editing, "B5") => Some(4.329),
        _ => None,
    }
}

/// Overall bound of the algorithm in each mode.
pub fn mode_bound(mode: Mode) -> f64 {
    match mode {
        Mode::Deletion => 2.303,
        Mode::Editing => 4.329,
    }
}

/// The seven `N(p) ∩ A` classes of a `P_other` vertex up to reversing the path.
pub const P_OTHER_CLASSES: [u8; 7] = [0b0001, 0b0010, 0b0011, 0b0101, 0b1001, 0b0111, 0b1101];

const A_LABELS: [char; 4] = ['a', 'b', 'c', 'd'];

fn fmt_subset(mask: u8) -> String {
    let inner: String = (0..4).filter(|i| mask >> i & 1 == 1).map(|i| A_LABELS[i]).collect();
    format!("{{{inner}}}")
}

/// Reverse the path: a <-> d, b <-> c.
pub fn reverse_subset(mask: u8) -> u8 {
    (0..4).filter(|i| mask >> i & 1 == 1).fold(0, |acc, i| acc | 1 << (3 - i))
}

/// A graph on `A ∪ B` with `a, b, c, d = 0, 1, 2, 3`.
#[derive(Clone, Debug)]
pub struct Configuration {
    pub key: String,
    pub graph: Graph,
}

fn config_graph(attach: &[u8], extra_edges: &[(usize, usize)]) -> Graph {
    let n = 4 + attach.len();
    let mut edges = vec![(0, 1), (1, 2), (2, 3)];
    for (j, &mask) in attach.iter().enumerate() {
        for i in 0..4 {
            if mask >> i & 1 == 1 {
                edges.push((i, 4 + j));
            }
        }
    }
    edges.extend(extra_edges.iter().map(|&(u, v)| (u + 4, v + 4)));
    Graph::from_edges(n, &edges)
}

pub fn b2_configurations() -> Vec<Configuration> {
    let mut out = Vec::new();
    for &p in &P_OTHER_CLASSES {
        for q in 1u8..15 {
            for adj in [false, true] {
                let extra: &[(usize, usize)] = if adj { &[(0, 1)] } else { &[] };
                let key = format!(
                    "N(p)={} N(p')={} p{}p'",
                    fmt_subset(p),
                    fmt_subset(q),
                    if adj { "~" } else { "!~" }
                );
                out.push(Configuration { key, graph: config_graph(&[p, q], extra) });
            }
        }
    }
    out
}

pub fn b3_configurations() -> Vec<Configuration> {
    P_OTHER_CLASSES
        .iter()
        .map(|&p| Configuration {
            key: format!("N(p)={} t complete to A, p!~t", fmt_subset(p)),
            graph: config_graph(&[p, 0b1111], &[]),
        })
        .collect()
}

pub fn b4_configurations() -> Vec<Configuration> {
    P_OTHER_CLASSES
        .iter()
        .map(|&p| Configuration {
            key: format!("N(p)={} i isolated from A, p~i", fmt_subset(p)),
            graph: config_graph(&[p, 0], &[(0, 1)]),
        })
        .collect()
}

fn class_attachments(class: RoleClass) -> Vec<u8> {
    let partial: Vec<u8> = (1u8..15).collect();
    match class {
        RoleClass::I => vec![0],
        RoleClass::T => vec![15],
        RoleClass::P => partial,
        RoleClass::IorP => std::iter::once(0).chain(partial).collect(),
        RoleClass::TorP => partial.into_iter().chain(std::iter::once(15)).collect(),
    }
}

/// All completions of one B5 case: role attachments consistent with their
/// classes and every assignment of the pairs the case leaves free.
pub fn b5_configurations(case_number: u8) -> Vec<Configuration> {
    let case = &B5_CASES[case_number as usize - 1];
    let r = case.roles.len();
    let choices: Vec<Vec<u8>> = case.roles.iter().map(|&(_, c)| class_attachments(c)).collect();
    let fixed: Vec<(usize, usize, bool)> = case.constraints.iter().map(|&(i, j, a)| (i.min(j), i.max(j), a)).collect();
    let free: Vec<(usize, usize)> = (0..r)
        .flat_map(|i| (i + 1..r).map(move |j| (i, j)))
        .filter(|&(i, j)| !fixed.iter().any(|&(x, y, _)| (x, y) == (i, j)))
        .collect();
    let mut out = Vec::new();
    let mut attach = vec![0u8; r];
    let total: usize = choices.iter().map(Vec::len).product();
    for mut idx in 0..total {
        for (slot, ch) in attach.iter_mut().zip(&choices) {
            *slot = ch[idx % ch.len()];
            idx /= ch.len();
        }
        for free_mask in 0u32..(1 << free.len()) {
            let mut edges: Vec<(usize, usize)> = fixed.iter().filter(|f| f.2).map(|&(i, j, _)| (i, j)).collect();
            for (bit, &pair) in free.iter().enumerate() {
                if free_mask >> bit & 1 == 1 {
                    edges.push(pair);
                }
            }
            let mut key = format!("case {case_number}:");
            for (k, &(name, _)) in case.roles.iter().enumerate() {
                let _ = write!(key, " N({name})={}", fmt_subset(attach[k]));
            }
            for &(i, j) in &free {
                let adj = edges.contains(&(i, j));
                let _ = write!(key, " {}{}{}", case.roles[i].0, if adj { "~" } else { "!~" }, case.roles[j].0);
            }
            out.push(Configuration { key, graph: config_graph(&attach, &edges) });
        }
    }
    out
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct ConfigurationRow {
    pub key: String,
    pub vertices: usize,
    pub chosen_size: usize,
    pub vector: Vec<usize>,
    pub number: f64,
    /// No higher-priority rule applies to the same `A` inside the configuration.
    pub reachable: bool,
    /// Excluded as an exception graph (never branched on).
    pub exception: bool,
    pub exceeds_bound: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Worst {
    pub key: String,
    pub vector: Vec<usize>,
    pub number: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct RuleAnalysisReport {
    pub rule: String,
    pub mode: Mode,
    pub policy: SubgraphPolicy,
    pub bound: Option<f64>,
    pub configurations: Vec<ConfigurationRow>,
    /// Worst over every non-exception configuration.
    pub raw_worst: Option<Worst>,
    /// Worst over reachable configurations; this is what the bound gates.
    pub worst: Option<Worst>,
    pub passes: bool,
}

fn worst_of<'a>(rows: impl Iterator<Item = &'a ConfigurationRow>) -> Option<Worst> {
    let mut best: Option<&ConfigurationRow> = None;
    for row in rows {
        // first maximum in enumeration order
        if best.is_none_or(|b| row.number > b.number) {
            best = Some(row);
        }
    }
    best.map(|r| Worst { key: r.key.clone(), vector: r.vector.clone(), number: r.number })
}

/// Analysis settings: the branching policy and the exception catalog.
pub struct Analyzer {
    pub exceptions: ExceptionCatalog,
    cache: CatalogCache,
}

impl Default for Analyzer {
    fn default() -> Self {
        Analyzer::new(ExceptionCatalog::default())
    }
}

impl Analyzer {
    pub fn new(exceptions: ExceptionCatalog) -> Self {
        Analyzer { exceptions, cache: CatalogCache::new() }
    }

    fn engine(&self, policy: SubgraphPolicy) -> RuleEngine<'_> {
        let mut e = RuleEngine::with_cache(self.exceptions.clone(), &self.cache);
        e.editing_policy = policy;
        e
    }

    /// Whether a rule earlier than `rule` (B5 cases count individually) fires
    /// on the same `A` inside the configuration.
    fn preempted(&self, engine: &RuleEngine<'_>, rule: &str, case: u8, g: &Graph, mode: Mode) -> bool {
        let ctx = p4_context(g, P4Witness::new(0, 1, 2, 3)).expect("configurations contain the path on A");
        let order = match rule {
            "B2" => 0,
            "B3" => 1,
            "B4" => 2,
            _ => 3,
        };
        (order > 0 && engine.match_b2(g, &ctx, mode).is_some())
            || (order > 1 && engine.match_b3(g, &ctx, mode).is_some())
            || (order > 2 && engine.match_b4(g, &ctx, mode).is_some())
            || (order > 2
                && B5_CASES[..case as usize - 1]
                    .iter()
                    .any(|c| crate::rules::find_b5_case(g, &ctx, c).is_some()))
    }

    fn is_exception(&self, rule: &str, g: &Graph, mode: Mode) -> bool {
        mode == Mode::Deletion
            && match rule {
                "B2" => self.exceptions.is_b2_exception(g),
                "B4" => self.exceptions.is_b4_exception(g),
                _ => false,
            }
    }

    fn analyze(&self, rule: &str, configs: Vec<(u8, Configuration)>, mode: Mode, policy: SubgraphPolicy) -> RuleAnalysisReport {
        let bound = rule_bound(rule, mode);
        let engine = self.engine(policy);
        let rows: Vec<ConfigurationRow> = configs
            .into_par_iter()
            .map(|(case, c)| {
                let cat = self
                    .cache
                    .catalog(&c.graph, mode, if mode == Mode::Deletion { SubgraphPolicy::Minimized } else { policy })
                    .expect("configurations contain an induced P4");
                for f in &cat.options {
                    let h = c.graph.apply_modification(f, mode).expect("options are valid");
                    let (sub, _) = h.induced_subgraph(cat.chosen_subgraph.iter().copied()).unwrap();
                    assert!(is_cograph(&sub), "option {f} of {} leaves a P4", c.key);
                }
                let exception = self.is_exception(rule, &c.graph, mode);
                let reachable = !exception && !self.preempted(&engine, rule, case, &c.graph, mode);
                let exceeds_bound = !exception && bound.is_some_and(|b| cat.number > b + BOUND_TOLERANCE);
                ConfigurationRow {
                    key: c.key,
                    vertices: c.graph.n(),
                    chosen_size: cat.chosen_subgraph.len(),
                    vector: cat.vector,
                    number: cat.number,
                    reachable,
                    exception,
                    exceeds_bound: exceeds_bound && reachable,
                }
            })
            .collect();
        let raw_worst = worst_of(rows.iter().filter(|r| !r.exception));
        let worst = worst_of(rows.iter().filter(|r| r.reachable));
        let passes = match (bound, &worst) {
            (Some(b), Some(w)) => w.number <= b + BOUND_TOLERANCE,
            _ => true,
        };
        RuleAnalysisReport {
            rule: rule.to_string(),
            mode,
            policy: if mode == Mode::Deletion { SubgraphPolicy::Minimized } else { policy },
            bound,
            configurations: rows,
            raw_worst,
            worst,
            passes,
        }
    }

    pub fn analyze_b2(&self, mode: Mode, policy: SubgraphPolicy) -> RuleAnalysisReport {
        let configs = b2_configurations().into_iter().map(|c| (0, c)).collect();
        self.analyze("B2", configs, mode, policy)
    }

    pub fn analyze_b3(&self, mode: Mode, policy: SubgraphPolicy) -> RuleAnalysisReport {
        let configs = b3_configurations().into_iter().map(|c| (0, c)).collect();
        self.analyze("B3", configs, mode, policy)
    }

    pub fn analyze_b4(&self, mode: Mode, policy: SubgraphPolicy) -> RuleAnalysisReport {
        let configs = b4_configurations().into_iter().map(|c| (0, c)).collect();
        self.analyze("B4", configs, mode, policy)
    }

    pub fn analyze_b3_b4(&self, mode: Mode, policy: SubgraphPolicy) -> (RuleAnalysisReport, RuleAnalysisReport) {
        (self.analyze_b3(mode, policy), self.analyze_b4(mode, policy))
    }

    pub fn analyze_b5(&self, mode: Mode, policy: SubgraphPolicy) -> RuleAnalysisReport {
        let configs = (1..=14u8)
            .flat_map(|case| b5_configurations(case).into_iter().map(move |c| (case, c)))
            .collect();
        self.analyze("B5", configs, mode, policy)
    }

    pub fn analyze_rule(&self, rule: RuleFilter, mode: Mode, policy: SubgraphPolicy) -> Vec<RuleAnalysisReport> {
        let mut out = Vec::new();
        if rule.includes("B2") {
            out.push(self.analyze_b2(mode, policy));
        }
        if rule.includes("B3") {
            out.push(self.analyze_b3(mode, policy));
        }
        if rule.includes("B4") {
            out.push(self.analyze_b4(mode, policy));
        }
        if rule.includes("B5") {
            out.push(self.analyze_b5(mode, policy));
        }
        out
    }

    pub fn full_report(&self, mode: Mode, filter: RuleFilter) -> FullReport {
        let policy = crate::catalog::default_policy(mode);
        let rules = self.analyze_rule(filter, mode, policy);
        let alternative = (mode == Mode::Editing).then(|| {
            let other = match policy {
                SubgraphPolicy::Minimized => SubgraphPolicy::Whole,
                SubgraphPolicy::Whole => SubgraphPolicy::Minimized,
            };
            let reports = self.analyze_rule(filter, mode, other);
            PolicySummary {
                policy: other,
                passes: reports.iter().all(|r| r.passes),
                worst: reports
                    .iter()
                    .map(|r| (r.rule.clone(), r.worst.as_ref().map_or(0.0, |w| w.number)))
                    .collect(),
            }
        });
        let pan = fmin_whole(&pan_graph(), Mode::Deletion).expect("pan has a P4");
        let baseline = Baseline {
            description: "pan, all minimal deletion sets".to_string(),
            vector: pan.vector.clone(),
            number: branching_number(&pan.vector).expect("nonempty"),
        };
        let aggregate = rules
            .iter()
            .filter_map(|r| r.worst.as_ref().map(|w| (r.rule.clone(), w.clone())))
            .max_by(|a, b| a.1.number.total_cmp(&b.1.number))
            .map(|(rule, w)| AggregateWorst { rule, worst: w });
        let passes = rules.iter().all(|r| r.passes);
        FullReport {
            mode,
            policy,
            bound: mode_bound(mode),
            rules,
            aggregate,
            baseline,
            alternative_policy: alternative,
            passes,
        }
    }
}

pub fn pan_graph() -> Graph {
    Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (0, 4)])
}

/// Which rules to analyze.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RuleFilter {
    All,
    Only(&'static str),
}

impl RuleFilter {
    pub fn parse(s: &str) -> Option<RuleFilter> {
        match s.to_ascii_uppercase().as_str() {
            "ALL" => Some(RuleFilter::All),
            "B2" => Some(RuleFilter::Only("B2")),
            "B3" => Some(RuleFilter::Only("B3")),
            "B4" => Some(RuleFilter::Only("B4")),
            "B5" => Some(RuleFilter::Only("B5")),
            _ => None,
        }
    }

    fn includes(&self, rule: &str) -> bool {
        match self {
            RuleFilter::All => true,
            RuleFilter::Only(r) => *r == rule,
        }
    }
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct Baseline {
    pub description: String,
    pub vector: Vec<usize>,
    pub number: f64,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AggregateWorst {
    pub rule: String,
    pub worst: Worst,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct PolicySummary {
    pub policy: SubgraphPolicy,
    pub passes: bool,
    pub worst: Vec<(String, f64)>,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct FullReport {
    pub mode: Mode,
    pub policy: SubgraphPolicy,
    pub bound: f64,
    pub rules: Vec<RuleAnalysisReport>,
    pub aggregate: Option<AggregateWorst>,
    pub baseline: Baseline,
    /// Editing only: the same analysis under the other subgraph policy.
    pub alternative_policy: Option<PolicySummary>,
    pub passes: bool,
}

fn fmt_vector(v: &[usize]) -> String {
    let parts: Vec<String> = v.iter().map(usize::to_string).collect();
    format!("({})", parts.join(","))
}

impl FullReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// Summary table plus every configuration that breaks its bound.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "mode: {}  policy: {:?}", self.mode, self.policy);
        let _ = writeln!(s, "{:<5} {:>7} {:>9} {:>10} {:>10} {:>8}  worst vector / configuration", "rule", "configs", "reachable", "raw worst", "worst", "bound");
        for r in &self.rules {
            let reachable = r.configurations.iter().filter(|c| c.reachable).count();
            let raw = r.raw_worst.as_ref().map_or(0.0, |w| w.number);
            let (worst, vec, key) = r
                .worst
                .as_ref()
                .map_or((0.0, String::new(), String::new()), |w| (w.number, fmt_vector(&w.vector), w.key.clone()));
            let bound = r.bound.map_or("-".to_string(), |b| format!("{b:.3}"));
            let _ = writeln!(
                s,
                "{:<5} {:>7} {:>9} {:>10.4} {:>10.4} {:>8}  {} {} [{}]",
                r.rule,
                r.configurations.len(),
                reachable,
                raw,
                worst,
                bound,
                vec,
                key,
                if r.passes { "ok" } else { "EXCEEDS" }
            );
            for c in r.configurations.iter().filter(|c| c.exceeds_bound) {
                let _ = writeln!(s, "      exceeds: {} {} -> {:.4}", c.key, fmt_vector(&c.vector), c.number);
            }
        }
        if let Some(a) = &self.aggregate {
            let _ = writeln!(s, "aggregate worst: {:.4} ({}, {}) bound {:.3}", a.worst.number, a.rule, fmt_vector(&a.worst.vector), self.bound);
        }
        let _ = writeln!(s, "baseline: {} {} -> {:.4}", self.baseline.description, fmt_vector(&self.baseline.vector), self.baseline.number);
        if let Some(alt) = &self.alternative_policy {
            let parts: Vec<String> = alt.worst.iter().map(|(r, w)| format!("{r} {w:.4}")).collect();
            let _ = writeln!(s, "alternative policy {:?}: {} [{}]", alt.policy, parts.join(", "), if alt.passes { "ok" } else { "exceeds" });
        }
        let _ = writeln!(s, "result: {}", if self.passes { "PASS" } else { "FAIL" });
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn is_p_mid(mask: u8) -> bool {
        mask == 0b0110
    }

    #[test]
    fn p_other_classes_are_the_reversal_orbits() {
        let orbit = |m: u8| m.min(reverse_subset(m));
        let all: BTreeSet<u8> = (1u8..15).filter(|&m| !is_p_mid(m)).map(orbit).collect();
        let listed: BTreeSet<u8> = P_OTHER_CLASSES.iter().map(|&m| orbit(m)).collect();
        assert_eq!(all.len(), 7);
        assert_eq!(all, listed);
        assert!(!P_OTHER_CLASSES.iter().any(|&m| is_p_mid(m)));
    }

    #[test]
    fn configuration_counts() {
        assert_eq!(b2_configurations().len(), 7 * 14 * 2);
        assert_eq!(b3_configurations().len(), 7);
        assert_eq!(b4_configurations().len(), 7);
        // case 1: u, v in I or P (15 each), x in T, no free pairs
        assert_eq!(b5_configurations(1).len(), 15 * 15);
        // case 5: v in P, x, y in T, xy free
        assert_eq!(b5_configurations(5).len(), 14 * 2);
        assert_eq!(b5_configurations(13).len(), 14);
    }

    #[test]
    fn b5_configurations_satisfy_their_case() {
        for case in 1..=14u8 {
            for c in b5_configurations(case) {
                let ctx = p4_context(&c.graph, P4Witness::new(0, 1, 2, 3)).unwrap();
                assert!(
                    crate::rules::find_b5_case(&c.graph, &ctx, &B5_CASES[case as usize - 1]).is_some(),
                    "{}",
                    c.key
                );
            }
        }
    }

    #[test]
    fn b2_deletion_worst_vector() {
        let r = Analyzer::default().analyze_b2(Mode::Deletion, SubgraphPolicy::Minimized);
        let w = r.worst.unwrap();
        assert_eq!(w.vector, vec![1, 2, 2, 2]);
        assert!(r.passes);
    }

    #[test]
    fn baseline_is_pan() {
        let pan = fmin_whole(&pan_graph(), Mode::Deletion).unwrap();
        assert_eq!(pan.vector, vec![1, 2, 2, 2, 2]);
    }

    #[test]
    fn rule_filter_parse() {
        assert_eq!(RuleFilter::parse("b5"), Some(RuleFilter::Only("B5")));
        assert_eq!(RuleFilter::parse("all"), Some(RuleFilter::All));
        assert_eq!(RuleFilter::parse("B7"), None);
    }
}
