//! Structural recognition: cographs, P4-sparse graphs, spiders and the
//! rule-free classification used at the leaves of the search.
//!
//! The last graph is the bipartite leaf case: one side has two vertices and
//! a single vertex of the other side sees only one of them.
//!
//! cargo run --example recognize

use cograph::decomposition::{classify_rule_free, recognize_spider, spider_graph, SpiderKind};
use cograph::p4::{find_induced_p4, is_cograph};
use cograph::rules::{find_forbidden_5set, is_p4_sparse, RuleEngine};
use cograph::{Graph, Mode};

fn main() {
    let engine = RuleEngine::default();
    let case4 = Graph::from_edges(6, &[(0, 2), (0, 3), (1, 3), (0, 4), (1, 4), (0, 5), (1, 5)]);
    let graphs = [
        ("K4", Graph::complete(4)),
        ("P4", Graph::path(4)),
        ("P5", Graph::path(5)),
        ("C5", Graph::cycle(5)),
        ("thin spider q=3", spider_graph(3, SpiderKind::Thin, 0)),
        ("thick spider q=4, |R|=2", spider_graph(4, SpiderKind::Thick, 2)),
        ("bipartite, one pendant", case4),
    ];
    for (name, g) in graphs {
        println!("{name}: cograph {}, P4-sparse {}", is_cograph(&g), is_p4_sparse(&g));
        if let Some(w) = find_induced_p4(&g) {
            println!("  induced P4 {:?}", w.vertices());
        }
        if let Some((set, shape)) = find_forbidden_5set(&g) {
            println!("  forbidden 5-set {set:?} ({shape})");
        }
        if let Some(p) = recognize_spider(&g) {
            println!("  {} spider: S={:?} K={:?} R={:?}", p.kind, p.s, p.k, p.r);
        }
        for mode in [Mode::Deletion, Mode::Editing] {
            // same order as the search: branching rules, then the rule-free cases
            match engine.find_branching_rule(&g, mode) {
                Some(m) => println!("  {mode}: rule {} on {:?}", m.rule, m.x),
                None => println!("  {mode}: rule-free, class {}", classify_rule_free(&g, mode).tag()),
            }
        }
    }
}
