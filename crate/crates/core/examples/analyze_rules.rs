//! Worst-case branching numbers of rules B2-B5 in both modes.
//!
//! cargo run --release --example analyze_rules [-- --json]

use cograph::analyzer::{Analyzer, RuleFilter};
use cograph::Mode;

fn main() {
    let json = std::env::args().any(|a| a == "--json");
    let analyzer = Analyzer::default();
    for mode in [Mode::Deletion, Mode::Editing] {
        let report = analyzer.full_report(mode, RuleFilter::All);
        if json {
            println!("{}", report.to_json());
        } else {
            println!("{}", report.to_text());
        }
    }
}
