//! The `cograph` command line: solve, verify, analyze, recognize, random.
//!
//! Exit status: 0 for yes / valid / within bounds, 1 for no / invalid /
//! bound exceeded, 2 for usage or input errors.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::analyzer::{Analyzer, RuleFilter};
use crate::decomposition::{classify_rule_free, recognize_spider};
use crate::graph::{Graph, Mode};
use crate::io::{parse_certificate, parse_graph, write_certificate, write_graph};
use crate::p4::is_cograph;
use crate::rules::{is_p4_sparse, ExceptionCatalog, RuleEngine};
use crate::search::{verify_certificate, SolveResult, Solver};

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "cograph", version, about = "Exact cograph deletion and editing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// deletion or editing
    #[arg(long, default_value = "deletion")]
    pub mode: Mode,
    /// Print JSON instead of text
    #[arg(long)]
    pub json: bool,
    /// Exception graph catalog replacing the bundled one
    #[arg(long, value_name = "PATH")]
    pub exceptions: Option<PathBuf>,
    /// Worker threads (0 = one per core)
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Decide (with --k) or minimise the modification cost of a graph file
    Solve {
        /// Graph file
        path: PathBuf,
        /// Budget; without it the minimum is computed
        #[arg(long)]
        k: Option<usize>,
        #[command(flatten)]
        common: Common,
    },
    /// Check that a certificate turns the graph into a cograph
    Verify {
        /// Graph file
        path: PathBuf,
        /// Certificate file, one pair per line
        certificate: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Worst-case branching numbers of the rules
    Analyze {
        /// all, B2, B3, B4 or B5
        #[arg(long, default_value = "all", value_parser = parse_rule_filter)]
        rule: RuleFilter,
        #[command(flatten)]
        common: Common,
    },
    /// Structural report: cograph, P4-sparse, spider, rule-free class
    Recognize {
        /// Graph file
        path: PathBuf,
        #[command(flatten)]
        common: Common,
    },
    /// Print a G(n, p) random graph file
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn parse_rule_filter(s: &str) -> Result<RuleFilter, String> {
    RuleFilter::parse(s).ok_or_else(|| format!("unknown rule `{s}` (expected all, B2, B3, B4 or B5)"))
}

/// Runs the command line and returns the exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            if e.use_stderr() {
                let _ = write!(err, "{}", e.render());
                return EXIT_INPUT;
            }
            let _ = write!(out, "{}", e.render());
            return EXIT_YES;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(msg) => {
            let _ = writeln!(err, "error: {msg}");
            EXIT_INPUT
        }
    }
}

fn read_graph(path: &Path) -> Result<Graph, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_graph(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_exceptions(common: &Common) -> Result<ExceptionCatalog, String> {
    match &common.exceptions {
        Some(p) => ExceptionCatalog::load(p).map_err(|e| format!("{}: {e}", p.display())),
        None => Ok(ExceptionCatalog::default()),
    }
}

fn set_threads(n: usize) {
    if n > 0 {
        // Only the first call can configure the global pool.
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
}

fn w(out: &mut dyn Write, s: String) -> Result<(), String> {
    out.write_all(s.as_bytes()).map_err(|e| e.to_string())
}

fn execute(command: Command, out: &mut dyn Write) -> Result<i32, String> {
    match command {
        Command::Solve { path, k, common } => {
            set_threads(common.threads);
            let g = read_graph(&path)?;
            let engine = RuleEngine::new(load_exceptions(&common)?);
            let solver = Solver::new(&engine, common.mode);
            let r = match k {
                Some(k) => solver.solve(&g, k),
                None => solver.solve_min(&g),
            };
            w(out, render_solve(&g, &r, common.json))?;
            Ok(if r.decision { EXIT_YES } else { EXIT_NO })
        }
        Command::Verify { path, certificate, common } => {
            let g = read_graph(&path)?;
            let text = std::fs::read_to_string(&certificate).map_err(|e| format!("{}: {e}", certificate.display()))?;
            let f = parse_certificate(&text, &g, common.mode).map_err(|e| format!("{}: {e}", certificate.display()))?;
            let valid = verify_certificate(&g, &f, common.mode).map_err(|e| e.to_string())?;
            let s = if common.json {
                format!("{}\n", json!({ "mode": common.mode, "size": f.len(), "valid": valid }))
            } else {
                format!("{}: {} pairs, {}\n", common.mode, f.len(), if valid { "valid" } else { "invalid" })
            };
            w(out, s)?;
            Ok(if valid { EXIT_YES } else { EXIT_NO })
        }
        Command::Analyze { rule, common } => {
            set_threads(common.threads);
            let analyzer = Analyzer::new(load_exceptions(&common)?);
            let report = analyzer.full_report(common.mode, rule);
            w(out, if common.json { report.to_json() + "\n" } else { report.to_text() })?;
            Ok(if report.passes { EXIT_YES } else { EXIT_NO })
        }
        Command::Recognize { path, common } => {
            let g = read_graph(&path)?;
            let engine = RuleEngine::new(load_exceptions(&common)?);
            w(out, render_recognize(&g, &engine, common.json))?;
            Ok(EXIT_YES)
        }
        Command::Random { n, p, seed } => {
            if !(0.0..=1.0).contains(&p) {
                return Err(format!("edge probability {p} is outside [0, 1]"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut edges = Vec::new();
            for u in 0..n {
                for v in u + 1..n {
                    if rng.gen_bool(p) {
                        edges.push((u, v));
                    }
                }
            }
            let g = Graph::new(n, edges).map_err(|e| e.to_string())?;
            w(out, format!("# G({n}, {p}) seed {seed}\n{}", write_graph(&g)))?;
            Ok(EXIT_YES)
        }
    }
}

pub fn render_solve(g: &Graph, r: &SolveResult, as_json: bool) -> String {
    if as_json {
        let cert = r.certificate.as_ref().map(|f| {
            f.iter()
                .map(|p| match r.mode {
                    Mode::Deletion => json!([p.u(), p.v()]),
                    Mode::Editing => json!([p.u(), p.v(), if g.has_edge(p.u(), p.v()) { "-" } else { "+" }]),
                })
                .collect::<Vec<_>>()
        });
        let v = json!({
            "mode": r.mode,
            "k": r.k,
            "decision": if r.decision { "yes" } else { "no" },
            "k_used": r.k_used,
            "certificate": cert,
            "stats": r.stats,
        });
        return serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    }
    let mut s = String::new();
    s += &format!("mode: {}\n", r.mode);
    if let Some(k) = r.k {
        s += &format!("k: {k}\n");
    }
    s += &format!("decision: {}\n", if r.decision { "yes" } else { "no" });
    if let (Some(k), Some(cert)) = (r.k_used, &r.certificate) {
        s += &format!("k_used: {k}\ncertificate:\n");
        s += &write_certificate(g, cert, r.mode);
    }
    s += &format!("nodes: {}\nmax_depth: {}\n", r.stats.nodes, r.stats.max_depth);
    for (rule, c) in &r.stats.rule_fires {
        s += &format!("rule {rule}: {c}\n");
    }
    for (tag, c) in &r.stats.base_cases {
        s += &format!("base {tag}: {c}\n");
    }
    s
}

pub fn render_recognize(g: &Graph, engine: &RuleEngine<'_>, as_json: bool) -> String {
    let yes = |b: bool| if b { "yes" } else { "no" };
    let cograph = is_cograph(g);
    let sparse = is_p4_sparse(g);
    let spider = recognize_spider(g);
    let mut per_mode = Vec::new();
    for mode in [Mode::Deletion, Mode::Editing] {
        let rule = if cograph { None } else { engine.find_branching_rule(g, mode) };
        let class = classify_rule_free(g, mode);
        per_mode.push((mode, rule.map(|m| m.rule.to_string()), class));
    }
    if as_json {
        let modes: Vec<_> = per_mode
            .iter()
            .map(|(mode, rule, class)| json!({ "mode": mode, "rule": rule, "class": class.tag() }))
            .collect();
        let v = json!({
            "n": g.n(),
            "m": g.edge_count(),
            "cograph": cograph,
            "p4_sparse": sparse,
            "spider": spider,
            "modes": modes,
        });
        return serde_json::to_string_pretty(&v).expect("serializable") + "\n";
    }
    let mut s = format!("cograph: {}; P4-sparse: {}\n", yes(cograph), yes(sparse));
    match &spider {
        Some(p) => {
            s += &format!("spider: {} q={} S={:?} K={:?} R={:?}\n", p.kind, p.q(), p.s, p.k, p.r);
            let legs: Vec<String> = p.legs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
            s += &format!("legs: {}\n", legs.join(" "));
        }
        None => s += "spider: no\n",
    }
    for (mode, rule, class) in per_mode {
        match rule {
            Some(r) => s += &format!("{mode}: rule {r} applies\n"),
            None => s += &format!("{mode}: no branching rule applies; class {}\n", class.tag()),
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::fs;

    fn run_capture(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let code = run(std::iter::once("cograph").chain(args.iter().copied()), &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    fn write(dir: &tempfile::TempDir, name: &str, text: &str) -> String {
        let p = dir.path().join(name);
        fs::write(&p, text).unwrap();
        p.to_str().unwrap().to_string()
    }

    #[test]
    fn solve_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let p4 = write(&dir, "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
        let (code, out, _) = run_capture(&["solve", &p4, "--k", "1"]);
        assert_eq!(code, 0);
        assert!(out.contains("decision: yes") && out.contains("k_used: 1"));
        assert_eq!(run_capture(&["solve", &p4, "--k", "0"]).0, 1);
        let bad = write(&dir, "bad.txt", "4 3\n0 1\n1 2\n");
        let (code, _, err) = run_capture(&["solve", &bad]);
        assert_eq!(code, 2);
        assert!(err.contains("line 1"), "{err}");
        assert_eq!(run_capture(&["solve", "/nonexistent/file"]).0, 2);
    }

    #[test]
    fn solve_json_and_editing() {
        let dir = tempfile::tempdir().unwrap();
        let c5 = write(&dir, "c5.txt", "5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n");
        let (code, out, _) = run_capture(&["solve", &c5, "--mode", "editing", "--json"]);
        assert_eq!(code, 0);
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        let g = parse_graph(&fs::read_to_string(&c5).unwrap()).unwrap();
        let oracle = crate::search::brute_force_min(&g, Mode::Editing).unwrap().0;
        assert_eq!(v["k_used"], json!(oracle));
        assert_eq!(v["decision"], json!("yes"));
    }

    #[test]
    fn verify_exit_codes() {
        let dir = tempfile::tempdir().unwrap();
        let p4 = write(&dir, "p4.txt", "4 3\n0 1\n1 2\n2 3\n");
        let bc = write(&dir, "bc.txt", "1 2\n");
        let empty = write(&dir, "empty.txt", "# nothing\n");
        let bad = write(&dir, "bad.txt", "0 2\n");
        assert_eq!(run_capture(&["verify", &p4, &bc]).0, 0);
        assert_eq!(run_capture(&["verify", &p4, &empty]).0, 1);
        assert_eq!(run_capture(&["verify", &p4, &bad]).0, 2);
        let pan = write(&dir, "pan.txt", "5 5\n0 1\n1 2\n2 3\n0 3\n0 4\n");
        let e1 = write(&dir, "e1.txt", "0 4\n");
        assert_eq!(run_capture(&["verify", &pan, &e1]).0, 0);
    }

    #[test]
    fn recognize_output() {
        let dir = tempfile::tempdir().unwrap();
        let k5 = write(&dir, "k5.txt", &write_graph(&Graph::complete(5)));
        assert!(run_capture(&["recognize", &k5]).1.starts_with("cograph: yes"));
        let p5 = write(&dir, "p5.txt", &write_graph(&Graph::path(5)));
        assert!(run_capture(&["recognize", &p5]).1.starts_with("cograph: no; P4-sparse: no"));
        let spider = crate::decomposition::spider_graph(3, crate::decomposition::SpiderKind::Thin, 0);
        let sp = write(&dir, "sp.txt", &write_graph(&spider));
        assert!(run_capture(&["recognize", &sp]).1.contains("spider: thin q=3"));
    }

    #[test]
    fn usage_errors() {
        assert_eq!(run_capture(&["analyze", "--rule", "B9"]).0, 2);
        assert_eq!(run_capture(&["solve"]).0, 2);
        assert_eq!(run_capture(&["solve", "x", "--mode", "sideways"]).0, 2);
        assert_eq!(run_capture(&["--help"]).0, 0);
    }

    #[test]
    fn random_is_seeded() {
        let a = run_capture(&["random", "--n", "9", "--seed", "4"]).1;
        let b = run_capture(&["random", "--n", "9", "--seed", "4"]).1;
        assert_eq!(a, b);
        assert_eq!(parse_graph(&a).unwrap().n(), 9);
        assert_eq!(run_capture(&["random", "--n", "3", "--p", "2"]).0, 2);
    }
}
