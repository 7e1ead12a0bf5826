//! Reads a graph and a certificate in the text formats and checks them.
//!
//! cargo run --example verify_certificate -- graph.txt cert.txt [deletion|editing]
//!
//! Without arguments, checks a C5 editing certificate held inline.

use cograph::io::{parse_certificate, parse_graph};
use cograph::search::verify_certificate;
use cograph::Mode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let (graph, cert, mode) = match args.as_slice() {
        [g, c, rest @ ..] => {
            let mode = match rest.first().map(String::as_str) {
                None | Some("deletion") => Mode::Deletion,
                Some("editing") => Mode::Editing,
                Some(other) => return Err(format!("unknown mode {other}").into()),
            };
            (std::fs::read_to_string(g)?, std::fs::read_to_string(c)?, mode)
        }
        _ => (
            "# C5\n5 5\n0 1\n1 2\n2 3\n3 4\n0 4\n".to_owned(),
            "0 1 -\n2 3 -\n".to_owned(),
            Mode::Editing,
        ),
    };
    let g = parse_graph(&graph)?;
    let f = parse_certificate(&cert, &g, mode)?;
    let ok = verify_certificate(&g, &f, mode)?;
    println!("{} pairs, {}", f.len(), if ok { "valid" } else { "invalid" });
    std::process::exit(if ok { 0 } else { 1 });
}
