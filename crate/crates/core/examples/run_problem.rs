//! Run a `.gk` problem file and print the text report: `cargo run --example run_problem -- FILE`.

use gradedhom::cli::{run_source, Flags, Format};

fn main() {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/corpus/pass/explicit.gk").to_string());
    let text = std::fs::read_to_string(&path).expect("readable problem file");
    let (out, code) = run_source(&text, &Flags::default(), Format::Text, false);
    print!("{}", out);
    std::process::exit(code);
}
