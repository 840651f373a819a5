//! Runs a command line invocation in-process, e.g.
//! `cargo run --example run_scenario -- nef-check scenarios/appendix.json --seed 7`.

fn main() {
    let args = std::iter::once("surfclass".to_string()).chain(std::env::args().skip(1));
    let code = surfclass::cli::run(args, &mut std::io::stdout(), &mut std::io::stderr());
    std::process::exit(code);
}
