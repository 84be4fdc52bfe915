//! Runs the bundled experiment configs through the command-line entry point.
//!
//! `cargo run --example cli_configs` is the same as calling the `busemann`
//! binary once per file in `examples/configs`.

use std::path::Path;

fn main() {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("examples/configs");
    for (sub, file) in [("bary", "bary_tripod.json"), ("w1", "w1_plane.json"), ("probe", "probe_temperedness.json")] {
        let path = dir.join(file);
        println!("== busemann {sub} --config {file}");
        let code = busemann::cli::run(["busemann", sub, "--config", path.to_str().unwrap(), "--format", "csv"]);
        println!("exit {code}");
    }
}
