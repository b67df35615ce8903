//! The `ari` command driven in-process on a problem file.

use std::io::Write;

fn main() {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/data");
    let problem = format!("{dir}/worked_example.json");
    let runs: [&[&str]; 4] = [
        &["classify", &problem],
        &["solve", &problem, "--family"],
        &["bounds", &format!("{dir}/mixed_uncontrollable.json")],
        &["verify", &problem, "--K", &format!("{dir}/worked_example_lhat.json"), "--json"],
    ];
    let mut stdout = std::io::stdout();
    let mut stderr = std::io::stderr();
    for args in runs {
        writeln!(stdout, "$ ari {}", args.join(" ")).unwrap();
        let argv = std::iter::once("ari").chain(args.iter().copied());
        let code = ari_core::cli::run(argv, &mut stdout, &mut stderr);
        writeln!(stdout, "exit {code}\n").unwrap();
    }
}
