//! Drive the command-line front end from code: one subcommand, then the shipped scenario file.

use std::path::Path;

fn main() {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = radcomp::cli::run(["radcomp", "mono", "--row", "vi", "--k", "1", "--F", "ppower:2", "--n", "4"], &mut out, &mut err);
    print!("exit {code}: {}", String::from_utf8_lossy(&out));

    let fixture = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/scenarios.ini");
    let mut out = Vec::new();
    let args = ["radcomp".as_ref(), "--seed".as_ref(), "2024".as_ref(), "report".as_ref(), fixture.as_os_str()];
    let code = radcomp::cli::run(args, &mut out, &mut err);
    let text = String::from_utf8_lossy(&out);
    for line in text.lines().filter(|l| l.starts_with("==") || l.starts_with("summary")) {
        println!("{line}");
    }
    println!("report exit {code}");
}
