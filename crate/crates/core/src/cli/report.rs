//! Scenario files: one `[scenario.<id>]` section per run, with a `kind` key naming the
//! subcommand and every other key passed as `--key value`.

use std::fs;
use std::io::Write;

use ini::Ini;
use rayon::prelude::*;

use super::{run, CliError, Globals, Outcome, ReportArgs};

const GLOBAL_KEYS: [&str; 3] = ["seed", "tol", "grid"];

#[derive(Debug, Clone)]
pub struct Scenario {
    pub id: String,
    pub kind: String,
    pub argv: Vec<String>,
}

struct RunResult {
    code: i32,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
}

/// Translate every scenario section into an argument vector, sorted by id.
pub fn load(text: &str, g: &Globals) -> Result<Vec<Scenario>, CliError> {
    let ini = Ini::load_from_str(text).map_err(|e| CliError::Usage(format!("scenario file: {e}")))?;
    let mut out = Vec::new();
    for (name, props) in ini.iter() {
        let Some(name) = name else {
            if props.iter().next().is_some() {
                return Err(CliError::Usage("scenario file: keys outside a section".into()));
            }
            continue;
        };
        let Some(id) = name.strip_prefix("scenario.") else {
            return Err(CliError::Usage(format!("scenario file: section `{name}` is not `scenario.<id>`")));
        };
        let kind = props.get("kind").ok_or_else(|| CliError::Usage(format!("scenario `{id}` has no kind")))?.to_string();
        if kind == "report" {
            return Err(CliError::Usage(format!("scenario `{id}`: reports cannot nest")));
        }
        let mut argv = vec!["radcomp".to_string()];
        for key in GLOBAL_KEYS {
            let value = match props.get(key) {
                Some(v) => v.to_string(),
                None => match key {
                    "seed" => g.seed.to_string(),
                    "tol" => g.tol.to_string(),
                    _ => g.grid.to_string(),
                },
            };
            argv.extend([format!("--{key}"), value]);
        }
        argv.push(kind.clone());
        let mut inputs = Vec::new();
        for (k, v) in props.iter() {
            match k {
                "kind" | "seed" | "tol" | "grid" => {}
                "input" => inputs.extend(v.split('|').map(|s| s.trim().to_string())),
                _ if v == "true" => argv.push(format!("--{k}")),
                _ => argv.push(format!("--{k}={v}")),
            }
        }
        argv.extend(inputs);
        out.push(Scenario { id: id.to_string(), kind, argv });
    }
    out.sort_by(|a, b| a.id.cmp(&b.id));
    if let Some(w) = out.windows(2).find(|w| w[0].id == w[1].id) {
        return Err(CliError::Usage(format!("scenario `{}` appears twice", w[0].id)));
    }
    Ok(out)
}

fn verdict(code: i32) -> &'static str {
    match code {
        0 => "pass",
        1 => "fail",
        _ => "error",
    }
}

pub fn run_file(g: &Globals, a: &ReportArgs, out: &mut dyn Write, err: &mut dyn Write) -> Result<Outcome, CliError> {
    let text = fs::read_to_string(&a.file).map_err(|e| CliError::Usage(format!("{}: {e}", a.file.display())))?;
    let scenarios = load(&text, g)?;
    let results: Vec<RunResult> = scenarios
        .par_iter()
        .map(|s| {
            let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
            let code = run(&s.argv, &mut stdout, &mut stderr);
            RunResult { code, stdout, stderr }
        })
        .collect();
    if let Some(dir) = &a.out_dir {
        fs::create_dir_all(dir)?;
    }
    let mut summary = csv::Writer::from_writer(Vec::new());
    summary.write_record(["id", "kind", "verdict"])?;
    for (s, r) in scenarios.iter().zip(&results) {
        writeln!(out, "== {} kind={} verdict={} ==", s.id, s.kind, verdict(r.code))?;
        out.write_all(&r.stdout)?;
        if r.code == 2 {
            out.write_all(&r.stderr)?;
        }
        if let Some(dir) = &a.out_dir {
            fs::write(dir.join(format!("{}.txt", s.id)), &r.stdout)?;
        }
        summary.write_record([s.id.as_str(), s.kind.as_str(), verdict(r.code)])?;
    }
    let count = |c: i32| results.iter().filter(|r| r.code == c).count();
    let (passed, failed) = (count(0), count(1));
    let errors = results.len() - passed - failed;
    writeln!(out, "summary scenarios={} passed={passed} failed={failed} errors={errors}", results.len())?;
    let summary = summary.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
    if let Some(dir) = &a.out_dir {
        fs::write(dir.join("summary.csv"), summary)?;
    }
    for (s, r) in scenarios.iter().zip(&results).filter(|(_, r)| r.code != 0) {
        writeln!(err, "{}: {}", s.id, String::from_utf8_lossy(&r.stderr).trim_end())?;
    }
    if errors > 0 {
        return Err(CliError::Domain(format!("{errors} scenarios could not run")));
    }
    Ok(Outcome::from_pass(failed == 0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sections_become_sorted_argument_vectors() {
        let text = "[scenario.b]\nkind = forms\ninput = x1 dx1 | x2 dx1\n[scenario.a]\nkind = bounds\nhyp = flat\nn = 3\ngrid = 8\n";
        let g = Globals { seed: 5, tol: 1e-6, grid: 64 };
        let s = load(text, &g).unwrap();
        assert_eq!(s[0].id, "a");
        assert_eq!(s[0].argv, ["radcomp", "--seed", "5", "--tol", "0.000001", "--grid", "8", "bounds", "--hyp=flat", "--n=3"]);
        assert_eq!(s[1].argv[7..], ["forms", "x1 dx1", "x2 dx1"]);
        assert!(load("[other]\nkind = forms\n", &g).is_err());
        assert!(load("[scenario.x]\nkind = report\n", &g).is_err());
    }
}
