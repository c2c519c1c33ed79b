//! Command-line front end. [`run`] does all the work and returns what should
//! be printed, so the binary is a thin wrapper and tests need no subprocess.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};

use crate::error::{Error, Result, ValidationError};
use crate::presentation::{parse_with, MatrixPresentation};
use crate::report::{
    to_canonical_json, KGroupsReport, OracleReport, RelationsReport, SpectrumReport, ValidateReport,
};

#[derive(Debug, Parser)]
#[command(
    name = "ck-invariants",
    version,
    about = "Exact K-theory of Cuntz-Krieger algebras from matrix presentations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Emit machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,

    /// Include the groups of the unitization (default).
    #[arg(long, global = true, overrides_with = "no_unital")]
    unital: bool,

    /// Omit the groups of the unitization.
    #[arg(long = "no-unital", global = true, overrides_with = "unital")]
    no_unital: bool,

    /// Slab sizes for the oracle, e.g. `--slabs 4,8,12`.
    #[arg(long, global = true, value_delimiter = ',', value_name = "N1,N2,...")]
    slabs: Option<Vec<usize>>,

    /// Drop duplicate and unused patterns instead of rejecting them.
    #[arg(long = "canonicalize-presentation", global = true)]
    canonicalize: bool,

    /// Largest |X| + |Y| enumerated by `relations`.
    #[arg(long, global = true, default_value_t = 4)]
    size_bound: usize,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// K0 and K1, with witnesses and the K0 presentation.
    Kgroups { input: PathBuf },
    /// Accumulation columns and unitality.
    Spectrum { input: PathBuf },
    /// Enumerate and verify instances of the product relation.
    Relations { input: PathBuf },
    /// Cross-check the engine against finite slabs.
    Oracle { input: PathBuf },
    /// Parse and validate only.
    Validate { input: PathBuf },
}

/// What a CLI invocation prints, and how it exits.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn error(e: &Error) -> Self {
        Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Runs the CLI on `args` (program name first).
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match execute(&cli) {
        Ok((ok, stdout)) => Outcome {
            code: if ok { 0 } else { 3 },
            stdout,
            stderr: if ok {
                String::new()
            } else {
                "error: verification failed\n".into()
            },
        },
        Err(e) => Outcome::error(&e),
    }
}

fn load(path: &Path, canonicalize: bool) -> Result<MatrixPresentation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| ValidationError::Syntax(format!("cannot read {}: {e}", path.display())))?;
    parse_with(&text, canonicalize)
}

/// Returns whether all checks passed, and the rendered report.
fn execute(cli: &Cli) -> Result<(bool, String)> {
    let include_unital = !cli.no_unital;
    let render = |json: String, human: String| if cli.json { json } else { human };
    match &cli.command {
        Command::Kgroups { input } => {
            let r = KGroupsReport::build(&load(input, cli.canonicalize)?, include_unital)?;
            Ok((true, render(to_canonical_json(&r)?, r.human())))
        }
        Command::Spectrum { input } => {
            let r = SpectrumReport::build(&load(input, cli.canonicalize)?)?;
            Ok((true, render(to_canonical_json(&r)?, r.human())))
        }
        Command::Relations { input } => {
            let r = RelationsReport::build(&load(input, cli.canonicalize)?, cli.size_bound)?;
            Ok((r.all_hold, render(to_canonical_json(&r)?, r.human())))
        }
        Command::Oracle { input } => {
            let r = OracleReport::build(&load(input, cli.canonicalize)?, cli.slabs.as_deref())?;
            Ok((r.agrees, render(to_canonical_json(&r)?, r.human())))
        }
        Command::Validate { input } => {
            let r = ValidateReport::build(&load(input, cli.canonicalize)?)?;
            Ok((true, render(to_canonical_json(&r)?, r.human())))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::io::Write;

    fn file(contents: &str) -> tempfile::NamedTempFile {
        let mut f = tempfile::NamedTempFile::new().unwrap();
        f.write_all(contents.as_bytes()).unwrap();
        f
    }

    fn go(args: &[&str], path: &Path) -> Outcome {
        let mut v: Vec<OsString> = vec!["ck-invariants".into()];
        v.extend(args.iter().map(OsString::from));
        v.push(path.into());
        run(v)
    }

    #[test]
    fn kgroups_human() {
        let f = file(
            r#"{"format":"ep","patterns":[{"prefix":[],"period":[1]}],"classmap":{"prefix":[],"period":[0]}}"#,
        );
        let out = go(&["kgroups"], f.path());
        assert_eq!(out.code, 0);
        assert_eq!(out.stdout, "K0 = Z, K1 = 0, K0~ = Z, K1~ = 0\n");
        let out = go(&["kgroups", "--no-unital"], f.path());
        assert_eq!(out.stdout, "K0 = Z, K1 = 0\n");
        let out = go(&["kgroups", "--no-unital", "--unital"], f.path());
        assert_eq!(out.stdout, "K0 = Z, K1 = 0, K0~ = Z, K1~ = 0\n");
    }

    #[test]
    fn exit_codes() {
        let zero = file(r#"{"format":"finite","n":2,"matrix":[[1,1],[0,0]]}"#);
        let out = go(&["validate"], zero.path());
        assert_eq!(out.code, 1);
        assert!(out.stderr.contains("no identically zero rows"));

        let dup = file(
            r#"{"format":"ep","patterns":[{"prefix":[],"period":[1]},{"prefix":[],"period":[1]}],"classmap":{"prefix":[],"period":[0,1]}}"#,
        );
        assert_eq!(go(&["validate"], dup.path()).code, 1);
        assert_eq!(
            go(&["validate", "--canonicalize-presentation"], dup.path()).code,
            0
        );

        let m = 21;
        let patterns: Vec<String> = (0..m)
            .map(|k| {
                let period: Vec<&str> = (0..m).map(|j| if j == k { "1" } else { "0" }).collect();
                format!(r#"{{"prefix":[],"period":[{}]}}"#, period.join(","))
            })
            .collect();
        let classes: Vec<String> = (0..m).map(|k| k.to_string()).collect();
        let many = file(&format!(
            r#"{{"format":"ep","patterns":[{}],"classmap":{{"prefix":[],"period":[{}]}}}}"#,
            patterns.join(","),
            classes.join(",")
        ));
        let out = go(&["kgroups"], many.path());
        assert_eq!(out.code, 2, "{}", out.stderr);

        assert_eq!(
            go(&["kgroups"], Path::new("/nonexistent/input.json")).code,
            1
        );
        assert_eq!(run(["ck-invariants", "bogus"]).code, 1);
        assert_eq!(run(["ck-invariants", "--help"]).code, 0);
    }

    #[test]
    fn oracle_with_slabs() {
        let f = file(r#"{"format":"finite","n":2,"matrix":[[0,1],[1,0]]}"#);
        let out = go(&["oracle", "--slabs", "2,3", "--json"], f.path());
        assert_eq!(out.code, 0, "{}", out.stderr);
        assert!(out.stdout.contains("\"agrees\": true"));
    }
}
