//! Command-line front end. [`run_cli`] does all the work and returns what
//! should be printed, so tests can drive it without spawning a process.

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use crate::chain::{cone, GradedMap, Ring};
use crate::error::{Error, Result};
use crate::report::{self, exit_code, parse_batch, KnotInput, Options, Report, SCHEMA};
use crate::selftest::{self, Suite};

#[derive(Debug, Parser)]
#[command(
    name = "isharp",
    version,
    about = "Instanton homology of L-space knots from Alexander polynomials"
)]
pub struct Cli {
    /// Coefficient of d1+ (a nonzero rational such as 3 or -2/5).
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub c_plus: String,
    /// Coefficient of d1-.
    #[arg(long, global = true, default_value = "1", allow_hyphen_values = true)]
    pub c_minus: String,
    /// Emit JSON instead of a table.
    #[arg(long, global = true)]
    pub json: bool,
    /// Seed for the self-test suites.
    #[arg(long, global = true, default_value_t = 42)]
    pub seed: u64,
    /// Cases per self-test suite (each suite has its own default).
    #[arg(long, global = true)]
    pub cases: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Torus knot T(p, q).
    Torus { p: i64, q: i64 },
    /// Knot given by its Alexander polynomial, e.g. "t - 1 + t^-1".
    Alexander {
        #[arg(allow_hyphen_values = true)]
        polynomial: String,
    },
    /// Staircase exponents 0 = n_0 < n_1 < ... < n_k.
    Staircase {
        #[arg(required = true)]
        exponents: Vec<i64>,
    },
    /// One input per line; `#` starts a comment.
    Batch { file: PathBuf },
    /// Seeded property suites.
    Selftest {
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
    /// Cone of a graded map read from a JSON file.
    Cone {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = RingArg::Rational)]
        ring: RingArg,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum RingArg {
    Rational,
    Integer,
    F2,
}

impl From<RingArg> for Ring {
    fn from(r: RingArg) -> Self {
        match r {
            RingArg::Rational => Ring::Rational,
            RingArg::Integer => Ring::Integer,
            RingArg::F2 => Ring::F2,
        }
    }
}

#[derive(Debug, Default, Clone, PartialEq, Eq)]
pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }
}

pub fn run_cli<I, T>(args: I) -> Output
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Output {
                    code: 1,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Output::ok(text)
            };
        }
    };
    let opts = Options {
        c_plus: cli.c_plus.clone(),
        c_minus: cli.c_minus.clone(),
    };
    let single = |input: KnotInput| single_knot(&input, &opts, cli.json);
    match cli.command {
        Command::Torus { p, q } => single(KnotInput::Torus { p, q }),
        Command::Alexander { polynomial } => single(KnotInput::Alexander { polynomial }),
        Command::Staircase { exponents } => single(KnotInput::Staircase { exponents }),
        Command::Batch { file } => batch(&file, &opts, cli.json),
        Command::Selftest { suite } => run_selftest(suite, cli.seed, cli.cases, cli.json),
        Command::Cone { file, ring } => cone_file(&file, ring.into(), cli.json),
    }
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("plain data serializes");
    s.push('\n');
    s
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::Parse { .. } => "parse",
        Error::NotLSpaceForm { .. } => "not_lspace_form",
        _ => "invalid_input",
    }
}

fn error_json(e: &Error) -> serde_json::Value {
    let mut v = json!({ "kind": error_kind(e), "message": e.to_string(), "exit_code": exit_code(e) });
    if let Error::Parse { column, .. } = e {
        v["column"] = json!(column);
    }
    v
}

/// Human diagnostic; parse errors in polynomial text get a caret under the column.
fn describe(e: &Error, input: &KnotInput) -> String {
    let mut s = format!("error: {e}\n");
    if let (Error::Parse { column, .. }, KnotInput::Alexander { polynomial }) = (e, input) {
        if *column > 0 {
            s.push_str(&format!("  {polynomial}\n  {}^\n", " ".repeat(column - 1)));
        }
    }
    s
}

fn single_knot(input: &KnotInput, opts: &Options, as_json: bool) -> Output {
    match report::run(input, opts) {
        Ok(r) if as_json => Output::ok(to_json(&r)),
        Ok(r) => Output::ok(r.to_table()),
        Err(e) => Output {
            code: exit_code(&e),
            stdout: if as_json {
                to_json(&json!({ "schema": SCHEMA, "input": input, "error": error_json(&e) }))
            } else {
                String::new()
            },
            stderr: describe(&e, input),
        },
    }
}

/// Outcome of one batch line.
#[derive(Debug, Serialize)]
struct BatchEntry {
    line: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    report: Option<Report>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<serde_json::Value>,
}

fn batch(path: &Path, opts: &Options, as_json: bool) -> Output {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let e = Error::Io(format!("{}: {e}", path.display()));
            return Output {
                code: 1,
                stdout: String::new(),
                stderr: format!("error: {e}\n"),
            };
        }
    };
    let lines = parse_batch(&text);
    let results: Vec<(usize, Option<KnotInput>, Result<Report>)> = lines
        .into_par_iter()
        .map(|(line, parsed)| match parsed {
            Ok(KnotInput::Batch { .. }) => (
                line,
                None,
                Err(Error::BadParameter("nested batch files are not supported".into())),
            ),
            Ok(input) => {
                let r = report::run(&input, opts);
                (line, Some(input), r)
            }
            Err(e) => (line, None, Err(e)),
        })
        .collect();

    let codes: Vec<i32> = results
        .iter()
        .filter_map(|(_, _, r)| r.as_ref().err().map(exit_code))
        .collect();
    let code = if codes.contains(&1) {
        1
    } else if codes.contains(&2) {
        2
    } else {
        0
    };
    let mut stderr = String::new();
    for (line, input, r) in &results {
        if let Err(e) = r {
            let shown = input
                .as_ref()
                .map(|i| describe(e, i))
                .unwrap_or_else(|| format!("error: {e}\n"));
            stderr.push_str(&format!("line {line}: {shown}"));
        }
    }
    let stdout = if as_json {
        let entries: Vec<BatchEntry> = results
            .into_iter()
            .map(|(line, _, r)| match r {
                Ok(report) => BatchEntry {
                    line,
                    report: Some(report),
                    error: None,
                },
                Err(e) => BatchEntry {
                    line,
                    report: None,
                    error: Some(error_json(&e)),
                },
            })
            .collect();
        to_json(&json!({ "schema": SCHEMA, "results": entries }))
    } else {
        let mut out = String::new();
        for (line, input, r) in &results {
            let label = input.as_ref().map(ToString::to_string).unwrap_or_default();
            out.push_str(&format!("== line {line}: {label}\n"));
            match r {
                Ok(report) => out.push_str(&report.to_table()),
                Err(e) => out.push_str(&format!("error: {e}\n")),
            }
            out.push('\n');
        }
        out
    };
    Output { code, stdout, stderr }
}

fn run_selftest(suite: Suite, seed: u64, cases: Option<usize>, as_json: bool) -> Output {
    let results = selftest::run(suite, seed, cases);
    let code = if results.iter().all(|r| r.passed()) { 0 } else { 1 };
    let stdout = if as_json {
        to_json(&json!({ "schema": SCHEMA, "suites": results }))
    } else {
        results.iter().map(|r| format!("{r}\n")).collect()
    };
    Output {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn cone_file(path: &Path, ring: Ring, as_json: bool) -> Output {
    let run = || -> Result<String> {
        let text = fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        let f: GradedMap = serde_json::from_str(&text)?;
        let r = cone(&f, ring)?;
        Ok(if as_json {
            to_json(&r)
        } else {
            let torsion: Vec<String> = r.torsion_summands.iter().map(ToString::to_string).collect();
            format!(
                "ring          {:?}\ndim domain    {}\ndim codomain  {}\nrank          {}\ndim H(cone)   {}\nkernel        {:?}\ncokernel      {:?}\ntorsion       [{}]\n",
                r.ring,
                r.dim_domain,
                r.dim_codomain,
                r.rank,
                r.dim_homology,
                r.graded_kernel_dims,
                r.graded_cokernel_dims,
                torsion.join(", ")
            )
        })
    };
    match run() {
        Ok(s) => Output::ok(s),
        Err(e) => Output {
            code: 1,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        },
    }
}
