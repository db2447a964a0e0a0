//! Command-line front end behind the `ssg` binary.
//!
//! Exit codes: 0 proven / valid, 1 refuted, 2 validation failure,
//! 3 unknown, 4 incompatible stabilizer, 64 usage, 65 unparsable input,
//! 66 missing input, 70 internal error.

use std::ffi::OsString;
use std::path::{Path as FsPath, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::checkers::{check_property, verify_certificate, Budget, Property, Verdict};
use crate::desing::{desingularize, truncate};
use crate::document::{AlphaEntry, TripleDocument};
use crate::error::Error;
use crate::expr::eval_lines;
use crate::report::{Format, Record};
use crate::triple::Triple;

pub const EXIT_OK: i32 = 0;
pub const EXIT_REFUTED: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_UNKNOWN: i32 = 3;
pub const EXIT_INCOMPATIBLE: i32 = 4;
pub const EXIT_USAGE: i32 = 64;
pub const EXIT_PARSE: i32 = 65;
pub const EXIT_NO_INPUT: i32 = 66;
pub const EXIT_INTERNAL: i32 = 70;

#[derive(Debug, Parser)]
#[command(name = "ssg", version, about = "Self-similar graph triples: validation, desingularization, property checks")]
pub struct Cli {
    #[command(flatten)]
    pub config: RunConfig,
    #[command(subcommand)]
    pub command: Command,
}

/// Budgets and output settings shared by every command.
#[derive(Debug, Clone, Args)]
pub struct RunConfig {
    /// Word ball radius for the integers backend and axiom checks.
    #[arg(long = "budget-words", global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub words: u64,
    /// Largest lasso size sampled.
    #[arg(long = "budget-lasso", global = true, default_value_t = 4, value_parser = clap::value_parser!(u64).range(1..))]
    pub lasso: u64,
    /// Longest circuit searched for by the contraction checker.
    #[arg(long = "budget-circuit", global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub circuit: u64,
    /// Members of each infinite family enumerated.
    #[arg(long = "budget-family", global = true, default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
    pub family: u64,
    /// Twist states explored per search.
    #[arg(long = "budget-states", global = true, default_value_t = 4096, value_parser = clap::value_parser!(u64).range(1..))]
    pub states: u64,
    /// Relation and tightness sampling depth.
    #[arg(long, global = true, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub depth: u64,
    /// Recorded in reports; every command is deterministic.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { words: 8, lasso: 4, circuit: 8, family: 8, states: 4096, depth: 6, seed: 0, format: Format::Text, jobs: 1 }
    }
}

impl RunConfig {
    pub fn budget(&self) -> Budget {
        Budget {
            words: self.words as usize,
            lasso: self.lasso as usize,
            circuit: self.circuit as usize,
            family: self.family,
            states: self.states as usize,
            depth: self.depth as usize,
        }
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check the triple axioms and list every violation.
    Validate { file: PathBuf },
    /// Add tails at sources and infinite receivers.
    Desingularize {
        file: PathBuf,
        /// Rows of the alpha table and depth of the truncation.
        #[arg(short = 'n', long = "truncate", default_value_t = 8, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        /// Also write the truncated graph as DOT here.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Decide a property, with a certificate.
    Check {
        property: Property,
        file: PathBuf,
        /// Re-check the certificate with the independent verifier.
        #[arg(long)]
        verify_certificate: bool,
    },
    /// Evaluate semigroup expressions, one per line.
    Eval { file: PathBuf, expressions: PathBuf },
    /// Render the graph as DOT.
    ExportDot {
        file: PathBuf,
        /// Tail vertices drawn per tail.
        #[arg(long = "tail-depth", default_value_t = 3)]
        tail_depth: u64,
    },
}

#[derive(Debug, Default, PartialEq, Eq)]
pub struct Exit {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Exit {
    fn out(code: i32, stdout: String) -> Exit {
        Exit { code, stdout, stderr: String::new() }
    }

    fn err(code: i32, stderr: String) -> Exit {
        Exit { code, stdout: String::new(), stderr }
    }
}

fn error_exit(e: Error) -> Exit {
    let code = match &e {
        Error::Parse { .. } => EXIT_PARSE,
        Error::IncompatibleStabilizer { .. } => EXIT_INCOMPATIBLE,
        Error::Invalid(_) | Error::UnknownVertex(_) | Error::UnknownEdge(_) | Error::UnknownElement(_) | Error::Graph(_) => {
            EXIT_INVALID
        }
        _ => EXIT_INTERNAL,
    };
    let mut msg = format!("error: {e}\n");
    if let Error::Invalid(report) = &e {
        for v in &report.violations {
            msg += &format!("violation: {v}\n");
        }
    }
    Exit::err(code, msg)
}

fn read(path: &FsPath) -> Result<String, Exit> {
    std::fs::read_to_string(path).map_err(|e| Exit::err(EXIT_NO_INPUT, format!("error: {}: {e}\n", path.display())))
}

fn load_document(path: &FsPath) -> Result<TripleDocument, Exit> {
    let text = read(path)?;
    TripleDocument::parse(&text).map_err(|e| {
        let mut x = error_exit(e);
        x.stderr = format!("{}: {}", path.display(), x.stderr);
        x
    })
}

fn load_triple(path: &FsPath, config: &RunConfig) -> Result<Triple, Exit> {
    load_document(path)?.to_triple(config.words as usize).map_err(error_exit)
}

fn instance_name(path: &FsPath) -> String {
    path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_else(|| path.display().to_string())
}

pub fn validate(path: &FsPath, config: &RunConfig) -> Exit {
    let doc = match load_document(path) {
        Ok(d) => d,
        Err(x) => return x,
    };
    let data = match doc.to_data() {
        Ok(d) => d,
        Err(e) => return error_exit(e),
    };
    let report = Triple::validate(&data, config.words as usize);
    let code = if report.is_valid() { EXIT_OK } else { EXIT_INVALID };
    let out = match config.format {
        Format::Json => {
            let v = json!({
                "instance": instance_name(path),
                "valid": report.is_valid(),
                "violations": report.violations.iter().map(|v| json!({ "axiom": v.axiom, "witness": v.witness })).collect::<Vec<_>>(),
                "notes": report.notes,
            });
            serde_json::to_string_pretty(&v).expect("json") + "\n"
        }
        Format::Text => {
            let mut s = format!("instance: {}\nvalid: {}\n", instance_name(path), report.is_valid());
            for v in &report.violations {
                s += &format!("violation: {v}\n");
            }
            for n in &report.notes {
                s += &format!("note: {n}\n");
            }
            s
        }
    };
    Exit::out(code, out)
}

/// The desingularized document with its alpha table and truncation.
pub fn desingularize_document(t: &Triple, n: u64, word_budget: usize) -> crate::error::Result<(TripleDocument, String)> {
    let d = desingularize(t, word_budget)?;
    let f = d.triple.graph();
    let mut doc = TripleDocument::from_triple(&d.triple);
    doc.alpha_table = d
        .corner
        .table(f, n)
        .into_iter()
        .map(|(root, index, a, path)| AlphaEntry {
            root: f.base_name(root).to_string(),
            index,
            removed: f.edge_name(a),
            path: f.path_name(&path),
        })
        .collect();
    let cut = truncate(&d, n, word_budget)?;
    doc.meta = Some(json!({
        "note": "the base-vertex corner of the desingularization is isomorphic to the input algebra; the two are strongly Morita equivalent",
        "truncation": {
            "depth": n,
            "boundary": cut.boundary,
            "graph": cut.triple.graph().to_spec(),
        },
    }));
    Ok((doc, cut.triple.graph().to_dot(0)))
}

pub fn cmd_desingularize(path: &FsPath, n: u64, dot: Option<&FsPath>, config: &RunConfig) -> Exit {
    let t = match load_triple(path, config) {
        Ok(t) => t,
        Err(x) => return x,
    };
    let (doc, dot_text) = match desingularize_document(&t, n, config.words as usize) {
        Ok(v) => v,
        Err(e) => return error_exit(e),
    };
    if let Some(p) = dot {
        if let Err(e) = std::fs::write(p, dot_text) {
            return Exit::err(EXIT_INTERNAL, format!("error: {}: {e}\n", p.display()));
        }
    }
    Exit::out(EXIT_OK, doc.to_json() + "\n")
}

pub fn cmd_check(path: &FsPath, property: Property, verify: bool, config: &RunConfig) -> Exit {
    let t = match load_triple(path, config) {
        Ok(t) => t,
        Err(x) => return x,
    };
    let budget = config.budget();
    let outcome = match check_property(&t, property, &budget) {
        Ok(o) => o,
        Err(e) => return error_exit(e),
    };
    let mut record = Record::new(&instance_name(path), &outcome, &budget);
    if verify {
        record.verified = Some(verify_certificate(&outcome.checked, &outcome.verdict, &budget));
    }
    let code = match (&outcome.verdict, &record.verified) {
        (_, Some(Err(_))) => EXIT_INTERNAL,
        (Verdict::Proven(_), _) => EXIT_OK,
        (Verdict::Refuted(_), _) => EXIT_REFUTED,
        (Verdict::Unknown(_), _) => EXIT_UNKNOWN,
    };
    Exit::out(code, record.render(config.format))
}

pub fn cmd_eval(path: &FsPath, expressions: &FsPath, config: &RunConfig) -> Exit {
    let t = match load_triple(path, config) {
        Ok(t) => t,
        Err(x) => return x,
    };
    let text = match read(expressions) {
        Ok(s) => s,
        Err(x) => return x,
    };
    match eval_lines(&t, &text, config.states as usize) {
        Ok(results) => {
            let out = match config.format {
                Format::Text => results.iter().map(|(src, v)| format!("{src} => {}\n", v.render(&t))).collect(),
                Format::Json => {
                    let rows: Vec<_> = results.iter().map(|(src, v)| json!({ "expression": src, "value": v.render(&t) })).collect();
                    serde_json::to_string_pretty(&rows).expect("json") + "\n"
                }
            };
            Exit::out(EXIT_OK, out)
        }
        Err(e) => {
            let mut x = error_exit(e);
            x.stderr = format!("{}: {}", expressions.display(), x.stderr);
            x
        }
    }
}

pub fn cmd_export_dot(path: &FsPath, tail_depth: u64, config: &RunConfig) -> Exit {
    match load_triple(path, config) {
        Ok(t) => Exit::out(EXIT_OK, t.graph().to_dot(tail_depth)),
        Err(x) => x,
    }
}

pub fn execute(cli: &Cli) -> Exit {
    let c = &cli.config;
    let job = || match &cli.command {
        Command::Validate { file } => validate(file, c),
        Command::Desingularize { file, n, dot } => cmd_desingularize(file, *n, dot.as_deref(), c),
        Command::Check { property, file, verify_certificate } => cmd_check(file, *property, *verify_certificate, c),
        Command::Eval { file, expressions } => cmd_eval(file, expressions, c),
        Command::ExportDot { file, tail_depth } => cmd_export_dot(file, *tail_depth, c),
    };
    match rayon::ThreadPoolBuilder::new().num_threads(c.jobs as usize).build() {
        Ok(pool) => pool.install(job),
        Err(e) => Exit::err(EXIT_INTERNAL, format!("error: thread pool: {e}\n")),
    }
}

/// Parses arguments (the first is the program name) and runs.
pub fn run<I, T>(args: I) -> Exit
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => execute(&cli),
        Err(e) => {
            let code = match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
            let text = e.render().to_string();
            if code == EXIT_OK {
                Exit::out(code, text)
            } else {
                Exit::err(code, text)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn corpus_file(name: &str) -> String {
        format!("{}/corpus/{name}.json", env!("CARGO_MANIFEST_DIR"))
    }

    fn ssg(args: &[&str]) -> Exit {
        run(std::iter::once("ssg").chain(args.iter().copied()))
    }

    #[test]
    fn check_exit_codes() {
        assert_eq!(ssg(&["check", "simple", &corpus_file("two_loops")]).code, EXIT_OK);
        let x = ssg(&["check", "topfree", &corpus_file("one_loop")]);
        assert_eq!(x.code, EXIT_REFUTED);
        assert!(x.stdout.contains("circuit without entry: e"), "{}", x.stdout);
        let x = ssg(&["check", "hausdorff", &corpus_file("z_odometer"), "--budget-words", "1"]);
        assert_eq!(x.code, EXIT_UNKNOWN, "{}", x.stdout);
    }

    #[test]
    fn verified_check() {
        let x = ssg(&["check", "pureinf", &corpus_file("z2_two_loop_swap"), "--verify-certificate", "--format", "json"]);
        assert_eq!(x.code, EXIT_OK);
        let v: serde_json::Value = serde_json::from_str(&x.stdout).unwrap();
        assert!(v["verified"]["Ok"].as_u64().unwrap() > 0);
    }

    #[test]
    fn usage_and_input_errors() {
        assert_eq!(ssg(&["check", "bogus", &corpus_file("one_loop")]).code, EXIT_USAGE);
        assert_eq!(ssg(&["frobnicate"]).code, EXIT_USAGE);
        assert_eq!(ssg(&["validate", "/nonexistent/triple.json"]).code, EXIT_NO_INPUT);
        assert_eq!(ssg(&["--help"]).code, EXIT_OK);
    }

    #[test]
    fn incompatible_stabilizer_has_its_own_code() {
        let x = ssg(&["desingularize", &corpus_file("z2_incompatible_receiver")]);
        assert_eq!(x.code, EXIT_INCOMPATIBLE, "{}", x.stderr);
    }

    #[test]
    fn desingularized_output_validates_and_is_stable() {
        let t = crate::corpus::receiver_mixed();
        let (doc, dot) = desingularize_document(&t, 5, 8).unwrap();
        assert!(dot.starts_with("digraph"));
        assert_eq!(doc.alpha_table.len(), 5 * doc.tails.iter().filter(|t| matches!(t.kind, crate::document::TailKindDoc::Receiver)).count());
        let again = TripleDocument::parse(&doc.to_json()).unwrap();
        let f = again.to_triple(8).unwrap();
        let (doc2, _) = desingularize_document(&f, 5, 8).unwrap();
        assert_eq!(doc2.to_json(), doc.to_json());
    }
}
