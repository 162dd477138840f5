//! The `procreal` command line.
//!
//! Exit codes: 0 equal/pass, 1 distinguished/fail, 2 unknown or budget
//! exhausted, 3 usage error, 4 unreadable or malformed input, 5 an engine
//! error (an ill-formed term reached the semantics).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use procreal_core::equivalence::{failures_bounded, failures_equiv, weak_bisim, EquivResult, Side, Witness};
use procreal_core::extraction::{extract, AtomEnv};
use procreal_core::logic::parse_formula;
use procreal_core::semantics::{explore, ExplorationBudget, Outcome, Tri};
use procreal_core::semtypes::{interpret, realizes_neg, realizes_pos, Membership};
use procreal_core::syntax::{expand_values, parse_program, print_term, well_formed};
use procreal_core::{Registry, Term};

use crate::corpus::{steps_section, verify_cuts};
use crate::exercises::{run_exercises, ExerciseConfig};
use crate::formats::{
    atom_env, failure_doc, lts_doc, lts_dot, parse_proof_json, type_env, AtomEnvDoc, TypeEnvDoc,
};
use crate::report::Report;

pub const EXIT_USAGE: i32 = 3;
pub const EXIT_INPUT: i32 = 4;
pub const EXIT_ENGINE: i32 = 5;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Failures,
    WeakBisim,
}

#[derive(Debug, Parser)]
#[command(name = "procreal", version, about = "CCS with simultaneous actions, failures equivalence and process realizers")]
pub struct Cli {
    /// State budget for every exploration.
    #[arg(long, global = true, default_value_t = 5000, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_states: u64,
    /// Trace depth for failure sets and the bounded fallback.
    #[arg(long, global = true, default_value_t = 6)]
    pub depth: usize,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Value domain for `in`/`out` prefixes, comma separated.
    #[arg(long, global = true, value_delimiter = ',', default_values_t = [0u32, 1])]
    pub values: Vec<u32>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Explore the transition system of a term.
    Lts { term: PathBuf },
    /// Failures up to `--depth`.
    Failures { term: PathBuf },
    /// Compare two terms.
    Equiv {
        left: PathBuf,
        right: PathBuf,
        #[arg(long, value_enum, default_value_t = Mode::Failures)]
        mode: Mode,
    },
    /// Orthogonality: whether `(P|Q)` with every name hidden converges.
    Perp { left: PathBuf, right: PathBuf },
    /// Realizer of a proof.
    Extract {
        proof: PathBuf,
        #[arg(long)]
        atoms: Option<PathBuf>,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Eliminate cuts step by step, checking failures equivalence after each.
    VerifyCut {
        proof: PathBuf,
        #[arg(long)]
        atoms: Option<PathBuf>,
    },
    /// Classify a term against a formula's semantic type.
    CheckType {
        term: PathBuf,
        /// Type environment file.
        #[arg(long)]
        types: PathBuf,
        /// The formula, e.g. `a * ~b`.
        #[arg(long = "type")]
        ty: String,
        /// Check as a counter-realizer.
        #[arg(long)]
        negative: bool,
    },
    /// Run the law suites.
    Exercises {
        #[arg(long, default_value_t = 200)]
        trials: usize,
    },
}

/// Output of a subcommand: what to print and the exit code.
struct Output {
    text: String,
    code: i32,
}

#[derive(Debug)]
struct Failure {
    code: i32,
    msg: String,
}

fn input<E: std::fmt::Display>(what: &Path) -> impl FnOnce(E) -> Failure + '_ {
    move |e| Failure { code: EXIT_INPUT, msg: format!("{}: {e}", what.display()) }
}

fn engine<E: std::fmt::Display>(e: E) -> Failure {
    Failure { code: EXIT_ENGINE, msg: e.to_string() }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(input(path))
}

fn read_term(path: &Path, values: &[u32], reg: &mut Registry) -> Result<Term, Failure> {
    let prog = parse_program(&read(path)?, reg).map_err(input(path))?;
    let t = prog.main().ok_or_else(|| input(path)("no term in file"))?;
    let t = expand_values(t, values, reg).map_err(input(path))?;
    let diags = well_formed(&t);
    if !diags.is_empty() {
        let msg: Vec<String> = diags.iter().map(|d| d.to_string()).collect();
        return Err(input(path)(msg.join("; ")));
    }
    Ok(t)
}

fn read_atoms(path: Option<&Path>, reg: &mut Registry) -> Result<AtomEnv, Failure> {
    match path {
        None => Ok(AtomEnv::new()),
        Some(p) => {
            let doc: AtomEnvDoc = serde_json::from_str(&read(p)?).map_err(input(p))?;
            atom_env(&doc, reg).map_err(input(p))
        }
    }
}

fn json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("documents serialize");
    s.push('\n');
    s
}

fn witness_text(w: &Witness, reg: &Registry) -> String {
    let trace: Vec<String> = w.trace.iter().map(|a| reg.action_string(a)).collect();
    let refusal: Vec<String> = w.refusal.iter().map(|a| reg.action_string(a)).collect();
    let side = match w.side {
        Side::Left => "left",
        Side::Right => "right",
    };
    format!("after [{}] only the {side} term refuses {{{}}}", trace.join(", "), refusal.join(", "))
}

fn verdict_line(format: Format, verdict: &str, detail: &serde_json::Value, text: String) -> String {
    match format {
        Format::Json => json(&serde_json::json!({ "verdict": verdict, "detail": detail })),
        _ => format!("{verdict}{}{text}\n", if text.is_empty() { "" } else { ": " }),
    }
}

fn report_out(r: &Report, format: Format) -> Output {
    let text = match format {
        Format::Json => r.to_json(),
        _ => r.to_text(),
    };
    Output { text, code: r.verdict().exit_code() }
}

fn dispatch(cli: &Cli) -> Result<Output, Failure> {
    let max_states = usize::try_from(cli.max_states).unwrap_or(usize::MAX);
    let budget = ExplorationBudget { max_states, max_depth: Some(cli.depth) };
    let mut reg = Registry::new();
    match &cli.command {
        Command::Lts { term } => {
            let t = read_term(term, &cli.values, &mut reg)?;
            let ex = explore(&t, ExplorationBudget::states(max_states)).map_err(engine)?;
            let text = match cli.format {
                Format::Dot => lts_dot(&ex.lts, &reg),
                Format::Json => json(&lts_doc(&ex.lts, &reg)),
                Format::Text => {
                    let mut s = String::new();
                    for (i, st) in ex.lts.states.iter().enumerate() {
                        let _ = writeln!(s, "s{i} = {}", print_term(st, &reg));
                    }
                    for (src, a, dst) in ex.lts.transitions() {
                        let _ = writeln!(s, "s{src} --{}--> s{dst}", reg.action_string(a));
                    }
                    s
                }
            };
            let code = if ex.outcome == Outcome::Complete { 0 } else { 2 };
            Ok(Output { text, code })
        }
        Command::Failures { term } => {
            let t = read_term(term, &cli.values, &mut reg)?;
            match failures_bounded(&t, cli.depth, max_states).map_err(engine)? {
                None => Ok(Output { text: verdict_line(cli.format, "unknown", &serde_json::Value::Null, "state budget exhausted".into()), code: 2 }),
                Some(fs) => {
                    let text = match cli.format {
                        Format::Json => json(&failure_doc(&fs, &reg)),
                        _ => {
                            let mut s = String::new();
                            for (trace, accs) in &fs.traces {
                                let tr: Vec<String> = trace.iter().map(|a| reg.action_string(a)).collect();
                                let acc: Vec<String> = accs
                                    .iter()
                                    .map(|acc| format!("{{{}}}", acc.iter().map(|a| reg.action_string(a)).collect::<Vec<_>>().join(", ")))
                                    .collect();
                                let _ = writeln!(s, "[{}] accepts {}", tr.join(", "), acc.join(" "));
                            }
                            s
                        }
                    };
                    Ok(Output { text, code: 0 })
                }
            }
        }
        Command::Equiv { left, right, mode } => {
            let p = read_term(left, &cli.values, &mut reg)?;
            let q = read_term(right, &cli.values, &mut reg)?;
            match mode {
                Mode::Failures => {
                    let r = failures_equiv(&p, &q, budget).map_err(engine)?;
                    Ok(match r {
                        EquivResult::Equal => Output { text: verdict_line(cli.format, "equal", &serde_json::Value::Null, String::new()), code: 0 },
                        EquivResult::Distinguished(w) => {
                            let detail = serde_json::json!({
                                "trace": w.trace.iter().map(|a| reg.action_string(a)).collect::<Vec<_>>(),
                                "refusal": w.refusal.iter().map(|a| reg.action_string(a)).collect::<Vec<_>>(),
                                "side": if w.side == Side::Left { "left" } else { "right" },
                            });
                            Output { text: verdict_line(cli.format, "distinguished", &detail, witness_text(&w, &reg)), code: 1 }
                        }
                        EquivResult::Unknown { agreed } => {
                            let msg = match agreed {
                                Some(k) => format!("failures agree on traces up to length {k}"),
                                None => String::from("nothing decided within budget"),
                            };
                            let detail = serde_json::json!({ "agreed": agreed });
                            Output { text: verdict_line(cli.format, "unknown", &detail, msg), code: 2 }
                        }
                    })
                }
                Mode::WeakBisim => {
                    let (v, code) = match weak_bisim(&p, &q, budget).map_err(engine)? {
                        Tri::Yes => ("equal", 0),
                        Tri::No => ("distinguished", 1),
                        Tri::Unknown => ("unknown", 2),
                    };
                    Ok(Output { text: verdict_line(cli.format, v, &serde_json::Value::Null, String::new()), code })
                }
            }
        }
        Command::Perp { left, right } => {
            let p = read_term(left, &cli.values, &mut reg)?;
            let q = read_term(right, &cli.values, &mut reg)?;
            let (v, code) = match procreal_core::equivalence::perp(&p, &q, budget).map_err(engine)? {
                Tri::Yes => ("yes", 0),
                Tri::No => ("no", 1),
                Tri::Unknown => ("unknown", 2),
            };
            Ok(Output { text: verdict_line(cli.format, v, &serde_json::Value::Null, String::new()), code })
        }
        Command::Extract { proof, atoms, output } => {
            let env = read_atoms(atoms.as_deref(), &mut reg)?;
            let p = parse_proof_json(&read(proof)?).map_err(input(proof))?;
            let t = extract(&p, &env, &mut reg).map_err(input(proof))?;
            let mut text = print_term(&t, &reg);
            text.push('\n');
            match output {
                Some(o) => {
                    std::fs::write(o, &text).map_err(input(o))?;
                    Ok(Output { text: String::new(), code: 0 })
                }
                None => Ok(Output { text, code: 0 }),
            }
        }
        Command::VerifyCut { proof, atoms } => {
            let env = read_atoms(atoms.as_deref(), &mut reg)?;
            let p = parse_proof_json(&read(proof)?).map_err(input(proof))?;
            let steps = verify_cuts(&p, &env, &mut reg, budget, 10_000).map_err(engine)?;
            let name = proof.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            let mut r = Report::new("cut elimination");
            r.sections.push(steps_section(&name, &p, &steps));
            Ok(report_out(&r, cli.format))
        }
        Command::CheckType { term, types, ty, negative } => {
            let doc: TypeEnvDoc = serde_json::from_str(&read(types)?).map_err(input(types))?;
            let env = type_env(&doc, &mut reg, budget).map_err(input(types))?;
            let t = read_term(term, &cli.values, &mut reg)?;
            let f = parse_formula(ty).map_err(|e| Failure { code: EXIT_INPUT, msg: format!("--type: {e}") })?;
            let sem = interpret(&f, &env, doc.fuel, &mut reg, budget).map_err(|e| Failure { code: EXIT_INPUT, msg: format!("--type: {e}") })?;
            let m = if *negative { realizes_neg(&t, &sem, budget) } else { realizes_pos(&t, &sem, budget) };
            let (v, code, detail) = match m.map_err(engine)? {
                Membership::Class(c) => ("member", 0, serde_json::json!({ "class": c })),
                Membership::No => ("not a member", 1, serde_json::Value::Null),
                Membership::Unknown => ("unknown", 2, serde_json::Value::Null),
            };
            let text = match detail.get("class") {
                Some(c) => format!("class {c}"),
                None => String::new(),
            };
            Ok(Output { text: verdict_line(cli.format, v, &detail, text), code })
        }
        Command::Exercises { trials } => {
            let cfg = ExerciseConfig { seed: cli.seed, trials: *trials, budget, ..ExerciseConfig::default() };
            let r = run_exercises(&cfg).map_err(engine)?;
            Ok(report_out(&r, cli.format))
        }
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            return if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{e}");
                0
            } else {
                let _ = write!(err, "{e}");
                EXIT_USAGE
            };
        }
    };
    match dispatch(&cli) {
        Ok(o) => {
            let _ = out.write_all(o.text.as_bytes());
            o.code
        }
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.msg);
            f.code
        }
    }
}
