//! `coxtwist`: cosets of twisted parabolic subgroups from the command line.
//!
//! Exit codes: 0 ok, 1 verification failure, 2 parse or validation error,
//! 3 enumeration cap exceeded, 4 invalid element.

mod description;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use coxtwist::cosets::{all_cosets, dominated_minimal, min_graph_dot, min_size_distribution, Choice, StepVerdict};
use coxtwist::twisted::{DiagramAutomorphism, TwistedSubgroup};
use coxtwist::verify::{run_suite, Suite, SuiteConfig};
use coxtwist::{CoxeterSystem, Element, Error};

use description::Description;

#[derive(Parser)]
#[command(name = "coxtwist", version, about = "Cosets of fixed-point subgroups of diagram automorphisms in Coxeter groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// One row per coset: representative, size, |Min|, minimal length.
    Cosets { file: PathBuf },
    /// DOT graph of the minimal elements of the coset of an element.
    MinGraph {
        file: PathBuf,
        /// 1-based generator indices, e.g. "4 2 3 1" or "4231"; "e" for the identity.
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
        /// Write the graph here instead of stdout.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Run the verification suites on the given systems, or on the default
    /// bundle when no file is given.
    Verify {
        files: Vec<PathBuf>,
        /// Machine-readable report.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        seed: Option<u64>,
        /// Random pairs for sampled Bruhat comparisons.
        #[arg(long)]
        samples: Option<usize>,
        /// Restrict to these suites (repeatable).
        #[arg(long = "suite")]
        suites: Vec<String>,
    },
    /// A minimal element of the coset below the given element, with the
    /// steps that produced it.
    Dominate {
        file: PathBuf,
        #[arg(required = true, num_args = 1..)]
        word: Vec<String>,
    },
}

enum Failure {
    Verification,
    Parse(String),
    Cap(String),
    Element(String),
}

impl Failure {
    fn from_error(e: Error) -> Self {
        match e {
            Error::CapExceeded(_) | Error::OutOfEnumeratedRegion | Error::Incomplete | Error::CoefficientOverflow => {
                Failure::Cap(e.to_string())
            }
            Error::InvariantViolation(_) => {
                eprintln!("error: {e}");
                Failure::Verification
            }
            _ => Failure::Parse(e.to_string()),
        }
    }

    fn exit(self) -> ExitCode {
        let (code, msg) = match self {
            Failure::Verification => return ExitCode::from(1),
            Failure::Parse(m) => (2, m),
            Failure::Cap(m) => (3, m),
            Failure::Element(m) => (4, m),
        };
        eprintln!("error: {msg}");
        ExitCode::from(code)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cosets { file } => cmd_cosets(&file),
        Command::MinGraph { file, word, output } => cmd_min_graph(&file, &word.join(" "), output),
        Command::Verify {
            files,
            json,
            seed,
            samples,
            suites,
        } => cmd_verify(&files, json, seed, samples, &suites),
        Command::Dominate { file, word } => cmd_dominate(&file, &word.join(" ")),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => f.exit(),
    }
}

fn load(file: &Path) -> Result<(Description, CoxeterSystem), Failure> {
    let desc = description::load(file).map_err(Failure::Parse)?;
    let sys = CoxeterSystem::build(desc.case.matrix.clone(), desc.case.cap).map_err(Failure::from_error)?;
    Ok((desc, sys))
}

fn subgroup<'a>(desc: &Description, sys: &'a CoxeterSystem) -> Result<TwistedSubgroup<'a>, Failure> {
    let theta = DiagramAutomorphism::from_swaps(sys, &desc.case.subset, &desc.case.swaps).map_err(Failure::from_error)?;
    let sub = TwistedSubgroup::enumerate(sys, theta, desc.case.cap).map_err(Failure::from_error)?;
    for orbit in sub.skipped_orbits() {
        let names: Vec<String> = orbit.iter().map(|s| (s + 1).to_string()).collect();
        eprintln!("note: orbit {{{}}} spans an infinite bond; no generator emitted", names.join(","));
    }
    Ok(sub.with_nicknames(&desc.case.nicknames))
}

fn element(sys: &CoxeterSystem, text: &str) -> Result<Element, Failure> {
    let word = sys.parse_word(text).map_err(|e| Failure::Element(e.to_string()))?;
    sys.element_from_word(&word)
        .map_err(|e| Failure::Element(format!("{text:?}: {e}")))
}

fn header(out: &mut String, name: &str, sub: &TwistedSubgroup<'_>) {
    let sys = sub.system();
    let _ = writeln!(out, "system: {name}");
    if sys.is_complete() {
        let _ = writeln!(out, "|W| = {}", sys.order());
    } else {
        let _ = writeln!(out, "|W| > {} (enumeration capped)", sys.order());
    }
    let gens: Vec<String> = sub
        .generators()
        .iter()
        .enumerate()
        .map(|(i, g)| format!("{} = {}", sub.nickname(i), sys.format_word(g.element)))
        .collect();
    let _ = writeln!(out, "generators of W_L^theta: {}", gens.join(", "));
    let _ = writeln!(out, "|W_L^theta| = {}", sub.order());
}

fn cmd_cosets(file: &Path) -> Outcome {
    let (desc, sys) = load(file)?;
    if !sys.is_complete() {
        return Err(Failure::Cap(format!(
            "group has more than {} elements; raise `cap` or use a finite group",
            desc.case.cap
        )));
    }
    let sub = subgroup(&desc, &sys)?;
    let cosets = all_cosets(&sub).map_err(Failure::from_error)?;
    let mut out = String::new();
    header(&mut out, &desc.case.name, &sub);
    let width = cosets
        .iter()
        .map(|c| sys.compact_word(c.rep).len())
        .max()
        .unwrap_or(0)
        .max(14);
    let _ = writeln!(out);
    let _ = writeln!(out, "{:width$}  {:>5}  {:>5}  {:>10}", "representative", "size", "|Min|", "min length");
    for c in &cosets {
        let _ = writeln!(
            out,
            "{:width$}  {:>5}  {:>5}  {:>10}",
            sys.compact_word(c.rep),
            c.members.len(),
            c.min_set.len(),
            c.min_length
        );
    }
    let _ = writeln!(out);
    let _ = writeln!(out, "cosets: {}", cosets.len());
    let dist: Vec<String> = min_size_distribution(&cosets)
        .iter()
        .map(|(k, v)| format!("{k}:{v}"))
        .collect();
    let _ = writeln!(out, "|Min| distribution (size:count): {}", dist.join(" "));
    print!("{out}");
    Ok(())
}

fn cmd_min_graph(file: &Path, word: &str, output: Option<PathBuf>) -> Outcome {
    let (desc, sys) = load(file)?;
    let sub = subgroup(&desc, &sys)?;
    let u = element(&sys, word)?;
    let coset = sub.coset(u).map_err(Failure::from_error)?;
    let dot = min_graph_dot(&sub, &coset);
    match output {
        Some(path) => std::fs::write(&path, dot).map_err(|e| Failure::Parse(format!("{}: {e}", path.display())))?,
        None => print!("{dot}"),
    }
    Ok(())
}

fn cmd_verify(files: &[PathBuf], json: bool, seed: Option<u64>, samples: Option<usize>, suites: &[String]) -> Outcome {
    let mut config = if files.is_empty() {
        SuiteConfig::bundled()
    } else {
        SuiteConfig::default()
    };
    for file in files {
        let (desc, sys) = load(file)?;
        if !sys.is_complete() {
            return Err(Failure::Cap(format!(
                "{}: group has more than {} elements; verification needs a finite group",
                file.display(),
                desc.case.cap
            )));
        }
        config.suites.extend(desc.suites);
        config.seed = desc.seed.unwrap_or(config.seed);
        config.samples = desc.samples.unwrap_or(config.samples);
        config.corrupt_oracle |= desc.corrupt_oracle;
        config.systems.push(desc.case);
    }
    for s in suites {
        config.suites.push(s.parse::<Suite>().map_err(Failure::Parse)?);
    }
    config.seed = seed.unwrap_or(config.seed);
    config.samples = samples.unwrap_or(config.samples);
    let report = run_suite(&config);
    if json {
        let text = serde_json::to_string_pretty(&report).expect("report serializes");
        println!("{text}");
    } else {
        print!("{}", report.to_table());
    }
    if report.is_success() {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn cmd_dominate(file: &Path, word: &str) -> Outcome {
    let (desc, sys) = load(file)?;
    let sub = subgroup(&desc, &sys)?;
    let x = element(&sys, word)?;
    let d = dominated_minimal(&sub, x).map_err(Failure::from_error)?;
    let w = |e: Element| format!("{} (length {})", sys.compact_word(e), sys.length(e));
    let mut out = String::new();
    let _ = writeln!(out, "x: {}", w(x));
    if d.minimal == x {
        let _ = writeln!(out, "already minimal");
        print!("{out}");
        return Ok(());
    }
    let _ = writeln!(out, "start: {}", w(d.start));
    let letters: Vec<&str> = d.word.iter().map(|&i| sub.nickname(i)).collect();
    let _ = writeln!(out, "twisted word of start^-1 x: {}", letters.join(" "));
    for (k, step) in d.steps.iter().enumerate() {
        let verdict = match step.verdict {
            StepVerdict::Equal => "equal",
            StepVerdict::BruhatUp => "bruhat-up",
        };
        let choice = match step.choice {
            Some(Choice::Kept) => "kept",
            Some(Choice::Multiplied) => "multiplied",
            None => "-",
        };
        let _ = writeln!(
            out,
            "step {}: {:3} {:9} {:10} w = {}",
            k + 1,
            sub.nickname(step.generator),
            verdict,
            choice,
            sys.compact_word(step.witness)
        );
    }
    let _ = writeln!(out, "w: {}", w(d.minimal));
    let below = sys.bruhat_leq(d.minimal, x);
    let minimal = sub.is_minimal(d.minimal).map_err(Failure::from_error)?;
    let _ = writeln!(out, "check: w <= x {}, w minimal {}", yes(below), yes(minimal));
    print!("{out}");
    if below && minimal {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}

fn yes(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "NO"
    }
}
