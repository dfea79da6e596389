use std::io::{ErrorKind, Read, Write};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use conductor_core::dualgraph::KodairaLabel;
use conductor_lab::{batch, from_upstream, parse_job_file, render_table, single, JobEntry, JobFile, Kind, Report};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "conductor-lab", version, about = "Exact conductor and singularity invariants from JSON input")]
struct Cli {
    #[command(subcommand)]
    command: Option<Command>,

    /// Payload for a subcommand: a file path, or `-` for stdin.
    #[arg(long, global = true, default_value = "-")]
    input: String,

    /// Run a job file instead of a single subcommand.
    #[arg(long, global = true)]
    jobs: Option<String>,

    /// Run batch jobs in parallel. Output is identical either way.
    #[arg(long, global = true)]
    parallel: bool,

    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum Output {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a labelled dual graph and print its invariants.
    Graph,
    /// Tame base change conductor of a graph, with diagnostics.
    Ctame,
    /// Term-by-term evaluation of the tame base change formula.
    Pipeline,
    /// Quotient singularities.
    Quotsing {
        #[command(subcommand)]
        which: Quotsing,
    },
    /// Swan and Artin conductors from a ramification filtration.
    Ramification,
    /// Base change conductors from cover data.
    Bcc {
        #[command(subcommand)]
        which: Bcc,
    },
    /// Catalog fiber of a Kodaira type (`IV`, `I3`, `I0*`, ...). `all` runs
    /// every type. Without a type the payload is read from --input.
    Kodaira { label: Option<String> },
    /// nu of the p = 3 elliptic quotient singularity from c_tame.
    EllipticNu,
}

#[derive(Subcommand)]
enum Quotsing {
    /// Cyclic quotient singularity (e, r): chain, discrepancy, mu.
    Tame,
    /// Weak wild Milnor number, one p-cyclic chart, or a chart search.
    Wild,
    /// Discrepancy, mu and nu of an explicit resolution configuration.
    Resolve,
}

#[derive(Subcommand)]
enum Bcc {
    /// Tame cyclic cover with potential good reduction.
    TameGood,
    /// Weakly ramified p-group cover, with the -12c assembly.
    WildWeak,
    /// Evaluate one variant of the formula from named terms.
    Eval,
}

fn read_source(path: &str) -> Result<String, String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| format!("cannot read stdin: {e}"))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))
    }
}

fn kind_of(c: &Command) -> Kind {
    match c {
        Command::Graph => Kind::Graph,
        Command::Ctame => Kind::Ctame,
        Command::Pipeline => Kind::Pipeline,
        Command::Quotsing { which: Quotsing::Tame } => Kind::QuotsingTame,
        Command::Quotsing { which: Quotsing::Wild } => Kind::QuotsingWild,
        Command::Quotsing { which: Quotsing::Resolve } => Kind::QuotsingResolve,
        Command::Ramification => Kind::Ramification,
        Command::Bcc { which: Bcc::TameGood } => Kind::BccTameGood,
        Command::Bcc { which: Bcc::WildWeak } => Kind::BccWildWeak,
        Command::Bcc { which: Bcc::Eval } => Kind::BccEval,
        Command::Kodaira { .. } => Kind::Kodaira,
        Command::EllipticNu => Kind::EllipticNu,
    }
}

fn kodaira_all() -> Report {
    let jobs = KodairaLabel::representatives()
        .into_iter()
        .map(|l| JobEntry {
            kind: Kind::Kodaira.name().to_string(),
            payload: json!({ "type": l.to_string() }),
            label: l.to_string(),
        })
        .collect();
    batch(&JobFile { version: "1".into(), jobs }, false)
}

fn run(cli: &Cli) -> Result<Report, String> {
    match (&cli.command, &cli.jobs) {
        (Some(_), Some(_)) => Err("--jobs runs a job file; do not combine it with a subcommand".into()),
        (None, None) => Err("give a subcommand or --jobs FILE (see --help)".into()),
        (None, Some(path)) => {
            let text = read_source(path)?;
            let file = parse_job_file(&text).map_err(|e| e.to_string())?;
            Ok(batch(&file, cli.parallel))
        }
        (Some(Command::Kodaira { label: Some(l) }), None) if l.eq_ignore_ascii_case("all") => Ok(kodaira_all()),
        (Some(Command::Kodaira { label: Some(l) }), None) => Ok(single(Kind::Kodaira, json!({ "type": l }))),
        (Some(cmd), None) => {
            let text = read_source(&cli.input)?;
            let payload: Value =
                serde_json::from_str(&text).map_err(|e| format!("cannot parse input JSON: {e}"))?;
            let kind = kind_of(cmd);
            // a report piped in from an earlier run, e.g. `kodaira IV | ctame`
            if let Some((file, skipped)) = from_upstream(kind, &payload) {
                if !matches!(kind, Kind::Graph | Kind::Ctame | Kind::Pipeline) {
                    return Err(format!("{} does not read a piped report; only graph, ctame and pipeline do", kind.name()));
                }
                if file.jobs.is_empty() {
                    return Err("input report carries no graph results".into());
                }
                let mut report = batch(&file, cli.parallel);
                report
                    .warnings
                    .extend(skipped.iter().map(|l| format!("upstream job {l:?} has no graph result; skipped")));
                return Ok(report);
            }
            Ok(single(kind, payload))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            let text = match cli.output {
                Output::Json => report.to_json() + "\n",
                Output::Table => render_table(&report),
            };
            let mut out = std::io::stdout().lock();
            if let Err(e) = out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
                // a closed pipe (`| head`) is not an error worth reporting
                if e.kind() != ErrorKind::BrokenPipe {
                    eprintln!("error: cannot write output: {e}");
                    return ExitCode::from(2);
                }
            }
            if report.all_ok() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
