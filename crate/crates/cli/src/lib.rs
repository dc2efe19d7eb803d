//! Command dispatch for the `qdt` binary.
//!
//! Exit codes: 0 on success, 1 when the data or a computation is invalid,
//! 2 for usage and IO problems.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use qdt_core::datakit::{
    load_conjunction_csv, load_disjunction_json, render_report, Report, ReportFormat,
};
use qdt_core::entanglement::{entanglement_report, DEFAULT_TOLERANCE};
use qdt_core::interference::{
    expected_interference_magnitude, sample_interference_magnitude_parallel, QuarterLawPrior,
};
use qdt_core::{demo, QdtError, StateVector};

#[derive(Debug, Parser)]
#[command(name = "qdt", about = "Quantum decision theory analyses", version)]
pub struct Cli {
    /// Emit machine-readable JSON with full precision.
    #[arg(long, global = true)]
    json: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Disjunction-effect analyses.
    #[command(subcommand)]
    Disjunction(DisjunctionCmd),
    /// Conjunction-fallacy analyses.
    #[command(subcommand)]
    Conjunction(ConjunctionCmd),
    /// Monte Carlo check of the expected interference magnitude.
    Quarterlaw {
        #[arg(long)]
        samples: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        workers: usize,
    },
    /// Entanglement checks.
    #[command(subcommand)]
    Entangle(EntangleCmd),
    /// Worked illustrations.
    #[command(subcommand)]
    Demo(DemoCmd),
}

#[derive(Debug, Subcommand)]
enum DisjunctionCmd {
    /// Attraction and uncertainty factors from recorded probabilities.
    Analyze { path: PathBuf },
    /// Quarter-law predictions of the act probability.
    Predict { path: PathBuf },
}

#[derive(Debug, Subcommand)]
enum ConjunctionCmd {
    /// Per-row interference terms and their aggregate.
    Analyze {
        path: PathBuf,
        /// Dataset-wide p(X1) for the aggregate fallacy condition.
        #[arg(long = "p-x1")]
        p_x1: Option<f64>,
    },
}

#[derive(Debug, Subcommand)]
enum EntangleCmd {
    /// Schmidt ranks of a state across single-intention cuts.
    Check {
        path: PathBuf,
        #[arg(long, default_value_t = DEFAULT_TOLERANCE)]
        tol: f64,
    },
}

#[derive(Debug, Subcommand)]
enum DemoCmd {
    /// Two friends and two ways of getting rich on a uniform strategic state.
    Friends,
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T, O, E>(argv: I, out: &mut O, err: &mut E) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
    O: Write,
    E: Write,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = out.write_all(text.as_bytes());
                    0
                }
                _ => {
                    let _ = err.write_all(text.as_bytes());
                    2
                }
            };
        }
    };
    match execute(&cli) {
        Ok(text) => match out.write_all(text.as_bytes()).and_then(|_| out.flush()) {
            Ok(()) => 0,
            Err(e) => {
                let _ = writeln!(err, "error: {e}");
                2
            }
        },
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_usage_or_io() {
                2
            } else {
                1
            }
        }
    }
}

fn format_of(cli: &Cli) -> ReportFormat {
    if cli.json {
        ReportFormat::Json
    } else {
        ReportFormat::Text
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    s.push('\n');
    s
}

fn read_state(path: &PathBuf) -> Result<StateVector, QdtError> {
    let text = std::fs::read_to_string(path)?;
    StateVector::from_json(&text)
}

fn execute(cli: &Cli) -> Result<String, QdtError> {
    let format = format_of(cli);
    match &cli.command {
        Command::Disjunction(DisjunctionCmd::Analyze { path }) => {
            let report = Report::Disjunction(load_disjunction_json(path)?.analyze()?);
            Ok(render_report(&report, format))
        }
        Command::Disjunction(DisjunctionCmd::Predict { path }) => {
            let report = Report::Prediction(load_disjunction_json(path)?.predict()?);
            Ok(render_report(&report, format))
        }
        Command::Conjunction(ConjunctionCmd::Analyze { path, p_x1 }) => {
            let mut analysis = load_conjunction_csv(path)?.analyze()?;
            if let Some(p) = p_x1 {
                analysis.summary = analysis.summary.with_aggregate_p_x1(*p)?;
            }
            Ok(render_report(&Report::Conjunction(analysis), format))
        }
        Command::Quarterlaw {
            samples,
            seed,
            workers,
        } => quarterlaw(*samples, *seed, *workers, cli.json),
        Command::Entangle(EntangleCmd::Check { path, tol }) => {
            let state = read_state(path)?;
            let report = entanglement_report(&state, *tol)?;
            if cli.json {
                return Ok(to_json(&report));
            }
            let mut text = format!(
                "entangled: {}\n",
                if report.entangled { "yes" } else { "no" }
            );
            for cut in &report.cuts {
                let sv: Vec<String> = cut
                    .verdict
                    .singular_values
                    .iter()
                    .map(|s| format!("{s:.3}"))
                    .collect();
                text.push_str(&format!(
                    "cut {} | rest: schmidt rank {}  singular values [{}]  tol {:e}\n",
                    cut.intention,
                    cut.verdict.schmidt_rank,
                    sv.join(", "),
                    cut.verdict.tolerance_used
                ));
            }
            Ok(text)
        }
        Command::Demo(DemoCmd::Friends) => {
            let d = demo::friends()?;
            if cli.json {
                return Ok(to_json(&d));
            }
            Ok(friends_text(&d))
        }
    }
}

#[derive(serde::Serialize)]
struct QuarterLawOutput {
    samples: u64,
    seed: u64,
    workers: usize,
    mean: f64,
    std_error: f64,
    analytic: f64,
}

fn quarterlaw(samples: u64, seed: u64, workers: usize, json: bool) -> Result<String, QdtError> {
    if samples == 0 {
        return Err(QdtError::Usage("--samples must be at least 1".into()));
    }
    if workers == 0 {
        return Err(QdtError::Usage("--workers must be at least 1".into()));
    }
    let prior = QuarterLawPrior::even_mixture();
    let summary = sample_interference_magnitude_parallel(seed, &prior, samples, workers)?;
    let out = QuarterLawOutput {
        samples,
        seed,
        workers,
        mean: summary.mean,
        std_error: summary.std_error,
        analytic: expected_interference_magnitude(&prior),
    };
    if json {
        return Ok(to_json(&out));
    }
    Ok(format!(
        "mean = {:.3}  std error = {:.3}  analytic = {:.3}  samples = {}  seed = {}\n",
        out.mean, out.std_error, out.analytic, out.samples, out.seed
    ))
}

fn friends_text(d: &demo::FriendsDemo) -> String {
    let mut s = String::new();
    let a = &d.decomposition_a;
    let strategic: Vec<String> = d.strategic.iter().map(|x| format!("{x:.3}")).collect();
    s.push_str(&format!(
        "strategic state c(AW, AG, BW, BG) = ({})\n",
        strategic.join(", ")
    ));
    s.push_str(&format!(
        "p(A(W+G)) = {:.3}  p(AW) = {:.3}  p(AG) = {:.3}  q = {:.3}  phi = {:.3}\n",
        d.p_a, a.joints[0], a.joints[1], a.q, a.pairwise[0].phi
    ));
    let b = &d.decomposition_b;
    s.push_str(&format!(
        "p(B(W+G)) = {:.3}  p(BW) = {:.3}  p(BG) = {:.3}  q = {:.3}  phi = {:.3}\n",
        d.p_b, b.joints[0], b.joints[1], b.q, b.pairwise[0].phi
    ));
    let ties: Vec<String> = d.optimal.ties.iter().map(usize::to_string).collect();
    s.push_str(&format!(
        "optimal prospect index = {}  ties = [{}]\n",
        d.optimal.index,
        ties.join(", ")
    ));
    let after: Vec<String> = d.after_choosing_a.iter().map(|x| format!("{x:.3}")).collect();
    s.push_str(&format!(
        "after choosing A(W+G): c = ({})  repeat probability = {:.3}\n",
        after.join(", "),
        d.repeat_probability
    ));
    for seq in &d.sequences {
        s.push_str(&format!(
            "sequence {} then {} = {:.3}  reversed = {:.3}\n",
            seq.first, seq.second, seq.forward, seq.reverse
        ));
    }
    let rank = |r: &qdt_core::EntanglementReport| {
        r.cuts.first().map(|c| c.verdict.schmidt_rank).unwrap_or(0)
    };
    s.push_str(&format!(
        "A(W+G) entangled = {} (rank {})  AW+BG entangled = {} (rank {})\n",
        if d.prospect_a_entanglement.entangled { "yes" } else { "no" },
        rank(&d.prospect_a_entanglement),
        if d.bell_entanglement.entangled { "yes" } else { "no" },
        rank(&d.bell_entanglement)
    ));
    s
}
