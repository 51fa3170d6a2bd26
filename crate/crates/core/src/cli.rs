//! Command-line front end. [`run`] is the whole program minus process exit,
//! so tests can drive it with in-memory streams.

use std::ffi::OsString;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::aggregation::{aggregate, AggregateOptions, Method};
use crate::diagnostics::{check_problem, compare_methods, invariance_trial, InvarianceReport};
use crate::error::Error;
use crate::io::{
    emit_plot_data, parse_problem, write_result, InputFormat, OutputFormat, ParseOptions,
    ProblemDocument, Report,
};
use crate::lps::DegeneratePolicy;

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_NOT_COMPARABLE: i32 = 3;

/// Environment variable consulted when `--seed` is absent.
pub const SEED_ENV: &str = "PFM_RANK_SEED";

#[derive(Debug, Parser)]
#[command(
    name = "pfm-rank",
    version,
    about = "Rank alternatives by the weighted centroid of z-normalized preferences"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Score and rank alternatives with one method (P* by default).
    Rank {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "pstar")]
        method: String,
    },
    /// Rank with several methods side by side.
    Compare {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        methods: Vec<String>,
    },
    /// Report scale comparability and centroid equilibrium residuals.
    Check {
        #[command(flatten)]
        common: Common,
    },
    /// Count ranking changes under random positive affine rescalings.
    Fuzz {
        #[command(flatten)]
        common: Common,
        #[arg(long, value_delimiter = ',', default_value = "all")]
        methods: Vec<String>,
        #[arg(long, default_value_t = 1000)]
        trials: usize,
        /// Falls back to the PFM_RANK_SEED environment variable, then 0.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Emit per-alternative z-points, weights and P* for plotting.
    PlotData {
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Debug, Args)]
struct Common {
    /// Problem file, or `-` for stdin.
    input: String,
    /// Input format; guessed from the extension or content when omitted.
    #[arg(long, value_enum)]
    format: Option<InFmt>,
    #[arg(long, value_enum)]
    out: Option<OutFmt>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, default_value_t = crate::aggregation::DEFAULT_TIE_TOL)]
    tie_tol: f64,
    #[arg(long, value_enum, default_value_t = Degenerate::Reject)]
    degenerate: Degenerate,
    /// Rescale weights to sum to 1 instead of rejecting them.
    #[arg(long)]
    normalize_weights: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum InFmt {
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum OutFmt {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Degenerate {
    Reject,
    Zero,
}

enum Failure {
    Input(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

impl Common {
    fn options(&self) -> Result<AggregateOptions, Failure> {
        if !(self.tie_tol.is_finite() && self.tie_tol >= 0.0) {
            return Err(Failure::Input(format!(
                "--tie-tol must be finite and non-negative, got {}",
                self.tie_tol
            )));
        }
        Ok(AggregateOptions {
            tie_tol: self.tie_tol,
            degenerate: match self.degenerate {
                Degenerate::Reject => DegeneratePolicy::Reject,
                Degenerate::Zero => DegeneratePolicy::Zero,
            },
        })
    }

    fn out_format(&self, default: OutputFormat) -> OutputFormat {
        match self.out {
            None => default,
            Some(OutFmt::Text) => OutputFormat::Text,
            Some(OutFmt::Json) => OutputFormat::Json,
            Some(OutFmt::Csv) => OutputFormat::Csv,
        }
    }

    fn load(&self, stdin: &mut dyn Read) -> Result<ProblemDocument, Failure> {
        let mut bytes = Vec::new();
        let path = if self.input == "-" {
            stdin
                .read_to_end(&mut bytes)
                .map_err(|e| Failure::Input(format!("cannot read stdin: {e}")))?;
            None
        } else {
            bytes = std::fs::read(&self.input)
                .map_err(|e| Failure::Input(format!("cannot read '{}': {e}", self.input)))?;
            Some(self.input.as_str())
        };
        let format = match self.format {
            Some(InFmt::Csv) => InputFormat::Csv,
            Some(InFmt::Json) => InputFormat::Json,
            None => InputFormat::detect(path, &bytes),
        };
        let opts = ParseOptions {
            normalize_weights: self.normalize_weights,
        };
        Ok(parse_problem(&bytes, format, &opts)?)
    }

    fn emit(
        &self,
        report: &dyn Report,
        format: OutputFormat,
        stdout: &mut dyn Write,
    ) -> Result<(), Failure> {
        let bytes = write_result(report, format);
        match &self.output {
            Some(path) => std::fs::write(path, bytes)
                .map_err(|e| Failure::Internal(format!("cannot write '{}': {e}", path.display()))),
            None => stdout
                .write_all(&bytes)
                .map_err(|e| Failure::Internal(format!("cannot write output: {e}"))),
        }
    }
}

fn parse_methods(names: &[String]) -> Result<Vec<Method>, Failure> {
    if names.iter().any(|n| n.eq_ignore_ascii_case("all")) {
        return Ok(Method::ALL.to_vec());
    }
    names
        .iter()
        .map(|n| Ok(Method::from_str(n.trim())?))
        .collect()
}

fn resolve_seed(flag: Option<u64>) -> Result<u64, Failure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match std::env::var(SEED_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Failure::Input(format!("{SEED_ENV}='{v}' is not an unsigned integer"))),
        Err(_) => Ok(0),
    }
}

fn dispatch(
    cli: Cli,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> Result<i32, Failure> {
    match cli.command {
        Command::Rank { common, method } => {
            let method = Method::from_str(&method)?;
            let opts = common.options()?;
            let doc = common.load(stdin)?;
            let result = aggregate(&doc.matrix, &doc.weights, method, &opts)?;
            let format = common.out_format(OutputFormat::Text);
            if format != OutputFormat::Text {
                for w in &result.warnings {
                    let _ = writeln!(stderr, "warning: {w}");
                }
            }
            common.emit(&result, format, stdout)?;
            Ok(EXIT_OK)
        }
        Command::Compare { common, methods } => {
            let methods = parse_methods(&methods)?;
            let opts = common.options()?;
            let doc = common.load(stdin)?;
            let report = compare_methods(&doc.matrix, &doc.weights, &methods, &opts)?;
            common.emit(&report, common.out_format(OutputFormat::Text), stdout)?;
            Ok(EXIT_OK)
        }
        Command::Check { common } => {
            let opts = common.options()?;
            let doc = common.load(stdin)?;
            let report = check_problem(&doc.matrix, &doc.weights, &opts)?;
            common.emit(&report, common.out_format(OutputFormat::Text), stdout)?;
            if report.comparability.comparable {
                Ok(EXIT_OK)
            } else {
                let _ = writeln!(stderr, "warning: criterion scales are not comparable");
                Ok(EXIT_NOT_COMPARABLE)
            }
        }
        Command::Fuzz {
            common,
            methods,
            trials,
            seed,
        } => {
            let methods = parse_methods(&methods)?;
            let seed = resolve_seed(seed)?;
            let opts = common.options()?;
            let doc = common.load(stdin)?;
            let reports = methods
                .iter()
                .map(|&m| invariance_trial(&doc.matrix, &doc.weights, m, trials, seed, &opts))
                .collect::<Result<Vec<InvarianceReport>, Error>>()?;
            common.emit(&reports, common.out_format(OutputFormat::Text), stdout)?;
            Ok(EXIT_OK)
        }
        Command::PlotData { common } => {
            let opts = common.options()?;
            let doc = common.load(stdin)?;
            let plot = emit_plot_data(&doc.matrix, &doc.weights, opts.degenerate)?;
            common.emit(&plot, common.out_format(OutputFormat::Json), stdout)?;
            Ok(EXIT_OK)
        }
    }
}

/// Parses `args` (including the program name) and runs the command,
/// returning the process exit code.
pub fn run<I, T>(
    args: I,
    stdin: &mut dyn Read,
    stdout: &mut dyn Write,
    stderr: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_INPUT
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    match dispatch(cli, stdin, stdout, stderr) {
        Ok(code) => code,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INPUT
        }
        Err(Failure::Internal(msg)) => {
            let _ = writeln!(stderr, "error: {msg}");
            EXIT_INTERNAL
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SEC3: &str =
        "a,C1,C2,C3\nA1,100,0,90\nA2,0,100,100\nA3,20,45,55\nA4,85,60,0\nweights,0.4,0.1,0.5\n";

    fn run_stdin(args: &[&str], input: &str) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("pfm-rank").chain(args.iter().copied());
        let code = run(argv, &mut input.as_bytes(), &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn rank_from_stdin() {
        let (code, out, _) = run_stdin(&["rank", "-"], SEC3);
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("Ranking: A1 ≻ A2 ≻ A3 ≻ A4"), "{out}");
    }

    #[test]
    fn unknown_method_is_an_input_error() {
        let (code, _, err) = run_stdin(&["compare", "-", "--methods", "pstar,topsis"], SEC3);
        assert_eq!(code, EXIT_INPUT);
        assert!(err.contains("topsis"));
    }

    #[test]
    fn check_flags_incomparable_scales() {
        let (code, out, _) = run_stdin(&["check", "-"], SEC3);
        assert_eq!(code, EXIT_OK, "{out}");
        let (code, _, _) = run_stdin(
            &["check", "-"],
            "a,C1,C2\nA1,1,5\nA2,2,9\nweights,0.5,0.5\n",
        );
        assert_eq!(code, EXIT_NOT_COMPARABLE);
    }

    #[test]
    fn bad_flags_and_bad_input_exit_with_two() {
        assert_eq!(run_stdin(&["rank"], SEC3).0, EXIT_INPUT);
        assert_eq!(
            run_stdin(&["rank", "-", "--tie-tol", "-1"], SEC3).0,
            EXIT_INPUT
        );
        assert_eq!(
            run_stdin(&["rank", "-"], "a,C1\nA1,1\nweights,1\n").0,
            EXIT_INPUT
        );
        assert_eq!(
            run_stdin(&["rank", "/nonexistent/problem.csv"], "").0,
            EXIT_INPUT
        );
    }

    #[test]
    fn fuzz_seed_flag_wins() {
        let args = [
            "fuzz",
            "-",
            "--methods",
            "wam",
            "--trials",
            "20",
            "--seed",
            "5",
            "--out",
            "json",
        ];
        let (code, a, _) = run_stdin(&args, SEC3);
        let (_, b, _) = run_stdin(&args, SEC3);
        assert_eq!(code, EXIT_OK);
        assert_eq!(a, b);
        assert!(a.contains("\"seed\": 5"));
    }

    #[test]
    fn help_goes_to_stdout() {
        let (code, out, _) = run_stdin(&["--help"], "");
        assert_eq!(code, EXIT_OK);
        assert!(out.contains("plot-data"));
    }
}
