use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use cyclocode::code::{
    build_cn, build_cn1, build_repetition, min_distance, poly_from_json, poly_to_json,
    weight_distribution, CyclicCode, DEFAULT_BUDGET,
};
use cyclocode::cyclotomic::{cyclotomic_poly, profile};
use cyclocode::verify::{
    conjecture_check, emit_report, has_failures, sweep, write_report, FieldSpec, Format,
    OutputSpec, SweepConfig, VerificationRecord,
};
use cyclocode::{tensor, Error, FieldCtx, Result};

#[derive(Parser)]
#[command(
    name = "cyclocode",
    version,
    about = "Cyclotomic cyclic codes over finite fields"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print Q_n over F_q and the arithmetic profile of n
    Cyclo {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        field: String,
    },
    /// Build and measure single codes
    #[command(subcommand)]
    Code(CodeCommand),
    /// Batch verification
    #[command(subcommand)]
    Verify(VerifyCommand),
    /// Empirical check of the dual distance of C_(n,1)
    #[command(subcommand)]
    Conjecture(ConjectureCommand),
}

#[derive(Subcommand)]
enum CodeCommand {
    /// Print the code descriptor
    Build(CodeArgs),
    /// Print the descriptor of the Euclidean dual
    Dual(CodeArgs),
    /// Exhaustive minimum distance
    Mindist(CodeArgs),
    /// Weight distribution A_0..A_n
    Weights(CodeArgs),
    /// Zeros and nonzeros with respect to the canonical n-th root of unity
    Zeros(CodeArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    /// C_n = <Q_n>
    Cn,
    /// C_(n,1) = <Q_n Q_1>
    Cn1,
    /// repetition code
    Rep,
}

#[derive(Args)]
struct CodeArgs {
    #[arg(long)]
    n: u64,
    #[arg(long)]
    field: String,
    #[arg(long, value_enum, default_value = "cn")]
    kind: Kind,
    /// Explicit generator as a JSON coefficient list, overriding --kind
    #[arg(long)]
    generator: Option<String>,
    /// Use the dual of the selected code
    #[arg(long)]
    dual: bool,
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    budget: u64,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Run every selected check over a grid of fields and lengths
    Sweep {
        #[arg(long)]
        config: PathBuf,
    },
    /// Check Psi(C_n1^perp (x) C_n2^perp) = C_(n1 n2)^perp
    Tensor {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
        #[arg(long)]
        field: String,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
}

#[derive(Subcommand)]
enum ConjectureCommand {
    /// Report observed distances of C_(n,1)^perp for composite n
    Run {
        /// Sweep config; fields, n_range, budget and output are used
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long = "field")]
        fields: Vec<String>,
        #[arg(long)]
        n_max: Option<u64>,
    },
}

enum Failure {
    Input(Error),
    Runtime(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Failure {
        match e {
            Error::Io(_) => Failure::Runtime(e),
            _ => Failure::Input(e),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Runtime(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn print_json(value: &impl serde::Serialize) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string_pretty(value).map_err(|e| Error::Io(e.to_string()))?;
    println!("{text}");
    Ok(())
}

/// `Ok(true)` when nothing failed.
fn run(command: Command) -> std::result::Result<bool, Failure> {
    match command {
        Command::Cyclo { n, field } => {
            let ctx = FieldCtx::from_literal(&field)?;
            let q = cyclotomic_poly(n, &ctx)?;
            print_json(&json!({
                "field": ctx.literal(),
                "n": n,
                "coefficients": poly_to_json(&q),
                "profile": profile(n),
            }))?;
            Ok(true)
        }
        Command::Code(cmd) => code(cmd).map(|()| true),
        Command::Verify(VerifyCommand::Sweep { config }) => {
            let cfg = SweepConfig::from_file(&config)?;
            let records = sweep(&cfg)?;
            report(&records, cfg.output.as_ref())
        }
        Command::Verify(VerifyCommand::Tensor {
            n1,
            n2,
            field,
            budget,
        }) => {
            let ctx = FieldCtx::from_literal(&field)?;
            let record = tensor::verify_tensor_dual(n1, n2, &ctx, budget)?;
            print_json(&record)?;
            Ok(!has_failures(std::slice::from_ref(&record)))
        }
        Command::Conjecture(ConjectureCommand::Run {
            config,
            fields,
            n_max,
        }) => {
            let mut cfg = match config {
                Some(path) => SweepConfig::from_file(&path)?,
                None => SweepConfig {
                    n_range: [2, 24],
                    ..SweepConfig::default()
                },
            };
            if !fields.is_empty() {
                cfg.fields = fields.into_iter().map(FieldSpec::Literal).collect();
            }
            if let Some(hi) = n_max {
                cfg.n_range[1] = hi;
            }
            let records = conjecture_check(&cfg)?;
            report(&records, cfg.output.as_ref())
        }
    }
}

fn report(
    records: &[VerificationRecord],
    output: Option<&OutputSpec>,
) -> std::result::Result<bool, Failure> {
    match output {
        Some(spec) => write_report(records, spec).map_err(Failure::Runtime)?,
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            emit_report(records, Format::Csv, &mut lock).map_err(Failure::Runtime)?;
            lock.flush().map_err(|e| Failure::Runtime(e.into()))?;
        }
    }
    let mut counts = std::collections::BTreeMap::new();
    for r in records {
        *counts.entry(r.status.as_str()).or_insert(0usize) += 1;
    }
    let summary: Vec<String> = counts.iter().map(|(s, c)| format!("{s}={c}")).collect();
    eprintln!("{} rows: {}", records.len(), summary.join(" "));
    Ok(!has_failures(records))
}

fn select_code(args: &CodeArgs) -> Result<(Arc<FieldCtx>, CyclicCode)> {
    let ctx = FieldCtx::from_literal(&args.field)?;
    let code = match &args.generator {
        Some(text) => {
            let values: Vec<serde_json::Value> = serde_json::from_str(text)
                .map_err(|e| Error::ConfigInvalid(format!("generator: {e}")))?;
            let g = poly_from_json(&ctx, &values)?;
            CyclicCode::from_generator(g, args.n as usize)?
        }
        None => match args.kind {
            Kind::Cn => build_cn(args.n, &ctx)?,
            Kind::Cn1 => build_cn1(args.n, &ctx)?,
            Kind::Rep => build_repetition(args.n, &ctx)?,
        },
    };
    let code = if args.dual { code.dual() } else { code };
    Ok((ctx, code))
}

fn code(cmd: CodeCommand) -> std::result::Result<(), Failure> {
    match cmd {
        CodeCommand::Build(args) => {
            let (_, c) = select_code(&args)?;
            print_json(&c.descriptor())
        }
        CodeCommand::Dual(args) => {
            let (_, c) = select_code(&args)?;
            print_json(&c.dual().descriptor())
        }
        CodeCommand::Mindist(args) => {
            let (_, c) = select_code(&args)?;
            let rep = min_distance(&c, args.budget)?;
            print_json(&json!({ "code": c.descriptor(), "report": rep }))
        }
        CodeCommand::Weights(args) => {
            let (_, c) = select_code(&args)?;
            let weights = weight_distribution(&c, args.budget)?;
            print_json(&json!({ "code": c.descriptor(), "weights": weights }))
        }
        CodeCommand::Zeros(args) => {
            let (_, c) = select_code(&args)?;
            let set = c.zeros_and_nonzeros()?;
            print_json(&json!({ "code": c.descriptor(), "defining_set": set }))
        }
    }
}
