//! Command-line front end: parse expressions, build and combine matrix
//! factorizations, verify files, and benchmark the size-reducing algorithm.
//!
//! Exit codes: 0 success, 1 parse error or malformed input, 2 verification
//! failure, 3 I/O error. Identical invocations produce byte-identical
//! output; `MFKIT_THREADS` caps `bench` parallelism (default 1).

use std::fmt::Display;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use mfkit_core::expr;
use mfkit_core::reducer::{
    self, CompareOptions, FactorOptions, InstanceReport, InstanceShape, ReduceError,
};
use mfkit_core::schema;
use mfkit_core::tensor::{mult_with, yoshino_with, MultVariant, YoshinoVariant};
use mfkit_core::{FactorError, MatrixFactorization};

const EXIT_PARSE: u8 = 1;
const EXIT_VERIFY: u8 = 2;
const EXIT_IO: u8 = 3;

#[derive(Parser)]
#[command(name = "mfkit", version, about = "Exact matrix factorizations of polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Factor a polynomial expression.
    Factor(FactorArgs),
    /// Check that a factorization file satisfies phi*psi = psi*phi = f*I.
    Verify {
        /// Factorization JSON file.
        path: PathBuf,
    },
    /// Combine two factorization files with a tensor product.
    Tensor(TensorArgs),
    /// Compare the standard and improved methods on one expression.
    Compare(CompareArgs),
    /// Generate random summand-reduced instances and measure both methods.
    Bench(BenchArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Standard,
    Improved,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum BenchFormat {
    Csv,
    Json,
}

#[derive(Args)]
struct FactorArgs {
    /// Polynomial expression, e.g. "xy + (x^2+z^2)(xy+x^2z+yz^2)".
    expr: String,
    #[arg(long, value_enum, default_value = "improved")]
    method: Method,
    /// Additive tensor product variant (0 = plain, 1..3 = rotations).
    #[arg(long, default_value_t = 0)]
    yoshino_variant: u8,
    /// Multiplicative tensor product variant (0 = diagonal, 1 = anti-diagonal).
    #[arg(long, default_value_t = 0)]
    mult_variant: u8,
    /// Expand product terms that cannot win before factoring.
    #[arg(long)]
    auto_expand: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
    /// Also write the factorization JSON to this file.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Render matrices as text even above the 64-row cutoff.
    #[arg(long)]
    force_text: bool,
    /// Refuse to build factorizations larger than this.
    #[arg(long, default_value_t = 4096)]
    max_size: u128,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TensorOp {
    /// Additive product: a factorization of f + g.
    Add,
    /// Multiplicative product: a factorization of f * g.
    Mul,
}

#[derive(Args)]
struct TensorArgs {
    op: TensorOp,
    /// Left factorization JSON file.
    lhs: PathBuf,
    /// Right factorization JSON file.
    rhs: PathBuf,
    #[arg(long, default_value_t = 0)]
    yoshino_variant: u8,
    #[arg(long, default_value_t = 0)]
    mult_variant: u8,
    /// Write the result here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CompareArgs {
    expr: String,
    #[arg(long, default_value_t = 0)]
    yoshino_variant: u8,
    #[arg(long, default_value_t = 0)]
    mult_variant: u8,
    #[arg(long)]
    auto_expand: bool,
    /// Largest standard-method factorization to actually build and verify.
    #[arg(long, default_value_t = 64)]
    build_standard_limit: u128,
}

#[derive(Args)]
struct BenchArgs {
    /// First seed; instance i uses seed + i.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Number of instances.
    #[arg(long, default_value_t = 1)]
    count: u64,
    /// Number of monomial terms (s).
    #[arg(long, default_value_t = 1)]
    s: usize,
    /// Factor monomial counts: factors of a product joined by ',' or '|',
    /// products joined by ';' (e.g. "3,2;3,3").
    #[arg(long, default_value = "3,2")]
    p: String,
    /// Variable alphabet.
    #[arg(long, default_value = "xyz")]
    vars: String,
    #[arg(long, default_value_t = 3)]
    max_deg: u32,
    #[arg(long, default_value_t = 0)]
    yoshino_variant: u8,
    #[arg(long, default_value_t = 0)]
    mult_variant: u8,
    #[arg(long, value_enum, default_value = "csv")]
    format: BenchFormat,
}

struct Failure {
    code: u8,
    message: String,
}

fn fail(code: u8, message: impl Display) -> Failure {
    Failure { code, message: message.to_string() }
}

impl From<ReduceError> for Failure {
    fn from(e: ReduceError) -> Self {
        match e {
            ReduceError::EmptyInput | ReduceError::ShapeInfeasible(_) => fail(EXIT_PARSE, e),
            ReduceError::Factor(_) | ReduceError::Tensor(_) => fail(EXIT_VERIFY, e),
        }
    }
}

fn main() -> ExitCode {
    // die quietly when a pager or `head` closes our stdout
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Factor(args) => cmd_factor(args),
        Command::Verify { path } => cmd_verify(&path),
        Command::Tensor(args) => cmd_tensor(args),
        Command::Compare(args) => cmd_compare(args),
        Command::Bench(args) => cmd_bench(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, message }) => {
            eprintln!("error: {message}");
            ExitCode::from(code)
        }
    }
}

fn parse_options(yoshino: u8, mult: u8, auto_expand: bool) -> Result<FactorOptions, Failure> {
    Ok(FactorOptions {
        yoshino: YoshinoVariant::from_index(yoshino).map_err(|e| fail(EXIT_PARSE, e))?,
        mult: MultVariant::from_index(mult).map_err(|e| fail(EXIT_PARSE, e))?,
        auto_expand,
    })
}

fn write_out(path: &Path, contents: &str) -> Result<(), Failure> {
    std::fs::write(path, contents)
        .map_err(|e| fail(EXIT_IO, format!("cannot write {}: {e}", path.display())))
}

fn cmd_factor(args: FactorArgs) -> Result<(), Failure> {
    let sf = expr::parse(&args.expr).map_err(|e| fail(EXIT_PARSE, e))?;
    let options = parse_options(args.yoshino_variant, args.mult_variant, args.auto_expand)?;
    let prediction = expr::predict_sizes(&sf);

    let planned = match args.method {
        Method::Standard => prediction.standard_size,
        Method::Improved => prediction.improved_size,
    };
    if planned > args.max_size {
        return Err(fail(
            EXIT_PARSE,
            format!("requested factorization has size {planned}, above --max-size {}", args.max_size),
        ));
    }

    let mf = match args.method {
        Method::Standard => MatrixFactorization::standard_for_polynomial(&sf.expand())
            .map_err(|e| fail(EXIT_VERIFY, e))?,
        Method::Improved => reducer::improved_factorize(&sf, &options)?.0,
    };

    let json = schema::to_json(&mf);
    if let Some(path) = &args.out {
        write_out(path, &json)?;
    }
    match args.format {
        Format::Json => print!("{json}"),
        Format::Text => {
            if mf.size() > 64 && !args.force_text {
                print!("{json}");
            } else {
                println!("{mf}");
                println!(
                    "standard_size = {}\nimproved_size = {}\nratio = {}\ncancellation = {}",
                    prediction.standard_size,
                    prediction.improved_size,
                    prediction.ratio,
                    prediction.cancellation
                );
            }
        }
    }
    Ok(())
}

fn cmd_verify(path: &Path) -> Result<(), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    let raw = schema::from_json(&text).map_err(|e| fail(EXIT_PARSE, e))?;
    let report = mfkit_core::factorization::verify_pair(&raw.phi, &raw.psi, &raw.f);
    match report.mismatch {
        None => {
            println!("ok: both products equal f*I for f = {}", raw.f);
            Ok(())
        }
        Some(m) => Err(fail(EXIT_VERIFY, format!("verification failed: {m}"))),
    }
}

fn load_verified(path: &Path) -> Result<MatrixFactorization, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| fail(EXIT_IO, format!("cannot read {}: {e}", path.display())))?;
    let raw = schema::from_json(&text).map_err(|e| fail(EXIT_PARSE, e))?;
    raw.into_verified()
        .map_err(|e: FactorError| fail(EXIT_VERIFY, format!("{}: {e}", path.display())))
}

fn cmd_tensor(args: TensorArgs) -> Result<(), Failure> {
    let lhs = load_verified(&args.lhs)?;
    let rhs = load_verified(&args.rhs)?;
    let result = match args.op {
        TensorOp::Add => {
            let v = YoshinoVariant::from_index(args.yoshino_variant)
                .map_err(|e| fail(EXIT_PARSE, e))?;
            yoshino_with(&lhs, &rhs, v)
        }
        TensorOp::Mul => {
            let v =
                MultVariant::from_index(args.mult_variant).map_err(|e| fail(EXIT_PARSE, e))?;
            mult_with(&lhs, &rhs, v)
        }
    }
    .map_err(|e| fail(EXIT_VERIFY, e))?;

    let json = schema::to_json(&result);
    match &args.out {
        Some(path) => {
            write_out(path, &json)?;
            println!("f = {}", result.target());
            println!("size = {}", result.size());
            println!("wrote {}", path.display());
        }
        None => print!("{json}"),
    }
    Ok(())
}

fn cmd_compare(args: CompareArgs) -> Result<(), Failure> {
    let sf = expr::parse(&args.expr).map_err(|e| fail(EXIT_PARSE, e))?;
    let opts = CompareOptions {
        options: parse_options(args.yoshino_variant, args.mult_variant, args.auto_expand)?,
        build_standard_limit: args.build_standard_limit,
    };
    let report = reducer::compare_methods(&sf, &opts)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    print!("{text}");
    Ok(())
}

fn parse_shape(args: &BenchArgs) -> Result<InstanceShape, Failure> {
    let mut factor_monomials = Vec::new();
    for group in args.p.split(';').filter(|g| !g.trim().is_empty()) {
        let counts: Result<Vec<usize>, _> = group
            .split([',', '|'])
            .map(|t| t.trim().parse::<usize>())
            .collect();
        factor_monomials
            .push(counts.map_err(|e| fail(EXIT_PARSE, format!("bad --p value {group:?}: {e}")))?);
    }
    Ok(InstanceShape {
        monomial_terms: args.s,
        factor_monomials,
        vars: args.vars.chars().collect(),
        max_degree: args.max_deg,
    })
}

fn thread_cap() -> usize {
    std::env::var("MFKIT_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or(1)
}

fn csv_shape_columns(shape: &InstanceShape) -> (String, String, String, String) {
    let s = shape.monomial_terms.to_string();
    let l = shape.factor_monomials.len().to_string();
    let m = shape
        .factor_monomials
        .iter()
        .map(|fs| fs.len().to_string())
        .collect::<Vec<_>>()
        .join("|");
    let p = shape
        .factor_monomials
        .iter()
        .map(|fs| fs.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("|"))
        .collect::<Vec<_>>()
        .join(";");
    (s, l, m, p)
}

fn cmd_bench(args: BenchArgs) -> Result<(), Failure> {
    let shape = parse_shape(&args)?;
    let options = parse_options(args.yoshino_variant, args.mult_variant, false)?;
    let seeds: Vec<u64> = (0..args.count).map(|i| args.seed + i).collect();

    let threads = thread_cap().min(seeds.len().max(1));
    let mut results: Vec<Option<Result<InstanceReport, ReduceError>>> = Vec::new();
    results.resize_with(seeds.len(), || None);
    if threads <= 1 {
        for (slot, &seed) in results.iter_mut().zip(&seeds) {
            *slot = Some(reducer::run_instance(seed, &shape, &options));
        }
    } else {
        let chunk = seeds.len().div_ceil(threads);
        std::thread::scope(|scope| {
            for (slots, seed_chunk) in results.chunks_mut(chunk).zip(seeds.chunks(chunk)) {
                let shape = &shape;
                let options = &options;
                scope.spawn(move || {
                    for (slot, &seed) in slots.iter_mut().zip(seed_chunk) {
                        *slot = Some(reducer::run_instance(seed, shape, options));
                    }
                });
            }
        });
    }

    let mut reports = Vec::with_capacity(results.len());
    for r in results {
        reports.push(r.expect("every slot filled")?);
    }

    match args.format {
        BenchFormat::Json => {
            let mut text = serde_json::to_string_pretty(&reports).expect("reports serialize");
            text.push('\n');
            print!("{text}");
        }
        BenchFormat::Csv => {
            let (s, l, m, p) = csv_shape_columns(&shape);
            println!("seed,s,l,m,p,standard_size,improved_size,ratio,verified");
            for r in &reports {
                println!(
                    "{},{s},{l},{m},{p},{},{},{},{}",
                    r.seed, r.standard_size, r.improved_size, r.ratio, r.verified
                );
            }
        }
    }
    Ok(())
}
