use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use diagdecomp::json::{matrix_from_json, ring_of, CertificateDoc, JsonElem};
use diagdecomp::product::product_decompose;
use diagdecomp::sharpness::width_table;
use diagdecomp::sum::sum_decompose;
use diagdecomp::waring::{lincomb_two, product_two_squares, waring_two, WaringMode};
use diagdecomp::{with_ring, Error, Hf, Matrix, Mode, Options, RingTag, Strategy};
use serde_json::{json, Value};

mod roundtrip;
mod verify;

#[derive(Parser)]
#[command(name = "diagdecomp", version, about = "Certified decompositions into diagonalizable matrices")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose a matrix and write a certificate.
    Decompose(DecomposeArgs),
    /// Re-check a certificate from scratch.
    Verify {
        file: PathBuf,
    },
    /// Exhaustive width table over a small finite field.
    Sharpness(SharpnessArgs),
    /// Encode/decode random values and compare.
    Roundtrip(RoundtripArgs),
}

#[derive(Args)]
struct DecomposeArgs {
    #[arg(long)]
    mode: String,
    #[arg(long)]
    ring: String,
    #[arg(long)]
    input: PathBuf,
    /// Certificate destination; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    k: Option<u32>,
    #[arg(long, value_delimiter = ',')]
    ks: Option<Vec<u32>>,
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    coeffs: Option<Vec<f64>>,
    #[arg(long, default_value = "auto")]
    strategy: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Field {
    Gf2,
    Gf3,
    Gf4,
}

#[derive(Clone, Copy, ValueEnum)]
enum TableMode {
    Sum,
    Product,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct SharpnessArgs {
    #[arg(long, value_enum)]
    field: Field,
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum)]
    mode: TableMode,
    #[arg(long)]
    jobs: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Args)]
struct RoundtripArgs {
    /// A ring tag, or "all".
    #[arg(long, default_value = "all")]
    ring: String,
    #[arg(long, default_value_t = 1000)]
    count: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// A failure with its exit code.
struct Failure {
    code: u8,
    reason: String,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: 2,
            reason: "usage".into(),
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse(_) | Error::RingMismatch { .. } | Error::ShapeMismatch(_) => 2,
            _ => 3,
        };
        Failure {
            code,
            reason: e.reason().into(),
            message: e.to_string(),
        }
    }
}

type Outcome = Result<u8, Failure>;

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::usage(format!("{} is not valid JSON: {e}", path.display())))
}

fn emit(out: Option<&Path>, payload: &Value) -> Result<(), Failure> {
    let text = serde_json::to_string_pretty(payload).expect("serializable");
    match out {
        None => println!("{text}"),
        Some(p) => fs::write(p, text + "\n").map_err(|e| Failure {
            code: 2,
            reason: "io".into(),
            message: format!("cannot write {}: {e}", p.display()),
        })?,
    }
    Ok(())
}

fn decompose_exact<R: JsonElem>(input: &Value, mode: Mode, opts: &Options) -> Result<Value, Failure> {
    let a: Matrix<R> = matrix_from_json(input)?;
    let d = match mode {
        Mode::Sum => sum_decompose(&a, opts)?,
        Mode::Product => product_decompose(&a, opts)?,
    };
    Ok(CertificateDoc::from_decomposition(&d).to_json())
}

fn decompose_waring(input: &Value, mode: WaringMode, args: &DecomposeArgs, opts: &Options) -> Result<Value, Failure> {
    let a: Matrix<Hf> = matrix_from_json(input)?;
    let k = args.k.unwrap_or(2);
    if k == 0 {
        return Err(Failure::usage("--k must be at least 1"));
    }
    let w = match mode {
        WaringMode::Sum | WaringMode::Product => waring_two(&a, k, mode, opts)?,
        WaringMode::Squares => product_two_squares(&a, opts)?,
        WaringMode::Lincomb => {
            let ks = match args.ks.as_deref() {
                None => [k, k],
                Some([k1, k2]) => [*k1, *k2],
                Some(_) => return Err(Failure::usage("--ks takes exactly two exponents")),
            };
            let coeffs = match args.coeffs.as_deref() {
                None => [1.0, 1.0],
                Some([c1, c2]) => [*c1, *c2],
                Some(_) => return Err(Failure::usage("--coeffs takes exactly two values")),
            };
            lincomb_two(&a, ks, coeffs, opts)?
        }
    };
    Ok(CertificateDoc::from_witness(&w).to_json())
}

fn decompose(args: &DecomposeArgs) -> Outcome {
    let ring = RingTag::parse(&args.ring)
        .ok_or_else(|| Failure::usage(format!("unknown ring {:?}", args.ring)))?;
    let strategy = Strategy::parse(&args.strategy)
        .ok_or_else(|| Failure::usage(format!("unknown strategy {:?}", args.strategy)))?;
    let opts = Options {
        strategy,
        seed: args.seed,
        central_skip: 0,
    };
    let input = read_json(&args.input)?;
    let found = ring_of(&input)?;
    if found != ring {
        return Err(Error::RingMismatch {
            expected: ring,
            found,
        }
        .into());
    }
    let payload = match args.mode.as_str() {
        "sum" | "product" => {
            let mode = if args.mode == "sum" { Mode::Sum } else { Mode::Product };
            with_ring!(ring, R => decompose_exact::<R>(&input, mode, &opts)?)
        }
        other => {
            let mode = WaringMode::parse(other)
                .ok_or_else(|| Failure::usage(format!("unknown mode {other:?}")))?;
            if ring != RingTag::Hf {
                return Err(Error::UnsupportedRing(ring).into());
            }
            decompose_waring(&input, mode, args, &opts)?
        }
    };
    emit(args.out.as_deref(), &payload)?;
    if args.out.is_some() {
        let parts = payload["parts"].as_array().map_or(0, Vec::len);
        println!("{}", json!({"status": "ok", "mode": args.mode, "parts": parts}));
    }
    Ok(0)
}

fn sharpness(args: &SharpnessArgs) -> Outcome {
    if let Some(j) = args.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(j.max(1))
            .build_global()
            .map_err(|e| Failure::usage(e.to_string()))?;
    }
    let mode = match args.mode {
        TableMode::Sum => Mode::Sum,
        TableMode::Product => Mode::Product,
    };
    let tag = match args.field {
        Field::Gf2 => RingTag::Gf2,
        Field::Gf3 => RingTag::Gf3,
        Field::Gf4 => RingTag::Gf4,
    };
    let (json, csv) = with_ring!(tag, R => {
        let t = width_table::<R>(args.n, mode)?;
        (t.to_json(), t.to_csv())
    });
    match args.format {
        Format::Json => emit(None, &json)?,
        Format::Csv => print!("{csv}"),
    }
    Ok(0)
}

fn run(cli: Cli) -> Outcome {
    match cli.command {
        Command::Decompose(a) => decompose(&a),
        Command::Verify { file } => {
            let doc = read_json(&file)?;
            let report = verify::verify_document(&doc)?;
            emit(None, &report)?;
            Ok(if report["ok"] == json!(true) { 0 } else { 1 })
        }
        Command::Sharpness(a) => sharpness(&a),
        Command::Roundtrip(a) => {
            let tags = if a.ring == "all" {
                RingTag::ALL.to_vec()
            } else {
                vec![RingTag::parse(&a.ring)
                    .ok_or_else(|| Failure::usage(format!("unknown ring {:?}", a.ring)))?]
            };
            let report = roundtrip::run(&tags, a.count, a.seed);
            let ok = report["ok"] == json!(true);
            emit(None, &report)?;
            Ok(if ok { 0 } else { 1 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            eprintln!("{}", json!({"error": "usage", "message": e.to_string().trim()}));
            return ExitCode::from(2);
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("{}", json!({"error": f.reason, "message": f.message}));
            ExitCode::from(f.code)
        }
    }
}
