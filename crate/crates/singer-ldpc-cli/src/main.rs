//! Command-line surface for the Singer-orbit LDPC constructions.
//!
//! All machine-readable output is JSON, one object per line on stdout;
//! human-readable summaries go to stderr. Errors print a one-line
//! `{"error": ...}` object and exit nonzero.

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use std::path::{Path, PathBuf};

use singer_ldpc::codec::decode_bit_flip;
use singer_ldpc::galois::DEFAULT_SIZE_GUARD;
use singer_ldpc::orbits::{decompose_lines, starter_set, StarterSet};
use singer_ldpc::pcm::{
    assemble, build_report, export_alist, import_alist, ldpc_check, pg1_matrix,
    verify_circulant_blocks, AssembledMatrix, BlockInfo, LdpcReport, MatrixReport,
    SparseBinaryMatrix,
};
use singer_ldpc::projgeom::{PointIndex, ProjectiveSpace};
use singer_ldpc::quadrics::{singer_quadric, starter_from_quadric};

const SIZE_GUARD_ENV: &str = "SINGER_LDPC_SIZE_GUARD";

#[derive(Parser)]
#[command(
    name = "singer-ldpc",
    about = "Regular LDPC parity-check matrices from Singer line orbits of PG(n-1,q)"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a parity-check matrix; write an alist file and a JSON report
    Construct(ConstructArgs),
    /// Check an alist file and print its structural report
    Verify(VerifyArgs),
    /// Print the Singer line-orbit decomposition and a starter set
    Orbits(OrbitsArgs),
    /// Bit-flip decode a 0/1 word against an alist matrix
    Decode(DecodeArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    /// Full point-line incidence matrix, rows in lexicographic order
    Full,
    /// Orbit-block matrix from the algebraic starter set, n odd
    StarterOdd,
    /// Orbit-block matrix with the short spread block, n even
    StarterEven,
    /// Orbit-block matrix from the tangent lines of an elliptic quadric
    Quadric,
}

#[derive(Args)]
struct ConstructArgs {
    /// Field order (prime power)
    #[arg(long)]
    q: u64,
    /// Ambient vector-space dimension; the space is PG(n-1,q)
    #[arg(long)]
    n: u32,
    #[arg(long, value_enum)]
    method: Method,
    /// Base point for starter-set enumeration
    #[arg(long, default_value_t = 0)]
    base_point: u32,
    /// Seed point for the quadric orbit (quadric method only)
    #[arg(long, default_value_t = 0)]
    seed_point: u32,
    /// Output alist path
    #[arg(long)]
    out: PathBuf,
    /// Report/sidecar path; defaults to "<out>.json"
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct VerifyArgs {
    /// alist file to check
    matrix: PathBuf,
    /// Also verify the block-circulant structure from the JSON sidecar
    #[arg(long)]
    expect_circulant: bool,
}

#[derive(Args)]
struct OrbitsArgs {
    #[arg(long)]
    q: u64,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value_t = 0)]
    base_point: u32,
}

#[derive(Args)]
struct DecodeArgs {
    /// alist file with the parity-check matrix
    matrix: PathBuf,
    /// text file holding a 0/1 word (whitespace ignored)
    word: PathBuf,
    #[arg(long, default_value_t = 50)]
    max_iter: usize,
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            println!("{}", serde_json::json!({ "error": e.to_string() }));
            eprintln!("error: {e:#}");
            std::process::exit(1);
        }
    }
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Construct(args) => construct(args),
        Command::Verify(args) => verify(args),
        Command::Orbits(args) => orbits(args),
        Command::Decode(args) => decode(args),
    }
}

fn size_guard() -> Result<u64> {
    match std::env::var(SIZE_GUARD_ENV) {
        Ok(v) => v
            .parse::<u64>()
            .map_err(|_| anyhow!("{SIZE_GUARD_ENV} must be an integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_SIZE_GUARD),
    }
}

fn make_space(q: u64, n: u32) -> Result<ProjectiveSpace> {
    Ok(ProjectiveSpace::with_guard(q, n, size_guard()?)?)
}

fn construct(args: ConstructArgs) -> Result<()> {
    let (q, n) = (args.q, args.n);
    if n < 2 {
        bail!("n must be at least 2");
    }
    match args.method {
        Method::StarterOdd if n % 2 == 0 => bail!("method starter-odd requires odd n"),
        Method::StarterEven if n % 2 == 1 => bail!("method starter-even requires even n"),
        Method::Quadric if n != 4 => bail!("method quadric requires n = 4"),
        Method::Quadric if ![2, 4, 8, 16].contains(&q) => {
            bail!("method quadric requires q in {{2, 4, 8, 16}}")
        }
        _ => {}
    }
    let space = make_space(q, n)?;

    let (matrix, blocks) = match args.method {
        Method::Full => (pg1_matrix(&space), Vec::new()),
        Method::StarterOdd | Method::StarterEven => {
            let starter = starter_set(&space, PointIndex(args.base_point))?;
            assembled(&space, &starter)?
        }
        Method::Quadric => {
            let quad = singer_quadric(&space, PointIndex(args.seed_point))?;
            let starter = starter_from_quadric(&space, &quad, PointIndex(args.seed_point))?;
            assembled(&space, &starter)?
        }
    };

    let report = build_report(n, q, &matrix, &blocks);
    let report_path = args
        .report
        .unwrap_or_else(|| sidecar_path(&args.out));
    write_text(&args.out, &export_alist(&matrix))?;
    write_text(&report_path, &(serde_json::to_string(&report)? + "\n"))?;

    println!("{}", serde_json::to_string(&report)?);
    eprintln!(
        "PG({},{}) {}: {} x {} matrix, girth {}, wrote {} and {}",
        n - 1,
        q,
        method_name(args.method),
        matrix.num_rows(),
        matrix.num_cols(),
        girth_display(report.girth),
        args.out.display(),
        report_path.display()
    );
    Ok(())
}

fn method_name(m: Method) -> &'static str {
    match m {
        Method::Full => "full",
        Method::StarterOdd => "starter-odd",
        Method::StarterEven => "starter-even",
        Method::Quadric => "quadric",
    }
}

fn girth_display(girth: Option<usize>) -> String {
    girth.map_or_else(|| "none".to_string(), |g| g.to_string())
}

fn assembled(
    space: &ProjectiveSpace,
    starter: &StarterSet,
) -> Result<(SparseBinaryMatrix, Vec<BlockInfo>)> {
    let orbits = decompose_lines(space);
    let am = assemble(space, starter, &orbits)?;
    if !verify_circulant_blocks(&am) {
        bail!("internal structural check failed: orbit blocks are not circulant");
    }
    Ok((am.matrix, am.blocks))
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut os = out.as_os_str().to_owned();
    os.push(".json");
    PathBuf::from(os)
}

fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    report: LdpcReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    circulant_ok: Option<bool>,
}

fn verify(args: VerifyArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.matrix)
        .with_context(|| format!("reading {}", args.matrix.display()))?;
    let matrix = import_alist(&text)?;
    let report = ldpc_check(&matrix);
    let circulant_ok = if args.expect_circulant {
        let sidecar = sidecar_path(&args.matrix);
        let meta: MatrixReport = serde_json::from_str(
            &std::fs::read_to_string(&sidecar)
                .with_context(|| format!("reading sidecar {}", sidecar.display()))?,
        )
        .with_context(|| format!("parsing sidecar {}", sidecar.display()))?;
        let mut blocks = Vec::new();
        let mut start_row = 0usize;
        for b in &meta.blocks {
            blocks.push(BlockInfo {
                start_row,
                num_rows: b.rows,
                circulant: b.circulant,
                orbit_length: b.orbit_length,
            });
            start_row += b.rows;
        }
        let am = AssembledMatrix {
            matrix: matrix.clone(),
            blocks,
        };
        Some(verify_circulant_blocks(&am))
    } else {
        None
    };

    let out = VerifyOutput {
        report,
        circulant_ok,
    };
    println!("{}", serde_json::to_string(&out)?);
    eprintln!(
        "{} x {} matrix, max column overlap {}, girth {}",
        out.report.num_rows,
        out.report.num_cols,
        out.report.max_col_overlap,
        girth_display(out.report.girth)
    );
    if circulant_ok == Some(false) {
        bail!("circulant structure check failed");
    }
    Ok(())
}

#[derive(Serialize)]
struct OrbitsOutput {
    q: u64,
    n: u32,
    num_orbits: usize,
    orbits: Vec<u64>,
    starter: Vec<Vec<u32>>,
    base_point: u32,
}

fn orbits(args: OrbitsArgs) -> Result<()> {
    if args.n < 3 {
        bail!("orbit decomposition requires n >= 3");
    }
    let space = make_space(args.q, args.n)?;
    let decomposition = decompose_lines(&space);
    let starter = starter_set(&space, PointIndex(args.base_point))?;
    let out = OrbitsOutput {
        q: args.q,
        n: args.n,
        num_orbits: decomposition.len(),
        orbits: decomposition.iter().map(|o| o.length).collect(),
        starter: starter
            .lines
            .iter()
            .map(|l| l.points().iter().map(|p| p.0).collect())
            .collect(),
        base_point: args.base_point,
    };
    println!("{}", serde_json::to_string(&out)?);
    eprintln!(
        "PG({},{}): {} orbits with lengths {:?}",
        args.n - 1,
        args.q,
        out.num_orbits,
        out.orbits
    );
    Ok(())
}

#[derive(Serialize)]
struct DecodeOutput {
    success: bool,
    iterations: usize,
    word: String,
}

fn decode(args: DecodeArgs) -> Result<()> {
    let text = std::fs::read_to_string(&args.matrix)
        .with_context(|| format!("reading {}", args.matrix.display()))?;
    let matrix = import_alist(&text)?;
    let word_text = std::fs::read_to_string(&args.word)
        .with_context(|| format!("reading {}", args.word.display()))?;
    let mut word = Vec::new();
    for ch in word_text.chars() {
        match ch {
            '0' => word.push(0u8),
            '1' => word.push(1u8),
            c if c.is_whitespace() => {}
            c => bail!("unexpected character {c:?} in word file"),
        }
    }
    let outcome = decode_bit_flip(&matrix, &word, args.max_iter)?;
    let out = DecodeOutput {
        success: outcome.success,
        iterations: outcome.iterations,
        word: outcome.word.iter().map(|b| char::from(b'0' + b)).collect(),
    };
    println!("{}", serde_json::to_string(&out)?);
    eprintln!(
        "{} after {} iterations",
        if out.success { "decoded" } else { "failed" },
        out.iterations
    );
    Ok(())
}
