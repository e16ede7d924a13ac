//! `cin`: generate complete-network pairings, answer routing queries,
//! report layout metrics and verify invariants.
//!
//! Exit codes: 0 success, 1 validation or verification failure, 2 usage
//! error.

mod dot;
mod metrics;
mod verify;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cin_core::composite::{HyperXFabric, HopRecord, MultiDigitAddress};
use cin_core::layout::LinearLayout;
use cin_core::render::{render_svg, RenderOptions};
use cin_core::routing::{route_kind, route_oracle};
use cin_core::topofile::TopologyFile;
use cin_core::{CinKind, PairingMatrix};

#[derive(Parser)]
#[command(
    name = "cin",
    version,
    about = "Complete interconnection networks: pairings, routing, layout metrics"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Swap,
    Circle,
    Xor,
}

impl From<KindArg> for CinKind {
    fn from(k: KindArg) -> CinKind {
        match k {
            KindArg::Swap => CinKind::Swap,
            KindArg::Circle => CinKind::Circle,
            KindArg::Xor => CinKind::Xor,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Json,
    Dot,
    Svg,
}

#[derive(Subcommand)]
enum Command {
    /// Construct a pairing and write it as JSON, DOT or SVG.
    Generate {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Switch count.
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
        /// Write to a file instead of standard output.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Apply the lane rule in SVG output.
        #[arg(long)]
        lanes: bool,
    },
    /// Print the port sequence between two addresses.
    ///
    /// Addresses are comma-separated decimal digit tuples, highest digit
    /// first, with an optional trailing endpoint digit: `6` or `6,0` for a
    /// single CIN, `5,0,0,0` for a three-dimensional fabric.
    Route {
        #[arg(long, value_enum, conflicts_with = "file")]
        kind: Option<KindArg>,
        /// Switch count of a single CIN.
        #[arg(long, conflicts_with_all = ["file", "hyperx"], requires = "kind")]
        n: Option<usize>,
        /// Per-dimension sizes of a HyperX fabric, highest dimension first.
        #[arg(long, value_delimiter = ',', conflicts_with = "file", requires = "kind")]
        hyperx: Option<Vec<usize>>,
        /// Edge ports per switch (defaults to the largest dimension size).
        #[arg(long)]
        edge_ports: Option<usize>,
        /// Route on a previously exported topology file via the pairing
        /// oracle.
        #[arg(long)]
        file: Option<PathBuf>,
        src: String,
        dst: String,
    },
    /// Emit a JSON metric report for a CIN or a HyperX fabric.
    Metrics {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, conflicts_with = "hyperx")]
        n: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        hyperx: Option<Vec<usize>>,
        #[arg(long)]
        edge_ports: Option<usize>,
        #[arg(long)]
        output: Option<PathBuf>,
    },
    /// Re-check the pairing, routing and layout invariants over a sweep,
    /// or validate a topology file.
    Verify {
        #[arg(long, value_enum, value_delimiter = ',', default_values_t = [KindArg::Swap, KindArg::Circle, KindArg::Xor])]
        kinds: Vec<KindArg>,
        /// Inclusive size range, e.g. `2..32` or a single size.
        #[arg(long, default_value = "2..32")]
        n: String,
        /// Validate one topology file instead of sweeping.
        #[arg(long, conflicts_with_all = ["kinds", "n"])]
        file: Option<PathBuf>,
    },
}

struct CliError {
    code: u8,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn failure(message: impl Into<String>) -> Self {
        CliError {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<cin_core::Error> for CliError {
    fn from(e: cin_core::Error) -> Self {
        CliError::failure(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::failure(e.to_string())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.code)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Generate {
            kind,
            n,
            format,
            output,
            lanes,
        } => run_generate(kind.into(), n, format, output.as_deref(), lanes),
        Command::Route {
            kind,
            n,
            hyperx,
            edge_ports,
            file,
            src,
            dst,
        } => run_route(kind.map(Into::into), n, hyperx, edge_ports, file.as_deref(), &src, &dst),
        Command::Metrics {
            kind,
            n,
            hyperx,
            edge_ports,
            output,
        } => run_metrics(kind.into(), n, hyperx, edge_ports, output.as_deref()),
        Command::Verify { kinds, n, file } => run_verify(&kinds, &n, file.as_deref()),
    }
}

fn emit(content: &str, output: Option<&Path>) -> Result<(), CliError> {
    match output {
        Some(path) => fs::write(path, content)?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run_generate(
    kind: CinKind,
    n: usize,
    format: FormatArg,
    output: Option<&Path>,
    lanes: bool,
) -> Result<ExitCode, CliError> {
    let m = PairingMatrix::build(kind, n)?;
    let content = match format {
        FormatArg::Json => TopologyFile::from_matrix(kind, &m).to_json_string(),
        FormatArg::Dot => dot::render_dot(kind, &m),
        FormatArg::Svg => render_svg(&m, &LinearLayout::identity(n), RenderOptions { lanes })?,
    };
    emit(&content, output)?;
    Ok(ExitCode::SUCCESS)
}

fn parse_digits(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|d| d.trim().parse::<usize>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|_| CliError::usage(format!("address `{text}` is not a digit tuple")))
}

/// Labels for printed hops: Z,Y,X for up to three dimensions, positional
/// names beyond that.
fn dim_labels(count: usize) -> Vec<String> {
    if count <= 3 {
        ["Z", "Y", "X"][3 - count..].iter().map(|s| s.to_string()).collect()
    } else {
        (0..count).map(|d| format!("d{d}")).collect()
    }
}

fn eject_text(local: Option<usize>) -> String {
    match local {
        Some(c0) => format!("eject {c0}"),
        None => "eject".to_string(),
    }
}

fn run_route(
    kind: Option<CinKind>,
    n: Option<usize>,
    hyperx: Option<Vec<usize>>,
    edge_ports: Option<usize>,
    file: Option<&Path>,
    src: &str,
    dst: &str,
) -> Result<ExitCode, CliError> {
    let src_digits = parse_digits(src)?;
    let dst_digits = parse_digits(dst)?;

    if let Some(sizes) = hyperx {
        let kind = kind.expect("clap enforces --hyperx requires --kind");
        let edge = edge_ports.unwrap_or_else(|| sizes.iter().copied().max().unwrap_or(1));
        let dims: Vec<(usize, CinKind)> = sizes.iter().map(|&s| (s, kind)).collect();
        let fabric = HyperXFabric::new(&dims, edge)?;
        let line = route_fabric(&fabric, &src_digits, &dst_digits)?;
        println!("{line}");
        return Ok(ExitCode::SUCCESS);
    }

    let line = if let Some(path) = file {
        let topo = TopologyFile::from_json_str(&fs::read_to_string(path)?)?;
        let m = topo.to_matrix()?;
        route_single(&src_digits, &dst_digits, m.n(), |a, b| route_oracle(&m, a, b))?
    } else {
        let kind = kind.ok_or_else(|| CliError::usage("route needs --kind, or --file"))?;
        let n = n.ok_or_else(|| CliError::usage("route needs --n or --hyperx with --kind"))?;
        route_single(&src_digits, &dst_digits, n, |a, b| route_kind(kind, n, a, b))?
    };
    println!("{line}");
    Ok(ExitCode::SUCCESS)
}

fn route_single(
    src: &[usize],
    dst: &[usize],
    n: usize,
    router: impl Fn(usize, usize) -> cin_core::Result<usize>,
) -> Result<String, CliError> {
    for digits in [src, dst] {
        if digits.is_empty() || digits.len() > 2 {
            return Err(CliError::failure(format!(
                "single-CIN addresses have 1 or 2 digits, got {}",
                digits.len()
            )));
        }
        if digits[0] >= n {
            return Err(CliError::failure(format!(
                "switch digit {} out of range for {n} switches",
                digits[0]
            )));
        }
    }
    let local = dst.get(1).copied();
    if src[0] == dst[0] {
        Ok(eject_text(local))
    } else {
        let port = router(src[0], dst[0])?;
        Ok(format!("forward port {port}; {}", eject_text(local)))
    }
}

fn route_fabric(
    fabric: &HyperXFabric,
    src: &[usize],
    dst: &[usize],
) -> Result<String, CliError> {
    let ndims = fabric.dims().len();
    let to_addr = |digits: &[usize]| -> Result<(MultiDigitAddress, bool), CliError> {
        if digits.len() == ndims {
            Ok((MultiDigitAddress::new(digits.to_vec(), 0), false))
        } else if digits.len() == ndims + 1 {
            Ok((
                MultiDigitAddress::from_digits(digits.to_vec())?,
                true,
            ))
        } else {
            Err(CliError::failure(format!(
                "fabric addresses have {ndims} or {} digits, got {}",
                ndims + 1,
                digits.len()
            )))
        }
    };
    let (src_addr, _) = to_addr(src)?;
    let (dst_addr, has_local) = to_addr(dst)?;
    let hops = fabric.route_dor(&src_addr, &dst_addr, &fabric.default_dim_order())?;
    let labels = dim_labels(ndims);
    let parts: Vec<String> = hops
        .iter()
        .map(|hop| match *hop {
            HopRecord::Forward { dim, port } => format!("{}:{port}", labels[dim]),
            HopRecord::Eject { port } => eject_text(has_local.then_some(port)),
        })
        .collect();
    Ok(parts.join("; "))
}

fn run_metrics(
    kind: CinKind,
    n: Option<usize>,
    hyperx: Option<Vec<usize>>,
    edge_ports: Option<usize>,
    output: Option<&Path>,
) -> Result<ExitCode, CliError> {
    let json = match (n, hyperx) {
        (Some(n), None) => to_pretty_json(&metrics::cin_metrics(kind, n)?),
        (None, Some(sizes)) => {
            let edge = edge_ports.unwrap_or_else(|| sizes.iter().copied().max().unwrap_or(1));
            let dims: Vec<(usize, CinKind)> = sizes.iter().map(|&s| (s, kind)).collect();
            let fabric = HyperXFabric::new(&dims, edge)?;
            to_pretty_json(&metrics::fabric_metrics(&fabric)?)
        }
        _ => return Err(CliError::usage("metrics needs exactly one of --n or --hyperx")),
    };
    emit(&json, output)?;
    Ok(ExitCode::SUCCESS)
}

fn to_pretty_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn parse_range(text: &str) -> Result<(usize, usize), CliError> {
    let parse = |s: &str| {
        s.trim()
            .parse::<usize>()
            .map_err(|_| CliError::usage(format!("bad size range `{text}`")))
    };
    match text.split_once("..") {
        Some((lo, hi)) => Ok((parse(lo)?, parse(hi)?)),
        None => {
            let n = parse(text)?;
            Ok((n, n))
        }
    }
}

fn run_verify(kinds: &[KindArg], range: &str, file: Option<&Path>) -> Result<ExitCode, CliError> {
    if let Some(path) = file {
        let topo = TopologyFile::from_json_str(&fs::read_to_string(path)?)?;
        return match topo.to_matrix() {
            Ok(m) => {
                println!(
                    "ok {}: kind={} n={} links={}",
                    path.display(),
                    topo.kind,
                    m.n(),
                    m.links().count()
                );
                Ok(ExitCode::SUCCESS)
            }
            Err(e) => {
                println!("FAIL {}: {e}", path.display());
                Ok(ExitCode::FAILURE)
            }
        };
    }

    let (lo, hi) = parse_range(range)?;
    let kinds: Vec<CinKind> = kinds.iter().map(|&k| k.into()).collect();
    let outcome = verify::sweep(&kinds, lo, hi);
    for failure in &outcome.failures {
        println!("{failure}");
    }
    if outcome.failures.is_empty() {
        println!(
            "ok: {} checks over kinds={:?} n={lo}..={hi}",
            outcome.checks,
            kinds.iter().map(|k| k.to_string()).collect::<Vec<_>>()
        );
        Ok(ExitCode::SUCCESS)
    } else {
        println!(
            "{} of {} checks failed",
            outcome.failures.len(),
            outcome.checks
        );
        Ok(ExitCode::FAILURE)
    }
}
