//! `chamber` — exact-arithmetic wall-and-chamber computations for minimal
//! surfaces of general type, on the command line.
//!
//! Subcommands: `surface`, `scan`, `walls plot`, `enumerate`, `filter`,
//! `fibration`. Reports are JSON (one object per line for streams);
//! every rational crosses the boundary as a `"num/den"` string. Exit
//! codes: 0 success or affirmative verdict, 1 negative domain verdict
//! (not admissible, rejected, gate not met, not applicable), 2 usage,
//! 3 resource budget exceeded.

mod svg;

use chamber_core::charge::{theta_shift_slice, FullChern, PolarizationSlice};
use chamber_core::enumerate::{
    enumerate_cell_report, enumerate_wall_candidates, fibration_option_json, fibration_options,
    filter_quotient_candidate, CaseFlag, EnumerateError,
};
use chamber_core::ratio::parse_rat;
use chamber_core::surface::{
    check_geography, scan_geography, surface_from_i64, SurfaceNumerics,
};
use chamber_core::walls::{hyperbola_of_tops, theta_circle, vertical_wall, wall_between, WallShape};
use chamber_core::{Int, Rat};
use clap::{Args, Parser, Subcommand, ValueEnum};
use num_traits::Signed;
use serde_json::json;
use std::io::{self, Write};
use std::process::ExitCode;

const EXIT_OK: u8 = 0;
const EXIT_DOMAIN: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

/// Prints one line to stdout. A closed pipe (e.g. `| head`) ends the
/// process quietly, as stream consumers expect; other write failures are
/// fatal.
fn emit(line: std::fmt::Arguments<'_>) {
    let mut out = io::stdout().lock();
    let result = out.write_fmt(line).and_then(|()| out.write_all(b"\n"));
    if let Err(e) = result {
        if e.kind() == io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: cannot write to stdout: {e}");
        std::process::exit(1);
    }
}

macro_rules! outln {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

#[derive(Parser)]
#[command(
    name = "chamber",
    version,
    about = "Exact wall-and-chamber computations for surfaces of general type"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Derive the numeric invariants of a surface and check its geography.
    Surface(SurfaceArgs),
    /// Scan all candidate (c2, K2) pairs up to a bound, one JSON line each.
    Scan(ScanArgs),
    /// Wall geometry.
    Walls(WallsArgs),
    /// Enumerate candidate wall classes against the shifted tangent slice.
    Enumerate(EnumerateArgs),
    /// Test full Chern data against the quotient-candidate sieve.
    Filter(FilterArgs),
    /// List the (genus, degree) options of the fibration gate.
    Fibration(FibrationArgs),
}

#[derive(Args)]
struct SurfacePair {
    /// Second Chern number c2 (the topological Euler number).
    #[arg(long)]
    c2: i64,
    /// Self-intersection K2 of the canonical class.
    #[arg(long)]
    k2: i64,
}

impl SurfacePair {
    /// Derives the invariants, printing the error as JSON on failure.
    fn derive(&self) -> Result<SurfaceNumerics, u8> {
        match surface_from_i64(self.c2, self.k2) {
            Ok(s) => Ok(s),
            Err(e) => {
                outln!("{}", json!({ "error": e.to_string() }));
                Err(EXIT_DOMAIN)
            }
        }
    }

    /// Derives and additionally requires an admissible geography.
    fn derive_admissible(&self) -> Result<SurfaceNumerics, u8> {
        let s = self.derive()?;
        let report = check_geography(&s);
        if !report.admissible {
            outln!(
                "{}",
                json!({
                    "error": "surface is not admissible",
                    "geography": report.to_json(),
                })
            );
            return Err(EXIT_DOMAIN);
        }
        Ok(s)
    }
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct SurfaceArgs {
    #[command(flatten)]
    pair: SurfacePair,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct ScanArgs {
    /// Largest c2 to scan (pairs range over 1 <= K2 <= 3*c2).
    #[arg(long)]
    c2_max: i64,
    /// Print only admissible pairs.
    #[arg(long)]
    admissible_only: bool,
}

#[derive(Args)]
struct WallsArgs {
    #[command(subcommand)]
    cmd: WallsCmd,
}

#[derive(Subcommand)]
enum WallsCmd {
    /// Render the wall diagram as a standalone SVG on stdout.
    Plot(PlotArgs),
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct PlotArgs {
    #[command(flatten)]
    pair: SurfacePair,
    /// Left edge of the drawn b-interval, as "num/den".
    #[arg(long, default_value = "-4/5", value_parser = rat_arg, allow_hyphen_values = true)]
    b_min: Rat,
    /// Right edge of the drawn b-interval, as "num/den".
    #[arg(long, default_value = "1/5", value_parser = rat_arg, allow_hyphen_values = true)]
    b_max: Rat,
    /// Top of the drawn c-interval (also caps stroked candidate walls).
    #[arg(long, default_value = "2/5", value_parser = rat_arg, allow_hyphen_values = true)]
    c_max: Rat,
    /// Canvas width in pixels (at least 64).
    #[arg(long, default_value_t = 800)]
    width_px: i64,
    /// Canvas height in pixels (at least 64).
    #[arg(long, default_value_t = 480)]
    height_px: i64,
    /// Comma-separated layers: vertical, hyperbola, c_h, candidates, region.
    #[arg(long, default_value = "vertical,hyperbola,c_h", value_delimiter = ',')]
    layers: Vec<String>,
    /// Base of the vertical scan line (required by the candidates layer).
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    beta0: Option<Rat>,
    /// Rank cap for candidate enumeration (required by the candidates layer).
    #[arg(long)]
    rmax: Option<i64>,
    /// Subobject dimension bound shaping the region layer's left cut.
    #[arg(long, default_value_t = 2)]
    dimv: i64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct EnumerateArgs {
    #[command(flatten)]
    pair: SurfacePair,
    /// Base of the vertical scan line, strictly inside the strip.
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    beta0: Rat,
    /// Height cap: only walls crossing the scan line below it count.
    #[arg(long, value_parser = rat_arg, allow_hyphen_values = true)]
    cmax: Rat,
    /// Largest |rank| to enumerate.
    #[arg(long)]
    rmax: i64,
    /// Also print the per-cell bound records before the candidates.
    #[arg(long)]
    cell_report: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    /// Quotient with c1 * H = 0 on the wall side.
    Zero,
    /// Quotient with nonzero degree.
    Nonzero,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct FilterArgs {
    #[command(flatten)]
    pair: SurfacePair,
    /// Which test chain to run.
    #[arg(long, value_enum)]
    case: CaseArg,
    /// Rank of the candidate quotient.
    #[arg(long)]
    r: i64,
    /// Self-intersection of its first Chern class.
    #[arg(long)]
    c1sq: i64,
    /// Pairing of its first Chern class with the canonical class.
    #[arg(long)]
    c1k: i64,
    /// Doubled second Chern character.
    #[arg(long)]
    s2: i64,
}

#[derive(Args)]
#[command(allow_negative_numbers = true)]
struct FibrationArgs {
    #[command(flatten)]
    pair: SurfacePair,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.cmd {
        Cmd::Surface(args) => cmd_surface(&args),
        Cmd::Scan(args) => cmd_scan(&args),
        Cmd::Walls(args) => match args.cmd {
            WallsCmd::Plot(plot) => cmd_walls_plot(&plot),
        },
        Cmd::Enumerate(args) => cmd_enumerate(&args),
        Cmd::Filter(args) => cmd_filter(&args),
        Cmd::Fibration(args) => cmd_fibration(&args),
    };
    ExitCode::from(code)
}

fn cmd_surface(args: &SurfaceArgs) -> u8 {
    let s = match args.pair.derive() {
        Ok(s) => s,
        Err(code) => return code,
    };
    let report = check_geography(&s);
    outln!(
        "{}",
        json!({ "surface": s.to_json(), "geography": report.to_json() })
    );
    if report.admissible {
        EXIT_OK
    } else {
        EXIT_DOMAIN
    }
}

fn cmd_scan(args: &ScanArgs) -> u8 {
    let rows = scan_geography(args.c2_max);
    let mut admissible = 0usize;
    let mut printed = 0usize;
    for (s, report) in &rows {
        if report.admissible {
            admissible += 1;
        }
        if args.admissible_only && !report.admissible {
            continue;
        }
        printed += 1;
        outln!(
            "{}",
            json!({ "surface": s.to_json(), "geography": report.to_json() })
        );
    }
    outln!(
        "{}",
        json!({
            "summary": { "scanned": rows.len(), "printed": printed, "admissible": admissible }
        })
    );
    EXIT_OK
}

fn cmd_walls_plot(args: &PlotArgs) -> u8 {
    let layers = match svg::LayerFlags::parse(&args.layers) {
        Ok(l) => l,
        Err(reason) => {
            eprintln!("error: {reason}");
            return EXIT_USAGE;
        }
    };
    let spec = svg::RenderSpec {
        b_min: args.b_min.clone(),
        b_max: args.b_max.clone(),
        c_max: args.c_max.clone(),
        width_px: args.width_px,
        height_px: args.height_px,
        layers,
    };
    if let Err(reason) = spec.validate() {
        eprintln!("error: {reason}");
        return EXIT_USAGE;
    }
    if layers.candidates && (args.beta0.is_none() || args.rmax.is_none()) {
        eprintln!("error: the candidates layer requires --beta0 and --rmax");
        return EXIT_USAGE;
    }
    if args.dimv < 1 {
        eprintln!("error: --dimv must be at least 1");
        return EXIT_USAGE;
    }
    let s = match args.pair.derive_admissible() {
        Ok(s) => s,
        Err(code) => return code,
    };
    let pol = PolarizationSlice::canonical(&s);
    let theta = theta_shift_slice(&s, &pol);

    let c_h = match theta_circle(&s, &pol) {
        WallShape::Semicircle { center, .. } => {
            // Radius tau / (2 K.H) is exactly rational for this circle.
            let radius = Rat::new(s.tau.clone(), pol.kh() * 2);
            Some((center, radius))
        }
        _ => None,
    };
    let hyperbola = hyperbola_of_tops(&s, &pol)
        .ok()
        .map(|h| (h.kappa, h.rhs));
    let candidates = if layers.candidates {
        let beta0 = args.beta0.clone().unwrap();
        let rmax = args.rmax.unwrap();
        match enumerate_wall_candidates(&s, &pol, &beta0, &args.c_max, rmax) {
            Ok(slices) => {
                let walls: Vec<WallShape> = slices
                    .iter()
                    .map(|v| wall_between(v, &theta, &pol))
                    .collect();
                svg::candidate_circles(&walls)
            }
            Err(EnumerateError::PrecisionBudgetExceeded { cells, cap }) => {
                eprintln!(
                    "error: enumeration region holds {cells} candidates, over the budget of {cap}"
                );
                return EXIT_BUDGET;
            }
            Err(e) => {
                eprintln!("error: {e}");
                return EXIT_USAGE;
            }
        }
    } else {
        Vec::new()
    };
    let region_cut = if layers.region && s.tau.is_positive() {
        // b must exceed both -tau/K.H and -1/(H2 * dimv).
        let a = Rat::new(-s.tau.clone(), pol.kh().clone());
        let b = Rat::new(Int::from(-1), pol.h2() * args.dimv);
        Some(if a >= b { a } else { b })
    } else {
        None
    };
    let scene = svg::Scene {
        vertical_b: vertical_wall(&pol),
        c_h,
        hyperbola,
        candidates,
        region_cut,
    };
    let document = svg::render(&spec, &scene);
    let mut out = io::stdout().lock();
    if let Err(e) = out.write_all(document.as_bytes()) {
        if e.kind() != io::ErrorKind::BrokenPipe {
            eprintln!("error: cannot write to stdout: {e}");
            return EXIT_DOMAIN;
        }
    }
    EXIT_OK
}

fn cmd_enumerate(args: &EnumerateArgs) -> u8 {
    let s = match args.pair.derive() {
        Ok(s) => s,
        Err(code) => return code,
    };
    let pol = PolarizationSlice::canonical(&s);
    let mut cells = None;
    if args.cell_report {
        match enumerate_cell_report(&s, &pol, &args.beta0, &args.cmax, args.rmax) {
            Ok(report) => {
                for cell in &report {
                    outln!("{}", json!({ "cell": cell.to_json() }));
                }
                cells = Some(report.len());
            }
            Err(e) => return report_enumerate_error(&e),
        }
    }
    match enumerate_wall_candidates(&s, &pol, &args.beta0, &args.cmax, args.rmax) {
        Ok(candidates) => {
            for v in &candidates {
                outln!("{}", v.to_json());
            }
            let mut summary = json!({ "candidates": candidates.len() });
            if let Some(n) = cells {
                summary["cells"] = json!(n);
            }
            outln!("{}", json!({ "summary": summary }));
            EXIT_OK
        }
        Err(e) => report_enumerate_error(&e),
    }
}

fn report_enumerate_error(e: &EnumerateError) -> u8 {
    eprintln!("error: {e}");
    match e {
        EnumerateError::PrecisionBudgetExceeded { .. } => EXIT_BUDGET,
        _ => EXIT_USAGE,
    }
}

fn cmd_filter(args: &FilterArgs) -> u8 {
    let s = match args.pair.derive() {
        Ok(s) => s,
        Err(code) => return code,
    };
    let f = FullChern::new(args.r, args.c1sq, args.c1k, args.s2);
    let case = match args.case {
        CaseArg::Zero => CaseFlag::Zero,
        CaseArg::Nonzero => CaseFlag::Nonzero,
    };
    match filter_quotient_candidate(&s, &f, case) {
        Ok(verdict) => {
            outln!("{}", verdict.to_json());
            if verdict.accepted {
                EXIT_OK
            } else {
                EXIT_DOMAIN
            }
        }
        Err(e) => {
            outln!("{}", json!({ "error": e.to_string() }));
            EXIT_DOMAIN
        }
    }
}

fn cmd_fibration(args: &FibrationArgs) -> u8 {
    let s = match args.pair.derive() {
        Ok(s) => s,
        Err(code) => return code,
    };
    match fibration_options(&s) {
        Ok(options) => {
            for pair in &options {
                outln!("{}", fibration_option_json(pair));
            }
            EXIT_OK
        }
        Err(e) => {
            outln!("{}", json!({ "error": e.to_string() }));
            EXIT_DOMAIN
        }
    }
}
