//! Command-line front door: build the combinatorial objects, run the
//! experiments, and emit JSON/CSV/SVG reports.
//!
//! Exit codes: 0 on success, 1 on a domain error (with a machine-readable
//! JSON object on stderr), 2 on a usage error.

mod parse;
mod svg;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use cuspcraft_core::{
    acyl_witness_count, box_dimension, build_horoball, cayley_ball, fixture,
    four_point_delta, growth_compare, hyperbolic_distance, incompatibility_threshold,
    orbit_sample, AcylParams, BaseGraph, Capacity, CuspedSpec, DeltaMode, Error, FixtureName,
    HoroballSpec, OrbitOptions, PresentationFamily, QiBoundParams, ScalingFunction,
    UnitGraph, Word,
};

use svg::{svg_plot, Projection};

#[derive(Parser)]
#[command(name = "cuspcraft", version, about = "Horoballs, cusped spaces, hyperbolicity scans and limit sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Cayley balls of the supported presentation families
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Build combinatorial horoballs and query distances and growth
    Horoball {
        #[command(subcommand)]
        cmd: HoroballCmd,
    },
    /// Cusped spaces: a Cayley ball with horoballs on the peripheral cosets
    Cusp {
        #[command(subcommand)]
        cmd: CuspCmd,
    },
    /// Four-point delta scan of a graph file
    Delta(DeltaArgs),
    /// Quasi-isometry obstruction experiments
    Qi {
        #[command(subcommand)]
        cmd: QiCmd,
    },
    /// Limit-set sampling, dimension estimation and plotting
    Limitset {
        #[command(subcommand)]
        cmd: LimitsetCmd,
    },
    /// Acylindricity witness counting
    Acyl {
        #[command(subcommand)]
        cmd: AcylCmd,
    },
    /// Fixture self-validation
    Fixtures {
        #[command(subcommand)]
        cmd: FixturesCmd,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Generate the Cayley ball of a family out to a radius
    Ball {
        /// Presentation family: free:K, free_abelian:K or surface:G
        #[arg(long)]
        family: String,
        #[arg(long)]
        radius: u32,
        /// Output file (stdout when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct HoroballBaseArgs {
    /// Base graph: line:N, cycle:N or a graph JSON file
    #[arg(long)]
    base: String,
    /// Scaling function: exp2, dexp2 or table:v0,v1,...
    #[arg(long)]
    scale: String,
    /// Truncation depth (levels 0..=depth)
    #[arg(long)]
    depth: u32,
}

#[derive(Subcommand)]
enum HoroballCmd {
    /// Build a horoball; emits the parameter form, or the edge list with --materialize
    Build {
        #[command(flatten)]
        base: HoroballBaseArgs,
        /// Emit the explicit materialized edge list instead of parameters
        #[arg(long)]
        materialize: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact distance between two horoball vertices, printed as an integer
    Dist {
        #[command(flatten)]
        base: HoroballBaseArgs,
        /// Start vertex as base,level
        #[arg(long)]
        from: String,
        /// End vertex as base,level
        #[arg(long)]
        to: String,
    },
    /// Ball sizes around a center vertex, as CSV r,ball_size
    Growth {
        #[command(flatten)]
        base: HoroballBaseArgs,
        /// Center vertex as base,level
        #[arg(long)]
        center: String,
        #[arg(long)]
        rmax: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args)]
struct CuspParams {
    /// Parameter JSON produced by cusp build
    #[arg(long = "in", conflicts_with_all = ["family", "peripheral"])]
    input: Option<PathBuf>,
    #[arg(long, required_unless_present = "input")]
    family: Option<String>,
    /// Peripheral generating words, comma separated (compact form, e.g. a or a,bb)
    #[arg(long, required_unless_present = "input")]
    peripheral: Option<String>,
    #[arg(long, required_unless_present = "input")]
    radius: Option<u32>,
    #[arg(long, required_unless_present = "input")]
    scale: Option<String>,
    #[arg(long, required_unless_present = "input")]
    depth: Option<u32>,
}

#[derive(Subcommand)]
enum CuspCmd {
    /// Validate and emit the cusped-space parameter file
    Build {
        #[command(flatten)]
        params: CuspParams,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact distance between two core words, printed as an integer
    Dist {
        #[command(flatten)]
        params: CuspParams,
        /// Word in compact form ("1" for the identity)
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
}

#[derive(Args)]
struct DeltaArgs {
    /// Graph JSON: a vertex/edge file, a horoball parameter file, or a
    /// cusped-space parameter file
    #[arg(long)]
    input: PathBuf,
    /// exhaustive or sample:COUNT
    #[arg(long, default_value = "exhaustive")]
    mode: String,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Allow exhaustive scans past the vertex gate
    #[arg(long)]
    force: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum QiCmd {
    /// Scan for the smallest incompatible displacement
    Scan {
        #[arg(long)]
        c: String,
        #[arg(long = "B", default_value = "0")]
        b: String,
        #[arg(long = "E", default_value = "1")]
        e: String,
        /// Height bound; carried in reports, consumed by no formula
        #[arg(long = "D", default_value = "0")]
        d: String,
        #[arg(long)]
        nmax: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Divergence table of the two line metrics, as CSV
    Growth {
        /// Displacements, comma separated
        #[arg(long)]
        ns: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum LimitsetCmd {
    /// Sample a fixture's limit set into a points CSV
    Sample {
        /// octagon, fig8_full, fig8_fiber, schottky or fuchsian_embed
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        maxlen: u32,
        #[arg(long)]
        threshold: f64,
        /// Basepoint as x,y,t
        #[arg(long, default_value = "0,0,1")]
        basepoint: String,
        /// Stop descending once a word escapes (escape-front sampling)
        #[arg(long)]
        prune: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Box-counting dimension of a points CSV
    Dim {
        #[arg(long = "in")]
        input: PathBuf,
        /// Grid scales, comma separated, each in (0,1)
        #[arg(long)]
        scales: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// SVG plot of a points CSV
    Plot {
        #[arg(long = "in")]
        input: PathBuf,
        /// equatorial or orthographic:x|y|z
        #[arg(long, default_value = "equatorial")]
        projection: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum AcylCmd {
    /// Count enumerated elements moving two points at most epsilon
    Count {
        #[arg(long)]
        fixture: String,
        #[arg(long)]
        maxlen: u32,
        #[arg(long)]
        eps: f64,
        /// First point as x,y,t
        #[arg(long)]
        p: String,
        /// Second point as x,y,t
        #[arg(long)]
        q: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Evaluate relator residuals and classify generators
    Validate {
        /// Validate a single fixture (all when omitted)
        #[arg(long)]
        fixture: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum CliError {
    Core(Error),
    Io(String, std::io::Error),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Core(e)
    }
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => e.kind(),
            CliError::Io(..) => "io",
        }
    }

    fn message(&self) -> String {
        match self {
            CliError::Core(e) => e.to_string(),
            CliError::Io(path, e) => format!("{path}: {e}"),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let payload = json!({ "kind": err.kind(), "error": err.message() });
            eprintln!("{payload}");
            ExitCode::from(1)
        }
    }
}

fn capacity() -> Result<Capacity, CliError> {
    match std::env::var("CUSPCRAFT_MAX_VERTICES") {
        Ok(v) => {
            let max: u64 = v.parse().map_err(|_| {
                CliError::Core(Error::InvalidParams(format!(
                    "CUSPCRAFT_MAX_VERTICES must be an integer, got {v:?}"
                )))
            })?;
            Ok(Capacity::with_max_vertices(max))
        }
        Err(_) => Ok(Capacity::default()),
    }
}

fn emit(out: &Option<PathBuf>, content: &str) -> Result<(), CliError> {
    match out {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| CliError::Io(path.display().to_string(), e)),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn emit_json<T: serde::Serialize>(out: &Option<PathBuf>, value: &T) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value).expect("serialization cannot fail");
    text.push('\n');
    emit(out, &text)
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Io(path.display().to_string(), e))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Group { cmd } => run_group(cmd),
        Command::Horoball { cmd } => run_horoball(cmd),
        Command::Cusp { cmd } => run_cusp(cmd),
        Command::Delta(args) => run_delta(args),
        Command::Qi { cmd } => run_qi(cmd),
        Command::Limitset { cmd } => run_limitset(cmd),
        Command::Acyl { cmd } => run_acyl(cmd),
        Command::Fixtures { cmd } => run_fixtures(cmd),
    }
}

fn run_group(cmd: GroupCmd) -> Result<(), CliError> {
    match cmd {
        GroupCmd::Ball { family, radius, out } => {
            let fam: PresentationFamily = family.parse()?;
            let ball = cayley_ball(&fam, radius, &capacity()?)?;
            emit_json(&out, &ball.graph)
        }
    }
}

fn build_from_args(args: &HoroballBaseArgs) -> Result<cuspcraft_core::HoroballGraph, CliError> {
    let base = parse::parse_base_graph(&args.base)?;
    let scale: ScalingFunction = args.scale.parse()?;
    Ok(build_horoball(base, scale, args.depth, &capacity()?)?)
}

fn run_horoball(cmd: HoroballCmd) -> Result<(), CliError> {
    match cmd {
        HoroballCmd::Build {
            base,
            materialize,
            out,
        } => {
            let h = build_from_args(&base)?;
            if materialize {
                let g = h.to_base_graph(&capacity()?)?;
                emit_json(&out, &g)
            } else {
                let spec = HoroballSpec {
                    base: h.base().clone(),
                    scale: h.scale().clone(),
                    depth: h.depth(),
                };
                emit_json(&out, &spec)
            }
        }
        HoroballCmd::Dist { base, from, to } => {
            let h = build_from_args(&base)?;
            let d = h.dist(
                parse::parse_horoball_vertex(&from)?,
                parse::parse_horoball_vertex(&to)?,
            )?;
            println!("{d}");
            Ok(())
        }
        HoroballCmd::Growth {
            base,
            center,
            rmax,
            out,
        } => {
            let h = build_from_args(&base)?;
            let curve = h.ball_sizes(parse::parse_horoball_vertex(&center)?, rmax)?;
            let mut csv = String::from("r,ball_size\n");
            for (r, size) in &curve.sizes {
                csv.push_str(&format!("{r},{size}\n"));
            }
            emit(&out, &csv)
        }
    }
}

fn cusped_spec(params: &CuspParams) -> Result<CuspedSpec, CliError> {
    if let Some(path) = &params.input {
        let text = read_file(path)?;
        return serde_json::from_str(&text).map_err(|e| {
            CliError::Core(Error::InvalidParams(format!(
                "{} is not a cusped parameter file: {e}",
                path.display()
            )))
        });
    }
    let family: PresentationFamily = params
        .family
        .as_deref()
        .expect("clap enforces presence")
        .parse()?;
    let scale: ScalingFunction = params
        .scale
        .as_deref()
        .expect("clap enforces presence")
        .parse()?;
    let peripheral: Vec<String> = params
        .peripheral
        .as_deref()
        .expect("clap enforces presence")
        .split(',')
        .map(|s| s.trim().to_string())
        .collect();
    Ok(CuspedSpec {
        family,
        peripheral,
        radius: params.radius.expect("clap enforces presence"),
        scale,
        depth: params.depth.expect("clap enforces presence"),
    })
}

fn run_cusp(cmd: CuspCmd) -> Result<(), CliError> {
    match cmd {
        CuspCmd::Build { params, out } => {
            let spec = cusped_spec(&params)?;
            spec.build(&capacity()?)?; // validate before persisting
            emit_json(&out, &spec)
        }
        CuspCmd::Dist { params, from, to } => {
            let spec = cusped_spec(&params)?;
            let space = spec.build(&capacity()?)?;
            let d = space.dist(&Word::parse_compact(&from)?, &Word::parse_compact(&to)?)?;
            println!("{d}");
            Ok(())
        }
    }
}

fn load_unit_graph(path: &PathBuf) -> Result<UnitGraph, CliError> {
    let text = read_file(path)?;
    let value: serde_json::Value = serde_json::from_str(&text).map_err(|e| {
        CliError::Core(Error::InvalidGraph(format!(
            "{} is not JSON: {e}",
            path.display()
        )))
    })?;
    let cap = capacity()?;
    if value.get("family").is_some() {
        let spec: CuspedSpec = serde_json::from_value(value)
            .map_err(|e| CliError::Core(Error::InvalidParams(e.to_string())))?;
        return Ok(spec.build(&cap)?.to_unit_graph(&cap)?);
    }
    if value.get("base").is_some() {
        let spec: HoroballSpec = serde_json::from_value(value)
            .map_err(|e| CliError::Core(Error::InvalidParams(e.to_string())))?;
        return Ok(spec.build(&cap)?.to_unit_graph(&cap)?);
    }
    let graph: BaseGraph = serde_json::from_value(value)
        .map_err(|e| CliError::Core(Error::InvalidGraph(e.to_string())))?;
    Ok(UnitGraph::from(&graph))
}

fn run_delta(args: DeltaArgs) -> Result<(), CliError> {
    let graph = load_unit_graph(&args.input)?;
    let mode = if args.mode == "exhaustive" {
        DeltaMode::Exhaustive { force: args.force }
    } else if let Some(count) = args.mode.strip_prefix("sample:") {
        let count: u64 = count.parse().map_err(|_| {
            CliError::Core(Error::InvalidParams(format!(
                "bad sample count in mode {:?}",
                args.mode
            )))
        })?;
        DeltaMode::Sampled {
            count,
            seed: args.seed,
        }
    } else {
        return Err(CliError::Core(Error::InvalidParams(format!(
            "unknown mode {:?} (exhaustive or sample:COUNT)",
            args.mode
        ))));
    };
    let report = four_point_delta(&graph, mode)?;
    emit_json(&args.out, &report)
}

fn run_qi(cmd: QiCmd) -> Result<(), CliError> {
    match cmd {
        QiCmd::Scan {
            c,
            b,
            e,
            d,
            nmax,
            out,
        } => {
            let params = QiBoundParams::new(
                parse::parse_rational(&c)?,
                parse::parse_rational(&b)?,
                parse::parse_rational(&d)?,
                parse::parse_rational(&e)?,
            )?;
            let threshold = incompatibility_threshold(&params, nmax)?;
            emit_json(&out, &json!({ "threshold": threshold }))
        }
        QiCmd::Growth { ns, out } => {
            let ns = parse::parse_u64_list(&ns)?;
            let rows = growth_compare(&ns)?;
            let mut csv = String::from("N,d_exp2,d_dexp2,ratio\n");
            for row in rows {
                csv.push_str(&format!(
                    "{},{},{},{}\n",
                    row.n, row.d_exp2, row.d_dexp2, row.ratio
                ));
            }
            emit(&out, &csv)
        }
    }
}

fn points_to_csv(points: &[[f64; 3]]) -> String {
    let mut csv = String::from("x,y,z\n");
    for p in points {
        csv.push_str(&format!("{:.16e},{:.16e},{:.16e}\n", p[0], p[1], p[2]));
    }
    csv
}

fn points_from_csv(text: &str, path: &PathBuf) -> Result<Vec<[f64; 3]>, CliError> {
    let bad = |line: usize| {
        CliError::Core(Error::InvalidParams(format!(
            "{}:{line}: expected x,y,z",
            path.display()
        )))
    };
    let mut points = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 && line.trim() == "x,y,z" {
            continue;
        }
        if line.trim().is_empty() {
            continue;
        }
        let coords: Vec<f64> = line
            .split(',')
            .map(|v| v.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| bad(i + 1))?;
        if coords.len() != 3 {
            return Err(bad(i + 1));
        }
        points.push([coords[0], coords[1], coords[2]]);
    }
    Ok(points)
}

fn run_limitset(cmd: LimitsetCmd) -> Result<(), CliError> {
    match cmd {
        LimitsetCmd::Sample {
            fixture: name,
            maxlen,
            threshold,
            basepoint,
            prune,
            out,
        } => {
            let name: FixtureName = name.parse()?;
            let fix = fixture(name)?;
            let opts = OrbitOptions {
                basepoint: parse::parse_point(&basepoint)?,
                zero_exponent_sum: fix.zero_exponent_filter,
                prune_on_escape: prune,
                ..OrbitOptions::new(maxlen, threshold)?
            };
            let sample = orbit_sample(&fix.generators, &name.to_string(), &opts)?;
            emit(&out, &points_to_csv(&sample.points))
        }
        LimitsetCmd::Dim { input, scales, out } => {
            let points = points_from_csv(&read_file(&input)?, &input)?;
            let scales = parse::parse_f64_list(&scales)?;
            let dimension = box_dimension(&points, &scales)?;
            emit_json(&out, &json!({ "dimension": dimension }))
        }
        LimitsetCmd::Plot {
            input,
            projection,
            out,
        } => {
            let points = points_from_csv(&read_file(&input)?, &input)?;
            let projection: Projection = projection.parse()?;
            emit(&out, &svg_plot(&points, projection)?)
        }
    }
}

fn run_acyl(cmd: AcylCmd) -> Result<(), CliError> {
    match cmd {
        AcylCmd::Count {
            fixture: name,
            maxlen,
            eps,
            p,
            q,
            out,
        } => {
            let name: FixtureName = name.parse()?;
            let fix = fixture(name)?;
            let p = parse::parse_point(&p)?;
            let q = parse::parse_point(&q)?;
            let count = acyl_witness_count(&fix.generators, maxlen, &p, &q, eps)?;
            let report = AcylParams {
                epsilon: eps,
                r: hyperbolic_distance(&p, &q),
                witness_count: count,
            };
            emit_json(&out, &report)
        }
    }
}

fn run_fixtures(cmd: FixturesCmd) -> Result<(), CliError> {
    match cmd {
        FixturesCmd::Validate { fixture: name, out } => {
            let names: Vec<FixtureName> = match name {
                Some(n) => vec![n.parse()?],
                None => vec![
                    FixtureName::Octagon,
                    FixtureName::Fig8Full,
                    FixtureName::Fig8Fiber,
                    FixtureName::Schottky,
                    FixtureName::FuchsianEmbed,
                ],
            };
            let reports = names
                .into_iter()
                .map(|n| Ok(fixture(n)?.validate()?))
                .collect::<Result<Vec<_>, CliError>>()?;
            emit_json(&out, &reports)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }
}
