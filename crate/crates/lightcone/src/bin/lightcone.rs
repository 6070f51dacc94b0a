use clap::{Parser, Subcommand};
use lightcone::classifier::ClassifyOptions;
use lightcone::cli::{self, json, mesh, verify};
use lightcone::{Error, Result};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "lightcone",
    version,
    about = "Zero mean curvature surfaces in the light cone"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Output file (stdout when absent)
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Mesh resolution NxM
    #[arg(long, global = true, default_value = "64x64", value_parser = parse_grid)]
    grid: (usize, usize),
    /// Parameter rectangle u0,u1,v0,v1
    #[arg(long, global = true, value_parser = parse_domain)]
    domain: Option<[f64; 4]>,
    /// Tolerance override
    #[arg(long, global = true, env = "LIGHTCONE_TOL")]
    tol: Option<f64>,
    /// Vertex projection: ball or raw
    #[arg(long, global = true, default_value = "ball")]
    projection: mesh::Projection,
    /// Seed for randomized suites
    #[arg(long, global = true, default_value_t = 7)]
    seed: u64,
}

#[derive(Subcommand)]
enum Cmd {
    /// Write an OBJ mesh of a catalog surface, e.g. `surface helicoid a=0 b=1`
    Surface {
        kind: String,
        params: Vec<String>,
        /// Parameter distance around degenerate vertices to leave out
        #[arg(long, default_value_t = 0.0)]
        clip: f64,
    },
    /// Run verification suites (all when none are named)
    Verify { suites: Vec<String> },
    /// Cardioid locus CSV and associated-family census
    Family {
        #[arg(long, default_value_t = 0.25)]
        radius: f64,
        /// a-range of the locus sweep, a0,a1
        #[arg(long, default_value = "-3,3", value_parser = parse_pair)]
        a_range: (f64, f64),
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Census JSON file (stdout when --out holds the CSV)
        #[arg(long)]
        census: Option<PathBuf>,
    },
    /// Classify the ruled surface described by a frame spec file
    Classify { file: PathBuf },
}

fn floats(s: &str, n: usize) -> std::result::Result<Vec<f64>, String> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| x.trim().parse::<f64>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|e| e.to_string())?;
    if v.len() != n {
        return Err(format!("expected {n} comma-separated numbers"));
    }
    Ok(v)
}

fn parse_grid(s: &str) -> std::result::Result<(usize, usize), String> {
    let (a, b) = s.split_once(['x', 'X']).ok_or("expected NxM")?;
    Ok((
        a.parse().map_err(|_| "bad N")?,
        b.parse().map_err(|_| "bad M")?,
    ))
}

fn parse_domain(s: &str) -> std::result::Result<[f64; 4], String> {
    let v = floats(s, 4)?;
    Ok([v[0], v[1], v[2], v[3]])
}

fn parse_pair(s: &str) -> std::result::Result<(f64, f64), String> {
    let v = floats(s, 2)?;
    Ok((v[0], v[1]))
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => std::fs::write(p, text)?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.cmd {
        Cmd::Surface { kind, params, clip } => {
            let kind = cli::parse_kind(&kind, &params)?;
            let spec = mesh::MeshSpec {
                domain: [0.0; 4],
                nu: cli.grid.0,
                nv: cli.grid.1,
                projection: cli.projection,
                clip,
            };
            let (m, obj) = cli::cmd_surface(kind, spec, cli.domain)?;
            emit(&cli.out, &obj)?;
            eprintln!("{}", json::to_string(&m));
            Ok(true)
        }
        Cmd::Verify { suites } => {
            let opt = verify::VerifyOptions {
                tol: cli.tol,
                seed: cli.seed,
            };
            let (reports, ok) = verify::run(&suites, &opt)?;
            emit(
                &cli.out,
                &json::to_string(&serde_json::json!({ "pass": ok, "reports": reports })),
            )?;
            Ok(ok)
        }
        Cmd::Family {
            radius,
            a_range,
            samples,
            census,
        } => {
            let (csv, report) = cli::cmd_family(radius, a_range.0, a_range.1, samples)?;
            emit(&cli.out, &csv)?;
            match (census, &cli.out) {
                (Some(p), _) => std::fs::write(p, report)?,
                (None, Some(_)) => emit(&None, &report)?,
                (None, None) => {}
            }
            Ok(true)
        }
        Cmd::Classify { file } => {
            let text = std::fs::read_to_string(&file)
                .map_err(|e| Error::Io(format!("{}: {e}", file.display())))?;
            let mut opt = ClassifyOptions::default();
            if let Some(t) = cli.tol {
                opt = ClassifyOptions {
                    zero: t,
                    nonzero: 100.0 * t,
                };
            }
            emit(&cli.out, &cli::cmd_classify(&text, opt)?)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
