use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use orthovis::generators::{gen_double_staircase, gen_histogram, gen_iup, gen_regular_up, random_histogram_params};
use orthovis::geometry::compute_visibility_graph;
use orthovis::{io, recognize, svg, GroundTruth, HistogramParams, IupParams, PolygonClass, RecognitionResult};

/// Reconstruct and recognize uniform-step orthogonal polygons from visibility graphs.
#[derive(Parser)]
#[command(name = "orthovis", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a generated polygon as JSON.
    Generate {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Compute the visibility graph of a polygon file.
    Visgraph {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Rebuild a polygon and label map from a graph file.
    Reconstruct {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        class: Option<PolygonClass>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        map: Option<PathBuf>,
    },
    /// Print a JSON verdict; exit 0 when accepted, 1 when rejected.
    Recognize {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        class: Option<PolygonClass>,
    },
    /// Draw a polygon file as SVG.
    Render {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        map: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate, relabel, reconstruct and verify, `trials` times.
    Roundtrip {
        #[command(flatten)]
        shape: ShapeArgs,
        #[arg(long, default_value_t = 1)]
        trials: usize,
    },
}

#[derive(Args, Clone)]
struct ShapeArgs {
    #[arg(long)]
    class: PolygonClass,
    /// Short staircase steps (iup), or steps per staircase (regular-up).
    #[arg(long)]
    s: Option<usize>,
    /// Long staircase steps (iup).
    #[arg(long)]
    l: Option<usize>,
    /// Number of peaks (histogram, random heights) or levels (double-staircase).
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated peak heights (histogram).
    #[arg(long, value_delimiter = ',')]
    peaks: Option<Vec<usize>>,
    /// Comma-separated valley heights between the peaks (histogram).
    #[arg(long, value_delimiter = ',')]
    valleys: Option<Vec<usize>>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure that maps to exit code 2.
struct Fatal(String);

impl<E: std::fmt::Display> From<E> for Fatal {
    fn from(e: E) -> Self {
        Fatal(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Fatal> {
    std::fs::read_to_string(path).map_err(|e| Fatal(format!("{}: {e}", path.display())))
}

fn write(path: Option<&Path>, text: &str) -> Result<(), Fatal> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| Fatal(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn need(v: Option<usize>, flag: &str, class: PolygonClass) -> Result<usize, Fatal> {
    v.ok_or_else(|| Fatal(format!("--class {class} needs --{flag}")))
}

impl ShapeArgs {
    fn histogram_params(&self, rng: &mut ChaCha8Rng) -> Result<HistogramParams, Fatal> {
        match (&self.peaks, self.k) {
            (Some(peaks), _) => Ok(HistogramParams { peaks: peaks.clone(), valleys: self.valleys.clone().unwrap_or_default() }),
            (None, Some(k)) if k >= 1 => Ok(random_histogram_params(rng, k, 8, 120)),
            _ => Err(Fatal("--class histogram needs --peaks/--valleys or --k >= 1".into())),
        }
    }

    fn generate(&self, rng: &mut ChaCha8Rng) -> Result<GroundTruth, Fatal> {
        let class = self.class;
        Ok(match class {
            PolygonClass::Iup => gen_iup(IupParams { s: need(self.s, "s", class)?, l: need(self.l, "l", class)? })?,
            PolygonClass::RegularUp => gen_regular_up(need(self.s, "s", class)?)?,
            PolygonClass::DoubleStaircase => gen_double_staircase(need(self.k, "k", class)?)?,
            PolygonClass::Histogram => gen_histogram(&self.histogram_params(rng)?)?,
            PolygonClass::Generic => return Err(Fatal("cannot generate class generic".into())),
        })
    }
}

#[derive(Serialize)]
struct VerdictJson<'a> {
    format: u32,
    #[serde(flatten)]
    result: &'a RecognitionResult,
}

#[derive(Serialize)]
struct TrialLine {
    trial: usize,
    n: usize,
    ok: bool,
    micros: u128,
    candidates: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    error: Option<String>,
}

fn roundtrip_trial(shape: &ShapeArgs, trial: usize) -> TrialLine {
    let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);
    rng.set_stream(trial as u64);
    let gt = match shape.generate(&mut rng) {
        Ok(gt) => gt,
        Err(Fatal(e)) => return TrialLine { trial, n: 0, ok: false, micros: 0, candidates: None, error: Some(e) },
    };
    let g = compute_visibility_graph(&gt.polygon);
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(&mut rng);
    let g = g.relabeled(&perm).expect("permutation of the label set");
    let start = Instant::now();
    let hint = match shape.class {
        PolygonClass::RegularUp => None,
        c => Some(c),
    };
    let r = recognize(&g, hint);
    let micros = start.elapsed().as_micros();
    TrialLine { trial, n: g.n(), ok: r.is_accepted(), micros, candidates: r.candidates_tried, error: r.reason }
}

fn run(cli: Cli) -> Result<ExitCode, Fatal> {
    match cli.command {
        Command::Generate { shape, out } => {
            let mut rng = ChaCha8Rng::seed_from_u64(shape.seed);
            let gt = shape.generate(&mut rng)?;
            write(out.as_deref(), &io::write_polygon(&gt.polygon))?;
        }
        Command::Visgraph { input, out } => {
            let poly = io::parse_polygon(&read(&input)?)?;
            write(out.as_deref(), &io::write_graph(&compute_visibility_graph(&poly)))?;
        }
        Command::Reconstruct { input, class, out, map } => {
            let g = io::parse_graph(&read(&input)?)?;
            let r = recognize(&g, class);
            let Some(rec) = r.reconstruction else {
                eprintln!("rejected: {}", r.reason.unwrap_or_default());
                return Ok(ExitCode::from(1));
            };
            write(out.as_deref(), &io::write_polygon(&rec.polygon))?;
            if let Some(map) = map {
                write(Some(&map), &io::write_map(&rec.coord_of))?;
            }
        }
        Command::Recognize { input, class } => {
            let g = io::parse_graph(&read(&input)?)?;
            let r = recognize(&g, class);
            println!("{}", serde_json::to_string(&VerdictJson { format: io::FORMAT_VERSION, result: &r })?);
            return Ok(ExitCode::from(if r.is_accepted() { 0 } else { 1 }));
        }
        Command::Render { input, map, out } => {
            let poly = io::parse_polygon(&read(&input)?)?;
            let coords = map.map(|m| read(&m).and_then(|t| Ok(io::parse_map(&t)?))).transpose()?;
            if let Some(c) = &coords {
                if c.len() != poly.len() {
                    return Err(Fatal(format!("map has {} labels, polygon has {} vertices", c.len(), poly.len())));
                }
            }
            write(out.as_deref(), &svg::render_svg(&poly, coords.as_deref()))?;
        }
        Command::Roundtrip { shape, trials } => {
            if shape.class == PolygonClass::Generic {
                return Err(Fatal("cannot generate class generic".into()));
            }
            let lines: Vec<TrialLine> = (0..trials).into_par_iter().map(|t| roundtrip_trial(&shape, t)).collect();
            let mut all_ok = true;
            for line in &lines {
                all_ok &= line.ok;
                println!("{}", serde_json::to_string(line)?);
            }
            let passed = lines.iter().filter(|l| l.ok).count();
            println!("{{\"trials\":{trials},\"passed\":{passed}}}");
            return Ok(ExitCode::from(if all_ok { 0 } else { 1 }));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(Fatal(msg)) => {
            eprintln!("orthovis: error: {msg}");
            ExitCode::from(2)
        }
    }
}
