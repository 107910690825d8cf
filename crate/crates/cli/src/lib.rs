//! Command implementations behind the `zonocalc` binary.

pub mod config;
mod suite;

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

use zonocalc::discrete::{
    certifying_grid, d_space_basis, dm_space_basis, is_annihilated, partition_function,
    polarized_partition, table_rows,
};
use zonocalc::geometry::{grid_points, lattice_box, sample_csv, zonotope_window};
use zonocalc::inversion::{
    atiyah_index_forms, brion_vergne_partition_with, invert, InversionOptions,
};
use zonocalc::lattice::{enumerate_bases, fixed_sublist, toric_vertices};
use zonocalc::piecewise::{build_box, build_t_polarized, PiecewisePoly};
use zonocalc::{Cyclo, Rat};

pub use config::RunConfig;
pub use suite::{run_suite, SuiteRow};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error(transparent)]
    Engine(#[from] zonocalc::Error),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

/// Process exit status.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Ok,
    Mismatch,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Outcome::Ok => 0,
            Outcome::Mismatch => 1,
        }
    }

    fn from_verdict(ok: bool) -> Self {
        if ok {
            Outcome::Ok
        } else {
            Outcome::Mismatch
        }
    }
}

pub const COMMANDS: &[&str] = &[
    "box",
    "multispline",
    "partition",
    "dm-basis",
    "vertices",
    "invert",
    "brion-vergne",
    "index",
    "verify",
    "sample",
];

/// Output sink for one run; every artifact lands in `dir`.
pub struct Artifacts {
    dir: PathBuf,
    written: Vec<PathBuf>,
}

impl Artifacts {
    pub fn new(dir: &Path) -> Result<Self, CliError> {
        std::fs::create_dir_all(dir)?;
        Ok(Artifacts {
            dir: dir.to_path_buf(),
            written: Vec::new(),
        })
    }

    pub fn json(&mut self, name: &str, v: &impl Serialize) -> Result<(), CliError> {
        let mut text = serde_json::to_string_pretty(v).expect("serializable");
        text.push('\n');
        self.text(name, &text)
    }

    pub fn text(&mut self, name: &str, body: &str) -> Result<(), CliError> {
        let path = self.dir.join(name);
        std::fs::write(&path, body)?;
        self.written.push(path);
        Ok(())
    }

    pub fn written(&self) -> &[PathBuf] {
        &self.written
    }
}

pub(crate) fn options(cfg: &RunConfig) -> InversionOptions {
    InversionOptions {
        alcove_point: cfg.alcove.clone(),
        truncation_margin: cfg.truncation_margin,
    }
}

/// CSV of a cyclotomic-valued piecewise function; wall points are skipped.
fn sample_cyclo(f: &PiecewisePoly<Cyclo>, res: usize) -> String {
    let s = f.dim();
    let mut out = String::new();
    let header: Vec<String> = (1..=s).map(|i| format!("v{i}")).collect();
    writeln!(out, "{},value", header.join(",")).unwrap();
    for p in grid_points(f.window(), res) {
        let Ok(v) = f.eval(&p) else { continue };
        let coords: Vec<String> = p.iter().map(Rat::to_string).collect();
        writeln!(out, "{},{}", coords.join(","), v).unwrap();
    }
    out
}

fn sample_rat(f: &PiecewisePoly<Rat>, res: usize) -> Result<String, CliError> {
    Ok(sample_csv(f.window(), res, |v| f.eval(v))?)
}

/// Runs one command; artifacts are written before the outcome is returned.
pub fn run(
    command: &str,
    cfg: &RunConfig,
    out: &mut Artifacts,
    emit_grid: Option<usize>,
) -> Result<Outcome, CliError> {
    if let Some(c) = &cfg.command {
        if c != command {
            return Err(CliError::Config(format!(
                "key `command`: config says `{c}` but `{command}` was requested"
            )));
        }
    }
    match command {
        "box" => {
            let x = cfg.system()?;
            let w = cfg.window(x.dim())?.unwrap_or_else(|| zonotope_window(x));
            let b = build_box(x, &w)?;
            let integral = b.integrate();
            out.json("box.json", &json!({ "integral": integral, "spline": b.to_json() }))?;
            if let Some(res) = emit_grid {
                out.text("box.csv", &sample_rat(&b, res)?)?;
            }
            Ok(Outcome::Ok)
        }
        "multispline" => {
            let x = cfg.system()?;
            let face = cfg.face(x)?;
            let w = cfg
                .window(x.dim())?
                .ok_or_else(|| CliError::Config("missing key `window`".into()))?;
            let t = build_t_polarized(x, &face, &w)?;
            out.json("multispline.json", &t.to_json())?;
            if let Some(res) = emit_grid {
                out.text("multispline.csv", &sample_rat(&t, res)?)?;
            }
            Ok(Outcome::Ok)
        }
        "partition" => {
            let x = cfg.system()?;
            let f = match &cfg.face {
                Some(_) => polarized_partition(x, &cfg.face(x)?)?,
                None => partition_function(x)?,
            };
            let pts = lattice_box(&cfg.lattice_box(x.dim())?);
            out.json(
                "partition.json",
                &json!({ "polarized": cfg.face.is_some(), "table": table_rows(&f, &pts)? }),
            )?;
            Ok(Outcome::Ok)
        }
        "dm-basis" => {
            let x = cfg.system()?;
            let d = d_space_basis(x)?;
            let dm = dm_space_basis(x)?;
            let bases = enumerate_bases(x);
            let det_sum: i64 = bases.iter().map(|(_, d)| d.abs()).sum();
            let grid = certifying_grid(x, cfg.dilation);
            let mut annihilated = true;
            for e in &dm {
                annihilated &= is_annihilated(x, &e.to_function(x.dim()), &grid)?;
            }
            let ok = annihilated && d.len() == bases.len() && dm.len() as i64 == det_sum;
            out.json(
                "dm_basis.json",
                &json!({
                    "d_basis": d,
                    "dm_basis": dm.iter().map(|e| &e.terms).collect::<Vec<_>>(),
                    "dim_d": d.len(),
                    "bases": bases.len(),
                    "dim_dm": dm.len(),
                    "det_sum": det_sum,
                    "certifying_grid_points": grid.len(),
                    "annihilated": annihilated,
                    "verdict": ok,
                }),
            )?;
            Ok(Outcome::from_verdict(ok))
        }
        "vertices" => {
            let x = cfg.system()?;
            let rows: Vec<Value> = toric_vertices(x)?
                .iter()
                .map(|g| json!({ "vertex": g, "order": g.order(), "fixed": fixed_sublist(x, g) }))
                .collect();
            out.json("vertices.json", &rows)?;
            Ok(Outcome::Ok)
        }
        "invert" => {
            let x = cfg.system()?;
            let k = cfg.k(x.dim())?;
            let bx = cfg.lattice_box(x.dim())?;
            let report = invert(x, &k, &bx, &options(cfg))?;
            out.json("invert.json", &report.to_json()?)?;
            if let Some(res) = emit_grid {
                for (i, c) in report.contributions.iter().enumerate() {
                    if let Some(t) = &c.transformed {
                        out.text(&format!("invert_vertex_{i}.csv"), &sample_cyclo(t, res))?;
                    }
                }
            }
            Ok(Outcome::from_verdict(report.verdict))
        }
        "brion-vergne" => {
            let x = cfg.system()?;
            let bx = cfg.lattice_box(x.dim())?;
            let (p, report) = brion_vergne_partition_with(x, &bx, &options(cfg))?;
            let values: Vec<Rat> = report
                .points
                .iter()
                .map(|l| p.eval_rat(l))
                .collect::<zonocalc::Result<_>>()?;
            out.json(
                "brion_vergne.json",
                &json!({ "values": values, "report": report.to_json()? }),
            )?;
            Ok(Outcome::from_verdict(report.verdict))
        }
        "index" => {
            let x = cfg.system()?;
            let face = cfg.face(x)?;
            let pts = lattice_box(&cfg.lattice_box(x.dim())?);
            let (direct, shifted) = atiyah_index_forms(x, &face)?;
            let agree = direct.agrees_on(&shifted, &pts)?;
            out.json(
                "index.json",
                &json!({
                    "index": table_rows(&direct, &pts)?,
                    "translate_form": table_rows(&shifted, &pts)?,
                    "verdict": agree,
                }),
            )?;
            Ok(Outcome::from_verdict(agree))
        }
        "verify" => {
            let name = cfg.suite.as_deref().unwrap_or("all");
            let systems = suite::systems_for(cfg);
            let started = Instant::now();
            let rows = run_suite(name, &systems, cfg)?;
            let ok = rows.iter().all(|r| r.verdict);
            let summary: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "identity": r.identity, "system": r.system, "verdict": r.verdict, "detail": r.detail }))
                .collect();
            out.json("summary.json", &json!({ "suite": name, "verdict": ok, "rows": summary }))?;
            let timings: Vec<Value> = rows
                .iter()
                .map(|r| json!({ "identity": r.identity, "system": r.system, "wall_ms": ms(r.wall) }))
                .collect();
            out.json("timings.json", &json!({ "total_ms": ms(started.elapsed()), "rows": timings }))?;
            for r in &rows {
                println!(
                    "{} {:<40} {:<4} {:>9.3} ms",
                    if r.verdict { "ok  " } else { "FAIL" },
                    r.identity,
                    r.system,
                    ms(r.wall)
                );
            }
            Ok(Outcome::from_verdict(ok))
        }
        "sample" => {
            let x = cfg.system()?;
            let res = cfg.resolution.unwrap_or(16);
            let csv = match cfg.target.unwrap_or(config::SampleTarget::Box) {
                config::SampleTarget::Box => {
                    let w = cfg.window(x.dim())?.unwrap_or_else(|| zonotope_window(x));
                    let b = build_box(x, &w)?;
                    sample_csv(&w, res, |v| b.eval(v))?
                }
                config::SampleTarget::Multispline => {
                    let w = cfg
                        .window(x.dim())?
                        .ok_or_else(|| CliError::Config("missing key `window`".into()))?;
                    sample_rat(&build_t_polarized(x, &cfg.face(x)?, &w)?, res)?
                }
            };
            out.text("sample.csv", &csv)?;
            Ok(Outcome::Ok)
        }
        other => Err(CliError::Config(format!(
            "unknown command `{other}`; expected one of {}",
            COMMANDS.join(", ")
        ))),
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1000.0
}
