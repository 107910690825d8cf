use std::time::{Duration, Instant};

use rayon::prelude::*;

use zonocalc::discrete::{
    brute_force_partition, certifying_grid, d_space_basis, dm_space_basis, is_annihilated,
    partition_function, regular_faces, LatticeFunction,
};
use zonocalc::geometry::{lattice_box, positive_functional, Window};
use zonocalc::inversion::{atiyah_index_forms, brion_vergne_partition, invert, verify_box_index};
use zonocalc::lattice::enumerate_bases;
use zonocalc::{Rat, WeightList};

use crate::config::{NamedSystem, RunConfig};
use crate::CliError;

#[derive(Debug, Clone)]
pub struct SuiteRow {
    pub identity: String,
    pub system: String,
    pub verdict: bool,
    pub detail: String,
    pub wall: Duration,
}

pub fn default_systems() -> Vec<NamedSystem> {
    let mk = |name: &str, dim, w: Vec<Vec<i64>>| NamedSystem {
        name: name.into(),
        system: WeightList::new(dim, w).unwrap(),
    };
    vec![
        mk("S1", 1, vec![vec![1]]),
        mk("S2", 1, vec![vec![1], vec![1]]),
        mk("S3", 1, vec![vec![1], vec![1], vec![1]]),
        mk("S4", 1, vec![vec![2]]),
        mk("S5", 1, vec![vec![3]]),
        mk("U2", 2, vec![vec![1, 0], vec![0, 1], vec![1, 1]]),
        mk("N2", 2, vec![vec![1, 0], vec![0, 1], vec![1, 1], vec![1, -1]]),
    ]
}

/// Systems named in the config, else its single system, else the defaults.
pub fn systems_for(cfg: &RunConfig) -> Vec<NamedSystem> {
    if let Some(s) = &cfg.systems {
        return s.clone();
    }
    if let Some(x) = &cfg.system {
        return vec![NamedSystem {
            name: "system".into(),
            system: x.clone(),
        }];
    }
    default_systems()
}

type Check = fn(&WeightList, &RunConfig) -> zonocalc::Result<(bool, String)>;

fn inversion_delta(x: &WeightList, cfg: &RunConfig) -> zonocalc::Result<(bool, String)> {
    let bx = vec![(-3, 3); x.dim()];
    let r = invert(x, &LatticeFunction::delta0(x.dim()), &bx, &crate::options(cfg))?;
    Ok((r.verdict, format!("{} vertices", r.contributions.len())))
}

fn inversion_shifted(x: &WeightList, cfg: &RunConfig) -> zonocalc::Result<(bool, String)> {
    let bx = vec![(-3, 3); x.dim()];
    let mut e = vec![0; x.dim()];
    e[0] = 1;
    let k = LatticeFunction::finite_rat(
        x.dim(),
        [(vec![0; x.dim()], Rat::from_int(2)), (e, Rat::from_int(-3))],
    );
    let r = invert(x, &k, &bx, &crate::options(cfg))?;
    Ok((r.verdict, String::new()))
}

fn brion_vergne(x: &WeightList, _: &RunConfig) -> zonocalc::Result<(bool, String)> {
    if positive_functional(x.dim(), x.weights()).is_none() {
        return Ok((true, "skipped: cone not pointed".into()));
    }
    let (_, r) = brion_vergne_partition(x, &vec![(0, 6); x.dim()])?;
    Ok((r.verdict, String::new()))
}

fn partition_oracle(x: &WeightList, _: &RunConfig) -> zonocalc::Result<(bool, String)> {
    if positive_functional(x.dim(), x.weights()).is_none() {
        return Ok((true, "skipped: cone not pointed".into()));
    }
    let p = partition_function(x)?;
    let pts = lattice_box(&vec![(-6, 6); x.dim()]);
    for l in &pts {
        if p.eval_rat(l)? != Rat::from_int(brute_force_partition(x, l)? as i64) {
            return Ok((false, format!("differs at {l:?}")));
        }
    }
    Ok((true, format!("{} points", pts.len())))
}

fn dm_dimensions(x: &WeightList, _: &RunConfig) -> zonocalc::Result<(bool, String)> {
    let bases = enumerate_bases(x);
    let det_sum: i64 = bases.iter().map(|(_, d)| d.abs()).sum();
    let d = d_space_basis(x)?.len();
    let dm = dm_space_basis(x)?.len();
    Ok((
        d == bases.len() && dm as i64 == det_sum,
        format!("dim D = {d}, bases = {}, dim DM = {dm}, det sum = {det_sum}", bases.len()),
    ))
}

fn dm_annihilation(x: &WeightList, cfg: &RunConfig) -> zonocalc::Result<(bool, String)> {
    let grid = certifying_grid(x, cfg.dilation);
    for e in dm_space_basis(x)? {
        if !is_annihilated(x, &e.to_function(x.dim()), &grid)? {
            return Ok((false, "basis element not annihilated".into()));
        }
    }
    Ok((true, format!("{} grid points", grid.len())))
}

fn index_forms(x: &WeightList, _: &RunConfig) -> zonocalc::Result<(bool, String)> {
    let pts = lattice_box(&vec![(-6, 6); x.dim()]);
    let faces = regular_faces(x);
    for f in &faces {
        let (a, b) = atiyah_index_forms(x, f)?;
        if !a.agrees_on(&b, &pts)? {
            return Ok((false, format!("face {f:?}")));
        }
    }
    Ok((true, format!("{} faces", faces.len())))
}

fn box_index(x: &WeightList, _: &RunConfig) -> zonocalc::Result<(bool, String)> {
    let w = Window::cube(-3, 3, x.dim())?;
    let faces = regular_faces(x);
    for f in &faces {
        if !verify_box_index(x, f, &w)?.holds {
            return Ok((false, format!("face {f:?}")));
        }
    }
    Ok((true, format!("{} faces", faces.len())))
}

fn checks(suite: &str) -> Option<Vec<(&'static str, Check)>> {
    let inversion: Vec<(&'static str, Check)> = vec![
        ("inversion(delta0)", inversion_delta),
        ("inversion(2 delta0 - 3 delta_e1)", inversion_shifted),
        ("brion_vergne == partition", brion_vergne),
    ];
    let partition: Vec<(&'static str, Check)> =
        vec![("partition == enumeration", partition_oracle)];
    let dm: Vec<(&'static str, Check)> = vec![
        ("dim D == #bases, dim DM == det sum", dm_dimensions),
        ("DM annihilated on certifying grid", dm_annihilation),
    ];
    let index: Vec<(&'static str, Check)> = vec![
        ("index forms agree", index_forms),
        ("box index identity", box_index),
    ];
    Some(match suite {
        "inversion" => inversion,
        "partition" => partition,
        "dm" => dm,
        "index" => index,
        "all" => [inversion, partition, dm, index].concat(),
        _ => return None,
    })
}

/// Rows of the named suite in a deterministic order; rows run concurrently.
pub fn run_suite(
    name: &str,
    systems: &[NamedSystem],
    cfg: &RunConfig,
) -> Result<Vec<SuiteRow>, CliError> {
    let list = checks(name).ok_or_else(|| {
        CliError::Config(format!(
            "key `suite`: unknown suite `{name}`; expected inversion, partition, dm, index or all"
        ))
    })?;
    for s in systems {
        s.system
            .require_spanning()
            .map_err(|e| CliError::Config(format!("system `{}`: {e}", s.name)))?;
    }
    let jobs: Vec<(&NamedSystem, &'static str, Check)> = systems
        .iter()
        .flat_map(|s| list.iter().map(move |(id, f)| (s, *id, *f)))
        .collect();
    Ok(jobs
        .par_iter()
        .map(|(s, id, f)| {
            let start = Instant::now();
            let (verdict, detail) = match f(&s.system, cfg) {
                Ok(v) => v,
                Err(e) => (false, format!("error: {e}")),
            };
            SuiteRow {
                identity: id.to_string(),
                system: s.name.clone(),
                verdict,
                detail,
                wall: start.elapsed(),
            }
        })
        .collect())
}
