use std::path::{Path, PathBuf};

use serde::Deserialize;

use zonocalc::discrete::{LatticeFunction, RegularFace};
use zonocalc::geometry::Window;
use zonocalc::{Rat, WeightList};

use crate::CliError;

/// One lattice value of an explicit `K`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Entry {
    pub point: Vec<i64>,
    pub value: Rat,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum KSpec {
    Delta0,
    Table(Vec<Entry>),
}

#[derive(Debug, Clone, Copy, Deserialize, PartialEq, Eq)]
#[serde(rename_all = "snake_case")]
pub enum SampleTarget {
    Box,
    Multispline,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedSystem {
    pub name: String,
    pub system: WeightList,
}

/// A single JSON run document.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub system: Option<WeightList>,
    /// Must agree with the command given on the command line when present.
    pub command: Option<String>,
    pub face: Option<Vec<Rat>>,
    pub window: Option<Window>,
    #[serde(rename = "box")]
    pub lattice_box: Option<Vec<(i64, i64)>>,
    /// A point of the limit alcove, overriding the deterministic choice.
    pub alcove: Option<Vec<Rat>>,
    #[serde(default)]
    pub truncation_margin: usize,
    #[serde(default = "default_dilation")]
    pub dilation: i64,
    pub k: Option<KSpec>,
    pub suite: Option<String>,
    pub systems: Option<Vec<NamedSystem>>,
    pub resolution: Option<usize>,
    pub target: Option<SampleTarget>,
    pub out: Option<PathBuf>,
}

fn default_dilation() -> i64 {
    2
}

impl RunConfig {
    pub fn from_str(text: &str) -> Result<Self, CliError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            CliError::Config(format!(
                "line {}, column {}, key `{}`: {}",
                inner.line(),
                inner.column(),
                path,
                inner
            ))
        })
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::from_str(&text)
    }

    pub fn system(&self) -> Result<&WeightList, CliError> {
        self.system
            .as_ref()
            .ok_or_else(|| CliError::Config("missing key `system`".into()))
    }

    pub fn face(&self, x: &WeightList) -> Result<RegularFace, CliError> {
        let phi = self
            .face
            .clone()
            .ok_or_else(|| CliError::Config("missing key `face`".into()))?;
        if phi.len() != x.dim() {
            return Err(CliError::Config("key `face`: wrong dimension".into()));
        }
        Ok(RegularFace::new(phi))
    }

    /// The configured box, or `[−3, 3]^s`.
    pub fn lattice_box(&self, dim: usize) -> Result<Vec<(i64, i64)>, CliError> {
        match &self.lattice_box {
            None => Ok(vec![(-3, 3); dim]),
            Some(b) if b.len() == dim && b.iter().all(|(l, h)| l <= h) => Ok(b.clone()),
            Some(_) => Err(CliError::Config(
                "key `box`: expected one [lo, hi] pair per dimension with lo <= hi".into(),
            )),
        }
    }

    pub fn window(&self, dim: usize) -> Result<Option<Window>, CliError> {
        match &self.window {
            Some(w) if w.dim() != dim => {
                Err(CliError::Config("key `window`: wrong dimension".into()))
            }
            w => Ok(w.clone()),
        }
    }

    pub fn k(&self, dim: usize) -> Result<LatticeFunction, CliError> {
        match &self.k {
            None | Some(KSpec::Delta0) => Ok(LatticeFunction::delta0(dim)),
            Some(KSpec::Table(rows)) => {
                if rows.iter().any(|e| e.point.len() != dim) {
                    return Err(CliError::Config("key `k.table`: point of wrong dimension".into()));
                }
                Ok(LatticeFunction::finite_rat(
                    dim,
                    rows.iter().map(|e| (e.point.clone(), e.value.clone())),
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_unknown_keys_with_context() {
        let err = RunConfig::from_str("{\n  \"system\": {\"dim\": 1, \"weights\": [[1]]},\n  \"colour\": 3\n}")
            .unwrap_err();
        let msg = err.to_string();
        assert!(msg.contains("line 3"), "{msg}");
        assert!(msg.contains("colour"), "{msg}");
    }

    #[test]
    fn rejects_rational_weights() {
        assert!(RunConfig::from_str(r#"{"system": {"dim": 1, "weights": [[0.5]]}}"#).is_err());
    }

    #[test]
    fn parses_table_k() {
        let c = RunConfig::from_str(
            r#"{"system": {"dim": 1, "weights": [[1]]},
                "k": {"table": [{"point": [0], "value": 2}, {"point": [1], "value": "-1/2"}]}}"#,
        )
        .unwrap();
        let k = c.k(1).unwrap();
        assert_eq!(k.eval_rat(&[1]).unwrap(), Rat::new(-1, 2));
        assert_eq!(c.dilation, 2);
    }
}
