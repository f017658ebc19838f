//! Scenario bundles: several named trajectories with provenance, stored as JSON.
//!
//! ```json
//! {"trajectories": [
//!   {"name": "Surge", "family": "Shell", "unit": "TWh",
//!    "points": [[2024, 416.0], [2035, 1700.0]],
//!    "provenance": {"source": "...", "interpolated": []}}
//! ]}
//! ```
//!
//! `provenance.interpolated` lists years whose value was filled in between stated anchors.
//! Those points are placeholders for curve shape, not data.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scenario::{ensure_unique, Family, ScenarioTrajectory};
use crate::series::{AnnualSeries, Unit};

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct Provenance {
    #[serde(default)]
    pub source: String,
    #[serde(default)]
    pub interpolated: Vec<i32>,
}

#[derive(Serialize, Deserialize)]
struct Record {
    name: String,
    family: Family,
    unit: Unit,
    points: Vec<(i32, f64)>,
    #[serde(default)]
    provenance: Provenance,
}

#[derive(Serialize, Deserialize)]
struct Document {
    trajectories: Vec<Record>,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct ScenarioBundle {
    trajectories: Vec<ScenarioTrajectory>,
    provenance: Vec<Provenance>,
}

impl ScenarioBundle {
    pub fn new(entries: Vec<(ScenarioTrajectory, Provenance)>) -> Result<Self> {
        let (trajectories, provenance): (Vec<_>, Vec<_>) = entries.into_iter().unzip();
        ensure_unique(&trajectories)?;
        for (t, p) in trajectories.iter().zip(&provenance) {
            if let Some(y) = p.interpolated.iter().find(|y| t.series.get(**y).is_none()) {
                return Err(Error::InvalidSeries(format!(
                    "{}: interpolated year {y} has no point",
                    t.name
                )));
            }
        }
        Ok(Self {
            trajectories,
            provenance,
        })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: Document = serde_json::from_str(text)?;
        let entries = doc
            .trajectories
            .into_iter()
            .map(|r| {
                let series = AnnualSeries::new(r.unit, r.points)
                    .map_err(|e| Error::InvalidSeries(format!("{}: {e}", r.name)))?;
                Ok((ScenarioTrajectory::new(r.name, r.family, series), r.provenance))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_json(&super::read_text(path)?)
    }

    pub fn to_json(&self) -> Result<String> {
        let doc = Document {
            trajectories: self
                .trajectories
                .iter()
                .zip(&self.provenance)
                .map(|(t, p)| Record {
                    name: t.name.clone(),
                    family: t.family,
                    unit: t.series.unit(),
                    points: t.series.points().to_vec(),
                    provenance: p.clone(),
                })
                .collect(),
        };
        Ok(serde_json::to_string_pretty(&doc)? + "\n")
    }

    pub fn trajectories(&self) -> &[ScenarioTrajectory] {
        &self.trajectories
    }

    pub fn into_trajectories(self) -> Vec<ScenarioTrajectory> {
        self.trajectories
    }

    pub fn provenance(&self, i: usize) -> &Provenance {
        &self.provenance[i]
    }

    pub fn len(&self) -> usize {
        self.trajectories.len()
    }

    pub fn is_empty(&self) -> bool {
        self.trajectories.is_empty()
    }

    /// Points of trajectory `i` that were stated rather than interpolated.
    pub fn anchors(&self, i: usize) -> Vec<(i32, f64)> {
        let interp = &self.provenance[i].interpolated;
        self.trajectories[i]
            .series
            .points()
            .iter()
            .copied()
            .filter(|(y, _)| !interp.contains(y))
            .collect()
    }
}
