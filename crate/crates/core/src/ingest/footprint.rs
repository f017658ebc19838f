//! Household-equivalence and per-task inference energy.

use std::fmt;
use std::fmt::Write as _;
use std::str::FromStr;

use crate::error::{Error, Result};

/// US homes whose annual energy use emits one Mt CO2 (13.5 million homes per 100 Mt).
pub const HOMES_PER_MT: f64 = 135_000.0;

/// Number of average US homes whose yearly energy use emits `co2_mt` Mt CO2.
pub fn equivalent_homes(co2_mt: f64) -> Result<f64> {
    if co2_mt.is_nan() || co2_mt < 0.0 {
        return Err(Error::NegativeInput(co2_mt));
    }
    Ok(co2_mt * HOMES_PER_MT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InferenceTask {
    TextClassification,
    TextGeneration,
    Summarization,
    ObjectDetection,
    ImageCaptioning,
    ImageGeneration,
}

impl InferenceTask {
    pub const ALL: [InferenceTask; 6] = [
        InferenceTask::TextClassification,
        InferenceTask::TextGeneration,
        InferenceTask::Summarization,
        InferenceTask::ObjectDetection,
        InferenceTask::ImageCaptioning,
        InferenceTask::ImageGeneration,
    ];

    pub fn key(self) -> &'static str {
        match self {
            InferenceTask::TextClassification => "text_classification",
            InferenceTask::TextGeneration => "text_generation",
            InferenceTask::Summarization => "summarization",
            InferenceTask::ObjectDetection => "object_detection",
            InferenceTask::ImageCaptioning => "image_captioning",
            InferenceTask::ImageGeneration => "image_generation",
        }
    }
}

impl fmt::Display for InferenceTask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.key())
    }
}

impl FromStr for InferenceTask {
    type Err = Error;

    /// Accepts `image_generation`, `image-generation` or `Image generation`.
    fn from_str(s: &str) -> Result<Self> {
        let norm: String = s
            .trim()
            .chars()
            .map(|c| if c == '-' || c == ' ' { '_' } else { c.to_ascii_lowercase() })
            .collect();
        InferenceTask::ALL
            .into_iter()
            .find(|t| t.key() == norm)
            .ok_or_else(|| Error::UnknownTask(s.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct InferenceEnergy {
    pub task: InferenceTask,
    pub energy_wh: f64,
    /// What one unit of `count` means, e.g. "1000 inferences".
    pub unit: String,
}

/// Energy per listed unit for the six model tasks.
#[derive(Debug, Clone, PartialEq)]
pub struct InferenceEnergyTable {
    entries: Vec<InferenceEnergy>,
}

impl InferenceEnergyTable {
    /// Parses `task,energy_wh,unit` rows. Every task must appear exactly once.
    pub fn parse(text: &str) -> Result<Self> {
        let mut rdr = csv::ReaderBuilder::new()
            .has_headers(true)
            .from_reader(text.as_bytes());
        let headers = rdr
            .headers()
            .map_err(|e| Error::schema(1, 1, e.to_string()))?
            .clone();
        if headers.iter().collect::<Vec<_>>() != ["task", "energy_wh", "unit"] {
            return Err(Error::schema(1, 1, "expected header `task,energy_wh,unit`"));
        }
        let mut entries: Vec<InferenceEnergy> = Vec::new();
        for rec in rdr.records() {
            let rec = rec.map_err(|e| {
                Error::schema(e.position().map_or(0, |p| p.line()), 1, e.to_string())
            })?;
            let line = rec.position().map_or(0, |p| p.line());
            let task: InferenceTask = rec[0]
                .parse()
                .map_err(|_| Error::schema(line, 1, format!("unknown task {:?}", &rec[0])))?;
            let energy_wh = rec[1]
                .trim()
                .parse::<f64>()
                .ok()
                .filter(|v| *v > 0.0 && v.is_finite())
                .ok_or_else(|| Error::schema(line, 2, "positive energy expected"))?;
            if entries.iter().any(|e| e.task == task) {
                return Err(Error::schema(line, 1, format!("duplicate task {task}")));
            }
            entries.push(InferenceEnergy {
                task,
                energy_wh,
                unit: rec[2].to_string(),
            });
        }
        if let Some(t) = InferenceTask::ALL
            .iter()
            .find(|t| !entries.iter().any(|e| e.task == **t))
        {
            return Err(Error::schema(1, 1, format!("missing task {t}")));
        }
        Ok(Self { entries })
    }

    pub fn entries(&self) -> &[InferenceEnergy] {
        &self.entries
    }

    pub fn get(&self, task: InferenceTask) -> &InferenceEnergy {
        self.entries
            .iter()
            .find(|e| e.task == task)
            .expect("all tasks are present")
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("task,energy_wh,unit\n");
        for e in &self.entries {
            writeln!(out, "{},{},{}", e.task, e.energy_wh, e.unit).unwrap();
        }
        out
    }

    /// Energy in Wh for `count` units of `task`.
    pub fn energy(&self, task: InferenceTask, count: u64) -> f64 {
        self.get(task).energy_wh * count as f64
    }
}

/// Energy in Wh for `count` listed units of the named task, from the bundled table.
pub fn inference_energy(task: &str, count: u64) -> Result<f64> {
    let task: InferenceTask = task.parse()?;
    Ok(super::bundled::inference_energy_table().energy(task, count))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn homes() {
        assert_eq!(equivalent_homes(100.0).unwrap(), 13.5e6);
        assert_eq!(equivalent_homes(0.0).unwrap(), 0.0);
        assert!((equivalent_homes(126.0).unwrap() - 17.01e6).abs() < 1e-6);
        assert!(matches!(equivalent_homes(-1.0), Err(Error::NegativeInput(_))));
    }

    #[test]
    fn inference_examples() {
        assert_eq!(inference_energy("image_generation", 1).unwrap(), 2907.0);
        assert_eq!(inference_energy("text_generation", 10).unwrap(), 470.0);
        for t in InferenceTask::ALL {
            assert_eq!(inference_energy(t.key(), 0).unwrap(), 0.0);
        }
        assert!(matches!(inference_energy("poetry", 1), Err(Error::UnknownTask(_))));
        assert_eq!("Image generation".parse::<InferenceTask>().unwrap(), InferenceTask::ImageGeneration);
    }

    #[test]
    fn table_is_complete_and_ordered() {
        let t = crate::ingest::bundled::inference_energy_table();
        assert_eq!(t.entries().len(), 6);
        assert!(t.entries().iter().all(|e| e.energy_wh > 0.0));
        let text: f64 = [
            InferenceTask::TextClassification,
            InferenceTask::TextGeneration,
            InferenceTask::Summarization,
        ]
        .iter()
        .map(|&k| t.get(k).energy_wh)
        .sum();
        assert_eq!(text, 98.0);
        assert!(text < t.get(InferenceTask::ImageGeneration).energy_wh);
    }

    #[test]
    fn parse_errors() {
        assert!(InferenceEnergyTable::parse("task,energy_wh,unit\ntext_generation,47,x\n").is_err());
        assert!(InferenceEnergyTable::parse("task,wh,unit\n").is_err());
    }

    proptest! {
        // Inputs on a 1/1024 grid keep every product exact, so linearity holds bit for bit.
        #[test]
        fn homes_linear(a in 0u32..1_000_000_000, b in 0u32..1_000_000_000) {
            let (a, b) = (f64::from(a) / 1024.0, f64::from(b) / 1024.0);
            prop_assert_eq!(
                equivalent_homes(a + b).unwrap(),
                equivalent_homes(a).unwrap() + equivalent_homes(b).unwrap()
            );
        }
    }
}
