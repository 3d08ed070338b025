use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::training::{SweepTable, TrainingTrace};

pub const TRAINING_HEADER: [&str; 5] = [
    "step times epsilon",
    "SsvTraining",
    "SsvGraphTraining",
    "SsvTestingUsv",
    "SsvGraphTestingUsv",
];

pub const SWEEP_HEADER: [&str; 5] = [
    "numberSupervisedPairsList",
    "SsvTrainingMeanList",
    "SsvGraphTrainingMeanList",
    "SsvTestingUsvMeanList",
    "SsvGraphTestingUsvMeanList",
];

/// One row of the per-round CSV. Loss columns are fidelities of each arm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrainingRow {
    #[serde(rename = "step times epsilon")]
    pub step_times_epsilon: f64,
    #[serde(rename = "SsvTraining")]
    pub supervised_training: f64,
    #[serde(rename = "SsvGraphTraining")]
    pub graph_training: f64,
    #[serde(rename = "SsvTestingUsv")]
    pub supervised_testing: f64,
    #[serde(rename = "SsvGraphTestingUsv")]
    pub graph_testing: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepCsvRow {
    #[serde(rename = "numberSupervisedPairsList")]
    pub s: usize,
    #[serde(rename = "SsvTrainingMeanList")]
    pub supervised_training: f64,
    #[serde(rename = "SsvGraphTrainingMeanList")]
    pub graph_training: f64,
    #[serde(rename = "SsvTestingUsvMeanList")]
    pub supervised_testing: f64,
    #[serde(rename = "SsvGraphTestingUsvMeanList")]
    pub graph_testing: f64,
}

fn check_fidelity(name: &str, row: usize, value: f64) -> Result<f64> {
    if !value.is_finite() || !(0.0..=1.0).contains(&value) {
        return Err(Error::Numerical(format!("{name} in row {row} is {value}, outside [0, 1]")));
    }
    Ok(value)
}

fn defined(name: &str, row: usize, value: Option<f64>) -> Result<f64> {
    let v = value.ok_or_else(|| Error::Numerical(format!("{name} undefined in row {row}")))?;
    check_fidelity(name, row, v)
}

/// Pairs the two arms' records into CSV rows, rejecting NaN, Inf and out-of-range values.
pub fn training_rows(supervised: &TrainingTrace, graph: &TrainingTrace) -> Result<Vec<TrainingRow>> {
    if supervised.records.len() != graph.records.len() {
        return Err(Error::Numerical("arms recorded different numbers of rounds".into()));
    }
    let eps = supervised.hyperparams.epsilon;
    supervised
        .records
        .iter()
        .zip(&graph.records)
        .enumerate()
        .map(|(i, (a, b))| {
            Ok(TrainingRow {
                // Rounded so that e.g. 3 * 0.01 prints as 0.03.
                step_times_epsilon: (a.step_index as f64 * eps * 1e12).round() / 1e12,
                supervised_training: defined("SsvTraining", i, a.l_sv)?,
                graph_training: defined("SsvGraphTraining", i, b.l_sv)?,
                supervised_testing: defined("SsvTestingUsv", i, a.l_usv)?,
                graph_testing: defined("SsvGraphTestingUsv", i, b.l_usv)?,
            })
        })
        .collect()
}

pub fn sweep_rows(table: &SweepTable) -> Result<Vec<SweepCsvRow>> {
    table
        .rows
        .iter()
        .enumerate()
        .map(|(i, r)| {
            Ok(SweepCsvRow {
                s: r.s,
                supervised_training: check_fidelity("SsvTrainingMeanList", i, r.supervised_training)?,
                graph_training: check_fidelity("SsvGraphTrainingMeanList", i, r.graph_training)?,
                supervised_testing: check_fidelity("SsvTestingUsvMeanList", i, r.supervised_testing)?,
                graph_testing: check_fidelity("SsvGraphTestingUsvMeanList", i, r.graph_testing)?,
            })
        })
        .collect()
}

pub fn write_rows<T: Serialize>(path: &Path, rows: &[T]) -> Result<()> {
    let mut w = csv::Writer::from_path(path)?;
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_rows<T: for<'de> Deserialize<'de>>(path: &Path, header: &[&str]) -> Result<Vec<T>> {
    let mut r = csv::Reader::from_path(path)?;
    let found: Vec<String> = r.headers()?.iter().map(str::to_owned).collect();
    if found != header {
        return Err(Error::Serialization(format!(
            "{}: unexpected CSV header {found:?}",
            path.display()
        )));
    }
    r.deserialize().map(|row| row.map_err(Error::from)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::training::SweepRow;

    #[test]
    fn sweep_rows_round_trip_with_exact_header() {
        let table = SweepTable {
            shots: 1,
            rows: vec![SweepRow {
                s: 2,
                supervised_training: 0.9,
                graph_training: 0.8,
                supervised_testing: 0.4,
                graph_testing: 0.6,
            }],
        };
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.csv");
        let rows = sweep_rows(&table).unwrap();
        write_rows(&path, &rows).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert_eq!(text.lines().next().unwrap(), SWEEP_HEADER.join(","));
        let back: Vec<SweepCsvRow> = read_rows(&path, &SWEEP_HEADER).unwrap();
        assert_eq!(back, rows);
        assert!(read_rows::<SweepCsvRow>(&path, &TRAINING_HEADER).is_err());
    }

    #[test]
    fn rejects_nan() {
        let table = SweepTable {
            shots: 1,
            rows: vec![SweepRow {
                s: 2,
                supervised_training: f64::NAN,
                graph_training: 0.8,
                supervised_testing: 0.4,
                graph_testing: 0.6,
            }],
        };
        assert!(matches!(sweep_rows(&table), Err(Error::Numerical(_))));
    }
}
