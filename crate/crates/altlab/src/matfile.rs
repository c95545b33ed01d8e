//! On-disk formats: the matrix file (rows/cols/kind + flat row-major
//! [re, im] pairs, JSON) and the witness file emitted by the prober, which
//! inlines its matrices in the same format so a campaign or the `case`
//! subcommand can replay them.

use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ineq::{IneqId, IneqParams};
use crate::mat::ComplexMatrix;
use crate::probe::{TrajectoryPoint, Witness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    General,
    Hermitian,
    Psd,
}

/// The wire form of one matrix.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFile {
    pub rows: usize,
    pub cols: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub kind: Option<MatrixKind>,
    /// Flat row-major [re, im] pairs.
    pub data: Vec<[f64; 2]>,
}

impl MatrixFile {
    pub fn from_matrix(m: &ComplexMatrix, kind: Option<MatrixKind>) -> Self {
        Self {
            rows: m.rows(),
            cols: m.cols(),
            kind,
            data: m.entries().iter().map(|z| [z.re, z.im]).collect(),
        }
    }

    pub fn to_matrix(&self) -> Result<ComplexMatrix> {
        let data: Vec<Complex64> = self
            .data
            .iter()
            .map(|&[re, im]| Complex64::new(re, im))
            .collect();
        ComplexMatrix::new(self.rows, self.cols, data)
    }
}

fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    // serde_json reports 1-based line and column.
    let mut offset = 0;
    for (i, l) in text.split('\n').enumerate() {
        if i + 1 == line {
            return offset + column.saturating_sub(1);
        }
        offset += l.len() + 1;
    }
    offset
}

/// Parses a matrix document; parse errors cite the byte offset.
pub fn parse_matrix(text: &str) -> Result<(ComplexMatrix, Option<MatrixKind>)> {
    let file: MatrixFile = serde_json::from_str(text).map_err(|e| {
        Error::Format(format!(
            "parse error at byte offset {}: {e}",
            byte_offset(text, e.line(), e.column())
        ))
    })?;
    Ok((file.to_matrix()?, file.kind))
}

pub fn read_matrix(path: &Path) -> Result<(ComplexMatrix, Option<MatrixKind>)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Format(format!("cannot read {}: {e}", path.display())))?;
    parse_matrix(&text)
}

pub fn write_matrix(path: &Path, m: &ComplexMatrix, kind: Option<MatrixKind>) -> Result<()> {
    let file = MatrixFile::from_matrix(m, kind);
    std::fs::write(path, serde_json::to_string_pretty(&file).expect("serializable"))?;
    Ok(())
}

/// Witness with matrices inlined in the standard matrix format.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct WitnessFile {
    pub ineq: IneqId,
    pub params: IneqParams,
    pub dim: usize,
    pub seed: u64,
    pub budget: u64,
    pub best_ratio: f64,
    pub anomaly: bool,
    pub exploratory: bool,
    pub trajectory: Vec<TrajectoryPoint>,
    pub a: MatrixFile,
    pub b: MatrixFile,
}

impl WitnessFile {
    pub fn from_witness(w: &Witness) -> Self {
        Self {
            ineq: w.ineq,
            params: w.params,
            dim: w.dim,
            seed: w.seed,
            budget: w.budget,
            best_ratio: w.best_ratio,
            anomaly: w.anomaly,
            exploratory: w.exploratory,
            trajectory: w.trajectory.clone(),
            a: MatrixFile::from_matrix(&w.best_a, None),
            b: MatrixFile::from_matrix(&w.best_b, None),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn parse(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| {
            Error::Format(format!(
                "witness parse error at byte offset {}: {e}",
                byte_offset(text, e.line(), e.column())
            ))
        })
    }
}
