//! Grid-driven falsification campaigns: every (inequality, cell, sample)
//! triple is evaluated deterministically, one record per evaluation is
//! streamed to the writer, and a per-inequality summary is aggregated.
//!
//! Sample evaluation fans out to a worker pool per cell; output ordering is
//! fixed by the (inequality, cell, index) enumeration, never by completion
//! order, so identical configs produce byte-identical report files.

use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ineq::{evaluate_raw, IneqId, IneqParams, Verdict};
use crate::norms::SchattenIndex;
use crate::sampling::{materialize_pair, pair_kinds, SampleKind};

/// Parameter caps; beyond these the power functions leave double range.
pub const MAX_R: f64 = 8.0;
pub const MAX_Q: f64 = 8.0;
pub const MIN_P: f64 = 0.25;
pub const MAX_DIM: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Jsonl,
    Csv,
}

impl std::str::FromStr for OutputFormat {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "jsonl" => Ok(Self::Jsonl),
            "csv" => Ok(Self::Csv),
            other => Err(Error::Config(format!(
                "unknown output format '{other}' (expected jsonl or csv)"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct CampaignConfig {
    pub ineqs: Vec<IneqId>,
    pub dims: Vec<usize>,
    pub r_grid: Vec<f64>,
    pub q_grid: Vec<f64>,
    pub p_grid: Vec<SchattenIndex>,
    pub t_grid: Vec<f64>,
    /// Spectrum bounds (a, b) for the Bourin cells.
    pub bounds: Vec<(f64, f64)>,
    pub samples: usize,
    pub seed: u64,
    pub tol: f64,
    pub format: OutputFormat,
}

impl Default for CampaignConfig {
    fn default() -> Self {
        Self {
            ineqs: IneqId::ALL.to_vec(),
            dims: vec![1, 2, 3, 4],
            r_grid: vec![0.1, 0.5, 0.9, 1.5, 2.0],
            q_grid: vec![0.5, 1.0, 2.0],
            p_grid: vec![
                SchattenIndex::Finite(1.0),
                SchattenIndex::Finite(2.0),
                SchattenIndex::Infinity,
            ],
            t_grid: vec![0.5],
            bounds: vec![(2.0, 1.0)],
            samples: 50,
            seed: 42,
            tol: 1e-9,
            format: OutputFormat::Jsonl,
        }
    }
}

impl CampaignConfig {
    pub fn validate(&self) -> Result<()> {
        if self.ineqs.is_empty() {
            return Err(Error::Config("inequality list is empty".into()));
        }
        if self.samples < 1 {
            return Err(Error::Config("samples must be >= 1".into()));
        }
        if !(self.tol > 0.0) {
            return Err(Error::Config("tolerance must be positive".into()));
        }
        for (grid, name) in [
            (&self.r_grid, "r"),
            (&self.q_grid, "q"),
            (&self.t_grid, "t"),
        ] {
            if grid.is_empty() {
                return Err(Error::Config(format!("{name} grid is empty")));
            }
        }
        if self.dims.is_empty() || self.p_grid.is_empty() || self.bounds.is_empty() {
            return Err(Error::Config("dims, p and bounds grids must be non-empty".into()));
        }
        for &d in &self.dims {
            if d == 0 || d > MAX_DIM {
                return Err(Error::Config(format!(
                    "dimension {d} outside the supported range 1..={MAX_DIM}"
                )));
            }
        }
        for &r in &self.r_grid {
            if !(0.0..=MAX_R).contains(&r) {
                return Err(Error::Config(format!("r = {r} outside [0, {MAX_R}]")));
            }
        }
        for &q in &self.q_grid {
            if q.abs() > MAX_Q {
                return Err(Error::Config(format!("|q| = {} exceeds {MAX_Q}", q.abs())));
            }
        }
        for &p in &self.p_grid {
            if let SchattenIndex::Finite(v) = p {
                if v < MIN_P {
                    return Err(Error::Config(format!("p = {v} below the cap {MIN_P}")));
                }
            }
        }
        for &t in &self.t_grid {
            if !(0.0..=1.0).contains(&t) {
                return Err(Error::Config(format!("t = {t} outside [0, 1]")));
            }
        }
        for &(a, b) in &self.bounds {
            if !(b > 0.0 && a >= b) {
                return Err(Error::Config(format!(
                    "spectrum bounds must satisfy a >= b > 0, got ({a}, {b})"
                )));
            }
        }
        Ok(())
    }

    /// Parameter cells for one inequality, in deterministic grid order.
    fn cells_for(&self, id: IneqId) -> Vec<IneqParams> {
        let base = IneqParams::default();
        let mut cells = Vec::new();
        match id {
            IneqId::Alt | IneqId::Water | IneqId::Waterwine => {
                for &r in &self.r_grid {
                    for &q in &self.q_grid {
                        cells.push(IneqParams { r, q, ..base });
                    }
                }
            }
            IneqId::TFamily => {
                for &r in self.r_grid.iter().filter(|&&r| r <= 1.0) {
                    for &q in &self.q_grid {
                        for &t in &self.t_grid {
                            cells.push(IneqParams { r, q, t, ..base });
                        }
                    }
                }
            }
            IneqId::Bourin => {
                for &r in self.r_grid.iter().filter(|&&r| r >= 1.0) {
                    for &(a, b) in &self.bounds {
                        cells.push(IneqParams { r, a, b, ..base });
                    }
                }
            }
            IneqId::TraceNormSpecial => cells.push(base),
            IneqId::Holder => {
                // Exponents pinned to the Cauchy-Schwarz triple; the p grid
                // varies the norm.
                for &p in &self.p_grid {
                    cells.push(IneqParams {
                        s: 2.0,
                        t: 2.0,
                        u: 1.0,
                        p,
                        ..base
                    });
                }
            }
            IneqId::GeneralA | IneqId::HermitianB | IneqId::General | IneqId::LemmaSumDiff => {
                for &q in self.q_grid.iter().filter(|&&q| q >= 1.0) {
                    for &p in self.p_grid.iter().filter(|p| p.is_at_least_one()) {
                        cells.push(IneqParams { q, p, ..base });
                    }
                }
            }
            IneqId::ProofSteps => {
                for &r in self.r_grid.iter().filter(|&&r| r <= 1.0) {
                    cells.push(IneqParams { r, ..base });
                }
            }
        }
        cells
    }
}

/// One evaluation record; carries enough addressing data (seed, indices,
/// kinds, dim, params) to re-materialize its inputs exactly.
#[derive(Debug, Clone, Serialize)]
pub struct Record {
    pub ineq: IneqId,
    pub dim: usize,
    pub kind_a: SampleKind,
    pub kind_b: SampleKind,
    pub index_a: u64,
    pub index_b: u64,
    pub seed: u64,
    pub params: IneqParams,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub relative_slack: f64,
    pub verdict: Verdict,
    pub exploratory: bool,
    pub fingerprint: String,
}

impl Record {
    fn csv_header() -> &'static str {
        "ineq,dim,kind_a,kind_b,index_a,index_b,seed,r,q,p,t,s,u,a,b,lhs,rhs,slack,relative_slack,verdict,exploratory,fingerprint"
    }

    fn to_csv(&self) -> String {
        let p = &self.params;
        format!(
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            self.ineq,
            self.dim,
            self.kind_a,
            self.kind_b,
            self.index_a,
            self.index_b,
            self.seed,
            p.r,
            p.q,
            p.p,
            p.t,
            p.s,
            p.u,
            p.a,
            p.b,
            self.lhs,
            self.rhs,
            self.slack,
            self.relative_slack,
            self.verdict,
            self.exploratory,
            self.fingerprint
        )
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct IneqSummary {
    pub ineq: IneqId,
    pub count: usize,
    pub violations: usize,
    /// Violations outside exploratory cells; these fail the campaign.
    pub proven_violations: usize,
    pub equalities: usize,
    /// Records from cells outside the proven regime.
    pub exploratory: usize,
    pub min_relative_slack: f64,
}

#[derive(Debug, Clone)]
pub struct CampaignOutcome {
    pub records: usize,
    pub summaries: Vec<IneqSummary>,
    pub proven_violations: usize,
}

struct CellJob {
    ineq: IneqId,
    dim: usize,
    params: IneqParams,
    base_index: u64,
}

/// Runs the campaign, streaming records to `out` in deterministic order.
pub fn run_campaign(config: &CampaignConfig, out: &mut dyn Write) -> Result<CampaignOutcome> {
    config.validate()?;

    // Deterministic job enumeration; the global sample index advances by
    // two (one per input matrix) per sample.
    let mut jobs = Vec::new();
    let mut next_index = 0u64;
    for &ineq in &config.ineqs {
        for params in config.cells_for(ineq) {
            for &dim in &config.dims {
                jobs.push(CellJob {
                    ineq,
                    dim,
                    params,
                    base_index: next_index,
                });
                next_index += 2 * config.samples as u64;
            }
        }
    }

    let results: Vec<Result<Vec<Record>>> = jobs
        .par_iter()
        .map(|job| run_cell(config, job))
        .collect();

    let mut summaries: Vec<IneqSummary> = Vec::new();
    let mut total = 0usize;
    let mut proven_violations = 0usize;
    if config.format == OutputFormat::Csv {
        writeln!(out, "{}", Record::csv_header())?;
    }
    for result in results {
        for record in result? {
            match config.format {
                OutputFormat::Jsonl => {
                    writeln!(out, "{}", serde_json::to_string(&record).expect("serializable"))?
                }
                OutputFormat::Csv => writeln!(out, "{}", record.to_csv())?,
            }
            total += 1;
            let summary = match summaries.iter_mut().find(|s| s.ineq == record.ineq) {
                Some(s) => s,
                None => {
                    summaries.push(IneqSummary {
                        ineq: record.ineq,
                        count: 0,
                        violations: 0,
                        proven_violations: 0,
                        equalities: 0,
                        exploratory: 0,
                        min_relative_slack: f64::INFINITY,
                    });
                    summaries.last_mut().unwrap()
                }
            };
            summary.count += 1;
            if record.exploratory {
                summary.exploratory += 1;
            }
            summary.min_relative_slack = summary.min_relative_slack.min(record.relative_slack);
            match record.verdict {
                Verdict::Violated => {
                    summary.violations += 1;
                    if !record.exploratory {
                        summary.proven_violations += 1;
                        proven_violations += 1;
                    }
                }
                Verdict::Equality => summary.equalities += 1,
                Verdict::Holds => {}
            }
        }
    }
    out.flush()?;

    Ok(CampaignOutcome {
        records: total,
        summaries,
        proven_violations,
    })
}

fn run_cell(config: &CampaignConfig, job: &CellJob) -> Result<Vec<Record>> {
    let class = job.ineq.input_class();
    let (kind_a, kind_b) = pair_kinds(class, job.dim);
    let mut records = Vec::with_capacity(config.samples);
    for s in 0..config.samples {
        let base = job.base_index + 2 * s as u64;
        let (ma, mb) = materialize_pair(
            class,
            config.seed,
            base,
            job.dim,
            job.params.a,
            job.params.b,
        )?;
        let report = evaluate_raw(job.ineq, &job.params, &ma, &mb)?.with_tol(config.tol);
        records.push(Record {
            ineq: job.ineq,
            dim: job.dim,
            kind_a,
            kind_b,
            index_a: base,
            index_b: base + 1,
            seed: config.seed,
            params: job.params,
            lhs: report.lhs,
            rhs: report.rhs,
            slack: report.slack,
            relative_slack: report.relative_slack,
            verdict: report.verdict,
            exploratory: report.exploratory,
            fingerprint: report.fingerprint,
        });
    }
    Ok(records)
}
