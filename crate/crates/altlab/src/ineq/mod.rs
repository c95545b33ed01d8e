//! One checker per inequality. Each checker computes LHS and RHS exactly as
//! displayed, oriented so that a non-negative slack always means "the claim
//! holds", and returns a structured [`IneqReport`]. Violations are never
//! absorbed: they surface in the verdict and in campaign exit codes.

mod checkers;

pub use checkers::*;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;
use crate::norms::SchattenIndex;

/// Relative slack below which both sides count as equal.
pub const EQUALITY_TOL: f64 = 1e-9;

/// Default violation tolerance. Jacobi at n ≤ 32 delivers ~1e-12 residuals;
/// the 10³ margin absorbs power-function amplification at extreme r, q.
pub const DEFAULT_VIOLATION_TOL: f64 = 1e-9;

/// Identifier of one checkable statement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IneqId {
    /// Tr[(A^r B^r A^r)^q] vs Tr[(ABA)^{rq}], reversed for r ≥ 1.
    Alt,
    /// Tr[(ABA)^{rq}] vs ||A||^{2rq}·Tr B^{rq}, reversed for q ≤ 0.
    Water,
    /// The interpolated water/wine bound at t = 1−r, reversed for r ≥ 1.
    Waterwine,
    /// The t-interpolated family; exploratory below t = 1−r.
    TFamily,
    /// Bourin's two-sided Ky Fan eigenvalue sandwich.
    Bourin,
    /// Tr[AB] ≤ ||AB||₁ ≤ (||A||·Tr B·Tr[AB])^{1/2}.
    TraceNormSpecial,
    /// Hölder for Schatten (quasi)norms with exponents 1/s + 1/t = 1/u.
    Holder,
    /// General A, PSD B: ||(ABA*)^q||_p ≤ || |A|^q B^q |A|^q ||_p.
    GeneralA,
    /// ||X−Y||_p ≤ ||X+Y||_p for PSD X, Y, plus the composite-gauge variant.
    LemmaSumDiff,
    /// General A, Hermitian B, through the Jordan decomposition of B.
    HermitianB,
    /// General A and B: the p-th power mean of the |B|^q and |B*|^q sandwiches.
    General,
    /// The Loewner-order proof steps behind the water and water-wine bounds.
    ProofSteps,
}

impl IneqId {
    pub const ALL: [IneqId; 12] = [
        IneqId::Alt,
        IneqId::Water,
        IneqId::Waterwine,
        IneqId::TFamily,
        IneqId::Bourin,
        IneqId::TraceNormSpecial,
        IneqId::Holder,
        IneqId::GeneralA,
        IneqId::LemmaSumDiff,
        IneqId::HermitianB,
        IneqId::General,
        IneqId::ProofSteps,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IneqId::Alt => "alt",
            IneqId::Water => "water",
            IneqId::Waterwine => "waterwine",
            IneqId::TFamily => "t_family",
            IneqId::Bourin => "bourin",
            IneqId::TraceNormSpecial => "trace_norm_special",
            IneqId::Holder => "holder",
            IneqId::GeneralA => "general_a",
            IneqId::LemmaSumDiff => "lemma_sum_diff",
            IneqId::HermitianB => "hermitian_b",
            IneqId::General => "general",
            IneqId::ProofSteps => "proof_steps",
        }
    }

    /// Input classes each checker consumes, used by campaigns and the probe
    /// to materialize matching samples.
    pub fn input_class(self) -> InputClass {
        match self {
            IneqId::Alt
            | IneqId::Water
            | IneqId::Waterwine
            | IneqId::TFamily
            | IneqId::TraceNormSpecial
            | IneqId::LemmaSumDiff
            | IneqId::ProofSteps => InputClass::PsdPair,
            IneqId::Bourin => InputClass::PsdWithSpectrumBoundedB,
            IneqId::Holder | IneqId::General => InputClass::GeneralPair,
            IneqId::GeneralA => InputClass::GeneralWithPsdB,
            IneqId::HermitianB => InputClass::GeneralWithHermitianB,
        }
    }
}

impl std::fmt::Display for IneqId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for IneqId {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        IneqId::ALL
            .iter()
            .copied()
            .find(|id| id.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown inequality id '{s}'")))
    }
}

/// What the two matrix inputs of a checker must be.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InputClass {
    /// Both inputs PSD.
    PsdPair,
    /// A PSD, B positive definite with spectrum in [b, a].
    PsdWithSpectrumBoundedB,
    /// Both inputs arbitrary square matrices.
    GeneralPair,
    /// A arbitrary, B PSD.
    GeneralWithPsdB,
    /// A arbitrary, B Hermitian.
    GeneralWithHermitianB,
}

/// The scalar parameter bundle every checker consumes. Only the fields a
/// statement uses need to be meaningful; each checker validates its own.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct IneqParams {
    pub r: f64,
    pub q: f64,
    pub p: SchattenIndex,
    pub t: f64,
    /// Hölder exponents with 1/s + 1/t = 1/u (t doubles as the Hölder
    /// middle exponent).
    pub s: f64,
    pub u: f64,
    /// Spectrum bounds a ≥ b > 0 for the Bourin sandwich.
    pub a: f64,
    pub b: f64,
}

impl Default for IneqParams {
    fn default() -> Self {
        Self {
            r: 0.5,
            q: 1.0,
            p: SchattenIndex::Finite(1.0),
            t: 0.5,
            s: 2.0,
            u: 1.0,
            a: 2.0,
            b: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Violated,
    Equality,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Holds => "holds",
            Verdict::Violated => "violated",
            Verdict::Equality => "equality",
        })
    }
}

impl Verdict {
    pub fn from_relative_slack(relative_slack: f64, tol: f64) -> Self {
        if relative_slack.abs() <= EQUALITY_TOL {
            Verdict::Equality
        } else if relative_slack >= -tol {
            Verdict::Holds
        } else {
            Verdict::Violated
        }
    }
}

/// One inequality evaluation. `slack = rhs − lhs` in the orientation where
/// the stated claim is `lhs ≤ rhs`, so `slack ≥ 0` always means "holds".
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct IneqReport {
    pub ineq: IneqId,
    pub lhs: f64,
    pub rhs: f64,
    pub slack: f64,
    pub relative_slack: f64,
    pub verdict: Verdict,
    pub params: IneqParams,
    /// True for cells outside the proven regime (t < 1−r in the t-family):
    /// violations there are recorded data, not failures.
    pub exploratory: bool,
    /// Hash of the input matrix bytes; campaigns append the seed context in
    /// their records.
    pub fingerprint: String,
    /// Named intermediate values (water, wine, reformulation sides, ...).
    pub extras: BTreeMap<String, f64>,
}

impl IneqReport {
    /// Standard two-sided report in the already-oriented form `lhs ≤ rhs`.
    pub fn oriented(
        ineq: IneqId,
        lhs: f64,
        rhs: f64,
        params: IneqParams,
        fingerprint: String,
    ) -> Self {
        let slack = rhs - lhs;
        let relative_slack = slack / lhs.abs().max(rhs.abs()).max(1.0);
        Self {
            ineq,
            lhs,
            rhs,
            slack,
            relative_slack,
            verdict: Verdict::from_relative_slack(relative_slack, DEFAULT_VIOLATION_TOL),
            params,
            exploratory: false,
            fingerprint,
            extras: BTreeMap::new(),
        }
    }

    /// Re-derives the verdict under a campaign-supplied violation tolerance.
    pub fn with_tol(mut self, tol: f64) -> Self {
        self.verdict = Verdict::from_relative_slack(self.relative_slack, tol);
        self
    }

    pub fn with_extra(mut self, key: &str, value: f64) -> Self {
        self.extras.insert(key.to_string(), value);
        self
    }

    /// `lhs / rhs` in the proven orientation; the probe drives this to 1.
    pub fn ratio(&self) -> f64 {
        self.lhs / self.rhs
    }
}

/// Relative deviation used by internal consistency checks.
pub(crate) fn rel_err(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(1.0)
}

/// FNV-1a over dimensions and raw f64 bit patterns of the inputs.
pub fn fingerprint(matrices: &[&ComplexMatrix]) -> String {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    let mut eat = |bytes: &[u8]| {
        for &b in bytes {
            h ^= b as u64;
            h = h.wrapping_mul(0x100_0000_01b3);
        }
    };
    for m in matrices {
        eat(&(m.rows() as u64).to_le_bytes());
        eat(&(m.cols() as u64).to_le_bytes());
        for z in m.entries() {
            eat(&z.re.to_bits().to_le_bytes());
            eat(&z.im.to_bits().to_le_bytes());
        }
    }
    format!("{h:016x}")
}
