//! Scalar functionals: Schatten p-(quasi)norms including p = ∞, trace
//! powers of PSD matrices, and the Ky Fan constant.

use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::herm::PsdMatrix;
use crate::mat::ComplexMatrix;
use crate::svd::svd;

/// Exponent of a Schatten norm: a finite positive real or infinity.
/// Values in (0, 1) select the quasinorm regime; the same singular-value
/// formula is used there.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SchattenIndex {
    Finite(f64),
    Infinity,
}

impl SchattenIndex {
    pub fn finite(p: f64) -> Result<Self> {
        if !(p > 0.0) || !p.is_finite() {
            return Err(Error::Range(format!(
                "Schatten index must be a positive real, got {p}"
            )));
        }
        Ok(Self::Finite(p))
    }

    pub fn value(self) -> Option<f64> {
        match self {
            Self::Finite(p) => Some(p),
            Self::Infinity => None,
        }
    }

    pub fn is_at_least_one(self) -> bool {
        match self {
            Self::Finite(p) => p >= 1.0,
            Self::Infinity => true,
        }
    }
}

impl std::fmt::Display for SchattenIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Self::Finite(p) => write!(f, "{p}"),
            Self::Infinity => write!(f, "inf"),
        }
    }
}

impl std::str::FromStr for SchattenIndex {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "Inf" | "INF" | "infinity" | "oo" => Ok(Self::Infinity),
            other => {
                let p: f64 = other
                    .parse()
                    .map_err(|_| Error::Range(format!("cannot parse Schatten index '{other}'")))?;
                Self::finite(p)
            }
        }
    }
}

impl Serialize for SchattenIndex {
    fn serialize<S: Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Self::Finite(p) => ser.serialize_f64(*p),
            Self::Infinity => ser.serialize_str("inf"),
        }
    }
}

impl<'de> Deserialize<'de> for SchattenIndex {
    fn deserialize<D: Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Num(f64),
            Str(String),
        }
        match Raw::deserialize(de)? {
            Raw::Num(p) => SchattenIndex::finite(p).map_err(D::Error::custom),
            Raw::Str(s) => s.parse().map_err(D::Error::custom),
        }
    }
}

fn schatten_of_sigmas(sigmas: &[f64], p: SchattenIndex) -> f64 {
    match p {
        SchattenIndex::Infinity => sigmas.iter().fold(0.0f64, |m, &s| m.max(s)),
        SchattenIndex::Finite(p) => sigmas.iter().map(|&s| s.powf(p)).sum::<f64>().powf(1.0 / p),
    }
}

/// Schatten p-(quasi)norm `(Σ σ_i^p)^{1/p}`; `p = ∞` returns `σ_max`.
pub fn schatten(x: &ComplexMatrix, p: SchattenIndex) -> Result<f64> {
    Ok(schatten_of_sigmas(svd(x)?.singular_values(), p))
}

/// Schatten norm of a PSD matrix through its cached spectrum (singular
/// values coincide with eigenvalues).
pub fn schatten_psd(m: &PsdMatrix, p: SchattenIndex) -> f64 {
    schatten_of_sigmas(m.eigen().eigenvalues(), p)
}

/// Operator norm `σ_max(X)`; equals `λ_max` for PSD input.
pub fn operator_norm(x: &ComplexMatrix) -> Result<f64> {
    schatten(x, SchattenIndex::Infinity)
}

/// `Tr P^s = Σ λ_i^s` with the `psd_power` conventions (`0^0 = 1`;
/// `s < 0` requires positive definiteness).
pub fn trace_power(p: &PsdMatrix, s: f64) -> Result<f64> {
    if s == 0.0 {
        return Ok(p.dim() as f64);
    }
    if s < 0.0 && !p.is_positive_definite() {
        return Err(Error::Domain(format!(
            "trace power {s} of a singular PSD matrix"
        )));
    }
    let total: f64 = p
        .eigen()
        .eigenvalues()
        .iter()
        .map(|&l| if l == 0.0 { 0.0 } else { l.powf(s) })
        .sum();
    if !total.is_finite() {
        return Err(Error::Range(format!(
            "trace power {s} overflows on the given spectrum"
        )));
    }
    Ok(total)
}

/// The Ky Fan constant
/// `K(a,b,r) = (a^r b − a b^r)/((r−1)(a−b)) · [((r−1)/r)·(a^r−b^r)/(a^r b − a b^r)]^r`
/// for `a ≥ b > 0`, `r ≥ 1`. The removable singularities `a = b` and `r = 1`
/// return the continuity value 1.
pub fn kyfan_constant(a: f64, b: f64, r: f64) -> Result<f64> {
    if !(b > 0.0) || a < b {
        return Err(Error::Domain(format!(
            "Ky Fan constant requires a >= b > 0, got a={a}, b={b}"
        )));
    }
    if r < 1.0 {
        return Err(Error::Domain(format!(
            "Ky Fan constant requires r >= 1, got r={r}"
        )));
    }
    if (a - b).abs() <= 1e-12 * a || (r - 1.0).abs() <= 1e-12 {
        return Ok(1.0);
    }
    let num = a.powf(r) * b - a * b.powf(r);
    let first = num / ((r - 1.0) * (a - b));
    let second = ((r - 1.0) / r) * (a.powf(r) - b.powf(r)) / num;
    Ok(first * second.powf(r))
}
