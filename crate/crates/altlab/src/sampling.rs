//! Deterministic, seeded random-matrix generation for campaigns.
//!
//! Every sample is a pure function of `(campaign_seed, index, kind, dim)`.
//! The per-sample stream seed is derived bit-exactly as
//!
//! ```text
//! stream_seed = mix64(campaign_seed .wrapping_add( (index+1) * 0x9E3779B97F4A7C15 ))
//! ```
//!
//! where `mix64` is the splitmix64 output scrambler, and the stream itself
//! is a splitmix64 sequence. Uniform doubles take the top 53 bits shifted
//! into `(0, 1)`; Gaussians come from Box-Muller on consecutive uniforms.
//! Changing any of this breaks report reproducibility across builds, so it
//! is pinned here rather than delegated to an RNG crate.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::herm::{HermitianMatrix, PsdMatrix};
use crate::mat::ComplexMatrix;
use crate::svd::polar;
use num_complex::Complex64;

const GOLDEN: u64 = 0x9E37_79B9_7F4A_7C15;

#[inline]
fn mix64(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// splitmix64 stream.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    #[inline]
    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(GOLDEN);
        mix64(self.state)
    }

    /// Uniform in the open interval (0, 1).
    #[inline]
    pub fn next_f64(&mut self) -> f64 {
        ((self.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9007199254740992.0)
    }

    /// Standard normal pair via Box-Muller.
    #[inline]
    pub fn next_gaussian_pair(&mut self) -> (f64, f64) {
        let u1 = self.next_f64();
        let u2 = self.next_f64();
        let radius = (-2.0 * u1.ln()).sqrt();
        let angle = std::f64::consts::TAU * u2;
        (radius * angle.cos(), radius * angle.sin())
    }

    /// Complex entry with independent standard normal real and imaginary
    /// parts.
    #[inline]
    pub fn next_complex_gaussian(&mut self) -> Complex64 {
        let (re, im) = self.next_gaussian_pair();
        Complex64::new(re, im)
    }
}

/// Per-sample stream seed; the documented (campaign_seed, index) mix.
pub fn stream_seed(campaign_seed: u64, index: u64) -> u64 {
    mix64(campaign_seed.wrapping_add((index.wrapping_add(1)).wrapping_mul(GOLDEN)))
}

/// Input classes the checkers consume.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleKind {
    General,
    Hermitian,
    Psd,
    PdSpectrum,
    CommutingPair,
    Scalar,
    RankDeficient,
}

impl std::fmt::Display for SampleKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Self::General => "general",
            Self::Hermitian => "hermitian",
            Self::Psd => "psd",
            Self::PdSpectrum => "pd_spectrum",
            Self::CommutingPair => "commuting_pair",
            Self::Scalar => "scalar",
            Self::RankDeficient => "rank_deficient",
        };
        f.write_str(s)
    }
}

/// Addressable description of one sample.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct SampleSpec {
    pub kind: SampleKind,
    pub dim: usize,
    /// Spectrum bounds, used by `pd_spectrum` only.
    pub a: f64,
    pub b: f64,
    pub campaign_seed: u64,
    pub index: u64,
}

impl SampleSpec {
    pub fn new(kind: SampleKind, dim: usize, campaign_seed: u64, index: u64) -> Self {
        Self {
            kind,
            dim,
            a: 0.0,
            b: 0.0,
            campaign_seed,
            index,
        }
    }

    pub fn with_bounds(mut self, a: f64, b: f64) -> Self {
        self.a = a;
        self.b = b;
        self
    }

    fn validate(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::InvalidSpec("dim must be >= 1".into()));
        }
        if self.kind == SampleKind::PdSpectrum && !(self.b > 0.0 && self.a >= self.b) {
            return Err(Error::InvalidSpec(format!(
                "pd_spectrum requires a >= b > 0, got a={}, b={}",
                self.a, self.b
            )));
        }
        Ok(())
    }
}

/// One sample, or a pair for the commuting kind.
#[derive(Debug, Clone)]
pub enum Sample {
    Single(ComplexMatrix),
    Pair(ComplexMatrix, ComplexMatrix),
}

fn gaussian_matrix(rng: &mut SplitMix64, dim: usize) -> ComplexMatrix {
    let mut m = ComplexMatrix::zeros(dim, dim);
    for i in 0..dim {
        for j in 0..dim {
            m[(i, j)] = rng.next_complex_gaussian();
        }
    }
    m
}

/// Haar unitary: the polar factor of a complex Gaussian matrix.
fn haar_unitary(rng: &mut SplitMix64, dim: usize) -> Result<ComplexMatrix> {
    let g = gaussian_matrix(rng, dim);
    let (u, _) = polar(&g)?;
    Ok(u)
}

/// Generates the sample described by `spec`. Pure: the same spec always
/// produces bit-identical output.
pub fn sample(spec: &SampleSpec) -> Result<Sample> {
    spec.validate()?;
    let mut rng = SplitMix64::new(stream_seed(spec.campaign_seed, spec.index));
    let dim = spec.dim;
    match spec.kind {
        SampleKind::General => Ok(Sample::Single(gaussian_matrix(&mut rng, dim))),
        SampleKind::Hermitian => {
            Ok(Sample::Single(gaussian_matrix(&mut rng, dim).symmetrized()))
        }
        SampleKind::Psd => {
            let g = gaussian_matrix(&mut rng, dim);
            // G·G*/dim keeps the spectrum O(1) so r,q powers stay in range.
            Ok(Sample::Single(
                g.matmul(&g.adjoint()).scale(1.0 / dim as f64).symmetrized(),
            ))
        }
        SampleKind::PdSpectrum => {
            let v = haar_unitary(&mut rng, dim)?;
            let lambdas: Vec<f64> = (0..dim)
                .map(|_| spec.b + (spec.a - spec.b) * rng.next_f64())
                .collect();
            let d = ComplexMatrix::diag(&lambdas);
            Ok(Sample::Single(
                v.matmul(&d).matmul(&v.adjoint()).symmetrized(),
            ))
        }
        SampleKind::CommutingPair => {
            let v = haar_unitary(&mut rng, dim)?;
            let d1: Vec<f64> = (0..dim).map(|_| 2.0 * rng.next_f64()).collect();
            let d2: Vec<f64> = (0..dim).map(|_| 2.0 * rng.next_f64()).collect();
            let a = v
                .matmul(&ComplexMatrix::diag(&d1))
                .matmul(&v.adjoint())
                .symmetrized();
            let b = v
                .matmul(&ComplexMatrix::diag(&d2))
                .matmul(&v.adjoint())
                .symmetrized();
            Ok(Sample::Pair(a, b))
        }
        SampleKind::Scalar => {
            let g = rng.next_complex_gaussian();
            Ok(Sample::Single(
                ComplexMatrix::new(1, 1, vec![Complex64::new(g.norm_sqr(), 0.0)]).unwrap(),
            ))
        }
        SampleKind::RankDeficient => {
            let g = gaussian_matrix(&mut rng, dim);
            let p = PsdMatrix::from_complex(
                g.matmul(&g.adjoint()).scale(1.0 / dim as f64).symmetrized(),
            )?;
            let zeroed = dim.div_ceil(2);
            let kept = dim - zeroed;
            let lambdas: Vec<f64> = p
                .eigen()
                .eigenvalues()
                .iter()
                .enumerate()
                .map(|(i, &l)| if i < kept { l } else { 0.0 })
                .collect();
            let out = PsdMatrix::from_spectral_parts(lambdas, p.eigen().eigenvectors().clone());
            Ok(Sample::Single(out.matrix().clone()))
        }
    }
}

fn single(spec: &SampleSpec) -> Result<ComplexMatrix> {
    match sample(spec)? {
        Sample::Single(m) => Ok(m),
        Sample::Pair(..) => Err(Error::InvalidSpec(
            "expected a single-matrix kind, got a pair kind".into(),
        )),
    }
}

/// Convenience: a PSD sample wrapped in its domain type.
pub fn sample_psd(campaign_seed: u64, index: u64, dim: usize) -> Result<PsdMatrix> {
    let kind = if dim == 1 {
        SampleKind::Scalar
    } else {
        SampleKind::Psd
    };
    PsdMatrix::from_complex(single(&SampleSpec::new(kind, dim, campaign_seed, index))?)
}

pub fn sample_general(campaign_seed: u64, index: u64, dim: usize) -> Result<ComplexMatrix> {
    single(&SampleSpec::new(
        SampleKind::General,
        dim,
        campaign_seed,
        index,
    ))
}

pub fn sample_hermitian(campaign_seed: u64, index: u64, dim: usize) -> Result<HermitianMatrix> {
    HermitianMatrix::new(single(&SampleSpec::new(
        SampleKind::Hermitian,
        dim,
        campaign_seed,
        index,
    ))?)
}

pub fn sample_pd_spectrum(
    campaign_seed: u64,
    index: u64,
    dim: usize,
    a: f64,
    b: f64,
) -> Result<PsdMatrix> {
    PsdMatrix::from_complex(single(
        &SampleSpec::new(SampleKind::PdSpectrum, dim, campaign_seed, index).with_bounds(a, b),
    )?)
}

pub fn sample_rank_deficient(campaign_seed: u64, index: u64, dim: usize) -> Result<PsdMatrix> {
    PsdMatrix::from_complex(single(&SampleSpec::new(
        SampleKind::RankDeficient,
        dim,
        campaign_seed,
        index,
    ))?)
}

pub fn sample_commuting_pair(
    campaign_seed: u64,
    index: u64,
    dim: usize,
) -> Result<(PsdMatrix, PsdMatrix)> {
    match sample(&SampleSpec::new(
        SampleKind::CommutingPair,
        dim,
        campaign_seed,
        index,
    ))? {
        Sample::Pair(a, b) => Ok((
            PsdMatrix::from_complex(a)?,
            PsdMatrix::from_complex(b)?,
        )),
        Sample::Single(_) => unreachable!(),
    }
}

/// Sample kinds drawn for the two input slots of a checker input class.
pub fn pair_kinds(class: crate::ineq::InputClass, dim: usize) -> (SampleKind, SampleKind) {
    use crate::ineq::InputClass;
    let psd_kind = if dim == 1 {
        SampleKind::Scalar
    } else {
        SampleKind::Psd
    };
    match class {
        InputClass::PsdPair => (psd_kind, psd_kind),
        InputClass::PsdWithSpectrumBoundedB => (psd_kind, SampleKind::PdSpectrum),
        InputClass::GeneralPair => (SampleKind::General, SampleKind::General),
        InputClass::GeneralWithPsdB => (SampleKind::General, psd_kind),
        InputClass::GeneralWithHermitianB => (SampleKind::General, SampleKind::Hermitian),
    }
}

/// Materializes the raw `(A, B)` inputs for a checker input class at the
/// sample indices `base_index` (A) and `base_index + 1` (B). The `a`/`b`
/// arguments are the spectrum bounds, consumed only by the
/// spectrum-bounded class.
pub fn materialize_pair(
    class: crate::ineq::InputClass,
    campaign_seed: u64,
    base_index: u64,
    dim: usize,
    a: f64,
    b: f64,
) -> Result<(ComplexMatrix, ComplexMatrix)> {
    let spec = |kind: SampleKind, index: u64| SampleSpec::new(kind, dim, campaign_seed, index);
    let (ka, kb) = pair_kinds(class, dim);
    let ma = single(&spec(ka, base_index))?;
    let mut spec_b = spec(kb, base_index + 1);
    if kb == SampleKind::PdSpectrum {
        spec_b = spec_b.with_bounds(a, b);
    }
    let mb = single(&spec_b)?;
    Ok((ma, mb))
}
