//! Hermitian and positive semidefinite wrappers, Loewner-order testing,
//! and the Hermitian-side decompositions (Jordan split, contraction factor,
//! block dilation).

use crate::eig::{hermitian_eig, EigenDecomposition};
use crate::error::{Error, Result};
use crate::mat::ComplexMatrix;

const HERMITICITY_TOL: f64 = 1e-12;
const PSD_EIG_TOL: f64 = 1e-10;

/// Square matrix known Hermitian. Construction symmetrizes via `(H+H*)/2`
/// after checking the defect is within `1e-12 · max(1, ||H||_F)`.
#[derive(Debug, Clone)]
pub struct HermitianMatrix {
    matrix: ComplexMatrix,
}

impl HermitianMatrix {
    pub fn new(m: ComplexMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::Dimension(format!(
                "Hermitian matrix must be square, got {}x{}",
                m.rows(),
                m.cols()
            )));
        }
        let scale = m.frobenius_norm().max(1.0);
        let defect = m.hermiticity_defect();
        if defect > HERMITICITY_TOL * scale {
            return Err(Error::Domain(format!(
                "matrix is not Hermitian: defect {defect:.3e} exceeds {:.3e}",
                HERMITICITY_TOL * scale
            )));
        }
        Ok(Self {
            matrix: m.symmetrized(),
        })
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn into_matrix(self) -> ComplexMatrix {
        self.matrix
    }

    pub fn eig(&self) -> Result<EigenDecomposition> {
        hermitian_eig(self)
    }
}

/// Positive semidefinite matrix. Construction eigendecomposes once, clamps
/// eigenvalues in `[−1e-10·max(1, λ_max), 0)` to zero, and rejects anything
/// more negative. The spectral data is kept, so downstream spectral
/// functions reuse it instead of re-solving.
#[derive(Debug, Clone)]
pub struct PsdMatrix {
    matrix: ComplexMatrix,
    eigen: EigenDecomposition,
}

impl PsdMatrix {
    pub fn new(h: HermitianMatrix) -> Result<Self> {
        let eigen = h.eig()?;
        let lam_max = eigen.lambda_max().max(0.0);
        let floor = -PSD_EIG_TOL * lam_max.max(1.0);
        if eigen.lambda_min() < floor {
            return Err(Error::Domain(format!(
                "matrix is not PSD: lambda_min {:.3e} below tolerance {floor:.3e}",
                eigen.lambda_min()
            )));
        }
        let clamped: Vec<f64> = eigen
            .eigenvalues()
            .iter()
            .map(|&l| if l < 0.0 { 0.0 } else { l })
            .collect();
        Ok(Self::from_spectral_parts(clamped, eigen.eigenvectors().clone()))
    }

    /// Wraps a raw complex matrix, checking hermiticity and positivity.
    pub fn from_complex(m: ComplexMatrix) -> Result<Self> {
        Self::new(HermitianMatrix::new(m)?)
    }

    /// Assembles a PSD matrix from known spectral data (non-negative
    /// eigenvalues, unitary columns). Sorts, reconstructs, caches.
    pub(crate) fn from_spectral_parts(eigenvalues: Vec<f64>, eigenvectors: ComplexMatrix) -> Self {
        debug_assert!(eigenvalues.iter().all(|&l| l >= 0.0));
        let eigen = EigenDecomposition::from_parts_sorted(eigenvalues, eigenvectors);
        let matrix = eigen.reconstruct().symmetrized();
        Self { matrix, eigen }
    }

    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn eigen(&self) -> &EigenDecomposition {
        &self.eigen
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigen.lambda_max()
    }

    pub fn lambda_min(&self) -> f64 {
        self.eigen.lambda_min()
    }

    pub fn as_hermitian(&self) -> HermitianMatrix {
        HermitianMatrix {
            matrix: self.matrix.clone(),
        }
    }

    pub fn is_positive_definite(&self) -> bool {
        self.lambda_min() > 1e-12 * self.lambda_max()
    }
}

/// `P^alpha` through the spectral decomposition: `V diag(λ^alpha) V*`.
///
/// Conventions: `alpha = 0` returns the exact identity (`0^0 = 1`);
/// negative `alpha` requires positive definiteness.
pub fn psd_power(p: &PsdMatrix, alpha: f64) -> Result<PsdMatrix> {
    let n = p.dim();
    if alpha == 0.0 {
        return Ok(PsdMatrix::from_spectral_parts(
            vec![1.0; n],
            ComplexMatrix::identity(n),
        ));
    }
    if alpha < 0.0 && !p.is_positive_definite() {
        return Err(Error::Domain(format!(
            "negative power {alpha} of a singular PSD matrix"
        )));
    }
    let powered: Vec<f64> = p
        .eigen()
        .eigenvalues()
        .iter()
        .map(|&l| if l == 0.0 { 0.0 } else { l.powf(alpha) })
        .collect();
    if powered.iter().any(|v| !v.is_finite()) {
        return Err(Error::Range(format!(
            "power {alpha} overflows the spectrum of the input"
        )));
    }
    Ok(PsdMatrix::from_spectral_parts(
        powered,
        p.eigen().eigenvectors().clone(),
    ))
}

/// Jordan split `H = H⁺ − H⁻` with `H⁺H⁻ = 0` and `H⁺ + H⁻ = |H|`.
pub fn jordan(h: &HermitianMatrix) -> Result<(PsdMatrix, PsdMatrix)> {
    let eigen = h.eig()?;
    let v = eigen.eigenvectors().clone();
    let plus: Vec<f64> = eigen.eigenvalues().iter().map(|&l| l.max(0.0)).collect();
    let minus: Vec<f64> = eigen.eigenvalues().iter().map(|&l| (-l).max(0.0)).collect();
    Ok((
        PsdMatrix::from_spectral_parts(plus, v.clone()),
        PsdMatrix::from_spectral_parts(minus, v),
    ))
}

/// Loewner order test: `X ≤ Y` up to `tol`, i.e.
/// `λ_min(Y − X) ≥ −tol · max(1, spectral scale of Y − X)`.
pub fn loewner_leq(x: &HermitianMatrix, y: &HermitianMatrix, tol: f64) -> Result<bool> {
    if x.dim() != y.dim() {
        return Err(Error::Dimension(format!(
            "Loewner comparison of {}x{} against {}x{}",
            x.dim(),
            x.dim(),
            y.dim(),
            y.dim()
        )));
    }
    let diff = HermitianMatrix::new(y.matrix().sub(x.matrix()))?;
    let eigen = diff.eig()?;
    let spectral_scale = eigen
        .eigenvalues()
        .iter()
        .fold(0.0f64, |m, &l| m.max(l.abs()));
    Ok(eigen.lambda_min() >= -tol * spectral_scale.max(1.0))
}

pub const LOEWNER_DEFAULT_TOL: f64 = 1e-9;

/// The Hermitian contraction `K = (X+Y)^{−1/2} (X−Y) (X+Y)^{−1/2}` with the
/// pseudo-inverse square root on the range of `X+Y` (spectral cutoff
/// `1e-12·λ_max`). Satisfies `||K||_∞ ≤ 1` and reconstructs `X − Y` on the
/// range of `X + Y`.
pub fn contraction_factor(x: &PsdMatrix, y: &PsdMatrix) -> Result<ComplexMatrix> {
    if x.dim() != y.dim() {
        return Err(Error::Dimension(
            "contraction factor of matrices with different dimensions".into(),
        ));
    }
    let sum = PsdMatrix::from_complex(x.matrix().add(y.matrix()))?;
    let cutoff = 1e-12 * sum.lambda_max();
    let inv_half = sum
        .eigen()
        .apply(|l| if l <= cutoff { 0.0 } else { 1.0 / l.sqrt() });
    let diff = x.matrix().sub(y.matrix());
    let k = inv_half.matmul(&diff).matmul(&inv_half);
    Ok(k.symmetrized())
}

/// The 2n×2n Hermitian dilation `[[0, X], [X*, 0]]` of a square matrix.
/// Its modulus is `diag(|X*|, |X|)`.
pub fn block_dilation(x: &ComplexMatrix) -> Result<HermitianMatrix> {
    if !x.is_square() {
        return Err(Error::Dimension(
            "block dilation requires a square matrix".into(),
        ));
    }
    let n = x.rows();
    let mut out = ComplexMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            out[(i, n + j)] = x[(i, j)];
            out[(n + i, j)] = x[(j, i)].conj();
        }
    }
    HermitianMatrix::new(out)
}
