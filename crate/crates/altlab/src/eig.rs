//! Hermitian eigendecomposition via cyclic Jacobi with complex rotations.
//!
//! Chosen over QR iteration for self-containment and unconditional
//! convergence on Hermitian input at the dimensions this crate targets
//! (n ≤ 64).

use std::cell::Cell;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::herm::HermitianMatrix;
use crate::mat::ComplexMatrix;

/// Stopping rule for the Jacobi sweep loop.
#[derive(Debug, Clone, Copy)]
pub struct JacobiConfig {
    /// Relative off-diagonal Frobenius mass at which the sweep loop stops.
    pub tol: f64,
    pub max_sweeps: usize,
}

impl Default for JacobiConfig {
    fn default() -> Self {
        Self {
            tol: 1e-14,
            max_sweeps: 100,
        }
    }
}

impl JacobiConfig {
    /// Settings used when re-examining a suspected violation: tighter target,
    /// more sweeps.
    pub fn tightened() -> Self {
        Self {
            tol: 1e-16,
            max_sweeps: 400,
        }
    }
}

thread_local! {
    static OVERRIDE: Cell<Option<JacobiConfig>> = const { Cell::new(None) };
}

/// Runs `f` with every eigendecomposition on this thread using `cfg`.
/// Used by the tightness prober to re-evaluate anomalous points.
pub fn with_config<R>(cfg: JacobiConfig, f: impl FnOnce() -> R) -> R {
    OVERRIDE.with(|c| {
        let prev = c.replace(Some(cfg));
        let out = f();
        c.set(prev);
        out
    })
}

fn current_config() -> JacobiConfig {
    OVERRIDE.with(|c| c.get()).unwrap_or_default()
}

/// Spectral data of a Hermitian matrix: real eigenvalues sorted
/// non-increasing, matching unitary eigenvector columns.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    eigenvalues: Vec<f64>,
    eigenvectors: ComplexMatrix,
}

impl EigenDecomposition {
    pub(crate) fn from_parts_sorted(
        mut eigenvalues: Vec<f64>,
        eigenvectors: ComplexMatrix,
    ) -> Self {
        let n = eigenvalues.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eigenvalues[j].partial_cmp(&eigenvalues[i]).unwrap());
        let mut v = ComplexMatrix::zeros(eigenvectors.rows(), n);
        for (dst, &src) in order.iter().enumerate() {
            v.set_column(dst, &eigenvectors.column(src));
        }
        eigenvalues.sort_by(|a, b| b.partial_cmp(a).unwrap());
        Self {
            eigenvalues,
            eigenvectors: v,
        }
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn eigenvectors(&self) -> &ComplexMatrix {
        &self.eigenvectors
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn lambda_max(&self) -> f64 {
        self.eigenvalues[0]
    }

    pub fn lambda_min(&self) -> f64 {
        *self.eigenvalues.last().unwrap()
    }

    /// `V f(Λ) V*` for a real function applied entrywise to the spectrum.
    pub fn apply(&self, f: impl Fn(f64) -> f64) -> ComplexMatrix {
        let n = self.dim();
        let v = &self.eigenvectors;
        let mut out = ComplexMatrix::zeros(n, n);
        for k in 0..n {
            let fk = f(self.eigenvalues[k]);
            if fk == 0.0 {
                continue;
            }
            for i in 0..n {
                let vik = v[(i, k)];
                for j in 0..n {
                    out[(i, j)] += vik * v[(j, k)].conj() * fk;
                }
            }
        }
        out
    }

    /// Reconstruction `VΛV*`.
    pub fn reconstruct(&self) -> ComplexMatrix {
        self.apply(|x| x)
    }
}

/// Eigendecomposition of a Hermitian matrix.
pub fn hermitian_eig(h: &HermitianMatrix) -> Result<EigenDecomposition> {
    jacobi(h.matrix(), current_config())
}

fn off_diagonal_mass(a: &ComplexMatrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Cyclic complex Jacobi on a Hermitian matrix. Sweeps row-cyclically over
/// all off-diagonal pivots until the off-diagonal Frobenius mass drops below
/// `cfg.tol * ||H||_F`.
pub(crate) fn jacobi(h: &ComplexMatrix, cfg: JacobiConfig) -> Result<EigenDecomposition> {
    let n = h.rows();
    let scale = h.frobenius_norm();
    let mut a = h.clone();
    let mut v = ComplexMatrix::identity(n);

    if n == 1 {
        return Ok(EigenDecomposition::from_parts_sorted(
            vec![a[(0, 0)].re],
            v,
        ));
    }

    let threshold = cfg.tol * scale;
    let mut sweeps = 0;
    while off_diagonal_mass(&a) > threshold && scale > 0.0 {
        if sweeps >= cfg.max_sweeps {
            return Err(Error::NonConvergence {
                sweeps,
                residual: off_diagonal_mass(&a) / scale.max(1e-300),
            });
        }
        for p in 0..n - 1 {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
        sweeps += 1;
    }

    let eigenvalues: Vec<f64> = (0..n).map(|i| a[(i, i)].re).collect();
    Ok(EigenDecomposition::from_parts_sorted(eigenvalues, v))
}

/// One complex Jacobi rotation zeroing the (p, q) entry.
///
/// For the 2x2 pivot block [[α, β], [β̄, γ]] with β = |β|e^{iφ}, the
/// rotation U = [[c, −s·e^{iφ}], [s·e^{-iφ}, c]] with
/// θ = atan2(2|β|, α−γ)/2 annihilates the off-diagonal entry of U*MU.
fn rotate(a: &mut ComplexMatrix, v: &mut ComplexMatrix, p: usize, q: usize) {
    let beta = a[(p, q)];
    let beta_abs = beta.norm();
    if beta_abs == 0.0 {
        return;
    }
    let alpha = a[(p, p)].re;
    let gamma = a[(q, q)].re;
    let theta = 0.5 * (2.0 * beta_abs).atan2(alpha - gamma);
    let (s, c) = theta.sin_cos();
    let phase = beta / beta_abs;
    let sp = phase * s; // s·e^{iφ}
    let spc = sp.conj(); // s·e^{-iφ}

    let n = a.rows();
    // Column update: A ← A·U, V ← V·U.
    for i in 0..n {
        let aip = a[(i, p)];
        let aiq = a[(i, q)];
        a[(i, p)] = aip * c + aiq * spc;
        a[(i, q)] = -aip * sp + aiq * c;

        let vip = v[(i, p)];
        let viq = v[(i, q)];
        v[(i, p)] = vip * c + viq * spc;
        v[(i, q)] = -vip * sp + viq * c;
    }
    // Row update: A ← U*·A.
    for j in 0..n {
        let apj = a[(p, j)];
        let aqj = a[(q, j)];
        a[(p, j)] = apj * c + aqj * sp;
        a[(q, j)] = -apj * spc + aqj * c;
    }
    // Clean the pivot pair to kill rotation round-off.
    a[(p, q)] = Complex64::new(0.0, 0.0);
    a[(q, p)] = Complex64::new(0.0, 0.0);
    a[(p, p)] = Complex64::new(a[(p, p)].re, 0.0);
    a[(q, q)] = Complex64::new(a[(q, q)].re, 0.0);
}
