//! Brute-force oracle used only by the acceptance suite. Everything here is
//! implemented independently of the library's solver path: the 2x2 case
//! goes through the characteristic-polynomial closed form, the 3x3 case
//! through a separate random-pivot Jacobi, and all functionals are rebuilt
//! on top of those. Only `ComplexMatrix` arithmetic is shared.

use altlab::ineq::{IneqId, IneqParams};
use altlab::mat::ComplexMatrix;
use altlab::norms::SchattenIndex;
use num_complex::Complex64;

const JACOBI_TOL: f64 = 1e-15;

/// Minimal LCG for the pivot order; deliberately not the library's RNG.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> u64 {
        self.0 = self
            .0
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        self.0 >> 33
    }
}

fn off_diag_norm(h: &ComplexMatrix) -> f64 {
    let n = h.rows();
    let mut acc = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                acc += h[(i, j)].norm_sqr();
            }
        }
    }
    acc.sqrt()
}

/// Closed-form eigensystem of a 2x2 Hermitian matrix via the
/// characteristic polynomial. Returns (eigenvalues desc, eigenvector
/// columns).
fn eig2(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let a = h[(0, 0)].re;
    let c = h[(1, 1)].re;
    let b = h[(0, 1)];
    let mean = 0.5 * (a + c);
    let half_gap = 0.5 * (a - c);
    let disc = (half_gap * half_gap + b.norm_sqr()).sqrt();
    let l1 = mean + disc;
    let l2 = mean - disc;

    let mut v = ComplexMatrix::identity(2);
    if b.norm() > 1e-300 * (a.abs() + c.abs() + 1.0) {
        // Eigenvector of l1, using whichever null-space representation of
        // (H - l1) avoids cancellation: (l1 - c, conj(b)) = (hg + disc, .)
        // is stable for hg >= 0, (b, l1 - a) = (., disc - hg) for hg < 0.
        let (w0, w1) = if half_gap >= 0.0 {
            (Complex64::new(half_gap + disc, 0.0), b.conj())
        } else {
            (b, Complex64::new(disc - half_gap, 0.0))
        };
        let norm = (w0.norm_sqr() + w1.norm_sqr()).sqrt();
        v[(0, 0)] = w0 / norm;
        v[(1, 0)] = w1 / norm;
        // The second column is the exact orthogonal complement, which in 2D
        // is the other eigenspace.
        v[(0, 1)] = -(w1 / norm).conj();
        v[(1, 1)] = (w0 / norm).conj();
    } else if a < c {
        // Already diagonal; swap the basis so eigenvalues come out sorted.
        v = ComplexMatrix::zeros(2, 2);
        v[(0, 1)] = Complex64::new(1.0, 0.0);
        v[(1, 0)] = Complex64::new(1.0, 0.0);
    }
    (vec![l1, l2], v)
}

/// Random-pivot Jacobi for the 3x3 (and general small) Hermitian case.
/// Re-seeded on every call; each rotation embeds the 2x2 closed form.
fn jacobi_random(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    let n = h.rows();
    let mut work = h.clone();
    let mut v = ComplexMatrix::identity(n);
    let scale = h.frobenius_norm().max(1e-300);
    let mut rng = Lcg(0x5eed5eed5eed5eed);

    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }

    let mut guard = 0;
    while off_diag_norm(&work) > JACOBI_TOL * scale {
        guard += 1;
        assert!(guard < 100_000, "oracle Jacobi failed to converge");
        let (p, q) = pairs[(rng.next() as usize) % pairs.len()];
        if work[(p, q)].norm() <= JACOBI_TOL * scale / (n as f64) {
            continue;
        }
        // Diagonalize the 2x2 pivot block with the closed form and embed.
        let mut block = ComplexMatrix::zeros(2, 2);
        block[(0, 0)] = work[(p, p)];
        block[(0, 1)] = work[(p, q)];
        block[(1, 0)] = work[(q, p)];
        block[(1, 1)] = work[(q, q)];
        let (_, r) = eig2(&block);
        let mut j = ComplexMatrix::identity(n);
        j[(p, p)] = r[(0, 0)];
        j[(p, q)] = r[(0, 1)];
        j[(q, p)] = r[(1, 0)];
        j[(q, q)] = r[(1, 1)];
        let jh = j.adjoint();
        work = jh.matmul(&work).matmul(&j);
        work[(p, q)] = Complex64::new(0.0, 0.0);
        work[(q, p)] = Complex64::new(0.0, 0.0);
        v = v.matmul(&j);
    }

    let mut lam: Vec<(f64, usize)> = (0..n).map(|i| (work[(i, i)].re, i)).collect();
    lam.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    let mut sorted_v = ComplexMatrix::zeros(n, n);
    for (col, &(_, src)) in lam.iter().enumerate() {
        for row in 0..n {
            sorted_v[(row, col)] = v[(row, src)];
        }
    }
    (lam.into_iter().map(|(l, _)| l).collect(), sorted_v)
}

/// Eigensystem of a Hermitian matrix, dims 1..=3 only.
pub fn eig(h: &ComplexMatrix) -> (Vec<f64>, ComplexMatrix) {
    match h.rows() {
        1 => (vec![h[(0, 0)].re], ComplexMatrix::identity(1)),
        2 => eig2(h),
        _ => jacobi_random(h),
    }
}

fn clamp_psd(lam: &[f64]) -> Vec<f64> {
    lam.iter().map(|&l| l.max(0.0)).collect()
}

fn assemble(lam: &[f64], v: &ComplexMatrix) -> ComplexMatrix {
    let n = v.rows();
    let mut scaled = v.clone();
    for j in 0..n {
        for i in 0..n {
            scaled[(i, j)] *= lam[j];
        }
    }
    scaled.matmul(&v.adjoint())
}

/// `M^alpha` for PSD `M` by spectral calculus over the oracle solver.
pub fn psd_power(m: &ComplexMatrix, alpha: f64) -> ComplexMatrix {
    let (lam, v) = eig(m);
    let powered: Vec<f64> = clamp_psd(&lam).iter().map(|&l| l.powf(alpha)).collect();
    assemble(&powered, &v)
}

/// `Tr M^s` for PSD `M`; 0^0 counts as 1 to match the dim convention.
pub fn trace_power(m: &ComplexMatrix, s: f64) -> f64 {
    let (lam, _) = eig(m);
    clamp_psd(&lam).iter().map(|&l| l.powf(s)).sum()
}

pub fn lambda_max(m: &ComplexMatrix) -> f64 {
    let (lam, _) = eig(m);
    lam[0]
}

/// Singular values of a square matrix, descending, via X*X.
pub fn singular_values(x: &ComplexMatrix) -> Vec<f64> {
    let gram = x.adjoint().matmul(x);
    let (lam, _) = eig(&gram);
    clamp_psd(&lam).iter().map(|&l| l.sqrt()).collect()
}

/// `|X| = (X*X)^{1/2}`.
pub fn modulus(x: &ComplexMatrix) -> ComplexMatrix {
    let gram = x.adjoint().matmul(x);
    psd_power(&gram, 0.5)
}

fn p_norm(values: &[f64], p: SchattenIndex) -> f64 {
    match p {
        SchattenIndex::Finite(pv) => values.iter().map(|&s| s.powf(pv)).sum::<f64>().powf(1.0 / pv),
        SchattenIndex::Infinity => values.iter().fold(0.0f64, |m, &s| m.max(s)),
    }
}

/// Schatten norm of an arbitrary square matrix.
pub fn schatten(x: &ComplexMatrix, p: SchattenIndex) -> f64 {
    p_norm(&singular_values(x), p)
}

/// Schatten norm of a PSD matrix straight from its spectrum.
pub fn schatten_psd(m: &ComplexMatrix, p: SchattenIndex) -> f64 {
    let (lam, _) = eig(m);
    p_norm(&clamp_psd(&lam), p)
}

/// The two-sided eigenvalue-bound constant, re-typed from the formula.
pub fn kyfan(a: f64, b: f64, r: f64) -> f64 {
    if (a - b).abs() <= 1e-12 * a || (r - 1.0).abs() <= 1e-12 {
        return 1.0;
    }
    let num = a.powf(r) * b - a * b.powf(r);
    let first = num / ((r - 1.0) * (a - b));
    let second = ((r - 1.0) / r) * (a.powf(r) - b.powf(r)) / num;
    first * second.powf(r)
}

fn sandwich(outer: &ComplexMatrix, mid: &ComplexMatrix) -> ComplexMatrix {
    outer.matmul(mid).matmul(outer)
}

fn conj_sandwich(a: &ComplexMatrix, mid: &ComplexMatrix) -> ComplexMatrix {
    a.matmul(mid).matmul(&a.adjoint())
}

fn wine(a: &ComplexMatrix, b: &ComplexMatrix, r: f64, q: f64) -> (f64, ComplexMatrix) {
    let ar = psd_power(a, r);
    let br = psd_power(b, r);
    let inner = sandwich(&ar, &br);
    (trace_power(&inner, q), inner)
}

fn water(a: &ComplexMatrix, b: &ComplexMatrix, rq: f64) -> f64 {
    lambda_max(a).powf(2.0 * rq) * trace_power(b, rq)
}

/// Independently recomputed candidate (lhs, rhs) pairs for every checker;
/// same orientation conventions, none of the library's spectral code.
/// Simple statements yield one pair; chained/componentwise statements yield
/// every pair, since near-exact ties make the reported binding pair depend
/// on roundoff in the solver path.
pub fn side_pairs(
    id: IneqId,
    params: &IneqParams,
    ma: &ComplexMatrix,
    mb: &ComplexMatrix,
) -> Vec<(f64, f64)> {
    let IneqParams { r, q, p, t, s, u, a: a_bound, b: b_bound } = *params;
    match id {
        IneqId::Alt => {
            let (w, _) = wine(ma, mb, r, q);
            let tr_aba = trace_power(&sandwich(ma, mb), r * q);
            if r <= 1.0 {
                vec![(w, tr_aba)]
            } else {
                vec![(tr_aba, w)]
            }
        }
        IneqId::Water => {
            let tr_aba = trace_power(&sandwich(ma, mb), r * q);
            let wa = water(ma, mb, r * q);
            if q >= 0.0 {
                vec![(tr_aba, wa)]
            } else {
                vec![(wa, tr_aba)]
            }
        }
        IneqId::Waterwine => {
            let (wi, _) = wine(ma, mb, r, q);
            let wa = water(ma, mb, r * q);
            let tr_aba = trace_power(&sandwich(ma, mb), r * q);
            let bound = wa.powf(1.0 - r) * wi.powf(r);
            if r <= 1.0 {
                vec![(tr_aba, bound)]
            } else {
                vec![(bound, tr_aba)]
            }
        }
        IneqId::TFamily => {
            let (wi, _) = wine(ma, mb, r, q);
            let wa = water(ma, mb, r * q);
            let tr_aba = trace_power(&sandwich(ma, mb), r * q);
            vec![(tr_aba, wa.powf(t) * wi.powf(1.0 - t))]
        }
        IneqId::Bourin => {
            let k = kyfan(a_bound, b_bound, r);
            let (aba_lam, _) = eig(&sandwich(ma, mb));
            let lam: Vec<f64> = clamp_psd(&aba_lam).iter().map(|&l| l.powf(r)).collect();
            let (_, wine_mat) = wine(ma, mb, r, 1.0);
            let (mu, _) = eig(&wine_mat);
            let mut pairs = Vec::new();
            for i in 0..lam.len() {
                pairs.push((lam[i] / k, mu[i]));
                pairs.push((mu[i], k * lam[i]));
            }
            pairs
        }
        IneqId::TraceNormSpecial => {
            let ab = ma.matmul(mb);
            let tr_ab = ab.trace().re.max(0.0);
            let norm1 = schatten(&ab, SchattenIndex::Finite(1.0));
            let upper = (lambda_max(ma) * trace_power(mb, 1.0) * tr_ab).sqrt();
            vec![(tr_ab, norm1), (norm1, upper)]
        }
        IneqId::Holder => {
            let xy = ma.matmul(mb);
            let lhs = schatten_psd(&psd_power(&modulus(&xy), u), p).powf(1.0 / u);
            let rhs = schatten_psd(&psd_power(&modulus(ma), s), p).powf(1.0 / s)
                * schatten_psd(&psd_power(&modulus(mb), t), p).powf(1.0 / t);
            vec![(lhs, rhs)]
        }
        IneqId::GeneralA => {
            let aba = conj_sandwich(ma, mb);
            let lhs = schatten_psd(&psd_power(&aba, q), p);
            let mod_a_q = psd_power(&modulus(ma), q);
            let b_q = psd_power(mb, q);
            vec![(lhs, schatten_psd(&sandwich(&mod_a_q, &b_q), p))]
        }
        IneqId::LemmaSumDiff => {
            let diff = ma.sub(mb);
            let sum = ma.add(mb);
            let plain = (schatten(&diff, p), schatten_psd(&sum, p));
            let comp = (
                schatten_psd(&psd_power(&modulus(&diff), q), p).powf(1.0 / q),
                schatten_psd(&psd_power(&sum, q), p).powf(1.0 / q),
            );
            vec![plain, comp]
        }
        IneqId::HermitianB => {
            let aba = conj_sandwich(ma, mb);
            let lhs = schatten_psd(&psd_power(&modulus(&aba), q), p);
            // |B| by spectral absolute value.
            let (lam, v) = eig(mb);
            let abs_q: Vec<f64> = lam.iter().map(|&l| l.abs().powf(q)).collect();
            let mod_b_q = assemble(&abs_q, &v);
            let mod_a_q = psd_power(&modulus(ma), q);
            vec![(lhs, schatten_psd(&sandwich(&mod_a_q, &mod_b_q), p))]
        }
        IneqId::General => {
            let aba = conj_sandwich(ma, mb);
            let lhs = schatten_psd(&psd_power(&modulus(&aba), q), p);
            let mod_b_q = psd_power(&modulus(mb), q);
            let mod_bstar_q = psd_power(&modulus(&mb.adjoint()), q);
            let mod_a_q = psd_power(&modulus(ma), q);
            let sand_b = schatten_psd(&sandwich(&mod_a_q, &mod_b_q), p);
            let sand_bstar = schatten_psd(&sandwich(&mod_a_q, &mod_bstar_q), p);
            let rhs = match p {
                SchattenIndex::Finite(pv) => {
                    (0.5 * (sand_b.powf(pv) + sand_bstar.powf(pv))).powf(1.0 / pv)
                }
                SchattenIndex::Infinity => sand_b.max(sand_bstar),
            };
            vec![(lhs, rhs)]
        }
        IneqId::ProofSteps => {
            let margin = |low: &ComplexMatrix, high: &ComplexMatrix| -> f64 {
                let diff = high.sub(low).symmetrized();
                let (lam, _) = eig(&diff);
                let scale = lam.iter().fold(0.0f64, |m, &l| m.max(l.abs()));
                lam.last().unwrap() / scale.max(1.0)
            };
            let b_half = psd_power(mb, 0.5);
            let a_sq = ma.matmul(ma);
            let m1 = margin(
                &sandwich(&b_half, &a_sq),
                &mb.scale(lambda_max(ma).powi(2)),
            );
            let b_r = psd_power(mb, r);
            let m2 = margin(
                &sandwich(ma, mb),
                &sandwich(ma, &b_r).scale(lambda_max(mb).powf(1.0 - r)),
            );
            vec![(0.0, m1.min(m2))]
        }
    }
}
