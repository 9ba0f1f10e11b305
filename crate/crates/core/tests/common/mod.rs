//! Independent oracles and random model generators shared by the
//! integration tests and the acceptance suite.
#![allow(dead_code)]

use nalgebra::DMatrix;
use num_complex::Complex64;
use oscnet::dynamics::drift_matrix;
use oscnet::dynamics::DriftMatrix;
use oscnet::model::{EquilibriumSpec, LindbladSpec, OscillatorNetwork};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Shape {
    pub zero_mu_tilde: bool,
    /// Make λ and μ symmetric off the diagonal.
    pub symmetric_lambda_mu: bool,
}

pub struct RandomModel {
    pub net: OscillatorNetwork,
    pub lind: LindbladSpec,
    pub eq: EquilibriumSpec,
    pub drift: DriftMatrix,
}

fn symmetrize_off(m: &mut DMatrix<f64>) {
    let n = m.nrows();
    for k in 0..n {
        for j in k + 1..n {
            m[(j, k)] = m[(k, j)];
        }
    }
}

fn antisymmetric(rng: &mut impl Rng, n: usize, scale: f64) -> DMatrix<f64> {
    let mut a = DMatrix::zeros(n, n);
    for k in 0..n {
        for j in k + 1..n {
            let v = rng.random_range(-scale..scale);
            a[(k, j)] = v;
            a[(j, k)] = -v;
        }
    }
    a
}

/// A valid network with Hurwitz drift. Couplings are small enough that
/// most draws are accepted on the first try.
pub fn random_model(rng: &mut impl Rng, n: usize, shape: Shape) -> RandomModel {
    loop {
        let masses: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
        let freqs: Vec<f64> = (0..n).map(|_| rng.random_range(0.5..2.0)).collect();
        let mut mu = DMatrix::from_fn(n, n, |_, _| rng.random_range(-0.2..0.2));
        let mut nu = DMatrix::from_fn(n, n, |_, _| rng.random_range(-0.2..0.2));
        let mut kappa = DMatrix::from_fn(n, n, |_, _| rng.random_range(-0.2..0.2));
        symmetrize_off(&mut nu);
        symmetrize_off(&mut kappa);
        let mut lambda = DMatrix::from_fn(n, n, |k, j| {
            if k == j {
                rng.random_range(0.05..1.0)
            } else {
                rng.random_range(-0.1..0.1)
            }
        });
        if shape.symmetric_lambda_mu {
            symmetrize_off(&mut lambda);
            symmetrize_off(&mut mu);
        }
        let alpha = antisymmetric(rng, n, 0.1);
        let eta = antisymmetric(rng, n, 0.1);
        let mu_tilde: Vec<f64> = freqs
            .iter()
            .map(|w| {
                if shape.zero_mu_tilde {
                    0.0
                } else {
                    rng.random_range(-0.8..0.8) * w
                }
            })
            .collect();
        let temperature = rng.random_range(0.05..20.0);

        let net = OscillatorNetwork::new(masses, freqs, mu, nu, kappa).unwrap();
        let lind = LindbladSpec::new(lambda, alpha, eta).unwrap();
        let eq = EquilibriumSpec::new(mu_tilde, temperature).unwrap();
        let drift = drift_matrix(&net, &lind).unwrap();
        if drift.is_hurwitz() {
            return RandomModel {
                net,
                lind,
                eq,
                drift,
            };
        }
    }
}

/// Classical fourth-order Runge-Kutta for `dσ/dt = Mσ + σMᵀ + 2D`.
pub fn rk4_covariance(
    m: &DMatrix<f64>,
    d: &DMatrix<f64>,
    sigma0: &DMatrix<f64>,
    t: f64,
    steps: usize,
) -> DMatrix<f64> {
    let f = |s: &DMatrix<f64>| m * s + s * m.transpose() + d * 2.0;
    let h = t / steps as f64;
    let mut s = sigma0.clone();
    for _ in 0..steps {
        let k1 = f(&s);
        let k2 = f(&(&s + &k1 * (h / 2.0)));
        let k3 = f(&(&s + &k2 * (h / 2.0)));
        let k4 = f(&(&s + &k3 * h));
        s += (k1 + k2 * 2.0 + k3 * 2.0 + k4) * (h / 6.0);
    }
    s
}

fn symplectic(n: usize) -> DMatrix<f64> {
    let mut j = DMatrix::zeros(2 * n, 2 * n);
    for k in 0..n {
        j[(2 * k, 2 * k + 1)] = 1.0;
        j[(2 * k + 1, 2 * k)] = -1.0;
    }
    j
}

/// Symplectic eigenvalues of the partially transposed two-mode covariance,
/// from the spectrum of `iJσ_PT` (eigenvalues come in ± pairs).
pub fn pt_symplectic_spectrum(sigma: &DMatrix<f64>) -> Vec<f64> {
    let flip = DMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![1.0, 1.0, 1.0, -1.0]));
    let pt = &flip * sigma * &flip;
    let mut nus: Vec<f64> = (symplectic(2) * pt)
        .complex_eigenvalues()
        .iter()
        .map(|z| z.norm())
        .collect();
    nus.sort_by(f64::total_cmp);
    nus.dedup_by(|a, b| (*a - *b).abs() < 1e-9 * b.abs().max(1.0));
    nus
}

/// Smallest eigenvalue of the Hermitian `σ + (iħ/2)J`, computed in complex
/// arithmetic.
pub fn uncertainty_min_eig(sigma: &DMatrix<f64>, hbar: f64) -> f64 {
    let n = sigma.nrows() / 2;
    let j = symplectic(n);
    let h = DMatrix::from_fn(2 * n, 2 * n, |r, c| {
        Complex64::new(sigma[(r, c)], 0.5 * hbar * j[(r, c)])
    });
    h.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}

/// `(⟨q²⟩, ⟨p²⟩, ⟨(qp + pq)/2⟩)` of `exp(−βH)/Z` for
/// `H = p²/2m + mω²q²/2 + μ̃(qp + pq)/2`, built in a truncated Fock basis.
pub fn fock_gibbs_moments(
    m: f64,
    w: f64,
    mu_tilde: f64,
    temperature: f64,
    hbar: f64,
    kb: f64,
    dim: usize,
) -> (f64, f64, f64) {
    let mut a = DMatrix::<Complex64>::zeros(dim, dim);
    for n in 1..dim {
        a[(n - 1, n)] = Complex64::new((n as f64).sqrt(), 0.0);
    }
    let ad = a.adjoint();
    let q = (&a + &ad) * Complex64::new((hbar / (2.0 * m * w)).sqrt(), 0.0);
    let p = (&ad - &a) * Complex64::new(0.0, (hbar * m * w / 2.0).sqrt());
    let half = Complex64::new(0.5, 0.0);
    let qp_sym = (&q * &p + &p * &q) * half;
    let h = &p * &p * Complex64::new(0.5 / m, 0.0)
        + &q * &q * Complex64::new(0.5 * m * w * w, 0.0)
        + &qp_sym * Complex64::new(mu_tilde, 0.0);
    // truncation corrupts the top levels; they carry negligible weight
    let keep = dim - 10;
    let h = h.view((0, 0), (keep, keep)).into_owned();
    let (q, p, qp_sym) = (
        (&q * &q).view((0, 0), (keep, keep)).into_owned(),
        (&p * &p).view((0, 0), (keep, keep)).into_owned(),
        qp_sym.view((0, 0), (keep, keep)).into_owned(),
    );
    let eig = h.symmetric_eigen();
    let beta = 1.0 / (kb * temperature);
    let e0 = eig.eigenvalues.min();
    let weights: Vec<f64> = eig
        .eigenvalues
        .iter()
        .map(|e| (-beta * (e - e0)).exp())
        .collect();
    let z: f64 = weights.iter().sum();
    let expect = |op: &DMatrix<Complex64>| -> f64 {
        let mut acc = 0.0;
        for (i, w) in weights.iter().enumerate() {
            let v = eig.eigenvectors.column(i);
            acc += w * (v.adjoint() * op * v)[(0, 0)].re;
        }
        acc / z
    };
    (expect(&q), expect(&p), expect(&qp_sym))
}
