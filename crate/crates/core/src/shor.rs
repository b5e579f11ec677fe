//! Reduced Shor circuit for N = 15, a = 11 with a noisy controlled phase.
//!
//! Qubits 0 and 1 are the exponent register (0 most significant), qubits 2
//! and 3 the target register. Basis index = Σ bit_q · 2^(3−q).

use std::f64::consts::PI;

use nalgebra::{DMatrix, DVector, Matrix2, Matrix4};
use num_complex::Complex64;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{Catalog, GeneratorSet, TwoQubitPairing};
use crate::compiler::{computational_embedding, GateName, WordProgram};
use crate::recoupling::Pairing;
use crate::Error;

pub const N: u64 = 15;
pub const A: u64 = 11;
pub const QUBITS: usize = 4;
pub const EXPONENT_QUBITS: u32 = 2;
pub const IDEAL: [f64; 4] = [0.5, 0.0, 0.5, 0.0];

const ZERO: Complex64 = Complex64::new(0.0, 0.0);
const ONE: Complex64 = Complex64::new(1.0, 0.0);

#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub enum Gate {
    H(usize),
    Cnot { control: usize, target: usize },
    /// Projective measurement of the target register, sampled.
    MeasureTargets,
    /// diag(1, 1, 1, e^{iφ}) on the pair, followed by the noise unitary.
    NoisyControlledPhase { a: usize, b: usize, phi: f64 },
}

/// H⊗H, the parity CNOTs, the target measurement and the inverse QFT
/// (without its final swap, which the readout absorbs).
pub fn build_circuit() -> Vec<Gate> {
    vec![
        Gate::H(0),
        Gate::H(1),
        Gate::Cnot { control: 1, target: 2 },
        Gate::Cnot { control: 1, target: 3 },
        Gate::MeasureTargets,
        Gate::H(0),
        Gate::NoisyControlledPhase { a: 0, b: 1, phi: -PI / 2.0 },
        Gate::H(1),
    ]
}

/// f(x) = a^x mod N.
pub fn modexp(x: u64) -> u64 {
    (0..x).fold(1, |acc, _| acc * A % N)
}

#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    pub amplitudes: DVector<Complex64>,
}

impl StateVector {
    pub fn zero() -> StateVector {
        let mut v = DVector::zeros(1 << QUBITS);
        v[0] = ONE;
        StateVector { amplitudes: v }
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.norm_squared()
    }

    fn bit(q: usize) -> usize {
        1 << (QUBITS - 1 - q)
    }

    /// Amplitudes as a (2^k × 2^(n−k)) matrix with the listed qubits as row
    /// index (first listed most significant).
    fn gather(&self, qs: &[usize]) -> DMatrix<Complex64> {
        let rest: Vec<usize> = (0..QUBITS).filter(|q| !qs.contains(q)).collect();
        DMatrix::from_fn(1 << qs.len(), 1 << rest.len(), |r, c| self.amplitudes[Self::index(qs, r, &rest, c)])
    }

    fn scatter(&mut self, qs: &[usize], m: &DMatrix<Complex64>) {
        let rest: Vec<usize> = (0..QUBITS).filter(|q| !qs.contains(q)).collect();
        for r in 0..m.nrows() {
            for c in 0..m.ncols() {
                self.amplitudes[Self::index(qs, r, &rest, c)] = m[(r, c)];
            }
        }
    }

    fn index(qs: &[usize], r: usize, rest: &[usize], c: usize) -> usize {
        let mut i = 0;
        for (k, &q) in qs.iter().enumerate() {
            if r >> (qs.len() - 1 - k) & 1 == 1 {
                i |= Self::bit(q);
            }
        }
        for (k, &q) in rest.iter().enumerate() {
            if c >> (rest.len() - 1 - k) & 1 == 1 {
                i |= Self::bit(q);
            }
        }
        i
    }

    pub fn apply_1q(&mut self, q: usize, u: &Matrix2<Complex64>) {
        let m = self.gather(&[q]);
        let u = DMatrix::from_column_slice(2, 2, u.as_slice());
        self.scatter(&[q], &(u * m));
    }

    /// `u` acts with `a` as its most significant qubit.
    pub fn apply_2q(&mut self, a: usize, b: usize, u: &Matrix4<Complex64>) {
        let m = self.gather(&[a, b]);
        let u = DMatrix::from_column_slice(4, 4, u.as_slice());
        self.scatter(&[a, b], &(u * m));
    }

    /// Run a braid program on the pair embedded in the 8-dimensional block;
    /// the projections post-select on the whole register.
    pub fn apply_braided(&mut self, a: usize, b: usize, prog: &WordProgram, emb: &[usize; 4]) -> Result<(), Error> {
        let m = self.gather(&[a, b]);
        let mut block = DMatrix::zeros(8, m.ncols());
        for (k, &row) in emb.iter().enumerate() {
            block.set_row(row, &m.row(k));
        }
        prog.apply(&mut block)?;
        let mut out = DMatrix::zeros(4, m.ncols());
        for (k, &row) in emb.iter().enumerate() {
            out.set_row(k, &block.row(row));
        }
        self.scatter(&[a, b], &out);
        let n = self.norm_sqr();
        self.amplitudes /= Complex64::new(n.sqrt(), 0.0);
        Ok(())
    }

    /// Sample the listed qubits, collapse and renormalize; returns the outcome.
    pub fn measure<R: Rng>(&mut self, qs: &[usize], rng: &mut R) -> usize {
        let m = self.gather(qs);
        let probs: Vec<f64> = (0..m.nrows()).map(|r| m.row(r).norm_squared()).collect();
        let total: f64 = probs.iter().sum();
        let u: f64 = rng.random::<f64>() * total;
        let mut acc = 0.0;
        let mut outcome = probs.iter().rposition(|&p| p > 0.0).unwrap_or(0);
        for (k, p) in probs.iter().enumerate() {
            acc += p;
            if u < acc {
                outcome = k;
                break;
            }
        }
        let mut kept = DMatrix::zeros(m.nrows(), m.ncols());
        kept.set_row(outcome, &m.row(outcome));
        kept /= Complex64::new(probs[outcome].sqrt(), 0.0);
        self.scatter(qs, &kept);
        outcome
    }

    /// Exponent-register distribution indexed by the bit-reversed readout y.
    pub fn readout(&self) -> [f64; 4] {
        let m = self.gather(&[0, 1]);
        let mut p = [0.0; 4];
        for x in 0..4 {
            p[bit_reverse2(x)] += m.row(x).norm_squared();
        }
        p
    }
}

pub fn bit_reverse2(x: usize) -> usize {
    ((x & 1) << 1) | (x >> 1)
}

pub fn hadamard() -> Matrix2<Complex64> {
    let h = Complex64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Matrix2::new(h, h, h, -h)
}

pub fn cnot() -> Matrix4<Complex64> {
    let mut m = Matrix4::zeros();
    for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
        m[(r, c)] = ONE;
    }
    m
}

pub fn controlled_phase(phi: f64) -> Matrix4<Complex64> {
    Matrix4::from_diagonal(&nalgebra::Vector4::new(ONE, ONE, ONE, Complex64::from_polar(1.0, phi)))
}

fn pauli(k: usize) -> Matrix2<Complex64> {
    let i = Complex64::new(0.0, 1.0);
    match k {
        0 => Matrix2::identity(),
        1 => Matrix2::new(ZERO, ONE, ONE, ZERO),
        2 => Matrix2::new(ZERO, -i, i, ZERO),
        _ => Matrix2::new(ONE, ZERO, ZERO, -ONE),
    }
}

/// The 15 traceless Hermitian generators (σ_a ⊗ σ_b)/2, (a, b) ≠ (0, 0),
/// orthonormal under tr(G_j G_k) = δ_jk.
pub fn noise_generators() -> Vec<Matrix4<Complex64>> {
    let mut out = Vec::with_capacity(15);
    for a in 0..4 {
        for b in 0..4 {
            if a == 0 && b == 0 {
                continue;
            }
            out.push(pauli(a).kronecker(&pauli(b)).fixed_view::<4, 4>(0, 0).into_owned() * Complex64::new(0.5, 0.0));
        }
    }
    out
}

/// exp(i Σ θ_k G_k).
pub fn noise_unitary(theta: &[f64], gens: &[Matrix4<Complex64>]) -> Matrix4<Complex64> {
    let h = theta.iter().zip(gens).fold(Matrix4::zeros(), |acc, (t, g)| acc + g * Complex64::new(*t, 0.0));
    (h * Complex64::new(0.0, 1.0)).exp()
}

fn sample_noise<R: Rng>(nu: f64, rng: &mut R, gens: &[Matrix4<Complex64>]) -> Result<Matrix4<Complex64>, Error> {
    if nu == 0.0 {
        return Ok(Matrix4::identity());
    }
    let normal = Normal::new(0.0, nu).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let theta: Vec<f64> = (0..gens.len()).map(|_| normal.sample(rng)).collect();
    Ok(noise_unitary(&theta, gens))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Default)]
pub enum Backend {
    #[default]
    Ideal,
    Braided,
}

impl Backend {
    pub fn name(self) -> &'static str {
        match self {
            Backend::Ideal => "ideal",
            Backend::Braided => "braided",
        }
    }
}

/// Braid-compiled H and CNOT: H from the 2×2 ΦΦ generators, CNOT from the
/// two-qubit word on the amended ΦΦ catalog with post-selection.
#[derive(Clone, Debug)]
pub struct BraidedGates {
    pub hadamard: Matrix2<Complex64>,
    pub cnot: WordProgram,
    pub embedding: [usize; 4],
}

impl BraidedGates {
    pub fn new() -> Result<BraidedGates, Error> {
        let one = GeneratorSet::one_qubit(Pairing::PhiPhi);
        let h = one.evaluate(&GateName::H.word(), crate::braid::Inversion::Unitary)?.to_complex();
        let pairing = TwoQubitPairing::ALL[0];
        let search = computational_embedding(pairing, Catalog::Amended)?;
        let emb = search.chosen().ok_or_else(|| Error::InvalidParameter("no CNOT embedding for amended ΦΦ".into()))?;
        let gens = GeneratorSet::two_qubit(pairing, Catalog::Amended);
        Ok(BraidedGates {
            hadamard: Matrix2::from_column_slice(h.as_slice()),
            cnot: WordProgram::new(&GateName::Cnot.word(), &gens, emb)?,
            embedding: emb.indices,
        })
    }
}

/// Everything a realization needs, built once per ensemble.
#[derive(Clone, Debug)]
pub struct Simulator {
    pub circuit: Vec<Gate>,
    pub backend: Backend,
    braided: Option<BraidedGates>,
    generators: Vec<Matrix4<Complex64>>,
}

impl Simulator {
    pub fn new(backend: Backend) -> Result<Simulator, Error> {
        Ok(Simulator {
            circuit: build_circuit(),
            backend,
            braided: match backend {
                Backend::Ideal => None,
                Backend::Braided => Some(BraidedGates::new()?),
            },
            generators: noise_generators(),
        })
    }

    pub fn rng(seed: u64, realization: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(realization);
        rng
    }

    /// One realization: the exact conditional readout distribution.
    pub fn realization(&self, nu: f64, seed: u64, index: u64) -> Result<[f64; 4], Error> {
        let mut rng = Self::rng(seed, index);
        let mut psi = StateVector::zero();
        for g in &self.circuit {
            match (*g, &self.braided) {
                (Gate::H(q), None) => psi.apply_1q(q, &hadamard()),
                (Gate::H(q), Some(b)) => psi.apply_1q(q, &b.hadamard),
                (Gate::Cnot { control, target }, None) => psi.apply_2q(control, target, &cnot()),
                (Gate::Cnot { control, target }, Some(b)) => psi.apply_braided(control, target, &b.cnot, &b.embedding)?,
                (Gate::MeasureTargets, _) => {
                    psi.measure(&[2, 3], &mut rng);
                }
                (Gate::NoisyControlledPhase { a, b, phi }, _) => {
                    psi.apply_2q(a, b, &controlled_phase(phi));
                    psi.apply_2q(a, b, &sample_noise(nu, &mut rng, &self.generators)?);
                }
            }
        }
        Ok(psi.readout())
    }
}

/// A single ideal-backend realization (stream 0).
pub fn run_once(nu: f64, seed: u64) -> Result<[f64; 4], Error> {
    Simulator::new(Backend::Ideal)?.realization(nu, seed, 0)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NoiseConfig {
    pub nu: f64,
    pub realizations: u64,
    pub seed: u64,
}

impl NoiseConfig {
    pub fn validate(&self) -> Result<(), Error> {
        if !(self.nu >= 0.0 && self.nu.is_finite()) {
            return Err(Error::InvalidParameter(format!("nu must be a finite non-negative number, got {}", self.nu)));
        }
        if self.realizations == 0 {
            return Err(Error::InvalidParameter("realizations must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EnsembleReport {
    pub nu: f64,
    pub realizations: u64,
    pub seed: u64,
    pub backend: Backend,
    pub mean: [f64; 4],
    pub stderr: [f64; 4],
    /// False when fewer than two shots survived.
    pub stderr_defined: bool,
    pub discarded: u64,
}

impl EnsembleReport {
    /// Total-variation distance of the mean from [½, 0, ½, 0].
    pub fn tvd(&self) -> f64 {
        0.5 * self.mean.iter().zip(IDEAL).map(|(m, i)| (m - i).abs()).sum::<f64>()
    }

    /// Standard-error bound on the TVD: ½ Σ_y SE_y.
    pub fn tvd_stderr(&self) -> f64 {
        0.5 * self.stderr.iter().sum::<f64>()
    }
}

#[derive(Clone, Copy, Default)]
struct Welford {
    n: u64,
    mean: f64,
    m2: f64,
}

impl Welford {
    fn push(&mut self, x: f64) {
        self.n += 1;
        let d = x - self.mean;
        self.mean += d / self.n as f64;
        self.m2 += d * (x - self.mean);
    }

    fn stderr(&self) -> f64 {
        if self.n < 2 {
            0.0
        } else {
            (self.m2 / (self.n - 1) as f64 / self.n as f64).sqrt()
        }
    }
}

impl Simulator {
    /// Realizations run in parallel; the reduction is in realization order.
    pub fn ensemble(&self, cfg: &NoiseConfig) -> Result<EnsembleReport, Error> {
        cfg.validate()?;
        let shots: Vec<Result<[f64; 4], Error>> =
            (0..cfg.realizations).into_par_iter().map(|r| self.realization(cfg.nu, cfg.seed, r)).collect();
        let mut acc = [Welford::default(); 4];
        let mut discarded = 0;
        for s in shots {
            match s {
                Ok(p) => acc.iter_mut().zip(p).for_each(|(w, x)| w.push(x)),
                Err(Error::TotalLeakage(_)) => discarded += 1,
                Err(e) => return Err(e),
            }
        }
        Ok(EnsembleReport {
            nu: cfg.nu,
            realizations: cfg.realizations,
            seed: cfg.seed,
            backend: self.backend,
            mean: acc.map(|w| w.mean),
            stderr: acc.map(|w| w.stderr()),
            stderr_defined: acc[0].n >= 2,
            discarded,
        })
    }
}

pub fn run_ensemble(cfg: &NoiseConfig, backend: Backend) -> Result<EnsembleReport, Error> {
    Simulator::new(backend)?.ensemble(cfg)
}

/// TVD nondecreasing along the list, allowing `k` standard errors per pair.
pub fn tvd_nondecreasing(reports: &[EnsembleReport], k: f64) -> bool {
    reports.windows(2).all(|w| w[1].tvd() + k * (w[0].tvd_stderr() + w[1].tvd_stderr()) >= w[0].tvd())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorResult {
    pub y: u64,
    pub period: Option<u64>,
    pub factors: Option<(u64, u64)>,
    pub failure: Option<String>,
}

pub fn postprocess(y: u64) -> Result<FactorResult, Error> {
    let q = 1u64 << EXPONENT_QUBITS;
    if y >= q {
        return Err(Error::InvalidParameter(format!("y = {y} outside 0..{q}")));
    }
    let fail = |period, why: &str| Ok(FactorResult { y, period, factors: None, failure: Some(why.into()) });
    if y == 0 {
        return fail(None, "trivial");
    }
    let r = q / y.gcd(&q);
    if r % 2 == 1 {
        return fail(Some(r), "odd period");
    }
    if modexp(r) != 1 {
        return fail(Some(r), "not a period");
    }
    let x = modexp(r / 2);
    let (p, s) = ((x + 1).gcd(&N), (x + N - 1).gcd(&N));
    if p == 1 || s == 1 || p * s != N {
        return fail(Some(r), "trivial factors");
    }
    Ok(FactorResult { y, period: Some(r), factors: Some((p.min(s), p.max(s))), failure: None })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modexp_parity() {
        assert_eq!((0..4).map(modexp).collect::<Vec<_>>(), vec![1, 11, 1, 11]);
    }

    #[test]
    fn y_two_factors() {
        let r = postprocess(2).unwrap();
        assert_eq!(r.period, Some(2));
        assert_eq!(r.factors, Some((3, 5)));
        assert_eq!(postprocess(0).unwrap().failure.as_deref(), Some("trivial"));
    }

    #[test]
    fn generators_orthonormal() {
        let g = noise_generators();
        assert_eq!(g.len(), 15);
        for (a, ga) in g.iter().enumerate() {
            assert!(ga.trace().norm() < 1e-15);
            assert!((ga - ga.adjoint()).norm() < 1e-15);
            for (b, gb) in g.iter().enumerate() {
                let t = (ga * gb).trace();
                assert!((t - Complex64::new(if a == b { 1.0 } else { 0.0 }, 0.0)).norm() < 1e-15);
            }
        }
    }

    #[test]
    fn noiseless_single_run() {
        let p = run_once(0.0, 7).unwrap();
        for (a, b) in p.iter().zip(IDEAL) {
            assert!((a - b).abs() < 1e-12);
        }
    }
}
