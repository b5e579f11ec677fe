//! Exact gate words, the computational-subspace projection and leakage.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::braid::{BraidWord, Catalog, GeneratorSet, Inversion, Token, TwoQubitPairing};
use crate::exact::ExactScalar;
use crate::matrix::ExactMatrix;
use crate::recoupling::Pairing;
use crate::Error;

/// Positions of |00⟩, |01⟩, |10⟩, |11⟩ inside the 8-dimensional block.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize)]
pub struct SubspaceEmbedding {
    pub indices: [usize; 4],
}

impl SubspaceEmbedding {
    pub const CANDIDATES: usize = 8 * 7 * 6 * 5;

    pub fn new(indices: [usize; 4]) -> Result<SubspaceEmbedding, Error> {
        let distinct = (0..4).all(|i| (i + 1..4).all(|j| indices[i] != indices[j]));
        if !distinct || indices.iter().any(|&i| i >= 8) {
            return Err(Error::InvalidParameter(format!("embedding {indices:?}")));
        }
        Ok(SubspaceEmbedding { indices })
    }

    /// All ordered 4-tuples in lexicographic order.
    pub fn all() -> Vec<SubspaceEmbedding> {
        let mut out = Vec::with_capacity(Self::CANDIDATES);
        for a in 0..8 {
            for b in 0..8 {
                for c in 0..8 {
                    for d in 0..8 {
                        if let Ok(e) = Self::new([a, b, c, d]) {
                            out.push(e);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn projector(&self) -> ExactMatrix {
        let mut p = ExactMatrix::zeros(8, 8);
        for &i in &self.indices {
            p.set(i, i, ExactScalar::ONE);
        }
        p
    }

    pub fn restrict(&self, m: &ExactMatrix) -> ExactMatrix {
        m.submatrix(&self.indices, &self.indices)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.indices.contains(&i)
    }

    /// Embedded computational basis state |k⟩.
    pub fn basis_state(&self, k: usize) -> DVector<Complex64> {
        let mut v = DVector::zeros(8);
        v[self.indices[k]] = Complex64::new(1.0, 0.0);
        v
    }
}

impl Default for SubspaceEmbedding {
    fn default() -> Self {
        SubspaceEmbedding { indices: [0, 1, 2, 3] }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum GateName {
    S,
    H,
    X,
    Y,
    Z,
    Cnot,
    Cz,
}

impl GateName {
    pub const ALL: [GateName; 7] = [GateName::S, GateName::H, GateName::X, GateName::Y, GateName::Z, GateName::Cnot, GateName::Cz];

    pub fn name(self) -> &'static str {
        match self {
            GateName::S => "S",
            GateName::H => "H",
            GateName::X => "X",
            GateName::Y => "Y",
            GateName::Z => "Z",
            GateName::Cnot => "CNOT",
            GateName::Cz => "CZ",
        }
    }

    pub fn arity(self) -> usize {
        if matches!(self, GateName::Cnot | GateName::Cz) {
            2
        } else {
            1
        }
    }

    pub fn word(self) -> BraidWord {
        let w = match self {
            GateName::S => "s1^-1",
            GateName::H => "s1 s2 s1",
            GateName::X => "s2 s2",
            GateName::Y => "s1 s1 s2^-1 s2^-1",
            GateName::Z => "s1 s1",
            GateName::Cnot => "P s3^-1 s4^-1 s5^-1 P s3 s4 P s3 s1",
            GateName::Cz => "s1 P s3^-1 s5",
        };
        w.parse().expect("gate words are well formed")
    }

    pub fn target(self) -> ExactMatrix {
        let o = ExactScalar::ONE;
        let z = ExactScalar::ZERO;
        let i = ExactScalar::I;
        match self {
            GateName::S => ExactMatrix::diag(&[o, i]),
            GateName::H => ExactMatrix::from_rows(vec![vec![o, o], vec![o, -o]]).scale(ExactScalar::inv_sqrt2_pow(1)),
            GateName::X => ExactMatrix::from_rows(vec![vec![z, o], vec![o, z]]),
            GateName::Y => ExactMatrix::from_rows(vec![vec![z, -i], vec![i, z]]),
            GateName::Z => ExactMatrix::diag(&[o, -o]),
            GateName::Cnot => {
                let mut m = ExactMatrix::zeros(4, 4);
                for (r, c) in [(0, 0), (1, 1), (2, 3), (3, 2)] {
                    m.set(r, c, o);
                }
                m
            }
            GateName::Cz => ExactMatrix::diag(&[o, o, o, -o]),
        }
    }
}

/// Product of the segments between 𝒫 markers, each precomputed in full.
fn segments(word: &BraidWord, gens: &GeneratorSet, inversion: Inversion) -> Result<Vec<ExactMatrix>, Error> {
    let mut out = Vec::new();
    let mut cur = ExactMatrix::identity(gens.dim());
    for t in &word.0 {
        match *t {
            Token::Project => out.push(std::mem::replace(&mut cur, ExactMatrix::identity(gens.dim()))),
            Token::Gen { index, power } => cur = &cur * &gens.power(index, power, inversion)?,
        }
    }
    out.push(cur);
    Ok(out)
}

fn restricted_product(segs: &[ExactMatrix], emb: &SubspaceEmbedding) -> ExactMatrix {
    segs.iter().skip(1).fold(emb.restrict(&segs[0]), |acc, s| &acc * &emb.restrict(s))
}

/// 𝒫W𝒫 restricted to the embedding.
pub fn realize(word: &BraidWord, gens: &GeneratorSet, emb: &SubspaceEmbedding, inversion: Inversion) -> Result<ExactMatrix, Error> {
    Ok(restricted_product(&segments(word, gens, inversion)?, emb))
}

#[derive(Clone, Debug, Serialize)]
pub struct CompiledGate {
    pub name: GateName,
    pub target: ExactMatrix,
    pub word: BraidWord,
    pub pairing: String,
    pub uses_projection: bool,
    pub realized: ExactMatrix,
    /// `realized = factor · target`, when it holds.
    pub factor: Option<ExactScalar>,
    pub holds: bool,
    /// `realized − target` when the identity fails.
    pub residual: Option<ExactMatrix>,
}

impl CompiledGate {
    fn check(name: GateName, pairing: String, realized: ExactMatrix) -> CompiledGate {
        let target = name.target();
        let prop = realized.proportionality(&target);
        let residual = if prop.is_none() {
            let mut r = realized.clone();
            for row in 0..r.rows() {
                for col in 0..r.cols() {
                    r.set(row, col, realized.get(row, col) - target.get(row, col));
                }
            }
            Some(r)
        } else {
            None
        };
        let word = name.word();
        CompiledGate {
            name,
            target,
            uses_projection: word.has_projection(),
            word,
            pairing,
            realized,
            factor: prop.flatten(),
            holds: prop.is_some(),
            residual,
        }
    }

    /// The factor is a pure phase, so the identity holds without loss of norm.
    pub fn is_phase(&self) -> bool {
        self.factor.map(|f| f.norm_sqr() == ExactScalar::ONE).unwrap_or(false)
    }
}

/// A single-qubit gate on the 2×2 generators of `pairing`.
pub fn compile(name: GateName, pairing: Pairing) -> Result<CompiledGate, Error> {
    compile_with(name, &GeneratorSet::one_qubit(pairing), None)
}

/// Compile against an explicit generator set; two-qubit gates need an embedding.
pub fn compile_with(name: GateName, gens: &GeneratorSet, emb: Option<&SubspaceEmbedding>) -> Result<CompiledGate, Error> {
    if name.arity() != gens.arity {
        return Err(Error::ArityMismatch);
    }
    let realized = if gens.arity == 1 {
        gens.evaluate(&name.word(), Inversion::Projective)?
    } else {
        let emb = emb.ok_or_else(|| Error::InvalidParameter("two-qubit gates need an embedding".into()))?;
        realize(&name.word(), gens, emb, Inversion::Projective)?
    };
    Ok(CompiledGate::check(name, gens.label.clone(), realized))
}

#[derive(Clone, Debug, Serialize)]
pub struct EmbeddingSearch {
    pub pairing: String,
    pub catalog: Catalog,
    pub scanned: usize,
    pub cnot: Vec<SubspaceEmbedding>,
    pub cz: Vec<SubspaceEmbedding>,
    /// Embeddings on which both words realize their targets.
    pub both: Vec<SubspaceEmbedding>,
    /// Words that could not be evaluated.
    pub undefined: Vec<String>,
}

impl EmbeddingSearch {
    pub fn chosen(&self) -> Option<SubspaceEmbedding> {
        self.both.first().copied()
    }
}

/// Exhaustive search over all 1680 ordered embeddings. A word containing the
/// inverse of a singular generator matches no candidate.
pub fn computational_embedding(pairing: TwoQubitPairing, catalog: Catalog) -> Result<EmbeddingSearch, Error> {
    let gens = GeneratorSet::two_qubit(pairing, catalog);
    let candidates = SubspaceEmbedding::all();
    let mut undefined = Vec::new();
    let mut scan = |g: GateName| -> Result<Vec<SubspaceEmbedding>, Error> {
        let segs = match segments(&g.word(), &gens, Inversion::Projective) {
            Ok(s) => s,
            Err(Error::Singular(i)) => {
                undefined.push(format!("{}: σ{i} is singular", g.name()));
                return Ok(Vec::new());
            }
            Err(e) => return Err(e),
        };
        let target = g.target();
        let hits: Vec<Option<SubspaceEmbedding>> = candidates
            .par_iter()
            .map(|e| restricted_product(&segs, e).proportionality(&target).map(|_| *e))
            .collect();
        Ok(hits.into_iter().flatten().collect())
    };
    let cnot = scan(GateName::Cnot)?;
    let cz = scan(GateName::Cz)?;
    let both = cnot.iter().filter(|e| cz.contains(e)).copied().collect();
    Ok(EmbeddingSearch { pairing: pairing.name(), catalog, scanned: candidates.len(), cnot, cz, both, undefined })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LeakageRecord {
    /// Position of the 𝒫 marker in the written word.
    pub step: usize,
    /// Probability outside the subspace just before the projection.
    pub leaked: f64,
}

/// Complex form of a word, ready to act on states.
#[derive(Clone, Debug)]
pub struct WordProgram {
    // In application order: rightmost token first.
    ops: Vec<(usize, Option<DMatrix<Complex64>>)>,
    embedding: SubspaceEmbedding,
}

impl WordProgram {
    pub fn new(word: &BraidWord, gens: &GeneratorSet, emb: SubspaceEmbedding) -> Result<WordProgram, Error> {
        let mut ops = Vec::new();
        for (pos, t) in word.0.iter().enumerate().rev() {
            match *t {
                Token::Project => ops.push((pos, None)),
                Token::Gen { index, power } => ops.push((pos, Some(gens.power(index, power, Inversion::Unitary)?.to_complex()))),
            }
        }
        Ok(WordProgram { ops, embedding: emb })
    }

    /// Act on the columns of `state` (8 × m) jointly; norm is the Frobenius norm.
    pub fn apply(&self, state: &mut DMatrix<Complex64>) -> Result<Vec<LeakageRecord>, Error> {
        let mut leaks = Vec::new();
        for (pos, op) in &self.ops {
            match op {
                Some(m) => *state = m * &*state,
                None => {
                    let total = state.norm_squared();
                    for r in 0..state.nrows() {
                        if !self.embedding.contains(r) {
                            state.row_mut(r).fill(Complex64::new(0.0, 0.0));
                        }
                    }
                    let kept = state.norm_squared();
                    if kept < 1e-12 {
                        return Err(Error::TotalLeakage(*pos));
                    }
                    *state /= Complex64::new((kept / total).sqrt(), 0.0);
                    leaks.push(LeakageRecord { step: *pos, leaked: (1.0 - kept / total).clamp(0.0, 1.0) });
                }
            }
        }
        Ok(leaks)
    }
}

/// Evolve an 8-vector through `word`, post-selecting at every 𝒫.
pub fn apply_with_projection(
    word: &BraidWord,
    gens: &GeneratorSet,
    emb: &SubspaceEmbedding,
    state: &DVector<Complex64>,
) -> Result<(DVector<Complex64>, Vec<LeakageRecord>), Error> {
    let prog = WordProgram::new(word, gens, *emb)?;
    let mut m = DMatrix::from_column_slice(state.len(), 1, state.as_slice());
    let leaks = prog.apply(&mut m)?;
    Ok((DVector::from_column_slice(m.as_slice()), leaks))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub gate: GateName,
    pub word: String,
    pub holds_for: Vec<String>,
    pub factors: Vec<(String, Option<String>)>,
}

#[derive(Clone, Debug, Serialize)]
pub struct GateReport {
    pub single_qubit: Vec<IdentityCheck>,
    /// σ₂σ₁σ₂ ∝ H per pairing, and whether it equals σ₁σ₂σ₁.
    pub alternative_hadamard: Vec<(String, bool, bool)>,
    pub embeddings: Vec<EmbeddingSearch>,
    /// CNOT and CZ on the first embedding found, per catalog.
    pub two_qubit: Vec<CompiledGate>,
}

impl GateReport {
    pub fn single_qubit_pass(&self) -> bool {
        self.single_qubit.iter().all(|c| c.holds_for.iter().any(|p| p == Pairing::PhiPhi.name()))
    }

    pub fn two_qubit_pass(&self, catalog: Catalog) -> bool {
        self.embeddings.iter().any(|e| e.catalog == catalog && !e.both.is_empty())
    }
}

pub fn gate_report() -> Result<GateReport, Error> {
    let mut single = Vec::new();
    for g in GateName::ALL.into_iter().filter(|g| g.arity() == 1) {
        let mut holds_for = Vec::new();
        let mut factors = Vec::new();
        for p in Pairing::ALL {
            let c = compile(g, p)?;
            if c.holds {
                holds_for.push(p.name().to_string());
            }
            factors.push((p.name().to_string(), c.factor.map(|f| f.to_string())));
        }
        single.push(IdentityCheck { gate: g, word: g.word().to_string(), holds_for, factors });
    }
    let alt: BraidWord = "s2 s1 s2".parse().expect("well formed");
    let mut alternative_hadamard = Vec::new();
    for p in Pairing::ALL {
        let gens = GeneratorSet::one_qubit(p);
        let a = gens.evaluate(&alt, Inversion::Projective)?;
        let b = gens.evaluate(&GateName::H.word(), Inversion::Projective)?;
        alternative_hadamard.push((p.name().to_string(), a.proportionality(&GateName::H.target()).is_some(), a == b));
    }
    let mut embeddings = Vec::new();
    for catalog in [Catalog::Printed, Catalog::Amended] {
        for p in TwoQubitPairing::ALL {
            embeddings.push(computational_embedding(p, catalog)?);
        }
    }
    let mut two_qubit = Vec::new();
    for e in &embeddings {
        if let Some(emb) = e.chosen() {
            if two_qubit.iter().any(|c: &CompiledGate| c.pairing.ends_with(&format!("({})", e.catalog.name()))) {
                continue;
            }
            let pairing = TwoQubitPairing::parse(&e.pairing).expect("round trip");
            let gens = GeneratorSet::two_qubit(pairing, e.catalog);
            for g in [GateName::Cnot, GateName::Cz] {
                two_qubit.push(compile_with(g, &gens, Some(&emb))?);
            }
        }
    }
    Ok(GateReport { single_qubit: single, alternative_hadamard, embeddings, two_qubit })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn candidate_count() {
        assert_eq!(SubspaceEmbedding::all().len(), 1680);
        assert!(SubspaceEmbedding::new([0, 0, 1, 2]).is_err());
    }

    #[test]
    fn projector_is_idempotent_rank_four() {
        let p = SubspaceEmbedding::new([7, 2, 5, 0]).unwrap().projector();
        assert_eq!(&p * &p, p);
        let rank = (0..8).filter(|&i| !p.get(i, i).is_zero()).count();
        assert_eq!(rank, 4);
    }

    #[test]
    fn s_gate_is_minus_target() {
        let c = compile(GateName::S, Pairing::PhiPhi).unwrap();
        assert!(c.holds);
        assert_eq!(c.factor, Some(-ExactScalar::ONE));
    }

    #[test]
    fn hadamard_phase() {
        let c = compile(GateName::H, Pairing::PhiPhi).unwrap();
        assert_eq!(c.factor, Some(ExactScalar::zeta(3)));
    }
}
