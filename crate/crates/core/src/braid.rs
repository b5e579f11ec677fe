//! Printed braid generators in exact arithmetic and braid-word evaluation.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::exact::ExactScalar;
use crate::matrix::ExactMatrix;
use crate::recoupling::Pairing;
use crate::Error;

fn z(m: i64) -> ExactScalar {
    ExactScalar::zeta(m)
}

fn inv_sqrt2() -> ExactScalar {
    ExactScalar::inv_sqrt2_pow(1)
}

/// `σ_index` for a single-qubit pairing, exactly as printed.
pub fn sigma_1q(pairing: Pairing, index: usize) -> Result<ExactMatrix, Error> {
    let one = ExactScalar::ONE;
    let m = match (pairing, index) {
        (Pairing::PhiPhi, 1) => ExactMatrix::diag(&[-one, z(2)]),
        (Pairing::PhiPhi, 2) => ExactMatrix::from_rows(vec![vec![z(3), z(5)], vec![z(5), z(3)]]).scale(inv_sqrt2()),
        (Pairing::SigmaSigma, 1) => ExactMatrix::diag(&[z(-1), z(-3)]),
        (Pairing::SigmaSigma, 2) => ExactMatrix::from_rows(vec![vec![-one, one], vec![one, -z(2)]]).scale(inv_sqrt2()),
        (Pairing::SigmaPhi, 1) => ExactMatrix::diag(&[-z(-1), z(1)]),
        (Pairing::SigmaPhi, 2) => ExactMatrix::from_rows(vec![vec![one, -one], vec![-one, z(2)]]).scale(inv_sqrt2()),
        _ => return Err(Error::UnknownGenerator { arity: 1, index }),
    };
    Ok(m)
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Species {
    Phi,
    Sigma,
}

/// `(X, Y)` of the two-qubit encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct TwoQubitPairing {
    pub x: Species,
    pub y: Species,
}

impl TwoQubitPairing {
    pub const ALL: [TwoQubitPairing; 4] = [
        TwoQubitPairing { x: Species::Phi, y: Species::Phi },
        TwoQubitPairing { x: Species::Sigma, y: Species::Phi },
        TwoQubitPairing { x: Species::Phi, y: Species::Sigma },
        TwoQubitPairing { x: Species::Sigma, y: Species::Sigma },
    ];

    pub fn name(self) -> String {
        let s = |k: Species| if k == Species::Phi { "Φ" } else { "Σ" };
        format!("{}{}", s(self.x), s(self.y))
    }

    pub fn parse(s: &str) -> Option<TwoQubitPairing> {
        let p = Pairing::parse(s);
        match p {
            Some(Pairing::PhiPhi) => Some(Self::ALL[0]),
            Some(Pairing::SigmaPhi) => Some(Self::ALL[1]),
            Some(Pairing::SigmaSigma) => Some(Self::ALL[3]),
            None => match s {
                "ΦΣ" | "PhiSigma" | "PS" | "phisigma" => Some(Self::ALL[2]),
                _ => None,
            },
        }
    }

    /// `(a, b, c, d, e)` from the parameter table.
    pub fn parameters(self) -> [ExactScalar; 5] {
        let one = ExactScalar::ONE;
        match (self.x, self.y) {
            (Species::Phi, Species::Phi) => [-one, z(2), z(3), z(5), z(3)],
            (Species::Sigma, Species::Sigma) => [z(-1), z(-3), -one, one, one],
            _ => [-z(-1), z(1), one, -one, z(2)],
        }
    }
}

/// Which printed data a generator is taken from.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Default)]
pub enum Catalog {
    /// Verbatim.
    #[default]
    Printed,
    /// Printed, except that the b entries of σ₃ rows 5 and 6 (0-based) sit in
    /// columns 5 and 6, completing the pairs (1,5) and (2,6).
    Amended,
}

impl Catalog {
    pub fn name(self) -> &'static str {
        match self {
            Catalog::Printed => "printed",
            Catalog::Amended => "amended",
        }
    }
}

/// Two-qubit `σ_index` instantiated from the templates.
pub fn sigma_2q(pairing: TwoQubitPairing, index: usize, catalog: Catalog) -> Result<ExactMatrix, Error> {
    let [a, b, c, d, e] = pairing.parameters();
    let h = inv_sqrt2();
    let mut m = ExactMatrix::zeros(8, 8);
    let mut put = |r: usize, col: usize, v: ExactScalar| m.set(r, col, v);
    match index {
        1 => {
            for (r, v) in [a, a, b, b, a, a, b, b].into_iter().enumerate() {
                put(r, r, v);
            }
        }
        2 => {
            for (p, q) in [(0, 2), (1, 3), (4, 6), (5, 7)] {
                put(p, p, c * h);
                put(p, q, d * h);
                put(q, p, d * h);
                put(q, q, c * h);
            }
        }
        3 => {
            let shifted = catalog == Catalog::Printed;
            let rows: [[(usize, ExactScalar); 2]; 8] = [
                [(0, a), (4, b)],
                [(1, b), (5, a)],
                [(2, b), (6, a)],
                [(3, a), (7, b)],
                [(0, b), (4, a)],
                [(1, a), (if shifted { 4 } else { 5 }, b)],
                [(2, a), (if shifted { 5 } else { 6 }, b)],
                [(3, b), (7, a)],
            ];
            for (r, row) in rows.into_iter().enumerate() {
                for (col, v) in row {
                    put(r, col, v * h);
                }
            }
        }
        4 => {
            for (blk, (p, q)) in [(0, 1), (2, 3), (4, 5), (6, 7)].into_iter().enumerate() {
                put(p, p, c * h);
                put(p, q, d * h);
                put(q, p, d * h);
                put(q, q, if blk == 0 { c } else { e } * h);
            }
        }
        5 => {
            for (r, v) in [a, b, a, b, a, b, a, b].into_iter().enumerate() {
                put(r, r, v);
            }
        }
        _ => return Err(Error::UnknownGenerator { arity: 2, index }),
    }
    Ok(m)
}

/// A token of a braid word.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub enum Token {
    Gen { index: usize, power: i32 },
    Project,
}

/// Tokens in written order; as a matrix the word is the ordered product, so
/// the rightmost token acts first on a state.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Default)]
pub struct BraidWord(pub Vec<Token>);

impl BraidWord {
    pub fn has_projection(&self) -> bool {
        self.0.contains(&Token::Project)
    }

    pub fn max_index(&self) -> usize {
        self.0
            .iter()
            .filter_map(|t| match t {
                Token::Gen { index, .. } => Some(*index),
                Token::Project => None,
            })
            .max()
            .unwrap_or(0)
    }
}

impl FromStr for BraidWord {
    type Err = Error;

    /// Whitespace-separated tokens: `P` (or `𝒫`) and `s3`, `s3^-1`, `σ3^2`.
    fn from_str(s: &str) -> Result<Self, Error> {
        let mut out = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "P" || tok == "𝒫" {
                out.push(Token::Project);
                continue;
            }
            let body = tok.strip_prefix('s').or_else(|| tok.strip_prefix('σ')).ok_or_else(|| Error::WordSyntax(tok.into()))?;
            let (idx, pow) = match body.split_once('^') {
                Some((i, p)) => (i, p.parse::<i32>().map_err(|_| Error::WordSyntax(tok.into()))?),
                None => (body, 1),
            };
            let index = idx.parse::<usize>().map_err(|_| Error::WordSyntax(tok.into()))?;
            if index == 0 || pow == 0 {
                return Err(Error::WordSyntax(tok.into()));
            }
            out.push(Token::Gen { index, power: pow });
        }
        Ok(BraidWord(out))
    }
}

impl fmt::Display for BraidWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|t| match t {
                Token::Project => "𝒫".to_string(),
                Token::Gen { index, power: 1 } => format!("σ{index}"),
                Token::Gen { index, power } => format!("σ{index}^{power}"),
            })
            .collect();
        f.write_str(&parts.join(" "))
    }
}

/// How negative powers are formed.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Inversion {
    /// Adjoint; the generator must be exactly unitary.
    Unitary,
    /// Adjugate, i.e. the inverse up to the nonzero scalar det. Valid for
    /// checks that only care about proportionality.
    Projective,
}

/// The generators of one representation.
#[derive(Clone, Debug)]
pub struct GeneratorSet {
    pub label: String,
    pub arity: usize,
    pub sigmas: Vec<ExactMatrix>,
}

impl GeneratorSet {
    pub fn one_qubit(pairing: Pairing) -> GeneratorSet {
        GeneratorSet {
            label: pairing.name().into(),
            arity: 1,
            sigmas: (1..=2).map(|i| sigma_1q(pairing, i).expect("index in range")).collect(),
        }
    }

    pub fn two_qubit(pairing: TwoQubitPairing, catalog: Catalog) -> GeneratorSet {
        GeneratorSet {
            label: format!("{} ({})", pairing.name(), catalog.name()),
            arity: 2,
            sigmas: (1..=5).map(|i| sigma_2q(pairing, i, catalog).expect("index in range")).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.sigmas[0].rows()
    }

    pub fn sigma(&self, index: usize) -> Result<&ExactMatrix, Error> {
        index
            .checked_sub(1)
            .and_then(|i| self.sigmas.get(i))
            .ok_or(Error::UnknownGenerator { arity: self.arity, index })
    }

    pub fn power(&self, index: usize, power: i32, inversion: Inversion) -> Result<ExactMatrix, Error> {
        let s = self.sigma(index)?;
        if power >= 0 {
            return Ok(s.pow(power as u32));
        }
        let inv = match inversion {
            Inversion::Unitary if s.is_unitary() => s.adjoint(),
            Inversion::Unitary => return Err(Error::InvalidParameter(format!("σ{index} of {} is not unitary", self.label))),
            Inversion::Projective if s.is_unitary() => s.adjoint(),
            Inversion::Projective => {
                if s.determinant().is_zero() {
                    return Err(Error::Singular(index));
                }
                s.adjugate()
            }
        };
        Ok(inv.pow(power.unsigned_abs()))
    }

    /// Ordered product of a word without projection markers.
    pub fn evaluate(&self, word: &BraidWord, inversion: Inversion) -> Result<ExactMatrix, Error> {
        let mut m = ExactMatrix::identity(self.dim());
        for t in &word.0 {
            match *t {
                Token::Gen { index, power } => m = &m * &self.power(index, power, inversion)?,
                Token::Project => return Err(Error::WordSyntax("𝒫 in a pure evaluation".into())),
            }
        }
        Ok(m)
    }
}

pub fn evaluate(word: &BraidWord, gens: &GeneratorSet) -> Result<ExactMatrix, Error> {
    if word.max_index() > gens.sigmas.len() {
        return Err(Error::ArityMismatch);
    }
    gens.evaluate(word, Inversion::Unitary)
}

#[derive(Clone, Debug, Serialize)]
pub struct RelationCheck {
    pub relation: String,
    pub kind: &'static str,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct BraidReport {
    pub label: String,
    pub unitary: Vec<bool>,
    pub relations: Vec<RelationCheck>,
}

impl BraidReport {
    pub fn all_unitary(&self) -> bool {
        self.unitary.iter().all(|&u| u)
    }

    pub fn failures(&self, kind: &str) -> Vec<&RelationCheck> {
        self.relations.iter().filter(|r| r.kind == kind && !r.holds).collect()
    }

    pub fn passed(&self) -> bool {
        self.all_unitary() && self.relations.iter().all(|r| r.holds)
    }
}

pub fn verify_braid_relations(gens: &GeneratorSet) -> BraidReport {
    let n = gens.sigmas.len();
    let s = |i: usize| &gens.sigmas[i - 1];
    let mut relations = Vec::new();
    for i in 1..n {
        let l = &(s(i) * s(i + 1)) * s(i);
        let r = &(s(i + 1) * s(i)) * s(i + 1);
        relations.push(RelationCheck { relation: format!("σ{i}σ{}σ{i} = σ{}σ{i}σ{}", i + 1, i + 1, i + 1), kind: "adjacent", holds: l == r });
    }
    for i in 1..=n {
        for j in i + 2..=n {
            relations.push(RelationCheck { relation: format!("σ{i}σ{j} = σ{j}σ{i}"), kind: "far", holds: s(i) * s(j) == s(j) * s(i) });
        }
    }
    BraidReport { label: gens.label.clone(), unitary: gens.sigmas.iter().map(ExactMatrix::is_unitary).collect(), relations }
}

/// A 2×2 generator has eigenvalues {λ, ±iλ} exactly when tr(M²) = 0.
pub fn ising_like_spectrum(m: &ExactMatrix) -> bool {
    let sq = m * m;
    let tr = sq.get(0, 0) + sq.get(1, 1);
    m.rows() == 2 && tr.is_zero() && !m.determinant().is_zero()
}
