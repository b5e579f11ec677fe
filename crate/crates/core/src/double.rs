//! Particle spectrum of 𝒟(Q₈), modular S and T, and Verlinde fusion.

use std::fmt;

use serde::Serialize;

use crate::exact::ExactScalar;
use crate::group::{irreps, multiply, ClassLabel, GroupKind, Irrep, Section, CLASSES};
use crate::matrix::ExactMatrix;
use crate::Error;

/// A charge `(class, irrep index)`; for central classes the irrep is Λ_a of
/// Q₈, otherwise Π_a of the class centralizer.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Serialize)]
pub struct AnyonCharge {
    pub class: ClassLabel,
    pub irrep: u8,
}

pub const NUM_CHARGES: usize = 22;

impl AnyonCharge {
    pub const VACUUM: AnyonCharge = AnyonCharge { class: ClassLabel::Ce, irrep: 0 };

    pub fn all() -> Vec<AnyonCharge> {
        CLASSES
            .iter()
            .flat_map(|&class| {
                let n = if class.is_central() { 5 } else { 4 };
                (0..n).map(move |irrep| AnyonCharge { class, irrep })
            })
            .collect()
    }

    pub fn index(self) -> usize {
        match self.class {
            ClassLabel::Ce => self.irrep as usize,
            ClassLabel::CeBar => 5 + self.irrep as usize,
            c => 10 + 4 * (c.index() - 2) + self.irrep as usize,
        }
    }

    pub fn from_index(i: usize) -> AnyonCharge {
        Self::all()[i]
    }

    pub fn irrep_rep(self) -> Irrep {
        irreps(GroupKind::Centralizer(self.class)).swap_remove(self.irrep as usize)
    }

    pub fn irrep_dim(self) -> usize {
        if self.class.is_central() && self.irrep == 4 {
            2
        } else {
            1
        }
    }

    pub fn dim(self) -> usize {
        self.class.size() * self.irrep_dim()
    }

    pub fn name(self) -> String {
        let axis = |a: u8| ["i", "j", "k"][a as usize - 1];
        match (self.class, self.irrep) {
            (ClassLabel::Ce, 0) => "𝟙".into(),
            (ClassLabel::Ce, 4) => "Δ".into(),
            (ClassLabel::Ce, a) => format!("ρ_{}", axis(a)),
            (ClassLabel::CeBar, 0) => "𝟙̄".into(),
            (ClassLabel::CeBar, 4) => "Δ̄".into(),
            (ClassLabel::CeBar, a) => format!("ρ̄_{}", axis(a)),
            (c, a) => {
                let x = axis(c.index() as u8 - 1);
                format!("{}_{x}", ["Φ", "Σ", "Φ̃", "Σ̃"][a as usize])
            }
        }
    }

    /// ASCII spelling, e.g. `Phit_i`, `rhob_j`, `1b`.
    pub fn ascii_name(self) -> String {
        let axis = |a: u8| ["i", "j", "k"][a as usize - 1];
        match (self.class, self.irrep) {
            (ClassLabel::Ce, 0) => "1".into(),
            (ClassLabel::Ce, 4) => "Delta".into(),
            (ClassLabel::Ce, a) => format!("rho_{}", axis(a)),
            (ClassLabel::CeBar, 0) => "1b".into(),
            (ClassLabel::CeBar, 4) => "Deltab".into(),
            (ClassLabel::CeBar, a) => format!("rhob_{}", axis(a)),
            (c, a) => {
                let x = axis(c.index() as u8 - 1);
                format!("{}_{x}", ["Phi", "Sig", "Phit", "Sigt"][a as usize])
            }
        }
    }

    pub fn parse(s: &str) -> Option<AnyonCharge> {
        Self::all().into_iter().find(|c| c.ascii_name() == s || c.name() == s)
    }
}

impl fmt::Display for AnyonCharge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

pub fn spectrum() -> Vec<(AnyonCharge, usize)> {
    AnyonCharge::all().into_iter().map(|c| (c, c.dim())).collect()
}

fn trace(m: &ExactMatrix) -> ExactScalar {
    (0..m.rows()).fold(ExactScalar::ZERO, |acc, i| acc + m.get(i, i))
}

/// Modular data computed from the group.
#[derive(Clone, Debug)]
pub struct ModularData {
    pub charges: Vec<AnyonCharge>,
    pub s: ExactMatrix,
    pub t: Vec<ExactScalar>,
}

pub fn s_entry(a: AnyonCharge, b: AnyonCharge, section: Section) -> ExactScalar {
    let ra = a.irrep_rep();
    let rb = b.irrep_rep();
    let mut acc = ExactScalar::ZERO;
    for &ha in a.class.members() {
        for &hb in b.class.members() {
            if multiply(ha, hb) != multiply(hb, ha) {
                continue;
            }
            let ga = a.class.section(ha, section);
            let gb = b.class.section(hb, section);
            let xa = hb.conjugated_by(ga.inverse());
            let xb = ha.conjugated_by(gb.inverse());
            acc += trace(ra.image(xa)).conj() * trace(rb.image(xb)).conj();
        }
    }
    acc * ExactScalar::inv_sqrt2_pow(6)
}

pub fn t_entry(a: AnyonCharge) -> ExactScalar {
    let r = a.irrep_rep();
    let tr = trace(r.image(a.class.representative()));
    if a.irrep_dim() == 2 {
        tr * ExactScalar::inv_sqrt2_pow(2)
    } else {
        tr
    }
}

impl ModularData {
    pub fn compute(section: Section) -> ModularData {
        let charges = AnyonCharge::all();
        let n = charges.len();
        let mut s = ExactMatrix::zeros(n, n);
        for (i, &a) in charges.iter().enumerate() {
            for (j, &b) in charges.iter().enumerate() {
                s.set(i, j, s_entry(a, b, section));
            }
        }
        let t = charges.iter().map(|&a| t_entry(a)).collect();
        ModularData { charges, s, t }
    }

    pub fn is_symmetric(&self) -> bool {
        self.s == transpose(&self.s)
    }

    pub fn is_unitary(&self) -> bool {
        self.s.is_unitary()
    }

    pub fn is_real_rational(&self) -> bool {
        self.s.iter().all(|x| x.to_dyadic().is_some())
    }

    pub fn s_f64(&self, a: usize, b: usize) -> f64 {
        self.s.get(a, b).to_f64_if_real().unwrap_or(f64::NAN)
    }

    /// (ST)³ = λ·S² with λ returned when the relation holds exactly.
    pub fn modular_relation(&self) -> Option<ExactScalar> {
        let st = &self.s * &ExactMatrix::diag(&self.t);
        let st3 = &(&st * &st) * &st;
        let s2 = &self.s * &self.s;
        st3.proportionality(&s2).map(|l| l.unwrap_or(ExactScalar::ZERO))
    }

    /// S² is a permutation matrix (charge conjugation).
    pub fn s_squared_is_permutation(&self) -> bool {
        let s2 = &self.s * &self.s;
        (0..s2.rows()).all(|r| {
            let row = s2.row(r);
            row.iter().filter(|x| **x == ExactScalar::ONE).count() == 1
                && row.iter().filter(|x| !x.is_zero()).count() == 1
        })
    }

    pub fn fusion(&self) -> Result<FusionTable, Error> {
        FusionTable::from_verlinde(self)
    }
}

fn transpose(m: &ExactMatrix) -> ExactMatrix {
    let mut t = ExactMatrix::zeros(m.cols(), m.rows());
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            t.set(c, r, m.get(r, c));
        }
    }
    t
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionTable {
    n: Vec<u8>,
    /// Largest |value − round(value)| seen in the floating Verlinde sum.
    pub max_residual: f64,
}

impl FusionTable {
    pub fn from_verlinde(md: &ModularData) -> Result<FusionTable, Error> {
        let k = md.charges.len();
        let s: Vec<_> = md.s.iter().map(|x| x.to_complex()).collect();
        let at = |i: usize, j: usize| s[i * k + j];
        let mut n = vec![0u8; k * k * k];
        let mut max_residual = 0.0f64;
        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    let v: num_complex::Complex64 =
                        (0..k).map(|d| at(a, d) * at(b, d) * at(c, d).conj() / at(0, d)).sum();
                    let r = v.re.round();
                    let res = (v - r).norm();
                    max_residual = max_residual.max(res);
                    if res >= 1e-9 || r < 0.0 {
                        return Err(Error::Verlinde {
                            a: md.charges[a].name(),
                            b: md.charges[b].name(),
                            c: md.charges[c].name(),
                            value: v.re,
                        });
                    }
                    n[(a * k + b) * k + c] = r as u8;
                }
            }
        }
        Ok(FusionTable { n, max_residual })
    }

    pub fn multiplicity(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge) -> u8 {
        self.n[(a.index() * NUM_CHARGES + b.index()) * NUM_CHARGES + c.index()]
    }

    pub fn channels(&self, a: AnyonCharge, b: AnyonCharge) -> Vec<AnyonCharge> {
        AnyonCharge::all().into_iter().filter(|&c| self.multiplicity(a, b, c) > 0).collect()
    }

    pub fn is_commutative(&self) -> bool {
        let all = AnyonCharge::all();
        all.iter().all(|&a| all.iter().all(|&b| all.iter().all(|&c| self.multiplicity(a, b, c) == self.multiplicity(b, a, c))))
    }

    pub fn vacuum_is_neutral(&self) -> bool {
        let all = AnyonCharge::all();
        all.iter().all(|&a| all.iter().all(|&b| self.multiplicity(AnyonCharge::VACUUM, a, b) == u8::from(a == b)))
    }

    pub fn dimensions_consistent(&self) -> bool {
        let all = AnyonCharge::all();
        all.iter().all(|&a| {
            all.iter().all(|&b| {
                let sum: usize = all.iter().map(|&c| self.multiplicity(a, b, c) as usize * c.dim()).sum();
                sum == a.dim() * b.dim()
            })
        })
    }

    pub fn is_associative(&self) -> bool {
        let all = AnyonCharge::all();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    for &d in &all {
                        let lhs: u32 = all.iter().map(|&e| self.multiplicity(a, b, e) as u32 * self.multiplicity(e, c, d) as u32).sum();
                        let rhs: u32 = all.iter().map(|&f| self.multiplicity(b, c, f) as u32 * self.multiplicity(a, f, d) as u32).sum();
                        if lhs != rhs {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn max_multiplicity(&self) -> u8 {
        self.n.iter().copied().max().unwrap_or(0)
    }

    /// Rows `(a, b, c, N)` for every nonzero multiplicity.
    pub fn rows(&self) -> Vec<(AnyonCharge, AnyonCharge, AnyonCharge, u8)> {
        let all = AnyonCharge::all();
        let mut out = Vec::new();
        for &a in &all {
            for &b in &all {
                for &c in &all {
                    let m = self.multiplicity(a, b, c);
                    if m > 0 {
                        out.push((a, b, c, m));
                    }
                }
            }
        }
        out
    }
}

/// A printed fusion rule written with placeholder axes x, y, z.
#[derive(Clone, Copy, Debug)]
pub struct PrintedRule {
    pub lhs: (&'static str, &'static str),
    pub rhs: &'static [&'static str],
}

macro_rules! rule {
    ($a:literal * $b:literal => $($c:literal),+) => {
        PrintedRule { lhs: ($a, $b), rhs: &[$($c),+] }
    };
}

/// Every printed fusion rule, in ASCII names with `_x`, `_y`, `_z` axes.
/// Two typographic slips are read as intended: a barred Σ in the Σ⊗Σ̃ rule is
/// read as Σ, and a tilded ρ in Φ⊗Φ as ρ̄.
pub const PRINTED_FUSION_RULES: &[PrintedRule] = &[
    rule!("rho_x" * "rho_x" => "1"),
    rule!("rho_x" * "rho_y" => "rho_z"),
    rule!("rho_x" * "Delta" => "Delta"),
    rule!("Delta" * "Delta" => "1", "rho_x", "rho_y", "rho_z"),
    rule!("1b" * "1b" => "1"),
    rule!("Phi_x" * "Phi_x" => "1", "1b", "rho_x", "rhob_x"),
    rule!("Phi_x" * "Phi_y" => "Phi_z", "Phit_z"),
    rule!("1b" * "Phi_x" => "Phi_x"),
    rule!("Phit_x" * "Phit_x" => "1", "1b", "rho_x", "rhob_x"),
    rule!("Phit_x" * "rhob_x" => "Phit_x"),
    rule!("Phit_x" * "rhob_y" => "Phi_x"),
    rule!("rhob_x" * "Deltab" => "Deltab"),
    rule!("Deltab" * "Phit_x" => "Sig_x", "Sigt_x"),
    rule!("Deltab" * "Sig_x" => "Phi_x", "Phit_x"),
    rule!("Sig_x" * "Sig_x" => "1", "rho_x", "rhob_y", "rhob_z"),
    rule!("Sig_x" * "Sigt_x" => "1b", "rhob_x", "rho_y", "rho_z"),
    rule!("Sig_x" * "Sig_y" => "Phi_z", "Phit_z"),
    rule!("rho_x" * "Phi_x" => "Phi_x"),
    rule!("rho_x" * "Phi_y" => "Phit_y"),
    rule!("Delta" * "Phi_x" => "Sig_x", "Sigt_x"),
    rule!("Phit_x" * "1b" => "Phit_x"),
    rule!("1b" * "Sig_x" => "Sigt_x"),
    rule!("1b" * "Sigt_x" => "Sig_x"),
    rule!("rho_x" * "Sig_x" => "Sig_x"),
    rule!("rho_y" * "Sig_x" => "Sigt_x"),
    rule!("rhob_x" * "Sig_x" => "Sigt_x"),
    rule!("Delta" * "Sig_x" => "Phi_x", "Phit_x"),
    rule!("Delta" * "Sigt_x" => "Phi_x", "Phit_x"),
    rule!("Delta" * "1b" => "Deltab"),
    rule!("Phi_x" * "Sig_x" => "Delta", "Deltab"),
    rule!("Phi_x" * "Sig_y" => "Phi_z", "Phit_z"),
    rule!("Phi_x" * "Phi_x" => "1", "1b", "rho_x", "rhob_x"),
    rule!("Phi_x" * "Phi_y" => "Phi_z", "Phit_z"),
    rule!("Sig_x" * "Sig_x" => "1", "rho_x", "rhob_y", "rhob_z"),
    rule!("Sig_x" * "Sig_y" => "Sig_z", "Sigt_z"),
];

#[derive(Clone, Debug, Serialize)]
pub struct RuleCheck {
    pub rule: String,
    pub axes: String,
    pub printed: Vec<String>,
    pub computed: Vec<String>,
    pub ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct FusionReport {
    pub checked: usize,
    pub failures: Vec<RuleCheck>,
}

impl FusionReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

fn substitute(name: &str, axes: [&str; 3]) -> String {
    name.replace("_x", &format!("_{}", axes[0])).replace("_y", &format!("_{}", axes[1])).replace("_z", &format!("_{}", axes[2]))
}

const AXIS_PERMUTATIONS: [[&str; 3]; 6] =
    [["i", "j", "k"], ["i", "k", "j"], ["j", "i", "k"], ["j", "k", "i"], ["k", "i", "j"], ["k", "j", "i"]];

/// Check each printed rule for every assignment of distinct axes; one entry
/// per (rule, axes) instance that disagrees.
pub fn validate_fusion_table(table: &FusionTable) -> FusionReport {
    let mut failures = Vec::new();
    let mut checked = 0;
    for rule in PRINTED_FUSION_RULES {
        for axes in AXIS_PERMUTATIONS {
            let a = AnyonCharge::parse(&substitute(rule.lhs.0, axes)).expect("rule names parse");
            let b = AnyonCharge::parse(&substitute(rule.lhs.1, axes)).expect("rule names parse");
            let mut printed: Vec<AnyonCharge> =
                rule.rhs.iter().map(|c| AnyonCharge::parse(&substitute(c, axes)).expect("rule names parse")).collect();
            printed.sort();
            let computed = table.channels(a, b);
            checked += 1;
            if printed != computed {
                failures.push(RuleCheck {
                    rule: format!("{} ⊗ {} = {}", rule.lhs.0, rule.lhs.1, rule.rhs.join(" ⊕ ")),
                    axes: axes.join(""),
                    printed: printed.iter().map(|c| c.name()).collect(),
                    computed: computed.iter().map(|c| c.name()).collect(),
                    ok: false,
                });
            }
        }
    }
    FusionReport { checked, failures }
}

/// Printed S-matrix table, as a function of the two labels.
///
/// Rows and columns come in families; entries that depend on axes use
/// ε_xy = 2δ_xy − 1 and δ_xy.
pub fn printed_s_entry(a: AnyonCharge, b: AnyonCharge) -> (i64, u32) {
    #[derive(Clone, Copy)]
    enum P {
        C(i64, u32),
        Eps(i64, u32),
        Delta(i64, u32),
    }
    use P::*;
    let fam = |c: AnyonCharge| -> (usize, Option<u8>) {
        match (c.class, c.irrep) {
            (ClassLabel::Ce, 0) => (0, None),
            (ClassLabel::CeBar, 0) => (1, None),
            (ClassLabel::Ce, 4) => (4, None),
            (ClassLabel::CeBar, 4) => (5, None),
            (ClassLabel::Ce, a) => (2, Some(a)),
            (ClassLabel::CeBar, a) => (3, Some(a)),
            (cl, a) => (6 + [0, 2, 1, 3][a as usize], Some(cl.index() as u8 - 1)),
        }
    };
    // rows and columns in printed order: 𝟙 𝟙̄ ρ ρ̄ Δ Δ̄ Φ Φ̃ Σ Σ̃
    const O: P = C(1, 3);
    const Q: P = C(1, 2);
    const MQ: P = C(-1, 2);
    const H: P = C(1, 1);
    const MH: P = C(-1, 1);
    const Z: P = C(0, 0);
    const E: P = Eps(1, 2);
    const ME: P = Eps(-1, 2);
    let table: [[P; 10]; 10] = [
        [O, O, O, O, O, Q, Q, Q, Q, Q],
        [O, O, O, O, MQ, MQ, Q, Q, MQ, MQ],
        [O, O, O, O, Q, Q, E, E, E, E],
        [O, O, O, O, MQ, MQ, ME, ME, E, E],
        [Q, MQ, Q, MQ, H, MH, Z, Z, Z, Z],
        [Q, MQ, Q, MQ, MH, H, Z, Z, Z, Z],
        [Q, Q, E, ME, Z, Z, Delta(1, 1), Delta(-1, 1), Z, Z],
        [Q, Q, E, ME, Z, Z, Delta(-1, 2), Delta(1, 2), Z, Z],
        [Q, MQ, E, E, Z, Z, Z, Z, Delta(1, 2), Delta(-1, 2)],
        [Q, MQ, E, E, Z, Z, Z, Z, Delta(-1, 2), Delta(1, 2)],
    ];
    let (fa, xa) = fam(a);
    let (fb, xb) = fam(b);
    let same = xa == xb;
    match table[fa][fb] {
        C(n, p) => (n, p),
        Eps(n, p) => (if same { n } else { -n }, p),
        Delta(n, p) => (if same { n } else { 0 }, p),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SDiscrepancy {
    pub row: String,
    pub col: String,
    pub printed: String,
    pub computed: String,
    pub in_phi_block: bool,
}

fn dyadic_string((n, p): (i64, u32)) -> String {
    if n == 0 {
        "0".into()
    } else if p == 0 {
        n.to_string()
    } else {
        format!("{n}/{}", 1u64 << p)
    }
}

fn normalize((mut n, mut p): (i64, u32)) -> (i64, u32) {
    if n == 0 {
        return (0, 0);
    }
    while p > 0 && n % 2 == 0 {
        n /= 2;
        p -= 1;
    }
    (n, p)
}

/// Every entry where the printed table differs from the computed S.
pub fn s_discrepancies(md: &ModularData) -> Vec<SDiscrepancy> {
    let is_phi = |c: AnyonCharge| !c.class.is_central() && (c.irrep == 0 || c.irrep == 2);
    let mut out = Vec::new();
    for &a in &md.charges {
        for &b in &md.charges {
            let computed = md.s.get(a.index(), b.index()).to_dyadic().map(normalize);
            let printed = normalize(printed_s_entry(a, b));
            if computed != Some(printed) {
                out.push(SDiscrepancy {
                    row: a.name(),
                    col: b.name(),
                    printed: dyadic_string(printed),
                    computed: computed.map_or_else(|| md.s.get(a.index(), b.index()).to_string(), dyadic_string),
                    in_phi_block: is_phi(a) && is_phi(b),
                });
            }
        }
    }
    out
}
