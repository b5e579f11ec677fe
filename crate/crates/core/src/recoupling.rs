//! Representations of 𝒟(Q₈), Clebsch–Gordan maps, F- and R-symbols.
//!
//! Charge `(C, Γ)` acts on the basis `|m, v⟩` (m a class member, v an irrep
//! vector index) by
//! `P_h g |m, v⟩ = δ_{h, gmg⁻¹} |gmg⁻¹, Γ(s(gmg⁻¹)⁻¹ g s(m)) v⟩`
//! with `s` the class section. Tensor products use
//! `Δ(P_h g) = Σ_{h'h''=h} P_{h'} g ⊗ P_{h''} g` and the braiding is
//! `swap ∘ Σ_g (P_g ⊗ g)`.
//!
//! Clebsch–Gordan columns come from the projector units
//! `P^k_{ab} = (d_k/8) Σ_{h,g} conj(Γ^k_{ab}(P_h g)) Δ(P_h g) = C_a C_b†`.
//! The anchor is the first (pair, a) whose diagonal exceeds 1e-9, and
//! `C_m = conj(P^k_{a m}[s, ·]) / sqrt(P^k_{a a}[s, s])`.

use std::collections::HashMap;

use nalgebra::DMatrix;
use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::double::{AnyonCharge, FusionTable, ModularData, NUM_CHARGES};
use crate::group::{multiply, Element, Section, ELEMENTS};
use crate::Error;

pub type CMatrix = DMatrix<Complex64>;

const ANCHOR_EPS: f64 = 1e-9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// The basis element `P_h g` of the double.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub struct DoubleElement {
    pub h: Element,
    pub g: Element,
}

impl DoubleElement {
    pub fn all() -> impl Iterator<Item = DoubleElement> {
        ELEMENTS.into_iter().flat_map(|h| ELEMENTS.into_iter().map(move |g| DoubleElement { h, g }))
    }

    /// `(P_h g)(P_h' g') = δ_{h, g h' g⁻¹} P_h (g g')`, `None` for zero.
    pub fn compose(self, other: DoubleElement) -> Option<DoubleElement> {
        (self.h == other.h.conjugated_by(self.g)).then(|| DoubleElement { h: self.h, g: multiply(self.g, other.g) })
    }

    fn index(self) -> usize {
        self.h.index() * 8 + self.g.index()
    }
}

/// A charge's representation with all 64 action matrices tabulated.
#[derive(Clone, Debug)]
pub struct ChargeRep {
    pub charge: AnyonCharge,
    /// `(class member, irrep vector index)` per basis vector.
    pub basis: Vec<(Element, usize)>,
    action: Vec<CMatrix>,
}

impl ChargeRep {
    pub fn new(charge: AnyonCharge, section: Section) -> ChargeRep {
        let irrep = charge.irrep_rep();
        let di = charge.irrep_dim();
        let members = charge.class.members();
        let basis: Vec<(Element, usize)> = members.iter().flat_map(|&m| (0..di).map(move |v| (m, v))).collect();
        let d = basis.len();
        let mut action = vec![CMatrix::zeros(d, d); 64];
        for x in DoubleElement::all() {
            let m_out = &mut action[x.index()];
            for (mi, &m) in members.iter().enumerate() {
                let m2 = m.conjugated_by(x.g);
                if m2 != x.h {
                    continue;
                }
                let mj = members.iter().position(|&y| y == m2).expect("conjugation stays in class");
                let n = multiply(multiply(charge.class.section(m2, section).inverse(), x.g), charge.class.section(m, section));
                let img = irrep.image(n);
                for v in 0..di {
                    for w in 0..di {
                        m_out[(mj * di + w, mi * di + v)] = img.get(w, v).to_complex();
                    }
                }
            }
        }
        ChargeRep { charge, basis, action }
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn action(&self, x: DoubleElement) -> &CMatrix {
        &self.action[x.index()]
    }
}

pub fn rep_action(j: AnyonCharge, x: DoubleElement) -> CMatrix {
    ChargeRep::new(j, Section::First).action(x).clone()
}

/// `Δ(x)` on `V_a ⊗ V_b`.
pub fn coproduct_action(a: &ChargeRep, b: &ChargeRep, x: DoubleElement) -> CMatrix {
    let mut out = CMatrix::zeros(a.dim() * b.dim(), a.dim() * b.dim());
    for h1 in ELEMENTS {
        let h2 = multiply(h1.inverse(), x.h);
        out += a.action(DoubleElement { h: h1, g: x.g }).kronecker(b.action(DoubleElement { h: h2, g: x.g }));
    }
    out
}

/// Braiding `V_a ⊗ V_b → V_b ⊗ V_a`.
pub fn braiding(a: &ChargeRep, b: &ChargeRep) -> CMatrix {
    let (da, db) = (a.dim(), b.dim());
    let mut r = CMatrix::zeros(da * db, da * db);
    for g in ELEMENTS {
        let mut bg = CMatrix::zeros(db, db);
        for h in ELEMENTS {
            bg += b.action(DoubleElement { h, g });
        }
        r += a.action(DoubleElement { h: g, g: Element::E }).kronecker(&bg);
    }
    swap(da, db) * r
}

/// Permutation `V_a ⊗ V_b → V_b ⊗ V_a`.
pub fn swap(da: usize, db: usize) -> CMatrix {
    let mut p = CMatrix::zeros(da * db, da * db);
    for i in 0..da {
        for j in 0..db {
            p[(j * da + i, i * db + j)] = c(1.0);
        }
    }
    p
}

/// Diagonal projector units `⟨s| P^k_{aa} |s⟩` for every pair index s and a.
fn projector_units(a: &ChargeRep, b: &ChargeRep, k: &ChargeRep) -> Vec<Vec<CMatrix>> {
    let dk = k.dim();
    let deltas: Vec<CMatrix> = DoubleElement::all().map(|x| coproduct_action(a, b, x)).collect();
    let n = a.dim() * b.dim();
    let mut units = vec![vec![CMatrix::zeros(n, n); dk]; dk];
    for x in DoubleElement::all() {
        let gk = k.action(x);
        let dx = &deltas[x.index()];
        for p in 0..dk {
            for q in 0..dk {
                let w = gk[(p, q)];
                if w != Complex64::new(0.0, 0.0) {
                    units[p][q] += dx * w.conj();
                }
            }
        }
    }
    let scale = c(dk as f64 / 8.0);
    for row in &mut units {
        for u in row.iter_mut() {
            *u *= scale;
        }
    }
    units
}

/// `|C^{ab}_k[(m_a, m_b), m_k]|`, the square root of the projector diagonal.
pub fn cg_diagonal(a: &ChargeRep, b: &ChargeRep, k: &ChargeRep, s: usize, mk: usize) -> Result<f64, Error> {
    let units = projector_units(a, b, k);
    let v = units[mk][mk][(s, s)].re;
    if v < -ANCHOR_EPS {
        return Err(Error::NegativeRadicand(v));
    }
    Ok(v.max(0.0).sqrt())
}

/// Clebsch–Gordan isometry `V_k → V_a ⊗ V_b`, or `None` if k is not in a ⊗ b.
pub fn cg_full(a: &ChargeRep, b: &ChargeRep, k: &ChargeRep) -> Result<Option<CMatrix>, Error> {
    let units = projector_units(a, b, k);
    let n = a.dim() * b.dim();
    let dk = k.dim();
    let mut anchor = None;
    'outer: for s in 0..n {
        for (m, row) in units.iter().enumerate() {
            let v = row[m][(s, s)].re;
            if v < -ANCHOR_EPS {
                return Err(Error::NegativeRadicand(v));
            }
            if v > ANCHOR_EPS {
                anchor = Some((s, m, v));
                break 'outer;
            }
        }
    }
    let Some((s, a0, diag)) = anchor else { return Ok(None) };
    let norm = diag.sqrt();
    let mut out = CMatrix::zeros(n, dk);
    for m in 0..dk {
        for t in 0..n {
            out[(t, m)] = units[a0][m][(s, t)].conj() / norm;
        }
    }
    Ok(Some(out))
}

/// Fusion-tree data for the whole model at one section choice.
pub struct Recoupler {
    pub section: Section,
    pub fusion: FusionTable,
    reps: Vec<ChargeRep>,
    cg: HashMap<(usize, usize, usize), CMatrix>,
    braid: HashMap<(usize, usize), CMatrix>,
}

/// Basis change between `((ab)_l c)_q` and `(a(bc)_p)_q`; `m[(p, l)]`.
#[derive(Clone, Debug)]
pub struct FMatrix {
    pub left: Vec<AnyonCharge>,
    pub right: Vec<AnyonCharge>,
    pub m: CMatrix,
}

impl FMatrix {
    pub fn entry(&self, p: AnyonCharge, l: AnyonCharge) -> Option<Complex64> {
        let i = self.right.iter().position(|&x| x == p)?;
        let j = self.left.iter().position(|&x| x == l)?;
        Some(self.m[(i, j)])
    }
}

impl Recoupler {
    pub fn new(section: Section) -> Result<Recoupler, Error> {
        let fusion = ModularData::compute(section).fusion()?;
        let all = AnyonCharge::all();
        let reps: Vec<ChargeRep> = all.iter().map(|&a| ChargeRep::new(a, section)).collect();
        let triples: Vec<(usize, usize, usize)> = (0..NUM_CHARGES)
            .flat_map(|a| (0..NUM_CHARGES).flat_map(move |b| (0..NUM_CHARGES).map(move |k| (a, b, k))))
            .filter(|&(a, b, k)| fusion.multiplicity(all[a], all[b], all[k]) > 0)
            .collect();
        let cg = triples
            .par_iter()
            .map(|&(a, b, k)| {
                let m = cg_full(&reps[a], &reps[b], &reps[k])?
                    .ok_or_else(|| Error::NotAdmissible(all[a].name(), all[b].name(), all[k].name()))?;
                Ok(((a, b, k), m))
            })
            .collect::<Result<HashMap<_, _>, Error>>()?;
        let braid = (0..NUM_CHARGES)
            .flat_map(|a| (0..NUM_CHARGES).map(move |b| (a, b)))
            .map(|(a, b)| ((a, b), braiding(&reps[a], &reps[b])))
            .collect();
        Ok(Recoupler { section, fusion, reps, cg, braid })
    }

    pub fn rep(&self, a: AnyonCharge) -> &ChargeRep {
        &self.reps[a.index()]
    }

    pub fn cg(&self, a: AnyonCharge, b: AnyonCharge, k: AnyonCharge) -> Option<&CMatrix> {
        self.cg.get(&(a.index(), b.index(), k.index()))
    }

    pub fn braiding(&self, a: AnyonCharge, b: AnyonCharge) -> &CMatrix {
        &self.braid[&(a.index(), b.index())]
    }

    pub fn admissible_triples(&self) -> Vec<(AnyonCharge, AnyonCharge, AnyonCharge)> {
        let mut v: Vec<_> = self
            .cg
            .keys()
            .map(|&(a, b, k)| (AnyonCharge::from_index(a), AnyonCharge::from_index(b), AnyonCharge::from_index(k)))
            .collect();
        v.sort();
        v
    }

    /// `‖C†C − I‖` and `max_x ‖Δ(x)C − Cρ_k(x)‖` for one triple.
    pub fn cg_residuals(&self, a: AnyonCharge, b: AnyonCharge, k: AnyonCharge) -> Option<(f64, f64)> {
        let cg = self.cg(a, b, k)?;
        let iso = (cg.adjoint() * cg - CMatrix::identity(cg.ncols(), cg.ncols())).norm();
        let (ra, rb, rk) = (self.rep(a), self.rep(b), self.rep(k));
        let inter = DoubleElement::all()
            .map(|x| (coproduct_action(ra, rb, x) * cg - cg * rk.action(x)).norm())
            .fold(0.0, f64::max);
        Some((iso, inter))
    }

    /// `R^{ab}_k`, the scalar of `ℛ_{ab} C^{ab}_k = R · C^{ba}_k`.
    pub fn r_symbol(&self, a: AnyonCharge, b: AnyonCharge, k: AnyonCharge) -> Option<Complex64> {
        let cab = self.cg(a, b, k)?;
        let cba = self.cg(b, a, k)?;
        let v = self.braiding(a, b) * cab.column(0);
        Some(cba.column(0).dotc(&v))
    }

    /// Gauge-invariant `R^{ab}_k R^{ba}_k`.
    pub fn monodromy(&self, a: AnyonCharge, b: AnyonCharge, k: AnyonCharge) -> Option<Complex64> {
        Some(self.r_symbol(a, b, k)? * self.r_symbol(b, a, k)?)
    }

    /// `r_matrix(a, b)`: the braiding expressed in the fusion channels of a ⊗ b,
    /// i.e. diag over k of `R^{ab}_k`.
    pub fn r_matrix(&self, a: AnyonCharge, b: AnyonCharge) -> (Vec<AnyonCharge>, CMatrix) {
        let ch = self.fusion.channels(a, b);
        let d: Vec<Complex64> = ch.iter().map(|&k| self.r_symbol(a, b, k).expect("channel")).collect();
        (ch, CMatrix::from_diagonal(&nalgebra::DVector::from_vec(d)))
    }

    fn left_tree(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge, l: AnyonCharge, q: AnyonCharge, mq: usize) -> nalgebra::DVector<Complex64> {
        let cab = self.cg(a, b, l).expect("admissible");
        let clc = self.cg(l, c, q).expect("admissible");
        let dc = self.rep(c).dim();
        cab.kronecker(&CMatrix::identity(dc, dc)) * clc.column(mq)
    }

    fn right_tree(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge, p: AnyonCharge, q: AnyonCharge, mq: usize) -> nalgebra::DVector<Complex64> {
        let cbc = self.cg(b, c, p).expect("admissible");
        let cap = self.cg(a, p, q).expect("admissible");
        let da = self.rep(a).dim();
        CMatrix::identity(da, da).kronecker(cbc) * cap.column(mq)
    }

    pub fn left_channels(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge, q: AnyonCharge) -> Vec<AnyonCharge> {
        self.fusion.channels(a, b).into_iter().filter(|&l| self.fusion.multiplicity(l, c, q) > 0).collect()
    }

    pub fn right_channels(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge, q: AnyonCharge) -> Vec<AnyonCharge> {
        self.fusion.channels(b, c).into_iter().filter(|&p| self.fusion.multiplicity(a, p, q) > 0).collect()
    }

    /// `F^{abc}_q` evaluated with the total-charge moment `mq`.
    pub fn f_matrix_at(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge, q: AnyonCharge, mq: usize) -> FMatrix {
        let left = self.left_channels(a, b, c, q);
        let right = self.right_channels(a, b, c, q);
        let lv: Vec<_> = left.iter().map(|&l| self.left_tree(a, b, c, l, q, mq)).collect();
        let rv: Vec<_> = right.iter().map(|&p| self.right_tree(a, b, c, p, q, mq)).collect();
        let m = CMatrix::from_fn(right.len(), left.len(), |i, j| rv[i].dotc(&lv[j]));
        FMatrix { left, right, m }
    }

    pub fn f_matrix(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge, q: AnyonCharge) -> FMatrix {
        self.f_matrix_at(a, b, c, q, 0)
    }

    /// `[F^{abc}_q]_{l}^{p}`
    pub fn f_symbol(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge, q: AnyonCharge, l: AnyonCharge, p: AnyonCharge) -> Option<Complex64> {
        self.f_matrix(a, b, c, q).entry(p, l)
    }
}

/// Charges entering the qubit encodings; the scans below range over them.
pub fn qubit_relevant_charges() -> Vec<AnyonCharge> {
    AnyonCharge::all()
}

const N: usize = NUM_CHARGES;

/// Dense table of every F-matrix, with fusion channels cached by index.
pub struct FTable {
    f: Vec<Option<FMatrix>>,
    chans: Vec<Vec<usize>>,
    mult: Vec<bool>,
}

impl FTable {
    pub fn build(rc: &Recoupler) -> FTable {
        let all = AnyonCharge::all();
        let f = (0..N * N * N * N)
            .into_par_iter()
            .map(|i| {
                let (a, b, c, q) = (i / (N * N * N), i / (N * N) % N, i / N % N, i % N);
                let fm = rc.f_matrix(all[a], all[b], all[c], all[q]);
                (!fm.left.is_empty()).then_some(fm)
            })
            .collect();
        let chans = (0..N * N).map(|i| rc.fusion.channels(all[i / N], all[i % N]).iter().map(|x| x.index()).collect()).collect();
        let mult = (0..N * N * N).map(|i| rc.fusion.multiplicity(all[i / (N * N)], all[i / N % N], all[i % N]) > 0).collect();
        FTable { f, chans, mult }
    }

    pub fn get(&self, a: AnyonCharge, b: AnyonCharge, c: AnyonCharge, q: AnyonCharge) -> Option<&FMatrix> {
        self.f[((a.index() * N + b.index()) * N + c.index()) * N + q.index()].as_ref()
    }

    fn entry(&self, a: usize, b: usize, c: usize, q: usize, p: usize, l: usize) -> Complex64 {
        let Some(fm) = &self.f[((a * N + b) * N + c) * N + q] else { return Complex64::new(0.0, 0.0) };
        let i = fm.right.iter().position(|x| x.index() == p);
        let j = fm.left.iter().position(|x| x.index() == l);
        match (i, j) {
            (Some(i), Some(j)) => fm.m[(i, j)],
            _ => Complex64::new(0.0, 0.0),
        }
    }

    fn fuses(&self, a: usize, b: usize, c: usize) -> bool {
        self.mult[(a * N + b) * N + c]
    }

    fn channels(&self, a: usize, b: usize) -> &[usize] {
        &self.chans[a * N + b]
    }

    pub fn len(&self) -> usize {
        self.f.iter().filter(|x| x.is_some()).count()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn max_unitarity_residual(&self) -> f64 {
        self.f
            .iter()
            .flatten()
            .map(|f| {
                if f.m.nrows() != f.m.ncols() {
                    return f64::INFINITY;
                }
                (f.m.adjoint() * &f.m - CMatrix::identity(f.m.ncols(), f.m.ncols())).norm()
            })
            .fold(0.0, f64::max)
    }
}

/// Largest pentagon residual and equation count over every external
/// quadruple drawn from `labels`:
/// `F^{fcd}_e[l,g] F^{abl}_e[k,f] = Σ_h F^{abc}_g[h,f] F^{ahd}_e[k,g] F^{bcd}_k[l,h]`.
pub fn pentagon_scan(ft: &FTable, labels: &[AnyonCharge]) -> (f64, usize) {
    let ix: Vec<usize> = labels.iter().map(|x| x.index()).collect();
    let mut quads = Vec::new();
    for &a in &ix {
        for &b in &ix {
            for &c in &ix {
                for &d in &ix {
                    quads.push((a, b, c, d));
                }
            }
        }
    }
    quads
        .par_iter()
        .map(|&(a, b, c, d)| {
            let mut worst = 0.0f64;
            let mut count = 0usize;
            for &f in ft.channels(a, b) {
                for &g in ft.channels(f, c) {
                    for &e in ft.channels(g, d) {
                        for &l in ft.channels(c, d) {
                            if !ft.fuses(f, l, e) {
                                continue;
                            }
                            for &k in ft.channels(b, l) {
                                if !ft.fuses(a, k, e) {
                                    continue;
                                }
                                let lhs = ft.entry(f, c, d, e, l, g) * ft.entry(a, b, l, e, k, f);
                                let mut rhs = Complex64::new(0.0, 0.0);
                                for &h in ft.channels(b, c) {
                                    if ft.fuses(a, h, g) && ft.fuses(h, d, k) {
                                        rhs += ft.entry(a, b, c, g, h, f) * ft.entry(a, h, d, e, k, g) * ft.entry(b, c, d, k, l, h);
                                    }
                                }
                                worst = worst.max((lhs - rhs).norm());
                                count += 1;
                            }
                        }
                    }
                }
            }
            (worst, count)
        })
        .reduce(|| (0.0, 0), |x, y| (x.0.max(y.0), x.1 + y.1))
}

/// Largest residual and equation count of both hexagon identities over every
/// triple drawn from `labels`, with the R-symbols of the computed gauge.
pub fn hexagon_scan(rc: &Recoupler, ft: &FTable, labels: &[AnyonCharge]) -> (f64, usize) {
    let zero = Complex64::new(0.0, 0.0);
    let all = AnyonCharge::all();
    let rsym: Vec<Complex64> = (0..N * N * N)
        .map(|i| rc.r_symbol(all[i / (N * N)], all[i / N % N], all[i % N]).unwrap_or(zero))
        .collect();
    let r = |x: usize, y: usize, k: usize| rsym[(x * N + y) * N + k];
    let ix: Vec<usize> = labels.iter().map(|x| x.index()).collect();
    let mut triples = Vec::new();
    for &a in &ix {
        for &b in &ix {
            for &c in &ix {
                triples.push((a, b, c));
            }
        }
    }
    triples
        .par_iter()
        .map(|&(a, b, c)| {
            let mut worst = 0.0f64;
            let mut count = 0usize;
            for q in 0..N {
                let (a_, b_, c_, q_) = (all[a], all[b], all[c], all[q]);
                let Some(fabc) = ft.get(a_, b_, c_, q_) else { continue };
                let left: Vec<usize> = fabc.left.iter().map(|x| x.index()).collect();
                let right: Vec<usize> = fabc.right.iter().map(|x| x.index()).collect();
                // a moves right past (bc)
                for &lp in &right {
                    for &p in &right {
                        let mut s = zero;
                        for &l in &left {
                            for &pp in ft.channels(a, c) {
                                s += ft.entry(b, c, a, q, pp, lp).conj()
                                    * r(a, c, pp)
                                    * ft.entry(b, a, c, q, pp, l)
                                    * r(a, b, l)
                                    * ft.entry(a, b, c, q, p, l).conj();
                            }
                        }
                        let expect = if lp == p { r(a, p, q) } else { zero };
                        worst = worst.max((s - expect).norm());
                        count += 1;
                    }
                }
                // c moves left past (ab)
                for &l in &left {
                    for &ppp in &left {
                        let mut s = zero;
                        for &p in &right {
                            for &lp in ft.channels(a, c) {
                                s += ft.entry(a, b, c, q, p, l)
                                    * r(b, c, p)
                                    * ft.entry(a, c, b, q, p, lp).conj()
                                    * r(a, c, lp)
                                    * ft.entry(c, a, b, q, ppp, lp);
                            }
                        }
                        let expect = if ppp == l { r(l, c, q) } else { zero };
                        worst = worst.max((s - expect).norm());
                        count += 1;
                    }
                }
            }
            (worst, count)
        })
        .reduce(|| (0.0, 0), |x, y| (x.0.max(y.0), x.1 + y.1))
}

/// Anyon pairing of a single-qubit encoding.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize)]
pub enum Pairing {
    PhiPhi,
    SigmaSigma,
    SigmaPhi,
}

impl Pairing {
    pub const ALL: [Pairing; 3] = [Pairing::PhiPhi, Pairing::SigmaSigma, Pairing::SigmaPhi];

    pub fn name(self) -> &'static str {
        match self {
            Pairing::PhiPhi => "ΦΦ",
            Pairing::SigmaSigma => "ΣΣ",
            Pairing::SigmaPhi => "ΣΦ",
        }
    }

    pub fn parse(s: &str) -> Option<Pairing> {
        match s {
            "ΦΦ" | "PhiPhi" | "PP" | "phiphi" => Some(Pairing::PhiPhi),
            "ΣΣ" | "SigmaSigma" | "SS" | "sigmasigma" => Some(Pairing::SigmaSigma),
            "ΣΦ" | "SigmaPhi" | "SP" | "sigmaphi" => Some(Pairing::SigmaPhi),
            _ => None,
        }
    }

    /// `(X_i, Y_j)`
    pub fn charges(self) -> (AnyonCharge, AnyonCharge) {
        let p = |s: &str| AnyonCharge::parse(s).expect("known label");
        match self {
            Pairing::PhiPhi => (p("Phi_i"), p("Phi_j")),
            Pairing::SigmaSigma => (p("Sig_i"), p("Sig_j")),
            Pairing::SigmaPhi => (p("Sig_i"), p("Phi_j")),
        }
    }
}

/// Derived single-qubit generators on the tree `((X_i Y_j)_l Δ)_q`.
#[derive(Clone, Debug)]
pub struct DerivedSigmas {
    pub pairing: Pairing,
    pub total: AnyonCharge,
    pub left: Vec<AnyonCharge>,
    pub right: Vec<AnyonCharge>,
    pub f: CMatrix,
    /// Monodromies `R^{ab}R^{ba}` of the left and right channels.
    pub left_monodromy: Vec<Complex64>,
    pub right_monodromy: Vec<Complex64>,
}

impl DerivedSigmas {
    /// σ₁ and σ₂ with exchange eigenvalues `signs[i]·sqrt(monodromy)`; the
    /// signs are the residual gauge freedom of distinguishable exchanges.
    pub fn sigmas(&self, signs: [f64; 4]) -> (CMatrix, CMatrix) {
        let rl: Vec<Complex64> = self.left_monodromy.iter().zip(&signs[..2]).map(|(m, s)| m.sqrt() * *s).collect();
        let rp: Vec<Complex64> = self.right_monodromy.iter().zip(&signs[2..]).map(|(m, s)| m.sqrt() * *s).collect();
        let s1 = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(rl));
        let dp = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(rp));
        let s2 = self.f.adjoint() * dp * &self.f;
        (s1, s2)
    }

    pub fn principal(&self) -> (CMatrix, CMatrix) {
        self.sigmas([1.0; 4])
    }
}

pub fn derive_sigmas(rc: &Recoupler, pairing: Pairing) -> DerivedSigmas {
    let (a, b) = pairing.charges();
    let c = AnyonCharge::parse("Delta").expect("known label");
    let total = AnyonCharge::all()
        .into_iter()
        .find(|&q| rc.left_channels(a, b, c, q).len() == 2)
        .expect("a two-dimensional fusion space exists");
    let fm = rc.f_matrix(a, b, c, total);
    let left_monodromy = fm.left.iter().map(|&l| rc.monodromy(a, b, l).expect("channel")).collect();
    let right_monodromy = fm.right.iter().map(|&p| rc.monodromy(b, c, p).expect("channel")).collect();
    DerivedSigmas { pairing, total, left: fm.left, right: fm.right, f: fm.m, left_monodromy, right_monodromy }
}

/// Outcome of matching printed generators to derived ones.
#[derive(Clone, Debug, Serialize)]
pub struct GaugeMatch {
    pub residual: f64,
    pub signs: [f64; 4],
    pub phase1: f64,
    pub phase2: f64,
    pub gauge: f64,
}

/// Best fit of `u P u† = e^{iθ} D` for both generators over all sign branches.
/// The phase of σ₂ is read off its largest diagonal entry; the gauge `u` is
/// then solved from the off-diagonal.
pub fn gauge_match(derived: &DerivedSigmas, printed: (&CMatrix, &CMatrix)) -> GaugeMatch {
    let mut best: Option<GaugeMatch> = None;
    for bits in 0..16u32 {
        let signs = [0, 1, 2, 3].map(|i| if bits >> i & 1 == 1 { -1.0 } else { 1.0 });
        let (d1, d2) = derived.sigmas(signs);
        let (r1, ph1) = fit_phase(&d1, printed.0);
        let p2 = printed.1;
        let i = if d2[(0, 0)].norm() >= d2[(1, 1)].norm() { 0 } else { 1 };
        let (r2, ph2, u) = if d2[(i, i)].norm() < 1e-12 || p2[(i, i)].norm() < 1e-12 {
            (f64::INFINITY, 0.0, 0.0)
        } else {
            let ph = (p2[(i, i)] / d2[(i, i)]).arg();
            let e = Complex64::from_polar(1.0, ph);
            // u = diag(1, w): P[1,0] w = e D[1,0]
            let w = if p2[(1, 0)].norm() > 1e-12 { e * d2[(1, 0)] / p2[(1, 0)] } else { Complex64::new(1.0, 0.0) };
            let w = w / w.norm().max(1e-300);
            let u = CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![Complex64::new(1.0, 0.0), w]));
            let lhs = &u * p2 * u.adjoint();
            ((lhs - d2 * e).norm(), ph, w.arg())
        };
        let cand = GaugeMatch { residual: r1.max(r2), signs, phase1: ph1, phase2: ph2, gauge: u };
        if best.as_ref().is_none_or(|b| cand.residual < b.residual - 1e-12) {
            best = Some(cand);
        }
    }
    best.expect("sixteen branches")
}

fn fit_phase(derived: &CMatrix, printed: &CMatrix) -> (f64, f64) {
    let (mut idx, mut mag) = ((0, 0), 0.0);
    for r in 0..derived.nrows() {
        for c in 0..derived.ncols() {
            if derived[(r, c)].norm() > mag {
                mag = derived[(r, c)].norm();
                idx = (r, c);
            }
        }
    }
    if printed[idx].norm() < 1e-12 {
        return (f64::INFINITY, 0.0);
    }
    let ph = (printed[idx] / derived[idx]).arg();
    (((derived * Complex64::from_polar(1.0, ph)) - printed).norm(), ph)
}

/// `σ₁σ₂σ₁ − σ₂σ₁σ₂` in Frobenius norm.
pub fn braid_residual(s1: &CMatrix, s2: &CMatrix) -> f64 {
    (s1 * s2 * s1 - s2 * s1 * s2).norm()
}

/// Sorted eigenvalue phases of a 2×2 unitary, relative to the first.
pub fn relative_spectrum(m: &CMatrix) -> Vec<f64> {
    let tr = m.trace();
    let det = m[(0, 0)] * m[(1, 1)] - m[(0, 1)] * m[(1, 0)];
    let disc = (tr * tr - det * 4.0).sqrt();
    let e1 = (tr + disc) / 2.0;
    let e2 = (tr - disc) / 2.0;
    let mut ph = [e1.arg(), e2.arg()];
    ph.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let d = (ph[1] - ph[0]).rem_euclid(std::f64::consts::TAU);
    vec![d.min(std::f64::consts::TAU - d)]
}
