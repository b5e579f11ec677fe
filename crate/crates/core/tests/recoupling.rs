use std::sync::OnceLock;

use num_complex::Complex64;
use qdouble_core::braid::sigma_1q;
use qdouble_core::double::{AnyonCharge, ModularData};
use qdouble_core::group::Section;
use qdouble_core::recoupling::*;

fn rc() -> &'static Recoupler {
    static RC: OnceLock<Recoupler> = OnceLock::new();
    RC.get_or_init(|| Recoupler::new(Section::First).unwrap())
}

fn ft() -> &'static FTable {
    static FT: OnceLock<FTable> = OnceLock::new();
    FT.get_or_init(|| FTable::build(rc()))
}

fn c(s: &str) -> AnyonCharge {
    AnyonCharge::parse(s).unwrap()
}

#[test]
fn clebsch_gordan_isometries_and_intertwiners() {
    let triples = rc().admissible_triples();
    assert!(!triples.is_empty());
    for (a, b, k) in triples {
        let (iso, inter) = rc().cg_residuals(a, b, k).unwrap();
        assert!(iso < 1e-9 && inter < 1e-9, "{a} {b} {k}: {iso} {inter}");
    }
}

#[test]
fn cg_dimensions_match_fusion() {
    let f = ModularData::compute(Section::First).fusion().unwrap();
    for a in AnyonCharge::all() {
        for b in AnyonCharge::all() {
            let total: usize = f.channels(a, b).iter().map(|k| rc().cg(a, b, *k).unwrap().ncols()).sum();
            assert_eq!(total, a.dim() * b.dim());
        }
    }
}

#[test]
fn f_matrices_unitary() {
    assert!(ft().max_unitarity_residual() < 1e-9);
}

#[test]
fn pentagon_and_hexagon() {
    let labels = qubit_relevant_charges();
    let (p, np) = pentagon_scan(ft(), &labels);
    let (h, nh) = hexagon_scan(rc(), ft(), &labels);
    assert!(np > 0 && nh > 0);
    assert!(p < 1e-8, "pentagon {p}");
    assert!(h < 1e-8, "hexagon {h}");
}

// Oracle: the balancing relation R^{ab}_c R^{ba}_c = θ_c / (θ_a θ_b), with the
// spins taken from the T-matrix.
#[test]
fn monodromy_matches_spins() {
    let md = ModularData::compute(Section::First);
    let theta = |x: AnyonCharge| md.t[x.index()].to_complex();
    for (a, b, k) in rc().admissible_triples() {
        let m = rc().monodromy(a, b, k).unwrap();
        let expect = theta(k) / (theta(a) * theta(b));
        assert!((m - expect).norm() < 1e-9, "{a} {b} {k}");
    }
}

#[test]
fn r_symbols_are_phases() {
    for (a, b, k) in rc().admissible_triples() {
        assert!((rc().r_symbol(a, b, k).unwrap().norm() - 1.0).abs() < 1e-9);
    }
}

#[test]
fn vacuum_fusion_is_trivial() {
    for a in AnyonCharge::all() {
        let r = rc().r_symbol(AnyonCharge::VACUUM, a, a).unwrap();
        assert!((r - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }
}

#[test]
fn section_independence_of_spins_from_cgs() {
    let other = Recoupler::new(Section::Last).unwrap();
    for (a, b, k) in rc().admissible_triples() {
        let m1 = rc().monodromy(a, b, k).unwrap();
        let m2 = other.monodromy(a, b, k).unwrap();
        assert!((m1 - m2).norm() < 1e-9);
    }
}

// ‖A − e^{iφ}B‖ minimized over φ.
fn projective_residual(a: &CMatrix, b: &CMatrix) -> f64 {
    let ip = (b.adjoint() * a).trace();
    let ph = if ip.norm() > 0.0 { ip / ip.norm() } else { Complex64::new(1.0, 0.0) };
    (a - b * ph).norm()
}

fn branches() -> impl Iterator<Item = [f64; 4]> {
    (0..16u32).map(|b| [0, 1, 2, 3].map(|i| if b >> i & 1 == 1 { -1.0 } else { 1.0 }))
}

#[test]
fn some_sign_branch_satisfies_projective_braid_relation() {
    for p in Pairing::ALL {
        let d = derive_sigmas(rc(), p);
        let good: Vec<[f64; 4]> = branches()
            .filter(|&s| {
                let (s1, s2) = d.sigmas(s);
                projective_residual(&(&s1 * &s2 * &s1), &(&s2 * &s1 * &s2)) < 1e-9
            })
            .collect();
        assert!(!good.is_empty(), "{p:?}");
        for s in good {
            let (s1, s2) = d.sigmas(s);
            for m in [&s1, &s2] {
                let spec = relative_spectrum(m);
                assert!((spec[0] - std::f64::consts::FRAC_PI_2).abs() < 1e-9, "{p:?} {spec:?}");
            }
        }
    }
}

#[test]
fn phi_phi_matches_printed_up_to_gauge() {
    let d = derive_sigmas(rc(), Pairing::PhiPhi);
    let p1 = sigma_1q(Pairing::PhiPhi, 1).unwrap().to_complex();
    let p2 = sigma_1q(Pairing::PhiPhi, 2).unwrap().to_complex();
    let m = gauge_match(&d, (&p1, &p2));
    assert!(m.residual < 1e-8, "{m:?}");
}

#[test]
fn sigma_sigma_printed_cannot_match() {
    // The printed ΣΣ σ₂ is not unitary, so no unitary gauge can reach it.
    let d = derive_sigmas(rc(), Pairing::SigmaSigma);
    let p1 = sigma_1q(Pairing::SigmaSigma, 1).unwrap().to_complex();
    let p2 = sigma_1q(Pairing::SigmaSigma, 2).unwrap().to_complex();
    assert!(gauge_match(&d, (&p1, &p2)).residual > 1e-3);
}

#[test]
fn phi_sigma_fusion_space() {
    let d = derive_sigmas(rc(), Pairing::PhiPhi);
    assert_eq!(d.left, vec![c("Phi_k"), c("Phit_k")]);
    assert_eq!(d.total, c("Sig_k"));
}
