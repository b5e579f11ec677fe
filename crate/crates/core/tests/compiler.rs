use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use proptest::prelude::*;
use qdouble_core::braid::*;
use qdouble_core::compiler::*;
use qdouble_core::recoupling::Pairing;
use qdouble_core::{ExactMatrix, ExactScalar};

fn phi_phi_amended() -> GeneratorSet {
    GeneratorSet::two_qubit(TwoQubitPairing::ALL[0], Catalog::Amended)
}

#[test]
fn single_qubit_identities_on_phi_phi() {
    let expect = [
        (GateName::S, -ExactScalar::ONE),
        (GateName::H, ExactScalar::zeta(3)),
        (GateName::X, ExactScalar::ONE),
        (GateName::Y, ExactScalar::I),
        (GateName::Z, ExactScalar::ONE),
    ];
    for (g, f) in expect {
        let c = compile(g, Pairing::PhiPhi).unwrap();
        assert!(c.holds, "{g:?}");
        assert_eq!(c.factor, Some(f), "{g:?}");
        assert!(c.is_phase());
        assert!(!c.uses_projection);
    }
}

#[test]
fn hadamard_needs_phi_phi() {
    for p in [Pairing::SigmaSigma, Pairing::SigmaPhi] {
        let c = compile(GateName::H, p).unwrap();
        assert!(!c.holds);
        assert!(c.residual.is_some());
    }
}

#[test]
fn main_text_hadamard_agrees() {
    let r = gate_report().unwrap();
    assert_eq!(r.alternative_hadamard[0], ("ΦΦ".to_string(), true, true));
    assert!(r.single_qubit_pass());
}

#[test]
fn printed_catalog_search_is_negative() {
    for p in TwoQubitPairing::ALL {
        let s = computational_embedding(p, Catalog::Printed).unwrap();
        assert_eq!(s.scanned, 1680);
        assert!(s.both.is_empty(), "{}", s.pairing);
    }
}

#[test]
fn amended_phi_phi_embeddings() {
    let s = computational_embedding(TwoQubitPairing::ALL[0], Catalog::Amended).unwrap();
    assert_eq!(s.chosen().unwrap().indices, [0, 1, 2, 3]);
    assert_eq!(s.both.len(), 8);
    let gens = phi_phi_amended();
    for e in &s.both {
        for g in [GateName::Cnot, GateName::Cz] {
            let c = compile_with(g, &gens, Some(e)).unwrap();
            assert!(c.holds);
        }
    }
}

#[test]
fn sigma_pairings_have_singular_sigma4() {
    let s = computational_embedding(TwoQubitPairing::ALL[3], Catalog::Amended).unwrap();
    assert!(s.cnot.is_empty());
    assert!(s.undefined.iter().any(|u| u.contains("σ4")));
}

#[test]
fn leakage_after_sigma3_is_half() {
    let emb = SubspaceEmbedding::default();
    let w: BraidWord = "P s3".parse().unwrap();
    let (psi, leaks) = apply_with_projection(&w, &phi_phi_amended(), &emb, &emb.basis_state(0)).unwrap();
    assert_eq!(leaks.len(), 1);
    assert!((leaks[0].leaked - 0.5).abs() < 1e-12);
    assert!((psi.norm() - 1.0).abs() < 1e-12);
}

#[test]
fn projection_on_its_range() {
    let emb = SubspaceEmbedding::default();
    let psi = emb.basis_state(3);
    let w: BraidWord = "P P".parse().unwrap();
    let (out, leaks) = apply_with_projection(&w, &phi_phi_amended(), &emb, &psi).unwrap();
    assert_eq!(out, psi);
    assert!(leaks.iter().all(|l| l.leaked == 0.0));
}

#[test]
fn total_leakage_is_an_error() {
    let emb = SubspaceEmbedding::default();
    let mut psi = DVector::zeros(8);
    psi[6] = Complex64::new(1.0, 0.0);
    let w: BraidWord = "P".parse().unwrap();
    assert!(matches!(apply_with_projection(&w, &phi_phi_amended(), &emb, &psi), Err(qdouble_core::Error::TotalLeakage(0))));
}

#[test]
fn cnot_word_acts_as_cnot_on_states() {
    let emb = SubspaceEmbedding::default();
    let perm = [0, 1, 3, 2];
    let gens = phi_phi_amended();
    for k in 0..4 {
        let (out, leaks) = apply_with_projection(&GateName::Cnot.word(), &gens, &emb, &emb.basis_state(k)).unwrap();
        assert_eq!(leaks.len(), 3);
        assert!((out[perm[k]].norm() - 1.0).abs() < 1e-12, "{k}");
    }
}

#[test]
fn cz_target_is_unitary() {
    let t = GateName::Cz.target();
    assert!(t.is_unitary());
    assert_eq!(t, ExactMatrix::diag(&[ExactScalar::ONE, ExactScalar::ONE, ExactScalar::ONE, -ExactScalar::ONE]));
}

fn state(n: usize) -> impl Strategy<Value = DVector<Complex64>> {
    prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), n).prop_filter_map("nonzero", |v| {
        let s = DVector::from_iterator(v.len(), v.into_iter().map(|(a, b)| Complex64::new(a, b)));
        let n = s.norm();
        (n > 1e-3).then(|| s / Complex64::new(n, 0.0))
    })
}

proptest! {
    #[test]
    fn single_qubit_words_preserve_norm(psi in state(2), g in 0usize..5) {
        let gate = GateName::ALL[g];
        let c = compile(gate, Pairing::PhiPhi).unwrap();
        let out = c.realized.to_complex() * &psi;
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn projection_is_idempotent(psi in state(8), idx in 0usize..1680) {
        let emb = SubspaceEmbedding::all()[idx];
        let gens = phi_phi_amended();
        let p1: BraidWord = "P".parse().unwrap();
        let p2: BraidWord = "P P".parse().unwrap();
        let a = apply_with_projection(&p1, &gens, &emb, &psi);
        let b = apply_with_projection(&p2, &gens, &emb, &psi);
        match (a, b) {
            (Ok((x, _)), Ok((y, _))) => prop_assert!((x - y).norm() < 1e-12),
            (Err(_), Err(_)) => {}
            _ => prop_assert!(false),
        }
    }

    #[test]
    fn cnot_on_random_states(psi in state(4)) {
        let emb = SubspaceEmbedding::default();
        let mut full = DVector::zeros(8);
        for k in 0..4 { full[k] = psi[k]; }
        let (out, leaks) = apply_with_projection(&GateName::Cnot.word(), &phi_phi_amended(), &emb, &full).unwrap();
        prop_assert!(leaks.iter().all(|l| (0.0..=1.0).contains(&l.leaked)));
        let target = GateName::Cnot.target().to_complex() * &psi;
        let got = DMatrix::from_fn(4, 1, |r, _| out[r]);
        let ip = (got.adjoint() * &target)[(0, 0)];
        prop_assert!((ip.norm() - 1.0).abs() < 1e-9);
        prop_assert!((out.norm() - 1.0).abs() < 1e-12);
    }
}
