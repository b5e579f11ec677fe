use num_complex::Complex64;
use proptest::prelude::*;
use qdouble_core::braid::*;
use qdouble_core::recoupling::Pairing;
use qdouble_core::{ExactMatrix, ExactScalar};

fn word(s: &str) -> BraidWord {
    s.parse().unwrap()
}

#[test]
fn pauli_words_on_phi_phi() {
    let g = GeneratorSet::one_qubit(Pairing::PhiPhi);
    let o = ExactScalar::ONE;
    let z = ExactScalar::ZERO;
    assert_eq!(evaluate(&word("s1 s1"), &g).unwrap(), ExactMatrix::diag(&[o, -o]));
    assert_eq!(evaluate(&word("s2 s2"), &g).unwrap(), ExactMatrix::from_rows(vec![vec![z, o], vec![o, z]]));
}

#[test]
fn arity_mismatch() {
    let g = GeneratorSet::one_qubit(Pairing::PhiPhi);
    assert!(matches!(evaluate(&word("s3"), &g), Err(qdouble_core::Error::ArityMismatch)));
}

#[test]
fn inverse_cancels() {
    let g = GeneratorSet::one_qubit(Pairing::PhiPhi);
    assert_eq!(evaluate(&word("s2 s1^-1 s1 s2^-1"), &g).unwrap(), ExactMatrix::identity(2));
}

#[test]
fn one_qubit_relations() {
    let pass: Vec<bool> = Pairing::ALL.iter().map(|&p| verify_braid_relations(&GeneratorSet::one_qubit(p)).passed()).collect();
    assert_eq!(pass, vec![true, false, false]);
}

#[test]
fn printed_one_qubit_unitarity() {
    let u: Vec<Vec<bool>> = Pairing::ALL.iter().map(|&p| verify_braid_relations(&GeneratorSet::one_qubit(p)).unitary).collect();
    assert_eq!(u, vec![vec![true, true], vec![true, false], vec![true, false]]);
}

#[test]
fn printed_two_qubit_sigma3_is_not_unitary() {
    for p in TwoQubitPairing::ALL {
        let s3 = sigma_2q(p, 3, Catalog::Printed).unwrap();
        assert!(!s3.is_unitary());
        // column 4 (0-based) carries three entries
        assert_eq!((0..8).filter(|&r| !s3.get(r, 4).is_zero()).count(), 3);
        assert!(sigma_2q(p, 3, Catalog::Amended).unwrap().is_unitary());
    }
}

#[test]
fn amended_phi_phi_report() {
    let r = verify_braid_relations(&GeneratorSet::two_qubit(TwoQubitPairing::ALL[0], Catalog::Amended));
    assert!(r.all_unitary());
    assert!(r.failures("far").is_empty());
    let adj: Vec<&str> = r.failures("adjacent").iter().map(|f| f.relation.as_str()).collect();
    assert_eq!(adj, vec!["σ2σ3σ2 = σ3σ2σ3", "σ3σ4σ3 = σ4σ3σ4"]);
}

#[test]
fn printed_far_commutation_fails_through_sigma3() {
    let r = verify_braid_relations(&GeneratorSet::two_qubit(TwoQubitPairing::ALL[0], Catalog::Printed));
    let far: Vec<&str> = r.failures("far").iter().map(|f| f.relation.as_str()).collect();
    assert_eq!(far, vec!["σ1σ3 = σ3σ1", "σ3σ5 = σ5σ3"]);
}

// Oracle: eigenvalues of a 2×2 from the characteristic polynomial in f64.
fn eigen_phase_gap(m: &ExactMatrix) -> f64 {
    let c = m.to_complex();
    let tr = c[(0, 0)] + c[(1, 1)];
    let det = c[(0, 0)] * c[(1, 1)] - c[(0, 1)] * c[(1, 0)];
    let disc = (tr * tr - det * 4.0).sqrt();
    let (l1, l2) = ((tr + disc) / 2.0, (tr - disc) / 2.0);
    (l1 / l2).arg().abs()
}

#[test]
fn ising_spectrum_on_phi_phi() {
    for i in 1..=2 {
        let m = sigma_1q(Pairing::PhiPhi, i).unwrap();
        assert!(ising_like_spectrum(&m));
        assert!((eigen_phase_gap(&m) - std::f64::consts::FRAC_PI_2).abs() < 1e-12);
    }
}

#[test]
fn diagonal_generators_have_ising_spectrum_everywhere() {
    for p in Pairing::ALL {
        assert!(ising_like_spectrum(&sigma_1q(p, 1).unwrap()));
    }
}

fn scalar() -> impl Strategy<Value = ExactScalar> {
    (prop::array::uniform4(-20i64..20), 0u32..5).prop_map(|(c, k)| ExactScalar::new(c, k))
}

fn close(a: Complex64, b: Complex64) -> bool {
    (a - b).norm() <= 1e-12 * (1.0 + b.norm())
}

proptest! {
    #[test]
    fn ring_laws(x in scalar(), y in scalar(), z in scalar()) {
        prop_assert_eq!((x * y) * z, x * (y * z));
        prop_assert_eq!(x * (y + z), x * y + x * z);
        prop_assert_eq!(x + y, y + x);
        prop_assert_eq!(x * y, y * x);
        prop_assert_eq!(x - x, ExactScalar::ZERO);
        prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
    }

    #[test]
    fn complex_image_is_a_homomorphism(x in scalar(), y in scalar()) {
        prop_assert!(close((x * y).to_complex(), x.to_complex() * y.to_complex()));
        prop_assert!(close((x + y).to_complex(), x.to_complex() + y.to_complex()));
        prop_assert!(close(x.conj().to_complex(), x.to_complex().conj()));
        prop_assert!((x.norm_sqr().to_complex().re - x.to_complex().norm_sqr()).abs() <= 1e-9 * (1.0 + x.to_complex().norm_sqr()));
    }

    #[test]
    fn canonical_equality(x in scalar(), p in 0u32..4) {
        // scaling up and back down lands on the same representation
        prop_assert_eq!(x.mul_sqrt2_pow(p) * ExactScalar::inv_sqrt2_pow(p), x);
    }

    #[test]
    fn word_display_round_trip(tokens in prop::collection::vec((1usize..6, -3i32..4, any::<bool>()), 0..12)) {
        let w = BraidWord(tokens.into_iter().filter(|t| t.1 != 0).map(|(i, p, proj)| if proj { Token::Project } else { Token::Gen { index: i, power: p } }).collect());
        prop_assert_eq!(w.to_string().parse::<BraidWord>().unwrap(), w);
    }

    #[test]
    fn words_on_phi_phi_stay_unitary(tokens in prop::collection::vec((1usize..3, -2i32..3), 0..10)) {
        let g = GeneratorSet::one_qubit(Pairing::PhiPhi);
        let w = BraidWord(tokens.into_iter().filter(|t| t.1 != 0).map(|(index, power)| Token::Gen { index, power }).collect());
        let m = evaluate(&w, &g).unwrap();
        prop_assert!(m.is_unitary());
        let c = m.to_complex();
        prop_assert!((&c * c.adjoint() - nalgebra::DMatrix::<Complex64>::identity(2, 2)).norm() < 1e-12);
    }

    #[test]
    fn amended_phi_phi_words_stay_unitary(tokens in prop::collection::vec((1usize..6, -1i32..2), 0..6)) {
        let g = GeneratorSet::two_qubit(TwoQubitPairing::ALL[0], Catalog::Amended);
        let w = BraidWord(tokens.into_iter().filter(|t| t.1 != 0).map(|(index, power)| Token::Gen { index, power }).collect());
        prop_assert!(evaluate(&w, &g).unwrap().is_unitary());
    }
}
