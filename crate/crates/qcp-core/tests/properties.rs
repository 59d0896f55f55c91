//! Property tests over seeded inputs: the generators draw seeds, the
//! constructions stay deterministic per seed.

use proptest::prelude::*;

use qcp_core::bits::BitString;
use qcp_core::certificate::certify_protocol;
use qcp_core::linalg::{
    apply_on, hermitian_eigenvalues, partial_trace_state, random_state, random_unitary, schmidt,
};
use qcp_core::model::{alice_bob_schmidt, run_protocol, Party};
use qcp_core::testgen::{random_round_protocol, random_scheme};
use qcp_core::tol;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn apply_on_preserves_norm(seed in 0u64..5000, gate_seed in 0u64..5000, k in 1usize..3) {
        let s = random_state(4, seed);
        let u = random_unitary(k, gate_seed).unwrap();
        let targets: Vec<usize> = (0..k).map(|i| i * 2).collect();
        let out = apply_on(&u, &targets, &s).unwrap();
        prop_assert!((out.norm() - 1.0).abs() <= tol::NORMALIZATION);
    }

    #[test]
    fn schmidt_coefficients_sum_to_one(seed in 0u64..5000, cut in 0usize..5) {
        let s = random_state(4, seed);
        let form = schmidt(&s, cut).unwrap();
        let total: f64 = form.coeffs.iter().map(|c| c * c).sum();
        prop_assert!((total - 1.0).abs() <= tol::NORMALIZATION);
        prop_assert!(form.reconstruct().max_abs_diff(&s) <= 1e-9);
    }

    #[test]
    fn schmidt_invariant_under_left_unitary(seed in 0u64..5000, gate_seed in 0u64..5000) {
        let s = random_state(4, seed);
        let u = random_unitary(2, gate_seed).unwrap();
        let moved = apply_on(&u, &[0, 1], &s).unwrap();
        let a = schmidt(&s, 2).unwrap();
        let b = schmidt(&moved, 2).unwrap();
        prop_assert_eq!(a.rank(), b.rank());
        for (x, y) in a.coeffs.iter().zip(b.coeffs.iter()) {
            prop_assert!((x - y).abs() <= tol::NORMALIZATION);
        }
    }

    #[test]
    fn partial_trace_sides_share_spectrum(seed in 0u64..5000) {
        let s = random_state(5, seed);
        let left = partial_trace_state(&s, &[0, 1]).unwrap();
        let right = partial_trace_state(&s, &[2, 3, 4]).unwrap();
        let le = hermitian_eigenvalues(&left);
        let re = hermitian_eigenvalues(&right);
        for (i, l) in le.iter().enumerate() {
            let r = re.get(i).copied().unwrap_or(0.0);
            prop_assert!((l - r).abs() <= tol::NORMALIZATION, "eig {i}: {l} vs {r}");
        }
    }

    #[test]
    fn executor_preserves_norm_and_counters(seed in 0u64..5000) {
        let p = random_round_protocol(seed, 7, 3);
        let state = run_protocol(&p, &BitString::zeros(0)).unwrap();
        prop_assert!(state.vec.is_normalized(tol::NORMALIZATION));
        prop_assert_eq!(state.ledger.q_a() + state.ledger.q_b(), p.total_qubits());
        prop_assert_eq!(state.ledger.m_a(), p.m_a());
        prop_assert_eq!(state.ledger.m_b(), p.m_b());
    }

    #[test]
    fn schmidt_cut_untouched_by_sendless_rounds(seed in 0u64..5000) {
        let p = random_round_protocol(seed, 6, 2);
        // Local rounds must keep the Alice|Bob spectrum: check the
        // protocol prefix before any qubit changes hands.
        let mut local = p.clone();
        local.rounds = p
            .rounds
            .iter()
            .take_while(|r| r.send.is_empty())
            .cloned()
            .collect();
        let before = alice_bob_schmidt(
            &qcp_core::model::initial_state(&local).unwrap(),
        ).unwrap();
        let after = alice_bob_schmidt(
            &run_protocol(&local, &BitString::zeros(0)).unwrap(),
        ).unwrap();
        prop_assert_eq!(before.rank(), after.rank());
        for (x, y) in before.coeffs.iter().zip(after.coeffs.iter()) {
            prop_assert!((x - y).abs() <= tol::NORMALIZATION);
        }
    }

    #[test]
    fn certificate_trace_law_random_protocols(seed in 0u64..2000) {
        let p = random_round_protocol(seed, 7, 3);
        let cert = certify_protocol(&p, &BitString::zeros(0)).unwrap();
        prop_assert!(cert.reconstruction_residual() <= tol::CERT_RESIDUAL);
        prop_assert!(cert.trace_residual() <= 1e-9);
        prop_assert!(cert.gram_residual() <= tol::ORTHONORMALITY);
        // Bob rounds leave Tr(ΛΛ†) untouched.
        for (i, round) in p.rounds.iter().enumerate() {
            if round.actor == Party::Bob {
                let before = cert.records[i].lambda_trace;
                let after = cert.records[i + 1].lambda_trace;
                prop_assert!((after - before).abs() / before <= 1e-12);
            }
        }
    }

    #[test]
    fn epr_weights_and_bound(seed in 0u64..2000, m in 0usize..3) {
        let e = 3;
        let s = random_scheme(e, m, 2, seed);
        let ens = qcp_core::coding::full_ensemble(&s).unwrap();
        for entry in &ens.entries {
            prop_assert!(entry.gram_residual() <= tol::ORTHONORMALITY);
            for ws in &entry.states {
                prop_assert_eq!(ws.weight, 1.0 / (1u64 << (e - m)) as f64);
            }
        }
        let d = qcp_core::coding::pgm_decoder(&ens).unwrap();
        let success = qcp_core::coding::decode_success(&ens, &d).unwrap();
        prop_assert!(success <= qcp_core::coding::bound_rhs(2, m) + tol::BOUND_SLACK);
    }
}

