//! Round-by-round certificates for the joint state of a protocol.
//!
//! After any prefix of a protocol the joint state can be written as
//! `Σ_{a ∈ {0,1}^{q_A}} |a⟩_A Λ|φ_a⟩_B` where `Λ` maps `q_B + 2m_B`
//! qubits to `q_B` qubits, depends only on Bob's unitaries, and satisfies
//! `Tr(ΛΛ†) = 2^{2m_A}`, while `{|φ_a⟩}` is an orthonormal family that
//! never reads Bob's unitaries. This module maintains the pair `(Λ, {φ_a})`
//! across rounds and checks it against the executor by exact
//! reconstruction.
//!
//! Prior entanglement is handled by mechanically rewriting the protocol:
//! a synthetic Bob round 0 prepares the shared state from `|0…0⟩` and
//! sends Alice her half, which increments `m_B` only.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::linalg::{
    embed, permutation_matrix, reorder_qubits, unitary_with_first_column, CMat, CVec, C64,
};
use crate::model::{execute_round, initial_state, JointState, Party, Protocol, Round};
use crate::tol;

/// The state-form certificate `(Λ, {φ_a})` with its counters.
#[derive(Debug, Clone)]
pub struct Certificate {
    /// `2^{q_b} × 2^{q_b + 2 m_b}`.
    lambda: CMat,
    /// Column `a` is `|φ_a⟩`; `2^{q_b + 2 m_b}` rows, `2^{q_a}` columns.
    phis: CMat,
    q_a: usize,
    q_b: usize,
    m_a: usize,
    m_b: usize,
}

impl Certificate {
    /// The trivial certificate for the all-zeros initial state:
    /// `Λ_0 = |0…0⟩⟨0…0|` and `φ_a = |a⟩`.
    ///
    /// Needs `q_a ≤ q_b`: an orthonormal family indexed by `{0,1}^{q_a}`
    /// must fit in Bob's space.
    pub fn init(q_a: usize, q_b: usize) -> Result<Certificate> {
        if q_a > q_b {
            return Err(Error::Certificate(format!(
                "cannot seed {q_a} Alice qubits against {q_b} Bob qubits"
            )));
        }
        let dim_b = 1usize << q_b;
        let mut lambda = CMat::zeros(dim_b, dim_b);
        lambda.set_entry(0, 0, C64::new(1.0, 0.0));
        let phis = CMat::from_fn(dim_b, 1 << q_a, |i, a| {
            if i == a {
                C64::new(1.0, 0.0)
            } else {
                C64::new(0.0, 0.0)
            }
        });
        Ok(Certificate {
            lambda,
            phis,
            q_a,
            q_b,
            m_a: 0,
            m_b: 0,
        })
    }

    pub fn q_a(&self) -> usize {
        self.q_a
    }

    pub fn q_b(&self) -> usize {
        self.q_b
    }

    pub fn m_a(&self) -> usize {
        self.m_a
    }

    pub fn m_b(&self) -> usize {
        self.m_b
    }

    pub fn lambda(&self) -> &CMat {
        &self.lambda
    }

    /// `|φ_a⟩` as the columns of a matrix.
    pub fn phis(&self) -> &CMat {
        &self.phis
    }

    /// Alice applies `u` on her `q_a` qubits and sends her `p` rightmost
    /// qubits to Bob, where they arrive as the leftmost block:
    /// `Λ' = 2^{p/2} (I_p ⊗ Λ)` and `φ'_l = 2^{-p/2} Σ_r |r⟩ Ũ|φ_{lr}⟩`.
    ///
    /// `Ũ` is never materialized: on the span of the family,
    /// `Ũ|φ_a⟩ = Σ_b U[a,b] |φ_b⟩` (see [`lift_alice_unitary`]).
    pub fn step_alice(&self, u: &CMat, p: usize) -> Result<Certificate> {
        if !u.is_square() || u.row_qubits() != self.q_a {
            return Err(Error::Dimension(format!(
                "alice round unitary on {} qubits against q_a = {}",
                u.row_qubits(),
                self.q_a
            )));
        }
        if p > self.q_a {
            return Err(Error::Certificate(format!(
                "alice sends {p} qubits but holds {}",
                self.q_a
            )));
        }
        let d = self.phis.rows();
        let lifted = self.phis.mul_mat(&u.transpose());
        let keep = self.q_a - p;
        let scale = C64::new(0.5f64.powi(p as i32).sqrt(), 0.0);
        let mut phis = CMat::zeros(d << p, 1 << keep);
        for l in 0..1usize << keep {
            for r in 0..1usize << p {
                let a = (l << p) | r;
                for row in 0..d {
                    phis.set_entry(r * d + row, l, scale * lifted.entry(row, a));
                }
            }
        }
        let lambda = CMat::identity(p)
            .tensor(&self.lambda)
            .scale(C64::new(2f64.powi(p as i32).sqrt(), 0.0));
        Ok(Certificate {
            lambda,
            phis,
            q_a: keep,
            q_b: self.q_b + p,
            m_a: self.m_a + p,
            m_b: self.m_b,
        })
    }

    /// Bob applies `v` on his `q_b` qubits and sends his `p` leftmost
    /// qubits to Alice, who appends them after her block:
    /// `Λ' = Σ_b (⟨b| ⊗ I_{q_b-p}) V Λ (⟨b| ⊗ I)` with the right-hand
    /// identity sized to `Λ`'s full domain, and `φ'_{al} = |l⟩|φ_a⟩`.
    ///
    /// The `φ` update is a pure relabeling; it never reads `v`.
    pub fn step_bob(&self, v: &CMat, p: usize) -> Result<Certificate> {
        if !v.is_square() || v.row_qubits() != self.q_b {
            return Err(Error::Dimension(format!(
                "bob round unitary on {} qubits against q_b = {}",
                v.row_qubits(),
                self.q_b
            )));
        }
        if p > self.q_b {
            return Err(Error::Certificate(format!(
                "bob sends {p} qubits but holds {}",
                self.q_b
            )));
        }
        let d = self.lambda.cols();
        let keep_rows = 1usize << (self.q_b - p);
        let vl = v.mul_mat(&self.lambda);
        let mut lambda = CMat::zeros(keep_rows, d << p);
        for b in 0..1usize << p {
            for row in 0..keep_rows {
                for col in 0..d {
                    lambda.set_entry(row, b * d + col, vl.entry(b * keep_rows + row, col));
                }
            }
        }
        let mut phis = CMat::zeros(d << p, self.phis.cols() << p);
        for a in 0..self.phis.cols() {
            for l in 0..1usize << p {
                for row in 0..self.phis.rows() {
                    phis.set_entry(l * d + row, (a << p) | l, self.phis.entry(row, a));
                }
            }
        }
        Ok(Certificate {
            lambda,
            phis,
            q_a: self.q_a + p,
            q_b: self.q_b - p,
            m_a: self.m_a,
            m_b: self.m_b + p,
        })
    }

    /// The joint state `Σ_a |a⟩ ⊗ Λ|φ_a⟩`, Alice block first.
    pub fn reconstruct(&self) -> CVec {
        let dim_b = 1usize << self.q_b;
        let mut amps = vec![C64::new(0.0, 0.0); 1 << (self.q_a + self.q_b)];
        for a in 0..1usize << self.q_a {
            let block = self.lambda.mul_vec(&self.phis.column(a));
            for i in 0..dim_b {
                amps[a * dim_b + i] = block.amp(i);
            }
        }
        CVec::from_amplitudes(amps).expect("power-of-two dimension")
    }

    /// Bob's side of the state form: the subnormalized family
    /// `{Λ|φ_a⟩}_a`, which assembles his reduced density matrix.
    pub fn bob_states(&self) -> Vec<CVec> {
        (0..1usize << self.q_a)
            .map(|a| self.lambda.mul_vec(&self.phis.column(a)))
            .collect()
    }

    /// `|Tr(ΛΛ†) − 2^{2 m_a}| / 2^{2 m_a}`.
    pub fn trace_identity_residual(&self) -> f64 {
        let tr = self.lambda.frobenius_norm().powi(2);
        let expected = 4f64.powi(self.m_a as i32);
        (tr - expected).abs() / expected
    }

    /// `Tr(ΛΛ†)` itself.
    pub fn lambda_trace(&self) -> f64 {
        self.lambda.frobenius_norm().powi(2)
    }

    /// Max deviation of the `φ` Gram matrix from the identity.
    pub fn phi_gram_residual(&self) -> f64 {
        let gram = self.phis.dagger().mul_mat(&self.phis);
        gram.max_abs_diff(&CMat::identity(self.q_a))
    }
}

/// The unitary `Ũ` of the lifting identity
/// `Σ_a U|a⟩ ⊗ |φ_a⟩ = Σ_a |a⟩ ⊗ Ũ|φ_a⟩`, materialized.
///
/// With `Φ = Σ_a |φ_a⟩⟨a|`, this is `Φ Uᵀ Φ† + (I − ΦΦ†)`: it satisfies
/// `⟨φ_a|Ũ|φ_{a'}⟩ = ⟨a'|U|a⟩` and acts as the identity on the complement
/// of the family's span.
pub fn lift_alice_unitary(u: &CMat, phis: &[CVec]) -> Result<CMat> {
    u.check_unitary(tol::UNITARITY)?;
    let count = phis.len();
    if !count.is_power_of_two() || count != u.rows() {
        return Err(Error::Dimension(format!(
            "family of {count} states against a {}x{} unitary",
            u.rows(),
            u.cols()
        )));
    }
    let dim = phis[0].dim();
    if dim < count {
        return Err(Error::Dimension(format!(
            "family of {count} states cannot be orthonormal in dimension {dim}"
        )));
    }
    let mut phi_mat = CMat::zeros(dim, count);
    for (a, phi) in phis.iter().enumerate() {
        if phi.dim() != dim {
            return Err(Error::Dimension("family states of unequal dim".into()));
        }
        for i in 0..dim {
            phi_mat.set_entry(i, a, phi.amp(i));
        }
    }
    let gram = phi_mat.dagger().mul_mat(&phi_mat);
    let deviation = gram.max_abs_diff(&CMat::identity(count.trailing_zeros() as usize));
    if deviation > tol::ORTHONORMALITY {
        return Err(Error::NotOrthonormal { deviation });
    }
    let span_part = phi_mat.mul_mat(&u.transpose()).mul_mat(&phi_mat.dagger());
    let projector = phi_mat.mul_mat(&phi_mat.dagger());
    let dim_qubits = dim.trailing_zeros() as usize;
    let complement = CMat::identity(dim_qubits).sub(&projector);
    Ok(span_part.add(&complement))
}

/// Both sides of the lifting identity, for residual checks:
/// `Σ_a U|a⟩ ⊗ |φ_a⟩` and `Σ_a |a⟩ ⊗ Ũ|φ_a⟩`.
pub fn lifting_identity_sides(u: &CMat, u_tilde: &CMat, phis: &[CVec]) -> (CVec, CVec) {
    let e_dim = phis.len();
    let d = phis[0].dim();
    let mut lhs = vec![C64::new(0.0, 0.0); e_dim * d];
    let mut rhs = vec![C64::new(0.0, 0.0); e_dim * d];
    for a in 0..e_dim {
        let moved = u_tilde.mul_vec(&phis[a]);
        for b in 0..e_dim {
            let amp_u = u.entry(b, a);
            for i in 0..d {
                lhs[b * d + i] += amp_u * phis[a].amp(i);
            }
        }
        for i in 0..d {
            rhs[a * d + i] += moved.amp(i);
        }
    }
    (
        CVec::from_amplitudes(lhs).expect("power-of-two dimension"),
        CVec::from_amplitudes(rhs).expect("power-of-two dimension"),
    )
}

/// Residuals recorded after a protocol prefix. `round` 0 is the shared
/// initial state; `round` `i ≥ 1` is the state after protocol round `i`.
#[derive(Debug, Clone)]
pub struct PrefixRecord {
    pub round: usize,
    pub trace_residual: f64,
    pub reconstruction_residual: f64,
    pub gram_residual: f64,
    pub lambda_trace: f64,
    pub m_a: usize,
    pub m_b: usize,
}

/// Outcome of certifying one protocol run.
#[derive(Debug, Clone)]
pub struct Certification {
    pub certificate: Certificate,
    pub records: Vec<PrefixRecord>,
}

impl Certification {
    /// Max reconstruction residual over all prefixes.
    pub fn reconstruction_residual(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.reconstruction_residual)
            .fold(0.0, f64::max)
    }

    /// Max relative trace-identity residual over all prefixes.
    pub fn trace_residual(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.trace_residual)
            .fold(0.0, f64::max)
    }

    pub fn gram_residual(&self) -> f64 {
        self.records
            .iter()
            .map(|r| r.gram_residual)
            .fold(0.0, f64::max)
    }
}

/// Tracks which global qubit sits at each position of the certificate's
/// Alice and Bob blocks.
struct BlockLayout {
    alice: Vec<usize>,
    bob: Vec<usize>,
}

impl BlockLayout {
    fn order(&self, party: Party) -> &[usize] {
        match party {
            Party::Alice => &self.alice,
            Party::Bob => &self.bob,
        }
    }

    /// Reorder a certificate-layout state into the global qubit order.
    fn to_global(&self, cert_state: &CVec) -> Result<CVec> {
        let mut layout: Vec<usize> = self.alice.clone();
        layout.extend_from_slice(&self.bob);
        let total = layout.len();
        let mut pos = vec![usize::MAX; total];
        for (p, &q) in layout.iter().enumerate() {
            pos[q] = p;
        }
        reorder_qubits(cert_state, &pos)
    }
}

/// Compose a round's gate list (conditioned gates resolved against `x`)
/// into one unitary on the actor's block.
fn compose_round_unitary(round: &Round, block: &[usize], x: &BitString) -> Result<CMat> {
    let nq = block.len();
    let mut full = CMat::identity(nq);
    for op in &round.ops {
        let applies = match op.condition {
            None => true,
            Some(bit) => x.bit(bit),
        };
        if !applies {
            continue;
        }
        let positions: Vec<usize> = op
            .targets
            .iter()
            .map(|q| {
                block.iter().position(|b| b == q).ok_or(Error::Ownership {
                    actor: round.actor.name(),
                    qubit: *q,
                })
            })
            .collect::<Result<_>>()?;
        let embedded = embed(&op.gate.matrix(), &positions, nq)?;
        full = embedded.mul_mat(&full);
    }
    Ok(full)
}

/// Pre-compose the permutation that moves `send` into canonical position:
/// rightmost for Alice, leftmost for Bob. Returns the adjusted unitary
/// together with the kept block in its new order.
fn with_send_permutation(
    unitary: &CMat,
    block: &[usize],
    send: &[usize],
    actor: Party,
) -> Result<(CMat, Vec<usize>)> {
    let kept: Vec<usize> = block
        .iter()
        .copied()
        .filter(|q| !send.contains(q))
        .collect();
    let mut new_order: Vec<usize> = Vec::with_capacity(block.len());
    match actor {
        Party::Alice => {
            new_order.extend_from_slice(&kept);
            new_order.extend_from_slice(send);
        }
        Party::Bob => {
            new_order.extend_from_slice(send);
            new_order.extend_from_slice(&kept);
        }
    }
    let perm = permutation_matrix(block, &new_order)?;
    Ok((perm.mul_mat(unitary), kept))
}

/// Certify one run: fold the certificate over all rounds of `p` (with the
/// entanglement-preparation rewrite) and compare the reconstruction
/// against the executor after every prefix.
pub fn certify_protocol(p: &Protocol, x: &BitString) -> Result<Certification> {
    p.validate()?;
    if x.len() != p.n_message {
        return Err(Error::InputLength {
            got: x.len(),
            expected: p.n_message,
        });
    }

    let mut exec_state = initial_state(p)?;
    let alice_ent = p.alice_ent();
    let bob_ent = p.bob_ent();

    let mut layout = BlockLayout {
        alice: p.alice_work_qubits(),
        bob: alice_ent
            .iter()
            .chain(bob_ent.iter())
            .chain(p.bob_work_qubits().iter())
            .copied()
            .collect(),
    };
    let mut cert = Certificate::init(layout.alice.len(), layout.bob.len())?;

    if p.e > 0 {
        // Synthetic Bob round 0: prepare Σ_a √λ_a |a⟩|a⟩ on the two
        // entanglement blocks and send Alice her half.
        let mut target = vec![C64::new(0.0, 0.0); 1 << (2 * p.e)];
        for (a, &lambda) in p.schmidt_coeffs.iter().enumerate() {
            target[(a << p.e) | a] = C64::new(lambda.sqrt(), 0.0);
        }
        let w = unitary_with_first_column(&CVec::from_amplitudes(target)?)?;
        let positions: Vec<usize> = alice_ent
            .iter()
            .chain(bob_ent.iter())
            .map(|q| layout.bob.iter().position(|b| b == q).expect("in block"))
            .collect();
        let w_full = embed(&w, &positions, layout.bob.len())?;
        let (w_total, kept) = with_send_permutation(&w_full, &layout.bob, &alice_ent, Party::Bob)?;
        cert = cert.step_bob(&w_total, p.e)?;
        layout.bob = kept;
        layout.alice.extend_from_slice(&alice_ent);
    }

    let mut records = Vec::with_capacity(p.rounds.len() + 1);
    records.push(record_prefix(0, &cert, &layout, &exec_state)?);

    for (i, round) in p.rounds.iter().enumerate() {
        exec_state = execute_round(&exec_state, round, x)?;
        let block = layout.order(round.actor).to_vec();
        let composed = compose_round_unitary(round, &block, x)?;
        let (total, kept) = with_send_permutation(&composed, &block, &round.send, round.actor)?;
        match round.actor {
            Party::Alice => {
                cert = cert.step_alice(&total, round.send.len())?;
                layout.alice = kept;
                let mut bob = round.send.clone();
                bob.extend_from_slice(&layout.bob);
                layout.bob = bob;
            }
            Party::Bob => {
                cert = cert.step_bob(&total, round.send.len())?;
                layout.bob = kept;
                layout.alice.extend_from_slice(&round.send);
            }
        }
        records.push(record_prefix(i + 1, &cert, &layout, &exec_state)?);
    }

    Ok(Certification {
        certificate: cert,
        records,
    })
}

fn record_prefix(
    round: usize,
    cert: &Certificate,
    layout: &BlockLayout,
    exec_state: &JointState,
) -> Result<PrefixRecord> {
    let recon = layout.to_global(&cert.reconstruct())?;
    Ok(PrefixRecord {
        round,
        trace_residual: cert.trace_identity_residual(),
        reconstruction_residual: recon.max_abs_diff(&exec_state.vec),
        gram_residual: cert.phi_gram_residual(),
        lambda_trace: cert.lambda_trace(),
        m_a: cert.m_a(),
        m_b: cert.m_b(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::random_unitary;
    use crate::model::{superdense_protocol, Gate, GateOp};
    use crate::testgen::{computational_family, random_orthonormal_family, random_round_protocol};

    #[test]
    fn init_reconstructs_all_zeros() {
        let cert = Certificate::init(1, 1).unwrap();
        assert!(cert.reconstruct().max_abs_diff(&CVec::zero_state(2)) == 0.0);
        assert_eq!(cert.lambda_trace(), 1.0);
        assert_eq!(cert.phi_gram_residual(), 0.0);
    }

    #[test]
    fn init_with_empty_alice_side() {
        let cert = Certificate::init(0, 2).unwrap();
        assert!(cert.reconstruct().max_abs_diff(&CVec::zero_state(2)) == 0.0);
        assert_eq!(cert.trace_identity_residual(), 0.0);
    }

    #[test]
    fn init_trace_identity_exact() {
        let cert = Certificate::init(2, 2).unwrap();
        assert_eq!(cert.lambda_trace(), 1.0);
        assert_eq!(cert.trace_identity_residual(), 0.0);
    }

    #[test]
    fn init_rejects_oversized_alice() {
        assert!(Certificate::init(3, 2).is_err());
    }

    #[test]
    fn step_alice_trace_is_four_after_one_send() {
        let cert = Certificate::init(1, 1).unwrap();
        let stepped = cert.step_alice(&CMat::identity(1), 1).unwrap();
        assert!((stepped.lambda_trace() - 4.0).abs() < 1e-12);
        assert_eq!(stepped.m_a(), 1);
        assert_eq!(stepped.q_a(), 0);
        assert_eq!(stepped.q_b(), 2);
    }

    #[test]
    fn step_alice_identity_no_send_preserves_form() {
        let cert = Certificate::init(2, 2).unwrap();
        let stepped = cert.step_alice(&CMat::identity(2), 0).unwrap();
        assert!(stepped.reconstruct().max_abs_diff(&cert.reconstruct()) < 1e-12);
        assert_eq!(stepped.m_a(), 0);
    }

    #[test]
    fn step_bob_preserves_trace() {
        let cert = Certificate::init(1, 2).unwrap();
        let v = random_unitary(2, 8).unwrap();
        let before = cert.lambda_trace();
        for p in 0..=1 {
            let stepped = cert.step_bob(&v, p).unwrap();
            let after = stepped.lambda_trace();
            assert!(
                (after - before).abs() / before <= 1e-12,
                "p={p}: {before} vs {after}"
            );
        }
    }

    #[test]
    fn step_bob_no_send_multiplies_lambda() {
        let cert = Certificate::init(1, 1).unwrap();
        let v = random_unitary(1, 3).unwrap();
        let stepped = cert.step_bob(&v, 0).unwrap();
        let expected = v.mul_mat(cert.lambda());
        assert!(stepped.lambda().max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn step_bob_phi_update_never_reads_v() {
        let cert = Certificate::init(1, 2).unwrap();
        let a = cert.step_bob(&random_unitary(2, 1).unwrap(), 1).unwrap();
        let b = cert.step_bob(&random_unitary(2, 2).unwrap(), 1).unwrap();
        assert_eq!(a.phis().max_abs_diff(b.phis()), 0.0);
    }

    #[test]
    fn lift_identity_on_computational_basis() {
        let phis = computational_family(2);
        let lifted = lift_alice_unitary(&CMat::identity(2), &phis).unwrap();
        assert!(lifted.max_abs_diff(&CMat::identity(2)) < 1e-12);
    }

    #[test]
    fn lift_is_transpose_on_computational_basis() {
        let u = random_unitary(2, 17).unwrap();
        let phis = computational_family(2);
        let lifted = lift_alice_unitary(&u, &phis).unwrap();
        assert!(lifted.max_abs_diff(&u.transpose()) < 1e-12);
    }

    #[test]
    fn lift_defining_identity_random_family() {
        for seed in 0..10 {
            let u = random_unitary(2, 100 + seed).unwrap();
            let phis = random_orthonormal_family(2, 4, 200 + seed);
            let lifted = lift_alice_unitary(&u, &phis).unwrap();
            assert!(lifted.is_unitary(tol::UNITARITY));
            let (lhs, rhs) = lifting_identity_sides(&u, &lifted, &phis);
            assert!(lhs.max_abs_diff(&rhs) <= 1e-9);
        }
    }

    #[test]
    fn lift_inner_product_condition() {
        let u = random_unitary(1, 12).unwrap();
        let phis = random_orthonormal_family(2, 2, 13);
        let lifted = lift_alice_unitary(&u, &phis).unwrap();
        for a in 0..2 {
            for a2 in 0..2 {
                let got = phis[a].inner(&lifted.mul_vec(&phis[a2]));
                let want = u.entry(a2, a);
                assert!((got - want).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn lift_rejects_non_orthonormal_family() {
        let phis = vec![CVec::basis(1, 0), CVec::basis(1, 0)];
        assert!(matches!(
            lift_alice_unitary(&CMat::identity(1), &phis),
            Err(Error::NotOrthonormal { .. })
        ));
    }

    #[test]
    fn certify_empty_protocol_zero_residual() {
        let p = Protocol {
            name: "empty".into(),
            schmidt_coeffs: vec![1.0],
            e: 0,
            n_message: 0,
            alice_work: 1,
            bob_work: 1,
            rounds: vec![],
            outputs: vec![],
        };
        let cert = certify_protocol(&p, &BitString::zeros(0)).unwrap();
        assert_eq!(cert.reconstruction_residual(), 0.0);
        assert_eq!(cert.trace_residual(), 0.0);
    }

    #[test]
    fn certify_superdense_trace_four() {
        let p = superdense_protocol(1);
        for xv in 0..4 {
            let x = BitString::from_index(xv, 2);
            let cert = certify_protocol(&p, &x).unwrap();
            assert!((cert.certificate.lambda_trace() - 4.0).abs() < 1e-9);
            assert!(cert.reconstruction_residual() <= 1e-9, "x = {xv:02b}");
            assert_eq!(cert.certificate.m_a(), 1);
            // The rewrite routes the shared pair through a Bob round 0.
            assert_eq!(cert.certificate.m_b(), 1);
        }
    }

    #[test]
    fn certify_random_protocols_match_executor() {
        for seed in 0..15 {
            let p = random_round_protocol(seed, 7, 3);
            let cert = certify_protocol(&p, &BitString::zeros(0)).unwrap();
            assert!(
                cert.reconstruction_residual() <= tol::CERT_RESIDUAL,
                "seed {seed}: residual {}",
                cert.reconstruction_residual()
            );
            assert!(
                cert.trace_residual() <= 1e-9,
                "seed {seed}: trace residual {}",
                cert.trace_residual()
            );
            assert!(cert.gram_residual() <= tol::ORTHONORMALITY);
        }
    }

    #[test]
    fn lambda_depends_only_on_bob_unitaries() {
        // Two protocols differing only in Alice's gates produce the same Λ.
        let base = Protocol {
            name: "pair".into(),
            schmidt_coeffs: vec![0.5, 0.5],
            e: 1,
            n_message: 0,
            alice_work: 0,
            bob_work: 1,
            rounds: vec![
                Round::new(Party::Alice, vec![GateOp::new(Gate::H, vec![0])], vec![0]),
                Round::new(
                    Party::Bob,
                    vec![GateOp::new(Gate::Cnot, vec![1, 2])],
                    vec![1],
                ),
            ],
            outputs: vec![],
        };
        let mut variant = base.clone();
        variant.rounds[0].ops = vec![GateOp::new(Gate::T, vec![0])];
        let x = BitString::zeros(0);
        let a = certify_protocol(&base, &x).unwrap();
        let b = certify_protocol(&variant, &x).unwrap();
        assert!(a.certificate.lambda().max_abs_diff(b.certificate.lambda()) <= 1e-12);
    }
}
