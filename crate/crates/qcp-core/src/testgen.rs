//! Seeded generators for protocols, encoding schemes, and orthonormal
//! families. Everything here is deterministic in the seed; the test
//! suites and benchmarks sweep seeds instead of sharing RNG state.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coding::EncodingScheme;
use crate::linalg::{random_unitary, CMat, CVec};
use crate::model::{Gate, GateOp, Party, Protocol, Round};

fn pick<T: Copy>(rng: &mut ChaCha8Rng, options: &[T]) -> T {
    options[rng.gen_range(0..options.len())]
}

/// A random protocol without message bits: up to `max_rounds` rounds of
/// random unitaries and sends, at most `max_qubits` qubits total.
///
/// Alice's initial holdings never exceed Bob's, so the protocol is always
/// certifiable.
pub fn random_round_protocol(seed: u64, max_qubits: usize, max_rounds: usize) -> Protocol {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9e37_79b9).wrapping_add(1));
    let e = rng.gen_range(0..=2usize.min((max_qubits.saturating_sub(2)) / 2));
    let budget = max_qubits - 2 * e;
    let bob_work = rng.gen_range(1..=budget.saturating_sub(1).max(1));
    let alice_cap = (budget - bob_work).min(2 * e + bob_work);
    let alice_work = rng
        .gen_range(if e == 0 { 1 } else { 0 }..=alice_cap.max(1))
        .min(alice_cap);
    let mut p = Protocol {
        name: format!("random{seed}"),
        schmidt_coeffs: random_schmidt_coeffs(e, &mut rng),
        e,
        n_message: 0,
        alice_work,
        bob_work,
        rounds: vec![],
        outputs: vec![],
    };

    let mut owner = initial_owner(&p);
    let rounds = rng.gen_range(1..=max_rounds);
    let mut actor = pick(&mut rng, &[Party::Alice, Party::Bob]);
    for _ in 0..rounds {
        p.rounds.push(random_round(&mut rng, actor, &mut owner));
        actor = actor.other();
    }
    p
}

/// A random interactive protocol carrying `n` message bits, with exactly
/// `m_a` qubits sent by Alice and at most `m_b_max` by Bob. Outputs are
/// `n` Bob-held qubits.
///
/// Register counts are kept minimal so certificates stay cheap: Bob gets
/// just enough qubits to return `m_b` and still measure `n` outputs.
pub fn random_message_protocol(seed: u64, n: usize, m_a: usize, m_b_max: usize) -> Protocol {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x51_7cc1).wrapping_add(3));
    let e = rng.gen_range(0..=1usize);
    let m_b = rng.gen_range(0..=m_b_max);
    let alice_work = m_a.saturating_sub(e).max(1);
    let bob_work = (n + m_b)
        .saturating_sub(e + m_a)
        .max(1)
        .max(alice_work.saturating_sub(2 * e));
    let mut p = Protocol {
        name: format!("msg{seed}"),
        schmidt_coeffs: random_schmidt_coeffs(e, &mut rng),
        e,
        n_message: n,
        alice_work,
        bob_work,
        rounds: vec![],
        outputs: vec![],
    };
    let mut owner = initial_owner(&p);

    // Alice encodes: conditioned single-qubit gates on her holdings.
    let alice_holdings: Vec<usize> = holdings(&owner, Party::Alice);
    let mut encode_ops = Vec::new();
    for bit in 0..n {
        let target = pick(&mut rng, &alice_holdings);
        let gate = match rng.gen_range(0..3) {
            0 => Gate::X,
            1 => Gate::Z,
            _ => Gate::H,
        };
        encode_ops.push(GateOp::conditioned(bit, gate, vec![target]));
    }
    // Plus a random unitary on up to 2 of her qubits.
    let k = alice_holdings.len().min(2);
    if k > 0 {
        let targets: Vec<usize> = choose(&mut rng, &alice_holdings, k);
        encode_ops.push(GateOp::new(
            Gate::Mat(random_unitary(k, rng.gen()).expect("within cap")),
            targets,
        ));
    }
    let send: Vec<usize> = choose(&mut rng, &alice_holdings, m_a.min(alice_holdings.len()));
    transfer(&mut owner, &send);
    p.rounds.push(Round::new(Party::Alice, encode_ops, send));

    // Bob round: random unitary, sends m_b back.
    let bob_holdings = holdings(&owner, Party::Bob);
    let m_b = m_b.min(bob_holdings.len().saturating_sub(n));
    let k = bob_holdings.len().min(2);
    let mut bob_ops = Vec::new();
    if k > 0 {
        let targets = choose(&mut rng, &bob_holdings, k);
        bob_ops.push(GateOp::new(
            Gate::Mat(random_unitary(k, rng.gen()).expect("within cap")),
            targets,
        ));
    }
    let send = choose(&mut rng, &bob_holdings, m_b);
    transfer(&mut owner, &send);
    p.rounds.push(Round::new(Party::Bob, bob_ops, send));

    // Bob decodes with one more local unitary and measures n qubits.
    let bob_holdings = holdings(&owner, Party::Bob);
    let k = bob_holdings.len().min(3);
    let mut decode_ops = Vec::new();
    if k > 0 {
        let targets = choose(&mut rng, &bob_holdings, k);
        decode_ops.push(GateOp::new(
            Gate::Mat(random_unitary(k, rng.gen()).expect("within cap")),
            targets,
        ));
    }
    p.rounds.push(Round::new(Party::Bob, decode_ops, vec![]));
    p.outputs = choose(&mut rng, &bob_holdings, n);
    p
}

/// A uniform-entanglement encoding scheme with seeded random encoders.
pub fn random_scheme(e: usize, m: usize, n: usize, seed: u64) -> EncodingScheme {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0xd1b5).wrapping_add(7));
    let encoders = (0..1usize << n)
        .map(|_| random_unitary(e, rng.gen()).expect("within cap"))
        .collect();
    EncodingScheme {
        e,
        m,
        n,
        encoders,
        schmidt_coeffs: vec![1.0 / (1 << e) as f64; 1 << e],
    }
}

/// Like [`random_scheme`] but with non-uniform Schmidt coefficients.
pub fn random_general_scheme(e: usize, m: usize, n: usize, seed: u64) -> EncodingScheme {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0xa24b).wrapping_add(11));
    let mut scheme = random_scheme(e, m, n, seed.wrapping_add(1));
    scheme.schmidt_coeffs = random_schmidt_coeffs(e, &mut rng);
    scheme
}

/// `count` orthonormal states over `qubits` qubits (columns of a seeded
/// random unitary).
pub fn random_orthonormal_family(qubits: usize, count: usize, seed: u64) -> Vec<CVec> {
    assert!(count <= 1 << qubits, "family larger than the space");
    let u = random_unitary(qubits, seed).expect("within cap");
    (0..count).map(|j| u.column(j)).collect()
}

/// The computational basis as a degenerate orthonormal family.
pub fn computational_family(qubits: usize) -> Vec<CVec> {
    (0..1usize << qubits)
        .map(|i| CVec::basis(qubits, i))
        .collect()
}

/// A seeded random unitary used as an encoder matrix, re-exported for
/// sweeps that want direct control.
pub fn seeded_unitary(qubits: usize, seed: u64) -> CMat {
    random_unitary(qubits, seed).expect("within cap")
}

fn random_schmidt_coeffs(e: usize, rng: &mut ChaCha8Rng) -> Vec<f64> {
    if e == 0 {
        return vec![1.0];
    }
    let raw: Vec<f64> = (0..1usize << e)
        .map(|_| {
            let g: f64 = rng.gen_range(0.05..1.0);
            g * g
        })
        .collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|v| v / total).collect()
}

fn initial_owner(p: &Protocol) -> Vec<Party> {
    let mut owner = vec![Party::Bob; p.total_qubits()];
    for o in owner.iter_mut().take(p.e + p.alice_work) {
        *o = Party::Alice;
    }
    owner
}

fn holdings(owner: &[Party], party: Party) -> Vec<usize> {
    (0..owner.len()).filter(|&q| owner[q] == party).collect()
}

fn transfer(owner: &mut [Party], qubits: &[usize]) {
    for &q in qubits {
        owner[q] = owner[q].other();
    }
}

fn choose(rng: &mut ChaCha8Rng, from: &[usize], k: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = from.to_vec();
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        let i = rng.gen_range(0..pool.len());
        out.push(pool.swap_remove(i));
    }
    out
}

fn random_round(rng: &mut ChaCha8Rng, actor: Party, owner: &mut [Party]) -> Round {
    let held = holdings(owner, actor);
    let mut ops = Vec::new();
    if !held.is_empty() {
        let k = rng.gen_range(1..=held.len().min(3));
        let targets = choose(rng, &held, k);
        ops.push(GateOp::new(
            Gate::Mat(random_unitary(k, rng.gen()).expect("within cap")),
            targets,
        ));
    }
    let p = rng.gen_range(0..=held.len().min(2));
    let send = choose(rng, &held, p);
    transfer(owner, &send);
    Round::new(actor, ops, send)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn random_round_protocol_is_valid_and_deterministic() {
        for seed in 0..30 {
            let p = random_round_protocol(seed, 8, 3);
            p.validate().expect("generated protocol validates");
            assert!(p.total_qubits() <= 8);
            assert!(p.rounds.len() <= 3);
            let q = random_round_protocol(seed, 8, 3);
            assert_eq!(p, q);
        }
    }

    #[test]
    fn random_message_protocol_is_valid() {
        for seed in 0..30 {
            let n = 2 + (seed as usize % 3);
            let m_a = seed as usize % 3;
            let p = random_message_protocol(seed, n, m_a, 2);
            p.validate().expect("generated protocol validates");
            assert_eq!(p.m_a(), m_a.min(p.e + p.alice_work));
            assert_eq!(p.outputs.len(), n);
        }
    }

    #[test]
    fn orthonormal_family_is_orthonormal() {
        let family = random_orthonormal_family(2, 4, 5);
        for (i, a) in family.iter().enumerate() {
            for (j, b) in family.iter().enumerate() {
                let g = a.inner(b);
                let expect = if i == j { 1.0 } else { 0.0 };
                assert!((g.re - expect).abs() < 1e-10 && g.im.abs() < 1e-10);
            }
        }
    }
}
