//! Two-party communication protocols: joint state, ownership ledger,
//! round execution, and exact success probabilities.
//!
//! A protocol starts from the shared state `Σ_a √λ_a |a⟩_A |a⟩_B` (over
//! `E` qubits per side) tensored with zeroed work registers. Rounds apply
//! a local unitary on the acting party's qubits and then hand over zero or
//! more qubits. Handing a qubit over never touches amplitudes — it only
//! relabels ownership in the ledger. Alice's classical input enters
//! exclusively through gates conditioned on message bits.

use std::f64::consts::FRAC_1_SQRT_2;

use num_complex::Complex64;

use crate::bits::{gather_bits, BitString};
use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{apply_on, schmidt, CMat, CVec, SchmidtForm, C64};
use crate::tol;

/// The two communicating parties.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Party {
    Alice,
    Bob,
}

impl Party {
    pub fn other(self) -> Party {
        match self {
            Party::Alice => Party::Bob,
            Party::Bob => Party::Alice,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Party::Alice => "alice",
            Party::Bob => "bob",
        }
    }
}

/// Why a qubit exists: half of the shared entangled state, or a private
/// work qubit declared up front.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Entanglement,
    Work,
}

/// Who holds which qubit, plus cumulative transfer counters.
#[derive(Debug, Clone, PartialEq)]
pub struct Ledger {
    owner: Vec<Party>,
    role: Vec<Role>,
    m_a: usize,
    m_b: usize,
}

impl Ledger {
    fn new(owner: Vec<Party>, role: Vec<Role>) -> Self {
        Ledger {
            owner,
            role,
            m_a: 0,
            m_b: 0,
        }
    }

    pub fn total_qubits(&self) -> usize {
        self.owner.len()
    }

    pub fn owner(&self, qubit: usize) -> Party {
        self.owner[qubit]
    }

    pub fn role(&self, qubit: usize) -> Role {
        self.role[qubit]
    }

    /// Qubits currently held by `party`, in global order.
    pub fn holdings(&self, party: Party) -> Vec<usize> {
        (0..self.owner.len())
            .filter(|&q| self.owner[q] == party)
            .collect()
    }

    pub fn q_a(&self) -> usize {
        self.owner.iter().filter(|&&p| p == Party::Alice).count()
    }

    pub fn q_b(&self) -> usize {
        self.owner.iter().filter(|&&p| p == Party::Bob).count()
    }

    /// Total qubits sent Alice → Bob so far.
    pub fn m_a(&self) -> usize {
        self.m_a
    }

    /// Total qubits sent Bob → Alice so far.
    pub fn m_b(&self) -> usize {
        self.m_b
    }

    fn transfer(&mut self, from: Party, qubits: &[usize]) -> Result<()> {
        for &q in qubits {
            if q >= self.owner.len() {
                return Err(Error::QubitIndex {
                    index: q,
                    total: self.owner.len(),
                });
            }
            if self.owner[q] != from {
                return Err(Error::Ownership {
                    actor: from.name(),
                    qubit: q,
                });
            }
        }
        for &q in qubits {
            self.owner[q] = from.other();
        }
        match from {
            Party::Alice => self.m_a += qubits.len(),
            Party::Bob => self.m_b += qubits.len(),
        }
        Ok(())
    }
}

/// Named gates plus explicit matrices for everything else.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    I,
    X,
    Y,
    Z,
    H,
    S,
    T,
    Cnot,
    Swap,
    Mat(CMat),
}

impl Gate {
    pub fn qubits(&self) -> usize {
        match self {
            Gate::I | Gate::X | Gate::Y | Gate::Z | Gate::H | Gate::S | Gate::T => 1,
            Gate::Cnot | Gate::Swap => 2,
            Gate::Mat(m) => m.row_qubits(),
        }
    }

    pub fn matrix(&self) -> CMat {
        let c = Complex64::new;
        match self {
            Gate::I => CMat::identity(1),
            Gate::X => CMat::from_row_major(
                2,
                2,
                vec![c(0.0, 0.0), c(1.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)],
            )
            .expect("static gate"),
            Gate::Y => CMat::from_row_major(
                2,
                2,
                vec![c(0.0, 0.0), c(0.0, -1.0), c(0.0, 1.0), c(0.0, 0.0)],
            )
            .expect("static gate"),
            Gate::Z => CMat::from_row_major(
                2,
                2,
                vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
            )
            .expect("static gate"),
            Gate::H => {
                let r = FRAC_1_SQRT_2;
                CMat::from_row_major(2, 2, vec![c(r, 0.0), c(r, 0.0), c(r, 0.0), c(-r, 0.0)])
                    .expect("static gate")
            }
            Gate::S => CMat::from_row_major(
                2,
                2,
                vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)],
            )
            .expect("static gate"),
            Gate::T => CMat::from_row_major(
                2,
                2,
                vec![
                    c(1.0, 0.0),
                    c(0.0, 0.0),
                    c(0.0, 0.0),
                    c(FRAC_1_SQRT_2, FRAC_1_SQRT_2),
                ],
            )
            .expect("static gate"),
            Gate::Cnot => {
                // Control is the first (most significant) target.
                let mut m = CMat::zeros(4, 4);
                m.set_entry(0, 0, c(1.0, 0.0));
                m.set_entry(1, 1, c(1.0, 0.0));
                m.set_entry(2, 3, c(1.0, 0.0));
                m.set_entry(3, 2, c(1.0, 0.0));
                m
            }
            Gate::Swap => {
                let mut m = CMat::zeros(4, 4);
                m.set_entry(0, 0, c(1.0, 0.0));
                m.set_entry(1, 2, c(1.0, 0.0));
                m.set_entry(2, 1, c(1.0, 0.0));
                m.set_entry(3, 3, c(1.0, 0.0));
                m
            }
            Gate::Mat(m) => m.clone(),
        }
    }

    pub fn dagger(&self) -> Gate {
        match self {
            Gate::I | Gate::X | Gate::Y | Gate::Z | Gate::H | Gate::Cnot | Gate::Swap => {
                self.clone()
            }
            Gate::S | Gate::T | Gate::Mat(_) => Gate::Mat(self.matrix().dagger()),
        }
    }
}

/// One gate application, optionally conditioned on a classical message bit
/// (Alice only).
#[derive(Debug, Clone, PartialEq)]
pub struct GateOp {
    pub condition: Option<usize>,
    pub gate: Gate,
    pub targets: Vec<usize>,
}

impl GateOp {
    pub fn new(gate: Gate, targets: Vec<usize>) -> Self {
        GateOp {
            condition: None,
            gate,
            targets,
        }
    }

    pub fn conditioned(bit: usize, gate: Gate, targets: Vec<usize>) -> Self {
        GateOp {
            condition: Some(bit),
            gate,
            targets,
        }
    }
}

/// One round: the acting party applies its gates, then sends `send` to
/// the other party.
#[derive(Debug, Clone, PartialEq)]
pub struct Round {
    pub actor: Party,
    pub ops: Vec<GateOp>,
    pub send: Vec<usize>,
}

impl Round {
    pub fn new(actor: Party, ops: Vec<GateOp>, send: Vec<usize>) -> Self {
        Round { actor, ops, send }
    }
}

/// A complete protocol description.
///
/// Qubit layout, in global index order: Alice's `e` entanglement qubits,
/// Alice's work qubits, Bob's `e` entanglement qubits, Bob's work qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Protocol {
    pub name: String,
    /// Schmidt coefficients λ_a of the shared state, length `2^e`
    /// (the singleton `[1]` when `e = 0`).
    pub schmidt_coeffs: Vec<f64>,
    /// Entanglement qubits per side.
    pub e: usize,
    /// Number of classical message bits.
    pub n_message: usize,
    pub alice_work: usize,
    pub bob_work: usize,
    pub rounds: Vec<Round>,
    /// Qubits Bob measures at the end, most significant output bit first.
    pub outputs: Vec<usize>,
}

impl Protocol {
    pub fn total_qubits(&self) -> usize {
        2 * self.e + self.alice_work + self.bob_work
    }

    /// Global indices of Alice's entanglement register.
    pub fn alice_ent(&self) -> Vec<usize> {
        (0..self.e).collect()
    }

    pub fn alice_work_qubits(&self) -> Vec<usize> {
        (self.e..self.e + self.alice_work).collect()
    }

    pub fn bob_ent(&self) -> Vec<usize> {
        (self.e + self.alice_work..2 * self.e + self.alice_work).collect()
    }

    pub fn bob_work_qubits(&self) -> Vec<usize> {
        (2 * self.e + self.alice_work..self.total_qubits()).collect()
    }

    fn initial_ledger(&self) -> Ledger {
        let total = self.total_qubits();
        let mut owner = vec![Party::Bob; total];
        let mut role = vec![Role::Work; total];
        for o in owner.iter_mut().take(self.e + self.alice_work) {
            *o = Party::Alice;
        }
        for q in self.alice_ent() {
            role[q] = Role::Entanglement;
        }
        for q in self.bob_ent() {
            role[q] = Role::Entanglement;
        }
        Ledger::new(owner, role)
    }

    /// Total qubits Alice sends to Bob over all rounds.
    pub fn m_a(&self) -> usize {
        self.rounds
            .iter()
            .filter(|r| r.actor == Party::Alice)
            .map(|r| r.send.len())
            .sum()
    }

    /// Total qubits Bob sends to Alice over all rounds.
    pub fn m_b(&self) -> usize {
        self.rounds
            .iter()
            .filter(|r| r.actor == Party::Bob)
            .map(|r| r.send.len())
            .sum()
    }

    /// Structural validation: Schmidt coefficients, per-round ownership
    /// legality, condition legality, and Bob-owned outputs at the end.
    pub fn validate(&self) -> Result<()> {
        if self.schmidt_coeffs.len() != 1 << self.e {
            return Err(Error::SchmidtCoefficients(format!(
                "expected {} coefficients for {} entanglement qubits per side, got {}",
                1 << self.e,
                self.e,
                self.schmidt_coeffs.len()
            )));
        }
        if self.schmidt_coeffs.iter().any(|&l| l < 0.0) {
            return Err(Error::SchmidtCoefficients(
                "negative coefficient".to_string(),
            ));
        }
        let sum: f64 = self.schmidt_coeffs.iter().sum();
        if (sum - 1.0).abs() > tol::NORMALIZATION {
            return Err(Error::SchmidtCoefficients(format!(
                "coefficients sum to {sum}, expected 1"
            )));
        }
        let mut ledger = self.initial_ledger();
        for round in &self.rounds {
            for op in &round.ops {
                validate_gate_op(op, round.actor, &ledger, self.n_message)?;
            }
            ledger.transfer(round.actor, &round.send)?;
        }
        let mut seen = vec![false; self.total_qubits()];
        for &q in &self.outputs {
            if q >= self.total_qubits() {
                return Err(Error::QubitIndex {
                    index: q,
                    total: self.total_qubits(),
                });
            }
            if seen[q] {
                return Err(Error::DuplicateQubit(q));
            }
            seen[q] = true;
            if ledger.owner(q) != Party::Bob {
                return Err(Error::Protocol(format!(
                    "output qubit {q} is not held by bob at the end"
                )));
            }
        }
        Ok(())
    }
}

fn validate_gate_op(op: &GateOp, actor: Party, ledger: &Ledger, n_message: usize) -> Result<()> {
    if let Some(bit) = op.condition {
        if actor == Party::Bob {
            return Err(Error::ConditionByBob);
        }
        if bit >= n_message {
            return Err(Error::MessageBit {
                index: bit,
                n: n_message,
            });
        }
    }
    if op.targets.len() != op.gate.qubits() {
        return Err(Error::Dimension(format!(
            "gate on {} qubits given {} targets",
            op.gate.qubits(),
            op.targets.len()
        )));
    }
    for &q in &op.targets {
        if q >= ledger.total_qubits() {
            return Err(Error::QubitIndex {
                index: q,
                total: ledger.total_qubits(),
            });
        }
        if ledger.owner(q) != actor {
            return Err(Error::Ownership {
                actor: actor.name(),
                qubit: q,
            });
        }
    }
    Ok(())
}

/// Joint pure state plus the ownership ledger.
#[derive(Debug, Clone)]
pub struct JointState {
    pub vec: CVec,
    pub ledger: Ledger,
}

/// `Σ_a √λ_a |a⟩_A |a⟩_B` tensored with zeroed work registers.
pub fn initial_state(p: &Protocol) -> Result<JointState> {
    if p.schmidt_coeffs.len() != 1 << p.e {
        return Err(Error::SchmidtCoefficients(format!(
            "coefficient list length {} is not 2^{}",
            p.schmidt_coeffs.len(),
            p.e
        )));
    }
    let total = p.total_qubits();
    let mut amps = vec![C64::new(0.0, 0.0); 1 << total];
    let alice_ent = p.alice_ent();
    let bob_ent = p.bob_ent();
    for (a, &lambda) in p.schmidt_coeffs.iter().enumerate() {
        let mut index = 0usize;
        for (i, &q) in alice_ent.iter().enumerate() {
            index |= ((a >> (p.e - 1 - i)) & 1) << (total - 1 - q);
        }
        for (i, &q) in bob_ent.iter().enumerate() {
            index |= ((a >> (p.e - 1 - i)) & 1) << (total - 1 - q);
        }
        amps[index] = C64::new(lambda.sqrt(), 0.0);
    }
    Ok(JointState {
        vec: CVec::from_amplitudes(amps)?,
        ledger: p.initial_ledger(),
    })
}

/// Resolve a conditioned gate against the message bits.
fn op_applies(op: &GateOp, x: &BitString) -> bool {
    match op.condition {
        None => true,
        Some(bit) => x.bit(bit),
    }
}

/// Apply one round: the actor's gates (conditioned ones resolved against
/// `x`), then the ownership transfer. Amplitudes are untouched by the
/// transfer itself.
pub fn execute_round(s: &JointState, round: &Round, x: &BitString) -> Result<JointState> {
    let mut vec = s.vec.clone();
    for op in &round.ops {
        validate_gate_op(op, round.actor, &s.ledger, x.len())?;
        if op_applies(op, x) {
            vec = apply_on(&op.gate.matrix(), &op.targets, &vec)?;
        }
    }
    let mut ledger = s.ledger.clone();
    ledger.transfer(round.actor, &round.send)?;
    Ok(JointState { vec, ledger })
}

/// Fold [`execute_round`] over all rounds; no intermediate measurement.
pub fn run_protocol(p: &Protocol, x: &BitString) -> Result<JointState> {
    if x.len() != p.n_message {
        return Err(Error::InputLength {
            got: x.len(),
            expected: p.n_message,
        });
    }
    let mut state = initial_state(p)?;
    for round in &p.rounds {
        state = execute_round(&state, round, x)?;
    }
    Ok(state)
}

/// Born-rule marginal over the output qubits, most significant bit first.
pub fn output_distribution(s: &JointState, outputs: &[usize]) -> Result<Vec<f64>> {
    for &q in outputs {
        if q >= s.ledger.total_qubits() {
            return Err(Error::QubitIndex {
                index: q,
                total: s.ledger.total_qubits(),
            });
        }
        if s.ledger.owner(q) != Party::Bob {
            return Err(Error::Ownership {
                actor: "bob",
                qubit: q,
            });
        }
    }
    let total = s.ledger.total_qubits();
    let mut dist = vec![0.0; 1 << outputs.len()];
    for i in 0..s.vec.dim() {
        let a = s.vec.amp(i);
        if a != C64::new(0.0, 0.0) {
            dist[gather_bits(i, outputs, total)] += a.norm_sqr();
        }
    }
    Ok(dist)
}

fn success_term(p: &Protocol, x_index: usize) -> Result<f64> {
    let x = BitString::from_index(x_index, p.n_message);
    let state = run_protocol(p, &x)?;
    let dist = output_distribution(&state, &p.outputs)?;
    Ok(dist[x_index])
}

/// Exact `Pr[Y = X] = 2^{-n} Σ_x Pr[Bob outputs x | Alice sent x]`.
///
/// Messages are evaluated in parallel when the `parallel` feature is on.
pub fn success_probability(p: &Protocol) -> Result<f64> {
    p.validate()?;
    if p.outputs.len() != p.n_message {
        return Err(Error::Protocol(format!(
            "success probability needs {} output qubits, protocol declares {}",
            p.n_message,
            p.outputs.len()
        )));
    }
    let terms = exec::maybe_par_map((0..1usize << p.n_message).collect(), |i| success_term(p, i));
    let mut sum = 0.0;
    for t in terms {
        sum += t?;
    }
    Ok(sum / (1 << p.n_message) as f64)
}

/// Sequential baseline for [`success_probability`].
pub fn success_probability_seq(p: &Protocol) -> Result<f64> {
    p.validate()?;
    if p.outputs.len() != p.n_message {
        return Err(Error::Protocol(format!(
            "success probability needs {} output qubits, protocol declares {}",
            p.n_message,
            p.outputs.len()
        )));
    }
    let terms = exec::seq_map((0..1usize << p.n_message).collect(), |i| success_term(p, i));
    let mut sum = 0.0;
    for t in terms {
        sum += t?;
    }
    Ok(sum / (1 << p.n_message) as f64)
}

/// Schmidt form of the current Alice|Bob cut (reordering Alice's holdings
/// in front of Bob's first).
pub fn alice_bob_schmidt(s: &JointState) -> Result<SchmidtForm> {
    let alice = s.ledger.holdings(Party::Alice);
    let bob = s.ledger.holdings(Party::Bob);
    let mut order: Vec<usize> = alice.clone();
    order.extend_from_slice(&bob);
    let reordered = crate::linalg::reorder_qubits(&s.vec, &order)?;
    schmidt(&reordered, alice.len())
}

/// The superdense coding protocol on `m` EPR pairs: `n = 2m` message
/// bits, one Alice round sending her halves, Bob decoding by Bell
/// measurement into the output qubits.
pub fn superdense_protocol(m: usize) -> Protocol {
    let mut alice_ops = Vec::new();
    for j in 0..m {
        // Encode bits (x[2j], x[2j+1]) as Z^{x[2j]} X^{x[2j+1]} on pair j.
        alice_ops.push(GateOp::conditioned(2 * j + 1, Gate::X, vec![j]));
        alice_ops.push(GateOp::conditioned(2 * j, Gate::Z, vec![j]));
    }
    let mut bob_ops = Vec::new();
    let mut outputs = Vec::new();
    for j in 0..m {
        let received = j;
        let own = m + j;
        bob_ops.push(GateOp::new(Gate::Cnot, vec![received, own]));
        bob_ops.push(GateOp::new(Gate::H, vec![received]));
        outputs.push(received);
        outputs.push(own);
    }
    Protocol {
        name: format!("superdense{m}"),
        schmidt_coeffs: vec![1.0 / (1 << m) as f64; 1 << m],
        e: m,
        n_message: 2 * m,
        alice_work: 0,
        bob_work: 0,
        rounds: vec![
            Round::new(Party::Alice, alice_ops, (0..m).collect()),
            Round::new(Party::Bob, bob_ops, vec![]),
        ],
        outputs,
    }
}
