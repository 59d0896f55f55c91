//! Inner product protocols and the reduction from transmission.
//!
//! `IP_n(x, y) = ⊕_i (x_i ∧ y_i)`. Three constructions live here:
//!
//! - a public-coin classical protocol at suffix length `t`: the coins
//!   supply `r ∈ {0,1}^t` and a guess bit; Alice sends her `(n-t)`-bit
//!   prefix plus a flag `[suffix(x) = r]`, for `n - t + 1` bits and
//!   success exactly `1/2 + 2^{-t-1}` on every input pair;
//! - its quantum version, carrying the same bits by superdense coding
//!   over shared EPR pairs at `⌈(n-t+1)/2⌉` qubits, verified by full
//!   simulation of the transport;
//! - the compiler turning any clean IP protocol into a transmission
//!   protocol (Hadamards on Bob's `y` register, forward run, phase flip
//!   on the answer, reversed run, Hadamards), whose recovery probability
//!   is `(1-2ε)²` for an `ε`-error input protocol.

use crate::bits::BitString;
use crate::error::{Error, Result};
use crate::linalg::{CMat, C64};
use crate::model::{
    execute_round, initial_state, output_distribution, run_protocol, superdense_protocol, Gate,
    GateOp, Party, Protocol, Round,
};

/// One evaluation of the inner product function.
#[derive(Debug, Clone)]
pub struct IpInstance {
    pub x: BitString,
    pub y: BitString,
}

impl IpInstance {
    pub fn new(x: BitString, y: BitString) -> Result<Self> {
        if x.len() != y.len() {
            return Err(Error::Parameter(format!(
                "inner product inputs of length {} and {}",
                x.len(),
                y.len()
            )));
        }
        Ok(IpInstance { x, y })
    }
}

/// `⊕_i (x_i ∧ y_i)`.
pub fn ip_value(inst: &IpInstance) -> bool {
    inst.x
        .bits()
        .iter()
        .zip(inst.y.bits().iter())
        .fold(false, |acc, (&a, &b)| acc ^ (a & b))
}

fn ip_bits(x: usize, y: usize) -> bool {
    ((x & y).count_ones() & 1) == 1
}

/// Exact enumeration results for the classical public-coin protocol.
#[derive(Debug, Clone)]
pub struct ClassicalIpReport {
    pub n: usize,
    pub t: usize,
    /// Bits Alice sends: `n - t + 1`.
    pub bits: usize,
    /// Correct coin outcomes per input pair, over `2^{t+1}` coins.
    pub success_num: u64,
    pub success_den: u64,
    /// Max and min success over all input pairs coincide.
    pub input_independent: bool,
}

impl ClassicalIpReport {
    pub fn success(&self) -> f64 {
        self.success_num as f64 / self.success_den as f64
    }

    /// Error `ε = 1/2 - 2^{-t-1}` achieved by the protocol.
    pub fn epsilon(&self) -> f64 {
        1.0 - self.success()
    }
}

fn check_t(n: usize, t: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Parameter("inner product needs n ≥ 1".into()));
    }
    if t > n {
        return Err(Error::Parameter(format!(
            "suffix length {t} out of range for n = {n}"
        )));
    }
    Ok(())
}

/// Bob's output given Alice's message `(prefix, flag)`, the coins
/// `(r, g)`, and his own input.
fn bob_output(prefix_x: usize, flag: bool, y: usize, t: usize, r: usize, g: bool) -> bool {
    let prefix_y = y >> t;
    let suffix_y = y & ((1 << t) - 1);
    let prefix_ip = ip_bits(prefix_x, prefix_y);
    if flag {
        prefix_ip ^ ip_bits(r, suffix_y)
    } else {
        prefix_ip ^ g
    }
}

/// Exhaustively evaluate the classical protocol over all inputs and all
/// public coins. Counting is exact; no floating point is involved until
/// the caller asks for a ratio.
pub fn classical_ip_protocol(n: usize, t: usize) -> Result<ClassicalIpReport> {
    check_t(n, t)?;
    let mut min_count = u64::MAX;
    let mut max_count = 0u64;
    for x in 0..1usize << n {
        let suffix_x = x & ((1 << t) - 1);
        let prefix_x = x >> t;
        for y in 0..1usize << n {
            let want = ip_bits(x, y);
            let mut count = 0u64;
            for r in 0..1usize << t {
                let flag = suffix_x == r;
                for g in [false, true] {
                    if bob_output(prefix_x, flag, y, t, r, g) == want {
                        count += 1;
                    }
                }
            }
            min_count = min_count.min(count);
            max_count = max_count.max(count);
        }
    }
    Ok(ClassicalIpReport {
        n,
        t,
        bits: n - t + 1,
        success_num: max_count,
        success_den: 1u64 << (t + 1),
        input_independent: min_count == max_count,
    })
}

/// Cost/success report for the entanglement-assisted protocol.
#[derive(Debug, Clone)]
pub struct IpProtocolReport {
    pub n: usize,
    /// Error achieved at this suffix length: `1/2 - 2^{-t-1}`.
    pub epsilon_target: f64,
    pub t: usize,
    pub classical_bits: usize,
    /// `⌈classical_bits / 2⌉` via superdense coding; odd messages are
    /// padded by one bit.
    pub quantum_qubits: usize,
    pub success_exact: f64,
    pub lower_bound_qubits: f64,
}

/// The quantum protocol: the classical messages ride on superdense
/// coding. The transport is verified by full statevector simulation of
/// every message value, then the classical enumeration is replayed over
/// the decoded bits.
pub fn quantum_ip_protocol(n: usize, t: usize) -> Result<IpProtocolReport> {
    check_t(n, t)?;
    let classical_bits = n - t + 1;
    let quantum_qubits = classical_bits.div_ceil(2);
    let padded_bits = 2 * quantum_qubits;

    // Simulate the transport once per message value and record what Bob
    // decodes. Superdense coding is exact, so each run must put all its
    // output mass on one string.
    let transport = superdense_protocol(quantum_qubits);
    let mut decoded = Vec::with_capacity(1 << padded_bits);
    for mv in 0..1usize << padded_bits {
        let state = run_protocol(&transport, &BitString::from_index(mv, padded_bits))?;
        let dist = output_distribution(&state, &transport.outputs)?;
        let (best, &mass) = dist
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.partial_cmp(b.1).expect("finite probability"))
            .expect("nonempty distribution");
        if (mass - 1.0).abs() > 1e-9 {
            return Err(Error::Protocol(format!(
                "superdense transport of message {mv} is not exact (mass {mass})"
            )));
        }
        decoded.push(best);
    }

    // Replay the protocol with messages routed through the simulated
    // channel.
    let mut min_count = u64::MAX;
    let mut max_count = 0u64;
    for x in 0..1usize << n {
        let suffix_x = x & ((1 << t) - 1);
        let prefix_x = x >> t;
        for y in 0..1usize << n {
            let want = ip_bits(x, y);
            let mut count = 0u64;
            for r in 0..1usize << t {
                let flag = suffix_x == r;
                // Message layout: prefix bits, flag bit, zero padding.
                let message = ((prefix_x << 1) | flag as usize) << (padded_bits - classical_bits);
                let received = decoded[message] >> (padded_bits - classical_bits);
                let rec_flag = received & 1 == 1;
                let rec_prefix = received >> 1;
                for g in [false, true] {
                    if bob_output(rec_prefix, rec_flag, y, t, r, g) == want {
                        count += 1;
                    }
                }
            }
            min_count = min_count.min(count);
            max_count = max_count.max(count);
        }
    }
    if min_count != max_count {
        return Err(Error::Protocol(
            "quantum protocol success varies across inputs".into(),
        ));
    }
    let success = max_count as f64 / (1u64 << (t + 1)) as f64;
    let epsilon = 1.0 - success;
    Ok(IpProtocolReport {
        n,
        epsilon_target: epsilon,
        t,
        classical_bits,
        quantum_qubits,
        success_exact: success,
        lower_bound_qubits: ip_lower_bound(n, epsilon)?,
    })
}

/// Largest suffix length whose achieved error stays at or below `eps`:
/// `t = ⌊log2(1/(1-2ε))⌋`.
pub fn t_for_epsilon(n: usize, eps: f64) -> Result<usize> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::Parameter(format!(
            "error rate {eps} outside [0, 1/2)"
        )));
    }
    let t = (1.0 / (1.0 - 2.0 * eps)).log2().floor() as usize;
    Ok(t.min(n))
}

/// The communication lower bound `(n - log2(1/(1-2ε)²)) / 2` in qubits.
pub fn ip_lower_bound(n: usize, eps: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::Parameter(format!(
            "error rate {eps} outside [0, 1/2)"
        )));
    }
    let penalty = 1.0 / ((1.0 - 2.0 * eps) * (1.0 - 2.0 * eps));
    Ok(0.5 * (n as f64 - penalty.log2()))
}

/// A protocol that computes `IP_n(x, y)` coherently into one answer
/// qubit: Bob's `y` register is quantum, Alice's `x` is classical.
#[derive(Debug, Clone)]
pub struct CleanIpProtocol {
    pub protocol: Protocol,
    /// Bob's `y` register, most significant bit first.
    pub y_register: Vec<usize>,
    /// Bob's answer qubit.
    pub answer: usize,
}

impl CleanIpProtocol {
    pub fn n(&self) -> usize {
        self.y_register.len()
    }
}

/// An 8×8 doubly-controlled X: flips the last target when both controls
/// are set.
fn ccx() -> CMat {
    let mut m = CMat::identity(3);
    m.set_entry(6, 6, C64::new(0.0, 0.0));
    m.set_entry(7, 7, C64::new(0.0, 0.0));
    m.set_entry(6, 7, C64::new(1.0, 0.0));
    m.set_entry(7, 6, C64::new(1.0, 0.0));
    m
}

/// The trivial exact IP protocol: Alice loads `x` onto carrier qubits
/// and sends them; Bob ANDs each carrier with his `y` qubit into the
/// answer.
pub fn exact_ip_protocol(n: usize) -> CleanIpProtocol {
    let carriers: Vec<usize> = (0..n).collect();
    let y_register: Vec<usize> = (n..2 * n).collect();
    let answer = 2 * n;
    let load: Vec<GateOp> = carriers
        .iter()
        .enumerate()
        .map(|(i, &c)| GateOp::conditioned(i, Gate::X, vec![c]))
        .collect();
    let compute: Vec<GateOp> = carriers
        .iter()
        .zip(y_register.iter())
        .map(|(&c, &y)| GateOp::new(Gate::Mat(ccx()), vec![c, y, answer]))
        .collect();
    CleanIpProtocol {
        protocol: Protocol {
            name: format!("ip{n}"),
            schmidt_coeffs: vec![1.0],
            e: 0,
            n_message: n,
            alice_work: n,
            bob_work: n + 1,
            rounds: vec![
                Round::new(Party::Alice, load, carriers),
                Round::new(Party::Bob, compute, vec![]),
            ],
            outputs: vec![answer],
        },
        y_register,
        answer,
    }
}

/// [`exact_ip_protocol`] with the answer qubit rotated so the per-input
/// success drops to `1 - eps`.
pub fn rotated_ip_protocol(n: usize, eps: f64) -> Result<CleanIpProtocol> {
    if !(0.0..0.5).contains(&eps) {
        return Err(Error::Parameter(format!(
            "error rate {eps} outside [0, 1/2)"
        )));
    }
    let mut clean = exact_ip_protocol(n);
    let theta = eps.sqrt().asin();
    let (c, s) = (theta.cos(), theta.sin());
    let rot = CMat::from_row_major(
        2,
        2,
        vec![
            C64::new(c, 0.0),
            C64::new(-s, 0.0),
            C64::new(s, 0.0),
            C64::new(c, 0.0),
        ],
    )?;
    clean.protocol.rounds.push(Round::new(
        Party::Bob,
        vec![GateOp::new(Gate::Mat(rot), vec![clean.answer])],
        vec![],
    ));
    clean.protocol.name = format!("ip{n}eps");
    Ok(clean)
}

/// Everything the compiled transmission protocol reports.
#[derive(Debug, Clone)]
pub struct ReductionReport {
    pub transmission: Protocol,
    /// `min_x Pr[Bob measures x]`.
    pub recovery: f64,
    pub per_message: Vec<f64>,
}

/// A probe run of the clean protocol from the basis input `y`.
fn probe_state(
    clean: &CleanIpProtocol,
    x: &BitString,
    y: usize,
) -> Result<crate::model::JointState> {
    let mut prep = Vec::new();
    for (i, &q) in clean.y_register.iter().enumerate() {
        if (y >> (clean.n() - 1 - i)) & 1 == 1 {
            prep.push(GateOp::new(Gate::X, vec![q]));
        }
    }
    let mut state = initial_state(&clean.protocol)?;
    state = execute_round(&state, &Round::new(Party::Bob, prep, vec![]), x)?;
    for round in &clean.protocol.rounds {
        state = execute_round(&state, round, x)?;
    }
    Ok(state)
}

/// Reversibility check: for every `(x, y)` basis input the final state
/// must be supported on `y`-register value `y`, an `x`-consistent basis
/// state on all other non-answer qubits, and anything on the answer.
fn check_clean(clean: &CleanIpProtocol) -> Result<()> {
    let n = clean.n();
    let p = &clean.protocol;
    let total = p.total_qubits();
    let non_answer: Vec<usize> = (0..total)
        .filter(|&q| q != clean.answer && !clean.y_register.contains(&q))
        .collect();
    for xv in 0..1usize << p.n_message {
        let x = BitString::from_index(xv, p.n_message);
        let mut rest_value: Option<usize> = None;
        for y in 0..1usize << n {
            let state = probe_state(clean, &x, y)?;
            // Locate the dominant basis state and check the support.
            let mut mass_ok = 0.0;
            let mut rest_here: Option<usize> = None;
            for i in 0..state.vec.dim() {
                let prob = state.vec.amp(i).norm_sqr();
                if prob < 1e-12 {
                    continue;
                }
                let y_bits = crate::bits::gather_bits(i, &clean.y_register, total);
                let rest_bits = crate::bits::gather_bits(i, &non_answer, total);
                if y_bits != y {
                    return Err(Error::Protocol(format!(
                        "not clean: y register moved on input x={xv}, y={y}"
                    )));
                }
                match rest_here {
                    None => rest_here = Some(rest_bits),
                    Some(v) if v != rest_bits => {
                        return Err(Error::Protocol(format!(
                            "not clean: side registers in superposition on x={xv}, y={y}"
                        )))
                    }
                    _ => {}
                }
                mass_ok += prob;
            }
            if (mass_ok - 1.0).abs() > 1e-9 {
                return Err(Error::Protocol(format!(
                    "not clean: support leaks on x={xv}, y={y}"
                )));
            }
            match (rest_value, rest_here) {
                (None, v) => rest_value = v,
                (Some(a), Some(b)) if a != b => {
                    return Err(Error::Protocol(format!(
                        "not clean: side registers depend on y for x={xv}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(())
}

/// Invert a round's gate list: reversed order, daggered gates, same
/// conditions.
fn inverse_ops(ops: &[GateOp]) -> Vec<GateOp> {
    ops.iter()
        .rev()
        .map(|op| GateOp {
            condition: op.condition,
            gate: op.gate.dagger(),
            targets: op.targets.clone(),
        })
        .collect()
}

/// Compile a clean IP protocol into a transmission protocol and measure
/// its exact recovery probability.
///
/// The compiled rounds are: Hadamards on Bob's `y` register, the forward
/// protocol, a phase flip on the answer qubit, the reversed protocol
/// (sends returned by the receiving party), Hadamards again; Bob then
/// measures the `y` register.
pub fn reduce_ip_to_transmission(clean: &CleanIpProtocol) -> Result<ReductionReport> {
    let n = clean.n();
    clean.protocol.validate()?;
    check_clean(clean)?;

    let mut rounds = Vec::new();
    let hadamards = |qs: &[usize]| {
        qs.iter()
            .map(|&q| GateOp::new(Gate::H, vec![q]))
            .collect::<Vec<_>>()
    };
    rounds.push(Round::new(Party::Bob, hadamards(&clean.y_register), vec![]));
    rounds.extend(clean.protocol.rounds.iter().cloned());
    rounds.push(Round::new(
        Party::Bob,
        vec![GateOp::new(Gate::Z, vec![clean.answer])],
        vec![],
    ));
    for round in clean.protocol.rounds.iter().rev() {
        if !round.send.is_empty() {
            rounds.push(Round::new(round.actor.other(), vec![], round.send.clone()));
        }
        if !round.ops.is_empty() {
            rounds.push(Round::new(round.actor, inverse_ops(&round.ops), vec![]));
        }
    }
    rounds.push(Round::new(Party::Bob, hadamards(&clean.y_register), vec![]));

    let transmission = Protocol {
        name: format!("{}_transmission", clean.protocol.name),
        schmidt_coeffs: clean.protocol.schmidt_coeffs.clone(),
        e: clean.protocol.e,
        n_message: clean.protocol.n_message,
        alice_work: clean.protocol.alice_work,
        bob_work: clean.protocol.bob_work,
        rounds,
        outputs: clean.y_register.clone(),
    };
    transmission.validate()?;

    let mut per_message = Vec::with_capacity(1 << n);
    for xv in 0..1usize << n {
        let x = BitString::from_index(xv, n);
        let state = run_protocol(&transmission, &x)?;
        let dist = output_distribution(&state, &transmission.outputs)?;
        per_message.push(dist[xv]);
    }
    let recovery = per_message.iter().copied().fold(f64::INFINITY, f64::min);
    Ok(ReductionReport {
        transmission,
        recovery,
        per_message,
    })
}
