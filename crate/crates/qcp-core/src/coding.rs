//! One-way encoding schemes and decoders.
//!
//! An encoding scheme fixes a shared state `Σ_a √λ_a |a⟩_A|a⟩_B` on `E`
//! qubits per side and a family of encoders `{V_x}`. Alice applies `V_x`
//! and sends her `m` rightmost qubits; Bob then holds `E + m` qubits in
//! the mixed state
//!
//! - uniform λ (shared EPR pairs): `{ 2^{-(E-m)}, |φ_{x,l}⟩ }` with the
//!   orthonormal states `φ_{x,l} = 2^{-m/2} Σ_r |r⟩ V_xᵀ|lr⟩`;
//! - arbitrary λ: the subnormalized family
//!   `{ 2^{m/2} (I_m ⊗ Λ)|φ_{x,l}⟩ }` with `Λ = Σ_a √λ_a |a⟩⟨a|`.
//!
//! Decoders are plain POVMs; the recovery probability of any of them is
//! bounded by `2^{2m}/2^n`, with superdense coding meeting the bound
//! exactly.

use crate::error::{Error, Result};
use crate::exec;
use crate::linalg::{
    pgm_sqrt_inv, positive_negative_projectors, trace_norm_hermitian, CMat, CVec, C64,
};
use crate::model::{Gate, GateOp, Party, Protocol, Round};
use crate::tol;

/// One-way encoding scheme over a shared entangled state.
#[derive(Debug, Clone)]
pub struct EncodingScheme {
    /// Shared qubits per side.
    pub e: usize,
    /// Qubits Alice sends.
    pub m: usize,
    /// Message bits.
    pub n: usize,
    /// `V_x` on `e` qubits, indexed by the message `x`.
    pub encoders: Vec<CMat>,
    /// λ_a of the shared state, length `2^e`; uniform for EPR pairs.
    pub schmidt_coeffs: Vec<f64>,
}

impl EncodingScheme {
    /// A scheme over `e` shared EPR pairs.
    pub fn uniform(e: usize, m: usize, n: usize, encoders: Vec<CMat>) -> Self {
        EncodingScheme {
            e,
            m,
            n,
            encoders,
            schmidt_coeffs: vec![1.0 / (1 << e) as f64; 1 << e],
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.m > self.e {
            return Err(Error::Scheme(format!(
                "sends {} qubits from {} shared",
                self.m, self.e
            )));
        }
        if self.encoders.len() != 1 << self.n {
            return Err(Error::Scheme(format!(
                "expected {} encoders, got {}",
                1 << self.n,
                self.encoders.len()
            )));
        }
        for (x, v) in self.encoders.iter().enumerate() {
            if v.row_qubits() != self.e || !v.is_square() {
                return Err(Error::Scheme(format!(
                    "encoder {x} is {}x{}, expected {} qubits",
                    v.rows(),
                    v.cols(),
                    self.e
                )));
            }
            v.check_unitary(tol::UNITARITY)?;
        }
        if self.schmidt_coeffs.len() != 1 << self.e {
            return Err(Error::SchmidtCoefficients(format!(
                "expected {} coefficients, got {}",
                1 << self.e,
                self.schmidt_coeffs.len()
            )));
        }
        let sum: f64 = self.schmidt_coeffs.iter().sum();
        if (sum - 1.0).abs() > tol::NORMALIZATION || self.schmidt_coeffs.iter().any(|&l| l < 0.0) {
            return Err(Error::SchmidtCoefficients(format!(
                "coefficients sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }

    /// Whether the shared state is exactly maximally entangled.
    pub fn is_uniform(&self) -> bool {
        let expected = 1.0 / (1 << self.e) as f64;
        self.schmidt_coeffs
            .iter()
            .all(|&l| (l - expected).abs() < 1e-12)
    }

    /// The protocol realizing this scheme for one fixed message: Alice
    /// applies `V_x` to her half and sends her rightmost `m` qubits.
    pub fn protocol_for(&self, x: usize) -> Protocol {
        Protocol {
            name: format!("encode{x}"),
            schmidt_coeffs: self.schmidt_coeffs.clone(),
            e: self.e,
            n_message: 0,
            alice_work: 0,
            bob_work: 0,
            rounds: vec![Round::new(
                Party::Alice,
                vec![GateOp::new(
                    Gate::Mat(self.encoders[x].clone()),
                    (0..self.e).collect(),
                )],
                (self.e - self.m..self.e).collect(),
            )],
            outputs: vec![],
        }
    }

    /// Bob's qubits after the send, in ensemble order: the `m` received
    /// qubits then his own half.
    pub fn bob_qubits(&self) -> Vec<usize> {
        (self.e - self.m..self.e)
            .chain(self.e..2 * self.e)
            .collect()
    }
}

/// One weighted (possibly subnormalized) pure state of an ensemble.
#[derive(Debug, Clone)]
pub struct WeightedState {
    pub weight: f64,
    pub state: CVec,
}

/// The mixed state Bob holds for one message.
#[derive(Debug, Clone)]
pub struct EnsembleEntry {
    pub states: Vec<WeightedState>,
}

impl EnsembleEntry {
    /// Σ w_l |s_l⟩⟨s_l|.
    pub fn density(&self) -> CMat {
        let dim = self.states[0].state.dim();
        let mut rho = CMat::zeros(dim, dim);
        for ws in &self.states {
            rho = rho.add(&ws.state.outer(&ws.state).scale(C64::new(ws.weight, 0.0)));
        }
        rho
    }

    /// Σ w_l ‖s_l‖², which is 1 for a well-formed entry.
    pub fn total_weight(&self) -> f64 {
        self.states
            .iter()
            .map(|ws| ws.weight * ws.state.norm().powi(2))
            .sum()
    }

    /// Max deviation of the pairwise Gram matrix from I (meaningful for
    /// the EPR form, whose states are orthonormal).
    pub fn gram_residual(&self) -> f64 {
        let mut worst = 0.0f64;
        for (i, a) in self.states.iter().enumerate() {
            for (j, b) in self.states.iter().enumerate() {
                let g = a.state.inner(&b.state);
                let expect = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((g - C64::new(expect, 0.0)).norm());
            }
        }
        worst
    }
}

/// Per-message ensembles for every `x ∈ {0,1}^n`.
#[derive(Debug, Clone)]
pub struct Ensemble {
    pub n: usize,
    pub entries: Vec<EnsembleEntry>,
}

impl Ensemble {
    /// Wrap per-message state families with unit weights (the
    /// subnormalized convention used by certificate outputs).
    pub fn from_state_families(n: usize, families: Vec<Vec<CVec>>) -> Self {
        let entries = families
            .into_iter()
            .map(|states| EnsembleEntry {
                states: states
                    .into_iter()
                    .map(|state| WeightedState { weight: 1.0, state })
                    .collect(),
            })
            .collect();
        Ensemble { n, entries }
    }
}

/// A finite measurement: one PSD element per outcome `y ∈ {0,1}^n`, plus
/// an optional reject element completing the identity.
#[derive(Debug, Clone)]
pub struct Povm {
    pub elements: Vec<CMat>,
    pub reject: Option<CMat>,
}

impl Povm {
    /// Completeness (Σ elements = I within 1e-8) and per-element PSD.
    pub fn validate(&self) -> Result<()> {
        let dim = self.elements[0].rows();
        let qubits = dim.trailing_zeros() as usize;
        let mut sum = CMat::zeros(dim, dim);
        for e in self.elements.iter().chain(self.reject.iter()) {
            let eigs = crate::linalg::hermitian_eigenvalues(e);
            let min = eigs.last().copied().unwrap_or(0.0);
            if min < tol::PSD_MIN_EIGENVALUE {
                return Err(Error::NotPsd {
                    min_eigenvalue: min,
                });
            }
            sum = sum.add(e);
        }
        let deviation = sum.max_abs_diff(&CMat::identity(qubits));
        if deviation > tol::POVM_COMPLETENESS {
            return Err(Error::Scheme(format!(
                "POVM elements sum to I only within {deviation:.3e}"
            )));
        }
        Ok(())
    }
}

/// The orthonormal EPR-form states `φ_{x,l} = 2^{-m/2} Σ_r |r⟩ V_xᵀ|lr⟩`.
fn epr_states(s: &EncodingScheme, x: usize) -> Vec<CVec> {
    let v = &s.encoders[x];
    let dim_e = 1usize << s.e;
    let dim_m = 1usize << s.m;
    let scale = C64::new((1.0 / dim_m as f64).sqrt(), 0.0);
    (0..1usize << (s.e - s.m))
        .map(|l| {
            let mut amps = vec![C64::new(0.0, 0.0); dim_m * dim_e];
            for r in 0..dim_m {
                let a = (l << s.m) | r;
                // V_xᵀ|a⟩ is the a-th row of V_x, read as a column.
                for i in 0..dim_e {
                    amps[r * dim_e + i] = scale * v.entry(a, i);
                }
            }
            CVec::from_amplitudes(amps).expect("power-of-two dimension")
        })
        .collect()
}

/// Bob's ensemble for message `x` over shared EPR pairs: orthonormal
/// states with weights exactly `2^{-(E-m)}`.
pub fn epr_ensemble(s: &EncodingScheme, x: usize) -> Result<EnsembleEntry> {
    if !s.is_uniform() {
        return Err(Error::Scheme(
            "EPR ensemble over a non-uniform shared state; use the general form".into(),
        ));
    }
    let weight = 1.0 / (1usize << (s.e - s.m)) as f64;
    Ok(EnsembleEntry {
        states: epr_states(s, x)
            .into_iter()
            .map(|state| WeightedState { weight, state })
            .collect(),
    })
}

/// Bob's ensemble for message `x` over an arbitrary shared state: the
/// subnormalized states `2^{m/2} (I_m ⊗ Λ)|φ_{x,l}⟩`.
pub fn general_ensemble(s: &EncodingScheme, x: usize) -> Result<EnsembleEntry> {
    let dim_e = 1usize << s.e;
    let scale = C64::new(((1usize << s.m) as f64).sqrt(), 0.0);
    let states = epr_states(s, x)
        .into_iter()
        .map(|phi| {
            // (I_m ⊗ Λ) is diagonal: entry (r·2^E + a) scales by √λ_a.
            let amps = (0..phi.dim())
                .map(|i| phi.amp(i) * scale * C64::new(s.schmidt_coeffs[i % dim_e].sqrt(), 0.0))
                .collect();
            CVec::from_amplitudes(amps).expect("power-of-two dimension")
        })
        .map(|state| WeightedState { weight: 1.0, state })
        .collect();
    Ok(EnsembleEntry { states })
}

/// Ensemble for one message, dispatching on the shared-state shape.
pub fn ensemble(s: &EncodingScheme, x: usize) -> Result<EnsembleEntry> {
    if s.is_uniform() {
        epr_ensemble(s, x)
    } else {
        general_ensemble(s, x)
    }
}

/// Ensembles for all messages.
pub fn full_ensemble(s: &EncodingScheme) -> Result<Ensemble> {
    s.validate()?;
    let entries = (0..1usize << s.n)
        .map(|x| ensemble(s, x))
        .collect::<Result<Vec<_>>>()?;
    Ok(Ensemble { n: s.n, entries })
}

/// The superdense coding scheme on `m` EPR pairs: `n = 2m`, encoders
/// `V_x = ⊗_j Z^{x_{2j}} X^{x_{2j+1}}`.
pub fn superdense_scheme(m: usize) -> EncodingScheme {
    let encoders = (0..1usize << (2 * m))
        .map(|x| {
            let mut v = CMat::identity(0);
            for j in 0..m {
                let b0 = (x >> (2 * m - 1 - 2 * j)) & 1;
                let b1 = (x >> (2 * m - 1 - (2 * j + 1))) & 1;
                let mut pair = CMat::identity(1);
                if b1 == 1 {
                    pair = Gate::X.matrix().mul_mat(&pair);
                }
                if b0 == 1 {
                    pair = Gate::Z.matrix().mul_mat(&pair);
                }
                v = v.tensor(&pair);
            }
            v
        })
        .collect();
    EncodingScheme::uniform(m, m, 2 * m, encoders)
}

/// The Bell-measurement decoder matching [`superdense_scheme`]: CNOT and
/// H per pair, then a computational readout rearranged into message
/// order.
pub fn superdense_decoder(m: usize) -> Povm {
    let total = 2 * m;
    let mut decode = CMat::identity(total);
    for j in 0..m {
        let cnot =
            crate::linalg::embed(&Gate::Cnot.matrix(), &[j, m + j], total).expect("targets fit");
        let h = crate::linalg::embed(&Gate::H.matrix(), &[j], total).expect("targets fit");
        decode = h.mul_mat(&cnot.mul_mat(&decode));
    }
    let decode_dagger = decode.dagger();
    let elements = (0..1usize << total)
        .map(|y| {
            // Outcome bit 2j is read on received qubit j, bit 2j+1 on
            // Bob's qubit j.
            let mut measured = 0usize;
            for j in 0..m {
                let b0 = (y >> (total - 1 - 2 * j)) & 1;
                let b1 = (y >> (total - 1 - (2 * j + 1))) & 1;
                measured |= b0 << (total - 1 - j);
                measured |= b1 << (total - 1 - (m + j));
            }
            let col = decode_dagger.column(measured);
            col.outer(&col)
        })
        .collect();
    Povm {
        elements,
        reject: None,
    }
}

/// The pretty-good measurement for an ensemble: elements
/// `ρ^{-1/2} (2^{-n} ρ_x) ρ^{-1/2}` on the support of the average state
/// `ρ`, plus the complement projector as a reject outcome.
pub fn pgm_decoder(ens: &Ensemble) -> Result<Povm> {
    let count = ens.entries.len();
    let densities: Vec<CMat> = ens.entries.iter().map(|e| e.density()).collect();
    let dim = densities[0].rows();
    let prior = C64::new(1.0 / count as f64, 0.0);
    let mut avg = CMat::zeros(dim, dim);
    for rho in &densities {
        avg = avg.add(&rho.scale(prior));
    }
    let root = pgm_sqrt_inv(&avg, tol::PINV_CUTOFF_REL)?;
    let elements: Vec<CMat> = densities
        .iter()
        .map(|rho| root.mul_mat(&rho.scale(prior)).mul_mat(&root))
        .collect();
    let mut sum = CMat::zeros(dim, dim);
    for e in &elements {
        sum = sum.add(e);
    }
    let qubits = dim.trailing_zeros() as usize;
    let reject = CMat::identity(qubits).sub(&sum);
    Ok(Povm {
        elements,
        reject: Some(reject),
    })
}

/// The optimal binary decoder for two equiprobable states: projectors
/// onto the positive/negative eigenspaces of `rho0 − rho1`.
pub fn helstrom_decoder(rho0: &CMat, rho1: &CMat) -> Result<Povm> {
    if rho0.rows() != rho1.rows() || !rho0.is_square() || !rho1.is_square() {
        return Err(Error::Dimension("helstrom on mismatched shapes".into()));
    }
    let (pos, neg) = positive_negative_projectors(&rho0.sub(rho1));
    Ok(Povm {
        elements: vec![pos, neg],
        reject: None,
    })
}

/// Closed-form optimum for the binary case: `1/2 + ‖ρ0 − ρ1‖_tr / 4`.
pub fn helstrom_success(rho0: &CMat, rho1: &CMat) -> f64 {
    0.5 + trace_norm_hermitian(&rho0.sub(rho1)) / 4.0
}

fn entry_success(entry: &EnsembleEntry, element: &CMat) -> f64 {
    entry
        .states
        .iter()
        .map(|ws| {
            let moved = element.mul_vec(&ws.state);
            ws.weight * ws.state.inner(&moved).re
        })
        .sum()
}

/// `Pr[C] = 2^{-n} Σ_{x,l} w_{x,l} ⟨φ_{x,l}| E_x |φ_{x,l}⟩`, evaluating
/// messages in parallel when enabled.
pub fn decode_success(ens: &Ensemble, d: &Povm) -> Result<f64> {
    check_decoder_dims(ens, d)?;
    let per_message = exec::maybe_par_map((0..ens.entries.len()).collect::<Vec<_>>(), |x| {
        entry_success(&ens.entries[x], &d.elements[x])
    });
    Ok(per_message.iter().sum::<f64>() / ens.entries.len() as f64)
}

/// Sequential baseline for [`decode_success`].
pub fn decode_success_seq(ens: &Ensemble, d: &Povm) -> Result<f64> {
    check_decoder_dims(ens, d)?;
    let per_message = exec::seq_map((0..ens.entries.len()).collect::<Vec<_>>(), |x| {
        entry_success(&ens.entries[x], &d.elements[x])
    });
    Ok(per_message.iter().sum::<f64>() / ens.entries.len() as f64)
}

fn check_decoder_dims(ens: &Ensemble, d: &Povm) -> Result<()> {
    if d.elements.len() < ens.entries.len() {
        return Err(Error::Dimension(format!(
            "{} POVM outcomes against {} messages",
            d.elements.len(),
            ens.entries.len()
        )));
    }
    let dim = ens.entries[0].states[0].state.dim();
    if d.elements[0].rows() != dim {
        return Err(Error::Dimension(format!(
            "POVM on dim {} against states of dim {dim}",
            d.elements[0].rows()
        )));
    }
    Ok(())
}

/// The recovery bound `2^{2 m_A} / 2^n`, capped at 1.
pub fn bound_rhs(n: usize, m_a: usize) -> f64 {
    (2f64.powi(2 * m_a as i32 - n as i32)).min(1.0)
}

/// Outcome of checking one scheme/decoder pair against the bound.
#[derive(Debug, Clone)]
pub struct BoundReport {
    pub success: f64,
    pub rhs: f64,
    pub margin: f64,
    pub tight: bool,
}

/// Evaluate a decoder on a scheme's ensembles and compare against
/// `2^{2m}/2^n`.
pub fn check_encoding_bound(s: &EncodingScheme, d: &Povm) -> Result<BoundReport> {
    let ens = full_ensemble(s)?;
    let success = decode_success(&ens, d)?;
    let rhs = bound_rhs(s.n, s.m);
    let margin = rhs - success;
    Ok(BoundReport {
        success,
        rhs,
        margin,
        tight: margin <= tol::TIGHTNESS,
    })
}
