//! Exact simulation and verification of two-party quantum communication
//! protocols with prior entanglement.
//!
//! The crate has three layers:
//!
//! - [`linalg`]: dense complex vectors/operators over qubit registers,
//!   with tensor products, partial traces, Schmidt decomposition, and
//!   pseudo-inverse square roots.
//! - [`model`]: the two-party protocol executor — a joint statevector
//!   plus an ownership ledger, round execution (local unitary + qubit
//!   transfer), and exact success probabilities over a uniform message.
//! - verification: [`certificate`] maintains the round-by-round state
//!   form `Σ_a |a⟩_A Λ|φ_a⟩_B` with `Tr(ΛΛ†) = 2^{2m_A}` and checks it
//!   against the executor; [`coding`] builds one-way encoding ensembles
//!   and decoders (pretty-good measurement, Helstrom, Bell) and checks
//!   the recovery bound `Pr[Y=X] ≤ 2^{2m_A}/2^n`; [`ip`] holds the inner
//!   product protocols and the reduction from transmission.
//!
//! Protocols can be built programmatically or parsed from `.qcp` files
//! via [`dsl`].

pub mod bits;
pub mod certificate;
pub mod coding;
pub mod dsl;
pub mod error;
pub mod exec;
pub mod ip;
pub mod linalg;
pub mod model;
pub mod testgen;
pub mod tol;

pub use error::{Error, Result};
