//! Built-in demonstration constructions with CSV/JSON rows.

use serde::Serialize;

use qcp_core::bits::BitString;
use qcp_core::certificate::certify_protocol;
use qcp_core::coding::{bound_rhs, check_encoding_bound, superdense_decoder, superdense_scheme};
use qcp_core::ip::{
    classical_ip_protocol, exact_ip_protocol, ip_lower_bound, quantum_ip_protocol,
    reduce_ip_to_transmission, rotated_ip_protocol, t_for_epsilon,
};

use crate::CliError;

/// Rows plus their CSV header; every demo returns one of these.
pub struct DemoOutput {
    pub header: &'static str,
    pub rows: Vec<String>,
    pub json: Vec<serde_json::Value>,
}

#[derive(Serialize)]
struct SuperdenseRow {
    m: usize,
    n: usize,
    #[serde(rename = "qubitsSent")]
    qubits_sent: usize,
    #[serde(rename = "successExact")]
    success_exact: f64,
    #[serde(rename = "boundRhs")]
    bound_rhs: f64,
    margin: f64,
    tight: bool,
}

/// Superdense coding on `m` EPR pairs, checked against `2^{2m}/2^{2m}`.
pub fn superdense(m_flag: Option<usize>) -> Result<DemoOutput, CliError> {
    let ms: Vec<usize> = match m_flag {
        Some(m) if m >= 1 => vec![m],
        Some(_) => return Err(CliError::input("--m must be at least 1")),
        None => vec![1, 2, 3],
    };
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for m in ms {
        if m > 5 {
            return Err(CliError::cap(4 * m, 20));
        }
        let scheme = superdense_scheme(m);
        let decoder = superdense_decoder(m);
        let report = check_encoding_bound(&scheme, &decoder).map_err(CliError::from_core)?;
        let row = SuperdenseRow {
            m,
            n: 2 * m,
            qubits_sent: m,
            success_exact: report.success,
            bound_rhs: report.rhs,
            margin: report.margin,
            tight: report.tight,
        };
        rows.push(format!(
            "{},{},{},{},{},{},{}",
            row.m, row.n, row.qubits_sent, row.success_exact, row.bound_rhs, row.margin, row.tight
        ));
        json.push(serde_json::to_value(&row).expect("serializable row"));
    }
    Ok(DemoOutput {
        header: "m,n,qubitsSent,successExact,boundRhs,margin,tight",
        rows,
        json,
    })
}

#[derive(Serialize)]
struct ClassicalIpRow {
    n: usize,
    t: usize,
    bits: usize,
    success: f64,
    epsilon: f64,
    #[serde(rename = "inputIndependent")]
    input_independent: bool,
    #[serde(rename = "lowerBoundQubits")]
    lower_bound_qubits: f64,
}

fn resolve_ts(n: usize, t_flag: Option<usize>, eps: Option<f64>) -> Result<Vec<usize>, CliError> {
    match (t_flag, eps) {
        (Some(t), _) => Ok(vec![t]),
        (None, Some(eps)) => Ok(vec![t_for_epsilon(n, eps).map_err(CliError::from_core)?]),
        (None, None) => Ok((1..=n).collect()),
    }
}

/// The public-coin classical protocol, enumerated exactly.
pub fn ip_classical(
    n: usize,
    t_flag: Option<usize>,
    eps: Option<f64>,
) -> Result<DemoOutput, CliError> {
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for t in resolve_ts(n, t_flag, eps)? {
        let r = classical_ip_protocol(n, t).map_err(CliError::from_core)?;
        let row = ClassicalIpRow {
            n,
            t,
            bits: r.bits,
            success: r.success(),
            epsilon: r.epsilon(),
            input_independent: r.input_independent,
            lower_bound_qubits: ip_lower_bound(n, r.epsilon()).map_err(CliError::from_core)?,
        };
        rows.push(format!(
            "{},{},{},{},{},{},{}",
            row.n,
            row.t,
            row.bits,
            row.success,
            row.epsilon,
            row.input_independent,
            row.lower_bound_qubits
        ));
        json.push(serde_json::to_value(&row).expect("serializable row"));
    }
    Ok(DemoOutput {
        header: "n,t,bits,success,epsilon,inputIndependent,lowerBoundQubits",
        rows,
        json,
    })
}

#[derive(Serialize)]
struct QuantumIpRow {
    n: usize,
    t: usize,
    #[serde(rename = "classicalBits")]
    classical_bits: usize,
    qubits: usize,
    success: f64,
    epsilon: f64,
    #[serde(rename = "lowerBoundQubits")]
    lower_bound_qubits: f64,
}

/// The superdense-coded version, verified by full transport simulation.
pub fn ip_quantum(
    n: usize,
    t_flag: Option<usize>,
    eps: Option<f64>,
) -> Result<DemoOutput, CliError> {
    let mut rows = Vec::new();
    let mut json = Vec::new();
    for t in resolve_ts(n, t_flag, eps)? {
        let r = quantum_ip_protocol(n, t).map_err(CliError::from_core)?;
        let row = QuantumIpRow {
            n,
            t,
            classical_bits: r.classical_bits,
            qubits: r.quantum_qubits,
            success: r.success_exact,
            epsilon: r.epsilon_target,
            lower_bound_qubits: r.lower_bound_qubits,
        };
        rows.push(format!(
            "{},{},{},{},{},{},{}",
            row.n,
            row.t,
            row.classical_bits,
            row.qubits,
            row.success,
            row.epsilon,
            row.lower_bound_qubits
        ));
        json.push(serde_json::to_value(&row).expect("serializable row"));
    }
    Ok(DemoOutput {
        header: "n,t,classicalBits,qubits,success,epsilon,lowerBoundQubits",
        rows,
        json,
    })
}

#[derive(Serialize)]
struct ReductionRow {
    n: usize,
    eps: f64,
    recovery: f64,
    expected: f64,
    #[serde(rename = "m_A")]
    m_a: usize,
    #[serde(rename = "m_B")]
    m_b: usize,
    #[serde(rename = "boundRhs")]
    bound_rhs: f64,
    #[serde(rename = "certResidual")]
    cert_residual: f64,
}

/// Compile an IP protocol into a transmission protocol, measure its
/// recovery, and certify the compiled rounds.
pub fn ip_reduction(n: usize, eps: f64) -> Result<DemoOutput, CliError> {
    if n == 0 || n > 3 {
        return Err(CliError::input(
            "--n must be between 1 and 3 for the reduction",
        ));
    }
    let clean = if eps == 0.0 {
        exact_ip_protocol(n)
    } else {
        rotated_ip_protocol(n, eps).map_err(CliError::from_core)?
    };
    let report = reduce_ip_to_transmission(&clean).map_err(CliError::from_core)?;
    let p = &report.transmission;
    let mut cert_residual = 0.0f64;
    for xv in 0..1usize << n {
        let cert =
            certify_protocol(p, &BitString::from_index(xv, n)).map_err(CliError::from_core)?;
        cert_residual = cert_residual
            .max(cert.reconstruction_residual())
            .max(cert.trace_residual());
    }
    let expected = (1.0 - 2.0 * eps) * (1.0 - 2.0 * eps);
    let row = ReductionRow {
        n,
        eps,
        recovery: report.recovery,
        expected,
        m_a: p.m_a(),
        m_b: p.m_b(),
        bound_rhs: bound_rhs(n, p.m_a()),
        cert_residual,
    };
    let rows = vec![format!(
        "{},{},{},{},{},{},{},{}",
        row.n,
        row.eps,
        row.recovery,
        row.expected,
        row.m_a,
        row.m_b,
        row.bound_rhs,
        row.cert_residual
    )];
    let json = vec![serde_json::to_value(&row).expect("serializable row")];
    Ok(DemoOutput {
        header: "n,eps,recovery,expected,m_A,m_B,boundRhs,certResidual",
        rows,
        json,
    })
}
