//! Semantic validation: AST → executable [`Protocol`].

use std::collections::HashMap;

use super::{
    EntHeader, GateAst, ProtocolAst, QubitRef, StmtAst, ValidationError, ALICE_ENT_REG, BOB_ENT_REG,
};
use crate::linalg::CMat;
use crate::model::{Gate, GateOp, Party, Protocol, Round};
use crate::tol;

struct RegInfo {
    start: usize,
    size: usize,
}

/// Check an AST and produce the executable protocol.
///
/// DSL round blocks may interleave `apply` and `send`; each `send` closes
/// one executor round, so a block compiles to as many rounds as it has
/// sends (plus one for trailing gates).
pub fn validate(ast: &ProtocolAst) -> Result<Protocol, ValidationError> {
    let (e, schmidt_coeffs) = match &ast.entanglement {
        EntHeader::Epr(e) => (*e, vec![1.0 / (1usize << e) as f64; 1 << e]),
        EntHeader::Schmidt(coeffs) => {
            if coeffs.is_empty() || !coeffs.len().is_power_of_two() {
                return Err(ValidationError::new(format!(
                    "schmidt coefficient list length {} is not a power of two",
                    coeffs.len()
                )));
            }
            if coeffs.iter().any(|&l| l < 0.0) {
                return Err(ValidationError::new(
                    "schmidt coefficients must be non-negative",
                ));
            }
            let sum: f64 = coeffs.iter().sum();
            if (sum - 1.0).abs() > tol::NORMALIZATION {
                return Err(ValidationError::new(format!(
                    "schmidt coefficients sum to {sum}, expected 1"
                )));
            }
            (coeffs.len().trailing_zeros() as usize, coeffs.clone())
        }
    };

    for decl in &ast.decls {
        if decl.name == ALICE_ENT_REG || decl.name == BOB_ENT_REG {
            return Err(ValidationError::new(format!(
                "register name \"{}\" is reserved for the entanglement half",
                decl.name
            )));
        }
    }

    let alice_work: usize = ast
        .decls
        .iter()
        .filter(|d| d.party == Party::Alice)
        .map(|d| d.size)
        .sum();
    let bob_work: usize = ast
        .decls
        .iter()
        .filter(|d| d.party == Party::Bob)
        .map(|d| d.size)
        .sum();

    // Layout: [ea][alice decls][eb][bob decls].
    let mut regs: HashMap<&str, RegInfo> = HashMap::new();
    regs.insert(ALICE_ENT_REG, RegInfo { start: 0, size: e });
    regs.insert(
        BOB_ENT_REG,
        RegInfo {
            start: e + alice_work,
            size: e,
        },
    );
    let mut next_alice = e;
    let mut next_bob = 2 * e + alice_work;
    for decl in &ast.decls {
        let start = match decl.party {
            Party::Alice => {
                let s = next_alice;
                next_alice += decl.size;
                s
            }
            Party::Bob => {
                let s = next_bob;
                next_bob += decl.size;
                s
            }
        };
        regs.insert(
            &decl.name,
            RegInfo {
                start,
                size: decl.size,
            },
        );
    }

    let resolve = |q: &QubitRef| -> Result<Vec<usize>, ValidationError> {
        let info = regs
            .get(q.reg.as_str())
            .ok_or_else(|| ValidationError::new(format!("undeclared register \"{}\"", q.reg)))?;
        match q.index {
            Some(i) if i >= info.size => Err(ValidationError::new(format!(
                "qubit {}[{i}] out of range (size {})",
                q.reg, info.size
            ))),
            Some(i) => Ok(vec![info.start + i]),
            None => Ok((info.start..info.start + info.size).collect()),
        }
    };
    let resolve_list = |qs: &[QubitRef]| -> Result<Vec<usize>, ValidationError> {
        let mut out = Vec::new();
        for q in qs {
            out.extend(resolve(q)?);
        }
        Ok(out)
    };

    let mut rounds = Vec::new();
    for round in &ast.rounds {
        let mut ops: Vec<GateOp> = Vec::new();
        let mut emitted = false;
        for stmt in &round.stmts {
            match stmt {
                StmtAst::Apply {
                    condition,
                    gate,
                    targets,
                } => {
                    if condition.is_some() && round.party == Party::Bob {
                        return Err(ValidationError::new("input-conditioned gate by bob"));
                    }
                    if let Some(bit) = condition {
                        if *bit >= ast.n {
                            return Err(ValidationError::new(format!(
                                "condition x[{bit}] out of range for n = {}",
                                ast.n
                            )));
                        }
                    }
                    let gate = build_gate(gate)?;
                    let targets = resolve_list(targets)?;
                    if targets.len() != gate.qubits() {
                        return Err(ValidationError::new(format!(
                            "gate on {} qubits given {} targets",
                            gate.qubits(),
                            targets.len()
                        )));
                    }
                    ops.push(GateOp {
                        condition: *condition,
                        gate,
                        targets,
                    });
                }
                StmtAst::Send { qubits } => {
                    rounds.push(Round::new(
                        round.party,
                        std::mem::take(&mut ops),
                        resolve_list(qubits)?,
                    ));
                    emitted = true;
                }
            }
        }
        if !ops.is_empty() || !emitted {
            rounds.push(Round::new(round.party, ops, vec![]));
        }
    }

    let protocol = Protocol {
        name: ast.name.clone(),
        schmidt_coeffs,
        e,
        n_message: ast.n,
        alice_work,
        bob_work,
        rounds,
        outputs: resolve_list(&ast.outputs)?,
    };
    protocol
        .validate()
        .map_err(|err| ValidationError::new(err.to_string()))?;
    Ok(protocol)
}

fn build_gate(gate: &GateAst) -> Result<Gate, ValidationError> {
    match gate {
        GateAst::Named(name) => Ok(match name.as_str() {
            "I" => Gate::I,
            "X" => Gate::X,
            "Y" => Gate::Y,
            "Z" => Gate::Z,
            "H" => Gate::H,
            "S" => Gate::S,
            "T" => Gate::T,
            "CNOT" => Gate::Cnot,
            "SWAP" => Gate::Swap,
            other => {
                return Err(ValidationError::new(format!("unknown gate \"{other}\"")));
            }
        }),
        GateAst::Mat { qubits, entries } => {
            let dim = 1usize << qubits;
            if entries.len() != dim * dim {
                return Err(ValidationError::new(format!(
                    "mat {qubits} expects {} entries, got {}",
                    dim * dim,
                    entries.len()
                )));
            }
            let m = CMat::from_row_major(dim, dim, entries.clone())
                .map_err(|err| ValidationError::new(err.to_string()))?;
            m.check_unitary(tol::UNITARITY).map_err(|_| {
                ValidationError::new(format!(
                    "non-unitary matrix literal (deviation {:.3e})",
                    m.unitarity_deviation().unwrap_or(f64::INFINITY)
                ))
            })?;
            Ok(Gate::Mat(m))
        }
    }
}
