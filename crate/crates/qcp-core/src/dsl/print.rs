//! Canonical printing. `parse(print(ast)) == ast`, and printing an
//! already-canonical source reproduces it byte for byte.

use std::fmt::Write;

use super::{EntHeader, GateAst, ProtocolAst, QubitRef, StmtAst};
use crate::linalg::C64;
use crate::model::Party;

fn fmt_real(v: f64) -> String {
    // Fold negative zero so reprints are stable.
    let v = if v == 0.0 { 0.0 } else { v };
    format!("{v}")
}

fn fmt_complex(c: C64) -> String {
    let re = if c.re == 0.0 { 0.0 } else { c.re };
    let im = if c.im == 0.0 { 0.0 } else { c.im };
    if im < 0.0 {
        format!("{}-{}i", fmt_real(re), fmt_real(-im))
    } else {
        format!("{}+{}i", fmt_real(re), fmt_real(im))
    }
}

fn fmt_qref(q: &QubitRef) -> String {
    match q.index {
        Some(i) => format!("{}[{i}]", q.reg),
        None => q.reg.clone(),
    }
}

fn fmt_qlist(qs: &[QubitRef]) -> String {
    qs.iter().map(fmt_qref).collect::<Vec<_>>().join(", ")
}

fn party_name(p: Party) -> &'static str {
    match p {
        Party::Alice => "alice",
        Party::Bob => "bob",
    }
}

/// Render the canonical text form of a protocol.
pub fn print(ast: &ProtocolAst) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "protocol {} {{", ast.name);
    let _ = writeln!(out, "  n {};", ast.n);
    match &ast.entanglement {
        EntHeader::Epr(e) => {
            let _ = writeln!(out, "  epr {e};");
        }
        EntHeader::Schmidt(coeffs) => {
            let list = coeffs
                .iter()
                .map(|&v| fmt_real(v))
                .collect::<Vec<_>>()
                .join(", ");
            let _ = writeln!(out, "  schmidt [{list}];");
        }
    }
    for decl in &ast.decls {
        let _ = writeln!(
            out,
            "  {} reg {}[{}];",
            party_name(decl.party),
            decl.name,
            decl.size
        );
    }
    for round in &ast.rounds {
        let _ = writeln!(out, "  {} {{", party_name(round.party));
        for stmt in &round.stmts {
            match stmt {
                StmtAst::Apply {
                    condition,
                    gate,
                    targets,
                } => {
                    let prefix = match condition {
                        Some(bit) => format!("if x[{bit}] "),
                        None => String::new(),
                    };
                    let gate_text = match gate {
                        GateAst::Named(name) => name.clone(),
                        GateAst::Mat { qubits, entries } => {
                            let list = entries
                                .iter()
                                .map(|&c| fmt_complex(c))
                                .collect::<Vec<_>>()
                                .join(", ");
                            format!("mat {qubits} [{list}]")
                        }
                    };
                    let _ = writeln!(
                        out,
                        "    {prefix}apply {gate_text} on {};",
                        fmt_qlist(targets)
                    );
                }
                StmtAst::Send { qubits } => {
                    let _ = writeln!(out, "    send {};", fmt_qlist(qubits));
                }
            }
        }
        let _ = writeln!(out, "  }}");
    }
    let _ = writeln!(out, "  outputs [{}];", fmt_qlist(&ast.outputs));
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::super::parse;
    use super::*;

    #[test]
    fn complex_formatting() {
        assert_eq!(fmt_complex(C64::new(0.0, 0.0)), "0+0i");
        assert_eq!(fmt_complex(C64::new(-0.0, -0.0)), "0+0i");
        assert_eq!(fmt_complex(C64::new(0.5, -0.25)), "0.5-0.25i");
        assert_eq!(fmt_complex(C64::new(-1.0, 1.0)), "-1+1i");
    }

    #[test]
    fn print_parse_is_identity_on_trees() {
        let src = "protocol q {\n  n 1;\n  schmidt [0.7, 0.3];\n  alice reg a[2];\n  bob reg b[1];\n  alice {\n    if x[0] apply H on a[0];\n    apply mat 1 [0+0i, 1+0i, 1+0i, 0+0i] on a[1];\n    send a[0], a[1];\n  }\n  bob {\n    apply CNOT on a[0], b[0];\n  }\n  outputs [b[0]];\n}\n";
        let ast = parse(src).unwrap();
        assert_eq!(print(&ast), src);
        assert_eq!(parse(&print(&ast)).unwrap(), ast);
    }
}
