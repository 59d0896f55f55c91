//! The `.qcp` protocol description language.
//!
//! ```text
//! protocol := "protocol" IDENT "{" header decl* round* output "}"
//! header   := "n" INT ";" ("epr" INT | "schmidt" "[" REAL ("," REAL)* "]") ";"
//! decl     := ("alice"|"bob") "reg" IDENT "[" INT "]" ";"
//! round    := ("alice"|"bob") "{" stmt* "}"
//! stmt     := apply | send
//! apply    := ["if" "x" "[" INT "]"] "apply" GATE "on" qlist ";"
//! send     := "send" qlist ";"
//! output   := "outputs" qlist ";"
//! ```
//!
//! Gates are `I X Y Z H S T CNOT SWAP` or `mat k [row-major complex
//! literals]` for an arbitrary `2^k`-dimensional unitary. Complex
//! literals are written `a+bi` with plain decimal components. A qubit is
//! `reg[i]`; a bare register name expands to all of its qubits. The
//! header's entanglement declaration implicitly provides the registers
//! `ea` (Alice's half) and `eb` (Bob's half). `#` starts a line comment.
//!
//! [`parse`] yields an AST with positioned errors, [`print`] the
//! canonical text form (`parse ∘ print` is the identity on parsed
//! trees), and [`validate`] a checked executable [`Protocol`].

mod lex;
mod parse;
mod print;
mod validate;

use std::fmt;

use crate::linalg::C64;
use crate::model::{Party, Protocol};

pub use parse::parse;
pub use print::print;
pub use validate::validate;

/// Names of the implicit entanglement registers.
pub const ALICE_ENT_REG: &str = "ea";
pub const BOB_ENT_REG: &str = "eb";

/// Parsed protocol file, faithful to the source structure.
#[derive(Debug, Clone, PartialEq)]
pub struct ProtocolAst {
    pub name: String,
    pub n: usize,
    pub entanglement: EntHeader,
    pub decls: Vec<RegDecl>,
    pub rounds: Vec<RoundAst>,
    pub outputs: Vec<QubitRef>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum EntHeader {
    /// `epr E`: E shared EPR pairs.
    Epr(usize),
    /// `schmidt [λ_0, …]`: an arbitrary shared state by its coefficients.
    Schmidt(Vec<f64>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegDecl {
    pub party: Party,
    pub name: String,
    pub size: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RoundAst {
    pub party: Party,
    pub stmts: Vec<StmtAst>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum StmtAst {
    Apply {
        /// `if x[i]`: apply only when message bit `i` is set.
        condition: Option<usize>,
        gate: GateAst,
        targets: Vec<QubitRef>,
    },
    Send {
        qubits: Vec<QubitRef>,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum GateAst {
    /// One of the named gates.
    Named(String),
    /// `mat k [...]`: row-major entries of a `2^k × 2^k` unitary.
    Mat { qubits: usize, entries: Vec<C64> },
}

/// `reg[i]`, or the whole register when `index` is `None`.
#[derive(Debug, Clone, PartialEq)]
pub struct QubitRef {
    pub reg: String,
    pub index: Option<usize>,
}

/// First syntax error, pointing at the offending token.
#[derive(Debug, Clone, PartialEq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
    pub token: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}:{}: {} (at \"{}\")",
            self.line, self.column, self.message, self.token
        )
    }
}

impl std::error::Error for ParseError {}

/// Semantic rejection of a syntactically valid protocol.
#[derive(Debug, Clone, PartialEq)]
pub struct ValidationError {
    pub message: String,
}

impl ValidationError {
    pub(crate) fn new(message: impl Into<String>) -> Self {
        ValidationError {
            message: message.into(),
        }
    }
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.message)
    }
}

impl std::error::Error for ValidationError {}

/// Either failure mode of [`load`].
#[derive(Debug, Clone, PartialEq)]
pub enum DslError {
    Parse(ParseError),
    Validation(ValidationError),
}

impl fmt::Display for DslError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DslError::Parse(e) => write!(f, "parse error: {e}"),
            DslError::Validation(e) => write!(f, "validation error: {e}"),
        }
    }
}

impl std::error::Error for DslError {}

/// Parse and validate in one step.
pub fn load(text: &str) -> Result<Protocol, DslError> {
    let ast = parse(text).map_err(DslError::Parse)?;
    validate(&ast).map_err(DslError::Validation)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bits::BitString;
    use crate::model::{run_protocol, superdense_protocol};

    pub(crate) const SUPERDENSE_SRC: &str = "protocol superdense {\n  n 2;\n  epr 1;\n  alice {\n    if x[1] apply X on ea[0];\n    if x[0] apply Z on ea[0];\n    send ea[0];\n  }\n  bob {\n    apply CNOT on ea[0], eb[0];\n    apply H on ea[0];\n  }\n  outputs [ea[0], eb[0]];\n}\n";

    #[test]
    fn parses_minimal_protocol() {
        let ast = parse("protocol p { n 0; epr 0; outputs []; }").unwrap();
        assert_eq!(ast.name, "p");
        assert_eq!(ast.n, 0);
        assert_eq!(ast.entanglement, EntHeader::Epr(0));
        assert!(ast.decls.is_empty());
        assert!(ast.rounds.is_empty());
        assert!(ast.outputs.is_empty());
    }

    #[test]
    fn superdense_source_round_trips() {
        let ast = parse(SUPERDENSE_SRC).unwrap();
        assert_eq!(ast.rounds.len(), 2);
        assert_eq!(print(&ast), SUPERDENSE_SRC);
        let reparsed = parse(&print(&ast)).unwrap();
        assert_eq!(reparsed, ast);
    }

    #[test]
    fn superdense_source_matches_builtin_protocol() {
        let p = load(SUPERDENSE_SRC).unwrap();
        let builtin = superdense_protocol(1);
        assert_eq!(p.e, builtin.e);
        assert_eq!(p.n_message, builtin.n_message);
        assert_eq!(p.m_a(), 1);
        for xv in 0..4 {
            let x = BitString::from_index(xv, 2);
            let a = run_protocol(&p, &x).unwrap();
            let b = run_protocol(&builtin, &x).unwrap();
            assert!(a.vec.max_abs_diff(&b.vec) < 1e-12);
        }
    }

    #[test]
    fn unbalanced_brace_positions_error_at_eof() {
        let src = "protocol p {\n  n 0;\n  epr 0;\n  outputs [];\n";
        let err = parse(src).unwrap_err();
        assert_eq!(err.line, 5);
        assert_eq!(err.column, 1);
    }

    #[test]
    fn duplicate_declaration_is_a_parse_error() {
        let src = "protocol p { n 0; epr 0; alice reg q[1]; alice reg q[2]; outputs []; }";
        let err = parse(src).unwrap_err();
        assert!(err.message.contains("duplicate"), "{}", err.message);
        assert_eq!(err.line, 1);
        assert_eq!(err.column, 52);
    }

    #[test]
    fn bob_condition_rejected_in_validation() {
        let src = "protocol p {\n  n 1;\n  epr 0;\n  bob reg b[1];\n  bob {\n    if x[0] apply X on b[0];\n  }\n  outputs [b[0]];\n}\n";
        let ast = parse(src).unwrap();
        let err = validate(&ast).unwrap_err();
        assert!(
            err.message.contains("input-conditioned gate by bob"),
            "{}",
            err.message
        );
    }

    #[test]
    fn bad_schmidt_sum_reports_the_sum() {
        let src = "protocol p { n 0; schmidt [0.5, 0.4]; outputs []; }";
        let err = validate(&parse(src).unwrap()).unwrap_err();
        assert!(err.message.contains("0.9"), "{}", err.message);
    }

    #[test]
    fn whole_register_reference_expands() {
        let src = "protocol p {\n  n 0;\n  epr 0;\n  bob reg b[2];\n  bob {\n    apply SWAP on b;\n  }\n  outputs [b];\n}\n";
        let p = load(src).unwrap();
        assert_eq!(p.outputs, vec![0, 1]);
    }

    #[test]
    fn mat_literal_round_trips_and_validates() {
        let src = "protocol p {\n  n 0;\n  epr 0;\n  bob reg b[1];\n  bob {\n    apply mat 1 [0+0i, 0-1i, 0+1i, 0+0i] on b[0];\n  }\n  outputs [b[0]];\n}\n";
        let ast = parse(src).unwrap();
        assert_eq!(print(&ast), src);
        load(src).unwrap();
    }

    #[test]
    fn non_unitary_mat_rejected() {
        let src = "protocol p { n 0; epr 0; bob reg b[1]; bob { apply mat 1 [1+0i, 0+0i, 0+0i, 2+0i] on b[0]; } outputs []; }";
        let err = validate(&parse(src).unwrap()).unwrap_err();
        assert!(err.message.contains("unitary"), "{}", err.message);
    }

    #[test]
    fn send_splits_round_into_segments() {
        // A gate after a send must land in a second executor round.
        let src = "protocol p {\n  n 0;\n  epr 0;\n  alice reg a[1];\n  bob reg b[1];\n  alice {\n    apply H on a[0];\n    send a[0];\n  }\n  bob {\n    apply Z on a[0];\n  }\n  outputs [a[0]];\n}\n";
        let p = load(src).unwrap();
        assert_eq!(p.rounds.len(), 2);
        assert_eq!(p.m_a(), 1);
    }

    #[test]
    fn ownership_violations_surface_in_validation() {
        let src = "protocol p { n 0; epr 0; alice reg a[1]; bob reg b[1]; alice { apply X on b[0]; } outputs []; }";
        let err = validate(&parse(src).unwrap()).unwrap_err();
        assert!(err.message.contains("own"), "{}", err.message);
    }

    #[test]
    fn undeclared_register_rejected() {
        let src = "protocol p { n 0; epr 0; outputs [q[0]]; }";
        let err = validate(&parse(src).unwrap()).unwrap_err();
        assert!(err.message.contains("undeclared"), "{}", err.message);
    }

    #[test]
    fn entanglement_register_names_are_reserved() {
        let src = "protocol p { n 0; epr 1; alice reg ea[1]; outputs []; }";
        let err = validate(&parse(src).unwrap()).unwrap_err();
        assert!(err.message.contains("reserved"), "{}", err.message);
    }

    #[test]
    fn schmidt_header_sets_coefficients() {
        let src = "protocol p {\n  n 0;\n  schmidt [0.7, 0.3];\n  outputs [];\n}\n";
        let ast = parse(src).unwrap();
        assert_eq!(print(&ast), src);
        let p = validate(&ast).unwrap();
        assert_eq!(p.e, 1);
        assert_eq!(p.schmidt_coeffs, vec![0.7, 0.3]);
    }

    #[test]
    fn schmidt_length_must_be_power_of_two() {
        let src = "protocol p { n 0; schmidt [0.5, 0.25, 0.25]; outputs []; }";
        let err = validate(&parse(src).unwrap()).unwrap_err();
        assert!(err.message.contains("power of two"), "{}", err.message);
    }

    #[test]
    fn comments_and_whitespace_are_insignificant() {
        let src = "protocol p{n 0;epr 0;# comment\noutputs[];}";
        let canonical = print(&parse(src).unwrap());
        assert_eq!(parse(&canonical).unwrap(), parse(src).unwrap());
    }
}
