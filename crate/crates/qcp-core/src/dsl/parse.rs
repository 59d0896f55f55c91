//! Recursive-descent parser for `.qcp` sources.

use super::lex::{tokenize, Token, TokenKind};
use super::{EntHeader, GateAst, ParseError, ProtocolAst, QubitRef, RegDecl, RoundAst, StmtAst};
use crate::linalg::C64;
use crate::model::Party;

pub(super) const NAMED_GATES: &[&str] = &["I", "X", "Y", "Z", "H", "S", "T", "CNOT", "SWAP"];

const KEYWORDS: &[&str] = &[
    "protocol", "n", "epr", "schmidt", "alice", "bob", "reg", "apply", "send", "outputs", "if",
    "x", "on", "mat", "i",
];

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

/// Parse a protocol source, reporting the first error with its position.
pub fn parse(text: &str) -> Result<ProtocolAst, ParseError> {
    let tokens = tokenize(text)?;
    let mut p = Parser { tokens, pos: 0 };
    let ast = p.protocol()?;
    p.expect_eof()?;
    Ok(ast)
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.tokens[self.pos]
    }

    fn peek2(&self) -> &Token {
        &self.tokens[(self.pos + 1).min(self.tokens.len() - 1)]
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn expect_keyword(&mut self, kw: &str) -> Result<Token, ParseError> {
        let t = self.advance();
        match &t.kind {
            TokenKind::Ident(s) if s == kw => Ok(t),
            _ => Err(t.error(format!("expected \"{kw}\""))),
        }
    }

    fn expect_kind(&mut self, kind: TokenKind, what: &str) -> Result<Token, ParseError> {
        let t = self.advance();
        if t.kind == kind {
            Ok(t)
        } else {
            Err(t.error(format!("expected {what}")))
        }
    }

    fn expect_eof(&mut self) -> Result<(), ParseError> {
        let t = self.peek();
        if t.kind == TokenKind::Eof {
            Ok(())
        } else {
            Err(t.error("expected end of input"))
        }
    }

    fn ident(&mut self, what: &str) -> Result<(String, Token), ParseError> {
        let t = self.advance();
        match &t.kind {
            TokenKind::Ident(s) => Ok((s.clone(), t)),
            _ => Err(t.error(format!("expected {what}"))),
        }
    }

    fn int(&mut self, what: &str) -> Result<usize, ParseError> {
        let t = self.advance();
        match t.kind {
            TokenKind::Int(v) => Ok(v),
            _ => Err(t.error(format!("expected {what}"))),
        }
    }

    fn keyword_is(&self, kw: &str) -> bool {
        matches!(&self.peek().kind, TokenKind::Ident(s) if s == kw)
    }

    fn protocol(&mut self) -> Result<ProtocolAst, ParseError> {
        self.expect_keyword("protocol")?;
        let (name, name_tok) = self.ident("protocol name")?;
        if KEYWORDS.contains(&name.as_str()) || NAMED_GATES.contains(&name.as_str()) {
            return Err(name_tok.error("protocol name collides with a keyword"));
        }
        self.expect_kind(TokenKind::LBrace, "\"{\"")?;

        self.expect_keyword("n")?;
        let n = self.int("message bit count")?;
        self.expect_kind(TokenKind::Semi, "\";\"")?;

        let entanglement = if self.keyword_is("epr") {
            self.advance();
            EntHeader::Epr(self.int("EPR pair count")?)
        } else if self.keyword_is("schmidt") {
            self.advance();
            self.expect_kind(TokenKind::LBracket, "\"[\"")?;
            let mut coeffs = vec![self.real("schmidt coefficient")?];
            while self.peek().kind == TokenKind::Comma {
                self.advance();
                coeffs.push(self.real("schmidt coefficient")?);
            }
            self.expect_kind(TokenKind::RBracket, "\"]\"")?;
            EntHeader::Schmidt(coeffs)
        } else {
            return Err(self.peek().error("expected \"epr\" or \"schmidt\""));
        };
        self.expect_kind(TokenKind::Semi, "\";\"")?;

        let mut decls: Vec<RegDecl> = Vec::new();
        let mut rounds = Vec::new();
        loop {
            let party = if self.keyword_is("alice") {
                Party::Alice
            } else if self.keyword_is("bob") {
                Party::Bob
            } else {
                break;
            };
            if matches!(&self.peek2().kind, TokenKind::Ident(s) if s == "reg") {
                if !rounds.is_empty() {
                    return Err(self.peek().error("register declared after a round"));
                }
                self.advance();
                self.advance();
                let (name, name_tok) = self.ident("register name")?;
                if KEYWORDS.contains(&name.as_str()) || NAMED_GATES.contains(&name.as_str()) {
                    return Err(name_tok.error("register name collides with a keyword"));
                }
                if decls.iter().any(|d| d.name == name) {
                    return Err(name_tok.error(format!("duplicate declaration of \"{name}\"")));
                }
                self.expect_kind(TokenKind::LBracket, "\"[\"")?;
                let size = self.int("register size")?;
                self.expect_kind(TokenKind::RBracket, "\"]\"")?;
                self.expect_kind(TokenKind::Semi, "\";\"")?;
                decls.push(RegDecl { party, name, size });
            } else {
                self.advance();
                self.expect_kind(TokenKind::LBrace, "\"{\"")?;
                let mut stmts = Vec::new();
                while self.peek().kind != TokenKind::RBrace {
                    stmts.push(self.stmt()?);
                }
                self.advance();
                rounds.push(RoundAst { party, stmts });
            }
        }

        self.expect_keyword("outputs")?;
        let outputs = self.qlist()?;
        self.expect_kind(TokenKind::Semi, "\";\"")?;
        self.expect_kind(TokenKind::RBrace, "\"}\"")?;

        Ok(ProtocolAst {
            name,
            n,
            entanglement,
            decls,
            rounds,
            outputs,
        })
    }

    fn stmt(&mut self) -> Result<StmtAst, ParseError> {
        if self.keyword_is("send") {
            self.advance();
            let qubits = self.qlist()?;
            self.expect_kind(TokenKind::Semi, "\";\"")?;
            return Ok(StmtAst::Send { qubits });
        }
        let condition = if self.keyword_is("if") {
            self.advance();
            self.expect_keyword("x")?;
            self.expect_kind(TokenKind::LBracket, "\"[\"")?;
            let bit = self.int("message bit index")?;
            self.expect_kind(TokenKind::RBracket, "\"]\"")?;
            Some(bit)
        } else {
            None
        };
        self.expect_keyword("apply")?;
        let gate = self.gate()?;
        self.expect_keyword("on")?;
        let targets = self.qlist()?;
        self.expect_kind(TokenKind::Semi, "\";\"")?;
        Ok(StmtAst::Apply {
            condition,
            gate,
            targets,
        })
    }

    fn gate(&mut self) -> Result<GateAst, ParseError> {
        if self.keyword_is("mat") {
            self.advance();
            let qubits = self.int("matrix qubit count")?;
            self.expect_kind(TokenKind::LBracket, "\"[\"")?;
            let mut entries = vec![self.complex()?];
            while self.peek().kind == TokenKind::Comma {
                self.advance();
                entries.push(self.complex()?);
            }
            self.expect_kind(TokenKind::RBracket, "\"]\"")?;
            return Ok(GateAst::Mat { qubits, entries });
        }
        let (name, tok) = self.ident("gate name")?;
        if !NAMED_GATES.contains(&name.as_str()) {
            return Err(tok.error(format!("unknown gate \"{name}\"")));
        }
        Ok(GateAst::Named(name))
    }

    /// `a+bi` / `a-bi`, or a bare real for a zero imaginary part.
    fn complex(&mut self) -> Result<C64, ParseError> {
        let re = self.real("complex literal")?;
        let sign = match self.peek().kind {
            TokenKind::Plus => 1.0,
            TokenKind::Minus => -1.0,
            _ => return Ok(C64::new(re, 0.0)),
        };
        self.advance();
        let im = self.real("imaginary component")?;
        let t = self.advance();
        match &t.kind {
            TokenKind::Ident(s) if s == "i" => Ok(C64::new(re, sign * im)),
            _ => Err(t.error("expected \"i\" after the imaginary component")),
        }
    }

    /// A signed decimal; integers are accepted where reals fit.
    fn real(&mut self, what: &str) -> Result<f64, ParseError> {
        let negative = if self.peek().kind == TokenKind::Minus {
            self.advance();
            true
        } else {
            false
        };
        let t = self.advance();
        let magnitude = match t.kind {
            TokenKind::Real(v) => v,
            TokenKind::Int(v) => v as f64,
            _ => return Err(t.error(format!("expected {what}"))),
        };
        Ok(if negative { -magnitude } else { magnitude })
    }

    /// A qubit list: bare `q[0], r` or bracketed `[q[0], r]` (possibly
    /// empty).
    fn qlist(&mut self) -> Result<Vec<QubitRef>, ParseError> {
        if self.peek().kind == TokenKind::LBracket {
            self.advance();
            let mut out = Vec::new();
            if self.peek().kind != TokenKind::RBracket {
                out.push(self.qref()?);
                while self.peek().kind == TokenKind::Comma {
                    self.advance();
                    out.push(self.qref()?);
                }
            }
            self.expect_kind(TokenKind::RBracket, "\"]\"")?;
            return Ok(out);
        }
        let mut out = vec![self.qref()?];
        while self.peek().kind == TokenKind::Comma {
            self.advance();
            out.push(self.qref()?);
        }
        Ok(out)
    }

    fn qref(&mut self) -> Result<QubitRef, ParseError> {
        let (reg, _) = self.ident("qubit reference")?;
        if self.peek().kind == TokenKind::LBracket {
            self.advance();
            let index = self.int("qubit index")?;
            self.expect_kind(TokenKind::RBracket, "\"]\"")?;
            Ok(QubitRef {
                reg,
                index: Some(index),
            })
        } else {
            Ok(QubitRef { reg, index: None })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn error_points_at_offending_token() {
        let err = parse("protocol p { n zero; epr 0; outputs []; }").unwrap_err();
        assert_eq!((err.line, err.column), (1, 16));
        assert_eq!(err.token, "zero");
    }

    #[test]
    fn unknown_gate_is_rejected_at_its_position() {
        let src = "protocol p {\n  n 0;\n  epr 0;\n  bob reg b[1];\n  bob {\n    apply Q on b[0];\n  }\n  outputs [];\n}";
        let err = parse(src).unwrap_err();
        assert_eq!((err.line, err.column), (6, 11));
        assert!(err.message.contains("unknown gate"));
    }

    #[test]
    fn trailing_garbage_rejected() {
        let err = parse("protocol p { n 0; epr 0; outputs []; } extra").unwrap_err();
        assert!(err.message.contains("end of input"));
        assert_eq!(err.token, "extra");
    }

    #[test]
    fn complex_literals_parse_both_signs() {
        let src = "protocol p { n 0; epr 0; bob reg b[1]; bob { apply mat 1 [0.5+0.5i, 0.5-0.5i, 0.5-0.5i, 0.5+0.5i] on b[0]; } outputs []; }";
        let ast = parse(src).unwrap();
        match &ast.rounds[0].stmts[0] {
            StmtAst::Apply {
                gate: GateAst::Mat { entries, .. },
                ..
            } => {
                assert_eq!(entries[0], C64::new(0.5, 0.5));
                assert_eq!(entries[1], C64::new(0.5, -0.5));
            }
            other => panic!("unexpected stmt {other:?}"),
        }
    }

    #[test]
    fn register_after_round_is_rejected() {
        let src = "protocol p { n 0; epr 0; bob { } bob reg b[1]; outputs []; }";
        let err = parse(src).unwrap_err();
        assert!(err.message.contains("register declared after a round"));
    }
}
