//! Tokenizer with 1-based line/column positions.

use super::ParseError;

#[derive(Debug, Clone, PartialEq)]
pub(super) enum TokenKind {
    Ident(String),
    Int(usize),
    Real(f64),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Semi,
    Comma,
    Plus,
    Minus,
    Eof,
}

#[derive(Debug, Clone)]
pub(super) struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
    pub text: String,
}

impl Token {
    pub fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            line: self.line,
            column: self.column,
            message: message.into(),
            token: self.text.clone(),
        }
    }
}

pub(super) fn tokenize(text: &str) -> Result<Vec<Token>, ParseError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let mut chars = text.chars().peekable();

    macro_rules! push {
        ($kind:expr, $text:expr, $col:expr) => {
            tokens.push(Token {
                kind: $kind,
                line,
                column: $col,
                text: $text,
            })
        };
    }

    while let Some(&c) = chars.peek() {
        match c {
            '\n' => {
                chars.next();
                line += 1;
                column = 1;
            }
            ' ' | '\t' | '\r' => {
                chars.next();
                column += 1;
            }
            '#' => {
                while let Some(&c) = chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    chars.next();
                    column += 1;
                }
            }
            '{' | '}' | '[' | ']' | ';' | ',' | '+' | '-' => {
                chars.next();
                let kind = match c {
                    '{' => TokenKind::LBrace,
                    '}' => TokenKind::RBrace,
                    '[' => TokenKind::LBracket,
                    ']' => TokenKind::RBracket,
                    ';' => TokenKind::Semi,
                    ',' => TokenKind::Comma,
                    '+' => TokenKind::Plus,
                    _ => TokenKind::Minus,
                };
                push!(kind, c.to_string(), column);
                column += 1;
            }
            '0'..='9' => {
                let start_col = column;
                let mut text = String::new();
                let mut is_real = false;
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_digit() {
                        text.push(c);
                        chars.next();
                        column += 1;
                    } else if c == '.' && !is_real {
                        is_real = true;
                        text.push(c);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                if text.ends_with('.') {
                    return Err(ParseError {
                        line,
                        column: start_col,
                        message: "number ends with a bare decimal point".into(),
                        token: text,
                    });
                }
                let kind = if is_real {
                    TokenKind::Real(text.parse().map_err(|_| ParseError {
                        line,
                        column: start_col,
                        message: "invalid numeric literal".into(),
                        token: text.clone(),
                    })?)
                } else {
                    TokenKind::Int(text.parse().map_err(|_| ParseError {
                        line,
                        column: start_col,
                        message: "integer literal out of range".into(),
                        token: text.clone(),
                    })?)
                };
                push!(kind, text, start_col);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start_col = column;
                let mut text = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_ascii_alphanumeric() || c == '_' {
                        text.push(c);
                        chars.next();
                        column += 1;
                    } else {
                        break;
                    }
                }
                push!(TokenKind::Ident(text.clone()), text, start_col);
            }
            other => {
                return Err(ParseError {
                    line,
                    column,
                    message: format!("unexpected character '{other}'"),
                    token: other.to_string(),
                });
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::Eof,
        line,
        column,
        text: "end of input".into(),
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positions_are_one_based() {
        let tokens = tokenize("ab cd\nef").unwrap();
        assert_eq!((tokens[0].line, tokens[0].column), (1, 1));
        assert_eq!((tokens[1].line, tokens[1].column), (1, 4));
        assert_eq!((tokens[2].line, tokens[2].column), (2, 1));
    }

    #[test]
    fn comments_are_skipped() {
        let tokens = tokenize("a # comment ; { } 12\nb").unwrap();
        assert_eq!(tokens.len(), 3);
        assert_eq!(tokens[1].text, "b");
    }

    #[test]
    fn numbers_split_into_int_and_real() {
        let tokens = tokenize("3 0.25").unwrap();
        assert_eq!(tokens[0].kind, TokenKind::Int(3));
        assert_eq!(tokens[1].kind, TokenKind::Real(0.25));
    }

    #[test]
    fn rejects_stray_characters() {
        let err = tokenize("a @").unwrap_err();
        assert_eq!((err.line, err.column), (1, 3));
    }
}
