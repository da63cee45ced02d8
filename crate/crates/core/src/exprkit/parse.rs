use std::collections::HashMap;
use std::f64::consts::PI;

use super::{BinaryOp, Expr, UnaryOp, Var};

#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum ParseError {
    #[error("empty expression")]
    Empty,
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown identifier `{name}` at byte {offset}")]
    UnknownIdentifier { name: String, offset: usize },
}

/// Parses `text` with no user parameters.
pub fn parse_expr(text: &str) -> Result<Expr, ParseError> {
    Parser::new().parse(text)
}

/// Expression parser. User parameters are substituted as constants.
#[derive(Clone, Debug, Default)]
pub struct Parser {
    params: HashMap<String, f64>,
}

impl Parser {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_param(mut self, name: &str, value: f64) -> Self {
        self.params.insert(name.to_owned(), value);
        self
    }

    pub fn parse(&self, text: &str) -> Result<Expr, ParseError> {
        let tokens = lex(text)?;
        if tokens.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut state = State {
            tokens: &tokens,
            pos: 0,
            end: text.len(),
            params: &self.params,
        };
        let expr = state.expr()?;
        match state.peek() {
            None => Ok(expr),
            Some(tok) => Err(ParseError::Syntax {
                offset: tok.offset,
                message: format!("unexpected {}", tok.kind.describe()),
            }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
enum TokenKind {
    Number(f64),
    Ident(String),
    Op(char),
    LParen,
    RParen,
}

impl TokenKind {
    fn describe(&self) -> String {
        match self {
            TokenKind::Number(n) => format!("number {n}"),
            TokenKind::Ident(s) => format!("identifier `{s}`"),
            TokenKind::Op(c) => format!("`{c}`"),
            TokenKind::LParen => "`(`".into(),
            TokenKind::RParen => "`)`".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Token {
    kind: TokenKind,
    offset: usize,
}

fn lex(text: &str) -> Result<Vec<Token>, ParseError> {
    let bytes = text.as_bytes();
    let mut tokens = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\r' | b'\n' => {
                i += 1;
                continue;
            }
            b'+' | b'-' | b'*' | b'/' | b'^' => {
                tokens.push(Token {
                    kind: TokenKind::Op(c as char),
                    offset: start,
                });
                i += 1;
            }
            b'(' | b')' => {
                let kind = if c == b'(' {
                    TokenKind::LParen
                } else {
                    TokenKind::RParen
                };
                tokens.push(Token { kind, offset: start });
                i += 1;
            }
            b'0'..=b'9' | b'.' => {
                while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                    i += 1;
                }
                if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                    let mut j = i + 1;
                    if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                        j += 1;
                    }
                    if j < bytes.len() && bytes[j].is_ascii_digit() {
                        while j < bytes.len() && bytes[j].is_ascii_digit() {
                            j += 1;
                        }
                        i = j;
                    }
                }
                let slice = &text[start..i];
                let value = slice.parse::<f64>().map_err(|_| ParseError::Syntax {
                    offset: start,
                    message: format!("malformed number `{slice}`"),
                })?;
                tokens.push(Token {
                    kind: TokenKind::Number(value),
                    offset: start,
                });
            }
            _ if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                tokens.push(Token {
                    kind: TokenKind::Ident(text[start..i].to_owned()),
                    offset: start,
                });
            }
            _ => {
                // Greek letters are accepted as aliases for the angle variables.
                let ch = text[start..].chars().next().unwrap_or('?');
                let name = match ch {
                    'θ' => "theta",
                    'φ' | 'ϕ' => "phi",
                    'π' => "pi",
                    _ => {
                        return Err(ParseError::Syntax {
                            offset: start,
                            message: format!("unexpected character `{ch}`"),
                        })
                    }
                };
                tokens.push(Token {
                    kind: TokenKind::Ident(name.to_owned()),
                    offset: start,
                });
                i += ch.len_utf8();
            }
        }
    }
    Ok(tokens)
}

struct State<'a> {
    tokens: &'a [Token],
    pos: usize,
    end: usize,
    params: &'a HashMap<String, f64>,
}

impl State<'_> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let tok = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        tok
    }

    fn eat_op(&mut self, ops: &[char]) -> Option<char> {
        match self.peek() {
            Some(Token {
                kind: TokenKind::Op(c),
                ..
            }) if ops.contains(c) => {
                let c = *c;
                self.pos += 1;
                Some(c)
            }
            _ => None,
        }
    }

    fn offset(&self) -> usize {
        self.peek().map_or(self.end, |t| t.offset)
    }

    fn expr(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.term()?;
        while let Some(op) = self.eat_op(&['+', '-']) {
            let rhs = self.term()?;
            let op = if op == '+' { BinaryOp::Add } else { BinaryOp::Sub };
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn term(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.unary()?;
        while let Some(op) = self.eat_op(&['*', '/']) {
            let rhs = self.unary()?;
            let op = if op == '*' { BinaryOp::Mul } else { BinaryOp::Div };
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr, ParseError> {
        match self.eat_op(&['-', '+']) {
            Some('-') => Ok(Expr::Unary(UnaryOp::Neg, Box::new(self.unary()?))),
            Some(_) => self.unary(),
            None => self.power(),
        }
    }

    fn power(&mut self) -> Result<Expr, ParseError> {
        let base = self.atom()?;
        if self.eat_op(&['^']).is_some() {
            let exponent = self.unary()?;
            return Ok(Expr::Binary(BinaryOp::Pow, Box::new(base), Box::new(exponent)));
        }
        Ok(base)
    }

    fn expect_rparen(&mut self) -> Result<(), ParseError> {
        let offset = self.offset();
        match self.next() {
            Some(Token {
                kind: TokenKind::RParen,
                ..
            }) => Ok(()),
            Some(tok) => Err(ParseError::Syntax {
                offset,
                message: format!("expected `)`, found {}", tok.kind.describe()),
            }),
            None => Err(ParseError::Syntax {
                offset,
                message: "expected `)`, found end of input".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr, ParseError> {
        let offset = self.offset();
        let Some(tok) = self.next() else {
            return Err(ParseError::Syntax {
                offset,
                message: "unexpected end of input".into(),
            });
        };
        match tok.kind {
            TokenKind::Number(n) => Ok(Expr::Const(n)),
            TokenKind::LParen => {
                let e = self.expr()?;
                self.expect_rparen()?;
                Ok(e)
            }
            TokenKind::Ident(name) => {
                if let Some(op) = UnaryOp::from_func_name(&name) {
                    match self.next() {
                        Some(Token {
                            kind: TokenKind::LParen,
                            ..
                        }) => {}
                        _ => {
                            return Err(ParseError::Syntax {
                                offset: tok.offset + name.len(),
                                message: format!("expected `(` after `{name}`"),
                            })
                        }
                    }
                    let arg = self.expr()?;
                    self.expect_rparen()?;
                    return Ok(Expr::Unary(op, Box::new(arg)));
                }
                let var = match name.as_str() {
                    "x" => Some(Var::X),
                    "y" => Some(Var::Y),
                    "z" => Some(Var::Z),
                    "t" => Some(Var::T),
                    "theta" => Some(Var::Theta),
                    "phi" => Some(Var::Phi),
                    _ => None,
                };
                if let Some(v) = var {
                    return Ok(Expr::Var(v));
                }
                if let Some(value) = self.params.get(&name) {
                    return Ok(Expr::Const(*value));
                }
                if name == "pi" {
                    return Ok(Expr::Const(PI));
                }
                Err(ParseError::UnknownIdentifier {
                    name,
                    offset: tok.offset,
                })
            }
            other => Err(ParseError::Syntax {
                offset: tok.offset,
                message: format!("unexpected {}", other.describe()),
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exprkit::Bindings;

    #[test]
    fn single_variable() {
        assert_eq!(parse_expr("t").unwrap(), Expr::Var(Var::T));
        assert_eq!(parse_expr(" θ ").unwrap(), Expr::Var(Var::Theta));
    }

    #[test]
    fn precedence_and_associativity() {
        let v = |s: &str| parse_expr(s).unwrap().eval_const().unwrap();
        assert_eq!(v("8 - 3 - 2"), 3.0);
        assert_eq!(v("8 / 4 / 2"), 1.0);
        assert_eq!(v("2 + 3 * 4"), 14.0);
        assert_eq!(v("-2^2"), -4.0);
        assert_eq!(v("2^-1"), 0.5);
        assert_eq!(v("2^3^2"), 512.0);
        assert_eq!(v("1.5e2 + 2E-1"), 150.2);
        assert_eq!(v("--3"), 3.0);
    }

    #[test]
    fn parameters_and_pi() {
        let e = Parser::new()
            .with_param("w", 2.0)
            .parse("w*pi")
            .unwrap();
        assert_eq!(e.eval_const().unwrap(), 2.0 * PI);
    }

    #[test]
    fn error_offsets() {
        assert_eq!(parse_expr(""), Err(ParseError::Empty));
        assert_eq!(parse_expr("   "), Err(ParseError::Empty));
        assert_eq!(
            parse_expr("1 + foo"),
            Err(ParseError::UnknownIdentifier {
                name: "foo".into(),
                offset: 4
            })
        );
        match parse_expr("(1 + 2") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 6),
            other => panic!("{other:?}"),
        }
        match parse_expr("1 + * 2") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 4),
            other => panic!("{other:?}"),
        }
        match parse_expr("sin t") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 3),
            other => panic!("{other:?}"),
        }
        match parse_expr("1 2") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
        match parse_expr("t # 2") {
            Err(ParseError::Syntax { offset, .. }) => assert_eq!(offset, 2),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn functions() {
        let e = parse_expr("sqrt(abs(t)) + exp(0) + ln(1) + tan(0)").unwrap();
        assert_eq!(e.eval(&Bindings::time(-4.0)).unwrap(), 3.0);
    }
}
