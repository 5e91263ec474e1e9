//! Formula syntax:
//!
//! ```text
//! expr  := xor ('|' xor)*
//! xor   := and ('^' and)*
//! and   := unary ('&' unary)*
//! unary := '!' unary | atom
//! atom  := 'x' N | '0' | '1' | '(' expr ')'
//! ```
//!
//! `N >= 1`. Binary operators are left-associative. Whitespace is free and
//! `#` starts a comment running to the end of the line.

use std::fmt;

use thiserror::Error;

use crate::diagram::Var;
use crate::formula::Formula;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{column}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    UnexpectedChar(char),
    UnexpectedToken(String),
    MissingOperand(char),
    UnexpectedEnd,
    UnclosedParen,
    VarIndexZero,
    BadVarIndex(String),
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseErrorKind::UnexpectedChar(c) => write!(f, "unexpected character `{c}`"),
            ParseErrorKind::UnexpectedToken(t) => write!(f, "unexpected `{t}`"),
            ParseErrorKind::MissingOperand(op) => write!(f, "operator `{op}` is missing its operand"),
            ParseErrorKind::UnexpectedEnd => write!(f, "unexpected end of input"),
            ParseErrorKind::UnclosedParen => write!(f, "unclosed `(`"),
            ParseErrorKind::VarIndexZero => write!(f, "variable indices start at 1 (found `x0`)"),
            ParseErrorKind::BadVarIndex(s) => write!(f, "bad variable `{s}`"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
enum Tok {
    Var(Var),
    Const(bool),
    Not,
    And,
    Or,
    Xor,
    LParen,
    RParen,
}

impl Tok {
    fn text(self) -> String {
        match self {
            Tok::Var(v) => v.to_string(),
            Tok::Const(b) => (b as u8).to_string(),
            Tok::Not => "!".into(),
            Tok::And => "&".into(),
            Tok::Or => "|".into(),
            Tok::Xor => "^".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
        }
    }
}

#[derive(Clone, Copy, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    for (li, line) in src.lines().enumerate() {
        let chars: Vec<char> = line.chars().collect();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let (lno, col) = (li + 1, i + 1);
            let err = |kind| ParseError {
                line: lno,
                column: col,
                kind,
            };
            let tok = match c {
                '#' => break,
                c if c.is_whitespace() => {
                    i += 1;
                    continue;
                }
                '!' => Tok::Not,
                '&' => Tok::And,
                '|' => Tok::Or,
                '^' => Tok::Xor,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '0' => Tok::Const(false),
                '1' => Tok::Const(true),
                'x' => {
                    let start = i + 1;
                    let mut end = start;
                    while end < chars.len() && chars[end].is_ascii_alphanumeric() {
                        end += 1;
                    }
                    let digits: String = chars[start..end].iter().collect();
                    let word = format!("x{digits}");
                    let index: u32 = if !digits.is_empty() && digits.chars().all(|d| d.is_ascii_digit()) {
                        digits
                            .parse()
                            .map_err(|_| err(ParseErrorKind::BadVarIndex(word.clone())))?
                    } else {
                        return Err(err(ParseErrorKind::BadVarIndex(word)));
                    };
                    let var = Var::try_new(index).ok_or_else(|| err(ParseErrorKind::VarIndexZero))?;
                    out.push(Spanned {
                        tok: Tok::Var(var),
                        line: lno,
                        column: col,
                    });
                    i = end;
                    continue;
                }
                other => return Err(err(ParseErrorKind::UnexpectedChar(other))),
            };
            out.push(Spanned {
                tok,
                line: lno,
                column: col,
            });
            i += 1;
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|s| s.tok)
    }

    fn error_here(&self, kind: ParseErrorKind) -> ParseError {
        let (line, column) = match self.toks.get(self.pos).or(self.toks.last()) {
            Some(s) => (s.line, s.column),
            None => (1, 1),
        };
        ParseError { line, column, kind }
    }

    fn binary_level(
        &mut self,
        tok: Tok,
        sym: char,
        next: fn(&mut Parser) -> Result<Formula, ParseError>,
        build: fn(Formula, Formula) -> Formula,
    ) -> Result<Formula, ParseError> {
        let mut lhs = next(self)?;
        while self.peek() == Some(tok) {
            let op = self.toks[self.pos];
            self.pos += 1;
            if self.peek().is_none() {
                return Err(ParseError {
                    line: op.line,
                    column: op.column,
                    kind: ParseErrorKind::MissingOperand(sym),
                });
            }
            let rhs = next(self)?;
            lhs = build(lhs, rhs);
        }
        Ok(lhs)
    }

    fn or_expr(&mut self) -> Result<Formula, ParseError> {
        self.binary_level(Tok::Or, '|', Parser::xor_expr, |a, b| a | b)
    }

    fn xor_expr(&mut self) -> Result<Formula, ParseError> {
        self.binary_level(Tok::Xor, '^', Parser::and_expr, |a, b| a ^ b)
    }

    fn and_expr(&mut self) -> Result<Formula, ParseError> {
        self.binary_level(Tok::And, '&', Parser::unary, |a, b| a & b)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Some(Tok::Not) => {
                let op = self.toks[self.pos];
                self.pos += 1;
                if self.peek().is_none() {
                    return Err(ParseError {
                        line: op.line,
                        column: op.column,
                        kind: ParseErrorKind::MissingOperand('!'),
                    });
                }
                Ok(!self.unary()?)
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, ParseError> {
        let Some(tok) = self.peek() else {
            return Err(self.error_here(ParseErrorKind::UnexpectedEnd));
        };
        match tok {
            Tok::Var(v) => {
                self.pos += 1;
                Ok(Formula::Ref(v))
            }
            Tok::Const(b) => {
                self.pos += 1;
                Ok(Formula::Const(b))
            }
            Tok::LParen => {
                let open = self.toks[self.pos];
                self.pos += 1;
                let inner = self.or_expr()?;
                if self.peek() != Some(Tok::RParen) {
                    if self.peek().is_none() {
                        return Err(ParseError {
                            line: open.line,
                            column: open.column,
                            kind: ParseErrorKind::UnclosedParen,
                        });
                    }
                    return Err(self.error_here(ParseErrorKind::UnexpectedToken(self.peek().unwrap().text())));
                }
                self.pos += 1;
                Ok(inner)
            }
            other => Err(self.error_here(ParseErrorKind::UnexpectedToken(other.text()))),
        }
    }
}

pub fn parse(src: &str) -> Result<Formula, ParseError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0 };
    let f = p.or_expr()?;
    if let Some(t) = p.peek() {
        return Err(p.error_here(ParseErrorKind::UnexpectedToken(t.text())));
    }
    Ok(f)
}
