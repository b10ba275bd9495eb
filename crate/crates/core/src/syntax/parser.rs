//! Lexer and recursive-descent parser for the formula grammar.
//!
//! Precedence, tightest first: postfix status (`^t ^p ^f ^nf ^c`), `~`,
//! `&`, `|`, then `->`/`=>` (right-associative), then `<->`/`<=>`
//! (right-associative). `&` and `|` associate to the left. A quantifier
//! body extends as far right as possible.

use std::fmt;

use thiserror::Error;

use super::{Formula, Signature, SignatureError, Term};
use crate::truth::{StatusOp, TruthValue};

/// 1-based line and column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Position {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("{pos}: syntax error: {message}")]
    Syntax { pos: Position, message: String },
    #[error("{pos}: unknown relation `{name}`")]
    UnknownSymbol { pos: Position, name: String },
    #[error("{pos}: relation `{name}` takes {expected} argument(s), found {found}")]
    ArityMismatch {
        pos: Position,
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("{pos}: `{name}` is a constant, not a relation")]
    NotARelation { pos: Position, name: String },
}

impl ParseError {
    pub fn position(&self) -> Position {
        match self {
            ParseError::Syntax { pos, .. }
            | ParseError::UnknownSymbol { pos, .. }
            | ParseError::ArityMismatch { pos, .. }
            | ParseError::NotARelation { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Const(TruthValue),
    Forall,
    Exists,
    Tilde,
    Amp,
    Bar,
    Arrow,
    StrongArrow,
    DoubleArrow,
    StrongDoubleArrow,
    Equals,
    Caret,
    LParen,
    RParen,
    Comma,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Tok::Ident(name) => return write!(f, "`{name}`"),
            Tok::Const(TruthValue::Top) => "`TRUE`",
            Tok::Const(TruthValue::Both) => "`BOTH`",
            Tok::Const(TruthValue::Bot) => "`FALSE`",
            Tok::Forall => "`forall`",
            Tok::Exists => "`exists`",
            Tok::Tilde => "`~`",
            Tok::Amp => "`&`",
            Tok::Bar => "`|`",
            Tok::Arrow => "`->`",
            Tok::StrongArrow => "`=>`",
            Tok::DoubleArrow => "`<->`",
            Tok::StrongDoubleArrow => "`<=>`",
            Tok::Equals => "`=`",
            Tok::Caret => "`^`",
            Tok::LParen => "`(`",
            Tok::RParen => "`)`",
            Tok::Comma => "`,`",
            Tok::Dot => "`.`",
            Tok::Eof => "end of input",
        };
        f.write_str(s)
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, Position)>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let pos = Position { line, col };
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            col += i - start;
            let tok = match word.as_str() {
                "TRUE" => Tok::Const(TruthValue::Top),
                "BOTH" => Tok::Const(TruthValue::Both),
                "FALSE" => Tok::Const(TruthValue::Bot),
                "forall" => Tok::Forall,
                "exists" => Tok::Exists,
                _ => Tok::Ident(word),
            };
            out.push((tok, pos));
            continue;
        }
        let rest: String = chars[i..chars.len().min(i + 3)].iter().collect();
        let (tok, len) = if rest.starts_with("<=>") {
            (Tok::StrongDoubleArrow, 3)
        } else if rest.starts_with("<->") {
            (Tok::DoubleArrow, 3)
        } else if rest.starts_with("=>") {
            (Tok::StrongArrow, 2)
        } else if rest.starts_with("->") {
            (Tok::Arrow, 2)
        } else {
            let tok = match c {
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Bar,
                '=' => Tok::Equals,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                ',' => Tok::Comma,
                '.' => Tok::Dot,
                _ => {
                    return Err(ParseError::Syntax {
                        pos,
                        message: format!("unexpected character `{c}`"),
                    })
                }
            };
            (tok, 1)
        };
        out.push((tok, pos));
        i += len;
        col += len;
    }
    out.push((Tok::Eof, Position { line, col }));
    Ok(out)
}

struct Parser<'s> {
    toks: Vec<(Tok, Position)>,
    at: usize,
    sig: &'s mut Signature,
    infer: bool,
}

/// Parses `text` against a fixed signature.
///
/// Identifiers in term position are constants when the signature declares
/// them and variables otherwise. Every relation must be declared with the
/// arity it is used at.
pub fn parse_formula(text: &str, sig: &Signature) -> Result<Formula, ParseError> {
    let mut sig = sig.clone();
    Parser::new(text, &mut sig, false)?.parse_all()
}

/// Like [`parse_formula`], but undeclared relations are added to `sig` at
/// the arity of their first use.
pub fn parse_formula_inferring(text: &str, sig: &mut Signature) -> Result<Formula, ParseError> {
    Parser::new(text, sig, true)?.parse_all()
}

impl<'s> Parser<'s> {
    fn new(text: &str, sig: &'s mut Signature, infer: bool) -> Result<Self, ParseError> {
        Ok(Parser {
            toks: lex(text)?,
            at: 0,
            sig,
            infer,
        })
    }

    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Position {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> Tok {
        let tok = self.toks[self.at].0.clone();
        if tok != Tok::Eof {
            self.at += 1;
        }
        tok
    }

    fn error<T>(&self, expected: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos(),
            message: format!("expected {expected}, found {}", self.peek()),
        })
    }

    fn expect(&mut self, tok: Tok) -> Result<(), ParseError> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(&tok.to_string())
        }
    }

    fn parse_all(mut self) -> Result<Formula, ParseError> {
        let f = self.iff_level()?;
        if *self.peek() != Tok::Eof {
            return self.error("an operator or end of input");
        }
        Ok(f)
    }

    fn iff_level(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.imp_level()?;
        match self.peek() {
            Tok::DoubleArrow => {
                self.bump();
                Ok(Formula::weak_iff(lhs, self.iff_level()?))
            }
            Tok::StrongDoubleArrow => {
                self.bump();
                Ok(Formula::strong_iff(lhs, self.iff_level()?))
            }
            _ => Ok(lhs),
        }
    }

    fn imp_level(&mut self) -> Result<Formula, ParseError> {
        let lhs = self.or_level()?;
        match self.peek() {
            Tok::Arrow => {
                self.bump();
                Ok(Formula::weak_imp(lhs, self.imp_level()?))
            }
            Tok::StrongArrow => {
                self.bump();
                Ok(Formula::strong_imp(lhs, self.imp_level()?))
            }
            _ => Ok(lhs),
        }
    }

    fn or_level(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.and_level()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            lhs = Formula::or(lhs, self.and_level()?);
        }
        Ok(lhs)
    }

    fn and_level(&mut self) -> Result<Formula, ParseError> {
        let mut lhs = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            lhs = Formula::and(lhs, self.unary()?);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek() {
            Tok::Tilde => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Tok::Forall | Tok::Exists => self.quantifier(),
            _ => self.postfix(),
        }
    }

    fn quantifier(&mut self) -> Result<Formula, ParseError> {
        let universal = self.bump() == Tok::Forall;
        let mut vars = Vec::new();
        while let Tok::Ident(name) = self.peek() {
            let name = name.clone();
            if self.sig.is_constant(&name) {
                return Err(ParseError::Syntax {
                    pos: self.pos(),
                    message: format!("cannot quantify over constant `{name}`"),
                });
            }
            vars.push(name);
            self.bump();
        }
        if vars.is_empty() {
            return self.error("a variable");
        }
        self.expect(Tok::Dot)?;
        let mut body = self.iff_level()?;
        for v in vars.iter().rev() {
            body = if universal {
                Formula::forall(v, body)
            } else {
                Formula::exists(v, body)
            };
        }
        Ok(body)
    }

    fn postfix(&mut self) -> Result<Formula, ParseError> {
        let mut f = self.primary()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            let pos = self.pos();
            let Tok::Ident(suffix) = self.peek().clone() else {
                return self.error("a status suffix (t, p, f, nf, c)");
            };
            let op = StatusOp::from_suffix(&suffix).map_err(|e| ParseError::Syntax {
                pos,
                message: e.to_string(),
            })?;
            self.bump();
            f = Formula::status(f, op);
        }
        Ok(f)
    }

    fn primary(&mut self) -> Result<Formula, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Tok::Const(v) => Ok(Formula::Const(v)),
            Tok::LParen => {
                let f = self.iff_level()?;
                self.expect(Tok::RParen)?;
                Ok(f)
            }
            Tok::Ident(name) => match self.peek() {
                Tok::Equals => {
                    self.bump();
                    let lhs = self.term(name);
                    let rhs = match self.bump() {
                        Tok::Ident(r) => self.term(r),
                        _ => {
                            self.at -= 1;
                            return self.error("a term");
                        }
                    };
                    Ok(Formula::Eq(lhs, rhs))
                }
                Tok::LParen => {
                    self.bump();
                    let mut args = Vec::new();
                    if *self.peek() != Tok::RParen {
                        loop {
                            match self.bump() {
                                Tok::Ident(t) => args.push(self.term(t)),
                                _ => {
                                    self.at -= 1;
                                    return self.error("a term");
                                }
                            }
                            if *self.peek() == Tok::Comma {
                                self.bump();
                            } else {
                                break;
                            }
                        }
                    }
                    self.expect(Tok::RParen)?;
                    self.relation(name, args, pos)
                }
                _ => self.relation(name, Vec::new(), pos),
            },
            Tok::Eof => {
                self.at = self.toks.len() - 1;
                self.error("a formula")
            }
            _ => {
                self.at -= 1;
                self.error("a formula")
            }
        }
    }

    fn term(&self, name: String) -> Term {
        if self.sig.is_constant(&name) {
            Term::Const(name)
        } else {
            Term::Var(name)
        }
    }

    fn relation(
        &mut self,
        name: String,
        args: Vec<Term>,
        pos: Position,
    ) -> Result<Formula, ParseError> {
        if self.sig.is_constant(&name) {
            return Err(ParseError::NotARelation { pos, name });
        }
        match self.sig.arity(&name) {
            Some(expected) if expected != args.len() => Err(ParseError::ArityMismatch {
                pos,
                name,
                expected,
                found: args.len(),
            }),
            Some(_) => Ok(Formula::Rel(name, args)),
            None if self.infer => {
                self.sig
                    .add_relation(&name, args.len())
                    .map_err(|e: SignatureError| ParseError::Syntax {
                        pos,
                        message: e.to_string(),
                    })?;
                Ok(Formula::Rel(name, args))
            }
            None => Err(ParseError::UnknownSymbol { pos, name }),
        }
    }
}
