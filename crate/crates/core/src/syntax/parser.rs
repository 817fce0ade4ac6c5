//! Recursive-descent parser for formulas, equations and sequents.
//!
//! Precedence, loosest first: `<->`, `->` (right associative), `|`, `&`, `*`,
//! prefix `~`, postfix `^n`. The Unicode forms `↔ → ∨ ∧ · ¬ ≤ ⊢` are accepted
//! as aliases. `~t` abbreviates `t -> 0` and `a <-> b` abbreviates
//! `(a -> b) & (b -> a)`.

use crate::error::{Error, Result};
use crate::syntax::term::{Connective, Equation, Relation, Sequent, Statement, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(u32),
    LParen,
    RParen,
    Op(Connective),
    Iff,
    Neg,
    Caret,
    Eq,
    Leq,
    Comma,
    Turnstile,
    End,
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some(&(pos, c)) = chars.peek() {
        if c.is_whitespace() {
            chars.next();
            continue;
        }
        let rest = &text[pos..];
        let (tok, len) = if let Some(t) = [
            ("<->", Tok::Iff),
            ("->", Tok::Op(Connective::Impl)),
            ("<=", Tok::Leq),
            ("|-", Tok::Turnstile),
            ("/\\", Tok::Op(Connective::Meet)),
            ("\\/", Tok::Op(Connective::Join)),
        ]
        .into_iter()
        .find(|(s, _)| rest.starts_with(s))
        {
            (t.1, t.0.len())
        } else {
            let single = match c {
                '(' => Some(Tok::LParen),
                ')' => Some(Tok::RParen),
                '&' | '∧' => Some(Tok::Op(Connective::Meet)),
                '|' | '∨' => Some(Tok::Op(Connective::Join)),
                '*' | '·' | '⋅' => Some(Tok::Op(Connective::Prod)),
                '→' => Some(Tok::Op(Connective::Impl)),
                '↔' => Some(Tok::Iff),
                '~' | '¬' => Some(Tok::Neg),
                '^' => Some(Tok::Caret),
                '=' => Some(Tok::Eq),
                '≤' => Some(Tok::Leq),
                ',' => Some(Tok::Comma),
                '⊢' => Some(Tok::Turnstile),
                _ => None,
            };
            match single {
                Some(t) => (t, c.len_utf8()),
                None if c.is_ascii_digit() => {
                    let len = rest.find(|ch: char| !ch.is_ascii_digit()).unwrap_or(rest.len());
                    let n = rest[..len].parse::<u32>().map_err(|_| Error::Syntax {
                        pos,
                        msg: "number too large".into(),
                    })?;
                    (Tok::Number(n), len)
                }
                None if c.is_alphabetic() || c == '_' => {
                    let len = rest
                        .find(|ch: char| !(ch.is_alphanumeric() || ch == '_' || ch == '\''))
                        .unwrap_or(rest.len());
                    (Tok::Ident(rest[..len].to_string()), len)
                }
                None => {
                    return Err(Error::Syntax {
                        pos,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        out.push(Token { tok, pos });
        let end = pos + len;
        while matches!(chars.peek(), Some(&(p, _)) if p < end) {
            chars.next();
        }
    }
    out.push(Token {
        tok: Tok::End,
        pos: text.len(),
    });
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        Ok(Parser {
            tokens: tokenize(text)?,
            at: 0,
        })
    }

    fn peek(&self) -> &Tok {
        &self.tokens[self.at].tok
    }

    fn pos(&self) -> usize {
        self.tokens[self.at].pos
    }

    fn bump(&mut self) -> Tok {
        let t = self.tokens[self.at].tok.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expect_end(&self) -> Result<()> {
        match self.peek() {
            Tok::End => Ok(()),
            other => self.error(format!("unexpected trailing {other:?}")),
        }
    }

    fn formula(&mut self) -> Result<Term> {
        let mut lhs = self.implication()?;
        while *self.peek() == Tok::Iff {
            self.bump();
            let rhs = self.implication()?;
            lhs = Term::iff(lhs, rhs);
        }
        Ok(lhs)
    }

    fn implication(&mut self) -> Result<Term> {
        let lhs = self.left_assoc(Connective::Join)?;
        if *self.peek() == Tok::Op(Connective::Impl) {
            self.bump();
            let rhs = self.implication()?;
            return Ok(Term::implies(lhs, rhs));
        }
        Ok(lhs)
    }

    fn left_assoc(&mut self, op: Connective) -> Result<Term> {
        let next = |p: &mut Parser| match op {
            Connective::Join => p.left_assoc(Connective::Meet),
            Connective::Meet => p.left_assoc(Connective::Prod),
            _ => p.unary(),
        };
        let mut lhs = next(self)?;
        while *self.peek() == Tok::Op(op) {
            self.bump();
            let rhs = next(self)?;
            lhs = Term::bin(op, lhs, rhs);
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Term> {
        if *self.peek() == Tok::Neg {
            self.bump();
            let inner = self.unary()?;
            return Ok(Term::neg(inner));
        }
        let mut t = self.atom()?;
        while *self.peek() == Tok::Caret {
            self.bump();
            match self.bump() {
                Tok::Number(k) => t = Term::power(t, k),
                _ => return self.error("expected exponent after `^`"),
            }
        }
        Ok(t)
    }

    fn atom(&mut self) -> Result<Term> {
        let pos = self.pos();
        match self.bump() {
            Tok::Number(0) => Ok(Term::Zero),
            Tok::Number(1) => Ok(Term::One),
            Tok::Ident(name) => Ok(Term::Var(name)),
            Tok::LParen => {
                let t = self.formula()?;
                match self.bump() {
                    Tok::RParen => Ok(t),
                    _ => Err(Error::Syntax {
                        pos: self.tokens[self.at.saturating_sub(1)].pos,
                        msg: "expected `)`".into(),
                    }),
                }
            }
            Tok::Number(n) => Err(Error::Syntax {
                pos,
                msg: format!("only the constants 0 and 1 are terms, found {n}"),
            }),
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            other => Err(Error::Syntax {
                pos,
                msg: format!("expected a term, found {other:?}"),
            }),
        }
    }
}

/// Parses a single formula.
pub fn parse(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.formula()?;
    p.expect_end()?;
    Ok(t)
}

/// Parses `lhs = rhs` or `lhs <= rhs`.
pub fn parse_equation(text: &str) -> Result<Equation> {
    match parse_statement(text)? {
        Statement::Equation(eq) => Ok(eq),
        other => Err(Error::Syntax {
            pos: 0,
            msg: format!("expected an equation, found `{other}`"),
        }),
    }
}

/// Parses a formula, an equation, or a sequent `p, q |- r`.
pub fn parse_statement(text: &str) -> Result<Statement> {
    let mut p = Parser::new(text)?;
    if *p.peek() == Tok::Turnstile {
        p.bump();
        let conclusion = p.formula()?;
        p.expect_end()?;
        return Ok(Statement::Sequent(Sequent {
            premises: Vec::new(),
            conclusion,
        }));
    }
    let first = p.formula()?;
    match p.peek().clone() {
        Tok::End => Ok(Statement::Formula(first)),
        Tok::Eq | Tok::Leq => {
            let relation = if p.bump() == Tok::Eq {
                Relation::Equal
            } else {
                Relation::LessEq
            };
            let rhs = p.formula()?;
            p.expect_end()?;
            Ok(Statement::Equation(Equation {
                lhs: first,
                rhs,
                relation,
            }))
        }
        Tok::Comma | Tok::Turnstile => {
            let mut premises = vec![first];
            while *p.peek() == Tok::Comma {
                p.bump();
                premises.push(p.formula()?);
            }
            if p.bump() != Tok::Turnstile {
                return p.error("expected `|-`");
            }
            let conclusion = p.formula()?;
            p.expect_end()?;
            Ok(Statement::Sequent(Sequent {
                premises,
                conclusion,
            }))
        }
        other => p.error(format!("unexpected {other:?}")),
    }
}

/// Parses a formula file: one statement per line, `#` starts a comment,
/// blank lines are skipped. Errors carry the line number.
pub fn parse_formula_file(text: &str) -> Result<Vec<Statement>> {
    let mut out = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let body = match line.find('#') {
            Some(i) => &line[..i],
            None => line,
        };
        if body.trim().is_empty() {
            continue;
        }
        let stmt = parse_statement(body).map_err(|e| match e {
            Error::Syntax { pos, msg } => Error::Syntax {
                pos,
                msg: format!("line {}: {msg}", lineno + 1),
            },
            other => other,
        })?;
        out.push(stmt);
    }
    Ok(out)
}
