//! Recursive-descent parser for formulas, sequents and metainferences.
//!
//! Precedence, tightest first: `~`, `&`, `|`, `->`. `&` and `|` associate to
//! the left, `->` to the right.

use crate::error::ParseError;
use crate::formula::{is_identifier, Atom, Formula};
use crate::semantics::{Inference, Metainference};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Ident(String),
    Bot,
    Not,
    And,
    Or,
    Arrow,
    Turnstile,
    MetaTurnstile,
    Comma,
    Semicolon,
    LParen,
    RParen,
    LBracket,
    RBracket,
    End,
}

impl Token {
    fn describe(&self) -> String {
        match self {
            Token::Ident(name) => format!("atom `{name}`"),
            Token::Bot => "`bot`".into(),
            Token::Not => "`~`".into(),
            Token::And => "`&`".into(),
            Token::Or => "`|`".into(),
            Token::Arrow => "`->`".into(),
            Token::Turnstile => "`=>`".into(),
            Token::MetaTurnstile => "`=>*`".into(),
            Token::Comma => "`,`".into(),
            Token::Semicolon => "`;`".into(),
            Token::LParen => "`(`".into(),
            Token::RParen => "`)`".into(),
            Token::LBracket => "`[`".into(),
            Token::RBracket => "`]`".into(),
            Token::End => "end of input".into(),
        }
    }
}

fn tokenize(input: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = input.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let token = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Token::Not,
            b'&' => Token::And,
            b'|' => Token::Or,
            b',' => Token::Comma,
            b';' => Token::Semicolon,
            b'(' => Token::LParen,
            b')' => Token::RParen,
            b'[' => Token::LBracket,
            b']' => Token::RBracket,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Token::Arrow
            }
            b'=' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                if bytes.get(i + 1) == Some(&b'*') {
                    i += 1;
                    Token::MetaTurnstile
                } else {
                    Token::Turnstile
                }
            }
            b'a'..=b'z' => {
                let mut end = i + 1;
                while end < bytes.len()
                    && (bytes[end].is_ascii_lowercase()
                        || bytes[end].is_ascii_digit()
                        || bytes[end] == b'_')
                {
                    end += 1;
                }
                let word = &input[i..end];
                i = end - 1;
                debug_assert!(is_identifier(word));
                if word == "bot" {
                    Token::Bot
                } else {
                    Token::Ident(word.to_string())
                }
            }
            _ => {
                let ch = input[i..].chars().next().unwrap_or('?');
                return Err(ParseError::new(i, format!("unexpected character {ch:?}")));
            }
        };
        out.push((start, token));
        i += 1;
    }
    out.push((input.len(), Token::End));
    Ok(out)
}

struct Parser {
    tokens: Vec<(usize, Token)>,
    pos: usize,
}

impl Parser {
    fn new(input: &str) -> Result<Parser, ParseError> {
        let tokens = tokenize(input)?;
        if tokens.len() == 1 {
            return Err(ParseError::new(0, "empty input"));
        }
        Ok(Parser { tokens, pos: 0 })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.pos].1
    }

    fn offset(&self) -> usize {
        self.tokens[self.pos].0
    }

    fn bump(&mut self) -> Token {
        let t = self.tokens[self.pos].1.clone();
        if t != Token::End {
            self.pos += 1;
        }
        t
    }

    fn eat(&mut self, expected: &Token) -> bool {
        if self.peek() == expected {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, expected: Token) -> Result<(), ParseError> {
        if self.eat(&expected) {
            Ok(())
        } else {
            Err(self.unexpected(&format!("expected {}", expected.describe())))
        }
    }

    fn unexpected(&self, context: &str) -> ParseError {
        ParseError::new(
            self.offset(),
            format!("{context}, found {}", self.peek().describe()),
        )
    }

    fn finish(&self) -> Result<(), ParseError> {
        if *self.peek() == Token::End {
            Ok(())
        } else {
            Err(self.unexpected("expected end of input"))
        }
    }

    fn implication(&mut self) -> Result<Formula, ParseError> {
        let left = self.disjunction()?;
        if self.eat(&Token::Arrow) {
            let right = self.implication()?;
            Ok(Formula::implies(left, right))
        } else {
            Ok(left)
        }
    }

    fn disjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.conjunction()?;
        while self.eat(&Token::Or) {
            let right = self.conjunction()?;
            left = Formula::or(left, right);
        }
        Ok(left)
    }

    fn conjunction(&mut self) -> Result<Formula, ParseError> {
        let mut left = self.unary()?;
        while self.eat(&Token::And) {
            let right = self.unary()?;
            left = Formula::and(left, right);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula, ParseError> {
        match self.peek().clone() {
            Token::Not => {
                self.bump();
                Ok(Formula::not(self.unary()?))
            }
            Token::Bot => {
                self.bump();
                Ok(Formula::Bottom)
            }
            Token::Ident(name) => {
                let at = self.offset();
                self.bump();
                let atom = Atom::new(name).map_err(|e| ParseError::new(at, e.to_string()))?;
                Ok(Formula::Atom(atom))
            }
            Token::LParen => {
                self.bump();
                let inner = self.implication()?;
                self.expect(Token::RParen)?;
                Ok(inner)
            }
            _ => Err(self.unexpected("expected a formula")),
        }
    }

    fn formula_list(&mut self, stop: &[Token]) -> Result<Vec<Formula>, ParseError> {
        let mut out = Vec::new();
        if stop.contains(self.peek()) {
            return Ok(out);
        }
        out.push(self.implication()?);
        while self.eat(&Token::Comma) {
            out.push(self.implication()?);
        }
        Ok(out)
    }

    fn sequent(&mut self) -> Result<Inference, ParseError> {
        let antecedent = self.formula_list(&[Token::Turnstile])?;
        self.expect(Token::Turnstile)?;
        let succedent =
            self.formula_list(&[Token::End, Token::Semicolon, Token::RBracket])?;
        Ok(Inference::new(antecedent, succedent))
    }

    fn metainference(&mut self) -> Result<Metainference, ParseError> {
        self.expect(Token::LBracket)?;
        let mut premises = Vec::new();
        if !self.eat(&Token::RBracket) {
            premises.push(self.sequent()?);
            while self.eat(&Token::Semicolon) {
                premises.push(self.sequent()?);
            }
            self.expect(Token::RBracket)?;
        }
        self.expect(Token::MetaTurnstile)?;
        self.expect(Token::LBracket)?;
        let conclusion = self.sequent()?;
        self.expect(Token::RBracket)?;
        Ok(Metainference::new(premises, conclusion))
    }
}

pub fn formula(input: &str) -> Result<Formula, ParseError> {
    let mut p = Parser::new(input)?;
    let f = p.implication()?;
    p.finish()?;
    Ok(f)
}

/// `G1, G2 => D1, D2`; either side may be empty.
pub fn inference(input: &str) -> Result<Inference, ParseError> {
    let mut p = Parser::new(input)?;
    let s = p.sequent()?;
    p.finish()?;
    Ok(s)
}

/// `[ s1 ; s2 ] =>* [ s ]`, premises possibly empty (`[] =>* [ s ]`).
pub fn metainference(input: &str) -> Result<Metainference, ParseError> {
    let mut p = Parser::new(input)?;
    let m = p.metainference()?;
    p.finish()?;
    Ok(m)
}
