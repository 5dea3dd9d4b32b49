//! Finitely presented groups in the `< a, b | a^5 = b^8 = e, b a b^-1 = a^2 >`
//! notation.
//!
//! Grammar:
//!
//! ```text
//! presentation := '<' gens '|' relations? '>'
//! gens         := ident (',' ident)*
//! relations    := relation (',' relation)*
//! relation     := word ('=' word)*
//! word         := factor+
//! factor       := atom ('^' '-'? int)?
//! atom         := ident | 'e' | '(' word ')'
//! ```
//!
//! Juxtaposition (or an optional `*`) is composition. A run of letters such as
//! `bab` is split into single-letter generators when every declared generator
//! used is one character long. An exponent binds to the last letter of such a
//! run. A chain `w1 = w2 = ... = wk` contributes the relators `wi wk^-1`.

use std::fmt;

use thiserror::Error;

use crate::perm::{FiniteGroup, GroupError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("syntax error at {position}: {message}")]
    Syntax { position: usize, message: String },
    #[error("undeclared generator '{symbol}' at {position}")]
    UndeclaredGenerator { symbol: String, position: usize },
    #[error("coset table overflow: more than {max_cosets} live cosets")]
    TableOverflow { max_cosets: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl PresentationError {
    fn syntax(position: usize, message: impl Into<String>) -> Self {
        PresentationError::Syntax {
            position,
            message: message.into(),
        }
    }
}

/// One syllable `g^k` of a word; `generator` indexes the declared generator list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Syllable {
    pub generator: usize,
    pub exponent: i64,
}

/// A freely reduced word in the generators.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct GroupWord {
    letters: Vec<Syllable>,
}

impl GroupWord {
    pub fn identity() -> Self {
        GroupWord::default()
    }

    pub fn letter(generator: usize, exponent: i64) -> Self {
        let mut w = GroupWord::default();
        w.push(Syllable {
            generator,
            exponent,
        });
        w
    }

    pub fn from_syllables(syllables: impl IntoIterator<Item = Syllable>) -> Self {
        let mut w = GroupWord::default();
        for s in syllables {
            w.push(s);
        }
        w
    }

    pub fn letters(&self) -> &[Syllable] {
        &self.letters
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// Total length counting exponents.
    pub fn length(&self) -> usize {
        self.letters
            .iter()
            .map(|s| s.exponent.unsigned_abs() as usize)
            .sum()
    }

    fn push(&mut self, s: Syllable) {
        if s.exponent == 0 {
            return;
        }
        match self.letters.last_mut() {
            Some(last) if last.generator == s.generator => {
                last.exponent += s.exponent;
                if last.exponent == 0 {
                    self.letters.pop();
                }
            }
            _ => self.letters.push(s),
        }
    }

    pub fn concat(&self, other: &GroupWord) -> GroupWord {
        let mut w = self.clone();
        for &s in &other.letters {
            w.push(s);
        }
        w
    }

    pub fn inverse(&self) -> GroupWord {
        GroupWord::from_syllables(self.letters.iter().rev().map(|s| Syllable {
            generator: s.generator,
            exponent: -s.exponent,
        }))
    }

    pub fn pow(&self, exp: i64) -> GroupWord {
        let base = if exp < 0 {
            self.inverse()
        } else {
            self.clone()
        };
        let mut w = GroupWord::identity();
        for _ in 0..exp.unsigned_abs() {
            w = w.concat(&base);
        }
        w
    }

    pub fn max_generator(&self) -> Option<usize> {
        self.letters.iter().map(|s| s.generator).max()
    }

    /// Evaluates the word in `group`, with generator `i` sent to element
    /// `images[i]`.
    pub fn evaluate(&self, group: &FiniteGroup, images: &[usize]) -> usize {
        self.letters.iter().fold(0, |acc, s| {
            group.mul(acc, group.pow(images[s.generator], s.exponent))
        })
    }

    pub fn display<'a>(&'a self, names: &'a [String]) -> impl fmt::Display + 'a {
        WordDisplay { word: self, names }
    }
}

struct WordDisplay<'a> {
    word: &'a GroupWord,
    names: &'a [String],
}

impl fmt::Display for WordDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.word.is_empty() {
            return write!(f, "e");
        }
        for (i, s) in self.word.letters.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{}", self.names[s.generator])?;
            if s.exponent != 1 {
                write!(f, "^{}", s.exponent)?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relators: Vec<GroupWord>,
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "< {} |", self.generators.join(", "))?;
        for (i, r) in self.relators.iter().enumerate() {
            let sep = if i == 0 { " " } else { ", " };
            write!(f, "{sep}{}", r.display(&self.generators))?;
        }
        write!(f, " >")
    }
}

pub fn parse_presentation(text: &str) -> Result<Presentation, PresentationError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let pres = p.presentation()?;
    if let Some(t) = p.peek() {
        return Err(PresentationError::syntax(t.at, "trailing input after '>'"));
    }
    Ok(pres)
}

/// Parses a bare word against a fixed generator list.
pub fn parse_word(text: &str, generators: &[String]) -> Result<GroupWord, PresentationError> {
    let tokens = tokenize(text)?;
    let mut p = Parser {
        tokens,
        pos: 0,
        end: text.len(),
    };
    let w = p.word(generators)?;
    if let Some(t) = p.peek() {
        return Err(PresentationError::syntax(t.at, "unexpected token in word"));
    }
    Ok(w)
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Open,
    Close,
    Bar,
    Comma,
    Eq,
    Caret,
    Minus,
    Star,
    LParen,
    RParen,
    Int(i64),
    Ident(String),
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    at: usize,
}

fn tokenize(text: &str) -> Result<Vec<Token>, PresentationError> {
    let mut out = Vec::new();
    let mut chars = text.char_indices().peekable();
    while let Some((at, c)) = chars.next() {
        let tok = match c {
            c if c.is_whitespace() => continue,
            '<' | '⟨' => Tok::Open,
            '>' | '⟩' => Tok::Close,
            '|' => Tok::Bar,
            ',' => Tok::Comma,
            '=' => Tok::Eq,
            '^' => Tok::Caret,
            '-' => Tok::Minus,
            '*' => Tok::Star,
            '(' => Tok::LParen,
            ')' => Tok::RParen,
            c if c.is_ascii_digit() => {
                let mut s = c.to_string();
                while let Some(&(_, d)) = chars.peek().filter(|(_, d)| d.is_ascii_digit()) {
                    s.push(d);
                    chars.next();
                }
                Tok::Int(
                    s.parse()
                        .map_err(|_| PresentationError::syntax(at, "integer out of range"))?,
                )
            }
            c if c.is_alphabetic() || c == '_' => {
                let mut s = c.to_string();
                while let Some(&(_, d)) = chars
                    .peek()
                    .filter(|(_, d)| d.is_alphanumeric() || *d == '_')
                {
                    s.push(d);
                    chars.next();
                }
                Tok::Ident(s)
            }
            other => {
                return Err(PresentationError::syntax(
                    at,
                    format!("unexpected character '{other}'"),
                ))
            }
        };
        out.push(Token { tok, at });
    }
    Ok(out)
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.end, |t| t.at)
    }

    fn next_is(&self, tok: &Tok) -> bool {
        self.peek().is_some_and(|t| &t.tok == tok)
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), PresentationError> {
        if self.next_is(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(PresentationError::syntax(
                self.here(),
                format!("expected {what}"),
            ))
        }
    }

    fn presentation(&mut self) -> Result<Presentation, PresentationError> {
        self.expect(Tok::Open, "'<'")?;
        let mut generators: Vec<String> = Vec::new();
        loop {
            let at = self.here();
            match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Ident(name)) => {
                    if name == "e" {
                        return Err(PresentationError::syntax(
                            at,
                            "'e' is reserved for the identity",
                        ));
                    }
                    if generators.contains(&name) {
                        return Err(PresentationError::syntax(
                            at,
                            format!("generator '{name}' declared twice"),
                        ));
                    }
                    generators.push(name);
                    self.pos += 1;
                }
                _ => return Err(PresentationError::syntax(at, "expected generator name")),
            }
            if self.next_is(&Tok::Comma) {
                self.pos += 1;
            } else {
                break;
            }
        }
        self.expect(Tok::Bar, "'|'")?;

        let mut relators = Vec::new();
        if !self.next_is(&Tok::Close) {
            loop {
                self.relation(&generators, &mut relators)?;
                if self.next_is(&Tok::Comma) {
                    self.pos += 1;
                } else {
                    break;
                }
            }
        }
        self.expect(Tok::Close, "',' or '>'")?;
        Ok(Presentation {
            generators,
            relators,
        })
    }

    fn relation(
        &mut self,
        generators: &[String],
        out: &mut Vec<GroupWord>,
    ) -> Result<(), PresentationError> {
        let mut terms = vec![self.word(generators)?];
        while self.next_is(&Tok::Eq) {
            self.pos += 1;
            terms.push(self.word(generators)?);
        }
        let last = terms.pop().expect("at least one term");
        if terms.is_empty() {
            out.push(last);
        } else {
            let inv = last.inverse();
            out.extend(terms.iter().map(|t| t.concat(&inv)));
        }
        Ok(())
    }

    fn word(&mut self, generators: &[String]) -> Result<GroupWord, PresentationError> {
        let mut w = GroupWord::identity();
        let mut factors = 0;
        loop {
            let starred = factors > 0 && self.next_is(&Tok::Star);
            if starred {
                self.pos += 1;
            }
            let at = self.here();
            let mut atoms: Vec<GroupWord> = match self.peek().map(|t| t.tok.clone()) {
                Some(Tok::Ident(name)) => {
                    self.pos += 1;
                    resolve_ident(&name, at, generators)?
                }
                Some(Tok::LParen) => {
                    self.pos += 1;
                    let inner = self.word(generators)?;
                    self.expect(Tok::RParen, "')'")?;
                    vec![inner]
                }
                _ if factors == 0 || starred => {
                    return Err(PresentationError::syntax(at, "expected a word"))
                }
                _ => break,
            };
            if self.next_is(&Tok::Caret) {
                self.pos += 1;
                let exp = self.exponent()?;
                let last = atoms.pop().expect("nonempty atom list");
                atoms.push(last.pow(exp));
            }
            for a in atoms {
                w = w.concat(&a);
            }
            factors += 1;
        }
        Ok(w)
    }

    fn exponent(&mut self) -> Result<i64, PresentationError> {
        let negative = if self.next_is(&Tok::Minus) {
            self.pos += 1;
            true
        } else {
            false
        };
        match self.peek().map(|t| t.tok.clone()) {
            Some(Tok::Int(k)) => {
                self.pos += 1;
                Ok(if negative { -k } else { k })
            }
            _ => Err(PresentationError::syntax(
                self.here(),
                "expected integer exponent",
            )),
        }
    }
}

fn resolve_ident(
    name: &str,
    at: usize,
    generators: &[String],
) -> Result<Vec<GroupWord>, PresentationError> {
    if name == "e" {
        return Ok(vec![GroupWord::identity()]);
    }
    if let Some(i) = generators.iter().position(|g| g == name) {
        return Ok(vec![GroupWord::letter(i, 1)]);
    }
    let mut out = Vec::new();
    for (off, c) in name.char_indices() {
        let s = c.to_string();
        if s == "e" {
            out.push(GroupWord::identity());
        } else if let Some(i) = generators.iter().position(|g| *g == s) {
            out.push(GroupWord::letter(i, 1));
        } else {
            let symbol = if out.is_empty() { name.to_string() } else { s };
            return Err(PresentationError::UndeclaredGenerator {
                symbol,
                position: at + off,
            });
        }
    }
    Ok(out)
}
