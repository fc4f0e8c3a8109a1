//! Tokenizer for `.rcic` sources.

use std::fmt;

use crate::syntax::Sort;

use super::error::{ParseError, Pos};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Sort(Sort),
    Num(u32),
    Keyword(&'static str),
    LParen,
    RParen,
    LBrace,
    RBrace,
    Colon,
    ColonEq,
    Comma,
    Arrow,
    FatArrow,
    Bar,
    Dot,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "identifier `{}`", s),
            Tok::Sort(s) => write!(f, "`{}`", s),
            Tok::Num(n) => write!(f, "`{}`", n),
            Tok::Keyword(k) => write!(f, "`{}`", k),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::LBrace => f.write_str("`{`"),
            Tok::RBrace => f.write_str("`}`"),
            Tok::Colon => f.write_str("`:`"),
            Tok::ColonEq => f.write_str("`:=`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Arrow => f.write_str("`->`"),
            Tok::FatArrow => f.write_str("`=>`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const KEYWORDS: &[&str] = &[
    "forall",
    "fun",
    "fix",
    "match",
    "as",
    "in",
    "return",
    "using",
    "with",
    "end",
    "struct",
    "inductive",
    "def",
    "check",
    "param-check",
];

/// Whether `s` cannot be used as an identifier: keywords and sort names.
pub fn is_keyword(s: &str) -> bool {
    KEYWORDS.contains(&s) || s == "Prop" || sort_prefix(s).is_some()
}

fn sort_prefix(s: &str) -> Option<(&'static str, &str)> {
    ["Set", "Type"]
        .into_iter()
        .find_map(|p| s.strip_prefix(p).filter(|rest| rest.chars().all(|c| c.is_ascii_digit())).map(|rest| (p, rest)))
}

/// Identifiers the translation derives from user names: anything containing
/// a prime, or ending in `_R` (optionally followed by digits).
pub fn is_reserved(s: &str) -> bool {
    s.contains('\'') || s.trim_end_matches(|c: char| c.is_ascii_digit()).ends_with("_R")
}

#[derive(Clone, Debug)]
pub struct Token {
    pub tok: Tok,
    pub pos: Pos,
}

pub fn tokenize(src: &str, allow_reserved: bool) -> Result<Vec<Token>, ParseError> {
    let mut lx = Lexer {
        chars: src.chars().collect(),
        i: 0,
        line: 1,
        col: 1,
    };
    let mut out = Vec::new();
    loop {
        lx.skip_trivia()?;
        let pos = lx.pos();
        let Some(c) = lx.peek(0) else {
            out.push(Token { tok: Tok::Eof, pos });
            return Ok(out);
        };
        let tok = match c {
            '(' => {
                lx.bump();
                Tok::LParen
            }
            ')' => {
                lx.bump();
                Tok::RParen
            }
            '{' => {
                lx.bump();
                Tok::LBrace
            }
            '}' => {
                lx.bump();
                Tok::RBrace
            }
            ',' => {
                lx.bump();
                Tok::Comma
            }
            '.' => {
                lx.bump();
                Tok::Dot
            }
            '|' => {
                lx.bump();
                Tok::Bar
            }
            ':' if lx.peek(1) == Some('=') => {
                lx.bump();
                lx.bump();
                Tok::ColonEq
            }
            ':' => {
                lx.bump();
                Tok::Colon
            }
            '-' if lx.peek(1) == Some('>') => {
                lx.bump();
                lx.bump();
                Tok::Arrow
            }
            '=' if lx.peek(1) == Some('>') => {
                lx.bump();
                lx.bump();
                Tok::FatArrow
            }
            c if c.is_ascii_digit() => {
                let s = lx.take_while(|c| c.is_ascii_digit());
                Tok::Num(s.parse().map_err(|_| ParseError::new(pos, "a number that fits in 32 bits", &s))?)
            }
            c if c.is_ascii_alphabetic() || c == '_' => lx.word(pos, allow_reserved)?,
            other => return Err(ParseError::new(pos, "a token", &format!("character `{}`", other))),
        };
        out.push(Token { tok, pos });
    }
}

struct Lexer {
    chars: Vec<char>,
    i: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn pos(&self) -> Pos {
        Pos {
            line: self.line,
            col: self.col,
        }
    }

    fn peek(&self, k: usize) -> Option<char> {
        self.chars.get(self.i + k).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek(0)?;
        self.i += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek(0).filter(|&c| f(c)) {
            s.push(c);
            self.bump();
        }
        s
    }

    fn skip_trivia(&mut self) -> Result<(), ParseError> {
        loop {
            match self.peek(0) {
                Some(c) if c.is_whitespace() => {
                    self.bump();
                }
                Some('(') if self.peek(1) == Some('*') => {
                    let start = self.pos();
                    self.bump();
                    self.bump();
                    let mut depth = 1;
                    while depth > 0 {
                        match (self.peek(0), self.peek(1)) {
                            (None, _) => return Err(ParseError::new(start, "`*)` closing this comment", "end of input")),
                            (Some('('), Some('*')) => {
                                self.bump();
                                self.bump();
                                depth += 1;
                            }
                            (Some('*'), Some(')')) => {
                                self.bump();
                                self.bump();
                                depth -= 1;
                            }
                            _ => {
                                self.bump();
                            }
                        }
                    }
                }
                _ => return Ok(()),
            }
        }
    }

    fn word(&mut self, pos: Pos, allow_reserved: bool) -> Result<Tok, ParseError> {
        let mut s = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_' || c == '\'');
        if s == "param" && self.peek(0) == Some('-') {
            let rest: String = self.chars[self.i..].iter().take(6).collect();
            if rest == "-check" && !self.peek(6).is_some_and(|c| c.is_ascii_alphanumeric() || c == '_') {
                for _ in 0..6 {
                    self.bump();
                }
                s = "param-check".into();
            }
        }
        if let Some(k) = KEYWORDS.iter().find(|k| **k == s) {
            return Ok(Tok::Keyword(k));
        }
        if s == "Prop" {
            return Ok(Tok::Sort(Sort::Prop));
        }
        if let Some((kind, digits)) = sort_prefix(&s) {
            if digits.is_empty() {
                return Err(ParseError::new(pos, &format!("a universe level after `{}`", kind), &s));
            }
            let level: u32 = digits
                .parse()
                .map_err(|_| ParseError::new(pos, "a universe level that fits in 32 bits", &s))?;
            return match kind {
                "Set" => Ok(Tok::Sort(Sort::Set(level))),
                _ => Sort::ty(level)
                    .map(Tok::Sort)
                    .ok_or_else(|| ParseError::new(pos, "a Type level of at least 1", &s)),
            };
        }
        if !allow_reserved && is_reserved(&s) {
            return Err(ParseError::new(
                pos,
                "an identifier without a prime or `_R` suffix (those are reserved for translated names)",
                &s,
            ));
        }
        Ok(Tok::Ident(s))
    }
}
