//! Tokenizer with line/column tracking.

use num_bigint::BigUint;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("syntax error at {line}:{column}: {message}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl SyntaxError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        SyntaxError {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TokenKind {
    /// Letters followed by digits: an indeterminate. The index is the digit
    /// suffix; the letter prefix is cosmetic (`x1` and `y1` are the same
    /// variable). The reserved prefix `gn` introduces the builtin instead.
    Var(usize),
    /// The builtin `gn<k>` head.
    GnHead(usize),
    /// Pure-letter identifier: a named constant.
    Name(String),
    Int(BigUint),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    Semicolon,
    Comma,
    End,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Var(i) => write!(f, "variable x{i}"),
            TokenKind::GnHead(n) => write!(f, "gn{n}"),
            TokenKind::Name(n) => write!(f, "name `{n}`"),
            TokenKind::Int(v) => write!(f, "integer {v}"),
            TokenKind::Plus => write!(f, "`+`"),
            TokenKind::Minus => write!(f, "`-`"),
            TokenKind::Star => write!(f, "`*`"),
            TokenKind::Caret => write!(f, "`^`"),
            TokenKind::LParen => write!(f, "`(`"),
            TokenKind::RParen => write!(f, "`)`"),
            TokenKind::Semicolon => write!(f, "`;`"),
            TokenKind::Comma => write!(f, "`,`"),
            TokenKind::End => write!(f, "end of input"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub line: usize,
    pub column: usize,
}

pub fn tokenize(text: &str) -> Result<Vec<Token>, SyntaxError> {
    let mut tokens = Vec::new();
    let mut line = 1usize;
    let mut column = 1usize;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0usize;
    while i < chars.len() {
        let (l, c) = (line, column);
        let ch = chars[i];
        let mut advance = |n: usize, line: &mut usize, column: &mut usize| {
            for k in 0..n {
                if chars[i + k] == '\n' {
                    *line += 1;
                    *column = 1;
                } else {
                    *column += 1;
                }
            }
            i += n;
        };
        match ch {
            ' ' | '\t' | '\r' | '\n' => {
                advance(1, &mut line, &mut column);
            }
            '+' | '-' | '*' | '^' | '(' | ')' | ';' | ',' => {
                let kind = match ch {
                    '+' => TokenKind::Plus,
                    '-' => TokenKind::Minus,
                    '*' => TokenKind::Star,
                    '^' => TokenKind::Caret,
                    '(' => TokenKind::LParen,
                    ')' => TokenKind::RParen,
                    ';' => TokenKind::Semicolon,
                    _ => TokenKind::Comma,
                };
                tokens.push(Token { kind, line: l, column: c });
                advance(1, &mut line, &mut column);
            }
            '0'..='9' => {
                let start = i;
                let mut len = 0;
                while i + len < chars.len() && chars[i + len].is_ascii_digit() {
                    len += 1;
                }
                let digits: String = chars[start..start + len].iter().collect();
                let value: BigUint = digits.parse().expect("digits parse");
                tokens.push(Token {
                    kind: TokenKind::Int(value),
                    line: l,
                    column: c,
                });
                advance(len, &mut line, &mut column);
            }
            _ if ch.is_ascii_alphabetic() => {
                let start = i;
                let mut len = 0;
                while i + len < chars.len() && chars[i + len].is_ascii_alphabetic() {
                    len += 1;
                }
                let mut digits = 0;
                while i + len + digits < chars.len() && chars[i + len + digits].is_ascii_digit() {
                    digits += 1;
                }
                let letters: String = chars[start..start + len].iter().collect();
                let suffix: String = chars[start + len..start + len + digits].iter().collect();
                let kind = if digits == 0 {
                    TokenKind::Name(letters)
                } else if letters == "gn" {
                    let n: usize = suffix.parse().map_err(|_| {
                        SyntaxError::new(l, c, format!("gn arity `{suffix}` too large"))
                    })?;
                    TokenKind::GnHead(n)
                } else {
                    let idx: usize = suffix.parse().map_err(|_| {
                        SyntaxError::new(l, c, format!("variable index `{suffix}` too large"))
                    })?;
                    if idx == 0 {
                        return Err(SyntaxError::new(l, c, "variable indices start at 1"));
                    }
                    TokenKind::Var(idx)
                };
                tokens.push(Token { kind, line: l, column: c });
                advance(len + digits, &mut line, &mut column);
            }
            other => {
                return Err(SyntaxError::new(l, c, format!("unexpected character `{other}`")));
            }
        }
    }
    tokens.push(Token {
        kind: TokenKind::End,
        line,
        column,
    });
    Ok(tokens)
}
