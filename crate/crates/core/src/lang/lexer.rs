//! Hand-rolled lexer. Produces a flat token stream with source locations;
//! `//` comments run to end of line and are discarded.

use super::ast::SourceLoc;
use crate::error::ParseError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Tok {
    Ident(String),
    Int(i64),
    KwFn,
    KwIf,
    KwElse,
    KwWhile,
    KwReturn,
    KwInt,
    KwBool,
    KwTrue,
    KwFalse,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Comma,
    Colon,
    Semi,
    Arrow,
    Assign,
    Plus,
    Minus,
    Star,
    Slash,
    Percent,
    Lt,
    Le,
    Gt,
    Ge,
    EqEq,
    NotEq,
    AndAnd,
    OrOr,
    Bang,
    Eof,
}

impl Tok {
    pub fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("identifier `{s}`"),
            Tok::Int(n) => format!("integer literal `{n}`"),
            Tok::Eof => "end of input".to_string(),
            other => format!("`{}`", other.text()),
        }
    }

    fn text(&self) -> &'static str {
        match self {
            Tok::KwFn => "fn",
            Tok::KwIf => "if",
            Tok::KwElse => "else",
            Tok::KwWhile => "while",
            Tok::KwReturn => "return",
            Tok::KwInt => "int",
            Tok::KwBool => "bool",
            Tok::KwTrue => "true",
            Tok::KwFalse => "false",
            Tok::LParen => "(",
            Tok::RParen => ")",
            Tok::LBrace => "{",
            Tok::RBrace => "}",
            Tok::Comma => ",",
            Tok::Colon => ":",
            Tok::Semi => ";",
            Tok::Arrow => "->",
            Tok::Assign => "=",
            Tok::Plus => "+",
            Tok::Minus => "-",
            Tok::Star => "*",
            Tok::Slash => "/",
            Tok::Percent => "%",
            Tok::Lt => "<",
            Tok::Le => "<=",
            Tok::Gt => ">",
            Tok::Ge => ">=",
            Tok::EqEq => "==",
            Tok::NotEq => "!=",
            Tok::AndAnd => "&&",
            Tok::OrOr => "||",
            Tok::Bang => "!",
            Tok::Ident(_) | Tok::Int(_) | Tok::Eof => unreachable!(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Token {
    pub tok: Tok,
    pub loc: SourceLoc,
}

pub fn lex(src: &str) -> Result<Vec<Token>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = src.chars().collect();
    let mut i = 0;
    let mut line: u32 = 1;
    let mut col: u32 = 1;

    macro_rules! push {
        ($tok:expr, $loc:expr) => {
            out.push(Token { tok: $tok, loc: $loc })
        };
    }

    while i < chars.len() {
        let c = chars[i];
        let loc = SourceLoc { line, col };
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
            }
            ' ' | '\t' | '\r' => {
                i += 1;
                col += 1;
            }
            '/' if i + 1 < chars.len() && chars[i + 1] == '/' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
            }
            '(' => {
                push!(Tok::LParen, loc);
                i += 1;
                col += 1;
            }
            ')' => {
                push!(Tok::RParen, loc);
                i += 1;
                col += 1;
            }
            '{' => {
                push!(Tok::LBrace, loc);
                i += 1;
                col += 1;
            }
            '}' => {
                push!(Tok::RBrace, loc);
                i += 1;
                col += 1;
            }
            ',' => {
                push!(Tok::Comma, loc);
                i += 1;
                col += 1;
            }
            ':' => {
                push!(Tok::Colon, loc);
                i += 1;
                col += 1;
            }
            ';' => {
                push!(Tok::Semi, loc);
                i += 1;
                col += 1;
            }
            '+' => {
                push!(Tok::Plus, loc);
                i += 1;
                col += 1;
            }
            '*' => {
                push!(Tok::Star, loc);
                i += 1;
                col += 1;
            }
            '/' => {
                push!(Tok::Slash, loc);
                i += 1;
                col += 1;
            }
            '%' => {
                push!(Tok::Percent, loc);
                i += 1;
                col += 1;
            }
            '-' => {
                if i + 1 < chars.len() && chars[i + 1] == '>' {
                    push!(Tok::Arrow, loc);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Minus, loc);
                    i += 1;
                    col += 1;
                }
            }
            '<' => {
                if i + 1 < chars.len() && chars[i + 1] == '=' {
                    push!(Tok::Le, loc);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Lt, loc);
                    i += 1;
                    col += 1;
                }
            }
            '>' => {
                if i + 1 < chars.len() && chars[i + 1] == '=' {
                    push!(Tok::Ge, loc);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Gt, loc);
                    i += 1;
                    col += 1;
                }
            }
            '=' => {
                if i + 1 < chars.len() && chars[i + 1] == '=' {
                    push!(Tok::EqEq, loc);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Assign, loc);
                    i += 1;
                    col += 1;
                }
            }
            '!' => {
                if i + 1 < chars.len() && chars[i + 1] == '=' {
                    push!(Tok::NotEq, loc);
                    i += 2;
                    col += 2;
                } else {
                    push!(Tok::Bang, loc);
                    i += 1;
                    col += 1;
                }
            }
            '&' => {
                if i + 1 < chars.len() && chars[i + 1] == '&' {
                    push!(Tok::AndAnd, loc);
                    i += 2;
                    col += 2;
                } else {
                    return Err(ParseError::UnexpectedChar { ch: '&', line, col });
                }
            }
            '|' => {
                if i + 1 < chars.len() && chars[i + 1] == '|' {
                    push!(Tok::OrOr, loc);
                    i += 2;
                    col += 2;
                } else {
                    return Err(ParseError::UnexpectedChar { ch: '|', line, col });
                }
            }
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                let n: i64 = text
                    .parse()
                    .map_err(|_| ParseError::IntOutOfRange { text: text.clone(), line, col })?;
                col += (i - start) as u32;
                push!(Tok::Int(n), loc);
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let text: String = chars[start..i].iter().collect();
                col += (i - start) as u32;
                let tok = match text.as_str() {
                    "fn" => Tok::KwFn,
                    "if" => Tok::KwIf,
                    "else" => Tok::KwElse,
                    "while" => Tok::KwWhile,
                    "return" => Tok::KwReturn,
                    "int" => Tok::KwInt,
                    "bool" => Tok::KwBool,
                    "true" => Tok::KwTrue,
                    "false" => Tok::KwFalse,
                    _ => Tok::Ident(text),
                };
                push!(tok, loc);
            }
            other => return Err(ParseError::UnexpectedChar { ch: other, line, col }),
        }
    }
    out.push(Token { tok: Tok::Eof, loc: SourceLoc { line, col } });
    Ok(out)
}
