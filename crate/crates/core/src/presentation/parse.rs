//! Parser for the `.fp` presentation format:
//!
//! ```text
//! presentation := "<" generators "|" relators ">"
//! generators   := ident ("," ident)*
//! relators     := word ("," word)* | empty
//! word         := term+
//! term         := ident ("^" signed-integer)?
//! ident        := [a-zA-Z][a-zA-Z0-9_]*
//! ```
//!
//! `#` starts a comment running to the end of the line.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::presentation::{Letter, Presentation, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Open,
    Close,
    Bar,
    Comma,
    Caret,
    Ident(String),
    Int(i64),
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn tokenize(text: &str) -> Result<(Vec<Spanned>, (usize, usize))> {
    let mut toks = Vec::new();
    let mut line = 1;
    let mut column = 1;
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        let (l, col) = (line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };
        match c {
            '#' => {
                while chars.peek().is_some_and(|&c| c != '\n') {
                    bump(&mut chars);
                }
            }
            c if c.is_whitespace() => {
                bump(&mut chars);
            }
            '<' | '>' | '|' | ',' | '^' => {
                bump(&mut chars);
                let tok = match c {
                    '<' => Tok::Open,
                    '>' => Tok::Close,
                    '|' => Tok::Bar,
                    ',' => Tok::Comma,
                    _ => Tok::Caret,
                };
                toks.push(Spanned { tok, line: l, column: col });
            }
            c if c.is_ascii_alphabetic() => {
                let mut s = String::new();
                while chars
                    .peek()
                    .is_some_and(|&c| c.is_ascii_alphanumeric() || c == '_')
                {
                    s.push(bump(&mut chars).expect("peeked"));
                }
                toks.push(Spanned {
                    tok: Tok::Ident(s),
                    line: l,
                    column: col,
                });
            }
            '-' | '+' | '0'..='9' => {
                let mut s = String::new();
                if c == '-' || c == '+' {
                    s.push(bump(&mut chars).expect("peeked"));
                }
                while chars.peek().is_some_and(char::is_ascii_digit) {
                    s.push(bump(&mut chars).expect("peeked"));
                }
                let v: i64 = s
                    .parse()
                    .map_err(|_| syntax(l, col, format!("invalid integer `{s}`")))?;
                toks.push(Spanned {
                    tok: Tok::Int(v),
                    line: l,
                    column: col,
                });
            }
            other => return Err(syntax(l, col, format!("unexpected character `{other}`"))),
        }
    }
    Ok((toks, (line, column)))
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    eof: (usize, usize),
}

impl Parser {
    fn peek(&self) -> Option<&Spanned> {
        self.toks.get(self.pos)
    }

    fn here(&self) -> (usize, usize) {
        self.peek().map_or(self.eof, |s| (s.line, s.column))
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        match self.peek() {
            Some(s) if s.tok == tok => {
                self.pos += 1;
                Ok(())
            }
            Some(s) => Err(syntax(s.line, s.column, format!("expected {what}, found {:?}", s.tok))),
            None => Err(syntax(self.eof.0, self.eof.1, format!("expected {what}, found end of input"))),
        }
    }

    fn ident(&mut self) -> Result<(String, usize, usize)> {
        match self.peek().cloned() {
            Some(Spanned {
                tok: Tok::Ident(s),
                line,
                column,
            }) => {
                self.pos += 1;
                Ok((s, line, column))
            }
            Some(s) => Err(syntax(s.line, s.column, format!("expected identifier, found {:?}", s.tok))),
            None => Err(syntax(self.eof.0, self.eof.1, "expected identifier, found end of input")),
        }
    }
}

/// A parsed presentation together with any warnings produced while
/// normalizing it.
#[derive(Debug, Clone)]
pub struct ParsedPresentation {
    pub presentation: Presentation,
    pub warnings: Vec<String>,
}

pub fn parse_presentation(text: &str) -> Result<ParsedPresentation> {
    let (toks, eof) = tokenize(text)?;
    let mut p = Parser { toks, pos: 0, eof };
    p.expect(Tok::Open, "`<`")?;

    let mut names = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    loop {
        let (name, _, _) = p.ident()?;
        if index.insert(name.clone(), names.len()).is_some() {
            return Err(Error::DuplicateGenerator(name));
        }
        names.push(name);
        match p.peek().map(|s| &s.tok) {
            Some(Tok::Comma) => p.pos += 1,
            _ => break,
        }
    }
    p.expect(Tok::Bar, "`|` or `,`")?;

    let mut relators = Vec::new();
    if !matches!(p.peek().map(|s| &s.tok), Some(Tok::Close)) {
        loop {
            let mut letters = Vec::new();
            let mut terms = 0;
            while let Some(Spanned {
                tok: Tok::Ident(_), ..
            }) = p.peek()
            {
                let (name, line, column) = p.ident()?;
                let g = *index.get(&name).ok_or(Error::UnknownGenerator {
                    name: name.clone(),
                    line,
                    column,
                })?;
                let mut e = 1i64;
                if matches!(p.peek().map(|s| &s.tok), Some(Tok::Caret)) {
                    p.pos += 1;
                    match p.peek().cloned() {
                        Some(Spanned { tok: Tok::Int(v), .. }) => {
                            p.pos += 1;
                            e = v;
                        }
                        _ => {
                            let (l, c) = p.here();
                            return Err(syntax(l, c, "expected integer exponent after `^`"));
                        }
                    }
                }
                letters.extend(std::iter::repeat_n(Letter::new(g, e < 0), e.unsigned_abs() as usize));
                terms += 1;
            }
            if terms == 0 {
                let (l, c) = p.here();
                return Err(syntax(l, c, "expected a relator word"));
            }
            relators.push(Word::free_reduce(letters));
            match p.peek().map(|s| &s.tok) {
                Some(Tok::Comma) => p.pos += 1,
                _ => break,
            }
        }
    }
    p.expect(Tok::Close, "`>` or `,`")?;
    if let Some(s) = p.peek() {
        return Err(syntax(s.line, s.column, "trailing input after `>`"));
    }

    let (presentation, warnings) = Presentation::with_warnings(names, relators)?;
    Ok(ParsedPresentation {
        presentation,
        warnings,
    })
}
