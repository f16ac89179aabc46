//! Tokenizer shared by the Turtle and SPARQL parsers.
//!
//! Both grammars are small subsets of their W3C counterparts and share the
//! same term syntax, so one lexer serves both. Unsupported constructs that
//! the lexer can recognise (long strings, blank nodes, exponents) are
//! surfaced as [`TokenKind::Unsupported`] so the parsers can name them.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Position {
    pub line: usize,
    pub column: usize,
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum TokenKind {
    Iri(String),
    Prefixed {
        prefix: String,
        local: String,
    },
    Var(String),
    Str(String),
    Integer(String),
    Decimal(String),
    /// A bare word: keywords, `a`, booleans.
    Word(String),
    /// `@prefix`, `@base`, or a language tag.
    At(String),
    Dot,
    Semicolon,
    Comma,
    LBrace,
    RBrace,
    Star,
    LParen,
    RParen,
    /// Recognised but outside the supported subset.
    Unsupported(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Position,
}

#[derive(Debug, Clone, PartialEq)]
pub struct LexError {
    pub pos: Position,
    pub message: String,
}

pub fn tokenize(input: &str) -> Result<Vec<Token>, LexError> {
    Lexer::new(input).run()
}

struct Lexer {
    chars: Vec<char>,
    idx: usize,
    line: usize,
    column: usize,
}

fn is_name_start(c: char) -> bool {
    c.is_ascii_alphabetic() || c == '_'
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '-'
}

impl Lexer {
    fn new(src: &str) -> Self {
        Self {
            chars: src.chars().collect(),
            idx: 0,
            line: 1,
            column: 1,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.idx).copied()
    }

    fn peek_at(&self, off: usize) -> Option<char> {
        self.chars.get(self.idx + off).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.idx).copied()?;
        self.idx += 1;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn pos(&self) -> Position {
        Position {
            line: self.line,
            column: self.column,
        }
    }

    fn err(&self, pos: Position, message: impl Into<String>) -> LexError {
        LexError {
            pos,
            message: message.into(),
        }
    }

    fn run(mut self) -> Result<Vec<Token>, LexError> {
        let mut out = Vec::new();
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.bump();
                continue;
            }
            if c == '#' {
                while let Some(c) = self.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.bump();
                }
                continue;
            }
            let pos = self.pos();
            let kind = self.token(c, pos)?;
            out.push(Token { kind, pos });
        }
        Ok(out)
    }

    fn token(&mut self, c: char, pos: Position) -> Result<TokenKind, LexError> {
        let single = match c {
            '.' if !self.peek_at(1).is_some_and(|d| d.is_ascii_digit()) => Some(TokenKind::Dot),
            ';' => Some(TokenKind::Semicolon),
            ',' => Some(TokenKind::Comma),
            '{' => Some(TokenKind::LBrace),
            '}' => Some(TokenKind::RBrace),
            '*' => Some(TokenKind::Star),
            '(' => Some(TokenKind::LParen),
            ')' => Some(TokenKind::RParen),
            '[' => Some(TokenKind::Unsupported("blank node")),
            ']' => Some(TokenKind::Unsupported("blank node")),
            _ => None,
        };
        if let Some(kind) = single {
            self.bump();
            return Ok(kind);
        }
        match c {
            '<' => self.iri(pos),
            '"' | '\'' => self.string(c, pos),
            '?' | '$' => {
                self.bump();
                let name = self.take_while(|c| c.is_ascii_alphanumeric() || c == '_');
                if name.is_empty() || !name.starts_with(|c: char| c.is_ascii_alphabetic()) {
                    return Err(self.err(pos, "malformed variable name"));
                }
                Ok(TokenKind::Var(name))
            }
            '@' => {
                self.bump();
                let word = self.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if word.is_empty() {
                    return Err(self.err(pos, "expected directive or language tag after '@'"));
                }
                Ok(TokenKind::At(word))
            }
            '^' if self.peek_at(1) == Some('^') => {
                self.bump();
                self.bump();
                Ok(TokenKind::Unsupported("datatyped literal"))
            }
            '_' if self.peek_at(1) == Some(':') => {
                self.bump();
                self.bump();
                self.take_while(is_name_char);
                Ok(TokenKind::Unsupported("blank node"))
            }
            '+' | '-' | '.' | '0'..='9' => self.number(pos),
            ':' => self.prefixed(String::new()),
            c if is_name_start(c) => {
                let word = self.take_while(|c| is_name_char(c) || c == '.');
                let trimmed = self.untake_trailing_dots(word);
                if self.peek() == Some(':') {
                    self.prefixed(trimmed)
                } else {
                    Ok(TokenKind::Word(trimmed))
                }
            }
            other => Err(self.err(pos, format!("unexpected character {other:?}"))),
        }
    }

    fn take_while(&mut self, pred: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !pred(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    /// Names may contain dots but never end with one; give trailing dots
    /// back to the input so they lex as statement terminators.
    fn untake_trailing_dots(&mut self, mut word: String) -> String {
        while word.ends_with('.') {
            word.pop();
            self.idx -= 1;
            self.column -= 1;
        }
        word
    }

    fn prefixed(&mut self, prefix: String) -> Result<TokenKind, LexError> {
        self.bump(); // ':'
        let local = self.take_while(|c| is_name_char(c) || c == '.');
        let local = self.untake_trailing_dots(local);
        Ok(TokenKind::Prefixed { prefix, local })
    }

    fn iri(&mut self, pos: Position) -> Result<TokenKind, LexError> {
        self.bump(); // '<'
        let mut s = String::new();
        loop {
            match self.bump() {
                Some('>') => break,
                Some(c) if c.is_whitespace() || c == '<' || c == '"' => {
                    return Err(self.err(pos, "invalid character in IRI"));
                }
                Some(c) => s.push(c),
                None => return Err(self.err(pos, "unterminated IRI")),
            }
        }
        Ok(TokenKind::Iri(s))
    }

    fn string(&mut self, quote: char, pos: Position) -> Result<TokenKind, LexError> {
        if self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote) {
            self.bump();
            self.bump();
            self.bump();
            return Ok(TokenKind::Unsupported("multi-line literal"));
        }
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                Some(c) if c == quote => break,
                Some('\\') => {
                    let esc = self
                        .bump()
                        .ok_or_else(|| self.err(pos, "unterminated string literal"))?;
                    match esc {
                        'n' => s.push('\n'),
                        'r' => s.push('\r'),
                        't' => s.push('\t'),
                        '"' => s.push('"'),
                        '\'' => s.push('\''),
                        '\\' => s.push('\\'),
                        'u' => {
                            let hex: String = (0..4).filter_map(|_| self.bump()).collect();
                            let ch = u32::from_str_radix(&hex, 16)
                                .ok()
                                .and_then(char::from_u32)
                                .ok_or_else(|| self.err(pos, "bad \\u escape"))?;
                            s.push(ch);
                        }
                        other => {
                            return Err(self.err(pos, format!("unknown escape \\{other}")));
                        }
                    }
                }
                Some('\n') | None => return Err(self.err(pos, "unterminated string literal")),
                Some(c) => s.push(c),
            }
        }
        Ok(TokenKind::Str(s))
    }

    fn number(&mut self, pos: Position) -> Result<TokenKind, LexError> {
        let mut s = String::new();
        if let Some(sign @ ('+' | '-')) = self.peek() {
            s.push(sign);
            self.bump();
        }
        let int_part = self.take_while(|c| c.is_ascii_digit());
        s.push_str(&int_part);
        let mut decimal = false;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
            s.push('.');
            s.push_str(&self.take_while(|c| c.is_ascii_digit()));
            decimal = true;
        }
        if matches!(self.peek(), Some('e' | 'E')) {
            self.take_while(|c| c.is_ascii_alphanumeric() || c == '+' || c == '-');
            return Ok(TokenKind::Unsupported("double literal"));
        }
        if int_part.is_empty() && !decimal {
            return Err(self.err(pos, "expected digits"));
        }
        Ok(if decimal {
            TokenKind::Decimal(s)
        } else {
            TokenKind::Integer(s)
        })
    }
}
