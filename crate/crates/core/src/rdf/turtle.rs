//! Turtle subset: prefixes, prefixed names, `a`, `;` and `,` lists, quoted
//! string literals and bare integers/decimals. Blank nodes, collections,
//! language tags, datatyped and multi-line literals are rejected by name.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use super::lex::{tokenize, Position, Token, TokenKind};
use super::store::{PrefixMap, TripleStore};
use super::term::{escape_string, Datatype, Term, Triple};
use crate::vocab::RDF_TYPE;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TurtleError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Position, message: String },
    #[error("unknown prefix {prefix:?} at {pos}")]
    UnknownPrefix { pos: Position, prefix: String },
    #[error("unsupported Turtle feature at {pos}: {feature}")]
    Unsupported { pos: Position, feature: String },
}

impl TurtleError {
    pub fn position(&self) -> Position {
        match self {
            TurtleError::Syntax { pos, .. }
            | TurtleError::UnknownPrefix { pos, .. }
            | TurtleError::Unsupported { pos, .. } => *pos,
        }
    }
}

#[derive(Debug, Clone, Default)]
pub struct TurtleDocument {
    pub triples: Vec<Triple>,
    pub prefixes: PrefixMap,
}

impl TurtleDocument {
    pub fn into_store(self) -> TripleStore {
        let mut store = TripleStore::with_prefixes(self.prefixes);
        store.extend(self.triples);
        store
    }
}

pub fn parse_turtle(text: &str) -> Result<TurtleDocument, TurtleError> {
    let tokens = tokenize(text).map_err(|e| TurtleError::Syntax {
        pos: e.pos,
        message: e.message,
    })?;
    let end = tokens.last().map_or(Position { line: 1, column: 1 }, |t| t.pos);
    let mut parser = Parser {
        tokens,
        idx: 0,
        end,
        doc: TurtleDocument::default(),
    };
    parser.document()?;
    Ok(parser.doc)
}

struct Parser {
    tokens: Vec<Token>,
    idx: usize,
    end: Position,
    doc: TurtleDocument,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.idx)
    }

    fn next(&mut self) -> Result<Token, TurtleError> {
        let tok = self.tokens.get(self.idx).cloned().ok_or(TurtleError::Syntax {
            pos: self.end,
            message: "unexpected end of input".into(),
        })?;
        self.idx += 1;
        Ok(tok)
    }

    fn syntax(pos: Position, message: impl Into<String>) -> TurtleError {
        TurtleError::Syntax {
            pos,
            message: message.into(),
        }
    }

    fn expect(&mut self, want: TokenKind, what: &str) -> Result<(), TurtleError> {
        let tok = self.next()?;
        if tok.kind == want {
            Ok(())
        } else {
            Err(Self::rejected(&tok, what))
        }
    }

    fn rejected(tok: &Token, what: &str) -> TurtleError {
        match &tok.kind {
            TokenKind::Unsupported(feature) => TurtleError::Unsupported {
                pos: tok.pos,
                feature: (*feature).into(),
            },
            TokenKind::LParen | TokenKind::RParen => TurtleError::Unsupported {
                pos: tok.pos,
                feature: "collection".into(),
            },
            other => Self::syntax(tok.pos, format!("expected {what}, found {other:?}")),
        }
    }

    fn document(&mut self) -> Result<(), TurtleError> {
        while let Some(tok) = self.peek().cloned() {
            match &tok.kind {
                TokenKind::At(word) if word == "prefix" => {
                    self.idx += 1;
                    self.prefix_body()?;
                    self.expect(TokenKind::Dot, "'.' after @prefix")?;
                }
                TokenKind::Word(word) if word.eq_ignore_ascii_case("prefix") => {
                    self.idx += 1;
                    self.prefix_body()?;
                }
                TokenKind::At(word) if word == "base" => {
                    return Err(TurtleError::Unsupported {
                        pos: tok.pos,
                        feature: "@base".into(),
                    })
                }
                TokenKind::Word(word) if word.eq_ignore_ascii_case("base") => {
                    return Err(TurtleError::Unsupported {
                        pos: tok.pos,
                        feature: "BASE".into(),
                    })
                }
                _ => {
                    self.statement()?;
                }
            }
        }
        Ok(())
    }

    fn prefix_body(&mut self) -> Result<(), TurtleError> {
        let tok = self.next()?;
        let prefix = match tok.kind {
            TokenKind::Prefixed { prefix, local } if local.is_empty() => prefix,
            _ => return Err(Self::rejected(&tok, "prefix name ending in ':'")),
        };
        let tok = self.next()?;
        let ns = match tok.kind {
            TokenKind::Iri(iri) => iri,
            _ => return Err(Self::rejected(&tok, "namespace IRI")),
        };
        if !super::term::is_absolute_iri(&ns) {
            return Err(Self::syntax(tok.pos, "namespace IRI must be absolute"));
        }
        self.doc.prefixes.insert(prefix, ns);
        Ok(())
    }

    fn statement(&mut self) -> Result<(), TurtleError> {
        let subject = self.iri_term("subject")?;
        loop {
            let predicate = self.verb()?;
            loop {
                let object = self.object()?;
                self.doc.triples.push(Triple {
                    subject: subject.clone(),
                    predicate: predicate.clone(),
                    object,
                });
                if self.peek().map(|t| &t.kind) == Some(&TokenKind::Comma) {
                    self.idx += 1;
                } else {
                    break;
                }
            }
            let tok = self.next()?;
            match tok.kind {
                TokenKind::Dot => return Ok(()),
                TokenKind::Semicolon => {
                    // `;` may be repeated or directly precede the final `.`
                    while self.peek().map(|t| &t.kind) == Some(&TokenKind::Semicolon) {
                        self.idx += 1;
                    }
                    if self.peek().map(|t| &t.kind) == Some(&TokenKind::Dot) {
                        self.idx += 1;
                        return Ok(());
                    }
                }
                _ => return Err(Self::rejected(&tok, "',', ';' or '.'")),
            }
        }
    }

    fn resolve(&self, prefix: &str, local: &str, pos: Position) -> Result<Term, TurtleError> {
        self.doc
            .prefixes
            .expand(prefix, local)
            .map(Term::Iri)
            .ok_or_else(|| TurtleError::UnknownPrefix {
                pos,
                prefix: prefix.to_string(),
            })
    }

    fn iri_term(&mut self, what: &str) -> Result<Term, TurtleError> {
        let tok = self.next()?;
        match tok.kind {
            TokenKind::Iri(iri) => Term::iri(iri).map_err(|e| Self::syntax(tok.pos, e.to_string())),
            TokenKind::Prefixed { prefix, local } => self.resolve(&prefix, &local, tok.pos),
            _ => Err(Self::rejected(&tok, what)),
        }
    }

    fn verb(&mut self) -> Result<Term, TurtleError> {
        if let Some(Token {
            kind: TokenKind::Word(w),
            ..
        }) = self.peek()
        {
            if w == "a" {
                self.idx += 1;
                return Ok(Term::named(RDF_TYPE));
            }
        }
        self.iri_term("predicate")
    }

    fn object(&mut self) -> Result<Term, TurtleError> {
        let tok = self.peek().cloned().ok_or(TurtleError::Syntax {
            pos: self.end,
            message: "expected object, found end of input".into(),
        })?;
        let term = match &tok.kind {
            TokenKind::Iri(_) | TokenKind::Prefixed { .. } => return self.iri_term("object"),
            TokenKind::Str(s) => Term::string(s.clone()),
            TokenKind::Integer(s) => {
                Term::literal(s.clone(), Datatype::Integer).map_err(|e| Self::syntax(tok.pos, e.to_string()))?
            }
            TokenKind::Decimal(s) => {
                Term::literal(s.clone(), Datatype::Decimal).map_err(|e| Self::syntax(tok.pos, e.to_string()))?
            }
            TokenKind::Word(w) if w == "true" || w == "false" => {
                return Err(TurtleError::Unsupported {
                    pos: tok.pos,
                    feature: "boolean literal".into(),
                })
            }
            _ => return Err(Self::rejected(&tok, "object")),
        };
        self.idx += 1;
        if let Some(next) = self.peek() {
            match &next.kind {
                TokenKind::At(_) => {
                    return Err(TurtleError::Unsupported {
                        pos: next.pos,
                        feature: "language tag".into(),
                    })
                }
                TokenKind::Unsupported(f) => {
                    return Err(TurtleError::Unsupported {
                        pos: next.pos,
                        feature: (*f).into(),
                    })
                }
                _ => {}
            }
        }
        Ok(term)
    }
}

fn render_term(term: &Term, prefixes: &PrefixMap) -> String {
    match term {
        Term::Iri(iri) => match prefixes.compact(iri) {
            Some((p, local)) => format!("{p}:{local}"),
            None => format!("<{iri}>"),
        },
        Term::Literal {
            lexical,
            datatype: Datatype::PlainString,
        } => format!("\"{}\"", escape_string(lexical)),
        Term::Literal { lexical, .. } => lexical.clone(),
    }
}

/// Deterministic Turtle for a set of triples: prefix header, then subjects
/// in sorted order with predicates grouped by `;` and objects by `,`.
pub fn write_turtle<'a>(triples: impl IntoIterator<Item = &'a Triple>, prefixes: &PrefixMap) -> String {
    let mut grouped: BTreeMap<&Term, BTreeMap<&Term, Vec<&Term>>> = BTreeMap::new();
    for t in triples {
        grouped
            .entry(&t.subject)
            .or_default()
            .entry(&t.predicate)
            .or_default()
            .push(&t.object);
    }
    let mut out = String::new();
    for (p, ns) in prefixes.iter() {
        let _ = writeln!(out, "@prefix {p}: <{ns}> .");
    }
    for (subject, preds) in grouped {
        out.push('\n');
        let s = render_term(subject, prefixes);
        let single = preds.len() == 1 && preds.values().all(|o| o.len() == 1);
        if single {
            let (p, objs) = preds.iter().next().expect("non-empty group");
            let _ = writeln!(
                out,
                "{s} {} {} .",
                render_term(p, prefixes),
                render_term(objs[0], prefixes)
            );
            continue;
        }
        out.push_str(&s);
        out.push('\n');
        let n = preds.len();
        for (i, (p, mut objs)) in preds.into_iter().enumerate() {
            objs.sort();
            objs.dedup();
            let rendered: Vec<String> = objs.iter().map(|o| render_term(o, prefixes)).collect();
            let terminator = if i + 1 == n { " ." } else { " ;" };
            let _ = writeln!(
                out,
                "    {} {}{}",
                render_term(p, prefixes),
                rendered.join(" ,\n        "),
                terminator
            );
        }
    }
    out
}

pub fn serialize_turtle(store: &TripleStore) -> String {
    write_turtle(store.iter(), store.prefixes())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_document() {
        let doc = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b .").unwrap();
        assert_eq!(doc.triples.len(), 1);
        assert_eq!(doc.prefixes.get("ex"), Some("http://e/"));
    }

    #[test]
    fn missing_prefix_is_reported() {
        let err = parse_turtle("ex:a ex:p ex:b .").unwrap_err();
        assert_eq!(
            err,
            TurtleError::UnknownPrefix {
                pos: Position { line: 1, column: 1 },
                prefix: "ex".into()
            }
        );
    }

    #[test]
    fn sparql_style_prefix_and_lists() {
        let doc =
            parse_turtle("PREFIX ex: <http://e/>\nex:a a ex:C , ex:D ;\n  ex:n 60 ;\n  ex:d -4.5 ;\n  ex:l \"x\" .")
                .unwrap();
        assert_eq!(doc.triples.len(), 5);
        assert_eq!(doc.triples[0].predicate, Term::named(RDF_TYPE));
        assert_eq!(doc.triples[2].object, Term::integer(60));
    }

    #[test]
    fn trailing_semicolon_before_dot() {
        let doc = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p 1 ; .").unwrap();
        assert_eq!(doc.triples.len(), 1);
    }

    #[test]
    fn unsupported_features_are_named() {
        let cases = [
            ("@prefix ex: <http://e/> . ex:a ex:p _:b .", "blank node"),
            ("@prefix ex: <http://e/> . ex:a ex:p [ ex:q 1 ] .", "blank node"),
            ("@prefix ex: <http://e/> . ex:a ex:p \"x\"@en .", "language tag"),
            (
                "@prefix ex: <http://e/> . ex:a ex:p \"1\"^^ex:int .",
                "datatyped literal",
            ),
            ("@prefix ex: <http://e/> . ex:a ex:p ( 1 2 ) .", "collection"),
            ("@base <http://e/> .", "@base"),
        ];
        for (src, feature) in cases {
            match parse_turtle(src) {
                Err(TurtleError::Unsupported { feature: f, .. }) => assert_eq!(f, feature, "{src}"),
                other => panic!("{src}: {other:?}"),
            }
        }
    }

    #[test]
    fn syntax_errors_carry_position() {
        let err = parse_turtle("@prefix ex: <http://e/> .\nex:a ex:p .").unwrap_err();
        assert!(matches!(err, TurtleError::Syntax { .. }));
        assert_eq!(err.position().line, 2);
        assert!(parse_turtle("@prefix ex: <http://e/> . ex:a ex:p ex:b").is_err());
        assert!(parse_turtle("@prefix ex: <http://e/> . \"lit\" ex:p ex:b .").is_err());
    }

    #[test]
    fn empty_store_serializes_to_header() {
        let store = TripleStore::with_prefixes(PrefixMap::standard());
        let text = serialize_turtle(&store);
        assert_eq!(text.lines().count(), 5);
        assert!(text.lines().all(|l| l.starts_with("@prefix")));
    }

    #[test]
    fn single_triple_is_one_line() {
        let doc = parse_turtle("@prefix ex: <http://e/> . ex:a ex:p \"q\\\"uote\" .").unwrap();
        let text = serialize_turtle(&doc.clone().into_store());
        let body: Vec<&str> = text.lines().filter(|l| !l.starts_with('@') && !l.is_empty()).collect();
        assert_eq!(body, vec![r#"ex:a ex:p "q\"uote" ."#]);
        let again = parse_turtle(&text).unwrap();
        assert_eq!(again.triples, doc.triples);
    }

    #[test]
    fn uncompactable_iris_use_brackets() {
        let mut store = TripleStore::new();
        store.insert(Triple::iris("http://x/a", "http://x/p", Term::named("http://x/b")));
        let text = serialize_turtle(&store);
        assert_eq!(text.trim(), "<http://x/a> <http://x/p> <http://x/b> .");
    }
}
