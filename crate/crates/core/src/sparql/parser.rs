use thiserror::Error;

use super::ast::{Projection, Query, TermPattern, TriplePattern};
use crate::rdf::lex::{tokenize, Position, Token, TokenKind};
use crate::rdf::{Datatype, PrefixMap, Term};
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparqlError {
    #[error("syntax error at {pos}: {message}")]
    Syntax { pos: Position, message: String },
    #[error("unknown prefix {prefix:?} at {pos}")]
    UnknownPrefix { pos: Position, prefix: String },
    #[error("unsupported feature {feature} at {pos}")]
    Unsupported { pos: Position, feature: String },
    #[error("invalid query: {0}")]
    Invalid(String),
}

/// Keywords of full SPARQL that this subset rejects by name.
const UNSUPPORTED_KEYWORDS: [&str; 27] = [
    "FILTER",
    "OPTIONAL",
    "UNION",
    "MINUS",
    "ORDER",
    "GROUP",
    "HAVING",
    "OFFSET",
    "DISTINCT",
    "REDUCED",
    "CONSTRUCT",
    "ASK",
    "DESCRIBE",
    "BIND",
    "VALUES",
    "SERVICE",
    "GRAPH",
    "FROM",
    "NAMED",
    "BASE",
    "INSERT",
    "DELETE",
    "LOAD",
    "CLEAR",
    "DROP",
    "CREATE",
    "EXISTS",
];

fn unsupported_keyword(word: &str) -> Option<&'static str> {
    UNSUPPORTED_KEYWORDS
        .iter()
        .copied()
        .find(|k| k.eq_ignore_ascii_case(word))
}

/// Parses a query with no predeclared prefixes.
pub fn parse_query(text: &str) -> Result<Query, SparqlError> {
    parse_query_with(text, &PrefixMap::new())
}

/// Parses a query; `defaults` supply prefixes the text does not declare.
pub fn parse_query_with(text: &str, defaults: &PrefixMap) -> Result<Query, SparqlError> {
    let tokens = match tokenize(text) {
        Ok(t) => t,
        Err(e) => {
            // A keyword like FILTER usually drags in syntax the lexer cannot
            // read (comparison operators); name the keyword instead.
            if let Some((pos, kw)) = scan_keywords(text, e.pos) {
                return Err(SparqlError::Unsupported {
                    pos,
                    feature: kw.to_string(),
                });
            }
            return Err(SparqlError::Syntax {
                pos: e.pos,
                message: e.message,
            });
        }
    };
    let mut p = Parser {
        tokens,
        at: 0,
        prefixes: defaults.clone(),
        end: end_position(text),
    };
    p.query()
}

fn end_position(text: &str) -> Position {
    let line = text.lines().count().max(1);
    let column = text.lines().last().map_or(0, |l| l.chars().count()) + 1;
    Position { line, column }
}

fn scan_keywords(text: &str, limit: Position) -> Option<(Position, &'static str)> {
    for (li, line) in text.lines().enumerate() {
        let mut word_start = None;
        let chars: Vec<char> = line.chars().collect();
        for ci in 0..=chars.len() {
            let c = chars.get(ci).copied();
            let is_word = c.is_some_and(|c| c.is_ascii_alphabetic());
            match (word_start, is_word) {
                (None, true) => {
                    let prev = ci.checked_sub(1).map(|i| chars[i]);
                    if !prev.is_some_and(|p| p.is_alphanumeric() || matches!(p, '?' | '$' | ':' | '_')) {
                        word_start = Some(ci);
                    }
                }
                (Some(s), false) => {
                    let word: String = chars[s..ci].iter().collect();
                    let pos = Position {
                        line: li + 1,
                        column: s + 1,
                    };
                    if pos > limit {
                        return None;
                    }
                    if c != Some(':') {
                        if let Some(k) = unsupported_keyword(&word) {
                            return Some((pos, k));
                        }
                    }
                    word_start = None;
                }
                _ => {}
            }
        }
    }
    None
}

struct Parser {
    tokens: Vec<Token>,
    at: usize,
    prefixes: PrefixMap,
    end: Position,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.at)
    }

    fn peek_kind(&self) -> Option<&TokenKind> {
        self.peek().map(|t| &t.kind)
    }

    fn next(&mut self, what: &str) -> Result<Token, SparqlError> {
        match self.tokens.get(self.at) {
            Some(t) => {
                self.at += 1;
                Ok(t.clone())
            }
            None => Err(SparqlError::Syntax {
                pos: self.end,
                message: format!("unexpected end of query, expected {what}"),
            }),
        }
    }

    fn keyword_at(&self, kw: &str) -> bool {
        matches!(self.peek_kind(), Some(TokenKind::Word(w)) if w.eq_ignore_ascii_case(kw))
    }

    fn rejected(tok: &Token, what: &str) -> SparqlError {
        match &tok.kind {
            TokenKind::Unsupported(f) => SparqlError::Unsupported {
                pos: tok.pos,
                feature: f.to_string(),
            },
            TokenKind::Word(w) => match unsupported_keyword(w) {
                Some(k) => SparqlError::Unsupported {
                    pos: tok.pos,
                    feature: k.to_string(),
                },
                None => SparqlError::Syntax {
                    pos: tok.pos,
                    message: format!("expected {what}, found {w:?}"),
                },
            },
            TokenKind::LBrace => SparqlError::Unsupported {
                pos: tok.pos,
                feature: "nested group pattern".into(),
            },
            TokenKind::LParen => SparqlError::Unsupported {
                pos: tok.pos,
                feature: "expression".into(),
            },
            TokenKind::At(_) => SparqlError::Unsupported {
                pos: tok.pos,
                feature: "language tag".into(),
            },
            other => SparqlError::Syntax {
                pos: tok.pos,
                message: format!("expected {what}, found {other:?}"),
            },
        }
    }

    fn query(&mut self) -> Result<Query, SparqlError> {
        while self.keyword_at("PREFIX") {
            self.at += 1;
            let tok = self.next("prefix name")?;
            let TokenKind::Prefixed { prefix, local } = &tok.kind else {
                return Err(Self::rejected(&tok, "prefix name"));
            };
            if !local.is_empty() {
                return Err(SparqlError::Syntax {
                    pos: tok.pos,
                    message: "prefix name must end with ':'".into(),
                });
            }
            let iri_tok = self.next("namespace IRI")?;
            let TokenKind::Iri(iri) = &iri_tok.kind else {
                return Err(Self::rejected(&iri_tok, "namespace IRI"));
            };
            self.prefixes.insert(prefix.clone(), iri.clone());
        }

        let tok = self.next("SELECT")?;
        if !matches!(&tok.kind, TokenKind::Word(w) if w.eq_ignore_ascii_case("SELECT")) {
            return Err(Self::rejected(&tok, "SELECT"));
        }
        let projection = self.projection()?;

        if self.keyword_at("WHERE") {
            self.at += 1;
        }
        let open = self.next("'{'")?;
        if open.kind != TokenKind::LBrace {
            return Err(Self::rejected(&open, "'{'"));
        }
        let patterns = self.group()?;

        let mut limit = None;
        if self.keyword_at("LIMIT") {
            self.at += 1;
            let tok = self.next("LIMIT count")?;
            match &tok.kind {
                TokenKind::Integer(n) if !n.starts_with(['+', '-']) => {
                    let n: usize = n.parse().map_err(|_| SparqlError::Syntax {
                        pos: tok.pos,
                        message: format!("LIMIT {n} is too large"),
                    })?;
                    if n == 0 {
                        return Err(SparqlError::Syntax {
                            pos: tok.pos,
                            message: "LIMIT must be positive".into(),
                        });
                    }
                    limit = Some(n);
                }
                _ => return Err(Self::rejected(&tok, "a positive integer after LIMIT")),
            }
        }
        if let Some(tok) = self.peek() {
            return Err(Self::rejected(&tok.clone(), "end of query"));
        }

        let q = Query {
            prefixes: self.prefixes.clone(),
            projection,
            patterns,
            limit,
        };
        if q.patterns.is_empty() {
            return Err(SparqlError::Invalid("the WHERE block has no triple patterns".into()));
        }
        if let Projection::Vars(vs) = &q.projection {
            let bound = q.variables();
            for v in vs {
                if !bound.contains(v) {
                    return Err(SparqlError::Invalid(format!(
                        "projected variable ?{v} does not occur in WHERE"
                    )));
                }
            }
        }
        Ok(q)
    }

    fn projection(&mut self) -> Result<Projection, SparqlError> {
        if self.peek_kind() == Some(&TokenKind::Star) {
            self.at += 1;
            return Ok(Projection::All);
        }
        let mut vars: Vec<String> = Vec::new();
        while let Some(TokenKind::Var(v)) = self.peek_kind() {
            if !vars.contains(v) {
                vars.push(v.clone());
            }
            self.at += 1;
        }
        if vars.is_empty() {
            let tok = self.next("'*' or variables")?;
            return Err(Self::rejected(&tok, "'*' or variables"));
        }
        Ok(Projection::Vars(vars))
    }

    fn group(&mut self) -> Result<Vec<TriplePattern>, SparqlError> {
        let mut out = Vec::new();
        loop {
            if self.peek_kind() == Some(&TokenKind::RBrace) {
                self.at += 1;
                return Ok(out);
            }
            let subject = self.term("subject")?;
            loop {
                let predicate = self.verb()?;
                loop {
                    let object = self.term("object")?;
                    out.push(TriplePattern::new(subject.clone(), predicate.clone(), object));
                    if self.peek_kind() == Some(&TokenKind::Comma) {
                        self.at += 1;
                    } else {
                        break;
                    }
                }
                if self.peek_kind() == Some(&TokenKind::Semicolon) {
                    while self.peek_kind() == Some(&TokenKind::Semicolon) {
                        self.at += 1;
                    }
                    if matches!(self.peek_kind(), Some(TokenKind::Dot | TokenKind::RBrace)) {
                        break;
                    }
                } else {
                    break;
                }
            }
            let tok = self.next("'.' or '}'")?;
            match tok.kind {
                TokenKind::Dot => {}
                TokenKind::RBrace => return Ok(out),
                _ => return Err(Self::rejected(&tok, "'.' or '}'")),
            }
        }
    }

    fn verb(&mut self) -> Result<TermPattern, SparqlError> {
        if matches!(self.peek_kind(), Some(TokenKind::Word(w)) if w == "a") {
            self.at += 1;
            return Ok(TermPattern::Term(Term::named(vocab::RDF_TYPE)));
        }
        let pos = self.peek().map(|t| t.pos);
        let t = self.term("predicate")?;
        if let TermPattern::Term(term) = &t {
            if !term.is_iri() {
                return Err(SparqlError::Syntax {
                    pos: pos.unwrap_or(self.end),
                    message: "predicate must be an IRI or variable".into(),
                });
            }
        }
        Ok(t)
    }

    fn term(&mut self, what: &str) -> Result<TermPattern, SparqlError> {
        let tok = self.next(what)?;
        let lexical = |r: Result<Term, crate::rdf::TermError>| {
            r.map_err(|e| SparqlError::Syntax {
                pos: tok.pos,
                message: e.to_string(),
            })
        };
        let term = match &tok.kind {
            TokenKind::Var(v) => return Ok(TermPattern::Var(v.clone())),
            TokenKind::Iri(iri) => lexical(Term::iri(iri.clone()))?,
            TokenKind::Prefixed { prefix, local } => match self.prefixes.expand(prefix, local) {
                Some(iri) => lexical(Term::iri(iri))?,
                None => {
                    return Err(SparqlError::UnknownPrefix {
                        pos: tok.pos,
                        prefix: prefix.clone(),
                    })
                }
            },
            TokenKind::Str(s) => Term::string(s.clone()),
            TokenKind::Integer(s) => lexical(Term::literal(s.clone(), Datatype::Integer))?,
            TokenKind::Decimal(s) => lexical(Term::literal(s.clone(), Datatype::Decimal))?,
            TokenKind::Word(w) if w == "true" || w == "false" => {
                return Err(SparqlError::Unsupported {
                    pos: tok.pos,
                    feature: "boolean literal".into(),
                })
            }
            _ => return Err(Self::rejected(&tok, what)),
        };
        if matches!(term, Term::Literal { .. }) {
            if let Some(next) = self.peek() {
                if let TokenKind::At(_) | TokenKind::Unsupported(_) = next.kind {
                    return Err(Self::rejected(&next.clone(), what));
                }
            }
        }
        Ok(TermPattern::Term(term))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const NITROGEN_QUERY: &str = "PREFIX rdf: <http://www.w3.org/1999/02/22-rdf-syntax-ns#>
PREFIX AgriComO:  <http://www.ucd.ie/consus/AgriComO#>
PREFIX AgriKMaps:   <http://www.ucd.ie/consus/AgriKMaps#>
SELECT  ?subject
WHERE {
    ?subject  AgriComO:hasCondition ?object .
    ?object   rdf:type          AgriComO:Nitrogen .
}";

    #[test]
    fn nitrogen_query() {
        let q = parse_query(NITROGEN_QUERY).unwrap();
        assert_eq!(q.patterns.len(), 2);
        assert_eq!(q.projection, Projection::Vars(vec!["subject".into()]));
        assert_eq!(
            q.patterns[1].object,
            TermPattern::Term(Term::named("http://www.ucd.ie/consus/AgriComO#Nitrogen"))
        );
    }

    #[test]
    fn filter_is_named() {
        let err = parse_query("SELECT ?s WHERE { ?s ?p ?o FILTER(?o > 3) }").unwrap_err();
        assert!(
            matches!(err, SparqlError::Unsupported { ref feature, .. } if feature == "FILTER"),
            "{err}"
        );
        let err = parse_query("SELECT ?s WHERE { ?s ?p ?o . FILTER (isIRI(?o)) }").unwrap_err();
        assert!(
            matches!(err, SparqlError::Unsupported { ref feature, .. } if feature == "FILTER"),
            "{err}"
        );
        let err = parse_query("SELECT DISTINCT ?s WHERE { ?s ?p ?o }").unwrap_err();
        assert!(matches!(err, SparqlError::Unsupported { ref feature, .. } if feature == "DISTINCT"));
        let err = parse_query("SELECT ?s WHERE { ?s ?p ?o } ORDER BY ?s").unwrap_err();
        assert!(matches!(err, SparqlError::Unsupported { ref feature, .. } if feature == "ORDER"));
        let err = parse_query("SELECT ?s WHERE { ?s ?p ?o OPTIONAL { ?o ?q ?r } }").unwrap_err();
        assert!(matches!(err, SparqlError::Unsupported { ref feature, .. } if feature == "OPTIONAL"));
    }

    #[test]
    fn prefix_and_keywords() {
        let err = parse_query("SELECT * WHERE { ex:a ?p ?o }").unwrap_err();
        assert!(matches!(err, SparqlError::UnknownPrefix { ref prefix, .. } if prefix == "ex"));
        let q = parse_query("select * { <http://e/a> a ?o } limit 5").unwrap();
        assert_eq!(q.limit, Some(5));
        assert_eq!(q.patterns[0].predicate, TermPattern::Term(Term::named(vocab::RDF_TYPE)));
    }

    #[test]
    fn invalid_shapes() {
        assert!(matches!(
            parse_query("SELECT ?x WHERE { ?s ?p ?o }"),
            Err(SparqlError::Invalid(_))
        ));
        assert!(matches!(
            parse_query("SELECT * WHERE { }"),
            Err(SparqlError::Invalid(_))
        ));
        assert!(matches!(
            parse_query("SELECT * WHERE { ?s ?p ?o } LIMIT 0"),
            Err(SparqlError::Syntax { .. })
        ));
        let err = parse_query("SELECT * WHERE { ?s ?p ?o ").unwrap_err();
        assert!(matches!(err, SparqlError::Syntax { .. }));
    }

    #[test]
    fn syntax_error_position() {
        let err = parse_query("SELECT *\nWHERE { ?s ?p }").unwrap_err();
        match err {
            SparqlError::Syntax { pos, .. } => assert_eq!(pos.line, 2),
            other => panic!("{other:?}"),
        }
    }
}
