use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Datatype {
    PlainString,
    Integer,
    Decimal,
}

/// An RDF term. Ordering is structural: IRIs sort before literals, then by
/// lexical form and datatype.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Iri(String),
    Literal { lexical: String, datatype: Datatype },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("IRI is not absolute: {0:?}")]
    RelativeIri(String),
    #[error("{lexical:?} is not a valid {datatype:?} lexical form")]
    BadLexical { lexical: String, datatype: Datatype },
}

pub fn is_absolute_iri(iri: &str) -> bool {
    match iri.split_once(':') {
        Some((scheme, _)) => {
            !scheme.is_empty()
                && scheme.starts_with(|c: char| c.is_ascii_alphabetic())
                && scheme
                    .chars()
                    .all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
        }
        None => false,
    }
}

fn valid_integer(s: &str) -> bool {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    !digits.is_empty() && digits.bytes().all(|b| b.is_ascii_digit())
}

fn valid_decimal(s: &str) -> bool {
    let body = s.strip_prefix(['+', '-']).unwrap_or(s);
    match body.split_once('.') {
        Some((int, frac)) => {
            int.bytes().all(|b| b.is_ascii_digit()) && !frac.is_empty() && frac.bytes().all(|b| b.is_ascii_digit())
        }
        None => false,
    }
}

impl Term {
    pub fn iri(iri: impl Into<String>) -> Result<Self, TermError> {
        let iri = iri.into();
        if !is_absolute_iri(&iri) {
            return Err(TermError::RelativeIri(iri));
        }
        Ok(Term::Iri(iri))
    }

    /// Builds an IRI term from a string known to be absolute (namespace
    /// constants joined with a local name).
    pub fn named(iri: impl Into<String>) -> Self {
        let iri = iri.into();
        debug_assert!(is_absolute_iri(&iri), "not absolute: {iri}");
        Term::Iri(iri)
    }

    pub fn string(s: impl Into<String>) -> Self {
        Term::Literal {
            lexical: s.into(),
            datatype: Datatype::PlainString,
        }
    }

    pub fn integer(n: i64) -> Self {
        Term::Literal {
            lexical: n.to_string(),
            datatype: Datatype::Integer,
        }
    }

    /// A numeric literal for a real value: integral values become integer
    /// literals, everything else a decimal.
    pub fn number(x: f64) -> Self {
        if x.is_finite() && x.fract() == 0.0 && x.abs() < 1e15 {
            return Term::integer(x as i64);
        }
        let mut lexical = format!("{x}");
        if !lexical.contains('.') {
            lexical.push_str(".0");
        }
        Term::Literal {
            lexical,
            datatype: Datatype::Decimal,
        }
    }

    pub fn literal(lexical: impl Into<String>, datatype: Datatype) -> Result<Self, TermError> {
        let lexical = lexical.into();
        let ok = match datatype {
            Datatype::PlainString => true,
            Datatype::Integer => valid_integer(&lexical),
            Datatype::Decimal => valid_decimal(&lexical),
        };
        if !ok {
            return Err(TermError::BadLexical { lexical, datatype });
        }
        Ok(Term::Literal { lexical, datatype })
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            Term::Literal { .. } => None,
        }
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn lexical(&self) -> &str {
        match self {
            Term::Iri(s) => s,
            Term::Literal { lexical, .. } => lexical,
        }
    }

    pub fn as_f64(&self) -> Option<f64> {
        match self {
            Term::Literal {
                lexical,
                datatype: Datatype::Integer | Datatype::Decimal,
            } => lexical.parse().ok(),
            _ => None,
        }
    }

    /// Local name after the last `#` or `/` of an IRI.
    pub fn local_name(&self) -> Option<&str> {
        let iri = self.as_iri()?;
        Some(iri.rsplit(['#', '/']).next().unwrap_or(iri))
    }
}

/// N-Triples style rendering, used in TSV output and diagnostics.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Literal {
                lexical,
                datatype: Datatype::PlainString,
            } => write!(f, "\"{}\"", escape_string(lexical)),
            Term::Literal { lexical, .. } => f.write_str(lexical),
        }
    }
}

pub fn escape_string(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c => out.push(c),
        }
    }
    out
}

/// A statement. Subject and predicate are always IRIs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{position} of a triple must be an IRI, got {term}")]
pub struct TripleError {
    pub position: &'static str,
    pub term: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Result<Self, TripleError> {
        if !subject.is_iri() {
            return Err(TripleError {
                position: "subject",
                term: subject,
            });
        }
        if !predicate.is_iri() {
            return Err(TripleError {
                position: "predicate",
                term: predicate,
            });
        }
        Ok(Self {
            subject,
            predicate,
            object,
        })
    }

    /// Convenience for IRI/IRI/any triples built from known-good parts.
    pub fn iris(subject: impl Into<String>, predicate: impl Into<String>, object: Term) -> Self {
        Self {
            subject: Term::named(subject),
            predicate: Term::named(predicate),
            object,
        }
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}
