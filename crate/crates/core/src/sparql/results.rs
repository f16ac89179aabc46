use std::fmt::Write as _;
use std::str::FromStr;

use serde_json::{json, Map, Value};
use thiserror::Error;

use super::eval::SolutionTable;
use crate::rdf::{Datatype, Term};
use crate::vocab;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultFormat {
    Tsv,
    Json,
}

impl FromStr for ResultFormat {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "tsv" => Ok(ResultFormat::Tsv),
            "json" => Ok(ResultFormat::Json),
            other => Err(format!("unknown result format {other:?} (tsv or json)")),
        }
    }
}

pub fn format_results(t: &SolutionTable, fmt: ResultFormat) -> String {
    match fmt {
        ResultFormat::Tsv => to_tsv(t),
        ResultFormat::Json => to_json(t).to_string(),
    }
}

/// Header line of `?var` names, then one line per row with N-Triples terms.
pub fn to_tsv(t: &SolutionTable) -> String {
    let mut out = String::new();
    let header: Vec<String> = t.header.iter().map(|h| format!("?{h}")).collect();
    out.push_str(&header.join("\t"));
    out.push('\n');
    for row in &t.rows {
        for (i, term) in row.iter().enumerate() {
            if i > 0 {
                out.push('\t');
            }
            let _ = write!(out, "{term}");
        }
        out.push('\n');
    }
    out
}

fn term_json(term: &Term) -> Value {
    match term {
        Term::Iri(iri) => json!({"type": "uri", "value": iri}),
        Term::Literal {
            lexical,
            datatype: Datatype::PlainString,
        } => json!({"type": "literal", "value": lexical}),
        Term::Literal { lexical, datatype } => {
            let dt = match datatype {
                Datatype::Integer => vocab::XSD_INTEGER,
                _ => vocab::XSD_DECIMAL,
            };
            json!({"type": "literal", "value": lexical, "datatype": dt})
        }
    }
}

/// SPARQL-results-style JSON document.
pub fn to_json(t: &SolutionTable) -> Value {
    let bindings: Vec<Value> = t
        .rows
        .iter()
        .map(|row| {
            let m: Map<String, Value> = t.header.iter().cloned().zip(row.iter().map(term_json)).collect();
            Value::Object(m)
        })
        .collect();
    json!({
        "head": {"vars": t.header},
        "results": {"bindings": bindings},
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ResultsParseError {
    #[error("malformed results JSON: {0}")]
    Json(String),
    #[error("results document: {0}")]
    Shape(String),
}

/// Reads a document produced by [`to_json`] back into a table.
pub fn parse_results_json(text: &str) -> Result<SolutionTable, ResultsParseError> {
    let v: Value = serde_json::from_str(text).map_err(|e| ResultsParseError::Json(e.to_string()))?;
    let shape = |m: &str| ResultsParseError::Shape(m.to_string());
    let header: Vec<String> = v["head"]["vars"]
        .as_array()
        .ok_or_else(|| shape("head.vars missing"))?
        .iter()
        .map(|x| {
            x.as_str()
                .map(str::to_string)
                .ok_or_else(|| shape("variable names must be strings"))
        })
        .collect::<Result<_, _>>()?;
    let mut rows = Vec::new();
    for b in v["results"]["bindings"]
        .as_array()
        .ok_or_else(|| shape("results.bindings missing"))?
    {
        let mut row = Vec::with_capacity(header.len());
        for h in &header {
            let cell = &b[h.as_str()];
            let value = cell["value"].as_str().ok_or_else(|| shape("binding without value"))?;
            let term = match (cell["type"].as_str(), cell["datatype"].as_str()) {
                (Some("uri"), _) => Term::iri(value).map_err(|e| shape(&e.to_string()))?,
                (Some("literal"), None) => Term::string(value),
                (Some("literal"), Some(dt)) => {
                    let datatype = match dt {
                        vocab::XSD_INTEGER => Datatype::Integer,
                        vocab::XSD_DECIMAL => Datatype::Decimal,
                        other => return Err(shape(&format!("unsupported datatype {other}"))),
                    };
                    Term::literal(value, datatype).map_err(|e| shape(&e.to_string()))?
                }
                _ => return Err(shape("unknown term type")),
            };
            row.push(term);
        }
        rows.push(row);
    }
    Ok(SolutionTable { header, rows })
}
