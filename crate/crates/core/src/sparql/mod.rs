//! A SPARQL subset: `PREFIX`, `SELECT` of `*` or variables, one basic
//! graph pattern and an optional `LIMIT`. Everything else is rejected by
//! name.

mod ast;
mod eval;
mod parser;
mod results;

pub use ast::{Projection, Query, TermPattern, TriplePattern};
pub use eval::{evaluate, evaluate_in_order, evaluate_traced, SolutionTable, TracedSolutions};
pub use parser::{parse_query, parse_query_with, SparqlError};
pub use results::{format_results, parse_results_json, to_json, to_tsv, ResultFormat, ResultsParseError};
