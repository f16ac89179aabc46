//! Embedded RDF triple store: terms, indexes, Turtle I/O and snapshots.

pub(crate) mod lex;
pub mod snapshot;
mod store;
mod term;
pub mod turtle;

pub use lex::Position;
pub use store::{IndexOrder, Pattern, PrefixMap, TripleStore};
pub use term::{Datatype, Term, TermError, Triple, TripleError};
pub use turtle::{parse_turtle, serialize_turtle, write_turtle, TurtleDocument, TurtleError};
