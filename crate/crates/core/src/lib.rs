//! Ontology-based knowledge maps for mined data-mining knowledge.
//!
//! The crate is organised along the pipeline: [`kmap`] holds the typed
//! knowledge-map model, [`wrapper`] turns mined-model descriptors into
//! knowledge representations, [`assessment`] grades them, [`rdf`] and
//! [`sparql`] store and query the published triples, and [`browser`]
//! serves keyword search and a SPARQL endpoint over HTTP.

pub mod assessment;
pub mod browser;
pub mod fixtures;
pub mod kmap;
pub mod rdf;
pub mod repository;
pub mod sparql;
pub mod vocab;
pub mod wrapper;
