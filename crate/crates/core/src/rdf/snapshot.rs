//! File snapshots. The on-disk format is the canonical Turtle serialization,
//! so snapshots are diffable and the parser doubles as the loader.

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use super::store::TripleStore;
use super::turtle::{parse_turtle, serialize_turtle, TurtleError};

#[derive(Debug, Error)]
pub enum SnapshotError {
    #[error("snapshot I/O on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("corrupt snapshot {path}: {source}")]
    Corrupt {
        path: PathBuf,
        #[source]
        source: TurtleError,
    },
}

/// Writes the store next to `path` and renames it into place.
pub fn save(store: &TripleStore, path: &Path) -> Result<(), SnapshotError> {
    let io_err = |source| SnapshotError::Io {
        path: path.to_path_buf(),
        source,
    };
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    fs::write(&tmp, serialize_turtle(store)).map_err(io_err)?;
    fs::rename(&tmp, path).map_err(io_err)
}

pub fn load(path: &Path) -> Result<TripleStore, SnapshotError> {
    let text = fs::read_to_string(path).map_err(|source| SnapshotError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_turtle(&text)
        .map(|doc| doc.into_store())
        .map_err(|source| SnapshotError::Corrupt {
            path: path.to_path_buf(),
            source,
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rdf::{PrefixMap, Term, Triple};

    #[test]
    fn save_load_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("s.ttl");
        let mut store = TripleStore::with_prefixes(PrefixMap::standard());
        store.insert(Triple::iris(
            crate::vocab::agrikmaps("Classifier_010"),
            crate::vocab::agricomo("grade"),
            Term::integer(60),
        ));
        save(&store, &path).unwrap();
        let back = load(&path).unwrap();
        assert_eq!(back.iter().collect::<Vec<_>>(), store.iter().collect::<Vec<_>>());
    }

    #[test]
    fn empty_store_is_loadable() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.ttl");
        save(&TripleStore::new(), &path).unwrap();
        assert!(load(&path).unwrap().is_empty());
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load(Path::new("/nonexistent/dir/x.ttl")).unwrap_err();
        assert!(matches!(err, SnapshotError::Io { .. }));
    }

    #[test]
    fn garbage_is_corrupt() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("bad.ttl");
        fs::write(&path, "this is not turtle").unwrap();
        assert!(matches!(load(&path).unwrap_err(), SnapshotError::Corrupt { .. }));
    }
}
