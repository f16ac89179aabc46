use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ElementKind {
    Concept,
    Instance,
    Relation,
    Transformation,
    StateLabel,
}

impl ElementKind {
    pub const ALL: [ElementKind; 5] = [
        ElementKind::Concept,
        ElementKind::Instance,
        ElementKind::Relation,
        ElementKind::Transformation,
        ElementKind::StateLabel,
    ];
}

impl fmt::Display for ElementKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ElementKind::Concept => "concept",
            ElementKind::Instance => "instance",
            ElementKind::Relation => "relation",
            ElementKind::Transformation => "transformation",
            ElementKind::StateLabel => "state-label",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("no {kind} matches {surface:?}")]
    NoMatch { surface: String, kind: ElementKind },
    #[error("empty search term")]
    Empty,
    #[error("{kind} term {surface:?} already maps to {existing}, cannot also map to {id}")]
    Conflict {
        kind: ElementKind,
        surface: String,
        existing: String,
        id: String,
    },
}

/// Lowercases, turns `_ - /` and whitespace into single spaces and drops any
/// other punctuation.
pub fn normalize(surface: &str) -> String {
    let mut out = String::with_capacity(surface.len());
    let mut pending_space = false;
    for c in surface.chars() {
        if c.is_alphanumeric() {
            if pending_space && !out.is_empty() {
                out.push(' ');
            }
            pending_space = false;
            out.extend(c.to_lowercase());
        } else if c.is_whitespace() || matches!(c, '_' | '-' | '/') {
            pending_space = true;
        }
    }
    out
}

/// Splits camel case: `OrganicCarbon` → `Organic Carbon`, `SoilPH` →
/// `Soil PH`, `XMLParser` → `XML Parser`. Digits stay attached.
pub fn split_camel(id: &str) -> String {
    let chars: Vec<char> = id.chars().collect();
    let mut out = String::with_capacity(id.len() + 4);
    for (i, &c) in chars.iter().enumerate() {
        if i > 0 && c.is_uppercase() {
            let prev = chars[i - 1];
            let next_lower = chars.get(i + 1).is_some_and(|n| n.is_lowercase());
            if prev.is_lowercase() || prev.is_ascii_digit() || (prev.is_uppercase() && next_lower) {
                out.push(' ');
            }
        }
        out.push(c);
    }
    out
}

/// Normalized surface forms derived from an identifier alone.
pub fn id_forms(id: &str) -> Vec<String> {
    let mut forms = vec![normalize(id), normalize(&split_camel(id))];
    forms.dedup();
    forms.retain(|f| !f.is_empty());
    forms
}

/// Surface-term vocabulary, one table per element kind.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    partitions: BTreeMap<ElementKind, BTreeMap<String, String>>,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `surface` for `id`. Re-registering the same pair is a no-op.
    pub fn insert(&mut self, kind: ElementKind, surface: &str, id: &str) -> Result<(), LexiconError> {
        let key = normalize(surface);
        if key.is_empty() {
            return Ok(());
        }
        let part = self.partitions.entry(kind).or_default();
        match part.get(&key) {
            Some(existing) if existing != id => Err(LexiconError::Conflict {
                kind,
                surface: key,
                existing: existing.clone(),
                id: id.to_string(),
            }),
            Some(_) => Ok(()),
            None => {
                part.insert(key, id.to_string());
                Ok(())
            }
        }
    }

    /// Registers the id's own forms plus every label.
    pub fn register<S: AsRef<str>>(&mut self, kind: ElementKind, id: &str, labels: &[S]) -> Result<(), LexiconError> {
        for form in id_forms(id) {
            self.insert(kind, &form, id)?;
        }
        for l in labels {
            self.insert(kind, l.as_ref(), id)?;
        }
        Ok(())
    }

    pub fn resolve(&self, surface: &str, kind: ElementKind) -> Result<&str, LexiconError> {
        let key = normalize(surface);
        if key.is_empty() {
            return Err(LexiconError::Empty);
        }
        self.partitions
            .get(&kind)
            .and_then(|p| p.get(&key))
            .map(String::as_str)
            .ok_or(LexiconError::NoMatch {
                surface: surface.to_string(),
                kind,
            })
    }

    /// Normalized keys that map to `id` in `kind`.
    pub fn entries_for(&self, id: &str, kind: ElementKind) -> Vec<&str> {
        self.partitions
            .get(&kind)
            .into_iter()
            .flat_map(|p| p.iter())
            .filter(|(_, v)| v.as_str() == id)
            .map(|(k, _)| k.as_str())
            .collect()
    }

    pub fn entries(&self, kind: ElementKind) -> impl Iterator<Item = (&str, &str)> {
        self.partitions
            .get(&kind)
            .into_iter()
            .flat_map(|p| p.iter())
            .map(|(k, v)| (k.as_str(), v.as_str()))
    }

    /// Looks up a normalized key across every partition.
    pub fn lookup_any(&self, key: &str) -> Vec<(ElementKind, &str)> {
        self.partitions
            .iter()
            .filter_map(|(kind, p)| p.get(key).map(|id| (*kind, id.as_str())))
            .collect()
    }

    /// Largest number of words in any entry.
    pub fn max_words(&self) -> usize {
        self.partitions
            .values()
            .flat_map(|p| p.keys())
            .map(|k| k.split(' ').count())
            .max()
            .unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.partitions.values().map(BTreeMap::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Resolves `surface` in the `kind` partition.
pub fn resolve_term<'a>(lexicon: &'a Lexicon, surface: &str, kind: ElementKind) -> Result<&'a str, LexiconError> {
    lexicon.resolve(surface, kind)
}
