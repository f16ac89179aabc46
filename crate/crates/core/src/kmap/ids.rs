use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum IdError {
    #[error("{0:?} is not a valid identifier (expected [A-Za-z_][A-Za-z0-9_]*)")]
    Malformed(String),
    #[error("{0:?} is not an instance id of the form ConceptName_nnn")]
    NotInstance(String),
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

macro_rules! id_newtype {
    ($(#[$meta:meta])* $name:ident) => {
        $(#[$meta])*
        #[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
        #[serde(try_from = "String", into = "String")]
        pub struct $name(String);

        impl $name {
            pub fn as_str(&self) -> &str {
                &self.0
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(&self.0)
            }
        }

        impl From<$name> for String {
            fn from(id: $name) -> String {
                id.0
            }
        }

        impl AsRef<str> for $name {
            fn as_ref(&self) -> &str {
                &self.0
            }
        }
    };
}

id_newtype!(
    /// Local name of a concept in the ontology namespace.
    ConceptId
);
id_newtype!(
    /// Local name of a transformation (data transformation or algorithm).
    TransformationId
);
id_newtype!(
    /// Instance id, `ConceptLocalName_nnn` with a zero-padded counter.
    InstanceId
);

impl ConceptId {
    pub fn new(local: impl Into<String>) -> Result<Self, IdError> {
        let local = local.into();
        if is_identifier(&local) {
            Ok(Self(local))
        } else {
            Err(IdError::Malformed(local))
        }
    }
}

impl TryFrom<String> for ConceptId {
    type Error = IdError;
    fn try_from(s: String) -> Result<Self, IdError> {
        Self::new(s)
    }
}

impl TransformationId {
    pub fn new(local: impl Into<String>) -> Result<Self, IdError> {
        let local = local.into();
        if is_identifier(&local) {
            Ok(Self(local))
        } else {
            Err(IdError::Malformed(local))
        }
    }

    /// `Transformation_<Concept>`, the conventional identity transformation.
    pub fn identity_for(concept: &ConceptId) -> Self {
        Self(format!("Transformation_{concept}"))
    }
}

impl TryFrom<String> for TransformationId {
    type Error = IdError;
    fn try_from(s: String) -> Result<Self, IdError> {
        Self::new(s)
    }
}

impl InstanceId {
    pub fn new(id: impl Into<String>) -> Result<Self, IdError> {
        let id = id.into();
        if !is_identifier(&id) {
            return Err(IdError::Malformed(id));
        }
        match id.rsplit_once('_') {
            Some((head, digits))
                if !head.is_empty() && digits.len() >= 3 && digits.bytes().all(|b| b.is_ascii_digit()) =>
            {
                Ok(Self(id))
            }
            _ => Err(IdError::NotInstance(id)),
        }
    }

    pub fn for_concept(concept: &ConceptId, suffix: Suffix) -> Self {
        Self(format!("{concept}_{suffix}"))
    }

    pub fn suffix(&self) -> Suffix {
        let digits = self.0.rsplit_once('_').map_or("", |(_, d)| d);
        Suffix {
            value: digits.parse().unwrap_or(0),
            width: digits.len(),
        }
    }

    /// The concept local name the id was minted from.
    pub fn concept_local(&self) -> &str {
        self.0.rsplit_once('_').map_or(&self.0, |(head, _)| head)
    }
}

impl TryFrom<String> for InstanceId {
    type Error = IdError;
    fn try_from(s: String) -> Result<Self, IdError> {
        Self::new(s)
    }
}

/// Numeric suffix shared by all instances of one knowledge representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Suffix {
    pub value: u32,
    pub width: usize,
}

impl Suffix {
    pub fn new(value: u32) -> Self {
        Self { value, width: 3 }
    }
}

impl fmt::Display for Suffix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:0width$}", self.value, width = self.width.max(3))
    }
}
