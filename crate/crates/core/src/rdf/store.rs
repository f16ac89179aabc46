use std::collections::{BTreeMap, BTreeSet};

use super::term::{Term, Triple};

/// Prefix name to namespace IRI.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    map: BTreeMap<String, String>,
}

fn valid_local(local: &str) -> bool {
    let mut chars = local.chars();
    match chars.next() {
        None => return true,
        Some(c) if c.is_ascii_alphanumeric() || c == '_' => {}
        Some(_) => return false,
    }
    !local.ends_with('.')
        && local
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '.'))
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn standard() -> Self {
        let mut m = Self::new();
        for (p, ns) in crate::vocab::standard_prefixes() {
            m.insert(p, ns);
        }
        m
    }

    pub fn insert(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) {
        self.map.insert(prefix.into(), namespace.into());
    }

    pub fn get(&self, prefix: &str) -> Option<&str> {
        self.map.get(prefix).map(String::as_str)
    }

    pub fn expand(&self, prefix: &str, local: &str) -> Option<String> {
        self.get(prefix).map(|ns| format!("{ns}{local}"))
    }

    /// Shortest prefixed form of `iri`, if some namespace covers it with a
    /// local part the lexer can read back.
    pub fn compact<'a>(&'a self, iri: &'a str) -> Option<(&'a str, &'a str)> {
        self.map
            .iter()
            .filter_map(|(p, ns)| {
                let local = iri.strip_prefix(ns.as_str())?;
                valid_local(local).then_some((p.as_str(), local))
            })
            .min_by_key(|(_, local)| local.len())
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.map.iter().map(|(p, ns)| (p.as_str(), ns.as_str()))
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn extend(&mut self, other: &PrefixMap) {
        for (p, ns) in other.iter() {
            self.insert(p, ns);
        }
    }
}

/// Which index answers a pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum IndexOrder {
    Spo,
    Pos,
    Osp,
}

/// A triple pattern; `None` components are wildcards.
#[derive(Debug, Clone, Copy, Default)]
pub struct Pattern<'a> {
    pub subject: Option<&'a Term>,
    pub predicate: Option<&'a Term>,
    pub object: Option<&'a Term>,
}

impl<'a> Pattern<'a> {
    pub fn new(subject: Option<&'a Term>, predicate: Option<&'a Term>, object: Option<&'a Term>) -> Self {
        Self {
            subject,
            predicate,
            object,
        }
    }

    pub fn any() -> Self {
        Self::default()
    }

    pub fn matches(&self, t: &Triple) -> bool {
        self.subject.is_none_or(|s| *s == t.subject)
            && self.predicate.is_none_or(|p| *p == t.predicate)
            && self.object.is_none_or(|o| *o == t.object)
    }
}

/// In-memory triple set with subject-, predicate- and object-major indexes.
///
/// All three indexes always hold exactly the same triples; the store has set
/// semantics under structural term equality.
#[derive(Debug, Clone, Default)]
pub struct TripleStore {
    spo: BTreeSet<Triple>,
    pos: BTreeSet<(Term, Term, Term)>,
    osp: BTreeSet<(Term, Term, Term)>,
    prefixes: PrefixMap,
}

fn lowest() -> Term {
    Term::Iri(String::new())
}

impl TripleStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_prefixes(prefixes: PrefixMap) -> Self {
        Self {
            prefixes,
            ..Self::default()
        }
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn prefixes_mut(&mut self) -> &mut PrefixMap {
        &mut self.prefixes
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub fn contains(&self, t: &Triple) -> bool {
        self.spo.contains(t)
    }

    /// Inserts `t`; returns false if it was already present.
    pub fn insert(&mut self, t: Triple) -> bool {
        if self.spo.contains(&t) {
            return false;
        }
        self.pos
            .insert((t.predicate.clone(), t.object.clone(), t.subject.clone()));
        self.osp
            .insert((t.object.clone(), t.subject.clone(), t.predicate.clone()));
        self.spo.insert(t);
        true
    }

    /// Inserts every triple, returning how many were new.
    pub fn extend(&mut self, triples: impl IntoIterator<Item = Triple>) -> usize {
        triples.into_iter().filter(|t| self.insert(t.clone())).count()
    }

    /// Triples in subject, predicate, object order.
    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.spo.iter()
    }

    /// All triples agreeing with the bound components of the pattern, in
    /// (subject, predicate, object) order.
    pub fn matching(&self, pattern: Pattern<'_>) -> Vec<Triple> {
        let order = match (pattern.subject, pattern.predicate, pattern.object) {
            (Some(_), _, _) => IndexOrder::Spo,
            (None, Some(_), _) => IndexOrder::Pos,
            (None, None, Some(_)) => IndexOrder::Osp,
            (None, None, None) => IndexOrder::Spo,
        };
        self.matching_with(order, pattern)
    }

    /// Like [`matching`](Self::matching) but forces the index used. Prefix
    /// scans are used where the bound components allow, full scans otherwise.
    pub fn matching_with(&self, order: IndexOrder, pattern: Pattern<'_>) -> Vec<Triple> {
        let mut out: Vec<Triple> = match order {
            IndexOrder::Spo => match pattern.subject {
                Some(s) => {
                    let start = Triple {
                        subject: s.clone(),
                        predicate: pattern.predicate.cloned().unwrap_or_else(lowest),
                        object: lowest(),
                    };
                    self.spo
                        .range(start..)
                        .take_while(|t| t.subject == *s && pattern.predicate.is_none_or(|p| t.predicate == *p))
                        .filter(|t| pattern.matches(t))
                        .cloned()
                        .collect()
                }
                None => self.spo.iter().filter(|t| pattern.matches(t)).cloned().collect(),
            },
            IndexOrder::Pos => {
                let rows: Box<dyn Iterator<Item = &(Term, Term, Term)>> = match pattern.predicate {
                    Some(p) => {
                        let start = (p.clone(), pattern.object.cloned().unwrap_or_else(lowest), lowest());
                        Box::new(
                            self.pos
                                .range(start..)
                                .take_while(move |(tp, to, _)| tp == p && pattern.object.is_none_or(|o| to == o)),
                        )
                    }
                    None => Box::new(self.pos.iter()),
                };
                rows.map(|(p, o, s)| Triple {
                    subject: s.clone(),
                    predicate: p.clone(),
                    object: o.clone(),
                })
                .filter(|t| pattern.matches(t))
                .collect()
            }
            IndexOrder::Osp => {
                let rows: Box<dyn Iterator<Item = &(Term, Term, Term)>> = match pattern.object {
                    Some(o) => {
                        let start = (o.clone(), pattern.subject.cloned().unwrap_or_else(lowest), lowest());
                        Box::new(
                            self.osp
                                .range(start..)
                                .take_while(move |(to, ts, _)| to == o && pattern.subject.is_none_or(|s| ts == s)),
                        )
                    }
                    None => Box::new(self.osp.iter()),
                };
                rows.map(|(o, s, p)| Triple {
                    subject: s.clone(),
                    predicate: p.clone(),
                    object: o.clone(),
                })
                .filter(|t| pattern.matches(t))
                .collect()
            }
        };
        if order != IndexOrder::Spo {
            out.sort();
        }
        out
    }

    /// Objects of `(subject, predicate, ?)`.
    pub fn objects(&self, subject: &Term, predicate: &Term) -> Vec<Term> {
        self.matching(Pattern::new(Some(subject), Some(predicate), None))
            .into_iter()
            .map(|t| t.object)
            .collect()
    }

    /// Subjects of `(?, predicate, object)`.
    pub fn subjects(&self, predicate: &Term, object: &Term) -> Vec<Term> {
        self.matching(Pattern::new(None, Some(predicate), Some(object)))
            .into_iter()
            .map(|t| t.subject)
            .collect()
    }

    /// Index sizes, for coherence checks.
    pub fn index_sizes(&self) -> [usize; 3] {
        [self.spo.len(), self.pos.len(), self.osp.len()]
    }
}

impl FromIterator<Triple> for TripleStore {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        let mut s = TripleStore::new();
        s.extend(iter);
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::iris(
            format!("http://e/{s}"),
            format!("http://e/{p}"),
            Term::named(format!("http://e/{o}")),
        )
    }

    #[test]
    fn duplicate_insert_is_noop() {
        let mut store = TripleStore::new();
        assert!(store.insert(t("a", "p", "b")));
        assert!(!store.insert(t("a", "p", "b")));
        assert_eq!(store.len(), 1);
    }

    #[test]
    fn twenty_distinct() {
        let store: TripleStore = (0..20).map(|i| t(&format!("s{i}"), "p", "o")).collect();
        assert_eq!(store.len(), 20);
        assert_eq!(store.index_sizes(), [20, 20, 20]);
    }

    #[test]
    fn empty_store_matches_nothing() {
        let store = TripleStore::new();
        assert!(store.matching(Pattern::any()).is_empty());
    }

    #[test]
    fn fully_bound_pattern() {
        let store: TripleStore = [t("a", "p", "b"), t("a", "p", "c"), t("b", "q", "c")]
            .into_iter()
            .collect();
        let probe = t("a", "p", "c");
        let hits = store.matching(Pattern::new(
            Some(&probe.subject),
            Some(&probe.predicate),
            Some(&probe.object),
        ));
        assert_eq!(hits, vec![probe]);
    }

    #[test]
    fn each_index_agrees() {
        let store: TripleStore = [t("a", "p", "b"), t("a", "q", "b"), t("c", "p", "b"), t("c", "p", "a")]
            .into_iter()
            .collect();
        let p = Term::named("http://e/p");
        let b = Term::named("http://e/b");
        let pat = Pattern::new(None, Some(&p), Some(&b));
        let expected = store.matching_with(IndexOrder::Spo, pat);
        assert_eq!(expected.len(), 2);
        assert_eq!(store.matching_with(IndexOrder::Pos, pat), expected);
        assert_eq!(store.matching_with(IndexOrder::Osp, pat), expected);
    }

    #[test]
    fn compaction_prefers_longest_namespace() {
        let mut m = PrefixMap::new();
        m.insert("e", "http://e/");
        m.insert("ed", "http://e/deep/");
        assert_eq!(m.compact("http://e/deep/x"), Some(("ed", "x")));
        assert_eq!(m.compact("http://e/a b"), None);
        assert_eq!(m.compact("http://other/x"), None);
    }
}
