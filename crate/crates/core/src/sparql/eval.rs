use std::collections::BTreeMap;

use super::ast::{Query, TermPattern, TriplePattern};
use crate::rdf::{Pattern, Term, Triple, TripleStore};

/// Variable bindings for a query, one row per solution.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct SolutionTable {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl SolutionTable {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn column(&self, var: &str) -> Option<usize> {
        self.header.iter().position(|h| h == var)
    }

    pub fn get(&self, row: usize, var: &str) -> Option<&Term> {
        self.rows.get(row)?.get(self.column(var)?)
    }

    /// Values of one column, in row order.
    pub fn values(&self, var: &str) -> Vec<&Term> {
        match self.column(var) {
            Some(c) => self.rows.iter().map(|r| &r[c]).collect(),
            None => Vec::new(),
        }
    }

    pub fn bindings(&self) -> impl Iterator<Item = BTreeMap<&str, &Term>> {
        self.rows
            .iter()
            .map(|r| self.header.iter().map(String::as_str).zip(r.iter()).collect())
    }
}

/// A solution table whose rows remember the store triples that produced
/// them, one per pattern in query order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TracedSolutions {
    pub table: SolutionTable,
    pub witnesses: Vec<Vec<Triple>>,
}

struct Partial {
    slots: Vec<Option<Term>>,
    witness: Vec<Option<Triple>>,
}

/// Evaluates the query's basic graph pattern by binding propagation,
/// starting from the most selective pattern.
pub fn evaluate(store: &TripleStore, q: &Query) -> SolutionTable {
    evaluate_traced(store, q).table
}

pub fn evaluate_traced(store: &TripleStore, q: &Query) -> TracedSolutions {
    let order = selective_order(&q.patterns);
    run(store, q, &order)
}

/// Evaluates the patterns in exactly the given order (a permutation of
/// pattern indexes). Results are identical for any order.
pub fn evaluate_in_order(store: &TripleStore, q: &Query, order: &[usize]) -> SolutionTable {
    assert_eq!(
        order.len(),
        q.patterns.len(),
        "order must be a permutation of the patterns"
    );
    run(store, q, order).table
}

/// Greedy join order: next is the pattern with the fewest positions left
/// unbound by constants and by variables bound so far; ties keep text order.
fn selective_order(patterns: &[TriplePattern]) -> Vec<usize> {
    let mut bound: Vec<&str> = Vec::new();
    let mut remaining: Vec<usize> = (0..patterns.len()).collect();
    let mut order = Vec::with_capacity(patterns.len());
    while !remaining.is_empty() {
        let free = |i: usize| {
            patterns[i]
                .positions()
                .iter()
                .filter(|p| p.as_var().is_some_and(|v| !bound.contains(&v)))
                .count()
        };
        let (k, &best) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &i)| (free(i), i))
            .expect("remaining is non-empty");
        remaining.remove(k);
        bound.extend(patterns[best].vars());
        order.push(best);
    }
    order
}

fn run(store: &TripleStore, q: &Query, order: &[usize]) -> TracedSolutions {
    let vars = q.variables();
    let slot = |v: &str| {
        vars.iter()
            .position(|x| x == v)
            .expect("variable collected from patterns")
    };
    let mut rows = vec![Partial {
        slots: vec![None; vars.len()],
        witness: vec![None; q.patterns.len()],
    }];

    for &pi in order {
        let pat = &q.patterns[pi];
        let mut next = Vec::new();
        for row in &rows {
            let resolve = |tp: &TermPattern| -> Option<Term> {
                match tp {
                    TermPattern::Term(t) => Some(t.clone()),
                    TermPattern::Var(v) => row.slots[slot(v)].clone(),
                }
            };
            let (s, p, o) = (resolve(&pat.subject), resolve(&pat.predicate), resolve(&pat.object));
            for t in store.matching(Pattern::new(s.as_ref(), p.as_ref(), o.as_ref())) {
                let mut slots = row.slots.clone();
                let consistent = [
                    (&pat.subject, &t.subject),
                    (&pat.predicate, &t.predicate),
                    (&pat.object, &t.object),
                ]
                .into_iter()
                .all(|(tp, term)| match tp {
                    TermPattern::Term(_) => true,
                    TermPattern::Var(v) => {
                        let cell = &mut slots[slot(v)];
                        match cell {
                            Some(existing) => existing == term,
                            None => {
                                *cell = Some(term.clone());
                                true
                            }
                        }
                    }
                });
                if consistent {
                    let mut witness = row.witness.clone();
                    witness[pi] = Some(t);
                    next.push(Partial { slots, witness });
                }
            }
        }
        rows = next;
        if rows.is_empty() {
            break;
        }
    }

    let header = q.header();
    let cols: Vec<usize> = header.iter().map(|h| slot(h)).collect();
    let mut out: Vec<(Vec<Term>, Vec<Triple>)> = rows
        .into_iter()
        .map(|r| {
            let values = cols
                .iter()
                .map(|&c| r.slots[c].clone().expect("every pattern variable is bound"))
                .collect();
            let witness = r
                .witness
                .into_iter()
                .map(|w| w.expect("every pattern matched"))
                .collect();
            (values, witness)
        })
        .collect();
    out.sort();
    if let Some(n) = q.limit {
        out.truncate(n);
    }
    let (rows, witnesses) = out.into_iter().unzip();
    TracedSolutions {
        table: SolutionTable { header, rows },
        witnesses,
    }
}
