//! Agenda-driven chart parser.
//!
//! Edges are deduplicated by (span, body), so the chart is a packed forest:
//! an edge found twice keeps one entry and both derivations. Closure pops
//! one new edge at a time and adds everything it licenses together with
//! edges already in the chart, until nothing new appears.

mod chart;
mod rules;

use std::collections::VecDeque;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use thiserror::Error;

pub use chart::{Body, Chart, Derivation, Edge, EdgeId, Inserted, Rule, Span};
pub use rules::{
    build_tuples, combine_head_complements, coordinate, lex_scan, subject_attach, Side,
    TupleCandidate,
};

use crate::lexicon::Lexicon;

pub const DEFAULT_MAX_TUPLE: usize = 3;
pub const DEFAULT_MAX_EDGES: usize = 100_000;
pub const DEFAULT_ROOT: &str = "S";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("nothing to parse")]
    EmptyInput,
    #[error("unknown token '{token}' at position {position}")]
    UnknownToken { token: String, position: usize },
    #[error("chart grew beyond {0} edges")]
    EdgeLimit(usize),
}

/// The order in which new edges leave the agenda.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AgendaOrder {
    Fifo,
    Shuffled(u64),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ParseConfig {
    pub max_tuple: usize,
    pub max_edges: usize,
    pub root: String,
    pub agenda: AgendaOrder,
}

impl Default for ParseConfig {
    fn default() -> Self {
        ParseConfig {
            max_tuple: DEFAULT_MAX_TUPLE,
            max_edges: DEFAULT_MAX_EDGES,
            root: DEFAULT_ROOT.to_string(),
            agenda: AgendaOrder::Fifo,
        }
    }
}

/// A closed chart and its full-span, saturated edges of the root part.
#[derive(Clone, Debug)]
pub struct Forest {
    pub chart: Chart,
    pub roots: Vec<EdgeId>,
}

impl Forest {
    pub fn is_accepted(&self) -> bool {
        !self.roots.is_empty()
    }
}

enum Agenda {
    Fifo(VecDeque<Edge>),
    Shuffled(Vec<Edge>, Box<StdRng>),
}

impl Agenda {
    fn new(order: AgendaOrder) -> Self {
        match order {
            AgendaOrder::Fifo => Agenda::Fifo(VecDeque::new()),
            AgendaOrder::Shuffled(seed) => {
                Agenda::Shuffled(Vec::new(), Box::new(StdRng::seed_from_u64(seed)))
            }
        }
    }

    fn push(&mut self, edge: Edge) {
        match self {
            Agenda::Fifo(queue) => queue.push_back(edge),
            Agenda::Shuffled(pool, _) => pool.push(edge),
        }
    }

    fn pop(&mut self) -> Option<Edge> {
        match self {
            Agenda::Fifo(queue) => queue.pop_front(),
            Agenda::Shuffled(pool, rng) => {
                if pool.is_empty() {
                    None
                } else {
                    let i = rng.gen_range(0..pool.len());
                    Some(pool.swap_remove(i))
                }
            }
        }
    }
}

/// Closes the chart over `tokens`.
pub fn parse_chart(
    tokens: &[String],
    lex: &Lexicon,
    config: &ParseConfig,
) -> Result<Chart, ParseError> {
    let mut chart = Chart::new(tokens.to_vec());
    let mut agenda = Agenda::new(config.agenda);
    for edge in rules::lexical_edges(tokens, lex)? {
        agenda.push(edge);
    }
    let max_m = config.max_tuple.max(1);
    while let Some(edge) = agenda.pop() {
        let Inserted::New(id) = chart.insert(edge) else {
            continue;
        };
        if chart.len() > config.max_edges {
            return Err(ParseError::EdgeLimit(config.max_edges));
        }
        for next in rules::consequences(&chart, id, max_m) {
            agenda.push(next);
        }
    }
    Ok(chart)
}

pub fn parse(tokens: &[String], lex: &Lexicon, config: &ParseConfig) -> Result<Forest, ParseError> {
    let chart = parse_chart(tokens, lex, config)?;
    let full = Span::new(0, tokens.len());
    let roots = chart
        .edges()
        .filter(|(_, e)| {
            e.span == full && e.body.is_saturated() && e.body.part() == Some(config.root.as_str())
        })
        .map(|(id, _)| id)
        .collect();
    Ok(Forest { chart, roots })
}

/// One derivation tree read out of the forest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tree {
    pub edge: EdgeId,
    pub rule: Rule,
    pub children: Vec<Tree>,
}

/// The first tree under `id`, following each edge's first derivation.
pub fn first_tree(chart: &Chart, id: EdgeId) -> Tree {
    let d = &chart.edge(id).derivations[0];
    Tree {
        edge: id,
        rule: d.rule,
        children: d.children.iter().map(|&c| first_tree(chart, c)).collect(),
    }
}

/// Up to `limit` distinct trees under `id`.
pub fn trees(chart: &Chart, id: EdgeId, limit: usize) -> Vec<Tree> {
    let mut out = Vec::new();
    for d in &chart.edge(id).derivations {
        let mut partial: Vec<Vec<Tree>> = vec![Vec::new()];
        for &child in &d.children {
            let options = trees(chart, child, limit);
            let mut next = Vec::new();
            'outer: for prefix in &partial {
                for option in &options {
                    if next.len() >= limit {
                        break 'outer;
                    }
                    let mut p = prefix.clone();
                    p.push(option.clone());
                    next.push(p);
                }
            }
            partial = next;
        }
        for children in partial {
            if out.len() >= limit {
                return out;
            }
            out.push(Tree {
                edge: id,
                rule: d.rule,
                children,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::bundled_lexicon;

    fn toks(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    fn accepts(s: &str) -> bool {
        parse(&toks(s), &bundled_lexicon(), &ParseConfig::default())
            .unwrap()
            .is_accepted()
    }

    #[test]
    fn unlike_coordination_under_disjunctive_head() {
        assert!(accepts("je sais son âge et qu'elle est venue ici"));
        assert!(!accepts("je rends l'addition et que quelqu'un paie"));
    }

    #[test]
    fn gapping_is_rejected() {
        assert!(!accepts("jean danse la valse et pierre le tango"));
    }

    #[test]
    fn coord_head_takes_shared_complement() {
        assert!(accepts(
            "pierre vend un vélo et donne une canne à pêche à marie"
        ));
    }

    #[test]
    fn edge_limit_aborts() {
        let config = ParseConfig {
            max_edges: 3,
            ..ParseConfig::default()
        };
        let err = parse(&toks("je sais son âge"), &bundled_lexicon(), &config).unwrap_err();
        assert_eq!(err, ParseError::EdgeLimit(3));
    }

    #[test]
    fn first_tree_leaves_are_lexical() {
        let forest = parse(
            &toks("je sais son âge"),
            &bundled_lexicon(),
            &ParseConfig::default(),
        )
        .unwrap();
        let tree = first_tree(&forest.chart, forest.roots[0]);
        assert_eq!(tree.rule, Rule::Subject);
        fn leaves(t: &Tree, out: &mut Vec<Rule>) {
            if t.children.is_empty() {
                out.push(t.rule);
            }
            t.children.iter().for_each(|c| leaves(c, out));
        }
        let mut rules = Vec::new();
        leaves(&tree, &mut rules);
        assert!(rules.iter().all(|&r| r == Rule::Lexical));
    }
}
