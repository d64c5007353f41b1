use std::collections::HashMap;
use std::fmt;

use crate::categories::Cat;
use crate::lexicon::CONJ_PART;
use crate::requirements::Requirement;
use crate::satisfaction::CoordSig;

pub type EdgeId = usize;

/// Half-open token interval.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

impl Span {
    pub fn new(start: usize, end: usize) -> Self {
        debug_assert!(start <= end);
        Span { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.start == self.end
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

/// What a constituent is: a plain category or a coordination of tuples.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Body {
    Simple(Cat),
    Coord(CoordSig),
}

impl Body {
    /// The requirement still open on this constituent.
    pub fn residual(&self) -> &Requirement {
        match self {
            Body::Simple(cat) => &cat.subcat,
            Body::Coord(sig) => sig.residual(),
        }
    }

    pub fn is_saturated(&self) -> bool {
        self.residual().is_empty()
    }

    pub fn is_conj(&self) -> bool {
        matches!(self, Body::Simple(cat) if cat.part == CONJ_PART)
    }

    /// The part of a simple category, or of a coordination of single
    /// constituents that all share one part (`NP∧NP` is an NP).
    pub fn part(&self) -> Option<&str> {
        match self {
            Body::Simple(cat) => Some(&cat.part),
            Body::Coord(sig) => {
                if sig.arity() != 1 {
                    return None;
                }
                let mut parts = sig
                    .tuples()
                    .iter()
                    .flat_map(|t| t.elements()[0].conjuncts())
                    .map(|c| c.part.as_str());
                let first = parts.next()?;
                parts.all(|p| p == first).then_some(first)
            }
        }
    }
}

impl fmt::Display for Body {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Body::Simple(cat) => {
                f.write_str(&cat.part)?;
                if !cat.feats.is_empty() {
                    let feats: Vec<String> =
                        cat.feats.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    write!(f, "[{}]", feats.join(","))?;
                }
                write!(f, " {}", cat.subcat)
            }
            Body::Coord(sig) => write!(f, "{sig} {}", sig.residual()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rule {
    Lexical,
    HeadComplement,
    Coordination,
    Subject,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Rule::Lexical => "lex",
            Rule::HeadComplement => "head-comp",
            Rule::Coordination => "coord",
            Rule::Subject => "subj",
        })
    }
}

/// How an edge was built: the rule and its children, left to right.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Derivation {
    pub rule: Rule,
    pub children: Vec<EdgeId>,
}

/// A chart constituent. Equal (span, body) pairs share one edge and
/// accumulate their derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub span: Span,
    pub body: Body,
    pub phon: String,
    pub derivations: Vec<Derivation>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Inserted {
    New(EdgeId),
    Merged(EdgeId),
}

#[derive(Clone, Debug)]
pub struct Chart {
    tokens: Vec<String>,
    edges: Vec<Edge>,
    index: HashMap<(Span, Body), EdgeId>,
    starting: Vec<Vec<EdgeId>>,
    ending: Vec<Vec<EdgeId>>,
}

impl Chart {
    pub fn new(tokens: Vec<String>) -> Self {
        let n = tokens.len();
        Chart {
            tokens,
            edges: Vec::new(),
            index: HashMap::new(),
            starting: vec![Vec::new(); n + 1],
            ending: vec![Vec::new(); n + 1],
        }
    }

    pub fn tokens(&self) -> &[String] {
        &self.tokens
    }

    pub fn phon(&self, span: Span) -> String {
        self.tokens[span.start..span.end].join(" ")
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn edge(&self, id: EdgeId) -> &Edge {
        &self.edges[id]
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, &Edge)> {
        self.edges.iter().enumerate()
    }

    pub fn starting_at(&self, position: usize) -> &[EdgeId] {
        self.starting.get(position).map_or(&[], Vec::as_slice)
    }

    pub fn ending_at(&self, position: usize) -> &[EdgeId] {
        self.ending.get(position).map_or(&[], Vec::as_slice)
    }

    pub fn find(&self, span: Span, body: &Body) -> Option<EdgeId> {
        self.index.get(&(span, body.clone())).copied()
    }

    /// Adds an edge, or merges its derivations into the existing edge with
    /// the same span and body.
    pub fn insert(&mut self, edge: Edge) -> Inserted {
        let key = (edge.span, edge.body.clone());
        if let Some(&id) = self.index.get(&key) {
            let existing = &mut self.edges[id];
            for d in edge.derivations {
                if !existing.derivations.contains(&d) {
                    existing.derivations.push(d);
                }
            }
            return Inserted::Merged(id);
        }
        let id = self.edges.len();
        self.starting[edge.span.start].push(id);
        self.ending[edge.span.end].push(id);
        self.index.insert(key, id);
        self.edges.push(edge);
        Inserted::New(id)
    }
}
