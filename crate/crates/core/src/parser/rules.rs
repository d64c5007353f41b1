//! The combination rules closing the chart: lexical scanning, head-complement
//! saturation, coordination over tuples, and subject attachment.

use crate::categories::Cat;
use crate::lexicon::{instantiate_coordination, lookup, Conjunct, Lexicon};
use crate::requirements::Requirement;
use crate::satisfaction::{
    coord_satisfies, satisfies_argspec, select_subrequirements, Composite, Tuple,
};

use super::chart::{Body, Chart, Derivation, Edge, EdgeId, Rule, Span};
use super::ParseError;

const SUBJECT_PART: &str = "NP";
const VERB_PART: &str = "V";
const SENTENCE_PART: &str = "S";

/// Which side of a conjunction a tuple sits on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

/// A run of adjacent edges usable as one conjunct next to a conjunction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TupleCandidate {
    pub side: Side,
    pub span: Span,
    pub elements: Vec<EdgeId>,
    pub conjunct: Conjunct,
}

/// Lexical edges for every subspan matching an entry, all lengths kept.
pub(crate) fn lexical_edges(tokens: &[String], lex: &Lexicon) -> Result<Vec<Edge>, ParseError> {
    if tokens.is_empty() {
        return Err(ParseError::EmptyInput);
    }
    let n = tokens.len();
    let mut covered = vec![false; n];
    let mut edges = Vec::new();
    for start in 0..n {
        let longest = lex.max_phon_len().max(1).min(n - start);
        for len in (1..=longest).rev() {
            let words: Vec<&str> = tokens[start..start + len]
                .iter()
                .map(String::as_str)
                .collect();
            for entry in lookup(lex, &words) {
                covered[start..start + len]
                    .iter_mut()
                    .for_each(|c| *c = true);
                edges.push(Edge {
                    span: Span::new(start, start + len),
                    body: Body::Simple(entry.cat),
                    phon: words.join(" "),
                    derivations: vec![Derivation {
                        rule: Rule::Lexical,
                        children: Vec::new(),
                    }],
                });
            }
        }
    }
    if let Some(position) = covered.iter().position(|c| !c) {
        return Err(ParseError::UnknownToken {
            token: tokens[position].clone(),
            position,
        });
    }
    Ok(edges)
}

/// A chart holding exactly the lexical edges of `tokens`.
pub fn lex_scan(tokens: &[String], lex: &Lexicon) -> Result<Chart, ParseError> {
    let mut chart = Chart::new(tokens.to_vec());
    for edge in lexical_edges(tokens, lex)? {
        chart.insert(edge);
    }
    Ok(chart)
}

fn can_head(body: &Body) -> bool {
    !body.is_conj() && !body.is_saturated()
}

/// Saturates part of `head`'s requirement with the adjacent `comps`.
///
/// Every way of choosing which specifications the complements realize gives
/// a mother; equal mothers are reported once.
pub fn combine_head_complements(chart: &Chart, head: EdgeId, comps: &[EdgeId]) -> Vec<Edge> {
    let h = chart.edge(head);
    let Some(&last) = comps.last() else {
        return Vec::new();
    };
    if !can_head(&h.body) {
        return Vec::new();
    }
    let mut position = h.span.end;
    for &c in comps {
        let e = chart.edge(c);
        if e.span.start != position || e.body.is_conj() {
            return Vec::new();
        }
        if c != last && !e.body.is_saturated() {
            return Vec::new();
        }
        position = e.span.end;
    }
    let sizes: Vec<usize> = comps
        .iter()
        .map(|&c| match &chart.edge(c).body {
            Body::Simple(_) => 1,
            Body::Coord(sig) => sig.arity(),
        })
        .collect();
    let m: usize = sizes.iter().sum();
    let requirement = h.body.residual();
    if m > requirement.len() {
        return Vec::new();
    }
    let inherited = chart.edge(last).body.residual();
    let items: Vec<(&Body, usize)> = comps
        .iter()
        .map(|&c| &chart.edge(c).body)
        .zip(sizes)
        .collect();

    let mut mothers: Vec<Body> = Vec::new();
    for (chosen, rest) in select_subrequirements(requirement, m) {
        if !rest.is_empty() && !inherited.is_empty() {
            continue;
        }
        if !distribute(&chosen, &items) {
            continue;
        }
        let body = with_requirement(&h.body, rest.union(inherited));
        if !mothers.contains(&body) {
            mothers.push(body);
        }
    }
    let span = Span::new(h.span.start, position);
    let mut children = vec![head];
    children.extend_from_slice(comps);
    mothers
        .into_iter()
        .map(|body| Edge {
            span,
            body,
            phon: chart.phon(span),
            derivations: vec![Derivation {
                rule: Rule::HeadComplement,
                children: children.clone(),
            }],
        })
        .collect()
}

/// Whether the items, in order, can split `remaining` among themselves.
fn distribute(remaining: &Requirement, items: &[(&Body, usize)]) -> bool {
    let Some(((body, size), rest_items)) = items.split_first() else {
        return remaining.is_empty();
    };
    select_subrequirements(remaining, *size)
        .into_iter()
        .any(|(chosen, rest)| realizes(body, &chosen) && distribute(&rest, rest_items))
}

fn realizes(body: &Body, chosen: &Requirement) -> bool {
    match body {
        Body::Simple(cat) => satisfies_argspec(&Composite::single(cat.clone()), &chosen.specs()[0]),
        Body::Coord(sig) => coord_satisfies(sig, chosen),
    }
}

fn with_requirement(body: &Body, requirement: Requirement) -> Body {
    match body {
        Body::Simple(cat) => Body::Simple(cat.clone().with_subcat(requirement)),
        Body::Coord(sig) => Body::Coord(sig.with_residual(requirement)),
    }
}

/// A saturated NP followed by a saturated verbal constituent forms an S.
pub fn subject_attach(chart: &Chart, np: EdgeId, vp: EdgeId) -> Option<Edge> {
    let (n, v) = (chart.edge(np), chart.edge(vp));
    let ok = n.span.end == v.span.start
        && n.body.part() == Some(SUBJECT_PART)
        && n.body.is_saturated()
        && v.body.part() == Some(VERB_PART)
        && v.body.is_saturated();
    if !ok {
        return None;
    }
    let span = Span::new(n.span.start, v.span.end);
    Some(Edge {
        span,
        body: Body::Simple(Cat::atom(SENTENCE_PART)),
        phon: chart.phon(span),
        derivations: vec![Derivation {
            rule: Rule::Subject,
            children: vec![np, vp],
        }],
    })
}

/// The composite an edge contributes as a tuple element, if it can be one.
fn element(body: &Body) -> Option<Composite> {
    match body {
        Body::Simple(cat) => Some(Composite::single(cat.clone())),
        Body::Coord(sig) if sig.arity() == 1 && sig.residual().is_empty() => {
            let conjuncts: Vec<Cat> = sig
                .tuples()
                .iter()
                .flat_map(|t| t.elements()[0].conjuncts().iter().cloned())
                .collect();
            Composite::new(conjuncts).ok()
        }
        Body::Coord(_) => None,
    }
}

fn candidate(chart: &Chart, side: Side, elements: Vec<EdgeId>) -> Option<TupleCandidate> {
    let first = chart.edge(elements[0]);
    let span = Span::new(first.span.start, chart.edge(*elements.last()?).span.end);
    let conjunct = match (&first.body, elements.len()) {
        (Body::Coord(sig), 1) => Conjunct::Coord(sig.clone()),
        _ => {
            let composites = elements
                .iter()
                .map(|&e| element(&chart.edge(e).body))
                .collect::<Option<Vec<_>>>()?;
            Conjunct::tuple(Tuple::new(composites).ok()?)
        }
    };
    Some(TupleCandidate {
        side,
        span,
        elements,
        conjunct,
    })
}

/// Tuples ending at `end` (left of a conjunction) of up to `max_m` elements.
fn left_tuples(chart: &Chart, end: usize, max_m: usize) -> Vec<TupleCandidate> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<EdgeId>> = chart
        .ending_at(end)
        .iter()
        .filter(|&&e| !chart.edge(e).body.is_conj())
        .map(|&e| vec![e])
        .collect();
    while let Some(reversed) = stack.pop() {
        let mut elements = reversed.clone();
        elements.reverse();
        if let Some(c) = candidate(chart, Side::Left, elements) {
            out.push(c);
        }
        if reversed.len() == max_m {
            continue;
        }
        let front = chart.edge(*reversed.last().expect("nonempty"));
        for &e in chart.ending_at(front.span.start) {
            let body = &chart.edge(e).body;
            if !body.is_conj() && body.is_saturated() {
                let mut next = reversed.clone();
                next.push(e);
                stack.push(next);
            }
        }
    }
    out
}

/// Tuples starting at `start` (right of a conjunction) of up to `max_m` elements.
fn right_tuples(chart: &Chart, start: usize, max_m: usize) -> Vec<TupleCandidate> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<EdgeId>> = chart
        .starting_at(start)
        .iter()
        .filter(|&&e| !chart.edge(e).body.is_conj())
        .map(|&e| vec![e])
        .collect();
    while let Some(elements) = stack.pop() {
        if let Some(c) = candidate(chart, Side::Right, elements.clone()) {
            out.push(c);
        }
        let back = chart.edge(*elements.last().expect("nonempty"));
        if elements.len() == max_m || !back.body.is_saturated() {
            continue;
        }
        for &e in chart.starting_at(back.span.end) {
            if !chart.edge(e).body.is_conj() {
                let mut next = elements.clone();
                next.push(e);
                stack.push(next);
            }
        }
    }
    out
}

/// Every tuple candidate adjacent to a conjunction in the chart.
pub fn build_tuples(chart: &Chart, max_m: usize) -> Vec<TupleCandidate> {
    assert!(max_m >= 1, "tuples need at least one element");
    let mut out = Vec::new();
    for (_, conj) in chart.edges().filter(|(_, e)| e.body.is_conj()) {
        out.extend(left_tuples(chart, conj.span.start, max_m));
        out.extend(right_tuples(chart, conj.span.end, max_m));
    }
    out
}

fn coordinate_at(
    chart: &Chart,
    conj: EdgeId,
    max_m: usize,
    involving: Option<EdgeId>,
) -> Vec<Edge> {
    let c = chart.edge(conj);
    let lefts = left_tuples(chart, c.span.start, max_m);
    let rights = right_tuples(chart, c.span.end, max_m);
    let mut out = Vec::new();
    for l in &lefts {
        for r in &rights {
            if let Some(id) = involving {
                if id != conj && !l.elements.contains(&id) && !r.elements.contains(&id) {
                    continue;
                }
            }
            let span = Span::new(l.span.start, r.span.end);
            let mut children = l.elements.clone();
            children.push(conj);
            children.extend_from_slice(&r.elements);
            for sig in instantiate_coordination(&l.conjunct, &r.conjunct) {
                out.push(Edge {
                    span,
                    body: Body::Coord(sig),
                    phon: chart.phon(span),
                    derivations: vec![Derivation {
                        rule: Rule::Coordination,
                        children: children.clone(),
                    }],
                });
            }
        }
    }
    out
}

/// All coordinations the chart currently supports.
pub fn coordinate(chart: &Chart, max_m: usize) -> Vec<Edge> {
    let conjs: Vec<EdgeId> = chart
        .edges()
        .filter(|(_, e)| e.body.is_conj())
        .map(|(id, _)| id)
        .collect();
    conjs
        .into_iter()
        .flat_map(|c| coordinate_at(chart, c, max_m, None))
        .collect()
}

/// Everything derivable in one step that uses `id`, given the rest of the chart.
pub(crate) fn consequences(chart: &Chart, id: EdgeId, max_m: usize) -> Vec<Edge> {
    let e = chart.edge(id);
    let mut out = Vec::new();
    if e.body.is_conj() {
        return coordinate_at(chart, id, max_m, None);
    }
    if can_head(&e.body) {
        for &c in chart.starting_at(e.span.end) {
            out.extend(combine_head_complements(chart, id, &[c]));
        }
    }
    for &h in chart.ending_at(e.span.start) {
        out.extend(combine_head_complements(chart, h, &[id]));
    }
    for &v in chart.starting_at(e.span.end) {
        out.extend(subject_attach(chart, id, v));
    }
    for &n in chart.ending_at(e.span.start) {
        out.extend(subject_attach(chart, n, id));
    }
    // Conjunctions this edge could stand next to as part of a tuple.
    let conjs: Vec<EdgeId> = chart
        .edges()
        .filter(|(_, c)| {
            c.body.is_conj() && (c.span.start >= e.span.end || c.span.end <= e.span.start)
        })
        .map(|(cid, _)| cid)
        .collect();
    for c in conjs {
        out.extend(coordinate_at(chart, c, max_m, Some(id)));
    }
    out
}
