//! Random generators over the bundled inventory and brute-force oracles.
//!
//! The oracles only read the data types. They enumerate every permutation
//! or subset directly instead of calling the library's unification and
//! satisfaction code.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::Rng;

use subcat_coord::categories::{unify_cat, Cat};
use subcat_coord::cli::{parse_corpus, tokenize, Expected, Judgment};
use subcat_coord::lexicon::{bundled_lexicon, Lexicon, CONJ_PART};
use subcat_coord::parser::{Body, Chart, EdgeId, Rule, Span, Tree};
use subcat_coord::requirements::{ArgSpec, Requirement};
use subcat_coord::satisfaction::{Composite, CoordSig, Tuple};

pub const BUNDLED_CORPUS: &str = include_str!("../../data/coordination.corpus");

pub fn corpus() -> Vec<Judgment> {
    parse_corpus(BUNDLED_CORPUS).expect("bundled corpus is well formed")
}

pub fn accepted_corpus() -> Vec<Judgment> {
    corpus()
        .into_iter()
        .filter(|j| j.expected == Expected::Accept)
        .collect()
}

pub fn toks(s: &str) -> Vec<String> {
    tokenize(s)
}

/// Parts and features drawn from a lexicon. Most categories use a few
/// common parts so that random pairs unify often enough to be interesting.
pub struct Inventory {
    common: Vec<String>,
    parts: Vec<String>,
    features: Vec<(String, Vec<String>)>,
}

impl Inventory {
    pub fn bundled() -> Self {
        Self::from_lexicon(&bundled_lexicon())
    }

    pub fn from_lexicon(lex: &Lexicon) -> Self {
        let parts: Vec<String> = lex
            .parts()
            .iter()
            .filter(|p| *p != CONJ_PART)
            .cloned()
            .collect();
        let common = ["NP", "PP", "Compl", "Inf"]
            .iter()
            .map(|p| p.to_string())
            .filter(|p| parts.contains(p))
            .collect();
        let features = lex
            .features()
            .map(|(name, values)| (name.to_string(), values.to_vec()))
            .collect();
        Inventory {
            common,
            parts,
            features,
        }
    }

    pub fn part(&self, rng: &mut StdRng) -> String {
        let pool = if rng.gen_bool(0.8) {
            &self.common
        } else {
            &self.parts
        };
        pool.choose(rng).expect("nonempty inventory").clone()
    }

    /// A category whose subcat nests at most `depth` levels.
    pub fn cat(&self, rng: &mut StdRng, depth: usize) -> Cat {
        let mut cat = Cat::atom(self.part(rng));
        for (name, values) in &self.features {
            if rng.gen_bool(0.3) {
                cat = cat.with_feat(name, values.choose(rng).expect("declared values"));
            }
        }
        if depth > 0 && rng.gen_bool(0.35) {
            let n = rng.gen_range(1..=3);
            cat = cat.with_subcat(self.requirement(rng, n, depth - 1));
        }
        cat
    }

    pub fn saturated_cat(&self, rng: &mut StdRng) -> Cat {
        self.cat(rng, 0)
    }

    pub fn argspec(&self, rng: &mut StdRng, depth: usize) -> ArgSpec {
        let n = rng.gen_range(1..=3);
        ArgSpec::new((0..n).map(|_| self.cat(rng, depth))).expect("nonempty")
    }

    pub fn requirement(&self, rng: &mut StdRng, n: usize, depth: usize) -> Requirement {
        Requirement::new((0..n).map(|_| self.argspec(rng, depth)))
    }

    /// Two requirements of arity at most `max`, usually of equal arity.
    pub fn requirement_pair(&self, rng: &mut StdRng, max: usize) -> (Requirement, Requirement) {
        let n = rng.gen_range(0..=max);
        let m = if rng.gen_bool(0.85) {
            n
        } else {
            rng.gen_range(0..=max)
        };
        (self.requirement(rng, n, 1), self.requirement(rng, m, 1))
    }

    pub fn composite(&self, rng: &mut StdRng) -> Composite {
        let n = rng.gen_range(1..=2);
        Composite::new((0..n).map(|_| self.saturated_cat(rng)).collect()).expect("nonempty")
    }

    /// A tuple whose last element is sometimes an unsaturated category.
    pub fn tuple(&self, rng: &mut StdRng, arity: usize) -> Tuple {
        let mut elements: Vec<Composite> = (0..arity).map(|_| self.composite(rng)).collect();
        if rng.gen_bool(0.3) {
            let last = Cat::atom(self.part(rng)).with_subcat(self.requirement(rng, 1, 0));
            *elements.last_mut().expect("nonempty") = Composite::single(last);
        }
        Tuple::new(elements).expect("only the last element is unsaturated")
    }

    /// A coordination of up to `max_tuples` tuples of arity at most
    /// `max_arity`, and a requirement usually of the same arity.
    pub fn coord_case(
        &self,
        rng: &mut StdRng,
        max_arity: usize,
        max_tuples: usize,
    ) -> (CoordSig, Requirement) {
        let arity = rng.gen_range(1..=max_arity);
        let k = rng.gen_range(1..=max_tuples);
        let tuples = (0..k).map(|_| self.tuple(rng, arity)).collect();
        let sig = CoordSig::new(tuples, Requirement::empty()).expect("equal arities");
        if rng.gen_bool(0.5) {
            let p = self.requirement_near(rng, &sig.tuples()[0]);
            return (sig, p);
        }
        let n = if rng.gen_bool(0.8) {
            arity
        } else {
            rng.gen_range(1..=max_arity)
        };
        (sig, self.requirement(rng, n, 1))
    }

    /// A requirement shaped after `t`: one specification per element, listing
    /// that element's parts (features dropped) plus a random alternative, in
    /// shuffled order.
    pub fn requirement_near(&self, rng: &mut StdRng, t: &Tuple) -> Requirement {
        let mut specs: Vec<ArgSpec> = t
            .elements()
            .iter()
            .map(|e| {
                let mut ds: Vec<Cat> = e
                    .conjuncts()
                    .iter()
                    .map(|c| Cat::atom(c.part.clone()).with_subcat(c.subcat.clone()))
                    .collect();
                ds.push(self.cat(rng, 0));
                ArgSpec::new(ds).expect("nonempty")
            })
            .collect();
        specs.shuffle(rng);
        Requirement::new(specs)
    }
}

/// Category unification by direct definition.
pub fn oracle_cat(s: &Cat, t: &Cat) -> Option<Cat> {
    if s.part != t.part {
        return None;
    }
    let mut feats: BTreeMap<String, String> = BTreeMap::new();
    for (name, value) in s.feats.iter().chain(t.feats.iter()) {
        if let Some(old) = feats.insert(name.clone(), value.clone()) {
            if &old != value {
                return None;
            }
        }
    }
    let subcat = if s.subcat.is_empty() && t.subcat.is_empty() {
        Requirement::empty()
    } else {
        let outcomes = oracle_requirement(&s.subcat, &t.subcat);
        let maximal: Vec<&Requirement> = outcomes
            .iter()
            .filter(|o| {
                !outcomes.iter().any(|other| {
                    oracle_requirement_subsumes(other, o) && !oracle_requirement_subsumes(o, other)
                })
            })
            .collect();
        (*maximal.into_iter().min()?).clone()
    };
    let mut cat = Cat::atom(s.part.clone()).with_subcat(subcat);
    cat.feats = feats;
    Some(cat)
}

pub fn oracle_argspec(a: &ArgSpec, b: &ArgSpec) -> Option<ArgSpec> {
    let set: BTreeSet<Cat> = a
        .disjuncts()
        .iter()
        .cartesian_product(b.disjuncts())
        .filter_map(|(s, t)| oracle_cat(s, t))
        .collect();
    ArgSpec::new(set)
}

/// Every permutation of `q` against `p`, in lexicographic order, keeping the
/// first occurrence of each outcome.
pub fn oracle_requirement(p: &Requirement, q: &Requirement) -> Vec<Requirement> {
    let n = p.len();
    if n != q.len() {
        return Vec::new();
    }
    let mut out: Vec<Requirement> = Vec::new();
    for perm in (0..n).permutations(n) {
        let pairs: Option<Vec<ArgSpec>> = perm
            .iter()
            .enumerate()
            .map(|(i, &j)| oracle_argspec(&p.specs()[i], &q.specs()[j]))
            .collect();
        if let Some(specs) = pairs {
            let r = Requirement::new(specs);
            if !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out
}

pub fn oracle_subsumes(s: &Cat, t: &Cat) -> bool {
    s.part == t.part
        && s.feats.iter().all(|(k, v)| t.feats.get(k) == Some(v))
        && oracle_requirement_subsumes(&s.subcat, &t.subcat)
}

pub fn oracle_argspec_subsumes(general: &ArgSpec, specific: &ArgSpec) -> bool {
    specific
        .disjuncts()
        .iter()
        .all(|t| general.disjuncts().iter().any(|s| oracle_subsumes(s, t)))
}

pub fn oracle_requirement_subsumes(general: &Requirement, specific: &Requirement) -> bool {
    let n = general.len();
    n == specific.len()
        && (0..n).permutations(n).any(|perm| {
            perm.iter()
                .enumerate()
                .all(|(i, &j)| oracle_argspec_subsumes(&general.specs()[i], &specific.specs()[j]))
        })
}

pub fn oracle_satisfies_argspec(c: &Composite, a: &ArgSpec) -> bool {
    c.conjuncts()
        .iter()
        .all(|conj| a.disjuncts().iter().any(|d| oracle_cat(conj, d).is_some()))
}

/// Every bijection from tuple positions to requirement slots that the
/// elements satisfy, sorted.
pub fn oracle_assignments(t: &Tuple, p: &Requirement) -> Vec<Vec<usize>> {
    let n = t.arity();
    if n != p.len() {
        return Vec::new();
    }
    let mut out: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .filter(|perm| {
            perm.iter()
                .enumerate()
                .all(|(i, &j)| oracle_satisfies_argspec(&t.elements()[i], &p.specs()[j]))
        })
        .collect();
    out.sort();
    out
}

pub fn oracle_coord_satisfies(s: &CoordSig, p: &Requirement) -> bool {
    s.tuples()
        .iter()
        .all(|t| !oracle_assignments(t, p).is_empty())
}

/// Size-`m` sub-multisets of `p` with complements, via index subsets.
pub fn oracle_select(p: &Requirement, m: usize) -> BTreeSet<(Requirement, Requirement)> {
    (0..p.len())
        .combinations(m)
        .map(|chosen| {
            let pick = |keep: bool| {
                Requirement::new(
                    p.specs()
                        .iter()
                        .enumerate()
                        .filter(|(i, _)| chosen.contains(i) == keep)
                        .map(|(_, s)| s.clone()),
                )
            };
            (pick(true), pick(false))
        })
        .collect()
}

/// An edge identified independently of its id.
pub type EdgeKey = (Span, Body);

/// A chart's edges with derivations over child keys.
pub type ChartSignature = BTreeSet<(EdgeKey, BTreeSet<(Rule, Vec<EdgeKey>)>)>;

/// The chart as a set of edges, each with its derivations expressed over
/// child keys, so charts built in different orders can be compared.
pub fn chart_signature(chart: &Chart) -> ChartSignature {
    let key = |id: EdgeId| {
        let e = chart.edge(id);
        (e.span, e.body.clone())
    };
    chart
        .edges()
        .map(|(id, e)| {
            let derivations = e
                .derivations
                .iter()
                .map(|d| (d.rule, d.children.iter().map(|&c| key(c)).collect()))
                .collect();
            (key(id), derivations)
        })
        .collect()
}

const ARGUMENT_PARTS: [&str; 3] = ["NP", "PP", "Compl"];

/// Spans of NP, PP and Compl constituents that fill an argument position in
/// `tree`: complements, subjects and conjuncts, but never heads.
pub fn argument_spans(chart: &Chart, tree: &Tree) -> BTreeSet<Span> {
    let mut out = BTreeSet::new();
    collect_arguments(chart, tree, &mut out);
    out
}

fn collect_arguments(chart: &Chart, tree: &Tree, out: &mut BTreeSet<Span>) {
    let heads = usize::from(tree.rule == Rule::HeadComplement);
    for child in &tree.children[heads..] {
        let e = chart.edge(child.edge);
        if let Body::Simple(cat) = &e.body {
            if cat.is_saturated() && ARGUMENT_PARTS.contains(&cat.part.as_str()) {
                out.insert(e.span);
            }
        }
    }
    for child in &tree.children {
        collect_arguments(chart, child, out);
    }
}

/// `tokens` with the constituent at `span` replaced by "A et A".
pub fn doubled(tokens: &[String], span: Span) -> Vec<String> {
    let a = &tokens[span.start..span.end];
    let mut out = tokens[..span.start].to_vec();
    out.extend_from_slice(a);
    out.push("et".into());
    out.extend_from_slice(a);
    out.extend_from_slice(&tokens[span.end..]);
    out
}

/// Disjuncts within every specification, at every depth, fail to unify
/// with one another. Self-unification of such a category changes nothing.
pub fn rigid(cat: &Cat) -> bool {
    cat.subcat.specs().iter().all(|spec| {
        let ds = spec.disjuncts();
        ds.iter().all(rigid)
            && ds
                .iter()
                .enumerate()
                .all(|(i, a)| ds[i + 1..].iter().all(|b| unify_cat(a, b).is_none()))
    })
}
