//! Argument specifications, n-requirements and their extended unification.
//!
//! An [`ArgSpec`] is a disjunction of categories (one argument slot and its
//! admissible realizations). A [`Requirement`] is a multiset of argument
//! specifications. Two specifications unify pairwise over their disjuncts;
//! two requirements unify when some permutation pairs their specifications
//! so that every pair unifies. Several permutations may succeed, so
//! [`unify_requirement`] returns every distinct outcome.

use std::collections::HashSet;
use std::fmt;

use crate::categories::{requirement_subsumes, unify_cat, Cat};

/// Largest requirement arity accepted from a lexicon. Permutation search is
/// exhaustive, so this bounds it at 8! candidate pairings.
pub const MAX_ARITY: usize = 8;

/// A nonempty, duplicate-free disjunction of categories, kept sorted.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ArgSpec {
    disjuncts: Vec<Cat>,
}

impl ArgSpec {
    /// Builds a specification from its disjuncts. Exact duplicates are
    /// removed; returns `None` for an empty disjunction.
    pub fn new(disjuncts: impl IntoIterator<Item = Cat>) -> Option<Self> {
        let mut disjuncts: Vec<Cat> = disjuncts.into_iter().collect();
        if disjuncts.is_empty() {
            return None;
        }
        disjuncts.sort();
        disjuncts.dedup();
        Some(ArgSpec { disjuncts })
    }

    pub fn single(cat: Cat) -> Self {
        ArgSpec {
            disjuncts: vec![cat],
        }
    }

    pub fn disjuncts(&self) -> &[Cat] {
        &self.disjuncts
    }
}

/// A multiset of argument specifications, stored in canonical sorted order
/// so that structural equality is multiset equality.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Requirement {
    specs: Vec<ArgSpec>,
}

impl Requirement {
    pub fn new(specs: impl IntoIterator<Item = ArgSpec>) -> Self {
        let mut specs: Vec<ArgSpec> = specs.into_iter().collect();
        specs.sort();
        Requirement { specs }
    }

    pub fn empty() -> Self {
        Requirement::default()
    }

    pub fn specs(&self) -> &[ArgSpec] {
        &self.specs
    }

    pub fn len(&self) -> usize {
        self.specs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.specs.is_empty()
    }

    /// Multiset union.
    pub fn union(&self, other: &Requirement) -> Requirement {
        Requirement::new(self.specs.iter().chain(&other.specs).cloned())
    }

    /// This requirement plus one more occurrence of `spec`.
    pub fn with(&self, spec: ArgSpec) -> Requirement {
        Requirement::new(self.specs.iter().cloned().chain(Some(spec)))
    }
}

/// Unifies two argument specifications: the disjunction of every pairwise
/// category unification that exists, or `None` when no pair unifies.
pub fn unify_argspec(a: &ArgSpec, b: &ArgSpec) -> Option<ArgSpec> {
    let unified = a
        .disjuncts
        .iter()
        .flat_map(|s| b.disjuncts.iter().filter_map(move |t| unify_cat(s, t)));
    ArgSpec::new(unified)
}

/// Unifies two n-requirements.
///
/// Returns every distinct requirement obtained from a permutation that pairs
/// each specification of `p` with one of `q` such that all pairs unify,
/// in the order of the first permutation (lexicographic) producing each
/// outcome. Empty when the arities differ or no permutation succeeds.
pub fn unify_requirement(p: &Requirement, q: &Requirement) -> Vec<Requirement> {
    let Some(table) = pairwise_table(p, q) else {
        return Vec::new();
    };
    let mut outcomes = Vec::new();
    let mut seen = HashSet::new();
    search_permutations(&table, &mut Vec::new(), &mut 0, &mut |pairing| {
        let unified = Requirement::new(
            pairing
                .iter()
                .enumerate()
                .map(|(i, &j)| table[i][j].clone().expect("pairing uses defined cells")),
        );
        if seen.insert(unified.clone()) {
            outcomes.push(unified);
        }
        true
    });
    outcomes
}

/// The canonical unification outcome: among all outcomes, the most general
/// ones (not strictly subsumed by another outcome), and of those the least in
/// canonical order. Depends only on the set of outcomes, so it is the same
/// whichever side is given first.
pub(crate) fn canonical_unification(p: &Requirement, q: &Requirement) -> Option<Requirement> {
    let outcomes = unify_requirement(p, q);
    let strictly_below = |o: &Requirement| {
        outcomes
            .iter()
            .any(|other| requirement_subsumes(other, o) && !requirement_subsumes(o, other))
    };
    outcomes
        .iter()
        .filter(|o| !strictly_below(o))
        .min()
        .cloned()
}

/// Two requirements are compatible iff their unification succeeds.
pub fn compatible(p: &Requirement, q: &Requirement) -> bool {
    p.len() == q.len()
        && permutation_exists(p.len(), |i, j| {
            unify_argspec(&p.specs[i], &q.specs[j]).is_some()
        })
}

fn pairwise_table(p: &Requirement, q: &Requirement) -> Option<Vec<Vec<Option<ArgSpec>>>> {
    if p.len() != q.len() {
        return None;
    }
    Some(
        p.specs
            .iter()
            .map(|a| q.specs.iter().map(|b| unify_argspec(a, b)).collect())
            .collect(),
    )
}

/// Depth-first search over permutations in lexicographic order, visiting
/// only those whose every cell is defined. The visitor returns `false` to
/// stop the search.
fn search_permutations<T>(
    table: &[Vec<Option<T>>],
    pairing: &mut Vec<usize>,
    used: &mut u64,
    visit: &mut dyn FnMut(&[usize]) -> bool,
) -> bool {
    let i = pairing.len();
    if i == table.len() {
        return visit(pairing);
    }
    for j in 0..table.len() {
        if *used & (1 << j) != 0 || table[i][j].is_none() {
            continue;
        }
        *used |= 1 << j;
        pairing.push(j);
        let keep_going = search_permutations(table, pairing, used, visit);
        pairing.pop();
        *used &= !(1 << j);
        if !keep_going {
            return false;
        }
    }
    true
}

/// True iff some bijection `i -> j` on `0..n` makes `ok(i, j)` hold for all i.
pub(crate) fn permutation_exists(n: usize, ok: impl Fn(usize, usize) -> bool) -> bool {
    let table: Vec<Vec<Option<()>>> = (0..n)
        .map(|i| (0..n).map(|j| ok(i, j).then_some(())).collect())
        .collect();
    let mut found = false;
    search_permutations(&table, &mut Vec::new(), &mut 0, &mut |_| {
        found = true;
        false
    });
    found
}

impl fmt::Display for ArgSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, cat) in self.disjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            write!(f, "{cat}")?;
        }
        Ok(())
    }
}

impl fmt::Display for Requirement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, spec) in self.specs.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{spec}")?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lexicon::syntax::{parse_argspec, parse_requirement};

    fn spec(text: &str) -> ArgSpec {
        parse_argspec(text).unwrap()
    }

    fn req(text: &str) -> Requirement {
        parse_requirement(text).unwrap()
    }

    #[test]
    fn argspec_dedups_and_rejects_empty() {
        let s = ArgSpec::new([Cat::atom("NP"), Cat::atom("NP"), Cat::atom("Compl")]).unwrap();
        assert_eq!(s.disjuncts().len(), 2);
        assert!(ArgSpec::new(Vec::new()).is_none());
    }

    #[test]
    fn argspec_unification() {
        assert_eq!(
            unify_argspec(&spec("NP|Compl"), &spec("NP")),
            Some(spec("NP"))
        );
        assert_eq!(unify_argspec(&spec("NP"), &spec("NP")), Some(spec("NP")));
        assert_eq!(unify_argspec(&spec("PP[prep=a]"), &spec("Compl")), None);
        assert_eq!(
            unify_argspec(&spec("NP|Compl"), &spec("Inf|Compl")),
            Some(spec("Compl"))
        );
    }

    #[test]
    fn requirement_unification() {
        assert_eq!(
            unify_requirement(&req("{NP}"), &req("{NP|Compl}")),
            vec![req("{NP}")]
        );
        assert_eq!(unify_requirement(&req("{}"), &req("{}")), vec![req("{}")]);
        // same-valence condition
        assert!(unify_requirement(&req("{NP}"), &req("{NP, PP[prep=a]}")).is_empty());
        // two successful permutations collapse to one outcome
        assert_eq!(
            unify_requirement(&req("{NP, PP}"), &req("{NP|PP, NP|PP}")),
            vec![req("{NP, PP}")]
        );
    }

    #[test]
    fn ambiguous_requirement_unification_keeps_every_outcome() {
        let p = req("{NP|PP, NP|PP}");
        let q = req("{NP|PP[prep=a], NP}");
        let outcomes = unify_requirement(&p, &q);
        assert_eq!(outcomes, vec![req("{NP|PP[prep=a], NP}")]);
        let p = req("{NP|Compl, NP}");
        let q = req("{NP|Compl, Compl|NP}");
        assert_eq!(unify_requirement(&p, &q), vec![req("{NP, NP|Compl}")]);
        let p = req("{NP|Compl, PP|Compl}");
        let q = req("{Compl, NP|PP}");
        assert_eq!(
            unify_requirement(&p, &q),
            vec![req("{Compl, PP}"), req("{Compl, NP}")]
        );
    }

    #[test]
    fn compatibility() {
        assert!(compatible(&req("{NP}"), &req("{NP}")));
        assert!(!compatible(&req("{NP}"), &req("{PP[prep=a]}")));
        assert!(!compatible(&req("{NP}"), &req("{NP, NP}")));
        assert!(compatible(&req("{}"), &req("{}")));
    }

    #[test]
    fn display() {
        assert_eq!(
            req("{PP[prep=a], NP|Compl}").to_string(),
            "{Compl|NP, PP[prep=a]}"
        );
        assert_eq!(Requirement::empty().to_string(), "{}");
    }
}
