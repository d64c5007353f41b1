//! Composite and tuple categories, and the relations deciding when they
//! satisfy argument specifications and requirements.
//!
//! A composite (`NP∧Compl`) satisfies a specification when each of its
//! conjuncts unifies with some disjunct. A coordination of tuples satisfies
//! a requirement when, for every tuple, some bijection assigns each element
//! to exactly one specification it satisfies. Partial saturation picks the
//! sub-multiset of specifications to realize first
//! ([`select_subrequirements`]), then asks for bijections against it.

use std::fmt;

use thiserror::Error;

use crate::categories::{unify_cat, Cat};
use crate::requirements::{ArgSpec, Requirement};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("a composite needs at least one conjunct")]
    EmptyComposite,
    #[error("a tuple needs at least one element")]
    EmptyTuple,
    #[error("tuple element {0} is unsaturated but is not the last element")]
    UnsaturatedInner(usize),
    #[error("a composite with several conjuncts must be saturated to end a tuple")]
    UnsaturatedComposite,
    #[error("a coordination needs at least one tuple")]
    EmptyCoordination,
    #[error("coordinated tuples have arities {0} and {1}")]
    ArityMismatch(usize, usize),
}

/// A conjunction of categories (`C1 ∧ ... ∧ Cz`).
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composite {
    conjuncts: Vec<Cat>,
}

impl Composite {
    pub fn new(conjuncts: Vec<Cat>) -> Result<Self, StructureError> {
        if conjuncts.is_empty() {
            return Err(StructureError::EmptyComposite);
        }
        Ok(Composite { conjuncts })
    }

    pub fn single(cat: Cat) -> Self {
        Composite {
            conjuncts: vec![cat],
        }
    }

    pub fn conjuncts(&self) -> &[Cat] {
        &self.conjuncts
    }

    pub fn is_saturated(&self) -> bool {
        self.conjuncts.iter().all(Cat::is_saturated)
    }

    /// Replaces the subcat of every conjunct.
    pub(crate) fn with_subcat(&self, subcat: &Requirement) -> Composite {
        Composite {
            conjuncts: self
                .conjuncts
                .iter()
                .map(|c| c.clone().with_subcat(subcat.clone()))
                .collect(),
        }
    }
}

/// An ordered sequence of composites acting jointly as one conjunct. Only
/// the last element may be unsaturated, and then only as a single category.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tuple {
    elements: Vec<Composite>,
}

impl Tuple {
    pub fn new(elements: Vec<Composite>) -> Result<Self, StructureError> {
        let Some((last, inner)) = elements.split_last() else {
            return Err(StructureError::EmptyTuple);
        };
        if let Some(i) = inner.iter().position(|c| !c.is_saturated()) {
            return Err(StructureError::UnsaturatedInner(i));
        }
        if last.conjuncts.len() > 1 && !last.is_saturated() {
            return Err(StructureError::UnsaturatedComposite);
        }
        Ok(Tuple { elements })
    }

    pub fn elements(&self) -> &[Composite] {
        &self.elements
    }

    pub fn arity(&self) -> usize {
        self.elements.len()
    }

    /// The requirement left open by the tuple: that of its last element.
    pub fn residual(&self) -> Requirement {
        let last = self.elements.last().expect("tuples are nonempty");
        last.conjuncts[0].subcat.clone()
    }

    pub(crate) fn with_residual(&self, residual: &Requirement) -> Tuple {
        let mut elements = self.elements.clone();
        let last = elements.last_mut().expect("tuples are nonempty");
        *last = last.with_subcat(residual);
        Tuple { elements }
    }
}

/// A coordination of equal-arity tuples and the requirement they jointly
/// leave open.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CoordSig {
    tuples: Vec<Tuple>,
    residual: Requirement,
}

impl CoordSig {
    pub fn new(tuples: Vec<Tuple>, residual: Requirement) -> Result<Self, StructureError> {
        let first = tuples.first().ok_or(StructureError::EmptyCoordination)?;
        if let Some(t) = tuples.iter().find(|t| t.arity() != first.arity()) {
            return Err(StructureError::ArityMismatch(first.arity(), t.arity()));
        }
        Ok(CoordSig { tuples, residual })
    }

    pub fn tuples(&self) -> &[Tuple] {
        &self.tuples
    }

    pub fn residual(&self) -> &Requirement {
        &self.residual
    }

    pub fn arity(&self) -> usize {
        self.tuples[0].arity()
    }

    /// The same coordination once its shared requirement has become
    /// `residual`: every tuple's last element now bears it.
    pub fn with_residual(&self, residual: Requirement) -> CoordSig {
        CoordSig {
            tuples: self
                .tuples
                .iter()
                .map(|t| t.with_residual(&residual))
                .collect(),
            residual,
        }
    }
}

/// Maps tuple position `i` to the index of the specification it realizes.
pub type Assignment = Vec<usize>;

/// True iff every conjunct of `c` unifies with at least one disjunct of `a`.
pub fn satisfies_argspec(c: &Composite, a: &ArgSpec) -> bool {
    c.conjuncts.iter().all(|conjunct| {
        a.disjuncts()
            .iter()
            .any(|d| unify_cat(conjunct, d).is_some())
    })
}

/// All bijections from tuple positions to the specifications of `p` under
/// which each element satisfies its specification.
///
/// The arities must agree; a caller realizing only part of a requirement
/// selects the sub-multiset first.
pub fn match_tuple(t: &Tuple, p: &Requirement) -> Vec<Assignment> {
    assert_eq!(
        t.arity(),
        p.len(),
        "match_tuple needs a requirement of the tuple's arity"
    );
    let fits: Vec<Vec<bool>> = t
        .elements
        .iter()
        .map(|e| p.specs().iter().map(|a| satisfies_argspec(e, a)).collect())
        .collect();
    let mut found = Vec::new();
    collect_bijections(
        &fits,
        &mut Vec::new(),
        &mut vec![false; p.len()],
        &mut found,
    );
    found
}

fn collect_bijections(
    fits: &[Vec<bool>],
    current: &mut Assignment,
    used: &mut [bool],
    found: &mut Vec<Assignment>,
) {
    let i = current.len();
    if i == fits.len() {
        found.push(current.clone());
        return;
    }
    for slot in 0..used.len() {
        if used[slot] || !fits[i][slot] {
            continue;
        }
        used[slot] = true;
        current.push(slot);
        collect_bijections(fits, current, used, found);
        current.pop();
        used[slot] = false;
    }
}

/// Every way of choosing one assignment per tuple of `s` against `p`.
/// Nonempty iff `s` satisfies `p`; empty when the arities differ.
pub fn satisfies_coord(s: &CoordSig, p: &Requirement) -> Vec<Vec<Assignment>> {
    if s.arity() != p.len() {
        return Vec::new();
    }
    let mut witnesses: Vec<Vec<Assignment>> = vec![Vec::new()];
    for tuple in &s.tuples {
        let options = match_tuple(tuple, p);
        witnesses = witnesses
            .iter()
            .flat_map(|prefix| {
                options.iter().map(move |a| {
                    let mut w = prefix.clone();
                    w.push(a.clone());
                    w
                })
            })
            .collect();
        if witnesses.is_empty() {
            break;
        }
    }
    witnesses
}

/// Cheap form of [`satisfies_coord`] for callers that only need the answer.
pub fn coord_satisfies(s: &CoordSig, p: &Requirement) -> bool {
    s.arity() == p.len() && s.tuples.iter().all(|t| !match_tuple(t, p).is_empty())
}

/// All size-`m` sub-multisets of `p` together with their complements,
/// without repeats.
pub fn select_subrequirements(p: &Requirement, m: usize) -> Vec<(Requirement, Requirement)> {
    assert!(
        m > 0 && m <= p.len(),
        "selection size {m} out of range for a {}-requirement",
        p.len()
    );
    // Specs are sorted, so equal ones are adjacent.
    let mut groups: Vec<(&ArgSpec, usize)> = Vec::new();
    for spec in p.specs() {
        match groups.last_mut() {
            Some((last, count)) if *last == spec => *count += 1,
            _ => groups.push((spec, 1)),
        }
    }
    let mut out = Vec::new();
    let mut taken = vec![0; groups.len()];
    choose_counts(&groups, 0, m, &mut taken, &mut out);
    out
}

fn choose_counts(
    groups: &[(&ArgSpec, usize)],
    g: usize,
    remaining: usize,
    taken: &mut Vec<usize>,
    out: &mut Vec<(Requirement, Requirement)>,
) {
    if g == groups.len() {
        if remaining == 0 {
            let mut chosen = Vec::new();
            let mut rest = Vec::new();
            for (&(spec, count), &k) in groups.iter().zip(taken.iter()) {
                chosen.extend(std::iter::repeat_n(spec.clone(), k));
                rest.extend(std::iter::repeat_n(spec.clone(), count - k));
            }
            out.push((Requirement::new(chosen), Requirement::new(rest)));
        }
        return;
    }
    let available = groups[g].1;
    for k in (0..=available.min(remaining)).rev() {
        taken[g] = k;
        choose_counts(groups, g + 1, remaining - k, taken, out);
    }
    taken[g] = 0;
}

impl fmt::Display for Composite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.conjuncts.iter().enumerate() {
            if i > 0 {
                f.write_str("∧")?;
            }
            f.write_str(&c.part)?;
        }
        Ok(())
    }
}

impl fmt::Display for Tuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, e) in self.elements.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            if e.conjuncts.len() > 1 {
                write!(f, "({e})")?;
            } else {
                write!(f, "{e}")?;
            }
        }
        f.write_str(">")
    }
}

/// Renders the part structure: `NP∧Compl` for simple conjuncts,
/// `<PP,Inf>∧<PP,Inf>` for tuples.
impl fmt::Display for CoordSig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, t) in self.tuples.iter().enumerate() {
            if i > 0 {
                f.write_str("∧")?;
            }
            if t.arity() == 1 {
                write!(f, "{}", t.elements[0])?;
            } else {
                write!(f, "{t}")?;
            }
        }
        Ok(())
    }
}
