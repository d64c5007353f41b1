//! Atomic-part categories and the base unification on which requirement
//! unification and satisfaction are built.
//!
//! A [`Cat`] is a part symbol (`NP`, `PP`, `Inf`, ...), a flat map of atomic
//! features and a subcategorization requirement. Feature absence means
//! "unconstrained": `PP` unifies with `PP[prep=a]` and yields the latter.

use std::collections::BTreeMap;
use std::fmt;

use crate::requirements::{canonical_unification, permutation_exists, ArgSpec, Requirement};

/// A category: part symbol, features and the unsatisfied valence.
///
/// The derived ordering (part name, then features sorted by name, then
/// subcat) is the canonical order used to normalize argument
/// specifications and requirements.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Cat {
    pub part: String,
    pub feats: BTreeMap<String, String>,
    pub subcat: Requirement,
}

impl Cat {
    /// A saturated category with no features.
    pub fn atom(part: impl Into<String>) -> Self {
        Cat {
            part: part.into(),
            feats: BTreeMap::new(),
            subcat: Requirement::empty(),
        }
    }

    pub fn with_feat(mut self, name: impl Into<String>, value: impl Into<String>) -> Self {
        self.feats.insert(name.into(), value.into());
        self
    }

    pub fn with_subcat(mut self, subcat: Requirement) -> Self {
        self.subcat = subcat;
        self
    }

    /// True when the category bears no unsatisfied requirement.
    pub fn is_saturated(&self) -> bool {
        self.subcat.is_empty()
    }

    /// Nesting depth of subcat requirements (`NP` is 0, `Inf{NP}` is 1).
    pub fn depth(&self) -> usize {
        self.subcat
            .specs()
            .iter()
            .flat_map(|spec| spec.disjuncts())
            .map(|cat| cat.depth() + 1)
            .max()
            .unwrap_or(0)
    }
}

/// Unifies two categories.
///
/// Succeeds iff the parts are identical, the feature maps do not conflict
/// and the subcats are compatible under requirement unification. Requirement
/// unification is ambiguous in general; the subcat kept is its most general
/// outcome (least in canonical order among equally general ones), which makes
/// this a function that does not depend on argument order.
pub fn unify_cat(s: &Cat, t: &Cat) -> Option<Cat> {
    if s.part != t.part {
        return None;
    }
    let mut feats = s.feats.clone();
    for (name, value) in &t.feats {
        match feats.get(name) {
            Some(existing) if existing != value => return None,
            Some(_) => {}
            None => {
                feats.insert(name.clone(), value.clone());
            }
        }
    }
    let subcat = if s.subcat.is_empty() && t.subcat.is_empty() {
        Requirement::empty()
    } else {
        canonical_unification(&s.subcat, &t.subcat)?
    };
    Some(Cat {
        part: s.part.clone(),
        feats,
        subcat,
    })
}

/// True iff every constraint of `s` is entailed by `t`.
pub fn subsumes(s: &Cat, t: &Cat) -> bool {
    if s.part != t.part {
        return false;
    }
    if !s
        .feats
        .iter()
        .all(|(name, value)| t.feats.get(name) == Some(value))
    {
        return false;
    }
    requirement_subsumes(&s.subcat, &t.subcat)
}

/// Some pairing of equal-size requirements has each specification of
/// `general` subsuming its partner in `specific`.
pub fn requirement_subsumes(general: &Requirement, specific: &Requirement) -> bool {
    let (p, q) = (general.specs(), specific.specs());
    p.len() == q.len() && permutation_exists(p.len(), |i, j| argspec_subsumes(&p[i], &q[j]))
}

/// An argument specification subsumes another when each disjunct of the
/// more specific one is subsumed by some disjunct of the more general one.
pub fn argspec_subsumes(general: &ArgSpec, specific: &ArgSpec) -> bool {
    specific
        .disjuncts()
        .iter()
        .all(|t| general.disjuncts().iter().any(|s| subsumes(s, t)))
}

impl fmt::Display for Cat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.part)?;
        if !self.feats.is_empty() {
            f.write_str("[")?;
            for (i, (name, value)) in self.feats.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{name}={value}")?;
            }
            f.write_str("]")?;
        }
        if !self.subcat.is_empty() {
            write!(f, "{}", self.subcat)?;
        }
        Ok(())
    }
}
