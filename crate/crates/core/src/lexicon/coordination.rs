//! The conjunction as head of the coordinate structure.
//!
//! The conjunction takes a left and a right conjunct of the same arity
//! (`<C1..CM>` and `<C'1..C'M>`), each possibly unsaturated in its last
//! element, plus the unification of their open requirements. That schema
//! is unbounded in M, so it is realized here as an operation rather than a
//! stored entry.

use crate::requirements::{unify_requirement, Requirement};
use crate::satisfaction::{CoordSig, Tuple};

/// One side of a coordination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Conjunct {
    /// A tuple and the requirement its last element leaves open.
    Tuple { tuple: Tuple, residual: Requirement },
    /// An existing coordination, whose tuples are re-associated into the
    /// new one.
    Coord(CoordSig),
}

impl Conjunct {
    pub fn tuple(tuple: Tuple) -> Self {
        let residual = tuple.residual();
        Conjunct::Tuple { tuple, residual }
    }

    pub fn arity(&self) -> usize {
        match self {
            Conjunct::Tuple { tuple, .. } => tuple.arity(),
            Conjunct::Coord(sig) => sig.arity(),
        }
    }

    pub fn residual(&self) -> &Requirement {
        match self {
            Conjunct::Tuple { residual, .. } => residual,
            Conjunct::Coord(sig) => sig.residual(),
        }
    }

    fn tuples(&self) -> Vec<Tuple> {
        match self {
            Conjunct::Tuple { tuple, .. } => vec![tuple.clone()],
            Conjunct::Coord(sig) => sig.tuples().to_vec(),
        }
    }
}

/// Coordinates two conjuncts.
///
/// Succeeds only for equal arities and compatible open requirements (which
/// includes equal valence). Yields one coordination per distinct
/// unification of the two open requirements; the coordination inherits it.
pub fn instantiate_coordination(left: &Conjunct, right: &Conjunct) -> Vec<CoordSig> {
    if left.arity() != right.arity() {
        return Vec::new();
    }
    let tuples: Vec<Tuple> = left.tuples().into_iter().chain(right.tuples()).collect();
    unify_requirement(left.residual(), right.residual())
        .into_iter()
        .map(|residual| CoordSig::new(tuples.clone(), residual).expect("arities were checked"))
        .collect()
}
