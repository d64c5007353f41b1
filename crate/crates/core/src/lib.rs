//! Unification-based parsing of coordination through subcategorization.
//!
//! Heads list their arguments as multisets of disjunctive specifications.
//! Coordinated constituents, including unlike categories and tuples of
//! several arguments, are accepted whenever the head's requirement can be
//! satisfied by each conjunct. The conjunction heads the coordinate
//! structure and passes on whatever requirement its conjuncts share.

pub mod categories;
pub mod cli;
pub mod lexicon;
pub mod parser;
pub mod requirements;
pub mod satisfaction;
