//! Lexicon loading, the optional adjunct lexical rule, and the coordination
//! entry for conjunctions.
//!
//! The text format is line oriented, with `#` comments:
//!
//! ```text
//! part NP PP Compl Inf V S Conj
//! feature prep = a | de | pour
//! conj "et"
//! adjunct V { NP[temp=yes] | Adv }
//! entry "sais" : V { NP | Compl }
//! ```
//!
//! Declarations must precede their use. Adjunct rules are expanded
//! statically: every entry whose part has registered adjuncts is kept and
//! joined by one variant per nonempty subset of those adjuncts.

mod coordination;
pub mod syntax;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use thiserror::Error;

pub use coordination::{instantiate_coordination, Conjunct};

use crate::categories::Cat;
use crate::requirements::{ArgSpec, MAX_ARITY};
use syntax::{Cursor, SyntaxError};

/// Part assigned to conjunction tokens.
pub const CONJ_PART: &str = "Conj";

const BUNDLED_LEXICON: &str = include_str!("../../data/french.lex");

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct LexiconError {
    pub line: usize,
    pub kind: LexiconErrorKind,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LexiconErrorKind {
    #[error("{0}")]
    Syntax(#[from] SyntaxError),
    #[error("unknown directive '{0}'")]
    UnknownDirective(String),
    #[error("unknown part '{0}'")]
    UnknownPart(String),
    #[error("unknown feature '{0}'")]
    UnknownFeature(String),
    #[error("value '{value}' is not declared for feature '{feature}'")]
    UnknownValue { feature: String, value: String },
    #[error("part '{0}' declared twice")]
    DuplicatePart(String),
    #[error("feature '{0}' declared twice")]
    DuplicateFeature(String),
    #[error("feature '{0}' declares no values")]
    NoValues(String),
    #[error("requirement of arity {0} exceeds the limit of {MAX_ARITY}")]
    ArityTooLarge(usize),
    #[error("subcategorization nested more than one level deep")]
    TooDeep,
    #[error("empty phonology")]
    EmptyPhon,
    #[error("conjunctions need the part '{CONJ_PART}' to be declared")]
    NoConjPart,
}

/// A lexical entry: a token sequence and its category.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LexEntry {
    pub phon: Vec<String>,
    pub cat: Cat,
}

impl LexEntry {
    /// Builds an entry from raw text, normalizing tokens to lowercase.
    pub fn new(phon: &str, cat: Cat) -> Self {
        LexEntry {
            phon: normalize(phon),
            cat,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    parts: Vec<String>,
    features: BTreeMap<String, Vec<String>>,
    feature_order: Vec<String>,
    conjunctions: BTreeSet<String>,
    adjuncts: Vec<(String, ArgSpec)>,
    base_entries: Vec<LexEntry>,
    entries: BTreeMap<Vec<String>, Vec<LexEntry>>,
    max_phon_len: usize,
}

fn normalize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_lowercase).collect()
}

/// Parses and validates a lexicon.
pub fn load_lexicon(text: &str) -> Result<Lexicon, LexiconError> {
    let mut lex = Lexicon::default();
    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or_default().trim();
        if content.is_empty() {
            continue;
        }
        lex.directive(content)
            .map_err(|kind| LexiconError { line, kind })?;
    }
    Ok(lex)
}

/// The bundled French lexicon.
pub fn bundled_lexicon() -> Lexicon {
    load_lexicon(BUNDLED_LEXICON).expect("bundled lexicon is valid")
}

/// Source text of the bundled lexicon.
pub fn bundled_lexicon_text() -> &'static str {
    BUNDLED_LEXICON
}

/// All entries whose phonology equals `tokens` after lowercasing.
pub fn lookup(lex: &Lexicon, tokens: &[&str]) -> Vec<LexEntry> {
    let key: Vec<String> = tokens.iter().map(|t| t.to_lowercase()).collect();
    let mut found = Vec::new();
    if let [token] = key.as_slice() {
        if lex.conjunctions.contains(token) {
            found.push(LexEntry {
                phon: key.clone(),
                cat: Cat::atom(CONJ_PART),
            });
        }
    }
    if let Some(entries) = lex.entries.get(&key) {
        found.extend(entries.iter().cloned());
    }
    found
}

/// The entry extended with one more occurrence of the adjunct
/// specification in its subcat.
pub fn apply_adjunct_rule(e: &LexEntry, a: &ArgSpec) -> LexEntry {
    LexEntry {
        phon: e.phon.clone(),
        cat: e.cat.clone().with_subcat(e.cat.subcat.with(a.clone())),
    }
}

impl Lexicon {
    pub fn parts(&self) -> &[String] {
        &self.parts
    }

    /// Declared features and their values, in declaration order.
    pub fn features(&self) -> impl Iterator<Item = (&str, &[String])> {
        self.feature_order
            .iter()
            .map(|name| (name.as_str(), self.features[name].as_slice()))
    }

    pub fn conjunctions(&self) -> &BTreeSet<String> {
        &self.conjunctions
    }

    pub fn is_conjunction(&self, token: &str) -> bool {
        self.conjunctions.contains(token)
    }

    /// Registered adjunct rules as (head part, specification).
    pub fn adjuncts(&self) -> &[(String, ArgSpec)] {
        &self.adjuncts
    }

    /// Entries as written, before adjunct expansion.
    pub fn base_entries(&self) -> &[LexEntry] {
        &self.base_entries
    }

    /// Every entry after adjunct expansion.
    pub fn entries(&self) -> impl Iterator<Item = &LexEntry> {
        self.entries.values().flatten()
    }

    /// Longest phonology, in tokens, among entries and conjunctions.
    pub fn max_phon_len(&self) -> usize {
        self.max_phon_len
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
            && self.features.is_empty()
            && self.base_entries.is_empty()
            && self.conjunctions.is_empty()
    }

    /// Serializes the lexicon back to its text format.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if !self.parts.is_empty() {
            let _ = writeln!(out, "part {}", self.parts.join(" "));
        }
        for (name, values) in self.features() {
            let _ = writeln!(out, "feature {name} = {}", values.join(" | "));
        }
        for conj in &self.conjunctions {
            let _ = writeln!(out, "conj \"{conj}\"");
        }
        for (part, spec) in &self.adjuncts {
            let _ = writeln!(out, "adjunct {part} {{ {spec} }}");
        }
        for entry in &self.base_entries {
            let _ = writeln!(out, "entry \"{}\" : {}", entry.phon.join(" "), entry.cat);
        }
        out
    }

    fn directive(&mut self, content: &str) -> Result<(), LexiconErrorKind> {
        let mut cursor = Cursor::new(content);
        let keyword = cursor.ident("a directive")?;
        match keyword.as_str() {
            "part" => {
                let names = cursor.rest();
                for name in names.split_whitespace() {
                    if self.parts.iter().any(|p| p == name) {
                        return Err(LexiconErrorKind::DuplicatePart(name.to_string()));
                    }
                    self.parts.push(name.to_string());
                }
                Ok(())
            }
            "feature" => {
                let name = cursor.ident("a feature name")?;
                cursor.expect('=')?;
                let values: Vec<String> = cursor
                    .rest()
                    .split('|')
                    .map(|v| v.trim().to_string())
                    .filter(|v| !v.is_empty())
                    .collect();
                if values.is_empty() {
                    return Err(LexiconErrorKind::NoValues(name));
                }
                if self.features.contains_key(&name) {
                    return Err(LexiconErrorKind::DuplicateFeature(name));
                }
                self.feature_order.push(name.clone());
                self.features.insert(name, values);
                Ok(())
            }
            "conj" => {
                let token = cursor.quoted()?;
                cursor.finish()?;
                if !self.parts.iter().any(|p| p == CONJ_PART) {
                    return Err(LexiconErrorKind::NoConjPart);
                }
                let phon = normalize(&token);
                let [token] =
                    <[String; 1]>::try_from(phon).map_err(|_| LexiconErrorKind::EmptyPhon)?;
                self.max_phon_len = self.max_phon_len.max(1);
                self.conjunctions.insert(token);
                Ok(())
            }
            "adjunct" => {
                let part = cursor.ident("a part name")?;
                self.check_part(&part)?;
                cursor.expect('{')?;
                let spec = cursor.argspec()?;
                cursor.expect('}')?;
                cursor.finish()?;
                for cat in spec.disjuncts() {
                    self.check_cat(cat, 1)?;
                }
                self.adjuncts.push((part, spec));
                self.reexpand()
            }
            "entry" => {
                let phon = cursor.quoted()?;
                cursor.expect(':')?;
                let cat = cursor.cat()?;
                cursor.finish()?;
                self.check_cat(&cat, 2)?;
                let entry = LexEntry::new(&phon, cat);
                if entry.phon.is_empty() {
                    return Err(LexiconErrorKind::EmptyPhon);
                }
                let expanded = self.expand(&entry)?;
                self.max_phon_len = self.max_phon_len.max(entry.phon.len());
                self.entries
                    .entry(entry.phon.clone())
                    .or_default()
                    .extend(expanded);
                self.base_entries.push(entry);
                Ok(())
            }
            other => Err(LexiconErrorKind::UnknownDirective(other.to_string())),
        }
    }

    fn check_part(&self, part: &str) -> Result<(), LexiconErrorKind> {
        if self.parts.iter().any(|p| p == part) {
            Ok(())
        } else {
            Err(LexiconErrorKind::UnknownPart(part.to_string()))
        }
    }

    /// Validates parts, features, arity and nesting of a category whose
    /// subcat may nest at most `max_depth` levels.
    fn check_cat(&self, cat: &Cat, max_depth: usize) -> Result<(), LexiconErrorKind> {
        self.check_part(&cat.part)?;
        for (name, value) in &cat.feats {
            let values = self
                .features
                .get(name)
                .ok_or_else(|| LexiconErrorKind::UnknownFeature(name.clone()))?;
            if !values.contains(value) {
                return Err(LexiconErrorKind::UnknownValue {
                    feature: name.clone(),
                    value: value.clone(),
                });
            }
        }
        if cat.subcat.len() > MAX_ARITY {
            return Err(LexiconErrorKind::ArityTooLarge(cat.subcat.len()));
        }
        if cat.is_saturated() {
            return Ok(());
        }
        if max_depth == 0 {
            return Err(LexiconErrorKind::TooDeep);
        }
        for spec in cat.subcat.specs() {
            for inner in spec.disjuncts() {
                self.check_cat(inner, max_depth - 1)?;
            }
        }
        Ok(())
    }

    /// The entry and its variants under every nonempty subset of the
    /// adjunct rules registered for its part.
    fn expand(&self, entry: &LexEntry) -> Result<Vec<LexEntry>, LexiconErrorKind> {
        let rules: Vec<&ArgSpec> = self
            .adjuncts
            .iter()
            .filter(|(part, _)| *part == entry.cat.part)
            .map(|(_, spec)| spec)
            .collect();
        let mut variants = vec![entry.clone()];
        for rule in rules {
            let extended: Vec<LexEntry> = variants
                .iter()
                .map(|v| apply_adjunct_rule(v, rule))
                .collect();
            variants.extend(extended);
        }
        match variants.iter().map(|v| v.cat.subcat.len()).max() {
            Some(arity) if arity > MAX_ARITY => Err(LexiconErrorKind::ArityTooLarge(arity)),
            _ => Ok(variants),
        }
    }

    fn reexpand(&mut self) -> Result<(), LexiconErrorKind> {
        let mut entries: BTreeMap<Vec<String>, Vec<LexEntry>> = BTreeMap::new();
        for entry in &self.base_entries {
            entries
                .entry(entry.phon.clone())
                .or_default()
                .extend(self.expand(entry)?);
        }
        self.entries = entries;
        Ok(())
    }
}
