//! Term normalization.
//!
//! Element sharing between frames is decided on normalized tokens: the text is
//! case-folded, trimmed, internal whitespace is collapsed to single spaces, and
//! the result is replaced by its canonical form from an alias table.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Alias table mapping terms to their canonical form.
///
/// Keys and values are stored normalized (without alias substitution). Chains
/// (`a -> b -> c`) are followed; cycles are rejected by [`Aliases::new`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "BTreeMap<String, String>", into = "BTreeMap<String, String>")]
pub struct Aliases {
    map: BTreeMap<String, String>,
    raw: BTreeMap<String, String>,
}

/// An alias table that loops back on itself.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("alias cycle through {0:?}")]
pub struct AliasCycle(pub String);

impl Aliases {
    pub fn new(raw: BTreeMap<String, String>) -> Result<Self, AliasCycle> {
        let mut map = BTreeMap::new();
        for (k, v) in &raw {
            let (k, v) = (fold(k), fold(v));
            if !k.is_empty() && k != v {
                map.insert(k, v);
            }
        }
        for start in map.keys() {
            let mut cur = start;
            for _ in 0..=map.len() {
                match map.get(cur) {
                    Some(next) => cur = next,
                    None => break,
                }
            }
            if map.contains_key(cur) {
                return Err(AliasCycle(start.clone()));
            }
        }
        Ok(Self { map, raw })
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Normalizes `text` and resolves it through the alias chain.
    pub fn normalize(&self, text: &str) -> String {
        let mut cur = fold(text);
        // acyclic by construction, so a chain is at most `len` long
        for _ in 0..self.map.len() {
            match self.map.get(&cur) {
                Some(next) => cur = next.clone(),
                None => break,
            }
        }
        cur
    }
}

impl TryFrom<BTreeMap<String, String>> for Aliases {
    type Error = AliasCycle;

    fn try_from(raw: BTreeMap<String, String>) -> Result<Self, Self::Error> {
        Aliases::new(raw)
    }
}

impl From<Aliases> for BTreeMap<String, String> {
    fn from(a: Aliases) -> Self {
        a.raw
    }
}

/// Case-fold, trim and collapse whitespace.
pub fn fold(text: &str) -> String {
    text.split_whitespace()
        .map(str::to_lowercase)
        .collect::<Vec<_>>()
        .join(" ")
}

/// Normalizes a term against an alias table. Idempotent.
pub fn normalize_term(text: &str, aliases: &Aliases) -> String {
    aliases.normalize(text)
}

/// Splits a list written in prose ("Systemic, historical, teleological",
/// "Linguistic and systemic") into its trimmed items.
pub fn split_term_list(text: &str) -> Vec<String> {
    text.split(',')
        .flat_map(|part| part.split(" and "))
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}
