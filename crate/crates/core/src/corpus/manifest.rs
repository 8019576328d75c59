use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

/// One manifest row.
#[derive(Clone, Debug, Deserialize, Serialize, PartialEq, Eq)]
pub struct CorpusItem {
    pub name: String,
    /// Corpus file (without extension) that declares the item.
    pub file: String,
    pub tier: u8,
    /// Short description of the result the item formalizes.
    pub anchor: String,
    #[serde(default)]
    pub expected_axioms: BTreeSet<String>,
}

#[derive(Clone, Debug, Deserialize, Serialize)]
pub struct Manifest {
    #[serde(rename = "item")]
    pub items: Vec<CorpusItem>,
}

#[derive(Debug, thiserror::Error)]
pub enum ManifestError {
    #[error("manifest is not valid TOML: {0}")]
    Toml(#[from] toml::de::Error),
    #[error("item `{0}` has tier {1}; tiers run from 1 to 4")]
    BadTier(String, u8),
    #[error("item `{0}` lists unknown axiom `{1}`")]
    BadAxiom(String, String),
    #[error("item `{0}` appears twice")]
    Duplicate(String),
}

const KNOWN_AXIOMS: &[&str] = &["funext", "univalence", "squash"];

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest, ManifestError> {
        let m: Manifest = toml::from_str(text)?;
        let mut seen = BTreeSet::new();
        for it in &m.items {
            if !(1..=4).contains(&it.tier) {
                return Err(ManifestError::BadTier(it.name.clone(), it.tier));
            }
            if let Some(a) = it.expected_axioms.iter().find(|a| !KNOWN_AXIOMS.contains(&a.as_str())) {
                return Err(ManifestError::BadAxiom(it.name.clone(), a.clone()));
            }
            if !seen.insert(it.name.clone()) {
                return Err(ManifestError::Duplicate(it.name.clone()));
            }
        }
        Ok(m)
    }
}
