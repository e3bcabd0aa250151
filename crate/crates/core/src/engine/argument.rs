use std::fmt;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::frame::{Canon, Polarity, Slot, SlotElementRef};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArgumentId(pub String);

impl ArgumentId {
    /// Short content hash of `parts` under `prefix`, e.g. `pc-3f2a9c01b7de`.
    pub fn derive(prefix: &str, parts: &[&str]) -> Self {
        let mut h = Sha256::new();
        for p in parts {
            h.update(p.as_bytes());
            h.update([0x1f]);
        }
        let digest = h.finalize();
        let hex: String = digest[..6].iter().map(|b| format!("{b:02x}")).collect();
        Self(format!("{prefix}-{hex}"))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for ArgumentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for ArgumentId {
    fn from(s: &str) -> Self {
        Self(s.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ArgumentKind {
    PriorCase,
    CanonBased,
    CqAttacker,
}

/// Critical questions of the appeal-to-a-prior-case scheme.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CqTag {
    Cq1,
    Cq2,
    Cq2a,
    Cq2b,
    Cq2c,
    Cq3,
    Cq4,
    Cq5a,
    Cq5b,
    Cq6,
    Cq7,
    Cq8,
}

impl CqTag {
    pub const ALL: [CqTag; 12] = [
        Self::Cq1,
        Self::Cq2,
        Self::Cq2a,
        Self::Cq2b,
        Self::Cq2c,
        Self::Cq3,
        Self::Cq4,
        Self::Cq5a,
        Self::Cq5b,
        Self::Cq6,
        Self::Cq7,
        Self::Cq8,
    ];

    /// CQ1 and CQ2 need a human judgment and are never generated.
    pub fn is_manual_only(self) -> bool {
        matches!(self, Self::Cq1 | Self::Cq2)
    }

    pub fn question(self) -> &'static str {
        match self {
            Self::Cq1 => "Is a feature shared by the cited case and the problem actually relevant?",
            Self::Cq2 => "What are the differences between the cited case and the problem?",
            Self::Cq2a => "Does the interpretandum belong to the same branch of law?",
            Self::Cq2b => "Is the interpretandum part of a provision of the same type?",
            Self::Cq2c => "Is the provision directed to reach the same goal?",
            Self::Cq3 => "Is there a case sharing more features with the problem that lacks the transferred element?",
            Self::Cq4 => "Given its jurisdiction, should the cited case have any relevance?",
            Self::Cq5a => "Is the cited case too old to be relevant?",
            Self::Cq5b => "Is the cited case too recent to be well established?",
            Self::Cq6 => "Was the cited case decided by a court lower than the deciding court?",
            Self::Cq7 => "Do procedural considerations such as non-finality weaken the cited case?",
            Self::Cq8 => "Do similar cases use a different second-order rule?",
        }
    }
}

impl fmt::Display for CqTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Cq1 => "CQ1",
            Self::Cq2 => "CQ2",
            Self::Cq2a => "CQ2a",
            Self::Cq2b => "CQ2b",
            Self::Cq2c => "CQ2c",
            Self::Cq3 => "CQ3",
            Self::Cq4 => "CQ4",
            Self::Cq5a => "CQ5a",
            Self::Cq5b => "CQ5b",
            Self::Cq6 => "CQ6",
            Self::Cq7 => "CQ7",
            Self::Cq8 => "CQ8",
        };
        f.write_str(s)
    }
}

/// What an argument claims. `value` is normalized; `display` keeps the
/// original wording.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Conclusion {
    pub target_slot: Option<Slot>,
    pub value: String,
    pub polarity: Polarity,
    /// For interpretans conclusions: the interpretandum they are about.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpretandum: Option<String>,
    pub display: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Argument {
    pub id: ArgumentId,
    pub kind: ArgumentKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cited_case_id: Option<String>,
    /// First shared element; the full set is in `shared`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<SlotElementRef>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub shared: Vec<SlotElementRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<SlotElementRef>,
    pub polarity: Polarity,
    pub conclusion: Conclusion,
    #[serde(default)]
    pub canons: Vec<Canon>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cq: Option<CqTag>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ArgumentId>,
    pub rationale: String,
}

impl Argument {
    pub fn is_prior_case(&self) -> bool {
        self.kind == ArgumentKind::PriorCase
    }

    /// Short human label used in graph renderings.
    pub fn label(&self) -> String {
        match self.kind {
            ArgumentKind::PriorCase => {
                let sign = match self.polarity {
                    Polarity::Positive => "+",
                    Polarity::Negative => "-",
                };
                format!(
                    "{} {} {}: {}",
                    self.cited_case_id.as_deref().unwrap_or("?"),
                    sign,
                    self.conclusion.target_slot.map(|s| s.name()).unwrap_or(""),
                    shorten(&self.conclusion.display, 60)
                )
            }
            ArgumentKind::CanonBased => {
                let canon = self.canons.first().map(|c| c.class.tag()).unwrap_or("");
                let not = if self.polarity == Polarity::Negative { "not " } else { "" };
                format!("{canon}: {not}{}", shorten(&self.conclusion.display, 60))
            }
            ArgumentKind::CqAttacker => {
                let tag = self.cq.map(|t| t.to_string()).unwrap_or_default();
                match &self.cited_case_id {
                    Some(c) => format!("{tag} ({c})"),
                    None => tag,
                }
            }
        }
    }
}

fn shorten(s: &str, max: usize) -> String {
    match s.char_indices().nth(max) {
        Some((cut, _)) => format!("{}...", s[..cut].trim_end()),
        None => s.to_string(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AttackType {
    Rebuttal,
    Undercut,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Attack {
    pub attacker: ArgumentId,
    pub target: ArgumentId,
    #[serde(rename = "type")]
    pub kind: AttackType,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cq: Option<CqTag>,
    /// Generated by the engine rather than asserted by a user.
    pub auto: bool,
}

impl Attack {
    pub fn undercut(attacker: ArgumentId, target: ArgumentId, cq: CqTag, auto: bool) -> Self {
        Self {
            attacker,
            target,
            kind: AttackType::Undercut,
            cq: Some(cq),
            auto,
        }
    }

    pub fn rebuttal(attacker: ArgumentId, target: ArgumentId) -> Self {
        Self {
            attacker,
            target,
            kind: AttackType::Rebuttal,
            cq: None,
            auto: true,
        }
    }
}
