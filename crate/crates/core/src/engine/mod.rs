//! Argument construction and evaluation for a problem frame.
//!
//! [`analyze`] runs the whole pipeline: prior-case and canon-based arguments
//! are synthesized, critical questions are raised against every prior-case
//! argument, rebuttals are derived from conflicting conclusions and filtered
//! by the active second-order directive, and the result is labelled under
//! grounded semantics.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

mod argument;
mod critical;
pub mod export;
mod framework;
pub mod semantics;
mod synthesis;

pub use argument::{Argument, ArgumentId, ArgumentKind, Attack, AttackType, Conclusion, CqTag};
pub use critical::{
    auto_critical_attacks, counterexample_search, difference_report, directive_conflict_attacks, is_obsolete,
    is_recent, CriticalAttacks, DifferenceReport,
};
pub use framework::{
    build_framework, conflicting_conclusions, directive_preference, undercuts, ArgumentationFramework, Preference,
};
pub use semantics::{Label, PREFERRED_CAP};
pub use synthesis::{case_items, instantiate_canon_argument, shared_elements, synthesize_arguments, CaseItem, Fill};

use crate::case_base::CaseBase;
use crate::frame::{DirectiveSpec, Polarity};
use crate::problem::ProblemFrame;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EngineError {
    #[error("missing {0}")]
    MissingInput(&'static str),
    #[error("attack {attacker} -> {target} refers to an unknown argument")]
    DanglingAttack { attacker: ArgumentId, target: ArgumentId },
    #[error("{arguments} arguments exceed the enumeration cap of {cap}")]
    CapExceeded { arguments: usize, cap: usize },
}

/// Session state that the engine folds into a fresh analysis.
#[derive(Debug, Clone, Default)]
pub struct Extras {
    /// Arguments kept after their conclusion was transferred into the problem.
    pub retained: Vec<Argument>,
    /// User-asserted attacker nodes with their attack.
    pub manual: Vec<(Argument, Attack)>,
    /// Arguments whose preference advantage and procedural exclusion are lifted.
    pub overrides: BTreeSet<ArgumentId>,
    /// Transfer argument that supplied the problem's directive.
    pub directive_support: Option<ArgumentId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Analysis {
    pub framework: ArgumentationFramework,
    pub notes: Vec<String>,
    pub difference_reports: Vec<DifferenceReport>,
    pub active_directive: Option<DirectiveSpec>,
    /// True when the directive taken from a transfer was dropped because its
    /// supporting argument is no longer IN.
    pub directive_reverted: bool,
}

fn push_unique(args: &mut Vec<Argument>, seen: &mut BTreeSet<ArgumentId>, a: Argument) {
    if seen.insert(a.id.clone()) {
        args.push(a);
    }
}

/// Builds and labels the framework for `p` against `base`.
pub fn analyze(p: &ProblemFrame, base: &CaseBase, extras: &Extras) -> Result<Analysis, EngineError> {
    let aliases = base.aliases();
    let mut seen = BTreeSet::new();
    let mut args = Vec::new();
    for a in synthesize_arguments(p, base) {
        push_unique(&mut args, &mut seen, a);
    }
    for a in &extras.retained {
        push_unique(&mut args, &mut seen, a.clone());
    }
    if let (Some(i), Some(d)) = (&p.interpretandum, &p.document) {
        for c in &p.candidates {
            let a = synthesis::canon_argument(aliases, &i.expression, &d.to_string(), &c.interpretans, &c.canon, c.polarity)?;
            push_unique(&mut args, &mut seen, a);
        }
    }

    let mut attacks = Vec::new();
    let mut notes = Vec::new();
    let mut attackers = Vec::new();
    for a in args.iter().filter(|a| a.is_prior_case()) {
        let mut found = auto_critical_attacks(a, p, base);
        found.extend(counterexample_search(a, p, base));
        for n in found.notes {
            if !notes.contains(&n) {
                notes.push(n);
            }
        }
        attackers.extend(found.attackers);
    }
    attacks.extend(directive_conflict_attacks(&args, p, base));
    for (node, attack) in attackers {
        if seen.insert(node.id.clone()) {
            args.push(node);
            attacks.push(attack);
        }
    }
    for (node, attack) in &extras.manual {
        push_unique(&mut args, &mut seen, node.clone());
        if seen.contains(&attack.target) {
            attacks.push(attack.clone());
        }
    }

    let mut difference_reports = Vec::new();
    let mut cited = BTreeSet::new();
    for a in args.iter().filter(|a| a.is_prior_case()) {
        let Some(id) = a.cited_case_id.as_deref() else { continue };
        if cited.insert(id.to_string()) {
            if let Some(c) = base.get(id) {
                difference_reports.push(difference_report(c, p, aliases));
            }
        }
    }

    let mut active = p.second_order.clone();
    let mut framework = build_framework(args.clone(), attacks.clone(), active.as_ref(), &extras.overrides)?;
    let mut directive_reverted = false;
    if let Some(support) = &extras.directive_support {
        if active.is_some() && framework.label(support) == Some(Label::Out) {
            active = None;
            directive_reverted = true;
            framework = build_framework(args, attacks, None, &extras.overrides)?;
            notes.push(format!("directive taken from {support} is no longer supported and was set aside"));
        }
    }

    Ok(Analysis {
        framework,
        notes,
        difference_reports,
        active_directive: active,
        directive_reverted,
    })
}

/// Positive prior-case arguments currently labelled IN.
pub fn transferable(analysis: &Analysis) -> impl Iterator<Item = &Argument> {
    analysis
        .framework
        .arguments
        .iter()
        .filter(|a| a.is_prior_case() && a.polarity == Polarity::Positive)
        .filter(|a| analysis.framework.label(&a.id) == Some(Label::In))
}
