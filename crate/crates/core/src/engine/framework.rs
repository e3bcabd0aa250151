//! Turning arguments and candidate attacks into a labelled framework.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::frame::{DirectiveSpec, Polarity, Slot};

use super::argument::{Argument, ArgumentId, ArgumentKind, Attack, AttackType};
use super::semantics::{self, Label};
use super::EngineError;

/// True when `a` and `b` cannot both be accepted.
pub fn conflicting_conclusions(a: &Argument, b: &Argument) -> bool {
    let (ca, cb) = (&a.conclusion, &b.conclusion);
    if ca.target_slot.is_none() || ca.target_slot != cb.target_slot {
        return false;
    }
    if ca.target_slot == Some(Slot::Interpretans) && ca.interpretandum != cb.interpretandum {
        return false;
    }
    if ca.value == cb.value {
        return ca.polarity != cb.polarity;
    }
    ca.target_slot == Some(Slot::Interpretans)
        && ca.interpretandum.is_some()
        && ca.polarity == Polarity::Positive
        && cb.polarity == Polarity::Positive
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Preference {
    APreferred,
    BPreferred,
    NoPreference,
}

/// Earliest tier holding any canon class of `arg`.
fn tier(active: &DirectiveSpec, arg: &Argument) -> Option<usize> {
    arg.canons.iter().filter_map(|c| active.tier_of(c.class)).min()
}

/// Compares two arguments under the tiers of a directive of preference.
/// An argument whose canons sit in no tier loses to one that has a tier.
pub fn directive_preference(active: Option<&DirectiveSpec>, a: &Argument, b: &Argument) -> Preference {
    let Some(d) = active else {
        return Preference::NoPreference;
    };
    if d.tiers.is_empty() || !d.kind.states_preference() {
        return Preference::NoPreference;
    }
    match (tier(d, a), tier(d, b)) {
        (Some(x), Some(y)) if x < y => Preference::APreferred,
        (Some(x), Some(y)) if x > y => Preference::BPreferred,
        (Some(_), None) => Preference::APreferred,
        (None, Some(_)) => Preference::BPreferred,
        _ => Preference::NoPreference,
    }
}

/// Canon-based arguments a directive of procedure excludes: those whose
/// earliest tier comes after the first tier that produced any argument.
fn procedure_exclusions(args: &[Argument], active: Option<&DirectiveSpec>) -> BTreeSet<ArgumentId> {
    let Some(d) = active.filter(|d| d.kind.orders_procedure() && !d.tiers.is_empty()) else {
        return BTreeSet::new();
    };
    let canon_args: Vec<(&Argument, Option<usize>)> = args
        .iter()
        .filter(|a| a.kind == ArgumentKind::CanonBased)
        .map(|a| (a, tier(d, a)))
        .collect();
    let Some(first) = canon_args.iter().filter_map(|(_, t)| *t).min() else {
        return BTreeSet::new();
    };
    canon_args
        .into_iter()
        .filter(|(_, t)| t.is_some_and(|t| t > first))
        .map(|(a, _)| a.id.clone())
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArgumentationFramework {
    pub arguments: Vec<Argument>,
    pub defeats: Vec<Attack>,
    /// Canon-based arguments removed by a directive of procedure.
    pub excluded: Vec<Argument>,
    /// Rebuttals dropped because the target was preferred.
    pub suppressed: Vec<Attack>,
    pub labeling: BTreeMap<ArgumentId, Label>,
}

impl ArgumentationFramework {
    pub fn get(&self, id: &ArgumentId) -> Option<&Argument> {
        self.arguments.iter().find(|a| &a.id == id)
    }

    pub fn label(&self, id: &ArgumentId) -> Option<Label> {
        self.labeling.get(id).copied()
    }

    fn edges(&self) -> Vec<(usize, usize)> {
        let index: BTreeMap<&ArgumentId, usize> = self.arguments.iter().enumerate().map(|(i, a)| (&a.id, i)).collect();
        self.defeats.iter().map(|d| (index[&d.attacker], index[&d.target])).collect()
    }

    pub fn grounded_labeling(&self) -> BTreeMap<ArgumentId, Label> {
        let labels = semantics::grounded(self.arguments.len(), &self.edges());
        self.arguments.iter().map(|a| a.id.clone()).zip(labels).collect()
    }

    pub fn preferred_labelings(&self, cap: usize) -> Result<Vec<BTreeMap<ArgumentId, Label>>, EngineError> {
        let all = semantics::preferred(self.arguments.len(), &self.edges(), cap)?;
        Ok(all
            .into_iter()
            .map(|labels| self.arguments.iter().map(|a| a.id.clone()).zip(labels).collect())
            .collect())
    }
}

/// Assembles the framework: undercuts pass through untouched; rebuttals are
/// generated for every ordered pair of conflicting conclusions and dropped
/// when the directive prefers the target. `overrides` lift both the
/// preference won by an argument and its exclusion by procedure.
pub fn build_framework(
    args: Vec<Argument>,
    attacks: Vec<Attack>,
    active: Option<&DirectiveSpec>,
    overrides: &BTreeSet<ArgumentId>,
) -> Result<ArgumentationFramework, EngineError> {
    let ids: BTreeSet<&ArgumentId> = args.iter().map(|a| &a.id).collect();
    for a in &attacks {
        if !ids.contains(&a.attacker) || !ids.contains(&a.target) {
            return Err(EngineError::DanglingAttack {
                attacker: a.attacker.clone(),
                target: a.target.clone(),
            });
        }
    }

    let excluded_ids: BTreeSet<ArgumentId> = procedure_exclusions(&args, active)
        .into_iter()
        .filter(|id| !overrides.contains(id))
        .collect();
    let (excluded, arguments): (Vec<Argument>, Vec<Argument>) =
        args.into_iter().partition(|a| excluded_ids.contains(&a.id));

    let mut defeats: Vec<Attack> = attacks
        .into_iter()
        .filter(|a| !excluded_ids.contains(&a.attacker) && !excluded_ids.contains(&a.target))
        .filter(|a| a.attacker != a.target)
        .collect();
    let mut suppressed = Vec::new();
    let contestable: Vec<&Argument> = arguments.iter().filter(|a| a.kind != ArgumentKind::CqAttacker).collect();
    for a in &contestable {
        for b in &contestable {
            if a.id == b.id || !conflicting_conclusions(a, b) {
                continue;
            }
            let rebuttal = Attack::rebuttal(a.id.clone(), b.id.clone());
            let pref = match directive_preference(active, a, b) {
                Preference::BPreferred if overrides.contains(&b.id) => Preference::NoPreference,
                p => p,
            };
            if pref == Preference::BPreferred {
                suppressed.push(rebuttal);
            } else {
                defeats.push(rebuttal);
            }
        }
    }
    let order = |x: &Attack| (x.attacker.clone(), x.target.clone(), x.kind, x.cq);
    defeats.sort_by_key(order);
    defeats.dedup_by(|x, y| x.attacker == y.attacker && x.target == y.target && x.kind == y.kind && x.cq == y.cq);
    suppressed.sort_by_key(order);

    let mut af = ArgumentationFramework {
        arguments,
        defeats,
        excluded,
        suppressed,
        labeling: BTreeMap::new(),
    };
    af.labeling = af.grounded_labeling();
    Ok(af)
}

/// Undercut edges in `af`; preference never touches these.
pub fn undercuts(af: &ArgumentationFramework) -> impl Iterator<Item = &Attack> {
    af.defeats.iter().filter(|d| d.kind == AttackType::Undercut)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::argument::CqTag;
    use crate::engine::synthesis::instantiate_canon_argument;
    use crate::frame::{Canon, CanonClass, DirectiveKind};

    fn canon_arg(m: &str, class: CanonClass, polarity: Polarity) -> Argument {
        instantiate_canon_argument("important reasons", "Act", m, &Canon::new(class), polarity).unwrap()
    }

    fn linguistic_first(kind: DirectiveKind) -> DirectiveSpec {
        DirectiveSpec {
            kind,
            text: "literal wording first".into(),
            directive_class: Some("linguistic-priority-strict".into()),
            tiers: vec![
                vec![CanonClass::Linguistic],
                vec![CanonClass::Systemic, CanonClass::Teleological],
            ],
            override_condition: None,
            context: None,
        }
    }

    #[test]
    fn conflicts() {
        let a = canon_arg("documenting and recording", CanonClass::Systemic, Polarity::Positive);
        let b = canon_arg("incurring actual cost", CanonClass::Linguistic, Polarity::Positive);
        assert!(conflicting_conclusions(&a, &b));
        let n = canon_arg("documenting and recording", CanonClass::Linguistic, Polarity::Negative);
        assert!(conflicting_conclusions(&a, &n));
        let other = instantiate_canon_argument("other words", "Act", "x", &Canon::new(CanonClass::Linguistic), Polarity::Positive).unwrap();
        assert!(!conflicting_conclusions(&a, &other));
        // opposite polarity on different values is not a conflict
        assert!(!conflicting_conclusions(&b, &n));
    }

    #[test]
    fn preference_by_tier() {
        let d = linguistic_first(DirectiveKind::Both);
        let a = canon_arg("x", CanonClass::Linguistic, Polarity::Positive);
        let b = canon_arg("y", CanonClass::Teleological, Polarity::Positive);
        assert_eq!(directive_preference(Some(&d), &a, &b), Preference::APreferred);
        assert_eq!(directive_preference(Some(&d), &b, &a), Preference::BPreferred);
        assert_eq!(directive_preference(None, &a, &b), Preference::NoPreference);
        let holistic = DirectiveSpec { tiers: vec![], ..d };
        assert_eq!(directive_preference(Some(&holistic), &a, &b), Preference::NoPreference);
    }

    #[test]
    fn no_preference_gives_mutual_rebuttal() {
        let a = canon_arg("x", CanonClass::Linguistic, Polarity::Positive);
        let b = canon_arg("y", CanonClass::Teleological, Polarity::Positive);
        let af = build_framework(vec![a, b], vec![], None, &BTreeSet::new()).unwrap();
        assert_eq!(af.defeats.len(), 2);
        assert!(af.labeling.values().all(|l| *l == Label::Undec));
    }

    #[test]
    fn preference_keeps_one_rebuttal() {
        let d = linguistic_first(DirectiveKind::Preference);
        let a = canon_arg("x", CanonClass::Linguistic, Polarity::Positive);
        let b = canon_arg("y", CanonClass::Teleological, Polarity::Positive);
        let af = build_framework(vec![a.clone(), b.clone()], vec![], Some(&d), &BTreeSet::new()).unwrap();
        assert_eq!(af.defeats, vec![Attack::rebuttal(a.id.clone(), b.id.clone())]);
        assert_eq!(af.label(&a.id), Some(Label::In));
        assert_eq!(af.label(&b.id), Some(Label::Out));

        let overridden = build_framework(vec![a.clone(), b], vec![], Some(&d), &BTreeSet::from([a.id])).unwrap();
        assert_eq!(overridden.defeats.len(), 2);
        assert!(overridden.suppressed.is_empty());
    }

    #[test]
    fn procedure_excludes_later_tiers() {
        let d = linguistic_first(DirectiveKind::Procedure);
        let a = canon_arg("x", CanonClass::Linguistic, Polarity::Positive);
        let b = canon_arg("y", CanonClass::Teleological, Polarity::Positive);
        let af = build_framework(vec![a.clone(), b.clone()], vec![], Some(&d), &BTreeSet::new()).unwrap();
        assert_eq!(af.excluded.iter().map(|x| &x.id).collect::<Vec<_>>(), vec![&b.id]);
        assert_eq!(af.label(&a.id), Some(Label::In));
        let lifted = build_framework(vec![a, b.clone()], vec![], Some(&d), &BTreeSet::from([b.id])).unwrap();
        assert!(lifted.excluded.is_empty());
    }

    #[test]
    fn undercuts_survive_preference() {
        let d = linguistic_first(DirectiveKind::Both);
        let a = canon_arg("x", CanonClass::Linguistic, Polarity::Positive);
        let b = canon_arg("y", CanonClass::Linguistic, Polarity::Negative);
        let u = Attack::undercut(b.id.clone(), a.id.clone(), CqTag::Cq1, false);
        let af = build_framework(vec![a, b], vec![u.clone()], Some(&d), &BTreeSet::new()).unwrap();
        assert!(af.defeats.contains(&u));
    }

    #[test]
    fn dangling_attack_is_an_error() {
        let a = canon_arg("x", CanonClass::Linguistic, Polarity::Positive);
        let u = Attack::undercut("ghost".into(), a.id.clone(), CqTag::Cq1, false);
        assert!(matches!(
            build_framework(vec![a], vec![u], None, &BTreeSet::new()),
            Err(EngineError::DanglingAttack { .. })
        ));
    }
}
