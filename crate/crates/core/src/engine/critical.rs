//! Critical questions against prior-case arguments.

use std::collections::BTreeSet;

use chrono::{Months, NaiveDate};
use serde::{Deserialize, Serialize};

use crate::case_base::CaseBase;
use crate::frame::{CaseFrame, CharacteristicCategory, ProceduralStatus, Slot, SlotElementRef, SlotElements};
use crate::normalize::{fold, Aliases};
use crate::problem::ProblemFrame;

use super::argument::{Argument, ArgumentId, ArgumentKind, Attack, Conclusion, CqTag};
use super::synthesis::shared_elements;
use crate::frame::Polarity;

/// Attacker nodes produced by a critical question, plus informational notes
/// for conditions that were checked but did not lead to an attack.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CriticalAttacks {
    pub attackers: Vec<(Argument, Attack)>,
    pub notes: Vec<String>,
}

impl CriticalAttacks {
    pub fn tags(&self) -> BTreeSet<CqTag> {
        self.attackers.iter().filter_map(|(a, _)| a.cq).collect()
    }

    pub fn extend(&mut self, other: CriticalAttacks) {
        self.attackers.extend(other.attackers);
        self.notes.extend(other.notes);
    }
}

fn attacker(target: &Argument, tag: CqTag, case_id: &str, rationale: String) -> (Argument, Attack) {
    let id = ArgumentId::derive("cq", &[target.id.as_str(), &tag.to_string(), case_id]);
    let arg = Argument {
        id: id.clone(),
        kind: ArgumentKind::CqAttacker,
        cited_case_id: Some(case_id.to_string()),
        alpha: None,
        shared: Vec::new(),
        beta: None,
        polarity: Polarity::Positive,
        conclusion: Conclusion {
            target_slot: None,
            value: format!("{} {}", fold(&tag.to_string()), target.id),
            polarity: Polarity::Positive,
            interpretandum: None,
            display: tag.question().to_string(),
        },
        canons: Vec::new(),
        cq: Some(tag),
        target: Some(target.id.clone()),
        rationale,
    };
    let attack = Attack::undercut(id, target.id.clone(), tag, true);
    (arg, attack)
}

fn add_years(date: NaiveDate, years: u32) -> Option<NaiveDate> {
    date.checked_add_months(Months::new(years.saturating_mul(12)))
}

/// True when more than `years` full years separate `date` from `as_of`.
pub fn is_obsolete(date: NaiveDate, as_of: NaiveDate, years: u32) -> bool {
    add_years(date, years).is_some_and(|limit| as_of > limit)
}

/// True when fewer than `years` years separate `date` from `as_of`.
pub fn is_recent(date: NaiveDate, as_of: NaiveDate, years: u32) -> bool {
    add_years(date, years).is_none_or(|limit| as_of < limit)
}

fn category_values(cs: &[crate::frame::Characteristic], cat: CharacteristicCategory, aliases: &Aliases) -> BTreeSet<String> {
    cs.iter()
        .filter(|c| c.category == cat)
        .map(|c| aliases.normalize(&c.value))
        .collect()
}

fn cited_case<'a>(arg: &Argument, base: &'a CaseBase) -> Option<&'a CaseFrame> {
    if arg.kind != ArgumentKind::PriorCase {
        return None;
    }
    arg.cited_case_id.as_deref().and_then(|id| base.get(id))
}

/// Generates CQ2a–c, CQ4, CQ5a/b, CQ6 and CQ7 attackers for a prior-case
/// argument. Arguments of any other kind, or citing an unknown case, yield
/// nothing.
pub fn auto_critical_attacks(arg: &Argument, p: &ProblemFrame, base: &CaseBase) -> CriticalAttacks {
    let mut out = CriticalAttacks::default();
    let Some(c) = cited_case(arg, base) else {
        return out;
    };
    let aliases = base.aliases();
    let cfg = base.config();
    let cd = &c.case_data;
    let id = c.id();

    for (tag, cat) in [
        (CqTag::Cq2a, CharacteristicCategory::Branch),
        (CqTag::Cq2b, CharacteristicCategory::ProvisionType),
        (CqTag::Cq2c, CharacteristicCategory::Goal),
    ] {
        let theirs = category_values(&c.winning.characteristics, cat, aliases);
        let ours = category_values(&p.characteristics, cat, aliases);
        if !theirs.is_empty() && !ours.is_empty() && theirs.is_disjoint(&ours) {
            let why = format!(
                "{id} concerns {} {:?}; the problem concerns {:?}",
                cat.tag(),
                theirs.iter().collect::<Vec<_>>(),
                ours.iter().collect::<Vec<_>>()
            );
            out.attackers.push(attacker(arg, tag, id, why));
        }
    }

    let same_jurisdiction = fold(&cd.jurisdiction) == fold(&p.forum.jurisdiction);
    if !same_jurisdiction {
        let why = format!("{id} was decided in {}; the problem is before a court in {}", cd.jurisdiction, p.forum.jurisdiction);
        out.attackers.push(attacker(arg, CqTag::Cq4, id, why));
    }

    let obsolete = is_obsolete(cd.date, p.as_of_date, cfg.obsolescence_years);
    if obsolete {
        let why = format!("{id} was decided on {}, more than {} years before {}", cd.date, cfg.obsolescence_years, p.as_of_date);
        out.attackers.push(attacker(arg, CqTag::Cq5a, id, why));
    } else if is_recent(cd.date, p.as_of_date, cfg.recency_years) {
        let citing = base.citing_count(id);
        if citing < cfg.min_citing_cases as usize {
            let why = format!(
                "{id} was decided on {}, less than {} years before {}, and is cited by {citing} case(s)",
                cd.date, cfg.recency_years, p.as_of_date
            );
            out.attackers.push(attacker(arg, CqTag::Cq5b, id, why));
        }
    }

    if same_jurisdiction {
        match (base.court_rank(&cd.jurisdiction, &cd.court), base.court_rank(&p.forum.jurisdiction, &p.forum.court)) {
            (Some(theirs), Some(ours)) if theirs > ours => {
                let why = format!("{} ranks below {} in {}", cd.court, p.forum.court, cd.jurisdiction);
                out.attackers.push(attacker(arg, CqTag::Cq6, id, why));
            }
            (Some(theirs), Some(ours)) if theirs == ours => {
                out.notes.push(format!("CQ6: {id} was decided by a court of the same rank as the forum"));
            }
            (Some(_), Some(_)) => {}
            _ => out.notes.push(format!(
                "CQ6: no rank known for {} or {} in {}",
                cd.court, p.forum.court, cd.jurisdiction
            )),
        }
    }

    if cd.procedural.status != ProceduralStatus::Final {
        let why = format!("{id} is not final ({:?})", cd.procedural.status);
        out.attackers.push(attacker(arg, CqTag::Cq7, id, why));
    }
    out
}

/// CQ3: every other case that shares strictly more similarity elements with
/// `p` than the cited case and does not contain the transferred element.
pub fn counterexample_search(arg: &Argument, p: &ProblemFrame, base: &CaseBase) -> CriticalAttacks {
    let mut out = CriticalAttacks::default();
    let (Some(c), Some(beta)) = (cited_case(arg, base), arg.beta.as_ref()) else {
        return out;
    };
    let aliases = base.aliases();
    let own = shared_elements(c, p, aliases).len();
    for r in base.cases() {
        if r.id() == c.id() {
            continue;
        }
        let theirs = shared_elements(r, p, aliases).len();
        if theirs <= own {
            continue;
        }
        let has_beta = r.elements(aliases).iter().any(|e| e.key() == beta.key());
        if has_beta {
            continue;
        }
        let why = format!(
            "{} shares {theirs} element(s) with the problem against {own} for {} and does not contain {beta}",
            r.id(),
            c.id()
        );
        out.attackers.push(attacker(arg, CqTag::Cq3, r.id(), why));
    }
    out
}

/// CQ8: mutual undercuts between directive-transfer arguments from different
/// cases whose directive classes conflict.
pub fn directive_conflict_attacks(args: &[Argument], p: &ProblemFrame, base: &CaseBase) -> Vec<Attack> {
    let aliases = base.aliases();
    let directive_args: Vec<(&Argument, &CaseFrame, String)> = args
        .iter()
        .filter(|a| a.is_prior_case())
        .filter(|a| a.beta.as_ref().is_some_and(|b| b.slot == Slot::SecondOrderDirective))
        .filter_map(|a| {
            let c = base.get(a.cited_case_id.as_deref()?)?;
            let class = c.second_order.as_ref()?.class_token();
            Some((a, c, class))
        })
        .filter(|(_, c, _)| !shared_elements(c, p, aliases).is_empty())
        .collect();
    let mut out = Vec::new();
    for (i, (a, ca, class_a)) in directive_args.iter().enumerate() {
        for (b, cb, class_b) in &directive_args[i + 1..] {
            if ca.id() == cb.id() || !base.config().directives_conflict(class_a, class_b) {
                continue;
            }
            out.push(Attack::undercut(a.id.clone(), b.id.clone(), CqTag::Cq8, true));
            out.push(Attack::undercut(b.id.clone(), a.id.clone(), CqTag::Cq8, true));
        }
    }
    out
}

/// Elements present in only one of the cited case and the problem. Offered to
/// the user as material for the manual CQ1 and CQ2.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DifferenceReport {
    pub case_id: String,
    pub shared: Vec<SlotElementRef>,
    pub case_only: Vec<SlotElementRef>,
    pub problem_only: Vec<SlotElementRef>,
}

pub fn difference_report(c: &CaseFrame, p: &ProblemFrame, aliases: &Aliases) -> DifferenceReport {
    let ce = c.elements(aliases);
    let pe = p.elements(aliases);
    let keys = |s: &BTreeSet<SlotElementRef>| s.iter().map(|e| (e.slot, e.value.clone())).collect::<BTreeSet<_>>();
    let (ck, pk) = (keys(&ce), keys(&pe));
    DifferenceReport {
        case_id: c.id().to_string(),
        shared: shared_elements(c, p, aliases).into_iter().collect(),
        case_only: ce.iter().filter(|e| !pk.contains(&(e.slot, e.value.clone()))).cloned().collect(),
        problem_only: pe.iter().filter(|e| !ck.contains(&(e.slot, e.value.clone()))).cloned().collect(),
    }
}
