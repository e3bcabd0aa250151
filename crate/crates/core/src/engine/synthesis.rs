//! Instantiating the appeal-to-a-prior-case scheme and the canon scheme.

use std::collections::{BTreeMap, BTreeSet};

use crate::case_base::CaseBase;
use crate::frame::{
    Canon, CaseFrame, Characteristic, DirectiveSpec, Document, InterpretansType, Interpretandum,
    InterpretiveStatement, Origin, Polarity, Slot, SlotElementRef, SlotElements,
};
use crate::normalize::{fold, Aliases};
use crate::problem::ProblemFrame;

use super::argument::{Argument, ArgumentId, ArgumentKind, Conclusion};
use super::EngineError;

/// A raw value that a transfer writes into a problem frame.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fill {
    Document(Document),
    Characteristic(Characteristic),
    Interpretandum(Interpretandum),
    Fact(String),
    Interpretans(String),
    InterpretansType(InterpretansType),
    Canon(Canon),
    Directive(DirectiveSpec),
    Context(String),
}

impl Fill {
    /// Writes the value into `p`. Returns false when the slot cannot take it.
    pub fn apply(self, p: &mut ProblemFrame) -> bool {
        fn set<T>(slot: &mut Option<T>, v: T) -> bool {
            if slot.is_some() {
                return false;
            }
            *slot = Some(v);
            true
        }
        match self {
            Fill::Document(d) => set(&mut p.document, d),
            Fill::Interpretandum(i) => set(&mut p.interpretandum, i),
            Fill::Interpretans(i) => set(&mut p.interpretans, i),
            Fill::InterpretansType(t) => set(&mut p.interpretans_type, t),
            Fill::Directive(d) => set(&mut p.second_order, d),
            Fill::Context(c) => set(&mut p.context, c),
            Fill::Characteristic(c) => {
                p.characteristics.push(c);
                true
            }
            Fill::Fact(f) => {
                p.state_of_affairs.push(f);
                true
            }
            Fill::Canon(c) => {
                p.canons.push(c);
                true
            }
        }
    }
}

/// One element of a case frame together with its wording and support.
#[derive(Debug, Clone)]
pub struct CaseItem {
    pub element: SlotElementRef,
    pub display: String,
    pub canons: Vec<Canon>,
    pub fill: Fill,
}

/// Every element of `c` with the raw value it came from, in element order.
pub fn case_items(c: &CaseFrame, aliases: &Aliases) -> Vec<CaseItem> {
    let mut items = Vec::new();
    let w = &c.winning;
    let backing = &w.statement.canons;
    let mut push = |slot, value: String, origin, display: String, canons: &Vec<Canon>, fill| {
        if !value.is_empty() {
            items.push(CaseItem {
                element: SlotElementRef::new(slot, value, origin),
                display,
                canons: canons.clone(),
                fill,
            });
        }
    };
    if let Some(d) = &w.document {
        push(Slot::Document, aliases.normalize(&d.citation), Origin::Winning, d.to_string(), backing, Fill::Document(d.clone()));
    }
    for ch in &w.characteristics {
        push(
            Slot::Characteristic,
            ch.token(aliases),
            Origin::Winning,
            format!("{}: {}", ch.category.tag(), ch.value),
            backing,
            Fill::Characteristic(ch.clone()),
        );
    }
    if let Some(i) = &w.interpretandum {
        push(Slot::Interpretandum, aliases.normalize(&i.expression), Origin::Winning, i.expression.clone(), backing, Fill::Interpretandum(i.clone()));
    }
    for f in &w.state_of_affairs {
        push(Slot::StateOfAffairs, aliases.normalize(f), Origin::Winning, f.clone(), backing, Fill::Fact(f.clone()));
    }
    let mut statement = |s: &InterpretiveStatement, origin| {
        if let Some(i) = &s.interpretans {
            push(Slot::Interpretans, aliases.normalize(i), origin, i.clone(), &s.canons, Fill::Interpretans(i.clone()));
        }
        if let Some(t) = s.interpretans_type {
            let v = match t {
                InterpretansType::Intensional => "intensional",
                InterpretansType::Extensional => "extensional",
            };
            push(Slot::InterpretansType, v.to_string(), origin, v.to_string(), &s.canons, Fill::InterpretansType(t));
        }
        for canon in &s.canons {
            let display = canon.label.clone().unwrap_or_else(|| canon.class.tag().to_string());
            push(Slot::Canon, canon.token(aliases), origin, display, &s.canons, Fill::Canon(canon.clone()));
        }
    };
    statement(&w.statement, Origin::Winning);
    for d in &c.defeated {
        statement(d, Origin::Defeated);
    }
    if let Some(so) = &c.second_order {
        let none = Vec::new();
        push(Slot::SecondOrderDirective, so.class_token(), Origin::CaseLevel, so.text.clone(), &none, Fill::Directive(so.clone()));
        if let Some(ctx) = &so.context {
            push(Slot::Context, aliases.normalize(ctx), Origin::CaseLevel, ctx.clone(), &none, Fill::Context(ctx.clone()));
        }
    }
    items
}

/// Elements of `c` in the similarity slots that `p` also holds.
pub fn shared_elements(c: &CaseFrame, p: &ProblemFrame, aliases: &Aliases) -> BTreeSet<SlotElementRef> {
    let problem: BTreeSet<(Slot, String)> = p
        .elements(aliases)
        .into_iter()
        .map(|e| (e.slot, e.value))
        .collect();
    c.elements(aliases)
        .into_iter()
        .filter(|e| e.slot.is_similarity() && problem.contains(&(e.slot, e.value.clone())))
        .collect()
}

pub(crate) fn prior_case_id(case_id: &str, beta: &SlotElementRef, polarity: Polarity) -> ArgumentId {
    let sign = match polarity {
        Polarity::Positive => "+",
        Polarity::Negative => "-",
    };
    ArgumentId::derive("pc", &[case_id, beta.slot.name(), &beta.value, sign])
}

/// Builds one argument per transferable element of every case that shares
/// at least one similarity element with `p`.
///
/// Elements of the winning interpretation and of the second-order part give
/// positive arguments ("should be included"); elements of defeated
/// interpretations give negative ones, unless the case also holds the same
/// value on the winning side.
pub fn synthesize_arguments(p: &ProblemFrame, base: &CaseBase) -> Vec<Argument> {
    let aliases = base.aliases();
    let problem_keys: BTreeSet<(Slot, String)> = p
        .elements(aliases)
        .into_iter()
        .map(|e| (e.slot, e.value))
        .collect();
    let mut out: BTreeMap<ArgumentId, Argument> = BTreeMap::new();
    let mut order = Vec::new();

    for c in base.cases() {
        let shared: Vec<SlotElementRef> = shared_elements(c, p, aliases).into_iter().collect();
        if shared.is_empty() {
            continue;
        }
        let items = case_items(c, aliases);
        let positive: BTreeSet<(Slot, &str)> = items
            .iter()
            .filter(|i| i.element.origin != Origin::Defeated)
            .map(|i| i.element.key())
            .collect();
        let interpretandum = c
            .winning
            .interpretandum
            .as_ref()
            .map(|i| aliases.normalize(&i.expression));

        for item in &items {
            let beta = &item.element;
            if problem_keys.contains(&(beta.slot, beta.value.clone())) {
                continue;
            }
            if !beta.slot.is_multi_valued() && p.slot_filled(beta.slot) {
                continue;
            }
            let polarity = match beta.origin {
                Origin::Defeated if positive.contains(&beta.key()) => continue,
                Origin::Defeated => Polarity::Negative,
                Origin::Winning | Origin::CaseLevel => Polarity::Positive,
            };
            let id = prior_case_id(c.id(), beta, polarity);
            if out.contains_key(&id) {
                continue;
            }
            let arg = prior_case_argument(id.clone(), c, &shared, item, polarity, interpretandum.clone());
            order.push(id.clone());
            out.insert(id, arg);
        }
    }
    order.into_iter().filter_map(|id| out.remove(&id)).collect()
}

fn prior_case_argument(
    id: ArgumentId,
    c: &CaseFrame,
    shared: &[SlotElementRef],
    item: &CaseItem,
    polarity: Polarity,
    interpretandum: Option<String>,
) -> Argument {
    let beta = item.element.clone();
    let should = match polarity {
        Polarity::Positive => "should",
        Polarity::Negative => "should not",
    };
    let shared_list = shared.iter().map(|e| e.to_string()).collect::<Vec<_>>().join(", ");
    let rationale = format!(
        "In {} ({}, {}) the court held for the winning interpretation; the problem shares {}; \
         therefore {} \u{201c}{}\u{201d} {} be included in the problem frame.",
        c.id(),
        c.case_data.court,
        c.case_data.date,
        shared_list,
        beta.slot,
        item.display,
        should
    );
    Argument {
        id,
        kind: ArgumentKind::PriorCase,
        cited_case_id: Some(c.id().to_string()),
        alpha: shared.first().cloned(),
        shared: shared.to_vec(),
        polarity,
        conclusion: Conclusion {
            target_slot: Some(beta.slot),
            value: beta.value.clone(),
            polarity,
            interpretandum: (beta.slot == Slot::Interpretans).then_some(interpretandum).flatten(),
            display: item.display.clone(),
        },
        beta: Some(beta),
        canons: item.canons.clone(),
        cq: None,
        target: None,
        rationale,
    }
}

/// Instantiates the canon scheme: "`e` should (not) be interpreted as `m` in
/// `d`" on account of `canon`.
pub fn instantiate_canon_argument(
    e: &str,
    d: &str,
    m: &str,
    canon: &Canon,
    polarity: Polarity,
) -> Result<Argument, EngineError> {
    canon_argument(&Aliases::default(), e, d, m, canon, polarity)
}

pub(crate) fn canon_argument(
    aliases: &Aliases,
    e: &str,
    d: &str,
    m: &str,
    canon: &Canon,
    polarity: Polarity,
) -> Result<Argument, EngineError> {
    for (name, v) in [("interpretandum", e), ("document", d), ("interpretans", m)] {
        if v.trim().is_empty() {
            return Err(EngineError::MissingInput(name));
        }
    }
    let sign = match polarity {
        Polarity::Positive => "+",
        Polarity::Negative => "-",
    };
    let canon_token = canon.token(aliases);
    let id = ArgumentId::derive("cb", &[&fold(e), &fold(d), &aliases.normalize(m), &canon_token, sign]);
    let should = match polarity {
        Polarity::Positive => "should",
        Polarity::Negative => "should not",
    };
    let rationale = format!(
        "The interpretation of \u{201c}{e}\u{201d} in {d} as \u{201c}{m}\u{201d} satisfies the condition of the {} canon; \
         therefore \u{201c}{e}\u{201d} {should} be interpreted as \u{201c}{m}\u{201d} in {d}.",
        canon.class
    );
    Ok(Argument {
        id,
        kind: ArgumentKind::CanonBased,
        cited_case_id: None,
        alpha: None,
        shared: Vec::new(),
        beta: None,
        polarity,
        conclusion: Conclusion {
            target_slot: Some(Slot::Interpretans),
            value: aliases.normalize(m),
            polarity,
            interpretandum: Some(aliases.normalize(e)),
            display: m.to_string(),
        },
        canons: vec![canon.clone()],
        cq: None,
        target: None,
        rationale,
    })
}
