//! The partially filled frame describing the case being decided.

use std::collections::BTreeSet;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::frame::{
    check_canons, check_characteristics, check_directive, Canon, Characteristic, DirectiveSpec, Document,
    ElementSink, InterpretansType, Interpretandum, Origin, Polarity, Slot, SlotElementRef, SlotElements,
    ValidationReport,
};
use crate::normalize::Aliases;

/// The court that will decide the problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Forum {
    pub jurisdiction: String,
    pub court: String,
}

/// An interpretation of the problem's interpretandum argued for directly from
/// a canon, without a prior case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CandidateInterpretation {
    pub interpretans: String,
    pub canon: Canon,
    #[serde(default)]
    pub polarity: Polarity,
}

/// Frame for the current fact situation. Empty slots are transfer targets.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ProblemFrame {
    pub forum: Forum,
    pub as_of_date: NaiveDate,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document: Option<Document>,
    #[serde(default)]
    pub characteristics: Vec<Characteristic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpretandum: Option<Interpretandum>,
    #[serde(default)]
    pub state_of_affairs: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpretans: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpretans_type: Option<InterpretansType>,
    #[serde(default)]
    pub canons: Vec<Canon>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_order: Option<DirectiveSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub candidates: Vec<CandidateInterpretation>,
}

impl ProblemFrame {
    pub fn new(forum: Forum, as_of_date: NaiveDate) -> Self {
        Self {
            forum,
            as_of_date,
            document: None,
            characteristics: Vec::new(),
            interpretandum: None,
            state_of_affairs: Vec::new(),
            interpretans: None,
            interpretans_type: None,
            canons: Vec::new(),
            second_order: None,
            context: None,
            candidates: Vec::new(),
        }
    }

    /// True when a single-valued slot already holds a value.
    pub fn slot_filled(&self, slot: Slot) -> bool {
        match slot {
            Slot::Document => self.document.is_some(),
            Slot::Interpretandum => self.interpretandum.is_some(),
            Slot::Interpretans => self.interpretans.is_some(),
            Slot::InterpretansType => self.interpretans_type.is_some(),
            Slot::SecondOrderDirective => self.second_order.is_some(),
            Slot::Context => self.context.is_some(),
            Slot::Characteristic | Slot::StateOfAffairs | Slot::Canon => false,
        }
    }

    /// Whether `(slot, value)` may still be added: single-valued slots must be
    /// empty, multi-valued ones must not already hold the value.
    pub fn accepts(&self, element: &SlotElementRef, aliases: &Aliases) -> bool {
        if element.slot.is_multi_valued() {
            !self.elements(aliases).iter().any(|e| e.key() == element.key())
        } else {
            !self.slot_filled(element.slot)
        }
    }
}

impl SlotElements for ProblemFrame {
    fn elements(&self, aliases: &Aliases) -> BTreeSet<SlotElementRef> {
        let mut sink = ElementSink::new(aliases);
        if let Some(d) = &self.document {
            sink.term(Slot::Document, &d.citation, Origin::Winning);
        }
        for c in &self.characteristics {
            sink.raw(Slot::Characteristic, c.token(aliases), Origin::Winning);
        }
        if let Some(i) = &self.interpretandum {
            sink.term(Slot::Interpretandum, &i.expression, Origin::Winning);
        }
        for f in &self.state_of_affairs {
            sink.term(Slot::StateOfAffairs, f, Origin::Winning);
        }
        if let Some(i) = &self.interpretans {
            sink.term(Slot::Interpretans, i, Origin::Winning);
        }
        if let Some(t) = self.interpretans_type {
            let v = match t {
                InterpretansType::Intensional => "intensional",
                InterpretansType::Extensional => "extensional",
            };
            sink.raw(Slot::InterpretansType, v.to_string(), Origin::Winning);
        }
        for c in &self.canons {
            sink.raw(Slot::Canon, c.token(aliases), Origin::Winning);
        }
        if let Some(so) = &self.second_order {
            sink.directive(so);
        }
        if let Some(ctx) = &self.context {
            sink.term(Slot::Context, ctx, Origin::CaseLevel);
        }
        sink.out
    }
}

/// Checks a problem frame. A problem with no similarity element can never be
/// matched against a prior case and is rejected.
pub fn validate_problem(p: &ProblemFrame, aliases: &Aliases) -> ValidationReport {
    let mut r = ValidationReport::default();
    if p.forum.jurisdiction.trim().is_empty() {
        r.error("forum.jurisdiction", "missing forum jurisdiction");
    }
    if p.forum.court.trim().is_empty() {
        r.error("forum.court", "missing forum court");
    }
    if p.interpretandum.is_none() && p.state_of_affairs.is_empty() {
        r.error("", "problem needs an interpretandum or a state of affairs");
    }
    if let Some(i) = &p.interpretandum {
        if i.expression.trim().is_empty() {
            r.error("interpretandum.expression", "empty interpretandum");
        }
    }
    if let Some(d) = &p.document {
        if d.citation.trim().is_empty() {
            r.error("document.citation", "empty document citation");
        }
    }
    check_characteristics(&mut r, "characteristics", &p.characteristics);
    if !p.canons.is_empty() {
        check_canons(&mut r, "", &p.canons);
    }
    if let Some(so) = &p.second_order {
        check_directive(&mut r, "secondOrder", so);
    }
    let has_similarity = p.elements(aliases).iter().any(|e| e.slot.is_similarity());
    if !has_similarity {
        r.error("", "problem has no document, characteristic, interpretandum or fact to compare");
    }
    for (i, c) in p.candidates.iter().enumerate() {
        let path = format!("candidates[{i}]");
        if c.interpretans.trim().is_empty() {
            r.error(format!("{path}.interpretans"), "empty interpretans");
        }
        check_canons(&mut r, &path, std::slice::from_ref(&c.canon));
        if p.interpretandum.is_none() || p.document.is_none() {
            r.error(path, "candidate interpretation needs the problem's interpretandum and document");
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frame::frame_elements;

    fn forum() -> Forum {
        Forum {
            jurisdiction: "Poland".into(),
            court: "Supreme Administrative Court".into(),
        }
    }

    fn date() -> NaiveDate {
        NaiveDate::from_ymd_opt(2024, 1, 1).unwrap()
    }

    #[test]
    fn interpretandum_only_yields_one_element() {
        let mut p = ProblemFrame::new(forum(), date());
        p.interpretandum = Some(Interpretandum {
            expression: "incurring the cost".into(),
            locus: String::new(),
        });
        let els = frame_elements(&p, &Aliases::default());
        assert_eq!(els.len(), 1);
        assert!(validate_problem(&p, &Aliases::default()).is_ok());
    }

    #[test]
    fn empty_problem_rejected() {
        let p = ProblemFrame::new(forum(), date());
        let r = validate_problem(&p, &Aliases::default());
        assert_eq!(r.errors.len(), 2);
    }

    #[test]
    fn candidates_need_interpretandum_and_document() {
        let mut p = ProblemFrame::new(forum(), date());
        p.state_of_affairs.push("a fact".into());
        p.candidates.push(CandidateInterpretation {
            interpretans: "m".into(),
            canon: Canon::new(crate::frame::CanonClass::Linguistic),
            polarity: Polarity::Positive,
        });
        assert_eq!(validate_problem(&p, &Aliases::default()).errors.len(), 1);
    }

    #[test]
    fn single_valued_slots_block_transfer() {
        let mut p = ProblemFrame::new(forum(), date());
        let a = Aliases::default();
        let el = SlotElementRef::new(Slot::Interpretans, "x", Origin::Winning);
        assert!(p.accepts(&el, &a));
        p.interpretans = Some("y".into());
        assert!(!p.accepts(&el, &a));
        let fact = SlotElementRef::new(Slot::StateOfAffairs, "it rained", Origin::Winning);
        p.state_of_affairs.push("It rained".into());
        assert!(!p.accepts(&fact, &a));
        let other = SlotElementRef::new(Slot::StateOfAffairs, "it snowed", Origin::Winning);
        assert!(p.accepts(&other, &a));
    }
}
