//! What-if workspace over one problem frame.
//!
//! A [`Session`] owns a problem frame, the user's critical-question
//! assertions and overrides, and the transfers made so far. Every operation
//! recomputes the analysis from scratch and appends an event to the history,
//! so replaying the history reproduces the same state.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::case_base::CaseBase;
use crate::engine::{
    analyze, case_items, Analysis, Argument, ArgumentId, ArgumentKind, Attack, Conclusion, CqTag, DifferenceReport,
    EngineError, Extras, Label,
};
use crate::frame::{DirectiveSpec, Polarity, Slot, ValidationReport};
use crate::problem::{validate_problem, ProblemFrame};

/// What an assertion does: raise a critical question or override a
/// directive's effect on one argument.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub enum AssertionTag {
    Cq(CqTag),
    Override,
}

impl From<AssertionTag> for String {
    fn from(t: AssertionTag) -> String {
        match t {
            AssertionTag::Override => "override".into(),
            AssertionTag::Cq(cq) => cq.to_string().to_lowercase(),
        }
    }
}

impl TryFrom<String> for AssertionTag {
    type Error = String;

    fn try_from(s: String) -> Result<Self, String> {
        let lower = s.trim().to_lowercase();
        if lower == "override" {
            return Ok(Self::Override);
        }
        CqTag::ALL
            .into_iter()
            .find(|t| t.to_string().to_lowercase() == lower)
            .map(Self::Cq)
            .ok_or_else(|| format!("unknown critical question {s:?}"))
    }
}

impl fmt::Display for AssertionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cq(cq) => write!(f, "{cq}"),
            Self::Override => f.write_str("override"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Assertion {
    pub id: String,
    pub cq: AssertionTag,
    pub target: ArgumentId,
    #[serde(default)]
    pub payload: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counter_to: Option<String>,
}

/// An assertion as submitted. A counter-assertion may omit `target`; it then
/// attacks the node of the assertion it counters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct AssertionRequest {
    pub cq: AssertionTag,
    #[serde(default)]
    pub target: Option<ArgumentId>,
    #[serde(default)]
    pub payload: String,
    #[serde(default)]
    pub counter_to: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Event {
    #[serde(rename_all = "camelCase")]
    Created { session_id: String, problem: ProblemFrame },
    Asserted { assertion: Assertion },
    #[serde(rename_all = "camelCase")]
    Transferred { argument_id: ArgumentId },
    ProblemEdited { problem: ProblemFrame },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HistoryEntry {
    pub step: usize,
    pub event: Event,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SessionError {
    #[error("invalid problem frame")]
    InvalidProblem(ValidationReport),
    #[error("unknown argument {0}")]
    UnknownArgument(ArgumentId),
    #[error("unknown assertion {0}")]
    UnknownAssertion(String),
    #[error("{0}")]
    Inapplicable(String),
    #[error("{0} needs a justification")]
    MissingPayload(CqTag),
    #[error("assertion needs a target or counterTo")]
    MissingTarget,
    #[error("unsupported transfer: {0} is not IN")]
    UnsupportedTransfer(ArgumentId),
    #[error("negative conclusions exclude values and cannot fill a slot")]
    NegativeTransfer,
    #[error("only prior-case arguments can be transferred")]
    NotTransferable,
    #[error("slot {0} is already filled")]
    SlotFilled(Slot),
    #[error("cannot replay history: {0}")]
    Replay(String),
    #[error(transparent)]
    Engine(#[from] EngineError),
}

/// Manual critical questions offered for one cited case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CqSuggestion {
    pub case_id: String,
    pub arguments: Vec<ArgumentId>,
    pub questions: BTreeMap<CqTag, String>,
    pub difference_report: DifferenceReport,
}

/// Read-only snapshot of a session.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SessionView {
    pub id: String,
    pub problem: ProblemFrame,
    pub arguments: Vec<Argument>,
    pub excluded: Vec<Argument>,
    pub defeats: Vec<Attack>,
    pub labeling: BTreeMap<ArgumentId, Label>,
    pub assertions: Vec<Assertion>,
    pub difference_reports: Vec<DifferenceReport>,
    #[serde(rename = "pendingCQSuggestions")]
    pub pending_cq_suggestions: Vec<CqSuggestion>,
    pub transferable: Vec<ArgumentId>,
    pub active_directive: Option<DirectiveSpec>,
    pub directive_reverted: bool,
    pub notes: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct Session {
    id: String,
    problem: ProblemFrame,
    base: Arc<CaseBase>,
    assertions: Vec<Assertion>,
    extras: Extras,
    analysis: Analysis,
    history: Vec<HistoryEntry>,
}

impl Session {
    pub fn create(problem: ProblemFrame, base: Arc<CaseBase>) -> Result<Self, SessionError> {
        Self::create_with_id("session", problem, base)
    }

    pub fn create_with_id(id: impl Into<String>, problem: ProblemFrame, base: Arc<CaseBase>) -> Result<Self, SessionError> {
        let report = validate_problem(&problem, base.aliases());
        if !report.is_ok() {
            return Err(SessionError::InvalidProblem(report));
        }
        let extras = Extras::default();
        let analysis = analyze(&problem, &base, &extras)?;
        let id = id.into();
        let event = Event::Created {
            session_id: id.clone(),
            problem: problem.clone(),
        };
        Ok(Self {
            id,
            problem,
            base,
            assertions: Vec::new(),
            extras,
            analysis,
            history: vec![HistoryEntry { step: 0, event }],
        })
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn problem(&self) -> &ProblemFrame {
        &self.problem
    }

    pub fn analysis(&self) -> &Analysis {
        &self.analysis
    }

    pub fn assertions(&self) -> &[Assertion] {
        &self.assertions
    }

    pub fn history(&self) -> &[HistoryEntry] {
        &self.history
    }

    pub fn label(&self, id: &ArgumentId) -> Option<Label> {
        self.analysis.framework.label(id)
    }

    fn record(&mut self, event: Event) {
        let step = self.history.len();
        self.history.push(HistoryEntry { step, event });
    }

    fn find(&self, id: &ArgumentId) -> Option<&Argument> {
        let af = &self.analysis.framework;
        af.arguments.iter().chain(&af.excluded).find(|a| &a.id == id)
    }

    fn recompute(&self, problem: &ProblemFrame, extras: &Extras) -> Result<Analysis, SessionError> {
        Ok(analyze(problem, &self.base, extras)?)
    }

    /// Adds a critical-question attacker or an override and relabels.
    pub fn assert_cq(&mut self, req: AssertionRequest) -> Result<&Assertion, SessionError> {
        if let Some(c) = &req.counter_to {
            if !self.assertions.iter().any(|a| &a.id == c) {
                return Err(SessionError::UnknownAssertion(c.clone()));
            }
        }
        let target_id = match (&req.target, &req.counter_to) {
            (Some(t), _) => t.clone(),
            (None, Some(c)) => ArgumentId(c.clone()),
            (None, None) => return Err(SessionError::MissingTarget),
        };
        let target = self
            .find(&target_id)
            .ok_or_else(|| SessionError::UnknownArgument(target_id.clone()))?
            .clone();
        let id = format!("as-{}", self.assertions.len() + 1);
        let assertion = Assertion {
            id: id.clone(),
            cq: req.cq,
            target: target_id.clone(),
            payload: req.payload,
            counter_to: req.counter_to,
        };

        let mut extras = self.extras.clone();
        match req.cq {
            AssertionTag::Override => {
                if target.kind == ArgumentKind::CqAttacker {
                    return Err(SessionError::Inapplicable(
                        "overrides apply to prior-case and canon-based arguments".into(),
                    ));
                }
                extras.overrides.insert(target_id.clone());
            }
            AssertionTag::Cq(cq) => {
                match target.kind {
                    ArgumentKind::PriorCase => {}
                    ArgumentKind::CqAttacker if target.cq == Some(cq) => {}
                    ArgumentKind::CqAttacker => {
                        return Err(SessionError::Inapplicable(format!(
                            "{cq} cannot answer a {} node",
                            target.cq.map(|t| t.to_string()).unwrap_or_default()
                        )))
                    }
                    ArgumentKind::CanonBased => {
                        return Err(SessionError::Inapplicable(format!(
                            "{cq} is a question about prior-case arguments"
                        )))
                    }
                }
                if cq.is_manual_only() && assertion.payload.trim().is_empty() {
                    return Err(SessionError::MissingPayload(cq));
                }
                extras.manual.push(manual_node(&assertion, cq));
            }
        }
        self.analysis = self.recompute(&self.problem, &extras)?;
        self.extras = extras;
        self.assertions.push(assertion.clone());
        self.record(Event::Asserted { assertion });
        Ok(self.assertions.last().expect("just pushed"))
    }

    /// Fills the problem slot named by an IN positive prior-case argument.
    pub fn apply_transfer(&mut self, argument_id: &ArgumentId) -> Result<(), SessionError> {
        let arg = self
            .analysis
            .framework
            .get(argument_id)
            .ok_or_else(|| SessionError::UnknownArgument(argument_id.clone()))?
            .clone();
        let beta = match (&arg.kind, &arg.beta) {
            (ArgumentKind::PriorCase, Some(b)) => b.clone(),
            _ => return Err(SessionError::NotTransferable),
        };
        if arg.polarity == Polarity::Negative {
            return Err(SessionError::NegativeTransfer);
        }
        if self.label(argument_id) != Some(Label::In) {
            return Err(SessionError::UnsupportedTransfer(argument_id.clone()));
        }
        let aliases = self.base.aliases();
        if !self.problem.accepts(&beta, aliases) {
            return Err(SessionError::SlotFilled(beta.slot));
        }
        let case = arg
            .cited_case_id
            .as_deref()
            .and_then(|id| self.base.get(id))
            .ok_or(SessionError::NotTransferable)?;
        let item = case_items(case, aliases)
            .into_iter()
            .find(|i| i.element == beta)
            .ok_or(SessionError::NotTransferable)?;
        let mut problem = self.problem.clone();
        if !item.fill.apply(&mut problem) {
            return Err(SessionError::SlotFilled(beta.slot));
        }
        let mut extras = self.extras.clone();
        extras.retained.push(arg);
        if beta.slot == Slot::SecondOrderDirective {
            extras.directive_support = Some(argument_id.clone());
        }
        self.analysis = self.recompute(&problem, &extras)?;
        self.problem = problem;
        self.extras = extras;
        self.record(Event::Transferred {
            argument_id: argument_id.clone(),
        });
        Ok(())
    }

    /// Replaces the problem frame by a manual edit.
    pub fn edit_problem(&mut self, problem: ProblemFrame) -> Result<(), SessionError> {
        let report = validate_problem(&problem, self.base.aliases());
        if !report.is_ok() {
            return Err(SessionError::InvalidProblem(report));
        }
        let mut extras = self.extras.clone();
        if problem.second_order != self.problem.second_order {
            extras.directive_support = None;
        }
        self.analysis = self.recompute(&problem, &extras)?;
        self.problem = problem.clone();
        self.extras = extras;
        self.record(Event::ProblemEdited { problem });
        Ok(())
    }

    pub fn state(&self) -> SessionView {
        let af = &self.analysis.framework;
        let mut suggestions: Vec<CqSuggestion> = self
            .analysis
            .difference_reports
            .iter()
            .map(|r| CqSuggestion {
                case_id: r.case_id.clone(),
                arguments: Vec::new(),
                questions: [CqTag::Cq1, CqTag::Cq2].into_iter().map(|t| (t, t.question().to_string())).collect(),
                difference_report: r.clone(),
            })
            .collect();
        for a in af.arguments.iter().filter(|a| a.is_prior_case()) {
            if let Some(s) = suggestions.iter_mut().find(|s| Some(&s.case_id) == a.cited_case_id.as_ref()) {
                s.arguments.push(a.id.clone());
            }
        }
        SessionView {
            id: self.id.clone(),
            problem: self.problem.clone(),
            arguments: af.arguments.clone(),
            excluded: af.excluded.clone(),
            defeats: af.defeats.clone(),
            labeling: af.labeling.clone(),
            assertions: self.assertions.clone(),
            difference_reports: self.analysis.difference_reports.clone(),
            pending_cq_suggestions: suggestions,
            transferable: crate::engine::transferable(&self.analysis)
                .filter(|a| a.beta.as_ref().is_some_and(|b| self.problem.accepts(b, self.base.aliases())))
                .map(|a| a.id.clone())
                .collect(),
            active_directive: self.analysis.active_directive.clone(),
            directive_reverted: self.analysis.directive_reverted,
            notes: self.analysis.notes.clone(),
        }
    }

    /// History as JSON lines, one event per line.
    pub fn event_log(&self) -> String {
        let mut out = String::new();
        for e in &self.history {
            out.push_str(&serde_json::to_string(e).expect("events serialize"));
            out.push('\n');
        }
        out
    }

    /// Rebuilds a session from its history.
    pub fn replay(base: Arc<CaseBase>, history: &[HistoryEntry]) -> Result<Self, SessionError> {
        let mut entries = history.iter();
        let Some(HistoryEntry {
            event: Event::Created { session_id, problem },
            ..
        }) = entries.next()
        else {
            return Err(SessionError::Replay("history must start with a created event".into()));
        };
        let mut s = Self::create_with_id(session_id.clone(), problem.clone(), base)?;
        for e in entries {
            match &e.event {
                Event::Created { .. } => return Err(SessionError::Replay(format!("second created event at step {}", e.step))),
                Event::Asserted { assertion } => {
                    let created = s.assert_cq(AssertionRequest {
                        cq: assertion.cq,
                        target: Some(assertion.target.clone()),
                        payload: assertion.payload.clone(),
                        counter_to: assertion.counter_to.clone(),
                    })?;
                    if created.id != assertion.id {
                        return Err(SessionError::Replay(format!("assertion id mismatch at step {}", e.step)));
                    }
                }
                Event::Transferred { argument_id } => s.apply_transfer(argument_id)?,
                Event::ProblemEdited { problem } => s.edit_problem(problem.clone())?,
            }
        }
        Ok(s)
    }

    /// Parses an event log produced by [`Session::event_log`].
    pub fn parse_log(log: &str) -> Result<Vec<HistoryEntry>, SessionError> {
        log.lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| serde_json::from_str(l).map_err(|e| SessionError::Replay(e.to_string())))
            .collect()
    }
}

fn manual_node(assertion: &Assertion, cq: CqTag) -> (Argument, Attack) {
    let id = ArgumentId(assertion.id.clone());
    let node = Argument {
        id: id.clone(),
        kind: ArgumentKind::CqAttacker,
        cited_case_id: None,
        alpha: None,
        shared: Vec::new(),
        beta: None,
        polarity: Polarity::Positive,
        conclusion: Conclusion {
            target_slot: None,
            value: format!("{} {}", String::from(AssertionTag::Cq(cq)), assertion.target),
            polarity: Polarity::Positive,
            interpretandum: None,
            display: cq.question().to_string(),
        },
        canons: Vec::new(),
        cq: Some(cq),
        target: Some(assertion.target.clone()),
        rationale: assertion.payload.clone(),
    };
    let attack = Attack::undercut(id, assertion.target.clone(), cq, false);
    (node, attack)
}
