//! Case Frames: the four-part record of an interpretive decision.
//!
//! A [`CaseFrame`] holds the case data, the interpretation the court adopted,
//! the interpretations it rejected, and optionally the second-order directive
//! it used to settle the conflict. Frames are flattened into
//! [`SlotElementRef`]s so that two frames can be compared element by element.

use std::collections::BTreeSet;
use std::fmt;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::normalize::{fold, split_term_list, Aliases};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseData {
    pub jurisdiction: String,
    pub court: String,
    pub identifier: String,
    pub date: NaiveDate,
    pub procedural: Procedural,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Procedural {
    pub status: ProceduralStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl Procedural {
    pub fn new(status: ProceduralStatus) -> Self {
        Self { status, note: None }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ProceduralStatus {
    Final,
    NonFinal,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacteristicCategory {
    Branch,
    ProvisionType,
    Goal,
    Other,
}

impl CharacteristicCategory {
    pub fn tag(self) -> &'static str {
        match self {
            Self::Branch => "branch",
            Self::ProvisionType => "provision-type",
            Self::Goal => "goal",
            Self::Other => "other",
        }
    }
}

/// A feature of the source of law that may bear on interpretation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Characteristic {
    pub category: CharacteristicCategory,
    pub value: String,
}

impl Characteristic {
    pub fn new(category: CharacteristicCategory, value: impl Into<String>) -> Self {
        Self {
            category,
            value: value.into(),
        }
    }

    /// `category:value` with the value normalized.
    pub fn token(&self, aliases: &Aliases) -> String {
        format!("{}:{}", self.category.tag(), aliases.normalize(&self.value))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InterpretansType {
    Intensional,
    Extensional,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Polarity {
    #[default]
    Positive,
    Negative,
}

impl Polarity {
    pub fn opposite(self) -> Self {
        match self {
            Self::Positive => Self::Negative,
            Self::Negative => Self::Positive,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exhaustiveness {
    Exhaustive,
    Exemplary,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CanonClass {
    Linguistic,
    Systemic,
    Teleological,
    Historical,
    Transcategorical,
    AppealToPriorCase,
    Other,
}

impl CanonClass {
    pub const ALL: [CanonClass; 7] = [
        Self::Linguistic,
        Self::Systemic,
        Self::Teleological,
        Self::Historical,
        Self::Transcategorical,
        Self::AppealToPriorCase,
        Self::Other,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Self::Linguistic => "linguistic",
            Self::Systemic => "systemic",
            Self::Teleological => "teleological",
            Self::Historical => "historical",
            Self::Transcategorical => "transcategorical",
            Self::AppealToPriorCase => "appeal-to-prior-case",
            Self::Other => "other",
        }
    }

    /// Maps a normalized canon name onto its class. Common synonyms
    /// ("purposive", "functional", "literal", ...) are recognized.
    pub fn from_term(term: &str) -> Option<Self> {
        let t = fold(term);
        let t = t.strip_suffix(" interpretation").unwrap_or(&t);
        Some(match t {
            "linguistic" | "literal" | "textual" | "grammatical" => Self::Linguistic,
            "systemic" | "systematic" => Self::Systemic,
            "teleological" | "purposive" | "functional" => Self::Teleological,
            "historical" => Self::Historical,
            "transcategorical" => Self::Transcategorical,
            "appeal-to-prior-case" | "appeal to a prior case" | "prior case" | "precedent" => {
                Self::AppealToPriorCase
            }
            "other" => Self::Other,
            _ => return None,
        })
    }
}

impl fmt::Display for CanonClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// A recognized type of interpretive argument.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Canon {
    pub class: CanonClass,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cited_case_id: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl Canon {
    pub fn new(class: CanonClass) -> Self {
        Self {
            class,
            cited_case_id: None,
            label: None,
        }
    }

    pub fn prior_case(id: impl Into<String>) -> Self {
        Self {
            class: CanonClass::AppealToPriorCase,
            cited_case_id: Some(id.into()),
            label: None,
        }
    }

    pub fn token(&self, aliases: &Aliases) -> String {
        match &self.cited_case_id {
            Some(id) if self.class == CanonClass::AppealToPriorCase => {
                format!("{}:{}", self.class.tag(), aliases.normalize(id))
            }
            _ => self.class.tag().to_string(),
        }
    }
}

/// Parses a prose canon list ("Systemic, historical, teleological") into
/// canons, keeping each item's wording as its label.
pub fn parse_canon_list(text: &str, aliases: &Aliases) -> Result<Vec<Canon>, String> {
    split_term_list(text)
        .into_iter()
        .map(|item| {
            let class = CanonClass::from_term(&aliases.normalize(&item))
                .ok_or_else(|| format!("unknown canon {item:?}"))?;
            Ok(Canon {
                class,
                cited_case_id: None,
                label: Some(item),
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct InterpretiveStatement {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpretans: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpretans_type: Option<InterpretansType>,
    #[serde(default)]
    pub polarity: Polarity,
    #[serde(default)]
    pub exhaustiveness: Exhaustiveness,
    #[serde(default)]
    pub canons: Vec<Canon>,
    /// Verbatim wording of the canon column, when the source gives one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub canon_text: Option<String>,
}

impl InterpretiveStatement {
    pub fn new(interpretans: impl Into<String>, canons: Vec<Canon>) -> Self {
        Self {
            interpretans: Some(interpretans.into()),
            interpretans_type: None,
            polarity: Polarity::Positive,
            exhaustiveness: Exhaustiveness::Unknown,
            canons,
            canon_text: None,
        }
    }

    /// Fills `canons` from `canon_text` when only the prose form was given.
    pub(crate) fn expand_canon_text(&mut self, aliases: &Aliases) -> Result<(), String> {
        if self.canons.is_empty() {
            if let Some(text) = &self.canon_text {
                self.canons = parse_canon_list(text, aliases)?;
            }
        }
        Ok(())
    }

    pub fn canon_display(&self) -> String {
        if let Some(text) = &self.canon_text {
            return text.clone();
        }
        self.canons
            .iter()
            .map(|c| c.label.clone().unwrap_or_else(|| c.class.tag().to_string()))
            .collect::<Vec<_>>()
            .join(", ")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Document {
    #[serde(default)]
    pub title: String,
    pub citation: String,
}

impl fmt::Display for Document {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.title.is_empty(), self.citation.is_empty()) {
            (true, _) => f.write_str(&self.citation),
            (false, true) => f.write_str(&self.title),
            (false, false) => write!(f, "{} ({})", self.title, self.citation),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct Interpretandum {
    pub expression: String,
    /// Systematic unit of the source text, e.g. "par. 4 of the Regulation".
    #[serde(default)]
    pub locus: String,
}

impl fmt::Display for Interpretandum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Expression \u{201c}{}\u{201d}", self.expression)?;
        if !self.locus.is_empty() {
            write!(f, ", {}", self.locus)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct WinningInterpretation {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub document: Option<Document>,
    #[serde(default)]
    pub characteristics: Vec<Characteristic>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub interpretandum: Option<Interpretandum>,
    #[serde(default)]
    pub state_of_affairs: Vec<String>,
    pub statement: InterpretiveStatement,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DirectiveKind {
    Procedure,
    Preference,
    Both,
}

impl DirectiveKind {
    pub fn orders_procedure(self) -> bool {
        matches!(self, Self::Procedure | Self::Both)
    }

    pub fn states_preference(self) -> bool {
        matches!(self, Self::Preference | Self::Both)
    }
}

/// Machine-readable second-order directive.
///
/// `text` is kept verbatim. `directive_class` and `tiers` are assigned when the
/// frame is encoded: tiers list canon classes from most to least favoured.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DirectiveSpec {
    pub kind: DirectiveKind,
    pub text: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub directive_class: Option<String>,
    #[serde(default)]
    pub tiers: Vec<Vec<CanonClass>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub override_condition: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub context: Option<String>,
}

impl DirectiveSpec {
    /// Index of the earliest tier containing `class`.
    pub fn tier_of(&self, class: CanonClass) -> Option<usize> {
        self.tiers.iter().position(|t| t.contains(&class))
    }

    /// The token used to compare directives across cases.
    pub fn class_token(&self) -> String {
        match &self.directive_class {
            Some(c) if !c.trim().is_empty() => fold(c),
            _ => fold(&self.text),
        }
    }
}

/// Knowledge extracted from one decided case.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseFrame {
    pub case_data: CaseData,
    pub winning: WinningInterpretation,
    #[serde(default)]
    pub defeated: Vec<InterpretiveStatement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub second_order: Option<DirectiveSpec>,
}

impl CaseFrame {
    pub fn id(&self) -> &str {
        &self.case_data.identifier
    }

    /// Case identifiers cited through the appeal-to-a-prior-case canon of the
    /// winning interpretation.
    pub fn cited_cases(&self) -> impl Iterator<Item = &str> {
        self.winning
            .statement
            .canons
            .iter()
            .filter(|c| c.class == CanonClass::AppealToPriorCase)
            .filter_map(|c| c.cited_case_id.as_deref())
    }

    pub(crate) fn expand_canon_text(&mut self, aliases: &Aliases) -> Result<(), String> {
        self.winning.statement.expand_canon_text(aliases)?;
        for d in &mut self.defeated {
            d.expand_canon_text(aliases)?;
        }
        Ok(())
    }

    /// Renders the frame as rows of a two-column table (part, slot, text), in
    /// the order the parts are defined.
    pub fn table_rows(&self) -> Vec<TableRow> {
        let mut rows = Vec::new();
        let mut push = |part: u8, slot: &'static str, text: String| {
            rows.push(TableRow { part, slot, text })
        };
        let cd = &self.case_data;
        push(1, "Jurisdiction", cd.jurisdiction.clone());
        push(1, "Court", cd.court.clone());
        push(1, "Identifier", cd.identifier.clone());
        push(1, "Date", cd.date.format("%-d %B %Y").to_string());
        push(1, "Procedural", procedural_display(&cd.procedural));

        let w = &self.winning;
        push(2, "Document", w.document.as_ref().map(|d| d.to_string()).unwrap_or_default());
        push(2, "Characteristics", characteristics_display(&w.characteristics));
        push(2, "Interpretandum", w.interpretandum.as_ref().map(|i| i.to_string()).unwrap_or_default());
        push(2, "StateOfAffairs", w.state_of_affairs.join("; "));
        push_statement(&mut push, 2, &w.statement);
        for d in &self.defeated {
            push_statement(&mut push, 3, d);
        }
        if let Some(so) = &self.second_order {
            push(4, "Second-order Directive", so.text.clone());
            push(4, "Context", so.context.clone().unwrap_or_default());
        }
        rows
    }
}

fn push_statement(push: &mut impl FnMut(u8, &'static str, String), part: u8, s: &InterpretiveStatement) {
    push(part, "Interpretans", s.interpretans.clone().unwrap_or_default());
    push(part, "InterpretansType", s.interpretans_type.map(type_display).unwrap_or_default());
    push(part, "Canon", s.canon_display());
}

fn type_display(t: InterpretansType) -> String {
    match t {
        InterpretansType::Intensional => "Intensional",
        InterpretansType::Extensional => "Extensional",
    }
    .to_string()
}

fn procedural_display(p: &Procedural) -> String {
    let status = match p.status {
        ProceduralStatus::Final => "Final",
        ProceduralStatus::NonFinal => "Non-final",
        ProceduralStatus::Unknown => "Unknown",
    };
    match &p.note {
        Some(n) => format!("{status} ({n})"),
        None => status.to_string(),
    }
}

fn characteristics_display(cs: &[Characteristic]) -> String {
    cs.iter()
        .map(|c| match c.category {
            CharacteristicCategory::Goal => format!("goal: {}", c.value),
            _ => c.value.clone(),
        })
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TableRow {
    pub part: u8,
    pub slot: &'static str,
    pub text: String,
}

/// Slots of a frame that can carry an element.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Slot {
    Document,
    Characteristic,
    Interpretandum,
    StateOfAffairs,
    Interpretans,
    InterpretansType,
    Canon,
    SecondOrderDirective,
    Context,
}

impl Slot {
    /// Slots from which the shared element of a prior-case argument is drawn.
    pub const SIMILARITY: [Slot; 4] = [
        Slot::Document,
        Slot::Characteristic,
        Slot::Interpretandum,
        Slot::StateOfAffairs,
    ];

    pub fn is_similarity(self) -> bool {
        Self::SIMILARITY.contains(&self)
    }

    /// Slots holding a set of values rather than a single value.
    pub fn is_multi_valued(self) -> bool {
        matches!(self, Slot::Characteristic | Slot::StateOfAffairs | Slot::Canon)
    }

    pub fn name(self) -> &'static str {
        match self {
            Slot::Document => "document",
            Slot::Characteristic => "characteristic",
            Slot::Interpretandum => "interpretandum",
            Slot::StateOfAffairs => "state-of-affairs",
            Slot::Interpretans => "interpretans",
            Slot::InterpretansType => "interpretans-type",
            Slot::Canon => "canon",
            Slot::SecondOrderDirective => "second-order-directive",
            Slot::Context => "context",
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Origin {
    Winning,
    Defeated,
    CaseLevel,
}

/// One normalized atomic value of a frame.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct SlotElementRef {
    pub slot: Slot,
    pub value: String,
    pub origin: Origin,
}

impl SlotElementRef {
    pub fn new(slot: Slot, value: impl Into<String>, origin: Origin) -> Self {
        Self {
            slot,
            value: value.into(),
            origin,
        }
    }

    /// `(slot, value)`, the part that decides whether two frames share it.
    pub fn key(&self) -> (Slot, &str) {
        (self.slot, &self.value)
    }
}

impl fmt::Display for SlotElementRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}={:?}", self.slot, self.value)
    }
}

/// Anything that can be flattened into slot elements.
pub trait SlotElements {
    fn elements(&self, aliases: &Aliases) -> BTreeSet<SlotElementRef>;
}

/// Flattens a case or problem frame into its normalized elements.
pub fn frame_elements<F: SlotElements + ?Sized>(frame: &F, aliases: &Aliases) -> BTreeSet<SlotElementRef> {
    frame.elements(aliases)
}

pub(crate) struct ElementSink<'a> {
    pub out: BTreeSet<SlotElementRef>,
    pub aliases: &'a Aliases,
}

impl<'a> ElementSink<'a> {
    pub fn new(aliases: &'a Aliases) -> Self {
        Self {
            out: BTreeSet::new(),
            aliases,
        }
    }

    pub fn raw(&mut self, slot: Slot, value: String, origin: Origin) {
        if !value.is_empty() {
            self.out.insert(SlotElementRef::new(slot, value, origin));
        }
    }

    pub fn term(&mut self, slot: Slot, text: &str, origin: Origin) {
        let v = self.aliases.normalize(text);
        self.raw(slot, v, origin);
    }

    pub fn statement(&mut self, s: &InterpretiveStatement, origin: Origin) {
        if let Some(i) = &s.interpretans {
            self.term(Slot::Interpretans, i, origin);
        }
        if let Some(t) = s.interpretans_type {
            self.raw(Slot::InterpretansType, type_display(t).to_lowercase(), origin);
        }
        for c in &s.canons {
            let t = c.token(self.aliases);
            self.raw(Slot::Canon, t, origin);
        }
    }

    pub fn directive(&mut self, d: &DirectiveSpec) {
        self.raw(Slot::SecondOrderDirective, d.class_token(), Origin::CaseLevel);
    }
}

impl SlotElements for CaseFrame {
    fn elements(&self, aliases: &Aliases) -> BTreeSet<SlotElementRef> {
        let mut sink = ElementSink::new(aliases);
        let w = &self.winning;
        if let Some(d) = &w.document {
            sink.term(Slot::Document, &d.citation, Origin::Winning);
        }
        for c in &w.characteristics {
            sink.raw(Slot::Characteristic, c.token(aliases), Origin::Winning);
        }
        if let Some(i) = &w.interpretandum {
            sink.term(Slot::Interpretandum, &i.expression, Origin::Winning);
        }
        for f in &w.state_of_affairs {
            sink.term(Slot::StateOfAffairs, f, Origin::Winning);
        }
        sink.statement(&w.statement, Origin::Winning);
        for d in &self.defeated {
            sink.statement(d, Origin::Defeated);
        }
        if let Some(so) = &self.second_order {
            sink.directive(so);
            if let Some(ctx) = &so.context {
                sink.term(Slot::Context, ctx, Origin::CaseLevel);
            }
        }
        sink.out
    }
}

/// A single validation finding.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Issue {
    pub path: String,
    pub message: String,
}

impl Issue {
    pub fn new(path: impl Into<String>, message: impl Into<String>) -> Self {
        Self {
            path: path.into(),
            message: message.into(),
        }
    }
}

impl fmt::Display for Issue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.path.is_empty() {
            f.write_str(&self.message)
        } else {
            write!(f, "{}: {}", self.path, self.message)
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub errors: Vec<Issue>,
    pub warnings: Vec<Issue>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.errors.is_empty()
    }

    pub(crate) fn error(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.errors.push(Issue::new(path, message));
    }

    pub(crate) fn warn(&mut self, path: impl Into<String>, message: impl Into<String>) {
        self.warnings.push(Issue::new(path, message));
    }

    pub fn merge(&mut self, prefix: &str, other: ValidationReport) {
        let prefixed = |i: Issue| Issue {
            path: if i.path.is_empty() {
                prefix.to_string()
            } else {
                format!("{prefix}.{}", i.path)
            },
            message: i.message,
        };
        self.errors.extend(other.errors.into_iter().map(prefixed));
        self.warnings.extend(other.warnings.into_iter().map(prefixed));
    }
}

fn blank(s: &str) -> bool {
    s.trim().is_empty()
}

pub(crate) fn check_canons(report: &mut ValidationReport, path: &str, canons: &[Canon]) {
    if canons.is_empty() {
        report.error(format!("{path}.canons"), "statement has no canon");
    }
    for (i, c) in canons.iter().enumerate() {
        let p = format!("{path}.canons[{i}]");
        match (c.class, &c.cited_case_id) {
            (CanonClass::AppealToPriorCase, None) => {
                report.error(p, "appeal-to-prior-case canon without cited case")
            }
            (CanonClass::AppealToPriorCase, Some(id)) if blank(id) => {
                report.error(p, "appeal-to-prior-case canon without cited case")
            }
            (CanonClass::AppealToPriorCase, Some(_)) | (_, None) => {}
            (_, Some(_)) => report.error(p, "cited case given on a canon that is not appeal-to-prior-case"),
        }
    }
}

pub(crate) fn check_characteristics(report: &mut ValidationReport, path: &str, cs: &[Characteristic]) {
    let mut seen = BTreeSet::new();
    for (i, c) in cs.iter().enumerate() {
        if blank(&c.value) {
            report.error(format!("{path}[{i}]"), "empty characteristic value");
        } else if !seen.insert((c.category, fold(&c.value))) {
            report.error(format!("{path}[{i}]"), "duplicate characteristic");
        }
    }
}

pub(crate) fn check_directive(report: &mut ValidationReport, path: &str, d: &DirectiveSpec) {
    if blank(&d.text) {
        report.error(format!("{path}.text"), "empty directive text");
    }
    let mut seen = BTreeSet::new();
    for (i, tier) in d.tiers.iter().enumerate() {
        for class in tier {
            if !seen.insert(*class) {
                report.error(format!("{path}.tiers[{i}]"), format!("canon class {class} appears in more than one tier"));
            }
        }
    }
    let class_missing = d.directive_class.as_deref().is_none_or(blank);
    if d.kind.states_preference() && d.tiers.is_empty() && class_missing {
        report.error(format!("{path}.directiveClass"), "preference directive without tiers needs a directive class");
    }
}

fn check_statement(report: &mut ValidationReport, path: &str, s: &InterpretiveStatement, winning: bool) {
    match &s.interpretans {
        Some(i) if blank(i) => report.error(format!("{path}.interpretans"), "empty interpretans"),
        Some(_) => {}
        None if winning => report.warn(format!("{path}.interpretans"), "interpretans not recorded"),
        None => report.error(format!("{path}.interpretans"), "defeated interpretation without interpretans"),
    }
    if s.interpretans_type.is_none() {
        report.warn(format!("{path}.interpretansType"), "interpretans type not recorded");
    }
    check_canons(report, path, &s.canons);
}

/// Checks every frame invariant. Missing optional slots become warnings.
pub fn validate_frame(frame: &CaseFrame) -> ValidationReport {
    let mut r = ValidationReport::default();
    let cd = &frame.case_data;
    if blank(&cd.identifier) {
        r.error("caseData.identifier", "missing case identifier");
    }
    if blank(&cd.jurisdiction) {
        r.error("caseData.jurisdiction", "missing jurisdiction");
    }
    if blank(&cd.court) {
        r.error("caseData.court", "missing court");
    }

    let w = &frame.winning;
    match &w.document {
        Some(d) if blank(&d.citation) => r.error("winning.document.citation", "empty document citation"),
        Some(_) => {}
        None => r.warn("winning.document", "document not recorded"),
    }
    match &w.interpretandum {
        Some(i) if blank(&i.expression) => r.error("winning.interpretandum.expression", "empty interpretandum"),
        Some(_) => {}
        None => r.warn("winning.interpretandum", "interpretandum not recorded"),
    }
    check_characteristics(&mut r, "winning.characteristics", &w.characteristics);
    for (i, f) in w.state_of_affairs.iter().enumerate() {
        if blank(f) {
            r.error(format!("winning.stateOfAffairs[{i}]"), "empty fact");
        }
    }
    check_statement(&mut r, "winning.statement", &w.statement, true);

    for (i, d) in frame.defeated.iter().enumerate() {
        let path = format!("defeated[{i}]");
        check_statement(&mut r, &path, d, false);
        let same = |a: &Option<String>, b: &Option<String>| match (a, b) {
            (Some(a), Some(b)) => fold(a) == fold(b),
            _ => false,
        };
        if same(&d.interpretans, &w.statement.interpretans) && d.polarity == w.statement.polarity {
            r.error(path, "defeated interpretation repeats the winning one");
        }
    }

    match &frame.second_order {
        Some(so) => check_directive(&mut r, "secondOrder", so),
        None => r.warn("secondOrder", "no second-order directive"),
    }
    r
}
