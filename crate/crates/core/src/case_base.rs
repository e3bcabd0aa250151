//! Collections of Case Frames and the citation structure between them.
//!
//! A [`CaseBase`] is an immutable snapshot: loading validates every frame,
//! rejects citation edges that run forward in time, and builds the lookup
//! indexes. Adding a case produces a new snapshot.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use chrono::NaiveDate;
use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::frame::{validate_frame, CanonClass, CaseFrame, Issue, ValidationReport};
use crate::normalize::{fold, Aliases};

/// Schema tag written into every interchange document.
pub const SCHEMA: &str = "case-frame/1";

/// Thresholds for the date- and citation-based critical questions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", default)]
pub struct CqConfig {
    pub obsolescence_years: u32,
    pub recency_years: u32,
    pub min_citing_cases: u32,
    /// Pairs of directive classes that do not conflict. Any two distinct
    /// classes not listed here are treated as incompatible.
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub compatible_directives: Vec<[String; 2]>,
}

impl Default for CqConfig {
    fn default() -> Self {
        Self {
            obsolescence_years: 20,
            recency_years: 2,
            min_citing_cases: 2,
            compatible_directives: Vec::new(),
        }
    }
}

impl CqConfig {
    pub fn directives_conflict(&self, a: &str, b: &str) -> bool {
        let (a, b) = (fold(a), fold(b));
        if a == b {
            return false;
        }
        !self
            .compatible_directives
            .iter()
            .any(|[x, y]| (fold(x) == a && fold(y) == b) || (fold(x) == b && fold(y) == a))
    }
}

/// Whether unknown fields in interchange documents are an error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum ParseMode {
    #[default]
    Strict,
    Lenient,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
struct CaseBaseDocument {
    schema: String,
    #[serde(default)]
    aliases: Aliases,
    #[serde(default)]
    court_hierarchies: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default)]
    config: CqConfig,
    #[serde(default)]
    cases: Vec<CaseFrame>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum LoadIssueKind {
    InvalidFrame,
    DuplicateIdentifier,
    DateMonotonicity,
    CitationCycle,
    InvalidConfig,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LoadIssue {
    pub kind: LoadIssueKind,
    #[serde(flatten)]
    pub issue: Issue,
}

impl fmt::Display for LoadIssue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.issue.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CaseBaseError {
    #[error("cannot parse case base: {0}")]
    Parse(String),
    #[error("unknown fields: {}", .0.join(", "))]
    UnknownFields(Vec<String>),
    #[error("unsupported schema {0:?}, expected {SCHEMA:?}")]
    Schema(String),
    #[error("case base rejected with {} error(s): {}", .0.len(), join_issues(.0))]
    Invalid(Vec<LoadIssue>),
    #[error("citation cycle through {0}")]
    Cycle(String),
}

fn join_issues(issues: &[LoadIssue]) -> String {
    issues.iter().map(|i| i.to_string()).collect::<Vec<_>>().join("; ")
}

impl CaseBaseError {
    pub fn issues(&self) -> &[LoadIssue] {
        match self {
            Self::Invalid(i) => i,
            _ => &[],
        }
    }
}

/// Parses JSON into `T`, rejecting unknown fields in strict mode.
pub fn parse_document<T: serde::de::DeserializeOwned>(source: &str, mode: ParseMode) -> Result<T, ParseFailure> {
    let mut unknown = Vec::new();
    let mut de = serde_json::Deserializer::from_str(source);
    let value: T = serde_ignored::deserialize(&mut de, |path| unknown.push(path.to_string()))
        .map_err(|e| ParseFailure::Syntax(e.to_string()))?;
    de.end().map_err(|e| ParseFailure::Syntax(e.to_string()))?;
    if mode == ParseMode::Strict && !unknown.is_empty() {
        return Err(ParseFailure::UnknownFields(unknown));
    }
    Ok(value)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParseFailure {
    #[error("{0}")]
    Syntax(String),
    #[error("unknown fields: {}", .0.join(", "))]
    UnknownFields(Vec<String>),
}

impl From<ParseFailure> for CaseBaseError {
    fn from(f: ParseFailure) -> Self {
        match f {
            ParseFailure::Syntax(s) => Self::Parse(s),
            ParseFailure::UnknownFields(u) => Self::UnknownFields(u),
        }
    }
}

/// Conjunctive query over a case base. Unset fields match everything.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct CaseQuery {
    pub interpretandum: Option<String>,
    pub document_citation: Option<String>,
    pub jurisdiction: Option<String>,
    pub canon_class: Option<CanonClass>,
    pub decided_before: Option<NaiveDate>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CitationGraph {
    /// `(citing, cited)` pairs.
    pub edges: Vec<(String, String)>,
    /// Citations whose target is not in the base.
    pub dangling: Vec<(String, String)>,
}

/// A chain of cases each citing the next, newest first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OpinionLine {
    pub chain: Vec<String>,
}

impl fmt::Display for OpinionLine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.chain.join(" -> "))
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Indexes {
    interpretandum: BTreeMap<String, Vec<usize>>,
    citation: BTreeMap<String, Vec<usize>>,
    jurisdiction: BTreeMap<String, Vec<usize>>,
    canon: BTreeMap<CanonClass, Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseBase {
    schema_version: String,
    aliases: Aliases,
    court_hierarchies: BTreeMap<String, Vec<Vec<String>>>,
    config: CqConfig,
    cases: IndexMap<String, CaseFrame>,
    indexes: Indexes,
    citations: CitationGraph,
    warnings: Vec<Issue>,
}

impl Default for CaseBase {
    fn default() -> Self {
        Self::build(CaseBaseDocument {
            schema: SCHEMA.to_string(),
            aliases: Aliases::default(),
            court_hierarchies: BTreeMap::new(),
            config: CqConfig::default(),
            cases: Vec::new(),
        })
        .expect("empty case base is valid")
    }
}

/// Parses and validates a case-base document.
pub fn load_case_base(source: &str, mode: ParseMode) -> Result<CaseBase, CaseBaseError> {
    CaseBase::load(source, mode)
}

impl CaseBase {
    pub fn load(source: &str, mode: ParseMode) -> Result<Self, CaseBaseError> {
        let doc: CaseBaseDocument = parse_document(source, mode)?;
        Self::build(doc)
    }

    fn build(mut doc: CaseBaseDocument) -> Result<Self, CaseBaseError> {
        if doc.schema != SCHEMA {
            return Err(CaseBaseError::Schema(doc.schema));
        }
        let mut issues = Vec::new();
        let mut warnings = Vec::new();
        let issue = |kind, path: String, message: String| LoadIssue {
            kind,
            issue: Issue::new(path, message),
        };

        let config = &doc.config;
        if config.recency_years > config.obsolescence_years {
            issues.push(issue(
                LoadIssueKind::InvalidConfig,
                "config".into(),
                "recencyYears exceeds obsolescenceYears".into(),
            ));
        }
        for (j, tiers) in &doc.court_hierarchies {
            if tiers.iter().flatten().any(|p| p.trim().is_empty()) {
                issues.push(issue(
                    LoadIssueKind::InvalidConfig,
                    format!("courtHierarchies.{j}"),
                    "empty court pattern".into(),
                ));
            }
        }

        let mut cases = IndexMap::new();
        for (i, mut frame) in doc.cases.drain(..).enumerate() {
            let path = format!("cases[{i}]");
            if let Err(e) = frame.expand_canon_text(&doc.aliases) {
                issues.push(issue(LoadIssueKind::InvalidFrame, path.clone(), e));
            }
            let mut report = ValidationReport::default();
            report.merge(&path, validate_frame(&frame));
            issues.extend(report.errors.into_iter().map(|e| LoadIssue {
                kind: LoadIssueKind::InvalidFrame,
                issue: e,
            }));
            warnings.extend(report.warnings);
            let id = frame.id().to_string();
            if cases.contains_key(&id) {
                issues.push(issue(
                    LoadIssueKind::DuplicateIdentifier,
                    path,
                    format!("duplicate case identifier {id:?}"),
                ));
            } else {
                cases.insert(id, frame);
            }
        }

        let citations = citation_edges(&cases);
        for (from, to) in &citations.dangling {
            warnings.push(Issue::new(from.clone(), format!("cites unknown case {to:?}")));
        }
        for (from, to) in &citations.edges {
            let (a, b) = (&cases[from], &cases[to]);
            if a.case_data.date <= b.case_data.date {
                issues.push(issue(
                    LoadIssueKind::DateMonotonicity,
                    from.clone(),
                    format!(
                        "cites {to:?} decided on {} but was itself decided on {}",
                        b.case_data.date, a.case_data.date
                    ),
                ));
            }
        }
        if let Some(node) = find_cycle(&cases, &citations.edges) {
            issues.push(issue(
                LoadIssueKind::CitationCycle,
                node.clone(),
                "citation cycle".into(),
            ));
        }
        if !issues.is_empty() {
            return Err(CaseBaseError::Invalid(issues));
        }

        let indexes = build_indexes(&cases, &doc.aliases);
        Ok(Self {
            schema_version: doc.schema,
            aliases: doc.aliases,
            court_hierarchies: doc.court_hierarchies,
            config: doc.config,
            cases,
            indexes,
            citations,
            warnings,
        })
    }

    fn to_document(&self) -> CaseBaseDocument {
        CaseBaseDocument {
            schema: self.schema_version.clone(),
            aliases: self.aliases.clone(),
            court_hierarchies: self.court_hierarchies.clone(),
            config: self.config.clone(),
            cases: self.cases.values().cloned().collect(),
        }
    }

    /// Serializes to the interchange format. Case order is preserved.
    pub fn save(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_document()).expect("case base serializes");
        s.push('\n');
        s
    }

    /// Returns a new snapshot with `frame` added.
    pub fn with_case(&self, frame: CaseFrame) -> Result<Self, CaseBaseError> {
        let mut doc = self.to_document();
        doc.cases.push(frame);
        Self::build(doc)
    }

    pub fn schema_version(&self) -> &str {
        &self.schema_version
    }

    pub fn aliases(&self) -> &Aliases {
        &self.aliases
    }

    pub fn config(&self) -> &CqConfig {
        &self.config
    }

    pub fn warnings(&self) -> &[Issue] {
        &self.warnings
    }

    pub fn len(&self) -> usize {
        self.cases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cases.is_empty()
    }

    pub fn get(&self, id: &str) -> Option<&CaseFrame> {
        self.cases.get(id)
    }

    /// Cases in document order.
    pub fn cases(&self) -> impl Iterator<Item = &CaseFrame> {
        self.cases.values()
    }

    pub fn normalize(&self, text: &str) -> String {
        self.aliases.normalize(text)
    }

    pub fn query(&self, q: &CaseQuery) -> Vec<&CaseFrame> {
        let ix = &self.indexes;
        let mut candidates: Option<BTreeSet<usize>> = None;
        let mut narrow = |hits: Option<&Vec<usize>>| {
            let hits: BTreeSet<usize> = hits.into_iter().flatten().copied().collect();
            candidates = Some(match candidates.take() {
                Some(c) => c.intersection(&hits).copied().collect(),
                None => hits,
            });
        };
        if let Some(i) = &q.interpretandum {
            narrow(ix.interpretandum.get(&self.normalize(i)));
        }
        if let Some(c) = &q.document_citation {
            narrow(ix.citation.get(&self.normalize(c)));
        }
        if let Some(j) = &q.jurisdiction {
            narrow(ix.jurisdiction.get(&self.normalize(j)));
        }
        if let Some(c) = &q.canon_class {
            narrow(ix.canon.get(c));
        }
        let mut out: Vec<&CaseFrame> = match candidates {
            Some(set) => set.into_iter().map(|i| &self.cases[i]).collect(),
            None => self.cases.values().collect(),
        };
        if let Some(before) = q.decided_before {
            out.retain(|c| c.case_data.date < before);
        }
        out.sort_by(|a, b| {
            b.case_data
                .date
                .cmp(&a.case_data.date)
                .then_with(|| a.id().cmp(b.id()))
        });
        out
    }

    pub fn citation_graph(&self) -> &CitationGraph {
        &self.citations
    }

    /// Number of distinct cases in the base citing `id`.
    pub fn citing_count(&self, id: &str) -> usize {
        self.citations
            .edges
            .iter()
            .filter(|(_, to)| to == id)
            .map(|(from, _)| from)
            .collect::<BTreeSet<_>>()
            .len()
    }

    /// All maximal citation paths, newest case first, of length at least two.
    pub fn lines_of_opinion(&self) -> Result<Vec<OpinionLine>, CaseBaseError> {
        lines_of_opinion(&self.cases, &self.citations.edges)
    }

    /// Rank tier of `court` within `jurisdiction` (0 = highest), if configured.
    pub fn court_rank(&self, jurisdiction: &str, court: &str) -> Option<usize> {
        let j = self.normalize(jurisdiction);
        let tiers = self
            .court_hierarchies
            .iter()
            .find(|(k, _)| self.normalize(k) == j)
            .map(|(_, v)| v)?;
        let court = fold(court);
        tiers
            .iter()
            .position(|tier| tier.iter().any(|p| wildcard_match(&fold(p), &court)))
    }
}

/// Matches `text` against `pattern`, where `*` stands for any run of characters.
fn wildcard_match(pattern: &str, text: &str) -> bool {
    let parts: Vec<&str> = pattern.split('*').collect();
    if parts.len() == 1 {
        return pattern == text;
    }
    let (first, last) = (parts[0], parts[parts.len() - 1]);
    if !text.starts_with(first) || text.len() < first.len() + last.len() || !text.ends_with(last) {
        return false;
    }
    let mut rest = &text[first.len()..text.len() - last.len()];
    for mid in &parts[1..parts.len() - 1] {
        match rest.find(mid) {
            Some(at) => rest = &rest[at + mid.len()..],
            None => return false,
        }
    }
    true
}

fn build_indexes(cases: &IndexMap<String, CaseFrame>, aliases: &Aliases) -> Indexes {
    let mut ix = Indexes::default();
    for (i, c) in cases.values().enumerate() {
        let w = &c.winning;
        if let Some(t) = &w.interpretandum {
            ix.interpretandum.entry(aliases.normalize(&t.expression)).or_default().push(i);
        }
        if let Some(d) = &w.document {
            ix.citation.entry(aliases.normalize(&d.citation)).or_default().push(i);
        }
        ix.jurisdiction
            .entry(aliases.normalize(&c.case_data.jurisdiction))
            .or_default()
            .push(i);
        let classes: BTreeSet<CanonClass> = w.statement.canons.iter().map(|c| c.class).collect();
        for class in classes {
            ix.canon.entry(class).or_default().push(i);
        }
    }
    ix
}

fn citation_edges(cases: &IndexMap<String, CaseFrame>) -> CitationGraph {
    let mut g = CitationGraph::default();
    let mut seen = BTreeSet::new();
    for c in cases.values() {
        for cited in c.cited_cases() {
            let edge = (c.id().to_string(), cited.to_string());
            if !seen.insert(edge.clone()) {
                continue;
            }
            if cases.contains_key(cited) {
                g.edges.push(edge);
            } else {
                g.dangling.push(edge);
            }
        }
    }
    g
}

fn adjacency<'a>(
    cases: &'a IndexMap<String, CaseFrame>,
    edges: &'a [(String, String)],
) -> IndexMap<&'a str, Vec<&'a str>> {
    let mut adj: IndexMap<&str, Vec<&str>> = cases.keys().map(|k| (k.as_str(), Vec::new())).collect();
    for (from, to) in edges {
        if let Some(v) = adj.get_mut(from.as_str()) {
            v.push(to.as_str());
        }
    }
    adj
}

fn find_cycle(cases: &IndexMap<String, CaseFrame>, edges: &[(String, String)]) -> Option<String> {
    #[derive(Clone, Copy, PartialEq)]
    enum Mark {
        New,
        Active,
        Done,
    }
    let adj = adjacency(cases, edges);
    let mut marks: BTreeMap<&str, Mark> = adj.keys().map(|k| (*k, Mark::New)).collect();

    fn visit<'a>(
        n: &'a str,
        adj: &IndexMap<&'a str, Vec<&'a str>>,
        marks: &mut BTreeMap<&'a str, Mark>,
    ) -> Option<String> {
        marks.insert(n, Mark::Active);
        for &m in &adj[n] {
            match marks[m] {
                Mark::Active => return Some(m.to_string()),
                Mark::New => {
                    if let Some(c) = visit(m, adj, marks) {
                        return Some(c);
                    }
                }
                Mark::Done => {}
            }
        }
        marks.insert(n, Mark::Done);
        None
    }

    for n in adj.keys() {
        if marks[n] == Mark::New {
            if let Some(c) = visit(n, &adj, &mut marks) {
                return Some(c);
            }
        }
    }
    None
}

fn lines_of_opinion(
    cases: &IndexMap<String, CaseFrame>,
    edges: &[(String, String)],
) -> Result<Vec<OpinionLine>, CaseBaseError> {
    if let Some(node) = find_cycle(cases, edges) {
        return Err(CaseBaseError::Cycle(node));
    }
    let adj = adjacency(cases, edges);
    let cited: BTreeSet<&str> = edges.iter().map(|(_, to)| to.as_str()).collect();
    let mut lines = Vec::new();

    fn walk<'a>(n: &'a str, adj: &IndexMap<&'a str, Vec<&'a str>>, path: &mut Vec<&'a str>, out: &mut Vec<OpinionLine>) {
        path.push(n);
        if adj[n].is_empty() {
            out.push(OpinionLine {
                chain: path.iter().map(|s| s.to_string()).collect(),
            });
        } else {
            for &m in &adj[n] {
                walk(m, adj, path, out);
            }
        }
        path.pop();
    }

    for (&n, out) in &adj {
        if !cited.contains(n) && !out.is_empty() {
            walk(n, &adj, &mut Vec::new(), &mut lines);
        }
    }
    Ok(lines)
}
