//! JSON and Graphviz renderings of a labelled framework.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde_json::{json, Value};

use super::argument::{ArgumentId, ArgumentKind, AttackType};
use super::framework::ArgumentationFramework;
use super::semantics::Label;

pub fn to_json(af: &ArgumentationFramework) -> Value {
    json!({
        "arguments": af.arguments,
        "defeats": af.defeats,
        "labeling": af.labeling,
        "excluded": af.excluded.iter().map(|a| &a.id).collect::<Vec<_>>(),
    })
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"").replace('\n', "\\n")
}

/// DOT graph. Node outline encodes the label: IN solid, OUT dashed, UNDEC
/// dotted. Undercuts are drawn as dashed edges tagged with their CQ.
pub fn to_dot(af: &ArgumentationFramework) -> String {
    to_dot_with(af, &af.labeling, "framework")
}

/// DOT graph of `af` under another labelling, e.g. a preferred one.
pub fn to_dot_with(af: &ArgumentationFramework, labeling: &BTreeMap<ArgumentId, Label>, name: &str) -> String {
    let mut out = format!("digraph {name} {{\n  rankdir=BT;\n  node [shape=box, fontname=\"Helvetica\"];\n");
    for a in &af.arguments {
        let label = labeling.get(&a.id).copied().unwrap_or(Label::Undec);
        let style = match label {
            Label::In => "solid",
            Label::Out => "dashed",
            Label::Undec => "dotted",
        };
        let shape = match a.kind {
            ArgumentKind::CqAttacker => ", shape=ellipse",
            _ => "",
        };
        let _ = writeln!(
            out,
            "  \"{}\" [label=\"{}\\n[{}]\", style={style}{shape}];",
            escape(a.id.as_str()),
            escape(&a.label()),
            label.as_str()
        );
    }
    for d in &af.defeats {
        let attrs = match (d.kind, d.cq) {
            (AttackType::Undercut, Some(cq)) => format!(" [style=dashed, label=\"{cq}\"]"),
            (AttackType::Undercut, None) => " [style=dashed]".to_string(),
            (AttackType::Rebuttal, _) => String::new(),
        };
        let _ = writeln!(out, "  \"{}\" -> \"{}\"{attrs};", escape(d.attacker.as_str()), escape(d.target.as_str()));
    }
    out.push_str("}\n");
    out
}
