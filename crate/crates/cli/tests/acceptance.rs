//! Acceptance criteria AC-1 to AC-7. Runs without the libtest harness so
//! that one PASS/FAIL line per criterion is always printed.

use std::collections::{BTreeMap, BTreeSet};
use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use caseframe::case_base::LoadIssueKind;
use caseframe::engine::{
    analyze, auto_critical_attacks, counterexample_search, semantics, shared_elements, synthesize_arguments, CqTag,
    Extras, Label,
};
use caseframe::frame::{Polarity, Slot};
use caseframe::session::{AssertionRequest, AssertionTag};
use caseframe::{fixtures, CaseBase, CaseBaseError, ParseMode, ProblemFrame, Session};
use chrono::{Datelike, NaiveDate};
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// AC-1 ---------------------------------------------------------------------

/// The income-tax ruling as published, row by row.
const TABLE1_ROWS: [(&str, &str); 17] = [
    ("Jurisdiction", "Poland"),
    ("Court", "Supreme Administrative Court"),
    ("Identifier", "II FSK 2051/10"),
    ("Date", "21 April 2011"),
    ("Procedural", "Final"),
    (
        "Document",
        "Regulation of the Council of Ministers of 14 September 2004 (Journal of Laws No. 218, item 2209)",
    ),
    (
        "Characteristics",
        "Tax law, income tax exemption, goal: improvement of the economic situation in the region",
    ),
    ("Interpretandum", "Expression \u{201c}incurring the cost\u{201d}, par. 4 of the Regulation"),
    ("StateOfAffairs", "Company documented the cost and intends to apply for tax exemption"),
    ("Interpretans", "Documenting and recording the cost in the company's books"),
    ("InterpretansType", "Extensional"),
    ("Canon", "Systemic, historical, teleological"),
    ("Interpretans", "Incurring actual cost"),
    ("InterpretansType", "Extensional"),
    ("Canon", "Linguistic"),
    (
        "Second-order Directive",
        "When interpreting the law, the interpreter must not completely ignore the systemic or functional interpretation by limiting himself solely to the linguistic interpretation of a single provision.",
    ),
    ("Context", "Coherence with accounting regulation"),
];

fn ac1() -> Outcome {
    let start = Instant::now();
    let base = CaseBase::load(fixtures::TABLE1_JSON, ParseMode::Strict).map_err(|e| e.to_string())?;
    let frame = base.get("II FSK 2051/10").ok_or("case missing")?;
    let report = caseframe::validate_frame(frame);
    check(report.errors.is_empty(), || format!("{} validation errors", report.errors.len()))?;
    let saved = base.save();
    let reloaded = CaseBase::load(&saved, ParseMode::Strict).map_err(|e| e.to_string())?;
    check(reloaded == base, || "reloaded base differs".into())?;
    check(reloaded.save() == saved, || "second save differs".into())?;
    let rows = reloaded.get("II FSK 2051/10").ok_or("case lost")?.table_rows();
    check(rows.len() == TABLE1_ROWS.len(), || format!("{} rows", rows.len()))?;
    for (row, (slot, text)) in rows.iter().zip(TABLE1_ROWS) {
        check(row.slot == slot && row.text == text, || format!("{}: {:?} != {:?}", slot, row.text, text))?;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(1), || format!("took {elapsed:?}"))?;
    Ok(format!("{} rows identical after load/save/reload, {:.1} ms", rows.len(), elapsed.as_secs_f64() * 1e3))
}

// AC-2 ---------------------------------------------------------------------

fn ac2() -> Outcome {
    let base = fixtures::table2();
    let p = fixtures::table2_problem();
    check(base.len() == 5, || format!("{} cases", base.len()))?;
    for c in base.cases() {
        let shared = shared_elements(c, &p, base.aliases());
        let chars = shared.iter().filter(|e| e.slot == Slot::Characteristic).count();
        check(shared.len() == 1 && chars == 1, || format!("{} shares {} elements", c.id(), shared.len()))?;
    }
    let analysis = analyze(&p, &base, &Extras::default()).map_err(|e| e.to_string())?;
    let af = &analysis.framework;
    let directive: Vec<_> = af
        .arguments
        .iter()
        .filter(|a| a.beta.as_ref().is_some_and(|b| b.slot == Slot::SecondOrderDirective))
        .collect();
    let class = |a: &caseframe::engine::Argument| {
        base.get(a.cited_case_id.as_deref().unwrap())
            .and_then(|c| c.second_order.as_ref())
            .and_then(|d| d.directive_class.clone())
            .unwrap_or_default()
    };
    let cq8: BTreeSet<(String, String)> = af
        .defeats
        .iter()
        .filter(|d| d.cq == Some(CqTag::Cq8))
        .map(|d| (d.attacker.to_string(), d.target.to_string()))
        .collect();
    let mut pairs = 0;
    for (i, a) in directive.iter().enumerate() {
        for b in &directive[i + 1..] {
            if class(a) == class(b) || !base.config().directives_conflict(&class(a), &class(b)) {
                continue;
            }
            let mutual = cq8.contains(&(a.id.to_string(), b.id.to_string()))
                && cq8.contains(&(b.id.to_string(), a.id.to_string()));
            check(mutual, || format!("no mutual CQ8 between {} and {}", a.id, b.id))?;
            for x in [a, b] {
                check(af.label(&x.id) == Some(Label::Undec), || format!("{} is {:?}", x.id, af.label(&x.id)))?;
            }
            pairs += 1;
        }
    }
    check(pairs >= 1 && directive.len() >= 2, || "fewer than two conflicting directive arguments".into())?;
    Ok(format!(
        "{} directive-transfer arguments, {} conflicting pairs with mutual CQ8, all UNDEC",
        directive.len(),
        pairs
    ))
}

// AC-3 ---------------------------------------------------------------------

/// Grounded labelling by brute force: the complete labelling with the
/// smallest IN set among all 3^n labellings.
fn brute_force_grounded(n: usize, edges: &[(usize, usize)]) -> Vec<Label> {
    let attackers: Vec<Vec<usize>> = (0..n).map(|x| edges.iter().filter(|e| e.1 == x).map(|e| e.0).collect()).collect();
    let mut best: Option<Vec<Label>> = None;
    let total = 3usize.pow(n as u32);
    for code in 0..total {
        let mut c = code;
        let lab: Vec<Label> = (0..n)
            .map(|_| {
                let l = [Label::In, Label::Out, Label::Undec][c % 3];
                c /= 3;
                l
            })
            .collect();
        let complete = (0..n).all(|x| {
            let all_out = attackers[x].iter().all(|&a| lab[a] == Label::Out);
            let some_in = attackers[x].iter().any(|&a| lab[a] == Label::In);
            (lab[x] == Label::In) == all_out && (lab[x] == Label::Out) == some_in
        });
        if !complete {
            continue;
        }
        let ins = lab.iter().filter(|l| **l == Label::In).count();
        if best.as_ref().is_none_or(|b| ins < b.iter().filter(|l| **l == Label::In).count()) {
            best = Some(lab);
        }
    }
    best.expect("a complete labelling always exists")
}

fn ac3() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut agree = 0;
    for trial in 0..200 {
        let n = rng.random_range(1..=9);
        let density: f64 = rng.random_range(0.05..0.45);
        let mut edges = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if rng.random_bool(density) {
                    edges.push((a, b));
                }
            }
        }
        let got = semantics::grounded(n, &edges);
        let want = brute_force_grounded(n, &edges);
        check(got == want, || format!("trial {trial}: n={n} edges={edges:?} got {got:?} want {want:?}"))?;
        agree += 1;
    }
    let elapsed = start.elapsed();
    check(elapsed < Duration::from_secs(10), || format!("took {elapsed:?}"))?;
    Ok(format!("{agree}/200 random frameworks agree with brute force, {:.2} s", elapsed.as_secs_f64()))
}

// AC-4 ---------------------------------------------------------------------

const COURTS: [&str; 3] = [
    "Supreme Administrative Court",
    "Voivodeship Administrative Court in Gdansk",
    "District Court",
];
const STATUSES: [&str; 3] = ["final", "non-final", "unknown"];
const CATEGORY_POOLS: [(&str, [&str; 3]); 3] = [
    ("branch", ["tax law", "criminal law", "civil law"]),
    ("provision-type", ["exemption", "definition", "sanction"]),
    ("goal", ["revenue", "fairness", "growth"]),
];

fn random_date(rng: &mut ChaCha8Rng, from: i32, to: i32) -> NaiveDate {
    let y = rng.random_range(from..=to);
    let m = rng.random_range(1..=12);
    let d = rng.random_range(1..=28 + u32::from(m == 2 && y % 4 == 0) + if m == 2 { 0 } else { 2 });
    NaiveDate::from_ymd_opt(y, m, d).unwrap_or_else(|| NaiveDate::from_ymd_opt(y, m, 28).unwrap())
}

fn random_characteristics(rng: &mut ChaCha8Rng) -> (Vec<Value>, BTreeMap<&'static str, BTreeSet<&'static str>>) {
    let mut json = Vec::new();
    let mut sets = BTreeMap::new();
    for (cat, pool) in CATEGORY_POOLS {
        let k = rng.random_range(0..=2);
        let chosen: BTreeSet<&str> = pool.choose_multiple(rng, k).copied().collect();
        for v in &chosen {
            json.push(json!({ "category": cat, "value": v }));
        }
        sets.insert(cat, chosen);
    }
    (json, sets)
}

fn hierarchy() -> Value {
    json!({ "Poland": [["Supreme Administrative Court"], ["Voivodeship Administrative Court*"]] })
}

fn case_json(id: &str, jurisdiction: &str, court: &str, date: NaiveDate, status: &str, winning: Value) -> Value {
    json!({
        "caseData": {
            "jurisdiction": jurisdiction,
            "court": court,
            "identifier": id,
            "date": date.to_string(),
            "procedural": { "status": status }
        },
        "winning": winning
    })
}

struct CqTally {
    trials: usize,
    fired: BTreeMap<CqTag, usize>,
}

fn ac4_auto(rng: &mut ChaCha8Rng, tally: &mut CqTally) -> Result<(), String> {
    let jurisdictions = ["Poland", "Germany"];
    let c_j = *jurisdictions.choose(rng).unwrap();
    let c_court = *COURTS.choose(rng).unwrap();
    let c_date = random_date(rng, 1980, 2030);
    let status = *STATUSES.choose(rng).unwrap();
    let (c_chars, c_sets) = random_characteristics(rng);
    let winning = json!({
        "characteristics": c_chars,
        "stateOfAffairs": ["the shared fact"],
        "statement": { "interpretans": "m one", "canons": [{ "class": "linguistic" }] }
    });
    let doc = json!({
        "schema": "case-frame/1",
        "courtHierarchies": hierarchy(),
        "cases": [case_json("C 1/00", c_j, c_court, c_date, status, winning)]
    });
    let base = CaseBase::load(&doc.to_string(), ParseMode::Strict).map_err(|e| e.to_string())?;

    let p_j = *["Poland", "Germany", "poland"].choose(rng).unwrap();
    let p_court = *COURTS.choose(rng).unwrap();
    let as_of = random_date(rng, 1980, 2060);
    let (p_chars, p_sets) = random_characteristics(rng);
    let p: ProblemFrame = serde_json::from_value(json!({
        "forum": { "jurisdiction": p_j, "court": p_court },
        "asOfDate": as_of.to_string(),
        "characteristics": p_chars,
        "stateOfAffairs": ["the shared fact"]
    }))
    .map_err(|e| e.to_string())?;

    let arg = synthesize_arguments(&p, &base)
        .into_iter()
        .find(|a| a.beta.as_ref().is_some_and(|b| b.slot == Slot::Interpretans))
        .ok_or("no interpretans argument")?;
    let tags = auto_critical_attacks(&arg, &p, &base).tags();

    let cq4 = c_j.to_lowercase() != p_j.to_lowercase();
    let cq7 = status != "final";
    let limit = (c_date.year() + 20, c_date.month(), c_date.day());
    let cq5a = (as_of.year(), as_of.month(), as_of.day()) > limit;
    let expect_2 = |cat: &str| {
        let (a, b) = (&c_sets[cat], &p_sets[cat]);
        !a.is_empty() && !b.is_empty() && a.intersection(b).next().is_none()
    };
    let ctx = || format!("case {c_j}/{c_court}/{c_date}/{status} problem {p_j}/{p_court}/{as_of}: {tags:?}");
    check(tags.contains(&CqTag::Cq4) == cq4, || format!("CQ4 {}", ctx()))?;
    check(tags.contains(&CqTag::Cq7) == cq7, || format!("CQ7 {}", ctx()))?;
    check(tags.contains(&CqTag::Cq5a) == cq5a, || format!("CQ5a {}", ctx()))?;
    check(!(tags.contains(&CqTag::Cq5a) && tags.contains(&CqTag::Cq5b)), || format!("CQ5a+CQ5b {}", ctx()))?;
    check(tags.contains(&CqTag::Cq2a) == expect_2("branch"), || format!("CQ2a {}", ctx()))?;
    check(tags.contains(&CqTag::Cq2b) == expect_2("provision-type"), || format!("CQ2b {}", ctx()))?;
    check(tags.contains(&CqTag::Cq2c) == expect_2("goal"), || format!("CQ2c {}", ctx()))?;
    tally.trials += 1;
    for t in tags {
        *tally.fired.entry(t).or_default() += 1;
    }
    Ok(())
}

const DOCS: [&str; 2] = ["act a", "act b"];
const FACTS: [&str; 4] = ["fact one", "fact two", "fact three", "fact four"];
const CHARS: [(&str, &str); 3] = [("branch", "tax law"), ("branch", "civil law"), ("other", "review")];
const MEANINGS: [&str; 2] = ["meaning one", "meaning two"];
const CANONS: [&str; 2] = ["linguistic", "systemic"];

/// A random frame in the CQ3 universe, with the keys an independent reading
/// of it yields: (similarity keys, all keys).
struct Drawn {
    winning: Value,
    similarity: BTreeSet<(String, String)>,
    all: BTreeSet<(String, String)>,
}

fn draw(rng: &mut ChaCha8Rng, with_statement: bool) -> Drawn {
    let mut similarity = BTreeSet::new();
    let mut winning = serde_json::Map::new();
    if rng.random_bool(0.5) {
        let d = *DOCS.choose(rng).unwrap();
        winning.insert("document".into(), json!({ "title": "", "citation": d }));
        similarity.insert(("document".to_string(), d.to_string()));
    }
    let k = rng.random_range(0..=2);
    let chars: Vec<_> = CHARS.choose_multiple(rng, k).copied().collect();
    winning.insert(
        "characteristics".into(),
        chars.iter().map(|(c, v)| json!({ "category": c, "value": v })).collect(),
    );
    for (c, v) in &chars {
        similarity.insert(("characteristic".to_string(), format!("{c}:{v}")));
    }
    let k = rng.random_range(1..=3);
    let facts: Vec<_> = FACTS.choose_multiple(rng, k).copied().collect();
    winning.insert("stateOfAffairs".into(), json!(facts));
    for f in &facts {
        similarity.insert(("state-of-affairs".to_string(), f.to_string()));
    }
    let mut all = similarity.clone();
    if with_statement {
        let m = *MEANINGS.choose(rng).unwrap();
        let canon = *CANONS.choose(rng).unwrap();
        winning.insert("statement".into(), json!({ "interpretans": m, "canons": [{ "class": canon }] }));
        all.insert(("interpretans".to_string(), m.to_string()));
        all.insert(("canon".to_string(), canon.to_string()));
    }
    Drawn {
        winning: Value::Object(winning),
        similarity,
        all,
    }
}

fn ac4_cq3(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let n = rng.random_range(2..=6);
    let cases: Vec<(String, Drawn)> = (0..n).map(|i| (format!("K {i}/00"), draw(rng, true))).collect();
    let doc = json!({
        "schema": "case-frame/1",
        "cases": cases.iter().map(|(id, d)| case_json(id, "Poland", COURTS[0], NaiveDate::from_ymd_opt(2015, 1, 1).unwrap(), "final", d.winning.clone())).collect::<Vec<_>>()
    });
    let base = CaseBase::load(&doc.to_string(), ParseMode::Strict).map_err(|e| e.to_string())?;
    let pd = draw(rng, false);
    let mut pj = pd.winning.clone();
    pj["forum"] = json!({ "jurisdiction": "Poland", "court": COURTS[0] });
    pj["asOfDate"] = json!("2016-01-01");
    let p: ProblemFrame = serde_json::from_value(pj).map_err(|e| e.to_string())?;

    let overlap = |d: &Drawn| d.similarity.intersection(&pd.similarity).count();
    let mut hits = 0;
    for arg in synthesize_arguments(&p, &base) {
        let c = arg.cited_case_id.clone().unwrap();
        let beta = arg.beta.clone().unwrap();
        let beta_key = (beta.slot.name().to_string(), beta.value.clone());
        let own = overlap(&cases.iter().find(|(id, _)| *id == c).unwrap().1);
        let want: BTreeSet<String> = cases
            .iter()
            .filter(|(id, d)| *id != c && overlap(d) > own && !d.all.contains(&beta_key))
            .map(|(id, _)| id.clone())
            .collect();
        let got: BTreeSet<String> = counterexample_search(&arg, &p, &base)
            .attackers
            .iter()
            .map(|(a, _)| a.cited_case_id.clone().unwrap())
            .collect();
        check(got == want, || format!("CQ3 on {} ({beta}): got {got:?} want {want:?}", arg.id))?;
        hits += got.len();
    }
    Ok(hits)
}

fn ac4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut tally = CqTally {
        trials: 0,
        fired: BTreeMap::new(),
    };
    for _ in 0..1000 {
        ac4_auto(&mut rng, &mut tally)?;
    }
    let mut cq3_hits = 0;
    for _ in 0..600 {
        cq3_hits += ac4_cq3(&mut rng)?;
    }
    for tag in [CqTag::Cq2a, CqTag::Cq2b, CqTag::Cq2c, CqTag::Cq4, CqTag::Cq5a, CqTag::Cq7] {
        let n = tally.fired.get(&tag).copied().unwrap_or(0);
        check(n > 0 && n < tally.trials, || format!("{tag} fired in {n}/{} trials; generator is degenerate", tally.trials))?;
    }
    check(cq3_hits > 0, || "CQ3 never fired".into())?;
    let fired: Vec<String> = tally.fired.iter().map(|(t, n)| format!("{t}:{n}")).collect();
    Ok(format!(
        "{} auto-CQ trials ({}), 600 CQ3 trials ({cq3_hits} counterexamples), 0 violations",
        tally.trials,
        fired.join(" ")
    ))
}

// AC-5 ---------------------------------------------------------------------

/// Maximal paths of length >= 2 in the citation graph of an interchange
/// document, by plain enumeration over its raw JSON.
fn brute_force_lines(doc: &str) -> BTreeSet<Vec<String>> {
    let v: Value = serde_json::from_str(doc).unwrap();
    let mut edges: Vec<(String, String)> = Vec::new();
    for c in v["cases"].as_array().unwrap() {
        let id = c["caseData"]["identifier"].as_str().unwrap().to_string();
        for canon in c["winning"]["statement"]["canons"].as_array().into_iter().flatten() {
            if let Some(t) = canon["citedCaseId"].as_str() {
                edges.push((id.clone(), t.to_string()));
            }
        }
    }
    let nodes: BTreeSet<String> = edges.iter().flat_map(|(a, b)| [a.clone(), b.clone()]).collect();
    let mut out = BTreeSet::new();
    let mut stack: Vec<Vec<String>> = nodes.iter().map(|n| vec![n.clone()]).collect();
    while let Some(path) = stack.pop() {
        let last = path.last().unwrap();
        let next: Vec<&String> = edges.iter().filter(|(a, _)| a == last).map(|(_, b)| b).collect();
        if next.is_empty() {
            let first = &path[0];
            let cited = edges.iter().any(|(_, b)| b == first);
            if path.len() >= 2 && !cited {
                out.insert(path);
            }
        } else {
            for n in next {
                let mut p = path.clone();
                p.push(n.clone());
                stack.push(p);
            }
        }
    }
    out
}

fn ac5() -> Outcome {
    let chain: Vec<Vec<String>> = fixtures::chain().lines_of_opinion().map_err(|e| e.to_string())?.into_iter().map(|l| l.chain).collect();
    check(chain == vec![vec!["o".to_string(), "n".into(), "m".into()]], || format!("chain gave {chain:?}"))?;
    match CaseBase::load(fixtures::CHAIN_BAD_DATES_JSON, ParseMode::Strict) {
        Err(CaseBaseError::Invalid(issues)) if issues.iter().any(|i| i.kind == LoadIssueKind::DateMonotonicity) => {}
        other => return Err(format!("date-violating fixture not rejected: {other:?}")),
    }
    let diamond: BTreeSet<Vec<String>> = fixtures::diamond()
        .lines_of_opinion()
        .map_err(|e| e.to_string())?
        .into_iter()
        .map(|l| l.chain)
        .collect();
    let want = brute_force_lines(fixtures::DIAMOND_JSON);
    check(diamond == want && diamond.len() == 2, || format!("diamond gave {diamond:?}, brute force {want:?}"))?;
    check(brute_force_lines(fixtures::CHAIN_JSON).len() == 1, || "chain oracle disagrees".into())?;
    Ok("chain -> [[o, n, m]]; bad dates rejected; diamond -> 2 lines matching enumeration".into())
}

// AC-6 ---------------------------------------------------------------------

fn ac6() -> Outcome {
    let base = Arc::new(fixtures::table1());
    let mut s = Session::create(fixtures::table1_problem(), base.clone()).map_err(|e| e.to_string())?;
    let target = s
        .analysis()
        .framework
        .arguments
        .iter()
        .find(|a| a.beta.as_ref().is_some_and(|b| b.slot == Slot::Interpretans) && a.polarity == Polarity::Positive)
        .ok_or("no positive interpretans argument")?
        .id
        .clone();
    check(s.label(&target) == Some(Label::In), || "transfer argument not IN at start".into())?;
    let first = s
        .assert_cq(AssertionRequest {
            cq: AssertionTag::Cq(CqTag::Cq1),
            target: Some(target.clone()),
            payload: "the shared expression is not relevant here".into(),
            counter_to: None,
        })
        .map_err(|e| e.to_string())?
        .id
        .clone();
    check(s.label(&target) == Some(Label::Out), || "CQ1 did not defeat".into())?;
    s.assert_cq(AssertionRequest {
        cq: AssertionTag::Cq(CqTag::Cq1),
        target: None,
        payload: "it is relevant".into(),
        counter_to: Some(first),
    })
    .map_err(|e| e.to_string())?;
    check(s.label(&target) == Some(Label::In), || "counter-assertion did not reinstate".into())?;
    s.apply_transfer(&target).map_err(|e| e.to_string())?;
    let filled = s.problem().interpretans.clone();
    check(
        filled.as_deref() == Some("Documenting and recording the cost in the company's books"),
        || format!("interpretans is {filled:?}"),
    )?;
    let log = s.event_log();
    let replayed = Session::replay(base, &Session::parse_log(&log).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
    let (a, b) = (
        serde_json::to_string(&s.state()).unwrap(),
        serde_json::to_string(&replayed.state()).unwrap(),
    );
    check(a == b, || "replayed state differs".into())?;
    Ok(format!("IN -> OUT -> IN, transfer filled interpretans, replay of {} events identical", s.history().len()))
}

// AC-7 ---------------------------------------------------------------------

fn ac7() -> Outcome {
    let root = concat!(env!("CARGO_MANIFEST_DIR"), "/../../fixtures");
    let mut sizes = Vec::new();
    for format in ["json", "dot"] {
        let mut outputs = Vec::new();
        for _ in 0..3 {
            let out = Command::new(env!("CARGO_BIN_EXE_caseframe"))
                .args(["argue", "--base", &format!("{root}/table2.json"), "--problem", &format!("{root}/problem-table2.json")])
                .args(["--format", format])
                .output()
                .map_err(|e| e.to_string())?;
            check(out.status.success(), || format!("argue --format {format} failed: {}", String::from_utf8_lossy(&out.stderr)))?;
            outputs.push(out.stdout);
        }
        check(outputs.windows(2).all(|w| w[0] == w[1]), || format!("{format} output differs across runs"))?;
        check(!outputs[0].is_empty(), || format!("{format} output empty"))?;
        sizes.push(format!("{format} {} bytes", outputs[0].len()));
    }
    Ok(format!("3 runs byte-identical ({})", sizes.join(", ")))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("AC-1", ac1),
        ("AC-2", ac2),
        ("AC-3", ac3),
        ("AC-4", ac4),
        ("AC-5", ac5),
        ("AC-6", ac6),
        ("AC-7", ac7),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        match run() {
            Ok(detail) => println!("{name} PASS  {detail}"),
            Err(why) => {
                failed += 1;
                println!("{name} FAIL  {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
