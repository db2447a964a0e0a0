//! Verdict records in line-oriented text or JSON.

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::checkers::{
    Budget, Connection, EntryWalk, Evidence, InfiniteMinimal, MinimalSet, OmegaClass, Outcome, SlackFinding, Verdict,
};
use crate::graph::{Edge, Path, Vertex};
use crate::group::GroupElement;
use crate::triple::Triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BudgetRecord {
    pub words: usize,
    pub lasso: usize,
    pub circuit: usize,
    pub family: u64,
    pub states: usize,
    pub depth: usize,
}

impl From<&Budget> for BudgetRecord {
    fn from(b: &Budget) -> Self {
        BudgetRecord { words: b.words, lasso: b.lasso, circuit: b.circuit, family: b.family, states: b.states, depth: b.depth }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Record {
    pub property: String,
    pub instance: String,
    pub verdict: String,
    pub summary: String,
    pub notes: Vec<String>,
    pub certificate: Json,
    pub budget: BudgetRecord,
    /// Facts re-checked by the independent verifier, when requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub verified: Option<std::result::Result<usize, String>>,
}

impl Record {
    pub fn new(instance: &str, outcome: &Outcome, budget: &Budget) -> Record {
        let t = &outcome.checked;
        Record {
            property: outcome.property.name().to_string(),
            instance: instance.to_string(),
            verdict: outcome.verdict.label().to_string(),
            summary: summary(t, &outcome.verdict),
            notes: outcome.notes.clone(),
            certificate: verdict_json(t, &outcome.verdict),
            budget: budget.into(),
            verified: None,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => serde_json::to_string_pretty(self).expect("records serialize") + "\n",
            Format::Text => {
                let b = &self.budget;
                let mut out = format!(
                    "property: {}\ninstance: {}\nverdict: {}\nsummary: {}\n",
                    self.property, self.instance, self.verdict, self.summary
                );
                for n in &self.notes {
                    out += &format!("note: {n}\n");
                }
                out += &format!(
                    "budget: words={} lasso={} circuit={} family={} states={} depth={}\n",
                    b.words, b.lasso, b.circuit, b.family, b.states, b.depth
                );
                match &self.verified {
                    Some(Ok(n)) => out += &format!("certificate verified: {n} facts\n"),
                    Some(Err(e)) => out += &format!("certificate rejected: {e}\n"),
                    None => {}
                }
                out += "certificate:\n";
                let body = serde_json::to_string_pretty(&self.certificate).expect("json");
                for line in body.lines() {
                    out += &format!("  {line}\n");
                }
                out
            }
        }
    }
}

fn vname(t: &Triple, v: Vertex) -> String {
    t.graph().vertex_name(v)
}

fn pname(t: &Triple, p: &Path) -> String {
    t.graph().path_name(p)
}

fn gname(t: &Triple, g: &GroupElement) -> String {
    t.group().name(g)
}

fn template(t: &Triple, edges: &[Edge]) -> String {
    if edges.is_empty() {
        return "-".into();
    }
    edges.iter().map(|&e| t.graph().edge_name(e)).collect::<Vec<_>>().join(".")
}

fn class_name(t: &Triple, c: &OmegaClass) -> String {
    match c {
        OmegaClass::Cycle(p) => format!("({})^inf", pname(t, p)),
        OmegaClass::Ray(r) => format!("ray at {}", t.graph().base_name(*r)),
    }
}

/// One line describing a verdict.
pub fn summary(t: &Triple, v: &Verdict) -> String {
    match v {
        Verdict::Unknown(why) => why.clone(),
        Verdict::Proven(e) | Verdict::Refuted(e) => match e {
            Evidence::Note(n) => n.clone(),
            Evidence::MinimalSets(sets) => {
                let biggest = sets.iter().map(|s| s.paths.len()).max().unwrap_or(0);
                format!("finite minimal strongly fixed sets at {} pairs (largest has {biggest})", sets.len())
            }
            Evidence::InfiniteMinimal(m) => format!(
                "infinite minimal strongly fixed set for g={} at {}: {}.({})^k.{}",
                gname(t, &m.g),
                vname(t, m.x),
                template(t, &m.prefix),
                template(t, &m.cycle),
                template(t, &m.exit)
            ),
            Evidence::Connections(c) => format!("{} vertex-class connections", c.len()),
            Evidence::Disconnected { from, class } => {
                format!("{} never reaches the orbit of {}", vname(t, *from), class_name(t, class))
            }
            Evidence::TopFree { entries, slack } => {
                format!("{} entry walks, {} slackness findings", entries.len(), slack.len())
            }
            Evidence::NoEntry { circuit, omega } => format!(
                "circuit without entry: {} (g={}), omega = {}",
                pname(t, &circuit.gamma),
                gname(t, &circuit.g),
                omega.name(t.graph())
            ),
            Evidence::NotSlack(n) => format!(
                "not slack: g={} fixes Z({}) pointwise but {}.({})^inf never reaches twist 1",
                gname(t, &n.g),
                vname(t, n.x),
                template(t, &n.prefix),
                template(t, &n.cycle)
            ),
            Evidence::Contracting(r) => format!("{} contracting routes", r.len()),
            Evidence::NoCircuit { from } => format!("no G-circuit is reachable from {}", vname(t, *from)),
            Evidence::Parts(parts) => parts.iter().map(|(k, v)| format!("{k}={}", v.label())).collect::<Vec<_>>().join(", "),
        },
    }
}

fn minimal_json(t: &Triple, s: &MinimalSet) -> Json {
    json!({ "g": gname(t, &s.g), "x": vname(t, s.x), "paths": s.paths.iter().map(|p| pname(t, p)).collect::<Vec<_>>() })
}

fn infinite_json(t: &Triple, m: &InfiniteMinimal) -> Json {
    json!({
        "g": gname(t, &m.g),
        "x": vname(t, m.x),
        "prefix": template(t, &m.prefix),
        "cycle": template(t, &m.cycle),
        "exit": template(t, &m.exit),
    })
}

fn connection_json(t: &Triple, c: &Connection) -> Json {
    json!({
        "from": vname(t, c.from),
        "class": class_name(t, &c.class),
        "walk": pname(t, &c.walk),
        "via": gname(t, &c.via),
        "on_class": vname(t, c.on_class),
    })
}

fn evidence_json(t: &Triple, e: &Evidence) -> Json {
    match e {
        Evidence::Note(n) => json!({ "note": n }),
        Evidence::MinimalSets(s) => json!({ "minimal_sets": s.iter().map(|m| minimal_json(t, m)).collect::<Vec<_>>() }),
        Evidence::InfiniteMinimal(m) => json!({ "infinite_minimal": infinite_json(t, m) }),
        Evidence::Connections(c) => json!({ "connections": c.iter().map(|c| connection_json(t, c)).collect::<Vec<_>>() }),
        Evidence::Disconnected { from, class } => {
            json!({ "disconnected": { "from": vname(t, *from), "class": class_name(t, class) } })
        }
        Evidence::TopFree { entries, slack } => json!({
            "entries": entries.iter().map(|e| match e {
                EntryWalk::Branch { x, walk } => json!({ "x": vname(t, *x), "branch": pname(t, walk) }),
                EntryWalk::NoReturn { x } => json!({ "x": vname(t, *x), "no_return": true }),
            }).collect::<Vec<_>>(),
            "slack": slack.iter().map(|s| match s {
                SlackFinding::Moves { g, x, walk, edge } => json!({
                    "g": gname(t, g), "x": vname(t, *x), "moves": t.graph().edge_name(*edge), "after": template(t, walk),
                }),
                SlackFinding::Slack { g, x, states } => json!({ "g": gname(t, g), "x": vname(t, *x), "slack_states": states }),
            }).collect::<Vec<_>>(),
        }),
        Evidence::NoEntry { circuit, omega } => json!({
            "circuit": { "g": gname(t, &circuit.g), "gamma": pname(t, &circuit.gamma) },
            "omega": omega.name(t.graph()),
        }),
        Evidence::NotSlack(n) => json!({
            "not_slack": { "g": gname(t, &n.g), "x": vname(t, n.x), "prefix": template(t, &n.prefix), "cycle": template(t, &n.cycle) }
        }),
        Evidence::Contracting(routes) => json!({
            "routes": routes.iter().map(|r| json!({
                "x": vname(t, r.x),
                "alpha": pname(t, &r.alpha),
                "circuit": { "g": gname(t, &r.circuit.g), "gamma": pname(t, &r.circuit.gamma) },
                "entry": { "position": r.entry.0, "edge": t.graph().edge_name(r.entry.1) },
            })).collect::<Vec<_>>()
        }),
        Evidence::NoCircuit { from } => json!({ "no_circuit_from": vname(t, *from) }),
        Evidence::Parts(parts) => {
            Json::Array(parts.iter().map(|(k, v)| json!({ "part": k, "verdict": v.label(), "certificate": verdict_json(t, v) })).collect())
        }
    }
}

pub fn verdict_json(t: &Triple, v: &Verdict) -> Json {
    match v {
        Verdict::Unknown(why) => json!({ "reason": why }),
        Verdict::Proven(e) | Verdict::Refuted(e) => evidence_json(t, e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checkers::{check_property, Property};
    use crate::corpus;

    #[test]
    fn one_loop_topfree_names_the_circuit() {
        let b = Budget::default();
        let out = check_property(&corpus::one_loop(), Property::TopFree, &b).unwrap();
        let r = Record::new("one_loop", &out, &b);
        assert_eq!(r.verdict, "refuted");
        assert!(r.summary.starts_with("circuit without entry: e "), "{}", r.summary);
        assert!(r.render(Format::Text).contains("summary: circuit without entry: e"));
    }

    #[test]
    fn renders_are_deterministic() {
        let b = Budget::default();
        let t = corpus::z2_two_loop_swap();
        for p in Property::ALL {
            let a = Record::new("swap", &check_property(&t, p, &b).unwrap(), &b);
            let c = Record::new("swap", &check_property(&t, p, &b).unwrap(), &b);
            assert_eq!(a.render(Format::Json), c.render(Format::Json));
            let v: Json = serde_json::from_str(&a.render(Format::Json)).unwrap();
            assert_eq!(v["property"], p.name());
        }
    }
}
