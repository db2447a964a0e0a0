//! JSON triple documents.
//!
//! ```json
//! {
//!   "group": { "kind": "finite", "elements": ["1", "s"], "table": [["1", "s"], ["s", "1"]],
//!              "inverse": ["1", "s"], "identity": "1" },
//!   "graph": { "vertices": ["x"], "edges": [{ "id": "e0", "range": "x", "source": "x" }] },
//!   "action": { "generators": [{ "element": "s", "edges": { "e0": "e1", "e1": "e0" } }] },
//!   "cocycle": { "generators": [{ "element": "s", "edges": { "e0": "s" } }] }
//! }
//! ```

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphSpec, TailKind};
use crate::group::{FiniteGroup, Group};
use crate::seq::EventuallyPeriodic;
use crate::triple::{GeneratorAction, GeneratorCocycle, Triple, TripleData};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupDoc {
    Finite {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
        inverse: Vec<String>,
        identity: String,
    },
    Integers,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionGenerator {
    pub element: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub vertices: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edges: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionDoc {
    #[serde(default)]
    pub generators: Vec<ActionGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SequenceDoc {
    #[serde(default)]
    pub prefix: Vec<String>,
    pub period: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleGenerator {
    pub element: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub edges: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub families: BTreeMap<String, SequenceDoc>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CocycleDoc {
    #[serde(default)]
    pub generators: Vec<CocycleGenerator>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TailKindDoc {
    Source,
    Receiver,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TailDoc {
    pub root: String,
    pub kind: TailKindDoc,
    /// Removal order at a receiver: these plain edges first, then the
    /// listed families interleaved.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub plain: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AlphaEntry {
    pub root: String,
    pub index: u64,
    pub removed: String,
    pub path: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleDocument {
    pub group: GroupDoc,
    pub graph: GraphSpec,
    #[serde(default)]
    pub action: ActionDoc,
    #[serde(default)]
    pub cocycle: CocycleDoc,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub tails: Vec<TailDoc>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub alpha_table: Vec<AlphaEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<serde_json::Value>,
}

impl TripleDocument {
    pub fn parse(text: &str) -> Result<TripleDocument> {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents serialize")
    }

    pub fn group(&self) -> Result<Group> {
        match &self.group {
            GroupDoc::Integers => Ok(Group::Integers),
            GroupDoc::Finite { elements, table, inverse, identity } => {
                let idx = |n: &String| -> Result<u32> {
                    elements
                        .iter()
                        .position(|e| e == n)
                        .map(|i| i as u32)
                        .ok_or_else(|| Error::UnknownElement(n.clone()))
                };
                let table = table
                    .iter()
                    .map(|row| row.iter().map(idx).collect::<Result<Vec<u32>>>())
                    .collect::<Result<Vec<_>>>()?;
                let inverse = inverse.iter().map(idx).collect::<Result<Vec<u32>>>()?;
                let fg = FiniteGroup::new(elements.clone(), table, inverse, idx(identity)?)
                    .map_err(|p| Error::Hypothesis(format!("group table: {}", p.join("; "))))?;
                Ok(Group::Finite(fg))
            }
        }
    }

    /// Resolves names; reports malformed graphs and unknown names.
    pub fn to_data(&self) -> Result<TripleData> {
        let group = self.group()?;
        let mut graph = Graph::from_spec(&self.graph).map_err(|p| Error::Graph(p.join("; ")))?;
        let elem = |n: &str| group.parse(n).ok_or_else(|| Error::UnknownElement(n.to_string()));
        let vertex = |g: &Graph, n: &str| g.vertex_named(n).ok_or_else(|| Error::UnknownVertex(n.to_string()));
        let edge = |g: &Graph, n: &str| g.edge_named(n).ok_or_else(|| Error::UnknownEdge(n.to_string()));
        let family = |g: &Graph, n: &str| g.family_named(n).ok_or_else(|| Error::UnknownEdge(n.to_string()));

        let mut action = Vec::new();
        for a in &self.action.generators {
            let mut ga = GeneratorAction {
                element: elem(&a.element)?,
                vertices: BTreeMap::new(),
                edges: BTreeMap::new(),
                families: BTreeMap::new(),
            };
            for (k, v) in &a.vertices {
                ga.vertices.insert(vertex(&graph, k)?, vertex(&graph, v)?);
            }
            for (k, v) in &a.edges {
                ga.edges.insert(edge(&graph, k)?, edge(&graph, v)?);
            }
            for (k, v) in &a.families {
                ga.families.insert(family(&graph, k)?, family(&graph, v)?);
            }
            action.push(ga);
        }
        let mut cocycle = Vec::new();
        for c in &self.cocycle.generators {
            let mut gc = GeneratorCocycle {
                element: elem(&c.element)?,
                edges: BTreeMap::new(),
                families: BTreeMap::new(),
            };
            for (k, v) in &c.edges {
                gc.edges.insert(edge(&graph, k)?, elem(v)?);
            }
            for (k, seq) in &c.families {
                let prefix = seq.prefix.iter().map(|n| elem(n)).collect::<Result<Vec<_>>>()?;
                let period = seq.period.iter().map(|n| elem(n)).collect::<Result<Vec<_>>>()?;
                let s = EventuallyPeriodic::new(prefix, period)
                    .ok_or_else(|| Error::Graph(format!("cocycle sequence for family `{k}` has an empty period")))?;
                gc.families.insert(family(&graph, k)?, s);
            }
            cocycle.push(gc);
        }
        if !self.tails.is_empty() {
            let mut tails = BTreeMap::new();
            for t in &self.tails {
                let root = vertex(&graph, &t.root)?;
                let kind = match t.kind {
                    TailKindDoc::Source => TailKind::Source,
                    TailKindDoc::Receiver => TailKind::Receiver {
                        plain: t.plain.iter().map(|n| edge(&graph, n)).collect::<Result<Vec<_>>>()?,
                        families: t.families.iter().map(|n| family(&graph, n)).collect::<Result<Vec<_>>>()?,
                    },
                };
                if tails.insert(root, kind).is_some() {
                    return Err(Error::Graph(format!("two tails at `{}`", t.root)));
                }
            }
            graph = graph.with_tails(tails);
        }
        Ok(TripleData { graph, group, action, cocycle })
    }

    pub fn to_triple(&self, word_budget: usize) -> Result<Triple> {
        Triple::new(self.to_data()?, word_budget)
    }

    pub fn from_data(data: &TripleData) -> TripleDocument {
        let graph = &data.graph;
        let group = &data.group;
        let gdoc = match group {
            Group::Integers => GroupDoc::Integers,
            Group::Finite(fg) => GroupDoc::Finite {
                elements: fg.names().to_vec(),
                table: fg
                    .table()
                    .iter()
                    .map(|row| row.iter().map(|&i| fg.names()[i as usize].clone()).collect())
                    .collect(),
                inverse: fg.inverse_table().iter().map(|&i| fg.names()[i as usize].clone()).collect(),
                identity: fg.names()[fg.identity_index() as usize].clone(),
            },
        };
        let ename = |i: u32| graph.plain_edges()[i as usize].id.clone();
        let fname = |i: u32| graph.families()[i as usize].id.clone();
        let action = ActionDoc {
            generators: data
                .action
                .iter()
                .map(|a| ActionGenerator {
                    element: group.name(&a.element),
                    vertices: a
                        .vertices
                        .iter()
                        .map(|(&k, &v)| (graph.base_name(k).to_string(), graph.base_name(v).to_string()))
                        .collect(),
                    edges: a.edges.iter().map(|(&k, &v)| (ename(k), ename(v))).collect(),
                    families: a.families.iter().map(|(&k, &v)| (fname(k), fname(v))).collect(),
                })
                .collect(),
        };
        let cocycle = CocycleDoc {
            generators: data
                .cocycle
                .iter()
                .map(|c| CocycleGenerator {
                    element: group.name(&c.element),
                    edges: c.edges.iter().map(|(&k, v)| (ename(k), group.name(v))).collect(),
                    families: c
                        .families
                        .iter()
                        .map(|(&k, s)| {
                            (
                                fname(k),
                                SequenceDoc {
                                    prefix: s.prefix().iter().map(|g| group.name(g)).collect(),
                                    period: s.period().iter().map(|g| group.name(g)).collect(),
                                },
                            )
                        })
                        .collect(),
                })
                .collect(),
        };
        let tails = graph
            .tails()
            .iter()
            .map(|(&root, kind)| match kind {
                TailKind::Source => TailDoc {
                    root: graph.base_name(root).to_string(),
                    kind: TailKindDoc::Source,
                    plain: Vec::new(),
                    families: Vec::new(),
                },
                TailKind::Receiver { plain, families } => TailDoc {
                    root: graph.base_name(root).to_string(),
                    kind: TailKindDoc::Receiver,
                    plain: plain.iter().map(|&p| ename(p)).collect(),
                    families: families.iter().map(|&f| fname(f)).collect(),
                },
            })
            .collect();
        TripleDocument {
            group: gdoc,
            graph: graph.to_spec(),
            action,
            cocycle,
            tails,
            alpha_table: Vec::new(),
            meta: None,
        }
    }

    pub fn from_triple(t: &Triple) -> TripleDocument {
        TripleDocument::from_data(t.data())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn malformed_json_reports_position() {
        match TripleDocument::parse("{\n  \"group\": ") {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn corpus_documents_round_trip() {
        for (name, text) in crate::corpus::DOCUMENTS {
            let doc = TripleDocument::parse(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let again = TripleDocument::parse(&doc.to_json()).unwrap();
            assert_eq!(doc, again, "{name}");
            let data = doc.to_data().unwrap();
            let rebuilt = TripleDocument::from_data(&data).to_data().unwrap();
            assert_eq!(data, rebuilt, "{name}");
        }
    }
}
