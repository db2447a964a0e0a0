//! Three-valued, certificate-producing checkers for Hausdorffness,
//! minimality, topological freeness, local contractivity and the
//! simplicity pipeline. Every checker expects a row-finite triple without
//! sources; run [`crate::desing::desingularize`] first otherwise.
//!
//! Infinite tails are handled through the folded window: tail vertices
//! past the window have the same future as their folded copy.

mod contract;
mod hausdorff;
mod pipeline;
mod state;
mod topfree;
mod transitive;
mod verify;

pub use contract::{contraction_witness, contraction_witness_from, locally_contracting, ContractionWitness};
pub use hausdorff::{is_hausdorff, minimal_strongly_fixed, MinimalFixed};
pub use pipeline::{check_property, check_pure_infiniteness, check_simplicity, Outcome, Property};
pub use state::StateGraph;
pub use topfree::{fixes_cylinder_pointwise, is_slack, topologically_free, GCircuit};
pub use transitive::weakly_g_transitive;
pub use verify::verify_certificate;

use std::collections::HashSet;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::graph::{Edge, Folding, Path, Vertex};
use crate::group::GroupElement;
use crate::lasso::Lasso;
use crate::triple::Triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    /// Radius of the word ball used for the integers backend.
    pub words: usize,
    pub lasso: usize,
    /// Longest circuit searched for when looking for contracting circuits.
    pub circuit: usize,
    pub family: u64,
    /// Distinct twist states explored per search.
    pub states: usize,
    pub depth: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { words: 8, lasso: 4, circuit: 8, family: 8, states: 4096, depth: 6 }
    }
}

impl Budget {
    pub fn doubled(&self) -> Budget {
        Budget {
            words: self.words * 2,
            lasso: self.lasso * 2,
            circuit: self.circuit * 2,
            family: self.family * 2,
            states: self.states * 2,
            depth: self.depth * 2,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proven(Evidence),
    Refuted(Evidence),
    Unknown(String),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::Proven(_) => "proven",
            Verdict::Refuted(_) => "refuted",
            Verdict::Unknown(_) => "unknown",
        }
    }

    pub fn is_proven(&self) -> bool {
        matches!(self, Verdict::Proven(_))
    }

    pub fn is_refuted(&self) -> bool {
        matches!(self, Verdict::Refuted(_))
    }

    pub fn is_unknown(&self) -> bool {
        matches!(self, Verdict::Unknown(_))
    }

    pub fn evidence(&self) -> Option<&Evidence> {
        match self {
            Verdict::Proven(e) | Verdict::Refuted(e) => Some(e),
            Verdict::Unknown(_) => None,
        }
    }
}

/// A class of infinite paths, identified by the vertices it visits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OmegaClass {
    /// `c^∞` for a closed path `c`.
    Cycle(Path),
    /// Paths running up the tail at the root.
    Ray(u32),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalSet {
    pub g: GroupElement,
    pub x: Vertex,
    pub paths: Vec<Path>,
}

/// `prefix · cycle^k · exit` is a minimal strongly fixed path for every `k`.
/// The three parts are walk templates replayed from `x`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InfiniteMinimal {
    pub g: GroupElement,
    pub x: Vertex,
    pub prefix: Vec<Edge>,
    pub cycle: Vec<Edge>,
    pub exit: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connection {
    pub from: Vertex,
    pub class: OmegaClass,
    /// Real path with range `from` and source `via · on_class`.
    pub walk: Path,
    pub via: GroupElement,
    pub on_class: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EntryWalk {
    /// The unique path from `x` reaches a vertex receiving two edges.
    Branch { x: Vertex, walk: Path },
    /// Every vertex after `x` receives one edge and none lies in `G·x`.
    NoReturn { x: Vertex },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlackFinding {
    /// Some reachable state moves an edge, so `g` does not fix `Z(x)`.
    Moves { g: GroupElement, x: Vertex, walk: Vec<Edge>, edge: Edge },
    /// `g` fixes `Z(x)` pointwise and every branch meets twist `1`.
    Slack { g: GroupElement, x: Vertex, states: usize },
}

/// `prefix · cycle^∞` avoids twist `1` while `g` fixes `Z(x)` pointwise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NotSlack {
    pub g: GroupElement,
    pub x: Vertex,
    pub prefix: Vec<Edge>,
    pub cycle: Vec<Edge>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionRoute {
    pub x: Vertex,
    pub alpha: Path,
    pub circuit: GCircuit,
    /// Edge position in `ω(g,γ)` and the alternative edge there.
    pub entry: (usize, Edge),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Evidence {
    Note(String),
    MinimalSets(Vec<MinimalSet>),
    InfiniteMinimal(InfiniteMinimal),
    Connections(Vec<Connection>),
    Disconnected { from: Vertex, class: OmegaClass },
    TopFree { entries: Vec<EntryWalk>, slack: Vec<SlackFinding> },
    NoEntry { circuit: GCircuit, omega: Lasso },
    NotSlack(NotSlack),
    Contracting(Vec<ContractionRoute>),
    NoCircuit { from: Vertex },
    Parts(Vec<(String, Verdict)>),
}

/// The folded window of a row-finite, source-free triple.
pub(crate) struct Window {
    pub fold: Folding,
    pub dg: Digraph<Vertex>,
}

impl Window {
    pub fn new(t: &Triple) -> Result<Window> {
        let g = t.graph();
        if !g.is_row_finite() || g.has_sources() {
            return Err(Error::Hypothesis("checker needs a row-finite graph without sources".into()));
        }
        let fold = t.folding();
        Ok(Window { fold, dg: g.folded_digraph(&fold) })
    }

    pub fn vertices(&self) -> &[Vertex] {
        self.dg.nodes()
    }

    pub fn index(&self, v: Vertex) -> usize {
        self.dg.index_of(&self.fold.fold(v)).expect("window vertex")
    }

    /// Shortest walk template from `from` to some vertex accepted by `target`.
    pub fn walk_to(&self, from: Vertex, target: impl Fn(Vertex) -> bool) -> Option<(Vec<Edge>, Vertex)> {
        let start = self.index(from);
        let pred = self.dg.reach(&[start], |_| true);
        (0..self.dg.len())
            .filter(|&i| pred[i].is_some() && target(*self.dg.node(i)))
            .min_by_key(|&i| Digraph::<Vertex>::trace(&pred, i).map(|w| w.len()))
            .and_then(|i| Digraph::<Vertex>::trace(&pred, i).map(|w| (w, *self.dg.node(i))))
    }

    pub fn reachable(&self, from: Vertex) -> Vec<Vertex> {
        let pred = self.dg.reach(&[self.index(from)], |_| true);
        (0..self.dg.len()).filter(|&i| pred[i].is_some()).map(|i| *self.dg.node(i)).collect()
    }
}

/// Group elements quantified over, skipping the identity, and whether the
/// list is the whole group.
pub(crate) fn nontrivial_elements(t: &Triple, budget: &Budget) -> (Vec<GroupElement>, bool) {
    let group = t.group();
    let complete = group.is_finite();
    let els = t.test_elements(budget.words).into_iter().filter(|g| !group.is_identity(g)).collect();
    (els, complete)
}

pub(crate) fn orbit_set(t: &Triple, v: Vertex) -> HashSet<Vertex> {
    t.orbit(v).into_iter().collect()
}

/// Some element carrying `from` to `to`.
pub(crate) fn carrier(t: &Triple, from: Vertex, to: Vertex) -> Option<GroupElement> {
    t.orbit_elements(from).into_iter().find(|(w, _)| *w == to).map(|(_, g)| g)
}
