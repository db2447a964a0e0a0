//! Directed graphs with a finite vertex base, finitely many plain edges,
//! finitely many countably infinite edge families, and (after
//! desingularization) symbolic tails hanging off singular vertices.
//!
//! Paths are stored range-first: for `a_1 a_2 … a_n` we have
//! `s(a_i) = r(a_{i+1})`, the path starts at `r(a_1)` and ends at `s(a_n)`.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::seq::EventuallyPeriodic;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Vertex {
    Base(u32),
    /// `v_{index, root}` on the tail hanging off base vertex `root`; `index ≥ 1`.
    Tail { root: u32, index: u64 },
}

impl Vertex {
    pub fn base(self) -> Option<u32> {
        match self {
            Vertex::Base(b) => Some(b),
            Vertex::Tail { .. } => None,
        }
    }

    /// Position along a tail; base vertices sit at position 0 of their own tail.
    pub fn tail_index(self) -> u64 {
        match self {
            Vertex::Base(_) => 0,
            Vertex::Tail { index, .. } => index,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    Plain(u32),
    /// Member `F_index` of an infinite family, `index ≥ 1`.
    Member { family: u32, index: u64 },
    /// Tail edge `e_{index, root}` with `r(e_1) = root`.
    Tail { root: u32, index: u64 },
    /// Feeder `f_{index, root}` replacing the removed edge `a_index` at an
    /// infinite receiver.
    Feeder { root: u32, index: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexClass {
    Source,
    InfiniteReceiver,
    Regular,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub range: String,
    pub source: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySpec {
    pub id: String,
    pub range: String,
    #[serde(default)]
    pub source_prefix: Vec<String>,
    pub source_period: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<String>,
    #[serde(default)]
    pub edges: Vec<EdgeSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub families: Vec<FamilySpec>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlainEdge {
    pub id: String,
    pub range: u32,
    pub source: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Family {
    pub id: String,
    pub range: u32,
    pub sources: EventuallyPeriodic<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TailKind {
    Source,
    /// The incoming edges of the root in removal order: `plain` first, then
    /// the `families` interleaved diagonally.
    Receiver { plain: Vec<u32>, families: Vec<u32> },
}

/// Finite description of a (possibly infinite) incoming edge set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Incoming {
    pub finite: Vec<Edge>,
    pub families: Vec<u32>,
}

impl Incoming {
    pub fn is_finite(&self) -> bool {
        self.families.is_empty()
    }

    pub fn len(&self) -> Option<usize> {
        self.is_finite().then_some(self.finite.len())
    }

    pub fn is_empty(&self) -> bool {
        self.finite.is_empty() && self.families.is_empty()
    }

    /// Zero-based element of the canonical enumeration.
    pub fn nth(&self, j: u64) -> Option<Edge> {
        if (j as usize) < self.finite.len() {
            return Some(self.finite[j as usize]);
        }
        if self.families.is_empty() {
            return None;
        }
        let rest = j - self.finite.len() as u64;
        let k = self.families.len() as u64;
        Some(Edge::Member {
            family: self.families[(rest % k) as usize],
            index: rest / k + 1,
        })
    }

    pub fn take(&self, n: usize) -> Vec<Edge> {
        (0..n as u64).map_while(|j| self.nth(j)).collect()
    }

    /// Every edge of the enumeration whose family index is at most `bound`.
    pub fn bounded(&self, bound: u64) -> Vec<Edge> {
        let n = self.finite.len() + self.families.len() * bound as usize;
        self.take(n)
    }

    pub fn position(&self, e: Edge) -> Option<u64> {
        if let Some(p) = self.finite.iter().position(|&f| f == e) {
            return Some(p as u64);
        }
        match e {
            Edge::Member { family, index } if index >= 1 => {
                let k = self.families.iter().position(|&f| f == family)? as u64;
                Some(self.finite.len() as u64 + (index - 1) * self.families.len() as u64 + k)
            }
            _ => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    range: Vertex,
    source: Vertex,
    edges: Vec<Edge>,
}

impl Path {
    pub fn empty(v: Vertex) -> Self {
        Path { range: v, source: v, edges: Vec::new() }
    }

    pub fn range(&self) -> Vertex {
        self.range
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn concat(&self, other: &Path) -> Option<Path> {
        if self.source != other.range {
            return None;
        }
        let mut edges = self.edges.clone();
        edges.extend_from_slice(&other.edges);
        Some(Path { range: self.range, source: other.source, edges })
    }

    /// `ε` with `self = prefix · ε`.
    pub fn strip_prefix(&self, prefix: &Path) -> Option<Path> {
        if self.range != prefix.range || !self.edges.starts_with(&prefix.edges) {
            return None;
        }
        Some(Path {
            range: prefix.source,
            source: self.source,
            edges: self.edges[prefix.len()..].to_vec(),
        })
    }

    pub fn is_prefix_of(&self, other: &Path) -> bool {
        other.strip_prefix(self).is_some()
    }

    /// Prefix or extension relation in either direction.
    pub fn comparable(&self, other: &Path) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub(crate) fn from_parts(range: Vertex, source: Vertex, edges: Vec<Edge>) -> Self {
        Path { range, source, edges }
    }
}

/// Tail indices `≥ start` behave periodically with the given period: the
/// future of `v_i` and `v_{i+period}` is the same for `i ≥ start`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Folding {
    pub start: u64,
    pub period: u64,
}

impl Folding {
    pub fn fold(&self, v: Vertex) -> Vertex {
        match v {
            Vertex::Tail { root, index } if index >= self.start + self.period => Vertex::Tail {
                root,
                index: self.start + (index - self.start) % self.period,
            },
            v => v,
        }
    }

    /// Largest tail index kept verbatim in the folded window.
    pub fn window(&self) -> u64 {
        self.start + self.period - 1
    }

    /// Same periodic structure, but with the periodic part starting after `index`.
    pub fn beyond(&self, index: u64) -> Folding {
        let mut start = self.start;
        while start <= index {
            start += self.period;
        }
        Folding { start, period: self.period }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    vertex_names: Vec<String>,
    vertex_index: HashMap<String, u32>,
    edges: Vec<PlainEdge>,
    edge_index: HashMap<String, u32>,
    families: Vec<Family>,
    family_index: HashMap<String, u32>,
    in_plain: Vec<Vec<u32>>,
    in_fam: Vec<Vec<u32>>,
    tails: BTreeMap<u32, TailKind>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || matches!(c, '_' | '-' | '~' | '+'))
}

impl Graph {
    /// Builds a graph, reporting every violated invariant.
    pub fn from_spec(spec: &GraphSpec) -> std::result::Result<Graph, Vec<String>> {
        let mut problems = Vec::new();
        let mut names = spec.vertices.clone();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                problems.push(format!("duplicate vertex `{}`", w[0]));
            }
        }
        names.dedup();
        for n in &names {
            if !valid_name(n) {
                problems.push(format!("invalid vertex name `{n}`"));
            }
        }
        let vertex_index: HashMap<String, u32> =
            names.iter().enumerate().map(|(i, n)| (n.clone(), i as u32)).collect();
        let lookup = |n: &str, what: &str, problems: &mut Vec<String>| -> u32 {
            match vertex_index.get(n) {
                Some(&i) => i,
                None => {
                    problems.push(format!("{what} names unknown vertex `{n}`"));
                    0
                }
            }
        };

        let mut edge_specs = spec.edges.clone();
        edge_specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut fam_specs = spec.families.clone();
        fam_specs.sort_by(|a, b| a.id.cmp(&b.id));
        let mut ids: Vec<&str> = edge_specs
            .iter()
            .map(|e| e.id.as_str())
            .chain(fam_specs.iter().map(|f| f.id.as_str()))
            .collect();
        ids.sort();
        for w in ids.windows(2) {
            if w[0] == w[1] {
                problems.push(format!("duplicate edge id `{}`", w[0]));
            }
        }
        for id in &ids {
            if !valid_name(id) {
                problems.push(format!("invalid edge id `{id}`"));
            }
        }

        let mut edges = Vec::new();
        for e in &edge_specs {
            let range = lookup(&e.range, &format!("edge `{}`", e.id), &mut problems);
            let source = lookup(&e.source, &format!("edge `{}`", e.id), &mut problems);
            edges.push(PlainEdge { id: e.id.clone(), range, source });
        }
        let mut families = Vec::new();
        for f in &fam_specs {
            let what = format!("family `{}`", f.id);
            let range = lookup(&f.range, &what, &mut problems);
            let prefix: Vec<u32> =
                f.source_prefix.iter().map(|v| lookup(v, &what, &mut problems)).collect();
            let period: Vec<u32> =
                f.source_period.iter().map(|v| lookup(v, &what, &mut problems)).collect();
            match EventuallyPeriodic::new(prefix, period) {
                Some(sources) => families.push(Family { id: f.id.clone(), range, sources }),
                None => problems.push(format!("family `{}` has an empty source period", f.id)),
            }
        }
        if !problems.is_empty() {
            return Err(problems);
        }
        Ok(Graph::assemble(names, edges, families, BTreeMap::new()))
    }

    fn assemble(
        vertex_names: Vec<String>,
        edges: Vec<PlainEdge>,
        families: Vec<Family>,
        tails: BTreeMap<u32, TailKind>,
    ) -> Graph {
        let n = vertex_names.len();
        let mut in_plain = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            in_plain[e.range as usize].push(i as u32);
        }
        let mut in_fam = vec![Vec::new(); n];
        for (i, f) in families.iter().enumerate() {
            in_fam[f.range as usize].push(i as u32);
        }
        Graph {
            vertex_index: vertex_names.iter().enumerate().map(|(i, n)| (n.clone(), i as u32)).collect(),
            edge_index: edges.iter().enumerate().map(|(i, e)| (e.id.clone(), i as u32)).collect(),
            family_index: families.iter().enumerate().map(|(i, f)| (f.id.clone(), i as u32)).collect(),
            vertex_names,
            edges,
            families,
            in_plain,
            in_fam,
            tails,
        }
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertex_names.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    range: self.vertex_names[e.range as usize].clone(),
                    source: self.vertex_names[e.source as usize].clone(),
                })
                .collect(),
            families: self
                .families
                .iter()
                .map(|f| FamilySpec {
                    id: f.id.clone(),
                    range: self.vertex_names[f.range as usize].clone(),
                    source_prefix: f.sources.prefix().iter().map(|&v| self.vertex_names[v as usize].clone()).collect(),
                    source_period: f.sources.period().iter().map(|&v| self.vertex_names[v as usize].clone()).collect(),
                })
                .collect(),
        }
    }

    /// The same graph with the given tails attached.
    pub fn with_tails(&self, tails: BTreeMap<u32, TailKind>) -> Graph {
        Graph::assemble(self.vertex_names.clone(), self.edges.clone(), self.families.clone(), tails)
    }

    /// The underlying graph with every tail removed.
    pub fn without_tails(&self) -> Graph {
        self.with_tails(BTreeMap::new())
    }

    pub fn tails(&self) -> &BTreeMap<u32, TailKind> {
        &self.tails
    }

    pub fn has_tails(&self) -> bool {
        !self.tails.is_empty()
    }

    pub fn base_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn base_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.vertex_names.len() as u32).map(Vertex::Base)
    }

    pub fn plain_edges(&self) -> &[PlainEdge] {
        &self.edges
    }

    pub fn families(&self) -> &[Family] {
        &self.families
    }

    pub fn vertex_named(&self, name: &str) -> Option<u32> {
        self.vertex_index.get(name).copied()
    }

    pub fn edge_named(&self, name: &str) -> Option<u32> {
        self.edge_index.get(name).copied()
    }

    pub fn family_named(&self, name: &str) -> Option<u32> {
        self.family_index.get(name).copied()
    }

    pub fn base_name(&self, b: u32) -> &str {
        &self.vertex_names[b as usize]
    }

    pub fn vertex_name(&self, v: Vertex) -> String {
        match v {
            Vertex::Base(b) => self.vertex_names[b as usize].clone(),
            Vertex::Tail { root, index } => format!("{}~v{index}", self.vertex_names[root as usize]),
        }
    }

    pub fn edge_name(&self, e: Edge) -> String {
        match e {
            Edge::Plain(i) => self.edges[i as usize].id.clone(),
            Edge::Member { family, index } => format!("{}[{index}]", self.families[family as usize].id),
            Edge::Tail { root, index } => format!("{}~e{index}", self.vertex_names[root as usize]),
            Edge::Feeder { root, index } => format!("{}~f{index}", self.vertex_names[root as usize]),
        }
    }

    pub fn path_name(&self, p: &Path) -> String {
        if p.is_empty() {
            format!("@{}", self.vertex_name(p.range()))
        } else {
            p.edges().iter().map(|&e| self.edge_name(e)).collect::<Vec<_>>().join(".")
        }
    }

    pub fn parse_vertex(&self, name: &str) -> Result<Vertex> {
        if let Some(b) = self.vertex_named(name) {
            return Ok(Vertex::Base(b));
        }
        if let Some((root, rest)) = name.rsplit_once("~v") {
            if let (Some(r), Ok(index)) = (self.vertex_named(root), rest.parse::<u64>()) {
                let v = Vertex::Tail { root: r, index };
                if self.contains_vertex(v) {
                    return Ok(v);
                }
            }
        }
        Err(Error::UnknownVertex(name.to_string()))
    }

    pub fn parse_edge(&self, name: &str) -> Result<Edge> {
        if let Some(i) = self.edge_named(name) {
            return Ok(Edge::Plain(i));
        }
        if let Some(stripped) = name.strip_suffix(']') {
            if let Some((fam, idx)) = stripped.split_once('[') {
                if let (Some(f), Ok(index)) = (self.family_named(fam), idx.parse::<u64>()) {
                    if index >= 1 {
                        return Ok(Edge::Member { family: f, index });
                    }
                }
            }
        }
        for (marker, feeder) in [("~e", false), ("~f", true)] {
            if let Some((root, rest)) = name.rsplit_once(marker) {
                if let (Some(r), Ok(index)) = (self.vertex_named(root), rest.parse::<u64>()) {
                    let e = if feeder {
                        Edge::Feeder { root: r, index }
                    } else {
                        Edge::Tail { root: r, index }
                    };
                    if self.contains_edge(e) {
                        return Ok(e);
                    }
                }
            }
        }
        Err(Error::UnknownEdge(name.to_string()))
    }

    pub fn contains_vertex(&self, v: Vertex) -> bool {
        match v {
            Vertex::Base(b) => (b as usize) < self.vertex_names.len(),
            Vertex::Tail { root, index } => index >= 1 && self.tails.contains_key(&root),
        }
    }

    fn removed_at(&self, range: u32) -> bool {
        matches!(self.tails.get(&range), Some(TailKind::Receiver { .. }))
    }

    /// Whether `e` is an edge of this graph (removed receiver edges are not).
    pub fn contains_edge(&self, e: Edge) -> bool {
        match e {
            Edge::Plain(i) => (i as usize) < self.edges.len() && !self.removed_at(self.edges[i as usize].range),
            Edge::Member { family, index } => {
                (family as usize) < self.families.len()
                    && index >= 1
                    && !self.removed_at(self.families[family as usize].range)
            }
            Edge::Tail { root, index } => index >= 1 && self.tails.contains_key(&root),
            Edge::Feeder { root, index } => index >= 1 && self.removed_at(root),
        }
    }

    fn tail_vertex(root: u32, index: u64) -> Vertex {
        if index == 0 {
            Vertex::Base(root)
        } else {
            Vertex::Tail { root, index }
        }
    }

    /// The `j`-th (one-based) removed edge at a receiver root.
    pub fn removed_edge(&self, root: u32, j: u64) -> Option<Edge> {
        match self.tails.get(&root)? {
            TailKind::Receiver { plain, families } => Incoming {
                finite: plain.iter().map(|&p| Edge::Plain(p)).collect(),
                families: families.clone(),
            }
            .nth(j.checked_sub(1)?),
            TailKind::Source => None,
        }
    }

    /// Inverse of [`Graph::removed_edge`].
    pub fn removed_index(&self, root: u32, e: Edge) -> Option<u64> {
        match self.tails.get(&root)? {
            TailKind::Receiver { plain, families } => Incoming {
                finite: plain.iter().map(|&p| Edge::Plain(p)).collect(),
                families: families.clone(),
            }
            .position(e)
            .map(|p| p + 1),
            TailKind::Source => None,
        }
    }

    pub fn range(&self, e: Edge) -> Vertex {
        match e {
            Edge::Plain(i) => Vertex::Base(self.edges[i as usize].range),
            Edge::Member { family, .. } => Vertex::Base(self.families[family as usize].range),
            Edge::Tail { root, index } | Edge::Feeder { root, index } => Graph::tail_vertex(root, index - 1),
        }
    }

    pub fn source(&self, e: Edge) -> Vertex {
        match e {
            Edge::Plain(i) => Vertex::Base(self.edges[i as usize].source),
            Edge::Member { family, index } => {
                Vertex::Base(*self.families[family as usize].sources.get(index as usize - 1))
            }
            Edge::Tail { root, index } => Vertex::Tail { root, index },
            Edge::Feeder { root, index } => {
                let removed = self.removed_edge(root, index).expect("feeder at receiver tail");
                self.source(removed)
            }
        }
    }

    /// Canonical enumeration of `r^{-1}(v)`: plain edges in id order, then
    /// family members diagonally (index 1 of each family in id order, then
    /// index 2, …); tail edges precede feeders.
    pub fn incoming(&self, v: Vertex) -> Incoming {
        match v {
            Vertex::Base(b) => match self.tails.get(&b) {
                Some(TailKind::Source) => Incoming {
                    finite: vec![Edge::Tail { root: b, index: 1 }],
                    families: Vec::new(),
                },
                Some(TailKind::Receiver { .. }) => Incoming {
                    finite: vec![Edge::Tail { root: b, index: 1 }, Edge::Feeder { root: b, index: 1 }],
                    families: Vec::new(),
                },
                None => Incoming {
                    finite: self.in_plain[b as usize].iter().map(|&i| Edge::Plain(i)).collect(),
                    families: self.in_fam[b as usize].clone(),
                },
            },
            Vertex::Tail { root, index } => {
                let mut finite = vec![Edge::Tail { root, index: index + 1 }];
                if self.removed_at(root) {
                    finite.push(Edge::Feeder { root, index: index + 1 });
                }
                Incoming { finite, families: Vec::new() }
            }
        }
    }

    pub fn vertex_class(&self, v: Vertex) -> Result<VertexClass> {
        if !self.contains_vertex(v) {
            return Err(Error::UnknownVertex(format!("{v:?}")));
        }
        let inc = self.incoming(v);
        Ok(if !inc.is_finite() {
            VertexClass::InfiniteReceiver
        } else if inc.is_empty() {
            VertexClass::Source
        } else {
            VertexClass::Regular
        })
    }

    /// `s^{-1}(v) = ∅`. Removed receiver edges count through their feeders.
    pub fn is_sink(&self, v: Vertex) -> bool {
        match v {
            Vertex::Tail { .. } => false,
            Vertex::Base(b) => {
                !self.edges.iter().any(|e| e.source == b)
                    && !self
                        .families
                        .iter()
                        .any(|f| f.sources.prefix().contains(&b) || f.sources.period().contains(&b))
            }
        }
    }

    pub fn is_row_finite(&self) -> bool {
        self.base_vertices().all(|v| self.incoming(v).is_finite())
    }

    pub fn has_sources(&self) -> bool {
        self.base_vertices().any(|v| self.incoming(v).is_empty())
    }

    /// Live infinite families (not removed by a receiver tail).
    pub fn has_live_families(&self) -> bool {
        self.families.iter().any(|f| !self.removed_at(f.range))
    }

    /// Validated path construction.
    pub fn path(&self, range: Vertex, edges: Vec<Edge>) -> Result<Path> {
        if !self.contains_vertex(range) {
            return Err(Error::UnknownVertex(format!("{range:?}")));
        }
        let mut cur = range;
        for &e in &edges {
            if !self.contains_edge(e) {
                return Err(Error::UnknownEdge(self.edge_name_checked(e)));
            }
            if self.range(e) != cur {
                return Err(Error::Path(format!(
                    "edge {} does not start at {}",
                    self.edge_name(e),
                    self.vertex_name(cur)
                )));
            }
            cur = self.source(e);
        }
        Ok(Path { range, source: cur, edges })
    }

    fn edge_name_checked(&self, e: Edge) -> String {
        let ok = match e {
            Edge::Plain(i) => (i as usize) < self.edges.len(),
            Edge::Member { family, .. } => (family as usize) < self.families.len(),
            Edge::Tail { root, .. } | Edge::Feeder { root, .. } => (root as usize) < self.vertex_names.len(),
        };
        if ok {
            self.edge_name(e)
        } else {
            format!("{e:?}")
        }
    }

    /// The path consisting of one edge.
    pub fn edge_path(&self, e: Edge) -> Path {
        Path { range: self.range(e), source: self.source(e), edges: vec![e] }
    }

    /// Prefix of length `n` (`n ≤ p.len()`).
    pub fn prefix(&self, p: &Path, n: usize) -> Path {
        let source = if n == 0 { p.range() } else { self.source(p.edges()[n - 1]) };
        Path { range: p.range(), source, edges: p.edges()[..n].to_vec() }
    }

    /// All paths `α` with `r(α) = from` and `|α| = length`, family indices
    /// at most `family_bound`.
    pub fn extend_paths(&self, from: Vertex, length: usize, family_bound: Option<u64>) -> Result<Vec<Path>> {
        let mut level = vec![Path::empty(from)];
        for _ in 0..length {
            let mut next = Vec::new();
            for p in &level {
                for e in self.incoming_bounded(p.source(), family_bound)? {
                    let mut edges = p.edges.clone();
                    edges.push(e);
                    next.push(Path { range: p.range, source: self.source(e), edges });
                }
            }
            level = next;
        }
        Ok(level)
    }

    pub fn incoming_bounded(&self, v: Vertex, family_bound: Option<u64>) -> Result<Vec<Edge>> {
        let inc = self.incoming(v);
        if inc.is_finite() {
            return Ok(inc.finite);
        }
        match family_bound {
            Some(b) => Ok(inc.bounded(b)),
            None => Err(Error::UnboundedFamily(self.vertex_name(v))),
        }
    }

    /// Edges with source `v`; family members and feeders limited to index
    /// `≤ bound`.
    pub fn outgoing_bounded(&self, v: Vertex, bound: u64) -> Vec<Edge> {
        let mut out = Vec::new();
        match v {
            Vertex::Tail { root, index } => out.push(Edge::Tail { root, index }),
            Vertex::Base(b) => {
                for (i, e) in self.edges.iter().enumerate() {
                    let e_ref = Edge::Plain(i as u32);
                    if e.source == b && self.contains_edge(e_ref) {
                        out.push(e_ref);
                    }
                }
                for (f, fam) in self.families.iter().enumerate() {
                    for index in 1..=bound {
                        let e_ref = Edge::Member { family: f as u32, index };
                        if *fam.sources.get(index as usize - 1) == b && self.contains_edge(e_ref) {
                            out.push(e_ref);
                        }
                    }
                }
                for (&root, kind) in &self.tails {
                    if matches!(kind, TailKind::Receiver { .. }) {
                        for index in 1..=bound {
                            let e_ref = Edge::Feeder { root, index };
                            if self.source(e_ref) == v {
                                out.push(e_ref);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// All simple cycles, each starting at its least vertex.
    pub fn simple_cycles(&self) -> Result<Vec<Path>> {
        if !self.families.is_empty() || self.has_tails() {
            return Err(Error::FamiliesPresent);
        }
        let mut dg: Digraph<Vertex> = Digraph::new();
        for v in self.base_vertices() {
            dg.add_node(v);
        }
        for v in self.base_vertices() {
            let i = dg.index_of(&v).expect("node");
            for e in self.incoming(v).finite {
                let j = dg.index_of(&self.source(e)).expect("node");
                dg.add_edge(i, e, j);
            }
        }
        Ok(dg
            .simple_cycles()
            .into_iter()
            .map(|c| {
                let start = *dg.node(c[0].0);
                Path { range: start, source: start, edges: c.into_iter().map(|(_, e)| e).collect() }
            })
            .collect())
    }

    /// Finite window of the graph: base vertices plus tail vertices up to
    /// the folding window, with edges leading to folded targets.
    pub fn folded_digraph(&self, folding: &Folding) -> Digraph<Vertex> {
        let mut dg: Digraph<Vertex> = Digraph::new();
        for v in self.window_vertices(folding) {
            dg.add_node(v);
        }
        for i in 0..dg.len() {
            let v = *dg.node(i);
            let inc = self.incoming(v);
            let edges = if inc.is_finite() { inc.finite } else { inc.bounded(1) };
            for e in edges {
                let t = folding.fold(self.source(e));
                let j = dg.add_node(t);
                dg.add_edge(i, e, j);
            }
        }
        dg
    }

    /// Base vertices followed by tail vertices of index `≤ folding.window()`.
    pub fn window_vertices(&self, folding: &Folding) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.base_vertices().collect();
        for &root in self.tails.keys() {
            for index in 1..=folding.window() {
                out.push(Vertex::Tail { root, index });
            }
        }
        out
    }

    /// Replays a walk recorded in a folded window from a concrete start
    /// vertex, re-indexing tail and feeder edges along the way.
    pub fn realize_walk(&self, start: Vertex, template: &[Edge]) -> Option<Path> {
        let mut cur = start;
        let mut edges = Vec::with_capacity(template.len());
        for &t in template {
            let e = match (t, cur) {
                (Edge::Tail { root, .. }, v) => Edge::Tail { root, index: v.tail_index() + 1 },
                (Edge::Feeder { root, .. }, v) => Edge::Feeder { root, index: v.tail_index() + 1 },
                (t, _) => t,
            };
            if !self.contains_edge(e) || self.range(e) != cur {
                return None;
            }
            edges.push(e);
            cur = self.source(e);
        }
        Some(Path { range: start, source: cur, edges })
    }

    /// Graphviz rendering; arrows point from `s(e)` to `r(e)`.
    pub fn to_dot(&self, tail_depth: u64) -> String {
        let mut out = String::from("digraph G {\n");
        for name in &self.vertex_names {
            let _ = writeln!(out, "  \"{name}\";");
        }
        for (i, e) in self.edges.iter().enumerate() {
            let style = if self.contains_edge(Edge::Plain(i as u32)) { "" } else { ", style=dotted, color=gray" };
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}\"{style}];",
                self.vertex_names[e.source as usize], self.vertex_names[e.range as usize], e.id
            );
        }
        for f in &self.families {
            let period: Vec<&str> = f.sources.period().iter().map(|&v| self.vertex_names[v as usize].as_str()).collect();
            let prefix: Vec<&str> = f.sources.prefix().iter().map(|&v| self.vertex_names[v as usize].as_str()).collect();
            let first = f.sources.get(0);
            let _ = writeln!(
                out,
                "  \"{}\" -> \"{}\" [label=\"{}[∞]\", style=dashed, comment=\"sources: [{}]({})^∞\"];",
                self.vertex_names[*first as usize],
                self.vertex_names[f.range as usize],
                f.id,
                prefix.join(","),
                period.join(",")
            );
        }
        for (&root, kind) in &self.tails {
            for index in 1..=tail_depth {
                let v = Vertex::Tail { root, index };
                let _ = writeln!(out, "  \"{}\" [shape=point];", self.vertex_name(v));
                let e = Edge::Tail { root, index };
                let _ = writeln!(
                    out,
                    "  \"{}\" -> \"{}\" [label=\"{}\"];",
                    self.vertex_name(self.source(e)),
                    self.vertex_name(self.range(e)),
                    self.edge_name(e)
                );
                if matches!(kind, TailKind::Receiver { .. }) {
                    let f = Edge::Feeder { root, index };
                    let _ = writeln!(
                        out,
                        "  \"{}\" -> \"{}\" [label=\"{}\"];",
                        self.vertex_name(self.source(f)),
                        self.vertex_name(self.range(f)),
                        self.edge_name(f)
                    );
                }
            }
        }
        out.push_str("}\n");
        out
    }
}


#[cfg(test)]
mod tests {
    use super::tests_support::spec;
    use super::*;

    fn with_family(mut g: GraphSpec, id: &str, range: &str, prefix: &[&str], period: &[&str]) -> GraphSpec {
        g.families.push(FamilySpec {
            id: id.to_string(),
            range: range.to_string(),
            source_prefix: prefix.iter().map(|s| s.to_string()).collect(),
            source_period: period.iter().map(|s| s.to_string()).collect(),
        });
        g
    }

    #[test]
    fn classes() {
        let g = Graph::from_spec(&spec(&["x"], &[("e", "x", "x")])).unwrap();
        assert_eq!(g.vertex_class(Vertex::Base(0)).unwrap(), VertexClass::Regular);
        assert!(!g.is_sink(Vertex::Base(0)));

        let g = Graph::from_spec(&spec(&["x", "y"], &[("a", "x", "y")])).unwrap();
        let x = Vertex::Base(g.vertex_named("x").unwrap());
        let y = Vertex::Base(g.vertex_named("y").unwrap());
        assert_eq!(g.vertex_class(y).unwrap(), VertexClass::Source);
        assert_eq!(g.vertex_class(x).unwrap(), VertexClass::Regular);
        assert!(g.is_sink(x));

        let g = Graph::from_spec(&with_family(spec(&["x"], &[]), "A", "x", &[], &["x"])).unwrap();
        assert_eq!(g.vertex_class(Vertex::Base(0)).unwrap(), VertexClass::InfiniteReceiver);
        assert!(g.vertex_class(Vertex::Base(7)).is_err());
    }

    #[test]
    fn incoming_is_canonical() {
        let g = Graph::from_spec(&spec(&["v"], &[("b", "v", "v"), ("a", "v", "v")])).unwrap();
        let names: Vec<String> = g.incoming(Vertex::Base(0)).finite.iter().map(|&e| g.edge_name(e)).collect();
        assert_eq!(names, ["a", "b"]);

        let g = Graph::from_spec(&with_family(spec(&["v"], &[]), "F", "v", &[], &["v"])).unwrap();
        let names: Vec<String> = g.incoming(Vertex::Base(0)).take(3).iter().map(|&e| g.edge_name(e)).collect();
        assert_eq!(names, ["F[1]", "F[2]", "F[3]"]);

        let g = Graph::from_spec(&with_family(spec(&["v"], &[("c", "v", "v")]), "F", "v", &[], &["v"])).unwrap();
        let names: Vec<String> = g.incoming(Vertex::Base(0)).take(3).iter().map(|&e| g.edge_name(e)).collect();
        assert_eq!(names, ["c", "F[1]", "F[2]"]);
    }

    #[test]
    fn diagonal_order_over_two_families() {
        let base = with_family(spec(&["v"], &[]), "F", "v", &[], &["v"]);
        let g = Graph::from_spec(&with_family(base, "G", "v", &[], &["v"])).unwrap();
        let inc = g.incoming(Vertex::Base(0));
        let names: Vec<String> = inc.take(5).iter().map(|&e| g.edge_name(e)).collect();
        assert_eq!(names, ["F[1]", "G[1]", "F[2]", "G[2]", "F[3]"]);
        for (j, e) in inc.take(10).into_iter().enumerate() {
            assert_eq!(inc.position(e), Some(j as u64));
        }
    }

    #[test]
    fn extend_paths_examples() {
        let g = Graph::from_spec(&spec(&["x"], &[("e0", "x", "x"), ("e1", "x", "x")])).unwrap();
        assert_eq!(g.extend_paths(Vertex::Base(0), 0, None).unwrap(), vec![Path::empty(Vertex::Base(0))]);
        assert_eq!(g.extend_paths(Vertex::Base(0), 2, None).unwrap().len(), 4);

        let g = Graph::from_spec(&spec(&["x", "y"], &[("a", "x", "y")])).unwrap();
        let x = Vertex::Base(g.vertex_named("x").unwrap());
        assert!(g.extend_paths(x, 2, None).unwrap().is_empty());

        let g = Graph::from_spec(&with_family(spec(&["v"], &[]), "F", "v", &[], &["v"])).unwrap();
        assert!(matches!(g.extend_paths(Vertex::Base(0), 1, None), Err(Error::UnboundedFamily(_))));
        assert_eq!(g.extend_paths(Vertex::Base(0), 2, Some(3)).unwrap().len(), 9);
    }

    #[test]
    fn simple_cycle_examples() {
        let g = Graph::from_spec(&spec(&["x", "y"], &[("a", "x", "y")])).unwrap();
        assert!(g.simple_cycles().unwrap().is_empty());
        let g = Graph::from_spec(&spec(&["x"], &[("e", "x", "x")])).unwrap();
        assert_eq!(g.simple_cycles().unwrap().len(), 1);
        let g = Graph::from_spec(&spec(&["x"], &[("e0", "x", "x"), ("e1", "x", "x")])).unwrap();
        assert_eq!(g.simple_cycles().unwrap().len(), 2);
        let g = Graph::from_spec(&with_family(spec(&["v"], &[]), "F", "v", &[], &["v"])).unwrap();
        assert!(g.simple_cycles().is_err());
    }

    #[test]
    fn invariants_are_enforced() {
        let err = Graph::from_spec(&spec(&["x"], &[("a", "x", "z"), ("a", "x", "x")])).unwrap_err();
        assert!(err.iter().any(|p| p.contains("duplicate edge")));
        assert!(err.iter().any(|p| p.contains("unknown vertex")));
        let err = Graph::from_spec(&with_family(spec(&["x"], &[]), "F", "x", &["x"], &[])).unwrap_err();
        assert!(err.iter().any(|p| p.contains("empty source period")));
    }

    #[test]
    fn path_composition_laws() {
        let g = Graph::from_spec(&spec(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x"), ("c", "y", "y")])).unwrap();
        let x = Vertex::Base(g.vertex_named("x").unwrap());
        for l1 in 0..4 {
            for p in g.extend_paths(x, l1, None).unwrap() {
                for l2 in 0..3 {
                    for q in g.extend_paths(p.source(), l2, None).unwrap() {
                        let pq = p.concat(&q).unwrap();
                        assert_eq!(pq.range(), p.range());
                        assert_eq!(pq.source(), q.source());
                        assert_eq!(pq.len(), p.len() + q.len());
                        assert_eq!(pq.strip_prefix(&p).unwrap(), q);
                    }
                }
            }
        }
    }

    #[test]
    fn source_free_paths_extend() {
        let g = Graph::from_spec(&spec(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x"), ("c", "y", "y")])).unwrap();
        assert!(!g.has_sources());
        for v in g.base_vertices() {
            for n in 0..5 {
                for p in g.extend_paths(v, n, None).unwrap() {
                    assert!(!g.incoming(p.source()).is_empty());
                }
            }
        }
    }

    #[test]
    fn dot_output_mentions_families() {
        let g = Graph::from_spec(&with_family(spec(&["v", "w"], &[("a", "v", "w")]), "F", "v", &["w"], &["v"])).unwrap();
        let dot = g.to_dot(0);
        assert!(dot.contains("\"w\" -> \"v\" [label=\"a\"]"));
        assert!(dot.contains("F[∞]"));
        assert!(dot.contains("style=dashed"));
    }
}
