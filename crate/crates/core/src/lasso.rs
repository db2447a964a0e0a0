//! Eventually periodic infinite paths: a finite head followed either by a
//! repeated cycle or by the remainder of a tail ray `e_k e_{k+1} …`.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::graph::{Edge, Graph, Path, Vertex};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LassoTail {
    /// `ν^∞` for a closed path `ν` at the source of the head.
    Cycle(Vec<Edge>),
    /// `e_{start} e_{start+1} …` along the tail at `root`.
    Ray { root: u32, start: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lasso {
    head: Path,
    tail: LassoTail,
}

fn primitive_root(cycle: &[Edge]) -> &[Edge] {
    let n = cycle.len();
    for d in 1..=n {
        if n.is_multiple_of(d) && (0..n).all(|i| cycle[i] == cycle[i % d]) {
            return &cycle[..d];
        }
    }
    cycle
}

impl Lasso {
    /// `head · cycle^∞`, normalized. The cycle must be a nonempty closed
    /// path starting at `s(head)`.
    pub fn new(graph: &Graph, head: Path, cycle: Vec<Edge>) -> Result<Lasso> {
        let closed = graph.path(head.source(), cycle.clone())?;
        if closed.is_empty() || closed.source() != closed.range() {
            return Err(crate::error::Error::Path("lasso cycle must be a nonempty closed path".into()));
        }
        Ok(Lasso { head, tail: LassoTail::Cycle(cycle) }.normalize(graph))
    }

    /// `head · e_start e_{start+1} …` along the tail at `root`.
    pub fn ray(graph: &Graph, head: Path, root: u32, start: u64) -> Result<Lasso> {
        let start_vertex = if start <= 1 { Vertex::Base(root) } else { Vertex::Tail { root, index: start - 1 } };
        if start == 0 || !graph.tails().contains_key(&root) || head.source() != start_vertex {
            return Err(crate::error::Error::Path("ray does not continue the head".into()));
        }
        Ok(Lasso { head, tail: LassoTail::Ray { root, start } }.normalize(graph))
    }

    pub(crate) fn from_parts(head: Path, tail: LassoTail) -> Lasso {
        Lasso { head, tail }
    }

    pub fn head(&self) -> &Path {
        &self.head
    }

    pub fn tail(&self) -> &LassoTail {
        &self.tail
    }

    pub fn range(&self) -> Vertex {
        self.head.range()
    }

    /// Canonical form: primitive cycle, head not ending with the cycle's
    /// last edge (rays: head not ending with the preceding tail edge).
    pub fn normalize(&self, graph: &Graph) -> Lasso {
        let mut head = self.head.edges().to_vec();
        let tail = match &self.tail {
            LassoTail::Cycle(c) => {
                let mut cyc = primitive_root(c).to_vec();
                while head.last().is_some() && head.last() == cyc.last() {
                    head.pop();
                    cyc.rotate_right(1);
                }
                LassoTail::Cycle(cyc)
            }
            &LassoTail::Ray { root, mut start } => {
                while start > 1 && head.last() == Some(&Edge::Tail { root, index: start - 1 }) {
                    head.pop();
                    start -= 1;
                }
                LassoTail::Ray { root, start }
            }
        };
        let source = match head.last() {
            Some(&e) => graph.source(e),
            None => self.head.range(),
        };
        Lasso { head: Path::from_parts(self.head.range(), source, head), tail }
    }

    /// First `n` edges.
    pub fn unroll(&self, n: usize) -> Vec<Edge> {
        let mut out: Vec<Edge> = self.head.edges().iter().take(n).copied().collect();
        let mut k = 0usize;
        while out.len() < n {
            out.push(self.tail_edge(k));
            k += 1;
        }
        out
    }

    /// Edge at position `k` past the head.
    fn tail_edge(&self, k: usize) -> Edge {
        match &self.tail {
            LassoTail::Cycle(c) => c[k % c.len()],
            LassoTail::Ray { root, start } => Edge::Tail { root: *root, index: start + k as u64 },
        }
    }

    pub fn edge_at(&self, k: usize) -> Edge {
        if k < self.head.len() {
            self.head.edges()[k]
        } else {
            self.tail_edge(k - self.head.len())
        }
    }

    pub fn starts_with(&self, p: &Path) -> bool {
        p.range() == self.range() && p.edges().iter().enumerate().all(|(k, &e)| self.edge_at(k) == e)
    }

    /// The finite prefix of length `n`.
    pub fn prefix(&self, graph: &Graph, n: usize) -> Path {
        let edges = self.unroll(n);
        let source = edges.last().map(|&e| graph.source(e)).unwrap_or(self.range());
        Path::from_parts(self.range(), source, edges)
    }

    /// `η` with `self = p · η`.
    pub fn strip_prefix(&self, graph: &Graph, p: &Path) -> Option<Lasso> {
        if !self.starts_with(p) {
            return None;
        }
        if p.len() <= self.head.len() {
            let head = self.head.strip_prefix(&graph.prefix(&self.head, p.len()))?;
            return Some(Lasso { head, tail: self.tail.clone() }.normalize(graph));
        }
        let k = p.len() - self.head.len();
        let tail = match &self.tail {
            LassoTail::Cycle(c) => {
                let mut c = c.clone();
                let n = c.len();
                c.rotate_left(k % n);
                LassoTail::Cycle(c)
            }
            LassoTail::Ray { root, start } => LassoTail::Ray { root: *root, start: start + k as u64 },
        };
        Some(Lasso { head: Path::empty(p.source()), tail }.normalize(graph))
    }

    /// `p · self`.
    pub fn prepend(&self, graph: &Graph, p: &Path) -> Option<Lasso> {
        let head = p.concat(&self.head)?;
        Some(Lasso { head, tail: self.tail.clone() }.normalize(graph))
    }

    /// Vertices visited infinitely often.
    pub fn recurrent_vertices(&self, graph: &Graph) -> Option<Vec<Vertex>> {
        match &self.tail {
            LassoTail::Cycle(c) => Some(c.iter().map(|&e| graph.range(e)).collect()),
            LassoTail::Ray { .. } => None,
        }
    }

    pub fn name(&self, graph: &Graph) -> String {
        let tail = match &self.tail {
            LassoTail::Cycle(c) => {
                let body: Vec<String> = c.iter().map(|&e| graph.edge_name(e)).collect();
                format!("({})^inf", body.join("."))
            }
            LassoTail::Ray { root, start } => {
                format!("[{}...]", graph.edge_name(Edge::Tail { root: *root, index: *start }))
            }
        };
        if self.head.is_empty() {
            if matches!(self.tail, LassoTail::Ray { .. }) {
                format!("@{}.{tail}", graph.vertex_name(self.range()))
            } else {
                tail
            }
        } else {
            format!("{}.{tail}", graph.path_name(&self.head))
        }
    }

    /// Length of head plus cycle; rays count their head only.
    pub fn size(&self) -> usize {
        self.head.len()
            + match &self.tail {
                LassoTail::Cycle(c) => c.len(),
                LassoTail::Ray { .. } => 1,
            }
    }
}

/// All canonical lassos with range `from`, head length `≤ max_head` and
/// cycle length `≤ max_cycle`; rays are included when the head reaches a
/// tail. Sorted and deduplicated.
pub fn lassos_from(
    graph: &Graph,
    from: Vertex,
    max_head: usize,
    max_cycle: usize,
    family_bound: Option<u64>,
) -> Result<Vec<Lasso>> {
    let mut out = BTreeSet::new();
    let mut cycles_at = std::collections::HashMap::new();
    for h in 0..=max_head {
        for head in graph.extend_paths(from, h, family_bound)? {
            let v = head.source();
            if let Vertex::Tail { root, index } = v {
                out.insert(Lasso { head: head.clone(), tail: LassoTail::Ray { root, start: index + 1 } }.normalize(graph));
                continue;
            }
            if let Vertex::Base(b) = v {
                if graph.tails().contains_key(&b) {
                    out.insert(Lasso { head: head.clone(), tail: LassoTail::Ray { root: b, start: 1 } }.normalize(graph));
                }
            }
            if let std::collections::hash_map::Entry::Vacant(e) = cycles_at.entry(v) {
                let mut cyc = Vec::new();
                for l in 1..=max_cycle {
                    for c in graph.extend_paths(v, l, family_bound)? {
                        if c.source() == v {
                            cyc.push(c.edges().to_vec());
                        }
                    }
                }
                e.insert(cyc);
            }
            for c in &cycles_at[&v] {
                out.insert(Lasso { head: head.clone(), tail: LassoTail::Cycle(c.clone()) }.normalize(graph));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// Lassos at `from` with [`Lasso::size`] at most `max_size`. Cycles are
/// only enumerated up to the size left over by the head.
pub fn lassos_up_to(graph: &Graph, from: Vertex, max_size: usize, family_bound: Option<u64>) -> Result<Vec<Lasso>> {
    let mut out = BTreeSet::new();
    let mut cycles_at: std::collections::HashMap<(Vertex, usize), Vec<Vec<Edge>>> = std::collections::HashMap::new();
    for h in 0..max_size {
        for head in graph.extend_paths(from, h, family_bound)? {
            let v = head.source();
            match v {
                Vertex::Tail { root, index } => {
                    out.insert(Lasso { head, tail: LassoTail::Ray { root, start: index + 1 } }.normalize(graph));
                    continue;
                }
                Vertex::Base(b) if graph.tails().contains_key(&b) => {
                    out.insert(Lasso { head: head.clone(), tail: LassoTail::Ray { root: b, start: 1 } }.normalize(graph));
                }
                Vertex::Base(_) => {}
            }
            let room = max_size - h;
            if let std::collections::hash_map::Entry::Vacant(e) = cycles_at.entry((v, room)) {
                let mut cyc = Vec::new();
                for l in 1..=room {
                    for c in graph.extend_paths(v, l, family_bound)? {
                        if c.source() == v {
                            cyc.push(c.edges().to_vec());
                        }
                    }
                }
                e.insert(cyc);
            }
            for c in &cycles_at[&(v, room)] {
                out.insert(Lasso { head: head.clone(), tail: LassoTail::Cycle(c.clone()) }.normalize(graph));
            }
        }
    }
    Ok(out.into_iter().collect())
}

/// [`lassos_from`] over every base vertex.
pub fn all_lassos(graph: &Graph, max_head: usize, max_cycle: usize, family_bound: Option<u64>) -> Result<Vec<Lasso>> {
    let mut out = Vec::new();
    for v in graph.base_vertices() {
        out.extend(lassos_from(graph, v, max_head, max_cycle, family_bound)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{EdgeSpec, GraphSpec};

    fn graph(vertices: &[&str], edges: &[(&str, &str, &str)]) -> Graph {
        Graph::from_spec(&GraphSpec {
            vertices: vertices.iter().map(|s| s.to_string()).collect(),
            edges: edges
                .iter()
                .map(|(id, r, s)| EdgeSpec { id: id.to_string(), range: r.to_string(), source: s.to_string() })
                .collect(),
            families: Vec::new(),
        })
        .unwrap()
    }

    fn path(g: &Graph, from: &str, edges: &[&str]) -> Path {
        let v = Vertex::Base(g.vertex_named(from).unwrap());
        g.path(v, edges.iter().map(|e| g.parse_edge(e).unwrap()).collect()).unwrap()
    }

    fn edges(g: &Graph, names: &[&str]) -> Vec<Edge> {
        names.iter().map(|e| g.parse_edge(e).unwrap()).collect()
    }

    #[test]
    fn size_bounded_enumeration_matches_filtering() {
        let g = graph(&["x", "y"], &[("a", "x", "x"), ("b", "x", "y"), ("c", "y", "x"), ("d", "y", "y")]);
        for v in g.base_vertices() {
            for n in 1..=5 {
                let filtered: Vec<Lasso> =
                    lassos_from(&g, v, n - 1, n, None).unwrap().into_iter().filter(|l| l.size() <= n).collect();
                assert_eq!(lassos_up_to(&g, v, n, None).unwrap(), filtered);
            }
        }
    }

    #[test]
    fn proper_power_is_reduced() {
        let g = graph(&["x"], &[("e", "x", "x")]);
        let l = Lasso::new(&g, path(&g, "x", &[]), edges(&g, &["e", "e"])).unwrap();
        assert_eq!(l.tail(), &LassoTail::Cycle(edges(&g, &["e"])));
        assert!(l.head().is_empty());
    }

    #[test]
    fn head_is_absorbed() {
        let g = graph(&["x"], &[("e", "x", "x")]);
        let l = Lasso::new(&g, path(&g, "x", &["e"]), edges(&g, &["e"])).unwrap();
        assert!(l.head().is_empty());
    }

    #[test]
    fn rotated_forms_agree() {
        let g = graph(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x")]);
        let l1 = Lasso::new(&g, path(&g, "x", &["a", "b"]), edges(&g, &["a", "b"])).unwrap();
        let l2 = Lasso::new(&g, path(&g, "x", &["a"]), edges(&g, &["b", "a"])).unwrap();
        assert_eq!(l1, l2);
        let depth = 2 * (2 + 2);
        assert_eq!(l1.unroll(depth), l2.unroll(depth));
    }

    #[test]
    fn normalization_is_idempotent_and_faithful() {
        let g = graph(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x"), ("c", "x", "x")]);
        let ls = all_lassos(&g, 3, 3, None).unwrap();
        for l in &ls {
            assert_eq!(&l.normalize(&g), l);
        }
        for (i, l) in ls.iter().enumerate() {
            for m in &ls[i + 1..] {
                let depth = 2 * (l.size() + m.size());
                assert_ne!(l.unroll(depth), m.unroll(depth), "{} vs {}", l.name(&g), m.name(&g));
            }
        }
    }

    #[test]
    fn strip_and_prepend_invert() {
        let g = graph(&["x", "y"], &[("a", "x", "y"), ("b", "y", "x"), ("c", "x", "x")]);
        for l in all_lassos(&g, 2, 2, None).unwrap() {
            for n in 0..5 {
                let p = l.prefix(&g, n);
                let rest = l.strip_prefix(&g, &p).unwrap();
                assert_eq!(rest.prepend(&g, &p).unwrap(), l);
                assert_eq!(rest.unroll(6), l.unroll(n + 6)[n..].to_vec());
            }
        }
    }
}
