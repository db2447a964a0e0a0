//! Finite labelled digraphs used as the searchable skeleton of a graph:
//! reachability, simple cycles and cycle detection.

use std::collections::HashMap;
use std::hash::Hash;

use crate::graph::Edge;

#[derive(Clone, Debug)]
pub struct Digraph<N> {
    nodes: Vec<N>,
    index: HashMap<N, usize>,
    adj: Vec<Vec<(Edge, usize)>>,
}

impl<N: Clone + Eq + Hash> Digraph<N> {
    pub fn new() -> Self {
        Digraph {
            nodes: Vec::new(),
            index: HashMap::new(),
            adj: Vec::new(),
        }
    }

    pub fn add_node(&mut self, n: N) -> usize {
        if let Some(&i) = self.index.get(&n) {
            return i;
        }
        let i = self.nodes.len();
        self.nodes.push(n.clone());
        self.index.insert(n, i);
        self.adj.push(Vec::new());
        i
    }

    pub fn add_edge(&mut self, from: usize, label: Edge, to: usize) {
        self.adj[from].push((label, to));
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn node(&self, i: usize) -> &N {
        &self.nodes[i]
    }

    pub fn nodes(&self) -> &[N] {
        &self.nodes
    }

    pub fn index_of(&self, n: &N) -> Option<usize> {
        self.index.get(n).copied()
    }

    pub fn successors(&self, i: usize) -> &[(Edge, usize)] {
        &self.adj[i]
    }

    /// Breadth-first reachability, restricted to nodes accepted by `allowed`.
    /// Returns the predecessor edge for each reached node.
    pub fn reach(
        &self,
        starts: &[usize],
        allowed: impl Fn(usize) -> bool,
    ) -> Vec<Option<Option<(usize, Edge)>>> {
        let mut pred: Vec<Option<Option<(usize, Edge)>>> = vec![None; self.len()];
        let mut queue = std::collections::VecDeque::new();
        for &s in starts {
            if allowed(s) && pred[s].is_none() {
                pred[s] = Some(None);
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &(label, w) in &self.adj[v] {
                if allowed(w) && pred[w].is_none() {
                    pred[w] = Some(Some((v, label)));
                    queue.push_back(w);
                }
            }
        }
        pred
    }

    /// Edge labels of the BFS path from a start to `target`, given `reach` output.
    pub fn trace(pred: &[Option<Option<(usize, Edge)>>], target: usize) -> Option<Vec<Edge>> {
        let mut out = Vec::new();
        let mut cur = target;
        loop {
            match pred[cur]? {
                None => break,
                Some((prev, label)) => {
                    out.push(label);
                    cur = prev;
                }
            }
        }
        out.reverse();
        Some(out)
    }

    /// All simple cycles, each reported once, starting at its least node
    /// index. Each cycle is a list of `(node, edge leaving node)`.
    pub fn simple_cycles(&self) -> Vec<Vec<(usize, Edge)>> {
        let mut out = Vec::new();
        let mut on_path = vec![false; self.len()];
        let mut stack = Vec::new();
        for s in 0..self.len() {
            on_path[s] = true;
            self.cycles_from(s, s, &mut on_path, &mut stack, &mut out);
            on_path[s] = false;
        }
        out
    }

    fn cycles_from(
        &self,
        start: usize,
        v: usize,
        on_path: &mut [bool],
        stack: &mut Vec<(usize, Edge)>,
        out: &mut Vec<Vec<(usize, Edge)>>,
    ) {
        for &(label, w) in &self.adj[v] {
            if w == start {
                let mut cyc = stack.clone();
                cyc.push((v, label));
                out.push(cyc);
            } else if w > start && !on_path[w] {
                on_path[w] = true;
                stack.push((v, label));
                self.cycles_from(start, w, on_path, stack, out);
                stack.pop();
                on_path[w] = false;
            }
        }
    }

    /// Some cycle inside the node subset, if any.
    pub fn find_cycle(&self, allowed: impl Fn(usize) -> bool) -> Option<Vec<(usize, Edge)>> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let mut state = vec![0u8; self.len()];
        let mut stack: Vec<(usize, Edge)> = Vec::new();
        for s in 0..self.len() {
            if !allowed(s) || state[s] != 0 {
                continue;
            }
            if let Some(c) = self.cycle_dfs(s, &allowed, &mut state, &mut stack) {
                return Some(c);
            }
        }
        None
    }

    fn cycle_dfs(
        &self,
        v: usize,
        allowed: &impl Fn(usize) -> bool,
        state: &mut [u8],
        stack: &mut Vec<(usize, Edge)>,
    ) -> Option<Vec<(usize, Edge)>> {
        state[v] = 1;
        for &(label, w) in &self.adj[v] {
            if !allowed(w) {
                continue;
            }
            if state[w] == 1 {
                let pos = stack.iter().position(|(n, _)| *n == w).unwrap_or(stack.len());
                let mut cyc: Vec<(usize, Edge)> = stack[pos..].to_vec();
                cyc.push((v, label));
                return Some(cyc);
            }
            if state[w] == 0 {
                stack.push((v, label));
                if let Some(c) = self.cycle_dfs(w, allowed, state, stack) {
                    return Some(c);
                }
                stack.pop();
            }
        }
        state[v] = 2;
        None
    }
}

impl<N: Clone + Eq + Hash> Default for Digraph<N> {
    fn default() -> Self {
        Self::new()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_loops_give_two_cycles() {
        let mut g: Digraph<u8> = Digraph::new();
        let x = g.add_node(0);
        g.add_edge(x, Edge::Plain(0), x);
        g.add_edge(x, Edge::Plain(1), x);
        assert_eq!(g.simple_cycles().len(), 2);
    }

    #[test]
    fn triangle_reported_once() {
        let mut g: Digraph<u8> = Digraph::new();
        for i in 0..3 {
            g.add_node(i);
        }
        for i in 0..3 {
            g.add_edge(i, Edge::Plain(i as u32), (i + 1) % 3);
        }
        let c = g.simple_cycles();
        assert_eq!(c.len(), 1);
        assert_eq!(c[0][0].0, 0);
        assert!(g.find_cycle(|_| true).is_some());
        assert!(g.find_cycle(|i| i != 1).is_none());
    }
}
