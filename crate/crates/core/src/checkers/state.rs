//! Twist-state graphs: nodes `(v, h)` of a folded vertex and a group
//! element, with a transition `(v, h) →a (s(a), φ(h, a))` for each edge `a`
//! received by `v`.

use std::collections::VecDeque;

use crate::digraph::Digraph;
use crate::error::{Error, Result};
use crate::graph::{Edge, Vertex};
use crate::group::GroupElement;
use crate::triple::Triple;

use super::Window;

pub struct StateGraph {
    pub dg: Digraph<(Vertex, GroupElement)>,
    /// Edges moved by the twist at each node (only filled in fixing mode).
    pub moved: Vec<Vec<Edge>>,
}

impl StateGraph {
    /// Explores from `(x, g)`. In fixing mode only edges with `h·a = a` are
    /// followed. Nodes rejected by `expand` get no successors.
    pub(crate) fn explore(
        t: &Triple,
        win: &Window,
        x: Vertex,
        g: GroupElement,
        fixing: bool,
        expand: impl Fn(&GroupElement) -> bool,
        budget: usize,
    ) -> Result<StateGraph> {
        let mut dg = Digraph::new();
        let mut moved: Vec<Vec<Edge>> = Vec::new();
        let start = dg.add_node((win.fold.fold(x), g));
        moved.push(Vec::new());
        let mut queue = VecDeque::from([start]);
        let mut seen = vec![true];
        while let Some(i) = queue.pop_front() {
            let (v, h) = dg.node(i).clone();
            if !expand(&h) {
                continue;
            }
            for a in t.graph().incoming(v).finite {
                if fixing && t.act_edge(&h, a) != a {
                    moved[i].push(a);
                    continue;
                }
                let next = (win.fold.fold(t.graph().source(a)), t.cocycle(&h, a));
                let j = dg.add_node(next);
                if j == seen.len() {
                    if j >= budget {
                        return Err(Error::Budget(budget));
                    }
                    seen.push(true);
                    moved.push(Vec::new());
                    queue.push_back(j);
                }
                dg.add_edge(i, a, j);
            }
        }
        Ok(StateGraph { dg, moved })
    }

    pub fn len(&self) -> usize {
        self.dg.len()
    }

    pub fn is_empty(&self) -> bool {
        self.dg.is_empty()
    }

    pub fn twist(&self, i: usize) -> &GroupElement {
        &self.dg.node(i).1
    }

    /// Nodes from which some node accepted by `target` is reachable.
    pub fn coreach(&self, target: impl Fn(usize) -> bool) -> Vec<bool> {
        let n = self.dg.len();
        let mut rev: Vec<Vec<usize>> = vec![Vec::new(); n];
        for i in 0..n {
            for &(_, j) in self.dg.successors(i) {
                rev[j].push(i);
            }
        }
        let mut mark = vec![false; n];
        let mut queue: VecDeque<usize> = (0..n).filter(|&i| target(i)).collect();
        for &i in &queue {
            mark[i] = true;
        }
        while let Some(j) = queue.pop_front() {
            for &i in &rev[j] {
                if !mark[i] {
                    mark[i] = true;
                    queue.push_back(i);
                }
            }
        }
        mark
    }

    /// Walk template from node `from` to some node accepted by `target`,
    /// passing only through `allowed` nodes before the last step.
    pub fn path_to(&self, from: usize, allowed: impl Fn(usize) -> bool, target: impl Fn(usize) -> bool) -> Option<(Vec<Edge>, usize)> {
        if target(from) {
            return Some((Vec::new(), from));
        }
        let pred = self.dg.reach(&[from], |i| i == from || allowed(i));
        let mut best: Option<(Vec<Edge>, usize)> = None;
        for i in 0..self.dg.len() {
            if pred[i].is_none() {
                continue;
            }
            for &(e, j) in self.dg.successors(i) {
                if !target(j) {
                    continue;
                }
                let mut walk = Digraph::<(Vertex, GroupElement)>::trace(&pred, i).expect("reached");
                walk.push(e);
                if best.as_ref().is_none_or(|(w, _)| walk.len() < w.len()) {
                    best = Some((walk, j));
                }
            }
        }
        best
    }

    /// Walk template from `from` to `to` inside the node subset.
    pub fn path_within(&self, from: usize, to: usize, allowed: impl Fn(usize) -> bool) -> Option<Vec<Edge>> {
        let pred = self.dg.reach(&[from], allowed);
        Digraph::<(Vertex, GroupElement)>::trace(&pred, to)
    }
}
