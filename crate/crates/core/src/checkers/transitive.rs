//! Weak `G`-transitivity: every vertex has a descendant in `G·V(ω)` for
//! every infinite path `ω`.
//!
//! Every infinite path either runs up a tail or visits base vertices
//! infinitely often, in which case its visited set contains the vertices
//! of a simple cycle. Reaching a tail vertex of a cycle forces reaching a
//! base vertex of the same cycle (through the feeder it leaves by), so the
//! test runs over the base vertices of simple cycles in the base skeleton
//! (plain edges plus one detour through each receiver tail per target),
//! and over tail rays.

use std::collections::HashMap;

use crate::digraph::Digraph;
use crate::error::Result;
use crate::graph::{Edge, Path, TailKind, Vertex};
use crate::group::GroupElement;
use crate::triple::Triple;

use super::{Budget, Connection, Evidence, OmegaClass, Verdict, Window};

/// Simple cycles of the base skeleton, realized as closed paths.
pub(crate) fn base_cycles(t: &Triple, win: &Window) -> Vec<Path> {
    let g = t.graph();
    let mut dg: Digraph<Vertex> = Digraph::new();
    for v in g.base_vertices() {
        dg.add_node(v);
    }
    let mut arcs: HashMap<(usize, usize, Edge), Path> = HashMap::new();
    for v in g.base_vertices() {
        let i = dg.index_of(&v).expect("base");
        let Vertex::Base(b) = v else { unreachable!() };
        let mut detours: Vec<Path> = Vec::new();
        match g.tails().get(&b) {
            Some(TailKind::Receiver { .. }) => {
                for j in 1..=win.fold.window() + 1 {
                    detours.push(crate::desing::alpha(g, b, j));
                }
            }
            Some(TailKind::Source) => {}
            None => {
                for e in g.incoming(v).finite {
                    detours.push(g.edge_path(e));
                }
            }
        }
        for p in detours {
            let j = dg.index_of(&p.source()).expect("detours end at base vertices");
            let key = (i, j, p.edges()[0]);
            if let std::collections::hash_map::Entry::Vacant(slot) = arcs.entry(key) {
                dg.add_edge(i, key.2, j);
                slot.insert(p);
            }
        }
    }
    dg.simple_cycles()
        .into_iter()
        .map(|cyc| {
            let mut path = Path::empty(*dg.node(cyc[0].0));
            for (k, &(i, e)) in cyc.iter().enumerate() {
                let j = cyc.get(k + 1).map_or(cyc[0].0, |n| n.0);
                path = path.concat(&arcs[&(i, j, e)]).expect("arcs compose");
            }
            path
        })
        .collect()
}

pub(crate) fn path_vertices(t: &Triple, p: &Path) -> Vec<Vertex> {
    let mut out = vec![p.range()];
    out.extend(p.edges().iter().map(|&e| t.graph().source(e)));
    out
}

pub(crate) fn omega_classes(t: &Triple, win: &Window) -> Vec<OmegaClass> {
    let mut out: Vec<OmegaClass> = base_cycles(t, win).into_iter().map(OmegaClass::Cycle).collect();
    out.extend(t.graph().tails().keys().map(|&r| OmegaClass::Ray(r)));
    out
}

fn connect(t: &Triple, win: &Window, y: Vertex, class: &OmegaClass) -> Option<Connection> {
    let mut targets: HashMap<Vertex, (Vertex, GroupElement)> = HashMap::new();
    match class {
        OmegaClass::Cycle(c) => {
            for v in path_vertices(t, c).into_iter().filter(|v| v.base().is_some()) {
                for (w, g) in t.orbit_elements(v) {
                    targets.entry(w).or_insert((v, g));
                }
            }
        }
        OmegaClass::Ray(r) => {
            let root = Vertex::Base(*r);
            if let Vertex::Tail { root: yr, index } = y {
                if let Some((_, g)) = t.orbit_elements(root).into_iter().find(|(w, _)| *w == Vertex::Base(yr)) {
                    return Some(Connection {
                        from: y,
                        class: class.clone(),
                        walk: Path::empty(y),
                        via: g,
                        on_class: Vertex::Tail { root: *r, index },
                    });
                }
            }
            for (w, g) in t.orbit_elements(root) {
                targets.entry(w).or_insert((root, g));
            }
        }
    }
    let (template, _) = win.walk_to(y, |v| targets.contains_key(&v))?;
    let walk = t.graph().realize_walk(y, &template).expect("window walk replays");
    let (on_class, via) = targets[&walk.source()].clone();
    Some(Connection { from: y, class: class.clone(), walk, via, on_class })
}

/// Exact for finite groups and for the integers alike: only orbits of
/// vertices enter, and those are finite.
pub fn weakly_g_transitive(t: &Triple, _budget: &Budget) -> Result<Verdict> {
    let win = Window::new(t)?;
    let classes = omega_classes(t, &win);
    let mut out = Vec::new();
    for &y in win.vertices() {
        for class in &classes {
            match connect(t, &win, y, class) {
                Some(c) => out.push(c),
                None => return Ok(Verdict::Refuted(Evidence::Disconnected { from: y, class: class.clone() })),
            }
        }
    }
    Ok(Verdict::Proven(Evidence::Connections(out)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::desing::desingularize;

    #[test]
    fn strongly_connected_graphs_are_transitive() {
        for t in [corpus::two_loops(), corpus::one_loop(), corpus::z2_two_loop_swap()] {
            assert!(weakly_g_transitive(&t, &Budget::default()).unwrap().is_proven());
        }
    }

    #[test]
    fn swapped_components_are_joined_by_the_group() {
        let t = corpus::z2_swapped_components();
        let v = weakly_g_transitive(&t, &Budget::default()).unwrap();
        assert!(v.is_proven(), "{v:?}");
    }

    #[test]
    fn source_tail_cannot_reach_the_loop() {
        let t = corpus::source_with_loop();
        let f = desingularize(&t, 8).unwrap().triple;
        let v = weakly_g_transitive(&f, &Budget::default()).unwrap();
        let Verdict::Refuted(Evidence::Disconnected { from, .. }) = v else {
            panic!("expected a refutation, got {v:?}");
        };
        // y and its tail only see the tail, never the loop at x
        assert_ne!(from, Vertex::Base(0));
    }

    #[test]
    fn receiver_tail_cycles_are_found() {
        let f = desingularize(&corpus::receiver(), 8).unwrap().triple;
        let win = Window::new(&f).unwrap();
        let cycles = base_cycles(&f, &win);
        assert!(cycles.iter().all(|c| c.range() == c.source() && !c.is_empty()));
        assert!(!cycles.is_empty());
    }
}
