//! Minimal strongly fixed paths and the finiteness test behind
//! Hausdorffness of the tight groupoid.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, Path, Vertex};
use crate::group::GroupElement;
use crate::triple::Triple;

use super::{nontrivial_elements, Budget, Evidence, InfiniteMinimal, MinimalSet, StateGraph, Verdict, Window};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinimalFixed {
    Finite(Vec<Path>),
    Infinite(InfiniteMinimal),
    Unknown(String),
}

/// Minimal paths `α` with `r(α) = x` that `g` strongly fixes, i.e.
/// `g·α = α` and `φ(g, α) = 1` while no proper prefix has that property.
pub fn minimal_strongly_fixed(t: &Triple, g: &GroupElement, x: Vertex, budget: &Budget) -> Result<MinimalFixed> {
    let win = Window::new(t)?;
    minimal_in(t, &win, g, x, budget)
}

pub(crate) fn minimal_in(t: &Triple, win: &Window, g: &GroupElement, x: Vertex, budget: &Budget) -> Result<MinimalFixed> {
    let group = t.group();
    if group.is_identity(g) {
        return Ok(MinimalFixed::Finite(vec![Path::empty(x)]));
    }
    if t.act_vertex(g, x) != x {
        return Ok(MinimalFixed::Finite(Vec::new()));
    }
    let sg = match StateGraph::explore(t, win, x, g.clone(), true, |h| !group.is_identity(h), budget.states) {
        Ok(sg) => sg,
        Err(Error::Budget(n)) => return Ok(MinimalFixed::Unknown(format!("more than {n} twist states"))),
        Err(e) => return Err(e),
    };
    let done = |i: usize| group.is_identity(sg.twist(i));
    let co = sg.coreach(done);
    let live = |i: usize| !done(i) && co[i];

    if let Some(cycle) = sg.dg.find_cycle(live) {
        let c0 = cycle[0].0;
        let prefix = sg.path_within(0, c0, live).expect("cycle node is reachable");
        let exit = sg.path_to(c0, live, done).expect("cycle node reaches twist 1").0;
        return Ok(MinimalFixed::Infinite(InfiniteMinimal {
            g: g.clone(),
            x,
            prefix,
            cycle: cycle.into_iter().map(|(_, e)| e).collect(),
            exit,
        }));
    }

    // The live part is acyclic: enumerate every walk into a twist-1 node.
    let mut templates: Vec<Vec<Edge>> = Vec::new();
    let mut stack: Vec<(usize, Vec<Edge>)> = vec![(0, Vec::new())];
    while let Some((i, walk)) = stack.pop() {
        for &(e, j) in sg.dg.successors(i) {
            let mut w = walk.clone();
            w.push(e);
            if done(j) {
                templates.push(w);
                if templates.len() > budget.states {
                    return Ok(MinimalFixed::Unknown(format!("more than {} minimal paths", budget.states)));
                }
            } else if live(j) {
                stack.push((j, w));
            }
        }
    }
    let mut paths: Vec<Path> = templates
        .iter()
        .map(|w| t.graph().realize_walk(x, w).expect("state walk replays"))
        .collect();
    paths.sort_by(|a, b| (a.len(), a.edges()).cmp(&(b.len(), b.edges())));
    Ok(MinimalFixed::Finite(paths))
}

/// Hausdorff iff every `(g, x)` has finitely many minimal strongly fixed
/// paths. Over the integers only refutations are conclusive.
pub fn is_hausdorff(t: &Triple, budget: &Budget) -> Result<Verdict> {
    let win = Window::new(t)?;
    let (els, complete) = nontrivial_elements(t, budget);
    let pairs: Vec<(GroupElement, Vertex)> = els
        .iter()
        .flat_map(|g| win.vertices().iter().filter(|&&x| t.act_vertex(g, x) == x).map(move |&x| (g.clone(), x)))
        .collect();
    let results: Vec<Result<MinimalFixed>> = pairs.par_iter().map(|(g, x)| minimal_in(t, &win, g, *x, budget)).collect();

    let mut sets = Vec::new();
    let mut unknown = None;
    for ((g, x), r) in pairs.into_iter().zip(results) {
        match r? {
            MinimalFixed::Infinite(inf) => return Ok(Verdict::Refuted(Evidence::InfiniteMinimal(inf))),
            MinimalFixed::Unknown(why) => {
                unknown.get_or_insert_with(|| {
                    format!("{} at {}: {why}", t.group().name(&g), t.graph().vertex_name(x))
                });
            }
            MinimalFixed::Finite(paths) => sets.push(MinimalSet { g, x, paths }),
        }
    }
    if let Some(why) = unknown {
        return Ok(Verdict::Unknown(why));
    }
    if !complete {
        return Ok(Verdict::Unknown(format!(
            "no infinite minimal set for |n| ≤ {}; the integers cannot be exhausted",
            budget.words
        )));
    }
    Ok(Verdict::Proven(Evidence::MinimalSets(sets)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    fn names(t: &Triple, paths: &[Path]) -> Vec<String> {
        paths.iter().map(|p| t.graph().path_name(p)).collect()
    }

    #[test]
    fn identity_has_the_empty_path() {
        let t = corpus::two_loops();
        let x = Vertex::Base(0);
        let r = minimal_strongly_fixed(&t, &t.group().identity(), x, &Budget::default()).unwrap();
        assert_eq!(r, MinimalFixed::Finite(vec![Path::empty(x)]));
    }

    #[test]
    fn swap_fixes_no_edge() {
        let t = corpus::z2_two_loop_swap();
        let s = t.group().parse("s").unwrap();
        let r = minimal_strongly_fixed(&t, &s, Vertex::Base(0), &Budget::default()).unwrap();
        assert_eq!(r, MinimalFixed::Finite(Vec::new()));
        assert!(is_hausdorff(&t, &Budget::default()).unwrap().is_proven());
    }

    #[test]
    fn trivial_twist_makes_every_edge_minimal() {
        let t = corpus::z2_identity_trivial();
        let s = t.group().parse("s").unwrap();
        let MinimalFixed::Finite(paths) = minimal_strongly_fixed(&t, &s, Vertex::Base(0), &Budget::default()).unwrap()
        else {
            panic!("expected a finite set");
        };
        assert_eq!(names(&t, &paths), ["e0", "e1"]);
    }

    #[test]
    fn persistent_twist_fixes_nothing_strongly() {
        let t = corpus::z2_identity_twist();
        let s = t.group().parse("s").unwrap();
        let r = minimal_strongly_fixed(&t, &s, Vertex::Base(0), &Budget::default()).unwrap();
        assert_eq!(r, MinimalFixed::Finite(Vec::new()));
    }

    #[test]
    fn odometer_is_not_refuted() {
        let t = corpus::z_odometer();
        let v = is_hausdorff(&t, &Budget::default()).unwrap();
        assert!(!v.is_refuted(), "{v:?}");
    }
}
