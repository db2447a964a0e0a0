#![allow(dead_code)]

use std::collections::{BTreeMap, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::Rng;

use ssgraph::graph::{EdgeSpec, Graph, GraphSpec, Path, Vertex};
use ssgraph::group::Group;
use ssgraph::lasso::{all_lassos, Lasso};
use ssgraph::semigroup::{apply, SElement};
use ssgraph::triple::{Triple, TripleData};

pub const STATES: usize = 4096;

/// Finite-graph corpus triples used for the arithmetic checks.
pub fn arithmetic_corpus() -> Vec<(&'static str, Triple)> {
    use ssgraph::corpus::*;
    vec![
        ("one_loop", one_loop()),
        ("two_loops", two_loops()),
        ("two_vertex", two_vertex()),
        ("z2_two_loop_swap", z2_two_loop_swap()),
        ("z2_identity_twist", z2_identity_twist()),
        ("z2_identity_trivial", z2_identity_trivial()),
        ("z2_swapped_components", z2_swapped_components()),
        ("z_odometer", z_odometer()),
        ("z_three_cycle", z_three_cycle()),
    ]
}

/// Every nonzero element `(α, g, β)` with `|α|, |β| ≤ max_len` and `g` in
/// the test ball, plus zero.
pub fn element_pool(t: &Triple, max_len: usize, words: usize) -> Vec<SElement> {
    let g = t.graph();
    let mut by_source: BTreeMap<Vertex, Vec<Path>> = BTreeMap::new();
    for v in g.base_vertices() {
        for n in 0..=max_len {
            for p in g.extend_paths(v, n, Some(max_len as u64)).expect("bounded") {
                by_source.entry(p.source()).or_default().push(p);
            }
        }
    }
    let mut out = vec![SElement::Zero];
    for k in t.test_elements(words) {
        for (&x, betas) in &by_source {
            let Some(alphas) = by_source.get(&t.act_vertex(&k, x)) else { continue };
            for beta in betas {
                for alpha in alphas {
                    out.push(SElement::new(t, alpha.clone(), k.clone(), beta.clone()).expect("typed by construction"));
                }
            }
        }
    }
    out
}

/// Half the time `s` is drawn so that its `β` is comparable with `u`'s `α`,
/// which keeps most products nonzero.
pub fn random_pair<'a>(rng: &mut impl Rng, pool: &'a [SElement]) -> (&'a SElement, &'a SElement) {
    let u = pool.choose(rng).expect("nonempty pool");
    if rng.gen_bool(0.5) {
        if let Some((alpha, _, _)) = u.parts() {
            let partners: Vec<&SElement> = pool
                .iter()
                .filter(|s| s.parts().is_some_and(|(_, _, b)| b.comparable(alpha)))
                .collect();
            if let Some(s) = partners.choose(rng) {
                return (s, u);
            }
        }
    }
    (pool.choose(rng).expect("nonempty pool"), u)
}

pub fn sample_lassos(t: &Triple) -> Vec<Lasso> {
    all_lassos(t.graph(), 3, 3, Some(3)).expect("bounded")
}

/// `None` when `s·u` and `s ∘ u` agree on every sample lasso, otherwise
/// the first lasso where they differ.
pub fn product_disagreement(t: &Triple, s: &SElement, u: &SElement, prod: &SElement, lassos: &[Lasso]) -> Option<String> {
    for w in lassos {
        let lhs = apply(t, prod, w, STATES).expect("budget");
        let rhs = match apply(t, u, w, STATES).expect("budget") {
            Some(v) => apply(t, s, &v, STATES).expect("budget"),
            None => None,
        };
        if lhs != rhs {
            return Some(format!("{} * {} at {}", s.name(t), u.name(t), w.name(t.graph())));
        }
    }
    None
}

/// A random source-free graph with trivial group.
pub fn random_trivial_triple(rng: &mut impl Rng, max_vertices: usize, max_edges: usize) -> (Triple, Vec<(usize, usize)>) {
    let n = rng.gen_range(1..=max_vertices);
    let m = rng.gen_range(n..=max_edges.max(n));
    // one edge into every vertex, the rest anywhere
    let mut edges: Vec<(usize, usize)> = (0..n).map(|r| (r, rng.gen_range(0..n))).collect();
    while edges.len() < m {
        edges.push((rng.gen_range(0..n), rng.gen_range(0..n)));
    }
    let spec = GraphSpec {
        vertices: (0..n).map(|i| format!("v{i}")).collect(),
        edges: edges
            .iter()
            .enumerate()
            .map(|(i, &(r, s))| EdgeSpec { id: format!("a{i}"), range: format!("v{r}"), source: format!("v{s}") })
            .collect(),
        families: Vec::new(),
    };
    let graph = Graph::from_spec(&spec).expect("well formed");
    let data = TripleData { graph, group: Group::trivial(), action: Vec::new(), cocycle: Vec::new() };
    (Triple::new(data, 4).expect("trivial group triple"), edges)
}

/// Simple cycles as vertex sequences, by brute force over start vertices.
/// Each `(range, source)` pair is an edge; a cycle walks range → source.
pub fn brute_simple_cycles(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<usize>> {
    fn dfs(start: usize, cur: usize, edges: &[(usize, usize)], stack: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        for &(r, s) in edges {
            if r != cur {
                continue;
            }
            if s == start {
                out.push(stack.clone());
            } else if s > start && !stack.contains(&s) {
                stack.push(s);
                dfs(start, s, edges, stack, out);
                stack.pop();
            }
        }
    }
    let mut out = Vec::new();
    for v in 0..n {
        dfs(v, v, edges, &mut vec![v], &mut out);
    }
    out
}

/// Condition (L): every simple cycle passes a vertex receiving another edge.
pub fn every_cycle_has_entry(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0usize; n];
    for &(r, _) in edges {
        indeg[r] += 1;
    }
    brute_simple_cycles(n, edges).iter().all(|c| c.iter().any(|&v| indeg[v] > 1))
}

/// Vertices `u` with a path whose range is `v` and source is `u`.
fn backward_reach(v: usize, edges: &[(usize, usize)]) -> HashSet<usize> {
    let mut seen = HashSet::from([v]);
    let mut queue = VecDeque::from([v]);
    while let Some(u) = queue.pop_front() {
        for &(r, s) in edges {
            if r == u && seen.insert(s) {
                queue.push_back(s);
            }
        }
    }
    seen
}

/// Cofinality over lassos: every vertex reaches the vertex set of every
/// `c^∞`. Every infinite path of a finite graph contains the vertices of
/// some simple cycle, so simple cycles are enough.
pub fn cofinal(n: usize, edges: &[(usize, usize)]) -> bool {
    let cycles = brute_simple_cycles(n, edges);
    (0..n).all(|v| {
        let reach = backward_reach(v, edges);
        cycles.iter().all(|c| c.iter().any(|u| reach.contains(u)))
    })
}
