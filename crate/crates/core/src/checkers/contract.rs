//! Local contractivity: every vertex connects to the range of a
//! `G`-circuit with an entry, and the explicit `(s, f0, f1)` witness built
//! from such a route.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, Vertex};
use crate::semigroup::{multiply, natural_order_leq, SElement};
use crate::triple::Triple;

use super::{carrier, orbit_set, Budget, ContractionRoute, Evidence, GCircuit, Verdict, Window};

/// Shortest entry-bearing circuit at each base vertex, searched up to the
/// circuit length budget.
fn circuits_with_entries(t: &Triple, budget: &Budget) -> Result<BTreeMap<Vertex, (GCircuit, (usize, Edge))>> {
    let g = t.graph();
    let mut out = BTreeMap::new();
    for z in g.base_vertices() {
        'search: for len in 1..=budget.circuit {
            for p in g.extend_paths(z, len, None)? {
                let Some(k) = carrier(t, z, p.source()) else { continue };
                let c = GCircuit::new(t, t.group().inv(&k), p)?;
                match c.entry(t, budget.states) {
                    Ok(Some(entry)) => {
                        out.insert(z, (c, entry));
                        break 'search;
                    }
                    Ok(None) | Err(Error::Budget(_)) => {}
                    Err(e) => return Err(e),
                }
            }
        }
    }
    Ok(out)
}

/// Whether some vertex reachable from `x` carries any `G`-circuit at all.
fn reaches_some_circuit(t: &Triple, win: &Window, x: Vertex) -> bool {
    win.reachable(x).into_iter().any(|z| {
        let orbit = match z {
            Vertex::Base(_) => orbit_set(t, z),
            Vertex::Tail { root, .. } => orbit_set(t, Vertex::Base(root)),
        };
        let starts: Vec<usize> = win.dg.successors(win.index(z)).iter().map(|&(_, j)| j).collect();
        let pred = win.dg.reach(&starts, |_| true);
        (0..win.dg.len()).any(|i| pred[i].is_some() && orbit.contains(win.dg.node(i)))
    })
}

fn route(
    t: &Triple,
    win: &Window,
    circuits: &BTreeMap<Vertex, (GCircuit, (usize, Edge))>,
    x: Vertex,
) -> Option<ContractionRoute> {
    let (template, z) = win.walk_to(x, |v| circuits.contains_key(&v))?;
    let alpha = t.graph().realize_walk(x, &template).expect("window walk replays");
    let (circuit, entry) = circuits[&z].clone();
    Some(ContractionRoute { x, alpha, circuit, entry })
}

/// Every vertex `x` has a path `α_x` with `r(α_x) = x` ending at the range
/// of a `G`-circuit that has an entry.
pub fn locally_contracting(t: &Triple, budget: &Budget) -> Result<Verdict> {
    let win = Window::new(t)?;
    let circuits = circuits_with_entries(t, budget)?;
    let mut routes = Vec::new();
    for &x in win.vertices() {
        match route(t, &win, &circuits, x) {
            Some(r) => routes.push(r),
            None if !reaches_some_circuit(t, &win, x) => return Ok(Verdict::Refuted(Evidence::NoCircuit { from: x })),
            None => {
                return Ok(Verdict::Unknown(format!(
                    "no circuit with an entry of length ≤ {} below {}",
                    budget.circuit,
                    t.graph().vertex_name(x)
                )))
            }
        }
    }
    Ok(Verdict::Proven(Evidence::Contracting(routes)))
}

/// `s*s = f1 ≤ e`, `s f1 s* < f1`, `0 ≠ f0 ≤ f1` and `f0 s = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionWitness {
    pub s: SElement,
    pub f0: SElement,
    pub f1: SElement,
}

impl ContractionWitness {
    /// Each identity with whether it holds.
    pub fn check(&self, t: &Triple, e: &SElement) -> Vec<(&'static str, bool)> {
        let ss = multiply(t, &self.s.star(t), &self.s);
        let shrunk = multiply(t, &multiply(t, &self.s, &self.f1), &self.s.star(t));
        vec![
            ("f1 ≤ e", natural_order_leq(t, &self.f1, e)),
            ("s*s = f1", ss == self.f1),
            ("s f1 s* ≤ f1", natural_order_leq(t, &shrunk, &self.f1)),
            ("s f1 s* ≠ f1", shrunk != self.f1),
            ("f0 ≠ 0", !self.f0.is_zero()),
            ("f0 ≤ f1", natural_order_leq(t, &self.f0, &self.f1)),
            ("f0 s = 0", multiply(t, &self.f0, &self.s).is_zero()),
            ("f0 s f1 s* = 0", multiply(t, &self.f0, &shrunk).is_zero()),
        ]
    }
}

/// Builds the witness for `e = (μ, 1, μ)` from a route at `s(μ)`:
/// `f1 = (β, 1, β)` with `β = μα`, `s = (βγ̂, h, β)` where `γ̂` runs along
/// `ω(g, γ)` past its entry to a block boundary, and `f0 = (βγ', 1, βγ')`
/// with `γ'` leaving `ω` through the entry.
pub fn contraction_witness_from(t: &Triple, e: &SElement, r: &ContractionRoute, state_budget: usize) -> Result<ContractionWitness> {
    let (mu, g, nu) = e.parts().ok_or_else(|| Error::Typing("0 has no contraction witness".into()))?;
    if mu != nu || !t.group().is_identity(g) {
        return Err(Error::Typing("contraction witnesses are built for idempotents".into()));
    }
    let graph = t.graph();
    let beta = mu.concat(&r.alpha).ok_or_else(|| Error::Path("route does not start at s(μ)".into()))?;
    let omega = r.circuit.lasso(t, state_budget)?;
    let (p, tau) = r.entry;
    let block = r.circuit.gamma.len();
    let gamma_hat = r.circuit.iterate(t, p / block + 1);
    let z = r.circuit.gamma.range();
    let h = carrier(t, z, gamma_hat.source()).ok_or_else(|| Error::Typing("block boundary left the orbit".into()))?;
    let beta_hat = beta.concat(&gamma_hat).expect("γ̂ starts at s(β)");
    let s = SElement::new(t, beta_hat, h, beta.clone())?;
    let mut exit = omega.unroll(p);
    exit.push(tau);
    let gamma_exit = graph.path(z, exit)?;
    let f0 = SElement::idempotent(t, beta.concat(&gamma_exit).expect("exit starts at s(β)"));
    Ok(ContractionWitness { s, f0, f1: SElement::idempotent(t, beta) })
}

/// Witness for a nonzero idempotent `e = (μ, 1, μ)`.
pub fn contraction_witness(t: &Triple, e: &SElement, budget: &Budget) -> Result<ContractionWitness> {
    let (mu, _, _) = e.parts().ok_or_else(|| Error::Typing("0 has no contraction witness".into()))?;
    let win = Window::new(t)?;
    let circuits = circuits_with_entries(t, budget)?;
    let x = mu.source();
    let (template, z) = win
        .walk_to(x, |v| circuits.contains_key(&v))
        .ok_or_else(|| Error::Hypothesis(format!("no entry-bearing circuit below {}", t.graph().vertex_name(x))))?;
    let alpha = t.graph().realize_walk(x, &template).expect("window walk replays");
    let (circuit, entry) = circuits[&z].clone();
    let r = ContractionRoute { x, alpha, circuit, entry };
    contraction_witness_from(t, e, &r, budget.states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::desing::desingularize;
    use crate::graph::Path;

    #[test]
    fn two_loops_contract() {
        let t = corpus::two_loops();
        assert!(locally_contracting(&t, &Budget::default()).unwrap().is_proven());
        let x = Vertex::Base(0);
        let g = t.graph();
        for mu in [Path::empty(x), g.path(x, vec![g.parse_edge("e1").unwrap()]).unwrap()] {
            let e = SElement::idempotent(&t, mu);
            let w = contraction_witness(&t, &e, &Budget::default()).unwrap();
            for (name, ok) in w.check(&t, &e) {
                assert!(ok, "{name}");
            }
        }
    }

    #[test]
    fn single_loop_does_not_contract() {
        let t = corpus::one_loop();
        let v = locally_contracting(&t, &Budget::default()).unwrap();
        assert!(!v.is_proven(), "{v:?}");
    }

    #[test]
    fn finite_source_graph_has_no_circuit() {
        let f = desingularize(&corpus::source(), 8).unwrap().triple;
        let v = locally_contracting(&f, &Budget::default()).unwrap();
        assert!(matches!(v, Verdict::Refuted(Evidence::NoCircuit { .. })), "{v:?}");
    }

    #[test]
    fn swap_witness_identities() {
        let t = corpus::z2_two_loop_swap();
        let x = Vertex::Base(0);
        let e = SElement::vertex(&t, x);
        let w = contraction_witness(&t, &e, &Budget::default()).unwrap();
        assert!(w.check(&t, &e).iter().all(|(_, ok)| *ok));
    }
}
