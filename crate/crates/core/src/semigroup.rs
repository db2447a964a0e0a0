//! The inverse semigroup `S(G,E) = {(α, g, β)} ∪ {0}` with `s(α) = g·s(β)`,
//! acting on infinite paths by `βη ↦ α(g·η)`.

use crate::error::{Error, Result};
use crate::graph::{Path, Vertex};
use crate::group::GroupElement;
use crate::lasso::Lasso;
use crate::triple::Triple;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum SElement {
    Zero,
    Elem {
        alpha: Path,
        g: GroupElement,
        /// `x = s(β)`, kept explicitly as in the `(α, (g, x), β)` notation.
        x: Vertex,
        beta: Path,
    },
}

impl SElement {
    pub fn new(t: &Triple, alpha: Path, g: GroupElement, beta: Path) -> Result<SElement> {
        let x = beta.source();
        if t.act_vertex(&g, x) != alpha.source() {
            return Err(Error::Typing(format!(
                "s({}) = {} but {}·s({}) = {}",
                t.graph().path_name(&alpha),
                t.graph().vertex_name(alpha.source()),
                t.group().name(&g),
                t.graph().path_name(&beta),
                t.graph().vertex_name(t.act_vertex(&g, x)),
            )));
        }
        Ok(SElement::Elem { alpha, g, x, beta })
    }

    /// `(α, 1, α)`.
    pub fn idempotent(t: &Triple, alpha: Path) -> SElement {
        let x = alpha.source();
        SElement::Elem { beta: alpha.clone(), alpha, g: t.group().identity(), x }
    }

    /// `p_x = (∅_x, 1, ∅_x)`.
    pub fn vertex(t: &Triple, x: Vertex) -> SElement {
        SElement::idempotent(t, Path::empty(x))
    }

    /// `s_a`-style element `(α, 1, ∅_{s(α)})`.
    pub fn path(t: &Triple, alpha: Path) -> SElement {
        let x = alpha.source();
        SElement::Elem { alpha, g: t.group().identity(), x, beta: Path::empty(x) }
    }

    /// `u_{g,x} = (∅_{g·x}, g, ∅_x)`.
    pub fn unitary(t: &Triple, g: GroupElement, x: Vertex) -> SElement {
        let gx = t.act_vertex(&g, x);
        SElement::Elem { alpha: Path::empty(gx), g, x, beta: Path::empty(x) }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, SElement::Zero)
    }

    pub fn parts(&self) -> Option<(&Path, &GroupElement, &Path)> {
        match self {
            SElement::Zero => None,
            SElement::Elem { alpha, g, beta, .. } => Some((alpha, g, beta)),
        }
    }

    pub fn star(&self, t: &Triple) -> SElement {
        match self {
            SElement::Zero => SElement::Zero,
            SElement::Elem { alpha, g, beta, .. } => SElement::Elem {
                alpha: beta.clone(),
                g: t.group().inv(g),
                x: alpha.source(),
                beta: alpha.clone(),
            },
        }
    }

    pub fn is_idempotent(&self, t: &Triple) -> bool {
        match self {
            SElement::Zero => true,
            SElement::Elem { alpha, g, beta, .. } => alpha == beta && t.group().is_identity(g),
        }
    }

    pub fn name(&self, t: &Triple) -> String {
        match self {
            SElement::Zero => "0".to_string(),
            SElement::Elem { alpha, g, beta, .. } => format!(
                "({}|{}|{})",
                t.graph().path_name(alpha),
                t.group().name(g),
                t.graph().path_name(beta)
            ),
        }
    }
}

/// `s·u`, using the closed forms
/// `γ = βε ⇒ (α(g·ε), φ(g,ε)h, δ)` and `β = γε ⇒ (α, g·φ(h, h⁻¹·ε), δ(h⁻¹·ε))`.
pub fn multiply(t: &Triple, s: &SElement, u: &SElement) -> SElement {
    let (SElement::Elem { alpha, g, beta, .. }, SElement::Elem { alpha: gamma, g: h, beta: delta, .. }) = (s, u) else {
        return SElement::Zero;
    };
    let group = t.group();
    if let Some(eps) = gamma.strip_prefix(beta) {
        let (g_eps, phi) = t.act_path_full(g, &eps);
        let a = alpha.concat(&g_eps).expect("typed: s(α) = g·s(β)");
        let x = delta.source();
        return SElement::Elem { alpha: a, g: group.mul(&phi, h), x, beta: delta.clone() };
    }
    if let Some(eps) = beta.strip_prefix(gamma) {
        let hinv = group.inv(h);
        let moved = t.act_path(&hinv, &eps);
        let twist = t.cocycle_path(h, &moved);
        let b = delta.concat(&moved).expect("typed: s(γ) = h·s(δ)");
        let x = b.source();
        return SElement::Elem { alpha: alpha.clone(), g: group.mul(g, &twist), x, beta: b };
    }
    SElement::Zero
}

/// Natural partial order: `s ≤ u` iff `s = u·s*s`.
pub fn natural_order_leq(t: &Triple, s: &SElement, u: &SElement) -> bool {
    if s.is_zero() {
        return true;
    }
    *s == multiply(t, u, &multiply(t, &s.star(t), s))
}

/// `e ⋒ f` for idempotents: their paths are prefix-comparable.
pub fn intersects(t: &Triple, e: &SElement, f: &SElement) -> Result<bool> {
    if !e.is_idempotent(t) || !f.is_idempotent(t) {
        return Err(Error::Typing("⋒ is defined on idempotents".into()));
    }
    Ok(match (e.parts(), f.parts()) {
        (Some((a, _, _)), Some((b, _, _))) => a.comparable(b),
        _ => false,
    })
}

/// `βη ↦ α(g·η)`, total on the cylinder `Z(β)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialPathMap {
    pub domain: Path,
    pub codomain: Path,
    pub twist: GroupElement,
}

pub fn partial_map(s: &SElement) -> Option<PartialPathMap> {
    s.parts().map(|(alpha, g, beta)| PartialPathMap {
        domain: beta.clone(),
        codomain: alpha.clone(),
        twist: g.clone(),
    })
}

impl PartialPathMap {
    /// `None` outside the domain.
    pub fn apply(&self, t: &Triple, w: &Lasso, state_budget: usize) -> Result<Option<Lasso>> {
        let Some(eta) = w.strip_prefix(t.graph(), &self.domain) else {
            return Ok(None);
        };
        let moved = t.act_lasso(&self.twist, &eta, state_budget)?;
        Ok(Some(moved.prepend(t.graph(), &self.codomain).expect("typed element")))
    }
}

/// The action of an element on a lasso; `None` outside its domain.
pub fn apply(t: &Triple, s: &SElement, w: &Lasso, state_budget: usize) -> Result<Option<Lasso>> {
    match partial_map(s) {
        None => Ok(None),
        Some(m) => m.apply(t, w, state_budget),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;
    use crate::lasso::all_lassos;

    fn p(t: &Triple, from: &str, edges: &[&str]) -> Path {
        let g = t.graph();
        let v = g.parse_vertex(from).unwrap();
        g.path(v, edges.iter().map(|e| g.parse_edge(e).unwrap()).collect()).unwrap()
    }

    #[test]
    fn closed_form_examples() {
        let t = corpus::z2_two_loop_swap();
        let s = t.group().parse("s").unwrap();
        let one = t.group().identity();
        let u = SElement::new(&t, p(&t, "x", &[]), s.clone(), p(&t, "x", &[])).unwrap();
        let e = SElement::idempotent(&t, p(&t, "x", &["e0"]));
        let expect = SElement::new(&t, p(&t, "x", &["e1"]), s.clone(), p(&t, "x", &["e0"])).unwrap();
        assert_eq!(multiply(&t, &u, &e), expect);
        let a = SElement::new(&t, p(&t, "x", &["e1"]), one.clone(), p(&t, "x", &["e0"])).unwrap();
        let b = SElement::new(&t, p(&t, "x", &["e0"]), one.clone(), p(&t, "x", &["e1"])).unwrap();
        assert_eq!(multiply(&t, &a, &b), SElement::idempotent(&t, p(&t, "x", &["e1"])));
        assert_eq!(multiply(&t, &e, &e), e);
        let f = SElement::idempotent(&t, p(&t, "x", &["e1"]));
        assert_eq!(multiply(&t, &e, &f), SElement::Zero);
    }

    #[test]
    fn star_examples() {
        let t = corpus::z2_two_loop_swap();
        let s = t.group().parse("s").unwrap();
        let el = SElement::new(&t, p(&t, "x", &["e1"]), s.clone(), p(&t, "x", &["e0", "e0"])).unwrap();
        assert_eq!(el.star(&t).star(&t), el);
        assert_eq!(multiply(&t, &multiply(&t, &el, &el.star(&t)), &el), el);
        let e = SElement::idempotent(&t, p(&t, "x", &["e0"]));
        assert_eq!(e.star(&t), e);
    }

    #[test]
    fn order_and_intersection() {
        let t = corpus::two_loops();
        let e = SElement::idempotent(&t, p(&t, "x", &["e0"]));
        let ee = SElement::idempotent(&t, p(&t, "x", &["e0", "e1"]));
        let f = SElement::idempotent(&t, p(&t, "x", &["e1"]));
        assert!(natural_order_leq(&t, &e, &e));
        assert!(natural_order_leq(&t, &ee, &e));
        assert!(!natural_order_leq(&t, &e, &ee));
        assert!(intersects(&t, &e, &ee).unwrap());
        assert!(!intersects(&t, &e, &f).unwrap());
        let u = SElement::path(&t, p(&t, "x", &["e0"]));
        assert!(intersects(&t, &u, &e).is_err());
    }

    #[test]
    fn apply_examples() {
        let t = corpus::z2_two_loop_swap();
        let g = t.graph();
        let s = t.group().parse("s").unwrap();
        let e0 = g.parse_edge("e0").unwrap();
        let e1 = g.parse_edge("e1").unwrap();
        let x = Vertex::Base(0);
        let w = Lasso::new(g, Path::empty(x), vec![e0]).unwrap();
        let u = SElement::unitary(&t, s, x);
        let image = apply(&t, &u, &w, 64).unwrap().unwrap();
        assert_eq!(image.unroll(12), vec![e1; 12]);
        let id = SElement::vertex(&t, x);
        assert_eq!(apply(&t, &id, &w, 64).unwrap().unwrap(), w);
        let restrict = SElement::idempotent(&t, g.path(x, vec![e1]).unwrap());
        assert_eq!(apply(&t, &restrict, &w, 64).unwrap(), None);
    }

    #[test]
    fn product_matches_composition_on_small_lassos() {
        let t = corpus::z2_two_loop_swap();
        let g = t.graph();
        let x = Vertex::Base(0);
        let lassos = all_lassos(g, 2, 2, None).unwrap();
        let mut elems = Vec::new();
        for a in g.extend_paths(x, 1, None).unwrap().into_iter().chain([Path::empty(x)]) {
            for b in g.extend_paths(x, 1, None).unwrap().into_iter().chain([Path::empty(x)]) {
                for h in t.group().elements().unwrap() {
                    elems.push(SElement::new(&t, a.clone(), h, b.clone()).unwrap());
                }
            }
        }
        for s in &elems {
            for u in &elems {
                let su = multiply(&t, s, u);
                for w in &lassos {
                    let direct = apply(&t, &su, w, 64).unwrap();
                    let composed = match apply(&t, u, w, 64).unwrap() {
                        Some(v) => apply(&t, s, &v, 64).unwrap(),
                        None => None,
                    };
                    assert_eq!(direct, composed, "{} * {} at {}", s.name(&t), u.name(&t), w.name(g));
                }
            }
        }
    }
}
