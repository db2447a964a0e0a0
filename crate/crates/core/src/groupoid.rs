//! The tight groupoid as computable data: germs at lasso points, basis
//! bisections, the filters `F_ω`, and the defining relations checked as
//! identities of partial bijections on lassos.

use std::collections::HashSet;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, Path, Vertex};
use crate::group::GroupElement;
use crate::lasso::{lassos_from, lassos_up_to, Lasso, LassoTail};
use crate::semigroup::{apply, multiply, SElement};
use crate::triple::Triple;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Tri {
    True,
    False,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Germ {
    pub element: SElement,
    pub point: Lasso,
}

impl Germ {
    pub fn new(element: SElement, point: Lasso) -> Result<Germ> {
        match element.parts() {
            Some((_, _, beta)) if point.starts_with(beta) => Ok(Germ { element, point }),
            Some(_) => Err(Error::Typing("point outside the domain of the element".into())),
            None => Err(Error::Typing("germs of 0 do not exist".into())),
        }
    }

    pub fn source(&self) -> &Lasso {
        &self.point
    }

    pub fn range(&self, t: &Triple, state_budget: usize) -> Result<Lasso> {
        Ok(apply(t, &self.element, &self.point, state_budget)?.expect("point in domain"))
    }

    /// `[s; t·ω]·[t; ω] = [st; ω]`.
    pub fn compose(&self, t: &Triple, other: &Germ, state_budget: usize) -> Result<Option<Germ>> {
        if other.range(t, state_budget)? != self.point {
            return Ok(None);
        }
        let product = multiply(t, &self.element, &other.element);
        Ok(Some(Germ::new(product, other.point.clone())?))
    }
}

/// `f_{ω|n} = (ω|n, 1, ω|n)`.
pub fn prefix_idempotent(t: &Triple, w: &Lasso, n: usize) -> SElement {
    SElement::idempotent(t, w.prefix(t.graph(), n))
}

/// `[s; ω] = [u; ω]` iff `s·f_{ω|n} = u·f_{ω|n}` for some `n`. Past the
/// domains both products are prefixes of the images of `ω`, so the paths
/// either already differ (and always will) or agree; what remains is the
/// pair of twist states, which is eventually periodic along the cycle.
pub fn germ_equal(t: &Triple, a: &Germ, b: &Germ, state_budget: usize) -> Tri {
    if a.point != b.point {
        return Tri::False;
    }
    let w = &a.point;
    let (Some((_, _, beta)), Some((_, _, delta))) = (a.element.parts(), b.element.parts()) else {
        return Tri::False;
    };
    let start = beta.len().max(delta.len()).max(w.head().len());
    let block = match w.tail() {
        LassoTail::Cycle(c) => c.len(),
        LassoTail::Ray { .. } => 1,
    };
    let mut seen = HashSet::new();
    for n in 0.. {
        let f = prefix_idempotent(t, w, n);
        let sa = multiply(t, &a.element, &f);
        let sb = multiply(t, &b.element, &f);
        if sa == sb {
            return Tri::True;
        }
        if n < start {
            continue;
        }
        let (Some((pa, ga, _)), Some((pb, gb, _))) = (sa.parts(), sb.parts()) else {
            return Tri::False;
        };
        if pa != pb || !seen.insert((ga.clone(), gb.clone(), (n - start) % block)) {
            return Tri::False;
        }
        if seen.len() > state_budget {
            return Tri::Unknown;
        }
    }
    unreachable!()
}

/// `Θ(α, g, β; Z(γ))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bisection {
    pub element: SElement,
    pub constraint: Path,
}

impl Bisection {
    pub fn is_nonempty(&self) -> bool {
        match self.element.parts() {
            Some((_, _, beta)) => beta.comparable(&self.constraint),
            None => false,
        }
    }

    /// Germs of the bisection based at the given points.
    pub fn germs_at(&self, points: &[Lasso]) -> Vec<Germ> {
        points
            .iter()
            .filter(|w| w.starts_with(&self.constraint))
            .filter_map(|w| Germ::new(self.element.clone(), w.clone()).ok())
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FilterBase {
    /// `F_ω = {f_{ω|n}}`.
    Lasso(Lasso),
    /// The filter generated by a finite prefix chain of idempotent paths.
    Chain(Vec<Path>),
}

pub fn filter_of_lasso(w: &Lasso) -> FilterBase {
    FilterBase::Lasso(w.clone())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UltraResult {
    /// Every candidate idempotent of length `≤ depth` meeting the whole
    /// filter belongs to it.
    Passed { candidates: usize },
    /// An idempotent meeting every member without belonging to the filter.
    Witness(Path),
    Refused(String),
}

impl FilterBase {
    /// Members of length exactly `n` (at most one).
    pub fn level(&self, t: &Triple, n: usize) -> Vec<Path> {
        match self {
            FilterBase::Lasso(w) => vec![w.prefix(t.graph(), n)],
            FilterBase::Chain(c) => {
                let top = c.iter().max_by_key(|p| p.len());
                match top {
                    Some(p) if n <= p.len() => vec![t.graph().prefix(p, n)],
                    _ => Vec::new(),
                }
            }
        }
    }

    pub fn contains(&self, t: &Triple, p: &Path) -> bool {
        self.level(t, p.len()).first() == Some(p)
    }
}

pub fn is_ultrafilter(t: &Triple, f: &FilterBase, depth: usize) -> UltraResult {
    let g = t.graph();
    if !g.is_row_finite() || g.has_sources() {
        return UltraResult::Refused("hypothesis violated: graph must be row-finite without sources".into());
    }
    match f {
        FilterBase::Lasso(w) => {
            let mut candidates = 0;
            for n in 0..=depth {
                let Ok(paths) = g.extend_paths(w.range(), n, None) else {
                    return UltraResult::Refused("unbounded enumeration".into());
                };
                for p in paths {
                    candidates += 1;
                    let meets_all = (0..=depth.max(n)).all(|k| p.comparable(&w.prefix(g, k)));
                    if meets_all && !f.contains(t, &p) {
                        return UltraResult::Witness(p);
                    }
                }
            }
            UltraResult::Passed { candidates }
        }
        FilterBase::Chain(chain) => {
            for (i, p) in chain.iter().enumerate() {
                for q in &chain[i + 1..] {
                    if !p.comparable(q) {
                        return UltraResult::Refused("chain members are not prefix-comparable".into());
                    }
                }
            }
            let Some(top) = chain.iter().max_by_key(|p| p.len()) else {
                return UltraResult::Refused("empty chain".into());
            };
            let inc = g.incoming(top.source());
            let Some(a) = inc.nth(0) else {
                return UltraResult::Refused("chain ends at a source".into());
            };
            let witness = top.concat(&g.edge_path(a)).expect("incoming edge");
            UltraResult::Witness(witness)
        }
    }
}

/// Re-checks an extension witness: it meets every chain member and is
/// not in the generated filter.
pub fn verify_chain_witness(t: &Triple, chain: &[Path], witness: &Path) -> bool {
    let f = FilterBase::Chain(chain.to_vec());
    chain.iter().all(|p| p.comparable(witness)) && !f.contains(t, witness)
}

/// Partial bijections of the lasso space built from semigroup elements.
#[derive(Clone, Debug)]
pub enum MapExpr {
    Elem(SElement),
    /// `Compose(a, b)` applies `b` first.
    Compose(Box<MapExpr>, Box<MapExpr>),
    /// Orthogonal sum; at most one summand may be defined at a point.
    Sum(Vec<MapExpr>),
    /// The total map `u_g`.
    Group(GroupElement),
}

impl MapExpr {
    pub fn then(self, first: MapExpr) -> MapExpr {
        MapExpr::Compose(Box::new(self), Box::new(first))
    }

    /// `Err` also when two summands are defined at the same point.
    pub fn eval(&self, t: &Triple, w: &Lasso, state_budget: usize) -> Result<Option<Lasso>> {
        match self {
            MapExpr::Elem(s) => apply(t, s, w, state_budget),
            MapExpr::Compose(a, b) => match b.eval(t, w, state_budget)? {
                Some(v) => a.eval(t, &v, state_budget),
                None => Ok(None),
            },
            MapExpr::Sum(parts) => {
                let mut out = None;
                for p in parts {
                    if let Some(v) = p.eval(t, w, state_budget)? {
                        if out.is_some() {
                            return Err(Error::Hypothesis(format!("summands overlap at {}", w.name(t.graph()))));
                        }
                        out = Some(v);
                    }
                }
                Ok(out)
            }
            MapExpr::Group(g) => t.act_lasso(g, w, state_budget).map(Some),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationRecord {
    pub relation: String,
    pub instance: String,
    pub passed: bool,
    pub witness: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelationReport {
    pub records: Vec<RelationRecord>,
    pub lassos_checked: usize,
}

impl RelationReport {
    pub fn failures(&self) -> impl Iterator<Item = &RelationRecord> {
        self.records.iter().filter(|r| !r.passed)
    }

    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.passed)
    }
}

/// Sample points: lassos of size `≤ depth` rooted at every base vertex and
/// at tail vertices inside the folding window. Infinite families branch
/// over their first two members only, otherwise the sample grows like
/// `depth^depth`.
pub fn sample_lassos(t: &Triple, depth: usize) -> Result<Vec<Lasso>> {
    let g = t.graph();
    let family_bound = if g.is_row_finite() { depth as u64 } else { 2 };
    let mut out = Vec::new();
    for v in relation_vertices(t) {
        out.extend(lassos_up_to(g, v, depth, Some(family_bound))?);
    }
    Ok(out)
}

fn relation_vertices(t: &Triple) -> Vec<Vertex> {
    let g = t.graph();
    let mut vs: Vec<Vertex> = g.base_vertices().collect();
    if g.has_tails() {
        let fold = t.folding();
        for &root in g.tails().keys() {
            for index in 1..=fold.window() {
                vs.push(Vertex::Tail { root, index });
            }
        }
    }
    vs
}

fn relation_edges(t: &Triple, depth: usize) -> Vec<Edge> {
    let g = t.graph();
    t.edge_window()
        .into_iter()
        .filter(|&e| g.contains_edge(e))
        .filter(|e| match e {
            Edge::Member { index, .. } => *index <= depth as u64,
            _ => true,
        })
        .collect()
}

/// Compares partial maps pointwise over a fixed sample of lassos.
pub(crate) struct Checker<'a> {
    t: &'a Triple,
    lassos: &'a [Lasso],
    budget: usize,
    report: RelationReport,
}

impl<'a> Checker<'a> {
    pub(crate) fn new(t: &'a Triple, lassos: &'a [Lasso], budget: usize) -> Checker<'a> {
        Checker { t, lassos, budget, report: RelationReport::default() }
    }

    pub(crate) fn record(&mut self, relation: &str, instance: String, witness: Option<String>) {
        self.report.records.push(RelationRecord {
            relation: relation.to_string(),
            instance,
            passed: witness.is_none(),
            witness,
        });
    }

    pub(crate) fn finish(mut self) -> RelationReport {
        self.report.lassos_checked = self.lassos.len();
        self.report
    }

    pub(crate) fn same(&mut self, relation: &str, instance: String, lhs: &MapExpr, rhs: &MapExpr) {
        let (t, budget) = (self.t, self.budget);
        // first failing lasso in sample order, whatever the thread count
        let witness = self.lassos.par_iter().find_map_first(|w| {
            match (lhs.eval(t, w, budget), rhs.eval(t, w, budget)) {
                (Ok(a), Ok(b)) if a == b => None,
                (Ok(a), Ok(b)) => {
                    let show = |x: Option<Lasso>| x.map(|l| l.name(t.graph())).unwrap_or_else(|| "undefined".into());
                    Some(format!("at {}: {} vs {}", w.name(t.graph()), show(a), show(b)))
                }
                (Err(e), _) | (_, Err(e)) => Some(format!("at {}: {e}", w.name(t.graph()))),
            }
        });
        self.record(relation, instance, witness);
    }
}

/// Checks the defining relations of the algebra in the model
/// `p_x = (∅_x,1,∅_x)`, `s_a = (a,1,∅_{s(a)})`, `u_{g,x} = (∅_{g·x},g,∅_x)`.
/// `phi` supplies the cocycle values written into relation (d) and into
/// `u_g s_a = s_{g·a} u_{φ(g,a)}`; pass the triple's own cocycle for an
/// honest check.
pub fn verify_relations_with(
    t: &Triple,
    depth: usize,
    elements: &[GroupElement],
    state_budget: usize,
    phi: &dyn Fn(&GroupElement, Edge) -> GroupElement,
) -> Result<RelationReport> {
    let lassos = sample_lassos(t, depth)?;
    let g = t.graph();
    let group = t.group();
    let vertices = relation_vertices(t);
    let edges = relation_edges(t, depth);
    let mut c = Checker::new(t, &lassos, state_budget);
    let p = |x: Vertex| MapExpr::Elem(SElement::vertex(t, x));
    let s = |a: Edge| MapExpr::Elem(SElement::path(t, g.edge_path(a)));
    let s_star = |a: Edge| MapExpr::Elem(SElement::path(t, g.edge_path(a)).star(t));
    let u = |k: &GroupElement, x: Vertex| MapExpr::Elem(SElement::unitary(t, k.clone(), x));
    let u_star = |k: &GroupElement, x: Vertex| MapExpr::Elem(SElement::unitary(t, k.clone(), x).star(t));
    let vn = |x: Vertex| g.vertex_name(x);
    let en = |a: Edge| g.edge_name(a);
    let gn = |k: &GroupElement| group.name(k);

    // (a) Cuntz–Krieger family.
    for &x in &vertices {
        c.same("(a) p_x^2 = p_x", vn(x), &p(x).then(p(x)), &p(x));
        for &y in &vertices {
            if x < y {
                c.same("(a) p_x p_y = 0", format!("{}, {}", vn(x), vn(y)), &p(x).then(p(y)), &MapExpr::Elem(SElement::Zero));
            }
        }
        let inc = g.incoming(x);
        if inc.is_finite() && !inc.is_empty() {
            let sum = MapExpr::Sum(inc.finite.iter().map(|&a| s(a).then(s_star(a))).collect());
            c.same("(a) p_x = Σ s_a s_a*", vn(x), &p(x), &sum);
        }
    }
    for &a in &edges {
        c.same("(a) s_a* s_a = p_s(a)", en(a), &s_star(a).then(s(a)), &p(g.source(a)));
        c.same("(a) s_a s_a* ≤ p_r(a)", en(a), &p(g.range(a)).then(s(a).then(s_star(a))), &s(a).then(s_star(a)));
    }
    for k in elements {
        for &x in &vertices {
            let kx = t.act_vertex(k, x);
            let inst = format!("g={}, x={}", gn(k), vn(x));
            // (b)
            c.same("(b)(i) u_{g,x} u_{g,x}* = p_{g·x}", inst.clone(), &u(k, x).then(u_star(k, x)), &p(kx));
            c.same("(b)(ii) u_{g,x}* u_{g,x} = p_x", inst.clone(), &u_star(k, x).then(u(k, x)), &p(x));
            // (e)
            c.same("(e) u_{g,x} p_x = p_{g·x} u_{g,x}", inst.clone(), &u(k, x).then(p(x)), &p(kx).then(u(k, x)));
            // Remark: u_{g,x} = u_g p_x
            c.same("u_{g,x} = u_g p_x", inst.clone(), &u(k, x), &MapExpr::Group(k.clone()).then(p(x)));
            // (c)
            for h in elements {
                let hinv = group.inv(h);
                let y = t.act_vertex(&hinv, x);
                let kh = group.mul(k, h);
                c.same(
                    "(c) u_{gh,h⁻¹·x} = u_{g,x} u_{h,h⁻¹·x}",
                    format!("g={}, h={}, x={}", gn(k), gn(h), vn(x)),
                    &u(&kh, y),
                    &u(k, x).then(u(h, y)),
                );
            }
        }
        // u_g is a unitary: the u_{g,x} have disjoint supports covering everything,
        // and u_g u_h = u_{gh}.
        let total = MapExpr::Sum(vertices.iter().map(|&x| u(k, x)).collect());
        c.same("u_g = Σ_x u_{g,x} is a unitary", format!("g={}", gn(k)), &total, &MapExpr::Group(k.clone()));
        let inv = group.inv(k);
        c.same(
            "u_g* u_g = 1",
            format!("g={}", gn(k)),
            &MapExpr::Group(inv.clone()).then(MapExpr::Group(k.clone())),
            &MapExpr::Group(group.identity()),
        );
        for h in elements {
            c.same(
                "u_g u_h = u_{gh}",
                format!("g={}, h={}", gn(k), gn(h)),
                &MapExpr::Group(k.clone()).then(MapExpr::Group(h.clone())),
                &MapExpr::Group(group.mul(k, h)),
            );
        }
        // (d), with the range vertex: u_{g,r(a)} s_a = s_{g·a} u_{φ(g,a),s(a)}.
        for &a in &edges {
            let ka = t.act_edge(k, a);
            let twist = phi(k, a);
            c.same(
                "(d) u_{g,r(a)} s_a = s_{g·a} u_{φ(g,a),s(a)}",
                format!("g={}, a={}", gn(k), en(a)),
                &u(k, g.range(a)).then(s(a)),
                &s(ka).then(u(&twist, g.source(a))),
            );
            c.same(
                "u_g s_a = s_{g·a} u_{φ(g,a)}",
                format!("g={}, a={}", gn(k), en(a)),
                &MapExpr::Group(k.clone()).then(s(a)),
                &s(ka).then(MapExpr::Group(twist)),
            );
        }
    }
    Ok(c.finish())
}

pub fn verify_relations(t: &Triple, depth: usize, word_budget: usize, state_budget: usize) -> Result<RelationReport> {
    let elements = t.test_elements(word_budget);
    verify_relations_with(t, depth, &elements, state_budget, &|k, a| t.cocycle(k, a))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverCheck {
    Partition,
    /// Some point of `Z(α)` lies in no member.
    NotCover(Lasso),
    Overlap(Lasso),
}

/// Whether `{Z(γ) : γ ∈ cover}` partitions `Z(α)` on the sample points.
pub fn check_cover(t: &Triple, alpha: &Path, cover: &[Path], points: &[Lasso]) -> CoverCheck {
    for w in points.iter().filter(|w| w.starts_with(alpha)) {
        let hits = cover.iter().filter(|c| w.starts_with(c)).count();
        if hits == 0 {
            return CoverCheck::NotCover(w.clone());
        }
        if hits > 1 {
            return CoverCheck::Overlap(w.clone());
        }
    }
    let _ = t;
    CoverCheck::Partition
}

/// For each idempotent `(α,1,α)` with `|α| < depth`, the one-level cover
/// `{Z(αa) : a ∈ r⁻¹(s(α))}` must be mapped to a partition of `Z(α)`.
pub fn verify_tightness(t: &Triple, depth: usize) -> Result<RelationReport> {
    let g = t.graph();
    if !g.is_row_finite() || g.has_sources() {
        return Err(Error::Hypothesis("tightness check needs a row-finite graph without sources".into()));
    }
    let mut report = RelationReport::default();
    let local = depth.clamp(1, 4);
    for x in relation_vertices(t) {
        for n in 0..depth {
            for alpha in g.extend_paths(x, n, None)? {
                let v = alpha.source();
                let points: Vec<Lasso> = lassos_from(g, v, local, local, None)?
                    .into_iter()
                    .filter_map(|l| l.prepend(g, &alpha))
                    .collect();
                report.lassos_checked += points.len();
                let cover: Vec<Path> =
                    g.incoming(v).finite.iter().map(|&a| alpha.concat(&g.edge_path(a)).expect("edge")).collect();
                let verdict = check_cover(t, &alpha, &cover, &points);
                report.records.push(RelationRecord {
                    relation: "tight cover".into(),
                    instance: g.path_name(&alpha),
                    passed: verdict == CoverCheck::Partition,
                    witness: match verdict {
                        CoverCheck::Partition => None,
                        CoverCheck::NotCover(w) => Some(format!("{} is not covered", w.name(g))),
                        CoverCheck::Overlap(w) => Some(format!("{} is covered twice", w.name(g))),
                    },
                });
            }
        }
    }
    Ok(report)
}
