//! Desingularization `(G,E,φ) → (G,F,φ̂)`: an equivariant tail at every
//! source and infinite receiver, removal of the receiver's incoming edges,
//! the corner map `a_j ↦ α_j = e_1⋯e_{j-1}f_j`, and finite truncations.
//!
//! Tails are indexed by the vertex they hang off, so the copy
//! `e_{i,g}` of the representative's tail is `e_i` at `g·x`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{Edge, EdgeSpec, Graph, Incoming, Path, TailKind, Vertex, VertexClass};
use crate::group::GroupElement;
use crate::groupoid::{Checker, MapExpr, RelationReport};
use crate::lasso::{lassos_up_to, Lasso, LassoTail};
use crate::semigroup::SElement;
use crate::triple::{GeneratorAction, GeneratorCocycle, Stabilizer, Triple, TripleData};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TailDescriptor {
    pub kind: VertexClass,
    pub representative: u32,
    /// Orbit points of the representative, each with the least group
    /// element carrying the representative there.
    pub copies: Vec<(u32, GroupElement)>,
    /// Incoming edges of the representative in removal order (empty for sources).
    pub removed: Incoming,
}

#[derive(Clone, Debug)]
pub struct Desingularized {
    pub base: Triple,
    pub triple: Triple,
    pub descriptors: Vec<TailDescriptor>,
    pub corner: CornerMap,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CornerMap {
    /// Replacements for entries of the `α` table, keyed by `(root, j)`.
    /// Only used to test the verifier against corrupted tables.
    pub overrides: BTreeMap<(u32, u64), Path>,
}

/// `α_j = e_1 e_2 ⋯ e_{j-1} f_j` at the given receiver root.
pub fn alpha(f: &Graph, root: u32, j: u64) -> Path {
    let mut edges: Vec<Edge> = (1..j).map(|index| Edge::Tail { root, index }).collect();
    edges.push(Edge::Feeder { root, index: j });
    let source = f.source(*edges.last().expect("nonempty"));
    Path::from_parts(Vertex::Base(root), source, edges)
}

impl CornerMap {
    /// Image of an edge of `E` as a path of `F`.
    pub fn edge_image(&self, f: &Graph, e: Edge) -> Path {
        if let Vertex::Base(root) = f.range(e) {
            if let Some(j) = f.removed_index(root, e) {
                return self.overrides.get(&(root, j)).cloned().unwrap_or_else(|| alpha(f, root, j));
            }
        }
        f.edge_path(e)
    }

    pub fn translate_path(&self, f: &Graph, p: &Path) -> Path {
        let mut out = Path::empty(p.range());
        for &e in p.edges() {
            out = out.concat(&self.edge_image(f, e)).unwrap_or_else(|| Path::empty(p.range()));
        }
        out
    }

    /// `(α, g, β) ↦ (Φ(α), g, Φ(β))`.
    pub fn translate_element(&self, f: &Triple, s: &SElement) -> Result<SElement> {
        match s.parts() {
            None => Ok(SElement::Zero),
            Some((alpha, g, beta)) => SElement::new(
                f,
                self.translate_path(f.graph(), alpha),
                g.clone(),
                self.translate_path(f.graph(), beta),
            ),
        }
    }

    pub fn translate_lasso(&self, f: &Graph, w: &Lasso) -> Result<Lasso> {
        let head = self.translate_path(f, w.head());
        match w.tail() {
            LassoTail::Cycle(c) => {
                let cyc = Path::from_parts(w.head().source(), w.head().source(), c.clone());
                Lasso::new(f, head, self.translate_path(f, &cyc).edges().to_vec())
            }
            LassoTail::Ray { root, start } => Lasso::ray(f, head, *root, *start),
        }
    }

    /// `(root, j, a_j, α_j)` for every receiver root and `j ≤ n`.
    pub fn table(&self, f: &Graph, n: u64) -> Vec<(u32, u64, Edge, Path)> {
        let mut out = Vec::new();
        for (&root, kind) in f.tails() {
            if matches!(kind, TailKind::Receiver { .. }) {
                for j in 1..=n {
                    let a = f.removed_edge(root, j).expect("receiver");
                    out.push((root, j, a, self.edge_image(f, a)));
                }
            }
        }
        out
    }
}

fn stabilizer_elements(t: &Triple, x: u32) -> Vec<GroupElement> {
    match t.stabilizer(Vertex::Base(x)) {
        Stabilizer::Finite(els) => els,
        Stabilizer::Multiples(d) => vec![GroupElement::Int(d)],
    }
}

/// Adds tails at every vertex of every singular orbit. Fails with
/// [`Error::IncompatibleStabilizer`] when an element fixing a receiver
/// moves one of its incoming edges.
pub fn desingularize(t: &Triple, word_budget: usize) -> Result<Desingularized> {
    let g = t.graph();
    let group = t.group();
    let mut tails = g.tails().clone();
    let mut descriptors = Vec::new();
    for v in g.base_vertices() {
        let Vertex::Base(x) = v else { unreachable!() };
        if tails.contains_key(&x) {
            continue;
        }
        let class = g.vertex_class(v)?;
        if class == VertexClass::Regular {
            continue;
        }
        let removed = match class {
            VertexClass::InfiniteReceiver => g.incoming(v),
            _ => Incoming { finite: Vec::new(), families: Vec::new() },
        };
        for h in stabilizer_elements(t, x) {
            let moved = removed
                .finite
                .iter()
                .position(|&a| t.act_edge(&h, a) != a)
                .or_else(|| {
                    removed
                        .families
                        .iter()
                        .position(|&f| t.act_edge(&h, Edge::Member { family: f, index: 1 }) != (Edge::Member { family: f, index: 1 }))
                        .map(|k| removed.finite.len() + k)
                });
            if let Some(k) = moved {
                return Err(Error::IncompatibleStabilizer {
                    vertex: g.base_name(x).to_string(),
                    element: group.name(&h),
                    index: k as u64 + 1,
                });
            }
        }
        let copies: Vec<(u32, GroupElement)> = t
            .orbit_elements(v)
            .into_iter()
            .map(|(w, k)| (w.base().expect("base orbit"), k))
            .collect();
        for (y, k) in &copies {
            let kind = match class {
                VertexClass::InfiniteReceiver => TailKind::Receiver {
                    plain: removed
                        .finite
                        .iter()
                        .map(|&a| match t.act_edge(k, a) {
                            Edge::Plain(p) => p,
                            other => unreachable!("plain edge mapped to {other:?}"),
                        })
                        .collect(),
                    families: removed
                        .families
                        .iter()
                        .map(|&f| match t.act_edge(k, Edge::Member { family: f, index: 1 }) {
                            Edge::Member { family, .. } => family,
                            other => unreachable!("family mapped to {other:?}"),
                        })
                        .collect(),
                },
                _ => TailKind::Source,
            };
            tails.insert(*y, kind);
        }
        descriptors.push(TailDescriptor { kind: class, representative: x, copies, removed });
    }
    let f = t.with_graph(g.with_tails(tails));
    let report = f.check_axioms(word_budget);
    if !report.is_valid() {
        return Err(Error::Invalid(Box::new(report)));
    }
    Ok(Desingularized { base: t.clone(), triple: f, descriptors, corner: CornerMap::default() })
}

/// A finite window of `F`: tails cut after `v_N`.
#[derive(Clone, Debug)]
pub struct Truncation {
    pub triple: Triple,
    /// The cut ends `v_{N,y}`; the only sources of the truncation.
    pub boundary: Vec<String>,
}

pub fn truncate(d: &Desingularized, n: u64, word_budget: usize) -> Result<Truncation> {
    if n == 0 {
        return Err(Error::Hypothesis("truncation depth must be at least 1".into()));
    }
    let f = d.triple.graph();
    let base = f.without_tails();
    let mut spec = base.to_spec();
    let removed_at = |range: &str| {
        f.vertex_named(range).is_some_and(|r| matches!(f.tails().get(&r), Some(TailKind::Receiver { .. })))
    };
    spec.edges.retain(|e| !removed_at(&e.range));
    spec.families.retain(|fam| !removed_at(&fam.range));
    let mut boundary = Vec::new();
    for (&root, kind) in f.tails() {
        for index in 1..=n {
            let v = Vertex::Tail { root, index };
            spec.vertices.push(f.vertex_name(v));
            let e = Edge::Tail { root, index };
            spec.edges.push(EdgeSpec {
                id: f.edge_name(e),
                range: f.vertex_name(f.range(e)),
                source: f.vertex_name(f.source(e)),
            });
            if matches!(kind, TailKind::Receiver { .. }) {
                let e = Edge::Feeder { root, index };
                spec.edges.push(EdgeSpec {
                    id: f.edge_name(e),
                    range: f.vertex_name(f.range(e)),
                    source: f.vertex_name(f.source(e)),
                });
            }
        }
        boundary.push(f.vertex_name(Vertex::Tail { root, index: n }));
    }
    let tg = Graph::from_spec(&spec).map_err(|p| Error::Graph(p.join("; ")))?;
    let t = &d.triple;
    let mut gens: Vec<GroupElement> = Vec::new();
    for el in t.data().action.iter().map(|a| &a.element).chain(t.data().cocycle.iter().map(|c| &c.element)) {
        if !gens.contains(el) {
            gens.push(el.clone());
        }
    }
    let lift_vertex = |k: u32| f.parse_vertex(tg.base_name(k)).expect("truncated vertex exists in F");
    let lift_edge = |i: u32| f.parse_edge(&tg.plain_edges()[i as usize].id).expect("truncated edge exists in F");
    let fam_id = |i: u32| f.family_named(&tg.families()[i as usize].id).expect("family exists in F");
    let mut action = Vec::new();
    let mut cocycle = Vec::new();
    for k in &gens {
        let mut ga = GeneratorAction {
            element: k.clone(),
            vertices: BTreeMap::new(),
            edges: BTreeMap::new(),
            families: BTreeMap::new(),
        };
        for v in 0..tg.base_count() as u32 {
            let image = tg.vertex_named(&f.vertex_name(t.act_vertex(k, lift_vertex(v)))).expect("closed under G");
            if image != v {
                ga.vertices.insert(v, image);
            }
        }
        let mut gc = GeneratorCocycle { element: k.clone(), edges: BTreeMap::new(), families: BTreeMap::new() };
        for i in 0..tg.plain_edges().len() as u32 {
            let e = lift_edge(i);
            let image = tg.edge_named(&f.edge_name(t.act_edge(k, e))).expect("closed under G");
            if image != i {
                ga.edges.insert(i, image);
            }
            gc.edges.insert(i, t.cocycle(k, e));
        }
        for i in 0..tg.families().len() as u32 {
            let fam = fam_id(i);
            let Edge::Member { family, .. } = t.act_edge(k, Edge::Member { family: fam, index: 1 }) else {
                unreachable!()
            };
            let image = tg.family_named(&f.families()[family as usize].id).expect("closed under G");
            if image != i {
                ga.families.insert(i, image);
            }
            let orig = t.data().cocycle.iter().find(|c| c.element == *k).and_then(|c| c.families.get(&fam));
            if let Some(seq) = orig {
                gc.families.insert(i, seq.clone());
            }
        }
        action.push(ga);
        cocycle.push(gc);
    }
    let data = TripleData { graph: tg, group: t.group().clone(), action, cocycle };
    Ok(Truncation { triple: Triple::new(data, word_budget)?, boundary })
}

fn base_lassos(f: &Triple, depth: usize) -> Result<Vec<Lasso>> {
    let mut out = Vec::new();
    for v in f.graph().base_vertices() {
        out.extend(lassos_up_to(f.graph(), v, depth, Some(depth as u64))?);
    }
    Ok(out)
}

/// Checks the corner `pO_{G,F}p` against `E` in the partial-map model of
/// `F`, on lassos rooted at base vertices: translated Cuntz–Krieger
/// relations, the two intertwining identities with the unitaries, and
/// fullness of the corner.
pub fn verify_corner(
    d: &Desingularized,
    depth: usize,
    word_budget: usize,
    state_budget: usize,
) -> Result<RelationReport> {
    let e_t = &d.base;
    let f_t = &d.triple;
    let eg = e_t.graph();
    let fg = f_t.graph();
    let lassos = base_lassos(f_t, depth)?;
    let mut c = Checker::new(f_t, &lassos, state_budget);
    let corner = &d.corner;
    let bound = (depth as u64).max(e_t.family_window());
    let mut edges: Vec<Edge> = (0..eg.plain_edges().len() as u32).map(Edge::Plain).collect();
    for family in 0..eg.families().len() as u32 {
        edges.extend((1..=bound).map(|index| Edge::Member { family, index }));
    }
    let p = |x: Vertex| MapExpr::Elem(SElement::vertex(f_t, x));
    let t_of = |a: Edge| MapExpr::Elem(SElement::path(f_t, corner.edge_image(fg, a)));
    let t_star = |a: Edge| MapExpr::Elem(SElement::path(f_t, corner.edge_image(fg, a)).star(f_t));
    let en = |a: Edge| eg.edge_name(a);

    for &a in &edges {
        let img = corner.edge_image(fg, a);
        let typed = fg.path(img.range(), img.edges().to_vec()).is_ok() && img.range() == eg.range(a);
        c.record(
            "Φ(a) is an F-path from r(a)",
            en(a),
            (!typed).then(|| format!("image {} of {}", fg.path_name(&img), en(a))),
        );
        if !typed {
            continue;
        }
        c.same("(a) T_a* T_a = P_s(a)", en(a), &t_star(a).then(t_of(a)), &p(img.source()));
        c.same(
            "(a) T_a T_a* ≤ P_r(a)",
            en(a),
            &p(eg.range(a)).then(t_of(a).then(t_star(a))),
            &t_of(a).then(t_star(a)),
        );
        for &b in &edges {
            if a < b && eg.range(a) == eg.range(b) {
                c.same(
                    "(a) T_a* T_b = 0",
                    format!("{}, {}", en(a), en(b)),
                    &t_star(a).then(t_of(b)),
                    &MapExpr::Elem(SElement::Zero),
                );
            }
        }
    }
    for x in eg.base_vertices() {
        let inc = eg.incoming(x);
        if inc.is_finite() && !inc.is_empty() {
            let sum = MapExpr::Sum(inc.finite.iter().map(|&a| t_of(a).then(t_star(a))).collect());
            c.same("(a) P_x = Σ T_a T_a*", eg.vertex_name(x), &p(x), &sum);
        } else {
            let finc = fg.incoming(x);
            let sum = MapExpr::Sum(
                finc.finite
                    .iter()
                    .map(|&e| {
                        let s = SElement::path(f_t, fg.edge_path(e));
                        MapExpr::Elem(s.clone()).then(MapExpr::Elem(s.star(f_t)))
                    })
                    .collect(),
            );
            c.same("(F) singular x is regular in F", eg.vertex_name(x), &p(x), &sum);
        }
    }
    let els = e_t.test_elements(word_budget);
    let group = e_t.group();
    for k in &els {
        for x in eg.base_vertices() {
            c.same(
                "u_g Φ(P_x) = Φ(P_gx) u_g",
                format!("g={}, x={}", group.name(k), eg.vertex_name(x)),
                &MapExpr::Group(k.clone()).then(p(x)),
                &p(e_t.act_vertex(k, x)).then(MapExpr::Group(k.clone())),
            );
        }
        for &a in &edges {
            let inst = format!("g={}, a={}", group.name(k), en(a));
            let img = corner.edge_image(fg, a);
            let ka = e_t.act_edge(k, a);
            let (moved, twist) = f_t.act_path_full(k, &img);
            let expect_twist = e_t.cocycle(k, a);
            let coherent = moved == corner.edge_image(fg, ka) && twist == expect_twist;
            c.record(
                "g·Φ(a) = Φ(g·a), φ̂(g,Φ(a)) = φ(g,a)",
                inst.clone(),
                (!coherent).then(|| {
                    format!(
                        "g·Φ(a) = {}, φ̂ = {}; expected {}, {}",
                        fg.path_name(&moved),
                        group.name(&twist),
                        fg.path_name(&corner.edge_image(fg, ka)),
                        group.name(&expect_twist)
                    )
                }),
            );
            c.same(
                "u_g Φ(T_a) = Φ(T_ga) u_φ(g,a)",
                inst,
                &MapExpr::Group(k.clone()).then(t_of(a)),
                &t_of(ka).then(MapExpr::Group(expect_twist)),
            );
        }
    }
    let fold = f_t.folding();
    for &root in fg.tails().keys() {
        for index in 1..=fold.window() {
            let walk: Vec<Edge> = (1..=index).map(|i| Edge::Tail { root, index: i }).collect();
            let ok = fg.path(Vertex::Base(root), walk).is_ok();
            c.record(
                "fullness: tail vertex reached from the base",
                fg.vertex_name(Vertex::Tail { root, index }),
                (!ok).then(|| "no path from the base".to_string()),
            );
        }
    }
    Ok(c.finish())
}
