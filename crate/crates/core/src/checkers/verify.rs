//! Independent certificate checks. Everything here is recomputed from the
//! graph, the action and the cocycle directly, with its own searches; no
//! state graph or digraph from the checkers is reused.

use std::cell::Cell;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::graph::{Edge, Folding, Path, Vertex};
use crate::group::GroupElement;
use crate::semigroup::{apply, SElement};
use crate::triple::Triple;

use super::contract::contraction_witness_from;
use super::transitive::{omega_classes, path_vertices};
use super::{
    nontrivial_elements, Budget, Connection, EntryWalk, Evidence, GCircuit, InfiniteMinimal, MinimalSet, NotSlack,
    OmegaClass, SlackFinding, Verdict, Window,
};

type Check = std::result::Result<(), String>;

struct Ctx<'a> {
    t: &'a Triple,
    fold: Folding,
    window: Vec<Vertex>,
    budget: Budget,
    facts: Cell<usize>,
}

/// Twist states `(fold(v), h)` reachable from `(x, g)` through fixed edges,
/// expanding only nodes with `h ≠ 1`.
struct States {
    nodes: Vec<(Vertex, GroupElement)>,
    adj: Vec<Vec<(Edge, usize)>>,
    moved: Vec<Option<Edge>>,
}

impl<'a> Ctx<'a> {
    fn ensure(&self, cond: bool, msg: impl FnOnce() -> String) -> Check {
        self.facts.set(self.facts.get() + 1);
        if cond {
            Ok(())
        } else {
            Err(msg())
        }
    }

    fn vn(&self, v: Vertex) -> String {
        self.t.graph().vertex_name(v)
    }

    fn pn(&self, p: &Path) -> String {
        self.t.graph().path_name(p)
    }

    fn gn(&self, g: &GroupElement) -> String {
        self.t.group().name(g)
    }

    fn realize(&self, x: Vertex, walk: &[Edge]) -> std::result::Result<Path, String> {
        self.t
            .graph()
            .realize_walk(x, walk)
            .ok_or_else(|| format!("walk does not replay from {}", self.vn(x)))
    }

    fn strongly_fixed(&self, g: &GroupElement, p: &Path) -> bool {
        self.t.act_path(g, p) == *p && self.t.group().is_identity(&self.t.cocycle_path(g, p))
    }

    fn minimal_fixed(&self, g: &GroupElement, p: &Path) -> bool {
        self.strongly_fixed(g, p) && (0..p.len()).all(|n| !self.strongly_fixed(g, &self.t.graph().prefix(p, n)))
    }

    fn reach_set(&self, x: Vertex) -> HashSet<Vertex> {
        let g = self.t.graph();
        let mut seen = HashSet::from([self.fold.fold(x)]);
        let mut queue = VecDeque::from([self.fold.fold(x)]);
        while let Some(v) = queue.pop_front() {
            for e in g.incoming(v).finite {
                let w = self.fold.fold(g.source(e));
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen
    }

    fn states(&self, g: &GroupElement, x: Vertex) -> std::result::Result<States, String> {
        let t = self.t;
        let mut index: HashMap<(Vertex, GroupElement), usize> = HashMap::new();
        let mut st = States { nodes: Vec::new(), adj: Vec::new(), moved: Vec::new() };
        let start = (self.fold.fold(x), g.clone());
        index.insert(start.clone(), 0);
        st.nodes.push(start);
        st.adj.push(Vec::new());
        st.moved.push(None);
        let mut k = 0;
        while k < st.nodes.len() {
            let (v, h) = st.nodes[k].clone();
            if !t.group().is_identity(&h) {
                for a in t.graph().incoming(v).finite {
                    if t.act_edge(&h, a) != a {
                        st.moved[k].get_or_insert(a);
                        continue;
                    }
                    let key = (self.fold.fold(t.graph().source(a)), t.cocycle(&h, a));
                    let j = match index.get(&key) {
                        Some(&j) => j,
                        None => {
                            if st.nodes.len() >= self.budget.states {
                                return Err("state budget exhausted during verification".into());
                            }
                            index.insert(key.clone(), st.nodes.len());
                            st.nodes.push(key);
                            st.adj.push(Vec::new());
                            st.moved.push(None);
                            st.nodes.len() - 1
                        }
                    };
                    st.adj[k].push((a, j));
                }
            }
            k += 1;
        }
        Ok(st)
    }

    fn pairs(&self) -> (Vec<(GroupElement, Vertex)>, bool) {
        let (els, complete) = nontrivial_elements(self.t, &self.budget);
        let pairs = els
            .iter()
            .flat_map(|g| self.window.iter().filter(|&&x| self.t.act_vertex(g, x) == x).map(move |&x| (g.clone(), x)))
            .collect();
        (pairs, complete)
    }

    fn minimal_set(&self, set: &MinimalSet) -> Check {
        let (g, x) = (&set.g, set.x);
        for p in &set.paths {
            let ok = p.range() == x && self.minimal_fixed(g, p);
            self.ensure(ok, || format!("{} is not minimal strongly fixed by {}", self.pn(p), self.gn(g)))?;
        }
        // recompute: live nodes leading to twist 1 must be acyclic, and the
        // walks into twist 1 must be exactly the listed paths
        let st = self.states(g, x)?;
        let one = |i: usize| self.t.group().is_identity(&st.nodes[i].1);
        let n = st.nodes.len();
        let mut leads: Vec<bool> = (0..n).map(one).collect();
        for _ in 0..n {
            for i in 0..n {
                if !leads[i] && st.adj[i].iter().any(|&(_, j)| leads[j]) {
                    leads[i] = true;
                }
            }
        }
        let live: Vec<bool> = (0..n).map(|i| leads[i] && !one(i)).collect();
        self.ensure(acyclic(&st.adj, &live), || {
            format!("minimal set of ({}, {}) is infinite", self.gn(g), self.vn(x))
        })?;
        let mut found: HashSet<Vec<Edge>> = HashSet::new();
        let mut stack: Vec<(usize, Vec<Edge>)> = if one(0) { Vec::new() } else { vec![(0, Vec::new())] };
        while let Some((i, walk)) = stack.pop() {
            for &(a, j) in &st.adj[i] {
                if !leads[j] {
                    continue;
                }
                let mut w = walk.clone();
                w.push(a);
                if one(j) {
                    found.insert(self.realize(x, &w)?.edges().to_vec());
                } else {
                    stack.push((j, w));
                }
            }
        }
        let listed: HashSet<Vec<Edge>> = set.paths.iter().map(|p| p.edges().to_vec()).collect();
        self.ensure(found == listed, || {
            format!("minimal set of ({}, {}) has {} paths, certificate lists {}", self.gn(g), self.vn(x), found.len(), listed.len())
        })
    }

    fn infinite_minimal(&self, inf: &InfiniteMinimal) -> Check {
        let g = &inf.g;
        let mut seen = HashSet::new();
        for k in 0..3 {
            let mut walk = inf.prefix.clone();
            for _ in 0..k {
                walk.extend_from_slice(&inf.cycle);
            }
            walk.extend_from_slice(&inf.exit);
            let p = self.realize(inf.x, &walk)?;
            self.ensure(self.minimal_fixed(g, &p), || format!("{} is not minimal strongly fixed", self.pn(&p)))?;
            seen.insert(p);
        }
        self.ensure(seen.len() == 3, || "pumped paths coincide".into())?;
        let a = self.realize(inf.x, &inf.prefix)?;
        let mut pc = inf.prefix.clone();
        pc.extend_from_slice(&inf.cycle);
        let b = self.realize(inf.x, &pc)?;
        let state = |p: &Path| (self.fold.fold(p.source()), self.t.cocycle_path(g, p));
        self.ensure(!inf.cycle.is_empty() && state(&a) == state(&b), || "cycle does not return to its state".into())
    }

    fn class_ok(&self, class: &OmegaClass) -> Check {
        match class {
            OmegaClass::Cycle(c) => {
                let valid = self.t.graph().path(c.range(), c.edges().to_vec()).is_ok();
                self.ensure(valid && !c.is_empty() && c.range() == c.source(), || format!("{} is not a cycle", self.pn(c)))
            }
            OmegaClass::Ray(r) => {
                self.ensure(self.t.graph().tails().contains_key(r), || format!("no tail at {}", self.vn(Vertex::Base(*r))))
            }
        }
    }

    fn on_class(&self, class: &OmegaClass, v: Vertex) -> bool {
        match class {
            OmegaClass::Cycle(c) => path_vertices(self.t, c).contains(&v),
            OmegaClass::Ray(r) => matches!(v, Vertex::Base(b) | Vertex::Tail { root: b, .. } if b == *r),
        }
    }

    fn connection(&self, c: &Connection) -> Check {
        self.class_ok(&c.class)?;
        let valid = self.t.graph().path(c.from, c.walk.edges().to_vec()).map(|p| p == c.walk).unwrap_or(false);
        self.ensure(valid && c.walk.range() == c.from, || format!("{} is not a path from {}", self.pn(&c.walk), self.vn(c.from)))?;
        self.ensure(self.on_class(&c.class, c.on_class), || format!("{} is not visited by the class", self.vn(c.on_class)))?;
        self.ensure(self.t.act_vertex(&c.via, c.on_class) == c.walk.source(), || {
            format!("{}·{} ≠ {}", self.gn(&c.via), self.vn(c.on_class), self.vn(c.walk.source()))
        })
    }

    fn disconnected(&self, from: Vertex, class: &OmegaClass) -> Check {
        self.class_ok(class)?;
        let reach = self.reach_set(from);
        let hit = reach.iter().any(|&v| self.t.orbit(v).into_iter().any(|w| match class {
            OmegaClass::Cycle(_) => w.base().is_some() && self.on_class(class, w),
            OmegaClass::Ray(r) => w == Vertex::Base(*r),
        }));
        let on_tail = matches!((from, class), (Vertex::Tail { root, .. }, OmegaClass::Ray(r))
            if self.t.orbit(Vertex::Base(root)).contains(&Vertex::Base(*r)));
        self.ensure(!hit && !on_tail, || format!("{} does reach the class", self.vn(from)))
    }

    fn entry_walk(&self, w: &EntryWalk) -> Check {
        let g = self.t.graph();
        match w {
            EntryWalk::Branch { x, walk } => {
                let mut cur = *x;
                for &e in walk.edges() {
                    let inc = g.incoming(cur).finite;
                    self.ensure(inc == [e], || format!("{} does not follow unique edges", self.pn(walk)))?;
                    cur = g.source(e);
                }
                self.ensure(walk.range() == *x && g.incoming(cur).finite.len() >= 2, || {
                    format!("{} receives a single edge", self.vn(cur))
                })
            }
            EntryWalk::NoReturn { x } => {
                let orbit: HashSet<Vertex> = self.t.orbit(*x).into_iter().collect();
                let mut cur = *x;
                for _ in 0..=self.window.len() {
                    let inc = g.incoming(cur).finite;
                    self.ensure(inc.len() == 1, || format!("{} receives {} edges", self.vn(cur), inc.len()))?;
                    cur = g.source(inc[0]);
                    self.ensure(!orbit.contains(&cur), || format!("the unique path from {} returns", self.vn(*x)))?;
                }
                Ok(())
            }
        }
    }

    fn slack(&self, s: &SlackFinding) -> Check {
        match s {
            SlackFinding::Moves { g, x, walk, edge } => {
                let mut full = walk.clone();
                full.push(*edge);
                let p = self.realize(*x, &full)?;
                let prefix = self.t.graph().prefix(&p, walk.len());
                let h = self.t.cocycle_path(g, &prefix);
                let last = *p.edges().last().expect("nonempty");
                self.ensure(self.t.act_path(g, &prefix) == prefix && self.t.act_edge(&h, last) != last, || {
                    format!("{} does not move {}", self.gn(g), self.pn(&p))
                })
            }
            SlackFinding::Slack { g, x, .. } => {
                let st = self.states(g, *x)?;
                self.ensure(st.moved.iter().all(Option::is_none), || format!("{} moves part of Z({})", self.gn(g), self.vn(*x)))?;
                let live: Vec<bool> = st.nodes.iter().map(|(_, h)| !self.t.group().is_identity(h)).collect();
                self.ensure(acyclic(&st.adj, &live), || {
                    format!("{} is not slack at {}", self.gn(g), self.vn(*x))
                })
            }
        }
    }

    fn not_slack(&self, n: &NotSlack) -> Check {
        let st = self.states(&n.g, n.x)?;
        self.ensure(st.moved.iter().all(Option::is_none), || format!("{} moves part of Z({})", self.gn(&n.g), self.vn(n.x)))?;
        let mut walk = n.prefix.clone();
        for _ in 0..2 {
            walk.extend_from_slice(&n.cycle);
        }
        let p = self.realize(n.x, &walk)?;
        for k in 0..=p.len() {
            let q = self.t.graph().prefix(&p, k);
            self.ensure(!self.strongly_fixed(&n.g, &q), || format!("{} is strongly fixed", self.pn(&q)))?;
        }
        let a = self.t.graph().prefix(&p, n.prefix.len());
        let b = self.t.graph().prefix(&p, n.prefix.len() + n.cycle.len());
        let state = |q: &Path| (self.fold.fold(q.source()), self.t.cocycle_path(&n.g, q));
        self.ensure(!n.cycle.is_empty() && state(&a) == state(&b), || "cycle does not return to its state".into())
    }

    fn no_entry(&self, c: &GCircuit, omega: &crate::lasso::Lasso) -> Check {
        let typed = GCircuit::new(self.t, c.g.clone(), c.gamma.clone()).is_ok();
        self.ensure(typed, || "not a G-circuit".into())?;
        self.no_entry_fixed(c, omega)?;
        let g = self.t.graph();
        for k in 0..omega.size() {
            let e = omega.edge_at(k);
            self.ensure(g.incoming(g.range(e)).finite.len() == 1, || format!("position {k} has an entry"))?;
        }
        Ok(())
    }

    fn contracting(&self, routes: &[super::ContractionRoute]) -> Check {
        let covered: HashSet<Vertex> = routes.iter().map(|r| r.x).collect();
        let all = self.window.iter().all(|v| covered.contains(v));
        self.ensure(all, || "some window vertex has no route".into())?;
        let g = self.t.graph();
        for r in routes {
            let valid = g.path(r.x, r.alpha.edges().to_vec()).map(|p| p == r.alpha).unwrap_or(false);
            self.ensure(valid && r.alpha.source() == r.circuit.gamma.range(), || {
                format!("{} does not lead to the circuit", self.pn(&r.alpha))
            })?;
            let omega = r.circuit.lasso(self.t, self.budget.states).map_err(|e| e.to_string())?;
            self.no_entry_fixed(&r.circuit, &omega)?;
            let (p, tau) = r.entry;
            let e = omega.edge_at(p);
            self.ensure(tau != e && g.contains_edge(tau) && g.range(tau) == g.range(e), || {
                format!("{} is not an entry at position {p}", g.edge_name(tau))
            })?;
            let unit = SElement::vertex(self.t, r.x);
            let w = contraction_witness_from(self.t, &unit, r, self.budget.states).map_err(|e| e.to_string())?;
            for (name, ok) in w.check(self.t, &unit) {
                self.ensure(ok, || format!("contraction witness at {}: {name} fails", self.vn(r.x)))?;
            }
        }
        Ok(())
    }

    fn no_entry_fixed(&self, c: &GCircuit, omega: &crate::lasso::Lasso) -> Check {
        let image = apply(self.t, &c.element(self.t), omega, self.budget.states).map_err(|e| e.to_string())?;
        self.ensure(image.as_ref() == Some(omega), || "ω is not fixed by the circuit element".into())
    }

    fn no_circuit(&self, from: Vertex) -> Check {
        let g = self.t.graph();
        for z in self.reach_set(from) {
            let root = match z {
                Vertex::Base(_) => z,
                Vertex::Tail { root, .. } => Vertex::Base(root),
            };
            let orbit: HashSet<Vertex> = self.t.orbit(root).into_iter().collect();
            let mut beyond = HashSet::new();
            for e in g.incoming(z).finite {
                beyond.extend(self.reach_set(g.source(e)));
            }
            self.ensure(beyond.is_disjoint(&orbit), || format!("a circuit sits at {}", self.vn(z)))?;
        }
        Ok(())
    }

    fn evidence(&self, ev: &Evidence) -> Check {
        match ev {
            Evidence::Note(_) => Ok(()),
            Evidence::MinimalSets(sets) => {
                let (pairs, _) = self.pairs();
                let listed: HashSet<(GroupElement, Vertex)> = sets.iter().map(|s| (s.g.clone(), s.x)).collect();
                let all = pairs.iter().all(|p| listed.contains(p));
                self.ensure(all, || "some (g, x) pair is missing".into())?;
                sets.iter().try_for_each(|s| self.minimal_set(s))
            }
            Evidence::InfiniteMinimal(inf) => self.infinite_minimal(inf),
            Evidence::Connections(cs) => {
                let win = Window::new(self.t).map_err(|e| e.to_string())?;
                let classes = omega_classes(self.t, &win);
                for &y in &self.window.clone() {
                    for class in &classes {
                        let found = cs.iter().any(|c| c.from == y && c.class == *class);
                        self.ensure(found, || format!("no connection from {}", self.vn(y)))?;
                    }
                }
                cs.iter().try_for_each(|c| self.connection(c))
            }
            Evidence::Disconnected { from, class } => self.disconnected(*from, class),
            Evidence::TopFree { entries, slack } => {
                let xs: HashSet<Vertex> = entries
                    .iter()
                    .map(|w| match w {
                        EntryWalk::Branch { x, .. } | EntryWalk::NoReturn { x } => *x,
                    })
                    .collect();
                let all = self.window.iter().all(|v| xs.contains(v));
                self.ensure(all, || "some window vertex has no entry record".into())?;
                entries.iter().try_for_each(|w| self.entry_walk(w))?;
                let (pairs, _) = self.pairs();
                let listed: HashSet<(GroupElement, Vertex)> = slack
                    .iter()
                    .map(|s| match s {
                        SlackFinding::Moves { g, x, .. } | SlackFinding::Slack { g, x, .. } => (g.clone(), *x),
                    })
                    .collect();
                let all = pairs.iter().all(|p| listed.contains(p));
                self.ensure(all, || "some (g, x) pair is missing".into())?;
                slack.iter().try_for_each(|s| self.slack(s))
            }
            Evidence::NoEntry { circuit, omega } => self.no_entry(circuit, omega),
            Evidence::NotSlack(n) => self.not_slack(n),
            Evidence::Contracting(routes) => self.contracting(routes),
            Evidence::NoCircuit { from } => self.no_circuit(*from),
            Evidence::Parts(parts) => parts.iter().try_for_each(|(_, v)| match v.evidence() {
                Some(ev) => self.evidence(ev),
                None => Ok(()),
            }),
        }
    }
}

/// Kahn's algorithm on the subgraph of `live` nodes.
fn acyclic(adj: &[Vec<(Edge, usize)>], live: &[bool]) -> bool {
    let n = adj.len();
    let mut indeg = vec![0usize; n];
    for i in (0..n).filter(|&i| live[i]) {
        for &(_, j) in &adj[i] {
            if live[j] {
                indeg[j] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&i| live[i] && indeg[i] == 0).collect();
    let mut removed = 0;
    while let Some(i) = queue.pop_front() {
        removed += 1;
        for &(_, j) in &adj[i] {
            if live[j] {
                indeg[j] -= 1;
                if indeg[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
    }
    removed == live.iter().filter(|&&l| l).count()
}

/// Re-checks the evidence behind a verdict on the triple it was computed
/// on. Returns the number of elementary facts checked.
pub fn verify_certificate(t: &Triple, verdict: &Verdict, budget: &Budget) -> std::result::Result<usize, String> {
    let fold = t.folding();
    let window = t.graph().window_vertices(&fold);
    let ctx = Ctx { t, fold, window, budget: *budget, facts: Cell::new(0) };
    polarity(verdict)?;
    if let Some(ev) = verdict.evidence() {
        ctx.evidence(ev)?;
    }
    Ok(ctx.facts.get())
}

/// Evidence kinds only support one side; combined verdicts follow their parts.
fn polarity(verdict: &Verdict) -> Check {
    let (proven, ev) = match verdict {
        Verdict::Proven(ev) => (true, ev),
        Verdict::Refuted(ev) => (false, ev),
        Verdict::Unknown(_) => return Ok(()),
    };
    let ok = match ev {
        Evidence::Note(_) => true,
        Evidence::MinimalSets(_) | Evidence::Connections(_) | Evidence::TopFree { .. } | Evidence::Contracting(_) => proven,
        Evidence::InfiniteMinimal(_)
        | Evidence::Disconnected { .. }
        | Evidence::NoEntry { .. }
        | Evidence::NotSlack(_)
        | Evidence::NoCircuit { .. } => !proven,
        Evidence::Parts(parts) => {
            parts.iter().try_for_each(|(_, v)| polarity(v))?;
            if proven {
                parts.iter().all(|(_, v)| v.is_proven())
            } else {
                parts.iter().any(|(_, v)| v.is_refuted())
            }
        }
    };
    if ok {
        Ok(())
    } else {
        Err(format!("{} verdict carries evidence of the other side", verdict.label()))
    }
}
