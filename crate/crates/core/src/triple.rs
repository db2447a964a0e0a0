//! Triples `(G, E, φ)`: a graph, a group acting by graph automorphisms and
//! a 1-cocycle `φ: G × E¹ → G`, extended to paths by
//! `g·(aβ) = (g·a)(φ(g,a)·β)` and `φ(g, aβ) = φ(φ(g,a), β)`.

use std::collections::{BTreeMap, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::graph::{Edge, Folding, Graph, Path, TailKind, Vertex};
use crate::group::{Group, GroupElement};
use crate::lasso::{Lasso, LassoTail};
use crate::seq::EventuallyPeriodic;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorAction {
    pub element: GroupElement,
    /// Unlisted vertices, edges and families are fixed.
    pub vertices: BTreeMap<u32, u32>,
    pub edges: BTreeMap<u32, u32>,
    pub families: BTreeMap<u32, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorCocycle {
    pub element: GroupElement,
    /// Unlisted edges get `φ(g, a) = g`.
    pub edges: BTreeMap<u32, GroupElement>,
    pub families: BTreeMap<u32, EventuallyPeriodic<GroupElement>>,
}

/// Raw, unvalidated triple data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripleData {
    pub graph: Graph,
    pub group: Group,
    pub action: Vec<GeneratorAction>,
    pub cocycle: Vec<GeneratorCocycle>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: &'static str,
    pub witness: String,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}: {}", self.axiom, self.witness)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    /// Informative findings that do not invalidate the triple.
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Stabilizer {
    Finite(Vec<GroupElement>),
    /// `dℤ`.
    Multiples(BigInt),
}

#[derive(Clone, Debug)]
enum Tables {
    Finite {
        vperm: Vec<Vec<u32>>,
        eperm: Vec<Vec<u32>>,
        fperm: Vec<Vec<u32>>,
        phi: Vec<Vec<u32>>,
        phi_fam: Vec<Vec<EventuallyPeriodic<u32>>>,
    },
    Integers {
        vpow: Vec<Vec<u32>>,
        epow: Vec<Vec<u32>>,
        fpow: Vec<Vec<u32>>,
        gen_phi_fam: Vec<EventuallyPeriodic<BigInt>>,
        /// `partial[r][a] = Σ_{k<r} φ(1, k·a)` for `r ≤ epow.len()`.
        partial: Vec<Vec<BigInt>>,
    },
}

#[derive(Clone, Debug)]
pub struct Triple {
    data: TripleData,
    tables: Tables,
}

fn perm_from_map(n: usize, map: &BTreeMap<u32, u32>) -> Vec<u32> {
    let mut p: Vec<u32> = (0..n as u32).collect();
    for (&k, &v) in map {
        if (k as usize) < n {
            p[k as usize] = v;
        }
    }
    p
}

fn is_permutation(p: &[u32]) -> bool {
    let mut seen = vec![false; p.len()];
    for &v in p {
        if v as usize >= p.len() || seen[v as usize] {
            return false;
        }
        seen[v as usize] = true;
    }
    true
}

fn compose(outer: &[u32], inner: &[u32]) -> Vec<u32> {
    inner.iter().map(|&i| outer[i as usize]).collect()
}

fn perm_powers(p: &[u32]) -> Vec<Vec<u32>> {
    let id: Vec<u32> = (0..p.len() as u32).collect();
    let mut out = vec![id.clone()];
    let mut cur = p.to_vec();
    while cur != id {
        out.push(cur.clone());
        cur = compose(p, &cur);
    }
    out
}

impl Triple {
    /// Validates and seals.
    pub fn new(data: TripleData, word_budget: usize) -> Result<Triple> {
        let (triple, mut report) = Triple::build(data);
        if report.is_valid() {
            report = triple.check_axioms(word_budget);
        }
        if report.is_valid() {
            Ok(triple)
        } else {
            Err(Error::Invalid(Box::new(report)))
        }
    }

    /// Full validation report for raw data.
    pub fn validate(data: &TripleData, word_budget: usize) -> ValidationReport {
        let (triple, mut report) = Triple::build(data.clone());
        let axioms = triple.check_axioms(word_budget);
        report.violations.extend(axioms.violations);
        report.notes.extend(axioms.notes);
        report
    }

    /// Builds the action and cocycle tables without checking the axioms.
    /// Meant for mutation tests and diagnostics.
    pub fn new_unchecked(data: TripleData) -> Triple {
        Triple::build(data).0
    }

    fn build(data: TripleData) -> (Triple, ValidationReport) {
        let mut report = ValidationReport::default();
        let nv = data.graph.base_count();
        let ne = data.graph.plain_edges().len();
        let nf = data.graph.families().len();
        for a in &data.action {
            if !data.group.contains(&a.element) {
                report.violations.push(Violation { axiom: "generator", witness: format!("{} is not a group element", a.element) });
            }
            for (what, map, n) in [("vertex", &a.vertices, nv), ("edge", &a.edges, ne), ("family", &a.families, nf)] {
                if !is_permutation(&perm_from_map(n, map)) || map.iter().any(|(&k, &v)| k as usize >= n || v as usize >= n) {
                    report.violations.push(Violation {
                        axiom: "bijection",
                        witness: format!("{what} map of generator {} is not a permutation", data.group.name(&a.element)),
                    });
                }
            }
        }
        let tables = match &data.group {
            Group::Finite(fg) => {
                let n = fg.len();
                let mut gens: Vec<u32> = Vec::new();
                for el in data.action.iter().map(|a| &a.element).chain(data.cocycle.iter().map(|c| &c.element)) {
                    if let Some(i) = el.table_index() {
                        if i < n && !gens.contains(&(i as u32)) {
                            gens.push(i as u32);
                        }
                    }
                }
                gens.sort();
                let gen_data: Vec<(u32, Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>, Vec<EventuallyPeriodic<u32>>)> = gens
                    .iter()
                    .map(|&s| {
                        let act = data.action.iter().find(|a| a.element.table_index() == Some(s as usize));
                        let empty = BTreeMap::new();
                        let vp = perm_from_map(nv, act.map(|a| &a.vertices).unwrap_or(&empty));
                        let ep = perm_from_map(ne, act.map(|a| &a.edges).unwrap_or(&empty));
                        let fp = perm_from_map(nf, act.map(|a| &a.families).unwrap_or(&empty));
                        let coc = data.cocycle.iter().find(|c| c.element.table_index() == Some(s as usize));
                        let phi: Vec<u32> = (0..ne as u32)
                            .map(|e| {
                                coc.and_then(|c| c.edges.get(&e))
                                    .and_then(|g| g.table_index())
                                    .map(|g| g as u32)
                                    .unwrap_or(s)
                            })
                            .collect();
                        let phi_fam: Vec<EventuallyPeriodic<u32>> = (0..nf as u32)
                            .map(|f| {
                                coc.and_then(|c| c.families.get(&f))
                                    .map(|seq| seq.map(|g| g.table_index().unwrap_or(0) as u32))
                                    .unwrap_or_else(|| EventuallyPeriodic::constant(s))
                            })
                            .collect();
                        (s, vp, ep, fp, phi, phi_fam)
                    })
                    .collect();
                let id = fg.identity_index();
                let mut known: Vec<Option<(Vec<u32>, Vec<u32>, Vec<u32>, Vec<u32>, Vec<EventuallyPeriodic<u32>>)>> = vec![None; n];
                known[id as usize] = Some((
                    (0..nv as u32).collect(),
                    (0..ne as u32).collect(),
                    (0..nf as u32).collect(),
                    vec![id; ne],
                    vec![EventuallyPeriodic::constant(id); nf],
                ));
                let mut queue = VecDeque::from([id]);
                let table = fg.table();
                while let Some(h) = queue.pop_front() {
                    let (hv, he, hf, hphi, hphi_fam) = known[h as usize].clone().expect("known");
                    for (s, vp, ep, fp, phi, phi_fam) in &gen_data {
                        let g = table[*s as usize][h as usize];
                        if known[g as usize].is_some() {
                            continue;
                        }
                        let gv = compose(vp, &hv);
                        let ge = compose(ep, &he);
                        let gf = compose(fp, &hf);
                        let gphi: Vec<u32> = (0..ne)
                            .map(|a| table[phi[he[a] as usize] as usize][hphi[a] as usize])
                            .collect();
                        let gphi_fam: Vec<EventuallyPeriodic<u32>> = (0..nf)
                            .map(|f| {
                                phi_fam[hf[f] as usize].zip_with(&hphi_fam[f], |x, y| table[*x as usize][*y as usize])
                            })
                            .collect();
                        known[g as usize] = Some((gv, ge, gf, gphi, gphi_fam));
                        queue.push_back(g);
                    }
                }
                for (s, vp, ep, fp, phi, phi_fam) in &gen_data {
                    let k = known[*s as usize].as_ref().expect("generator reached");
                    if (&k.0, &k.1, &k.2, &k.3, &k.4) != (vp, ep, fp, phi, phi_fam) {
                        report.violations.push(Violation {
                            axiom: "generator consistency",
                            witness: format!(
                                "data given for {} disagrees with the value forced by the other generators",
                                fg.names()[*s as usize]
                            ),
                        });
                    }
                }
                let mut vperm = Vec::with_capacity(n);
                let mut eperm = Vec::with_capacity(n);
                let mut fperm = Vec::with_capacity(n);
                let mut phi = Vec::with_capacity(n);
                let mut phi_fam = Vec::with_capacity(n);
                for (g, k) in known.into_iter().enumerate() {
                    let k = k.unwrap_or_else(|| {
                        report.violations.push(Violation {
                            axiom: "generation",
                            witness: format!("{} is not generated by the listed generators", fg.names()[g]),
                        });
                        (
                            (0..nv as u32).collect(),
                            (0..ne as u32).collect(),
                            (0..nf as u32).collect(),
                            vec![g as u32; ne],
                            vec![EventuallyPeriodic::constant(g as u32); nf],
                        )
                    });
                    vperm.push(k.0);
                    eperm.push(k.1);
                    fperm.push(k.2);
                    phi.push(k.3);
                    phi_fam.push(k.4);
                }
                for g in 0..n {
                    for h in 0..n {
                        let gh = table[g][h] as usize;
                        if vperm[gh] != compose(&vperm[g], &vperm[h])
                            || eperm[gh] != compose(&eperm[g], &eperm[h])
                            || fperm[gh] != compose(&fperm[g], &fperm[h])
                        {
                            report.violations.push(Violation {
                                axiom: "action homomorphism",
                                witness: format!("({}, {})", fg.names()[g], fg.names()[h]),
                            });
                        }
                    }
                }
                Tables::Finite { vperm, eperm, fperm, phi, phi_fam }
            }
            Group::Integers => {
                let one = Group::one_int();
                for el in data.action.iter().map(|a| &a.element).chain(data.cocycle.iter().map(|c| &c.element)) {
                    if *el != one {
                        report.violations.push(Violation {
                            axiom: "generator",
                            witness: format!("integers backend takes data for the generator 1 only, got {el}"),
                        });
                    }
                }
                let act = data.action.iter().find(|a| a.element == one);
                let empty = BTreeMap::new();
                let vp = perm_from_map(nv, act.map(|a| &a.vertices).unwrap_or(&empty));
                let ep = perm_from_map(ne, act.map(|a| &a.edges).unwrap_or(&empty));
                let fp = perm_from_map(nf, act.map(|a| &a.families).unwrap_or(&empty));
                let coc = data.cocycle.iter().find(|c| c.element == one);
                let gen_phi: Vec<BigInt> = (0..ne as u32)
                    .map(|e| match coc.and_then(|c| c.edges.get(&e)) {
                        Some(GroupElement::Int(n)) => n.clone(),
                        _ => BigInt::from(1),
                    })
                    .collect();
                let gen_phi_fam: Vec<EventuallyPeriodic<BigInt>> = (0..nf as u32)
                    .map(|f| match coc.and_then(|c| c.families.get(&f)) {
                        Some(seq) => seq.map(|g| match g {
                            GroupElement::Int(n) => n.clone(),
                            GroupElement::Table(_) => BigInt::zero(),
                        }),
                        None => EventuallyPeriodic::constant(BigInt::from(1)),
                    })
                    .collect();
                let (vpow, epow, fpow) = if is_permutation(&vp) && is_permutation(&ep) && is_permutation(&fp) {
                    (perm_powers(&vp), perm_powers(&ep), perm_powers(&fp))
                } else {
                    (vec![vp], vec![ep], vec![fp])
                };
                let m = epow.len();
                let mut partial = vec![vec![BigInt::zero(); ne]; m + 1];
                for r in 0..m {
                    for a in 0..ne {
                        let next = &partial[r][a] + &gen_phi[epow[r][a] as usize];
                        partial[r + 1][a] = next;
                    }
                }
                Tables::Integers { vpow, epow, fpow, gen_phi_fam, partial }
            }
        };
        (Triple { data, tables }, report)
    }

    pub fn graph(&self) -> &Graph {
        &self.data.graph
    }

    pub fn group(&self) -> &Group {
        &self.data.group
    }

    pub fn data(&self) -> &TripleData {
        &self.data
    }

    /// Same group data over a graph carrying tails.
    pub(crate) fn with_graph(&self, graph: Graph) -> Triple {
        let mut t = self.clone();
        t.data.graph = graph;
        t
    }

    fn int_index(n: &BigInt, m: usize) -> usize {
        n.mod_floor(&BigInt::from(m)).to_usize().expect("small modulus")
    }

    pub fn act_base(&self, g: &GroupElement, b: u32) -> u32 {
        match (&self.tables, g) {
            (Tables::Finite { vperm, .. }, GroupElement::Table(i)) => vperm[*i as usize][b as usize],
            (Tables::Integers { vpow, .. }, GroupElement::Int(n)) => vpow[Triple::int_index(n, vpow.len())][b as usize],
            _ => panic!("group element from a different backend"),
        }
    }

    pub fn act_vertex(&self, g: &GroupElement, v: Vertex) -> Vertex {
        match v {
            Vertex::Base(b) => Vertex::Base(self.act_base(g, b)),
            Vertex::Tail { root, index } => Vertex::Tail { root: self.act_base(g, root), index },
        }
    }

    pub fn act_edge(&self, g: &GroupElement, e: Edge) -> Edge {
        match e {
            Edge::Plain(i) => Edge::Plain(match (&self.tables, g) {
                (Tables::Finite { eperm, .. }, GroupElement::Table(k)) => eperm[*k as usize][i as usize],
                (Tables::Integers { epow, .. }, GroupElement::Int(n)) => {
                    epow[Triple::int_index(n, epow.len())][i as usize]
                }
                _ => panic!("group element from a different backend"),
            }),
            Edge::Member { family, index } => Edge::Member {
                family: match (&self.tables, g) {
                    (Tables::Finite { fperm, .. }, GroupElement::Table(k)) => fperm[*k as usize][family as usize],
                    (Tables::Integers { fpow, .. }, GroupElement::Int(n)) => {
                        fpow[Triple::int_index(n, fpow.len())][family as usize]
                    }
                    _ => panic!("group element from a different backend"),
                },
                index,
            },
            Edge::Tail { root, index } => Edge::Tail { root: self.act_base(g, root), index },
            Edge::Feeder { root, index } => Edge::Feeder { root: self.act_base(g, root), index },
        }
    }

    /// `φ(g, e)`.
    pub fn cocycle(&self, g: &GroupElement, e: Edge) -> GroupElement {
        match e {
            Edge::Tail { .. } => g.clone(),
            Edge::Feeder { root, index } => {
                let removed = self.graph().removed_edge(root, index).expect("feeder of a receiver tail");
                self.cocycle(g, removed)
            }
            Edge::Plain(a) => match (&self.tables, g) {
                (Tables::Finite { phi, .. }, GroupElement::Table(k)) => GroupElement::Table(phi[*k as usize][a as usize]),
                (Tables::Integers { epow, partial, .. }, GroupElement::Int(n)) => {
                    if n.sign() == num_bigint::Sign::Minus {
                        let m = -n;
                        let b = self.act_edge(g, e);
                        match self.cocycle(&GroupElement::Int(m), b) {
                            GroupElement::Int(v) => GroupElement::Int(-v),
                            other => other,
                        }
                    } else {
                        let len = BigInt::from(epow.len());
                        let (q, r) = n.div_mod_floor(&len);
                        let r = r.to_usize().expect("small");
                        GroupElement::Int(q * &partial[epow.len()][a as usize] + &partial[r][a as usize])
                    }
                }
                _ => panic!("group element from a different backend"),
            },
            Edge::Member { family, index } => match (&self.tables, g) {
                (Tables::Finite { phi_fam, .. }, GroupElement::Table(k)) => {
                    GroupElement::Table(*phi_fam[*k as usize][family as usize].get(index as usize - 1))
                }
                (Tables::Integers { fpow, gen_phi_fam, .. }, GroupElement::Int(n)) => {
                    if n.sign() == num_bigint::Sign::Minus {
                        let b = self.act_edge(g, e);
                        match self.cocycle(&GroupElement::Int(-n), b) {
                            GroupElement::Int(v) => GroupElement::Int(-v),
                            other => other,
                        }
                    } else {
                        let m = fpow.len();
                        let (q, r) = n.div_mod_floor(&BigInt::from(m));
                        let r = r.to_usize().expect("small");
                        let i = index as usize - 1;
                        let mut full = BigInt::zero();
                        let mut part = BigInt::zero();
                        for (k, p) in fpow.iter().enumerate() {
                            let c = gen_phi_fam[p[family as usize] as usize].get(i);
                            if k < r {
                                part += c;
                            }
                            full += c;
                        }
                        GroupElement::Int(q * full + part)
                    }
                }
                _ => panic!("group element from a different backend"),
            },
        }
    }

    /// `(g·α, φ(g, α))`.
    pub fn act_path_full(&self, g: &GroupElement, p: &Path) -> (Path, GroupElement) {
        let mut h = g.clone();
        let mut edges = Vec::with_capacity(p.len());
        for &e in p.edges() {
            edges.push(self.act_edge(&h, e));
            h = self.cocycle(&h, e);
        }
        let range = self.act_vertex(g, p.range());
        let source = self.act_vertex(g, p.source());
        (Path::from_parts(range, source, edges), h)
    }

    pub fn act_path(&self, g: &GroupElement, p: &Path) -> Path {
        self.act_path_full(g, p).0
    }

    pub fn cocycle_path(&self, g: &GroupElement, p: &Path) -> GroupElement {
        self.act_path_full(g, p).1
    }

    /// `g·ω`, iterating twist states over the cycle until one repeats.
    /// Fails with [`Error::Budget`] when more than `state_budget` distinct
    /// states occur (only possible for infinite groups).
    pub fn act_lasso(&self, g: &GroupElement, w: &Lasso, state_budget: usize) -> Result<Lasso> {
        let (head, h) = self.act_path_full(g, w.head());
        let graph = self.graph();
        match w.tail() {
            LassoTail::Ray { root, start } => Ok(Lasso::from_parts(
                head,
                LassoTail::Ray { root: self.act_base(&h, *root), start: *start },
            )
            .normalize(graph)),
            LassoTail::Cycle(c) => {
                let cyc = Path::from_parts(w.head().source(), w.head().source(), c.clone());
                let mut seen: HashMap<GroupElement, usize> = HashMap::new();
                let mut blocks: Vec<Vec<Edge>> = Vec::new();
                let mut state = h;
                loop {
                    if let Some(&i) = seen.get(&state) {
                        let mut edges = head.edges().to_vec();
                        for b in &blocks[..i] {
                            edges.extend_from_slice(b);
                        }
                        let cycle: Vec<Edge> = blocks[i..].concat();
                        let src = match edges.last() {
                            Some(&e) => graph.source(e),
                            None => head.range(),
                        };
                        let full_head = Path::from_parts(head.range(), src, edges);
                        return Ok(Lasso::from_parts(full_head, LassoTail::Cycle(cycle)).normalize(graph));
                    }
                    if seen.len() >= state_budget {
                        return Err(Error::Budget(state_budget));
                    }
                    seen.insert(state.clone(), blocks.len());
                    let (img, next) = self.act_path_full(&state, &cyc);
                    blocks.push(img.edges().to_vec());
                    state = next;
                }
            }
        }
    }

    /// Sorted orbit of a vertex.
    pub fn orbit(&self, v: Vertex) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.orbit_elements(v).into_iter().map(|(w, _)| w).collect();
        out.sort();
        out
    }

    /// Each orbit point with the least group element reaching it.
    pub fn orbit_elements(&self, v: Vertex) -> Vec<(Vertex, GroupElement)> {
        let mut out: Vec<(Vertex, GroupElement)> = Vec::new();
        let els: Vec<GroupElement> = match &self.tables {
            Tables::Finite { .. } => self.group().elements().expect("finite"),
            Tables::Integers { vpow, .. } => (0..vpow.len() as i64).map(GroupElement::int).collect(),
        };
        for g in els {
            let w = self.act_vertex(&g, v);
            if !out.iter().any(|(u, _)| *u == w) {
                out.push((w, g));
            }
        }
        out.sort_by_key(|a| a.0);
        out
    }

    pub fn stabilizer(&self, v: Vertex) -> Stabilizer {
        match &self.tables {
            Tables::Finite { .. } => Stabilizer::Finite(
                self.group()
                    .elements()
                    .expect("finite")
                    .into_iter()
                    .filter(|g| self.act_vertex(g, v) == v)
                    .collect(),
            ),
            Tables::Integers { vpow, .. } => {
                let d = (1..=vpow.len())
                    .find(|&k| self.act_vertex(&GroupElement::int(k as i64), v) == v)
                    .unwrap_or(vpow.len());
                Stabilizer::Multiples(BigInt::from(d))
            }
        }
    }

    /// Least element of the orbit.
    pub fn orbit_rep(&self, v: Vertex) -> Vertex {
        self.orbit(v)[0]
    }

    /// Group elements over which axioms are checked: the whole group, or
    /// the ball of radius `word_budget` for the integers.
    pub fn test_elements(&self, word_budget: usize) -> Vec<GroupElement> {
        self.group().ball(word_budget)
    }

    /// Family sequence parameters `(max prefix, lcm of periods)` over
    /// sources and cocycle values.
    fn family_params(&self) -> (u64, u64) {
        let mut pre = 0usize;
        let mut per = 1usize;
        for f in self.graph().families() {
            pre = pre.max(f.sources.prefix().len());
            per = per.lcm(&f.sources.period().len());
        }
        match &self.tables {
            Tables::Finite { phi_fam, .. } => {
                for row in phi_fam {
                    for s in row {
                        pre = pre.max(s.prefix().len());
                        per = per.lcm(&s.period().len());
                    }
                }
            }
            Tables::Integers { gen_phi_fam, .. } => {
                for s in gen_phi_fam {
                    pre = pre.max(s.prefix().len());
                    per = per.lcm(&s.period().len());
                }
            }
        }
        (pre as u64, per as u64)
    }

    /// Members with index up to this bound exhibit every behaviour of their family.
    pub fn family_window(&self) -> u64 {
        let (pre, per) = self.family_params();
        pre + per
    }

    /// Periodic structure of the tails: `v_i` and `v_{i+period}` have the
    /// same incoming edge data once `i ≥ start`.
    pub fn folding(&self) -> Folding {
        let (pre, per) = self.family_params();
        let mut start = 1u64;
        let mut period = 1u64;
        for kind in self.graph().tails().values() {
            if let TailKind::Receiver { plain, families } = kind {
                let k = families.len().max(1) as u64;
                let pj = plain.len() as u64 + k * pre + 1;
                start = start.max(pj.saturating_sub(1));
                period = period.lcm(&(k * per));
            }
        }
        Folding { start, period }
    }

    /// Finite set of edges on which the axioms are checked; every edge of
    /// the graph behaves like one of them.
    pub fn edge_window(&self) -> Vec<Edge> {
        let g = self.graph();
        let mut out: Vec<Edge> = (0..g.plain_edges().len() as u32).map(Edge::Plain).collect();
        let fw = self.family_window();
        for f in 0..g.families().len() as u32 {
            for index in 1..=fw {
                out.push(Edge::Member { family: f, index });
            }
        }
        let fold = self.folding();
        for (&root, kind) in g.tails() {
            for index in 1..=fold.window() + 1 {
                out.push(Edge::Tail { root, index });
                if matches!(kind, TailKind::Receiver { .. }) {
                    out.push(Edge::Feeder { root, index });
                }
            }
        }
        out
    }

    /// Checks the automorphism, compatibility and cocycle axioms.
    pub fn check_axioms(&self, word_budget: usize) -> ValidationReport {
        let mut report = ValidationReport::default();
        let graph = self.graph();
        let group = self.group();
        let els = self.test_elements(word_budget);
        if !group.is_finite() {
            report.notes.push(format!("integers backend: axioms checked for |n| ≤ {word_budget}"));
        }
        let edges = self.edge_window();
        let gname = |g: &GroupElement| group.name(g);

        for (&root, kind) in graph.tails() {
            for g in &els {
                let image = self.act_base(g, root);
                match (kind, graph.tails().get(&image)) {
                    (TailKind::Source, Some(TailKind::Source)) => {}
                    (TailKind::Receiver { .. }, Some(TailKind::Receiver { .. })) => {
                        for j in 1..=self.folding().window() + 1 {
                            let b = graph.removed_edge(root, j).expect("receiver");
                            let moved = self.act_edge(g, b);
                            if graph.removed_edge(image, j) != Some(moved) {
                                report.violations.push(Violation {
                                    axiom: "tail equivariance",
                                    witness: format!(
                                        "{}·a_{j} at {} is not a_{j} at {}",
                                        gname(g),
                                        graph.base_name(root),
                                        graph.base_name(image)
                                    ),
                                });
                                break;
                            }
                        }
                    }
                    _ => report.violations.push(Violation {
                        axiom: "tail equivariance",
                        witness: format!(
                            "{} maps the tail at {} to {}, which has no matching tail",
                            gname(g),
                            graph.base_name(root),
                            graph.base_name(image)
                        ),
                    }),
                }
            }
        }
        if !report.is_valid() {
            return report;
        }

        let mut strong_failures = 0usize;
        let mut first_strong = None;
        for &a in &edges {
            for g in &els {
                let ga = self.act_edge(g, a);
                let ename = graph.edge_name(a);
                if !graph.contains_edge(ga) && graph.contains_edge(a) {
                    report.violations.push(Violation {
                        axiom: "automorphism",
                        witness: format!("{}·{ename} is not an edge", gname(g)),
                    });
                    continue;
                }
                if graph.range(ga) != self.act_vertex(g, graph.range(a)) {
                    report.violations.push(Violation {
                        axiom: "automorphism (range)",
                        witness: format!("g={}, e={ename}", gname(g)),
                    });
                }
                if graph.source(ga) != self.act_vertex(g, graph.source(a)) {
                    report.violations.push(Violation {
                        axiom: "automorphism (source)",
                        witness: format!("g={}, e={ename}", gname(g)),
                    });
                }
                let phi = self.cocycle(g, a);
                if !group.contains(&phi) {
                    report.violations.push(Violation {
                        axiom: "cocycle value",
                        witness: format!("φ({}, {ename}) is not a group element", gname(g)),
                    });
                    continue;
                }
                let s = graph.source(a);
                if self.act_vertex(&phi, s) != self.act_vertex(g, s) {
                    report.violations.push(Violation {
                        axiom: "compatibility",
                        witness: format!("φ({}, {ename})·s({ename}) ≠ {}·s({ename})", gname(g), gname(g)),
                    });
                }
                if graph.base_vertices().any(|v| self.act_vertex(&phi, v) != self.act_vertex(g, v)) {
                    strong_failures += 1;
                    first_strong.get_or_insert_with(|| format!("({}, {ename})", gname(g)));
                }
                for h in &els {
                    let gh = group.mul(g, h);
                    let lhs = self.cocycle(&gh, a);
                    let rhs = group.mul(&self.cocycle(g, self.act_edge(h, a)), &self.cocycle(h, a));
                    if lhs != rhs {
                        report.violations.push(Violation {
                            axiom: "cocycle identity",
                            witness: format!(
                                "({}, {}, {ename}): φ(gh,a)={} but φ(g,h·a)φ(h,a)={}",
                                gname(g),
                                gname(h),
                                gname(&lhs),
                                gname(&rhs)
                            ),
                        });
                    }
                }
            }
        }
        if let Some(first) = first_strong {
            report.notes.push(format!(
                "strong compatibility φ(g,a)·v = g·v fails at {strong_failures} instance(s), first {first}; the weak form holds"
            ));
        }
        report
    }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn identity_acts_trivially() {
        for t in corpus::all() {
            let e = t.group().identity();
            for v in t.graph().base_vertices() {
                assert_eq!(t.act_vertex(&e, v), v);
            }
        }
    }

    #[test]
    fn swap_example() {
        let t = corpus::z2_swapped_components();
        let sigma = t.group().parse("s").unwrap();
        let x = Vertex::Base(t.graph().vertex_named("x").unwrap());
        let y = Vertex::Base(t.graph().vertex_named("y").unwrap());
        assert_eq!(t.act_vertex(&sigma, x), y);
        assert_eq!(t.orbit(x), vec![x, y]);
        assert_eq!(t.stabilizer(x), Stabilizer::Finite(vec![t.group().identity()]));
    }

    #[test]
    fn act_inverse_round_trip() {
        for t in corpus::all().into_iter().filter(|t| t.group().is_finite()) {
            for g in t.group().elements().unwrap() {
                let gi = t.group().inv(&g);
                for v in t.graph().base_vertices() {
                    assert_eq!(t.act_vertex(&g, t.act_vertex(&gi, v)), v);
                }
            }
        }
    }

    #[test]
    fn twisted_path_action() {
        let t = corpus::z2_two_loop_swap();
        let g = t.graph();
        let sigma = t.group().parse("s").unwrap();
        let x = Vertex::Base(0);
        let e0 = g.parse_edge("e0").unwrap();
        let e1 = g.parse_edge("e1").unwrap();
        let p = g.path(x, vec![e0, e0]).unwrap();
        assert_eq!(t.act_path(&sigma, &p).edges(), &[e1, e1]);
        let q = g.path(x, vec![e0, e1]).unwrap();
        assert_eq!(t.cocycle_path(&sigma, &q), sigma);
        assert_eq!(t.cocycle_path(&sigma, &Path::empty(x)), sigma);
    }

    #[test]
    fn broken_cocycle_is_reported() {
        let data = corpus::z2_two_loop_broken_data();
        let report = Triple::validate(&data, 4);
        assert!(report
            .violations
            .iter()
            .any(|v| v.axiom == "cocycle identity" && v.witness.starts_with("(s, s, e0)")));
    }

    #[test]
    fn broken_automorphism_is_reported() {
        let mut data = corpus::z2_two_loop_swap().data().clone();
        let graph = crate::graph::Graph::from_spec(&crate::graph::tests_support::spec(
            &["x", "y"],
            &[("e0", "x", "x"), ("e1", "y", "x")],
        ))
        .unwrap();
        data.graph = graph;
        let report = Triple::validate(&data, 4);
        assert!(report.violations.iter().any(|v| v.axiom.starts_with("automorphism")));
    }

    #[test]
    fn integer_stabilizer_from_cycle_order() {
        let t = corpus::z_three_cycle();
        let v = Vertex::Base(0);
        assert_eq!(t.stabilizer(v), Stabilizer::Multiples(BigInt::from(3)));
        assert_eq!(t.orbit(v).len(), 3);
    }

    #[test]
    fn odometer_cocycle_identity() {
        let t = corpus::z_odometer();
        let g = t.graph();
        for a in 0..g.plain_edges().len() as u32 {
            for m in -6i64..=6 {
                for n in -6i64..=6 {
                    let (gm, gn) = (GroupElement::int(m), GroupElement::int(n));
                    let lhs = t.cocycle(&GroupElement::int(m + n), Edge::Plain(a));
                    let rhs = t.group().mul(&t.cocycle(&gm, t.act_edge(&gn, Edge::Plain(a))), &t.cocycle(&gn, Edge::Plain(a)));
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
