//! `G`-circuits, entries, pointwise fixing and slackness, and the
//! topological freeness test built from them.

use std::collections::{HashMap, HashSet};

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{Edge, Path, TailKind, Vertex};
use crate::group::GroupElement;
use crate::lasso::Lasso;
use crate::semigroup::SElement;
use crate::triple::Triple;

use super::{carrier, nontrivial_elements, Budget, EntryWalk, Evidence, NotSlack, SlackFinding, StateGraph, Verdict, Window};

/// A pair `(g, γ)` with `γ` nonempty and `r(γ) = g·s(γ)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GCircuit {
    pub g: GroupElement,
    pub gamma: Path,
}

impl GCircuit {
    pub fn new(t: &Triple, g: GroupElement, gamma: Path) -> Result<GCircuit> {
        if gamma.is_empty() || gamma.range() != t.act_vertex(&g, gamma.source()) {
            return Err(Error::Typing(format!(
                "({}, {}) is not a G-circuit",
                t.group().name(&g),
                t.graph().path_name(&gamma)
            )));
        }
        Ok(GCircuit { g, gamma })
    }

    /// `(γ, g⁻¹, ∅_{r(γ)})`, whose unique fixed point is `ω(g, γ)`.
    pub fn element(&self, t: &Triple) -> SElement {
        let x = self.gamma.range();
        SElement::new(t, self.gamma.clone(), t.group().inv(&self.g), Path::empty(x)).expect("circuit is typed")
    }

    /// First `n` blocks of `ω(g, γ)`.
    pub fn iterate(&self, t: &Triple, n: usize) -> Path {
        let mut out = Path::empty(self.gamma.range());
        for (block, _) in self.unfold(t).take(n) {
            out = out.concat(&block).expect("blocks compose");
        }
        out
    }

    /// Blocks `γ_1 = γ`, `γ_{n+1} = k_n·γ_n` with `k_1 = g⁻¹` and
    /// `k_{n+1} = φ(k_n, γ_n)`, each with the twist `k_n` applied to it.
    fn unfold<'a>(&'a self, t: &'a Triple) -> impl Iterator<Item = (Path, GroupElement)> + 'a {
        let mut state = Some((self.gamma.clone(), t.group().inv(&self.g)));
        std::iter::from_fn(move || {
            let (gamma, k) = state.take()?;
            let (next, twist) = t.act_path_full(&k, &gamma);
            state = Some((next, twist));
            Some((gamma, k))
        })
    }

    /// `ω(g, γ)` as a lasso; fails if no block state repeats within the budget.
    pub fn lasso(&self, t: &Triple, state_budget: usize) -> Result<Lasso> {
        let mut seen: HashMap<(Vec<Edge>, GroupElement), usize> = HashMap::new();
        let mut blocks: Vec<Path> = Vec::new();
        for (gamma, k) in self.unfold(t).take(state_budget + 1) {
            let key = (gamma.edges().to_vec(), k);
            if let Some(&i) = seen.get(&key) {
                let mut head = Path::empty(self.gamma.range());
                for b in &blocks[..i] {
                    head = head.concat(b).expect("blocks compose");
                }
                let cycle: Vec<Edge> = blocks[i..].iter().flat_map(|b| b.edges().iter().copied()).collect();
                return Lasso::new(t.graph(), head, cycle);
            }
            seen.insert(key, blocks.len());
            blocks.push(gamma);
        }
        Err(Error::Budget(state_budget))
    }

    /// Some position `k` of `ω(g, γ)` and an edge `τ ≠ ω_k` with
    /// `r(τ) = r(ω_k)`.
    pub fn entry(&self, t: &Triple, state_budget: usize) -> Result<Option<(usize, Edge)>> {
        let omega = self.lasso(t, state_budget)?;
        Ok(entry_of(t, &omega))
    }

    pub fn has_entry(&self, t: &Triple, state_budget: usize) -> Result<bool> {
        Ok(self.entry(t, state_budget)?.is_some())
    }
}

/// Scans one head and one period of the lasso for an entry.
pub(crate) fn entry_of(t: &Triple, omega: &Lasso) -> Option<(usize, Edge)> {
    let g = t.graph();
    let n = omega.size();
    (0..n).find_map(|k| {
        let e = omega.edge_at(k);
        g.incoming(g.range(e)).finite.into_iter().find(|&tau| tau != e).map(|tau| (k, tau))
    })
}

enum Walk {
    Entry(EntryWalk),
    NoEntry(GCircuit),
}

/// Follows the unique incoming edges from `x` until a vertex receiving two
/// edges, or until the walk is seen to be eventually periodic.
fn unique_walk(t: &Triple, x: Vertex) -> Result<Walk> {
    let g = t.graph();
    let mut cur = x;
    let mut edges: Vec<Edge> = Vec::new();
    let mut visited: HashSet<Vertex> = HashSet::from([x]);
    let mut first_return: Option<(usize, GroupElement)> = None;
    loop {
        let inc = g.incoming(cur).finite;
        if inc.len() != 1 {
            return Ok(Walk::Entry(EntryWalk::Branch { x, walk: g.path(x, edges)? }));
        }
        let e = inc[0];
        edges.push(e);
        cur = g.source(e);
        if first_return.is_none() {
            if let Some(k) = carrier(t, x, cur) {
                first_return = Some((edges.len(), t.group().inv(&k)));
            }
        }
        let up_source_tail = matches!(cur, Vertex::Tail { root, .. } if g.tails().get(&root) == Some(&TailKind::Source));
        if up_source_tail || !visited.insert(cur) {
            break;
        }
    }
    Ok(match first_return {
        Some((len, gi)) => Walk::NoEntry(GCircuit::new(t, gi, g.path(x, edges[..len].to_vec())?)?),
        None => Walk::Entry(EntryWalk::NoReturn { x }),
    })
}

pub(crate) enum Pointwise {
    Moves(Vec<Edge>, Edge),
    Fixes(StateGraph),
}

pub(crate) fn pointwise(t: &Triple, win: &Window, g: &GroupElement, x: Vertex, budget: &Budget) -> Result<Pointwise> {
    let group = t.group();
    if t.act_vertex(g, x) != x {
        // the whole cylinder moves; any edge into x witnesses it
        return Ok(Pointwise::Moves(Vec::new(), t.graph().incoming(x).finite[0]));
    }
    let sg = StateGraph::explore(t, win, x, g.clone(), true, |h| !group.is_identity(h), budget.states)?;
    for i in 0..sg.len() {
        if let Some(&a) = sg.moved[i].first() {
            let walk = sg.path_within(0, i, |_| true).expect("explored nodes are reachable");
            return Ok(Pointwise::Moves(walk, a));
        }
    }
    Ok(Pointwise::Fixes(sg))
}

/// `g·η = η` for every infinite path `η` with range `x`; `None` when the
/// state budget runs out.
pub fn fixes_cylinder_pointwise(t: &Triple, g: &GroupElement, x: Vertex, budget: &Budget) -> Result<Option<bool>> {
    let win = Window::new(t)?;
    match pointwise(t, &win, g, x, budget) {
        Ok(Pointwise::Moves(..)) => Ok(Some(false)),
        Ok(Pointwise::Fixes(_)) => Ok(Some(true)),
        Err(Error::Budget(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

fn slack_cycle(t: &Triple, sg: &StateGraph) -> Option<(Vec<Edge>, Vec<Edge>)> {
    let live = |i: usize| !t.group().is_identity(sg.twist(i));
    let cycle = sg.dg.find_cycle(live)?;
    let c0 = cycle[0].0;
    let prefix = sg.path_within(0, c0, live).expect("cycle is reachable");
    Some((prefix, cycle.into_iter().map(|(_, e)| e).collect()))
}

/// Every infinite path with range `x` has a prefix strongly fixed by `g`.
pub fn is_slack(t: &Triple, g: &GroupElement, x: Vertex, budget: &Budget) -> Result<Option<bool>> {
    if t.group().is_identity(g) {
        return Ok(Some(true));
    }
    let win = Window::new(t)?;
    match pointwise(t, &win, g, x, budget) {
        Ok(Pointwise::Moves(..)) => Ok(Some(false)),
        Ok(Pointwise::Fixes(sg)) => Ok(Some(slack_cycle(t, &sg).is_none())),
        Err(Error::Budget(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

enum SlackOutcome {
    Found(SlackFinding),
    NotSlack(NotSlack),
    Unknown(String),
}

fn slack_at(t: &Triple, win: &Window, g: &GroupElement, x: Vertex, budget: &Budget) -> Result<SlackOutcome> {
    Ok(match pointwise(t, win, g, x, budget) {
        Err(Error::Budget(n)) => SlackOutcome::Unknown(format!(
            "more than {n} twist states at ({}, {})",
            t.group().name(g),
            t.graph().vertex_name(x)
        )),
        Err(e) => return Err(e),
        Ok(Pointwise::Moves(walk, edge)) => SlackOutcome::Found(SlackFinding::Moves { g: g.clone(), x, walk, edge }),
        Ok(Pointwise::Fixes(sg)) => match slack_cycle(t, &sg) {
            Some((prefix, cycle)) => SlackOutcome::NotSlack(NotSlack { g: g.clone(), x, prefix, cycle }),
            None => SlackOutcome::Found(SlackFinding::Slack { g: g.clone(), x, states: sg.len() }),
        },
    })
}

/// Every `G`-circuit has an entry, and every `g` fixing a cylinder `Z(x)`
/// pointwise is slack at `x`.
pub fn topologically_free(t: &Triple, budget: &Budget) -> Result<Verdict> {
    let win = Window::new(t)?;
    let mut entries = Vec::new();
    for &x in win.vertices() {
        match unique_walk(t, x)? {
            Walk::Entry(w) => entries.push(w),
            Walk::NoEntry(circuit) => {
                let omega = circuit.lasso(t, budget.states)?;
                return Ok(Verdict::Refuted(Evidence::NoEntry { circuit, omega }));
            }
        }
    }

    let (els, complete) = nontrivial_elements(t, budget);
    let pairs: Vec<(GroupElement, Vertex)> = els
        .iter()
        .flat_map(|g| win.vertices().iter().filter(|&&x| t.act_vertex(g, x) == x).map(move |&x| (g.clone(), x)))
        .collect();
    let results: Vec<Result<SlackOutcome>> = pairs.par_iter().map(|(g, x)| slack_at(t, &win, g, *x, budget)).collect();
    let mut slack = Vec::new();
    let mut unknown = None;
    for r in results {
        match r? {
            SlackOutcome::NotSlack(n) => return Ok(Verdict::Refuted(Evidence::NotSlack(n))),
            SlackOutcome::Unknown(why) => {
                unknown.get_or_insert(why);
            }
            SlackOutcome::Found(f) => slack.push(f),
        }
    }
    if let Some(why) = unknown {
        return Ok(Verdict::Unknown(why));
    }
    if !complete {
        return Ok(Verdict::Unknown(format!(
            "every circuit has an entry and no slackness failure for |n| ≤ {}; the integers cannot be exhausted",
            budget.words
        )));
    }
    Ok(Verdict::Proven(Evidence::TopFree { entries, slack }))
}
