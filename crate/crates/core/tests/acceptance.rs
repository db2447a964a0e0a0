//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Criteria listed in `KNOWN_UNATTAINABLE` fail for a documented reason
//! and do not fail the run; any other failure exits nonzero.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use ssgraph::checkers::{
    check_property, contraction_witness, verify_certificate, Budget, Evidence, Outcome, Property, Verdict,
};
use ssgraph::corpus;
use ssgraph::desing::{desingularize, truncate, verify_corner};
use ssgraph::document::TripleDocument;
use ssgraph::graph::{Edge, Path, TailKind, Vertex};
use ssgraph::group::GroupElement;
use ssgraph::groupoid::{is_ultrafilter, verify_chain_witness, verify_relations, verify_relations_with, FilterBase, UltraResult};
use ssgraph::lasso::all_lassos;
use ssgraph::semigroup::{multiply, SElement};
use ssgraph::triple::Triple;

const SEED: u64 = 0x5e1f_51b1;
const ORACLE_PAIRS: usize = 10_000;
const ORACLE_SECONDS: u64 = 60;
const AXIOM_INSTANCES: usize = 10_000;
/// Path length bound for random elements.
const ELEMENT_LEN: usize = 3;
/// Word radius for random group elements of the integers backend.
const ELEMENT_WORDS: usize = 2;
const RELATION_DEPTH: usize = 6;
const CORNER_DEPTH: usize = 5;
const ALPHA_ROWS: u64 = 5;
const MAX_TRUNCATION: u64 = 8;
const ULTRA_DEPTH: usize = 8;
const CHAIN_LEN: usize = 4;
const RANDOM_GRAPHS: usize = 100;
const RANDOM_VERTICES: usize = 6;
const RANDOM_EDGES: usize = 12;
/// Relation sampling grows like `depth^depth`; doubling stops here.
const DOUBLED_DEPTH: usize = 8;
const SUITE_SECONDS: u64 = 300;

/// Criterion 7 attaches the two identity-action expectations to the
/// opposite cocycles; the exchanged version is checked on its own line.
const KNOWN_UNATTAINABLE: &[u8] = &[7];

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn valid_corpus() -> Vec<(&'static str, Triple)> {
    corpus::DOCUMENTS
        .iter()
        .filter(|(n, _)| *n != "z2_incompatible_receiver")
        .map(|(n, _)| {
            let t = TripleDocument::parse(corpus::text(n).unwrap()).unwrap().to_triple(8).unwrap();
            (*n, t)
        })
        .collect()
}

fn singular_corpus() -> Vec<(&'static str, Triple)> {
    valid_corpus().into_iter().filter(|(_, t)| !t.graph().is_row_finite() || t.graph().has_sources()).collect()
}

fn criterion_1() -> Check {
    let started = Instant::now();
    let corpus = common::arithmetic_corpus();
    let per = ORACLE_PAIRS.div_ceil(corpus.len());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let (mut pairs, mut nonzero) = (0, 0);
    for (name, t) in &corpus {
        let pool = common::element_pool(t, ELEMENT_LEN, ELEMENT_WORDS);
        let lassos = common::sample_lassos(t);
        for _ in 0..per {
            let (s, u) = common::random_pair(&mut rng, &pool);
            let prod = multiply(t, s, u);
            if let Some(bad) = common::product_disagreement(t, s, u, &prod, &lassos) {
                return Err(format!("{name}: {bad}"));
            }
            pairs += 1;
            nonzero += usize::from(!prod.is_zero());
        }
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(ORACLE_SECONDS), || format!("took {elapsed:?}"))?;
    Ok(format!("{pairs} pairs ({nonzero} nonzero products) over {} triples, 0 failures, {elapsed:.1?}", corpus.len()))
}

fn criterion_2() -> Check {
    let corpus = common::arithmetic_corpus();
    let per = AXIOM_INSTANCES.div_ceil(corpus.len());
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 2);
    let mut count = 0;
    for (name, t) in &corpus {
        let pool = common::element_pool(t, ELEMENT_LEN, ELEMENT_WORDS);
        for _ in 0..per {
            let (s, u) = common::random_pair(&mut rng, &pool);
            let (_, v) = common::random_pair(&mut rng, &pool);
            let left = multiply(t, &multiply(t, s, u), v);
            let right = multiply(t, s, &multiply(t, u, v));
            ensure(left == right, || format!("{name}: ({} {} {}) not associative", s.name(t), u.name(t), v.name(t)))?;
            let sss = multiply(t, &multiply(t, s, &s.star(t)), s);
            ensure(sss == *s, || format!("{name}: s s* s ≠ s for {}", s.name(t)))?;
            count += 1;
        }
    }
    Ok(format!("{count} associativity and {count} s s* s = s instances, 0 failures"))
}

fn mutated_cocycle_failures(t: &Triple) -> usize {
    let els = t.test_elements(4);
    let k = els.iter().find(|k| !t.group().is_identity(k)).expect("nontrivial group").clone();
    let a = Edge::Plain(0);
    let shift = k.clone();
    let group = t.group().clone();
    let bad = move |h: &GroupElement, e: Edge| {
        let phi = t.cocycle(h, e);
        if *h == k && e == a {
            group.mul(&phi, &shift)
        } else {
            phi
        }
    };
    verify_relations_with(t, RELATION_DEPTH, &els, common::STATES, &bad)
        .expect("sampling succeeds")
        .failures()
        .filter(|r| r.relation.starts_with("(d)"))
        .count()
}

fn criterion_3() -> Check {
    let mut instances = 0;
    for (name, text) in corpus::DOCUMENTS {
        let t = TripleDocument::parse(text).unwrap().to_triple(8).unwrap();
        let r = verify_relations(&t, RELATION_DEPTH, 8, common::STATES).map_err(|e| format!("{name}: {e}"))?;
        if let Some(f) = r.failures().next() {
            return Err(format!("{name}: {} [{}] {:?}", f.relation, f.instance, f.witness));
        }
        instances += r.records.len();
    }
    // Under an identity action every unitary acts trivially on lassos, so
    // the mutations go to triples whose action moves edges.
    let mut caught = Vec::new();
    for (name, t) in [
        ("z2_two_loop_swap", corpus::z2_two_loop_swap()),
        ("z2_swapped_components", corpus::z2_swapped_components()),
        ("z_odometer", corpus::z_odometer()),
    ] {
        let n = mutated_cocycle_failures(&t);
        ensure(n > 0, || format!("corrupted cocycle on {name} went unnoticed"))?;
        caught.push(format!("{name}: {n}"));
    }
    Ok(format!(
        "{instances} instances on {} triples at depth {RELATION_DEPTH}, 0 failures; corrupted cocycles give (d) failures ({})",
        corpus::DOCUMENTS.len(),
        caught.join(", ")
    ))
}

fn literal_alpha(root: &str, j: u64) -> String {
    let mut parts: Vec<String> = (1..j).map(|i| format!("{root}~e{i}")).collect();
    parts.push(format!("{root}~f{j}"));
    parts.join(".")
}

fn criterion_4() -> Check {
    let mut rows = 0;
    let mut corner_instances = 0;
    let corpus = singular_corpus();
    for (name, t) in &corpus {
        let d = desingularize(t, 8).map_err(|e| format!("{name}: {e}"))?;
        let f = d.triple.graph();
        ensure(Triple::validate(d.triple.data(), 8).is_valid(), || format!("{name}: output does not validate"))?;
        ensure(f.is_row_finite() && !f.has_sources(), || format!("{name}: output is singular"))?;
        for n in 1..=MAX_TRUNCATION {
            let cut = truncate(&d, n, 8).map_err(|e| format!("{name} N={n}: {e}"))?;
            let g = cut.triple.graph();
            ensure(g.is_row_finite(), || format!("{name} N={n}: truncation not row-finite"))?;
            for v in g.base_vertices() {
                let is_cut_end = cut.boundary.contains(&g.vertex_name(v));
                ensure(g.incoming(v).is_empty() == is_cut_end, || {
                    format!("{name} N={n}: {} is a source off the cut", g.vertex_name(v))
                })?;
            }
        }
        for (root, j, _, path) in d.corner.table(f, ALPHA_ROWS) {
            let want = literal_alpha(f.base_name(root), j);
            ensure(f.path_name(&path) == want, || format!("{name}: α_{j} = {} ≠ {want}", f.path_name(&path)))?;
            rows += 1;
        }
        let r = verify_corner(&d, CORNER_DEPTH, 8, common::STATES).map_err(|e| format!("{name}: {e}"))?;
        if let Some(fail) = r.failures().next() {
            return Err(format!("{name}: corner {} [{}]", fail.relation, fail.instance));
        }
        corner_instances += r.records.len();
        let again = desingularize(&d.triple, 8).map_err(|e| format!("{name}: {e}"))?;
        ensure(
            again.descriptors.is_empty()
                && TripleDocument::from_triple(&again.triple).to_json() == TripleDocument::from_triple(&d.triple).to_json(),
            || format!("{name}: not idempotent"),
        )?;
    }
    Ok(format!(
        "{} singular triples: valid, regular, truncations N ≤ {MAX_TRUNCATION} sourced only at the cut, {rows} α rows literal, {corner_instances} corner instances at depth {CORNER_DEPTH}, idempotent",
        corpus.len()
    ))
}

fn regular_triples() -> Vec<(String, Triple)> {
    let mut out: Vec<(String, Triple)> = corpus::regular().into_iter().map(|(n, t)| (n.to_string(), t)).collect();
    for (n, t) in singular_corpus() {
        out.push((format!("F({n})"), desingularize(&t, 8).unwrap().triple));
    }
    out
}

fn chains_below(top: &Path, g: &ssgraph::graph::Graph) -> Vec<Vec<Path>> {
    let prefixes: Vec<Path> = (0..top.len()).map(|k| g.prefix(top, k)).collect();
    let mut out = Vec::new();
    for mask in 0u32..(1 << prefixes.len()) {
        if mask.count_ones() as usize + 1 > CHAIN_LEN {
            continue;
        }
        let mut chain: Vec<Path> = (0..prefixes.len()).filter(|i| mask & (1 << i) != 0).map(|i| prefixes[i].clone()).collect();
        chain.push(top.clone());
        out.push(chain);
    }
    out
}

fn criterion_5() -> Check {
    let (mut filters, mut chains) = (0, 0);
    let triples = regular_triples();
    for (name, t) in &triples {
        let g = t.graph();
        for w in all_lassos(g, 3, 3, Some(3)).map_err(|e| e.to_string())? {
            match is_ultrafilter(t, &FilterBase::Lasso(w.clone()), ULTRA_DEPTH) {
                UltraResult::Passed { .. } => filters += 1,
                other => return Err(format!("{name}: filter of {} gave {other:?}", w.name(g))),
            }
        }
        let mut starts: Vec<Vertex> = g.base_vertices().collect();
        starts.extend(g.tails().keys().map(|&root| Vertex::Tail { root, index: 1 }));
        for v in starts {
            for len in 0..CHAIN_LEN {
                for top in g.extend_paths(v, len, Some(3)).map_err(|e| e.to_string())? {
                    for chain in chains_below(&top, g) {
                        match is_ultrafilter(t, &FilterBase::Chain(chain.clone()), ULTRA_DEPTH) {
                            UltraResult::Witness(w) if verify_chain_witness(t, &chain, &w) => chains += 1,
                            other => return Err(format!("{name}: chain ending {} gave {other:?}", g.path_name(&top))),
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{filters} lasso filters are ultrafilters at depth {ULTRA_DEPTH}, {chains} chains of length ≤ {CHAIN_LEN} extend, over {} triples",
        triples.len()
    ))
}

fn criterion_6() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED ^ 6);
    let budget = Budget::default();
    let (mut unknown, mut cofinal, mut cond_l) = (0, 0, 0);
    for i in 0..RANDOM_GRAPHS {
        let (t, edges) = common::random_trivial_triple(&mut rng, RANDOM_VERTICES, RANDOM_EDGES);
        let n = t.graph().base_count();
        let m = check_property(&t, Property::Minimal, &budget).map_err(|e| format!("graph {i}: {e}"))?.verdict;
        let tf = check_property(&t, Property::TopFree, &budget).map_err(|e| format!("graph {i}: {e}"))?.verdict;
        let want_m = common::cofinal(n, &edges);
        let want_tf = common::every_cycle_has_entry(n, &edges);
        for (what, v, want) in [("minimal", &m, want_m), ("topfree", &tf, want_tf)] {
            match v {
                Verdict::Unknown(_) => unknown += 1,
                v => ensure(v.is_proven() == want, || format!("graph {i} {edges:?}: {what} {} but oracle says {want}", v.label()))?,
            }
        }
        cofinal += usize::from(want_m);
        cond_l += usize::from(want_tf);
    }
    ensure(unknown == 0, || format!("{unknown} unknown verdicts"))?;
    Ok(format!(
        "{RANDOM_GRAPHS} graphs agree ({cofinal} cofinal, {cond_l} with every cycle entered), 0 unknown"
    ))
}

fn checked(t: &Triple, p: Property, budget: &Budget) -> Result<Outcome, String> {
    let out = check_property(t, p, budget).map_err(|e| e.to_string())?;
    verify_certificate(&out.checked, &out.verdict, budget).map_err(|e| format!("{p} certificate rejected: {e}"))?;
    Ok(out)
}

fn minimal_sets_at(t: &Triple, v: &Verdict, g: &str) -> Option<Vec<Vec<String>>> {
    let Some(Evidence::MinimalSets(sets)) = v.evidence() else { return None };
    let out: Vec<Vec<String>> = sets
        .iter()
        .filter(|s| t.group().name(&s.g) == g)
        .map(|s| {
            let mut names: Vec<String> = s.paths.iter().map(|p| t.graph().path_name(p)).collect();
            names.sort();
            names
        })
        .collect();
    (!out.is_empty()).then_some(out)
}

/// Identity action with cocycle `φ`: topological freeness refuted by a
/// slackness failure, and Hausdorff with `{e0, e1}` at every `(s, x)`.
fn identity_action_expectations(slack_fails: &Triple, fixed_pair: &Triple, budget: &Budget) -> Result<(), String> {
    let tf = checked(slack_fails, Property::TopFree, budget)?;
    ensure(matches!(tf.verdict, Verdict::Refuted(Evidence::NotSlack(_))), || {
        format!("topfree is {} ({})", tf.verdict.label(), ssgraph::report::summary(slack_fails, &tf.verdict))
    })?;
    let h = checked(fixed_pair, Property::Hausdorff, budget)?;
    ensure(h.verdict.is_proven(), || format!("hausdorff is {}", h.verdict.label()))?;
    let sets = minimal_sets_at(fixed_pair, &h.verdict, "s");
    ensure(sets.as_ref().is_some_and(|s| s.iter().all(|m| m == &["e0", "e1"])), || {
        format!("minimal strongly fixed sets at s are {sets:?}, expected [e0, e1]")
    })
}

fn criterion_7() -> Check {
    let b = Budget::default();
    let two = corpus::two_loops();
    for p in [Property::Simple, Property::PureInf] {
        let v = checked(&two, p, &b)?.verdict;
        ensure(v.is_proven(), || format!("two_loops {p} is {}", v.label()))?;
    }
    let one = corpus::one_loop();
    for p in [Property::Simple, Property::PureInf] {
        let v = checked(&one, p, &b)?.verdict;
        ensure(v.is_refuted(), || format!("one_loop {p} is {}", v.label()))?;
    }
    let trivial = corpus::z2_identity_trivial();
    let twist = corpus::z2_identity_twist();
    // As stated: φ ≡ 1 fails slackness, φ(s,-) = s carries {e0, e1}.
    let stated = identity_action_expectations(&trivial, &twist, &b);
    // With the cocycles exchanged.
    let exchanged = identity_action_expectations(&twist, &trivial, &b);
    println!(
        "       7' exchanged cocycles (φ(s,-)=s not slack, φ≡1 gives {{e0,e1}}): {}",
        match &exchanged {
            Ok(()) => "PASS".to_string(),
            Err(e) => format!("FAIL {e}"),
        }
    );
    match stated {
        Ok(()) => Ok("two_loops simple and purely infinite, one_loop refuted, identity-action verdicts as stated".into()),
        Err(e) => Err(format!(
            "two_loops and one_loop as expected; identity action as stated: {e}. With φ ≡ 1 the path e0 is strongly fixed, so s is slack; with φ(s,-) = s nothing is strongly fixed"
        )),
    }
}

fn criterion_8() -> Check {
    let b = Budget::default();
    let mut witnesses = 0;
    let mut triples = 0;
    for (name, t) in valid_corpus() {
        let out = check_property(&t, Property::Contracting, &b).map_err(|e| format!("{name}: {e}"))?;
        if !out.verdict.is_proven() {
            continue;
        }
        triples += 1;
        let f = &out.checked;
        let g = f.graph();
        let mut starts: Vec<Vertex> = g.base_vertices().collect();
        starts.extend(g.tails().iter().filter(|(_, k)| matches!(k, TailKind::Receiver { .. } | TailKind::Source)).map(|(&root, _)| Vertex::Tail { root, index: 1 }));
        for v in starts {
            for len in 0..=2 {
                for mu in g.extend_paths(v, len, None).map_err(|e| e.to_string())? {
                    let e = SElement::idempotent(f, mu.clone());
                    let w = contraction_witness(f, &e, &b).map_err(|err| format!("{name} at {}: {err}", g.path_name(&mu)))?;
                    if let Some((rule, _)) = w.check(f, &e).into_iter().find(|(_, ok)| !ok) {
                        return Err(format!("{name} at {}: {rule} fails", g.path_name(&mu)));
                    }
                    witnesses += 1;
                }
            }
        }
    }
    Ok(format!("{witnesses} witnesses on {triples} contracting triples satisfy every identity"))
}

fn criterion_9() -> Check {
    let b = Budget::default();
    let big = Budget { depth: DOUBLED_DEPTH, ..b.doubled() };
    let mut compared = 0;
    let mut tightened = 0;
    for (name, t) in valid_corpus() {
        for p in Property::ALL {
            let v1 = check_property(&t, p, &b).map_err(|e| format!("{name} {p}: {e}"))?.verdict;
            let v2 = check_property(&t, p, &big).map_err(|e| format!("{name} {p} doubled: {e}"))?.verdict;
            let flipped = (v1.is_proven() && v2.is_refuted()) || (v1.is_refuted() && v2.is_proven());
            ensure(!flipped, || format!("{name} {p}: {} became {}", v1.label(), v2.label()))?;
            tightened += usize::from(v1.is_unknown() && !v2.is_unknown());
            compared += 1;
        }
    }
    Ok(format!("{compared} verdicts stable under doubled budgets (relation depth {DOUBLED_DEPTH}), {tightened} unknowns resolved"))
}

fn main() -> ExitCode {
    let started = Instant::now();
    let criteria: [(u8, &str, fn() -> Check); 9] = [
        (1, "semigroup oracle equivalence", criterion_1),
        (2, "inverse semigroup axioms", criterion_2),
        (3, "relation verification", criterion_3),
        (4, "desingularization", criterion_4),
        (5, "ultrafilters are tight", criterion_5),
        (6, "trivial-group cross-validation", criterion_6),
        (7, "known verdicts", criterion_7),
        (8, "contraction witnesses", criterion_8),
        (9, "budget monotonicity", criterion_9),
    ];
    let mut unexpected = Vec::new();
    for (id, title, run) in criteria {
        let t0 = Instant::now();
        let result = run();
        let secs = t0.elapsed().as_secs_f64();
        match result {
            Ok(detail) => println!("PASS {id} {title} [{secs:.1}s]: {detail}"),
            Err(detail) => {
                let known = KNOWN_UNATTAINABLE.contains(&id);
                println!("FAIL {id} {title} [{secs:.1}s]{}: {detail}", if known { " (known)" } else { "" });
                if !known {
                    unexpected.push(id);
                }
            }
        }
    }
    let total = started.elapsed();
    let in_time = total < Duration::from_secs(SUITE_SECONDS);
    println!("{} suite runtime {total:.1?} (limit {SUITE_SECONDS}s)", if in_time { "PASS" } else { "FAIL" });
    if unexpected.is_empty() && in_time {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
