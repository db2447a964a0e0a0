//! Property dispatch: desingularize if needed, run the checkers, and
//! combine them into the simplicity and pure infiniteness verdicts.

use std::fmt;
use std::str::FromStr;

use crate::desing::desingularize;
use crate::error::Result;
use crate::groupoid::{verify_relations, verify_tightness, RelationReport};
use crate::triple::Triple;

use super::{is_hausdorff, locally_contracting, topologically_free, weakly_g_transitive, Budget, Evidence, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Property {
    Hausdorff,
    Minimal,
    TopFree,
    Contracting,
    Simple,
    PureInf,
    Tightness,
    Relations,
}

impl Property {
    pub const ALL: [Property; 8] = [
        Property::Hausdorff,
        Property::Minimal,
        Property::TopFree,
        Property::Contracting,
        Property::Simple,
        Property::PureInf,
        Property::Tightness,
        Property::Relations,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Property::Hausdorff => "hausdorff",
            Property::Minimal => "minimal",
            Property::TopFree => "topfree",
            Property::Contracting => "contracting",
            Property::Simple => "simple",
            Property::PureInf => "pureinf",
            Property::Tightness => "tightness",
            Property::Relations => "relations",
        }
    }
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Property::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| format!("unknown property `{s}`"))
    }
}

/// A verdict together with the triple it was computed on (the
/// desingularization when the input had sources or infinite receivers).
#[derive(Clone, Debug)]
pub struct Outcome {
    pub property: Property,
    pub verdict: Verdict,
    pub notes: Vec<String>,
    pub checked: Triple,
}

fn regularize(t: &Triple, budget: &Budget, notes: &mut Vec<String>) -> Result<Triple> {
    let g = t.graph();
    if g.is_row_finite() && !g.has_sources() {
        return Ok(t.clone());
    }
    let d = desingularize(t, budget.words)?;
    notes.push(format!(
        "checked on the desingularization ({} tail{})",
        d.descriptors.iter().map(|td| td.copies.len()).sum::<usize>(),
        if d.descriptors.iter().map(|td| td.copies.len()).sum::<usize>() == 1 { "" } else { "s" }
    ));
    Ok(d.triple)
}

fn bounded(report: RelationReport, what: &str) -> Verdict {
    match report.failures().next() {
        Some(r) => Verdict::Refuted(Evidence::Note(format!(
            "{} [{}]{}",
            r.relation,
            r.instance,
            r.witness.as_ref().map(|w| format!(": {w}")).unwrap_or_default()
        ))),
        None => Verdict::Proven(Evidence::Note(format!(
            "{} {what} instances hold on {} sample points",
            report.records.len(),
            report.lassos_checked
        ))),
    }
}

/// Hausdorff and amenable: simple iff minimal and topologically free.
pub fn check_simplicity(f: &Triple, budget: &Budget) -> Result<Verdict> {
    if !f.group().amenable() {
        return Ok(Verdict::Unknown("the group is not known to be amenable".into()));
    }
    let h = is_hausdorff(f, budget)?;
    if !h.is_proven() {
        return Ok(Verdict::Unknown(format!("Hausdorffness is {}; the criterion does not apply", h.label())));
    }
    let m = weakly_g_transitive(f, budget)?;
    let tf = topologically_free(f, budget)?;
    let decided = if m.is_refuted() || tf.is_refuted() {
        Some(false)
    } else if m.is_proven() && tf.is_proven() {
        Some(true)
    } else {
        None
    };
    let parts = Evidence::Parts(vec![
        ("amenable".into(), Verdict::Proven(Evidence::Note(if f.group().is_finite() { "finite group" } else { "the integers" }.into()))),
        ("hausdorff".into(), h),
        ("minimal".into(), m.clone()),
        ("topfree".into(), tf.clone()),
    ]);
    Ok(match decided {
        Some(true) => Verdict::Proven(parts),
        Some(false) => Verdict::Refuted(parts),
        None => Verdict::Unknown(format!("minimal is {}, topfree is {}", m.label(), tf.label())),
    })
}

/// Simple and locally contracting.
pub fn check_pure_infiniteness(f: &Triple, budget: &Budget) -> Result<Verdict> {
    let s = check_simplicity(f, budget)?;
    let lc = locally_contracting(f, budget)?;
    let parts = |s: Verdict, lc: Verdict| Evidence::Parts(vec![("simple".into(), s), ("contracting".into(), lc)]);
    Ok(if s.is_refuted() || lc.is_refuted() {
        Verdict::Refuted(parts(s, lc))
    } else if s.is_proven() && lc.is_proven() {
        Verdict::Proven(parts(s, lc))
    } else {
        Verdict::Unknown(format!("simple is {}, contracting is {}", s.label(), lc.label()))
    })
}

pub fn check_property(t: &Triple, property: Property, budget: &Budget) -> Result<Outcome> {
    let mut notes = Vec::new();
    if !t.group().is_finite() {
        notes.push(format!(
            "integers backend: statements over all of G are tested on |n| ≤ {}",
            budget.words
        ));
    }
    if property == Property::Relations {
        let verdict = bounded(verify_relations(t, budget.depth, budget.words, budget.states)?, "relation");
        return Ok(Outcome { property, verdict, notes, checked: t.clone() });
    }
    let f = regularize(t, budget, &mut notes)?;
    let verdict = match property {
        Property::Hausdorff => is_hausdorff(&f, budget)?,
        Property::Minimal => weakly_g_transitive(&f, budget)?,
        Property::TopFree => topologically_free(&f, budget)?,
        Property::Contracting => locally_contracting(&f, budget)?,
        Property::Simple => check_simplicity(&f, budget)?,
        Property::PureInf => {
            let sinks: Vec<String> = t
                .graph()
                .base_vertices()
                .filter(|&v| t.graph().is_sink(v))
                .map(|v| t.graph().vertex_name(v))
                .collect();
            if !sinks.is_empty() {
                notes.push(format!(
                    "sinks present ({}); the pure infiniteness criterion is stated for graphs without sinks",
                    sinks.join(", ")
                ));
            }
            let v = check_pure_infiniteness(&f, budget)?;
            if let Verdict::Refuted(Evidence::Parts(parts)) = &v {
                if parts[0].1.is_proven() {
                    notes.push("simple but not locally contracting".into());
                }
            }
            v
        }
        Property::Tightness => bounded(verify_tightness(&f, budget.depth.min(4))?, "cover"),
        Property::Relations => unreachable!(),
    };
    Ok(Outcome { property, verdict, notes, checked: f })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus;

    #[test]
    fn loops_simple_and_purely_infinite() {
        let b = Budget::default();
        let t = corpus::two_loops();
        assert!(check_property(&t, Property::Simple, &b).unwrap().verdict.is_proven());
        assert!(check_property(&t, Property::PureInf, &b).unwrap().verdict.is_proven());
        let t = corpus::one_loop();
        assert!(check_property(&t, Property::Simple, &b).unwrap().verdict.is_refuted());
    }

    #[test]
    fn finite_source_graph_is_simple_not_purely_infinite() {
        let b = Budget::default();
        let t = corpus::source();
        let out = check_property(&t, Property::PureInf, &b).unwrap();
        assert!(out.verdict.is_refuted());
        assert!(out.notes.iter().any(|n| n.contains("sinks")));
        assert!(out.notes.iter().any(|n| n.contains("simple but not")));
    }

    #[test]
    fn property_names_round_trip() {
        for p in Property::ALL {
            assert_eq!(p.name().parse::<Property>().unwrap(), p);
        }
    }
}
