//! Built-in example triples, loaded from the JSON files under `corpus/`.

use crate::document::TripleDocument;
use crate::triple::{Triple, TripleData};

macro_rules! documents {
    ($($name:ident),* $(,)?) => {
        /// Every bundled document as `(name, json)`.
        pub const DOCUMENTS: &[(&str, &str)] = &[
            $((stringify!($name), include_str!(concat!("../corpus/", stringify!($name), ".json"))),)*
        ];

        $(
            pub fn $name() -> Triple {
                load(stringify!($name))
            }
        )*
    };
}

documents!(
    one_loop,
    two_loops,
    two_vertex,
    z2_two_loop_swap,
    z2_identity_twist,
    z2_identity_trivial,
    z2_swapped_components,
    z_odometer,
    z_three_cycle,
    z_fixed_loops,
    source,
    source_with_loop,
    receiver,
    receiver_mixed,
    z2_swapped_sources,
    z2_swapped_receivers,
    z2_incompatible_receiver,
);

/// Raw text of a bundled document.
pub fn text(name: &str) -> Option<&'static str> {
    DOCUMENTS.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

fn load(name: &str) -> Triple {
    let doc = TripleDocument::parse(text(name).expect("bundled")).expect("bundled document parses");
    doc.to_triple(8).unwrap_or_else(|e| panic!("bundled triple `{name}` is invalid: {e}"))
}

/// The swap triple with `φ(s, e1) = 1`, which violates the cocycle identity.
pub fn z2_two_loop_broken_data() -> TripleData {
    TripleDocument::parse(include_str!("../corpus/z2_two_loop_broken.json"))
        .expect("parses")
        .to_data()
        .expect("names resolve")
}

/// Every bundled valid triple.
pub fn all() -> Vec<Triple> {
    DOCUMENTS.iter().map(|(n, _)| load(n)).collect()
}

/// Bundled triples whose graph is row-finite without sources.
pub fn regular() -> Vec<(&'static str, Triple)> {
    DOCUMENTS
        .iter()
        .map(|(n, _)| (*n, load(n)))
        .filter(|(_, t)| t.graph().is_row_finite() && !t.graph().has_sources())
        .collect()
}
