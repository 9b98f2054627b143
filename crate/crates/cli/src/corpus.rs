//! The bundled fixture files and the generator they are produced from.

use std::collections::BTreeMap;

use fincat::cauchy::cauchy_completion;
use fincat::classes::group_cospan;
use fincat::profunctor::Profunctor;
use fincat::{fixtures, FinFunctor, Presheaf};

use crate::format::{CommutationDoc, Document, Variance};
use crate::workspace::{category_doc, functor_doc, presheaf_doc, profunctor_doc};

/// File name and contents of every bundled fixture.
pub const BUNDLED: &[(&str, &str)] = &[
    ("unit_I.json", include_str!("../../../fixtures/unit_I.json")),
    ("empty.json", include_str!("../../../fixtures/empty.json")),
    ("two.json", include_str!("../../../fixtures/two.json")),
    ("discrete2.json", include_str!("../../../fixtures/discrete2.json")),
    ("span.json", include_str!("../../../fixtures/span.json")),
    ("cospan.json", include_str!("../../../fixtures/cospan.json")),
    (
        "parallel_pair.json",
        include_str!("../../../fixtures/parallel_pair.json"),
    ),
    ("monoid_M.json", include_str!("../../../fixtures/monoid_M.json")),
    ("z2.json", include_str!("../../../fixtures/z2.json")),
    ("z3.json", include_str!("../../../fixtures/z3.json")),
    ("lattice_N5.json", include_str!("../../../fixtures/lattice_N5.json")),
    ("chain3.json", include_str!("../../../fixtures/chain3.json")),
    (
        "completion_QM.json",
        include_str!("../../../fixtures/completion_QM.json"),
    ),
    ("weights.json", include_str!("../../../fixtures/weights.json")),
    ("functors.json", include_str!("../../../fixtures/functors.json")),
    ("diagrams.json", include_str!("../../../fixtures/diagrams.json")),
    ("example8_2.json", include_str!("../../../fixtures/example8_2.json")),
];

const CATEGORY_FILES: [(&str, &str); 12] = [
    ("I", "unit_I.json"),
    ("Empty", "empty.json"),
    ("Two", "two.json"),
    ("Discrete2", "discrete2.json"),
    ("Span", "span.json"),
    ("Cospan", "cospan.json"),
    ("ParallelPair", "parallel_pair.json"),
    ("M", "monoid_M.json"),
    ("Z2", "z2.json"),
    ("Z3", "z3.json"),
    ("N5", "lattice_N5.json"),
    ("Chain3", "chain3.json"),
];

fn contra(on: &str, p: &Presheaf) -> crate::format::PresheafDoc {
    presheaf_doc(on, Variance::Contra, p, None)
}

fn co(on: &str, p: &Presheaf) -> crate::format::PresheafDoc {
    presheaf_doc(on, Variance::Co, p, None)
}

fn class(members: &[&str]) -> Vec<String> {
    members.iter().map(|m| m.to_string()).collect()
}

/// Regenerates the contents of every bundled file from the library fixtures.
pub fn generate() -> Vec<(&'static str, Document)> {
    let mut out = Vec::new();
    for (name, c) in fixtures::categories() {
        let file = CATEGORY_FILES
            .iter()
            .find(|(n, _)| *n == name)
            .expect("file for fixture")
            .1;
        let mut doc = Document::default();
        doc.categories.insert(name.to_string(), category_doc(&c));
        out.push((file, doc));
    }

    let m = fixtures::monoid_m();
    let q = cauchy_completion(&m);
    let mut doc = Document::default();
    doc.categories.insert("QM".into(), category_doc(&q.completion));
    out.push(("completion_QM.json", doc));

    let mut doc = Document::default();
    let z2 = fixtures::z2();
    let weights: [(&str, &str, Presheaf); 7] = [
        ("initial", "Empty", fixtures::initial_weight()),
        ("E", "M", fixtures::e_weight()),
        ("pushout", "Span", fixtures::pushout_weight()),
        ("pullback", "Span", fixtures::pullback_weight()),
        ("coproduct", "Discrete2", fixtures::coproduct_weight()),
        (
            "coequalizer",
            "ParallelPair",
            Presheaf::constant(&fixtures::parallel_pair(), 1),
        ),
        ("orbits", "Z2", Presheaf::constant(&z2, 1)),
    ];
    for (name, on, p) in &weights {
        doc.presheaves.insert(name.to_string(), contra(on, p));
    }
    doc.classes = BTreeMap::from([
        ("empty".to_string(), class(&[])),
        ("initial".to_string(), class(&["initial"])),
        ("E".to_string(), class(&["E"])),
        ("pushout".to_string(), class(&["pushout"])),
        (
            "finite-colimits".to_string(),
            class(&["initial", "coproduct", "coequalizer", "pushout"]),
        ),
    ]);
    out.push(("weights.json", doc));

    let mut doc = Document::default();
    doc.functors.insert("Z".into(), functor_doc("M", "QM", &q.embedding));
    let collapse = FinFunctor::new(m.clone(), fixtures::unit(), vec![0], vec![0, 0]).expect("collapse");
    doc.functors.insert("collapse".into(), functor_doc("M", "I", &collapse));
    out.push(("functors.json", doc));

    // Small set-valued diagrams for the limit, colimit and Kan commands.
    let mut doc = Document::default();
    let span = fixtures::span();
    let cospan_sets = Presheaf::from_fn(
        span.clone(),
        vec![2, 1, 2],
        |f, x| if span.is_identity(f) { x } else { 0 },
    )
    .expect("cospan of sets");
    doc.presheaves
        .insert("cospan-sets".into(), contra("Span", &cospan_sets));
    let span_sets = Presheaf::covariant(&span, vec![2, 2, 3], |f, x| if span.is_identity(f) { x } else { x % 2 })
        .expect("span of sets");
    doc.presheaves.insert("span-sets".into(), co("Span", &span_sets));
    let z2_action = Presheaf::covariant(&z2, vec![2], |g, x| (x + g) % 2).expect("free Z/2-set");
    doc.presheaves.insert("free-orbit".into(), co("Z2", &z2_action));
    let m_set = Presheaf::covariant(&m, vec![2], |f, x| if m.is_identity(f) { x } else { 0 }).expect("M-set");
    doc.presheaves.insert("m-set".into(), co("M", &m_set));
    out.push(("diagrams.json", doc));

    let mut doc = Document::default();
    let module = Profunctor::from_bifunctor(group_cospan(2).expect("group cospan"));
    doc.profunctors
        .insert("group-cospan".into(), profunctor_doc("Z2", "Span", &module, None));
    doc.commutations.insert(
        "example8.2".into(),
        CommutationDoc {
            colimit_weight: "orbits".into(),
            limit_weight: "pullback".into(),
            bifunctor: "group-cospan".into(),
        },
    );
    out.push(("example8_2.json", doc));
    out
}

/// The bundled texts, in load order.
pub fn bundled_texts() -> Vec<&'static str> {
    BUNDLED.iter().map(|(_, t)| *t).collect()
}
