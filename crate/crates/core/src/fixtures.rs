//! The named categories and weights used throughout the examples, tests
//! and command-line front end.

use std::sync::Arc;

use crate::category::FinCategory;
use crate::presheaf::Presheaf;

/// The unit category `I`.
pub fn unit() -> Arc<FinCategory> {
    Arc::new(FinCategory::unit())
}

/// The empty category `0`.
pub fn empty() -> Arc<FinCategory> {
    Arc::new(FinCategory::empty())
}

/// The arrow category `0 -> 1`.
pub fn two() -> Arc<FinCategory> {
    Arc::new(FinCategory::free_on_acyclic_graph(&["0", "1"], &[("f", 0, 1)]).expect("two"))
}

pub fn discrete2() -> Arc<FinCategory> {
    Arc::new(FinCategory::discrete(&["a", "b"]))
}

/// `l <- c -> r`, the shape of pushout diagrams.
pub fn span() -> Arc<FinCategory> {
    Arc::new(FinCategory::free_on_acyclic_graph(&["l", "c", "r"], &[("p", 1, 0), ("q", 1, 2)]).expect("span"))
}

/// `l -> c <- r`, the shape of pullback diagrams.
pub fn cospan() -> Arc<FinCategory> {
    Arc::new(FinCategory::free_on_acyclic_graph(&["l", "c", "r"], &[("p", 0, 1), ("q", 2, 1)]).expect("cospan"))
}

/// Two parallel arrows `s, t: 0 -> 1`.
pub fn parallel_pair() -> Arc<FinCategory> {
    Arc::new(FinCategory::free_on_acyclic_graph(&["0", "1"], &[("s", 0, 1), ("t", 0, 1)]).expect("parallel pair"))
}

/// The monoid `{1, e}` with `e . e = e`.
pub fn monoid_m() -> Arc<FinCategory> {
    Arc::new(FinCategory::monoid(&["1", "e"], |a, b| a | b).expect("monoid M"))
}

pub fn z2() -> Arc<FinCategory> {
    Arc::new(FinCategory::cyclic_group(2))
}

pub fn z3() -> Arc<FinCategory> {
    Arc::new(FinCategory::cyclic_group(3))
}

/// The five-element lattice `0 < a < b < 1`, `0 < c < 1` with `c`
/// incomparable to `a` and `b`.
pub fn lattice_n5() -> Arc<FinCategory> {
    let names = ["0", "a", "b", "c", "1"];
    let below: [&[usize]; 5] = [&[0], &[0, 1], &[0, 1, 2], &[0, 3], &[0, 1, 2, 3, 4]];
    Arc::new(FinCategory::poset(&names, |i, j| below[j].contains(&i)).expect("lattice"))
}

/// The chain `0 <= 1 <= 2`.
pub fn chain3() -> Arc<FinCategory> {
    Arc::new(FinCategory::poset(&["0", "1", "2"], |i, j| i <= j).expect("chain"))
}

/// The category of the sets `0..n` for `n <= max` and all functions between
/// them. Morphism `i` of hom `(m, n)` is the function whose value at `x` is
/// digit `x` of `i` in base `n`; the returned table lists each function.
pub fn finite_sets(max: usize) -> (Arc<FinCategory>, Vec<Vec<usize>>) {
    let mut functions: Vec<Vec<usize>> = Vec::new();
    let mut arrows = Vec::new();
    let mut index = std::collections::HashMap::new();
    for m in 0..=max {
        for n in 0..=max {
            let count = n.pow(m as u32);
            for code in 0..count {
                let mut c = code;
                let f: Vec<usize> = (0..m)
                    .map(|_| {
                        let d = c % n;
                        c /= n;
                        d
                    })
                    .collect();
                let name = format!("{m}->{n}:{}", f.iter().map(|d| d.to_string()).collect::<String>());
                index.insert((m, f.clone(), n), arrows.len());
                arrows.push(crate::category::Arrow { name, src: m, tgt: n });
                functions.push(f);
            }
        }
    }
    let identities = (0..=max).map(|m| index[&(m, (0..m).collect::<Vec<_>>(), m)]).collect();
    let mut composites = Vec::new();
    for (f, af) in arrows.iter().enumerate() {
        for (g, ag) in arrows.iter().enumerate() {
            if af.tgt == ag.src {
                let h: Vec<usize> = functions[f].iter().map(|&x| functions[g][x]).collect();
                composites.push((g, f, index[&(af.src, h, ag.tgt)]));
            }
        }
    }
    let names = (0..=max).map(|m| m.to_string()).collect();
    let c = FinCategory::from_parts(names, arrows, identities, composites).expect("finite sets");
    (Arc::new(c), functions)
}

/// All named fixture categories, in a fixed order.
pub fn categories() -> Vec<(&'static str, Arc<FinCategory>)> {
    vec![
        ("I", unit()),
        ("Empty", empty()),
        ("Two", two()),
        ("Discrete2", discrete2()),
        ("Span", span()),
        ("Cospan", cospan()),
        ("ParallelPair", parallel_pair()),
        ("M", monoid_m()),
        ("Z2", z2()),
        ("Z3", z3()),
        ("N5", lattice_n5()),
        ("Chain3", chain3()),
    ]
}

/// The weight for initial objects: the unique presheaf on the empty category.
pub fn initial_weight() -> Presheaf {
    Presheaf::constant(&empty(), 0)
}

/// The weight whose colimits split the idempotent `e` of `M`: the presheaf
/// `E`, the equalizer of `1` and `e` acting on the representable, which is
/// the one-point presheaf.
pub fn e_weight() -> Presheaf {
    Presheaf::constant(&monoid_m(), 1)
}

/// The conical weight on the span: pushouts.
pub fn pushout_weight() -> Presheaf {
    Presheaf::constant(&span(), 1)
}

/// Pullbacks as a limit weight. A limit weighted by `phi` on `K` takes a
/// diagram `K^op -> A`, so the cospan shape comes from `Δ1` on the span.
pub fn pullback_weight() -> Presheaf {
    Presheaf::constant(&span(), 1)
}

/// The binary coproduct weight.
pub fn coproduct_weight() -> Presheaf {
    Presheaf::constant(&discrete2(), 1)
}

/// Conical weights for finite colimits: empty, binary coproduct,
/// coequalizer and pushout shapes.
pub fn finite_colimit_weights() -> Vec<(&'static str, Presheaf)> {
    vec![
        ("initial", initial_weight()),
        ("coproduct", coproduct_weight()),
        ("coequalizer", Presheaf::constant(&parallel_pair(), 1)),
        ("pushout", pushout_weight()),
    ]
}

/// Every presheaf up to isomorphism with small value sets on the small
/// fixture categories, named `base/index`.
pub fn weight_corpus() -> Vec<(String, Presheaf)> {
    let bounds: [(&str, Arc<FinCategory>, usize); 11] = [
        ("Empty", empty(), 0),
        ("I", unit(), 3),
        ("Two", two(), 3),
        ("Discrete2", discrete2(), 2),
        ("M", monoid_m(), 2),
        ("Z2", z2(), 2),
        ("Span", span(), 1),
        ("ParallelPair", parallel_pair(), 1),
        ("Cospan", cospan(), 1),
        ("Z3", z3(), 3),
        ("Chain3", chain3(), 1),
    ];
    let mut out = Vec::new();
    for (name, base, max) in bounds {
        for (i, p) in crate::generate::presheaves_up_to_iso(&base, max)
            .into_iter()
            .enumerate()
        {
            out.push((format!("{name}/{i}"), p));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures_are_valid() {
        for (name, c) in categories() {
            assert!(c.validate().is_ok(), "{name}");
        }
        assert_eq!(lattice_n5().morphism_count(), 5 + 8);
        assert!(e_weight().validate().is_ok());
    }

    #[test]
    fn corpus_is_large_enough() {
        let corpus = weight_corpus();
        assert!(corpus.len() >= 50, "{}", corpus.len());
        assert!(corpus.iter().all(|(_, p)| p.validate().is_ok()));
    }

    #[test]
    fn e_is_the_fixed_part_of_the_representable() {
        let m = monoid_m();
        let y = Presheaf::representable(&m, 0);
        let e = m.morphism_index("e").unwrap();
        let fixed = (0..y.size(0)).filter(|&x| y.act(e, x) == x).count();
        assert_eq!(fixed, e_weight().size(0));
    }
}
