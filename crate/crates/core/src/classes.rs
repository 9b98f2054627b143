//! Classes of weights: bounded closure in presheaf categories, saturation
//! membership, cocompleteness, atoms, flatness, continuity, commutation of
//! limits with colimits, and recognition of free cocompletions.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;
use rayon::prelude::*;

use crate::category::{FinCategory, Mor, Obj};
use crate::elements::category_of_elements;
use crate::equivalence::DEFAULT_BUDGET;
use crate::functor::{for_each_functor, FinFunctor};
use crate::kan::{presheaf_colimit_on, PresheafCollection, PresheafDiagram, Provenance};
use crate::limits::{
    colimit_in_category, preserves_colimit_into_sets, sends_colimit_to_limit, weighted_colimit, weighted_limit,
    Bifunctor, CategoryColimit,
};
use crate::presheaf::{nat_transformations, NatTrans, Presheaf};
use crate::{Error, Result};

/// A finite class of weights. Each weight carries its domain as its base.
#[derive(Clone, Debug)]
pub struct WeightClass {
    pub name: String,
    pub weights: Vec<(String, Presheaf)>,
}

impl WeightClass {
    pub fn new(name: impl Into<String>, weights: Vec<(String, Presheaf)>) -> WeightClass {
        WeightClass {
            name: name.into(),
            weights,
        }
    }

    pub fn empty() -> WeightClass {
        WeightClass::new("empty", Vec::new())
    }

    pub fn initial() -> WeightClass {
        WeightClass::new("initial", vec![("initial".into(), crate::fixtures::initial_weight())])
    }

    pub fn e_splitting() -> WeightClass {
        WeightClass::new("E", vec![("E".into(), crate::fixtures::e_weight())])
    }

    pub fn pushouts() -> WeightClass {
        WeightClass::new("pushout", vec![("pushout".into(), crate::fixtures::pushout_weight())])
    }

    pub fn finite_colimits() -> WeightClass {
        WeightClass::new(
            "finite-colimits",
            crate::fixtures::finite_colimit_weights()
                .into_iter()
                .map(|(n, w)| (n.to_string(), w))
                .collect(),
        )
    }

    /// `Φ[K]`: the weights whose domain is `K`.
    pub fn on(&self, k: &FinCategory) -> Vec<&Presheaf> {
        self.weights
            .iter()
            .map(|(_, w)| w)
            .filter(|w| **w.base() == *k)
            .collect()
    }

    pub fn validate(&self) -> Result<()> {
        for (name, w) in &self.weights {
            let report = w.base().validate();
            if !report.is_ok() {
                return Err(Error::Validation(report));
            }
            let report = w.validate();
            if !report.is_ok() {
                return Err(Error::DomainMismatch(format!(
                    "weight {name} is not a presheaf: {report}"
                )));
            }
        }
        Ok(())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Caps {
    pub rounds: usize,
    pub members: usize,
    pub set_size: usize,
    pub budget: u64,
}

impl Default for Caps {
    fn default() -> Caps {
        Caps {
            rounds: 4,
            members: 200,
            set_size: 64,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClosureResult {
    pub collection: PresheafCollection,
    /// Rounds run, counting the last one even when it added nothing.
    pub rounds: usize,
    pub saturated_at_bound: bool,
    pub caps: Caps,
    /// Which cap stopped the iteration or forced members to be dropped.
    pub cap_hit: Option<String>,
}

/// Colimits of every diagram of members, for every weight, evaluated in
/// the presheaf category on `base`.
fn closure_round(
    class: &WeightClass,
    base: &Arc<FinCategory>,
    members: &[Presheaf],
    budget: u64,
) -> Result<Vec<(String, Presheaf, PresheafDiagram, Presheaf)>> {
    let snapshot = crate::presheaf::PresheafCategory::new(
        members.to_vec(),
        (0..members.len()).map(|i| format!("P{i}")).collect(),
    )?;
    let mut instances = Vec::new();
    for (name, phi) in &class.weights {
        for_each_functor(phi.base(), &snapshot.category, budget, |o, m| {
            instances.push((
                name.clone(),
                phi.clone(),
                PresheafDiagram {
                    objects: o.to_vec(),
                    arrows: m.iter().map(|&f| snapshot.arrows[f].clone()).collect(),
                },
            ));
            ControlFlow::Continue(())
        })?;
    }
    instances
        .into_par_iter()
        .map(|(name, phi, diagram)| {
            let p = presheaf_colimit_on(base, &phi, members, &diagram)?;
            Ok((name, phi, diagram, p))
        })
        .collect()
}

/// Closes the representables on `a` under `Φ`-weighted colimits in the
/// presheaf category, one round at a time, up to the given caps.
pub fn phi_closure_bounded(class: &WeightClass, a: &Arc<FinCategory>, caps: Caps) -> Result<ClosureResult> {
    let mut collection = PresheafCollection::representables(a);
    let mut rounds = 0;
    let mut cap_hit = None;
    let mut saturated = false;
    while rounds < caps.rounds {
        rounds += 1;
        let found = closure_round(class, a, collection.members(), caps.budget)?;
        let mut added = false;
        for (weight, phi, diagram, p) in found {
            if p.max_size() > caps.set_size {
                cap_hit = Some(format!("value set larger than {}", caps.set_size));
                continue;
            }
            if collection.find(&p).is_some() {
                continue;
            }
            if collection.len() >= caps.members {
                cap_hit = Some(format!("more than {} members", caps.members));
                break;
            }
            collection.insert(p, Provenance::Colimit { weight, phi, diagram });
            added = true;
        }
        if !added && cap_hit.is_none() {
            saturated = true;
            break;
        }
        if cap_hit.is_some() {
            break;
        }
    }
    if !saturated && cap_hit.is_none() {
        cap_hit = Some(format!("{} rounds", caps.rounds));
    }
    Ok(ClosureResult {
        collection,
        rounds,
        saturated_at_bound: saturated,
        caps,
        cap_hit,
    })
}

impl ClosureResult {
    /// Runs one more round and checks that it adds nothing new.
    pub fn verify_fixpoint(&self, class: &WeightClass) -> Result<bool> {
        let base = self.collection.base();
        let found = closure_round(class, base, self.collection.members(), self.caps.budget)?;
        Ok(found.iter().all(|(.., p)| self.collection.find(p).is_some()))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Membership {
    Yes(usize),
    NoAtFixpoint,
    UnknownAtCap,
}

pub fn in_saturation_bounded(psi: &Presheaf, class: &WeightClass, caps: Caps) -> Result<Membership> {
    let closure = phi_closure_bounded(class, psi.base(), caps)?;
    Ok(match closure.collection.find(psi) {
        Some(i) => Membership::Yes(i),
        None if closure.saturated_at_bound => Membership::NoAtFixpoint,
        None => Membership::UnknownAtCap,
    })
}

/// A `Φ`-colimit instance in a finite category: weight name, weight,
/// diagram, and the colimit when it exists.
#[derive(Clone, Debug)]
pub struct Instance {
    pub weight: String,
    pub phi: Presheaf,
    pub diagram: FinFunctor,
    pub colimit: Option<CategoryColimit>,
}

/// Every diagram for every weight of the class, with its colimit in `n`.
pub fn colimit_instances(n: &Arc<FinCategory>, class: &WeightClass, budget: u64) -> Result<Vec<Instance>> {
    let mut out = Vec::new();
    for (name, phi) in &class.weights {
        let k = phi.base();
        let mut diagrams = Vec::new();
        for_each_functor(k, n, budget, |o, m| {
            diagrams.push((o.to_vec(), m.to_vec()));
            ControlFlow::Continue(())
        })?;
        for (o, m) in diagrams {
            let s = FinFunctor::from_parts(k.clone(), n.clone(), o, m)?;
            let colimit = colimit_in_category(phi, &s)?;
            out.push(Instance {
                weight: name.clone(),
                phi: phi.clone(),
                diagram: s,
                colimit,
            });
        }
    }
    Ok(out)
}

#[derive(Clone, Debug)]
pub struct Cocompleteness {
    pub cocomplete: bool,
    pub instances: usize,
    /// A diagram with no colimit: weight name, object map, morphism map.
    pub missing: Option<(String, Vec<Obj>, Vec<Mor>)>,
}

pub fn is_phi_cocomplete(n: &Arc<FinCategory>, class: &WeightClass, budget: u64) -> Result<Cocompleteness> {
    let instances = colimit_instances(n, class, budget)?;
    let missing = instances.iter().find(|i| i.colimit.is_none()).map(|i| {
        (
            i.weight.clone(),
            i.diagram.obj_map().to_vec(),
            i.diagram.mor_map().to_vec(),
        )
    });
    Ok(Cocompleteness {
        cocomplete: missing.is_none(),
        instances: instances.len(),
        missing,
    })
}

/// Objects `a` whose hom functor `A(a, -)` preserves every existing
/// `Φ`-colimit in `A`.
pub fn atoms(a: &Arc<FinCategory>, class: &WeightClass, budget: u64) -> Result<Vec<Obj>> {
    let instances = colimit_instances(a, class, budget)?;
    let mut out = Vec::new();
    'objects: for x in a.objects() {
        let h = Presheaf::corepresentable(a, x);
        for inst in &instances {
            if let Some(c) = &inst.colimit {
                if preserves_colimit_into_sets(&h, &inst.phi, &inst.diagram, c)?.is_err() {
                    continue 'objects;
                }
            }
        }
        out.push(x);
    }
    Ok(out)
}

/// Both sides of the comparison `φ * {ψ, S} -> {ψ, φ * S}` and the size of
/// the image of the canonical map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Commutation {
    pub colimit_of_limits: usize,
    pub limit_of_colimits: usize,
    pub image: usize,
    pub injective: bool,
    pub commutes: bool,
}

/// `φ` on `L` is a colimit weight, `ψ` on `K` a limit weight, and `S` is
/// a bifunctor `K^op x L -> FinSet`.
pub fn check_commutation(phi: &Presheaf, psi: &Presheaf, s: &Bifunctor) -> Result<Commutation> {
    let (k, l) = (s.contra().clone(), s.co().clone());
    if **phi.base() != *l || **psi.base() != *k {
        return Err(Error::DomainMismatch(
            "weights must live on the two sides of the bifunctor".into(),
        ));
    }
    // l |-> {ψ, S(-, l)}, covariant in l
    let limits: Vec<Vec<NatTrans>> = l
        .objects()
        .map(|b| weighted_limit(psi, &s.column(b)).map(|w| w.cone))
        .collect::<Result<_>>()?;
    let lim_index: Vec<HashMap<&NatTrans, usize>> = limits
        .iter()
        .map(|c| c.iter().enumerate().map(|(i, t)| (t, i)).collect())
        .collect();
    let push = |v: Mor, alpha: &NatTrans| NatTrans {
        components: k
            .objects()
            .map(|a| alpha.components[a].iter().map(|&x| s.right(v, a, x)).collect())
            .collect(),
    };
    let g = Presheaf::covariant(&l, limits.iter().map(Vec::len).collect(), |v, i| {
        lim_index[l.tgt(v)][&push(v, &limits[l.src(v)][i])]
    })?;
    let lhs = weighted_colimit(phi, &g)?;

    // k |-> φ * S(k, -), contravariant in k
    let colimits = k
        .objects()
        .map(|a| weighted_colimit(phi, &s.row(a)))
        .collect::<Result<Vec<_>>>()?;
    let mut actions = Vec::with_capacity(k.morphism_count());
    for u in k.morphisms() {
        let (a, a2) = (k.src(u), k.tgt(u));
        let mut map = vec![0; colimits[a2].size];
        for (b, x) in phi.elements() {
            for t in 0..s.size(a2, b) {
                map[colimits[a2].class(b, x, t)] = colimits[a].class(b, x, s.left(u, b, t));
            }
        }
        actions.push(map);
    }
    let h = Presheaf::new(k.clone(), colimits.iter().map(|c| c.size).collect(), actions)?;
    let rhs = weighted_limit(psi, &h)?;
    let rhs_index: HashMap<&NatTrans, usize> = rhs.cone.iter().enumerate().map(|(i, t)| (t, i)).collect();

    // (b, x, α) |-> (a, y) |-> [b, x, α_a(y)]
    let mut map = vec![None; lhs.size];
    for (b, x) in phi.elements() {
        for (i, alpha) in limits[b].iter().enumerate() {
            let family = NatTrans {
                components: k
                    .objects()
                    .map(|a| {
                        (0..psi.size(a))
                            .map(|y| colimits[a].class(b, x, alpha.apply(a, y)))
                            .collect()
                    })
                    .collect(),
            };
            let target = *rhs_index
                .get(&family)
                .ok_or_else(|| Error::InternalMismatch("comparison family is not a cone".into()))?;
            let class = lhs.class(b, x, i);
            match map[class] {
                None => map[class] = Some(target),
                Some(t) if t != target => {
                    return Err(Error::InternalMismatch("comparison map is not well defined".into()))
                }
                _ => {}
            }
        }
    }
    let image: HashSet<usize> = map.iter().flatten().copied().collect();
    let injective = image.len() == lhs.size;
    Ok(Commutation {
        colimit_of_limits: lhs.size,
        limit_of_colimits: rhs.size(),
        image: image.len(),
        injective,
        commutes: injective && image.len() == rhs.size(),
    })
}

/// Flat for finite limits: `el(φ)^op` is filtered.
pub fn flat_for_finite_limits(phi: &Presheaf) -> bool {
    category_of_elements(phi).category.opposite().is_filtered()
}

/// Flat for the terminal object: `el(φ)` is connected.
pub fn flat_for_terminal(phi: &Presheaf) -> bool {
    category_of_elements(phi).category.is_connected()
}

#[derive(Clone, Debug)]
pub struct Continuity {
    pub continuous: bool,
    pub checked: usize,
    pub skipped: usize,
    pub failure: Option<(String, Vec<Obj>)>,
}

/// Whether `ψ: N^op -> FinSet` turns every existing `Φ`-colimit of `N`
/// into a limit.
pub fn is_phi_continuous(psi: &Presheaf, class: &WeightClass, budget: u64) -> Result<Continuity> {
    let n = psi.base();
    let mut report = Continuity {
        continuous: true,
        checked: 0,
        skipped: 0,
        failure: None,
    };
    for inst in colimit_instances(n, class, budget)? {
        let Some(c) = &inst.colimit else {
            report.skipped += 1;
            continue;
        };
        report.checked += 1;
        if sends_colimit_to_limit(psi, &inst.phi, &inst.diagram, c)?.is_err() {
            report.continuous = false;
            report.failure = Some((inst.weight.clone(), inst.diagram.obj_map().to_vec()));
            break;
        }
    }
    Ok(report)
}

#[derive(Clone, Debug)]
pub struct Recognition {
    pub fully_faithful: bool,
    pub cocomplete: bool,
    /// The closure of the image under `Φ`-colimits reaches every object.
    pub dense: bool,
    pub closure_rounds: usize,
    pub image_in_atoms: bool,
}

impl Recognition {
    pub fn all_hold(&self) -> bool {
        self.fully_faithful && self.cocomplete && self.dense && self.image_in_atoms
    }
}

/// Closes a set of objects of `b` under the `Φ`-colimits that exist in `b`.
/// Returns the closed set (up to isomorphism) and the rounds used.
pub fn closure_in_category(
    b: &Arc<FinCategory>,
    start: &[Obj],
    class: &WeightClass,
    caps: Caps,
) -> Result<(Vec<bool>, usize, bool)> {
    let mut inside = vec![false; b.object_count()];
    let mark = |inside: &mut Vec<bool>, o: Obj| {
        for x in b.objects() {
            if b.find_iso(o, x).is_some() {
                inside[x] = true;
            }
        }
    };
    for &o in start {
        mark(&mut inside, o);
    }
    let instances = colimit_instances(b, class, caps.budget)?;
    let mut rounds = 0;
    while rounds < caps.rounds {
        rounds += 1;
        let snapshot = inside.clone();
        let mut added = false;
        for inst in &instances {
            if let Some(c) = &inst.colimit {
                if inst.diagram.obj_map().iter().all(|&o| snapshot[o]) && !inside[c.apex] {
                    mark(&mut inside, c.apex);
                    added = true;
                }
            }
        }
        if !added {
            return Ok((inside, rounds, true));
        }
    }
    Ok((inside, rounds, false))
}

pub fn recognize_free_cocompletion(g: &FinFunctor, class: &WeightClass, caps: Caps) -> Result<Recognition> {
    let b = g.target();
    let fully_faithful = g.is_fully_faithful();
    let cocomplete = is_phi_cocomplete(b, class, caps.budget)?.cocomplete;
    let (inside, closure_rounds, fixpoint) = closure_in_category(b, g.obj_map(), class, caps)?;
    let dense = inside.iter().all(|&x| x);
    if !dense && !fixpoint {
        return Err(Error::CapExceeded(format!(
            "closure in the target after {closure_rounds} rounds"
        )));
    }
    let atom_set: HashSet<Obj> = atoms(b, class, caps.budget)?.into_iter().collect();
    let image_in_atoms = g.obj_map().iter().all(|o| atom_set.contains(o));
    Ok(Recognition {
        fully_faithful,
        cocomplete,
        dense,
        closure_rounds,
        image_in_atoms,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommaReport {
    pub objects: usize,
    pub connected: bool,
}

/// The comma category `W/F` for `W` the representables together with the
/// initial presheaf, and whether it is connected.
pub fn comma_connectedness_witness(f: &Presheaf) -> CommaReport {
    let a = f.base();
    let mut w: Vec<Presheaf> = a.objects().map(|o| Presheaf::representable(a, o)).collect();
    w.push(Presheaf::constant(a, 0));
    let over: Vec<Vec<NatTrans>> = w.iter().map(|p| nat_transformations(p, f)).collect();
    let mut offset = Vec::with_capacity(w.len());
    let mut total = 0;
    for o in &over {
        offset.push(total);
        total += o.len();
    }
    let mut uf = UnionFind::<usize>::new(total);
    for (i, wi) in w.iter().enumerate() {
        for (j, wj) in w.iter().enumerate() {
            for t in nat_transformations(wi, wj) {
                for (x, alpha) in over[i].iter().enumerate() {
                    for (y, beta) in over[j].iter().enumerate() {
                        if beta.after(&t) == *alpha {
                            uf.union(offset[i] + x, offset[j] + y);
                        }
                    }
                }
            }
        }
    }
    let connected = total > 0 && (0..total).all(|x| uf.equiv(0, x));
    CommaReport {
        objects: total,
        connected,
    }
}

/// A module for testing commutation with pullbacks: the cospan `G -> 1 <- G` of
/// a cyclic group `G` acting on itself, as a bifunctor on
/// `span^op x G`.
pub fn group_cospan(n: usize) -> Result<Bifunctor> {
    let span = crate::fixtures::span();
    let g = Arc::new(FinCategory::cyclic_group(n));
    let middle = span.object_index("c").expect("span apex");
    Bifunctor::from_fn(
        &span,
        &g,
        |k, _| if k == middle { 1 } else { n },
        |u, _, x| if span.is_identity(u) { x } else { 0 },
        |v, k, x| if k == middle { 0 } else { (x + v) % n },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::generate::{presheaves_up_to_iso, random_presheaf};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn closure_examples() {
        let caps = Caps::default();
        let m = fixtures::monoid_m();
        let c = phi_closure_bounded(&WeightClass::empty(), &m, caps).unwrap();
        assert_eq!(c.collection.len(), 1);
        assert!(c.saturated_at_bound);
        assert_eq!(c.rounds, 1);

        for (_, a) in fixtures::categories() {
            let c = phi_closure_bounded(&WeightClass::initial(), &a, caps).unwrap();
            assert!(c.saturated_at_bound);
            assert!(c.collection.find(&Presheaf::constant(&a, 0)).is_some());
            assert_eq!(c.collection.len(), PresheafCollection::representables(&a).len() + 1);
        }

        let c = phi_closure_bounded(&WeightClass::e_splitting(), &m, caps).unwrap();
        assert!(c.saturated_at_bound);
        assert_eq!(c.rounds, 2);
        assert_eq!(c.collection.len(), 2);
        assert!(c.collection.find(&fixtures::e_weight()).is_some());
        assert!(c.collection.replay_all().unwrap());
        assert!(c.verify_fixpoint(&WeightClass::e_splitting()).unwrap());
    }

    #[test]
    fn saturation_membership() {
        let caps = Caps::default();
        let m = fixtures::monoid_m();
        for class in [WeightClass::empty(), WeightClass::initial(), WeightClass::e_splitting()] {
            assert!(matches!(
                in_saturation_bounded(&Presheaf::representable(&m, 0), &class, caps).unwrap(),
                Membership::Yes(_)
            ));
        }
        assert!(matches!(
            in_saturation_bounded(&Presheaf::constant(&m, 0), &WeightClass::initial(), caps).unwrap(),
            Membership::Yes(_)
        ));
        assert_eq!(
            in_saturation_bounded(&fixtures::e_weight(), &WeightClass::initial(), caps).unwrap(),
            Membership::NoAtFixpoint
        );
        let tight = Caps { rounds: 1, ..caps };
        let two = fixtures::two();
        let sum = Presheaf::constant(&two, 3);
        assert_eq!(
            in_saturation_bounded(&sum, &WeightClass::finite_colimits(), tight).unwrap(),
            Membership::UnknownAtCap
        );
    }

    #[test]
    fn cocompleteness() {
        let init = WeightClass::initial();
        assert!(
            is_phi_cocomplete(&fixtures::two(), &init, DEFAULT_BUDGET)
                .unwrap()
                .cocomplete
        );
        let m = is_phi_cocomplete(&fixtures::monoid_m(), &init, DEFAULT_BUDGET).unwrap();
        assert!(!m.cocomplete);
        assert_eq!(m.missing.unwrap().0, "initial");
        for (_, n) in fixtures::categories() {
            assert!(
                is_phi_cocomplete(&n, &WeightClass::empty(), DEFAULT_BUDGET)
                    .unwrap()
                    .cocomplete
            );
        }
        assert!(
            is_phi_cocomplete(&fixtures::lattice_n5(), &WeightClass::finite_colimits(), DEFAULT_BUDGET)
                .unwrap()
                .cocomplete
        );
    }

    /// In a poset, `a` preserves the colimit of `S` iff `a <= apex` holds
    /// exactly as often as the Nat-count of cocones from `S` into `a`.
    fn poset_atoms_oracle(p: &FinCategory, weights: &[Presheaf]) -> Vec<Obj> {
        let leq = |x: Obj, y: Obj| !p.hom(x, y).is_empty();
        let join = |xs: &[Obj]| -> Option<Obj> {
            p.objects()
                .filter(|&z| xs.iter().all(|&x| leq(x, z)))
                .find(|&z| p.objects().all(|w| !xs.iter().all(|&x| leq(x, w)) || leq(z, w)))
        };
        p.objects()
            .filter(|&a| {
                weights.iter().all(|w| {
                    let n = w.base().object_count();
                    let mut ok = true;
                    let mut pick = vec![0; n];
                    loop {
                        let fits = w
                            .base()
                            .morphisms()
                            .all(|u| leq(pick[w.base().src(u)], pick[w.base().tgt(u)]));
                        if fits {
                            if let Some(j) = join(&pick) {
                                // A(a, -) applied to a conical diagram: a colimit
                                // of 0/1 sets over the shape's connected pieces
                                let below: Vec<bool> = pick.iter().map(|&x| leq(a, x)).collect();
                                let shape = w.base();
                                let mut uf = UnionFind::<usize>::new(n);
                                for u in shape.morphisms() {
                                    if below[shape.src(u)] {
                                        uf.union(shape.src(u), shape.tgt(u));
                                    }
                                }
                                let pieces: HashSet<usize> = (0..n).filter(|&i| below[i]).map(|i| uf.find(i)).collect();
                                let target = usize::from(leq(a, j));
                                if pieces.len() != target {
                                    ok = false;
                                }
                            }
                        }
                        let mut i = 0;
                        while i < n && pick[i] + 1 == p.object_count() {
                            pick[i] = 0;
                            i += 1;
                        }
                        if i == n {
                            break;
                        }
                        pick[i] += 1;
                    }
                    ok
                })
            })
            .collect()
    }

    #[test]
    fn atoms_examples() {
        for (_, a) in fixtures::categories() {
            assert_eq!(
                atoms(&a, &WeightClass::empty(), DEFAULT_BUDGET).unwrap(),
                a.objects().collect::<Vec<_>>()
            );
        }
        assert!(atoms(&fixtures::empty(), &WeightClass::initial(), DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
        for lattice in [fixtures::lattice_n5(), fixtures::chain3(), fixtures::two()] {
            for class in [WeightClass::initial(), WeightClass::finite_colimits()] {
                let ws: Vec<Presheaf> = class.weights.iter().map(|(_, w)| w.clone()).collect();
                assert_eq!(
                    atoms(&lattice, &class, DEFAULT_BUDGET).unwrap(),
                    poset_atoms_oracle(&lattice, &ws)
                );
            }
        }
        // a + a = a in a poset, but A(a, a) + A(a, a) has two elements
        let coproduct = WeightClass::new("coproduct", vec![("coproduct".into(), fixtures::coproduct_weight())]);
        assert!(atoms(&fixtures::lattice_n5(), &coproduct, DEFAULT_BUDGET)
            .unwrap()
            .is_empty());
        // the initial weight: every object except the bottom one
        assert_eq!(
            atoms(&fixtures::lattice_n5(), &WeightClass::initial(), DEFAULT_BUDGET).unwrap(),
            vec![1, 2, 3, 4]
        );
        let qm = crate::cauchy::cauchy_completion(&fixtures::monoid_m()).completion;
        assert_eq!(
            atoms(&qm, &WeightClass::e_splitting(), DEFAULT_BUDGET).unwrap(),
            vec![0, 1]
        );
    }

    #[test]
    fn orbits_against_pullbacks() {
        let s = group_cospan(2).unwrap();
        let phi = Presheaf::constant(&fixtures::z2(), 1);
        let c = check_commutation(&phi, &fixtures::pullback_weight(), &s).unwrap();
        assert!(!c.commutes);
        assert_eq!((c.colimit_of_limits, c.limit_of_colimits), (2, 1));
        assert!(!flat_for_finite_limits(&phi));
        let cont = is_phi_continuous(&phi, &WeightClass::pushouts(), DEFAULT_BUDGET).unwrap();
        assert!(cont.continuous && cont.checked > 0);
        let c3 = check_commutation(
            &Presheaf::constant(&fixtures::z3(), 1),
            &fixtures::pullback_weight(),
            &group_cospan(3).unwrap(),
        )
        .unwrap();
        assert_eq!((c3.colimit_of_limits, c3.limit_of_colimits), (3, 1));
    }

    #[test]
    fn commutation_with_representable_limit_weight() {
        let mut rng = ChaCha8Rng::seed_from_u64(83);
        let span = fixtures::span();
        let l = fixtures::z2();
        let prod = Arc::new(span.product(&l.opposite()));
        for _ in 0..10 {
            let table = random_presheaf(&mut rng, &prod, 2);
            let s = Bifunctor::new(span.clone(), l.clone(), table).unwrap();
            let phi = random_presheaf(&mut rng, &l, 2);
            for b in span.objects() {
                let c = check_commutation(&phi, &Presheaf::representable(&span, b), &s).unwrap();
                assert!(c.commutes);
            }
        }
    }

    #[test]
    fn filtered_colimits_commute_with_products() {
        let chain = fixtures::chain3();
        let d2 = fixtures::discrete2();
        let prod = Arc::new(d2.product(&chain.opposite()));
        let phi = Presheaf::constant(&chain, 1);
        let psi = fixtures::coproduct_weight();
        let mut rng = ChaCha8Rng::seed_from_u64(89);
        for _ in 0..10 {
            let table = random_presheaf(&mut rng, &prod, 3);
            let s = Bifunctor::new(d2.clone(), chain.clone(), table).unwrap();
            assert!(check_commutation(&phi, &psi, &s).unwrap().commutes);
        }
    }

    #[test]
    fn flatness_examples() {
        for (_, k) in fixtures::categories() {
            for b in k.objects() {
                let y = Presheaf::representable(&k, b);
                assert!(flat_for_finite_limits(&y));
                assert!(flat_for_terminal(&y));
            }
            assert!(!flat_for_terminal(&Presheaf::constant(&k, 0)));
        }
        assert!(flat_for_finite_limits(&Presheaf::constant(&fixtures::two(), 1)));
        assert!(!flat_for_terminal(&Presheaf::constant(&fixtures::discrete2(), 1)));
        assert!(!flat_for_finite_limits(&Presheaf::constant(&fixtures::z2(), 1)));
    }

    #[test]
    fn flat_weights_are_continuous() {
        let finite = WeightClass::finite_colimits();
        for k in [fixtures::two(), fixtures::monoid_m(), fixtures::span(), fixtures::z2()] {
            for y in k.objects() {
                assert!(
                    is_phi_continuous(&Presheaf::representable(&k, y), &finite, DEFAULT_BUDGET)
                        .unwrap()
                        .continuous
                );
            }
            for phi in presheaves_up_to_iso(&k, 2) {
                if flat_for_finite_limits(&phi) {
                    assert!(
                        is_phi_continuous(&phi, &finite, DEFAULT_BUDGET).unwrap().continuous,
                        "{phi:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn recognition() {
        let caps = Caps::default();
        let m = fixtures::monoid_m();
        let q = crate::cauchy::cauchy_completion(&m);
        let r = recognize_free_cocompletion(&q.embedding, &WeightClass::e_splitting(), caps).unwrap();
        assert!(r.all_hold(), "{r:?}");
        for (_, a) in fixtures::categories() {
            let r = recognize_free_cocompletion(&FinFunctor::identity(&a), &WeightClass::empty(), caps).unwrap();
            assert!(r.all_hold());
        }
        let collapse = FinFunctor::new(m.clone(), fixtures::unit(), vec![0], vec![0, 0]).unwrap();
        let r = recognize_free_cocompletion(&collapse, &WeightClass::e_splitting(), caps).unwrap();
        assert!(!r.fully_faithful);
    }

    #[test]
    fn comma_categories_are_connected() {
        let two = fixtures::two();
        assert!(comma_connectedness_witness(&Presheaf::representable(&two, 0)).connected);
        let zero = comma_connectedness_witness(&Presheaf::constant(&two, 0));
        assert_eq!(zero.objects, 1);
        assert!(zero.connected);
        let mut rng = ChaCha8Rng::seed_from_u64(97);
        for _ in 0..20 {
            assert!(comma_connectedness_witness(&random_presheaf(&mut rng, &two, 3)).connected);
        }
    }
}
