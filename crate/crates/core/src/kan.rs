//! Yoneda embeddings, pointwise left Kan extensions, nerves, and finite
//! collections of presheaves with a record of how each was built.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::category::{FinCategory, Mor, Obj};
use crate::functor::FinFunctor;
use crate::limits::{hom_into, weighted_colimit, WeightedColimit};
use crate::presheaf::{count_nat, for_each_nat, nat_transformations, NatTrans, Presheaf, PresheafCategory, SetFunctor};
use crate::{Error, Result};

/// `A(-, a)`.
pub fn yoneda_embed(a: &Arc<FinCategory>, o: Obj) -> Presheaf {
    Presheaf::representable(a, o)
}

/// `Y(u): A(-, a) -> A(-, a')` for `u: a -> a'`, by postcomposition.
pub fn yoneda_arrow(a: &FinCategory, u: Mor) -> NatTrans {
    let s = a.src(u);
    NatTrans {
        components: a
            .objects()
            .map(|k| {
                a.hom(k, s)
                    .iter()
                    .map(|&m| Presheaf::hom_position(a, a.compose(u, m)))
                    .collect()
            })
            .collect(),
    }
}

/// The transformation `Y(b) -> F` picked out by `x` in `F(b)`: its
/// component at `k` sends `m: k -> b` to `F(m)(x)`.
pub fn yoneda_transformation(f: &Presheaf, b: Obj, x: usize) -> NatTrans {
    let a = f.base();
    NatTrans {
        components: a
            .objects()
            .map(|k| a.hom(k, b).iter().map(|&m| f.act(m, x)).collect())
            .collect(),
    }
}

/// The element of `F(b)` corresponding to `alpha: Y(b) -> F`.
pub fn yoneda_element(alpha: &NatTrans, a: &FinCategory, b: Obj) -> usize {
    alpha.apply(b, Presheaf::hom_position(a, a.identity(b)))
}

/// Checks the Yoneda bijection `Nat(Y(b), F) = F(b)` by enumeration, in
/// both directions, and its naturality in `b`: for `u: b' -> b`,
/// precomposing with `Y(u)` corresponds to acting by `F(u)`.
pub fn yoneda_bijection_holds(f: &Presheaf, b: Obj) -> bool {
    let a = f.base();
    let y = Presheaf::representable(a, b);
    let all = nat_transformations(&y, f);
    if all.len() != f.size(b) {
        return false;
    }
    let elements: HashSet<usize> = all.iter().map(|t| yoneda_element(t, a, b)).collect();
    let round_trip = (0..f.size(b)).all(|x| {
        let t = yoneda_transformation(f, b, x);
        t.validate(&y, f).is_ok() && yoneda_element(&t, a, b) == x && all.contains(&t)
    });
    let natural = a.into_obj(b).all(|u| {
        let yu = yoneda_arrow(a, u);
        all.iter()
            .all(|t| yoneda_element(&t.after(&yu), a, a.src(u)) == f.act(u, yoneda_element(t, a, b)))
    });
    elements.len() == all.len() && round_trip && natural
}

/// Whether `Y` is fully faithful: `m |-> Y(m)` is a bijection
/// `A(a, b) -> Nat(Y(a), Y(b))` for all objects.
pub fn yoneda_is_fully_faithful(a: &Arc<FinCategory>) -> bool {
    a.objects().all(|s| {
        a.objects().all(|t| {
            let ys = Presheaf::representable(a, s);
            let yt = Presheaf::representable(a, t);
            let images: HashSet<NatTrans> = a.hom(s, t).iter().map(|&m| yoneda_arrow(a, m)).collect();
            images.len() == a.hom(s, t).len()
                && images.iter().all(|n| n.validate(&ys, &yt).is_ok())
                && count_nat(&ys, &yt) == images.len()
        })
    })
}

/// A pointwise left Kan extension `Lan_K T: C -> FinSet` with its unit
/// `T -> Lan_K T . K`.
#[derive(Clone, Debug)]
pub struct Lan {
    pub functor: SetFunctor,
    pub unit: NatTrans,
    /// The colimit `C(K-, c) * T` computed at each object `c`.
    pub pointwise: Vec<WeightedColimit>,
}

/// `Lan_K T (c) = C(K-, c) * T` for `K: A -> C` and `T: A -> FinSet`.
pub fn lan(k: &FinFunctor, t: &SetFunctor) -> Result<Lan> {
    let a = k.source();
    let c = k.target();
    if **t.base() != a.opposite() {
        return Err(Error::DomainMismatch("T must be a functor on the domain of K".into()));
    }
    let pointwise = c
        .objects()
        .map(|o| weighted_colimit(&hom_into(k, o), t))
        .collect::<Result<Vec<_>>>()?;
    let sizes = pointwise.iter().map(|w| w.size).collect();
    // covariant action of h: o -> o' on the class of (x, m: Kx -> o, s)
    let mut actions: Vec<Vec<usize>> = Vec::with_capacity(c.morphism_count());
    for h in c.morphisms() {
        let (o, o2) = (c.src(h), c.tgt(h));
        let mut map = vec![usize::MAX; pointwise[o].size];
        for x in a.objects() {
            for (i, &m) in c.hom(k.obj(x), o).iter().enumerate() {
                let j = Presheaf::hom_position(c, c.compose(h, m));
                for s in 0..t.size(x) {
                    map[pointwise[o].class(x, i, s)] = pointwise[o2].class(x, j, s);
                }
            }
        }
        actions.push(map);
    }
    let functor = Presheaf::new(Arc::new(c.opposite()), sizes, actions)?;
    let unit = NatTrans {
        components: a
            .objects()
            .map(|x| {
                let ko = k.obj(x);
                let id = Presheaf::hom_position(c, c.identity(ko));
                (0..t.size(x)).map(|s| pointwise[ko].class(x, id, s)).collect()
            })
            .collect(),
    };
    Ok(Lan {
        functor,
        unit,
        pointwise,
    })
}

impl Lan {
    /// `Lan_K T . K` as a functor on the domain of `K`.
    pub fn restricted(&self, k: &FinFunctor) -> Result<SetFunctor> {
        self.functor.precompose(&k.opposite())
    }
}

/// Checks `Nat(Lan_K T, S) = Nat(T, S K)` by enumerating both sides and
/// testing that `beta |-> beta_K . unit` is a bijection.
pub fn lan_adjunction_holds(k: &FinFunctor, t: &SetFunctor, s: &SetFunctor) -> Result<bool> {
    let l = lan(k, t)?;
    let sk = s.precompose(&k.opposite())?;
    let lk = l.restricted(k)?;
    if !l.unit.validate(t, &lk).is_ok() {
        return Ok(false);
    }
    let right = count_nat(t, &sk);
    let mut images = HashSet::new();
    let mut left = 0;
    let a = k.source();
    for_each_nat(&l.functor, s, false, |beta| {
        left += 1;
        let composite: Vec<Vec<usize>> = a
            .objects()
            .map(|x| l.unit.components[x].iter().map(|&c| beta[k.obj(x)][c]).collect())
            .collect();
        images.insert(composite);
        std::ops::ControlFlow::Continue(())
    });
    Ok(left == right && images.len() == left)
}

/// The nerve `b |-> B(G-, b)` of `G: N -> B`, with the action of each
/// morphism of `B` by postcomposition.
#[derive(Clone, Debug)]
pub struct Nerve {
    pub presheaves: Vec<Presheaf>,
    pub actions: Vec<NatTrans>,
}

pub fn nerve(g: &FinFunctor) -> Nerve {
    let b = g.target();
    let n = g.source();
    let presheaves = b.objects().map(|o| hom_into(g, o)).collect();
    let actions = b
        .morphisms()
        .map(|h| NatTrans {
            components: n
                .objects()
                .map(|x| {
                    b.hom(g.obj(x), b.src(h))
                        .iter()
                        .map(|&m| Presheaf::hom_position(b, b.compose(h, m)))
                        .collect()
                })
                .collect(),
        })
        .collect();
    Nerve { presheaves, actions }
}

/// A diagram `S: K -> [A^op, Set]` whose objects are members of a list of
/// presheaves: `objects[k]` indexes the member and `arrows[u]` is `S(u)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PresheafDiagram {
    pub objects: Vec<usize>,
    pub arrows: Vec<NatTrans>,
}

/// `phi * S` in the presheaf category, computed pointwise.
pub fn presheaf_colimit(phi: &Presheaf, members: &[Presheaf], diagram: &PresheafDiagram) -> Result<Presheaf> {
    let a = members
        .get(*diagram.objects.first().unwrap_or(&0))
        .map(|p| p.base().clone())
        .ok_or_else(|| Error::DomainMismatch("colimit needs at least one member for its base".into()))?;
    presheaf_colimit_on(&a, phi, members, diagram)
}

/// As `presheaf_colimit`, with the base given explicitly (needed when the
/// weight's domain is empty).
pub fn presheaf_colimit_on(
    a: &Arc<FinCategory>,
    phi: &Presheaf,
    members: &[Presheaf],
    diagram: &PresheafDiagram,
) -> Result<Presheaf> {
    let k = phi.base();
    let at = |o: Obj| -> Result<(SetFunctor, WeightedColimit)> {
        let s = Presheaf::covariant(
            k,
            k.objects().map(|x| members[diagram.objects[x]].size(o)).collect(),
            |u, e| diagram.arrows[u].apply(o, e),
        )?;
        let w = weighted_colimit(phi, &s)?;
        Ok((s, w))
    };
    let pointwise = a.objects().map(at).collect::<Result<Vec<_>>>()?;
    let sizes = pointwise.iter().map(|(_, w)| w.size).collect();
    let mut actions = Vec::with_capacity(a.morphism_count());
    for f in a.morphisms() {
        let (o, o2) = (a.src(f), a.tgt(f));
        let (s2, w2) = &pointwise[o2];
        let mut map = vec![usize::MAX; w2.size];
        for (x, e) in phi.elements() {
            let member = &members[diagram.objects[x]];
            for v in 0..s2.size(x) {
                map[w2.class(x, e, v)] = pointwise[o].1.class(x, e, member.act(f, v));
            }
        }
        actions.push(map);
    }
    Presheaf::new(a.clone(), sizes, actions)
}

/// How a member of a collection was obtained.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Representable(Obj),
    Colimit {
        weight: String,
        phi: Presheaf,
        diagram: PresheafDiagram,
    },
}

/// A finite set of presheaves on one base, one per isomorphism class.
#[derive(Clone, Debug)]
pub struct PresheafCollection {
    base: Arc<FinCategory>,
    members: Vec<Presheaf>,
    provenance: Vec<Provenance>,
    buckets: HashMap<Vec<usize>, Vec<usize>>,
}

impl PresheafCollection {
    pub fn new(base: &Arc<FinCategory>) -> PresheafCollection {
        PresheafCollection {
            base: base.clone(),
            members: Vec::new(),
            provenance: Vec::new(),
            buckets: HashMap::new(),
        }
    }

    /// The representables, one per isomorphism class of objects.
    pub fn representables(base: &Arc<FinCategory>) -> PresheafCollection {
        let mut c = PresheafCollection::new(base);
        for o in base.objects() {
            c.insert(Presheaf::representable(base, o), Provenance::Representable(o));
        }
        c
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn members(&self) -> &[Presheaf] {
        &self.members
    }

    pub fn provenance(&self) -> &[Provenance] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// The member isomorphic to `p`, if any.
    pub fn find(&self, p: &Presheaf) -> Option<usize> {
        self.buckets
            .get(&p.invariant_profile())?
            .iter()
            .copied()
            .find(|&i| self.members[i].is_isomorphic(p))
    }

    /// Adds `p` unless an isomorphic member exists; returns its index and
    /// whether it was new.
    pub fn insert(&mut self, p: Presheaf, provenance: Provenance) -> (usize, bool) {
        if let Some(i) = self.find(&p) {
            return (i, false);
        }
        let i = self.members.len();
        self.buckets.entry(p.invariant_profile()).or_default().push(i);
        self.members.push(p);
        self.provenance.push(provenance);
        (i, true)
    }

    /// Recomputes a member from its provenance and checks it is isomorphic
    /// to what is stored.
    pub fn replay(&self, i: usize) -> Result<bool> {
        let rebuilt = match &self.provenance[i] {
            Provenance::Representable(o) => Presheaf::representable(&self.base, *o),
            Provenance::Colimit { phi, diagram, .. } => presheaf_colimit_on(&self.base, phi, &self.members, diagram)?,
        };
        Ok(rebuilt.is_isomorphic(&self.members[i]))
    }

    pub fn replay_all(&self) -> Result<bool> {
        for i in 0..self.len() {
            if !self.replay(i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The full subcategory of presheaves on the members.
    pub fn category(&self) -> Result<PresheafCategory> {
        let names = (0..self.len()).map(|i| format!("P{i}")).collect();
        PresheafCategory::new(self.members.clone(), names)
    }

    /// `Lan_Y Y` at each member: the colimit of the representables weighted
    /// by `Nat(Y-, F)` must give back `F`.
    pub fn lan_yoneda_is_identity(&self) -> Result<bool> {
        let a = &self.base;
        let reps: Vec<Presheaf> = a.objects().map(|o| Presheaf::representable(a, o)).collect();
        let diagram = PresheafDiagram {
            objects: a.objects().collect(),
            arrows: a.morphisms().map(|u| yoneda_arrow(a, u)).collect(),
        };
        for f in &self.members {
            let weight = yoneda_weight(f);
            if !presheaf_colimit_on(a, &weight, &reps, &diagram)?.is_isomorphic(f) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// `a |-> Nat(Y(a), F)`, the weight presenting `F` as a colimit of
/// representables. It is isomorphic to `F` itself.
pub fn yoneda_weight(f: &Presheaf) -> Presheaf {
    let a = f.base();
    let sets: Vec<Vec<NatTrans>> = a
        .objects()
        .map(|o| nat_transformations(&Presheaf::representable(a, o), f))
        .collect();
    let actions = a
        .morphisms()
        .map(|u| {
            let yu = yoneda_arrow(a, u);
            let src = &sets[a.src(u)];
            sets[a.tgt(u)]
                .iter()
                .map(|t| {
                    let pulled = t.after(&yu);
                    src.iter()
                        .position(|s| *s == pulled)
                        .expect("closed under precomposition")
                })
                .collect()
        })
        .collect();
    Presheaf::new(a.clone(), sets.iter().map(Vec::len).collect(), actions).expect("Yoneda weight")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::functor::enumerate_functors;
    use crate::generate::random_presheaf;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn yoneda_examples() {
        let i = fixtures::unit();
        assert_eq!(yoneda_embed(&i, 0).sizes(), &[1]);
        let m = fixtures::monoid_m();
        let y = yoneda_embed(&m, 0);
        let e = m.morphism_index("e").unwrap();
        // x . e for x in {1, e}
        assert_eq!(y.action(e), &[e, e]);
        for (_, c) in fixtures::categories() {
            assert!(yoneda_is_fully_faithful(&c));
        }
    }

    #[test]
    fn yoneda_bijection_on_random_presheaves() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (_, c) in fixtures::categories() {
            for _ in 0..3 {
                let f = random_presheaf(&mut rng, &c, 3);
                for b in c.objects() {
                    assert!(yoneda_bijection_holds(&f, b));
                }
            }
        }
    }

    #[test]
    fn lan_along_identity() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for k in [fixtures::span(), fixtures::monoid_m(), fixtures::z3()] {
            let t = random_presheaf(&mut rng, &Arc::new(k.opposite()), 3);
            let id = FinFunctor::identity(&k);
            let l = lan(&id, &t).unwrap();
            assert!(l.functor.is_isomorphic(&t));
            assert!(l.unit.is_iso(&t, &l.restricted(&id).unwrap()));
        }
    }

    #[test]
    fn lan_along_fully_faithful_restricts_back() {
        // the inclusion of M into its idempotent completion is built later;
        // here use the full inclusion of the chain's first two objects
        let chain = fixtures::chain3();
        let (sub, inc) = chain.full_subcategory(&[0, 2]);
        let sub = Arc::new(sub);
        let h = FinFunctor::new(sub.clone(), chain.clone(), vec![0, 2], inc).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..5 {
            let phi = random_presheaf(&mut rng, &sub, 3);
            let l = lan(&h.opposite(), &phi).unwrap();
            assert!(l.functor.precompose(&h).unwrap().is_isomorphic(&phi));
        }
    }

    #[test]
    fn lan_adjunction_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let cats = [
            fixtures::two(),
            fixtures::span(),
            fixtures::monoid_m(),
            fixtures::z2(),
            fixtures::unit(),
        ];
        for _ in 0..12 {
            let a = &cats[rng.gen_range(0..cats.len())];
            let c = &cats[rng.gen_range(0..cats.len())];
            let fs = enumerate_functors(a, c, 1_000_000).unwrap();
            if fs.is_empty() {
                continue;
            }
            let k = &fs[rng.gen_range(0..fs.len())];
            let t = random_presheaf(&mut rng, &Arc::new(a.opposite()), 2);
            let s = random_presheaf(&mut rng, &Arc::new(c.opposite()), 2);
            assert!(lan_adjunction_holds(k, &t, &s).unwrap());
        }
    }

    #[test]
    fn nerve_examples() {
        let two = fixtures::two();
        let g = FinFunctor::identity(&two);
        let nv = nerve(&g);
        for b in two.objects() {
            assert_eq!(nv.presheaves[b], Presheaf::representable(&two, b));
        }
        let i = fixtures::unit();
        let pick = |o| FinFunctor::new(i.clone(), two.clone(), vec![o], vec![two.identity(o)]).unwrap();
        let sizes = |g: &FinFunctor| nerve(g).presheaves.iter().map(|p| p.size(0)).collect::<Vec<_>>();
        assert_eq!(sizes(&pick(0)), vec![1, 1]);
        assert_eq!(sizes(&pick(1)), vec![0, 1]);
        // fully faithful G: the nerve at G(n) is the representable at n
        let chain = fixtures::chain3();
        let (sub, inc) = chain.full_subcategory(&[0, 2]);
        let sub = Arc::new(sub);
        let h = FinFunctor::new(sub.clone(), chain.clone(), vec![0, 2], inc).unwrap();
        let nv = nerve(&h);
        for n in sub.objects() {
            assert!(nv.presheaves[h.obj(n)].is_isomorphic(&Presheaf::representable(&sub, n)));
        }
        for (m, t) in nv.actions.iter().enumerate() {
            let (s, d) = (chain.src(m), chain.tgt(m));
            assert!(t.validate(&nv.presheaves[s], &nv.presheaves[d]).is_ok());
        }
    }

    #[test]
    fn collections_deduplicate_and_replay() {
        let z2 = fixtures::z2();
        let mut c = PresheafCollection::representables(&z2);
        let y = Presheaf::representable(&z2, 0);
        let swapped = Presheaf::new(z2.clone(), vec![2], vec![vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(c.insert(swapped, Provenance::Representable(0)), (0, false));
        // coproduct of Y with itself as a weighted colimit of a discrete diagram
        let d2 = fixtures::discrete2();
        let diagram = PresheafDiagram {
            objects: vec![0, 0],
            arrows: vec![NatTrans::identity(&y), NatTrans::identity(&y)],
        };
        let sum = presheaf_colimit(&fixtures::coproduct_weight(), c.members(), &diagram).unwrap();
        assert_eq!(sum.sizes(), &[4]);
        let prov = Provenance::Colimit {
            weight: "coproduct".into(),
            phi: Presheaf::constant(&d2, 1),
            diagram,
        };
        assert_eq!(c.insert(sum, prov), (1, true));
        assert!(c.replay_all().unwrap());
        assert!(c.lan_yoneda_is_identity().unwrap());
    }

    #[test]
    fn yoneda_weight_is_isomorphic_to_the_presheaf() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        for (_, c) in fixtures::categories() {
            let f = random_presheaf(&mut rng, &c, 2);
            assert!(yoneda_weight(&f).is_isomorphic(&f));
        }
    }
}
