//! Small projectives, the idempotent-splitting completion, the Isbell
//! adjunction, duality of completions, Morita equivalence, and sampled
//! absoluteness checks.

use std::collections::{HashMap, HashSet};
use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, RngCore};

use crate::category::{Arrow, FinCategory, Mor, Obj};
use crate::equivalence::{find_equivalence, Equivalence};
use crate::functor::{for_each_functor, FinFunctor};
use crate::kan::{yoneda_arrow, yoneda_transformation};
use crate::limits::{
    colimit_in_category, limit_in_category, preserves_colimit_into_sets, preserves_weighted_colimit, weighted_colimit,
    CategoryColimit, CategoryLimit,
};
use crate::presheaf::{count_nat, nat_transformations, NatTrans, Presheaf, PresheafCategory, SetFunctor};
use crate::profunctor::{has_right_adjoint, weight_module, ModuleAdjunction};
use crate::{Error, Result};

/// `L(phi)(k) = Nat(phi, Y k)`, covariant in `k`, with the transformation
/// behind each element.
#[derive(Clone, Debug)]
pub struct IsbellLeft {
    pub functor: SetFunctor,
    pub elements: Vec<Vec<NatTrans>>,
}

pub fn isbell_left(phi: &Presheaf) -> IsbellLeft {
    let k = phi.base();
    let elements: Vec<Vec<NatTrans>> = k
        .objects()
        .map(|o| nat_transformations(phi, &Presheaf::representable(k, o)))
        .collect();
    let index: Vec<HashMap<&NatTrans, usize>> = elements
        .iter()
        .map(|e| e.iter().enumerate().map(|(i, t)| (t, i)).collect())
        .collect();
    let arrows: Vec<NatTrans> = k.morphisms().map(|u| yoneda_arrow(k, u)).collect();
    let functor = Presheaf::covariant(k, elements.iter().map(Vec::len).collect(), |u, x| {
        index[k.tgt(u)][&arrows[u].after(&elements[k.src(u)][x])]
    })
    .expect("Isbell left adjoint is functorial");
    IsbellLeft { functor, elements }
}

/// `R(psi)(k) = Nat(psi, K(k, -))` for a covariant `psi`, with the
/// transformation behind each element.
#[derive(Clone, Debug)]
pub struct IsbellRight {
    pub presheaf: Presheaf,
    pub elements: Vec<Vec<NatTrans>>,
}

pub fn isbell_right(psi: &SetFunctor) -> IsbellRight {
    let kop = psi.base();
    let k = Arc::new(kop.opposite());
    let elements: Vec<Vec<NatTrans>> = k
        .objects()
        .map(|o| nat_transformations(psi, &Presheaf::corepresentable(&k, o)))
        .collect();
    let index: Vec<HashMap<&NatTrans, usize>> = elements
        .iter()
        .map(|e| e.iter().enumerate().map(|(i, t)| (t, i)).collect())
        .collect();
    // u: k -> k' gives K(k', -) -> K(k, -), m |-> m . u
    let pre: Vec<NatTrans> = k
        .morphisms()
        .map(|u| NatTrans {
            components: k
                .objects()
                .map(|x| {
                    k.hom(k.tgt(u), x)
                        .iter()
                        .map(|&m| Presheaf::hom_position(&k, k.compose(m, u)))
                        .collect()
                })
                .collect(),
        })
        .collect();
    let presheaf = Presheaf::from_fn(k.clone(), elements.iter().map(Vec::len).collect(), |u, x| {
        index[k.src(u)][&pre[u].after(&elements[k.tgt(u)][x])]
    })
    .expect("Isbell right adjoint is functorial");
    IsbellRight { presheaf, elements }
}

/// The unit `phi -> R L phi`: `x` in `phi(b)` goes to evaluation at `x`.
pub fn isbell_unit(phi: &Presheaf) -> Result<(Presheaf, NatTrans)> {
    let k = phi.base();
    let l = isbell_left(phi);
    let r = isbell_right(&l.functor);
    let mut components = Vec::with_capacity(k.object_count());
    for b in k.objects() {
        let index: HashMap<&NatTrans, usize> = r.elements[b].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut comp = Vec::with_capacity(phi.size(b));
        for x in 0..phi.size(b) {
            let eval = NatTrans {
                components: k
                    .objects()
                    .map(|b2| l.elements[b2].iter().map(|alpha| alpha.apply(b, x)).collect())
                    .collect(),
            };
            comp.push(
                *index
                    .get(&eval)
                    .ok_or_else(|| Error::InternalMismatch("evaluation is not natural".into()))?,
            );
        }
        components.push(comp);
    }
    let unit = NatTrans { components };
    if !unit.validate(phi, &r.presheaf).is_ok() {
        return Err(Error::InternalMismatch("Isbell unit is not natural".into()));
    }
    Ok((r.presheaf, unit))
}

/// The unit `psi -> L R psi` on the covariant side.
pub fn isbell_counit(psi: &SetFunctor) -> Result<(SetFunctor, NatTrans)> {
    let kop = psi.base();
    let r = isbell_right(psi);
    let l = isbell_left(&r.presheaf);
    let mut components = Vec::with_capacity(kop.object_count());
    for b in kop.objects() {
        let index: HashMap<&NatTrans, usize> = l.elements[b].iter().enumerate().map(|(i, t)| (t, i)).collect();
        let mut comp = Vec::with_capacity(psi.size(b));
        for x in 0..psi.size(b) {
            let eval = NatTrans {
                components: kop
                    .objects()
                    .map(|b2| r.elements[b2].iter().map(|beta| beta.apply(b, x)).collect())
                    .collect(),
            };
            comp.push(
                *index
                    .get(&eval)
                    .ok_or_else(|| Error::InternalMismatch("evaluation is not natural".into()))?,
            );
        }
        components.push(comp);
    }
    let unit = NatTrans { components };
    if !unit.validate(psi, &l.functor).is_ok() {
        return Err(Error::InternalMismatch("Isbell counit is not natural".into()));
    }
    Ok((l.functor, unit))
}

/// Outcome of the small-projective test: the sizes on both sides of the
/// canonical map `phi * L(phi) -> Nat(phi, phi)` and whether it is a
/// bijection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProjectivityReport {
    pub colimit_size: usize,
    pub endo_count: usize,
    pub image_size: usize,
    pub small_projective: bool,
}

pub fn small_projectivity(phi: &Presheaf) -> Result<ProjectivityReport> {
    let k = phi.base();
    let l = isbell_left(phi);
    let colim = weighted_colimit(phi, &l.functor)?;
    let endo_count = count_nat(phi, phi);
    // class (b, x, alpha) |-> (y in phi(b2) |-> phi(alpha_b2(y))(x))
    let mut images: HashMap<usize, NatTrans> = HashMap::new();
    for (b, x) in phi.elements() {
        for (i, alpha) in l.elements[b].iter().enumerate() {
            let class = colim.class(b, x, i);
            let t = NatTrans {
                components: k
                    .objects()
                    .map(|b2| {
                        (0..phi.size(b2))
                            .map(|y| phi.act(k.hom(b2, b)[alpha.apply(b2, y)], x))
                            .collect()
                    })
                    .collect(),
            };
            if let Some(prev) = images.get(&class) {
                if *prev != t {
                    return Err(Error::InternalMismatch("canonical map is not well defined".into()));
                }
            } else {
                images.insert(class, t);
            }
        }
    }
    let image_size = images.values().collect::<HashSet<_>>().len();
    Ok(ProjectivityReport {
        colimit_size: colim.size,
        endo_count,
        image_size,
        small_projective: colim.size == endo_count && image_size == colim.size,
    })
}

pub fn is_small_projective(phi: &Presheaf) -> Result<bool> {
    Ok(small_projectivity(phi)?.small_projective)
}

/// `phi` as a retract of a representable: `r . s = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Retract {
    pub object: Obj,
    pub section: NatTrans,
    pub retraction: NatTrans,
}

/// Exhaustive search for a representable `Y b` and maps `s: phi -> Y b`,
/// `r: Y b -> phi` with `r . s = 1`.
pub fn retract_oracle(phi: &Presheaf) -> Option<Retract> {
    let k = phi.base();
    let id = NatTrans::identity(phi);
    for b in k.objects() {
        let y = Presheaf::representable(k, b);
        for s in nat_transformations(phi, &y) {
            for x in 0..phi.size(b) {
                let r = yoneda_transformation(phi, b, x);
                if r.after(&s) == id {
                    return Some(Retract {
                        object: b,
                        section: s,
                        retraction: r,
                    });
                }
            }
        }
    }
    None
}

/// The idempotent-splitting completion `Q(A)`.
#[derive(Clone, Debug)]
pub struct CauchyCompletion {
    pub base: Arc<FinCategory>,
    pub completion: Arc<FinCategory>,
    /// The idempotent of `A` behind each object of the completion.
    pub idempotents: Vec<Mor>,
    /// The morphism of `A` behind each morphism of the completion.
    pub underlying: Vec<Mor>,
    pub embedding: FinFunctor,
}

pub fn idempotents(a: &FinCategory) -> Vec<Mor> {
    a.morphisms()
        .filter(|&m| a.src(m) == a.tgt(m) && a.compose(m, m) == m)
        .collect()
}

pub fn cauchy_completion(a: &Arc<FinCategory>) -> CauchyCompletion {
    let idem = idempotents(a);
    let names: Vec<String> = idem
        .iter()
        .map(|&p| {
            if a.is_identity(p) {
                a.object_name(a.src(p)).to_string()
            } else {
                format!("({})", a.morphism_name(p))
            }
        })
        .collect();
    let mut arrows = Vec::new();
    let mut underlying = Vec::new();
    let mut lookup = HashMap::new();
    for (i, &p) in idem.iter().enumerate() {
        for (j, &q) in idem.iter().enumerate() {
            for &m in a.hom(a.src(p), a.src(q)) {
                if a.compose(q, a.compose(m, p)) == m {
                    lookup.insert((i, j, m), arrows.len());
                    let name = if a.is_identity(p) && a.is_identity(q) {
                        a.morphism_name(m).to_string()
                    } else {
                        format!("{}:{}->{}", a.morphism_name(m), names[i], names[j])
                    };
                    arrows.push(Arrow { name, src: i, tgt: j });
                    underlying.push(m);
                }
            }
        }
    }
    let identities = idem.iter().enumerate().map(|(i, &p)| lookup[&(i, i, p)]).collect();
    let mut composites = Vec::new();
    for (f, af) in arrows.iter().enumerate() {
        for (g, ag) in arrows.iter().enumerate() {
            if af.tgt == ag.src {
                let h = a.compose(underlying[g], underlying[f]);
                composites.push((g, f, lookup[&(af.src, ag.tgt, h)]));
            }
        }
    }
    let completion = Arc::new(
        FinCategory::from_parts(names, arrows, identities, composites).expect("completion tables are well formed"),
    );
    let object_of: HashMap<Mor, Obj> = idem.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let obj_map: Vec<Obj> = a.objects().map(|o| object_of[&a.identity(o)]).collect();
    let mor_map = a
        .morphisms()
        .map(|m| lookup[&(obj_map[a.src(m)], obj_map[a.tgt(m)], m)])
        .collect();
    let embedding = FinFunctor::from_parts(a.clone(), completion.clone(), obj_map, mor_map).expect("embedding tables");
    CauchyCompletion {
        base: a.clone(),
        completion,
        idempotents: idem,
        underlying,
        embedding,
    }
}

/// Whether every idempotent of `c` splits.
pub fn idempotents_split(c: &FinCategory) -> bool {
    idempotents(c).into_iter().all(|m| {
        let p = c.src(m);
        c.objects().any(|q| {
            c.hom(p, q).iter().any(|&r| {
                c.hom(q, p)
                    .iter()
                    .any(|&s| c.compose(s, r) == m && c.compose(r, s) == c.identity(q))
            })
        })
    })
}

impl CauchyCompletion {
    /// Re-checks the defining properties: a valid category, a fully
    /// faithful embedding, split idempotents, and every object inducing a
    /// small projective presheaf on `A`.
    pub fn verify(&self) -> Result<bool> {
        if !self.completion.validate().is_ok() || !self.embedding.validate().is_ok() {
            return Ok(false);
        }
        if !self.embedding.is_fully_faithful() || !idempotents_split(&self.completion) {
            return Ok(false);
        }
        for q in self.completion.objects() {
            let nerve = crate::limits::hom_into(&self.embedding, q);
            if !is_small_projective(&nerve)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Number of isomorphism classes of objects.
    pub fn class_count(&self) -> usize {
        crate::equivalence::skeleton(&self.completion).representatives.len()
    }
}

/// The identity-on-indices functor `Q(A^op)^op -> Q(A)`, together with a
/// search-found equivalence confirming it.
#[derive(Clone, Debug)]
pub struct DualityWitness {
    pub functor: FinFunctor,
    pub is_isomorphism: bool,
    pub equivalence: Option<Equivalence>,
}

pub fn q_duality(a: &Arc<FinCategory>, budget: u64) -> Result<DualityWitness> {
    let aop = Arc::new(a.opposite());
    let q_op = cauchy_completion(&aop);
    let left = Arc::new(q_op.completion.opposite());
    let q = cauchy_completion(a);
    let object_of: HashMap<Mor, Obj> = q.idempotents.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let obj_map: Vec<Obj> = q_op.idempotents.iter().map(|p| object_of[p]).collect();
    let mut lookup = HashMap::new();
    for m in q.completion.morphisms() {
        lookup.insert((q.completion.src(m), q.completion.tgt(m), q.underlying[m]), m);
    }
    let mor_map = left
        .morphisms()
        .map(|m| {
            lookup
                .get(&(obj_map[left.src(m)], obj_map[left.tgt(m)], q_op.underlying[m]))
                .copied()
                .ok_or_else(|| Error::InternalMismatch("duality does not match homs".into()))
        })
        .collect::<Result<Vec<_>>>()?;
    let functor = FinFunctor::new(left.clone(), q.completion.clone(), obj_map, mor_map)?;
    let is_isomorphism = functor.is_fully_faithful() && {
        let hit: HashSet<Obj> = functor.obj_map().iter().copied().collect();
        hit.len() == q.completion.object_count()
    };
    let equivalence = find_equivalence(&left, &q.completion, budget)?;
    Ok(DualityWitness {
        functor,
        is_isomorphism,
        equivalence,
    })
}

/// Morita equivalence: an equivalence between the idempotent completions.
pub fn morita_equivalent(a: &Arc<FinCategory>, b: &Arc<FinCategory>, budget: u64) -> Result<Option<Equivalence>> {
    find_equivalence(
        &cauchy_completion(a).completion,
        &cauchy_completion(b).completion,
        budget,
    )
}

/// A small projective `phi` on `B` with its covariant partner `psi` and the
/// module adjunction between them.
#[derive(Clone, Debug)]
pub struct DualPair {
    pub phi: Presheaf,
    pub psi: SetFunctor,
    pub adjunction: ModuleAdjunction,
}

pub fn dual_pair(phi: &Presheaf) -> Result<Option<DualPair>> {
    match has_right_adjoint(&weight_module(phi))? {
        Ok(adjunction) => {
            let psi = adjunction.right.row(0);
            Ok(Some(DualPair {
                phi: phi.clone(),
                psi,
                adjunction,
            }))
        }
        Err(_) => Ok(None),
    }
}

/// Both sides of `{psi, F} = phi * F` in a finite category.
#[derive(Clone, Debug)]
pub struct DualCheck {
    pub colimit: Option<CategoryColimit>,
    pub limit: Option<CategoryLimit>,
    /// Both missing, or both present with isomorphic apexes.
    pub agree: bool,
}

pub fn dual_limit_colimit(pair: &DualPair, f: &FinFunctor) -> Result<DualCheck> {
    let colimit = colimit_in_category(&pair.phi, f)?;
    let limit = limit_in_category(&pair.psi, f)?;
    let a = f.target();
    let agree = match (&colimit, &limit) {
        (None, None) => true,
        (Some(c), Some(l)) => a.find_iso(c.apex, l.apex).is_some(),
        _ => false,
    };
    Ok(DualCheck { colimit, limit, agree })
}

/// `Nat(psi, F) = phi * F` for the covariant `F` given.
pub fn flem_holds(pair: &DualPair, f: &SetFunctor) -> Result<bool> {
    Ok(count_nat(&pair.psi, f) == weighted_colimit(&pair.phi, f)?.size)
}

/// One preservation failure found by `check_absolute_sampled`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbsoluteViolation {
    pub category: String,
    pub diagram: Vec<Obj>,
    pub functor: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbsoluteReport {
    pub instances: usize,
    pub checks: usize,
    pub violations: Vec<AbsoluteViolation>,
}

/// A finite category used as a source of sample colimits and functors.
#[derive(Clone, Debug)]
pub struct SampleCategory {
    pub name: String,
    pub category: Arc<FinCategory>,
}

/// Checks, for every diagram `S: K -> A` into a catalog category that has
/// a `phi`-colimit, that every functor from `A` into a catalog category
/// and every representable `A(a, -)` into sets preserves it.
pub fn check_absolute_sampled(phi: &Presheaf, catalog: &[SampleCategory], budget: u64) -> Result<AbsoluteReport> {
    check_absolute(phi, catalog, budget, None)
}

/// As `check_absolute_sampled`, but each colimit is tested against at most
/// `per_instance` functors drawn with `rng`; the representables are always
/// tested.
pub fn check_absolute_random(
    phi: &Presheaf,
    catalog: &[SampleCategory],
    rng: &mut impl Rng,
    per_instance: usize,
    budget: u64,
) -> Result<AbsoluteReport> {
    check_absolute(phi, catalog, budget, Some((rng as &mut dyn RngCore, per_instance)))
}

fn check_absolute(
    phi: &Presheaf,
    catalog: &[SampleCategory],
    budget: u64,
    mut sampler: Option<(&mut dyn RngCore, usize)>,
) -> Result<AbsoluteReport> {
    let k = phi.base();
    let mut report = AbsoluteReport::default();
    for sa in catalog {
        let a = &sa.category;
        let mut diagrams = Vec::new();
        for_each_functor(k, a, budget, |o, m| {
            diagrams.push(FinFunctor::from_parts(k.clone(), a.clone(), o.to_vec(), m.to_vec()));
            ControlFlow::Continue(())
        })?;
        let mut targets: Vec<(String, FinFunctor)> = Vec::new();
        for sb in catalog {
            for_each_functor(a, &sb.category, budget, |o, m| {
                targets.push((
                    format!("{}->{} {:?}", sa.name, sb.name, o),
                    FinFunctor::from_parts(a.clone(), sb.category.clone(), o.to_vec(), m.to_vec())
                        .expect("enumerated functor"),
                ));
                ControlFlow::Continue(())
            })?;
        }
        let corep: Vec<SetFunctor> = a.objects().map(|x| Presheaf::corepresentable(a, x)).collect();
        for s in diagrams {
            let s = s?;
            let Some(colimit) = colimit_in_category(phi, &s)? else {
                continue;
            };
            report.instances += 1;
            let chosen: Vec<&(String, FinFunctor)> = match sampler.as_mut() {
                Some((rng, n)) => targets.choose_multiple(rng, *n).collect(),
                None => targets.iter().collect(),
            };
            for (name, f) in chosen {
                report.checks += 1;
                if let Err(reason) = preserves_weighted_colimit(f, phi, &s, &colimit)? {
                    report.violations.push(AbsoluteViolation {
                        category: sa.name.clone(),
                        diagram: s.obj_map().to_vec(),
                        functor: name.clone(),
                        reason: format!("{reason:?}"),
                    });
                }
            }
            for (x, h) in corep.iter().enumerate() {
                report.checks += 1;
                if let Err(reason) = preserves_colimit_into_sets(h, phi, &s, &colimit)? {
                    report.violations.push(AbsoluteViolation {
                        category: sa.name.clone(),
                        diagram: s.obj_map().to_vec(),
                        functor: format!("{}({}, -)", sa.name, a.object_name(x)),
                        reason: format!("{reason:?}"),
                    });
                }
            }
        }
    }
    Ok(report)
}

/// The category of `Z/2`-sets on the trivial one-point set and the free
/// orbit, with all equivariant maps.
pub fn z2_sets() -> Arc<FinCategory> {
    let z2 = crate::fixtures::z2();
    let trivial = Presheaf::constant(&z2, 1);
    let free = Presheaf::representable(&z2, 0);
    PresheafCategory::new(vec![trivial, free], vec!["1".into(), "Z2".into()])
        .expect("Z/2-sets")
        .category
}

/// Catalog of sample categories with at most three objects.
pub fn sample_catalog() -> Vec<SampleCategory> {
    let mut out: Vec<SampleCategory> = crate::fixtures::categories()
        .into_iter()
        .filter(|(_, c)| c.object_count() <= 3)
        .map(|(n, c)| SampleCategory {
            name: n.to_string(),
            category: c,
        })
        .collect();
    out.push(SampleCategory {
        name: "QM".into(),
        category: cauchy_completion(&crate::fixtures::monoid_m()).completion,
    });
    out.push(SampleCategory {
        name: "Z2Sets".into(),
        category: z2_sets(),
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::equivalence::DEFAULT_BUDGET;
    use crate::fixtures;
    use crate::generate::{presheaves_up_to_iso, random_presheaf};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn small_projective_examples() {
        let two = fixtures::two();
        for b in two.objects() {
            assert!(is_small_projective(&Presheaf::representable(&two, b)).unwrap());
            assert_eq!(retract_oracle(&Presheaf::representable(&two, b)).unwrap().object, b);
        }
        assert!(is_small_projective(&fixtures::e_weight()).unwrap());
        let r = retract_oracle(&fixtures::e_weight()).unwrap();
        assert_eq!(r.object, 0);
        assert!(!is_small_projective(&Presheaf::constant(&two, 0)).unwrap());
        assert!(retract_oracle(&Presheaf::constant(&fixtures::discrete2(), 1)).is_none());
    }

    #[test]
    fn three_procedures_agree_on_small_presheaves() {
        for k in [fixtures::monoid_m(), fixtures::two(), fixtures::z2(), fixtures::span()] {
            for phi in presheaves_up_to_iso(&k, 2) {
                let sp = is_small_projective(&phi).unwrap();
                assert_eq!(sp, retract_oracle(&phi).is_some(), "{phi:?}");
                assert_eq!(sp, has_right_adjoint(&weight_module(&phi)).unwrap().is_ok(), "{phi:?}");
            }
        }
    }

    #[test]
    fn completion_of_m() {
        let m = fixtures::monoid_m();
        let q = cauchy_completion(&m);
        assert!(q.verify().unwrap());
        assert_eq!(q.class_count(), 2);
        let c = &q.completion;
        let sizes: Vec<usize> = [(0, 0), (0, 1), (1, 0), (1, 1)]
            .iter()
            .map(|&(a, b)| c.hom(a, b).len())
            .collect();
        assert_eq!(sizes, vec![2, 1, 1, 1]);
        let i = fixtures::unit();
        assert_eq!(*cauchy_completion(&i).completion, *i);
        let z2 = fixtures::z2();
        assert!(
            find_equivalence(&cauchy_completion(&z2).completion, &z2, DEFAULT_BUDGET)
                .unwrap()
                .is_some()
        );
    }

    #[test]
    fn completion_is_idempotent() {
        for (_, a) in fixtures::categories() {
            let q = cauchy_completion(&a);
            assert!(q.verify().unwrap());
            let qq = cauchy_completion(&q.completion);
            assert!(find_equivalence(&qq.completion, &q.completion, DEFAULT_BUDGET)
                .unwrap()
                .is_some());
        }
    }

    #[test]
    fn isbell_examples() {
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        for (_, b) in fixtures::categories() {
            for o in b.objects() {
                let l = isbell_left(&Presheaf::representable(&b, o));
                assert!(l.functor.is_isomorphic(&Presheaf::corepresentable(&b, o)));
            }
            let phi = random_presheaf(&mut rng, &b, 2);
            let (rl, unit) = isbell_unit(&phi).unwrap();
            assert!(unit.validate(&phi, &rl).is_ok());
            if is_small_projective(&phi).unwrap() {
                assert!(rl.is_isomorphic(&phi));
                assert!(unit.is_iso(&phi, &rl));
            }
            let psi = random_presheaf(&mut rng, &Arc::new(b.opposite()), 2);
            let (lr, counit) = isbell_counit(&psi).unwrap();
            assert!(counit.validate(&psi, &lr).is_ok());
        }
        let e = fixtures::e_weight();
        assert!(isbell_right(&isbell_left(&e).functor).presheaf.is_isomorphic(&e));
    }

    #[test]
    fn duality_and_morita() {
        for a in [fixtures::unit(), fixtures::monoid_m(), fixtures::z2(), fixtures::two()] {
            let w = q_duality(&a, DEFAULT_BUDGET).unwrap();
            assert!(w.is_isomorphism);
            assert!(w.equivalence.is_some());
        }
        let m = fixtures::monoid_m();
        let qm = cauchy_completion(&m).completion;
        assert!(morita_equivalent(&m, &qm, DEFAULT_BUDGET).unwrap().is_some());
        assert!(morita_equivalent(&fixtures::z2(), &fixtures::unit(), DEFAULT_BUDGET)
            .unwrap()
            .is_none());
        for (_, a) in fixtures::categories() {
            assert!(morita_equivalent(&a, &a, DEFAULT_BUDGET).unwrap().is_some());
        }
    }

    #[test]
    fn dual_pair_of_e() {
        let pair = dual_pair(&fixtures::e_weight()).unwrap().unwrap();
        let m = fixtures::monoid_m();
        // inside M neither side exists
        let check = dual_limit_colimit(&pair, &FinFunctor::identity(&m)).unwrap();
        assert!(check.colimit.is_none() && check.limit.is_none() && check.agree);
        // inside Q(M) both exist and agree
        let q = cauchy_completion(&m);
        let check = dual_limit_colimit(&pair, &q.embedding).unwrap();
        assert!(check.colimit.is_some() && check.limit.is_some() && check.agree);
        let mut rng = ChaCha8Rng::seed_from_u64(73);
        for _ in 0..5 {
            let f = random_presheaf(&mut rng, &Arc::new(m.opposite()), 3);
            assert!(flem_holds(&pair, &f).unwrap());
        }
        // the representable pair gives F(b) on both sides
        let two = fixtures::two();
        let pair = dual_pair(&Presheaf::representable(&two, 1)).unwrap().unwrap();
        let check = dual_limit_colimit(&pair, &FinFunctor::identity(&two)).unwrap();
        assert_eq!(check.colimit.unwrap().apex, 1);
        assert_eq!(check.limit.unwrap().apex, 1);
    }

    #[test]
    fn absoluteness_sampled() {
        let catalog = sample_catalog();
        let report = check_absolute_sampled(&fixtures::e_weight(), &catalog, DEFAULT_BUDGET).unwrap();
        assert!(report.instances > 0);
        assert!(report.violations.is_empty(), "{:?}", report.violations.first());
        let orbits = Presheaf::constant(&fixtures::z2(), 1);
        let report = check_absolute_sampled(&orbits, &catalog, DEFAULT_BUDGET).unwrap();
        assert!(!report.violations.is_empty());
    }
}
