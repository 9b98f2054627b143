//! Skeletons and equivalence search between finite categories.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::category::{FinCategory, Mor, Obj};
use crate::functor::{for_each_isomorphism, FinFunctor, FunctorTrans};
use crate::Result;

pub const DEFAULT_BUDGET: u64 = 1_000_000;

/// A skeleton of a category: one representative per isomorphism class.
#[derive(Clone, Debug)]
pub struct Skeleton {
    pub category: Arc<FinCategory>,
    /// Representative object (in the original category) of each class.
    pub representatives: Vec<Obj>,
    /// Class index of every original object.
    pub class_of: Vec<usize>,
    /// A chosen isomorphism `x -> rep(x)` for every original object.
    pub to_rep: Vec<Mor>,
    /// Inclusion of skeleton morphisms into the original category.
    pub inclusion: Vec<Mor>,
}

pub fn skeleton(c: &FinCategory) -> Skeleton {
    let mut representatives: Vec<Obj> = Vec::new();
    let mut class_of = Vec::with_capacity(c.object_count());
    let mut to_rep = Vec::with_capacity(c.object_count());
    for x in c.objects() {
        match representatives
            .iter()
            .enumerate()
            .find_map(|(i, &r)| c.find_iso(x, r).map(|iso| (i, iso)))
        {
            Some((i, iso)) => {
                class_of.push(i);
                to_rep.push(iso);
            }
            None => {
                class_of.push(representatives.len());
                to_rep.push(c.identity(x));
                representatives.push(x);
            }
        }
    }
    let (sub, inclusion) = c.full_subcategory(&representatives);
    Skeleton {
        category: Arc::new(sub),
        representatives,
        class_of,
        to_rep,
        inclusion,
    }
}

impl Skeleton {
    /// The retraction `c -> skeleton`, sending `m: x -> y` to
    /// `to_rep(y) . m . to_rep(x)^-1`.
    fn retraction(&self, c: &Arc<FinCategory>) -> FinFunctor {
        let lookup: HashMap<Mor, Mor> = self.inclusion.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        let mor_map = c
            .morphisms()
            .map(|m| {
                let (x, y) = (c.src(m), c.tgt(m));
                let back = c.inverse(self.to_rep[x]).expect("chosen map is an isomorphism");
                lookup[&c.compose(self.to_rep[y], c.compose(m, back))]
            })
            .collect();
        FinFunctor::from_parts(c.clone(), self.category.clone(), self.class_of.clone(), mor_map)
            .expect("retraction tables")
    }

    fn include(&self, c: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor::from_parts(
            self.category.clone(),
            c.clone(),
            self.representatives.clone(),
            self.inclusion.clone(),
        )
        .expect("inclusion tables")
    }
}

/// An adjoint equivalence `forward: A -> B`, `backward: B -> A` with
/// invertible `unit: 1 => backward . forward` and
/// `counit: forward . backward => 1`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub forward: FinFunctor,
    pub backward: FinFunctor,
    pub unit: FunctorTrans,
    pub counit: FunctorTrans,
}

impl Equivalence {
    /// Re-checks functoriality, naturality and invertibility of all parts.
    pub fn verify(&self) -> bool {
        let a = self.forward.source();
        let b = self.forward.target();
        let (Ok(gf), Ok(fg)) = (self.backward.after(&self.forward), self.forward.after(&self.backward)) else {
            return false;
        };
        self.forward.validate().is_ok()
            && self.backward.validate().is_ok()
            && self.unit.validate(&FinFunctor::identity(a), &gf).is_ok()
            && self.counit.validate(&fg, &FinFunctor::identity(b)).is_ok()
            && self.unit.is_iso(a)
            && self.counit.is_iso(b)
    }
}

/// Object signature used to prune the isomorphism search.
fn signature(c: &FinCategory, x: Obj) -> (usize, Vec<usize>, Vec<usize>) {
    let mut out: Vec<usize> = c.objects().map(|y| c.hom(x, y).len()).collect();
    let mut inn: Vec<usize> = c.objects().map(|y| c.hom(y, x).len()).collect();
    out.sort_unstable();
    inn.sort_unstable();
    (c.hom(x, x).len(), out, inn)
}

/// An isomorphism of categories, as object and morphism maps.
pub fn find_isomorphism(a: &FinCategory, b: &FinCategory, budget: u64) -> Result<Option<(Vec<Obj>, Vec<Mor>)>> {
    let sig_b: Vec<_> = b.objects().map(|y| signature(b, y)).collect();
    let candidates = a
        .objects()
        .map(|x| {
            let sx = signature(a, x);
            b.objects().filter(|&y| sig_b[y] == sx).collect()
        })
        .collect();
    let mut found = None;
    for_each_isomorphism(a, b, budget, candidates, |objs, mors| {
        found = Some((objs.to_vec(), mors.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// Searches for an equivalence by skeletonizing both sides and looking for
/// an isomorphism between the skeletons.
pub fn find_equivalence(a: &Arc<FinCategory>, b: &Arc<FinCategory>, budget: u64) -> Result<Option<Equivalence>> {
    let sa = skeleton(a);
    let sb = skeleton(b);
    let Some((objs, mors)) = find_isomorphism(&sa.category, &sb.category, budget)? else {
        return Ok(None);
    };
    let sigma = FinFunctor::from_parts(sa.category.clone(), sb.category.clone(), objs.clone(), mors.clone())?;
    let mut inv_objs = vec![0; objs.len()];
    for (i, &o) in objs.iter().enumerate() {
        inv_objs[o] = i;
    }
    let mut inv_mors = vec![0; mors.len()];
    for (i, &m) in mors.iter().enumerate() {
        inv_mors[m] = i;
    }
    let sigma_inv = FinFunctor::from_parts(sb.category.clone(), sa.category.clone(), inv_objs, inv_mors)?;

    let forward = sb.include(b).after(&sigma.after(&sa.retraction(a))?)?;
    let backward = sa.include(a).after(&sigma_inv.after(&sb.retraction(b))?)?;
    let unit = FunctorTrans {
        components: sa.to_rep.clone(),
    };
    let counit = FunctorTrans {
        components: b
            .objects()
            .map(|y| b.inverse(sb.to_rep[y]).expect("chosen map is an isomorphism"))
            .collect(),
    };
    let eq = Equivalence {
        forward,
        backward,
        unit,
        counit,
    };
    debug_assert!(eq.verify());
    Ok(Some(eq))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presheaf::{Presheaf, PresheafCategory};

    fn two() -> Arc<FinCategory> {
        Arc::new(FinCategory::free_on_acyclic_graph(&["0", "1"], &[("f", 0, 1)]).unwrap())
    }

    #[test]
    fn self_equivalences() {
        let m = Arc::new(FinCategory::monoid(&["1", "e"], |a, b| a | b).unwrap());
        for c in [two(), m, Arc::new(FinCategory::unit()), Arc::new(FinCategory::empty())] {
            let eq = find_equivalence(&c, &c, DEFAULT_BUDGET).unwrap().unwrap();
            assert!(eq.verify());
        }
    }

    #[test]
    fn two_is_not_unit() {
        assert!(find_equivalence(&two(), &Arc::new(FinCategory::unit()), DEFAULT_BUDGET)
            .unwrap()
            .is_none());
    }

    #[test]
    fn isomorphic_objects_collapse() {
        // two isomorphic copies of Y on Z/2 form a category equivalent to Z/2
        let z2 = Arc::new(FinCategory::cyclic_group(2));
        let y = Presheaf::representable(&z2, 0);
        let pc = PresheafCategory::new(vec![y.clone(), y], vec!["a".into(), "b".into()]).unwrap();
        let eq = find_equivalence(&pc.category, &z2, DEFAULT_BUDGET).unwrap().unwrap();
        assert!(eq.verify());
        assert_eq!(skeleton(&pc.category).representatives.len(), 1);
    }
}
