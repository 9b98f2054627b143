//! Functors between finite categories, natural transformations between
//! them, and exhaustive functor enumeration.

use std::ops::ControlFlow;
use std::sync::Arc;

use crate::category::{FinCategory, Mor, Obj};
use crate::validate::{ValidationReport, Violation};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinFunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    obj_map: Vec<Obj>,
    mor_map: Vec<Mor>,
}

impl FinFunctor {
    /// Builds a functor after checking table shapes; laws are checked by
    /// [`FinFunctor::validate`].
    pub fn from_parts(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self> {
        if obj_map.len() != source.object_count() || mor_map.len() != source.morphism_count() {
            return Err(Error::MalformedTable("functor tables do not cover the source".into()));
        }
        if obj_map.iter().any(|&o| o >= target.object_count()) || mor_map.iter().any(|&f| f >= target.morphism_count())
        {
            return Err(Error::MalformedTable("functor maps outside its target".into()));
        }
        Ok(Self {
            source,
            target,
            obj_map,
            mor_map,
        })
    }

    pub fn new(
        source: Arc<FinCategory>,
        target: Arc<FinCategory>,
        obj_map: Vec<Obj>,
        mor_map: Vec<Mor>,
    ) -> Result<Self> {
        let f = Self::from_parts(source, target, obj_map, mor_map)?;
        f.validate().into_result()?;
        Ok(f)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new("functor");
        let (s, t) = (&*self.source, &*self.target);
        for f in s.morphisms() {
            let img = self.mor_map[f];
            if t.src(img) != self.obj_map[s.src(f)] || t.tgt(img) != self.obj_map[s.tgt(f)] {
                report.push(Violation::EndpointsNotPreserved {
                    morphism: s.morphism_name(f).into(),
                });
            }
        }
        if !report.is_ok() {
            return report;
        }
        for o in s.objects() {
            if self.mor_map[s.identity(o)] != t.identity(self.obj_map[o]) {
                report.push(Violation::IdentityNotPreserved {
                    object: s.object_name(o).into(),
                });
            }
        }
        for f in s.morphisms() {
            for g in s.out_of(s.tgt(f)) {
                if self.mor_map[s.compose(g, f)] != t.compose(self.mor_map[g], self.mor_map[f]) {
                    report.push(Violation::CompositionNotPreserved {
                        g: s.morphism_name(g).into(),
                        f: s.morphism_name(f).into(),
                    });
                }
            }
        }
        report
    }

    pub fn identity(c: &Arc<FinCategory>) -> FinFunctor {
        FinFunctor {
            source: c.clone(),
            target: c.clone(),
            obj_map: c.objects().collect(),
            mor_map: c.morphisms().collect(),
        }
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    pub fn obj(&self, o: Obj) -> Obj {
        self.obj_map[o]
    }

    pub fn mor(&self, f: Mor) -> Mor {
        self.mor_map[f]
    }

    pub fn obj_map(&self) -> &[Obj] {
        &self.obj_map
    }

    pub fn mor_map(&self) -> &[Mor] {
        &self.mor_map
    }

    /// `self` after `first`.
    pub fn after(&self, first: &FinFunctor) -> Result<FinFunctor> {
        if **first.target() != *self.source {
            return Err(Error::DomainMismatch("functors are not composable".into()));
        }
        Ok(FinFunctor {
            source: first.source.clone(),
            target: self.target.clone(),
            obj_map: first.obj_map.iter().map(|&o| self.obj_map[o]).collect(),
            mor_map: first.mor_map.iter().map(|&f| self.mor_map[f]).collect(),
        })
    }

    /// The same functor between opposite categories.
    pub fn opposite(&self) -> FinFunctor {
        FinFunctor {
            source: Arc::new(self.source.opposite()),
            target: Arc::new(self.target.opposite()),
            obj_map: self.obj_map.clone(),
            mor_map: self.mor_map.clone(),
        }
    }

    pub fn is_faithful(&self) -> bool {
        let s = &self.source;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let hom = s.hom(a, b);
                let mut imgs = hom.iter().map(|&f| self.mor_map[f]).collect::<Vec<_>>();
                imgs.sort_unstable();
                imgs.dedup();
                imgs.len() == hom.len()
            })
        })
    }

    pub fn is_full(&self) -> bool {
        let s = &self.source;
        s.objects().all(|a| {
            s.objects().all(|b| {
                let target_hom = self.target.hom(self.obj_map[a], self.obj_map[b]);
                target_hom
                    .iter()
                    .all(|g| s.hom(a, b).iter().any(|&f| self.mor_map[f] == *g))
            })
        })
    }

    pub fn is_fully_faithful(&self) -> bool {
        self.is_faithful() && self.is_full()
    }

    /// Essentially surjective on objects.
    pub fn is_essentially_surjective(&self) -> bool {
        self.target.objects().all(|b| {
            self.obj_map
                .iter()
                .any(|&fa| fa == b || self.target.find_iso(fa, b).is_some())
        })
    }
}

/// A natural transformation between two functors with common endpoints,
/// one target morphism per source object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorTrans {
    pub components: Vec<Mor>,
}

impl FunctorTrans {
    pub fn validate(&self, from: &FinFunctor, to: &FinFunctor) -> ValidationReport {
        let mut report = ValidationReport::new("natural transformation");
        let (s, t) = (from.source(), from.target());
        for a in s.objects() {
            let c = self.components[a];
            if t.src(c) != from.obj(a) || t.tgt(c) != to.obj(a) {
                report.push(Violation::ComponentOutOfRange {
                    object: s.object_name(a).into(),
                });
            }
        }
        if !report.is_ok() {
            return report;
        }
        for f in s.morphisms() {
            let (a, b) = (s.src(f), s.tgt(f));
            if t.compose(to.mor(f), self.components[a]) != t.compose(self.components[b], from.mor(f)) {
                report.push(Violation::NaturalityBroken {
                    morphism: s.morphism_name(f).into(),
                    element: 0,
                });
            }
        }
        report
    }

    pub fn is_iso(&self, category: &FinCategory) -> bool {
        self.components.iter().all(|&c| category.inverse(c).is_some())
    }
}

/// Visits every functor `source -> target` in lexicographic order of
/// object map then morphism map. The budget bounds the number of search
/// nodes; exceeding it is an error rather than a partial answer.
pub fn for_each_functor(
    source: &FinCategory,
    target: &FinCategory,
    budget: u64,
    visit: impl FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
) -> Result<()> {
    let candidates = vec![target.objects().collect(); source.object_count()];
    search_functors(source, target, budget, candidates, false, visit)
}

/// Visits every isomorphism of categories `source -> target`, trying object
/// images from `candidates` only.
pub fn for_each_isomorphism(
    source: &FinCategory,
    target: &FinCategory,
    budget: u64,
    candidates: Vec<Vec<Obj>>,
    visit: impl FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
) -> Result<()> {
    if source.object_count() != target.object_count() || source.morphism_count() != target.morphism_count() {
        return Ok(());
    }
    search_functors(source, target, budget, candidates, true, visit)
}

fn search_functors(
    source: &FinCategory,
    target: &FinCategory,
    budget: u64,
    candidates: Vec<Vec<Obj>>,
    injective: bool,
    mut visit: impl FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
) -> Result<()> {
    let mut search = FunctorSearch {
        source,
        target,
        budget,
        candidates,
        injective,
        obj_used: vec![false; target.object_count()],
        mor_used: vec![false; target.morphism_count()],
        nodes: 0,
        obj_map: vec![usize::MAX; source.object_count()],
        mor_map: vec![None; source.morphism_count()],
        trail: Vec::new(),
    };
    match search.objects(0, &mut visit) {
        Err(e) => Err(e),
        Ok(_) => Ok(()),
    }
}

pub fn enumerate_functors(
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
    budget: u64,
) -> Result<Vec<FinFunctor>> {
    let mut out = Vec::new();
    for_each_functor(source, target, budget, |objs, mors| {
        out.push(FinFunctor {
            source: source.clone(),
            target: target.clone(),
            obj_map: objs.to_vec(),
            mor_map: mors.to_vec(),
        });
        ControlFlow::Continue(())
    })?;
    Ok(out)
}

struct FunctorSearch<'a> {
    source: &'a FinCategory,
    target: &'a FinCategory,
    budget: u64,
    candidates: Vec<Vec<Obj>>,
    injective: bool,
    obj_used: Vec<bool>,
    mor_used: Vec<bool>,
    nodes: u64,
    obj_map: Vec<Obj>,
    mor_map: Vec<Option<Mor>>,
    trail: Vec<Mor>,
}

impl FunctorSearch<'_> {
    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExceeded { budget: self.budget })
        } else {
            Ok(())
        }
    }

    fn objects(
        &mut self,
        next: usize,
        visit: &mut impl FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let s = self.source;
        if next == s.object_count() {
            let mark = self.trail.len();
            let ok = s
                .objects()
                .all(|o| self.assign(s.identity(o), self.target.identity(self.obj_map[o])));
            let flow = if ok {
                self.morphisms(0, visit)?
            } else {
                ControlFlow::Continue(())
            };
            self.undo(mark);
            return Ok(flow);
        }
        for ci in 0..self.candidates[next].len() {
            let image = self.candidates[next][ci];
            self.tick()?;
            if self.injective && self.obj_used[image] {
                continue;
            }
            let consistent = (0..next).chain(std::iter::once(next)).all(|prev| {
                let pi = if prev == next { image } else { self.obj_map[prev] };
                (s.hom(prev, next).is_empty() || !self.target.hom(pi, image).is_empty())
                    && (s.hom(next, prev).is_empty() || !self.target.hom(image, pi).is_empty())
            });
            if !consistent {
                continue;
            }
            let consistent = consistent
                && (!self.injective
                    || (0..next).chain(std::iter::once(next)).all(|prev| {
                        let pi = if prev == next { image } else { self.obj_map[prev] };
                        s.hom(prev, next).len() == self.target.hom(pi, image).len()
                            && s.hom(next, prev).len() == self.target.hom(image, pi).len()
                    }));
            if !consistent {
                continue;
            }
            self.obj_map[next] = image;
            self.obj_used[image] = true;
            let flow = self.objects(next + 1, visit)?;
            self.obj_used[image] = false;
            if flow.is_break() {
                return Ok(ControlFlow::Break(()));
            }
        }
        self.obj_map[next] = usize::MAX;
        Ok(ControlFlow::Continue(()))
    }

    fn morphisms(
        &mut self,
        next: usize,
        visit: &mut impl FnMut(&[Obj], &[Mor]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        let s = self.source;
        let Some(f) = (next..s.morphism_count()).find(|&f| self.mor_map[f].is_none()) else {
            let mors = self.mor_map.iter().map(|m| m.unwrap()).collect::<Vec<_>>();
            return Ok(visit(&self.obj_map, &mors));
        };
        let (a, b) = (self.obj_map[s.src(f)], self.obj_map[s.tgt(f)]);
        for &candidate in self.target.hom(a, b) {
            self.tick()?;
            let mark = self.trail.len();
            if self.assign(f, candidate) && self.morphisms(f + 1, visit)?.is_break() {
                self.undo(mark);
                return Ok(ControlFlow::Break(()));
            }
            self.undo(mark);
        }
        Ok(ControlFlow::Continue(()))
    }

    /// Assigns `f -> image` and propagates forced composites. Returns false
    /// on conflict; the caller undoes the trail either way.
    fn assign(&mut self, f: Mor, image: Mor) -> bool {
        let s = self.source;
        let t = self.target;
        let mut queue = vec![(f, image)];
        while let Some((f, image)) = queue.pop() {
            match self.mor_map[f] {
                Some(existing) => {
                    if existing != image {
                        return false;
                    }
                    continue;
                }
                None => {
                    if self.injective && self.mor_used[image] {
                        return false;
                    }
                    self.mor_map[f] = Some(image);
                    self.mor_used[image] = true;
                    self.trail.push(f);
                }
            }
            for g in s.out_of(s.tgt(f)) {
                if let Some(gi) = self.mor_map[g] {
                    queue.push((s.compose(g, f), t.compose(gi, image)));
                }
            }
            for e in s.into_obj(s.src(f)) {
                if let Some(ei) = self.mor_map[e] {
                    queue.push((s.compose(f, e), t.compose(image, ei)));
                }
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let f = self.trail.pop().unwrap();
            if let Some(image) = self.mor_map[f].take() {
                self.mor_used[image] = false;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two() -> Arc<FinCategory> {
        Arc::new(FinCategory::free_on_acyclic_graph(&["0", "1"], &[("f", 0, 1)]).unwrap())
    }

    /// Independent count: all object/morphism maps checked against the laws.
    fn brute_force_count(s: &Arc<FinCategory>, t: &Arc<FinCategory>) -> usize {
        let n = s.object_count();
        let m = s.morphism_count();
        let mut count = 0;
        let obj_maps = t.object_count().pow(n as u32);
        let mor_maps = t.morphism_count().pow(m as u32);
        for oi in 0..obj_maps {
            let objs: Vec<_> = (0..n)
                .map(|i| (oi / t.object_count().pow(i as u32)) % t.object_count())
                .collect();
            for mi in 0..mor_maps {
                let mors: Vec<_> = (0..m)
                    .map(|i| (mi / t.morphism_count().pow(i as u32)) % t.morphism_count())
                    .collect();
                let f = FinFunctor::from_parts(s.clone(), t.clone(), objs.clone(), mors).unwrap();
                if f.validate().is_ok() {
                    count += 1;
                }
            }
        }
        count
    }

    #[test]
    fn functor_counts_match_brute_force() {
        let m = Arc::new(FinCategory::monoid(&["1", "e"], |a, b| a | b).unwrap());
        let z2 = Arc::new(FinCategory::cyclic_group(2));
        let unit = Arc::new(FinCategory::unit());
        let cats = [two(), m, z2, unit];
        for s in &cats {
            for t in &cats {
                let fast = enumerate_functors(s, t, 1_000_000).unwrap();
                assert_eq!(fast.len(), brute_force_count(s, t));
                assert!(fast.iter().all(|f| f.validate().is_ok()));
            }
        }
    }

    #[test]
    fn two_to_unit_and_back() {
        let unit = Arc::new(FinCategory::unit());
        assert_eq!(enumerate_functors(&two(), &unit, 100).unwrap().len(), 1);
        assert_eq!(enumerate_functors(&unit, &two(), 100).unwrap().len(), 2);
    }

    #[test]
    fn budget_is_enforced() {
        let z3 = Arc::new(FinCategory::cyclic_group(3));
        let err = enumerate_functors(&z3, &z3, 1).unwrap_err();
        assert!(matches!(err, Error::BudgetExceeded { .. }));
    }

    #[test]
    fn fully_faithful_checks() {
        let unit = Arc::new(FinCategory::unit());
        let pick = FinFunctor::new(unit.clone(), two(), vec![1], vec![two().identity(1)]).unwrap();
        assert!(pick.is_fully_faithful());
        assert!(!pick.is_essentially_surjective());
        let collapse = FinFunctor::new(two(), unit, vec![0, 0], vec![0, 0, 0]).unwrap();
        assert!(!collapse.is_fully_faithful());
        assert!(collapse.is_faithful());
    }
}
