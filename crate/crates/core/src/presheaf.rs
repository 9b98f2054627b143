//! Set-valued presheaves on finite categories and the maps between them.
//!
//! A presheaf on `K` assigns to each object a finite set `0..n` and to each
//! morphism `f: a -> b` a function `set(b) -> set(a)`. A covariant functor
//! `K -> FinSet` is stored as a presheaf on `K^op`; since the opposite keeps
//! object and morphism indices, its action tables read the covariant way.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use crate::category::{Arrow, FinCategory, Mor, Obj};
use crate::functor::FinFunctor;
use crate::validate::{ValidationReport, Violation};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Presheaf {
    base: Arc<FinCategory>,
    sets: Vec<usize>,
    actions: Vec<Vec<usize>>,
}

/// A covariant functor into finite sets, stored as a presheaf on the
/// opposite of its domain.
pub type SetFunctor = Presheaf;

impl Presheaf {
    pub fn from_parts(base: Arc<FinCategory>, sets: Vec<usize>, actions: Vec<Vec<usize>>) -> Result<Self> {
        if sets.len() != base.object_count() || actions.len() != base.morphism_count() {
            return Err(Error::MalformedTable("presheaf tables do not cover the base".into()));
        }
        for f in base.morphisms() {
            let act = &actions[f];
            if act.len() != sets[base.tgt(f)] || act.iter().any(|&x| x >= sets[base.src(f)]) {
                return Err(Error::MalformedTable(format!(
                    "action of {} is not a function set({}) -> set({})",
                    base.morphism_name(f),
                    base.object_name(base.tgt(f)),
                    base.object_name(base.src(f))
                )));
            }
        }
        Ok(Self { base, sets, actions })
    }

    pub fn new(base: Arc<FinCategory>, sets: Vec<usize>, actions: Vec<Vec<usize>>) -> Result<Self> {
        let p = Self::from_parts(base, sets, actions)?;
        p.validate().into_result()?;
        Ok(p)
    }

    /// Builds the action tables from an element-wise rule `act(f, x)`.
    pub fn from_fn(base: Arc<FinCategory>, sets: Vec<usize>, act: impl Fn(Mor, usize) -> usize) -> Result<Self> {
        let actions = base
            .morphisms()
            .map(|f| (0..sets[base.tgt(f)]).map(|x| act(f, x)).collect())
            .collect();
        Self::new(base, sets, actions)
    }

    /// A covariant functor `K -> FinSet` from its sizes and covariant
    /// action `act(f, x)` for `f: a -> b`, `x` in the set at `a`.
    pub fn covariant(k: &FinCategory, sets: Vec<usize>, act: impl Fn(Mor, usize) -> usize) -> Result<SetFunctor> {
        Self::from_fn(Arc::new(k.opposite()), sets, act)
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new("presheaf");
        let c = &*self.base;
        for o in c.objects() {
            let id = &self.actions[c.identity(o)];
            if id.iter().enumerate().any(|(x, &y)| x != y) {
                report.push(Violation::IdentityActionNotTrivial {
                    object: c.object_name(o).into(),
                });
            }
        }
        for f in c.morphisms() {
            for g in c.out_of(c.tgt(f)) {
                let gf = c.compose(g, f);
                let ok = (0..self.sets[c.tgt(g)]).all(|x| self.actions[gf][x] == self.actions[f][self.actions[g][x]]);
                if !ok {
                    report.push(Violation::ContravarianceBroken {
                        g: c.morphism_name(g).into(),
                        f: c.morphism_name(f).into(),
                    });
                }
            }
        }
        report
    }

    /// The constant presheaf at an `n`-element set.
    pub fn constant(base: &Arc<FinCategory>, n: usize) -> Presheaf {
        Presheaf {
            base: base.clone(),
            sets: vec![n; base.object_count()],
            actions: vec![(0..n).collect(); base.morphism_count()],
        }
    }

    /// `K(-, b)`. Element `i` of the set at `x` is `K.hom(x, b)[i]`.
    pub fn representable(base: &Arc<FinCategory>, b: Obj) -> Presheaf {
        let c = &**base;
        let sets = c.objects().map(|x| c.hom(x, b).len()).collect();
        let actions = c
            .morphisms()
            .map(|u| {
                c.hom(c.tgt(u), b)
                    .iter()
                    .map(|&m| Self::hom_position(c, c.compose(m, u)))
                    .collect()
            })
            .collect();
        Presheaf {
            base: base.clone(),
            sets,
            actions,
        }
    }

    /// `K(a, -)` as a covariant functor, i.e. a presheaf on `K^op`.
    pub fn corepresentable(base: &Arc<FinCategory>, a: Obj) -> Presheaf {
        Presheaf::representable(&Arc::new(base.opposite()), a)
    }

    /// Position of a morphism within its hom-set.
    pub fn hom_position(c: &FinCategory, m: Mor) -> usize {
        c.hom(c.src(m), c.tgt(m))
            .iter()
            .position(|&x| x == m)
            .expect("morphism lies in its hom-set")
    }

    pub fn base(&self) -> &Arc<FinCategory> {
        &self.base
    }

    pub fn size(&self, o: Obj) -> usize {
        self.sets[o]
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sets
    }

    pub fn total_size(&self) -> usize {
        self.sets.iter().sum()
    }

    pub fn max_size(&self) -> usize {
        self.sets.iter().copied().max().unwrap_or(0)
    }

    /// The action of `f: a -> b` as a function `set(b) -> set(a)`.
    pub fn action(&self, f: Mor) -> &[usize] {
        &self.actions[f]
    }

    pub fn actions(&self) -> &[Vec<usize>] {
        &self.actions
    }

    pub fn act(&self, f: Mor, x: usize) -> usize {
        self.actions[f][x]
    }

    /// Offsets of each object's block in the flat element numbering.
    pub fn offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.sets
            .iter()
            .map(|&n| {
                let o = acc;
                acc += n;
                o
            })
            .collect()
    }

    /// All elements as `(object, element)` pairs in flat order.
    pub fn elements(&self) -> Vec<(Obj, usize)> {
        self.base
            .objects()
            .flat_map(|o| (0..self.sets[o]).map(move |x| (o, x)))
            .collect()
    }

    /// `self . G^op` for `G: Y -> base`, a presheaf on `Y`.
    pub fn precompose(&self, g: &FinFunctor) -> Result<Presheaf> {
        if **g.target() != *self.base {
            return Err(Error::DomainMismatch(
                "functor does not land in the presheaf's base".into(),
            ));
        }
        let y = g.source();
        Ok(Presheaf {
            base: y.clone(),
            sets: y.objects().map(|o| self.sets[g.obj(o)]).collect(),
            actions: y.morphisms().map(|f| self.actions[g.mor(f)].clone()).collect(),
        })
    }

    /// A cheap isomorphism invariant: per object the set size, per morphism
    /// the image size and fixed-point count.
    pub fn invariant_profile(&self) -> Vec<usize> {
        let mut profile = self.sets.clone();
        for f in self.base.morphisms() {
            let act = &self.actions[f];
            let mut img = act.clone();
            img.sort_unstable();
            img.dedup();
            profile.push(img.len());
            if self.base.src(f) == self.base.tgt(f) {
                profile.push(act.iter().enumerate().filter(|(x, &y)| *x == y).count());
            }
        }
        profile
    }

    /// An isomorphism `self -> other` when one exists.
    pub fn find_iso(&self, other: &Presheaf) -> Option<NatTrans> {
        if *self.base != *other.base || self.sets != other.sets {
            return None;
        }
        if self.invariant_profile() != other.invariant_profile() {
            return None;
        }
        let mut found = None;
        for_each_nat(self, other, true, |comps| {
            found = Some(NatTrans {
                components: comps.to_vec(),
            });
            ControlFlow::Break(())
        });
        found
    }

    pub fn is_isomorphic(&self, other: &Presheaf) -> bool {
        self.find_iso(other).is_some()
    }
}

/// A morphism of presheaves: one function `source(k) -> target(k)` per object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NatTrans {
    pub components: Vec<Vec<usize>>,
}

impl NatTrans {
    pub fn identity(p: &Presheaf) -> NatTrans {
        NatTrans {
            components: p.sizes().iter().map(|&n| (0..n).collect()).collect(),
        }
    }

    /// `self` after `first`.
    pub fn after(&self, first: &NatTrans) -> NatTrans {
        NatTrans {
            components: first
                .components
                .iter()
                .zip(&self.components)
                .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    pub fn apply(&self, k: Obj, x: usize) -> usize {
        self.components[k][x]
    }

    pub fn validate(&self, source: &Presheaf, target: &Presheaf) -> ValidationReport {
        let mut report = ValidationReport::new("natural transformation");
        let c = source.base();
        if self.components.len() != c.object_count() {
            report.push(Violation::ComponentOutOfRange { object: "<all>".into() });
            return report;
        }
        for k in c.objects() {
            let comp = &self.components[k];
            if comp.len() != source.size(k) || comp.iter().any(|&y| y >= target.size(k)) {
                report.push(Violation::ComponentOutOfRange {
                    object: c.object_name(k).into(),
                });
            }
        }
        if !report.is_ok() {
            return report;
        }
        for u in c.morphisms() {
            let (a, b) = (c.src(u), c.tgt(u));
            for x in 0..source.size(b) {
                if target.act(u, self.components[b][x]) != self.components[a][source.act(u, x)] {
                    report.push(Violation::NaturalityBroken {
                        morphism: c.morphism_name(u).into(),
                        element: x,
                    });
                }
            }
        }
        report
    }

    pub fn is_iso(&self, source: &Presheaf, target: &Presheaf) -> bool {
        source.base().objects().all(|k| {
            if source.size(k) != target.size(k) {
                return false;
            }
            let mut seen = vec![false; target.size(k)];
            self.components[k]
                .iter()
                .all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn inverse(&self, source: &Presheaf, target: &Presheaf) -> Option<NatTrans> {
        if !self.is_iso(source, target) {
            return None;
        }
        let components = self
            .components
            .iter()
            .map(|comp| {
                let mut inv = vec![0; comp.len()];
                for (x, &y) in comp.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Some(NatTrans { components })
    }
}

/// Enumerates the natural transformations `source -> target` element by
/// element. Assigning an element `x` of `source(b)` forces, for every
/// `u: a -> b`, the image of `source(u)(x)`; conflicts prune the branch.
/// With `injective` set, components are also required to be injective.
pub fn for_each_nat(
    source: &Presheaf,
    target: &Presheaf,
    injective: bool,
    mut visit: impl FnMut(&[Vec<usize>]) -> ControlFlow<()>,
) {
    let c = source.base();
    debug_assert_eq!(**c, **target.base());
    if c.objects().any(|k| source.size(k) > 0 && target.size(k) == 0) {
        return;
    }
    if injective && c.objects().any(|k| source.size(k) > target.size(k)) {
        return;
    }
    let into: Vec<Vec<Mor>> = c.objects().map(|b| c.into_obj(b).collect()).collect();
    let mut solver = NatSolver {
        source,
        target,
        into,
        injective,
        value: source.sizes().iter().map(|&n| vec![None; n]).collect(),
        used: target.sizes().iter().map(|&n| vec![false; n]).collect(),
        trail: Vec::new(),
        order: source.elements(),
    };
    let _ = solver.search(0, &mut visit);
}

pub fn nat_transformations(source: &Presheaf, target: &Presheaf) -> Vec<NatTrans> {
    let mut out = Vec::new();
    for_each_nat(source, target, false, |comps| {
        out.push(NatTrans {
            components: comps.to_vec(),
        });
        ControlFlow::Continue(())
    });
    out
}

pub fn count_nat(source: &Presheaf, target: &Presheaf) -> usize {
    let mut n = 0;
    for_each_nat(source, target, false, |_| {
        n += 1;
        ControlFlow::Continue(())
    });
    n
}

struct NatSolver<'a> {
    source: &'a Presheaf,
    target: &'a Presheaf,
    into: Vec<Vec<Mor>>,
    injective: bool,
    value: Vec<Vec<Option<usize>>>,
    used: Vec<Vec<bool>>,
    trail: Vec<(Obj, usize)>,
    order: Vec<(Obj, usize)>,
}

impl NatSolver<'_> {
    fn search(&mut self, from: usize, visit: &mut impl FnMut(&[Vec<usize>]) -> ControlFlow<()>) -> ControlFlow<()> {
        let next = (from..self.order.len()).find(|&i| {
            let (k, x) = self.order[i];
            self.value[k][x].is_none()
        });
        let Some(i) = next else {
            let comps: Vec<Vec<usize>> = self
                .value
                .iter()
                .map(|c| c.iter().map(|v| v.unwrap()).collect())
                .collect();
            return visit(&comps);
        };
        let (k, x) = self.order[i];
        for y in 0..self.target.size(k) {
            let mark = self.trail.len();
            if self.assign(k, x, y) && self.search(i + 1, visit).is_break() {
                self.undo(mark);
                return ControlFlow::Break(());
            }
            self.undo(mark);
        }
        ControlFlow::Continue(())
    }

    fn assign(&mut self, k: Obj, x: usize, y: usize) -> bool {
        let c = self.source.base().clone();
        let mut queue = vec![(k, x, y)];
        while let Some((b, x, y)) = queue.pop() {
            match self.value[b][x] {
                Some(v) if v == y => continue,
                Some(_) => return false,
                None => {
                    if self.injective && self.used[b][y] {
                        return false;
                    }
                    self.value[b][x] = Some(y);
                    self.used[b][y] = true;
                    self.trail.push((b, x));
                }
            }
            for &u in &self.into[b] {
                queue.push((c.src(u), self.source.act(u, x), self.target.act(u, y)));
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (b, x) = self.trail.pop().unwrap();
            let y = self.value[b][x].take().unwrap();
            self.used[b][y] = false;
        }
    }
}

/// A finite full subcategory of a presheaf category: objects are the given
/// presheaves and morphisms all natural transformations between them.
#[derive(Clone, Debug)]
pub struct PresheafCategory {
    pub category: Arc<FinCategory>,
    pub members: Vec<Presheaf>,
    /// The natural transformation behind each morphism of `category`.
    pub arrows: Vec<NatTrans>,
}

impl PresheafCategory {
    pub fn new(members: Vec<Presheaf>, names: Vec<String>) -> Result<PresheafCategory> {
        if members.len() != names.len() {
            return Err(Error::MalformedTable("one name per member required".into()));
        }
        if let Some(first) = members.first() {
            if members.iter().any(|p| **p.base() != **first.base()) {
                return Err(Error::DomainMismatch("members live over different bases".into()));
            }
        }
        let n = members.len();
        let mut morphisms = Vec::new();
        let mut arrows = Vec::new();
        let mut lookup = HashMap::new();
        let mut identities = vec![0; n];
        for i in 0..n {
            for j in 0..n {
                for (idx, t) in nat_transformations(&members[i], &members[j]).into_iter().enumerate() {
                    let is_id = i == j && t == NatTrans::identity(&members[i]);
                    let name = if is_id {
                        format!("id_{}", names[i])
                    } else {
                        format!("{}->{}#{}", names[i], names[j], idx)
                    };
                    if is_id {
                        identities[i] = morphisms.len();
                    }
                    lookup.insert((i, j, t.clone()), morphisms.len());
                    morphisms.push(Arrow { name, src: i, tgt: j });
                    arrows.push(t);
                }
            }
        }
        let mut composites = Vec::new();
        for (f, af) in morphisms.iter().enumerate() {
            for (g, ag) in morphisms.iter().enumerate() {
                if af.tgt == ag.src {
                    let h = arrows[g].after(&arrows[f]);
                    composites.push((g, f, lookup[&(af.src, ag.tgt, h)]));
                }
            }
        }
        let category = FinCategory::from_parts(names, morphisms, identities, composites)?;
        Ok(PresheafCategory {
            category: Arc::new(category),
            members,
            arrows,
        })
    }

    /// The morphism of `category` realizing a natural transformation.
    pub fn morphism_of(&self, from: Obj, to: Obj, t: &NatTrans) -> Option<Mor> {
        self.category
            .hom(from, to)
            .iter()
            .copied()
            .find(|&m| self.arrows[m] == *t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn monoid_m() -> Arc<FinCategory> {
        Arc::new(FinCategory::monoid(&["1", "e"], |a, b| a | b).unwrap())
    }

    #[test]
    fn representable_on_monoid_is_right_multiplication() {
        let y = Presheaf::representable(&monoid_m(), 0);
        assert_eq!(y.sizes(), &[2]);
        // x . e for x in {1, e}
        assert_eq!(y.action(1), &[1, 1]);
        assert!(y.validate().is_ok());
    }

    #[test]
    fn broken_contravariance_is_reported() {
        let z2 = Arc::new(FinCategory::cyclic_group(2));
        // g acting as a constant map breaks g.g = 1
        let p = Presheaf::from_parts(z2, vec![2], vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert!(!p.validate().is_ok());
    }

    #[test]
    fn nat_counts_against_direct_enumeration() {
        let m = monoid_m();
        let y = Presheaf::representable(&m, 0);
        // endomorphisms of Y* correspond to M
        assert_eq!(count_nat(&y, &y), 2);
        let one = Presheaf::constant(&m, 1);
        assert_eq!(count_nat(&one, &y), 1);
        assert_eq!(count_nat(&y, &one), 1);
        let empty = Presheaf::constant(&m, 0);
        assert_eq!(count_nat(&empty, &y), 1);
        assert_eq!(count_nat(&y, &empty), 0);
    }

    #[test]
    fn iso_search() {
        let z2 = Arc::new(FinCategory::cyclic_group(2));
        let y = Presheaf::representable(&z2, 0);
        let two = Presheaf::constant(&z2, 2);
        assert!(!y.is_isomorphic(&two));
        let swapped = Presheaf::new(z2.clone(), vec![2], vec![vec![0, 1], vec![1, 0]]).unwrap();
        let iso = y.find_iso(&swapped).unwrap();
        assert!(iso.validate(&y, &swapped).is_ok());
        assert!(iso.is_iso(&y, &swapped));
    }

    #[test]
    fn presheaf_category_on_monoid() {
        let m = monoid_m();
        let members = vec![Presheaf::representable(&m, 0), Presheaf::constant(&m, 1)];
        let pc = PresheafCategory::new(members, vec!["Y".into(), "E".into()]).unwrap();
        assert!(pc.category.validate().is_ok());
        let c = &pc.category;
        assert_eq!(
            [
                c.hom(0, 0).len(),
                c.hom(0, 1).len(),
                c.hom(1, 0).len(),
                c.hom(1, 1).len()
            ],
            [2, 1, 1, 1]
        );
    }
}
