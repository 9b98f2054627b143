//! Modules (profunctors) between finite categories: composition by coends,
//! right liftings and right extensions by ends, and detection of right
//! adjoints.
//!
//! A module `f: A ⇸ B` is a functor `B^op x A -> FinSet`; `f(b, a)` is
//! contravariant in `b` and covariant in `a`.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use crate::category::{FinCategory, Mor, Obj};
use crate::functor::FinFunctor;
use crate::limits::Bifunctor;
use crate::presheaf::{for_each_nat, nat_transformations, NatTrans, Presheaf, SetFunctor};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Profunctor {
    source: Arc<FinCategory>,
    target: Arc<FinCategory>,
    table: Bifunctor,
}

impl Profunctor {
    /// Builds `A ⇸ B` from cell sizes `size(b, a)`, the action
    /// `left(v, a, x)` of `v: b -> b'` mapping `f(b', a) -> f(b, a)`, and the
    /// action `right(u, b, x)` of `u: a -> a'` mapping `f(b, a) -> f(b, a')`.
    pub fn from_fn(
        source: &Arc<FinCategory>,
        target: &Arc<FinCategory>,
        size: impl Fn(Obj, Obj) -> usize,
        left: impl Fn(Mor, Obj, usize) -> usize,
        right: impl Fn(Mor, Obj, usize) -> usize,
    ) -> Result<Profunctor> {
        Ok(Profunctor {
            source: source.clone(),
            target: target.clone(),
            table: Bifunctor::from_fn(target, source, size, left, right)?,
        })
    }

    /// A module from its table, a presheaf on `B x A^op`.
    pub fn from_table(source: &Arc<FinCategory>, target: &Arc<FinCategory>, table: Presheaf) -> Result<Profunctor> {
        Ok(Profunctor {
            source: source.clone(),
            target: target.clone(),
            table: Bifunctor::new(target.clone(), source.clone(), table)?,
        })
    }

    pub fn source(&self) -> &Arc<FinCategory> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FinCategory> {
        &self.target
    }

    /// The module read as a bifunctor `B^op x A -> FinSet`.
    pub fn bifunctor(&self) -> &Bifunctor {
        &self.table
    }

    /// A module `A ⇸ B` from a bifunctor `B^op x A -> FinSet`.
    pub fn from_bifunctor(b: Bifunctor) -> Profunctor {
        Profunctor {
            source: b.co().clone(),
            target: b.contra().clone(),
            table: b,
        }
    }

    /// The table as a presheaf on `B x A^op`, indexed by cell `b * |A| + a`.
    pub fn table(&self) -> &Presheaf {
        self.table.table()
    }

    pub fn cell(&self, b: Obj, a: Obj) -> usize {
        b * self.source.object_count() + a
    }

    pub fn size(&self, b: Obj, a: Obj) -> usize {
        self.table.size(b, a)
    }

    /// For `v: b -> b'`, the map `f(b', a) -> f(b, a)`.
    pub fn left(&self, v: Mor, a: Obj, x: usize) -> usize {
        self.table.left(v, a, x)
    }

    /// For `u: a -> a'`, the map `f(b, a) -> f(b, a')`.
    pub fn right(&self, u: Mor, b: Obj, x: usize) -> usize {
        self.table.right(u, b, x)
    }

    /// `f(-, a)` as a presheaf on `B`.
    pub fn column(&self, a: Obj) -> Presheaf {
        self.table.column(a)
    }

    /// `f(b, -)` as a covariant functor on `A`.
    pub fn row(&self, b: Obj) -> SetFunctor {
        self.table.row(b)
    }

    /// `f(-, u): f(-, a) -> f(-, a')` for `u: a -> a'`.
    pub fn column_arrow(&self, u: Mor) -> NatTrans {
        let a = self.source.src(u);
        NatTrans {
            components: self
                .target
                .objects()
                .map(|b| (0..self.size(b, a)).map(|x| self.right(u, b, x)).collect())
                .collect(),
        }
    }

    /// `f(v, -): f(b', -) -> f(b, -)` for `v: b -> b'`.
    pub fn row_arrow(&self, v: Mor) -> NatTrans {
        let b2 = self.target.tgt(v);
        NatTrans {
            components: self
                .source
                .objects()
                .map(|a| (0..self.size(b2, a)).map(|x| self.left(v, a, x)).collect())
                .collect(),
        }
    }

    pub fn same_endpoints(&self, other: &Profunctor) -> bool {
        *self.source == *other.source && *self.target == *other.target
    }

    pub fn is_isomorphic(&self, other: &Profunctor) -> bool {
        self.same_endpoints(other) && self.table().is_isomorphic(other.table())
    }

    pub fn find_iso(&self, other: &Profunctor) -> Option<ProfMorphism> {
        if !self.same_endpoints(other) {
            return None;
        }
        self.table().find_iso(other.table()).map(|t| ProfMorphism {
            components: t.components,
        })
    }
}

/// A 2-cell between modules with the same endpoints, one function per cell.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ProfMorphism {
    pub components: Vec<Vec<usize>>,
}

impl ProfMorphism {
    pub fn identity(f: &Profunctor) -> ProfMorphism {
        ProfMorphism {
            components: NatTrans::identity(f.table()).components,
        }
    }

    /// `self . first`.
    pub fn after(&self, first: &ProfMorphism) -> ProfMorphism {
        ProfMorphism {
            components: first
                .components
                .iter()
                .zip(&self.components)
                .map(|(f, g)| f.iter().map(|&x| g[x]).collect())
                .collect(),
        }
    }

    pub fn is_valid(&self, from: &Profunctor, to: &Profunctor) -> bool {
        from.same_endpoints(to) && self.as_nat().validate(from.table(), to.table()).is_ok()
    }

    pub fn is_iso(&self, from: &Profunctor, to: &Profunctor) -> bool {
        self.is_valid(from, to) && self.as_nat().is_iso(from.table(), to.table())
    }

    fn as_nat(&self) -> NatTrans {
        NatTrans {
            components: self.components.clone(),
        }
    }
}

/// All 2-cells `from => to`.
pub fn prof_morphisms(from: &Profunctor, to: &Profunctor) -> Vec<ProfMorphism> {
    nat_transformations(from.table(), to.table())
        .into_iter()
        .map(|t| ProfMorphism {
            components: t.components,
        })
        .collect()
}

/// The identity module `A(-, -)`.
pub fn id_module(a: &Arc<FinCategory>) -> Profunctor {
    Profunctor {
        source: a.clone(),
        target: a.clone(),
        table: Bifunctor::hom(a),
    }
}

/// `T_*(b, a) = B(b, T a)` and `T^*(a, b) = B(T a, b)` for `T: A -> B`.
pub fn functor_to_modules(t: &FinFunctor) -> Result<(Profunctor, Profunctor)> {
    let a = t.source();
    let b = t.target();
    let pos = |m: Mor| Presheaf::hom_position(b, m);
    let lower = Profunctor::from_fn(
        a,
        b,
        |y, x| b.hom(y, t.obj(x)).len(),
        |v, x, i| pos(b.compose(b.hom(b.tgt(v), t.obj(x))[i], v)),
        |u, y, i| pos(b.compose(t.mor(u), b.hom(y, t.obj(a.src(u)))[i])),
    )?;
    let upper = Profunctor::from_fn(
        b,
        a,
        |x, y| b.hom(t.obj(x), y).len(),
        |u, y, i| pos(b.compose(b.hom(t.obj(a.tgt(u)), y)[i], t.mor(u))),
        |v, x, i| pos(b.compose(v, b.hom(t.obj(x), b.src(v))[i])),
    )?;
    Ok((lower, upper))
}

/// The module `I ⇸ K` of a presheaf `phi` on `K`.
pub fn weight_module(phi: &Presheaf) -> Profunctor {
    let k = phi.base();
    let i = Arc::new(FinCategory::unit());
    Profunctor::from_fn(&i, k, |x, _| phi.size(x), |v, _, e| phi.act(v, e), |_, _, e| e).expect("module of a presheaf")
}

/// The module `K ⇸ I` of a covariant weight `psi: K -> FinSet`.
pub fn coweight_module(psi: &SetFunctor) -> Profunctor {
    let kop = psi.base();
    let k = Arc::new(kop.opposite());
    let i = Arc::new(FinCategory::unit());
    Profunctor::from_fn(&k, &i, |_, x| psi.size(x), |_, _, e| e, |u, _, e| psi.act(u, e))
        .expect("module of a covariant weight")
}

/// The presheaf on `K` underlying a module `I ⇸ K`.
pub fn module_presheaf(f: &Profunctor) -> Presheaf {
    f.column(0)
}

/// `g . f` for `f: C ⇸ A` and `g: A ⇸ B`, with the class of every
/// representative triple `(a, y in g(b, a), z in f(a, c))`.
#[derive(Clone, Debug)]
pub struct Composite {
    pub profunctor: Profunctor,
    /// Per cell `(b, c)`: start of each `a` block in the flat triple list.
    starts: Vec<Vec<usize>>,
    /// Per cell: the class of each triple.
    classes: Vec<Vec<usize>>,
    /// Per cell: one triple for each class.
    representatives: Vec<Vec<(Obj, usize, usize)>>,
    inner_sizes: Vec<Vec<usize>>,
}

impl Composite {
    fn cell(&self, b: Obj, c: Obj) -> usize {
        self.profunctor.cell(b, c)
    }

    pub fn class(&self, b: Obj, c: Obj, a: Obj, y: usize, z: usize) -> usize {
        let cell = self.cell(b, c);
        self.classes[cell][self.starts[cell][a] + y * self.inner_sizes[cell][a] + z]
    }

    pub fn representative(&self, b: Obj, c: Obj, class: usize) -> (Obj, usize, usize) {
        self.representatives[self.cell(b, c)][class]
    }

    /// Every triple of cell `(b, c)` with its class.
    pub fn triples(&self, b: Obj, c: Obj) -> impl Iterator<Item = (Obj, usize, usize, usize)> + '_ {
        let cell = self.cell(b, c);
        let starts = &self.starts[cell];
        let inner = &self.inner_sizes[cell];
        let classes = &self.classes[cell];
        (0..starts.len()).flat_map(move |a| {
            let end = starts.get(a + 1).copied().unwrap_or(classes.len());
            (starts[a]..end).map(move |i| {
                let k = i - starts[a];
                (a, k / inner[a].max(1), k % inner[a].max(1), classes[i])
            })
        })
    }
}

pub fn compose_with_classes(g: &Profunctor, f: &Profunctor) -> Result<Composite> {
    if *f.target != *g.source {
        return Err(Error::EndpointMismatch(
            "composite g . f needs target(f) = source(g)".into(),
        ));
    }
    let a_cat = &g.source;
    let (bs, cs) = (g.target.object_count(), f.source.object_count());
    let mut starts = Vec::with_capacity(bs * cs);
    let mut classes = Vec::with_capacity(bs * cs);
    let mut representatives = Vec::with_capacity(bs * cs);
    let mut inner_sizes = Vec::with_capacity(bs * cs);
    for b in 0..bs {
        for c in 0..cs {
            let inner: Vec<usize> = a_cat.objects().map(|a| f.size(a, c)).collect();
            let mut st = Vec::with_capacity(inner.len());
            let mut total = 0;
            for a in a_cat.objects() {
                st.push(total);
                total += g.size(b, a) * inner[a];
            }
            let id = |a: Obj, y: usize, z: usize| st[a] + y * inner[a] + z;
            let mut pairs = Vec::new();
            for u in a_cat.morphisms() {
                let (a, a2) = (a_cat.src(u), a_cat.tgt(u));
                for y in 0..g.size(b, a) {
                    for z in 0..f.size(a2, c) {
                        pairs.push((id(a, y, f.left(u, c, z)), id(a2, g.right(u, b, y), z)));
                    }
                }
            }
            let mut uf = petgraph::unionfind::UnionFind::<usize>::new(total);
            for (x, y) in pairs {
                uf.union(x, y);
            }
            let mut label = vec![usize::MAX; total];
            let mut cls = vec![0; total];
            let mut reps = Vec::new();
            for a in a_cat.objects() {
                for y in 0..g.size(b, a) {
                    for z in 0..inner[a] {
                        let i = id(a, y, z);
                        let root = uf.find(i);
                        if label[root] == usize::MAX {
                            label[root] = reps.len();
                            reps.push((a, y, z));
                        }
                        cls[i] = label[root];
                    }
                }
            }
            starts.push(st);
            classes.push(cls);
            representatives.push(reps);
            inner_sizes.push(inner);
        }
    }
    let lookup =
        |cell: usize, a: Obj, y: usize, z: usize| classes[cell][starts[cell][a] + y * inner_sizes[cell][a] + z];
    let profunctor = Profunctor::from_fn(
        &f.source,
        &g.target,
        |b, c| representatives[b * cs + c].len(),
        |v, c, x| {
            let (b, b2) = (g.target.src(v), g.target.tgt(v));
            let (a, y, z) = representatives[b2 * cs + c][x];
            lookup(b * cs + c, a, g.left(v, a, y), z)
        },
        |w, b, x| {
            let (c, c2) = (f.source.src(w), f.source.tgt(w));
            let (a, y, z) = representatives[b * cs + c][x];
            lookup(b * cs + c2, a, y, f.right(w, a, z))
        },
    )?;
    Ok(Composite {
        profunctor,
        starts,
        classes,
        representatives,
        inner_sizes,
    })
}

/// `g . f` for `f: C ⇸ A` and `g: A ⇸ B`.
pub fn compose(g: &Profunctor, f: &Profunctor) -> Result<Profunctor> {
    Ok(compose_with_classes(g, f)?.profunctor)
}

/// `1 . f => f`, acting by the left action.
pub fn left_unitor(f: &Profunctor) -> Result<ProfMorphism> {
    let id = id_module(&f.target);
    let comp = compose_with_classes(&id, f)?;
    Ok(from_representatives(&comp, |b, c, (b2, m, z)| {
        let v = f.target.hom(b, b2)[m];
        f.left(v, c, z)
    }))
}

/// `f . 1 => f`, acting by the right action.
pub fn right_unitor(f: &Profunctor) -> Result<ProfMorphism> {
    let id = id_module(&f.source);
    let comp = compose_with_classes(f, &id)?;
    Ok(from_representatives(&comp, |b, c, (a, y, m)| {
        let u = f.source.hom(a, c)[m];
        f.right(u, b, y)
    }))
}

/// `(h . g) . f => h . (g . f)`.
pub fn associator(h: &Profunctor, g: &Profunctor, f: &Profunctor) -> Result<(Profunctor, Profunctor, ProfMorphism)> {
    let hg = compose_with_classes(h, g)?;
    let left = compose_with_classes(&hg.profunctor, f)?;
    let gf = compose_with_classes(g, f)?;
    let right = compose_with_classes(h, &gf.profunctor)?;
    let map = from_representatives(&left, |d, c, (b, x, z)| {
        let (a, hx, gy) = hg.representative(d, b, x);
        right.class(d, c, a, hx, gf.class(a, c, b, gy, z))
    });
    Ok((left.profunctor, right.profunctor, map))
}

/// A 2-cell out of a composite, given on representatives.
fn from_representatives(comp: &Composite, value: impl Fn(Obj, Obj, (Obj, usize, usize)) -> usize) -> ProfMorphism {
    let p = &comp.profunctor;
    let mut components = Vec::with_capacity(p.target.object_count() * p.source.object_count());
    for b in p.target.objects() {
        for c in p.source.objects() {
            components.push(
                (0..p.size(b, c))
                    .map(|x| value(b, c, comp.representative(b, c, x)))
                    .collect(),
            );
        }
    }
    ProfMorphism { components }
}

/// An end-formula module whose elements are natural transformations.
#[derive(Clone, Debug)]
pub struct EndModule {
    pub profunctor: Profunctor,
    /// Per cell, the natural transformation behind each element.
    pub elements: Vec<Vec<NatTrans>>,
    /// The counit out of the relevant composite into `h`.
    pub counit: ProfMorphism,
    pub composite: Composite,
}

fn index_of(list: &[NatTrans]) -> HashMap<&NatTrans, usize> {
    list.iter().enumerate().map(|(i, t)| (t, i)).collect()
}

/// `{|f, h|}(a, c) = Nat(f(-, a), h(-, c))` for `f: A ⇸ B`, `h: C ⇸ B`,
/// with counit `f . {|f, h|} => h`.
pub fn right_lift(f: &Profunctor, h: &Profunctor) -> Result<EndModule> {
    if *f.target != *h.target {
        return Err(Error::EndpointMismatch("right lifting needs a shared target".into()));
    }
    let (a_cat, c_cat) = (&f.source, &h.source);
    let cs = c_cat.object_count();
    let columns_f: Vec<Presheaf> = a_cat.objects().map(|a| f.column(a)).collect();
    let columns_h: Vec<Presheaf> = c_cat.objects().map(|c| h.column(c)).collect();
    let mut elements = Vec::with_capacity(a_cat.object_count() * cs);
    for a in a_cat.objects() {
        for c in c_cat.objects() {
            elements.push(nat_transformations(&columns_f[a], &columns_h[c]));
        }
    }
    let indices: Vec<HashMap<&NatTrans, usize>> = elements.iter().map(|e| index_of(e)).collect();
    let f_arrows: Vec<NatTrans> = a_cat.morphisms().map(|u| f.column_arrow(u)).collect();
    let h_arrows: Vec<NatTrans> = c_cat.morphisms().map(|w| h.column_arrow(w)).collect();
    let profunctor = Profunctor::from_fn(
        c_cat,
        a_cat,
        |a, c| elements[a * cs + c].len(),
        |u, c, x| {
            let (a, a2) = (a_cat.src(u), a_cat.tgt(u));
            let alpha = &elements[a2 * cs + c][x];
            indices[a * cs + c][&alpha.after(&f_arrows[u])]
        },
        |w, a, x| {
            let (c, c2) = (c_cat.src(w), c_cat.tgt(w));
            let alpha = &elements[a * cs + c][x];
            indices[a * cs + c2][&h_arrows[w].after(alpha)]
        },
    )?;
    let composite = compose_with_classes(f, &profunctor)?;
    let counit = from_representatives(&composite, |b, c, (a, y, x)| elements[a * cs + c][x].apply(b, y));
    Ok(EndModule {
        profunctor,
        elements,
        counit,
        composite,
    })
}

/// `[[g, h]](b, a) = Nat(g(a, -), h(b, -))` for `g: C ⇸ A`, `h: C ⇸ B`,
/// with counit `[[g, h]] . g => h`.
pub fn right_extend(g: &Profunctor, h: &Profunctor) -> Result<EndModule> {
    if *g.source != *h.source {
        return Err(Error::EndpointMismatch("right extension needs a shared source".into()));
    }
    let (a_cat, b_cat) = (&g.target, &h.target);
    let as_ = a_cat.object_count();
    let rows_g: Vec<SetFunctor> = a_cat.objects().map(|a| g.row(a)).collect();
    let rows_h: Vec<SetFunctor> = b_cat.objects().map(|b| h.row(b)).collect();
    let mut elements = Vec::with_capacity(b_cat.object_count() * as_);
    for b in b_cat.objects() {
        for a in a_cat.objects() {
            elements.push(nat_transformations(&rows_g[a], &rows_h[b]));
        }
    }
    let indices: Vec<HashMap<&NatTrans, usize>> = elements.iter().map(|e| index_of(e)).collect();
    let g_arrows: Vec<NatTrans> = a_cat.morphisms().map(|u| g.row_arrow(u)).collect();
    let h_arrows: Vec<NatTrans> = b_cat.morphisms().map(|v| h.row_arrow(v)).collect();
    let profunctor = Profunctor::from_fn(
        a_cat,
        b_cat,
        |b, a| elements[b * as_ + a].len(),
        |v, a, x| {
            let (b, b2) = (b_cat.src(v), b_cat.tgt(v));
            let alpha = &elements[b2 * as_ + a][x];
            indices[b * as_ + a][&h_arrows[v].after(alpha)]
        },
        |u, b, x| {
            let (a, a2) = (a_cat.src(u), a_cat.tgt(u));
            let alpha = &elements[b * as_ + a][x];
            indices[b * as_ + a2][&alpha.after(&g_arrows[u])]
        },
    )?;
    let composite = compose_with_classes(&profunctor, g)?;
    let counit = from_representatives(&composite, |b, c, (a, x, z)| elements[b * as_ + a][x].apply(c, z));
    Ok(EndModule {
        profunctor,
        elements,
        counit,
        composite,
    })
}

/// Checks `Mod(C, A)(k, {|f, h|}) = Mod(C, B)(f . k, h)` for `k: C ⇸ A`:
/// `theta |-> counit . (f . theta)` must be a bijection.
pub fn lift_bijection_holds(f: &Profunctor, h: &Profunctor, k: &Profunctor) -> Result<bool> {
    let lift = right_lift(f, h)?;
    let fk = compose_with_classes(f, k)?;
    let cs = h.source.object_count();
    let right = prof_morphisms(&fk.profunctor, h).len();
    let mut images = HashSet::new();
    let mut left = 0;
    for theta in prof_morphisms(k, &lift.profunctor) {
        left += 1;
        let image = from_representatives(&fk, |b, c, (a, y, z)| {
            let x = theta.components[k.cell(a, c)][z];
            lift.elements[a * cs + c][x].apply(b, y)
        });
        if !image.is_valid(&fk.profunctor, h) {
            return Ok(false);
        }
        images.insert(image);
    }
    Ok(left == right && images.len() == left)
}

/// Checks `Mod(A, B)(k, [[g, h]]) = Mod(C, B)(k . g, h)` for `k: A ⇸ B`.
pub fn extend_bijection_holds(g: &Profunctor, h: &Profunctor, k: &Profunctor) -> Result<bool> {
    let ext = right_extend(g, h)?;
    let kg = compose_with_classes(k, g)?;
    let as_ = g.target.object_count();
    let right = prof_morphisms(&kg.profunctor, h).len();
    let mut images = HashSet::new();
    let mut left = 0;
    for theta in prof_morphisms(k, &ext.profunctor) {
        left += 1;
        let image = from_representatives(&kg, |b, c, (a, x, z)| {
            let e = theta.components[k.cell(b, a)][x];
            ext.elements[b * as_ + a][e].apply(c, z)
        });
        if !image.is_valid(&kg.profunctor, h) {
            return Ok(false);
        }
        images.insert(image);
    }
    Ok(left == right && images.len() == left)
}

/// An adjunction `f ⊣ g` of modules with unit `1 => g . f` and counit
/// `f . g => 1`.
#[derive(Clone, Debug)]
pub struct ModuleAdjunction {
    pub left: Profunctor,
    pub right: Profunctor,
    pub unit: ProfMorphism,
    pub counit: ProfMorphism,
    /// `g . f` and `f . g`, the codomain and domain of unit and counit.
    pub monad: Profunctor,
    pub comonad: Profunctor,
}

/// Why `has_right_adjoint` gave up, for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NoAdjoint {
    /// The comparison `g . f -> {|f, f|}` fails to be injective or
    /// surjective at the given cell.
    ComparisonNotBijective {
        cell: (Obj, Obj),
        injective: bool,
        surjective: bool,
    },
}

/// Decides whether `f: A ⇸ B` has a right adjoint. The candidate is
/// `g = {|f, 1|}`; it is a right adjoint exactly when the canonical
/// comparison `g . f -> {|f, f|}` is invertible. On success the unit is the
/// inverse image of the identity module and the triangle identities are
/// checked element by element.
pub fn has_right_adjoint(f: &Profunctor) -> Result<std::result::Result<ModuleAdjunction, NoAdjoint>> {
    let a_cat = f.source.clone();
    let b_cat = f.target.clone();
    let id_b = id_module(&b_cat);
    let lift = right_lift(f, &id_b)?;
    let g = &lift.profunctor;
    let bs = b_cat.object_count();
    let gf = compose_with_classes(g, f)?;
    let columns: Vec<Presheaf> = a_cat.objects().map(|a| f.column(a)).collect();
    // comparison at (a2, a): class (b, alpha in g(a2, b), y in f(b, a)) |-> the
    // transformation f(-, a2) -> f(-, a), x |-> f(alpha(x), a)(y)
    let compare = |a2: Obj, a: Obj, (b, x, y): (Obj, usize, usize)| -> NatTrans {
        let alpha = &lift.elements[a2 * bs + b][x];
        NatTrans {
            components: b_cat
                .objects()
                .map(|b2| {
                    (0..f.size(b2, a2))
                        .map(|e| {
                            let m = b_cat.hom(b2, b)[alpha.apply(b2, e)];
                            f.left(m, a, y)
                        })
                        .collect()
                })
                .collect(),
        }
    };
    let mut preimage: HashMap<(Obj, Obj, NatTrans), usize> = HashMap::new();
    for a2 in a_cat.objects() {
        for a in a_cat.objects() {
            let target_count = crate::presheaf::count_nat(&columns[a2], &columns[a]);
            let n = gf.profunctor.size(a2, a);
            let mut seen = HashSet::new();
            for class in 0..n {
                let t = compare(a2, a, gf.representative(a2, a, class));
                seen.insert(t.clone());
                preimage.insert((a2, a, t), class);
            }
            let injective = seen.len() == n;
            let surjective = seen.len() == target_count;
            if !(injective && surjective) {
                return Ok(Err(NoAdjoint::ComparisonNotBijective {
                    cell: (a2, a),
                    injective,
                    surjective,
                }));
            }
        }
    }
    // unit: m: a2 -> a goes to the preimage of f(-, m)
    let id_a = id_module(&a_cat);
    let mut unit = Vec::with_capacity(a_cat.object_count() * a_cat.object_count());
    for a2 in a_cat.objects() {
        for a in a_cat.objects() {
            unit.push(
                a_cat
                    .hom(a2, a)
                    .iter()
                    .map(|&m| preimage[&(a2, a, f.column_arrow(m))])
                    .collect(),
            );
        }
    }
    let unit = ProfMorphism { components: unit };
    let fg = compose_with_classes(f, g)?;
    let counit = from_representatives(&fg, |b, b2, (a, y, x)| lift.elements[a * bs + b2][x].apply(b, y));
    if !unit.is_valid(&id_a, &gf.profunctor) || !counit.is_valid(&fg.profunctor, &id_b) {
        return Err(Error::InternalMismatch(
            "adjunction unit or counit is not natural".into(),
        ));
    }
    // triangle identities at the level of elements
    let eta = |a: Obj| {
        gf.representative(
            a,
            a,
            unit.components[id_a.cell(a, a)][Presheaf::hom_position(&a_cat, a_cat.identity(a))],
        )
    };
    for a in a_cat.objects() {
        let (b1, x1, z1) = eta(a);
        let alpha = &lift.elements[a * bs + b1][x1];
        for b in b_cat.objects() {
            for y in 0..f.size(b, a) {
                let m = b_cat.hom(b, b1)[alpha.apply(b, y)];
                if f.left(m, a, z1) != y {
                    return Err(Error::InternalMismatch("first triangle identity fails".into()));
                }
            }
        }
        for b in b_cat.objects() {
            for x in 0..g.size(a, b) {
                let beta = &lift.elements[a * bs + b][x];
                let v = b_cat.hom(b1, b)[beta.apply(b1, z1)];
                for b2 in b_cat.objects() {
                    for e in 0..f.size(b2, a) {
                        let w = b_cat.hom(b2, b1)[alpha.apply(b2, e)];
                        let lhs = b_cat.compose(v, w);
                        let rhs = b_cat.hom(b2, b)[beta.apply(b2, e)];
                        if lhs != rhs {
                            return Err(Error::InternalMismatch("second triangle identity fails".into()));
                        }
                    }
                }
            }
        }
    }
    Ok(Ok(ModuleAdjunction {
        left: f.clone(),
        right: g.clone(),
        unit,
        counit,
        monad: gf.profunctor,
        comonad: fg.profunctor,
    }))
}

/// Checks the bijection `Mod(B, A)(g, {|f, 1|}) = Mod(A, B)(f, [[g, 1]])`
/// for `f: A ⇸ B` and `g: B ⇸ A`, the adjunction between right lifting and
/// right extension into the identity.
pub fn galois_bijection_holds(f: &Profunctor, g: &Profunctor) -> Result<bool> {
    let id_b = id_module(&f.target);
    let lift = right_lift(f, &id_b)?;
    let ext = right_extend(g, &id_b)?;
    let bs = f.target.object_count();
    let as_ = f.source.object_count();
    let ext_index: Vec<HashMap<&NatTrans, usize>> = ext.elements.iter().map(|e| index_of(e)).collect();
    let right = prof_morphisms(f, &ext.profunctor).len();
    let mut images = HashSet::new();
    let mut left = 0;
    for theta in prof_morphisms(g, &lift.profunctor) {
        left += 1;
        // theta'(y in f(b2, a)) is the transformation g(a, -) -> B(b2, -)
        // sending beta in g(a, b) to theta(beta)_{b2}(y)
        let mut components = Vec::with_capacity(bs * as_);
        for b2 in f.target.objects() {
            for a in f.source.objects() {
                let mut comp = Vec::with_capacity(f.size(b2, a));
                for y in 0..f.size(b2, a) {
                    let t = NatTrans {
                        components: f
                            .target
                            .objects()
                            .map(|b| {
                                (0..g.size(a, b))
                                    .map(|beta| {
                                        let x = theta.components[g.cell(a, b)][beta];
                                        lift.elements[a * bs + b][x].apply(b2, y)
                                    })
                                    .collect()
                            })
                            .collect(),
                    };
                    match ext_index[b2 * as_ + a].get(&t) {
                        Some(&i) => comp.push(i),
                        None => return Ok(false),
                    }
                }
                components.push(comp);
            }
        }
        let image = ProfMorphism { components };
        if !image.is_valid(f, &ext.profunctor) {
            return Ok(false);
        }
        images.insert(image);
    }
    Ok(left == right && images.len() == left)
}

/// The unit `f => [[{|f, 1|}, 1]]` of the lifting/extension adjunction:
/// `y in f(b, a)` goes to evaluation at `y`.
pub fn galois_unit(f: &Profunctor) -> Result<(Profunctor, ProfMorphism)> {
    let id_b = id_module(&f.target);
    let lift = right_lift(f, &id_b)?;
    let ext = right_extend(&lift.profunctor, &id_b)?;
    let bs = f.target.object_count();
    let as_ = f.source.object_count();
    let index: Vec<HashMap<&NatTrans, usize>> = ext.elements.iter().map(|e| index_of(e)).collect();
    let mut components = Vec::with_capacity(bs * as_);
    for b in f.target.objects() {
        for a in f.source.objects() {
            let mut comp = Vec::new();
            for y in 0..f.size(b, a) {
                let t = NatTrans {
                    components: f
                        .target
                        .objects()
                        .map(|b2| {
                            (0..lift.profunctor.size(a, b2))
                                .map(|x| lift.elements[a * bs + b2][x].apply(b, y))
                                .collect()
                        })
                        .collect(),
                };
                comp.push(
                    *index[b * as_ + a]
                        .get(&t)
                        .ok_or_else(|| Error::InternalMismatch("evaluation is not natural".into()))?,
                );
            }
            components.push(comp);
        }
    }
    let unit = ProfMorphism { components };
    if !unit.is_valid(f, &ext.profunctor) {
        return Err(Error::InternalMismatch("lifting/extension unit is not a 2-cell".into()));
    }
    Ok((ext.profunctor, unit))
}

/// Enumerates every 2-cell visitor-style; used where collecting would be wasteful.
pub fn for_each_prof_morphism(
    from: &Profunctor,
    to: &Profunctor,
    mut visit: impl FnMut(&[Vec<usize>]) -> std::ops::ControlFlow<()>,
) {
    for_each_nat(from.table(), to.table(), false, |c| visit(c));
}
