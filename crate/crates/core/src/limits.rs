//! Limits and colimits: conical ones in finite sets, ends and coends,
//! weighted ones in finite sets (computed two independent ways), and
//! weighted colimits inside arbitrary finite categories by
//! representability search.

use std::collections::HashSet;
use std::sync::Arc;

use petgraph::unionfind::UnionFind;

use crate::category::{FinCategory, Mor, Obj};
use crate::elements::category_of_elements;
use crate::functor::FinFunctor;
use crate::presheaf::{for_each_nat, nat_transformations, NatTrans, Presheaf, SetFunctor};
use crate::{Error, Result};

/// Limit of a diagram in finite sets: the apex is the set of matching
/// families, each family listing one element per index object.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetLimit {
    pub families: Vec<Vec<usize>>,
}

impl SetLimit {
    pub fn size(&self) -> usize {
        self.families.len()
    }

    /// The limit projection onto index object `j`.
    pub fn projection(&self, j: Obj) -> Vec<usize> {
        self.families.iter().map(|f| f[j]).collect()
    }
}

/// Colimit of a diagram in finite sets: the apex is `0..size` and
/// `injections[j]` maps `D(j)` into it. Classes are numbered in order of
/// their least element in the flat disjoint union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetColimit {
    pub size: usize,
    pub injections: Vec<Vec<usize>>,
}

/// Quotients a disjoint union `0..n` by the given identifications,
/// numbering classes by first appearance.
fn quotient(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> (usize, Vec<usize>) {
    let mut uf = UnionFind::<usize>::new(n);
    for (a, b) in pairs {
        uf.union(a, b);
    }
    let mut label = vec![usize::MAX; n];
    let mut classes = vec![0; n];
    let mut next = 0;
    for (x, class) in classes.iter_mut().enumerate() {
        let root = uf.find(x);
        if label[root] == usize::MAX {
            label[root] = next;
            next += 1;
        }
        *class = label[root];
    }
    (next, classes)
}

/// Limit of a covariant diagram `D: J -> FinSet` (stored as a presheaf on
/// `J^op`): matching families found by backtracking over index objects.
pub fn finset_limit(diagram: &SetFunctor) -> SetLimit {
    let j = diagram.base();
    let n = j.object_count();
    // a morphism u of J, read covariantly, goes from base.tgt(u) to base.src(u)
    let mut checks: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for u in j.morphisms() {
        let last = j.src(u).max(j.tgt(u));
        checks[last].push(u);
    }
    let mut families = Vec::new();
    let mut current = vec![0; n];
    fn go(d: &SetFunctor, checks: &[Vec<Mor>], i: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        let j = d.base();
        for x in 0..d.size(i) {
            current[i] = x;
            let ok = checks[i]
                .iter()
                .all(|&u| d.act(u, current[j.tgt(u)]) == current[j.src(u)]);
            if ok {
                go(d, checks, i + 1, current, out);
            }
        }
    }
    go(diagram, &checks, 0, &mut current, &mut families);
    SetLimit { families }
}

/// Colimit of a covariant diagram `D: J -> FinSet` (stored as a presheaf on
/// `J^op`): the disjoint union quotiented by `x ~ D(u)(x)`.
pub fn finset_colimit(diagram: &SetFunctor) -> SetColimit {
    let j = diagram.base();
    let offsets = diagram.offsets();
    let pairs = j.morphisms().flat_map(|u| {
        let (from, to) = (j.tgt(u), j.src(u));
        let offsets = &offsets;
        (0..diagram.size(from)).map(move |x| (offsets[from] + x, offsets[to] + diagram.act(u, x)))
    });
    let (size, classes) = quotient(diagram.total_size(), pairs);
    let injections = j
        .objects()
        .map(|o| classes[offsets[o]..offsets[o] + diagram.size(o)].to_vec())
        .collect();
    SetColimit { size, injections }
}

/// A functor `K^op x L -> FinSet`, stored as a presheaf on `K x L^op`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bifunctor {
    contra: Arc<FinCategory>,
    co: Arc<FinCategory>,
    table: Presheaf,
}

impl Bifunctor {
    pub fn new(contra: Arc<FinCategory>, co: Arc<FinCategory>, table: Presheaf) -> Result<Bifunctor> {
        if **table.base() != contra.product(&co.opposite()) {
            return Err(Error::DomainMismatch("bifunctor table must live on K x L^op".into()));
        }
        Ok(Bifunctor { contra, co, table })
    }

    /// Builds a bifunctor from its cell sizes and its two separate actions:
    /// `left(u, l, x)` for `u: k -> k'` maps `B(k', l) -> B(k, l)` and
    /// `right(v, k, x)` for `v: l -> l'` maps `B(k, l) -> B(k, l')`.
    pub fn from_fn(
        contra: &Arc<FinCategory>,
        co: &Arc<FinCategory>,
        size: impl Fn(Obj, Obj) -> usize,
        left: impl Fn(Mor, Obj, usize) -> usize,
        right: impl Fn(Mor, Obj, usize) -> usize,
    ) -> Result<Bifunctor> {
        let product = Arc::new(contra.product(&co.opposite()));
        let nl = co.object_count();
        let ml = co.morphism_count();
        let sets = product.objects().map(|o| size(o / nl, o % nl)).collect();
        let table = Presheaf::from_fn(product, sets, |m, x| {
            let (u, v) = (m / ml, m % ml);
            let k_to = contra.tgt(u);
            let l = co.tgt(v);
            left(u, l, right(v, k_to, x))
        })?;
        Ok(Bifunctor {
            contra: contra.clone(),
            co: co.clone(),
            table,
        })
    }

    /// The hom bifunctor `K(-, -)`.
    pub fn hom(k: &Arc<FinCategory>) -> Bifunctor {
        Bifunctor::from_fn(
            k,
            k,
            |a, b| k.hom(a, b).len(),
            |u, b, x| {
                let m = k.hom(k.tgt(u), b)[x];
                Presheaf::hom_position(k, k.compose(m, u))
            },
            |v, a, x| {
                let m = k.hom(a, k.src(v))[x];
                Presheaf::hom_position(k, k.compose(v, m))
            },
        )
        .expect("hom bifunctor")
    }

    pub fn contra(&self) -> &Arc<FinCategory> {
        &self.contra
    }

    pub fn co(&self) -> &Arc<FinCategory> {
        &self.co
    }

    pub fn table(&self) -> &Presheaf {
        &self.table
    }

    fn cell(&self, k: Obj, l: Obj) -> Obj {
        k * self.co.object_count() + l
    }

    pub fn size(&self, k: Obj, l: Obj) -> usize {
        self.table.size(self.cell(k, l))
    }

    /// For `u: k -> k'`, the map `B(k', l) -> B(k, l)`.
    pub fn left(&self, u: Mor, l: Obj, x: usize) -> usize {
        self.table.act(u * self.co.morphism_count() + self.co.identity(l), x)
    }

    /// For `v: l -> l'`, the map `B(k, l) -> B(k, l')`.
    pub fn right(&self, v: Mor, k: Obj, x: usize) -> usize {
        self.table
            .act(self.contra.identity(k) * self.co.morphism_count() + v, x)
    }

    /// `B(-, l)` as a presheaf on `K`.
    pub fn column(&self, l: Obj) -> Presheaf {
        let k = &self.contra;
        Presheaf::from_parts(
            k.clone(),
            k.objects().map(|a| self.size(a, l)).collect(),
            k.morphisms()
                .map(|u| (0..self.size(k.tgt(u), l)).map(|x| self.left(u, l, x)).collect())
                .collect(),
        )
        .expect("column of a bifunctor")
    }

    /// `B(k, -)` as a covariant functor on `L`.
    pub fn row(&self, k: Obj) -> SetFunctor {
        let l = &self.co;
        Presheaf::from_parts(
            Arc::new(l.opposite()),
            l.objects().map(|b| self.size(k, b)).collect(),
            l.morphisms()
                .map(|v| (0..self.size(k, l.src(v))).map(|x| self.right(v, k, x)).collect())
                .collect(),
        )
        .expect("row of a bifunctor")
    }
}

/// Result of an end: one element of `B(k, k)` per object, for each wedge.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EndResult {
    pub families: Vec<Vec<usize>>,
}

impl EndResult {
    pub fn size(&self) -> usize {
        self.families.len()
    }
}

/// Result of a coend: the class of each element of each diagonal cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoendResult {
    pub size: usize,
    pub class_of: Vec<Vec<usize>>,
}

/// `∫_k B(k, k)`: families `x_k` with `B(k, u)(x_k) = B(u, k')(x_k')` for
/// every `u: k -> k'`.
pub fn end(b: &Bifunctor) -> Result<EndResult> {
    if b.contra != b.co {
        return Err(Error::DomainMismatch(
            "end needs a bifunctor on a single category".into(),
        ));
    }
    let k = &*b.contra;
    let n = k.object_count();
    let mut checks: Vec<Vec<Mor>> = vec![Vec::new(); n];
    for u in k.morphisms() {
        checks[k.src(u).max(k.tgt(u))].push(u);
    }
    let mut families = Vec::new();
    let mut current = vec![0; n];
    fn go(b: &Bifunctor, checks: &[Vec<Mor>], i: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if i == current.len() {
            out.push(current.clone());
            return;
        }
        let k = &b.contra;
        for x in 0..b.size(i, i) {
            current[i] = x;
            let ok = checks[i].iter().all(|&u| {
                let (s, t) = (k.src(u), k.tgt(u));
                b.right(u, s, current[s]) == b.left(u, t, current[t])
            });
            if ok {
                go(b, checks, i + 1, current, out);
            }
        }
    }
    go(b, &checks, 0, &mut current, &mut families);
    Ok(EndResult { families })
}

/// `∫^k B(k, k)`: the disjoint union of the diagonal cells quotiented by
/// `B(u, k)(y) ~ B(k', u)(y)` for `u: k -> k'` and `y` in `B(k', k)`.
pub fn coend(b: &Bifunctor) -> Result<CoendResult> {
    if b.contra != b.co {
        return Err(Error::DomainMismatch(
            "coend needs a bifunctor on a single category".into(),
        ));
    }
    let k = &*b.contra;
    let mut offsets = Vec::with_capacity(k.object_count());
    let mut total = 0;
    for o in k.objects() {
        offsets.push(total);
        total += b.size(o, o);
    }
    let mut pairs = Vec::new();
    for u in k.morphisms() {
        let (s, t) = (k.src(u), k.tgt(u));
        for y in 0..b.size(t, s) {
            pairs.push((offsets[s] + b.left(u, s, y), offsets[t] + b.right(u, t, y)));
        }
    }
    let (size, classes) = quotient(total, pairs);
    let class_of = k
        .objects()
        .map(|o| classes[offsets[o]..offsets[o] + b.size(o, o)].to_vec())
        .collect();
    Ok(CoendResult { size, class_of })
}

/// The bifunctor `(x, y) |-> [F(x), G(y)]` on `K^op x K` for presheaves
/// `F, G` on `K`, whose end is the set of natural transformations `F -> G`.
/// Functions are encoded as base-`|G(y)|` digit strings. Only for small sets.
pub fn function_set_bifunctor(f: &Presheaf, g: &Presheaf) -> Result<Bifunctor> {
    if **f.base() != **g.base() {
        return Err(Error::DomainMismatch("presheaves on different bases".into()));
    }
    // [F(x), G(y)] is covariant in x (F contravariant) and contravariant in y.
    // As a functor (K^op)^op x K^op = K x K^op -> Set it is a bifunctor on
    // K^op in the contra/co convention, so the end is taken over K^op.
    let k = f.base();
    let kop = Arc::new(k.opposite());
    let encode = |values: &[usize], base: usize| values.iter().rev().fold(0usize, |acc, &v| acc * base + v);
    let decode = |mut code: usize, len: usize, base: usize| -> Vec<usize> {
        (0..len)
            .map(|_| {
                let d = code % base;
                code /= base;
                d
            })
            .collect()
    };
    Bifunctor::from_fn(
        &kop,
        &kop,
        |x, y| g.size(y).pow(f.size(x) as u32),
        // u: x -> x' in K^op is x' -> x in K; F(u): F(x) -> F(x');
        // [F(x'), G(y)] -> [F(x), G(y)] by precomposition.
        |u, y, code| {
            let (x, x2) = (kop.src(u), kop.tgt(u));
            let func = decode(code, f.size(x2), g.size(y));
            let pre: Vec<usize> = (0..f.size(x)).map(|e| func[f.act(u, e)]).collect();
            encode(&pre, g.size(y))
        },
        // v: y -> y' in K^op is y' -> y in K; G(v): G(y) -> G(y');
        // [F(x), G(y)] -> [F(x), G(y')] by postcomposition.
        |v, x, code| {
            let (y, y2) = (kop.src(v), kop.tgt(v));
            let func = decode(code, f.size(x), g.size(y));
            let post: Vec<usize> = func.iter().map(|&e| g.act(v, e)).collect();
            encode(&post, g.size(y2))
        },
    )
}

/// The weighted limit `{phi, T}` in finite sets: its elements are the
/// natural transformations `phi -> T`, so the counit at `(k, x)` sends an
/// element `alpha` to `alpha_k(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedLimit {
    pub cone: Vec<NatTrans>,
}

impl WeightedLimit {
    pub fn size(&self) -> usize {
        self.cone.len()
    }

    /// `mu_k(x)`: apex -> T(k).
    pub fn counit(&self, k: Obj, x: usize) -> Vec<usize> {
        self.cone.iter().map(|a| a.apply(k, x)).collect()
    }
}

fn check_same_base(phi: &Presheaf, base: &FinCategory, what: &str) -> Result<()> {
    if **phi.base() != *base {
        return Err(Error::DomainMismatch(format!(
            "weight and {what} have different domains"
        )));
    }
    Ok(())
}

/// `{phi, T}` as the end `∫_k [phi(k), T(k)]`, enumerated as natural
/// transformations. Families are flattened over the elements of `phi`.
pub fn weighted_limit_via_end(phi: &Presheaf, t: &Presheaf) -> Result<Vec<Vec<usize>>> {
    check_same_base(phi, t.base(), "diagram")?;
    Ok(nat_transformations(phi, t)
        .into_iter()
        .map(|a| a.components.concat())
        .collect())
}

/// `{phi, T}` as the conical limit of `el(phi) -> K^op -> FinSet`.
pub fn weighted_limit_via_elements(phi: &Presheaf, t: &Presheaf) -> Result<Vec<Vec<usize>>> {
    check_same_base(phi, t.base(), "diagram")?;
    let el = category_of_elements(phi);
    let diagram = t.precompose(&el.projection.opposite())?;
    Ok(finset_limit(&diagram).families)
}

/// `{phi, T}` for a weight `phi` and a diagram `T: K^op -> FinSet`, both
/// presheaves on `K`. Debug builds also run the category-of-elements route
/// and fail with `InternalMismatch` if the two disagree.
pub fn weighted_limit(phi: &Presheaf, t: &Presheaf) -> Result<WeightedLimit> {
    check_same_base(phi, t.base(), "diagram")?;
    let cone = nat_transformations(phi, t);
    if cfg!(debug_assertions) {
        let mut via_end: Vec<Vec<usize>> = cone.iter().map(|a| a.components.concat()).collect();
        let mut via_el = weighted_limit_via_elements(phi, t)?;
        via_end.sort();
        via_el.sort();
        if via_end != via_el {
            return Err(Error::InternalMismatch(format!(
                "weighted limit: end gives {} elements, el(phi) gives {}",
                via_end.len(),
                via_el.len()
            )));
        }
    }
    Ok(WeightedLimit { cone })
}

/// The weighted colimit `phi * S` in finite sets, with its cocone: for
/// each element `(k, x)` of `phi`, a function `S(k) -> apex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedColimit {
    pub size: usize,
    /// Indexed by the flat element number of `phi`.
    pub cocone: Vec<Vec<usize>>,
    offsets: Vec<usize>,
}

impl WeightedColimit {
    pub fn class(&self, k: Obj, x: usize, s: usize) -> usize {
        self.cocone[self.offsets[k] + x][s]
    }
}

/// `phi * S` as the coend `∫^k phi(k) x S(k)`.
pub fn weighted_colimit_via_coend(phi: &Presheaf, s: &SetFunctor) -> Result<WeightedColimit> {
    let k = phi.base();
    if **s.base() != k.opposite() {
        return Err(Error::DomainMismatch(
            "weight and diagram have different domains".into(),
        ));
    }
    let phi_offsets = phi.offsets();
    // element (k, x, t) of the disjoint union, numbered by (flat x, t)
    let mut starts = Vec::with_capacity(phi.total_size());
    let mut total = 0;
    for (o, _) in phi.elements() {
        starts.push(total);
        total += s.size(o);
    }
    let id = |o: Obj, x: usize, t: usize| starts[phi_offsets[o] + x] + t;
    let mut pairs = Vec::new();
    // u: a -> b, x in phi(b), t in S(a): (a, phi(u)x, t) ~ (b, x, S(u)t)
    for u in k.morphisms() {
        let (a, b) = (k.src(u), k.tgt(u));
        for x in 0..phi.size(b) {
            for t in 0..s.size(a) {
                pairs.push((id(a, phi.act(u, x), t), id(b, x, s.act(u, t))));
            }
        }
    }
    let (size, classes) = quotient(total, pairs);
    let cocone = phi
        .elements()
        .iter()
        .map(|&(o, x)| (0..s.size(o)).map(|t| classes[id(o, x, t)]).collect())
        .collect();
    Ok(WeightedColimit {
        size,
        cocone,
        offsets: phi_offsets,
    })
}

/// `phi * S` as the conical colimit of `el(phi)^op -> K -> FinSet`.
pub fn weighted_colimit_via_elements(phi: &Presheaf, s: &SetFunctor) -> Result<WeightedColimit> {
    let k = phi.base();
    if **s.base() != k.opposite() {
        return Err(Error::DomainMismatch(
            "weight and diagram have different domains".into(),
        ));
    }
    let el = category_of_elements(phi);
    let diagram = s.precompose(&el.projection)?;
    let colim = finset_colimit(&diagram);
    Ok(WeightedColimit {
        size: colim.size,
        cocone: colim.injections,
        offsets: phi.offsets(),
    })
}

/// Whether two cocones out of the same data present isomorphic colimits:
/// the induced map between apexes must be a well-defined bijection.
fn same_colimit(a: &WeightedColimit, b: &WeightedColimit) -> bool {
    if a.size != b.size || a.cocone.len() != b.cocone.len() {
        return false;
    }
    let mut map = vec![usize::MAX; a.size];
    for (ca, cb) in a.cocone.iter().zip(&b.cocone) {
        for (&x, &y) in ca.iter().zip(cb) {
            if map[x] == usize::MAX {
                map[x] = y;
            } else if map[x] != y {
                return false;
            }
        }
    }
    let hit: HashSet<_> = map.iter().copied().collect();
    !map.contains(&usize::MAX) && hit.len() == a.size
}

/// `phi * S` for a weight `phi` on `K` and a diagram `S: K -> FinSet`.
/// Debug builds cross-check the coend against the category of elements.
pub fn weighted_colimit(phi: &Presheaf, s: &SetFunctor) -> Result<WeightedColimit> {
    let via_coend = weighted_colimit_via_coend(phi, s)?;
    if cfg!(debug_assertions) {
        let via_el = weighted_colimit_via_elements(phi, s)?;
        if !same_colimit(&via_coend, &via_el) {
            return Err(Error::InternalMismatch(format!(
                "weighted colimit: coend gives {} classes, el(phi) gives {}",
                via_coend.size, via_el.size
            )));
        }
    }
    Ok(via_coend)
}

/// Dual-path agreement for colimits, exposed for property tests.
pub fn colimit_paths_agree(phi: &Presheaf, s: &SetFunctor) -> Result<bool> {
    Ok(same_colimit(
        &weighted_colimit_via_coend(phi, s)?,
        &weighted_colimit_via_elements(phi, s)?,
    ))
}

/// Dual-path agreement for limits, exposed for property tests.
pub fn limit_paths_agree(phi: &Presheaf, t: &Presheaf) -> Result<bool> {
    let mut a = weighted_limit_via_end(phi, t)?;
    let mut b = weighted_limit_via_elements(phi, t)?;
    a.sort();
    b.sort();
    Ok(a == b)
}

/// `A(S-, c)` as a presheaf on the domain of `S`.
pub fn hom_into(s: &FinFunctor, c: Obj) -> Presheaf {
    let k = s.source();
    let a = s.target();
    Presheaf::from_parts(
        k.clone(),
        k.objects().map(|o| a.hom(s.obj(o), c).len()).collect(),
        k.morphisms()
            .map(|u| {
                a.hom(s.obj(k.tgt(u)), c)
                    .iter()
                    .map(|&m| Presheaf::hom_position(a, a.compose(m, s.mor(u))))
                    .collect()
            })
            .collect(),
    )
    .expect("hom presheaf")
}

/// A weighted colimit inside a finite category: the apex and, for every
/// element `(k, x)` of the weight, the cocone leg `S(k) -> apex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryColimit {
    pub apex: Obj,
    pub cocone: Vec<Mor>,
}

/// A weighted limit inside a finite category: the apex and, for every
/// element `(k, x)` of the weight, the cone leg `apex -> T(k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CategoryLimit {
    pub apex: Obj,
    pub cone: Vec<Mor>,
}

/// Checks that `m |-> m . lambda` is a bijection `A(c, a) -> [phi, A(S-, a)]`
/// for every object `a`.
fn is_universal(phi: &Presheaf, s: &FinFunctor, apex: Obj, cocone: &[Mor], counts: &[usize]) -> bool {
    let a = s.target();
    let elems = phi.elements();
    a.objects().all(|b| {
        let hom = a.hom(apex, b);
        if hom.len() != counts[b] {
            return false;
        }
        let images: HashSet<Vec<Mor>> = hom
            .iter()
            .map(|&m| cocone.iter().map(|&leg| a.compose(m, leg)).collect())
            .collect();
        images.len() == hom.len() && elems.len() == cocone.len()
    })
}

fn nat_counts(phi: &Presheaf, s: &FinFunctor) -> Vec<usize> {
    s.target()
        .objects()
        .map(|b| crate::presheaf::count_nat(phi, &hom_into(s, b)))
        .collect()
}

/// Verifies that a given cocone is a `phi`-weighted colimit of `S`.
pub fn is_colimit(phi: &Presheaf, s: &FinFunctor, colimit: &CategoryColimit) -> bool {
    is_universal(phi, s, colimit.apex, &colimit.cocone, &nat_counts(phi, s))
}

/// Searches the objects of `A` for a corepresentation of
/// `a |-> [K^op, Set](phi, A(S-, a))`. The lowest-indexed representing
/// object wins.
pub fn colimit_in_category(phi: &Presheaf, s: &FinFunctor) -> Result<Option<CategoryColimit>> {
    check_same_base(phi, s.source(), "diagram")?;
    let a = s.target();
    let counts = nat_counts(phi, s);
    let elems = phi.elements();
    for c in a.objects() {
        if a.objects().any(|b| a.hom(c, b).len() != counts[b]) {
            continue;
        }
        let homs = hom_into(s, c);
        let mut found = None;
        for_each_nat(phi, &homs, false, |lambda| {
            let cocone: Vec<Mor> = elems.iter().map(|&(k, x)| a.hom(s.obj(k), c)[lambda[k][x]]).collect();
            if is_universal(phi, s, c, &cocone, &counts) {
                found = Some(cocone);
                std::ops::ControlFlow::Break(())
            } else {
                std::ops::ControlFlow::Continue(())
            }
        });
        if let Some(cocone) = found {
            return Ok(Some(CategoryColimit { apex: c, cocone }));
        }
    }
    Ok(None)
}

/// `{phi, T}` for `T: K^op -> A`, computed as a colimit in `A^op`.
pub fn limit_in_category(phi: &Presheaf, t: &FinFunctor) -> Result<Option<CategoryLimit>> {
    let t_op = t.opposite();
    Ok(colimit_in_category(phi, &t_op)?.map(|c| CategoryLimit {
        apex: c.apex,
        cone: c.cocone,
    }))
}

/// Why a colimit failed to be preserved.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PreservationFailure {
    /// The target has no colimit of the transported diagram at all.
    ColimitMissingInTarget,
    /// The target has a colimit but the image cocone is not one.
    NotUniversal,
    /// The canonical comparison map in finite sets is not a bijection.
    ComparisonNotBijective { colimit_size: usize, image_size: usize },
}

pub type Preservation = std::result::Result<(), PreservationFailure>;

/// Whether `F: A -> B` sends the colimit `phi * S` to a colimit of `F S`.
pub fn preserves_weighted_colimit(
    f: &FinFunctor,
    phi: &Presheaf,
    s: &FinFunctor,
    colimit: &CategoryColimit,
) -> Result<Preservation> {
    let fs = f.after(s)?;
    let image = CategoryColimit {
        apex: f.obj(colimit.apex),
        cocone: colimit.cocone.iter().map(|&m| f.mor(m)).collect(),
    };
    if is_colimit(phi, &fs, &image) {
        return Ok(Ok(()));
    }
    if colimit_in_category(phi, &fs)?.is_none() {
        Ok(Err(PreservationFailure::ColimitMissingInTarget))
    } else {
        Ok(Err(PreservationFailure::NotUniversal))
    }
}

/// Whether a set-valued functor `F: A -> FinSet` (a presheaf on `A^op`)
/// sends the colimit `phi * S` in `A` to a colimit in sets: the canonical
/// map `phi * (F S) -> F(apex)` must be bijective.
pub fn preserves_colimit_into_sets(
    f: &SetFunctor,
    phi: &Presheaf,
    s: &FinFunctor,
    colimit: &CategoryColimit,
) -> Result<Preservation> {
    let fs = f.precompose(&s.opposite())?;
    let colim = weighted_colimit(phi, &fs)?;
    let offsets = phi.offsets();
    let target_size = f.size(colimit.apex);
    let mut map = vec![usize::MAX; colim.size];
    for (k, x) in phi.elements() {
        let leg = colimit.cocone[offsets[k] + x];
        for t in 0..fs.size(k) {
            let class = colim.class(k, x, t);
            let image = f.act(leg, t);
            if map[class] == usize::MAX {
                map[class] = image;
            } else if map[class] != image {
                return Err(Error::InternalMismatch("comparison map is not well defined".into()));
            }
        }
    }
    let distinct: HashSet<_> = map.iter().copied().collect();
    if colim.size == target_size && distinct.len() == colim.size {
        Ok(Ok(()))
    } else {
        Ok(Err(PreservationFailure::ComparisonNotBijective {
            colimit_size: colim.size,
            image_size: target_size,
        }))
    }
}

/// Whether a presheaf `psi: A^op -> FinSet` sends the colimit `phi * S` in
/// `A` to a limit: `psi(apex) -> [K^op, Set](phi, psi S)` must be bijective.
pub fn sends_colimit_to_limit(
    psi: &Presheaf,
    phi: &Presheaf,
    s: &FinFunctor,
    colimit: &CategoryColimit,
) -> Result<Preservation> {
    let psi_s = psi.precompose(s)?;
    let limit = weighted_limit(phi, &psi_s)?;
    let elems = phi.elements();
    let images: HashSet<Vec<usize>> = (0..psi.size(colimit.apex))
        .map(|y| {
            elems
                .iter()
                .enumerate()
                .map(|(i, _)| psi.act(colimit.cocone[i], y))
                .collect()
        })
        .collect();
    if images.len() == psi.size(colimit.apex) && limit.size() == images.len() {
        Ok(Ok(()))
    } else {
        Ok(Err(PreservationFailure::ComparisonNotBijective {
            colimit_size: limit.size(),
            image_size: psi.size(colimit.apex),
        }))
    }
}

/// Whether a set-valued functor `F: A -> FinSet` (a presheaf on `A^op`)
/// sends the limit `{phi, T}` in `A` to a limit in sets.
pub fn preserves_limit_into_sets(
    f: &SetFunctor,
    phi: &Presheaf,
    t: &FinFunctor,
    limit: &CategoryLimit,
) -> Result<Preservation> {
    let ft = f.precompose(&t.opposite())?;
    let lim = weighted_limit(phi, &ft)?;
    let images: HashSet<Vec<usize>> = (0..f.size(limit.apex))
        .map(|y| limit.cone.iter().map(|&leg| f.act(leg, y)).collect())
        .collect();
    if images.len() == f.size(limit.apex) && lim.size() == images.len() {
        Ok(Ok(()))
    } else {
        Ok(Err(PreservationFailure::ComparisonNotBijective {
            colimit_size: lim.size(),
            image_size: f.size(limit.apex),
        }))
    }
}
