//! Finite categories given by explicit tables.
//!
//! Objects and morphisms are dense indices. Composition is stored as a
//! square table indexed by `(g, f)` and read as `g . f`, defined exactly
//! when `tgt(f) == src(g)`.

use std::collections::HashMap;

use petgraph::unionfind::UnionFind;

use crate::validate::{ValidationReport, Violation};
use crate::{Error, Result};

pub type Obj = usize;
pub type Mor = usize;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Arrow {
    pub name: String,
    pub src: Obj,
    pub tgt: Obj,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FinCategory {
    objects: Vec<String>,
    morphisms: Vec<Arrow>,
    identities: Vec<Mor>,
    compose: Vec<Option<Mor>>,
    homs: Vec<Vec<Mor>>,
}

impl FinCategory {
    /// Assembles a category from raw tables, checking only that every
    /// reference is in range and every composite is well-typed. Laws are
    /// left to [`FinCategory::validate`].
    pub fn from_parts(
        objects: Vec<String>,
        morphisms: Vec<Arrow>,
        identities: Vec<Mor>,
        composites: impl IntoIterator<Item = (Mor, Mor, Mor)>,
    ) -> Result<Self> {
        let n = objects.len();
        let m = morphisms.len();
        if identities.len() != n {
            return Err(Error::MalformedTable(format!(
                "{} identities for {} objects",
                identities.len(),
                n
            )));
        }
        for arrow in &morphisms {
            if arrow.src >= n || arrow.tgt >= n {
                return Err(Error::MalformedTable(format!(
                    "morphism {} has an endpoint outside the object list",
                    arrow.name
                )));
            }
        }
        for (o, &id) in identities.iter().enumerate() {
            if id >= m {
                return Err(Error::MalformedTable(format!(
                    "identity of {} is not a morphism",
                    objects[o]
                )));
            }
            if morphisms[id].src != o || morphisms[id].tgt != o {
                return Err(Error::MalformedTable(format!(
                    "identity {} of {} is not an endomorphism of it",
                    morphisms[id].name, objects[o]
                )));
            }
        }
        let mut compose = vec![None; m * m];
        for (g, f, h) in composites {
            if g >= m || f >= m || h >= m {
                return Err(Error::MalformedTable(format!(
                    "composition entry ({g}, {f}, {h}) references an unknown morphism"
                )));
            }
            if morphisms[f].tgt != morphisms[g].src {
                return Err(Error::MalformedTable(format!(
                    "composite {} . {} given for a non-composable pair",
                    morphisms[g].name, morphisms[f].name
                )));
            }
            if morphisms[h].src != morphisms[f].src || morphisms[h].tgt != morphisms[g].tgt {
                return Err(Error::MalformedTable(format!(
                    "composite {} . {} = {} has the wrong endpoints",
                    morphisms[g].name, morphisms[f].name, morphisms[h].name
                )));
            }
            match compose[g * m + f] {
                Some(prev) if prev != h => {
                    return Err(Error::MalformedTable(format!(
                        "composite {} . {} given twice with different values",
                        morphisms[g].name, morphisms[f].name
                    )))
                }
                _ => compose[g * m + f] = Some(h),
            }
        }
        let mut homs = vec![Vec::new(); n * n];
        for (i, arrow) in morphisms.iter().enumerate() {
            homs[arrow.src * n + arrow.tgt].push(i);
        }
        Ok(Self {
            objects,
            morphisms,
            identities,
            compose,
            homs,
        })
    }

    /// [`FinCategory::from_parts`] followed by a full law check.
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<Arrow>,
        identities: Vec<Mor>,
        composites: impl IntoIterator<Item = (Mor, Mor, Mor)>,
    ) -> Result<Self> {
        let c = Self::from_parts(objects, morphisms, identities, composites)?;
        c.validate().into_result()?;
        Ok(c)
    }

    /// Checks totality of composition on composable pairs, the identity
    /// laws and associativity, reporting every failure with its witness.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new("category");
        let m = self.morphisms.len();
        let mut total = true;
        for g in 0..m {
            for f in 0..m {
                if self.morphisms[f].tgt == self.morphisms[g].src && self.compose[g * m + f].is_none() {
                    total = false;
                    report.push(Violation::CompositionUndefined {
                        g: self.morphisms[g].name.clone(),
                        f: self.morphisms[f].name.clone(),
                    });
                }
            }
        }
        if !total {
            return report;
        }
        for f in 0..m {
            let Arrow { src, tgt, .. } = self.morphisms[f];
            if self.compose(self.identities[tgt], f) != f {
                report.push(Violation::LeftIdentity {
                    morphism: self.morphisms[f].name.clone(),
                });
            }
            if self.compose(f, self.identities[src]) != f {
                report.push(Violation::RightIdentity {
                    morphism: self.morphisms[f].name.clone(),
                });
            }
        }
        for f in 0..m {
            for g in self.out_of(self.morphisms[f].tgt) {
                let gf = self.compose(g, f);
                for h in self.out_of(self.morphisms[g].tgt) {
                    let hg = self.compose(h, g);
                    if self.compose(hg, f) != self.compose(h, gf) {
                        report.push(Violation::Associativity {
                            h: self.morphisms[h].name.clone(),
                            g: self.morphisms[g].name.clone(),
                            f: self.morphisms[f].name.clone(),
                        });
                    }
                }
            }
        }
        report
    }

    pub fn object_count(&self) -> usize {
        self.objects.len()
    }

    pub fn morphism_count(&self) -> usize {
        self.morphisms.len()
    }

    pub fn objects(&self) -> std::ops::Range<Obj> {
        0..self.objects.len()
    }

    pub fn morphisms(&self) -> std::ops::Range<Mor> {
        0..self.morphisms.len()
    }

    pub fn object_name(&self, o: Obj) -> &str {
        &self.objects[o]
    }

    pub fn object_names(&self) -> &[String] {
        &self.objects
    }

    pub fn morphism_name(&self, f: Mor) -> &str {
        &self.morphisms[f].name
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.morphisms
    }

    pub fn object_index(&self, name: &str) -> Option<Obj> {
        self.objects.iter().position(|o| o == name)
    }

    pub fn morphism_index(&self, name: &str) -> Option<Mor> {
        self.morphisms.iter().position(|a| a.name == name)
    }

    pub fn src(&self, f: Mor) -> Obj {
        self.morphisms[f].src
    }

    pub fn tgt(&self, f: Mor) -> Obj {
        self.morphisms[f].tgt
    }

    pub fn identity(&self, o: Obj) -> Mor {
        self.identities[o]
    }

    pub fn is_identity(&self, f: Mor) -> bool {
        self.identities[self.src(f)] == f
    }

    /// `g . f`. Panics when the pair is not composable.
    pub fn compose(&self, g: Mor, f: Mor) -> Mor {
        self.try_compose(g, f)
            .unwrap_or_else(|| panic!("{} . {} is not defined", self.morphism_name(g), self.morphism_name(f)))
    }

    pub fn try_compose(&self, g: Mor, f: Mor) -> Option<Mor> {
        self.compose[g * self.morphisms.len() + f]
    }

    pub fn hom(&self, a: Obj, b: Obj) -> &[Mor] {
        &self.homs[a * self.objects.len() + b]
    }

    /// All morphisms with the given source.
    pub fn out_of(&self, a: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.objects().flat_map(move |b| self.hom(a, b).iter().copied())
    }

    /// All morphisms with the given target.
    pub fn into_obj(&self, b: Obj) -> impl Iterator<Item = Mor> + '_ {
        self.objects().flat_map(move |a| self.hom(a, b).iter().copied())
    }

    pub fn inverse(&self, f: Mor) -> Option<Mor> {
        let (a, b) = (self.src(f), self.tgt(f));
        self.hom(b, a)
            .iter()
            .copied()
            .find(|&g| self.compose(g, f) == self.identity(a) && self.compose(f, g) == self.identity(b))
    }

    /// An isomorphism `a -> b` when one exists.
    pub fn find_iso(&self, a: Obj, b: Obj) -> Option<Mor> {
        self.hom(a, b).iter().copied().find(|&f| self.inverse(f).is_some())
    }

    pub fn opposite(&self) -> FinCategory {
        let m = self.morphisms.len();
        let morphisms = self
            .morphisms
            .iter()
            .map(|a| Arrow {
                name: a.name.clone(),
                src: a.tgt,
                tgt: a.src,
            })
            .collect::<Vec<_>>();
        let mut compose = vec![None; m * m];
        for g in 0..m {
            for f in 0..m {
                compose[f * m + g] = self.compose[g * m + f];
            }
        }
        let n = self.objects.len();
        let mut homs = vec![Vec::new(); n * n];
        for (i, arrow) in morphisms.iter().enumerate() {
            homs[arrow.src * n + arrow.tgt].push(i);
        }
        FinCategory {
            objects: self.objects.clone(),
            morphisms,
            identities: self.identities.clone(),
            compose,
            homs,
        }
    }

    /// The product category. Object `(a, b)` has index `a * |B| + b`, and
    /// morphism `(f, g)` has index `f * |mor B| + g`.
    pub fn product(&self, other: &FinCategory) -> FinCategory {
        let nb = other.object_count();
        let mb = other.morphism_count();
        let objects = self
            .objects()
            .flat_map(|a| other.objects().map(move |b| (a, b)))
            .map(|(a, b)| format!("({},{})", self.objects[a], other.objects[b]))
            .collect();
        let mut morphisms = Vec::with_capacity(self.morphism_count() * mb);
        for f in self.morphisms() {
            for g in other.morphisms() {
                morphisms.push(Arrow {
                    name: format!("({},{})", self.morphisms[f].name, other.morphisms[g].name),
                    src: self.src(f) * nb + other.src(g),
                    tgt: self.tgt(f) * nb + other.tgt(g),
                });
            }
        }
        let identities = self
            .objects()
            .flat_map(|a| other.objects().map(move |b| (a, b)))
            .map(|(a, b)| self.identity(a) * mb + other.identity(b))
            .collect();
        let mut composites = Vec::new();
        for f1 in self.morphisms() {
            for f2 in self.out_of(self.tgt(f1)) {
                let f = self.compose(f2, f1);
                for g1 in other.morphisms() {
                    for g2 in other.out_of(other.tgt(g1)) {
                        let g = other.compose(g2, g1);
                        composites.push((f2 * mb + g2, f1 * mb + g1, f * mb + g));
                    }
                }
            }
        }
        FinCategory::from_parts(objects, morphisms, identities, composites)
            .expect("product of valid categories is well formed")
    }

    /// The full subcategory on `objects`, with the inclusion's morphism map.
    pub fn full_subcategory(&self, objects: &[Obj]) -> (FinCategory, Vec<Mor>) {
        let mut new_index = HashMap::new();
        let mut morphisms = Vec::new();
        let mut inclusion = Vec::new();
        for (i, &a) in objects.iter().enumerate() {
            for (j, &b) in objects.iter().enumerate() {
                for &f in self.hom(a, b) {
                    new_index.insert((i, j, f), morphisms.len());
                    morphisms.push(Arrow {
                        name: self.morphisms[f].name.clone(),
                        src: i,
                        tgt: j,
                    });
                    inclusion.push(f);
                }
            }
        }
        let identities = objects
            .iter()
            .enumerate()
            .map(|(i, &a)| new_index[&(i, i, self.identity(a))])
            .collect();
        let mut composites = Vec::new();
        for (fi, arrow_f) in morphisms.iter().enumerate() {
            for (gi, arrow_g) in morphisms.iter().enumerate() {
                if arrow_f.tgt != arrow_g.src {
                    continue;
                }
                let h = self.compose(inclusion[gi], inclusion[fi]);
                composites.push((gi, fi, new_index[&(arrow_f.src, arrow_g.tgt, h)]));
            }
        }
        let names = objects.iter().map(|&a| self.objects[a].clone()).collect();
        let sub = FinCategory::from_parts(names, morphisms, identities, composites)
            .expect("full subcategory of a valid category is well formed");
        (sub, inclusion)
    }

    /// Nonempty, every pair of objects has a cospan, and every parallel
    /// pair is coequalized by some morphism.
    pub fn is_filtered(&self) -> bool {
        if self.objects.is_empty() {
            return false;
        }
        for x in self.objects() {
            for y in self.objects() {
                let has_cospan = self
                    .objects()
                    .any(|z| !self.hom(x, z).is_empty() && !self.hom(y, z).is_empty());
                if !has_cospan {
                    return false;
                }
                let hom = self.hom(x, y);
                for &f in hom {
                    for &g in hom {
                        if f < g && !self.out_of(y).any(|h| self.compose(h, f) == self.compose(h, g)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        if self.objects.is_empty() {
            return false;
        }
        let mut uf = UnionFind::<usize>::new(self.objects.len());
        for a in &self.morphisms {
            uf.union(a.src, a.tgt);
        }
        let root = uf.find(0);
        self.objects().all(|o| uf.find(o) == root)
    }

    /// Connected components of the underlying undirected graph, each given
    /// by its least object; `component[o]` is the index of the component.
    pub fn components(&self) -> Vec<usize> {
        let mut uf = UnionFind::<usize>::new(self.objects.len());
        for a in &self.morphisms {
            uf.union(a.src, a.tgt);
        }
        let mut label = HashMap::new();
        self.objects()
            .map(|o| {
                let next = label.len();
                *label.entry(uf.find(o)).or_insert(next)
            })
            .collect()
    }
}

/// Constructors for the standard small categories.
impl FinCategory {
    /// The unit category with one object and one morphism.
    pub fn unit() -> FinCategory {
        Self::discrete(&["*"])
    }

    pub fn empty() -> FinCategory {
        Self::discrete(&[])
    }

    pub fn discrete(objects: &[&str]) -> FinCategory {
        let morphisms = objects
            .iter()
            .enumerate()
            .map(|(i, o)| Arrow {
                name: format!("id_{o}"),
                src: i,
                tgt: i,
            })
            .collect();
        let composites = (0..objects.len()).map(|i| (i, i, i));
        FinCategory::new(
            objects.iter().map(|s| s.to_string()).collect(),
            morphisms,
            (0..objects.len()).collect(),
            composites,
        )
        .expect("discrete category")
    }

    /// One-object category on a monoid. Element 0 is the unit and
    /// `g . f` is `mul(g, f)`.
    pub fn monoid(elements: &[&str], mul: impl Fn(usize, usize) -> usize) -> Result<FinCategory> {
        let n = elements.len();
        let morphisms = elements
            .iter()
            .map(|e| Arrow {
                name: e.to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let mut composites = Vec::with_capacity(n * n);
        for g in 0..n {
            for f in 0..n {
                composites.push((g, f, mul(g, f)));
            }
        }
        FinCategory::new(vec!["*".into()], morphisms, vec![0], composites)
    }

    /// The cyclic group of order `n` as a one-object category.
    pub fn cyclic_group(n: usize) -> FinCategory {
        let names = (0..n)
            .map(|i| if i == 0 { "1".to_string() } else { format!("g{i}") })
            .collect::<Vec<_>>();
        let refs = names.iter().map(String::as_str).collect::<Vec<_>>();
        Self::monoid(&refs, |a, b| (a + b) % n).expect("cyclic group")
    }

    /// A preorder category with a morphism `i -> j` exactly when `leq(i, j)`.
    pub fn poset(objects: &[&str], leq: impl Fn(usize, usize) -> bool) -> Result<FinCategory> {
        let n = objects.len();
        let mut index = HashMap::new();
        let mut morphisms = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if leq(i, j) {
                    index.insert((i, j), morphisms.len());
                    let name = if i == j {
                        format!("id_{}", objects[i])
                    } else {
                        format!("{}<={}", objects[i], objects[j])
                    };
                    morphisms.push(Arrow { name, src: i, tgt: j });
                }
            }
        }
        let identities = (0..n)
            .map(|i| {
                index
                    .get(&(i, i))
                    .copied()
                    .ok_or_else(|| Error::MalformedTable(format!("{} is not reflexive", objects[i])))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut composites = Vec::new();
        for (&(i, j), &f) in &index {
            for k in 0..n {
                if let (Some(&g), Some(&h)) = (index.get(&(j, k)), index.get(&(i, k))) {
                    composites.push((g, f, h));
                }
            }
        }
        FinCategory::new(
            objects.iter().map(|s| s.to_string()).collect(),
            morphisms,
            identities,
            composites,
        )
    }

    /// The free category on a finite acyclic graph: morphisms are paths.
    /// Paths are named by their edges, outermost first, joined with `.`.
    pub fn free_on_acyclic_graph(objects: &[&str], edges: &[(&str, usize, usize)]) -> Result<FinCategory> {
        let n = objects.len();
        // paths as edge sequences, innermost first
        let mut paths: Vec<(Obj, Obj, Vec<usize>)> = (0..n).map(|o| (o, o, Vec::new())).collect();
        let mut frontier: Vec<usize> = Vec::new();
        for (e, &(_, s, t)) in edges.iter().enumerate() {
            if s >= n || t >= n {
                return Err(Error::MalformedTable(format!(
                    "edge {} has an unknown endpoint",
                    edges[e].0
                )));
            }
            frontier.push(paths.len());
            paths.push((s, t, vec![e]));
        }
        let mut rounds = 0;
        while !frontier.is_empty() {
            rounds += 1;
            if rounds > n + 1 {
                return Err(Error::MalformedTable("graph has a cycle".into()));
            }
            let mut next = Vec::new();
            for &p in &frontier {
                let (s, t, ref seq) = paths[p].clone();
                for (e, &(_, es, et)) in edges.iter().enumerate() {
                    if es == t {
                        let mut longer = seq.clone();
                        longer.push(e);
                        next.push(paths.len());
                        paths.push((s, et, longer));
                    }
                }
            }
            frontier = next;
        }
        let lookup: HashMap<Vec<usize>, usize> = paths
            .iter()
            .enumerate()
            .filter(|(_, p)| !p.2.is_empty())
            .map(|(i, p)| (p.2.clone(), i))
            .collect();
        let morphisms = paths
            .iter()
            .map(|(s, t, seq)| Arrow {
                name: if seq.is_empty() {
                    format!("id_{}", objects[*s])
                } else {
                    seq.iter().rev().map(|&e| edges[e].0).collect::<Vec<_>>().join(".")
                },
                src: *s,
                tgt: *t,
            })
            .collect::<Vec<_>>();
        let mut composites = Vec::new();
        for (f, pf) in paths.iter().enumerate() {
            for (g, pg) in paths.iter().enumerate() {
                if pf.1 != pg.0 {
                    continue;
                }
                let h = if pf.2.is_empty() {
                    g
                } else if pg.2.is_empty() {
                    f
                } else {
                    let mut seq = pf.2.clone();
                    seq.extend_from_slice(&pg.2);
                    lookup[&seq]
                };
                composites.push((g, f, h));
            }
        }
        FinCategory::new(
            objects.iter().map(|s| s.to_string()).collect(),
            morphisms,
            (0..n).collect(),
            composites,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn idempotent_monoid() -> FinCategory {
        FinCategory::monoid(&["1", "e"], |a, b| a | b).unwrap()
    }

    #[test]
    fn unit_category_validates() {
        assert!(FinCategory::unit().validate().is_ok());
    }

    #[test]
    fn idempotent_monoid_validates() {
        let m = idempotent_monoid();
        assert!(m.validate().is_ok());
        assert_eq!(m.compose(1, 1), 1);
    }

    #[test]
    fn broken_associativity_reports_triple() {
        // 1, a, b with aa = b, ab = a, ba = b, bb = b
        let table = [[0, 1, 2], [1, 2, 1], [2, 2, 2]];
        let arrows = ["1", "a", "b"]
            .iter()
            .map(|n| Arrow {
                name: n.to_string(),
                src: 0,
                tgt: 0,
            })
            .collect();
        let mut comps = Vec::new();
        for (g, row) in table.iter().enumerate() {
            for (f, &h) in row.iter().enumerate() {
                comps.push((g, f, h));
            }
        }
        let c = FinCategory::from_parts(vec!["*".into()], arrows, vec![0], comps).unwrap();
        let report = c.validate();
        assert!(report.violations.contains(&Violation::Associativity {
            h: "a".into(),
            g: "a".into(),
            f: "a".into()
        }));
        assert!(matches!(
            FinCategory::monoid(&["1", "a", "b"], |g, f| table[g][f]),
            Err(Error::Validation(_))
        ));
    }

    #[test]
    fn unknown_ids_are_malformed() {
        let arrows = vec![Arrow {
            name: "id".into(),
            src: 0,
            tgt: 3,
        }];
        let err = FinCategory::from_parts(vec!["*".into()], arrows, vec![0], []).unwrap_err();
        assert!(matches!(err, Error::MalformedTable(_)));
    }

    #[test]
    fn missing_composite_is_reported() {
        let arrows = vec![
            Arrow {
                name: "1".into(),
                src: 0,
                tgt: 0,
            },
            Arrow {
                name: "e".into(),
                src: 0,
                tgt: 0,
            },
        ];
        let c = FinCategory::from_parts(vec!["*".into()], arrows, vec![0], [(0, 0, 0), (0, 1, 1), (1, 0, 1)]).unwrap();
        let report = c.validate();
        assert_eq!(
            report.violations,
            vec![Violation::CompositionUndefined {
                g: "e".into(),
                f: "e".into()
            }]
        );
    }

    #[test]
    fn opposite_is_an_involution() {
        let two = FinCategory::free_on_acyclic_graph(&["0", "1"], &[("f", 0, 1)]).unwrap();
        let op = two.opposite();
        assert_eq!(op.hom(1, 0).len(), 1);
        assert!(op.hom(0, 1).is_empty());
        assert_eq!(op.opposite(), two);
        assert_eq!(idempotent_monoid().opposite().opposite(), idempotent_monoid());
        assert_eq!(FinCategory::unit().opposite(), FinCategory::unit());
    }

    #[test]
    fn free_categories_have_path_counts() {
        let span = FinCategory::free_on_acyclic_graph(&["l", "m", "r"], &[("p", 1, 0), ("q", 1, 2)]).unwrap();
        assert_eq!(span.morphism_count(), 5);
        let chain = FinCategory::free_on_acyclic_graph(&["0", "1", "2"], &[("f", 0, 1), ("g", 1, 2)]).unwrap();
        assert_eq!(chain.morphism_count(), 6);
        assert_eq!(chain.morphism_name(chain.hom(0, 2)[0]), "g.f");
    }

    #[test]
    fn filtered_and_connected() {
        assert!(FinCategory::unit().is_filtered());
        assert!(!FinCategory::empty().is_filtered());
        assert!(!FinCategory::cyclic_group(2).is_filtered());
        assert!(FinCategory::unit().is_connected());
        assert!(!FinCategory::empty().is_connected());
        assert!(!FinCategory::discrete(&["a", "b"]).is_connected());
        assert!(FinCategory::cyclic_group(2).is_connected());
        let two = FinCategory::free_on_acyclic_graph(&["0", "1"], &[("f", 0, 1)]).unwrap();
        assert!(two.is_filtered());
        let parallel = FinCategory::free_on_acyclic_graph(&["0", "1"], &[("f", 0, 1), ("g", 0, 1)]).unwrap();
        assert!(!parallel.is_filtered());
        assert!(parallel.is_connected());
    }

    #[test]
    fn product_counts() {
        let two = FinCategory::free_on_acyclic_graph(&["0", "1"], &[("f", 0, 1)]).unwrap();
        let p = two.product(&idempotent_monoid());
        assert!(p.validate().is_ok());
        assert_eq!(p.object_count(), 2);
        assert_eq!(p.morphism_count(), 6);
    }

    #[test]
    fn full_subcategory_of_chain() {
        let chain = FinCategory::free_on_acyclic_graph(&["0", "1", "2"], &[("f", 0, 1), ("g", 1, 2)]).unwrap();
        let (sub, inc) = chain.full_subcategory(&[0, 2]);
        assert!(sub.validate().is_ok());
        assert_eq!(sub.morphism_count(), 3);
        assert_eq!(chain.morphism_name(inc[sub.hom(0, 1)[0]]), "g.f");
    }
}
