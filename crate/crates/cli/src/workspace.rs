use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use fincat::category::Arrow;
use fincat::classes::WeightClass;
use fincat::profunctor::Profunctor;
use fincat::{Error, FinCategory, FinFunctor, Presheaf, Result};

use crate::format::{
    elem_name, parse_document, CategoryDoc, CommutationDoc, Document, Elem, FunctorDoc, MorphismDoc, PresheafDoc,
    ProfunctorDoc, Variance,
};

#[derive(Clone, Debug)]
pub struct NamedFunctor {
    pub source: String,
    pub target: String,
    pub functor: FinFunctor,
}

/// A loaded presheaf. For `Variance::Co` the stored presheaf lives on the
/// opposite of the named category.
#[derive(Clone, Debug)]
pub struct NamedPresheaf {
    pub on: String,
    pub variance: Variance,
    pub presheaf: Presheaf,
    pub elements: Vec<Vec<String>>,
}

#[derive(Clone, Debug)]
pub struct NamedProfunctor {
    pub source: String,
    pub target: String,
    pub profunctor: Profunctor,
    /// Element names per cell, indexed `[b][a]`.
    pub elements: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, Default)]
pub struct Workspace {
    pub categories: BTreeMap<String, Arc<FinCategory>>,
    pub functors: BTreeMap<String, NamedFunctor>,
    pub presheaves: BTreeMap<String, NamedPresheaf>,
    pub profunctors: BTreeMap<String, NamedProfunctor>,
    pub classes: BTreeMap<String, Vec<String>>,
    pub commutations: BTreeMap<String, CommutationDoc>,
}

fn unresolved(kind: &'static str, name: &str) -> Error {
    Error::UnresolvedReference {
        kind,
        name: name.to_string(),
    }
}

fn merge<T>(into: &mut BTreeMap<String, T>, from: BTreeMap<String, T>) -> Result<()> {
    for (name, value) in from {
        if into.contains_key(&name) {
            return Err(Error::DuplicateName(name));
        }
        into.insert(name, value);
    }
    Ok(())
}

/// Merges fragments, rejecting a name defined twice in the same section.
pub fn merge_documents(docs: Vec<Document>) -> Result<Document> {
    let mut all = Document::default();
    for d in docs {
        merge(&mut all.categories, d.categories)?;
        merge(&mut all.functors, d.functors)?;
        merge(&mut all.presheaves, d.presheaves)?;
        merge(&mut all.profunctors, d.profunctors)?;
        merge(&mut all.classes, d.classes)?;
        merge(&mut all.commutations, d.commutations)?;
    }
    Ok(all)
}

pub fn load_workspace<P: AsRef<Path>>(paths: &[P]) -> Result<Workspace> {
    let mut docs = Vec::with_capacity(paths.len());
    for p in paths {
        let text = std::fs::read_to_string(p)?;
        let doc = parse_document(&text).map_err(|e| match e {
            Error::Parse { line, column, message } => Error::Parse {
                line,
                column,
                message: format!("{}: {message}", p.as_ref().display()),
            },
            other => other,
        })?;
        docs.push(doc);
    }
    Workspace::from_document(merge_documents(docs)?)
}

pub fn load_str(texts: &[&str]) -> Result<Workspace> {
    let docs = texts.iter().map(|t| parse_document(t)).collect::<Result<Vec<_>>>()?;
    Workspace::from_document(merge_documents(docs)?)
}

fn index_of(names: &[String], name: &str, kind: &'static str) -> Result<usize> {
    names
        .iter()
        .position(|n| n == name)
        .ok_or_else(|| unresolved(kind, name))
}

fn build_category(name: &str, doc: &CategoryDoc) -> Result<FinCategory> {
    let objects = doc.objects.clone();
    for (i, o) in objects.iter().enumerate() {
        if objects[..i].contains(o) {
            return Err(Error::MalformedTable(format!(
                "category {name}: object {o} listed twice"
            )));
        }
    }
    let mut arrows = Vec::with_capacity(doc.morphisms.len());
    let mut ids: Vec<String> = Vec::with_capacity(doc.morphisms.len());
    for m in &doc.morphisms {
        if ids.contains(&m.id) {
            return Err(Error::MalformedTable(format!(
                "category {name}: morphism {} listed twice",
                m.id
            )));
        }
        arrows.push(Arrow {
            name: m.id.clone(),
            src: index_of(&objects, &m.src, "object")?,
            tgt: index_of(&objects, &m.tgt, "object")?,
        });
        ids.push(m.id.clone());
    }
    let mut identities = Vec::with_capacity(objects.len());
    for o in &objects {
        let id = doc
            .identities
            .get(o)
            .ok_or_else(|| Error::MalformedTable(format!("category {name}: object {o} has no identity")))?;
        identities.push(index_of(&ids, id, "morphism")?);
    }
    for o in doc.identities.keys() {
        index_of(&objects, o, "object")?;
    }
    let mut composites = Vec::new();
    let mut given = std::collections::HashSet::new();
    for [g, f, h] in &doc.compose {
        let (g, f, h) = (
            index_of(&ids, g, "morphism")?,
            index_of(&ids, f, "morphism")?,
            index_of(&ids, h, "morphism")?,
        );
        given.insert((g, f));
        composites.push((g, f, h));
    }
    for (f, arrow) in arrows.iter().enumerate() {
        let (s, t) = (identities[arrow.src], identities[arrow.tgt]);
        if !given.contains(&(t, f)) {
            composites.push((t, f, f));
        }
        if !given.contains(&(f, s)) {
            composites.push((f, s, f));
        }
    }
    let c = FinCategory::from_parts(objects, arrows, identities, composites)?;
    let mut report = c.validate();
    report.entity = format!("category {name}");
    report.into_result()?;
    Ok(c)
}

fn build_functor(ws: &Workspace, name: &str, doc: &FunctorDoc) -> Result<FinFunctor> {
    let source = ws.category(&doc.source)?;
    let target = ws.category(&doc.target)?;
    let tobj = |n: &str| target.object_index(n).ok_or_else(|| unresolved("object", n));
    let tmor = |n: &str| target.morphism_index(n).ok_or_else(|| unresolved("morphism", n));
    let mut obj_map = Vec::with_capacity(source.object_count());
    for o in source.objects() {
        let oname = source.object_name(o);
        let image = doc
            .objects
            .get(oname)
            .ok_or_else(|| Error::MalformedTable(format!("functor {name}: object {oname} is not mapped")))?;
        obj_map.push(tobj(image)?);
    }
    let mut mor_map = Vec::with_capacity(source.morphism_count());
    for m in source.morphisms() {
        let mname = source.morphism_name(m);
        let image = match doc.morphisms.get(mname) {
            Some(i) => tmor(i)?,
            None if source.is_identity(m) => target.identity(obj_map[source.src(m)]),
            None => {
                return Err(Error::MalformedTable(format!(
                    "functor {name}: morphism {mname} is not mapped"
                )))
            }
        };
        mor_map.push(image);
    }
    for k in doc.objects.keys() {
        source.object_index(k).ok_or_else(|| unresolved("object", k))?;
    }
    for k in doc.morphisms.keys() {
        source.morphism_index(k).ok_or_else(|| unresolved("morphism", k))?;
    }
    let f = FinFunctor::from_parts(source.clone(), target.clone(), obj_map, mor_map)?;
    let mut report = f.validate();
    report.entity = format!("functor {name}");
    report.into_result()?;
    Ok(f)
}

fn element_names(what: &str, list: &[Elem]) -> Result<Vec<String>> {
    let names: Vec<String> = list.iter().map(elem_name).collect();
    for (i, n) in names.iter().enumerate() {
        if names[..i].contains(n) {
            return Err(Error::MalformedTable(format!("{what}: element {n} listed twice")));
        }
    }
    Ok(names)
}

/// Reads a function between two named element lists; identities may be
/// omitted when `identity_ok`.
fn read_function(
    what: &str,
    map: Option<&BTreeMap<String, Elem>>,
    from: &[String],
    to: &[String],
    identity_ok: bool,
) -> Result<Vec<usize>> {
    let Some(map) = map else {
        if identity_ok {
            return Ok((0..from.len()).collect());
        }
        return Err(Error::MalformedTable(format!("{what}: action missing")));
    };
    for k in map.keys() {
        if !from.contains(k) {
            return Err(unresolved("element", k));
        }
    }
    from.iter()
        .map(|x| {
            let image = map
                .get(x)
                .ok_or_else(|| Error::MalformedTable(format!("{what}: no image for element {x}")))?;
            let image = elem_name(image);
            to.iter()
                .position(|y| *y == image)
                .ok_or_else(|| unresolved("element", &image))
        })
        .collect()
}

fn build_presheaf(ws: &Workspace, name: &str, doc: &PresheafDoc) -> Result<NamedPresheaf> {
    let c = ws.category(&doc.on)?;
    let base = match doc.variance {
        Variance::Contra => c.clone(),
        Variance::Co => Arc::new(c.opposite()),
    };
    let mut elements = Vec::with_capacity(c.object_count());
    for o in c.objects() {
        let oname = c.object_name(o);
        let list = doc
            .sets
            .get(oname)
            .ok_or_else(|| Error::MalformedTable(format!("presheaf {name}: no set for object {oname}")))?;
        elements.push(element_names(&format!("presheaf {name}"), list)?);
    }
    for k in doc.sets.keys() {
        c.object_index(k).ok_or_else(|| unresolved("object", k))?;
    }
    for k in doc.actions.keys() {
        c.morphism_index(k).ok_or_else(|| unresolved("morphism", k))?;
    }
    let mut actions = Vec::with_capacity(c.morphism_count());
    for f in c.morphisms() {
        let (from, to) = match doc.variance {
            Variance::Contra => (c.tgt(f), c.src(f)),
            Variance::Co => (c.src(f), c.tgt(f)),
        };
        actions.push(read_function(
            &format!("presheaf {name}, morphism {}", c.morphism_name(f)),
            doc.actions.get(c.morphism_name(f)),
            &elements[from],
            &elements[to],
            c.is_identity(f),
        )?);
    }
    let sizes = elements.iter().map(Vec::len).collect();
    let presheaf = Presheaf::from_parts(base, sizes, actions)?;
    let mut report = presheaf.validate();
    report.entity = format!("presheaf {name}");
    report.into_result()?;
    Ok(NamedPresheaf {
        on: doc.on.clone(),
        variance: doc.variance,
        presheaf,
        elements,
    })
}

fn build_profunctor(ws: &Workspace, name: &str, doc: &ProfunctorDoc) -> Result<NamedProfunctor> {
    let a = ws.category(&doc.source)?;
    let b = ws.category(&doc.target)?;
    let what = format!("profunctor {name}");
    let mut elements = Vec::with_capacity(b.object_count());
    for bo in b.objects() {
        let row = doc
            .sets
            .get(b.object_name(bo))
            .ok_or_else(|| Error::MalformedTable(format!("{what}: no sets for {}", b.object_name(bo))))?;
        let mut cells = Vec::with_capacity(a.object_count());
        for ao in a.objects() {
            let list = row.get(a.object_name(ao)).ok_or_else(|| {
                Error::MalformedTable(format!(
                    "{what}: no set at ({}, {})",
                    b.object_name(bo),
                    a.object_name(ao)
                ))
            })?;
            cells.push(element_names(&what, list)?);
        }
        elements.push(cells);
    }
    for k in doc.left.keys() {
        b.morphism_index(k).ok_or_else(|| unresolved("morphism", k))?;
    }
    for k in doc.right.keys() {
        a.morphism_index(k).ok_or_else(|| unresolved("morphism", k))?;
    }
    // left[v][a]: p(b', a) -> p(b, a) for v: b -> b'
    let mut left = Vec::with_capacity(b.morphism_count());
    for v in b.morphisms() {
        let maps = doc.left.get(b.morphism_name(v));
        let mut per = Vec::with_capacity(a.object_count());
        for ao in a.objects() {
            per.push(read_function(
                &format!("{what}, left action of {} at {}", b.morphism_name(v), a.object_name(ao)),
                maps.and_then(|m| m.get(a.object_name(ao))),
                &elements[b.tgt(v)][ao],
                &elements[b.src(v)][ao],
                b.is_identity(v),
            )?);
        }
        left.push(per);
    }
    // right[u][b]: p(b, a) -> p(b, a') for u: a -> a'
    let mut right = Vec::with_capacity(a.morphism_count());
    for u in a.morphisms() {
        let maps = doc.right.get(a.morphism_name(u));
        let mut per = Vec::with_capacity(b.object_count());
        for bo in b.objects() {
            per.push(read_function(
                &format!(
                    "{what}, right action of {} at {}",
                    a.morphism_name(u),
                    b.object_name(bo)
                ),
                maps.and_then(|m| m.get(b.object_name(bo))),
                &elements[bo][a.src(u)],
                &elements[bo][a.tgt(u)],
                a.is_identity(u),
            )?);
        }
        right.push(per);
    }
    let profunctor = Profunctor::from_fn(
        a,
        b,
        |bo, ao| elements[bo][ao].len(),
        |v, ao, x| left[v][ao][x],
        |u, bo, x| right[u][bo][x],
    )
    .map_err(|e| match e {
        Error::Validation(mut r) => {
            r.entity = what.clone();
            Error::Validation(r)
        }
        other => other,
    })?;
    let mut report = profunctor.table().validate();
    report.entity = what;
    report.into_result()?;
    Ok(NamedProfunctor {
        source: doc.source.clone(),
        target: doc.target.clone(),
        profunctor,
        elements,
    })
}

impl Workspace {
    pub fn from_document(doc: Document) -> Result<Workspace> {
        let mut ws = Workspace::default();
        for (name, c) in &doc.categories {
            ws.categories.insert(name.clone(), Arc::new(build_category(name, c)?));
        }
        for (name, f) in &doc.functors {
            let functor = build_functor(&ws, name, f)?;
            ws.functors.insert(
                name.clone(),
                NamedFunctor {
                    source: f.source.clone(),
                    target: f.target.clone(),
                    functor,
                },
            );
        }
        for (name, p) in &doc.presheaves {
            let built = build_presheaf(&ws, name, p)?;
            ws.presheaves.insert(name.clone(), built);
        }
        for (name, p) in &doc.profunctors {
            let built = build_profunctor(&ws, name, p)?;
            ws.profunctors.insert(name.clone(), built);
        }
        for (name, members) in &doc.classes {
            for m in members {
                let p = ws.presheaf(m)?;
                if p.variance != Variance::Contra {
                    return Err(Error::DomainMismatch(format!(
                        "class {name}: weight {m} must be contravariant"
                    )));
                }
            }
            ws.classes.insert(name.clone(), members.clone());
        }
        for (name, c) in &doc.commutations {
            ws.presheaf(&c.colimit_weight)?;
            ws.presheaf(&c.limit_weight)?;
            ws.profunctor(&c.bifunctor)?;
            ws.commutations.insert(name.clone(), c.clone());
        }
        Ok(ws)
    }

    pub fn category(&self, name: &str) -> Result<&Arc<FinCategory>> {
        self.categories.get(name).ok_or_else(|| unresolved("category", name))
    }

    pub fn functor(&self, name: &str) -> Result<&NamedFunctor> {
        self.functors.get(name).ok_or_else(|| unresolved("functor", name))
    }

    pub fn presheaf(&self, name: &str) -> Result<&NamedPresheaf> {
        self.presheaves.get(name).ok_or_else(|| unresolved("presheaf", name))
    }

    pub fn profunctor(&self, name: &str) -> Result<&NamedProfunctor> {
        self.profunctors.get(name).ok_or_else(|| unresolved("profunctor", name))
    }

    pub fn class(&self, name: &str) -> Result<WeightClass> {
        let members = self.classes.get(name).ok_or_else(|| unresolved("class", name))?;
        let weights = members
            .iter()
            .map(|m| Ok((m.clone(), self.presheaf(m)?.presheaf.clone())))
            .collect::<Result<Vec<_>>>()?;
        Ok(WeightClass::new(name, weights))
    }

    /// The canonical description of everything in the workspace.
    pub fn to_document(&self) -> Document {
        Document {
            categories: self
                .categories
                .iter()
                .map(|(n, c)| (n.clone(), category_doc(c)))
                .collect(),
            functors: self
                .functors
                .iter()
                .map(|(n, f)| (n.clone(), functor_doc(&f.source, &f.target, &f.functor)))
                .collect(),
            presheaves: self
                .presheaves
                .iter()
                .map(|(n, p)| {
                    (
                        n.clone(),
                        presheaf_doc(&p.on, p.variance, &p.presheaf, Some(&p.elements)),
                    )
                })
                .collect(),
            profunctors: self
                .profunctors
                .iter()
                .map(|(n, p)| {
                    (
                        n.clone(),
                        profunctor_doc(&p.source, &p.target, &p.profunctor, Some(&p.elements)),
                    )
                })
                .collect(),
            classes: self.classes.clone(),
            commutations: self.commutations.clone(),
        }
    }
}

pub fn category_doc(c: &FinCategory) -> CategoryDoc {
    let mut compose = Vec::new();
    for g in c.morphisms() {
        for f in c.morphisms() {
            if c.tgt(f) == c.src(g) && !c.is_identity(f) && !c.is_identity(g) {
                compose.push([
                    c.morphism_name(g).to_string(),
                    c.morphism_name(f).to_string(),
                    c.morphism_name(c.compose(g, f)).to_string(),
                ]);
            }
        }
    }
    CategoryDoc {
        objects: c.objects().map(|o| c.object_name(o).to_string()).collect(),
        morphisms: c
            .morphisms()
            .map(|m| MorphismDoc {
                id: c.morphism_name(m).to_string(),
                src: c.object_name(c.src(m)).to_string(),
                tgt: c.object_name(c.tgt(m)).to_string(),
            })
            .collect(),
        identities: c
            .objects()
            .map(|o| (c.object_name(o).to_string(), c.morphism_name(c.identity(o)).to_string()))
            .collect(),
        compose,
    }
}

pub fn functor_doc(source: &str, target: &str, f: &FinFunctor) -> FunctorDoc {
    let (s, t) = (f.source(), f.target());
    FunctorDoc {
        source: source.to_string(),
        target: target.to_string(),
        objects: s
            .objects()
            .map(|o| (s.object_name(o).to_string(), t.object_name(f.obj(o)).to_string()))
            .collect(),
        morphisms: s
            .morphisms()
            .filter(|&m| !s.is_identity(m))
            .map(|m| (s.morphism_name(m).to_string(), t.morphism_name(f.mor(m)).to_string()))
            .collect(),
    }
}

fn elem(names: Option<&Vec<String>>, x: usize) -> String {
    names.map_or_else(|| x.to_string(), |n| n[x].clone())
}

/// Serializes a presheaf stored on `on` (contra) or on its opposite (co).
pub fn presheaf_doc(on: &str, variance: Variance, p: &Presheaf, elements: Option<&Vec<Vec<String>>>) -> PresheafDoc {
    let base = p.base();
    let names = |o: usize| elements.map(|e| &e[o]);
    let sets = base
        .objects()
        .map(|o| {
            (
                base.object_name(o).to_string(),
                (0..p.size(o)).map(|x| Elem::String(elem(names(o), x))).collect(),
            )
        })
        .collect();
    let mut actions = BTreeMap::new();
    for f in base.morphisms().filter(|&f| !base.is_identity(f)) {
        // the stored action of f maps set(tgt f) to set(src f) on the base
        let (from, to) = (base.tgt(f), base.src(f));
        let map = (0..p.size(from))
            .map(|x| (elem(names(from), x), Elem::String(elem(names(to), p.act(f, x)))))
            .collect();
        actions.insert(base.morphism_name(f).to_string(), map);
    }
    PresheafDoc {
        on: on.to_string(),
        variance,
        sets,
        actions,
    }
}

pub fn profunctor_doc(
    source: &str,
    target: &str,
    p: &Profunctor,
    elements: Option<&Vec<Vec<Vec<String>>>>,
) -> ProfunctorDoc {
    let (a, b) = (p.source(), p.target());
    let name = |bo: usize, ao: usize, x: usize| elements.map_or_else(|| x.to_string(), |e| e[bo][ao][x].clone());
    let sets = b
        .objects()
        .map(|bo| {
            (
                b.object_name(bo).to_string(),
                a.objects()
                    .map(|ao| {
                        (
                            a.object_name(ao).to_string(),
                            (0..p.size(bo, ao)).map(|x| Elem::String(name(bo, ao, x))).collect(),
                        )
                    })
                    .collect(),
            )
        })
        .collect();
    let left = b
        .morphisms()
        .filter(|&v| !b.is_identity(v))
        .map(|v| {
            let per = a
                .objects()
                .map(|ao| {
                    let map = (0..p.size(b.tgt(v), ao))
                        .map(|x| {
                            (
                                name(b.tgt(v), ao, x),
                                Elem::String(name(b.src(v), ao, p.left(v, ao, x))),
                            )
                        })
                        .collect();
                    (a.object_name(ao).to_string(), map)
                })
                .collect();
            (b.morphism_name(v).to_string(), per)
        })
        .collect();
    let right = a
        .morphisms()
        .filter(|&u| !a.is_identity(u))
        .map(|u| {
            let per = b
                .objects()
                .map(|bo| {
                    let map = (0..p.size(bo, a.src(u)))
                        .map(|x| {
                            (
                                name(bo, a.src(u), x),
                                Elem::String(name(bo, a.tgt(u), p.right(u, bo, x))),
                            )
                        })
                        .collect();
                    (b.object_name(bo).to_string(), map)
                })
                .collect();
            (a.morphism_name(u).to_string(), per)
        })
        .collect();
    ProfunctorDoc {
        source: source.to_string(),
        target: target.to_string(),
        sets,
        left,
        right,
    }
}

/// Canonical JSON text for a document.
pub fn to_json(doc: &Document) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents serialize");
    s.push('\n');
    s
}
