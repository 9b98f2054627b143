use clap::Subcommand;
use fincat::cauchy::{
    cauchy_completion, check_absolute_random, check_absolute_sampled, isbell_left, isbell_unit, morita_equivalent,
    q_duality, retract_oracle, sample_catalog, small_projectivity,
};
use fincat::classes::{
    atoms, check_commutation, comma_connectedness_witness, flat_for_finite_limits, flat_for_terminal,
    in_saturation_bounded, is_phi_cocomplete, is_phi_continuous, phi_closure_bounded, recognize_free_cocompletion,
    Caps, Membership,
};
use fincat::elements::category_of_elements;
use fincat::equivalence::DEFAULT_BUDGET;
use fincat::kan::{lan, nerve, Provenance};
use fincat::limits::{
    colimit_in_category, finset_colimit, finset_limit, limit_in_category, weighted_colimit, weighted_limit,
};
use fincat::profunctor::{has_right_adjoint, right_extend, right_lift, weight_module, NoAdjoint, Profunctor};
use fincat::validate::ValidationReport;
use fincat::{Error, FinCategory, Presheaf, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::format::Variance;
use crate::workspace::{to_json, Workspace};

#[derive(Clone, Debug, Subcommand)]
pub enum Command {
    /// Re-check the laws of every entity, or of the named ones.
    Validate {
        names: Vec<String>,
    },
    /// Conical limit in finite sets of a set-valued diagram.
    Limit {
        diagram: String,
    },
    /// Conical colimit in finite sets of a set-valued diagram.
    Colimit {
        diagram: String,
    },
    /// Weighted limit of a presheaf diagram, or of a functor into a category.
    Wlimit {
        weight: String,
        diagram: String,
    },
    /// Weighted colimit of a covariant diagram, or of a functor into a category.
    Wcolimit {
        weight: String,
        diagram: String,
    },
    /// Left Kan extension of a covariant diagram along a functor.
    Kan {
        functor: String,
        diagram: String,
    },
    /// The nerve of a functor: hom presheaves of its target objects.
    Nerve {
        functor: String,
    },
    /// The category of elements of a presheaf.
    Elements {
        presheaf: String,
    },
    Filtered {
        category: String,
    },
    Connected {
        category: String,
    },
    /// Right lift of `h` through `f`.
    Lift {
        f: String,
        h: String,
    },
    /// Right extension of `h` along `g`.
    Extend {
        g: String,
        h: String,
    },
    /// Right adjoint of a module, or of the module of a weight.
    Adjoint {
        module: String,
    },
    /// Small-projective test with the retract and adjoint cross-checks.
    Smallproj {
        presheaf: String,
    },
    /// Idempotent-splitting completion.
    Cauchy {
        category: String,
    },
    /// The Isbell adjunction at a presheaf.
    Isbell {
        presheaf: String,
    },
    /// Duality between the completions of a category and its opposite.
    Duality {
        category: String,
    },
    Morita {
        a: String,
        b: String,
    },
    /// Bounded closure of the representables under a weight class.
    Closure {
        class: String,
        category: String,
    },
    /// Three-valued saturation membership.
    Saturation {
        presheaf: String,
        class: String,
    },
    Cocomplete {
        category: String,
        class: String,
    },
    Atoms {
        category: String,
        class: String,
    },
    /// Commutation of a colimit with a limit: a named scenario, or
    /// colimit weight, limit weight and module.
    Commute {
        #[arg(num_args = 1..=3, required = true)]
        args: Vec<String>,
    },
    /// Flatness for finite limits and for the terminal object.
    Flat {
        presheaf: String,
    },
    Continuous {
        presheaf: String,
        class: String,
    },
    /// The four conditions for a free cocompletion.
    Recognize {
        functor: String,
        class: String,
    },
    /// Preservation of a weight's colimits by sampled functors.
    AbsoluteSample {
        presheaf: String,
        /// Functors tested per colimit, drawn with `--seed`; all when omitted.
        #[arg(long)]
        samples: Option<usize>,
    },
    /// Print the loaded workspace in canonical form.
    Canonical,
}

#[derive(Clone, Copy, Debug, Default)]
pub struct Options {
    pub caps: Caps,
    pub seed: u64,
}

/// A finished command: human-readable lines, a JSON value and the exit
/// code (0, or 4 when a cap stopped a bounded computation).
#[derive(Clone, Debug)]
pub struct Report {
    pub lines: Vec<String>,
    pub json: Value,
    pub exit_code: i32,
}

impl Report {
    fn new(lines: Vec<String>, json: Value) -> Report {
        Report {
            lines,
            json,
            exit_code: 0,
        }
    }

    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

fn obj_names(c: &FinCategory, objs: impl IntoIterator<Item = usize>) -> Vec<String> {
    objs.into_iter().map(|o| c.object_name(o).to_string()).collect()
}

fn sizes_line(c: &FinCategory, sizes: &[usize]) -> String {
    c.objects()
        .map(|o| format!("{}={}", c.object_name(o), sizes[o]))
        .collect::<Vec<_>>()
        .join(" ")
}

fn sizes_json(c: &FinCategory, sizes: &[usize]) -> Value {
    Value::Object(
        c.objects()
            .map(|o| (c.object_name(o).to_string(), json!(sizes[o])))
            .collect(),
    )
}

fn module_sizes(p: &Profunctor) -> (Vec<String>, Value) {
    let (a, b) = (p.source(), p.target());
    let mut lines = Vec::new();
    let mut rows = serde_json::Map::new();
    for bo in b.objects() {
        let cells: Vec<usize> = a.objects().map(|ao| p.size(bo, ao)).collect();
        lines.push(format!("  {}: {}", b.object_name(bo), sizes_line(a, &cells)));
        rows.insert(b.object_name(bo).to_string(), sizes_json(a, &cells));
    }
    (lines, Value::Object(rows))
}

fn membership_name(m: &Membership) -> &'static str {
    match m {
        Membership::Yes(_) => "yes",
        Membership::NoAtFixpoint => "no-at-fixpoint",
        Membership::UnknownAtCap => "unknown-at-cap",
    }
}

fn module_of(ws: &Workspace, name: &str) -> Result<Profunctor> {
    if let Ok(p) = ws.profunctor(name) {
        return Ok(p.profunctor.clone());
    }
    let p = ws.presheaf(name)?;
    if p.variance != Variance::Contra {
        return Err(Error::DomainMismatch(format!(
            "{name} is covariant; a weight module needs a presheaf"
        )));
    }
    Ok(weight_module(&p.presheaf))
}

fn contra(ws: &Workspace, name: &str) -> Result<Presheaf> {
    let p = ws.presheaf(name)?;
    if p.variance != Variance::Contra {
        return Err(Error::DomainMismatch(format!(
            "{name} must be a contravariant presheaf"
        )));
    }
    Ok(p.presheaf.clone())
}

fn covariant(ws: &Workspace, name: &str) -> Result<Presheaf> {
    let p = ws.presheaf(name)?;
    if p.variance != Variance::Co {
        return Err(Error::DomainMismatch(format!(
            "{name} must be a covariant functor into sets"
        )));
    }
    Ok(p.presheaf.clone())
}

pub fn run_command(ws: &Workspace, cmd: &Command, opts: &Options) -> Result<Report> {
    let budget = opts.caps.budget;
    match cmd {
        Command::Canonical => {
            let doc = ws.to_document();
            let text = to_json(&doc);
            Ok(Report::new(
                text.lines().map(str::to_string).collect(),
                serde_json::to_value(&doc).expect("documents serialize"),
            ))
        }
        Command::Validate { names } => {
            let mut lines = Vec::new();
            let mut entities = Vec::new();
            let mut push = |kind: &str, name: &str, report: ValidationReport| {
                let ok = report.is_ok();
                lines.push(format!("{kind} {name}: {}", if ok { "ok".to_string() } else { report.to_string() }));
                entities.push(json!({"kind": kind, "name": name, "ok": ok, "violations": report.violations}));
            };
            let wanted = |n: &String| names.is_empty() || names.contains(n);
            for (n, c) in ws.categories.iter().filter(|(n, _)| wanted(n)) {
                push("category", n, c.validate());
            }
            for (n, f) in ws.functors.iter().filter(|(n, _)| wanted(n)) {
                push("functor", n, f.functor.validate());
            }
            for (n, p) in ws.presheaves.iter().filter(|(n, _)| wanted(n)) {
                push("presheaf", n, p.presheaf.validate());
            }
            for (n, p) in ws.profunctors.iter().filter(|(n, _)| wanted(n)) {
                push("profunctor", n, p.profunctor.table().validate());
            }
            for n in names {
                let known = ws.categories.contains_key(n)
                    || ws.functors.contains_key(n)
                    || ws.presheaves.contains_key(n)
                    || ws.profunctors.contains_key(n);
                if !known {
                    return Err(Error::UnresolvedReference {
                        kind: "entity",
                        name: n.clone(),
                    });
                }
            }
            Ok(Report::new(lines, json!({"entities": entities})))
        }
        Command::Limit { diagram } => {
            let d = &ws.presheaf(diagram)?.presheaf;
            let lim = finset_limit(d);
            Ok(Report::new(
                vec![format!("limit of {diagram}: set of size {}", lim.size())],
                json!({"size": lim.size(), "families": lim.families}),
            ))
        }
        Command::Colimit { diagram } => {
            let d = &ws.presheaf(diagram)?.presheaf;
            let colim = finset_colimit(d);
            Ok(Report::new(
                vec![format!("colimit of {diagram}: set of size {}", colim.size)],
                json!({"size": colim.size, "injections": colim.injections}),
            ))
        }
        Command::Wlimit { weight, diagram } => {
            let phi = contra(ws, weight)?;
            if let Ok(t) = ws.functor(diagram) {
                let a = t.functor.target();
                let lim = limit_in_category(&phi, &t.functor)?;
                let apex = lim.as_ref().map(|l| a.object_name(l.apex).to_string());
                let line = match &apex {
                    Some(x) => format!("{{{weight}, {diagram}}} exists: apex {x}"),
                    None => format!("{{{weight}, {diagram}}} does not exist in {}", t.target),
                };
                return Ok(Report::new(vec![line], json!({"exists": apex.is_some(), "apex": apex})));
            }
            let t = contra(ws, diagram)?;
            let lim = weighted_limit(&phi, &t)?;
            Ok(Report::new(
                vec![format!("{{{weight}, {diagram}}}: set of size {}", lim.size())],
                json!({"size": lim.size(), "cone": lim.cone.iter().map(|c| &c.components).collect::<Vec<_>>()}),
            ))
        }
        Command::Wcolimit { weight, diagram } => {
            let phi = contra(ws, weight)?;
            if let Ok(s) = ws.functor(diagram) {
                let a = s.functor.target();
                let colim = colimit_in_category(&phi, &s.functor)?;
                let apex = colim.as_ref().map(|c| a.object_name(c.apex).to_string());
                let line = match &apex {
                    Some(x) => format!("{weight} * {diagram} exists: apex {x}"),
                    None => format!("{weight} * {diagram} does not exist in {}", s.target),
                };
                return Ok(Report::new(vec![line], json!({"exists": apex.is_some(), "apex": apex})));
            }
            let s = covariant(ws, diagram)?;
            let colim = weighted_colimit(&phi, &s)?;
            Ok(Report::new(
                vec![format!("{weight} * {diagram}: set of size {}", colim.size)],
                json!({"size": colim.size, "cocone": colim.cocone}),
            ))
        }
        Command::Kan { functor, diagram } => {
            let k = ws.functor(functor)?;
            let t = covariant(ws, diagram)?;
            let l = lan(&k.functor, &t)?;
            let d = k.functor.target();
            Ok(Report::new(
                vec![format!("Lan_{functor} {diagram}: {}", sizes_line(d, l.functor.sizes()))],
                json!({"sizes": sizes_json(d, l.functor.sizes()), "unit": l.unit.components}),
            ))
        }
        Command::Nerve { functor } => {
            let g = ws.functor(functor)?;
            let n = nerve(&g.functor);
            let (a, b) = (g.functor.source(), g.functor.target());
            let mut lines = vec![format!("nerve of {functor}: {} presheaves on {}", n.presheaves.len(), g.source)];
            let mut out = serde_json::Map::new();
            for o in b.objects() {
                let p = &n.presheaves[o];
                lines.push(format!("  {}: {}", b.object_name(o), sizes_line(a, p.sizes())));
                out.insert(b.object_name(o).to_string(), sizes_json(a, p.sizes()));
            }
            Ok(Report::new(lines, json!({"presheaves": out})))
        }
        Command::Elements { presheaf } => {
            let p = &ws.presheaf(presheaf)?.presheaf;
            let el = category_of_elements(p);
            let c = &el.category;
            let names: Vec<String> = el
                .elements
                .iter()
                .map(|&(k, x)| format!("({},{})", p.base().object_name(k), x))
                .collect();
            Ok(Report::new(
                vec![
                    format!("el({presheaf}): {} objects, {} morphisms", c.object_count(), c.morphism_count()),
                    format!("  objects: {}", names.join(" ")),
                    format!("  connected={} opposite filtered={}", c.is_connected(), c.opposite().is_filtered()),
                ],
                json!({
                    "objects": names,
                    "morphisms": c.morphism_count(),
                    "connected": c.is_connected(),
                    "opposite_filtered": c.opposite().is_filtered(),
                }),
            ))
        }
        Command::Filtered { category } => {
            let v = ws.category(category)?.is_filtered();
            Ok(Report::new(vec![format!("{category} filtered: {v}")], json!({"filtered": v})))
        }
        Command::Connected { category } => {
            let v = ws.category(category)?.is_connected();
            Ok(Report::new(vec![format!("{category} connected: {v}")], json!({"connected": v})))
        }
        Command::Lift { f, h } => {
            let r = right_lift(&module_of(ws, f)?, &module_of(ws, h)?)?;
            let (mut lines, sizes) = module_sizes(&r.profunctor);
            lines.insert(0, format!("{{|{f}, {h}|}} cell sizes:"));
            Ok(Report::new(lines, json!({"sizes": sizes})))
        }
        Command::Extend { g, h } => {
            let r = right_extend(&module_of(ws, g)?, &module_of(ws, h)?)?;
            let (mut lines, sizes) = module_sizes(&r.profunctor);
            lines.insert(0, format!("[[{g}, {h}]] cell sizes:"));
            Ok(Report::new(lines, json!({"sizes": sizes})))
        }
        Command::Adjoint { module } => match has_right_adjoint(&module_of(ws, module)?)? {
            Ok(adj) => {
                let (mut lines, sizes) = module_sizes(&adj.right);
                lines.insert(0, format!("{module} has a right adjoint; cell sizes:"));
                Ok(Report::new(lines, json!({"adjoint": true, "right_sizes": sizes})))
            }
            Err(NoAdjoint::ComparisonNotBijective {
                cell,
                injective,
                surjective,
            }) => Ok(Report::new(
                vec![format!(
                    "{module} has no right adjoint: comparison at cell {cell:?} injective={injective} surjective={surjective}"
                )],
                json!({"adjoint": false, "cell": [cell.0, cell.1], "injective": injective, "surjective": surjective}),
            )),
        },
        Command::Smallproj { presheaf } => {
            let p = contra(ws, presheaf)?;
            let r = small_projectivity(&p)?;
            let retract = retract_oracle(&p).map(|r| p.base().object_name(r.object).to_string());
            let adjoint = has_right_adjoint(&weight_module(&p))?.is_ok();
            let agree = r.small_projective == retract.is_some() && retract.is_some() == adjoint;
            Ok(Report::new(
                vec![
                    format!("{presheaf} small projective: {}", r.small_projective),
                    format!(
                        "  phi * L(phi) = {}, Nat(phi, phi) = {}, image = {}",
                        r.colimit_size, r.endo_count, r.image_size
                    ),
                    format!("  retract of Y({}) ; module adjoint: {adjoint} ; agree: {agree}", retract.as_deref().unwrap_or("-")),
                ],
                json!({
                    "small_projective": r.small_projective,
                    "colimit_size": r.colimit_size,
                    "endo_count": r.endo_count,
                    "retract_of": retract,
                    "module_adjoint": adjoint,
                    "agree": agree,
                }),
            ))
        }
        Command::Cauchy { category } => {
            let q = cauchy_completion(ws.category(category)?);
            let c = &q.completion;
            let names = obj_names(c, c.objects());
            let homs: Vec<Vec<usize>> = c
                .objects()
                .map(|x| c.objects().map(|y| c.hom(x, y).len()).collect())
                .collect();
            let flat: Vec<String> = homs.iter().flatten().map(usize::to_string).collect();
            let verified = q.verify()?;
            Ok(Report::new(
                vec![
                    format!(
                        "Q({category}): {} objects, {} isomorphism classes, verified={verified}",
                        c.object_count(),
                        q.class_count()
                    ),
                    format!("  objects: {}", names.join(" ")),
                    format!("  hom sizes: {}", flat.join("/")),
                ],
                json!({"objects": names, "classes": q.class_count(), "homs": homs, "verified": verified}),
            ))
        }
        Command::Isbell { presheaf } => {
            let p = contra(ws, presheaf)?;
            let l = isbell_left(&p);
            let (rl, unit) = isbell_unit(&p)?;
            let iso = unit.is_iso(&p, &rl);
            let k = p.base();
            Ok(Report::new(
                vec![
                    format!("L({presheaf}): {}", sizes_line(k, l.functor.sizes())),
                    format!("R L({presheaf}): {}", sizes_line(k, rl.sizes())),
                    format!("  unit invertible: {iso}"),
                ],
                json!({"left": sizes_json(k, l.functor.sizes()), "right_left": sizes_json(k, rl.sizes()), "unit_iso": iso}),
            ))
        }
        Command::Duality { category } => {
            let w = q_duality(ws.category(category)?, budget)?;
            Ok(Report::new(
                vec![format!(
                    "Q({category}^op)^op -> Q({category}): isomorphism={} equivalence found={}",
                    w.is_isomorphism,
                    w.equivalence.is_some()
                )],
                json!({"isomorphism": w.is_isomorphism, "equivalence": w.equivalence.is_some()}),
            ))
        }
        Command::Morita { a, b } => {
            let (ca, cb) = (ws.category(a)?, ws.category(b)?);
            match morita_equivalent(ca, cb, budget)? {
                Some(e) => {
                    let (qa, qb) = (e.forward.source().clone(), e.forward.target().clone());
                    let fwd = obj_names(&qb, e.forward.obj_map().iter().copied());
                    let bwd = obj_names(&qa, e.backward.obj_map().iter().copied());
                    Ok(Report::new(
                        vec![
                            format!("{a} and {b} are Morita equivalent: true"),
                            format!("  Q({a}) -> Q({b}) on objects: {}", fwd.join(" ")),
                            format!("  Q({b}) -> Q({a}) on objects: {}", bwd.join(" ")),
                        ],
                        json!({
                            "equivalent": true,
                            "forward": {"objects": fwd, "morphisms": e.forward.mor_map()},
                            "backward": {"objects": bwd, "morphisms": e.backward.mor_map()},
                        }),
                    ))
                }
                None => Ok(Report::new(
                    vec![format!("{a} and {b} are Morita equivalent: false")],
                    json!({"equivalent": false}),
                )),
            }
        }
        Command::Closure { class, category } => {
            let phi = ws.class(class)?;
            let c = phi_closure_bounded(&phi, ws.category(category)?, opts.caps)?;
            let k = c.collection.base();
            let mut lines = vec![format!(
                "closure of {category} under {class}: {} members, {} rounds, fixpoint={}",
                c.collection.len(),
                c.rounds,
                c.saturated_at_bound
            )];
            let mut members = Vec::new();
            for (i, (p, prov)) in c.collection.members().iter().zip(c.collection.provenance()).enumerate() {
                let origin = match prov {
                    Provenance::Representable(o) => format!("Y({})", k.object_name(*o)),
                    Provenance::Colimit { weight, diagram, .. } => format!("{weight} * {:?}", diagram.objects),
                };
                lines.push(format!("  P{i}: {} from {origin}", sizes_line(k, p.sizes())));
                members.push(json!({"sizes": sizes_json(k, p.sizes()), "origin": origin}));
            }
            if let Some(cap) = &c.cap_hit {
                lines.push(format!("  stopped at cap: {cap}"));
            }
            let mut r = Report::new(
                lines,
                json!({"members": members, "rounds": c.rounds, "fixpoint": c.saturated_at_bound, "cap": c.cap_hit}),
            );
            if c.cap_hit.is_some() {
                r.exit_code = 4;
            }
            Ok(r)
        }
        Command::Saturation { presheaf, class } => {
            let m = in_saturation_bounded(&contra(ws, presheaf)?, &ws.class(class)?, opts.caps)?;
            let mut r = Report::new(
                vec![format!("{presheaf} in saturation of {class}: {}", membership_name(&m))],
                json!({"membership": membership_name(&m)}),
            );
            if m == Membership::UnknownAtCap {
                r.exit_code = 4;
            }
            Ok(r)
        }
        Command::Cocomplete { category, class } => {
            let n = ws.category(category)?;
            let c = is_phi_cocomplete(n, &ws.class(class)?, budget)?;
            let mut lines = vec![format!("{category} {class}-cocomplete: {} ({} instances)", c.cocomplete, c.instances)];
            let witness = c.missing.as_ref().map(|(w, objs, _)| {
                let names = obj_names(n, objs.iter().copied());
                lines.push(format!("  no colimit for weight {w} on diagram {}", names.join(" ")));
                json!({"weight": w, "objects": names})
            });
            Ok(Report::new(lines, json!({"cocomplete": c.cocomplete, "instances": c.instances, "missing": witness})))
        }
        Command::Atoms { category, class } => {
            let a = ws.category(category)?;
            let names = obj_names(a, atoms(a, &ws.class(class)?, budget)?);
            Ok(Report::new(
                vec![format!("{class}-atoms of {category}: {{{}}}", names.join(", "))],
                json!({"atoms": names}),
            ))
        }
        Command::Commute { args } => {
            let (phi, psi, s) = match args.as_slice() {
                [name] => {
                    let c = ws.commutations.get(name).ok_or_else(|| Error::UnresolvedReference {
                        kind: "commutation",
                        name: name.clone(),
                    })?;
                    (c.colimit_weight.clone(), c.limit_weight.clone(), c.bifunctor.clone())
                }
                [a, b, c] => (a.clone(), b.clone(), c.clone()),
                _ => return Err(Error::Usage("commute takes a scenario name or three entity names".into())),
            };
            let bif = ws.profunctor(&s)?.profunctor.bifunctor().clone();
            let c = check_commutation(&contra(ws, &phi)?, &contra(ws, &psi)?, &bif)?;
            Ok(Report::new(
                vec![
                    format!("{phi} * {{{psi}, -}} commutes: {}", c.commutes),
                    format!(
                        "  colimit of limits: {}, limit of colimits: {}, image: {}",
                        c.colimit_of_limits, c.limit_of_colimits, c.image
                    ),
                ],
                json!({
                    "commutes": c.commutes,
                    "colimit_of_limits": c.colimit_of_limits,
                    "limit_of_colimits": c.limit_of_colimits,
                    "image": c.image,
                    "injective": c.injective,
                }),
            ))
        }
        Command::Flat { presheaf } => {
            let p = contra(ws, presheaf)?;
            let (fl, ft) = (flat_for_finite_limits(&p), flat_for_terminal(&p));
            let comma = comma_connectedness_witness(&p);
            Ok(Report::new(
                vec![
                    format!("{presheaf} flat for finite limits: {fl}"),
                    format!("{presheaf} flat for the terminal object: {ft}"),
                    format!("  comma category over representables and 0: {} objects, connected={}", comma.objects, comma.connected),
                ],
                json!({"finite_limits": fl, "terminal": ft, "comma_connected": comma.connected}),
            ))
        }
        Command::Continuous { presheaf, class } => {
            let p = contra(ws, presheaf)?;
            let c = is_phi_continuous(&p, &ws.class(class)?, budget)?;
            let mut lines = vec![format!(
                "{presheaf} {class}-continuous: {} ({} instances checked, {} without colimit)",
                c.continuous, c.checked, c.skipped
            )];
            if let Some((w, objs)) = &c.failure {
                lines.push(format!("  fails on weight {w} with diagram {}", obj_names(p.base(), objs.iter().copied()).join(" ")));
            }
            Ok(Report::new(lines, json!({"continuous": c.continuous, "checked": c.checked, "skipped": c.skipped})))
        }
        Command::Recognize { functor, class } => {
            let g = ws.functor(functor)?;
            let r = recognize_free_cocompletion(&g.functor, &ws.class(class)?, opts.caps)?;
            Ok(Report::new(
                vec![
                    format!("{functor} exhibits a free {class}-cocompletion: {}", r.all_hold()),
                    format!("  (i) fully faithful: {}", r.fully_faithful),
                    format!("  (ii) target cocomplete: {}", r.cocomplete),
                    format!("  (iii) closure of the image is everything: {} ({} rounds)", r.dense, r.closure_rounds),
                    format!("  (iv) image consists of atoms: {}", r.image_in_atoms),
                ],
                json!({
                    "all": r.all_hold(),
                    "fully_faithful": r.fully_faithful,
                    "cocomplete": r.cocomplete,
                    "dense": r.dense,
                    "atoms": r.image_in_atoms,
                }),
            ))
        }
        Command::AbsoluteSample { presheaf, samples } => {
            let p = contra(ws, presheaf)?;
            let catalog = sample_catalog();
            let report = match samples {
                None => check_absolute_sampled(&p, &catalog, budget)?,
                Some(n) => {
                    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
                    check_absolute_random(&p, &catalog, &mut rng, *n, budget)?
                }
            };
            let mut lines = vec![format!(
                "{presheaf}: {} colimit instances, {} preservation checks, {} violations",
                report.instances,
                report.checks,
                report.violations.len()
            )];
            for v in report.violations.iter().take(5) {
                lines.push(format!("  in {} at {:?}: {} ({})", v.category, v.diagram, v.functor, v.reason));
            }
            let violations: Vec<Value> = report
                .violations
                .iter()
                .map(|v| json!({"category": v.category, "diagram": v.diagram, "functor": v.functor, "reason": v.reason}))
                .collect();
            Ok(Report::new(
                lines,
                json!({"instances": report.instances, "checks": report.checks, "violations": violations}),
            ))
        }
    }
}

/// Caps built from command-line overrides.
pub fn caps(rounds: Option<usize>, members: Option<usize>, budget: Option<u64>) -> Caps {
    let d = Caps::default();
    Caps {
        rounds: rounds.unwrap_or(d.rounds),
        members: members.unwrap_or(d.members),
        set_size: d.set_size,
        budget: budget.unwrap_or(DEFAULT_BUDGET),
    }
}
