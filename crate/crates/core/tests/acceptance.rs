//! Acceptance suite: one line per criterion. Every comparison is exact
//! (tolerance 0); there are no floating-point quantities anywhere.

use std::sync::Arc;

use fincat::cauchy::{
    cauchy_completion, check_absolute_sampled, dual_limit_colimit, dual_pair, is_small_projective, morita_equivalent,
    q_duality, retract_oracle, sample_catalog,
};
use fincat::classes::{
    check_commutation, flat_for_finite_limits, group_cospan, is_phi_continuous, phi_closure_bounded,
    recognize_free_cocompletion, Caps, WeightClass,
};
use fincat::equivalence::{find_equivalence, DEFAULT_BUDGET};
use fincat::generate::{random_functor, random_presheaf};
use fincat::kan::{lan_adjunction_holds, yoneda_bijection_holds, PresheafCollection};
use fincat::limits::{colimit_paths_agree, limit_paths_agree};
use fincat::profunctor::{has_right_adjoint, weight_module};
use fincat::{fixtures, FinCategory, FinFunctor, Presheaf, Result};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

const SEED: u64 = 20_240_601;

fn small_categories() -> Vec<(&'static str, Arc<FinCategory>)> {
    fixtures::categories()
        .into_iter()
        .filter(|(_, c)| c.object_count() <= 3)
        .collect()
}

fn c1_cauchy_m() -> Result<(bool, String)> {
    let m = fixtures::monoid_m();
    let q = cauchy_completion(&m);
    // independent Karoubi oracle on the raw monoid table
    let idem: Vec<usize> = m.morphisms().filter(|&x| m.compose(x, x) == x).collect();
    let mut expected = Vec::new();
    for &p in &idem {
        for &r in &idem {
            expected.push(m.morphisms().filter(|&x| m.compose(r, m.compose(x, p)) == x).count());
        }
    }
    let c = &q.completion;
    let n = c.object_count();
    let got: Vec<usize> = (0..n * n).map(|i| c.hom(i / n, i % n).len()).collect();
    // iso classes by brute force over pairs of arrows
    let iso = |a: usize, b: usize| {
        c.hom(a, b).iter().any(|&f| {
            c.hom(b, a)
                .iter()
                .any(|&g| c.compose(g, f) == c.identity(a) && c.compose(f, g) == c.identity(b))
        })
    };
    let mut reps: Vec<usize> = Vec::new();
    for o in c.objects() {
        if !reps.iter().any(|&r| iso(r, o)) {
            reps.push(o);
        }
    }
    let ok = reps.len() == 2 && got == expected && got == vec![2, 1, 1, 1] && q.verify()?;
    Ok((ok, format!("classes={} homs={got:?} oracle={expected:?}", reps.len())))
}

fn c2_small_projective_agreement() -> Result<(bool, String)> {
    let corpus = fixtures::weight_corpus();
    let mut agree = 0;
    let mut projective = 0;
    for (_, phi) in &corpus {
        let a = is_small_projective(phi)?;
        let b = retract_oracle(phi).is_some();
        let c = has_right_adjoint(&weight_module(phi))?.is_ok();
        if a == b && b == c {
            agree += 1;
        }
        projective += usize::from(a);
    }
    let ok = corpus.len() >= 50 && agree == corpus.len();
    Ok((
        ok,
        format!("{agree}/{} agree, {projective} small projective", corpus.len()),
    ))
}

fn c3_orbits_against_pullbacks() -> Result<(bool, String)> {
    let phi = Presheaf::constant(&fixtures::z2(), 1);
    let c = check_commutation(&phi, &fixtures::pullback_weight(), &group_cospan(2)?)?;
    let continuous = is_phi_continuous(&phi, &WeightClass::pushouts(), DEFAULT_BUDGET)?;
    let flat = flat_for_finite_limits(&phi);
    let ok = !c.commutes
        && c.colimit_of_limits == 2
        && c.limit_of_colimits == 1
        && continuous.continuous
        && continuous.checked > 0
        && !flat;
    Ok((
        ok,
        format!(
            "commutes={} sides={}/{} continuous={} flat={flat}",
            c.commutes, c.colimit_of_limits, c.limit_of_colimits, continuous.continuous
        ),
    ))
}

fn c4_dual_paths() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let cats = small_categories();
    let mut agree = 0;
    let total = 100;
    for i in 0..total {
        let (_, k) = &cats[i % cats.len()];
        let phi = random_presheaf(&mut rng, k, 2);
        let ok = if i % 2 == 0 {
            let s = random_presheaf(&mut rng, &Arc::new(k.opposite()), 2);
            colimit_paths_agree(&phi, &s)?
        } else {
            let t = random_presheaf(&mut rng, k, 2);
            limit_paths_agree(&phi, &t)?
        };
        agree += usize::from(ok);
    }
    Ok((agree == total, format!("{agree}/{total} instances agree")))
}

fn c5_yoneda() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 5);
    let mut checked = 0;
    let mut good = 0;
    for (name, k) in fixtures::categories() {
        let mut fs: Vec<Presheaf> = fixtures::weight_corpus()
            .into_iter()
            .filter(|(n, _)| n.split('/').next() == Some(name))
            .map(|(_, p)| p)
            .collect();
        fs.extend((0..4).map(|_| random_presheaf(&mut rng, &k, 2)));
        for f in &fs {
            for b in k.objects() {
                checked += 1;
                good += usize::from(yoneda_bijection_holds(f, b));
            }
        }
    }
    Ok((good == checked, format!("{good}/{checked} (K, b, F) triples")))
}

fn c6_closure() -> Result<(bool, String)> {
    let caps = Caps::default();
    let mut ok = true;
    for (_, a) in fixtures::categories() {
        let reps = PresheafCollection::representables(&a);
        let empty = phi_closure_bounded(&WeightClass::empty(), &a, caps)?;
        ok &= empty.saturated_at_bound
            && empty.collection.len() == reps.len()
            && reps.members().iter().all(|p| empty.collection.find(p).is_some());
        let init = phi_closure_bounded(&WeightClass::initial(), &a, caps)?;
        ok &= init.saturated_at_bound
            && init.collection.len() == reps.len() + 1
            && init.collection.find(&Presheaf::constant(&a, 0)).is_some();
    }
    let m = fixtures::monoid_m();
    let e = phi_closure_bounded(&WeightClass::e_splitting(), &m, caps)?;
    let members_ok = e.collection.len() == 2
        && e.collection.find(&Presheaf::representable(&m, 0)).is_some()
        && e.collection.find(&fixtures::e_weight()).is_some();
    ok &= members_ok && e.saturated_at_bound && e.verify_fixpoint(&WeightClass::e_splitting())?;
    Ok((
        ok,
        format!(
            "E-closure on M: {} members, {} rounds, fixpoint={}",
            e.collection.len(),
            e.rounds,
            e.saturated_at_bound
        ),
    ))
}

fn c7_morita() -> Result<(bool, String)> {
    let m = fixtures::monoid_m();
    let qm = cauchy_completion(&m).completion;
    let mq = morita_equivalent(&m, &qm, DEFAULT_BUDGET)?.is_some_and(|e| e.verify());
    let zi = morita_equivalent(&fixtures::z2(), &fixtures::unit(), DEFAULT_BUDGET)?.is_none();
    let mut selfs = 0;
    let mut idem = 0;
    let cats = fixtures::categories();
    for (_, a) in &cats {
        selfs += usize::from(morita_equivalent(a, a, DEFAULT_BUDGET)?.is_some());
        let q = cauchy_completion(a).completion;
        let qq = cauchy_completion(&q).completion;
        idem += usize::from(find_equivalence(&qq, &q, DEFAULT_BUDGET)?.is_some());
    }
    let ok = mq && zi && selfs == cats.len() && idem == cats.len();
    Ok((
        ok,
        format!(
            "M~QM={mq} Z2!~I={zi} self={selfs}/{} QQ~Q={idem}/{}",
            cats.len(),
            cats.len()
        ),
    ))
}

fn c8_duality() -> Result<(bool, String)> {
    let mut ok = true;
    for a in [fixtures::unit(), fixtures::monoid_m(), fixtures::z2()] {
        let w = q_duality(&a, DEFAULT_BUDGET)?;
        ok &= w.is_isomorphism && w.equivalence.is_some();
    }
    let m = fixtures::monoid_m();
    let pair = dual_pair(&fixtures::e_weight())?;
    let Some(pair) = pair else {
        return Ok((false, "E has no dual pair".into()));
    };
    let in_m = dual_limit_colimit(&pair, &FinFunctor::identity(&m))?;
    let in_qm = dual_limit_colimit(&pair, &cauchy_completion(&m).embedding)?;
    let neither = in_m.colimit.is_none() && in_m.limit.is_none();
    let both = in_qm.colimit.is_some() && in_qm.limit.is_some() && in_qm.agree;
    ok &= neither && both;
    Ok((
        ok,
        format!("duality on I,M,Z2; in M neither={neither}; in QM both+iso={both}"),
    ))
}

fn c9_kan() -> Result<(bool, String)> {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 9);
    let cats = small_categories();
    let mut good = 0;
    let mut done = 0;
    while done < 30 {
        let (_, c) = &cats[rand::Rng::gen_range(&mut rng, 0..cats.len())];
        let (_, d) = &cats[rand::Rng::gen_range(&mut rng, 0..cats.len())];
        let Some(k) = random_functor(&mut rng, c, d, DEFAULT_BUDGET)? else {
            continue;
        };
        let t = random_presheaf(&mut rng, &Arc::new(c.opposite()), 2);
        let s = random_presheaf(&mut rng, &Arc::new(d.opposite()), 2);
        done += 1;
        good += usize::from(lan_adjunction_holds(&k, &t, &s)?);
    }
    Ok((good == 30, format!("{good}/30 exact bijections")))
}

fn c10_absolute() -> Result<(bool, String)> {
    let catalog = sample_catalog();
    let mut weights = 0;
    let mut violations = 0;
    let mut instances = 0;
    for (_, phi) in fixtures::weight_corpus() {
        if !is_small_projective(&phi)? {
            continue;
        }
        let report = check_absolute_sampled(&phi, &catalog, DEFAULT_BUDGET)?;
        weights += 1;
        instances += report.instances;
        violations += report.violations.len();
    }
    let orbit = check_absolute_sampled(&Presheaf::constant(&fixtures::z2(), 1), &catalog, DEFAULT_BUDGET)?;
    let ok = weights > 0 && violations == 0 && !orbit.violations.is_empty();
    Ok((
        ok,
        format!(
            "{weights} small projectives, {instances} colimit instances, {violations} violations; Δ1 on Z2: {} violations",
            orbit.violations.len()
        ),
    ))
}

fn c11_recognition() -> Result<(bool, String)> {
    let m = fixtures::monoid_m();
    let q = cauchy_completion(&m);
    let r = recognize_free_cocompletion(&q.embedding, &WeightClass::e_splitting(), Caps::default())?;
    let collapse = FinFunctor::new(m.clone(), fixtures::unit(), vec![0], vec![0, 0])?;
    let bad = recognize_free_cocompletion(&collapse, &WeightClass::e_splitting(), Caps::default())?;
    let ok = r.all_hold() && !bad.fully_faithful;
    Ok((
        ok,
        format!(
            "Z: M->QM (i)={} (ii)={} (iii)={} (iv)={}; collapse (i)={}",
            r.fully_faithful, r.cocomplete, r.dense, r.image_in_atoms, bad.fully_faithful
        ),
    ))
}

type Criterion = fn() -> Result<(bool, String)>;

fn main() {
    let criteria: [(&str, Criterion); 11] = [
        ("cauchy completion of M", c1_cauchy_m),
        ("small-projective three-way agreement", c2_small_projective_agreement),
        ("commutation counterexample, Z/2", c3_orbits_against_pullbacks),
        ("dual-path weighted (co)limits", c4_dual_paths),
        ("Yoneda suite", c5_yoneda),
        ("closure fixtures", c6_closure),
        ("Morita equivalence", c7_morita),
        ("duality of completions", c8_duality),
        ("Kan adjunction", c9_kan),
        ("sampled absoluteness", c10_absolute),
        ("free cocompletion recognition", c11_recognition),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = std::time::Instant::now();
        let (ok, detail) = match run() {
            Ok(r) => r,
            Err(e) => (false, format!("error: {e}")),
        };
        failed += usize::from(!ok);
        println!(
            "[{}] {:>2} {name}: {detail} (tolerance: exact; {:.2?})",
            if ok { "PASS" } else { "FAIL" },
            i + 1,
            start.elapsed()
        );
    }
    if failed > 0 {
        println!("{failed} acceptance criteria failed");
        std::process::exit(1);
    }
}
