use std::sync::Arc;

use fincat::cauchy::{cauchy_completion, is_small_projective, retract_oracle};
use fincat::classes::{flat_for_finite_limits, flat_for_terminal, is_phi_continuous, WeightClass};
use fincat::equivalence::{find_equivalence, DEFAULT_BUDGET};
use fincat::generate::random_presheaf;
use fincat::kan::yoneda_bijection_holds;
use fincat::limits::{colimit_paths_agree, limit_paths_agree, weighted_colimit, weighted_limit};
use fincat::profunctor::{associator, left_unitor, right_unitor, Profunctor};
use fincat::{fixtures, FinCategory, Presheaf};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn small() -> Vec<Arc<FinCategory>> {
    fixtures::categories()
        .into_iter()
        .filter(|(_, c)| c.object_count() <= 3)
        .map(|(_, c)| c)
        .collect()
}

fn pick(i: usize) -> Arc<FinCategory> {
    let cats = small();
    cats[i % cats.len()].clone()
}

fn random_module(rng: &mut ChaCha8Rng, a: &Arc<FinCategory>, b: &Arc<FinCategory>) -> Profunctor {
    let table = random_presheaf(rng, &Arc::new(b.product(&a.opposite())), 2);
    Profunctor::from_table(a, b, table).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn opposite_is_an_involution(i in 0usize..32) {
        let c = pick(i);
        prop_assert_eq!(c.opposite().opposite(), (*c).clone());
    }

    #[test]
    fn weighted_paths_agree(i in 0usize..32, seed in any::<u64>()) {
        let k = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_presheaf(&mut rng, &k, 2);
        let s = random_presheaf(&mut rng, &Arc::new(k.opposite()), 2);
        let t = random_presheaf(&mut rng, &k, 2);
        prop_assert!(colimit_paths_agree(&phi, &s).unwrap());
        prop_assert!(limit_paths_agree(&phi, &t).unwrap());
    }

    #[test]
    fn representable_weights_evaluate(i in 0usize..32, seed in any::<u64>()) {
        let k = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let s = random_presheaf(&mut rng, &Arc::new(k.opposite()), 3);
        let t = random_presheaf(&mut rng, &k, 3);
        for b in k.objects() {
            let y = Presheaf::representable(&k, b);
            prop_assert_eq!(weighted_colimit(&y, &s).unwrap().size, s.size(b));
            prop_assert_eq!(weighted_limit(&y, &t).unwrap().size(), t.size(b));
            prop_assert!(yoneda_bijection_holds(&t, b));
        }
    }

    #[test]
    fn projectivity_matches_retracts(i in 0usize..32, seed in any::<u64>()) {
        let k = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_presheaf(&mut rng, &k, 2);
        prop_assert_eq!(is_small_projective(&phi).unwrap(), retract_oracle(&phi).is_some());
    }

    #[test]
    fn flatness_hierarchy(i in 0usize..32, seed in any::<u64>()) {
        let k = pick(i);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let phi = random_presheaf(&mut rng, &k, 2);
        if flat_for_finite_limits(&phi) {
            prop_assert!(flat_for_terminal(&phi));
            let c = is_phi_continuous(&phi, &WeightClass::finite_colimits(), DEFAULT_BUDGET).unwrap();
            prop_assert!(c.continuous);
        }
    }

    #[test]
    fn module_composition_is_associative_and_unital(i in 0usize..32, j in 0usize..32, seed in any::<u64>()) {
        let (a, b) = (pick(i), pick(j));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let f = random_module(&mut rng, &a, &b);
        let g = random_module(&mut rng, &b, &a);
        let h = random_module(&mut rng, &a, &b);
        let (left, right, map) = associator(&h, &g, &f).unwrap();
        prop_assert!(map.is_iso(&left, &right));
        let l = left_unitor(&f).unwrap();
        let r = right_unitor(&f).unwrap();
        prop_assert!(l.is_valid(&fincat::profunctor::compose(&fincat::profunctor::id_module(&b), &f).unwrap(), &f));
        prop_assert!(r.is_valid(&fincat::profunctor::compose(&f, &fincat::profunctor::id_module(&a)).unwrap(), &f));
    }
}

#[test]
fn completion_is_idempotent_on_fixtures() {
    for (name, a) in fixtures::categories() {
        let q = cauchy_completion(&a);
        let qq = cauchy_completion(&q.completion);
        assert!(
            find_equivalence(&qq.completion, &q.completion, DEFAULT_BUDGET)
                .unwrap()
                .is_some(),
            "{name}"
        );
    }
}
