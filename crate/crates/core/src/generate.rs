//! Enumeration and seeded random generation of presheaves and functors.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::category::{FinCategory, Mor};
use crate::functor::{for_each_functor, FinFunctor};
use crate::presheaf::Presheaf;
use crate::Result;

/// Cell-level backtracking over action tables with fixed set sizes.
struct ActionSearch<'a> {
    base: &'a FinCategory,
    sizes: &'a [usize],
    /// Non-identity morphisms and the element of the target they act on.
    cells: Vec<(Mor, usize)>,
    /// Composable pairs `(g, f)` with neither an identity, grouped by each
    /// morphism they mention.
    watch: Vec<Vec<(Mor, Mor, Mor)>>,
    actions: Vec<Vec<Option<usize>>>,
}

impl<'a> ActionSearch<'a> {
    fn new(base: &'a FinCategory, sizes: &'a [usize]) -> Self {
        let mut cells = Vec::new();
        let mut actions = Vec::with_capacity(base.morphism_count());
        for f in base.morphisms() {
            let n = sizes[base.tgt(f)];
            if base.is_identity(f) {
                actions.push((0..n).map(Some).collect());
            } else {
                actions.push(vec![None; n]);
                cells.extend((0..n).map(|x| (f, x)));
            }
        }
        let mut watch = vec![Vec::new(); base.morphism_count()];
        for f in base.morphisms().filter(|&f| !base.is_identity(f)) {
            for g in base.out_of(base.tgt(f)).filter(|&g| !base.is_identity(g)) {
                let h = base.compose(g, f);
                let triple = (g, f, h);
                watch[g].push(triple);
                watch[f].push(triple);
                if h != g && h != f {
                    watch[h].push(triple);
                }
            }
        }
        ActionSearch {
            base,
            sizes,
            cells,
            watch,
            actions,
        }
    }

    /// Checks every composition constraint touching `m` whose cells are set.
    fn consistent(&self, m: Mor) -> bool {
        self.watch[m].iter().all(|&(g, f, h)| {
            (0..self.sizes[self.base.tgt(g)]).all(|x| {
                let Some(gx) = self.actions[g][x] else { return true };
                match (self.actions[f][gx], self.actions[h][x]) {
                    (Some(a), Some(b)) => a == b,
                    _ => true,
                }
            })
        })
    }

    fn run<R: Rng>(
        &mut self,
        i: usize,
        rng: &mut Option<&mut R>,
        steps: &mut u64,
        visit: &mut impl FnMut(&[Vec<Option<usize>>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if *steps == 0 {
            return ControlFlow::Break(());
        }
        *steps -= 1;
        if i == self.cells.len() {
            return visit(&self.actions);
        }
        let (f, x) = self.cells[i];
        let mut values: Vec<usize> = (0..self.sizes[self.base.src(f)]).collect();
        if let Some(r) = rng.as_deref_mut() {
            values.shuffle(r);
        }
        for v in values {
            self.actions[f][x] = Some(v);
            if self.consistent(f) && self.run(i + 1, rng, steps, visit).is_break() {
                self.actions[f][x] = None;
                return ControlFlow::Break(());
            }
        }
        self.actions[f][x] = None;
        ControlFlow::Continue(())
    }
}

fn finish(base: &Arc<FinCategory>, sizes: &[usize], actions: &[Vec<Option<usize>>]) -> Presheaf {
    let actions = actions
        .iter()
        .map(|a| a.iter().map(|v| v.expect("complete assignment")).collect())
        .collect();
    Presheaf::new(base.clone(), sizes.to_vec(), actions).expect("search only yields functorial tables")
}

/// Visits every presheaf on `base` with the given set sizes.
pub fn for_each_presheaf(base: &Arc<FinCategory>, sizes: &[usize], mut visit: impl FnMut(Presheaf) -> ControlFlow<()>) {
    let mut search = ActionSearch::new(base, sizes);
    let mut steps = u64::MAX;
    let _ = search.run::<rand::rngs::ThreadRng>(0, &mut None, &mut steps, &mut |a| visit(finish(base, sizes, a)));
}

/// All presheaves on `base` with every set of size at most `max_size`,
/// one per isomorphism class, in order of their size vectors.
pub fn presheaves_up_to_iso(base: &Arc<FinCategory>, max_size: usize) -> Vec<Presheaf> {
    let n = base.object_count();
    let mut out: Vec<Presheaf> = Vec::new();
    let mut buckets: HashMap<Vec<usize>, Vec<usize>> = HashMap::new();
    let mut sizes = vec![0; n];
    loop {
        for_each_presheaf(base, &sizes, |p| {
            let bucket = buckets.entry(p.invariant_profile()).or_default();
            if !bucket.iter().any(|&i| out[i].is_isomorphic(&p)) {
                bucket.push(out.len());
                out.push(p);
            }
            ControlFlow::Continue(())
        });
        // next size vector in lexicographic order
        let Some(pos) = (0..n).rev().find(|&i| sizes[i] < max_size) else {
            break;
        };
        sizes[pos] += 1;
        for s in &mut sizes[pos + 1..] {
            *s = 0;
        }
    }
    out
}

/// A random presheaf on `base` with sets of size at most `max_size`.
/// Size vectors admitting no presheaf are redrawn.
pub fn random_presheaf(rng: &mut impl Rng, base: &Arc<FinCategory>, max_size: usize) -> Presheaf {
    loop {
        let sizes: Vec<usize> = base.objects().map(|_| rng.gen_range(0..=max_size)).collect();
        let mut search = ActionSearch::new(base, &sizes);
        let mut steps = 10_000;
        let mut found = None;
        let mut r = Some(&mut *rng);
        let _ = search.run(0, &mut r, &mut steps, &mut |a| {
            found = Some(finish(base, &sizes, a));
            ControlFlow::Break(())
        });
        if let Some(p) = found {
            return p;
        }
    }
}

/// A uniformly chosen functor `source -> target`, if any exists.
pub fn random_functor(
    rng: &mut impl Rng,
    source: &Arc<FinCategory>,
    target: &Arc<FinCategory>,
    budget: u64,
) -> Result<Option<FinFunctor>> {
    let mut all = Vec::new();
    for_each_functor(source, target, budget, |o, m| {
        all.push((o.to_vec(), m.to_vec()));
        ControlFlow::Continue(())
    })?;
    if all.is_empty() {
        return Ok(None);
    }
    let (o, m) = all.swap_remove(rng.gen_range(0..all.len()));
    Ok(Some(FinFunctor::from_parts(source.clone(), target.clone(), o, m)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Brute force: every table assignment, kept when it validates.
    fn brute_count(base: &Arc<FinCategory>, sizes: &[usize]) -> usize {
        let cells: Vec<(Mor, usize)> = base
            .morphisms()
            .flat_map(|f| (0..sizes[base.tgt(f)]).map(move |x| (f, x)))
            .collect();
        let radices: Vec<usize> = cells.iter().map(|&(f, _)| sizes[base.src(f)]).collect();
        if radices.contains(&0) {
            return 0;
        }
        let total: usize = radices.iter().product();
        (0..total)
            .filter(|&code| {
                let mut c = code;
                let mut actions: Vec<Vec<usize>> = base.morphisms().map(|f| vec![0; sizes[base.tgt(f)]]).collect();
                for (&(f, x), &r) in cells.iter().zip(&radices) {
                    actions[f][x] = c % r;
                    c /= r;
                }
                Presheaf::new(base.clone(), sizes.to_vec(), actions).is_ok()
            })
            .count()
    }

    #[test]
    fn enumeration_matches_brute_force() {
        for (base, sizes) in [
            (fixtures::monoid_m(), vec![3]),
            (fixtures::z2(), vec![3]),
            (fixtures::two(), vec![2, 2]),
            (fixtures::span(), vec![2, 1, 2]),
        ] {
            let mut n = 0;
            for_each_presheaf(&base, &sizes, |_| {
                n += 1;
                ControlFlow::Continue(())
            });
            assert_eq!(n, brute_count(&base, &sizes));
        }
    }

    #[test]
    fn iso_classes_on_z2() {
        // Z/2-sets of size <= 2: 0, 1, 1+1, free orbit
        assert_eq!(presheaves_up_to_iso(&fixtures::z2(), 2).len(), 4);
    }

    #[test]
    fn random_presheaves_validate() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (_, c) in fixtures::categories() {
            for _ in 0..5 {
                assert!(random_presheaf(&mut rng, &c, 3).validate().is_ok());
            }
        }
    }
}
