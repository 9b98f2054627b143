//! The category of elements of a presheaf.
//!
//! Objects are pairs `(k, x)` with `x` in `phi(k)`. A morphism
//! `(k, x) -> (k', x')` is a morphism `u: k' -> k` of the base with
//! `phi(u)(x) = x'`, so the projection `(k, x) |-> k` lands in `K^op`.

use std::collections::HashMap;
use std::sync::Arc;

use crate::category::{Arrow, FinCategory, Mor, Obj};
use crate::functor::FinFunctor;
use crate::presheaf::Presheaf;

#[derive(Clone, Debug)]
pub struct Elements {
    pub category: Arc<FinCategory>,
    /// The discrete op-fibration `el(phi) -> K^op`.
    pub projection: FinFunctor,
    /// The `(k, x)` pair behind each object, in the presheaf's flat order.
    pub elements: Vec<(Obj, usize)>,
}

pub fn category_of_elements(phi: &Presheaf) -> Elements {
    let base = phi.base();
    let elements = phi.elements();
    let offsets = phi.offsets();
    let flat = |k: Obj, x: usize| offsets[k] + x;
    let names = elements
        .iter()
        .map(|&(k, x)| format!("({},{})", base.object_name(k), x))
        .collect::<Vec<_>>();

    let mut morphisms = Vec::new();
    let mut underlying = Vec::new();
    let mut index = HashMap::new();
    for (i, &(k, x)) in elements.iter().enumerate() {
        for u in base.into_obj(k) {
            let target = flat(base.src(u), phi.act(u, x));
            index.insert((i, u), morphisms.len());
            morphisms.push(Arrow {
                name: format!("{}@{}", base.morphism_name(u), names[i]),
                src: i,
                tgt: target,
            });
            underlying.push(u);
        }
    }
    let identities = elements
        .iter()
        .enumerate()
        .map(|(i, &(k, _))| index[&(i, base.identity(k))])
        .collect();
    let mut composites = Vec::new();
    for (f, arrow_f) in morphisms.iter().enumerate() {
        for (g, arrow_g) in morphisms.iter().enumerate() {
            if arrow_f.tgt != arrow_g.src {
                continue;
            }
            let u = base.compose(underlying[f], underlying[g]);
            composites.push((g, f, index[&(arrow_f.src, u)]));
        }
    }
    let category = Arc::new(
        FinCategory::from_parts(names, morphisms, identities, composites).expect("category of elements is well formed"),
    );
    let projection = FinFunctor::from_parts(
        category.clone(),
        Arc::new(base.opposite()),
        elements.iter().map(|&(k, _)| k).collect(),
        underlying,
    )
    .expect("projection tables cover el(phi)");
    Elements {
        category,
        projection,
        elements,
    }
}

impl Elements {
    pub fn object_of(&self, k: Obj, x: usize) -> Obj {
        self.elements
            .iter()
            .position(|&e| e == (k, x))
            .expect("element of the presheaf")
    }

    /// Underlying base morphism of a morphism of `el(phi)`.
    pub fn underlying(&self, f: Mor) -> Mor {
        self.projection.mor(f)
    }
}
