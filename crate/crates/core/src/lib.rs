//! Exact weighted limits and colimits, Kan extensions, profunctors, Cauchy
//! completion and Morita equivalence for finite categories enriched in
//! finite sets.

pub mod category;
pub mod cauchy;
pub mod classes;
pub mod elements;
pub mod equivalence;
pub mod error;
pub mod fixtures;
pub mod functor;
pub mod generate;
pub mod kan;
pub mod limits;
pub mod presheaf;
pub mod profunctor;
pub mod validate;

pub use category::{Arrow, FinCategory, Mor, Obj};
pub use error::{Error, Result};
pub use functor::{FinFunctor, FunctorTrans};
pub use presheaf::{NatTrans, Presheaf, PresheafCategory, SetFunctor};
pub use validate::{ValidationReport, Violation};
