//! Law-checking reports shared by categories, functors, presheaves and
//! natural transformations.

use std::fmt;

use serde::Serialize;

/// A single broken law, carrying the names of the witnessing cells.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Violation {
    /// `compose(g, f)` is missing for a composable pair.
    CompositionUndefined {
        g: String,
        f: String,
    },
    LeftIdentity {
        morphism: String,
    },
    RightIdentity {
        morphism: String,
    },
    /// `(h g) f != h (g f)`.
    Associativity {
        h: String,
        g: String,
        f: String,
    },
    /// A functor does not send a morphism to one with the mapped endpoints.
    EndpointsNotPreserved {
        morphism: String,
    },
    IdentityNotPreserved {
        object: String,
    },
    CompositionNotPreserved {
        g: String,
        f: String,
    },
    /// A presheaf action of an identity is not the identity function.
    IdentityActionNotTrivial {
        object: String,
    },
    /// `action(g f) != action(f) action(g)`.
    ContravarianceBroken {
        g: String,
        f: String,
    },
    /// A naturality square fails at the named morphism and element.
    NaturalityBroken {
        morphism: String,
        element: usize,
    },
    ComponentOutOfRange {
        object: String,
    },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::CompositionUndefined { g, f: ff } => {
                write!(f, "composite {g} . {ff} undefined")
            }
            Violation::LeftIdentity { morphism } => write!(f, "id . {morphism} != {morphism}"),
            Violation::RightIdentity { morphism } => write!(f, "{morphism} . id != {morphism}"),
            Violation::Associativity { h, g, f: ff } => {
                write!(f, "associativity fails on triple ({h}, {g}, {ff})")
            }
            Violation::EndpointsNotPreserved { morphism } => {
                write!(f, "image of {morphism} has wrong endpoints")
            }
            Violation::IdentityNotPreserved { object } => {
                write!(f, "identity at {object} not preserved")
            }
            Violation::CompositionNotPreserved { g, f: ff } => {
                write!(f, "composite {g} . {ff} not preserved")
            }
            Violation::IdentityActionNotTrivial { object } => {
                write!(f, "identity at {object} acts non-trivially")
            }
            Violation::ContravarianceBroken { g, f: ff } => {
                write!(f, "action of {g} . {ff} is not action({ff}) . action({g})")
            }
            Violation::NaturalityBroken { morphism, element } => {
                write!(f, "naturality square at {morphism} fails on element {element}")
            }
            Violation::ComponentOutOfRange { object } => {
                write!(f, "component at {object} leaves its target set")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub entity: String,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn new(entity: impl Into<String>) -> Self {
        Self {
            entity: entity.into(),
            violations: Vec::new(),
        }
    }

    pub fn is_ok(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn push(&mut self, v: Violation) {
        self.violations.push(v);
    }

    /// Converts a failing report into an error.
    pub fn into_result(self) -> crate::Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            Err(crate::Error::Validation(self))
        }
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_ok() {
            return write!(f, "{}: pass", self.entity);
        }
        write!(f, "{}: ", self.entity)?;
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
