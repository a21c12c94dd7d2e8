//! Algebras, coalgebras and measurings for a family of lax monoidal endofunctors
//! on finite sets.
//!
//! The functors handled here are
//!
//! - `Shape(M, a)`: `X ↦ 1 + M × X^a`,
//! - `Const(M)`: `X ↦ M`,
//!
//! for a monoid `M`. A *measuring* from an algebra `A` to an algebra `B` by a
//! coalgebra `C` is a map `C × A → B` that commutes with the structure maps
//! through the zip `∇` of the functor. Measurings generalize algebra morphisms:
//! by the one-state unit coalgebra they are exactly the algebra morphisms, and by
//! a "fuel" coalgebra they are inductive functions whose recursion depth is
//! bounded by the fuel.
//!
//! The crate is `no_std` (it needs `alloc`). Module map:
//!
//! - [`kernel`]: monoids, functor signatures, their lax monoidal structure and
//!   natural transformations.
//! - [`carriers`]: terms, algebras and coalgebras.
//! - [`transport`]: pullback/pushforward along a natural transformation and the
//!   constructive adjoints `μ_!` and `μ_¡`.
//! - [`measuring`]: measurings, law checking, composition and the three
//!   transports of measurings.
//! - [`oracle`]: the measuring solver and the exhaustive checkers.
#![no_std]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod carriers;
pub mod error;
pub mod kernel;
pub mod measuring;
pub mod oracle;
pub mod report;
pub mod transport;
mod union_find;

pub use carriers::{Algebra, AlgebraMorphism, AlgebraTag, Coalgebra, CoalgebraMorphism, Elem, Term};
pub use error::{Error, Result};
pub use kernel::{FValue, FunctorSig, Label, Monoid, MonoidHom, NatTransf};
pub use measuring::Measuring;
pub use report::{LawReport, Report, Status, Violation};

/// Enumeration limits used when a carrier is infinite or too large to list.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    /// Maximum term depth enumerated for unbounded term carriers.
    pub depth: usize,
    /// Number of labels sampled from an infinite monoid.
    pub labels: usize,
    /// Hard cap on checked cases; exceeding it yields a partial-coverage report.
    pub budget: u64,
}

/// Default propagation/check budget.
pub const DEFAULT_BUDGET: u64 = 1_000_000;

impl Default for Bounds {
    fn default() -> Self {
        Bounds { depth: 3, labels: 3, budget: DEFAULT_BUDGET }
    }
}

impl Bounds {
    pub fn with_budget(budget: u64) -> Self {
        Bounds { budget, ..Bounds::default() }
    }
}
