//! Terms, algebras and coalgebras over a functor signature.

mod algebra;
pub mod builtins;
mod coalgebra;
mod term;

pub use algebra::{Algebra, AlgebraMorphism, AlgebraTag, Elem, MorphismMap};
pub use coalgebra::{Coalgebra, CoalgebraMorphism};
pub use term::Term;
