//! Exhaustive decision procedures over finite carriers.

mod checks;
mod solver;

pub use checks::{
    check_adjunction, check_c_initial, check_preinitial_subterminal, check_preserves_c_initial,
    check_respects_composition, random_algebras, render_table, Instances, Transport,
};
pub use solver::{solve_measurings, SolveOptions, SolveResult};
