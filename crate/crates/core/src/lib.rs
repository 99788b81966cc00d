//! Exact enumeration of the n-iterates of a binary operation, the line
//! tableaux `A_n`, `B_n` and `A_n ⊕ B_n` built over them, and counts of
//! formally reducible identities by brute force and by closed forms.

pub mod arith;
pub mod asymptotics;
pub mod bitset;
pub mod census;
pub mod error;
pub mod tableau;
pub mod tree;
pub mod verify;

pub use arith::{binomial, catalan, catalan_recursion_residual, BigNat, BigRat};
pub use asymptotics::{asymptotic_row, estimate_ratio, exact_ratio, term_comparison, theorem_bound_ratio, AsymptoticRow};
pub use census::{
    brute_force_reducible_count, incidence_matrix, reducible_count_closed_a, reducible_count_closed_ab,
    row_reducible_count, run_census, t_nk, t_nk_combined, CensusConfig, CensusMode, CensusReport,
};
pub use error::{Error, Result};
pub use tableau::{
    build_tableau, build_tableau_a, build_tableau_b, direct_sum, predicted_intersection_size,
    MultiplicityHistogram, Tableau, TableauKind,
};
pub use tree::{cherry_count, enumerate_iterates, product, substitute_leaf, IterateTree};
