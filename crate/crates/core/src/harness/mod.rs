//! Exhaustive small-instance sweeps: graph generators, the individual
//! checks, and grouped verification suites.

pub mod enumerate;
pub mod suites;
pub mod sweeps;

pub use enumerate::{
    corollas, enumerate_connected_graphs, enumerate_trees, unicyclic_graphs, ConnectedGraphs,
};
pub use suites::{conjecture_suite, formula_suite, identity_suite, CheckOutcome, SuiteReport};
pub use sweeps::{
    check_bhm, check_corolla_dominance, check_kc_monotonicity, check_lnr, check_tree_extremality,
    check_unicyclic_count_invariance, with_workers, Caps, SweepParameters, SweepResult, Violation,
};
