//! Lattice catalog, sublattice surveys and verification suites.

pub mod catalog;
pub mod checks;
pub mod suite;
pub mod survey;

pub use catalog::LatticeCatalog;
pub use checks::{
    code_from_distributive_sublattice, phi_bijection, check_whitney_bound, check_size_bound, check_sublattice_codes,
};
pub use suite::{run_theorem_suite, Population, SuiteName, SuiteReport};
pub use survey::{enumerate_sublattices, SublatticeSurveyResult, SurveyMode};
