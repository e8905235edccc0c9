//! Number-theoretic and lattice primitives: Hurwitz class numbers, divisor
//! counts, Legendre symbols, and the gerbe / class census on the K3 lattice.

pub mod census;
pub mod hurwitz;
pub mod lattice;
pub mod numtheory;

pub use census::{
    block_distribution, class_distribution_full, gauss_sum, gauss_sum_by_distribution,
    gauss_sum_check, gerbe_census, k3_class_census_bruteforce, k3_class_census_full,
    validate_picard, GerbeCensus,
};
pub use hurwitz::{hurwitz_class_number, reduced_forms};
pub use lattice::{K3LatticeForm, LatticeBlock};
pub use numtheory::{is_prime, legendre_epsilon, legendre_symbol, sigma0, sigma1};
