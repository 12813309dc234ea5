//! Schur stability of Hadamard products and Hadamard powers of complex
//! polynomials.
//!
//! The crate is organised bottom-up:
//!
//! * [`polynomial`] / [`fractional`]: monic polynomials, rational exponents
//!   and commensurate fractional-order polynomials.
//! * [`hadamard`]: coefficient-wise products, Szegő products, rational powers
//!   with all their branches.
//! * [`roots`]: all-roots solver and Schur stability verdicts.
//! * [`criteria`]: the weighted coefficient condition and its relatives.
//! * [`threshold`]: power thresholds, stability onsets and the guardian map.
//! * [`sweep`]: root data over many powers.

pub mod criteria;
pub mod error;
pub mod fractional;
pub mod hadamard;
pub mod linalg;
pub mod polynomial;
pub mod roots;
pub mod sweep;
pub mod threshold;

pub use criteria::{
    guaranteed_products, necessary_condition, product_criterion, satisfies_stability_condition, sharpness_witness,
    stabilizing_partner, CriterionId, CriterionOutcome, ProductCriterion, SimplexWeights,
};
pub use error::{Error, Result};
pub use fractional::{to_integer_order, FractionalPolynomial, FractionalTerm};
pub use hadamard::{
    branch_count, conjugate, hadamard_power, hadamard_product, principal_power, real_form, szego_product, szego_weight,
    BranchSet,
};
pub use polynomial::{binomial, MonicPolynomial, RationalExponent};
pub use roots::{
    branch_set_stable, find_roots, fujiwara_bound, is_schur_stable, RootSet, StabilityStatus, StabilityVerdict,
};
pub use sweep::{power_sweep, sweep_points, SweepRecord};
pub use threshold::{
    beta_star, exact_onset, guardian_map, guardian_onset, kstar_test, locate_onset, pstar_exact, pstar_grid,
    pstar_grid_with, Direction, GridScheme, Mode, ThresholdKind, ThresholdMethod, ThresholdResult,
};
