//! Tools for the p-frame potential of unit-vector configurations.
//!
//! The potential of N unit vectors x_1..x_N in R^d at exponent p > 0 is the
//! sum of |<x_i, x_j>|^p over ordered pairs i != j. This crate builds the
//! lifted-ETF configurations that minimize it for N = d+1, evaluates the
//! classical lower bounds, solves the associated simplex maximization with an
//! independent brute-force oracle, and minimizes the potential numerically on
//! the product of spheres.
//!
//! Module map:
//! - [`frames`]: configurations, Gram matrices, canonical constructions,
//!   spectral realization, null vectors.
//! - [`potential`]: the potential itself, Sidelnikov / Ehler-Okoudjou /
//!   Glazyrin bounds, regime boundaries and closed-form minimum values.
//! - [`simplex`]: constrained maximization of (sum z_i^a)^2 - sum z_i^(2a)
//!   on the probability simplex, analytic and brute-force.
//! - [`optimizer`]: smoothed projected-gradient minimization with restarts,
//!   minimizer classification, and the lower-bound proof chain evaluated on
//!   concrete configurations.
//! - [`io`]: JSON / CSV file formats.

pub mod error;
pub mod frames;
pub mod io;
pub mod optimizer;
pub mod potential;
pub mod simplex;

pub use error::{Error, Result};
pub use frames::{
    canonical_signature, gram, lifted_etf, null_space_vector, onb_plus_repeats, realize_gram,
    Configuration, GramMatrix, NullVector,
};
pub use optimizer::{
    classify_minimizer, minimize_fp, smoothed_fp_and_gradient, verify_proof_chain,
    MinimizeOptions, OptimizationReport, ProofChainReport,
};
pub use potential::{
    alpha_of_p, coherence, ehler_okoudjou_bound, frame_potential, glazyrin_bound,
    regime_boundaries, regime_index, sidelnikov_bound, theorem_min_value, PotentialParams,
    RegimeIndex, RegimeTable,
};
pub use simplex::{
    comparison_h, f_restriction, find_h_roots, h1_min_location, h1_poly, h_poly, m_objective,
    maximize_m_analytic, maximize_m_brute, project_to_simplex, BruteResult, HPrimeSignPattern,
    HRootAnalysis, MaximizerSet, SimplexPoint, TwoLevelPoint,
};
