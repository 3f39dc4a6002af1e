//! Geometry of the Birkhoff polytope of doubly stochastic matrices under
//! Schatten p-norms.
//!
//! The crate computes minimal traces (the linear assignment problem),
//! bounding-ball radii around arbitrary centers, and the Chebyshev center and
//! radius of the polytope, and pairs each closed form with a brute-force
//! route over permutation matrices so the two can be checked against each
//! other at small dimension.
//!
//! Module map:
//!
//! - [`matrix`]: dense square matrices, validated doubly stochastic matrices,
//!   `J_n`, the `aI + bJ` central form.
//! - [`permutation`]: permutation matrices as index vectors.
//! - [`spectral`]: one-sided Jacobi singular values, Schatten norms.
//! - [`assignment`]: minimal trace by Hungarian and by enumeration.
//! - [`birkhoff`]: Birkhoff–von Neumann decomposition, samplers, projection.
//! - [`geometry`]: bounding balls, Chebyshev radius, equidistance, uniqueness probe.
//! - [`io`], [`json`], [`verify`], [`cli`]: file formats, reports and the
//!   command-line front end.

pub mod assignment;
pub mod birkhoff;
pub mod cli;
pub mod error;
pub mod geometry;
pub mod io;
pub mod json;
pub mod matrix;
pub mod permutation;
pub mod spectral;
pub mod verify;

pub use assignment::{
    min_trace_bruteforce, min_trace_from_radius, min_trace_hungarian, MinTraceResult,
};
pub use birkhoff::{
    average_all_permutations, birkhoff_decompose, khoury_projection, sample_convex,
    sample_sinkhorn, BirkhoffDecomposition,
};
pub use error::{Error, Result};
pub use geometry::{
    alpha_line_norm, bounding_ball_radius_enum, bounding_ball_radius_s2, center_uniqueness_probe,
    chebyshev_radius, equidistance_check, radius_bounds_s2, BoundingBallReport, ChebyshevReport,
    Search,
};
pub use matrix::{
    central_form_decompose, frobenius_inner, jn, CentralForm, DoublyStochasticMatrix, SquareMatrix,
};
pub use permutation::{permutation_product, PermutationMatrix};
pub use spectral::{
    frobenius_norm, schatten_norm, singular_values, von_neumann_gap, SchattenExponent,
    SingularSpectrum,
};
