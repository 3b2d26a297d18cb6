//! Orthogonal polynomials on quadratic curves.
//!
//! The crate builds orthogonal bases on the circle, parabola, both kinds of
//! hyperbola, a pair of intersecting lines and a pair of parallel lines,
//! computes Fourier partial sums and quadrature-based interpolants in those
//! bases, and drives a few applications built on them: interpolation of
//! functions with square-root and essential singularities, a Fourier
//! extension on a circular arc, and a collocation eigensolver for a
//! one-dimensional Schrödinger operator.

pub mod applications;
pub mod curve_bases;
pub mod error;
pub mod expansion;
pub mod interpolation;
pub mod linalg;
pub mod univariate_op;

pub use applications::{
    fourier_extension_demo, schrodinger_eigs, solve_essential_singular, solve_sqrt_singular, sqrt_basis, ArcInterpolant,
    ChebyshevInterpolant, EigenResult, PulledBack, SchrodingerProblem, SingularKind, SingularProblem, TMap,
};
pub use error::{Error, Result};
pub use univariate_op::{
    christoffel_linear, classical_recurrence, eval_orthonormal, eval_orthonormal_deriv, eval_poly,
    eval_poly_deriv, gauss_rule, recurrence, stieltjes_modified, Interval, Multiplier,
    QuadratureRule, RecurrenceTable, WeightKind, WeightSpec,
};
pub use curve_bases::{
    build_basis, build_jacobi_lines, eval_y, interpolation_nodes, one_branch_weight, pde_residual,
    CurveBasis, CurveKind, CurvePoint, JacobiLines, NodeSet, Normalization, PdeOperator,
};
pub use expansion::{decompose, expand, l2_error_identity, partial_sum, CurveFunction, EvenOddPair, Expansion};
pub use interpolation::{
    discrete_gram, eval_interpolant, interp_coeffs, interpolate, lagrange_form, naive_condition, vandermonde_condition,
    vandermonde_matrix, DiscreteInnerProduct, Interpolant, LagrangeForm,
};
