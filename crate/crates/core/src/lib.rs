//! Simulation and analysis of multi-photon interference in a two-path
//! interferometer with photon-number states.
//!
//! The crate computes exact phase-dependent output amplitudes through the
//! two-mode spin (Schwinger) algebra, weak values of the path intensity
//! difference, the semiclassical action/envelope decomposition of the
//! fringes, and fringe observables such as probability zeros and the
//! pi/width intensity estimate. A seeded Monte-Carlo model of classical
//! random-phase interference cross-checks the envelope statistics.
//!
//! All numerical kernels are generic over the scalar type through the
//! [`Real`] trait; the `*64`/`*32` aliases below pin the common choices.
//! Phases are radians, intensity differences are in units of hbar = 1.

pub mod error;
pub mod evolution;
pub mod fringe;
pub mod grid;
pub mod half;
pub mod linalg;
pub mod ode;
pub mod quad;
pub mod real;
pub mod roots;
pub mod semiclassical;
pub mod spin;

pub use error::{Error, Result};
pub use evolution::{
    amplitude, matrix_exponential_amplitude, ode_solve_oracle, probability_distribution,
    realize_amplitudes, superposition_amplitude, AmplitudeTrace, Propagator, SpectralSum,
    SuperpositionInput, WeakValue, WeakValueTrace,
};
pub use fringe::{
    compare_report, equal_case_predictions, find_probability_zeros, fringe_widths_and_j3,
    solve_j3_match, EqualCasePrediction, FringeReport, TheoryMatch,
};
pub use grid::PhaseGrid;
pub use half::HalfInt;
pub use real::Real;
pub use semiclassical::{
    action, approx_amplitude, calibrate_anchor, classical_envelope_oracle, classical_j3,
    classical_support, continuity_residual, envelope, envelope_sq, ActionAnchor, ClassicalJ3,
    ClassicalParams, ClassicalPhaseModel, McHistogram, SemiclassicalCurve, VectorLength,
};
pub use spin::{
    build_operator_set, j1_eigenbasis, j3_eigenbasis, level_index, BasisLabel, MeasurementBasis,
    OperatorSet, TwoModeConfig,
};

/// Working-precision aliases.
pub type OperatorSet64 = spin::OperatorSet<f64>;
pub type MeasurementBasis64 = spin::MeasurementBasis<f64>;
pub type SpectralSum64 = evolution::SpectralSum<f64>;
pub type Propagator64 = evolution::Propagator<f64>;
pub type AmplitudeTrace64 = evolution::AmplitudeTrace<f64>;
pub type WeakValueTrace64 = evolution::WeakValueTrace<f64>;
pub type SuperpositionInput64 = evolution::SuperpositionInput<f64>;
pub type PhaseGrid64 = grid::PhaseGrid<f64>;
pub type ClassicalParams64 = semiclassical::ClassicalParams<f64>;
pub type SemiclassicalCurve64 = semiclassical::SemiclassicalCurve<f64>;
pub type FringeReport64 = fringe::FringeReport<f64>;

/// Single-precision aliases; fine for envelope-grade work, too coarse for
/// the tight identity tolerances.
pub type OperatorSet32 = spin::OperatorSet<f32>;
pub type MeasurementBasis32 = spin::MeasurementBasis<f32>;
pub type SpectralSum32 = evolution::SpectralSum<f32>;
pub type Propagator32 = evolution::Propagator<f32>;
pub type PhaseGrid32 = grid::PhaseGrid<f32>;
pub type ClassicalParams32 = semiclassical::ClassicalParams<f32>;
