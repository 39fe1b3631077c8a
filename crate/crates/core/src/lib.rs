//! Discrete path-integral numerics on oriented spacetime cell complexes.
//!
//! The pipeline runs from a 2D cell complex (vertices, oriented edges,
//! oriented plaquettes) through its boundary operators to an action kernel
//! `A = β ∂₁∂₁ᵀ` and a relational source `J = α ∂₁e`. The kernel is always
//! singular (the uniform vector is a zero mode), so amplitudes are evaluated
//! on the hyperplane orthogonal to its kernel:
//!
//! ```text
//! Z = ((2iπ)^(N-1) / ∏ aⱼ)^(1/2) · ∏ exp(-i J̃ⱼ² / 2aⱼ)
//! ```
//!
//! with `aⱼ` the nonzero eigenvalues and `J̃ⱼ` the source in the eigenbasis.
//! The [`propagator`] and [`twin_slit`] modules cover the temporally
//! continuous two-oscillator limit and its twin-slit interference pattern.
//!
//! Numeric code is generic over the scalar type. Kernel construction works
//! over any [`Scalar`] (including the exact [`Rational`]); spectral and
//! oscillatory code requires a floating-point [`Real`]. Aliases for `f64`
//! and `f32` are exported below.
//!
//! ```
//! use chainamp::{build_ladder, action_kernel, eigendecompose};
//!
//! let complex = build_ladder(3).unwrap();
//! let kernel = action_kernel(&complex, 1.0_f64);
//! let spectral = eigendecompose(&kernel, 1e-9).unwrap();
//! assert_eq!(spectral.zero_mode_count(), 1);
//! assert!((spectral.eigenvalues()[0] - 5.0).abs() < 1e-10);
//! ```

// `!(x > 0)` is deliberate throughout: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod chain_complex;
pub mod error;
pub mod graph_file;
pub mod matrix;
pub mod propagator;
pub mod scalar;
pub mod scc_kernel;
pub mod symmetry_amplitude;
pub mod twin_slit;

mod eigen;

pub use chain_complex::{
    boundary1, boundary2, build_ladder, verify_chain, CellComplex, ChainReport, ChainViolation,
    Edge, IntegerMatrix, Plaquette,
};
pub use error::{Error, Result};
pub use graph_file::{EdgeRecord, GraphFile, PlaquetteRecord, SignedEdge};
pub use matrix::Matrix;
pub use propagator::{
    greens_identity_residual, response_a, response_b, two_source_phase, MonochromaticSource,
    OscillatorPair,
};
pub use scalar::{Rational, Real, Scalar, SourceValue};
pub use scc_kernel::{
    action_kernel, check_scc, oscillator_kernel, source_vector, structural_match, ActionKernel,
    Actional, OscillatorParams, SourceVector, STRUCTURAL_ZERO,
};
pub use symmetry_amplitude::{
    eigendecompose, gaussian_amplitude, mode_contributions, project_sources, project_values,
    symmetry_amplitude,
    Amplitude, ModeContribution, ProjectedSource, SpectralData, DEFAULT_ZERO_TOLERANCE,
};
pub use twin_slit::{
    coupling_strength, intensity_pattern, rbw_amplitude, schrodinger_amplitude, separation_map,
    ScreenGeometry, SourcePair, TwinSlitConfig,
};

pub type MatrixF64 = Matrix<f64>;
pub type MatrixF32 = Matrix<f32>;
pub type ActionKernelF64 = ActionKernel<f64>;
pub type ActionKernelF32 = ActionKernel<f32>;
pub type ActionKernelRational = ActionKernel<Rational>;
pub type SourceVectorF64 = SourceVector<f64>;
pub type ComplexSourceVectorF64 = SourceVector<num_complex::Complex64>;
pub type SpectralDataF64 = SpectralData<f64>;
pub type SpectralDataF32 = SpectralData<f32>;
pub type AmplitudeF64 = Amplitude<f64>;
pub type AmplitudeF32 = Amplitude<f32>;
pub type OscillatorParamsF64 = OscillatorParams<f64>;
pub type OscillatorParamsRational = OscillatorParams<Rational>;
pub type OscillatorPairF64 = OscillatorPair<f64>;
pub type OscillatorPairF32 = OscillatorPair<f32>;
pub type TwinSlitConfigF64 = TwinSlitConfig<f64>;
pub type ScreenGeometryF64 = ScreenGeometry<f64>;
