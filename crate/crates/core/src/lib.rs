//! QAOA statevector pipeline for optimal sensor placement.
//!
//! Structural models ([`modal`]) give mode shapes, the modal strain energy
//! objective is encoded as a QUBO and its Ising form ([`qubo`]), and QAOA
//! circuits with a standard X or a Hamming-weight preserving XY mixer are
//! simulated exactly ([`statevec`], [`qaoa`]). [`optimizer`] and
//! [`experiment`] run landscape scans and multistart optimisation against an
//! exhaustive-search oracle; [`output`] writes the results.
//!
//! Everything numeric is generic over [`Real`] (`f32` or `f64`); the aliases
//! below fix the scalar for the common cases.

pub mod dense;
pub mod error;
pub mod experiment;
pub mod linalg;
pub mod modal;
pub mod optimizer;
pub mod output;
pub mod qaoa;
pub mod qubo;
pub mod scalar;
pub mod seeds;
pub mod statevec;

pub use error::{Error, Result};
pub use scalar::Real;

pub type MatrixF64 = linalg::Matrix<f64>;
pub type StructuralModelF64 = modal::StructuralModel<f64>;
pub type ModalBasisF64 = modal::ModalBasis<f64>;
pub type QuboProblemF64 = qubo::QuboProblem<f64>;
pub type IsingCoefficientsF64 = qubo::IsingCoefficients<f64>;
pub type StateVectorF64 = statevec::StateVector<f64>;
pub type GateMatrixF64 = statevec::GateMatrix<f64>;
pub type QaoaProblemF64 = qaoa::QaoaProblem<f64>;
pub type QaoaConfigF64 = qaoa::QaoaConfig<f64>;
pub type OptimizeResultF64 = optimizer::OptimizeResult<f64>;
pub type RankedSolutionF64 = experiment::RankedSolution<f64>;
pub type LandscapeCellF64 = experiment::LandscapeCell<f64>;

pub type MatrixF32 = linalg::Matrix<f32>;
pub type StructuralModelF32 = modal::StructuralModel<f32>;
pub type ModalBasisF32 = modal::ModalBasis<f32>;
pub type QuboProblemF32 = qubo::QuboProblem<f32>;
pub type IsingCoefficientsF32 = qubo::IsingCoefficients<f32>;
pub type StateVectorF32 = statevec::StateVector<f32>;
pub type QaoaProblemF32 = qaoa::QaoaProblem<f32>;
