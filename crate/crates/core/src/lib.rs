//! Qubit-qutrit (2 ⊗ 3) quantum states under collective dephasing.
//!
//! The library builds the state families studied in this setting, pushes them
//! through the collective-dephasing channel, and evaluates four correlation
//! measures: entanglement negativity, classical correlation, quantum discord,
//! and local quantum uncertainty. Closed-form expressions are provided
//! alongside the generic numeric paths so each can serve as a cross-check of
//! the other.
//!
//! # Basis convention
//!
//! Every module works in the product basis
//!
//! ```text
//! { |00⟩, |01⟩, |02⟩, |10⟩, |11⟩, |12⟩ }
//! ```
//!
//! with the qubit index first: basis index `k = 3·a + b` for qubit level
//! `a ∈ {0, 1}` and qutrit level `b ∈ {0, 1, 2}`. This ordering is the single
//! source of truth; [`channel::DEPHASING_EXPONENTS`] and the partial-transpose
//! block layout both assume it.

pub mod channel;
pub mod correlations;
pub mod ensemble;
pub mod linalg;
pub mod states;

/// Dimension of the joint Hilbert space (qubit × qutrit).
pub const DIM: usize = 6;

pub use channel::{asymptotic_state, dephase, DephasingPoint};
pub use correlations::{
    classical_correlation, lqu, mutual_information, negativity, quantum_discord, CorrelationRecord,
    QubitMeasurement,
};
pub use ensemble::{confidence_interval, run_ensemble, EnsembleConfig, EnsembleSummary};
pub use linalg::{ComplexMatrix, HermitianEigenResult};
pub use states::{DensityMatrix, DfsMixFamily, IsoMixFamily, TwoParamFamily};
