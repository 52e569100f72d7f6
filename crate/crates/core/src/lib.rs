//! Pulse-shaped control of open quantum systems.
//!
//! The crate covers the full pipeline from analytic pulse envelopes to
//! episodic optimization:
//!
//! - [`qstate`]: dense complex linear algebra for multi-qubit and
//!   coin ⊗ lattice Hilbert spaces (states, embeddings, partial traces).
//! - [`pulses`]: the six analytic envelope shapes, their exact time
//!   derivatives, and window scheduling.
//! - [`noise`]: Lorentzian colored-noise synthesis, lattice disorder, and
//!   pulse-amplitude error sampling.
//! - [`hamiltonians`]: typed assembly of every time-dependent Hamiltonian
//!   (static terms, XY/YY couplings, drive families, error terms).
//! - [`dynamics`]: adaptive RK45 integration of the Lindblad master
//!   equation with dense output onto a fixed grid.
//! - [`metrics`]: concurrence, entropies, mutual information, transport
//!   figures of merit.
//! - [`protocols`]: named control protocols (shaped pulses, DD benchmarks,
//!   hybrid QEC-DD, Floquet family, generation benchmarks) as runnable
//!   scenarios.
//! - [`qwalk`]: the disordered discrete-time quantum walk with pulse-shaped
//!   coin operations.
//! - [`adaptive`]: episodic environments, reward tables, and a
//!   cross-entropy-method optimizer.
//! - [`oracles`]: independent brute-force reference implementations used by
//!   the test suites; kept free of the main code paths.

pub mod adaptive;
pub mod dynamics;
pub mod error;
pub mod hamiltonians;
pub mod metrics;
pub mod noise;
pub mod oracles;
pub mod protocols;
pub mod pulses;
pub mod qstate;
pub mod qwalk;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
