//! Discord-type quantum correlations (local quantum uncertainty and local
//! quantum Fisher information) and entanglement measures for thermal and
//! ground states of spin-(j,1/2) systems with axially symmetric Hamiltonians.
//!
//! The crate is organised bottom-up:
//!
//! - [`axial`]: block data model for operators commuting with the total `S_z`.
//! - [`models`]: XXX, XXZ and XXZ-in-field Hamiltonians, Brillouin/Langevin.
//! - [`thermal`]: partition function, Gibbs state and T→0 ground state.
//! - [`correlations`]: closed-form LQU/LQFI branches for any axial state.
//! - [`su2`]: the one-parameter SU(2)-invariant family and XXX closed forms.
//! - [`oracle`]: independent dense brute-force reference implementations.
//! - [`cli`]: sweeps, table/figure data and the verification suite.

pub mod axial;
pub mod cli;
pub mod correlations;
pub mod error;
pub mod models;
pub mod oracle;
pub mod su2;
pub mod thermal;

pub use axial::{
    block_eigs, block_spectrum, validate_density, AxialDensityMatrix, AxialHamiltonian, BlockEigen,
    BlockSpectrum, DensityBlock, HamiltonianBlock, SpinJ, ValidationReport,
};
pub use correlations::{correlations, Branch, CorrelationResult};
pub use error::{Error, Result};
pub use models::ModelParams;
pub use thermal::{gibbs_state, ground_state, partition_function, Temperature};
