//! Dense brute-force reference implementations.
//!
//! Nothing here uses the block structure beyond writing matrices out: states
//! and Hamiltonians are expanded to full `(4j+2)×(4j+2)` matrices, diagonalised
//! with a Jacobi eigensolver, and the information measures are evaluated from
//! their definitions.

mod dense;
mod measures;
pub mod sampling;

pub use dense::{
    dense_gibbs, dense_sqrt, eigh, expand, sz_commutator, total_sz, DenseHermitian, Expand,
};
pub use measures::{
    dominant_is_axial, m_matrix, oracle_lqfi, oracle_lqu, qfi, sym3_max_eigenvalue, variance,
    w_matrix, wigner_yanase, BlochVector, Observable, OracleValue, Sym3,
};
