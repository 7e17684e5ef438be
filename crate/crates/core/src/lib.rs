//! Computation with vector-valued (polysymplectic) symplectic structures.
//!
//! The crate is layered bottom-up:
//!
//! - [`exactla`]: exact rational matrices, kernels, the subspace lattice,
//!   quotients and annihilators.
//! - [`polycore`]: V-valued alternating forms, polysymplectic orthogonals,
//!   subspace classification, coefficient maps, the canonical model
//!   `U ⊕ Hom(U, V)`, the universal embedding and linear reduction.
//! - [`liealg`]: Lie algebras given by structure constants, their bracket
//!   forms, and the SO(3) group-level checks (moment map, fixed points of
//!   left translations, non-convexity of the moment image).
//! - [`pointham`]: floating-point Hamiltonian machinery on coordinate patches
//!   (`ω = -dθ` by central differences, Hamiltonian fields, brackets, moment
//!   maps from invariant potentials, local embeddings, fiber derivatives).
//! - [`discgauge`]: cochains on Δ-complexes with the Alexander–Whitney cup
//!   product, the `C²/B²`-valued form on 1-cochains, the gauge moment map and
//!   reduction to `H¹` with its cup pairing into `H²`.
//! - [`verify`]: seeded randomized property suites over all of the above.
//!
//! Everything exact is computed over arbitrary-precision rationals; nothing in
//! `exactla`, `polycore` or `discgauge` carries a tolerance.

pub mod discgauge;
pub mod error;
pub mod exactla;
pub mod exec;
pub mod liealg;
pub mod pointham;
pub mod polycore;
pub mod random;
pub mod verify;

pub use error::{Error, Result};
pub use exactla::{Matrix, QuotientSpace, Scalar, Subspace};
pub use polycore::{CoefficientMap, LinearReduction, SubspaceClass, VForm};
