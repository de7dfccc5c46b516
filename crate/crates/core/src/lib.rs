//! Associative memory on qutrit (spin-1) registers by quantum annealing.
//!
//! Patterns are stored as computational basis states of an n-site spin-1
//! register. The register is annealed from the ground state of a transverse
//! field towards a memory Hamiltonian, optionally biased by a probe (hint)
//! term, and read out in the computational basis.

pub mod algebra;
pub mod analysis;
pub mod error;
pub mod evolve;
pub mod hamiltonian;
pub mod report;
pub mod scenario;
pub mod selftest;
pub mod theory;

pub use algebra::{OperatorMatrix, Pattern, SpinMatrix, StateVector, Trit};
pub use error::{Error, Result};
pub use evolve::{anneal, EvolutionResult, SpectrumTrace};
pub use hamiltonian::{AnnealSpec, MemorySet, ScheduleKind, Slicing};
