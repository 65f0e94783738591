//! Rainbow paths and cycles in graph systems: a graph system is a family of
//! graphs `G_0, .., G_{k-1}` on a common vertex set, and a rainbow subgraph
//! takes each of its edges from a different `G_i`.
//!
//! Every solver returns a certificate that [`verify_rainbow_path`] or
//! [`verify_rainbow_cycle`] checks independently.

pub mod absorption;
pub mod bitset;
pub mod certificate;
pub mod exec;
pub mod generators;
pub mod ham_path;
pub mod io;
pub mod oracle;
pub mod pancyclic;
pub mod rotation;
pub mod sweep;
pub mod system;

pub use absorption::{
    absorb, absorb_at, build_absorbing_cycle, find_rainbow_hamiltonian_cycle, is_absorbing_for, sample_pattern_path,
    AbsorbingCycle, Absorption, AbsorptionError, AbsorptionParams, ColorTriple, PatternPath,
};
pub use bitset::BitSet;
pub use certificate::{verify_rainbow_cycle, verify_rainbow_path, Certificate, RainbowCycle, RainbowPath, Verdict, Violation};
pub use exec::Exec;
pub use generators::{gen_balanced_bipartite, gen_complete, gen_random_min_degree, gen_unbalanced_bipartite, GenError};
pub use ham_path::{extend_path, find_rainbow_hamiltonian_path, HamPathError};
pub use io::{parse_certificate, parse_system, serialize_certificate, serialize_system, FormatError};
pub use oracle::{oracle_cycle_of_length, oracle_hamiltonian_cycle, oracle_hamiltonian_path, OracleError, OracleOptions};
pub use pancyclic::{find_base_cycle, find_cycle_n_minus_1, find_cycle_of_length, rainbow_pancyclic, PancyclicError, PancyclicReport, Pattern};
pub use rotation::{close_rainbow_cycle, RotationError};
pub use system::{Color, GraphSystem, Subsystem, SystemError, Vertex};
