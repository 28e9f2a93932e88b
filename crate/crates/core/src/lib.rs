//! Cyclically symmetric decompositions of the triangle sets of the cross
//! polytope `β^k` and the simplex `Δ^{k-1}` into surfaces.
//!
//! Triangles are grouped into `Z_n`-orbits ([`DifferenceCycle`]s), orbits are
//! grouped into blocks, and every block is rebuilt as an explicit complex and
//! certified: edge degrees, vertex links, Euler characteristic,
//! orientability, boundary circles, and invariance under the shift.

pub mod complex;
pub mod cyclic;
pub mod decompose;
pub mod document;
pub mod error;
pub mod skeleton;
pub mod surface;
pub mod symmetry;

pub use complex::{TwoComplex, VertexLink};
pub use cyclic::{enumerate_all, DifferenceCycle, Modulus, Triangle};
pub use decompose::{
    cross_partition, search_partition, simplex_partition, verify_partition, Partition, PartitionBlock, Policy,
    Rejection,
};
pub use document::PartitionDocument;
pub use error::{Error, Result};
pub use skeleton::{SkeletonKind, SkeletonSpec};
pub use surface::{certify, Classification, SurfaceCertificate};
pub use symmetry::{attest, SymmetryAttestation};
