//! Exact computations with unimodular systems of linear forms.
//!
//! A unimodular system is a finite list of nonzero linear forms on a real
//! vector space such that every maximal linearly independent subset
//! generates the same group over the integers. Equivalently, its coefficient
//! matrix over a base of that group is totally unimodular.
//!
//! The crate covers construction and verification ([`UnimodularSystem`]),
//! complexity and bases, direct sums and `Υ`-summands, Gale duality,
//! isomorphism ([`iso`]), graphic and cographic systems ([`graph`]), the
//! associated lattice ([`lattice`]) and the polytope it carries
//! ([`polytope`]). All arithmetic is exact.

pub mod catalog;
pub mod error;
pub mod graph;
pub mod io;
pub mod iso;
pub mod lattice;
pub mod linalg;
pub mod polytope;
pub mod system;

pub use error::{Error, MinorWitness, Result};
pub use graph::Multigraph;
pub use iso::{are_isomorphic, automorphism_count, SignedCorrespondence};
pub use lattice::LatticeModel;
pub use linalg::IntMatrix;
pub use polytope::{PolytopeReport, ScanCaps};
pub use system::{UnimodularSystem, UpsilonSplit, DEFAULT_ENUMERATION_CAP};
