//! Lifts of voltage digraphs represented by base-size polynomial matrices.
//!
//! A voltage digraph is a directed multigraph whose arcs carry elements of a
//! finite group. Its lift expands each vertex into one copy per group element
//! and routes arcs between copies according to the voltages. This crate
//! represents the lift compactly by a polynomial matrix of the base digraph's
//! size, counts walks in the lift by powering that matrix (direct group
//! convolution, or pointwise via the discrete Fourier transform), and, when
//! the voltage group is Abelian, computes the complete lift spectrum from
//! root-of-unity evaluations, cross-checked against the explicitly
//! constructed lift.
//!
//! ```
//! use voltlift::{catalog, spectra, PolyMatrix};
//!
//! // The Alegre digraph: 25 vertices, the largest known 2-regular digraph
//! // of diameter 4, as the lift of a 5-vertex base over Z_5.
//! let vd = catalog::alegre();
//! assert_eq!(vd.lift().digraph().n(), 25);
//! assert_eq!(vd.lift().digraph().diameter().unwrap(), 4);
//!
//! // Walks of length 4 between the fibers of vertex 0: two walks stay in
//! // the starting copy, one shifts it by 2, one by 3.
//! let poly = PolyMatrix::from_voltage(&vd);
//! assert_eq!(poly.walk_counts(4, 0, 0).unwrap().coeffs(), &[2, 0, 1, 1, 0]);
//!
//! // The complete spectrum from the five 5x5 root-of-unity evaluations
//! // agrees with the brute-force eigensolve of the 25x25 lift adjacency.
//! let by_points = spectra::lift_spectrum(&vd).unwrap();
//! let by_lift = spectra::direct_spectrum(&vd).unwrap();
//! assert!(spectra::multiset_equal(&by_points, &by_lift, 1e-8));
//! ```
//!
//! Module map:
//!
//! - [`group`]: finite groups with a fixed element ordering, group
//!   convolution, character points.
//! - [`digraph`]: directed multigraphs, strong connectivity, eccentricities,
//!   vertex partitions, quotient matrices, regularity test.
//! - [`voltage`]: voltage digraphs, explicit lifts, per-voltage layer
//!   matrices, block circulant assembly, fiber quotient.
//! - [`polymat`]: polynomial matrices, exact powers, walk counts, DFT
//!   powering path.
//! - [`eigen`]: dense complex eigenvalues (Hessenberg + shifted QR).
//! - [`spectra`]: spectrum multisets, tolerance clustering and comparison,
//!   lift spectra via character points, the direct brute-force spectrum.
//! - [`catalog`]: built-in constructions (Alegre digraph, Hoffman-Singleton
//!   graph, the two-vertex polynomial family, Cayley digraphs).
//! - [`voltfile`]: the plain-text voltage digraph format used by the CLI.

pub mod catalog;
pub mod digraph;
pub mod eigen;
pub mod group;
pub mod polymat;
pub mod spectra;
pub mod voltage;
pub mod voltfile;

pub use digraph::{Digraph, DigraphError, VertexPartition};
pub use group::{CharPoint, FiniteGroup, GVector, GroupError, GroupKind};
pub use polymat::{PolyMatrix, PolymatError};
pub use spectra::{SpectraError, SpectrumCluster, SpectrumMultiset};
pub use voltage::{Lift, VoltageArc, VoltageDigraph, VoltageError};
pub use voltfile::ParseError;
