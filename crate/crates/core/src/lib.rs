//! Multigraded local cohomology of `S/I` for monomial ideals `I`, computed
//! exactly through degree complexes `Δ_a`, with an independent Čech-complex
//! path, combinatorial generalized Cohen-Macaulay tests in dimensions 2 and
//! 3, and a search over exponent assignments of square-free seeds.

pub mod analyzer;
pub mod bits;
pub mod cech;
pub mod characterizations;
pub mod complex;
pub mod construct;
pub mod corpus;
pub mod error;
pub mod field;
pub mod homology;
pub mod ideal;
pub mod io;
pub mod linalg;
pub mod report;

pub use complex::{degree_complex, stanley_reisner_complex, MultiDegree, SimplicialComplex};
pub use error::{Error, Result};
pub use field::FieldSpec;
pub use homology::{reduced_homology_dims, HomologyResult};
pub use ideal::{minimal_generators, Monomial, MonomialIdeal};
