//! Exact combinatorics of homogeneous deformations of toric varieties and
//! toric pairs, and of mutations of Fano polytopes.

pub mod cone;
pub mod cox;
pub mod datum;
pub mod error;
pub mod json;
pub mod lattice;
pub mod mutation;
pub mod oracle;
pub mod polarized;
pub mod polyhedron;
pub mod presets;

pub use cone::{Cone, Fan};
pub use cox::{CoxPolynomial, CoxSystem, PairingTable};
pub use datum::{build_tilde, validate_datum, DeformationDatum, TildeData, ValidationReport};
pub use error::{Error, Result};
pub use lattice::{
    cokernel, smith_normal_form, AbelianGroupPresentation, ClassDegree, Cokernel, IntMatrix,
    LatticeVector, RationalVector, SmithNormalForm,
};
pub use mutation::{
    mutate, mutation_family, specialize_fiber, validate_mutation_datum, FanoPolytope,
    MutationDatum, MutationFamily, ParameterPoint,
};
pub use polarized::{projective_tilde, DivisorClass, PolarizedToricVariety, ProjectiveTilde};
pub use polyhedron::{Inequality, Polyhedron};
