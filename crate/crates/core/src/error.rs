use thiserror::Error;

use crate::lattice::LatticeVector;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ZeroVector: the zero vector has no primitive multiple")]
    ZeroVector,
    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },
    #[error("matrix is {rows}x{cols}, not square")]
    NotSquare { rows: usize, cols: usize },

    #[error("empty input: a polyhedron needs at least one point")]
    EmptyInput,
    #[error("polyhedron contains a line")]
    NotPointed,
    #[error("UnboundedBelow: recession ray {ray} pairs negatively with the functional")]
    UnboundedBelow { ray: LatticeVector },
    #[error("Unbounded: polyhedron has recession rays")]
    Unbounded,
    #[error("polyhedron is empty")]
    EmptyPolyhedron,
    #[error("not full-dimensional: dimension {dim} in rank {rank}")]
    NotFullDimensional { dim: usize, rank: usize },
    #[error("cone is not strongly convex")]
    NotStronglyConvex,

    #[error("invalid datum: {0}")]
    InvalidDatum(String),
    #[error("datum must have at least one summand besides Q0 (k >= 1)")]
    NoDeformationSummands,
    #[error("{u} is not in the dual cone")]
    NotInDualCone { u: LatticeVector },
    #[error("tilde structure violated: {0}")]
    TildeStructure(String),

    #[error("NegativeExponent: ray {ray} gets exponent {exponent} in trinomial {index}")]
    NegativeExponent {
        ray: LatticeVector,
        index: usize,
        exponent: String,
    },
    #[error("exponent vector has length {found}, expected {expected}")]
    ExponentLength { expected: usize, found: usize },

    #[error("OriginNotInterior: 0 is not in the strict interior")]
    OriginNotInterior,
    #[error("NonPrimitiveVertex: vertex {vertex} is not a primitive lattice point")]
    NonPrimitiveVertex { vertex: String },
    #[error("support function is not strictly convex: {ray} is not an extreme ray")]
    NotStrictlyConvex { ray: LatticeVector },
    #[error("character has a non-zero e0 component")]
    CharacterHasE0Component,
    #[error("boundary monomial requires a Q-Cartier Z-divisor")]
    BoundaryOnQDivisor,
    #[error("datum cone does not match the polarisation cone")]
    ConeMismatch,
    #[error("e0 is not in the interior of the enlarged cone")]
    E0NotInterior,

    #[error("w = {w} is not primitive")]
    NonPrimitiveCharacter { w: LatticeVector },
    #[error("F is not a lattice polytope orthogonal to w")]
    FactorNotInKernel,
    #[error("NoFactorAtHeight {height}: vertex {vertex} is not covered")]
    NoFactorAtHeight { height: i64, vertex: String },
    #[error("ray prediction mismatch: predicted {predicted:?}, computed {computed:?}")]
    RayPredictionMismatch {
        predicted: Vec<String>,
        computed: Vec<String>,
    },
    #[error("family cross-check failed: {0}")]
    CrossCheck(String),
    #[error("OutsideV: {0} is a deleted point of the parameter plane")]
    OutsideV(String),
    #[error("parameter point must be non-zero")]
    ZeroParameterPoint,

    #[error("unknown name: {0}")]
    Unknown(String),
    #[error("malformed input: {0}")]
    Malformed(String),
}
