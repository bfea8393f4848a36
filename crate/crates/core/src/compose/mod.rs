//! Composition maps, identity verification and the group law on solutions.
//!
//! A form `f` composes when `f(x) f(y) = f(z)` with `z` bilinear in `x, y`;
//! three-fold composition replaces the pair by a triple and `z` by a
//! trilinear `w`. [`verify_identity`] expands the residual of either
//! identity directly. For the largest determinant families that expansion
//! does not fit in memory, and [`verify_family`] instead checks the matrix
//! identity `P(x) P(y) = P(z)` together with `f = det P`; multiplicativity
//! of the determinant then gives the form identity exactly.

mod group;
mod map;
mod verify;

pub use group::{
    check_associativity, diophantine_chain, identity_element, invert, verify_threefold_genuineness,
    DiophantineChain,
};
pub use map::{map_table, CoeffJson, MapJson, MultilinearMap, ARG_PREFIXES};
pub use verify::{
    verify_family, verify_identity, verify_structural, Check, CompositionCertificate, FamilyReport,
    IdentityCheck, Method, MethodChoice, DIRECT_TERM_BUDGET,
};

use thiserror::Error;

use crate::linstruct::LinError;
use crate::polyring::PolyError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ComposeError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Lin(#[from] LinError),
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("map is not multilinear: {0}")]
    NotMultilinear(String),
    #[error("parameters still symbolic: {}", .0.join(", "))]
    UnboundParameters(Vec<String>),
    #[error("point is not a unit: the form takes the value {0}")]
    NotAUnit(String),
    #[error("the map with its first argument fixed is singular")]
    SingularMap,
    #[error("inverse is not integral: {}", .0.join(", "))]
    NonIntegralInverse(Vec<String>),
    #[error("family `{0}` has no map of the required kind")]
    WrongFamilyKind(String),
    #[error("structural check needs a structure and an extraction recipe")]
    NoStructure,
    #[error("`(1, 0, .., 0)` is not neutral for the map of `{0}`")]
    NoIdentity(String),
    #[error("{0}")]
    Catalog(String),
}
