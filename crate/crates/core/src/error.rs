use thiserror::Error;

use crate::exactnum::Cyclo;

#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("value is not rational: {0}")]
    NotRational(Cyclo),
    #[error("cannot embed Q(zeta_{from}) into Q(zeta_{to})")]
    IncompatibleOrder { from: u64, to: u64 },
    #[error("weight list does not span the ambient space")]
    DoesNotSpan,
    #[error("weights do not span a pointed cone")]
    NotPointed,
    #[error("point lies on a wall of the arrangement")]
    IrregularPoint,
    #[error("polyhedron is unbounded")]
    Unbounded,
    #[error("functional is not regular: it vanishes on weight {0}")]
    NotRegularFace(usize),
    #[error("series truncated at degree {truncation} applied to a polynomial of degree {degree}")]
    TruncationTooLow { truncation: usize, degree: usize },
    #[error("requested cell lies outside the window")]
    WindowExceeded,
    #[error("piecewise function has no compact support hint")]
    UnboundedSupport,
    #[error("interpolation system is singular")]
    SingularSystem,
    #[error("weight list is not unimodular")]
    NotUnimodular,
    #[error("point is not a toric vertex of the weight list")]
    NotAVertex,
    #[error("invalid input: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
