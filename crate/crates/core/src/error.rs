use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ideals belong to incompatible algebras")]
    IncompatibleAlgebras,
    #[error("duplicate block id `{0}`")]
    DuplicateBlock(String),
    #[error("block `{0}` has dimension 0")]
    ZeroDimension(String),
    #[error("unknown block id `{0}`")]
    UnknownBlock(String),
    #[error("map not functional at source {0}")]
    NotFunctional(String),
    #[error("map not injective at target {0}")]
    NotInjective(String),
    #[error("dimension mismatch: block {source_id} has dim {source_dim} but its image {target_id} has dim {target_dim}")]
    DimensionMismatch {
        source_id: String,
        source_dim: u32,
        target_id: String,
        target_dim: u32,
    },
    #[error("ideal is not contained in the ambient ideal (block `{0}`)")]
    NotSubset(String),
    #[error("ideal is not invariant: block `{0}` is moved outside it")]
    NotInvariant(String),
    #[error(
        "partial automorphism is not completely nonautomorphic: automorphic core contains {0:?}"
    )]
    CoreNonEmpty(Vec<String>),
    #[error("component at degree {degree} is supported on block `{block}` outside D_{degree}")]
    SupportOutsideIdeal { degree: i64, block: String },
    #[error("matrix for block `{block}` has shape {rows}x{cols}, expected {dim}x{dim}")]
    BlockShape {
        block: String,
        rows: usize,
        cols: usize,
        dim: u32,
    },
    #[error("element is supported on block `{0}` outside the representation's orbit")]
    SupportOutsideOrbit(String),
    #[error("matrix size mismatch: expected {expected}x{expected}, found {rows}x{cols}")]
    SizeMismatch {
        expected: usize,
        rows: usize,
        cols: usize,
    },
    #[error("indecomposable over exact field: {0}")]
    Indecomposable(String),
    #[error("unknown system `{0}`")]
    UnknownSystem(String),
    #[error("requested {requested} blocks exceeds the enumeration cap of {cap}")]
    CapExceeded { requested: usize, cap: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
