use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("singular matrix")]
    SingularMatrix,

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("dimension vector length {got} does not match {expected} vertices")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("arrow {arrow} has endpoint {endpoint} outside {vertices} vertices")]
    ArrowOutOfRange {
        arrow: usize,
        endpoint: usize,
        vertices: usize,
    },

    #[error("local quiver would need {count} arrows from v{source_vertex} to v{target_vertex}; summand collection is invalid")]
    NegativeArrowCount {
        source_vertex: usize,
        target_vertex: usize,
        count: i64,
    },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("degenerate base change: the assembled base-change matrix is singular")]
    DegenerateBaseChange,

    #[error("non-square base change: a-part sums to {a}, b-part sums to {b}")]
    NonSquare { a: usize, b: usize },

    #[error("parameter {0} gives a reducible representation")]
    ReducibleParameter(String),

    #[error("duplicate parameter {0}: family parameters must be pairwise distinct")]
    DuplicateLambda(String),

    #[error("invalid family spec: {0}")]
    InvalidSpec(String),

    #[error("labeled quiver is not simple: nonzero-label support is not strongly connected")]
    NotSimple,

    #[error("no extension from summand {source_summand} to summand {target_summand}")]
    MissingExtension {
        source_summand: usize,
        target_summand: usize,
    },

    #[error("central parameter mu must be nonzero")]
    ZeroMu,

    #[error("central element does not act by a scalar")]
    NonScalarCentral,

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
