use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("malformed document: {0}")]
    Malformed(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("filtration not nested: X_{lower} is not contained in X_{upper}")]
    NotNested { lower: usize, upper: usize },
    #[error("X_{{n-1}} must equal X_{{n-2}}")]
    CodimensionOneStratum,
    #[error("filtration dimension violation: X_{key} contains the {dim}-simplex {simplex}")]
    FiltrationDimension { key: usize, dim: usize, simplex: String },
    #[error("non-pure complex: {0} is not a face of a top-dimensional simplex")]
    NotPure(String),
    #[error("not a pseudomanifold: regular simplex {simplex} has {cofaces} top-dimensional cofaces")]
    NotPseudomanifold { simplex: String, cofaces: usize },
    #[error("regular part not dense at {0}")]
    NotDense(String),
    #[error("{0} is not a simplex of the space")]
    NotASimplex(String),
    #[error("codimension {k} out of range for dimension {n}")]
    CodimensionRange { k: usize, n: usize },
    #[error("d∘d ≠ 0 at degree {0}")]
    NotAComplex(i32),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("form is neither symmetric nor antisymmetric")]
    NoSymmetry,
    #[error("degenerate form (rank {rank} < {dim})")]
    Degenerate { rank: usize, dim: usize },
    #[error("odd dimension {0}: no Lagrangian can exist")]
    OddDimension(usize),
    #[error("region mismatch: {0}")]
    RegionMismatch(String),
    #[error("not constructible: {0}")]
    NotConstructible(String),
    #[error("subspace for {0} is not monodromy invariant")]
    NotInvariant(String),
    #[error("subspace for {0} is not injective (basis rank deficient)")]
    NotInjective(String),
    #[error("wrong stalk dimension for {component}: expected {expected}, got {got}")]
    WrongStalkDimension { component: String, expected: usize, got: usize },
    #[error("entry supplied on Witt component {0}")]
    EntryOnWittComponent(String),
    #[error("unknown stratum component `{0}`")]
    UnknownComponent(String),
    #[error("depth ≥ 2 stratum {0}: link pairing unavailable")]
    DeepStratum(String),
    #[error("link of {0} is not a closed manifold")]
    LinkNotManifold(String),
    #[error("link of {0} is not orientable")]
    LinkNotOrientable(String),
    #[error("models not shared: {0}")]
    ModelsNotShared(String),
    #[error("invalid perversity: {0}")]
    InvalidPerversity(String),
    #[error("perversity defined only for k ≥ 2, got {0}")]
    PerversityRange(usize),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
