use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("syntax error at line {line}, column {col}: {msg}")]
    Syntax { line: usize, col: usize, msg: String },
    #[error("invalid field descriptor `{0}`")]
    InvalidField(String),
    #[error("invalid scalar `{0}`")]
    InvalidScalar(String),
    #[error("ideal is not admissible: {0}")]
    NonAdmissibleIdeal(String),
    #[error("path basis exceeds the dimension bound {0}")]
    InfiniteDimensional(usize),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("the ideal contains the identity")]
    IdentityInIdeal,
    #[error("subspace is not a two-sided ideal: {0}")]
    NotAnIdeal(String),
    #[error("modules belong to different algebras")]
    AlgebraMismatch,
    #[error("invalid representation: {0}")]
    InvalidRepresentation(String),
    #[error("resolution budget exceeded before degree {0}")]
    BudgetExceeded(usize),
    #[error("no splitting endomorphism found over {0}; try the rationals or a field extension")]
    FieldTooSmallForSplit(String),
    #[error("empty family")]
    EmptyFamily,
    #[error("zero module")]
    ZeroModule,
    #[error("module is not indecomposable")]
    NotIndecomposable,
    #[error("module is projective")]
    ProjectiveInput,
    #[error("seed {0} is not indecomposable")]
    NonIndecomposableSeed(usize),
    #[error("seeds {0} and {1} are isomorphic")]
    DuplicateSeeds(usize, usize),
    #[error("vertex set is not a cyclic component: {0}")]
    NotCyclic(String),
    #[error("fragment is not closed")]
    NotClosed,
    #[error("fragment is not connected")]
    NotConnected,
    #[error("cores of two multisections differ: {0}")]
    CoreMismatch(String),
    #[error("fragment is not almost acyclic")]
    NotAlmostAcyclic,
    #[error("family is not cyclic: {0}")]
    NotCyclicFamily(String),
    #[error("universe of indecomposables is not known to be complete")]
    IncompleteUniverse,
    #[error("not a finite cyclic component: {0}")]
    NotFiniteCyclic(String),
    #[error("algebra has relations")]
    HasRelations,
    #[error("path not in fragment: {0}")]
    PathNotInFragment(String),
    #[error("wrong regime: {0}")]
    WrongRegime(String),
    #[error("unknown vertex id `{0}` in fragment")]
    UnknownFragmentVertex(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}
