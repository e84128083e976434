use alloc::string::String;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FieldError {
    #[error("characteristic {0} is not a prime in [5, 2^31)")]
    BadCharacteristic(u64),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QuiverError {
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("arrow `{0}` has an undeclared endpoint")]
    DanglingArrow(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("empty path")]
    EmptyPath,
    #[error("arrow `{0}` does not compose with the path before it")]
    NotComposable(String),
    #[error("relation has no nonzero terms")]
    EmptyRelation,
    #[error("relation term shorter than two arrows")]
    ShortRelationTerm,
    #[error("relation terms are not parallel")]
    NonParallelRelation,
    #[error("relation refers to a path outside the quiver")]
    ForeignPath,
    #[error("nilpotency bound must be positive")]
    ZeroNilbound,
    #[error("not admissible: path {path} of length {bound} survives the relations")]
    NotAdmissible { path: String, bound: usize },
    #[error("kept arrow `{0}` touches a removed vertex")]
    ArrowLeavesFactor(String),
    #[error("dimension vector has length {found}, quiver has {expected} vertices")]
    DimensionVectorLength { expected: usize, found: usize },
    #[error("quiver is not connected; classify each component separately")]
    NotConnected,
    #[error("quiver has loops; the Tits-form classification needs a loop-free quiver")]
    HasLoops,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("dimension vector has length {found}, quiver has {expected} vertices")]
    DimensionVectorLength { expected: usize, found: usize },
    #[error("{found} arrow matrices given, quiver has {expected} arrows")]
    ArrowCount { expected: usize, found: usize },
    #[error("matrix for arrow `{arrow}` has the wrong shape")]
    Shape { arrow: String },
    #[error("matrix over a different field")]
    FieldMismatch,
    #[error("relation {0} does not vanish")]
    RelationViolated(usize),
    #[error("representations of different bound quivers")]
    QuiverMismatch,
    #[error("direct sum of no summands")]
    EmptySum,
    #[error("subspace is not invariant under arrow `{arrow}`")]
    NotInvariant { arrow: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("target and source algebras are over different fields")]
    FieldMismatch,
    #[error("malformed bimodule: {0}")]
    Malformed(String),
    #[error("target relation {0} does not act as zero")]
    RelationNotAnnihilated(usize),
    #[error("source algebra has relations but no finite path basis; cannot validate")]
    CannotValidate,
    #[error("module is not over the witness's source algebra")]
    SourceMismatch,
    #[error("witness source is not the free algebra k<x,y>")]
    SourceNotFree,
    #[error("middle algebras of the composition differ")]
    MiddleMismatch,
    #[error("not a factor algebra: {0}")]
    NotAFactor(String),
    #[error("factor rule needs provenance describing the factor quiver")]
    MissingProvenance,
    #[error("algebra dimension unknown")]
    UnknownDimension,
    #[error("Morita multiplier {d} is smaller than the basic algebra's dimension {basic}")]
    MoritaTooSmall { d: u64, basic: usize },
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoveringError {
    #[error("grading group rank must be at least 1")]
    ZeroRank,
    #[error("arrow `{arrow}` has a weight of length {found}, expected {expected}")]
    WeightLength { arrow: String, expected: usize, found: usize },
    #[error("{0} weights given for {1} arrows")]
    WeightCount(usize, usize),
    #[error("relation `{0}` is not homogeneous for the grading")]
    Inhomogeneous(String),
    #[error("box must have one nonempty interval per grading coordinate")]
    BadBox,
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TiltingError {
    #[error("quiver has an oriented cycle; the path algebra is infinite-dimensional")]
    Cyclic,
    #[error("algebra has relations; only path algebras are supported")]
    NotHereditary,
    #[error("τ⁻ undefined: the module is injective")]
    Injective,
    #[error("not a tilting module: {0}")]
    NotTilting(String),
    #[error("endomorphism ring of summand {0} is not local with residue field k")]
    NonSplitEndomorphisms(usize),
    #[error("no presentation reproduces the endomorphism algebra: {0}")]
    Presentation(String),
    #[error(transparent)]
    Quiver(#[from] QuiverError),
    #[error(transparent)]
    Rep(#[from] RepError),
}
