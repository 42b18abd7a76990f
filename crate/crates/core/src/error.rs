use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse Coxeter label `{0}`")]
    BadLabel(String),

    #[error("invalid Coxeter matrix: {0}")]
    BadMatrix(String),

    #[error("root enumeration exceeded {cap} positive roots; the group is not finite or the cap is too small")]
    InfiniteType { cap: usize },

    #[error("group enumeration exceeded the cap of {cap} elements")]
    CapExceeded { cap: usize },

    #[error("elements belong to different Coxeter systems")]
    SystemMismatch,

    #[error("invalid poset: {0}")]
    BadPoset(String),

    #[error("poset is not a lattice: elements {0} and {1} have no unique {2}")]
    NotALattice(usize, usize, &'static str),

    #[error("interval [{bottom}, {top}] is not a polygon")]
    NotPolygonal { bottom: usize, top: usize },

    #[error("edge set is not the contracted set of a congruence: {0}")]
    NotACongruence(String),

    #[error("orientation has a directed cycle through generator s{0}")]
    CyclicOrientation(usize),

    #[error("not a Coxeter element: {0}")]
    NotACoxeterElement(String),

    #[error("element is not sortable")]
    NotSortable,

    #[error("union of the regions in class {0} is not convex")]
    NonConvexUnion(usize),

    #[error("C-vector cone of {0} disagrees with the class-union cone")]
    MismatchWithClassFan(String),

    #[error("operation needs rank 3, got rank {0}")]
    RankUnsupported(usize),

    #[error("({0}, {1}) is not a diagonal of the triangulation")]
    NotADiagonal(usize, usize),

    #[error("invalid barring: {0}")]
    BadBarring(String),

    #[error("invalid permutation: {0}")]
    BadPermutation(String),
}
