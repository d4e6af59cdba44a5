//! Error type shared by all modules.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is not symmetric at ({0}, {1})")]
    AsymmetricMatrix(usize, usize),
    #[error("diagonal entry of point {0} is not color 0")]
    DiagonalNotZero(usize),
    #[error("off-diagonal entry ({0}, {1}) uses the diagonal color 0")]
    OffDiagonalZero(usize, usize),
    #[error("triangle inequality fails on points ({0}, {1}, {2})")]
    TriangleViolation(usize, usize, usize),
    #[error("palette is not strictly increasing from 0")]
    PaletteNotStrictlyIncreasing,
    #[error("palette has {palette} entries but the matrix uses {colors} colors")]
    PaletteSizeMismatch { palette: usize, colors: usize },
    #[error("tolerance merge is ambiguous: values {0} and {1} chain across more than one tolerance")]
    ToleranceMergeAmbiguous(f64, f64),
    #[error("operation needs a nonempty space")]
    EmptySpace,
    #[error("invalid permutation image vector")]
    InvalidPermutation,
    #[error("permutations have mismatched degrees")]
    DegreeMismatch,
    #[error("group order exceeds the cap {0}")]
    OrderCapExceeded(usize),
    #[error("degree {n} exceeds the supported maximum {max}")]
    DegreeTooLarge { n: usize, max: usize },
    #[error("group is not transitive")]
    NotTransitive,
    #[error("space is not {0}-homogeneous")]
    NotHomogeneous(usize),
    #[error("map is not a partial isometry")]
    NotPartialIsometry,
    #[error("point index {0} out of range")]
    PointOutOfRange(usize),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("point count is not a power of two")]
    NotPowerOfTwo,
    #[error("basis-change search supports m <= 4, got m = {0}")]
    BasisSearchTooLarge(usize),
    #[error("distance sums collide: {x0} + {y0} = {x1} + {y1}")]
    SumNotInjective { x0: f64, y0: f64, x1: f64, y1: f64 },
    #[error("space has no palette")]
    NoPalette,
    #[error("distances are not pairwise distinct")]
    DistancesNotDistinct,
    #[error("side lengths do not form a triangle")]
    NotATriangle,
    #[error("norm table is not injective")]
    NormNotInjective,
    #[error("scheme fails validation")]
    SchemeInvalid,
    #[error("scheme fails the coherence condition")]
    NotCoherent,
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}
