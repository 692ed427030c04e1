use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("element has negative valuation")]
    NegativeValuation,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("form is not symmetric")]
    NotSymmetric,
    #[error("matrix is singular")]
    Singular,
    #[error("form does not have the expected antisymmetric shape")]
    BadShape,
    #[error("matrix is not in the set A (g*g must be integral with unit determinant)")]
    NotInA,
    #[error("lattice is not self-dual")]
    NotSelfDual,
    #[error("dual lattice is not a chi-multiple of the lattice")]
    NotPiEquivalentToDual,
    #[error("dual scaling exponent {0} is odd")]
    OddExponent(i64),
    #[error("lattice does not define an alternating vertex")]
    NotAlternating,
    #[error("exploration bound {0} exceeded")]
    BoundExceeded(usize),
    #[error("the two lattices coincide")]
    SameLattice,
    #[error("monomial word table incomplete: {0} of 1296 found")]
    CoverageIncomplete(usize),
    #[error("matrix is not unitary")]
    NotUnitary,
    #[error("matrix entry is not in Z[1/chi]")]
    NotInRing,
    #[error("no candidate decreases l; stuck at\n{0}")]
    DescentStuck(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
}
