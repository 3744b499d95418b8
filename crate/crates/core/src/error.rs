use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// No linear functional is strictly positive on every column.
    NotPointed,
    /// The homogeneous solution cone of a Diophantine system contains a line.
    UnsupportedSystem,
    /// A stage that needs a finite hole set was asked to run on an instance
    /// with infinitely many holes (or before finiteness was decided).
    InfiniteHoles,
    /// A point that was required to lie in the semigroup does not.
    NotInSemigroup,
    /// Frobenius numbers need coprime inputs.
    GcdNotOne,
    /// A lattice point coordinate left the 64-bit range.
    Overflow,
    /// Shapes of the inputs do not fit together.
    Dimension(&'static str),
    /// Malformed input (zero column, empty matrix, bad table model, ...).
    Invalid(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::NotPointed => f.write_str("the cone spanned by the columns is not pointed"),
            Error::UnsupportedSystem => {
                f.write_str("the homogeneous solution cone contains a line")
            }
            Error::InfiniteHoles => f.write_str("the semigroup has infinitely many holes"),
            Error::NotInSemigroup => f.write_str("the point is not in the semigroup"),
            Error::GcdNotOne => f.write_str("the entries are not coprime"),
            Error::Overflow => f.write_str("integer overflow in lattice point arithmetic"),
            Error::Dimension(what) => write!(f, "dimension mismatch: {what}"),
            Error::Invalid(what) => write!(f, "invalid input: {what}"),
        }
    }
}

impl core::error::Error for Error {}
