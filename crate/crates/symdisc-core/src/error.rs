use alloc::string::String;
use core::fmt;

/// Errors shared by all modules.
#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// Matrix or point dimensions are invalid or mismatched.
    Dimension(String),
    /// An argument is outside its documented domain.
    InvalidArgument(String),
    /// Input was expected to be Hermitian; carries the asymmetry norm `‖A − A*‖_F`.
    NotHermitian { asymmetry: f64 },
    /// Input was expected PSD; carries the most negative eigenvalue found.
    NotPsd { eigenvalue: f64 },
    /// Operator was expected to be a contraction; carries its norm.
    NotContraction { norm: f64 },
    /// Tuple members do not commute within tolerance; carries the residual.
    NonCommuting { residual: f64 },
    /// The fundamental-operator system has no solution supported on the
    /// defect space; carries the out-of-range mass of the right-hand side.
    Inconsistent { residual: f64 },
    /// `n − βSᵢ` was numerically singular at the reported grid value.
    SingularPencil { i: usize, beta_re: f64, beta_im: f64 },
    /// An iterative kernel failed to converge.
    Convergence(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Dimension(msg) => write!(f, "dimension error: {msg}"),
            Error::InvalidArgument(msg) => write!(f, "invalid argument: {msg}"),
            Error::NotHermitian { asymmetry } => {
                write!(f, "matrix is not Hermitian: ‖A − A*‖_F = {asymmetry:.3e}")
            }
            Error::NotPsd { eigenvalue } => {
                write!(f, "matrix is not PSD: eigenvalue {eigenvalue:.3e} < 0")
            }
            Error::NotContraction { norm } => {
                write!(f, "operator is not a contraction: ‖P‖ = {norm:.6}")
            }
            Error::NonCommuting { residual } => {
                write!(f, "tuple does not commute: max ‖[A,B]‖ = {residual:.3e}")
            }
            Error::Inconsistent { residual } => write!(
                f,
                "fundamental equation inconsistent: out-of-range mass {residual:.3e}"
            ),
            Error::SingularPencil { i, beta_re, beta_im } => write!(
                f,
                "pencil n − βS_{i} singular at β = {beta_re}+{beta_im}i"
            ),
            Error::Convergence(what) => write!(f, "iteration failed to converge: {what}"),
        }
    }
}

impl core::error::Error for Error {}
