use num_complex::Complex64;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("evaluation at a pole: z = {0}")]
    Pole(Complex64),
    #[error("denominator roots closer than {tolerance:e}: {a} and {b}")]
    ClusteredRoots {
        a: Complex64,
        b: Complex64,
        tolerance: f64,
    },
    #[error("division by zero")]
    DivisionByZero,
    #[error("point {z} outside the domain |z| <= {radius}")]
    OutOfDomain { z: Complex64, radius: f64 },
    #[error("antiderivative not single-valued: residue {residue} at pole {pole}")]
    Period { pole: Complex64, residue: Complex64 },
    #[error("singular point of the immersion at z = {0}")]
    SingularPoint(Complex64),
    #[error("inversion center lies on the surface (distance {distance:e} at z = {z})")]
    CenterOnSurface { z: Complex64, distance: f64 },
    #[error("quadrature did not converge: estimated error {error:e} above target {target:e}")]
    NonConvergent { error: f64, target: f64 },
    #[error("degenerate fit: {0}")]
    DegenerateFit(String),
    #[error("series inversion needs a nonzero constant leading term")]
    NonUnitLeadingTerm,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}
