use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown operator `{0}`")]
    UnknownOperator(String),
    #[error("operator `{0}` requires a stabilization parameter c > 0")]
    MissingStabilization(&'static str),
    #[error("mesh size must be positive, got {0}")]
    InvalidMeshSize(f64),
    #[error("stabilization parameter must be positive, got {0}")]
    InvalidStabilization(f64),
    #[error("stencil offset ({0}, {1}) is outside the grid function")]
    OutOfBounds(i64, i64),
    #[error("frequency ({0}, {1}) is not in the low-frequency box (-pi/2, pi/2]^2")]
    NotLowFrequency(f64, f64),
    #[error("stencil `{0}` has a zero center coefficient")]
    ZeroCenter(String),
    #[error("frequency ({0}, {1}) is not on the sampling lattice of a {2}x{2} grid")]
    OffLattice(f64, f64, usize),
    #[error("grid size {0} must be even and at least 8")]
    InvalidGridSize(usize),
    #[error("projected eigenvalue has imaginary part {im:e} at ({theta1}, {theta2})")]
    ComplexEigenvalue { im: f64, theta1: f64, theta2: f64 },
    #[error("extremal eigenvalues must satisfy -1 < s_min <= s_max < 1, got s_min = {s_min}, s_max = {s_max}")]
    InvalidExtrema { s_min: f64, s_max: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("c = {0} is too close to the removable singularity at c = 1/8")]
    NearSingularity(f64),
    #[error("root is not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("rho_opt({c}) = {rho} lies outside its zone [{lower}, {upper}]")]
    ZoneViolation {
        c: f64,
        rho: f64,
        lower: f64,
        upper: f64,
    },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}
