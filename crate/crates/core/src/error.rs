use alloc::string::String;

/// Errors raised by graph construction, condition handling, assembly and the
/// numerical kernels.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid graph: {0}")]
    InvalidGraph(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("derivative of order {requested} exceeds available order {available}")]
    Smoothness { requested: usize, available: usize },
    #[error("invalid vertex conditions: {0}")]
    InvalidConditions(String),
    #[error("unknown preset `{0}`")]
    UnknownPreset(String),
    #[error("no degrees of freedom left after imposing the vertex conditions")]
    NoDegreesOfFreedom,
    #[error("matrix is not positive definite (pivot {pivot})")]
    NotPositiveDefinite { pivot: usize },
    #[error("matrix is not symmetric (relative asymmetry {asymmetry:e})")]
    NotSymmetric { asymmetry: f64 },
    #[error("Jacobi iteration did not converge within {sweeps} sweeps")]
    NoConvergence { sweeps: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("mesh cannot resolve requested times (smallest t {t_min:e} < floor {floor:e})")]
    Unresolved { t_min: f64, floor: f64 },
    #[error("no dynamic component: Y_d is trivial")]
    NoDynamicComponent,
    #[error("form is indefinite (smallest eigenvalue {0:e})")]
    Indefinite(f64),
}

impl Error {
    /// Stable variant name for machine-readable reports.
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidGraph(_) => "invalid_graph",
            Error::OutOfRange(_) => "out_of_range",
            Error::UnknownVertex(_) => "unknown_vertex",
            Error::Dimension(_) => "dimension",
            Error::Smoothness { .. } => "smoothness",
            Error::InvalidConditions(_) => "invalid_conditions",
            Error::UnknownPreset(_) => "unknown_preset",
            Error::NoDegreesOfFreedom => "no_degrees_of_freedom",
            Error::NotPositiveDefinite { .. } => "not_positive_definite",
            Error::NotSymmetric { .. } => "not_symmetric",
            Error::NoConvergence { .. } => "no_convergence",
            Error::InvalidArgument(_) => "invalid_argument",
            Error::Unresolved { .. } => "unresolved",
            Error::NoDynamicComponent => "no_dynamic_component",
            Error::Indefinite(_) => "indefinite",
        }
    }

    /// True for failures of the numerical kernels (as opposed to bad input).
    pub fn is_numerical(&self) -> bool {
        matches!(self, Error::NotPositiveDefinite { .. } | Error::NoConvergence { .. } | Error::Unresolved { .. })
    }
}

pub type Result<T> = core::result::Result<T, Error>;
