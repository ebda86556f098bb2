use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Domain(String),
    #[error("degenerate triple")]
    DegenerateTriple,
    #[error("no intersection")]
    NoIntersection,
    #[error("vertical geodesic has no apex")]
    VerticalGeodesic,
    #[error("non-tangent configuration")]
    NonTangent,
    #[error("ball too large: more than {0} elements")]
    BallTooLarge(usize),
    #[error("invariant violation at word {word:?}: {reason}")]
    Invariant { word: Vec<usize>, reason: String },
    #[error("sign pattern violated: {0}")]
    SignPattern(String),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Stable machine-readable tag for structured reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::Domain(_) => "domain",
            Error::DegenerateTriple => "degenerate-triple",
            Error::NoIntersection => "no-intersection",
            Error::VerticalGeodesic => "vertical-geodesic",
            Error::NonTangent => "non-tangent",
            Error::BallTooLarge(_) => "ball-too-large",
            Error::Invariant { .. } => "invariant-violation",
            Error::SignPattern(_) => "sign-pattern",
            Error::Json(_) => "malformed-json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
