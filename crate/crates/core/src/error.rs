use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("integer coefficient overflow")]
    Overflow,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("unknown crossing id {0}")]
    UnknownCrossing(usize),

    #[error("invalid edge: {0}")]
    InvalidEdge(String),

    #[error("invalid base sequence: {0}")]
    InvalidBase(String),

    #[error("invalid orientation: expected {expected} entries, got {got}")]
    InvalidOrientation { expected: usize, got: usize },

    #[error("crossing {0} is not a warping crossing for this base sequence")]
    NotWarping(usize),

    #[error("edges do not share a face")]
    NotCofacial,

    #[error("move site not applicable: {0}")]
    SiteNotApplicable(String),

    #[error("recursion budget of {limit} nodes exceeded on a diagram with c={crossings}, r={components}")]
    Budget {
        limit: u64,
        crossings: usize,
        components: usize,
    },
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
