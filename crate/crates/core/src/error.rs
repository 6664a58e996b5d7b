use alloc::string::String;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("a graph needs at least one vertex")]
    NoVertices,
    #[error("vertex {vertex} out of range for a graph on {vertex_count} vertices")]
    VertexOutOfRange { vertex: usize, vertex_count: usize },
    #[error("edge {edge} out of range for a graph with {edge_count} edges")]
    EdgeOutOfRange { edge: usize, edge_count: usize },
    #[error("expected {expected} entries (one per edge), found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("the two vertices must be distinct")]
    SameVertex,
    #[error("vertices must be pairwise distinct")]
    VerticesNotDistinct,
    #[error("graph has loops; Potts measures are defined on loopless graphs only")]
    LoopsPresent,
    #[error("{what}: {required} exceeds the cap of {cap}")]
    CapExceeded {
        what: &'static str,
        required: u128,
        cap: u128,
    },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("the vertices are not connected in the given multiplicity vector")]
    NotConnected,
    #[error("the vertex set does not separate the two vertices")]
    NotSeparating,
    #[error("interpolated flow polynomial has a non-integral coefficient")]
    NonIntegralCoefficient,
    #[error("denominator interval contains zero")]
    DegenerateDenominator,
    #[error("cannot parse graph `{0}`")]
    GraphSpec(String),
}

impl Error {
    /// True for the cap-exceeded family, which front ends report with a
    /// dedicated exit status.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }

    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidParameter(msg.into())
    }
}
