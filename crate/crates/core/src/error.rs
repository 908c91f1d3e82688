use crate::graph::GraphError;
use crate::sim::SimError;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Sim(#[from] SimError),
    /// The residual graph left after peeling is too dense to be shipped to
    /// every vertex, or cannot be peeled further: the arboricity promise is
    /// smaller than the true arboricity.
    #[error("sparse-partition precondition failed: {detail}")]
    SparsePreconditionFailed { residual_edges: usize, detail: String },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::InvalidParameters(msg.into()))
}
