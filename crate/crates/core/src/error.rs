use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {0} exceeds the 64-vertex capacity")]
    TooManyVertices(usize),

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("loop edge at vertex {0}")]
    LoopEdge(usize),

    #[error("malformed graph6: {0}")]
    Graph6(String),

    #[error("malformed edge list: {0}")]
    EdgeList(String),

    #[error("{op} supports graphs with at most {max} vertices, got {n}")]
    Envelope {
        op: &'static str,
        n: usize,
        max: usize,
    },

    #[error("checkpoint: {0}")]
    Checkpoint(String),

    #[error("unknown class predicate `{0}`")]
    UnknownClass(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn check_envelope(op: &'static str, n: usize, max: usize) -> Result<()> {
    if n > max {
        Err(Error::Envelope { op, n, max })
    } else {
        Ok(())
    }
}
