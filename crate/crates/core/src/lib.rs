//! Construction, verification and exhaustive auditing of graph and digraph
//! embeddings whose faces are euler circuits.

pub mod embedding;
pub mod error;
pub mod euler;
mod flow;
pub mod graph;
pub mod io;
pub mod nonorientable;
pub mod obstructions;
pub mod generators;
pub mod oracle;
pub mod oriented;
pub mod walk;

pub use embedding::Embedding;
pub use error::{Error, Result};
pub use graph::{edge_of, mate, Digraph, EdgeId, Graph, Half, Vertex};
pub use walk::{ClosedWalk, TransitionGraph};
