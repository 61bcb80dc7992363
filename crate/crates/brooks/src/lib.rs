//! Delta-coloring of graphs via the two constructive proofs of Brooks'
//! theorem: a delete-and-repair scheme built on Kempe-chain surgery and
//! a DFS scheme built on separation vertices and forced spanning trees.

pub mod coloring;
pub mod dfs_color;
pub mod dispatch;
pub mod graph;
pub mod greedy;
pub mod instrument;
pub mod io;
pub mod repair;
pub mod testkit;

pub use coloring::{validate_coloring, Color, Coloring, ColoringCheck};
pub use dispatch::{
    color_graph, required_palette, AlgoChoice, ColorOptions, ColorResult, DispatchError,
};
pub use graph::{Graph, GraphClass, GraphError, VertexId};
pub use instrument::{Branch, Instrumentation, InternalAssertion, Recorder, TraceEvent};
