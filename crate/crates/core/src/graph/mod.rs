//! Labeled simple graphs and digraphs on `[n]`, the forgetful map, canonical
//! codes, exhaustive enumeration, and graph events.

mod codec;
mod enumerate;
mod events;
mod pairs;
mod simple;

pub use codec::{parse_hex_code, to_hex_code, DigraphJson, GraphJson};
pub use enumerate::{
    enumerate_digraphs, enumerate_graphs, Enumerator, DIGRAPH_N_MAX, GRAPH_N_MAX,
};
pub use events::{lift_event, DigraphEvent, EventSpec, Monotonicity};
pub use pairs::{pair_count, PairIndex, MAX_VERTICES};
pub use simple::{forgetful_code, forgetful_map, Digraph, Graph};
