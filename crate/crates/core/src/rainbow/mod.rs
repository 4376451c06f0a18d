//! Refinement of the triangulation along a filtration, the induced coloring
//! and its rainbow census, and signed barycentric straightening of chains.

mod chain;
mod color;
mod refine;

pub use chain::{straighten_pieces, Chain};
pub use color::{color_by_filtration, count_rainbow, CensusReport, ColorMeta, LevelColoring, PointCount};
pub use refine::{refine_from, refine_with_filtration, refine_with_order, InsertionOrder};
