//! Exact cut-and-project model sets in Heisenberg groups over real quadratic
//! rings, finite-sample checks of the Delone, FLC, repetitivity and
//! aperiodicity hypotheses, word growth and packing/cover experiments, and the
//! associated dimension bounds.

pub mod analysis;
pub mod bounds;
pub mod cutproject;
pub mod error;
pub mod exactnum;
pub mod growth;
pub mod heis;
mod index;
pub mod io;

pub use analysis::{analyze, AnalysisConfig, AnalysisReport, PatchCatalog, PatchClass};
pub use cutproject::{generate_model_set, AxisBox, ModelSet, Region, Scheme, Window};
pub use error::{Error, Result};
pub use growth::{bfs_balls, GenSet};
pub use exactnum::{enumerate_ring_in_rectangle, Interval, QuadNum, Rational, RingSpec, RingVariant};
pub use heis::{ExactPoint, FloatPoint, GroupKind, GroupPoint, IntPoint, Scalar};
