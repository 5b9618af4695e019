//! Exact iterated-CSG kernel.
//!
//! Geometry is stored as BSP trees with integer plane coefficients, embedded
//! in a persistent octree. All predicates run on fixed-width integers over
//! homogeneous 4D coordinates, so booleans, boundary extraction and mesh
//! import are bit-exact and never need epsilon tolerances.
//!
//! Layering, bottom up:
//! - [`wideint`]: 128/192/256-bit signed integers (512-bit scratch).
//! - [`planes`]: integer planes, homogeneous points, the four predicates,
//!   and the precision-budget arithmetic that keeps everything overflow-free.
//! - [`cell`]: convex polyhedra as half-edge meshes with the in-place
//!   plane-cut (edge descent + marching) at the core of everything else.
//! - [`poly`]: plane-based convex polygons and polygon clipping.
//! - [`bsp`]: BSP trees with in/out leaves: boundary extraction, booleans by
//!   merging, polygon-soup import, redundancy removal.
//! - [`octree`]: the persistent octree of bounded-size BSPs and the
//!   iterated-CSG driver.
//! - [`meshio`]: quantized mesh ingestion and export (OFF files).
//! - [`container`]: the OEB1 persistence format.
//! - [`workloads`]: seeded generators for benchmarks and fuzzing.

pub mod bsp;
pub mod cell;
pub mod container;
mod error;
pub mod meshio;
pub mod octree;
pub mod planes;
pub mod poly;
pub mod wideint;
pub mod workloads;

pub use error::Error;
pub use planes::{Side, W128, W192, W256, Width};
