//! Exact spun-normal surface computations for ideal triangulations: vertex
//! and fundamental surfaces, boundary slopes, the vertex-surface
//! incompressibility criteria and first-order systems at ideal points.

pub mod cones;
pub mod criteria;
pub mod error;
pub mod first_order;
pub mod gluing;
pub mod linalg;
pub mod two_fusion;

pub use cones::{RelativeConstraint, SurfaceVector};
pub use criteria::{BoundaryClass, CriterionReport, Slope, Verdict};
pub use error::{Error, Result};
pub use gluing::{GluingSystem, QuadType};
pub use linalg::IntMatrix;
