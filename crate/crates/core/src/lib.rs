//! Grid (l1) obstacle representations of graphs on Z^2 and Z^3.
//!
//! A representation places each vertex on a lattice point and marks some points
//! as obstacles; two vertices are adjacent exactly when a shortest lattice path
//! between them avoids every obstacle and every other vertex.

pub mod analysis;
pub mod embed3d;
pub mod error;
pub mod fixtures;
pub mod geom;
pub mod grid;
pub mod par;
pub mod planar;
pub mod reduction;
pub mod strip;
pub mod visibility;

pub use error::{Error, Result};
pub use grid::{Bounds, Graph, LatticePath, Occupancy, Point, Representation};
