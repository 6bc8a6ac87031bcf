//! Angular trees, angle and edge labelings, and L-contact representations of
//! plane Laman graphs.
//!
//! The pipeline runs in order: [`henneberg::decompose`] finds a planar
//! Henneberg sequence, [`angular::compute_angular_tree`] follows it to build
//! an angular tree, [`labeling`] turns the tree into angle and edge
//! labelings, and [`lcontact`] assigns vertex types, inequality DAGs, grid
//! coordinates and finally the L-shapes. [`pipeline::run`] chains all of it.

pub mod angular;
pub mod graph;
pub mod henneberg;
pub mod labeling;
pub mod laman;
pub mod lcontact;
pub mod pipeline;

pub use graph::{GraphError, GraphJson, PlaneGraph};
pub use laman::{validate_laman, LamanVerdict};
