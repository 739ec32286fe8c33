//! Line segment covering over exact planar arrangements.

pub mod arrangement;
pub mod cover;
pub mod gadget;
pub mod generate;
pub mod geom;
pub mod io;
pub mod pipeline;
pub mod solvers;
pub mod svg;
pub mod verify;
