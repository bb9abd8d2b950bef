//! Exact-arithmetic toolkit for topological graph drawings with planarly
//! connected crossings.
pub mod certificate;
pub mod checkers;
pub mod construct;
pub mod drawing;
pub mod format;
pub mod geom;
pub mod planar;
pub mod report;
pub mod svg;
