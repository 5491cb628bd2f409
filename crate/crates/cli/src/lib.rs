//! Library surface of the batch front-end: file formats, report rendering,
//! and the reproduction experiments. The `proxygames` binary is a thin
//! argument parser over these.

pub mod gamefile;
pub mod report;
pub mod reproduce;
