//! File formats, the cause-effect corpus harness and p-value curves on top of
//! [`latentiv_core`].

pub mod corpus;
pub mod io;
pub mod pcurve;
pub mod report;

pub use latentiv_core as core;
