#![no_std]
//! Reviewer-interaction networks and citation-impact regression.
//!
//! Everything here is pure computation over in-memory data; file formats and
//! the command line live in the `revnet` crate.

extern crate alloc;
#[cfg(test)]
extern crate std;

pub mod analysis;
pub mod centrality;
pub mod corpus;
pub mod features;
pub mod graph;
pub mod stats;
pub mod svr;
pub mod synth;
pub mod text;
