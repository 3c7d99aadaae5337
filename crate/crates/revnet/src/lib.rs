//! File formats, run manifests and command implementations on top of
//! `revnet-core`.

pub mod commands;
pub mod events;
pub mod fsio;
pub mod lexicon;
pub mod manifest;
pub mod model;
pub mod tables;

pub use revnet_core as core;
