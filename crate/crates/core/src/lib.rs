//! Construction and uniform sampling of labeled simple graphs and digraphs
//! with a prescribed degree sequence.
//!
//! * [`realize`] decides graphicality and builds a first realization.
//! * [`moves`] and [`chain`] implement the swap moves and Markov chains.
//! * [`arcswap`] finds induced cycle sets, which split the 2-swap-only
//!   directed chain into several components.
//! * [`statespace`] enumerates small state spaces and checks their structure.

pub mod arcswap;
pub mod chain;
pub mod error;
pub mod generate;
pub mod graph;
pub mod io;
pub mod moves;
pub mod realize;
pub mod stats;
pub mod statespace;
pub mod symdiff;

pub use error::{Error, Result};
pub use graph::{AnyGraph, AnySequence, CanonicalKey, DegreeSequence, DiDegreeSequence, Digraph, Graph, Realization};
