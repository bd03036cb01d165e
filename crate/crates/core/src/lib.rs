//! Qudit state-vector simulation of teleportation and superdense coding over
//! W-class and GHZ-class entangled resources.
//!
//! * [`qstate`]: registers, states, unitaries, reduced states, Schmidt forms.
//! * [`catalog`]: closed-form constructors for the named states and operators.
//! * [`protocols`]: dense-coding and teleportation protocols, their engines and
//!   the resource transformations that carry one protocol to another.
//! * [`analysis`]: bipartition scans, the balanced-cut result for symmetric W
//!   states, the GHZ-convertibility classifier and the 3-tangle.
//! * [`io`]: JSON state documents, transcripts and scan CSV.

pub mod analysis;
pub mod catalog;
pub mod error;
pub mod io;
pub mod protocols;
pub mod qstate;

pub use error::{Error, Result};
