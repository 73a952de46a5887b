//! Exact scans of pseudo-Anosov stretch factors over fibered cones.
//!
//! Given a Teichmüller polynomial and its fibered cone, the library
//! specializes the polynomial at primitive integral classes, factors the
//! specializations over the integers, locates the stretch factor and its
//! minimal polynomial, decides whether the trace field is totally real,
//! and computes certified Mahler measures.

pub mod builtins;
pub mod conelattice;
pub mod config;
pub mod error;
pub mod factorint;
pub mod groupring;
pub mod pipeline;
pub mod reportio;
pub mod rootbox;
pub mod unipoly;

mod serde_num;

pub use error::{Error, Result};
pub(crate) use serde_num::{bigint as serde_bigint, rational as serde_rational};
