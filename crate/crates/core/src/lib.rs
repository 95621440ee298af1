//! Verification, construction, enumeration and exact bias analysis for
//! card-deal announcements.
//!
//! Alice, Bob and Cathy are dealt `a`, `b` and `c` cards from a deck of
//! `v = a + b + c`. Alice publicly announces a set of possible hands (lines)
//! that includes her own; the announcement is *good* when Bob can always
//! identify her hand while Cathy learns none of Alice's or Bob's cards.

pub mod axioms;
pub mod designs;
pub mod enumeration;
pub mod error;
pub mod limits;
pub mod model;
pub mod protocols;
pub mod bias;
pub mod cli;

pub use error::{Error, Result};
pub use limits::WorkLimit;
pub use model::{Announcement, CardSet, Deal, Parameters};
