//! Tools for complete interconnection networks (CINs): networks whose
//! switch graph is the complete graph `K_N`.
//!
//! The crate models a CIN by its *port-pairing matrix*, which records the
//! peer of every network port. Different pairings wire the same topology in
//! very different ways, so the crate provides:
//!
//! * [`pairing`]: the three pairing constructions (`Swap`, `Circle`,
//!   `Xor`), eager validation, and 1-factor extraction;
//! * [`routing`]: table-free minimal routing for each construction, a
//!   matrix-inversion routing oracle, and the step-wise all-to-all
//!   exchange schedule;
//! * [`layout`]: wire-length and crossing accounting for switches
//!   arranged on a line;
//! * [`render`]: deterministic SVG drawings of a pairing;
//! * [`composite`]: multi-dimensional HyperX fabrics built from one CIN
//!   per dimension, with dimension-ordered routing, channel-dependency
//!   analysis and cabling reports;
//! * [`topofile`]: a JSON interchange format for pairings.

pub mod composite;
mod error;
pub mod layout;
pub mod pairing;
pub mod render;
pub mod routing;
pub mod topofile;

pub use error::{Error, Result, ValidationError};
pub use pairing::{
    endpoint_capacity, link_count, radix_required, CinKind, Factorization, Link, OneFactor,
    PairingMatrix, PortId, PortRef, SwitchId,
};
pub use routing::{EndpointAddress, ExchangeSchedule, RoutingDecision};
