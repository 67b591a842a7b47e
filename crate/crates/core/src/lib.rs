//! Points of truncated point schemes of quadratic and cyclic algebras over
//! finite fields.

pub mod exactalg;
pub mod freealg;
pub mod graphs;
pub mod replication;
pub mod scheme;
