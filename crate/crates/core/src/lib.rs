//! Invariants of group actions on semimatroids, simplicial posets and
//! central toric arrangements.

pub mod intlat;
pub mod poly;
pub mod action;
pub mod arrangement;
pub mod corpus;
pub mod facering;
pub mod gsemimatroid;
pub mod homology;
pub mod poset;
