//! Dissociation sets of trees and forests: the dissociation number, exact
//! counts and enumeration of maximum dissociation sets, k-path covers and
//! matchings, critical-edge structure, free-tree generation and the
//! extremal families with the most maximum dissociation sets.

pub mod canon;
pub mod cli;
pub mod dissociation;
pub mod error;
pub mod extremal;
pub mod graph;
pub mod kpath;
pub mod structure;
pub mod treegen;
pub mod vertex_set;

pub use canon::{canonical_code, CanonicalCode};
pub use dissociation::{alpha3_count_dp, brute_force_mds, enumerate_mds, DissociationResult};
pub use error::{Error, ParseError, Result};
pub use graph::{parse_edge_list, root_at, Forest, RootedView};
pub use vertex_set::VertexSet;
