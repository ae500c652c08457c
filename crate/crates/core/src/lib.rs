//! A laboratory for small finite rings: structure-constant arithmetic, Peirce
//! decompositions, classification of not-necessarily-additive self-maps,
//! annihilator hypothesis checks and exhaustive search for reverse derivable
//! maps.

pub mod catalog;
pub mod cli;
pub mod conditions;
pub mod dsl;
pub mod error;
pub mod maps;
pub mod peirce;
pub mod report;
pub mod ring;
pub mod search;

pub use catalog::construct_catalog_ring;
pub use conditions::{
    check_conditions, witness_revalidate, ConditionId, ConditionReport, ConditionSet, Mode,
};
pub use dsl::{parse_map_expr, MapExpr};
pub use error::{Error, Result};
pub use maps::{MapClassification, MapSource, MapTable};
pub use peirce::{find_idempotents, Component, Membership, PeirceDecomposition};
pub use report::Check;
pub use ring::{Element, Limits, Ring, RingSpec};
pub use search::{
    empirical_theorem_report, enumerate_reverse_derivable_maps, find_nonadditive_reverse_derivable,
    SearchConfig, SearchMode, SearchResult,
};
