//! Shared report fragments. Everything here serializes deterministically: no
//! hash maps, no timestamps.

use serde::Serialize;

use crate::ring::Element;

/// Outcome of an exhaustive check; `witness` is present iff `pass` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Check {
    pub pass: bool,
    pub witness: Option<Vec<Element>>,
}

impl Check {
    pub fn passed() -> Self {
        Check {
            pass: true,
            witness: None,
        }
    }

    pub fn failed(witness: Vec<Element>) -> Self {
        Check {
            pass: false,
            witness: Some(witness),
        }
    }

    pub fn from_witness(witness: Option<Vec<Element>>) -> Self {
        match witness {
            Some(w) => Check::failed(w),
            None => Check::passed(),
        }
    }
}

pub fn to_json<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("reports serialize")
}
