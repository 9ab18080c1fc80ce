use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

/// How a reported bound was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Exhaustive subset search.
    ExactOracle,
    /// Disjoint open twin classes with disjoint closed neighborhoods.
    Lemma2Lower,
    /// Every twin class must keep all but one member in a resolving set.
    TwinLower,
    /// `max(dim, γ_P) ≤ η_P ≤ dim + γ_P`.
    SandwichLower,
    /// A caller-supplied construction that was verified.
    CanonicalCertificate,
    Greedy,
    /// Bounds that need no search, such as one seed per component.
    Trivial,
}

impl Method {
    pub fn tag(self) -> &'static str {
        match self {
            Method::ExactOracle => "exact-oracle",
            Method::Lemma2Lower => "lemma2-lower",
            Method::TwinLower => "twin-lower",
            Method::SandwichLower => "sandwich-lower",
            Method::CanonicalCertificate => "canonical-certificate",
            Method::Greedy => "greedy",
            Method::Trivial => "trivial",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub type Methods = BTreeSet<Method>;
