use std::fmt;
use std::str::FromStr;

use super::forced::ForcedSignCertificate;
use super::propagate::{BoundaryTrace, PropagationTrace};
use crate::error::{Error, Result};
use crate::patterns::{Couple, ModuliOrder, SignPattern};
use crate::poly::Witness;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Realizable,
    NonRealizable,
    Unknown,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Realizable => "realizable",
            Status::NonRealizable => "non-realizable",
            Status::Unknown => "unknown",
        })
    }
}

impl FromStr for Status {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "realizable" => Ok(Status::Realizable),
            "non-realizable" => Ok(Status::NonRealizable),
            "unknown" => Ok(Status::Unknown),
            other => Err(Error::OutOfRange(format!("unknown status `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Evidence {
    Witness(Box<Witness>),
    /// The order is rigid and only realizes `rigid_pattern`.
    RigidOrder {
        rigid_pattern: SignPattern,
    },
    /// The pattern is canonical and only realizes `canonical_order`.
    CanonicalPattern {
        canonical_order: ModuliOrder,
    },
    ForcedSign(Box<ForcedSignCertificate>),
    Boundary(Box<BoundaryTrace>),
    Propagation(PropagationTrace),
    /// A literature result stated without a machine check.
    Citation(String),
}

impl Evidence {
    pub fn kind(&self) -> &'static str {
        match self {
            Evidence::Witness(_) => "witness",
            Evidence::RigidOrder { .. } => "rigid-order",
            Evidence::CanonicalPattern { .. } => "canonical-pattern",
            Evidence::ForcedSign(_) => "forced-sign",
            Evidence::Boundary(_) => "boundary",
            Evidence::Propagation(_) => "propagation",
            Evidence::Citation(_) => "citation",
        }
    }

    /// Cited lemmas this evidence depends on.
    pub fn encoded_lemmas(&self) -> Vec<&'static str> {
        match self {
            Evidence::RigidOrder { .. } => vec!["rigid-order"],
            Evidence::CanonicalPattern { .. } => vec!["canonical-pattern"],
            Evidence::Boundary(trace) => {
                let mut out: Vec<&'static str> = trace.walls.iter().flat_map(|w| w.encoded_lemmas()).collect();
                out.sort_unstable();
                out.dedup();
                out
            }
            Evidence::Citation(_) => vec!["citation"],
            _ => Vec::new(),
        }
    }

    /// One line, no tabs.
    pub fn summary(&self) -> String {
        match self {
            Evidence::Witness(w) => format!("roots {} ({})", w.roots(), w.provenance()),
            Evidence::RigidOrder { rigid_pattern } => format!("rigid order, realizes only {rigid_pattern}"),
            Evidence::CanonicalPattern { canonical_order } => {
                format!("canonical pattern, realizes only {canonical_order}")
            }
            Evidence::ForcedSign(c) => {
                let rel = if c.sign == crate::patterns::Sign::Plus { ">" } else { "<" };
                format!("q{} {rel} 0 on {}", c.coefficient, c.order)
            }
            Evidence::Boundary(trace) => format!(
                "component {{{}}} cut off by {} empty walls",
                trace.component.iter().map(|o| o.to_uvector().to_string()).collect::<Vec<_>>().join(" "),
                trace.walls.len()
            ),
            Evidence::Propagation(trace) => trace.to_string(),
            Evidence::Citation(c) => c.clone(),
        }
    }
}

impl fmt::Display for Evidence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Evidence::ForcedSign(c) => write!(f, "{c}"),
            Evidence::Boundary(trace) => write!(f, "{trace}"),
            other => write!(f, "{}: {}", other.kind(), other.summary()),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Verdict {
    pub couple: Couple,
    pub status: Status,
    pub evidence: Option<Evidence>,
}

impl Verdict {
    pub fn unknown(couple: Couple) -> Self {
        Verdict { couple, status: Status::Unknown, evidence: None }
    }

    pub fn realizable(witness: Witness) -> Self {
        Verdict {
            couple: witness.couple().clone(),
            status: Status::Realizable,
            evidence: Some(Evidence::Witness(Box::new(witness))),
        }
    }

    pub fn non_realizable(couple: Couple, evidence: Evidence) -> Self {
        Verdict { couple, status: Status::NonRealizable, evidence: Some(evidence) }
    }

    pub fn cited(couple: Couple, status: Status, citation: impl Into<String>) -> Self {
        Verdict { couple, status, evidence: Some(Evidence::Citation(citation.into())) }
    }

    pub fn witness(&self) -> Option<&Witness> {
        match &self.evidence {
            Some(Evidence::Witness(w)) => Some(w),
            _ => None,
        }
    }

    pub fn evidence_kind(&self) -> &'static str {
        self.evidence.as_ref().map_or("none", |e| e.kind())
    }
}
