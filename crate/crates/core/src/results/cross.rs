//! Runs the decision pipeline over every degree-six couple and compares it
//! with the builtin table.

use std::collections::BTreeMap;
use std::fmt;

use rayon::prelude::*;

use super::literature::literature_witnesses;
use super::table::builtin_table;
use crate::certify::{DecideConfig, Decider, PatternDecision, Status, Verdict};
use crate::error::Result;
use crate::patterns::{enumerate_patterns, Couple};

#[derive(Debug, Clone, PartialEq)]
pub struct CrossReport {
    pub couples: usize,
    pub agreements: usize,
    /// Pipeline left the couple open; the table settles it.
    pub open: Vec<Couple>,
    /// Pipeline and table disagree on a settled couple.
    pub contradictions: Vec<Couple>,
    pub by_evidence: BTreeMap<&'static str, usize>,
    /// Couples whose evidence rests on each cited lemma.
    pub lemma_dependencies: BTreeMap<&'static str, usize>,
    pub mc_found: usize,
    pub verdicts: Vec<Verdict>,
}

impl CrossReport {
    pub fn is_consistent(&self) -> bool {
        self.contradictions.is_empty()
    }
}

/// Degree-six sweep. A witness found for a couple the pipeline itself
/// certified non-realizable is returned as an error.
pub fn cross_validate(config: DecideConfig) -> Result<CrossReport> {
    let table = builtin_table(6)?;
    let decider = Decider::new(config).with_witnesses(literature_witnesses()?);
    let mut patterns = Vec::new();
    for changes in 0..=6 {
        patterns.extend(enumerate_patterns(6, changes)?);
    }
    let decisions: Vec<PatternDecision> =
        patterns.par_iter().map(|p| decider.decide_pattern(p)).collect::<Result<_>>()?;
    let mut report = CrossReport {
        couples: 0,
        agreements: 0,
        open: Vec::new(),
        contradictions: Vec::new(),
        by_evidence: BTreeMap::new(),
        lemma_dependencies: BTreeMap::new(),
        mc_found: 0,
        verdicts: Vec::new(),
    };
    for decision in decisions {
        report.mc_found += decision.mc_found;
        for verdict in decision.table.into_values() {
            report.couples += 1;
            let expected = table.status(&verdict.couple);
            match (verdict.status, expected) {
                (a, b) if a == b => report.agreements += 1,
                (Status::Unknown, _) => report.open.push(verdict.couple.clone()),
                _ => report.contradictions.push(verdict.couple.clone()),
            }
            *report.by_evidence.entry(verdict.evidence_kind()).or_default() += 1;
            if let Some(e) = &verdict.evidence {
                for lemma in e.encoded_lemmas() {
                    *report.lemma_dependencies.entry(lemma).or_default() += 1;
                }
            }
            report.verdicts.push(verdict);
        }
    }
    Ok(report)
}

impl fmt::Display for CrossReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "couples {}", self.couples)?;
        writeln!(f, "agreements {}", self.agreements)?;
        writeln!(f, "open {}", self.open.len())?;
        writeln!(f, "contradictions {}", self.contradictions.len())?;
        for c in &self.contradictions {
            writeln!(f, "  {c}")?;
        }
        writeln!(f, "monte carlo witnesses {}", self.mc_found)?;
        for (kind, n) in &self.by_evidence {
            writeln!(f, "evidence {kind} {n}")?;
        }
        for (lemma, n) in &self.lemma_dependencies {
            writeln!(f, "depends on {lemma} {n}")?;
        }
        Ok(())
    }
}
