//! Tab-separated verdict tables.

use std::io::Write;

use crate::certify::{Status, Verdict};
use crate::error::{Error, Result};
use crate::patterns::{Couple, ModuliOrder, SignPattern};

pub const VERDICT_HEADER: &str = "# hyperorder-verdicts v1";
pub const VERDICT_COLUMNS: &str = "pattern\tcomposition\torder\tuvector\tstatus\tevidence\tcitation";

pub fn write_verdicts<'a, W: Write>(out: &mut W, verdicts: impl IntoIterator<Item = &'a Verdict>) -> Result<()> {
    writeln!(out, "{VERDICT_HEADER}")?;
    writeln!(out, "{VERDICT_COLUMNS}")?;
    for v in verdicts {
        let citation = v.evidence.as_ref().map(|e| e.summary()).unwrap_or_default().replace(['\t', '\n'], " ");
        writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            v.couple.pattern,
            v.couple.pattern.composition(),
            v.couple.order,
            v.couple.order.to_uvector(),
            v.status,
            v.evidence_kind(),
            citation
        )?;
    }
    Ok(())
}

/// One parsed row: couple, status, evidence kind and citation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerdictRow {
    pub couple: Couple,
    pub status: Status,
    pub evidence: String,
    pub citation: String,
}

pub fn read_verdicts(text: &str) -> Result<Vec<VerdictRow>> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, VERDICT_HEADER)) => {}
        _ => return Err(Error::MalformedRecord { line: 1, reason: "missing version header".into() }),
    }
    let mut rows = Vec::new();
    for (i, line) in lines {
        if line == VERDICT_COLUMNS || line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| Error::MalformedRecord { line: i + 1, reason };
        let fields: Vec<&str> = line.split('\t').collect();
        let [pattern, composition, order, uvector, status, evidence, citation] = fields[..] else {
            return Err(bad(format!("expected 7 fields, got {}", fields.len())));
        };
        let pattern: SignPattern = pattern.parse().map_err(|e: Error| bad(e.to_string()))?;
        let order: ModuliOrder = order.parse().map_err(|e: Error| bad(e.to_string()))?;
        if pattern.composition().to_string() != composition || order.to_uvector().to_string() != uvector {
            return Err(bad("redundant columns disagree".into()));
        }
        rows.push(VerdictRow {
            couple: Couple::new(pattern, order),
            status: status.parse().map_err(|e: Error| bad(e.to_string()))?,
            evidence: evidence.to_string(),
            citation: citation.to_string(),
        });
    }
    Ok(rows)
}
