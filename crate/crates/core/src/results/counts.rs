//! Realizable couples per stratum and the ratio of realizable to all couples.

use std::fmt;

use num_rational::Ratio;

use super::table::builtin_table;
use crate::certify::Status;
use crate::error::{Error, Result};
use crate::patterns::{compatible_orders, Couple, SignPattern};
use crate::symmetry::orbits;

/// Ratios for degrees one to five, taken from the literature rather than computed.
pub const LITERATURE_RATIOS: [(u64, u64); 5] = [(1, 1), (2, 3), (3, 5), (3, 7), (47, 126)];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumCount {
    pub changes: usize,
    /// `None` when the stratum is not tabulated.
    pub realizable: Option<usize>,
    pub total: usize,
}

/// One orbit of three-change patterns: realizable orders per pattern times orbit size.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitTerm {
    pub representative: SignPattern,
    pub realizable_per_pattern: usize,
    pub orbit_size: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub degree: usize,
    pub strata: Vec<StratumCount>,
    pub ratio: Ratio<u64>,
    /// Whether `ratio` was computed here or quoted.
    pub computed: bool,
    /// `r(1), …, r(degree)`.
    pub sequence: Vec<Ratio<u64>>,
    /// `r(k+1) / r(k)` for consecutive entries of `sequence`.
    pub successive: Vec<Ratio<u64>>,
    /// Middle-stratum breakdown by orbit (degree six only).
    pub orbit_terms: Vec<OrbitTerm>,
}

impl CountReport {
    pub fn realizable(&self, changes: usize) -> Option<usize> {
        self.strata.iter().find(|s| s.changes == changes).and_then(|s| s.realizable)
    }

    pub fn total(&self, changes: usize) -> usize {
        self.strata.iter().find(|s| s.changes == changes).map_or(0, |s| s.total)
    }
}

fn binomial(n: usize, k: usize) -> usize {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn literature(d: usize) -> Ratio<u64> {
    let (n, m) = LITERATURE_RATIOS[d - 1];
    Ratio::new(n, m)
}

pub fn counts_and_ratio(degree: usize) -> Result<CountReport> {
    if degree == 0 || degree > 6 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let mut sequence: Vec<Ratio<u64>> = (1..degree.min(6)).map(literature).collect();
    let (strata, ratio, computed, orbit_terms) = if degree == 6 {
        let table = builtin_table(6)?;
        let strata: Vec<StratumCount> = (0..=6)
            .map(|c| {
                let (r, t) = table.count(c);
                StratumCount { changes: c, realizable: Some(r), total: t }
            })
            .collect();
        let realizable: usize = strata.iter().filter_map(|s| s.realizable).sum();
        let total: usize = strata.iter().map(|s| s.total).sum();
        let terms = orbits(6, 3)?
            .into_iter()
            .map(|orbit| {
                let rep = orbit.representative().clone();
                let per = compatible_orders(&rep)
                    .into_iter()
                    .filter(|o| table.status(&Couple::new(rep.clone(), o.clone())) == Status::Realizable)
                    .count();
                OrbitTerm { representative: rep, realizable_per_pattern: per, orbit_size: orbit.len() }
            })
            .collect();
        (strata, Ratio::new(realizable as u64, total as u64), true, terms)
    } else {
        let strata = (0..=degree)
            .map(|c| StratumCount { changes: c, realizable: None, total: binomial(degree, c).pow(2) })
            .collect();
        (strata, literature(degree), false, Vec::new())
    };
    sequence.push(ratio);
    let successive = sequence.windows(2).map(|w| w[1] / w[0]).collect();
    Ok(CountReport { degree, strata, ratio, computed, sequence, successive, orbit_terms })
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "degree {}", self.degree)?;
        writeln!(f, "changes\trealizable\ttotal")?;
        for s in &self.strata {
            let r = s.realizable.map_or("-".to_string(), |r| r.to_string());
            writeln!(f, "{}\t{r}\t{}", s.changes, s.total)?;
        }
        if !self.orbit_terms.is_empty() {
            let terms: Vec<String> =
                self.orbit_terms.iter().map(|t| format!("{}x{}", t.realizable_per_pattern, t.orbit_size)).collect();
            let sum: usize = self.orbit_terms.iter().map(|t| t.realizable_per_pattern * t.orbit_size).sum();
            writeln!(f, "middle stratum by orbit: {} = {sum}", terms.join(" + "))?;
        }
        let source = if self.computed { "computed" } else { "literature" };
        writeln!(f, "r({}) = {} ({source})", self.degree, self.ratio)?;
        let seq: Vec<String> = self.sequence.iter().map(|r| r.to_string()).collect();
        writeln!(f, "r(1..{}) = {}", self.degree, seq.join(", "))?;
        let succ: Vec<String> = self.successive.iter().map(|r| r.to_string()).collect();
        write!(f, "r(d+1)/r(d) = {}", succ.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_six_counts() {
        let r = counts_and_ratio(6).unwrap();
        assert_eq!(r.realizable(3), Some(90));
        assert_eq!(r.total(3), 400);
        assert_eq!(r.total(2) + r.total(4), 450);
        assert_eq!((r.realizable(1), r.total(1)), (Some(18), 36));
        assert_eq!((r.realizable(5), r.total(5)), (Some(18), 36));
        assert_eq!(r.ratio, Ratio::new(19, 66));
        assert_eq!(r.successive.last(), Some(&Ratio::new(399, 517)));
        let sum: usize = r.orbit_terms.iter().map(|t| t.realizable_per_pattern * t.orbit_size).sum();
        assert_eq!(sum, 90);
    }

    #[test]
    fn lower_degrees_are_quoted() {
        let r = counts_and_ratio(5).unwrap();
        assert!(!r.computed);
        assert_eq!(r.ratio, Ratio::new(47, 126));
        assert_eq!(r.successive, vec![Ratio::new(2, 3), Ratio::new(9, 10), Ratio::new(5, 7), Ratio::new(47, 54)]);
    }
}
