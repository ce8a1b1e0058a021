//! Line-oriented witness store.
//!
//! ```text
//! # hyperorder-witness-store v1
//! <pattern>\t<order>\t<roots>\t<coefficients>\t<provenance>\t<seed or ->
//! ```
//!
//! Roots are exact decimals or fractions, coefficients are fractions,
//! leading first. Every record is re-validated on load; a later record
//! replaces an earlier one with the same couple and provenance kind.

use std::collections::BTreeMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::path::Path;
use std::sync::Mutex;

use crate::error::{Error, Result};
use crate::patterns::Couple;
use crate::poly::{format_exact, format_fraction, parse_rational, Provenance, RootConfiguration, Witness};

pub const STORE_HEADER: &str = "# hyperorder-witness-store v1";

type Key = (Couple, &'static str);

#[derive(Debug, Default)]
pub struct WitnessStore {
    records: Mutex<BTreeMap<Key, Witness>>,
}

impl WitnessStore {
    pub fn new() -> Self {
        WitnessStore::default()
    }

    /// Validates and inserts, replacing any record with the same key.
    pub fn insert(&self, witness: Witness) -> Result<()> {
        witness.validate()?;
        let key = (witness.couple().clone(), witness.provenance().kind());
        self.records.lock().expect("store lock").insert(key, witness);
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.records.lock().expect("store lock").len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Snapshot ordered by couple, then provenance kind.
    pub fn witnesses(&self) -> Vec<Witness> {
        self.records.lock().expect("store lock").values().cloned().collect()
    }

    pub fn get(&self, couple: &Couple) -> Vec<Witness> {
        let records = self.records.lock().expect("store lock");
        records.iter().filter(|((c, _), _)| c == couple).map(|(_, w)| w.clone()).collect()
    }

    pub fn parse(text: &str) -> Result<Self> {
        let store = WitnessStore::new();
        let mut lines = text.lines().enumerate();
        match lines.next() {
            Some((_, first)) if first.trim_end() == STORE_HEADER => {}
            _ => return Err(Error::MalformedRecord { line: 1, reason: "missing version header".into() }),
        }
        for (i, line) in lines {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            store.insert(
                parse_record(line).map_err(|e| Error::MalformedRecord { line: i + 1, reason: e.to_string() })?,
            )?;
        }
        Ok(store)
    }

    pub fn load(path: &Path) -> Result<Self> {
        WitnessStore::parse(&fs::read_to_string(path)?)
    }

    /// Writes the header and every record, replacing the file.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut text = String::from(STORE_HEADER);
        text.push('\n');
        for w in self.witnesses() {
            text.push_str(&format_record(&w));
            text.push('\n');
        }
        let tmp = path.with_extension("tmp");
        fs::write(&tmp, text)?;
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

/// Appends one record, writing the header first if the file is new or empty.
pub fn append_record(path: &Path, witness: &Witness) -> Result<()> {
    witness.validate()?;
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    if file.metadata()?.len() == 0 {
        writeln!(file, "{STORE_HEADER}")?;
    }
    writeln!(file, "{}", format_record(witness))?;
    Ok(())
}

pub fn format_record(w: &Witness) -> String {
    let roots: Vec<String> = w.roots().roots().iter().map(format_exact).collect();
    let coeffs: Vec<String> = w.polynomial().descending().iter().map(format_fraction).collect();
    let seed = w.provenance().seed().map_or("-".to_string(), |s| s.to_string());
    format!(
        "{}\t{}\t{}\t{}\t{}\t{seed}",
        w.couple().pattern,
        w.couple().order,
        roots.join(","),
        coeffs.join(","),
        w.provenance()
    )
}

pub fn parse_record(line: &str) -> Result<Witness> {
    let fields: Vec<&str> = line.split('\t').collect();
    let [pattern, order, roots, coeffs, provenance, seed] = fields[..] else {
        return Err(Error::InvalidWitness(format!("expected 6 fields, got {}", fields.len())));
    };
    let couple = Couple::new(pattern.parse()?, order.parse()?);
    let roots: Vec<_> = roots.split(',').map(parse_rational).collect::<Result<_>>()?;
    let provenance: Provenance = provenance.parse()?;
    let witness = Witness::for_couple(&couple, RootConfiguration::new(roots)?, provenance)?;
    let stored: Vec<_> = coeffs.split(',').map(parse_rational).collect::<Result<_>>()?;
    if stored != witness.polynomial().descending() {
        return Err(Error::InvalidWitness("stored coefficients differ from the expansion".into()));
    }
    let expected_seed = witness.provenance().seed().map_or("-".to_string(), |s| s.to_string());
    if seed != expected_seed {
        return Err(Error::InvalidWitness(format!("seed field `{seed}` disagrees with provenance")));
    }
    Ok(witness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::{canonical_witness, mc_search, SamplerConfig};

    fn sample() -> Witness {
        let rc = RootConfiguration::parse(&["-1.49", "1.87", "5.77", "-5.96", "7.58", "-8.07"]).unwrap();
        Witness::new(rc, Provenance::Literature { label: "2,1,2,2/NPPNPN".into() }).unwrap()
    }

    #[test]
    fn round_trip_through_a_file() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.tsv");
        let store = WitnessStore::new();
        store.insert(sample()).unwrap();
        store.insert(canonical_witness(&"2,2,2,1".parse().unwrap()).unwrap()).unwrap();
        let target: Couple = Couple::new("2,2,2,1".parse().unwrap(), "PNPNPN".parse().unwrap());
        let found = mc_search(&target, &SamplerConfig { seed: 4, budget: 10, ..Default::default() }).unwrap();
        store.insert(found.witness().unwrap().clone()).unwrap();
        store.save(&path).unwrap();
        let back = WitnessStore::load(&path).unwrap();
        assert_eq!(back.witnesses(), store.witnesses());
    }

    #[test]
    fn last_write_wins_per_key() {
        let store = WitnessStore::new();
        store.insert(sample()).unwrap();
        let rc = RootConfiguration::parse(&["-1.5", "1.87", "5.77", "-5.96", "7.58", "-8.07"]).unwrap();
        let newer = Witness::new(rc, Provenance::Literature { label: "other".into() }).unwrap();
        store.insert(newer.clone()).unwrap();
        assert_eq!(store.witnesses(), vec![newer]);
    }

    #[test]
    fn tampered_records_are_rejected() {
        let line = format_record(&sample());
        assert!(parse_record(&line).is_ok());
        assert!(parse_record(&line.replacen("-1.49", "-1.48", 1)).is_err());
        assert!(parse_record(&line.replacen("NPPNPN", "NPPNNP", 1)).is_err());
        assert!(WitnessStore::parse(&line).is_err());
    }

    #[test]
    fn appends_create_the_header() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("w.tsv");
        append_record(&path, &sample()).unwrap();
        append_record(&path, &sample()).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.starts_with(STORE_HEADER));
        assert_eq!(WitnessStore::load(&path).unwrap().len(), 1);
    }
}
