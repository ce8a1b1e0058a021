//! The decision pipeline for every compatible order of one sign pattern.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::forced::forced_sign;
use super::monomials::TiedOrder;
use super::propagate::{boundary_reduction, propagate, PropagationTrace, WallCache};
use super::verdict::{Evidence, Status, Verdict};
use crate::error::{Error, Result};
use crate::patterns::{compatible_orders, Couple, Letter, ModuliOrder, Sign, SignPattern};
use crate::poly::Witness;
use crate::search::{
    canonical_witness, concatenate, mc_search, transport, EpsilonPolicy, SamplerConfig, SearchOutcome,
};
use crate::symmetry::{GroupElement, Involutions};

#[derive(Debug, Clone, PartialEq)]
pub struct DecideConfig {
    /// Master seed and per-couple budget for searches at full degree.
    pub sampler: SamplerConfig,
    /// Budget for searching a parent one degree lower before concatenating.
    pub lift_budget: u64,
    /// Also search on couples already shown non-realizable.
    pub audit: bool,
}

impl Default for DecideConfig {
    fn default() -> Self {
        DecideConfig {
            sampler: SamplerConfig { budget: 1_000_000, ..SamplerConfig::default() },
            lift_budget: 20_000,
            audit: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PatternDecision {
    pub pattern: SignPattern,
    pub table: BTreeMap<ModuliOrder, Verdict>,
    pub propagation: Vec<PropagationTrace>,
    /// Witnesses that came from Monte Carlo search at full degree.
    pub mc_found: usize,
}

impl PatternDecision {
    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.table.values()
    }

    pub fn with_status(&self, status: Status) -> Vec<ModuliOrder> {
        self.table.iter().filter(|(_, v)| v.status == status).map(|(o, _)| o.clone()).collect()
    }
}

/// Runs, per pattern: the rigid-order lemma, the canonical-pattern lemma,
/// forced signs, boundary reduction, witness search (known witnesses and
/// their transports, concatenation, Monte Carlo), then propagation.
#[derive(Debug, Clone, Default)]
pub struct Decider {
    config: DecideConfig,
    known: Vec<Witness>,
}

impl Decider {
    pub fn new(config: DecideConfig) -> Self {
        Decider { config, known: Vec::new() }
    }

    pub fn with_witnesses(mut self, witnesses: impl IntoIterator<Item = Witness>) -> Self {
        self.known.extend(witnesses);
        self
    }

    pub fn config(&self) -> &DecideConfig {
        &self.config
    }

    pub fn decide(&self, couple: &Couple) -> Result<Verdict> {
        couple.ensure_compatible()?;
        let mut decision = self.decide_pattern(&couple.pattern)?;
        Ok(decision.table.remove(&couple.order).expect("compatible order is in the table"))
    }

    pub fn decide_pattern(&self, pattern: &SignPattern) -> Result<PatternDecision> {
        let mut table: BTreeMap<ModuliOrder, Verdict> = compatible_orders(pattern)
            .into_iter()
            .map(|o| (o.clone(), Verdict::unknown(Couple::new(pattern.clone(), o))))
            .collect();

        for (order, verdict) in table.iter_mut() {
            if order.is_rigid() {
                let rigid_pattern = order.rigid_sign_pattern()?;
                if &rigid_pattern != pattern {
                    *verdict = Verdict::non_realizable(verdict.couple.clone(), Evidence::RigidOrder { rigid_pattern });
                }
            }
        }

        let canonical_order = pattern.canonical_order();
        let witness = canonical_witness(pattern)?;
        table.insert(canonical_order.clone(), Verdict::realizable(witness));
        if pattern.is_canonical() {
            for (order, verdict) in table.iter_mut() {
                if verdict.status == Status::Unknown && *order != canonical_order {
                    let evidence = Evidence::CanonicalPattern { canonical_order: canonical_order.clone() };
                    *verdict = Verdict::non_realizable(verdict.couple.clone(), evidence);
                }
            }
        }

        for (order, verdict) in table.iter_mut() {
            if verdict.status != Status::Unknown {
                continue;
            }
            let tied = TiedOrder::strict(order.clone());
            for k in 0..pattern.degree() {
                if let Some(cert) = forced_sign(&tied, k) {
                    if cert.sign != pattern.coefficient_sign(k) {
                        *verdict =
                            Verdict::non_realizable(verdict.couple.clone(), Evidence::ForcedSign(Box::new(cert)));
                        break;
                    }
                }
            }
        }

        let mut walls = WallCache::default();
        boundary_reduction(pattern, &mut table, &mut walls)?;

        let open: Vec<Couple> =
            table.values().filter(|v| v.status == Status::Unknown).map(|v| v.couple.clone()).collect();
        let found: Vec<Option<(Witness, bool)>> =
            open.par_iter().map(|c| self.find_witness(c)).collect::<Result<_>>()?;
        let mut mc_found = 0;
        for (couple, hit) in open.iter().zip(found) {
            if let Some((witness, from_mc)) = hit {
                mc_found += usize::from(from_mc);
                table.insert(couple.order.clone(), Verdict::realizable(witness));
            }
        }

        let mut traces = propagate(&mut table);
        while boundary_reduction(pattern, &mut table, &mut walls)? > 0 {
            traces.extend(propagate(&mut table));
        }

        self.check_exclusivity(&table)?;
        Ok(PatternDecision { pattern: pattern.clone(), table, propagation: traces, mc_found })
    }

    /// Hard failure if a non-realizable couple has a witness.
    fn check_exclusivity(&self, table: &BTreeMap<ModuliOrder, Verdict>) -> Result<()> {
        let denied: Vec<&Couple> =
            table.values().filter(|v| v.status == Status::NonRealizable).map(|v| &v.couple).collect();
        let audited: Vec<Option<Witness>> = denied
            .par_iter()
            .map(|c| -> Result<Option<Witness>> {
                if let Some(w) = self.known_witness(c) {
                    return Ok(Some(w));
                }
                if self.config.audit {
                    let outcome = mc_search(c, &self.config.sampler.for_task(c))?;
                    return Ok(outcome.witness().cloned());
                }
                Ok(None)
            })
            .collect::<Result<_>>()?;
        match denied.iter().zip(audited).find(|(_, w)| w.is_some()) {
            Some((couple, _)) => Err(Error::Contradiction(couple.to_string())),
            None => Ok(()),
        }
    }

    /// A witness and whether full-degree Monte Carlo produced it.
    pub fn find_witness(&self, couple: &Couple) -> Result<Option<(Witness, bool)>> {
        if let Some(w) = self.known_witness(couple) {
            return Ok(Some((w, false)));
        }
        if let Some(w) = self.lift(couple)? {
            return Ok(Some((w, false)));
        }
        let outcome = mc_search(couple, &self.config.sampler.for_task(couple))?;
        Ok(match outcome {
            SearchOutcome::Found { witness, .. } => Some((witness, true)),
            SearchOutcome::Exhausted { .. } => None,
        })
    }

    fn known_witness(&self, couple: &Couple) -> Option<Witness> {
        for w in &self.known {
            for g in GroupElement::ALL {
                if &w.couple().act(g) == couple {
                    return if g == GroupElement::Id { Some(w.clone()) } else { transport(w, g).ok() };
                }
            }
        }
        None
    }

    /// Concatenation from a witness one degree lower, at either end.
    fn lift(&self, couple: &Couple) -> Result<Option<Witness>> {
        if couple.degree() < 2 {
            return Ok(None);
        }
        for g in [GroupElement::Id, GroupElement::Ir] {
            let image = couple.act(g);
            let letters = image.order.letters();
            let parent = Couple::new(image.pattern.truncated()?, ModuliOrder::new(letters[1..].to_vec())?);
            if !parent.is_compatible()? {
                continue;
            }
            let Some(parent_witness) = self.lower_witness(&parent)? else {
                continue;
            };
            let sign = if letters[0] == Letter::P { Sign::Plus } else { Sign::Minus };
            match concatenate(&parent_witness, sign, &EpsilonPolicy::default()) {
                Ok(w) if g == GroupElement::Id => return Ok(Some(w)),
                Ok(w) => return transport(&w, g).map(Some),
                Err(Error::EpsilonUnderflow(_)) => continue,
                Err(e) => return Err(e),
            }
        }
        Ok(None)
    }

    fn lower_witness(&self, parent: &Couple) -> Result<Option<Witness>> {
        if parent.order == parent.pattern.canonical_order() {
            return canonical_witness(&parent.pattern).map(Some);
        }
        if let Some(w) = self.known_witness(parent) {
            return Ok(Some(w));
        }
        let cfg = SamplerConfig { budget: self.config.lift_budget, ..self.config.sampler.for_task(parent) };
        Ok(mc_search(parent, &cfg)?.witness().cloned())
    }
}
