//! Moving between chambers of one sign pattern.
//!
//! Polynomials with a fixed sign pattern form a connected set, and a generic
//! path through it crosses walls between neighboring orders one at a time.
//! Hence the realizable orders are connected through non-empty walls.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use super::verdict::{Evidence, Status, Verdict};
use super::walls::{wall_certificate, WallCertificate};
use crate::error::Result;
use crate::patterns::{ModuliOrder, SignPattern};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PropagationTrace {
    pub order: ModuliOrder,
    pub neighbors: Vec<ModuliOrder>,
}

impl fmt::Display for PropagationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.neighbors.iter().map(|o| o.to_uvector().to_string()).collect();
        write!(f, "{}: neighbors {} all non-realizable", self.order.to_uvector(), list.join(", "))
    }
}

/// Marks every unknown order whose neighbors are all non-realizable, until
/// nothing changes. Does nothing unless some order is realizable.
pub fn propagate(table: &mut BTreeMap<ModuliOrder, Verdict>) -> Vec<PropagationTrace> {
    let mut traces = Vec::new();
    if !table.values().any(|v| v.status == Status::Realizable) {
        return traces;
    }
    loop {
        let next = table.iter().find_map(|(order, v)| {
            if v.status != Status::Unknown {
                return None;
            }
            let neighbors = order.neighbors();
            let closed = neighbors.iter().all(|n| table.get(n).is_some_and(|v| v.status == Status::NonRealizable));
            closed.then(|| PropagationTrace { order: order.clone(), neighbors })
        });
        let Some(trace) = next else { break };
        let verdict = table.get_mut(&trace.order).expect("present");
        *verdict = Verdict::non_realizable(verdict.couple.clone(), Evidence::Propagation(trace.clone()));
        traces.push(trace);
    }
    traces
}

/// A set of orders sealed off from every realizable order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoundaryTrace {
    pub pattern: SignPattern,
    pub component: Vec<ModuliOrder>,
    /// Empty walls between the component and the rest of the live orders.
    pub walls: Vec<WallCertificate>,
}

impl fmt::Display for BoundaryTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let list: Vec<String> = self.component.iter().map(|o| o.to_uvector().to_string()).collect();
        writeln!(f, "boundary: component {{{}}} for {} has no realizable order", list.join(", "), self.pattern)?;
        for w in &self.walls {
            writeln!(f, "  {w}")?;
        }
        Ok(())
    }
}

/// Walls of one pattern, certified on demand and cached.
#[derive(Debug, Default)]
pub struct WallCache {
    certs: BTreeMap<(ModuliOrder, usize), Option<WallCertificate>>,
}

impl WallCache {
    pub fn get(
        &mut self,
        pattern: &SignPattern,
        a: &ModuliOrder,
        b: &ModuliOrder,
        tie: usize,
    ) -> Result<Option<&WallCertificate>> {
        let (lower, upper) = if a < b { (a, b) } else { (b, a) };
        let key = (lower.clone(), tie);
        if !self.certs.contains_key(&key) {
            let cert = wall_certificate(pattern, lower, upper, tie)?;
            self.certs.insert(key.clone(), cert);
        }
        Ok(self.certs[&key].as_ref())
    }
}

/// Connected components of live orders joined by walls not known to be
/// empty; unknown orders in components without a realizable order become
/// non-realizable. Returns how many verdicts changed.
pub fn boundary_reduction(
    pattern: &SignPattern,
    table: &mut BTreeMap<ModuliOrder, Verdict>,
    cache: &mut WallCache,
) -> Result<usize> {
    if !table.values().any(|v| v.status == Status::Realizable) {
        return Ok(0);
    }
    let live: BTreeSet<ModuliOrder> =
        table.iter().filter(|(_, v)| v.status != Status::NonRealizable).map(|(o, _)| o.clone()).collect();
    let mut seen: BTreeSet<ModuliOrder> = BTreeSet::new();
    let mut changed = 0;
    for start in &live {
        if seen.contains(start) {
            continue;
        }
        let mut component = Vec::new();
        let mut cut = Vec::new();
        let mut queue = VecDeque::from([start.clone()]);
        seen.insert(start.clone());
        while let Some(order) = queue.pop_front() {
            for (tie, next) in order.neighbors_with_position() {
                if !live.contains(&next) {
                    continue;
                }
                match cache.get(pattern, &order, &next, tie)? {
                    Some(cert) => {
                        if !cut.contains(cert) {
                            cut.push(cert.clone());
                        }
                    }
                    None => {
                        if seen.insert(next.clone()) {
                            queue.push_back(next);
                        }
                    }
                }
            }
            component.push(order);
        }
        if component.iter().any(|o| table[o].status == Status::Realizable) {
            continue;
        }
        component.sort();
        let trace = BoundaryTrace { pattern: pattern.clone(), component: component.clone(), walls: cut };
        for order in &component {
            let verdict = table.get_mut(order).expect("present");
            if verdict.status == Status::Unknown {
                *verdict = Verdict::non_realizable(verdict.couple.clone(), Evidence::Boundary(Box::new(trace.clone())));
                changed += 1;
            }
        }
    }
    Ok(changed)
}
