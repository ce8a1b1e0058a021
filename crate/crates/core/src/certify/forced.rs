//! Forced-sign certificates: an injective dominance matching from the
//! monomials of one sign into the monomials of the other.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::monomials::{coefficient_monomials, dominates, write_support, TiedOrder};
use crate::error::{Error, Result};
use crate::patterns::{Letter, Sign};

/// Why the matched sum is strictly larger than the unmatched one.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Strictness {
    /// Index into `pairs` of a pair whose larger side strictly dominates.
    StrictPair(usize),
    /// A majority monomial left out of the matching.
    Unmatched(Vec<usize>),
}

/// Proof that the coefficient of `x^k` has sign `sign` for every
/// configuration whose moduli respect `order`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ForcedSignCertificate {
    pub order: TiedOrder,
    pub coefficient: usize,
    pub sign: Sign,
    /// `(minority support, dominating majority support)`.
    pub pairs: Vec<(Vec<usize>, Vec<usize>)>,
    pub strictness: Strictness,
}

/// Searches for a certificate for either sign of the coefficient of `x^k`.
pub fn forced_sign(order: &TiedOrder, k: usize) -> Option<ForcedSignCertificate> {
    let monomials = coefficient_monomials(order, k).ok()?;
    let classes = order.classes();
    for sign in [Sign::Plus, Sign::Minus] {
        let major: Vec<&Vec<usize>> = monomials.iter().filter(|m| m.sign == sign).map(|m| &m.support).collect();
        let minor: Vec<&Vec<usize>> = monomials.iter().filter(|m| m.sign != sign).map(|m| &m.support).collect();
        if minor.len() > major.len() || major.is_empty() {
            continue;
        }
        // strict edges first so the matching tends to carry its own strictness
        let adjacency: Vec<Vec<usize>> = minor
            .iter()
            .map(|u| {
                let mut edges: Vec<(bool, usize)> = major
                    .iter()
                    .enumerate()
                    .filter_map(|(j, v)| dominates(v, u, &classes).map(|strict| (!strict, j)))
                    .collect();
                edges.sort_unstable();
                edges.into_iter().map(|(_, j)| j).collect()
            })
            .collect();
        let Some(matched) = max_matching(&adjacency, major.len()) else {
            continue;
        };
        let pairs: Vec<(Vec<usize>, Vec<usize>)> =
            minor.iter().zip(&matched).map(|(u, &j)| ((*u).clone(), major[j].clone())).collect();
        let used: BTreeSet<usize> = matched.iter().copied().collect();
        let strictness = if let Some(j) = (0..major.len()).find(|j| !used.contains(j)) {
            Strictness::Unmatched(major[j].clone())
        } else if let Some(i) = pairs.iter().position(|(u, v)| dominates(v, u, &classes) == Some(true)) {
            Strictness::StrictPair(i)
        } else {
            continue;
        };
        return Some(ForcedSignCertificate { order: order.clone(), coefficient: k, sign, pairs, strictness });
    }
    None
}

/// Augmenting-path matching saturating the left side, if one exists.
fn max_matching(adjacency: &[Vec<usize>], right: usize) -> Option<Vec<usize>> {
    fn augment(u: usize, adj: &[Vec<usize>], seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for &v in &adj[u] {
            if seen[v] {
                continue;
            }
            seen[v] = true;
            if owner[v].is_none_or(|w| augment(w, adj, seen, owner)) {
                owner[v] = Some(u);
                return true;
            }
        }
        false
    }
    let mut owner = vec![None; right];
    for u in 0..adjacency.len() {
        let mut seen = vec![false; right];
        if !augment(u, adjacency, &mut seen, &mut owner) {
            return None;
        }
    }
    let mut matched = vec![0; adjacency.len()];
    for (v, u) in owner.iter().enumerate() {
        if let Some(u) = u {
            matched[*u] = v;
        }
    }
    Some(matched)
}

/// Re-checks a certificate from scratch: the minority side is exactly the
/// monomials of the other sign, the majority side is injective, every pair
/// dominates, and the strictness evidence holds.
pub fn verify_certificate(cert: &ForcedSignCertificate) -> Result<()> {
    let reject = |why: String| Err(Error::InvalidCertificate(why));
    let monomials = coefficient_monomials(&cert.order, cert.coefficient)?;
    let classes = cert.order.classes();
    let minority: BTreeSet<&Vec<usize>> =
        monomials.iter().filter(|m| m.sign != cert.sign).map(|m| &m.support).collect();
    let majority: BTreeSet<&Vec<usize>> =
        monomials.iter().filter(|m| m.sign == cert.sign).map(|m| &m.support).collect();
    let left: BTreeSet<&Vec<usize>> = cert.pairs.iter().map(|(u, _)| u).collect();
    if left.len() != cert.pairs.len() || left != minority {
        return reject("matched monomials are not exactly the minority monomials".into());
    }
    let right: BTreeSet<&Vec<usize>> = cert.pairs.iter().map(|(_, v)| v).collect();
    if right.len() != cert.pairs.len() {
        return reject("matching is not injective".into());
    }
    if let Some(v) = right.iter().find(|v| !majority.contains(*v)) {
        return reject(format!("{v:?} is not a majority monomial"));
    }
    for (u, v) in &cert.pairs {
        if dominates(v, u, &classes).is_none() {
            return reject(format!("{v:?} does not dominate {u:?}"));
        }
    }
    match &cert.strictness {
        Strictness::StrictPair(i) => match cert.pairs.get(*i) {
            Some((u, v)) if dominates(v, u, &classes) == Some(true) => Ok(()),
            _ => reject("claimed strict pair is not strict".into()),
        },
        Strictness::Unmatched(v) if majority.contains(v) && !right.contains(v) => Ok(()),
        Strictness::Unmatched(_) => reject("claimed unmatched monomial is invalid".into()),
    }
}

/// Draws integer moduli respecting the order (equal on ties) and returns
/// signed roots.
pub fn sample_roots<R: Rng>(order: &TiedOrder, rng: &mut R) -> Vec<BigInt> {
    let classes = order.classes();
    let count = classes.last().map_or(0, |c| c + 1);
    let mut moduli: Vec<u64> = Vec::with_capacity(count);
    while moduli.len() < count {
        moduli.clear();
        for _ in 0..count {
            let exponent: f64 = rng.random::<f64>() * 6.0;
            moduli.push(10f64.powf(exponent).round().max(1.0) as u64);
        }
        moduli.sort_unstable();
        moduli.dedup();
    }
    classes
        .iter()
        .zip(order.order().letters())
        .map(|(&c, &l)| {
            let m = BigInt::from(moduli[c]);
            if l == Letter::P {
                m
            } else {
                -m
            }
        })
        .collect()
}

/// Number of sampled configurations on which the certified coefficient
/// does not have the certified sign.
pub fn soundness_violations(cert: &ForcedSignCertificate, samples: u64, seed: u64) -> u64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let monomials = coefficient_monomials(&cert.order, cert.coefficient).expect("valid certificate");
    let mut violations = 0;
    for _ in 0..samples {
        let roots = sample_roots(&cert.order, &mut rng);
        let moduli: Vec<BigInt> = roots.iter().map(|r| r.abs()).collect();
        let value: BigInt = monomials
            .iter()
            .map(|m| {
                let product = m.support.iter().fold(BigInt::one(), |acc, &r| acc * &moduli[r]);
                if m.sign == Sign::Plus {
                    product
                } else {
                    -product
                }
            })
            .sum();
        let ok = match cert.sign {
            Sign::Plus => value.is_positive(),
            Sign::Minus => value.is_negative(),
        };
        if !ok || value.is_zero() {
            violations += 1;
        }
    }
    violations
}

impl fmt::Display for ForcedSignCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = if self.sign == Sign::Plus { ">" } else { "<" };
        writeln!(f, "forced-sign q{} {rel} 0 on {}", self.coefficient, self.order)?;
        for (u, v) in &self.pairs {
            f.write_str("  ")?;
            write_support(f, u)?;
            f.write_str(" <= ")?;
            write_support(f, v)?;
            writeln!(f)?;
        }
        match &self.strictness {
            Strictness::StrictPair(i) => write!(f, "  strict: pair {}", i + 1),
            Strictness::Unmatched(v) => {
                f.write_str("  strict: unmatched ")?;
                write_support(f, v)
            }
        }
    }
}
