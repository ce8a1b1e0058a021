//! Walls between neighboring chambers.
//!
//! On the wall where a positive and a negative root share the modulus `μ`,
//! rescaling to `μ = 1` writes `Q = (x² - 1) R`, so `q_j = a_{j-2} - a_j`.
//! A wall is empty when no `R` fits both the sign pattern of `Q` and the
//! order of the remaining moduli.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::forced::{forced_sign, ForcedSignCertificate};
use super::monomials::TiedOrder;
use crate::error::{Error, Result};
use crate::patterns::{enumerate_patterns, Letter, ModuliOrder, Sign, SignPattern};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Node {
    Zero,
    One,
    Coeff(usize),
}

/// Strict relations `lhs < rhs` among the coefficients of `R`, `0` and `1`.
fn relations(q: &SignPattern, r: &SignPattern) -> Vec<(Node, Node)> {
    let d = q.degree();
    let top = d - 2;
    let node = |i: isize| -> Node {
        if i < 0 || i as usize > top {
            Node::Zero
        } else if i as usize == top {
            Node::One
        } else {
            Node::Coeff(i as usize)
        }
    };
    let mut out = vec![(Node::Zero, Node::One)];
    for j in 0..top {
        match r.coefficient_sign(j) {
            Sign::Plus => out.push((Node::Zero, Node::Coeff(j))),
            Sign::Minus => out.push((Node::Coeff(j), Node::Zero)),
        }
    }
    for j in 0..d {
        let (hi, lo) = (node(j as isize - 2), node(j as isize));
        match q.coefficient_sign(j) {
            Sign::Plus => out.push((lo, hi)),
            Sign::Minus => out.push((hi, lo)),
        }
    }
    out
}

/// Values for the coefficients of `R` satisfying every relation, if the
/// relations are acyclic.
fn solve(q: &SignPattern, r: &SignPattern) -> Option<Vec<f64>> {
    let top = q.degree() - 2;
    let index = |n: Node| match n {
        Node::Zero => top,
        Node::One => top + 1,
        Node::Coeff(i) => i,
    };
    let size = top + 2;
    let mut succ = vec![Vec::new(); size];
    let mut indegree = vec![0; size];
    for (a, b) in relations(q, r) {
        if a == b {
            return None;
        }
        succ[index(a)].push(index(b));
        indegree[index(b)] += 1;
    }
    let mut ready: Vec<usize> = (0..size).filter(|&v| indegree[v] == 0).collect();
    let mut sorted = Vec::with_capacity(size);
    while let Some(v) = ready.pop() {
        sorted.push(v);
        for &w in &succ[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    if sorted.len() < size {
        return None;
    }
    let pos = |v: usize| sorted.iter().position(|&x| x == v).expect("sorted") as f64;
    let (zero, one) = (pos(top), pos(top + 1));
    let value = |p: f64| {
        if p < zero {
            p - zero
        } else if p <= one {
            (p - zero) / (one - zero)
        } else {
            1.0 + (p - one)
        }
    };
    Some((0..top).map(|i| value(pos(i))).collect())
}

/// Sign patterns of `R` with `(x² - 1) R` having pattern `q`, ignoring
/// whether `R` is real-rooted.
pub fn factor_constraints(q: &SignPattern) -> Result<Vec<SignPattern>> {
    let d = q.degree();
    if d < 3 {
        return Err(Error::OutOfRange(format!("degree {d} is below 3")));
    }
    let mut out = Vec::new();
    for changes in 0..=d - 2 {
        for r in enumerate_patterns(d - 2, changes)? {
            if solve(q, &r).is_some() {
                out.push(r);
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Coefficients `a_0 .. a_{d-3}` of a monic `R` realizing the candidate.
pub fn factor_point(q: &SignPattern, r: &SignPattern) -> Option<Vec<f64>> {
    if r.degree() + 2 != q.degree() {
        return None;
    }
    solve(q, r)
}

/// The encoded two-inequality lemma: with `a < f < g < b` positive, the
/// system `a + b < f + g` and `(a + b)/ab < (f + g)/fg` has no solution.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairInfeasibility {
    pub factor_order: ModuliOrder,
    pub factor_pattern: SignPattern,
    pub samples: u64,
    pub seed: u64,
}

impl fmt::Display for PairInfeasibility {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pair lemma on ({}, {}): a<f<g<b, a+b<f+g, (a+b)/ab<(f+g)/fg infeasible; {} samples, 0 counterexamples",
            self.factor_pattern, self.factor_order, self.samples
        )
    }
}

/// True when the sampled quadruple `a < f < g < b` satisfies both inequalities.
pub fn pair_counterexample(a: f64, f: f64, g: f64, b: f64) -> bool {
    a + b < f + g && (a + b) / (a * b) < (f + g) / (f * g)
}

/// Certifies that a quartic factor with moduli order `PNNP` (roots
/// `a, -f, -g, b`) cannot have positive coefficients at `x³` and `x`.
pub fn pair_infeasibility_check(
    factor_order: &ModuliOrder,
    factor_pattern: &SignPattern,
    samples: u64,
    seed: u64,
) -> Result<PairInfeasibility> {
    let shape_ok = factor_order.to_string() == "PNNP"
        && factor_pattern.degree() == 4
        && factor_pattern.coefficient_sign(3) == Sign::Plus
        && factor_pattern.coefficient_sign(1) == Sign::Plus;
    if !shape_ok {
        return Err(Error::UnsupportedShape(format!("({factor_pattern}, {factor_order})")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let mut x: [f64; 4] = std::array::from_fn(|_| (rng.random::<f64>() * 8.0 - 4.0).exp());
        x.sort_by(f64::total_cmp);
        if pair_counterexample(x[0], x[1], x[2], x[3]) {
            return Err(Error::InvalidCertificate(format!("counterexample {x:?}")));
        }
    }
    Ok(PairInfeasibility { factor_order: factor_order.clone(), factor_pattern: factor_pattern.clone(), samples, seed })
}

/// Why one candidate pattern of `R` cannot occur with `R`'s order of moduli.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FactorExclusion {
    Incompatible,
    RigidOrder { rigid_pattern: SignPattern },
    CanonicalPattern { canonical_order: ModuliOrder },
    ForcedSign(Box<ForcedSignCertificate>),
    PairLemma(PairInfeasibility),
}

impl FactorExclusion {
    /// Rests on a cited lemma rather than a self-contained check.
    pub fn encoded_lemma(&self) -> Option<&'static str> {
        match self {
            FactorExclusion::RigidOrder { .. } => Some("rigid-order"),
            FactorExclusion::CanonicalPattern { .. } => Some("canonical-pattern"),
            FactorExclusion::PairLemma(_) => Some("pair-infeasibility"),
            _ => None,
        }
    }
}

impl fmt::Display for FactorExclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorExclusion::Incompatible => f.write_str("incompatible"),
            FactorExclusion::RigidOrder { rigid_pattern } => write!(f, "rigid order, only {rigid_pattern}"),
            FactorExclusion::CanonicalPattern { canonical_order } => {
                write!(f, "canonical pattern, only {canonical_order}")
            }
            FactorExclusion::ForcedSign(c) => {
                let rel = if c.sign == Sign::Plus { ">" } else { "<" };
                write!(f, "a{} {rel} 0 forced", c.coefficient)
            }
            FactorExclusion::PairLemma(p) => write!(f, "{p}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WallReason {
    /// A coefficient of `Q` has a forced sign on the tied order.
    TiedForcedSign(Box<ForcedSignCertificate>),
    /// Every candidate pattern of `R` is excluded; the list may be empty.
    Factor { factor_order: ModuliOrder, candidates: Vec<(SignPattern, Vec<FactorExclusion>)> },
}

/// Proof that no polynomial with `pattern` sits on the wall `tied`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WallCertificate {
    pub pattern: SignPattern,
    pub tied: TiedOrder,
    pub sides: (ModuliOrder, ModuliOrder),
    pub reason: WallReason,
}

impl WallCertificate {
    pub fn encoded_lemmas(&self) -> Vec<&'static str> {
        match &self.reason {
            WallReason::TiedForcedSign(_) => Vec::new(),
            WallReason::Factor { candidates, .. } => {
                candidates.iter().flat_map(|(_, ex)| ex.first().and_then(|e| e.encoded_lemma())).collect()
            }
        }
    }
}

impl fmt::Display for WallCertificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (a, b) = &self.sides;
        write!(f, "wall {} | {} ({}) empty: ", a.to_uvector(), b.to_uvector(), self.tied)?;
        match &self.reason {
            WallReason::TiedForcedSign(c) => {
                let rel = if c.sign == Sign::Plus { ">" } else { "<" };
                write!(f, "q{} {rel} 0 forced", c.coefficient)
            }
            WallReason::Factor { factor_order, candidates } if candidates.is_empty() => {
                write!(f, "no factor pattern fits (R order {factor_order})")
            }
            WallReason::Factor { factor_order, candidates } => {
                write!(f, "R order {factor_order}")?;
                for (tau, ex) in candidates {
                    write!(f, "; {tau}: {}", ex.first().map(|e| e.to_string()).unwrap_or_default())?;
                }
                Ok(())
            }
        }
    }
}

/// Samples used by the pair lemma's falsification pass inside wall checks.
pub const PAIR_LEMMA_SAMPLES: u64 = 10_000;

/// Tries to show the wall between two neighboring orders is empty for `pattern`.
pub fn wall_certificate(
    pattern: &SignPattern,
    lower: &ModuliOrder,
    upper: &ModuliOrder,
    tie: usize,
) -> Result<Option<WallCertificate>> {
    let tied = TiedOrder::new(lower.clone(), vec![tie])?;
    let sides = (lower.clone(), upper.clone());
    for k in 0..pattern.degree() {
        if let Some(cert) = forced_sign(&tied, k) {
            if cert.sign != pattern.coefficient_sign(k) {
                let reason = WallReason::TiedForcedSign(Box::new(cert));
                return Ok(Some(WallCertificate { pattern: pattern.clone(), tied, sides, reason }));
            }
        }
    }
    let factor_order = tied.without_tied_pair()?;
    let mut candidates = Vec::new();
    for tau in factor_constraints(pattern)? {
        let exclusions = exclusions(&tau, &factor_order)?;
        if exclusions.is_empty() {
            return Ok(None);
        }
        candidates.push((tau, exclusions));
    }
    let reason = WallReason::Factor { factor_order, candidates };
    Ok(Some(WallCertificate { pattern: pattern.clone(), tied, sides, reason }))
}

/// Every applicable reason why `(tau, order)` is not realizable.
pub fn exclusions(tau: &SignPattern, order: &ModuliOrder) -> Result<Vec<FactorExclusion>> {
    let mut out = Vec::new();
    let (changes, _) = tau.descartes_counts();
    if changes != order.count_p() {
        out.push(FactorExclusion::Incompatible);
        return Ok(out);
    }
    if order.is_rigid() {
        let rigid_pattern = order.rigid_sign_pattern()?;
        if &rigid_pattern != tau {
            out.push(FactorExclusion::RigidOrder { rigid_pattern });
        }
    }
    for k in 0..tau.degree() {
        if let Some(cert) = forced_sign(&TiedOrder::strict(order.clone()), k) {
            if cert.sign != tau.coefficient_sign(k) {
                out.push(FactorExclusion::ForcedSign(Box::new(cert)));
                break;
            }
        }
    }
    if tau.is_canonical() && tau.canonical_order() != *order {
        out.push(FactorExclusion::CanonicalPattern { canonical_order: tau.canonical_order() });
    }
    if let Ok(lemma) = pair_infeasibility_check(order, tau, PAIR_LEMMA_SAMPLES, 0) {
        out.push(FactorExclusion::PairLemma(lemma));
    }
    Ok(out)
}

/// Both letters of a tie, lower rank first.
pub fn tie_letters(order: &ModuliOrder, tie: usize) -> (Letter, Letter) {
    let l = order.letters();
    (l[tie], l[tie + 1])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::UVector;

    fn sp(s: &str) -> SignPattern {
        s.parse().unwrap()
    }

    fn uv(s: &str) -> ModuliOrder {
        ModuliOrder::from_uvector(&s.parse::<UVector>().unwrap())
    }

    #[test]
    fn factor_patterns_for_parts_one_and_four() {
        assert_eq!(factor_constraints(&sp("3,1,2,1")).unwrap(), vec![sp("3,1,1")]);
        assert_eq!(factor_constraints(&sp("3,2,1,1")).unwrap(), vec![sp("3,1,1")]);
    }

    #[test]
    fn factor_patterns_have_points() {
        let q = sp("2,1,2,2");
        let set = factor_constraints(&q).unwrap();
        assert!(!set.is_empty());
        for r in &set {
            let a = factor_point(&q, r).unwrap();
            let mut coeffs = a.clone();
            coeffs.push(1.0);
            // q_j = a_{j-2} - a_j with a beyond the ends equal to zero
            let at = |i: isize| if i < 0 || i as usize >= coeffs.len() { 0.0 } else { coeffs[i as usize] };
            for j in 0..=q.degree() {
                let v = at(j as isize - 2) - at(j as isize);
                assert_eq!(v > 0.0, q.coefficient_sign(j) == Sign::Plus, "q{j} for {r}");
            }
            for (j, &x) in a.iter().enumerate() {
                assert_eq!(x > 0.0, r.coefficient_sign(j) == Sign::Plus);
            }
        }
    }

    #[test]
    fn top_wall_for_part_one_is_empty() {
        let cert = wall_certificate(&sp("3,1,2,1"), &uv("[0,0,3,0]"), &uv("[0,0,2,1]"), 4).unwrap().unwrap();
        assert!(matches!(cert.reason, WallReason::TiedForcedSign(_)));
    }

    #[test]
    fn pair_lemma() {
        let order: ModuliOrder = "PNNP".parse().unwrap();
        let cert = pair_infeasibility_check(&order, &sp("++-++"), 100_000, 7).unwrap();
        assert_eq!(cert.samples, 100_000);
        assert!(!pair_counterexample(1.0, 2.0, 3.0, 4.0));
        assert!(matches!(
            pair_infeasibility_check(&"PNPN".parse().unwrap(), &sp("++-++"), 10, 0),
            Err(Error::UnsupportedShape(_))
        ));
    }
}
