//! Exact bridge between root configurations and coefficient data.
//!
//! Everything here is exact rational arithmetic. Decimal literals such as
//! `0.39` parse to `39/100`; scientific notation is rejected.

use std::fmt;

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::patterns::{Couple, Letter, ModuliOrder, Sign, SignPattern};
use crate::symmetry::GroupElement;

pub type Rational = BigRational;

pub fn parse_rational(s: &str) -> Result<Rational> {
    let invalid = || Error::InvalidRational(s.to_string());
    let text = s.trim().replace('\u{2212}', "-");
    if text.is_empty() || text.contains(['e', 'E']) {
        return Err(invalid());
    }
    if let Some((num, den)) = text.split_once('/') {
        let num = parse_decimal(num).ok_or_else(invalid)?;
        let den = parse_decimal(den).ok_or_else(invalid)?;
        if den.is_zero() {
            return Err(invalid());
        }
        return Ok(num / den);
    }
    parse_decimal(&text).ok_or_else(invalid)
}

fn parse_decimal(text: &str) -> Option<Rational> {
    let text = text.trim();
    let (negative, body) = match text.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, text.strip_prefix('+').unwrap_or(text)),
    };
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let value = Rational::new(numer, denom);
    Some(if negative { -value } else { value })
}

/// Number of digits after the decimal point in a literal such as `-0.0624624`.
pub fn decimal_places(literal: &str) -> usize {
    literal.trim().split_once('.').map_or(0, |(_, frac)| frac.len())
}

/// Terminating decimal when the denominator is of the form `2^a 5^b`,
/// otherwise `p/q`.
pub fn format_exact(q: &Rational) -> String {
    let mut den = q.denom().clone();
    let two = BigInt::from(2);
    let five = BigInt::from(5);
    let (mut twos, mut fives) = (0u32, 0u32);
    while den.is_even() {
        den /= &two;
        twos += 1;
    }
    while (&den % &five).is_zero() {
        den /= &five;
        fives += 1;
    }
    if !den.is_one() {
        return format_fraction(q);
    }
    let places = twos.max(fives);
    let scaled = q * Rational::from_integer(BigInt::from(10).pow(places));
    let magnitude = scaled.to_integer().abs().to_string();
    let sign = if q.is_negative() { "-" } else { "" };
    if places == 0 {
        return format!("{sign}{magnitude}");
    }
    let places = places as usize;
    let padded = format!("{magnitude:0>width$}", width = places + 1);
    let (int_part, frac_part) = padded.split_at(padded.len() - places);
    format!("{sign}{int_part}.{frac_part}")
}

pub fn format_fraction(q: &Rational) -> String {
    if q.denom().is_one() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `q` rounded half away from zero to `places` decimals.
pub fn round_to_places(q: &Rational, places: usize) -> Rational {
    let scale = Rational::from_integer(BigInt::from(10).pow(places as u32));
    (q * &scale).round() / scale
}

pub fn sign_of(q: &Rational) -> Option<Sign> {
    match q.numer().sign() {
        BigSign::Plus => Some(Sign::Plus),
        BigSign::Minus => Some(Sign::Minus),
        BigSign::NoSign => None,
    }
}

pub fn to_f64(q: &Rational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// A multiset of non-zero exact roots.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RootConfiguration {
    roots: Vec<Rational>,
}

impl RootConfiguration {
    pub fn new(roots: Vec<Rational>) -> Result<Self> {
        if roots.is_empty() {
            return Err(Error::InvalidRoots("no roots".into()));
        }
        if roots.iter().any(Zero::is_zero) {
            return Err(Error::InvalidRoots("zero root".into()));
        }
        Ok(RootConfiguration { roots })
    }

    pub fn parse<S: AsRef<str>>(literals: &[S]) -> Result<Self> {
        let roots = literals.iter().map(|s| parse_rational(s.as_ref())).collect::<Result<_>>()?;
        RootConfiguration::new(roots)
    }

    pub fn roots(&self) -> &[Rational] {
        &self.roots
    }

    pub fn degree(&self) -> usize {
        self.roots.len()
    }

    /// Roots of `(-1)^d Q(-x)`.
    pub fn negated(&self) -> Self {
        RootConfiguration { roots: self.roots.iter().map(|r| -r).collect() }
    }

    /// Roots of `x^d Q(1/x) / Q(0)`.
    pub fn inverted(&self) -> Self {
        RootConfiguration { roots: self.roots.iter().map(|r| r.recip()).collect() }
    }

    pub fn act(&self, g: GroupElement) -> Self {
        let mut out = self.clone();
        if g.inverts() {
            out = out.inverted();
        }
        if g.negates() {
            out = out.negated();
        }
        out
    }

    pub fn with_root(&self, root: Rational) -> Result<Self> {
        let mut roots = self.roots.clone();
        roots.push(root);
        RootConfiguration::new(roots)
    }

    /// Roots sorted by increasing modulus, positive before negative on ties.
    fn by_modulus(&self) -> Vec<&Rational> {
        let mut sorted: Vec<&Rational> = self.roots.iter().collect();
        sorted.sort_by(|a, b| a.abs().cmp(&b.abs()).then_with(|| b.cmp(a)));
        sorted
    }
}

impl fmt::Display for RootConfiguration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.roots.iter().map(format_exact).collect();
        f.write_str(&parts.join(","))
    }
}

/// Monic polynomial, coefficients stored from `q_d` down to `q_0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    coeffs: Vec<Rational>,
}

impl Polynomial {
    pub fn from_descending(coeffs: Vec<Rational>) -> Result<Self> {
        if coeffs.len() < 2 || !coeffs[0].is_one() {
            return Err(Error::InvalidRoots("polynomial must be monic of degree >= 1".into()));
        }
        Ok(Polynomial { coeffs })
    }

    /// `∏ (x - r_i)`, multiplied as a balanced product tree.
    pub fn expand(rc: &RootConfiguration) -> Self {
        fn product(roots: &[Rational]) -> Vec<Rational> {
            if roots.len() == 1 {
                return vec![Rational::one(), -roots[0].clone()];
            }
            let (lo, hi) = roots.split_at(roots.len() / 2);
            multiply(&product(lo), &product(hi))
        }
        Polynomial { coeffs: product(rc.roots()) }
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// `q_d, ..., q_0`.
    pub fn descending(&self) -> &[Rational] {
        &self.coeffs
    }

    /// Coefficient of `x^k`.
    pub fn coefficient(&self, k: usize) -> &Rational {
        &self.coeffs[self.degree() - k]
    }

    pub fn sign_pattern(&self) -> Result<SignPattern> {
        let signs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| sign_of(c).ok_or(Error::VanishingCoefficient { index: self.degree() - i }))
            .collect::<Result<Vec<_>>>()?;
        SignPattern::new(signs)
    }
}

pub(crate) fn multiply(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coeffs.iter().map(format_fraction).collect();
        f.write_str(&parts.join(","))
    }
}

pub fn expand(rc: &RootConfiguration) -> Polynomial {
    Polynomial::expand(rc)
}

pub fn sign_pattern_of(p: &Polynomial) -> Result<SignPattern> {
    p.sign_pattern()
}

/// Letters in increasing modulus. Equal moduli are an error listing the ties.
pub fn moduli_order_of(rc: &RootConfiguration) -> Result<ModuliOrder> {
    let sorted = rc.by_modulus();
    let ties: Vec<String> = sorted
        .windows(2)
        .filter(|w| w[0].abs() == w[1].abs())
        .map(|w| format!("{} ~ {}", format_exact(w[0]), format_exact(w[1])))
        .collect();
    if !ties.is_empty() {
        return Err(Error::TiedModuli { pairs: ties });
    }
    let letters = sorted.iter().map(|r| if r.is_positive() { Letter::P } else { Letter::N }).collect();
    ModuliOrder::new(letters)
}

pub fn couple_of(rc: &RootConfiguration) -> Result<Couple> {
    let order = moduli_order_of(rc)?;
    let pattern = expand(rc).sign_pattern()?;
    Ok(Couple::new(pattern, order))
}

/// Which root of a tied `±m` pair is scaled by `1 - eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shrink {
    Positive,
    Negative,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieResolution {
    pub modulus: Rational,
    pub shrink: Shrink,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PerturbationPlan(pub Vec<TieResolution>);

impl PerturbationPlan {
    /// For each tied `±m` pair, shrink whichever root `target` puts first.
    pub fn for_order(rc: &RootConfiguration, target: &ModuliOrder) -> Result<Self> {
        if target.len() != rc.degree() {
            return Err(Error::LengthMismatch { pattern: rc.degree(), order: target.len() });
        }
        let sorted = rc.by_modulus();
        let mut plan = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let run = sorted[i..].iter().take_while(|r| r.abs() == sorted[i].abs()).count();
            match run {
                1 => {}
                2 if sorted[i] != sorted[i + 1] => {
                    let shrink = match target.letters()[i] {
                        Letter::P => Shrink::Positive,
                        Letter::N => Shrink::Negative,
                    };
                    plan.push(TieResolution { modulus: sorted[i].abs(), shrink });
                }
                _ => {
                    return Err(Error::UnsupportedShape(format!(
                        "{run} roots of modulus {}",
                        format_exact(&sorted[i].abs())
                    )))
                }
            }
            i += run;
        }
        Ok(PerturbationPlan(plan))
    }
}

/// Scales the designated root of each tied pair by `1 - eps`.
pub fn perturb(rc: &RootConfiguration, plan: &PerturbationPlan, eps: &Rational) -> Result<RootConfiguration> {
    if !eps.is_positive() || *eps >= Rational::one() {
        return Err(Error::InvalidEpsilon(format_exact(eps)));
    }
    let factor = Rational::one() - eps;
    let mut roots = rc.roots.clone();
    for tie in &plan.0 {
        let target = match tie.shrink {
            Shrink::Positive => tie.modulus.clone(),
            Shrink::Negative => -tie.modulus.clone(),
        };
        let slot = roots
            .iter_mut()
            .find(|r| **r == target)
            .ok_or_else(|| Error::InvalidRoots(format!("no root {} to perturb", format_exact(&target))))?;
        *slot = &*slot * &factor;
    }
    RootConfiguration::new(roots)
}

/// Tries `eps = 2^-k`, `k = 1..=64`, until the perturbed roots realize `target`.
pub fn resolve_ties(rc: &RootConfiguration, target: &Couple) -> Result<(RootConfiguration, Rational)> {
    if couple_of(rc).as_ref() == Ok(target) {
        return Ok((rc.clone(), Rational::zero()));
    }
    let plan = PerturbationPlan::for_order(rc, &target.order)?;
    let mut eps = Rational::one();
    for _ in 0..64 {
        eps /= BigInt::from(2);
        let candidate = perturb(rc, &plan, &eps)?;
        if couple_of(&candidate).as_ref() == Ok(target) {
            return Ok((candidate, eps));
        }
    }
    Err(Error::EpsilonUnderflow(64))
}

/// How a witness was obtained.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Provenance {
    Literature {
        label: String,
    },
    McSearch {
        seed: u64,
        iteration: u64,
    },
    Concatenation {
        parent: Couple,
    },
    Transport {
        parent: Couple,
        g: GroupElement,
    },
    /// A degree-one root, or a chain of concatenations starting from one.
    Base,
}

impl Provenance {
    /// Key component for last-write-wins storage.
    pub fn kind(&self) -> &'static str {
        match self {
            Provenance::Literature { .. } => "literature",
            Provenance::McSearch { .. } => "mc",
            Provenance::Concatenation { .. } => "concat",
            Provenance::Transport { .. } => "transport",
            Provenance::Base => "base",
        }
    }

    pub fn seed(&self) -> Option<u64> {
        match self {
            Provenance::McSearch { seed, .. } => Some(*seed),
            _ => None,
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Provenance::Literature { label } => write!(f, "literature:{label}"),
            Provenance::McSearch { seed, iteration } => write!(f, "mc:{seed}:{iteration}"),
            Provenance::Concatenation { parent } => {
                write!(f, "concat:{}:{}", parent.pattern, parent.order)
            }
            Provenance::Transport { parent, g } => {
                write!(f, "transport:{g}:{}:{}", parent.pattern, parent.order)
            }
            Provenance::Base => f.write_str("base"),
        }
    }
}

impl std::str::FromStr for Provenance {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let invalid = || Error::InvalidWitness(format!("bad provenance `{s}`"));
        let couple = |p: &str, o: &str| -> Result<Couple> { Ok(Couple::new(p.parse()?, o.parse()?)) };
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["base"] => Ok(Provenance::Base),
            ["literature", label @ ..] if !label.is_empty() => Ok(Provenance::Literature { label: label.join(":") }),
            ["mc", seed, it] => Ok(Provenance::McSearch {
                seed: seed.parse().map_err(|_| invalid())?,
                iteration: it.parse().map_err(|_| invalid())?,
            }),
            ["concat", p, o] => Ok(Provenance::Concatenation { parent: couple(p, o)? }),
            ["transport", g, p, o] => Ok(Provenance::Transport { parent: couple(p, o)?, g: g.parse()? }),
            _ => Err(invalid()),
        }
    }
}

/// An exact root configuration proving a couple realizable.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Witness {
    couple: Couple,
    roots: RootConfiguration,
    polynomial: Polynomial,
    provenance: Provenance,
}

impl Witness {
    pub fn new(roots: RootConfiguration, provenance: Provenance) -> Result<Self> {
        let couple = couple_of(&roots).map_err(|e| Error::InvalidWitness(e.to_string()))?;
        let polynomial = expand(&roots);
        Ok(Witness { couple, roots, polynomial, provenance })
    }

    /// Like [`Witness::new`] but also checks the realized couple.
    pub fn for_couple(couple: &Couple, roots: RootConfiguration, provenance: Provenance) -> Result<Self> {
        let w = Witness::new(roots, provenance)?;
        if &w.couple != couple {
            return Err(Error::InvalidWitness(format!("realizes {} instead of {}", w.couple, couple)));
        }
        Ok(w)
    }

    pub fn couple(&self) -> &Couple {
        &self.couple
    }

    pub fn roots(&self) -> &RootConfiguration {
        &self.roots
    }

    pub fn polynomial(&self) -> &Polynomial {
        &self.polynomial
    }

    pub fn provenance(&self) -> &Provenance {
        &self.provenance
    }

    /// Re-derives everything from the roots.
    pub fn validate(&self) -> Result<()> {
        let fail = |why: String| Err(Error::InvalidWitness(why));
        let poly = expand(&self.roots);
        if poly != self.polynomial {
            return fail("stored coefficients differ from the expansion".into());
        }
        match couple_of(&self.roots) {
            Ok(c) if c == self.couple => Ok(()),
            Ok(c) => fail(format!("roots realize {c}, stored {}", self.couple)),
            Err(e) => fail(e.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn rc(xs: &[&str]) -> RootConfiguration {
        RootConfiguration::parse(xs).unwrap()
    }

    fn coeffs(xs: &[&str]) -> Vec<Rational> {
        xs.iter().map(|x| q(x)).collect()
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(q("0.39"), Rational::new(39.into(), 100.into()));
        assert_eq!(q("-94645.70472"), Rational::new((-9464570472i64).into(), 100000.into()));
        assert_eq!(q("3/6"), Rational::new(1.into(), 2.into()));
        assert_eq!(q("\u{2212}1.5"), q("-3/2"));
        assert_eq!(q(".5"), q("1/2"));
        for bad in ["1e3", "", "1/0", "abc", "1.2.3", "-", "2E-1"] {
            assert!(parse_rational(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn exact_formatting() {
        assert_eq!(format_exact(&q("0.39")), "0.39");
        assert_eq!(format_exact(&q("-1/8")), "-0.125");
        assert_eq!(format_exact(&q("1/3")), "1/3");
        assert_eq!(format_exact(&q("-31")), "-31");
        assert_eq!(format_fraction(&q("0.12")), "3/25");
        assert_eq!(round_to_places(&q("27.65295484"), 7), q("27.6529548"));
        assert_eq!(round_to_places(&q("-63044.12477811845376"), 5), q("-63044.12478"));
    }

    #[test]
    fn expand_examples() {
        let p = expand(&rc(&["0.2", "1", "-1", "3.1", "-5", "-10"]));
        assert_eq!(p.descending(), coeffs(&["1", "11.7", "0.12", "-167.4", "29.88", "155.7", "-31"]));
        let p = expand(&rc(&["-4", "5", "6", "-8.74", "-9.41", "9.59"]));
        assert_eq!(
            p.descending(),
            coeffs(&["1", "1.56", "-165.7351", "-145.848506", "7833.610842", "24.186884", "-94645.70472"])
        );
        assert_eq!(expand(&rc(&["1", "-1"])).descending(), coeffs(&["1", "0", "-1"]));
    }

    #[test]
    fn sign_pattern_examples() {
        let p = expand(&rc(&["0.2", "1", "-1", "3.1", "-5", "-10"]));
        assert_eq!(p.sign_pattern().unwrap(), "3,1,2,1".parse().unwrap());
        let p = expand(&rc(&["-4", "5", "6", "-8.74", "-9.41", "9.59"]));
        assert_eq!(p.sign_pattern().unwrap(), "2,2,2,1".parse().unwrap());
        let p = expand(&rc(&["1", "-1"]));
        assert_eq!(p.sign_pattern(), Err(Error::VanishingCoefficient { index: 1 }));
    }

    #[test]
    fn moduli_order_examples() {
        let o = moduli_order_of(&rc(&["-1.49", "1.87", "5.77", "-5.96", "7.58", "-8.07"])).unwrap();
        assert_eq!(o.to_string(), "NPPNPN");
        match moduli_order_of(&rc(&["0.2", "1", "-1", "3.1", "-5", "-10"])) {
            Err(Error::TiedModuli { pairs }) => assert_eq!(pairs, vec!["1 ~ -1".to_string()]),
            other => panic!("expected a tie, got {other:?}"),
        }
        assert_eq!(moduli_order_of(&rc(&["2"])).unwrap().to_string(), "P");
    }

    #[test]
    fn perturb_examples() {
        let base = rc(&["1", "-1"]);
        let plan = PerturbationPlan(vec![TieResolution { modulus: q("1"), shrink: Shrink::Negative }]);
        let out = perturb(&base, &plan, &q("1/10")).unwrap();
        assert_eq!(out.roots(), &[q("1"), q("-9/10")]);
        assert_eq!(moduli_order_of(&out).unwrap().to_string(), "NP");

        let untied = rc(&["1", "-2"]);
        assert_eq!(perturb(&untied, &PerturbationPlan::default(), &q("0.5")).unwrap(), untied);

        assert!(matches!(perturb(&base, &plan, &q("1")), Err(Error::InvalidEpsilon(_))));
        assert!(matches!(perturb(&base, &plan, &q("0")), Err(Error::InvalidEpsilon(_))));
    }

    #[test]
    fn tie_resolution_reaches_the_claimed_couple() {
        let roots = rc(&["0.39", "0.4", "1", "-1", "-1.01", "-9"]);
        let target = Couple::new("3,1,2,1".parse().unwrap(), "PPPNNN".parse().unwrap());
        let (perturbed, eps) = resolve_ties(&roots, &target).unwrap();
        assert!(eps.is_positive());
        assert_eq!(couple_of(&perturbed).unwrap(), target);
    }

    #[test]
    fn couple_examples() {
        let c = couple_of(&rc(&["-1.49", "1.87", "5.77", "-5.96", "7.58", "-8.07"])).unwrap();
        assert_eq!(c.to_string(), "(++-++--, NPPNPN)");
        let c = couple_of(&rc(&["-2.5", "4.95", "6.47", "8.19", "-8.57", "-9.05"])).unwrap();
        assert_eq!(c.to_string(), "(++-++--, NPPPNN)");
        let c = couple_of(&rc(&["1", "2"])).unwrap();
        assert_eq!(c.to_string(), "(+-+, PP)");
    }

    #[test]
    fn provenance_round_trip() {
        let parent = Couple::new("2,2,2".parse().unwrap(), "PNNPN".parse().unwrap());
        for p in [
            Provenance::Literature { label: "2,1,2,2/NPPNPN".into() },
            Provenance::McSearch { seed: 7, iteration: 12 },
            Provenance::Concatenation { parent: parent.clone() },
            Provenance::Transport { parent, g: GroupElement::ImIr },
            Provenance::Base,
        ] {
            assert_eq!(p.to_string().parse::<Provenance>().unwrap(), p);
        }
    }

    #[test]
    fn witness_rejects_ties_and_wrong_claims() {
        assert!(Witness::new(rc(&["1", "-1"]), Provenance::Base).is_err());
        let target = Couple::new("+-+".parse().unwrap(), "PP".parse().unwrap());
        assert!(Witness::for_couple(&target, rc(&["1", "2"]), Provenance::Base).is_ok());
        let wrong = Couple::new("++-".parse().unwrap(), "NP".parse().unwrap());
        assert!(Witness::for_couple(&wrong, rc(&["1", "2"]), Provenance::Base).is_err());
    }
}
