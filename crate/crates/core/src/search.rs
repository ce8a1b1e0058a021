//! Positive evidence: Monte Carlo witness search, concatenation with a small
//! root, and transport of witnesses along the group action.
//!
//! The sampler works in `f64` and is untrusted. A sample is accepted only
//! after its rational roots re-validate exactly through [`Witness::for_couple`].

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::patterns::{Couple, Letter, ModuliOrder, Sign, SignPattern};
use crate::poly::{expand, moduli_order_of, Provenance, Rational, RootConfiguration, Witness};
use crate::symmetry::{GroupElement, Involutions};

/// How root moduli are drawn before being sorted and labelled.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModulusDistribution {
    Uniform {
        max: f64,
    },
    LogUniform {
        min: f64,
        max: f64,
    },
    /// Even iterations uniform on `(0, max)`, odd iterations log-uniform on `[min, max]`.
    Mixed {
        min: f64,
        max: f64,
    },
}

impl ModulusDistribution {
    fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::InvalidConfig(why.to_string()));
        match *self {
            ModulusDistribution::Uniform { max } if !(max > 0.0 && max.is_finite()) => {
                bad("uniform bound must be positive")
            }
            ModulusDistribution::LogUniform { min, max } | ModulusDistribution::Mixed { min, max }
                if !(min > 0.0 && min < max && max.is_finite()) =>
            {
                bad("need 0 < min < max")
            }
            _ => Ok(()),
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng, iteration: u64) -> f64 {
        let uniform = |rng: &mut ChaCha8Rng, max: f64| loop {
            let x = rng.random::<f64>() * max;
            if x > 0.0 {
                return x;
            }
        };
        let log_uniform =
            |rng: &mut ChaCha8Rng, min: f64, max: f64| (min.ln() + rng.random::<f64>() * (max / min).ln()).exp();
        match *self {
            ModulusDistribution::Uniform { max } => uniform(rng, max),
            ModulusDistribution::LogUniform { min, max } => log_uniform(rng, min, max),
            ModulusDistribution::Mixed { min, max } => {
                if iteration.is_multiple_of(2) {
                    uniform(rng, max)
                } else {
                    log_uniform(rng, min, max)
                }
            }
        }
    }
}

impl fmt::Display for ModulusDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModulusDistribution::Uniform { max } => write!(f, "uniform(0,{max})"),
            ModulusDistribution::LogUniform { min, max } => write!(f, "loguniform({min},{max})"),
            ModulusDistribution::Mixed { min, max } => write!(f, "mixed({min},{max})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SamplerConfig {
    pub seed: u64,
    pub budget: u64,
    pub distribution: ModulusDistribution,
}

impl Default for SamplerConfig {
    fn default() -> Self {
        SamplerConfig {
            seed: 0x5EED,
            budget: 100_000,
            distribution: ModulusDistribution::Mixed { min: 1.0, max: 1000.0 },
        }
    }
}

impl SamplerConfig {
    pub fn validate(&self) -> Result<()> {
        if self.budget == 0 {
            return Err(Error::InvalidConfig("budget must be at least 1".into()));
        }
        self.distribution.validate()
    }

    /// Same settings, seed derived for one couple.
    pub fn for_task(&self, couple: &Couple) -> SamplerConfig {
        SamplerConfig { seed: derive_seed(self.seed, couple), ..self.clone() }
    }

    /// Reads `key=value` lines (`seed`, `budget`, `dist`, `min-modulus`,
    /// `max-modulus`); `#` starts a comment. Unknown keys are an error.
    pub fn from_key_values(text: &str) -> Result<SamplerConfig> {
        let mut cfg = SamplerConfig::default();
        let mut dist_name: Option<String> = None;
        let (mut min, mut max) = (None, None);
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let bad = |why: &str| Error::MalformedRecord { line: lineno + 1, reason: why.to_string() };
            let (key, value) = line.split_once('=').ok_or_else(|| bad("expected key=value"))?;
            let value = value.trim();
            let num = |v: &str| v.parse::<f64>().map_err(|_| bad("not a number"));
            match key.trim() {
                "seed" => cfg.seed = value.parse().map_err(|_| bad("bad seed"))?,
                "budget" => cfg.budget = value.parse().map_err(|_| bad("bad budget"))?,
                "dist" => dist_name = Some(value.to_string()),
                "min-modulus" => min = Some(num(value)?),
                "max-modulus" => max = Some(num(value)?),
                other => return Err(bad(&format!("unknown key `{other}`"))),
            }
        }
        cfg.distribution = build_distribution(dist_name.as_deref(), min, max)?;
        cfg.validate()?;
        Ok(cfg)
    }
}

/// Builds a distribution from a name (`uniform`, `loguniform`, `mixed`) and
/// optional bounds, defaulting to `[1, 1000]`.
pub fn build_distribution(name: Option<&str>, min: Option<f64>, max: Option<f64>) -> Result<ModulusDistribution> {
    let min = min.unwrap_or(1.0);
    let max = max.unwrap_or(1000.0);
    let dist = match name.unwrap_or("mixed") {
        "uniform" => ModulusDistribution::Uniform { max },
        "loguniform" => ModulusDistribution::LogUniform { min, max },
        "mixed" => ModulusDistribution::Mixed { min, max },
        other => return Err(Error::InvalidConfig(format!("unknown distribution `{other}`"))),
    };
    dist.validate()?;
    Ok(dist)
}

/// Environment variable overriding the master seed.
pub const SEED_ENV: &str = "HYPERORDER_SEED";

/// The master seed from the environment, else `default`.
pub fn master_seed(default: u64) -> Result<u64> {
    match std::env::var(SEED_ENV) {
        Ok(v) => v.trim().parse().map_err(|_| Error::InvalidConfig(format!("{SEED_ENV}=`{v}` is not a u64"))),
        Err(std::env::VarError::NotPresent) => Ok(default),
        Err(e) => Err(Error::InvalidConfig(e.to_string())),
    }
}

/// `seed(task) = first 8 bytes of SHA-256(master || couple)`.
pub fn derive_seed(master: u64, couple: &Couple) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(master.to_le_bytes());
    hasher.update(couple.pattern.to_string().as_bytes());
    hasher.update(b"|");
    hasher.update(couple.order.to_string().as_bytes());
    let digest = hasher.finalize();
    let mut bytes = [0u8; 8];
    bytes.copy_from_slice(&digest[..8]);
    u64::from_le_bytes(bytes)
}

#[derive(Debug, Clone, PartialEq)]
pub enum SearchOutcome {
    Found {
        witness: Witness,
        iterations: u64,
    },
    /// Every sample had the requested order; `sign_failures` of them missed the pattern.
    Exhausted {
        budget: u64,
        sign_failures: u64,
    },
}

impl SearchOutcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            SearchOutcome::Found { witness, .. } => Some(witness),
            SearchOutcome::Exhausted { .. } => None,
        }
    }
}

/// Draws root configurations with the target order until one defines the
/// target pattern.
pub fn mc_search(target: &Couple, cfg: &SamplerConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    target.ensure_compatible()?;
    let mut sampler = OrderSampler::new(&target.order, cfg);
    let wanted: Vec<bool> = target.pattern.signs().iter().map(|&s| s == Sign::Plus).collect();
    let mut failures = 0;
    let mut coeffs = vec![0.0; target.degree() + 1];
    for iteration in 0..cfg.budget {
        let roots = sampler.sample(iteration);
        expand_f64(&roots, &mut coeffs);
        let matches = coeffs.iter().zip(&wanted).all(|(&c, &plus)| if plus { c > 0.0 } else { c < 0.0 });
        if matches {
            if let Some(witness) = exact_witness(target, &roots, cfg.seed, iteration) {
                return Ok(SearchOutcome::Found { witness, iterations: iteration + 1 });
            }
        }
        failures += 1;
    }
    Ok(SearchOutcome::Exhausted { budget: cfg.budget, sign_failures: failures })
}

/// Sorted moduli labelled by a fixed order.
pub struct OrderSampler<'a> {
    order: &'a ModuliOrder,
    rng: ChaCha8Rng,
    distribution: ModulusDistribution,
    moduli: Vec<f64>,
}

impl<'a> OrderSampler<'a> {
    pub fn new(order: &'a ModuliOrder, cfg: &SamplerConfig) -> Self {
        OrderSampler {
            order,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            distribution: cfg.distribution,
            moduli: Vec::with_capacity(order.len()),
        }
    }

    pub fn sample(&mut self, iteration: u64) -> Vec<f64> {
        self.moduli.clear();
        for _ in 0..self.order.len() {
            let m = self.distribution.draw(&mut self.rng, iteration);
            self.moduli.push(m);
        }
        self.moduli.sort_by(f64::total_cmp);
        self.moduli.iter().zip(self.order.letters()).map(|(&m, l)| if *l == Letter::P { m } else { -m }).collect()
    }
}

/// Coefficients of `∏ (x - r)`, descending.
pub fn expand_f64(roots: &[f64], out: &mut Vec<f64>) {
    out.clear();
    out.push(1.0);
    for &r in roots {
        out.push(0.0);
        for i in (1..out.len()).rev() {
            out[i] -= r * out[i - 1];
        }
    }
}

/// Rounded to six significant digits when that still validates, else the
/// exact binary values of the samples.
fn exact_witness(target: &Couple, roots: &[f64], seed: u64, iteration: u64) -> Option<Witness> {
    let provenance = Provenance::McSearch { seed, iteration };
    let rounded: Option<Vec<Rational>> = roots.iter().map(|&r| round_significant(r, 6)).collect();
    if let Some(rc) = rounded.and_then(|r| RootConfiguration::new(r).ok()) {
        if let Ok(w) = Witness::for_couple(target, rc, provenance.clone()) {
            return Some(w);
        }
    }
    let exact: Option<Vec<Rational>> = roots.iter().map(|&r| BigRational::from_float(r)).collect();
    let rc = RootConfiguration::new(exact?).ok()?;
    Witness::for_couple(target, rc, provenance).ok()
}

fn round_significant(x: f64, digits: i32) -> Option<Rational> {
    if x == 0.0 || !x.is_finite() {
        return None;
    }
    let magnitude = x.abs().log10().floor() as i32;
    let places = digits - 1 - magnitude;
    let text = format!("{:.*}", places.max(0) as usize, x);
    let value = crate::poly::parse_rational(&text).ok()?;
    if places < 0 {
        let scale = Rational::from_integer(BigInt::from(10).pow((-places) as u32));
        return Some((value / &scale).round() * scale);
    }
    (!value.is_zero()).then_some(value)
}

/// How the small root of a concatenation is chosen.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpsilonPolicy {
    /// First candidate as a fraction of the parent's smallest modulus.
    pub start_fraction: Rational,
    pub max_halvings: u32,
}

impl Default for EpsilonPolicy {
    fn default() -> Self {
        EpsilonPolicy { start_fraction: Rational::new(1.into(), 2.into()), max_halvings: 64 }
    }
}

/// Multiplies the parent by `x - eps` (positive new root, order `P·Ω`) or
/// `x + eps` (negative new root, order `N·Ω`), halving `eps` until the first
/// `d + 1` coefficient signs agree with the parent.
pub fn concatenate(parent: &Witness, new_root: Sign, policy: &EpsilonPolicy) -> Result<Witness> {
    parent.validate()?;
    let smallest = parent.roots().roots().iter().map(|r| r.abs()).min().expect("non-empty");
    let letter = if new_root == Sign::Plus { Letter::P } else { Letter::N };
    let mut signs = parent.couple().pattern.signs().to_vec();
    let last = parent.couple().pattern.last();
    signs.push(if letter == Letter::P { last.flip() } else { last });
    let target = Couple::new(SignPattern::new(signs)?, parent.couple().order.prepended(letter));
    let mut eps = &smallest * &policy.start_fraction;
    for _ in 0..=policy.max_halvings {
        let root = if letter == Letter::P { eps.clone() } else { -eps.clone() };
        let rc = parent.roots().with_root(root)?;
        let poly = expand(&rc);
        let head_ok = poly
            .descending()
            .iter()
            .zip(parent.couple().pattern.signs())
            .all(|(c, &s)| crate::poly::sign_of(c) == Some(s));
        if head_ok && moduli_order_of(&rc).as_ref() == Ok(&target.order) {
            let provenance = Provenance::Concatenation { parent: parent.couple().clone() };
            return Witness::for_couple(&target, rc, provenance);
        }
        eps /= BigInt::from(2);
    }
    Err(Error::EpsilonUnderflow(policy.max_halvings))
}

/// Negates and/or inverts the roots.
pub fn transport(parent: &Witness, g: GroupElement) -> Result<Witness> {
    let rc = parent.roots().act(g);
    let provenance = Provenance::Transport { parent: parent.couple().clone(), g };
    Witness::for_couple(&parent.couple().act(g), rc, provenance)
}

/// Builds a witness for `(pattern, canonical order)` by concatenating from a
/// single root of modulus one.
pub fn canonical_witness(pattern: &SignPattern) -> Result<Witness> {
    let order = pattern.canonical_order();
    let letters = order.letters();
    let top = letters[letters.len() - 1];
    let one = Rational::one();
    let base_root = if top == Letter::P { one } else { -one };
    let mut witness = Witness::new(RootConfiguration::new(vec![base_root])?, Provenance::Base)?;
    for &letter in letters[..letters.len() - 1].iter().rev() {
        let sign = if letter == Letter::P { Sign::Plus } else { Sign::Minus };
        witness = concatenate(&witness, sign, &EpsilonPolicy::default())?;
    }
    debug_assert_eq!(&witness.couple().pattern, pattern);
    Ok(witness)
}

/// Sampler distribution names accepted on the command line.
impl FromStr for ModulusDistribution {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        build_distribution(Some(s.trim()), None, None)
    }
}
