use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use hyperorder::certify::{forced_sign, DecideConfig, Decider, TiedOrder};
use hyperorder::patterns::{compatible_orders, enumerate_patterns, Couple, ModuliOrder, SignPattern};
use hyperorder::results::{counts_and_ratio, cross_validate, literature_witnesses, verify_examples, write_verdicts};
use hyperorder::search::{build_distribution, master_seed, mc_search, transport, SamplerConfig, SearchOutcome};
use hyperorder::store::{append_record, format_record, WitnessStore, STORE_HEADER};
use hyperorder::symmetry::{orbit_of, orbits, GroupElement, Involutions};
use hyperorder::Error;

const EXIT_CONTRADICTION: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_EXHAUSTED: u8 = 3;

#[derive(Parser)]
#[command(name = "hyperorder", version, about = "Sign patterns and orders of moduli of real-rooted polynomials")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args, Clone)]
struct SamplerArgs {
    /// Master seed; overrides the environment and the config file.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    budget: Option<u64>,
    /// uniform, loguniform or mixed.
    #[arg(long)]
    dist: Option<String>,
    #[arg(long)]
    min_modulus: Option<f64>,
    #[arg(long)]
    max_modulus: Option<f64>,
    /// key=value file with sampler defaults.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl SamplerArgs {
    fn resolve(&self, default_budget: u64) -> hyperorder::Result<SamplerConfig> {
        let mut cfg = match &self.config {
            Some(path) => SamplerConfig::from_key_values(&fs::read_to_string(path)?)?,
            None => SamplerConfig { budget: default_budget, ..SamplerConfig::default() },
        };
        cfg.seed = master_seed(cfg.seed)?;
        if let Some(seed) = self.seed {
            cfg.seed = seed;
        }
        if let Some(budget) = self.budget {
            cfg.budget = budget;
        }
        if self.dist.is_some() || self.min_modulus.is_some() || self.max_modulus.is_some() {
            cfg.distribution = build_distribution(self.dist.as_deref(), self.min_modulus, self.max_modulus)?;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Subcommand)]
enum Command {
    /// List sign patterns of a degree with a number of sign changes.
    Enumerate {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        changes: usize,
        /// Also list each pattern's compatible orders.
        #[arg(long)]
        orders: bool,
    },
    /// Orbits of patterns with `changes` or `degree - changes` sign changes.
    Orbits {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        changes: usize,
    },
    /// Canonical order of a pattern.
    Canonical { pattern: SignPattern },
    /// The only pattern a rigid order realizes.
    Rigid { order: ModuliOrder },
    /// Monte Carlo search for a witness.
    Search {
        #[arg(long)]
        pattern: SignPattern,
        #[arg(long)]
        order: ModuliOrder,
        #[command(flatten)]
        sampler: SamplerArgs,
        /// Append the witness to this store.
        #[arg(long)]
        store: Option<PathBuf>,
    },
    /// Forced-sign certificates for an order (ties written as `N=P`).
    Certify {
        #[arg(long)]
        pattern: SignPattern,
        #[arg(long)]
        order: TiedOrder,
        #[arg(long)]
        coeff: Option<usize>,
    },
    /// Run the decision pipeline.
    Decide {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        pattern: Option<SignPattern>,
        /// Every pattern of the degree.
        #[arg(long)]
        all: bool,
        /// Also search on couples certified non-realizable.
        #[arg(long)]
        audit: bool,
        /// Write the verdict table here instead of stdout.
        #[arg(long)]
        tsv: Option<PathBuf>,
        #[command(flatten)]
        sampler: SamplerArgs,
    },
    /// Expand the published example polynomials and check them.
    VerifyPaper,
    /// Counts of realizable couples and ratios.
    Stats {
        #[arg(long)]
        degree: usize,
    },
    /// Orbit of one pattern.
    OrbitOf { pattern: SignPattern },
    /// Apply a group element to every witness in a store.
    Transport {
        #[arg(long)]
        witness: PathBuf,
        #[arg(long)]
        g: GroupElement,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(Error::Contradiction(msg)) => {
            eprintln!("contradiction: {msg}");
            ExitCode::from(EXIT_CONTRADICTION)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn run(command: Command) -> hyperorder::Result<u8> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Enumerate { degree, changes, orders } => {
            for p in enumerate_patterns(degree, changes)? {
                writeln!(out, "{p}\t{}\t{}", p.label(), p.to_cp())?;
                if orders {
                    for o in compatible_orders(&p) {
                        writeln!(out, "  {o}\t{}", o.to_uvector())?;
                    }
                }
            }
        }
        Command::Orbits { degree, changes } => {
            if changes > degree {
                return Err(Error::OutOfRange(format!("{changes} sign changes in degree {degree}")));
            }
            for orbit in orbits(degree, changes)? {
                let members: Vec<String> = orbit.members().iter().map(|p| p.label()).collect();
                let canonical = if orbit.representative().is_canonical() { "\tcanonical" } else { "" };
                writeln!(out, "{}\t{}{canonical}", orbit.len(), members.join(" "))?;
            }
        }
        Command::Canonical { pattern } => {
            let order = pattern.canonical_order();
            writeln!(out, "{order}\t{}", order.to_uvector())?;
            let only = if pattern.is_canonical() {
                "canonical pattern: realizable with this order only"
            } else {
                "not a canonical pattern"
            };
            writeln!(out, "{only}")?;
        }
        Command::Rigid { order } => {
            let pattern = order.rigid_sign_pattern()?;
            writeln!(out, "{pattern}\t{}", pattern.label())?;
        }
        Command::Search { pattern, order, sampler, store } => {
            let couple = Couple::new(pattern, order);
            let cfg = sampler.resolve(1_000_000)?;
            match mc_search(&couple, &cfg)? {
                SearchOutcome::Found { witness, iterations } => {
                    writeln!(out, "found after {iterations} samples")?;
                    writeln!(out, "{}", format_record(&witness))?;
                    if let Some(path) = store {
                        append_record(&path, &witness)?;
                    }
                }
                SearchOutcome::Exhausted { budget, sign_failures } => {
                    writeln!(out, "exhausted {budget} samples, {sign_failures} with the order but wrong signs")?;
                    return Ok(EXIT_EXHAUSTED);
                }
            }
        }
        Command::Certify { pattern, order, coeff } => {
            if order.len() != pattern.degree() {
                return Err(Error::LengthMismatch { pattern: pattern.degree(), order: order.len() });
            }
            let indices: Vec<usize> = match coeff {
                Some(k) if k < pattern.degree() => vec![k],
                Some(k) => return Err(Error::OutOfRange(format!("coefficient index {k}"))),
                None => (0..pattern.degree()).collect(),
            };
            let mut contradicted = false;
            for k in indices {
                if let Some(cert) = forced_sign(&order, k) {
                    let clash = cert.sign != pattern.coefficient_sign(k);
                    contradicted |= clash;
                    if clash || coeff.is_some() {
                        writeln!(out, "{cert}")?;
                        if clash {
                            writeln!(out, "  contradicts {pattern}")?;
                        }
                    }
                } else if coeff.is_some() {
                    writeln!(out, "no certificate for q{k}")?;
                }
            }
            if coeff.is_none() && !contradicted {
                writeln!(out, "no coefficient of {pattern} is contradicted on {order}")?;
            }
        }
        Command::Decide { degree, pattern, all, audit, tsv, sampler } => {
            let config = DecideConfig { sampler: sampler.resolve(1_000_000)?, audit, ..DecideConfig::default() };
            let mut sink: Box<dyn Write> = match &tsv {
                Some(path) => Box::new(fs::File::create(path)?),
                None => Box::new(io::stdout()),
            };
            if let Some(pattern) = pattern {
                if pattern.degree() != degree {
                    return Err(Error::OutOfRange(format!("{pattern} has degree {}", pattern.degree())));
                }
                let decider = Decider::new(config).with_witnesses(literature_witnesses()?);
                let decision = decider.decide_pattern(&pattern)?;
                write_verdicts(&mut sink, decision.verdicts())?;
            } else if all {
                let decider = Decider::new(config).with_witnesses(literature_witnesses()?);
                let mut verdicts = Vec::new();
                for changes in 0..=degree {
                    for p in enumerate_patterns(degree, changes)? {
                        verdicts.extend(decider.decide_pattern(&p)?.table.into_values());
                    }
                }
                write_verdicts(&mut sink, &verdicts)?;
            } else {
                if degree != 6 {
                    return Err(Error::UnsupportedDegree(degree));
                }
                let report = cross_validate(config)?;
                write!(out, "{report}")?;
                if tsv.is_some() {
                    write_verdicts(&mut sink, &report.verdicts)?;
                }
                if !report.is_consistent() {
                    return Ok(EXIT_CONTRADICTION);
                }
            }
        }
        Command::VerifyPaper => {
            writeln!(out, "{}", verify_examples())?;
        }
        Command::Stats { degree } => {
            writeln!(out, "{}", counts_and_ratio(degree)?)?;
        }
        Command::OrbitOf { pattern } => {
            for g in GroupElement::ALL {
                let image = pattern.act(g);
                writeln!(out, "{g}\t{image}\t{}", image.label())?;
            }
            writeln!(out, "orbit size {}", orbit_of(&pattern).len())?;
        }
        Command::Transport { witness, g } => {
            let store = WitnessStore::load(&witness)?;
            writeln!(out, "{STORE_HEADER}")?;
            for w in store.witnesses() {
                writeln!(out, "{}", format_record(&transport(&w, g)?))?;
            }
        }
    }
    Ok(0)
}
