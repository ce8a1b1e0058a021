//! Independent oracles and exhaustive checks shared by the property suites
//! and the acceptance harness. Each check returns a description of the first
//! failure.
#![allow(dead_code)]

use hyperorder::patterns::{compatible_orders, enumerate_orders, enumerate_patterns, Composition};
use hyperorder::poly::{couple_of, expand};
use hyperorder::search::{expand_f64, mc_search, SamplerConfig};
use hyperorder::store::format_record;
use hyperorder::symmetry::orbit_of;
use hyperorder::{
    Couple, GroupElement, Involutions, ModuliOrder, Rational, RootConfiguration, Sign, SignPattern, UVector,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

pub fn uv(s: &str) -> ModuliOrder {
    ModuliOrder::from_uvector(&s.parse::<UVector>().unwrap())
}

pub fn sp(s: &str) -> SignPattern {
    s.parse().unwrap()
}

pub fn all_patterns(d: usize) -> Vec<SignPattern> {
    (0..=d).flat_map(|c| enumerate_patterns(d, c).unwrap()).collect()
}

pub fn all_orders(d: usize) -> Vec<ModuliOrder> {
    (0..=d).flat_map(|p| enumerate_orders(d, p).unwrap()).collect()
}

/// Coefficient of `x^(d-k)` is `(-1)^k e_k`, summed over subsets directly.
pub fn vieta_by_subsets(roots: &[Rational]) -> Vec<Rational> {
    let d = roots.len();
    let mut e = vec![Rational::zero(); d + 1];
    for mask in 0u32..(1 << d) {
        let mut term = Rational::one();
        for (i, r) in roots.iter().enumerate() {
            if mask & (1 << i) != 0 {
                term *= r;
            }
        }
        e[mask.count_ones() as usize] += term;
    }
    e.into_iter().enumerate().map(|(k, v)| if k % 2 == 0 { v } else { -v }).collect()
}

/// Multiplies by `x - r` one root at a time, leading coefficient first.
pub fn vieta_by_products(roots: &[Rational]) -> Vec<Rational> {
    let mut coeffs = vec![Rational::one()];
    for r in roots {
        let mut next = coeffs.clone();
        next.push(Rational::zero());
        for (i, c) in coeffs.iter().enumerate() {
            next[i + 1] -= c * r;
        }
        coeffs = next;
    }
    coeffs
}

/// Canonical iff the change-preservation string has no `cpc` and no `pcp`.
pub fn canonical_by_cp(p: &SignPattern) -> bool {
    let cp = p.to_cp().to_string();
    !cp.contains("cpc") && !cp.contains("pcp")
}

fn changes(p: &SignPattern) -> usize {
    p.descartes_counts().0
}

pub fn involution_laws(max_degree: usize) -> Check {
    for d in 1..=max_degree {
        for p in all_patterns(d) {
            if p.im().im() != p || p.ir().ir() != p || p.im().ir() != p.ir().im() {
                return Err(format!("involution law fails on {p}"));
            }
            if changes(&p.im()) != d - changes(&p) || changes(&p.ir()) != changes(&p) {
                return Err(format!("sign changes not transformed correctly on {p}"));
            }
            let size = orbit_of(&p).len();
            if size != 2 && size != 4 {
                return Err(format!("orbit of {p} has size {size}"));
            }
            for o in compatible_orders(&p) {
                for g in GroupElement::ALL {
                    let image = Couple::new(p.clone(), o.clone()).act(g);
                    if !image.is_compatible().unwrap() {
                        return Err(format!("{g} breaks compatibility of ({p}, {o})"));
                    }
                }
            }
        }
        for o in all_orders(d) {
            if o.im().im() != o || o.ir().ir() != o || o.im().ir() != o.ir().im() {
                return Err(format!("involution law fails on {o}"));
            }
        }
    }
    Ok(())
}

pub fn round_trips(max_degree: usize) -> Check {
    for d in 1..=max_degree {
        for p in all_patterns(d) {
            let cp = p.to_cp();
            if SignPattern::from_cp(&cp) != p {
                return Err(format!("cp round trip fails on {p}"));
            }
            if cp.to_string().parse::<hyperorder::patterns::ChangePreservationPattern>().unwrap() != cp {
                return Err(format!("cp text round trip fails on {p}"));
            }
            let comp = p.composition();
            if SignPattern::from_composition(&comp).unwrap() != p
                || comp.to_string().parse::<Composition>().unwrap() != comp
            {
                return Err(format!("composition round trip fails on {p}"));
            }
            if p.to_string().parse::<SignPattern>().unwrap() != p {
                return Err(format!("text round trip fails on {p}"));
            }
            if p.is_canonical() != canonical_by_cp(&p) {
                return Err(format!("canonicality disagrees with the cp oracle on {p}"));
            }
            if !Couple::new(p.clone(), p.canonical_order()).is_compatible().unwrap() {
                return Err(format!("canonical order of {p} is incompatible"));
            }
        }
        let mut rigid = 0;
        for o in all_orders(d) {
            let u = o.to_uvector();
            if ModuliOrder::from_uvector(&u) != o || u.to_string().parse::<UVector>().unwrap() != u {
                return Err(format!("uvector round trip fails on {o}"));
            }
            if o.to_string().parse::<ModuliOrder>().unwrap() != o {
                return Err(format!("text round trip fails on {o}"));
            }
            if u.components().iter().sum::<usize>() != o.count_n() || u.components().len() != o.count_p() + 1 {
                return Err(format!("uvector {u} does not count the letters of {o}"));
            }
            rigid += usize::from(o.is_rigid());
        }
        let expected = if d == 1 { 2 } else { 4 };
        if rigid != expected {
            return Err(format!("degree {d} has {rigid} rigid orders"));
        }
    }
    Ok(())
}

/// Nonzero roots with distinct moduli, numerators up to `spread` over
/// small denominators.
pub fn random_roots<R: Rng>(rng: &mut R, d: usize, spread: i64) -> RootConfiguration {
    loop {
        let roots: Vec<Rational> = (0..d)
            .map(|_| {
                let mut num = rng.random_range(1..=spread);
                if rng.random::<bool>() {
                    num = -num;
                }
                Rational::new(BigInt::from(num), BigInt::from(rng.random_range(1..=8i64)))
            })
            .collect();
        let mut moduli: Vec<Rational> =
            roots.iter().map(|r| if *r < Rational::zero() { -r.clone() } else { r.clone() }).collect();
        moduli.sort();
        moduli.dedup();
        if moduli.len() == d {
            return RootConfiguration::new(roots).unwrap();
        }
    }
}

pub fn vieta(samples: usize, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for i in 0..samples {
        let d = 1 + i % 8;
        let rc = random_roots(&mut rng, d, 1000);
        let expanded = expand(&rc);
        let coeffs = expanded.descending();
        if coeffs != vieta_by_subsets(rc.roots()).as_slice() || coeffs != vieta_by_products(rc.roots()).as_slice() {
            return Err(format!("expansion disagrees with the oracles for {:?}", rc.roots()));
        }
        let sum: Rational = rc.roots().iter().sum();
        let product: Rational = rc.roots().iter().map(|r| -r).product();
        if coeffs[1] != -sum || coeffs[d] != product {
            return Err(format!("sum or product of roots wrong for {:?}", rc.roots()));
        }
    }
    Ok(())
}

/// Random degree-six configurations with three positive and three negative
/// roots; every one realizing `pattern` must show its canonical order.
/// Returns how many samples realized the pattern.
pub fn canonical_only(pattern: &SignPattern, samples: usize, seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let canonical = pattern.canonical_order();
    let (pos, neg) = pattern.descartes_counts();
    let mut roots = vec![0.0; 6];
    let mut coeffs = Vec::with_capacity(7);
    let mut hits = 0;
    for _ in 0..samples {
        for (i, r) in roots.iter_mut().enumerate() {
            let m = 10f64.powf(rng.random::<f64>() * 4.0 - 2.0);
            *r = if i < pos { m } else { -m };
        }
        debug_assert_eq!(neg, 6 - pos);
        expand_f64(&roots, &mut coeffs);
        let signs_match = coeffs.iter().enumerate().all(|(i, c)| {
            c.abs() > 1e-9 * coeffs.iter().map(|x| x.abs()).fold(0.0, f64::max)
                && (*c > 0.0) == (pattern.signs()[i] == Sign::Plus)
        });
        if !signs_match {
            continue;
        }
        let exact: Vec<Rational> = roots.iter().map(|&r| Rational::from_float(r).unwrap()).collect();
        let couple = couple_of(&RootConfiguration::new(exact).unwrap()).map_err(|e| e.to_string())?;
        if couple.pattern != *pattern {
            continue;
        }
        hits += 1;
        if couple.order != canonical {
            return Err(format!("{pattern} realized with {} instead of {canonical}", couple.order));
        }
    }
    Ok(hits)
}

pub fn mc_determinism(seed: u64) -> Check {
    let found = Couple::new(sp("2,2,2,1"), "PNPNPN".parse().unwrap());
    let hard = Couple::new(sp("3,1,2,1"), uv("[1,1,0,1]"));
    for couple in [found, hard] {
        let cfg = SamplerConfig { seed, budget: 20_000, ..SamplerConfig::default() };
        let a = mc_search(&couple, &cfg).map_err(|e| e.to_string())?;
        let b = mc_search(&couple, &cfg).map_err(|e| e.to_string())?;
        if a != b {
            return Err(format!("two runs on {couple} differ"));
        }
        if let (Some(wa), Some(wb)) = (a.witness(), b.witness()) {
            if format_record(wa) != format_record(wb) {
                return Err(format!("records on {couple} differ"));
            }
        }
    }
    Ok(())
}
