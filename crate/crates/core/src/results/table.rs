//! The known classification of couples in degree six.

use std::collections::BTreeMap;

use crate::certify::{Status, Verdict};
use crate::error::{Error, Result};
use crate::patterns::{compatible_orders, enumerate_patterns, Couple, ModuliOrder, SignPattern, UVector};
use crate::symmetry::{GroupElement, Involutions};

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationTable {
    degree: usize,
    entries: BTreeMap<Couple, Verdict>,
}

impl ClassificationTable {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn get(&self, couple: &Couple) -> Option<&Verdict> {
        self.entries.get(couple)
    }

    pub fn status(&self, couple: &Couple) -> Status {
        self.entries.get(couple).map_or(Status::Unknown, |v| v.status)
    }

    pub fn verdicts(&self) -> impl Iterator<Item = &Verdict> {
        self.entries.values()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// `(realizable, total)` among couples with `changes` sign changes.
    pub fn count(&self, changes: usize) -> (usize, usize) {
        let stratum = self.entries.values().filter(|v| v.couple.order.count_p() == changes);
        stratum.fold((0, 0), |(r, t), v| (r + usize::from(v.status == Status::Realizable), t + 1))
    }

    /// Statuses agree on every orbit of the group action.
    pub fn is_equivariant(&self) -> bool {
        self.entries.keys().all(|c| GroupElement::ALL.iter().all(|&g| self.status(&c.act(g)) == self.status(c)))
    }
}

fn sp(s: &str) -> SignPattern {
    s.parse().expect("builtin pattern")
}

fn uvectors(list: &[&str]) -> Vec<ModuliOrder> {
    list.iter().map(|u| ModuliOrder::from_uvector(&u.parse::<UVector>().expect("builtin uvector"))).collect()
}

/// Two-sign-change patterns that are not canonical: realizable orders given
/// either as the full list, or as the complement of the non-realizable list.
fn two_change_rows() -> Vec<(SignPattern, Vec<ModuliOrder>)> {
    let all_but = |p: &str, excluded: &[&str]| {
        let pattern = sp(p);
        let excluded = uvectors(excluded);
        let orders = compatible_orders(&pattern).into_iter().filter(|o| !excluded.contains(o)).collect();
        (pattern, orders)
    };
    vec![
        (sp("2,4,1"), uvectors(&["[0,2,2]", "[0,3,1]", "[0,4,0]"])),
        (sp("3,3,1"), uvectors(&["[1,0,3]", "[0,0,4]", "[0,1,3]", "[0,2,2]", "[0,3,1]", "[0,4,0]"])),
        (sp("4,2,1"), uvectors(&["[1,0,3]", "[0,0,4]", "[0,1,3]", "[0,2,2]"])),
        all_but("2,3,2", &[]),
        all_but("3,2,2", &["[4,0,0]", "[3,1,0]", "[2,2,0]", "[1,3,0]"]),
    ]
}

/// Three-sign-change orbit representatives that are not canonical, with
/// their realizable orders.
fn three_change_rows() -> Vec<(SignPattern, Vec<ModuliOrder>)> {
    let orders = |list: &[&str]| list.iter().map(|o| o.parse().expect("builtin order")).collect();
    let all_but = |p: &str, excluded: &[&str]| {
        let pattern = sp(p);
        let excluded: Vec<ModuliOrder> = orders(excluded);
        let kept = compatible_orders(&pattern).into_iter().filter(|o| !excluded.contains(o)).collect();
        (pattern, kept)
    };
    vec![
        (sp("3,1,2,1"), orders(&["PPPNNN", "PPNPNN", "PPNNPN", "PNPPNN", "NPPPNN"])),
        (sp("2,1,2,2"), orders(&["PNNPPN", "NPPPNN", "NPPNPN", "NPPNNP", "NPNPPN", "NNPPPN"])),
        all_but("2,2,2,1", &["NPNPNP", "NPNNPP", "NNPPNP", "NNPNPP", "NNNPPP"]),
        (sp("3,2,1,1"), orders(&["PPPNNN", "PPNPNN", "PPNNPN", "PNPPNN"])),
    ]
}

/// Looks the couple up in `rows` through some group element.
fn by_orbit(rows: &[(SignPattern, Vec<ModuliOrder>)], couple: &Couple) -> Option<(Status, String)> {
    for g in GroupElement::ALL {
        let image = couple.act(g);
        if let Some((pattern, realizable)) = rows.iter().find(|(p, _)| *p == image.pattern) {
            let status = if realizable.contains(&image.order) { Status::Realizable } else { Status::NonRealizable };
            return Some((status, format!("orbit of {pattern} via {g}")));
        }
    }
    None
}

/// One sign change, `Σ_{m1,m2}`: realizable iff the count of negative moduli
/// above the positive one is at most `2 m1 - 2` when `m1 < m2`, and
/// symmetrically below it when `m2 < m1`.
fn one_change(couple: &Couple) -> Option<Status> {
    let runs = couple.pattern.composition().runs().to_vec();
    let [m1, m2] = runs[..] else { return None };
    let u = couple.order.to_uvector();
    let [u1, u2] = u.components()[..] else { return None };
    let ok = if m1 < m2 {
        u2 + 2 <= 2 * m1
    } else if m2 < m1 {
        u1 + 2 <= 2 * m2
    } else {
        return None;
    };
    Some(if ok { Status::Realizable } else { Status::NonRealizable })
}

fn classify(couple: &Couple, degree: usize) -> Result<(Status, String)> {
    let pattern = &couple.pattern;
    let (changes, _) = pattern.descartes_counts();
    if couple.order.is_rigid() {
        let status =
            if couple.order.rigid_sign_pattern()? == *pattern { Status::Realizable } else { Status::NonRealizable };
        return Ok((status, "rigid order".into()));
    }
    if pattern.is_canonical() {
        let status = if pattern.canonical_order() == couple.order { Status::Realizable } else { Status::NonRealizable };
        return Ok((status, "canonical pattern".into()));
    }
    if degree < 6 {
        return Ok((Status::Unknown, "not tabulated".into()));
    }
    let stratum = changes.min(degree - changes);
    let lowered = if changes > degree / 2 { couple.im() } else { couple.clone() };
    let via = if changes > degree / 2 { " via im" } else { "" };
    let found = match stratum {
        1 => one_change(&lowered).map(|s| (s, format!("one sign change rule{via}"))),
        2 => by_orbit(&two_change_rows(), couple).map(|(s, c)| (s, format!("two sign changes, {c}"))),
        3 => by_orbit(&three_change_rows(), couple).map(|(s, c)| (s, format!("three sign changes, {c}"))),
        _ => None,
    };
    found.ok_or_else(|| Error::OutOfRange(format!("no builtin entry for {couple}")))
}

/// The classification for `degree ≤ 6`. Degree six is complete; lower
/// degrees only settle rigid orders and canonical patterns.
pub fn builtin_table(degree: usize) -> Result<ClassificationTable> {
    if degree == 0 || degree > 6 {
        return Err(Error::UnsupportedDegree(degree));
    }
    let mut entries = BTreeMap::new();
    for changes in 0..=degree {
        for pattern in enumerate_patterns(degree, changes)? {
            for order in compatible_orders(&pattern) {
                let couple = Couple::new(pattern.clone(), order);
                let (status, citation) = classify(&couple, degree)?;
                entries.insert(couple.clone(), Verdict::cited(couple, status, citation));
            }
        }
    }
    Ok(ClassificationTable { degree, entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn couple(p: &str, o: &str) -> Couple {
        Couple::new(p.parse().unwrap(), o.parse().unwrap())
    }

    #[test]
    fn quoted_entries() {
        let t = builtin_table(6).unwrap();
        assert_eq!(t.status(&couple("4,1,1,1", "PPPNNN")), Status::Realizable);
        let others = compatible_orders(&sp("4,1,1,1"));
        let denied =
            others.iter().filter(|o| t.status(&Couple::new(sp("4,1,1,1"), (*o).clone())) == Status::NonRealizable);
        assert_eq!(denied.count(), 19);
        assert_eq!(t.status(&couple("3,2,2", "[4,0,0]")), Status::NonRealizable);
        for o in compatible_orders(&sp("2,3,2")) {
            assert_eq!(t.status(&Couple::new(sp("2,3,2"), o)), Status::Realizable);
        }
    }

    #[test]
    fn table_is_complete_and_equivariant() {
        let t = builtin_table(6).unwrap();
        assert_eq!(t.len(), 924);
        assert!(t.verdicts().all(|v| v.status != Status::Unknown));
        assert!(t.is_equivariant());
    }

    #[test]
    fn small_degrees_are_partial() {
        let t = builtin_table(4).unwrap();
        assert_eq!(t.status(&couple("+-+-+", "PPPP")), Status::Realizable);
        assert!(builtin_table(7).is_err());
    }
}
