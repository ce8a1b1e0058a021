//! The commuting involutions `i_m : Q(x) -> (-1)^d Q(-x)` and
//! `i_r : Q(x) -> x^d Q(1/x) / Q(0)`, and orbits of the Klein group they generate.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::patterns::{enumerate_patterns, Couple, ModuliOrder, Sign, SignPattern};

/// Objects the two involutions act on.
pub trait Involutions: Sized {
    /// Negates the variable: swaps `P`/`N` and `c`/`p`.
    fn im(&self) -> Self;
    /// Reads everything from the right.
    fn ir(&self) -> Self;

    fn act(&self, g: GroupElement) -> Self
    where
        Self: Clone,
    {
        match g {
            GroupElement::Id => self.clone(),
            GroupElement::Im => self.im(),
            GroupElement::Ir => self.ir(),
            GroupElement::ImIr => self.ir().im(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum GroupElement {
    Id,
    Im,
    Ir,
    ImIr,
}

impl GroupElement {
    pub const ALL: [GroupElement; 4] = [GroupElement::Id, GroupElement::Im, GroupElement::Ir, GroupElement::ImIr];

    /// Every element is its own inverse.
    pub fn inverse(self) -> Self {
        self
    }

    pub fn negates(self) -> bool {
        matches!(self, GroupElement::Im | GroupElement::ImIr)
    }

    pub fn inverts(self) -> bool {
        matches!(self, GroupElement::Ir | GroupElement::ImIr)
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupElement::Id => "id",
            GroupElement::Im => "im",
            GroupElement::Ir => "ir",
            GroupElement::ImIr => "imir",
        })
    }
}

impl FromStr for GroupElement {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "id" => Ok(GroupElement::Id),
            "im" => Ok(GroupElement::Im),
            "ir" => Ok(GroupElement::Ir),
            "imir" | "irim" => Ok(GroupElement::ImIr),
            other => Err(Error::OutOfRange(format!("unknown group element `{other}`"))),
        }
    }
}

impl Involutions for SignPattern {
    fn im(&self) -> Self {
        let signs = self.signs().iter().enumerate().map(|(i, &s)| s.times(Sign::parity(i))).collect();
        SignPattern::new(signs).expect("same length")
    }

    fn ir(&self) -> Self {
        self.reversed()
    }
}

impl Involutions for ModuliOrder {
    fn im(&self) -> Self {
        ModuliOrder::new(self.letters().iter().map(|l| l.swap()).collect()).expect("same length")
    }

    fn ir(&self) -> Self {
        let mut letters = self.letters().to_vec();
        letters.reverse();
        ModuliOrder::new(letters).expect("same length")
    }
}

impl Involutions for Couple {
    fn im(&self) -> Self {
        Couple::new(self.pattern.im(), self.order.im())
    }

    fn ir(&self) -> Self {
        Couple::new(self.pattern.ir(), self.order.ir())
    }
}

/// An orbit under `{id, i_m, i_r, i_m i_r}`; members sorted, the representative
/// is the least one.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbit<T> {
    members: Vec<T>,
}

impl<T: Ord + Clone> Orbit<T> {
    pub fn members(&self) -> &[T] {
        &self.members
    }

    pub fn representative(&self) -> &T {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, x: &T) -> bool {
        self.members.binary_search(x).is_ok()
    }
}

pub fn orbit_of<T: Involutions + Ord + Clone>(x: &T) -> Orbit<T> {
    let members: BTreeSet<T> = GroupElement::ALL.iter().map(|&g| x.act(g)).collect();
    Orbit { members: members.into_iter().collect() }
}

/// Orbits of sign patterns of degree `degree` with `changes` or
/// `degree - changes` sign changes, sorted by representative.
pub fn orbits(degree: usize, changes: usize) -> Result<Vec<Orbit<SignPattern>>> {
    let mut pool: BTreeSet<SignPattern> = enumerate_patterns(degree, changes)?.into_iter().collect();
    pool.extend(enumerate_patterns(degree, degree - changes)?);
    let mut out = Vec::new();
    while let Some(first) = pool.iter().next().cloned() {
        let orbit = orbit_of(&first);
        for m in orbit.members() {
            pool.remove(m);
        }
        out.push(orbit);
    }
    Ok(out)
}
