//! Coefficients as signed sums of modulus products.
//!
//! With moduli ranked `0..d` in increasing order, the coefficient of `x^k`
//! is `Σ_S (-1)^{|S ∩ P|} μ_S` over the `(d-k)`-subsets `S` of ranks.

use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::patterns::{Letter, ModuliOrder, Sign};

/// An order of moduli in which some adjacent ranks carry equal moduli.
///
/// A tie at `i` joins ranks `i` and `i + 1`; the two roots have opposite signs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TiedOrder {
    order: ModuliOrder,
    ties: Vec<usize>,
}

impl TiedOrder {
    pub fn new(order: ModuliOrder, mut ties: Vec<usize>) -> Result<Self> {
        ties.sort_unstable();
        ties.dedup();
        let letters = order.letters();
        for (j, &i) in ties.iter().enumerate() {
            if i + 1 >= letters.len() {
                return Err(Error::InvalidOrder(format!("tie at rank {} is out of range", i + 1)));
            }
            if letters[i] == letters[i + 1] {
                return Err(Error::InvalidOrder(format!("tied ranks {} and {} have the same label", i + 1, i + 2)));
            }
            if j > 0 && ties[j - 1] + 1 == i {
                return Err(Error::InvalidOrder("overlapping ties".into()));
            }
        }
        Ok(TiedOrder { order, ties })
    }

    pub fn strict(order: ModuliOrder) -> Self {
        TiedOrder { order, ties: Vec::new() }
    }

    pub fn order(&self) -> &ModuliOrder {
        &self.order
    }

    pub fn ties(&self) -> &[usize] {
        &self.ties
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Equivalence class of each rank: non-decreasing, equal exactly on tied ranks.
    pub fn classes(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.len());
        let mut class = 0;
        for i in 0..self.len() {
            if i > 0 && !self.ties.contains(&(i - 1)) {
                class += 1;
            }
            out.push(class);
        }
        out
    }

    /// The order left after deleting a single tied pair.
    pub fn without_tied_pair(&self) -> Result<ModuliOrder> {
        match self.ties.as_slice() {
            [i] => {
                let letters: Vec<Letter> = self
                    .order
                    .letters()
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| *j != *i && *j != i + 1)
                    .map(|(_, &l)| l)
                    .collect();
                ModuliOrder::new(letters)
            }
            _ => Err(Error::UnsupportedShape("expected exactly one tie".into())),
        }
    }
}

impl From<ModuliOrder> for TiedOrder {
    fn from(order: ModuliOrder) -> Self {
        TiedOrder::strict(order)
    }
}

/// Letters with `=` between tied ranks, e.g. `PPNNN=P`.
impl fmt::Display for TiedOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.order.letters().iter().enumerate() {
            if i > 0 && self.ties.contains(&(i - 1)) {
                f.write_str("=")?;
            }
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for TiedOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut letters = String::new();
        let mut ties = Vec::new();
        for ch in s.chars() {
            if ch == '=' {
                if letters.is_empty() {
                    return Err(Error::InvalidOrder(s.to_string()));
                }
                ties.push(letters.len() - 1);
            } else {
                letters.push(ch);
            }
        }
        TiedOrder::new(letters.parse()?, ties)
    }
}

/// `±` the product of the moduli whose ranks form `support`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedMonomial {
    pub support: Vec<usize>,
    pub sign: Sign,
}

impl SignedMonomial {
    pub fn cardinality(&self) -> usize {
        self.support.len()
    }
}

impl fmt::Display for SignedMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.sign.as_char())?;
        write_support(f, &self.support)
    }
}

/// Ranks printed 1-based, e.g. `[1,4]`.
pub(crate) fn write_support(f: &mut fmt::Formatter<'_>, support: &[usize]) -> fmt::Result {
    write!(f, "[{}]", support.iter().map(|r| r + 1).join(","))
}

/// All monomials of the coefficient of `x^k`, supports in lexicographic order.
pub fn coefficient_monomials(order: &TiedOrder, k: usize) -> Result<Vec<SignedMonomial>> {
    let d = order.len();
    if k > d {
        return Err(Error::OutOfRange(format!("coefficient index {k} exceeds degree {d}")));
    }
    let letters = order.order().letters();
    Ok((0..d)
        .combinations(d - k)
        .map(|support| {
            let positives = support.iter().filter(|&&r| letters[r] == Letter::P).count();
            SignedMonomial { sign: Sign::parity(positives), support }
        })
        .collect())
}

/// `Some(strict)` if every factor of `big` is at least the matching factor of
/// `small` (both sorted); `strict` if some factor is strictly larger.
pub fn dominates(big: &[usize], small: &[usize], classes: &[usize]) -> Option<bool> {
    if big.len() != small.len() {
        return None;
    }
    let mut strict = false;
    for (&b, &s) in big.iter().zip(small) {
        match classes[b].cmp(&classes[s]) {
            std::cmp::Ordering::Less => return None,
            std::cmp::Ordering::Greater => strict = true,
            std::cmp::Ordering::Equal => {}
        }
    }
    Some(strict)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::patterns::UVector;

    fn order(s: &str) -> TiedOrder {
        s.parse().unwrap()
    }

    #[test]
    fn q5_is_gammas_minus_alphas() {
        let o = order("PNPPNN");
        let ms = coefficient_monomials(&o, 5).unwrap();
        assert_eq!(ms.len(), 6);
        for m in &ms {
            let expected = if o.order().letters()[m.support[0]] == Letter::P { Sign::Minus } else { Sign::Plus };
            assert_eq!(m.sign, expected);
        }
    }

    #[test]
    fn constant_term_and_leading_term() {
        let o = order("PNPPNN");
        let q0 = coefficient_monomials(&o, 0).unwrap();
        assert_eq!(q0, vec![SignedMonomial { support: (0..6).collect(), sign: Sign::Minus }]);
        let q6 = coefficient_monomials(&o, 6).unwrap();
        assert_eq!(q6, vec![SignedMonomial { support: vec![], sign: Sign::Plus }]);
        assert!(coefficient_monomials(&o, 7).is_err());
    }

    #[test]
    fn census_for_q4() {
        let u: UVector = "[1,1,0,1]".parse().unwrap();
        let o = TiedOrder::strict(ModuliOrder::from_uvector(&u));
        let ms = coefficient_monomials(&o, 4).unwrap();
        assert_eq!(ms.len(), 15);
        assert_eq!(ms.iter().filter(|m| m.sign == Sign::Plus).count(), 6);
    }

    #[test]
    fn tied_orders() {
        let t = order("PPNNN=P");
        assert_eq!(t.ties(), &[4]);
        assert_eq!(t.classes(), vec![0, 1, 2, 3, 4, 4]);
        assert_eq!(t.without_tied_pair().unwrap().to_string(), "PPNN");
        assert_eq!(t.to_string(), "PPNNN=P");
        assert!("PPNNN=N".parse::<TiedOrder>().is_err());
        assert!("PN=P=N".parse::<TiedOrder>().is_err());
    }

    #[test]
    fn dominance() {
        let classes = [0, 1, 2, 3];
        assert_eq!(dominates(&[1, 3], &[0, 3], &classes), Some(true));
        assert_eq!(dominates(&[1, 3], &[1, 3], &classes), Some(false));
        assert_eq!(dominates(&[0, 3], &[1, 2], &classes), None);
        let tied = [0, 1, 2, 2];
        assert_eq!(dominates(&[3], &[2], &tied), Some(false));
    }
}
