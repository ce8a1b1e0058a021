//! Sign patterns, change-preservation patterns, orders of moduli and the
//! interval-count vectors that index them.
//!
//! Text encodings:
//! - sign patterns: `+++-++-` (ASCII `-` or U+2212), or a composition `3,1,2,1`;
//! - change-preservation patterns: `ppccpc`, read left to right over descending powers;
//! - orders of moduli: `PNPPNN`, smallest modulus first;
//! - uvectors: `[1,0,2,0]`.
//!
//! Patterns with a leading `-` are normalized by a global sign flip.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }

    /// `(-1)^n`.
    pub fn parity(n: usize) -> Sign {
        if n.is_multiple_of(2) {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn times(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Sign::Plus => '+',
            Sign::Minus => '-',
        }
    }

    fn from_char(c: char) -> Option<Sign> {
        match c {
            '+' => Some(Sign::Plus),
            '-' | '\u{2212}' => Some(Sign::Minus),
            _ => None,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

/// Signs of the coefficients `q_d, ..., q_0`, always with a leading `+`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignPattern(Vec<Sign>);

impl SignPattern {
    pub fn new(mut signs: Vec<Sign>) -> Result<Self> {
        if signs.len() < 2 {
            let text: String = signs.iter().map(|s| s.as_char()).collect();
            return Err(Error::InvalidPattern(text));
        }
        if signs[0] == Sign::Minus {
            signs.iter_mut().for_each(|s| *s = s.flip());
        }
        Ok(SignPattern(signs))
    }

    pub fn all_plus(degree: usize) -> Result<Self> {
        SignPattern::new(vec![Sign::Plus; degree + 1])
    }

    pub fn signs(&self) -> &[Sign] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len() - 1
    }

    pub fn last(&self) -> Sign {
        *self.0.last().expect("pattern is never empty")
    }

    /// Sign of the coefficient of `x^k`.
    pub fn coefficient_sign(&self, k: usize) -> Sign {
        self.0[self.degree() - k]
    }

    pub fn from_composition(composition: &Composition) -> Result<Self> {
        let mut signs = Vec::new();
        let mut current = Sign::Plus;
        for &run in composition.runs() {
            signs.extend(std::iter::repeat_n(current, run));
            current = current.flip();
        }
        SignPattern::new(signs)
    }

    pub fn composition(&self) -> Composition {
        let mut runs = Vec::new();
        let mut len = 1;
        for pair in self.0.windows(2) {
            if pair[0] == pair[1] {
                len += 1;
            } else {
                runs.push(len);
                len = 1;
            }
        }
        runs.push(len);
        Composition(runs)
    }

    pub fn to_cp(&self) -> ChangePreservationPattern {
        ChangePreservationPattern(
            self.0.windows(2).map(|w| if w[0] == w[1] { CpLetter::P } else { CpLetter::C }).collect(),
        )
    }

    pub fn from_cp(cp: &ChangePreservationPattern) -> Self {
        let mut signs = vec![Sign::Plus];
        for letter in &cp.0 {
            let prev = *signs.last().unwrap();
            signs.push(match letter {
                CpLetter::P => prev,
                CpLetter::C => prev.flip(),
            });
        }
        SignPattern(signs)
    }

    /// Numbers of sign changes and sign preservations.
    pub fn descartes_counts(&self) -> (usize, usize) {
        let changes = self.0.windows(2).filter(|w| w[0] != w[1]).count();
        (changes, self.degree() - changes)
    }

    /// Read the change-preservation pattern from the right, write the order from
    /// the left, `c -> P` and `p -> N`.
    pub fn canonical_order(&self) -> ModuliOrder {
        ModuliOrder(
            self.to_cp()
                .0
                .iter()
                .rev()
                .map(|l| match l {
                    CpLetter::C => Letter::P,
                    CpLetter::P => Letter::N,
                })
                .collect(),
        )
    }

    /// No block `++--`, `+--+`, `--++` or `-++-` of four consecutive signs.
    pub fn is_canonical(&self) -> bool {
        use Sign::{Minus as M, Plus as P};
        const FORBIDDEN: [[Sign; 4]; 4] = [[P, P, M, M], [P, M, M, P], [M, M, P, P], [M, P, P, M]];
        !self.0.windows(4).any(|w| FORBIDDEN.iter().any(|f| f == w))
    }

    /// The pattern without its last sign (degree drops by one).
    pub fn truncated(&self) -> Result<Self> {
        SignPattern::new(self.0[..self.0.len() - 1].to_vec())
    }

    pub fn reversed(&self) -> Self {
        let mut signs = self.0.clone();
        signs.reverse();
        SignPattern::new(signs).expect("reversal keeps the length")
    }

    /// `Σ_{3,1,2,1}`.
    pub fn label(&self) -> String {
        format!("Σ_{{{}}}", self.composition())
    }
}

impl fmt::Display for SignPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.0 {
            write!(f, "{}", s.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for SignPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        let invalid = || Error::InvalidPattern(s.to_string());
        if text.chars().all(|c| c.is_ascii_digit() || c == ',' || c.is_whitespace()) {
            let composition: Composition = text.parse().map_err(|_| invalid())?;
            return SignPattern::from_composition(&composition);
        }
        let signs = text.chars().map(Sign::from_char).collect::<Option<Vec<_>>>().ok_or_else(invalid)?;
        SignPattern::new(signs).map_err(|_| invalid())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CpLetter {
    C,
    P,
}

/// Letter `j` from the right compares the signs of `q_j` and `q_{j-1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ChangePreservationPattern(Vec<CpLetter>);

impl ChangePreservationPattern {
    pub fn letters(&self) -> &[CpLetter] {
        &self.0
    }
}

impl fmt::Display for ChangePreservationPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            f.write_str(match l {
                CpLetter::C => "c",
                CpLetter::P => "p",
            })?;
        }
        Ok(())
    }
}

impl FromStr for ChangePreservationPattern {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let letters = s
            .trim()
            .chars()
            .map(|c| match c {
                'c' => Some(CpLetter::C),
                'p' => Some(CpLetter::P),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .filter(|v| !v.is_empty())
            .ok_or_else(|| Error::InvalidPattern(s.to_string()))?;
        Ok(ChangePreservationPattern(letters))
    }
}

/// Run lengths `m_1, ..., m_k` of equal consecutive signs.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn new(runs: Vec<usize>) -> Result<Self> {
        let total: usize = runs.iter().sum();
        if runs.is_empty() || runs.contains(&0) || total < 2 {
            let text = runs.iter().map(|r| r.to_string()).collect::<Vec<_>>().join(",");
            return Err(Error::InvalidPattern(text));
        }
        Ok(Composition(runs))
    }

    pub fn runs(&self) -> &[usize] {
        &self.0
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|r| r.to_string()).collect();
        f.write_str(&parts.join(","))
    }
}

impl FromStr for Composition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let runs = s
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidPattern(s.to_string()))?;
        Composition::new(runs)
    }
}

/// `P` for a positive root, `N` for a negative one. `P < N` in every ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    P,
    N,
}

impl Letter {
    pub fn swap(self) -> Letter {
        match self {
            Letter::P => Letter::N,
            Letter::N => Letter::P,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Letter::P => 'P',
            Letter::N => 'N',
        }
    }
}

/// Position `i` holds the letter of the `i`-th smallest root modulus.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ModuliOrder(Vec<Letter>);

impl ModuliOrder {
    pub fn new(letters: Vec<Letter>) -> Result<Self> {
        if letters.is_empty() {
            return Err(Error::InvalidOrder(String::new()));
        }
        Ok(ModuliOrder(letters))
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn count_p(&self) -> usize {
        self.0.iter().filter(|&&l| l == Letter::P).count()
    }

    pub fn count_n(&self) -> usize {
        self.len() - self.count_p()
    }

    /// Strictly alternating or constant.
    pub fn is_rigid(&self) -> bool {
        let alternating = self.0.windows(2).all(|w| w[0] != w[1]);
        let constant = self.0.windows(2).all(|w| w[0] == w[1]);
        alternating || constant
    }

    /// The only sign pattern realizable with a rigid order: the pattern whose
    /// canonical order this is.
    pub fn rigid_sign_pattern(&self) -> Result<SignPattern> {
        if !self.is_rigid() {
            return Err(Error::NotRigid(self.to_string()));
        }
        Ok(self.canonical_pattern())
    }

    /// Inverse of [`SignPattern::canonical_order`].
    pub fn canonical_pattern(&self) -> SignPattern {
        let cp = ChangePreservationPattern(
            self.0
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::P => CpLetter::C,
                    Letter::N => CpLetter::P,
                })
                .collect(),
        );
        SignPattern::from_cp(&cp)
    }

    pub fn to_uvector(&self) -> UVector {
        let mut u = vec![0];
        for l in &self.0 {
            match l {
                Letter::N => *u.last_mut().unwrap() += 1,
                Letter::P => u.push(0),
            }
        }
        UVector(u)
    }

    pub fn from_uvector(u: &UVector) -> Self {
        let mut letters = Vec::new();
        for (i, &count) in u.0.iter().enumerate() {
            if i > 0 {
                letters.push(Letter::P);
            }
            letters.extend(std::iter::repeat_n(Letter::N, count));
        }
        ModuliOrder(letters)
    }

    /// Orders obtained by swapping one adjacent `PN`/`NP` pair, with the index of
    /// the lower position of the swap.
    pub fn neighbors_with_position(&self) -> Vec<(usize, ModuliOrder)> {
        (0..self.len().saturating_sub(1))
            .filter(|&i| self.0[i] != self.0[i + 1])
            .map(|i| {
                let mut letters = self.0.clone();
                letters.swap(i, i + 1);
                (i, ModuliOrder(letters))
            })
            .collect()
    }

    pub fn neighbors(&self) -> Vec<ModuliOrder> {
        let mut out: Vec<_> = self.neighbors_with_position().into_iter().map(|(_, o)| o).collect();
        out.sort();
        out
    }

    /// Prepends a letter (the new root has the smallest modulus).
    pub fn prepended(&self, letter: Letter) -> Self {
        let mut letters = Vec::with_capacity(self.len() + 1);
        letters.push(letter);
        letters.extend_from_slice(&self.0);
        ModuliOrder(letters)
    }
}

impl fmt::Display for ModuliOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for l in &self.0 {
            write!(f, "{}", l.as_char())?;
        }
        Ok(())
    }
}

impl FromStr for ModuliOrder {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let text = s.trim();
        if text.starts_with('[') {
            let u: UVector = text.parse()?;
            return Ok(ModuliOrder::from_uvector(&u));
        }
        let letters = text
            .chars()
            .map(|c| match c {
                'P' | 'p' => Some(Letter::P),
                'N' | 'n' => Some(Letter::N),
                _ => None,
            })
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| Error::InvalidOrder(s.to_string()))?;
        ModuliOrder::new(letters).map_err(|_| Error::InvalidOrder(s.to_string()))
    }
}

/// Counts of negative-root moduli in the intervals cut out by the positive-root
/// moduli, from the origin outwards.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UVector(Vec<usize>);

impl UVector {
    pub fn new(u: Vec<usize>) -> Result<Self> {
        if u.is_empty() {
            return Err(Error::InvalidUVector("[]".into()));
        }
        Ok(UVector(u))
    }

    pub fn components(&self) -> &[usize] {
        &self.0
    }

    /// Vectors obtained by moving one unit between adjacent components.
    pub fn neighbors(&self) -> Vec<UVector> {
        let mut out = BTreeSet::new();
        for i in 0..self.0.len().saturating_sub(1) {
            if self.0[i] > 0 {
                let mut v = self.0.clone();
                v[i] -= 1;
                v[i + 1] += 1;
                out.insert(UVector(v));
            }
            if self.0[i + 1] > 0 {
                let mut v = self.0.clone();
                v[i] += 1;
                v[i + 1] -= 1;
                out.insert(UVector(v));
            }
        }
        out.into_iter().collect()
    }
}

impl fmt::Display for UVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|u| u.to_string()).collect();
        write!(f, "[{}]", parts.join(","))
    }
}

impl FromStr for UVector {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('[')
            .and_then(|t| t.strip_suffix(']'))
            .ok_or_else(|| Error::InvalidUVector(s.to_string()))?;
        let u = inner
            .split(',')
            .map(|p| p.trim().parse::<usize>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| Error::InvalidUVector(s.to_string()))?;
        UVector::new(u)
    }
}

/// A (sign pattern, order of moduli) pair. Not necessarily compatible.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Couple {
    pub pattern: SignPattern,
    pub order: ModuliOrder,
}

impl Couple {
    pub fn new(pattern: SignPattern, order: ModuliOrder) -> Self {
        Couple { pattern, order }
    }

    pub fn degree(&self) -> usize {
        self.pattern.degree()
    }

    pub fn is_compatible(&self) -> Result<bool> {
        is_compatible(&self.pattern, &self.order)
    }

    /// Errors unless the couple is compatible.
    pub fn ensure_compatible(&self) -> Result<()> {
        if self.is_compatible()? {
            Ok(())
        } else {
            Err(Error::Incompatible { pattern: self.pattern.to_string(), order: self.order.to_string() })
        }
    }
}

impl fmt::Display for Couple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.pattern, self.order)
    }
}

/// Compatible iff the sign changes match the `P` letters (and so preservations
/// match the `N` letters).
pub fn is_compatible(pattern: &SignPattern, order: &ModuliOrder) -> Result<bool> {
    if pattern.degree() != order.len() {
        return Err(Error::LengthMismatch { pattern: pattern.degree(), order: order.len() });
    }
    let (changes, preservations) = pattern.descartes_counts();
    Ok(changes == order.count_p() && preservations == order.count_n())
}

/// All sign patterns of degree `degree` with `changes` sign changes, in
/// lexicographic order with `+ < -`.
pub fn enumerate_patterns(degree: usize, changes: usize) -> Result<Vec<SignPattern>> {
    if degree == 0 || changes > degree {
        return Err(Error::OutOfRange(format!("degree {degree}, changes {changes}")));
    }
    fn walk(signs: &mut Vec<Sign>, remaining: usize, changes_left: usize, out: &mut Vec<SignPattern>) {
        if remaining == 0 {
            if changes_left == 0 {
                out.push(SignPattern(signs.clone()));
            }
            return;
        }
        if changes_left > remaining {
            return;
        }
        let last = *signs.last().unwrap();
        for next in [Sign::Plus, Sign::Minus] {
            let change = usize::from(next != last);
            if change > changes_left {
                continue;
            }
            signs.push(next);
            walk(signs, remaining - 1, changes_left - change, out);
            signs.pop();
        }
    }
    let mut out = Vec::new();
    walk(&mut vec![Sign::Plus], degree, changes, &mut out);
    Ok(out)
}

/// All orders of length `degree` with `count_p` letters `P`, lexicographic with
/// `P < N`.
pub fn enumerate_orders(degree: usize, count_p: usize) -> Result<Vec<ModuliOrder>> {
    if degree == 0 || count_p > degree {
        return Err(Error::OutOfRange(format!("degree {degree}, P letters {count_p}")));
    }
    fn walk(letters: &mut Vec<Letter>, degree: usize, p_left: usize, out: &mut Vec<ModuliOrder>) {
        let remaining = degree - letters.len();
        if remaining == 0 {
            out.push(ModuliOrder(letters.clone()));
            return;
        }
        if p_left > 0 {
            letters.push(Letter::P);
            walk(letters, degree, p_left - 1, out);
            letters.pop();
        }
        if remaining > p_left {
            letters.push(Letter::N);
            walk(letters, degree, p_left, out);
            letters.pop();
        }
    }
    let mut out = Vec::new();
    walk(&mut Vec::new(), degree, count_p, &mut out);
    Ok(out)
}

/// Every compatible order for a pattern.
pub fn compatible_orders(pattern: &SignPattern) -> Vec<ModuliOrder> {
    let (changes, _) = pattern.descartes_counts();
    enumerate_orders(pattern.degree(), changes).expect("counts are in range")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sp(s: &str) -> SignPattern {
        s.parse().unwrap()
    }

    fn ord(s: &str) -> ModuliOrder {
        s.parse().unwrap()
    }

    fn uv(s: &str) -> UVector {
        s.parse().unwrap()
    }

    #[test]
    fn composition_parsing() {
        assert_eq!(sp("3,1,2,1").to_string(), "+++-++-");
        assert_eq!(sp("+++-++-").composition().to_string(), "3,1,2,1");
        assert_eq!(sp("3,1,2,1").label(), "Σ_{3,1,2,1}");
    }

    #[test]
    fn leading_minus_is_normalized() {
        assert_eq!(sp("---+--+"), sp("3,1,2,1"));
        assert_eq!(sp("\u{2212}+"), sp("+-"));
    }

    #[test]
    fn malformed_inputs() {
        assert!("+".parse::<SignPattern>().is_err());
        assert!("+x-".parse::<SignPattern>().is_err());
        assert!("3,0,1".parse::<SignPattern>().is_err());
        assert!("PQN".parse::<ModuliOrder>().is_err());
        assert!("".parse::<ModuliOrder>().is_err());
        assert!("[1,2".parse::<UVector>().is_err());
    }

    #[test]
    fn cp_examples() {
        assert_eq!(sp("3,1,2,1").to_cp().to_string(), "ppccpc");
        assert_eq!(SignPattern::all_plus(6).unwrap().to_cp().to_string(), "pppppp");
        assert_eq!(sp("+-").to_cp().to_string(), "c");
        let cp: ChangePreservationPattern = "ppccpc".parse().unwrap();
        assert_eq!(SignPattern::from_cp(&cp), sp("3,1,2,1"));
    }

    #[test]
    fn descartes_examples() {
        assert_eq!(sp("3,1,3").descartes_counts(), (2, 4));
        assert_eq!(sp("1,1,3,1,1").descartes_counts(), (4, 2));
        assert_eq!(SignPattern::all_plus(6).unwrap().descartes_counts(), (0, 6));
    }

    #[test]
    fn canonical_order_examples() {
        assert_eq!(sp("3,1,2,1").canonical_order(), ord("PNPPNN"));
        assert_eq!(sp("2,1,2,2").canonical_order(), ord("NPNPPN"));
        assert_eq!(sp("3,2,1,1").canonical_order(), ord("PPNPNN"));
    }

    #[test]
    fn canonical_pattern_examples() {
        assert!(sp("4,1,1,1").is_canonical());
        assert!(!sp("3,1,2,1").is_canonical());
        assert!(sp("1,3,1,2").is_canonical());
    }

    #[test]
    fn rigid_examples() {
        assert!(ord("PNPNPN").is_rigid());
        assert!(ord("NPNPNP").is_rigid());
        assert!(!ord("PPNNPN").is_rigid());
        assert_eq!(ord("PNPNPN").rigid_sign_pattern().unwrap(), sp("2,2,2,1"));
        assert_eq!(ord("NPNPNP").rigid_sign_pattern().unwrap(), sp("1,2,2,2"));
        assert_eq!(ord("NNNNNN").rigid_sign_pattern().unwrap(), SignPattern::all_plus(6).unwrap());
        assert!(matches!(ord("PPNNPN").rigid_sign_pattern(), Err(Error::NotRigid(_))));
    }

    #[test]
    fn compatibility_examples() {
        assert!(is_compatible(&sp("3,1,2,1"), &ord("PPPNNN")).unwrap());
        assert!(!is_compatible(&sp("3,1,2,1"), &ord("NNNNNN")).unwrap());
        assert!(is_compatible(&sp("1,5,1"), &ord("[0,4,0]")).unwrap());
        assert!(matches!(
            is_compatible(&sp("3,1,2,1"), &ord("PPNN")),
            Err(Error::LengthMismatch { pattern: 6, order: 4 })
        ));
    }

    #[test]
    fn uvector_examples() {
        assert_eq!(ord("NNPNNN").to_uvector(), uv("[2,3]"));
        assert_eq!(ord("NPNNPN").to_uvector(), uv("[1,2,1]"));
        assert_eq!(ord("NPPNNP").to_uvector(), uv("[1,0,2,0]"));
        assert_eq!(ModuliOrder::from_uvector(&uv("[1,0,2,0]")), ord("NPPNNP"));
    }

    #[test]
    fn neighbor_examples() {
        let set = |xs: &[&str]| xs.iter().map(|x| uv(x)).collect::<Vec<_>>();
        let mut expected = set(&["[1,1,0,1]", "[0,1,1,1]", "[0,2,1,0]"]);
        expected.sort();
        assert_eq!(uv("[0,2,0,1]").neighbors(), expected);
        let mut expected = set(&["[1,1,0,1]", "[2,0,1,0]"]);
        expected.sort();
        assert_eq!(uv("[2,0,0,1]").neighbors(), expected);
        assert_eq!(uv("[3,0,0,0]").neighbors(), set(&["[2,1,0,0]"]));
    }

    #[test]
    fn order_neighbors_agree_with_uvector_neighbors() {
        for o in enumerate_orders(6, 3).unwrap() {
            let mut via_u: Vec<_> = o.to_uvector().neighbors().iter().map(ModuliOrder::from_uvector).collect();
            via_u.sort();
            assert_eq!(o.neighbors(), via_u, "{o}");
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_patterns(6, 3).unwrap().len(), 20);
        assert_eq!(enumerate_orders(6, 3).unwrap().len(), 20);
        assert_eq!(enumerate_patterns(6, 0).unwrap(), vec![SignPattern::all_plus(6).unwrap()]);
        assert!(enumerate_patterns(6, 7).is_err());
        assert!(enumerate_orders(0, 0).is_err());
    }

    #[test]
    fn enumeration_is_lexicographic() {
        let pats = enumerate_patterns(5, 2).unwrap();
        assert!(pats.windows(2).all(|w| w[0].to_string() < w[1].to_string()));
        let orders = enumerate_orders(5, 2).unwrap();
        assert_eq!(orders.first().unwrap(), &ord("PPNNN"));
        assert_eq!(orders.last().unwrap(), &ord("NNNPP"));
        assert!(orders.windows(2).all(|w| w[0] < w[1]));
    }
}
