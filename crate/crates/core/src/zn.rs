//! Residues modulo `n` and unordered sequences (multisets) over `Z_n`.
//!
//! Text syntax: `n=<int>: <int>,<int>,...` (entries reduced mod n, any order) or
//! `n=<int>:` for the empty sequence. [`ResidueSequence`]'s `Display` emits the
//! canonical form with terms in ascending order and multiplicities expanded.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Largest modulus accepted anywhere in the crate.
pub const MAX_MODULUS: u32 = 1_000_000;

/// The `n` of `Z_n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u32", into = "u32")]
pub struct Modulus(u32);

impl Modulus {
    pub fn new(n: u32) -> Result<Self> {
        if n < 2 {
            return Err(Error::domain(format!(
                "modulus must be at least 2, got {n}"
            )));
        }
        if n > MAX_MODULUS {
            return Err(Error::domain(format!(
                "modulus {n} exceeds the supported maximum {MAX_MODULUS}"
            )));
        }
        Ok(Modulus(n))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    /// Reduces an arbitrary integer into `[0, n)`.
    #[inline]
    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn is_unit(self, g: i64) -> bool {
        (self.reduce(g) as u64).gcd(&(self.0 as u64)) == 1
    }

    /// Multiplicative inverse of a unit `g`.
    pub fn inverse(self, g: i64) -> Option<u32> {
        let n = self.0 as i64;
        let e = self.reduce(g) as i64;
        let ext = e.extended_gcd(&n);
        (ext.gcd == 1).then(|| self.reduce(ext.x))
    }

    /// The units of `Z_n` in increasing order.
    pub fn units(self) -> impl Iterator<Item = u32> {
        let n = self.0;
        (1..n).filter(move |&g| g.gcd(&n) == 1)
    }

    /// Euler's totient of `n`.
    pub fn totient(self) -> u64 {
        self.units().count() as u64
    }
}

impl TryFrom<u32> for Modulus {
    type Error = Error;

    fn try_from(n: u32) -> Result<Self> {
        Modulus::new(n)
    }
}

impl From<Modulus> for u32 {
    fn from(m: Modulus) -> u32 {
        m.0
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// A congruence class modulo `n`, stored as its representative in `[0, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Residue {
    value: u32,
    modulus: Modulus,
}

impl Residue {
    pub fn new(a: i64, modulus: Modulus) -> Self {
        Residue {
            value: modulus.reduce(a),
            modulus,
        }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    /// Least positive integer in the class: `value`, or `n` for the zero class.
    #[inline]
    pub fn bar(self) -> u32 {
        bar_value(self.value, self.modulus)
    }
}

impl fmt::Display for Residue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

/// Least positive integer congruent to `r`; always in `[1, n]`.
pub fn bar(r: Residue) -> u32 {
    r.bar()
}

#[inline]
pub(crate) fn bar_value(value: u32, modulus: Modulus) -> u32 {
    if value == 0 {
        modulus.get()
    } else {
        value
    }
}

/// An unordered sequence over `Z_n`, kept as a multiplicity map.
///
/// Only residues with multiplicity at least one are stored, so structural
/// equality coincides with multiset equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ResidueSequence {
    modulus: Modulus,
    counts: BTreeMap<u32, usize>,
    len: usize,
}

impl ResidueSequence {
    pub fn empty(modulus: Modulus) -> Self {
        ResidueSequence {
            modulus,
            counts: BTreeMap::new(),
            len: 0,
        }
    }

    /// Builds a sequence from arbitrary integers, reducing each mod `n`.
    pub fn from_terms<I>(modulus: Modulus, terms: I) -> Self
    where
        I: IntoIterator<Item = i64>,
    {
        let mut seq = Self::empty(modulus);
        for a in terms {
            seq.push(modulus.reduce(a), 1);
        }
        seq
    }

    /// Builds a sequence from `(residue, multiplicity)` pairs; zero multiplicities are dropped.
    pub fn from_counts<I>(modulus: Modulus, counts: I) -> Self
    where
        I: IntoIterator<Item = (i64, usize)>,
    {
        let mut seq = Self::empty(modulus);
        for (a, m) in counts {
            seq.push(modulus.reduce(a), m);
        }
        seq
    }

    fn push(&mut self, value: u32, count: usize) {
        if count == 0 {
            return;
        }
        *self.counts.entry(value).or_insert(0) += count;
        self.len += count;
    }

    #[inline]
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    #[inline]
    pub fn n(&self) -> u32 {
        self.modulus.get()
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    /// `v_a(S)`.
    pub fn multiplicity(&self, a: i64) -> usize {
        self.counts
            .get(&self.modulus.reduce(a))
            .copied()
            .unwrap_or(0)
    }

    /// Distinct residues with their multiplicities, ascending by residue.
    pub fn iter(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        self.counts.iter().map(|(&a, &m)| (a, m))
    }

    /// Every term with repetition, ascending.
    pub fn terms(&self) -> impl Iterator<Item = u32> + '_ {
        self.iter().flat_map(|(a, m)| std::iter::repeat_n(a, m))
    }

    pub fn distinct_len(&self) -> usize {
        self.counts.len()
    }

    pub fn contains_zero(&self) -> bool {
        self.counts.contains_key(&0)
    }

    /// `max_a v_a(S)`, zero for the empty sequence.
    pub fn max_multiplicity(&self) -> usize {
        self.counts.values().copied().max().unwrap_or(0)
    }

    /// Whether `self` is a sub-multiset of `other` over the same modulus.
    pub fn divides(&self, other: &ResidueSequence) -> bool {
        self.modulus == other.modulus
            && self
                .iter()
                .all(|(a, m)| other.counts.get(&a).is_some_and(|&om| om >= m))
    }

    /// `sigma(S) mod n`.
    pub fn sum_mod(&self) -> Residue {
        let n = self.n() as u64;
        let s = self
            .iter()
            .fold(0u64, |acc, (a, m)| (acc + a as u64 * (m as u64 % n)) % n);
        Residue::new(s as i64, self.modulus)
    }

    /// Integer sum of the bar values of all terms.
    pub fn bar_sum(&self) -> u64 {
        self.iter()
            .map(|(a, m)| bar_value(a, self.modulus) as u64 * m as u64)
            .sum()
    }

    /// Term-wise multiplication by the unit `g`.
    pub fn scale(&self, g: i64) -> Result<ResidueSequence> {
        if !self.modulus.is_unit(g) {
            return Err(Error::domain(format!(
                "scaling factor {g} is not coprime to n = {}",
                self.modulus
            )));
        }
        let n = self.n() as u64;
        let g = self.modulus.reduce(g) as u64;
        Ok(Self::from_counts(
            self.modulus,
            self.iter().map(|(a, m)| ((a as u64 * g % n) as i64, m)),
        ))
    }

    /// Multiset difference `self • other^{-1}`; `other` must divide `self`.
    pub fn remove(&self, other: &ResidueSequence) -> Result<ResidueSequence> {
        if !other.divides(self) {
            return Err(Error::domain(format!("[{other}] does not divide [{self}]")));
        }
        let mut out = self.clone();
        for (a, m) in other.iter() {
            let entry = out.counts.get_mut(&a).expect("divisibility checked");
            *entry -= m;
            if *entry == 0 {
                out.counts.remove(&a);
            }
            out.len -= m;
        }
        Ok(out)
    }
}

/// Parses `n=<int>: a,b,...`.
pub fn parse_sequence(text: &str) -> Result<ResidueSequence> {
    let (modulus, body) = parse_header(text)?;
    let mut seq = ResidueSequence::empty(modulus);
    for token in split_terms(body) {
        let a: i64 = token
            .parse()
            .map_err(|_| Error::parse(token, "expected an integer residue"))?;
        seq.push(modulus.reduce(a), 1);
    }
    Ok(seq)
}

/// Splits `n=<int>: rest` into the modulus and the unparsed term list.
pub(crate) fn parse_header(text: &str) -> Result<(Modulus, &str)> {
    let text = text.trim();
    let rest = text
        .strip_prefix("n=")
        .ok_or_else(|| Error::parse(text, "expected `n=<int>:` prefix"))?;
    let (n_text, body) = rest
        .split_once(':')
        .ok_or_else(|| Error::parse(rest, "missing `:` after the modulus"))?;
    let n_text = n_text.trim();
    let n: u32 = n_text
        .parse()
        .map_err(|_| Error::parse(n_text, "modulus is not a non-negative integer"))?;
    Ok((Modulus::new(n)?, body))
}

/// Comma-separated tokens; an all-blank body yields no tokens.
pub(crate) fn split_terms(body: &str) -> impl Iterator<Item = &str> {
    let blank = body.trim().is_empty();
    body.split(',').map(str::trim).take_while(move |_| !blank)
}

/// Sum of the terms mod `n` and the integer bar-sum; `(0, 0)` for the empty sequence.
pub fn sums(seq: &ResidueSequence) -> (Residue, u64) {
    (seq.sum_mod(), seq.bar_sum())
}

/// See [`ResidueSequence::scale`].
pub fn scale(seq: &ResidueSequence, g: i64) -> Result<ResidueSequence> {
    seq.scale(g)
}

impl FromStr for ResidueSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_sequence(s)
    }
}

impl fmt::Display for ResidueSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}:", self.modulus)?;
        for (i, a) in self.terms().enumerate() {
            let sep = if i == 0 { " " } else { "," };
            write!(f, "{sep}{a}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    #[test]
    fn parse_examples() {
        let s = parse_sequence("n=5: 1,3").unwrap();
        assert_eq!(s, ResidueSequence::from_counts(m(5), [(1, 1), (3, 1)]));
        let s = parse_sequence("n=5: 3,3,3,3").unwrap();
        assert_eq!(s.multiplicity(3), 4);
        assert_eq!(s.distinct_len(), 1);
        let s = parse_sequence("n=7: 8,1").unwrap();
        assert_eq!(s, ResidueSequence::from_counts(m(7), [(1, 2)]));
        let s = parse_sequence("n=7:").unwrap();
        assert!(s.is_empty());
        let s = parse_sequence("  n=7 :   ").unwrap();
        assert!(s.is_empty());
        assert_eq!(parse_sequence("n=6: -1").unwrap().multiplicity(5), 1);
    }

    #[test]
    fn parse_errors() {
        match parse_sequence("n=5: 1,x") {
            Err(Error::Parse { token, .. }) => assert_eq!(token, "x"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(
            parse_sequence("n=5: 1,,2"),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(parse_sequence("5: 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_sequence("n=5 1"), Err(Error::Parse { .. })));
        assert!(matches!(parse_sequence("n=1: 0"), Err(Error::Domain(_))));
        assert!(matches!(parse_sequence("n=0:"), Err(Error::Domain(_))));
    }

    #[test]
    fn canonical_format() {
        let s = parse_sequence("n=7: 3,1,3,2").unwrap();
        assert_eq!(s.to_string(), "n=7: 1,2,3,3");
        assert_eq!(ResidueSequence::empty(m(4)).to_string(), "n=4:");
    }

    #[test]
    fn bar_examples() {
        assert_eq!(bar(Residue::new(7, m(5))), 2);
        assert_eq!(bar(Residue::new(0, m(5))), 5);
        assert_eq!(bar(Residue::new(4, m(5))), 4);
    }

    #[test]
    fn scale_examples() {
        let s = parse_sequence("n=5: 1,3").unwrap();
        assert_eq!(scale(&s, 2).unwrap(), parse_sequence("n=5: 2,1").unwrap());
        assert_eq!(scale(&s, 1).unwrap(), s);
        let s = parse_sequence("n=5: 3,3,3,3").unwrap();
        assert_eq!(
            scale(&s, 2).unwrap(),
            parse_sequence("n=5: 1,1,1,1").unwrap()
        );
        assert!(matches!(
            scale(&parse_sequence("n=6: 1").unwrap(), 2),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn sums_examples() {
        let check = |text: &str, md: u32, bs: u64| {
            let (r, b) = sums(&parse_sequence(text).unwrap());
            assert_eq!((r.value(), b), (md, bs), "{text}");
        };
        check("n=5: 1,3", 4, 4);
        check("n=5: 2,2", 4, 4);
        check("n=5: 3,3,3,3", 2, 12);
        check("n=5:", 0, 0);
    }

    #[test]
    fn remove_and_divides() {
        let s = parse_sequence("n=7: 1,1,1,2").unwrap();
        let t = parse_sequence("n=7: 1,2").unwrap();
        assert!(t.divides(&s));
        assert_eq!(s.remove(&t).unwrap(), parse_sequence("n=7: 1,1").unwrap());
        assert!(s.remove(&s).unwrap().is_empty());
        assert!(s.remove(&parse_sequence("n=7: 2,2").unwrap()).is_err());
        assert!(!parse_sequence("n=5: 1").unwrap().divides(&s));
    }

    #[test]
    fn modulus_helpers() {
        assert_eq!(m(12).units().collect::<Vec<_>>(), vec![1, 5, 7, 11]);
        assert_eq!(m(7).inverse(3), Some(5));
        assert_eq!(m(8).inverse(2), None);
        assert_eq!(m(9).totient(), 6);
    }
}
