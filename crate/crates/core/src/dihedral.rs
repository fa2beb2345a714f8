//! The dihedral group `D_2n = <x, y | x² = yⁿ = 1, yx = xy⁻¹>` in normal form
//! `x^ε y^a`, sequences over it, and the classification of product-one free
//! sequences of maximal length `n`.
//!
//! Multiplication in normal form:
//!
//! ```text
//! (x^ε y^a) · (x^δ y^b) = x^(ε+δ) y^((-1)^δ a + b)
//! ```
//!
//! Text syntax: `r<a>` is `y^a`, `s<a>` is `x y^a`, and a sequence is written
//! `D n=<int>: term,term,...`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::enumerate::{self, Root};
use crate::group::{ElementId, GroupSpec};
use crate::products::{mask_members, product_one_free, ProductDp};
use crate::zn::{split_terms, Modulus};
use crate::{Error, Result};

/// Default largest `n` for [`verify_classification`].
pub const CLASSIFICATION_BUDGET: u32 = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralElement {
    reflection: bool,
    rotation: u32,
    modulus: Modulus,
}

impl DihedralElement {
    pub fn new(reflection: bool, rotation: i64, modulus: Modulus) -> Self {
        DihedralElement {
            reflection,
            rotation: modulus.reduce(rotation),
            modulus,
        }
    }

    pub fn identity(modulus: Modulus) -> Self {
        Self::new(false, 0, modulus)
    }

    /// `y^a`.
    pub fn rotation_by(a: i64, modulus: Modulus) -> Self {
        Self::new(false, a, modulus)
    }

    /// `x y^a`.
    pub fn reflection_by(a: i64, modulus: Modulus) -> Self {
        Self::new(true, a, modulus)
    }

    pub fn is_reflection(self) -> bool {
        self.reflection
    }

    pub fn rotation(self) -> u32 {
        self.rotation
    }

    pub fn modulus(self) -> Modulus {
        self.modulus
    }

    pub fn is_identity(self) -> bool {
        !self.reflection && self.rotation == 0
    }

    /// Fallible because the operands may live in different dihedral groups.
    #[allow(clippy::should_implement_trait)]
    pub fn mul(self, other: Self) -> Result<Self> {
        if self.modulus != other.modulus {
            return Err(Error::domain(format!(
                "cannot multiply elements of D_{} and D_{}",
                2 * self.modulus.get(),
                2 * other.modulus.get()
            )));
        }
        Ok(self.mul_same(other))
    }

    /// [`Self::mul`] for operands already known to share a modulus.
    pub(crate) fn mul_same(self, other: Self) -> Self {
        let a = self.rotation as i64;
        let b = other.rotation as i64;
        let twisted = if other.reflection { -a } else { a };
        Self::new(
            self.reflection ^ other.reflection,
            twisted + b,
            self.modulus,
        )
    }

    pub fn inverse(self) -> Self {
        if self.reflection {
            self
        } else {
            Self::new(false, -(self.rotation as i64), self.modulus)
        }
    }

    /// Position in [`GroupSpec::dihedral`]: rotations first, then reflections.
    pub fn id(self) -> ElementId {
        self.rotation as usize
            + if self.reflection {
                self.modulus.get() as usize
            } else {
                0
            }
    }

    pub fn from_id(id: ElementId, modulus: Modulus) -> Self {
        let n = modulus.get() as usize;
        Self::new(id >= n, (id % n) as i64, modulus)
    }

    fn parse_term(token: &str, modulus: Modulus) -> Result<Self> {
        let (reflection, digits) = if let Some(d) = token.strip_prefix('r') {
            (false, d)
        } else if let Some(d) = token.strip_prefix('s') {
            (true, d)
        } else {
            return Err(Error::parse(token, "dihedral term must be r<a> or s<a>"));
        };
        let a: i64 = digits
            .parse()
            .map_err(|_| Error::parse(token, "expected an integer exponent"))?;
        Ok(Self::new(reflection, a, modulus))
    }
}

impl fmt::Display for DihedralElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.reflection { 's' } else { 'r' };
        write!(f, "{tag}{}", self.rotation)
    }
}

pub fn dihedral_mul(u: DihedralElement, v: DihedralElement) -> Result<DihedralElement> {
    u.mul(v)
}

/// Unordered sequence over `D_2n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DihedralSequence {
    modulus: Modulus,
    counts: BTreeMap<DihedralElement, usize>,
    len: usize,
}

impl DihedralSequence {
    pub fn new(modulus: Modulus) -> Result<Self> {
        if modulus.get() < 3 {
            return Err(Error::domain(format!(
                "dihedral sequences need n >= 3, got {modulus}"
            )));
        }
        Ok(DihedralSequence {
            modulus,
            counts: BTreeMap::new(),
            len: 0,
        })
    }

    pub fn from_elements<I>(modulus: Modulus, elems: I) -> Result<Self>
    where
        I: IntoIterator<Item = DihedralElement>,
    {
        let mut seq = Self::new(modulus)?;
        for e in elems {
            if e.modulus != modulus {
                return Err(Error::domain(format!(
                    "{e} is not an element of D_{}",
                    2 * modulus.get()
                )));
            }
            *seq.counts.entry(e).or_insert(0) += 1;
            seq.len += 1;
        }
        Ok(seq)
    }

    pub fn from_ids(modulus: Modulus, ids: &[ElementId]) -> Result<Self> {
        Self::from_elements(
            modulus,
            ids.iter().map(|&id| DihedralElement::from_id(id, modulus)),
        )
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn multiplicity(&self, e: DihedralElement) -> usize {
        self.counts.get(&e).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (DihedralElement, usize)> + '_ {
        self.counts.iter().map(|(&e, &c)| (e, c))
    }

    /// Every term with repetition, ascending (rotations before reflections).
    pub fn elements(&self) -> impl Iterator<Item = DihedralElement> + '_ {
        self.iter().flat_map(|(e, c)| std::iter::repeat_n(e, c))
    }

    /// Number of terms in the rotation subgroup `<y>`.
    pub fn rotation_count(&self) -> usize {
        self.iter()
            .filter(|(e, _)| !e.reflection)
            .map(|(_, c)| c)
            .sum()
    }

    pub fn divides(&self, other: &DihedralSequence) -> bool {
        self.modulus == other.modulus && self.iter().all(|(e, c)| other.multiplicity(e) >= c)
    }

    fn runs(&self) -> Vec<(ElementId, usize)> {
        self.iter().map(|(e, c)| (e.id(), c)).collect()
    }

    fn group(&self) -> Result<GroupSpec> {
        GroupSpec::dihedral(self.modulus.get())
    }
}

impl FromStr for DihedralSequence {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_dihedral_sequence(s)
    }
}

/// Parses `D n=<int>: r<a>,s<b>,...`.
pub fn parse_dihedral_sequence(text: &str) -> Result<DihedralSequence> {
    let text = text.trim();
    let rest = text
        .strip_prefix('D')
        .ok_or_else(|| Error::parse(text, "expected `D n=<int>:` prefix"))?;
    let (modulus, body) = crate::zn::parse_header(rest)?;
    let mut elems = Vec::new();
    for token in split_terms(body) {
        elems.push(DihedralElement::parse_term(token, modulus)?);
    }
    DihedralSequence::from_elements(modulus, elems)
}

impl fmt::Display for DihedralSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D n={}:", self.modulus)?;
        for (i, e) in self.elements().enumerate() {
            let sep = if i == 0 { " " } else { "," };
            write!(f, "{sep}{e}")?;
        }
        Ok(())
    }
}

/// An ordering of a nonempty sub-multiset and its left-to-right product.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductWitness {
    pub ordered_terms: Vec<DihedralElement>,
    pub product: DihedralElement,
}

impl ProductWitness {
    pub fn is_valid_for(&self, seq: &DihedralSequence) -> bool {
        let Some((&first, rest)) = self.ordered_terms.split_first() else {
            return false;
        };
        let Ok(prod) = rest.iter().try_fold(first, |acc, &t| acc.mul(t)) else {
            return false;
        };
        prod == self.product
            && DihedralSequence::from_elements(seq.modulus, self.ordered_terms.iter().copied())
                .is_ok_and(|sub| sub.divides(seq))
    }
}

fn nonempty(seq: &DihedralSequence) -> Result<()> {
    if seq.is_empty() {
        Err(Error::domain("operation needs a nonempty sequence"))
    } else {
        Ok(())
    }
}

fn to_elements(mask: u64, modulus: Modulus) -> BTreeSet<DihedralElement> {
    mask_members(mask)
        .into_iter()
        .map(|id| DihedralElement::from_id(id, modulus))
        .collect()
}

/// `π(S)`: products of all orderings of the whole sequence.
pub fn pi_products(seq: &DihedralSequence) -> Result<BTreeSet<DihedralElement>> {
    nonempty(seq)?;
    let group = seq.group()?;
    let dp = ProductDp::build(&group, &seq.runs())?;
    Ok(to_elements(dp.pi(), seq.modulus))
}

/// `Π(S)`: products of all orderings of all nonempty sub-multisets.
pub fn big_pi(seq: &DihedralSequence) -> Result<BTreeSet<DihedralElement>> {
    nonempty(seq)?;
    let group = seq.group()?;
    let dp = ProductDp::build(&group, &seq.runs())?;
    Ok(to_elements(dp.big_pi(), seq.modulus))
}

/// Whether `1 ∉ Π(S)`; otherwise an ordering of a smallest sub-multiset with product one.
pub fn is_product_one_free(seq: &DihedralSequence) -> Result<(bool, Option<ProductWitness>)> {
    nonempty(seq)?;
    let group = seq.group()?;
    let ids: Vec<ElementId> = seq.elements().map(DihedralElement::id).collect();
    let (free, witness) = product_one_free(&group, &ids)?;
    let witness = witness.map(|w| ProductWitness {
        ordered_terms: w
            .into_iter()
            .map(|id| DihedralElement::from_id(id, seq.modulus))
            .collect(),
        product: DihedralElement::identity(seq.modulus),
    });
    Ok((free, witness))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationReport {
    pub n: u32,
    pub found_count: u64,
    pub expected_count: u64,
    pub matches_family: bool,
    /// Product-one free sequences outside the predicted family, in canonical text.
    pub extras: Vec<String>,
    /// Family members that failed to be product-one free, in canonical text.
    pub missing: Vec<String>,
}

/// The predicted product-one free sequences of length `n`: `(y^t)^[n-1] • x y^s`
/// for units `t` and any `s`, plus `x • xy • xy²` when `n = 3`.
pub fn extremal_family(n: u32) -> Result<BTreeSet<DihedralSequence>> {
    let m = Modulus::new(n)?;
    if n < 3 {
        return Err(Error::domain(format!("need n >= 3, got {n}")));
    }
    let mut family = BTreeSet::new();
    for t in m.units() {
        for s in 0..n {
            let elems =
                std::iter::repeat_n(DihedralElement::rotation_by(t as i64, m), n as usize - 1)
                    .chain([DihedralElement::reflection_by(s as i64, m)]);
            family.insert(DihedralSequence::from_elements(m, elems)?);
        }
    }
    if n == 3 {
        let elems = (0..3).map(|s| DihedralElement::reflection_by(s, m));
        family.insert(DihedralSequence::from_elements(m, elems)?);
    }
    Ok(family)
}

/// Alphabet positions of [`GroupSpec::dihedral`] used by the classification
/// search: every non-identity element. Each position is one independent chunk.
pub fn classification_chunks(n: u32) -> Vec<usize> {
    (0..2 * n as usize - 1).collect()
}

/// Product-one free sequences of length `n` over `D_2n` whose smallest term is
/// alphabet position `chunk`, in canonical order.
pub fn classify_chunk(n: u32, chunk: usize) -> Result<Vec<DihedralSequence>> {
    let group = GroupSpec::dihedral(n)?;
    let m = Modulus::new(n)?;
    let alphabet: Vec<ElementId> = (1..group.order()).collect();
    let mut found = Vec::new();
    let mut failure = None;
    enumerate::search(
        &alphabet,
        n as usize,
        Root::First(chunk),
        &(),
        |_, prefix, g| {
            let mut terms = prefix.to_vec();
            terms.push(g);
            match product_one_free(&group, &terms) {
                Ok((true, _)) => Some(()),
                Ok((false, _)) => None,
                Err(e) => {
                    failure.get_or_insert(e);
                    None
                }
            }
        },
        |terms, _| {
            if terms.len() == n as usize {
                found.push(terms.to_vec());
            }
        },
    );
    if let Some(e) = failure {
        return Err(e);
    }
    found
        .iter()
        .map(|ids| DihedralSequence::from_ids(m, ids))
        .collect()
}

/// Compares the product-one free sequences found by search with the predicted family.
pub fn classification_report(n: u32, found: &[DihedralSequence]) -> Result<ClassificationReport> {
    let family = extremal_family(n)?;
    let found_set: BTreeSet<&DihedralSequence> = found.iter().collect();
    let extras = found
        .iter()
        .filter(|s| !family.contains(*s))
        .map(|s| s.to_string())
        .collect::<Vec<_>>();
    let missing = family
        .iter()
        .filter(|s| !found_set.contains(s))
        .map(|s| s.to_string())
        .collect::<Vec<_>>();
    Ok(ClassificationReport {
        n,
        found_count: found.len() as u64,
        expected_count: family.len() as u64,
        matches_family: extras.is_empty() && missing.is_empty(),
        extras,
        missing,
    })
}

pub fn verify_classification(n: u32) -> Result<ClassificationReport> {
    verify_classification_with_budget(n, CLASSIFICATION_BUDGET)
}

/// Enumerates every product-one free length-`n` sequence over `D_2n` (prefix
/// pruned: sub-multisets of product-one free sequences are product-one free).
pub fn verify_classification_with_budget(n: u32, budget: u32) -> Result<ClassificationReport> {
    if n < 3 || n > budget {
        return Err(Error::Budget(format!(
            "classification needs 3 <= n <= {budget}, got {n}"
        )));
    }
    let mut found = Vec::new();
    for chunk in classification_chunks(n) {
        found.extend(classify_chunk(n, chunk)?);
    }
    classification_report(n, &found)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: u32) -> Modulus {
        Modulus::new(n).unwrap()
    }

    fn d(text: &str) -> DihedralSequence {
        text.parse().unwrap()
    }

    #[test]
    fn multiplication_examples() {
        let n = m(3);
        let xy = DihedralElement::reflection_by(1, n);
        let y = DihedralElement::rotation_by(1, n);
        let x = DihedralElement::reflection_by(0, n);
        assert!(dihedral_mul(xy, xy).unwrap().is_identity());
        assert_eq!(
            dihedral_mul(y, x).unwrap(),
            DihedralElement::reflection_by(2, n)
        );
        assert_eq!(
            dihedral_mul(y, y).unwrap(),
            DihedralElement::rotation_by(2, n)
        );
        assert!(dihedral_mul(y, DihedralElement::rotation_by(1, m(4))).is_err());
    }

    #[test]
    fn group_axioms_exhaustive() {
        for n in 3..=8 {
            let md = m(n);
            let all: Vec<_> = (0..2 * n as usize)
                .map(|id| DihedralElement::from_id(id, md))
                .collect();
            let e = DihedralElement::identity(md);
            for &a in &all {
                assert_eq!(a.mul(e).unwrap(), a);
                assert_eq!(e.mul(a).unwrap(), a);
                assert!(a.mul(a.inverse()).unwrap().is_identity());
                for &b in &all {
                    let ab = a.mul(b).unwrap();
                    for &c in &all {
                        assert_eq!(ab.mul(c).unwrap(), a.mul(b.mul(c).unwrap()).unwrap());
                    }
                }
            }
            // presentation: x² = yⁿ = 1, yx = xy⁻¹
            let x = DihedralElement::reflection_by(0, md);
            let y = DihedralElement::rotation_by(1, md);
            assert!(x.mul(x).unwrap().is_identity());
            let yn = (0..n).fold(e, |acc, _| acc.mul(y).unwrap());
            assert!(yn.is_identity());
            assert_eq!(y.mul(x).unwrap(), x.mul(y.inverse()).unwrap());
        }
    }

    #[test]
    fn parse_and_format() {
        let s = d("D n=3: s0,r1");
        assert_eq!(s.to_string(), "D n=3: r1,s0");
        assert_eq!(d("D n=4: r5").to_string(), "D n=4: r1");
        assert_eq!(d("D n=4:").len(), 0);
        assert!(matches!(
            "D n=4: q1".parse::<DihedralSequence>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "n=4: r1".parse::<DihedralSequence>(),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            "D n=2: r1".parse::<DihedralSequence>(),
            Err(Error::Domain(_))
        ));
        assert_eq!(s.rotation_count(), 1);
    }

    #[test]
    fn pi_examples() {
        let set = |v: &[&str], n: u32| -> BTreeSet<DihedralElement> {
            v.iter()
                .map(|t| DihedralElement::parse_term(t, m(n)).unwrap())
                .collect()
        };
        assert_eq!(
            pi_products(&d("D n=3: s0,r1")).unwrap(),
            set(&["s1", "s2"], 3)
        );
        assert_eq!(pi_products(&d("D n=3: r1,r1")).unwrap(), set(&["r2"], 3));
        assert_eq!(pi_products(&d("D n=3: s0,s0")).unwrap(), set(&["r0"], 3));
        assert!(pi_products(&d("D n=3:")).is_err());
    }

    #[test]
    fn big_pi_examples() {
        let got = big_pi(&d("D n=3: s0,s1")).unwrap();
        let want: BTreeSet<_> = ["s0", "s1", "r1", "r2"]
            .iter()
            .map(|t| DihedralElement::parse_term(t, m(3)).unwrap())
            .collect();
        assert_eq!(got, want);
        assert!(!big_pi(&d("D n=3: r1,r1,s0"))
            .unwrap()
            .contains(&DihedralElement::identity(m(3))));
        assert_eq!(big_pi(&d("D n=3: r1")).unwrap().len(), 1);
    }

    #[test]
    fn product_one_free_examples() {
        let (free, w) = is_product_one_free(&d("D n=3: s0,s1,s2")).unwrap();
        assert!(free && w.is_none());

        let s = d("D n=3: s0,s0");
        let (free, w) = is_product_one_free(&s).unwrap();
        let w = w.unwrap();
        assert!(!free);
        assert_eq!(
            w.ordered_terms,
            vec![DihedralElement::reflection_by(0, m(3)); 2]
        );
        assert!(w.is_valid_for(&s));

        let s = d("D n=3: r1,r1,r1");
        let (free, w) = is_product_one_free(&s).unwrap();
        assert!(!free);
        assert_eq!(w.unwrap().ordered_terms.len(), 3);
    }

    #[test]
    fn family_sizes() {
        assert_eq!(extremal_family(3).unwrap().len(), 7);
        assert_eq!(extremal_family(4).unwrap().len(), 8);
        assert_eq!(extremal_family(5).unwrap().len(), 20);
        assert_eq!(extremal_family(6).unwrap().len(), 12);
    }

    #[test]
    fn classification_small() {
        for (n, count) in [(3, 7), (4, 8), (5, 20)] {
            let r = verify_classification(n).unwrap();
            assert_eq!(r.found_count, count);
            assert!(r.matches_family, "{r:?}");
        }
        assert!(matches!(verify_classification(9), Err(Error::Budget(_))));
        assert!(matches!(verify_classification(2), Err(Error::Budget(_))));
    }

    #[test]
    fn report_flags_extras_and_missing() {
        let mut found: Vec<_> = extremal_family(4).unwrap().into_iter().collect();
        found.pop();
        found.push(d("D n=4: r1,r1,r1,r1"));
        let r = classification_report(4, &found).unwrap();
        assert!(!r.matches_family);
        assert_eq!(r.extras, vec!["D n=4: r1,r1,r1,r1".to_string()]);
        assert_eq!(r.missing.len(), 1);
    }
}
