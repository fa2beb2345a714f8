//! Subsequence-sum sets of sequences over `Z_n`.
//!
//! Two readings of `Σ(S)` are provided: the modular one (sums of nonempty
//! sub-multisets reduced mod `n`) and the integer one, where each term is
//! replaced by its bar value and sums are taken over the integers. The interval
//! theorem is a statement about the integer reading: a zero-sum free `S` of length
//! `n - k` with `n ≥ 2k + 1` and bar-sum at most `n - 1` realises every integer in
//! `[1, bar-sum]`.
//!
//! Both sets come from a bit-vector DP that folds the terms in one at a time.
//! Witnesses are recovered from the integer DP by remembering, for each total,
//! the first term whose fold made it reachable.

use serde::{Deserialize, Serialize};

use crate::bitset::Bitset;
use crate::zn::{bar_value, Modulus, ResidueSequence};
use crate::{Error, Result};

/// `Σ(S)` reduced mod `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumSetMod {
    modulus: Modulus,
    bits: Bitset,
}

impl SubsumSetMod {
    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn contains(&self, r: u32) -> bool {
        self.bits.get(r as usize)
    }

    pub fn members(&self) -> Vec<u32> {
        self.bits.iter_ones().map(|i| i as u32).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Integer bar-sums of nonempty sub-multisets; `upper` is the bar-sum of the whole sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SubsumSetInt {
    upper: u64,
    bits: Bitset,
}

impl SubsumSetInt {
    pub fn upper(&self) -> u64 {
        self.upper
    }

    pub fn contains(&self, t: u64) -> bool {
        t <= self.upper && self.bits.get(t as usize)
    }

    pub fn members(&self) -> Vec<u64> {
        self.bits.iter_ones().map(|i| i as u64).collect()
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Integers of `[1, upper]` that are not realised.
    pub fn missing(&self) -> Vec<u64> {
        (1..=self.upper).filter(|&t| !self.contains(t)).collect()
    }
}

/// A nonempty sub-multiset of `S` whose bar-sum is `target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalWitness {
    pub subsequence: ResidueSequence,
    pub target: u64,
}

impl IntervalWitness {
    /// Re-checks the certificate against `seq` by direct summation.
    pub fn is_valid_for(&self, seq: &ResidueSequence) -> bool {
        !self.subsequence.is_empty()
            && self.subsequence.divides(seq)
            && self.subsequence.bar_sum() == self.target
    }
}

/// Outcome of checking the interval theorem and its corollary on one sequence.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TheoremReport {
    pub hypotheses_met: bool,
    /// Names of the hypotheses that fail; empty iff `hypotheses_met`.
    pub failed_hypotheses: Vec<String>,
    pub n: u32,
    pub k: i64,
    pub sigma_bar: u64,
    pub equality_holds: bool,
    pub missing_targets: Vec<u64>,
    pub corollary_holds: bool,
}

pub const HYP_RANGE: &str = "n >= 2k+1 >= 3";
pub const HYP_ZERO_SUM_FREE: &str = "zero-sum free";
pub const HYP_BAR_SUM: &str = "bar-sum <= n-1";

/// Sums of nonempty sub-multisets mod `n`. Empty for the empty sequence.
pub fn subsums_mod(seq: &ResidueSequence) -> SubsumSetMod {
    let n = seq.n() as usize;
    let mut reach = Bitset::new(n);
    for (a, m) in seq.iter() {
        for _ in 0..m {
            let prev = reach.clone();
            reach.or_rotl(&prev, a as usize);
            reach.set(a as usize);
            if reach == prev {
                break;
            }
        }
    }
    SubsumSetMod {
        modulus: seq.modulus(),
        bits: reach,
    }
}

/// `0 ∉ Σ(S)`; vacuously true for the empty sequence.
pub fn is_zero_sum_free(seq: &ResidueSequence) -> bool {
    !seq.contains_zero() && !subsums_mod(seq).contains(0)
}

/// Integer bar-sums of nonempty sub-multisets.
pub fn subsums_int(seq: &ResidueSequence) -> SubsumSetInt {
    let upper = seq.bar_sum();
    let mut reach = Bitset::new(upper as usize + 1);
    reach.set(0);
    for (a, m) in seq.iter() {
        let b = bar_value(a, seq.modulus()) as usize;
        for _ in 0..m {
            let prev = reach.clone();
            reach.or_shl(&prev, b);
        }
    }
    reach.clear(0);
    SubsumSetInt { upper, bits: reach }
}

/// Integer subset-sum DP over the individual terms, truncated at `cap`.
struct WitnessDp {
    modulus: Modulus,
    /// Residue of each item, ordered by ascending bar value.
    items: Vec<u32>,
    /// `first[s]` is one plus the index of the item whose fold first reached `s`; 0 for `s = 0` or unreachable.
    first: Vec<u32>,
    reach: Bitset,
}

impl WitnessDp {
    fn build(seq: &ResidueSequence, cap: u64) -> Self {
        let modulus = seq.modulus();
        let mut items: Vec<u32> = seq.terms().collect();
        items.sort_by_key(|&a| bar_value(a, modulus));
        let len = cap as usize + 1;
        let mut reach = Bitset::new(len);
        reach.set(0);
        let mut first = vec![0u32; len];
        for (idx, &a) in items.iter().enumerate() {
            let b = bar_value(a, modulus) as usize;
            let prev = reach.clone();
            reach.or_shl(&prev, b);
            for s in reach.iter_ones().filter(|&s| !prev.get(s)) {
                first[s] = idx as u32 + 1;
            }
        }
        WitnessDp {
            modulus,
            items,
            first,
            reach,
        }
    }

    fn witness(&self, t: u64) -> Option<ResidueSequence> {
        let mut s = t as usize;
        if s == 0 || !self.reach.get(s) {
            return None;
        }
        let mut picked = Vec::new();
        while s > 0 {
            let idx = self.first[s].checked_sub(1)? as usize;
            let a = self.items[idx];
            picked.push(a as i64);
            s -= bar_value(a, self.modulus) as usize;
        }
        Some(ResidueSequence::from_terms(self.modulus, picked))
    }
}

/// A sub-multiset with bar-sum `t`, if one exists.
pub fn subsum_witness(seq: &ResidueSequence, t: u64) -> Option<IntervalWitness> {
    if t == 0 || t > seq.bar_sum() {
        return None;
    }
    WitnessDp::build(seq, t)
        .witness(t)
        .map(|subsequence| IntervalWitness {
            subsequence,
            target: t,
        })
}

/// Writes `N = alpha + 2·beta` with `alpha ≤ v1`, `beta ≤ v2` for `S = 1^[v1] • 2^[v2]`.
pub fn lemma1_decompose(v1: u64, v2: u64, target: u64) -> Result<(u64, u64)> {
    if v1 < 1 || v2 < 1 {
        return Err(Error::domain(format!(
            "need v1 >= 1 and v2 >= 1, got v1 = {v1}, v2 = {v2}"
        )));
    }
    decompose_with_ones(v1, v2, 2, target)
}

/// Writes `N = alpha + 3·gamma` with `alpha ≤ v1`, `gamma ≤ v3` for `S = 1^[v1] • 3^[v3]`.
pub fn lemma2_decompose(v1: u64, v3: u64, target: u64) -> Result<(u64, u64)> {
    if v1 < 2 || v3 < 1 {
        return Err(Error::domain(format!(
            "need v1 >= 2 and v3 >= 1, got v1 = {v1}, v3 = {v3}"
        )));
    }
    decompose_with_ones(v1, v3, 3, target)
}

// Take as few copies of `step` as possible; the remainder fits in the ones
// because v1 >= step - 1.
fn decompose_with_ones(ones: u64, copies: u64, step: u64, target: u64) -> Result<(u64, u64)> {
    let top = ones + step * copies;
    if target < 1 || target > top {
        return Err(Error::domain(format!("target {target} outside [1, {top}]")));
    }
    let big = target.saturating_sub(ones).div_ceil(step);
    Ok((target - step * big, big))
}

/// `S • T^{-1}`; the bar-sums of `T` and the result add up to that of `S`.
pub fn complement_witness(seq: &ResidueSequence, sub: &ResidueSequence) -> Result<ResidueSequence> {
    seq.remove(sub)
}

/// Names of the interval-theorem hypotheses that `seq` fails for the given `k`.
pub fn failed_hypotheses(seq: &ResidueSequence, k: i64) -> Vec<String> {
    let n = seq.n() as i64;
    let mut failed = Vec::new();
    if k < 1 || n < 2 * k + 1 {
        failed.push(HYP_RANGE.to_string());
    }
    if !is_zero_sum_free(seq) {
        failed.push(HYP_ZERO_SUM_FREE.to_string());
    }
    if seq.bar_sum() > n as u64 - 1 {
        failed.push(HYP_BAR_SUM.to_string());
    }
    failed
}

/// A witness for `t` on a sequence meeting the interval theorem hypotheses.
///
/// Targets up to `⌊n/2⌋` come straight from the DP; larger targets are the
/// complement of a witness for `bar-sum - t`.
pub fn interval_decompose(seq: &ResidueSequence, t: u64) -> Result<IntervalWitness> {
    let n = seq.n() as u64;
    let k = n as i64 - seq.len() as i64;
    let failed = failed_hypotheses(seq, k);
    if !failed.is_empty() {
        return Err(Error::domain(format!(
            "hypothesis failed for [{seq}] (k = {k}): {}",
            failed.join(", ")
        )));
    }
    let total = seq.bar_sum();
    if t < 1 || t > total {
        return Err(Error::domain(format!("target {t} outside [1, {total}]")));
    }
    let violation = |what: u64| {
        Error::InvariantViolation(format!("no sub-multiset of [{seq}] has bar-sum {what}"))
    };
    let subsequence = if t <= n / 2 {
        subsum_witness(seq, t)
            .ok_or_else(|| violation(t))?
            .subsequence
    } else if t == total {
        seq.clone()
    } else {
        let rest = subsum_witness(seq, total - t).ok_or_else(|| violation(total - t))?;
        complement_witness(seq, &rest.subsequence)?
    };
    let witness = IntervalWitness {
        subsequence,
        target: t,
    };
    debug_assert!(witness.is_valid_for(seq));
    Ok(witness)
}

/// Compares the integer subsums of `seq` with `[1, bar-sum]` and `[1, n - k]`.
///
/// The comparison is reported even when the hypotheses fail, so counterexamples
/// to weakened statements show up as `equality_holds = false`.
pub fn verify_interval_theorem(seq: &ResidueSequence, k: i64) -> Result<TheoremReport> {
    let n = seq.n();
    if seq.len() as i64 != n as i64 - k {
        return Err(Error::domain(format!(
            "length {} is not n - k = {}",
            seq.len(),
            n as i64 - k
        )));
    }
    let failed = failed_hypotheses(seq, k);
    let set = subsums_int(seq);
    let missing_targets = set.missing();
    let corollary_holds = (1..=(n as i64 - k).max(0) as u64).all(|t| set.contains(t));
    Ok(TheoremReport {
        hypotheses_met: failed.is_empty(),
        failed_hypotheses: failed,
        n,
        k,
        sigma_bar: set.upper(),
        equality_holds: missing_targets.is_empty(),
        missing_targets,
        corollary_holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zn::parse_sequence;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn seq(text: &str) -> ResidueSequence {
        parse_sequence(text).unwrap()
    }

    /// Every nonempty sub-multiset, by mixed-radix counting over multiplicities.
    fn brute_subsums(s: &ResidueSequence) -> (BTreeSet<u32>, BTreeSet<u64>) {
        let n = s.n() as u64;
        let parts: Vec<(u32, usize)> = s.iter().collect();
        let mut choice = vec![0usize; parts.len()];
        let (mut modular, mut integer) = (BTreeSet::new(), BTreeSet::new());
        loop {
            let mut i = 0;
            while i < parts.len() && choice[i] == parts[i].1 {
                choice[i] = 0;
                i += 1;
            }
            if i == parts.len() {
                break;
            }
            choice[i] += 1;
            let mut total = 0u64;
            let mut residue = 0u64;
            for (&(a, _), &c) in parts.iter().zip(&choice) {
                let b = if a == 0 { n } else { a as u64 };
                total += b * c as u64;
                residue = (residue + a as u64 * c as u64) % n;
            }
            modular.insert(residue as u32);
            integer.insert(total);
        }
        (modular, integer)
    }

    #[test]
    fn gap_examples_over_z5() {
        assert_eq!(subsums_mod(&seq("n=5: 1,3")).members(), vec![1, 3, 4]);
        assert_eq!(subsums_mod(&seq("n=5: 2,2")).members(), vec![2, 4]);
        assert_eq!(subsums_mod(&seq("n=2: 1,1")).members(), vec![0, 1]);
        assert_eq!(subsums_int(&seq("n=5: 1,3")).members(), vec![1, 3, 4]);
        assert_eq!(subsums_int(&seq("n=5: 2,2")).members(), vec![2, 4]);
        assert_eq!(
            subsums_int(&seq("n=7: 1,1,1,2")).members(),
            vec![1, 2, 3, 4, 5]
        );
        assert!(subsums_mod(&seq("n=5:")).is_empty());
        assert!(subsums_int(&seq("n=5:")).is_empty());
    }

    #[test]
    fn zero_sum_freeness() {
        assert!(is_zero_sum_free(&seq("n=5: 1,3")));
        assert!(!is_zero_sum_free(&seq("n=5: 1,1,1,1,1")));
        assert!(!is_zero_sum_free(&seq("n=5: 2,3")));
        assert!(!is_zero_sum_free(&seq("n=5: 0")));
        assert!(is_zero_sum_free(&seq("n=5:")));
    }

    #[test]
    fn witness_examples() {
        let s = seq("n=7: 1,1,1,2");
        let w = subsum_witness(&s, 4).unwrap();
        assert_eq!(w.subsequence, seq("n=7: 1,1,2"));
        assert!(w.is_valid_for(&s));
        assert!(subsum_witness(&seq("n=5: 1,3"), 2).is_none());
        assert_eq!(subsum_witness(&s, 5).unwrap().subsequence, s);
        assert!(subsum_witness(&s, 0).is_none());
        assert!(subsum_witness(&s, 6).is_none());
        // zero terms carry bar value n
        let z = seq("n=4: 0,1");
        assert_eq!(subsum_witness(&z, 4).unwrap().subsequence, seq("n=4: 0"));
    }

    #[test]
    fn lemma_examples() {
        assert_eq!(lemma1_decompose(2, 3, 7).unwrap(), (1, 3));
        assert_eq!(lemma1_decompose(1, 1, 1).unwrap(), (1, 0));
        assert_eq!(lemma1_decompose(2, 2, 6).unwrap(), (2, 2));
        assert_eq!(lemma2_decompose(2, 1, 4).unwrap(), (1, 1));
        assert_eq!(lemma2_decompose(3, 1, 2).unwrap(), (2, 0));
        assert_eq!(lemma2_decompose(2, 2, 8).unwrap(), (2, 2));
        assert!(lemma1_decompose(0, 1, 1).is_err());
        assert!(lemma1_decompose(1, 1, 4).is_err());
        assert!(lemma1_decompose(1, 1, 0).is_err());
        assert!(lemma2_decompose(1, 1, 1).is_err());
        assert!(lemma2_decompose(2, 1, 6).is_err());
    }

    #[test]
    fn lemma_closed_forms_are_total() {
        for v1 in 1..=8u64 {
            for v2 in 1..=8u64 {
                for target in 1..=v1 + 2 * v2 {
                    let (a, b) = lemma1_decompose(v1, v2, target).unwrap();
                    assert!(a <= v1 && b <= v2 && a + 2 * b == target);
                }
                if v1 >= 2 {
                    for target in 1..=v1 + 3 * v2 {
                        let (a, c) = lemma2_decompose(v1, v2, target).unwrap();
                        assert!(a <= v1 && c <= v2 && a + 3 * c == target);
                    }
                }
            }
        }
    }

    #[test]
    fn complement_examples() {
        let s = seq("n=7: 1,1,1,2");
        let t = seq("n=7: 1,2");
        let c = complement_witness(&s, &t).unwrap();
        assert_eq!(c, seq("n=7: 1,1"));
        assert_eq!(t.bar_sum() + c.bar_sum(), s.bar_sum());
        assert!(complement_witness(&s, &s).unwrap().is_empty());
        assert_eq!(complement_witness(&s, &seq("n=7:")).unwrap(), s);
        assert!(matches!(
            complement_witness(&s, &seq("n=7: 3")),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn interval_decompose_examples() {
        let s = seq("n=7: 1,1,1,2");
        assert_eq!(interval_decompose(&s, 5).unwrap().subsequence, s);
        assert_eq!(
            interval_decompose(&s, 4).unwrap().subsequence,
            seq("n=7: 1,1,2")
        );
        let ones = seq("n=7: 1,1,1,1,1,1");
        assert_eq!(
            interval_decompose(&ones, 3).unwrap().subsequence,
            seq("n=7: 1,1,1")
        );
        for t in 1..=5 {
            assert!(interval_decompose(&s, t).unwrap().is_valid_for(&s));
        }
        assert!(matches!(interval_decompose(&s, 6), Err(Error::Domain(_))));
        match interval_decompose(&seq("n=5: 1,3"), 2) {
            Err(Error::Domain(msg)) => assert!(msg.contains(HYP_RANGE), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn theorem_report_examples() {
        let r = verify_interval_theorem(&seq("n=7: 1,1,1,2"), 3).unwrap();
        assert!(r.hypotheses_met && r.equality_holds && r.corollary_holds);
        assert!(r.missing_targets.is_empty());
        assert_eq!(r.sigma_bar, 5);

        let r = verify_interval_theorem(&seq("n=5: 1,3"), 3).unwrap();
        assert!(!r.hypotheses_met);
        assert_eq!(r.failed_hypotheses, vec![HYP_RANGE.to_string()]);
        assert!(!r.equality_holds);
        assert_eq!(r.missing_targets, vec![2]);

        let r = verify_interval_theorem(&seq("n=5: 2,2"), 3).unwrap();
        assert_eq!(r.missing_targets, vec![1, 3]);
        assert!(!r.corollary_holds);

        let r = verify_interval_theorem(&seq("n=7: 1,1,1,1,1,1"), 1).unwrap();
        assert!(r.hypotheses_met && r.equality_holds);

        assert!(verify_interval_theorem(&seq("n=7: 1,1"), 3).is_err());
    }

    fn arb_sequence(max_n: u32, max_len: usize) -> impl Strategy<Value = ResidueSequence> {
        (2..=max_n).prop_flat_map(move |n| {
            prop::collection::vec(0..n as i64, 0..=max_len)
                .prop_map(move |terms| ResidueSequence::from_terms(Modulus::new(n).unwrap(), terms))
        })
    }

    proptest! {
        #[test]
        fn dp_matches_brute_force(s in arb_sequence(12, 12)) {
            let (modular, integer) = brute_subsums(&s);
            prop_assert_eq!(subsums_mod(&s).members(), modular.into_iter().collect::<Vec<_>>());
            prop_assert_eq!(subsums_int(&s).members(), integer.into_iter().collect::<Vec<_>>());
        }

        #[test]
        fn every_member_has_a_valid_witness(s in arb_sequence(15, 10)) {
            let set = subsums_int(&s);
            for t in 1..=set.upper() {
                let w = subsum_witness(&s, t);
                prop_assert_eq!(w.is_some(), set.contains(t));
                if let Some(w) = w {
                    prop_assert!(w.is_valid_for(&s));
                }
            }
        }

        #[test]
        fn scaling_is_covariant(s in arb_sequence(20, 10), g in 1i64..40) {
            prop_assume!(s.modulus().is_unit(g));
            let n = s.n() as u64;
            let scaled = subsums_mod(&s.scale(g).unwrap()).members();
            let mut mapped: Vec<u32> = subsums_mod(&s)
                .members()
                .into_iter()
                .map(|r| (r as u64 * g as u64 % n) as u32)
                .collect();
            mapped.sort_unstable();
            prop_assert_eq!(scaled, mapped);
            prop_assert_eq!(is_zero_sum_free(&s), is_zero_sum_free(&s.scale(g).unwrap()));
        }

        #[test]
        fn complement_is_additive(s in arb_sequence(12, 10), pick in prop::collection::vec(any::<bool>(), 10)) {
            let sub = ResidueSequence::from_terms(
                s.modulus(),
                s.terms().zip(pick).filter(|(_, p)| *p).map(|(a, _)| a as i64),
            );
            let rest = complement_witness(&s, &sub).unwrap();
            prop_assert_eq!(sub.bar_sum() + rest.bar_sum(), s.bar_sum());
            prop_assert_eq!(rest.len() + sub.len(), s.len());
        }

        #[test]
        fn scale_round_trips(s in arb_sequence(30, 10), g in 1i64..60) {
            prop_assume!(s.modulus().is_unit(g));
            let inv = s.modulus().inverse(g).unwrap() as i64;
            prop_assert_eq!(s.scale(g).unwrap().scale(inv).unwrap(), s.clone());
            let (r, _) = crate::zn::sums(&s);
            let (rs, _) = crate::zn::sums(&s.scale(g).unwrap());
            prop_assert_eq!(rs.value() as u64, r.value() as u64 * s.modulus().reduce(g) as u64 % s.n() as u64);
        }

        #[test]
        fn format_parse_round_trip(s in arb_sequence(50, 12)) {
            prop_assert_eq!(parse_sequence(&s.to_string()).unwrap(), s);
        }
    }
}
