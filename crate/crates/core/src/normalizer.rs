//! Unit multipliers that shrink the bar-sum of a zero-sum free sequence, and the
//! classical lower bounds on the largest multiplicity.

use serde::{Deserialize, Serialize};

use crate::subsum::is_zero_sum_free;
use crate::zn::{bar_value, ResidueSequence};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizerResult {
    pub g: u32,
    /// Bar-sum of the sequence scaled by `g`.
    pub total: u64,
    /// `total <= n - 1`.
    pub achieves_bound: bool,
}

/// Which multiplicity bound applies to a zero-sum free sequence of length `n - k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum BoundRegime {
    /// `n >= 3k - 2`: some term occurs at least `n - 2k + 1` times.
    #[serde(rename = "BEN")]
    BoveyErdosNiven,
    /// `2k + 1 <= n < 3k - 2`: some term occurs at least `n - k - ⌊(n-1)/3⌋` times.
    #[serde(rename = "SC")]
    SavchevChen,
    #[serde(rename = "out-of-range")]
    OutOfRange,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundReport {
    pub n: u32,
    pub k: i64,
    pub regime: BoundRegime,
    pub required: i64,
    pub achieved: u64,
    pub holds: bool,
}

/// Bar-sum of `seq` scaled by `g`, without materialising the scaled sequence.
fn scaled_bar_sum(seq: &ResidueSequence, g: u32) -> u64 {
    let m = seq.modulus();
    let n = m.get() as u64;
    seq.iter()
        .map(|(a, mult)| bar_value((a as u64 * g as u64 % n) as u32, m) as u64 * mult as u64)
        .sum()
}

/// Exhaustive search over the units of `Z_n` for the multiplier with the smallest
/// scaled bar-sum; ties go to the smallest `g`.
pub fn find_normalizer(seq: &ResidueSequence) -> Result<NormalizerResult> {
    if seq.is_empty() {
        return Err(Error::domain("cannot normalise the empty sequence"));
    }
    if seq.contains_zero() {
        return Err(Error::domain(format!("[{seq}] contains the residue 0")));
    }
    let (g, total) = seq
        .modulus()
        .units()
        .map(|g| (g, scaled_bar_sum(seq, g)))
        .min_by_key(|&(g, total)| (total, g))
        .expect("1 is always a unit");
    Ok(NormalizerResult {
        g,
        total,
        achieves_bound: total < seq.n() as u64,
    })
}

/// Regime and required multiplicity for given `n` and `k`, ignoring any sequence.
pub fn multiplicity_bound(n: u32, k: i64) -> (BoundRegime, i64) {
    let n = n as i64;
    if k < 1 || n < 2 * k + 1 {
        (BoundRegime::OutOfRange, 0)
    } else if n >= 3 * k - 2 {
        (BoundRegime::BoveyErdosNiven, n - 2 * k + 1)
    } else {
        (BoundRegime::SavchevChen, n - k - (n - 1) / 3)
    }
}

/// Checks the multiplicity bound that applies to a zero-sum free `seq` of length `n - k`.
///
/// At `n = 3k - 2` both bounds give the same value; the report says BEN.
pub fn check_multiplicity_bound(seq: &ResidueSequence, k: i64) -> Result<BoundReport> {
    let n = seq.n();
    if seq.len() as i64 != n as i64 - k {
        return Err(Error::domain(format!(
            "length {} is not n - k = {}",
            seq.len(),
            n as i64 - k
        )));
    }
    let (regime, required) = multiplicity_bound(n, k);
    if regime == BoundRegime::OutOfRange {
        return Err(Error::domain(format!(
            "need n >= 2k+1 >= 3, got n = {n}, k = {k}"
        )));
    }
    if !is_zero_sum_free(seq) {
        return Err(Error::domain(format!("[{seq}] is not zero-sum free")));
    }
    let achieved = seq.max_multiplicity() as u64;
    Ok(BoundReport {
        n,
        k,
        regime,
        required,
        achieved,
        holds: achieved as i64 >= required,
    })
}
