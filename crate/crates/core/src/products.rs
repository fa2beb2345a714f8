//! Ordered products of sub-multisets in a finite group.
//!
//! For a multiset `S` the DP visits every sub-multiset `M` (mixed-radix index
//! over the multiplicities) and stores, as a bit mask over element ids, the set of
//! products of all orderings of `M`:
//!
//! ```text
//! reach(∅) = {1},   reach(M) = ∪_{g ∈ M} reach(M - g) · g
//! ```
//!
//! `π(S)` is `reach(S)` and `Π(S)` is the union over nonempty `M`.

use crate::group::{ElementId, GroupSpec};
use crate::{Error, Result};

/// Upper limit on the number of sub-multisets the DP will tabulate.
pub const MAX_STATES: usize = 1 << 22;

/// Run-length form of a multiset of element ids: sorted, distinct, counts ≥ 1.
pub fn run_length(terms: &[ElementId]) -> Vec<(ElementId, usize)> {
    let mut sorted = terms.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<(ElementId, usize)> = Vec::new();
    for t in sorted {
        match out.last_mut() {
            Some((e, c)) if *e == t => *c += 1,
            _ => out.push((t, 1)),
        }
    }
    out
}

pub struct ProductDp<'g> {
    group: &'g GroupSpec,
    runs: Vec<(ElementId, usize)>,
    strides: Vec<usize>,
    masks: Vec<u64>,
    sizes: Vec<u32>,
}

impl<'g> ProductDp<'g> {
    pub fn build(group: &'g GroupSpec, runs: &[(ElementId, usize)]) -> Result<Self> {
        let mut strides = Vec::with_capacity(runs.len());
        let mut states = 1usize;
        for &(e, c) in runs {
            if e >= group.order() {
                return Err(Error::domain(format!(
                    "element id {e} outside {}",
                    group.name()
                )));
            }
            strides.push(states);
            states = states
                .checked_mul(c + 1)
                .filter(|&s| s <= MAX_STATES)
                .ok_or_else(|| Error::Budget(format!("more than {MAX_STATES} sub-multisets")))?;
        }
        let mut masks = vec![0u64; states];
        let mut sizes = vec![0u32; states];
        masks[0] = 1 << group.identity();
        let mut counts = vec![0usize; runs.len()];
        for idx in 1..states {
            // increment the mixed-radix counter
            let mut i = 0;
            while counts[i] == runs[i].1 {
                counts[i] = 0;
                i += 1;
            }
            counts[i] += 1;
            let mut mask = 0u64;
            for (j, &(g, _)) in runs.iter().enumerate() {
                if counts[j] > 0 {
                    mask |= group.right_mul_mask(masks[idx - strides[j]], g);
                }
            }
            masks[idx] = mask;
            sizes[idx] = counts.iter().sum::<usize>() as u32;
        }
        Ok(ProductDp {
            group,
            runs: runs.to_vec(),
            strides,
            masks,
            sizes,
        })
    }

    /// Products of all orderings of the full multiset.
    pub fn pi(&self) -> u64 {
        *self.masks.last().expect("at least the empty state")
    }

    /// Products of all orderings of all nonempty sub-multisets.
    pub fn big_pi(&self) -> u64 {
        self.masks[1..].iter().fold(0, |acc, m| acc | m)
    }

    /// An ordering of a smallest nonempty sub-multiset whose product is `target`.
    ///
    /// Walking back from the chosen state, the last factor is the smallest id that
    /// keeps the remaining target reachable.
    pub fn witness(&self, target: ElementId) -> Option<Vec<ElementId>> {
        let bit = 1u64 << target;
        let start = (1..self.masks.len())
            .filter(|&i| self.masks[i] & bit != 0)
            .min_by_key(|&i| (self.sizes[i], i))?;
        let mut state = start;
        let mut want = target;
        let mut rev = Vec::with_capacity(self.sizes[start] as usize);
        while state != 0 {
            let (j, prev) = self
                .runs
                .iter()
                .enumerate()
                .filter(|&(j, _)| self.count_in(state, j) > 0)
                .map(|(j, &(g, _))| (j, self.group.mul(want, self.group.inverse(g))))
                .find(|&(j, p)| self.masks[state - self.strides[j]] >> p & 1 == 1)?;
            rev.push(self.runs[j].0);
            want = prev;
            state -= self.strides[j];
        }
        rev.reverse();
        Some(rev)
    }

    fn count_in(&self, state: usize, j: usize) -> usize {
        state / self.strides[j] % (self.runs[j].1 + 1)
    }
}

/// Ids set in a mask, ascending.
pub fn mask_members(mask: u64) -> Vec<ElementId> {
    (0..64).filter(|&i| mask >> i & 1 == 1).collect()
}

/// `Π(S)` for an abelian group, where orderings do not matter.
pub fn abelian_subproducts(group: &GroupSpec, runs: &[(ElementId, usize)]) -> u64 {
    debug_assert!(group.is_abelian());
    let mut reach = 0u64;
    for &(g, c) in runs {
        for _ in 0..c {
            let next = reach | group.right_mul_mask(reach, g) | 1 << g;
            if next == reach {
                break;
            }
            reach = next;
        }
    }
    reach
}

/// Whether no nonempty sub-multiset has an ordering with product one, plus such an ordering if one exists.
pub fn product_one_free(
    group: &GroupSpec,
    terms: &[ElementId],
) -> Result<(bool, Option<Vec<ElementId>>)> {
    let runs = run_length(terms);
    let dp = ProductDp::build(group, &runs)?;
    let one = group.identity();
    if dp.big_pi() >> one & 1 == 0 {
        return Ok((true, None));
    }
    let witness = dp.witness(one).ok_or_else(|| {
        Error::InvariantViolation("identity reachable but no ordering recovered".into())
    })?;
    Ok((false, Some(witness)))
}
