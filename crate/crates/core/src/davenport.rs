//! Small Davenport constants by exhaustive search, and the abelian lower bound
//! `d(Z_{n_1} ⊕ ... ⊕ Z_{n_r}) ≥ Σ (n_i - 1)`.

use serde::{Deserialize, Serialize};

use crate::enumerate::{self, Root};
pub use crate::group::{ElementId, GroupSpec};
use crate::products::{abelian_subproducts, product_one_free, run_length};
use crate::{Error, Result};

/// Largest `max_len` accepted by [`davenport_search`].
pub const MAX_SEARCH_LEN: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum DavenportOutcome {
    /// Every multiset of length `d + 1` contains a product-one subsequence.
    Determined(DavenportResult),
    /// A product-one free multiset of length `max_len` exists, so the search cannot bound `d`.
    UnboundedWithinBudget {
        max_len: usize,
        example: Vec<ElementId>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DavenportResult {
    pub d: usize,
    /// Lexicographically least product-one free multiset of length `d`.
    pub extremal_example: Vec<ElementId>,
    /// Number of product-one free multisets visited.
    pub search_space_size: u64,
}

/// Best node of one chunk: longest free multiset, lexicographically least among equals.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ChunkResult {
    pub longest: Vec<ElementId>,
    pub visited: u64,
}

impl ChunkResult {
    /// Associative merge; keeps the longer example, then the lexicographically smaller.
    pub fn merge(mut self, other: ChunkResult) -> ChunkResult {
        let better = other.longest.len() > self.longest.len()
            || (other.longest.len() == self.longest.len() && other.longest < self.longest);
        if better {
            self.longest = other.longest;
        }
        self.visited += other.visited;
        self
    }
}

fn check_budget(group: &GroupSpec, max_len: usize) -> Result<()> {
    if group.order() < 2 {
        return Err(Error::domain("Davenport search needs a nontrivial group"));
    }
    if max_len == 0 || max_len > MAX_SEARCH_LEN {
        return Err(Error::Budget(format!(
            "max_len must be in [1, {MAX_SEARCH_LEN}], got {max_len}"
        )));
    }
    Ok(())
}

/// Non-identity element ids; a term equal to the identity is itself a product-one subsequence.
pub fn search_alphabet(group: &GroupSpec) -> Vec<ElementId> {
    (0..group.order())
        .filter(|&g| g != group.identity())
        .collect()
}

/// Searches the subtree of multisets whose smallest term is `search_alphabet(group)[chunk]`.
pub fn search_chunk(group: &GroupSpec, max_len: usize, chunk: usize) -> Result<ChunkResult> {
    check_budget(group, max_len)?;
    let alphabet = search_alphabet(group);
    let mut best = ChunkResult::default();
    let mut visit = |terms: &[ElementId]| {
        best.visited += 1;
        if terms.len() > best.longest.len() {
            best.longest = terms.to_vec();
        }
    };
    let one = group.identity();
    if group.is_abelian() {
        // Reachable sums only grow, so carry them down the tree.
        enumerate::search(
            &alphabet,
            max_len,
            Root::First(chunk),
            &0u64,
            |&reach, _, g| {
                let next = reach | group.right_mul_mask(reach, g) | 1 << g;
                (next >> one & 1 == 0).then_some(next)
            },
            |terms, _| visit(terms),
        );
    } else {
        let mut failure = None;
        enumerate::search(
            &alphabet,
            max_len,
            Root::First(chunk),
            &(),
            |_, prefix, g| {
                let mut terms = prefix.to_vec();
                terms.push(g);
                match product_one_free(group, &terms) {
                    Ok((free, _)) => free.then_some(()),
                    Err(e) => {
                        failure.get_or_insert(e);
                        None
                    }
                }
            },
            |terms, _| visit(terms),
        );
        if let Some(e) = failure {
            return Err(e);
        }
    }
    Ok(best)
}

/// Turns merged chunk results into the search outcome.
pub fn finish_search(max_len: usize, merged: ChunkResult) -> DavenportOutcome {
    if merged.longest.len() >= max_len {
        DavenportOutcome::UnboundedWithinBudget {
            max_len,
            example: merged.longest,
        }
    } else {
        DavenportOutcome::Determined(DavenportResult {
            d: merged.longest.len(),
            extremal_example: merged.longest,
            search_space_size: merged.visited,
        })
    }
}

/// The largest length `L < max_len` of a product-one free multiset over `group`.
///
/// Only product-one free prefixes are extended. If some multiset of length
/// `max_len` is still free, the answer is [`DavenportOutcome::UnboundedWithinBudget`].
pub fn davenport_search(group: &GroupSpec, max_len: usize) -> Result<DavenportOutcome> {
    check_budget(group, max_len)?;
    let mut merged = ChunkResult::default();
    for chunk in 0..search_alphabet(group).len() {
        merged = merged.merge(search_chunk(group, max_len, chunk)?);
    }
    Ok(finish_search(max_len, merged))
}

/// Whether `terms` is product-one free in `group`, via the abelian fast path when it applies.
pub fn is_product_one_free(group: &GroupSpec, terms: &[ElementId]) -> Result<bool> {
    if terms.is_empty() {
        return Ok(true);
    }
    if group.is_abelian() {
        let reach = abelian_subproducts(group, &run_length(terms));
        return Ok(reach >> group.identity() & 1 == 0);
    }
    Ok(product_one_free(group, terms)?.0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianLowerBound {
    pub value: u64,
    /// `e_1^[n_1 - 1] • ... • e_r^[n_r - 1]` with `e_i` the `i`-th unit vector.
    pub witness: Vec<Vec<u32>>,
}

pub fn abelian_lower_bound(ns: &[u32]) -> Result<AbelianLowerBound> {
    if ns.is_empty() {
        return Err(Error::domain("need at least one cyclic factor"));
    }
    if let Some(&bad) = ns.iter().find(|&&n| n < 2) {
        return Err(Error::domain(format!(
            "cyclic factor must have order >= 2, got {bad}"
        )));
    }
    let mut witness = Vec::new();
    for (i, &n) in ns.iter().enumerate() {
        let mut e = vec![0u32; ns.len()];
        e[i] = 1;
        witness.extend(std::iter::repeat_n(e, n as usize - 1));
    }
    Ok(AbelianLowerBound {
        value: ns.iter().map(|&n| n as u64 - 1).sum(),
        witness,
    })
}

/// Element id of a coordinate vector in [`GroupSpec::direct_sum`].
pub fn direct_sum_id(ns: &[u32], coords: &[u32]) -> ElementId {
    coords
        .iter()
        .zip(ns)
        .fold(0, |acc, (&x, &n)| acc * n as usize + (x % n) as usize)
}
