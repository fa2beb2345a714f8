//! Canonical depth-first enumeration of multisets.
//!
//! A multiset over an alphabet is listed once, as the non-decreasing sequence of
//! alphabet positions. Children extend a node by a symbol at or after its last
//! position, so preorder is lexicographic on these canonical lists. The `extend`
//! hook may reject a child; its whole subtree is then skipped, which is sound for
//! properties closed under taking sub-multisets (zero-sum freeness, product-one
//! freeness, bar-sum caps).

/// Restricts the top level of a search, splitting the tree into independent
/// chunks keyed by the smallest symbol.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Root {
    All,
    /// Only multisets whose first (smallest) symbol is `alphabet[i]`.
    First(usize),
}

/// Walks every accepted multiset of length `1..=max_len` in canonical order.
///
/// `extend(state, prefix, symbol)` returns the state of `prefix + symbol` or `None`
/// to prune; `visit(terms, state)` sees every accepted node.
pub fn search<S, E, V>(
    alphabet: &[usize],
    max_len: usize,
    root: Root,
    empty: &S,
    mut extend: E,
    mut visit: V,
) where
    E: FnMut(&S, &[usize], usize) -> Option<S>,
    V: FnMut(&[usize], &S),
{
    if max_len == 0 {
        return;
    }
    let range = match root {
        Root::All => 0..alphabet.len(),
        Root::First(i) => i..(i + 1).min(alphabet.len()),
    };
    let mut terms = Vec::with_capacity(max_len);
    for i in range {
        descend(
            alphabet,
            max_len,
            i,
            empty,
            &mut terms,
            &mut extend,
            &mut visit,
        );
    }
}

fn descend<S, E, V>(
    alphabet: &[usize],
    max_len: usize,
    pos: usize,
    state: &S,
    terms: &mut Vec<usize>,
    extend: &mut E,
    visit: &mut V,
) where
    E: FnMut(&S, &[usize], usize) -> Option<S>,
    V: FnMut(&[usize], &S),
{
    let symbol = alphabet[pos];
    let Some(next) = extend(state, terms, symbol) else {
        return;
    };
    terms.push(symbol);
    visit(terms, &next);
    if terms.len() < max_len {
        for p in pos..alphabet.len() {
            descend(alphabet, max_len, p, &next, terms, extend, visit);
        }
    }
    terms.pop();
}
