//! Fixed-length bit vector with the word-parallel shifts used by the subset-sum DP.

const WORD: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bitset {
    len: usize,
    words: Vec<u64>,
}

impl Bitset {
    pub fn new(len: usize) -> Self {
        Bitset {
            len,
            words: vec![0; len.div_ceil(WORD)],
        }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.len
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        i < self.len && self.words[i / WORD] >> (i % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] |= 1 << (i % WORD);
    }

    #[inline]
    pub fn clear(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range {}", self.len);
        self.words[i / WORD] &= !(1 << (i % WORD));
    }

    pub fn count_ones(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn iter_ones(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD + b)
            })
        })
    }

    /// `self |= src << shift`, dropping bits that fall past `len`.
    pub fn or_shl(&mut self, src: &Bitset, shift: usize) {
        debug_assert_eq!(self.len, src.len);
        let (ws, bs) = (shift / WORD, shift % WORD);
        let nw = self.words.len();
        for i in (ws..nw).rev() {
            let j = i - ws;
            let mut v = src.words[j] << bs;
            if bs != 0 && j > 0 {
                v |= src.words[j - 1] >> (WORD - bs);
            }
            self.words[i] |= v;
        }
        self.trim();
    }

    /// `self |= src >> shift`.
    pub fn or_shr(&mut self, src: &Bitset, shift: usize) {
        debug_assert_eq!(self.len, src.len);
        let (ws, bs) = (shift / WORD, shift % WORD);
        let nw = self.words.len();
        for i in 0..nw.saturating_sub(ws) {
            let j = i + ws;
            let mut v = src.words[j] >> bs;
            if bs != 0 && j + 1 < nw {
                v |= src.words[j + 1] << (WORD - bs);
            }
            self.words[i] |= v;
        }
    }

    /// `self |= rotate_left(src, shift)` treating the bits as indices mod `len`.
    pub fn or_rotl(&mut self, src: &Bitset, shift: usize) {
        let shift = shift % self.len.max(1);
        if shift == 0 {
            self.or_assign(src);
            return;
        }
        self.or_shl(src, shift);
        self.or_shr(src, self.len - shift);
    }

    pub fn or_assign(&mut self, other: &Bitset) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    fn trim(&mut self) {
        let rem = self.len % WORD;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn naive_rotl(bits: &[bool], shift: usize) -> Vec<bool> {
        let n = bits.len();
        let mut out = vec![false; n];
        for (i, &b) in bits.iter().enumerate() {
            if b {
                out[(i + shift) % n] = true;
            }
        }
        out
    }

    fn from_bools(bits: &[bool]) -> Bitset {
        let mut b = Bitset::new(bits.len());
        for (i, &v) in bits.iter().enumerate() {
            if v {
                b.set(i);
            }
        }
        b
    }

    proptest! {
        #[test]
        fn rotation_matches_naive(bits in prop::collection::vec(any::<bool>(), 1..300), shift in 0usize..600) {
            let src = from_bools(&bits);
            let mut dst = Bitset::new(bits.len());
            dst.or_rotl(&src, shift);
            let want = naive_rotl(&bits, shift % bits.len());
            let got: Vec<bool> = (0..bits.len()).map(|i| dst.get(i)).collect();
            prop_assert_eq!(got, want);
        }

        #[test]
        fn shift_left_truncates(bits in prop::collection::vec(any::<bool>(), 1..300), shift in 0usize..400) {
            let src = from_bools(&bits);
            let mut dst = Bitset::new(bits.len());
            dst.or_shl(&src, shift);
            for i in 0..bits.len() {
                let want = i >= shift && bits[i - shift];
                prop_assert_eq!(dst.get(i), want);
            }
            prop_assert_eq!(dst.iter_ones().count(), dst.count_ones());
        }
    }

    #[test]
    fn set_get_clear() {
        let mut b = Bitset::new(130);
        b.set(0);
        b.set(64);
        b.set(129);
        assert_eq!(b.iter_ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        b.clear(64);
        assert!(!b.get(64));
        assert!(!b.get(500));
        assert_eq!(b.count_ones(), 2);
    }
}
