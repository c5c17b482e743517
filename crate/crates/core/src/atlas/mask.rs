/// Bitset over positive-root indices (up to 256 positive roots).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RootMask(pub [u64; 4]);

pub const MAX_POSITIVE_ROOTS: usize = 256;

impl RootMask {
    pub const EMPTY: RootMask = RootMask([0; 4]);

    pub fn from_indices(ix: impl IntoIterator<Item = usize>) -> RootMask {
        let mut m = RootMask::EMPTY;
        for i in ix {
            m.insert(i);
        }
        m
    }

    pub fn insert(&mut self, i: usize) {
        self.0[i >> 6] |= 1 << (i & 63);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0[i >> 6] >> (i & 63) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0 == [0; 4]
    }

    pub fn and(&self, other: &RootMask) -> RootMask {
        RootMask(std::array::from_fn(|k| self.0[k] & other.0[k]))
    }

    pub fn is_subset(&self, other: &RootMask) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    /// Clears every bit at or below `i`.
    pub fn above(&self, i: usize) -> RootMask {
        let mut m = *self;
        let w = i >> 6;
        for k in 0..w {
            m.0[k] = 0;
        }
        let b = i & 63;
        m.0[w] &= if b == 63 { 0 } else { !0u64 << (b + 1) };
        m
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let t = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(k * 64 + t)
                }
            })
        })
    }

    pub fn first(&self) -> Option<usize> {
        self.iter().next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    proptest! {
        #[test]
        fn iter_matches_members(ix in prop::collection::btree_set(0usize..256, 0..40), cut in 0usize..256) {
            let m = RootMask::from_indices(ix.iter().copied());
            prop_assert_eq!(m.iter().collect::<Vec<_>>(), ix.iter().copied().collect::<Vec<_>>());
            prop_assert_eq!(m.len(), ix.len());
            let above: Vec<usize> = m.above(cut).iter().collect();
            prop_assert_eq!(above, ix.iter().copied().filter(|&i| i > cut).collect::<Vec<_>>());
        }
    }
}
