use std::fmt;

/// A set of element indices of some parent group, packed as a bit vector.
///
/// Used for subgroups (where it is the canonical form: two subgroups are
/// equal iff their member bits are equal) and for arbitrary element sets.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubgroupSet {
    bits: Box<[u64]>,
}

impl SubgroupSet {
    pub fn empty(parent_order: usize) -> Self {
        Self {
            bits: vec![0u64; parent_order.div_ceil(64)].into_boxed_slice(),
        }
    }

    pub fn trivial(parent_order: usize) -> Self {
        let mut s = Self::empty(parent_order);
        s.insert(0);
        s
    }

    pub fn full(parent_order: usize) -> Self {
        let mut s = Self::empty(parent_order);
        for i in 0..parent_order {
            s.insert(i);
        }
        s
    }

    pub fn from_elements(parent_order: usize, elems: impl IntoIterator<Item = usize>) -> Self {
        let mut s = Self::empty(parent_order);
        for e in elems {
            s.insert(e);
        }
        s
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.bits[i >> 6] |= 1 << (i & 63);
    }

    #[inline]
    pub fn contains(&self, i: usize) -> bool {
        (self.bits[i >> 6] >> (i & 63)) & 1 == 1
    }

    /// Number of members.
    pub fn len(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// `log2(len)` for sets whose size is a power of two.
    pub fn log2_len(&self) -> u32 {
        self.len().trailing_zeros()
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.bits
            .iter()
            .zip(other.bits.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self {
            bits: self
                .bits
                .iter()
                .zip(other.bits.iter())
                .map(|(a, b)| a & b)
                .collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self {
            bits: self
                .bits
                .iter()
                .zip(other.bits.iter())
                .map(|(a, b)| a | b)
                .collect(),
        }
    }

    pub fn union_with(&mut self, other: &Self) {
        for (a, b) in self.bits.iter_mut().zip(other.bits.iter()) {
            *a |= b;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn words(&self) -> &[u64] {
        &self.bits
    }
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
