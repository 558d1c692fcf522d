//! Fixed-width color sets used as search domains.

pub(crate) trait ColorMask: Copy + Eq + Send + Sync + std::fmt::Debug + 'static {
    const CAPACITY: usize;

    fn empty() -> Self;
    /// `{0, 1, ..., n-1}`.
    fn below(n: usize) -> Self;
    fn bit(c: usize) -> Self;
    fn and(self, other: Self) -> Self;
    fn or(self, other: Self) -> Self;
    fn and_not(self, other: Self) -> Self;
    fn count(self) -> u32;
    fn is_empty(self) -> bool;
    fn contains(self, c: usize) -> bool;
    fn pop_lowest(&mut self) -> Option<usize>;
}

macro_rules! primitive_mask {
    ($t:ty) => {
        impl ColorMask for $t {
            const CAPACITY: usize = <$t>::BITS as usize;

            #[inline]
            fn empty() -> Self {
                0
            }
            #[inline]
            fn below(n: usize) -> Self {
                if n >= Self::CAPACITY {
                    !0
                } else {
                    ((1 as $t) << n) - 1
                }
            }
            #[inline]
            fn bit(c: usize) -> Self {
                (1 as $t) << c
            }
            #[inline]
            fn and(self, other: Self) -> Self {
                self & other
            }
            #[inline]
            fn or(self, other: Self) -> Self {
                self | other
            }
            #[inline]
            fn and_not(self, other: Self) -> Self {
                self & !other
            }
            #[inline]
            fn count(self) -> u32 {
                self.count_ones()
            }
            #[inline]
            fn is_empty(self) -> bool {
                self == 0
            }
            #[inline]
            fn contains(self, c: usize) -> bool {
                self >> c & 1 == 1
            }
            #[inline]
            fn pop_lowest(&mut self) -> Option<usize> {
                if *self == 0 {
                    None
                } else {
                    let c = self.trailing_zeros() as usize;
                    *self &= *self - 1;
                    Some(c)
                }
            }
        }
    };
}

primitive_mask!(u64);
primitive_mask!(u128);

/// 256 colors as four words.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub(crate) struct Wide([u64; 4]);

impl ColorMask for Wide {
    const CAPACITY: usize = 256;

    fn empty() -> Self {
        Wide([0; 4])
    }
    fn below(n: usize) -> Self {
        let mut w = [0u64; 4];
        for (i, word) in w.iter_mut().enumerate() {
            *word = <u64 as ColorMask>::below(n.saturating_sub(64 * i));
        }
        Wide(w)
    }
    fn bit(c: usize) -> Self {
        let mut w = [0u64; 4];
        w[c / 64] = 1 << (c % 64);
        Wide(w)
    }
    fn and(self, o: Self) -> Self {
        Wide(std::array::from_fn(|i| self.0[i] & o.0[i]))
    }
    fn or(self, o: Self) -> Self {
        Wide(std::array::from_fn(|i| self.0[i] | o.0[i]))
    }
    fn and_not(self, o: Self) -> Self {
        Wide(std::array::from_fn(|i| self.0[i] & !o.0[i]))
    }
    fn count(self) -> u32 {
        self.0.iter().map(|w| w.count_ones()).sum()
    }
    fn is_empty(self) -> bool {
        self.0 == [0; 4]
    }
    fn contains(self, c: usize) -> bool {
        self.0[c / 64] >> (c % 64) & 1 == 1
    }
    fn pop_lowest(&mut self) -> Option<usize> {
        for (i, word) in self.0.iter_mut().enumerate() {
            if let Some(c) = ColorMask::pop_lowest(word) {
                return Some(64 * i + c);
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn drain<M: ColorMask>(mut m: M) -> Vec<usize> {
        std::iter::from_fn(|| m.pop_lowest()).collect()
    }

    #[test]
    fn masks_agree() {
        for n in [0usize, 1, 5, 63, 64] {
            assert_eq!(drain(<u64 as ColorMask>::below(n)), (0..n).collect::<Vec<_>>());
            assert_eq!(drain(<u128 as ColorMask>::below(n)), (0..n).collect::<Vec<_>>());
            assert_eq!(drain(Wide::below(n)), (0..n).collect::<Vec<_>>());
        }
        let w = Wide::below(200).and_not(Wide::bit(70)).and(Wide::below(72));
        assert_eq!(w.count(), 71);
        assert!(!w.contains(70) && w.contains(71) && !w.contains(72));
        assert_eq!(drain(Wide::bit(130).or(Wide::bit(3))), vec![3, 130]);
    }
}
