//! Fixed-universe bit sets used for edge and vertex subsets.

use std::cmp::Ordering;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Bits {
    words: Vec<u64>,
}

impl Bits {
    pub fn empty(universe: usize) -> Self {
        Bits {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn insert(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    fn zip_op(&self, other: &Bits, f: impl Fn(u64, u64) -> u64) -> Bits {
        debug_assert_eq!(self.words.len(), other.words.len());
        Bits {
            words: self
                .words
                .iter()
                .zip(&other.words)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        }
    }

    pub fn xor(&self, other: &Bits) -> Bits {
        self.zip_op(other, |a, b| a ^ b)
    }

    pub fn union(&self, other: &Bits) -> Bits {
        self.zip_op(other, |a, b| a | b)
    }

    pub fn intersection(&self, other: &Bits) -> Bits {
        self.zip_op(other, |a, b| a & b)
    }

    pub fn difference(&self, other: &Bits) -> Bits {
        self.zip_op(other, |a, b| a & !b)
    }

    pub fn intersects(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).any(|(&a, &b)| a & b != 0)
    }

    pub fn is_subset(&self, other: &Bits) -> bool {
        self.words.iter().zip(&other.words).all(|(&a, &b)| a & !b == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let bit = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(wi * 64 + bit)
                }
            })
        })
    }

    /// Lexicographic comparison of the ascending index sequences.
    /// This is the order induced by comparing sorted id lists, so a set is
    /// smaller than any proper superset sharing its prefix.
    pub fn cmp_indices(&self, other: &Bits) -> Ordering {
        let mut a = self.iter();
        let mut b = other.iter();
        loop {
            match (a.next(), b.next()) {
                (None, None) => return Ordering::Equal,
                (None, Some(_)) => return Ordering::Less,
                (Some(_), None) => return Ordering::Greater,
                (Some(x), Some(y)) => match x.cmp(&y) {
                    Ordering::Equal => continue,
                    ord => return ord,
                },
            }
        }
    }

    pub fn min_index(&self) -> Option<usize> {
        self.iter().next()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(universe: usize, items: &[usize]) -> Bits {
        let mut b = Bits::empty(universe);
        for &i in items {
            b.insert(i);
        }
        b
    }

    #[test]
    fn set_algebra() {
        let a = bits(70, &[0, 3, 65]);
        let b = bits(70, &[3, 64]);
        assert_eq!(a.xor(&b).iter().collect::<Vec<_>>(), vec![0, 64, 65]);
        assert_eq!(a.intersection(&b).iter().collect::<Vec<_>>(), vec![3]);
        assert!(a.intersects(&b));
        assert!(!bits(70, &[1]).intersects(&b));
        assert!(bits(70, &[3]).is_subset(&a));
        assert_eq!(a.count(), 3);
    }

    #[test]
    fn index_order() {
        let small = bits(10, &[0]);
        let bigger = bits(10, &[0, 2]);
        let other = bits(10, &[1]);
        assert_eq!(small.cmp_indices(&bigger), Ordering::Less);
        assert_eq!(bigger.cmp_indices(&other), Ordering::Less);
        assert_eq!(small.cmp_indices(&small.clone()), Ordering::Equal);
    }
}
