use std::cmp::Ordering;
use std::fmt;

/// A finite set of universe indices stored as a dense bit vector.
///
/// Trailing zero words are never stored, so equality and hashing are
/// extensional regardless of the universe width the set was built for.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct ElementSet {
    words: Vec<u64>,
}

impl ElementSet {
    pub fn new() -> Self {
        ElementSet { words: Vec::new() }
    }

    pub fn from_indices(indices: impl IntoIterator<Item = usize>) -> Self {
        let mut s = ElementSet::new();
        for i in indices {
            s.insert(i);
        }
        s
    }

    pub fn singleton(i: usize) -> Self {
        Self::from_indices([i])
    }

    fn trim(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn insert(&mut self, i: usize) {
        let w = i / 64;
        if w >= self.words.len() {
            self.words.resize(w + 1, 0);
        }
        self.words[w] |= 1 << (i % 64);
    }

    pub fn remove(&mut self, i: usize) {
        if let Some(w) = self.words.get_mut(i / 64) {
            *w &= !(1 << (i % 64));
        }
        self.trim();
    }

    pub fn contains(&self, i: usize) -> bool {
        self.words
            .get(i / 64)
            .is_some_and(|w| w & (1 << (i % 64)) != 0)
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// One past the largest member, or 0 for the empty set.
    pub fn bound(&self) -> usize {
        match self.words.last() {
            None => 0,
            Some(w) => (self.words.len() - 1) * 64 + (64 - w.leading_zeros() as usize),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut bits = w;
            std::iter::from_fn(move || {
                if bits == 0 {
                    return None;
                }
                let b = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.words.len() <= other.words.len()
            && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn is_disjoint(&self, other: &ElementSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == 0)
    }

    pub fn intersection_len(&self, other: &ElementSet) -> usize {
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    pub fn intersection(&self, other: &ElementSet) -> ElementSet {
        let mut s = ElementSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
        };
        s.trim();
        s
    }

    pub fn union(&self, other: &ElementSet) -> ElementSet {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w |= s;
        }
        ElementSet { words }
    }

    pub fn difference(&self, other: &ElementSet) -> ElementSet {
        let mut words = self.words.clone();
        for (w, o) in words.iter_mut().zip(&other.words) {
            *w &= !o;
        }
        let mut s = ElementSet { words };
        s.trim();
        s
    }

    /// All subsets of `self`, in increasing bitmask order over its members.
    /// Callers bound the member count; this panics above 40 members.
    pub fn subsets(&self) -> impl Iterator<Item = ElementSet> + '_ {
        let members = self.to_vec();
        assert!(members.len() <= 40, "subset enumeration over {} members", members.len());
        (0u64..1 << members.len()).map(move |mask| {
            ElementSet::from_indices(
                members
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &x)| x),
            )
        })
    }

    /// Order by size, then lexicographically on the sorted member lists.
    pub fn cmp_size_lex(&self, other: &ElementSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.cmp(other))
    }
}

/// Lexicographic order of the ascending member lists: `{1} < {1,2} < {2}`.
impl Ord for ElementSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for ElementSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, " ")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl FromIterator<usize> for ElementSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ElementSet::from_indices(iter)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn basic_ops() {
        let a = ElementSet::from_indices([1, 2, 70]);
        let b = ElementSet::from_indices([2, 3]);
        assert_eq!(a.len(), 3);
        assert_eq!(a.bound(), 71);
        assert_eq!(a.intersection(&b).to_vec(), vec![2]);
        assert_eq!(a.union(&b).to_vec(), vec![1, 2, 3, 70]);
        assert_eq!(a.difference(&b).to_vec(), vec![1, 70]);
        assert!(ElementSet::from_indices([1, 70]).is_subset(&a));
        assert!(!b.is_subset(&a));
        let mut c = a.clone();
        c.remove(70);
        assert_eq!(c, ElementSet::from_indices([1, 2]));
        assert_eq!(a.subsets().count(), 8);
    }

    #[test]
    fn ordering() {
        let s = |v: &[usize]| ElementSet::from_indices(v.iter().copied());
        assert!(s(&[1]) < s(&[1, 2]));
        assert!(s(&[1, 2]) < s(&[2]));
        assert!(s(&[2]).cmp_size_lex(&s(&[1, 2])).is_lt());
    }

    proptest! {
        #[test]
        fn set_algebra(a in proptest::collection::btree_set(0usize..200, 0..20),
                       b in proptest::collection::btree_set(0usize..200, 0..20)) {
            let x = ElementSet::from_indices(a.iter().copied());
            let y = ElementSet::from_indices(b.iter().copied());
            let inter: Vec<usize> = a.intersection(&b).copied().collect();
            prop_assert_eq!(x.intersection(&y).to_vec(), inter.clone());
            prop_assert_eq!(x.intersection_len(&y), inter.len());
            prop_assert_eq!(x.union(&y).to_vec(), a.union(&b).copied().collect::<Vec<_>>());
            prop_assert_eq!(x.is_disjoint(&y), inter.is_empty());
            prop_assert_eq!(x.is_subset(&y), a.is_subset(&b));
            prop_assert_eq!(x.cmp(&y), a.iter().cmp(b.iter()));
        }
    }
}
