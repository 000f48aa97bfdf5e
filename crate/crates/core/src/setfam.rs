//! Families of finite sets over a universe `0..N`.

use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::BigInt;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::scalar::Ratio;

/// A duplicate-free family of subsets of `0..universe_size`, kept in
/// first-seen order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetFamily {
    universe_size: usize,
    members: Vec<ElementSet>,
}

impl SetFamily {
    /// Drops repeated members; fails if a member leaves the universe.
    pub fn new(universe_size: usize, members: impl IntoIterator<Item = ElementSet>) -> Result<Self> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for m in members {
            if m.bound() > universe_size {
                return Err(Error::domain(format!(
                    "member {m} leaves a universe of size {universe_size}"
                )));
            }
            if seen.insert(m.clone()) {
                out.push(m);
            }
        }
        Ok(SetFamily {
            universe_size,
            members: out,
        })
    }

    /// Same universe, members already known to be distinct and in range.
    fn derived(&self, members: Vec<ElementSet>) -> SetFamily {
        SetFamily {
            universe_size: self.universe_size,
            members,
        }
    }

    pub fn empty(universe_size: usize) -> Self {
        SetFamily {
            universe_size,
            members: Vec::new(),
        }
    }

    pub fn universe_size(&self) -> usize {
        self.universe_size
    }

    pub fn members(&self) -> &[ElementSet] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, s: &ElementSet) -> bool {
        self.members.contains(s)
    }

    /// `||F||`, the average member size; zero for the empty family.
    pub fn avg_size(&self) -> Ratio {
        if self.members.is_empty() {
            return Ratio::from_integer(BigInt::from(0));
        }
        let total: usize = self.members.iter().map(ElementSet::len).sum();
        Ratio::new(BigInt::from(total), BigInt::from(self.members.len()))
    }

    pub fn max_size(&self) -> usize {
        self.members.iter().map(ElementSet::len).max().unwrap_or(0)
    }

    /// `Some(k)` when every member has size `k`.
    pub fn uniform_size(&self) -> Option<usize> {
        let k = self.members.first()?.len();
        self.members.iter().all(|m| m.len() == k).then_some(k)
    }

    pub fn union_elements(&self) -> ElementSet {
        self.members
            .iter()
            .fold(ElementSet::new(), |acc, m| acc.union(m))
    }

    fn check_universe(&self, x: &ElementSet) -> Result<()> {
        if x.bound() > self.universe_size {
            return Err(Error::domain(format!(
                "set {x} leaves a universe of size {}",
                self.universe_size
            )));
        }
        Ok(())
    }

    /// `F(X) = { A \ X : X subset of A }`.
    pub fn restrict(&self, x: &ElementSet) -> Result<SetFamily> {
        self.check_universe(x)?;
        // residues of distinct members containing x are distinct
        Ok(self.derived(
            self.members
                .iter()
                .filter(|a| x.is_subset(a))
                .map(|a| a.difference(x))
                .collect(),
        ))
    }

    /// `|F(X)|`, without building the residues.
    pub fn count_containing(&self, x: &ElementSet) -> usize {
        self.members.iter().filter(|a| x.is_subset(a)).count()
    }

    /// Members disjoint from `x`.
    pub fn avoid(&self, x: &ElementSet) -> Result<SetFamily> {
        self.check_universe(x)?;
        Ok(self.derived(
            self.members
                .iter()
                .filter(|a| a.is_disjoint(x))
                .cloned()
                .collect(),
        ))
    }

    /// Members containing at least one set of `s`.
    pub fn stars(&self, s: &[ElementSet]) -> Result<SetFamily> {
        for x in s {
            self.check_universe(x)?;
        }
        Ok(self.derived(
            self.members
                .iter()
                .filter(|a| s.iter().any(|x| x.is_subset(a)))
                .cloned()
                .collect(),
        ))
    }

    pub fn star(&self, x: &ElementSet) -> Result<SetFamily> {
        self.stars(std::slice::from_ref(x))
    }

    /// Members of `self` that are not members of `other`.
    pub fn without(&self, other: &SetFamily) -> SetFamily {
        let drop: HashSet<&ElementSet> = other.members.iter().collect();
        self.derived(
            self.members
                .iter()
                .filter(|a| !drop.contains(a))
                .cloned()
                .collect(),
        )
    }

    pub fn is_subfamily_of(&self, other: &SetFamily) -> bool {
        let all: HashSet<&ElementSet> = other.members.iter().collect();
        self.members.iter().all(|a| all.contains(a))
    }

    /// Every two members, and each member with itself, share `t` elements.
    pub fn is_t_intersecting(&self, t: usize) -> bool {
        self.members.iter().enumerate().all(|(i, a)| {
            a.len() >= t
                && self.members[i + 1..]
                    .iter()
                    .all(|b| a.intersection_len(b) >= t)
        })
    }

    pub fn sorted_members(&self) -> Vec<ElementSet> {
        let mut v = self.members.clone();
        v.sort();
        v
    }

    /// `tau(F)` with the lexicographically smallest minimum cover.
    pub fn covering_number(&self) -> Result<(usize, ElementSet)> {
        self.covering_number_with(&Guards::default())
    }

    pub fn covering_number_with(&self, guards: &Guards) -> Result<(usize, ElementSet)> {
        if self.members.is_empty() {
            return Err(Error::domain("covering number of the empty family"));
        }
        if self.members.iter().any(ElementSet::is_empty) {
            return Err(Error::domain("a family with the empty set has no cover"));
        }
        if self.universe_size > guards.cover_universe && self.members.len() > guards.cover_members {
            return Err(Error::limit(
                "cover-members",
                guards.cover_members as u64,
                self.members.len(),
            ));
        }
        let members: Vec<Vec<usize>> = self.members.iter().map(ElementSet::to_vec).collect();
        for k in 1..=members.len() {
            let mut chosen = Vec::with_capacity(k);
            let mut hit = vec![false; members.len()];
            if cover_dfs(&members, k, None, &mut chosen, &mut hit) {
                return Ok((k, ElementSet::from_indices(chosen)));
            }
        }
        unreachable!("one element per member always covers")
    }

    /// Line format: `N <size>`, then one member per line as increasing indices.
    pub fn to_text(&self) -> String {
        let mut s = format!("N {}\n", self.universe_size);
        for m in &self.members {
            let mut first = true;
            for x in m.iter() {
                if !first {
                    s.push(' ');
                }
                first = false;
                let _ = write!(s, "{x}");
            }
            s.push('\n');
        }
        s
    }

    pub fn parse(text: &str) -> Result<SetFamily> {
        let body = text.strip_suffix('\n').unwrap_or(text);
        let mut lines = body.split('\n');
        let header = lines.next().unwrap_or("");
        let n = header
            .strip_prefix("N ")
            .and_then(|v| v.parse::<usize>().ok())
            .ok_or_else(|| Error::Parse {
                line: 1,
                msg: format!("expected `N <size>`, got `{header}`"),
            })?;
        let mut members = Vec::new();
        let mut seen = HashSet::new();
        for (i, line) in lines.enumerate() {
            let lineno = i + 2;
            let err = |msg: String| Error::Parse { line: lineno, msg };
            let mut prev: Option<usize> = None;
            let mut m = ElementSet::new();
            if !line.is_empty() {
                for tok in line.split(' ') {
                    let x: usize = tok.parse().map_err(|_| err(format!("bad index `{tok}`")))?;
                    if x >= n {
                        return Err(err(format!("index {x} outside universe of size {n}")));
                    }
                    if prev.is_some_and(|p| p >= x) {
                        return Err(err("indices must be strictly increasing".into()));
                    }
                    prev = Some(x);
                    m.insert(x);
                }
            }
            if !seen.insert(m.clone()) {
                return Err(err("duplicate member".into()));
            }
            members.push(m);
        }
        Ok(SetFamily {
            universe_size: n,
            members,
        })
    }
}

/// Lex-order search for a cover of exactly `budget` more elements, all
/// larger than `last`.
fn cover_dfs(
    members: &[Vec<usize>],
    budget: usize,
    last: Option<usize>,
    chosen: &mut Vec<usize>,
    hit: &mut [bool],
) -> bool {
    let unhit: Vec<usize> = (0..members.len()).filter(|&i| !hit[i]).collect();
    if unhit.is_empty() {
        return true;
    }
    if budget == 0 {
        return false;
    }
    // every unhit member needs an element above `last`
    let mut limit = usize::MAX;
    for &i in &unhit {
        let top = *members[i].last().unwrap();
        if last.is_some_and(|l| top <= l) {
            return false;
        }
        limit = limit.min(top);
    }
    // disjoint unhit members need distinct elements
    let mut packed = ElementSet::new();
    let mut pack = 0;
    for &i in &unhit {
        let m = ElementSet::from_indices(members[i].iter().copied().filter(|&x| last.is_none_or(|l| x > l)));
        if m.is_disjoint(&packed) {
            packed = packed.union(&m);
            pack += 1;
        }
    }
    if pack > budget {
        return false;
    }
    let start = last.map_or(0, |l| l + 1);
    for e in start..=limit {
        let newly: Vec<usize> = unhit
            .iter()
            .copied()
            .filter(|&i| members[i].binary_search(&e).is_ok())
            .collect();
        if newly.is_empty() {
            continue;
        }
        for &i in &newly {
            hit[i] = true;
        }
        chosen.push(e);
        if cover_dfs(members, budget - 1, Some(e), chosen, hit) {
            return true;
        }
        chosen.pop();
        for &i in &newly {
            hit[i] = false;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(v: &[usize]) -> ElementSet {
        ElementSet::from_indices(v.iter().copied())
    }

    fn fam(n: usize, v: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, v.iter().map(|m| s(m))).unwrap()
    }

    fn k_subsets(n: usize, k: usize) -> SetFamily {
        let all = s(&(1..=n).collect::<Vec<_>>());
        SetFamily::new(n + 1, all.subsets().filter(|x| x.len() == k)).unwrap()
    }

    #[test]
    fn restrict_avoid_stars() {
        let f = fam(4, &[&[1, 2], &[1, 3], &[2, 3]]);
        assert_eq!(f.restrict(&ElementSet::new()).unwrap(), f);
        assert_eq!(f.restrict(&s(&[1])).unwrap().sorted_members(), vec![s(&[2]), s(&[3])]);
        assert_eq!(f.avoid(&ElementSet::new()).unwrap(), f);
        assert_eq!(f.avoid(&s(&[1])).unwrap().members(), &[s(&[2, 3])]);
        assert_eq!(f.stars(&[ElementSet::new()]).unwrap(), f);
        assert_eq!(f.stars(&[s(&[1])]).unwrap().len(), 2);
        assert_eq!(f.stars(&[s(&[1]), s(&[2, 3])]).unwrap().len(), 3);
        assert!(f.restrict(&s(&[9])).is_err());
    }

    #[test]
    fn dedupe_and_sizes() {
        let f = fam(5, &[&[1, 2], &[1, 2], &[3]]);
        assert_eq!(f.len(), 2);
        assert_eq!(f.avg_size(), Ratio::new(3.into(), 2.into()));
        assert_eq!(f.max_size(), 2);
        assert!(SetFamily::new(2, [s(&[2])]).is_err());
    }

    #[test]
    fn covers() {
        assert_eq!(fam(2, &[&[1]]).covering_number().unwrap(), (1, s(&[1])));
        assert_eq!(
            fam(4, &[&[1, 2], &[2, 3], &[1, 3]]).covering_number().unwrap(),
            (2, s(&[1, 2]))
        );
        for n in 2..=8 {
            for k in 1..=n {
                let (tau, y) = k_subsets(n, k).covering_number().unwrap();
                assert_eq!(tau, n - k + 1);
                assert_eq!(y, s(&(1..=n - k + 1).collect::<Vec<_>>()));
            }
        }
        assert!(SetFamily::empty(3).covering_number().is_err());
    }

    #[test]
    fn text_round_trip() {
        let f = fam(10, &[&[0, 9], &[], &[3, 4, 5]]);
        let t = f.to_text();
        assert_eq!(t, "N 10\n0 9\n\n3 4 5\n");
        assert_eq!(SetFamily::parse(&t).unwrap(), f);
        assert_eq!(SetFamily::parse("N 3\n").unwrap(), SetFamily::empty(3));
        assert!(SetFamily::parse("N 3\n2 1\n").is_err());
        assert!(SetFamily::parse("N 3\n3\n").is_err());
        assert!(SetFamily::parse("N 3\n1\n1\n").is_err());
        assert!(SetFamily::parse("3\n").is_err());
    }

    fn brute_tau(f: &SetFamily) -> (usize, ElementSet) {
        let u = f.union_elements();
        let mut best: Option<ElementSet> = None;
        for y in u.subsets() {
            if f.members().iter().all(|m| !m.is_disjoint(&y))
                && best.as_ref().is_none_or(|b| y.cmp_size_lex(b).is_lt())
            {
                best = Some(y);
            }
        }
        let b = best.unwrap();
        (b.len(), b)
    }

    fn arb_family() -> impl Strategy<Value = SetFamily> {
        proptest::collection::vec(proptest::collection::btree_set(0usize..10, 1..4), 1..8)
            .prop_map(|v| SetFamily::new(10, v.into_iter().map(ElementSet::from_indices)).unwrap())
    }

    proptest! {
        #[test]
        fn cover_matches_brute_force(f in arb_family()) {
            prop_assert_eq!(f.covering_number().unwrap(), brute_tau(&f));
        }

        #[test]
        fn cover_is_monotone(f in arb_family(), extra in proptest::collection::btree_set(0usize..10, 1..4)) {
            let g = SetFamily::new(10, f.members().iter().cloned().chain([ElementSet::from_indices(extra)])).unwrap();
            prop_assert!(g.covering_number().unwrap().0 >= f.covering_number().unwrap().0);
        }

        #[test]
        fn restriction_laws(f in arb_family(),
                            x in proptest::collection::btree_set(0usize..10, 0..3),
                            y in proptest::collection::btree_set(0usize..10, 0..3),
                            e in 0usize..10) {
            let x = ElementSet::from_indices(x);
            let y = ElementSet::from_indices(y).difference(&x);
            let r = f.restrict(&x).unwrap();
            prop_assert_eq!(r.len(), f.star(&x).unwrap().len());
            prop_assert_eq!(r.restrict(&y).unwrap(), f.restrict(&x.union(&y)).unwrap());
            let one = ElementSet::singleton(e);
            prop_assert_eq!(f.len(), f.star(&one).unwrap().len() + f.avoid(&one).unwrap().len());
            let union_bound: usize = x.iter().map(|v| f.star(&ElementSet::singleton(v)).unwrap().len()).sum();
            prop_assert!(f.avoid(&x).unwrap().len() + union_bound >= f.len());
            prop_assert!(f.avg_size() <= Ratio::from_integer(f.max_size().into()));
        }

        #[test]
        fn text_format_is_bit_exact(f in arb_family()) {
            let t = f.to_text();
            let g = SetFamily::parse(&t).unwrap();
            prop_assert_eq!(&g, &f);
            prop_assert_eq!(g.to_text(), t);
        }
    }
}
