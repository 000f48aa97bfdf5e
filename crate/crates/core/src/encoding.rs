//! Set interpretations of partitions.
//!
//! * Parts: every block is one element of a universe of nonempty subsets of
//!   `[n]`, registered lazily in first-seen order.
//! * Edges: every pair `{i, j}` of `[n]` is one element, and a partition maps
//!   to the pairs lying inside a common block.
//!
//! Also home to subpartitions and the count of `(k, l)`-partitions that
//! extend one.

use std::collections::HashMap;

use num_traits::{One, Zero};

use crate::bitset::ElementSet;
use crate::count::{binomial, factorial, u_kl};
use crate::error::{Error, Result};
use crate::partition::Partition;
use crate::scalar::{count_to_ratio, BigCount, Ratio};
use crate::setfam::SetFamily;

/// Registry of parts (blocks) of partitions of `[n]`.
#[derive(Clone, Debug, Default)]
pub struct PartsUniverse {
    n: usize,
    index: HashMap<Vec<usize>, usize>,
    parts: Vec<Vec<usize>>,
}

impl PartsUniverse {
    pub fn new(n: usize) -> Self {
        PartsUniverse {
            n,
            ..Default::default()
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of parts registered so far.
    pub fn size(&self) -> usize {
        self.parts.len()
    }

    pub fn part(&self, i: usize) -> Option<&[usize]> {
        self.parts.get(i).map(Vec::as_slice)
    }

    pub fn index_of(&self, block: &[usize]) -> Option<usize> {
        self.index.get(block).copied()
    }

    /// Index of `block`, registering it if unseen. `block` must be sorted.
    pub fn register(&mut self, block: &[usize]) -> usize {
        if let Some(&i) = self.index.get(block) {
            return i;
        }
        let i = self.parts.len();
        self.parts.push(block.to_vec());
        self.index.insert(block.to_vec(), i);
        i
    }

    /// Element set of already-registered parts; `None` if some part is unknown.
    pub fn lookup_parts(&self, blocks: &[Vec<usize>]) -> Option<ElementSet> {
        blocks.iter().map(|b| self.index_of(b)).collect()
    }

    pub fn encode(&mut self, p: &Partition) -> Result<ElementSet> {
        encode_parts(p, self)
    }

    pub fn decode(&self, s: &ElementSet) -> Result<Partition> {
        let blocks = s
            .iter()
            .map(|i| {
                self.part(i)
                    .map(<[usize]>::to_vec)
                    .ok_or_else(|| Error::domain(format!("index {i} is not a registered part")))
            })
            .collect::<Result<Vec<_>>>()?;
        Partition::new(self.n, blocks)
    }
}

/// Parts encoding: one element per block of `p`.
pub fn encode_parts(p: &Partition, u: &mut PartsUniverse) -> Result<ElementSet> {
    if p.n() != u.n {
        return Err(Error::domain(format!(
            "partition of [{}] in a parts universe over [{}]",
            p.n(),
            u.n
        )));
    }
    Ok(p.blocks().iter().map(|b| u.register(b)).collect())
}

/// The universe of unordered pairs of `[n]`, `C(n, 2)` elements.
///
/// Pair `{i, j}` with `1 <= i < j` has index `C(j - 1, 2) + (i - 1)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EdgeUniverse {
    n: usize,
}

impl EdgeUniverse {
    pub fn new(n: usize) -> Self {
        EdgeUniverse { n }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn size(&self) -> usize {
        self.n * self.n.saturating_sub(1) / 2
    }

    pub fn index(&self, a: usize, b: usize) -> usize {
        let (i, j) = if a < b { (a, b) } else { (b, a) };
        debug_assert!(i >= 1 && i < j && j <= self.n);
        (j - 1) * (j - 2) / 2 + (i - 1)
    }

    pub fn pair(&self, idx: usize) -> (usize, usize) {
        // largest j with C(j-1, 2) <= idx
        let mut j = 2;
        while j * (j - 1) / 2 <= idx {
            j += 1;
        }
        let i = idx - (j - 1) * (j - 2) / 2 + 1;
        (i, j)
    }

    pub fn encode(&self, p: &Partition) -> Result<ElementSet> {
        encode_edges(p, self)
    }
}

/// Edge encoding: all pairs inside a common block of `p`.
pub fn encode_edges(p: &Partition, u: &EdgeUniverse) -> Result<ElementSet> {
    if p.n() != u.n {
        return Err(Error::domain(format!(
            "partition of [{}] in an edge universe over [{}]",
            p.n(),
            u.n
        )));
    }
    let mut s = ElementSet::new();
    for b in p.blocks() {
        for (x, &i) in b.iter().enumerate() {
            for &j in &b[x + 1..] {
                s.insert(u.index(i, j));
            }
        }
    }
    Ok(s)
}

/// Disjoint blocks of size at least two inside `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubPartition {
    blocks: Vec<Vec<usize>>,
}

impl SubPartition {
    /// Validates and canonicalizes; `cap` bounds every block size when given.
    pub fn new(blocks: Vec<Vec<usize>>, cap: Option<usize>) -> Result<Self> {
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        let mut seen = std::collections::HashSet::new();
        for b in &blocks {
            if b.len() < 2 {
                return Err(Error::domain("subpartition blocks need at least two elements"));
            }
            if let Some(k) = cap {
                if b.len() > k {
                    return Err(Error::domain(format!(
                        "subpartition block of size {} exceeds {k}",
                        b.len()
                    )));
                }
            }
            for &x in b {
                if x == 0 || !seen.insert(x) {
                    return Err(Error::domain(format!("element {x} repeated or zero")));
                }
            }
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(SubPartition { blocks })
    }

    pub fn empty() -> Self {
        SubPartition { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    /// `m(X) = sum (|X_i| - 1)`.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.len() - 1).sum()
    }

    /// Number of elements covered by the blocks.
    pub fn support(&self) -> usize {
        self.blocks.iter().map(Vec::len).sum()
    }

    pub fn block_sizes(&self) -> Vec<usize> {
        self.blocks.iter().map(Vec::len).collect()
    }
}

impl std::str::FromStr for SubPartition {
    type Err = Error;

    /// Same notation as partitions, e.g. `12|345`; empty string for no blocks.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(SubPartition::empty());
        }
        let bad = |m: String| Error::Parse { line: 0, msg: m };
        let blocks = s
            .split('|')
            .map(|part| {
                if part.contains(',') {
                    part.split(',')
                        .map(|t| t.trim().parse::<usize>().map_err(|_| bad(format!("bad label `{t}`"))))
                        .collect::<Result<Vec<_>>>()
                } else {
                    part.trim()
                        .chars()
                        .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(|| bad(format!("bad label `{c}`"))))
                        .collect::<Result<Vec<_>>>()
                }
            })
            .collect::<Result<Vec<_>>>()?;
        SubPartition::new(blocks, None)
    }
}

pub fn subpartition_weight(x: &SubPartition) -> usize {
    x.weight()
}

/// Vertex sets of the nontrivial connected components of the graph `edges`.
pub fn edges_to_subpartition(edges: &ElementSet, u: &EdgeUniverse) -> SubPartition {
    let n = u.n();
    let mut parent: Vec<usize> = (0..=n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut touched = vec![false; n + 1];
    for idx in edges.iter() {
        let (i, j) = u.pair(idx);
        touched[i] = true;
        touched[j] = true;
        let (a, b) = (find(&mut parent, i), find(&mut parent, j));
        if a != b {
            parent[a.max(b)] = a.min(b);
        }
    }
    let mut groups: HashMap<usize, Vec<usize>> = HashMap::new();
    for x in (1..=n).filter(|&x| touched[x]) {
        let r = find(&mut parent, x);
        groups.entry(r).or_default().push(x);
    }
    let mut blocks: Vec<Vec<usize>> = groups.into_values().collect();
    blocks.sort_unstable_by_key(|b| b[0]);
    SubPartition { blocks }
}

/// `(k l - sum s_i)! / ((l - a)! (k!)^(l - a) prod (k - s_i)!)`: the number of
/// `(k, l)`-partitions that place the given disjoint blocks of sizes `s_i`
/// into pairwise distinct blocks.
pub fn count_extensions_distinct(k: usize, l: usize, sizes: &[usize]) -> BigCount {
    let a = sizes.len();
    if a > l || sizes.iter().any(|&s| s > k) {
        return BigCount::from(0u32);
    }
    let fixed: usize = sizes.iter().sum();
    let num = factorial(k * l - fixed);
    let mut den = factorial(l - a) * num_traits::pow(factorial(k), l - a);
    for &s in sizes {
        den *= factorial(k - s);
    }
    num / den
}

/// Number of `(k, l)`-partitions in which every block of `x` lies inside
/// some block. Blocks of `x` may share a block of the partition, so the
/// count sums [`count_extensions_distinct`] over all ways of grouping them.
pub fn count_extensions(k: usize, l: usize, x: &SubPartition) -> Result<BigCount> {
    for b in x.blocks() {
        if b.len() > k {
            return Err(Error::domain(format!(
                "subpartition block of size {} exceeds k = {k}",
                b.len()
            )));
        }
        if b.iter().any(|&e| e > k * l) {
            return Err(Error::domain(format!("subpartition leaves [{}]", k * l)));
        }
    }
    if x.num_blocks() == 0 {
        return Ok(u_kl(k, l));
    }
    Ok(count_extensions_by_shape(k, l, &x.block_sizes()))
}

/// [`count_extensions`] for a subpartition with the given block sizes.
pub fn count_extensions_by_shape(k: usize, l: usize, sizes: &[usize]) -> BigCount {
    ExtensionCounter::new(k, l).count(sizes)
}

/// Extension counts for many shapes at fixed `(k, l)`, sharing one memo.
///
/// A grouping with merged sizes `g_1..g_a'` contributes
/// `(kl - F)! / ((l - a')! (k!)^(l - a') prod (k - g_j)!)`, so only the
/// polynomial `sum over groupings of prod 1/(k - g_j)! * z^a'` is needed;
/// it is built over size multiplicities, always grouping the first
/// remaining block with a sub-multiset of the others.
pub struct ExtensionCounter {
    k: usize,
    l: usize,
    memo: HashMap<Vec<usize>, Vec<Ratio>>,
}

impl ExtensionCounter {
    pub fn new(k: usize, l: usize) -> Self {
        ExtensionCounter {
            k,
            l,
            memo: HashMap::new(),
        }
    }

    pub fn count(&mut self, sizes: &[usize]) -> BigCount {
        let (k, l) = (self.k, self.l);
        if sizes.iter().any(|&s| s > k) {
            return BigCount::from(0u32);
        }
        let fixed: usize = sizes.iter().sum();
        if fixed > k * l {
            return BigCount::from(0u32);
        }
        let mut mult = vec![0usize; k + 1];
        for &s in sizes {
            mult[s] += 1;
        }
        let poly = grouping_poly(k, &mult, &mut self.memo);
        let mut total = Ratio::zero();
        let kf = count_to_ratio(&factorial(k));
        let head = count_to_ratio(&factorial(k * l - fixed));
        for (groups, w) in poly.iter().enumerate() {
            if groups > l || w.is_zero() {
                continue;
            }
            let den = count_to_ratio(&factorial(l - groups)) * num_traits::pow(kf.clone(), l - groups);
            total += w * &head / den;
        }
        debug_assert!(total.is_integer());
        total.to_integer().to_biguint().expect("nonnegative count")
    }
}

fn grouping_poly(k: usize, mult: &[usize], memo: &mut HashMap<Vec<usize>, Vec<Ratio>>) -> Vec<Ratio> {
    let Some(first) = mult.iter().position(|&c| c > 0) else {
        return vec![Ratio::one()];
    };
    if let Some(v) = memo.get(mult) {
        return v.clone();
    }
    let mut rest = mult.to_vec();
    rest[first] -= 1;
    let mut out: Vec<Ratio> = Vec::new();
    // choose how many more blocks of each size join the first block
    let mut pick = vec![0usize; mult.len()];
    loop {
        let extra: usize = pick.iter().enumerate().map(|(s, &c)| s * c).sum();
        if first + extra <= k {
            let mut remaining = rest.clone();
            let mut ways = BigCount::from(1u32);
            for (s, &c) in pick.iter().enumerate() {
                remaining[s] -= c;
                ways *= binomial(rest[s], c);
            }
            let weight = count_to_ratio(&ways) / count_to_ratio(&factorial(k - first - extra));
            let sub = grouping_poly(k, &remaining, memo);
            if out.len() < sub.len() + 1 {
                out.resize(sub.len() + 1, Ratio::zero());
            }
            for (g, w) in sub.iter().enumerate() {
                out[g + 1] += w * &weight;
            }
        }
        // odometer over pick[s] in 0..=rest[s], pruned by the size cap
        let mut s = 0;
        let mut extra = extra;
        loop {
            if s == pick.len() {
                memo.insert(mult.to_vec(), out.clone());
                return out;
            }
            if s > 0 && pick[s] < rest[s] && first + extra + s <= k {
                pick[s] += 1;
                break;
            }
            extra -= s * pick[s];
            pick[s] = 0;
            s += 1;
        }
    }
}

/// Encodes every partition in parts form; returns the registry and the family.
pub fn parts_family(partitions: &[Partition]) -> Result<(PartsUniverse, SetFamily)> {
    let n = partitions.first().map_or(0, Partition::n);
    let mut u = PartsUniverse::new(n);
    let members = partitions
        .iter()
        .map(|p| encode_parts(p, &mut u))
        .collect::<Result<Vec<_>>>()?;
    let fam = SetFamily::new(u.size(), members)?;
    Ok((u, fam))
}

/// Encodes every partition of `[n]` in edge form.
pub fn edges_family(n: usize, partitions: &[Partition]) -> Result<(EdgeUniverse, SetFamily)> {
    let u = EdgeUniverse::new(n);
    let members = partitions
        .iter()
        .map(|p| encode_edges(p, &u))
        .collect::<Result<Vec<_>>>()?;
    let fam = SetFamily::new(u.size(), members)?;
    Ok((u, fam))
}
