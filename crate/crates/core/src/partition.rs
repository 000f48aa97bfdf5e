//! Set partitions of `[n] = {1, ..., n}` in canonical form, their
//! enumeration, and the two intersection predicates.

use std::fmt;
use std::str::FromStr;

use crate::count;
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::scalar::BigCount;
use num_traits::ToPrimitive;

/// A partition of `[n]`.
///
/// Blocks are sorted ascending and ordered by their minimum element, so two
/// values are equal exactly when they describe the same partition.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Partition {
    n: usize,
    blocks: Vec<Vec<usize>>,
}

impl Partition {
    /// Builds a partition from arbitrary-order blocks over labels `1..=n`.
    pub fn new(n: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let mut seen = vec![false; n + 1];
        let mut blocks: Vec<Vec<usize>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        for b in &blocks {
            if b.is_empty() {
                return Err(Error::domain("partition has an empty block"));
            }
            for &x in b {
                if x == 0 || x > n {
                    return Err(Error::domain(format!("element {x} outside [1, {n}]")));
                }
                if seen[x] {
                    return Err(Error::domain(format!("element {x} appears twice")));
                }
                seen[x] = true;
            }
        }
        if let Some(x) = (1..=n).find(|&x| !seen[x]) {
            return Err(Error::domain(format!("element {x} is not covered")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        Ok(Partition { n, blocks })
    }

    /// Builds the partition encoded by a restricted growth string
    /// (`labels[i]` is the block of element `i + 1`).
    pub fn from_rgs(labels: &[usize]) -> Self {
        let k = labels.iter().copied().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            blocks[l].push(i + 1);
        }
        blocks.retain(|b| !b.is_empty());
        blocks.sort_unstable_by_key(|b| b[0]);
        Partition {
            n: labels.len(),
            blocks,
        }
    }

    pub fn singletons(n: usize) -> Self {
        Partition {
            n,
            blocks: (1..=n).map(|x| vec![x]).collect(),
        }
    }

    pub fn single_block(n: usize) -> Self {
        let blocks = if n == 0 { vec![] } else { vec![(1..=n).collect()] };
        Partition { n, blocks }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn num_blocks(&self) -> usize {
        self.blocks.len()
    }

    pub fn profile(&self) -> Profile {
        Profile::new(self.blocks.iter().map(Vec::len).collect())
            .expect("blocks of a partition are nonempty")
    }

    pub fn has_block(&self, block: &[usize]) -> bool {
        self.blocks
            .binary_search_by_key(&block.first().copied().unwrap_or(0), |b| b[0])
            .map(|i| self.blocks[i] == block)
            .unwrap_or(false)
    }

    /// Index of the block holding element `x`.
    pub fn block_of(&self, x: usize) -> Option<usize> {
        self.blocks.iter().position(|b| b.binary_search(&x).is_ok())
    }

    /// Restricted growth string; the inverse of [`Partition::from_rgs`].
    pub fn rgs(&self) -> Vec<usize> {
        let mut labels = vec![0; self.n];
        for (i, b) in self.blocks.iter().enumerate() {
            for &x in b {
                labels[x - 1] = i;
            }
        }
        labels
    }

    /// True when some block contains every element of `set`.
    pub fn block_contains(&self, set: &[usize]) -> bool {
        match set.first() {
            None => true,
            Some(&x) => match self.block_of(x) {
                Some(i) => set.iter().all(|y| self.blocks[i].binary_search(y).is_ok()),
                None => false,
            },
        }
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 0 {
            return write!(f, "()");
        }
        let compact = self.n <= 9;
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                write!(f, "|")?;
            }
            for (j, x) in b.iter().enumerate() {
                if j > 0 && !compact {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
        }
        Ok(())
    }
}

impl FromStr for Partition {
    type Err = Error;

    /// Parses `12|34` (single-digit labels) or `1,2|3,10` forms; `()` is the empty partition.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "()" {
            return Ok(Partition { n: 0, blocks: vec![] });
        }
        let bad = |m: String| Error::Parse { line: 0, msg: m };
        // label 10 is present whenever n >= 10, so a '0' marks the wide form
        let wide = s.contains([',', ' ', '0']);
        let mut blocks = Vec::new();
        for part in s.split('|') {
            let part = part.trim();
            let block: Vec<usize> = if wide {
                part.split([',', ' '])
                    .filter(|t| !t.is_empty())
                    .map(|t| t.parse::<usize>().map_err(|_| bad(format!("bad label `{t}`"))))
                    .collect::<Result<_>>()?
            } else {
                part.chars()
                    .map(|c| {
                        c.to_digit(10)
                            .map(|d| d as usize)
                            .ok_or_else(|| bad(format!("bad label `{c}`")))
                    })
                    .collect::<Result<_>>()?
            };
            blocks.push(block);
        }
        let n = blocks.iter().map(Vec::len).sum();
        Partition::new(n, blocks)
    }
}

/// A non-decreasing sequence of positive block sizes.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Profile {
    sizes: Vec<usize>,
}

impl Profile {
    /// Accepts sizes in any order and stores them sorted.
    pub fn new(mut sizes: Vec<usize>) -> Result<Self> {
        if sizes.contains(&0) {
            return Err(Error::domain("profile sizes must be positive"));
        }
        sizes.sort_unstable();
        Ok(Profile { sizes })
    }

    /// The `(k, l)` profile: `l` blocks of size `k`.
    pub fn uniform(k: usize, l: usize) -> Result<Self> {
        if k == 0 {
            return Err(Error::domain("block size must be positive"));
        }
        Ok(Profile { sizes: vec![k; l] })
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }

    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.sizes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sizes.is_empty()
    }

    /// `(size, multiplicity)` pairs in increasing size.
    pub fn multiplicities(&self) -> Vec<(usize, usize)> {
        let mut out: Vec<(usize, usize)> = Vec::new();
        for &s in &self.sizes {
            match out.last_mut() {
                Some((v, m)) if *v == s => *m += 1,
                _ => out.push((s, 1)),
            }
        }
        out
    }

    /// The profile with one block of size `s` removed.
    pub fn without(&self, s: usize) -> Option<Profile> {
        let i = self.sizes.iter().position(|&x| x == s)?;
        let mut sizes = self.sizes.clone();
        sizes.remove(i);
        Some(Profile { sizes })
    }
}

impl fmt::Display for Profile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FromStr for Profile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let sizes = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| {
                t.trim().parse::<usize>().map_err(|_| Error::Parse {
                    line: 0,
                    msg: format!("bad profile entry `{t}`"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Profile::new(sizes)
    }
}

fn check_same_ground(p: &Partition, q: &Partition) -> Result<()> {
    if p.n != q.n {
        return Err(Error::domain(format!(
            "partitions over different ground sets ({} vs {})",
            p.n, q.n
        )));
    }
    Ok(())
}

/// Number of blocks the two partitions have in common.
pub fn shared_blocks(p: &Partition, q: &Partition) -> Result<usize> {
    check_same_ground(p, q)?;
    let (mut i, mut j, mut shared) = (0, 0, 0);
    while i < p.blocks.len() && j < q.blocks.len() {
        let (a, b) = (&p.blocks[i], &q.blocks[j]);
        match a[0].cmp(&b[0]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                if a == b {
                    shared += 1;
                }
                i += 1;
                j += 1;
            }
        }
    }
    Ok(shared)
}

/// True when `p` and `q` share at least `t` blocks.
pub fn t_intersect(p: &Partition, q: &Partition, t: usize) -> Result<bool> {
    Ok(shared_blocks(p, q)? >= t)
}

/// Largest intersection between a block of `p` and a block of `q`.
pub fn max_block_overlap(p: &Partition, q: &Partition) -> Result<usize> {
    check_same_ground(p, q)?;
    let labels = q.rgs();
    let mut counts = vec![0usize; q.blocks.len()];
    let mut best = 0;
    for b in &p.blocks {
        for &x in b {
            counts[labels[x - 1]] += 1;
        }
        for &x in b {
            let c = &mut counts[labels[x - 1]];
            best = best.max(*c);
            *c = 0;
        }
    }
    Ok(best)
}

/// True when some block of `p` meets some block of `q` in at least `t` elements.
pub fn partially_t_intersect(p: &Partition, q: &Partition, t: usize) -> Result<bool> {
    if t == 0 {
        return Err(Error::domain("partial intersection needs t >= 1"));
    }
    Ok(max_block_overlap(p, q)? >= t)
}

/// Calls `f` with every restricted growth string of length `n`, in
/// lexicographic order. `f` returns `false` to stop early.
pub fn for_each_rgs(n: usize, mut f: impl FnMut(&[usize]) -> bool) {
    if n == 0 {
        f(&[]);
        return;
    }
    let mut a = vec![0usize; n];
    // m[i] = max(a[0..=i])
    let mut m = vec![0usize; n];
    loop {
        if !f(&a) {
            return;
        }
        let mut i = n - 1;
        loop {
            if i == 0 {
                return;
            }
            if a[i] <= m[i - 1] {
                a[i] += 1;
                m[i] = m[i - 1].max(a[i]);
                for j in i + 1..n {
                    a[j] = 0;
                    m[j] = m[i];
                }
                break;
            }
            i -= 1;
        }
    }
}

fn check_enum_n(n: usize, guards: &Guards) -> Result<()> {
    if n > guards.enum_n {
        return Err(Error::limit("enum-n", guards.enum_n as u64, format!("n = {n}")));
    }
    Ok(())
}

fn check_enum_count(c: &BigCount, guards: &Guards) -> Result<()> {
    if c.to_u64().is_none_or(|v| v > guards.enum_count) {
        return Err(Error::limit("enum-count", guards.enum_count, c));
    }
    Ok(())
}

/// All partitions of `[n]` in restricted-growth-string order.
pub fn enumerate_partitions(n: usize) -> Result<Vec<Partition>> {
    enumerate_partitions_with(n, &Guards::default())
}

pub fn enumerate_partitions_with(n: usize, guards: &Guards) -> Result<Vec<Partition>> {
    check_enum_n(n, guards)?;
    let mut out = Vec::new();
    for_each_rgs(n, |a| {
        out.push(Partition::from_rgs(a));
        true
    });
    Ok(out)
}

/// All partitions of `[n]` into exactly `l` blocks, in restricted-growth-string order.
pub fn enumerate_into_blocks(n: usize, l: usize) -> Result<Vec<Partition>> {
    enumerate_into_blocks_with(n, l, &Guards::default())
}

pub fn enumerate_into_blocks_with(n: usize, l: usize, guards: &Guards) -> Result<Vec<Partition>> {
    if l < 1 || l > n {
        return Err(Error::domain(format!("need 1 <= l <= n, got n = {n}, l = {l}")));
    }
    check_enum_count(&count::stirling2(n, l), guards)?;
    fn rec(a: &mut Vec<usize>, used: usize, n: usize, l: usize, out: &mut Vec<Partition>) {
        let i = a.len();
        if i == n {
            if used == l {
                out.push(Partition::from_rgs(a));
            }
            return;
        }
        // every remaining position may open at most one new block
        if l - used > n - i {
            return;
        }
        for label in 0..used.min(l) {
            a.push(label);
            rec(a, used, n, l, out);
            a.pop();
        }
        if used < l {
            a.push(used);
            rec(a, used + 1, n, l, out);
            a.pop();
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::with_capacity(n), 0, n, l, &mut out);
    Ok(out)
}

/// All partitions whose multiset of block sizes equals `p`.
///
/// Output order: blocks are chosen by increasing minimum element; for each,
/// sizes are tried in increasing order and companions in lexicographic order.
pub fn enumerate_profiled(p: &Profile) -> Result<Vec<Partition>> {
    enumerate_profiled_with(p, &Guards::default())
}

pub fn enumerate_profiled_with(p: &Profile, guards: &Guards) -> Result<Vec<Partition>> {
    check_enum_count(&count::count_profiled(p), guards)?;
    let n = p.n();
    let mut remaining = p.multiplicities();
    let mut used = vec![false; n + 1];
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    let mut out = Vec::new();

    fn choose(
        pool: &[usize],
        need: usize,
        start: usize,
        cur: &mut Vec<usize>,
        f: &mut dyn FnMut(&[usize]),
    ) {
        if need == 0 {
            f(cur);
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < need {
                break;
            }
            cur.push(pool[i]);
            choose(pool, need - 1, i + 1, cur, f);
            cur.pop();
        }
    }

    fn rec(
        n: usize,
        remaining: &mut Vec<(usize, usize)>,
        used: &mut Vec<bool>,
        blocks: &mut Vec<Vec<usize>>,
        out: &mut Vec<Partition>,
    ) {
        let first = match (1..=n).find(|&x| !used[x]) {
            None => {
                out.push(Partition {
                    n,
                    blocks: blocks.clone(),
                });
                return;
            }
            Some(x) => x,
        };
        used[first] = true;
        let pool: Vec<usize> = (first + 1..=n).filter(|&x| !used[x]).collect();
        for si in 0..remaining.len() {
            let (size, mult) = remaining[si];
            if mult == 0 || size - 1 > pool.len() {
                continue;
            }
            remaining[si].1 -= 1;
            let mut picks: Vec<Vec<usize>> = Vec::new();
            choose(&pool, size - 1, 0, &mut Vec::new(), &mut |c| picks.push(c.to_vec()));
            for c in picks {
                for &x in &c {
                    used[x] = true;
                }
                let mut block = Vec::with_capacity(size);
                block.push(first);
                block.extend_from_slice(&c);
                blocks.push(block);
                rec(n, remaining, used, blocks, out);
                blocks.pop();
                for &x in &c {
                    used[x] = false;
                }
            }
            remaining[si].1 += 1;
        }
        used[first] = false;
    }

    rec(n, &mut remaining, &mut used, &mut blocks, &mut out);
    Ok(out)
}

/// All `(k, l)`-partitions: `l` blocks of size `k` over `[k l]`.
pub fn enumerate_uniform(k: usize, l: usize) -> Result<Vec<Partition>> {
    enumerate_profiled(&Profile::uniform(k, l)?)
}

/// Number of partitions of `[n]` sharing no block with `p`, counted by
/// enumerating all of `B_n`.
pub fn count_derangements(p: &Partition) -> Result<BigCount> {
    count_derangements_with(p, &Guards::default())
}

pub fn count_derangements_with(p: &Partition, guards: &Guards) -> Result<BigCount> {
    let n = p.n();
    check_enum_n(n, guards)?;
    if n > 64 {
        return Err(Error::limit("enum-n", 64, format!("n = {n}")));
    }
    let mut forbidden: Vec<u64> = p
        .blocks()
        .iter()
        .map(|b| b.iter().fold(0u64, |m, &x| m | 1 << (x - 1)))
        .collect();
    forbidden.sort_unstable();
    let mut masks = vec![0u64; n];
    let mut total: u64 = 0;
    for_each_rgs(n, |a| {
        let k = a.iter().copied().max().map_or(0, |m| m + 1);
        masks[..k].iter_mut().for_each(|m| *m = 0);
        for (i, &l) in a.iter().enumerate() {
            masks[l] |= 1 << i;
        }
        if !masks[..k].iter().any(|m| forbidden.binary_search(m).is_ok()) {
            total += 1;
        }
        true
    });
    Ok(BigCount::from(total))
}
