//! Exact spreadness: spread factors, weak spreadness, maximal violators and
//! sunflowers.
//!
//! Only subsets of members can have a nonempty restriction, so every scan
//! runs over the distinct nonempty subsets of members. Thresholds are
//! compared by clearing denominators; floating point appears only in
//! [`RootRatio::to_f64`].

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::scalar::{ratio_to_f64, Ratio};
use crate::setfam::SetFamily;

/// The real number `base^(1/root)`, kept exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootRatio {
    pub base: Ratio,
    pub root: usize,
}

impl RootRatio {
    pub fn new(base: Ratio, root: usize) -> Self {
        assert!(root >= 1 && base.is_positive());
        RootRatio { base, root }
    }

    /// `r <= base^(1/root)`, for positive `r`.
    pub fn admits(&self, r: &Ratio) -> bool {
        num_traits::pow(r.clone(), self.root) <= self.base
    }

    pub fn to_f64(&self) -> f64 {
        let b = ratio_to_f64(&self.base);
        if b.is_finite() {
            b.powf(1.0 / self.root as f64)
        } else {
            let l = crate::scalar::log10_ratio(self.base.numer(), self.base.denom());
            10f64.powf(l / self.root as f64)
        }
    }
}

impl Ord for RootRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        let a = num_traits::pow(self.base.clone(), other.root);
        let b = num_traits::pow(other.base.clone(), self.root);
        a.cmp(&b)
    }
}

impl PartialOrd for RootRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for RootRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.root == 1 {
            write!(f, "{}", self.base)
        } else {
            write!(f, "({})^(1/{})", self.base, self.root)
        }
    }
}

/// Largest `r` for which a family is `r`-spread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpreadReport {
    /// `None` when no nonempty set has a nonempty restriction.
    pub r_star: Option<RootRatio>,
    /// Minimizing set, smallest in size-then-lex order among minimizers.
    pub witness: Option<ElementSet>,
    pub scanned: u64,
}

/// `|F(X)|` for every nonempty subset `X` of some member.
pub(crate) fn candidate_counts(f: &SetFamily, guards: &Guards) -> Result<HashMap<ElementSet, usize>> {
    let mut total: u64 = 0;
    for m in f.members() {
        let k = m.len();
        if k > 40 {
            return Err(Error::limit("candidates", guards.candidates, format!("member of size {k}")));
        }
        total = total.saturating_add(1u64 << k);
    }
    if total > guards.candidates {
        return Err(Error::limit("candidates", guards.candidates, total));
    }
    let counts = f
        .members()
        .par_iter()
        .fold(HashMap::new, |mut acc: HashMap<ElementSet, usize>, m| {
            for x in m.subsets() {
                if !x.is_empty() {
                    *acc.entry(x).or_insert(0) += 1;
                }
            }
            acc
        })
        .reduce(HashMap::new, |mut a, b| {
            for (k, v) in b {
                *a.entry(k).or_insert(0) += v;
            }
            a
        });
    Ok(counts)
}

/// Sorted candidate list, for deterministic scans.
fn sorted_candidates(counts: HashMap<ElementSet, usize>) -> Vec<(ElementSet, usize)> {
    let mut v: Vec<_> = counts.into_iter().collect();
    v.sort_by(|a, b| a.0.cmp_size_lex(&b.0));
    v
}

/// Powers of `p/q` with cleared denominators.
struct Powers {
    num: Vec<BigInt>,
    den: Vec<BigInt>,
}

impl Powers {
    fn new(r: &Ratio) -> Self {
        Powers {
            num: vec![BigInt::one(), r.numer().clone()],
            den: vec![BigInt::one(), r.denom().clone()],
        }
    }

    fn ensure(&mut self, k: usize) {
        while self.num.len() <= k {
            let n = &self.num[self.num.len() - 1] * &self.num[1];
            let d = &self.den[self.den.len() - 1] * &self.den[1];
            self.num.push(n);
            self.den.push(d);
        }
    }

    /// `c * r^k` compared with `total`.
    fn cmp_scaled(&mut self, c: usize, k: usize, total: usize) -> Ordering {
        self.ensure(k);
        (BigInt::from(c) * &self.num[k]).cmp(&(BigInt::from(total) * &self.den[k]))
    }
}

pub fn spread_factor(f: &SetFamily) -> Result<SpreadReport> {
    spread_factor_with(f, &Guards::default())
}

pub fn spread_factor_with(f: &SetFamily, guards: &Guards) -> Result<SpreadReport> {
    if f.is_empty() {
        return Err(Error::domain("spread factor of the empty family"));
    }
    let cands = sorted_candidates(candidate_counts(f, guards)?);
    let total = BigInt::from(f.len());
    let mut best: Option<(RootRatio, ElementSet)> = None;
    for (x, c) in &cands {
        let v = RootRatio::new(Ratio::new(total.clone(), BigInt::from(*c)), x.len());
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, x.clone()));
        }
    }
    let scanned = cands.len() as u64;
    Ok(match best {
        Some((r, w)) => SpreadReport {
            r_star: Some(r),
            witness: Some(w),
            scanned,
        },
        None => SpreadReport {
            r_star: None,
            witness: None,
            scanned,
        },
    })
}

/// Whether `|F(X)| r^|X| <= |F|` for all `X`; on failure, the smallest
/// violating `X` in size-then-lex order.
pub fn is_r_spread(f: &SetFamily, r: &Ratio) -> Result<(bool, Option<ElementSet>)> {
    is_r_spread_with(f, r, &Guards::default())
}

pub fn is_r_spread_with(f: &SetFamily, r: &Ratio, guards: &Guards) -> Result<(bool, Option<ElementSet>)> {
    if !r.is_positive() {
        return Err(Error::domain("spreadness parameter must be positive"));
    }
    if f.is_empty() {
        return Ok((true, None));
    }
    let cands = sorted_candidates(candidate_counts(f, guards)?);
    let mut pw = Powers::new(r);
    for (x, c) in cands {
        if pw.cmp_scaled(c, x.len(), f.len()) == Ordering::Greater {
            return Ok((false, Some(x)));
        }
    }
    Ok((true, None))
}

/// Best `t`-set of a family and the weak spreadness it certifies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeakSpread {
    /// A `t`-set maximizing `|A(T)|`, lexicographically first among ties.
    pub t_set: ElementSet,
    pub t_count: usize,
    /// `min (|A(T)| / |A(U)|)^(1/s)` over `(t+s)`-sets `U`; `None` if no such `U` meets a member.
    pub r: Option<RootRatio>,
    pub witness: Option<ElementSet>,
    pub scanned: u64,
}

pub fn weak_spread(a: &SetFamily, t: usize) -> Result<WeakSpread> {
    weak_spread_with(a, t, &Guards::default())
}

pub fn weak_spread_with(a: &SetFamily, t: usize, guards: &Guards) -> Result<WeakSpread> {
    if a.max_size() < t || a.is_empty() {
        return Err(Error::domain(format!("no member of size at least {t}")));
    }
    let cands = sorted_candidates(candidate_counts(a, guards)?);
    let (t_set, t_count) = if t == 0 {
        (ElementSet::new(), a.len())
    } else {
        let mut best: Option<(&ElementSet, usize)> = None;
        for (x, c) in cands.iter().filter(|(x, _)| x.len() == t) {
            // candidates are sorted, so the first maximum is lex-smallest
            if best.is_none_or(|(_, bc)| *c > bc) {
                best = Some((x, *c));
            }
        }
        let (x, c) = best.unwrap();
        (x.clone(), c)
    };
    let top = BigInt::from(t_count);
    let mut best: Option<(RootRatio, ElementSet)> = None;
    for (u, c) in cands.iter().filter(|(u, _)| u.len() > t) {
        let v = RootRatio::new(Ratio::new(top.clone(), BigInt::from(*c)), u.len() - t);
        if best.as_ref().is_none_or(|(b, _)| v < *b) {
            best = Some((v, u.clone()));
        }
    }
    let (r, witness) = match best {
        Some((r, w)) => (Some(r), Some(w)),
        None => (None, None),
    };
    Ok(WeakSpread {
        t_set,
        t_count,
        r,
        witness,
        scanned: cands.len() as u64,
    })
}

/// An inclusion-maximal `X` with `|F(X)| >= r^-|X| |F|`.
///
/// Grows from the empty set: each step moves to the qualifying strict
/// superset of smallest size, then largest count, then lex-smallest, and
/// stops when none qualifies.
pub fn find_max_violating(f: &SetFamily, r: &Ratio) -> Result<ElementSet> {
    find_max_violating_with(f, r, &Guards::default())
}

pub fn find_max_violating_with(f: &SetFamily, r: &Ratio, guards: &Guards) -> Result<ElementSet> {
    if *r <= Ratio::one() {
        return Err(Error::domain("violator search needs r > 1"));
    }
    if f.is_empty() {
        return Ok(ElementSet::new());
    }
    let cands = sorted_candidates(candidate_counts(f, guards)?);
    let mut pw = Powers::new(r);
    let qualifying: Vec<(ElementSet, usize)> = cands
        .into_iter()
        .filter(|(x, c)| pw.cmp_scaled(*c, x.len(), f.len()) != Ordering::Less)
        .collect();
    let mut x = ElementSet::new();
    loop {
        let next = qualifying
            .iter()
            .filter(|(y, _)| y.len() > x.len() && x.is_subset(y))
            .min_by(|(ya, ca), (yb, cb)| {
                ya.len()
                    .cmp(&yb.len())
                    .then(cb.cmp(ca))
                    .then_with(|| ya.cmp(yb))
            });
        match next {
            Some((y, _)) => x = y.clone(),
            None => return Ok(x),
        }
    }
}

/// For a `k`-uniform family with `|F| > alpha^k`, a set `X` with `|X| < k`
/// such that `F(X)` is `alpha`-spread.
pub fn find_spread_subfamily(f: &SetFamily, alpha: &Ratio) -> Result<(ElementSet, SetFamily)> {
    find_spread_subfamily_with(f, alpha, &Guards::default())
}

pub fn find_spread_subfamily_with(
    f: &SetFamily,
    alpha: &Ratio,
    guards: &Guards,
) -> Result<(ElementSet, SetFamily)> {
    let k = f
        .uniform_size()
        .ok_or_else(|| Error::precondition("family must be nonempty and uniform"))?;
    let size = Ratio::from_integer(BigInt::from(f.len()));
    if size <= num_traits::pow(alpha.clone(), k) {
        return Err(Error::precondition(format!(
            "need |F| = {} > alpha^{k} with alpha = {alpha}",
            f.len()
        )));
    }
    if is_r_spread_with(f, alpha, guards)?.0 {
        return Ok((ElementSet::new(), f.clone()));
    }
    let x = find_max_violating_with(f, alpha, guards)?;
    let g = f.restrict(&x)?;
    Ok((x, g))
}

/// `l` members whose pairwise intersections all equal their common core.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Sunflower {
    pub core: ElementSet,
    pub petals: Vec<ElementSet>,
}

/// Exact search: cores are tried in size-then-lex order (the empty core
/// first), and for each core a packing of `l` disjoint residues is sought.
pub fn find_sunflower(f: &SetFamily, l: usize) -> Result<Option<Sunflower>> {
    find_sunflower_with(f, l, &Guards::default())
}

pub fn find_sunflower_with(f: &SetFamily, l: usize, guards: &Guards) -> Result<Option<Sunflower>> {
    if l == 0 {
        return Err(Error::domain("sunflowers have at least one petal"));
    }
    if f.len() > guards.sunflower_members {
        return Err(Error::limit("sunflower-members", guards.sunflower_members as u64, f.len()));
    }
    if f.len() < l {
        return Ok(None);
    }
    let mut cores: Vec<ElementSet> = vec![ElementSet::new()];
    cores.extend(
        sorted_candidates(candidate_counts(f, guards)?)
            .into_iter()
            .filter(|(_, c)| *c >= l)
            .map(|(x, _)| x),
    );
    for core in cores {
        let star: Vec<&ElementSet> = f.members().iter().filter(|a| core.is_subset(a)).collect();
        if star.len() < l {
            continue;
        }
        let residues: Vec<ElementSet> = star.iter().map(|a| a.difference(&core)).collect();
        let mut pick = Vec::with_capacity(l);
        if pack(&residues, l, 0, &ElementSet::new(), &mut pick) {
            return Ok(Some(Sunflower {
                core,
                petals: pick.into_iter().map(|i| star[i].clone()).collect(),
            }));
        }
    }
    Ok(None)
}

fn pack(res: &[ElementSet], need: usize, from: usize, used: &ElementSet, pick: &mut Vec<usize>) -> bool {
    if pick.len() == need {
        return true;
    }
    if res.len() - from < need - pick.len() {
        return false;
    }
    for i in from..res.len() {
        if res[i].is_disjoint(used) {
            pick.push(i);
            if pack(res, need, i + 1, &used.union(&res[i]), pick) {
                return true;
            }
            pick.pop();
        }
    }
    false
}
