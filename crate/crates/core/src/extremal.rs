//! Canonical intersecting families and an exact maximum-family oracle.

use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::clique::{all_cliques_of_size, max_clique, Graph};
use crate::count::{bell, binomial, count_profiled, stirling2, u_kl};
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::partition::{
    enumerate_into_blocks_with, enumerate_partitions_with, enumerate_profiled_with, partially_t_intersect,
    t_intersect, Partition, Profile,
};
use crate::report::{CheckReport, Record, Value, Verdict};
use crate::scalar::BigCount;

/// A conjectured-extremal family together with its anchor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CanonicalSpec {
    /// Partitions of `[n]` with `{1}, ..., {t}` as parts.
    Bell { n: usize, t: usize },
    /// Partitions of `[n]` into `l` blocks with `{1}, ..., {t}` as parts.
    Blocks { n: usize, l: usize, t: usize },
    /// Partitions with profile `profile` having each anchor as a part.
    Profiled { profile: Profile, anchors: Vec<Vec<usize>> },
    /// Partitions with profile `profile` having a block containing `t_set`.
    Partial { profile: Profile, t_set: Vec<usize> },
}

impl CanonicalSpec {
    pub fn partial_kl(k: usize, l: usize, t_set: Vec<usize>) -> Result<Self> {
        Ok(CanonicalSpec::Partial {
            profile: Profile::uniform(k, l)?,
            t_set,
        })
    }

    pub fn n(&self) -> usize {
        match self {
            CanonicalSpec::Bell { n, .. } | CanonicalSpec::Blocks { n, .. } => *n,
            CanonicalSpec::Profiled { profile, .. } | CanonicalSpec::Partial { profile, .. } => profile.n(),
        }
    }

    /// The predicate under which the family is intersecting.
    pub fn predicate(&self) -> Predicate {
        match self {
            CanonicalSpec::Bell { t, .. } | CanonicalSpec::Blocks { t, .. } => Predicate::TIntersect(*t),
            CanonicalSpec::Profiled { anchors, .. } => Predicate::TIntersect(anchors.len()),
            CanonicalSpec::Partial { t_set, .. } => Predicate::PartiallyTIntersect(t_set.len()),
        }
    }

    fn validate(&self) -> Result<()> {
        match self {
            CanonicalSpec::Bell { n, t } => {
                if t > n {
                    return Err(Error::domain(format!("t = {t} exceeds n = {n}")));
                }
            }
            CanonicalSpec::Blocks { n, l, t } => {
                if t > l || l > n || (t == l && n != t) {
                    return Err(Error::domain(format!("no partition of [{n}] into {l} blocks fixes {t} singletons")));
                }
            }
            CanonicalSpec::Profiled { profile, anchors } => {
                let mut rest = profile.clone();
                let mut seen = vec![false; profile.n() + 1];
                for a in anchors {
                    for &x in a {
                        if x == 0 || x > profile.n() || seen[x] {
                            return Err(Error::domain(format!("anchor element {x} invalid or repeated")));
                        }
                        seen[x] = true;
                    }
                    rest = rest
                        .without(a.len())
                        .ok_or_else(|| Error::domain(format!("profile {profile} has no free part of size {}", a.len())))?;
                }
            }
            CanonicalSpec::Partial { profile, t_set } => {
                let t = t_set.len();
                let mut s = t_set.clone();
                s.sort_unstable();
                s.dedup();
                if s.len() != t || s.iter().any(|&x| x == 0 || x > profile.n()) {
                    return Err(Error::domain("T must be a set of elements of the ground set"));
                }
                if profile.sizes().last().is_none_or(|&k| k < t) {
                    return Err(Error::domain(format!("no block of {profile} can contain {t} elements")));
                }
            }
        }
        Ok(())
    }

    /// Size by closed form.
    pub fn closed_form_size(&self) -> Result<BigCount> {
        self.validate()?;
        Ok(match self {
            CanonicalSpec::Bell { n, t } => bell(n - t),
            CanonicalSpec::Blocks { n, l, t } => stirling2(n - t, l - t),
            CanonicalSpec::Profiled { profile, anchors } => {
                let mut rest = profile.clone();
                for a in anchors {
                    rest = rest.without(a.len()).expect("validated");
                }
                count_profiled(&rest)
            }
            CanonicalSpec::Partial { profile, t_set } => {
                let t = t_set.len();
                let n = profile.n();
                let mut sizes: Vec<usize> = profile.sizes().to_vec();
                sizes.dedup();
                sizes
                    .into_iter()
                    .filter(|&s| s >= t)
                    .map(|s| binomial(n - t, s - t) * count_profiled(&profile.without(s).expect("size present")))
                    .sum()
            }
        })
    }

    pub fn contains(&self, p: &Partition) -> bool {
        match self {
            CanonicalSpec::Bell { t, .. } | CanonicalSpec::Blocks { t, .. } => (1..=*t).all(|x| p.has_block(&[x])),
            CanonicalSpec::Profiled { anchors, .. } => anchors.iter().all(|a| {
                let mut a = a.clone();
                a.sort_unstable();
                p.has_block(&a)
            }),
            CanonicalSpec::Partial { t_set, .. } => p.block_contains(t_set),
        }
    }

    /// All partitions the family lives in.
    pub fn universe(&self, guards: &Guards) -> Result<Vec<Partition>> {
        self.validate()?;
        match self {
            CanonicalSpec::Bell { n, .. } => enumerate_partitions_with(*n, guards),
            CanonicalSpec::Blocks { n, l, .. } => enumerate_into_blocks_with(*n, *l, guards),
            CanonicalSpec::Profiled { profile, .. } | CanonicalSpec::Partial { profile, .. } => {
                enumerate_profiled_with(profile, guards)
            }
        }
    }
}

impl fmt::Display for CanonicalSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CanonicalSpec::Bell { n, t } => write!(f, "bell n={n} t={t}"),
            CanonicalSpec::Blocks { n, l, t } => write!(f, "blocks n={n} l={l} t={t}"),
            CanonicalSpec::Profiled { profile, anchors } => write!(f, "profiled P={profile} X={anchors:?}"),
            CanonicalSpec::Partial { profile, t_set } => write!(f, "partial P={profile} T={t_set:?}"),
        }
    }
}

/// The family and its closed-form size; fails if enumeration disagrees.
pub fn canonical_family(spec: &CanonicalSpec) -> Result<(Vec<Partition>, BigCount)> {
    canonical_family_with(spec, &Guards::default())
}

pub fn canonical_family_with(spec: &CanonicalSpec, guards: &Guards) -> Result<(Vec<Partition>, BigCount)> {
    let size = spec.closed_form_size()?;
    let fam: Vec<Partition> = spec.universe(guards)?.into_iter().filter(|p| spec.contains(p)).collect();
    if BigCount::from(fam.len()) != size {
        return Err(Error::Integrity(format!(
            "{spec}: enumeration gives {} members, closed form {size}",
            fam.len()
        )));
    }
    Ok((fam, size))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Predicate {
    TIntersect(usize),
    PartiallyTIntersect(usize),
}

impl Predicate {
    pub fn holds(&self, p: &Partition, q: &Partition) -> bool {
        match *self {
            Predicate::TIntersect(t) => t_intersect(p, q, t).unwrap_or(false),
            Predicate::PartiallyTIntersect(t) => partially_t_intersect(p, q, t).unwrap_or(false),
        }
    }

    pub fn is_clique(&self, fam: &[Partition]) -> bool {
        fam.iter()
            .enumerate()
            .all(|(i, p)| fam[i + 1..].iter().all(|q| self.holds(p, q)))
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Predicate::TIntersect(t) => write!(f, "{t}-intersecting"),
            Predicate::PartiallyTIntersect(t) => write!(f, "partially-{t}-intersecting"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct OracleResult {
    pub max_size: usize,
    pub witness: Vec<Partition>,
    pub nodes: u64,
    pub elapsed: Duration,
    /// Every maximum family, when their number is within the guard.
    pub all_maximum: Option<Vec<Vec<Partition>>>,
}

pub fn compatibility_graph(universe: &[Partition], pred: Predicate) -> Graph {
    Graph::from_predicate(universe.len(), |i, j| pred.holds(&universe[i], &universe[j]))
}

/// Largest pairwise-compatible subfamily of `universe`.
pub fn max_compatible_family(universe: &[Partition], pred: Predicate, guards: &Guards) -> Result<OracleResult> {
    max_compatible_family_opts(universe, pred, guards, false)
}

/// As [`max_compatible_family`], optionally collecting all maximum families.
pub fn max_compatible_family_opts(
    universe: &[Partition],
    pred: Predicate,
    guards: &Guards,
    enumerate_all: bool,
) -> Result<OracleResult> {
    if universe.len() > guards.clique_vertices {
        return Err(Error::limit("clique-vertices", guards.clique_vertices as u64, universe.len()));
    }
    let start = Instant::now();
    let g = compatibility_graph(universe, pred);
    let r = max_clique(&g, guards.clique_vertices)?;
    let mut nodes = r.nodes;
    let all_maximum = if enumerate_all {
        let all = all_cliques_of_size(&g, r.clique.len(), guards.max_cliques, guards.clique_vertices)?;
        nodes += all.nodes;
        all.cliques
            .map(|cs| cs.into_iter().map(|c| c.into_iter().map(|i| universe[i].clone()).collect()).collect())
    } else {
        None
    };
    Ok(OracleResult {
        max_size: r.clique.len(),
        witness: r.clique.iter().map(|&i| universe[i].clone()).collect(),
        nodes,
        elapsed: start.elapsed(),
        all_maximum,
    })
}

/// Oracle sizes after shuffling the universe with each seed.
pub fn shuffled_max_sizes(universe: &[Partition], pred: Predicate, seeds: &[u64], guards: &Guards) -> Result<Vec<usize>> {
    seeds
        .iter()
        .map(|&seed| {
            let mut u = universe.to_vec();
            u.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
            Ok(max_compatible_family(&u, pred, guards)?.max_size)
        })
        .collect()
}

/// Some `t`-set lies inside a block of every member.
pub fn common_t_set(fam: &[Partition], t: usize) -> Option<Vec<usize>> {
    let first = fam.first()?;
    for b in first.blocks() {
        if b.len() < t {
            continue;
        }
        let mut found = None;
        for_each_combination(b, t, &mut |c| {
            if fam.iter().all(|p| p.block_contains(c)) {
                found = Some(c.to_vec());
                return false;
            }
            true
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn for_each_combination(items: &[usize], t: usize, f: &mut impl FnMut(&[usize]) -> bool) {
    fn rec(items: &[usize], t: usize, from: usize, cur: &mut Vec<usize>, f: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if cur.len() == t {
            return f(cur);
        }
        for i in from..items.len() {
            cur.push(items[i]);
            let go = rec(items, t, i + 1, cur, f);
            cur.pop();
            if !go {
                return false;
            }
        }
        true
    }
    rec(items, t, 0, &mut Vec::new(), f);
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Comparison {
    Equal,
    OracleLarger,
    /// Cannot happen while the canonical family is a clique.
    OracleSmaller,
    Skipped,
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Comparison::Equal => "equal",
            Comparison::OracleLarger => "oracle-larger",
            Comparison::OracleSmaller => "oracle-smaller",
            Comparison::Skipped => "skipped",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ConjectureOutcome {
    pub oracle: usize,
    pub canonical: BigCount,
    pub comparison: Comparison,
    /// `Some(true)` when every maximum family is some `C^T`.
    pub unique: Option<bool>,
    pub report: CheckReport,
}

/// Largest partially `t`-intersecting family of `(k, l)`-partitions
/// against the canonical `C^T`.
pub fn check_conjecture_instance(k: usize, l: usize, t: usize, guards: &Guards) -> Result<ConjectureOutcome> {
    if t == 0 || t > k {
        return Err(Error::domain(format!("need 1 <= t <= k, got t = {t}, k = {k}")));
    }
    let u = u_kl(k, l);
    if u > BigCount::from(guards.clique_vertices) {
        return Err(Error::limit("clique-vertices", guards.clique_vertices as u64, &u));
    }
    let spec = CanonicalSpec::partial_kl(k, l, (1..=t).collect())?;
    let universe = spec.universe(guards)?;
    let (canon, canonical) = canonical_family_with(&spec, guards)?;
    let pred = Predicate::PartiallyTIntersect(t);
    let params = format!("k={k} l={l} t={t}");
    let mut rep = CheckReport::new("conjecture", params.clone());
    let canon_clique = pred.is_clique(&canon);
    rep.push(Record::new(
        "canonical-is-clique",
        params.clone(),
        Value::int(canon.len()),
        Value::Absent,
        None,
        Verdict::from_bool(canon_clique),
    ));
    let res = max_compatible_family_opts(&universe, pred, guards, t > 1)?;
    let oracle = res.max_size;
    let comparison = if t == 1 {
        rep.note("every two partitions partially 1-intersect; canonical comparison skipped");
        Comparison::Skipped
    } else {
        match BigCount::from(oracle).cmp(&canonical) {
            std::cmp::Ordering::Equal => Comparison::Equal,
            std::cmp::Ordering::Greater => Comparison::OracleLarger,
            std::cmp::Ordering::Less => Comparison::OracleSmaller,
        }
    };
    let expected_oracle = if t == 1 { u.clone() } else { canonical.clone() };
    rep.push(Record::new(
        "oracle",
        format!("{params} oracle={oracle} canonical={canonical} {comparison}"),
        Value::int(oracle),
        Value::count(&expected_oracle),
        None,
        match comparison {
            Comparison::Equal => Verdict::Pass,
            Comparison::OracleSmaller => Verdict::Fail,
            Comparison::OracleLarger => Verdict::Finding,
            Comparison::Skipped => Verdict::from_bool(BigCount::from(oracle) == u),
        },
    ));
    let unique = if t == 1 {
        None
    } else {
        match &res.all_maximum {
            None => {
                rep.note("uniqueness unverified: too many maximum families");
                None
            }
            Some(all) => {
                let ok = comparison == Comparison::Equal && all.iter().all(|c| common_t_set(c, t).is_some());
                rep.push(Record::new(
                    "uniqueness",
                    params.clone(),
                    Value::int(all.len()),
                    Value::Absent,
                    None,
                    if ok { Verdict::Pass } else { Verdict::Finding },
                ));
                Some(ok)
            }
        }
    };
    Ok(ConjectureOutcome {
        oracle,
        canonical,
        comparison,
        unique,
        report: rep,
    })
}

/// One line of an instance catalog: `setting k l t n [expected]`, `-`
/// for fields a setting does not use.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub setting: Setting,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub t: usize,
    pub n: Option<usize>,
    pub expected: Option<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Setting {
    /// `(k, l)`-partitions, partially `t`-intersecting.
    Partial,
    /// Partitions of `[n]` into `l` blocks, `t`-intersecting.
    Blocks,
    /// All partitions of `[n]`, `t`-intersecting.
    Bell,
}

impl FromStr for Setting {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "partial" => Ok(Setting::Partial),
            "blocks" => Ok(Setting::Blocks),
            "bell" => Ok(Setting::Bell),
            _ => Err(Error::Parse {
                line: 0,
                msg: format!("unknown setting `{s}`"),
            }),
        }
    }
}

impl fmt::Display for Setting {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Setting::Partial => "partial",
            Setting::Blocks => "blocks",
            Setting::Bell => "bell",
        })
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let err = |msg: String| Error::Parse { line: i + 1, msg };
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 5 && f.len() != 6 {
            return Err(err(format!("expected 5 or 6 fields, got {}", f.len())));
        }
        let opt = |s: &str| -> Result<Option<usize>> {
            if s == "-" {
                Ok(None)
            } else {
                s.parse().map(Some).map_err(|_| err(format!("bad number `{s}`")))
            }
        };
        let setting: Setting = f[0].parse().map_err(|_| err(format!("unknown setting `{}`", f[0])))?;
        let entry = CatalogEntry {
            setting,
            k: opt(f[1])?,
            l: opt(f[2])?,
            t: opt(f[3])?.ok_or_else(|| err("t is required".into()))?,
            n: opt(f[4])?,
            expected: if f.len() == 6 { opt(f[5])? } else { None },
        };
        let need = match setting {
            Setting::Partial => entry.k.is_some() && entry.l.is_some(),
            Setting::Blocks => entry.l.is_some() && entry.n.is_some(),
            Setting::Bell => entry.n.is_some(),
        };
        if !need {
            return Err(err(format!("missing parameters for setting {setting}")));
        }
        out.push(entry);
    }
    Ok(out)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogResult {
    pub entry: CatalogEntry,
    pub oracle: usize,
    pub canonical: BigCount,
    pub canonical_is_clique: bool,
    pub status: String,
}

pub fn run_catalog_entry(e: &CatalogEntry, guards: &Guards) -> Result<CatalogResult> {
    let spec = match e.setting {
        Setting::Partial => CanonicalSpec::partial_kl(e.k.unwrap(), e.l.unwrap(), (1..=e.t).collect())?,
        Setting::Blocks => CanonicalSpec::Blocks {
            n: e.n.unwrap(),
            l: e.l.unwrap(),
            t: e.t,
        },
        Setting::Bell => CanonicalSpec::Bell { n: e.n.unwrap(), t: e.t },
    };
    let (canon, canonical) = canonical_family_with(&spec, guards)?;
    let pred = spec.predicate();
    let universe = spec.universe(guards)?;
    let res = max_compatible_family(&universe, pred, guards)?;
    let canonical_is_clique = pred.is_clique(&canon);
    let status = if !canonical_is_clique {
        "canonical-not-clique".to_string()
    } else {
        match e.expected {
            Some(x) if x == res.max_size => "match".into(),
            Some(_) => "mismatch".into(),
            None => "observed".into(),
        }
    };
    Ok(CatalogResult {
        entry: e.clone(),
        oracle: res.max_size,
        canonical,
        canonical_is_clique,
        status,
    })
}

pub const CATALOG_HEADER: &str = "# setting\tk\tl\tt\tn\texpected\toracle\tcanonical\tstatus";

impl fmt::Display for CatalogResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let o = |v: Option<usize>| v.map_or("-".to_string(), |x| x.to_string());
        write!(
            f,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            self.entry.setting,
            o(self.entry.k),
            o(self.entry.l),
            self.entry.t,
            o(self.entry.n),
            o(self.entry.expected),
            self.oracle,
            self.canonical,
            self.status
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::enumerate_uniform;

    #[test]
    fn canonical_sizes() {
        let g = Guards::default();
        let (_, s) = canonical_family_with(&CanonicalSpec::Bell { n: 5, t: 2 }, &g).unwrap();
        assert_eq!(s, BigCount::from(5u32));
        let (f, s) = canonical_family_with(&CanonicalSpec::partial_kl(2, 3, vec![1, 2]).unwrap(), &g).unwrap();
        assert_eq!(s, BigCount::from(3u32));
        assert!(Predicate::PartiallyTIntersect(2).is_clique(&f));
        let (_, s) = canonical_family_with(&CanonicalSpec::partial_kl(3, 3, vec![1, 2]).unwrap(), &g).unwrap();
        assert_eq!(s, BigCount::from(70u32));
        let (_, s) = canonical_family_with(&CanonicalSpec::Blocks { n: 6, l: 3, t: 1 }, &g).unwrap();
        assert_eq!(s, stirling2(5, 2));
        let spec = CanonicalSpec::Profiled {
            profile: "1,2,3".parse().unwrap(),
            anchors: vec![vec![4, 5]],
        };
        assert_eq!(canonical_family_with(&spec, &g).unwrap().1, BigCount::from(4u32));
        let mixed = CanonicalSpec::Partial {
            profile: "1,2,3".parse().unwrap(),
            t_set: vec![1, 2],
        };
        canonical_family_with(&mixed, &g).unwrap();
        assert!(canonical_family_with(&CanonicalSpec::Bell { n: 2, t: 3 }, &g).is_err());
        assert!(canonical_family_with(&CanonicalSpec::partial_kl(2, 3, vec![1, 2, 3]).unwrap(), &g).is_err());
    }

    #[test]
    fn small_oracles() {
        let g = Guards::default();
        let u22 = enumerate_uniform(2, 2).unwrap();
        assert_eq!(max_compatible_family(&u22, Predicate::PartiallyTIntersect(2), &g).unwrap().max_size, 1);
        let u23 = enumerate_uniform(2, 3).unwrap();
        assert_eq!(max_compatible_family(&u23, Predicate::PartiallyTIntersect(2), &g).unwrap().max_size, 3);
        let b3 = enumerate_partitions_with(3, &g).unwrap();
        let r = max_compatible_family(&b3, Predicate::TIntersect(1), &g).unwrap();
        assert_eq!(r.max_size, 2);
        assert!(Predicate::TIntersect(1).is_clique(&r.witness));
        assert_eq!(shuffled_max_sizes(&u23, Predicate::PartiallyTIntersect(2), &[1, 2, 3], &g).unwrap(), vec![3; 3]);
    }

    #[test]
    fn conjecture_small() {
        let g = Guards::default();
        let o = check_conjecture_instance(2, 3, 2, &g).unwrap();
        assert_eq!((o.oracle, o.comparison.clone()), (3, Comparison::Equal));
        assert_eq!(o.unique, Some(true));
        let o = check_conjecture_instance(2, 2, 2, &g).unwrap();
        assert_eq!(o.oracle, 1);
        let o = check_conjecture_instance(2, 3, 1, &g).unwrap();
        assert_eq!((o.oracle, o.comparison), (15, Comparison::Skipped));
        assert_eq!(o.report.verdict(), Verdict::Pass);
    }

    #[test]
    fn catalog_round() {
        let text = "# demo\npartial 2 3 2 - 3\nbell - - 1 3 2\nblocks - 3 2 5\n";
        let entries = parse_catalog(text).unwrap();
        assert_eq!(entries.len(), 3);
        let g = Guards::default();
        let rs: Vec<CatalogResult> = entries.iter().map(|e| run_catalog_entry(e, &g).unwrap()).collect();
        assert_eq!(rs[0].status, "match");
        assert_eq!(rs[1].status, "match");
        assert_eq!(rs[2].oracle, 1);
        assert_eq!(rs[0].to_string(), "partial\t2\t3\t2\t-\t3\t3\t3\tmatch");
        assert!(parse_catalog("bell - - 1\n").is_err());
        assert!(parse_catalog("partial - 3 2 - 3\n").is_err());
    }
}
