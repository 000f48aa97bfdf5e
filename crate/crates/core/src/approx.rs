//! Spread approximation by peeling, and the reduction sequence used to
//! compare a core family with the best `t`-star.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::bitset::ElementSet;
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::report::{CheckReport, Record, Value, Verdict};
use crate::scalar::{log2_interval, ratio_from_int, slack_ge, Ratio};
use crate::setfam::SetFamily;
use crate::spread::{
    find_max_violating_with, is_r_spread_with, spread_factor_with, weak_spread_with, RootRatio,
};

/// One round of the peeling loop.
#[derive(Clone, Debug, PartialEq)]
pub struct TraceStep {
    pub core: ElementSet,
    pub family_size: usize,
    /// `r^-|S| |F^i|`.
    pub threshold: Ratio,
    pub peeled: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ApproxResult {
    pub cores: Vec<ElementSet>,
    /// `F^i[S_i]`, aligned with `cores`.
    pub core_families: Vec<SetFamily>,
    pub remainder: SetFamily,
    pub trace: Vec<TraceStep>,
}

/// Peels `F^i[S_i]` off for maximal violators `S_i` until one exceeds size
/// `q` or nothing is left.
pub fn spread_approximate(f: &SetFamily, r: &Ratio, q: usize) -> Result<ApproxResult> {
    spread_approximate_with(f, r, q, &Guards::default())
}

pub fn spread_approximate_with(
    f: &SetFamily,
    r: &Ratio,
    q: usize,
    guards: &Guards,
) -> Result<ApproxResult> {
    if *r <= Ratio::one() {
        return Err(Error::domain("peeling needs r > 1"));
    }
    if q == 0 {
        return Err(Error::domain("peeling needs q >= 1"));
    }
    let mut cur = f.clone();
    let mut res = ApproxResult {
        cores: Vec::new(),
        core_families: Vec::new(),
        remainder: SetFamily::empty(f.universe_size()),
        trace: Vec::new(),
    };
    while !cur.is_empty() {
        let s = find_max_violating_with(&cur, r, guards)?;
        let threshold =
            ratio_from_int(cur.len() as u64) / num_traits::pow(r.clone(), s.len());
        let peeled = s.len() <= q;
        res.trace.push(TraceStep {
            core: s.clone(),
            family_size: cur.len(),
            threshold,
            peeled,
        });
        if !peeled {
            break;
        }
        let star = cur.star(&s)?;
        cur = cur.without(&star);
        res.cores.push(s);
        res.core_families.push(star);
    }
    res.remainder = cur;
    Ok(res)
}

/// Hypotheses under which the peeling conclusions are claimed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxGates {
    pub r_large: bool,
    pub r_vs_q: bool,
    pub r0_vs_r: bool,
    pub a_r0_spread: Option<bool>,
    pub f_t_intersecting: bool,
}

impl ApproxGates {
    pub fn all(&self) -> bool {
        self.r_large && self.r_vs_q && self.r0_vs_r && self.a_r0_spread == Some(true) && self.f_t_intersecting
    }
}

fn big(v: usize) -> Value {
    Value::int(BigInt::from(v))
}

fn rat(v: usize) -> Ratio {
    ratio_from_int(v as u64)
}

/// Re-derives the peeling from `f` and checks every conclusion exactly.
/// Gates are reported separately; a conclusion outside its gates that
/// fails is reported as info, since nothing is claimed there.
#[allow(clippy::too_many_arguments)]
pub fn verify_approx(
    res: &ApproxResult,
    f: &SetFamily,
    a: &SetFamily,
    r: &Ratio,
    r0: &Ratio,
    q: usize,
    t: usize,
    guards: &Guards,
) -> Result<(CheckReport, ApproxGates)> {
    if !f.is_subfamily_of(a) {
        return Err(Error::Integrity("F is not a subfamily of A".into()));
    }
    if res.cores.len() != res.core_families.len() {
        return Err(Error::Integrity("cores and core families differ in length".into()));
    }
    let mut cur = f.clone();
    for (s, fb) in res.cores.iter().zip(&res.core_families) {
        if s.len() > q {
            return Err(Error::Integrity(format!("core {s} larger than q = {q}")));
        }
        let star = cur.star(s)?;
        if star != *fb {
            return Err(Error::Integrity(format!("core family of {s} is not F^i[S_i]")));
        }
        cur = cur.without(&star);
    }
    if cur != res.remainder {
        return Err(Error::Integrity("remainder does not match the peeling".into()));
    }

    let k = f.max_size().max(1);
    let log2k = log2_interval(&rat(2 * k));
    let a_r0_spread = match is_r_spread_with(a, r0, guards) {
        Ok((ok, _)) => Some(ok),
        Err(Error::ResourceLimit { .. }) => None,
        Err(e) => return Err(e),
    };
    let gates = ApproxGates {
        r_large: *r > &log2k.hi * rat(4096),
        r_vs_q: *r >= rat(2 * q),
        r0_vs_r: r0 > r,
        a_r0_spread,
        f_t_intersecting: f.is_t_intersecting(t),
    };

    let params = format!("r={r} r0={r0} q={q} t={t} |F|={} |A|={}", f.len(), a.len());
    let mut rep = CheckReport::new("approx", params.clone());
    let gate = |name: &str, ok: bool| Record::info(format!("gate-{name}"), params.clone(), Value::Text(ok.to_string()));
    rep.push(gate("r>2^12*log2(2k)", gates.r_large));
    rep.push(gate("r>=2q", gates.r_vs_q));
    rep.push(gate("r0>r", gates.r0_vs_r));
    rep.push(match gates.a_r0_spread {
        Some(ok) => gate("A-r0-spread", ok),
        None => Record::new("gate-A-r0-spread", params.clone(), Value::Absent, Value::Absent, None, Verdict::Skipped),
    });
    rep.push(gate("F-t-intersecting", gates.f_t_intersecting));

    let peeled: usize = res.core_families.iter().map(SetFamily::len).sum();
    let total = peeled + res.remainder.len();
    rep.push(Record::new(
        "conservation",
        params.clone(),
        big(total),
        big(f.len()),
        None,
        Verdict::from_bool(total == f.len()),
    ));

    let covered = f.without(&res.remainder);
    let star = a.stars(&res.cores)?;
    let cover_ok = covered.is_subfamily_of(&star);
    rep.push(Record::new(
        "coverage",
        params.clone(),
        big(covered.len()),
        big(star.len()),
        None,
        Verdict::from_bool(cover_ok),
    ));

    for (s, fb) in res.cores.iter().zip(&res.core_families) {
        let g = fb.restrict(s)?;
        let (ok, _) = is_r_spread_with(&g, r, guards)?;
        let rs = spread_factor_with(&g, guards)?.r_star;
        rep.push(Record::new(
            "core-spread",
            format!("S={s} |F_B|={}", fb.len()),
            rs.map_or(Value::Text("inf".into()), |v| Value::Text(v.to_string())),
            Value::Rat(r.clone()),
            None,
            Verdict::from_bool(ok),
        ));
    }

    // |F'| <= (r/r0)^(q+1) |A|
    let bound = num_traits::pow(r / r0, q + 1) * rat(a.len());
    let lhs = rat(res.remainder.len());
    let holds = lhs <= bound;
    rep.push(Record::new(
        "remainder",
        params.clone(),
        big(res.remainder.len()),
        Value::Rat(bound.clone()),
        Some(slack_ge(&bound, &lhs)),
        match (holds, gates.a_r0_spread == Some(true) && gates.r0_vs_r) {
            (true, _) => Verdict::Pass,
            (false, true) => Verdict::Fail,
            (false, false) => Verdict::Info,
        },
    ));

    let cores = SetFamily::new(f.universe_size(), res.cores.clone())?;
    let inter = cores.is_t_intersecting(t);
    rep.push(Record::new(
        "cores-t-intersecting",
        params.clone(),
        Value::Text(inter.to_string()),
        Value::Absent,
        None,
        match (inter, gates.all()) {
            (true, _) => Verdict::Pass,
            (false, true) => Verdict::Fail,
            (false, false) => Verdict::Info,
        },
    ));
    Ok((rep, gates))
}

/// Shrinks members to proper subsets while the family stays
/// `t`-intersecting, until no member can shrink.
pub fn minimize_t_intersecting(s: &SetFamily, t: usize, p: usize) -> Result<SetFamily> {
    if !s.is_t_intersecting(t) {
        return Err(Error::precondition(format!("family is not {t}-intersecting")));
    }
    if s.max_size() > p {
        return Err(Error::precondition(format!("a member is larger than p = {p}")));
    }
    let mut cur = s.sorted_members();
    'outer: loop {
        for i in 0..cur.len() {
            let mut subs: Vec<ElementSet> = cur[i]
                .subsets()
                .filter(|x| x.len() >= t && x.len() < cur[i].len())
                .collect();
            subs.sort_by(ElementSet::cmp_size_lex);
            for x in subs {
                let fits = cur
                    .iter()
                    .enumerate()
                    .all(|(j, o)| j == i || x.intersection_len(o) >= t);
                if fits {
                    cur[i] = x;
                    cur.sort();
                    cur.dedup();
                    continue 'outer;
                }
            }
        }
        break;
    }
    SetFamily::new(s.universe_size(), cur)
}

/// Every proper subset of every member misses some member in `t` places.
pub fn is_minimal_t_intersecting(s: &SetFamily, t: usize) -> bool {
    s.members().iter().all(|m| {
        m.subsets()
            .filter(|x| x.len() < m.len())
            .all(|x| s.members().iter().any(|o| x.intersection_len(o) < t))
    })
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionStep {
    pub t_family: SetFamily,
    pub w_family: SetFamily,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Reduction {
    /// `(T_i, W_i)` for `i = 0..=q-t`.
    pub steps: Vec<ReductionStep>,
    /// `T_{q-t+1}`, always empty.
    pub last: SetFamily,
    /// Best `t`-set of `A` and the weak spreadness used for the step check.
    pub t_set: ElementSet,
    pub report: CheckReport,
}

/// `T_0` minimizes `S`; `W_i` holds the members of `T_i` of size `q-i`, and
/// `T_{i+1}` minimizes `T_i \ W_i`. `r` defaults to the weak spreadness of
/// `A` at its best `t`-set.
pub fn reduction_sequence(
    a: &SetFamily,
    s: &SetFamily,
    q: usize,
    t: usize,
    r: Option<RootRatio>,
    guards: &Guards,
) -> Result<Reduction> {
    if a.is_empty() {
        return Err(Error::precondition("A must be nonempty"));
    }
    if t == 0 || t > q {
        return Err(Error::precondition(format!("need 1 <= t <= q, got t = {t}, q = {q}")));
    }
    let t0 = minimize_t_intersecting(s, t, q)?;
    let mut steps = Vec::new();
    let mut cur = t0;
    for i in 0..=q - t {
        let w: Vec<ElementSet> = cur.members().iter().filter(|m| m.len() == q - i).cloned().collect();
        let w = SetFamily::new(cur.universe_size(), w)?;
        let rest = cur.without(&w);
        let next = minimize_t_intersecting(&rest, t, q - i - 1)?;
        steps.push(ReductionStep {
            t_family: cur,
            w_family: w,
        });
        cur = next;
    }
    let last = cur;

    let ws = weak_spread_with(a, t, guards)?;
    let weak_r = ws.r.clone();
    let r_used = r.clone().or(weak_r.clone());
    let claimed = match (&r, &weak_r) {
        (None, _) => true,
        (Some(_), None) => true,
        (Some(given), Some(w)) => given <= w,
    };
    let params = format!("q={q} t={t} |A|={} |S|={}", a.len(), s.len());
    let mut rep = CheckReport::new("reduction", params.clone());
    rep.push(Record::info(
        "weak-spread",
        format!("T={}", ws.t_set),
        weak_r.as_ref().map_or(Value::Text("inf".into()), |v| Value::Text(v.to_string())),
    ));

    let star_s = a.stars(s.members())?;
    let star_t0 = a.stars(steps[0].t_family.members())?;
    rep.push(Record::new(
        "obs-coverage",
        "A[S] in A[T_0]",
        big(star_s.len()),
        big(star_t0.len()),
        None,
        Verdict::from_bool(star_s.is_subfamily_of(&star_t0)),
    ));

    for (i, st) in steps.iter().enumerate() {
        let pi = format!("i={i} |T_i|={} |W_i|={}", st.t_family.len(), st.w_family.len());
        let cap = q - i;
        rep.push(Record::new(
            "size-cap",
            pi.clone(),
            big(st.t_family.max_size()),
            big(cap),
            None,
            Verdict::from_bool(st.t_family.max_size() <= cap),
        ));
        if i > 0 {
            let prev = &steps[i - 1];
            let lhs = a.stars(prev.t_family.members())?;
            let mut union: Vec<ElementSet> = st.t_family.members().to_vec();
            union.extend(prev.w_family.members().iter().cloned());
            let rhs = a.stars(&union)?;
            rep.push(Record::new(
                "star-inclusion",
                pi.clone(),
                big(lhs.len()),
                big(rhs.len()),
                None,
                Verdict::from_bool(lhs.is_subfamily_of(&rhs)),
            ));
        }
        rep.push(no_spread_subfamily(&st.t_family, q - i - t + 1, &pi, guards));
        let e = (q - i - t) as u32;
        let bound = BigInt::from(6 * (q - i)).pow(e);
        let lhs = BigInt::from(st.w_family.len());
        rep.push(Record::new(
            "w-size",
            pi.clone(),
            Value::Int(lhs.clone()),
            Value::Int(bound.clone()),
            Some(slack_ge(&Ratio::from_integer(bound.clone()), &Ratio::from_integer(lhs.clone()))),
            Verdict::from_bool(lhs <= bound),
        ));
        let single_t = |fam: &SetFamily| fam.len() == 1 && fam.members()[0].len() == t;
        if i > 0 && single_t(&st.t_family) && !single_t(&steps[i - 1].t_family) {
            let prev = &steps[i - 1];
            let rest = prev.t_family.without(&prev.w_family);
            let lhs = a.stars(rest.members())?.len();
            let top = a.count_containing(&ws.t_set);
            rep.push(step_bound(lhs, top, q, r_used.as_ref(), claimed, &pi));
        }
    }
    Ok(Reduction {
        steps,
        last,
        t_set: ws.t_set,
        report: rep,
    })
}

/// `|A[T_{i-1} \ W_{i-1}]| <= (q/r) |A[T]|`, i.e. `lhs * r <= q * top`.
fn step_bound(lhs: usize, top: usize, q: usize, r: Option<&RootRatio>, claimed: bool, params: &str) -> Record {
    let rhs_scaled = rat(q * top);
    let (holds, rhs) = match r {
        None => (lhs == 0, Value::int(0)),
        Some(rr) => {
            // lhs * base^(1/root) <= q top  <=>  base * lhs^root <= (q top)^root
            let l = num_traits::pow(rat(lhs), rr.root);
            let rq = num_traits::pow(rhs_scaled.clone(), rr.root);
            let ok = &rr.base * l <= rq;
            (ok, Value::Text(format!("{q}*{top}/{rr}")))
        }
    };
    let verdict = match (holds, claimed) {
        (true, _) => Verdict::Pass,
        (false, true) => Verdict::Fail,
        (false, false) => Verdict::Info,
    };
    Record::new("step-bound", params, big(lhs), rhs, None, verdict)
}

/// Searches for a subfamily `Y` and a set `X` with `|Y(X)| > 1` and `Y(X)`
/// spread beyond `c`.
fn no_spread_subfamily(t_fam: &SetFamily, c: usize, params: &str, guards: &Guards) -> Record {
    let m = t_fam.len();
    let sub_count = if m >= 63 { u64::MAX } else { 1u64 << m };
    let per: u64 = t_fam
        .members()
        .iter()
        .map(|x| 1u64.checked_shl(x.len() as u32).unwrap_or(u64::MAX))
        .fold(0u64, |a, b| a.saturating_add(b));
    let space = sub_count.saturating_mul(per.max(1));
    if space > guards.lemma_search {
        return Record::new("no-spread-subfamily", params, big(m), Value::int(guards.lemma_search), None, Verdict::Skipped);
    }
    let c = rat(c);
    let members = t_fam.members();
    for mask in 1u64..sub_count {
        if mask.count_ones() < 2 {
            continue;
        }
        let y: Vec<ElementSet> = (0..m).filter(|b| mask >> b & 1 == 1).map(|b| members[b].clone()).collect();
        let yf = SetFamily::new(t_fam.universe_size(), y).expect("subfamily of a valid family");
        let mut xs: Vec<ElementSet> = vec![ElementSet::new()];
        for mem in yf.members() {
            xs.extend(mem.subsets().filter(|x| !x.is_empty()));
        }
        xs.sort_by(ElementSet::cmp_size_lex);
        xs.dedup();
        for x in xs {
            if yf.count_containing(&x) < 2 {
                continue;
            }
            let yx = yf.restrict(&x).expect("subset of a member");
            let Ok(sp) = spread_factor_with(&yx, guards) else { continue };
            let beyond = match &sp.r_star {
                None => true,
                Some(rs) => num_traits::pow(c.clone(), rs.root).cmp(&rs.base) == Ordering::Less,
            };
            if beyond {
                return Record::new(
                    "no-spread-subfamily",
                    params,
                    Value::Text(format!("|Y|={} X={x}", yf.len())),
                    Value::Rat(c),
                    None,
                    Verdict::Fail,
                );
            }
        }
    }
    Record::new("no-spread-subfamily", params, Value::Text("none".into()), Value::Rat(c), None, Verdict::Pass)
}

/// Outcome of comparing a core family with the best `t`-star.
#[derive(Clone, Debug, PartialEq)]
pub struct Dominance {
    pub t_set: ElementSet,
    /// `|A[S]|`.
    pub lhs: usize,
    /// `|A[T]|`.
    pub star: usize,
    pub trivial: bool,
    pub gate: Option<bool>,
    pub holds: bool,
    pub report: CheckReport,
}

/// `|A[S]| <= eps |A[T]|` for the best `t`-set `T`, claimed when `S` is
/// non-trivial and `eps r >= 24 q`. `r` defaults to the weak spreadness of
/// `A`; `q` is the largest member size of `S`.
pub fn check_dominance(
    a: &SetFamily,
    s: &SetFamily,
    t: usize,
    eps: &Ratio,
    r: Option<RootRatio>,
    guards: &Guards,
) -> Result<Dominance> {
    if !s.is_t_intersecting(t) {
        return Err(Error::precondition(format!("S is not {t}-intersecting")));
    }
    let ws = weak_spread_with(a, t, guards)?;
    let r_used = r.or(ws.r.clone());
    let q = s.max_size();
    let common = s
        .members()
        .iter()
        .skip(1)
        .fold(s.members().first().cloned().unwrap_or_default(), |acc, m| acc.intersection(m));
    let trivial = s.is_empty() || common.len() >= t;
    let lhs = a.stars(s.members())?.len();
    let star = a.count_containing(&ws.t_set);
    let rhs = eps * rat(star);
    let l = rat(lhs);
    let holds = l <= rhs;
    // eps * base^(1/root) >= 24 q  <=>  base >= (24 q / eps)^root
    let gate = r_used.as_ref().map(|rr| {
        if eps.is_zero() {
            return false;
        }
        rr.base >= num_traits::pow(rat(24 * q) / eps, rr.root)
    });
    let params = format!("t={t} eps={eps} q={q} |A|={} |S|={}", a.len(), s.len());
    let mut rep = CheckReport::new("dominance", params.clone());
    rep.push(Record::info("best-t-set", params.clone(), Value::Text(ws.t_set.to_string())));
    rep.push(Record::info("trivial", params.clone(), Value::Text(trivial.to_string())));
    rep.push(Record::info(
        "gate-eps*r>=24q",
        format!("r={}", r_used.as_ref().map_or("inf".into(), |v| v.to_string())),
        Value::Text(gate.map_or("true".into(), |g| g.to_string())),
    ));
    let claimed = !trivial && gate.unwrap_or(true);
    rep.push(Record::new(
        "dominance",
        params,
        big(lhs),
        Value::Rat(rhs.clone()),
        Some(slack_ge(&rhs, &l)),
        match (holds, claimed) {
            (true, true) => Verdict::Pass,
            (false, true) => Verdict::Fail,
            (_, false) => Verdict::Info,
        },
    ));
    if trivial {
        rep.note("S is trivial: nothing is claimed");
    }
    Ok(Dominance {
        t_set: ws.t_set,
        lhs,
        star,
        trivial,
        gate,
        holds,
        report: rep,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn s(v: &[usize]) -> ElementSet {
        ElementSet::from_indices(v.iter().copied())
    }

    fn fam(n: usize, v: &[&[usize]]) -> SetFamily {
        SetFamily::new(n, v.iter().map(|m| s(m))).unwrap()
    }

    fn pairs(n: usize) -> SetFamily {
        let all = s(&(1..=n).collect::<Vec<_>>());
        SetFamily::new(n + 1, all.subsets().filter(|x| x.len() == 2)).unwrap()
    }

    #[test]
    fn peeling_traces() {
        let f = fam(5, &[&[1, 2], &[1, 3], &[1, 4]]);
        let res = spread_approximate(&f, &ratio(2, 1), 2).unwrap();
        assert_eq!(res.cores, vec![s(&[1, 2]), s(&[1, 3]), s(&[1, 4])]);
        assert!(res.remainder.is_empty());
        let res1 = spread_approximate(&f, &ratio(2, 1), 1).unwrap();
        assert!(res1.cores.is_empty());
        assert_eq!(res1.remainder, f);
        let one = fam(5, &[&[1, 2, 3]]);
        let r = spread_approximate(&one, &ratio(3, 2), 3).unwrap();
        assert_eq!(r.cores, vec![s(&[1, 2, 3])]);
        assert!(r.remainder.is_empty());
    }

    #[test]
    fn verify_hand_example() {
        let f = fam(5, &[&[1, 2], &[1, 3], &[1, 4]]);
        let res = spread_approximate(&f, &ratio(2, 1), 2).unwrap();
        let (rep, gates) = verify_approx(&res, &f, &f, &ratio(2, 1), &ratio(4, 1), 2, 1, &Guards::default()).unwrap();
        assert!(!gates.r_large);
        for name in ["conservation", "coverage", "core-spread", "remainder", "cores-t-intersecting"] {
            assert!(
                rep.records.iter().filter(|r| r.name == name).all(|r| r.verdict == Verdict::Pass),
                "{name}"
            );
        }
        let mut bad = res.clone();
        bad.remainder = SetFamily::empty(5);
        bad.cores.pop();
        bad.core_families.pop();
        assert!(matches!(
            verify_approx(&bad, &f, &f, &ratio(2, 1), &ratio(4, 1), 2, 1, &Guards::default()),
            Err(Error::Integrity(_))
        ));
    }

    #[test]
    fn minimization() {
        let got = minimize_t_intersecting(&fam(4, &[&[1, 2], &[1, 3]]), 1, 2).unwrap();
        assert_eq!(got.members(), &[s(&[1])]);
        let tri = fam(4, &[&[1, 2], &[2, 3], &[1, 3]]);
        assert_eq!(minimize_t_intersecting(&tri, 1, 2).unwrap().sorted_members(), tri.sorted_members());
        let one = fam(4, &[&[1, 2]]);
        assert_eq!(minimize_t_intersecting(&one, 2, 3).unwrap(), one);
        let messy = fam(5, &[&[1, 2], &[1, 3], &[1, 4], &[1]]);
        assert_eq!(minimize_t_intersecting(&messy, 1, 2).unwrap().members(), &[s(&[1])]);
        assert!(minimize_t_intersecting(&fam(5, &[&[1], &[2]]), 1, 2).is_err());
        assert!(is_minimal_t_intersecting(&tri, 1));
        assert!(!is_minimal_t_intersecting(&messy, 1));
    }

    #[test]
    fn reduction_triangle() {
        let tri = fam(6, &[&[1, 2], &[2, 3], &[1, 3]]);
        let red = reduction_sequence(&pairs(5), &tri, 2, 1, None, &Guards::default()).unwrap();
        assert_eq!(red.steps[0].w_family.sorted_members(), tri.sorted_members());
        assert!(red.steps[1].t_family.is_empty());
        let w = red.report.records.iter().find(|r| r.name == "w-size").unwrap();
        assert_eq!((w.lhs.exact(), w.rhs.exact()), ("3".into(), "12".into()));
        assert_eq!(red.report.verdict(), Verdict::Pass);
        let single = fam(3, &[&[1]]);
        let red = reduction_sequence(&pairs(2), &single, 1, 1, None, &Guards::default()).unwrap();
        assert_eq!(red.steps.len(), 1);
        assert_eq!(red.steps[0].t_family, single);
        assert_ne!(red.report.verdict(), Verdict::Fail);
    }

    #[test]
    fn dominance_examples() {
        let tri = fam(6, &[&[1, 2], &[2, 3], &[1, 3]]);
        let d = check_dominance(&pairs(5), &tri, 1, &ratio(1, 2), None, &Guards::default()).unwrap();
        assert_eq!((d.lhs, d.star), (3, 4));
        assert!(!d.holds);
        assert_eq!(d.gate, Some(false));
        assert!(!d.trivial);
        assert_eq!(d.report.verdict(), Verdict::Info);
        let star = fam(6, &[&[1, 2], &[1, 3]]);
        let d = check_dominance(&pairs(5), &star, 1, &ratio(1, 2), None, &Guards::default()).unwrap();
        assert!(d.trivial);
    }
}
