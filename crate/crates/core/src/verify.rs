//! Exact checks of the counting inequalities behind the spreadness claims.
//!
//! Every transcendental quantity enters through a rational enclosure, taken
//! on the side that makes a pass harder, so a pass certifies the claim.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::bitset::ElementSet;
use crate::count::{bell_numbers, factorial, stirling2, tilde_bell_numbers, u_kl};
use crate::encoding::{count_extensions, edges_family, edges_to_subpartition, parts_family, ExtensionCounter};
use crate::error::{Error, Result};
use crate::guards::Guards;
use crate::partition::{
    enumerate_into_blocks_with, enumerate_partitions_with, enumerate_profiled_with, partially_t_intersect,
    Partition, Profile,
};
use crate::report::{CheckReport, MonteCarlo, Record, Value, Verdict};
use crate::scalar::{
    count_to_ratio, inv_e_interval, ln_interval_int, log10_ratio, log2_interval, ratio_from_int, ratio_to_f64,
    round_up, slack_ge, Field, Ratio,
};
use crate::setfam::SetFamily;
use crate::spread::{candidate_counts, is_r_spread_with, spread_factor_with, weak_spread_with, RootRatio};

fn rat(v: usize) -> Ratio {
    ratio_from_int(v as u64)
}

fn pow(r: &Ratio, e: usize) -> Ratio {
    num_traits::pow(r.clone(), e)
}

/// `log10` slack of `rr >= r`.
fn root_slack(rr: &RootRatio, r: &Ratio) -> f64 {
    let lhs = log10_ratio(rr.base.numer(), rr.base.denom()) / rr.root as f64;
    lhs - log10_ratio(r.numer(), r.denom())
}

fn gated(holds: bool, in_gate: bool) -> Verdict {
    match (holds, in_gate) {
        (true, true) => Verdict::Pass,
        (false, true) => Verdict::Fail,
        (_, false) => Verdict::Info,
    }
}

/// Compresses a sorted list of integers into `a..b` runs.
fn runs(v: &[usize]) -> String {
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < v.len() {
        let mut j = i;
        while j + 1 < v.len() && v[j + 1] == v[j] + 1 {
            j += 1;
        }
        out.push(if i == j { v[i].to_string() } else { format!("{}..{}", v[i], v[j]) });
        i = j + 1;
    }
    if out.is_empty() {
        "none".into()
    } else {
        out.join(",")
    }
}

/// `B_{n+1} / B_n >= n / (2 ln n)` for `2 <= n <= n_max`, with `ln n`
/// replaced by a lower bound.
pub fn check_bell_ratio(n_max: usize) -> Result<CheckReport> {
    if n_max < 2 {
        return Err(Error::domain("bell-ratio needs n_max >= 2"));
    }
    let b = bell_numbers(n_max + 1);
    let recs: Vec<Record> = (2..=n_max)
        .into_par_iter()
        .map(|n| {
            let lhs = count_to_ratio(&b[n + 1]) / count_to_ratio(&b[n]);
            let rhs = rat(n) / (ratio_from_int(2) * ln_interval_int(n as u64).lo);
            Record::new(
                "bell-ratio",
                format!("n={n}"),
                Value::Rat(lhs.clone()),
                Value::Rat(rhs.clone()),
                Some(slack_ge(&lhs, &rhs)),
                Verdict::from_bool(lhs >= rhs),
            )
        })
        .collect();
    let mut rep = CheckReport::new("bell-ratio", format!("n=2..{n_max}"));
    rep.records = recs;
    Ok(rep)
}

/// `sum_{s <= s_max} s^n / s!` in any field.
pub fn dobinski_partial_in<T: Field>(n: usize, s_max: usize) -> T {
    let mut sum = T::zero();
    let mut fact = T::one();
    for s in 0..=s_max {
        if s > 0 {
            fact = fact * T::from_usize(s).expect("index fits the field");
        }
        let base = T::from_usize(s).expect("index fits the field");
        sum = sum + num_traits::pow(base, n) / fact.clone();
    }
    sum
}

fn dobinski_record(n: usize, s_max: usize, bn: &Ratio) -> Record {
    // exact partial sum over the common denominator s_max!
    let f = factorial(s_max);
    let mut num = BigInt::zero();
    let mut tail = BigInt::one();
    for s in (0..=s_max).rev() {
        // tail = s_max! / s!
        num += num_traits::pow(BigInt::from(s), n) * &tail;
        tail *= BigInt::from(s.max(1));
    }
    let partial = Ratio::new(num, f.into());
    let est = inv_e_interval().scale(&partial);
    let err = std::cmp::max((bn - &est.lo).abs(), (&est.hi - bn).abs()) / bn;
    let err = round_up(&err);
    let tol = Ratio::new(BigInt::one(), BigInt::from(10u64.pow(9)));
    let holds = err <= tol;
    Record::new(
        "dobinski",
        format!("n={n} s_max={s_max}"),
        Value::Rat(err.clone()),
        Value::Rat(tol.clone()),
        Some(slack_ge(&tol, &err)),
        gated(holds, s_max >= n + 60),
    )
}

/// Relative error of `(1/e) sum_{s <= s_max} s^n / s!` against `B_n`.
/// A tolerance of `1e-9` is claimed once `s_max >= n + 60`.
pub fn check_dobinski(n: usize, s_max: usize) -> Result<CheckReport> {
    if s_max < n {
        return Err(Error::domain("dobinski needs s_max >= n"));
    }
    let bn = count_to_ratio(&bell_numbers(n)[n]);
    let mut rep = CheckReport::new("dobinski", format!("n={n} s_max={s_max}"));
    rep.push(dobinski_record(n, s_max, &bn));
    Ok(rep)
}

/// [`check_dobinski`] for every `n <= n_max` with `s_max = n + extra`.
pub fn check_dobinski_sweep(n_max: usize, extra: usize) -> Result<CheckReport> {
    let b = bell_numbers(n_max);
    let mut rep = CheckReport::new("dobinski", format!("n=0..{n_max} s_max=n+{extra}"));
    rep.records = (0..=n_max)
        .into_par_iter()
        .map(|n| dobinski_record(n, n + extra, &count_to_ratio(&b[n])))
        .collect();
    Ok(rep)
}

/// `tilde B_s >= (1/2) prod_{i=2}^{s-1} (1 - 2 ln(i+1)/(i+1)) (1 - (2i+2)/3^i) B_s`.
///
/// Each factor is positive and evaluated with a lower bound on the
/// logarithm, so the product is an upper bound on the right-hand side.
/// Violations are findings, not failures.
pub fn check_no_singleton_bound(s_max: usize) -> Result<CheckReport> {
    if s_max < 2 {
        return Err(Error::domain("no-singleton bound needs s_max >= 2"));
    }
    let b = bell_numbers(s_max);
    let tb = tilde_bell_numbers(s_max);
    let mut rep = CheckReport::new("no-singleton", format!("s=2..{s_max}"));
    let mut prod = Ratio::new(BigInt::one(), BigInt::from(2));
    for s in 2..=s_max {
        if s >= 3 {
            let i = s - 1;
            let log_factor = Ratio::one() - ratio_from_int(2) * ln_interval_int(i as u64 + 1).lo / rat(i + 1);
            let geo = Ratio::one() - Ratio::new(BigInt::from(2 * i + 2), num_traits::pow(BigInt::from(3), i));
            debug_assert!(log_factor.is_positive() && geo.is_positive());
            prod = round_up(&(prod * log_factor * geo));
        }
        let rhs = &prod * count_to_ratio(&b[s]);
        let lhs = count_to_ratio(&tb[s]);
        let holds = lhs >= rhs;
        rep.push(Record::new(
            "no-singleton",
            format!("s={s}"),
            Value::count(&tb[s]),
            Value::Rat(rhs.clone()),
            Some(slack_ge(&lhs, &rhs)),
            if holds { Verdict::Pass } else { Verdict::Finding },
        ));
    }
    Ok(rep)
}

/// `S(n, l) >= n^2 S(n-1, l-1)` on every point with `n >= 1 + 2 l log2 n`.
///
/// Points the gate certainly excludes are listed in a note; a point the
/// enclosure cannot decide is checked.
pub fn check_stirling_growth(l_max: usize, n_cap: usize) -> Result<CheckReport> {
    if l_max < 2 {
        return Err(Error::domain("stirling growth needs l_max >= 2"));
    }
    let mut rep = CheckReport::new("stirling-growth", format!("l=2..{l_max} n=1..{n_cap}"));
    let logs: Vec<_> = (1..=n_cap).map(|n| log2_interval(&rat(n))).collect();
    for l in 2..=l_max {
        let mut excluded = Vec::new();
        let points: Vec<usize> = (1..=n_cap)
            .filter(|&n| {
                let lo = Ratio::one() + ratio_from_int(2 * l as u64) * &logs[n - 1].lo;
                if rat(n) < lo {
                    excluded.push(n);
                    false
                } else {
                    true
                }
            })
            .collect();
        let recs: Vec<Record> = points
            .par_iter()
            .map(|&n| {
                let lhs = count_to_ratio(&stirling2(n, l));
                let rhs = rat(n * n) * count_to_ratio(&stirling2(n - 1, l - 1));
                Record::new(
                    "stirling-growth",
                    format!("l={l} n={n}"),
                    Value::Rat(lhs.clone()),
                    Value::Rat(rhs.clone()),
                    Some(slack_ge(&lhs, &rhs)),
                    Verdict::from_bool(lhs >= rhs),
                )
            })
            .collect();
        rep.records.extend(recs);
        rep.note(format!("l={l} gated n: {}; excluded n: {}", runs(&points), runs(&excluded)));
    }
    Ok(rep)
}

/// A family whose encoded spreadness is checked.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Encoded {
    /// All partitions of `[n]` in parts encoding.
    Bell { n: usize },
    /// Partitions of `[n]` into `l` blocks in parts encoding; weak spreadness at `t`.
    Blocks { n: usize, l: usize, t: usize },
    /// Partitions with a given profile in parts encoding; weak spreadness at `t`.
    Profiled { profile: Profile, t: usize },
    /// `(k, l)`-partitions in edge encoding.
    KlEdges { k: usize, l: usize },
}

impl Encoded {
    fn label(&self) -> String {
        match self {
            Encoded::Bell { n } => format!("bell n={n}"),
            Encoded::Blocks { n, l, t } => format!("blocks n={n} l={l} t={t}"),
            Encoded::Profiled { profile, t } => format!("profiled P={profile} t={t}"),
            Encoded::KlEdges { k, l } => format!("kl-edges k={k} l={l}"),
        }
    }
}

/// Runs a direct-mode part, turning a guard trip into a skipped record.
fn direct(rep: &mut CheckReport, name: &str, params: &str, f: impl FnOnce(&mut CheckReport) -> Result<()>) -> Result<()> {
    let mut part = CheckReport::new(name, params);
    match f(&mut part) {
        Ok(()) => {
            rep.extend(part);
            Ok(())
        }
        Err(e @ Error::ResourceLimit { .. }) => {
            rep.push(Record::new(name, params, Value::Text(e.to_string()), Value::Absent, None, Verdict::Skipped));
            Ok(())
        }
        Err(e) => Err(e),
    }
}

/// Direct mode computes the spreadness of the encoded family; formula mode
/// checks the count ratios the claimed thresholds reduce to. Points outside
/// the parameter range of a claim are informational.
pub fn check_encoded_spreadness(setting: &Encoded, guards: &Guards) -> Result<CheckReport> {
    let mut rep = CheckReport::new("encoded-spreadness", setting.label());
    match setting {
        Encoded::Bell { n } => bell_spreadness(*n, guards, &mut rep)?,
        Encoded::Blocks { n, l, t } => blocks_spreadness(*n, *l, *t, guards, &mut rep)?,
        Encoded::Profiled { profile, t } => profiled_spreadness(profile, *t, guards, &mut rep)?,
        Encoded::KlEdges { k, l } => kl_edges_spreadness(*k, *l, guards, &mut rep)?,
    }
    Ok(rep)
}

fn bell_spreadness(n: usize, guards: &Guards, rep: &mut CheckReport) -> Result<()> {
    if n < 2 {
        return Err(Error::domain("bell setting needs n >= 2"));
    }
    let ln_lo = ln_interval_int(n as u64).lo;
    // upper bounds on n/(6 ln n) and n/(12 ln n)
    let r0 = rat(n) / (rat(6) * &ln_lo);
    let w = rat(n) / (rat(12) * &ln_lo);
    let in_gate = n >= 50;
    rep.note(format!("r0 = n/(6 ln n) and n/(12 ln n) are claimed for n >= 50; in range: {in_gate}"));
    let params = format!("n={n}");

    direct(rep, "bell-direct", &params, |rep| {
        let parts = enumerate_partitions_with(n, guards)?;
        let (_, fam) = parts_family(&parts)?;
        let sf = spread_factor_with(&fam, guards)?;
        let rs = sf.r_star.expect("B_n has a nonempty part");
        let holds = rs.admits(&r0);
        rep.push(Record::new(
            "bell-direct-spread",
            format!("n={n} witness={}", sf.witness.expect("witness exists")),
            Value::Text(rs.to_string()),
            Value::Rat(r0.clone()),
            Some(root_slack(&rs, &r0)),
            gated(holds, in_gate),
        ));
        for t in 1..=n / 2 {
            let ws = weak_spread_with(&fam, t, guards)?;
            let Some(r) = ws.r else { continue };
            rep.push(Record::new(
                "bell-direct-weak",
                format!("n={n} t={t} T={}", ws.t_set),
                Value::Text(r.to_string()),
                Value::Rat(w.clone()),
                Some(root_slack(&r, &w)),
                gated(r.admits(&w), in_gate),
            ));
        }
        Ok(())
    })?;

    let b: Vec<Ratio> = bell_numbers(n).iter().map(count_to_ratio).collect();
    for s in 1..=n {
        let lhs = b[n].clone();
        let rhs = &b[n - s] * pow(&r0, s);
        rep.push(Record::new(
            "bell-chain",
            format!("n={n} s={s}"),
            Value::Rat(lhs.clone()),
            Value::Rat(rhs.clone()),
            Some(slack_ge(&lhs, &rhs)),
            gated(lhs >= rhs, in_gate),
        ));
    }
    for t in 1..=n / 2 {
        // worst s for B_{n-t} >= B_{n-t-s} w^s
        let mut worst: Option<(f64, usize, Ratio)> = None;
        for s in 1..=n - t {
            let rhs = &b[n - t - s] * pow(&w, s);
            let m = slack_ge(&b[n - t], &rhs);
            if worst.as_ref().is_none_or(|(wm, _, _)| m < *wm) {
                worst = Some((m, s, rhs));
            }
        }
        let (m, s, rhs) = worst.expect("s ranges over a nonempty set");
        rep.push(Record::new(
            "bell-weak-chain",
            format!("n={n} t={t} worst-s={s}"),
            Value::Rat(b[n - t].clone()),
            Value::Rat(rhs),
            Some(m),
            gated(m >= 0.0, in_gate),
        ));
    }
    Ok(())
}

fn blocks_spreadness(n: usize, l: usize, t: usize, guards: &Guards, rep: &mut CheckReport) -> Result<()> {
    if l == 0 || t >= l || n < l {
        return Err(Error::domain("blocks setting needs t < l <= n"));
    }
    let log2n = log2_interval(&rat(n));
    let in_gate = t + 2 <= l && n >= 48 && rat(n) >= rat(2 * l) * &log2n.hi;
    rep.note(format!("weak (n^2/2, t)-spreadness is claimed for t <= l-2, n >= 2l log2 n, n >= 48; in range: {in_gate}"));
    let r = Ratio::new(BigInt::from(n * n), BigInt::from(2));
    let params = format!("n={n} l={l} t={t}");

    direct(rep, "blocks-direct", &params, |rep| {
        let parts = enumerate_into_blocks_with(n, l, guards)?;
        let (_, fam) = parts_family(&parts)?;
        let ws = weak_spread_with(&fam, t, guards)?;
        match ws.r {
            Some(wr) => rep.push(Record::new(
                "blocks-direct-weak",
                format!("{params} T={}", ws.t_set),
                Value::Text(wr.to_string()),
                Value::Rat(r.clone()),
                Some(root_slack(&wr, &r)),
                gated(wr.admits(&r), in_gate),
            )),
            None => rep.push(Record::info("blocks-direct-weak", params.clone(), Value::Text("no (t+s)-set".into()))),
        }
        Ok(())
    })?;

    let top = count_to_ratio(&stirling2(n - t, l - t));
    for s in 1..=l - t {
        // partitions fixing all l parts number at most one
        let below = if l - t - s >= 1 {
            count_to_ratio(&stirling2(n - t - s, l - t - s))
        } else {
            Ratio::one()
        };
        let rhs = &below * pow(&r, s);
        rep.push(Record::new(
            "blocks-chain",
            format!("{params} s={s}"),
            Value::Rat(top.clone()),
            Value::Rat(rhs.clone()),
            Some(slack_ge(&top, &rhs)),
            gated(top >= rhs, in_gate),
        ));
        if l - t - s == 0 && n >= t + s {
            let m = n - t - s + 2;
            let n4 = rat(n.pow(4));
            let printed = pow(&ratio_from_int(2), m - 1);
            let actual = count_to_ratio(&stirling2(m, 2));
            rep.push(Record::new(
                "blocks-endpoint-printed",
                format!("{params} s={s} 2^(n-t-s+1)>=n^4"),
                Value::Rat(printed.clone()),
                Value::Rat(n4.clone()),
                Some(slack_ge(&printed, &n4)),
                gated(printed >= n4, in_gate),
            ));
            rep.push(Record::new(
                "blocks-endpoint",
                format!("{params} s={s} S(n-t-s+2,2)>=n^4"),
                Value::Rat(actual.clone()),
                Value::Rat(n4.clone()),
                Some(slack_ge(&actual, &n4)),
                gated(actual >= n4, in_gate),
            ));
        }
    }
    rep.note("S(m,2) = 2^(m-1) - 1; the endpoint is checked with both values");
    Ok(())
}

fn profiled_spreadness(p: &Profile, t: usize, guards: &Guards, rep: &mut CheckReport) -> Result<()> {
    let l = p.len();
    if t >= l {
        return Err(Error::domain("profiled setting needs t < l"));
    }
    let k = p.sizes();
    let in_gate = l >= 600 && 2 * t <= l && k[t] >= 2;
    rep.note(format!(
        "weak (l/12)^2-spreadness is claimed for l >= 600, t <= l/2, k_(t+1) >= 2; in range: {in_gate}"
    ));
    let base = Ratio::new(BigInt::from(l), BigInt::from(12));
    let r = pow(&base, 2);
    let params = format!("P={p} t={t}");

    direct(rep, "profiled-direct", &params, |rep| {
        let parts = enumerate_profiled_with(p, guards)?;
        let (_, fam) = parts_family(&parts)?;
        let ws = weak_spread_with(&fam, t, guards)?;
        match ws.r {
            Some(wr) => rep.push(Record::new(
                "profiled-direct-weak",
                format!("{params} T={}", ws.t_set),
                Value::Text(wr.to_string()),
                Value::Rat(r.clone()),
                Some(root_slack(&wr, &r)),
                gated(wr.admits(&r), in_gate),
            )),
            None => rep.push(Record::info("profiled-direct-weak", params.clone(), Value::Text("no (t+s)-set".into()))),
        }
        Ok(())
    })?;

    // the t fixed parts are the t smallest; n_j counts the rest
    let suffix: Vec<usize> = (0..=l).map(|j| k[j..].iter().sum()).collect();
    let n_t = suffix[t];
    // multiplicities of the unfixed sizes after fixing j parts
    let mult_after = |j: usize| -> BTreeMap<usize, usize> {
        let mut m = BTreeMap::new();
        for &s in &k[j..] {
            *m.entry(s).or_insert(0) += 1;
        }
        m
    };
    let m_t = mult_after(t);
    let mut printed = Ratio::one();
    let mut findings = 0;
    for s in 1..=l - t {
        // printed ratio n_t! / (n_{t+s}! prod_{i=t+1}^{t+s} k_i!)
        let hi = suffix[t + s - 1];
        let lo = suffix[t + s];
        let mut step = BigInt::one();
        for v in lo + 1..=hi {
            step *= BigInt::from(v);
        }
        printed = printed * Ratio::from_integer(step) / count_to_ratio(&factorial(k[t + s - 1]));
        // the true counts divide by the factorials of the size multiplicities
        let m_ts = mult_after(t + s);
        let mut corr = Ratio::one();
        for (size, &mt) in &m_t {
            let ms = m_ts.get(size).copied().unwrap_or(0);
            corr = corr * count_to_ratio(&factorial(ms)) / count_to_ratio(&factorial(mt));
        }
        let corrected = &printed * corr;
        let rhs = pow(&base, 2 * s);
        rep.push(Record::new(
            "profiled-chain",
            format!("{params} s={s} n_t={n_t}"),
            Value::Rat(printed.clone()),
            Value::Rat(rhs.clone()),
            Some(slack_ge(&printed, &rhs)),
            gated(printed >= rhs, in_gate),
        ));
        let holds = corrected >= rhs;
        if !holds && in_gate {
            findings += 1;
        }
        rep.push(Record::new(
            "profiled-chain-multiplicity",
            format!("{params} s={s} n_t={n_t}"),
            Value::Rat(corrected.clone()),
            Value::Rat(rhs.clone()),
            Some(slack_ge(&corrected, &rhs)),
            match (holds, in_gate) {
                (true, true) => Verdict::Pass,
                (false, true) => Verdict::Finding,
                (_, false) => Verdict::Info,
            },
        ));
    }
    rep.note("profiled-chain uses a_t = n_t!/prod_(i>t) k_i!; profiled-chain-multiplicity divides by the factorials of equal-size multiplicities, which gives the number of partitions");
    if findings > 0 {
        rep.note(format!(
            "the multiplicity-corrected ratio falls below (l/12)^(2s) at {findings} points; the printed formula overcounts a_t when sizes repeat"
        ));
    }
    Ok(())
}

/// Bound on `u(X)/u` for weight `m`: `(9/l)^m` when `3m <= kl`, else `(9/l)^(m/3)`.
/// Returns whether `c/u` satisfies it and the `log10` slack.
fn ext_bound(k: usize, l: usize, m: usize, c: &Ratio, u: &Ratio) -> (bool, f64, Ratio) {
    let nine = Ratio::new(BigInt::from(9), BigInt::from(l));
    let frac = c / u;
    if 3 * m <= k * l {
        let b = pow(&nine, m);
        (frac <= b, slack_ge(&b, &frac), b)
    } else {
        let b3 = pow(&nine, m);
        let ok = pow(&frac, 3) <= b3;
        let slack = if frac.is_zero() {
            f64::INFINITY
        } else {
            (log10_ratio(b3.numer(), b3.denom()) / 3.0) - log10_ratio(frac.numer(), frac.denom())
        };
        (ok, slack, b3)
    }
}

/// Multisets of block sizes in `[2, k]` with total at most `cap`, each sorted.
fn shapes(k: usize, cap: usize) -> Vec<Vec<usize>> {
    fn rec(k: usize, min: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(cur.clone());
        for s in min..=k.min(left) {
            cur.push(s);
            rec(k, s, left - s, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k >= 2 {
        rec(k, 2, cap, &mut Vec::new(), &mut out);
    }
    out.retain(|v| !v.is_empty());
    out
}

fn kl_edges_spreadness(k: usize, l: usize, guards: &Guards, rep: &mut CheckReport) -> Result<()> {
    if k < 2 || l == 0 {
        return Err(Error::domain("kl-edges setting needs k >= 2 and l >= 1"));
    }
    let u = count_to_ratio(&u_kl(k, l));
    let thr = RootRatio::new(pow(&Ratio::new(BigInt::from(l), BigInt::from(9)), 2), 3 * k);
    rep.note(format!(
        "(l/9)^(2/(3k))-spreadness is derived for k >= 3 and is vacuous for l <= 9; in range: {}",
        k >= 3
    ));
    let params = format!("k={k} l={l}");

    direct(rep, "kl-edges-direct", &params, |rep| {
        let parts = enumerate_profiled_with(&Profile::uniform(k, l)?, guards)?;
        let (eu, fam) = edges_family(k * l, &parts)?;
        let sf = spread_factor_with(&fam, guards)?;
        let rs = sf.r_star.expect("edge sets are nonempty");
        let slack = log10_ratio(rs.base.numer(), rs.base.denom()) / rs.root as f64
            - log10_ratio(thr.base.numer(), thr.base.denom()) / thr.root as f64;
        rep.push(Record::new(
            "kl-edges-direct-spread",
            format!("{params} witness={}", sf.witness.expect("witness exists")),
            Value::Text(rs.to_string()),
            Value::Text(thr.to_string()),
            Some(slack),
            gated(rs >= thr, k >= 3),
        ));
        // worst |F(E)| per weight m(X(E))
        let counts = candidate_counts(&fam, guards)?;
        let mut keys: Vec<&ElementSet> = counts.keys().collect();
        keys.sort_by(|a, b| a.cmp_size_lex(b));
        let mut worst: BTreeMap<usize, (f64, bool, usize, Ratio, String)> = BTreeMap::new();
        for e in keys {
            let c = counts[e];
            let x = edges_to_subpartition(e, &eu);
            if count_extensions(k, l, &x)? != c.into() {
                return Err(Error::Integrity(format!("|F(E)| differs from the extension count at E={e}")));
            }
            let m = x.weight();
            let (ok, slack, b) = ext_bound(k, l, m, &rat(c), &u);
            if worst.get(&m).is_none_or(|w| slack < w.0) {
                worst.insert(m, (slack, ok, c, b, e.to_string()));
            }
        }
        for (m, (slack, ok, c, b, e)) in worst {
            rep.push(Record::new(
                "kl-edges-direct-bound",
                format!("{params} m={m} E={e}"),
                Value::Rat(rat(c) / &u),
                Value::Rat(b),
                Some(slack),
                Verdict::from_bool(ok),
            ));
        }
        Ok(())
    })?;

    let mut counter = ExtensionCounter::new(k, l);
    let mut worst: BTreeMap<usize, (f64, bool, Ratio, Ratio, Vec<usize>)> = BTreeMap::new();
    for sh in shapes(k, k * l) {
        let m: usize = sh.iter().map(|s| s - 1).sum();
        let c = count_to_ratio(&counter.count(&sh));
        let (ok, slack, b) = ext_bound(k, l, m, &c, &u);
        if worst.get(&m).is_none_or(|w| slack < w.0) {
            worst.insert(m, (slack, ok, &c / &u, b, sh));
        }
    }
    for (m, (slack, ok, frac, b, sh)) in worst {
        let sizes: Vec<String> = sh.iter().map(|s| s.to_string()).collect();
        rep.push(Record::new(
            "kl-edges-extension",
            format!("{params} m={m} sizes={}", sizes.join(",")),
            Value::Rat(frac),
            Value::Rat(b),
            Some(slack),
            Verdict::from_bool(ok),
        ));
    }
    rep.note("kl-edges-extension rows give the worst shape per weight m; rhs is (9/l)^m, or its cube when 3m > kl");
    Ok(())
}

/// Monte Carlo estimate of `Pr[some member of f lies in W]` for an
/// `(m delta)`-random `W`, against `1 - (5 / log2(r delta))^m ||f||`.
pub fn check_tao_containment(
    f: &SetFamily,
    r: &Ratio,
    m: u32,
    delta: &Ratio,
    trials: u64,
    seed: u64,
    guards: &Guards,
) -> Result<CheckReport> {
    if m == 0 || !delta.is_positive() {
        return Err(Error::domain("containment needs m >= 1 and delta > 0"));
    }
    let p = delta * ratio_from_int(m as u64);
    if p > Ratio::one() {
        return Err(Error::precondition(format!("m delta = {p} exceeds 1")));
    }
    if trials < 10_000 {
        return Err(Error::precondition(format!("containment needs at least 10000 trials, got {trials}")));
    }
    if f.is_empty() {
        return Err(Error::domain("containment needs a nonempty family"));
    }
    let (spread, witness) = is_r_spread_with(f, r, guards)?;
    if !spread {
        return Err(Error::precondition(format!(
            "family is not {r}-spread; violated at {}",
            witness.expect("violations carry a witness")
        )));
    }

    let params = format!("r={r} m={m} delta={delta} trials={trials} seed={seed} |F|={}", f.len());
    let mut rep = CheckReport::new("tao-containment", params.clone());
    let elems = f.union_elements().to_vec();
    let (num, den) = (p.numer().to_u64(), p.denom().to_u64());
    let pf = ratio_to_f64(&p);
    let successes = (0..trials)
        .into_par_iter()
        .filter(|&i| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(i);
            let mut w = ElementSet::new();
            for &e in &elems {
                let hit = match (num, den) {
                    (Some(a), Some(b)) => rng.gen_range(0..b) < a,
                    _ => rng.gen_bool(pf),
                };
                if hit {
                    w.insert(e);
                }
            }
            f.members().iter().any(|s| s.is_subset(&w))
        })
        .count() as u64;
    let est = successes as f64 / trials as f64;
    let stderr = (est * (1.0 - est) / trials as f64).sqrt();
    rep.monte_carlo = Some(MonteCarlo {
        trials,
        successes,
        estimate: est,
        stderr,
        seed,
    });

    // upper bound on the claimed probability bound
    let rd = r * delta;
    let bound = if rd > Ratio::one() {
        let lg = log2_interval(&rd);
        if lg.hi.is_positive() {
            Some(Ratio::one() - pow(&(rat(5) / &lg.hi), m as usize) * f.avg_size())
        } else {
            None
        }
    } else {
        None
    };
    let lhs = est - 3.0 * stderr;
    match bound.filter(|b| b.is_positive()) {
        None => {
            rep.push(Record::new(
                "containment",
                params.clone(),
                Value::Float(lhs),
                Value::Text("vacuous".into()),
                None,
                Verdict::Pass,
            ));
            rep.note("the bound is not positive, so it holds trivially");
        }
        Some(b) => {
            let bf = ratio_to_f64(&b);
            rep.push(Record::new(
                "containment",
                params.clone(),
                Value::Float(lhs),
                Value::Rat(b),
                Some(lhs - bf),
                Verdict::from_bool(lhs >= bf),
            ));
        }
    }

    if f.members().iter().all(|s| s.len() == 1) {
        // Pr = 1 - (1 - m delta)^|F|; compare failure rates to keep precision near 1
        let q = pow(&(Ratio::one() - &p), f.len());
        let qf = ratio_to_f64(&q);
        let fail_rate = (trials - successes) as f64 / trials as f64;
        let sigma = (qf * (1.0 - qf) / trials as f64).sqrt();
        let diff = (fail_rate - qf).abs();
        rep.push(Record::new(
            "closed-form",
            params,
            Value::Float(est),
            Value::Rat(Ratio::one() - q),
            Some(3.0 * sigma - diff),
            Verdict::from_bool(diff <= 3.0 * sigma),
        ));
        rep.note("closed-form compares the estimate with 1 - (1 - m delta)^|F| within three standard errors of the exact probability");
    }
    Ok(rep)
}

fn nonintersect_setup(k: usize, l: usize, t: usize, t_set: &[usize], guards: &Guards) -> Result<(Vec<Partition>, Vec<Partition>)> {
    if t < 2 || t > k {
        return Err(Error::domain("non-intersect count needs 2 <= t <= k"));
    }
    let mut ts = t_set.to_vec();
    ts.sort_unstable();
    ts.dedup();
    if ts.len() != t || ts.iter().any(|&e| e == 0 || e > k * l) {
        return Err(Error::domain(format!("T must be {t} distinct elements of [{}]", k * l)));
    }
    let all = enumerate_profiled_with(&Profile::uniform(k, l)?, guards)?;
    let c_t: Vec<Partition> = all.iter().filter(|p| p.block_contains(&ts)).cloned().collect();
    Ok((all, c_t))
}

fn nonintersect_record(k: usize, l: usize, t: usize, c_t: &[Partition], y: &Partition) -> Result<Record> {
    let mut count = 0usize;
    for c in c_t {
        if !partially_t_intersect(c, y, t)? {
            count += 1;
        }
    }
    let u = count_to_ratio(&u_kl(k, l));
    let bound = u / pow(&rat(l), 2 * k * k);
    let lhs = rat(count);
    Ok(Record::new(
        "nonintersect",
        format!("k={k} l={l} t={t} Y={y} fraction={}", Ratio::new(BigInt::from(count), BigInt::from(c_t.len()))),
        Value::int(count as u64),
        Value::Rat(bound.clone()),
        Some(slack_ge(&lhs, &bound)),
        Verdict::from_bool(lhs >= bound),
    ))
}

/// Members of `C^T` (partitions with `T` inside a block) that do not
/// partially `t`-intersect `Y`, against `l^(-2k^2) u_{k,l}`.
pub fn check_nonintersect_count(
    k: usize,
    l: usize,
    t: usize,
    t_set: &[usize],
    y: &Partition,
    guards: &Guards,
) -> Result<CheckReport> {
    let (_, c_t) = nonintersect_setup(k, l, t, t_set, guards)?;
    if y.n() != k * l || y.blocks().iter().any(|b| b.len() != k) {
        return Err(Error::domain(format!("Y must be a ({k},{l})-partition")));
    }
    if y.block_contains(t_set) {
        return Err(Error::precondition(format!("Y = {y} lies in C^T")));
    }
    let mut rep = CheckReport::new("nonintersect", format!("k={k} l={l} t={t} |C^T|={}", c_t.len()));
    rep.push(nonintersect_record(k, l, t, &c_t, y)?);
    Ok(rep)
}

/// [`check_nonintersect_count`] with `T = {1..t}` for every `Y` outside `C^T`.
pub fn check_nonintersect_sweep(k: usize, l: usize, t: usize, guards: &Guards) -> Result<CheckReport> {
    let t_set: Vec<usize> = (1..=t).collect();
    let (all, c_t) = nonintersect_setup(k, l, t, &t_set, guards)?;
    let ys: Vec<&Partition> = all.iter().filter(|p| !p.block_contains(&t_set)).collect();
    let mut rep = CheckReport::new(
        "nonintersect",
        format!("k={k} l={l} t={t} T=1..{t} |C^T|={} Y-count={}", c_t.len(), ys.len()),
    );
    let recs: Result<Vec<Record>> = ys.par_iter().map(|y| nonintersect_record(k, l, t, &c_t, y)).collect();
    rep.records = recs?;
    Ok(rep)
}
