//! Check reports and their two text renderings.
//!
//! The records rendering is tab-separated with the fixed field order
//! `name params lhs rhs margin verdict`, one line per parameter point,
//! values exact. The table rendering aligns the same rows with
//! approximate values. Neither rendering contains timings.

use std::fmt;

use num_bigint::BigInt;

use crate::scalar::{log10_ratio, ratio_to_f64, BigCount, Interval, Ratio};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Verdict {
    Pass,
    Fail,
    /// Point or check not run, e.g. a guard or a parameter gate.
    Skipped,
    /// Reported value only; nothing is claimed at these parameters.
    Info,
    /// A claimed inequality that did not hold, recorded without failing.
    Finding,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Skipped => "skipped",
            Verdict::Info => "info",
            Verdict::Finding => "finding",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A reported quantity.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Int(BigInt),
    Rat(Ratio),
    Range(Interval),
    Float(f64),
    Text(String),
    Absent,
}

impl Value {
    pub fn count(c: &BigCount) -> Self {
        Value::Int(BigInt::from(c.clone()))
    }

    pub fn int(v: impl Into<BigInt>) -> Self {
        Value::Int(v.into())
    }

    pub fn exact(&self) -> String {
        match self {
            Value::Int(v) => v.to_string(),
            Value::Rat(r) => r.to_string(),
            Value::Range(i) => format!("[{},{}]", i.lo, i.hi),
            Value::Float(x) => format!("{x:e}"),
            Value::Text(s) => s.clone(),
            Value::Absent => "-".into(),
        }
    }

    pub fn approx(&self) -> String {
        match self {
            Value::Int(v) => approx_big(v, &BigInt::from(1)),
            Value::Rat(r) => approx_big(r.numer(), r.denom()),
            Value::Range(i) => {
                let mid = (&i.lo + &i.hi) / Ratio::from_integer(2.into());
                approx_big(mid.numer(), mid.denom())
            }
            Value::Float(x) => short_float(*x),
            Value::Text(s) => s.clone(),
            Value::Absent => "-".into(),
        }
    }
}

fn approx_big(num: &BigInt, den: &BigInt) -> String {
    if num.bits() < 50 && *den == BigInt::from(1) {
        return num.to_string();
    }
    let l = log10_ratio(num, den);
    if l.abs() < 12.0 {
        let r = Ratio::new(num.clone(), den.clone());
        return short_float(ratio_to_f64(&r));
    }
    let neg = num.sign() == num_bigint::Sign::Minus;
    let e = l.floor();
    let m = 10f64.powf(l - e);
    format!("{}{m:.6}e{}", if neg { "-" } else { "" }, e as i64)
}

fn short_float(x: f64) -> String {
    if x == 0.0 || (x.abs() >= 1e-4 && x.abs() < 1e12) {
        let s = format!("{x:.8}");
        let s = s.trim_end_matches('0').trim_end_matches('.');
        s.to_string()
    } else {
        format!("{x:.6e}")
    }
}

pub fn format_margin(m: Option<f64>) -> String {
    match m {
        None => "-".into(),
        Some(x) if x == f64::INFINITY => "inf".into(),
        Some(x) if x == f64::NEG_INFINITY => "-inf".into(),
        Some(x) => {
            let s = format!("{x:.6}");
            if s == "-0.000000" {
                "0.000000".into()
            } else {
                s
            }
        }
    }
}

/// One parameter point of a check.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub name: String,
    pub params: String,
    pub lhs: Value,
    pub rhs: Value,
    /// Signed `log10` slack of the claimed inequality.
    pub margin: Option<f64>,
    pub verdict: Verdict,
}

impl Record {
    pub fn new(
        name: impl Into<String>,
        params: impl Into<String>,
        lhs: Value,
        rhs: Value,
        margin: Option<f64>,
        verdict: Verdict,
    ) -> Self {
        Record {
            name: name.into(),
            params: params.into(),
            lhs,
            rhs,
            margin,
            verdict,
        }
    }

    pub fn info(name: impl Into<String>, params: impl Into<String>, value: Value) -> Self {
        Record::new(name, params, value, Value::Absent, None, Verdict::Info)
    }
}

/// Monte Carlo summary attached to a sampled check.
#[derive(Clone, Debug, PartialEq)]
pub struct MonteCarlo {
    pub trials: u64,
    pub successes: u64,
    pub estimate: f64,
    pub stderr: f64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckReport {
    pub name: String,
    pub range: String,
    pub records: Vec<Record>,
    pub notes: Vec<String>,
    pub monte_carlo: Option<MonteCarlo>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Records,
}

impl CheckReport {
    pub fn new(name: impl Into<String>, range: impl Into<String>) -> Self {
        CheckReport {
            name: name.into(),
            range: range.into(),
            records: Vec::new(),
            notes: Vec::new(),
            monte_carlo: None,
        }
    }

    pub fn push(&mut self, r: Record) {
        self.records.push(r);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    pub fn extend(&mut self, other: CheckReport) {
        self.records.extend(other.records);
        self.notes.extend(other.notes);
    }

    /// Fail if any point failed; otherwise pass if any point passed;
    /// otherwise the strongest of finding, info, skipped.
    pub fn verdict(&self) -> Verdict {
        let has = |v: Verdict| self.records.iter().any(|r| r.verdict == v);
        if has(Verdict::Fail) {
            Verdict::Fail
        } else if has(Verdict::Pass) {
            Verdict::Pass
        } else if has(Verdict::Finding) {
            Verdict::Finding
        } else if has(Verdict::Info) {
            Verdict::Info
        } else {
            Verdict::Skipped
        }
    }

    pub fn count(&self, v: Verdict) -> usize {
        self.records.iter().filter(|r| r.verdict == v).count()
    }

    /// Smallest margin over points that claim something.
    pub fn min_margin(&self) -> Option<f64> {
        self.records
            .iter()
            .filter(|r| matches!(r.verdict, Verdict::Pass | Verdict::Fail | Verdict::Finding))
            .filter_map(|r| r.margin)
            .reduce(f64::min)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Records => self.render_records(),
            Format::Table => self.render_table(),
        }
    }

    fn summary_line(&self) -> String {
        format!(
            "# check {} range {} verdict {} points {} pass {} fail {} finding {} min-margin {}",
            self.name,
            self.range,
            self.verdict(),
            self.records.len(),
            self.count(Verdict::Pass),
            self.count(Verdict::Fail),
            self.count(Verdict::Finding),
            format_margin(self.min_margin()),
        )
    }

    fn mc_line(&self) -> Option<String> {
        self.monte_carlo.as_ref().map(|m| {
            format!(
                "# monte-carlo trials {} successes {} estimate {:.6} stderr {:.6} seed {}",
                m.trials, m.successes, m.estimate, m.stderr, m.seed
            )
        })
    }

    pub fn render_records(&self) -> String {
        let mut out = String::new();
        out.push_str(&self.summary_line());
        out.push('\n');
        if let Some(l) = self.mc_line() {
            out.push_str(&l);
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("# note {n}\n"));
        }
        out.push_str("# name\tparams\tlhs\trhs\tmargin\tverdict\n");
        for r in &self.records {
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\t{}\n",
                r.name,
                r.params,
                r.lhs.exact(),
                r.rhs.exact(),
                format_margin(r.margin),
                r.verdict
            ));
        }
        out
    }

    pub fn render_table(&self) -> String {
        let header = ["name", "params", "lhs", "rhs", "margin", "verdict"].map(String::from);
        let rows: Vec<[String; 6]> = self
            .records
            .iter()
            .map(|r| {
                [
                    r.name.clone(),
                    r.params.clone(),
                    r.lhs.approx(),
                    r.rhs.approx(),
                    format_margin(r.margin),
                    r.verdict.to_string(),
                ]
            })
            .collect();
        let mut width = header.clone().map(|h| h.len());
        for row in &rows {
            for (w, c) in width.iter_mut().zip(row) {
                *w = (*w).max(c.len());
            }
        }
        let line = |cells: &[String; 6]| {
            let mut s = String::new();
            for (i, (c, w)) in cells.iter().zip(width).enumerate() {
                if i + 1 == cells.len() {
                    s.push_str(c);
                } else {
                    s.push_str(&format!("{c:<w$}  "));
                }
            }
            s.push('\n');
            s
        };
        let mut out = String::new();
        out.push_str(&self.summary_line());
        out.push('\n');
        if let Some(l) = self.mc_line() {
            out.push_str(&l);
            out.push('\n');
        }
        for n in &self.notes {
            out.push_str(&format!("# note {n}\n"));
        }
        out.push_str(&line(&header));
        for row in &rows {
            out.push_str(&line(row));
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn aggregate_verdicts() {
        let mut r = CheckReport::new("demo", "n=1..2");
        r.push(Record::info("x", "n=1", Value::int(3)));
        assert_eq!(r.verdict(), Verdict::Info);
        r.push(Record::new("x", "n=2", Value::int(3), Value::int(2), Some(0.17), Verdict::Pass));
        assert_eq!(r.verdict(), Verdict::Pass);
        r.push(Record::new("x", "n=3", Value::int(1), Value::int(2), Some(-0.3), Verdict::Finding));
        assert_eq!(r.verdict(), Verdict::Pass);
        assert_eq!(r.min_margin(), Some(-0.3));
        r.push(Record::new("x", "n=4", Value::int(1), Value::int(2), Some(-0.3), Verdict::Fail));
        assert_eq!(r.verdict(), Verdict::Fail);
    }

    #[test]
    fn renderings() {
        let mut r = CheckReport::new("demo", "n=2");
        r.push(Record::new(
            "demo",
            "n=2",
            Value::Rat(ratio(5, 2)),
            Value::int(2),
            Some(0.0969),
            Verdict::Pass,
        ));
        let rec = r.render(Format::Records);
        assert!(rec.contains("demo\tn=2\t5/2\t2\t0.096900\tpass\n"));
        let tab = r.render(Format::Table);
        assert!(tab.contains("2.5"));
        assert_eq!(format_margin(Some(-0.0)), "0.000000");
        assert_eq!(Value::int(BigInt::from(10).pow(40)).approx(), "1.000000e40");
    }
}
