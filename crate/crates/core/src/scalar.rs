//! Scalar abstractions and exact rational helpers.
//!
//! Counting routines are generic over [`Count`], so the same recurrence can
//! run over `u64`, `f64` or arbitrary-precision integers. Decisions made by
//! the spreadness engine and the verifiers always use the exact types
//! [`BigCount`] and [`Ratio`].

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact nonnegative count.
pub type BigCount = BigUint;

/// Exact rational in reduced form with positive denominator.
pub type Ratio = BigRational;

/// A ring in which combinatorial counts can be accumulated.
pub trait Count: Clone + Num + FromPrimitive {}
impl<T: Clone + Num + FromPrimitive> Count for T {}

/// An ordered field, e.g. `f32`, `f64` or [`Ratio`].
pub trait Field: Count + PartialOrd {}
impl<T: Count + PartialOrd> Field for T {}

pub(crate) fn lift<T: Count>(v: usize) -> T {
    T::from_usize(v).expect("small integer representable in scalar type")
}

pub fn ratio_from_int(v: u64) -> Ratio {
    Ratio::from_integer(BigInt::from(v))
}

pub fn ratio(num: i64, den: i64) -> Ratio {
    Ratio::new(BigInt::from(num), BigInt::from(den))
}

pub fn count_to_int(c: &BigCount) -> BigInt {
    BigInt::from_biguint(Sign::Plus, c.clone())
}

pub fn count_to_ratio(c: &BigCount) -> Ratio {
    Ratio::from_integer(count_to_int(c))
}

/// Parses `p/q`, a plain integer, or a finite decimal such as `2.5`.
pub fn parse_ratio(s: &str) -> Result<Ratio> {
    let s = s.trim();
    let bad = || Error::Parse {
        line: 0,
        msg: format!("not a rational number: `{s}`"),
    };
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(bad());
        }
        return Ok(Ratio::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let digits = format!("{int}{frac}");
        let p = BigInt::from_str(&digits).map_err(|_| bad())?;
        let q = BigInt::from(10u32).pow(frac.len() as u32);
        return Ok(Ratio::new(p, q));
    }
    BigInt::from_str(s)
        .map(Ratio::from_integer)
        .map_err(|_| bad())
}

pub fn pow_ratio(r: &Ratio, e: u32) -> Ratio {
    num_traits::pow(r.clone(), e as usize)
}

/// `log10(|num| / |den|)` without overflowing `f64` on huge operands.
pub fn log10_ratio(num: &BigInt, den: &BigInt) -> f64 {
    log10_big(num) - log10_big(den)
}

fn log10_big(x: &BigInt) -> f64 {
    let x = x.abs();
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        return x.to_f64().unwrap().log10();
    }
    let shift = bits - 60;
    let top: BigInt = &x >> shift;
    top.to_f64().unwrap().log10() + shift as f64 * std::f64::consts::LOG10_2
}

/// Signed decimal slack `log10(big/small)` for a claim `big >= small`.
/// Positive or zero exactly when the claim holds; `+inf` when `small` is zero.
pub fn slack_ge(big: &Ratio, small: &Ratio) -> f64 {
    if small.is_zero() {
        return if big.is_zero() { 0.0 } else { f64::INFINITY };
    }
    if big.is_zero() || big.is_negative() || small.is_negative() {
        let d = big - small;
        return if d.is_negative() { f64::NEG_INFINITY } else { 0.0 };
    }
    log10_ratio(
        &(big.numer() * small.denom()),
        &(small.numer() * big.denom()),
    )
}

pub fn ratio_to_f64(r: &Ratio) -> f64 {
    let l = log10_ratio(r.numer(), r.denom());
    if l.abs() < 300.0 {
        r.to_f64().unwrap_or_else(|| 10f64.powf(l))
    } else {
        let sign = if r.is_negative() { -1.0 } else { 1.0 };
        sign * 10f64.powf(l)
    }
}

/// A closed rational interval known to contain some real number.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Interval {
    pub lo: Ratio,
    pub hi: Ratio,
}

impl Interval {
    pub fn exact(v: Ratio) -> Self {
        Interval {
            lo: v.clone(),
            hi: v,
        }
    }

    pub fn mid_f64(&self) -> f64 {
        (ratio_to_f64(&self.lo) + ratio_to_f64(&self.hi)) / 2.0
    }

    pub fn width(&self) -> Ratio {
        &self.hi - &self.lo
    }

    pub fn scale(&self, c: &Ratio) -> Interval {
        if c.is_negative() {
            Interval {
                lo: &self.hi * c,
                hi: &self.lo * c,
            }
        } else {
            Interval {
                lo: &self.lo * c,
                hi: &self.hi * c,
            }
        }
    }

    pub fn add(&self, other: &Interval) -> Interval {
        Interval {
            lo: &self.lo + &other.lo,
            hi: &self.hi + &other.hi,
        }
    }

    /// Division by an interval that lies strictly above zero.
    pub fn div_positive(&self, d: &Interval) -> Interval {
        assert!(d.lo.is_positive(), "divisor interval must be positive");
        let cands = [
            &self.lo / &d.lo,
            &self.lo / &d.hi,
            &self.hi / &d.lo,
            &self.hi / &d.hi,
        ];
        let lo = cands.iter().min().unwrap().clone();
        let hi = cands.iter().max().unwrap().clone();
        Interval { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{:.15e}, {:.15e}]",
            ratio_to_f64(&self.lo),
            ratio_to_f64(&self.hi)
        )
    }
}

/// Decimal digits kept when transcendental bounds are rounded outward.
pub const BOUND_DIGITS: u32 = 45;

fn grid() -> &'static BigInt {
    static G: OnceLock<BigInt> = OnceLock::new();
    G.get_or_init(|| BigInt::from(10u32).pow(BOUND_DIGITS))
}

/// Rounds down onto the `10^-BOUND_DIGITS` grid.
pub fn round_down(x: &Ratio) -> Ratio {
    let g = grid();
    let scaled = x.numer() * g;
    Ratio::new(scaled.div_floor(x.denom()), g.clone())
}

/// Rounds up onto the `10^-BOUND_DIGITS` grid.
pub fn round_up(x: &Ratio) -> Ratio {
    let g = grid();
    let scaled = x.numer() * g;
    Ratio::new(scaled.div_ceil(x.denom()), g.clone())
}

fn round_out(iv: Interval) -> Interval {
    Interval {
        lo: round_down(&iv.lo),
        hi: round_up(&iv.hi),
    }
}

// 2 * atanh(y) for 0 <= y <= 1/3, enclosed with a geometric tail bound.
fn two_atanh(y: &Ratio) -> Interval {
    let y2 = y * y;
    let mut term = y.clone();
    let mut sum = Ratio::zero();
    let eps = Ratio::new(BigInt::one(), grid() * BigInt::from(1000u32));
    let mut k: u64 = 0;
    loop {
        sum += &term / ratio_from_int(2 * k + 1);
        term = &term * &y2;
        k += 1;
        // remaining terms are bounded by term / ((2k+1)(1 - y^2))
        let tail = &term / (ratio_from_int(2 * k + 1) * (Ratio::one() - &y2));
        if tail <= eps {
            let two = ratio_from_int(2);
            return round_out(Interval {
                lo: &sum * &two,
                hi: (&sum + tail) * two,
            });
        }
    }
}

/// Enclosure of `ln 2`, computed once.
pub fn ln2_interval() -> &'static Interval {
    static LN2: OnceLock<Interval> = OnceLock::new();
    LN2.get_or_init(|| two_atanh(&ratio(1, 3)))
}

/// Enclosure of `ln x` for rational `x > 0`.
pub fn ln_interval(x: &Ratio) -> Interval {
    assert!(x.is_positive(), "ln of a nonpositive number");
    if x.is_one() {
        return Interval::exact(Ratio::zero());
    }
    // x = 2^k * z with z in [1, 2)
    let mut k: i64 = x.numer().bits() as i64 - x.denom().bits() as i64;
    let two = BigInt::from(2u32);
    let mut z = if k >= 0 {
        x / Ratio::from_integer(two.pow(k as u32))
    } else {
        x * Ratio::from_integer(two.pow((-k) as u32))
    };
    while z >= ratio_from_int(2) {
        z /= ratio_from_int(2);
        k += 1;
    }
    while z < Ratio::one() {
        z *= ratio_from_int(2);
        k -= 1;
    }
    let y = (&z - Ratio::one()) / (&z + Ratio::one());
    let lz = two_atanh(&y);
    let lk = ln2_interval().scale(&Ratio::from_integer(BigInt::from(k)));
    round_out(lz.add(&lk))
}

pub fn ln_interval_int(n: u64) -> Interval {
    ln_interval(&ratio_from_int(n))
}

/// Enclosure of `log2 x` for rational `x > 0`; exact for powers of two.
pub fn log2_interval(x: &Ratio) -> Interval {
    if x.denom().is_one() && x.numer().is_positive() {
        let n = x.numer();
        if (n & (n - BigInt::one())).is_zero() {
            let k = n.bits() - 1;
            return Interval::exact(ratio_from_int(k));
        }
    }
    round_out(ln_interval(x).div_positive(ln2_interval()))
}

/// Enclosure of Euler's number `e`.
pub fn e_interval() -> &'static Interval {
    static E: OnceLock<Interval> = OnceLock::new();
    E.get_or_init(|| {
        let mut sum = Ratio::zero();
        let mut fact = BigInt::one();
        let kmax = 60u64;
        for k in 0..=kmax {
            if k > 0 {
                fact *= BigInt::from(k);
            }
            sum += Ratio::new(BigInt::one(), fact.clone());
        }
        // sum_{j > K} 1/j! < 1/(K! K)
        let tail = Ratio::new(BigInt::one(), fact * BigInt::from(kmax));
        round_out(Interval {
            lo: sum.clone(),
            hi: sum + tail,
        })
    })
}

/// Enclosure of `1/e`.
pub fn inv_e_interval() -> Interval {
    let e = e_interval();
    round_out(Interval {
        lo: e.hi.recip(),
        hi: e.lo.recip(),
    })
}

pub fn biguint_from_usize(v: usize) -> BigUint {
    BigUint::from(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(iv: &Interval, v: f64) -> bool {
        let w = ratio_to_f64(&iv.width());
        ratio_to_f64(&iv.lo) <= v + 1e-15 && ratio_to_f64(&iv.hi) >= v - 1e-15 && w < 1e-40
    }

    #[test]
    fn ln_bounds_enclose_float_log() {
        for n in [2u64, 3, 5, 10, 16, 17, 100, 499, 500, 1000] {
            let iv = ln_interval_int(n);
            assert!(close(&iv, (n as f64).ln()), "ln {n}: {iv}");
        }
        let iv = ln_interval(&ratio(1, 7));
        assert!(close(&iv, (1.0f64 / 7.0).ln()));
    }

    #[test]
    fn log2_exact_on_powers_of_two() {
        assert_eq!(log2_interval(&ratio_from_int(64)), Interval::exact(ratio_from_int(6)));
        let iv = log2_interval(&ratio_from_int(23));
        assert!(close(&iv, 23f64.log2()));
    }

    #[test]
    fn e_bounds() {
        let e = e_interval();
        assert!(close(e, std::f64::consts::E));
        let inv = inv_e_interval();
        assert!(inv.lo < inv.hi);
        assert!(close(&inv, 1.0 / std::f64::consts::E));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(parse_ratio("21/10").unwrap(), ratio(21, 10));
        assert_eq!(parse_ratio("2.5").unwrap(), ratio(5, 2));
        assert_eq!(parse_ratio("7").unwrap(), ratio(7, 1));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("x").is_err());
    }

    #[test]
    fn slack_sign() {
        assert!(slack_ge(&ratio(3, 1), &ratio(2, 1)) > 0.0);
        assert!(slack_ge(&ratio(2, 1), &ratio(3, 1)) < 0.0);
        assert_eq!(slack_ge(&ratio(2, 1), &ratio(2, 1)), 0.0);
    }
}
