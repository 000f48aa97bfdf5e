//! Exact counting: Bell, Stirling, no-singleton Bell numbers, profiled
//! partition counts and binomials.
//!
//! The `*_in` functions are generic over any [`Count`] ring; the plain
//! versions return [`BigCount`].

use crate::partition::Profile;
use crate::scalar::{lift, BigCount, Count};

pub fn factorial_in<T: Count>(n: usize) -> T {
    (1..=n).fold(T::one(), |acc, i| acc * lift::<T>(i))
}

/// `C(n, k)`, computed along Pascal's rule so that no division is needed.
pub fn binomial_in<T: Count>(n: usize, k: usize) -> T {
    if k > n {
        return T::zero();
    }
    let k = k.min(n - k);
    let mut row = vec![T::zero(); k + 1];
    row[0] = T::one();
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = row[j].clone() + row[j - 1].clone();
        }
    }
    row[k].clone()
}

fn binomial_row<T: Count>(n: usize) -> Vec<T> {
    let mut row = vec![T::one()];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() + 1);
        next.push(T::one());
        for w in row.windows(2) {
            next.push(w[0].clone() + w[1].clone());
        }
        next.push(T::one());
        row = next;
    }
    row
}

/// `B_0, ..., B_n` via `B_{m+1} = sum_i C(m, i) B_i`.
pub fn bell_numbers_in<T: Count>(n: usize) -> Vec<T> {
    let mut b = vec![T::one()];
    let mut row = vec![T::one()];
    for m in 0..n {
        let next = row
            .iter()
            .zip(&b)
            .fold(T::zero(), |acc, (c, bi)| acc + c.clone() * bi.clone());
        b.push(next);
        let mut nr = Vec::with_capacity(row.len() + 1);
        nr.push(T::one());
        for w in row.windows(2) {
            nr.push(w[0].clone() + w[1].clone());
        }
        nr.push(T::one());
        row = nr;
        debug_assert_eq!(row.len(), m + 2);
    }
    b
}

pub fn bell_in<T: Count>(n: usize) -> T {
    bell_numbers_in::<T>(n).pop().unwrap()
}

/// `S(n, l)`, Stirling numbers of the second kind.
pub fn stirling2_in<T: Count>(n: usize, l: usize) -> T {
    if l > n {
        return T::zero();
    }
    if l == 0 {
        return if n == 0 { T::one() } else { T::zero() };
    }
    // row[j] = S(m, j) for the current m
    let mut row = vec![T::zero(); l + 1];
    row[0] = T::one();
    for m in 1..=n {
        for j in (1..=l.min(m)).rev() {
            row[j] = row[j - 1].clone() + lift::<T>(j) * row[j].clone();
        }
        row[0] = T::zero();
    }
    row[l].clone()
}

/// Partitions of `[0..=n]` with every block of size at least two.
///
/// The block of the newest element has `j >= 1` companions, leaving a
/// no-singleton partition of the other `m - j` elements:
/// `B~_{m+1} = sum_{i=0}^{m-1} C(m, i) B~_i`, with `B~_0 = 1`, `B~_1 = 0`.
pub fn tilde_bell_numbers_in<T: Count>(n: usize) -> Vec<T> {
    let mut b = vec![T::one()];
    if n >= 1 {
        b.push(T::zero());
    }
    for m in 1..n {
        let row = binomial_row::<T>(m);
        let next = (0..m).fold(T::zero(), |acc, i| acc + row[i].clone() * b[i].clone());
        b.push(next);
    }
    b
}

pub fn tilde_bell_in<T: Count>(n: usize) -> T {
    tilde_bell_numbers_in::<T>(n).pop().unwrap()
}

/// Number of partitions with profile `p`: `n! / (prod k_i! * prod_s m_s!)`.
pub fn count_profiled_in<T: Count>(p: &Profile) -> T {
    let num: T = factorial_in(p.n());
    let den = p
        .multiplicities()
        .into_iter()
        .fold(T::one(), |acc, (size, mult)| {
            let mut d = acc * factorial_in::<T>(mult);
            for _ in 0..mult {
                d = d * factorial_in::<T>(size);
            }
            d
        });
    num / den
}

pub fn factorial(n: usize) -> BigCount {
    factorial_in(n)
}

pub fn binomial(n: usize, k: usize) -> BigCount {
    binomial_in(n, k)
}

pub fn bell(n: usize) -> BigCount {
    bell_in(n)
}

pub fn bell_numbers(n: usize) -> Vec<BigCount> {
    bell_numbers_in(n)
}

pub fn stirling2(n: usize, l: usize) -> BigCount {
    stirling2_in(n, l)
}

pub fn tilde_bell(n: usize) -> BigCount {
    tilde_bell_in(n)
}

pub fn tilde_bell_numbers(n: usize) -> Vec<BigCount> {
    tilde_bell_numbers_in(n)
}

pub fn count_profiled(p: &Profile) -> BigCount {
    count_profiled_in(p)
}

/// `u_{k,l}`, the number of `(k, l)`-partitions.
pub fn u_kl(k: usize, l: usize) -> BigCount {
    match Profile::uniform(k, l) {
        Ok(p) => count_profiled(&p),
        Err(_) => BigCount::from(u32::from(l == 0)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: u64) -> BigCount {
        BigCount::from(v)
    }

    #[test]
    fn bell_values() {
        assert_eq!(bell(0), b(1));
        assert_eq!(bell(2), b(2));
        assert_eq!(bell(5), b(52));
        assert_eq!(bell(10), b(115975));
        assert_eq!(bell_in::<u64>(10), 115975);
        assert!((bell_in::<f64>(10) - 115975.0).abs() < 1e-6);
    }

    #[test]
    fn stirling_values() {
        assert_eq!(stirling2(4, 2), b(7));
        assert_eq!(stirling2(5, 3), b(25));
        assert_eq!(stirling2(0, 0), b(1));
        assert_eq!(stirling2(3, 0), b(0));
        assert_eq!(stirling2(2, 3), b(0));
        for n in 0..12 {
            assert_eq!(stirling2(n, n), b(1));
        }
        assert_eq!(stirling2(23, 2), b(4194303));
    }

    #[test]
    fn stirling_rows_sum_to_bell() {
        for n in 0..25 {
            let s: BigCount = (0..=n).map(|l| stirling2(n, l)).sum();
            assert_eq!(s, bell(n));
        }
    }

    #[test]
    fn tilde_bell_values() {
        let t = tilde_bell_numbers(7);
        assert_eq!(t, [1u64, 0, 1, 1, 4, 11, 41, 162].map(b).to_vec());
        assert_eq!(tilde_bell(1), b(0));
        assert_eq!(tilde_bell(2), b(1));
    }

    #[test]
    fn profiled_counts() {
        assert_eq!(count_profiled(&Profile::new(vec![2, 2, 2]).unwrap()), b(15));
        assert_eq!(count_profiled(&Profile::new(vec![3, 3]).unwrap()), b(10));
        assert_eq!(count_profiled(&Profile::new(vec![1; 7]).unwrap()), b(1));
        assert_eq!(count_profiled(&Profile::new(vec![1, 3]).unwrap()), b(4));
        assert_eq!(u_kl(3, 3), b(280));
        assert_eq!(u_kl(2, 9), b(34459425));
        assert_eq!(u_kl(2, 0), b(1));
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), b(10));
        assert_eq!(binomial(5, 7), b(0));
        assert_eq!(binomial_in::<u64>(30, 15), 155117520);
        assert_eq!(factorial(10), b(3628800));
    }
}
