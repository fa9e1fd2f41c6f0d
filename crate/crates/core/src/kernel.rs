//! Exact integers, rationals and the combinatorial primitives everything else
//! is built from: binomials, Pochhammer symbols, p-adic valuations and binary
//! digit sums.

use alloc::vec::Vec;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Unbounded exact integer.
pub type Int = BigInt;
/// Exact rational, always reduced with a positive denominator.
pub type Rat = num_rational::BigRational;

#[inline]
pub fn int(v: i64) -> Int {
    Int::from(v)
}

#[inline]
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

#[inline]
pub fn rat_int(v: Int) -> Rat {
    Rat::from_integer(v)
}

/// `2^e` as an exact integer.
pub fn pow2(e: u64) -> Int {
    Int::one() << e as usize
}

/// `C(n, k)` for `n >= 0`. Out-of-range `k` gives zero.
pub fn binomial(n: i64, k: i64) -> Result<Int> {
    if n < 0 {
        return Err(Error::Domain("binomial: n must be nonnegative"));
    }
    if k < 0 || k > n {
        return Ok(Int::zero());
    }
    Ok(choose(n as u64, k as u64))
}

/// `C(n, k)` over the natural numbers; zero when `k > n`.
pub fn choose(n: u64, k: u64) -> Int {
    if k > n {
        return Int::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    // Multiply then divide one step at a time; each prefix is itself a binomial.
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    Int::from_biguint(Sign::Plus, acc)
}

pub fn factorial(n: u64) -> Int {
    let mut acc = BigUint::one();
    for i in 2..=n {
        acc *= i;
    }
    Int::from_biguint(Sign::Plus, acc)
}

/// Ascending factorial `a (a+1) ... (a+k-1)`, with `(a)_0 = 1`.
pub fn pochhammer(a: &Int, k: u64) -> Int {
    let mut acc = Int::one();
    let mut term = a.clone();
    for _ in 0..k {
        acc *= &term;
        term += 1u32;
    }
    acc
}

/// Number of ones in the binary expansion of `n`.
#[inline]
pub fn s2(n: u64) -> u64 {
    n.count_ones() as u64
}

/// `nu_2(n!)` by Legendre's formula `n - s_2(n)`.
#[inline]
pub fn nu2_factorial(n: u64) -> u64 {
    n - s2(n)
}

/// `nu_p(n!)` by Legendre's formula `sum_i floor(n / p^i)`.
pub fn nup_factorial(p: u64, n: u64) -> u64 {
    let mut total = 0;
    let mut q = n;
    while q > 0 {
        q /= p;
        total += q;
    }
    total
}

/// Trial-division primality for the small primes callers supply.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `nu_p(x)` for a nonzero integer.
pub fn nu_int(p: u64, x: &Int) -> Result<u64> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    Ok(nu_int_unchecked(p, x))
}

/// `nu_p(x)` without validating `p` or `x != 0`.
pub(crate) fn nu_int_unchecked(p: u64, x: &Int) -> u64 {
    if p == 2 {
        return x.trailing_zeros().unwrap_or(0);
    }
    let mut rest = x.abs();
    let mut count = 0;
    // Strip the largest power of p that fits a machine word first.
    let (chunk, chunk_exp) = {
        let mut c = p;
        let mut e = 1;
        while let Some(next) = c.checked_mul(p) {
            c = next;
            e += 1;
        }
        (c, e)
    };
    let chunk = Int::from(chunk);
    loop {
        let (q, r) = rest.div_rem(&chunk);
        if !r.is_zero() {
            break;
        }
        rest = q;
        count += chunk_exp;
    }
    let p_int = Int::from(p);
    loop {
        let (q, r) = rest.div_rem(&p_int);
        if !r.is_zero() {
            break;
        }
        rest = q;
        count += 1;
    }
    count
}

/// `nu_p(num) - nu_p(den)`; undefined (an error) at zero.
pub fn nu(p: u64, x: &Rat) -> Result<i64> {
    check_prime(p)?;
    if x.is_zero() {
        return Err(Error::ZeroValuation);
    }
    let top = nu_int_unchecked(p, x.numer()) as i64;
    let bottom = nu_int_unchecked(p, x.denom()) as i64;
    Ok(top - bottom)
}

/// Binomials `C(n, 0..=n)` as a row.
pub fn binomial_row(n: u64) -> Vec<Int> {
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = Int::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    row
}

/// Pascal triangle `C(n, k)` for `n <= n_max`, for sums that reuse binomials.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<Int>>,
}

impl BinomialTable {
    pub fn new(n_max: u64) -> Self {
        let mut rows: Vec<Vec<Int>> = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max as usize {
            let mut row = Vec::with_capacity(n + 1);
            row.push(Int::one());
            for k in 1..n {
                row.push(&rows[n - 1][k - 1] + &rows[n - 1][k]);
            }
            if n > 0 {
                row.push(Int::one());
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn n_max(&self) -> u64 {
        self.rows.len() as u64 - 1
    }

    /// `C(n, k)`, zero for `k` outside `0..=n`. Panics if `n` exceeds the table.
    pub fn get(&self, n: i64, k: i64) -> Int {
        if n < 0 || k < 0 || k > n {
            return Int::zero();
        }
        self.rows[n as usize][k as usize].clone()
    }

    /// Borrowing form of [`get`](Self::get) for in-range arguments.
    pub fn at(&self, n: usize, k: usize) -> &Int {
        &self.rows[n][k]
    }
}

/// Replace `c` (coefficients of `sum c_k x^k`) by the coefficients of the
/// same polynomial in `x + 1`, using only additions.
pub(crate) fn shift_by_one_in_place(c: &mut [Int]) {
    let n = c.len();
    for i in 0..n {
        for k in (i..n.saturating_sub(1)).rev() {
            let (lo, hi) = c.split_at_mut(k + 1);
            lo[k] += &hi[0];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(4, 2).unwrap(), int(6));
        assert_eq!(binomial(0, 0).unwrap(), int(1));
        assert_eq!(binomial(6, 3).unwrap(), int(20));
        assert_eq!(binomial(5, -1).unwrap(), int(0));
        assert_eq!(binomial(5, 6).unwrap(), int(0));
        assert!(binomial(-1, 0).is_err());
    }

    #[test]
    fn central_binomials_are_even() {
        for m in 1..=200u64 {
            assert!(choose(2 * m, m).is_even(), "C({}, {}) odd", 2 * m, m);
        }
    }

    #[test]
    fn binomial_row_matches_choose() {
        let row = binomial_row(37);
        for (k, c) in row.iter().enumerate() {
            assert_eq!(*c, choose(37, k as u64));
        }
    }

    #[test]
    fn pochhammer_cases() {
        assert_eq!(pochhammer(&int(2), 2), int(6));
        assert_eq!(pochhammer(&int(-7), 0), int(1));
        assert_eq!(pochhammer(&int(1), 10), factorial(10));
        assert_eq!(pochhammer(&int(-2), 3), int(0));
    }

    #[test]
    fn pochhammer_is_factorial_quotient() {
        for m in 1..=100u64 {
            for l in 1..=m {
                let lhs = pochhammer(&int((m + 1 - l) as i64), 2 * l);
                let rhs = factorial(m + l) / factorial(m - l);
                assert_eq!(lhs, rhs, "l={l} m={m}");
            }
        }
    }

    #[test]
    fn valuations() {
        assert_eq!(nu(2, &rat(96, 1)).unwrap(), 5);
        assert_eq!(nu(2, &rat(3, 2)).unwrap(), -1);
        assert_eq!(nu(17, &rat(60, 1)).unwrap(), 0);
        assert_eq!(nu(3, &rat(-54, 7)).unwrap(), 3);
        assert!(matches!(nu(2, &rat(0, 1)), Err(Error::ZeroValuation)));
        assert!(matches!(nu(4, &rat(8, 1)), Err(Error::NotPrime(4))));
    }

    #[test]
    fn chunked_division_counts_high_powers() {
        let x = Int::from(17u32).pow(40u32) * 5;
        assert_eq!(nu_int(17, &x).unwrap(), 40);
        let y = Int::from(3u32).pow(123u32);
        assert_eq!(nu_int(3, &y).unwrap(), 123);
    }

    #[test]
    fn digit_sum_and_legendre() {
        assert_eq!(s2(26), 3);
        assert_eq!(s2(0), 0);
        assert_eq!(nu2_factorial(26), 23);
        assert_eq!(factorial(26).trailing_zeros(), Some(23));
        for n in 0..=200u64 {
            let direct = factorial(n).trailing_zeros().unwrap();
            assert_eq!(direct, n - s2(n), "n={n}");
        }
    }

    #[test]
    fn legendre_odd_primes() {
        for p in [3u64, 5, 7, 17] {
            for n in 0..=120u64 {
                assert_eq!(nup_factorial(p, n), nu_int(p, &factorial(n)).unwrap());
            }
        }
    }

    #[test]
    fn binomial_table_matches_choose() {
        let t = BinomialTable::new(50);
        for n in 0..=50i64 {
            for k in -1..=n + 1 {
                assert_eq!(t.get(n, k), binomial(n, k).unwrap());
            }
        }
    }

    #[test]
    fn shift_by_one() {
        // x^2 -> x^2 + 2x + 1
        let mut c = [int(0), int(0), int(1)];
        shift_by_one_in_place(&mut c);
        assert_eq!(c, [int(1), int(2), int(1)]);
    }

    #[test]
    fn rationals_stay_reduced() {
        let a = rat(6, -4);
        assert_eq!(a.numer(), &int(-3));
        assert_eq!(a.denom(), &int(2));
        let b = &a * &rat(4, 9) + rat(1, 3);
        assert_eq!(b, rat(-1, 3));
        assert!(b.denom().is_positive());
    }
}
