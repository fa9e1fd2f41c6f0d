//! Gaussian and quantum binomial coefficients and the operator
//! `L(f)_k = f_k^2 - f_{k-1} f_{k+1}` on sequences of Laurent polynomials in
//! `q` with integer coefficients.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};
use core::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::kernel::Int;
use crate::report::{Report, Witness};

/// `sum_i coeffs[i] q^{low + i}`, trimmed at both ends; zero has no coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QLaurent {
    low: i64,
    coeffs: Vec<Int>,
}

impl QLaurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(Int::one(), 0)
    }

    pub fn monomial(c: Int, e: i64) -> Self {
        Self::new(e, vec![c])
    }

    pub fn new(low: i64, coeffs: Vec<Int>) -> Self {
        let mut p = QLaurent { low, coeffs };
        p.trim();
        p
    }

    pub fn from_i64s(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| Int::from(c)).collect())
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.low = 0;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    pub fn max_exponent(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64 - 1)
    }

    pub fn coeff(&self, e: i64) -> Int {
        usize::try_from(e - self.low)
            .ok()
            .and_then(|i| self.coeffs.get(i).cloned())
            .unwrap_or_else(Int::zero)
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &Int)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (self.low + i as i64, c))
    }

    /// Multiply by `q^k`.
    pub fn shift(&self, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        QLaurent {
            low: self.low + k,
            coeffs: self.coeffs.clone(),
        }
    }

    /// Substitute `q -> q^{-1}`.
    pub fn invert_variable(&self) -> Self {
        match self.max_exponent() {
            None => Self::zero(),
            Some(hi) => QLaurent {
                low: -hi,
                coeffs: self.coeffs.iter().rev().cloned().collect(),
            },
        }
    }

    /// Substitute `q -> q^2`.
    pub fn square_variable(&self) -> Self {
        let mut coeffs = vec![Int::zero(); (2 * self.coeffs.len()).saturating_sub(1)];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[2 * i] = c.clone();
        }
        Self::new(2 * self.low, coeffs)
    }

    /// Value at `q = 1`.
    pub fn eval_one(&self) -> Int {
        self.coeffs.iter().sum()
    }

    /// First `(exponent, coefficient)` with a negative coefficient.
    pub fn first_negative(&self) -> Option<(i64, Int)> {
        self.terms()
            .find(|(_, c)| c.is_negative())
            .map(|(e, c)| (e, c.clone()))
    }

    pub fn is_nonnegative(&self) -> bool {
        self.first_negative().is_none()
    }

    /// `self / d` when the quotient is again a Laurent polynomial with integer
    /// coefficients.
    pub fn div_exact(&self, d: &QLaurent) -> Option<QLaurent> {
        if d.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (n, m) = (self.coeffs.len(), d.coeffs.len());
        if n < m {
            return None;
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Int::zero(); n - m + 1];
        let lead = &d.coeffs[m - 1];
        for i in (0..=n - m).rev() {
            let (q, r) = rem[i + m - 1].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            if !q.is_zero() {
                for (j, dc) in d.coeffs.iter().enumerate() {
                    rem[i + j] -= &q * dc;
                }
            }
            quot[i] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::new(self.low - d.low, quot))
    }
}

impl Add for &QLaurent {
    type Output = QLaurent;
    fn add(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        let low = self.low.min(rhs.low);
        let high = self.max_exponent().max(rhs.max_exponent()).unwrap_or(low);
        let mut coeffs = vec![Int::zero(); (high - low + 1) as usize];
        for p in [self, rhs] {
            for (i, c) in p.coeffs.iter().enumerate() {
                coeffs[(p.low - low) as usize + i] += c;
            }
        }
        QLaurent::new(low, coeffs)
    }
}

impl Neg for &QLaurent {
    type Output = QLaurent;
    fn neg(self) -> QLaurent {
        QLaurent {
            low: self.low,
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Sub for &QLaurent {
    type Output = QLaurent;
    fn sub(self, rhs: &QLaurent) -> QLaurent {
        self + &(-rhs)
    }
}

impl Mul for &QLaurent {
    type Output = QLaurent;
    fn mul(self, rhs: &QLaurent) -> QLaurent {
        if self.is_zero() || rhs.is_zero() {
            return QLaurent::zero();
        }
        let mut coeffs = vec![Int::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        QLaurent::new(self.low + rhs.low, coeffs)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $f:ident) => {
        impl $tr for QLaurent {
            type Output = QLaurent;
            fn $f(self, rhs: QLaurent) -> QLaurent {
                (&self).$f(&rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for QLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.terms() {
            let neg = c.is_negative();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let a = c.abs();
            match (e, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => f.write_str("q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{e}")?,
                (_, false) => write!(f, "{a}q^{e}")?,
            }
        }
        Ok(())
    }
}

/// Polynomial in `q` with integer coefficients (nonnegative exponents only).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct QPoly(QLaurent);

impl QPoly {
    pub fn from_coeffs(coeffs: Vec<Int>) -> Self {
        QPoly(QLaurent::new(0, coeffs))
    }

    pub fn from_laurent(p: QLaurent) -> Option<Self> {
        match p.min_exponent() {
            Some(e) if e < 0 => None,
            _ => Some(QPoly(p)),
        }
    }

    /// Dense coefficient list from `q^0` up.
    pub fn coeffs(&self) -> Vec<Int> {
        match self.0.max_exponent() {
            None => Vec::new(),
            Some(hi) => (0..=hi).map(|e| self.0.coeff(e)).collect(),
        }
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.max_exponent().map(|e| e as usize)
    }

    pub fn eval_one(&self) -> Int {
        self.0.eval_one()
    }

    pub fn as_laurent(&self) -> &QLaurent {
        &self.0
    }

    pub fn into_laurent(self) -> QLaurent {
        self.0
    }
}

impl fmt::Display for QPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// `[n]_q = 1 + q + ... + q^{n-1}`.
pub fn q_integer(n: u64) -> QPoly {
    QPoly::from_coeffs(vec![Int::one(); n as usize])
}

pub fn q_factorial(n: u64) -> QPoly {
    let mut acc = QLaurent::one();
    for i in 1..=n {
        acc = &acc * q_integer(i).as_laurent();
    }
    QPoly(acc)
}

/// Row `n` of Gaussian binomials by the recurrence
/// `[n, k] = [n-1, k-1] + q^k [n-1, k]`.
pub fn gaussian_row(n: u64) -> Vec<QPoly> {
    let mut row = vec![QLaurent::one()];
    for i in 1..=n as usize {
        let mut next = Vec::with_capacity(i + 1);
        for k in 0..=i {
            let left = if k == 0 {
                QLaurent::zero()
            } else {
                row[k - 1].clone()
            };
            let right = row
                .get(k)
                .map_or_else(QLaurent::zero, |r| r.shift(k as i64));
            next.push(&left + &right);
        }
        row = next;
    }
    row.into_iter().map(QPoly).collect()
}

/// Zero outside `0 <= k <= n`.
pub fn gaussian_binomial(n: i64, k: i64) -> QPoly {
    if n < 0 || k < 0 || k > n {
        return QPoly::default();
    }
    gaussian_row(n as u64).swap_remove(k as usize)
}

/// `<n> = (q^n - q^{-n}) / (q - q^{-1}) = q^{1-n} + q^{3-n} + ... + q^{n-1}`.
pub fn quantum_integer(n: u64) -> QLaurent {
    if n == 0 {
        return QLaurent::zero();
    }
    let mut coeffs = vec![Int::zero(); 2 * n as usize - 1];
    for i in (0..coeffs.len()).step_by(2) {
        coeffs[i] = Int::one();
    }
    QLaurent::new(1 - n as i64, coeffs)
}

pub fn quantum_factorial(n: u64) -> QLaurent {
    (1..=n).fold(QLaurent::one(), |acc, i| &acc * &quantum_integer(i))
}

/// `<n>! / (<k>! <n-k>!)`, zero outside `0 <= k <= n`.
pub fn quantum_binomial(n: i64, k: i64) -> QLaurent {
    if n < 0 || k < 0 || k > n {
        return QLaurent::zero();
    }
    let (n, k) = (n as u64, k as u64);
    let den = &quantum_factorial(k) * &quantum_factorial(n - k);
    quantum_factorial(n)
        .div_exact(&den)
        .expect("quantum factorials divide exactly")
}

/// `q^{-(nk - k^2)} [n, k]_{q^2}`.
pub fn quantum_from_gaussian(n: i64, k: i64) -> QLaurent {
    if n < 0 || k < 0 || k > n {
        return QLaurent::zero();
    }
    gaussian_binomial(n, k)
        .as_laurent()
        .square_variable()
        .shift(-(n * k - k * k))
}

/// `L` with zero padding on both sides, plus a nonnegativity flag per entry.
pub fn q_l_operator(fs: &[QLaurent]) -> (Vec<QLaurent>, Vec<bool>) {
    let zero = QLaurent::zero();
    let out: Vec<QLaurent> = (0..fs.len())
        .map(|k| {
            let left = if k == 0 { &zero } else { &fs[k - 1] };
            let right = fs.get(k + 1).unwrap_or(&zero);
            &(&fs[k] * &fs[k]) - &(left * right)
        })
        .collect();
    let flags = out.iter().map(QLaurent::is_nonnegative).collect();
    (out, flags)
}

/// `L` on a truncated prefix of an infinite sequence: zero padding at the
/// start, while the last entry, whose right neighbour is unknown, is dropped.
pub fn q_l_operator_truncated(fs: &[QLaurent]) -> (Vec<QLaurent>, Vec<bool>) {
    if fs.is_empty() {
        return (Vec::new(), Vec::new());
    }
    let (mut out, mut flags) = q_l_operator(fs);
    out.pop();
    flags.pop();
    (out, flags)
}

/// A negative coefficient found after iterating `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QWitness {
    pub n: u64,
    pub k: u64,
    pub depth: usize,
    pub exponent: i64,
    pub coefficient: Int,
}

fn witness_report(id: &str, params: String, w: &QWitness) -> Report {
    Report::fail(
        id,
        params,
        Witness::new(
            format!(
                "n={} k={} depth={} exponent={}",
                w.n, w.k, w.depth, w.exponent
            ),
            &w.coefficient,
            ">= 0",
        ),
    )
    .with_detail("n", w.n)
    .with_detail("k", w.k)
    .with_detail("depth", w.depth)
    .with_detail("exponent", w.exponent)
    .with_detail("coefficient", &w.coefficient)
}

/// Smallest `(n, k)` such that two applications of `L` to Gaussian row `n`
/// leave a negative coefficient at position `k`.
pub fn gaussian_depth2_scan(n_max: u64) -> Option<QWitness> {
    for n in 1..=n_max {
        let row: Vec<QLaurent> = gaussian_row(n)
            .into_iter()
            .map(QPoly::into_laurent)
            .collect();
        let (once, _) = q_l_operator(&row);
        let (twice, _) = q_l_operator(&once);
        for (k, f) in twice.iter().enumerate() {
            if let Some((exponent, coefficient)) = f.first_negative() {
                return Some(QWitness {
                    n,
                    k: k as u64,
                    depth: 2,
                    exponent,
                    coefficient,
                });
            }
        }
    }
    None
}

/// The scan as a report: it fails (with the witness) when a negative
/// coefficient exists, which is the expected outcome.
pub fn gaussian_depth2_witness(n_max: u64) -> Result<Report> {
    if n_max < 1 {
        return Err(Error::Domain("n_max must be at least 1"));
    }
    let params = format!("n<={n_max}");
    Ok(match gaussian_depth2_scan(n_max) {
        Some(w) => witness_report("gaussian_depth2", params, &w),
        None => Report::pass("gaussian_depth2", params)
            .with_detail("result", format!("no witness <= {n_max}")),
    })
}

/// Sequences of quantum binomials probed for iterated q-log-concavity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum QFamily {
    /// `<n, k>` for `k = 0..=n`.
    Row(u64),
    /// `<n, k>` for `n = k..` (truncated).
    Column(u64),
    /// `<n + m u, m v>` for `m = 0..` (truncated), `u < v`.
    Diagonal { n: u64, u: u64, v: u64 },
}

impl fmt::Display for QFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QFamily::Row(n) => write!(f, "row({n})"),
            QFamily::Column(k) => write!(f, "column({k})"),
            QFamily::Diagonal { n, u, v } => write!(f, "diagonal({n},{u},{v})"),
        }
    }
}

impl FromStr for QFamily {
    type Err = Error;
    /// `row:N`, `column:K` or `diagonal:N,U,V`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("bad family `{s}`"));
        let (kind, args) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<u64> = args
            .split(',')
            .map(|x| x.trim().parse().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        match (kind, nums.as_slice()) {
            ("row", [n]) => Ok(QFamily::Row(*n)),
            ("column", [k]) => Ok(QFamily::Column(*k)),
            ("diagonal", [n, u, v]) => Ok(QFamily::Diagonal {
                n: *n,
                u: *u,
                v: *v,
            }),
            _ => Err(bad()),
        }
    }
}

/// Probe `depth` applications of `L`. `bound` caps the truncated families:
/// the largest `n` for columns, the largest `m` for diagonals.
pub fn quantum_conjecture_probe(family: QFamily, depth: usize, bound: u64) -> Result<Report> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be at least 1".into()));
    }
    let (seq, truncated, index_of): (Vec<QLaurent>, bool, fn(u64, u64) -> (u64, u64)) = match family
    {
        QFamily::Row(n) => (
            (0..=n as i64)
                .map(|k| quantum_binomial(n as i64, k))
                .collect(),
            false,
            |n, i| (n, i),
        ),
        QFamily::Column(k) => {
            if bound < k {
                return Err(Error::InvalidArgument(format!(
                    "column({k}) needs bound >= {k}"
                )));
            }
            (
                (k..=bound)
                    .map(|n| quantum_binomial(n as i64, k as i64))
                    .collect(),
                true,
                |k, i| (k + i, k),
            )
        }
        QFamily::Diagonal { n, u, v } => {
            if u >= v {
                return Err(Error::Domain(
                    "diagonal probes need u < v; see diagonal_lowest_degree",
                ));
            }
            (
                (0..=bound as i64)
                    .map(|m| quantum_binomial(n as i64 + m * u as i64, m * v as i64))
                    .collect(),
                true,
                |_, i| (i, i),
            )
        }
    };
    if truncated && seq.len() <= depth {
        return Err(Error::InvalidArgument(
            "bound too small for the requested depth".into(),
        ));
    }
    let params = format!("{family} depth={depth} bound={bound}");
    let tag = match family {
        QFamily::Row(n) => n,
        QFamily::Column(k) => k,
        QFamily::Diagonal { n, .. } => n,
    };
    let mut cur = seq;
    for d in 1..=depth {
        let (next, flags) = if truncated {
            q_l_operator_truncated(&cur)
        } else {
            q_l_operator(&cur)
        };
        if let Some(i) = flags.iter().position(|ok| !ok) {
            let (exponent, coefficient) = next[i].first_negative().expect("flagged entry");
            let (n, k) = index_of(tag, i as u64);
            let w = QWitness {
                n,
                k,
                depth: d,
                exponent,
                coefficient,
            };
            return Ok(witness_report("quantum_probe", params, &w));
        }
        cur = next;
    }
    Ok(Report::pass("quantum_probe", params).with_detail("entries_checked", cur.len()))
}

/// Lowest term of `<n+u, v>^2 - <n+2u, 2v>`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowestTerm {
    pub exponent: i64,
    pub coefficient: Int,
}

pub fn diagonal_lowest_degree(n: u64, u: u64, v: u64) -> Result<LowestTerm> {
    if v < 1 || u <= v {
        return Err(Error::Domain("diagonal_lowest_degree needs u > v >= 1"));
    }
    let (n, u, v) = (n as i64, u as i64, v as i64);
    let a = quantum_binomial(n + u, v);
    let b = quantum_binomial(n + 2 * u, 2 * v);
    let diff = &(&a * &a) - &b;
    let exponent = diff.min_exponent().ok_or(Error::ZeroPolynomial)?;
    Ok(LowestTerm {
        coefficient: diff.coeff(exponent),
        exponent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::choose;

    fn ql(low: i64, c: &[i64]) -> QLaurent {
        QLaurent::from_i64s(low, c)
    }

    #[test]
    fn gaussian_examples() {
        assert_eq!(gaussian_binomial(2, 1).as_laurent(), &ql(0, &[1, 1]));
        assert_eq!(
            gaussian_binomial(4, 2).as_laurent(),
            &ql(0, &[1, 1, 2, 1, 1])
        );
        assert!(gaussian_binomial(3, 4).as_laurent().is_zero());
        for n in 0..=12u64 {
            for (k, g) in gaussian_row(n).iter().enumerate() {
                assert_eq!(g.eval_one(), choose(n, k as u64));
                let den =
                    q_factorial(k as u64).into_laurent() * q_factorial(n - k as u64).into_laurent();
                let by_division = q_factorial(n).as_laurent().div_exact(&den).unwrap();
                assert_eq!(g.as_laurent(), &by_division);
            }
        }
        assert_eq!(
            format!("{}", gaussian_binomial(4, 2)),
            "1 + q + 2q^2 + q^3 + q^4"
        );
    }

    #[test]
    fn quantum_examples() {
        assert_eq!(quantum_binomial(2, 1), ql(-1, &[1, 0, 1]));
        assert_eq!(quantum_binomial(5, 0), QLaurent::one());
        for n in 0..=10i64 {
            for k in 0..=n {
                let q = quantum_binomial(n, k);
                assert_eq!(q, quantum_from_gaussian(n, k));
                assert_eq!(q, q.invert_variable());
                assert_eq!(q, quantum_binomial(n, n - k));
            }
        }
    }

    #[test]
    fn division_rejects_inexact() {
        assert!(ql(0, &[1, 0, 1]).div_exact(&ql(0, &[1, 1])).is_none());
        assert_eq!(
            ql(0, &[1, 0, -1]).div_exact(&ql(0, &[1, 1])),
            Some(ql(0, &[1, -1]))
        );
    }

    #[test]
    fn l_operator_examples() {
        let row: Vec<QLaurent> = gaussian_row(2)
            .into_iter()
            .map(QPoly::into_laurent)
            .collect();
        let (once, flags) = q_l_operator(&row);
        assert_eq!(once[1], ql(1, &[2, 1]));
        assert!(flags.iter().all(|f| *f));
        let (ones, _) = q_l_operator(&[QLaurent::one(), QLaurent::one()]);
        assert_eq!(ones, [QLaurent::one(), QLaurent::one()]);
        let (_, flags) = q_l_operator(&once);
        assert_eq!(flags, [true, false, true]);
    }

    #[test]
    fn depth_two_witness() {
        let w = gaussian_depth2_scan(12).unwrap();
        assert_eq!((w.n, w.k, w.exponent), (2, 1, 0));
        assert_eq!(w.coefficient, Int::from(-1));
        assert!(gaussian_depth2_scan(1).is_none());
        let r = gaussian_depth2_witness(12).unwrap();
        assert!(!r.passed);
        assert_eq!(r.detail("coefficient"), Some("-1"));
        for n in 1..=12 {
            let row: Vec<QLaurent> = gaussian_row(n)
                .into_iter()
                .map(QPoly::into_laurent)
                .collect();
            assert!(q_l_operator(&row).1.iter().all(|f| *f));
        }
    }

    #[test]
    fn probes() {
        assert!(
            quantum_conjecture_probe(QFamily::Row(6), 3, 0)
                .unwrap()
                .passed
        );
        assert!(
            quantum_conjecture_probe(QFamily::Column(2), 3, 12)
                .unwrap()
                .passed
        );
        let d = QFamily::Diagonal { n: 4, u: 1, v: 2 };
        assert!(quantum_conjecture_probe(d, 2, 8).unwrap().passed);
        assert!(quantum_conjecture_probe(QFamily::Diagonal { n: 2, u: 2, v: 1 }, 1, 4).is_err());
        assert_eq!("diagonal:4,1,2".parse::<QFamily>().unwrap(), d);
    }

    #[test]
    fn lowest_degree() {
        for (n, u, v) in [(2u64, 2u64, 1u64), (3, 3, 1), (4, 3, 2)] {
            let t = diagonal_lowest_degree(n, u, v).unwrap();
            assert_eq!(t.coefficient, Int::from(-1));
            assert_eq!(t.exponent, -2 * v as i64 * (n + 2 * u - 2 * v) as i64);
        }
        assert!(diagonal_lowest_degree(2, 1, 1).is_err());
    }
}
