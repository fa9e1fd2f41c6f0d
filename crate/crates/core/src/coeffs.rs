//! The coefficients `d(l, m)` of `P_m(a)`, three independent ways, plus the
//! polynomials built from them.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::alpha_beta::{alpha_value, beta_value};
use crate::error::{Error, Result};
use crate::kernel::{
    choose, factorial, pow2, rat_int, shift_by_one_in_place, BinomialTable, Int, Rat,
};
use crate::poly::Poly;

/// Route used to compute a coefficient.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Method {
    /// Single binomial sum with positive terms.
    Single,
    /// Alternating triple sum.
    Triple,
    /// Products of `4k-1` and `4k+1` weighted by the alpha/beta polynomials.
    Center,
}

impl Method {
    pub const ALL: [Method; 3] = [Method::Single, Method::Triple, Method::Center];

    pub fn name(self) -> &'static str {
        match self {
            Method::Single => "single",
            Method::Triple => "triple",
            Method::Center => "center",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "single" => Ok(Method::Single),
            "triple" => Ok(Method::Triple),
            "center" => Ok(Method::Center),
            other => Err(Error::Unknown(other.into())),
        }
    }
}

fn check_indices(l: u64, m: u64) -> Result<()> {
    if l > m {
        return Err(Error::Domain("coefficient index requires l <= m"));
    }
    Ok(())
}

/// `d(l, m)` by the requested route.
pub fn d_coeff(l: u64, m: u64, method: Method) -> Result<Rat> {
    check_indices(l, m)?;
    Ok(match method {
        Method::Single => d_single(l, m),
        Method::Triple => d_triple(l, m, &BinomialTable::new(2 * m + 1)),
        Method::Center => d_center(l, m, &CenterProducts::new(m)),
    })
}

fn d_single(l: u64, m: u64) -> Rat {
    let mut acc = Int::zero();
    for k in l..=m {
        acc += (choose(2 * m - 2 * k, m - k) * choose(m + k, m) * choose(k, l)) << k as usize;
    }
    Rat::new(acc, pow2(2 * m))
}

/// Triple sum, scaled by `2^{3m}` so the summation stays in the integers.
fn d_triple(l: u64, m: u64, binom: &BinomialTable) -> Rat {
    let (l, m) = (l as usize, m as usize);
    let mut acc = Int::zero();
    for j in 0..=l {
        for s in 0..=m - l {
            let outer = binom.at(2 * m + 1, 2 * s + 2 * j) * binom.at(s + j, j);
            for k in s + l..=m {
                let term = binom.at(2 * k, k)
                    * binom.at(m - s - j, m - k)
                    * binom.at(k - s - j, l - j)
                    * &outer;
                let term = term << (3 * (m - k));
                if (k - l - s) % 2 == 0 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
        }
    }
    Rat::new(acc, pow2(3 * m as u64))
}

/// `prod_{k<=m}(4k-1)` and `prod_{k<=m}(4k+1)`.
#[derive(Clone, Debug)]
pub struct CenterProducts {
    pub m: u64,
    pub minus: Int,
    pub plus: Int,
}

impl CenterProducts {
    pub fn new(m: u64) -> Self {
        let mut minus = Int::one();
        let mut plus = Int::one();
        for k in 1..=m {
            minus *= 4 * k - 1;
            plus *= 4 * k + 1;
        }
        CenterProducts { m, minus, plus }
    }

    /// Advance from `m` to `m + 1`.
    pub fn step(&mut self) {
        self.m += 1;
        self.minus *= 4 * self.m - 1;
        self.plus *= 4 * self.m + 1;
    }
}

/// `alpha_l(m) prod(4k-1) - beta_l(m) prod(4k+1)`, the integer numerator of the
/// center route (equal to `l! m! 2^{m+l} d(l, m)`).
pub(crate) fn center_numerator(l: u64, prods: &CenterProducts) -> Int {
    let m = prods.m;
    alpha_value(l, m) * &prods.minus - beta_value(l, m) * &prods.plus
}

fn d_center(l: u64, m: u64, prods: &CenterProducts) -> Rat {
    let den = factorial(l) * factorial(m) * pow2(m + l);
    Rat::new(center_numerator(l, prods), den)
}

/// Integer coefficients `2^k C(2m-2k, m-k) C(m+k, m)` of `4^m A(x)`, where
/// `A(x+1) = P_m(x)`.
pub fn nice_a_numerators(m: u64) -> Vec<Int> {
    (0..=m)
        .map(|k| (choose(2 * m - 2 * k, m - k) * choose(m + k, m)) << k as usize)
        .collect()
}

/// `4^m d(l, m)` for `l = 0..=m`, exact integers.
pub fn d_row_numerators(m: u64) -> Vec<Int> {
    let mut c = nice_a_numerators(m);
    shift_by_one_in_place(&mut c);
    c
}

/// The full row `d(0, m), ..., d(m, m)` by an integer Taylor shift.
pub fn d_row(m: u64) -> Vec<Rat> {
    let den = pow2(2 * m);
    d_row_numerators(m)
        .into_iter()
        .map(|n| Rat::new(n, den.clone()))
        .collect()
}

/// The row by an explicit route (slow routes share their per-row tables).
pub fn d_row_by(m: u64, method: Method) -> Vec<Rat> {
    match method {
        Method::Single => (0..=m).map(|l| d_single(l, m)).collect(),
        Method::Triple => {
            let t = BinomialTable::new(2 * m + 1);
            (0..=m).map(|l| d_triple(l, m, &t)).collect()
        }
        Method::Center => {
            let p = CenterProducts::new(m);
            (0..=m).map(|l| d_center(l, m, &p)).collect()
        }
    }
}

/// Triangular table of `d(l, m)` for `0 <= l <= m <= m_max`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DTable {
    pub m_max: u64,
    pub method: Method,
    rows: Vec<Vec<Rat>>,
}

impl DTable {
    pub fn build(m_max: u64, method: Method) -> Self {
        let rows = (0..=m_max).map(|m| d_row_by(m, method)).collect();
        DTable {
            m_max,
            method,
            rows,
        }
    }

    /// Assemble from rows computed elsewhere (e.g. in parallel).
    pub fn from_rows(method: Method, rows: Vec<Vec<Rat>>) -> Result<Self> {
        if rows.is_empty() || rows.iter().enumerate().any(|(m, r)| r.len() != m + 1) {
            return Err(Error::InvalidArgument(
                "row m must hold m + 1 entries".into(),
            ));
        }
        Ok(DTable {
            m_max: rows.len() as u64 - 1,
            method,
            rows,
        })
    }

    pub fn get(&self, l: u64, m: u64) -> Option<&Rat> {
        self.rows.get(m as usize)?.get(l as usize)
    }

    pub fn row(&self, m: u64) -> Option<&[Rat]> {
        self.rows.get(m as usize).map(Vec::as_slice)
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }
}

/// `A(x)` whose unit shift is `P_m`.
pub fn nice_a(m: u64) -> Poly {
    let den = pow2(2 * m);
    Poly::from_coeffs(
        nice_a_numerators(m)
            .into_iter()
            .map(|n| Rat::new(n, den.clone()))
            .collect(),
    )
}

/// How [`p_poly`] assembles `P_m`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PolyForm {
    /// Sum of powers of `a + 1` with central binomial weights.
    Expanded,
    /// Double sum over powers of `a + 1` and `a - 1`.
    Shifted,
}

impl FromStr for PolyForm {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "expanded" => Ok(PolyForm::Expanded),
            "shifted" => Ok(PolyForm::Shifted),
            other => Err(Error::Unknown(other.into())),
        }
    }
}

/// `P_m(a) = sum_l d(l, m) a^l`.
pub fn p_poly(m: u64, form: PolyForm) -> Poly {
    match form {
        PolyForm::Expanded => p_expanded(m),
        PolyForm::Shifted => p_shifted(m),
    }
}

fn p_expanded(m: u64) -> Poly {
    // coefficient of b^{m-k}, b = a + 1, scaled by 4^m
    let mut c: Vec<Int> = (0..=m)
        .map(|i| {
            let k = m - i;
            (choose(2 * k, k) * choose(2 * m - k, m)) << (m - k) as usize
        })
        .collect();
    shift_by_one_in_place(&mut c);
    let den = pow2(2 * m);
    Poly::from_coeffs(c.into_iter().map(|n| Rat::new(n, den.clone())).collect())
}

fn p_shifted(m: u64) -> Poly {
    let plus = Poly::from_i64s(&[1, 1]);
    let minus = Poly::from_i64s(&[-1, 1]);
    let mut plus_pows = Vec::with_capacity(m as usize + 1);
    let mut minus_pows = Vec::with_capacity(m as usize + 1);
    let (mut p, mut q) = (Poly::one(), Poly::one());
    for _ in 0..=m {
        plus_pows.push(p.clone());
        minus_pows.push(q.clone());
        p = &p * &plus;
        q = &q * &minus;
    }
    let mut total = Poly::zero();
    for j in 0..=m {
        let mut inner = Poly::zero();
        for k in 0..=m - j {
            let w = Rat::new(
                choose(m - j, k) * choose(2 * (m - k), m - k),
                pow2(3 * (m - k)),
            );
            inner = &inner + &minus_pows[(m - k - j) as usize].scale(&w);
        }
        let outer = plus_pows[j as usize].scale(&rat_int(choose(2 * m + 1, 2 * j)));
        total = &total + &(&outer * &inner);
    }
    total
}

/// `T_m(y) = sum_k C(m+k, m-k) y^{2k}`.
pub fn t_poly(m: u64) -> Poly {
    let mut c = alloc::vec![Rat::zero(); 2 * m as usize + 1];
    for k in 0..=m {
        c[2 * k as usize] = rat_int(choose(m + k, m - k));
    }
    Poly::from_coeffs(c)
}

/// `d(m, m) = 2^{-m} C(2m, m)`.
pub fn d_top(m: u64) -> Rat {
    Rat::new(choose(2 * m, m), pow2(m))
}

/// `d(m-1, m) = (2m+1) 2^{-(m+1)} C(2m, m)` for `m >= 1`.
pub fn d_below_top(m: u64) -> Result<Rat> {
    if m == 0 {
        return Err(Error::Domain("d(m-1, m) needs m >= 1"));
    }
    Ok(Rat::new(choose(2 * m, m) * (2 * m + 1), pow2(m + 1)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::rat;

    #[test]
    fn spec_values() {
        assert_eq!(d_coeff(0, 0, Method::Single).unwrap(), rat(1, 1));
        assert_eq!(d_coeff(1, 2, Method::Single).unwrap(), rat(15, 4));
        assert_eq!(d_coeff(2, 2, Method::Triple).unwrap(), rat(3, 2));
        assert_eq!(d_below_top(2).unwrap(), rat(15, 4));
        assert_eq!(d_top(2), rat(3, 2));
        assert!(d_coeff(3, 2, Method::Center).is_err());
    }

    #[test]
    fn routes_agree_small() {
        for m in 0..=14 {
            let fast = d_row(m);
            for method in Method::ALL {
                assert_eq!(d_row_by(m, method), fast, "m={m} {method}");
            }
        }
    }

    #[test]
    fn polynomials() {
        assert_eq!(p_poly(0, PolyForm::Expanded), Poly::one());
        let p1 = Poly::from_coeffs(alloc::vec![rat(3, 2), rat(1, 1)]);
        assert_eq!(p_poly(1, PolyForm::Expanded), p1);
        assert_eq!(p_poly(1, PolyForm::Shifted), p1);
        assert_eq!(nice_a(1).taylor_shift(&rat(1, 1)), p1);
        assert_eq!(t_poly(0), Poly::one());
        assert_eq!(t_poly(1), Poly::from_i64s(&[1, 0, 1]));
        assert_eq!(t_poly(2), Poly::from_i64s(&[1, 0, 3, 0, 1]));
    }

    #[test]
    fn forms_match_rows() {
        for m in 0..=20 {
            let row = Poly::from_coeffs(d_row(m));
            assert_eq!(p_poly(m, PolyForm::Expanded), row, "m={m}");
            assert_eq!(p_poly(m, PolyForm::Shifted), row, "m={m}");
            assert_eq!(nice_a(m).taylor_shift(&rat(1, 1)), row, "m={m}");
        }
    }

    #[test]
    fn method_names_round_trip() {
        for m in Method::ALL {
            assert_eq!(m.name().parse::<Method>().unwrap(), m);
        }
        assert!("quad".parse::<Method>().is_err());
    }
}
