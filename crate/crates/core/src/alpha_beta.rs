//! The integer polynomials `alpha_l(m)` and `beta_l(m)` behind the center
//! route, their odd/even shifted forms in `s = 2m + 1`, and an exact check
//! that all their roots sit on `Re m = -1/2`.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernel::{choose, rat, rat_int, Int, Rat};
use crate::poly::{count_real_roots, is_real_rooted, Bound, Poly};
use crate::report::{Report, Witness};

fn prod<I: IntoIterator<Item = i64>>(factors: I) -> Int {
    factors.into_iter().fold(Int::one(), |acc, f| acc * f)
}

/// `alpha_l(m)` at an integer point.
pub fn alpha_value(l: u64, m: u64) -> Int {
    let (l, m) = (l as i64, m as i64);
    let mut acc = Int::zero();
    for t in 0..=l / 2 {
        let term = choose(l as u64, 2 * t as u64)
            * prod((1..=t).map(|i| 4 * m + 4 * i - 1))
            * prod((0..l - 2 * t).map(|i| 2 * m - 2 * i + 1))
            * prod((1..t).map(|v| 4 * v + 1));
        acc += term;
    }
    acc
}

/// `beta_l(m)` at an integer point (zero for `l = 0`).
pub fn beta_value(l: u64, m: u64) -> Int {
    let (l, m) = (l as i64, m as i64);
    let mut acc = Int::zero();
    for t in 1..=(l + 1) / 2 {
        let term = choose(l as u64, (2 * t - 1) as u64)
            * prod((1..t).map(|i| 4 * m + 4 * i + 1))
            * prod((0..=l - 2 * t).map(|i| 2 * m - 2 * i + 1))
            * prod((1..t).map(|v| 4 * v - 1));
        acc += term;
    }
    acc
}

/// `alpha_l` and `beta_l` as polynomials in `m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaBetaPair {
    pub l: u64,
    pub alpha: Poly,
    pub beta: Poly,
}

fn linear(c0: i64, c1: i64) -> (Rat, Rat) {
    (rat(c0, 1), rat(c1, 1))
}

/// Expand both sums symbolically as products of linear factors in `m`.
pub fn alpha_beta(l: u64) -> AlphaBetaPair {
    let li = l as i64;
    let mut alpha = Poly::zero();
    for t in 0..=li / 2 {
        let factors = (1..=t)
            .map(|i| linear(4 * i - 1, 4))
            .chain((0..li - 2 * t).map(|i| linear(1 - 2 * i, 2)));
        let weight = choose(l, 2 * t as u64) * prod((1..t).map(|v| 4 * v + 1));
        alpha = &alpha + &Poly::product_of_linear(factors).scale(&rat_int(weight));
    }
    let mut beta = Poly::zero();
    for t in 1..=(li + 1) / 2 {
        let factors = (1..t)
            .map(|i| linear(4 * i + 1, 4))
            .chain((0..=li - 2 * t).map(|i| linear(1 - 2 * i, 2)));
        let weight = choose(l, (2 * t - 1) as u64) * prod((1..t).map(|v| 4 * v - 1));
        beta = &beta + &Poly::product_of_linear(factors).scale(&rat_int(weight));
    }
    AlphaBetaPair { l, alpha, beta }
}

impl AlphaBetaPair {
    /// `(A_l(s), B_l(s))` with `m = (s - 1)/2`.
    pub fn shifted(&self) -> (Poly, Poly) {
        (to_s(&self.alpha), to_s(&self.beta))
    }
}

fn to_s(p: &Poly) -> Poly {
    p.compose_linear(&rat(-1, 2), &rat(1, 2))
}

/// Which of the two polynomial families.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Family {
    Alpha,
    Beta,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Alpha => "alpha",
            Family::Beta => "beta",
        })
    }
}

impl FromStr for Family {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "alpha" => Ok(Family::Alpha),
            "beta" => Ok(Family::Beta),
            other => Err(Error::Unknown(other.into())),
        }
    }
}

/// Shifted polynomial of one family at index `l`.
pub fn shifted_member(l: u64, family: Family) -> Poly {
    let pair = alpha_beta(l);
    match family {
        Family::Alpha => to_s(&pair.alpha),
        Family::Beta => to_s(&pair.beta),
    }
}

/// Check `x_{l+1} = 2s x_l - (s^2 - (2l-1)^2) x_{l-1}` for `1 <= l < l_max`
/// in both shifted families.
pub fn three_term_check(l_max: u64) -> Result<Report> {
    if l_max < 2 {
        return Err(Error::Domain("three-term check needs l_max >= 2"));
    }
    let shifted: Vec<(Poly, Poly)> = (0..=l_max).map(|l| alpha_beta(l).shifted()).collect();
    let two_s = Poly::from_i64s(&[0, 2]);
    let params = format!("1<=l<={}", l_max - 1);
    for l in 1..l_max as usize {
        let c = (2 * l as i64 - 1).pow(2);
        let q = Poly::from_i64s(&[-c, 0, 1]);
        for (family, pick) in [(Family::Alpha, 0usize), (Family::Beta, 1)] {
            let get = |i: usize| -> &Poly {
                if pick == 0 {
                    &shifted[i].0
                } else {
                    &shifted[i].1
                }
            };
            let rhs = &(&two_s * get(l)) - &(&q * get(l - 1));
            if &rhs != get(l + 1) {
                return Ok(Report::fail(
                    "three_term",
                    params,
                    Witness::new(format!("{family} l={l}"), get(l + 1), rhs),
                ));
            }
        }
    }
    Ok(Report::pass("three_term", params))
}

/// Whether `X(-s) = X(s)` (`Some(true)`), `X(-s) = -X(s)` (`Some(false)`), or neither.
pub fn parity(p: &Poly) -> Option<bool> {
    let r = p.reflect();
    if &r == p {
        Some(true)
    } else if r == -p {
        Some(false)
    } else {
        None
    }
}

/// Exact certificate that every root of `alpha_l` (or `beta_l`) has real part
/// `-1/2`: the shifted form in `s` must have definite parity, and after
/// removing a factor `s` and writing it as `G(s^2)`, the polynomial `G(-u)`
/// must have only real, nonnegative roots.
pub fn critical_line_certify(l: u64, family: Family) -> Result<bool> {
    match family {
        Family::Alpha if l < 1 => return Err(Error::Domain("alpha certification needs l >= 1")),
        Family::Beta if l < 2 => return Err(Error::Domain("beta certification needs l >= 2")),
        _ => {}
    }
    Ok(certify_shifted(&shifted_member(l, family)))
}

/// The certification step on an already shifted polynomial.
pub fn certify_shifted(x: &Poly) -> bool {
    if x.is_zero() {
        return false;
    }
    let even = match parity(x) {
        Some(e) => e,
        None => return false,
    };
    let body: Vec<Rat> = if even {
        x.coeffs().to_vec()
    } else {
        // odd: drop the factor s (constant term is zero)
        x.coeffs()[1..].to_vec()
    };
    let h = Poly::from_coeffs(
        body.iter()
            .step_by(2)
            .enumerate()
            .map(|(i, c)| if i % 2 == 1 { -c } else { c.clone() })
            .collect(),
    );
    if h.degree() == Some(0) {
        return true;
    }
    let real = is_real_rooted(&h).unwrap_or(false);
    if !real {
        return false;
    }
    let at_or_below_zero =
        count_real_roots(&h, &Bound::NegInf, &Bound::At(Rat::zero())).unwrap_or(1);
    let zero_root = usize::from(h.eval(&Rat::zero()).is_zero());
    at_or_below_zero == zero_root
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeffs::{d_coeff, Method};
    use crate::kernel::{factorial, pow2};

    #[test]
    fn small_members() {
        let p0 = alpha_beta(0);
        assert_eq!(p0.alpha, Poly::one());
        assert!(p0.beta.is_zero());
        let p1 = alpha_beta(1);
        assert_eq!(p1.alpha, Poly::from_i64s(&[1, 2]));
        assert_eq!(p1.beta, Poly::one());
        assert_eq!(alpha_beta(2).alpha, Poly::from_i64s(&[2, 4, 4]));
    }

    #[test]
    fn shifted_small_members() {
        let (a1, b1) = alpha_beta(1).shifted();
        assert_eq!(a1, Poly::x());
        assert_eq!(b1, Poly::one());
        let (a2, b2) = alpha_beta(2).shifted();
        assert_eq!(a2, Poly::from_i64s(&[1, 0, 1]));
        assert_eq!(b2, Poly::from_i64s(&[0, 2]));
    }

    #[test]
    fn values_match_polynomials() {
        for l in 0..=12u64 {
            let pair = alpha_beta(l);
            for m in 0..=15u64 {
                let at = rat(m as i64, 1);
                assert_eq!(pair.alpha.eval(&at), rat_int(alpha_value(l, m)));
                assert_eq!(pair.beta.eval(&at), rat_int(beta_value(l, m)));
            }
        }
    }

    #[test]
    fn degrees_and_integrality() {
        for l in 1..=30u64 {
            let p = alpha_beta(l);
            assert_eq!(p.alpha.degree(), Some(l as usize));
            assert_eq!(p.beta.degree(), Some(l as usize - 1));
            assert!(p.alpha.is_integral() && p.beta.is_integral());
        }
    }

    #[test]
    fn center_form_consistency() {
        for m in 0..=25u64 {
            let mut minus = Int::one();
            let mut plus = Int::one();
            for k in 1..=m {
                minus *= 4 * k - 1;
                plus *= 4 * k + 1;
            }
            for l in 0..=m {
                let num = alpha_value(l, m) * &minus - beta_value(l, m) * &plus;
                let d = Rat::new(num, factorial(l) * factorial(m) * pow2(m + l));
                assert_eq!(d, d_coeff(l, m, Method::Single).unwrap(), "l={l} m={m}");
            }
        }
    }

    #[test]
    fn certify_small() {
        assert!(critical_line_certify(1, Family::Alpha).unwrap());
        assert!(critical_line_certify(2, Family::Alpha).unwrap());
        assert!(critical_line_certify(2, Family::Beta).unwrap());
        assert!(critical_line_certify(1, Family::Beta).is_err());
        // s^2 - 1 has roots off the imaginary axis; s^2 + s has no parity
        assert!(!certify_shifted(&Poly::from_i64s(&[-1, 0, 1])));
        assert!(!certify_shifted(&Poly::from_i64s(&[0, 1, 1])));
    }

    #[test]
    fn three_term_small() {
        assert!(three_term_check(10).unwrap().passed);
        assert!(three_term_check(1).is_err());
    }
}
